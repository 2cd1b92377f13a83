//! Pauli-pair conjugation tables.
//!
//! Entry `(mu, nu)` of a table is `K (sigma_mu (x) sigma_nu) K^dagger` for the
//! table's operator `K`, where `sigma_mu` acts on qubit 1.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::circuit::{embed_controlled, Qubit};
use crate::linalg::{pauli_pair, Complex, Mat4, PauliLabel, Sign, SignedPauliPair, MAGIC, PAULI_X};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ConjugationKind {
    /// `M^dagger . M`.
    MagicDagger,
    /// `M . M^dagger`.
    Magic,
    /// CNOT with control on qubit 1.
    CnotDown,
    /// CNOT with control on qubit 0.
    CnotUp,
}

impl ConjugationKind {
    pub const ALL: [ConjugationKind; 4] = [
        ConjugationKind::MagicDagger,
        ConjugationKind::Magic,
        ConjugationKind::CnotDown,
        ConjugationKind::CnotUp,
    ];

    /// The operator `K` of `K . K^dagger`.
    pub fn operator(self) -> Mat4 {
        match self {
            ConjugationKind::MagicDagger => MAGIC.adjoint(),
            ConjugationKind::Magic => MAGIC,
            ConjugationKind::CnotDown => embed_controlled(Qubit::Q1, &PAULI_X),
            ConjugationKind::CnotUp => embed_controlled(Qubit::Q0, &PAULI_X),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ConjugationKind::MagicDagger => "magic-dagger",
            ConjugationKind::Magic => "magic",
            ConjugationKind::CnotDown => "cnot-down",
            ConjugationKind::CnotUp => "cnot-up",
        }
    }

    pub fn from_name(s: &str) -> Option<ConjugationKind> {
        ConjugationKind::ALL.into_iter().find(|k| k.name() == s)
    }

    fn table(self) -> &'static Table {
        match self {
            ConjugationKind::MagicDagger => &MAGIC_DAGGER_TABLE,
            ConjugationKind::Magic => &MAGIC_TABLE,
            ConjugationKind::CnotDown => &CNOT_DOWN_TABLE,
            ConjugationKind::CnotUp => &CNOT_UP_TABLE,
        }
    }
}

type Table = [[SignedPauliPair; 4]; 4];

const fn e(sign: Sign, left: PauliLabel, right: PauliLabel) -> SignedPauliPair {
    SignedPauliPair::new(sign, left, right)
}

use PauliLabel::{I, X, Y, Z};
use Sign::{Minus as M, Plus as P};

const MAGIC_DAGGER_TABLE: Table = [
    [e(P, I, I), e(M, I, Y), e(P, Y, Z), e(M, Y, X)],
    [e(M, Z, Y), e(P, Z, I), e(M, X, X), e(M, X, Z)],
    [e(M, Y, I), e(P, Y, Y), e(M, I, Z), e(P, I, X)],
    [e(M, X, Y), e(P, X, I), e(P, Z, X), e(P, Z, Z)],
];

const MAGIC_TABLE: Table = [
    [e(P, I, I), e(P, Y, Z), e(M, I, X), e(M, Y, Y)],
    [e(P, Z, X), e(M, X, Y), e(M, Z, I), e(M, X, Z)],
    [e(M, Y, I), e(M, I, Z), e(P, Y, X), e(P, I, Y)],
    [e(P, X, X), e(P, Z, Y), e(M, X, I), e(P, Z, Z)],
];

const CNOT_DOWN_TABLE: Table = [
    [e(P, I, I), e(P, I, X), e(P, Z, Y), e(P, Z, Z)],
    [e(P, X, X), e(P, X, I), e(P, Y, Z), e(M, Y, Y)],
    [e(P, Y, X), e(P, Y, I), e(M, X, Z), e(P, X, Y)],
    [e(P, Z, I), e(P, Z, X), e(P, I, Y), e(P, I, Z)],
];

const CNOT_UP_TABLE: Table = [
    [e(P, I, I), e(P, X, X), e(P, X, Y), e(P, I, Z)],
    [e(P, X, I), e(P, I, X), e(P, I, Y), e(P, X, Z)],
    [e(P, Y, Z), e(P, Z, Y), e(M, Z, X), e(P, Y, I)],
    [e(P, Z, Z), e(M, Y, Y), e(P, Y, X), e(P, Z, I)],
];

/// Table lookup; `mu` acts on qubit 1.
pub fn conjugate_pauli(kind: ConjugationKind, mu: PauliLabel, nu: PauliLabel) -> SignedPauliPair {
    kind.table()[mu.index()][nu.index()]
}

/// `c[mu][nu] = tr((sigma_mu (x) sigma_nu)^dagger m) / 4`.
pub fn expand_pauli_basis(m: &Mat4) -> [[Complex; 4]; 4] {
    let mut c = [[Complex::new(0.0, 0.0); 4]; 4];
    for mu in PauliLabel::ALL {
        for nu in PauliLabel::ALL {
            c[mu.index()][nu.index()] = (pauli_pair(mu, nu).adjoint() * *m).trace() / 4.0;
        }
    }
    c
}

/// Aligned text rendering, rows by `mu`, columns by `nu`.
pub fn render_table(kind: ConjugationKind) -> String {
    let mut out = String::new();
    let _ = write!(out, "{:>5}", "");
    for nu in PauliLabel::ALL {
        let _ = write!(out, " {:>5}", format!("s{}", nu.letter()));
    }
    out.push('\n');
    for mu in PauliLabel::ALL {
        let _ = write!(out, "{:>5}", format!("s{}", mu.letter()));
        for nu in PauliLabel::ALL {
            let _ = write!(out, " {:>5}", conjugate_pauli(kind, mu, nu).to_string());
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        assert_eq!(conjugate_pauli(ConjugationKind::MagicDagger, I, X), e(M, I, Y));
        assert_eq!(conjugate_pauli(ConjugationKind::MagicDagger, Z, Z), e(P, Z, Z));
        assert_eq!(conjugate_pauli(ConjugationKind::CnotDown, X, I), e(P, X, X));
    }

    #[test]
    fn tables_match_direct_conjugation() {
        for kind in ConjugationKind::ALL {
            let k = kind.operator();
            for mu in PauliLabel::ALL {
                for nu in PauliLabel::ALL {
                    let expected = conjugate_pauli(kind, mu, nu);
                    let c = expand_pauli_basis(&(k * pauli_pair(mu, nu) * k.adjoint()));
                    for a in PauliLabel::ALL {
                        for b in PauliLabel::ALL {
                            let z = c[a.index()][b.index()];
                            if (a, b) == (expected.left, expected.right) {
                                assert!((z - expected.sign.value()).norm() <= 1e-12, "{kind:?} {mu:?}{nu:?}");
                            } else {
                                assert!(z.norm() <= 1e-12, "{kind:?} {mu:?}{nu:?}");
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn expansion_examples() {
        let c = expand_pauli_basis(&Mat4::identity());
        assert_eq!(c[0][0], Complex::new(1.0, 0.0));
        assert_eq!(c.iter().flatten().filter(|z| z.norm() > 0.0).count(), 1);
        let c = expand_pauli_basis(&pauli_pair(X, Y));
        assert!((c[1][2] - 1.0).norm() < 1e-15);
        assert_eq!(c.iter().flatten().filter(|z| z.norm() > 1e-15).count(), 1);
    }

    #[test]
    fn render_and_names() {
        let s = render_table(ConjugationKind::MagicDagger);
        assert_eq!(s.lines().count(), 5);
        assert!(s.lines().nth(1).unwrap().contains("-sUY"));
        for k in ConjugationKind::ALL {
            assert_eq!(ConjugationKind::from_name(k.name()), Some(k));
        }
        assert_eq!(ConjugationKind::from_name("swap"), None);
    }

    proptest! {
        #[test]
        fn expansion_round_trip(v in prop::collection::vec(-1.0f64..1.0, 32)) {
            let mut m = Mat4::zeros();
            for (i, z) in v.chunks(2).enumerate() {
                m.0[i / 4][i % 4] = Complex::new(z[0], z[1]);
            }
            let c = expand_pauli_basis(&m);
            let mut back = Mat4::zeros();
            for mu in PauliLabel::ALL {
                for nu in PauliLabel::ALL {
                    back = back + pauli_pair(mu, nu).scale(c[mu.index()][nu.index()]);
                }
            }
            prop_assert!(back.distance(&m) <= 1e-13);
        }
    }
}
