//! The deflation identity: a circuit with exactly two controlled-U gates and
//! one-qubit gates between them equals a circuit with exactly two CNOTs.
//!
//! [`deflate_core`] is the closed-form angle computation for the canonical
//! case
//!
//! ```text
//! U = ctrl-Rz(theta_L) . [Ry(beta) on 0, Ry(beta') on 1] . ctrl-Rz(theta_R)
//! ```
//!
//! (a matrix product; controls on qubit 1, targets on qubit 0), which equals
//!
//! ```text
//! Rz(theta_L/2) . [Ry(g_L), Ry(g'_L)] . CNOT . [Rz(mu), Rx(mu')] . CNOT . [Ry(g_R), Ry(g'_R)] . Rz(theta_R/2)
//! ```
//!
//! with the angles of [`DeflationAngles`]. [`deflate_same_side`] and
//! [`deflate_opposite_side`] reduce arbitrary controlled unitaries and
//! arbitrary middle gates to that case.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::circuit::{embed_controlled, Circuit, Gate, Qubit};
use crate::error::Result;
use crate::linalg::{
    diagonalize_unitary2, euler_zyz, kron, normalize_angle, phase_gate, rotation, Axis, Mat2, Mat4, UNITARY_TOL,
    ZERO_TOL,
};

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct DeflationInput {
    pub theta_l: f64,
    pub beta: f64,
    pub beta_prime: f64,
    pub theta_r: f64,
}

impl DeflationInput {
    pub fn new(theta_l: f64, beta: f64, beta_prime: f64, theta_r: f64) -> Self {
        DeflationInput {
            theta_l,
            beta,
            beta_prime,
            theta_r,
        }
    }
}

/// Intermediate quantities of the angle computation, one value per sign
/// `s in {+, -}` of `-beta' +- beta`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct DeflationDiagnostics {
    pub xi_plus: f64,
    pub xi_minus: f64,
    pub eta_plus: f64,
    pub eta_minus: f64,
    pub p_plus: f64,
    pub p_minus: f64,
    pub q_plus: f64,
    pub q_minus: f64,
    pub mu_plus: f64,
    pub mu_minus: f64,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct DeflationAngles {
    pub gamma_l: f64,
    pub gamma_l_prime: f64,
    pub mu: f64,
    pub mu_prime: f64,
    pub gamma_r: f64,
    pub gamma_r_prime: f64,
    pub diagnostics: DeflationDiagnostics,
}

/// Angle of the unit vector `(x, y) / |(x, y)|`, zero when the vector vanishes.
fn polar_angle(x: f64, y: f64) -> (f64, f64) {
    let r = x.hypot(y);
    let angle = if r <= ZERO_TOL { 0.0 } else { y.atan2(x) };
    (r, angle)
}

struct Branch {
    p: f64,
    xi: f64,
    q: f64,
    eta: f64,
    mu: f64,
}

fn branch(input: &DeflationInput, s: f64) -> Branch {
    let sum = (input.theta_l + input.theta_r) / 2.0;
    let diff = (input.theta_l - input.theta_r) / 2.0;
    let b = -input.beta_prime + s * input.beta;
    let x1 = sum.cos() * b.cos();
    let x2 = diff.cos() * b.sin();
    let y1 = -s * diff.sin() * b.sin();
    let y2 = -s * sum.sin() * b.cos();
    let (p, xi) = polar_angle(x1, x2);
    let (q, eta) = polar_angle(y1, y2);
    // p, q >= 0, so mu lies in [0, pi/2].
    let mu = q.atan2(p);
    Branch { p, xi, q, eta, mu }
}

/// Computes the six angles of the two-CNOT form. Total: every finite input
/// has an answer.
pub fn deflate_core(input: &DeflationInput) -> DeflationAngles {
    let plus = branch(input, 1.0);
    let minus = branch(input, -1.0);
    let (xp, xm, ep, em) = (plus.xi, minus.xi, plus.eta, minus.eta);

    DeflationAngles {
        gamma_l: normalize_angle((ep - em + xp - xm) / 4.0),
        gamma_l_prime: normalize_angle((-ep - em - xp - xm + PI) / 4.0),
        gamma_r: normalize_angle((-ep + em + xp - xm) / 4.0),
        gamma_r_prime: normalize_angle((ep + em - xp - xm - PI) / 4.0),
        mu: (plus.mu - minus.mu) / 2.0,
        mu_prime: (plus.mu + minus.mu) / 2.0,
        diagnostics: DeflationDiagnostics {
            xi_plus: xp,
            xi_minus: xm,
            eta_plus: ep,
            eta_minus: em,
            p_plus: plus.p,
            p_minus: minus.p,
            q_plus: plus.q,
            q_minus: minus.q,
            mu_plus: plus.mu,
            mu_minus: minus.mu,
        },
    }
}

/// The two-controlled-rotation circuit, in application order (the
/// `theta_R` gate acts first).
pub fn build_lhs(input: &DeflationInput) -> Circuit {
    Circuit::from_product_order(vec![
        Gate::cu(Qubit::Q1, rotation(Axis::Z, input.theta_l)),
        Gate::ry(Qubit::Q0, input.beta),
        Gate::ry(Qubit::Q1, input.beta_prime),
        Gate::cu(Qubit::Q1, rotation(Axis::Z, input.theta_r)),
    ])
}

/// The equivalent two-CNOT circuit, in application order.
pub fn build_rhs(input: &DeflationInput, angles: &DeflationAngles) -> Circuit {
    Circuit::from_product_order(vec![
        Gate::rz(Qubit::Q0, input.theta_l / 2.0),
        Gate::ry(Qubit::Q0, angles.gamma_l),
        Gate::ry(Qubit::Q1, angles.gamma_l_prime),
        Gate::cnot(Qubit::Q1),
        Gate::rz(Qubit::Q0, angles.mu),
        Gate::rx(Qubit::Q1, angles.mu_prime),
        Gate::cnot(Qubit::Q1),
        Gate::ry(Qubit::Q0, angles.gamma_r),
        Gate::ry(Qubit::Q1, angles.gamma_r_prime),
        Gate::rz(Qubit::Q0, input.theta_r / 2.0),
    ])
}

/// `exp(i phase) [last] . CNOT . [middle] . CNOT . [first]` with CNOTs
/// controlled by qubit 1; each slot is indexed by qubit.
#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct TwoCnotForm {
    pub first: [Mat2; 2],
    pub middle: [Mat2; 2],
    pub last: [Mat2; 2],
    pub phase: f64,
}

impl TwoCnotForm {
    pub fn to_circuit(self) -> Circuit {
        let slot = |s: &[Mat2; 2]| [Gate::u(Qubit::Q0, s[0]), Gate::u(Qubit::Q1, s[1])];
        let mut gates = Vec::with_capacity(9);
        gates.extend(slot(&self.first));
        gates.push(Gate::cnot(Qubit::Q1));
        gates.extend(slot(&self.middle));
        gates.push(Gate::cnot(Qubit::Q1));
        gates.extend(slot(&self.last));
        gates.push(Gate::GlobalPhase {
            angle: normalize_angle(self.phase),
        });
        Circuit::from_gates_unchecked(gates)
    }
}

fn local(q0: &Mat2, q1: &Mat2) -> Mat4 {
    kron(q1, q0)
}

/// Matrix of `ctrl(u) . (a on 0, b on 1) . ctrl(v)`, controls on qubit 1.
pub fn same_side_matrix(u: &Mat2, a: &Mat2, b: &Mat2, v: &Mat2) -> Mat4 {
    embed_controlled(Qubit::Q1, u) * local(a, b) * embed_controlled(Qubit::Q1, v)
}

/// Matrix of `ctrl(u) . (a on 0, b on 1) . ctrl(v)` where `u` is controlled
/// by qubit 1 and `v` by qubit 0.
pub fn opposite_side_matrix(u: &Mat2, a: &Mat2, b: &Mat2, v: &Mat2) -> Mat4 {
    embed_controlled(Qubit::Q1, u) * local(a, b) * embed_controlled(Qubit::Q0, v)
}

/// The input of [`deflate_same_side`] as a circuit in application order.
pub fn same_side_circuit(u: &Mat2, a: &Mat2, b: &Mat2, v: &Mat2) -> Circuit {
    Circuit::from_product_order(vec![
        Gate::cu(Qubit::Q1, *u),
        Gate::u(Qubit::Q0, *a),
        Gate::u(Qubit::Q1, *b),
        Gate::cu(Qubit::Q1, *v),
    ])
}

/// The input of [`deflate_opposite_side`] as a circuit in application order.
pub fn opposite_side_circuit(u: &Mat2, a: &Mat2, b: &Mat2, v: &Mat2) -> Circuit {
    Circuit::from_product_order(vec![
        Gate::cu(Qubit::Q1, *u),
        Gate::u(Qubit::Q0, *a),
        Gate::u(Qubit::Q1, *b),
        Gate::cu(Qubit::Q0, *v),
    ])
}

fn check_inputs(ms: [(&Mat2, &str); 4]) -> Result<()> {
    ms.iter().try_for_each(|(m, what)| m.ensure_unitary(what, UNITARY_TOL))
}

pub(crate) fn same_side_form(u: &Mat2, a: &Mat2, b: &Mat2, v: &Mat2) -> Result<TwoCnotForm> {
    check_inputs([(u, "u"), (a, "a"), (b, "b"), (v, "v")])?;

    // ctrl(u) = diag(1, e^{i du}) on qubit 1 . Wu(0) ctrl(Rz(tu)) Wu(0)^dagger,
    // and the qubit-1 phase commutes out to the end of the product.
    let du = diagonalize_unitary2(u)?;
    let dv = diagonalize_unitary2(v)?;

    let a_mid = du.w.adjoint() * *a * dv.w;
    let (phase_a, a_su) = a_mid.phase_split();
    let (phase_b, b_su) = b.phase_split();
    let (a_left, beta, a_right) = euler_zyz(&a_su)?;
    let (b_left, beta_prime, b_right) = euler_zyz(&b_su)?;

    let core_input = DeflationInput::new(du.theta, beta, beta_prime, dv.theta);
    let angles = deflate_core(&core_input);

    let rz = |t: f64| rotation(Axis::Z, t);
    let ry = |t: f64| rotation(Axis::Y, t);

    let last = [
        du.w * rz(a_left) * rz(core_input.theta_l / 2.0) * ry(angles.gamma_l),
        phase_gate(du.delta) * rz(b_left) * ry(angles.gamma_l_prime),
    ];
    let middle = [rz(angles.mu), rotation(Axis::X, angles.mu_prime)];
    let first = [
        ry(angles.gamma_r) * rz(core_input.theta_r / 2.0) * rz(a_right) * dv.w.adjoint(),
        ry(angles.gamma_r_prime) * rz(b_right) * phase_gate(dv.delta),
    ];
    Ok(TwoCnotForm {
        first,
        middle,
        last,
        phase: phase_a + phase_b,
    })
}

pub(crate) fn opposite_side_form(u: &Mat2, a: &Mat2, b: &Mat2, v: &Mat2) -> Result<TwoCnotForm> {
    check_inputs([(u, "u"), (a, "a"), (b, "b"), (v, "v")])?;
    // ctrl_0(v) = Wv(1) [Rz(t/2) on 1, Rz(-t/2) on 0] ctrl_1(Rz(t)) Wv(1)^dagger . diag(1, e^{i dv}) on 0
    let dv = diagonalize_unitary2(v)?;
    let t = dv.theta;
    let a2 = *a * rotation(Axis::Z, -t / 2.0);
    let b2 = *b * dv.w * rotation(Axis::Z, t / 2.0);
    let mut form = same_side_form(u, &a2, &b2, &rotation(Axis::Z, t))?;
    form.first[0] = form.first[0] * phase_gate(dv.delta);
    form.first[1] = form.first[1] * dv.w.adjoint();
    Ok(form)
}

/// Rewrites `ctrl(u) . (a on 0, b on 1) . ctrl(v)` (a matrix product, both
/// controls on qubit 1, `v` acting first) into
/// `[u0 u1] CNOT [u0 u1] CNOT [u0 u1] GlobalPhase`, equal as a matrix.
pub fn deflate_same_side(u: &Mat2, a: &Mat2, b: &Mat2, v: &Mat2) -> Result<Circuit> {
    Ok(same_side_form(u, a, b, v)?.to_circuit())
}

/// As [`deflate_same_side`], but `v` is controlled by qubit 0 and targets
/// qubit 1.
pub fn deflate_opposite_side(u: &Mat2, a: &Mat2, b: &Mat2, v: &Mat2) -> Result<Circuit> {
    Ok(opposite_side_form(u, a, b, v)?.to_circuit())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{block_diag, pauli_pair, Complex, PauliLabel, EXCHANGE, IDENTITY2, MAGIC, PAULI_X, PAULI_Z};
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_8};

    fn identity_error(input: &DeflationInput) -> f64 {
        let angles = deflate_core(input);
        build_lhs(input)
            .evaluate()
            .distance(&build_rhs(input, &angles).evaluate())
    }

    fn su2(q: [f64; 4]) -> Mat2 {
        let n = q.iter().map(|x| x * x).sum::<f64>().sqrt();
        let [a, b, c, d] = q.map(|x| x / n);
        Mat2::new(
            Complex::new(a, b),
            Complex::new(c, d),
            Complex::new(-c, d),
            Complex::new(a, -b),
        )
    }

    fn u2(q: [f64; 4], phase: f64) -> Mat2 {
        su2(q).scale(crate::linalg::cis(phase))
    }

    #[test]
    fn zero_input() {
        let a = deflate_core(&DeflationInput::default());
        assert_eq!((a.gamma_l, a.gamma_r, a.mu, a.mu_prime), (0.0, 0.0, 0.0, 0.0));
        assert_eq!(a.gamma_l_prime, FRAC_PI_4);
        assert_eq!(a.gamma_r_prime, -FRAC_PI_4);
        let d = a.diagnostics;
        assert_eq!((d.p_plus, d.p_minus, d.q_plus, d.q_minus), (1.0, 1.0, 0.0, 0.0));
        assert_eq!((d.xi_plus, d.xi_minus, d.eta_plus, d.eta_minus), (0.0, 0.0, 0.0, 0.0));
        assert_eq!(build_lhs(&DeflationInput::default()).evaluate(), Mat4::identity());
        assert!(
            build_rhs(&DeflationInput::default(), &a)
                .evaluate()
                .distance(&Mat4::identity())
                < 1e-15
        );
    }

    #[test]
    fn pure_beta_input() {
        // xi = +-pi/4, q = 0: gamma_L = gamma_R = pi/8 and the CNOTs cancel.
        let input = DeflationInput::new(0.0, FRAC_PI_4, 0.0, 0.0);
        let a = deflate_core(&input);
        assert!((a.gamma_l - FRAC_PI_8).abs() < 1e-15);
        assert!((a.gamma_r - FRAC_PI_8).abs() < 1e-15);
        assert!((a.gamma_l_prime - FRAC_PI_4).abs() < 1e-15);
        assert!((a.gamma_r_prime + FRAC_PI_4).abs() < 1e-15);
        assert_eq!((a.mu, a.mu_prime), (0.0, 0.0));
        assert!((a.diagnostics.xi_plus - FRAC_PI_4).abs() < 1e-15);
        assert!((a.diagnostics.xi_minus + FRAC_PI_4).abs() < 1e-15);
        assert!(identity_error(&input) < 1e-15);
    }

    #[test]
    fn generic_input() {
        let input = DeflationInput::new(0.3, 0.7, -0.2, 1.1);
        assert!(identity_error(&input) <= 1e-10);
        let rhs = build_rhs(&input, &deflate_core(&input));
        assert_eq!(rhs.cnot_count(), 2);
        assert_eq!(rhs.entangling_count(), 2);
    }

    #[test]
    fn middle_block_is_xx_zz_exponential() {
        for (mu, mu_p) in [(0.3, -1.2), (0.0, 0.9), (2.2, 0.4)] {
            let c = Circuit::from_product_order(vec![
                Gate::cnot(Qubit::Q1),
                Gate::rz(Qubit::Q0, mu),
                Gate::rx(Qubit::Q1, mu_p),
                Gate::cnot(Qubit::Q1),
            ]);
            let xx = pauli_pair(PauliLabel::X, PauliLabel::X);
            let zz = pauli_pair(PauliLabel::Z, PauliLabel::Z);
            let expected = Mat4::exp_i_involution(&xx, mu_p) * Mat4::exp_i_involution(&zz, mu);
            assert!(c.evaluate().distance(&expected) <= 1e-12);
        }
    }

    #[test]
    fn degenerate_grid() {
        let vals = [0.0, FRAC_PI_2, PI, -FRAC_PI_2, FRAC_PI_4, -PI, 0.3, 2.0 * PI];
        let mut worst: f64 = 0.0;
        for &tl in &vals {
            for &tr in &vals {
                for &b in &vals {
                    for &bp in &vals {
                        worst = worst.max(identity_error(&DeflationInput::new(tl, b, bp, tr)));
                    }
                }
            }
        }
        assert!(worst <= 1e-10, "worst {worst}");
    }

    #[test]
    fn zero_branches_are_exercised() {
        // theta_L + theta_R = pi and beta = beta': p_+ = 0.
        let a = deflate_core(&DeflationInput::new(PI, 0.4, 0.4, 0.0));
        assert!(a.diagnostics.p_plus <= ZERO_TOL);
        assert_eq!(a.diagnostics.xi_plus, 0.0);
        assert!(identity_error(&DeflationInput::new(PI, 0.4, 0.4, 0.0)) <= 1e-10);
        // theta_L = theta_R = 0: q_+- = 0.
        let a = deflate_core(&DeflationInput::new(0.0, 0.4, 0.1, 0.0));
        assert!(a.diagnostics.q_plus <= ZERO_TOL && a.diagnostics.q_minus <= ZERO_TOL);
        assert_eq!((a.diagnostics.eta_plus, a.diagnostics.eta_minus), (0.0, 0.0));
    }

    #[test]
    fn continuity_near_branch_points() {
        let base = [
            DeflationInput::new(PI, 0.4, 0.4, 0.0),
            DeflationInput::new(0.0, 0.0, 0.0, 0.0),
            DeflationInput::new(FRAC_PI_2, FRAC_PI_4, -FRAC_PI_4, FRAC_PI_2),
            DeflationInput::new(0.7, FRAC_PI_2, 0.0, -0.7),
        ];
        for input in base {
            let m0 = build_rhs(&input, &deflate_core(&input)).evaluate();
            for k in 0..4 {
                for sign in [-1.0, 1.0] {
                    let mut p = input;
                    let field = match k {
                        0 => &mut p.theta_l,
                        1 => &mut p.beta,
                        2 => &mut p.beta_prime,
                        _ => &mut p.theta_r,
                    };
                    *field += sign * 1e-9;
                    let m1 = build_rhs(&p, &deflate_core(&p)).evaluate();
                    assert!(m0.distance(&m1) <= 1e-6);
                }
            }
        }
    }

    #[test]
    fn same_side_identity_inputs() {
        let c = deflate_same_side(&IDENTITY2, &IDENTITY2, &IDENTITY2, &IDENTITY2).unwrap();
        assert!(c.evaluate().distance(&Mat4::identity()) <= 1e-12);
        assert_eq!(c.cnot_count(), 2);
        assert_eq!(c.entangling_count(), 2);
    }

    #[test]
    fn same_side_reduces_to_core_case() {
        let input = DeflationInput::new(0.3, 0.7, -0.2, 1.1);
        let c = deflate_same_side(
            &rotation(Axis::Z, input.theta_l),
            &rotation(Axis::Y, input.beta),
            &rotation(Axis::Y, input.beta_prime),
            &rotation(Axis::Z, input.theta_r),
        )
        .unwrap();
        let rhs = build_rhs(&input, &deflate_core(&input));
        assert!(c.evaluate().distance(&rhs.evaluate()) <= 1e-10);
        assert!(c.evaluate().distance(&build_lhs(&input).evaluate()) <= 1e-10);
    }

    #[test]
    fn same_side_handles_controlled_z_and_x() {
        // ctrl(sigma_Z) and ctrl(sigma_X) have det -1 controlled blocks.
        let (u, a, b, v) = (PAULI_Z, rotation(Axis::Y, 0.3), rotation(Axis::X, -0.6), PAULI_X);
        let c = deflate_same_side(&u, &a, &b, &v).unwrap();
        assert!(c.evaluate().distance(&same_side_matrix(&u, &a, &b, &v)) <= 1e-9);
    }

    #[test]
    fn opposite_side_examples() {
        let c = deflate_opposite_side(&IDENTITY2, &IDENTITY2, &IDENTITY2, &IDENTITY2).unwrap();
        assert!(c.evaluate().distance(&Mat4::identity()) <= 1e-12);
        let v = rotation(Axis::Z, 0.8);
        let c = deflate_opposite_side(&IDENTITY2, &IDENTITY2, &IDENTITY2, &v).unwrap();
        assert!(
            c.evaluate()
                .distance(&opposite_side_matrix(&IDENTITY2, &IDENTITY2, &IDENTITY2, &v))
                <= 1e-9
        );
        assert_eq!(c.cnot_count(), 2);
    }

    #[test]
    fn input_circuits_match_matrices() {
        let (u, a, b, v) = (
            su2([1.0, 2.0, 0.3, -1.0]),
            su2([0.1, 0.2, 0.3, 0.4]),
            rotation(Axis::X, 0.3),
            PAULI_Z,
        );
        assert!(
            same_side_circuit(&u, &a, &b, &v)
                .evaluate()
                .distance(&same_side_matrix(&u, &a, &b, &v))
                < 1e-15
        );
        assert!(
            opposite_side_circuit(&u, &a, &b, &v)
                .evaluate()
                .distance(&opposite_side_matrix(&u, &a, &b, &v))
                < 1e-15
        );
    }

    #[test]
    fn rejects_non_unitary() {
        let bad = Mat2::real(1.0, 0.5, 0.0, 1.0);
        assert!(deflate_same_side(&bad, &IDENTITY2, &IDENTITY2, &IDENTITY2).is_err());
        assert!(deflate_opposite_side(&IDENTITY2, &IDENTITY2, &IDENTITY2, &bad).is_err());
    }

    fn quaternion() -> impl Strategy<Value = [f64; 4]> {
        prop::array::uniform4(-1.0f64..1.0).prop_filter("non-zero", |q| q.iter().map(|x| x * x).sum::<f64>() > 1e-2)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn deflation_identity(tl in -7.0f64..7.0, b in -7.0f64..7.0, bp in -7.0f64..7.0, tr in -7.0f64..7.0) {
            let input = DeflationInput::new(tl, b, bp, tr);
            prop_assert!(identity_error(&input) <= 1e-10);
        }

        #[test]
        fn p_and_q_are_cosine_sine(tl in -7.0f64..7.0, b in -7.0f64..7.0, bp in -7.0f64..7.0, tr in -7.0f64..7.0) {
            let d = deflate_core(&DeflationInput::new(tl, b, bp, tr)).diagnostics;
            prop_assert!((d.p_plus.powi(2) + d.q_plus.powi(2) - 1.0).abs() <= 1e-12);
            prop_assert!((d.p_minus.powi(2) + d.q_minus.powi(2) - 1.0).abs() <= 1e-12);
            prop_assert!((0.0..=1.0).contains(&d.p_plus) && (0.0..=1.0 + 1e-15).contains(&d.q_plus));
        }

        #[test]
        fn magic_exchange_y_blocks(a in -4.0f64..4.0, b in -4.0f64..4.0) {
            let lhs = MAGIC * EXCHANGE * block_diag(&rotation(Axis::Y, a), &rotation(Axis::Y, b)) * EXCHANGE * MAGIC.adjoint();
            let yu = pauli_pair(PauliLabel::Y, PauliLabel::I);
            let uy = pauli_pair(PauliLabel::I, PauliLabel::Y);
            let rhs = Mat4::exp_i_involution(&yu, (-a - b) / 2.0) * Mat4::exp_i_involution(&uy, (a - b) / 2.0);
            prop_assert!(lhs.distance(&rhs) <= 1e-12);
        }

        #[test]
        fn magic_exchange_z_blocks(a in -4.0f64..4.0, b in -4.0f64..4.0) {
            let lhs = MAGIC * EXCHANGE * block_diag(&rotation(Axis::Z, a), &rotation(Axis::Z, b)) * EXCHANGE * MAGIC.adjoint();
            let xx = pauli_pair(PauliLabel::X, PauliLabel::X);
            let zz = pauli_pair(PauliLabel::Z, PauliLabel::Z);
            let rhs = Mat4::exp_i_involution(&xx, (a + b) / 2.0) * Mat4::exp_i_involution(&zz, (a - b) / 2.0);
            prop_assert!(lhs.distance(&rhs) <= 1e-12);
        }

        #[test]
        fn same_side_random(qs in prop::array::uniform4(quaternion()), ph in prop::array::uniform4(-3.2f64..3.2)) {
            let [u, a, b, v] = [0, 1, 2, 3].map(|i| u2(qs[i], ph[i]));
            let c = deflate_same_side(&u, &a, &b, &v).unwrap();
            prop_assert_eq!(c.cnot_count(), 2);
            prop_assert_eq!(c.entangling_count(), 2);
            prop_assert_eq!(c.controlled_u_count(), 0);
            prop_assert!(c.evaluate().distance(&same_side_matrix(&u, &a, &b, &v)) <= 1e-9);
        }

        #[test]
        fn opposite_side_random(qs in prop::array::uniform4(quaternion()), ph in prop::array::uniform4(-3.2f64..3.2)) {
            let [u, a, b, v] = [0, 1, 2, 3].map(|i| u2(qs[i], ph[i]));
            let c = deflate_opposite_side(&u, &a, &b, &v).unwrap();
            prop_assert_eq!(c.cnot_count(), 2);
            prop_assert_eq!(c.entangling_count(), 2);
            prop_assert!(c.evaluate().distance(&opposite_side_matrix(&u, &a, &b, &v)) <= 1e-9);
        }
    }
}
