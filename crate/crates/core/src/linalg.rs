//! Fixed-size complex matrices, the named constant matrices used throughout
//! the crate, and the SU(2) helper decompositions.
//!
//! Qubit convention: in `kron(a, b)` the left factor `a` acts on qubit 1 (the
//! bottom wire) and `b` on qubit 0 (the top wire), so that matrix rows are
//! labelled `(a1, a0)`. Every identity in this crate depends on it.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Complex = num_complex::Complex64;

/// Tolerance for the unitarity tag of a matrix.
pub const UNITARY_TOL: f64 = 1e-10;
/// Magnitudes at or below this are treated as zero by branch rules.
pub const ZERO_TOL: f64 = 1e-12;

const C0: Complex = Complex::new(0.0, 0.0);
const C1: Complex = Complex::new(1.0, 0.0);
const CI: Complex = Complex::new(0.0, 1.0);

/// Wraps an angle into `(-pi, pi]`.
pub fn normalize_angle(theta: f64) -> f64 {
    let mut t = theta.rem_euclid(2.0 * PI);
    if t > PI {
        t -= 2.0 * PI;
    }
    t
}

/// `exp(i theta)`.
pub fn cis(theta: f64) -> Complex {
    Complex::from_polar(1.0, theta)
}

macro_rules! square_matrix {
    ($name:ident, $n:expr) => {
        #[derive(Clone, Copy, PartialEq)]
        pub struct $name(pub [[Complex; $n]; $n]);

        impl $name {
            pub const DIM: usize = $n;

            pub const fn zeros() -> Self {
                $name([[C0; $n]; $n])
            }

            pub fn identity() -> Self {
                let mut m = Self::zeros();
                for i in 0..$n {
                    m.0[i][i] = C1;
                }
                m
            }

            pub fn diagonal(d: [Complex; $n]) -> Self {
                let mut m = Self::zeros();
                for i in 0..$n {
                    m.0[i][i] = d[i];
                }
                m
            }

            #[inline]
            pub fn get(&self, r: usize, c: usize) -> Complex {
                self.0[r][c]
            }

            pub fn adjoint(&self) -> Self {
                let mut m = Self::zeros();
                for r in 0..$n {
                    for c in 0..$n {
                        m.0[c][r] = self.0[r][c].conj();
                    }
                }
                m
            }

            pub fn conj(&self) -> Self {
                let mut m = *self;
                m.0.iter_mut().flatten().for_each(|z| *z = z.conj());
                m
            }

            pub fn transpose(&self) -> Self {
                let mut m = Self::zeros();
                for r in 0..$n {
                    for c in 0..$n {
                        m.0[c][r] = self.0[r][c];
                    }
                }
                m
            }

            pub fn scale(&self, s: Complex) -> Self {
                let mut m = *self;
                m.0.iter_mut().flatten().for_each(|z| *z *= s);
                m
            }

            pub fn trace(&self) -> Complex {
                (0..$n).map(|i| self.0[i][i]).sum()
            }

            pub fn frobenius_norm(&self) -> f64 {
                self.0.iter().flatten().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
            }

            /// `||self - other||_F`.
            pub fn distance(&self, other: &Self) -> f64 {
                (*self - *other).frobenius_norm()
            }

            /// `||A^dagger A - I||_F`.
            pub fn unitarity_error(&self) -> f64 {
                (self.adjoint() * *self).distance(&Self::identity())
            }

            pub fn is_unitary(&self, tol: f64) -> bool {
                self.unitarity_error() <= tol
            }

            pub fn is_finite(&self) -> bool {
                self.0
                    .iter()
                    .flatten()
                    .all(|z| z.re.is_finite() && z.im.is_finite())
            }

            /// Largest absolute entry-wise deviation.
            pub fn max_abs_diff(&self, other: &Self) -> f64 {
                self.0
                    .iter()
                    .flatten()
                    .zip(other.0.iter().flatten())
                    .map(|(a, b)| (a - b).norm())
                    .fold(0.0, f64::max)
            }

            /// `exp(i theta P)` for an involution `P` (`P^2 = I`), e.g. any
            /// Pauli product.
            pub fn exp_i_involution(p: &Self, theta: f64) -> Self {
                Self::identity().scale(Complex::new(theta.cos(), 0.0)) + p.scale(CI * theta.sin())
            }

            /// Newton-Schulz iteration towards the nearest unitary; converges
            /// quadratically from matrices that are already close.
            pub fn polish_unitary(&self) -> Self {
                let mut x = *self;
                for _ in 0..8 {
                    if x.unitarity_error() <= 1e-15 {
                        break;
                    }
                    let three = Self::identity().scale(Complex::new(3.0, 0.0));
                    x = (x * (three - x.adjoint() * x)).scale(Complex::new(0.5, 0.0));
                }
                x
            }

            pub fn ensure_unitary(&self, what: &str, tol: f64) -> Result<()> {
                if !self.is_finite() {
                    return Err(Error::InvalidArgument(format!("{what} has non-finite entries")));
                }
                let deviation = self.unitarity_error();
                if deviation > tol {
                    return Err(Error::NotUnitary {
                        what: what.to_string(),
                        deviation,
                    });
                }
                Ok(())
            }
        }

        impl Default for $name {
            fn default() -> Self {
                Self::identity()
            }
        }

        impl Mul for $name {
            type Output = $name;
            fn mul(self, rhs: $name) -> $name {
                let mut m = $name::zeros();
                for r in 0..$n {
                    for k in 0..$n {
                        let a = self.0[r][k];
                        if a == C0 {
                            continue;
                        }
                        for c in 0..$n {
                            m.0[r][c] += a * rhs.0[k][c];
                        }
                    }
                }
                m
            }
        }

        impl Add for $name {
            type Output = $name;
            fn add(self, rhs: $name) -> $name {
                let mut m = self;
                for r in 0..$n {
                    for c in 0..$n {
                        m.0[r][c] += rhs.0[r][c];
                    }
                }
                m
            }
        }

        impl Sub for $name {
            type Output = $name;
            fn sub(self, rhs: $name) -> $name {
                let mut m = self;
                for r in 0..$n {
                    for c in 0..$n {
                        m.0[r][c] -= rhs.0[r][c];
                    }
                }
                m
            }
        }

        impl Neg for $name {
            type Output = $name;
            fn neg(self) -> $name {
                self.scale(-C1)
            }
        }

        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                writeln!(f, "{}[", stringify!($name))?;
                for row in &self.0 {
                    write!(f, " ")?;
                    for z in row {
                        write!(f, " {:>+.6}{:+.6}i", z.re, z.im)?;
                    }
                    writeln!(f)?;
                }
                write!(f, "]")
            }
        }
    };
}

square_matrix!(Mat2, 2);
square_matrix!(Mat4, 4);

impl Mat2 {
    pub const fn new(a: Complex, b: Complex, c: Complex, d: Complex) -> Self {
        Mat2([[a, b], [c, d]])
    }

    pub fn real(a: f64, b: f64, c: f64, d: f64) -> Self {
        Mat2::new(a.into(), b.into(), c.into(), d.into())
    }

    pub fn det(&self) -> Complex {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    pub fn ensure_special_unitary(&self, what: &str) -> Result<()> {
        self.ensure_unitary(what, UNITARY_TOL)?;
        let deviation = (self.det() - C1).norm();
        if deviation > UNITARY_TOL {
            return Err(Error::NotSpecialUnitary {
                what: what.to_string(),
                deviation,
            });
        }
        Ok(())
    }

    /// Splits a unitary into `exp(i phi) * s` with `s` special-unitary and
    /// `phi = arg(det) / 2`.
    pub fn phase_split(&self) -> (f64, Mat2) {
        let phi = self.det().arg() / 2.0;
        (phi, self.scale(cis(-phi)))
    }
}

impl Mat4 {
    /// The 2x2 block at block-row `i`, block-column `j`, i.e. fixed `a1`
    /// values on the rows and columns.
    pub fn block(&self, i: usize, j: usize) -> Mat2 {
        let mut b = Mat2::zeros();
        for r in 0..2 {
            for c in 0..2 {
                b.0[r][c] = self.0[2 * i + r][2 * j + c];
            }
        }
        b
    }

    pub fn from_blocks(b00: &Mat2, b01: &Mat2, b10: &Mat2, b11: &Mat2) -> Mat4 {
        let mut m = Mat4::zeros();
        for (i, j, b) in [(0, 0, b00), (0, 1, b01), (1, 0, b10), (1, 1, b11)] {
            for r in 0..2 {
                for c in 0..2 {
                    m.0[2 * i + r][2 * j + c] = b.0[r][c];
                }
            }
        }
        m
    }
}

// ---------------------------------------------------------------------------
// Named constants.

pub const IDENTITY2: Mat2 = Mat2::new(C1, C0, C0, C1);
pub const PAULI_X: Mat2 = Mat2::new(C0, C1, C1, C0);
pub const PAULI_Y: Mat2 = Mat2::new(C0, Complex::new(0.0, -1.0), CI, C0);
pub const PAULI_Z: Mat2 = Mat2::new(C1, C0, C0, Complex::new(-1.0, 0.0));
/// `n = (1 - sigma_Z) / 2`, the projector on `|1>`.
pub const PROJ_ONE: Mat2 = Mat2::new(C0, C0, C0, C1);
/// `nbar = 1 - n`, the projector on `|0>`.
pub const PROJ_ZERO: Mat2 = Mat2::new(C1, C0, C0, C0);

const H: Complex = Complex::new(FRAC_1_SQRT_2, 0.0);
const HI: Complex = Complex::new(0.0, FRAC_1_SQRT_2);
const NEG: Complex = Complex::new(-1.0, 0.0);

/// `(1/sqrt 2) [[1, 1], [1, -1]]`, the CZ/CNOT basis change.
pub const HADAMARD: Mat2 = Mat2::new(H, H, H, Complex::new(-FRAC_1_SQRT_2, 0.0));

/// The two-qubit exchange operator.
pub const EXCHANGE: Mat4 = Mat4([[C1, C0, C0, C0], [C0, C0, C1, C0], [C0, C1, C0, C0], [C0, C0, C0, C1]]);

/// The magic-basis matrix; its columns are the magic basis.
pub const MAGIC: Mat4 = Mat4([
    [H, C0, C0, HI],
    [C0, HI, H, C0],
    [C0, HI, Complex::new(-FRAC_1_SQRT_2, 0.0), C0],
    [H, C0, C0, Complex::new(0.0, -FRAC_1_SQRT_2)],
]);

/// `diag(1, 1, 1, -1)`.
pub const CZ: Mat4 = Mat4([[C1, C0, C0, C0], [C0, C1, C0, C0], [C0, C0, C1, C0], [C0, C0, C0, NEG]]);

// ---------------------------------------------------------------------------
// Pauli labels.

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PauliLabel {
    I,
    X,
    Y,
    Z,
}

impl PauliLabel {
    pub const ALL: [PauliLabel; 4] = [PauliLabel::I, PauliLabel::X, PauliLabel::Y, PauliLabel::Z];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(mu: usize) -> Option<PauliLabel> {
        Self::ALL.get(mu).copied()
    }

    pub fn matrix(self) -> Mat2 {
        match self {
            PauliLabel::I => IDENTITY2,
            PauliLabel::X => PAULI_X,
            PauliLabel::Y => PAULI_Y,
            PauliLabel::Z => PAULI_Z,
        }
    }

    /// Single-letter name, with `U` for the identity.
    pub fn letter(self) -> char {
        match self {
            PauliLabel::I => 'U',
            PauliLabel::X => 'X',
            PauliLabel::Y => 'Y',
            PauliLabel::Z => 'Z',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

/// `sign * (sigma_left (x) sigma_right)`; `left` acts on qubit 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SignedPauliPair {
    pub sign: Sign,
    pub left: PauliLabel,
    pub right: PauliLabel,
}

impl SignedPauliPair {
    pub const fn new(sign: Sign, left: PauliLabel, right: PauliLabel) -> Self {
        SignedPauliPair { sign, left, right }
    }

    pub fn matrix(&self) -> Mat4 {
        pauli_pair(self.left, self.right).scale(self.sign.value().into())
    }
}

impl fmt::Display for SignedPauliPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.sign {
            Sign::Plus => "",
            Sign::Minus => "-",
        };
        write!(f, "{s}s{}{}", self.left.letter(), self.right.letter())
    }
}

/// `sigma_mu (x) sigma_nu`.
pub fn pauli_pair(mu: PauliLabel, nu: PauliLabel) -> Mat4 {
    kron(&mu.matrix(), &nu.matrix())
}

// ---------------------------------------------------------------------------
// Products and embeddings.

/// Kronecker product; `a` acts on qubit 1, `b` on qubit 0:
/// `(a (x) b)[(a1 a0), (b1 b0)] = a[a1, b1] * b[a0, b0]`.
pub fn kron(a: &Mat2, b: &Mat2) -> Mat4 {
    let mut m = Mat4::zeros();
    for a1 in 0..2 {
        for b1 in 0..2 {
            let x = a.0[a1][b1];
            for a0 in 0..2 {
                for b0 in 0..2 {
                    m.0[2 * a1 + a0][2 * b1 + b0] = x * b.0[a0][b0];
                }
            }
        }
    }
    m
}

/// `[[p, 0], [0, q]]` in `(a1, a0)` order: `p` acts on qubit 0 when qubit 1 is
/// `|0>`, `q` when it is `|1>`.
pub fn block_diag(p: &Mat2, q: &Mat2) -> Mat4 {
    Mat4::from_blocks(p, &Mat2::zeros(), &Mat2::zeros(), q)
}

// ---------------------------------------------------------------------------
// SU(2) helpers.

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub fn pauli(self) -> Mat2 {
        match self {
            Axis::X => PAULI_X,
            Axis::Y => PAULI_Y,
            Axis::Z => PAULI_Z,
        }
    }
}

/// `exp(i theta sigma_axis)`.
pub fn rotation(axis: Axis, theta: f64) -> Mat2 {
    let (s, c) = theta.sin_cos();
    match axis {
        Axis::X => Mat2::new(c.into(), Complex::new(0.0, s), Complex::new(0.0, s), c.into()),
        Axis::Y => Mat2::real(c, s, -s, c),
        Axis::Z => Mat2::diagonal([cis(theta), cis(-theta)]),
    }
}

/// `diag(1, exp(i delta))`.
pub fn phase_gate(delta: f64) -> Mat2 {
    Mat2::diagonal([C1, cis(delta)])
}

/// `exp(i theta (n . sigma)) = cos(theta) I + i sin(theta) (n . sigma)` for a
/// unit axis `n`.
pub fn su2_exp(axis: [f64; 3], theta: f64) -> Result<Mat2> {
    let norm = axis.iter().map(|x| x * x).sum::<f64>().sqrt();
    if !norm.is_finite() || (norm - 1.0).abs() > ZERO_TOL || !theta.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "su2_exp needs a unit axis and finite angle, got |axis| = {norm}, angle = {theta}"
        )));
    }
    let [nx, ny, nz] = axis;
    let (s, c) = theta.sin_cos();
    Ok(Mat2::new(
        Complex::new(c, s * nz),
        Complex::new(s * ny, s * nx),
        Complex::new(-s * ny, s * nx),
        Complex::new(c, -s * nz),
    ))
}

/// Returns the phase `phi` with `||a - exp(i phi) b||_F <= tol`, if any. The
/// phase is read off the largest entry of `b^dagger a`.
pub fn equal_up_to_phase(a: &Mat4, b: &Mat4, tol: f64) -> Option<f64> {
    let p = b.adjoint() * *a;
    let z =
        p.0.iter()
            .flatten()
            .copied()
            .max_by(|x, y| x.norm_sqr().total_cmp(&y.norm_sqr()))?;
    if z.norm() <= ZERO_TOL {
        return None;
    }
    let phi = normalize_angle(z.arg());
    (a.distance(&b.scale(cis(phi))) <= tol).then_some(phi)
}

/// ZYZ Euler angles of a special-unitary `a`:
/// `a = exp(i alpha Z) exp(i beta Y) exp(i gamma Z)` with `beta` in `[0, pi/2]`.
///
/// When `cos(beta)` or `sin(beta)` vanishes only one of `alpha +- gamma` is
/// determined; the other is set to zero.
pub fn euler_zyz(a: &Mat2) -> Result<(f64, f64, f64)> {
    a.ensure_special_unitary("euler_zyz input")?;
    let a00 = a.0[0][0];
    let a01 = a.0[0][1];
    let beta = a01.norm().atan2(a00.norm());
    let sum = if a00.norm() > ZERO_TOL { a00.arg() } else { 0.0 };
    let diff = if a01.norm() > ZERO_TOL { a01.arg() } else { 0.0 };
    let alpha = normalize_angle((sum + diff) / 2.0);
    let gamma = normalize_angle((sum - diff) / 2.0);
    Ok((alpha, beta, gamma))
}

/// `a = exp(i delta) w diag(exp(i theta), exp(-i theta)) w^dagger`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Diagonalization {
    /// Special-unitary; its first column is the eigenvector for `exp(i (delta + theta))`.
    pub w: Mat2,
    /// In `[0, pi]`.
    pub theta: f64,
    /// Half the determinant phase, in `(-pi/2, pi/2]`.
    pub delta: f64,
}

impl Diagonalization {
    pub fn reconstruct(&self) -> Mat2 {
        (self.w * rotation(Axis::Z, self.theta) * self.w.adjoint()).scale(cis(self.delta))
    }
}

/// Diagonalises a 2x2 unitary. Degenerate eigenvalues give `w = I`.
pub fn diagonalize_unitary2(a: &Mat2) -> Result<Diagonalization> {
    a.ensure_unitary("diagonalize_unitary2 input", UNITARY_TOL)?;
    let (delta, s) = a.phase_split();
    // s = c I + i (v . sigma), v = sin(theta) n
    let m = &s.0;
    let c = ((m[0][0] + m[1][1]) / 2.0).re;
    let vz = ((m[0][0] - m[1][1]) / 2.0).im;
    let vx = ((m[0][1] + m[1][0]) / 2.0).im;
    let vy = ((m[0][1] - m[1][0]) / 2.0).re;
    let sn = (vx * vx + vy * vy + vz * vz).sqrt();
    let theta = sn.atan2(c);
    if sn <= ZERO_TOL {
        return Ok(Diagonalization {
            w: IDENTITY2,
            theta,
            delta,
        });
    }
    let (nx, ny, nz) = (vx / sn, vy / sn, vz / sn);
    // +1 eigenvector of n . sigma; pick the better-conditioned of two forms.
    let cand_a = [Complex::new(1.0 + nz, 0.0), Complex::new(nx, ny)];
    let cand_b = [Complex::new(nx, -ny), Complex::new(1.0 - nz, 0.0)];
    let norm = |v: &[Complex; 2]| (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
    let v = if norm(&cand_a) >= norm(&cand_b) { cand_a } else { cand_b };
    let v = {
        let k = norm(&v);
        [v[0] / k, v[1] / k]
    };
    let w = Mat2::new(v[0], -v[1].conj(), v[1], v[0].conj());
    Ok(Diagonalization { w, theta, delta })
}
