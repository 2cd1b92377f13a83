//! Cosine-sine decomposition of a 4x4 unitary and three-entangler synthesis.
//!
//! Blocks are indexed by qubit 1:
//!
//! ```text
//! u = e^{i alpha} [e^{i aL} L0, 0; 0, e^{-i aL} L1] [C, S; -S, C] [e^{i aR} R0, 0; 0, e^{-i aR} R1]
//! ```
//!
//! with `C = diag(cos t1, cos t2)`, `S = diag(sin t1, sin t2)` and special-unitary
//! corners.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use crate::circuit::{Circuit, EntanglerForm, Gate, Qubit};
use crate::deflate::same_side_form;
use crate::error::Result;
use crate::linalg::{
    diagonalize_unitary2, phase_gate, rotation, Axis, Complex, Mat2, Mat4, IDENTITY2, PAULI_X, PAULI_Z, UNITARY_TOL,
    ZERO_TOL,
};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CsdFactors {
    pub alpha: f64,
    pub alpha_l: f64,
    pub alpha_r: f64,
    /// `theta1 <= theta2`, both in `[0, pi/2]`.
    pub theta1: f64,
    pub theta2: f64,
    pub l0: Mat2,
    pub l1: Mat2,
    pub r0: Mat2,
    pub r1: Mat2,
}

/// `L0^dagger L1 = e^{i delta_l} u_l Rz(lambda_l) u_l^dagger` and
/// `Z R1 R0^dagger = e^{i delta_r} u_r Rz(lambda_r) u_r^dagger`.
///
/// The right-hand product has determinant -1, so `delta_r` is never zero.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CsdCircuitIntermediates {
    pub u_l: Mat2,
    pub u_r: Mat2,
    pub lambda_l: f64,
    pub lambda_r: f64,
    pub delta_l: f64,
    pub delta_r: f64,
}

/// `[C, S; -S, C]`.
pub fn cs_matrix(theta1: f64, theta2: f64) -> Mat4 {
    let c = Mat2::real(theta1.cos(), 0.0, 0.0, theta2.cos());
    let s = Mat2::real(theta1.sin(), 0.0, 0.0, theta2.sin());
    Mat4::from_blocks(&c, &s, &(-s), &c)
}

fn corners(alpha: f64, p: &Mat2, q: &Mat2) -> Mat4 {
    let z = Mat2::zeros();
    Mat4::from_blocks(
        &p.scale(Complex::from_polar(1.0, alpha)),
        &z,
        &z,
        &q.scale(Complex::from_polar(1.0, -alpha)),
    )
}

impl CsdFactors {
    pub fn reconstruct(&self) -> Mat4 {
        (corners(self.alpha_l, &self.l0, &self.l1)
            * cs_matrix(self.theta1, self.theta2)
            * corners(self.alpha_r, &self.r0, &self.r1))
        .scale(Complex::from_polar(1.0, self.alpha))
    }

    pub fn validate(&self) -> Result<()> {
        for (m, what) in [(&self.l0, "l0"), (&self.l1, "l1"), (&self.r0, "r0"), (&self.r1, "r1")] {
            m.ensure_special_unitary(what)?;
        }
        Ok(())
    }

    pub fn intermediates(&self) -> Result<CsdCircuitIntermediates> {
        self.validate()?;
        let dl = diagonalize_unitary2(&(self.l0.adjoint() * self.l1))?;
        let dr = diagonalize_unitary2(&(PAULI_Z * self.r1 * self.r0.adjoint()))?;
        Ok(CsdCircuitIntermediates {
            u_l: dl.w,
            u_r: dr.w,
            lambda_l: dl.theta,
            lambda_r: dr.theta,
            delta_l: dl.delta,
            delta_r: dr.delta,
        })
    }
}

impl CsdCircuitIntermediates {
    pub fn left(&self) -> Mat2 {
        (self.u_l * rotation(Axis::Z, self.lambda_l) * self.u_l.adjoint()).scale(Complex::from_polar(1.0, self.delta_l))
    }

    pub fn right(&self) -> Mat2 {
        (self.u_r * rotation(Axis::Z, self.lambda_r) * self.u_r.adjoint()).scale(Complex::from_polar(1.0, self.delta_r))
    }
}

type Vec2 = [Complex; 2];

fn column(m: &Mat2, j: usize) -> Vec2 {
    [m.0[0][j], m.0[1][j]]
}

fn norm(v: &Vec2) -> f64 {
    (v[0].norm_sqr() + v[1].norm_sqr()).sqrt()
}

fn inner(a: &Vec2, b: &Vec2) -> Complex {
    a[0].conj() * b[0] + a[1].conj() * b[1]
}

fn perp(v: &Vec2) -> Vec2 {
    [-v[1].conj(), v[0].conj()]
}

fn from_columns(c0: &Vec2, c1: &Vec2) -> Mat2 {
    Mat2::new(c0[0], c1[0], c0[1], c1[1])
}

/// Eigenvectors of a Hermitian 2x2 matrix as the rows of the returned unitary,
/// largest eigenvalue first. A multiple of the identity gives the identity.
fn hermitian_eigenrows(h: &Mat2) -> Mat2 {
    let a = h.0[0][0].re;
    let d = h.0[1][1].re;
    let b = h.0[0][1];
    let half = (a - d) / 2.0;
    let r = half.hypot(b.norm());
    if r == 0.0 {
        return IDENTITY2;
    }
    let v = if half >= 0.0 {
        [Complex::new(half + r, 0.0), b.conj()]
    } else {
        [b, Complex::new(r - half, 0.0)]
    };
    let n = norm(&v);
    let mut v = [v[0] / n, v[1] / n];
    let lead = if v[0].norm() > ZERO_TOL { v[0] } else { v[1] };
    let fix = lead.conj() / lead.norm();
    v = [v[0] * fix, v[1] * fix];
    from_columns(&v, &perp(&v)).adjoint()
}

/// Unitary whose column `anchor` is `cols[anchor] / n`; the other column is
/// the orthogonal complement phased to match `cols[1 - anchor]`.
fn complete(cols: [Vec2; 2], anchor: usize, n: f64) -> Mat2 {
    if n <= ZERO_TOL {
        return IDENTITY2;
    }
    let a = [cols[anchor][0] / n, cols[anchor][1] / n];
    let p = perp(&a);
    let overlap = inner(&p, &cols[1 - anchor]);
    let phase = if overlap.norm() > ZERO_TOL {
        overlap / overlap.norm()
    } else {
        Complex::new(1.0, 0.0)
    };
    let q = [p[0] * phase, p[1] * phase];
    if anchor == 0 {
        from_columns(&a, &q)
    } else {
        from_columns(&q, &a)
    }
}

/// Cosine-sine decomposition; cosines come out in descending order.
pub fn csd_2q(u: &Mat4) -> Result<CsdFactors> {
    u.ensure_unitary("u", UNITARY_TOL)?;
    let (u00, u01, u10, u11) = (u.block(0, 0), u.block(0, 1), u.block(1, 0), u.block(1, 1));

    // Diagonalise the smaller Gram matrix so that small cosines (or sines)
    // keep their relative precision.
    let h = u00.adjoint() * u00;
    let g = u10.adjoint() * u10;
    let b0 = if h.trace().re <= g.trace().re {
        hermitian_eigenrows(&h)
    } else {
        hermitian_eigenrows(&(-g))
    };
    let y = u00 * b0.adjoint();
    let z = -(u10 * b0.adjoint());
    let ys = [column(&y, 0), column(&y, 1)];
    let zs = [column(&z, 0), column(&z, 1)];
    let theta = [0, 1].map(|i| norm(&zs[i]).atan2(norm(&ys[i])));
    let (c, s) = (theta.map(f64::cos), theta.map(f64::sin));

    let a0 = complete(ys, 0, norm(&ys[0]));
    let a1 = complete(zs, 1, norm(&zs[1]));

    let x01 = a0.adjoint() * u01;
    let x11 = a1.adjoint() * u11;
    let mut b1 = Mat2::zeros();
    for i in 0..2 {
        for j in 0..2 {
            b1.0[i][j] = x01.0[i][j] * s[i] + x11.0[i][j] * c[i];
        }
    }

    let (phi0, l0) = a0.phase_split();
    let (phi1, l1) = a1.phase_split();
    let (psi0, r0) = b0.phase_split();
    let (psi1, r1) = b1.phase_split();
    Ok(CsdFactors {
        alpha: (phi0 + phi1 + psi0 + psi1) / 2.0,
        alpha_l: (phi0 - phi1) / 2.0,
        alpha_r: (psi0 - psi1) / 2.0,
        theta1: theta[0],
        theta2: theta[1],
        l0,
        l1,
        r0,
        r1,
    })
}

/// One-qubit slots of the three-entangler form
/// `e^{i phase} P . ctrl(Rz lL) . Q . CZ . R . ctrl(Rz lR) . S` (product order).
struct Skeleton {
    phase: f64,
    lambda_l: f64,
    lambda_r: f64,
    p: [Mat2; 2],
    q: [Mat2; 2],
    r: [Mat2; 2],
    s: [Mat2; 2],
}

fn skeleton(f: &CsdFactors) -> Result<Skeleton> {
    let im = f.intermediates()?;
    let rz = |t: f64| rotation(Axis::Z, t);
    let ry = |t: f64| rotation(Axis::Y, t);
    Ok(Skeleton {
        phase: f.alpha,
        lambda_l: im.lambda_l,
        lambda_r: im.lambda_r,
        p: [f.l0 * im.u_l, rz(f.alpha_l) * phase_gate(im.delta_l)],
        q: [im.u_l.adjoint(), ry((f.theta1 + f.theta2) / 2.0)],
        r: [im.u_r, ry((f.theta1 - f.theta2) / 2.0) * phase_gate(im.delta_r)],
        s: [im.u_r.adjoint() * f.r0, rz(f.alpha_r)],
    })
}

/// Circuit with two controlled Z-rotations (control qubit 1) and one CZ.
pub fn csd_to_circuit(f: &CsdFactors) -> Result<Circuit> {
    let k = skeleton(f)?;
    let slot = |m: &[Mat2; 2]| [Gate::u(Qubit::Q0, m[0]), Gate::u(Qubit::Q1, m[1])];
    let mut gates = vec![Gate::GlobalPhase { angle: k.phase }];
    gates.extend(slot(&k.p));
    gates.push(Gate::cu(Qubit::Q1, rotation(Axis::Z, k.lambda_l)));
    gates.extend(slot(&k.q));
    gates.push(Gate::Cz);
    gates.extend(slot(&k.r));
    gates.push(Gate::cu(Qubit::Q1, rotation(Axis::Z, k.lambda_r)));
    gates.extend(slot(&k.s));
    Ok(Circuit::from_product_order(gates))
}

/// Any 4x4 unitary as exactly three entangling gates of the requested form.
pub fn synth_3cnot(u: &Mat4, form: EntanglerForm) -> Result<Circuit> {
    let k = skeleton(&csd_2q(u)?)?;
    let rz = |t: f64| rotation(Axis::Z, t);

    // CZ = e^{-i pi/4} Rz(pi/4) on 1 . ctrl(Rz(pi/2))
    let r = [k.r[0], rz(FRAC_PI_4) * k.r[1]];
    let f1 = same_side_form(&rz(k.lambda_l), &k.q[0], &k.q[1], &rz(FRAC_PI_2))?;
    // The first CNOT of f1 is ctrl(X), so it deflates against ctrl(Rz lR).
    let f2 = same_side_form(&PAULI_X, &(f1.first[0] * r[0]), &(f1.first[1] * r[1]), &rz(k.lambda_r))?;

    let slot = |m0: Mat2, m1: Mat2| [Gate::u(Qubit::Q0, m0), Gate::u(Qubit::Q1, m1)];
    let mut gates = Vec::with_capacity(12);
    gates.extend(slot(f2.first[0] * k.s[0], f2.first[1] * k.s[1]));
    gates.push(Gate::cnot(Qubit::Q1));
    gates.extend(slot(f2.middle[0], f2.middle[1]));
    gates.push(Gate::cnot(Qubit::Q1));
    gates.extend(slot(f1.middle[0] * f2.last[0], f1.middle[1] * f2.last[1]));
    gates.push(Gate::cnot(Qubit::Q1));
    gates.extend(slot(k.p[0] * f1.last[0], k.p[1] * f1.last[1]));
    gates.push(Gate::GlobalPhase {
        angle: k.phase - FRAC_PI_4 + f1.phase + f2.phase,
    });
    Ok(Circuit::from_gates_unchecked(gates).with_entangler(form))
}
