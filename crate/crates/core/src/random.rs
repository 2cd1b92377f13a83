//! Seeded samplers for unitaries and angles.

use std::f64::consts::PI;

use rand::Rng;
use rand_distr::StandardNormal;

use crate::linalg::{cis, Complex, Mat2, Mat4};

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.sample(StandardNormal)
}

/// Uniform in `[-pi, pi)`.
pub fn random_angle<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.random_range(-PI..PI)
}

/// Unit quaternion from four normals, as `[[a+ib, c+id], [-c+id, a-ib]]`.
pub fn random_su2<R: Rng + ?Sized>(rng: &mut R) -> Mat2 {
    loop {
        let q: [f64; 4] = std::array::from_fn(|_| gaussian(rng));
        let n = q.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 1e-6 {
            let [a, b, c, d] = q.map(|x| x / n);
            return Mat2::new(
                Complex::new(a, b),
                Complex::new(c, d),
                Complex::new(-c, d),
                Complex::new(a, -b),
            );
        }
    }
}

pub fn random_u2<R: Rng + ?Sized>(rng: &mut R) -> Mat2 {
    let su = random_su2(rng);
    su.scale(cis(random_angle(rng)))
}

/// Gram-Schmidt (run twice) on the columns of a complex Gaussian matrix.
/// Each column keeps the phase of its own projection, which is the
/// positive-diagonal QR convention.
pub fn random_u4<R: Rng + ?Sized>(rng: &mut R) -> Mat4 {
    loop {
        let mut cols = [[Complex::new(0.0, 0.0); 4]; 4];
        for col in cols.iter_mut() {
            for z in col.iter_mut() {
                *z = Complex::new(gaussian(rng), gaussian(rng)) / std::f64::consts::SQRT_2;
            }
        }
        if let Some(q) = orthonormalize(cols) {
            let mut m = Mat4::zeros();
            for (j, col) in q.iter().enumerate() {
                for (i, z) in col.iter().enumerate() {
                    m.0[i][j] = *z;
                }
            }
            return m;
        }
    }
}

fn orthonormalize(mut cols: [[Complex; 4]; 4]) -> Option<[[Complex; 4]; 4]> {
    for j in 0..4 {
        for _ in 0..2 {
            for k in 0..j {
                let p: Complex = (0..4).map(|i| cols[k][i].conj() * cols[j][i]).sum();
                let ck = cols[k];
                for (z, c) in cols[j].iter_mut().zip(ck) {
                    *z -= p * c;
                }
            }
        }
        let n = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if n < 1e-6 {
            return None;
        }
        for z in cols[j].iter_mut() {
            *z /= n;
        }
    }
    Some(cols)
}
