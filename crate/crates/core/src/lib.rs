//! Two-qubit circuit rewrites built around the deflation identity.
//!
//! A two-qubit circuit containing exactly two controlled-U gates (plus any
//! one-qubit gates) is rewritten into an equal circuit with exactly two
//! CNOTs. The same machinery closes a "breach" in a three-CNOT pattern and,
//! combined with the cosine-sine decomposition, synthesises any 4x4 unitary
//! with exactly three entangling gates.
//!
//! # Conventions
//!
//! Rows and columns of every 4x4 matrix are labelled `(a1, a0)` in the order
//! `00, 01, 10, 11`, where `a0` is the state of qubit 0 (the top wire) and
//! `a1` the state of qubit 1 (the bottom wire). Consequently in
//! [`linalg::kron`]`(a, b)` the left factor acts on qubit 1 and the right
//! factor on qubit 0.
//!
//! A rotation about axis `D` by angle `t` is `exp(i t sigma_D)` (note the sign
//! and the absence of the usual factor 1/2).
//!
//! A [`Circuit`] stores gates in application order: the first gate in the list
//! acts first and is therefore the rightmost factor of the matrix product.
//! Functions that take gate matrices as a *product* (`u`, `a`, `b`, `v` for
//! `ctrl(u) . (a (x) b) . ctrl(v)`) document that explicitly.

pub mod breach;
pub mod circuit;
pub mod csd;
pub mod deflate;
mod error;
pub mod linalg;
pub mod random;
pub mod tables;
pub mod verify;

pub use breach::{close_breach, BreachPattern};
pub use circuit::{controlled_rotation_matrix, Circuit, EntanglerForm, Gate, Qubit};
pub use csd::{cs_matrix, csd_2q, csd_to_circuit, synth_3cnot, CsdCircuitIntermediates, CsdFactors};
pub use deflate::{
    build_lhs, build_rhs, deflate_core, deflate_opposite_side, deflate_same_side, DeflationAngles,
    DeflationDiagnostics, DeflationInput,
};
pub use error::{Error, Result};
pub use linalg::{Axis, Complex, Mat2, Mat4, PauliLabel, Sign, SignedPauliPair};
pub use tables::{conjugate_pauli, expand_pauli_basis, ConjugationKind};
pub use verify::{run_suite, run_suite_with_tolerance, CheckResult, Report};
