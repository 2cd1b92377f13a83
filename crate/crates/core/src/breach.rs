//! Closing a breach: the three-CNOT pattern
//! `CNOT . (b on 0, g on 1) . CNOT . (a on 0) . CNOT` (matrix product, all
//! controls on qubit 1) rewritten with two CNOTs.

use crate::circuit::{Circuit, Gate, Qubit};
use crate::deflate::same_side_form;
use crate::error::Result;
use crate::linalg::{Mat2, Mat4, PAULI_X, UNITARY_TOL};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BreachPattern {
    /// Qubit-0 gate between the first two CNOTs (in application order, the
    /// last two).
    pub b: Mat2,
    /// Qubit-1 gate alongside `b`.
    pub g: Mat2,
    /// Qubit-0 gate inside the breach.
    pub a: Mat2,
}

impl BreachPattern {
    pub fn new(b: Mat2, g: Mat2, a: Mat2) -> Result<BreachPattern> {
        let p = BreachPattern { b, g, a };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        self.b.ensure_unitary("b", UNITARY_TOL)?;
        self.g.ensure_unitary("g", UNITARY_TOL)?;
        self.a.ensure_unitary("a", UNITARY_TOL)
    }

    /// The pattern as a circuit in application order.
    pub fn circuit(&self) -> Circuit {
        Circuit::from_iter([
            Gate::cnot(Qubit::Q1),
            Gate::u(Qubit::Q0, self.a),
            Gate::cnot(Qubit::Q1),
            Gate::u(Qubit::Q0, self.b),
            Gate::u(Qubit::Q1, self.g),
            Gate::cnot(Qubit::Q1),
        ])
    }

    pub fn matrix(&self) -> Mat4 {
        self.circuit().evaluate()
    }
}

/// Two-CNOT circuit equal to the pattern.
pub fn close_breach(p: &BreachPattern) -> Result<Circuit> {
    p.validate()?;
    // CNOT . a(0) . CNOT = a(0) . ctrl(a^dagger X a X)
    let a = &p.a;
    let v = a.adjoint() * PAULI_X * *a * PAULI_X;
    Ok(same_side_form(&PAULI_X, &(p.b * *a), &p.g, &v)?.to_circuit())
}
