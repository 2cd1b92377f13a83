//! Two-qubit gates and circuits, with an exact evaluator to [`Mat4`].
//!
//! Gates are stored in application order: `evaluate` multiplies them
//! right-to-left, so the first gate is the rightmost matrix factor. Circuits
//! transcribed from a matrix product can be built with
//! [`Circuit::from_product_order`].

mod json;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    cis, kron, normalize_angle, rotation, Axis, Mat2, Mat4, HADAMARD, IDENTITY2, PAULI_X, PAULI_Z, PROJ_ONE, PROJ_ZERO,
    UNITARY_TOL,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Qubit {
    Q0,
    Q1,
}

impl Qubit {
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<Qubit> {
        match i {
            0 => Some(Qubit::Q0),
            1 => Some(Qubit::Q1),
            _ => None,
        }
    }

    pub fn other(self) -> Qubit {
        match self {
            Qubit::Q0 => Qubit::Q1,
            Qubit::Q1 => Qubit::Q0,
        }
    }
}

/// Which two-qubit gate a synthesised circuit uses for its entanglers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EntanglerForm {
    #[default]
    Cz,
    Cnot,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Gate {
    /// `exp(i angle sigma_axis)` on `qubit`.
    Rotation {
        axis: Axis,
        qubit: Qubit,
        angle: f64,
    },
    OneQubit {
        qubit: Qubit,
        matrix: Mat2,
    },
    /// `matrix` applied to `target` when `control` is `|1>`.
    ControlledU {
        control: Qubit,
        target: Qubit,
        matrix: Mat2,
    },
    Cnot {
        control: Qubit,
        target: Qubit,
    },
    Cz,
    /// Scalar `exp(i angle)`.
    GlobalPhase {
        angle: f64,
    },
}

/// `m` acting on `qubit`, identity on the other wire.
pub fn embed_one(qubit: Qubit, m: &Mat2) -> Mat4 {
    match qubit {
        Qubit::Q0 => kron(&IDENTITY2, m),
        Qubit::Q1 => kron(m, &IDENTITY2),
    }
}

/// `nbar(control) + n(control) m(target)`.
pub fn embed_controlled(control: Qubit, m: &Mat2) -> Mat4 {
    match control {
        Qubit::Q1 => kron(&PROJ_ZERO, &IDENTITY2) + kron(&PROJ_ONE, m),
        Qubit::Q0 => kron(&IDENTITY2, &PROJ_ZERO) + kron(m, &PROJ_ONE),
    }
}

/// `exp(i theta sigma_Z(target) n(control))`; with control 1 and target 0
/// this equals `exp(i theta/2 (sigma_UZ - sigma_ZZ))`.
pub fn controlled_rotation_matrix(theta: f64, control: Qubit, target: Qubit) -> Mat4 {
    debug_assert_ne!(control, target);
    embed_controlled(control, &rotation(Axis::Z, theta))
}

impl Gate {
    pub fn rz(qubit: Qubit, angle: f64) -> Gate {
        Gate::Rotation {
            axis: Axis::Z,
            qubit,
            angle,
        }
    }

    pub fn ry(qubit: Qubit, angle: f64) -> Gate {
        Gate::Rotation {
            axis: Axis::Y,
            qubit,
            angle,
        }
    }

    pub fn rx(qubit: Qubit, angle: f64) -> Gate {
        Gate::Rotation {
            axis: Axis::X,
            qubit,
            angle,
        }
    }

    pub fn u(qubit: Qubit, matrix: Mat2) -> Gate {
        Gate::OneQubit { qubit, matrix }
    }

    /// Controlled gate with control on `control` and target on the other wire.
    pub fn cu(control: Qubit, matrix: Mat2) -> Gate {
        Gate::ControlledU {
            control,
            target: control.other(),
            matrix,
        }
    }

    pub fn cnot(control: Qubit) -> Gate {
        Gate::Cnot {
            control,
            target: control.other(),
        }
    }

    pub fn is_entangling(&self) -> bool {
        matches!(self, Gate::ControlledU { .. } | Gate::Cnot { .. } | Gate::Cz)
    }

    /// The wire of a one-qubit gate.
    pub fn local_qubit(&self) -> Option<Qubit> {
        match *self {
            Gate::Rotation { qubit, .. } | Gate::OneQubit { qubit, .. } => Some(qubit),
            _ => None,
        }
    }

    /// The 2x2 matrix of a one-qubit gate.
    pub fn local_matrix(&self) -> Option<Mat2> {
        match *self {
            Gate::Rotation { axis, angle, .. } => Some(rotation(axis, angle)),
            Gate::OneQubit { matrix, .. } => Some(matrix),
            _ => None,
        }
    }

    /// For an entangling gate: its control wire and the matrix it applies to
    /// the target. CZ is reported as controlled-`sigma_Z` from qubit 1.
    pub fn as_controlled(&self) -> Option<(Qubit, Mat2)> {
        match *self {
            Gate::ControlledU { control, matrix, .. } => Some((control, matrix)),
            Gate::Cnot { control, .. } => Some((control, PAULI_X)),
            Gate::Cz => Some((Qubit::Q1, PAULI_Z)),
            _ => None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Gate::Rotation { angle, .. } | Gate::GlobalPhase { angle } if !angle.is_finite() => {
                Err(Error::InvalidCircuit(format!("non-finite angle {angle}")))
            }
            Gate::OneQubit { matrix, .. } => matrix.ensure_unitary("one-qubit gate", UNITARY_TOL),
            Gate::ControlledU {
                control,
                target,
                matrix,
            } => {
                if control == target {
                    return Err(Error::InvalidCircuit("control equals target".into()));
                }
                matrix.ensure_unitary("controlled gate", UNITARY_TOL)
            }
            Gate::Cnot { control, target } if control == target => {
                Err(Error::InvalidCircuit("CNOT control equals target".into()))
            }
            _ => Ok(()),
        }
    }

    /// The gate's 4x4 matrix under the `(a1, a0)` convention.
    pub fn matrix(&self) -> Mat4 {
        match *self {
            Gate::Rotation { axis, qubit, angle } => embed_one(qubit, &rotation(axis, angle)),
            Gate::OneQubit { qubit, matrix } => embed_one(qubit, &matrix),
            Gate::ControlledU { control, matrix, .. } => embed_controlled(control, &matrix),
            Gate::Cnot { control, .. } => embed_controlled(control, &PAULI_X),
            Gate::Cz => embed_controlled(Qubit::Q1, &PAULI_Z),
            Gate::GlobalPhase { angle } => Mat4::identity().scale(cis(angle)),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Circuit {
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new() -> Circuit {
        Circuit::default()
    }

    /// Builds a circuit from gates in application order, validating each.
    pub fn from_gates(gates: Vec<Gate>) -> Result<Circuit> {
        gates.iter().try_for_each(Gate::validate)?;
        Ok(Circuit { gates })
    }

    /// Builds a circuit from the factors of a matrix product, leftmost factor
    /// first (it is applied last).
    pub fn from_product_order(mut gates: Vec<Gate>) -> Circuit {
        gates.reverse();
        Circuit { gates }
    }

    pub(crate) fn from_gates_unchecked(gates: Vec<Gate>) -> Circuit {
        Circuit { gates }
    }

    pub fn push(&mut self, gate: Gate) {
        self.gates.push(gate);
    }

    pub fn extend(&mut self, other: &Circuit) {
        self.gates.extend_from_slice(&other.gates);
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Circuit) -> Circuit {
        let mut c = self.clone();
        c.extend(other);
        c
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// The same circuit with the two wires exchanged; evaluates to
    /// `E . evaluate() . E` with `E` the exchange operator.
    pub fn swap_qubits(&self) -> Circuit {
        let gates = self
            .gates
            .iter()
            .map(|g| match *g {
                Gate::Rotation { axis, qubit, angle } => Gate::Rotation {
                    axis,
                    qubit: qubit.other(),
                    angle,
                },
                Gate::OneQubit { qubit, matrix } => Gate::OneQubit {
                    qubit: qubit.other(),
                    matrix,
                },
                Gate::ControlledU {
                    control,
                    target,
                    matrix,
                } => Gate::ControlledU {
                    control: control.other(),
                    target: target.other(),
                    matrix,
                },
                Gate::Cnot { control, target } => Gate::Cnot {
                    control: control.other(),
                    target: target.other(),
                },
                g @ (Gate::Cz | Gate::GlobalPhase { .. }) => g,
            })
            .collect();
        Circuit { gates }
    }

    /// Product of the gate matrices, last gate leftmost.
    pub fn evaluate(&self) -> Mat4 {
        self.gates.iter().fold(Mat4::identity(), |acc, g| g.matrix() * acc)
    }

    /// Number of CNOT, CZ and controlled-U gates.
    pub fn entangling_count(&self) -> usize {
        self.gates.iter().filter(|g| g.is_entangling()).count()
    }

    pub fn cnot_count(&self) -> usize {
        self.gates.iter().filter(|g| matches!(g, Gate::Cnot { .. })).count()
    }

    pub fn cz_count(&self) -> usize {
        self.gates.iter().filter(|g| matches!(g, Gate::Cz)).count()
    }

    pub fn controlled_u_count(&self) -> usize {
        self.gates
            .iter()
            .filter(|g| matches!(g, Gate::ControlledU { .. }))
            .count()
    }

    /// Sum of all `GlobalPhase` angles.
    pub fn global_phase(&self) -> f64 {
        self.gates
            .iter()
            .map(|g| match g {
                Gate::GlobalPhase { angle } => *angle,
                _ => 0.0,
            })
            .sum()
    }

    /// Fuses every run of one-qubit gates into a single `OneQubit` per wire
    /// and collects global phases into one trailing `GlobalPhase`.
    ///
    /// The result has the shape `[u0 u1] E [u0 u1] E ... [u0 u1] phase`, with
    /// both wires present in every slot even when the slot is the identity.
    pub fn canonicalize(&self) -> Circuit {
        let mut out = Vec::with_capacity(3 * self.entangling_count() + 3);
        let mut acc = [IDENTITY2; 2];
        let mut phase = 0.0;
        let flush = |acc: &mut [Mat2; 2], out: &mut Vec<Gate>| {
            out.push(Gate::u(Qubit::Q0, acc[0]));
            out.push(Gate::u(Qubit::Q1, acc[1]));
            *acc = [IDENTITY2; 2];
        };
        for g in &self.gates {
            if let (Some(q), Some(m)) = (g.local_qubit(), g.local_matrix()) {
                acc[q.index()] = m * acc[q.index()];
            } else if let Gate::GlobalPhase { angle } = g {
                phase += angle;
            } else {
                flush(&mut acc, &mut out);
                out.push(*g);
            }
        }
        flush(&mut acc, &mut out);
        out.push(Gate::GlobalPhase {
            angle: normalize_angle(phase),
        });
        Circuit { gates: out }
    }

    /// Rewrites every CZ and CNOT into the requested entangler, conjugating
    /// the target by the Hadamard basis change, then canonicalizes.
    /// Controlled-U gates are left untouched.
    pub fn with_entangler(&self, form: EntanglerForm) -> Circuit {
        let mut gates = Vec::with_capacity(self.gates.len() + 4);
        for g in &self.gates {
            match (*g, form) {
                (Gate::Cz, EntanglerForm::Cnot) => {
                    gates.push(Gate::u(Qubit::Q0, HADAMARD));
                    gates.push(Gate::cnot(Qubit::Q1));
                    gates.push(Gate::u(Qubit::Q0, HADAMARD));
                }
                (Gate::Cnot { target, .. }, EntanglerForm::Cz) => {
                    gates.push(Gate::u(target, HADAMARD));
                    gates.push(Gate::Cz);
                    gates.push(Gate::u(target, HADAMARD));
                }
                _ => gates.push(*g),
            }
        }
        Circuit { gates }.canonicalize()
    }

    pub fn to_json(&self) -> String {
        json::to_json(self)
    }

    pub fn to_json_pretty(&self) -> String {
        json::to_json_pretty(self)
    }

    pub fn from_json(s: &str) -> Result<Circuit> {
        json::from_json(s)
    }
}

impl FromIterator<Gate> for Circuit {
    fn from_iter<T: IntoIterator<Item = Gate>>(iter: T) -> Self {
        Circuit {
            gates: iter.into_iter().collect(),
        }
    }
}

/// `exp(-i pi/4) Rz(pi/4) on qubit 1, ctrl-Rz(pi/2)`: the CZ gate written with
/// a controlled Z-rotation, in application order.
pub fn cz_as_controlled_rotation() -> Circuit {
    Circuit::from_gates_unchecked(vec![
        Gate::cu(Qubit::Q1, rotation(Axis::Z, std::f64::consts::FRAC_PI_2)),
        Gate::rz(Qubit::Q1, std::f64::consts::FRAC_PI_4),
        Gate::GlobalPhase {
            angle: -std::f64::consts::FRAC_PI_4,
        },
    ])
}
