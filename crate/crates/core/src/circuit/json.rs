//! Circuit JSON: `{"gates": [{"kind": "rz", "qubit": 0, "angle": 0.3}, ...]}`.
//!
//! Kinds: `rx`, `ry`, `rz` (`qubit`, `angle`), `u` (`qubit`, `matrix`), `cu`
//! (`control`, `target`, `matrix`), `cnot` (`control`, `target`), `cz`, and
//! `phase` (`angle`). Matrices are row-major `[[[re, im], [re, im]], ...]`.
//! Floats are written in shortest round-trip form.

use serde::{Deserialize, Serialize};

use super::{Circuit, Gate, Qubit};
use crate::error::{Error, Result};
use crate::linalg::{Axis, Complex, Mat2};

type MatrixRecord = [[[f64; 2]; 2]; 2];

#[derive(Serialize, Deserialize)]
struct CircuitRecord {
    gates: Vec<GateRecord>,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum GateRecord {
    Rx {
        qubit: u8,
        angle: f64,
    },
    Ry {
        qubit: u8,
        angle: f64,
    },
    Rz {
        qubit: u8,
        angle: f64,
    },
    U {
        qubit: u8,
        matrix: MatrixRecord,
    },
    Cu {
        control: u8,
        target: u8,
        matrix: MatrixRecord,
    },
    Cnot {
        control: u8,
        target: u8,
    },
    Cz,
    Phase {
        angle: f64,
    },
}

fn qubit_index(q: Qubit) -> u8 {
    q.index() as u8
}

fn qubit(i: u8) -> Result<Qubit> {
    Qubit::from_index(i as usize).ok_or_else(|| Error::InvalidCircuit(format!("qubit index {i} out of range")))
}

fn matrix_record(m: &Mat2) -> MatrixRecord {
    m.0.map(|row| row.map(|z| [z.re, z.im]))
}

fn matrix(r: &MatrixRecord) -> Mat2 {
    Mat2(r.map(|row| row.map(|[re, im]| Complex::new(re, im))))
}

impl From<&Gate> for GateRecord {
    fn from(g: &Gate) -> GateRecord {
        match *g {
            Gate::Rotation { axis, qubit, angle } => {
                let qubit = qubit_index(qubit);
                match axis {
                    Axis::X => GateRecord::Rx { qubit, angle },
                    Axis::Y => GateRecord::Ry { qubit, angle },
                    Axis::Z => GateRecord::Rz { qubit, angle },
                }
            }
            Gate::OneQubit { qubit, matrix } => GateRecord::U {
                qubit: qubit_index(qubit),
                matrix: matrix_record(&matrix),
            },
            Gate::ControlledU {
                control,
                target,
                matrix,
            } => GateRecord::Cu {
                control: qubit_index(control),
                target: qubit_index(target),
                matrix: matrix_record(&matrix),
            },
            Gate::Cnot { control, target } => GateRecord::Cnot {
                control: qubit_index(control),
                target: qubit_index(target),
            },
            Gate::Cz => GateRecord::Cz,
            Gate::GlobalPhase { angle } => GateRecord::Phase { angle },
        }
    }
}

impl TryFrom<&GateRecord> for Gate {
    type Error = Error;

    fn try_from(r: &GateRecord) -> Result<Gate> {
        let g = match *r {
            GateRecord::Rx { qubit: q, angle } => Gate::Rotation {
                axis: Axis::X,
                qubit: qubit(q)?,
                angle,
            },
            GateRecord::Ry { qubit: q, angle } => Gate::Rotation {
                axis: Axis::Y,
                qubit: qubit(q)?,
                angle,
            },
            GateRecord::Rz { qubit: q, angle } => Gate::Rotation {
                axis: Axis::Z,
                qubit: qubit(q)?,
                angle,
            },
            GateRecord::U { qubit: q, ref matrix } => Gate::OneQubit {
                qubit: qubit(q)?,
                matrix: self::matrix(matrix),
            },
            GateRecord::Cu {
                control,
                target,
                ref matrix,
            } => Gate::ControlledU {
                control: qubit(control)?,
                target: qubit(target)?,
                matrix: self::matrix(matrix),
            },
            GateRecord::Cnot { control, target } => Gate::Cnot {
                control: qubit(control)?,
                target: qubit(target)?,
            },
            GateRecord::Cz => Gate::Cz,
            GateRecord::Phase { angle } => Gate::GlobalPhase { angle },
        };
        g.validate()?;
        Ok(g)
    }
}

fn record(c: &Circuit) -> CircuitRecord {
    CircuitRecord {
        gates: c.gates().iter().map(GateRecord::from).collect(),
    }
}

pub(super) fn to_json(c: &Circuit) -> String {
    serde_json::to_string(&record(c)).expect("circuit records always serialize")
}

pub(super) fn to_json_pretty(c: &Circuit) -> String {
    serde_json::to_string_pretty(&record(c)).expect("circuit records always serialize")
}

pub(super) fn from_json(s: &str) -> Result<Circuit> {
    let rec: CircuitRecord = serde_json::from_str(s)?;
    let gates = rec.gates.iter().map(Gate::try_from).collect::<Result<Vec<_>>>()?;
    Ok(Circuit::from_gates_unchecked(gates))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rotation, HADAMARD};

    #[test]
    fn parses_documented_schema() {
        let s = r#"{"gates":[
            {"kind":"rz","qubit":0,"angle":0.3},
            {"kind":"cnot","control":1,"target":0},
            {"kind":"cz"},
            {"kind":"cu","control":1,"target":0,"matrix":[[[0,0],[1,0]],[[1,0],[0,0]]]},
            {"kind":"u","qubit":0,"matrix":[[[1,0],[0,0]],[[0,0],[0,1]]]},
            {"kind":"phase","angle":-0.785}]}"#;
        let c = Circuit::from_json(s).unwrap();
        assert_eq!(c.len(), 6);
        assert_eq!(c.entangling_count(), 3);
        assert_eq!(c.gates()[0], Gate::rz(Qubit::Q0, 0.3));
        assert_eq!(c.gates()[5], Gate::GlobalPhase { angle: -0.785 });
    }

    #[test]
    fn round_trip_is_exact() {
        let c = Circuit::from_iter([
            Gate::ry(Qubit::Q1, 0.1 + 0.2),
            Gate::u(Qubit::Q0, HADAMARD),
            Gate::cu(Qubit::Q0, rotation(Axis::X, std::f64::consts::E)),
            Gate::cnot(Qubit::Q1),
            Gate::Cz,
            Gate::GlobalPhase { angle: -1.0 / 3.0 },
        ]);
        let back = Circuit::from_json(&c.to_json()).unwrap();
        assert_eq!(back, c);
        assert_eq!(Circuit::from_json(&c.to_json_pretty()).unwrap(), c);
    }

    #[test]
    fn rejects_malformed() {
        assert!(matches!(Circuit::from_json("{"), Err(Error::Json(_))));
        assert!(Circuit::from_json(r#"{"gates":[{"kind":"rz","qubit":2,"angle":0}]}"#).is_err());
        assert!(Circuit::from_json(r#"{"gates":[{"kind":"cnot","control":1,"target":1}]}"#).is_err());
        assert!(Circuit::from_json(r#"{"gates":[{"kind":"swap"}]}"#).is_err());
        let not_unitary = r#"{"gates":[{"kind":"u","qubit":0,"matrix":[[[2,0],[0,0]],[[0,0],[1,0]]]}]}"#;
        assert!(matches!(Circuit::from_json(not_unitary), Err(Error::NotUnitary { .. })));
    }
}
