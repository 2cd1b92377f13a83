use std::io::Write;
use std::path::{Path, PathBuf};

use deflation_core::breach::BreachPattern;
use deflation_core::linalg::{Mat2, IDENTITY2};
use deflation_core::tables::render_table;
use deflation_core::{
    build_lhs, build_rhs, close_breach, deflate_core, deflate_opposite_side, deflate_same_side,
    run_suite_with_tolerance, synth_3cnot, Circuit, ConjugationKind, DeflationInput, EntanglerForm, Qubit,
};

use crate::input;
use crate::CliError;

pub const ANGLE_TOL: f64 = 1e-10;
pub const PIPELINE_TOL: f64 = 1e-9;

/// `DEFLATE_TOL`, when set, replaces every verification tolerance.
pub fn tolerance_override() -> Result<Option<f64>, CliError> {
    match std::env::var("DEFLATE_TOL") {
        Err(std::env::VarError::NotPresent) => Ok(None),
        Err(e) => Err(CliError::Input(format!("DEFLATE_TOL: {e}"))),
        Ok(s) => match s.trim().parse::<f64>() {
            Ok(t) if t.is_finite() && t > 0.0 => Ok(Some(t)),
            _ => Err(CliError::Input(format!(
                "DEFLATE_TOL must be a positive number, got {s:?}"
            ))),
        },
    }
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, format!("{text}\n"))
            .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            writeln!(stdout, "{text}").map_err(|e| CliError::Input(format!("cannot write output: {e}")))
        }
    }
}

/// Writes the circuit, reports `max_err` and checks it against `tol`.
fn finish(circuit: &Circuit, max_err: f64, tol: f64, out: Option<&Path>) -> Result<(), CliError> {
    emit(&circuit.to_json_pretty(), out)?;
    eprintln!("max_err={max_err:.16e}");
    if max_err <= tol {
        Ok(())
    } else {
        Err(CliError::Verification { max_err, tol })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Same,
    Opposite,
}

pub struct DeflateArgs {
    pub angles: Option<DeflationInput>,
    pub circuit: Option<PathBuf>,
    pub side: Option<Side>,
    pub out: Option<PathBuf>,
}

pub fn deflate(args: &DeflateArgs) -> Result<(), CliError> {
    let tol = tolerance_override()?;
    match (&args.angles, &args.circuit) {
        (Some(input), None) => {
            let angles = deflate_core(input);
            eprintln!(
                "gamma_l={:.16e} gamma_l_prime={:.16e} mu={:.16e} mu_prime={:.16e} gamma_r={:.16e} gamma_r_prime={:.16e}",
                angles.gamma_l, angles.gamma_l_prime, angles.mu, angles.mu_prime, angles.gamma_r, angles.gamma_r_prime
            );
            let rhs = build_rhs(input, &angles);
            let err = build_lhs(input).evaluate().distance(&rhs.evaluate());
            finish(&rhs, err, tol.unwrap_or(ANGLE_TOL), args.out.as_deref())
        }
        (None, Some(path)) => {
            let side = args
                .side
                .ok_or_else(|| CliError::Input("--side is required with a circuit input".into()))?;
            let c = input::circuit(&input::read_file(path)?, &path.display().to_string())?;
            let out = deflate_circuit(&c, side)?;
            let err = out.evaluate().distance(&c.evaluate());
            finish(&out, err, tol.unwrap_or(PIPELINE_TOL), args.out.as_deref())
        }
        _ => Err(CliError::Input(
            "give either all of --theta-l --beta --beta-prime --theta-r or a circuit file".into(),
        )),
    }
}

/// `pre`, `ctrl(v)`, `mid`, `ctrl(u)`, `post` in application order.
struct TwoControlled {
    pre: Circuit,
    v: (Qubit, Mat2),
    mid: [Mat2; 2],
    u: (Qubit, Mat2),
    post: Circuit,
}

fn split_two_controlled(c: &Circuit) -> Result<TwoControlled, CliError> {
    let mismatch = |why: &str| CliError::Input(format!("shape mismatch: {why}"));
    if c.entangling_count() != 2 {
        return Err(mismatch(&format!(
            "expected 2 two-qubit gates, found {}",
            c.entangling_count()
        )));
    }
    let (mut pre, mut post) = (Circuit::new(), Circuit::new());
    let mut mid = [IDENTITY2; 2];
    let mut controlled = Vec::with_capacity(2);
    for g in c.gates() {
        if let Some(cu) = g.as_controlled() {
            controlled.push(cu);
            continue;
        }
        match (controlled.len(), g.local_qubit(), g.local_matrix()) {
            (0, ..) => pre.push(*g),
            (1, Some(q), Some(m)) => mid[q.index()] = m * mid[q.index()],
            // A phase commutes with everything.
            (1, ..) => pre.push(*g),
            _ => post.push(*g),
        }
    }
    Ok(TwoControlled {
        pre,
        v: controlled[0],
        mid,
        u: controlled[1],
        post,
    })
}

/// Rewrites a circuit with exactly two controlled gates into one with two CNOTs.
pub fn deflate_circuit(c: &Circuit, side: Side) -> Result<Circuit, CliError> {
    let parts = split_two_controlled(c)?;
    let detected = if parts.v.0 == parts.u.0 {
        Side::Same
    } else {
        Side::Opposite
    };
    if detected != side {
        return Err(CliError::Input(format!(
            "shape mismatch: the circuit is {detected:?}-side, not {side:?}-side"
        )));
    }
    // Work with the later gate controlled by qubit 1.
    if parts.u.0 == Qubit::Q0 {
        return Ok(deflate_circuit(&c.swap_qubits(), side)?.swap_qubits());
    }
    let core = match side {
        Side::Same => deflate_same_side(&parts.u.1, &parts.mid[0], &parts.mid[1], &parts.v.1)?,
        Side::Opposite => deflate_opposite_side(&parts.u.1, &parts.mid[0], &parts.mid[1], &parts.v.1)?,
    };
    Ok(parts.pre.then(&core).then(&parts.post).canonicalize())
}

pub fn close_breach_cmd(b: &Path, g: &Path, a: &Path, out: Option<&Path>) -> Result<(), CliError> {
    let tol = tolerance_override()?;
    let load = |p: &Path, what: &str| input::unitary2(&input::read_file(p)?, what);
    let pattern = BreachPattern::new(load(b, "b")?, load(g, "g")?, load(a, "a")?)?;
    let c = close_breach(&pattern)?;
    let err = c.evaluate().distance(&pattern.matrix());
    finish(&c, err, tol.unwrap_or(PIPELINE_TOL), out)
}

pub fn synth(path: &Path, form: EntanglerForm, out: Option<&Path>) -> Result<(), CliError> {
    let tol = tolerance_override()?;
    let u = input::target_unitary(&input::read_file(path)?, &path.display().to_string())?;
    let c = synth_3cnot(&u, form)?;
    let err = c.evaluate().distance(&u);
    finish(&c, err, tol.unwrap_or(PIPELINE_TOL), out)
}

pub fn verify(seed: u64, trials: u64, text: bool) -> Result<(), CliError> {
    let report = run_suite_with_tolerance(seed, trials, tolerance_override()?)?;
    emit(&if text { report.to_string() } else { report.to_json() }, None)?;
    if report.pass {
        Ok(())
    } else {
        let worst = report
            .checks
            .iter()
            .filter(|c| !c.pass)
            .max_by(|a, b| a.max_err.total_cmp(&b.max_err));
        let (max_err, tol) = worst.map_or((f64::NAN, f64::NAN), |c| (c.max_err, c.tolerance));
        Err(CliError::Verification { max_err, tol })
    }
}

pub fn tables(kind: Option<ConjugationKind>) -> Result<(), CliError> {
    let kinds = kind.map_or(ConjugationKind::ALL.to_vec(), |k| vec![k]);
    let text: Vec<String> = kinds
        .iter()
        .map(|k| format!("# {}\n{}", k.name(), render_table(*k)))
        .collect();
    emit(text.join("\n").trim_end(), None)
}
