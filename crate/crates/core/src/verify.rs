//! Randomised end-to-end checks of every rewrite.

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::breach::{close_breach, BreachPattern};
use crate::circuit::EntanglerForm;
use crate::csd::{csd_2q, synth_3cnot};
use crate::deflate::{
    build_lhs, build_rhs, deflate_core, deflate_opposite_side, deflate_same_side, opposite_side_matrix,
    same_side_matrix, DeflationInput,
};
use crate::error::{Error, Result};
use crate::random::{random_angle, random_u2, random_u4};

pub const CORE_TOL: f64 = 1e-10;
pub const PIPELINE_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Check {
    Theorem1,
    SameSide,
    OppositeSide,
    Breach,
    Csd,
    Synth,
}

impl Check {
    const ALL: [Check; 6] = [
        Check::Theorem1,
        Check::SameSide,
        Check::OppositeSide,
        Check::Breach,
        Check::Csd,
        Check::Synth,
    ];

    fn name(self) -> &'static str {
        match self {
            Check::Theorem1 => "theorem1",
            Check::SameSide => "theorem2_same",
            Check::OppositeSide => "theorem2_opposite",
            Check::Breach => "theorem3",
            Check::Csd => "csd",
            Check::Synth => "synth",
        }
    }

    fn tolerance(self) -> f64 {
        match self {
            Check::Theorem1 | Check::Csd => CORE_TOL,
            _ => PIPELINE_TOL,
        }
    }

    /// Error of one instance; `Ok(None)` marks a structural failure.
    fn trial(self, rng: &mut ChaCha8Rng) -> Result<Option<f64>> {
        match self {
            Check::Theorem1 => {
                let input = DeflationInput::new(
                    random_angle(rng),
                    random_angle(rng),
                    random_angle(rng),
                    random_angle(rng),
                );
                let rhs = build_rhs(&input, &deflate_core(&input));
                Ok((rhs.cnot_count() == 2).then(|| build_lhs(&input).evaluate().distance(&rhs.evaluate())))
            }
            Check::SameSide | Check::OppositeSide => {
                let [u, a, b, v] = std::array::from_fn(|_| random_u2(rng));
                let (c, m) = if self == Check::SameSide {
                    (deflate_same_side(&u, &a, &b, &v)?, same_side_matrix(&u, &a, &b, &v))
                } else {
                    (
                        deflate_opposite_side(&u, &a, &b, &v)?,
                        opposite_side_matrix(&u, &a, &b, &v),
                    )
                };
                Ok((c.cnot_count() == 2 && c.entangling_count() == 2).then(|| c.evaluate().distance(&m)))
            }
            Check::Breach => {
                let [b, g, a] = std::array::from_fn(|_| random_u2(rng));
                let p = BreachPattern::new(b, g, a)?;
                let c = close_breach(&p)?;
                Ok((c.entangling_count() == 2).then(|| c.evaluate().distance(&p.matrix())))
            }
            Check::Csd => {
                let u = random_u4(rng);
                Ok(Some(csd_2q(&u)?.reconstruct().distance(&u)))
            }
            Check::Synth => {
                let u = random_u4(rng);
                let c = synth_3cnot(&u, EntanglerForm::Cz)?;
                Ok((c.entangling_count() == 3).then(|| c.evaluate().distance(&u)))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub check: String,
    pub trials: u64,
    pub max_err: f64,
    pub mean_err: f64,
    pub tolerance: f64,
    /// Trials over tolerance, with the wrong gate count, or returning an error.
    pub failures: u64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub seed: u64,
    pub trials: u64,
    pub pass: bool,
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }

    pub fn from_json(s: &str) -> Result<Report> {
        Ok(serde_json::from_str(s)?)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "seed={} trials={}", self.seed, self.trials)?;
        for c in &self.checks {
            writeln!(
                f,
                "{:<18} {} max_err={:.16e} mean_err={:.16e} tol={:e} failures={}",
                c.check,
                if c.pass { "PASS" } else { "FAIL" },
                c.max_err,
                c.mean_err,
                c.tolerance,
                c.failures
            )?;
        }
        write!(
            f,
            "{}",
            if self.pass {
                "all checks passed"
            } else {
                "some checks failed"
            }
        )
    }
}

/// Runs every check `trials` times with default tolerances.
pub fn run_suite(seed: u64, trials: u64) -> Result<Report> {
    run_suite_with_tolerance(seed, trials, None)
}

/// As [`run_suite`]; `tolerance` replaces every per-check tolerance.
pub fn run_suite_with_tolerance(seed: u64, trials: u64, tolerance: Option<f64>) -> Result<Report> {
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    if let Some(t) = tolerance {
        if !(t.is_finite() && t > 0.0) {
            return Err(Error::InvalidArgument(format!("tolerance must be positive, got {t}")));
        }
    }
    let checks: Vec<CheckResult> = Check::ALL
        .iter()
        .enumerate()
        .map(|(i, &check)| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i as u64);
            let tol = tolerance.unwrap_or(check.tolerance());
            let (mut max_err, mut sum, mut failures): (f64, f64, u64) = (0.0, 0.0, 0);
            for _ in 0..trials {
                match check.trial(&mut rng) {
                    Ok(Some(err)) => {
                        max_err = max_err.max(err);
                        sum += err;
                        if err.is_nan() || err > tol {
                            failures += 1;
                        }
                    }
                    _ => failures += 1,
                }
            }
            CheckResult {
                check: check.name().to_string(),
                trials,
                max_err,
                mean_err: sum / trials as f64,
                tolerance: tol,
                failures,
                pass: failures == 0,
            }
        })
        .collect();
    Ok(Report {
        seed,
        trials,
        pass: checks.iter().all(|c| c.pass),
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_trial_passes() {
        let r = run_suite(42, 1).unwrap();
        assert_eq!(r.checks.len(), 6);
        assert!(r.pass, "{r}");
        assert!(r.checks.iter().all(|c| c.trials == 1 && c.pass));
    }

    #[test]
    fn deterministic() {
        let a = run_suite(42, 50).unwrap();
        let b = run_suite(42, 50).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        assert_ne!(a.checks[0].max_err, run_suite(43, 50).unwrap().checks[0].max_err);
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(matches!(run_suite(1, 0), Err(Error::InvalidArgument(_))));
        assert!(run_suite_with_tolerance(1, 1, Some(-1.0)).is_err());
        assert!(run_suite_with_tolerance(1, 1, Some(f64::NAN)).is_err());
    }

    #[test]
    fn tight_tolerance_fails() {
        let r = run_suite_with_tolerance(7, 20, Some(1e-30)).unwrap();
        assert!(!r.pass);
        assert!(r.checks.iter().all(|c| c.tolerance == 1e-30));
    }

    #[test]
    fn json_round_trip() {
        let r = run_suite(3, 2).unwrap();
        assert_eq!(Report::from_json(&r.to_json()).unwrap(), r);
        assert!(r.to_string().contains("theorem2_opposite"));
    }
}
