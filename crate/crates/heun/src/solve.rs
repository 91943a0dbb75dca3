//! High-level orchestration: build a solution set for an equation, solve its
//! characteristic equation, attach minimal-solution coefficients and validate
//! by direct substitution into the differential equation.

use crate::evaluate::{attach_coefficients, residual_report, EvalError, EvalOptions, ResidualReport};
use crate::params::{EquationParams, ParamError};
use crate::recurrence::{
    minimal_solution, solve_characteristic, CharacteristicProblem, RecurrenceError, SolveReport,
    DEFAULT_CF_DEPTH,
};
use crate::sets::SolutionSet;
use crate::transform::{generate_set_che, generate_set_ince, TransformError};
use num_complex::Complex64;

#[derive(Debug, Clone, thiserror::Error)]
pub enum SolveError {
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error(transparent)]
    Transform(#[from] TransformError),
    #[error(transparent)]
    Recurrence(#[from] RecurrenceError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("no characteristic root found from any seed (last error: {0})")]
    NoRoot(String),
}

type Result<T> = std::result::Result<T, SolveError>;

/// Continued-fraction depth: the `HEUN_CF_DEPTH` environment variable
/// overrides the default.
pub fn cf_depth() -> usize {
    std::env::var("HEUN_CF_DEPTH")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_CF_DEPTH)
}

/// Build set `k` (1..=4) for any equation kind at a given offset.
pub fn build_set(params: &EquationParams, k: usize, nu: Complex64) -> Result<SolutionSet> {
    Ok(match params {
        EquationParams::Che(p) => generate_set_che(k, p, nu)?,
        EquationParams::InceChe(p) => generate_set_ince(k, p, nu)?,
        EquationParams::Dche(p) => match k {
            1 => crate::sets::fundamental_set_dche(p, nu),
            2 => crate::sets::second_set_dche(p, nu),
            _ => panic!("the double-confluent equation has two constructed sets"),
        },
        EquationParams::InceDche(p) => match k {
            1 => crate::sets::fundamental_set_ince_dche(p, nu),
            2 => crate::sets::second_set_ince_dche(p, nu),
            _ => panic!("the double-confluent limit has two constructed sets"),
        },
    })
}

/// A set with its solved offset and attached coefficients.
pub struct SolvedSet {
    pub set: SolutionSet,
    pub report: SolveReport,
}

/// Solve the two-sided characteristic equation of set `k` for `nu` from one
/// seed and attach minimal-solution coefficients over `window`.
pub fn solve_nu(
    params: &EquationParams,
    k: usize,
    seed: Complex64,
    window: (i64, i64),
) -> Result<SolvedSet> {
    solve_nu_seeded(params, k, &[seed], window)
}

/// Multi-seed variant of [`solve_nu`]: seeds are tried in order and the first
/// root that passes the doubly-infinite validity conditions wins; if every
/// root violates them, the last root is returned anyway (the caller sees the
/// conditions through `validity_conditions`).
pub fn solve_nu_seeded(
    params: &EquationParams,
    k: usize,
    seeds: &[Complex64],
    window: (i64, i64),
) -> Result<SolvedSet> {
    let depth = cf_depth();
    let mut last_err: Option<SolveError> = None;
    let mut fallback: Option<SolveReport> = None;
    for &seed in seeds {
        let probe = build_set(params, k, seed)?;
        let problem = CharacteristicProblem::for_nu(probe.recurrence.clone());
        match solve_characteristic(&problem, seed, depth) {
            Ok(report) => {
                let set = build_set(params, k, report.root)?;
                let ok = crate::sets::validity_conditions(&set).iter().all(|v| v.ok);
                if ok {
                    return finish(params, k, report, window);
                }
                fallback = Some(report);
            }
            Err(e) => last_err = Some(e.into()),
        }
    }
    if let Some(report) = fallback {
        return finish(params, k, report, window);
    }
    Err(last_err.unwrap_or(SolveError::NoRoot("no seeds supplied".into())))
}

fn finish(params: &EquationParams, k: usize, report: SolveReport, window: (i64, i64)) -> Result<SolvedSet> {
    let mut set = build_set(params, k, report.root)?;
    let seq = minimal_solution(&set.recurrence, report.root, window.0, window.1)?;
    attach_coefficients(&mut set, seq);
    Ok(SolvedSet { set, report })
}

/// Default coefficient window: enough leftward indices for the slow tails of
/// the displayed members and enough rightward ones for moderate radii.
pub const DEFAULT_WINDOW: (i64, i64) = (-150, 200);

/// Sample points inside the common convergence region `|z| > r`, spread over
/// two rings and several phases, avoiding the rays where the hypergeometric
/// arguments become negative real.
pub fn sample_points(params: &EquationParams, count: usize) -> Vec<Complex64> {
    let r = params.inner_radius().max(0.4);
    let mut pts = Vec::with_capacity(count);
    for j in 0..count {
        let radius = r * (1.9 + 0.35 * (j % 3) as f64);
        let angle = -0.55 + 1.9 * (j as f64 + 0.5) / count as f64;
        pts.push(Complex64::from_polar(radius, angle));
    }
    pts
}

/// Residual report of the validated member of a solved set.
pub fn validate(params: &EquationParams, solved: &SolvedSet, points: &[Complex64], tol: f64) -> Result<ResidualReport> {
    let member = solved.set.validated_member();
    Ok(residual_report(params, member, points, tol, &EvalOptions::default())?)
}
