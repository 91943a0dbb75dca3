//! Series solutions of the confluent Heun equation (CHE), the double-confluent
//! Heun equation (DCHE) and their Whittaker-Ince limits.
//!
//! The library builds the two-sided expansions of these equations in regular and
//! irregular confluent hypergeometric functions (CHE/DCHE) and in Bessel/Hankel
//! functions (Whittaker-Ince limits), solves the continued-fraction
//! characteristic equations for the series offset `nu` or for an equation
//! constant, and validates every constructed solution by direct substitution
//! into the differential equation.
//!
//! Module layout:
//!
//! * [`specfun`] - complex log-gamma, regular/irregular confluent
//!   hypergeometric functions and Bessel-family functions.
//! * [`recurrence`] - three-term recurrences, continued-fraction residuals,
//!   root solving, Miller-style minimal solutions, finite tridiagonal spectra.
//! * [`params`], [`sets`], [`transform`] - equation parameter model, the
//!   solution-set constructors for all four equations, transformation groups
//!   and the Leaver / Whittaker-Ince limit operators.
//! * [`evaluate`] - numerical evaluation of series solutions with
//!   derivatives, ODE residual reports, linear-combination connection and
//!   convergence diagnostics.
//! * [`mathieu`] - Mathieu and Whittaker-Hill reductions, the independent
//!   Fourier-method characteristic-value oracle.
//! * [`normal_form`] - classifier of Schroedinger-form potentials against the
//!   five Heun normal-form templates.
//! * [`jobs`] - JSON job model behind the `heun` command-line tool.

pub mod evaluate;
pub mod jobs;
pub mod mathieu;
pub mod normal_form;
pub mod params;
pub mod recurrence;
pub mod sets;
pub mod solve;
pub mod specfun;
pub mod transform;

pub use evaluate::{connect, ode_residual, EvalOptions, ResidualReport};
pub use params::{CheParams, DcheParams, EquationKind, EquationParams, InceCheParams, InceDcheParams};
pub use recurrence::{CharacteristicProblem, CoefficientSequence, ThreeTermRecurrence};
pub use sets::{SeriesSolution, SolutionSet};

use num_complex::Complex64;

/// Shorthand used throughout the crate.
pub fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Integer-proximity tolerance: all "is an integer" predicates (gamma poles,
/// validity conditions, truncation detection) use this cutoff.
pub const TAU_INT: f64 = 1e-8;

/// Branch convention used library-wide: `(-1) = exp(i*pi)`, i.e. limits onto
/// the negative real axis are taken from above.
pub const BRANCH_EPSILON: f64 = 1.0;
