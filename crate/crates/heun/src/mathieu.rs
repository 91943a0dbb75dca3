//! Mathieu and Whittaker-Hill reductions, the four parity families of Mathieu
//! solutions built from the Bessel-basis sets, and the independent
//! Fourier-method oracle for Mathieu characteristic values.
//!
//! The Mathieu equation `w'' + sigma^2 [a - 2 k^2 cos(2 sigma u)] w = 0` maps
//! onto the Whittaker-Ince limit equation through `z = cos^2(sigma u)` with
//! `z0 = 1, B1 = -1/2, B2 = 1, B3 = k^2/2 - a/4, q = k^2`; the Whittaker-Hill
//! equation maps onto the CHE the same way. The Fourier oracle diagonalizes
//! the classical trigonometric tridiagonal systems and never touches the
//! continued-fraction machinery, so the two spectra check each other.

use crate::params::{CheParams, InceCheParams, ParamError};
use crate::recurrence::{self, CharacteristicProblem, RecurrenceError};
use crate::sets::{SeriesSolution, SolutionSet};
use crate::transform::{generate_set_ince, TransformError};
use crate::evaluate::{EvalError, EvalOptions};
use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, thiserror::Error)]
pub enum MathieuError {
    #[error("Mathieu reduction requires k^2 != 0")]
    KSquaredZero,
    #[error("Whittaker-Hill reduction requires xi != 0")]
    XiZero,
    #[error("oracle eigenvalues did not stabilize under truncation doubling (moved {moved:.3e})")]
    OracleUnstable { moved: f64 },
    #[error("characteristic-value continuation failed at k^2 = {at}")]
    ContinuationFailed { at: f64 },
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error(transparent)]
    Transform(#[from] TransformError),
    #[error(transparent)]
    Recurrence(#[from] RecurrenceError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TrigKind {
    /// `sigma = 1` (trigonometric)
    Real,
    /// `sigma = i` (hyperbolic / modified)
    Modified,
}

impl TrigKind {
    pub fn sigma(&self) -> Complex64 {
        match self {
            TrigKind::Real => Complex64::new(1.0, 0.0),
            TrigKind::Modified => Complex64::i(),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct MathieuParams {
    pub a: Complex64,
    pub k2: Complex64,
    pub sigma: TrigKind,
}

#[derive(Debug, Clone, Copy)]
pub struct WheParams {
    pub vartheta: Complex64,
    pub xi: Complex64,
    pub p: Complex64,
    pub kappa: TrigKind,
}

/// Exact rational map from Mathieu parameters to the Whittaker-Ince limit
/// equation: `z0 = 1, B1 = -1/2, B2 = 1, B3 = k^2/2 - a/4, q = k^2`.
pub fn mathieu_to_ince(p: &MathieuParams) -> Result<InceCheParams, MathieuError> {
    if p.k2.norm() == 0.0 {
        return Err(MathieuError::KSquaredZero);
    }
    Ok(InceCheParams::new(
        Complex64::new(-0.5, 0.0),
        Complex64::new(1.0, 0.0),
        p.k2 / 2.0 - p.a / 4.0,
        Complex64::new(1.0, 0.0),
        p.k2,
    )?)
}

/// Exact rational map from Whittaker-Hill parameters to the CHE:
/// `z0 = 1, B1 = -1/2, B2 = 1, B3 = [(p+1) xi - vartheta]/4, i omega = xi/2,
/// i eta = (p+1)/2`.
pub fn whe_to_che(w: &WheParams) -> Result<CheParams, MathieuError> {
    if w.xi.norm() == 0.0 {
        return Err(MathieuError::XiZero);
    }
    let i = Complex64::i();
    Ok(CheParams::new(
        Complex64::new(-0.5, 0.0),
        Complex64::new(1.0, 0.0),
        ((w.p + 1.0) * w.xi - w.vartheta) / 4.0,
        Complex64::new(1.0, 0.0),
        w.xi / (2.0 * i),
        (w.p + 1.0) / (2.0 * i),
    )?)
}

/// Parity family of a Mathieu solution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MathieuFamily {
    /// even, period pi (from set 1)
    EvenPi,
    /// even, period 2 pi (from set 2, prefactor cos)
    EvenTwoPi,
    /// odd, period pi (from set 3, prefactor sin 2u)
    OddPi,
    /// odd, period 2 pi (from set 4, prefactor sin)
    OddTwoPi,
}

impl MathieuFamily {
    pub fn set_index(&self) -> usize {
        match self {
            MathieuFamily::EvenPi => 1,
            MathieuFamily::EvenTwoPi => 2,
            MathieuFamily::OddPi => 3,
            MathieuFamily::OddTwoPi => 4,
        }
    }

    pub fn is_even(&self) -> bool {
        matches!(self, MathieuFamily::EvenPi | MathieuFamily::EvenTwoPi)
    }

    /// Index of the lowest characteristic value of this family in the usual
    /// Mathieu ordering (`a_0`, `a_1`, `b_1`, `b_2`, ...; the family then
    /// steps by 2).
    pub fn first_order(&self) -> u32 {
        match self {
            MathieuFamily::EvenPi => 0,
            MathieuFamily::EvenTwoPi => 1,
            MathieuFamily::OddTwoPi => 1,
            MathieuFamily::OddPi => 2,
        }
    }
}

/// A Mathieu solution in the variable `u`: trigonometric prefactor times the
/// Bessel series evaluated at `z = cos^2(sigma u)`.
pub struct MathieuSolution {
    pub family: MathieuFamily,
    pub sigma: TrigKind,
    pub set: SolutionSet,
    /// series-only copy of the chosen member (prefactor powers stripped; the
    /// trigonometric factor below replaces them)
    member: SeriesSolution,
}

impl MathieuSolution {
    fn trig_prefactor(&self, u: Complex64) -> Complex64 {
        let s = self.sigma.sigma();
        match self.family {
            MathieuFamily::EvenPi => Complex64::new(1.0, 0.0),
            MathieuFamily::EvenTwoPi => (s * u).cos(),
            MathieuFamily::OddPi => (2.0 * s * u).sin(),
            MathieuFamily::OddTwoPi => (s * u).sin(),
        }
    }

    /// Value at `u`.
    pub fn eval(&self, u: Complex64, opts: &EvalOptions) -> Result<Complex64, EvalError> {
        let s = self.sigma.sigma();
        let z = (s * u).cos().powi(2);
        let series = crate::evaluate::evaluate(&self.member, z, opts)?;
        Ok(self.trig_prefactor(u) * series)
    }
}

/// Build the Mathieu solution of one parity family at given `(a, k^2)` and
/// offset `nu`, with solved coefficients attached.
pub fn mathieu_solution(
    params: &MathieuParams,
    family: MathieuFamily,
    nu: Complex64,
    window: (i64, i64),
) -> Result<MathieuSolution, MathieuError> {
    let ince = mathieu_to_ince(params)?;
    let mut set = generate_set_ince(family.set_index(), &ince, nu)?;
    let seq = recurrence::minimal_solution(&set.recurrence, nu, window.0, window.1)?;
    crate::evaluate::attach_coefficients(&mut set, seq);
    // strip the z-powers: the trigonometric prefactor carries them in u
    let mut member = set.members[0].clone();
    member.prefactor.pow_z = Complex64::new(0.0, 0.0);
    member.prefactor.pow_z_minus_z0 = Complex64::new(0.0, 0.0);
    member.prefactor.pow_z0_minus_z = Complex64::new(0.0, 0.0);
    member.prefactor.pow_neg_z = Complex64::new(0.0, 0.0);
    Ok(MathieuSolution { family, sigma: params.sigma, set, member })
}

/// Characteristic problem of one Mathieu family: the recurrence of the
/// corresponding Bessel-basis set at `nu = 0` (periodic solutions) with the
/// characteristic value `a` as the spectral unknown.
pub fn mathieu_characteristic_problem(k2: Complex64, family: MathieuFamily) -> CharacteristicProblem {
    CharacteristicProblem::for_constant(
        move |a| {
            let p = MathieuParams { a, k2, sigma: TrigKind::Real };
            let ince = mathieu_to_ince(&p).expect("k2 != 0");
            generate_set_ince(family.set_index(), &ince, Complex64::new(0.0, 0.0))
                .expect("z0 = 1")
                .recurrence
        },
        Complex64::new(0.0, 0.0),
    )
}

/// Characteristic value of the Bessel-series method: the `order`-th value of
/// the family (order = first_order() + 2 m), found by continuation in `k^2`
/// from the free limit `a = order^2`.
pub fn mathieu_characteristic(k2: f64, family: MathieuFamily, order: u32) -> Result<Complex64, MathieuError> {
    assert!(
        order >= family.first_order() && (order - family.first_order()) % 2 == 0,
        "order {order} does not belong to this family"
    );
    let mut a = Complex64::new((order * order) as f64, 0.0);
    let mut prev = a;
    let steps = (k2.abs() / 0.25).ceil().max(1.0) as usize;
    for s in 1..=steps {
        let kk = k2 * s as f64 / steps as f64;
        // secant-continuation seed: extrapolate the branch linearly
        let seed = if s >= 2 { 2.0 * a - prev } else { a };
        let problem = mathieu_characteristic_problem(Complex64::new(kk, 0.0), family);
        let report = recurrence::solve_characteristic(&problem, seed, recurrence::DEFAULT_CF_DEPTH)
            .map_err(|_| MathieuError::ContinuationFailed { at: kk })?;
        prev = a;
        a = report.root;
    }
    Ok(a)
}

/// Independent Fourier-method oracle: characteristic values of the classical
/// cosine/sine tridiagonal systems, truncation-converged by doubling.
///
/// `count` lowest values of the requested family are returned; convergence to
/// `1e-10` under doubling of the matrix size is enforced.
pub fn mathieu_fourier_oracle(k2: f64, family: MathieuFamily, count: usize, truncation: usize) -> Result<Vec<f64>, MathieuError> {
    assert!(truncation >= 8, "truncation too small");
    let eig = |m: usize| -> Vec<f64> {
        let mat = fourier_matrix(k2, family, m);
        let mut v: Vec<f64> = mat.symmetric_eigenvalues().iter().copied().collect();
        v.sort_by(|a, b| a.partial_cmp(b).unwrap());
        v.truncate(count);
        v
    };
    let first = eig(truncation);
    let second = eig(2 * truncation);
    let moved = first
        .iter()
        .zip(second.iter())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    if moved > 1e-10 {
        let third = eig(4 * truncation);
        let moved2 = second
            .iter()
            .zip(third.iter())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        if moved2 > 1e-10 {
            return Err(MathieuError::OracleUnstable { moved: moved2 });
        }
        return Ok(third);
    }
    Ok(second)
}

/// The symmetrized Fourier tridiagonal matrix of one parity family. Rows
/// correspond to `cos(2mu)`, `cos((2m+1)u)`, `sin((2m+2)u)` or `sin((2m+1)u)`
/// coefficients; `q = k^2` in the convention used here.
fn fourier_matrix(k2: f64, family: MathieuFamily, m: usize) -> DMatrix<f64> {
    let q = k2;
    let mut mat = DMatrix::<f64>::zeros(m, m);
    match family {
        MathieuFamily::EvenPi => {
            // diag 0, 4, 16, ...; the 0-1 coupling is sqrt(2) q after symmetrization
            for i in 0..m {
                let d = (2.0 * i as f64).powi(2);
                mat[(i, i)] = d;
                if i + 1 < m {
                    let off = if i == 0 { q * std::f64::consts::SQRT_2 } else { q };
                    mat[(i, i + 1)] = off;
                    mat[(i + 1, i)] = off;
                }
            }
        }
        MathieuFamily::EvenTwoPi => {
            for i in 0..m {
                let d = (2.0 * i as f64 + 1.0).powi(2);
                mat[(i, i)] = if i == 0 { d + q } else { d };
                if i + 1 < m {
                    mat[(i, i + 1)] = q;
                    mat[(i + 1, i)] = q;
                }
            }
        }
        MathieuFamily::OddTwoPi => {
            for i in 0..m {
                let d = (2.0 * i as f64 + 1.0).powi(2);
                mat[(i, i)] = if i == 0 { d - q } else { d };
                if i + 1 < m {
                    mat[(i, i + 1)] = q;
                    mat[(i + 1, i)] = q;
                }
            }
        }
        MathieuFamily::OddPi => {
            for i in 0..m {
                let d = (2.0 * i as f64 + 2.0).powi(2);
                mat[(i, i)] = d;
                if i + 1 < m {
                    mat[(i, i + 1)] = q;
                    mat[(i + 1, i)] = q;
                }
            }
        }
    }
    mat
}

/// Descriptive record of reductions known to land on these equations without
/// an implemented change of variables.
pub fn known_reductions() -> Vec<(&'static str, &'static str)> {
    vec![(
        "inverted hyperbolic double-well potential (sinh^2 + sech^2 family)",
        "reduces to the Whittaker-Ince limit of the confluent Heun equation",
    )]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;
    use crate::params::EquationParams;

    #[test]
    fn mathieu_map_worked_example() {
        let p = MathieuParams { a: c64(1.0, 0.0), k2: c64(1.0, 0.0), sigma: TrigKind::Real };
        let ince = mathieu_to_ince(&p).unwrap();
        assert_eq!(ince.b3, c64(0.25, 0.0));
        assert_eq!(ince.q, c64(1.0, 0.0));
        assert_eq!(ince.b1, c64(-0.5, 0.0));
        assert_eq!(ince.b2, c64(1.0, 0.0));
        assert_eq!(ince.z0, c64(1.0, 0.0));
    }

    #[test]
    fn whe_map_worked_example() {
        // (p, xi, vartheta) = (1, 2, 0): B3 = 1, i omega = 1, i eta = 1
        let w = WheParams { vartheta: c64(0.0, 0.0), xi: c64(2.0, 0.0), p: c64(1.0, 0.0), kappa: TrigKind::Real };
        let che = whe_to_che(&w).unwrap();
        assert!((che.b3 - c64(1.0, 0.0)).norm() < 1e-15);
        assert!((che.i_omega() - c64(1.0, 0.0)).norm() < 1e-15);
        assert!((che.i_eta() - c64(1.0, 0.0)).norm() < 1e-15);
        // finite-series flag quantity: i eta + B2/2 = (p+1)/2 + 1/2
        assert!((che.i_eta() + che.b2 / 2.0 - c64(1.5, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn whe_limit_reproduces_mathieu_map() {
        // xi -> 0 with p xi = 2 k^2 and vartheta = a: the Whittaker-Ince limit
        // of the WHE map equals the direct Mathieu map. q and B3 are linear in
        // xi at fixed p xi, so two evaluations extrapolate exactly.
        let a = c64(0.7, 0.0);
        let k2 = c64(1.3, 0.0);
        let direct = mathieu_to_ince(&MathieuParams { a, k2, sigma: TrigKind::Real }).unwrap();
        let at = |xi: f64| {
            let xi = c64(xi, 0.0);
            let p = 2.0 * k2 / xi;
            let che = whe_to_che(&WheParams { vartheta: a, xi, p, kappa: TrigKind::Real }).unwrap();
            crate::params::whittaker_ince_limit(&EquationParams::Che(che)).unwrap()
        };
        let (q1, b31) = match at(1e-3) {
            EquationParams::InceChe(p) => (p.q, p.b3),
            _ => unreachable!(),
        };
        let (q2, b32) = match at(2e-3) {
            EquationParams::InceChe(p) => (p.q, p.b3),
            _ => unreachable!(),
        };
        assert!((2.0 * q1 - q2 - direct.q).norm() < 1e-12);
        assert!((2.0 * b31 - b32 - direct.b3).norm() < 1e-12);
    }

    #[test]
    fn oracle_free_limit_and_regression_values() {
        // k^2 = 0: the families reduce to cos/sin eigenfunctions with a = m^2
        for (family, expect) in [
            (MathieuFamily::EvenPi, vec![0.0, 4.0, 16.0]),
            (MathieuFamily::EvenTwoPi, vec![1.0, 9.0, 25.0]),
            (MathieuFamily::OddTwoPi, vec![1.0, 9.0, 25.0]),
            (MathieuFamily::OddPi, vec![4.0, 16.0, 36.0]),
        ] {
            let v = mathieu_fourier_oracle(0.0, family, 3, 16).unwrap();
            for (a, b) in v.iter().zip(expect.iter()) {
                assert!((a - b).abs() < 1e-12);
            }
        }
        // frozen oracle outputs at k^2 = 1 (regression constants)
        let even = mathieu_fourier_oracle(1.0, MathieuFamily::EvenPi, 2, 16).unwrap();
        assert!((even[0] - -0.455138604107414).abs() < 1e-9, "a0(1) = {}", even[0]);
        assert!((even[1] - 4.371300982735086).abs() < 1e-9, "a2(1) = {}", even[1]);
        let odd = mathieu_fourier_oracle(1.0, MathieuFamily::OddTwoPi, 1, 16).unwrap();
        assert!((odd[0] - -0.110248816992095).abs() < 1e-9, "b1(1) = {}", odd[0]);
    }

    #[test]
    fn oracle_parity_split_disjoint() {
        // even and odd spectra share no values for k^2 != 0
        let even = mathieu_fourier_oracle(1.5, MathieuFamily::EvenTwoPi, 3, 16).unwrap();
        let odd = mathieu_fourier_oracle(1.5, MathieuFamily::OddTwoPi, 3, 16).unwrap();
        for a in &even {
            for b in &odd {
                assert!((a - b).abs() > 1e-6);
            }
        }
    }
}
