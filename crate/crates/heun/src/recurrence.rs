//! Three-term recurrence machinery: continued-fraction characteristic
//! residuals for one- and two-sided series, damped secant root solving,
//! Miller-style minimal-solution coefficients and finite tridiagonal spectra.
//!
//! Every coefficient function in this crate is a polynomial of degree at most
//! two in the shifted index `x = n + nu`, so recurrences are stored as three
//! [`Quad`] polynomials. That keeps them exactly comparable (coefficient by
//! coefficient), transportable through parameter maps, and cheap to evaluate.

use nalgebra::DMatrix;
use num_complex::Complex64;

#[derive(Debug, Clone, thiserror::Error)]
pub enum RecurrenceError {
    #[error("continued fraction hit a near-zero denominator at level {level} ({direction})")]
    NearZeroDenominator { level: usize, direction: &'static str },
    #[error("root search did not converge after {iterations} iterations (last step {step:.3e})")]
    NoConvergence { iterations: usize, step: f64 },
    #[error("root is not depth-stable: moved {moved:.3e} when depth changed {from} -> {to}")]
    DepthUnstable { moved: f64, from: usize, to: usize },
    #[error("coefficients fail to be minimal toward {direction}: |ratio| {measured:.3e} vs dominant {dominant:.3e}")]
    NonMinimalGrowth { direction: &'static str, measured: f64, dominant: f64 },
    #[error("Miller runway did not stabilize after restART at {runway} extra indices")]
    RunwayExhausted { runway: usize },
    #[error("finite spectrum needs N >= 0 and a nonempty matrix")]
    Dimension,
    #[error("the unknown does not enter the diagonal affinely (row {row})")]
    NonAffineUnknown { row: i64 },
    #[error("eigenvalue computation failed to converge")]
    EigenFailure,
}

type Result<T> = std::result::Result<T, RecurrenceError>;

/// Polynomial `c0 + c1 x + c2 x^2` in the shifted index `x = n + nu`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quad {
    pub c: [Complex64; 3],
}

impl Quad {
    pub fn new(c0: Complex64, c1: Complex64, c2: Complex64) -> Self {
        Quad { c: [c0, c1, c2] }
    }

    pub fn constant(c0: Complex64) -> Self {
        Quad::new(c0, Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0))
    }

    /// `(x + r)` as a Quad, handy for building factored coefficients.
    pub fn linear(r: Complex64) -> Self {
        Quad::new(r, Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0))
    }

    /// Product of two affine factors `s (x + r1)(x + r2)`.
    pub fn scaled_product(s: Complex64, r1: Complex64, r2: Complex64) -> Self {
        Quad::new(s * r1 * r2, s * (r1 + r2), s)
    }

    pub fn eval(&self, x: Complex64) -> Complex64 {
        (self.c[2] * x + self.c[1]) * x + self.c[0]
    }

    pub fn scale(&self, s: Complex64) -> Quad {
        Quad::new(self.c[0] * s, self.c[1] * s, self.c[2] * s)
    }

    pub fn add(&self, other: &Quad) -> Quad {
        Quad::new(self.c[0] + other.c[0], self.c[1] + other.c[1], self.c[2] + other.c[2])
    }

    /// Shift the argument: `p(x + k)` as a polynomial in `x`.
    pub fn shift(&self, k: f64) -> Quad {
        let k = Complex64::new(k, 0.0);
        Quad::new(
            self.c[0] + self.c[1] * k + self.c[2] * k * k,
            self.c[1] + 2.0 * self.c[2] * k,
            self.c[2],
        )
    }

    pub fn max_coeff_norm(&self) -> f64 {
        self.c.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Coefficient-wise distance, for symbolic comparisons of recurrences.
    pub fn distance(&self, other: &Quad) -> f64 {
        self.c
            .iter()
            .zip(other.c.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndexKind {
    OneSided,
    TwoSided,
}

/// `alpha_n b_{n+1} + beta_n b_n + gamma_n b_{n-1} = 0` with coefficients
/// evaluated at `x = n + nu`.
#[derive(Debug, Clone)]
pub struct ThreeTermRecurrence {
    pub alpha: Quad,
    pub beta: Quad,
    pub gamma: Quad,
    pub kind: IndexKind,
}

impl ThreeTermRecurrence {
    pub fn one_sided(alpha: Quad, beta: Quad, gamma: Quad) -> Self {
        ThreeTermRecurrence { alpha, beta, gamma, kind: IndexKind::OneSided }
    }

    pub fn two_sided(alpha: Quad, beta: Quad, gamma: Quad) -> Self {
        ThreeTermRecurrence { alpha, beta, gamma, kind: IndexKind::TwoSided }
    }

    pub fn alpha_at(&self, n: i64, nu: Complex64) -> Complex64 {
        self.alpha.eval(nu + n as f64)
    }

    pub fn beta_at(&self, n: i64, nu: Complex64) -> Complex64 {
        self.beta.eval(nu + n as f64)
    }

    pub fn gamma_at(&self, n: i64, nu: Complex64) -> Complex64 {
        self.gamma.eval(nu + n as f64)
    }

    /// Row defect `|alpha_n c_{n+1} + beta_n c_n + gamma_n c_{n-1}|` relative
    /// to the largest of the three summands.
    pub fn row_defect(&self, nu: Complex64, n: i64, cm: Complex64, c0: Complex64, cp: Complex64) -> f64 {
        let t1 = self.alpha_at(n, nu) * cp;
        let t2 = self.beta_at(n, nu) * c0;
        let t3 = self.gamma_at(n, nu) * cm;
        let scale = t1.norm().max(t2.norm()).max(t3.norm());
        if scale == 0.0 {
            0.0
        } else {
            (t1 + t2 + t3).norm() / scale
        }
    }
}

/// Default truncation depth of the characteristic continued fractions;
/// doubled automatically until two successive depths agree.
pub const DEFAULT_CF_DEPTH: usize = 60;

const PIVOT_FLOOR: f64 = 1e-290;

/// Rightward truncated continued fraction
/// `a_{s} g_{s+1} / (b_{s+1} - a_{s+1} g_{s+2} / (b_{s+2} - ...))`
/// evaluated bottom-up starting from level `depth`.
fn cf_forward(rec: &ThreeTermRecurrence, nu: Complex64, depth: usize) -> Result<Complex64> {
    let mut f = Complex64::new(0.0, 0.0);
    for k in (1..=depth).rev() {
        let n = k as i64;
        let num = rec.alpha_at(n - 1, nu) * rec.gamma_at(n, nu);
        let den = rec.beta_at(n, nu) - f;
        if den.norm() < PIVOT_FLOOR * num.norm().max(1.0) {
            return Err(RecurrenceError::NearZeroDenominator { level: k, direction: "rightward" });
        }
        f = num / den;
    }
    Ok(f)
}

/// Leftward truncated continued fraction
/// `a_{-1} g_0 / (b_{-1} - a_{-2} g_{-1} / (b_{-2} - ...))`.
fn cf_backward(rec: &ThreeTermRecurrence, nu: Complex64, depth: usize) -> Result<Complex64> {
    let mut f = Complex64::new(0.0, 0.0);
    for k in (1..=depth).rev() {
        let n = -(k as i64);
        let num = rec.alpha_at(n, nu) * rec.gamma_at(n + 1, nu);
        if k == 1 && num.norm() == 0.0 {
            // left-truncated series: the whole leftward fraction vanishes
            return Ok(Complex64::new(0.0, 0.0));
        }
        let den = rec.beta_at(n, nu) - f;
        if den.norm() < PIVOT_FLOOR * num.norm().max(1.0) {
            return Err(RecurrenceError::NearZeroDenominator { level: k, direction: "leftward" });
        }
        f = num / den;
    }
    Ok(f)
}

/// Characteristic residual of a one-sided recurrence:
/// `beta_0 - alpha_0 gamma_1 / (beta_1 - alpha_1 gamma_2 / (beta_2 - ...))`.
pub fn cf_residual_one_sided(rec: &ThreeTermRecurrence, depth: usize) -> Result<Complex64> {
    let nu = Complex64::new(0.0, 0.0);
    Ok(rec.beta_at(0, nu) - cf_forward(rec, nu, depth)?)
}

/// Characteristic residual of a two-sided recurrence at offset `nu`:
/// `beta_0` minus the leftward and rightward continued fractions.
pub fn cf_residual_two_sided(rec: &ThreeTermRecurrence, nu: Complex64, depth: usize) -> Result<Complex64> {
    Ok(rec.beta_at(0, nu) - cf_backward(rec, nu, depth)? - cf_forward(rec, nu, depth)?)
}

fn residual(rec: &ThreeTermRecurrence, nu: Complex64, depth: usize) -> Result<Complex64> {
    match rec.kind {
        IndexKind::OneSided => cf_residual_one_sided(rec, depth),
        IndexKind::TwoSided => cf_residual_two_sided(rec, nu, depth),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Unknown {
    /// Solve for the two-sided series offset; the result is reduced to the
    /// strip `0 <= Re nu < 1` and re-polished there.
    Nu,
    /// Solve for a constant of the differential equation entering the
    /// recurrence (the offset stays fixed).
    EquationConstant,
}

/// A recurrence together with the designated unknown of its characteristic
/// equation. For [`Unknown::EquationConstant`] the recurrence is rebuilt from
/// the trial value by `build`; for [`Unknown::Nu`] it is fixed.
pub struct CharacteristicProblem {
    pub unknown: Unknown,
    pub build: Box<dyn Fn(Complex64) -> ThreeTermRecurrence + Send + Sync>,
    pub nu_fixed: Complex64,
}

impl CharacteristicProblem {
    pub fn for_nu(rec: ThreeTermRecurrence) -> Self {
        CharacteristicProblem {
            unknown: Unknown::Nu,
            build: Box::new(move |_| rec.clone()),
            nu_fixed: Complex64::new(0.0, 0.0),
        }
    }

    pub fn for_constant<F>(build: F, nu: Complex64) -> Self
    where
        F: Fn(Complex64) -> ThreeTermRecurrence + Send + Sync + 'static,
    {
        CharacteristicProblem { unknown: Unknown::EquationConstant, build: Box::new(build), nu_fixed: nu }
    }

    pub fn residual(&self, u: Complex64, depth: usize) -> Result<Complex64> {
        match self.unknown {
            Unknown::Nu => residual(&(self.build)(u), u, depth),
            Unknown::EquationConstant => residual(&(self.build)(u), self.nu_fixed, depth),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SolveReport {
    pub root: Complex64,
    pub residual: f64,
    pub depth: usize,
    pub iterations: usize,
}

const MAX_SECANT_ITER: usize = 200;
const STEP_TOL: f64 = 1e-12;
const RESIDUAL_TOL: f64 = 1e-10;
const DEPTH_STABLE_TOL: f64 = 1e-10;

fn secant_root(
    problem: &CharacteristicProblem,
    seed: Complex64,
    depth: usize,
) -> Result<(Complex64, f64, usize)> {
    let mut x0 = seed;
    let mut x1 = seed + Complex64::new(1e-3, 1e-3);
    let mut f0 = problem.residual(x0, depth)?;
    let mut f1 = problem.residual(x1, depth)?;
    for it in 0..MAX_SECANT_ITER {
        let df = f1 - f0;
        if df.norm() == 0.0 {
            return Err(RecurrenceError::NoConvergence { iterations: it, step: f64::NAN });
        }
        let mut step = f1 * (x1 - x0) / df;
        // damping: residual poles sit next to the roots, so cap the step
        let cap = 0.5 * (1.0 + x1.norm());
        if step.norm() > cap {
            step *= cap / step.norm();
        }
        let x2 = x1 - step;
        let f2 = problem.residual(x2, depth)?;
        x0 = x1;
        f0 = f1;
        x1 = x2;
        f1 = f2;
        if step.norm() < STEP_TOL && f1.norm() < RESIDUAL_TOL * residual_scale(problem, x1, depth) {
            return Ok((x1, f1.norm(), it + 1));
        }
    }
    Err(RecurrenceError::NoConvergence { iterations: MAX_SECANT_ITER, step: (x1 - x0).norm() })
}

/// Natural magnitude of the residual, used to make the convergence test
/// relative: |beta_0| plus the first fraction numerators.
fn residual_scale(problem: &CharacteristicProblem, u: Complex64, _depth: usize) -> f64 {
    let rec = (problem.build)(u);
    let nu = match problem.unknown {
        Unknown::Nu => u,
        Unknown::EquationConstant => problem.nu_fixed,
    };
    rec.beta_at(0, nu)
        .norm()
        .max((rec.alpha_at(0, nu) * rec.gamma_at(1, nu)).norm().sqrt())
        .max(1.0)
}

/// Root of the truncated continued-fraction characteristic equation by damped
/// complex secant iteration, with automatic depth verification: the depth is
/// increased until the root moves by less than `1e-10` under a depth change.
pub fn solve_characteristic(problem: &CharacteristicProblem, seed: Complex64, depth: usize) -> Result<SolveReport> {
    let mut depth = depth.max(8);
    let (mut root, mut res, mut iters) = secant_root(problem, seed, depth)?;
    loop {
        let deeper = depth + depth / 2;
        let (root2, res2, it2) = secant_root(problem, root, deeper)?;
        let moved = (root2 - root).norm();
        root = root2;
        res = res2;
        iters += it2;
        if moved < DEPTH_STABLE_TOL {
            break;
        }
        if deeper > 4000 {
            return Err(RecurrenceError::DepthUnstable { moved, from: depth, to: deeper });
        }
        depth = deeper;
    }
    if problem.unknown == Unknown::Nu {
        // nu is defined modulo 1: report the representative in [0,1) and
        // re-polish, since truncation breaks the exact shift covariance.
        let shift = root.re.floor();
        if shift != 0.0 {
            let reduced = root - shift;
            let (r2, s2, it2) = secant_root(problem, reduced, depth)?;
            root = r2;
            res = s2;
            iters += it2;
        }
    }
    Ok(SolveReport { root, residual: res, depth, iterations: iters })
}

/// Coefficients `c_n` over `[n_min, n_max]`, normalized to `c_0 = 1`.
#[derive(Debug, Clone)]
pub struct CoefficientSequence {
    pub n_min: i64,
    pub values: Vec<Complex64>,
}

impl CoefficientSequence {
    pub fn get(&self, n: i64) -> Complex64 {
        if n < self.n_min || n >= self.n_min + self.values.len() as i64 {
            Complex64::new(0.0, 0.0)
        } else {
            self.values[(n - self.n_min) as usize]
        }
    }

    pub fn n_max(&self) -> i64 {
        self.n_min + self.values.len() as i64 - 1
    }
}

const MILLER_RUNWAY: usize = 40;

/// Backward Miller pass from `start` down to `stop` (inclusive); returns the
/// slice normalized so the value at `stop` is 1.
fn miller_down(rec: &ThreeTermRecurrence, nu: Complex64, start: i64, stop: i64) -> Result<Vec<Complex64>> {
    let len = (start - stop + 1) as usize;
    let mut v = vec![Complex64::new(0.0, 0.0); len + 1];
    v[len] = Complex64::new(0.0, 0.0);
    v[len - 1] = Complex64::new(1.0, 0.0);
    for n in (stop..start).rev() {
        let idx = (n - stop) as usize;
        let g = rec.gamma_at(n + 1, nu);
        if g.norm() == 0.0 {
            return Err(RecurrenceError::NearZeroDenominator { level: (n + 1) as usize, direction: "rightward" });
        }
        let val = -(rec.alpha_at(n + 1, nu) * v[idx + 2] + rec.beta_at(n + 1, nu) * v[idx + 1]) / g;
        v[idx] = val;
        let m = val.norm();
        if m > 1e120 {
            for w in v[idx..].iter_mut() {
                *w /= m;
            }
        }
    }
    v.truncate(len);
    let head = v[0];
    if head.norm() == 0.0 {
        return Err(RecurrenceError::NearZeroDenominator { level: stop.unsigned_abs() as usize, direction: "rightward" });
    }
    for w in v.iter_mut() {
        *w /= head;
    }
    Ok(v)
}

/// Upward Miller pass from `start` up to `stop` (inclusive), normalized so the
/// value at `stop` is 1. Used for the leftward tail of two-sided series.
fn miller_up(rec: &ThreeTermRecurrence, nu: Complex64, start: i64, stop: i64) -> Result<Vec<Complex64>> {
    let len = (stop - start + 1) as usize;
    let mut v = vec![Complex64::new(0.0, 0.0); len + 1];
    v[0] = Complex64::new(0.0, 0.0); // index start-1
    v[1] = Complex64::new(1.0, 0.0); // index start
    for n in start..stop {
        let idx = (n - start) as usize + 1;
        let a = rec.alpha_at(n, nu);
        if a.norm() == 0.0 {
            return Err(RecurrenceError::NearZeroDenominator { level: n.unsigned_abs() as usize, direction: "leftward" });
        }
        let val = -(rec.beta_at(n, nu) * v[idx] + rec.gamma_at(n, nu) * v[idx - 1]) / a;
        v[idx + 1] = val;
        let m = val.norm();
        if m > 1e120 {
            for w in v[..=idx + 1].iter_mut() {
                *w /= m;
            }
        }
    }
    let tail = v[len];
    if tail.norm() == 0.0 {
        return Err(RecurrenceError::NearZeroDenominator { level: stop.unsigned_abs() as usize, direction: "leftward" });
    }
    let out: Vec<Complex64> = v[1..=len].iter().map(|w| w / tail).collect();
    Ok(out)
}

/// Minimal-in-modulus ratio `c_{n+1}/c_n` at index `n`, computed by the
/// downward ratio recursion (a continued fraction) from `runway` levels above.
pub fn minimal_ratio_right(rec: &ThreeTermRecurrence, nu: Complex64, n: i64, runway: usize) -> Complex64 {
    let mut rho = Complex64::new(0.0, 0.0);
    for k in (n + 1..=n + runway as i64).rev() {
        let den = rec.beta_at(k, nu) + rec.alpha_at(k, nu) * rho;
        rho = -rec.gamma_at(k, nu) / den;
    }
    rho
}

/// Minimal ratio `c_{n-1}/c_n` at index `n`, by the upward ratio recursion.
pub fn minimal_ratio_left(rec: &ThreeTermRecurrence, nu: Complex64, n: i64, runway: usize) -> Complex64 {
    let mut sigma = Complex64::new(0.0, 0.0);
    for k in (n - runway as i64..n).map(|k| k) {
        let den = rec.beta_at(k, nu) + rec.gamma_at(k, nu) * sigma;
        sigma = -rec.alpha_at(k, nu) / den;
    }
    // sigma is now c_{n-1}/c_n seen from the recursion ending at k = n-1
    sigma
}

/// Detect a right truncation: the smallest `N >= 0` with `gamma_{N+1} = 0`,
/// which makes the series a finite polynomial of length `N + 1`.
fn right_truncation(rec: &ThreeTermRecurrence, nu: Complex64, n_max: i64) -> Option<i64> {
    let scale = rec.gamma.max_coeff_norm().max(1e-30);
    (0..=n_max).find(|&n| rec.gamma_at(n + 1, nu).norm() <= 1e-12 * scale)
}

/// Minimal-solution coefficients of the recurrence over `[n_min, n_max]`,
/// normalized to `c_0 = 1`.
///
/// Both tails are generated by Miller backward recursion started `40` indices
/// beyond the requested window and restarted twice as far when the first two
/// passes disagree. The row at `n = 0` is not imposed; its defect measures how
/// well `nu` solves the characteristic equation.
pub fn minimal_solution(
    rec: &ThreeTermRecurrence,
    nu: Complex64,
    n_min: i64,
    n_max: i64,
) -> Result<CoefficientSequence> {
    assert!(n_min <= 0 && n_max >= 0, "window must contain n = 0");
    let trunc = right_truncation(rec, nu, n_max + 2 * MILLER_RUNWAY as i64);
    let right = match trunc {
        Some(nt) if nt <= n_max => {
            let mut v = miller_down(rec, nu, nt, 0)?;
            v.resize((n_max + 1) as usize, Complex64::new(0.0, 0.0));
            v
        }
        _ => {
            let first = miller_down(rec, nu, n_max + MILLER_RUNWAY as i64, 0)?;
            let second = miller_down(rec, nu, n_max + 2 * MILLER_RUNWAY as i64, 0)?;
            let agree = first
                .iter()
                .take((n_max + 1) as usize)
                .zip(second.iter())
                .all(|(a, b)| (a - b).norm() <= 1e-12 * b.norm().max(1e-30));
            let chosen = if agree {
                second
            } else {
                let third = miller_down(rec, nu, n_max + 4 * MILLER_RUNWAY as i64, 0)?;
                let agree2 = second
                    .iter()
                    .take((n_max + 1) as usize)
                    .zip(third.iter())
                    .all(|(a, b)| (a - b).norm() <= 1e-11 * b.norm().max(1e-30));
                if !agree2 {
                    return Err(RecurrenceError::RunwayExhausted { runway: 4 * MILLER_RUNWAY });
                }
                third
            };
            chosen[..(n_max + 1) as usize].to_vec()
        }
    };

    let left: Vec<Complex64> = if rec.kind == IndexKind::OneSided || n_min == 0 {
        Vec::new()
    } else if rec.alpha_at(-1, nu).norm() <= 1e-12 * rec.alpha.max_coeff_norm().max(1e-30) {
        // alpha_{-1} = 0: the two-sided series truncates on the left at n = 0
        vec![Complex64::new(0.0, 0.0); (-n_min) as usize]
    } else {
        let first = miller_up(rec, nu, n_min - MILLER_RUNWAY as i64, 0)?;
        let second = miller_up(rec, nu, n_min - 2 * MILLER_RUNWAY as i64, 0)?;
        let l1 = &first[first.len() - (-n_min) as usize - 1..];
        let l2 = &second[second.len() - (-n_min) as usize - 1..];
        let agree = l1
            .iter()
            .zip(l2.iter())
            .all(|(a, b)| (a - b).norm() <= 1e-12 * b.norm().max(1e-30));
        let chosen = if agree {
            l2.to_vec()
        } else {
            let third = miller_up(rec, nu, n_min - 4 * MILLER_RUNWAY as i64, 0)?;
            let l3 = &third[third.len() - (-n_min) as usize - 1..];
            let agree2 = l2
                .iter()
                .zip(l3.iter())
                .all(|(a, b)| (a - b).norm() <= 1e-11 * b.norm().max(1e-30));
            if !agree2 {
                return Err(RecurrenceError::RunwayExhausted { runway: 4 * MILLER_RUNWAY });
            }
            l3.to_vec()
        };
        chosen[..chosen.len() - 1].to_vec() // drop the n = 0 entry (already 1)
    };

    let mut values = left;
    values.extend_from_slice(&right);
    let seq = CoefficientSequence { n_min: if rec.kind == IndexKind::OneSided { 0 } else { n_min }, values };

    // minimality check: measured tail ratios must stay far from the dominant
    // Poincare root of the recurrence
    if trunc.is_none() && seq.n_max() >= 8 {
        let probe = seq.n_max() - 2;
        let measured = (seq.get(probe + 1) / seq.get(probe)).norm();
        let dominant = dominant_ratio_bound(rec, nu, probe);
        if measured.is_finite() && dominant.is_finite() && measured > 0.5 * dominant {
            return Err(RecurrenceError::NonMinimalGrowth { direction: "n -> +inf", measured, dominant });
        }
    }
    Ok(seq)
}

/// Modulus of the dominant characteristic root of
/// `alpha(x) r^2 + beta(x) r + gamma(x) = 0` at `x = n + nu`.
fn dominant_ratio_bound(rec: &ThreeTermRecurrence, nu: Complex64, n: i64) -> f64 {
    let x = nu + n as f64;
    let a = rec.alpha.eval(x);
    let b = rec.beta.eval(x);
    let g = rec.gamma.eval(x);
    if a.norm() == 0.0 {
        return f64::INFINITY;
    }
    let disc = (b * b - 4.0 * a * g).sqrt();
    let r1 = (-b + disc) / (2.0 * a);
    let r2 = (-b - disc) / (2.0 * a);
    r1.norm().max(r2.norm())
}

/// Eigenvalues of the `(N+1) x (N+1)` tridiagonal system built from rows
/// `0..=N` of a recurrence family parameterized by the spectral unknown.
///
/// `build` must produce recurrences whose diagonal depends affinely on the
/// unknown with a constant (row-independent) slope; the roots of the
/// truncated determinant are then ordinary eigenvalues. With real entries and
/// `alpha_i gamma_{i+1} > 0` the returned roots are real and distinct.
pub fn finite_spectrum<F>(build: F, nu: Complex64, n: usize) -> Result<Vec<Complex64>>
where
    F: Fn(Complex64) -> ThreeTermRecurrence,
{
    let dim = n + 1;
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let r0 = build(zero);
    let r1 = build(one);
    let r2 = build(2.0 * one);

    // affineness and slope-uniformity of the unknown in the diagonal
    let mut slope = zero;
    for row in 0..dim as i64 {
        let b0 = r0.beta_at(row, nu);
        let b1 = r1.beta_at(row, nu);
        let b2 = r2.beta_at(row, nu);
        let curv = (b2 - 2.0 * b1 + b0).norm();
        let s = b1 - b0;
        if curv > 1e-9 * b1.norm().max(1.0) || s.norm() == 0.0 {
            return Err(RecurrenceError::NonAffineUnknown { row });
        }
        if row == 0 {
            slope = s;
        } else if (s - slope).norm() > 1e-9 * slope.norm() {
            return Err(RecurrenceError::NonAffineUnknown { row });
        }
        // off-diagonals must not depend on the unknown
        if (r1.alpha_at(row, nu) - r0.alpha_at(row, nu)).norm() > 1e-12 * r0.alpha_at(row, nu).norm().max(1.0)
            || (r1.gamma_at(row, nu) - r0.gamma_at(row, nu)).norm() > 1e-12 * r0.gamma_at(row, nu).norm().max(1.0)
        {
            return Err(RecurrenceError::NonAffineUnknown { row });
        }
    }

    // beta_i(lambda) = beta_i(0) + slope * lambda; det = 0  <=>
    // lambda eigenvalue of -T/slope where T holds the lambda-free rows.
    let all_real = (0..dim as i64).all(|i| {
        r0.beta_at(i, nu).im.abs() < 1e-13 * r0.beta_at(i, nu).norm().max(1.0)
            && r0.alpha_at(i, nu).im.abs() < 1e-13
            && r0.gamma_at(i, nu).im.abs() < 1e-13
    }) && slope.im.abs() < 1e-13 * slope.norm();
    let positive_products = (0..dim as i64 - 1)
        .all(|i| (r0.alpha_at(i, nu) * r0.gamma_at(i + 1, nu)).re > 0.0);

    if all_real && positive_products {
        // balance to a real symmetric tridiagonal; eigenvalues are exactly real
        let mut m = DMatrix::<f64>::zeros(dim, dim);
        for i in 0..dim {
            m[(i, i)] = (-r0.beta_at(i as i64, nu) / slope).re;
            if i + 1 < dim {
                let off = (r0.alpha_at(i as i64, nu) * r0.gamma_at(i as i64 + 1, nu)).re.sqrt();
                let s = (-Complex64::new(1.0, 0.0) / slope).re;
                m[(i, i + 1)] = off * s;
                m[(i + 1, i)] = off * s;
            }
        }
        let eig = m.symmetric_eigenvalues();
        let mut out: Vec<Complex64> = eig.iter().map(|&e| Complex64::new(e, 0.0)).collect();
        out.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap());
        return Ok(out);
    }

    let mut m = DMatrix::<Complex64>::zeros(dim, dim);
    for i in 0..dim {
        m[(i, i)] = -r0.beta_at(i as i64, nu) / slope;
        if i + 1 < dim {
            m[(i, i + 1)] = -r0.alpha_at(i as i64, nu) / slope;
            m[(i + 1, i)] = -r0.gamma_at(i as i64 + 1, nu) / slope;
        }
    }
    complex_tridiagonal_eigenvalues(m)
}

/// Eigenvalues of a complex tridiagonal matrix via Newton iteration on the
/// three-term determinant recursion with explicit deflation; sizes here stay
/// small (N <= a few dozen).
fn complex_tridiagonal_eigenvalues(m: DMatrix<Complex64>) -> Result<Vec<Complex64>> {
    let dim = m.nrows();
    let det_and_deriv = |lambda: Complex64| -> (Complex64, Complex64) {
        let mut p_prev = Complex64::new(1.0, 0.0);
        let mut d_prev = Complex64::new(0.0, 0.0);
        let mut p = m[(0, 0)] - lambda;
        let mut d = -Complex64::new(1.0, 0.0);
        for i in 1..dim {
            let off = m[(i - 1, i)] * m[(i, i - 1)];
            let pn = (m[(i, i)] - lambda) * p - off * p_prev;
            let dn = -p + (m[(i, i)] - lambda) * d - off * d_prev;
            p_prev = p;
            d_prev = d;
            p = pn;
            d = dn;
        }
        (p, d)
    };
    let scale = (0..dim).map(|i| m[(i, i)].norm()).fold(1.0, f64::max);
    let mut roots: Vec<Complex64> = Vec::with_capacity(dim);
    let seeds: Vec<Complex64> = (0..dim)
        .map(|i| m[(i, i)] + Complex64::new(0.013 * (i as f64 + 1.0), 0.017 * scale * 1e-3))
        .collect();
    for seed in seeds {
        let mut z = seed;
        let mut ok = false;
        for _ in 0..300 {
            let (p, dp) = det_and_deriv(z);
            // deflate already-found roots
            let mut corr = Complex64::new(0.0, 0.0);
            for r in &roots {
                corr += Complex64::new(1.0, 0.0) / (z - r);
            }
            let denom = dp / p - corr;
            if !denom.is_finite() || denom.norm() == 0.0 {
                z += Complex64::new(1e-4 * scale, 1e-4 * scale);
                continue;
            }
            let step = Complex64::new(1.0, 0.0) / denom;
            z -= step;
            if step.norm() < 1e-13 * scale.max(z.norm()) {
                ok = true;
                break;
            }
        }
        if !ok {
            return Err(RecurrenceError::EigenFailure);
        }
        roots.push(z);
    }
    roots.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());
    Ok(roots)
}
