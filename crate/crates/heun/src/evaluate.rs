//! Numerical evaluation of series solutions, ODE residual validation,
//! linear-combination connection and convergence diagnostics.
//!
//! Two-sided series converge geometrically on the growing-index side but only
//! polynomially on the other (the term ratio approaches `1 + 2/n` as
//! `n -> -inf`), so the slow tail is resummed with a Levin u-transform on the
//! trailing partial sums instead of brute force. First and second derivatives
//! come from the parameter-shift ladders of the basis functions, never from
//! finite differences:
//!
//! ```text
//! d/dy  f(a,c;y)      = f(a,c;y) - f(a,c+1;y)          (Psi and PhiTilde)
//! d/dw  g_c(w)        = -q g_{c+1}(w),   g_c = (qw)^{-(c-1)/2} C_{c-1}(2 sqrt(qw))
//! ```

use crate::params::EquationParams;
use crate::recurrence::{minimal_ratio_left, minimal_ratio_right, CoefficientSequence};
use crate::sets::{Basis, SeriesSolution, SolutionSet};
use crate::specfun::{self, SpecFunError};
use num_complex::Complex64;
use std::sync::Arc;

#[derive(Debug, Clone, thiserror::Error)]
pub enum EvalError {
    #[error("solution has no coefficients attached; solve the set first")]
    MissingCoefficients,
    #[error("point {z} lies outside the declared convergence domain")]
    DomainViolation { z: Complex64 },
    #[error("series tail does not decay at {z}: measured term ratio {ratio:.4} toward {direction}")]
    TailNonDecay { z: Complex64, ratio: f64, direction: &'static str },
    #[error("tail resummation stalled at {z}: estimated error {estimate:.3e} above tolerance {tol:.3e}")]
    TailEstimate { z: Complex64, estimate: f64, tol: f64 },
    #[error("{z} is a singular point of the equation")]
    SingularPoint { z: Complex64 },
    #[error("anchor system is near-singular (condition scale {cond:.3e})")]
    AnchorDegenerate { cond: f64 },
    #[error(transparent)]
    SpecFun(#[from] SpecFunError),
}

type Result<T> = std::result::Result<T, EvalError>;

#[derive(Debug, Clone, Copy)]
pub struct EvalOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// hard cap on rightward terms
    pub max_right: usize,
    /// hard cap on leftward terms before tail extrapolation must take over
    pub max_left: usize,
    /// number of extrapolation nodes for the slow leftward tails
    pub tail_nodes: usize,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions { rel_tol: 1e-12, abs_tol: 1e-280, max_right: 400, max_left: 148, tail_nodes: 12 }
    }
}

/// Value and first two derivatives of a solution at one point.
#[derive(Debug, Clone, Copy, Default)]
pub struct Deriv3 {
    pub u: Complex64,
    pub du: Complex64,
    pub d2u: Complex64,
}

#[derive(Clone, Copy, Default)]
struct Triple {
    f: Complex64,
    df: Complex64,
    d2f: Complex64,
}

impl Triple {
    fn add(&mut self, o: Triple) {
        self.f += o.f;
        self.df += o.df;
        self.d2f += o.d2f;
    }

    fn scaled(&self, s: Complex64) -> Triple {
        Triple { f: self.f * s, df: self.df * s, d2f: self.d2f * s }
    }

    fn norm(&self) -> f64 {
        self.f.norm().max(self.df.norm()).max(self.d2f.norm())
    }
}

/// One series term: weight * basis triple in the series variable `w`.
fn term_at(m: &SeriesSolution, coeffs: &CoefficientSequence, n: i64, w: Complex64) -> Result<Triple> {
    let mut weight = coeffs.get(n);
    if weight.norm() == 0.0 {
        return Ok(Triple::default());
    }
    if m.alternating && n.rem_euclid(2) == 1 {
        weight = -weight;
    }
    let x = m.nu + n as f64;
    if let Some(link) = &m.gamma_weight {
        weight *= specfun::recip_gamma(link.at(x));
        if weight.norm() == 0.0 {
            return Ok(Triple::default());
        }
    }
    Ok(basis_triple(m, n, x, w)?.scaled(weight))
}

fn basis_triple(m: &SeriesSolution, n: i64, x: Complex64, w: Complex64) -> Result<Triple> {
    match &m.basis {
        Basis::PhiTilde { a, c, y_coef } => {
            let y = *y_coef * w;
            let (av, cv) = (a.at(x), c.at(x));
            let f0 = specfun::phi_tilde(av, cv, y)?;
            let f1 = specfun::phi_tilde(av, cv + 1.0, y)?;
            let f2 = specfun::phi_tilde(av, cv + 2.0, y)?;
            Ok(ladder_triple(f0, f1, f2, *y_coef))
        }
        Basis::Psi { a, c, y_coef } => {
            let y = *y_coef * w;
            let (av, cv) = (a.at(x), c.at(x));
            let f0 = specfun::psi_irregular(av, cv, y)?;
            let f1 = specfun::psi_irregular(av, cv + 1.0, y)?;
            let f2 = specfun::psi_irregular(av, cv + 2.0, y)?;
            Ok(ladder_triple(f0, f1, f2, *y_coef))
        }
        Basis::PhiSecond { a, c, y_coef } => {
            let y = *y_coef * w;
            let (av, cv) = (a.at(x), c.at(x));
            let f0 = specfun::phi_second(av, cv, y)?;
            let f1 = specfun::phi_second(av, cv + 1.0, y)?;
            let f2 = specfun::phi_second(av, cv + 2.0, y)?;
            Ok(ladder_triple(f0, f1, f2, *y_coef))
        }
        Basis::Cylinder { kind, c, q, negated } => {
            let cv = c.at(x);
            let g0 = cylinder_g(*kind, cv, *q, w, *negated)?;
            let g1 = cylinder_g(*kind, cv + 1.0, *q, w, *negated)?;
            let g2 = cylinder_g(*kind, cv + 2.0, *q, w, *negated)?;
            let s = if *negated { *q } else { -*q };
            Ok(Triple { f: g0, df: s * g1, d2f: *q * *q * g2 })
        }
        Basis::Power { center, scale } => {
            let t = (w - center) / scale;
            let nf = n as f64;
            let f = t.powi(n as i32);
            let df = if n == 0 { Complex64::default() } else { nf * t.powi(n as i32 - 1) / scale };
            let d2f = if n <= 1 {
                Complex64::default()
            } else {
                nf * (nf - 1.0) * t.powi(n as i32 - 2) / (scale * scale)
            };
            Ok(Triple { f, df, d2f })
        }
    }
}

/// df/dw and d2f/dw2 from the c -> c+1 ladder with argument y = y_coef * w.
fn ladder_triple(f0: Complex64, f1: Complex64, f2: Complex64, y_coef: Complex64) -> Triple {
    Triple { f: f0, df: y_coef * (f0 - f1), d2f: y_coef * y_coef * (f0 - 2.0 * f1 + f2) }
}

/// `g_c(w) = (q w)^{-(c-1)/2} C_{+-(c-1)}(2 sqrt(q w))`, the single-valued
/// combination carrying the per-term power of the Bessel-basis sets; the
/// order-negated variant is the second cylinder family whose two-sided sums
/// satisfy the equation pointwise.
fn cylinder_g(kind: specfun::BesselKind, c: Complex64, q: Complex64, w: Complex64, negated: bool) -> Result<Complex64> {
    let s = q * w;
    let mu = c - 1.0;
    let order = if negated { -mu } else { mu };
    if s.norm() == 0.0 {
        return match kind {
            specfun::BesselKind::J if !negated => Ok(specfun::recip_gamma(mu + 1.0)),
            _ => Err(EvalError::SpecFun(SpecFunError::OriginDivergence { kind, order })),
        };
    }
    let root = s.sqrt();
    let lead = (-(mu / 2.0) * s.ln()).exp();
    Ok(lead * specfun::bessel(kind, order, 2.0 * root)?)
}

/// Polynomial extrapolation of `(x_j, y_j)` to `x = 0` (Neville scheme).
fn neville_to_zero(xs: &[f64], ys: &[Complex64]) -> Complex64 {
    let n = xs.len();
    let mut t: Vec<Complex64> = ys.to_vec();
    for k in 1..n {
        for i in 0..n - k {
            t[i] = (xs[i + k] * t[i] - xs[i] * t[i + 1]) / (xs[i + k] - xs[i]);
        }
    }
    t[0]
}

struct TailSum {
    partial: Triple,
    /// partial sums after 1, 2, ... terms
    history: Vec<Triple>,
    small_streak: u32,
    converged: bool,
    last_ratio: f64,
    prev_norm: f64,
}

impl TailSum {
    fn new() -> Self {
        TailSum {
            partial: Triple::default(),
            history: Vec::new(),
            small_streak: 0,
            converged: false,
            last_ratio: 0.0,
            prev_norm: 0.0,
        }
    }

    fn push(&mut self, term: Triple, opts: &EvalOptions, scale: f64) {
        self.partial.add(term);
        let t = term.norm();
        if self.prev_norm > 0.0 {
            self.last_ratio = t / self.prev_norm;
        }
        self.prev_norm = t;
        self.history.push(self.partial);
        let floor = opts.abs_tol.max(opts.rel_tol * self.partial.norm().max(scale));
        if t <= floor {
            self.small_streak += 1;
            if self.small_streak >= 3 {
                self.converged = true;
            }
        } else {
            self.small_streak = 0;
        }
    }

    /// Tail terms decay like `m^{-2}(1 + e1/m + ...)`, so the partial sums are
    /// asymptotically polynomial in `1/m`: extrapolate them to `1/m = 0`,
    /// estimating the error from a second extrapolation on fewer nodes.
    fn extrapolate(&self, nodes: usize) -> Option<(Triple, f64)> {
        let m_max = self.history.len();
        if m_max < 48 {
            return None;
        }
        let m_min = (2 * m_max / 9).max(24);
        let step = ((m_max - m_min) / (nodes - 1)).max(1);
        let idx: Vec<usize> = (0..nodes).map(|j| m_min + j * step).take_while(|&m| m <= m_max).collect();
        if idx.len() < 8 {
            return None;
        }
        let xs: Vec<f64> = idx.iter().map(|&m| 1.0 / m as f64).collect();
        let comp = |pick: fn(&Triple) -> Complex64| -> (Complex64, f64) {
            let ys: Vec<Complex64> = idx.iter().map(|&m| pick(&self.history[m - 1])).collect();
            let full = neville_to_zero(&xs, &ys);
            let drop2 = neville_to_zero(&xs[..xs.len() - 2], &ys[..ys.len() - 2]);
            (full, (full - drop2).norm())
        };
        let (f, ef) = comp(|t| t.f);
        let (df, edf) = comp(|t| t.df);
        let (d2f, ed2f) = comp(|t| t.d2f);
        Some((Triple { f, df, d2f }, ef.max(edf).max(ed2f)))
    }
}

/// Series part (value and two derivatives with respect to the series variable
/// `w`) of a solution at `w`.
fn series_part(m: &SeriesSolution, coeffs: &CoefficientSequence, w: Complex64, opts: &EvalOptions) -> Result<Triple> {
    // rightward
    let mut right = TailSum::new();
    let n_hi = coeffs.n_max();
    let mut scale = 0.0f64;
    for n in 0..=n_hi {
        let t = term_at(m, coeffs, n, w)?;
        scale = scale.max(t.norm());
        right.push(t, opts, scale);
        if right.converged {
            break;
        }
        if n == n_hi && !right.converged {
            if right.last_ratio >= 1.0 {
                return Err(EvalError::TailNonDecay { z: w, ratio: right.last_ratio, direction: "n -> +inf" });
            }
            // geometric but slow: estimate the remainder and give up only if
            // it matters
            let rem = right.prev_norm * right.last_ratio / (1.0 - right.last_ratio).max(1e-3);
            let tol = opts.abs_tol.max(opts.rel_tol * right.partial.norm().max(scale)) * 1e3;
            if rem > tol {
                return Err(EvalError::TailEstimate { z: w, estimate: rem, tol });
            }
        }
    }
    let mut total = right.partial;

    if coeffs.n_min < 0 {
        let mut left = TailSum::new();
        let n_lo = coeffs.n_min.max(-(opts.max_left as i64));
        for n in (n_lo..=-1).rev() {
            let t = term_at(m, coeffs, n, w)?;
            scale = scale.max(t.norm());
            left.push(t, opts, scale);
            if left.converged {
                break;
            }
        }
        if left.converged {
            total.add(left.partial);
        } else {
            if left.last_ratio > 1.02 {
                return Err(EvalError::TailNonDecay { z: w, ratio: left.last_ratio, direction: "n -> -inf" });
            }
            let (acc, est) = left
                .extrapolate(opts.tail_nodes)
                .ok_or(EvalError::TailNonDecay { z: w, ratio: left.last_ratio, direction: "n -> -inf" })?;
            // slow tails are resummed, not summed; accept the extrapolation
            // when its self-estimate is far below the member's working scale
            let tol = (1e-8 * (total.norm() + acc.norm() + scale)).max(opts.abs_tol);
            if est > tol {
                return Err(EvalError::TailEstimate { z: w, estimate: est, tol });
            }
            total.add(acc);
        }
    }
    Ok(total)
}

/// Evaluate a solution and its first two derivatives at `z`.
///
/// Points outside the member's declared convergence domain are rejected, not
/// silently evaluated.
pub fn evaluate_with_derivatives(m: &SeriesSolution, z: Complex64, opts: &EvalOptions) -> Result<Deriv3> {
    let coeffs = m.coeffs.as_ref().ok_or(EvalError::MissingCoefficients)?;
    let w = m.var.apply(z);
    if !m.domain.contains(w) {
        return Err(EvalError::DomainViolation { z });
    }
    let s = series_part(m, coeffs, w, opts)?;
    let slope = m.var.slope();
    let lp = m.prefactor.value_at(z);
    let dl = m.prefactor.dlog(z);
    let ddl = m.prefactor.ddlog(z);
    let u = lp * s.f;
    let du = lp * (dl * s.f + slope * s.df);
    let d2u = lp * ((dl * dl + ddl) * s.f + 2.0 * dl * slope * s.df + s.d2f);
    Ok(Deriv3 { u, du, d2u })
}

/// Plain value at `z`.
pub fn evaluate(m: &SeriesSolution, z: Complex64, opts: &EvalOptions) -> Result<Complex64> {
    Ok(evaluate_with_derivatives(m, z, opts)?.u)
}

/// The three terms of the equation applied to `(u, u', u'')` at `z`; their sum
/// is the residual, their max modulus the cancellation-aware scale.
fn ode_terms(params: &EquationParams, z: Complex64, d: &Deriv3) -> [Complex64; 3] {
    match params {
        EquationParams::Che(p) => {
            let zz = z * (z - p.z0);
            [
                zz * d.d2u,
                (p.b1 + p.b2 * z) * d.du,
                (p.b3 - 2.0 * p.eta * p.omega * (z - p.z0) + p.omega * p.omega * zz) * d.u,
            ]
        }
        EquationParams::Dche(p) => [
            z * z * d.d2u,
            (p.b1 + p.b2 * z) * d.du,
            (p.b3 - 2.0 * p.eta * p.omega * z + p.omega * p.omega * z * z) * d.u,
        ],
        EquationParams::InceChe(p) => [
            z * (z - p.z0) * d.d2u,
            (p.b1 + p.b2 * z) * d.du,
            (p.b3 + p.q * (z - p.z0)) * d.u,
        ],
        EquationParams::InceDche(p) => {
            [z * z * d.d2u, (p.b1 + p.b2 * z) * d.du, (p.b3 + p.q * z) * d.u]
        }
    }
}

/// One row of a residual report.
#[derive(Debug, Clone, Copy)]
pub struct ResidualEntry {
    pub z: Complex64,
    pub residual: f64,
    pub scale: f64,
    pub relative: f64,
    pub pass: bool,
}

/// Per-point ODE residuals of a solution with a max-relative summary.
#[derive(Debug, Clone)]
pub struct ResidualReport {
    pub entries: Vec<ResidualEntry>,
    pub max_relative: f64,
    pub tolerance: f64,
}

impl ResidualReport {
    pub fn pass(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }
}

/// Residual of the kind-appropriate operator applied to the solution at `z`,
/// scaled by the largest of the three operator terms so that cancellation
/// regions cannot produce false passes.
pub fn ode_residual(params: &EquationParams, m: &SeriesSolution, z: Complex64, tol: f64, opts: &EvalOptions) -> Result<ResidualEntry> {
    for s in params.singular_points() {
        if (z - s).norm() < 1e-12 {
            return Err(EvalError::SingularPoint { z });
        }
    }
    let d = evaluate_with_derivatives(m, z, opts)?;
    let t = ode_terms(params, z, &d);
    let scale = t[0].norm().max(t[1].norm()).max(t[2].norm());
    let residual = (t[0] + t[1] + t[2]).norm();
    let relative = if scale == 0.0 { 0.0 } else { residual / scale };
    Ok(ResidualEntry { z, residual, scale, relative, pass: relative < tol })
}

/// Residual report of one solution over a set of points.
pub fn residual_report(
    params: &EquationParams,
    m: &SeriesSolution,
    points: &[Complex64],
    tol: f64,
    opts: &EvalOptions,
) -> Result<ResidualReport> {
    let mut entries = Vec::with_capacity(points.len());
    let mut max_relative: f64 = 0.0;
    for &z in points {
        let e = ode_residual(params, m, z, tol, opts)?;
        max_relative = max_relative.max(e.relative);
        entries.push(e);
    }
    Ok(ResidualReport { entries, max_relative, tolerance: tol })
}

/// Result of expressing the regular-basis member through the two
/// irregular-basis members.
#[derive(Debug, Clone, Copy)]
pub struct Connection {
    pub a: Complex64,
    pub b: Complex64,
    pub max_defect: f64,
    /// closed-form coefficients when the set admits them
    pub analytic: Option<(Complex64, Complex64)>,
}

/// Default anchor points: `3 r exp(+-i pi/4)` with `r` the inner convergence
/// radius (or 1 for the double-confluent kinds), keeping both exponentials
/// comparable along the fit.
pub fn default_anchors(params: &EquationParams) -> [Complex64; 2] {
    let r = params.inner_radius().max(1.0) * 3.0;
    let ph = Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4);
    [r * ph, r * ph.conj()]
}

/// Closed-form connection coefficients of a hypergeometric-basis set, read
/// off the term-wise analytic continuation with the library branch
/// convention, valid for points with `Im(y) > 0`:
///
/// `A = exp(i pi a)`, `B = exp(i pi (a - c(nu))) / Gamma(a)`.
pub fn connect_analytic(set: &SolutionSet) -> Option<(Complex64, Complex64)> {
    match &set.members[0].basis {
        Basis::PhiTilde { a, c, .. } => {
            let av = a.base;
            let ipi = Complex64::new(0.0, std::f64::consts::PI);
            let aa = (ipi * av).exp();
            let bb = (ipi * (av - c.at(set.nu))).exp() * specfun::recip_gamma(av);
            Some((aa, bb))
        }
        Basis::Cylinder { .. } => Some((Complex64::new(0.5, 0.0), Complex64::new(0.5, 0.0))),
        _ => None,
    }
}

/// Fit `U_regular = A U_irr1 + B U_irr2` at the two anchors and report the
/// worst relative defect over the check points.
pub fn connect(
    set: &SolutionSet,
    anchors: [Complex64; 2],
    checks: &[Complex64],
    opts: &EvalOptions,
) -> Result<Connection> {
    assert!(set.members.len() >= 3, "connection needs the full three-member set");
    let (u, v, w) = (&set.members[0], &set.members[1], &set.members[2]);
    let mut rows = [[Complex64::default(); 3]; 2];
    for (i, &z) in anchors.iter().enumerate() {
        rows[i] = [
            evaluate(v, z, opts)?,
            evaluate(w, z, opts)?,
            evaluate(u, z, opts)?,
        ];
    }
    let det = rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0];
    let big = rows
        .iter()
        .flat_map(|r| r.iter().take(2))
        .map(|x| x.norm())
        .fold(0.0, f64::max);
    if det.norm() < 1e-13 * big * big {
        return Err(EvalError::AnchorDegenerate { cond: det.norm() / (big * big).max(1e-300) });
    }
    let a = (rows[0][2] * rows[1][1] - rows[1][2] * rows[0][1]) / det;
    let b = (rows[0][0] * rows[1][2] - rows[1][0] * rows[0][2]) / det;
    let mut max_defect: f64 = 0.0;
    for &z in checks {
        let lu = evaluate(u, z, opts)?;
        let lv = evaluate(v, z, opts)?;
        let lw = evaluate(w, z, opts)?;
        let defect = (lu - a * lv - b * lw).norm();
        let scale = lu.norm().max((a * lv).norm()).max((b * lw).norm()).max(1e-300);
        max_defect = max_defect.max(defect / scale);
    }
    Ok(Connection { a, b, max_defect, analytic: connect_analytic(set) })
}

/// Measured and predicted two-sided term ratios of a series member at `z`.
#[derive(Debug, Clone, Copy)]
pub struct ConvergenceDiagnostics {
    pub n: i64,
    pub measured_right: Complex64,
    pub measured_left: Complex64,
    /// coefficient-only tail ratios at the same indices
    pub coeff_right: Complex64,
    pub coeff_left: Complex64,
}

/// Term ratios `t_{n+1}/t_n` at `n = +window` and `t_{n-1}/t_n` at
/// `n = -window`, with the coefficient ratios taken from the stable
/// continued-fraction recursions (never from possibly-underflowed stored
/// values).
pub fn convergence_ratios(
    set: &SolutionSet,
    member: &SeriesSolution,
    z: Complex64,
    window: i64,
) -> Result<ConvergenceDiagnostics> {
    assert!(window >= 4, "window too small");
    let w = member.var.apply(z);
    let rec = &set.recurrence;
    let runway = 80usize;
    let cr = minimal_ratio_right(rec, member.nu, window, runway);
    let cl = minimal_ratio_left(rec, member.nu, -window, runway);

    let ratio_at = |n: i64, coeff_ratio: Complex64, toward_right: bool| -> Result<Complex64> {
        let x = member.nu + n as f64;
        let step = if toward_right { 1.0 } else { -1.0 };
        // far out on the lattice the raw Psi values can overflow f64; evaluate
        // both neighbors under one common log shift so only their ratio matters
        let (b0, b1) = match &member.basis {
            Basis::Psi { a, c, y_coef } => {
                let y = *y_coef * w;
                let shift = psi_log_shift(a.at(x), c.at(x), y);
                let v0 = specfun::psi_irregular_scaled(a.at(x), c.at(x), y, shift)?;
                let xs = x + step;
                let v1 = specfun::psi_irregular_scaled(a.at(xs), c.at(xs), y, shift)?;
                (v0, v1)
            }
            _ => {
                let v0 = basis_triple(member, n, x, w)?.f;
                let v1 = basis_triple(member, n + step as i64, x + step, w)?.f;
                (v0, v1)
            }
        };
        let mut r = coeff_ratio * b1 / b0;
        if member.alternating {
            r = -r;
        }
        if let Some(link) = &member.gamma_weight {
            // weight ratio Gamma(link(x))/Gamma(link(x +/- 1))
            if toward_right {
                r /= link.at(x);
            } else {
                r *= link.at(x - 1.0);
            }
        }
        Ok(r)
    };

    Ok(ConvergenceDiagnostics {
        n: window,
        measured_right: ratio_at(window, cr, true)?,
        measured_left: ratio_at(-window, cl, false)?,
        coeff_right: cr,
        coeff_left: cl,
    })
}

/// Negative of the dominant continuation-branch log prefactor of
/// `Psi(a,c;y)`, used to keep far-lattice evaluations representable.
fn psi_log_shift(a: Complex64, c: Complex64, y: Complex64) -> Complex64 {
    let lg1 = match (specfun::ln_gamma(1.0 - c), specfun::ln_gamma(a - c + 1.0)) {
        (Ok(p), Ok(q)) => p - q,
        _ => Complex64::new(f64::NEG_INFINITY, 0.0),
    };
    let lg2 = match (specfun::ln_gamma(c - 1.0), specfun::ln_gamma(a)) {
        (Ok(p), Ok(q)) => p - q + (1.0 - c) * y.ln(),
        _ => Complex64::new(f64::NEG_INFINITY, 0.0),
    };
    let dom = if lg1.re >= lg2.re { lg1 } else { lg2 };
    if dom.re.abs() > 200.0 {
        -dom
    } else {
        Complex64::new(0.0, 0.0)
    }
}

/// Attach solved coefficients to every member of a set (they share one
/// sequence).
pub fn attach_coefficients(set: &mut SolutionSet, seq: CoefficientSequence) {
    let arc = Arc::new(seq);
    for m in set.members.iter_mut() {
        m.coeffs = Some(arc.clone());
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;
    use crate::params::CheParams;
    use crate::recurrence::CoefficientSequence;
    use crate::sets::fundamental_set_che;

    #[test]
    fn tail_extrapolation_reference_sum() {
        // sum m^{-2}(1 + a1/m + a2/m^2 + a3/m^3) = zeta(2) + a1 zeta(3)
        //   + a2 zeta(4) + a3 zeta(5): the polynomial tail model the slow
        // series directions follow
        let (a1, a2, a3) = (3.7, -2.1, 5.3);
        let exact = 1.6449340668482264 + a1 * 1.2020569031595943 + a2 * 1.0823232337111382
            + a3 * 1.0369277551433699;
        let mut tail = TailSum::new();
        let opts = EvalOptions::default();
        for m in 1..=148i64 {
            let mf = m as f64;
            let t = (1.0 + a1 / mf + a2 / (mf * mf) + a3 / (mf * mf * mf)) / (mf * mf);
            tail.push(Triple { f: c64(t, 0.0), df: c64(0.5 * t, 0.0), d2f: Complex64::default() }, &opts, 1.0);
        }
        assert!(!tail.converged);
        let (v, est) = tail.extrapolate(opts.tail_nodes).unwrap();
        assert!((v.f.re - exact).abs() < 4e-9, "extrapolated {} vs {exact} (est {est:.2e})", v.f.re);
        assert!((v.df.re - 0.5 * exact).abs() < 4e-9);
        assert!(est < 1e-8);
    }

    #[test]
    fn zero_coefficients_evaluate_to_zero() {
        let p = CheParams::new(c64(0.7, 0.1), c64(1.3, -0.2), c64(0.4, 0.3), c64(1.0, 0.0), c64(0.9, 0.2), c64(-0.5, 0.4)).unwrap();
        let mut set = fundamental_set_che(&p, c64(0.31, 0.07));
        let seq = CoefficientSequence { n_min: -4, values: vec![Complex64::default(); 9] };
        attach_coefficients(&mut set, seq);
        let v = evaluate(&set.members[0], c64(0.4, 0.2), &EvalOptions::default()).unwrap();
        assert_eq!(v.norm(), 0.0);
    }

    #[test]
    fn single_coefficient_reproduces_one_basis_term() {
        // c_0 = 1 only: U1 = e^{-i omega z} PhiTilde(B2/2 - i eta, nu + B2; 2 i omega z)
        let p = CheParams::new(c64(0.7, 0.1), c64(1.3, -0.2), c64(0.4, 0.3), c64(1.0, 0.0), c64(0.9, 0.2), c64(-0.5, 0.4)).unwrap();
        let nu = c64(0.31, 0.07);
        let mut set = fundamental_set_che(&p, nu);
        let mut values = vec![Complex64::default(); 9];
        values[4] = c64(1.0, 0.0);
        attach_coefficients(&mut set, CoefficientSequence { n_min: -4, values });
        let z = c64(0.4, 0.2);
        let v = evaluate(&set.members[0], z, &EvalOptions::default()).unwrap();
        let iw = p.i_omega();
        let expect = (-iw * z).exp()
            * specfun::phi_tilde(p.b2 / 2.0 - p.i_eta(), nu + p.b2, 2.0 * iw * z).unwrap()
            / specfun::ln_gamma(nu + p.i_eta() + p.b2 / 2.0).unwrap().exp();
        assert!((v - expect).norm() <= 1e-12 * expect.norm());
    }

    #[test]
    fn domain_violation_is_flagged_not_evaluated() {
        let p = CheParams::new(c64(0.7, 0.1), c64(1.3, -0.2), c64(0.4, 0.3), c64(1.0, 0.0), c64(0.9, 0.2), c64(-0.5, 0.4)).unwrap();
        let mut set = fundamental_set_che(&p, c64(0.31, 0.07));
        let seq = CoefficientSequence { n_min: 0, values: vec![c64(1.0, 0.0)] };
        attach_coefficients(&mut set, seq);
        // U1inf converges only for |z| > |z0| = 1
        let err = evaluate(&set.members[1], c64(0.3, 0.1), &EvalOptions::default());
        assert!(matches!(err, Err(EvalError::DomainViolation { .. })));
    }

    #[test]
    fn constant_solution_residual_is_the_zeroth_term() {
        // U = 1: residual of the CHE operator is B3 - 2 eta omega (z - z0) + omega^2 z (z - z0)
        let p = CheParams::new(c64(0.7, 0.1), c64(1.3, -0.2), c64(0.4, 0.3), c64(1.0, 0.0), c64(0.9, 0.2), c64(-0.5, 0.4)).unwrap();
        let params = EquationParams::Che(p);
        let z = c64(1.7, 0.9);
        let d = Deriv3 { u: c64(1.0, 0.0), du: Complex64::default(), d2u: Complex64::default() };
        let t = ode_terms(&params, z, &d);
        let expect = p.b3 - 2.0 * p.eta * p.omega * (z - p.z0) + p.omega * p.omega * z * (z - p.z0);
        assert!((t[0] + t[1] + t[2] - expect).norm() < 1e-14 * expect.norm());
    }
}
