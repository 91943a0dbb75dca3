//! Parameter model for the four equations.
//!
//! All four share the constants `B1, B2, B3`; the confluent forms add the
//! singularity position `z0` and the pair `(omega, eta)`, the Whittaker-Ince
//! forms replace `(omega, eta)` by the single constant `q`:
//!
//! ```text
//! CHE:      z(z-z0) U'' + (B1 + B2 z) U' + [B3 - 2 eta omega (z-z0) + omega^2 z(z-z0)] U = 0
//! DCHE:     z^2     U'' + (B1 + B2 z) U' + [B3 - 2 eta omega z + omega^2 z^2] U = 0
//! Ince-CHE: z(z-z0) U'' + (B1 + B2 z) U' + [B3 + q (z-z0)] U = 0
//! Ince-DCHE:z^2     U'' + (B1 + B2 z) U' + (B3 + q z) U = 0
//! ```
//!
//! Degenerate parameter choices (`omega = 0`, `q = 0`, `B1 = 0` where
//! forbidden) are hard construction errors: those equations change type and
//! are served by hypergeometric-class functions, not by this crate.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, thiserror::Error)]
pub enum ParamError {
    #[error("CHE requires omega != 0")]
    CheOmegaZero,
    #[error("DCHE requires B1 != 0 and omega != 0 (degenerate otherwise)")]
    DcheDegenerate,
    #[error("the Whittaker-Ince limit of the CHE requires q != 0")]
    InceCheQZero,
    #[error("the Whittaker-Ince limit of the DCHE requires q != 0 and B1 != 0")]
    InceDcheDegenerate,
    #[error("{0} expected, got {1}")]
    KindMismatch(&'static str, EquationKind),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EquationKind {
    Che,
    Dche,
    InceChe,
    InceDche,
}

impl std::fmt::Display for EquationKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            EquationKind::Che => "CHE",
            EquationKind::Dche => "DCHE",
            EquationKind::InceChe => "Ince-CHE",
            EquationKind::InceDche => "Ince-DCHE",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CheParams {
    pub b1: Complex64,
    pub b2: Complex64,
    pub b3: Complex64,
    pub z0: Complex64,
    pub omega: Complex64,
    pub eta: Complex64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DcheParams {
    pub b1: Complex64,
    pub b2: Complex64,
    pub b3: Complex64,
    pub omega: Complex64,
    pub eta: Complex64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InceCheParams {
    pub b1: Complex64,
    pub b2: Complex64,
    pub b3: Complex64,
    pub z0: Complex64,
    pub q: Complex64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InceDcheParams {
    pub b1: Complex64,
    pub b2: Complex64,
    pub b3: Complex64,
    pub q: Complex64,
}

/// Tagged union over the four equation kinds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EquationParams {
    Che(CheParams),
    Dche(DcheParams),
    InceChe(InceCheParams),
    InceDche(InceDcheParams),
}

impl CheParams {
    pub fn new(
        b1: Complex64,
        b2: Complex64,
        b3: Complex64,
        z0: Complex64,
        omega: Complex64,
        eta: Complex64,
    ) -> Result<Self, ParamError> {
        if omega.norm() == 0.0 {
            return Err(ParamError::CheOmegaZero);
        }
        Ok(CheParams { b1, b2, b3, z0, omega, eta })
    }

    /// `i * eta` shows up in almost every coefficient.
    pub fn i_eta(&self) -> Complex64 {
        Complex64::i() * self.eta
    }

    /// `i * omega`.
    pub fn i_omega(&self) -> Complex64 {
        Complex64::i() * self.omega
    }

    /// `B1 / z0`; only meaningful when `z0 != 0`.
    pub fn b1_over_z0(&self) -> Complex64 {
        self.b1 / self.z0
    }
}

impl DcheParams {
    pub fn new(
        b1: Complex64,
        b2: Complex64,
        b3: Complex64,
        omega: Complex64,
        eta: Complex64,
    ) -> Result<Self, ParamError> {
        if omega.norm() == 0.0 || b1.norm() == 0.0 {
            return Err(ParamError::DcheDegenerate);
        }
        Ok(DcheParams { b1, b2, b3, omega, eta })
    }

    pub fn i_eta(&self) -> Complex64 {
        Complex64::i() * self.eta
    }

    pub fn i_omega(&self) -> Complex64 {
        Complex64::i() * self.omega
    }
}

impl InceCheParams {
    pub fn new(
        b1: Complex64,
        b2: Complex64,
        b3: Complex64,
        z0: Complex64,
        q: Complex64,
    ) -> Result<Self, ParamError> {
        if q.norm() == 0.0 {
            return Err(ParamError::InceCheQZero);
        }
        Ok(InceCheParams { b1, b2, b3, z0, q })
    }

    pub fn b1_over_z0(&self) -> Complex64 {
        self.b1 / self.z0
    }
}

impl InceDcheParams {
    pub fn new(b1: Complex64, b2: Complex64, b3: Complex64, q: Complex64) -> Result<Self, ParamError> {
        if q.norm() == 0.0 || b1.norm() == 0.0 {
            return Err(ParamError::InceDcheDegenerate);
        }
        Ok(InceDcheParams { b1, b2, b3, q })
    }
}

impl EquationParams {
    pub fn kind(&self) -> EquationKind {
        match self {
            EquationParams::Che(_) => EquationKind::Che,
            EquationParams::Dche(_) => EquationKind::Dche,
            EquationParams::InceChe(_) => EquationKind::InceChe,
            EquationParams::InceDche(_) => EquationKind::InceDche,
        }
    }

    pub fn as_che(&self) -> Result<&CheParams, ParamError> {
        match self {
            EquationParams::Che(p) => Ok(p),
            other => Err(ParamError::KindMismatch("CHE", other.kind())),
        }
    }

    pub fn as_ince_che(&self) -> Result<&InceCheParams, ParamError> {
        match self {
            EquationParams::InceChe(p) => Ok(p),
            other => Err(ParamError::KindMismatch("Ince-CHE", other.kind())),
        }
    }

    /// The finite singular points of the equation, where the ODE residual is
    /// not defined.
    pub fn singular_points(&self) -> Vec<Complex64> {
        match self {
            EquationParams::Che(p) => vec![Complex64::new(0.0, 0.0), p.z0],
            EquationParams::InceChe(p) => vec![Complex64::new(0.0, 0.0), p.z0],
            EquationParams::Dche(_) | EquationParams::InceDche(_) => vec![Complex64::new(0.0, 0.0)],
        }
    }

    /// Radius of the inner convergence boundary: |z0| for the confluent
    /// equations, 0 for the double-confluent ones.
    pub fn inner_radius(&self) -> f64 {
        match self {
            EquationParams::Che(p) => p.z0.norm(),
            EquationParams::InceChe(p) => p.z0.norm(),
            _ => 0.0,
        }
    }
}

/// Leaver limit `z0 -> 0`: converts a CHE into the DCHE and an Ince-CHE into
/// the Ince-DCHE, keeping the remaining constants. Fails when the target
/// kind's `B1 != 0` invariant would be violated.
pub fn leaver_limit(params: &EquationParams) -> Result<EquationParams, ParamError> {
    match params {
        EquationParams::Che(p) => Ok(EquationParams::Dche(DcheParams::new(p.b1, p.b2, p.b3, p.omega, p.eta)?)),
        EquationParams::InceChe(p) => {
            Ok(EquationParams::InceDche(InceDcheParams::new(p.b1, p.b2, p.b3, p.q)?))
        }
        other => Err(ParamError::KindMismatch("CHE or Ince-CHE", other.kind())),
    }
}

/// Whittaker-Ince limit `omega -> 0, eta -> inf, 2 eta omega = -q`: converts a
/// CHE into the Ince-CHE and a DCHE into the Ince-DCHE with `q = -2 eta omega`.
pub fn whittaker_ince_limit(params: &EquationParams) -> Result<EquationParams, ParamError> {
    match params {
        EquationParams::Che(p) => {
            let q = -2.0 * p.eta * p.omega;
            Ok(EquationParams::InceChe(InceCheParams::new(p.b1, p.b2, p.b3, p.z0, q)?))
        }
        EquationParams::Dche(p) => {
            let q = -2.0 * p.eta * p.omega;
            Ok(EquationParams::InceDche(InceDcheParams::new(p.b1, p.b2, p.b3, q)?))
        }
        other => Err(ParamError::KindMismatch("CHE or DCHE", other.kind())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;

    fn sample_che() -> EquationParams {
        EquationParams::Che(
            CheParams::new(
                c64(0.7, 0.1),
                c64(1.3, -0.2),
                c64(0.4, 0.3),
                c64(1.0, 0.0),
                c64(0.9, 0.2),
                c64(-0.5, 0.4),
            )
            .unwrap(),
        )
    }

    #[test]
    fn invariants_are_enforced() {
        assert!(CheParams::new(c64(1.0, 0.0), c64(1.0, 0.0), c64(1.0, 0.0), c64(1.0, 0.0), c64(0.0, 0.0), c64(1.0, 0.0)).is_err());
        assert!(DcheParams::new(c64(0.0, 0.0), c64(1.0, 0.0), c64(1.0, 0.0), c64(1.0, 0.0), c64(1.0, 0.0)).is_err());
        assert!(InceCheParams::new(c64(1.0, 0.0), c64(1.0, 0.0), c64(1.0, 0.0), c64(1.0, 0.0), c64(0.0, 0.0)).is_err());
        assert!(InceDcheParams::new(c64(1.0, 0.0), c64(1.0, 0.0), c64(1.0, 0.0), c64(0.0, 0.0)).is_err());
    }

    #[test]
    fn leaver_is_a_tag_change() {
        let che = sample_che();
        let dche = leaver_limit(&che).unwrap();
        match (&che, &dche) {
            (EquationParams::Che(c), EquationParams::Dche(d)) => {
                assert_eq!((c.b1, c.b2, c.b3, c.omega, c.eta), (d.b1, d.b2, d.b3, d.omega, d.eta));
            }
            _ => panic!("wrong kinds"),
        }
    }

    #[test]
    fn limits_commute() {
        let che = sample_che();
        let a = whittaker_ince_limit(&leaver_limit(&che).unwrap()).unwrap();
        let b = leaver_limit(&whittaker_ince_limit(&che).unwrap()).unwrap();
        assert_eq!(a, b);
        match a {
            EquationParams::InceDche(p) => {
                let che = che.as_che().unwrap();
                assert_eq!(p.q, -2.0 * che.eta * che.omega);
            }
            _ => panic!("expected Ince-DCHE"),
        }
    }
}
