//! Classifier for equations in Schroedinger (normal) form `y'' + Q(z) y = 0`.
//!
//! `Q` is described by its partial-fraction skeleton: a polynomial part plus
//! poles of given orders at given finite locations. The classifier matches the
//! pole/degree signature against the five Heun-class templates:
//!
//! | class            | finite poles              | polynomial part |
//! |------------------|---------------------------|-----------------|
//! | general          | 3 locations, order <= 2   | none            |
//! | confluent        | 2 locations, order <= 2   | constant        |
//! | double-confluent | 1 location, order <= 4    | constant        |
//! | biconfluent      | 1 location, order <= 2    | degree 1..2     |
//! | triconfluent     | none                      | degree 1..4     |
//!
//! Anything outside the table is `NotHeun`. Parameter constraints among the
//! template coefficients are not checked; only the singularity skeleton is.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Pole {
    /// location in the complex plane
    pub re: f64,
    pub im: f64,
    /// pole order, >= 1
    pub order: u32,
}

/// Partial-fraction skeleton of `Q(z)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
pub struct NormalFormQ {
    /// degree of the polynomial part; `None` when the polynomial part is zero,
    /// `Some(0)` for a nonzero constant
    pub poly_degree: Option<u32>,
    pub poles: Vec<Pole>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum HeunClass {
    General,
    Confluent,
    DoubleConfluent,
    Biconfluent,
    Triconfluent,
    NotHeun,
}

impl std::fmt::Display for HeunClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            HeunClass::General => "general",
            HeunClass::Confluent => "confluent",
            HeunClass::DoubleConfluent => "double-confluent",
            HeunClass::Biconfluent => "biconfluent",
            HeunClass::Triconfluent => "triconfluent",
            HeunClass::NotHeun => "not-heun",
        };
        f.write_str(s)
    }
}

impl NormalFormQ {
    /// Canonical form: poles merged by location (max order wins), sorted.
    /// The classification is therefore independent of listing order.
    pub fn canonical(&self) -> NormalFormQ {
        let mut poles: Vec<Pole> = Vec::new();
        for p in &self.poles {
            if p.order == 0 {
                continue;
            }
            if let Some(existing) = poles
                .iter_mut()
                .find(|q| (q.re - p.re).hypot(q.im - p.im) < 1e-12)
            {
                existing.order = existing.order.max(p.order);
            } else {
                poles.push(*p);
            }
        }
        poles.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());
        NormalFormQ { poly_degree: self.poly_degree, poles }
    }
}

/// Match the singularity skeleton of `Q` against the five templates.
pub fn classify_normal_form(q: &NormalFormQ) -> HeunClass {
    let q = q.canonical();
    let n_loc = q.poles.len();
    let max_order = q.poles.iter().map(|p| p.order).max().unwrap_or(0);
    let deg = q.poly_degree;

    match (n_loc, max_order, deg) {
        (3, 1..=2, None) => HeunClass::General,
        (2, 1..=2, Some(0)) => HeunClass::Confluent,
        (1, 1..=4, Some(0)) => HeunClass::DoubleConfluent,
        (1, 1..=2, Some(1..=2)) => HeunClass::Biconfluent,
        (0, _, Some(1..=4)) => HeunClass::Triconfluent,
        _ => HeunClass::NotHeun,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pole(re: f64, im: f64, order: u32) -> Pole {
        Pole { re, im, order }
    }

    #[test]
    fn template_examples() {
        // A z^4 + ... + E: one irregular point at infinity
        let tri = NormalFormQ { poly_degree: Some(4), poles: vec![] };
        assert_eq!(classify_normal_form(&tri), HeunClass::Triconfluent);

        // A + B/z + C/(z-1) + D/z^2 + E/(z-1)^2
        let con = NormalFormQ {
            poly_degree: Some(0),
            poles: vec![pole(0.0, 0.0, 1), pole(0.0, 0.0, 2), pole(1.0, 0.0, 1), pole(1.0, 0.0, 2)],
        };
        assert_eq!(classify_normal_form(&con), HeunClass::Confluent);

        // A/z + B/(z-1) + C/(z-a) + double poles at the same spots
        let gen = NormalFormQ {
            poly_degree: None,
            poles: vec![pole(0.0, 0.0, 2), pole(1.0, 0.0, 2), pole(2.5, 0.0, 2)],
        };
        assert_eq!(classify_normal_form(&gen), HeunClass::General);

        // A + B/z + ... + E/z^4
        let dc = NormalFormQ { poly_degree: Some(0), poles: vec![pole(0.0, 0.0, 4)] };
        assert_eq!(classify_normal_form(&dc), HeunClass::DoubleConfluent);

        // A z^2 + B z + C + D/z + E/z^2
        let bi = NormalFormQ { poly_degree: Some(2), poles: vec![pole(0.0, 0.0, 2)] };
        assert_eq!(classify_normal_form(&bi), HeunClass::Biconfluent);

        // 1/z^5 exceeds every template order
        let no = NormalFormQ { poly_degree: None, poles: vec![pole(0.0, 0.0, 5)] };
        assert_eq!(classify_normal_form(&no), HeunClass::NotHeun);
    }

    #[test]
    fn classifier_is_total_and_order_stable() {
        let a = NormalFormQ {
            poly_degree: None,
            poles: vec![pole(1.0, 0.0, 2), pole(0.0, 0.0, 1), pole(2.5, 0.0, 2), pole(0.0, 0.0, 2)],
        };
        let mut b = a.clone();
        b.poles.reverse();
        assert_eq!(classify_normal_form(&a), classify_normal_form(&b));
        assert_eq!(classify_normal_form(&a), HeunClass::General);

        // degree 5 polynomial: not in any template
        let big = NormalFormQ { poly_degree: Some(5), poles: vec![] };
        assert_eq!(classify_normal_form(&big), HeunClass::NotHeun);
        // three locations plus a constant: no template carries both
        let mixed = NormalFormQ {
            poly_degree: Some(0),
            poles: vec![pole(0.0, 0.0, 1), pole(1.0, 0.0, 1), pole(2.0, 0.0, 1)],
        };
        assert_eq!(classify_normal_form(&mixed), HeunClass::NotHeun);
    }
}
