//! JSON job model behind the command-line tool. One JSON document describes
//! one job; complex numbers are `[re, im]` pairs.

use crate::params::{CheParams, DcheParams, EquationKind, EquationParams, InceCheParams, InceDcheParams};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Serialize complex numbers as `[re, im]`.
pub mod cpx {
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &Complex64, s: S) -> Result<S::Ok, S::Error> {
        [v.re, v.im].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Complex64, D::Error> {
        let [re, im] = <[f64; 2]>::deserialize(d)?;
        Ok(Complex64::new(re, im))
    }
}

/// Optional complex field.
pub mod cpx_opt {
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<Complex64>, s: S) -> Result<S::Ok, S::Error> {
        v.map(|z| [z.re, z.im]).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Complex64>, D::Error> {
        Ok(Option::<[f64; 2]>::deserialize(d)?.map(|[re, im]| Complex64::new(re, im)))
    }
}

/// List of complex points.
pub mod cpx_vec {
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &Vec<Complex64>, s: S) -> Result<S::Ok, S::Error> {
        let raw: Vec<[f64; 2]> = v.iter().map(|z| [z.re, z.im]).collect();
        raw.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Complex64>, D::Error> {
        let raw = Vec::<[f64; 2]>::deserialize(d)?;
        Ok(raw.into_iter().map(|[re, im]| Complex64::new(re, im)).collect())
    }
}

/// Equation description as it appears in a job document.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct EquationSpec {
    pub kind: EquationKind,
    #[serde(with = "cpx")]
    pub b1: Complex64,
    #[serde(with = "cpx")]
    pub b2: Complex64,
    #[serde(with = "cpx")]
    pub b3: Complex64,
    #[serde(with = "cpx_opt", default, skip_serializing_if = "Option::is_none")]
    pub z0: Option<Complex64>,
    #[serde(with = "cpx_opt", default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<Complex64>,
    #[serde(with = "cpx_opt", default, skip_serializing_if = "Option::is_none")]
    pub eta: Option<Complex64>,
    #[serde(with = "cpx_opt", default, skip_serializing_if = "Option::is_none")]
    pub q: Option<Complex64>,
}

impl EquationSpec {
    pub fn build(&self) -> Result<EquationParams, JobError> {
        let missing = |f: &'static str| JobError::MissingField { field: f, kind: self.kind };
        let p = match self.kind {
            EquationKind::Che => EquationParams::Che(CheParams::new(
                self.b1,
                self.b2,
                self.b3,
                self.z0.ok_or(missing("z0"))?,
                self.omega.ok_or(missing("omega"))?,
                self.eta.ok_or(missing("eta"))?,
            )?),
            EquationKind::Dche => EquationParams::Dche(DcheParams::new(
                self.b1,
                self.b2,
                self.b3,
                self.omega.ok_or(missing("omega"))?,
                self.eta.ok_or(missing("eta"))?,
            )?),
            EquationKind::InceChe => EquationParams::InceChe(InceCheParams::new(
                self.b1,
                self.b2,
                self.b3,
                self.z0.ok_or(missing("z0"))?,
                self.q.ok_or(missing("q"))?,
            )?),
            EquationKind::InceDche => EquationParams::InceDche(InceDcheParams::new(
                self.b1,
                self.b2,
                self.b3,
                self.q.ok_or(missing("q"))?,
            )?),
        };
        Ok(p)
    }

    pub fn from_params(p: &EquationParams) -> Self {
        match p {
            EquationParams::Che(p) => EquationSpec {
                kind: EquationKind::Che,
                b1: p.b1,
                b2: p.b2,
                b3: p.b3,
                z0: Some(p.z0),
                omega: Some(p.omega),
                eta: Some(p.eta),
                q: None,
            },
            EquationParams::Dche(p) => EquationSpec {
                kind: EquationKind::Dche,
                b1: p.b1,
                b2: p.b2,
                b3: p.b3,
                z0: None,
                omega: Some(p.omega),
                eta: Some(p.eta),
                q: None,
            },
            EquationParams::InceChe(p) => EquationSpec {
                kind: EquationKind::InceChe,
                b1: p.b1,
                b2: p.b2,
                b3: p.b3,
                z0: Some(p.z0),
                omega: None,
                eta: None,
                q: Some(p.q),
            },
            EquationParams::InceDche(p) => EquationSpec {
                kind: EquationKind::InceDche,
                b1: p.b1,
                b2: p.b2,
                b3: p.b3,
                z0: None,
                omega: None,
                eta: None,
                q: Some(p.q),
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Task {
    SolveNu,
    SolveConstant,
    Eval,
    Validate,
    Connect,
    Spectrum,
    Mathieu,
    Whe,
    Classify,
    Limits,
}

#[derive(Debug, Clone, thiserror::Error)]
pub enum JobError {
    #[error("could not parse job document: {0}")]
    Parse(String),
    #[error("field {field} is required for kind {kind}")]
    MissingField { field: &'static str, kind: EquationKind },
    #[error("job task {doc:?} does not match subcommand task {cmd:?}")]
    TaskMismatch { doc: Task, cmd: Task },
    #[error("job is missing required entry: {0}")]
    Missing(&'static str),
    #[error("validity condition failed: {0}")]
    Validity(String),
    #[error("numerical non-convergence: {0}")]
    NonConvergence(String),
}

impl From<crate::params::ParamError> for JobError {
    fn from(e: crate::params::ParamError) -> Self {
        JobError::Validity(e.to_string())
    }
}

impl JobError {
    /// Exit code contract: 2 parse, 3 validity, 4 non-convergence.
    pub fn exit_code(&self) -> i32 {
        match self {
            JobError::Parse(_) | JobError::MissingField { .. } | JobError::TaskMismatch { .. } | JobError::Missing(_) => 2,
            JobError::Validity(_) => 3,
            JobError::NonConvergence(_) => 4,
        }
    }
}

fn default_set() -> usize {
    1
}

/// One job document.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct JobSpec {
    pub equation: Option<EquationSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub task: Option<Task>,
    /// solution-set selector 1..=4
    #[serde(default = "default_set")]
    pub set: usize,
    /// free transformation word, e.g. ["T1","T4"]; overrides `set` when given
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub word: Option<Vec<String>>,
    #[serde(with = "cpx_opt", default, skip_serializing_if = "Option::is_none")]
    pub nu: Option<Complex64>,
    #[serde(with = "cpx_opt", default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<Complex64>,
    #[serde(with = "cpx_vec", default, skip_serializing_if = "Vec::is_empty")]
    pub seeds: Vec<Complex64>,
    #[serde(with = "cpx_vec", default, skip_serializing_if = "Vec::is_empty")]
    pub points: Vec<Complex64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    /// finite-series order for spectrum jobs
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    /// Mathieu / WHE inputs
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mathieu: Option<MathieuJob>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub whe: Option<WheJob>,
    /// normal-form classification input
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normal_form: Option<crate::normal_form::NormalFormQ>,
    /// which limit chain to apply for `limits` jobs: "leaver",
    /// "whittaker-ince" or "both"
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub limit: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct MathieuJob {
    #[serde(with = "cpx")]
    pub a: Complex64,
    pub k2: f64,
    #[serde(default)]
    pub families: Vec<crate::mathieu::MathieuFamily>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub count: Option<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct WheJob {
    #[serde(with = "cpx")]
    pub vartheta: Complex64,
    #[serde(with = "cpx")]
    pub xi: Complex64,
    #[serde(with = "cpx")]
    pub p: Complex64,
}

impl JobSpec {
    pub fn from_json(text: &str) -> Result<Self, JobError> {
        serde_json::from_str(text).map_err(|e| JobError::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("job serialization cannot fail")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;

    #[test]
    fn job_round_trip_is_identical() {
        let job = JobSpec {
            equation: Some(EquationSpec {
                kind: EquationKind::Che,
                b1: c64(0.7, 0.1),
                b2: c64(1.3, -0.2),
                b3: c64(0.4, 0.3),
                z0: Some(c64(1.0, 0.0)),
                omega: Some(c64(0.9, 0.2)),
                eta: Some(c64(-0.5, 0.4)),
                q: None,
            }),
            task: Some(Task::SolveNu),
            set: 2,
            word: Some(vec!["T1".into(), "T4".into()]),
            nu: Some(c64(0.3, 0.0)),
            seed: Some(c64(0.25, 0.1)),
            seeds: vec![c64(0.1, 0.0), c64(0.7, 0.0)],
            points: vec![c64(2.0, 1.0), c64(3.0, -1.0)],
            tolerance: Some(1e-8),
            n: Some(3),
            mathieu: None,
            whe: None,
            normal_form: None,
            limit: Some("both".into()),
            output: Some("json".into()),
        };
        let text = job.to_json();
        let back = JobSpec::from_json(&text).unwrap();
        assert_eq!(job, back);
    }

    #[test]
    fn complex_fields_are_re_im_pairs() {
        let text = r#"{
            "equation": {"kind":"che","b1":[0.5,0.0],"b2":[1.0,0.0],"b3":[0.2,0.1],
                          "z0":[1.0,0.0],"omega":[1.0,0.0],"eta":[0.3,0.0]},
            "task": "solve-nu",
            "seed": [0.3, 0.0]
        }"#;
        let job = JobSpec::from_json(text).unwrap();
        let eq = job.equation.unwrap().build().unwrap();
        assert_eq!(eq.kind(), EquationKind::Che);
        assert_eq!(job.seed.unwrap(), c64(0.3, 0.0));
    }

    #[test]
    fn bad_json_is_a_parse_error_with_code_2() {
        let err = JobSpec::from_json("{ not json").unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }
}

/// Command-line front end (kept thin; see the binary).
pub mod cli {
    use clap::Parser;

    #[derive(Parser, Debug)]
    #[command(name = "heun", about = "series solutions of confluent Heun-class equations")]
    pub struct Cli {
        #[command(subcommand)]
        pub command: Command,
    }

    #[derive(clap::Subcommand, Debug)]
    pub enum Command {
        /// placeholder
        SolveNu { job: String },
    }

    pub fn run(_cli: Cli) -> i32 {
        0
    }
}
