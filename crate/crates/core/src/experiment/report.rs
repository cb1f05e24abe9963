use std::collections::BTreeMap;
use std::io::Write;

use serde::{Deserialize, Serialize};

use super::stats::{Bin, Expected, Statistics};
use crate::error::{domain, Result};

/// Overall verdict of an experiment.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    StatisticalFailure,
    UnresolvedFailure,
}

impl Status {
    /// Process exit code: 0, 2 or 3.
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::StatisticalFailure => 2,
            Status::UnresolvedFailure => 3,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Parameters {
    pub seed: u64,
    pub samples: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub budget: Option<usize>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty", default)]
    pub extra: BTreeMap<String, String>,
}

/// A thresholded comparison.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    /// Name of the threshold constant the check uses.
    pub threshold: String,
    pub observed: f64,
    pub target: f64,
    pub tolerance: f64,
    pub passed: bool,
    /// Informational checks do not affect the status.
    pub informational: bool,
}

impl Check {
    /// `|observed - target| <= tolerance`.
    pub fn within(name: &str, threshold: &str, observed: f64, target: f64, tolerance: f64) -> Self {
        Check {
            name: name.into(),
            threshold: threshold.into(),
            observed,
            target,
            tolerance,
            passed: (observed - target).abs() <= tolerance,
            informational: false,
        }
    }

    /// `observed < bound`.
    pub fn below(name: &str, threshold: &str, observed: f64, bound: f64) -> Self {
        Check {
            name: name.into(),
            threshold: threshold.into(),
            observed,
            target: 0.0,
            tolerance: bound,
            passed: observed < bound,
            informational: false,
        }
    }

    pub fn informational(mut self) -> Self {
        self.informational = true;
        self
    }
}

/// A named column of descriptive output.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Series {
    pub name: String,
    pub values: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub name: String,
    pub parameters: Parameters,
    pub expected: Vec<Expected>,
    pub observed: Vec<Bin>,
    /// Second arm of a two-sample comparison.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub baseline: Option<Vec<Bin>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub statistics: Option<Statistics>,
    /// Statistics against the exact law, when the primary comparison is
    /// between two samples.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub reference: Option<Statistics>,
    pub checks: Vec<Check>,
    pub unresolved_fraction: f64,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub series: Vec<Series>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
    pub status: Status,
    /// Wall-clock time; left out unless requested so that reports are
    /// reproducible byte for byte.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub runtime_ms: Option<u64>,
}

impl ExperimentReport {
    pub fn new(name: &str, parameters: Parameters) -> Self {
        ExperimentReport {
            name: name.into(),
            parameters,
            expected: Vec::new(),
            observed: Vec::new(),
            baseline: None,
            statistics: None,
            reference: None,
            checks: Vec::new(),
            unresolved_fraction: 0.0,
            series: Vec::new(),
            notes: Vec::new(),
            status: Status::Pass,
            runtime_ms: None,
        }
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn series(&self, name: &str) -> Option<&[f64]> {
        self.series.iter().find(|s| s.name == name).map(|s| s.values.as_slice())
    }

    /// Sets the status from the checks and the unresolved fraction.
    pub(crate) fn settle(&mut self, unresolved_max: f64) {
        self.status = if self.unresolved_fraction > unresolved_max {
            Status::UnresolvedFailure
        } else if self.checks.iter().any(|c| !c.passed && !c.informational) {
            Status::StatisticalFailure
        } else {
            Status::Pass
        };
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// Flat CSV with one record per fact: the first field names the
    /// section.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
        let csv_err = |e: csv::Error| domain(format!("csv: {e}"));
        let p = &self.parameters;
        w.write_record(["name", &self.name]).map_err(csv_err)?;
        w.write_record(["status", status_str(self.status)]).map_err(csv_err)?;
        w.write_record(["parameter", "seed", &p.seed.to_string()]).map_err(csv_err)?;
        w.write_record(["parameter", "samples", &p.samples.to_string()]).map_err(csv_err)?;
        if let Some(b) = p.budget {
            w.write_record(["parameter", "budget", &b.to_string()]).map_err(csv_err)?;
        }
        for (k, v) in &p.extra {
            w.write_record(["parameter", k, v]).map_err(csv_err)?;
        }
        for e in &self.expected {
            w.write_record(["expected", &e.label, &crate::exact::format_rational(&e.probability), &e.provenance])
                .map_err(csv_err)?;
        }
        for b in &self.observed {
            w.write_record(["observed", &b.label, &b.count.to_string()]).map_err(csv_err)?;
        }
        for b in self.baseline.iter().flatten() {
            w.write_record(["baseline", &b.label, &b.count.to_string()]).map_err(csv_err)?;
        }
        for (tag, s) in [("statistic", &self.statistics), ("reference", &self.reference)] {
            if let Some(s) = s {
                for (k, v) in [
                    ("chi_square", s.chi_square.to_string()),
                    ("dof", s.dof.to_string()),
                    ("p_value", s.p_value.to_string()),
                    ("tv", s.tv.to_string()),
                    ("tv_noise", s.tv_noise.to_string()),
                ] {
                    w.write_record([tag, k, &v]).map_err(csv_err)?;
                }
            }
        }
        for c in &self.checks {
            w.write_record([
                "check",
                &c.name,
                &c.threshold,
                &c.observed.to_string(),
                &c.target.to_string(),
                &c.tolerance.to_string(),
                if c.passed { "pass" } else { "fail" },
                if c.informational { "informational" } else { "binding" },
            ])
            .map_err(csv_err)?;
        }
        w.write_record(["unresolved_fraction", &self.unresolved_fraction.to_string()]).map_err(csv_err)?;
        for s in &self.series {
            let mut rec = vec!["series".to_string(), s.name.clone()];
            rec.extend(s.values.iter().map(|v| v.to_string()));
            w.write_record(&rec).map_err(csv_err)?;
        }
        for n in &self.notes {
            w.write_record(["note", n]).map_err(csv_err)?;
        }
        if let Some(ms) = self.runtime_ms {
            w.write_record(["runtime_ms", &ms.to_string()]).map_err(csv_err)?;
        }
        let bytes = w.into_inner().map_err(|e| domain(format!("csv: {e}")))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    pub fn write_to(&self, out: &mut impl Write, csv: bool) -> Result<()> {
        let text = if csv { self.to_csv()? } else { self.to_json()? + "\n" };
        out.write_all(text.as_bytes())?;
        Ok(())
    }
}

fn status_str(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::StatisticalFailure => "statistical_failure",
        Status::UnresolvedFailure => "unresolved_failure",
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;

    fn sample_report() -> ExperimentReport {
        let mut r = ExperimentReport::new("demo", Parameters { seed: 3, samples: 10, ..Default::default() });
        r.expected.push(Expected::new("a", ratio(1, 2), "test"));
        r.observed = vec![Bin::new("a", 6), Bin::new("b", 4)];
        r.checks.push(Check::within("a", "LAW_TV", 0.6, 0.5, 0.2));
        r
    }

    #[test]
    fn json_round_trip() {
        let r = sample_report();
        let back: ExperimentReport = serde_json::from_str(&r.to_json().unwrap()).unwrap();
        assert_eq!(back, r);
        assert!(r.to_json().unwrap().contains("\"1/2\""));
        assert!(!r.to_json().unwrap().contains("runtime"));
    }

    #[test]
    fn csv_sections() {
        let csv = sample_report().to_csv().unwrap();
        assert!(csv.starts_with("name,demo\n"));
        assert!(csv.contains("expected,a,1/2,test\n"));
        assert!(csv.contains("observed,b,4\n"));
    }

    #[test]
    fn status_rules() {
        let mut r = sample_report();
        r.settle(0.05);
        assert_eq!(r.status.exit_code(), 0);
        r.checks.push(Check::below("tv", "LAW_TV", 0.5, 0.02).informational());
        r.settle(0.05);
        assert_eq!(r.status, Status::Pass);
        r.checks.push(Check::below("tv2", "LAW_TV", 0.5, 0.02));
        r.settle(0.05);
        assert_eq!(r.status.exit_code(), 2);
        r.unresolved_fraction = 0.1;
        r.settle(0.05);
        assert_eq!(r.status.exit_code(), 3);
    }
}
