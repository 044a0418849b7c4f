use std::fmt;
use std::time::Instant;

use serde::Serialize;
use serde_json::{Map, Value};

use crate::partitions::StrictPartition;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Verified,
    Failed,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Verified => "verified",
            Status::Failed => "failed",
        })
    }
}

/// Ordered check parameters.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Params(Map<String, Value>);

impl Params {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, key: &str, value: impl Serialize) -> Self {
        self.0.insert(
            key.to_string(),
            serde_json::to_value(value).expect("parameter serializes"),
        );
        self
    }

    pub fn with_if(self, cond: bool, key: &str, value: impl Serialize) -> Self {
        if cond {
            self.with(key, value)
        } else {
            self
        }
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.0.get(key)
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(k, v)| format!("{k}={v}")).collect();
        f.write_str(&parts.join(" "))
    }
}

/// One line of a dimension table: `contribution = dim_u * dim_other / 2^halvings`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DimRow {
    pub lambda: StrictPartition,
    pub dim_u: u64,
    pub dim_other: u64,
    pub weight: String,
    pub contribution: u64,
}

impl DimRow {
    /// Row with weight `2^{-halvings}`; the product must be divisible.
    pub fn new(lambda: StrictPartition, dim_u: u64, dim_other: u64, halvings: usize) -> Self {
        let product = dim_u * dim_other;
        let denom = 1u64 << halvings;
        Self {
            lambda,
            dim_u,
            dim_other,
            weight: if halvings == 0 {
                "1".to_string()
            } else {
                format!("1/{denom}")
            },
            contribution: product / denom,
        }
    }

    pub fn is_exact(&self) -> bool {
        let denom: u64 = self
            .weight
            .strip_prefix("1/")
            .map(|d| d.parse().expect("weight denominator"))
            .unwrap_or(1);
        (self.dim_u * self.dim_other).is_multiple_of(denom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubCheck {
    pub name: String,
    pub passed: bool,
    pub detail: Option<String>,
}

/// Structured outcome of one verification.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    check: String,
    params: Params,
    status: Status,
    dims: Vec<DimRow>,
    detail: Option<String>,
    elapsed_ms: u64,
    #[serde(skip)]
    subchecks: Vec<SubCheck>,
    #[serde(skip)]
    notes: Vec<String>,
}

impl VerificationReport {
    pub fn check_name(&self) -> &str {
        &self.check
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn status(&self) -> Status {
        self.status
    }

    pub fn is_verified(&self) -> bool {
        self.status == Status::Verified
    }

    pub fn dims(&self) -> &[DimRow] {
        &self.dims
    }

    pub fn detail(&self) -> Option<&str> {
        self.detail.as_deref()
    }

    pub fn elapsed_ms(&self) -> u64 {
        self.elapsed_ms
    }

    pub fn subchecks(&self) -> &[SubCheck] {
        &self.subchecks
    }

    pub fn notes(&self) -> &[String] {
        &self.notes
    }

    /// Sum of the dimension-table contributions.
    pub fn dims_total(&self) -> u64 {
        self.dims.iter().map(|r| r.contribution).sum()
    }

    pub fn subcheck(&self, name: &str) -> Option<&SubCheck> {
        self.subchecks.iter().find(|s| s.name == name)
    }

    /// Zeroes the timing field, for byte-stable output.
    pub fn without_timing(mut self) -> Self {
        self.elapsed_ms = 0;
        self
    }

    /// Report for a check that could not be run at all.
    pub fn error(check: &str, params: Params, message: String) -> Self {
        Self {
            check: check.to_string(),
            params,
            status: Status::Failed,
            dims: Vec::new(),
            detail: Some(message.clone()),
            elapsed_ms: 0,
            subchecks: vec![SubCheck {
                name: "construction".into(),
                passed: false,
                detail: Some(message),
            }],
            notes: Vec::new(),
        }
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} [{}]: {}", self.check, self.params, self.status)?;
        for s in &self.subchecks {
            let mark = if s.passed { "ok  " } else { "FAIL" };
            match (&s.detail, s.passed) {
                (Some(d), false) => writeln!(f, "  {mark} {}: {d}", s.name)?,
                _ => writeln!(f, "  {mark} {}", s.name)?,
            }
        }
        if !self.dims.is_empty() {
            writeln!(f, "  lambda      dim_u  dim_other  weight  contribution")?;
            for r in &self.dims {
                writeln!(
                    f,
                    "  {:<10} {:>6} {:>10} {:>7} {:>13}",
                    r.lambda.to_string(),
                    r.dim_u,
                    r.dim_other,
                    r.weight,
                    r.contribution
                )?;
            }
            writeln!(f, "  total {}", self.dims_total())?;
        }
        for n in &self.notes {
            writeln!(f, "  note: {n}")?;
        }
        Ok(())
    }
}

/// Accumulates sub-assertions; the report is verified iff all of them pass.
#[derive(Debug)]
pub struct ReportBuilder {
    check: String,
    params: Params,
    dims: Vec<DimRow>,
    subchecks: Vec<SubCheck>,
    notes: Vec<String>,
}

impl ReportBuilder {
    pub fn new(check: &str, params: Params) -> Self {
        Self {
            check: check.to_string(),
            params,
            dims: Vec::new(),
            subchecks: Vec::new(),
            notes: Vec::new(),
        }
    }

    /// Records a sub-assertion; `detail` is only evaluated on failure.
    pub fn check(&mut self, name: &str, passed: bool, detail: impl FnOnce() -> String) -> bool {
        self.subchecks.push(SubCheck {
            name: name.to_string(),
            passed,
            detail: if passed { None } else { Some(detail()) },
        });
        passed
    }

    /// Records an expected-versus-actual comparison.
    pub fn check_eq<T: PartialEq + fmt::Debug>(&mut self, name: &str, actual: T, expected: T) -> bool {
        let passed = actual == expected;
        self.check(name, passed, || format!("got {actual:?}, expected {expected:?}"))
    }

    /// Adds a parameter computed during the check.
    pub fn param(&mut self, key: &str, value: impl Serialize) {
        self.params = std::mem::take(&mut self.params).with(key, value);
    }

    pub fn note(&mut self, note: String) {
        self.notes.push(note);
    }

    pub fn row(&mut self, row: DimRow) {
        self.dims.push(row);
    }

    /// Asserts that the dimension table sums exactly to `ambient` and that
    /// every row is integral.
    pub fn decomposition(&mut self, ambient: u64) -> bool {
        let exact = self.dims.iter().all(DimRow::is_exact);
        let total: u64 = self.dims.iter().map(|r| r.contribution).sum();
        self.check("dimension table sums to ambient", exact && total == ambient, || {
            format!("table total {total} (integral rows: {exact}), ambient {ambient}")
        })
    }

    pub fn all_passed(&self) -> bool {
        self.subchecks.iter().all(|s| s.passed)
    }

    pub fn finish(self, start: Instant) -> VerificationReport {
        let passed = !self.subchecks.is_empty() && self.subchecks.iter().all(|s| s.passed);
        let detail = self
            .subchecks
            .iter()
            .find(|s| !s.passed)
            .map(|s| format!("{}: {}", s.name, s.detail.clone().unwrap_or_default()));
        VerificationReport {
            check: self.check,
            params: self.params,
            status: if passed { Status::Verified } else { Status::Failed },
            dims: self.dims,
            detail,
            elapsed_ms: start.elapsed().as_millis() as u64,
            subchecks: self.subchecks,
            notes: self.notes,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_follows_subchecks() {
        let mut b = ReportBuilder::new("demo", Params::new().with("m", 2));
        b.check("a", true, String::new);
        b.row(DimRow::new(StrictPartition::row(2), 8, 4, 1));
        assert!(b.decomposition(16));
        let r = b.finish(Instant::now());
        assert!(r.is_verified());
        assert_eq!(r.dims_total(), 16);

        let mut b = ReportBuilder::new("demo", Params::new());
        b.check("a", false, || "boom".into());
        let r = b.finish(Instant::now());
        assert!(!r.is_verified());
        assert_eq!(r.detail(), Some("a: boom"));
    }

    #[test]
    fn json_schema_keys() {
        let r = ReportBuilder::new("demo", Params::new().with("k", 3)).finish(Instant::now());
        let v = serde_json::to_value(&r).unwrap();
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        assert_eq!(keys, ["check", "detail", "dims", "elapsed_ms", "params", "status"]);
    }
}
