//! Census reports and their table, CSV and JSON renderings.
//!
//! JSON output goes through [`serde_json::Value`], whose maps keep keys sorted, so a
//! report renders to the same bytes every time. The stable variant drops the elapsed time.

use std::fmt::Write as _;

use lcforge_core::{CensusMode, SequenceClass};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    Match,
    Mismatch,
    /// Census and closed form agree, the published fixture does not.
    FixtureWrong,
    /// Sampled row whose 3σ interval contains the closed-form proportion.
    Covered,
    Outside,
    /// No closed form to compare against.
    Unchecked,
}

impl Verdict {
    pub fn is_failure(self) -> bool {
        matches!(self, Self::Mismatch | Self::Outside)
    }
}

/// Displayed bounds of a sampled row's interval.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Interval {
    pub lower: String,
    pub upper: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    #[serde(rename = "L")]
    pub l: u64,
    /// Sequences counted with `L_k = L` (hits, in sampled mode).
    pub census: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub formula: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fixture: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub interval: Option<Interval>,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Totals {
    pub census: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub formula: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fixture: Option<u64>,
    /// Size of the class being counted.
    pub population: u64,
    /// Rows whose verdict is a failure or `FixtureWrong`.
    pub disagreements: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Mode {
    Exhaustive,
    Sampled { count: u64, seed: u64 },
}

impl From<CensusMode> for Mode {
    fn from(m: CensusMode) -> Self {
        match m {
            CensusMode::Exhaustive => Self::Exhaustive,
            CensusMode::Sampled { count, seed } => Self::Sampled { count, seed },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusReport {
    pub n: u32,
    pub k: u32,
    #[serde(serialize_with = "class_out", deserialize_with = "class_in")]
    pub class: SequenceClass,
    pub mode: Mode,
    pub rows: Vec<Row>,
    pub totals: Totals,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

fn class_out<S: Serializer>(class: &SequenceClass, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(class.as_str())
}

fn class_in<'de, D: Deserializer<'de>>(d: D) -> Result<SequenceClass, D::Error> {
    let text = String::deserialize(d)?;
    text.parse().map_err(serde::de::Error::custom)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Table,
    Json,
    Csv,
}

impl CensusReport {
    /// True when no row is a `Mismatch` or `Outside`.
    pub fn passed(&self) -> bool {
        !self.rows.iter().any(|r| r.verdict.is_failure())
    }

    pub fn has_fixture(&self) -> bool {
        self.rows.iter().any(|r| r.fixture.is_some())
    }

    fn is_sampled(&self) -> bool {
        matches!(self.mode, Mode::Sampled { .. })
    }

    pub fn without_timing(mut self) -> Self {
        self.elapsed_ms = None;
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Table => self.to_table(),
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
        }
    }

    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("reports always serialize");
        let mut out = serde_json::to_string_pretty(&value).expect("values always serialize");
        out.push('\n');
        out
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_csv(&self) -> String {
        let mut header = vec!["L", "census", "formula"];
        if self.has_fixture() {
            header.push("fixture");
        }
        header.push("verdict");
        if self.is_sampled() {
            header.extend(["lower", "upper"]);
        }
        let mut out = header.join(",");
        out.push('\n');
        for row in &self.rows {
            let mut cells = vec![row.l.to_string(), row.census.to_string(), opt(row.formula)];
            if self.has_fixture() {
                cells.push(opt(row.fixture));
            }
            cells.push(format!("{:?}", row.verdict));
            if let Some(iv) = &row.interval {
                cells.extend([iv.lower.clone(), iv.upper.clone()]);
            } else if self.is_sampled() {
                cells.extend([String::new(), String::new()]);
            }
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let mode = match self.mode {
            Mode::Exhaustive => "exhaustive".to_string(),
            Mode::Sampled { count, seed } => format!("sampled ({count} draws, seed {seed})"),
        };
        let _ = writeln!(
            out,
            "n={} k={} class={} mode={mode}",
            self.n, self.k, self.class
        );
        let fixture = self.has_fixture();
        let _ = write!(out, "{:>5} {:>12} {:>12}", "L", "census", "formula");
        if fixture {
            let _ = write!(out, " {:>12}", "fixture");
        }
        let _ = write!(out, "  {:<12}", "verdict");
        if self.is_sampled() {
            let _ = write!(out, " interval");
        }
        out.truncate(out.trim_end().len());
        out.push('\n');
        for row in &self.rows {
            let _ = write!(
                out,
                "{:>5} {:>12} {:>12}",
                row.l,
                row.census,
                opt(row.formula)
            );
            if fixture {
                let _ = write!(out, " {:>12}", opt(row.fixture));
            }
            let _ = write!(out, "  {:<12}", format!("{:?}", row.verdict));
            if let Some(iv) = &row.interval {
                let _ = write!(out, " [{}, {}]", iv.lower, iv.upper);
            }
            out.truncate(out.trim_end().len());
            out.push('\n');
        }
        let t = &self.totals;
        let _ = write!(
            out,
            "{:>5} {:>12} {:>12}",
            "total",
            t.census,
            opt(t.formula)
        );
        if fixture {
            let _ = write!(out, " {:>12}", opt(t.fixture));
        }
        out.push('\n');
        let _ = writeln!(
            out,
            "population {}, {} disagreeing rows",
            t.population, t.disagreements
        );
        if let Some(ms) = self.elapsed_ms {
            let _ = writeln!(out, "elapsed {ms} ms");
        }
        out
    }
}

fn opt(v: Option<u64>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}
