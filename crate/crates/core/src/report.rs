//! Machine-readable reports. Rationals are `{num, den}` integer pairs.

use serde::Serialize;
use serde_json::Number;

use crate::corpus::CorpusRow;
use crate::dyadic::DyadicDistance;
use crate::error::Result;
use crate::opacity::{format_word, AnalysisReport, Classification};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RatioJson {
    pub num: Number,
    pub den: Number,
}

impl From<DyadicDistance> for RatioJson {
    fn from(d: DyadicDistance) -> Self {
        let int = |x: num_bigint::BigUint| x.to_string().parse::<Number>().expect("integer literal");
        RatioJson {
            num: int(d.numer()),
            den: int(d.denom()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessJson {
    pub word: String,
    pub state: String,
    pub pos_a: usize,
    pub pos_b: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleJson {
    #[serde(rename = "L")]
    pub len: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<RatioJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl OracleJson {
    pub fn new(len: usize, result: &Result<DyadicDistance>) -> Self {
        match result {
            Ok(v) => OracleJson {
                len,
                value: Some((*v).into()),
                error: None,
            },
            Err(e) => OracleJson {
                len,
                value: None,
                error: Some(e.to_string()),
            },
        }
    }
}

/// Field order here is the output order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReportJson {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub k: usize,
    pub states: usize,
    pub strictly_accessible: bool,
    pub classification: Classification,
    pub opacity: RatioJson,
    pub complexity: RatioJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessJson>,
    pub inhomogeneous_states: Vec<String>,
    pub minimized_states: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleJson>,
}

impl ReportJson {
    pub fn new(name: Option<&str>, report: &AnalysisReport, oracle: Option<OracleJson>) -> Self {
        let a = report.intrinsic.automaton();
        ReportJson {
            name: name.map(str::to_string),
            k: report.k,
            states: report.states_count,
            strictly_accessible: report.strictly_accessible,
            classification: report.classification,
            opacity: report.opacity.distance().into(),
            complexity: report.complexity.into(),
            witness: report.witness.as_ref().map(|w| WitnessJson {
                word: format_word(&w.word, report.k),
                state: a.state_name(w.collide_state).to_string(),
                pos_a: w.position_a,
                pos_b: w.position_b,
            }),
            inhomogeneous_states: report.inhomogeneous_states().into_iter().map(str::to_string).collect(),
            minimized_states: report.minimized_states(),
            oracle,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckJson {
    pub field: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorpusRowJson {
    pub name: String,
    pub pass: bool,
    pub checks: Vec<CheckJson>,
    pub report: ReportJson,
}

impl From<&CorpusRow> for CorpusRowJson {
    fn from(row: &CorpusRow) -> Self {
        CorpusRowJson {
            name: row.entry.name.to_string(),
            pass: row.passed(),
            checks: row
                .checks
                .iter()
                .map(|c| CheckJson {
                    field: c.field.to_string(),
                    expected: c.expected.clone(),
                    actual: c.actual.clone(),
                    pass: c.passed(),
                })
                .collect(),
            report: ReportJson::new(
                Some(row.entry.name),
                &row.report,
                Some(OracleJson::new(row.oracle_len, &row.oracle)),
            ),
        }
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report types always serialize")
}
