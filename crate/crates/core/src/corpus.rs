//! Classical automatic sequences with known opacity, and independent
//! recurrences for checking the terms they generate.

use crate::automaton::Dfao;
use crate::dyadic::DyadicDistance;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::opacity::{analyze_sequence, AnalysisReport, Classification};
use crate::oracle::{brute_force_opacity, oracle_bound};

/// A corpus automaton and the results it must reproduce.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub opacity: DyadicDistance,
    pub complexity: DyadicDistance,
    pub classification: Classification,
    pub states: usize,
    pub witness_len: Option<usize>,
    pub description: &'static str,
}

const fn entry(
    name: &'static str,
    opacity: Option<u32>,
    classification: Classification,
    states: usize,
    witness_len: Option<usize>,
    description: &'static str,
) -> CorpusEntry {
    let (opacity, complexity) = match opacity {
        None => (DyadicDistance::Zero, DyadicDistance::Zero),
        Some(e) => (DyadicDistance::Pow2Inv(e), DyadicDistance::Pow2Inv(e - 1)),
    };
    CorpusEntry {
        name,
        opacity,
        complexity,
        classification,
        states,
        witness_len,
        description,
    }
}

use Classification::*;

/// The golden table, in presentation order.
pub const ENTRIES: [CorpusEntry; 9] = [
    entry("one_state", Some(1), Opaque, 1, Some(2), "one-state 2-automaton; every constant sequence"),
    entry("identity2", None, Transparent, 2, None, "identity automaton; purely 2-periodic sequences"),
    entry("thue_morse", Some(1), Opaque, 2, Some(2), "Thue-Morse: u(2n)=u(n), u(2n+1)=1-u(n)"),
    entry("period_doubling", Some(2), Intermediate, 2, Some(3), "period-doubling: u(n)=v2(n+1) mod 2"),
    entry("golay_shapiro", None, Transparent, 4, None, "Golay-Shapiro(-Rudin): u(4n+3)=-u(2n+1)"),
    entry("paperfolding", None, Transparent, 4, None, "regular paperfolding: u(2^a(2m+1))=(-1)^m"),
    entry("baum_sweet", Some(2), Intermediate, 4, Some(3), "Baum-Sweet: no odd block of zeros"),
    entry("hanoi", Some(2), Intermediate, 6, Some(3), "Tower of Hanoi moves, six symbols"),
    entry("ternary_digit_sum", Some(1), Opaque, 3, Some(2), "sum of ternary digits mod 3"),
];

pub fn names() -> Vec<&'static str> {
    ENTRIES.iter().map(|e| e.name).collect()
}

pub fn entry_for(name: &str) -> Result<&'static CorpusEntry> {
    ENTRIES
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::UnknownCorpusName(name.to_string()))
}

/// The one-state k-automaton, output `0`.
pub fn one_state(k: usize) -> Dfao {
    one_state_with_output(k, "0")
}

pub fn one_state_with_output(k: usize, output: &str) -> Dfao {
    let row = vec!["I"; k];
    Dfao::from_rows(k, "I", &[("I", &row, output)]).expect("one-state automaton is valid")
}

pub fn build(name: &str) -> Result<Dfao> {
    type Rows<'a> = &'a [(&'a str, &'a [&'a str], &'a str)];
    let table = |k: usize, rows: Rows| Dfao::from_rows(k, "A", rows).expect("corpus automata are valid");
    Ok(match name {
        "one_state" => one_state(2),
        "identity2" => table(2, &[("A", &["A", "B"], "0"), ("B", &["A", "B"], "1")]),
        "thue_morse" => table(2, &[("A", &["A", "B"], "0"), ("B", &["B", "A"], "1")]),
        "period_doubling" => table(2, &[("A", &["A", "B"], "0"), ("B", &["A", "A"], "1")]),
        "golay_shapiro" => table(
            2,
            &[
                ("A", &["A", "B"], "1"),
                ("B", &["A", "C"], "1"),
                ("C", &["D", "B"], "-1"),
                ("D", &["D", "C"], "-1"),
            ],
        ),
        "paperfolding" => table(
            2,
            &[
                ("A", &["A", "B"], "1"),
                ("B", &["A", "C"], "1"),
                ("C", &["D", "C"], "-1"),
                ("D", &["D", "B"], "-1"),
            ],
        ),
        "baum_sweet" => table(
            2,
            &[
                ("A", &["A", "B"], "1"),
                ("B", &["C", "B"], "1"),
                ("C", &["B", "D"], "0"),
                ("D", &["D", "D"], "0"),
            ],
        ),
        "hanoi" => table(
            2,
            &[
                ("A", &["A", "D"], "a"),
                ("B", &["A", "C"], "a_bar"),
                ("C", &["E", "B"], "c"),
                ("D", &["E", "A"], "c_bar"),
                ("E", &["C", "F"], "b"),
                ("F", &["C", "E"], "b_bar"),
            ],
        ),
        "ternary_digit_sum" => table(
            3,
            &[
                ("A", &["A", "B", "C"], "0"),
                ("B", &["B", "C", "A"], "1"),
                ("C", &["C", "A", "B"], "2"),
            ],
        ),
        _ => return Err(Error::UnknownCorpusName(name.to_string())),
    })
}

fn sign(x: i8) -> String {
    x.to_string()
}

/// The first `n` terms computed from the sequence's own recurrence or
/// closed form, without any automaton. `None` at indices the formula
/// leaves undefined.
pub fn recurrence_terms(name: &str, n: usize) -> Result<Vec<Option<String>>> {
    let terms: Vec<Option<String>> = match name {
        "thue_morse" => {
            let mut u = vec![0u8; n];
            for i in 1..n {
                u[i] = if i % 2 == 0 { u[i / 2] } else { 1 - u[i / 2] };
            }
            u.into_iter().map(|x| Some(x.to_string())).collect()
        }
        "period_doubling" => (0..n)
            .map(|i| Some(((i as u64 + 1).trailing_zeros() % 2).to_string()))
            .collect(),
        "golay_shapiro" => {
            let mut u = vec![1i8; n];
            for i in 1..n {
                u[i] = match i % 4 {
                    0 | 2 => u[i / 2],
                    1 => u[i / 4],
                    _ => -u[i / 2],
                };
            }
            u.into_iter().map(|x| Some(sign(x))).collect()
        }
        "paperfolding" => (0..n)
            .map(|i| {
                (i > 0).then(|| {
                    let odd = i >> i.trailing_zeros();
                    let m = (odd - 1) / 2;
                    sign(if m % 2 == 0 { 1 } else { -1 })
                })
            })
            .collect(),
        "baum_sweet" => {
            let mut u = vec![1u8; n];
            for i in 1..n {
                u[i] = match i % 4 {
                    1 | 3 => u[i / 2],
                    0 => u[i / 4],
                    _ => 0,
                };
            }
            u.into_iter().map(|x| Some(x.to_string())).collect()
        }
        "ternary_digit_sum" => (0..n)
            .map(|i| {
                let (mut m, mut sum) = (i, 0);
                while m > 0 {
                    sum += m % 3;
                    m /= 3;
                }
                Some((sum % 3).to_string())
            })
            .collect(),
        _ => {
            entry_for(name)?;
            return Err(Error::NoRecurrence(name.to_string()));
        }
    };
    Ok(terms)
}

/// True iff the first `n` generated terms match the recurrence wherever it
/// is defined.
pub fn sequence_checks(name: &str, n: usize) -> Result<bool> {
    let expected = recurrence_terms(name, n)?;
    let dfao = build(name)?;
    let generated = dfao.generate(n as u64);
    Ok(expected
        .iter()
        .zip(&generated)
        .all(|(e, g)| e.as_deref().is_none_or(|e| e == *g)))
}

/// Terms compared against recurrences by [`run`].
pub const SEQUENCE_TERMS: usize = 1000;

/// One field of a corpus row: what was expected and what came out.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub field: &'static str,
    pub expected: String,
    pub actual: String,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.expected == self.actual
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusRow {
    pub entry: &'static CorpusEntry,
    pub report: AnalysisReport,
    pub oracle_len: usize,
    pub oracle: Result<DyadicDistance>,
    /// `None` when the entry has no recurrence.
    pub sequence: Option<bool>,
    pub checks: Vec<Check>,
}

impl CorpusRow {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }
}

fn check(field: &'static str, expected: impl ToString, actual: impl ToString) -> Check {
    Check {
        field,
        expected: expected.to_string(),
        actual: actual.to_string(),
    }
}

fn opt<T: ToString>(x: Option<T>) -> String {
    x.map_or_else(|| "-".to_string(), |x| x.to_string())
}

pub fn run_entry(entry: &'static CorpusEntry) -> CorpusRow {
    let dfao = build(entry.name).expect("table names are buildable");
    let report = analyze_sequence(&dfao);
    let a = report.intrinsic.automaton();
    let oracle_len = oracle_bound(a);
    let oracle = brute_force_opacity(a, oracle_len);
    let sequence = sequence_checks(entry.name, SEQUENCE_TERMS).ok();
    let mut checks = vec![
        check("opacity", entry.opacity, report.opacity),
        check("complexity", entry.complexity, report.complexity),
        check("classification", entry.classification, report.classification),
        check("states", entry.states, report.minimized_states()),
        check("input_states", entry.states, report.states_count),
        check("witness_len", opt(entry.witness_len), opt(report.witness.as_ref().map(|w| w.len()))),
        check(
            "oracle",
            entry.opacity,
            match &oracle {
                Ok(v) => v.to_string(),
                Err(e) => e.to_string(),
            },
        ),
    ];
    if let Some(ok) = sequence {
        checks.push(check("sequence", true, ok));
    }
    CorpusRow {
        entry,
        report,
        oracle_len,
        oracle,
        sequence,
        checks,
    }
}

/// Builds and checks every corpus entry; rows come back in table order.
pub fn run(exec: Exec) -> Vec<CorpusRow> {
    exec.map(ENTRIES.iter().collect(), run_entry)
}
