//! The `.aut` text format.
//!
//! ```text
//! # Thue-Morse
//! k 2
//! states A B
//! initial A
//! output A 0
//! output B 1
//! edge A 0 A
//! edge A 1 B
//! edge B 0 B
//! edge B 1 A
//! ```
//!
//! One directive per line, whitespace-separated tokens, `#` to end of line
//! is a comment. `k`, `states` and `initial` appear exactly once; there is
//! one `edge` per state and digit. Outputs are given for every state or for
//! none, in which case each state outputs its own name.

use std::fmt::Write as _;

use crate::automaton::{validate, Dfao, RawDescription, RawEdge, Validated};
use crate::error::{Error, Result};

fn syntax(line: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        message: message.into(),
    }
}

fn expect_args(line: usize, directive: &str, args: &[&str], n: usize) -> Result<()> {
    if args.len() != n {
        return Err(syntax(
            line,
            format!("`{directive}` takes {n} argument(s), got {}", args.len()),
        ));
    }
    Ok(())
}

fn number(line: usize, token: &str, what: &str) -> Result<usize> {
    token
        .parse()
        .map_err(|_| syntax(line, format!("expected {what}, got `{token}`")))
}

/// Parses and validates. Unreachable states are pruned and reported in
/// [`Validated::pruned`].
pub fn parse(text: &str) -> Result<Validated> {
    let mut raw = RawDescription::default();
    let (mut seen_k, mut seen_states, mut seen_initial) = (None, None, None);
    let mut last_line = 0;

    for (i, content) in text.lines().enumerate() {
        let line = i + 1;
        last_line = line;
        let content = content.split('#').next().unwrap_or("");
        let mut tokens = content.split_whitespace();
        let Some(directive) = tokens.next() else {
            continue;
        };
        let args: Vec<&str> = tokens.collect();
        let once = |seen: &mut Option<usize>| match seen.replace(line) {
            Some(first) => Err(syntax(line, format!("`{directive}` already given on line {first}"))),
            None => Ok(()),
        };
        match directive {
            "k" => {
                once(&mut seen_k)?;
                expect_args(line, directive, &args, 1)?;
                raw.k = number(line, args[0], "a radix")?;
                raw.k_line = Some(line);
                if raw.k < 2 {
                    return Err(Error::BadRadix { k: raw.k });
                }
            }
            "states" => {
                once(&mut seen_states)?;
                if args.is_empty() {
                    return Err(Error::NoStates);
                }
                raw.states = args.iter().map(|s| (s.to_string(), Some(line))).collect();
            }
            "initial" => {
                once(&mut seen_initial)?;
                expect_args(line, directive, &args, 1)?;
                raw.initial = args[0].to_string();
                raw.initial_line = Some(line);
            }
            "output" => {
                expect_args(line, directive, &args, 2)?;
                raw.outputs.push((args[0].to_string(), args[1].to_string(), Some(line)));
            }
            "edge" => {
                expect_args(line, directive, &args, 3)?;
                raw.edges.push(RawEdge {
                    src: args[0].to_string(),
                    digit: number(line, args[1], "a digit")?,
                    dst: args[2].to_string(),
                    line: Some(line),
                });
            }
            other => return Err(syntax(line, format!("unknown directive `{other}`"))),
        }
    }
    let end = last_line.max(1);
    if seen_k.is_none() {
        return Err(syntax(end, "missing `k`"));
    }
    if seen_states.is_none() {
        return Err(syntax(end, "missing `states`"));
    }
    if seen_initial.is_none() {
        return Err(syntax(end, "missing `initial`"));
    }
    validate(raw)
}

/// Canonical text: header, one `output` per state, edges in state then
/// digit order.
pub fn serialize(d: &Dfao) -> String {
    let a = d.automaton();
    let mut out = String::new();
    writeln!(out, "k {}", a.k()).unwrap();
    writeln!(out, "states {}", a.state_names().join(" ")).unwrap();
    writeln!(out, "initial {}", a.state_name(a.initial())).unwrap();
    for s in 0..a.num_states() {
        writeln!(out, "output {} {}", a.state_name(s), d.output(s)).unwrap();
    }
    for s in 0..a.num_states() {
        for (digit, &t) in a.row(s).iter().enumerate() {
            writeln!(out, "edge {} {} {}", a.state_name(s), digit, a.state_name(t)).unwrap();
        }
    }
    out
}
