//! Graphviz output. Parallel edges are merged into one arrow with a
//! comma-joined label; the initial state gets an arrow from a point node.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::automaton::{Dfao, Digit};
use crate::opacity::PathWitness;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// DOT text for `d`. Edges used by `highlight` are drawn in red.
pub fn to_dot(d: &Dfao, highlight: Option<&PathWitness>) -> String {
    let a = d.automaton();
    let mut on_witness = vec![false; a.num_states() * a.k()];
    if let Some(w) = highlight {
        if let Ok(run) = a.run_path(&w.word) {
            for (s, digit, _) in run.edges {
                on_witness[s * a.k() + digit] = true;
            }
        }
    }

    let mut out = String::new();
    out.push_str("digraph dfao {\n");
    out.push_str("  rankdir=LR;\n");
    out.push_str("  node [shape=circle];\n");
    out.push_str("  __start [shape=point];\n");
    writeln!(out, "  __start -> {};", quote(a.state_name(a.initial()))).unwrap();
    for s in 0..a.num_states() {
        let label = format!("{}/{}", a.state_name(s), d.output(s));
        writeln!(out, "  {} [label={}];", quote(a.state_name(s)), quote(&label)).unwrap();
    }
    for s in 0..a.num_states() {
        let mut merged: BTreeMap<usize, Vec<Digit>> = BTreeMap::new();
        for (digit, &t) in a.row(s).iter().enumerate() {
            merged.entry(t).or_default().push(digit);
        }
        // targets in order of their first digit
        let mut arrows: Vec<(usize, Vec<Digit>)> = merged.into_iter().collect();
        arrows.sort_by_key(|(_, digits)| digits[0]);
        for (t, digits) in arrows {
            let label: Vec<String> = digits.iter().map(Digit::to_string).collect();
            let hot = digits.iter().any(|&digit| on_witness[s * a.k() + digit]);
            write!(
                out,
                "  {} -> {} [label={}",
                quote(a.state_name(s)),
                quote(a.state_name(t)),
                quote(&label.join(","))
            )
            .unwrap();
            if hot {
                out.push_str(", color=red, penwidth=2");
            }
            out.push_str("];\n");
        }
    }
    out.push_str("}\n");
    out
}
