//! Homogeneity of states and paths, and the exact opacity of an automaton.
//!
//! Outputs are taken in the input alphabet and words are compared with the
//! prefix metric. The opacity of an accessible automaton is then zero when
//! every path from the initial state is homogeneous, and `2^-(l-1)`
//! otherwise, where `l` is the length of a shortest inhomogeneous path.
//!
//! # Finding a shortest inhomogeneous path
//!
//! A path is inhomogeneous when some state is entered twice along it by
//! edges with different labels. Take a shortest one and its first such
//! collision: state `s` entered at edge `a` with label `x` and again at edge
//! `b` with label `y != x`. Then `b` is the last edge (otherwise the prefix
//! ending at `b` would be a shorter inhomogeneous path), the prefix ending
//! at `a` is a path from the initial state into `s` whose last label is
//! `x`, and the rest is a cycle from `s` back to `s` whose last label is
//! `y`. So the length is at least
//!
//! ```text
//! entry(s, x) + return(s, y)
//! ```
//!
//! where `entry(s, x)` is the fewest edges on a path from the initial state
//! ending with an `x`-edge into `s`, and `return(s, y)` the fewest edges on a
//! cycle through `s` ending with a `y`-edge into `s`. Conversely, gluing a
//! shortest entry path and a shortest return cycle gives an inhomogeneous
//! path of exactly that length. Minimizing over `s` and `x != y` therefore
//! yields the shortest length, and every shortest inhomogeneous word is such
//! a concatenation. Both quantities come from one breadth-first search per
//! state, which also gives lexicographically least shortest words, so the
//! reported witness is the least shortest inhomogeneous word.
//!
//! Since each piece has at most `|S|` edges, `l <= 2|S|`.

use std::collections::VecDeque;
use std::fmt;

use serde::Serialize;

use crate::automaton::{Automaton, Dfao, Digit};
use crate::dyadic::DyadicDistance;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::minimize::intrinsic_automaton;

/// The largest possible opacity, attained by the one-state automaton.
pub const MAX_OPACITY: DyadicDistance = DyadicDistance::Pow2Inv(1);

/// Opacity of an automaton: zero, or `2^-(l-1)` for a shortest
/// inhomogeneous path of length `l >= 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Opacity {
    Transparent,
    Value(usize),
}

impl Opacity {
    pub fn distance(self) -> DyadicDistance {
        match self {
            Opacity::Transparent => DyadicDistance::Zero,
            Opacity::Value(l) => DyadicDistance::pow2_inv(l - 1).expect("path length within exponent cap"),
        }
    }

    /// Opacity relative to [`MAX_OPACITY`], i.e. twice the opacity.
    pub fn complexity(self) -> DyadicDistance {
        self.distance().double().expect("opacity never exceeds 1/2")
    }

    pub fn classification(self) -> Classification {
        match self {
            Opacity::Transparent => Classification::Transparent,
            Opacity::Value(2) => Classification::Opaque,
            Opacity::Value(_) => Classification::Intermediate,
        }
    }
}

impl Ord for Opacity {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.distance().cmp(&other.distance())
    }
}

impl PartialOrd for Opacity {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Opacity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.distance().fmt(f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Classification {
    Transparent,
    Opaque,
    Intermediate,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::Transparent => "TRANSPARENT",
            Classification::Opaque => "OPAQUE",
            Classification::Intermediate => "INTERMEDIATE",
        })
    }
}

/// Whether all edges entering a state carry one label.
///
/// A state with no incoming edge at all (only possible for the initial
/// state) is `Homogeneous(None)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StateVerdict {
    Homogeneous(Option<Digit>),
    Inhomogeneous,
}

pub fn state_homogeneity(a: &Automaton) -> Vec<StateVerdict> {
    let mut verdicts = vec![StateVerdict::Homogeneous(None); a.num_states()];
    for s in 0..a.num_states() {
        for (d, &t) in a.row(s).iter().enumerate() {
            verdicts[t] = match verdicts[t] {
                StateVerdict::Homogeneous(None) => StateVerdict::Homogeneous(Some(d)),
                StateVerdict::Homogeneous(Some(x)) if x == d => StateVerdict::Homogeneous(Some(x)),
                _ => StateVerdict::Inhomogeneous,
            };
        }
    }
    verdicts
}

pub fn is_homogeneous_automaton(a: &Automaton) -> bool {
    state_homogeneity(a)
        .into_iter()
        .all(|v| v != StateVerdict::Inhomogeneous)
}

/// Shortest and lexicographically least words from one source state.
struct LexBfs {
    dist: Vec<Option<usize>>,
    parent: Vec<Option<(usize, Digit)>>,
}

impl LexBfs {
    fn new(a: &Automaton, from: usize) -> Self {
        // Dequeuing states in the lexicographic order of their words and
        // scanning digits upward discovers each state via its least word.
        let n = a.num_states();
        let mut dist = vec![None; n];
        let mut parent = vec![None; n];
        dist[from] = Some(0);
        let mut queue = VecDeque::from([from]);
        while let Some(q) = queue.pop_front() {
            let dq = dist[q].unwrap();
            for (d, &r) in a.row(q).iter().enumerate() {
                if dist[r].is_none() {
                    dist[r] = Some(dq + 1);
                    parent[r] = Some((q, d));
                    queue.push_back(r);
                }
            }
        }
        LexBfs { dist, parent }
    }

    fn word_to(&self, mut s: usize) -> Vec<Digit> {
        let mut word = Vec::new();
        while let Some((p, d)) = self.parent[s] {
            word.push(d);
            s = p;
        }
        word.reverse();
        word
    }

    /// Shortest, then least, word reaching `s` whose last edge is labelled
    /// `digit`.
    fn last_edge_into(&self, a: &Automaton, s: usize, digit: Digit) -> Option<Vec<Digit>> {
        let best = (0..a.num_states())
            .filter(|&r| a.next(r, digit) == s)
            .filter_map(|r| self.dist[r].map(|dr| (dr, r)))
            .map(|(dr, r)| (dr, self.word_to(r)))
            .min()?;
        let mut word = best.1;
        word.push(digit);
        Some(word)
    }

    fn last_edge_distance(&self, a: &Automaton, s: usize, digit: Digit) -> Option<usize> {
        (0..a.num_states())
            .filter(|&r| a.next(r, digit) == s)
            .filter_map(|r| self.dist[r])
            .min()
            .map(|d| d + 1)
    }
}

/// Fewest edges on a path from the initial state whose last edge is an
/// edge into `s` labelled `digit`.
pub fn entry_distance(a: &Automaton, s: usize, digit: Digit) -> Option<usize> {
    LexBfs::new(a, a.initial()).last_edge_distance(a, s, digit)
}

/// Fewest edges (at least one) on a path from `s` back to `s` whose last
/// edge is labelled `digit`.
pub fn return_distance(a: &Automaton, s: usize, digit: Digit) -> Option<usize> {
    LexBfs::new(a, s).last_edge_distance(a, s, digit)
}

/// A shortest inhomogeneous word: the state `collide_state` is entered by
/// edge `position_a` and by the last edge `position_b` with different
/// labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PathWitness {
    pub word: Vec<Digit>,
    pub collide_state: usize,
    pub position_a: usize,
    pub position_b: usize,
}

impl PathWitness {
    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    /// Re-runs the word and checks the collision it claims.
    pub fn is_consistent(&self, a: &Automaton) -> bool {
        let (w, pa, pb) = (&self.word, self.position_a, self.position_b);
        if pa >= pb || pb + 1 != w.len() || w[pa] == w[pb] {
            return false;
        }
        let (Ok(sa), Ok(sb)) = (a.step(a.initial(), &w[..=pa]), a.step(a.initial(), &w[..=pb])) else {
            return false;
        };
        sa == self.collide_state && sb == self.collide_state
    }
}

/// Digits as text: plain concatenation for `k <= 10`, comma-separated
/// otherwise.
pub fn format_word(word: &[Digit], k: usize) -> String {
    let parts: Vec<String> = word.iter().map(Digit::to_string).collect();
    if k <= 10 {
        parts.concat()
    } else {
        parts.join(",")
    }
}

/// Least among the shortest inhomogeneous words, or `None` when every
/// path from the initial state is homogeneous.
pub fn shortest_inhomogeneous_path(a: &Automaton) -> Option<PathWitness> {
    shortest_inhomogeneous_path_with(a, Exec::available())
}

pub fn shortest_inhomogeneous_path_with(a: &Automaton, exec: Exec) -> Option<PathWitness> {
    let from_initial = LexBfs::new(a, a.initial());
    let per_state = exec.map_range(a.num_states(), |s| {
        let from_s = LexBfs::new(a, s);
        let k = a.k();
        let entry: Vec<_> = (0..k).map(|d| from_initial.last_edge_distance(a, s, d)).collect();
        let back: Vec<_> = (0..k).map(|d| from_s.last_edge_distance(a, s, d)).collect();
        let mut best: Option<usize> = None;
        for (x, &ex) in entry.iter().enumerate() {
            for y in (0..k).filter(|&y| y != x) {
                if let (Some(e), Some(r)) = (ex, back[y]) {
                    best = Some(best.map_or(e + r, |b| b.min(e + r)));
                }
            }
        }
        let len = best?;
        let mut least: Option<PathWitness> = None;
        for (x, &ex) in entry.iter().enumerate() {
            for y in (0..k).filter(|&y| y != x) {
                match (ex, back[y]) {
                    (Some(e), Some(r)) if e + r == len => {}
                    _ => continue,
                }
                let mut word = from_initial.last_edge_into(a, s, x).unwrap();
                let position_a = word.len() - 1;
                word.extend(from_s.last_edge_into(a, s, y).unwrap());
                if least.as_ref().is_none_or(|w| word < w.word) {
                    least = Some(PathWitness {
                        position_b: word.len() - 1,
                        word,
                        collide_state: s,
                        position_a,
                    });
                }
            }
        }
        least
    });
    per_state
        .into_iter()
        .flatten()
        .min_by(|p, q| (p.len(), &p.word).cmp(&(q.len(), &q.word)))
}

pub fn compute_opacity(a: &Automaton) -> Opacity {
    match shortest_inhomogeneous_path(a) {
        None => Opacity::Transparent,
        Some(w) => Opacity::Value(w.len()),
    }
}

/// Opaque iff `t(i_0, x) = t(i_0, xy)` for some digits `x != y`.
pub fn is_opaque_quick(a: &Automaton) -> bool {
    let i0 = a.initial();
    (0..a.k()).any(|x| {
        let s = a.next(i0, x);
        (0..a.k()).any(|y| y != x && a.next(s, y) == s)
    })
}

/// Length of the longest prefix of `word` whose path from the initial
/// state is homogeneous.
pub fn longest_homogeneous_prefix(a: &Automaton, word: &[Digit]) -> Result<usize> {
    if let Some(&digit) = word.iter().find(|&&d| d >= a.k()) {
        return Err(Error::DigitOutOfRange {
            digit,
            k: a.k(),
            line: None,
        });
    }
    let mut label: Vec<Option<Digit>> = vec![None; a.num_states()];
    let mut q = a.initial();
    for (j, &d) in word.iter().enumerate() {
        q = a.next(q, d);
        match label[q] {
            Some(x) if x != d => return Ok(j),
            _ => label[q] = Some(d),
        }
    }
    Ok(word.len())
}

/// Everything known about the sequence generated by a DFAO, computed on its
/// intrinsic automaton.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnalysisReport {
    pub k: usize,
    /// States of the analysed input.
    pub states_count: usize,
    /// The intrinsic automaton the figures below refer to.
    pub intrinsic: Dfao,
    pub opacity: Opacity,
    pub complexity: DyadicDistance,
    pub classification: Classification,
    pub witness: Option<PathWitness>,
    pub state_homogeneity: Vec<StateVerdict>,
    pub strictly_accessible: bool,
}

impl AnalysisReport {
    pub fn minimized_states(&self) -> usize {
        self.intrinsic.num_states()
    }

    pub fn inhomogeneous_states(&self) -> Vec<&str> {
        let a = self.intrinsic.automaton();
        self.state_homogeneity
            .iter()
            .enumerate()
            .filter(|(_, v)| **v == StateVerdict::Inhomogeneous)
            .map(|(s, _)| a.state_name(s))
            .collect()
    }
}

pub fn analyze_sequence(d: &Dfao) -> AnalysisReport {
    let intrinsic = intrinsic_automaton(d).target;
    let a = intrinsic.automaton();
    let witness = shortest_inhomogeneous_path(a);
    let opacity = match &witness {
        None => Opacity::Transparent,
        Some(w) => Opacity::Value(w.len()),
    };
    AnalysisReport {
        k: d.k(),
        states_count: d.num_states(),
        opacity,
        complexity: opacity.complexity(),
        classification: opacity.classification(),
        witness,
        state_homogeneity: state_homogeneity(a),
        strictly_accessible: a.is_strictly_accessible(),
        intrinsic,
    }
}

/// Analyses many automata, one per worker, results in input order.
pub fn analyze_batch(dfaos: &[Dfao], exec: Exec) -> Vec<AnalysisReport> {
    exec.map(dfaos.iter().collect(), analyze_sequence)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::oracle;

    fn word(s: &str) -> Vec<Digit> {
        s.bytes().map(|b| (b - b'0') as Digit).collect()
    }

    fn auto(name: &str) -> Automaton {
        corpus::build(name).unwrap().automaton().clone()
    }

    fn idx(a: &Automaton, name: &str) -> usize {
        a.index_of(name).unwrap()
    }

    /// Exhaustive search over words up to `max_len` for the shortest path
    /// from the initial state (or from `from`) whose last edge enters `s`
    /// with label `digit`.
    fn brute_last_edge(a: &Automaton, from: usize, s: usize, digit: Digit, max_len: usize) -> Option<usize> {
        for len in 1..=max_len {
            let total = a.k().pow(len as u32);
            for code in 0..total {
                let mut w = vec![0; len];
                let mut c = code;
                for slot in w.iter_mut().rev() {
                    *slot = c % a.k();
                    c /= a.k();
                }
                if w[len - 1] == digit && a.step(from, &w).unwrap() == s {
                    return Some(len);
                }
            }
        }
        None
    }

    #[test]
    fn homogeneity_examples() {
        use StateVerdict::*;
        assert_eq!(
            state_homogeneity(&auto("golay_shapiro")),
            [Homogeneous(Some(0)), Homogeneous(Some(1)), Homogeneous(Some(1)), Homogeneous(Some(0))]
        );
        assert_eq!(state_homogeneity(&auto("period_doubling")), [Inhomogeneous, Homogeneous(Some(1))]);
        let hanoi = auto("hanoi");
        let verdicts = state_homogeneity(&hanoi);
        for (name, inhom) in [("A", true), ("B", false), ("C", true), ("D", false), ("E", true), ("F", false)] {
            assert_eq!(verdicts[idx(&hanoi, name)] == Inhomogeneous, inhom, "{name}");
        }
        // an initial state nobody points back to
        let d = Dfao::from_rows(2, "P", &[("P", &["Q", "Q"], "x"), ("Q", &["Q", "Q"], "y")]).unwrap();
        assert_eq!(state_homogeneity(d.automaton())[0], Homogeneous(None));
    }

    #[test]
    fn homogeneous_automata() {
        assert!(is_homogeneous_automaton(&auto("paperfolding")));
        assert!(!is_homogeneous_automaton(&auto("thue_morse")));
        assert!(is_homogeneous_automaton(&auto("identity2")));
    }

    #[test]
    fn entry_and_return_distances() {
        let pd = auto("period_doubling");
        let tm = auto("thue_morse");
        let bs = auto("baum_sweet");
        let cases = [
            (&pd, "A", 0, Some(1)),
            (&pd, "A", 1, Some(2)),
            (&tm, "B", 0, Some(2)),
        ];
        for (a, s, d, expected) in cases {
            let s = idx(a, s);
            assert_eq!(brute_last_edge(a, a.initial(), s, d, 6), expected);
            assert_eq!(entry_distance(a, s, d), expected);
        }
        let cases = [
            (&pd, "A", 1, Some(2)),
            (&tm, "B", 0, Some(1)),
            (&bs, "B", 0, Some(2)),
        ];
        for (a, s, d, expected) in cases {
            let s = idx(a, s);
            assert_eq!(brute_last_edge(a, s, s, d, 6), expected);
            assert_eq!(return_distance(a, s, d), expected);
        }
        // B never receives a 0-edge in period-doubling
        assert_eq!(entry_distance(&pd, idx(&pd, "B"), 0), None);
        // D in Baum-Sweet cannot come back to A
        assert_eq!(return_distance(&bs, idx(&bs, "A"), 0), Some(1));
        assert_eq!(return_distance(&bs, idx(&bs, "C"), 1), None);
    }

    #[test]
    fn witnesses() {
        let cases = [
            ("period_doubling", Some(("011", "A", 0))),
            ("baum_sweet", Some(("100", "B", 0))),
            ("golay_shapiro", None),
            ("thue_morse", Some(("10", "B", 0))),
            ("hanoi", Some(("011", "A", 0))),
            ("ternary_digit_sum", Some(("10", "B", 0))),
        ];
        for (name, expected) in cases {
            let a = auto(name);
            let got = shortest_inhomogeneous_path(&a);
            match expected {
                None => assert_eq!(got, None, "{name}"),
                Some((w, s, pa)) => {
                    let got = got.unwrap();
                    assert_eq!(got.word, word(w), "{name}");
                    assert_eq!(got.collide_state, idx(&a, s), "{name}");
                    assert_eq!(got.position_a, pa);
                    assert_eq!(got.position_b, w.len() - 1);
                    assert!(got.is_consistent(&a));
                }
            }
        }
    }

    #[test]
    fn opacity_values() {
        for k in 2..6 {
            assert_eq!(compute_opacity(corpus::one_state(k).automaton()), Opacity::Value(2));
        }
        assert_eq!(compute_opacity(&auto("period_doubling")).distance(), DyadicDistance::Pow2Inv(2));
        assert_eq!(compute_opacity(&auto("hanoi")).distance(), DyadicDistance::Pow2Inv(2));
        assert_eq!(compute_opacity(&auto("identity2")), Opacity::Transparent);
        assert_eq!(Opacity::Value(2).distance(), MAX_OPACITY);
        assert!(Opacity::Value(3) < Opacity::Value(2));
        assert!(Opacity::Transparent < Opacity::Value(40));
    }

    #[test]
    fn quick_opacity_test() {
        assert!(is_opaque_quick(&auto("thue_morse")));
        assert!(is_opaque_quick(&auto("ternary_digit_sum")));
        assert!(!is_opaque_quick(&auto("period_doubling")));
    }

    #[test]
    fn homogeneous_prefixes() {
        let tm = auto("thue_morse");
        assert_eq!(longest_homogeneous_prefix(&tm, &word("10")).unwrap(), 1);
        assert_eq!(
            oracle::inf_over_outputs(&tm, &word("10")).unwrap(),
            DyadicDistance::Pow2Inv(1)
        );
        assert_eq!(longest_homogeneous_prefix(&tm, &[]).unwrap(), 0);
        let gs = auto("golay_shapiro");
        for len in 0..=12usize {
            for code in 0..(1u32 << len) {
                let w: Vec<Digit> = (0..len).rev().map(|i| ((code >> i) & 1) as Digit).collect();
                assert_eq!(longest_homogeneous_prefix(&gs, &w).unwrap(), len);
            }
        }
        assert!(longest_homogeneous_prefix(&tm, &[3]).is_err());
    }

    #[test]
    fn sequence_reports() {
        let c = analyze_sequence(&corpus::one_state(2));
        assert_eq!(c.opacity.distance(), DyadicDistance::Pow2Inv(1));
        assert_eq!(c.complexity, DyadicDistance::Pow2Inv(0));
        assert_eq!(c.classification, Classification::Opaque);

        let bs = analyze_sequence(&corpus::build("baum_sweet").unwrap());
        assert_eq!(bs.opacity.distance(), DyadicDistance::Pow2Inv(2));
        assert_eq!(bs.complexity, DyadicDistance::Pow2Inv(1));
        assert_eq!(bs.classification, Classification::Intermediate);
        assert!(!bs.strictly_accessible);
        assert_eq!(bs.inhomogeneous_states(), ["B", "D"]);

        let pf = analyze_sequence(&corpus::build("paperfolding").unwrap());
        assert_eq!(pf.opacity, Opacity::Transparent);
        assert_eq!(pf.complexity, DyadicDistance::Zero);
        assert_eq!(pf.classification, Classification::Transparent);
        assert!(pf.witness.is_none());
    }

    #[test]
    fn batch_matches_single() {
        let dfaos: Vec<Dfao> = corpus::names().iter().map(|n| corpus::build(n).unwrap()).collect();
        let seq = analyze_batch(&dfaos, Exec::Sequential);
        let par = analyze_batch(&dfaos, Exec::Parallel);
        assert_eq!(seq, par);
        for (d, r) in dfaos.iter().zip(&seq) {
            assert_eq!(&analyze_sequence(d), r);
        }
    }
}
