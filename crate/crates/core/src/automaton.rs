//! Complete deterministic k-automata, with and without output.
//!
//! States carry text names for display and files; everything internal works
//! on indices. An [`Automaton`] is always total and accessible: every
//! `(state, digit)` pair has a successor and every state is reachable from
//! the initial one. [`validate`] is the only way in from untrusted input and
//! prunes unreachable states rather than rejecting them.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::exec::Exec;

/// A letter of the input alphabet `{0, .., k-1}`.
pub type Digit = usize;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Automaton {
    k: usize,
    states: Vec<String>,
    initial: usize,
    /// Row-major `states.len() x k` successor table.
    delta: Vec<usize>,
}

/// An automaton together with one output token per state.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Dfao {
    automaton: Automaton,
    output: Vec<String>,
}

/// The path traced from the initial state by a word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathRun {
    pub word: Vec<Digit>,
    /// `word.len() + 1` states, starting with the initial state.
    pub vertices: Vec<usize>,
    /// `(source, label, target)` for every letter of `word`.
    pub edges: Vec<(usize, Digit, usize)>,
}

impl PathRun {
    pub fn last(&self) -> usize {
        *self.vertices.last().expect("a path has at least one vertex")
    }
}

impl Automaton {
    /// Builds an automaton from already-checked parts.
    ///
    /// Callers guarantee totality and in-range indices; accessibility is
    /// restored by pruning.
    pub(crate) fn from_parts(k: usize, states: Vec<String>, initial: usize, delta: Vec<usize>) -> Self {
        debug_assert_eq!(delta.len(), states.len() * k);
        debug_assert!(delta.iter().all(|&t| t < states.len()));
        Automaton {
            k,
            states,
            initial,
            delta,
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn state_names(&self) -> &[String] {
        &self.states
    }

    pub fn state_name(&self, s: usize) -> &str {
        &self.states[s]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.states.iter().position(|n| n == name)
    }

    /// One transition. Panics if `s` or `digit` is out of range.
    #[inline]
    pub fn next(&self, s: usize, digit: Digit) -> usize {
        assert!(digit < self.k, "digit {digit} out of range for radix {}", self.k);
        self.delta[s * self.k + digit]
    }

    /// The successor row of `s`, indexed by digit.
    pub fn row(&self, s: usize) -> &[usize] {
        &self.delta[s * self.k..(s + 1) * self.k]
    }

    pub(crate) fn table(&self) -> &[usize] {
        &self.delta
    }

    fn check_word(&self, word: &[Digit]) -> Result<()> {
        match word.iter().find(|&&d| d >= self.k) {
            Some(&digit) => Err(Error::DigitOutOfRange {
                digit,
                k: self.k,
                line: None,
            }),
            None => Ok(()),
        }
    }

    /// The extended transition `t(s, word)`; the empty word returns `s`.
    pub fn step(&self, s: usize, word: &[Digit]) -> Result<usize> {
        self.check_word(word)?;
        Ok(word.iter().fold(s, |q, &d| self.next(q, d)))
    }

    pub fn run_path(&self, word: &[Digit]) -> Result<PathRun> {
        self.check_word(word)?;
        let mut vertices = Vec::with_capacity(word.len() + 1);
        let mut edges = Vec::with_capacity(word.len());
        let mut q = self.initial;
        vertices.push(q);
        for &d in word {
            let next = self.next(q, d);
            edges.push((q, d, next));
            vertices.push(next);
            q = next;
        }
        Ok(PathRun {
            word: word.to_vec(),
            vertices,
            edges,
        })
    }

    /// Breadth-first distances (in edges) from `from`; `None` if unreachable.
    pub fn distances_from(&self, from: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.num_states()];
        dist[from] = Some(0);
        let mut queue = VecDeque::from([from]);
        while let Some(q) = queue.pop_front() {
            let dq = dist[q].unwrap();
            for &r in self.row(q) {
                if dist[r].is_none() {
                    dist[r] = Some(dq + 1);
                    queue.push_back(r);
                }
            }
        }
        dist
    }

    /// True iff the transition graph is strongly connected.
    pub fn is_strictly_accessible(&self) -> bool {
        // every state reaches i_0 and i_0 reaches every state
        let forward = self.distances_from(self.initial);
        if forward.iter().any(Option::is_none) {
            return false;
        }
        let mut preds = vec![Vec::new(); self.num_states()];
        for s in 0..self.num_states() {
            for &t in self.row(s) {
                preds[t].push(s);
            }
        }
        let mut seen = vec![false; self.num_states()];
        seen[self.initial] = true;
        let mut stack = vec![self.initial];
        while let Some(q) = stack.pop() {
            for &p in &preds[q] {
                if !seen[p] {
                    seen[p] = true;
                    stack.push(p);
                }
            }
        }
        seen.into_iter().all(|x| x)
    }

    /// Drops states not reachable from the initial state, keeping order.
    /// Returns the survivors' old indices.
    pub(crate) fn prune(&self) -> (Automaton, Vec<usize>) {
        let reach = self.distances_from(self.initial);
        let kept: Vec<usize> = (0..self.num_states()).filter(|&s| reach[s].is_some()).collect();
        if kept.len() == self.num_states() {
            return (self.clone(), kept);
        }
        let mut new_index = vec![usize::MAX; self.num_states()];
        for (i, &s) in kept.iter().enumerate() {
            new_index[s] = i;
        }
        let delta = kept
            .iter()
            .flat_map(|&s| self.row(s).iter().map(|&t| new_index[t]))
            .collect();
        let states = kept.iter().map(|&s| self.states[s].clone()).collect();
        (
            Automaton::from_parts(self.k, states, new_index[self.initial], delta),
            kept,
        )
    }

    /// Renumbers states so that `order[i]` becomes state `i`.
    pub(crate) fn permute(&self, order: &[usize]) -> Automaton {
        let mut new_index = vec![usize::MAX; self.num_states()];
        for (i, &s) in order.iter().enumerate() {
            new_index[s] = i;
        }
        let delta = order
            .iter()
            .flat_map(|&s| self.row(s).iter().map(|&t| new_index[t]))
            .collect();
        Automaton::from_parts(
            self.k,
            order.iter().map(|&s| self.states[s].clone()).collect(),
            new_index[self.initial],
            delta,
        )
    }

    /// States in breadth-first discovery order from the initial state,
    /// exploring digits `0..k` in order.
    pub fn bfs_order(&self) -> Vec<usize> {
        let mut seen = vec![false; self.num_states()];
        let mut order = Vec::with_capacity(self.num_states());
        seen[self.initial] = true;
        let mut queue = VecDeque::from([self.initial]);
        while let Some(q) = queue.pop_front() {
            order.push(q);
            for &r in self.row(q) {
                if !seen[r] {
                    seen[r] = true;
                    queue.push_back(r);
                }
            }
        }
        order
    }
}

impl Dfao {
    pub(crate) fn from_parts(automaton: Automaton, output: Vec<String>) -> Self {
        debug_assert_eq!(automaton.num_states(), output.len());
        Dfao { automaton, output }
    }

    /// Convenience constructor from a successor table given as rows of
    /// state names. Runs [`validate`]; unreachable states are dropped.
    pub fn from_rows(k: usize, initial: &str, rows: &[(&str, &[&str], &str)]) -> Result<Self> {
        let mut raw = RawDescription::new(k, rows.iter().map(|r| r.0), initial);
        for (state, succ, out) in rows {
            raw.output(state, out);
            for (digit, dst) in succ.iter().enumerate() {
                raw.edge(state, digit, dst);
            }
        }
        validate(raw).map(|v| v.dfao)
    }

    pub fn automaton(&self) -> &Automaton {
        &self.automaton
    }

    pub fn k(&self) -> usize {
        self.automaton.k
    }

    pub fn num_states(&self) -> usize {
        self.automaton.num_states()
    }

    pub fn outputs(&self) -> &[String] {
        &self.output
    }

    pub fn output(&self, s: usize) -> &str {
        &self.output[s]
    }

    /// The output read after feeding `word` from the initial state.
    pub fn eval(&self, word: &[Digit]) -> Result<&str> {
        let s = self.automaton.step(self.automaton.initial, word)?;
        Ok(&self.output[s])
    }

    /// `u(n)`: the output after reading the most-significant-first base-k
    /// digits of `n`. `u(0)` is the initial state's output.
    pub fn term(&self, n: u64) -> &str {
        let a = &self.automaton;
        let s = digits_msb(n, a.k).into_iter().fold(a.initial, |q, d| a.next(q, d));
        &self.output[s]
    }

    /// The first `n_terms` terms of the generated sequence.
    pub fn generate(&self, n_terms: u64) -> Vec<&str> {
        self.generate_with(n_terms, Exec::available())
    }

    pub fn generate_with(&self, n_terms: u64, exec: Exec) -> Vec<&str> {
        let n = usize::try_from(n_terms).expect("term count fits in memory");
        exec.map_range(n, |i| self.term(i as u64))
    }

    /// Adds a fresh initial state with a zero self-loop when `t(i_0, 0) != i_0`.
    ///
    /// The fresh state copies the old initial state's non-zero transitions
    /// and output; states left unreachable are pruned. The generated
    /// sequence is unchanged.
    pub fn normalize_zero(&self) -> Dfao {
        let a = &self.automaton;
        if a.next(a.initial, 0) == a.initial {
            return self.clone();
        }
        let mut name = format!("{}'", a.states[a.initial]);
        while a.index_of(&name).is_some() {
            name.push('\'');
        }
        // fresh state goes first, old states shift by one
        let mut states = Vec::with_capacity(a.num_states() + 1);
        states.push(name);
        states.extend(a.states.iter().cloned());
        let mut delta = Vec::with_capacity(states.len() * a.k);
        delta.push(0);
        delta.extend(a.row(a.initial)[1..].iter().map(|&t| t + 1));
        delta.extend(a.delta.iter().map(|&t| t + 1));
        let mut output = Vec::with_capacity(states.len());
        output.push(self.output[a.initial].clone());
        output.extend(self.output.iter().cloned());

        let (automaton, kept) = Automaton::from_parts(a.k, states, 0, delta).prune();
        let output = kept.into_iter().map(|s| output[s].clone()).collect();
        Dfao::from_parts(automaton, output)
    }

    /// Same states, reordered by breadth-first discovery from the initial
    /// state (digits in increasing order). Names are kept.
    pub fn canonical_form(&self) -> Dfao {
        let order = self.automaton.bfs_order();
        Dfao::from_parts(
            self.automaton.permute(&order),
            order.iter().map(|&s| self.output[s].clone()).collect(),
        )
    }

    /// Equality up to state names: same radix, same table, same outputs,
    /// same initial index.
    pub fn same_structure(&self, other: &Dfao) -> bool {
        self.automaton.k == other.automaton.k
            && self.automaton.initial == other.automaton.initial
            && self.automaton.delta == other.automaton.delta
            && self.output == other.output
    }

    /// Isomorphic as automata with output: equal canonical forms up to names.
    pub fn is_isomorphic(&self, other: &Dfao) -> bool {
        self.canonical_form().same_structure(&other.canonical_form())
    }

    /// True iff both produce the same output on every finite word, decided
    /// by exploring the reachable part of the product automaton.
    pub fn are_equivalent(&self, other: &Dfao) -> Result<bool> {
        let (a, b) = (&self.automaton, &other.automaton);
        if a.k != b.k {
            return Err(Error::RadixMismatch {
                left: a.k,
                right: b.k,
            });
        }
        let mut seen = vec![false; a.num_states() * b.num_states()];
        let start = (a.initial, b.initial);
        seen[start.0 * b.num_states() + start.1] = true;
        let mut queue = VecDeque::from([start]);
        while let Some((p, q)) = queue.pop_front() {
            if self.output[p] != other.output[q] {
                return Ok(false);
            }
            for d in 0..a.k {
                let next = (a.next(p, d), b.next(q, d));
                let key = next.0 * b.num_states() + next.1;
                if !seen[key] {
                    seen[key] = true;
                    queue.push_back(next);
                }
            }
        }
        Ok(true)
    }
}

/// Base-k digits of `n`, most significant first; empty for `n = 0`.
pub fn digits_msb(mut n: u64, k: usize) -> Vec<Digit> {
    assert!(k >= 2, "radix must be at least 2");
    let k = k as u64;
    let mut digits = Vec::new();
    while n > 0 {
        digits.push((n % k) as Digit);
        n /= k;
    }
    digits.reverse();
    digits
}

/// An unchecked automaton description, as read from a file or assembled by
/// hand. Line numbers, when present, are carried into errors.
#[derive(Debug, Clone, Default)]
pub struct RawDescription {
    pub k: usize,
    pub k_line: Option<usize>,
    pub states: Vec<(String, Option<usize>)>,
    pub initial: String,
    pub initial_line: Option<usize>,
    pub outputs: Vec<(String, String, Option<usize>)>,
    pub edges: Vec<RawEdge>,
}

#[derive(Debug, Clone)]
pub struct RawEdge {
    pub src: String,
    pub digit: usize,
    pub dst: String,
    pub line: Option<usize>,
}

impl RawDescription {
    pub fn new<'a>(k: usize, states: impl IntoIterator<Item = &'a str>, initial: &str) -> Self {
        RawDescription {
            k,
            states: states.into_iter().map(|s| (s.to_string(), None)).collect(),
            initial: initial.to_string(),
            ..Default::default()
        }
    }

    pub fn edge(&mut self, src: &str, digit: usize, dst: &str) -> &mut Self {
        self.edges.push(RawEdge {
            src: src.to_string(),
            digit,
            dst: dst.to_string(),
            line: None,
        });
        self
    }

    pub fn output(&mut self, state: &str, token: &str) -> &mut Self {
        self.outputs.push((state.to_string(), token.to_string(), None));
        self
    }
}

/// A checked automaton plus what validation had to drop.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Validated {
    pub dfao: Dfao,
    /// Names of unreachable states that were removed, in input order.
    pub pruned: Vec<String>,
    /// True when no outputs were given and each state outputs its own name.
    pub bare: bool,
}

/// Tokens must survive a whitespace-delimited, `#`-commented text format.
pub fn is_valid_token(token: &str) -> bool {
    !token.is_empty() && !token.contains('#') && !token.chars().any(char::is_whitespace)
}

/// Checks a raw description and prunes unreachable states.
pub fn validate(raw: RawDescription) -> Result<Validated> {
    let k = raw.k;
    if k < 2 {
        return Err(Error::BadRadix { k });
    }
    if raw.states.is_empty() {
        return Err(Error::NoStates);
    }
    let mut index: HashMap<&str, usize> = HashMap::new();
    for (i, (name, line)) in raw.states.iter().enumerate() {
        if !is_valid_token(name) {
            return Err(Error::InvalidToken {
                token: name.clone(),
                line: *line,
            });
        }
        if index.insert(name.as_str(), i).is_some() {
            return Err(Error::DuplicateState {
                state: name.clone(),
                line: *line,
            });
        }
    }
    let lookup = |name: &str, line: Option<usize>| {
        index.get(name).copied().ok_or_else(|| Error::UnknownState {
            state: name.to_string(),
            line,
        })
    };
    let n = raw.states.len();
    let initial = lookup(&raw.initial, raw.initial_line)?;

    let mut delta = vec![usize::MAX; n * k];
    for e in &raw.edges {
        let src = lookup(&e.src, e.line)?;
        if e.digit >= k {
            return Err(Error::DigitOutOfRange {
                digit: e.digit,
                k,
                line: e.line,
            });
        }
        let dst = lookup(&e.dst, e.line)?;
        let slot = &mut delta[src * k + e.digit];
        if *slot != usize::MAX {
            return Err(Error::DuplicateTransition {
                state: e.src.clone(),
                digit: e.digit,
                line: e.line,
            });
        }
        *slot = dst;
    }
    if let Some(pos) = delta.iter().position(|&t| t == usize::MAX) {
        let (state, line) = &raw.states[pos / k];
        return Err(Error::MissingTransition {
            state: state.clone(),
            digit: pos % k,
            line: *line,
        });
    }

    let bare = raw.outputs.is_empty();
    let output: Vec<String> = if bare {
        raw.states.iter().map(|(name, _)| name.clone()).collect()
    } else {
        let mut output: Vec<Option<String>> = vec![None; n];
        for (state, token, line) in &raw.outputs {
            let s = lookup(state, *line)?;
            if !is_valid_token(token) {
                return Err(Error::InvalidToken {
                    token: token.clone(),
                    line: *line,
                });
            }
            if output[s].is_some() {
                return Err(Error::Syntax {
                    line: line.unwrap_or(0),
                    message: format!("duplicate output for state `{state}`"),
                });
            }
            output[s] = Some(token.clone());
        }
        let mut out = Vec::with_capacity(n);
        for (s, o) in output.into_iter().enumerate() {
            match o {
                Some(o) => out.push(o),
                None => {
                    return Err(Error::MissingOutput {
                        state: raw.states[s].0.clone(),
                        line: raw.states[s].1,
                    })
                }
            }
        }
        out
    };

    let names = raw.states.into_iter().map(|(name, _)| name).collect();
    let full = Automaton::from_parts(k, names, initial, delta);
    let (automaton, kept) = full.prune();
    let mut keep = vec![false; n];
    kept.iter().for_each(|&s| keep[s] = true);
    let pruned = (0..n)
        .filter(|&s| !keep[s])
        .map(|s| full.states[s].clone())
        .collect();
    let output = kept.into_iter().map(|s| output[s].clone()).collect();
    Ok(Validated {
        dfao: Dfao::from_parts(automaton, output),
        pruned,
        bare,
    })
}
