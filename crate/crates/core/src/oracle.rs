//! Brute-force opacity straight from the definition: for each input word,
//! the best any output assignment `o: S -> {0..k-1}` can do at reproducing
//! the word, then the worst case over words.
//!
//! Nothing here looks at homogeneity; it only enumerates assignments and
//! words. It exists to cross-check [`crate::opacity`] on small instances.

use crate::automaton::{Automaton, Digit};
use crate::dyadic::DyadicDistance;
use crate::error::{Error, Result};
use crate::exec::Exec;

/// Largest number of output assignments the oracle will enumerate.
pub const MAX_ASSIGNMENTS: u64 = 1_000_000;
/// Largest number of words of maximal length the oracle will enumerate.
pub const MAX_WORDS: u64 = 10_000_000;

/// One output digit per state.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OutputAssignment(pub Vec<Digit>);

impl OutputAssignment {
    /// The readout `o(t(i_0, w[0..=m]))` for every position `m` of `word`.
    pub fn read(&self, a: &Automaton, word: &[Digit]) -> Vec<Digit> {
        let mut q = a.initial();
        word.iter()
            .map(|&d| {
                q = a.next(q, d);
                self.0[q]
            })
            .collect()
    }
}

/// Prefix distance: zero for equal words, else `2^-n` with `n` the first
/// index where they differ. When one word is a proper prefix of the other,
/// `n` is the shorter length.
pub fn prefix_distance<T: PartialEq>(w: &[T], v: &[T]) -> DyadicDistance {
    if w == v {
        return DyadicDistance::Zero;
    }
    let n = w
        .iter()
        .zip(v)
        .position(|(x, y)| x != y)
        .unwrap_or_else(|| w.len().min(v.len()));
    DyadicDistance::pow2_inv(n).expect("word length within exponent cap")
}

fn assignment_count(a: &Automaton) -> Result<u64> {
    u32::try_from(a.num_states())
        .ok()
        .and_then(|n| (a.k() as u64).checked_pow(n))
        .filter(|&c| c <= MAX_ASSIGNMENTS)
        .ok_or_else(|| Error::InstanceTooLarge {
            what: format!("{}^{} output assignments", a.k(), a.num_states()),
        })
}

fn decode(mut code: u64, k: usize, n: usize) -> OutputAssignment {
    let mut digits = vec![0; n];
    for d in digits.iter_mut() {
        *d = (code % k as u64) as Digit;
        code /= k as u64;
    }
    OutputAssignment(digits)
}

/// Every element of `{0..k-1}^S`, in counting order.
pub fn all_assignments(a: &Automaton) -> Result<impl Iterator<Item = OutputAssignment> + '_> {
    let count = assignment_count(a)?;
    Ok((0..count).map(move |c| decode(c, a.k(), a.num_states())))
}

/// Minimum over the given assignments of the distance between their
/// readout of `word` and `word` itself.
pub fn inf_over_assignments(
    a: &Automaton,
    word: &[Digit],
    assignments: impl IntoIterator<Item = OutputAssignment>,
) -> DyadicDistance {
    let mut best: Option<DyadicDistance> = None;
    for o in assignments {
        let dist = prefix_distance(&o.read(a, word), word);
        if best.is_none_or(|b| dist < b) {
            best = Some(dist);
        }
    }
    best.expect("at least one assignment")
}

/// Minimum over all `k^|S|` assignments.
pub fn inf_over_outputs(a: &Automaton, word: &[Digit]) -> Result<DyadicDistance> {
    if let Some(&digit) = word.iter().find(|&&d| d >= a.k()) {
        return Err(Error::DigitOutOfRange {
            digit,
            k: a.k(),
            line: None,
        });
    }
    Ok(inf_over_assignments(a, word, all_assignments(a)?))
}

/// Maximum of [`inf_over_outputs`] over all words of length `1..=max_len`.
pub fn brute_force_opacity(a: &Automaton, max_len: usize) -> Result<DyadicDistance> {
    brute_force_opacity_with(a, max_len, Exec::available())
}

/// Same as [`brute_force_opacity`] with an explicit execution mode.
///
/// Words are walked as a tree. Each node keeps the assignments whose
/// readout agrees with the word so far. Once that set is empty at position
/// `m`, the word and all its extensions have value `2^-m`, so the subtree
/// is not expanded further. The set is nonempty at the end of a word
/// exactly when the word's value is zero.
pub fn brute_force_opacity_with(a: &Automaton, max_len: usize, exec: Exec) -> Result<DyadicDistance> {
    let count = assignment_count(a)?;
    let words = u32::try_from(max_len)
        .ok()
        .and_then(|l| (a.k() as u64).checked_pow(l));
    if words.is_none_or(|w| w > MAX_WORDS) {
        return Err(Error::InstanceTooLarge {
            what: format!("{}^{} words", a.k(), max_len),
        });
    }
    if max_len == 0 {
        return Ok(DyadicDistance::Zero);
    }
    let all: Vec<OutputAssignment> = (0..count).map(|c| decode(c, a.k(), a.num_states())).collect();
    let roots: Vec<Digit> = (0..a.k()).collect();
    let deaths = exec.map(roots, |d| {
        let survivors: Vec<&OutputAssignment> = all.iter().collect();
        earliest_death(a, a.initial(), d, 0, &survivors, max_len)
    });
    Ok(match deaths.into_iter().flatten().min() {
        None => DyadicDistance::Zero,
        Some(m) => DyadicDistance::pow2_inv(m).expect("bounded by max_len"),
    })
}

/// Smallest position at which some word extending the current one, reading
/// `digit` at `position`, leaves no assignment agreeing with it.
fn earliest_death(
    a: &Automaton,
    from: usize,
    digit: Digit,
    position: usize,
    survivors: &[&OutputAssignment],
    max_len: usize,
) -> Option<usize> {
    let q = a.next(from, digit);
    let kept: Vec<&OutputAssignment> = survivors.iter().copied().filter(|o| o.0[q] == digit).collect();
    if kept.is_empty() {
        return Some(position);
    }
    if position + 1 == max_len {
        return None;
    }
    let mut best: Option<usize> = None;
    for d in 0..a.k() {
        if let Some(m) = earliest_death(a, q, d, position + 1, &kept, max_len) {
            best = Some(best.map_or(m, |b| b.min(m)));
            if m == position + 1 {
                break;
            }
        }
    }
    best
}

/// A word length at which [`brute_force_opacity`] has provably stabilised:
/// `2|S| + 2`, above the `2|S|` bound on shortest inhomogeneous paths
/// (an entry path and a return cycle of at most `|S|` edges each).
pub fn oracle_bound(a: &Automaton) -> usize {
    2 * a.num_states() + 2
}
