//! Moore-style minimization and the intrinsic automaton of a sequence.

use std::collections::HashMap;

use crate::automaton::{Automaton, Dfao};

/// A partition of the states of a [`Dfao`] into blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    block_of: Vec<usize>,
    count: usize,
}

impl Partition {
    pub fn block_of(&self, s: usize) -> usize {
        self.block_of[s]
    }

    pub fn blocks(&self) -> &[usize] {
        &self.block_of
    }

    pub fn count(&self) -> usize {
        self.count
    }

    /// Groups keyed by `key`, block ids assigned in order of each group's
    /// smallest state index.
    fn by_key<K: std::hash::Hash + Eq>(keys: impl Iterator<Item = K>) -> Self {
        let mut ids = HashMap::new();
        let block_of: Vec<usize> = keys
            .map(|key| {
                let next = ids.len();
                *ids.entry(key).or_insert(next)
            })
            .collect();
        Partition {
            block_of,
            count: ids.len(),
        }
    }
}

/// The coarsest partition into indistinguishable states.
///
/// Starts from the partition by output and splits on successor blocks until
/// the block count stops growing.
pub fn moore_partition(d: &Dfao) -> Partition {
    let a = d.automaton();
    let mut partition = Partition::by_key(d.outputs().iter());
    loop {
        let refined = Partition::by_key((0..a.num_states()).map(|s| {
            let mut signature = Vec::with_capacity(a.k() + 1);
            signature.push(partition.block_of[s]);
            signature.extend(a.row(s).iter().map(|&t| partition.block_of[t]));
            signature
        }));
        if refined.count == partition.count {
            return partition;
        }
        partition = refined;
    }
}

pub fn is_minimal(d: &Dfao) -> bool {
    moore_partition(d).count == d.num_states()
}

/// A surjective homomorphism from `source` onto `target` that respects
/// outputs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorMap {
    pub source: Dfao,
    pub target: Dfao,
    /// `map[s]` is the target state of source state `s`.
    pub map: Vec<usize>,
}

impl FactorMap {
    /// Checks surjectivity, the initial-state law, the homomorphism law and
    /// output compatibility.
    pub fn is_valid(&self) -> bool {
        let (a, b) = (self.source.automaton(), self.target.automaton());
        if a.k() != b.k() || self.map.len() != a.num_states() {
            return false;
        }
        let mut hit = vec![false; b.num_states()];
        for &t in &self.map {
            if t >= b.num_states() {
                return false;
            }
            hit[t] = true;
        }
        hit.into_iter().all(|h| h)
            && self.map[a.initial()] == b.initial()
            && (0..a.num_states()).all(|s| {
                self.source.output(s) == self.target.output(self.map[s])
                    && (0..a.k()).all(|d| self.map[a.next(s, d)] == b.next(self.map[s], d))
            })
    }
}

/// The minimal equivalent automaton as a quotient of `d`, in canonical
/// (breadth-first) state order. Each block is named after its
/// lowest-indexed member.
pub fn minimize(d: &Dfao) -> FactorMap {
    let a = d.automaton();
    let partition = moore_partition(d);
    let mut rep = vec![usize::MAX; partition.count];
    for s in (0..a.num_states()).rev() {
        rep[partition.block_of[s]] = s;
    }
    let delta = rep
        .iter()
        .flat_map(|&r| a.row(r).iter().map(|&t| partition.block_of[t]))
        .collect();
    let quotient = Dfao::from_parts(
        Automaton::from_parts(
            a.k(),
            rep.iter().map(|&r| a.state_name(r).to_string()).collect(),
            partition.block_of[a.initial()],
            delta,
        ),
        rep.iter().map(|&r| d.output(r).to_string()).collect(),
    );

    let order = quotient.automaton().bfs_order();
    let mut position = vec![0; order.len()];
    for (i, &b) in order.iter().enumerate() {
        position[b] = i;
    }
    FactorMap {
        source: d.clone(),
        target: quotient.canonical_form(),
        map: partition.block_of.iter().map(|&b| position[b]).collect(),
    }
}

/// Minimizes the zero-normalized automaton: the smallest automaton with a
/// zero self-loop at its initial state generating the same sequence.
/// `source` of the result is the normalized automaton.
pub fn intrinsic_automaton(d: &Dfao) -> FactorMap {
    minimize(&d.normalize_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::Digit;
    use crate::corpus;

    fn split_thue_morse() -> Dfao {
        Dfao::from_rows(
            2,
            "A1",
            &[
                ("A1", &["A2", "B"], "0"),
                ("A2", &["A1", "B"], "0"),
                ("B", &["B", "A2"], "1"),
            ],
        )
        .unwrap()
    }

    fn all_words(k: usize, max_len: usize) -> Vec<Vec<Digit>> {
        let mut words = vec![vec![]];
        let mut frontier = vec![vec![]];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &frontier {
                for d in 0..k {
                    let mut v: Vec<Digit> = w.clone();
                    v.push(d);
                    next.push(v);
                }
            }
            words.extend(next.iter().cloned());
            frontier = next;
        }
        words
    }

    #[test]
    fn partition_examples() {
        let tm = corpus::build("thue_morse").unwrap();
        let p = moore_partition(&tm);
        assert_eq!(p.count(), 2);
        assert_eq!(p.blocks(), [0, 1]);

        let split = split_thue_morse();
        let p = moore_partition(&split);
        assert_eq!(p.count(), 2);
        assert_eq!(p.block_of(0), p.block_of(1));
        // oracle: A1 and A2 agree on every word up to length 8, B differs
        let a = split.automaton();
        for w in all_words(2, 8) {
            assert_eq!(split.output(a.step(0, &w).unwrap()), split.output(a.step(1, &w).unwrap()));
        }
        assert_ne!(split.output(2), split.output(0));

        let hanoi = corpus::build("hanoi").unwrap();
        let p = moore_partition(&hanoi);
        assert_eq!(p.count(), 6);
        assert_eq!(p.blocks(), [0, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn minimize_examples() {
        let tm = corpus::build("thue_morse").unwrap();
        let f = minimize(&tm);
        assert_eq!(f.target.num_states(), 2);
        assert_eq!(f.map, [0, 1]);
        assert!(f.is_valid());

        let gs = corpus::build("golay_shapiro").unwrap();
        assert_eq!(minimize(&gs).target.num_states(), 4);

        let split = split_thue_morse();
        let f = minimize(&split);
        assert!(f.is_valid());
        assert_eq!(f.target.num_states(), 2);
        assert_eq!(f.map[0], f.map[1]);
        assert!(split.are_equivalent(&f.target).unwrap());
        assert!(f.target.is_isomorphic(&tm));
    }

    #[test]
    fn intrinsic_examples() {
        let bs = corpus::build("baum_sweet").unwrap();
        let f = intrinsic_automaton(&bs);
        assert_eq!(f.target, bs);

        for k in 2..5 {
            let mut rows: Vec<(String, Vec<String>)> = Vec::new();
            for s in 0..3 {
                let succ = (0..k).map(|d| format!("q{}", (s + d) % 3)).collect();
                rows.push((format!("q{s}"), succ));
            }
            let succ: Vec<Vec<&str>> = rows.iter().map(|r| r.1.iter().map(String::as_str).collect()).collect();
            let table: Vec<(&str, &[&str], &str)> = rows
                .iter()
                .zip(&succ)
                .map(|(r, s)| (r.0.as_str(), s.as_slice(), "c"))
                .collect();
            let constant = Dfao::from_rows(k, "q0", &table).unwrap();
            let f = intrinsic_automaton(&constant);
            assert_eq!(f.target.num_states(), 1);
            assert!(f.target.is_isomorphic(&corpus::one_state_with_output(k, "c")));
        }

        let pq = Dfao::from_rows(2, "P", &[("P", &["Q", "P"], "x"), ("Q", &["Q", "Q"], "y")]).unwrap();
        let f = intrinsic_automaton(&pq);
        assert!(f.is_valid());
        let t = f.target.automaton();
        assert_eq!(t.next(t.initial(), 0), t.initial());
        assert!(is_minimal(&f.target));
        assert_eq!(f.target.generate(1000), pq.generate(1000));
    }

    #[test]
    fn minimality_examples() {
        assert!(is_minimal(&corpus::build("thue_morse").unwrap()));
        assert!(!is_minimal(&split_thue_morse()));
        assert!(is_minimal(&corpus::build("hanoi").unwrap()));
    }
}
