//! Random automata for property tests and benchmarks.

use rand::Rng;

use crate::automaton::{Automaton, Dfao};

/// A random accessible k-automaton with exactly `n` states named `q0..`.
///
/// State `i > 0` is first wired in from a random earlier state, so every
/// state is reachable; remaining transitions are uniform.
pub fn random_automaton<R: Rng + ?Sized>(rng: &mut R, k: usize, n: usize) -> Automaton {
    assert!(k >= 2 && n >= 1);
    let mut delta = vec![usize::MAX; n * k];
    for i in 1..n {
        loop {
            let slot = rng.gen_range(0..i * k);
            if delta[slot] == usize::MAX {
                delta[slot] = i;
                break;
            }
        }
    }
    for t in delta.iter_mut().filter(|t| **t == usize::MAX) {
        *t = rng.gen_range(0..n);
    }
    Automaton::from_parts(k, (0..n).map(|i| format!("q{i}")).collect(), 0, delta)
}

/// A random DFAO over `n` states with outputs drawn from `outputs` tokens
/// `"0".."outputs-1"`.
pub fn random_dfao<R: Rng + ?Sized>(rng: &mut R, k: usize, n: usize, outputs: usize) -> Dfao {
    let a = random_automaton(rng, k, n);
    let output = (0..n).map(|_| rng.gen_range(0..outputs).to_string()).collect();
    Dfao::from_parts(a, output)
}

/// A random homogeneous k-automaton with `n >= k` states: every state gets
/// a type, and each `d`-edge goes to a state of type `d`. Unreachable
/// states are pruned, so the result may be smaller than `n`.
pub fn random_homogeneous_automaton<R: Rng + ?Sized>(rng: &mut R, k: usize, n: usize) -> Automaton {
    assert!(k >= 2 && n >= k);
    let mut types: Vec<usize> = (0..n).map(|i| if i < k { i } else { rng.gen_range(0..k) }).collect();
    // keep the initial state random too
    let first = rng.gen_range(0..n);
    types.swap(0, first);
    let of_type: Vec<Vec<usize>> = (0..k)
        .map(|d| (0..n).filter(|&s| types[s] == d).collect())
        .collect();
    let delta = (0..n)
        .flat_map(|_| (0..k).collect::<Vec<_>>())
        .map(|d| of_type[d][rng.gen_range(0..of_type[d].len())])
        .collect();
    Automaton::from_parts(k, (0..n).map(|i| format!("q{i}")).collect(), 0, delta)
        .prune()
        .0
}

/// An equivalent DFAO with state `s` duplicated: the copy has the same
/// row and output, and each edge into `s` is redirected to the copy with
/// probability one half. The copy is pruned if nothing reaches it.
pub fn split_state<R: Rng + ?Sized>(rng: &mut R, d: &Dfao, s: usize) -> Dfao {
    let a = d.automaton();
    let (n, k) = (a.num_states(), a.k());
    let mut name = format!("{}~", a.state_name(s));
    while a.index_of(&name).is_some() {
        name.push('~');
    }
    let mut states = a.state_names().to_vec();
    states.push(name);
    let mut delta = a.table().to_vec();
    delta.extend_from_slice(a.row(s));
    for t in delta.iter_mut() {
        if *t == s && rng.gen_bool(0.5) {
            *t = n;
        }
    }
    let mut output = d.outputs().to_vec();
    output.push(d.output(s).to_string());
    let (pruned, kept) = Automaton::from_parts(k, states, a.initial(), delta).prune();
    let output = kept.into_iter().map(|i| output[i].clone()).collect();
    Dfao::from_parts(pruned, output)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_automata_are_accessible() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let k = rng.gen_range(2..5);
            let n = rng.gen_range(1..8);
            let a = random_automaton(&mut rng, k, n);
            assert_eq!(a.num_states(), n);
            assert!(a.distances_from(a.initial()).iter().all(Option::is_some));
        }
    }

    #[test]
    fn homogeneous_automata_are_homogeneous() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let k = rng.gen_range(2..4);
            let n = rng.gen_range(k..7);
            let a = random_homogeneous_automaton(&mut rng, k, n);
            assert!(crate::opacity::is_homogeneous_automaton(&a));
        }
    }

    #[test]
    fn splitting_preserves_behaviour() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..200 {
            let d = random_dfao(&mut rng, 2, 4, 2);
            let s = rng.gen_range(0..d.num_states());
            let split = split_state(&mut rng, &d, s);
            assert!(split.num_states() >= d.num_states());
            assert!(d.are_equivalent(&split).unwrap());
        }
    }
}
