use opacity::gen::{random_automaton, random_dfao, random_homogeneous_automaton, split_state};
use opacity::oracle::{brute_force_opacity, inf_over_outputs, oracle_bound};
use opacity::{
    aut, compute_opacity, intrinsic_automaton, is_homogeneous_automaton, is_opaque_quick,
    longest_homogeneous_prefix, minimize, shortest_inhomogeneous_path, Automaton, Dfao, Digit,
    DyadicDistance, Opacity,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn words(k: usize, len: usize) -> impl Iterator<Item = Vec<Digit>> {
    (0..(k as u64).pow(len as u32)).map(move |mut code| {
        let mut w = vec![0; len];
        for slot in w.iter_mut().rev() {
            *slot = (code % k as u64) as Digit;
            code /= k as u64;
        }
        w
    })
}

fn is_inhomogeneous(a: &Automaton, w: &[Digit]) -> bool {
    longest_homogeneous_prefix(a, w).unwrap() < w.len()
}

prop_compose! {
    fn small_dfao()(seed in any::<u64>(), k in 2usize..4, n in 1usize..6, outs in 1usize..4) -> Dfao {
        random_dfao(&mut rng(seed), k, n, outs)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn run_path_agrees_with_step(d in small_dfao(), raw in prop::collection::vec(0usize..8, 0..12), cut in 0usize..12) {
        let a = d.automaton();
        let w: Vec<Digit> = raw.iter().map(|x| x % a.k()).collect();
        let run = a.run_path(&w).unwrap();
        prop_assert_eq!(run.vertices.len(), w.len() + 1);
        prop_assert_eq!(run.last(), a.step(a.initial(), &w).unwrap());
        for (j, &(s, label, t)) in run.edges.iter().enumerate() {
            prop_assert_eq!((s, label, t), (run.vertices[j], w[j], run.vertices[j + 1]));
            prop_assert_eq!(a.next(s, label), t);
        }
        let cut = cut.min(w.len());
        for s in 0..a.num_states() {
            let mid = a.step(s, &w[..cut]).unwrap();
            prop_assert_eq!(a.step(s, &w).unwrap(), a.step(mid, &w[cut..]).unwrap());
        }
    }

    #[test]
    fn generation_is_prefix_stable(d in small_dfao(), n in 0u64..200, m in 0u64..200) {
        let (lo, hi) = (n.min(m), n.max(m));
        let short = d.generate(lo);
        let long = d.generate(hi);
        prop_assert_eq!(&long[..lo as usize], &short[..]);
    }

    #[test]
    fn zero_normalization_keeps_the_sequence(d in small_dfao()) {
        let z = d.normalize_zero();
        let a = z.automaton();
        prop_assert_eq!(a.next(a.initial(), 0), a.initial());
        prop_assert_eq!(z.generate(300), d.generate(300));
        prop_assert_eq!(z.normalize_zero(), z.clone());
    }

    #[test]
    fn text_round_trip(d in small_dfao()) {
        let text = aut::serialize(&d);
        let once = aut::parse(&text).unwrap();
        prop_assert!(once.pruned.is_empty());
        prop_assert_eq!(&once.dfao, &d);
        prop_assert_eq!(aut::serialize(&once.dfao), text);
    }

    #[test]
    fn canonical_forms(d in small_dfao(), seed in any::<u64>()) {
        let c = d.canonical_form();
        prop_assert_eq!(c.canonical_form(), c.clone());
        prop_assert!(d.are_equivalent(&c).unwrap());
        let s = seed as usize % d.num_states();
        let split = split_state(&mut rng(seed), &d, s);
        if split.canonical_form().same_structure(&c) {
            prop_assert!(split.are_equivalent(&d).unwrap());
        }
    }

    #[test]
    fn minimization_laws(d in small_dfao(), seed in any::<u64>()) {
        let f = minimize(&d);
        prop_assert!(f.is_valid());
        prop_assert!(f.target.num_states() <= d.num_states());
        prop_assert!(d.are_equivalent(&f.target).unwrap());
        prop_assert!(opacity::is_minimal(&f.target));
        prop_assert!(minimize(&f.target).target.same_structure(&f.target));

        let s = seed as usize % d.num_states();
        let split = split_state(&mut rng(seed), &d, s);
        prop_assert!(minimize(&split).target.same_structure(&f.target));

        prop_assert!(compute_opacity(d.automaton()) <= compute_opacity(f.target.automaton()));

        let i = intrinsic_automaton(&d);
        let t = i.target.automaton();
        prop_assert_eq!(t.next(t.initial(), 0), t.initial());
        prop_assert_eq!(i.target.generate(200), d.generate(200));
    }

    #[test]
    fn equivalence_is_an_equivalence(d in small_dfao(), s1 in any::<u64>(), s2 in any::<u64>(), other in small_dfao()) {
        let b = split_state(&mut rng(s1), &d, s1 as usize % d.num_states());
        let c = split_state(&mut rng(s2), &b, s2 as usize % b.num_states());
        prop_assert!(d.are_equivalent(&d).unwrap());
        prop_assert!(d.are_equivalent(&b).unwrap() && b.are_equivalent(&d).unwrap());
        prop_assert!(b.are_equivalent(&c).unwrap() && d.are_equivalent(&c).unwrap());
        if other.k() == d.k() {
            let xy = d.are_equivalent(&other).unwrap();
            prop_assert_eq!(xy, other.are_equivalent(&d).unwrap());
            prop_assert_eq!(xy, other.are_equivalent(&c).unwrap());
        }
    }
}

/// The witness is a least shortest inhomogeneous word: nothing shorter is
/// inhomogeneous and nothing of the same length sorts before it.
#[test]
fn witnesses_are_least_and_shortest() {
    let mut r = rng(11);
    for i in 0..300 {
        let k = 2 + i % 2;
        let n = 1 + i % 5;
        let a = random_automaton(&mut r, k, n);
        match shortest_inhomogeneous_path(&a) {
            None => {
                for len in 1..=oracle_bound(&a) {
                    assert!(words(k, len).all(|w| !is_inhomogeneous(&a, &w)));
                }
            }
            Some(w) => {
                assert!(w.is_consistent(&a));
                assert!(w.len() <= 2 * a.num_states());
                for len in 1..w.len() {
                    assert!(words(k, len).all(|v| !is_inhomogeneous(&a, &v)));
                }
                let least = words(k, w.len()).find(|v| is_inhomogeneous(&a, v)).unwrap();
                assert_eq!(least, w.word);
            }
        }
    }
}

#[test]
fn quick_test_and_homogeneity() {
    let mut r = rng(12);
    for i in 0..400 {
        let k = 2 + i % 3;
        let a = if i % 2 == 0 {
            random_automaton(&mut r, k, 1 + i % 6)
        } else {
            random_homogeneous_automaton(&mut r, k, k + i % 4)
        };
        let omega = compute_opacity(&a);
        assert_eq!(is_opaque_quick(&a), omega == Opacity::Value(2));
        if is_homogeneous_automaton(&a) {
            assert_eq!(omega, Opacity::Transparent);
        }
        if a.is_strictly_accessible() && omega == Opacity::Transparent {
            assert!(is_homogeneous_automaton(&a));
        }
        let cx = omega.complexity();
        assert!(cx == DyadicDistance::Zero || cx.exponent().is_some());
        assert_eq!(cx == DyadicDistance::Pow2Inv(0), omega == Opacity::Value(2));
    }
}

/// Transparent without being homogeneous: `Z` is entered by a 1 from `X`
/// and a 0 from `Y`, but no path from `S` passes through both.
#[test]
fn transparent_but_not_homogeneous() {
    let d = Dfao::from_rows(
        2,
        "S",
        &[
            ("S", &["X", "Y"], "s"),
            ("X", &["X", "Z"], "x"),
            ("Y", &["Z", "Y"], "y"),
            ("Z", &["Z0", "Z1"], "z"),
            ("Z0", &["Z0", "Z1"], "0"),
            ("Z1", &["Z0", "Z1"], "1"),
        ],
    )
    .unwrap();
    let a = d.automaton();
    assert!(!is_homogeneous_automaton(a));
    assert!(!a.is_strictly_accessible());
    assert_eq!(compute_opacity(a), Opacity::Transparent);
    assert_eq!(brute_force_opacity(a, oracle_bound(a)).unwrap(), DyadicDistance::Zero);
}

#[test]
fn per_word_infimum_matches_homogeneous_prefix() {
    let mut r = rng(13);
    for i in 0..40 {
        let k = 2 + i % 2;
        let a = random_automaton(&mut r, k, 1 + i % 4);
        for len in 0..=6 {
            for w in words(k, len) {
                let h = longest_homogeneous_prefix(&a, &w).unwrap();
                let expected = if h == w.len() {
                    DyadicDistance::Zero
                } else {
                    DyadicDistance::Pow2Inv(h as u32)
                };
                assert_eq!(inf_over_outputs(&a, &w).unwrap(), expected);
            }
        }
    }
}
