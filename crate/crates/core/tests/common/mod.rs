#![allow(dead_code)]

use quiltkit::farey::{ExtendedRational, FareySymbol, Pairing};
use quiltkit::permgroup::{Permutation, PermutationGroup};
use rand::seq::SliceRandom;
use rand::Rng;

/// A random valid symbol: an integer window around 0 refined by mediant
/// insertions, with random Even/Odd/Free side labels.
pub fn random_symbol<R: Rng>(rng: &mut R) -> FareySymbol {
    let lo: i64 = rng.gen_range(-2..=0);
    let hi: i64 = rng.gen_range((lo + 1).max(0)..=2).max(lo + 1);
    let mut fracs: Vec<(i64, i64)> = (lo..=hi).map(|k| (k, 1)).collect();
    for _ in 0..rng.gen_range(0..8) {
        let i = rng.gen_range(0..fracs.len() - 1);
        let (a, b) = fracs[i];
        let (c, d) = fracs[i + 1];
        fracs.insert(i + 1, (a + c, b + d));
    }
    let fractions: Vec<ExtendedRational> = fracs
        .iter()
        .map(|&(p, q)| ExtendedRational::new(p, q as u64).unwrap())
        .collect();
    let sides = fractions.len() + 1;
    let mut pairings: Vec<Pairing> = (0..sides)
        .map(|_| {
            if rng.gen_bool(0.5) {
                Pairing::Odd
            } else {
                Pairing::Even
            }
        })
        .collect();
    let mut idx: Vec<usize> = (0..sides).collect();
    idx.shuffle(rng);
    let free = 2 * rng.gen_range(0..=sides / 2);
    for (label, pair) in idx[..free].chunks(2).enumerate() {
        for &i in pair {
            pairings[i] = Pairing::Free(label as u32 + 1);
        }
    }
    FareySymbol::new(fractions, pairings).expect("generator only builds valid symbols")
}

pub fn group(gens: &[&str], n: usize) -> PermutationGroup {
    PermutationGroup::new(
        n,
        gens.iter()
            .map(|g| Permutation::parse_cycles(g, n).unwrap())
            .collect(),
    )
    .unwrap()
}

/// Permutation groups of every order up to 8, one per isomorphism type.
pub fn small_groups() -> Vec<(&'static str, PermutationGroup)> {
    vec![
        ("C1", group(&[], 1)),
        ("C2", group(&["(1 2)"], 2)),
        ("C3", group(&["(1 2 3)"], 3)),
        ("C4", group(&["(1 2 3 4)"], 4)),
        ("C2xC2", group(&["(1 2)", "(3 4)"], 4)),
        ("C5", group(&["(1 2 3 4 5)"], 5)),
        ("C6", group(&["(1 2 3)(4 5)"], 5)),
        ("S3", group(&["(1 2 3)", "(1 2)"], 3)),
        ("C7", group(&["(1 2 3 4 5 6 7)"], 7)),
        ("C8", group(&["(1 2 3 4 5 6 7 8)"], 8)),
        ("C4xC2", group(&["(1 2 3 4)", "(5 6)"], 6)),
        ("C2^3", group(&["(1 2)", "(3 4)", "(5 6)"], 6)),
        ("D4", group(&["(1 2 3 4)", "(1 3)"], 4)),
        (
            "Q8",
            group(&["(1 2 3 4)(5 6 7 8)", "(1 5 3 7)(2 8 4 6)"], 8),
        ),
    ]
}
