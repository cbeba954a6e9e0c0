//! Counting homomorphisms from the genus-`g` surface group
//! `<a_1, b_1, .., a_g, b_g | prod [a_i, b_i]>` into a finite group.
//!
//! The character formula gives `|Hom| = |G| sum_chi (|G|/chi(1))^(2g-2)`;
//! the number of `G`-covers `Z_G` is `|Hom| / |G|`.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::{CharacterTable, ReptheoryError};
use crate::permgroup::{Permutation, PermutationGroup};

pub const DEFAULT_BRUTE_BOUND: u64 = 100_000_000;

/// All elements of `G`, in the chain's enumeration order.
pub fn group_elements(
    group: &PermutationGroup,
    bound: u64,
) -> Result<Vec<Permutation>, ReptheoryError> {
    match group.order_u64() {
        Some(n) if n <= bound => Ok(group.elements().collect()),
        _ => Err(ReptheoryError::SizeBoundExceeded(format!(
            "group of order {} exceeds the element bound {bound}",
            group.order()
        ))),
    }
}

/// Enumerates every `2g`-tuple and tests the surface relation.
pub fn tqft_count_brute(
    genus: u32,
    group: &PermutationGroup,
    bound: u64,
) -> Result<BigUint, ReptheoryError> {
    if genus == 0 {
        return Ok(BigUint::one());
    }
    let order = group.order();
    let tuples = order.pow(2 * genus);
    if tuples > BigUint::from(bound) {
        return Err(ReptheoryError::SizeBoundExceeded(format!(
            "{tuples} tuples exceed the brute-force bound {bound}"
        )));
    }
    let elements = group_elements(group, bound)?;
    let n = elements.len();
    let index: HashMap<&Permutation, usize> =
        elements.iter().enumerate().map(|(i, g)| (g, i)).collect();
    let product: Vec<Vec<usize>> = elements
        .iter()
        .map(|a| elements.iter().map(|b| index[&a.compose(b)]).collect())
        .collect();
    let inverse: Vec<usize> = elements.iter().map(|a| index[&a.inverse()]).collect();
    let identity = index[&Permutation::identity(group.degree())];

    let slots = 2 * genus as usize;
    let mut tuple = vec![0usize; slots];
    let mut count: u64 = 0;
    loop {
        let mut acc = identity;
        for pair in tuple.chunks(2) {
            let (a, b) = (pair[0], pair[1]);
            acc = product[acc][a];
            acc = product[acc][b];
            acc = product[acc][inverse[a]];
            acc = product[acc][inverse[b]];
        }
        if acc == identity {
            count += 1;
        }
        // odometer step
        let mut pos = 0;
        loop {
            if pos == slots {
                return Ok(BigUint::from(count));
            }
            tuple[pos] += 1;
            if tuple[pos] < n {
                break;
            }
            tuple[pos] = 0;
            pos += 1;
        }
    }
}

/// `|G| sum_chi (|G| / chi(1))^(2g - 2)` from the character degrees.
pub fn tqft_count_characters(genus: u32, table: &CharacterTable) -> BigUint {
    if genus == 0 {
        return BigUint::one();
    }
    let order = table.classes().group_order();
    let sum = table.degrees().iter().fold(BigUint::zero(), |acc, &d| {
        acc + BigUint::from(order / d).pow(2 * genus - 2)
    });
    BigUint::from(order) * sum
}
