//! Finite permutation groups: Schreier–Sims, orbits, transitivity tests,
//! order-based alternating/symmetric recognition and conjugacy classes.

mod chain;
mod classes;
mod perm;

use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::Serialize;
use thiserror::Error;

pub use chain::{ElementIter, Level, StabChain};
pub use classes::ConjugacyClasses;
pub use perm::Permutation;

use crate::dessin::Dessin;

/// Default seed for the randomized parts of the engine.
pub const DEFAULT_SEED: u64 = 0x5eed;
/// Largest group order for which conjugacy classes are enumerated.
pub const DEFAULT_CLASS_ENUM_BOUND: u64 = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("image array is not a permutation")]
    NotAPermutation,
    #[error("cannot parse cycle notation {0:?}")]
    CycleSyntax(String),
    #[error("generator degrees disagree: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("group is not transitive")]
    NotTransitive,
    #[error("group order {order} exceeds the configured bound {bound}")]
    SizeBoundExceeded { order: String, bound: u64 },
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

/// Result of comparing a transitive group's order with `d!` and `d!/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum AltSym {
    Alt,
    Sym,
    Other,
}

/// A permutation group given by generators. The stabilizer chain is built on
/// first use from the group's seed and cached.
#[derive(Debug)]
pub struct PermutationGroup {
    degree: usize,
    generators: Vec<Permutation>,
    seed: u64,
    chain: OnceLock<StabChain>,
}

impl Clone for PermutationGroup {
    fn clone(&self) -> Self {
        let chain = OnceLock::new();
        if let Some(c) = self.chain.get() {
            let _ = chain.set(c.clone());
        }
        Self {
            degree: self.degree,
            generators: self.generators.clone(),
            seed: self.seed,
            chain,
        }
    }
}

impl PermutationGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self, GroupError> {
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(GroupError::DegreeMismatch {
                expected: degree,
                found: g.degree(),
            });
        }
        Ok(Self {
            degree,
            generators,
            seed: DEFAULT_SEED,
            chain: OnceLock::new(),
        })
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self.chain = OnceLock::new();
        self
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn chain(&self) -> &StabChain {
        self.chain
            .get_or_init(|| StabChain::build(self.degree, &self.generators, self.seed))
    }

    pub fn order(&self) -> BigUint {
        self.chain().order()
    }

    pub(crate) fn order_u64(&self) -> Option<u64> {
        self.order().to_u64()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.chain().contains(g)
    }

    pub fn elements(&self) -> ElementIter<'_> {
        self.chain().elements()
    }

    pub fn orbits(&self) -> Vec<Vec<usize>> {
        orbits_of(self.degree, &self.generators)
    }

    pub fn is_transitive(&self) -> bool {
        self.degree <= 1 || self.orbits().len() == 1
    }

    /// A transitive group is 2-transitive iff the stabilizer of the first
    /// base point has exactly two orbits on all points.
    pub fn is_2transitive(&self) -> Result<bool, GroupError> {
        if !self.is_transitive() {
            return Err(GroupError::NotTransitive);
        }
        let chain = self.chain();
        let stabilizer_gens: &[Permutation] = match chain.levels() {
            [] => &[],
            [_] => &[],
            [_, second, ..] => second.generators(),
        };
        Ok(orbits_of(self.degree, stabilizer_gens).len() == 2)
    }

    pub fn alt_sym(&self) -> AltSym {
        let d = self.degree as u32;
        let factorial: BigUint = (1..=d).map(BigUint::from).product();
        let order = self.order();
        if order == factorial {
            AltSym::Sym
        } else if d >= 2 && order.clone() * 2u32 == factorial {
            AltSym::Alt
        } else {
            AltSym::Other
        }
    }

    pub fn conjugacy_classes(&self, bound: u64) -> Result<ConjugacyClasses, GroupError> {
        ConjugacyClasses::compute(self, bound)
    }
}

/// The monodromy group `<sigma0, sigma1>` of a dessin.
pub fn group_from_dessin(dessin: &Dessin) -> PermutationGroup {
    PermutationGroup::new(
        dessin.degree(),
        vec![dessin.sigma0().clone(), dessin.sigma1().clone()],
    )
    .expect("dessin permutations share the dessin degree")
}

/// Orbits of the group generated by `gens`, each sorted, ordered by least point.
pub fn orbits_of(degree: usize, gens: &[Permutation]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; degree];
    let mut out = Vec::new();
    for start in 0..degree {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut orbit = vec![start];
        let mut k = 0;
        while k < orbit.len() {
            let p = orbit[k];
            k += 1;
            for g in gens {
                let q = g.image(p);
                if !seen[q] {
                    seen[q] = true;
                    orbit.push(q);
                }
            }
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
}

pub fn cycle_type(p: &Permutation) -> Vec<usize> {
    p.cycle_type()
}

pub fn fixed_points(p: &Permutation) -> usize {
    p.fixed_points()
}
