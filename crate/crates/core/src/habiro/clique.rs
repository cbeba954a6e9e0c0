use std::collections::BTreeSet;

use num_bigint::BigInt;
use serde::Serialize;

use super::cyclo::{cyclotomic, prime_power};
use super::HabiroError;

/// If `max(m,n)/min(m,n)` is a positive power of one prime, that prime and
/// exponent.
pub fn prime_power_ratio(m: u64, n: u64) -> Option<(u64, u32)> {
    let (lo, hi) = if m < n { (m, n) } else { (n, m) };
    if lo == 0 || hi % lo != 0 {
        return None;
    }
    prime_power(hi / lo)
}

/// Whether the ideals `(Phi_m)` and `(Phi_n)` of `Z[q]` are comaximal, which
/// happens exactly when the ratio of `m` and `n` is not a prime power.
pub fn comaximal(m: u64, n: u64) -> Result<bool, HabiroError> {
    if m == 0 || n == 0 {
        return Err(HabiroError::Domain("indices must be positive".into()));
    }
    if m == n {
        return Err(HabiroError::Domain(
            "comaximality needs distinct indices".into(),
        ));
    }
    Ok(prime_power_ratio(m, n).is_none())
}

/// `Res(Phi_m, Phi_n)` computed with the subresultant sequence.
pub fn cyclotomic_resultant(m: u64, n: u64) -> Result<BigInt, HabiroError> {
    if m == 0 || n == 0 {
        return Err(HabiroError::Domain("indices must be positive".into()));
    }
    if m == n {
        return Err(HabiroError::Domain(
            "resultant needs distinct indices".into(),
        ));
    }
    Ok(cyclotomic(m).resultant(&cyclotomic(n)))
}

/// Graph on a finite set of positive integers joining `n` and `m` when one
/// divides the other with a prime-power quotient.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CliqueGraph {
    nodes: Vec<u64>,
    edges: Vec<(u64, u64)>,
    components: Vec<Vec<u64>>,
}

struct DisjointSets(Vec<usize>);

impl DisjointSets {
    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.0[root] != root {
            root = self.0[root];
        }
        let mut y = x;
        while self.0[y] != root {
            let next = self.0[y];
            self.0[y] = root;
            y = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

impl CliqueGraph {
    pub fn new(set: &[u64]) -> Result<Self, HabiroError> {
        let nodes: Vec<u64> = set
            .iter()
            .copied()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        if nodes.is_empty() {
            return Err(HabiroError::Domain(
                "clique graph needs a non-empty set".into(),
            ));
        }
        if nodes[0] == 0 {
            return Err(HabiroError::Domain("set elements must be positive".into()));
        }
        let mut edges = Vec::new();
        let mut sets = DisjointSets((0..nodes.len()).collect());
        for i in 0..nodes.len() {
            for j in i + 1..nodes.len() {
                if prime_power_ratio(nodes[i], nodes[j]).is_some() {
                    edges.push((nodes[i], nodes[j]));
                    sets.union(i, j);
                }
            }
        }
        let mut components: Vec<Vec<u64>> = Vec::new();
        let mut root_slot = vec![usize::MAX; nodes.len()];
        for i in 0..nodes.len() {
            let r = sets.find(i);
            if root_slot[r] == usize::MAX {
                root_slot[r] = components.len();
                components.push(Vec::new());
            }
            components[root_slot[r]].push(nodes[i]);
        }
        Ok(Self {
            nodes,
            edges,
            components,
        })
    }

    pub fn nodes(&self) -> &[u64] {
        &self.nodes
    }

    pub fn edges(&self) -> &[(u64, u64)] {
        &self.edges
    }

    pub fn components(&self) -> &[Vec<u64>] {
        &self.components
    }
}

pub fn clique_graph(set: &[u64]) -> Result<CliqueGraph, HabiroError> {
    CliqueGraph::new(set)
}

/// Whether every connected component of the clique graph of `set` meets
/// `subset`.
pub fn hits_every_component(subset: &[u64], set: &[u64]) -> Result<bool, HabiroError> {
    let members: BTreeSet<u64> = set.iter().copied().collect();
    if let Some(&x) = subset.iter().find(|x| !members.contains(x)) {
        return Err(HabiroError::NotSubset(x));
    }
    let graph = CliqueGraph::new(set)?;
    let sub: BTreeSet<u64> = subset.iter().copied().collect();
    Ok(graph
        .components()
        .iter()
        .all(|c| c.iter().any(|x| sub.contains(x))))
}

/// Whether `set` is closed under taking divisors.
pub fn is_saturated(set: &[u64]) -> bool {
    let members: BTreeSet<u64> = set.iter().copied().collect();
    members.iter().all(|&n| {
        super::cyclo::divisors(n)
            .iter()
            .all(|d| members.contains(d))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comaximality_examples() {
        assert!(!comaximal(1, 2).unwrap());
        assert!(comaximal(2, 3).unwrap());
        assert!(!comaximal(3, 9).unwrap());
        assert!(comaximal(1, 6).unwrap());
        assert!(comaximal(4, 4).is_err());
    }

    #[test]
    fn resultant_examples() {
        assert_eq!(cyclotomic_resultant(1, 2).unwrap(), BigInt::from(2));
        assert_eq!(cyclotomic_resultant(2, 3).unwrap(), BigInt::from(1));
        assert_eq!(cyclotomic_resultant(3, 9).unwrap(), BigInt::from(9));
    }

    #[test]
    fn clique_components() {
        let g = clique_graph(&[1, 2, 3, 4, 5, 6]).unwrap();
        assert_eq!(g.components().len(), 1);
        assert!(g.edges().contains(&(2, 6)));
        assert!(!g.edges().contains(&(1, 6)));
        assert_eq!(clique_graph(&[2, 3]).unwrap().components().len(), 2);
        assert_eq!(clique_graph(&[1]).unwrap().components().len(), 1);
        assert!(clique_graph(&[]).is_err());
    }

    #[test]
    fn component_hitting() {
        let s = [1, 2, 3, 4, 5, 6];
        assert!(hits_every_component(&[1], &s).unwrap());
        assert!(!hits_every_component(&[2], &[2, 3]).unwrap());
        assert!(hits_every_component(&s, &s).unwrap());
        assert_eq!(
            hits_every_component(&[7], &s),
            Err(HabiroError::NotSubset(7))
        );
    }

    #[test]
    fn saturation() {
        assert!(is_saturated(&[1, 2, 4]));
        assert!(!is_saturated(&[2]));
        assert!(is_saturated(&[1, 2, 3, 6]));
    }
}
