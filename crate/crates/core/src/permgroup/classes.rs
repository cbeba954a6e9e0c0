use std::collections::HashMap;

use serde::Serialize;

use super::chain::RandomElements;
use super::{GroupError, Permutation, PermutationGroup};

/// Misses in a row after which random class search falls back to
/// walking the element list.
const RANDOM_MISS_LIMIT: usize = 256;

/// Complete list of conjugacy classes with an element-to-class index.
///
/// Classes are sorted by element order, then class size, then the
/// representative, which is the lexicographically least element of the
/// class. The listing is therefore independent of the search seed.
#[derive(Debug, Clone, Serialize)]
pub struct ConjugacyClasses {
    representatives: Vec<Permutation>,
    sizes: Vec<u64>,
    centralizer_orders: Vec<u64>,
    element_orders: Vec<u64>,
    group_order: u64,
    #[serde(skip)]
    lookup: HashMap<Permutation, u32>,
}

struct ClassBuilder<'a> {
    gens: &'a [Permutation],
    lookup: HashMap<Permutation, u32>,
    reps: Vec<Permutation>,
    sizes: Vec<u64>,
    covered: u64,
}

impl ClassBuilder<'_> {
    fn add_class(&mut self, x: Permutation) {
        if self.lookup.contains_key(&x) {
            return;
        }
        let idx = self.reps.len() as u32;
        let mut least = x.clone();
        let mut queue = vec![x.clone()];
        self.lookup.insert(x, idx);
        let mut size = 1u64;
        while let Some(y) = queue.pop() {
            for g in self.gens {
                let z = y.conjugate_by(g);
                if !self.lookup.contains_key(&z) {
                    if z < least {
                        least = z.clone();
                    }
                    self.lookup.insert(z.clone(), idx);
                    queue.push(z);
                    size += 1;
                }
            }
        }
        self.reps.push(least);
        self.sizes.push(size);
        self.covered += size;
    }

    /// Adds the class of `x` and of each of its powers.
    fn add_with_powers(&mut self, x: &Permutation) {
        let ord = x.order();
        let mut p = x.clone();
        for _ in 1..ord {
            self.add_class(p.clone());
            p = p.compose(x);
        }
    }
}

impl ConjugacyClasses {
    pub(crate) fn compute(group: &PermutationGroup, bound: u64) -> Result<Self, GroupError> {
        let order = match group.order_u64() {
            Some(o) if o <= bound => o,
            _ => {
                return Err(GroupError::SizeBoundExceeded {
                    order: group.order().to_string(),
                    bound,
                })
            }
        };
        let gens: Vec<Permutation> = group
            .generators()
            .iter()
            .filter(|g| !g.is_identity())
            .cloned()
            .collect();
        let mut b = ClassBuilder {
            gens: &gens,
            lookup: HashMap::with_capacity(order as usize),
            reps: Vec::new(),
            sizes: Vec::new(),
            covered: 0,
        };
        b.add_class(Permutation::identity(group.degree()));
        for g in &gens {
            b.add_with_powers(g);
        }
        if b.covered < order && !gens.is_empty() {
            let mut random = RandomElements::new(&gens, group.seed() ^ 0xc1a5_5e5);
            let mut misses = 0;
            while b.covered < order && misses < RANDOM_MISS_LIMIT {
                let x = random.next_element();
                if b.lookup.contains_key(&x) {
                    misses += 1;
                } else {
                    misses = 0;
                    b.add_with_powers(&x);
                }
            }
        }
        if b.covered < order {
            for x in group.elements() {
                if b.covered == order {
                    break;
                }
                if !b.lookup.contains_key(&x) {
                    b.add_with_powers(&x);
                }
            }
        }
        if b.covered != order {
            return Err(GroupError::Internal(format!(
                "class sizes sum to {} but |G| = {}",
                b.covered, order
            )));
        }

        let ClassBuilder {
            lookup,
            reps,
            sizes,
            ..
        } = b;
        let element_orders: Vec<u64> = reps.iter().map(Permutation::order).collect();
        let mut perm: Vec<usize> = (0..reps.len()).collect();
        perm.sort_by(|&i, &j| {
            (element_orders[i], sizes[i], &reps[i]).cmp(&(element_orders[j], sizes[j], &reps[j]))
        });
        let mut new_index = vec![0u32; reps.len()];
        for (new, &old) in perm.iter().enumerate() {
            new_index[old] = new as u32;
        }
        let lookup = lookup
            .into_iter()
            .map(|(k, v)| (k, new_index[v as usize]))
            .collect();
        let sizes: Vec<u64> = perm.iter().map(|&i| sizes[i]).collect();
        Ok(Self {
            representatives: perm.iter().map(|&i| reps[i].clone()).collect(),
            centralizer_orders: sizes.iter().map(|s| order / s).collect(),
            element_orders: perm.iter().map(|&i| element_orders[i]).collect(),
            sizes,
            group_order: order,
            lookup,
        })
    }

    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }

    pub fn representatives(&self) -> &[Permutation] {
        &self.representatives
    }

    pub fn sizes(&self) -> &[u64] {
        &self.sizes
    }

    pub fn centralizer_orders(&self) -> &[u64] {
        &self.centralizer_orders
    }

    pub fn element_orders(&self) -> &[u64] {
        &self.element_orders
    }

    pub fn group_order(&self) -> u64 {
        self.group_order
    }

    /// Index of the class containing `g`, or `None` if `g` is not in the group.
    pub fn class_of(&self, g: &Permutation) -> Option<usize> {
        self.lookup.get(g).map(|&i| i as usize)
    }

    /// Whether `x` and `y` are conjugate in the group.
    pub fn is_conjugate(&self, x: &Permutation, y: &Permutation) -> bool {
        matches!((self.class_of(x), self.class_of(y)), (Some(a), Some(b)) if a == b)
    }

    /// Class of the inverse of each class.
    pub fn inverse_classes(&self) -> Vec<usize> {
        self.representatives
            .iter()
            .map(|r| {
                self.class_of(&r.inverse())
                    .expect("inverse lies in the group")
            })
            .collect()
    }

    /// `power_map(k)[i]` is the class of `rep_i^k`.
    pub fn power_map(&self, k: u64) -> Vec<usize> {
        self.representatives
            .iter()
            .map(|r| self.class_of(&r.pow(k)).expect("power lies in the group"))
            .collect()
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> u64 {
        self.element_orders
            .iter()
            .fold(1, |acc, &o| num_integer::lcm(acc, o))
    }

    /// Iterates over `(element, class index)` pairs in unspecified order.
    pub fn elements(&self) -> impl Iterator<Item = (&Permutation, usize)> {
        self.lookup.iter().map(|(g, &i)| (g, i as usize))
    }
}

#[cfg(test)]
mod tests {
    use super::super::DEFAULT_CLASS_ENUM_BOUND;
    use super::*;

    fn group(degree: usize, gens: &[&str]) -> PermutationGroup {
        let gens = gens
            .iter()
            .map(|g| Permutation::parse_cycles(g, degree).unwrap())
            .collect();
        PermutationGroup::new(degree, gens).unwrap()
    }

    #[test]
    fn s3_classes() {
        let g = group(3, &["(1 2 3)", "(1 2)"]);
        let c = g.conjugacy_classes(DEFAULT_CLASS_ENUM_BOUND).unwrap();
        assert_eq!(c.sizes(), &[1, 3, 2]);
        assert_eq!(c.centralizer_orders(), &[6, 2, 3]);
        assert_eq!(c.exponent(), 6);
    }

    #[test]
    fn classes_independent_of_seed() {
        let base = group(5, &["(1 2 3 4 5)", "(1 2)"]);
        let a = base.clone().with_seed(1).conjugacy_classes(1000).unwrap();
        let b = base.with_seed(99).conjugacy_classes(1000).unwrap();
        assert_eq!(a.representatives(), b.representatives());
        assert_eq!(a.sizes(), &[1, 10, 15, 20, 30, 24, 20]);
    }

    #[test]
    fn bound_enforced() {
        let g = group(5, &["(1 2 3 4 5)", "(1 2)"]);
        assert!(matches!(
            g.conjugacy_classes(100),
            Err(GroupError::SizeBoundExceeded { .. })
        ));
    }

    #[test]
    fn abelian_group_with_central_elements() {
        // C2 x C2 x C2 acting regularly on 8 points
        let g = group(
            8,
            &[
                "(1 2)(3 4)(5 6)(7 8)",
                "(1 3)(2 4)(5 7)(6 8)",
                "(1 5)(2 6)(3 7)(4 8)",
            ],
        );
        let c = g.conjugacy_classes(1000).unwrap();
        assert_eq!(c.len(), 8);
        assert!(c.sizes().iter().all(|&s| s == 1));
    }
}
