//! Stabilizer chains: base, strong generators and per-level transversals.

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Permutation;

/// One level of a stabilizer chain.
#[derive(Clone, Debug)]
pub struct Level {
    base_point: usize,
    /// Strong generators fixing every earlier base point.
    generators: Vec<Permutation>,
    orbit: Vec<usize>,
    /// `transversal[b]` maps the base point to `b`.
    transversal: Vec<Option<Permutation>>,
    inverse_transversal: Vec<Option<Permutation>>,
}

impl Level {
    fn new(degree: usize, base_point: usize) -> Self {
        let mut transversal = vec![None; degree];
        let mut inverse_transversal = vec![None; degree];
        transversal[base_point] = Some(Permutation::identity(degree));
        inverse_transversal[base_point] = Some(Permutation::identity(degree));
        Self {
            base_point,
            generators: Vec::new(),
            orbit: vec![base_point],
            transversal,
            inverse_transversal,
        }
    }

    pub fn base_point(&self) -> usize {
        self.base_point
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn orbit(&self) -> &[usize] {
        &self.orbit
    }

    pub fn transversal(&self, point: usize) -> Option<&Permutation> {
        self.transversal[point].as_ref()
    }

    fn add_generator(&mut self, g: Permutation) {
        self.generators.push(g);
        // Re-close the orbit; existing transversal entries stay valid.
        let mut k = 0;
        let mut frontier: Vec<usize> = self.orbit.clone();
        while k < frontier.len() {
            let b = frontier[k];
            k += 1;
            for gi in 0..self.generators.len() {
                let gen = &self.generators[gi];
                let c = gen.image(b);
                if self.transversal[c].is_none() {
                    let u = self.transversal[b].as_ref().unwrap().compose(gen);
                    self.inverse_transversal[c] = Some(u.inverse());
                    self.transversal[c] = Some(u);
                    self.orbit.push(c);
                    frontier.push(c);
                }
            }
        }
    }
}

/// A base and strong generating set for a permutation group.
#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

/// Consecutive trivially-sifting random elements before the random phase stops.
const RANDOM_QUIET_ROUNDS: usize = 24;

impl StabChain {
    /// Random Schreier–Sims seeded by `seed`, followed by a deterministic
    /// Schreier-generator sweep that completes the chain. The result is a
    /// genuine BSGS whatever the random phase produced.
    pub fn build(degree: usize, generators: &[Permutation], seed: u64) -> Self {
        let mut chain = Self {
            degree,
            levels: Vec::new(),
        };
        let gens: Vec<Permutation> = generators
            .iter()
            .filter(|g| !g.is_identity())
            .cloned()
            .collect();
        if gens.is_empty() {
            return chain;
        }
        for g in &gens {
            chain.absorb(g.clone());
        }
        let mut random = RandomElements::new(&gens, seed);
        let mut quiet = 0;
        while quiet < RANDOM_QUIET_ROUNDS {
            if chain.absorb(random.next_element()) {
                quiet = 0;
            } else {
                quiet += 1;
            }
        }
        chain.complete();
        chain
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base_point).collect()
    }

    /// Strong generating set (the generators of the top level).
    pub fn strong_generators(&self) -> &[Permutation] {
        self.levels
            .first()
            .map(|l| l.generators.as_slice())
            .unwrap_or(&[])
    }

    pub fn order(&self) -> BigUint {
        self.levels.iter().fold(BigUint::from(1u32), |acc, l| {
            acc * BigUint::from(l.orbit.len())
        })
    }

    /// Sifts `g` starting at level `from`. Returns the residue and the level
    /// at which sifting stopped (`levels.len()` if it passed every level).
    pub fn sift_from(&self, mut g: Permutation, from: usize) -> (Permutation, usize) {
        for (i, level) in self.levels.iter().enumerate().skip(from) {
            let b = g.image(level.base_point);
            match &level.inverse_transversal[b] {
                Some(inv) => g = g.compose(inv),
                None => return (g, i),
            }
        }
        let n = self.levels.len();
        (g, n)
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.sift_from(g.clone(), 0).0.is_identity()
    }

    /// Adds the sift residue of `g` as a strong generator if it is
    /// non-trivial. Returns whether the chain changed.
    fn absorb(&mut self, g: Permutation) -> bool {
        let (residue, level) = self.sift_from(g, 0);
        if residue.is_identity() {
            return false;
        }
        self.add_strong_generator(residue, level);
        true
    }

    /// `g` fixes the base points of levels `0..depth`; it is added to all of
    /// those levels and to level `depth`, which is created if necessary.
    fn add_strong_generator(&mut self, g: Permutation, depth: usize) {
        if depth == self.levels.len() {
            let moved = (0..self.degree)
                .find(|&p| g.image(p) != p)
                .expect("non-identity permutation moves a point");
            self.levels.push(Level::new(self.degree, moved));
        }
        for level in &mut self.levels[..=depth] {
            level.add_generator(g.clone());
        }
    }

    /// Deterministic Schreier–Sims: every Schreier generator of every level
    /// must sift through the levels below it.
    fn complete(&mut self) {
        let mut i = self.levels.len() as isize - 1;
        while i >= 0 {
            let level = i as usize;
            match self.find_failing_schreier_generator(level) {
                Some((residue, depth)) => {
                    self.add_strong_generator(residue, depth);
                    i = depth as isize;
                }
                None => i -= 1,
            }
        }
    }

    fn find_failing_schreier_generator(&self, level: usize) -> Option<(Permutation, usize)> {
        let lv = &self.levels[level];
        for &b in &lv.orbit {
            let u = lv.transversal[b].as_ref().unwrap();
            for x in &lv.generators {
                let ux = u.compose(x);
                let c = ux.image(lv.base_point);
                let h = ux.compose(lv.inverse_transversal[c].as_ref().unwrap());
                if h.is_identity() {
                    continue;
                }
                let (residue, depth) = self.sift_from(h, level + 1);
                if !residue.is_identity() {
                    return Some((residue, depth));
                }
            }
        }
        None
    }

    /// Every group element exactly once, in a fixed mixed-radix order.
    pub fn elements(&self) -> ElementIter<'_> {
        ElementIter {
            chain: self,
            counters: vec![0; self.levels.len()],
            done: false,
        }
    }
}

pub struct ElementIter<'a> {
    chain: &'a StabChain,
    counters: Vec<usize>,
    done: bool,
}

impl Iterator for ElementIter<'_> {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.done {
            return None;
        }
        let levels = &self.chain.levels;
        let mut g = Permutation::identity(self.chain.degree);
        for (l, level) in levels.iter().enumerate().rev() {
            let b = level.orbit[self.counters[l]];
            g = g.compose(level.transversal[b].as_ref().unwrap());
        }
        // advance
        let mut l = 0;
        loop {
            if l == levels.len() {
                self.done = true;
                break;
            }
            self.counters[l] += 1;
            if self.counters[l] < levels[l].orbit.len() {
                break;
            }
            self.counters[l] = 0;
            l += 1;
        }
        Some(g)
    }
}

/// Product-replacement random elements with an accumulator.
pub(crate) struct RandomElements {
    state: Vec<Permutation>,
    accumulator: Permutation,
    rng: ChaCha8Rng,
}

impl RandomElements {
    pub(crate) fn new(generators: &[Permutation], seed: u64) -> Self {
        assert!(!generators.is_empty());
        let degree = generators[0].degree();
        let size = generators.len().max(10);
        let state = (0..size)
            .map(|i| generators[i % generators.len()].clone())
            .collect();
        let mut this = Self {
            state,
            accumulator: Permutation::identity(degree),
            rng: ChaCha8Rng::seed_from_u64(seed),
        };
        for _ in 0..60 {
            this.next_element();
        }
        this
    }

    pub(crate) fn next_element(&mut self) -> Permutation {
        let n = self.state.len();
        let i = self.rng.gen_range(0..n);
        let mut j = self.rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let other = if self.rng.gen::<bool>() {
            self.state[j].clone()
        } else {
            self.state[j].inverse()
        };
        self.state[i] = if self.rng.gen::<bool>() {
            self.state[i].compose(&other)
        } else {
            other.compose(&self.state[i])
        };
        self.accumulator = self.accumulator.compose(&self.state[i]);
        self.accumulator.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(text: &str, degree: usize) -> Permutation {
        Permutation::parse_cycles(text, degree).unwrap()
    }

    #[test]
    fn symmetric_group_orders() {
        for n in 2..=7usize {
            let gens = vec![perm("(1 2)", n), {
                let cyc: Vec<String> = (1..=n).map(|k| k.to_string()).collect();
                perm(&format!("({})", cyc.join(" ")), n)
            }];
            let chain = StabChain::build(n, &gens, 7);
            let fact: u64 = (1..=n as u64).product();
            assert_eq!(chain.order(), BigUint::from(fact));
        }
    }

    #[test]
    fn trivial_group_has_empty_chain() {
        let chain = StabChain::build(4, &[Permutation::identity(4)], 0);
        assert!(chain.levels().is_empty());
        assert_eq!(chain.order(), BigUint::from(1u32));
        assert_eq!(chain.elements().count(), 1);
    }

    #[test]
    fn elements_are_distinct_members() {
        let gens = vec![perm("(1 2 3 4)", 4), perm("(1 3)", 4)];
        let chain = StabChain::build(4, &gens, 3);
        let all: std::collections::HashSet<_> = chain.elements().collect();
        assert_eq!(all.len(), 8);
        assert!(all.iter().all(|g| chain.contains(g)));
    }

    #[test]
    fn non_member_rejected() {
        let chain = StabChain::build(4, &[perm("(1 2 3 4)", 4)], 1);
        assert!(!chain.contains(&perm("(1 2)", 4)));
        assert!(chain.contains(&perm("(1 3)(2 4)", 4)));
    }
}
