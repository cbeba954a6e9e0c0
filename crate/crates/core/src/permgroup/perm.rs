use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::GroupError;

/// A permutation of `{0, .., degree-1}` stored as its image array.
///
/// Internally points are 0-based. Text (cycle notation) and JSON forms use
/// 1-based points, matching the usual conventions of computer algebra
/// systems. Products act on the right: `(p * q)(i) = q(p(i))`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Self {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from 0-based images, checking bijectivity.
    pub fn from_images(images: Vec<u32>) -> Result<Self, GroupError> {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            let x = x as usize;
            if x >= images.len() || seen[x] {
                return Err(GroupError::NotAPermutation);
            }
            seen[x] = true;
        }
        Ok(Self { images })
    }

    /// Builds a permutation from 1-based images (the JSON convention).
    pub fn from_one_based(images: &[u32]) -> Result<Self, GroupError> {
        if images.contains(&0) {
            return Err(GroupError::NotAPermutation);
        }
        Self::from_images(images.iter().map(|&x| x - 1).collect())
    }

    /// Product of disjoint or overlapping cycles given as 0-based point lists,
    /// composed left to right.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self, GroupError> {
        let mut result = Self::identity(degree);
        for cycle in cycles {
            let mut seen = std::collections::HashSet::new();
            for &p in cycle {
                if p >= degree || !seen.insert(p) {
                    return Err(GroupError::NotAPermutation);
                }
            }
            let mut c = Self::identity(degree);
            for (k, &p) in cycle.iter().enumerate() {
                c.images[p] = cycle[(k + 1) % cycle.len()] as u32;
            }
            result = result.compose(&c);
        }
        Ok(result)
    }

    /// Parses cycle notation such as `"(1 2 3)(4 5)"` with 1-based points.
    /// Commas are accepted as separators. `"()"` denotes the identity.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Self, GroupError> {
        let bad = || GroupError::CycleSyntax(text.to_string());
        let mut cycles = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let body = rest.strip_prefix('(').ok_or_else(bad)?;
            let close = body.find(')').ok_or_else(bad)?;
            let cycle = body[..close]
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| match t.parse::<usize>() {
                    Ok(p) if p >= 1 => Ok(p - 1),
                    _ => Err(bad()),
                })
                .collect::<Result<Vec<_>, _>>()?;
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
            rest = body[close + 1..].trim_start();
        }
        Self::from_cycles(degree, &cycles)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn image(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn to_one_based(&self) -> Vec<u32> {
        self.images.iter().map(|&x| x + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// `self` followed by `other`.
    pub fn compose(&self, other: &Self) -> Self {
        debug_assert_eq!(self.degree(), other.degree());
        Self {
            images: self
                .images
                .iter()
                .map(|&x| other.images[x as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize] = i as u32;
        }
        Self { images }
    }

    /// `other^-1 * self * other`.
    pub fn conjugate_by(&self, other: &Self) -> Self {
        let mut images = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[other.images[i] as usize] = other.images[x as usize];
        }
        Self { images }
    }

    pub fn pow(&self, exp: u64) -> Self {
        let mut result = Self::identity(self.degree());
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = result.compose(&base);
            }
            base = base.compose(&base);
            e >>= 1;
        }
        result
    }

    /// Cycles of length at least one, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cycle.push(p);
                p = self.image(p);
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_count(&self) -> usize {
        self.cycles().len()
    }

    /// Cycle lengths in non-increasing order, fixed points included.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }

    pub fn fixed_points(&self) -> usize {
        self.images
            .iter()
            .enumerate()
            .filter(|&(i, &x)| i as u32 == x)
            .count()
    }

    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| num_integer::lcm(acc, c.len() as u64))
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation with 1-based points; the identity prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for c in self.cycles().into_iter().filter(|c| c.len() > 1) {
            any = true;
            write!(f, "(")?;
            for (k, p) in c.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", p + 1)?;
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{}]{}", self.degree(), self)
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_one_based().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let images = Vec::<u32>::deserialize(d)?;
        Permutation::from_one_based(&images).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_type_and_fixed_points() {
        let p = Permutation::parse_cycles("(1 2)", 4).unwrap();
        assert_eq!(p.cycle_type(), vec![2, 1, 1]);
        assert_eq!(p.fixed_points(), 2);
        assert_eq!(Permutation::identity(7).fixed_points(), 7);
    }

    #[test]
    fn right_action_composition() {
        let a = Permutation::parse_cycles("(1 2)", 3).unwrap();
        let b = Permutation::parse_cycles("(2 3)", 3).unwrap();
        // 1 -> 2 -> 3
        assert_eq!(a.compose(&b).image(0), 2);
        assert_eq!(a.compose(&b).to_string(), "(1 3 2)");
    }

    #[test]
    fn conjugation_matches_definition() {
        let x = Permutation::parse_cycles("(1 2 3)(4 5)", 6).unwrap();
        let g = Permutation::parse_cycles("(1 6 4)(2 5)", 6).unwrap();
        let expected = g.inverse().compose(&x).compose(&g);
        assert_eq!(x.conjugate_by(&g), expected);
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(Permutation::parse_cycles("(1 2", 3).is_err());
        assert!(Permutation::parse_cycles("(1 1)", 3).is_err());
        assert!(Permutation::parse_cycles("(0 1)", 3).is_err());
        assert!(Permutation::parse_cycles("(1 9)", 3).is_err());
        assert!(Permutation::parse_cycles("()", 3).unwrap().is_identity());
    }

    #[test]
    fn one_based_json() {
        let p = Permutation::parse_cycles("(1 3)", 3).unwrap();
        assert_eq!(serde_json::to_string(&p).unwrap(), "[3,2,1]");
        let q: Permutation = serde_json::from_str("[3,2,1]").unwrap();
        assert_eq!(p, q);
        assert!(serde_json::from_str::<Permutation>("[0,1]").is_err());
    }

    #[test]
    fn order_and_power() {
        let p = Permutation::parse_cycles("(1 2 3)(4 5)", 5).unwrap();
        assert_eq!(p.order(), 6);
        assert!(p.pow(6).is_identity());
        assert!(!p.pow(3).is_identity());
    }
}
