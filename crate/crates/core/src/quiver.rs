//! The modular quiver `Q_Gamma` (two vertices for `C_2`, three for `C_3`,
//! one arrow from each `C_2` vertex to each `C_3` vertex), its Euler form,
//! and the local quivers built from dimension vectors.

use std::fmt::{self, Write as _};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::habiro::CyclotomicInteger;
use crate::reptheory::Decomposition;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuiverError {
    #[error("character values do not give a non-negative integral dimension vector: {0}")]
    NotIntegral(String),
    #[error("negative arrow count {count} between vertices {from} and {to}")]
    NegativeArrowCount { from: usize, to: usize, count: i64 },
    #[error("{0}")]
    Domain(String),
}

/// `(a1, a2; b1, b2, b3)`: multiplicities of the `sigma1` eigenvalues
/// `+1, -1` and of the `sigma0` eigenvalues `1, rho, rho^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct DimensionVector5 {
    pub a1: u64,
    pub a2: u64,
    pub b1: u64,
    pub b2: u64,
    pub b3: u64,
}

impl DimensionVector5 {
    pub const fn new(a1: u64, a2: u64, b1: u64, b2: u64, b3: u64) -> Self {
        Self { a1, a2, b1, b2, b3 }
    }

    pub fn components(&self) -> [u64; 5] {
        [self.a1, self.a2, self.b1, self.b2, self.b3]
    }

    pub fn from_components(c: [u64; 5]) -> Self {
        Self::new(c[0], c[1], c[2], c[3], c[4])
    }

    /// `a1 + a2 = b1 + b2 + b3`.
    pub fn is_balanced(&self) -> bool {
        self.a1 + self.a2 == self.b1 + self.b2 + self.b3
    }

    pub fn total(&self) -> u64 {
        self.a1 + self.a2
    }

    pub fn scaled(&self, k: u64) -> Self {
        Self::from_components(self.components().map(|x| x * k))
    }

    pub fn plus(&self, other: &Self) -> Self {
        let (a, b) = (self.components(), other.components());
        Self::from_components(std::array::from_fn(|i| a[i] + b[i]))
    }
}

impl fmt::Display for DimensionVector5 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{};{},{},{})",
            self.a1, self.a2, self.b1, self.b2, self.b3
        )
    }
}

/// Euler matrix of `Q_Gamma`: identity with `-1` in rows 1-2, columns 3-5.
pub const EULER_MATRIX: [[i64; 5]; 5] = [
    [1, 0, -1, -1, -1],
    [0, 1, -1, -1, -1],
    [0, 0, 1, 0, 0],
    [0, 0, 0, 1, 0],
    [0, 0, 0, 0, 1],
];

/// `alpha^T M beta`.
pub fn euler_form(alpha: &DimensionVector5, beta: &DimensionVector5) -> i64 {
    let (a, b) = (alpha.components(), beta.components());
    let mut s = 0i64;
    for i in 0..5 {
        for j in 0..5 {
            s += a[i] as i64 * EULER_MATRIX[i][j] * b[j] as i64;
        }
    }
    s
}

/// `1 - chi(alpha, alpha)`.
pub fn family_dimension(alpha: &DimensionVector5) -> i64 {
    1 - euler_form(alpha, alpha)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Weight5(pub [i64; 5]);

impl Default for Weight5 {
    fn default() -> Self {
        Weight5([-1, -1, 1, 1, 1])
    }
}

pub fn weight_pairing(theta: &Weight5, alpha: &DimensionVector5) -> i64 {
    theta
        .0
        .iter()
        .zip(alpha.components())
        .map(|(t, a)| t * a as i64)
        .sum()
}

fn order_three_value(v: &CyclotomicInteger, what: &str) -> Result<CyclotomicInteger, QuiverError> {
    match v.conductor() {
        1 | 3 => Ok(v.embed(3)),
        c => Err(QuiverError::NotIntegral(format!(
            "{what} has conductor {c}, expected 1 or 3"
        ))),
    }
}

fn nonneg(v: BigInt, what: &str) -> Result<u64, QuiverError> {
    v.to_u64()
        .ok_or_else(|| QuiverError::NotIntegral(format!("{what} = {v} is negative")))
}

/// Eigenspace dimensions from `chi(1) = d`, `chi(sigma1)`, `chi(sigma0)`
/// and `chi(sigma0^2)`: `a = (d +- chi(sigma1))/2` and
/// `b_j = (1/3) sum_k rho^(-jk) chi(sigma0^k)`.
pub fn dimvec_from_character(
    d: u64,
    chi_s1: &BigInt,
    chi_s0: &CyclotomicInteger,
    chi_s0sq: &CyclotomicInteger,
) -> Result<DimensionVector5, QuiverError> {
    let d_int = BigInt::from(d);
    let two = BigInt::from(2);
    let plus = &d_int + chi_s1;
    let minus = &d_int - chi_s1;
    if !(&plus % &two).is_zero() {
        return Err(QuiverError::NotIntegral(format!(
            "d + chi(sigma1) = {plus} is odd"
        )));
    }
    let a1 = nonneg(plus / &two, "a1")?;
    let a2 = nonneg(minus / &two, "a2")?;

    let s0 = order_three_value(chi_s0, "chi(sigma0)")?;
    let s00 = order_three_value(chi_s0sq, "chi(sigma0^2)")?;
    let identity = CyclotomicInteger::from_int(3, d);
    let mut b = [0u64; 3];
    for (j, slot) in b.iter_mut().enumerate() {
        let j = j as u64;
        // rho^(-j) = rho^(3 - j), rho^(-2j) = rho^(j) modulo 3
        let t1 = CyclotomicInteger::zeta_power(3, (3 - j) % 3).mul(&s0);
        let t2 = CyclotomicInteger::zeta_power(3, j % 3).mul(&s00);
        let sum = identity.add(&t1).add(&t2);
        let n = sum.as_integer().ok_or_else(|| {
            QuiverError::NotIntegral(format!("3 b{} = {sum} is not rational", j + 1))
        })?;
        if !(&n % BigInt::from(3)).is_zero() {
            return Err(QuiverError::NotIntegral(format!(
                "3 b{} = {n} is not divisible by 3",
                j + 1
            )));
        }
        *slot = nonneg(n / 3, "b")?;
    }
    Ok(DimensionVector5::new(a1, a2, b[0], b[1], b[2]))
}

/// A finite quiver given by its arrow-count matrix, with an optional
/// multiplicity vector on the vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverPresentation {
    pub vertices: Vec<String>,
    pub arrows: Vec<Vec<u64>>,
    pub alpha: Option<Vec<u64>>,
}

impl QuiverPresentation {
    pub fn loops(&self, i: usize) -> u64 {
        self.arrows[i][i]
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.arrows.len();
        (0..n).all(|i| (0..n).all(|j| self.arrows[i][j] == self.arrows[j][i]))
    }

    /// Loops grouped into opposite pairs, for drawing a symmetric quiver
    /// with one double-headed glyph per pair.
    pub fn loop_pairs(&self, i: usize) -> u64 {
        self.loops(i) / 2
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("quiver serializes")
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph quiver {\n");
        for (i, v) in self.vertices.iter().enumerate() {
            match &self.alpha {
                Some(a) => {
                    let _ = writeln!(out, "  v{i} [label=\"{v} ({})\"];", a[i]);
                }
                None => {
                    let _ = writeln!(out, "  v{i} [label=\"{v}\"];");
                }
            }
        }
        for (i, row) in self.arrows.iter().enumerate() {
            for (j, &n) in row.iter().enumerate() {
                if n > 0 {
                    let _ = writeln!(out, "  v{i} -> v{j} [label=\"{n}\", multiplicity={n}];");
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Arrow counts `delta_ij - chi(alpha_i, alpha_j)`; negative counts are an
/// error.
pub fn local_quiver(
    labels: Vec<String>,
    dims: &[DimensionVector5],
    alpha: Option<Vec<u64>>,
) -> Result<QuiverPresentation, QuiverError> {
    let n = dims.len();
    let mut arrows = vec![vec![0u64; n]; n];
    for i in 0..n {
        for j in 0..n {
            let count = i64::from(i == j) - euler_form(&dims[i], &dims[j]);
            if count < 0 {
                return Err(QuiverError::NegativeArrowCount {
                    from: i,
                    to: j,
                    count,
                });
            }
            arrows[i][j] = count as u64;
        }
    }
    Ok(QuiverPresentation {
        vertices: labels,
        arrows,
        alpha,
    })
}

fn vertex_label(label: &str) -> String {
    match label {
        "trivial" => "T".into(),
        "standard" => "S".into(),
        other => other.into(),
    }
}

/// Dimension vectors of the constituents of a decomposition.
pub fn part_dimension_vectors(parts: &Decomposition) -> Result<Vec<DimensionVector5>, QuiverError> {
    parts
        .parts
        .iter()
        .map(|p| dimvec_from_character(p.degree, &p.at_sigma1, &p.at_sigma0, &p.at_sigma0_sq))
        .collect()
}

/// The local quiver of a decomposition together with its multiplicities.
pub fn modular_content(parts: &Decomposition) -> Result<QuiverPresentation, QuiverError> {
    let dims = part_dimension_vectors(parts)?;
    local_quiver(
        parts.parts.iter().map(|p| vertex_label(&p.label)).collect(),
        &dims,
        Some(parts.parts.iter().map(|p| p.multiplicity).collect()),
    )
}

/// The six one-dimensional generators `g_ij` with `b = e_i` (the `C_3`
/// index) and `a = e_j` (the `C_2` index), labelled `a..f` as
/// `g11, g22, g31, g12, g21, g32`.
pub fn one_quiver_generators() -> Vec<(String, DimensionVector5)> {
    let names = [
        ("a", 1, 1),
        ("b", 2, 2),
        ("c", 3, 1),
        ("d", 1, 2),
        ("e", 2, 1),
        ("f", 3, 2),
    ];
    names
        .iter()
        .map(|&(name, i, j)| {
            let mut c = [0u64; 5];
            c[j - 1] = 1;
            c[1 + i] = 1;
            (name.to_string(), DimensionVector5::from_components(c))
        })
        .collect()
}

pub fn one_quiver_modular() -> QuiverPresentation {
    let gens = one_quiver_generators();
    let dims: Vec<DimensionVector5> = gens.iter().map(|(_, d)| *d).collect();
    local_quiver(gens.into_iter().map(|(n, _)| n).collect(), &dims, None)
        .expect("generator Euler forms are at most 1")
}

/// `2(g-1) n_i^2 + 2` loops at vertex `i` and `2 n_i n_j (g-1)` arrows from
/// `i` to `j`.
pub fn surface_local_quiver(genus: u64, dims: &[u64]) -> Result<QuiverPresentation, QuiverError> {
    if genus == 0 {
        return Err(QuiverError::Domain("genus must be at least 1".into()));
    }
    if dims.is_empty() || dims.contains(&0) {
        return Err(QuiverError::Domain(
            "dimensions must be positive and non-empty".into(),
        ));
    }
    let k = dims.len();
    let arrows = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| {
                    if i == j {
                        2 * (genus - 1) * dims[i] * dims[i] + 2
                    } else {
                        2 * dims[i] * dims[j] * (genus - 1)
                    }
                })
                .collect()
        })
        .collect();
    Ok(QuiverPresentation {
        vertices: (1..=k).map(|i| format!("v{i}")).collect(),
        arrows,
        alpha: Some(dims.to_vec()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const T: DimensionVector5 = DimensionVector5::new(1, 0, 1, 0, 0);

    fn s(n: u64) -> DimensionVector5 {
        DimensionVector5::new(2 * n - 1, 2 * n, 2 * n - 1, n, n)
    }

    fn cint(c: i64) -> CyclotomicInteger {
        CyclotomicInteger::from_int(1, c)
    }

    #[test]
    fn euler_form_examples() {
        assert_eq!(euler_form(&T, &T), 1);
        for n in 1..=6 {
            assert_eq!(euler_form(&T, &s(n)), -1);
        }
        let zero = DimensionVector5::default();
        assert_eq!(euler_form(&zero, &zero), 0);
    }

    #[test]
    fn dimension_vectors_from_characters() {
        let v = dimvec_from_character(12, &BigInt::from(0), &cint(3), &cint(3)).unwrap();
        assert_eq!(v, DimensionVector5::new(6, 6, 6, 3, 3));
        let v = dimvec_from_character(1, &BigInt::from(1), &cint(1), &cint(1)).unwrap();
        assert_eq!(v, T);
        let v = dimvec_from_character(2, &BigInt::from(0), &cint(-1), &cint(-1)).unwrap();
        assert_eq!(v, DimensionVector5::new(1, 1, 0, 1, 1));
    }

    #[test]
    fn nonrational_order_three_values() {
        // a linear character sending sigma0 to rho
        let rho = CyclotomicInteger::zeta_power(3, 1);
        let v = dimvec_from_character(1, &BigInt::from(1), &rho, &rho.mul(&rho)).unwrap();
        assert_eq!(v, DimensionVector5::new(1, 0, 0, 1, 0));
    }

    #[test]
    fn inconsistent_values_are_rejected() {
        assert!(dimvec_from_character(2, &BigInt::from(1), &cint(2), &cint(2)).is_err());
        assert!(dimvec_from_character(1, &BigInt::from(1), &cint(0), &cint(0)).is_err());
        assert!(dimvec_from_character(1, &BigInt::from(3), &cint(1), &cint(1)).is_err());
    }

    #[test]
    fn family_dimensions() {
        assert_eq!(family_dimension(&T), 0);
        assert_eq!(family_dimension(&DimensionVector5::new(1, 1, 1, 1, 0)), 1);
        for n in 1..=5 {
            assert_eq!(family_dimension(&s(n)), 2 * (n * n) as i64);
        }
    }

    #[test]
    fn weights() {
        let theta = Weight5::default();
        assert_eq!(
            weight_pairing(&theta, &DimensionVector5::new(6, 6, 6, 3, 3)),
            0
        );
        assert_eq!(
            weight_pairing(&theta, &DimensionVector5::new(1, 0, 0, 0, 0)),
            -1
        );
        assert_eq!(weight_pairing(&theta, &DimensionVector5::default()), 0);
    }

    #[test]
    fn hexagon() {
        let q = one_quiver_modular();
        assert_eq!(q.vertices, vec!["a", "b", "c", "d", "e", "f"]);
        for i in 0..6 {
            for j in 0..6 {
                let adjacent = (i + 1) % 6 == j || (j + 1) % 6 == i;
                assert_eq!(q.arrows[i][j], u64::from(adjacent), "({i},{j})");
            }
        }
    }

    #[test]
    fn surface_quivers() {
        let q = surface_local_quiver(2, &[1]).unwrap();
        assert_eq!(q.arrows, vec![vec![4]]);
        let q = surface_local_quiver(2, &[1, 2]).unwrap();
        assert_eq!(q.arrows, vec![vec![4, 4], vec![4, 10]]);
        let q = surface_local_quiver(1, &[1, 1]).unwrap();
        assert_eq!(q.arrows, vec![vec![2, 0], vec![0, 2]]);
        assert!(surface_local_quiver(0, &[1]).is_err());
        assert!(surface_local_quiver(1, &[0]).is_err());
    }

    #[test]
    fn single_trivial_vertex() {
        let q = local_quiver(vec!["T".into()], &[T], Some(vec![1])).unwrap();
        assert_eq!(q.arrows, vec![vec![0]]);
        assert_eq!(
            serde_json::to_string(&q).unwrap(),
            r#"{"vertices":["T"],"arrows":[[0]],"alpha":[1]}"#
        );
    }

    #[test]
    fn negative_counts_are_errors() {
        let big = DimensionVector5::new(0, 0, 3, 0, 0);
        assert!(matches!(
            local_quiver(vec!["x".into(), "y".into()], &[big, big], None),
            Err(QuiverError::NegativeArrowCount { .. })
        ));
    }
}
