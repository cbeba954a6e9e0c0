//! Characters of finite permutation groups: permutation characters, exact
//! character tables, decomposition of permutation representations and
//! counts of surface-group homomorphisms.

mod dixon;
mod tqft;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::dessin::Dessin;
use crate::habiro::{bigint_json, CyclotomicInteger};
use crate::permgroup::{ConjugacyClasses, GroupError, PermutationGroup};

pub use dixon::dixon_prime;
pub use tqft::{group_elements, tqft_count_brute, tqft_count_characters, DEFAULT_BRUTE_BOUND};

/// Character tables are only attempted up to this many classes.
pub const MAX_TABLE_CLASSES: usize = 40;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReptheoryError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("size bound exceeded: {0}")]
    SizeBoundExceeded(String),
    #[error("character table verification failed: {0}")]
    LiftFailure(String),
    #[error("inner product is not rational")]
    NotRational,
    #[error("{0}")]
    Mismatch(String),
}

impl ReptheoryError {
    pub fn is_size_bound(&self) -> bool {
        matches!(
            self,
            ReptheoryError::SizeBoundExceeded(_)
                | ReptheoryError::Group(GroupError::SizeBoundExceeded { .. })
        )
    }
}

/// One exact cyclotomic value per conjugacy class. Each value carries its
/// own conductor (the element order of its class for irreducibles, 1 for
/// rational data).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ClassFunction {
    values: Vec<CyclotomicInteger>,
}

impl ClassFunction {
    pub fn new(values: Vec<CyclotomicInteger>) -> Self {
        Self { values }
    }

    pub fn from_integers(values: impl IntoIterator<Item = i64>) -> Self {
        Self::new(
            values
                .into_iter()
                .map(|v| CyclotomicInteger::from_int(1, v))
                .collect(),
        )
    }

    pub fn values(&self) -> &[CyclotomicInteger] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Value at the identity class, when it is an integer.
    pub fn degree(&self) -> Option<BigInt> {
        self.values.first().and_then(CyclotomicInteger::as_integer)
    }

    pub fn is_trivial(&self) -> bool {
        self.values
            .iter()
            .all(|v| v.as_integer() == Some(BigInt::from(1)))
    }

    /// Integer values, if every value is rational.
    pub fn as_integers(&self) -> Option<Vec<BigInt>> {
        self.values
            .iter()
            .map(CyclotomicInteger::as_integer)
            .collect()
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(
            self.len(),
            other.len(),
            "class functions on different class lists"
        );
        Self::new(
            self.values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| {
                    let c = num_integer::lcm(a.conductor(), b.conductor());
                    a.embed(c).sub(&b.embed(c))
                })
                .collect(),
        )
    }
}

impl Serialize for ClassFunction {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.values.serialize(s)
    }
}

pub(crate) fn lcm_conductor<'a>(values: impl IntoIterator<Item = &'a CyclotomicInteger>) -> u64 {
    values
        .into_iter()
        .fold(1, |acc, v| num_integer::lcm(acc, v.conductor()))
}

/// `sum_k h_k f(g_k) conj(g(g_k))` as one cyclotomic integer.
pub(crate) fn inner_product_sum(
    sizes: &[u64],
    f: &ClassFunction,
    g: &ClassFunction,
) -> CyclotomicInteger {
    assert_eq!(f.len(), g.len(), "class functions on different class lists");
    let terms: Vec<CyclotomicInteger> = sizes
        .iter()
        .zip(f.values.iter().zip(&g.values))
        .map(|(&h, (a, b))| {
            let c = num_integer::lcm(a.conductor(), b.conductor());
            a.embed(c).mul(&b.embed(c).conj()).scale(&BigInt::from(h))
        })
        .collect();
    let conductor = lcm_conductor(&terms);
    terms
        .iter()
        .fold(CyclotomicInteger::zero(conductor), |acc, t| {
            acc.add(&t.embed(conductor))
        })
}

/// `(1/|G|) sum_k h_k f(g_k) conj(g(g_k))`; fails unless the result is
/// rational.
pub fn inner_product(
    classes: &ConjugacyClasses,
    f: &ClassFunction,
    g: &ClassFunction,
) -> Result<BigRational, ReptheoryError> {
    if f.len() != classes.len() || g.len() != classes.len() {
        return Err(ReptheoryError::Mismatch(format!(
            "class functions of lengths {} and {} on {} classes",
            f.len(),
            g.len(),
            classes.len()
        )));
    }
    let sum = inner_product_sum(classes.sizes(), f, g);
    let n = sum.as_integer().ok_or(ReptheoryError::NotRational)?;
    Ok(BigRational::new(n, BigInt::from(classes.group_order())))
}

/// Fixed-point counts of the class representatives.
pub fn permutation_character(classes: &ConjugacyClasses) -> ClassFunction {
    ClassFunction::from_integers(
        classes
            .representatives()
            .iter()
            .map(|r| r.fixed_points() as i64),
    )
}

#[derive(Debug, Clone)]
pub struct CharacterTable {
    classes: ConjugacyClasses,
    irreducibles: Vec<ClassFunction>,
    degrees: Vec<u64>,
    prime: u64,
}

impl CharacterTable {
    pub fn compute(group: &PermutationGroup, class_bound: u64) -> Result<Self, ReptheoryError> {
        Self::from_classes(group.conjugacy_classes(class_bound)?)
    }

    pub fn from_classes(classes: ConjugacyClasses) -> Result<Self, ReptheoryError> {
        let out = dixon::compute(&classes)?;
        Ok(Self {
            classes,
            irreducibles: out.irreducibles,
            degrees: out.degrees,
            prime: out.prime,
        })
    }

    pub fn classes(&self) -> &ConjugacyClasses {
        &self.classes
    }

    /// Irreducible characters, sorted by degree with the trivial one first.
    pub fn irreducibles(&self) -> &[ClassFunction] {
        &self.irreducibles
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    /// The prime used for the modular eigenvector computation.
    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn inner_product(
        &self,
        f: &ClassFunction,
        g: &ClassFunction,
    ) -> Result<BigRational, ReptheoryError> {
        inner_product(&self.classes, f, g)
    }

    /// Multiplicities `<f, chi_i>`, which must be non-negative integers.
    pub fn multiplicities(&self, f: &ClassFunction) -> Result<Vec<u64>, ReptheoryError> {
        self.irreducibles
            .iter()
            .map(|chi| {
                let m = self.inner_product(f, chi)?;
                if !m.is_integer() || m < BigRational::from_integer(BigInt::from(0)) {
                    return Err(ReptheoryError::Mismatch(format!(
                        "multiplicity {m} is not a non-negative integer"
                    )));
                }
                u64::try_from(m.to_integer())
                    .map_err(|_| ReptheoryError::Mismatch("multiplicity overflow".into()))
            })
            .collect()
    }
}

impl Serialize for CharacterTable {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let classes: Vec<serde_json::Value> = (0..self.classes.len())
            .map(|k| {
                serde_json::json!({
                    "size": self.classes.sizes()[k],
                    "element_order": self.classes.element_orders()[k],
                    "cycle_type": self.classes.representatives()[k].cycle_type(),
                })
            })
            .collect();
        let mut st = s.serialize_struct("CharacterTable", 5)?;
        st.serialize_field("group_order", &self.classes.group_order())?;
        st.serialize_field("prime", &self.prime)?;
        st.serialize_field("classes", &classes)?;
        st.serialize_field("degrees", &self.degrees)?;
        st.serialize_field("values", &self.irreducibles)?;
        st.end()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DecompositionMethod {
    TwoTransitive,
    CharacterTable,
}

/// One irreducible constituent with its multiplicity and its values at
/// `sigma0`, `sigma0^2` (conductor 3) and `sigma1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionPart {
    pub label: String,
    pub irreducible: Option<usize>,
    pub multiplicity: u64,
    pub degree: u64,
    pub at_sigma0: CyclotomicInteger,
    pub at_sigma0_sq: CyclotomicInteger,
    pub at_sigma1: BigInt,
}

impl Serialize for DecompositionPart {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("DecompositionPart", 7)?;
        st.serialize_field("label", &self.label)?;
        st.serialize_field("irreducible", &self.irreducible)?;
        st.serialize_field("multiplicity", &self.multiplicity)?;
        st.serialize_field("degree", &self.degree)?;
        st.serialize_field("at_sigma0", &self.at_sigma0)?;
        st.serialize_field("at_sigma0_sq", &self.at_sigma0_sq)?;
        st.serialize_field("at_sigma1", &bigint_json(&self.at_sigma1))?;
        st.end()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub method: DecompositionMethod,
    pub permutation_degree: u64,
    pub parts: Vec<DecompositionPart>,
}

impl Decomposition {
    /// `sum e_i^2`, equal to `<pi, pi>`.
    pub fn multiplicity_norm(&self) -> u64 {
        self.parts
            .iter()
            .map(|p| p.multiplicity * p.multiplicity)
            .sum()
    }

    /// `sum e_i deg_i`, equal to the permutation degree.
    pub fn total_degree(&self) -> u64 {
        self.parts.iter().map(|p| p.multiplicity * p.degree).sum()
    }

    /// Parts as `(multiplicity, degree, sigma0, sigma0^2, sigma1)` tuples
    /// sorted by degree, for comparing methods.
    pub fn signature(&self) -> Vec<(u64, u64, CyclotomicInteger, CyclotomicInteger, BigInt)> {
        let mut v: Vec<_> = self
            .parts
            .iter()
            .map(|p| {
                (
                    p.multiplicity,
                    p.degree,
                    p.at_sigma0.clone(),
                    p.at_sigma0_sq.clone(),
                    p.at_sigma1.clone(),
                )
            })
            .collect();
        v.sort_by(|a, b| {
            (a.0, a.1, a.2.coefficients(), a.4.clone()).cmp(&(
                b.0,
                b.1,
                b.2.coefficients(),
                b.4.clone(),
            ))
        });
        v
    }
}

fn at_order_three(v: &CyclotomicInteger) -> Result<CyclotomicInteger, ReptheoryError> {
    match v.conductor() {
        1 | 3 => Ok(v.embed(3)),
        c => Err(ReptheoryError::Mismatch(format!(
            "value of conductor {c} at an element of order dividing 3"
        ))),
    }
}

/// Trivial plus `pi - 1`; valid for 2-transitive actions, needs no table.
pub fn decompose_two_transitive(dessin: &Dessin) -> Decomposition {
    let d = dessin.degree() as i64;
    let fix = |p: &crate::permgroup::Permutation| p.fixed_points() as i64;
    let s0 = dessin.sigma0();
    let mut parts = vec![DecompositionPart {
        label: "trivial".into(),
        irreducible: None,
        multiplicity: 1,
        degree: 1,
        at_sigma0: CyclotomicInteger::from_int(3, 1),
        at_sigma0_sq: CyclotomicInteger::from_int(3, 1),
        at_sigma1: BigInt::from(1),
    }];
    if d > 1 {
        parts.push(DecompositionPart {
            label: "standard".into(),
            irreducible: None,
            multiplicity: 1,
            degree: (d - 1) as u64,
            at_sigma0: CyclotomicInteger::from_int(3, fix(s0) - 1),
            at_sigma0_sq: CyclotomicInteger::from_int(3, fix(&s0.pow(2)) - 1),
            at_sigma1: BigInt::from(fix(dessin.sigma1()) - 1),
        });
    }
    Decomposition {
        method: DecompositionMethod::TwoTransitive,
        permutation_degree: d as u64,
        parts,
    }
}

/// Full decomposition by inner products against a character table of the
/// monodromy group.
pub fn decompose_with_table(
    table: &CharacterTable,
    dessin: &Dessin,
) -> Result<Decomposition, ReptheoryError> {
    let classes = table.classes();
    let pi = permutation_character(classes);
    let mults = table.multiplicities(&pi)?;
    let locate = |p: &crate::permgroup::Permutation| {
        classes.class_of(p).ok_or_else(|| {
            ReptheoryError::Mismatch("dessin permutation outside the table's group".into())
        })
    };
    let k0 = locate(dessin.sigma0())?;
    let k00 = locate(&dessin.sigma0().pow(2))?;
    let k1 = locate(dessin.sigma1())?;
    let mut parts = Vec::new();
    for (i, (chi, &m)) in table.irreducibles().iter().zip(&mults).enumerate() {
        if m == 0 {
            continue;
        }
        let at_sigma1 = chi.values()[k1]
            .as_integer()
            .ok_or_else(|| ReptheoryError::Mismatch("irrational value at an involution".into()))?;
        parts.push(DecompositionPart {
            label: if chi.is_trivial() {
                "trivial".into()
            } else {
                format!("chi{}", i + 1)
            },
            irreducible: Some(i),
            multiplicity: m,
            degree: table.degrees()[i],
            at_sigma0: at_order_three(&chi.values()[k0])?,
            at_sigma0_sq: at_order_three(&chi.values()[k00])?,
            at_sigma1,
        });
    }
    let out = Decomposition {
        method: DecompositionMethod::CharacterTable,
        permutation_degree: dessin.degree() as u64,
        parts,
    };
    if out.total_degree() != out.permutation_degree {
        return Err(ReptheoryError::Mismatch(format!(
            "constituent degrees sum to {} instead of {}",
            out.total_degree(),
            out.permutation_degree
        )));
    }
    Ok(out)
}

/// Uses the 2-transitive shortcut when it applies, else a character table
/// when the group order is within `class_bound`.
pub fn decompose_permutation(
    group: &PermutationGroup,
    dessin: &Dessin,
    class_bound: u64,
) -> Result<Decomposition, ReptheoryError> {
    if group.degree() > 1 && group.is_2transitive()? {
        return Ok(decompose_two_transitive(dessin));
    }
    let table = CharacterTable::compute(group, class_bound)?;
    decompose_with_table(&table, dessin)
}
