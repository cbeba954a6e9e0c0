use num_bigint::BigInt;
use num_traits::One;

use super::{cyclotomic, CyclotomicInteger, HabiroError, IntPolynomial};

/// `(q;q)_n = (1 - q)(1 - q^2)...(1 - q^n)`; `(q;q)_0 = 1`.
pub fn q_pochhammer(n: usize) -> IntPolynomial {
    (1..=n).fold(IntPolynomial::one(), |acc, k| {
        let mut factor = vec![BigInt::from(0); k + 1];
        factor[0] = BigInt::one();
        factor[k] = BigInt::from(-1);
        &acc * &IntPolynomial::new(factor)
    })
}

/// `(q^n - 1)(q^(n-1) - 1)...(q - 1) = (-1)^n (q;q)_n`.
pub fn q_factorial_descending(n: usize) -> IntPolynomial {
    let p = q_pochhammer(n);
    if n.is_multiple_of(2) {
        p
    } else {
        -&p
    }
}

/// Truncation of an element of the Habiro ring at level `N`: residues
/// `r_0..r_N` with `r_n` reduced modulo `(q;q)_n` and
/// `r_n = r_(n+1) mod (q;q)_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HabiroElement {
    residues: Vec<IntPolynomial>,
}

impl HabiroElement {
    /// The element `sum_k a_k(q) (q;q)_k` truncated at level `coeffs.len()`.
    pub fn from_series(coeffs: &[IntPolynomial]) -> Self {
        let level = coeffs.len();
        let mut residues = Vec::with_capacity(level + 1);
        let mut partial = IntPolynomial::zero();
        let mut poch = IntPolynomial::one();
        residues.push(IntPolynomial::zero());
        for (k, a) in coeffs.iter().enumerate() {
            partial = &partial + &(a * &poch);
            poch = &poch * &q_pochhammer_factor(k + 1);
            residues.push(
                partial
                    .rem(&poch)
                    .expect("(q;q)_n has unit leading coefficient"),
            );
        }
        Self { residues }
    }

    /// `sum_n (q;q)_n` truncated at `level`.
    pub fn kontsevich(level: usize) -> Self {
        Self::from_series(&vec![IntPolynomial::one(); level])
    }

    /// Rebuilds an element from residues, reducing them and checking
    /// compatibility.
    pub fn from_residues(residues: Vec<IntPolynomial>) -> Result<Self, HabiroError> {
        let residues: Vec<IntPolynomial> = residues
            .iter()
            .enumerate()
            .map(|(n, r)| r.rem(&q_pochhammer(n)).expect("unit leading coefficient"))
            .collect();
        let h = Self { residues };
        if h.is_compatible() {
            Ok(h)
        } else {
            Err(HabiroError::IncompatibleResidues)
        }
    }

    pub fn level(&self) -> usize {
        self.residues.len() - 1
    }

    pub fn residues(&self) -> &[IntPolynomial] {
        &self.residues
    }

    pub fn is_compatible(&self) -> bool {
        self.residues.windows(2).enumerate().all(|(n, w)| {
            (&w[1] - &w[0])
                .rem(&q_pochhammer(n))
                .map(|r| r.is_zero())
                .unwrap_or(false)
        })
    }

    pub fn truncate(&self, level: usize) -> Self {
        Self {
            residues: self.residues[..=level.min(self.level())].to_vec(),
        }
    }

    fn zip_with(
        &self,
        other: &Self,
        f: impl Fn(&IntPolynomial, &IntPolynomial) -> IntPolynomial,
    ) -> Self {
        let residues = self
            .residues
            .iter()
            .zip(&other.residues)
            .enumerate()
            .map(|(n, (a, b))| {
                f(a, b)
                    .rem(&q_pochhammer(n))
                    .expect("unit leading coefficient")
            })
            .collect();
        Self { residues }
    }

    /// Sum, truncated at the smaller of the two levels.
    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a + b)
    }

    /// Product, truncated at the smaller of the two levels.
    pub fn mul(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a * b)
    }

    /// Series coefficients `a_n` with `deg a_n <= n` such that the element
    /// equals `sum_n a_n (q;q)_n` up to the truncation level.
    pub fn canonical_series(&self) -> Vec<IntPolynomial> {
        (0..self.level())
            .map(|n| {
                let diff = &self.residues[n + 1] - &self.residues[n];
                let t = diff
                    .exact_div(&q_pochhammer(n))
                    .expect("compatible residues differ by a multiple of (q;q)_n");
                t.rem(&q_pochhammer_factor(n + 1))
                    .expect("unit leading coefficient")
            })
            .collect()
    }

    /// Value at a primitive `m`-th root of unity, exact in `Z[zeta_m]`.
    /// Needs level at least `m`, since `Phi_m` divides `(q;q)_n` for `n >= m`.
    pub fn evaluate_at_root(&self, m: u64) -> Result<CyclotomicInteger, HabiroError> {
        if m == 0 {
            return Err(HabiroError::Domain("root order must be positive".into()));
        }
        if (self.level() as u64) < m {
            return Err(HabiroError::InsufficientTruncation {
                level: self.level(),
                needed: m as usize,
            });
        }
        let _ = cyclotomic(m);
        Ok(CyclotomicInteger::new(m, &self.residues[self.level()]))
    }

    /// Image in `Z[q]/(q^n - 1)`, defined once the level reaches `n`.
    pub fn residue_mod_q_power_minus_one(&self, n: usize) -> Result<IntPolynomial, HabiroError> {
        if n == 0 {
            return Err(HabiroError::Domain("modulus index must be positive".into()));
        }
        if self.level() < n {
            return Err(HabiroError::InsufficientTruncation {
                level: self.level(),
                needed: n,
            });
        }
        self.residues[self.level()].rem(&IntPolynomial::q_power_minus_one(n))
    }
}

/// `1 - q^k`.
fn q_pochhammer_factor(k: usize) -> IntPolynomial {
    let mut c = vec![BigInt::from(0); k + 1];
    c[0] = BigInt::one();
    c[k] = BigInt::from(-1);
    IntPolynomial::new(c)
}

pub fn habiro_from_series(coeffs: &[IntPolynomial]) -> HabiroElement {
    HabiroElement::from_series(coeffs)
}

pub fn evaluate_at_root(h: &HabiroElement, m: u64) -> Result<CyclotomicInteger, HabiroError> {
    h.evaluate_at_root(m)
}
