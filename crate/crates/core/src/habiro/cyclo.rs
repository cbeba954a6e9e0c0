use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::IntPolynomial;

pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n.is_multiple_of(i) {
            small.push(i);
            if i != n / i {
                large.push(n / i);
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn euler_phi(n: u64) -> u64 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// `Some((p, k))` if `n = p^k` with `p` prime and `k >= 1`.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut m = n;
            let mut k = 0;
            while m.is_multiple_of(p) {
                m /= p;
                k += 1;
            }
            return (m == 1).then_some((p, k));
        }
        p += 1;
    }
    Some((n, 1))
}

fn cache() -> &'static Mutex<HashMap<u64, Arc<IntPolynomial>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<IntPolynomial>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// The `n`-th cyclotomic polynomial, obtained from `q^d - 1` by exact
/// division by `Phi_e` for the proper divisors `e` of each divisor `d` of
/// `n`, smallest first. Results are memoized process-wide.
pub fn cyclotomic(n: u64) -> Arc<IntPolynomial> {
    assert!(n >= 1, "cyclotomic index must be positive");
    if let Some(p) = cache().lock().unwrap().get(&n) {
        return p.clone();
    }
    let divs = divisors(n);
    let mut local: HashMap<u64, Arc<IntPolynomial>> = HashMap::new();
    for &d in &divs {
        if let Some(p) = cache().lock().unwrap().get(&d) {
            local.insert(d, p.clone());
            continue;
        }
        let mut p = IntPolynomial::q_power_minus_one(d as usize);
        for &e in divisors(d).iter().filter(|&&e| e < d) {
            p = p
                .exact_div(&local[&e])
                .expect("cyclotomic factors divide q^d - 1");
        }
        let p = Arc::new(p);
        cache().lock().unwrap().insert(d, p.clone());
        local.insert(d, p);
    }
    local.remove(&n).unwrap()
}

/// An element of `Z[q]/Phi_m(q)`, i.e. of the ring of integers `Z[zeta_m]`,
/// stored in the power basis `1, q, .., q^(phi(m)-1)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CyclotomicInteger {
    conductor: u64,
    value: IntPolynomial,
}

impl CyclotomicInteger {
    /// Reduces `poly` modulo `Phi_m`.
    pub fn new(conductor: u64, poly: &IntPolynomial) -> Self {
        let phi = cyclotomic(conductor);
        let value = poly.rem(&phi).expect("cyclotomic polynomials are monic");
        Self { conductor, value }
    }

    pub fn from_int(conductor: u64, c: impl Into<BigInt>) -> Self {
        Self::new(conductor, &IntPolynomial::constant(c.into()))
    }

    pub fn zero(conductor: u64) -> Self {
        Self {
            conductor,
            value: IntPolynomial::zero(),
        }
    }

    /// `zeta_m^k`.
    pub fn zeta_power(conductor: u64, k: u64) -> Self {
        Self::new(
            conductor,
            &IntPolynomial::monomial(BigInt::one(), (k % conductor) as usize),
        )
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn as_polynomial(&self) -> &IntPolynomial {
        &self.value
    }

    /// Power-basis coefficients, padded to length `phi(m)`.
    pub fn coefficients(&self) -> Vec<BigInt> {
        let n = euler_phi(self.conductor) as usize;
        (0..n).map(|k| self.value.coeff(k)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    /// The rational integer this element equals, if it is one.
    pub fn as_integer(&self) -> Option<BigInt> {
        match self.value.degree() {
            None => Some(BigInt::zero()),
            Some(0) => Some(self.value.coeff(0)),
            _ => None,
        }
    }

    fn check(&self, other: &Self) {
        assert_eq!(
            self.conductor, other.conductor,
            "cyclotomic integers of different conductors"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        Self {
            conductor: self.conductor,
            value: &self.value + &other.value,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check(other);
        Self {
            conductor: self.conductor,
            value: &self.value - &other.value,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        Self::new(self.conductor, &(&self.value * &other.value))
    }

    pub fn neg(&self) -> Self {
        Self {
            conductor: self.conductor,
            value: -&self.value,
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self {
            conductor: self.conductor,
            value: self.value.scale(c),
        }
    }

    /// Complex conjugation, `q -> q^(m-1)`.
    pub fn conj(&self) -> Self {
        let m = self.conductor as usize;
        let mut coeffs = vec![BigInt::zero(); m];
        for (k, c) in self.value.coeffs().iter().enumerate() {
            coeffs[(m - k % m) % m] += c;
        }
        Self::new(self.conductor, &IntPolynomial::new(coeffs))
    }

    /// Image under `zeta_m -> zeta_target^(target/m)`; `m` must divide `target`.
    pub fn embed(&self, target: u64) -> Self {
        assert_eq!(target % self.conductor, 0, "conductor must divide target");
        if target == self.conductor {
            return self.clone();
        }
        let k = (target / self.conductor) as usize;
        Self::new(target, &self.value.inflate(k))
    }

    /// Value under the embedding `q -> exp(2 pi i / m)`.
    pub fn to_complex(&self) -> Complex64 {
        let z = Complex64::from_polar(1.0, std::f64::consts::TAU / self.conductor as f64);
        self.value.eval_complex(z)
    }
}

impl fmt::Display for CyclotomicInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coeffs: Vec<String> = self.coefficients().iter().map(|c| c.to_string()).collect();
        write!(f, "[{}] (conductor {})", coeffs.join(", "), self.conductor)
    }
}

impl fmt::Debug for CyclotomicInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod Phi_{}", self.value, self.conductor)
    }
}

pub(crate) fn bigint_json(c: &BigInt) -> serde_json::Value {
    match c.to_i64() {
        Some(v) => serde_json::Value::from(v),
        None => serde_json::Value::from(c.to_string()),
    }
}

impl Serialize for CyclotomicInteger {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let coeffs: Vec<serde_json::Value> = self.coefficients().iter().map(bigint_json).collect();
        let mut st = s.serialize_struct("CyclotomicInteger", 2)?;
        st.serialize_field("conductor", &self.conductor)?;
        st.serialize_field("coefficients", &coeffs)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(*cyclotomic(1), IntPolynomial::from_i64(&[-1, 1]));
        assert_eq!(*cyclotomic(2), IntPolynomial::from_i64(&[1, 1]));
        assert_eq!(*cyclotomic(6), IntPolynomial::from_i64(&[1, -1, 1]));
        assert_eq!(*cyclotomic(12), IntPolynomial::from_i64(&[1, 0, -1, 0, 1]));
        // Phi_105 is the first with a coefficient outside {-1, 0, 1}
        assert!(cyclotomic(105)
            .coeffs()
            .iter()
            .any(|c| *c == BigInt::from(-2)));
    }

    #[test]
    fn arithmetic_helpers() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(euler_phi(1320), 320);
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
        assert_eq!(prime_power(13), Some((13, 1)));
    }

    #[test]
    fn ring_operations() {
        let w = CyclotomicInteger::zeta_power(3, 1);
        // w^2 + w + 1 = 0
        let s = w.mul(&w).add(&w).add(&CyclotomicInteger::from_int(3, 1));
        assert!(s.is_zero());
        assert_eq!(w.conj(), w.mul(&w));
        let i = CyclotomicInteger::zeta_power(4, 1);
        assert_eq!(i.mul(&i).as_integer(), Some(BigInt::from(-1)));
        assert_eq!(i.mul(&i.conj()).as_integer(), Some(BigInt::one()));
    }

    #[test]
    fn embedding_preserves_value() {
        let w = CyclotomicInteger::zeta_power(3, 2).add(&CyclotomicInteger::from_int(3, 5));
        let e = w.embed(12);
        assert!((w.to_complex() - e.to_complex()).norm() < 1e-12);
        assert_eq!(e.conductor(), 12);
    }

    #[test]
    fn json_shape() {
        let v = CyclotomicInteger::new(3, &IntPolynomial::from_i64(&[5, -1]));
        assert_eq!(
            serde_json::to_string(&v).unwrap(),
            r#"{"conductor":3,"coefficients":[5,-1]}"#
        );
    }
}
