use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::HabiroError;

/// Dense univariate polynomial in `q` with big-integer coefficients.
/// `coeffs[k]` is the coefficient of `q^k`; trailing zeros are trimmed, so
/// the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = Self { coeffs };
        p.trim();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `c * q^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// `q^n - 1`.
    pub fn q_power_minus_one(n: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[0] = -BigInt::one();
        coeffs[n] += BigInt::one();
        Self::new(coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    fn shifted_scaled_sub_assign(&mut self, other: &Self, c: &BigInt, shift: usize) {
        if self.coeffs.len() < other.coeffs.len() + shift {
            self.coeffs
                .resize(other.coeffs.len() + shift, BigInt::zero());
        }
        for (k, o) in other.coeffs.iter().enumerate() {
            self.coeffs[k + shift] -= o * c;
        }
        self.trim();
    }

    /// Division with remainder by a polynomial whose leading coefficient is a
    /// unit (`±1`), so the quotient stays integral.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self), HabiroError> {
        let lead = divisor.leading().ok_or(HabiroError::DivisionByZero)?;
        if !lead.abs().is_one() {
            return Err(HabiroError::NonUnitLeadingCoefficient);
        }
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.clone();
        let mut quot = vec![BigInt::zero(); self.coeffs.len().saturating_sub(dd)];
        while let Some(dr) = rem.degree() {
            if dr < dd {
                break;
            }
            let c = rem.coeffs[dr].clone() * lead; // lead is its own inverse
            let shift = dr - dd;
            rem.shifted_scaled_sub_assign(divisor, &c, shift);
            quot[shift] = c;
        }
        Ok((Self::new(quot), rem))
    }

    pub fn rem(&self, divisor: &Self) -> Result<Self, HabiroError> {
        self.div_rem(divisor).map(|(_, r)| r)
    }

    /// Exact division; fails if the remainder is non-zero.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self, HabiroError> {
        let (q, r) = self.div_rem(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(HabiroError::InexactDivision)
        }
    }

    /// Pseudo-remainder `lc(divisor)^(deg self - deg divisor + 1) * self mod divisor`.
    pub fn pseudo_rem(&self, divisor: &Self) -> Self {
        let (Some(da), Some(db)) = (self.degree(), divisor.degree()) else {
            return self.clone();
        };
        if da < db {
            return self.clone();
        }
        let lead = divisor.leading().unwrap().clone();
        let mut rem = self.clone();
        let mut steps = 0;
        while let Some(dr) = rem.degree() {
            if dr < db {
                break;
            }
            let c = rem.coeffs[dr].clone();
            rem = rem.scale(&lead);
            rem.shifted_scaled_sub_assign(divisor, &c, dr - db);
            steps += 1;
        }
        let missing = (da - db + 1) - steps;
        rem.scale(&num_traits::pow(lead, missing))
    }

    fn divide_coeffs(&self, c: &BigInt) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .map(|x| {
                    debug_assert!((x % c).is_zero());
                    x / c
                })
                .collect(),
        )
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Resultant by the subresultant pseudo-remainder sequence.
    pub fn resultant(&self, other: &Self) -> BigInt {
        let (Some(da), Some(db)) = (self.degree(), other.degree()) else {
            return BigInt::zero();
        };
        if db == 0 {
            return num_traits::pow(other.coeffs[0].clone(), da);
        }
        if da == 0 {
            return num_traits::pow(self.coeffs[0].clone(), db);
        }
        let mut a = self.clone();
        let mut b = other.clone();
        let mut sign = BigInt::one();
        if da < db {
            std::mem::swap(&mut a, &mut b);
            if da % 2 == 1 && db % 2 == 1 {
                sign = -sign;
            }
        }
        let ca = a.content();
        let cb = b.content();
        let t = num_traits::pow(ca.clone(), b.degree().unwrap())
            * num_traits::pow(cb.clone(), a.degree().unwrap());
        a = a.divide_coeffs(&ca);
        b = b.divide_coeffs(&cb);
        let mut g = BigInt::one();
        let mut h = BigInt::one();
        loop {
            let (dega, degb) = (a.degree().unwrap(), b.degree().unwrap());
            let delta = dega - degb;
            if dega % 2 == 1 && degb % 2 == 1 {
                sign = -sign;
            }
            let r = a.pseudo_rem(&b);
            a = b;
            let divisor = &g * num_traits::pow(h.clone(), delta);
            b = r.divide_coeffs(&divisor);
            g = a.leading().unwrap().clone();
            h = match delta {
                0 => h,
                1 => g.clone(),
                _ => num_traits::pow(g.clone(), delta) / num_traits::pow(h, delta - 1),
            };
            match b.degree() {
                None => return BigInt::zero(),
                Some(0) => break,
                Some(_) => {}
            }
        }
        let dega = a.degree().unwrap();
        let lb = b.coeffs[0].clone();
        let h = if dega == 0 {
            h
        } else {
            num_traits::pow(lb, dega) / num_traits::pow(h, dega - 1)
        };
        sign * t * h
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| {
                acc * z + c.to_f64().unwrap_or(f64::NAN)
            })
    }

    /// Substitutes `q -> q^k`.
    pub fn inflate(&self, k: usize) -> Self {
        if self.is_zero() || k == 1 {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); (self.coeffs.len() - 1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = c.clone();
        }
        Self::new(coeffs)
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for IntPolynomial {
    /// Highest degree first, e.g. `q^4 - q^2 + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let show_coeff = !abs.is_one() || k == 0;
            if show_coeff {
                write!(f, "{abs}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "q")?,
                _ => write!(f, "q^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial({self})")
    }
}
