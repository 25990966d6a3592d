use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Laurent polynomial in one variable with exact integer coefficients.
///
/// Stored as the lowest exponent plus a dense coefficient list; both end
/// coefficients are nonzero, and the zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LaurentPolynomial {
    min_degree: i64,
    coeffs: Vec<BigInt>,
}

impl LaurentPolynomial {
    pub fn new<T: Into<BigInt>>(min_degree: i64, coeffs: impl IntoIterator<Item = T>) -> Self {
        let mut p = LaurentPolynomial { min_degree, coeffs: coeffs.into_iter().map(Into::into).collect() };
        p.trim();
        p
    }

    pub fn zero() -> Self {
        LaurentPolynomial { min_degree: 0, coeffs: vec![] }
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn monomial<T: Into<BigInt>>(c: T, degree: i64) -> Self {
        Self::new(degree, [c.into()])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == self.coeffs.len() {
            self.coeffs.clear();
            self.min_degree = 0;
        } else if lead > 0 {
            self.coeffs.drain(..lead);
            self.min_degree += lead as i64;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_degree(&self) -> i64 {
        self.min_degree
    }

    pub fn max_degree(&self) -> i64 {
        self.min_degree + self.coeffs.len() as i64 - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, degree: i64) -> BigInt {
        let i = degree - self.min_degree;
        if i < 0 || i >= self.coeffs.len() as i64 {
            BigInt::zero()
        } else {
            self.coeffs[i as usize].clone()
        }
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        LaurentPolynomial { min_degree: self.min_degree + k, coeffs: self.coeffs.clone() }
    }

    /// Substitutes `x -> x^(-1)`.
    pub fn invert(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        LaurentPolynomial { min_degree: -self.max_degree(), coeffs }
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.invert()
    }

    /// Value at `x = -1` (any integer unit works, this is the one needed).
    pub fn eval_minus_one(&self) -> BigInt {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| if (self.min_degree + i as i64).rem_euclid(2) == 0 { c.clone() } else { -c })
            .sum()
    }

    pub fn eval_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// Exact quotient, if `other` divides `self` in the Laurent ring over Z.
    pub fn div_exact(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let mut rem = self.coeffs.clone();
        let d = &other.coeffs;
        if rem.len() < d.len() {
            return None;
        }
        let lead = d.last().unwrap();
        let qlen = rem.len() - d.len() + 1;
        let mut q = vec![BigInt::zero(); qlen];
        for i in (0..qlen).rev() {
            let top = &rem[i + d.len() - 1];
            if top.is_zero() {
                continue;
            }
            if !(top % lead).is_zero() {
                return None;
            }
            let c = top / lead;
            for (j, dj) in d.iter().enumerate() {
                rem[i + j] -= &c * dj;
            }
            q[i] = c;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::new(self.min_degree - other.min_degree, q))
    }

    /// Compact text form `min:c0,c1,...`, the inverse of [`FromStr`].
    pub fn to_compact(&self) -> String {
        let cs: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        format!("{}:{}", self.min_degree, cs.join(","))
    }
}

impl FromStr for LaurentPolynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Table(format!("bad polynomial {s:?}"));
        let (m, cs) = s.trim().split_once(':').ok_or_else(bad)?;
        let min: i64 = m.trim().parse().map_err(|_| bad())?;
        let coeffs = cs
            .split(',')
            .filter(|c| !c.trim().is_empty())
            .map(|c| c.trim().parse::<BigInt>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        Ok(LaurentPolynomial::new(min, coeffs))
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = self.min_degree + i as i64;
            let sign = if c.is_negative() { "-" } else if first { "" } else { "+" };
            let a = c.abs();
            let body = match (e, a.is_one()) {
                (0, _) => a.to_string(),
                (1, true) => "t".to_string(),
                (1, false) => format!("{a}*t"),
                (_, true) => format!("t^{e}"),
                (_, false) => format!("{a}*t^{e}"),
            };
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{sign}{body}")?;
            first = false;
        }
        Ok(())
    }
}

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn add(self, rhs: Self) -> LaurentPolynomial {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let lo = self.min_degree.min(rhs.min_degree);
        let hi = self.max_degree().max(rhs.max_degree());
        LaurentPolynomial::new(lo, (lo..=hi).map(|e| self.coeff(e) + rhs.coeff(e)))
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn neg(self) -> LaurentPolynomial {
        LaurentPolynomial { min_degree: self.min_degree, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn sub(self, rhs: Self) -> LaurentPolynomial {
        self + &(-rhs)
    }
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn mul(self, rhs: Self) -> LaurentPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        LaurentPolynomial::new(self.min_degree + rhs.min_degree, out)
    }
}

macro_rules! by_value {
    ($tr:ident, $f:ident) => {
        impl $tr for LaurentPolynomial {
            type Output = LaurentPolynomial;

            fn $f(self, rhs: Self) -> LaurentPolynomial {
                (&self).$f(&rhs)
            }
        }
    };
}

by_value!(Add, add);
by_value!(Sub, sub);
by_value!(Mul, mul);
