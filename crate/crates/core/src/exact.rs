//! Exact rationals and truncated power series in a single variable `ħ`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary precision fraction, always kept in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Formats a rational as `"num/den"`, including integers (`"3/1"`).
pub fn rational_to_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `"p/q"`, `"-p/q"` or a bare integer.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let err = || Error::Parse(s.to_string());
    let t = s.trim();
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| err())?;
    let d: BigInt = d.parse().map_err(|_| err())?;
    if d.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    Ok(Rational::new(n, d))
}

/// Exact sign of a rational as -1, 0 or 1.
pub fn sign(r: &Rational) -> i64 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    // Ratio of two huge integers overflows f64; scale first.
    match (r.numer().to_f64(), r.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            let shift = r.numer().bits().max(r.denom().bits()) as i64 - 900;
            let scale = |x: &BigInt| -> f64 {
                let s = if shift > 0 { x >> shift as usize } else { x.clone() };
                s.to_f64().unwrap_or(f64::NAN)
            };
            scale(r.numer()) / scale(r.denom())
        }
    }
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub(crate) fn factorial_q(n: usize) -> Rational {
    Rational::from_integer(factorial(n))
}

/// A power series `c_0 + c_1 ħ + … + c_D ħ^D + O(ħ^{D+1})`.
///
/// Coefficients above the order cap `D` are unknown rather than zero, so
/// binary operations demand equal caps; use [`HbarSeries::truncate`] to
/// compare series of different precision explicitly.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HbarSeries {
    coeffs: Vec<Rational>,
}

impl HbarSeries {
    /// Builds a series whose cap is `coeffs.len() - 1`.
    ///
    /// Panics on an empty coefficient vector.
    pub fn new(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least a constant term");
        HbarSeries { coeffs }
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> Rational) -> Self {
        HbarSeries { coeffs: (0..=order).map(f).collect() }
    }

    pub fn zero(order: usize) -> Self {
        Self::from_fn(order, |_| Rational::zero())
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Rational::one(), order)
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// `c·ħ^k`, which is zero within the window when `k > order`.
    pub fn monomial(c: Rational, k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &Rational {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    /// Drops all coefficients above `order`. Panics if `order` exceeds the
    /// current cap, since those coefficients are unknown.
    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order(), "cannot extend a series beyond its cap");
        HbarSeries { coeffs: self.coeffs[..=order].to_vec() }
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() == other.order() {
            Ok(())
        } else {
            Err(Error::OrderMismatch(self.order(), other.order()))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(HbarSeries {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(HbarSeries {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        })
    }

    /// Cauchy product truncated at the common cap.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let d = self.order();
        let mut out = vec![Rational::zero(); d + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=d - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Ok(HbarSeries { coeffs: out })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        HbarSeries { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Multiplicative inverse through the cap.
    pub fn inv(&self) -> Result<Self> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(Error::NotInvertible);
        }
        let inv0 = a0.recip();
        let d = self.order();
        let mut b: Vec<Rational> = Vec::with_capacity(d + 1);
        b.push(inv0.clone());
        for n in 1..=d {
            let mut acc = Rational::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() {
                    acc += &self.coeffs[k] * &b[n - k];
                }
            }
            b.push(-acc * &inv0);
        }
        Ok(HbarSeries { coeffs: b })
    }

    /// `exp(a)` for `a` with zero constant term, via `b' = a'·b`.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::ExpDomain);
        }
        let d = self.order();
        let mut b: Vec<Rational> = Vec::with_capacity(d + 1);
        b.push(Rational::one());
        for n in 1..=d {
            let mut acc = Rational::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() {
                    acc += &self.coeffs[k] * &b[n - k] * BigInt::from(k);
                }
            }
            b.push(acc / BigInt::from(n));
        }
        Ok(HbarSeries { coeffs: b })
    }

    /// `log(a)` for `a` with constant term one, via `a·l' = a'`.
    #[allow(clippy::needless_range_loop)]
    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::LogDomain);
        }
        let d = self.order();
        let mut l: Vec<Rational> = Vec::with_capacity(d + 1);
        l.push(Rational::zero());
        for n in 1..=d {
            let mut acc = Rational::zero();
            for k in 1..n {
                if !self.coeffs[n - k].is_zero() {
                    acc += &l[k] * &self.coeffs[n - k] * BigInt::from(k);
                }
            }
            l.push(&self.coeffs[n] - acc / BigInt::from(n));
        }
        Ok(HbarSeries { coeffs: l })
    }

    /// `exp(c·ħ)` through `order`.
    pub fn exp_linear(c: &Rational, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut term = Rational::one();
        coeffs.push(term.clone());
        for n in 1..=order {
            term = term * c / BigInt::from(n);
            coeffs.push(term.clone());
        }
        HbarSeries { coeffs }
    }

    /// Substitutes `ħ ↦ -ħ`.
    pub fn reflect(&self) -> Self {
        HbarSeries {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() })
                .collect(),
        }
    }

    /// Coefficient strings in degree order, `"num/den"` each.
    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(rational_to_string).collect()
    }

    pub fn from_strings<S: AsRef<str>>(items: &[S]) -> Result<Self> {
        if items.is_empty() {
            return Err(Error::InvalidArgument("empty coefficient list".into()));
        }
        let coeffs = items.iter().map(|s| parse_rational(s.as_ref())).collect::<Result<_>>()?;
        Ok(HbarSeries { coeffs })
    }
}

impl Add for &HbarSeries {
    type Output = HbarSeries;
    fn add(self, rhs: Self) -> HbarSeries {
        self.checked_add(rhs).expect("series orders must agree")
    }
}

impl Sub for &HbarSeries {
    type Output = HbarSeries;
    fn sub(self, rhs: Self) -> HbarSeries {
        self.checked_sub(rhs).expect("series orders must agree")
    }
}

impl Mul for &HbarSeries {
    type Output = HbarSeries;
    fn mul(self, rhs: Self) -> HbarSeries {
        self.checked_mul(rhs).expect("series orders must agree")
    }
}

impl Mul for HbarSeries {
    type Output = HbarSeries;
    fn mul(self, rhs: Self) -> HbarSeries {
        &self * &rhs
    }
}

impl Neg for &HbarSeries {
    type Output = HbarSeries;
    fn neg(self) -> HbarSeries {
        HbarSeries { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl fmt::Display for HbarSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}·")?;
                    }
                    if k == 1 {
                        write!(f, "ħ")?;
                    } else {
                        write!(f, "ħ^{k}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(ħ^{})", self.order() + 1)
    }
}

impl Serialize for HbarSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for HbarSeries {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let items = Vec::<String>::deserialize(deserializer)?;
        HbarSeries::from_strings(&items).map_err(serde::de::Error::custom)
    }
}
