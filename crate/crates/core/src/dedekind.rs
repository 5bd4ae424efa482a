//! Dedekind sums `s(p, q)` and the Dedekind symbol `S(p/q) = 12·sign(q)·s(p, q)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{int, rat, Rational};

/// A fraction `p/q` in lowest terms with `q > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fraction {
    p: i64,
    q: i64,
}

impl Fraction {
    /// Reduces `p/q` and moves the sign to the numerator.
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if q == 0 {
            return Err(Error::ZeroDenominator);
        }
        let g = p.gcd(&q);
        let (mut p, mut q) = (p / g, q / g);
        if q < 0 {
            p = -p;
            q = -q;
        }
        Ok(Fraction { p, q })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn to_rational(&self) -> Rational {
        rat(self.p, self.q)
    }
}

impl FromStr for Fraction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::Parse(s.to_string());
        let t = s.trim();
        let (p, q) = match t.split_once('/') {
            Some((p, q)) => (p.trim().parse().map_err(|_| err())?, q.trim().parse().map_err(|_| err())?),
            None => (t.parse().map_err(|_| err())?, 1),
        };
        Fraction::new(p, q)
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

/// `((x)) = x - ⌊x⌋ - 1/2`, and `0` at integers.
pub fn sawtooth(x: &Rational) -> Rational {
    if x.is_integer() {
        return Rational::zero();
    }
    x - x.floor() - rat(1, 2)
}

fn check_coprime(p: i64, q: i64) -> Result<()> {
    if q == 0 {
        return Err(Error::ZeroDenominator);
    }
    if p.gcd(&q) != 1 {
        return Err(Error::NotCoprime(p, q));
    }
    Ok(())
}

/// `s(p, q) = Σ_{k=1}^{|q|-1} ((k/q))·((kp/q))`.
pub fn dedekind_sum(p: i64, q: i64) -> Result<Rational> {
    check_coprime(p, q)?;
    // Both sawtooth arguments have denominator |q|; accumulate numerators
    // over the common denominator 4q² to keep the sum in integers.
    let qa = q.unsigned_abs() as i128;
    let sq = q.signum() as i128;
    let pq = p as i128;
    let mut acc = BigInt::zero();
    for k in 1..qa {
        let a = saw2(sq * k, qa);
        let b = saw2((sq * k * pq).rem_euclid(qa), qa);
        acc += BigInt::from(a) * BigInt::from(b);
    }
    Ok(Rational::new(acc, BigInt::from(4) * BigInt::from(qa) * BigInt::from(qa)))
}

/// `2q·((n/q))` for `q > 0`, as an integer.
fn saw2(n: i128, q: i128) -> i128 {
    let r = n.rem_euclid(q);
    if r == 0 {
        0
    } else {
        2 * r - q
    }
}

/// The Dedekind symbol of the rational `p/q`; non-reduced input is reduced.
pub fn dedekind_symbol(p: i64, q: i64) -> Result<Rational> {
    let f = Fraction::new(p, q)?;
    symbol_of(&f)
}

pub fn symbol_of(f: &Fraction) -> Result<Rational> {
    Ok(dedekind_sum(f.p, f.q)? * int(12))
}

/// One row of the `q·S(p/q)` table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableEntry {
    pub p: i64,
    pub q: i64,
    #[serde(rename = "qS")]
    pub q_s: i64,
}

/// All coprime `0 < p < q ≤ q_max` together with the integer `q·S(p/q)`.
pub fn dedekind_table(q_max: i64) -> Result<Vec<TableEntry>> {
    if q_max < 2 {
        return Err(Error::InvalidArgument(format!("q_max must be at least 2, got {q_max}")));
    }
    let mut out = Vec::new();
    for q in 2..=q_max {
        for p in 1..q {
            if p.gcd(&q) != 1 {
                continue;
            }
            let qs = dedekind_symbol(p, q)? * int(q);
            if !qs.is_integer() {
                return Err(Error::Inconsistent(format!("q·S({p}/{q}) = {qs} is not an integer")));
            }
            let v = qs.to_integer();
            let q_s = i64::try_from(v).map_err(|_| Error::Inconsistent("table entry overflow".into()))?;
            out.push(TableEntry { p, q, q_s });
        }
    }
    Ok(out)
}

/// The right-hand side of Dedekind reciprocity,
/// `p/q + q/p + 1/(pq) - 3·sign(pq)`.
pub fn reciprocity_rhs(p: i64, q: i64) -> Rational {
    let (pr, qr) = (int(p), int(q));
    &pr / &qr + &qr / &pr + (&pr * &qr).recip() - int(3 * (p * q).signum())
}

/// Inverse of `a` modulo `m > 1`, if it exists.
pub fn mod_inverse(a: i64, m: i64) -> Option<i64> {
    let e = a.rem_euclid(m).extended_gcd(&m);
    if e.gcd.abs() != 1 {
        return None;
    }
    Some((e.x * e.gcd).rem_euclid(m))
}
