//! Continued fractions `p/q = -1/(a_1 - 1/(a_2 - … - 1/a_ℓ))`, their
//! `SL(2, ℤ)` matrix form, and the tridiagonal linking matrix `Λ` of the
//! corresponding Hopf chain.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{int, rat, Rational};

/// `T(a) = ((a, -1), (1, 0))` as `[[a, -1], [1, 0]]`.
type Mat2 = [[i128; 2]; 2];

fn generator(a: i64) -> Mat2 {
    [[a as i128, -1], [1, 0]]
}

fn mat_mul(x: &Mat2, y: &Mat2) -> Mat2 {
    let mut z = [[0i128; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            z[i][j] = x[i][0] * y[0][j] + x[i][1] * y[1][j];
        }
    }
    z
}

/// The entries `(p, u, q, v)` of `T(0)·T(a_1)⋯T(a_ℓ) = ((p, u), (q, v))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MatrixEntries {
    pub p: i64,
    pub u: i64,
    pub q: i64,
    pub v: i64,
}

impl MatrixEntries {
    pub fn det(&self) -> i64 {
        self.p * self.v - self.u * self.q
    }
}

/// Evaluates the ordered matrix product for the sequence `a`.
pub fn cfrac_eval(a: &[i64]) -> Result<MatrixEntries> {
    if a.is_empty() {
        return Err(Error::InvalidArgument("continued fraction needs at least one term".into()));
    }
    let mut m = generator(0);
    for &x in a {
        m = mat_mul(&m, &generator(x));
    }
    let conv = |x: i128| i64::try_from(x).map_err(|_| Error::InvalidArgument("matrix entry overflow".into()));
    Ok(MatrixEntries { p: conv(m[0][0])?, u: conv(m[0][1])?, q: conv(m[1][0])?, v: conv(m[1][1])? })
}

/// A continued fraction expansion with its derived data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CfracData {
    pub a: Vec<i64>,
    pub p: i64,
    pub u: i64,
    pub q: i64,
    pub v: i64,
    /// Trace of `Λ`.
    pub tau: i64,
    /// Signature of `Λ`.
    pub sigma: i64,
    /// `det Λ`, which equals `q`.
    pub det: i64,
}

impl CfracData {
    pub fn from_terms(a: Vec<i64>) -> Result<Self> {
        let m = cfrac_eval(&a)?;
        let minors = leading_minors(&a);
        let det = *minors.last().unwrap();
        let sigma = signature(&a)?;
        Ok(CfracData { tau: a.iter().sum(), p: m.p, u: m.u, q: m.q, v: m.v, sigma, det, a })
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    pub fn value(&self) -> Rational {
        rat(self.p, self.q)
    }
}

/// Expands `p/q` as `-1/(a_1 - 1/(a_2 - …))` with `ℓ ≥ 2`.
///
/// Each step takes `a` nearest to `-1/x`, leaving a remainder of size at
/// most 1/2, so the length is logarithmic in `q`. Single-term expansions are
/// padded with `[0, 0]`, which flips the signs of `(p, q)` jointly.
pub fn cfrac_expand(p: i64, q: i64) -> Result<CfracData> {
    if q == 0 {
        return Err(Error::ZeroDenominator);
    }
    if p.gcd(&q) != 1 {
        return Err(Error::NotCoprime(p, q));
    }
    let mut a = Vec::new();
    if p == 0 {
        a.extend([0, 0]);
    } else {
        // x = num/den with den > 0
        let (mut num, mut den) = if q < 0 { (-p as i128, -q as i128) } else { (p as i128, q as i128) };
        loop {
            // -1/x = -den/num
            let (n2, d2) = if num < 0 { (den, -num) } else { (-den, num) };
            // nearest integer: the remainder stays in [-1/2, 1/2), so the
            // numerators at least halve each step
            let ai = Integer::div_floor(&(2 * n2 + d2), &(2 * d2));
            a.push(i64::try_from(ai).map_err(|_| Error::InvalidArgument("term overflow".into()))?);
            // remainder y = -1/x - a_i = (n2 - a_i d2)/d2
            let rem = n2 - ai * d2;
            if rem == 0 {
                break;
            }
            num = rem;
            den = d2;
        }
        if a.len() < 2 {
            a.extend([0, 0]);
        }
    }
    let data = CfracData::from_terms(a)?;
    debug_assert_eq!(data.value(), rat(p, q));
    Ok(data)
}

/// `d_0 = 1, d_1 = a_1, d_k = a_k d_{k-1} - d_{k-2}`; `d_ℓ = det Λ`.
pub fn leading_minors(a: &[i64]) -> Vec<i64> {
    let mut d = Vec::with_capacity(a.len() + 1);
    d.push(1i64);
    let mut prev = 0i64;
    for &x in a {
        let cur = x * d[d.len() - 1] - prev;
        prev = d[d.len() - 1];
        d.push(cur);
    }
    d
}

/// Signature of `Λ(a)` from the sign changes of its leading minors.
///
/// A zero minor sits between minors of opposite sign (the off-diagonal is
/// 1), so skipping zeros counts exactly one negative eigenvalue for the pair.
pub fn signature(a: &[i64]) -> Result<i64> {
    let d = leading_minors(a);
    if *d.last().unwrap() == 0 {
        return Err(Error::SingularMatrix);
    }
    let mut negatives = 0i64;
    let mut last = 1i64;
    for &x in &d[1..] {
        if x == 0 {
            continue;
        }
        if x.signum() != last.signum() {
            negatives += 1;
        }
        last = x;
    }
    Ok(a.len() as i64 - 2 * negatives)
}

/// The corners `l^{11}`, `l^{1ℓ}`, `l^{ℓℓ}` of `Λ^{-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InverseCorners {
    pub l11: Rational,
    pub l1l: Rational,
    pub lll: Rational,
}

/// Corners from the matrix entries: `-p/q`, `(-1)^{ℓ+1}/q`, `-v/q`.
///
/// The off-diagonal corner is the `(ℓ,1)` cofactor, a triangular minor with
/// unit diagonal, over `det Λ = q`.
pub fn inverse_corners_closed(a: &[i64]) -> Result<InverseCorners> {
    let m = cfrac_eval(a)?;
    if m.q == 0 {
        return Err(Error::SingularMatrix);
    }
    let sign = if a.len().is_multiple_of(2) { -1 } else { 1 };
    Ok(InverseCorners { l11: rat(-m.p, m.q), l1l: rat(sign, m.q), lll: rat(-m.v, m.q) })
}

/// Corners from exact solves `Λx = e_1` and `Λx = e_ℓ`.
pub fn inverse_corners_solved(a: &[i64]) -> Result<InverseCorners> {
    let n = a.len();
    if n == 0 {
        return Err(Error::InvalidArgument("empty matrix".into()));
    }
    let first = solve_tridiagonal(a, 0)?;
    let last = solve_tridiagonal(a, n - 1)?;
    Ok(InverseCorners { l11: first[0].clone(), l1l: first[n - 1].clone(), lll: last[n - 1].clone() })
}

/// Both routes, which must agree.
pub fn inverse_corners(a: &[i64]) -> Result<InverseCorners> {
    let closed = inverse_corners_closed(a)?;
    let solved = inverse_corners_solved(a)?;
    if closed != solved {
        return Err(Error::Inconsistent(format!("inverse corners disagree for {a:?}")));
    }
    Ok(closed)
}

/// Solves `Λ(a) x = e_col` by Gaussian elimination with row pivoting over ℚ.
#[allow(clippy::needless_range_loop)]
fn solve_tridiagonal(a: &[i64], col: usize) -> Result<Vec<Rational>> {
    let n = a.len();
    let mut m: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            let mut row: Vec<Rational> = (0..=n).map(|_| Rational::zero()).collect();
            row[i] = int(a[i]);
            if i > 0 {
                row[i - 1] = Rational::one();
            }
            if i + 1 < n {
                row[i + 1] = Rational::one();
            }
            if i == col {
                row[n] = Rational::one();
            }
            row
        })
        .collect();
    for c in 0..n {
        let piv = (c..n).find(|&r| !m[r][c].is_zero()).ok_or(Error::SingularMatrix)?;
        m.swap(c, piv);
        let inv = m[c][c].recip();
        for r in 0..n {
            if r != c && !m[r][c].is_zero() {
                let f = &m[r][c] * &inv;
                for k in c..=n {
                    let t = &f * &m[c][k];
                    m[r][k] -= t;
                }
            }
        }
    }
    Ok((0..n).map(|i| &m[i][n] / &m[i][i]).collect())
}

/// `S(p/q) = 3ς - τ + (p + v)/q` read off a continued fraction expansion.
pub fn dedekind_via_surgery(p: i64, q: i64) -> Result<Rational> {
    let data = cfrac_expand(p, q)?;
    Ok(symbol_from_cfrac(&data))
}

pub fn symbol_from_cfrac(data: &CfracData) -> Rational {
    int(3 * data.sigma - data.tau) + Rational::new(BigInt::from(data.p + data.v), BigInt::from(data.q))
}
