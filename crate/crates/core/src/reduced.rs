//! The sl(2)-reduced diagram algebra `ℚ[[ħ, s]]`.
//!
//! A monomial `s^m` stands for `m` disjoint struts (`2m` legs), so the
//! leg-gluing pairing is `⟨s^m, s^n⟩ = δ_{mn}·(2m+1)!` and `θ = 12ħ`. The
//! wheels element becomes `Ω = Σ ħ^m s^m / (2^m (2m+1)!)`.
//!
//! Every element records the window `(s_cap, hbar_cap)` on which its
//! coefficients are known. Operators that lower the `s`-degree
//! (`glue_strut`, `hat`) shrink the `s` window accordingly.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{factorial_q, parse_rational, rational_to_string, HbarSeries, Rational};

/// Default ħ-order used throughout the crate.
pub const DEFAULT_ORDER: usize = 10;
/// Extra `s`-headroom carried by elements that get fed to `hat`.
pub const S_SLACK: usize = 12;

/// Truncated series `Σ c[m][k] s^m ħ^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedElement {
    coeffs: Vec<Vec<Rational>>,
    s_cap: usize,
    hbar_cap: usize,
}

impl ReducedElement {
    pub fn zero(s_cap: usize, hbar_cap: usize) -> Self {
        Self::from_fn(s_cap, hbar_cap, |_, _| Rational::zero())
    }

    pub fn one(s_cap: usize, hbar_cap: usize) -> Self {
        let mut e = Self::zero(s_cap, hbar_cap);
        e.coeffs[0][0] = Rational::one();
        e
    }

    /// `c·s^m·ħ^k` (zero if it falls outside the window).
    pub fn monomial(c: Rational, m: usize, k: usize, s_cap: usize, hbar_cap: usize) -> Self {
        let mut e = Self::zero(s_cap, hbar_cap);
        if m <= s_cap && k <= hbar_cap {
            e.coeffs[m][k] = c;
        }
        e
    }

    pub fn from_fn(s_cap: usize, hbar_cap: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let coeffs = (0..=s_cap).map(|m| (0..=hbar_cap).map(|k| f(m, k)).collect()).collect();
        ReducedElement { coeffs, s_cap, hbar_cap }
    }

    /// Lifts a series `f(t)` to `f(ħs)`.
    pub fn from_hbar_s(f: &HbarSeries, s_cap: usize, hbar_cap: usize) -> Self {
        Self::from_fn(s_cap, hbar_cap, |m, k| {
            if m == k && m <= f.order() {
                f.coeff(m).clone()
            } else {
                Rational::zero()
            }
        })
    }

    pub fn s_cap(&self) -> usize {
        self.s_cap
    }

    pub fn hbar_cap(&self) -> usize {
        self.hbar_cap
    }

    pub fn coeff(&self, m: usize, k: usize) -> &Rational {
        &self.coeffs[m][k]
    }

    pub fn coeffs(&self) -> &[Vec<Rational>] {
        &self.coeffs
    }

    /// The coefficient of `s^m` as a series in ħ.
    pub fn row(&self, m: usize) -> HbarSeries {
        HbarSeries::new(self.coeffs[m].clone())
    }

    /// `c[m][k] = 0` whenever `k < m`.
    pub fn is_hbar_dominated(&self) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(m, row)| row.iter().take(m.min(self.hbar_cap + 1)).all(Zero::is_zero))
    }

    pub fn truncate(&self, s_cap: usize, hbar_cap: usize) -> Self {
        assert!(
            s_cap <= self.s_cap && hbar_cap <= self.hbar_cap,
            "cannot extend an element beyond its window"
        );
        Self::from_fn(s_cap, hbar_cap, |m, k| self.coeffs[m][k].clone())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_window(other)?;
        Ok(Self::from_fn(self.s_cap, self.hbar_cap, |m, k| &self.coeffs[m][k] + &other.coeffs[m][k]))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same_window(other)?;
        Ok(Self::from_fn(self.s_cap, self.hbar_cap, |m, k| &self.coeffs[m][k] - &other.coeffs[m][k]))
    }

    fn same_window(&self, other: &Self) -> Result<()> {
        if self.s_cap != other.s_cap {
            return Err(Error::OrderMismatch(self.s_cap, other.s_cap));
        }
        if self.hbar_cap != other.hbar_cap {
            return Err(Error::OrderMismatch(self.hbar_cap, other.hbar_cap));
        }
        Ok(())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_fn(self.s_cap, self.hbar_cap, |m, k| &self.coeffs[m][k] * c)
    }

    /// Multiplies every `s`-row by the scalar series `f`.
    pub fn scale_series(&self, f: &HbarSeries) -> Result<Self> {
        if f.order() < self.hbar_cap {
            return Err(Error::OrderMismatch(f.order(), self.hbar_cap));
        }
        let f = f.truncate(self.hbar_cap);
        let rows = self
            .coeffs
            .iter()
            .map(|r| (&HbarSeries::new(r.clone()) * &f).into_coeffs())
            .collect();
        Ok(ReducedElement { coeffs: rows, s_cap: self.s_cap, hbar_cap: self.hbar_cap })
    }

    /// Disjoint-union product. Both factors are truncated to the common
    /// window first.
    pub fn mul(&self, other: &Self) -> Self {
        let sc = self.s_cap.min(other.s_cap);
        let hc = self.hbar_cap.min(other.hbar_cap);
        let mut out = Self::zero(sc, hc);
        for m1 in 0..=sc {
            for k1 in 0..=hc {
                let a = &self.coeffs[m1][k1];
                if a.is_zero() {
                    continue;
                }
                for m2 in 0..=sc - m1 {
                    for k2 in 0..=hc - k1 {
                        let b = &other.coeffs[m2][k2];
                        if !b.is_zero() {
                            out.coeffs[m1 + m2][k1 + k2] += a * b;
                        }
                    }
                }
            }
        }
        out
    }

    /// Multiplicative inverse; needs a nonzero constant term.
    pub fn inv(&self) -> Result<Self> {
        let a00 = &self.coeffs[0][0];
        if a00.is_zero() {
            return Err(Error::NotInvertible);
        }
        let inv0 = a00.recip();
        let (sc, hc) = (self.s_cap, self.hbar_cap);
        let mut b = Self::zero(sc, hc);
        for m in 0..=sc {
            for k in 0..=hc {
                if m == 0 && k == 0 {
                    b.coeffs[0][0] = inv0.clone();
                    continue;
                }
                let mut acc = Rational::zero();
                for i in 0..=m {
                    for j in 0..=k {
                        if (i, j) == (0, 0) {
                            continue;
                        }
                        let a = &self.coeffs[i][j];
                        if !a.is_zero() {
                            acc += a * &b.coeffs[m - i][k - j];
                        }
                    }
                }
                b.coeffs[m][k] = -acc * &inv0;
            }
        }
        Ok(b)
    }

    /// Integer power; negative exponents go through [`Self::inv`].
    pub fn pow(&self, n: i64) -> Result<Self> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = Self::one(self.s_cap, self.hbar_cap);
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq);
            }
        }
        Ok(acc)
    }

    /// Rescales legs by `α`: the `s^m` row picks up `α^{2m}`, realizing
    /// `Ω_{αx}` from `Ω_x`.
    pub fn scale_legs(&self, alpha: &Rational) -> Self {
        let a2 = alpha * alpha;
        let mut factor = Rational::one();
        let mut coeffs = Vec::with_capacity(self.s_cap + 1);
        for row in &self.coeffs {
            coeffs.push(row.iter().map(|c| c * &factor).collect());
            factor *= &a2;
        }
        ReducedElement { coeffs, s_cap: self.s_cap, hbar_cap: self.hbar_cap }
    }

    /// Glues the two legs of one strut into the legs of `self`; the adjoint
    /// of multiplication by `s` under the pairing, `s^m ↦ 2m(2m+1) s^{m-1}`.
    /// The result is valid on an `s`-window one smaller.
    pub fn glue_strut(&self) -> Result<Self> {
        if self.s_cap == 0 {
            return Err(Error::Window("no s-headroom left for strut gluing".into()));
        }
        let sc = self.s_cap - 1;
        Ok(Self::from_fn(sc, self.hbar_cap, |m, k| {
            let w = BigInt::from(2 * (m + 1) * (2 * m + 3));
            &self.coeffs[m + 1][k] * w
        }))
    }

    /// Largest `m` whose `s^m` row has a nonzero entry.
    fn s_support(&self) -> usize {
        self.coeffs
            .iter()
            .rposition(|row| row.iter().any(|c| !c.is_zero()))
            .unwrap_or(0)
    }

    /// `Σ (2m+1)!·c^m/m! · row_m(self)`: the pairing against `exp(c·s)`
    /// done in closed form, with the window limited by the `s`-cap.
    fn gaussian_moments(&self, c: &Rational) -> Result<HbarSeries> {
        if !self.is_hbar_dominated() {
            return Err(Error::NotDominated);
        }
        let order = self.hbar_cap.min(self.s_cap);
        let mut acc = HbarSeries::zero(order);
        let mut cm = Rational::one();
        for m in 0..=order {
            let w = factorial_q(2 * m + 1) * &cm / factorial_q(m);
            acc = &acc + &self.row(m).truncate(order).scale(&w);
            cm *= c;
        }
        Ok(acc)
    }

    /// Serializable form: `{s_cap, hbar_cap, coeffs}` with rows indexed by
    /// `s`-degree.
    pub fn to_json_repr(&self) -> ReducedElementJson {
        ReducedElementJson {
            s_cap: self.s_cap,
            hbar_cap: self.hbar_cap,
            coeffs: self.coeffs.iter().map(|r| r.iter().map(rational_to_string).collect()).collect(),
        }
    }

    pub fn from_json_repr(j: &ReducedElementJson) -> Result<Self> {
        if j.coeffs.len() != j.s_cap + 1 || j.coeffs.iter().any(|r| r.len() != j.hbar_cap + 1) {
            return Err(Error::InvalidArgument("coefficient array does not match caps".into()));
        }
        let coeffs = j
            .coeffs
            .iter()
            .map(|r| r.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(ReducedElement { coeffs, s_cap: j.s_cap, hbar_cap: j.hbar_cap })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReducedElementJson {
    pub s_cap: usize,
    pub hbar_cap: usize,
    pub coeffs: Vec<Vec<String>>,
}

/// Modified Bernoulli numbers `b_2, b_4, …`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BernoulliTable {
    values: Vec<Rational>,
}

impl BernoulliTable {
    /// `b_{2m}` for `m ≥ 1`.
    pub fn b(&self, m: usize) -> &Rational {
        &self.values[m - 1]
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }
}

/// Coefficients of `x^{2m}` in `½·log(sinh(x/2)/(x/2))` for `m = 1..=count`.
pub fn modified_bernoulli(count: usize) -> Result<BernoulliTable> {
    if count == 0 {
        return Err(Error::InvalidArgument("need at least one Bernoulli number".into()));
    }
    // sinh(x/2)/(x/2) = Σ y^m / (4^m (2m+1)!) with y = x².
    let sinhc = HbarSeries::from_fn(count, |m| {
        (factorial_q(2 * m + 1) * Rational::from_integer(BigInt::from(4).pow(m as u32))).recip()
    });
    let half_log = sinhc.log()?.scale(&crate::exact::rat(1, 2));
    Ok(BernoulliTable { values: half_log.coeffs()[1..].to_vec() })
}

/// `Ω = Σ ħ^m s^m / (2^m (2m+1)!)` on the square window `hbar_cap`.
pub fn build_omega(hbar_cap: usize) -> ReducedElement {
    omega_with_caps(hbar_cap, hbar_cap)
}

/// `Ω` on an arbitrary window; rows beyond `hbar_cap` vanish in the window.
pub fn omega_with_caps(s_cap: usize, hbar_cap: usize) -> ReducedElement {
    ReducedElement::from_fn(s_cap, hbar_cap, |m, k| {
        if m == k {
            (factorial_q(2 * m + 1) * Rational::from_integer(BigInt::from(2).pow(m as u32))).recip()
        } else {
            Rational::zero()
        }
    })
}

/// `Ω` built the long way: `exp(Σ b_{2m}·ω_{2m})` with `ω_{2m} = 2(2ħs)^m`.
pub fn omega_from_wheels(hbar_cap: usize) -> Result<ReducedElement> {
    let order = hbar_cap.max(1);
    let b = modified_bernoulli(order)?;
    // Work in t = ħs; Ω is a series in that product.
    let log_omega = HbarSeries::from_fn(order, |m| {
        if m == 0 {
            Rational::zero()
        } else {
            b.b(m) * Rational::from_integer(BigInt::from(2).pow(m as u32 + 1))
        }
    });
    let f = log_omega.exp()?;
    Ok(ReducedElement::from_hbar_s(&f, hbar_cap, hbar_cap))
}

/// `exp(c·s)` truncated to the window. Not ħ-dominated; only usable as the
/// second argument of [`hat`] or with a dominated partner in [`pair`].
pub fn exp_strut(c: &Rational, s_cap: usize, hbar_cap: usize) -> ReducedElement {
    let mut row0 = Vec::with_capacity(s_cap + 1);
    let mut term = Rational::one();
    for m in 0..=s_cap {
        row0.push(term.clone());
        term = term * c / BigInt::from(m + 1);
    }
    ReducedElement::from_fn(s_cap, hbar_cap, |m, k| if k == 0 { row0[m].clone() } else { Rational::zero() })
}

/// The pairing `⟨a, b⟩ = Σ_m (2m+1)!·row_m(a)·row_m(b)`.
///
/// One argument must be ħ-dominated, so that only rows `m ≤ hbar_cap`
/// reach a given ħ-order. The result is valid up to the smaller ħ-cap,
/// further limited by the `s`-caps.
pub fn pair(a: &ReducedElement, b: &ReducedElement) -> Result<HbarSeries> {
    if !a.is_hbar_dominated() && !b.is_hbar_dominated() {
        return Err(Error::PairingDiverges);
    }
    let order = a.hbar_cap.min(b.hbar_cap).min(a.s_cap).min(b.s_cap);
    let mut acc = HbarSeries::zero(order);
    for m in 0..=order {
        let ra = a.row(m).truncate(order);
        let rb = b.row(m).truncate(order);
        acc = &acc + &(&ra * &rb).scale(&factorial_q(2 * m + 1));
    }
    Ok(acc)
}

/// `⟨exp(c·s), p⟩` with the Gaussian side handled in closed form.
pub fn pair_gaussian(c: &Rational, p: &ReducedElement) -> Result<HbarSeries> {
    p.gaussian_moments(c)
}

/// One-variable formal Gaussian integral `∫ p·exp(λ s/2) dx`.
pub fn fgi_1var(p: &ReducedElement, lambda: &Rational) -> Result<HbarSeries> {
    if lambda.is_zero() {
        return Err(Error::SingularCovariance);
    }
    let c = -(lambda * Rational::from_integer(BigInt::from(2))).recip();
    pair_gaussian(&c, p)
}

/// `∂_A B`: glue all legs of `a` into `b`,
/// `Σ_m row_m(a)·glue_strut^m(b)`.
pub fn hat(a: &ReducedElement, b: &ReducedElement) -> Result<ReducedElement> {
    if !a.is_hbar_dominated() {
        return Err(Error::NotDominated);
    }
    let hc = a.hbar_cap.min(b.hbar_cap);
    // Rows above hc only reach ħ-orders beyond the window.
    let top = a.s_support().min(hc);
    if a.s_cap < hc {
        return Err(Error::Window("first argument of hat needs s_cap >= hbar_cap".into()));
    }
    if top > b.s_cap {
        return Err(Error::Window(format!(
            "hat needs {top} strut gluings but the second argument only has s_cap {}",
            b.s_cap
        )));
    }
    let out_s = b.s_cap - top;
    let mut glued = b.truncate(b.s_cap, hc);
    let mut acc = ReducedElement::zero(out_s, hc);
    for m in 0..=top {
        let coeff = a.row(m).truncate(hc);
        if coeff.coeffs().iter().any(|c| !c.is_zero()) {
            let term = glued.truncate(out_s, hc).scale_series(&coeff)?;
            acc = acc.checked_add(&term)?;
        }
        if m < top {
            glued = glued.glue_strut()?;
        }
    }
    Ok(acc)
}

/// `∫ Ω_{αx} Ω_{βx} exp(γ s/2) dx`.
pub fn specific_integral_lhs(alpha: &Rational, beta: &Rational, gamma: &Rational, order: usize) -> Result<HbarSeries> {
    if gamma.is_zero() {
        return Err(Error::SingularCovariance);
    }
    let omega = build_omega(order);
    let p = omega.scale_legs(alpha).mul(&omega.scale_legs(beta));
    fgi_1var(&p, gamma)
}

/// `exp(-(α²+β²)θ/(48γ))·⟨Ω, Ω_{αβ/γ}⟩` with `θ = 12ħ`.
pub fn specific_integral_rhs(alpha: &Rational, beta: &Rational, gamma: &Rational, order: usize) -> Result<HbarSeries> {
    if gamma.is_zero() {
        return Err(Error::SingularCovariance);
    }
    let omega = build_omega(order);
    let paired = pair(&omega, &omega.scale_legs(&(alpha * beta / gamma)))?;
    let rate = -(alpha * alpha + beta * beta) / (gamma * Rational::from_integer(BigInt::from(4)));
    Ok(&HbarSeries::exp_linear(&rate, order) * &paired)
}

/// `⟨Ω, Ω⟩ = sinh(ħ/2)/(ħ/2)`.
pub fn omega_norm(order: usize) -> HbarSeries {
    let omega = build_omega(order);
    pair(&omega, &omega).expect("Ω is ħ-dominated")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    const D: usize = 10;

    /// sinh(ħ/2)/(ħ/2) = Σ ħ^{2m} / (4^m (2m+1)!), straight from the
    /// exponential series.
    fn sinhc(order: usize) -> HbarSeries {
        HbarSeries::from_fn(order, |k| {
            if k % 2 == 1 {
                Rational::zero()
            } else {
                let m = k / 2;
                (factorial_q(k + 1) * Rational::from_integer(BigInt::from(4).pow(m as u32))).recip()
            }
        })
    }

    #[test]
    fn bernoulli_values() {
        let b = modified_bernoulli(3).unwrap();
        assert_eq!(b.b(1), &rat(1, 48));
        assert_eq!(b.b(2), &rat(-1, 5760));
        // Frozen from an independent expansion of ½·log(sinh(x/2)/(x/2)).
        assert_eq!(b.b(3), &rat(1, 362880));
        assert_eq!(modified_bernoulli(4).unwrap().b(4), &rat(-1, 19353600));
        assert!(modified_bernoulli(0).is_err());
    }

    #[test]
    fn omega_coefficients() {
        let o = build_omega(D);
        assert_eq!(o.coeff(1, 1), &rat(1, 12));
        assert_eq!(o.coeff(2, 2), &rat(1, 480));
        for m in 0..=D {
            for k in 0..=D {
                if m != k {
                    assert!(o.coeff(m, k).is_zero());
                }
            }
        }
        assert_eq!(omega_from_wheels(D).unwrap(), o);
    }

    #[test]
    fn products_and_powers() {
        let o = build_omega(D);
        let oi = o.inv().unwrap();
        assert_eq!(o.mul(&oi), ReducedElement::one(D, D));
        assert_eq!(o.pow(0).unwrap(), ReducedElement::one(D, D));
        assert_eq!(o.pow(-2).unwrap(), oi.mul(&oi));
        assert_eq!(o.mul(&o).coeff(1, 1), &rat(1, 6));
        assert_eq!(ReducedElement::zero(2, 2).inv(), Err(Error::NotInvertible));
    }

    #[test]
    fn leg_scaling() {
        let o = build_omega(D);
        assert_eq!(o.scale_legs(&int(1)), o);
        assert_eq!(o.scale_legs(&rat(1, 7)).coeff(1, 1), &rat(1, 12 * 49));
        assert_eq!(o.scale_legs(&rat(-2, 3)), o.scale_legs(&rat(2, 3)));
        assert!(o.scale_legs(&rat(1, 5)).is_hbar_dominated());
        assert!(o.inv().unwrap().is_hbar_dominated());
    }

    #[test]
    fn pairing_basics() {
        let o = build_omega(D);
        assert_eq!(pair(&o, &o).unwrap(), sinhc(D));
        let one = ReducedElement::one(D, D);
        assert_eq!(pair(&one, &o).unwrap(), o.row(0));
        let s = ReducedElement::monomial(int(1), 1, 0, D, D);
        assert_eq!(pair(&s, &o).unwrap(), HbarSeries::monomial(rat(1, 2), 1, D));
        assert_eq!(pair(&s, &s), Err(Error::PairingDiverges));
    }

    #[test]
    fn pairing_is_symmetric() {
        let o = build_omega(8);
        let a = o.scale_legs(&rat(2, 3)).mul(&o.inv().unwrap());
        let b = exp_strut(&rat(-1, 5), 8, 8);
        assert_eq!(pair(&a, &b).unwrap(), pair(&b, &a).unwrap());
    }

    #[test]
    fn gaussian_moments() {
        let e0 = rat(3, 7);
        let c = (int(2) * &e0).recip();
        for m in 0..5usize {
            let p = ReducedElement::monomial(Rational::from_integer(BigInt::from(2).pow(m as u32)).recip(), m, m, D, D);
            let want = factorial_q(2 * m + 1)
                / (Rational::from_integer(BigInt::from(4)) * &e0).pow(m as i32)
                / factorial_q(m);
            assert_eq!(pair_gaussian(&c, &p).unwrap(), HbarSeries::monomial(want, m, D));
        }
        assert_eq!(pair_gaussian(&c, &ReducedElement::one(D, D)).unwrap(), HbarSeries::one(D));
        let not_dominated = ReducedElement::monomial(int(1), 1, 0, D, D);
        assert_eq!(pair_gaussian(&c, &not_dominated), Err(Error::NotDominated));
    }

    #[test]
    fn gaussian_of_omega_squared() {
        // Σ ħ^m/(m!(m+1)) = (e^ħ - 1)/ħ; times e^{-ħ/2} gives sinh(ħ/2)/(ħ/2).
        let o = build_omega(D);
        let g = pair_gaussian(&rat(1, 2), &o.mul(&o)).unwrap();
        let closed = HbarSeries::from_fn(D, |m| (factorial_q(m) * int(m as i64 + 1)).recip());
        assert_eq!(g, closed);
        assert_eq!(&g * &HbarSeries::exp_linear(&rat(-1, 2), D), sinhc(D));
    }

    #[test]
    fn fgi_examples() {
        let one = ReducedElement::one(D, D);
        assert_eq!(fgi_1var(&one, &int(3)).unwrap(), HbarSeries::one(D));
        let hs = ReducedElement::monomial(int(1), 1, 1, D, D);
        let lambda = rat(5, 2);
        assert_eq!(fgi_1var(&hs, &lambda).unwrap(), HbarSeries::monomial(-int(3) / &lambda, 1, D));
        assert_eq!(fgi_1var(&one, &int(0)), Err(Error::SingularCovariance));
    }

    #[test]
    fn glue_strut_examples() {
        let s = ReducedElement::monomial(int(1), 1, 0, D, D);
        assert_eq!(s.glue_strut().unwrap(), ReducedElement::monomial(int(6), 0, 0, D - 1, D));
        let one = ReducedElement::one(D, D);
        assert_eq!(one.glue_strut().unwrap(), ReducedElement::zero(D - 1, D));
        let o = omega_with_caps(D + S_SLACK, D);
        let expect = o.truncate(D + S_SLACK - 1, D).scale_series(&HbarSeries::monomial(rat(1, 2), 1, D)).unwrap();
        assert_eq!(o.glue_strut().unwrap(), expect);
        assert!(ReducedElement::one(0, 3).glue_strut().is_err());
    }

    #[test]
    fn hat_examples() {
        let o = omega_with_caps(D + S_SLACK, D);
        let one = ReducedElement::one(D, D);
        assert_eq!(hat(&one, &o).unwrap(), o);
        let oi = build_omega(D).inv().unwrap();
        let lhs = hat(&oi, &o).unwrap();
        let rhs = o.scale_series(&omega_norm(D).inv().unwrap()).unwrap().truncate(lhs.s_cap(), D);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn hat_window_is_checked() {
        let o = build_omega(D);
        let short = exp_strut(&rat(1, 2), 3, D);
        assert!(matches!(hat(&o, &short), Err(Error::Window(_))));
        let s = ReducedElement::monomial(int(1), 1, 0, D, D);
        assert_eq!(hat(&s, &o), Err(Error::NotDominated));
    }

    #[test]
    fn specific_integral_trivial() {
        let z = int(0);
        assert_eq!(specific_integral_lhs(&z, &z, &int(3), D).unwrap(), HbarSeries::one(D));
        assert_eq!(specific_integral_rhs(&z, &z, &int(3), D).unwrap(), HbarSeries::one(D));
        assert!(specific_integral_lhs(&int(1), &int(1), &z, D).is_err());
    }

    #[test]
    fn json_round_trip() {
        let o = build_omega(3).scale_legs(&rat(1, 3));
        let j = serde_json::to_string(&o.to_json_repr()).unwrap();
        let back: ReducedElementJson = serde_json::from_str(&j).unwrap();
        assert_eq!(ReducedElement::from_json_repr(&back).unwrap(), o);
    }
}
