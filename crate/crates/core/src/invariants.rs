//! LMO invariants of lens spaces and Seifert fibered rational homology
//! spheres in the sl(2) reduction, the Casson-Walker invariant, and the
//! Aarhus normalization constants.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::dedekind::{dedekind_symbol, mod_inverse};
use crate::error::{Error, Result};
use crate::exact::{int, rat, sign, HbarSeries, Rational};
use crate::reduced::{build_omega, fgi_1var, omega_norm, pair, pair_gaussian, ReducedElement};

/// The lens space `L(p, q)`, surgery on a `p/q`-framed unknot.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LensData {
    p: i64,
    q: i64,
}

impl LensData {
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if p == 0 {
            return Err(Error::InvalidLens(p, q, "p = 0 gives S²×S¹, not a rational homology sphere".into()));
        }
        if p.gcd(&q) != 1 {
            return Err(Error::InvalidLens(p, q, "p and q must be coprime".into()));
        }
        Ok(LensData { p, q })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }
}

/// An exceptional fiber with orbit invariants `(p, q)`, `0 < q < p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Fiber {
    pub p: i64,
    pub q: i64,
}

impl Fiber {
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if p == 1 {
            return Err(Error::InvalidSeifert(format!(
                "fiber {p}/{q} has p = 1; fold q/p into b instead"
            )));
        }
        if p < 2 || q <= 0 || q >= p {
            return Err(Error::InvalidSeifert(format!("fiber {p}/{q} must satisfy p >= 2 and 0 < q < p")));
        }
        if p.gcd(&q) != 1 {
            return Err(Error::InvalidSeifert(format!("fiber {p}/{q} is not reduced")));
        }
        Ok(Fiber { p, q })
    }
}

impl FromStr for Fiber {
    type Err = Error;

    /// Parses `"p/q"`.
    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::Parse(s.to_string());
        let (p, q) = s.trim().split_once('/').ok_or_else(err)?;
        Fiber::new(p.trim().parse().map_err(|_| err())?, q.trim().parse().map_err(|_| err())?)
    }
}

impl fmt::Display for Fiber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

/// The Seifert fibered space `S³(b; p_1/q_1, …, p_n/q_n)` over `S²`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SeifertData {
    pub b: i64,
    pub fibers: Vec<Fiber>,
}

impl SeifertData {
    /// Validates the fibers; `e0 = 0` is allowed here and rejected by the
    /// invariant routines.
    pub fn new(b: i64, fibers: &[(i64, i64)]) -> Result<Self> {
        let fibers = fibers.iter().map(|&(p, q)| Fiber::new(p, q)).collect::<Result<_>>()?;
        Ok(SeifertData { b, fibers })
    }

    pub fn n(&self) -> usize {
        self.fibers.len()
    }

    /// `e0 = b + Σ q_i/p_i`.
    pub fn e0(&self) -> Rational {
        self.fibers.iter().fold(int(self.b), |acc, f| acc + rat(f.q, f.p))
    }

    /// `|H_1| = |e0|·Π p_i`.
    pub fn h1_order(&self) -> Rational {
        self.fibers.iter().fold(self.e0().abs(), |acc, f| acc * int(f.p))
    }

    fn nonzero_e0(&self) -> Result<Rational> {
        let e0 = self.e0();
        if e0.is_zero() {
            return Err(Error::NotRationalHomologySphere);
        }
        Ok(e0)
    }

    fn dedekind_total(&self) -> Rational {
        self.fibers
            .iter()
            .map(|f| dedekind_symbol(f.q, f.p).expect("fibers are validated"))
            .fold(Rational::zero(), |a, b| a + b)
    }

    fn inverse_square_total(&self) -> Rational {
        self.fibers.iter().map(|f| rat(1, f.p * f.p)).fold(Rational::zero(), |a, b| a + b)
    }

    /// `Ω^{2-n}·Π Ω_{x/p_i}`, the argument of the Gaussian bracket.
    fn bracket_argument(&self, order: usize) -> Result<ReducedElement> {
        let omega = build_omega(order);
        let mut acc = omega.pow(2 - self.n() as i64)?;
        for f in &self.fibers {
            acc = acc.mul(&omega.scale_legs(&rat(1, f.p)));
        }
        Ok(acc)
    }

    fn gaussian_bracket(&self, e0: &Rational, order: usize) -> Result<HbarSeries> {
        let c = (int(2) * e0).recip();
        pair_gaussian(&c, &self.bracket_argument(order)?)
    }
}

impl fmt::Display for SeifertData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S³({}", self.b)?;
        for (i, fib) in self.fibers.iter().enumerate() {
            write!(f, "{}{}", if i == 0 { "; " } else { ", " }, fib)?;
        }
        write!(f, ")")
    }
}

/// `exp(c·θ/48)` with `θ = 12ħ`.
fn exp_theta48(c: &Rational, order: usize) -> HbarSeries {
    HbarSeries::exp_linear(&(c / int(4)), order)
}

/// `Ẑ(L(p,q)) = ⟨Ω, Ω^{-1}Ω_{x/p}⟩ · exp(-S(q/p)θ/48)`.
pub fn lmo_lens(lens: &LensData, order: usize) -> Result<HbarSeries> {
    let omega = build_omega(order);
    let arg = omega.inv()?.mul(&omega.scale_legs(&rat(1, lens.p)));
    let paired = pair(&omega, &arg)?;
    let s = dedekind_symbol(lens.q, lens.p)?;
    Ok(&paired * &exp_theta48(&-s, order))
}

pub fn e0(m: &SeifertData) -> Rational {
    m.e0()
}

/// `⟨Ω,Ω⟩^{-1}·exp(θ/48·(e0 - 3 sign e0 - Σ S(q_i/p_i)))·⟨exp(s/2e0), Ω^{2-n}ΠΩ_{x/p_i}⟩`.
pub fn lmo_seifert(m: &SeifertData, order: usize) -> Result<HbarSeries> {
    let e0 = m.nonzero_e0()?;
    let rate = &e0 - int(3 * sign(&e0)) - m.dedekind_total();
    let pre = &omega_norm(order).inv()? * &exp_theta48(&rate, order);
    Ok(&pre * &m.gaussian_bracket(&e0, order)?)
}

/// The same invariant with the Casson-Walker invariant factored out:
/// `⟨Ω,Ω⟩^{-1}·exp(λ_w θ/4)·exp(θ/(48 e0)·(n - 2 - Σ 1/p_i²))·⟨…⟩`.
pub fn lmo_seifert_alt(m: &SeifertData, order: usize) -> Result<HbarSeries> {
    let e0 = m.nonzero_e0()?;
    let lw = casson_walker(m)?;
    let rest_rate = (int(m.n() as i64 - 2) - m.inverse_square_total()) / &e0;
    let pre = &(&omega_norm(order).inv()? * &exp_theta48(&(lw * int(12)), order))
        * &exp_theta48(&rest_rate, order);
    Ok(&pre * &m.gaussian_bracket(&e0, order)?)
}

/// `λ_w = (e0 + (2-n)/e0 - 3 sign e0 + Σ (1/(e0 p_i²) - S(q_i/p_i)))/12`.
pub fn casson_walker(m: &SeifertData) -> Result<Rational> {
    let e0 = m.nonzero_e0()?;
    let total = &e0 + int(2 - m.n() as i64) / &e0 - int(3 * sign(&e0)) + m.inverse_square_total() / &e0
        - m.dedekind_total();
    Ok(total / int(12))
}

/// Reads `λ_w` off a series: the `θ`-coefficient is `λ_w/4` and `θ = 12ħ`.
pub fn casson_from_series(z: &HbarSeries) -> Result<Rational> {
    if z.order() < 1 {
        return Err(Error::InvalidArgument("series must have order at least 1".into()));
    }
    Ok(z.coeff(1) / int(3))
}

/// `Z_± = ⟨Ω,Ω⟩^{-1}·exp(∓θ/16)`.
pub fn z_norm(sign: i64, order: usize) -> Result<HbarSeries> {
    if sign.abs() != 1 {
        return Err(Error::InvalidArgument(format!("sign must be ±1, got {sign}")));
    }
    Ok(&omega_norm(order).inv()? * &HbarSeries::exp_linear(&rat(-3 * sign, 4), order))
}

/// `Å_0` of the `f`-framed unknot:
/// `⟨Ω, Ω^{-2}Ω_{x/f}⟩·exp(-(f/48 + 1/(24f))θ)`.
pub fn aarhus0_unknot(f: i64, order: usize) -> Result<HbarSeries> {
    let (closed, integral) = aarhus0_unknot_routes(f, order)?;
    if closed != integral {
        return Err(Error::Inconsistent(format!("framed unknot routes disagree for f = {f}")));
    }
    Ok(closed)
}

/// Both evaluations: the closed pairing form and
/// `⟨Ω,Ω⟩^{-2}·exp(-fθ/48)·∫ Ω² exp(f s/2) dx`.
pub fn aarhus0_unknot_routes(f: i64, order: usize) -> Result<(HbarSeries, HbarSeries)> {
    if f == 0 {
        return Err(Error::ZeroFraming);
    }
    let omega = build_omega(order);
    let arg = omega.pow(-2)?.mul(&omega.scale_legs(&rat(1, f)));
    let rate = -(rat(f, 48) + rat(1, 24 * f)) * int(12);
    let closed = &pair(&omega, &arg)? * &HbarSeries::exp_linear(&rate, order);

    let norm_inv = omega_norm(order).inv()?;
    let integral = &(&(&norm_inv * &norm_inv) * &exp_theta48(&int(-f), order)) * &fgi_1var(&omega.mul(&omega), &int(f))?;
    Ok((closed, integral))
}

/// The hard factor `⟨exp(s/2e0), Ω^{2-n}ΠΩ_{x/p_i}⟩·exp(ħ/(4e0)·(n - 2 - Σ 1/p_i²))`.
pub fn z_rest(m: &SeifertData, order: usize) -> Result<HbarSeries> {
    let e0 = m.nonzero_e0()?;
    let rate = (int(m.n() as i64 - 2) - m.inverse_square_total()) / (int(4) * &e0);
    Ok(&m.gaussian_bracket(&e0, order)? * &HbarSeries::exp_linear(&rate, order))
}

/// The easy factor `(ħ/2)/sinh(ħ/2)·exp(3ħλ_w)`.
pub fn easy_factor(m: &SeifertData, order: usize) -> Result<HbarSeries> {
    let lw = casson_walker(m)?;
    Ok(&omega_norm(order).inv()? * &HbarSeries::exp_linear(&(lw * int(3)), order))
}

/// Recovers `(b, q_i)` of the integral homology sphere with fiber orders
/// `p_i` and `e0 = sign/Π p_i`: `q_i ≡ sign·(P/p_i)^{-1} (mod p_i)`.
pub fn ihs_parameters(ps: &[i64], sign: i64) -> Result<SeifertData> {
    check_ihs_orders(ps, sign)?;
    let big_p: i64 = ps.iter().product();
    let mut fibers = Vec::with_capacity(ps.len());
    let mut acc = 0i64;
    for &p in ps {
        let cof = big_p / p;
        let inv = mod_inverse(cof, p).ok_or_else(|| Error::NotIntegralHomologySphere("orders not coprime".into()))?;
        let q = (sign * inv).rem_euclid(p);
        acc += q * cof;
        fibers.push(Fiber::new(p, q)?);
    }
    let (b, r) = (sign - acc).div_rem(&big_p);
    if r != 0 {
        return Err(Error::Inconsistent("CRT residues do not produce an integer b".into()));
    }
    let m = SeifertData { b, fibers };
    debug_assert_eq!(m.e0(), rat(sign, big_p));
    Ok(m)
}

/// Every `(b, q_i)` with `0 < q_i < p_i` giving `e0 = sign/Π p_i`, found by
/// enumerating all residues.
pub fn ihs_parameters_exhaustive(ps: &[i64], sign: i64) -> Result<Vec<SeifertData>> {
    check_ihs_orders(ps, sign)?;
    let big_p: i64 = ps.iter().try_fold(1i64, |a, &p| a.checked_mul(p)).ok_or(Error::Inconsistent("orders overflow".into()))?;
    // b integral ⇔ Σ q_i·(P/p_i) ≡ sign (mod P); work with residues so the
    // inner loop is an add and a compare.
    let cof: Vec<i64> = ps.iter().map(|p| big_p / p).collect();
    let want = sign.rem_euclid(big_p);
    let mut found = Vec::new();
    let mut qs = vec![0i64; ps.len()];
    #[allow(clippy::too_many_arguments)]
    fn go(i: usize, acc: i64, ps: &[i64], cof: &[i64], big_p: i64, want: i64, qs: &mut Vec<i64>, sign: i64, found: &mut Vec<SeifertData>) {
        if i == ps.len() {
            if acc == want {
                // Σ q_i/p_i + b = sign/P with the exact numerator.
                let num: i128 = qs.iter().zip(cof).map(|(&q, &c)| q as i128 * c as i128).sum();
                let b = (sign as i128 - num) / big_p as i128;
                let fibers = qs.iter().zip(ps).map(|(&q, &p)| Fiber { p, q }).collect();
                found.push(SeifertData { b: b as i64, fibers });
            }
            return;
        }
        let step = cof[i] % big_p;
        let mut a = (acc + step) % big_p;
        for q in 1..ps[i] {
            qs[i] = q;
            go(i + 1, a, ps, cof, big_p, want, qs, sign, found);
            a += step;
            if a >= big_p {
                a -= big_p;
            }
        }
    }
    go(0, 0, ps, &cof, big_p, want, &mut qs, sign, &mut found);
    Ok(found)
}

fn check_ihs_orders(ps: &[i64], sign: i64) -> Result<()> {
    if sign.abs() != 1 {
        return Err(Error::InvalidArgument(format!("sign must be ±1, got {sign}")));
    }
    if let Some(p) = ps.iter().find(|&&p| p < 2) {
        return Err(Error::NotIntegralHomologySphere(format!("fiber order {p} < 2")));
    }
    for (i, &a) in ps.iter().enumerate() {
        for &b in &ps[i + 1..] {
            if a.gcd(&b) != 1 {
                return Err(Error::NotIntegralHomologySphere(format!("{a} and {b} are not coprime")));
            }
        }
    }
    ps.iter()
        .try_fold(1i64, |acc, &p| acc.checked_mul(p))
        .ok_or_else(|| Error::InvalidArgument("product of fiber orders overflows".into()))?;
    Ok(())
}

/// Which lens space matches `S³(b;)` with no exceptional fibers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum UnknotOrientation {
    /// `S³(b;)` agrees with `L(b, 1)`.
    SameP,
    /// `S³(b;)` agrees with `L(-b, 1)`, equivalently `L(b, 1)` under `ħ ↦ -ħ`.
    OppositeP,
    /// Both candidates agree (the series is even).
    Both,
    Neither,
}

/// Compares `lmo_seifert(b; )` with `lmo_lens(b, 1)` and `lmo_lens(-b, 1)`.
pub fn unknot_orientation(b: i64, order: usize) -> Result<UnknotOrientation> {
    let seifert = lmo_seifert(&SeifertData { b, fibers: vec![] }, order)?;
    let same = lmo_lens(&LensData::new(b, 1)?, order)?;
    let opposite = lmo_lens(&LensData::new(-b, 1)?, order)?;
    Ok(match (seifert == same, seifert == opposite) {
        (true, true) => UnknotOrientation::Both,
        (true, false) => UnknotOrientation::SameP,
        (false, true) => UnknotOrientation::OppositeP,
        (false, false) => UnknotOrientation::Neither,
    })
}

/// JSON summary of a Seifert computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct InvariantReport {
    pub series: HbarSeries,
    pub casson_walker: String,
    /// Absent for lens spaces given as `(p, q)`.
    pub e0: Option<String>,
    pub h1_order: String,
}

pub fn seifert_report(m: &SeifertData, order: usize) -> Result<InvariantReport> {
    use crate::exact::rational_to_string;
    Ok(InvariantReport {
        series: lmo_seifert(m, order)?,
        casson_walker: rational_to_string(&casson_walker(m)?),
        e0: Some(rational_to_string(&m.e0())),
        h1_order: rational_to_string(&m.h1_order()),
    })
}

/// Lens spaces are Seifert fibered too; `|H_1| = |p|` and `λ_w` comes from
/// the series.
pub fn lens_report(l: &LensData, order: usize) -> Result<InvariantReport> {
    use crate::exact::rational_to_string;
    let series = lmo_lens(l, order)?;
    let lw = casson_from_series(&series)?;
    Ok(InvariantReport {
        series,
        casson_walker: rational_to_string(&lw),
        e0: None,
        h1_order: rational_to_string(&Rational::from_integer(BigInt::from(l.p.abs()))),
    })
}
