//! The identity suite behind `lmo verify`: every structural identity of the
//! library evaluated exactly (or, for the numeric checks, at a fixed
//! tolerance) and reported as pass/fail.

use std::time::Instant;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::dedekind::{dedekind_sum, dedekind_symbol, dedekind_table, mod_inverse, reciprocity_rhs};
use crate::error::Result;
use crate::exact::{int, rat, HbarSeries, Rational};
use crate::invariants::{
    aarhus0_unknot_routes, casson_from_series, casson_walker, easy_factor, ihs_parameters, ihs_parameters_exhaustive,
    lmo_lens, lmo_seifert, lmo_seifert_alt, unknot_orientation, z_norm, z_rest, LensData, SeifertData,
    UnknotOrientation,
};
use crate::numeric::{dedekind_cotangent, eval_hbar_series, z_rest_quadrature};
use crate::presentation::{cfrac_eval, cfrac_expand, inverse_corners_closed, inverse_corners_solved, leading_minors, symbol_from_cfrac};
use crate::reduced::{
    build_omega, exp_strut, hat, modified_bernoulli, omega_from_wheels, omega_norm, omega_with_caps, pair,
    specific_integral_lhs, specific_integral_rhs, ReducedElement, S_SLACK,
};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub module: &'static str,
    pub name: &'static str,
    /// What the check asserts, in words.
    pub statement: &'static str,
    pub passed: bool,
    pub detail: String,
    /// Wall time since the previous check was recorded.
    pub elapsed_ms: f64,
}

struct Suite {
    order: usize,
    out: Vec<CheckOutcome>,
    last: Instant,
}

impl Suite {
    fn record(&mut self, module: &'static str, name: &'static str, statement: &'static str, r: Result<std::result::Result<String, String>>) {
        let (passed, detail) = match r {
            Ok(Ok(d)) => (true, d),
            Ok(Err(d)) => (false, d),
            Err(e) => (false, format!("error: {e}")),
        };
        let elapsed_ms = self.last.elapsed().as_secs_f64() * 1e3;
        self.out.push(CheckOutcome { module, name, statement, passed, detail, elapsed_ms });
        self.last = Instant::now();
    }
}

fn ok_if(cond: bool, pass: impl Into<String>, fail: impl Into<String>) -> std::result::Result<String, String> {
    if cond {
        Ok(pass.into())
    } else {
        Err(fail.into())
    }
}

/// Deterministic pseudo-random Seifert data with `e0 ≠ 0`.
pub fn random_seifert_instances(seed: u64, count: usize, positive_e0: bool) -> Vec<SeifertData> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let b = rng.gen_range(-3..=3);
        let n = rng.gen_range(0..=4);
        let fibers: Vec<(i64, i64)> = (0..n)
            .map(|_| {
                let p = rng.gen_range(2..=7i64);
                loop {
                    let q = rng.gen_range(1..p);
                    if q.gcd(&p) == 1 {
                        break (p, q);
                    }
                }
            })
            .collect();
        let m = SeifertData::new(b, &fibers).expect("generated fibers are valid");
        let e0 = m.e0();
        if e0.is_zero() || (positive_e0 && !e0.is_positive()) {
            continue;
        }
        out.push(m);
    }
    out
}

/// `sinh(ħ/2)/(ħ/2)` from the exponential series.
pub fn sinhc_series(order: usize) -> HbarSeries {
    HbarSeries::from_fn(order, |k| {
        if k % 2 == 1 {
            Rational::zero()
        } else {
            let mut d = num_bigint::BigInt::one();
            for j in 1..=k + 1 {
                d *= j;
            }
            Rational::new(num_bigint::BigInt::one(), d * num_bigint::BigInt::from(2).pow(k as u32))
        }
    })
}

pub fn run_all(order: usize) -> Vec<CheckOutcome> {
    let mut s = Suite { order, out: Vec::new(), last: Instant::now() };
    exact_checks(&mut s);
    reduced_checks(&mut s);
    dedekind_checks(&mut s);
    presentation_checks(&mut s);
    invariant_checks(&mut s);
    numeric_checks(&mut s);
    s.out
}

fn exact_checks(s: &mut Suite) {
    let d = s.order;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut rand_series = |c0: i64| {
        HbarSeries::from_fn(d, |k| if k == 0 { int(c0) } else { rat(rng.gen_range(-9..=9), rng.gen_range(1..=9)) })
    };
    let triples: Vec<_> = (0..5).map(|_| (rand_series(1), rand_series(2), rand_series(-3))).collect();
    s.record(
        "exact-core",
        "ring axioms",
        "associativity and distributivity of truncated series",
        Ok(ok_if(
            triples.iter().all(|(a, b, c)| &(a * b) * c == a * &(b * c) && a * &(b + c) == &(a * b) + &(a * c)),
            "5 random triples",
            "ring axiom violated",
        )),
    );
    let admissible: Vec<_> = (0..5).map(|_| rand_series(0)).collect();
    s.record(
        "exact-core",
        "exp/log inverse",
        "log(exp(a)) = a and a·a⁻¹ = 1",
        (|| {
            for a in &admissible {
                if &a.exp()?.log()? != a {
                    return Ok(Err("log∘exp differs".into()));
                }
                let u = a.exp()?;
                if !(&u * &u.inv()?).is_one() {
                    return Ok(Err("inverse failed".into()));
                }
            }
            Ok(Ok("5 random series".into()))
        })(),
    );
}

fn reduced_checks(s: &mut Suite) {
    let d = s.order;
    let omega = build_omega(d);
    let wide = omega_with_caps(d + S_SLACK, d);

    s.record(
        "reduced-algebra",
        "modified Bernoulli numbers",
        "b2 = 1/48, b4 = -1/5760, b6 = 1/362880",
        modified_bernoulli(3).map(|b| {
            ok_if(
                b.b(1) == &rat(1, 48) && b.b(2) == &rat(-1, 5760) && b.b(3) == &rat(1, 362880),
                "exact",
                format!("{:?}", b.values()),
            )
        }),
    );
    s.record(
        "reduced-algebra",
        "wheels element",
        "closed form of Ω equals exp of Bernoulli-weighted wheels",
        omega_from_wheels(d).map(|w| ok_if(w == omega, "agree", "differ")),
    );
    s.record(
        "reduced-algebra",
        "hbar-domination",
        "Ω, Ω⁻¹ and leg scalings of Ω are ħ-dominated",
        omega.inv().map(|oi| {
            ok_if(
                omega.is_hbar_dominated() && oi.is_hbar_dominated() && omega.scale_legs(&rat(3, 5)).is_hbar_dominated(),
                "all dominated",
                "domination fails",
            )
        }),
    );
    s.record(
        "reduced-algebra",
        "pairing of Ω with itself",
        "⟨Ω,Ω⟩ = sinh(ħ/2)/(ħ/2)",
        pair(&omega, &omega).map(|p| ok_if(p == sinhc_series(d), "exact", p.to_string())),
    );
    s.record(
        "reduced-algebra",
        "pairing symmetry",
        "⟨a,b⟩ = ⟨b,a⟩",
        (|| {
            let a = omega.inv()?.mul(&omega.scale_legs(&rat(1, 3)));
            let b = exp_strut(&rat(-2, 7), d, d);
            Ok(ok_if(pair(&a, &b)? == pair(&b, &a)? && pair(&a, &omega)? == pair(&omega, &a)?, "symmetric", "asymmetric"))
        })(),
    );
    s.record(
        "reduced-algebra",
        "pseudo-linearity",
        "glue_strut^k(Ω) = (ħ/2)^k Ω for k ≤ order",
        (|| {
            let mut g = wide.clone();
            for k in 1..=d {
                g = g.glue_strut()?;
                let half_k = HbarSeries::monomial(rat(1, 2).pow(k as i32), k, d);
                if g != wide.truncate(g.s_cap(), d).scale_series(&half_k)? {
                    return Ok(Err(format!("fails at k = {k}")));
                }
            }
            Ok(Ok(format!("k = 1..{d}")))
        })(),
    );
    s.record(
        "reduced-algebra",
        "exponential of a strut derivative",
        "Σ (α/2)^k/k! glue^k(Ω) = exp(αħ/4) Ω",
        (|| {
            for alpha in [int(1), int(-1), int(2), rat(1, 3)] {
                let mut g = wide.clone();
                let mut acc = ReducedElement::zero(d + S_SLACK - d, d);
                let mut w = Rational::one();
                for k in 0..=d {
                    acc = acc.checked_add(&g.truncate(S_SLACK, d).scale(&w))?;
                    w = w * &alpha / int(2) / int(k as i64 + 1);
                    if k < d {
                        g = g.glue_strut()?;
                    }
                }
                let rhs = wide.truncate(S_SLACK, d).scale_series(&HbarSeries::exp_linear(&(&alpha / int(4)), d))?;
                if acc != rhs {
                    return Ok(Err(format!("fails for α = {alpha}")));
                }
            }
            Ok(Ok("α ∈ {1, -1, 2, 1/3}".into()))
        })(),
    );
    s.record(
        "reduced-algebra",
        "multiplicativity",
        "⟨s^(j+k),Ω⟩ = ⟨s^j,Ω⟩⟨s^k,Ω⟩",
        (|| {
            let sp = |m: usize| ReducedElement::monomial(int(1), m, 0, d, d);
            for j in 0..=d {
                for k in 0..=d - j {
                    let lhs = pair(&sp(j + k), &omega)?;
                    let rhs = &pair(&sp(j), &omega)? * &pair(&sp(k), &omega)?;
                    if lhs != rhs || lhs != HbarSeries::monomial(rat(1, 2).pow((j + k) as i32), j + k, d) {
                        return Ok(Err(format!("fails at j={j}, k={k}")));
                    }
                }
            }
            Ok(Ok(format!("j + k ≤ {d}")))
        })(),
    );
    s.record(
        "reduced-algebra",
        "wheeled unknot",
        "hat(Ω⁻¹, Ω) = ⟨Ω,Ω⟩⁻¹ Ω",
        (|| {
            let lhs = hat(&omega.inv()?, &wide)?;
            let rhs = wide.truncate(lhs.s_cap(), d).scale_series(&omega_norm(d).inv()?)?;
            Ok(ok_if(lhs == rhs, "exact", "differ"))
        })(),
    );
    s.record(
        "reduced-algebra",
        "Gaussian derivative",
        "hat(Ω, exp(s/2)) = exp(ħ/4) Ω exp(s/2) on the valid window",
        (|| {
            let e = exp_strut(&rat(1, 2), d + S_SLACK, d);
            let lhs = hat(&omega, &e)?;
            let rhs = wide.mul(&e).truncate(lhs.s_cap(), d).scale_series(&HbarSeries::exp_linear(&rat(1, 4), d))?;
            Ok(ok_if(lhs == rhs, format!("window s ≤ {}, ħ ≤ {d}", lhs.s_cap()), "differ"))
        })(),
    );
    s.record(
        "reduced-algebra",
        "one specific integral",
        "∫Ω_αΩ_β exp(γs/2) = exp(-(α²+β²)θ/48γ)⟨Ω,Ω_{αβ/γ}⟩",
        (|| {
            let triples = [
                (int(1), int(1), int(2)),
                (int(1), rat(1, 3), rat(5, 3)),
                (int(2), int(3), int(7)),
                (int(1), int(1), int(-1)),
                (rat(-1, 2), rat(4, 3), rat(-3, 5)),
            ];
            for (a, b, g) in &triples {
                if specific_integral_lhs(a, b, g, d)? != specific_integral_rhs(a, b, g, d)? {
                    return Ok(Err(format!("fails at ({a}, {b}; {g})")));
                }
            }
            Ok(Ok(format!("{} triples", triples.len())))
        })(),
    );
}

fn dedekind_checks(s: &mut Suite) {
    s.record(
        "dedekind",
        "datum",
        "S(4/25) = S(9/25) = 48/25",
        (|| Ok(ok_if(dedekind_symbol(4, 25)? == rat(48, 25) && dedekind_symbol(9, 25)? == rat(48, 25), "exact", "differ")))(),
    );
    s.record(
        "dedekind",
        "reciprocity",
        "S(p/q) + S(q/p) = p/q + q/p + 1/pq - 3 sign(pq), with antisymmetry and periodicity",
        (|| {
            let mut count = 0;
            for p in -60i64..=60 {
                for q in -60i64..=60 {
                    if p == 0 || q == 0 || p.gcd(&q) != 1 {
                        continue;
                    }
                    let spq = dedekind_symbol(p, q)?;
                    if spq.clone() + dedekind_symbol(q, p)? != reciprocity_rhs(p, q) {
                        return Ok(Err(format!("reciprocity fails at {p}/{q}")));
                    }
                    if dedekind_symbol(-p, q)? != -spq.clone() || dedekind_symbol(p + q, q)? != spq {
                        return Ok(Err(format!("antisymmetry/periodicity fails at {p}/{q}")));
                    }
                    count += 1;
                }
            }
            Ok(Ok(format!("{count} pairs")))
        })(),
    );
    s.record(
        "dedekind",
        "inverse symmetry",
        "S(q/p) = S(q'/p) when qq' ≡ 1 mod p",
        (|| {
            for p in 2i64..=40 {
                for q in 1..p {
                    if let Some(qi) = mod_inverse(q, p) {
                        if dedekind_symbol(q, p)? != dedekind_symbol(qi, p)? {
                            return Ok(Err(format!("fails at {q}/{p}")));
                        }
                    }
                }
            }
            Ok(Ok("2 ≤ p ≤ 40".into()))
        })(),
    );
    s.record(
        "dedekind",
        "table integrality",
        "q·S(p/q) ∈ ℤ for q ≤ 65",
        dedekind_table(65).map(|t| Ok(format!("{} entries", t.len()))),
    );
}

fn presentation_checks(s: &mut Suite) {
    s.record(
        "presentation",
        "matrix route to S",
        "S(p/q) = 3ς - τ + (p+v)/q with det Λ = q and the inverse corners",
        (|| {
            let mut count = 0;
            for p in -40i64..=40 {
                for q in -40i64..=40 {
                    if q == 0 || p.gcd(&q) != 1 {
                        continue;
                    }
                    let c = cfrac_expand(p, q)?;
                    let m = cfrac_eval(&c.a)?;
                    if rat(m.p, m.q) != rat(p, q) || c.det != m.q || *leading_minors(&c.a).last().unwrap() != m.q {
                        return Ok(Err(format!("round trip or det fails at {p}/{q}")));
                    }
                    let closed = inverse_corners_closed(&c.a)?;
                    if closed != inverse_corners_solved(&c.a)? {
                        return Ok(Err(format!("corners disagree at {p}/{q}")));
                    }
                    if symbol_from_cfrac(&c) != dedekind_symbol(p, q)? {
                        return Ok(Err(format!("symbol mismatch at {p}/{q}")));
                    }
                    let bits = 64 - q.unsigned_abs().leading_zeros() as usize;
                    if c.len() > 2 * bits + 2 {
                        return Ok(Err(format!("expansion too long at {p}/{q}")));
                    }
                    count += 1;
                }
            }
            Ok(Ok(format!("{count} fractions")))
        })(),
    );
}

fn invariant_checks(s: &mut Suite) {
    let d = s.order;
    s.record(
        "invariants",
        "lens periodicity and inverse symmetry",
        "Z(L(p,q)) = Z(L(p,q+p)) = Z(L(p,q')) for qq' ≡ 1 mod p",
        (|| {
            for p in 2i64..=25 {
                for q in 1..p {
                    if q.gcd(&p) != 1 {
                        continue;
                    }
                    let z = lmo_lens(&LensData::new(p, q)?, d)?;
                    if p <= 12 && z != lmo_lens(&LensData::new(p, q + p)?, d)? {
                        return Ok(Err(format!("periodicity fails at L({p},{q})")));
                    }
                    let qi = mod_inverse(q, p).unwrap();
                    if z != lmo_lens(&LensData::new(p, qi)?, d)? {
                        return Ok(Err(format!("inverse symmetry fails at L({p},{q})")));
                    }
                }
            }
            Ok(Ok("p ≤ 25".into()))
        })(),
    );
    s.record(
        "invariants",
        "lens non-separation",
        "Z(L(25,4)) = Z(L(25,9)) while Z(L(25,·)) is not constant",
        (|| {
            let a = lmo_lens(&LensData::new(25, 4)?, d)?;
            let b = lmo_lens(&LensData::new(25, 9)?, d)?;
            let c = lmo_lens(&LensData::new(25, 1)?, d)?;
            Ok(ok_if(a == b && a != c && lmo_lens(&LensData::new(1, 7)?, d)?.is_one(), "exact", "differ"))
        })(),
    );
    let sweep = random_seifert_instances(2024, 20, false);
    s.record(
        "invariants",
        "Seifert alternate form",
        "Z(M) computed directly equals the Casson-Walker factored form",
        (|| {
            for m in &sweep {
                if lmo_seifert(m, d)? != lmo_seifert_alt(m, d)? {
                    return Ok(Err(format!("differ for {m}")));
                }
            }
            Ok(Ok(format!("{} instances", sweep.len())))
        })(),
    );
    s.record(
        "invariants",
        "Casson-Walker from the series",
        "(ħ¹-coefficient)/3 = λ_w, constant term 1",
        (|| {
            for m in &sweep {
                let z = lmo_seifert(m, d)?;
                if casson_from_series(&z)? != casson_walker(m)? || !z.coeff(0).is_one() {
                    return Ok(Err(format!("differ for {m}")));
                }
            }
            Ok(Ok(format!("{} instances", sweep.len())))
        })(),
    );
    s.record(
        "invariants",
        "rest factor",
        "Z = easy factor · Z^rest, and Z^rest has no ħ¹ term",
        (|| {
            for m in &sweep {
                let r = z_rest(m, d)?;
                if !r.coeff(1).is_zero() || &easy_factor(m, d)? * &r != lmo_seifert(m, d)? {
                    return Ok(Err(format!("fails for {m}")));
                }
            }
            Ok(Ok(format!("{} instances", sweep.len())))
        })(),
    );
    s.record(
        "invariants",
        "spheres with at most two fibers",
        "Z^rest = sinh(ħ/2)/(ħ/2) for integral homology spheres with n ≤ 2",
        (|| {
            let target = sinhc_series(d);
            let mut cases = 0;
            for ps in [vec![], vec![2], vec![3], vec![2, 3], vec![2, 5], vec![3, 4], vec![5, 7]] {
                for sign in [1, -1] {
                    let m = ihs_parameters(&ps, sign)?;
                    if z_rest(&m, d)? != target || !lmo_seifert(&m, d)?.is_one() {
                        return Ok(Err(format!("fails for {m}")));
                    }
                    cases += 1;
                }
            }
            Ok(Ok(format!("{cases} presentations")))
        })(),
    );
    s.record(
        "invariants",
        "normalizations",
        "Å0 of the ±1-framed unknot = ⟨Ω,Ω⟩⁻¹ exp(∓θ/16), both routes",
        (|| {
            for sign in [1, -1] {
                let (closed, integral) = aarhus0_unknot_routes(sign, d)?;
                if closed != integral || closed != z_norm(sign, d)? {
                    return Ok(Err(format!("fails for sign {sign}")));
                }
            }
            for f in [2, -3, 5] {
                let (closed, integral) = aarhus0_unknot_routes(f, d)?;
                if closed != integral {
                    return Ok(Err(format!("routes differ for framing {f}")));
                }
            }
            Ok(Ok("f ∈ {±1, 2, -3, 5}".into()))
        })(),
    );
    s.record(
        "invariants",
        "integral homology sphere parameters",
        "CRT solution is the unique one found by exhaustion",
        (|| {
            let m = ihs_parameters(&[2, 3, 5], 1)?;
            if m != SeifertData::new(-1, &[(2, 1), (3, 1), (5, 1)])? {
                return Ok(Err(format!("(2,3,5) gave {m}")));
            }
            let mut cases = 0;
            for ps in ihs_order_tuples(10_000) {
                for sign in [1, -1] {
                    let all = ihs_parameters_exhaustive(&ps, sign)?;
                    if all.len() != 1 || all[0] != ihs_parameters(&ps, sign)? {
                        return Ok(Err(format!("not unique for {ps:?}")));
                    }
                    cases += 1;
                }
            }
            Ok(Ok(format!("{cases} order tuples")))
        })(),
    );
    s.record(
        "invariants",
        "unknot orientation",
        "S³(b;) matches L(-b,1) (diagnostic)",
        (|| {
            // L(±2,1) is amphichiral, so both candidates agree there.
            for (b, want) in [(2, UnknotOrientation::Both), (3, UnknotOrientation::OppositeP), (5, UnknotOrientation::OppositeP), (-4, UnknotOrientation::OppositeP)] {
                let o = unknot_orientation(b, d)?;
                if o != want {
                    return Ok(Err(format!("b = {b}: {o:?}")));
                }
            }
            Ok(Ok("b ∈ {2, 3, 5, -4}".into()))
        })(),
    );
}

/// Sorted tuples of pairwise coprime orders `2 ≤ p_1 < p_2 < …` with
/// product at most `limit`, including the empty tuple.
pub fn ihs_order_tuples(limit: i64) -> Vec<Vec<i64>> {
    fn go(start: i64, prod: i64, limit: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        out.push(cur.clone());
        let mut p = start;
        while prod * p <= limit {
            if cur.iter().all(|&x| x.gcd(&p) == 1) {
                cur.push(p);
                go(p + 1, prod * p, limit, cur, out);
                cur.pop();
            }
            p += 1;
        }
    }
    let mut out = Vec::new();
    go(2, 1, limit, &mut Vec::new(), &mut out);
    out
}

fn numeric_checks(s: &mut Suite) {
    s.record(
        "numeric-check",
        "cotangent form",
        "|cotangent sum - s(p,q)| < 1e-9",
        (|| {
            let mut worst = 0.0f64;
            for p in -50i64..=50 {
                for q in -50i64..=50 {
                    if q == 0 || p.gcd(&q) != 1 {
                        continue;
                    }
                    let exact = crate::exact::rational_to_f64(&dedekind_sum(p, q)?);
                    worst = worst.max((dedekind_cotangent(p, q)?.value - exact).abs());
                }
            }
            Ok(ok_if(worst < 1e-9, format!("max error {worst:.2e}"), format!("max error {worst:.2e}")))
        })(),
    );
    s.record(
        "numeric-check",
        "Gaussian integral form of the rest",
        "|quadrature - series| < 1e-6 at ħ = 0.1",
        (|| {
            let mut worst = 0.0f64;
            for m in quadrature_instances() {
                let q = z_rest_quadrature(&m, 0.1, 1e-9)?;
                let z = eval_hbar_series(&z_rest(&m, 12)?, 0.1);
                worst = worst.max((q.value - z.value).abs());
            }
            Ok(ok_if(worst < 1e-6, format!("max difference {worst:.2e}"), format!("max difference {worst:.2e}")))
        })(),
    );
    s.record(
        "numeric-check",
        "series error estimates",
        "the tail estimate shrinks as the order grows",
        (|| {
            for m in quadrature_instances() {
                let errs: Vec<f64> =
                    [6, 8, 10, 12].iter().map(|&o| z_rest(&m, o).map(|z| eval_hbar_series(&z, 0.1).est_error)).collect::<Result<_>>()?;
                if errs.windows(2).any(|w| w[1] > w[0]) {
                    return Ok(Err(format!("not monotone for {m}: {errs:?}")));
                }
            }
            Ok(Ok("orders 6, 8, 10, 12".into()))
        })(),
    );
}

/// Seifert spaces with `e0 > 0` used for the quadrature comparison.
pub fn quadrature_instances() -> Vec<SeifertData> {
    [
        (1, vec![]),
        (1, vec![(2, 1)]),
        (0, vec![(2, 1), (3, 1), (5, 1)]),
        (2, vec![(3, 2)]),
        (1, vec![(2, 1), (3, 1), (5, 2)]),
    ]
    .into_iter()
    .map(|(b, f)| SeifertData::new(b, &f).expect("valid"))
    .collect()
}
