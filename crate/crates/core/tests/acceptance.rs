//! One line per acceptance criterion; exits nonzero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_integer::Integer;
use num_traits::{One, Zero};

use lmo_core::dedekind::{dedekind_sum, dedekind_symbol, dedekind_table, reciprocity_rhs};
use lmo_core::exact::{int, rat, HbarSeries, Rational};
use lmo_core::invariants::{
    aarhus0_unknot, casson_from_series, casson_walker, ihs_parameters, ihs_parameters_exhaustive, lmo_lens, lmo_seifert,
    lmo_seifert_alt, z_rest, LensData, SeifertData,
};
use lmo_core::numeric::{dedekind_cotangent, eval_hbar_series, z_rest_quadrature};
use lmo_core::presentation::{cfrac_eval, cfrac_expand, dedekind_via_surgery, inverse_corners_closed, inverse_corners_solved};
use lmo_core::reduced::{
    build_omega, exp_strut, hat, modified_bernoulli, omega_with_caps, pair, specific_integral_lhs, specific_integral_rhs,
    ReducedElement, S_SLACK,
};
use lmo_core::verify::{ihs_order_tuples, quadrature_instances, random_seifert_instances};

const D: usize = 10;

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fact(n: usize) -> Rational {
    (1..=n as i64).fold(Rational::one(), |a, k| a * int(k))
}

/// sinh(ħ/2)/(ħ/2) = Σ ħ^{2k}/(4^k (2k+1)!), coefficient by coefficient.
fn sinhc(order: usize) -> HbarSeries {
    HbarSeries::from_fn(order, |n| {
        if n % 2 == 1 {
            return Rational::zero();
        }
        Rational::one() / (fact(n + 1) * int(2).pow(n as i32))
    })
}

/// Classical Bernoulli numbers from Σ_{k<m+1} C(m+1,k) B_k = 0.
fn bernoulli(n: usize) -> Vec<Rational> {
    let mut b = vec![Rational::one()];
    for m in 1..=n {
        let mut acc = Rational::zero();
        let mut binom = Rational::one(); // C(m+1, k)
        for (k, bk) in b.iter().enumerate() {
            acc += &binom * bk;
            binom = binom * int((m + 1 - k) as i64) / int(k as i64 + 1);
        }
        b.push(-acc / int(m as i64 + 1));
    }
    b
}

fn c1_dedekind_datum() -> Outcome {
    let a = dedekind_symbol(4, 25).map_err(|e| e.to_string())?;
    let b = dedekind_symbol(9, 25).map_err(|e| e.to_string())?;
    check(a == rat(48, 25) && b == rat(48, 25), || format!("S(4/25) = {a}, S(9/25) = {b}"))?;
    Ok("S(4/25) = S(9/25) = 48/25".into())
}

fn c2_dedekind_laws() -> Outcome {
    let e = |e: lmo_core::Error| e.to_string();
    let mut pairs = 0;
    for p in -60i64..=60 {
        for q in -60i64..=60 {
            if p == 0 || q == 0 || p.gcd(&q) != 1 {
                continue;
            }
            let s = dedekind_symbol(p, q).map_err(e)?;
            let lhs = &s + dedekind_symbol(q, p).map_err(e)?;
            check(lhs == reciprocity_rhs(p, q), || format!("reciprocity at {p}/{q}"))?;
            check(dedekind_symbol(-p, q).map_err(e)? == -&s, || format!("antisymmetry at {p}/{q}"))?;
            check(dedekind_symbol(p + q, q).map_err(e)? == s, || format!("periodicity at {p}/{q}"))?;
            pairs += 1;
        }
    }
    let mut cot = 0;
    for p in -50i64..=50 {
        for q in -50i64..=50 {
            if q == 0 || p.gcd(&q) != 1 {
                continue;
            }
            let exact = lmo_core::exact::rational_to_f64(&dedekind_sum(p, q).map_err(e)?);
            let c = dedekind_cotangent(p, q).map_err(e)?.value;
            check((exact - c).abs() < 1e-9, || format!("cotangent form at {p}/{q}: {c} vs {exact}"))?;
            cot += 1;
        }
    }
    let table = dedekind_table(65).map_err(e)?;
    for r in &table {
        check(int(r.q_s) == dedekind_symbol(r.p, r.q).map_err(e)? * int(r.q), || format!("table at {}/{}", r.p, r.q))?;
    }
    Ok(format!("{pairs} pairs exact, {cot} cotangent, {} table rows", table.len()))
}

fn c3_matrix_route() -> Outcome {
    let e = |e: lmo_core::Error| e.to_string();
    let mut n = 0;
    for p in -40i64..=40 {
        for q in -40i64..=40 {
            if q == 0 || p.gcd(&q) != 1 {
                continue;
            }
            check(dedekind_via_surgery(p, q).map_err(e)? == dedekind_symbol(p, q).map_err(e)?, || format!("S at {p}/{q}"))?;
            let c = cfrac_expand(p, q).map_err(e)?;
            let m = cfrac_eval(&c.a).map_err(e)?;
            check(rat(m.p, m.q) == rat(p, q), || format!("round trip at {p}/{q}"))?;
            check(c.det == m.q, || format!("det at {p}/{q}"))?;
            let l = c.a.len() as i32;
            let closed = inverse_corners_closed(&c.a).map_err(e)?;
            let solved = inverse_corners_solved(&c.a).map_err(e)?;
            check(closed == solved, || format!("closed vs solved corners at {p}/{q}"))?;
            check(solved.l11 == rat(-m.p, m.q), || format!("l11 at {p}/{q}"))?;
            check(solved.l1l == rat((-1i64).pow((l + 1) as u32), m.q), || format!("l1l at {p}/{q}"))?;
            check(solved.lll == rat(-m.v, m.q), || format!("lll at {p}/{q}"))?;
            let bits = 64 - q.unsigned_abs().leading_zeros() as usize;
            check(c.a.len() <= 2 * bits + 2, || format!("length at {p}/{q}"))?;
            n += 1;
        }
    }
    Ok(format!("{n} fractions"))
}

fn c4_bernoulli() -> Outcome {
    let b = modified_bernoulli(4).map_err(|e| e.to_string())?;
    check(b.b(1) == &rat(1, 48) && b.b(2) == &rat(-1, 5760), || format!("{:?}", b.values()))?;
    // Oracle: b_{2n} = B_{2n} / (4n (2n)!)
    let big = bernoulli(8);
    for n in 1..=4usize {
        let want = &big[2 * n] / (int(4 * n as i64) * fact(2 * n));
        check(b.b(n) == &want, || format!("b_{} = {} but oracle gives {want}", 2 * n, b.b(n)))?;
    }
    check(b.b(3) == &rat(1, 362880), || "b6".into())?;
    Ok("b2 = 1/48, b4 = -1/5760, b6 = 1/362880".into())
}

fn c5_algebra() -> Outcome {
    let e = |e: lmo_core::Error| e.to_string();
    let omega = build_omega(D);
    let wide = omega_with_caps(D + S_SLACK, D);

    let mut g = wide.clone();
    for k in 1..=D {
        g = g.glue_strut().map_err(e)?;
        let half_k = HbarSeries::monomial(rat(1, 2).pow(k as i32), k, D);
        check(g == wide.truncate(g.s_cap(), D).scale_series(&half_k).map_err(e)?, || format!("glue^{k}"))?;
    }

    for alpha in [int(1), int(-1), int(2), rat(1, 3)] {
        let mut g = wide.clone();
        let mut acc = ReducedElement::zero(S_SLACK, D);
        let mut w = Rational::one();
        for k in 0..=D {
            acc = acc.checked_add(&g.truncate(S_SLACK, D).scale(&w)).map_err(e)?;
            w = w * &alpha / int(2) / int(k as i64 + 1);
            if k < D {
                g = g.glue_strut().map_err(e)?;
            }
        }
        let rhs = wide.truncate(S_SLACK, D).scale_series(&HbarSeries::exp_linear(&(&alpha / int(4)), D)).map_err(e)?;
        check(acc == rhs, || format!("exp of strut derivative at α = {alpha}"))?;
    }

    let es = exp_strut(&rat(1, 2), D + S_SLACK, D);
    let lhs = hat(&omega, &es).map_err(e)?;
    let rhs = wide.mul(&es).truncate(lhs.s_cap(), D).scale_series(&HbarSeries::exp_linear(&rat(1, 4), D)).map_err(e)?;
    check(lhs.s_cap() > 0 && lhs == rhs, || "hat(Ω, exp(s/2))".into())?;

    let norm = pair(&omega, &omega).map_err(e)?;
    check(norm == sinhc(D), || format!("⟨Ω,Ω⟩ = {norm}"))?;
    let lhs = hat(&omega.inv().map_err(e)?, &wide).map_err(e)?;
    let rhs = wide.truncate(lhs.s_cap(), D).scale_series(&norm.inv().map_err(e)?).map_err(e)?;
    check(lhs == rhs, || "hat(Ω⁻¹, Ω)".into())?;
    Ok(format!("window s ≤ {S_SLACK}, ħ ≤ {D}"))
}

fn c6_specific_integral() -> Outcome {
    let e = |e: lmo_core::Error| e.to_string();
    let triples = [(int(1), int(1), int(2)), (int(1), rat(1, 3), rat(5, 3)), (int(2), int(3), int(7)), (int(1), int(1), int(-1))];
    for (a, b, g) in &triples {
        let l = specific_integral_lhs(a, b, g, D).map_err(e)?;
        let r = specific_integral_rhs(a, b, g, D).map_err(e)?;
        check(l.order() == D && l == r, || format!("({a}, {b}, {g}): {l} vs {r}"))?;
    }
    Ok("4 triples through ħ^10".into())
}

fn c7_normalizations() -> Outcome {
    let e = |e: lmo_core::Error| e.to_string();
    let inv_norm = sinhc(D).inv().map_err(e)?;
    for f in [1i64, -1] {
        let want = &inv_norm * &HbarSeries::exp_linear(&rat(-3 * f, 4), D);
        let got = aarhus0_unknot(f, D).map_err(e)?;
        check(got == want, || format!("f = {f}: {got}"))?;
    }
    Ok("f = ±1".into())
}

fn c8_lens() -> Outcome {
    let e = |e: lmo_core::Error| e.to_string();
    let lens = |p, q| LensData::new(p, q).and_then(|l| lmo_lens(&l, D)).map_err(e);
    for q in -5..=5 {
        check(lens(1, q)?.is_one(), || format!("L(1,{q})"))?;
    }
    check(lens(25, 4)? == lens(25, 9)?, || "L(25,4) vs L(25,9)".into())?;
    let mut n = 0;
    for p in 1i64..=12 {
        for q in -2 * p..=2 * p {
            if q.gcd(&p) == 1 {
                check(lens(p, q)? == lens(p, q + p)?, || format!("L({p},{q}) periodicity"))?;
                n += 1;
            }
        }
    }
    Ok(format!("{n} periodicity pairs"))
}

fn c9_seifert() -> Outcome {
    let e = |e: lmo_core::Error| e.to_string();
    let sweep = random_seifert_instances(2024, 20, false);
    check(sweep.len() == 20, || "sweep size".into())?;
    for m in &sweep {
        let z = lmo_seifert(m, D).map_err(e)?;
        check(z == lmo_seifert_alt(m, D).map_err(e)?, || format!("alternate form at {m}"))?;
        check(casson_from_series(&z).map_err(e)? == casson_walker(m).map_err(e)?, || format!("Casson-Walker at {m}"))?;
        check(z_rest(m, D).map_err(e)?.coeff(1).is_zero(), || format!("ħ¹ of rest at {m}"))?;
    }
    Ok("20 random instances".into())
}

fn c10_small_n() -> Outcome {
    let e = |e: lmo_core::Error| e.to_string();
    for m in [SeifertData::new(1, &[]), SeifertData::new(-1, &[(2, 1), (3, 1)])] {
        let m = m.map_err(e)?;
        check(z_rest(&m, D).map_err(e)? == sinhc(D), || format!("rest of {m}"))?;
    }
    Ok("S³(1;) and S³(-1; 2/1, 3/1)".into())
}

fn c11_quadrature() -> Outcome {
    let e = |e: lmo_core::Error| e.to_string();
    let ms = quadrature_instances();
    check(ms.len() == 5, || "five instances".into())?;
    let mut worst = 0.0f64;
    for m in &ms {
        check(m.e0() > Rational::zero(), || format!("e0 of {m}"))?;
        let q = z_rest_quadrature(m, 0.1, 1e-9).map_err(e)?;
        let s = eval_hbar_series(&z_rest(m, 12).map_err(e)?, 0.1);
        let d = (q.value - s.value).abs();
        worst = worst.max(d);
        check(d < 1e-6, || format!("{m}: {} vs {}", q.value, s.value))?;
    }
    Ok(format!("max difference {worst:.1e}"))
}

fn c12_ihs() -> Outcome {
    let e = |e: lmo_core::Error| e.to_string();
    let m = ihs_parameters(&[2, 3, 5], 1).map_err(e)?;
    check(m == SeifertData::new(-1, &[(2, 1), (3, 1), (5, 1)]).map_err(e)?, || format!("(2,3,5) gave {m}"))?;
    let tuples = ihs_order_tuples(10_000);
    for ps in &tuples {
        for sign in [1, -1] {
            let all = ihs_parameters_exhaustive(ps, sign).map_err(e)?;
            check(all.len() == 1 && all[0] == ihs_parameters(ps, sign).map_err(e)?, || format!("{ps:?} sign {sign}: {} solutions", all.len()))?;
        }
    }
    Ok(format!("{} order tuples, both signs", tuples.len()))
}

fn main() -> ExitCode {
    type Crit = (u32, &'static str, Option<Duration>, fn() -> Outcome);
    let criteria: [Crit; 12] = [
        (1, "Dedekind datum", Some(Duration::from_millis(1)), c1_dedekind_datum),
        (2, "Dedekind reciprocity, antisymmetry, periodicity, cotangent, table", Some(Duration::from_secs(5)), c2_dedekind_laws),
        (3, "matrix route to S with corners", Some(Duration::from_secs(10)), c3_matrix_route),
        (4, "modified Bernoulli numbers", None, c4_bernoulli),
        (5, "reduced-algebra identities", Some(Duration::from_secs(5)), c5_algebra),
        (6, "specific Gaussian integral", Some(Duration::from_secs(5)), c6_specific_integral),
        (7, "unknot normalizations", None, c7_normalizations),
        (8, "lens spaces", None, c8_lens),
        (9, "Seifert sweep", None, c9_seifert),
        (10, "rest factor with at most two fibers", None, c10_small_n),
        (11, "quadrature against series", Some(Duration::from_secs(30)), c11_quadrature),
        (12, "integral homology sphere parameters", None, c12_ihs),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (n, name, limit, f) in criteria {
        let t = Instant::now();
        let r = f();
        let dt = t.elapsed();
        let r = match (r, limit) {
            (Ok(_), Some(l)) if dt > l => Err(format!("took {dt:?}, limit {l:?}")),
            (r, _) => r,
        };
        let (tag, detail) = match r {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("{tag} criterion {n:>2}: {name} — {detail} [{:.3}s]", dt.as_secs_f64());
    }
    let total = start.elapsed();
    if total > Duration::from_secs(120) {
        failed += 1;
        println!("FAIL total runtime {total:?} exceeds 2 minutes");
    }
    println!("{} of 12 criteria passed in {:.1}s", 12 - failed.min(12), total.as_secs_f64());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
