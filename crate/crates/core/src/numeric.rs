//! Double precision sanity checks for the exact results: series evaluation,
//! the cotangent form of the Dedekind sum, and the Gaussian integral form of
//! `Z^rest`.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{rational_to_f64, HbarSeries};
use crate::invariants::SeifertData;

/// A floating point value with a non-negative error estimate.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FloatResult {
    pub value: f64,
    pub est_error: f64,
}

/// Horner evaluation; the error estimate is the last kept term `|c_D t^D|`.
pub fn eval_hbar_series(z: &HbarSeries, t: f64) -> FloatResult {
    let coeffs: Vec<f64> = z.coeffs().iter().map(rational_to_f64).collect();
    let value = coeffs.iter().rev().fold(0.0, |acc, c| acc * t + c);
    let d = z.order();
    let est_error = if d == 0 { 0.0 } else { (coeffs[d] * t.powi(d as i32)).abs() };
    FloatResult { value, est_error }
}

/// `s(p, q) = (1/4|q|) Σ cot(kπ/q) cot(kpπ/q)`.
pub fn dedekind_cotangent(p: i64, q: i64) -> Result<FloatResult> {
    if q == 0 {
        return Err(Error::ZeroDenominator);
    }
    if num_integer::gcd(p, q) != 1 {
        return Err(Error::NotCoprime(p, q));
    }
    let qf = q as f64;
    let n = q.unsigned_abs();
    let mut sum = 0.0;
    let mut mag = 0.0;
    for k in 1..n {
        let k = k as f64;
        // Reduce kp mod q before scaling by π to keep the argument small.
        let kp = ((k as i64 * p).rem_euclid(q)) as f64;
        let term = 1.0 / ((k * PI / qf).tan() * (kp * PI / qf).tan());
        sum += term;
        mag += term.abs();
    }
    let value = sum / (4.0 * n as f64);
    Ok(FloatResult { value, est_error: mag / (4.0 * n as f64) * f64::EPSILON * 16.0 })
}

#[allow(clippy::excessive_precision)]
/// 15-point Kronrod nodes on `[0, 1]` (symmetric), with the embedded
/// 7-point Gauss weights.
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

fn kronrod15(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kron = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for j in 0..7 {
        let x = h * XGK[j];
        let s = f(c - x) + f(c + x);
        kron += WGK[j] * s;
        if j % 2 == 1 {
            gauss += WG[j / 2] * s;
        }
    }
    (kron * h, ((kron - gauss) * h).abs())
}

/// Adaptive Gauss-Kronrod on `[a, b]`: bisect until each piece's
/// Kronrod-Gauss difference falls below its share of `tol`.
pub fn integrate(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> FloatResult {
    fn rec(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64, depth: u32, whole: (f64, f64)) -> (f64, f64) {
        let (v, e) = whole;
        if e <= tol || depth == 0 {
            return (v, e);
        }
        let m = 0.5 * (a + b);
        let left = kronrod15(f, a, m);
        let right = kronrod15(f, m, b);
        let (lv, le) = rec(f, a, m, tol / 2.0, depth - 1, left);
        let (rv, re) = rec(f, m, b, tol / 2.0, depth - 1, right);
        (lv + rv, le + re)
    }
    let (value, est_error) = rec(f, a, b, tol, 40, kronrod15(f, a, b));
    FloatResult { value, est_error }
}

/// `ln sinh(x)` for `x > 0` without overflow.
fn ln_sinh(x: f64) -> f64 {
    if x > 20.0 {
        x - std::f64::consts::LN_2 + (-(-2.0 * x).exp()).ln_1p()
    } else {
        x.sinh().ln()
    }
}

/// `Z^rest(M)` at `ħ = t` as
/// `√(e0³/(πt))·exp(t/(4e0)·(n-2-Σ1/p_i²))·∫ e^{-t e0 β²/4} Π p_i sinh(tβ/2p_i) / sinh(tβ/2)^{n-2} dβ`.
///
/// Only `e0 > 0` is supported; the integrand is even and is integrated on
/// `[0, L]` with `L` grown until the Gaussian tail is negligible.
pub fn z_rest_quadrature(m: &SeifertData, t: f64, tol: f64) -> Result<FloatResult> {
    let e0 = rational_to_f64(&m.e0());
    if e0 <= 0.0 {
        return Err(Error::ContourNotImplemented);
    }
    if t <= 0.0 || !t.is_finite() {
        return Err(Error::InvalidArgument(format!("hbar must be positive, got {t}")));
    }
    if tol <= 0.0 {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    let n = m.n() as f64;
    let ps: Vec<f64> = m.fibers.iter().map(|f| f.p as f64).collect();
    let inv_sq: f64 = ps.iter().map(|p| 1.0 / (p * p)).sum();
    let prefactor = (e0.powi(3) / (PI * t)).sqrt() * (t / (4.0 * e0) * (n - 2.0 - inv_sq)).exp();

    let integrand = |beta: f64| -> f64 {
        let beta = beta.abs();
        let gauss = -t * e0 * beta * beta / 4.0;
        if beta < 1e-4 {
            // Π p_i sinh(x/p_i) / sinh(x)^{n-2} = x²·Π(1+(x/p_i)²/6)/(1+x²/6)^{n-2} + O(x^6)
            let x = t * beta / 2.0;
            let num: f64 = ps.iter().map(|p| 1.0 + (x / p).powi(2) / 6.0).product();
            let den = (1.0 + x * x / 6.0).powf(n - 2.0);
            return gauss.exp() * x * x * num / den;
        }
        let x = t * beta / 2.0;
        let log_num: f64 = ps.iter().map(|p| p.ln() + ln_sinh(x / p)).sum();
        (gauss + log_num - (n - 2.0) * ln_sinh(x)).exp()
    };

    // Grow the half-width until the integrand (times the width) is far
    // below the tolerance.
    let mut half = (4.0 / (t * e0)).sqrt();
    while prefactor * integrand(half) * half > tol * 1e-3 {
        half *= 1.5;
        if half > 1e8 {
            return Err(Error::Inconsistent("quadrature interval failed to converge".into()));
        }
    }
    let tail = prefactor * integrand(half) * half;
    let inner = integrate(&integrand, 0.0, half, tol / (10.0 * prefactor * 2.0));
    Ok(FloatResult { value: 2.0 * prefactor * inner.value, est_error: 2.0 * prefactor * inner.est_error + 2.0 * tail })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::invariants::z_rest;
    use crate::reduced::omega_norm;

    #[test]
    fn series_evaluation() {
        let one = HbarSeries::one(5);
        assert_eq!(eval_hbar_series(&one, 0.3).value, 1.0);
        let s = eval_hbar_series(&omega_norm(12), 0.1);
        assert!((s.value - (0.05f64).sinh() / 0.05).abs() < 1e-12);
        let e = eval_hbar_series(&HbarSeries::exp_linear(&rat(3, 4), 12), 0.2);
        assert!((e.value - 0.15f64.exp()).abs() < 1e-12);
        assert!(e.est_error >= 0.0);
    }

    #[test]
    fn cotangent_form() {
        assert!((dedekind_cotangent(1, 3).unwrap().value - 1.0 / 18.0).abs() < 1e-12);
        assert!((dedekind_cotangent(4, 25).unwrap().value - 0.16).abs() < 1e-10);
        assert!(dedekind_cotangent(1, 2).unwrap().value.abs() < 1e-12);
        assert!(dedekind_cotangent(1, 0).is_err());
    }

    #[test]
    fn gauss_kronrod_polynomial_and_gaussian() {
        let r = integrate(&|x: f64| x * x, 0.0, 3.0, 1e-12);
        assert!((r.value - 9.0).abs() < 1e-12);
        let r = integrate(&|x: f64| (-x * x).exp(), -8.0, 8.0, 1e-12);
        assert!((r.value - PI.sqrt()).abs() < 1e-11);
    }

    #[test]
    fn quadrature_of_the_sphere() {
        let m = SeifertData::new(1, &[]).unwrap();
        let r = z_rest_quadrature(&m, 0.1, 1e-10).unwrap();
        assert!((r.value - 0.05f64.sinh() / 0.05).abs() < 1e-8, "{r:?}");
    }

    #[test]
    fn quadrature_matches_series_for_one_fiber() {
        let m = SeifertData::new(1, &[(2, 1)]).unwrap();
        let q = z_rest_quadrature(&m, 0.1, 1e-9).unwrap();
        let s = eval_hbar_series(&z_rest(&m, 12).unwrap(), 0.1);
        assert!((q.value - s.value).abs() < (1e-9f64).max(s.est_error), "{q:?} vs {s:?}");
    }

    #[test]
    fn negative_e0_is_rejected() {
        let m = SeifertData::new(-1, &[(2, 1)]).unwrap();
        assert_eq!(z_rest_quadrature(&m, 0.1, 1e-6), Err(Error::ContourNotImplemented));
    }
}
