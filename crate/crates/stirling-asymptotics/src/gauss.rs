//! Standard normal density and distribution function at configurable
//! precision, probabilists' Hermite polynomials, and the first two
//! correction terms of the normal approximation.

use rug::ops::Pow;
use rug::{Float, Rational};

use crate::error::{Error, Result};
use crate::poly::RatPoly;
use crate::real::pi;

/// Probabilists' Hermite polynomial value by the three-term recurrence
/// `H_{m+1} = x H_m - m H_{m-1}`.
pub fn hermite_value(m: u32, x: &Float) -> Float {
    let prec = x.prec();
    let mut h0 = Float::with_val(prec, 1);
    if m == 0 {
        return h0;
    }
    let mut h1 = x.clone();
    for k in 1..m {
        let next = Float::with_val(prec, x * &h1) - Float::with_val(prec, k) * &h0;
        h0 = h1;
        h1 = next;
    }
    h1
}

/// Exact coefficients of the probabilists' Hermite polynomial.
pub fn hermite_poly(m: u32) -> RatPoly {
    let x = RatPoly::from_coeffs(vec![Rational::new(), Rational::from(1)]);
    let mut h0 = RatPoly::constant(Rational::from(1));
    if m == 0 {
        return h0;
    }
    let mut h1 = x.clone();
    for k in 1..m {
        let next = x.mul(&h1).sub(&h0.scale(&Rational::from(k)));
        h0 = h1;
        h1 = next;
    }
    h1
}

/// Density `φ(x) = e^{-x²/2} / sqrt(2π)` at the precision of `x`.
pub fn gaussian_pdf(x: &Float) -> Float {
    let prec = x.prec();
    let expo = (-x.clone().square() / 2u32).exp();
    expo / (2u32 * pi(prec)).sqrt()
}

/// Distribution function `Φ(x)` at the precision of `x`.
///
/// For `|x| <= 3` the positive series
/// `Φ(x) = 1/2 + φ(x) Σ_k x^{2k+1} / (1·3···(2k+1))` is used; beyond that
/// the tail is evaluated through the continued fraction for the Mills
/// ratio, which keeps the small tail relatively accurate.
pub fn gaussian_cdf(x: &Float) -> Float {
    let prec = x.prec();
    let three = Float::with_val(prec, 3);
    if x.clone().abs() <= three {
        return cdf_series(x);
    }
    let ax = x.clone().abs();
    let tail = gaussian_pdf(&ax) * mills_ratio_cf(&ax);
    if x.is_sign_positive() {
        Float::with_val(prec, 1) - tail
    } else {
        tail
    }
}

fn cdf_series(x: &Float) -> Float {
    let prec = x.prec();
    let x2 = x.clone().square();
    let mut term = x.clone();
    let mut sum = x.clone();
    let cutoff = Float::with_val(prec, 2f64).pow(-(prec as i32) - 16);
    for k in 1..20_000u32 {
        term *= &x2;
        term /= 2 * k + 1;
        sum += &term;
        if term.clone().abs() < cutoff {
            break;
        }
    }
    Float::with_val(prec, 0.5f64) + gaussian_pdf(x) * sum
}

/// Mills ratio `(1 - Φ(x)) / φ(x)` for `x > 0` by the classical continued
/// fraction `1/(x + 1/(x + 2/(x + 3/(...))))`, evaluated with the
/// modified Lentz algorithm.
fn mills_ratio_cf(x: &Float) -> Float {
    let prec = x.prec();
    let tiny = Float::with_val(prec, 2f64).pow(-(prec as i32) * 2);
    let mut f = tiny.clone();
    let mut c = tiny.clone();
    let mut d = Float::with_val(prec, 0);
    let tol = Float::with_val(prec, 2f64).pow(-(prec as i32) - 8);
    for i in 1..500_000u32 {
        let a = if i == 1 {
            Float::with_val(prec, 1)
        } else {
            Float::with_val(prec, i - 1)
        };
        // b_i = x for every level
        d = Float::with_val(prec, x + &(a.clone() * d));
        if d.is_zero() {
            d = tiny.clone();
        }
        c = Float::with_val(prec, x + &(a / &c));
        if c.is_zero() {
            c = tiny.clone();
        }
        d = d.recip();
        let delta = Float::with_val(prec, &c * &d);
        f *= &delta;
        if (delta - 1u32).abs() < tol {
            return f;
        }
    }
    panic!("continued fraction did not converge at x = {x}");
}

/// Correction terms of the normal approximation built from normalized
/// cumulants: order 1 uses `λ₃`, order 2 additionally needs `λ₄`.
pub fn edgeworth_term(
    nu: u8,
    x: &Float,
    lambda3: &Float,
    lambda4: Option<&Float>,
) -> Result<Float> {
    let prec = x.prec();
    match nu {
        1 => {
            let h3 = hermite_value(3, x);
            Ok(gaussian_pdf(x) * h3 * lambda3 / 6u32)
        }
        2 => {
            let l4 = lambda4.ok_or(Error::MissingCumulant)?;
            let h4 = hermite_value(4, x);
            let h6 = hermite_value(6, x);
            let t1 = h4 * l4 / 24u32;
            let t2 = h6 * lambda3.clone().square() / 72u32;
            Ok(gaussian_pdf(x) * Float::with_val(prec, t1 + t2))
        }
        _ => Err(Error::CorrectionOrder(nu)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(prec: u32, v: f64) -> Float {
        Float::with_val(prec, v)
    }

    #[test]
    fn hermite_small_values() {
        let prec = 192;
        let x = f(prec, 2.0);
        // H_3 = x^3 - 3x, H_4(2) = 16 - 24 + 3 = -5
        assert_eq!(hermite_value(3, &x), 2f64.powi(3) - 6.0);
        assert_eq!(hermite_value(4, &x), -5);
        assert_eq!(hermite_value(0, &x), 1);
        assert_eq!(hermite_value(1, &x), 2);
    }

    #[test]
    fn hermite_matches_density_derivatives() {
        // Rodrigues route: if d^m/dx^m e^{-x²/2} = p_m(x) e^{-x²/2}, then
        // p_{m+1} = p_m' - x p_m and H_m = (-1)^m p_m. Checked symbolically.
        let x = RatPoly::from_coeffs(vec![Rational::new(), Rational::from(1)]);
        let mut p = RatPoly::constant(Rational::from(1));
        for m in 0..=8u32 {
            let signed = if m % 2 == 0 { p.clone() } else { p.neg() };
            assert_eq!(hermite_poly(m), signed, "m = {m}");
            p = p.derivative().sub(&x.mul(&p));
        }
    }

    #[test]
    fn pdf_at_zero() {
        let prec = 384;
        let v = gaussian_pdf(&f(prec, 0.0));
        // 1/sqrt(2π) = 0.3989422804...
        let expect = (2u32 * pi(prec)).sqrt().recip();
        assert_eq!(v, expect);
        let s = crate::real::to_decimal_string(&v, 10);
        assert_eq!(s, "0.3989422804");
    }

    #[test]
    fn cdf_at_zero_is_half() {
        let prec = 256;
        let v = gaussian_cdf(&f(prec, 0.0));
        let gap = (v - Float::with_val(prec, 0.5f64)).abs();
        assert!(gap < f(prec, 1e-70));
    }

    #[test]
    fn cdf_symmetry() {
        let prec = 320;
        for v in [0.3, 1.0, 2.5, 3.0, 3.5, 5.0] {
            let a = gaussian_cdf(&f(prec, v));
            let b = gaussian_cdf(&f(prec, -v));
            let gap = (a + b - 1u32).abs();
            assert!(gap < f(prec, 1e-90), "x = {v}, gap = {gap}");
        }
    }

    #[test]
    fn cdf_series_and_continued_fraction_agree() {
        // boosted-precision series vs production path across the switch
        for v in [3.25f64, 4.0, 6.0] {
            let hi = cdf_series(&f(640, -v));
            let lo = gaussian_cdf(&f(320, -v));
            let gap = (Float::with_val(640, &lo) - hi).abs();
            assert!(gap < f(640, 1e-80), "x = -{v}, gap = {gap}");
        }
    }

    #[test]
    fn cdf_matches_quadrature() {
        // Romberg integration of φ over [0, x] as an independent oracle
        let prec = 320;
        for v in [-3.0f64, -1.0, 0.0, 1.0, 3.0] {
            let got = gaussian_cdf(&f(prec, v));
            let half = Float::with_val(prec, 0.5f64);
            let expect = half + romberg_pdf(prec, v);
            let gap = (got - expect).abs();
            assert!(gap < f(prec, 1e-25), "x = {v}, gap = {gap}");
        }
    }

    /// Romberg quadrature of the normal density on [0, x]; test-only oracle,
    /// independent of the series/continued-fraction evaluation paths.
    fn romberg_pdf(prec: u32, x: f64) -> Float {
        let xf = f(prec, x);
        if x == 0.0 {
            return Float::with_val(prec, 0);
        }
        let levels = 13usize;
        let mut rows: Vec<Vec<Float>> = Vec::new();
        let mut h = xf.clone();
        let fa = gaussian_pdf(&f(prec, 0.0));
        let fb = gaussian_pdf(&xf);
        let mut trapezoid = (fa + fb) * h.clone() / 2u32;
        rows.push(vec![trapezoid.clone()]);
        for level in 1..=levels {
            h /= 2u32;
            let points = 1usize << (level - 1);
            let mut acc = Float::with_val(prec, 0);
            for i in 0..points {
                let t = Float::with_val(prec, 2 * i as u32 + 1) * &h;
                acc += gaussian_pdf(&t);
            }
            trapezoid = trapezoid / 2u32 + acc * h.clone();
            let mut row = vec![trapezoid.clone()];
            let prev = rows.last().unwrap();
            let mut pow4 = Float::with_val(prec, 1);
            for m in 0..prev.len() {
                pow4 *= 4u32;
                let better = (row[m].clone() * &pow4 - &prev[m]) / (pow4.clone() - 1u32);
                row.push(better);
            }
            rows.push(row);
        }
        rows.last().unwrap().last().unwrap().clone()
    }

    #[test]
    fn edgeworth_order_one_vanishes_at_zero() {
        let prec = 192;
        let lam3 = f(prec, -0.47);
        let v = edgeworth_term(1, &f(prec, 0.0), &lam3, None).unwrap();
        assert!(v.is_zero());
    }

    #[test]
    fn edgeworth_order_two_with_zero_lambda3() {
        let prec = 192;
        let x = f(prec, 1.5);
        let lam4 = f(prec, 0.8);
        let v = edgeworth_term(2, &x, &f(prec, 0.0), Some(&lam4)).unwrap();
        let expect = gaussian_pdf(&x) * hermite_value(4, &x) * &lam4 / 24u32;
        let gap = (v - expect).abs();
        assert!(gap < f(prec, 1e-40));
    }

    #[test]
    fn edgeworth_rejects_unsupported_order() {
        let prec = 128;
        let x = f(prec, 0.5);
        assert!(matches!(
            edgeworth_term(3, &x, &x, None),
            Err(Error::CorrectionOrder(3))
        ));
        assert!(matches!(
            edgeworth_term(2, &x, &x, None),
            Err(Error::MissingCumulant)
        ));
    }
}
