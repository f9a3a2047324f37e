//! High-precision real constants and conversion helpers.
//!
//! Precision is always passed explicitly in bits; there is no ambient
//! rounding state, so concurrent use at different precisions is safe.

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Float, Integer, Rational};

/// Default working precision: 384 bits, about 115 decimal digits.
pub const DEFAULT_PREC: u32 = 384;

/// Bits needed to carry `digits` decimal digits, with guard bits.
pub fn bits_for_digits(digits: u32) -> u32 {
    let bits = (digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 16;
    bits.max(64)
}

pub fn pi(prec: u32) -> Float {
    Float::with_val(prec, Constant::Pi)
}

/// Natural logarithm of 2.
pub fn ln2(prec: u32) -> Float {
    Float::with_val(prec, Constant::Log2)
}

pub fn sqrt5(prec: u32) -> Float {
    Float::with_val(prec, 5u32).sqrt()
}

/// The unique positive solution of `2 (cosh w - 1) = 1`, namely
/// `2 log((sqrt 5 + 1)/2)`.
pub fn omega(prec: u32) -> Float {
    let phi = (sqrt5(prec) + 1u32) / 2u32;
    2u32 * phi.ln()
}

pub fn float_from_rational(r: &Rational, prec: u32) -> Float {
    Float::with_val(prec, r)
}

pub fn float_from_integer(n: &Integer, prec: u32) -> Float {
    Float::with_val(prec, n)
}

/// Natural logarithm of a positive big integer at `prec` bits.
pub fn ln_integer(n: &Integer, prec: u32) -> Float {
    debug_assert!(*n > 0);
    Float::with_val(prec, n).ln()
}

/// `ln(n!)` computed from the exact factorial.
pub fn ln_factorial(n: u64, prec: u32) -> Float {
    ln_integer(&crate::exact::factorial(n), prec)
}

/// Fixed-point decimal rendering with `digits` places after the point,
/// truncated toward zero. Deterministic for a given float value.
pub fn to_decimal_string(f: &Float, digits: u32) -> String {
    if f.is_zero() {
        return format!("0.{}", "0".repeat(digits as usize));
    }
    let r = f.to_rational().expect("finite float");
    let neg = r < 0u32;
    let r = r.abs();
    let scale = Integer::from(10).pow(digits);
    let scaled = Rational::from(&r * &scale);
    let whole = scaled.floor().into_numer_denom().0;
    let (int_part, frac_part) = whole.div_rem(scale);
    let frac_str = format!("{:0>width$}", frac_part.to_string(), width = digits as usize);
    format!("{}{}.{}", if neg { "-" } else { "" }, int_part, frac_str)
}

/// The first `k` digits after the decimal point of `|f|`, as a string.
/// Exact (computed from the binary value, no rounding).
pub fn fraction_digits(f: &Float, k: u32) -> String {
    let r = f.to_rational().expect("finite float").abs();
    let frac = Rational::from(&r - &r.clone().floor());
    let scaled = Rational::from(&frac * &Integer::from(10).pow(k));
    let digits = scaled.floor().into_numer_denom().0;
    format!("{:0>width$}", digits.to_string(), width = k as usize)
}

/// Scientific-notation rendering with `sig` significant digits; used for
/// float payloads in reports.
pub fn sci_string(f: &Float, sig: usize) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let s = f.to_string_radix(10, Some(sig.max(2)));
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn omega_satisfies_defining_equation() {
        let prec = 384;
        let w = omega(prec);
        let resid = (2u32 * (w.clone().cosh() - 1u32) - 1u32).abs();
        let tol = Float::with_val(prec, 2f64).pow(-(prec as i32) + 8);
        assert!(resid < tol, "resid = {resid}");
        // sinh(omega) = sqrt(5)/2
        let gap = (w.sinh() - sqrt5(prec) / 2u32).abs();
        assert!(gap < tol);
    }

    #[test]
    fn omega_decimal_value() {
        let w = omega(256);
        assert_eq!(&to_decimal_string(&w, 8)[..10], "0.96242365");
    }

    #[test]
    fn decimal_rendering() {
        let f = Float::with_val(128, -1.25f64);
        assert_eq!(to_decimal_string(&f, 4), "-1.2500");
        let f = Float::with_val(128, Rational::from((9993674, 10000000)));
        assert_eq!(&fraction_digits(&f, 6), "999367");
        let f = Float::with_val(128, Rational::from((10008926, 10000000)));
        assert_eq!(&fraction_digits(&f, 6), "000892");
    }

    #[test]
    fn digits_to_bits() {
        assert!(bits_for_digits(100) >= 333);
        assert_eq!(bits_for_digits(1), 64);
    }
}
