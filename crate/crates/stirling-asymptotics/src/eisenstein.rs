//! Bilateral Eisenstein sums `Σ_{m in Z} (w + 2πim)^{-k}` for real `w > 0`,
//! with certified truncation.
//!
//! Conjugate pairs are combined so the value is real. The tail beyond the
//! direct summation range is accelerated with an Euler-Maclaurin expansion;
//! `tail_bound` is a rigorous upper bound on everything omitted, derived
//! from `|B_2R(x)| <= 2 ζ(2R) (2R)!/(2π)^{2R}` and `|w + 2πit| >= 2πt`.

use std::sync::Mutex;

use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use crate::error::{Error, Result};
use crate::real::pi;

/// Result of one certified series evaluation.
#[derive(Debug, Clone)]
pub struct EisensteinSum {
    pub value: Float,
    /// Number of directly summed index pairs.
    pub terms_used: usize,
    /// Rigorous upper bound on the omitted mass.
    pub tail_bound: Float,
}

static BERNOULLI: Mutex<Vec<Rational>> = Mutex::new(Vec::new());

/// `B_m` for `m = 0..=m_max`, by the defining recurrence, cached globally.
fn bernoulli_upto(m_max: usize) -> Vec<Rational> {
    let mut cache = BERNOULLI.lock().unwrap();
    if cache.len() <= m_max {
        if cache.is_empty() {
            cache.push(Rational::from(1));
        }
        for m in cache.len()..=m_max {
            // B_m = -(1/(m+1)) Σ_{k<m} C(m+1, k) B_k
            let mut acc = Rational::new();
            for (k, b) in cache.iter().enumerate() {
                acc += Rational::from(b * crate::exact::binomial(m as u64 + 1, k as u64));
            }
            acc /= -Rational::from(m as u64 + 1);
            cache.push(acc);
        }
    }
    cache[..=m_max].to_vec()
}

/// Complex value as a (re, im) pair of floats.
#[derive(Clone)]
struct Cx {
    re: Float,
    im: Float,
}

impl Cx {
    fn mul(&self, other: &Cx) -> Cx {
        let prec = self.re.prec();
        let re = Float::with_val(prec, &self.re * &other.re)
            - Float::with_val(prec, &self.im * &other.im);
        let im = Float::with_val(prec, &self.re * &other.im)
            + Float::with_val(prec, &self.im * &other.re);
        Cx { re, im }
    }

    fn recip(&self) -> Cx {
        let prec = self.re.prec();
        let norm = Float::with_val(prec, self.re.clone().square() + self.im.clone().square());
        Cx {
            re: Float::with_val(prec, &self.re / &norm),
            im: -Float::with_val(prec, &self.im / &norm),
        }
    }

    fn pow(&self, mut e: u32) -> Cx {
        let prec = self.re.prec();
        let mut base = self.clone();
        let mut acc = Cx {
            re: Float::with_val(prec, 1),
            im: Float::with_val(prec, 0),
        };
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
}

/// Rising factorial `k (k+1) ... (k+s-1)` in natural-log space, for choosing
/// truncation parameters.
fn ln_rising_f64(k: u32, s: u32) -> f64 {
    (k..k + s).map(|t| (t as f64).ln()).sum()
}

/// Natural log of the Euler-Maclaurin remainder bound for parameters (M, R).
fn ln_tail_bound_f64(k: u32, m: usize, r: usize) -> f64 {
    let ln_two_pi = std::f64::consts::TAU.ln();
    7f64.ln() + ln_rising_f64(k, 2 * r as u32) - (k as f64 + 2.0 * r as f64) * ln_two_pi
        + (1.0 - k as f64 - 2.0 * r as f64) * (m as f64).ln()
        - ((k as usize + 2 * r - 1) as f64).ln()
}

fn choose_parameters(k: u32, ln_eps: f64) -> (usize, usize) {
    for r in (8..=240usize).step_by(8) {
        for mult in [1usize, 2, 4] {
            let m = ((k as usize + 2 * r) / 4 + 1).max(32) * mult;
            if ln_tail_bound_f64(k, m, r) <= ln_eps - 1.5 {
                return (m, r);
            }
        }
    }
    (4096, 240)
}

/// Evaluates `Σ_{m=-inf}^{inf} (w + 2πim)^{-k}` for real `w > 0`, `k >= 3`,
/// to within `eps` (absolute), returning the value together with the
/// truncation point and the rigorous bound on the omitted tail.
pub fn eisenstein(w: &Float, k: u32, eps: &Float) -> Result<EisensteinSum> {
    if k < 3 {
        return Err(Error::PowerTooSmall(k));
    }
    if !(w.is_finite() && w.is_sign_positive() && !w.is_zero()) {
        return Err(Error::NonPositiveArgument);
    }
    let out_prec = w.prec();
    let prec = out_prec + 48;
    let wp = Float::with_val(prec, w);
    let two_pi = 2u32 * pi(prec);
    let ln_eps = eps.clone().ln().to_f64();
    let (m_terms, r_terms) = choose_parameters(k, ln_eps);

    // direct part: w^{-k} + Σ_{m=1}^{M-1} 2 Re (w + 2πim)^{-k}
    let mut sum = wp.clone().pow(-(k as i32));
    for m in 1..m_terms {
        let z = Cx {
            re: wp.clone(),
            im: Float::with_val(prec, &two_pi * &Float::with_val(prec, m as u64)),
        };
        let zp = z.recip().pow(k);
        sum += 2u32 * zp.re;
    }

    // Euler-Maclaurin from t = M
    let z_m = Cx {
        re: wp.clone(),
        im: Float::with_val(prec, &two_pi * &Float::with_val(prec, m_terms as u64)),
    };
    let z_inv = z_m.recip();
    // integral term: Im[(w + 2πiM)^{1-k}] / (π (k-1))
    let mut zpow = z_inv.pow(k - 1);
    sum += zpow.im.clone() / (pi(prec) * Float::with_val(prec, k - 1));
    // half-term: g(M)/2 with g(t) = 2 Re (w + 2πit)^{-k}
    zpow = zpow.mul(&z_inv);
    sum += zpow.re.clone();

    // derivative corrections: - Σ_r B_{2r}/(2r)! g^{(2r-1)}(M), where
    // g^{(s)}(t) = (-1)^s (k)_s (2π)^s 2 Re[i^s (w + 2πit)^{-k-s}]
    let bern = bernoulli_upto(2 * r_terms);
    let mut rising = Integer::from(k); // (k)_s for s = 1
    let mut two_pi_pow = two_pi.clone(); // (2π)^s
    let mut fact_2r = Integer::from(2); // (2r)!
    for r in 1..=r_terms {
        let s = 2 * r - 1;
        if r > 1 {
            // advance from s-2 to s
            rising *= k as u64 + s as u64 - 2;
            rising *= k as u64 + s as u64 - 1;
            two_pi_pow *= two_pi.clone().square();
            fact_2r *= (2 * r - 1) as u64;
            fact_2r *= (2 * r) as u64;
        }
        if r == 1 {
            zpow = zpow.mul(&z_inv); // -> (k+1)
        } else {
            zpow = zpow.mul(&z_inv).mul(&z_inv);
        }
        // Re[i^s z] for odd s: s % 4 == 1 -> -Im z ; s % 4 == 3 -> +Im z
        let re_is_z = if s % 4 == 1 {
            -zpow.im.clone()
        } else {
            zpow.im.clone()
        };
        // (-1)^s 2 (k)_s (2π)^s Re[i^s z^{-k-s}] with odd s
        let mut gder = Float::with_val(prec, &rising);
        gder *= &two_pi_pow;
        gder *= re_is_z;
        gder *= -2;
        let coeff = Float::with_val(prec, &bern[2 * r]) / Float::with_val(prec, &fact_2r);
        sum -= coeff * gder;
    }

    // rigorous remainder bound:
    // 7 (k)_{2R} (2π)^{-k} (2πM)^{-2R} M^{1-k} / (k + 2R - 1)
    rising *= k as u64 + 2 * r_terms as u64 - 1; // now (k)_{2R}
    let mf = Float::with_val(prec, m_terms as u64);
    let tail_bound: Float = Float::with_val(prec, 7)
        * Float::with_val(prec, &rising)
        * two_pi.clone().pow(-(k as i32))
        * (two_pi.clone() * &mf).pow(-2 * r_terms as i32)
        * mf.clone().pow(1 - k as i32)
        / Float::with_val(prec, k as u64 + 2 * r_terms as u64 - 1);
    debug_assert!(tail_bound.clone() <= *eps, "tail bound exceeds eps");

    Ok(EisensteinSum {
        value: Float::with_val(out_prec, sum),
        terms_used: m_terms,
        tail_bound: Float::with_val(out_prec, tail_bound),
    })
}

/// Upper bound on `ζ(s)` for `s = two_s / 2 >= 3/2`: ten thousand direct
/// terms plus the integral tail, with a small slack for rounding. Only a
/// bound, never used as a value.
pub fn zeta_upper(two_s: u32, prec: u32) -> Float {
    assert!(two_s >= 3, "zeta bound needs s >= 3/2");
    const N: u32 = 10_000;
    let mut sum = Float::with_val(prec, 0);
    if two_s % 2 == 0 {
        let s = two_s / 2;
        for m in 1..=N {
            sum += Float::with_val(prec, Integer::from(m).pow(s)).recip();
        }
        // tail <= N^{1-s}/(s-1)
        sum += Float::with_val(prec, Integer::from(N).pow(s - 1) * (s - 1)).recip();
    } else {
        let t = (two_s - 1) / 2; // s = t + 1/2
        for m in 1..=N {
            let p = Float::with_val(prec, Integer::from(m).pow(t));
            let root = Float::with_val(prec, m).sqrt();
            sum += (p * root).recip();
        }
        let nf = Float::with_val(prec, N);
        let tail = nf.clone().sqrt() * Float::with_val(prec, Integer::from(N).pow(t)).recip()
            * Float::with_val(prec, 2)
            / Float::with_val(prec, two_s - 2);
        sum += tail;
    }
    // slack for N rounding steps
    sum += Float::with_val(prec, N) * Float::with_val(prec, 2f64).pow(4 - prec as i32);
    sum
}

/// The elementary remainder bound `2 ζ((n+1)/2) (|w| / 4π)^{(n+1)/2}` on the
/// relative deviation of the series from `w^{-(n+1)}`; valid for `n >= 2`.
pub fn eisenstein_remainder_bound(n: u32, w: &Float) -> Result<Float> {
    if n < 2 {
        return Err(Error::NTooSmall {
            n: n as usize,
            min: 2,
        });
    }
    if w.is_zero() || !w.is_finite() {
        return Err(Error::NonPositiveArgument);
    }
    let prec = w.prec();
    let zeta = zeta_upper(n + 1, prec);
    let ratio = w.clone().abs() / (4u32 * pi(prec));
    // ratio^{(n+1)/2} = sqrt(ratio^{n+1})
    let power = ratio.pow(n as i32 + 1).sqrt();
    Ok(2u32 * zeta * power)
}
