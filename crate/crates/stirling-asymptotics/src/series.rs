//! Truncated power series with exact rational coefficients, used to verify
//! the generating-function identities coefficient by coefficient.
//!
//! The hyperbolic sine and exponential series are generated from scratch;
//! no floating arithmetic enters these checks.

use rug::Rational;

use crate::exact::{factorial, family_row, Family};
use crate::poly::{l_poly, q_poly};

/// Series truncated after `len` coefficients (orders `0..len` of `t`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series {
    coeffs: Vec<Rational>,
}

impl Series {
    pub fn zero(len: usize) -> Self {
        Series {
            coeffs: vec![Rational::new(); len],
        }
    }

    pub fn one(len: usize) -> Self {
        let mut s = Self::zero(len);
        if len > 0 {
            s.coeffs[0] = Rational::from(1);
        }
        s
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    /// `sinh(t/2)` truncated to `len` coefficients.
    pub fn sinh_half(len: usize) -> Self {
        let mut s = Self::zero(len);
        let mut i = 1usize;
        while i < len {
            // coefficient of t^i: (1/2)^i / i!
            let den = factorial(i as u64) << i as u32;
            s.coeffs[i] = Rational::from((rug::Integer::from(1), den));
            i += 2;
        }
        s
    }

    /// `e^t - 1` truncated to `len` coefficients.
    pub fn exp_minus_one(len: usize) -> Self {
        let mut s = Self::zero(len);
        for i in 1..len {
            s.coeffs[i] = Rational::from((rug::Integer::from(1), factorial(i as u64)));
        }
        s
    }

    pub fn add(&self, other: &Series) -> Series {
        let len = self.len().min(other.len());
        let coeffs = (0..len)
            .map(|i| Rational::from(&self.coeffs[i] + &other.coeffs[i]))
            .collect();
        Series { coeffs }
    }

    pub fn scale(&self, k: &Rational) -> Series {
        Series {
            coeffs: self.coeffs.iter().map(|c| Rational::from(k * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Series) -> Series {
        let len = self.len().min(other.len());
        let mut coeffs = vec![Rational::new(); len];
        for (i, a) in self.coeffs.iter().enumerate().take(len) {
            if *a == 0u32 {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                coeffs[i + j] += Rational::from(a * b);
            }
        }
        Series { coeffs }
    }

    pub fn pow(&self, k: usize) -> Series {
        let mut acc = Series::one(self.len());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn inverse(&self) -> Series {
        assert!(
            !self.is_empty() && self.coeffs[0] != 0u32,
            "series has no inverse (zero constant term)"
        );
        let len = self.len();
        let mut inv = vec![Rational::new(); len];
        let a0 = self.coeffs[0].clone();
        inv[0] = Rational::from(1) / a0.clone();
        for n in 1..len {
            let mut acc = Rational::new();
            for k in 1..=n {
                acc += Rational::from(&self.coeffs[k] * &inv[n - k]);
            }
            inv[n] = -acc / a0.clone();
        }
        Series { coeffs: inv }
    }
}

/// Vertical generating identity for a fixed column `j`: the coefficients of
/// `(2^{2j}/(2j)!) sinh^{2j}(t/2)` must equal `{n j}_{1/2} / (2n)!` through
/// order `2 * order`, with odd coefficients vanishing.
pub fn vertical_generating_identity(j: usize, order: usize) -> bool {
    let len = 2 * order + 1;
    let scale = Rational::from((
        rug::Integer::from(1) << (2 * j) as u32,
        factorial(2 * j as u64),
    ));
    let series = Series::sinh_half(len).pow(2 * j).scale(&scale);
    for n in 0..=order {
        let expect = Rational::from((
            chebyshev_number(n, j),
            factorial(2 * n as u64),
        ));
        if series.coeff(2 * n) != expect {
            return false;
        }
        if 2 * n + 1 < len && series.coeff(2 * n + 1) != 0u32 {
            return false;
        }
    }
    true
}

fn chebyshev_number(n: usize, j: usize) -> rug::Integer {
    if j > n {
        return rug::Integer::new();
    }
    family_row(Family::Chebyshev, n)[j].clone()
}

/// Row generating identity for the Chebyshev family at a fixed rational `s`:
/// coefficients of `1/(1 - 4 s sinh^2(t/2))` must equal `L_n(s)/(2n)!`.
pub fn l_generating_identity(s: &Rational, order: usize) -> bool {
    let len = 2 * order + 1;
    let sh2 = Series::sinh_half(len).pow(2);
    let four_s = Rational::from(4) * s;
    let denom = Series::one(len).add(&sh2.scale(&four_s).scale(&Rational::from(-1)));
    let series = denom.inverse();
    for n in 0..=order {
        let expect = Rational::from(l_poly(n).eval(s)) / factorial(2 * n as u64);
        if series.coeff(2 * n) != expect {
            return false;
        }
        if 2 * n + 1 < len && series.coeff(2 * n + 1) != 0u32 {
            return false;
        }
    }
    true
}

/// Row generating identity for the classical family at a fixed rational `s`:
/// coefficients of `1/(1 - s (e^t - 1))` must equal `Q_n(s)/n!`.
pub fn q_generating_identity(s: &Rational, order: usize) -> bool {
    let len = order + 1;
    let em1 = Series::exp_minus_one(len);
    let denom = Series::one(len).add(&em1.scale(s).scale(&Rational::from(-1)));
    let series = denom.inverse();
    for n in 0..=order {
        let expect = Rational::from(q_poly(n).eval(s)) / factorial(n as u64);
        if series.coeff(n) != expect {
            return false;
        }
    }
    true
}
