//! Exact polynomial algebra over the rationals: the row generating
//! polynomials, the Euler-Frobenius polynomials by two independent routes,
//! their connection identities, and unimodality of the coefficient rows.

use rug::{Integer, Rational};

use crate::error::{Error, Result};
use crate::exact::{modified_row, Family};

/// Dense polynomial with exact rational coefficients, index = degree.
/// Trailing zeros are trimmed; the zero polynomial has an empty list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatPoly {
    coeffs: Vec<Rational>,
}

impl RatPoly {
    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| *c == 0u32) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn from_integers(coeffs: Vec<Integer>) -> Self {
        Self::from_coeffs(coeffs.into_iter().map(Rational::from).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    /// Exact Horner evaluation.
    pub fn eval(&self, z: &Rational) -> Rational {
        let mut acc = Rational::new();
        for c in self.coeffs.iter().rev() {
            acc *= z;
            acc += c;
        }
        acc
    }

    pub fn derivative(&self) -> RatPoly {
        if self.coeffs.len() <= 1 {
            return RatPoly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| Rational::from(i as u64) * c)
            .collect();
        RatPoly::from_coeffs(coeffs)
    }

    /// Exact k-th derivative; k = 0 is the identity.
    pub fn derivative_k(&self, k: usize) -> RatPoly {
        let mut p = self.clone();
        for _ in 0..k {
            p = p.derivative();
        }
        p
    }

    pub fn add(&self, other: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + other.coeff(i)).collect();
        RatPoly::from_coeffs(coeffs)
    }

    pub fn neg(&self) -> RatPoly {
        RatPoly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn sub(&self, other: &RatPoly) -> RatPoly {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &Rational) -> RatPoly {
        if *k == 0u32 {
            return RatPoly::zero();
        }
        RatPoly {
            coeffs: self.coeffs.iter().map(|c| Rational::from(k * c)).collect(),
        }
    }

    pub fn mul(&self, other: &RatPoly) -> RatPoly {
        if self.is_zero() || other.is_zero() {
            return RatPoly::zero();
        }
        let mut coeffs = vec![Rational::new(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if *a == 0u32 {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += Rational::from(a * b);
            }
        }
        RatPoly::from_coeffs(coeffs)
    }

    pub fn pow(&self, k: usize) -> RatPoly {
        let mut acc = RatPoly::constant(Rational::from(1));
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }
}

/// Horizontal generating polynomial of the modified classical numbers,
/// `Q_n(s) = Σ_j j! {n j} s^j`.
pub fn q_poly(n: usize) -> RatPoly {
    RatPoly::from_integers(modified_row(Family::Stirling, n))
}

/// Horizontal generating polynomial of the modified Chebyshev-Stirling
/// numbers, `L_n(s) = Σ_j (2j)! {n j}_{1/2} s^j`.
pub fn l_poly(n: usize) -> RatPoly {
    RatPoly::from_integers(modified_row(Family::Chebyshev, n))
}

/// Euler-Frobenius polynomial by the differential recurrence
/// `P_n(z) = z (1-z) P_{n-1}'(z) + n z P_{n-1}(z)`, `P_0 = 1`.
pub fn euler_frobenius(n: usize) -> RatPoly {
    let mut p = RatPoly::constant(Rational::from(1));
    let z = RatPoly::from_coeffs(vec![Rational::new(), Rational::from(1)]);
    let z_minus_z2 = RatPoly::from_coeffs(vec![
        Rational::new(),
        Rational::from(1),
        Rational::from(-1),
    ]);
    for k in 1..=n {
        let dp = p.derivative();
        p = z_minus_z2
            .mul(&dp)
            .add(&z.mul(&p).scale(&Rational::from(k as u64)));
    }
    p
}

/// Euler-Frobenius polynomial by the independent Worpitzky-style expansion
/// `P_n(z) = Σ_j j! {n j} z^j (1-z)^{n-j}`.
pub fn euler_frobenius_worpitzky(n: usize) -> RatPoly {
    let weights = modified_row(Family::Stirling, n);
    let one_minus_z = RatPoly::from_coeffs(vec![Rational::from(1), Rational::from(-1)]);
    // powers (1-z)^t for t = 0..n
    let mut powers = Vec::with_capacity(n + 1);
    powers.push(RatPoly::constant(Rational::from(1)));
    for t in 1..=n {
        let prev = powers[t - 1].clone();
        powers.push(prev.mul(&one_minus_z));
    }
    let mut acc = RatPoly::zero();
    for (j, w) in weights.iter().enumerate() {
        if *w == 0 {
            continue;
        }
        // w * z^j * (1-z)^{n-j}
        let mut coeffs = vec![Rational::new(); j];
        coeffs.extend(
            powers[n - j]
                .coeffs()
                .iter()
                .map(|c| Rational::from(w * c.clone())),
        );
        acc = acc.add(&RatPoly::from_coeffs(coeffs));
    }
    acc
}

/// Checks the exact connection `Q_n(z/(1-z)) = P_n(z) / (1-z)^n` at a
/// rational point `z != 1`.
pub fn q_connection_holds(n: usize, z: &Rational) -> Result<bool> {
    if *z == 1u32 {
        return Err(Error::ExcludedPoint(z.clone()));
    }
    let one_minus_z = Rational::from(1) - z;
    let s = Rational::from(z / &one_minus_z);
    let lhs = q_poly(n).eval(&s);
    let mut rhs = euler_frobenius(n).eval(z);
    rhs /= pow_rational(&one_minus_z, n);
    Ok(lhs == rhs)
}

/// Checks the exact connection
/// `L_n(z/(1-z)^2) = (2/(1+z)) P_{2n}(z) / (1-z)^{2n}` at `z` outside
/// `{1, -1}`.
pub fn l_connection_holds(n: usize, z: &Rational) -> Result<bool> {
    if *z == 1u32 || *z == -1i32 {
        return Err(Error::ExcludedPoint(z.clone()));
    }
    let one_minus_z = Rational::from(1) - z;
    let one_plus_z = Rational::from(1) + z;
    let s = Rational::from(z / pow_rational(&one_minus_z, 2));
    let lhs = l_poly(n).eval(&s);
    let mut rhs = euler_frobenius(2 * n).eval(z);
    rhs *= Rational::from(2) / one_plus_z;
    rhs /= pow_rational(&one_minus_z, 2 * n);
    Ok(lhs == rhs)
}

fn pow_rational(z: &Rational, k: usize) -> Rational {
    let mut acc = Rational::from(1);
    for _ in 0..k {
        acc *= z;
    }
    acc
}

/// Shape of an exact coefficient row: a single strict peak, a plateau of
/// exactly two equal maxima, or a unimodality violation at index `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RowShape {
    Peak(usize),
    Plateau(usize, usize),
    Violation { j: usize },
}

/// Scans the exact modified row of a family for the peak-or-plateau
/// structure. Rows of any length are accepted; the guaranteed regime is
/// `n >= 3`.
pub fn unimodality_check(family: Family, n: usize) -> RowShape {
    row_shape(&modified_row(family, n))
}

pub(crate) fn row_shape(row: &[Integer]) -> RowShape {
    if row.len() == 1 {
        return RowShape::Peak(0);
    }
    let mut i = 0;
    while i + 1 < row.len() && row[i] < row[i + 1] {
        i += 1;
    }
    let peak_start = i;
    let mut peak_end = i;
    while peak_end + 1 < row.len() && row[peak_end + 1] == row[peak_start] {
        peak_end += 1;
    }
    if peak_end - peak_start >= 2 {
        return RowShape::Violation { j: peak_start + 2 };
    }
    for t in peak_end..row.len() - 1 {
        if row[t] <= row[t + 1] {
            return RowShape::Violation { j: t + 1 };
        }
    }
    if peak_end > peak_start {
        RowShape::Plateau(peak_start, peak_end)
    } else {
        RowShape::Peak(peak_start)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{row_sum, RowSumKind};

    fn r(n: i64) -> Rational {
        Rational::from(n)
    }

    fn rq(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    #[test]
    fn q_poly_small() {
        // Q_2 = s + 2 s^2
        assert_eq!(q_poly(2).coeffs(), &[r(0), r(1), r(2)]);
        assert_eq!(q_poly(0).coeffs(), &[r(1)]);
        assert_eq!(q_poly(3).eval(&r(1)), 13);
        assert_eq!(q_poly(2).eval(&r(1)), 3);
    }

    #[test]
    fn l_poly_small() {
        // L_2 = 2 s + 24 s^2
        assert_eq!(l_poly(2).coeffs(), &[r(0), r(2), r(24)]);
        assert_eq!(l_poly(0).coeffs(), &[r(1)]);
        assert_eq!(
            l_poly(3).eval(&r(1)),
            row_sum(RowSumKind::ChebyshevModified, 3)
        );
    }

    #[test]
    fn euler_frobenius_small() {
        // P_2 = z + z^2, P_3 = z + 4 z^2 + z^3
        assert_eq!(euler_frobenius(2).coeffs(), &[r(0), r(1), r(1)]);
        assert_eq!(euler_frobenius(3).coeffs(), &[r(0), r(1), r(4), r(1)]);
        assert_eq!(euler_frobenius(2).eval(&r(-1)), 0);
        assert_ne!(euler_frobenius(3).eval(&r(-1)), 0);
        assert_eq!(euler_frobenius(3).eval(&r(1)), 6);
    }

    #[test]
    fn euler_frobenius_routes_agree() {
        for n in 0..=30 {
            assert_eq!(euler_frobenius(n), euler_frobenius_worpitzky(n), "n={n}");
        }
    }

    #[test]
    fn euler_frobenius_value_at_one_is_factorial() {
        let mut fact = Rational::from(1);
        for n in 0..=20u64 {
            if n > 0 {
                fact *= n;
            }
            assert_eq!(euler_frobenius(n as usize).eval(&r(1)), fact);
        }
    }

    #[test]
    fn derivative_examples() {
        let p = RatPoly::from_coeffs(vec![r(0), r(1), r(2)]);
        assert_eq!(p.derivative().coeffs(), &[r(1), r(4)]);
        assert_eq!(p.derivative_k(0), p);
        // Q_2'(1) = 5 feeds the mean 5/3
        assert_eq!(q_poly(2).derivative().eval(&r(1)), 5);
    }

    #[test]
    fn eval_zero_poly() {
        assert_eq!(RatPoly::zero().eval(&rq(7, 3)), 0);
    }

    #[test]
    fn connection_identities_hold() {
        assert!(q_connection_holds(2, &rq(1, 2)).unwrap());
        assert!(q_connection_holds(0, &rq(-3, 7)).unwrap());
        assert!(q_connection_holds(5, &r(-2)).unwrap());
        assert!(l_connection_holds(1, &rq(1, 2)).unwrap());
        assert!(l_connection_holds(4, &rq(-1, 3)).unwrap());
        // at n = 0 the l connection degenerates: the left side is 1 while
        // the right side is 2/(1+z); the identity genuinely starts at n = 1
        assert!(!l_connection_holds(0, &rq(2, 5)).unwrap());
    }

    #[test]
    fn connection_identities_reject_excluded_points() {
        assert!(matches!(
            q_connection_holds(3, &r(1)),
            Err(Error::ExcludedPoint(_))
        ));
        assert!(matches!(
            l_connection_holds(3, &r(-1)),
            Err(Error::ExcludedPoint(_))
        ));
    }

    #[test]
    fn unimodality_examples() {
        assert_eq!(
            unimodality_check(Family::Chebyshev, 3),
            RowShape::Peak(3),
            "row [0, 2, 120, 720]"
        );
        assert_eq!(
            unimodality_check(Family::Stirling, 3),
            RowShape::Plateau(2, 3),
            "row [0, 1, 6, 6]"
        );
    }

    #[test]
    fn row_shape_detects_violations() {
        let row: Vec<Integer> = [0, 3, 1, 2].iter().map(|&v| Integer::from(v)).collect();
        assert!(matches!(row_shape(&row), RowShape::Violation { .. }));
        let row: Vec<Integer> = [1, 1, 1].iter().map(|&v| Integer::from(v)).collect();
        assert!(matches!(row_shape(&row), RowShape::Violation { .. }));
    }
}
