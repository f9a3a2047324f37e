//! Exact computation of the Stirling-family numbers.
//!
//! Every number here is produced by at least two independent routes: the
//! triangular recurrence (the definition) and an explicit alternating sum,
//! plus a forward-difference connection for the Chebyshev-Stirling case.
//! All arithmetic is exact; divisions by factorials are asserted exact.

use rug::ops::Pow;
use rug::{Integer, Rational};

use crate::error::{Error, Result};

/// Triangle kinds: the classical numbers, the 2γ = 1 specialization, and the
/// general positive-2γ family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Stirling,
    Chebyshev,
    Jacobi,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Stirling => "stirling",
            Kind::Chebyshev => "chebyshev",
            Kind::Jacobi => "jacobi",
        }
    }
}

/// The two coefficient families with a normal limit law.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Stirling,
    Chebyshev,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::Stirling => "stirling",
            Family::Chebyshev => "chebyshev",
        }
    }
}

/// Row-sum flavors: surjection (Fubini) numbers, their Chebyshev analogue,
/// and the Bell numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowSumKind {
    StirlingModified,
    ChebyshevModified,
    Bell,
}

/// Dense lower-triangular table of one family up to `n_max`.
///
/// Entries outside `0 <= j <= n` are zero by convention. For
/// `Stirling`/`Chebyshev` and integer `two_gamma` every entry has
/// denominator 1.
#[derive(Debug, Clone)]
pub struct Triangle {
    kind: Kind,
    two_gamma: Rational,
    rows: Vec<Vec<Rational>>,
}

impl Triangle {
    /// Builds the triangle by the defining recurrence
    /// `T(n, j) = T(n-1, j-1) + m(j) T(n-1, j)` with multiplier
    /// `m(j) = j`, `j^2`, or `j (j + 2γ - 1)`.
    pub fn build(kind: Kind, two_gamma: Rational, n_max: usize) -> Result<Self> {
        if two_gamma <= 0u32 {
            return Err(Error::NonPositiveGamma(two_gamma));
        }
        let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(n_max + 1);
        rows.push(vec![Rational::from(1)]);
        for n in 1..=n_max {
            let prev = &rows[n - 1];
            let mut row = Vec::with_capacity(n + 1);
            row.push(Rational::new());
            for j in 1..=n {
                let carry = if j - 1 < prev.len() {
                    prev[j - 1].clone()
                } else {
                    Rational::new()
                };
                let stay = if j < prev.len() {
                    let mult = match kind {
                        Kind::Stirling => Rational::from(j as u64),
                        Kind::Chebyshev => Rational::from((j * j) as u64),
                        Kind::Jacobi => {
                            Rational::from(j as u64) * (two_gamma.clone() + (j as i64 - 1))
                        }
                    };
                    mult * &prev[j]
                } else {
                    Rational::new()
                };
                row.push(carry + stay);
            }
            rows.push(row);
        }
        Ok(Triangle {
            kind,
            two_gamma,
            rows,
        })
    }

    pub fn stirling(n_max: usize) -> Self {
        Self::build(Kind::Stirling, Rational::from(1), n_max).expect("positive gamma")
    }

    pub fn chebyshev(n_max: usize) -> Self {
        Self::build(Kind::Chebyshev, Rational::from(1), n_max).expect("positive gamma")
    }

    pub fn jacobi(two_gamma: Rational, n_max: usize) -> Result<Self> {
        Self::build(Kind::Jacobi, two_gamma, n_max)
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn two_gamma(&self) -> &Rational {
        &self.two_gamma
    }

    pub fn n_max(&self) -> usize {
        self.rows.len() - 1
    }

    /// Entry `(n, j)`; zero outside the triangle.
    pub fn entry(&self, n: usize, j: usize) -> Rational {
        if n <= self.n_max() && j <= n {
            self.rows[n][j].clone()
        } else {
            Rational::new()
        }
    }

    pub fn row(&self, n: usize) -> &[Rational] {
        &self.rows[n]
    }
}

/// Binomial coefficient as an exact integer.
pub fn binomial(n: u64, k: u64) -> Integer {
    if k > n {
        return Integer::new();
    }
    let k = k.min(n - k);
    let mut num = Integer::from(1);
    for i in 0..k {
        num *= n - i;
        // dividing by i+1 keeps intermediate values at binomial size
        let (q, r) = num.div_rem(Integer::from(i + 1));
        debug_assert!(r == 0);
        num = q;
    }
    num
}

/// Factorial as an exact integer.
pub fn factorial(n: u64) -> Integer {
    let mut f = Integer::from(1);
    for i in 2..=n {
        f *= i;
    }
    f
}

/// Single row `n` of a family's unmodified triangle, by the rolling
/// recurrence. Cheaper than `Triangle::build` when only one row is needed.
pub fn family_row(family: Family, n: usize) -> Vec<Integer> {
    let mut row = vec![Integer::from(1)];
    for m in 1..=n {
        let mut next = Vec::with_capacity(m + 1);
        next.push(Integer::new());
        for j in 1..=m {
            let carry = if j - 1 < row.len() {
                row[j - 1].clone()
            } else {
                Integer::new()
            };
            let stay = if j < row.len() {
                let mult = match family {
                    Family::Stirling => j as u64,
                    Family::Chebyshev => (j * j) as u64,
                };
                Integer::from(mult) * &row[j]
            } else {
                Integer::new()
            };
            next.push(carry + stay);
        }
        row = next;
    }
    row
}

/// Classical number by the explicit alternating sum
/// `(1/j!) Σ_{r=0}^{j} C(j,r) (-1)^r (j-r)^n`.
pub fn stirling_explicit(n: usize, j: usize) -> Integer {
    let mut sum = Integer::new();
    for r in 0..=j {
        let term = binomial(j as u64, r as u64) * Integer::from((j - r) as u64).pow(n as u32);
        if r % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    let (q, rem) = sum.div_rem(factorial(j as u64));
    assert!(rem == 0, "alternating sum not divisible by j!");
    q
}

/// Chebyshev-Stirling number by the explicit alternating sum
/// `(1/(2j)!) Σ_{r=0}^{2j} C(2j,r) (-1)^r (j-r)^{2n}`.
pub fn chebyshev_explicit(n: usize, j: usize) -> Integer {
    let mut sum = Integer::new();
    for r in 0..=(2 * j) {
        let base = Integer::from(j as i64 - r as i64);
        let term = binomial(2 * j as u64, r as u64) * base.pow(2 * n as u32);
        if r % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    let (q, rem) = sum.div_rem(factorial(2 * j as u64));
    assert!(rem == 0, "alternating sum not divisible by (2j)!");
    q
}

/// Jacobi-Stirling number from the explicit alternating sum, restricted to
/// positive integer `two_gamma` so every Gamma ratio is an exact rational.
///
/// At the `r + 2γ - 1 = 0` pole the factor `(2r+2γ-1)Γ(r+2γ-1)` is read as
/// `Γ(2γ)`, and `0^0 = 1`; both conventions agree with the recurrence
/// boundary (checked in tests).
pub fn jacobi_explicit(n: usize, j: usize, two_gamma: &Rational) -> Result<Rational> {
    if *two_gamma <= 0u32 {
        return Err(Error::NonPositiveGamma(two_gamma.clone()));
    }
    if !two_gamma.is_integer() {
        return Err(Error::NonIntegerGamma(two_gamma.clone()));
    }
    let g = two_gamma.numer().to_u64().expect("two_gamma fits in u64") as usize;
    let mut sum = Rational::new();
    for r in 0..=j {
        // (2r + g - 1) * Γ(r+g-1) / Γ(j+r+g), with the r+g-1 = 0 pole
        // collapsing to Γ(g)/Γ(j+r+g)
        let coeff = if r + g == 1 {
            let mut den = Integer::from(1);
            for t in 1..(j + r + g) {
                den *= t as u64;
            }
            Rational::from((Integer::from(1), den))
        } else {
            let mut den = Integer::from(1);
            for t in (r + g - 1)..(j + r + g) {
                den *= t as u64;
            }
            Rational::from((Integer::from((2 * r + g - 1) as u64), den))
        };
        let base = Integer::from((r * (r + g - 1)) as u64);
        let powered = if n == 0 {
            Integer::from(1)
        } else {
            base.pow(n as u32)
        };
        let mut term = coeff * powered;
        term /= factorial(r as u64) * factorial((j - r) as u64);
        if (r + j) % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    Ok(sum)
}

/// Chebyshev-Stirling number from classical Stirling numbers through the
/// forward-difference connection `Σ_{ν=0}^{2n} C(2n,ν) (-j)^{2n-ν} {ν 2j}`.
pub fn chebyshev_from_stirling(n: usize, j: usize) -> Integer {
    if j == 0 {
        return if n == 0 { Integer::from(1) } else { Integer::new() };
    }
    if 2 * j > 2 * n {
        return Integer::new();
    }
    // column {ν 2j} for ν = 0..2n via the rolling recurrence
    let mut row = vec![Integer::from(1)];
    let mut column = vec![Integer::new(); 2 * n + 1];
    if 2 * j == 0 {
        column[0] = Integer::from(1);
    }
    for nu in 1..=(2 * n) {
        let mut next = Vec::with_capacity(nu + 1);
        next.push(Integer::new());
        for t in 1..=nu {
            let carry = if t - 1 < row.len() {
                row[t - 1].clone()
            } else {
                Integer::new()
            };
            let stay = if t < row.len() {
                Integer::from(t as u64) * &row[t]
            } else {
                Integer::new()
            };
            next.push(carry + stay);
        }
        row = next;
        if 2 * j <= nu {
            column[nu] = row[2 * j].clone();
        }
    }
    let mut sum = Integer::new();
    for nu in 0..=(2 * n) {
        if column[nu] == 0 {
            continue;
        }
        let jpow = Integer::from(j as u64).pow((2 * n - nu) as u32);
        let term = binomial(2 * n as u64, nu as u64) * jpow * &column[nu];
        // (-j)^{2n-ν} carries sign (-1)^{2n-ν} = (-1)^ν
        if nu % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    sum
}

/// Row of modified numbers `j! {n j}` or `(2j)! {n j}_{1/2}`, `j = 0..n`.
pub fn modified_row(family: Family, n: usize) -> Vec<Integer> {
    let row = family_row(family, n);
    let mut fact = Integer::from(1);
    let mut out = Vec::with_capacity(n + 1);
    for (j, v) in row.iter().enumerate() {
        match family {
            Family::Stirling => {
                if j > 0 {
                    fact *= j as u64;
                }
            }
            Family::Chebyshev => {
                if j > 0 {
                    fact *= (2 * j - 1) as u64;
                    fact *= (2 * j) as u64;
                }
            }
        }
        out.push(Integer::from(&fact * v));
    }
    out
}

/// Row sum: surjection numbers `Q_n(1)`, their Chebyshev analogue `L_n(1)`,
/// or the Bell numbers.
pub fn row_sum(kind: RowSumKind, n: usize) -> Integer {
    match kind {
        RowSumKind::StirlingModified => modified_row(Family::Stirling, n).iter().sum(),
        RowSumKind::ChebyshevModified => modified_row(Family::Chebyshev, n).iter().sum(),
        RowSumKind::Bell => family_row(Family::Stirling, n).iter().sum(),
    }
}

/// Leading term of the fixed-`j` asymptotics: `j^n / j!` for the classical
/// numbers, `Γ(j)/(j! Γ(2j)) (j^2)^n` for the Chebyshev-Stirling ones.
/// Exact as a rational; converted to a float at `prec` bits for ratio tests.
pub fn fixed_j_leading_term(
    family: Family,
    n: usize,
    j: usize,
    prec: u32,
) -> Result<rug::Float> {
    if j == 0 {
        return Err(Error::ZeroIndex);
    }
    let value = match family {
        Family::Stirling => {
            let num = Integer::from(j as u64).pow(n as u32);
            Rational::from((num, factorial(j as u64)))
        }
        Family::Chebyshev => {
            let num = factorial(j as u64 - 1) * Integer::from(j as u64).pow(2 * n as u32);
            let den = factorial(j as u64) * factorial(2 * j as u64 - 1);
            Rational::from((num, den))
        }
    };
    Ok(rug::Float::with_val(prec, &value))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute-force set-partition count: partitions of an n-set into exactly
    /// j nonempty blocks, by direct enumeration. Independent of every
    /// formula above.
    fn partitions_brute(n: usize, j: usize) -> u64 {
        fn go(item: usize, n: usize, blocks: &mut Vec<Vec<usize>>, j: usize, count: &mut u64) {
            if item == n {
                if blocks.len() == j {
                    *count += 1;
                }
                return;
            }
            for b in 0..blocks.len() {
                blocks[b].push(item);
                go(item + 1, n, blocks, j, count);
                blocks[b].pop();
            }
            if blocks.len() < j {
                blocks.push(vec![item]);
                go(item + 1, n, blocks, j, count);
                blocks.pop();
            }
        }
        let mut count = 0;
        go(0, n, &mut Vec::new(), j, &mut count);
        count
    }

    #[test]
    fn stirling_matches_set_partition_enumeration() {
        assert_eq!(stirling_explicit(6, 3), partitions_brute(6, 3));
        assert_eq!(stirling_explicit(6, 3), 90);
        for n in 0..=7 {
            for j in 0..=n {
                assert_eq!(stirling_explicit(n, j), partitions_brute(n, j), "({n},{j})");
            }
        }
    }

    #[test]
    fn triangle_boundaries() {
        let t = Triangle::stirling(4);
        assert_eq!(t.entry(0, 0), 1);
        assert_eq!(t.entry(4, 2), 7);
        assert_eq!(t.entry(3, 0), 0);
        assert_eq!(t.entry(2, 5), 0);
        let t0 = Triangle::stirling(0);
        assert_eq!(t0.n_max(), 0);
        assert_eq!(t0.entry(0, 0), 1);
    }

    #[test]
    fn chebyshev_row_three() {
        let t = Triangle::chebyshev(3);
        let row: Vec<Rational> = t.row(3).to_vec();
        assert_eq!(
            row,
            vec![
                Rational::new(),
                Rational::from(1),
                Rational::from(5),
                Rational::from(1)
            ]
        );
        assert_eq!(chebyshev_explicit(3, 2), 5);
        assert_eq!(chebyshev_explicit(2, 1), 1);
    }

    #[test]
    fn chebyshev_explicit_boundary_column() {
        for n in 0..6 {
            let expect = if n == 0 { 1 } else { 0 };
            assert_eq!(chebyshev_explicit(n, 0), expect);
        }
    }

    #[test]
    fn jacobi_rejects_bad_gamma() {
        assert!(matches!(
            jacobi_explicit(2, 1, &Rational::from((-1, 2))),
            Err(Error::NonPositiveGamma(_))
        ));
        assert!(matches!(
            jacobi_explicit(2, 1, &Rational::from((3, 2))),
            Err(Error::NonIntegerGamma(_))
        ));
        assert!(matches!(
            Triangle::build(Kind::Jacobi, Rational::new(), 3),
            Err(Error::NonPositiveGamma(_))
        ));
    }

    #[test]
    fn jacobi_legendre_case() {
        let two = Rational::from(2);
        assert_eq!(jacobi_explicit(2, 1, &two).unwrap(), 2);
        let t = Triangle::jacobi(two.clone(), 2).unwrap();
        assert_eq!(t.entry(2, 1), 2);
        // two_gamma = 1 must agree with the Chebyshev numbers
        let one = Rational::from(1);
        assert_eq!(jacobi_explicit(3, 2, &one).unwrap(), 5);
    }

    #[test]
    fn forward_difference_route() {
        assert_eq!(chebyshev_from_stirling(3, 2), 5);
        assert_eq!(chebyshev_from_stirling(1, 1), 1);
        assert_eq!(chebyshev_from_stirling(2, 3), 0);
        assert_eq!(chebyshev_from_stirling(0, 0), 1);
        assert_eq!(chebyshev_from_stirling(3, 0), 0);
    }

    #[test]
    fn four_route_agreement_small() {
        let ts = Triangle::stirling(16);
        let tc = Triangle::chebyshev(16);
        for n in 0..=16usize {
            for j in 0..=n {
                assert_eq!(ts.entry(n, j), stirling_explicit(n, j));
                let c = chebyshev_explicit(n, j);
                assert_eq!(tc.entry(n, j), c);
                assert_eq!(chebyshev_from_stirling(n, j), c);
            }
        }
        for g in 1u32..=4 {
            let tg = Triangle::jacobi(Rational::from(g), 10).unwrap();
            for n in 0..=10usize {
                for j in 0..=n {
                    assert_eq!(
                        tg.entry(n, j),
                        jacobi_explicit(n, j, &Rational::from(g)).unwrap(),
                        "g={g} ({n},{j})"
                    );
                }
            }
        }
    }

    #[test]
    fn rational_gamma_triangle_positive() {
        // non-integer two_gamma is served by the recurrence, exactly
        let t = Triangle::jacobi(Rational::from((3, 2)), 8).unwrap();
        for n in 1..=8usize {
            assert_eq!(t.entry(n, n), 1);
            for j in 1..=n {
                assert!(t.entry(n, j) > 0u32);
            }
        }
    }

    #[test]
    fn modified_rows_and_sums() {
        assert_eq!(
            modified_row(Family::Stirling, 2),
            vec![Integer::new(), Integer::from(1), Integer::from(2)]
        );
        assert_eq!(
            modified_row(Family::Chebyshev, 2),
            vec![Integer::new(), Integer::from(2), Integer::from(24)]
        );
        assert_eq!(modified_row(Family::Stirling, 0), vec![Integer::from(1)]);
        assert_eq!(row_sum(RowSumKind::StirlingModified, 2), 3);
        assert_eq!(row_sum(RowSumKind::ChebyshevModified, 3), 842);
        assert_eq!(row_sum(RowSumKind::Bell, 3), 5);
    }

    #[test]
    fn bell_matches_brute_force() {
        let total: u64 = (0..=5).map(|j| partitions_brute(5, j)).sum();
        assert_eq!(row_sum(RowSumKind::Bell, 5), total);
    }

    #[test]
    fn leading_term_values() {
        let one = fixed_j_leading_term(Family::Stirling, 7, 1, 64).unwrap();
        assert_eq!(one, 1);
        let c = fixed_j_leading_term(Family::Chebyshev, 3, 2, 128).unwrap();
        let expect = rug::Float::with_val(128, &Rational::from((16, 3)));
        assert_eq!(c, expect);
        assert!(fixed_j_leading_term(Family::Stirling, 3, 0, 64).is_err());
    }

    #[test]
    fn fixed_j_ratio_convergence() {
        // |exact/leading - 1| at n = 200 stays below 1e-8 for j = 1, 2, 3
        let prec = 256;
        let srow = family_row(Family::Stirling, 200);
        let crow = family_row(Family::Chebyshev, 200);
        for j in 1usize..=3 {
            for (family, row) in [(Family::Stirling, &srow), (Family::Chebyshev, &crow)] {
                let lead = fixed_j_leading_term(family, 200, j, prec).unwrap();
                let exact = rug::Float::with_val(prec, &row[j]);
                let gap = rug::Float::with_val(prec, exact / lead - 1u32).abs();
                assert!(
                    gap < rug::Float::with_val(prec, 1e-8),
                    "{} j={j} gap={gap}",
                    family.as_str()
                );
            }
        }
    }
}
