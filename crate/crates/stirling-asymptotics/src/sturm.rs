//! Exact root counting over half-open rational intervals via Sturm chains.
//!
//! Chains are kept as primitive integer polynomials (content stripped after
//! every remainder step) so coefficient growth stays subresultant-sized.
//! Sign variations are taken with zeros dropped, which makes the count over
//! `(a, b]` exact even when an endpoint is itself a root: the variation at
//! a root of the squarefree part equals its right limit, so a root at `a`
//! is excluded and a root at `b` is included, with no endpoint shifts.

use rug::{Integer, Rational};

use crate::error::{Error, Result};
use crate::poly::RatPoly;

/// Certificate for the number of distinct real roots in `(a, b]`.
#[derive(Debug, Clone)]
pub struct RootCertificate {
    pub interval: (Rational, Rational),
    /// Number of distinct real roots in the half-open interval.
    pub count: usize,
    /// True iff `gcd(p, p')` is constant, i.e. all roots of `p` are simple.
    pub simple: bool,
}

type IntPoly = Vec<Integer>;

fn trim(mut p: IntPoly) -> IntPoly {
    while p.last().is_some_and(|c| *c == 0) {
        p.pop();
    }
    p
}

fn content(p: &IntPoly) -> Integer {
    let mut g = Integer::new();
    for c in p {
        g.gcd_mut(c);
        if g == 1 {
            break;
        }
    }
    g
}

/// Divides by the content, preserving sign.
fn primitive(p: IntPoly) -> IntPoly {
    let p = trim(p);
    if p.is_empty() {
        return p;
    }
    let g = content(&p);
    p.into_iter().map(|c| c / &g).collect()
}

fn to_int_poly(p: &RatPoly) -> IntPoly {
    let mut lcm = Integer::from(1);
    for c in p.coeffs() {
        lcm.lcm_mut(c.denom());
    }
    let ints = p
        .coeffs()
        .iter()
        .map(|c| Integer::from(c.numer() * &lcm) / c.denom())
        .collect();
    primitive(ints)
}

fn derivative(p: &IntPoly) -> IntPoly {
    if p.len() <= 1 {
        return Vec::new();
    }
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| Integer::from(i as u64) * c)
        .collect()
}

/// Sign of `p(num/den)` with `den > 0`, via `Σ c_i num^i den^{d-i}`.
fn eval_sign(p: &IntPoly, num: &Integer, den: &Integer) -> i32 {
    if p.is_empty() {
        return 0;
    }
    let d = p.len() - 1;
    let mut acc = p[d].clone();
    let mut den_pow = Integer::from(1);
    for i in (0..d).rev() {
        acc *= num;
        den_pow *= den;
        acc += Integer::from(&p[i] * &den_pow);
    }
    match acc.cmp0() {
        std::cmp::Ordering::Less => -1,
        std::cmp::Ordering::Equal => 0,
        std::cmp::Ordering::Greater => 1,
    }
}

/// Polynomial remainder of `f mod g` over the rationals, returned as a
/// primitive integer polynomial with the sign of the true remainder.
fn rem_primitive(f: &IntPoly, g: &IntPoly) -> IntPoly {
    debug_assert!(!g.is_empty());
    let mut r: Vec<Rational> = f.iter().map(Rational::from).collect();
    let dg = g.len() - 1;
    let glead = Rational::from(&g[dg]);
    while r.len() > dg {
        let dr = r.len() - 1;
        let q = Rational::from(&r[dr] / &glead);
        if q != 0u32 {
            for i in 0..dg {
                let t = Rational::from(&q * &g[i]);
                r[dr - dg + i] -= t;
            }
        }
        r.pop();
        while r.last().is_some_and(|c| *c == 0u32) {
            r.pop();
        }
    }
    let mut lcm = Integer::from(1);
    for c in &r {
        lcm.lcm_mut(c.denom());
    }
    let ints: IntPoly = r
        .iter()
        .map(|c| Integer::from(c.numer() * &lcm) / c.denom())
        .collect();
    primitive(ints)
}

/// Exact quotient `f / g` over the rationals (remainder must vanish),
/// returned primitive.
fn div_exact_primitive(f: &IntPoly, g: &IntPoly) -> IntPoly {
    let mut r: Vec<Rational> = f.iter().map(Rational::from).collect();
    let dg = g.len() - 1;
    let glead = Rational::from(&g[dg]);
    let mut q = vec![Rational::new(); f.len().saturating_sub(dg)];
    while r.len() > dg {
        let dr = r.len() - 1;
        let c = Rational::from(&r[dr] / &glead);
        q[dr - dg] = c.clone();
        if c != 0u32 {
            for i in 0..dg {
                let t = Rational::from(&c * &g[i]);
                r[dr - dg + i] -= t;
            }
        }
        r.pop();
        while r.last().is_some_and(|c| *c == 0u32) {
            r.pop();
        }
    }
    debug_assert!(r.is_empty(), "division was not exact");
    let mut lcm = Integer::from(1);
    for c in &q {
        lcm.lcm_mut(c.denom());
    }
    let ints: IntPoly = q
        .iter()
        .map(|c| Integer::from(c.numer() * &lcm) / c.denom())
        .collect();
    primitive(ints)
}

/// Primitive gcd by the Euclidean remainder sequence.
fn gcd_primitive(f: &IntPoly, g: &IntPoly) -> IntPoly {
    let mut a = primitive(f.clone());
    let mut b = primitive(g.clone());
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let r = rem_primitive(&a, &b);
        a = b;
        b = r;
    }
    if !a.is_empty() && *a.last().unwrap() < 0 {
        a = a.into_iter().map(|c| -c).collect();
    }
    a
}

fn sturm_chain(p: &IntPoly) -> Vec<IntPoly> {
    let mut chain = vec![p.clone(), primitive(derivative(p))];
    loop {
        let last = &chain[chain.len() - 1];
        if last.len() <= 1 {
            break;
        }
        let prev = &chain[chain.len() - 2];
        let mut r = rem_primitive(prev, last);
        if r.is_empty() {
            break;
        }
        for c in &mut r {
            *c = -c.clone();
        }
        chain.push(r);
    }
    chain
}

/// Sign variations at `num/den` with zeros dropped.
fn sign_changes(chain: &[IntPoly], num: &Integer, den: &Integer) -> usize {
    let mut changes = 0;
    let mut prev = 0;
    for p in chain {
        let s = eval_sign(p, num, den);
        if s != 0 {
            if prev != 0 && s != prev {
                changes += 1;
            }
            prev = s;
        }
    }
    changes
}

fn rational_parts(q: &Rational) -> (Integer, Integer) {
    (q.numer().clone(), q.denom().clone())
}

/// Counts the distinct real roots of `p` in the half-open interval `(a, b]`.
/// Endpoints may be roots; `a` is excluded and `b` included exactly.
pub fn sturm_count(p: &RatPoly, a: &Rational, b: &Rational) -> Result<RootCertificate> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if a >= b {
        return Err(Error::InvalidInterval);
    }
    let f = to_int_poly(p);
    let fp = primitive(derivative(&f));
    let g = gcd_primitive(&f, &fp);
    let simple = g.len() <= 1;
    let sf = if simple {
        f
    } else {
        div_exact_primitive(&f, &g)
    };

    let count = if sf.len() <= 1 {
        0
    } else {
        let chain = sturm_chain(&sf);
        let (an, ad) = rational_parts(a);
        let (bn, bd) = rational_parts(b);
        let va = sign_changes(&chain, &an, &ad);
        let vb = sign_changes(&chain, &bn, &bd);
        va - vb
    };

    Ok(RootCertificate {
        interval: (a.clone(), b.clone()),
        count,
        simple,
    })
}

/// Counts the distinct real roots in `(-inf, b]` by replacing the lower
/// endpoint with an exact Cauchy bound below every root.
pub fn count_roots_at_most(p: &RatPoly, b: &Rational) -> Result<RootCertificate> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let f = to_int_poly(p);
    if f.len() <= 1 {
        return sturm_count(p, &(b.clone() - 1u32), b);
    }
    let lead = f.last().unwrap();
    let mut max_ratio = Rational::new();
    for c in &f[..f.len() - 1] {
        let ratio = Rational::from((Integer::from(c.abs_ref()), Integer::from(lead.abs_ref())));
        if ratio > max_ratio {
            max_ratio = ratio;
        }
    }
    // all roots satisfy |r| <= 1 + max|c_i / c_d|
    let bound = max_ratio + 2u32;
    let a = -bound;
    let a = if a < *b { a } else { b.clone() - 1u32 };
    sturm_count(p, &a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{euler_frobenius, l_poly, q_poly};

    fn r(n: i64) -> Rational {
        Rational::from(n)
    }

    fn rq(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    #[test]
    fn quadratic_roots_half_open() {
        // (x - 1)(x - 2)
        let p = RatPoly::from_coeffs(vec![r(2), r(-3), r(1)]);
        assert_eq!(sturm_count(&p, &r(0), &r(3)).unwrap().count, 2);
        // upper endpoint root is included
        assert_eq!(sturm_count(&p, &r(0), &r(2)).unwrap().count, 2);
        // lower endpoint root is excluded
        assert_eq!(sturm_count(&p, &r(1), &r(2)).unwrap().count, 1);
        assert_eq!(sturm_count(&p, &r(1), &rq(3, 2)).unwrap().count, 0);
        assert!(sturm_count(&p, &r(0), &r(3)).unwrap().simple);
    }

    #[test]
    fn both_endpoints_roots() {
        // roots exactly at -1 and 0
        let p = RatPoly::from_coeffs(vec![r(0), r(1), r(1)]); // x(x+1)
        assert_eq!(sturm_count(&p, &r(-1), &r(0)).unwrap().count, 1);
        assert_eq!(sturm_count(&p, &r(-2), &r(0)).unwrap().count, 2);
        assert_eq!(sturm_count(&p, &r(-2), &rq(-1, 2)).unwrap().count, 1);
    }

    #[test]
    fn constant_has_no_roots() {
        let p = RatPoly::constant(r(1));
        let cert = sturm_count(&p, &r(-5), &r(5)).unwrap();
        assert_eq!(cert.count, 0);
        assert!(cert.simple);
    }

    #[test]
    fn zero_poly_and_bad_interval_rejected() {
        assert!(matches!(
            sturm_count(&RatPoly::zero(), &r(0), &r(1)),
            Err(Error::ZeroPolynomial)
        ));
        let p = RatPoly::from_coeffs(vec![r(1), r(1)]);
        assert!(matches!(
            sturm_count(&p, &r(1), &r(0)),
            Err(Error::InvalidInterval)
        ));
    }

    #[test]
    fn multiple_roots_detected() {
        // (x - 1)^2 (x + 2)
        let sq = RatPoly::from_coeffs(vec![r(-1), r(1)]);
        let p = sq.mul(&sq).mul(&RatPoly::from_coeffs(vec![r(2), r(1)]));
        let cert = sturm_count(&p, &r(-3), &r(3)).unwrap();
        assert_eq!(cert.count, 2, "distinct roots");
        assert!(!cert.simple);
    }

    #[test]
    fn q_poly_roots_in_unit_interval() {
        let cert = sturm_count(&q_poly(3), &r(-1), &r(0)).unwrap();
        assert_eq!(cert.count, 3);
        assert!(cert.simple);
    }

    #[test]
    fn l_poly_roots_in_quarter_interval() {
        let cert = sturm_count(&l_poly(3), &rq(-1, 4), &r(0)).unwrap();
        assert_eq!(cert.count, 3);
        assert!(cert.simple);
    }

    #[test]
    fn euler_frobenius_root_structure() {
        // P_6: six simple roots in (-inf, 0], with 0 and -1 among them
        let p = euler_frobenius(6);
        let all = count_roots_at_most(&p, &r(0)).unwrap();
        assert_eq!(all.count, 6);
        assert!(all.simple);
        assert_eq!(p.eval(&r(0)), 0);
        assert_eq!(p.eval(&r(-1)), 0);
        // split: two interior roots strictly inside each of (-inf,-1), (-1,0)
        let upper = sturm_count(&p, &r(-1), &r(0)).unwrap();
        assert_eq!(upper.count, 3); // two interior + the root at 0
        let lower = count_roots_at_most(&p, &r(-1)).unwrap();
        assert_eq!(lower.count, 3); // two interior + the root at -1
    }

    #[test]
    fn random_products_counted_exactly() {
        // products of distinct linear factors with known rational roots
        let roots = [rq(-7, 2), r(-2), rq(-1, 3), r(0), rq(1, 2), r(4)];
        let mut p = RatPoly::constant(r(1));
        for root in &roots {
            let factor = RatPoly::from_coeffs(vec![-root.clone(), r(1)]);
            p = p.mul(&factor);
        }
        let cert = sturm_count(&p, &r(-4), &r(4)).unwrap();
        assert_eq!(cert.count, 6);
        let cert = sturm_count(&p, &r(-2), &r(0)).unwrap();
        assert_eq!(cert.count, 2, "(-2, 0] holds -1/3 and 0");
        let cert = count_roots_at_most(&p, &r(-2)).unwrap();
        assert_eq!(cert.count, 2, "(-inf, -2] holds -7/2 and -2");
    }
}
