//! Roots of univariate polynomials that lie in the coefficient field.
//!
//! Over Q the rational root theorem gives a finite candidate set. Over Q(t)
//! a root `p(t)/q(t)` specializes at a generic `t0` to a rational root of the
//! specialized polynomial; that root is lifted to a power series in
//! `t - t0`, recovered as a rational function by Padé reconstruction, and
//! accepted only after exact substitution.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ratfunc::{primitive_int, q_divrem, q_gcd, QPoly};
use super::{Field, RatFunc};
use crate::poly::UniPoly;

fn trim(p: &mut QPoly) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn horner(p: &[BigRational], x: &BigRational) -> BigRational {
    p.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
}

fn positive_divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    if n.is_zero() {
        return Vec::new();
    }
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    let mut rest = n.clone();
    let mut p = BigInt::from(2u32);
    let limit = rest.sqrt();
    while p <= limit && &p * &p <= rest {
        let mut e = 0;
        while (&rest % &p).is_zero() {
            rest /= &p;
            e += 1;
        }
        if e > 0 {
            factors.push((p.clone(), e));
        }
        p += if p == BigInt::from(2u32) { 1u32 } else { 2u32 };
    }
    if !rest.is_one() {
        factors.push((rest, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (prime, e) in factors {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pw = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pw);
                pw *= &prime;
            }
        }
        divs = next;
    }
    divs
}

/// Distinct rational roots, ascending.
pub(crate) fn rational_roots(coeffs: &[BigRational]) -> Vec<BigRational> {
    let mut p: QPoly = coeffs.to_vec();
    trim(&mut p);
    if p.len() <= 1 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let zeros = p.iter().take_while(|c| c.is_zero()).count();
    if zeros > 0 {
        out.push(BigRational::zero());
        p.drain(..zeros);
    }
    if p.len() > 1 {
        let ip = primitive_int(&p);
        let lead = positive_divisors(ip.last().unwrap());
        let tail = positive_divisors(&ip[0]);
        for a in &tail {
            for b in &lead {
                if !a.gcd(b).is_one() {
                    continue;
                }
                for sign in [1, -1] {
                    let cand = BigRational::new(a * sign, b.clone());
                    if horner(&p, &cand).is_zero() {
                        out.push(cand);
                    }
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// `f(s + a)` for a polynomial `f` in ascending coefficients.
fn taylor_shift(f: &[BigRational], a: &BigRational) -> QPoly {
    let mut out: QPoly = Vec::new();
    for c in f.iter().rev() {
        // out = out * (s + a) + c
        let mut next = vec![BigRational::zero(); out.len() + 1];
        for (i, x) in out.iter().enumerate() {
            next[i + 1] += x;
            next[i] += x * a;
        }
        next[0] += c;
        out = next;
    }
    trim(&mut out);
    out
}

fn series_mul(a: &[BigRational], b: &[BigRational], n: usize) -> QPoly {
    let mut out = vec![BigRational::zero(); n];
    for (i, x) in a.iter().enumerate().take(n) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// Padé reconstruction: `p/q` with `deg p, deg q <= bound` matching the
/// series modulo `s^n`, where `n > 2 * bound`.
fn pade(series: &[BigRational], bound: usize) -> Option<(QPoly, QPoly)> {
    let n = series.len();
    let mut r0: QPoly = vec![BigRational::zero(); n];
    r0.push(BigRational::one());
    let mut r1: QPoly = series.to_vec();
    trim(&mut r1);
    let mut t0: QPoly = Vec::new();
    let mut t1: QPoly = vec![BigRational::one()];
    while r1.len() > bound + 1 {
        let (quo, rem) = q_divrem(&r0, &r1);
        let qt = {
            let mut prod = vec![BigRational::zero(); quo.len() + t1.len()];
            for (i, a) in quo.iter().enumerate() {
                for (j, b) in t1.iter().enumerate() {
                    prod[i + j] += a * b;
                }
            }
            prod
        };
        let mut next_t: QPoly = (0..t0.len().max(qt.len()))
            .map(|i| t0.get(i).cloned().unwrap_or_default() - qt.get(i).cloned().unwrap_or_default())
            .collect();
        trim(&mut next_t);
        r0 = r1;
        r1 = rem;
        t0 = t1;
        t1 = next_t;
    }
    if t1.len() > bound + 1 || t1.first().is_none_or(Zero::is_zero) {
        return None;
    }
    Some((r1, t1))
}

fn ratfunc_of(p: &[BigRational], q: &[BigRational]) -> Option<RatFunc> {
    RatFunc::from_rational_coeffs(p).div(&RatFunc::from_rational_coeffs(q)).ok()
}

/// Distinct roots in Q(t), sorted by the canonical order.
pub(crate) fn ratfunc_roots(coeffs: &[RatFunc]) -> Vec<RatFunc> {
    let mut poly = UniPoly::new(coeffs.to_vec());
    if poly.degree().is_none_or(|d| d == 0) {
        return Vec::new();
    }
    if poly.coeffs().iter().all(Field::is_rational_constant) {
        let qs: Vec<BigRational> = poly.coeffs().iter().map(|c| c.to_rational().unwrap()).collect();
        return rational_roots(&qs).iter().map(RatFunc::from_rational).collect();
    }
    let mut out = Vec::new();
    let zeros = poly.coeffs().iter().take_while(|c| c.is_zero()).count();
    if zeros > 0 {
        out.push(RatFunc::zero());
        poly = UniPoly::new(poly.coeffs()[zeros..].to_vec());
    }
    let sqfree = poly.squarefree_part();
    if sqfree.degree().is_some_and(|d| d > 0) {
        out.extend(lift_roots(&sqfree));
    }
    out.sort_by(|a, b| a.canonical_cmp(b));
    out.dedup();
    out
}

fn lift_roots(poly: &UniPoly<RatFunc>) -> Vec<RatFunc> {
    // Clear denominators: G(t, Y) = sum_i g_i(t) Y^i with g_i in Q[t].
    let mut lcm: QPoly = vec![BigRational::one()];
    for c in poly.coeffs() {
        let d = c.den_q();
        let g = q_gcd(&lcm, &d);
        let (part, _) = q_divrem(&d, &g);
        lcm = mul_q(&lcm, &part);
    }
    let g: Vec<QPoly> = poly
        .coeffs()
        .iter()
        .map(|c| {
            let (f, _) = q_divrem(&lcm, &c.den_q());
            let mut v = mul_q(&c.num_q(), &f);
            trim(&mut v);
            v
        })
        .collect();
    let bound = g.iter().map(|p| p.len().saturating_sub(1)).max().unwrap_or(0);
    let deg = g.len() - 1;
    let n = 2 * bound + 2;

    let mut found = Vec::new();
    for attempt in 0..64i64 {
        let t0 = BigRational::from_integer(BigInt::from(if attempt % 2 == 0 { attempt / 2 } else { -(attempt + 1) / 2 }));
        let spec: QPoly = g.iter().map(|p| horner(p, &t0)).collect();
        if spec[deg].is_zero() {
            continue;
        }
        let dspec: QPoly = spec.iter().enumerate().skip(1).map(|(i, c)| c * BigRational::from_integer(i.into())).collect();
        if q_gcd(&spec, &dspec).len() > 1 {
            continue;
        }
        let shifted: Vec<QPoly> = g.iter().map(|p| taylor_shift(p, &t0)).collect();
        for r0 in rational_roots(&spec) {
            let slope = horner(&dspec, &r0);
            let mut r = vec![BigRational::zero(); n];
            r[0] = r0.clone();
            for _ in 0..n {
                let mut acc = vec![BigRational::zero(); n];
                for gi in shifted.iter().rev() {
                    acc = series_mul(&acc, &r, n);
                    for (k, c) in gi.iter().enumerate().take(n) {
                        acc[k] += c;
                    }
                }
                if acc.iter().all(Zero::is_zero) {
                    break;
                }
                for k in 0..n {
                    let step = &acc[k] / &slope;
                    r[k] -= step;
                }
            }
            let Some((p, q)) = pade(&r, bound) else { continue };
            let minus = -t0.clone();
            let Some(root) = ratfunc_of(&taylor_shift(&p, &minus), &taylor_shift(&q, &minus)) else {
                continue;
            };
            if poly.eval(&root).is_zero() {
                found.push(root);
            }
        }
        return found;
    }
    found
}

fn mul_q(a: &[BigRational], b: &[BigRational]) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}
