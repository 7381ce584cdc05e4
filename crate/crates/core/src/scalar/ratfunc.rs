use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{roots, Field, ScalarError};

/// Element of Q(t): a quotient of integer polynomials in `t`.
///
/// Canonical form: numerator and denominator are coprime in Q[t], their
/// integer coefficients have no common factor, and the denominator has a
/// positive leading coefficient. Zero is `0/1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFunc {
    /// Ascending coefficients, no trailing zeros.
    num: Vec<BigInt>,
    /// Ascending coefficients, no trailing zeros, never empty.
    den: Vec<BigInt>,
}

pub(crate) type IntPoly = Vec<BigInt>;
pub(crate) type QPoly = Vec<BigRational>;

fn trim<T: Zero>(p: &mut Vec<T>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn ip_add(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    let mut out: IntPoly = (0..a.len().max(b.len()))
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_default();
            match b.get(i) {
                Some(y) => x + y,
                None => x,
            }
        })
        .collect();
    trim(&mut out);
    out
}

fn ip_mul(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

fn ip_scale(a: &[BigInt], c: &BigInt) -> IntPoly {
    if c.is_zero() {
        return Vec::new();
    }
    a.iter().map(|x| x * c).collect()
}

fn content(a: &[BigInt]) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

pub(crate) fn to_qpoly(a: &[BigInt]) -> QPoly {
    a.iter().map(|x| BigRational::from_integer(x.clone())).collect()
}

/// Scales a rational polynomial to a primitive integer polynomial with
/// positive leading coefficient.
pub(crate) fn primitive_int(a: &[BigRational]) -> IntPoly {
    let lcm = a.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let mut out: IntPoly = a.iter().map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    trim(&mut out);
    let g = content(&out);
    if !g.is_zero() {
        for c in out.iter_mut() {
            *c = &*c / &g;
        }
    }
    if out.last().is_some_and(Signed::is_negative) {
        for c in out.iter_mut() {
            *c = -&*c;
        }
    }
    out
}

pub(crate) fn q_divrem(a: &[BigRational], b: &[BigRational]) -> (QPoly, QPoly) {
    let mut rem: QPoly = a.to_vec();
    trim(&mut rem);
    let db = b.len() - 1;
    let lc = b[db].clone();
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let c = rem.last().unwrap() / &lc;
        for (i, bc) in b.iter().enumerate() {
            rem[shift + i] -= &c * bc;
        }
        quot[shift] = c;
        rem.pop();
        trim(&mut rem);
    }
    trim(&mut quot);
    (quot, rem)
}

pub(crate) fn q_gcd(a: &[BigRational], b: &[BigRational]) -> QPoly {
    let mut x: QPoly = a.to_vec();
    let mut y: QPoly = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let (_, r) = q_divrem(&x, &y);
        x = y;
        y = r;
    }
    if let Some(lc) = x.last().cloned() {
        for c in x.iter_mut() {
            *c = &*c / &lc;
        }
    }
    x
}

/// Exact quotient of integer polynomials when `b` is primitive and divides `a`.
fn ip_divexact(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    let mut rem: IntPoly = a.to_vec();
    trim(&mut rem);
    let lc = b.last().expect("nonzero divisor");
    if rem.len() < b.len() {
        debug_assert!(rem.is_empty());
        return Vec::new();
    }
    let mut quot = vec![BigInt::zero(); rem.len() + 1 - b.len()];
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let c = rem.last().unwrap() / lc;
        for (i, bc) in b.iter().enumerate() {
            rem[shift + i] -= &c * bc;
        }
        debug_assert!(rem.last().unwrap().is_zero());
        quot[shift] = c;
        rem.pop();
        trim(&mut rem);
    }
    debug_assert!(rem.is_empty());
    trim(&mut quot);
    quot
}

fn ip_primitive(mut a: IntPoly) -> IntPoly {
    trim(&mut a);
    let g = content(&a);
    if !g.is_zero() && !g.is_one() {
        for c in a.iter_mut() {
            *c = &*c / &g;
        }
    }
    if a.last().is_some_and(Signed::is_negative) {
        for c in a.iter_mut() {
            *c = -&*c;
        }
    }
    a
}

/// Pseudo-remainder `lc(b)^(deg a - deg b + 1) a mod b`.
fn ip_prem(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    let mut rem: IntPoly = a.to_vec();
    let lc = b.last().unwrap();
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let c = rem.last().unwrap().clone();
        for x in rem.iter_mut() {
            *x *= lc;
        }
        for (i, bc) in b.iter().enumerate() {
            rem[shift + i] -= &c * bc;
        }
        rem.pop();
        trim(&mut rem);
    }
    rem
}

/// Primitive gcd in Z[t] with positive leading coefficient.
fn ip_gcd(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    let (mut x, mut y) = (ip_primitive(a.to_vec()), ip_primitive(b.to_vec()));
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let r = ip_primitive(ip_prem(&x, &y));
        x = y;
        y = r;
    }
    x
}

fn cancel(n: &[BigInt], d: &[BigInt]) -> (IntPoly, IntPoly) {
    if n.len() <= 1 || d.len() <= 1 || coprime_mod_p(n, d) {
        return (n.to_vec(), d.to_vec());
    }
    let g = ip_gcd(n, d);
    if g.len() <= 1 {
        return (n.to_vec(), d.to_vec());
    }
    (ip_divexact(n, &g), ip_divexact(d, &g))
}

const PRIME: u64 = (1 << 61) - 1;

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % PRIME as u128) as u64
}

fn invmod(a: u64) -> u64 {
    let (mut base, mut e, mut acc) = (a, PRIME - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, base);
        }
        base = mulmod(base, base);
        e >>= 1;
    }
    acc
}

fn reduce_mod(a: &[BigInt]) -> Vec<u64> {
    let p = BigInt::from(PRIME);
    a.iter().map(|c| c.mod_floor(&p).try_into().expect("reduced below the prime")).collect()
}

/// Sufficient test for coprimality: the images mod a prime not dividing
/// either leading coefficient are coprime.
fn coprime_mod_p(a: &[BigInt], b: &[BigInt]) -> bool {
    let (mut x, mut y) = (reduce_mod(a), reduce_mod(b));
    if x.last().is_none_or(|&c| c == 0) || y.last().is_none_or(|&c| c == 0) {
        return false;
    }
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while y.len() > 1 {
        let inv = invmod(*y.last().unwrap());
        while x.len() >= y.len() {
            let shift = x.len() - y.len();
            let c = mulmod(*x.last().unwrap(), inv);
            for (i, &yc) in y.iter().enumerate() {
                x[shift + i] = (x[shift + i] + PRIME - mulmod(c, yc)) % PRIME;
            }
            x.pop();
            while x.last() == Some(&0) {
                x.pop();
            }
        }
        if x.is_empty() {
            return false;
        }
        std::mem::swap(&mut x, &mut y);
    }
    true
}

fn fmt_tpoly(p: &[BigInt], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if p.is_empty() {
        return write!(f, "0");
    }
    let mut first = true;
    for (e, c) in p.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        if c.is_negative() {
            write!(f, "-")?;
        } else if !first {
            write!(f, "+")?;
        }
        first = false;
        match e {
            0 => write!(f, "{mag}")?,
            _ => {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                if e == 1 {
                    write!(f, "t")?;
                } else {
                    write!(f, "t^{e}")?;
                }
            }
        }
    }
    Ok(())
}

impl RatFunc {
    /// Builds `num/den` from ascending integer coefficients and canonicalizes.
    pub fn from_int_coeffs(num: Vec<BigInt>, den: Vec<BigInt>) -> Result<Self, ScalarError> {
        let mut den = den;
        trim(&mut den);
        if den.is_empty() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::canonical(num, den))
    }

    /// Builds a polynomial in `t` from ascending rational coefficients.
    pub fn from_rational_coeffs(coeffs: &[BigRational]) -> Self {
        let lcm = coeffs.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let num = coeffs
            .iter()
            .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
            .collect();
        Self::canonical(num, vec![lcm])
    }

    pub fn numerator(&self) -> &[BigInt] {
        &self.num
    }

    pub fn denominator(&self) -> &[BigInt] {
        &self.den
    }

    /// Degree in `t` of the numerator and denominator.
    pub fn degrees(&self) -> (usize, usize) {
        (self.num.len().saturating_sub(1), self.den.len() - 1)
    }

    pub(crate) fn num_q(&self) -> QPoly {
        to_qpoly(&self.num)
    }

    pub(crate) fn den_q(&self) -> QPoly {
        to_qpoly(&self.den)
    }

    /// Value at a rational `t`, `None` at a pole.
    pub fn eval(&self, t: &BigRational) -> Option<BigRational> {
        let horner = |p: &[BigInt]| {
            p.iter()
                .rev()
                .fold(BigRational::zero(), |acc, c| acc * t + BigRational::from_integer(c.clone()))
        };
        let d = horner(&self.den);
        if d.is_zero() {
            None
        } else {
            Some(horner(&self.num) / d)
        }
    }

    fn canonical(mut num: IntPoly, mut den: IntPoly) -> Self {
        trim(&mut num);
        trim(&mut den);
        if num.is_empty() {
            return RatFunc { num, den: vec![BigInt::one()] };
        }
        if den.len() > 1 && num.len() > 1 && !coprime_mod_p(&num, &den) {
            let g = ip_gcd(&num, &den);
            if g.len() > 1 {
                num = ip_divexact(&num, &g);
                den = ip_divexact(&den, &g);
            }
        }
        let c = content(&num).gcd(&content(&den));
        if !c.is_one() {
            for x in num.iter_mut().chain(den.iter_mut()) {
                *x = &*x / &c;
            }
        }
        if den.last().unwrap().is_negative() {
            for x in num.iter_mut().chain(den.iter_mut()) {
                *x = -&*x;
            }
        }
        RatFunc { num, den }
    }

    fn den_is_constant(&self) -> bool {
        self.den.len() == 1
    }
}

impl Field for RatFunc {
    const NAME: &'static str = "rational-functions";

    fn zero() -> Self {
        RatFunc { num: Vec::new(), den: vec![BigInt::one()] }
    }

    fn one() -> Self {
        RatFunc { num: vec![BigInt::one()], den: vec![BigInt::one()] }
    }

    fn from_rational(q: &BigRational) -> Self {
        Self::canonical(vec![q.numer().clone()], vec![q.denom().clone()])
    }

    fn parameter() -> Option<Self> {
        Some(RatFunc { num: vec![BigInt::zero(), BigInt::one()], den: vec![BigInt::one()] })
    }

    fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    fn add(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den_is_constant() && rhs.den_is_constant() {
            let (d1, d2) = (&self.den[0], &rhs.den[0]);
            let num = ip_add(&ip_scale(&self.num, d2), &ip_scale(&rhs.num, d1));
            return Self::canonical(num, vec![d1 * d2]);
        }
        if self.den == rhs.den {
            return Self::canonical(ip_add(&self.num, &rhs.num), self.den.clone());
        }
        if coprime_mod_p(&self.den, &rhs.den) {
            let num = ip_add(&ip_mul(&self.num, &rhs.den), &ip_mul(&rhs.num, &self.den));
            return Self::canonical(num, ip_mul(&self.den, &rhs.den));
        }
        let g = ip_gcd(&self.den, &rhs.den);
        let (d1, d2) = (ip_divexact(&self.den, &g), ip_divexact(&rhs.den, &g));
        let num = ip_add(&ip_mul(&self.num, &d2), &ip_mul(&rhs.num, &d1));
        Self::canonical(num, ip_mul(&self.den, &d2))
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        if self.den_is_constant() && rhs.den_is_constant() {
            return Self::canonical(ip_mul(&self.num, &rhs.num), ip_mul(&self.den, &rhs.den));
        }
        // cross-cancel before multiplying
        let (n1, d2) = cancel(&self.num, &rhs.den);
        let (n2, d1) = cancel(&rhs.num, &self.den);
        Self::canonical(ip_mul(&n1, &n2), ip_mul(&d1, &d2))
    }

    fn neg(&self) -> Self {
        RatFunc { num: self.num.iter().map(|c| -c).collect(), den: self.den.clone() }
    }

    fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let mut out = RatFunc { num: self.den.clone(), den: self.num.clone() };
        if out.den.last().unwrap().is_negative() {
            out.num.iter_mut().for_each(|c| *c = -&*c);
            out.den.iter_mut().for_each(|c| *c = -&*c);
        }
        Ok(out)
    }

    fn to_rational(&self) -> Option<BigRational> {
        if self.num.len() <= 1 && self.den.len() == 1 {
            let n = self.num.first().cloned().unwrap_or_default();
            Some(BigRational::new(n, self.den[0].clone()))
        } else {
            None
        }
    }

    fn canonical_cmp(&self, other: &Self) -> Ordering {
        if let (Some(a), Some(b)) = (self.to_rational(), other.to_rational()) {
            return a.cmp(&b);
        }
        (self.den.len(), self.num.len())
            .cmp(&(other.den.len(), other.num.len()))
            .then_with(|| self.den.iter().rev().cmp(other.den.iter().rev()))
            .then_with(|| self.num.iter().rev().cmp(other.num.iter().rev()))
    }

    fn roots(coeffs: &[Self]) -> Vec<Self> {
        roots::ratfunc_roots(coeffs)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let multi = |p: &[BigInt]| p.iter().filter(|c| !c.is_zero()).count() > 1;
        if self.den.len() == 1 && self.den[0].is_one() {
            return fmt_tpoly(&self.num, f);
        }
        if multi(&self.num) {
            write!(f, "(")?;
            fmt_tpoly(&self.num, f)?;
            write!(f, ")")?;
        } else {
            fmt_tpoly(&self.num, f)?;
        }
        write!(f, "/")?;
        if self.den.len() > 1 {
            write!(f, "(")?;
            fmt_tpoly(&self.den, f)?;
            write!(f, ")")
        } else {
            fmt_tpoly(&self.den, f)
        }
    }
}
