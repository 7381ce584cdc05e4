//! Sparse bivariate polynomials with a `(k, l)`-weighted grading.
//!
//! The weight of `x^i y^j` is `k*i + l*j`. All truncations in the crate are
//! by weight, never by total degree.

use std::collections::BTreeMap;
use std::fmt;

use crate::scalar::Field;

mod gcd;
mod uni;

pub use uni::UniPoly;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("substitution is not a strict change of coordinates")]
    NotStrictMap,
    #[error("polynomial is not divisible by the divisor")]
    NotDivisible,
    #[error("division by the zero polynomial")]
    DivisionByZero,
}

/// Weight of the monomial `x^i y^j`.
#[inline]
pub fn weight(k: u32, l: u32, i: u32, j: u32) -> i64 {
    k as i64 * i as i64 + l as i64 * j as i64
}

/// Monomials `x^i y^j` of weight exactly `m`, ascending in `i`.
pub fn monomials_of_weight(k: u32, l: u32, m: i64) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    if m < 0 {
        return out;
    }
    let (k64, l64) = (k as i64, l as i64);
    let mut i = 0i64;
    while k64 * i <= m {
        let rest = m - k64 * i;
        if rest % l64 == 0 {
            out.push((i as u32, (rest / l64) as u32));
        }
        i += 1;
    }
    out
}

/// Sparse polynomial in `x`, `y`; exponent pairs map to nonzero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BivPoly<F: Field> {
    terms: BTreeMap<(u32, u32), F>,
}

impl<F: Field> Default for BivPoly<F> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<F: Field> BivPoly<F> {
    pub fn zero() -> Self {
        BivPoly { terms: BTreeMap::new() }
    }

    pub fn constant(c: F) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    pub fn x() -> Self {
        Self::monomial(1, 0, F::one())
    }

    pub fn y() -> Self {
        Self::monomial(0, 1, F::one())
    }

    pub fn monomial(i: u32, j: u32, c: F) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((i, j), c);
        }
        BivPoly { terms }
    }

    pub fn from_terms(it: impl IntoIterator<Item = ((u32, u32), F)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in it {
            p.add_term(e, &c);
        }
        p
    }

    /// Adds `c * x^i y^j` in place.
    pub fn add_term(&mut self, e: (u32, u32), c: &F) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                let s = v.add(c);
                if s.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(e, c.clone());
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: u32, j: u32) -> F {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(F::zero)
    }

    pub fn get(&self, i: u32, j: u32) -> Option<&F> {
        self.terms.get(&(i, j))
    }

    /// Terms in `(i, j)` lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &F)> {
        self.terms.iter()
    }

    pub fn as_constant(&self) -> Option<F> {
        match self.terms.len() {
            0 => Some(F::zero()),
            1 => self.terms.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c);
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, &c.neg());
        }
        out
    }

    pub fn neg(&self) -> Self {
        BivPoly { terms: self.terms.iter().map(|(e, c)| (*e, c.neg())).collect() }
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        BivPoly { terms: self.terms.iter().map(|(e, v)| (*e, v.mul(c))).collect() }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut acc: BTreeMap<(u32, u32), F> = BTreeMap::new();
        for ((i1, j1), c1) in &self.terms {
            for ((i2, j2), c2) in &rhs.terms {
                let e = (i1 + i2, j1 + j2);
                let prod = c1.mul(c2);
                match acc.get_mut(&e) {
                    Some(v) => *v = v.add(&prod),
                    None => {
                        acc.insert(e, prod);
                    }
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        BivPoly { terms: acc }
    }

    /// Product with every monomial of weight above `max` discarded.
    pub fn mul_truncated(&self, rhs: &Self, k: u32, l: u32, max: i64) -> Self {
        if max < 0 {
            return Self::zero();
        }
        let mut rt: Vec<(i64, (u32, u32), &F)> =
            rhs.terms.iter().map(|(&(i, j), c)| (weight(k, l, i, j), (i, j), c)).collect();
        rt.sort_by_key(|t| t.0);
        let mut acc: BTreeMap<(u32, u32), F> = BTreeMap::new();
        for (&(i1, j1), c1) in &self.terms {
            let w1 = weight(k, l, i1, j1);
            if w1 > max {
                continue;
            }
            for &(w2, (i2, j2), c2) in &rt {
                if w1 + w2 > max {
                    break;
                }
                let e = (i1 + i2, j1 + j2);
                let prod = c1.mul(c2);
                match acc.get_mut(&e) {
                    Some(v) => *v = v.add(&prod),
                    None => {
                        acc.insert(e, prod);
                    }
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        BivPoly { terms: acc }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn mul_monomial(&self, i: u32, j: u32) -> Self {
        BivPoly { terms: self.terms.iter().map(|(&(a, b), c)| ((a + i, b + j), c.clone())).collect() }
    }

    /// Division by `x^i y^j`; `None` if some term is not divisible.
    pub fn div_monomial(&self, i: u32, j: u32) -> Option<Self> {
        let mut terms = BTreeMap::new();
        for (&(a, b), c) in &self.terms {
            if a < i || b < j {
                return None;
            }
            terms.insert((a - i, b - j), c.clone());
        }
        Some(BivPoly { terms })
    }

    pub fn diff_x(&self) -> Self {
        BivPoly {
            terms: self
                .terms
                .iter()
                .filter(|((i, _), _)| *i > 0)
                .map(|(&(i, j), c)| ((i - 1, j), c.mul(&F::from_i64(i as i64))))
                .collect(),
        }
    }

    pub fn diff_y(&self) -> Self {
        BivPoly {
            terms: self
                .terms
                .iter()
                .filter(|((_, j), _)| *j > 0)
                .map(|(&(i, j), c)| ((i, j - 1), c.mul(&F::from_i64(j as i64))))
                .collect(),
        }
    }

    pub fn map_coeffs(&self, f: impl Fn(&F) -> F) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, c)| (*e, f(c))))
    }

    /// Keeps the terms satisfying the predicate.
    pub fn filter(&self, keep: impl Fn(u32, u32) -> bool) -> Self {
        BivPoly { terms: self.terms.iter().filter(|((i, j), _)| keep(*i, *j)).map(|(e, c)| (*e, c.clone())).collect() }
    }

    /// Drops every monomial of weight above `max`.
    pub fn truncate(&self, k: u32, l: u32, max: i64) -> Self {
        self.filter(|i, j| weight(k, l, i, j) <= max)
    }

    /// The weight-`m` slice.
    pub fn homogeneous_part(&self, k: u32, l: u32, m: i64) -> Self {
        self.filter(|i, j| weight(k, l, i, j) == m)
    }

    pub fn is_quasi_homogeneous(&self, k: u32, l: u32) -> bool {
        self.min_weight(k, l) == self.max_weight(k, l)
    }

    pub fn min_weight(&self, k: u32, l: u32) -> Option<i64> {
        self.terms.keys().map(|&(i, j)| weight(k, l, i, j)).min()
    }

    pub fn max_weight(&self, k: u32, l: u32) -> Option<i64> {
        self.terms.keys().map(|&(i, j)| weight(k, l, i, j)).max()
    }

    pub fn deg_x(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.0).max()
    }

    pub fn deg_y(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.1).max()
    }

    /// Largest monomial `x^a y^b` dividing every term.
    pub fn monomial_content(&self) -> (u32, u32) {
        let a = self.terms.keys().map(|e| e.0).min().unwrap_or(0);
        let b = self.terms.keys().map(|e| e.1).min().unwrap_or(0);
        (a, b)
    }

    /// Splits into weight-homogeneous slices.
    pub fn qh_components(&self, k: u32, l: u32) -> GradedSlices<F> {
        let mut slices: BTreeMap<i64, BivPoly<F>> = BTreeMap::new();
        for (&(i, j), c) in &self.terms {
            slices.entry(weight(k, l, i, j)).or_default().terms.insert((i, j), c.clone());
        }
        GradedSlices { k, l, slices }
    }

    /// `k x P_x + l y P_y`.
    pub fn radial_apply(&self, k: u32, l: u32) -> Self {
        Self::from_terms(self.terms.iter().map(|(&(i, j), c)| ((i, j), c.mul(&F::from_i64(weight(k, l, i, j))))))
    }

    /// Value at `(x, y)`.
    pub fn eval(&self, x: &F, y: &F) -> F {
        let mut acc = F::zero();
        for (&(i, j), c) in &self.terms {
            acc = acc.add(&c.mul(&x.pow(i as i64).expect("nonnegative")).mul(&y.pow(j as i64).expect("nonnegative")));
        }
        acc
    }

    /// Coefficients of `P(1, Y)` as a univariate polynomial in `Y`.
    pub fn at_x_one(&self) -> UniPoly<F> {
        let n = self.deg_y().map_or(0, |d| d as usize + 1);
        let mut c = vec![F::zero(); n];
        for (&(_, j), v) in &self.terms {
            c[j as usize] = c[j as usize].add(v);
        }
        UniPoly::new(c)
    }

    /// Coefficients of `P(X, 1)` as a univariate polynomial in `X`.
    pub fn at_y_one(&self) -> UniPoly<F> {
        let n = self.deg_x().map_or(0, |d| d as usize + 1);
        let mut c = vec![F::zero(); n];
        for (&(i, _), v) in &self.terms {
            c[i as usize] = c[i as usize].add(v);
        }
        UniPoly::new(c)
    }

    /// Coefficients of `P(x, 0)` in `x`.
    pub fn at_y_zero(&self) -> UniPoly<F> {
        self.filter(|_, j| j == 0).at_y_one()
    }

    /// Coefficient of `y^j` as a polynomial in `x`.
    pub fn y_coeff(&self, j: u32) -> UniPoly<F> {
        self.filter(|_, b| b == j).at_y_one()
    }

    /// Greatest term in the `(j, i)` lexicographic order (y dominates).
    pub fn leading_term(&self) -> Option<((u32, u32), &F)> {
        self.terms.iter().max_by_key(|((i, j), _)| (*j, *i)).map(|(e, c)| (*e, c))
    }

    /// Printer with the weighted order: ascending weight, then ascending `i`.
    pub fn display_weighted(&self, k: u32, l: u32) -> String {
        let mut keys: Vec<&(u32, u32)> = self.terms.keys().collect();
        keys.sort_by_key(|&&(i, j)| (weight(k, l, i, j), i));
        if keys.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (n, e) in keys.into_iter().enumerate() {
            let c = &self.terms[e];
            let text = c.to_string();
            let (negative, body) = match text.strip_prefix('-') {
                Some(_) if !c.neg().to_string().starts_with('-') => (true, c.neg().to_string()),
                _ => (false, text),
            };
            if n == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mono = match *e {
                (0, 0) => String::new(),
                (i, j) => {
                    let mut parts = Vec::new();
                    for (v, p) in [('x', i), ('y', j)] {
                        match p {
                            0 => {}
                            1 => parts.push(v.to_string()),
                            _ => parts.push(format!("{v}^{p}")),
                        }
                    }
                    parts.join("*")
                }
            };
            let compound = body[1..].contains(['+', '-']);
            if mono.is_empty() {
                if compound {
                    out.push_str(&format!("({body})"));
                } else {
                    out.push_str(&body);
                }
            } else if body == "1" {
                out.push_str(&mono);
            } else if compound {
                out.push_str(&format!("({body})*{mono}"));
            } else {
                out.push_str(&format!("{body}*{mono}"));
            }
        }
        out
    }

    /// Exact quotient `self / q`.
    pub fn exact_div(&self, q: &Self) -> Result<Self, PolyError> {
        let Some((lq, lc)) = q.leading_term() else {
            return Err(PolyError::DivisionByZero);
        };
        let lc_inv = lc.inv().map_err(|_| PolyError::DivisionByZero)?;
        let mut rem = self.clone();
        let mut quo = Self::zero();
        while let Some(((i, j), c)) = rem.leading_term() {
            if i < lq.0 || j < lq.1 {
                return Err(PolyError::NotDivisible);
            }
            let t = BivPoly::monomial(i - lq.0, j - lq.1, c.mul(&lc_inv));
            rem = rem.sub(&q.mul(&t));
            quo = quo.add(&t);
        }
        Ok(quo)
    }

    /// Greatest common divisor, normalized so its leading term in the
    /// `(j, i)` lexicographic order has coefficient 1. `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        gcd::biv_gcd(self, other)
    }

    /// Scales so the leading term has coefficient 1.
    pub fn normalized(&self) -> Self {
        match self.leading_term() {
            Some((_, c)) => self.scale(&c.inv().expect("nonzero leading coefficient")),
            None => Self::zero(),
        }
    }

    /// `P(X, Y)` with every monomial of weight above `max` discarded.
    ///
    /// `X - x` must have weight above `k` and `Y - y` weight above `l`.
    pub fn compose_truncated(&self, x: &Self, y: &Self, k: u32, l: u32, max: i64) -> Result<Self, PolyError> {
        check_strict(x, y, k, l)?;
        Ok(self.compose_unchecked(x, y, k, l, max))
    }

    /// Truncated substitution without the strictness check. Correct below
    /// `max` whenever `X` has weight at least `k` and `Y` at least `l`.
    pub(crate) fn compose_unchecked(&self, x: &Self, y: &Self, k: u32, l: u32, max: i64) -> Self {
        if max < 0 || self.is_zero() {
            return Self::zero();
        }
        let by_i = {
            let mut m: BTreeMap<u32, Vec<(u32, &F)>> = BTreeMap::new();
            for (&(i, j), c) in &self.terms {
                m.entry(i).or_default().push((j, c));
            }
            m
        };
        let max_j = self.deg_y().unwrap_or(0);
        let mut ypow = vec![Self::one()];
        for j in 1..=max_j {
            let next = ypow[j as usize - 1].mul_truncated(y, k, l, max);
            ypow.push(next);
        }
        let mut out = Self::zero();
        let mut xpow = Self::one();
        let mut cur = 0u32;
        for (&i, row) in &by_i {
            let xw = k as i64 * i as i64;
            if xw > max {
                break;
            }
            while cur < i {
                xpow = xpow.mul_truncated(x, k, l, max);
                cur += 1;
            }
            let mut inner = Self::zero();
            for &(j, c) in row {
                let budget = max - xw;
                if (l as i64) * (j as i64) > budget {
                    continue;
                }
                inner = inner.add(&ypow[j as usize].truncate(k, l, budget).scale(c));
            }
            out = out.add(&xpow.mul_truncated(&inner, k, l, max));
        }
        out
    }
}

/// Strictness of `(X, Y)`: identity part plus strictly heavier terms.
pub(crate) fn check_strict<F: Field>(x: &BivPoly<F>, y: &BivPoly<F>, k: u32, l: u32) -> Result<(), PolyError> {
    let dx = x.sub(&BivPoly::x());
    let dy = y.sub(&BivPoly::y());
    let linear = |p: &BivPoly<F>| p.terms.keys().any(|&(i, j)| i + j <= 1);
    if linear(&dx) || linear(&dy) {
        return Err(PolyError::NotStrictMap);
    }
    if dx.min_weight(k, l).is_some_and(|w| w <= k as i64) || dy.min_weight(k, l).is_some_and(|w| w <= l as i64) {
        return Err(PolyError::NotStrictMap);
    }
    Ok(())
}

impl<F: Field> fmt::Display for BivPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_weighted(1, 1))
    }
}

/// A polynomial split by weight: slice `m` holds the monomials of weight `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSlices<F: Field> {
    pub k: u32,
    pub l: u32,
    pub slices: BTreeMap<i64, BivPoly<F>>,
}

impl<F: Field> GradedSlices<F> {
    pub fn get(&self, m: i64) -> BivPoly<F> {
        self.slices.get(&m).cloned().unwrap_or_default()
    }

    pub fn sum(&self) -> BivPoly<F> {
        self.slices.values().fold(BivPoly::zero(), |acc, p| acc.add(p))
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.slices.keys().copied().collect()
    }
}
