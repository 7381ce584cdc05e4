//! 1-forms `a dx + b dy`, their contractions with the radial field, the
//! exact/radial splitting, and the action of strict gauges.

use crate::poly::{weight, BivPoly};
use crate::scalar::Field;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormError {
    #[error("contraction with the radial field has a constant term")]
    DegreeZeroObstruction,
    #[error("gauge is not strict: {0}")]
    NotStrictGauge(&'static str),
}

/// `a dx + b dy`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OneForm<F: Field> {
    pub a: BivPoly<F>,
    pub b: BivPoly<F>,
}

impl<F: Field> Default for OneForm<F> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<F: Field> OneForm<F> {
    pub fn new(a: BivPoly<F>, b: BivPoly<F>) -> Self {
        OneForm { a, b }
    }

    pub fn zero() -> Self {
        OneForm { a: BivPoly::zero(), b: BivPoly::zero() }
    }

    /// The differential `dh`.
    pub fn exact(h: &BivPoly<F>) -> Self {
        OneForm { a: h.diff_x(), b: h.diff_y() }
    }

    /// `l y dx - k x dy`.
    pub fn radial(k: u32, l: u32) -> Self {
        OneForm {
            a: BivPoly::monomial(0, 1, F::from_i64(l as i64)),
            b: BivPoly::monomial(1, 0, F::from_i64(-(k as i64))),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        OneForm { a: self.a.add(&rhs.a), b: self.b.add(&rhs.b) }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        OneForm { a: self.a.sub(&rhs.a), b: self.b.sub(&rhs.b) }
    }

    pub fn scale(&self, c: &F) -> Self {
        OneForm { a: self.a.scale(c), b: self.b.scale(c) }
    }

    /// Multiplication by a function.
    pub fn mul_poly(&self, f: &BivPoly<F>) -> Self {
        OneForm { a: self.a.mul(f), b: self.b.mul(f) }
    }

    /// `q = k x a + l y b`.
    pub fn contract_q(&self, k: u32, l: u32) -> BivPoly<F> {
        let ka = self.a.mul_monomial(1, 0).scale(&F::from_i64(k as i64));
        let lb = self.b.mul_monomial(0, 1).scale(&F::from_i64(l as i64));
        ka.add(&lb)
    }

    /// `p = (k - v) x a + (l - u) y b`.
    pub fn contract_p(&self, k: u32, l: u32, u: u32, v: u32) -> BivPoly<F> {
        let xa = self.a.mul_monomial(1, 0).scale(&F::from_i64(k as i64 - v as i64));
        let yb = self.b.mul_monomial(0, 1).scale(&F::from_i64(l as i64 - u as i64));
        xa.add(&yb)
    }

    /// The graded piece `a_{m-k} dx + b_{m-l} dy`.
    pub fn slice(&self, k: u32, l: u32, m: i64) -> Self {
        OneForm { a: self.a.homogeneous_part(k, l, m - k as i64), b: self.b.homogeneous_part(k, l, m - l as i64) }
    }

    /// Keeps graded pieces of degree at most `dmax`.
    pub fn truncate(&self, k: u32, l: u32, dmax: i64) -> Self {
        OneForm { a: self.a.truncate(k, l, dmax - k as i64), b: self.b.truncate(k, l, dmax - l as i64) }
    }

    /// Lowest degree `m` with a nonzero graded piece.
    pub fn order(&self, k: u32, l: u32) -> Option<i64> {
        let a = self.a.min_weight(k, l).map(|w| w + k as i64);
        let b = self.b.min_weight(k, l).map(|w| w + l as i64);
        match (a, b) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, y) => x.or(y),
        }
    }

    pub fn display_weighted(&self, k: u32, l: u32) -> String {
        format!("({}) dx + ({}) dy", self.a.display_weighted(k, l), self.b.display_weighted(k, l))
    }
}

/// A form truncated at weighted degree `dmax`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Jet<F: Field> {
    pub form: OneForm<F>,
    pub k: u32,
    pub l: u32,
    pub dmax: i64,
}

impl<F: Field> Jet<F> {
    /// Truncates `form` so the storage invariant holds.
    pub fn new(form: OneForm<F>, k: u32, l: u32, dmax: i64) -> Self {
        Jet { form: form.truncate(k, l, dmax), k, l, dmax }
    }

    pub fn slice(&self, m: i64) -> OneForm<F> {
        self.form.slice(self.k, self.l, m)
    }

    pub fn contract_q(&self) -> BivPoly<F> {
        self.form.contract_q(self.k, self.l)
    }

    /// Same form with a smaller bound.
    pub fn retruncate(&self, dmax: i64) -> Self {
        Jet::new(self.form.clone(), self.k, self.l, dmax.min(self.dmax))
    }
}

/// `omega = dh + s (l y dx - k x dy)` below `dmax`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HSDecomposition<F: Field> {
    pub h: BivPoly<F>,
    pub s: BivPoly<F>,
    pub k: u32,
    pub l: u32,
    pub dmax: i64,
}

/// Splits a jet into its exact and radial parts.
pub fn decompose_hs<F: Field>(jet: &Jet<F>) -> Result<HSDecomposition<F>, FormError> {
    let (k, l) = (jet.k, jet.l);
    let q = jet.contract_q();
    if q.get(0, 0).is_some() {
        return Err(FormError::DegreeZeroObstruction);
    }
    let h = BivPoly::from_terms(q.terms().map(|(&(i, j), c)| {
        let w = F::from_i64(weight(k, l, i, j));
        ((i, j), c.div(&w).expect("positive weight"))
    }));
    let curl = jet.form.a.diff_y().sub(&jet.form.b.diff_x());
    let s = BivPoly::from_terms(curl.terms().map(|(&(i, j), c)| {
        let w = F::from_i64(weight(k, l, i, j) + k as i64 + l as i64);
        ((i, j), c.div(&w).expect("positive weight"))
    }));
    Ok(HSDecomposition { h, s, k, l, dmax: jet.dmax })
}

/// `dh + s (l y dx - k x dy)`, truncated.
pub fn reconstruct<F: Field>(h: &BivPoly<F>, s: &BivPoly<F>, k: u32, l: u32, dmax: i64) -> Jet<F> {
    let form = OneForm::exact(h).add(&OneForm::radial(k, l).mul_poly(s));
    Jet::new(form, k, l, dmax)
}

impl<F: Field> HSDecomposition<F> {
    pub fn reconstruct(&self) -> Jet<F> {
        reconstruct(&self.h, &self.s, self.k, self.l, self.dmax)
    }
}

fn strict_gauge_check<F: Field>(alpha: &BivPoly<F>, beta: &BivPoly<F>, delta: &BivPoly<F>, k: u32, l: u32) -> Result<(), FormError> {
    let linear = |p: &BivPoly<F>| p.terms().any(|(&(i, j), _)| i + j <= 1);
    if linear(alpha) || linear(beta) {
        return Err(FormError::NotStrictGauge("diffeomorphism must be tangent to the identity"));
    }
    if alpha.min_weight(k, l).is_some_and(|w| w <= k as i64) {
        return Err(FormError::NotStrictGauge("alpha must have weight above k"));
    }
    if beta.min_weight(k, l).is_some_and(|w| w <= l as i64) {
        return Err(FormError::NotStrictGauge("beta must have weight above l"));
    }
    if delta.get(0, 0).is_some() {
        return Err(FormError::NotStrictGauge("unit must equal 1 at the origin"));
    }
    Ok(())
}

/// `(1 + delta) * phi^* omega` with `phi = (x + alpha, y + beta)`, exact below
/// the jet's bound.
pub fn gauge_pullback<F: Field>(jet: &Jet<F>, alpha: &BivPoly<F>, beta: &BivPoly<F>, delta: &BivPoly<F>) -> Result<Jet<F>, FormError> {
    let (k, l, dmax) = (jet.k, jet.l, jet.dmax);
    strict_gauge_check(alpha, beta, delta, k, l)?;
    let (ka, lb) = (dmax - k as i64, dmax - l as i64);
    let px = BivPoly::x().add(alpha);
    let py = BivPoly::y().add(beta);
    let a_phi = jet.form.a.compose_unchecked(&px, &py, k, l, ka);
    let b_phi = jet.form.b.compose_unchecked(&px, &py, k, l, lb);

    let a = a_phi
        .add(&alpha.diff_x().mul_truncated(&a_phi, k, l, ka))
        .add(&beta.diff_x().mul_truncated(&b_phi, k, l, ka));
    let b = b_phi
        .add(&alpha.diff_y().mul_truncated(&a_phi, k, l, lb))
        .add(&beta.diff_y().mul_truncated(&b_phi, k, l, lb));
    let a = a.add(&delta.mul_truncated(&a, k, l, ka));
    let b = b.add(&delta.mul_truncated(&b, k, l, lb));
    Ok(Jet { form: OneForm { a, b }, k, l, dmax })
}
