//! Monomial charts of the resolution and Camacho-Sad indices.

use crate::oneform::OneForm;
use crate::poly::{BivPoly, UniPoly};
use crate::scalar::Field;
use crate::spectral::{SpectralData, Weights};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BlowupError {
    #[error("the point is not a simple pole of the residue form")]
    HigherOrderPole,
    #[error("the divisor is not invariant")]
    NotInvariantDivisor,
    #[error("branch coefficients must be nonzero and pairwise distinct")]
    Degenerate,
}

/// `(x, y) = (X^a Y^b, X^c Y^d)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MonomialMap {
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub d: u32,
}

impl MonomialMap {
    pub fn new(a: u32, b: u32, c: u32, d: u32) -> Self {
        MonomialMap { a, b, c, d }
    }

    pub fn identity() -> Self {
        Self::new(1, 0, 0, 1)
    }

    pub fn det(&self) -> i64 {
        self.a as i64 * self.d as i64 - self.b as i64 * self.c as i64
    }

    /// `self` followed by `inner`: substitute `inner` into the chart variables.
    pub fn then(&self, inner: &MonomialMap) -> MonomialMap {
        MonomialMap {
            a: self.a * inner.a + self.b * inner.c,
            b: self.a * inner.b + self.b * inner.d,
            c: self.c * inner.a + self.d * inner.c,
            d: self.c * inner.b + self.d * inner.d,
        }
    }

    fn image(&self, i: u32, j: u32) -> (u32, u32) {
        (self.a * i + self.c * j, self.b * i + self.d * j)
    }

    /// `P(X^a Y^b, X^c Y^d)`.
    pub fn substitute<F: Field>(&self, p: &BivPoly<F>) -> BivPoly<F> {
        BivPoly::from_terms(p.terms().map(|(&(i, j), c)| (self.image(i, j), c.clone())))
    }
}

/// The chart carrying the branch points: `(X^(k-v) Y^k, X^(l-u) Y^l)`.
pub fn principal_chart(w: &Weights) -> MonomialMap {
    MonomialMap::new(w.k - w.v, w.k, w.l - w.u, w.l)
}

/// The neighbouring chart `(X^k Y^v, X^l Y^u)`; it contains the point at
/// infinity of the principal component.
pub fn branch_chart(w: &Weights) -> MonomialMap {
    MonomialMap::new(w.k, w.v, w.l, w.u)
}

/// `X^exp_x Y^exp_y * strict`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredPullback<F: Field> {
    pub exp_x: u32,
    pub exp_y: u32,
    pub strict: OneForm<F>,
}

impl<F: Field> FactoredPullback<F> {
    pub fn raw(&self) -> OneForm<F> {
        OneForm::new(
            self.strict.a.mul_monomial(self.exp_x, self.exp_y),
            self.strict.b.mul_monomial(self.exp_x, self.exp_y),
        )
    }
}

fn factor<F: Field>(raw: OneForm<F>) -> FactoredPullback<F> {
    if raw.is_zero() {
        return FactoredPullback { exp_x: 0, exp_y: 0, strict: raw };
    }
    let mins = |p: &BivPoly<F>| if p.is_zero() { (u32::MAX, u32::MAX) } else { p.monomial_content() };
    let (ma, mb) = (mins(&raw.a), mins(&raw.b));
    let (ex, ey) = (ma.0.min(mb.0), ma.1.min(mb.1));
    let strict = OneForm::new(raw.a.div_monomial(ex, ey).expect("common factor"), raw.b.div_monomial(ex, ey).expect("common factor"));
    FactoredPullback { exp_x: ex, exp_y: ey, strict }
}

/// Pullback through a monomial map with the maximal monomial factor extracted.
pub fn pullback_monomial<F: Field>(omega: &OneForm<F>, map: &MonomialMap) -> FactoredPullback<F> {
    let a_phi = map.substitute(&omega.a);
    let b_phi = map.substitute(&omega.b);
    // dx = x (a dX/X + b dY/Y), dy = y (c dX/X + d dY/Y)
    let xa = a_phi.mul_monomial(map.a, map.b);
    let yb = b_phi.mul_monomial(map.c, map.d);
    let coef = |n: u32| F::from_i64(n as i64);
    let dx = xa.scale(&coef(map.a)).add(&yb.scale(&coef(map.c)));
    let dy = xa.scale(&coef(map.b)).add(&yb.scale(&coef(map.d)));
    let raw = OneForm::new(
        dx.div_monomial(1, 0).expect("every surviving term carries X"),
        dy.div_monomial(0, 1).expect("every surviving term carries Y"),
    );
    factor(raw)
}

/// Pullbacks in the two standard charts `(x, x ybar)` and `(xbar y, y)`.
pub fn single_blowup<F: Field>(omega: &OneForm<F>) -> (FactoredPullback<F>, FactoredPullback<F>) {
    (pullback_monomial(omega, &MonomialMap::new(1, 0, 1, 1)), pullback_monomial(omega, &MonomialMap::new(1, 1, 0, 1)))
}

/// A point of the principal component, in the principal chart coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DivisorPoint<F: Field> {
    Finite(F),
    Infinity,
}

impl<F: Field> std::fmt::Display for DivisorPoint<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DivisorPoint::Finite(z) => write!(f, "{z}"),
            DivisorPoint::Infinity => write!(f, "inf"),
        }
    }
}

/// `0`, the branch points `1/c_i`, and `infinity`.
pub fn singular_points_principal<F: Field>(spec: &SpectralData<F>) -> Result<Vec<DivisorPoint<F>>, BlowupError> {
    let mut out = vec![DivisorPoint::Finite(F::zero())];
    for (i, c) in spec.c.iter().enumerate() {
        if c.is_zero() || spec.c[..i].contains(c) {
            return Err(BlowupError::Degenerate);
        }
        out.push(DivisorPoint::Finite(c.inv().expect("nonzero")));
    }
    out.push(DivisorPoint::Infinity);
    Ok(out)
}

/// Removes common factors `(X - z)` from `p` and `q`.
fn cancel_at<F: Field>(mut p: UniPoly<F>, mut q: UniPoly<F>, z: &F) -> (UniPoly<F>, UniPoly<F>) {
    let lin = UniPoly::new(vec![z.neg(), F::one()]);
    while !p.is_zero() && !q.is_zero() && p.eval(z).is_zero() && q.eval(z).is_zero() {
        p = p.divrem(&lin).0;
        q = q.divrem(&lin).0;
    }
    (p, q)
}

/// Index along `Y = 0` at `X = z` of `a dX + b dY`: `-Res_z P/Q` with
/// `a = Y P(X) + O(Y^2)` and `Q = b(X, 0)`.
fn index_finite<F: Field>(strict: &OneForm<F>, z: &F) -> Result<F, BlowupError> {
    if !strict.a.at_y_zero().is_zero() {
        return Err(BlowupError::NotInvariantDivisor);
    }
    let p = strict.a.y_coeff(1);
    let q = strict.b.at_y_zero();
    if q.is_zero() {
        return Err(BlowupError::NotInvariantDivisor);
    }
    let (p, q) = cancel_at(p, q, z);
    if !q.eval(z).is_zero() {
        return Ok(F::zero());
    }
    let dq = q.derivative().eval(z);
    if dq.is_zero() {
        return Err(BlowupError::HigherOrderPole);
    }
    Ok(p.eval(z).div(&dq).expect("nonzero").neg())
}

/// Rewrites a principal-chart form in the chart at infinity,
/// `(X, Y) = (1/Y', X' Y')`, then swaps the variable names so the divisor is
/// again `Y = 0` and the point is `X = 0`.
fn chart_at_infinity<F: Field>(strict: &OneForm<F>) -> OneForm<F> {
    // X^i Y^j -> X'^j Y'^(j-i); dX = -Y'^-2 dY', dY = Y' dX' + X' dY'
    let mut terms_dxp: Vec<((u32, i64), F)> = Vec::new();
    let mut terms_dyp: Vec<((u32, i64), F)> = Vec::new();
    for (&(i, j), c) in strict.a.terms() {
        terms_dyp.push(((j, j as i64 - i as i64 - 2), c.neg()));
    }
    for (&(i, j), c) in strict.b.terms() {
        terms_dxp.push(((j, j as i64 - i as i64 + 1), c.clone()));
        terms_dyp.push(((j + 1, j as i64 - i as i64), c.clone()));
    }
    let shift = terms_dxp.iter().chain(&terms_dyp).map(|((_, e), _)| -e).max().unwrap_or(0).max(0);
    let lift = |ts: &[((u32, i64), F)]| {
        // swapped names: U = Y', V = X'
        BivPoly::from_terms(ts.iter().map(|&((xe, ye), ref c)| (((ye + shift) as u32, xe), c.clone())))
    };
    let form = OneForm::new(lift(&terms_dyp), lift(&terms_dxp));
    factor(form).strict
}

/// Camacho-Sad index of the principal-chart strict form along `Y = 0`.
pub fn camacho_sad<F: Field>(strict: &OneForm<F>, point: &DivisorPoint<F>) -> Result<F, BlowupError> {
    match point {
        DivisorPoint::Finite(z) => index_finite(strict, z),
        DivisorPoint::Infinity => index_finite(&chart_at_infinity(strict), &F::zero()),
    }
}
