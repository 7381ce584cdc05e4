//! Weights, counting formulas, and the dictionary between the initial part
//! `omega_d` and its spectral data `(c0, c_i, lambda_i, lambda0, lambdaInf)`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;

use crate::oneform::{Jet, OneForm};
use crate::poly::{monomials_of_weight, BivPoly, UniPoly};
use crate::scalar::Field;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpectralError {
    #[error("weights ({0}, {1}) are not coprime positive integers")]
    NotCoprime(u32, u32),
    #[error("the number of branches must be at least 1")]
    NoBranches,
    #[error("both axes must be separatrices (epsilon0 = epsilonInf = 1)")]
    AxisRequired,
    #[error("index relation violated")]
    RelationViolated,
    #[error("branch coefficients must be nonzero and pairwise distinct")]
    DegenerateBranches,
    #[error("expected {expected} values, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("the branch coefficients c_i do not lie in the coefficient field")]
    NotFactoredOverField,
    #[error("initial part is degenerate: {0}")]
    Degenerate(String),
}

/// Coprime weights `(k, l)` and the Bezout pair `k u - l v = 1`,
/// `1 <= u <= l`, `0 <= v <= k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Weights {
    pub k: u32,
    pub l: u32,
    pub u: u32,
    pub v: u32,
}

impl Weights {
    pub fn new(k: u32, l: u32) -> Result<Self, SpectralError> {
        let (u, v) = bezout_uv(k, l)?;
        Ok(Weights { k, l, u, v })
    }
}

pub fn bezout_uv(k: u32, l: u32) -> Result<(u32, u32), SpectralError> {
    if k == 0 || l == 0 || k.gcd(&l) != 1 {
        return Err(SpectralError::NotCoprime(k, l));
    }
    for u in 1..=l {
        let ku = k as u64 * u as u64;
        if (ku - 1) % l as u64 == 0 {
            return Ok((u, ((ku - 1) / l as u64) as u32));
        }
    }
    unreachable!("k is invertible modulo l")
}

/// `[a[`: the largest integer not exceeding `a`.
pub fn floor_int(a: &BigRational) -> BigInt {
    a.floor().to_integer()
}

/// `]a]`: the largest integer strictly below `a`.
pub fn strict_int(a: &BigRational) -> BigInt {
    a.ceil().to_integer() - 1
}

/// Number of monomials of weight `m`, by the closed formula.
pub fn e_count(k: u32, l: u32, m: i64) -> i64 {
    assert!(m >= 0, "weight must be nonnegative");
    let (u, v) = bezout_uv(k, l).expect("coprime weights");
    let a = BigRational::new(BigInt::from(m) * u, BigInt::from(l));
    let b = BigRational::new(BigInt::from(m) * v, BigInt::from(k));
    let e = floor_int(&a) - strict_int(&b);
    i64::try_from(e).expect("small count")
}

/// Number of monomials of weight `m`, by enumeration.
pub fn e_count_enumerated(k: u32, l: u32, m: i64) -> i64 {
    monomials_of_weight(k, l, m).len() as i64
}

/// `(k, l, n, epsilon0, epsilonInf)` and `d = n k l + k epsilon0 + l epsilonInf`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FoliationType {
    pub weights: Weights,
    pub n: u32,
    pub eps0: bool,
    pub eps_inf: bool,
    pub d: i64,
}

impl FoliationType {
    pub fn new(weights: Weights, n: u32, eps0: bool, eps_inf: bool) -> Result<Self, SpectralError> {
        if n == 0 {
            return Err(SpectralError::NoBranches);
        }
        let (k, l) = (weights.k as i64, weights.l as i64);
        let d = n as i64 * k * l + k * eps0 as i64 + l * eps_inf as i64;
        Ok(FoliationType { weights, n, eps0, eps_inf, d })
    }

    /// Shorthand for the case with both axes.
    pub fn with_axes(k: u32, l: u32, n: u32) -> Result<Self, SpectralError> {
        Self::new(Weights::new(k, l)?, n, true, true)
    }

    pub fn k(&self) -> u32 {
        self.weights.k
    }

    pub fn l(&self) -> u32 {
        self.weights.l
    }

    fn axis_exponents(&self) -> (u32, u32) {
        (self.eps0 as u32, self.eps_inf as u32)
    }

    /// `lambda0` when the axis `x = 0` is absent.
    pub fn frozen_lambda0<F: Field>(&self) -> F {
        let w = self.weights;
        F::from_ratio(-(w.l as i64 - w.u as i64), w.l as i64)
    }

    /// `lambdaInf` when the axis `y = 0` is absent.
    pub fn frozen_lambda_inf<F: Field>(&self) -> F {
        let w = self.weights;
        F::from_ratio(-(w.v as i64), w.k as i64)
    }
}

/// Box of `h`-slots: `i <= l n - 1`, `j <= k n - 1`, weight at least `k l n + 1`.
pub fn h_box(k: u32, l: u32, n: u32) -> Vec<(u32, u32)> {
    let top = (k * l * n) as i64;
    let mut out = Vec::new();
    for j in 0..k * n {
        for i in 0..l * n {
            if k as i64 * i as i64 + l as i64 * j as i64 > top {
                out.push((i, j));
            }
        }
    }
    out.sort_by_key(|&(i, j)| (k as i64 * i as i64 + l as i64 * j as i64, i));
    out
}

/// Smallest admissible `x`-exponent of the `y^j` series of `s`,
/// `l n + 1 + ](1 - l j)/k]`, for `j = 0 .. k n - 1`.
pub fn s_valuations(k: u32, l: u32, n: u32) -> Vec<i64> {
    (0..k * n)
        .map(|j| {
            let a = BigRational::new(BigInt::from(1 - l as i64 * j as i64), BigInt::from(k));
            let s = i64::try_from(strict_int(&a)).expect("small");
            (l * n) as i64 + 1 + s
        })
        .collect()
}

/// `(delta', delta)` for a type with both axes.
pub fn dims(ty: &FoliationType) -> Result<(i64, i64), SpectralError> {
    if !(ty.eps0 && ty.eps_inf) {
        return Err(SpectralError::AxisRequired);
    }
    let (k, l, n) = (ty.k(), ty.l(), ty.n as i64);
    let top = k as i64 * l as i64 * n;
    let dp: i64 = (1..top).map(|m| n - e_count(k, l, m)).sum();
    let d: i64 = n * n * k as i64 * l as i64 - (0..top).map(|m| e_count(k, l, m)).sum::<i64>();
    Ok((dp, d))
}

/// Spectral data of the initial part.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SpectralData<F: Field> {
    pub c0: F,
    pub c: Vec<F>,
    pub lambda: Vec<F>,
    pub lambda0: F,
    pub lambda_inf: F,
}

impl<F: Field> SpectralData<F> {
    /// Sorts the branches by the canonical order of `c_i`.
    pub fn canonicalize(mut self) -> Self {
        let mut pairs: Vec<(F, F)> = self.c.into_iter().zip(self.lambda).collect();
        pairs.sort_by(|a, b| a.0.canonical_cmp(&b.0));
        (self.c, self.lambda) = pairs.into_iter().unzip();
        self
    }

    /// Left side of the index relation; zero for valid data.
    pub fn relation_defect(&self, ty: &FoliationType) -> F {
        let w = ty.weights;
        let mut acc = self.lambda.iter().fold(F::zero(), |s, v| s.add(v));
        if ty.eps0 {
            acc = acc.add(&self.lambda0).add(&F::from_ratio(w.l as i64 - w.u as i64, w.l as i64));
        }
        if ty.eps_inf {
            acc = acc.add(&self.lambda_inf).add(&F::from_ratio(w.v as i64, w.k as i64));
        }
        acc.add(&F::from_ratio(1, w.k as i64 * w.l as i64))
    }

    /// All indices, branch indices first, then `lambda0`, `lambdaInf`.
    pub fn all_lambdas(&self) -> Vec<F> {
        let mut v = self.lambda.clone();
        v.push(self.lambda0.clone());
        v.push(self.lambda_inf.clone());
        v
    }

    fn check(&self, ty: &FoliationType) -> Result<(), SpectralError> {
        let n = ty.n as usize;
        if self.c.len() != n {
            return Err(SpectralError::LengthMismatch { expected: n, found: self.c.len() });
        }
        if self.lambda.len() != n {
            return Err(SpectralError::LengthMismatch { expected: n, found: self.lambda.len() });
        }
        if self.c0.is_zero() || self.c.iter().any(Field::is_zero) {
            return Err(SpectralError::DegenerateBranches);
        }
        for i in 0..n {
            for j in 0..i {
                if self.c[i] == self.c[j] {
                    return Err(SpectralError::DegenerateBranches);
                }
            }
        }
        if !self.relation_defect(ty).is_zero() {
            return Err(SpectralError::RelationViolated);
        }
        if !ty.eps0 && self.lambda0 != ty.frozen_lambda0::<F>() {
            return Err(SpectralError::RelationViolated);
        }
        if !ty.eps_inf && self.lambda_inf != ty.frozen_lambda_inf::<F>() {
            return Err(SpectralError::RelationViolated);
        }
        Ok(())
    }
}

/// `y^k - c x^l`.
fn branch<F: Field>(k: u32, l: u32, c: &F) -> BivPoly<F> {
    BivPoly::monomial(0, k, F::one()).sub(&BivPoly::monomial(l, 0, c.clone()))
}

/// `c0 x^eps0 y^epsInf prod (y^k - c_i x^l)`.
pub fn q_d_from<F: Field>(ty: &FoliationType, c0: &F, c: &[F]) -> BivPoly<F> {
    let (k, l) = (ty.k(), ty.l());
    let (e0, ei) = ty.axis_exponents();
    c.iter()
        .fold(BivPoly::monomial(e0, ei, c0.clone()), |acc, ci| acc.mul(&branch(k, l, ci)))
}

/// The degree-`d` initial form with the given spectral data.
pub fn build_omega_d<F: Field>(ty: &FoliationType, spec: &SpectralData<F>) -> Result<OneForm<F>, SpectralError> {
    spec.check(ty)?;
    let w = ty.weights;
    let (k, l) = (w.k, w.l);
    let (e0, ei) = ty.axis_exponents();
    let q_d = q_d_from(ty, &spec.c0, &spec.c);
    let base = BivPoly::monomial(e0, ei, spec.c0.clone());
    let mut a = BivPoly::zero();
    let mut b = BivPoly::zero();
    for (i, (ci, li)) in spec.c.iter().zip(&spec.lambda).enumerate() {
        let others = spec
            .c
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .fold(base.clone(), |acc, (_, cj)| acc.mul(&branch(k, l, cj)));
        // q_d / (y^k - c_i x^l) times l c_i x^(l-1), resp. -k y^(k-1)
        let f_a = li.mul(&ci.mul(&F::from_i64(l as i64)));
        a = a.add(&others.mul_monomial(l - 1, 0).scale(&f_a));
        let f_b = li.mul(&F::from_i64(-(k as i64)));
        b = b.add(&others.mul_monomial(0, k - 1).scale(&f_b));
    }
    if ty.eps0 {
        let coef = F::from_i64(w.u as i64).sub(&F::from_i64(l as i64).mul(&spec.lambda0.add(&F::one())));
        a = a.add(&q_d.div_monomial(1, 0).expect("x divides q_d").scale(&coef));
    }
    if ty.eps_inf {
        let coef = F::from_i64(w.v as i64).add(&F::from_i64(k as i64).mul(&spec.lambda_inf));
        b = b.sub(&q_d.div_monomial(0, 1).expect("y divides q_d").scale(&coef));
    }
    Ok(OneForm::new(a, b))
}

/// Univariate image of a weight-`nkl` polynomial: `x^(l(n-r)) y^(kr) -> Y^r`.
fn collapse<F: Field>(p: &BivPoly<F>, ty: &FoliationType) -> Option<UniPoly<F>> {
    let (k, l, n) = (ty.k(), ty.l(), ty.n);
    let mut c = vec![F::zero(); n as usize + 1];
    for (&(i, j), v) in p.terms() {
        if j % k != 0 || i % l != 0 || i / l + j / k != n {
            return None;
        }
        c[(j / k) as usize] = v.clone();
    }
    Some(UniPoly::new(c))
}

fn strip_axes<F: Field>(p: &BivPoly<F>, ty: &FoliationType, what: &str) -> Result<BivPoly<F>, SpectralError> {
    let (e0, ei) = ty.axis_exponents();
    p.div_monomial(e0, ei)
        .ok_or_else(|| SpectralError::Degenerate(format!("{what} is not divisible by x^{e0} y^{ei}")))
}

/// Reads the spectral data off a degree-`d` initial form.
pub fn recover_spectral<F: Field>(ty: &FoliationType, omega_d: &OneForm<F>) -> Result<SpectralData<F>, SpectralError> {
    let w = ty.weights;
    let (k, l, d) = (w.k, w.l, ty.d);
    if omega_d.slice(k, l, d) != *omega_d {
        return Err(SpectralError::Degenerate(format!("form is not quasi-homogeneous of degree {d}")));
    }
    let q = strip_axes(&omega_d.contract_q(k, l), ty, "q_d")?;
    let p = strip_axes(&omega_d.contract_p(k, l, w.u, w.v), ty, "p_d")?;
    let qy = collapse(&q, ty).ok_or_else(|| SpectralError::Degenerate("q_d has the wrong degree".into()))?;
    let py = collapse(&p, ty).ok_or_else(|| SpectralError::Degenerate("p_d has the wrong degree".into()))?;
    let n = ty.n as usize;
    if qy.degree() != Some(n) {
        return Err(SpectralError::Degenerate("leading coefficient c0 vanishes".into()));
    }
    if qy.coeff(0).is_zero() {
        return Err(SpectralError::Degenerate("a branch coefficient vanishes".into()));
    }
    if qy.squarefree_part().degree() != Some(n) {
        return Err(SpectralError::Degenerate("branch coefficients are not distinct".into()));
    }
    let c0 = qy.coeff(n);
    let roots = F::roots(qy.coeffs());
    if roots.len() != n {
        return Err(SpectralError::NotFactoredOverField);
    }
    let lambda: Vec<F> = roots
        .iter()
        .map(|ci| {
            let denom = roots
                .iter()
                .filter(|cj| *cj != ci)
                .fold(c0.mul(ci), |acc, cj| acc.mul(&ci.sub(cj)));
            py.eval(ci).div(&denom).expect("distinct nonzero roots")
        })
        .collect();
    let lambda0 = py.coeff(n).div(&c0).expect("c0 nonzero").neg();
    let mut spec = SpectralData { c0, c: roots, lambda, lambda0, lambda_inf: ty.frozen_lambda_inf::<F>() };
    if ty.eps_inf {
        spec.lambda_inf = F::zero();
        spec.lambda_inf = spec.relation_defect(ty).neg();
    }
    let spec = spec.canonicalize();
    match build_omega_d(ty, &spec) {
        Ok(rebuilt) if rebuilt == *omega_d => Ok(spec),
        _ => Err(SpectralError::Degenerate("form is not determined by its spectral data".into())),
    }
}

/// Result of checking the class conditions on a jet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembershipReport<F: Field> {
    /// No graded piece below `d`, and `omega_d` is nonzero.
    pub order_ok: bool,
    /// Condition (i): `y^epsInf | a` and `x^eps0 | b`.
    pub axis_divisibility: bool,
    /// `q_d` has the shape `c0 x^eps0 y^epsInf prod (y^k - c_i x^l)`.
    pub factorization_ok: bool,
    /// The `c_i` are nonzero, distinct, and lie in the field.
    pub distinct_branches: bool,
    /// The cofactors of `q_d` and `p_d` are coprime.
    pub gcd_ok: bool,
    /// Every index not frozen by a missing axis is irrational.
    pub lambdas_irrational: Option<bool>,
    pub spec: Option<SpectralData<F>>,
    pub failures: Vec<String>,
}

impl<F: Field> MembershipReport<F> {
    /// Conditions (i) and (ii) together.
    pub fn in_class(&self) -> bool {
        self.order_ok && self.axis_divisibility && self.factorization_ok && self.distinct_branches && self.gcd_ok
    }

    pub fn generic_indices(&self) -> bool {
        self.lambdas_irrational == Some(true)
    }
}

pub fn verify_membership<F: Field>(jet: &Jet<F>, ty: &FoliationType) -> MembershipReport<F> {
    let w = ty.weights;
    let (k, l, d) = (w.k, w.l, ty.d);
    let (e0, ei) = ty.axis_exponents();
    let mut r = MembershipReport {
        order_ok: false,
        axis_divisibility: false,
        factorization_ok: false,
        distinct_branches: false,
        gcd_ok: false,
        lambdas_irrational: None,
        spec: None,
        failures: Vec::new(),
    };
    if jet.k != k || jet.l != l {
        r.failures.push(format!("jet weights ({}, {}) differ from the type ({k}, {l})", jet.k, jet.l));
        return r;
    }
    let omega_d = jet.slice(d);
    r.order_ok = jet.form.order(k, l).is_some_and(|o| o >= d) && !omega_d.is_zero() && jet.dmax >= d;
    if !r.order_ok {
        r.failures.push(format!("order: the lowest nonzero graded piece must have degree {d}"));
    }
    r.axis_divisibility = jet.form.a.div_monomial(0, ei).is_some() && jet.form.b.div_monomial(e0, 0).is_some();
    if !r.axis_divisibility {
        r.failures.push(format!("condition (i): y^{ei} must divide a and x^{e0} must divide b"));
    }
    let q_d = omega_d.contract_q(k, l);
    let p_d = omega_d.contract_p(k, l, w.u, w.v);
    let cof_q = q_d.div_monomial(e0, ei).filter(|q| !q.is_zero());
    let cof_p = p_d.div_monomial(e0, ei);
    let qy = cof_q.as_ref().and_then(|q| collapse(q, ty));
    r.factorization_ok = qy.as_ref().is_some_and(|u| u.degree() == Some(ty.n as usize)) && cof_p.is_some();
    if !r.factorization_ok {
        r.failures.push("condition (ii): q_d is not of the form c0 x^eps0 y^epsInf prod (y^k - c_i x^l)".into());
    } else {
        let u = qy.expect("checked");
        let sq = u.squarefree_part().degree() == Some(ty.n as usize) && !u.coeff(0).is_zero();
        r.distinct_branches = sq && F::roots(u.coeffs()).len() == ty.n as usize;
        if !r.distinct_branches {
            r.failures.push("condition (ii): branch coefficients must be nonzero, distinct and in the field".into());
        }
        let g = cof_q.expect("checked").gcd(&cof_p.expect("checked"));
        r.gcd_ok = g.as_constant().is_some_and(|c| !c.is_zero());
        if !r.gcd_ok {
            r.failures.push(format!("condition (ii): gcd of the q_d and p_d cofactors is {}", g.display_weighted(k, l)));
        }
    }
    if r.in_class() {
        match recover_spectral(ty, &omega_d) {
            Ok(spec) => {
                let mut free: Vec<&F> = spec.lambda.iter().collect();
                if ty.eps0 {
                    free.push(&spec.lambda0);
                }
                if ty.eps_inf {
                    free.push(&spec.lambda_inf);
                }
                let irr = free.iter().all(|v| !v.is_rational_constant());
                r.lambdas_irrational = Some(irr);
                if !irr {
                    r.failures.push("genericity: some index is rational".into());
                }
                r.spec = Some(spec);
            }
            Err(e) => {
                r.factorization_ok = false;
                r.failures.push(format!("spectral data: {e}"));
            }
        }
    }
    r
}

/// Lexicographic comparison of spectral data under the canonical scalar order.
pub fn spectral_cmp<F: Field>(a: &SpectralData<F>, b: &SpectralData<F>) -> Ordering {
    let key = |s: &SpectralData<F>| {
        let mut v = vec![s.c0.clone()];
        v.extend(s.c.iter().cloned());
        v.extend(s.all_lambdas());
        v
    };
    let (ka, kb) = (key(a), key(b));
    for (x, y) in ka.iter().zip(&kb) {
        match x.canonical_cmp(y) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    ka.len().cmp(&kb.len())
}
