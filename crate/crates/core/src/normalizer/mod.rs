//! Degree-by-degree reduction to the strict normal form
//! `omega_d + d(x y h) + s (l y dx - k x dy)`, with a checkable gauge.

use crate::oneform::{decompose_hs, gauge_pullback, FormError, Jet, OneForm};
use crate::poly::{weight, BivPoly};
use crate::scalar::Field;
use crate::spectral::{
    build_omega_d, dims, h_box, s_valuations, verify_membership, FoliationType, SpectralData, SpectralError,
    Weights,
};

mod ab;
mod random;
mod steps;

pub use ab::{ab_polys, genericity_report, hamiltonian_matrix, ABPair, DegreeVerdict, GenericityReport};
pub use random::{perturb_random, perturb_random_with_pool, random_normal_form, random_spec, rescale_nonstrict, DEFAULT_POOL};
pub use steps::{hamiltonian_step, radial_step, GaugeStep};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NormalizerError {
    #[error("normalization needs both axes as separatrices")]
    AxisRequired,
    #[error("the degree budget must be at least 1")]
    TruncationTooSmall,
    #[error("the jet is known only up to degree {have}, degree {need} is required")]
    JetTooShort { have: i64, need: i64 },
    #[error("not in the class: {0}")]
    NotInClass(String),
    #[error("genericity fails at degree m = {m}")]
    NonGeneric { m: i64 },
    #[error("genericity fails: {0}")]
    RationalIndex(String),
    #[error("radial projection is singular at degree m = {m}")]
    NonGenericRadial { m: i64 },
    #[error("graded pieces below degree d + {m} are not yet normalized")]
    PrerequisiteDegreesDirty { m: i64 },
    #[error("gauge certificate failed to reproduce the output")]
    CertificateFailed,
    #[error(transparent)]
    Form(#[from] FormError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

/// Type with both axes, read off the lowest graded piece of a jet.
pub fn infer_type<F: Field>(jet: &Jet<F>) -> Result<FoliationType, NormalizerError> {
    let (k, l) = (jet.k, jet.l);
    let w = Weights::new(k, l)?;
    let d = jet.form.order(k, l).ok_or_else(|| NormalizerError::NotInClass("the form is zero".into()))?;
    let kl = k as i64 * l as i64;
    let rest = d - k as i64 - l as i64;
    if rest <= 0 || rest % kl != 0 {
        return Err(NormalizerError::AxisRequired);
    }
    let ty = FoliationType::new(w, (rest / kl) as u32, true, true)?;
    let q_d = jet.slice(d).contract_q(k, l);
    if q_d.div_monomial(1, 1).is_none() {
        return Err(NormalizerError::AxisRequired);
    }
    Ok(ty)
}

/// One coefficient series of `s`: `sum_i coefficients[i] x^(valuation + i) y^j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SSeries<F: Field> {
    pub j: u32,
    pub valuation: i64,
    pub coefficients: Vec<F>,
}

/// Normal form data below degree `dmax`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalForm<F: Field> {
    pub ty: FoliationType,
    pub spec: SpectralData<F>,
    pub h: BivPoly<F>,
    pub s: Vec<SSeries<F>>,
    pub dmax: i64,
}

impl<F: Field> NormalForm<F> {
    /// Largest admissible `x`-exponent of `s` in row `j`.
    fn s_top(ty: &FoliationType, dmax: i64, j: u32) -> i64 {
        let (k, l) = (ty.k() as i64, ty.l() as i64);
        (dmax - k - l - l * j as i64).div_euclid(k)
    }

    /// `s` as a polynomial.
    pub fn s_poly(&self) -> BivPoly<F> {
        let mut out = BivPoly::zero();
        for row in &self.s {
            for (o, c) in row.coefficients.iter().enumerate() {
                out.add_term(((row.valuation + o as i64) as u32, row.j), c);
            }
        }
        out
    }

    /// `omega_d + d(x y h) + s (l y dx - k x dy)` truncated at `dmax`.
    pub fn to_jet(&self) -> Result<Jet<F>, NormalizerError> {
        let (k, l) = (self.ty.k(), self.ty.l());
        let omega_d = build_omega_d(&self.ty, &self.spec)?;
        let rest = OneForm::exact(&self.h.mul_monomial(1, 1)).add(&OneForm::radial(k, l).mul_poly(&self.s_poly()));
        Ok(Jet::new(omega_d.add(&rest), k, l, self.dmax))
    }

    /// Reads `(h, s)` off a jet that is already in normal shape.
    pub fn from_normalized_jet(ty: &FoliationType, spec: SpectralData<F>, jet: &Jet<F>) -> Result<Self, NormalizerError> {
        let (k, l, d, n) = (ty.k(), ty.l(), ty.d, ty.n);
        let omega_d = build_omega_d(ty, &spec)?;
        let rest = Jet::new(jet.form.sub(&omega_d), k, l, jet.dmax);
        let hs = decompose_hs(&rest)?;
        let h = hs.h.div_monomial(1, 1).ok_or(NormalizerError::PrerequisiteDegreesDirty { m: 0 })?;
        let boxed = h_box(k, l, n);
        if h.terms().any(|(e, _)| !boxed.contains(e)) {
            let m = h.terms().map(|(&(i, j), _)| weight(k, l, i + 1, j + 1) - d).min().unwrap_or(0);
            return Err(NormalizerError::PrerequisiteDegreesDirty { m });
        }
        let vals = s_valuations(k, l, n);
        let mut s = Vec::with_capacity(vals.len());
        for (j, &val) in vals.iter().enumerate() {
            let top = Self::s_top(ty, jet.dmax, j as u32);
            let coefficients: Vec<F> = (val..=top).map(|i| hs.s.coeff(i as u32, j as u32)).collect();
            s.push(SSeries { j: j as u32, valuation: val, coefficients });
        }
        let nf = NormalForm { ty: *ty, spec, h, s, dmax: jet.dmax };
        if nf.s_poly() != hs.s {
            let m = hs.s.min_weight(k, l).unwrap_or(0) + k as i64 + l as i64 - d;
            return Err(NormalizerError::PrerequisiteDegreesDirty { m });
        }
        Ok(nf)
    }

    /// Number of `h` slots; equals `delta'`.
    pub fn h_slots(&self) -> usize {
        h_box(self.ty.k(), self.ty.l(), self.ty.n).len()
    }

    /// Checks the support invariants.
    pub fn check_support(&self) -> bool {
        let (k, l, n) = (self.ty.k(), self.ty.l(), self.ty.n);
        let boxed = h_box(k, l, n);
        let vals = s_valuations(k, l, n);
        self.h.terms().all(|(e, _)| boxed.contains(e))
            && self.s.len() == vals.len()
            && self.s.iter().zip(&vals).all(|(r, v)| r.valuation == *v)
            && dims(&self.ty).is_ok_and(|(dp, _)| dp as usize == boxed.len())
    }
}

/// Accumulated strict gauge `(x + alpha, y + beta)` and unit `1 + delta`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gauge<F: Field> {
    pub phi_x: BivPoly<F>,
    pub phi_y: BivPoly<F>,
    pub unit: BivPoly<F>,
    pub k: u32,
    pub l: u32,
    /// Weight budget above the initial degree.
    pub depth: i64,
}

impl<F: Field> Gauge<F> {
    pub fn identity(k: u32, l: u32, depth: i64) -> Self {
        Gauge { phi_x: BivPoly::x(), phi_y: BivPoly::y(), unit: BivPoly::one(), k, l, depth }
    }

    pub fn alpha(&self) -> BivPoly<F> {
        self.phi_x.sub(&BivPoly::x())
    }

    pub fn beta(&self) -> BivPoly<F> {
        self.phi_y.sub(&BivPoly::y())
    }

    pub fn delta(&self) -> BivPoly<F> {
        self.unit.sub(&BivPoly::one())
    }

    pub fn is_identity(&self) -> bool {
        self.alpha().is_zero() && self.beta().is_zero() && self.delta().is_zero()
    }

    /// `self` followed by `step`: `phi o phi_s` and `(u o phi_s) u_s`.
    pub fn then(&self, alpha: &BivPoly<F>, beta: &BivPoly<F>, delta: &BivPoly<F>) -> Result<Self, NormalizerError> {
        let (k, l, dep) = (self.k, self.l, self.depth);
        let sx = BivPoly::x().add(alpha);
        let sy = BivPoly::y().add(beta);
        let map = |p: &BivPoly<F>, max: i64| p.compose_truncated(&sx, &sy, k, l, max).map_err(|_| FormError::NotStrictGauge("step"));
        let phi_x = map(&self.phi_x, dep + k as i64)?;
        let phi_y = map(&self.phi_y, dep + l as i64)?;
        let unit = map(&self.unit, dep)?.mul_truncated(&BivPoly::one().add(delta), k, l, dep);
        Ok(Gauge { phi_x, phi_y, unit, k, l, depth: dep })
    }

    /// `unit * phi^* jet`.
    pub fn apply(&self, jet: &Jet<F>) -> Result<Jet<F>, NormalizerError> {
        Ok(gauge_pullback(jet, &self.alpha(), &self.beta(), &self.delta())?)
    }
}

/// Output of [`normalize`].
#[derive(Clone, Debug)]
pub struct Normalization<F: Field> {
    pub normal_form: NormalForm<F>,
    pub gauge: Gauge<F>,
    /// The input jet after the gauge; equals `normal_form.to_jet()`.
    pub output: Jet<F>,
    pub certificate_ok: bool,
}

/// Class and genericity checks shared by [`normalize`] and the CLI.
pub fn precheck<F: Field>(jet: &Jet<F>) -> Result<(FoliationType, SpectralData<F>), NormalizerError> {
    let ty = infer_type(jet)?;
    let rep = verify_membership(jet, &ty);
    if !rep.in_class() {
        return Err(NormalizerError::NotInClass(rep.failures.join("; ")));
    }
    let spec = rep.spec.clone().expect("spectral data of a class member");
    if !rep.generic_indices() {
        return Err(NormalizerError::RationalIndex("some index is rational".into()));
    }
    let omega_d = jet.slice(ty.d);
    let gen = genericity_report(&ty, &omega_d);
    if let Some(m) = gen.first_failure() {
        return Err(NormalizerError::NonGeneric { m });
    }
    Ok((ty, spec))
}

/// Normal form below `d + budget`, the gauge reaching it, and the
/// certificate check `unit * phi^* input == output`.
pub fn normalize<F: Field>(jet: &Jet<F>, budget: i64) -> Result<Normalization<F>, NormalizerError> {
    if budget < 1 {
        return Err(NormalizerError::TruncationTooSmall);
    }
    let (ty, spec) = precheck(jet)?;
    let (k, l, d) = (ty.k(), ty.l(), ty.d);
    let dmax = d + budget;
    if jet.dmax < dmax {
        return Err(NormalizerError::JetTooShort { have: jet.dmax, need: dmax });
    }
    let input = jet.retruncate(dmax);
    let ctx = steps::Context::new(&ty, &input.slice(d));
    let mut cur = input.clone();
    let mut gauge = Gauge::identity(k, l, budget);
    for m in 1..=budget {
        if let Some(step) = ctx.hamiltonian(&cur, m)? {
            cur = gauge_pullback(&cur, &step.alpha, &step.beta, &step.delta)?;
            gauge = gauge.then(&step.alpha, &step.beta, &step.delta)?;
        }
        if let Some(step) = ctx.radial(&cur, m)? {
            cur = gauge_pullback(&cur, &step.alpha, &step.beta, &step.delta)?;
            gauge = gauge.then(&step.alpha, &step.beta, &step.delta)?;
        }
    }
    let normal_form = NormalForm::from_normalized_jet(&ty, spec, &cur)?;
    let certificate_ok = gauge.apply(&input)? == cur;
    if !certificate_ok {
        return Err(NormalizerError::CertificateFailed);
    }
    Ok(Normalization { normal_form, gauge, output: cur, certificate_ok })
}

#[cfg(test)]
mod tests;
