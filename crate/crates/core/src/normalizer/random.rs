use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{genericity_report, NormalForm, NormalizerError, SSeries};
use crate::oneform::{gauge_pullback, Jet, OneForm};
use crate::poly::{monomials_of_weight, weight, BivPoly};
use crate::scalar::Field;
use crate::spectral::{build_omega_d, h_box, recover_spectral, s_valuations, FoliationType, SpectralData};

/// Coefficient pool of [`perturb_random`].
pub const DEFAULT_POOL: &[i64] = &[-3, -2, -1, 0, 1, 2, 3];

const MAX_ATTEMPTS: usize = 64;

fn small_rational<F: Field, R: Rng>(rng: &mut R, nonzero: bool) -> F {
    loop {
        let num = rng.gen_range(-6i64..=6);
        if nonzero && num == 0 {
            continue;
        }
        return F::from_ratio(num, rng.gen_range(1i64..=4));
    }
}

/// `a + b t` with `b != 0`; just `a` when the field has no parameter.
fn random_index<F: Field, R: Rng>(rng: &mut R) -> F {
    let a: F = small_rational(rng, false);
    match F::parameter() {
        Some(t) => a.add(&t.mul(&small_rational(rng, true))),
        None => a,
    }
}

/// Random spectral data: distinct nonzero `c_i` and indices satisfying the
/// residue relation. Over a field with a parameter the free indices are
/// irrational, except when the relation leaves a single free index, which is
/// then forced rational.
pub fn random_spec<F: Field, R: Rng>(ty: &FoliationType, rng: &mut R) -> SpectralData<F> {
    loop {
        let c0: F = small_rational(rng, true);
        let mut c: Vec<F> = Vec::with_capacity(ty.n as usize);
        while c.len() < ty.n as usize {
            let ci: F = small_rational(rng, true);
            if !c.contains(&ci) {
                c.push(ci);
            }
        }
        let lambda: Vec<F> = (0..ty.n).map(|_| random_index(rng)).collect();
        let lambda0 = if ty.eps0 { random_index(rng) } else { ty.frozen_lambda0() };
        let mut spec = SpectralData { c0, c, lambda, lambda0, lambda_inf: F::zero() };
        spec.lambda_inf = if ty.eps_inf { spec.relation_defect(ty).neg() } else { ty.frozen_lambda_inf() };
        if !spec.relation_defect(ty).is_zero() {
            // an axis is missing and the free indices must absorb the defect
            let fix = spec.relation_defect(ty);
            spec.lambda[0] = spec.lambda[0].sub(&fix);
        }
        let mut free = spec.lambda.clone();
        free.extend(ty.eps0.then(|| spec.lambda0.clone()));
        free.extend(ty.eps_inf.then(|| spec.lambda_inf.clone()));
        if F::parameter().is_some() && free.len() > 1 && free.iter().any(Field::is_rational_constant) {
            continue;
        }
        return spec.canonicalize();
    }
}

/// A random normal form below `d + budget` whose initial part passes the
/// genericity checks.
pub fn random_normal_form<F: Field>(ty: &FoliationType, seed: u64, budget: i64) -> Result<NormalForm<F>, NormalizerError> {
    if !(ty.eps0 && ty.eps_inf) {
        return Err(NormalizerError::AxisRequired);
    }
    if budget < 1 {
        return Err(NormalizerError::TruncationTooSmall);
    }
    let (k, l, n) = (ty.k(), ty.l(), ty.n);
    let dmax = ty.d + budget;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_ATTEMPTS {
        let spec: SpectralData<F> = random_spec(ty, &mut rng);
        let omega_d = build_omega_d(ty, &spec)?;
        let gen = genericity_report(ty, &omega_d);
        if gen.first_failure().is_some() || (F::parameter().is_some() && !gen.lambdas_irrational()) {
            continue;
        }
        let mut h = BivPoly::zero();
        for (i, j) in h_box(k, l, n) {
            if weight(k, l, i + 1, j + 1) <= dmax {
                h.add_term((i, j), &small_rational::<F, _>(&mut rng, false));
            }
        }
        let s = s_valuations(k, l, n)
            .into_iter()
            .enumerate()
            .map(|(j, valuation)| {
                let top = NormalForm::<F>::s_top(ty, dmax, j as u32);
                let coefficients = (valuation..=top).map(|_| small_rational(&mut rng, false)).collect();
                SSeries { j: j as u32, valuation, coefficients }
            })
            .collect();
        return Ok(NormalForm { ty: *ty, spec, h, s, dmax });
    }
    Err(NormalizerError::NonGeneric { m: 0 })
}

fn random_poly<F: Field, R: Rng>(rng: &mut R, k: u32, l: u32, budget: i64, pool: &[i64]) -> BivPoly<F> {
    let mut p = BivPoly::zero();
    for w in 1..=budget {
        for e in monomials_of_weight(k, l, w) {
            let c = pool.choose(rng).copied().unwrap_or(0);
            p.add_term(e, &F::from_i64(c));
        }
    }
    p
}

/// [`perturb_random_with_pool`] with [`DEFAULT_POOL`].
pub fn perturb_random<F: Field>(nf: &NormalForm<F>, seed: u64, budget: i64) -> Result<Jet<F>, NormalizerError> {
    perturb_random_with_pool(nf, seed, budget, DEFAULT_POOL)
}

/// Applies the strict gauge `(x + x P1, y + y P2)`, unit `1 + P3`, with
/// coefficients drawn from `pool`, to the jet of `nf` below `d + budget`.
pub fn perturb_random_with_pool<F: Field>(
    nf: &NormalForm<F>,
    seed: u64,
    budget: i64,
    pool: &[i64],
) -> Result<Jet<F>, NormalizerError> {
    let (k, l, d) = (nf.ty.k(), nf.ty.l(), nf.ty.d);
    if budget < 1 {
        return Err(NormalizerError::TruncationTooSmall);
    }
    if d + budget > nf.dmax {
        return Err(NormalizerError::JetTooShort { have: nf.dmax, need: d + budget });
    }
    let jet = nf.to_jet()?.retruncate(d + budget);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let alpha = random_poly::<F, _>(&mut rng, k, l, budget, pool).mul_monomial(1, 0);
    let beta = random_poly::<F, _>(&mut rng, k, l, budget, pool).mul_monomial(0, 1);
    let delta = random_poly(&mut rng, k, l, budget, pool);
    Ok(gauge_pullback(&jet, &alpha, &beta, &delta)?)
}

/// `p(ax, gy)`.
fn scale_vars<F: Field>(p: &BivPoly<F>, a: &F, g: &F) -> Result<BivPoly<F>, NormalizerError> {
    let mut out = BivPoly::zero();
    for (&(i, j), c) in p.terms() {
        let f = a.pow(i as i64).and_then(|x| g.pow(j as i64).map(|y| x.mul(&y)));
        let f = f.map_err(|e| NormalizerError::NotInClass(e.to_string()))?;
        out.add_term((i, j), &c.mul(&f));
    }
    Ok(out)
}

/// Linear rescaling `(x, y) -> (c^v x, c^u y)` with `c` the first branch
/// coefficient, so that the first branch becomes `c = 1`. The identity when
/// some `c_i` already equals 1.
pub fn rescale_nonstrict<F: Field>(nf: &NormalForm<F>) -> Result<NormalForm<F>, NormalizerError> {
    if nf.spec.c.iter().any(Field::is_one) {
        return Ok(nf.clone());
    }
    let w = nf.ty.weights;
    let c1 = &nf.spec.c[0];
    let alpha = c1.pow(w.v as i64).map_err(|e| NormalizerError::NotInClass(e.to_string()))?;
    let gamma = c1.pow(w.u as i64).map_err(|e| NormalizerError::NotInClass(e.to_string()))?;
    let jet = nf.to_jet()?;
    let a = scale_vars(&jet.form.a, &alpha, &gamma)?.scale(&alpha);
    let b = scale_vars(&jet.form.b, &alpha, &gamma)?.scale(&gamma);
    let scaled = Jet::new(OneForm::new(a, b), w.k, w.l, jet.dmax);
    let spec = recover_spectral(&nf.ty, &scaled.slice(nf.ty.d))?;
    NormalForm::from_normalized_jet(&nf.ty, spec, &scaled)
}
