use super::*;
use crate::scalar::{RatFunc, Rational};
use crate::spectral::e_count;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn ty(k: u32, l: u32, n: u32) -> FoliationType {
    FoliationType::with_axes(k, l, n).unwrap()
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn rand_poly<F: Field>(r: &mut ChaCha8Rng, k: u32, l: u32, w: i64) -> BivPoly<F> {
    let mut p = BivPoly::zero();
    for e in crate::poly::monomials_of_weight(k, l, w) {
        p.add_term(e, &F::from_i64(r.gen_range(-3..=3)));
    }
    p
}

/// Slices of `after - before` at degree `deg`.
fn slice_diff<F: Field>(before: &Jet<F>, after: &Jet<F>, deg: i64) -> OneForm<F> {
    after.slice(deg).sub(&before.slice(deg))
}

#[test]
fn ab_identity() {
    let t = ty(3, 2, 2);
    let spec: SpectralData<RatFunc> = random_spec(&t, &mut rng(1));
    let om = build_omega_d(&t, &spec).unwrap();
    let q_d = om.contract_q(3, 2);
    for m in 1..6 {
        let p = ab_polys(&t, &om, m);
        let lhs = p.a.mul_monomial(1, 0).scale(&RatFunc::from_i64(3)).add(&p.b.mul_monomial(0, 1).scale(&RatFunc::from_i64(2)));
        assert_eq!(lhs, q_d.scale(&RatFunc::from_i64(t.d + m)));
        assert_eq!(p.a_bar.mul_monomial(0, 1), p.a);
        assert_eq!(p.b_bar.mul_monomial(1, 0), p.b);
    }
}

#[test]
fn ab_coprime_over_function_field() {
    for (k, l, n) in [(3, 2, 1), (2, 1, 2), (1, 1, 2)] {
        let t = ty(k, l, n);
        let spec: SpectralData<RatFunc> = random_spec(&t, &mut rng(7));
        let om = build_omega_d(&t, &spec).unwrap();
        for m in 1..=(k * l * n) as i64 + 3 {
            assert!(ab_polys(&t, &om, m).is_coprime(), "({k},{l},{n}) m = {m}");
        }
    }
}

#[test]
fn a_bar_pattern() {
    let t = ty(3, 2, 2);
    let spec: SpectralData<RatFunc> = random_spec(&t, &mut rng(2));
    let om = build_omega_d(&t, &spec).unwrap();
    let p = ab_polys(&t, &om, 3);
    let slots: Vec<(u32, u32)> = (0..=2).map(|i| (2 * (2 - i), 3 * i)).collect();
    assert_eq!(slots.len() as i64, e_count(3, 2, 12));
    assert!(p.a_bar.terms().all(|(e, _)| slots.contains(e)));
    assert!(p.b_bar.terms().all(|(e, _)| slots.contains(e)));
}

#[test]
fn genericity_examples() {
    let t = ty(3, 2, 1);
    let spec: SpectralData<RatFunc> = random_spec(&t, &mut rng(3));
    let rep = genericity_report(&t, &build_omega_d(&t, &spec).unwrap());
    assert_eq!(rep.degrees[0], DegreeVerdict { m: 1, e_m: 0, determinant_nonzero: true });
    assert!(rep.passes());

    let t = ty(3, 2, 2);
    let spec: SpectralData<RatFunc> = random_spec(&t, &mut rng(4));
    assert!(genericity_report(&t, &build_omega_d(&t, &spec).unwrap()).passes());

    let spec: SpectralData<Rational> = random_spec(&t, &mut rng(5));
    let rep = genericity_report(&t, &build_omega_d(&t, &spec).unwrap());
    assert!(rep.spectral_ok && !rep.lambdas_irrational() && !rep.passes());
    assert!(rep.lambdas.iter().all(|l| !l.2));
}

fn nf_of(k: u32, l: u32, n: u32, seed: u64, budget: i64) -> NormalForm<RatFunc> {
    random_normal_form(&ty(k, l, n), seed, budget).unwrap()
}

#[test]
fn hamiltonian_zero_on_normal_shape() {
    let nf = nf_of(3, 2, 1, 11, 8);
    let jet = nf.to_jet().unwrap();
    for m in 1..=8 {
        assert!(hamiltonian_step(&jet, &nf.ty, m).unwrap().is_zero());
        assert!(radial_step(&jet, &nf.ty, m).unwrap().is_zero());
    }
}

/// Adds an axis-preserving random term at degree `d + m`.
fn disturb(jet: &Jet<RatFunc>, ty: &FoliationType, m: i64, seed: u64) -> Jet<RatFunc> {
    let (k, l, d) = (ty.k(), ty.l(), ty.d);
    let mut r = rng(seed);
    let a = rand_poly::<RatFunc>(&mut r, k, l, d + m - k as i64 - l as i64).mul_monomial(0, 1);
    let b = rand_poly::<RatFunc>(&mut r, k, l, d + m - k as i64 - l as i64).mul_monomial(1, 0);
    Jet::new(jet.form.add(&OneForm::new(a, b)), k, l, jet.dmax)
}

fn q_bar_outside(jet: &Jet<RatFunc>, t: &FoliationType, m: i64) -> Vec<(u32, u32)> {
    let q = jet.slice(t.d + m).contract_q(t.k(), t.l()).div_monomial(1, 1).unwrap();
    q.terms()
        .map(|(&e, _)| e)
        .filter(|&(i, j)| i >= t.l() * t.n || j >= t.k() * t.n)
        .collect()
}

#[test]
fn hamiltonian_clears_outside_box() {
    let nf = nf_of(3, 2, 2, 12, 16);
    let t = nf.ty;
    let base = nf.to_jet().unwrap();
    for m in [1, 2, 5, 11, 12, 14] {
        let jet = disturb(&base, &t, m, 100 + m as u64);
        let step = hamiltonian_step(&jet, &t, m).unwrap();
        assert!(step.delta.is_zero());
        let out = gauge_pullback(&jet, &step.alpha, &step.beta, &step.delta).unwrap();
        assert!(q_bar_outside(&out, &t, m).is_empty(), "m = {m}");
        if m >= 12 {
            assert!(out.slice(t.d + m).contract_q(3, 2).is_zero());
        }
        for deg in t.d..t.d + m {
            assert_eq!(out.slice(deg), jet.slice(deg));
        }
    }
}

#[test]
fn radial_lowers_y_degree() {
    let nf = nf_of(3, 2, 2, 13, 10);
    let t = nf.ty;
    let base = nf.to_jet().unwrap();
    for m in [3, 4, 6, 9] {
        let jet = disturb(&base, &t, m, 200 + m as u64);
        let h = hamiltonian_step(&jet, &t, m).unwrap();
        let jet = gauge_pullback(&jet, &h.alpha, &h.beta, &h.delta).unwrap();
        let step = radial_step(&jet, &t, m).unwrap();
        let out = gauge_pullback(&jet, &step.alpha, &step.beta, &step.delta).unwrap();
        let b = out.slice(t.d + m).b;
        assert!(b.terms().all(|(&(_, j), _)| j < 6), "m = {m}");
        assert_eq!(out.slice(t.d + m).contract_q(3, 2), jet.slice(t.d + m).contract_q(3, 2));
    }
}

#[test]
fn radial_needs_clean_q() {
    let nf = nf_of(3, 2, 2, 14, 10);
    let jet = disturb(&nf.to_jet().unwrap(), &nf.ty, 4, 9);
    assert_eq!(radial_step(&jet, &nf.ty, 4), Err(NormalizerError::PrerequisiteDegreesDirty { m: 4 }));
    assert_eq!(hamiltonian_step(&jet, &nf.ty, 5), Err(NormalizerError::PrerequisiteDegreesDirty { m: 4 }));
}

#[test]
fn delta_q_oracle() {
    let nf = nf_of(3, 2, 2, 15, 12);
    let t = nf.ty;
    let jet = perturb_random(&nf, 3, 12).unwrap();
    let om = jet.slice(t.d);
    for m in 1..=12 {
        let mut r = rng(300 + m as u64);
        let step = GaugeStep {
            m,
            alpha: rand_poly(&mut r, 3, 2, 3 + m),
            beta: rand_poly(&mut r, 3, 2, 2 + m),
            delta: rand_poly(&mut r, 3, 2, m),
        };
        if step.alpha.terms().any(|(&(i, j), _)| i + j < 2) || step.beta.terms().any(|(&(i, j), _)| i + j < 2) {
            continue;
        }
        let out = gauge_pullback(&jet, &step.alpha, &step.beta, &step.delta).unwrap();
        let dq = slice_diff(&jet, &out, t.d + m).contract_q(3, 2);
        let p = ab_polys(&t, &om, m);
        assert_eq!(dq, p.a.mul(&step.u_poly(&t)).add(&p.b.mul(&step.v_poly(&t))), "m = {m}");
    }
}

#[test]
fn delta_b_oracle() {
    let nf = nf_of(2, 1, 2, 16, 10);
    let t = nf.ty;
    let (k, l, d) = (2i64, 1i64, t.d);
    let jet = perturb_random(&nf, 4, 10).unwrap();
    let om = jet.slice(d);
    let q_d = om.contract_q(2, 1);
    for m in 1..=10 {
        let mut r = rng(400 + m as u64);
        let delta: BivPoly<RatFunc> = rand_poly(&mut r, 2, 1, m);
        let f = |c: i64| RatFunc::from_ratio(-c, d + m);
        let alpha = delta.mul_monomial(1, 0).scale(&f(k));
        let beta = delta.mul_monomial(0, 1).scale(&f(l));
        let out = gauge_pullback(&jet, &alpha, &beta, &delta).unwrap();
        let db = slice_diff(&jet, &out, d + m).b;
        let expect = om
            .b
            .mul(&delta)
            .scale(&RatFunc::from_i64(m))
            .sub(&q_d.mul(&delta.diff_y()))
            .scale(&RatFunc::from_ratio(1, d + m));
        assert_eq!(db, expect, "m = {m}");
        assert!(slice_diff(&jet, &out, d + m).contract_q(2, 1).is_zero());
    }
}

#[test]
fn normalize_fixes_normal_forms() {
    let nf = nf_of(3, 2, 1, 17, 9);
    let res = normalize(&nf.to_jet().unwrap(), 9).unwrap();
    assert!(res.gauge.is_identity());
    assert_eq!(res.normal_form, nf);
}

#[test]
fn round_trip_small_types() {
    for (k, l, n) in [(1, 1, 1), (1, 1, 2), (2, 1, 1), (3, 2, 1)] {
        let budget = (k * l * n) as i64 + 6;
        for seed in 0..2 {
            let nf = nf_of(k, l, n, seed, budget);
            let jet = perturb_random(&nf, seed + 50, budget).unwrap();
            let res = normalize(&jet, budget).unwrap();
            assert!(res.certificate_ok);
            assert_eq!(res.normal_form, nf, "({k},{l},{n}) seed {seed}");
        }
    }
}

#[test]
fn support_for_three_two_two() {
    let nf = nf_of(3, 2, 2, 21, 10);
    let jet = perturb_random(&nf, 22, 10).unwrap();
    let res = normalize(&jet, 10).unwrap();
    let out = &res.normal_form;
    assert!(out.check_support());
    assert_eq!(out.h_slots(), 7);
    assert_eq!(out.s.iter().map(|r| r.valuation).collect::<Vec<_>>(), vec![5, 4, 3, 3, 2, 1]);
    assert_eq!(out, &nf);
}

#[test]
fn idempotent() {
    let nf = nf_of(2, 1, 1, 23, 8);
    let jet = perturb_random(&nf, 24, 8).unwrap();
    let first = normalize(&jet, 8).unwrap();
    let second = normalize(&first.output, 8).unwrap();
    assert_eq!(first.normal_form, second.normal_form);
    assert!(second.gauge.is_identity());
}

#[test]
fn per_step_locality() {
    let nf = nf_of(2, 1, 2, 25, 8);
    let t = nf.ty;
    let mut cur = perturb_random(&nf, 26, 8).unwrap();
    for m in 1..=8 {
        let before = cur.clone();
        let h = hamiltonian_step(&cur, &t, m).unwrap();
        cur = gauge_pullback(&cur, &h.alpha, &h.beta, &h.delta).unwrap();
        let r = radial_step(&cur, &t, m).unwrap();
        cur = gauge_pullback(&cur, &r.alpha, &r.beta, &r.delta).unwrap();
        for deg in t.d..t.d + m {
            assert_eq!(cur.slice(deg), before.slice(deg), "m = {m}, degree {deg}");
        }
    }
}

#[test]
fn perturb_is_deterministic() {
    let nf = nf_of(2, 1, 1, 27, 6);
    assert_eq!(perturb_random(&nf, 5, 6).unwrap(), perturb_random(&nf, 5, 6).unwrap());
    assert_ne!(perturb_random(&nf, 5, 6).unwrap(), perturb_random(&nf, 6, 6).unwrap());
    assert_eq!(perturb_random_with_pool(&nf, 5, 6, &[0]).unwrap(), nf.to_jet().unwrap().retruncate(nf.ty.d + 6));
}

#[test]
fn error_paths() {
    let nf = nf_of(2, 1, 1, 28, 4);
    let jet = nf.to_jet().unwrap();
    assert_eq!(normalize(&jet, 0).err(), Some(NormalizerError::TruncationTooSmall));
    assert!(matches!(normalize(&jet, 9), Err(NormalizerError::JetTooShort { .. })));

    let t = FoliationType::new(Weights::new(3, 2).unwrap(), 1, true, false).unwrap();
    let spec: SpectralData<RatFunc> = random_spec(&t, &mut rng(1));
    let no_axis = Jet::new(build_omega_d(&t, &spec).unwrap(), 3, 2, t.d + 3);
    assert_eq!(normalize(&no_axis, 3).err(), Some(NormalizerError::AxisRequired));

    let t = ty(2, 1, 1);
    let spec: SpectralData<Rational> = random_spec(&t, &mut rng(2));
    let rational = Jet::new(build_omega_d(&t, &spec).unwrap(), 2, 1, t.d + 3);
    assert!(matches!(normalize(&rational, 3), Err(NormalizerError::RationalIndex(_))));
}

fn fixed_nf(c: Vec<RatFunc>) -> NormalForm<RatFunc> {
    let t = ty(1, 1, 2);
    let tt = RatFunc::parameter().unwrap();
    let lambda = vec![tt.clone(), tt.scale_i(2)];
    let lambda0 = tt.neg().add(&RatFunc::from_ratio(1, 3));
    let mut spec = SpectralData { c0: RatFunc::one(), c, lambda, lambda0, lambda_inf: RatFunc::zero() };
    spec.lambda_inf = spec.relation_defect(&t).neg();
    let spec = spec.canonicalize();
    let mut nf = NormalForm::from_normalized_jet(&t, spec.clone(), &Jet::new(build_omega_d(&t, &spec).unwrap(), 1, 1, t.d + 4)).unwrap();
    nf.s[0].coefficients[0] = RatFunc::from_i64(2);
    nf
}

trait ScaleI {
    fn scale_i(&self, n: i64) -> Self;
}

impl ScaleI for RatFunc {
    fn scale_i(&self, n: i64) -> Self {
        self.mul(&RatFunc::from_i64(n))
    }
}

#[test]
fn rescale_examples() {
    let nf = fixed_nf(vec![RatFunc::from_i64(4), RatFunc::from_i64(8)]);
    let out = rescale_nonstrict(&nf).unwrap();
    assert_eq!(out.spec.c, vec![RatFunc::one(), RatFunc::from_i64(2)]);
    assert_eq!(out.spec.lambda, nf.spec.lambda);
    assert!(out.check_support());

    let nf = fixed_nf(vec![RatFunc::one(), RatFunc::from_i64(3)]);
    assert_eq!(rescale_nonstrict(&nf).unwrap(), nf);

    let tt = RatFunc::parameter().unwrap();
    let nf = fixed_nf(vec![tt.clone(), RatFunc::from_i64(3)]);
    let out = rescale_nonstrict(&nf).unwrap();
    // the constant 3 sorts first and is the one scaled to 1
    assert_eq!(out.spec.c, vec![RatFunc::one(), tt.div(&RatFunc::from_i64(3)).unwrap()]);
}

#[test]
fn dimension_consistency() {
    for (k, l, n) in [(1, 1, 1), (3, 2, 2), (5, 3, 1), (2, 1, 3)] {
        let t = ty(k, l, n);
        let top = (k * l * n) as i64;
        let sum: i64 = (1..top).map(|m| e_count(k, l, top + m) - 2 * e_count(k, l, m)).sum();
        assert_eq!(sum, h_box(k, l, n).len() as i64);
        assert_eq!(dims(&t).unwrap().0, sum);
    }
}

#[test]
fn random_spec_without_axes() {
    let w = crate::spectral::Weights::new(5, 3).unwrap();
    for n in 1..=2 {
        let t = FoliationType::new(w, n, false, false).unwrap();
        let spec: SpectralData<RatFunc> = random_spec(&t, &mut rng(n as u64));
        assert!(spec.relation_defect(&t).is_zero());
        assert_eq!(spec.lambda[0].is_rational_constant(), n == 1);
        assert!(build_omega_d(&t, &spec).is_ok());
    }
}
