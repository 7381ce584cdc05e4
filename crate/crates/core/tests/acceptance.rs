//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qhnf::blowup::{branch_chart, camacho_sad, principal_chart, pullback_monomial, singular_points_principal};
use qhnf::normalizer::{
    ab_polys, genericity_report, hamiltonian_step, normalize, perturb_random, radial_step, random_normal_form, random_spec,
    GaugeStep, Normalization, NormalizerError,
};
use qhnf::oneform::{gauge_pullback, Jet, OneForm};
use qhnf::poly::monomials_of_weight;
use qhnf::spectral::{
    bezout_uv, build_omega_d, dims, e_count, floor_int, h_box, recover_spectral, s_valuations, strict_int, FoliationType,
    SpectralData, Weights,
};
use qhnf::{BivPoly, Field, RatFunc, Rational};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ty(k: u32, l: u32, n: u32) -> FoliationType {
    FoliationType::with_axes(k, l, n).expect("valid type")
}

fn coprime(k: u32, l: u32) -> bool {
    num_integer::gcd(k, l) == 1
}

fn coprime_pairs(max: u32) -> Vec<(u32, u32)> {
    (1..=max).flat_map(|k| (1..=max).map(move |l| (k, l))).filter(|&(k, l)| coprime(k, l)).collect()
}

const ROUND_TRIP_TYPES: [(u32, u32, u32); 5] = [(1, 1, 1), (1, 1, 2), (2, 1, 1), (3, 2, 1), (3, 2, 2)];

// Every normalize call in this suite goes through here.
static CALLS: AtomicUsize = AtomicUsize::new(0);
static CERTIFIED: AtomicUsize = AtomicUsize::new(0);

/// `unit * (a(phi) dphi_x + b(phi) dphi_y)` truncated at `dmax`, written out
/// from scratch rather than through the library's pullback.
fn resubstitute<F: Field>(jet: &Jet<F>, phi_x: &BivPoly<F>, phi_y: &BivPoly<F>, unit: &BivPoly<F>) -> OneForm<F> {
    let (k, l, top) = (jet.k, jet.l, jet.dmax);
    let sub = |p: &BivPoly<F>| p.compose_truncated(phi_x, phi_y, k, l, top).expect("strict gauge");
    let (a, b) = (sub(&jet.form.a), sub(&jet.form.b));
    let comp = |dx: &BivPoly<F>, dy: &BivPoly<F>, cut: i64| {
        let raw = a.mul_truncated(dx, k, l, cut).add(&b.mul_truncated(dy, k, l, cut));
        raw.mul_truncated(unit, k, l, cut)
    };
    OneForm::new(
        comp(&phi_x.diff_x(), &phi_y.diff_x(), top - k as i64),
        comp(&phi_x.diff_y(), &phi_y.diff_y(), top - l as i64),
    )
}

fn normalize_checked<F: Field>(jet: &Jet<F>, budget: i64) -> Result<Normalization<F>, String> {
    CALLS.fetch_add(1, Ordering::SeqCst);
    let res = normalize(jet, budget).map_err(|e| format!("normalize: {e}"))?;
    let input = jet.retruncate(res.output.dmax);
    let g = &res.gauge;
    let linear_ok = g.alpha().terms().chain(g.beta().terms()).all(|(&(i, j), _)| i + j >= 2)
        && g.delta().coeff(0, 0).is_zero();
    let redo = resubstitute(&input, &g.phi_x, &g.phi_y, &g.unit);
    if res.certificate_ok && linear_ok && redo == res.output.form && res.output == res.normal_form.to_jet().map_err(|e| e.to_string())? {
        CERTIFIED.fetch_add(1, Ordering::SeqCst);
    }
    Ok(res)
}

fn criterion_1() -> Check {
    let mut slowest = Duration::ZERO;
    let mut trials = 0;
    for (k, l, n) in ROUND_TRIP_TYPES {
        let t = ty(k, l, n);
        let budget = (k * l * n) as i64 + 6;
        for seed in 0..5u64 {
            let start = Instant::now();
            let nf = random_normal_form::<RatFunc>(&t, seed, budget).map_err(|e| e.to_string())?;
            let jet = perturb_random(&nf, 1000 + seed, budget).map_err(|e| e.to_string())?;
            ensure(jet != nf.to_jet().unwrap(), || format!("({k},{l},{n}) seed {seed}: perturbation was trivial"))?;
            let res = normalize_checked(&jet, budget)?;
            let took = start.elapsed();
            slowest = slowest.max(took);
            ensure(res.normal_form == nf, || format!("({k},{l},{n}) seed {seed}: normal form differs from the seed"))?;
            ensure(took < Duration::from_secs(60), || format!("({k},{l},{n}) seed {seed}: {took:.1?} exceeds 60 s"))?;
            trials += 1;
        }
    }
    Ok(format!("{trials} trials exact, slowest {slowest:.2?}"))
}

fn criterion_2() -> Check {
    // calls beyond the round trips: a form already in normal form, and
    // types outside the round-trip list
    let nf = random_normal_form::<RatFunc>(&ty(5, 3, 1), 7, 5).map_err(|e| e.to_string())?;
    let res = normalize_checked(&nf.to_jet().unwrap(), 5)?;
    ensure(res.gauge.is_identity(), || "normal form moved by a non-identity gauge".into())?;
    for (k, l, n, budget) in [(2, 1, 2, 4), (1, 2, 1, 9), (3, 1, 1, 5)] {
        let nf = random_normal_form::<RatFunc>(&ty(k, l, n), 40 + budget as u64, budget).map_err(|e| e.to_string())?;
        let jet = perturb_random(&nf, 41, budget).map_err(|e| e.to_string())?;
        normalize_checked(&jet, budget)?;
    }
    let calls = CALLS.load(Ordering::SeqCst);
    let ok = CERTIFIED.load(Ordering::SeqCst);
    ensure(ok == calls, || format!("{} of {calls} certificates failed", calls - ok))?;
    Ok(format!("{ok}/{calls} normalize calls certified by independent re-substitution"))
}

fn criterion_3() -> Check {
    let (k, l, n) = (3u32, 2u32, 2u32);
    let expected: Vec<(u32, u32)> = vec![(3, 2), (1, 5), (2, 4), (3, 3), (2, 5), (3, 4), (3, 5)];
    let mut slots = h_box(k, l, n);
    slots.sort();
    let mut want = expected.clone();
    want.sort();
    ensure(slots == want, || format!("h box {slots:?}"))?;
    let vals = s_valuations(k, l, n);
    ensure(vals == vec![5, 4, 3, 3, 2, 1], || format!("s valuations {vals:?}"))?;
    let t = ty(k, l, n);
    for seed in 0..3 {
        let nf = random_normal_form::<RatFunc>(&t, 300 + seed, 12).map_err(|e| e.to_string())?;
        let jet = perturb_random(&nf, 310 + seed, 12).map_err(|e| e.to_string())?;
        let out = normalize_checked(&jet, 12)?.normal_form;
        ensure(out.h.terms().all(|(e, _)| expected.contains(e)), || format!("seed {seed}: h support {:?}", out.h))?;
        ensure(out.h_slots() == 7, || format!("seed {seed}: {} h slots", out.h_slots()))?;
        let got: Vec<i64> = out.s.iter().map(|r| r.valuation).collect();
        ensure(got == vec![5, 4, 3, 3, 2, 1], || format!("seed {seed}: s valuations {got:?}"))?;
        // every y^j coefficient of s vanishes below its valuation
        let s = out.s_poly();
        ensure(s.terms().all(|(&(i, j), _)| (j as usize) < got.len() && i as i64 >= got[j as usize]), || {
            format!("seed {seed}: s has a term below its valuation")
        })?;
    }
    Ok("7 h slots, s valuations (5,4,3,3,2,1), normalized outputs stay inside".into())
}

/// `[a[` and `]a]` for `p/q`, `q > 0`, in plain integers.
fn floor_q(p: i64, q: i64) -> i64 {
    p.div_euclid(q)
}

fn strict_q(p: i64, q: i64) -> i64 {
    -floor_q(-p, q) - 1
}

fn criterion_4() -> Check {
    let start = Instant::now();
    let mut cases = 0;
    for (k, l) in coprime_pairs(7) {
        for n in 1..=3u32 {
            let t = ty(k, l, n);
            let (dp, d) = dims(&t).map_err(|e| e.to_string())?;
            let boxed = (0..k * n)
                .flat_map(|j| (0..l * n).map(move |i| (i, j)))
                .filter(|&(i, j)| (k * i + l * j) > k * l * n)
                .count() as i64;
            ensure(dp == boxed, || format!("({k},{l},{n}): delta' {dp} vs box {boxed}"))?;
            let (u, v) = bezout_uv(k, l).map_err(|e| e.to_string())?;
            let (k6, l6, u6, v6) = (k as i64, l as i64, u as i64, v as i64);
            let top = k6 * l6 * n as i64;
            let delta: i64 = (0..top)
                .map(|m| strict_q((l6 - u6) * (m - top), l6) - floor_q((k6 - v6) * (m - top), k6))
                .sum();
            ensure(d == delta, || format!("({k},{l},{n}): delta {d} vs moduli count {delta}"))?;
            ensure(d - dp == n as i64 - 1, || format!("({k},{l},{n}): delta - delta' = {}", d - dp))?;
            cases += 1;
        }
    }
    let took = start.elapsed();
    ensure(took < Duration::from_secs(1), || format!("took {took:.2?}"))?;
    Ok(format!("{cases} types in {took:.2?}"))
}

fn criterion_5() -> Check {
    let mut checked = 0;
    for (k, l) in coprime_pairs(7) {
        for m in 0..=500i64 {
            let brute = (0..=m / k as i64).filter(|i| (m - k as i64 * i) % l as i64 == 0).count() as i64;
            let e = e_count(k, l, m);
            ensure(e == brute, || format!("({k},{l}) m = {m}: formula {e}, enumeration {brute}"))?;
            checked += 1;
        }
        for n in 1..=3i64 {
            let top = k as i64 * l as i64 * n;
            for m in 0..=200 {
                ensure(e_count(k, l, top + m) == n + e_count(k, l, m), || format!("({k},{l}) n = {n} m = {m}: shift"))?;
            }
        }
    }
    let mut r = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..2000 {
        let a = BigRational::new(BigInt::from(r.gen_range(-1000i64..=1000)), BigInt::from(r.gen_range(1i64..=60)));
        let s = floor_int(&a) + strict_int(&-a.clone());
        ensure(s == BigInt::from(-1), || format!("[a[ + ]-a] = {s} at a = {a}"))?;
    }
    Ok(format!("{checked} counts against enumeration, shift and duality on 2000 samples"))
}

/// `c0 x^eps0 y^epsInf prod (y^k - c_i x^l)`, expanded term by term.
fn q_d_oracle(t: &FoliationType, spec: &SpectralData<RatFunc>) -> BivPoly<RatFunc> {
    let (k, l) = (t.k(), t.l());
    let mut acc = BivPoly::monomial(t.eps0 as u32, t.eps_inf as u32, spec.c0.clone());
    for c in &spec.c {
        let f = BivPoly::from_terms([((0, k), RatFunc::one()), ((l, 0), c.neg())]);
        acc = acc.mul(&f);
    }
    acc
}

fn criterion_6() -> Check {
    let types: Vec<FoliationType> = [(1, 1, 1), (3, 2, 2), (2, 1, 3), (5, 3, 1), (2, 3, 2)]
        .into_iter()
        .flat_map(|(k, l, n)| {
            let w = Weights::new(k, l).unwrap();
            [(true, true), (true, false), (false, true), (false, false)]
                .map(|(e0, ei)| FoliationType::new(w, n, e0, ei).unwrap())
        })
        .collect();
    for seed in 0..100u64 {
        let t = types[seed as usize % types.len()];
        let mut r = ChaCha8Rng::seed_from_u64(600 + seed);
        let spec: SpectralData<RatFunc> = random_spec(&t, &mut r);
        let om = build_omega_d(&t, &spec).map_err(|e| e.to_string())?;
        let back = recover_spectral(&t, &om).map_err(|e| e.to_string())?;
        ensure(back == spec, || format!("seed {seed}: recover(build(spec)) differs"))?;
        ensure(build_omega_d(&t, &back).unwrap() == om, || format!("seed {seed}: build(recover(w)) differs"))?;
        ensure(om.contract_q(t.k(), t.l()) == q_d_oracle(&t, &spec), || format!("seed {seed}: q_d factorization"))?;

        let fp = pullback_monomial(&om, &principal_chart(&t.weights));
        let pts = singular_points_principal(&spec).map_err(|e| e.to_string())?;
        let idx: Vec<RatFunc> = pts.iter().map(|z| camacho_sad(&fp.strict, z)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
        let total = idx.iter().fold(RatFunc::zero(), |s, v| s.add(v));
        ensure(total == RatFunc::from_i64(-1), || format!("seed {seed}: index sum {total}"))?;
        ensure(idx[0] == spec.lambda0 && idx[idx.len() - 1] == spec.lambda_inf, || format!("seed {seed}: axis indices"))?;
        ensure(idx[1..idx.len() - 1] == spec.lambda[..], || format!("seed {seed}: branch indices"))?;
    }
    Ok("100 specs over Q(t): inverse maps, q_d factorization, residues sum to -1".into())
}

fn poly(terms: &[((u32, u32), i64)]) -> BivPoly<Rational> {
    BivPoly::from_terms(terms.iter().map(|&(e, c)| (e, Rational::from_i64(c))))
}

fn criterion_7() -> Check {
    let mut notes = Vec::new();
    for (k, l) in [(3u32, 2u32), (5, 3)] {
        let w = Weights::new(k, l).map_err(|e| e.to_string())?;
        let (u, v) = (w.u, w.v);
        let cusp = OneForm::exact(&poly(&[((0, k), 1), ((l, 0), -1)]));
        let (kl, ku, lv) = ((k * l) as i64, (k * u) as i64, (l * v) as i64);

        let fp = pullback_monomial(&cusp, &principal_chart(&w));
        let exps = ((k * l - k * u - 1), k * l - 1);
        ensure((fp.exp_x, fp.exp_y) == exps, || format!("({k},{l}) first chart exponents {:?}", (fp.exp_x, fp.exp_y)))?;
        let a1 = poly(&[((0, 1), kl - ku), ((1, 1), -(kl - ku + 1))]);
        let b1 = poly(&[((1, 0), kl), ((2, 0), -kl)]);
        ensure(fp.strict == OneForm::new(a1, b1), || format!("({k},{l}) first chart strict part"))?;

        let fp = pullback_monomial(&cusp, &branch_chart(&w));
        ensure((fp.exp_x, fp.exp_y) == (k * l - 1, l * v - 1), || format!("({k},{l}) second chart exponents"))?;
        let a2 = poly(&[((0, 2), kl), ((0, 1), -kl)]);
        ensure(fp.strict.a == a2, || format!("({k},{l}) second chart dX part"))?;
        let stated_b2 = poly(&[((1, 1), lv), ((1, 0), -lv)]);
        // d(X^{kl} Y^{lv} (Y - 1)) has dY part X^{kl} Y^{lv - 1} ((lv + 1) Y - lv)
        let derived_b2 = poly(&[((1, 1), lv + 1), ((1, 0), -lv)]);
        ensure(fp.strict.b == derived_b2, || format!("({k},{l}) second chart dY part {}", fp.strict.b))?;
        ensure(fp.strict.b.sub(&stated_b2) == poly(&[((1, 1), 1)]), || format!("({k},{l}) second chart offset from lv X (Y - 1)"))?;
        notes.push(format!("({k},{l})"));
    }
    Ok(format!(
        "{}: principal chart exact; neighbouring chart exact in exponents and dX part, dY part is X (ku Y - lv), \
         which is lv X (Y - 1) plus X*Y",
        notes.join(", ")
    ))
}

fn criterion_8() -> Check {
    let mut checked = 0;
    for seed in 0..20u64 {
        let (k, l, n) = ROUND_TRIP_TYPES[seed as usize % ROUND_TRIP_TYPES.len()];
        let t = ty(k, l, n);
        let mut r = ChaCha8Rng::seed_from_u64(800 + seed);
        let spec: SpectralData<RatFunc> = random_spec(&t, &mut r);
        let om = build_omega_d(&t, &spec).map_err(|e| e.to_string())?;
        let q_d = om.contract_q(k, l);
        for m in 1..=(k * l * n) as i64 + 3 {
            let mm = RatFunc::from_i64(m);
            let a = om.a.scale(&mm).add(&q_d.diff_x());
            let b = om.b.scale(&mm).add(&q_d.diff_y());
            let pair = ab_polys(&t, &om, m);
            ensure(pair.a == a && pair.b == b, || format!("seed {seed} m = {m}: A, B differ from their definition"))?;
            let g = a.gcd(&b);
            ensure(g.as_constant().is_some_and(|c| !c.is_zero()), || format!("seed {seed} ({k},{l},{n}) m = {m}: gcd {g}"))?;
            checked += 1;
        }
    }
    Ok(format!("20 specs, {checked} pairs with gcd(A,B) = 1"))
}

fn random_homogeneous<F: Field>(r: &mut ChaCha8Rng, k: u32, l: u32, w: i64, strict: bool) -> BivPoly<F> {
    let terms = monomials_of_weight(k, l, w)
        .into_iter()
        .filter(|&(i, j)| !strict || i + j >= 2)
        .map(|e| (e, F::from_ratio(r.gen_range(-5..=5), r.gen_range(1..=3))));
    BivPoly::from_terms(terms)
}

fn slice_delta<F: Field>(before: &Jet<F>, after: &Jet<F>, deg: i64) -> OneForm<F> {
    after.slice(deg).sub(&before.slice(deg))
}

/// `A U + B V` with `A`, `B`, `U`, `V` written out from their definitions.
fn delta_q_expected(t: &FoliationType, om: &OneForm<RatFunc>, step: &GaugeStep<RatFunc>) -> BivPoly<RatFunc> {
    let (k, l, m) = (t.k(), t.l(), step.m);
    let q_d = om.contract_q(k, l);
    let a = om.a.scale(&RatFunc::from_i64(m)).add(&q_d.diff_x());
    let b = om.b.scale(&RatFunc::from_i64(m)).add(&q_d.diff_y());
    let u = step.alpha.add(&step.delta.mul_monomial(1, 0).scale(&RatFunc::from_ratio(k as i64, t.d + m)));
    let v = step.beta.add(&step.delta.mul_monomial(0, 1).scale(&RatFunc::from_ratio(l as i64, t.d + m)));
    a.mul(&u).add(&b.mul(&v))
}

fn delta_b_expected(t: &FoliationType, om: &OneForm<RatFunc>, delta: &BivPoly<RatFunc>, m: i64) -> BivPoly<RatFunc> {
    let q_d = om.contract_q(t.k(), t.l());
    om.b.mul(delta)
        .scale(&RatFunc::from_i64(m))
        .sub(&q_d.mul(&delta.diff_y()))
        .scale(&RatFunc::from_ratio(1, t.d + m))
}

fn check_step(t: &FoliationType, jet: &Jet<RatFunc>, step: &GaugeStep<RatFunc>, radial: bool) -> Result<Jet<RatFunc>, String> {
    let om = jet.slice(t.d);
    let out = gauge_pullback(jet, &step.alpha, &step.beta, &step.delta).map_err(|e| e.to_string())?;
    let diff = slice_delta(jet, &out, t.d + step.m);
    let dq = diff.contract_q(t.k(), t.l());
    ensure(dq == delta_q_expected(t, &om, step), || format!("m = {}: delta q differs from A U + B V", step.m))?;
    if radial {
        ensure(dq.is_zero(), || format!("m = {}: radial step moved q", step.m))?;
        ensure(diff.b == delta_b_expected(t, &om, &step.delta, step.m), || format!("m = {}: delta b oracle", step.m))?;
    }
    // nothing below the step degree moves
    for deg in t.d..t.d + step.m {
        ensure(slice_delta(jet, &out, deg).is_zero(), || format!("m = {}: degree {deg} moved", step.m))?;
    }
    Ok(out)
}

fn criterion_9() -> Check {
    let mut passed = 0;
    for seed in 0..10u64 {
        let (k, l, n) = ROUND_TRIP_TYPES[seed as usize % ROUND_TRIP_TYPES.len()];
        let t = ty(k, l, n);
        let mut r = ChaCha8Rng::seed_from_u64(900 + seed);
        let spec: SpectralData<RatFunc> = random_spec(&t, &mut r);
        let rep = genericity_report(&t, &build_omega_d(&t, &spec).map_err(|e| e.to_string())?);
        ensure(rep.passes(), || format!("seed {seed} ({k},{l},{n}): report fails at {:?}", rep.first_failure()))?;
        passed += 1;

        // the same branches with rational indices must be flagged
        let rational: SpectralData<Rational> = random_spec(&t, &mut r);
        let lift = |q: &Rational| RatFunc::from_rational(&q.to_rational().unwrap());
        let flat = SpectralData {
            c0: spec.c0.clone(),
            c: spec.c.clone(),
            lambda: rational.lambda.iter().map(lift).collect(),
            lambda0: lift(&rational.lambda0),
            lambda_inf: lift(&rational.lambda_inf),
        };
        let rep = genericity_report(&t, &build_omega_d(&t, &flat).map_err(|e| e.to_string())?);
        ensure(!rep.passes() && rep.lambdas.iter().all(|x| !x.2), || format!("seed {seed}: rational indices not flagged"))?;
        ensure(normalize(&build_omega_d(&t, &flat).map(|om| Jet::new(om, k, l, t.d + 2)).unwrap(), 2).is_err(), || {
            format!("seed {seed}: normalize accepted rational indices")
        })?;
    }

    let mut steps = 0;
    for (k, l, n) in [(3u32, 2u32, 2u32), (2, 1, 2), (1, 1, 2)] {
        let t = ty(k, l, n);
        let budget = (k * l * n) as i64 + 4;
        let nf = random_normal_form::<RatFunc>(&t, 90 + n as u64, budget).map_err(|e| e.to_string())?;
        let jet = perturb_random(&nf, 91, budget).map_err(|e| e.to_string())?;
        let om = jet.slice(t.d);
        let mut r = ChaCha8Rng::seed_from_u64(99);
        // random steps
        for m in 1..=budget {
            let step = GaugeStep {
                m,
                alpha: random_homogeneous(&mut r, k, l, k as i64 + m, true),
                beta: random_homogeneous(&mut r, k, l, l as i64 + m, true),
                delta: random_homogeneous(&mut r, k, l, m, false),
            };
            check_step(&t, &jet, &step, false)?;
            let delta: BivPoly<RatFunc> = random_homogeneous(&mut r, k, l, m, false);
            let f = |c: u32| RatFunc::from_ratio(-(c as i64), t.d + m);
            let radial = GaugeStep {
                m,
                alpha: delta.mul_monomial(1, 0).scale(&f(k)),
                beta: delta.mul_monomial(0, 1).scale(&f(l)),
                delta,
            };
            check_step(&t, &jet, &radial, true)?;
            steps += 2;
        }
        ensure(om == jet.slice(t.d), || "initial part changed".into())?;
        // the steps the normalizer itself takes
        let mut cur = jet.clone();
        for m in 1..=budget {
            let hs = hamiltonian_step(&cur, &t, m).map_err(|e: NormalizerError| e.to_string())?;
            cur = check_step(&t, &cur, &hs, false)?;
            let rs = radial_step(&cur, &t, m).map_err(|e| e.to_string())?;
            cur = check_step(&t, &cur, &rs, true)?;
            steps += 2;
        }
        ensure(cur == nf.to_jet().unwrap().retruncate(cur.dmax), || format!("({k},{l},{n}): stepping did not reach the seed"))?;
    }
    Ok(format!("{passed} generic specs pass, rational indices flagged, {steps} steps match the oracles"))
}

fn main() {
    let criteria: [(&str, fn() -> Check); 9] = [
        ("round-trip uniqueness", criterion_1),
        ("gauge certificate", criterion_2),
        ("worked example shape", criterion_3),
        ("dimension formulas", criterion_4),
        ("monomial counts", criterion_5),
        ("spectral dictionary", criterion_6),
        ("pullback displays", criterion_7),
        ("coprimality of A and B", criterion_8),
        ("genericity machinery", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let took = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS {} {name}: {detail} [{took:.1?}]", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why} [{took:.1?}]", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
    println!("all {} criteria passed", criteria.len());
}
