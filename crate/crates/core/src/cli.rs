//! Command-line front end. `run` returns the exit code and the text to print.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::blowup::{branch_chart, camacho_sad, principal_chart, pullback_monomial, singular_points_principal};
use crate::io::{read_form_file, type_of_degree, FormJson, GaugeJson, IoError, NormalFormJson, PullbackJson, SpectralJson, TypeJson};
use crate::normalizer::{genericity_report, normalize, perturb_random, random_normal_form, NormalizerError};
use crate::oneform::{decompose_hs, Jet, OneForm};
use crate::parse::parse_poly;
use crate::poly::BivPoly;
use crate::scalar::{Field, RatFunc, Rational};
use crate::spectral::{dims, e_count, verify_membership, FoliationType, Weights};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_NON_GENERIC: i32 = 2;
pub const EXIT_USAGE: i32 = 3;
pub const EXIT_NOT_IN_CLASS: i32 = 4;

#[derive(Parser, Debug, Clone)]
#[command(name = "qhnf", version, about = "Strict formal normal forms of quasi-homogeneous singular 1-forms")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub cfg: RunConfig,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// Type, spectral data, Camacho-Sad indices and genericity of a form.
    Analyze,
    /// Normal form below d + degree, with the normalizing gauge.
    Normalize,
    /// Hamiltonian/radial splitting of a jet.
    Decompose,
    /// The counts e_m, delta' and delta.
    Counts,
    /// Pullback of a form (default d(y^k - x^l)) to the two weighted charts.
    Pullback,
    /// Membership conditions of a form.
    Verify,
    /// Seeded round trips on small types.
    Selftest,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FieldChoice {
    Rationals,
    #[default]
    RationalFunctions,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Human,
    Json,
}

#[derive(clap::Args, Debug, Clone, Default)]
pub struct RunConfig {
    #[arg(long, global = true)]
    pub k: Option<u32>,
    #[arg(long, global = true)]
    pub l: Option<u32>,
    /// Number of cuspidal branches (counts, seeded normalize).
    #[arg(long, global = true)]
    pub n: Option<u32>,
    /// Degree budget D above the initial degree d.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub degree: Option<i64>,
    #[arg(long, global = true, value_enum, default_value_t)]
    pub field: FieldChoice,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// JSON form file {"k","l","epsilon0","epsilonInf","a","b"}.
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// dx coefficient.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub a: Option<String>,
    /// dy coefficient.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub b: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn usage(msg: impl Into<String>) -> Self {
        CliError { code: EXIT_USAGE, message: msg.into() }
    }

    fn not_in_class(msg: impl Into<String>) -> Self {
        CliError { code: EXIT_NOT_IN_CLASS, message: msg.into() }
    }
}

impl From<IoError> for CliError {
    fn from(e: IoError) -> Self {
        match e {
            IoError::Type(_) => CliError::not_in_class(e.to_string()),
            _ => CliError::usage(e.to_string()),
        }
    }
}

impl From<NormalizerError> for CliError {
    fn from(e: NormalizerError) -> Self {
        use NormalizerError::*;
        let code = match e {
            NonGeneric { .. } | RationalIndex(_) | NonGenericRadial { .. } => EXIT_NON_GENERIC,
            NotInClass(_) | AxisRequired | Spectral(_) => EXIT_NOT_IN_CLASS,
            TruncationTooSmall | JetTooShort { .. } => EXIT_USAGE,
            PrerequisiteDegreesDirty { .. } | CertificateFailed | Form(_) => EXIT_INTERNAL,
        };
        CliError { code, message: e.to_string() }
    }
}

/// Human text plus the JSON document of one command.
pub struct Report {
    pub human: String,
    pub json: Value,
    pub code: i32,
}

impl Report {
    fn ok(human: String, json: Value) -> Self {
        Report { human, json, code: EXIT_OK }
    }
}

/// Exit code and the text for stdout and stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            return if e.use_stderr() {
                Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: e.to_string() }
            } else {
                Outcome { code: EXIT_OK, stdout: e.to_string(), stderr: String::new() }
            };
        }
    };
    let format = cli.cfg.format;
    let res = match cli.cfg.field {
        FieldChoice::Rationals => dispatch::<Rational>(cli.command, &cli.cfg),
        FieldChoice::RationalFunctions => dispatch::<RatFunc>(cli.command, &cli.cfg),
    };
    match res {
        Ok(rep) => {
            let text = match format {
                Format::Human => rep.human,
                Format::Json => serde_json::to_string_pretty(&rep.json).expect("plain JSON") + "\n",
            };
            Outcome { code: rep.code, stdout: text, stderr: String::new() }
        }
        Err(e) => {
            let text = match format {
                Format::Human => format!("error: {}\n", e.message),
                Format::Json => {
                    serde_json::to_string_pretty(&json!({"error": e.message, "exitCode": e.code})).expect("plain JSON") + "\n"
                }
            };
            Outcome { code: e.code, stdout: String::new(), stderr: text }
        }
    }
}

fn dispatch<F: Field>(cmd: Command, cfg: &RunConfig) -> Result<Report, CliError> {
    match cmd {
        Command::Analyze => run_analyze::<F>(cfg),
        Command::Normalize => run_normalize::<F>(cfg),
        Command::Decompose => run_decompose::<F>(cfg),
        Command::Counts => run_counts(cfg),
        Command::Pullback => run_pullback::<F>(cfg),
        Command::Verify => run_verify::<F>(cfg),
        Command::Selftest => run_selftest(cfg),
    }
}

fn weights(cfg: &RunConfig) -> Result<(u32, u32), CliError> {
    let k = cfg.k.ok_or_else(|| CliError::usage("--k is required"))?;
    let l = cfg.l.ok_or_else(|| CliError::usage("--l is required"))?;
    Weights::new(k, l).map_err(|e| CliError::usage(e.to_string()))?;
    Ok((k, l))
}

/// The form from `--input`, or from `--a/--b` with the axis flags read off `q_d`.
pub fn load_form<F: Field>(cfg: &RunConfig) -> Result<(Jet<F>, FoliationType), CliError> {
    if let Some(path) = &cfg.input {
        if cfg.a.is_some() || cfg.b.is_some() {
            return Err(CliError::usage("--input and --a/--b are exclusive"));
        }
        let (jet, ty) = read_form_file::<F>(path)?;
        // a file without "Dmax" holds an exact polynomial form
        let dmax = match cfg.degree {
            Some(dd) if !file_has_dmax(path) => jet.dmax.max(ty.d + dd),
            _ => jet.dmax,
        };
        return Ok((Jet::new(jet.form, jet.k, jet.l, dmax), ty));
    }
    let (k, l) = weights(cfg)?;
    let text = |name: &str, v: &Option<String>| -> Result<BivPoly<F>, CliError> {
        let s = v.as_ref().ok_or_else(|| CliError::usage(format!("--{name} (or --input) is required")))?;
        parse_poly(s).map_err(|e| CliError::usage(format!("--{name}: {e}")))
    };
    let form = OneForm::new(text("a", &cfg.a)?, text("b", &cfg.b)?);
    let d = form.order(k, l).ok_or_else(|| CliError::not_in_class("the form is zero"))?;
    let q_d = form.slice(k, l, d).contract_q(k, l);
    let eps0 = q_d.div_monomial(1, 0).is_some();
    let eps_inf = q_d.div_monomial(0, 1).is_some();
    let ty = type_of_degree(k, l, d, eps0, eps_inf)?;
    let top = [(&form.a, k), (&form.b, l)]
        .iter()
        .filter_map(|(p, s)| p.max_weight(k, l).map(|w| w + *s as i64))
        .max()
        .unwrap_or(d);
    let dmax = cfg.degree.map_or(top, |dd| top.max(d + dd));
    Ok((Jet::new(form, k, l, dmax), ty))
}

fn file_has_dmax(path: &std::path::Path) -> bool {
    std::fs::read_to_string(path)
        .ok()
        .and_then(|t| serde_json::from_str::<Value>(&t).ok())
        .is_some_and(|v| v.get("Dmax").is_some())
}

fn type_line(ty: &FoliationType) -> String {
    format!(
        "type (k, l) = ({}, {}), n = {}, epsilon0 = {}, epsilonInf = {}, d = {}",
        ty.k(),
        ty.l(),
        ty.n,
        ty.eps0 as u8,
        ty.eps_inf as u8,
        ty.d
    )
}

pub fn run_analyze<F: Field>(cfg: &RunConfig) -> Result<Report, CliError> {
    let (jet, ty) = load_form::<F>(cfg)?;
    let rep = verify_membership(&jet, &ty);
    if !rep.in_class() {
        return Err(CliError::not_in_class(rep.failures.join("; ")));
    }
    let spec = rep.spec.clone().expect("spectral data of a class member");
    let mut h = String::new();
    writeln!(h, "{}", type_line(&ty)).unwrap();
    writeln!(h, "c0 = {}", spec.c0).unwrap();
    for (i, (c, l)) in spec.c.iter().zip(&spec.lambda).enumerate() {
        writeln!(h, "branch {}: c = {c}, lambda = {l}", i + 1).unwrap();
    }
    writeln!(h, "lambda0 = {}{}", spec.lambda0, if ty.eps0 { "" } else { " (no axis x = 0)" }).unwrap();
    writeln!(h, "lambdaInf = {}{}", spec.lambda_inf, if ty.eps_inf { "" } else { " (no axis y = 0)" }).unwrap();
    let sum = spec.all_lambdas().iter().fold(F::zero(), |s, v| s.add(v));
    writeln!(h, "index sum = {sum}").unwrap();

    let omega_d = jet.slice(ty.d);
    let strict = pullback_monomial(&omega_d, &principal_chart(&ty.weights)).strict;
    let mut indices = Vec::new();
    if let Ok(points) = singular_points_principal(&spec) {
        for p in points {
            let idx = camacho_sad(&strict, &p).map(|v| v.to_string()).unwrap_or_else(|e| format!("error: {e}"));
            writeln!(h, "Camacho-Sad index at {p}: {idx}").unwrap();
            indices.push(json!({"point": p.to_string(), "index": idx}));
        }
    }

    let mut gen_json = Value::Null;
    if ty.eps0 && ty.eps_inf {
        let gen = genericity_report(&ty, &omega_d);
        let failing: Vec<i64> = gen.degrees.iter().filter(|v| !v.determinant_nonzero).map(|v| v.m).collect();
        writeln!(
            h,
            "genericity: determinants {}; indices {}",
            if failing.is_empty() { "nonzero".to_string() } else { format!("vanish at m = {failing:?}") },
            if gen.lambdas_irrational() { "irrational" } else { "some rational" }
        )
        .unwrap();
        gen_json = json!({
            "degrees": gen.degrees.iter().map(|v| json!({"m": v.m, "e": v.e_m, "determinantNonzero": v.determinant_nonzero})).collect::<Vec<_>>(),
            "lambdasIrrational": gen.lambdas_irrational(),
            "passes": gen.passes(),
        });
    } else {
        writeln!(h, "genericity: not assessed (normalization needs both axes)").unwrap();
    }
    let js = json!({
        "type": TypeJson::from_type(&ty),
        "spec": SpectralJson::from_spec(&spec),
        "indexSum": sum.to_string(),
        "camachoSad": indices,
        "genericity": gen_json,
    });
    Ok(Report::ok(h, js))
}

pub fn run_normalize<F: Field>(cfg: &RunConfig) -> Result<Report, CliError> {
    let budget = cfg.degree.ok_or_else(|| CliError::usage("--degree is required"))?;
    if budget < 1 {
        return Err(CliError::usage("--degree must be at least 1"));
    }
    let seeded = cfg.input.is_none() && cfg.a.is_none() && cfg.b.is_none();
    let (jet, seed_nf) = if seeded {
        let seed = cfg.seed.ok_or_else(|| CliError::usage("give a form (--input or --a/--b) or --seed with --k --l --n"))?;
        let (k, l) = weights(cfg)?;
        let n = cfg.n.ok_or_else(|| CliError::usage("--n is required with --seed"))?;
        let ty = FoliationType::with_axes(k, l, n).map_err(|e| CliError::usage(e.to_string()))?;
        let nf = random_normal_form::<F>(&ty, seed, budget)?;
        (perturb_random(&nf, seed.wrapping_add(1), budget)?, Some(nf))
    } else {
        (load_form::<F>(cfg)?.0, None)
    };
    let res = normalize(&jet, budget)?;
    let nf = &res.normal_form;
    let mut h = String::new();
    writeln!(h, "{}", type_line(&nf.ty)).unwrap();
    writeln!(h, "spectral data: {}", serde_json::to_string(&SpectralJson::from_spec(&nf.spec)).unwrap()).unwrap();
    writeln!(h, "h = {}", nf.h.display_weighted(nf.ty.k(), nf.ty.l())).unwrap();
    for row in &nf.s {
        let coeffs: Vec<String> = row.coefficients.iter().map(ToString::to_string).collect();
        writeln!(h, "s_{} = x^{} * [{}]", row.j, row.valuation, coeffs.join(", ")).unwrap();
    }
    writeln!(h, "gauge x -> {}", res.gauge.phi_x.display_weighted(nf.ty.k(), nf.ty.l())).unwrap();
    writeln!(h, "gauge y -> {}", res.gauge.phi_y.display_weighted(nf.ty.k(), nf.ty.l())).unwrap();
    writeln!(h, "unit = {}", res.gauge.unit.display_weighted(nf.ty.k(), nf.ty.l())).unwrap();
    writeln!(h, "certificate: {}", if res.certificate_ok { "verified" } else { "FAILED" }).unwrap();
    let mut js = json!({
        "normalForm": NormalFormJson::from_nf(nf),
        "gauge": GaugeJson::from_gauge(&res.gauge),
        "certificate": res.certificate_ok,
    });
    let mut code = if res.certificate_ok { EXIT_OK } else { EXIT_INTERNAL };
    if let Some(orig) = seed_nf {
        let same = &orig == nf;
        writeln!(h, "seed {}: round trip {}", cfg.seed.unwrap(), if same { "reproduces the seed normal form" } else { "DIFFERS" }).unwrap();
        js["seed"] = json!(cfg.seed);
        js["roundTrip"] = json!(same);
        if !same {
            code = EXIT_INTERNAL;
        }
    }
    Ok(Report { human: h, json: js, code })
}

pub fn run_decompose<F: Field>(cfg: &RunConfig) -> Result<Report, CliError> {
    let (mut jet, _) = load_form::<F>(cfg)?;
    if let Some(d) = cfg.degree {
        jet = jet.retruncate(jet.form.order(jet.k, jet.l).unwrap_or(0) + d);
    }
    let hs = decompose_hs(&jet).map_err(|e| CliError::not_in_class(e.to_string()))?;
    let (hh, ss) = (hs.h.display_weighted(jet.k, jet.l), hs.s.display_weighted(jet.k, jet.l));
    let human = format!("omega = dh + s (l y dx - k x dy) below degree {}\nh = {hh}\ns = {ss}\n", jet.dmax);
    Ok(Report::ok(human, json!({"h": hh, "s": ss, "Dmax": jet.dmax})))
}

pub fn run_counts(cfg: &RunConfig) -> Result<Report, CliError> {
    let (k, l) = weights(cfg)?;
    let n = cfg.n.ok_or_else(|| CliError::usage("--n is required"))?;
    let ty = FoliationType::with_axes(k, l, n).map_err(|e| CliError::usage(e.to_string()))?;
    let (dp, d) = dims(&ty).map_err(|e| CliError::usage(e.to_string()))?;
    let top = (k * l * n) as i64;
    let mut h = format!("(k, l, n) = ({k}, {l}, {n}), d = {}\n  m  e_m  e_(kln+m)\n", ty.d);
    let mut rows = Vec::new();
    for m in 0..top {
        let (e, e2) = (e_count(k, l, m), e_count(k, l, top + m));
        writeln!(h, "{m:>3}  {e:>3}  {e2:>9}").unwrap();
        rows.push(json!({"m": m, "e": e, "eShifted": e2}));
    }
    writeln!(h, "delta' = {dp}\ndelta = {d}\ndelta - delta' = {}", d - dp).unwrap();
    let js = json!({"k": k, "l": l, "n": n, "d": ty.d, "e": rows, "deltaPrime": dp, "delta": d, "difference": d - dp});
    Ok(Report::ok(h, js))
}

pub fn run_pullback<F: Field>(cfg: &RunConfig) -> Result<Report, CliError> {
    let (form, k, l) = if cfg.input.is_some() || cfg.a.is_some() || cfg.b.is_some() {
        let (jet, ty) = load_form::<F>(cfg)?;
        (jet.form, ty.k(), ty.l())
    } else {
        let (k, l) = weights(cfg)?;
        let f = BivPoly::monomial(0, k, F::one()).sub(&BivPoly::monomial(l, 0, F::one()));
        (OneForm::exact(&f), k, l)
    };
    let w = Weights::new(k, l).expect("validated");
    let main = pullback_monomial(&form, &principal_chart(&w));
    let side = pullback_monomial(&form, &branch_chart(&w));
    let mut h = String::new();
    for (name, map, p) in [("principal", principal_chart(&w), &main), ("neighbouring", branch_chart(&w), &side)] {
        writeln!(h, "{name} chart (x, y) = (X^{} Y^{}, X^{} Y^{}):", map.a, map.b, map.c, map.d).unwrap();
        writeln!(h, "  X^{} Y^{} * (({}) dX + ({}) dY)", p.exp_x, p.exp_y, p.strict.a, p.strict.b).unwrap();
    }
    let js = json!({"principal": PullbackJson::from_pullback(&main), "neighbouring": PullbackJson::from_pullback(&side)});
    Ok(Report::ok(h, js))
}

pub fn run_verify<F: Field>(cfg: &RunConfig) -> Result<Report, CliError> {
    let (jet, ty) = load_form::<F>(cfg)?;
    let rep = verify_membership(&jet, &ty);
    let flag = |b: bool| if b { "ok" } else { "FAILS" };
    let mut h = format!("{}\n", type_line(&ty));
    writeln!(h, "order: {}", flag(rep.order_ok)).unwrap();
    writeln!(h, "condition (i) axis divisibility: {}", flag(rep.axis_divisibility)).unwrap();
    writeln!(h, "condition (ii) factorization of q_d: {}", flag(rep.factorization_ok)).unwrap();
    writeln!(h, "distinct branches: {}", flag(rep.distinct_branches)).unwrap();
    writeln!(h, "condition (iii) gcd: {}", flag(rep.gcd_ok)).unwrap();
    if let Some(irr) = rep.lambdas_irrational {
        writeln!(h, "indices irrational: {}", if irr { "yes" } else { "no" }).unwrap();
    }
    for f in &rep.failures {
        writeln!(h, "  {f}").unwrap();
    }
    let js = json!({
        "type": TypeJson::from_type(&ty),
        "form": FormJson::from_form(&jet.form),
        "inClass": rep.in_class(),
        "orderOk": rep.order_ok,
        "axisDivisibility": rep.axis_divisibility,
        "factorization": rep.factorization_ok,
        "distinctBranches": rep.distinct_branches,
        "gcd": rep.gcd_ok,
        "lambdasIrrational": rep.lambdas_irrational,
        "failures": rep.failures,
    });
    let code = if rep.in_class() { EXIT_OK } else { EXIT_NOT_IN_CLASS };
    Ok(Report { human: h, json: js, code })
}

pub fn run_selftest(cfg: &RunConfig) -> Result<Report, CliError> {
    let seed = cfg.seed.unwrap_or(0);
    let mut h = String::new();
    let mut rows = Vec::new();
    let mut all = true;
    for (k, l, n) in [(1, 1, 1), (2, 1, 1), (3, 2, 1), (3, 2, 2)] {
        let ty = FoliationType::with_axes(k, l, n).expect("coprime");
        let budget = (k * l * n) as i64 + 3;
        let outcome = (|| -> Result<bool, NormalizerError> {
            let nf = random_normal_form::<RatFunc>(&ty, seed, budget)?;
            let jet = perturb_random(&nf, seed.wrapping_add(1), budget)?;
            let res = normalize(&jet, budget)?;
            Ok(res.certificate_ok && res.normal_form == nf)
        })();
        let pass = matches!(outcome, Ok(true));
        all &= pass;
        let detail = match &outcome {
            Err(e) => format!(" ({e})"),
            _ => String::new(),
        };
        writeln!(h, "{} round trip (k, l, n) = ({k}, {l}, {n}), D = {budget}{detail}", if pass { "PASS" } else { "FAIL" }).unwrap();
        rows.push(json!({"k": k, "l": l, "n": n, "D": budget, "pass": pass}));
    }
    let code = if all { EXIT_OK } else { EXIT_INTERNAL };
    Ok(Report { human: h, json: json!({"seed": seed, "results": rows, "pass": all}), code })
}
