//! JSON shapes for forms, spectral data, normal forms, gauges and pullbacks.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::blowup::FactoredPullback;
use crate::normalizer::{Gauge, NormalForm, SSeries};
use crate::oneform::{Jet, OneForm};
use crate::parse::{parse_poly, parse_scalar, ParseError};
use crate::poly::BivPoly;
use crate::scalar::Field;
use crate::spectral::{FoliationType, SpectralData, SpectralError, Weights};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IoError {
    #[error("{0}")]
    Read(String),
    #[error("schema: field \"{path}\": {msg}")]
    Schema { path: String, msg: String },
    #[error("field \"{field}\": {err}")]
    Parse { field: String, err: ParseError },
    #[error("invalid: {0}")]
    Invalid(String),
    #[error("type: {0}")]
    Type(String),
}

fn schema(path: &str, msg: &str) -> IoError {
    IoError::Schema { path: path.into(), msg: msg.into() }
}

fn poly_field<F: Field>(field: &str, text: &str) -> Result<BivPoly<F>, IoError> {
    parse_poly(text).map_err(|err| IoError::Parse { field: field.into(), err })
}

fn scalar_field<F: Field>(field: &str, text: &str) -> Result<F, IoError> {
    parse_scalar(text).map_err(|err| IoError::Parse { field: field.into(), err })
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct FormJson {
    pub a: String,
    pub b: String,
}

impl FormJson {
    pub fn from_form<F: Field>(f: &OneForm<F>) -> Self {
        FormJson { a: f.a.to_string(), b: f.b.to_string() }
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct JetJson {
    pub a: String,
    pub b: String,
    pub k: u32,
    pub l: u32,
    #[serde(rename = "Dmax")]
    pub dmax: i64,
}

impl JetJson {
    pub fn from_jet<F: Field>(j: &Jet<F>) -> Self {
        JetJson {
            a: j.form.a.display_weighted(j.k, j.l),
            b: j.form.b.display_weighted(j.k, j.l),
            k: j.k,
            l: j.l,
            dmax: j.dmax,
        }
    }

    pub fn to_jet<F: Field>(&self) -> Result<Jet<F>, IoError> {
        Weights::new(self.k, self.l).map_err(|e| IoError::Invalid(e.to_string()))?;
        let a = poly_field("a", &self.a)?;
        let b = poly_field("b", &self.b)?;
        Ok(Jet::new(OneForm::new(a, b), self.k, self.l, self.dmax))
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(rename_all = "camelCase")]
pub struct SpectralJson {
    pub c0: String,
    pub c: Vec<String>,
    pub lambda: Vec<String>,
    pub lambda0: String,
    pub lambda_inf: String,
}

impl SpectralJson {
    pub fn from_spec<F: Field>(s: &SpectralData<F>) -> Self {
        let txt = |v: &[F]| v.iter().map(ToString::to_string).collect();
        SpectralJson {
            c0: s.c0.to_string(),
            c: txt(&s.c),
            lambda: txt(&s.lambda),
            lambda0: s.lambda0.to_string(),
            lambda_inf: s.lambda_inf.to_string(),
        }
    }

    pub fn to_spec<F: Field>(&self) -> Result<SpectralData<F>, IoError> {
        let list = |name: &str, v: &[String]| -> Result<Vec<F>, IoError> {
            v.iter().enumerate().map(|(i, t)| scalar_field(&format!("{name}[{i}]"), t)).collect()
        };
        Ok(SpectralData {
            c0: scalar_field("c0", &self.c0)?,
            c: list("c", &self.c)?,
            lambda: list("lambda", &self.lambda)?,
            lambda0: scalar_field("lambda0", &self.lambda0)?,
            lambda_inf: scalar_field("lambdaInf", &self.lambda_inf)?,
        })
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "camelCase")]
pub struct TypeJson {
    pub k: u32,
    pub l: u32,
    pub n: u32,
    pub epsilon0: u8,
    pub epsilon_inf: u8,
    pub d: i64,
}

impl TypeJson {
    pub fn from_type(t: &FoliationType) -> Self {
        TypeJson { k: t.k(), l: t.l(), n: t.n, epsilon0: t.eps0 as u8, epsilon_inf: t.eps_inf as u8, d: t.d }
    }

    pub fn to_type(self) -> Result<FoliationType, IoError> {
        let w = Weights::new(self.k, self.l).map_err(|e| IoError::Invalid(e.to_string()))?;
        let t = FoliationType::new(w, self.n, self.epsilon0 == 1, self.epsilon_inf == 1)
            .map_err(|e| IoError::Invalid(e.to_string()))?;
        if t.d != self.d {
            return Err(IoError::Invalid(format!("d = {} does not match the type (expected {})", self.d, t.d)));
        }
        Ok(t)
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct SSeriesJson {
    pub j: u32,
    pub valuation: i64,
    pub coefficients: Vec<String>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct NormalFormJson {
    #[serde(rename = "type")]
    pub ty: TypeJson,
    pub spec: SpectralJson,
    pub h: String,
    pub s: Vec<SSeriesJson>,
    #[serde(rename = "Dmax")]
    pub dmax: i64,
}

impl NormalFormJson {
    pub fn from_nf<F: Field>(nf: &NormalForm<F>) -> Self {
        NormalFormJson {
            ty: TypeJson::from_type(&nf.ty),
            spec: SpectralJson::from_spec(&nf.spec),
            h: nf.h.display_weighted(nf.ty.k(), nf.ty.l()),
            s: nf
                .s
                .iter()
                .map(|r| SSeriesJson {
                    j: r.j,
                    valuation: r.valuation,
                    coefficients: r.coefficients.iter().map(ToString::to_string).collect(),
                })
                .collect(),
            dmax: nf.dmax,
        }
    }

    pub fn to_nf<F: Field>(&self) -> Result<NormalForm<F>, IoError> {
        let s = self
            .s
            .iter()
            .enumerate()
            .map(|(r, row)| {
                let coefficients = row
                    .coefficients
                    .iter()
                    .enumerate()
                    .map(|(i, t)| scalar_field(&format!("s[{r}].coefficients[{i}]"), t))
                    .collect::<Result<Vec<F>, _>>()?;
                Ok(SSeries { j: row.j, valuation: row.valuation, coefficients })
            })
            .collect::<Result<Vec<_>, IoError>>()?;
        let nf = NormalForm {
            ty: self.ty.to_type()?,
            spec: self.spec.to_spec()?,
            h: poly_field("h", &self.h)?,
            s,
            dmax: self.dmax,
        };
        if !nf.check_support() {
            return Err(IoError::Invalid("h or s lies outside the normal-form support".into()));
        }
        Ok(nf)
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(rename_all = "camelCase")]
pub struct GaugeJson {
    pub phi_x: String,
    pub phi_y: String,
    pub unit: String,
}

impl GaugeJson {
    pub fn from_gauge<F: Field>(g: &Gauge<F>) -> Self {
        GaugeJson {
            phi_x: g.phi_x.display_weighted(g.k, g.l),
            phi_y: g.phi_y.display_weighted(g.k, g.l),
            unit: g.unit.display_weighted(g.k, g.l),
        }
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(rename_all = "camelCase")]
pub struct PullbackJson {
    pub divisor_exp_x: u32,
    pub divisor_exp_y: u32,
    pub strict_a: String,
    pub strict_b: String,
}

impl PullbackJson {
    pub fn from_pullback<F: Field>(p: &FactoredPullback<F>) -> Self {
        PullbackJson {
            divisor_exp_x: p.exp_x,
            divisor_exp_y: p.exp_y,
            strict_a: p.strict.a.to_string(),
            strict_b: p.strict.b.to_string(),
        }
    }
}

/// A form file: `{"k", "l", "epsilon0", "epsilonInf", "a", "b"}` plus an
/// optional `"Dmax"`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormFile {
    pub k: u32,
    pub l: u32,
    pub epsilon0: bool,
    pub epsilon_inf: bool,
    pub a: String,
    pub b: String,
    pub dmax: Option<i64>,
}

fn get_uint(obj: &serde_json::Map<String, Value>, key: &str, positive: bool) -> Result<u64, IoError> {
    let v = obj.get(key).ok_or_else(|| schema(key, "missing"))?;
    let n = v.as_u64().ok_or_else(|| schema(key, "expected a non-negative integer"))?;
    if positive && n == 0 {
        return Err(schema(key, "expected a positive integer"));
    }
    Ok(n)
}

fn get_flag(obj: &serde_json::Map<String, Value>, key: &str) -> Result<bool, IoError> {
    match obj.get(key) {
        None => Err(schema(key, "missing")),
        Some(v) => match v.as_u64() {
            Some(0) => Ok(false),
            Some(1) => Ok(true),
            _ => Err(schema(key, "expected 0 or 1")),
        },
    }
}

fn get_text(obj: &serde_json::Map<String, Value>, key: &str) -> Result<String, IoError> {
    let v = obj.get(key).ok_or_else(|| schema(key, "missing"))?;
    v.as_str().map(str::to_owned).ok_or_else(|| schema(key, "expected a polynomial string"))
}

impl FormFile {
    pub fn from_json(text: &str) -> Result<Self, IoError> {
        let root: Value = serde_json::from_str(text).map_err(|e| schema("$", &e.to_string()))?;
        let obj = root.as_object().ok_or_else(|| schema("$", "expected an object"))?;
        let narrow = |key: &str, n: u64| u32::try_from(n).map_err(|_| schema(key, "out of range"));
        let k = narrow("k", get_uint(obj, "k", true)?)?;
        let l = narrow("l", get_uint(obj, "l", true)?)?;
        let epsilon0 = get_flag(obj, "epsilon0")?;
        let epsilon_inf = get_flag(obj, "epsilonInf")?;
        let a = get_text(obj, "a")?;
        let b = get_text(obj, "b")?;
        let dmax = match obj.get("Dmax") {
            None => None,
            Some(v) => Some(v.as_i64().ok_or_else(|| schema("Dmax", "expected an integer"))?),
        };
        if let Some(extra) = obj.keys().find(|key| !["k", "l", "epsilon0", "epsilonInf", "a", "b", "Dmax"].contains(&key.as_str())) {
            return Err(schema(extra, "unknown field"));
        }
        Weights::new(k, l).map_err(|e| IoError::Invalid(e.to_string()))?;
        Ok(FormFile { k, l, epsilon0, epsilon_inf, a, b, dmax })
    }

    pub fn to_json(&self) -> String {
        let mut m = serde_json::Map::new();
        m.insert("k".into(), self.k.into());
        m.insert("l".into(), self.l.into());
        m.insert("epsilon0".into(), (self.epsilon0 as u8).into());
        m.insert("epsilonInf".into(), (self.epsilon_inf as u8).into());
        m.insert("a".into(), self.a.clone().into());
        m.insert("b".into(), self.b.clone().into());
        if let Some(d) = self.dmax {
            m.insert("Dmax".into(), d.into());
        }
        serde_json::to_string_pretty(&Value::Object(m)).expect("plain JSON")
    }

    /// Jet and type; the truncation defaults to the highest stored degree.
    pub fn to_jet<F: Field>(&self) -> Result<(Jet<F>, FoliationType), IoError> {
        let (k, l) = (self.k, self.l);
        let form = OneForm::new(poly_field::<F>("a", &self.a)?, poly_field::<F>("b", &self.b)?);
        let d = form.order(k, l).ok_or_else(|| IoError::Type("the form is zero".into()))?;
        let ty = type_of_degree(k, l, d, self.epsilon0, self.epsilon_inf)?;
        let top = [(&form.a, k), (&form.b, l)]
            .iter()
            .filter_map(|(p, s)| p.max_weight(k, l).map(|w| w + *s as i64))
            .max()
            .unwrap_or(d);
        let dmax = self.dmax.unwrap_or(top);
        if dmax < d {
            return Err(IoError::Invalid(format!("Dmax = {dmax} is below the initial degree {d}")));
        }
        Ok((Jet::new(form, k, l, dmax), ty))
    }
}

/// The type whose degree `n k l + k eps0 + l epsInf` equals `d`.
pub fn type_of_degree(k: u32, l: u32, d: i64, eps0: bool, eps_inf: bool) -> Result<FoliationType, IoError> {
    let w = Weights::new(k, l).map_err(|e| IoError::Invalid(e.to_string()))?;
    let kl = k as i64 * l as i64;
    let rest = d - if eps0 { k as i64 } else { 0 } - if eps_inf { l as i64 } else { 0 };
    if rest <= 0 || rest % kl != 0 {
        return Err(IoError::Type(format!(
            "initial degree {d} is not n*{kl} + {}*epsilon0 + {}*epsilonInf for any n >= 1 with the given flags",
            k, l
        )));
    }
    FoliationType::new(w, (rest / kl) as u32, eps0, eps_inf).map_err(|e: SpectralError| IoError::Invalid(e.to_string()))
}

pub fn read_form_file<F: Field>(path: &std::path::Path) -> Result<(Jet<F>, FoliationType), IoError> {
    let text = std::fs::read_to_string(path).map_err(|e| IoError::Read(format!("{}: {e}", path.display())))?;
    FormFile::from_json(&text)?.to_jet()
}
