//! Reading a form file and writing a normal form as JSON.

use qhnf::io::{FormFile, NormalFormJson};
use qhnf::normalizer::{normalize, perturb_random, random_normal_form};
use qhnf::spectral::FoliationType;
use qhnf::{RatFunc, Rational};

fn main() {
    let file = FormFile::from_json(r#"{"k": 3, "l": 2, "epsilon0": 0, "epsilonInf": 0, "a": "-2x", "b": "3y^2"}"#).unwrap();
    let (jet, ty) = file.to_jet::<Rational>().unwrap();
    println!("read d(y^3 - x^2): d = {}, Dmax = {}", ty.d, jet.dmax);
    println!("missing field: {}", FormFile::from_json(r#"{"k": 3}"#).unwrap_err());

    let ty = FoliationType::with_axes(2, 1, 1).unwrap();
    let nf = random_normal_form::<RatFunc>(&ty, 3, 4).unwrap();
    let res = normalize(&perturb_random(&nf, 4, 4).unwrap(), 4).unwrap();
    println!("{}", serde_json::to_string_pretty(&NormalFormJson::from_nf(&res.normal_form)).unwrap());
}
