//! Initial parts from spectral data and back.

use qhnf::spectral::{build_omega_d, recover_spectral, FoliationType, SpectralData};
use qhnf::{Field, RatFunc};

fn main() {
    let ty = FoliationType::with_axes(3, 2, 2).unwrap();
    let t = RatFunc::parameter().unwrap();
    let mut spec = SpectralData {
        c0: RatFunc::one(),
        c: vec![RatFunc::one(), RatFunc::from_i64(2)],
        lambda: vec![t.clone(), t.neg().add(&RatFunc::from_ratio(1, 5))],
        lambda0: t.mul(&RatFunc::from_i64(2)),
        lambda_inf: RatFunc::zero(),
    };
    spec.lambda_inf = spec.relation_defect(&ty).neg();
    let om = build_omega_d(&ty, &spec).unwrap();
    println!("type ({}, {}, n = {}), d = {}", ty.k(), ty.l(), ty.n, ty.d);
    println!("omega_d = {}", om.display_weighted(3, 2));
    println!("q_d = {}", om.contract_q(3, 2));
    let back = recover_spectral(&ty, &om).unwrap();
    println!("lambdaInf = {}", back.lambda_inf);
    println!("recovered the same data: {}", back == spec.canonicalize());
}
