//! The genericity report on a random spec and on one with rational indices.

use qhnf::normalizer::{genericity_report, random_spec};
use qhnf::spectral::{build_omega_d, FoliationType, SpectralData};
use qhnf::{RatFunc, Rational};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let ty = FoliationType::with_axes(3, 2, 1).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let spec: SpectralData<RatFunc> = random_spec(&ty, &mut rng);
    let rep = genericity_report(&ty, &build_omega_d(&ty, &spec).unwrap());
    for v in &rep.degrees {
        println!("m = {}: e_m = {}, invertible = {}", v.m, v.e_m, v.determinant_nonzero);
    }
    for (name, value, irrational) in &rep.lambdas {
        println!("{name} = {value} (irrational: {irrational})");
    }
    println!("passes: {}", rep.passes());

    let flat: SpectralData<Rational> = random_spec(&ty, &mut rng);
    let rep = genericity_report(&ty, &build_omega_d(&ty, &flat).unwrap());
    println!("rational indices pass: {}", rep.passes());
}
