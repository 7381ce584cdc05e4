//! Linear rescaling that moves the first branch to `c = 1`.

use qhnf::normalizer::{random_normal_form, rescale_nonstrict};
use qhnf::spectral::FoliationType;
use qhnf::RatFunc;

fn main() {
    let ty = FoliationType::with_axes(3, 2, 2).unwrap();
    let nf = random_normal_form::<RatFunc>(&ty, 4, 6).unwrap();
    let c: Vec<String> = nf.spec.c.iter().map(ToString::to_string).collect();
    println!("before: c = {c:?}");
    let out = rescale_nonstrict(&nf).unwrap();
    let c: Vec<String> = out.spec.c.iter().map(ToString::to_string).collect();
    println!("after:  c = {c:?}");
}
