//! Round trip: a random normal form, a random strict gauge, and back.

use qhnf::normalizer::{normalize, perturb_random, random_normal_form};
use qhnf::spectral::FoliationType;
use qhnf::RatFunc;

fn main() {
    let ty = FoliationType::with_axes(3, 2, 1).unwrap();
    let budget = 12;
    let nf = random_normal_form::<RatFunc>(&ty, 1, budget).unwrap();
    let jet = perturb_random(&nf, 2, budget).unwrap();
    println!("perturbed jet: {} + {} terms", jet.form.a.len(), jet.form.b.len());
    let res = normalize(&jet, budget).unwrap();
    println!("h = {}", res.normal_form.h);
    for row in &res.normal_form.s {
        println!("s_{} from x^{}: {} coefficients", row.j, row.valuation, row.coefficients.len());
    }
    println!("gauge: {} + {} terms in phi, {} in the unit", res.gauge.phi_x.len(), res.gauge.phi_y.len(), res.gauge.unit.len());
    println!("certificate: {}, recovered seed: {}", res.certificate_ok, res.normal_form == nf);
}
