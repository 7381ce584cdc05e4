//! Pullback of the cusp to the principal component and its indices.

use qhnf::blowup::{branch_chart, camacho_sad, principal_chart, pullback_monomial, DivisorPoint};
use qhnf::oneform::OneForm;
use qhnf::spectral::Weights;
use qhnf::{parse_poly, Field, Rational};

fn main() {
    for (k, l) in [(3, 2), (5, 3)] {
        let w = Weights::new(k, l).unwrap();
        let cusp = OneForm::<Rational>::exact(&parse_poly(&format!("y^{k} - x^{l}")).unwrap());
        let fp = pullback_monomial(&cusp, &principal_chart(&w));
        println!("({k},{l}) principal: X^{} Y^{} [{}]", fp.exp_x, fp.exp_y, fp.strict.display_weighted(1, 1));
        let nb = pullback_monomial(&cusp, &branch_chart(&w));
        println!("({k},{l}) neighbouring: X^{} Y^{} [{}]", nb.exp_x, nb.exp_y, nb.strict.display_weighted(1, 1));
        let pts = [DivisorPoint::Finite(Rational::zero()), DivisorPoint::Finite(Rational::one()), DivisorPoint::Infinity];
        for p in &pts {
            println!("  index at {p}: {}", camacho_sad(&fp.strict, p).unwrap());
        }
    }
}
