//! Splitting a 1-form into an exact part and a multiple of the radial form.

use qhnf::oneform::{decompose_hs, reconstruct, Jet, OneForm};
use qhnf::{parse_poly, BivPoly, Rational};

fn main() {
    let a: BivPoly<Rational> = parse_poly("y^2").unwrap();
    let jet = Jet::new(OneForm::new(a, BivPoly::zero()), 1, 1, 6);
    let hs = decompose_hs(&jet).unwrap();
    println!("y^2 dx = dh + s (y dx - x dy) with h = {}, s = {}", hs.h, hs.s);
    let back = reconstruct(&hs.h, &hs.s, 1, 1, jet.dmax);
    println!("reconstructs: {}", back == jet);
}
