//! Weighted grading of bivariate polynomials and truncated substitution.

use qhnf::poly::monomials_of_weight;
use qhnf::{parse_poly, BivPoly, Rational};

fn main() {
    let (k, l) = (3, 2);
    let p: BivPoly<Rational> = parse_poly("y^3 - x^2 + x*y^2 + 5x^3").unwrap();
    for m in p.qh_components(k, l).degrees() {
        println!("weight {m:>2}: {}", p.homogeneous_part(k, l, m));
    }
    println!("monomials of weight 12: {:?}", monomials_of_weight(k, l, 12));

    // y^2 under (x, y + x^2), cut at weight 3 for (1, 1)
    let y2: BivPoly<Rational> = parse_poly("y^2").unwrap();
    let phi_y = parse_poly("y + x^2").unwrap();
    let out = y2.compose_truncated(&BivPoly::x(), &phi_y, 1, 1, 3).unwrap();
    println!("y^2 o (x, y + x^2) mod weight > 3: {out}");
}
