//! Exact scalars: rationals and rational functions in `t`.

use qhnf::{parse_scalar, Field, RatFunc, Rational};

fn main() {
    let a = Rational::from_ratio(1, 2).add(&Rational::from_ratio(1, 3));
    println!("1/2 + 1/3 = {a}");

    let t = RatFunc::parameter().expect("Q(t) has a parameter");
    let num = t.mul(&t).sub(&RatFunc::one());
    let q = num.div(&t.sub(&RatFunc::one())).unwrap();
    println!("(t^2 - 1)/(t - 1) = {q}");

    let r: RatFunc = parse_scalar("(2t+2)/(t+1)").unwrap();
    println!("(2t+2)/(t+1) = {r}, rational constant: {}", r.is_rational_constant());
    println!("t + 1 rational constant: {}", t.add(&RatFunc::one()).is_rational_constant());
    println!("inv(0): {:?}", Rational::zero().inv());
}
