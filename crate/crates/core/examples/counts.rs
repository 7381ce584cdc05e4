//! Monomial counts, the normal-form support, and the two dimensions.

use qhnf::spectral::{dims, e_count, h_box, s_valuations, FoliationType};

fn main() {
    let (k, l, n) = (3, 2, 2);
    let e: Vec<i64> = (0..=12).map(|m| e_count(k, l, m)).collect();
    println!("e_m for m = 0..12: {e:?}");
    println!("h slots: {:?}", h_box(k, l, n));
    println!("s valuations: {:?}", s_valuations(k, l, n));
    let (dp, d) = dims(&FoliationType::with_axes(k, l, n).unwrap()).unwrap();
    println!("delta' = {dp}, delta = {d}");
}
