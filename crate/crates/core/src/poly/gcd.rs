//! Bivariate gcd: primitive remainder sequence in `y` over `F[x]`.

use super::{BivPoly, UniPoly};
use crate::scalar::Field;

/// Coefficients in `F[x]`, indexed by the power of `y`.
type YPoly<F> = Vec<UniPoly<F>>;

fn to_ypoly<F: Field>(p: &BivPoly<F>) -> YPoly<F> {
    let dy = p.deg_y().map_or(0, |d| d as usize + 1);
    (0..dy).map(|j| p.y_coeff(j as u32)).collect()
}

fn from_ypoly<F: Field>(p: &YPoly<F>) -> BivPoly<F> {
    let mut out = BivPoly::zero();
    for (j, c) in p.iter().enumerate() {
        for (i, v) in c.coeffs().iter().enumerate() {
            out.add_term((i as u32, j as u32), v);
        }
    }
    out
}

fn trim<F: Field>(p: &mut YPoly<F>) {
    while p.last().is_some_and(UniPoly::is_zero) {
        p.pop();
    }
}

fn content<F: Field>(p: &YPoly<F>) -> UniPoly<F> {
    p.iter().fold(UniPoly::zero(), |g, c| g.gcd(c))
}

fn primitive<F: Field>(p: &YPoly<F>) -> YPoly<F> {
    let c = content(p);
    if c.is_zero() {
        return p.clone();
    }
    p.iter().map(|v| v.divrem(&c).0).collect()
}

fn prem<F: Field>(a: &YPoly<F>, b: &YPoly<F>) -> YPoly<F> {
    let mut r = a.clone();
    let db = b.len() - 1;
    let lb = b[db].clone();
    while r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for v in r.iter_mut() {
            *v = v.mul(&lb);
        }
        for (i, bv) in b.iter().enumerate() {
            let idx = dr - db + i;
            r[idx] = r[idx].sub(&bv.mul(&lr));
        }
        trim(&mut r);
    }
    r
}

pub(super) fn biv_gcd<F: Field>(p: &BivPoly<F>, q: &BivPoly<F>) -> BivPoly<F> {
    if p.is_zero() {
        return q.normalized();
    }
    if q.is_zero() {
        return p.normalized();
    }
    let (pa, pb) = p.monomial_content();
    let (qa, qb) = q.monomial_content();
    let mono = (pa.min(qa), pb.min(qb));
    let p = p.div_monomial(pa, pb).expect("monomial content");
    let q = q.div_monomial(qa, qb).expect("monomial content");

    let (mut a, mut b) = (to_ypoly(&p), to_ypoly(&q));
    let cont = content(&a).gcd(&content(&b));
    a = primitive(&a);
    b = primitive(&b);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    let core = loop {
        if b.len() <= 1 {
            // b is a nonzero element of F[x] that is primitive, hence a unit
            break vec![UniPoly::constant(F::one())];
        }
        let r = prem(&a, &b);
        if r.is_empty() {
            break b;
        }
        a = b;
        b = primitive(&r);
    };
    let core = from_ypoly(&core);
    let cont = from_ypoly(&vec![cont]);
    core.mul(&cont).mul_monomial(mono.0, mono.1).normalized()
}
