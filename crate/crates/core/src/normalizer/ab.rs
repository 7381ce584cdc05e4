use crate::linalg::{determinant, Matrix};
use crate::oneform::OneForm;
use crate::poly::{monomials_of_weight, BivPoly};
use crate::scalar::Field;
use crate::spectral::{e_count, recover_spectral, FoliationType};

/// `A = m a_{d-k} + q_x`, `B = m b_{d-l} + q_y`, and `A/y`, `B/x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ABPair<F: Field> {
    pub m: i64,
    pub a: BivPoly<F>,
    pub b: BivPoly<F>,
    pub a_bar: BivPoly<F>,
    pub b_bar: BivPoly<F>,
}

impl<F: Field> ABPair<F> {
    pub fn is_coprime(&self) -> bool {
        self.a.gcd(&self.b).as_constant().is_some_and(|c| !c.is_zero())
    }
}

pub fn ab_polys<F: Field>(ty: &FoliationType, omega_d: &OneForm<F>, m: i64) -> ABPair<F> {
    let (k, l) = (ty.k(), ty.l());
    let q_d = omega_d.contract_q(k, l);
    let mm = F::from_i64(m);
    let a = omega_d.a.scale(&mm).add(&q_d.diff_x());
    let b = omega_d.b.scale(&mm).add(&q_d.diff_y());
    let a_bar = a.div_monomial(0, 1).expect("y divides A when both axes are present");
    let b_bar = b.div_monomial(1, 0).expect("x divides B when both axes are present");
    ABPair { m, a, b, a_bar, b_bar }
}

/// Monomials of weight `k l n + m` outside the box `i < l n`, `j < k n`.
pub(crate) fn outside_box(ty: &FoliationType, m: i64) -> Vec<(u32, u32)> {
    let (k, l, n) = (ty.k(), ty.l(), ty.n);
    monomials_of_weight(k, l, (k * l * n) as i64 + m)
        .into_iter()
        .filter(|&(i, j)| i >= l * n || j >= k * n)
        .collect()
}

/// Matrix of `(U, V) -> A U + B V` restricted to the rows outside the box;
/// columns are the weight-`m` monomials of `U` then those of `V`.
pub fn hamiltonian_matrix<F: Field>(ty: &FoliationType, pair: &ABPair<F>) -> (Matrix<F>, Vec<(u32, u32)>, Vec<(u32, u32)>) {
    let (k, l) = (ty.k(), ty.l());
    let rows = outside_box(ty, pair.m);
    let cols = monomials_of_weight(k, l, pair.m);
    let mut mat = vec![vec![F::zero(); 2 * cols.len()]; rows.len()];
    for (half, base) in [&pair.a_bar, &pair.b_bar].into_iter().enumerate() {
        for (c, &(ci, cj)) in cols.iter().enumerate() {
            for (r, &(ri, rj)) in rows.iter().enumerate() {
                if ri >= ci && rj >= cj {
                    mat[r][half * cols.len() + c] = base.coeff(ri - ci, rj - cj);
                }
            }
        }
    }
    (mat, rows, cols)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeVerdict {
    pub m: i64,
    pub e_m: i64,
    pub determinant_nonzero: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericityReport<F: Field> {
    pub degrees: Vec<DegreeVerdict>,
    /// `(name, value, irrational)` for `lambda_1..n`, `lambda0`, `lambdaInf`.
    pub lambdas: Vec<(String, F, bool)>,
    pub spectral_ok: bool,
}

impl<F: Field> GenericityReport<F> {
    pub fn first_failure(&self) -> Option<i64> {
        self.degrees.iter().find(|v| !v.determinant_nonzero).map(|v| v.m)
    }

    pub fn lambdas_irrational(&self) -> bool {
        self.spectral_ok && self.lambdas.iter().all(|t| t.2)
    }

    pub fn passes(&self) -> bool {
        self.first_failure().is_none() && self.lambdas_irrational()
    }
}

/// Determinants of the projected maps for `m = 1 .. k l n - 1` and the
/// rationality flags of the indices.
pub fn genericity_report<F: Field>(ty: &FoliationType, omega_d: &OneForm<F>) -> GenericityReport<F> {
    let (k, l, n) = (ty.k(), ty.l(), ty.n);
    let top = (k * l * n) as i64;
    let degrees = (1..top)
        .map(|m| {
            let e_m = e_count(k, l, m);
            let determinant_nonzero = e_m == 0 || {
                let (mat, _, _) = hamiltonian_matrix(ty, &ab_polys(ty, omega_d, m));
                !determinant(&mat).is_zero()
            };
            DegreeVerdict { m, e_m, determinant_nonzero }
        })
        .collect();
    let (lambdas, spectral_ok) = match recover_spectral(ty, omega_d) {
        Ok(spec) => {
            let mut out: Vec<(String, F, bool)> = spec
                .lambda
                .iter()
                .enumerate()
                .map(|(i, v)| (format!("lambda{}", i + 1), v.clone(), !v.is_rational_constant()))
                .collect();
            out.push(("lambda0".into(), spec.lambda0.clone(), !spec.lambda0.is_rational_constant()));
            out.push(("lambdaInf".into(), spec.lambda_inf.clone(), !spec.lambda_inf.is_rational_constant()));
            (out, true)
        }
        Err(_) => (Vec::new(), false),
    };
    GenericityReport { degrees, lambdas, spectral_ok }
}
