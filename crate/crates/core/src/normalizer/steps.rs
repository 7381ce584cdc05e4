use super::ab::{ab_polys, hamiltonian_matrix};
use super::NormalizerError;
use crate::linalg::{particular_solution, solve_unique, LinalgError, Matrix};
use crate::oneform::{Jet, OneForm};
use crate::poly::{monomials_of_weight, BivPoly};
use crate::scalar::Field;
use crate::spectral::{e_count, FoliationType};

/// One gauge step `(x + alpha, y + beta)`, unit `1 + delta`, acting at degree `d + m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaugeStep<F: Field> {
    pub m: i64,
    pub alpha: BivPoly<F>,
    pub beta: BivPoly<F>,
    pub delta: BivPoly<F>,
}

impl<F: Field> GaugeStep<F> {
    pub fn is_zero(&self) -> bool {
        self.alpha.is_zero() && self.beta.is_zero() && self.delta.is_zero()
    }

    /// `U = alpha + k x delta / (d + m)`.
    pub fn u_poly(&self, ty: &FoliationType) -> BivPoly<F> {
        let f = F::from_ratio(ty.k() as i64, ty.d + self.m);
        self.alpha.add(&self.delta.mul_monomial(1, 0).scale(&f))
    }

    /// `V = beta + l y delta / (d + m)`.
    pub fn v_poly(&self, ty: &FoliationType) -> BivPoly<F> {
        let f = F::from_ratio(ty.l() as i64, ty.d + self.m);
        self.beta.add(&self.delta.mul_monomial(0, 1).scale(&f))
    }
}

pub(crate) struct Context<'a, F: Field> {
    ty: &'a FoliationType,
    omega_d: OneForm<F>,
    b_over_x: BivPoly<F>,
    q_over_x: BivPoly<F>,
}

impl<'a, F: Field> Context<'a, F> {
    pub(crate) fn new(ty: &'a FoliationType, omega_d: &OneForm<F>) -> Self {
        let q_d = omega_d.contract_q(ty.k(), ty.l());
        let b_over_x = omega_d.b.div_monomial(1, 0).expect("x divides b_d");
        let q_over_x = q_d.div_monomial(1, 0).expect("x divides q_d");
        Context { ty, omega_d: omega_d.clone(), b_over_x, q_over_x }
    }

    /// `q_{d+m} / (x y)`.
    fn q_bar(&self, jet: &Jet<F>, m: i64) -> Result<BivPoly<F>, NormalizerError> {
        let q = jet.slice(self.ty.d + m).contract_q(self.ty.k(), self.ty.l());
        q.div_monomial(1, 1).ok_or_else(|| NormalizerError::NotInClass("the axes are not invariant".into()))
    }

    /// `b_{d+m-l} / x`.
    fn b_bar(&self, jet: &Jet<F>, m: i64) -> Result<BivPoly<F>, NormalizerError> {
        let b = jet.slice(self.ty.d + m).b;
        b.div_monomial(1, 0).ok_or_else(|| NormalizerError::NotInClass("the axes are not invariant".into()))
    }

    fn q_clean(&self, jet: &Jet<F>, m: i64) -> Result<bool, NormalizerError> {
        let boxed = (self.ty.l() * self.ty.n, self.ty.k() * self.ty.n);
        Ok(self.q_bar(jet, m)?.terms().all(|(&(i, j), _)| i < boxed.0 && j < boxed.1))
    }

    fn b_clean(&self, jet: &Jet<F>, m: i64) -> Result<bool, NormalizerError> {
        let top = self.ty.k() * self.ty.n;
        Ok(self.b_bar(jet, m)?.terms().all(|(&(_, j), _)| j < top))
    }

    /// Kills the part of `q_{d+m}/(xy)` outside the box.
    pub(crate) fn hamiltonian(&self, jet: &Jet<F>, m: i64) -> Result<Option<GaugeStep<F>>, NormalizerError> {
        let ty = self.ty;
        let top = (ty.k() * ty.l() * ty.n) as i64;
        let pair = ab_polys(ty, &self.omega_d, m);
        let (mat, rows, cols) = hamiltonian_matrix(ty, &pair);
        let q_bar = self.q_bar(jet, m)?;
        let rhs: Vec<F> = rows.iter().map(|&(i, j)| q_bar.coeff(i, j).neg()).collect();
        assert!(m >= top || rows.len() == 2 * cols.len(), "square below k l n");
        if cols.is_empty() {
            assert!(rows.is_empty(), "e_m = 0 leaves nothing outside the box");
            return Ok(None);
        }
        if rhs.iter().all(|c| c.is_zero()) {
            return Ok(None);
        }
        let sol = if m < top {
            solve_unique(&mat, &rhs)
        } else {
            particular_solution(&mat, &rhs, mat.first().map_or(0, |r| r.len()))
        }
        .map_err(|_| NormalizerError::NonGeneric { m })?;
        let nc = cols.len();
        let mut alpha = BivPoly::zero();
        let mut beta = BivPoly::zero();
        for (c, &(i, j)) in cols.iter().enumerate() {
            alpha.add_term((i + 1, j), &sol[c]);
            beta.add_term((i, j + 1), &sol[nc + c]);
        }
        Ok(Some(GaugeStep { m, alpha, beta, delta: BivPoly::zero() }))
    }

    /// Lowers the `y`-degree of `b_{d+m-l}` below `k n` by a unit-radial step.
    pub(crate) fn radial(&self, jet: &Jet<F>, m: i64) -> Result<Option<GaugeStep<F>>, NormalizerError> {
        let ty = self.ty;
        let (k, l, n) = (ty.k(), ty.l(), ty.n);
        let e_m = e_count(k, l, m);
        let cols = monomials_of_weight(k, l, m);
        let rows: Vec<(u32, u32)> = monomials_of_weight(k, l, (k * l * n) as i64 + m)
            .into_iter()
            .filter(|&(_, j)| j >= k * n)
            .collect();
        assert_eq!(cols.len() as i64, e_m);
        assert_eq!(rows.len() as i64, e_m);
        if cols.is_empty() {
            return Ok(None);
        }
        let b_bar = self.b_bar(jet, m)?;
        let rhs: Vec<F> = rows.iter().map(|&(i, j)| b_bar.coeff(i, j).neg()).collect();
        if rhs.iter().all(|c| c.is_zero()) {
            return Ok(None);
        }
        let mm = F::from_i64(m);
        let mut mat: Matrix<F> = vec![vec![F::zero(); cols.len()]; rows.len()];
        for (c, &(i, j)) in cols.iter().enumerate() {
            let mu = BivPoly::monomial(i, j, F::one());
            let img = self.b_over_x.mul(&mu).scale(&mm).sub(&self.q_over_x.mul(&mu.diff_y()));
            for (r, &(ri, rj)) in rows.iter().enumerate() {
                mat[r][c] = img.coeff(ri, rj);
            }
        }
        let sol = solve_unique(&mat, &rhs).map_err(|e| match e {
            LinalgError::Singular | LinalgError::Inconsistent => NormalizerError::NonGenericRadial { m },
            LinalgError::Shape => unreachable!("square by construction"),
        })?;
        let mut t = BivPoly::zero();
        for (c, &e) in cols.iter().enumerate() {
            t.add_term(e, &sol[c]);
        }
        let delta = t.scale(&F::from_i64(ty.d + m));
        let alpha = t.mul_monomial(1, 0).scale(&F::from_i64(-(k as i64)));
        let beta = t.mul_monomial(0, 1).scale(&F::from_i64(-(l as i64)));
        Ok(Some(GaugeStep { m, alpha, beta, delta }))
    }

    fn check_below(&self, jet: &Jet<F>, m: i64) -> Result<(), NormalizerError> {
        for mp in 1..m {
            if !self.q_clean(jet, mp)? || !self.b_clean(jet, mp)? {
                return Err(NormalizerError::PrerequisiteDegreesDirty { m: mp });
            }
        }
        Ok(())
    }
}

fn context<'a, F: Field>(jet: &Jet<F>, ty: &'a FoliationType, m: i64) -> Result<Context<'a, F>, NormalizerError> {
    if !(ty.eps0 && ty.eps_inf) {
        return Err(NormalizerError::AxisRequired);
    }
    if ty.d + m > jet.dmax {
        return Err(NormalizerError::JetTooShort { have: jet.dmax, need: ty.d + m });
    }
    Ok(Context::new(ty, &jet.slice(ty.d)))
}

/// The Hamiltonian sub-step at degree `d + m`; zero when nothing is to be removed.
pub fn hamiltonian_step<F: Field>(jet: &Jet<F>, ty: &FoliationType, m: i64) -> Result<GaugeStep<F>, NormalizerError> {
    let ctx = context(jet, ty, m)?;
    ctx.check_below(jet, m)?;
    let zero = GaugeStep { m, alpha: BivPoly::zero(), beta: BivPoly::zero(), delta: BivPoly::zero() };
    Ok(ctx.hamiltonian(jet, m)?.unwrap_or(zero))
}

/// The unit-radial sub-step at degree `d + m`; requires `q_{d+m}` already reduced.
pub fn radial_step<F: Field>(jet: &Jet<F>, ty: &FoliationType, m: i64) -> Result<GaugeStep<F>, NormalizerError> {
    let ctx = context(jet, ty, m)?;
    ctx.check_below(jet, m)?;
    if !ctx.q_clean(jet, m)? {
        return Err(NormalizerError::PrerequisiteDegreesDirty { m });
    }
    let zero = GaugeStep { m, alpha: BivPoly::zero(), beta: BivPoly::zero(), delta: BivPoly::zero() };
    Ok(ctx.radial(jet, m)?.unwrap_or(zero))
}
