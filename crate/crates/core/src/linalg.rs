//! Dense Gaussian elimination over an exact field.

use crate::scalar::Field;

pub type Matrix<F> = Vec<Vec<F>>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("matrix is singular")]
    Singular,
    #[error("linear system is inconsistent")]
    Inconsistent,
    #[error("dimension mismatch")]
    Shape,
}

/// Row echelon form of `[A | b]` with the first-pivot rule. Returns the
/// reduced augmented rows and the pivot column of each pivot row.
fn echelon<F: Field>(a: &Matrix<F>, b: &[F]) -> (Matrix<F>, Vec<usize>) {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut m: Matrix<F> = a
        .iter()
        .zip(b)
        .map(|(r, v)| {
            let mut r = r.clone();
            r.push(v.clone());
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..cols {
        if top == rows {
            break;
        }
        let Some(p) = (top..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(top, p);
        let inv = m[top][col].inv().expect("pivot is nonzero");
        for v in m[top].iter_mut().skip(col) {
            *v = v.mul(&inv);
        }
        let pivot_row = m[top].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == top || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (c, v) in row.iter_mut().enumerate().skip(col) {
                *v = v.sub(&f.mul(&pivot_row[c]));
            }
        }
        pivots.push(col);
        top += 1;
    }
    (m, pivots)
}

/// Determinant of a square matrix.
pub fn determinant<F: Field>(a: &Matrix<F>) -> F {
    let n = a.len();
    let mut m = a.clone();
    let mut det = F::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return F::zero();
        };
        if p != col {
            m.swap(p, col);
            det = det.neg();
        }
        let piv = m[col][col].clone();
        det = det.mul(&piv);
        let inv = piv.inv().expect("pivot is nonzero");
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].mul(&inv);
            for c in col..n {
                let delta = f.mul(&m[col][c]);
                m[r][c] = m[r][c].sub(&delta);
            }
        }
    }
    det
}

/// Unique solution of a square system.
pub fn solve_unique<F: Field>(a: &Matrix<F>, b: &[F]) -> Result<Vec<F>, LinalgError> {
    let n = a.len();
    if b.len() != n || a.iter().any(|r| r.len() != n) {
        return Err(LinalgError::Shape);
    }
    let (m, pivots) = echelon(a, b);
    if pivots.len() < n {
        return Err(LinalgError::Singular);
    }
    Ok(m.into_iter().map(|mut r| r.pop().expect("augmented column")).collect())
}

/// A particular solution: first-pivot elimination, free variables zero.
pub fn particular_solution<F: Field>(a: &Matrix<F>, b: &[F], cols: usize) -> Result<Vec<F>, LinalgError> {
    if b.len() != a.len() || a.iter().any(|r| r.len() != cols) {
        return Err(LinalgError::Shape);
    }
    let (m, pivots) = echelon(a, b);
    if m.iter().skip(pivots.len()).any(|r| !r[cols].is_zero()) {
        return Err(LinalgError::Inconsistent);
    }
    let mut x = vec![F::zero(); cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = m[r][cols].clone();
    }
    Ok(x)
}
