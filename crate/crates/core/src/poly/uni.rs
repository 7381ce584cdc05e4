use crate::scalar::Field;

/// Dense univariate polynomial, ascending coefficients, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct UniPoly<F: Field> {
    c: Vec<F>,
}

impl<F: Field> UniPoly<F> {
    pub fn new(mut c: Vec<F>) -> Self {
        while c.last().is_some_and(Field::is_zero) {
            c.pop();
        }
        UniPoly { c }
    }

    pub fn zero() -> Self {
        UniPoly { c: Vec::new() }
    }

    pub fn constant(v: F) -> Self {
        Self::new(vec![v])
    }

    pub fn coeffs(&self) -> &[F] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> F {
        self.c.get(i).cloned().unwrap_or_else(F::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn leading(&self) -> Option<&F> {
        self.c.last()
    }

    pub fn eval(&self, x: &F) -> F {
        self.c.iter().rev().fold(F::zero(), |acc, v| acc.mul(x).add(v))
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.c.len().max(rhs.c.len());
        Self::new((0..n).map(|i| self.coeff(i).add(&rhs.coeff(i))).collect())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.c.len().max(rhs.c.len());
        Self::new((0..n).map(|i| self.coeff(i).sub(&rhs.coeff(i))).collect())
    }

    pub fn scale(&self, v: &F) -> Self {
        Self::new(self.c.iter().map(|c| c.mul(v)).collect())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![F::zero(); self.c.len() + rhs.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.c.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Self::new(out)
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.c.iter().enumerate().skip(1).map(|(i, v)| v.mul(&F::from_i64(i as i64))).collect())
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, rhs: &Self) -> (Self, Self) {
        let d = rhs.degree().expect("division by the zero polynomial");
        let inv = rhs.c[d].inv().expect("nonzero leading coefficient");
        let mut rem = self.c.clone();
        if rem.len() <= d {
            return (Self::zero(), self.clone());
        }
        let mut quo = vec![F::zero(); rem.len() - d];
        for s in (0..quo.len()).rev() {
            let f = rem[s + d].mul(&inv);
            if f.is_zero() {
                continue;
            }
            for (i, b) in rhs.c.iter().enumerate() {
                rem[s + i] = rem[s + i].sub(&f.mul(b));
            }
            quo[s] = f;
        }
        rem.truncate(d);
        (Self::new(quo), Self::new(rem))
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => self.scale(&l.inv().expect("nonzero leading coefficient")),
            None => Self::zero(),
        }
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, rhs: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), rhs.clone());
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Product of the distinct irreducible factors (characteristic zero).
    pub fn squarefree_part(&self) -> Self {
        if self.degree().is_none_or(|d| d == 0) {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        self.divrem(&g).0
    }

    /// Multiplicity of `0` as a root.
    pub fn valuation(&self) -> usize {
        self.c.iter().take_while(|v| v.is_zero()).count()
    }
}
