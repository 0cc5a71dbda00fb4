//! Dense univariate polynomials over a field, used as the coefficient ring
//! `K[v]` when a bivariate polynomial is viewed as a polynomial in `u`.

use crate::scalar::Coeff;

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct UPoly<K> {
    c: Vec<K>,
}

impl<K: Coeff> UPoly<K> {
    pub fn new(mut c: Vec<K>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Self { c }
    }

    pub fn zero() -> Self {
        Self { c: Vec::new() }
    }

    pub fn one() -> Self {
        Self { c: vec![K::one()] }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[K] {
        &self.c
    }

    pub fn lead(&self) -> Option<&K> {
        self.c.last()
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Self::new(
            (0..n)
                .map(|k| self.c.get(k).cloned().unwrap_or_else(K::zero) + o.c.get(k).cloned().unwrap_or_else(K::zero))
                .collect(),
        )
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            c: self.c.iter().map(|x| -x.clone()).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = vec![K::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in o.c.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, k: &K) -> Self {
        Self::new(self.c.iter().map(|x| x.clone() * k.clone()).collect())
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            Some(l) => self.scale(&(K::one() / l.clone())),
            None => Self::zero(),
        }
    }

    /// Euclidean division over the field.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        let ld = d.lead().expect("division by zero polynomial").clone();
        let mut rem = self.c.clone();
        let dd = d.degree();
        if self.is_zero() || self.degree() < dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![K::zero(); self.degree() - dd + 1];
        for k in (dd..rem.len()).rev() {
            let coef = rem[k].clone() / ld.clone();
            if coef.is_zero() {
                continue;
            }
            for (j, dj) in d.c.iter().enumerate() {
                rem[k - dd + j] = rem[k - dd + j].clone() - coef.clone() * dj.clone();
            }
            q[k - dd] = coef;
        }
        (Self::new(q), Self::new(rem))
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn div_exact(&self, d: &Self) -> Self {
        let (q, r) = self.divrem(d);
        debug_assert!(r.is_zero(), "inexact univariate division");
        q
    }
}
