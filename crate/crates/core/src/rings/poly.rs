//! Dense univariate polynomials over a [`Ring`].

use std::fmt;

use super::{ensure_same, Ring};
use crate::error::Result;

/// Dense polynomial, lowest degree first, with no trailing zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<R: Ring> {
    ring: R,
    coeffs: Vec<R::Elem>,
}

impl<R: Ring> Poly<R> {
    pub fn new(ring: R, coeffs: Vec<R::Elem>) -> Self {
        let mut p = Poly { ring, coeffs };
        p.normalize();
        p
    }

    pub fn zero(ring: R) -> Self {
        Poly {
            ring,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(ring: R, c: R::Elem) -> Self {
        Poly::new(ring, vec![c])
    }

    pub fn one(ring: R) -> Self {
        let one = ring.one();
        Poly::constant(ring, one)
    }

    /// The monomial `c x^e`.
    pub fn monomial(ring: R, c: R::Elem, e: usize) -> Self {
        let mut v = vec![ring.zero(); e + 1];
        v[e] = c;
        Poly::new(ring, v)
    }

    pub fn from_i64s(ring: R, v: &[i64]) -> Self {
        let coeffs = v.iter().map(|&c| ring.from_i64(c)).collect();
        Poly::new(ring, coeffs)
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| self.ring.is_zero(c)) {
            self.coeffs.pop();
        }
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn coeffs(&self) -> &[R::Elem] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, i: usize) -> R::Elem {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.ring.zero())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        ensure_same(&self.ring, &other.ring)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n)
            .map(|i| self.ring.add(&self.coeff(i), &other.coeff(i)))
            .collect();
        Ok(Poly::new(self.ring.clone(), v))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let v = self.coeffs.iter().map(|c| self.ring.neg(c)).collect();
        Poly::new(self.ring.clone(), v)
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        let v = self.coeffs.iter().map(|x| self.ring.mul(x, c)).collect();
        Poly::new(self.ring.clone(), v)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        ensure_same(&self.ring, &other.ring)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(self.ring.clone()));
        }
        let mut v = vec![self.ring.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                self.ring.mul_add_assign(&mut v[i + j], a, b);
            }
        }
        Ok(Poly::new(self.ring.clone(), v))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Poly::one(self.ring.clone());
        for _ in 0..e {
            acc = acc.mul(self).expect("same ring");
        }
        acc
    }

    /// Horner evaluation at a ring element.
    pub fn eval(&self, x: &R::Elem) -> R::Elem {
        self.coeffs.iter().rev().fold(self.ring.zero(), |acc, c| {
            self.ring.add(&self.ring.mul(&acc, x), c)
        })
    }

    /// `self(inner(x))`.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        ensure_same(&self.ring, &inner.ring)?;
        let mut acc = Poly::zero(self.ring.clone());
        for c in self.coeffs.iter().rev() {
            acc = acc
                .mul(inner)?
                .add(&Poly::constant(self.ring.clone(), c.clone()))?;
        }
        Ok(acc)
    }

    /// Coefficient-wise image in another ring.
    pub fn map_into<S: Ring>(
        &self,
        target: S,
        f: impl Fn(&R::Elem) -> Result<S::Elem>,
    ) -> Result<Poly<S>> {
        let v = self.coeffs.iter().map(f).collect::<Result<Vec<_>>>()?;
        Ok(Poly::new(target, v))
    }
}

impl<R: Ring> fmt::Display for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if self.ring.is_zero(c) {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let c = self.ring.format_elem(c);
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})x")?,
                _ => write!(f, "({c})x^{i}")?,
            }
        }
        Ok(())
    }
}
