//! Truncated Laurent series in `q` over an exact ring.
//!
//! A [`QSeries`] stores every coefficient from its valuation up to its
//! truncation order `trunc`; exponents above `trunc` are unknown. Each
//! operation works out the order through which its result is still exact.

mod bivariate;
mod builders;
mod fit;
mod operators;
mod text;

use std::ops::{Add, Mul, Neg, Sub};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::rings::{ensure_same, Ring};

pub use bivariate::{LaurentRow, WQSeries};
pub use builders::{
    delta, eisenstein_e, eisenstein_e_in, eisenstein_phi, eta_power, euler_product,
    partition_series, pochhammer, sigma,
};
pub use fit::{
    fit_combination, modular_fit, quasimodular_fit, quasimodular_fit_with, Monomial,
    QuasimodularFit,
};
pub use text::parse_series;

/// Below this many output coefficients the convolution stays sequential.
const PAR_THRESHOLD: usize = 384;

#[derive(Clone, Debug, PartialEq)]
pub struct QSeries<R: Ring> {
    ring: R,
    /// Exponent of `coeffs[0]`; equal to the valuation unless the series is zero.
    start: i64,
    /// Dense coefficients for exponents `start..=trunc`.
    coeffs: Vec<R::Elem>,
    trunc: i64,
}

impl<R: Ring> QSeries<R> {
    /// Builds `sum coeffs[i] q^(start+i) + O(q^(trunc+1))`; coefficients past `trunc` are dropped.
    pub fn new(ring: R, start: i64, mut coeffs: Vec<R::Elem>, trunc: i64) -> Self {
        let len = (trunc - start + 1).max(0) as usize;
        coeffs.truncate(len);
        coeffs.resize(len, ring.zero());
        let mut s = QSeries {
            ring,
            start: start.min(trunc + 1),
            coeffs,
            trunc,
        };
        s.normalize();
        s
    }

    pub fn from_fn(ring: R, start: i64, trunc: i64, f: impl Fn(i64) -> R::Elem) -> Self {
        let coeffs = (start..=trunc).map(f).collect();
        QSeries::new(ring, start, coeffs, trunc)
    }

    pub fn from_i64s(ring: R, start: i64, v: &[i64], trunc: i64) -> Self {
        let coeffs = v.iter().map(|&c| ring.from_i64(c)).collect();
        QSeries::new(ring, start, coeffs, trunc)
    }

    /// `O(q^(trunc+1))`.
    pub fn zero(ring: R, trunc: i64) -> Self {
        QSeries {
            ring,
            start: trunc + 1,
            coeffs: Vec::new(),
            trunc,
        }
    }

    pub fn one(ring: R, trunc: i64) -> Self {
        let one = ring.one();
        QSeries::monomial(ring, one, 0, trunc)
    }

    /// `c q^e + O(q^(trunc+1))`.
    pub fn monomial(ring: R, c: R::Elem, e: i64, trunc: i64) -> Self {
        QSeries::new(ring, e, vec![c], trunc)
    }

    fn normalize(&mut self) {
        let lead = self
            .coeffs
            .iter()
            .position(|c| !self.ring.is_zero(c))
            .unwrap_or(self.coeffs.len());
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.start += lead as i64;
        }
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn trunc(&self) -> i64 {
        self.trunc
    }

    /// Lowest exponent with a nonzero coefficient, `None` if all known coefficients vanish.
    pub fn valuation(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then_some(self.start)
    }

    /// Valuation, or `trunc + 1` for a series with no known nonzero coefficient.
    pub fn order(&self) -> i64 {
        self.start
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `q^n`. Panics if `n > trunc`.
    pub fn coeff(&self, n: i64) -> R::Elem {
        self.try_coeff(n).expect("coefficient beyond truncation")
    }

    pub fn try_coeff(&self, n: i64) -> Result<R::Elem> {
        if n > self.trunc {
            return Err(Error::InsufficientTruncation {
                needed: n,
                available: self.trunc,
            });
        }
        if n < self.start {
            return Ok(self.ring.zero());
        }
        Ok(self.coeffs[(n - self.start) as usize].clone())
    }

    /// Coefficients of `q^from..=q^to`.
    pub fn coeff_range(&self, from: i64, to: i64) -> Result<Vec<R::Elem>> {
        (from..=to).map(|n| self.try_coeff(n)).collect()
    }

    /// `(exponent, coefficient)` pairs for nonzero terms.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &R::Elem)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !self.ring.is_zero(c))
            .map(move |(i, c)| (self.start + i as i64, c))
    }

    pub fn truncate(&self, trunc: i64) -> Self {
        let t = trunc.min(self.trunc);
        let len = (t - self.start + 1).max(0) as usize;
        QSeries::new(
            self.ring.clone(),
            self.start.min(t + 1),
            self.coeffs[..len.min(self.coeffs.len())].to_vec(),
            t,
        )
    }

    /// Multiplies by `q^s`.
    pub fn shift(&self, s: i64) -> Self {
        QSeries {
            ring: self.ring.clone(),
            start: self.start + s,
            coeffs: self.coeffs.clone(),
            trunc: self.trunc + s,
        }
    }

    pub fn neg(&self) -> Self {
        self.map(|c| self.ring.neg(c))
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        self.map(|x| self.ring.mul(x, c))
    }

    fn map(&self, f: impl Fn(&R::Elem) -> R::Elem) -> Self {
        QSeries::new(
            self.ring.clone(),
            self.start,
            self.coeffs.iter().map(f).collect(),
            self.trunc,
        )
    }

    /// Coefficient-wise image in another ring.
    pub fn map_ring<S: Ring>(
        &self,
        target: S,
        f: impl Fn(&R::Elem) -> Result<S::Elem>,
    ) -> Result<QSeries<S>> {
        let coeffs = self.coeffs.iter().map(f).collect::<Result<Vec<_>>>()?;
        Ok(QSeries::new(target, self.start, coeffs, self.trunc))
    }

    /// Multiplies the coefficient of `q^n` by `f(n)`.
    pub fn map_indexed(&self, f: impl Fn(i64, &R::Elem) -> R::Elem) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| f(self.start + i as i64, c))
            .collect();
        QSeries::new(self.ring.clone(), self.start, coeffs, self.trunc)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.combine(other, |r, a, b| r.add(a, b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, |r, a, b| r.sub(a, b))
    }

    fn combine(
        &self,
        other: &Self,
        op: impl Fn(&R, &R::Elem, &R::Elem) -> R::Elem,
    ) -> Result<Self> {
        ensure_same(&self.ring, &other.ring)?;
        let trunc = self.trunc.min(other.trunc);
        let start = self.start.min(other.start).min(trunc + 1);
        let coeffs = (start..=trunc)
            .map(|n| {
                let a = self.try_coeff(n).expect("within trunc");
                let b = other.try_coeff(n).expect("within trunc");
                op(&self.ring, &a, &b)
            })
            .collect();
        Ok(QSeries::new(self.ring.clone(), start, coeffs, trunc))
    }

    /// Product; exact through `min(trunc_x + val_y, trunc_y + val_x)`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        ensure_same(&self.ring, &other.ring)?;
        let trunc = (self.trunc + other.start).min(other.trunc + self.start);
        let start = self.start + other.start;
        if self.is_zero() || other.is_zero() || trunc < start {
            return Ok(QSeries::zero(self.ring.clone(), trunc));
        }
        let len = (trunc - start + 1) as usize;
        let (a, b) = if self.nonzero_count() <= other.nonzero_count() {
            (self, other)
        } else {
            (other, self)
        };
        let sparse: Vec<(usize, &R::Elem)> = a
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !a.ring.is_zero(c))
            .collect();
        let ring = &self.ring;
        let at = |k: usize| {
            let mut acc = ring.zero();
            for &(i, x) in &sparse {
                if i > k {
                    break;
                }
                if let Some(y) = b.coeffs.get(k - i) {
                    ring.mul_add_assign(&mut acc, x, y);
                }
            }
            acc
        };
        let coeffs: Vec<R::Elem> = if len >= PAR_THRESHOLD && sparse.len() > 8 {
            (0..len).into_par_iter().map(at).collect()
        } else {
            (0..len).map(at).collect()
        };
        Ok(QSeries::new(self.ring.clone(), start, coeffs, trunc))
    }

    fn nonzero_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !self.ring.is_zero(c)).count()
    }

    /// Multiplicative inverse; needs a unit leading coefficient. Exact through `trunc - 2 val`.
    pub fn invert(&self) -> Result<Self> {
        let v = self.valuation().ok_or_else(|| Error::NotInvertible {
            element: "0 (no nonzero known coefficient)".into(),
            ring: self.ring.tag().to_string(),
        })?;
        let u0inv = self.ring.inv(&self.coeffs[0])?;
        let trunc = self.trunc - 2 * v;
        let len = (self.trunc - v + 1) as usize;
        let sparse: Vec<(usize, R::Elem)> = self.coeffs[1..]
            .iter()
            .enumerate()
            .filter(|(_, c)| !self.ring.is_zero(c))
            .map(|(i, c)| (i + 1, self.ring.mul(c, &u0inv)))
            .collect();
        let mut w: Vec<R::Elem> = Vec::with_capacity(len);
        w.push(u0inv.clone());
        for n in 1..len {
            let mut acc = self.ring.zero();
            for (i, c) in &sparse {
                if *i > n {
                    break;
                }
                self.ring.mul_add_assign(&mut acc, c, &w[n - i]);
            }
            w.push(self.ring.neg(&acc));
        }
        Ok(QSeries::new(self.ring.clone(), -v, w, trunc))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.mul(&other.invert()?)
    }

    pub fn pow(&self, e: u64) -> Result<Self> {
        let mut acc = QSeries::one(
            self.ring.clone(),
            self.trunc.max(0) + e as i64 * self.start.abs(),
        );
        let mut base = self.clone();
        let mut e = e;
        let mut first = true;
        while e > 0 {
            if e & 1 == 1 {
                acc = if first { base.clone() } else { acc.mul(&base)? };
                first = false;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// `q d/dq`: multiplies the coefficient of `q^n` by `n`.
    pub fn delta_q(&self) -> Self {
        self.map_indexed(|n, c| self.ring.mul(&self.ring.from_i64(n), c))
    }

    /// Substitutes `q -> q^k`; exact through `k (trunc + 1) - 1`.
    pub fn rescale(&self, k: u64) -> Result<Self> {
        if k == 0 {
            return Err(Error::invalid("rescale factor must be positive"));
        }
        let k = k as i64;
        let trunc = k * (self.trunc + 1) - 1;
        let start = self.start * k;
        let mut coeffs = vec![self.ring.zero(); (trunc - start + 1).max(0) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k as usize] = c.clone();
        }
        Ok(QSeries::new(self.ring.clone(), start, coeffs, trunc))
    }

    /// The series `sum_n a(A n + B) q^n`; exact for `A n + B <= trunc`.
    pub fn extract_progression(&self, a: u64, b: i64) -> Result<Self> {
        if a == 0 {
            return Err(Error::invalid("progression modulus must be positive"));
        }
        let a = a as i64;
        let trunc = (self.trunc - b).div_euclid(a);
        let start = (self.start - b + a - 1).div_euclid(a).min(trunc + 1);
        Ok(QSeries::from_fn(self.ring.clone(), start, trunc, |n| {
            self.try_coeff(a * n + b).expect("in range")
        }))
    }

    /// Iterates over `(exponent, coefficient)` for every known exponent from `from` to `trunc`.
    pub fn dense_from(&self, from: i64) -> impl Iterator<Item = (i64, R::Elem)> + '_ {
        (from..=self.trunc).map(move |n| (n, self.try_coeff(n).expect("within trunc")))
    }
}

macro_rules! forward_op {
    ($tr:ident, $method:ident) => {
        impl<R: Ring> $tr<&QSeries<R>> for &QSeries<R> {
            type Output = QSeries<R>;
            fn $method(self, rhs: &QSeries<R>) -> QSeries<R> {
                QSeries::$method(self, rhs).expect("series ring mismatch")
            }
        }
    };
}

forward_op!(Add, add);
forward_op!(Sub, sub);
forward_op!(Mul, mul);

impl<R: Ring> Neg for &QSeries<R> {
    type Output = QSeries<R>;
    fn neg(self) -> QSeries<R> {
        QSeries::neg(self)
    }
}
