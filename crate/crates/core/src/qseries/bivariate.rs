//! Bivariate series `sum_n (Laurent polynomial in w) q^n`, `n >= 0`.

use super::QSeries;
use crate::error::{Error, Result};
use crate::rings::{ensure_same, Ring};

/// A Laurent polynomial in `w`: `sum coeffs[i] w^(start+i)`, trimmed at both ends.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentRow<E> {
    pub start: i64,
    pub coeffs: Vec<E>,
}

impl<E: Clone> LaurentRow<E> {
    pub fn zero() -> Self {
        LaurentRow {
            start: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest and highest exponent present.
    pub fn support(&self) -> Option<(i64, i64)> {
        (!self.coeffs.is_empty()).then(|| (self.start, self.start + self.coeffs.len() as i64 - 1))
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &E)> {
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(i, c)| (self.start + i as i64, c))
    }
}

fn trimmed<R: Ring>(ring: &R, mut start: i64, mut v: Vec<R::Elem>) -> LaurentRow<R::Elem> {
    while v.last().is_some_and(|c| ring.is_zero(c)) {
        v.pop();
    }
    let lead = v.iter().position(|c| !ring.is_zero(c)).unwrap_or(v.len());
    v.drain(..lead);
    start += lead as i64;
    if v.is_empty() {
        start = 0;
    }
    LaurentRow { start, coeffs: v }
}

/// `a + s * b` for `s = +1` or `-1`.
fn row_axpy<R: Ring>(
    ring: &R,
    a: &LaurentRow<R::Elem>,
    b: &LaurentRow<R::Elem>,
    negate: bool,
) -> LaurentRow<R::Elem> {
    let Some((bl, bh)) = b.support() else {
        return a.clone();
    };
    let (lo, hi) = match a.support() {
        Some((al, ah)) => (al.min(bl), ah.max(bh)),
        None => (bl, bh),
    };
    let mut v = vec![ring.zero(); (hi - lo + 1) as usize];
    for (m, c) in a.iter() {
        v[(m - lo) as usize] = c.clone();
    }
    for (m, c) in b.iter() {
        let slot = &mut v[(m - lo) as usize];
        *slot = if negate {
            ring.sub(slot, c)
        } else {
            ring.add(slot, c)
        };
    }
    trimmed(ring, lo, v)
}

fn row_mul<R: Ring>(
    ring: &R,
    a: &LaurentRow<R::Elem>,
    b: &LaurentRow<R::Elem>,
) -> LaurentRow<R::Elem> {
    if a.is_zero() || b.is_zero() {
        return LaurentRow::zero();
    }
    let mut v = vec![ring.zero(); a.coeffs.len() + b.coeffs.len() - 1];
    for (i, x) in a.coeffs.iter().enumerate() {
        if ring.is_zero(x) {
            continue;
        }
        for (j, y) in b.coeffs.iter().enumerate() {
            ring.mul_add_assign(&mut v[i + j], x, y);
        }
    }
    trimmed(ring, a.start + b.start, v)
}

fn row_scale<R: Ring>(
    ring: &R,
    a: &LaurentRow<R::Elem>,
    c: &R::Elem,
    shift: i64,
) -> LaurentRow<R::Elem> {
    let v = a.coeffs.iter().map(|x| ring.mul(x, c)).collect();
    trimmed(ring, a.start + shift, v)
}

/// `sum_{n=0}^{trunc} row_n(w) q^n`, exact through `q^trunc`.
#[derive(Clone, Debug, PartialEq)]
pub struct WQSeries<R: Ring> {
    ring: R,
    rows: Vec<LaurentRow<R::Elem>>,
}

impl<R: Ring> WQSeries<R> {
    pub fn zero(ring: R, trunc: i64) -> Self {
        WQSeries {
            ring,
            rows: vec![LaurentRow::zero(); (trunc + 1).max(0) as usize],
        }
    }

    pub fn one(ring: R, trunc: i64) -> Self {
        let one = ring.one();
        WQSeries::monomial(ring, one, 0, 0, trunc)
    }

    /// `c w^m q^n`.
    pub fn monomial(ring: R, c: R::Elem, m: i64, n: i64, trunc: i64) -> Self {
        let mut s = WQSeries::zero(ring, trunc);
        if n >= 0 && n <= trunc {
            s.rows[n as usize] = trimmed(&s.ring, m, vec![c]);
        }
        s
    }

    /// Builds from a dense `(n, m) -> coefficient` table; `rows[n]` starts at `w^starts[n]`.
    pub fn from_rows(ring: R, rows: Vec<(i64, Vec<R::Elem>)>) -> Self {
        let rows = rows
            .into_iter()
            .map(|(s, v)| trimmed(&ring, s, v))
            .collect();
        WQSeries { ring, rows }
    }

    /// Lifts a q-series with nonnegative valuation (constant in `w`).
    pub fn from_qseries(x: &QSeries<R>) -> Result<Self> {
        if x.order() < 0 {
            return Err(Error::invalid(
                "bivariate series need nonnegative q-valuation",
            ));
        }
        let mut s = WQSeries::zero(x.ring().clone(), x.trunc());
        for (n, c) in x.terms() {
            s.rows[n as usize] = trimmed(&s.ring, 0, vec![c.clone()]);
        }
        Ok(s)
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn trunc(&self) -> i64 {
        self.rows.len() as i64 - 1
    }

    pub fn row(&self, n: usize) -> &LaurentRow<R::Elem> {
        &self.rows[n]
    }

    pub fn rows(&self) -> &[LaurentRow<R::Elem>] {
        &self.rows
    }

    pub fn coeff(&self, m: i64, n: i64) -> R::Elem {
        let row = &self.rows[n as usize];
        match row.support() {
            Some((lo, hi)) if (lo..=hi).contains(&m) => row.coeffs[(m - lo) as usize].clone(),
            _ => self.ring.zero(),
        }
    }

    pub fn truncate(&self, trunc: i64) -> Self {
        let mut s = self.clone();
        s.rows.truncate((trunc + 1).max(0) as usize);
        s
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(LaurentRow::is_zero)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_rows(other, false)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_rows(other, true)
    }

    fn zip_rows(&self, other: &Self, negate: bool) -> Result<Self> {
        ensure_same(&self.ring, &other.ring)?;
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| row_axpy(&self.ring, a, b, negate))
            .collect();
        Ok(WQSeries {
            ring: self.ring.clone(),
            rows,
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        ensure_same(&self.ring, &other.ring)?;
        let t = self.rows.len().min(other.rows.len());
        let rows = (0..t)
            .map(|n| {
                (0..=n).fold(LaurentRow::zero(), |acc, i| {
                    let p = row_mul(&self.ring, &self.rows[i], &other.rows[n - i]);
                    row_axpy(&self.ring, &acc, &p, false)
                })
            })
            .collect();
        Ok(WQSeries {
            ring: self.ring.clone(),
            rows,
        })
    }

    /// Multiplies every row by the Laurent polynomial `sum c_i w^(start+i)`.
    pub fn mul_w_poly(&self, start: i64, coeffs: &[R::Elem]) -> Self {
        let p = trimmed(&self.ring, start, coeffs.to_vec());
        let rows = self
            .rows
            .iter()
            .map(|r| row_mul(&self.ring, r, &p))
            .collect();
        WQSeries {
            ring: self.ring.clone(),
            rows,
        }
    }

    /// Multiplies by a q-series with nonnegative valuation (constant in `w`).
    pub fn mul_qseries(&self, x: &QSeries<R>) -> Result<Self> {
        self.mul(&WQSeries::from_qseries(x)?)
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        let rows = self
            .rows
            .iter()
            .map(|r| row_scale(&self.ring, r, c, 0))
            .collect();
        WQSeries {
            ring: self.ring.clone(),
            rows,
        }
    }

    /// In place `self *= (1 - c w^a q^b)`, `b >= 1`.
    pub fn mul_binomial(&mut self, c: &R::Elem, a: i64, b: usize) {
        assert!(b >= 1, "binomial needs a positive q-exponent");
        for n in (b..self.rows.len()).rev() {
            if self.rows[n - b].is_zero() {
                continue;
            }
            let t = row_scale(&self.ring, &self.rows[n - b], c, a);
            self.rows[n] = row_axpy(&self.ring, &self.rows[n], &t, true);
        }
    }

    /// In place `self /= (1 - c w^a q^b)`, `b >= 1`.
    pub fn div_binomial(&mut self, c: &R::Elem, a: i64, b: usize) {
        assert!(b >= 1, "binomial needs a positive q-exponent");
        for n in b..self.rows.len() {
            if self.rows[n - b].is_zero() {
                continue;
            }
            let t = row_scale(&self.ring, &self.rows[n - b], c, a);
            self.rows[n] = row_axpy(&self.ring, &self.rows[n], &t, false);
        }
    }

    /// `q d/dq`.
    pub fn delta_q(&self) -> Self {
        let rows = self
            .rows
            .iter()
            .enumerate()
            .map(|(n, r)| row_scale(&self.ring, r, &self.ring.from_i64(n as i64), 0))
            .collect();
        WQSeries {
            ring: self.ring.clone(),
            rows,
        }
    }

    /// `w d/dw`.
    pub fn delta_w(&self) -> Self {
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let v = r
                    .iter()
                    .map(|(m, c)| self.ring.mul(&self.ring.from_i64(m), c))
                    .collect();
                trimmed(&self.ring, r.start, v)
            })
            .collect();
        WQSeries {
            ring: self.ring.clone(),
            rows,
        }
    }

    /// `sum_n (sum_m weight(m) lift(coeff(m, n))) q^n` as a series over `target`.
    pub fn weighted_sum<S: Ring>(
        &self,
        target: S,
        lift: impl Fn(&R::Elem) -> S::Elem,
        weight: impl Fn(i64) -> S::Elem,
    ) -> QSeries<S> {
        let coeffs = self
            .rows
            .iter()
            .map(|r| {
                let mut acc = target.zero();
                for (m, c) in r.iter() {
                    if self.ring.is_zero(c) {
                        continue;
                    }
                    target.mul_add_assign(&mut acc, &weight(m), &lift(c));
                }
                acc
            })
            .collect();
        QSeries::new(target, 0, coeffs, self.trunc())
    }

    /// Specialization `w = 1`.
    pub fn at_one(&self) -> QSeries<R> {
        let one = self.ring.one();
        self.weighted_sum(self.ring.clone(), |c| c.clone(), |_| one.clone())
    }

    /// First `n` whose row has a term `w^m` with `|m| > bound(n)`.
    pub fn support_violation(&self, bound: impl Fn(i64) -> i64) -> Option<i64> {
        self.rows.iter().enumerate().find_map(|(n, r)| {
            let (lo, hi) = r.support()?;
            let b = bound(n as i64);
            (lo < -b || hi > b).then_some(n as i64)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::Integers;
    use num_bigint::BigInt;

    fn int(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn binomial_division_is_inverse() {
        let mut s = WQSeries::one(Integers, 10);
        s.div_binomial(&int(1), 1, 2);
        assert_eq!(s.coeff(3, 6), int(1));
        assert_eq!(s.coeff(2, 6), int(0));
        s.mul_binomial(&int(1), 1, 2);
        assert_eq!(s, WQSeries::one(Integers, 10));
    }

    #[test]
    fn product_and_derivations() {
        let a = WQSeries::monomial(Integers, int(2), -1, 1, 6);
        let b = WQSeries::monomial(Integers, int(3), 2, 2, 6);
        let p = a.mul(&b).unwrap();
        assert_eq!(p.coeff(1, 3), int(6));
        assert_eq!(p.delta_w().coeff(1, 3), int(6));
        assert_eq!(p.delta_q().coeff(1, 3), int(18));
        let at1 = p.at_one();
        assert_eq!(at1.coeff(3), int(6));
        assert_eq!(p.support_violation(|n| n), None);
        let far = WQSeries::monomial(Integers, int(1), 4, 2, 6);
        assert_eq!(far.support_violation(|n| n), Some(2));
    }

    #[test]
    fn w_polynomial_multiplication() {
        let s = WQSeries::one(Integers, 3);
        // (1 - w)^2
        let t = s.mul_w_poly(0, &[int(1), int(-2), int(1)]);
        assert_eq!(t.coeff(1, 0), int(-2));
        assert_eq!(t.row(0).support(), Some((0, 2)));
    }
}
