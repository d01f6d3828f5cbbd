//! Coefficient-stream operators: `U(l)`, `T(l)`, `U*_{eps,l}` and polynomial
//! differential operators in `delta_q`.

use num_bigint::BigInt;

use super::QSeries;
use crate::error::{Error, Result};
use crate::rings::poly::Poly;
use crate::rings::{is_prime, legendre, Ring};

impl<R: Ring> QSeries<R> {
    /// `U(l)`: `a(n) -> a(l n)`.
    pub fn u_operator(&self, l: u64) -> Result<Self> {
        self.extract_progression(l, 0)
    }

    /// The Hecke operator `T(l)` on a level-1 form of weight `k`:
    /// `a(n) -> a(l n) + l^(k-1) a(n / l)`.
    pub fn t_operator(&self, l: u64, weight: u32) -> Result<Self> {
        if self.order() < 0 {
            return Err(Error::invalid(
                "T(l) needs a series with nonnegative valuation",
            ));
        }
        if weight == 0 {
            return Err(Error::invalid("T(l) needs positive weight"));
        }
        let u = self.u_operator(l)?;
        let lk = self.ring.from_int(&BigInt::from(l).pow(weight - 1));
        let l = l as i64;
        Ok(u.map_indexed(|n, c| {
            if n % l == 0 {
                let extra = self
                    .try_coeff(n / l)
                    .expect("n / l is below the truncation");
                self.ring.add(c, &self.ring.mul(&lk, &extra))
            } else {
                c.clone()
            }
        }))
    }

    /// `U*_{eps,l}`: keeps `a(n)` exactly when `((1 - 24 n) / l) = eps`.
    pub fn u_star(&self, eps: i8, l: u64) -> Result<Self> {
        if l <= 3 || !is_prime(l) {
            return Err(Error::invalid(format!("U* needs a prime l > 3, got {l}")));
        }
        if !(-1..=1).contains(&eps) {
            return Err(Error::invalid(format!(
                "U* sign must be -1, 0 or 1, got {eps}"
            )));
        }
        Ok(self.map_indexed(|n, c| {
            if legendre(1 - 24 * n, l) == eps {
                c.clone()
            } else {
                self.ring.zero()
            }
        }))
    }

    /// The `sum a(n) q^(24 n - 1)` view of a series indexed by `n`.
    pub fn q24_view(&self) -> Result<Self> {
        Ok(self.rescale(24)?.shift(-1))
    }

    /// `p(delta_q)` applied to the series: the coefficient of `q^n` is scaled by `p(n)`.
    pub fn apply_delta_poly(&self, p: &Poly<R>) -> Self {
        self.map_indexed(|n, c| self.ring.mul(&p.eval(&self.ring.from_i64(n)), c))
    }
}
