//! Classical series: q-Pochhammer products, eta powers, Eisenstein series.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::QSeries;
use crate::error::{Error, Result};
use crate::rings::{bernoulli, Integers, Rationals, Ring};

/// `(q^a; q)_n`, or `(q^a; q)_inf` when `n` is `None`.
pub fn pochhammer<R: Ring>(ring: R, a: i64, n: Option<u64>, trunc: i64) -> Result<QSeries<R>> {
    match n {
        None => {
            if a < 1 {
                return Err(Error::invalid(format!(
                    "(q^{a};q)_inf does not converge formally"
                )));
            }
            let mut v = vec![ring.zero(); (trunc + 1).max(1) as usize];
            v[0] = ring.one();
            let mut e = a;
            while e <= trunc {
                mul_one_minus_in_place(&ring, &mut v, e as usize);
                e += 1;
            }
            Ok(QSeries::new(ring, 0, v, trunc))
        }
        Some(n) => {
            // finite product: an exact Laurent polynomial
            let low: i64 = (0..n as i64).map(|j| (a + j).min(0)).sum();
            let high: i64 = (0..n as i64).map(|j| (a + j).max(0)).sum();
            let mut v = vec![ring.zero(); (high - low + 1) as usize];
            v[0] = ring.one();
            let mut cur_low = 0i64;
            for j in 0..n as i64 {
                let e = a + j;
                if e == 0 {
                    return Ok(QSeries::zero(ring, trunc));
                }
                if e > 0 {
                    mul_one_minus_in_place(&ring, &mut v, e as usize);
                } else {
                    // 1 - q^e = -q^e (1 - q^-e)
                    mul_one_minus_in_place(&ring, &mut v, (-e) as usize);
                    v.iter_mut().for_each(|c| *c = ring.neg(c));
                    cur_low += e;
                }
            }
            debug_assert_eq!(cur_low, low);
            Ok(QSeries::new(ring, low, v, trunc))
        }
    }
}

/// `v *= (1 - q^e)` on a dense coefficient vector, in place.
fn mul_one_minus_in_place<R: Ring>(ring: &R, v: &mut [R::Elem], e: usize) {
    for i in (e..v.len()).rev() {
        if !ring.is_zero(&v[i - e]) {
            v[i] = ring.sub(&v[i], &v[i - e]);
        }
    }
}

/// `(q;q)_inf` through `q^trunc`, from the pentagonal number theorem.
pub fn euler_product<R: Ring>(ring: R, trunc: i64) -> QSeries<R> {
    let mut v = vec![ring.zero(); (trunc + 1).max(0) as usize];
    let mut k: i64 = 0;
    loop {
        let sign = if k % 2 == 0 {
            ring.one()
        } else {
            ring.from_i64(-1)
        };
        let e1 = k * (3 * k - 1) / 2;
        if e1 > trunc {
            break;
        }
        v[e1 as usize] = sign.clone();
        let e2 = k * (3 * k + 1) / 2;
        if k > 0 && e2 <= trunc {
            v[e2 as usize] = sign;
        }
        k += 1;
    }
    QSeries::new(ring, 0, v, trunc)
}

/// `P(q) = 1 / (q;q)_inf = sum p(n) q^n`.
pub fn partition_series<R: Ring>(ring: R, trunc: i64) -> QSeries<R> {
    euler_product(ring, trunc)
        .invert()
        .expect("unit constant term")
}

/// `eta(scale z)^r` as a series with integer valuation `r scale / 24`.
pub fn eta_power<R: Ring>(ring: R, r: i64, scale: u64, trunc: i64) -> Result<QSeries<R>> {
    if scale == 0 {
        return Err(Error::invalid("eta scale must be positive"));
    }
    let rs = r * scale as i64;
    if rs % 24 != 0 {
        return Err(Error::invalid(format!(
            "eta({scale}z)^{r} has fractional valuation {rs}/24"
        )));
    }
    let v = rs / 24;
    let inner_trunc = (trunc - v).div_euclid(scale as i64);
    let base = euler_product(ring.clone(), inner_trunc.max(0));
    let prod = if r >= 0 {
        power_unit(&base, r as u64)?
    } else {
        power_unit(&base, (-r) as u64)?.invert()?
    };
    let prod = prod.truncate(inner_trunc.max(0)).rescale(scale)?.shift(v);
    Ok(prod.truncate(trunc))
}

/// Power of a series with constant term 1, keeping the truncation of the base.
fn power_unit<R: Ring>(x: &QSeries<R>, e: u64) -> Result<QSeries<R>> {
    let t = x.trunc();
    let mut acc = QSeries::one(x.ring().clone(), t);
    let mut base = x.clone();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(&base)?;
        }
        e >>= 1;
        if e > 0 {
            base = base.mul(&base)?;
        }
    }
    Ok(acc)
}

/// `Delta = eta^24 = q prod (1 - q^n)^24`.
pub fn delta<R: Ring>(ring: R, trunc: i64) -> QSeries<R> {
    eta_power(ring, 24, 1, trunc).expect("integral valuation")
}

/// `sigma_j(n)`, the sum of `d^j` over divisors of `n`.
pub fn sigma(j: u32, n: u64) -> BigInt {
    let mut acc = BigInt::zero();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            acc += BigInt::from(d).pow(j);
            let e = n / d;
            if e != d {
                acc += BigInt::from(e).pow(j);
            }
        }
        d += 1;
    }
    acc
}

/// `Phi_j = sum_{n >= 1} sigma_j(n) q^n` for odd `j >= 1`.
pub fn eisenstein_phi<R: Ring>(ring: R, j: u32, trunc: i64) -> Result<QSeries<R>> {
    if j.is_multiple_of(2) {
        return Err(Error::invalid(format!("Phi_j needs odd j, got {j}")));
    }
    let n_max = trunc.max(0) as usize;
    // divisor sieve
    let mut acc = vec![BigInt::zero(); n_max + 1];
    for d in 1..=n_max {
        let dj = BigInt::from(d).pow(j);
        for m in (d..=n_max).step_by(d) {
            acc[m] += &dj;
        }
    }
    let coeffs = acc.iter().map(|c| ring.from_int(c)).collect();
    Ok(QSeries::new(ring, 0, coeffs, trunc))
}

/// `E_j = 1 - (2j / B_j) Phi_{j-1}` over the rationals, for even `j >= 2`.
pub fn eisenstein_e(j: u32, trunc: i64) -> Result<QSeries<Rationals>> {
    if j < 2 || j % 2 == 1 {
        return Err(Error::invalid(format!("E_j needs even j >= 2, got {j}")));
    }
    let factor = BigRational::from_integer(BigInt::from(2 * j)) / bernoulli(j as usize);
    let phi = eisenstein_phi(Integers, j - 1, trunc)?;
    let coeffs = (0..=trunc)
        .map(|n| {
            let c = BigRational::from_integer(phi.coeff(n));
            if n == 0 {
                BigRational::one()
            } else {
                -&factor * c
            }
        })
        .collect();
    Ok(QSeries::new(Rationals, 0, coeffs, trunc))
}

/// `E_j` reduced into another ring; fails if a denominator is not a unit there.
pub fn eisenstein_e_in<R: Ring>(ring: R, j: u32, trunc: i64) -> Result<QSeries<R>> {
    eisenstein_e(j, trunc)?.map_ring(ring.clone(), |c| ring.from_rational(c))
}
