//! Generating functions of marked Durfee symbols as combinations of rank functions.

use super::lambert::{weighted_series, LambertKind};
use crate::error::{Error, Result};
use crate::qseries::QSeries;
use crate::rings::Ring;

fn powers<R: Ring>(ring: &R, x: &R::Elem, trunc: i64) -> Result<(Vec<R::Elem>, i64)> {
    let span = trunc + 2;
    let inv = ring.inv(x)?;
    let mut v = vec![ring.zero(); (2 * span + 1) as usize];
    v[span as usize] = ring.one();
    for i in 1..=span as usize {
        v[span as usize + i] = ring.mul(&v[span as usize + i - 1], x);
        v[span as usize - i] = ring.mul(&v[span as usize - i + 1], &inv);
    }
    Ok((v, span))
}

/// `R(x; q) = sum N(m, n) x^m q^n` for a unit `x`.
fn rank_at<R: Ring>(ring: &R, x: &R::Elem, trunc: i64) -> Result<QSeries<R>> {
    let (pw, span) = powers(ring, x, trunc)?;
    weighted_series(ring, LambertKind::Rank, trunc, |m| {
        pw[(m + span) as usize].clone()
    })
}

/// `R_k(x_1, ..., x_k; q) = sum_i R(x_i; q) / prod_{j != i} (x_i - x_j)(1 - 1/(x_i x_j))`.
///
/// The points must be pairwise distinct units with `x_i x_j != 1` for all `i, j`. The
/// constant term is whatever the combination gives at `q^0`; the symbol count starts at `n = 1`.
pub fn durfee_gf_eval<R: Ring>(ring: &R, points: &[R::Elem], trunc: i64) -> Result<QSeries<R>> {
    if points.is_empty() {
        return Err(Error::invalid("need at least one point"));
    }
    let one = ring.one();
    for (i, xi) in points.iter().enumerate() {
        for (j, xj) in points.iter().enumerate() {
            if i != j && xi == xj {
                return Err(Error::DegeneratePoints(format!(
                    "points {i} and {j} coincide; use durfee_gf_deriv for repeated arguments"
                )));
            }
            if ring.mul(xi, xj) == one {
                return Err(Error::DegeneratePoints(format!(
                    "points {i} and {j} multiply to 1; the rank combination has a pole there"
                )));
            }
        }
    }
    let mut acc = QSeries::zero(ring.clone(), trunc);
    for (i, xi) in points.iter().enumerate() {
        let mut denom = ring.one();
        for (j, xj) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            let inv_prod = ring.inv(&ring.mul(xi, xj))?;
            let factor = ring.mul(&ring.sub(xi, xj), &ring.sub(&one, &inv_prod));
            denom = ring.mul(&denom, &factor);
        }
        let coeff = ring.inv(&denom)?;
        acc = acc.add(&rank_at(ring, xi, trunc)?.scale(&coeff))?;
    }
    Ok(acc)
}

/// `R_2(x, x; q) = [d/dy R(y; q)]_{y=x} / (1 - x^-2)`, the limit of the two-point
/// combination when the points merge.
pub fn durfee_gf_deriv<R: Ring>(ring: &R, x: &R::Elem, trunc: i64) -> Result<QSeries<R>> {
    let one = ring.one();
    let sq = ring.mul(x, x);
    if sq == one {
        return Err(Error::DegeneratePoints(
            "x^2 = 1 is a pole of the derivative form".into(),
        ));
    }
    let (pw, span) = powers(ring, x, trunc + 1)?;
    let d = weighted_series(ring, LambertKind::Rank, trunc, |m| {
        ring.mul(&ring.from_i64(m), &pw[(m - 1 + span) as usize])
    })?;
    let denom = ring.sub(&one, &ring.inv(&sq)?);
    Ok(d.scale(&ring.inv(&denom)?))
}

/// `R_k(w; q) = sum NF_k(m, n) w^m q^n` through the points `(w, w^2, ..., w^k)`.
pub fn full_rank_gf_at<R: Ring>(ring: &R, w: &R::Elem, k: u32, trunc: i64) -> Result<QSeries<R>> {
    let mut pts = Vec::with_capacity(k as usize);
    let mut p = w.clone();
    for _ in 0..k {
        pts.push(p.clone());
        p = ring.mul(&p, w);
    }
    durfee_gf_eval(ring, &pts, trunc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::{full_rank_distribution, marked_durfee_gf_oracle};
    use crate::rings::{Cyclotomic, Rationals};
    use num_bigint::BigInt;
    use num_rational::BigRational;

    #[test]
    fn two_points_at_fifth_roots() {
        let ring = Cyclotomic::new(5, Rationals).unwrap();
        let pts = vec![ring.root_power(1), ring.root_power(2)];
        let gf = durfee_gf_eval(&ring, &pts, 10).unwrap();
        let oracle = marked_durfee_gf_oracle(&ring, &pts, 10).unwrap();
        for n in 1..=10 {
            assert_eq!(gf.coeff(n), oracle.coeff(n), "n={n}");
        }
    }

    #[test]
    fn rational_points() {
        let ring = Rationals;
        let r = |a: i64, b: i64| BigRational::new(BigInt::from(a), BigInt::from(b));
        let pts = vec![r(2, 1), r(-3, 1), r(1, 5)];
        let gf = durfee_gf_eval(&ring, &pts, 8).unwrap();
        let oracle = marked_durfee_gf_oracle(&ring, &pts, 8).unwrap();
        for n in 1..=8 {
            assert_eq!(gf.coeff(n), oracle.coeff(n), "n={n}");
        }
    }

    #[test]
    fn full_rank_at_seventh_root() {
        let ring = Cyclotomic::new(7, Rationals).unwrap();
        let w = ring.root_power(1);
        let gf = full_rank_gf_at(&ring, &w, 2, 10).unwrap();
        for n in 1..=10u32 {
            let mut expected = ring.zero();
            for (m, c) in full_rank_distribution(2, n).unwrap() {
                expected = ring.add(&expected, &ring.mul(&ring.from_i64(c), &ring.root_power(m)));
            }
            assert_eq!(gf.coeff(n as i64), expected, "n={n}");
        }
    }

    #[test]
    fn merged_points() {
        for c in [5u64, 3] {
            let ring = Cyclotomic::new(c, Rationals).unwrap();
            let x = ring.root_power(1);
            let gf = durfee_gf_deriv(&ring, &x, 10).unwrap();
            let oracle = marked_durfee_gf_oracle(&ring, &[x.clone(), x.clone()], 10).unwrap();
            assert!(ring.is_zero(&gf.coeff(1)));
            for n in 1..=10 {
                assert_eq!(gf.coeff(n), oracle.coeff(n), "c={c} n={n}");
            }
        }
    }

    #[test]
    fn degenerate_points_rejected() {
        let ring = Cyclotomic::new(3, Rationals).unwrap();
        let pts = vec![ring.root_power(1), ring.root_power(2)];
        assert!(matches!(
            durfee_gf_eval(&ring, &pts, 4),
            Err(Error::DegeneratePoints(_))
        ));
        let minus_one = ring.from_i64(-1);
        assert!(durfee_gf_deriv(&ring, &minus_one, 4).is_err());
    }
}
