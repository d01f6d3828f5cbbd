//! Bilateral Lambert-type expansions of the rank and crank generating functions.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::qseries::{euler_product, partition_series, QSeries, WQSeries};
use crate::rings::{Integers, Ring};

/// Which quadratic exponent the bilateral sum carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LambertKind {
    /// `sum (-1)^n q^(n(3n+1)/2) / (1 - w q^n)`
    Rank,
    /// `sum (-1)^n q^(n(n+1)/2) / (1 - w q^n)`
    Crank,
}

impl LambertKind {
    pub fn exponent(self, n: i64) -> i64 {
        match self {
            LambertKind::Rank => n * (3 * n + 1) / 2,
            LambertKind::Crank => n * (n + 1) / 2,
        }
    }
}

/// Visits the expansion of `sum_{n != 0} (-1)^n q^e(n) (1 - w) / (1 - w q^n)` through `q^trunc`
/// as terms `sign * (1 - w) w^j q^e`. The `n = 0` term equals 1 and is not reported.
///
/// For `n = -m < 0`, `1 / (1 - w q^-m) = -sum_{j >= 1} w^-j q^(mj)`.
pub fn for_each_lambert_term(kind: LambertKind, trunc: i64, mut f: impl FnMut(i64, i64, i64)) {
    let mut n = 1i64;
    loop {
        let pos = kind.exponent(n);
        let neg = kind.exponent(-n) + n;
        if pos > trunc && neg > trunc {
            break;
        }
        let sign = if n % 2 == 0 { 1 } else { -1 };
        let mut e = pos;
        let mut j = 0;
        while e <= trunc {
            f(e, j, sign);
            e += n;
            j += 1;
        }
        let mut e = neg;
        let mut j = -1;
        while e <= trunc {
            f(e, j, -sign);
            e += n;
            j -= 1;
        }
        n += 1;
    }
}

/// Applies the linear functional `w^m -> g(m)` to the numerator
/// `(1 - w) sum_n (-1)^n q^e(n) / (1 - w q^n)`; the result times `P(q)` is
/// `sum_n (sum_m g(m) S(m, n)) q^n` for the rank or crank counts `S`.
pub fn weighted_numerator<R: Ring>(
    ring: &R,
    kind: LambertKind,
    trunc: i64,
    g: impl Fn(i64) -> R::Elem,
) -> QSeries<R> {
    let span = trunc + 2;
    let table: Vec<R::Elem> = (-span..=span).map(&g).collect();
    let at = |m: i64| &table[(m + span) as usize];
    let mut coeffs = vec![ring.zero(); (trunc + 1).max(0) as usize];
    if trunc >= 0 {
        coeffs[0] = at(0).clone();
    }
    for_each_lambert_term(kind, trunc, |e, j, sign| {
        let d = ring.sub(at(j), at(j + 1));
        let slot = &mut coeffs[e as usize];
        *slot = if sign > 0 {
            ring.add(slot, &d)
        } else {
            ring.sub(slot, &d)
        };
    });
    QSeries::new(ring.clone(), 0, coeffs, trunc)
}

/// `sum_n (sum_m g(m) S(m, n)) q^n` through `q^trunc`, `S` the rank or crank counts
/// (the `n = 0` coefficient is `g(0)`).
pub fn weighted_series<R: Ring>(
    ring: &R,
    kind: LambertKind,
    trunc: i64,
    g: impl Fn(i64) -> R::Elem,
) -> Result<QSeries<R>> {
    weighted_numerator(ring, kind, trunc, g).mul(&partition_series(ring.clone(), trunc))
}

fn lambert_bivariate(kind: LambertKind, trunc: i64) -> Result<WQSeries<Integers>> {
    if trunc < 0 {
        return Err(Error::invalid("truncation must be nonnegative"));
    }
    let mut rows: Vec<Vec<(i64, i64)>> = vec![Vec::new(); trunc as usize + 1];
    rows[0].push((0, 1));
    for_each_lambert_term(kind, trunc, |e, j, sign| {
        rows[e as usize].push((j, sign));
        rows[e as usize].push((j + 1, -sign));
    });
    let dense = rows
        .into_iter()
        .map(|terms| {
            let lo = terms.iter().map(|t| t.0).min().unwrap_or(0);
            let hi = terms.iter().map(|t| t.0).max().unwrap_or(0);
            let mut v = vec![0i64; (hi - lo + 1) as usize];
            for (m, s) in terms {
                v[(m - lo) as usize] += s;
            }
            (lo, v.into_iter().map(BigInt::from).collect())
        })
        .collect();
    let numerator = WQSeries::from_rows(Integers, dense);
    numerator.mul_qseries(&partition_series(Integers, trunc))
}

/// `R(w; q) = sum N(m, n) w^m q^n` from the bilateral Lambert form.
pub fn rank_gf_lambert(trunc: i64) -> Result<WQSeries<Integers>> {
    lambert_bivariate(LambertKind::Rank, trunc)
}

/// `C(w; q)` from its bilateral Lambert form.
pub fn crank_gf_lambert(trunc: i64) -> Result<WQSeries<Integers>> {
    lambert_bivariate(LambertKind::Crank, trunc)
}

/// `R(w; q) = 1 + sum_{n >= 1} q^(n^2) / ((wq; q)_n (w^-1 q; q)_n)`.
pub fn rank_gf_hyper(trunc: i64) -> Result<WQSeries<Integers>> {
    if trunc < 0 {
        return Err(Error::invalid("truncation must be nonnegative"));
    }
    let one = BigInt::from(1);
    let mut acc = WQSeries::one(Integers, trunc);
    let mut n = 1i64;
    while n * n <= trunc {
        let mut term = WQSeries::monomial(Integers, one.clone(), 0, n * n, trunc);
        for i in 1..=n as usize {
            term.div_binomial(&one, 1, i);
            term.div_binomial(&one, -1, i);
        }
        acc = acc.add(&term)?;
        n += 1;
    }
    Ok(acc)
}

/// `C(w; q) = prod (1 - q^n) / ((1 - w q^n)(1 - w^-1 q^n))`.
pub fn crank_gf(trunc: i64) -> Result<WQSeries<Integers>> {
    if trunc < 0 {
        return Err(Error::invalid("truncation must be nonnegative"));
    }
    let one = BigInt::from(1);
    let mut acc = WQSeries::from_qseries(&euler_product(Integers, trunc))?;
    for i in 1..=trunc as usize {
        acc.div_binomial(&one, 1, i);
        acc.div_binomial(&one, -1, i);
    }
    Ok(acc)
}

/// The crank side `w (q)_inf^2 C(w;q)^3` of the rank-crank PDE.
pub fn pde_crank_side(trunc: i64) -> Result<WQSeries<Integers>> {
    let c = crank_gf(trunc)?;
    let e = euler_product(Integers, trunc);
    let cube = c.mul(&c)?.mul(&c)?;
    let w = BigInt::from(1);
    Ok(cube.mul_qseries(&e.mul(&e)?)?.mul_w_poly(1, &[w]))
}

/// Twice the rank side, `(6(1-w)^2 delta_q + (1-w)^2 delta_w^2 - (w^2-1) delta_w + 2w) R(w;q)`,
/// kept over the integers.
pub fn pde_rank_side_doubled(trunc: i64) -> Result<WQSeries<Integers>> {
    let r = rank_gf_lambert(trunc)?;
    let i = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
    let one_minus_w_sq = i(&[1, -2, 1]);
    let dq = r
        .delta_q()
        .scale(&BigInt::from(6))
        .mul_w_poly(0, &one_minus_w_sq);
    let dw = r.delta_w();
    let dww = dw.delta_w().mul_w_poly(0, &one_minus_w_sq);
    let lin = dw.mul_w_poly(0, &i(&[1, 0, -1]));
    let plain = r.mul_w_poly(1, &i(&[2]));
    dq.add(&dww)?.add(&lin)?.add(&plain)
}

/// `2 w (q)_inf^2 C^3` minus [`pde_rank_side_doubled`]: twice the PDE residual, zero when the PDE holds.
pub fn pde_residual(trunc: i64) -> Result<WQSeries<Integers>> {
    pde_crank_side(trunc)?
        .scale(&BigInt::from(2))
        .sub(&pde_rank_side_doubled(trunc)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::{crank_distribution, rank_distribution};

    fn row_as_map(s: &WQSeries<Integers>, n: usize) -> std::collections::BTreeMap<i64, i64> {
        s.row(n)
            .iter()
            .filter(|(_, c)| c.sign() != num_bigint::Sign::NoSign)
            .map(|(m, c)| (m, i64::try_from(c).unwrap()))
            .collect()
    }

    #[test]
    fn rank_rows_match_enumeration() {
        let r = rank_gf_lambert(20).unwrap();
        assert_eq!(r, rank_gf_hyper(20).unwrap());
        for n in 1..=20 {
            assert_eq!(row_as_map(&r, n), rank_distribution(n as u32), "n={n}");
        }
        let at_one = r.at_one();
        assert_eq!(at_one, partition_series(Integers, 20));
    }

    #[test]
    fn crank_rows_match_enumeration() {
        let c = crank_gf(20).unwrap();
        assert_eq!(c, crank_gf_lambert(20).unwrap());
        for n in 1..=20 {
            assert_eq!(row_as_map(&c, n), crank_distribution(n as u32), "n={n}");
        }
    }

    #[test]
    fn pde_vanishes() {
        assert!(pde_residual(16).unwrap().is_zero());
        let lhs = pde_crank_side(16).unwrap();
        assert_eq!(lhs.support_violation(|n| 3 * n + 1), None);
    }

    #[test]
    fn weighted_path_matches_rows() {
        let r = rank_gf_lambert(25).unwrap();
        let direct = r.weighted_sum(Integers, |c| c.clone(), |m| BigInt::from(m).pow(4));
        let fast =
            weighted_series(&Integers, LambertKind::Rank, 25, |m| BigInt::from(m).pow(4)).unwrap();
        assert_eq!(direct, fast);
        let alt = weighted_series(&Integers, LambertKind::Rank, 10, |m| {
            BigInt::from(if m % 2 == 0 { 1 } else { -1 })
        })
        .unwrap();
        assert_eq!(alt.coeff(4), BigInt::from(-3));
    }
}
