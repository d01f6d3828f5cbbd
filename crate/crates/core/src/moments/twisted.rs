//! Moments twisted by roots of unity, and the second-moment series built from them.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

use super::lambert::{weighted_series, LambertKind};
use super::{MomentSeries, StatisticId};
use crate::error::{Error, Result};
use crate::qseries::{partition_series, QSeries};
use crate::rings::{CycElement, Cyclotomic, Integers, Rationals, Ring};

/// A series in `Q = q^(1/scale)`: the coefficient at index `N` belongs to `q^(N/scale)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ScaledSeries<R: Ring> {
    pub scale: u64,
    pub series: QSeries<R>,
}

/// Rank or crank twisted moment.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TwistedKind {
    Rank,
    Crank,
}

fn check_fraction(a: u64, c: u64) -> Result<()> {
    if a == 0 || a >= c {
        return Err(Error::invalid(format!("need 0 < a < c, got a={a}, c={c}")));
    }
    Ok(())
}

/// `sum_n (sum_{d | n} d^j (zeta_c^(ad) - (-1)^j zeta_c^(-ad))) q^n`, `n >= 1`.
pub fn twisted_eisenstein(
    j: u32,
    a: i64,
    c: u64,
    trunc: i64,
) -> Result<QSeries<Cyclotomic<Integers>>> {
    if j == 0 {
        return Err(Error::invalid("twisted Eisenstein series need j >= 1"));
    }
    let ring = Cyclotomic::new(c, Integers)?;
    let mut coeffs = vec![ring.zero(); (trunc + 1).max(0) as usize];
    for d in 1..=trunc.max(0) {
        let dj = ring.from_int(&BigInt::from(d).pow(j));
        let plus = ring.root_power(a * d);
        let minus = ring.root_power(-a * d);
        let diff = if j.is_multiple_of(2) {
            ring.sub(&plus, &minus)
        } else {
            ring.add(&plus, &minus)
        };
        let v = ring.mul(&dj, &diff);
        let mut n = d;
        while n <= trunc {
            coeffs[n as usize] = ring.add(&coeffs[n as usize], &v);
            n += d;
        }
    }
    Ok(QSeries::new(ring, 0, coeffs, trunc))
}

/// `sum_n (sum_k k^j zeta_c^(ak) S(k, n)) q^n` for the rank or crank counts `S`.
pub fn twisted_moment_series(
    kind: TwistedKind,
    j: u32,
    a: u64,
    c: u64,
    trunc: i64,
) -> Result<MomentSeries<Cyclotomic<Integers>>> {
    check_fraction(a, c)?;
    let ring = Cyclotomic::new(c, Integers)?;
    let a_ = a as i64;
    let g = |m: i64| {
        ring.mul(
            &ring.from_int(&BigInt::from(m).pow(j)),
            &ring.root_power(a_ * m),
        )
    };
    let (lk, id) = match kind {
        TwistedKind::Rank => (
            LambertKind::Rank,
            StatisticId::TwistedRank { order: j, a, c },
        ),
        TwistedKind::Crank => (
            LambertKind::Crank,
            StatisticId::TwistedCrank { order: j, a, c },
        ),
    };
    Ok(MomentSeries::new(id, weighted_series(&ring, lk, trunc, g)?))
}

/// The ring together with the pair `(A, B)` of [`twisted_r2_parts`].
pub type TwistedParts = (
    Cyclotomic<Rationals>,
    QSeries<Cyclotomic<Rationals>>,
    QSeries<Cyclotomic<Rationals>>,
);

/// The two constituents of the twisted second moment at `zeta = zeta_c^a`, over `Q(zeta_2c)`:
/// `A = (1/(q)_inf) sum (-1)^(n+1) q^(n(3n+1)/2) / (1 - zeta q^n)` and
/// `B = (1/(q)_inf) sum (-1)^(n+1) q^(3n(n+1)/2) / (1 - zeta q^n)^2`.
pub fn twisted_r2_parts(a: u64, c: u64, trunc: i64) -> Result<TwistedParts> {
    check_fraction(a, c)?;
    if a.gcd(&c) != 1 {
        return Err(Error::invalid(format!("a={a} and c={c} must be coprime")));
    }
    let ring = Cyclotomic::new(2 * c, Rationals)?;
    let z = |e: i64| ring.root_power(2 * a as i64 * e);
    let len = (trunc + 1).max(0) as usize;
    let mut num_a = vec![ring.zero(); len];
    let mut num_b = vec![ring.zero(); len];
    let one = ring.one();
    let pole = ring.sub(&one, &z(1));
    let pole_inv = ring.inv(&pole)?;
    if len > 0 {
        num_a[0] = ring.neg(&pole_inv);
        num_b[0] = ring.neg(&ring.mul(&pole_inv, &pole_inv));
    }
    let add = |v: &mut Vec<CycElement<BigRational>>, e: i64, c: CycElement<BigRational>| {
        if e <= trunc {
            v[e as usize] = ring.add(&v[e as usize], &c);
        }
    };
    let mut n = 1i64;
    while n * (3 * n - 1) / 2 <= trunc {
        let sign = if n % 2 == 1 { 1 } else { -1 };
        let s = ring.from_i64(sign);
        // positive index: 1/(1 - zeta q^n) = sum_j zeta^j q^(nj)
        let mut j = 0;
        while n * (3 * n + 1) / 2 + n * j <= trunc {
            add(&mut num_a, n * (3 * n + 1) / 2 + n * j, ring.mul(&s, &z(j)));
            j += 1;
        }
        let mut j = 0;
        while 3 * n * (n + 1) / 2 + n * j <= trunc {
            add(
                &mut num_b,
                3 * n * (n + 1) / 2 + n * j,
                ring.mul(&ring.from_i64(sign * (j + 1)), &z(j)),
            );
            j += 1;
        }
        // negative index -n: 1/(1 - zeta q^-n) = -sum_{j>=1} zeta^-j q^(nj)
        let mut j = 1;
        while n * (3 * n - 1) / 2 + n * j <= trunc {
            add(
                &mut num_a,
                n * (3 * n - 1) / 2 + n * j,
                ring.mul(&ring.neg(&s), &z(-j)),
            );
            j += 1;
        }
        // 1/(1 - zeta q^-n)^2 = sum_{j>=1} j zeta^-(j+1) q^(n(j+1))
        let mut j = 1;
        while 3 * n * (n - 1) / 2 + n * (j + 1) <= trunc {
            add(
                &mut num_b,
                3 * n * (n - 1) / 2 + n * (j + 1),
                ring.mul(&ring.from_i64(sign * j), &z(-(j + 1))),
            );
            j += 1;
        }
        n += 1;
    }
    let p = partition_series(ring.clone(), trunc);
    let a_series = QSeries::new(ring.clone(), 0, num_a, trunc).mul(&p)?;
    let b_series = QSeries::new(ring.clone(), 0, num_b, trunc).mul(&p)?;
    Ok((ring, a_series, b_series))
}

/// The twisted second moment `zeta_2c^a / 2 * A + zeta_2c^(3a) * B` (see [`twisted_r2_parts`]).
pub fn twisted_r2(a: u64, c: u64, trunc: i64) -> Result<MomentSeries<Cyclotomic<Rationals>>> {
    let (ring, pa, pb) = twisted_r2_parts(a, c, trunc)?;
    let half = ring.from_rational(&BigRational::new(1.into(), 2.into()))?;
    let ca = ring.mul(&half, &ring.root_power(a as i64));
    let cb = ring.root_power(3 * a as i64);
    let series = pa.scale(&ca).add(&pb.scale(&cb))?;
    Ok(MomentSeries::new(
        StatisticId::TwistedSecondMoment { a, c },
        series,
    ))
}

/// `s(a, c)`: 0, 1, 2, 3 according to which of `(0,1/6)`, `(1/6,1/2)`, `(1/2,5/6)`, `(5/6,1)`
/// contains `a/c`.
pub fn s_value(a: u64, c: u64) -> Result<u32> {
    check_fraction(a, c)?;
    let x = 6 * a;
    // compare 6a against c, 3c, 5c
    if x == c || x == 3 * c || x == 5 * c {
        return Err(Error::invalid(format!("s is undefined at a/c = {a}/{c}")));
    }
    Ok(if x < c {
        0
    } else if x < 3 * c {
        1
    } else if x < 5 * c {
        2
    } else {
        3
    })
}

/// `T_2(a/c; q) = (1/(q)_inf) ((s - 3a/c) q^(a/2c) sum_m (-1)^m q^(m(3m+1)/2 + ms) / (1 - q^(m + a/c))
///   + q^(3a/2c) sum_m (-1)^m q^(3m(m+1)/2 + ms) / (1 - q^(m + a/c))^2)`,
/// as a series in `q^(1/E)` with `E = lcm(2c, 24)`, exact for `q`-exponents up to `trunc`.
pub fn t2_series(a: u64, c: u64, trunc: i64) -> Result<MomentSeries<Rationals>> {
    Ok(MomentSeries::new(
        StatisticId::T2 { a, c },
        t2_scaled(a, c, trunc)?.series,
    ))
}

/// [`t2_series`] together with its exponent scale `E`.
pub fn t2_scaled(a: u64, c: u64, trunc: i64) -> Result<ScaledSeries<Rationals>> {
    let s = s_value(a, c)? as i64;
    let e = (2 * c).lcm(&24) as i64;
    let u = e * a as i64 / c as i64;
    let h = u / 2;
    let bound = e * trunc;
    let lead = BigRational::new(BigInt::from(s * c as i64 - 3 * a as i64), BigInt::from(c));
    let mut terms: BTreeMap<i64, BigRational> = BTreeMap::new();
    let mut push = |k: i64, v: BigRational| {
        if k <= bound {
            *terms.entry(k).or_insert_with(BigRational::zero) += v;
        }
    };
    let mut m = 0i64;
    loop {
        let mut any = false;
        for mm in if m == 0 { vec![0] } else { vec![m, -m] } {
            let sign = BigRational::from_integer(BigInt::from(if mm % 2 == 0 { 1 } else { -1 }));
            let base1 = e * (mm * (3 * mm + 1) / 2 + mm * s) + h;
            let base2 = e * (3 * mm * (mm + 1) / 2 + mm * s) + 3 * h;
            if mm >= 0 {
                let step = e * mm + u;
                let mut j = 0;
                while base1 + j * step <= bound {
                    push(base1 + j * step, &sign * &lead);
                    j += 1;
                    any = true;
                }
                let mut j = 0;
                while base2 + j * step <= bound {
                    push(
                        base2 + j * step,
                        &sign * BigRational::from_integer(BigInt::from(j + 1)),
                    );
                    j += 1;
                    any = true;
                }
            } else {
                // m + a/c < 0: 1/(1 - Q^-x) = -sum_{j>=1} Q^(jx), 1/(1 - Q^-x)^2 = sum_{j>=1} j Q^((j+1)x)
                let x = -e * mm - u;
                let mut j = 1;
                while base1 + j * x <= bound {
                    push(base1 + j * x, -(&sign * &lead));
                    j += 1;
                    any = true;
                }
                let mut j = 1;
                while base2 + (j + 1) * x <= bound {
                    push(
                        base2 + (j + 1) * x,
                        &sign * BigRational::from_integer(BigInt::from(j)),
                    );
                    j += 1;
                    any = true;
                }
            }
        }
        if !any && m > 3 {
            break;
        }
        m += 1;
    }
    let start = terms.keys().next().copied().unwrap_or(0).min(0);
    let coeffs: Vec<BigRational> = (start..=bound)
        .map(|k| terms.get(&k).cloned().unwrap_or_else(BigRational::zero))
        .collect();
    let num = QSeries::new(Rationals, start, coeffs, bound);
    let p_trunc = trunc + (-start) / e + 1;
    let p = partition_series(Rationals, p_trunc).rescale(e as u64)?;
    let series = num.mul(&p)?.truncate(bound);
    Ok(ScaledSeries {
        scale: e as u64,
        series,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::{twisted_moment, Statistic};

    #[test]
    fn s_values() {
        assert_eq!(s_value(1, 5).unwrap(), 1);
        assert_eq!(s_value(1, 12).unwrap(), 0);
        assert_eq!(s_value(11, 12).unwrap(), 3);
        assert_eq!(s_value(3, 5).unwrap(), 2);
        for (a, c) in [(1, 6), (1, 2), (5, 6), (2, 4)] {
            assert!(s_value(a, c).is_err());
        }
    }

    #[test]
    fn twisted_eisenstein_values() {
        let s = twisted_eisenstein(1, 1, 2, 10).unwrap();
        assert_eq!(s.coeff(2).coeffs, vec![BigInt::from(2)]);
        // c = 1 and j even cancels
        let z = twisted_eisenstein(2, 1, 1, 10).unwrap();
        assert!(z.is_zero());
        let ring = Cyclotomic::new(7, Integers).unwrap();
        let plus = twisted_eisenstein(2, 3, 7, 12).unwrap();
        let minus = twisted_eisenstein(2, -3, 7, 12).unwrap();
        assert_eq!(plus.add(&minus).unwrap(), QSeries::zero(ring, 12));
    }

    #[test]
    fn twisted_eisenstein_is_log_derivative_of_crank() {
        // delta_w C = L C row by row, then specialized at zeta
        let c = 5u64;
        let ring = Cyclotomic::new(c, Integers).unwrap();
        let trunc = 12;
        for j in 1..=3u32 {
            let direct = twisted_eisenstein(j, 2, c, trunc).unwrap();
            // double sum over n, m >= 1 of m^j zeta^m q^(nm) - (-m)^j zeta^-m q^(nm)
            let mut coeffs = vec![ring.zero(); trunc as usize + 1];
            for n in 1..=trunc {
                for m in 1..=trunc / n {
                    let mj = BigInt::from(m).pow(j);
                    let neg = BigInt::from(-m).pow(j);
                    let t = ring.sub(
                        &ring.mul(&ring.from_int(&mj), &ring.root_power(2 * m)),
                        &ring.mul(&ring.from_int(&neg), &ring.root_power(-2 * m)),
                    );
                    coeffs[(n * m) as usize] = ring.add(&coeffs[(n * m) as usize], &t);
                }
            }
            assert_eq!(direct, QSeries::new(ring.clone(), 0, coeffs, trunc));
        }
    }

    #[test]
    fn twisted_moments_match_enumeration() {
        for (kind, stat) in [
            (TwistedKind::Rank, Statistic::Rank),
            (TwistedKind::Crank, Statistic::Crank),
        ] {
            for (j, a, c) in [(0u32, 1u64, 2u64), (2, 1, 5), (1, 2, 7)] {
                let s = twisted_moment_series(kind, j, a, c, 14).unwrap();
                for n in 1..=14u32 {
                    let e = twisted_moment(stat, j, a as i64, c, n).unwrap();
                    assert_eq!(
                        s.series.coeff(n as i64),
                        e,
                        "{kind:?} j={j} a={a} c={c} n={n}"
                    );
                }
            }
        }
        let f = twisted_moment_series(TwistedKind::Rank, 0, 1, 2, 4).unwrap();
        assert_eq!(f.series.coeff(4).coeffs, vec![BigInt::from(-3)]);
    }

    /// `A = -R(zeta)/(1 - zeta)` and `A - (1 - zeta) B = [d/dw R]_{w = zeta}`, both from rank counts.
    fn oracle_parts(
        a: u64,
        c: u64,
        trunc: i64,
    ) -> (
        Cyclotomic<Rationals>,
        Vec<CycElement<BigRational>>,
        Vec<CycElement<BigRational>>,
    ) {
        let ring = Cyclotomic::new(2 * c, Rationals).unwrap();
        let zeta = ring.root_power(2 * a as i64);
        let one_minus = ring.sub(&ring.one(), &zeta);
        let inv = ring.inv(&one_minus).unwrap();
        let mut pa = Vec::new();
        let mut pb = Vec::new();
        for n in 0..=trunc {
            let (r, d) = if n == 0 {
                (ring.one(), ring.zero())
            } else {
                let mut r = ring.zero();
                let mut d = ring.zero();
                for (m, cnt) in crate::partitions::rank_distribution(n as u32) {
                    r = ring.add(
                        &r,
                        &ring.mul(&ring.from_i64(cnt), &ring.root_power(2 * a as i64 * m)),
                    );
                    d = ring.add(
                        &d,
                        &ring.mul(
                            &ring.from_i64(cnt * m),
                            &ring.root_power(2 * a as i64 * (m - 1)),
                        ),
                    );
                }
                (r, d)
            };
            let av = ring.neg(&ring.mul(&r, &inv));
            let bv = ring.mul(&ring.sub(&av, &d), &inv);
            pa.push(av);
            pb.push(bv);
        }
        (ring, pa, pb)
    }

    #[test]
    fn second_moment_parts_match_rank_counts() {
        for (a, c) in [(1u64, 3u64), (1, 2), (2, 5), (3, 7)] {
            let (_, pa, pb) = twisted_r2_parts(a, c, 12).unwrap();
            let (_, oa, ob) = oracle_parts(a, c, 12);
            for n in 0..=12 {
                assert_eq!(pa.coeff(n), oa[n as usize], "A a={a} c={c} n={n}");
                assert_eq!(pb.coeff(n), ob[n as usize], "B a={a} c={c} n={n}");
            }
        }
    }

    #[test]
    fn second_moment_at_one_half_vanishes() {
        let r = twisted_r2(1, 2, 15).unwrap();
        assert!(r.series.is_zero());
        assert!(twisted_r2(2, 4, 5).is_err());
    }

    #[test]
    fn t2_against_series_inversion() {
        for (a, c) in [(1u64, 5u64), (1, 12), (11, 12), (3, 5)] {
            let got = t2_scaled(a, c, 6).unwrap();
            let e = got.scale as i64;
            let s = s_value(a, c).unwrap() as i64;
            let u = e * a as i64 / c as i64;
            let bound = e * 6;
            let ring = Rationals;
            let lead = BigRational::new(BigInt::from(s * c as i64 - 3 * a as i64), BigInt::from(c));
            let work = bound + 4 * e;
            let mut acc = QSeries::zero(ring, work);
            for m in -6i64..=6 {
                let sign = BigRational::from_integer(BigInt::from(if m % 2 == 0 { 1 } else { -1 }));
                let pole_exp = e * m + u;
                let one = QSeries::one(ring, work + pole_exp.abs() * 3);
                let mono = QSeries::monomial(
                    ring,
                    BigRational::from_integer(1.into()),
                    pole_exp,
                    work + pole_exp.abs() * 3,
                );
                let inv = one.sub(&mono).unwrap().invert().unwrap();
                let inv2 = inv.mul(&inv).unwrap();
                let t1 = QSeries::monomial(
                    ring,
                    &sign * &lead,
                    e * (m * (3 * m + 1) / 2 + m * s) + u / 2,
                    work + 100 * e,
                );
                let t2 = QSeries::monomial(
                    ring,
                    sign.clone(),
                    e * (3 * m * (m + 1) / 2 + m * s) + 3 * u / 2,
                    work + 100 * e,
                );
                acc = acc
                    .add(&t1.mul(&inv).unwrap())
                    .unwrap()
                    .add(&t2.mul(&inv2).unwrap())
                    .unwrap();
            }
            let p = partition_series(ring, 12).rescale(e as u64).unwrap();
            let expected = acc.mul(&p).unwrap();
            for k in got.series.order()..=bound {
                assert_eq!(got.series.coeff(k), expected.coeff(k), "a={a} c={c} k={k}");
            }
        }
    }
}
