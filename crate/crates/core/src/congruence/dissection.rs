//! `NF_k(r, t; n)` recovered from the full-rank generating function at `t`-th roots of unity.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::moments::{full_rank_gf_at, moment_series_fast, MomentKind};
use crate::partitions::{full_rank_distribution, full_rank_residues};
use crate::qseries::{partition_series, QSeries};
use crate::rings::{Cyclotomic, Integers, Rationals, Ring};

#[derive(Clone, Debug, Serialize)]
pub struct DissectionReport {
    pub k: u32,
    pub t: u64,
    pub n_max: u64,
    /// `values[n-1][r]` is the dissection value of `NF_k(r, t; n)`.
    pub values: Vec<Vec<i64>>,
    /// `(n, r, dissection, enumeration)` for every disagreement.
    pub mismatches: Vec<(u64, u64, i64, i64)>,
    /// Exponents `j` whose points were degenerate, so the evaluation fell back to enumeration.
    pub enumerated_roots: Vec<u64>,
    /// `sum_r` of the dissection equals `D_k(n)` for every `n`.
    pub totals_match: bool,
}

impl DissectionReport {
    pub fn holds(&self) -> bool {
        self.mismatches.is_empty() && self.totals_match
    }
}

/// `R_k(1; q) = sum D_k(n) q^n`, via `D_1 = p` and `D_k = eta_{2k-2}`.
fn durfee_counts(k: u32, trunc: i64) -> Result<QSeries<Integers>> {
    if k == 1 {
        Ok(partition_series(Integers, trunc))
    } else {
        Ok(moment_series_fast(MomentKind::Symmetrized, 2 * k - 2, trunc)?.series)
    }
}

/// Evaluates `(1/t) sum_j zeta_t^(-rj) R_k(zeta_t^j; q)` for `1 <= n <= n_max` and compares
/// it with enumerated `NF_k(r, t; n)`. Roots where the evaluation points collide are handled
/// by summing the enumerated full-rank distribution against the root instead.
pub fn dissection_check(k: u32, t: u64, n_max: u64) -> Result<DissectionReport> {
    if k == 0 || t < 2 {
        return Err(Error::invalid(format!(
            "need k >= 1 and t >= 2, got k={k}, t={t}"
        )));
    }
    let trunc = n_max as i64;
    let ring = Cyclotomic::new(t, Rationals)?;
    let d = durfee_counts(k, trunc)?;
    let lift = |c: &BigInt| ring.from_base(BigRational::from_integer(c.clone()));

    // evaluations[j][n]
    let mut evaluations = vec![(1..=trunc).map(|n| lift(&d.coeff(n))).collect::<Vec<_>>()];
    let mut enumerated_roots = Vec::new();
    let dists: Vec<_> = (1..=n_max as u32)
        .map(|n| full_rank_distribution(k, n))
        .collect::<Result<_>>()?;
    for j in 1..t {
        let w = ring.root_power(j as i64);
        match full_rank_gf_at(&ring, &w, k, trunc) {
            Ok(gf) => evaluations.push((1..=trunc).map(|n| gf.coeff(n)).collect()),
            Err(Error::DegeneratePoints(_))
            | Err(Error::NotInvertible { .. })
            | Err(Error::NonUnit { .. }) => {
                enumerated_roots.push(j);
                let row = dists
                    .iter()
                    .map(|dist| {
                        dist.iter().fold(ring.zero(), |acc, (&m, &c)| {
                            ring.add(
                                &acc,
                                &ring.mul(&ring.from_i64(c), &ring.root_power(j as i64 * m)),
                            )
                        })
                    })
                    .collect();
                evaluations.push(row);
            }
            Err(e) => return Err(e),
        }
    }

    let inv_t = ring.from_base(BigRational::new(BigInt::one(), BigInt::from(t)));
    let mut values = Vec::new();
    let mut mismatches = Vec::new();
    let mut totals_match = true;
    for n in 1..=n_max {
        let enumerated = full_rank_residues(k, t, n as u32)?;
        let mut row = Vec::with_capacity(t as usize);
        for r in 0..t {
            let mut acc = ring.zero();
            for (j, ev) in evaluations.iter().enumerate() {
                let z = ring.root_power(-(r as i64) * j as i64);
                acc = ring.add(&acc, &ring.mul(&z, &ev[n as usize - 1]));
            }
            let acc = ring.mul(&acc, &inv_t);
            let value = ring.base_part(&acc).ok_or_else(|| {
                Error::OracleMismatch(format!("non-rational dissection value at n={n}, r={r}"))
            })?;
            if !value.is_integer() {
                return Err(Error::OracleMismatch(format!(
                    "non-integral dissection value {value} at n={n}, r={r}"
                )));
            }
            let v: i64 = value
                .to_integer()
                .try_into()
                .map_err(|_| Error::invalid("count overflows i64"))?;
            if v != enumerated[r as usize] {
                mismatches.push((n, r, v, enumerated[r as usize]));
            }
            row.push(v);
        }
        let total: i64 = row.iter().sum();
        if BigInt::from(total) != d.coeff(n as i64) {
            totals_match = false;
        }
        values.push(row);
    }
    Ok(DissectionReport {
        k,
        t,
        n_max,
        values,
        mismatches,
        enumerated_roots,
        totals_match,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn second_full_rank_mod_five() {
        let rep = dissection_check(2, 5, 12).unwrap();
        assert!(rep.holds(), "{:?}", rep.mismatches);
        assert!(rep.enumerated_roots.is_empty());
    }

    #[test]
    fn ordinary_rank_mod_seven() {
        let rep = dissection_check(1, 7, 10).unwrap();
        assert!(rep.holds());
        // N(r, 7; 5) = 1 for every r
        assert_eq!(rep.values[4], vec![1; 7]);
    }
}
