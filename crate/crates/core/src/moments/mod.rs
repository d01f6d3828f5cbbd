//! Rank and crank moment generating functions and the identities between them.

mod durfee_gf;
mod identities;
mod lambert;
mod pk;
mod twisted;
mod witness;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partitions;
use crate::qseries::{eisenstein_phi, partition_series, QSeries};
use crate::rings::{binomial, Integers, Rationals, Ring};

pub use durfee_gf::{durfee_gf_deriv, durfee_gf_eval, full_rank_gf_at};
pub use identities::{
    rank4_display_residual, rankcrank_residual, rankcrank_sides, solve_r2k, y_series, MomentCache,
};
pub use lambert::{
    crank_gf, crank_gf_lambert, for_each_lambert_term, pde_crank_side, pde_rank_side_doubled,
    pde_residual, rank_gf_hyper, rank_gf_lambert, weighted_numerator, weighted_series, LambertKind,
};
pub use pk::{
    pcong_check, pk_explicit, pk_from_rank_relation, pk_poly, vk_identity_holds, vk_poly,
};
pub use twisted::{
    s_value, t2_scaled, t2_series, twisted_eisenstein, twisted_moment_series, twisted_r2,
    twisted_r2_parts, ScaledSeries, TwistedKind, TwistedParts,
};
pub use witness::{crank_witness, rank_witness, witness_depth};

/// Identifies what a [`MomentSeries`] holds.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StatisticId {
    /// `C_a = sum M_a(n) q^n`
    CrankMoment {
        order: u32,
    },
    /// `sum N_j(n) q^n`
    RankMoment {
        order: u32,
    },
    /// `R_{k+1} = sum eta_{2k}(n) q^n`
    Symmetrized {
        k: u32,
    },
    /// Left side of the rank-crank moment identity at order `2k`.
    Y {
        k: u32,
    },
    TwistedRank {
        order: u32,
        a: u64,
        c: u64,
    },
    TwistedCrank {
        order: u32,
        a: u64,
        c: u64,
    },
    TwistedSecondMoment {
        a: u64,
        c: u64,
    },
    T2 {
        a: u64,
        c: u64,
    },
}

/// A q-series tagged with the statistic it enumerates.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentSeries<R: Ring> {
    pub id: StatisticId,
    pub series: QSeries<R>,
}

impl<R: Ring> MomentSeries<R> {
    pub fn new(id: StatisticId, series: QSeries<R>) -> Self {
        MomentSeries { id, series }
    }

    /// JSON metadata written next to the text form of the series.
    pub fn sidecar(&self) -> serde_json::Value {
        serde_json::json!({
            "statistic": self.id,
            "trunc": self.series.trunc(),
            "ring": self.series.ring().tag().to_string(),
        })
    }

    pub fn to_text(&self) -> String {
        self.series.to_text()
    }
}

impl MomentSeries<Integers> {
    /// Compares against enumeration for `1 <= n <= min(bound, trunc)`.
    pub fn check_oracle(&self, bound: i64) -> Result<()> {
        let top = bound.min(self.series.trunc());
        for n in 1..=top {
            let expected = match self.id {
                StatisticId::CrankMoment { order } => partitions::crank_moment(order, n as u32),
                StatisticId::RankMoment { order } => partitions::rank_moment(order, n as u32),
                StatisticId::Symmetrized { k } => partitions::eta_moment(2 * k, n as u32),
                _ => return Err(Error::invalid("no enumeration oracle for this statistic")),
            };
            let got = self.series.coeff(n);
            if got != expected {
                return Err(Error::OracleMismatch(format!(
                    "{:?} at q^{n}: series {got}, enumeration {expected}",
                    self.id
                )));
            }
        }
        Ok(())
    }
}

/// Which moment family to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MomentKind {
    Crank,
    Rank,
    /// Binomial weight `C(m + floor((k-1)/2), k)`; order `2k` gives `R_{k+1}`.
    Symmetrized,
}

fn weight_fn(kind: MomentKind, order: u32) -> impl Fn(i64) -> BigInt {
    move |m| match kind {
        MomentKind::Symmetrized => binomial(m + (order as i64 - 1).div_euclid(2), order),
        _ => BigInt::from(m).pow(order),
    }
}

fn statistic_id(kind: MomentKind, order: u32) -> StatisticId {
    match kind {
        MomentKind::Crank => StatisticId::CrankMoment { order },
        MomentKind::Rank => StatisticId::RankMoment { order },
        MomentKind::Symmetrized => StatisticId::Symmetrized { k: order / 2 },
    }
}

/// Moment series by weighting each row of the bivariate generating function.
///
/// The constant term follows the row `n = 0` of the bivariate series (which is `1`),
/// so order 0 gives `P(q)`. For order `>= 1` it is `0`.
pub fn moment_series(kind: MomentKind, order: u32, trunc: i64) -> Result<MomentSeries<Integers>> {
    let biv = match kind {
        MomentKind::Crank => lambert::crank_gf(trunc)?,
        _ => lambert::rank_gf_lambert(trunc)?,
    };
    let w = weight_fn(kind, order);
    let series = biv.weighted_sum(Integers, |c| c.clone(), w);
    Ok(MomentSeries::new(statistic_id(kind, order), series))
}

/// Same series as [`moment_series`], through the weighted Lambert numerator; suited to
/// truncations in the thousands.
pub fn moment_series_fast(
    kind: MomentKind,
    order: u32,
    trunc: i64,
) -> Result<MomentSeries<Integers>> {
    let lk = match kind {
        MomentKind::Crank => LambertKind::Crank,
        _ => LambertKind::Rank,
    };
    let series = weighted_series(&Integers, lk, trunc, weight_fn(kind, order))?;
    Ok(MomentSeries::new(statistic_id(kind, order), series))
}

/// `C_a` from the recurrence
/// `C_a = 2 sum_{j=1}^{a/2-1} C(a-1, 2j-1) Phi_{2j-1} C_{a-2j} + 2 Phi_{a-1} P` with `C_0 = P`.
pub fn crank_moment_recurrence(a: u32, trunc: i64) -> Result<QSeries<Integers>> {
    if a % 2 == 1 {
        return Err(Error::invalid("the crank recurrence runs over even orders"));
    }
    let p = partition_series(Integers, trunc);
    let mut table: Vec<QSeries<Integers>> = vec![p.clone()];
    for order in (2..=a).step_by(2) {
        let mut acc = eisenstein_phi(Integers, order - 1, trunc)?.mul(&p)?;
        for j in 1..order / 2 {
            let phi = eisenstein_phi(Integers, 2 * j - 1, trunc)?;
            let c = binomial(order as i64 - 1, 2 * j - 1);
            let term = phi.mul(&table[(order / 2 - j) as usize])?.scale(&c);
            acc = acc.add(&term)?;
        }
        table.push(acc.scale(&BigInt::from(2)));
    }
    Ok(table.pop().expect("nonempty"))
}

pub(crate) fn to_rationals(x: &QSeries<Integers>) -> QSeries<Rationals> {
    x.map_ring(Rationals, |c| Ok(BigRational::from_integer(c.clone())))
        .expect("integers embed")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn second_moments() {
        let r2 = moment_series(MomentKind::Rank, 2, 12).unwrap();
        assert_eq!(r2.series.coeff(4), BigInt::from(20));
        assert_eq!(r2.series.coeff(6), BigInt::from(80));
        let s = moment_series(MomentKind::Symmetrized, 2, 12).unwrap();
        assert_eq!(s.series.coeff(4), BigInt::from(10));
        s.check_oracle(12).unwrap();
        r2.check_oracle(12).unwrap();
        let c2 = moment_series(MomentKind::Crank, 2, 20).unwrap();
        c2.check_oracle(20).unwrap();
        let phi = eisenstein_phi(Integers, 1, 20).unwrap();
        let expected = phi
            .mul(&partition_series(Integers, 20))
            .unwrap()
            .scale(&BigInt::from(2));
        assert_eq!(c2.series, expected);
    }

    #[test]
    fn crank_recurrence_matches_rows() {
        for a in [2, 4, 6] {
            let rows = moment_series(MomentKind::Crank, a, 18).unwrap();
            assert_eq!(
                rows.series,
                crank_moment_recurrence(a, 18).unwrap(),
                "a={a}"
            );
        }
        assert!(crank_moment_recurrence(3, 5).is_err());
    }

    #[test]
    fn fast_path_agrees() {
        for (kind, order) in [
            (MomentKind::Rank, 4),
            (MomentKind::Crank, 4),
            (MomentKind::Symmetrized, 6),
        ] {
            let a = moment_series(kind, order, 22).unwrap();
            let b = moment_series_fast(kind, order, 22).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn sidecar_fields() {
        let s = moment_series(MomentKind::Symmetrized, 4, 5).unwrap();
        let j = s.sidecar();
        assert_eq!(j["statistic"]["kind"], "symmetrized");
        assert_eq!(j["statistic"]["k"], 2);
        assert_eq!(j["trunc"], 5);
        assert_eq!(j["ring"], "integer");
    }
}
