//! Constructive membership of the moment series in the quasimodular classes.
//!
//! Each witness fits a series divided by `P` against `E2^a E4^b E6^c` up to the
//! expected weight and checks the fit through four times the number of monomials.

use super::{pk_poly, MomentCache, MomentKind};
use crate::error::{Error, Result};
use crate::qseries::{euler_product, quasimodular_fit, Monomial, QSeries, QuasimodularFit};
use crate::rings::Rationals;

/// Check depth for a fit of weight `w`: four times the fit dimension.
pub fn witness_depth(weight: u32) -> i64 {
    4 * Monomial::up_to_weight(weight, true).len() as i64
}

fn fit_over_p(
    cache: &MomentCache,
    target: &QSeries<Rationals>,
    weight: u32,
) -> Result<QuasimodularFit> {
    let depth = witness_depth(weight);
    if cache.trunc() < depth {
        return Err(Error::InsufficientTruncation {
            needed: depth,
            available: cache.trunc(),
        });
    }
    let inv_p = euler_product(Rationals, cache.trunc());
    quasimodular_fit(&target.mul(&inv_p)?, weight, depth)
}

/// `C_{2k} / P` as a quasimodular form of weight at most `2k`.
pub fn crank_witness(k: u32) -> Result<QuasimodularFit> {
    if k == 0 {
        return Err(Error::invalid("k must be positive"));
    }
    let cache = MomentCache::new(witness_depth(2 * k))?;
    let c = cache.get(MomentKind::Crank, 2 * k)?;
    fit_over_p(&cache, &c, 2 * k)
}

/// `(R_{2k} - P_k(delta_q) R_2) / P` as a quasimodular form of weight at most `2k`,
/// where `R_j = sum N_j(n) q^n`.
pub fn rank_witness(k: u32) -> Result<QuasimodularFit> {
    if k < 2 {
        return Err(Error::invalid("k must be at least 2"));
    }
    let cache = MomentCache::new(witness_depth(2 * k))?;
    let top = cache.get(MomentKind::Rank, 2 * k)?;
    let r2 = cache.get(MomentKind::Rank, 2)?;
    let target = top.sub(&r2.apply_delta_poly(&pk_poly(k)))?;
    fit_over_p(&cache, &target, 2 * k)
}
