use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::{moment_series, to_rationals, MomentKind, MomentSeries, StatisticId};
use crate::error::{Error, Result};
use crate::qseries::{partition_series, QSeries};
use crate::rings::{binomial, Rationals};

type Entries = HashMap<(MomentKind, u32), Arc<QSeries<Rationals>>>;

/// Memoized crank and rank moment series at one truncation, as rational series.
///
/// Readers share the cache; a missing entry is computed outside the lock and inserted once.
pub struct MomentCache {
    trunc: i64,
    entries: RwLock<Entries>,
    p_inv_sq: QSeries<Rationals>,
}

impl MomentCache {
    pub fn new(trunc: i64) -> Result<Self> {
        let p = to_rationals(&partition_series(crate::rings::Integers, trunc));
        let p_inv = p.invert()?;
        Ok(MomentCache {
            trunc,
            entries: RwLock::new(HashMap::new()),
            p_inv_sq: p_inv.mul(&p_inv)?,
        })
    }

    pub fn trunc(&self) -> i64 {
        self.trunc
    }

    /// `C_a` (with `C_0 = P`) or `sum N_j(n) q^n`.
    pub fn get(&self, kind: MomentKind, order: u32) -> Result<Arc<QSeries<Rationals>>> {
        if let Some(s) = self.entries.read().expect("cache lock").get(&(kind, order)) {
            return Ok(s.clone());
        }
        let s = Arc::new(to_rationals(
            &moment_series(kind, order, self.trunc)?.series,
        ));
        let mut w = self.entries.write().expect("cache lock");
        Ok(w.entry((kind, order)).or_insert(s).clone())
    }

    pub fn p_inv_sq(&self) -> &QSeries<Rationals> {
        &self.p_inv_sq
    }
}

fn rat(n: BigInt) -> BigRational {
    BigRational::from_integer(n)
}

fn pow2(e: u32) -> BigInt {
    BigInt::one() << e
}

/// `sum_{alpha+beta+gamma = b, all even} (b; alpha, beta, gamma) C_alpha C_beta C_gamma`.
fn crank_cube_sum(cache: &MomentCache, b: u32) -> Result<QSeries<Rationals>> {
    let mut acc = QSeries::zero(Rationals, cache.trunc());
    for alpha in (0..=b).step_by(2) {
        for beta in (0..=b - alpha).step_by(2) {
            let gamma = b - alpha - beta;
            let multi = binomial(b as i64, alpha) * binomial((b - alpha) as i64, beta);
            let prod = cache
                .get(MomentKind::Crank, alpha)?
                .mul(&*cache.get(MomentKind::Crank, beta)?)?
                .mul(&*cache.get(MomentKind::Crank, gamma)?)?;
            acc = acc.add(&prod.scale(&rat(multi)))?;
        }
    }
    Ok(acc)
}

fn check_even(a: u32) -> Result<()> {
    if a < 2 || a % 2 == 1 {
        return Err(Error::invalid(format!(
            "moment order must be even and at least 2, got {a}"
        )));
    }
    Ok(())
}

/// The crank side of the rank-crank moment identity at even order `a`:
/// `sum_{i=0}^{a/2-1} C(a, 2i) sum (a-2i; alpha, beta, gamma) C_alpha C_beta C_gamma P^-2 - 3(2^(a-1) - 1) C_2`.
pub fn y_lhs(cache: &MomentCache, a: u32) -> Result<QSeries<Rationals>> {
    check_even(a)?;
    let mut acc = QSeries::zero(Rationals, cache.trunc());
    for i in 0..a / 2 {
        let inner = crank_cube_sum(cache, a - 2 * i)?;
        acc = acc.add(&inner.scale(&rat(binomial(a as i64, 2 * i))))?;
    }
    acc = acc.mul(cache.p_inv_sq())?;
    let c2 = cache.get(MomentKind::Crank, 2)?;
    acc.sub(&c2.scale(&rat(BigInt::from(3) * (pow2(a - 1) - 1))))
}

/// Coefficients of the lower rank moments in the identity: for `1 <= i <= a/2 - 1`, the
/// multiplier of `delta_q R_{a-2i}` and of `R_{a-2i}`.
pub(crate) fn lower_coefficients(a: u32, i: u32) -> (BigInt, BigInt) {
    let a_ = a as i64;
    let dq = BigInt::from(6) * binomial(a_, 2 * i) * (pow2(2 * i - 1) - 1);
    let plain = binomial(a_, 2 * i + 2) * (pow2(2 * i + 1) - 1)
        - pow2(2 * i) * binomial(a_, 2 * i + 1)
        + binomial(a_, 2 * i);
    (dq, plain)
}

/// Rank side: `(a-1)(a-2)/2 R_a + sum_i [dq_i delta_q R_{a-2i} + plain_i R_{a-2i}]`.
fn rank_side(cache: &MomentCache, a: u32) -> Result<QSeries<Rationals>> {
    let lead = rat(BigInt::from((a - 1) * (a - 2) / 2));
    let mut acc = cache.get(MomentKind::Rank, a)?.scale(&lead);
    for i in 1..a / 2 {
        let (dq, plain) = lower_coefficients(a, i);
        let r = cache.get(MomentKind::Rank, a - 2 * i)?;
        acc = acc
            .add(&r.delta_q().scale(&rat(dq)))?
            .add(&r.scale(&rat(plain)))?;
    }
    Ok(acc)
}

/// Both sides of the rank-crank moment identity at even order `a`.
pub fn rankcrank_sides(
    cache: &MomentCache,
    a: u32,
) -> Result<(QSeries<Rationals>, QSeries<Rationals>)> {
    check_even(a)?;
    Ok((y_lhs(cache, a)?, rank_side(cache, a)?))
}

/// Left side minus right side; identically zero when the identity holds.
pub fn rankcrank_residual(a: u32, trunc: i64) -> Result<QSeries<Rationals>> {
    let cache = MomentCache::new(trunc)?;
    let (l, r) = rankcrank_sides(&cache, a)?;
    l.sub(&r)
}

/// `Y_{2k}`.
pub fn y_series(k: u32, trunc: i64) -> Result<MomentSeries<Rationals>> {
    let cache = MomentCache::new(trunc)?;
    Ok(MomentSeries::new(
        StatisticId::Y { k },
        y_lhs(&cache, 2 * k)?,
    ))
}

/// `sum N_{2k}(n) q^n` solved from `Y_{2k}` and the lower rank moments, recursively down to
/// `sum N_2(n) q^n` (which the identity cannot determine: at order 2 both sides vanish).
pub fn solve_r2k(k: u32, trunc: i64) -> Result<MomentSeries<Rationals>> {
    if k == 0 {
        return Err(Error::invalid("k must be positive"));
    }
    let cache = MomentCache::new(trunc)?;
    let mut solved: Vec<QSeries<Rationals>> = vec![
        QSeries::zero(Rationals, trunc),
        (*cache.get(MomentKind::Rank, 2)?).clone(),
    ];
    for kk in 2..=k {
        let a = 2 * kk;
        let mut acc = y_lhs(&cache, a)?;
        for i in 1..kk {
            let (dq, plain) = lower_coefficients(a, i);
            let r = &solved[(kk - i) as usize];
            acc = acc
                .sub(&r.delta_q().scale(&rat(dq)))?
                .sub(&r.scale(&rat(plain)))?;
        }
        let lead = BigRational::new(BigInt::one(), BigInt::from((2 * kk - 1) * (kk - 1)));
        solved.push(acc.scale(&lead));
    }
    let series = solved.pop().expect("nonempty");
    Ok(MomentSeries::new(
        StatisticId::RankMoment { order: 2 * k },
        series,
    ))
}

/// `3 R_4 - (-2(3 delta_q + 1) C_2 + 8 C_4 + 3(-12 delta_q + 1) R_2)`.
pub fn rank4_display_residual(trunc: i64) -> Result<QSeries<Rationals>> {
    let cache = MomentCache::new(trunc)?;
    let c2 = cache.get(MomentKind::Crank, 2)?;
    let c4 = cache.get(MomentKind::Crank, 4)?;
    let r2 = cache.get(MomentKind::Rank, 2)?;
    let r4 = cache.get(MomentKind::Rank, 4)?;
    let k = |n: i64| rat(BigInt::from(n));
    let rhs = c2
        .delta_q()
        .scale(&k(-6))
        .add(&c2.scale(&k(-2)))?
        .add(&c4.scale(&k(8)))?
        .add(&r2.delta_q().scale(&k(-36)))?
        .add(&r2.scale(&k(3)))?;
    r4.scale(&k(3)).sub(&rhs)
}
