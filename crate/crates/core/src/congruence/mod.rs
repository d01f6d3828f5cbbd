//! Congruence checks: explicit progressions, the `l`-adic pipeline, dissections of the
//! full-rank generating function and the root-of-unity identities.

mod dissection;
mod roots;
mod theorem3;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qseries::QSeries;
use crate::rings::{bernoulli, is_prime, Integers, Residues, Ring};

pub use dissection::{dissection_check, DissectionReport};
pub use roots::{
    root_hypothesis, root_identity_check, root_identity_sine_form, root_identity_table,
    RootIdentityOutcome,
};
pub use theorem3::{
    theorem3_part12, theorem3_part1_quotient, theorem3_part3, Part12Report, Part3Report,
    StreamTarget,
};

/// Constants attached to a prime `l > 3`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EllData {
    pub ell: u64,
    /// `1 <= beta <= l-1` with `24 beta == 1 (mod l)`.
    pub beta: u64,
    /// `(24 beta - 1) / l`
    pub r: u64,
    /// `(l^2 + 24 beta - 1) / (24 l)`
    pub lambda: u64,
    /// `l B_{l-1} / (l-1)` reduced mod `l^2`.
    pub alpha: u64,
}

pub fn ell_data(ell: u64) -> Result<EllData> {
    if ell <= 3 || !is_prime(ell) {
        return Err(Error::invalid(format!(
            "expected a prime above 3, got {ell}"
        )));
    }
    let beta = (1..ell)
        .find(|b| (24 * b) % ell == 1)
        .expect("24 is a unit mod l");
    let r = (24 * beta - 1) / ell;
    let num = ell * ell + 24 * beta - 1;
    debug_assert_eq!(num % (24 * ell), 0);
    let lambda = num / (24 * ell);
    let ring = Residues::new(ell * ell)?;
    let b = bernoulli((ell - 1) as usize);
    let x = b * BigRational::from_integer(BigInt::from(ell))
        / BigRational::from_integer(BigInt::from(ell - 1));
    let alpha = ring.from_rational(&x)?;
    Ok(EllData {
        ell,
        beta,
        r,
        lambda,
        alpha,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum CongruenceStatus {
    VerifiedOnRange,
    Counterexample { n: u64, value: String },
}

/// Outcome of checking `a(A n + B) == 0 (mod modulus)` for `0 <= n <= checked_to`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceReport {
    pub statistic: String,
    pub a: u64,
    pub b: u64,
    pub modulus: u64,
    pub checked_to: u64,
    #[serde(flatten)]
    pub status: CongruenceStatus,
}

impl CongruenceReport {
    pub fn holds(&self) -> bool {
        self.status == CongruenceStatus::VerifiedOnRange
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }
}

/// Checks `coeff(A n + B) == 0 (mod modulus)` for `0 <= n <= n_max`.
pub fn verify_congruence(
    statistic: &str,
    series: &QSeries<Integers>,
    a: u64,
    b: u64,
    modulus: u64,
    n_max: u64,
) -> Result<CongruenceReport> {
    let top = (a * n_max + b) as i64;
    if top > series.trunc() {
        return Err(Error::InsufficientTruncation {
            needed: top,
            available: series.trunc(),
        });
    }
    let m = BigInt::from(modulus);
    let mut status = CongruenceStatus::VerifiedOnRange;
    for n in 0..=n_max {
        let c = series.coeff((a * n + b) as i64);
        if !c.mod_floor(&m).is_zero() {
            status = CongruenceStatus::Counterexample {
                n,
                value: c.to_string(),
            };
            break;
        }
    }
    Ok(CongruenceReport {
        statistic: statistic.to_string(),
        a,
        b,
        modulus,
        checked_to: n_max,
        status,
    })
}

/// Progression moduli tried by [`scan_congruences`] by default: `{l, l^2, l^3} x {1, t^2}`.
pub fn default_scan_moduli(ell: u64, twists: &[u64]) -> Vec<u64> {
    let mut out = Vec::new();
    for p in [ell, ell * ell, ell * ell * ell] {
        out.push(p);
        for &t in twists {
            out.push(p * t * t);
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Every progression `A n + B` (over the given `A`, all `0 <= B < A`) whose coefficients are
/// divisible by `l^j` for every `n <= n_max` that the truncation reaches. A pass is evidence only.
///
/// Progressions with fewer than `min_points` checked terms are skipped. Results are sorted by `(A, B)`.
pub fn scan_congruences(
    statistic: &str,
    series: &QSeries<Integers>,
    ell: u64,
    j: u32,
    moduli: &[u64],
    n_max: u64,
    min_points: u64,
) -> Vec<CongruenceReport> {
    let modulus = ell.pow(j);
    let m = BigInt::from(modulus);
    let trunc = series.trunc().max(-1);
    let pairs: Vec<(u64, u64)> = moduli
        .iter()
        .flat_map(|&a| (0..a).map(move |b| (a, b)))
        .collect();
    let mut found: Vec<CongruenceReport> = pairs
        .par_iter()
        .filter_map(|&(a, b)| {
            if b as i64 > trunc {
                return None;
            }
            let reach = ((trunc as u64 - b) / a).min(n_max);
            if reach + 1 < min_points {
                return None;
            }
            let ok = (0..=reach).all(|n| series.coeff((a * n + b) as i64).mod_floor(&m).is_zero());
            ok.then(|| CongruenceReport {
                statistic: statistic.to_string(),
                a,
                b,
                modulus,
                checked_to: reach,
                status: CongruenceStatus::VerifiedOnRange,
            })
        })
        .collect();
    found.sort_by_key(|r| (r.a, r.b));
    found
}
