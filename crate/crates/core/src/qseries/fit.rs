//! Exact fitting of a series by monomials in `E2`, `E4`, `E6`.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{eisenstein_e, QSeries};
use crate::error::{Error, Result};
use crate::linalg;
use crate::rings::{Rationals, Ring};

/// `E2^e2 E4^e4 E6^e6`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Monomial {
    pub e2: u32,
    pub e4: u32,
    pub e6: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial {
        e2: 0,
        e4: 0,
        e6: 0,
    };

    pub fn new(e2: u32, e4: u32, e6: u32) -> Self {
        Monomial { e2, e4, e6 }
    }

    pub fn weight(&self) -> u32 {
        2 * self.e2 + 4 * self.e4 + 6 * self.e6
    }

    /// All monomials of weight at most `w`, optionally without `E2`.
    pub fn up_to_weight(w: u32, with_e2: bool) -> Vec<Monomial> {
        let mut out = Vec::new();
        for e6 in 0..=w / 6 {
            for e4 in 0..=(w - 6 * e6) / 4 {
                let rest = w - 6 * e6 - 4 * e4;
                let max2 = if with_e2 { rest / 2 } else { 0 };
                for e2 in 0..=max2 {
                    out.push(Monomial { e2, e4, e6 });
                }
            }
        }
        out.sort();
        out
    }

    /// `E2`-free monomials of weight exactly `w`.
    pub fn of_weight(w: u32) -> Vec<Monomial> {
        Monomial::up_to_weight(w, false)
            .into_iter()
            .filter(|m| m.weight() == w)
            .collect()
    }

    pub fn series(&self, trunc: i64) -> Result<QSeries<Rationals>> {
        let mut acc = QSeries::one(Rationals, trunc);
        for (j, e) in [(2, self.e2), (4, self.e4), (6, self.e6)] {
            if e > 0 {
                acc = acc.mul(&eisenstein_e(j, trunc)?.pow(e as u64)?)?;
            }
        }
        Ok(acc)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (name, e) in [("E2", self.e2), ("E4", self.e4), ("E6", self.e6)] {
            match e {
                0 => {}
                1 => parts.push(name.to_string()),
                _ => parts.push(format!("{name}^{e}")),
            }
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

/// An exact expression in `E2, E4, E6` matching a target series.
#[derive(Clone, Debug, PartialEq)]
pub struct QuasimodularFit {
    pub max_weight: u32,
    pub terms: BTreeMap<Monomial, BigRational>,
    /// The reconstruction agrees with the target through this exponent.
    pub residual_checked_to: i64,
    /// Number of leading coefficients used to pin down the solution.
    pub rows_used: usize,
}

impl QuasimodularFit {
    pub fn reconstruct(&self, trunc: i64) -> Result<QSeries<Rationals>> {
        let mut acc = QSeries::zero(Rationals, trunc);
        for (m, c) in &self.terms {
            acc = acc.add(&m.series(trunc)?.scale(c))?;
        }
        Ok(acc)
    }

    /// Whether every coefficient has a denominator prime to `l`.
    pub fn is_integral_at(&self, l: u64) -> bool {
        let l = num_bigint::BigInt::from(l);
        self.terms.values().all(|c| !(c.denom() % &l).is_zero())
    }

    /// Largest weight among monomials with nonzero coefficient.
    pub fn actual_weight(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::weight).max()
    }

    pub fn uses_e2(&self) -> bool {
        self.terms.keys().any(|m| m.e2 > 0)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: serde_json::Map<String, serde_json::Value> = self
            .terms
            .iter()
            .map(|(m, c)| (m.to_string(), c.to_string().into()))
            .collect();
        serde_json::json!({
            "max_weight": self.max_weight,
            "terms": terms,
            "residual_checked_to": self.residual_checked_to,
            "rows_used": self.rows_used,
        })
    }
}

impl fmt::Display for QuasimodularFit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| format!("({c})*{m}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Solves `target = sum c_i basis_i` from leading coefficients, adding rows
/// past the first `basis.len()` only if those are singular, then checks the
/// solution through `check_to`. Returns the coefficients and the rows used.
pub fn fit_combination<R: Ring>(
    target: &QSeries<R>,
    basis: &[QSeries<R>],
    check_to: i64,
) -> Result<(Vec<R::Elem>, usize)> {
    let ring = target.ring().clone();
    let d = basis.len();
    let available = basis
        .iter()
        .map(QSeries::trunc)
        .chain([target.trunc()])
        .min()
        .unwrap_or(check_to);
    if available < check_to {
        return Err(Error::InsufficientTruncation {
            needed: check_to,
            available,
        });
    }
    let low = basis
        .iter()
        .map(QSeries::order)
        .chain([target.order()])
        .min()
        .unwrap_or(0)
        .min(0);
    let mut rows = d.max(1);
    loop {
        let hi = (low + rows as i64 - 1).min(check_to);
        let a: Vec<Vec<R::Elem>> = (low..=hi)
            .map(|n| basis.iter().map(|b| b.coeff(n)).collect())
            .collect();
        let b: Vec<R::Elem> = (low..=hi).map(|n| target.coeff(n)).collect();
        let sol = linalg::solve(&ring, a, b)?;
        if !sol.consistent {
            return Err(Error::NotInClass(format!(
                "no combination matches the first {rows} coefficients"
            )));
        }
        if sol.rank == d || hi >= check_to {
            // verify through check_to
            for n in low..=check_to {
                let mut acc = ring.zero();
                for (c, s) in sol.solution.iter().zip(basis) {
                    ring.mul_add_assign(&mut acc, c, &s.coeff(n));
                }
                if acc != target.coeff(n) {
                    return Err(Error::NotInClass(format!(
                        "combination fitted on {rows} coefficients disagrees at q^{n}"
                    )));
                }
            }
            return Ok((sol.solution, rows));
        }
        rows += d.max(1);
    }
}

fn fit_monomials(
    target: &QSeries<Rationals>,
    monomials: Vec<Monomial>,
    max_weight: u32,
    check_to: i64,
) -> Result<QuasimodularFit> {
    if target.order() < 0 {
        return Err(Error::invalid(
            "quasimodular fit needs a target with nonnegative valuation",
        ));
    }
    let basis = monomials
        .iter()
        .map(|m| m.series(check_to))
        .collect::<Result<Vec<_>>>()?;
    let (coeffs, rows_used) = fit_combination(target, &basis, check_to)?;
    let terms = monomials
        .into_iter()
        .zip(coeffs)
        .filter(|(_, c)| !c.is_zero())
        .collect();
    Ok(QuasimodularFit {
        max_weight,
        terms,
        residual_checked_to: check_to,
        rows_used,
    })
}

/// Fits `target` by all monomials `E2^a E4^b E6^c` with `2a + 4b + 6c <= max_weight`.
pub fn quasimodular_fit(
    target: &QSeries<Rationals>,
    max_weight: u32,
    check_to: i64,
) -> Result<QuasimodularFit> {
    quasimodular_fit_with(target, max_weight, true, check_to)
}

/// As [`quasimodular_fit`], optionally restricted to `E2`-free monomials.
pub fn quasimodular_fit_with(
    target: &QSeries<Rationals>,
    max_weight: u32,
    with_e2: bool,
    check_to: i64,
) -> Result<QuasimodularFit> {
    if max_weight % 2 == 1 {
        return Err(Error::invalid("fit weight must be even"));
    }
    fit_monomials(
        target,
        Monomial::up_to_weight(max_weight, with_e2),
        max_weight,
        check_to,
    )
}

/// Fits `target` as a level-1 modular form of weight exactly `weight`.
pub fn modular_fit(
    target: &QSeries<Rationals>,
    weight: u32,
    check_to: i64,
) -> Result<QuasimodularFit> {
    if weight % 2 == 1 {
        return Err(Error::invalid("modular weight must be even"));
    }
    fit_monomials(target, Monomial::of_weight(weight), weight, check_to)
}
