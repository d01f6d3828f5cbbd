use std::collections::BTreeMap;

use rayon::prelude::*;

use super::table::StatTable;
use crate::error::{Error, Result};
use crate::qseries::QSeries;
use crate::rings::Ring;

/// A `k`-marked Durfee symbol: two rows of colored parts around a Durfee square of side `side`.
///
/// Colors run `1..=marks`. Rows are read left to right with values and colors both non-increasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MarkedDurfeeSymbol {
    pub top: Vec<(u32, u32)>,
    pub bottom: Vec<(u32, u32)>,
    pub side: u32,
    pub marks: u32,
}

impl MarkedDurfeeSymbol {
    pub fn size(&self) -> u64 {
        let row = |r: &[(u32, u32)]| r.iter().map(|&(v, _)| v as u64).sum::<u64>();
        row(&self.top) + row(&self.bottom) + (self.side as u64).pow(2)
    }

    /// Largest top-row part of color `i`, if any.
    pub fn top_max(&self, i: u32) -> Option<u32> {
        self.top
            .iter()
            .filter(|&&(_, c)| c == i)
            .map(|&(v, _)| v)
            .max()
    }

    /// Number of top-row parts of color `i`.
    pub fn tau(&self, i: u32) -> i64 {
        self.top.iter().filter(|&&(_, c)| c == i).count() as i64
    }

    /// Number of bottom-row parts of color `i`.
    pub fn beta(&self, i: u32) -> i64 {
        self.bottom.iter().filter(|&&(_, c)| c == i).count() as i64
    }

    /// `rho_i = tau_i - beta_i - 1` for `i < k` and `tau_k - beta_k`.
    pub fn ranks(&self) -> Vec<i64> {
        (1..=self.marks)
            .map(|i| {
                let d = self.tau(i) - self.beta(i);
                if i < self.marks {
                    d - 1
                } else {
                    d
                }
            })
            .collect()
    }

    /// The full rank `sum i * rho_i`.
    pub fn full_rank(&self) -> i64 {
        self.ranks().iter().zip(1..).map(|(r, i)| r * i).sum()
    }

    pub fn check(&self) -> Result<()> {
        let k = self.marks;
        let s = self.side;
        if k == 0 || s == 0 {
            return Err(Error::invalid("marks and side must be positive"));
        }
        for row in [&self.top, &self.bottom] {
            for &(v, c) in row.iter() {
                if v == 0 || v > s || c == 0 || c > k {
                    return Err(Error::invalid(format!("part {v}_{c} out of range")));
                }
            }
            for w in row.windows(2) {
                if w[1].0 > w[0].0 || w[1].1 > w[0].1 {
                    return Err(Error::invalid("row is not non-increasing"));
                }
            }
        }
        let mut bounds = vec![1u32];
        for i in 1..k {
            match self.top_max(i) {
                Some(m) => bounds.push(m),
                None => {
                    return Err(Error::invalid(format!(
                        "color {i} missing from the top row"
                    )))
                }
            }
        }
        bounds.push(s);
        for &(v, c) in &self.bottom {
            let (lo, hi) = (bounds[c as usize - 1], bounds[c as usize]);
            if v < lo || v > hi {
                return Err(Error::invalid(format!(
                    "bottom part {v}_{c} outside [{lo}, {hi}]"
                )));
            }
        }
        Ok(())
    }
}

struct Walker<'a, F> {
    k: u32,
    side: u32,
    top: Vec<(u32, u32)>,
    bottom: Vec<(u32, u32)>,
    // bounds[i] = M_i with M_0 = 1 and M_k = S
    bounds: Vec<u32>,
    f: &'a mut F,
}

impl<F: FnMut(&MarkedDurfeeSymbol)> Walker<'_, F> {
    fn top_block(&mut self, color: u32, cap: u32, rem: u32, in_block: u32) {
        let may_close = color == self.k || in_block > 0;
        if may_close {
            if color > 1 {
                self.top_block(color - 1, cap, rem, 0);
            } else {
                self.start_bottom(rem);
            }
        }
        for v in (1..=cap.min(rem)).rev() {
            self.top.push((v, color));
            self.top_block(color, v, rem - v, in_block + 1);
            self.top.pop();
        }
    }

    fn start_bottom(&mut self, rem: u32) {
        let k = self.k as usize;
        self.bounds.clear();
        self.bounds.resize(k + 1, 0);
        self.bounds[0] = 1;
        self.bounds[k] = self.side;
        for &(v, c) in &self.top {
            if (c as usize) < k && self.bounds[c as usize] < v {
                self.bounds[c as usize] = v;
            }
        }
        self.bottom_block(self.k, self.side, rem);
    }

    fn bottom_block(&mut self, color: u32, cap: u32, rem: u32) {
        if color == 0 {
            if rem == 0 {
                let sym = MarkedDurfeeSymbol {
                    top: self.top.clone(),
                    bottom: self.bottom.clone(),
                    side: self.side,
                    marks: self.k,
                };
                (self.f)(&sym);
            }
            return;
        }
        let lo = self.bounds[color as usize - 1];
        let hi = self.bounds[color as usize].min(cap);
        self.bottom_block(color - 1, cap, rem);
        for v in (lo..=hi.min(rem)).rev() {
            self.bottom.push((v, color));
            // staying in this color keeps the same lower bound
            self.bottom_same(color, v, rem - v);
            self.bottom.pop();
        }
    }

    fn bottom_same(&mut self, color: u32, cap: u32, rem: u32) {
        self.bottom_block(color - 1, cap, rem);
        let lo = self.bounds[color as usize - 1];
        for v in (lo..=cap.min(rem)).rev() {
            self.bottom.push((v, color));
            self.bottom_same(color, v, rem - v);
            self.bottom.pop();
        }
    }
}

/// Visits every `k`-marked Durfee symbol of size `n` exactly once.
pub fn for_each_marked_durfee<F: FnMut(&MarkedDurfeeSymbol)>(
    k: u32,
    n: u32,
    mut f: F,
) -> Result<()> {
    if k == 0 {
        return Err(Error::invalid("marked Durfee symbols need k >= 1"));
    }
    let mut side = 1;
    while side * side <= n {
        let mut w = Walker {
            k,
            side,
            top: Vec::new(),
            bottom: Vec::new(),
            bounds: Vec::new(),
            f: &mut f,
        };
        w.top_block(k, side, n - side * side, 0);
        side += 1;
    }
    Ok(())
}

pub fn marked_durfee_symbols(k: u32, n: u32) -> Result<Vec<MarkedDurfeeSymbol>> {
    let mut out = Vec::new();
    for_each_marked_durfee(k, n, |s| out.push(s.clone()))?;
    Ok(out)
}

/// `D_k(n)`.
pub fn count_marked_durfee(k: u32, n: u32) -> Result<u64> {
    let mut c = 0;
    for_each_marked_durfee(k, n, |_| c += 1)?;
    Ok(c)
}

/// Distribution `m -> NF_k(m, n)` of the full rank.
pub fn full_rank_distribution(k: u32, n: u32) -> Result<BTreeMap<i64, i64>> {
    let mut out = BTreeMap::new();
    for_each_marked_durfee(k, n, |s| *out.entry(s.full_rank()).or_insert(0) += 1)?;
    Ok(out)
}

/// `NF_k(r, t; n)`: symbols whose full rank is `r` modulo `t`.
pub fn full_rank_residues(k: u32, t: u64, n: u32) -> Result<Vec<i64>> {
    if t == 0 {
        return Err(Error::invalid("modulus must be positive"));
    }
    let mut out = vec![0i64; t as usize];
    for (m, c) in full_rank_distribution(k, n)? {
        out[m.rem_euclid(t as i64) as usize] += c;
    }
    Ok(out)
}

/// Counts of the rank vectors `(rho_1, ..., rho_k)` over symbols of size `n`.
pub fn rank_vector_counts(k: u32, n: u32) -> Result<BTreeMap<Vec<i64>, i64>> {
    let mut out = BTreeMap::new();
    for_each_marked_durfee(k, n, |s| *out.entry(s.ranks()).or_insert(0) += 1)?;
    Ok(out)
}

/// `sum_{n=1}^{n_max} sum_symbols prod x_i^rho_i q^n` by enumeration; `k` is the number of points.
pub fn marked_durfee_gf_oracle<R: Ring>(
    ring: &R,
    points: &[R::Elem],
    n_max: i64,
) -> Result<QSeries<R>> {
    let k = points.len() as u32;
    let mut coeffs = vec![ring.zero(); (n_max + 1).max(0) as usize];
    for n in 1..=n_max {
        let mut acc = ring.zero();
        for (ranks, count) in rank_vector_counts(k, n as u32)? {
            let mut term = ring.from_i64(count);
            for (x, &r) in points.iter().zip(&ranks) {
                term = ring.mul(&term, &ring.pow_i64(x, r)?);
            }
            acc = ring.add(&acc, &term);
        }
        coeffs[n as usize] = acc;
    }
    Ok(QSeries::new(ring.clone(), 0, coeffs, n_max))
}

/// `D_k(n)` for `1 <= n <= n_max`, one row per `n` with `m = 0`.
pub fn durfee_count_table(k: u32, n_max: u32) -> Result<StatTable> {
    let rows: Result<Vec<(u32, u64)>> = (1..=n_max)
        .into_par_iter()
        .map(|n| Ok((n, count_marked_durfee(k, n)?)))
        .collect();
    let mut table = StatTable::new(&format!("D{k}"));
    for (n, c) in rows? {
        table.insert(n, 0, c as i64);
    }
    Ok(table)
}

/// `NF_k(m, n)` for `1 <= n <= n_max`.
pub fn full_rank_table(k: u32, n_max: u32) -> Result<StatTable> {
    let rows: Result<Vec<(u32, BTreeMap<i64, i64>)>> = (1..=n_max)
        .into_par_iter()
        .map(|n| Ok((n, full_rank_distribution(k, n)?)))
        .collect();
    let mut table = StatTable::new(&format!("NF{k}"));
    for (n, dist) in rows? {
        for (m, c) in dist {
            table.insert(n, m, c);
        }
    }
    Ok(table)
}

/// `NF_k(r, t; n)` for `1 <= n <= n_max`, keyed by residue `r` in `0..t`.
pub fn full_rank_residue_table(k: u32, t: u64, n_max: u32) -> Result<StatTable> {
    let rows: Result<Vec<(u32, Vec<i64>)>> = (1..=n_max)
        .into_par_iter()
        .map(|n| Ok((n, full_rank_residues(k, t, n)?)))
        .collect();
    let mut table = StatTable::with_modulus(&format!("NF{k}"), t);
    for (n, counts) in rows? {
        for (r, c) in counts.into_iter().enumerate() {
            table.insert(n, r as i64, c);
        }
    }
    Ok(table)
}
