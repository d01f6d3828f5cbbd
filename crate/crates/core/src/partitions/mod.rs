//! Brute-force enumeration oracles for partition statistics.
//!
//! Everything here works by listing objects one at a time. The generating
//! functions in [`crate::moments`] are checked against these counts.

mod durfee;
mod table;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::rings::{binomial, CycElement, Cyclotomic, Integers, Ring};

pub use durfee::{
    count_marked_durfee, durfee_count_table, for_each_marked_durfee, full_rank_distribution,
    full_rank_residue_table, full_rank_residues, full_rank_table, marked_durfee_gf_oracle,
    marked_durfee_symbols, rank_vector_counts, MarkedDurfeeSymbol,
};
pub use table::{StatRow, StatTable};

/// A partition as its non-increasing list of parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::invalid("partition parts must be positive"));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn size(&self) -> u64 {
        self.parts.iter().map(|&p| p as u64).sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Dyson's rank: largest part minus number of parts.
    pub fn rank(&self) -> Result<i64> {
        rank_of(&self.parts)
    }

    /// The Andrews-Garvan crank.
    pub fn crank(&self) -> Result<i64> {
        crank_of(&self.parts)
    }
}

pub fn rank_of(parts: &[u32]) -> Result<i64> {
    match parts.first() {
        None => Err(Error::invalid("rank of the empty partition")),
        Some(&l) => Ok(l as i64 - parts.len() as i64),
    }
}

/// With `w` ones and `mu` parts larger than `w`: the largest part if `w = 0`, else `mu - w`.
pub fn crank_of(parts: &[u32]) -> Result<i64> {
    let Some(&largest) = parts.first() else {
        return Err(Error::invalid("crank of the empty partition"));
    };
    let ones = parts.iter().rev().take_while(|&&p| p == 1).count() as i64;
    if ones == 0 {
        return Ok(largest as i64);
    }
    let mu = parts.iter().take_while(|&&p| p as i64 > ones).count() as i64;
    Ok(mu - ones)
}

/// Partitions of `n` in reverse lexicographic order, starting from `[n]`.
pub struct Partitions {
    current: Option<Vec<u32>>,
}

pub fn partitions(n: u32) -> Partitions {
    Partitions {
        current: Some(if n == 0 { Vec::new() } else { vec![n] }),
    }
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let cur = self.current.take()?;
        // successor: lower the rightmost part > 1 and refill greedily
        let mut next = cur.clone();
        let mut freed: u32 = 0;
        while next.last() == Some(&1) {
            next.pop();
            freed += 1;
        }
        if let Some(last) = next.last_mut() {
            *last -= 1;
            let cap = *last;
            freed += 1;
            while freed > 0 {
                let p = freed.min(cap);
                next.push(p);
                freed -= p;
            }
            self.current = Some(next);
        }
        Some(Partition { parts: cur })
    }
}

/// Calls `f` on every partition of `n` without allocating per partition.
pub fn for_each_partition(n: u32, mut f: impl FnMut(&[u32])) {
    fn go(rem: u32, cap: u32, buf: &mut Vec<u32>, f: &mut dyn FnMut(&[u32])) {
        if rem == 0 {
            f(buf);
            return;
        }
        for p in (1..=cap.min(rem)).rev() {
            buf.push(p);
            go(rem - p, p, buf, f);
            buf.pop();
        }
    }
    let mut buf = Vec::new();
    go(n, n, &mut buf, &mut f);
}

/// `p(n)` by enumeration.
pub fn count_partitions(n: u32) -> u64 {
    let mut c = 0;
    for_each_partition(n, |_| c += 1);
    c
}

/// Distribution `m -> N(m, n)` of the rank over partitions of `n >= 1`.
pub fn rank_distribution(n: u32) -> BTreeMap<i64, i64> {
    let mut out = BTreeMap::new();
    if n == 0 {
        return out;
    }
    for_each_partition(n, |p| {
        *out.entry(rank_of(p).expect("nonempty")).or_insert(0) += 1
    });
    out
}

/// Distribution `m -> M(m, n)`; for `n = 1` the conventional values
/// `M(0,1) = -1`, `M(+-1,1) = 1` replace the enumeration.
pub fn crank_distribution(n: u32) -> BTreeMap<i64, i64> {
    let mut out = BTreeMap::new();
    match n {
        0 => {}
        1 => {
            out.insert(-1, 1);
            out.insert(0, -1);
            out.insert(1, 1);
        }
        _ => for_each_partition(n, |p| {
            *out.entry(crank_of(p).expect("nonempty")).or_insert(0) += 1
        }),
    }
    out
}

/// `N(m, n)`.
pub fn count_rank(m: i64, n: u32) -> i64 {
    rank_distribution(n).get(&m).copied().unwrap_or(0)
}

/// `M(m, n)`.
pub fn count_crank(m: i64, n: u32) -> i64 {
    crank_distribution(n).get(&m).copied().unwrap_or(0)
}

/// Which distribution a moment is taken over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Statistic {
    Rank,
    Crank,
}

impl Statistic {
    pub fn distribution(self, n: u32) -> BTreeMap<i64, i64> {
        match self {
            Statistic::Rank => rank_distribution(n),
            Statistic::Crank => crank_distribution(n),
        }
    }
}

fn weighted(dist: &BTreeMap<i64, i64>, w: impl Fn(i64) -> BigInt) -> BigInt {
    dist.iter().map(|(&m, &c)| w(m) * c).sum()
}

/// `N_j(n) = sum m^j N(m, n)`.
pub fn rank_moment(j: u32, n: u32) -> BigInt {
    weighted(&rank_distribution(n), |m| BigInt::from(m).pow(j))
}

/// `M_j(n) = sum m^j M(m, n)`.
pub fn crank_moment(j: u32, n: u32) -> BigInt {
    weighted(&crank_distribution(n), |m| BigInt::from(m).pow(j))
}

/// The symmetrized moment `eta_k(n) = sum C(m + floor((k-1)/2), k) N(m, n)`.
pub fn eta_moment(k: u32, n: u32) -> BigInt {
    let shift = (k as i64 - 1).div_euclid(2);
    weighted(&rank_distribution(n), |m| binomial(m + shift, k))
}

/// `sum_m m^j zeta_c^(a m) S(m, n)` in `Z[zeta_c]`, for the rank or crank.
pub fn twisted_moment(
    stat: Statistic,
    j: u32,
    a: i64,
    c: u64,
    n: u32,
) -> Result<CycElement<BigInt>> {
    let ring = Cyclotomic::new(c, Integers)?;
    let mut acc = ring.zero();
    for (m, count) in stat.distribution(n) {
        let w = BigInt::from(m).pow(j) * count;
        acc = ring.add(&acc, &ring.mul(&ring.from_int(&w), &ring.root_power(a * m)));
    }
    Ok(acc)
}

/// `p(n)` for `0 <= n <= n_max`, `N(m,n)` or `M(m,n)` for `1 <= n <= n_max`, in parallel.
pub fn distribution_table(stat: Statistic, n_max: u32) -> StatTable {
    let name = match stat {
        Statistic::Rank => "N",
        Statistic::Crank => "M",
    };
    let rows: Vec<(u32, BTreeMap<i64, i64>)> = (1..=n_max)
        .into_par_iter()
        .map(|n| (n, stat.distribution(n)))
        .collect();
    let mut table = StatTable::new(name);
    for (n, dist) in rows {
        for (m, c) in dist {
            table.insert(n, m, c);
        }
    }
    table
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parts(v: &[u32]) -> Vec<u32> {
        v.to_vec()
    }

    #[test]
    fn partition_counts() {
        assert_eq!(partitions(0).count(), 1);
        assert_eq!(partitions(4).count(), 5);
        assert_eq!(partitions(5).count(), 7);
        let listed: Vec<Vec<u32>> = partitions(4).map(|p| p.parts().to_vec()).collect();
        assert_eq!(
            listed,
            vec![
                parts(&[4]),
                parts(&[3, 1]),
                parts(&[2, 2]),
                parts(&[2, 1, 1]),
                parts(&[1, 1, 1, 1])
            ]
        );
        for n in 0..15 {
            assert_eq!(partitions(n).count() as u64, count_partitions(n));
        }
        assert_eq!(count_partitions(10), 42);
    }

    #[test]
    fn rank_and_crank() {
        assert_eq!(rank_of(&[3, 1]).unwrap(), 1);
        assert_eq!(crank_of(&[2, 1, 1]).unwrap(), -2);
        assert_eq!(crank_of(&[4]).unwrap(), 4);
        assert_eq!(crank_of(&[3, 1]).unwrap(), 0);
        assert!(rank_of(&[]).is_err());
        assert!(crank_of(&[]).is_err());
    }

    #[test]
    fn rank_distribution_of_four() {
        let d = rank_distribution(4);
        let expected: BTreeMap<i64, i64> = [(-3, 1), (-1, 1), (0, 1), (1, 1), (3, 1)].into();
        assert_eq!(d, expected);
        let c = crank_distribution(4);
        let expected: BTreeMap<i64, i64> = [(-4, 1), (-2, 1), (0, 1), (2, 1), (4, 1)].into();
        assert_eq!(c, expected);
        assert_eq!(count_crank(0, 1), -1);
        assert_eq!(count_crank(1, 1), 1);
        assert_eq!(count_crank(-1, 1), 1);
    }

    #[test]
    fn moments_of_four() {
        assert_eq!(rank_moment(2, 4), BigInt::from(20));
        assert_eq!(eta_moment(2, 4), BigInt::from(10));
        assert_eq!(crank_moment(2, 4), BigInt::from(40));
        assert_eq!(rank_moment(2, 6), BigInt::from(80));
    }

    #[test]
    fn symmetry_and_totals() {
        for n in 1..=30 {
            let p = count_partitions(n) as i64;
            let r = rank_distribution(n);
            let c = crank_distribution(n);
            assert_eq!(r.values().sum::<i64>(), p);
            assert_eq!(c.values().sum::<i64>(), p);
            assert!(r.iter().all(|(m, v)| r.get(&-m) == Some(v)));
            assert!(c.iter().all(|(m, v)| c.get(&-m) == Some(v)));
            assert_eq!(crank_moment(3, n), BigInt::from(0));
        }
        for n in 1..=20 {
            assert_eq!(eta_moment(3, n), BigInt::from(0));
        }
    }

    #[test]
    fn twisted_rank_at_minus_one() {
        let v = twisted_moment(Statistic::Rank, 0, 1, 2, 4).unwrap();
        assert_eq!(v.coeffs, vec![BigInt::from(-3)]);
        let ring = Cyclotomic::new(5, Integers).unwrap();
        let x = twisted_moment(Statistic::Rank, 2, 1, 5, 9).unwrap();
        assert_eq!(ring.conjugate(&x), x);
    }
}
