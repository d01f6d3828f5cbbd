use num_bigint::BigInt;
use num_traits::Zero;
use quasirank::moments::{crank_gf, moment_series_fast, rank_gf_lambert, MomentKind};
use quasirank::partitions::{
    count_partitions, distribution_table, durfee_count_table, full_rank_residue_table,
    full_rank_table, StatTable, Statistic,
};
use quasirank::qseries::{partition_series, QSeries, WQSeries};
use quasirank::rings::Integers;
use quasirank::Error;

use crate::config::{Format, Params};
use crate::{emit, format_or, CliError};

/// Marked Durfee symbols are only enumerated; past this size the walk is too slow to be useful.
const DURFEE_LIMIT: u64 = 40;

fn small(c: &BigInt, what: &str) -> Result<i64, CliError> {
    i64::try_from(c)
        .map_err(|_| CliError::Config(format!("{what} overflows a 64-bit count; lower --n-max")))
}

fn series_table(label: &str, s: &QSeries<Integers>, n_max: u64) -> Result<StatTable, CliError> {
    let mut t = StatTable::new(label);
    for n in 0..=n_max {
        t.insert(n as u32, 0, small(&s.coeff(n as i64), label)?);
    }
    Ok(t)
}

fn bivariate_table(label: &str, w: &WQSeries<Integers>, n_max: u64) -> Result<StatTable, CliError> {
    let mut t = StatTable::new(label);
    for n in 1..=n_max {
        for (m, c) in w.row(n as usize).iter().filter(|(_, c)| !c.is_zero()) {
            t.insert(n as u32, m, small(c, label)?);
        }
    }
    Ok(t)
}

fn check_equal(got: &StatTable, want: &StatTable, n_from: u64, n_max: u64) -> Result<(), CliError> {
    for n in n_from..=n_max {
        if got.row(n as u32) != want.row(n as u32) {
            return Err(Error::OracleMismatch(format!(
                "{} row n={n} disagrees with enumeration",
                got.label()
            ))
            .into());
        }
    }
    Ok(())
}

fn moment_table(
    kind: MomentKind,
    order: u32,
    label: &str,
    n_max: u64,
    checked: bool,
) -> Result<StatTable, CliError> {
    let m = moment_series_fast(kind, order, n_max as i64)?;
    if checked {
        m.check_oracle(n_max as i64)?;
    }
    series_table(label, &m.series, n_max)
}

pub fn build(stat: &str, p: &Params) -> Result<StatTable, CliError> {
    let n_max = Params::require(p.n_max, "n-max")?;
    let need_k = || Params::require(p.k, "k");
    let table = match stat {
        "p" => {
            let t = series_table("p", &partition_series(Integers, n_max as i64), n_max)?;
            if p.checked {
                for n in 0..=n_max {
                    if t.get(n as u32, 0) as u64 != count_partitions(n as u32) {
                        return Err(Error::OracleMismatch(format!(
                            "p({n}) disagrees with enumeration"
                        ))
                        .into());
                    }
                }
            }
            t
        }
        "N" | "rank" => {
            let t = bivariate_table("N", &rank_gf_lambert(n_max as i64)?, n_max)?;
            if p.checked {
                check_equal(
                    &t,
                    &distribution_table(Statistic::Rank, n_max as u32),
                    1,
                    n_max,
                )?;
            }
            t
        }
        "M" | "crank" => {
            let t = bivariate_table("M", &crank_gf(n_max as i64)?, n_max)?;
            if p.checked {
                check_equal(
                    &t,
                    &distribution_table(Statistic::Crank, n_max as u32),
                    1,
                    n_max,
                )?;
            }
            t
        }
        "Nj" | "rank-moment" => {
            let j = Params::require(p.j, "j")?;
            moment_table(MomentKind::Rank, j, &format!("N{j}"), n_max, p.checked)?
        }
        "Mj" | "crank-moment" => {
            let j = Params::require(p.j, "j")?;
            moment_table(MomentKind::Crank, j, &format!("M{j}"), n_max, p.checked)?
        }
        "eta" => {
            let k = need_k()?;
            moment_table(
                MomentKind::Symmetrized,
                k,
                &format!("eta{k}"),
                n_max,
                p.checked,
            )?
        }
        "D" => {
            let k = need_k()?;
            if k == 0 {
                return Err(CliError::Config("k must be at least 1".into()));
            }
            let series = if k == 1 {
                partition_series(Integers, n_max as i64)
            } else {
                moment_series_fast(MomentKind::Symmetrized, 2 * k - 2, n_max as i64)?.series
            };
            let mut t = StatTable::new(&format!("D{k}"));
            for n in 1..=n_max {
                t.insert(n as u32, 0, small(&series.coeff(n as i64), "D")?);
            }
            if p.checked {
                if n_max > DURFEE_LIMIT {
                    return Err(CliError::Config(format!(
                        "--checked enumerates Durfee symbols; n-max must be <= {DURFEE_LIMIT}"
                    )));
                }
                check_equal(&t, &durfee_count_table(k, n_max as u32)?, 1, n_max)?;
            }
            t
        }
        "NF" => {
            let k = need_k()?;
            if n_max > DURFEE_LIMIT {
                return Err(CliError::Config(format!(
                    "NF is enumerated; n-max must be <= {DURFEE_LIMIT}"
                )));
            }
            match p.t {
                Some(t) => full_rank_residue_table(k, t, n_max as u32)?,
                None => full_rank_table(k, n_max as u32)?,
            }
        }
        other => return Err(CliError::Config(format!("unknown statistic `{other}`"))),
    };
    Ok(table)
}

pub fn run(stat: &str, p: &Params) -> Result<(), CliError> {
    let table = build(stat, p)?;
    let body = match format_or(p, Format::Csv) {
        Format::Csv => table.to_csv(),
        Format::Json => table.to_json() + "\n",
        Format::SeriesText => {
            return Err(CliError::Config("tables are written as csv or json".into()))
        }
    };
    emit(p, &body)
}
