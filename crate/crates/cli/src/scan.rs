use quasirank::congruence::{default_scan_moduli, scan_congruences};
use quasirank::moments::{moment_series_fast, MomentKind};
use quasirank::qseries::{partition_series, QSeries};
use quasirank::rings::{is_prime, Integers};

use crate::config::Params;
use crate::{emit, CliError};

/// Progressions need this many checked terms before they are reported.
const MIN_POINTS: u64 = 3;

fn parse_stat(stat: &str) -> Result<(MomentKind, u32), CliError> {
    let bad = || CliError::Config(format!("unknown statistic `{stat}`; use p, etaK, NJ or MJ"));
    let (kind, rest) = if let Some(r) = stat.strip_prefix("eta") {
        (MomentKind::Symmetrized, r)
    } else if let Some(r) = stat.strip_prefix('N') {
        (MomentKind::Rank, r)
    } else if let Some(r) = stat.strip_prefix('M') {
        (MomentKind::Crank, r)
    } else {
        return Err(bad());
    };
    Ok((kind, rest.parse().map_err(|_| bad())?))
}

pub fn series_for(stat: &str, trunc: i64) -> Result<QSeries<Integers>, CliError> {
    if stat == "p" {
        return Ok(partition_series(Integers, trunc));
    }
    let (kind, order) = parse_stat(stat)?;
    Ok(moment_series_fast(kind, order, trunc)?.series)
}

pub fn run(stat: &str, p: &Params) -> Result<(), CliError> {
    let ell = Params::require(p.ell, "ell")?;
    if ell < 5 || !is_prime(ell) {
        return Err(CliError::Config(format!(
            "ell must be a prime >= 5, got {ell}"
        )));
    }
    let j = p.j.unwrap_or(1);
    let moduli = p
        .moduli
        .clone()
        .unwrap_or_else(|| default_scan_moduli(ell, &[]));
    let top = *moduli.iter().max().expect("validated nonempty");
    // enough for MIN_POINTS terms on every residue class of the largest modulus
    let trunc = p.trunc.unwrap_or((MIN_POINTS * top) as i64 - 1);
    let n_max = p.n_max.unwrap_or(u64::MAX);
    let series = series_for(stat, trunc)?;
    let found = scan_congruences(stat, &series, ell, j, &moduli, n_max, MIN_POINTS);
    let body: String = found.iter().map(|r| r.to_json_line() + "\n").collect();
    eprintln!(
        "{} candidate progressions (evidence on the checked range only)",
        found.len()
    );
    emit(p, &body)
}
