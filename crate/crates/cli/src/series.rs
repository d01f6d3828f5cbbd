use quasirank::moments::{
    moment_series_fast, solve_r2k, t2_series, twisted_moment_series, twisted_r2, y_series,
    MomentKind, MomentSeries, TwistedKind,
};
use quasirank::rings::{Rationals, Residues, Ring};

use crate::config::{Format, Params};
use crate::{emit, format_or, CliError};

/// Enumeration cross-check depth under `--checked`.
const ORACLE_DEPTH: i64 = 40;

/// Text form plus sidecar metadata of a built series.
pub struct Built {
    pub text: String,
    pub meta: serde_json::Value,
}

fn finish<R: Ring>(m: &MomentSeries<R>, modulus: Option<u64>) -> Result<Built, CliError> {
    let Some(md) = modulus else {
        return Ok(Built {
            text: m.to_text(),
            meta: m.sidecar(),
        });
    };
    let ring = Residues::new(md)?;
    let src = m.series.ring().clone();
    let reduced = m.series.map_ring(ring, |c| {
        let q = src.to_rational(c).ok_or_else(|| {
            quasirank::Error::InvalidArgument("only rational series can be reduced".into())
        })?;
        ring.from_rational(&q)
    })?;
    let out = MomentSeries::new(m.id.clone(), reduced);
    Ok(Built {
        text: out.to_text(),
        meta: out.sidecar(),
    })
}

fn plain(kind: MomentKind, order: u32, p: &Params, trunc: i64) -> Result<Built, CliError> {
    let m = moment_series_fast(kind, order, trunc)?;
    if p.checked {
        m.check_oracle(ORACLE_DEPTH)?;
    }
    finish(&m, p.modulus)
}

pub fn build(kind: &str, p: &Params) -> Result<Built, CliError> {
    let trunc = Params::require(p.trunc, "trunc")?;
    let j = || Params::require(p.j, "j");
    let k = || Params::require(p.k, "k");
    let ac = || Ok::<_, CliError>((Params::require(p.a, "a")?, Params::require(p.c, "c")?));
    match kind {
        "crank" => plain(MomentKind::Crank, j()?, p, trunc),
        "rank" => plain(MomentKind::Rank, j()?, p, trunc),
        "eta" => plain(MomentKind::Symmetrized, k()?, p, trunc),
        "y" => finish(&y_series(k()?, trunc)?, p.modulus),
        "r2k" => {
            let m = solve_r2k(k()?, trunc)?;
            if p.checked {
                let direct = moment_series_fast(MomentKind::Rank, 2 * k()?, trunc)?;
                let lifted = direct
                    .series
                    .map_ring(Rationals, |c| Ok(Rationals.from_int(c)))?;
                if lifted != m.series {
                    return Err(quasirank::Error::OracleMismatch(
                        "solved rank moment differs from the Lambert path".into(),
                    )
                    .into());
                }
            }
            finish(&m, p.modulus)
        }
        "twisted-rank" | "twisted-crank" => {
            let tk = if kind == "twisted-rank" {
                TwistedKind::Rank
            } else {
                TwistedKind::Crank
            };
            let (a, c) = ac()?;
            if p.modulus.is_some() {
                return Err(CliError::Config(
                    "cyclotomic series cannot be reduced with --modulus".into(),
                ));
            }
            finish(&twisted_moment_series(tk, j()?, a, c, trunc)?, None)
        }
        "twisted-r2" => {
            let (a, c) = ac()?;
            if p.modulus.is_some() {
                return Err(CliError::Config(
                    "cyclotomic series cannot be reduced with --modulus".into(),
                ));
            }
            finish(&twisted_r2(a, c, trunc)?, None)
        }
        "t2" => {
            let (a, c) = ac()?;
            finish(&t2_series(a, c, trunc)?, p.modulus)
        }
        other => Err(CliError::Config(format!("unknown series kind `{other}`"))),
    }
}

pub fn run(kind: &str, p: &Params) -> Result<(), CliError> {
    let built = build(kind, p)?;
    match format_or(p, Format::SeriesText) {
        Format::SeriesText => {
            if let Some(path) = &p.output {
                let side = path.with_extension("json");
                let meta = serde_json::to_string_pretty(&built.meta).expect("json value") + "\n";
                std::fs::write(&side, meta)
                    .map_err(|e| CliError::Config(format!("{}: {e}", side.display())))?;
            }
            emit(p, &built.text)
        }
        Format::Json => {
            let v = serde_json::json!({ "meta": built.meta, "series": built.text });
            emit(
                p,
                &(serde_json::to_string_pretty(&v).expect("json value") + "\n"),
            )
        }
        Format::Csv => Err(CliError::Config(
            "series are written as series-text or json".into(),
        )),
    }
}
