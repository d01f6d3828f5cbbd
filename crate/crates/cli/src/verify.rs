use serde_json::{json, Value};

use quasirank::congruence::{
    dissection_check, root_identity_table, theorem3_part12, theorem3_part3, verify_congruence,
    StreamTarget,
};
use quasirank::moments::{
    crank_moment_recurrence, crank_witness, moment_series, moment_series_fast, pcong_check,
    pde_residual, pk_explicit, pk_from_rank_relation, pk_poly, rank4_display_residual,
    rank_gf_hyper, rank_gf_lambert, rank_witness, rankcrank_residual, vk_identity_holds,
    MomentKind,
};
use quasirank::partitions::count_marked_durfee;
use quasirank::qseries::{partition_series, QSeries};
use quasirank::rings::Integers;

use crate::config::Params;
use crate::{emit, CliError};

const SUITES: &[&str] = &[
    "pde",
    "rankcrank",
    "recurrence",
    "pk",
    "theorem3",
    "dissection",
    "rootidentity",
    "congruences",
    "witness",
];

struct Check {
    suite: &'static str,
    name: String,
    pass: bool,
    detail: Value,
}

impl Check {
    fn new(suite: &'static str, name: impl Into<String>, pass: bool, detail: Value) -> Self {
        Check {
            suite,
            name: name.into(),
            pass,
            detail,
        }
    }

    fn line(&self) -> String {
        json!({ "suite": self.suite, "check": self.name, "pass": self.pass, "detail": self.detail })
            .to_string()
    }
}

type Checks = Vec<Check>;

fn pde(p: &Params) -> Result<Checks, CliError> {
    let trunc = p.trunc.unwrap_or(30);
    let r = pde_residual(trunc)?;
    let mut out = vec![Check::new(
        "pde",
        "residual",
        r.is_zero(),
        json!({ "trunc": trunc }),
    )];
    if p.checked {
        let same = rank_gf_hyper(trunc)? == rank_gf_lambert(trunc)?;
        out.push(Check::new(
            "pde",
            "rank gf hypergeometric = Lambert",
            same,
            json!({ "trunc": trunc }),
        ));
    }
    Ok(out)
}

fn rankcrank(p: &Params) -> Result<Checks, CliError> {
    let trunc = p.trunc.unwrap_or(25);
    let mut out = Vec::new();
    for a in [2u32, 4, 6, 8] {
        let r = rankcrank_residual(a, trunc)?;
        let first = (0..=trunc).find(|&n| !num_traits::Zero::is_zero(&r.coeff(n)));
        out.push(Check::new(
            "rankcrank",
            format!("a={a}"),
            first.is_none(),
            json!({ "trunc": trunc, "first_nonzero": first }),
        ));
    }
    let d = rank4_display_residual(trunc)?;
    out.push(Check::new(
        "rankcrank",
        "order-4 display",
        d.is_zero(),
        json!({ "trunc": trunc }),
    ));
    Ok(out)
}

fn recurrence(p: &Params) -> Result<Checks, CliError> {
    let trunc = p.trunc.unwrap_or(25);
    let mut out = Vec::new();
    for a in [2u32, 4, 6, 8] {
        let rec = crank_moment_recurrence(a, trunc)?;
        let direct = moment_series(MomentKind::Crank, a, trunc)?;
        if p.checked {
            direct.check_oracle(trunc.min(30))?;
        }
        out.push(Check::new(
            "recurrence",
            format!("C{a}"),
            rec == direct.series,
            json!({ "trunc": trunc }),
        ));
    }
    Ok(out)
}

fn pk(_: &Params) -> Result<Checks, CliError> {
    let mut out = Vec::new();
    for k in 1..=10u32 {
        let pass = pk_poly(k) == pk_explicit(k)
            && (k < 2 || pk_poly(k) == pk_from_rank_relation(k))
            && vk_identity_holds(k);
        out.push(Check::new("pk", format!("k={k}"), pass, json!({})));
    }
    for l in [5u64, 7, 11, 13] {
        out.push(Check::new(
            "pk",
            format!("congruence l={l}"),
            pcong_check(l)?,
            json!({}),
        ));
    }
    Ok(out)
}

fn theorem3(p: &Params) -> Result<Checks, CliError> {
    let ell = p.ell.unwrap_or(11);
    let n_max = p.n_max.unwrap_or(8);
    let mut out = Vec::new();
    if ell == 11 {
        for k in 1..=4 {
            let r = theorem3_part12(11, k, &StreamTarget::eleven(k)?, n_max)?;
            out.push(Check::new(
                "theorem3",
                format!("l=11 stream N{}", 2 * k),
                r.holds(),
                serde_json::to_value(&r).expect("report"),
            ));
        }
    }
    let r = theorem3_part3(ell, n_max)?;
    out.push(Check::new(
        "theorem3",
        format!("l={ell} H1/H2"),
        r.holds(),
        r.to_json(),
    ));
    Ok(out)
}

fn dissection(p: &Params) -> Result<Checks, CliError> {
    let k = p.k.unwrap_or(2);
    let n_max = p.n_max.unwrap_or(12);
    let ts: Vec<u64> = match p.t {
        Some(t) => vec![t],
        None => vec![5, 7],
    };
    let mut out = Vec::new();
    for t in ts {
        let r = dissection_check(k, t, n_max)?;
        let detail = json!({ "mismatches": r.mismatches, "enumerated_roots": r.enumerated_roots, "totals_match": r.totals_match });
        out.push(Check::new(
            "dissection",
            format!("k={k} t={t}"),
            r.holds(),
            detail,
        ));
    }
    Ok(out)
}

fn rootidentity(p: &Params) -> Result<Checks, CliError> {
    let ts: Vec<u64> = match p.t {
        Some(t) => vec![t],
        None => vec![5, 7],
    };
    let mut out = Vec::new();
    for t in ts {
        let table = root_identity_table(t)?;
        let admissible: Vec<_> = table.iter().filter(|o| o.admissible()).collect();
        let failing: Vec<_> = admissible
            .iter()
            .filter(|o| !o.vanishes)
            .map(|o| (o.r, o.s, o.d))
            .collect();
        let nontrivial = admissible.iter().filter(|o| o.r != o.s && o.d > 0).count();
        let sine = table.iter().all(|o| o.sine_agrees);
        let detail = json!({
            "admissible": admissible.len(),
            "nontrivial_admissible": nontrivial,
            "failing": failing,
            "vanishing_total": table.iter().filter(|o| o.vanishes).count(),
            "sine_form_agrees": sine,
        });
        out.push(Check::new(
            "rootidentity",
            format!("t={t}"),
            failing.is_empty() && sine,
            detail,
        ));
    }
    Ok(out)
}

fn progression(
    name: &str,
    series: &QSeries<Integers>,
    a: u64,
    b: u64,
    m: u64,
    n_max: u64,
) -> Result<Check, CliError> {
    let r = verify_congruence(name, series, a, b, m, n_max)?;
    Ok(Check::new(
        "congruences",
        format!("{name}({a}n+{b}) mod {m}"),
        r.holds(),
        serde_json::to_value(&r).expect("report"),
    ))
}

fn congruences(p: &Params) -> Result<Checks, CliError> {
    let top = p.n_max.unwrap_or(2000);
    let pser = partition_series(Integers, top as i64);
    let mut out = Vec::new();
    for (a, b) in [(5u64, 4u64), (7, 5), (11, 6)] {
        out.push(progression("p", &pser, a, b, a, (top - b) / a)?);
    }
    let eta = |k: u32, t: i64| moment_series_fast(MomentKind::Symmetrized, k, t).map(|m| m.series);
    out.push(progression("eta2", &eta(2, 3141)?, 1331, 479, 11, 2)?);
    out.push(progression("eta4", &eta(4, 880)?, 11, 0, 11, 80)?);
    out.push(progression("eta6", &eta(6, 999)?, 49, 19, 7, 20)?);
    out.push(progression("eta8", &eta(8, 1007)?, 169, 162, 13, 5)?);

    // Durfee counts: D_2 = eta_2 and D_3 = eta_4 away from n = 0
    let bound = 30u64;
    let d2 = eta(2, bound as i64)?;
    let d3 = eta(4, bound as i64)?;
    if p.checked {
        for n in 1..=20u32 {
            if i64::try_from(&d2.coeff(n as i64)).ok() != Some(count_marked_durfee(2, n)? as i64) {
                return Err(quasirank::Error::OracleMismatch(format!(
                    "D2({n}) disagrees with enumeration"
                ))
                .into());
            }
        }
    }
    let durfee =
        |name: &str, s: &QSeries<Integers>, a: u64, b: u64, m: u64| -> Result<Check, CliError> {
            let n_max = (bound - b) / a;
            progression(name, s, a, b, m, n_max)
        };
    for (b, m) in [(1u64, 5u64), (4, 5)] {
        out.push(durfee("D2", &d2, 5, b, m)?);
    }
    for b in [1u64, 5] {
        out.push(durfee("D3", &d3, 7, b, 7)?);
    }
    Ok(out)
}

/// The reading of D_2(7n + a) under both moduli; informational, never fails the run.
fn durfee_ambiguous() -> Result<Value, CliError> {
    let d2 = moment_series_fast(MomentKind::Symmetrized, 2, 30)?.series;
    let mut v = serde_json::Map::new();
    for m in [5u64, 7] {
        for b in [1u64, 5] {
            let r = verify_congruence("D2", &d2, 7, b, m, (30 - b) / 7)?;
            v.insert(format!("D2(7n+{b}) mod {m}"), json!(r.holds()));
        }
    }
    Ok(Value::Object(v))
}

fn witness(_: &Params) -> Result<Checks, CliError> {
    let mut out = Vec::new();
    for k in 1..=4u32 {
        let fit = crank_witness(k);
        let pass = fit.as_ref().is_ok_and(|f| f.is_integral_at(11));
        let detail = fit
            .map(|f| f.to_json())
            .unwrap_or_else(|e| json!({ "error": e.to_string() }));
        out.push(Check::new("witness", format!("C{}/P", 2 * k), pass, detail));
    }
    for k in 2..=4u32 {
        let fit = rank_witness(k);
        let pass = fit.as_ref().is_ok_and(|f| f.is_integral_at(11));
        let detail = fit
            .map(|f| f.to_json())
            .unwrap_or_else(|e| json!({ "error": e.to_string() }));
        out.push(Check::new(
            "witness",
            format!("(N{} - P{k}(delta) N2)/P", 2 * k),
            pass,
            detail,
        ));
    }
    Ok(out)
}

fn suite(name: &str, p: &Params) -> Result<Checks, CliError> {
    match name {
        "pde" => pde(p),
        "rankcrank" => rankcrank(p),
        "recurrence" => recurrence(p),
        "pk" => pk(p),
        "theorem3" => theorem3(p),
        "dissection" => dissection(p),
        "rootidentity" => rootidentity(p),
        "congruences" => congruences(p),
        "witness" => witness(p),
        other => Err(CliError::Config(format!(
            "unknown suite `{other}`; expected one of {} or all",
            SUITES.join(", ")
        ))),
    }
}

/// Runs a suite, writes one JSON line per check, and returns whether every check passed.
pub fn run(name: &str, p: &Params) -> Result<bool, CliError> {
    let names: Vec<&str> = if name == "all" {
        SUITES.to_vec()
    } else {
        vec![name]
    };
    let mut checks = Vec::new();
    for n in &names {
        if *n != "all" && !SUITES.contains(n) {
            return Err(CliError::Config(format!(
                "unknown suite `{n}`; expected one of {} or all",
                SUITES.join(", ")
            )));
        }
    }
    for n in names {
        checks.extend(suite(n, p)?);
    }
    let mut body: String = checks.iter().map(|c| c.line() + "\n").collect();
    if name == "congruences" || name == "all" {
        body += &(json!({ "suite": "congruences", "note": "open reading of D2(7n+a)", "outcome": durfee_ambiguous()? }).to_string() + "\n");
    }
    emit(p, &body)?;
    let failed: Vec<&Check> = checks.iter().filter(|c| !c.pass).collect();
    if let Some(first) = failed.first() {
        eprintln!("FAIL {} / {}: {}", first.suite, first.name, first.detail);
    }
    eprintln!("{} checks, {} failed", checks.len(), failed.len());
    Ok(failed.is_empty())
}
