//! Acceptance run: one line per criterion, then a nonzero exit if any failed.
//!
//! Every comparison is exact (zero tolerance). Wall-clock limits apply where a
//! criterion has one and are measured per criterion.

mod common;

use std::collections::BTreeMap;
use std::error::Error as StdError;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::Zero;

use quasirank::congruence::{
    dissection_check, ell_data, root_identity_table, theorem3_part12, theorem3_part3,
    verify_congruence, StreamTarget,
};
use quasirank::moments::{
    crank_gf, crank_moment_recurrence, crank_witness, moment_series, moment_series_fast,
    pcong_check, pde_residual, pk_explicit, pk_poly, rank4_display_residual, rank_gf_lambert,
    rank_witness, rankcrank_residual, vk_identity_holds, witness_depth, MomentKind,
};
use quasirank::partitions::{count_marked_durfee, distribution_table, rank_moment, Statistic};
use quasirank::qseries::{partition_series, QSeries, WQSeries};
use quasirank::rings::poly::Poly;
use quasirank::rings::{Integers, Rationals};

type Outcome = Result<(bool, String), Box<dyn StdError>>;

struct Criterion {
    id: u32,
    title: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

const fn secs(s: u64) -> Option<Duration> {
    Some(Duration::from_secs(s))
}

const CRITERIA: &[Criterion] = &[
    Criterion {
        id: 1,
        title: "Ramanujan congruences to 2000",
        limit: secs(5),
        run: ramanujan,
    },
    Criterion {
        id: 2,
        title: "rank-crank PDE through q^30",
        limit: secs(30),
        run: pde,
    },
    Criterion {
        id: 3,
        title: "moment identity a=4,6,8 and order-4 display through q^25",
        limit: None,
        run: rankcrank,
    },
    Criterion {
        id: 4,
        title: "crank recurrence C2..C8 through q^25",
        limit: None,
        run: recurrence,
    },
    Criterion {
        id: 5,
        title: "generating functions = enumeration",
        limit: None,
        run: oracles,
    },
    Criterion {
        id: 6,
        title: "Andrews Durfee congruences",
        limit: None,
        run: andrews,
    },
    Criterion {
        id: 7,
        title: "P_k calculus",
        limit: secs(1),
        run: pk,
    },
    Criterion {
        id: 8,
        title: "l=11 moment streams, n <= 8",
        limit: secs(120),
        run: eleven_table,
    },
    Criterion {
        id: 9,
        title: "explicit eta congruences",
        limit: secs(300),
        run: eta_congruences,
    },
    Criterion {
        id: 10,
        title: "quasimodular witnesses",
        limit: None,
        run: witnesses,
    },
    Criterion {
        id: 11,
        title: "H1/H2 pipeline at l=5 and l=11",
        limit: None,
        run: pipeline,
    },
    Criterion {
        id: 12,
        title: "root-of-unity identity, t=5,7",
        limit: secs(60),
        run: root_identity,
    },
    Criterion {
        id: 13,
        title: "property suites",
        limit: None,
        run: properties,
    },
];

fn progression(
    s: &QSeries<Integers>,
    a: u64,
    b: u64,
    m: u64,
    top: u64,
) -> Result<bool, quasirank::Error> {
    Ok(verify_congruence("", s, a, b, m, (top - b) / a)?.holds())
}

fn ramanujan() -> Outcome {
    let p = partition_series(Integers, 2000);
    let mut pass = true;
    for (a, b) in [(5, 4), (7, 5), (11, 6)] {
        pass &= progression(&p, a, b, a, 2000)?;
    }
    Ok((pass, "p(5n+4), p(7n+5), p(11n+6)".into()))
}

fn pde() -> Outcome {
    Ok((pde_residual(30)?.is_zero(), "bivariate residual".into()))
}

fn rankcrank() -> Outcome {
    let mut failing = Vec::new();
    for a in [4u32, 6, 8] {
        if !rankcrank_residual(a, 25)?.is_zero() {
            failing.push(format!("a={a}"));
        }
    }
    if !rank4_display_residual(25)?.is_zero() {
        failing.push("display".into());
    }
    Ok((failing.is_empty(), format!("failing: {failing:?}")))
}

fn recurrence() -> Outcome {
    let mut failing = Vec::new();
    for a in [2u32, 4, 6, 8] {
        if crank_moment_recurrence(a, 25)? != moment_series(MomentKind::Crank, a, 25)?.series {
            failing.push(a);
        }
    }
    Ok((failing.is_empty(), format!("failing orders: {failing:?}")))
}

fn rows_match(
    w: &WQSeries<Integers>,
    stat: Statistic,
    n_max: u32,
) -> Result<bool, Box<dyn StdError>> {
    let table = distribution_table(stat, n_max);
    for n in 1..=n_max {
        let mut row = BTreeMap::new();
        for (m, c) in w.row(n as usize).iter().filter(|(_, c)| !c.is_zero()) {
            row.insert(m, i64::try_from(c)?);
        }
        if row != table.row(n) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn durfee_matches(k: u32, top: u32) -> Result<bool, Box<dyn StdError>> {
    let eta = moment_series_fast(MomentKind::Symmetrized, 2 * k - 2, top as i64)?.series;
    for n in 1..=top {
        if eta.coeff(n as i64) != BigInt::from(count_marked_durfee(k, n)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn oracles() -> Outcome {
    let mut parts = vec![
        (
            "N n<=30",
            rows_match(&rank_gf_lambert(30)?, Statistic::Rank, 30)?,
        ),
        ("M n<=30", rows_match(&crank_gf(30)?, Statistic::Crank, 30)?),
        ("D2 n<=30", durfee_matches(2, 30)?),
        ("D3 n<=25", durfee_matches(3, 25)?),
    ];
    parts.push(("NF2 t=5 n<=12", dissection_check(2, 5, 12)?.holds()));
    parts.push(("NF2 t=7 n<=12", dissection_check(2, 7, 12)?.holds()));
    let pass = parts.iter().all(|(_, ok)| *ok);
    let failing: Vec<_> = parts
        .iter()
        .filter(|(_, ok)| !ok)
        .map(|(n, _)| *n)
        .collect();
    Ok((
        pass,
        format!("{} comparisons, failing: {failing:?}", parts.len()),
    ))
}

fn enumerated_durfee(k: u32, top: u32) -> Result<QSeries<Integers>, Box<dyn StdError>> {
    let mut counts = vec![0i64];
    for n in 1..=top {
        counts.push(count_marked_durfee(k, n)? as i64);
    }
    Ok(QSeries::from_i64s(Integers, 0, &counts, top as i64))
}

fn andrews() -> Outcome {
    let d2 = enumerated_durfee(2, 30)?;
    let d3 = enumerated_durfee(3, 30)?;
    let mut pass = true;
    for b in [1, 4] {
        pass &= progression(&d2, 5, b, 5, 30)?;
    }
    for b in [1, 5] {
        pass &= progression(&d3, 7, b, 7, 30)?;
    }
    // the ambiguous D_2(7n+a) line, recorded under both moduli
    let mut open = Vec::new();
    for m in [5, 7] {
        for b in [1, 5] {
            open.push(format!(
                "D2(7n+{b}) mod {m}: {}",
                progression(&d2, 7, b, m, 30)?
            ));
        }
    }
    Ok((pass, format!("n <= 30; open reading: {}", open.join(", "))))
}

fn pk() -> Outcome {
    let mut pass = (1..=10).all(|k| pk_poly(k) == pk_explicit(k) && vk_identity_holds(k));
    for l in [5, 7, 11, 13] {
        pass &= pcong_check(l)?;
    }
    let p3 = Poly::from_i64s(Rationals, &[1, -24, 108]);
    pass &= pk_poly(3) == p3;
    Ok((
        pass,
        "k <= 10, l in {5,7,11,13}, P_3 = 1 - 24x + 108x^2".into(),
    ))
}

fn eleven_table() -> Outcome {
    let mut pass = true;
    let mut streams = Vec::new();
    for k in 1..=4 {
        let r = theorem3_part12(11, k, &StreamTarget::eleven(k)?, 8)?;
        pass &= r.holds();
        if k == 1 {
            pass &= r.stream.first() == Some(&3);
        }
        streams.push(format!("N{}: {:?}", 2 * k, r.stream));
    }
    let anchor = rank_moment(2, 6);
    let series_anchor = moment_series_fast(MomentKind::Rank, 2, 6)?.series.coeff(6);
    pass &= anchor == BigInt::from(80) && series_anchor == anchor;
    Ok((pass, format!("N2(6) = {anchor}; {}", streams.join("; "))))
}

fn eta_congruences() -> Outcome {
    let eta = |k: u32, t: i64| moment_series_fast(MomentKind::Symmetrized, k, t).map(|m| m.series);
    let checks = [
        verify_congruence("eta2", &eta(2, 3141)?, 1331, 479, 11, 2)?,
        verify_congruence("eta4", &eta(4, 880)?, 11, 0, 11, 80)?,
        verify_congruence("eta6", &eta(6, 999)?, 49, 19, 7, 20)?,
        verify_congruence("eta8", &eta(8, 1007)?, 169, 162, 13, 5)?,
    ];
    let failing: Vec<_> = checks
        .iter()
        .filter(|c| !c.holds())
        .map(|c| c.statistic.clone())
        .collect();
    Ok((failing.is_empty(), format!("failing: {failing:?}")))
}

fn witnesses() -> Outcome {
    let mut fits = Vec::new();
    for k in 1..=4 {
        fits.push((format!("C{}/P", 2 * k), 2 * k, crank_witness(k)?));
    }
    for k in 2..=4 {
        fits.push((format!("(N{} - P{k} N2)/P", 2 * k), 2 * k, rank_witness(k)?));
    }
    let mut pass = true;
    for (_, w, f) in &fits {
        pass &= f.is_integral_at(11) && f.residual_checked_to >= witness_depth(*w);
    }
    Ok((
        pass,
        format!("{} fits, 11-integral, checked to 4x dimension", fits.len()),
    ))
}

fn pipeline() -> Outcome {
    let mut pass = true;
    let mut notes = Vec::new();
    for ell in [5u64, 11] {
        let r = theorem3_part3(ell, 8)?;
        let d = ell_data(ell)?;
        let w1 = (ell * (ell - 1) - d.r - 1) / 2;
        let w2 = (ell * (ell + 1) - d.r - 3) / 2;
        let e2_free = |f: &Result<quasirank::qseries::QuasimodularFit, String>| {
            f.as_ref().is_ok_and(|f| !f.uses_e2())
        };
        pass &= r.holds()
            && r.weight_h1 as u64 == w1
            && r.weight_h2 as u64 == w2
            && e2_free(&r.h1_fit)
            && e2_free(&r.h2_fit)
            && r.h_trunc >= 8 * ell as i64;
        notes.push(format!(
            "l={ell}: weights {w1}/{w2}, through q^{}",
            r.h_trunc
        ));
    }
    Ok((pass, notes.join("; ")))
}

fn root_identity() -> Outcome {
    let mut pass = true;
    let mut notes = Vec::new();
    for t in [5, 7] {
        let table = root_identity_table(t)?;
        let admissible: Vec<_> = table.iter().filter(|o| o.admissible()).collect();
        pass &= admissible.iter().all(|o| o.vanishes) && table.iter().all(|o| o.sine_agrees);
        let nontrivial = admissible.iter().filter(|o| o.r != o.s && o.d > 0).count();
        notes.push(format!(
            "t={t}: {} admissible ({nontrivial} with r != s, d > 0)",
            admissible.len()
        ));
    }
    // informational: t = 13 is the first modulus with nontrivial admissible triples
    let t13 = root_identity_table(13)?;
    let nontrivial: Vec<_> = t13
        .iter()
        .filter(|o| o.admissible() && o.r != o.s && o.d > 0)
        .collect();
    let vanishing = nontrivial.iter().filter(|o| o.vanishes).count();
    notes.push(format!(
        "t=13 (not gated): {vanishing} of {} nontrivial vanish",
        nontrivial.len()
    ));
    Ok((pass, notes.join("; ")))
}

fn properties() -> Outcome {
    let mut failing = Vec::new();
    let mut groups: Vec<&str> = Vec::new();
    for (group, name, run) in common::PROPERTIES {
        if !groups.contains(group) {
            groups.push(group);
        }
        if let Err(e) = run() {
            failing.push(format!("{name}: {e}"));
        }
    }
    Ok((
        failing.is_empty(),
        format!(
            "{} ({} properties) failing: {failing:?}",
            groups.join(", "),
            common::PROPERTIES.len()
        ),
    ))
}

fn main() -> ExitCode {
    let mut failed = 0;
    for c in CRITERIA {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let (pass, detail) = match outcome {
            Ok((pass, detail)) => (pass, detail),
            Err(e) => (false, format!("error: {e}")),
        };
        let in_time = c.limit.is_none_or(|l| elapsed <= l);
        let ok = pass && in_time;
        let limit = c
            .limit
            .map(|l| format!(" (limit {}s)", l.as_secs()))
            .unwrap_or_default();
        let late = if pass && !in_time {
            " over time limit;"
        } else {
            ""
        };
        println!(
            "criterion {:>2} {} {} [{:.2}s{limit}]{late} {detail}",
            c.id,
            if ok { "PASS" } else { "FAIL" },
            c.title,
            elapsed.as_secs_f64()
        );
        if !ok {
            failed += 1;
        }
    }
    println!("{} criteria, {failed} failed", CRITERIA.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
