//! Randomized invariants, shared by the `properties` and `acceptance` targets.
//!
//! Each entry runs its own proptest runner and returns the first failure as a string.

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

use quasirank::partitions::StatTable;
use quasirank::qseries::{
    delta, eisenstein_e, parse_series, quasimodular_fit, Monomial, QSeries, WQSeries,
};
use quasirank::rings::{Cyclotomic, Integers, Rationals, Residues, Ring};

pub type Property = fn() -> Result<(), String>;

/// `(group, name, run)` for every property; acceptance reports by group.
pub const PROPERTIES: &[(&str, &str, Property)] = &[
    (
        "ring axioms",
        "integer_and_rational_axioms",
        integer_and_rational_axioms,
    ),
    ("ring axioms", "residue_axioms", residue_axioms),
    (
        "ring axioms",
        "residue_reduction_is_a_homomorphism",
        residue_reduction_is_a_homomorphism,
    ),
    ("ring axioms", "cyclotomic_axioms", cyclotomic_axioms),
    ("ring axioms", "cyclotomic_root_sums", cyclotomic_root_sums),
    ("series", "series_product_laws", series_product_laws),
    ("series", "inverse_is_two_sided", inverse_is_two_sided),
    ("series", "u_undoes_rescale", u_undoes_rescale),
    (
        "series",
        "fit_recovers_combination",
        fit_recovers_combination,
    ),
    ("Leibniz", "leibniz_rule", leibniz_rule),
    ("Leibniz", "leibniz_rule_in_w", leibniz_rule_in_w),
    ("E2 derivative", "e2_derivative", e2_derivative),
    (
        "E2 derivative",
        "serre_derivative_is_modular",
        serre_derivative_is_modular,
    ),
    ("round-trip", "series_text_roundtrip", series_text_roundtrip),
    ("round-trip", "table_roundtrip", table_roundtrip),
    (
        "U* partition",
        "u_star_partitions_indices",
        u_star_partitions_indices,
    ),
];

fn runner(cases: u32) -> TestRunner {
    TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    })
}

fn run<S: Strategy>(
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    runner(cases)
        .run(&strategy, test)
        .map_err(|e| e.to_string())
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn small_rat() -> impl Strategy<Value = (i64, i64)> {
    (-20i64..20, 1i64..9)
}

fn check_axioms<R: Ring>(
    ring: &R,
    a: &R::Elem,
    b: &R::Elem,
    c: &R::Elem,
) -> Result<(), TestCaseError> {
    prop_assert_eq!(ring.add(a, b), ring.add(b, a));
    prop_assert_eq!(ring.mul(a, b), ring.mul(b, a));
    prop_assert_eq!(ring.add(&ring.add(a, b), c), ring.add(a, &ring.add(b, c)));
    prop_assert_eq!(ring.mul(&ring.mul(a, b), c), ring.mul(a, &ring.mul(b, c)));
    prop_assert_eq!(
        ring.mul(a, &ring.add(b, c)),
        ring.add(&ring.mul(a, b), &ring.mul(a, c))
    );
    prop_assert_eq!(&ring.add(a, &ring.zero()), a);
    prop_assert_eq!(&ring.mul(a, &ring.one()), a);
    prop_assert!(ring.is_zero(&ring.add(a, &ring.neg(a))));
    prop_assert_eq!(ring.sub(a, b), ring.add(a, &ring.neg(b)));
    if let Ok(inv) = ring.inv(a) {
        prop_assert!(ring.is_one(&ring.mul(a, &inv)));
    }
    Ok(())
}

fn cyc(ring: &Cyclotomic<Rationals>, v: &[(i64, i64)]) -> <Cyclotomic<Rationals> as Ring>::Elem {
    ring.reduce(v.iter().map(|&(n, d)| rat(n, d)).collect())
}

pub fn integer_and_rational_axioms() -> Result<(), String> {
    let s = (-1000i64..1000, -1000i64..1000, -1000i64..1000, 1i64..50);
    run(10_000, s, |(a, b, c, d)| {
        check_axioms(
            &Integers,
            &BigInt::from(a),
            &BigInt::from(b),
            &BigInt::from(c),
        )?;
        check_axioms(&Rationals, &rat(a, d), &rat(b, d + 1), &rat(c, 2 * d + 1))
    })
}

pub fn residue_axioms() -> Result<(), String> {
    run(
        10_000,
        (2u64..500, any::<i64>(), any::<i64>(), any::<i64>()),
        |(m, a, b, c)| {
            let r = Residues::new(m).unwrap();
            check_axioms(&r, &r.from_i64(a), &r.from_i64(b), &r.from_i64(c))
        },
    )
}

pub fn residue_reduction_is_a_homomorphism() -> Result<(), String> {
    run(
        10_000,
        (2u64..10_000, any::<i64>(), any::<i64>()),
        |(m, a, b)| {
            let r = Residues::new(m).unwrap();
            let (x, y) = (BigInt::from(a), BigInt::from(b));
            prop_assert_eq!(
                r.from_int(&(&x + &y)),
                r.add(&r.from_i64(a), &r.from_i64(b))
            );
            prop_assert_eq!(
                r.from_int(&(&x * &y)),
                r.mul(&r.from_i64(a), &r.from_i64(b))
            );
            prop_assert_eq!(r.from_int(&(-&x)), r.neg(&r.from_i64(a)));
            Ok(())
        },
    )
}

pub fn cyclotomic_axioms() -> Result<(), String> {
    let elem = || prop::collection::vec(small_rat(), 1..14);
    let s = (
        prop::sample::select(vec![3u64, 4, 5, 7, 8, 10, 12, 14]),
        elem(),
        elem(),
        elem(),
    );
    run(2_000, s, |(n, a, b, c)| {
        let ring = Cyclotomic::new(n, Rationals).unwrap();
        let (x, y) = (cyc(&ring, &a), cyc(&ring, &b));
        check_axioms(&ring, &x, &y, &cyc(&ring, &c))?;
        prop_assert!(ring.is_one(&ring.pow(&ring.root_power(1), n)));
        // conjugation is a ring map
        prop_assert_eq!(
            ring.conjugate(&ring.mul(&x, &y)),
            ring.mul(&ring.conjugate(&x), &ring.conjugate(&y))
        );
        Ok(())
    })
}

pub fn cyclotomic_root_sums() -> Result<(), String> {
    for n in 2..=30u64 {
        let ring = Cyclotomic::new(n, Integers).unwrap();
        for j in 1..n {
            let mut acc = ring.zero();
            for a in 0..n {
                acc = ring.add(&acc, &ring.root_power((j * a) as i64));
            }
            if !ring.is_zero(&acc) {
                return Err(format!("sum of zeta_{n}^({j} a) is not zero"));
            }
        }
    }
    Ok(())
}

pub fn series_product_laws() -> Result<(), String> {
    let c = || prop::collection::vec(-30i64..30, 1..16);
    run(
        1_000,
        (c(), c(), c(), -2i64..3, -2i64..3),
        |(a, b, c, va, vb)| {
            let x = QSeries::from_i64s(Integers, va, &a, 12);
            let y = QSeries::from_i64s(Integers, vb, &b, 14);
            let z = QSeries::from_i64s(Integers, 0, &c, 15);
            prop_assert_eq!(x.mul(&y).unwrap(), y.mul(&x).unwrap());
            prop_assert_eq!(
                x.mul(&y).unwrap().mul(&z).unwrap(),
                x.mul(&y.mul(&z).unwrap()).unwrap()
            );
            Ok(())
        },
    )
}

pub fn inverse_is_two_sided() -> Result<(), String> {
    run(
        1_000,
        (prop::collection::vec(-20i64..20, 1..15), -3i64..3),
        |(mut coeffs, v)| {
            coeffs[0] = if coeffs[0] >= 0 { 1 } else { -1 };
            let x = QSeries::from_i64s(Integers, v, &coeffs, 14);
            let inv = x.invert().unwrap();
            let one = x.mul(&inv).unwrap();
            prop_assert_eq!(&one, &QSeries::one(Integers, one.trunc()));
            prop_assert_eq!(inv.mul(&x).unwrap(), one);
            Ok(())
        },
    )
}

pub fn u_undoes_rescale() -> Result<(), String> {
    run(
        1_000,
        (prop::collection::vec(-99i64..99, 1..30), 2u64..14, 0i64..3),
        |(coeffs, l, v)| {
            let x = QSeries::from_i64s(Integers, v, &coeffs, v + coeffs.len() as i64 - 1);
            prop_assert_eq!(x.rescale(l).unwrap().u_operator(l).unwrap(), x);
            Ok(())
        },
    )
}

pub fn fit_recovers_combination() -> Result<(), String> {
    let monomials = Monomial::up_to_weight(6, true);
    let basis: Vec<_> = monomials
        .iter()
        .map(|m| m.series(4 * monomials.len() as i64).unwrap())
        .collect();
    run(
        200,
        prop::collection::vec(small_rat(), monomials.len()),
        |coeffs| {
            let check_to = 4 * monomials.len() as i64;
            let mut target = QSeries::zero(Rationals, check_to);
            for (b, &(n, d)) in basis.iter().zip(&coeffs) {
                target = target.add(&b.scale(&rat(n, d))).unwrap();
            }
            let fit = quasimodular_fit(&target, 6, check_to).unwrap();
            prop_assert_eq!(fit.reconstruct(check_to).unwrap(), target);
            for (m, &(n, d)) in monomials.iter().zip(&coeffs) {
                prop_assert_eq!(
                    fit.terms.get(m).cloned().unwrap_or_else(|| rat(0, 1)),
                    rat(n, d)
                );
            }
            Ok(())
        },
    )
}

pub fn leibniz_rule() -> Result<(), String> {
    let c = || prop::collection::vec(-50i64..50, 1..20);
    run(1_000, (c(), c(), -3i64..4, -3i64..4), |(f, g, sf, sg)| {
        let f = QSeries::from_i64s(Integers, sf, &f, 18);
        let g = QSeries::from_i64s(Integers, sg, &g, 18);
        let lhs = f.mul(&g).unwrap().delta_q();
        let rhs = f
            .delta_q()
            .mul(&g)
            .unwrap()
            .add(&f.mul(&g.delta_q()).unwrap())
            .unwrap();
        prop_assert_eq!(lhs, rhs);
        Ok(())
    })
}

fn bivariate(rows: &[Vec<i64>]) -> WQSeries<Integers> {
    let trunc = rows.len() as i64 - 1;
    let rows = rows
        .iter()
        .map(|r| {
            (
                -(r.len() as i64) / 2,
                r.iter().map(|&c| BigInt::from(c)).collect(),
            )
        })
        .collect();
    WQSeries::from_rows(Integers, rows).truncate(trunc)
}

pub fn leibniz_rule_in_w() -> Result<(), String> {
    let rows = || prop::collection::vec(prop::collection::vec(-9i64..9, 1..5), 1..8);
    run(1_000, (rows(), rows()), |(rf, rg)| {
        let (f, g) = (bivariate(&rf), bivariate(&rg));
        let lhs = f.mul(&g).unwrap().delta_w();
        let rhs = f
            .delta_w()
            .mul(&g)
            .unwrap()
            .add(&f.mul(&g.delta_w()).unwrap())
            .unwrap();
        prop_assert_eq!(lhs, rhs);
        Ok(())
    })
}

pub fn e2_derivative() -> Result<(), String> {
    run(46, 5i64..=50, |trunc| {
        let e2 = eisenstein_e(2, trunc).unwrap();
        let e4 = eisenstein_e(4, trunc).unwrap();
        prop_assert_eq!(
            e2.delta_q().scale(&rat(12, 1)),
            e2.mul(&e2).unwrap().sub(&e4).unwrap()
        );
        Ok(())
    })
}

pub fn serre_derivative_is_modular() -> Result<(), String> {
    let trunc = 40;
    let e2 = eisenstein_e(2, trunc).unwrap();
    let d = delta(Integers, trunc)
        .map_ring(Rationals, |c| Ok(BigRational::from_integer(c.clone())))
        .unwrap();
    for (k, f) in [
        (4i64, eisenstein_e(4, trunc).unwrap()),
        (6, eisenstein_e(6, trunc).unwrap()),
        (12, d),
    ] {
        let serre = f
            .delta_q()
            .scale(&rat(12, 1))
            .sub(&e2.mul(&f).unwrap().scale(&rat(k, 1)))
            .unwrap();
        let fit = quasimodular_fit(&serre, k as u32 + 2, trunc).map_err(|e| e.to_string())?;
        // for Delta the derivative vanishes
        let expected = if k == 12 { None } else { Some(k as u32 + 2) };
        if fit.uses_e2() || fit.actual_weight() != expected {
            return Err(format!("weight {k}: {fit}"));
        }
    }
    Ok(())
}

pub fn series_text_roundtrip() -> Result<(), String> {
    let s = (
        prop::collection::vec(small_rat(), 0..25),
        -4i64..4,
        0i64..5,
        2u64..200,
    );
    run(1_000, s, |(coeffs, start, extra, m)| {
        let trunc = start + coeffs.len() as i64 - 1 + extra;
        let x = QSeries::new(
            Rationals,
            start,
            coeffs.iter().map(|&(n, d)| rat(n, d)).collect(),
            trunc,
        );
        prop_assert_eq!(parse_series(&Rationals, &x.to_text()).unwrap(), x.clone());
        let r = Residues::new(m).unwrap();
        let y = x.map_ring(r, |c| Ok(r.from_int(c.numer()))).unwrap();
        prop_assert_eq!(parse_series(&r, &y.to_text()).unwrap(), y);
        Ok(())
    })
}

pub fn table_roundtrip() -> Result<(), String> {
    // the csv form carries the label per row, so a table needs at least one row
    let s = (
        prop::collection::vec((1u32..30, -10i64..10, 0i64..1000), 1..30),
        prop::option::of(2u64..9),
    );
    run(1_000, s, |(rows, t)| {
        let mut table = match t {
            Some(t) => StatTable::with_modulus("NF2", t),
            None => StatTable::new("N"),
        };
        for (n, m, c) in rows {
            table.insert(n, m, c);
        }
        prop_assert_eq!(StatTable::from_csv(&table.to_csv()).unwrap(), table.clone());
        prop_assert_eq!(StatTable::from_json(&table.to_json()).unwrap(), table);
        Ok(())
    })
}

pub fn u_star_partitions_indices() -> Result<(), String> {
    let s = (
        prop::collection::vec(-100i64..100, 1..60),
        prop::sample::select(vec![5u64, 7, 11, 13, 17]),
    );
    run(1_000, s, |(coeffs, l)| {
        let x = QSeries::from_i64s(Integers, 0, &coeffs, coeffs.len() as i64 - 1);
        let parts: Vec<_> = [-1i8, 0, 1]
            .iter()
            .map(|&e| x.u_star(e, l).unwrap())
            .collect();
        let sum = parts[0].add(&parts[1]).unwrap().add(&parts[2]).unwrap();
        prop_assert_eq!(sum, x);
        for n in 0..coeffs.len() as i64 {
            prop_assert!(
                parts
                    .iter()
                    .filter(|p| !num_traits::Zero::is_zero(&p.coeff(n)))
                    .count()
                    <= 1
            );
        }
        Ok(())
    })
}
