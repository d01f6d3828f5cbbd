//! The finite root-of-unity sums that decide whether a twisted rank combination has a
//! vanishing non-holomorphic part.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rings::{is_prime, legendre, Cyclotomic, Integers, Rationals, Ring};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootIdentityOutcome {
    pub t: u64,
    pub r: u64,
    pub s: u64,
    pub d: u64,
    /// Hypotheses that fail; empty when the triple is admissible.
    pub violations: Vec<String>,
    /// The expanded sum over `Z[zeta_2t]` is exactly zero.
    pub vanishes: bool,
    /// The floating-point sine form agrees in truth value.
    pub sine_agrees: bool,
}

impl RootIdentityOutcome {
    pub fn admissible(&self) -> bool {
        self.violations.is_empty()
    }
}

fn check_args(t: u64, r: u64, s: u64, d: u64) -> Result<()> {
    if t < 5 || !is_prime(t) {
        return Err(Error::invalid(format!("t must be a prime >= 5, got {t}")));
    }
    if r >= t || s >= t || d >= t {
        return Err(Error::invalid(format!(
            "need 0 <= r, s, d < t, got ({r}, {s}, {d})"
        )));
    }
    Ok(())
}

/// The hypotheses under which the sum is expected to vanish: `(1 - 24d | t) = 1`, and for every
/// `0 <= u < d`, `2r, 2s != 3(1 - d + 2u) (mod 2t)` and
/// `r, s != 2 + 3u, 1 + 3u, 2 - 3d + 3u, 1 - 3d + 3u (mod t)`.
pub fn root_hypothesis(t: u64, r: u64, s: u64, d: u64) -> Vec<String> {
    let mut out = Vec::new();
    let (ti, di) = (t as i64, d as i64);
    if legendre(1 - 24 * di, t) != 1 {
        out.push(format!("({}|{t}) != 1", 1 - 24 * di));
    }
    for (name, x) in [("r", r as i64), ("s", s as i64)] {
        for u in 0..di {
            if (2 * x - 3 * (1 - di + 2 * u)).rem_euclid(2 * ti) == 0 {
                out.push(format!("2{name} == 3(1-d+2u) mod 2t at u={u}"));
            }
            for (label, v) in [
                ("2+3u", 2 + 3 * u),
                ("1+3u", 1 + 3 * u),
                ("2-3d+3u", 2 - 3 * di + 3 * u),
                ("1-3d+3u", 1 - 3 * di + 3 * u),
            ] {
                if (x - v).rem_euclid(ti) == 0 {
                    out.push(format!("{name} == {label} mod t at u={u}"));
                }
            }
        }
    }
    out
}

/// The bracket `1 - z^(3d+1) - z^(1-3d) - z^(3d-1) - z^-(3d+1)` with `z = zeta_2t^j`.
fn bracket<B: Ring>(ring: &Cyclotomic<B>, j: i64, d: i64) -> <Cyclotomic<B> as Ring>::Elem {
    let mut acc = ring.one();
    for e in [3 * d + 1, 1 - 3 * d, 3 * d - 1, -(3 * d + 1)] {
        acc = ring.sub(&acc, &ring.root_power(j * e));
    }
    acc
}

/// `S(r) = sum_j zeta_t^(-rj) F_j`, where `F_j` is the rest of the summand; the sum for `(r, s)` is
/// `S(r) - S(s)`. The geometric factor `1 + zeta_t^3j + ... + zeta_t^3j(d-1)` is expanded.
fn expanded_partials(t: u64, d: u64) -> Result<Vec<<Cyclotomic<Integers> as Ring>::Elem>> {
    let ring = Cyclotomic::new(2 * t, Integers)?;
    let d = d as i64;
    let factors: Vec<_> = (1..t as i64)
        .map(|j| {
            let mut geo = ring.zero();
            for u in 0..d {
                geo = ring.add(&geo, &ring.root_power(6 * j * u));
            }
            ring.mul(
                &ring.mul(&geo, &ring.root_power(3 * j * (1 - d))),
                &bracket(&ring, j, d),
            )
        })
        .collect();
    Ok(partials(&ring, t, &factors))
}

/// As [`expanded_partials`], with the quotient `(1 - zeta_t^3dj) / (1 - zeta_t^3j)` formed by
/// division in `Q(zeta_2t)`.
fn quotient_partials(t: u64, d: u64) -> Result<Vec<<Cyclotomic<Rationals> as Ring>::Elem>> {
    let ring = Cyclotomic::new(2 * t, Rationals)?;
    let d = d as i64;
    let one = ring.one();
    let mut factors = Vec::new();
    for j in 1..t as i64 {
        let num = ring.sub(&one, &ring.root_power(6 * d * j));
        let den = ring.sub(&one, &ring.root_power(6 * j));
        let q = ring.div(&num, &den)?;
        factors.push(ring.mul(
            &ring.mul(&q, &ring.root_power(3 * j * (1 - d))),
            &bracket(&ring, j, d),
        ));
    }
    Ok(partials(&ring, t, &factors))
}

fn partials<B: Ring>(
    ring: &Cyclotomic<B>,
    t: u64,
    factors: &[<Cyclotomic<B> as Ring>::Elem],
) -> Vec<<Cyclotomic<B> as Ring>::Elem> {
    (0..t as i64)
        .map(|r| {
            factors.iter().enumerate().fold(ring.zero(), |acc, (i, f)| {
                let j = i as i64 + 1;
                ring.add(&acc, &ring.mul(&ring.root_power(-2 * r * j), f))
            })
        })
        .collect()
}

/// Floating-point value of the sine form
/// `sum_j (z^-rj - z^-sj) z^2j / ((1 - z^j)(z^3j - 1)) (sin(pi j/t) sin(3 pi j d/t) - sin(2 pi j/t) sin(6 pi j d/t))`
/// with `z = e^(2 pi i/t)`, returned as `(re, im)`.
pub fn root_identity_sine_form(t: u64, r: u64, s: u64, d: u64) -> (f64, f64) {
    let tf = t as f64;
    let z = |k: f64| Complex64::from_polar(1.0, 2.0 * PI * k / tf);
    let one = Complex64::new(1.0, 0.0);
    let (rf, sf, df) = (r as f64, s as f64, d as f64);
    let acc: Complex64 = (1..t)
        .map(|j| {
            let jf = j as f64;
            let diff = z(-rf * jf) - z(-sf * jf);
            let den = (one - z(jf)) * (z(3.0 * jf) - one);
            let sines = (PI * jf / tf).sin() * (3.0 * PI * jf * df / tf).sin()
                - (2.0 * PI * jf / tf).sin() * (6.0 * PI * jf * df / tf).sin();
            diff * z(2.0 * jf) / den * sines
        })
        .sum();
    (acc.re, acc.im)
}

fn outcome(t: u64, r: u64, s: u64, d: u64, vanishes: bool) -> RootIdentityOutcome {
    let (re, im) = root_identity_sine_form(t, r, s, d);
    let sine_zero = re.hypot(im) < 1e-9;
    RootIdentityOutcome {
        t,
        r,
        s,
        d,
        violations: root_hypothesis(t, r, s, d),
        vanishes,
        sine_agrees: sine_zero == vanishes,
    }
}

/// Both exact forms for one `d`, as a `t x t` table of vanishing; fails if the forms disagree.
fn vanishing_for_d(t: u64, d: u64) -> Result<Vec<Vec<bool>>> {
    let e = expanded_partials(t, d)?;
    let q = quotient_partials(t, d)?;
    let mut out = vec![vec![false; t as usize]; t as usize];
    for r in 0..t as usize {
        for s in 0..t as usize {
            let v = e[r] == e[s];
            if v != (q[r] == q[s]) {
                return Err(Error::OracleMismatch(format!(
                    "expanded and quotient forms disagree at t={t} ({r}, {s}, {d})"
                )));
            }
            out[r][s] = v;
        }
    }
    Ok(out)
}

/// Decides the vanishing of the sum for one triple, evaluating both exact forms and failing if they
/// disagree. The check runs whether or not the hypotheses hold.
pub fn root_identity_check(t: u64, r: u64, s: u64, d: u64) -> Result<RootIdentityOutcome> {
    check_args(t, r, s, d)?;
    let v = vanishing_for_d(t, d)?[r as usize][s as usize];
    Ok(outcome(t, r, s, d, v))
}

/// Every triple `0 <= r, s, d < t`, ordered by `(r, s, d)`.
pub fn root_identity_table(t: u64) -> Result<Vec<RootIdentityOutcome>> {
    use rayon::prelude::*;
    check_args(t, 0, 0, 0)?;
    let by_d: Vec<Vec<Vec<bool>>> = (0..t)
        .into_par_iter()
        .map(|d| vanishing_for_d(t, d))
        .collect::<Result<_>>()?;
    let mut out = Vec::with_capacity((t * t * t) as usize);
    for r in 0..t {
        for s in 0..t {
            for d in 0..t {
                out.push(outcome(
                    t,
                    r,
                    s,
                    d,
                    by_d[d as usize][r as usize][s as usize],
                ));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equal_residues_vanish() {
        for d in 0..5 {
            assert!(root_identity_check(5, 2, 2, d).unwrap().vanishes);
        }
    }

    #[test]
    fn admissible_triples_at_thirteen_vanish() {
        let table = root_identity_table(13).unwrap();
        let admissible: Vec<_> = table.iter().filter(|o| o.admissible()).collect();
        assert!(admissible.iter().any(|o| o.d > 0 && o.r != o.s));
        for o in admissible {
            assert!(o.vanishes, "{o:?}");
            assert!(o.sine_agrees);
        }
    }

    #[test]
    fn rejects_bad_modulus() {
        assert!(root_identity_check(9, 1, 2, 1).is_err());
        assert!(root_identity_check(7, 7, 2, 1).is_err());
    }
}
