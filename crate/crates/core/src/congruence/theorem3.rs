//! The `l`-adic pipeline: progressions of rank moments against eta quotients, and the pair of
//! modular forms `H_1`, `H_2` built from Hecke images of `Delta^((l^2-1)/24)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use super::{ell_data, EllData};
use crate::error::{Error, Result};
use crate::moments::{moment_series_fast, MomentKind};
use crate::qseries::{
    eisenstein_e_in, eisenstein_phi, eta_power, euler_product, modular_fit, partition_series,
    QSeries, QuasimodularFit,
};
use crate::rings::{bernoulli, Integers, Rationals, Residues, Ring};

/// `sum_i c_i E_{w_i}` with `w = 0` standing for the constant 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StreamTarget {
    pub terms: Vec<(i64, u32)>,
}

impl StreamTarget {
    /// The known forms for `l = 11`: `3`, `7`, `4 + E4`, `5 + 6 E4 + 6 E6` for `k = 1..4`.
    pub fn eleven(k: u32) -> Result<Self> {
        let terms = match k {
            1 => vec![(3, 0)],
            2 => vec![(7, 0)],
            3 => vec![(4, 0), (1, 4)],
            4 => vec![(5, 0), (6, 4), (6, 6)],
            _ => return Err(Error::invalid(format!("no stored target for k = {k}"))),
        };
        Ok(StreamTarget { terms })
    }

    fn series(&self, ring: &Residues, trunc: i64) -> Result<QSeries<Residues>> {
        let mut acc = QSeries::zero(*ring, trunc);
        for &(c, w) in &self.terms {
            let base = if w == 0 {
                QSeries::one(*ring, trunc)
            } else {
                eisenstein_e_in(*ring, w, trunc)?
            };
            acc = acc.add(&base.scale(&ring.from_i64(c)))?;
        }
        Ok(acc)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Part12Report {
    pub ell: u64,
    pub k: u32,
    pub n_max: u64,
    /// `N_{2k}(l n + beta) mod l` for `0 <= n <= n_max`.
    pub stream: Vec<u64>,
    /// First `n` where the stream and `eta^r(24z) G(24z)` disagree, with both values.
    pub mismatch: Option<(u64, u64, u64)>,
    /// `N_{2k}(beta) / N_2(beta) mod l`, the multiple of the second-moment stream that
    /// removes the leading term; `None` for `k = 1` or when `N_2(beta)` is divisible by `l`.
    pub c_k: Option<u64>,
}

impl Part12Report {
    pub fn holds(&self) -> bool {
        self.mismatch.is_none()
    }
}

fn to_residues(x: &QSeries<Integers>, ring: &Residues) -> QSeries<Residues> {
    x.map_ring(*ring, |c| Ok(ring.from_int(c)))
        .expect("integers reduce")
}

/// Compares `sum N_{2k}(l n + beta) q^(24 n + r)` with `eta^r(24z) G(24z)` mod `l` for `n <= n_max`.
pub fn theorem3_part12(
    ell: u64,
    k: u32,
    target: &StreamTarget,
    n_max: u64,
) -> Result<Part12Report> {
    let d = ell_data(ell)?;
    let ring = Residues::new(ell)?;
    let top = (ell * n_max + d.beta) as i64;
    let moment = moment_series_fast(MomentKind::Rank, 2 * k, top)?.series;
    let stream_x =
        to_residues(&moment.extract_progression(ell, d.beta as i64)?, &ring).truncate(n_max as i64);
    let t24 = 24 * n_max as i64 + d.r as i64;
    let lhs = stream_x.rescale(24)?.shift(d.r as i64).truncate(t24);
    let eta = eta_power(ring, d.r as i64, 24, t24)?;
    let g = target.series(&ring, n_max as i64)?.rescale(24)?;
    let rhs = eta.mul(&g)?.truncate(t24);
    let mut mismatch = None;
    for n in 0..=n_max {
        let e = 24 * n as i64 + d.r as i64;
        let (a, b) = (lhs.coeff(e), rhs.coeff(e));
        if a != b {
            mismatch = Some((n, a, b));
            break;
        }
    }
    // off-progression exponents must vanish on both sides
    if mismatch.is_none()
        && (0..=t24).any(|e| (e - d.r as i64) % 24 != 0 && (lhs.coeff(e) != 0 || rhs.coeff(e) != 0))
    {
        return Err(Error::OracleMismatch(
            "series has terms off the 24n + r progression".into(),
        ));
    }
    let c_k = if k >= 2 {
        let n2 = to_residues(
            &moment_series_fast(MomentKind::Rank, 2, d.beta as i64)?.series,
            &ring,
        )
        .coeff(d.beta as i64);
        ring.inv(&n2)
            .ok()
            .map(|inv| ring.mul(&stream_x.coeff(0), &inv))
    } else {
        None
    };
    let stream = (0..=n_max as i64).map(|n| stream_x.coeff(n)).collect();
    Ok(Part12Report {
        ell,
        k,
        n_max,
        stream,
        mismatch,
        c_k,
    })
}

/// `sum N_2(l n + beta) x^n / (x;x)_inf^r mod l`, which is `G_{l,2}(x)` in the `x = q^24` variable.
pub fn theorem3_part1_quotient(ell: u64, n_max: u64) -> Result<QSeries<Residues>> {
    let d = ell_data(ell)?;
    let ring = Residues::new(ell)?;
    let top = (ell * n_max + d.beta) as i64;
    let moment = moment_series_fast(MomentKind::Rank, 2, top)?.series;
    let stream =
        to_residues(&moment.extract_progression(ell, d.beta as i64)?, &ring).truncate(n_max as i64);
    stream.div(&euler_product(ring, n_max as i64).pow(d.r)?)
}

#[derive(Clone, Debug)]
pub struct Part3Report {
    pub data: EllData,
    /// Coefficients of `H_1`, `H_2` are compared through `q^h_trunc`.
    pub h_trunc: i64,
    pub weight_h1: u32,
    pub weight_h2: u32,
    pub h1_fit: std::result::Result<QuasimodularFit, String>,
    pub h2_fit: std::result::Result<QuasimodularFit, String>,
    /// `f_l` vanishes below `q^lambda`, so division by `Delta^lambda` is exact.
    pub h1_divisible: bool,
    pub h2_divisible: bool,
    /// `H_2` from `U(l)` over `Z/l^2` equals `H_2` from `T(l)` reduced mod `l^2`.
    pub u_matches_t: bool,
    pub h1_congruent_h2: bool,
    /// `(H_1 - H_2) / l mod l`, when the difference is divisible by `l`.
    pub difference_over_l: Option<Vec<u64>>,
    /// `1/eta(24z) == Delta^((l^2-1)/24)(24z) / eta^l(24 l z) (mod l^2)` through `q^(24 h_trunc)`.
    pub eta_quotient_holds: bool,
    /// `alpha p(l n + beta) == [x^n] (x;x)^r H_1 (mod l^2)`.
    pub partition_progression_holds: bool,
    /// The same with `2 E~_{l-1} P` in place of `alpha P` and `H_2` in place of `H_1`.
    pub eisenstein_progression_holds: bool,
}

impl Part3Report {
    pub fn holds(&self) -> bool {
        self.h1_fit.is_ok()
            && self.h2_fit.is_ok()
            && self.h1_divisible
            && self.h2_divisible
            && self.u_matches_t
            && self.h1_congruent_h2
            && self.eta_quotient_holds
            && self.partition_progression_holds
            && self.eisenstein_progression_holds
    }

    pub fn to_json(&self) -> serde_json::Value {
        let fit = |f: &std::result::Result<QuasimodularFit, String>| match f {
            Ok(f) => f.to_json(),
            Err(e) => serde_json::json!({ "error": e }),
        };
        serde_json::json!({
            "ell": self.data.ell,
            "data": self.data,
            "h_trunc": self.h_trunc,
            "weight_h1": self.weight_h1,
            "weight_h2": self.weight_h2,
            "h1_fit": fit(&self.h1_fit),
            "h2_fit": fit(&self.h2_fit),
            "h1_divisible": self.h1_divisible,
            "h2_divisible": self.h2_divisible,
            "u_matches_t": self.u_matches_t,
            "h1_congruent_h2": self.h1_congruent_h2,
            "difference_over_l": self.difference_over_l,
            "eta_quotient_holds": self.eta_quotient_holds,
            "partition_progression_holds": self.partition_progression_holds,
            "eisenstein_progression_holds": self.eisenstein_progression_holds,
            "holds": self.holds(),
        })
    }
}

fn to_rationals(x: &QSeries<Integers>) -> QSeries<Rationals> {
    x.map_ring(Rationals, |c| Ok(BigRational::from_integer(c.clone())))
        .expect("integers embed")
}

/// Divides by `Delta^lambda` after checking that `x` vanishes below `q^lambda`.
fn divide_delta<R: Ring>(x: &QSeries<R>, lambda: u64) -> Result<(QSeries<R>, bool)> {
    let l = lambda as i64;
    let ok = (x.order()..l).all(|n| x.ring().is_zero(&x.coeff(n)));
    let d = eta_power(x.ring().clone(), 24 * l, 1, x.trunc())?;
    Ok((x.div(&d)?, ok))
}

/// `E~_{l-1} = l B_{l-1} / (2(l-1)) - l Phi_{l-2}`.
pub fn normalized_eisenstein(ell: u64, trunc: i64) -> Result<QSeries<Rationals>> {
    let b = bernoulli((ell - 1) as usize);
    let lq = BigRational::from_integer(BigInt::from(ell));
    let c = &b * &lq / BigRational::from_integer(BigInt::from(2 * (ell - 1)));
    let phi = to_rationals(&eisenstein_phi(Integers, (ell - 2) as u32, trunc)?);
    QSeries::one(Rationals, trunc)
        .scale(&c)
        .sub(&phi.scale(&lq))
}

/// Builds `H_1`, `H_2` through `q^(l n_max)` and runs every check of the pipeline.
pub fn theorem3_part3(ell: u64, n_max: u64) -> Result<Part3Report> {
    let data = ell_data(ell)?;
    let l = ell as i64;
    let lam = data.lambda as i64;
    let h_trunc = l * n_max as i64;
    let m = ((ell * ell - 1) / 24) as i64;
    let w0 = (12 * m) as u32;
    let weight_h1 = ((ell * (ell - 1) - data.r - 1) / 2) as u32;
    let weight_h2 = ((ell * (ell + 1) - data.r - 3) / 2) as u32;
    if weight_h1 as i64 != w0 as i64 - 12 * lam || weight_h2 as i64 != w0 as i64 + l - 1 - 12 * lam
    {
        return Err(Error::OracleMismatch(
            "weight bookkeeping is inconsistent".into(),
        ));
    }
    let t_d = l * (h_trunc + lam);
    let d_int = eta_power(Integers, 24 * m, 1, t_d)?;

    // H_1 over the integers, up to the unit alpha
    let f1 = d_int.t_operator(ell, w0)?;
    let (h1_int, h1_divisible) = divide_delta(&f1, data.lambda)?;
    let h1_q = to_rationals(&h1_int.truncate(h_trunc));
    let h1_fit = modular_fit(&h1_q, weight_h1, h_trunc).map_err(|e| e.to_string());

    // H_2 over the rationals through T(l)
    let e_tilde = normalized_eisenstein(ell, t_d)?;
    let two = BigRational::from_integer(BigInt::from(2));
    let g2 = to_rationals(&d_int).mul(&e_tilde)?.scale(&two);
    let f2 = g2.t_operator(ell, w0 + ell as u32 - 1)?;
    let (h2_q, h2_divisible) = divide_delta(&f2, data.lambda)?;
    let h2_q = h2_q.truncate(h_trunc);
    let h2_fit = modular_fit(&h2_q, weight_h2, h_trunc).map_err(|e| e.to_string());

    // the same over Z/l^2, with U(l) in place of T(l)
    let r2 = Residues::new(ell * ell)?;
    let reduce = |x: &QSeries<Rationals>| x.map_ring(r2, |c| r2.from_rational(c));
    let g2_mod = reduce(&g2)?;
    let (h2_u, _) = divide_delta(&g2_mod.u_operator(ell)?, data.lambda)?;
    let h2_mod = reduce(&h2_q)?;
    let u_matches_t = h2_u.truncate(h_trunc) == h2_mod;

    let h1_mod = to_residues(&h1_int, &r2)
        .truncate(h_trunc)
        .scale(&data.alpha);
    let diff = h1_mod.sub(&h2_mod)?;
    let h1_congruent_h2 = diff.dense_from(0).all(|(_, c)| c % ell == 0);
    let difference_over_l =
        h1_congruent_h2.then(|| diff.dense_from(0).map(|(_, c)| c / ell).collect());

    // 1/eta(24z) against Delta^m(24z) / eta^l(24 l z) mod l^2
    let t24 = 24 * h_trunc;
    let lhs = eta_power(r2, -1, 24, t24)?;
    let rhs = eta_power(r2, 24 * m, 24, t24 + 2 * l * l)?.mul(&eta_power(
        r2,
        -l,
        24 * ell,
        t24 + 2 * l * l,
    )?)?;
    let eta_quotient_holds = (-1..=t24).all(|n| lhs.coeff(n) == rhs.coeff(n));

    // progressions of alpha P and 2 E~ P against (x;x)^r H
    let top = l * h_trunc + data.beta as i64;
    let p = partition_series(Rationals, top);
    let eta_r = euler_product(r2, h_trunc).pow(data.r)?;
    let lhs1 = reduce(&p.extract_progression(ell, data.beta as i64)?)?
        .scale(&data.alpha)
        .truncate(h_trunc);
    let rhs1 = eta_r.mul(&h1_mod)?;
    let partition_progression_holds = lhs1 == rhs1.truncate(h_trunc);
    let e_p = e_tilde.truncate(top).mul(&p)?.scale(&two);
    let lhs2 = reduce(&e_p.extract_progression(ell, data.beta as i64)?)?.truncate(h_trunc);
    let rhs2 = eta_r.mul(&h2_mod)?;
    let eisenstein_progression_holds = lhs2 == rhs2.truncate(h_trunc);

    Ok(Part3Report {
        data,
        h_trunc,
        weight_h1,
        weight_h2,
        h1_fit,
        h2_fit,
        h1_divisible,
        h2_divisible,
        u_matches_t,
        h1_congruent_h2,
        difference_over_l,
        eta_quotient_holds,
        partition_progression_holds,
        eisenstein_progression_holds,
    })
}
