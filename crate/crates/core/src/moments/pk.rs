//! The polynomials `P_k(x)` that carry the leading `delta_q` part of the rank moments.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::identities::lower_coefficients;
use crate::error::{Error, Result};
use crate::rings::poly::Poly;
use crate::rings::{binomial, is_prime, Rationals, Residues, Ring};

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `P_0 = 0`, `P_1 = 1`, `P_k = (1 - 12x) P_{k-1} - 36 x^2 P_{k-2}`.
pub fn pk_poly(k: u32) -> Poly<Rationals> {
    let a = Poly::from_i64s(Rationals, &[1, -12]);
    let b = Poly::from_i64s(Rationals, &[0, 0, 36]);
    let mut prev = Poly::zero(Rationals);
    let mut cur = Poly::one(Rationals);
    if k == 0 {
        return prev;
    }
    for _ in 1..k {
        let next = a
            .mul(&cur)
            .and_then(|x| x.sub(&b.mul(&prev)?))
            .expect("same ring");
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// `2^(1-2k) sum_j C(2k, 2j+1) (1 - 24x)^j`.
pub fn pk_explicit(k: u32) -> Poly<Rationals> {
    let base = Poly::from_i64s(Rationals, &[1, -24]);
    let mut acc = Poly::zero(Rationals);
    for j in 0..k {
        let c = BigRational::from_integer(binomial(2 * k as i64, 2 * j + 1));
        acc = acc.add(&base.pow(j).scale(&c)).expect("same ring");
    }
    let scale = BigRational::new(BigInt::from(2), BigInt::one() << (2 * k));
    acc.scale(&scale)
}

/// `P_k` read off from solving the rank-crank identity for the top rank moment: with `x`
/// standing for `delta_q`, `P_k = -1/((2k-1)(k-1)) sum_i (dq_i x + plain_i) P_{k-i}`.
pub fn pk_from_rank_relation(k: u32) -> Poly<Rationals> {
    let mut table = vec![Poly::zero(Rationals), Poly::one(Rationals)];
    for kk in 2..=k {
        let mut acc = Poly::zero(Rationals);
        for i in 1..kk {
            let (dq, plain) = lower_coefficients(2 * kk, i);
            let lin = Poly::new(
                Rationals,
                vec![
                    BigRational::from_integer(plain),
                    BigRational::from_integer(dq),
                ],
            );
            acc = acc
                .add(&lin.mul(&table[(kk - i) as usize]).expect("same ring"))
                .expect("same ring");
        }
        table.push(acc.scale(&q(-1, ((2 * kk - 1) * (kk - 1)) as i64)));
    }
    table.swap_remove(k as usize)
}

/// `V_k(z) = P_k((1 - z^2) / 24)`.
pub fn vk_poly(k: u32) -> Poly<Rationals> {
    let inner = Poly::new(Rationals, vec![q(1, 24), q(0, 1), q(-1, 24)]);
    pk_poly(k).compose(&inner).expect("same ring")
}

/// `z V_k(z) = ((1+z)/2)^(2k) - ((1-z)/2)^(2k)` as polynomials.
pub fn vk_identity_holds(k: u32) -> bool {
    let z = Poly::monomial(Rationals, BigRational::one(), 1);
    let plus = Poly::new(Rationals, vec![q(1, 2), q(1, 2)]).pow(2 * k);
    let minus = Poly::new(Rationals, vec![q(1, 2), q(-1, 2)]).pow(2 * k);
    z.mul(&vk_poly(k)).expect("same ring") == plus.sub(&minus).expect("same ring")
}

/// `P_{(l+1)/2}(x) == ((l+1)/2)(1 + (1 - 24x)^((l-1)/2)) (mod l)` for a prime `l > 3`.
pub fn pcong_check(l: u64) -> Result<bool> {
    if l <= 3 || !is_prime(l) {
        return Err(Error::invalid(format!("expected a prime above 3, got {l}")));
    }
    let ring = Residues::new(l)?;
    let k = l.div_ceil(2) as u32;
    let lhs = pk_poly(k).map_into(ring, |c| ring.from_rational(c))?;
    let base = Poly::from_i64s(ring, &[1, -24]).pow(((l - 1) / 2) as u32);
    let rhs = Poly::one(ring).add(&base)?.scale(&ring.from_i64(k as i64));
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        assert_eq!(pk_poly(1), Poly::one(Rationals));
        assert_eq!(pk_poly(2), Poly::from_i64s(Rationals, &[1, -12]));
        assert_eq!(pk_poly(3), Poly::from_i64s(Rationals, &[1, -24, 108]));
        let r5 = Residues::new(5).unwrap();
        let p3 = pk_poly(3).map_into(r5, |c| r5.from_rational(c)).unwrap();
        assert_eq!(p3, Poly::from_i64s(r5, &[1, 1, 3]));
    }

    #[test]
    fn three_descriptions_agree() {
        for k in 1..=10 {
            assert_eq!(pk_poly(k), pk_explicit(k), "k={k}");
            assert_eq!(pk_poly(k), pk_from_rank_relation(k), "k={k}");
            assert_eq!(pk_poly(k).degree(), Some(k as usize - 1));
            assert!(vk_identity_holds(k));
        }
    }

    #[test]
    fn congruence_mod_l() {
        for l in [5, 7, 11, 13, 17] {
            assert!(pcong_check(l).unwrap(), "l={l}");
        }
        assert!(pcong_check(9).is_err());
    }
}
