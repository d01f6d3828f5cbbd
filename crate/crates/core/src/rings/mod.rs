//! Exact coefficient rings.
//!
//! Every series in the crate is generic over a [`Ring`]: a small runtime
//! descriptor (modulus, conductor, ...) together with an element type. Ring
//! descriptors are cheap to clone and elements are plain immutable values.

mod bernoulli;
mod cyclotomic;
mod integer;
pub mod poly;
mod rational;
mod residue;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use bernoulli::{bernoulli, bernoulli_numbers};
pub use cyclotomic::{cyclotomic_polynomial, euler_phi, CycElement, Cyclotomic};
pub use integer::Integers;
pub use rational::Rationals;
pub use residue::Residues;

/// Describes which ring a value lives in. Used in serialized headers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RingTag {
    Integer,
    Rational,
    Residue(u64),
    Cyclotomic { conductor: u64, base: Box<RingTag> },
}

impl fmt::Display for RingTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingTag::Integer => write!(f, "integer"),
            RingTag::Rational => write!(f, "rational"),
            RingTag::Residue(m) => write!(f, "residue({m})"),
            RingTag::Cyclotomic { conductor, base } => write!(f, "cyclotomic({conductor},{base})"),
        }
    }
}

impl FromStr for RingTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "integer" => return Ok(RingTag::Integer),
            "rational" => return Ok(RingTag::Rational),
            _ => {}
        }
        let bad = || Error::Parse(format!("unknown ring tag `{s}`"));
        if let Some(inner) = s.strip_prefix("residue(").and_then(|r| r.strip_suffix(')')) {
            let m: u64 = inner.parse().map_err(|_| bad())?;
            return Ok(RingTag::Residue(m));
        }
        if let Some(inner) = s
            .strip_prefix("cyclotomic(")
            .and_then(|r| r.strip_suffix(')'))
        {
            let (n, base) = inner.split_once(',').ok_or_else(bad)?;
            let conductor: u64 = n.parse().map_err(|_| bad())?;
            let base: RingTag = base.parse()?;
            return Ok(RingTag::Cyclotomic {
                conductor,
                base: Box::new(base),
            });
        }
        Err(bad())
    }
}

/// An exact commutative ring with a runtime descriptor.
///
/// All operations are pure; the descriptor carries whatever context the
/// elements need (modulus, conductor and reduction polynomial).
// `from_*` construct elements of the ring described by `self`.
#[allow(clippy::wrong_self_convention)]
pub trait Ring: Clone + fmt::Debug + PartialEq + Send + Sync {
    type Elem: Clone + fmt::Debug + PartialEq + Send + Sync;

    fn tag(&self) -> RingTag;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_int(&self, n: &BigInt) -> Self::Elem;
    /// Image of a rational number; fails when the denominator is not a unit.
    fn from_rational(&self, q: &BigRational) -> Result<Self::Elem>;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;

    /// The element as a rational number, when the ring has characteristic zero
    /// and the element lies in the prime field.
    fn to_rational(&self, a: &Self::Elem) -> Option<BigRational>;

    fn format_elem(&self, a: &Self::Elem) -> String;
    fn parse_elem(&self, s: &str) -> Result<Self::Elem>;

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_int(&BigInt::from(n))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// `acc += a * b`
    fn mul_add_assign(&self, acc: &mut Self::Elem, a: &Self::Elem, b: &Self::Elem) {
        *acc = self.add(acc, &self.mul(a, b));
    }

    fn add_assign(&self, acc: &mut Self::Elem, a: &Self::Elem) {
        *acc = self.add(acc, a);
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Integer power; negative exponents go through [`Ring::inv`].
    fn pow_i64(&self, a: &Self::Elem, e: i64) -> Result<Self::Elem> {
        if e >= 0 {
            Ok(self.pow(a, e as u64))
        } else {
            Ok(self.pow(&self.inv(a)?, e.unsigned_abs()))
        }
    }
}

/// Checks that two ring descriptors agree.
pub fn ensure_same<R: Ring>(a: &R, b: &R) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::RingMismatch {
            left: a.tag().to_string(),
            right: b.tag().to_string(),
        })
    }
}

/// Legendre symbol `(a | p)` for an odd prime `p`, via Euler's criterion.
pub fn legendre(a: i64, p: u64) -> i8 {
    let p_i = p as i128;
    let r = (a as i128).rem_euclid(p_i) as u128;
    if r == 0 {
        return 0;
    }
    let mut base = r;
    let mut e = (p as u128 - 1) / 2;
    let mut acc: u128 = 1;
    let m = p as u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    if acc == 1 {
        1
    } else {
        -1
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Binomial coefficient `C(n, k)` for an arbitrary integer `n` and `k >= 0`,
/// as the polynomial `n (n-1) ... (n-k+1) / k!`.
pub fn binomial(n: i64, k: u32) -> BigInt {
    let mut num = BigInt::from(1);
    let mut den = BigInt::from(1);
    for i in 0..k as i64 {
        num *= n - i;
        den *= i + 1;
    }
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_tag_roundtrip() {
        for tag in [
            RingTag::Integer,
            RingTag::Rational,
            RingTag::Residue(121),
            RingTag::Cyclotomic {
                conductor: 14,
                base: Box::new(RingTag::Rational),
            },
            RingTag::Cyclotomic {
                conductor: 5,
                base: Box::new(RingTag::Residue(11)),
            },
        ] {
            let s = tag.to_string();
            assert_eq!(s.parse::<RingTag>().unwrap(), tag);
        }
        assert!("reals".parse::<RingTag>().is_err());
    }

    #[test]
    fn legendre_small() {
        // squares mod 7: 1, 2, 4
        let expected = [0, 1, 1, -1, 1, -1, -1];
        for a in 0..7 {
            assert_eq!(legendre(a, 7), expected[a as usize]);
        }
        assert_eq!(legendre(-23, 5), -1);
        assert_eq!(legendre(1 - 144, 11), 0);
    }

    #[test]
    fn binomial_negative_upper() {
        assert_eq!(binomial(-3, 2), BigInt::from(6));
        assert_eq!(binomial(-1, 2), BigInt::from(1));
        assert_eq!(binomial(1, 2), BigInt::from(0));
        assert_eq!(binomial(5, 0), BigInt::from(1));
        assert_eq!(binomial(6, 3), BigInt::from(20));
    }
}
