use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Ring, RingTag};
use crate::error::{Error, Result};

/// The integers, backed by arbitrary-precision [`BigInt`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Integers;

impl Ring for Integers {
    type Elem = BigInt;

    fn tag(&self) -> RingTag {
        RingTag::Integer
    }

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }

    fn one(&self) -> BigInt {
        BigInt::one()
    }

    fn from_int(&self, n: &BigInt) -> BigInt {
        n.clone()
    }

    fn from_i64(&self, n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn from_rational(&self, q: &BigRational) -> Result<BigInt> {
        if q.is_integer() {
            Ok(q.to_integer())
        } else {
            Err(Error::NotInvertible {
                element: q.denom().to_string(),
                ring: "integer".into(),
            })
        }
    }

    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }

    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }

    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }

    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }

    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }

    fn inv(&self, a: &BigInt) -> Result<BigInt> {
        if a.abs().is_one() {
            Ok(a.clone())
        } else {
            Err(Error::NotInvertible {
                element: a.to_string(),
                ring: "integer".into(),
            })
        }
    }

    fn to_rational(&self, a: &BigInt) -> Option<BigRational> {
        Some(BigRational::from_integer(a.clone()))
    }

    fn format_elem(&self, a: &BigInt) -> String {
        a.to_string()
    }

    fn parse_elem(&self, s: &str) -> Result<BigInt> {
        s.trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad integer `{s}`")))
    }

    fn mul_add_assign(&self, acc: &mut BigInt, a: &BigInt, b: &BigInt) {
        *acc += a * b;
    }

    fn add_assign(&self, acc: &mut BigInt, a: &BigInt) {
        *acc += a;
    }
}
