use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{Ring, RingTag};
use crate::error::{Error, Result};

/// The rational numbers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Ring for Rationals {
    type Elem = BigRational;

    fn tag(&self) -> RingTag {
        RingTag::Rational
    }

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn from_int(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }

    fn from_rational(&self, q: &BigRational) -> Result<BigRational> {
        Ok(q.clone())
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn inv(&self, a: &BigRational) -> Result<BigRational> {
        if a.is_zero() {
            Err(Error::NotInvertible {
                element: "0".into(),
                ring: "rational".into(),
            })
        } else {
            Ok(a.recip())
        }
    }

    fn to_rational(&self, a: &BigRational) -> Option<BigRational> {
        Some(a.clone())
    }

    fn format_elem(&self, a: &BigRational) -> String {
        a.to_string()
    }

    fn parse_elem(&self, s: &str) -> Result<BigRational> {
        let s = s.trim();
        let bad = || Error::Parse(format!("bad rational `{s}`"));
        match s.split_once('/') {
            Some((p, q)) => {
                let p: BigInt = p.parse().map_err(|_| bad())?;
                let q: BigInt = q.parse().map_err(|_| bad())?;
                if q.is_zero() {
                    return Err(bad());
                }
                Ok(BigRational::new(p, q))
            }
            None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
        }
    }

    fn add_assign(&self, acc: &mut BigRational, a: &BigRational) {
        *acc += a;
    }
}
