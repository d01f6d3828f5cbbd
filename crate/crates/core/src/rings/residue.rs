use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::{Ring, RingTag};
use crate::error::{Error, Result};

/// The residue ring `Z/m` for a modulus `m >= 2` (not necessarily prime).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Residues {
    modulus: u64,
}

impl Residues {
    pub fn new(modulus: u64) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::invalid(format!(
                "residue modulus must be >= 2, got {modulus}"
            )));
        }
        if modulus > u32::MAX as u64 {
            return Err(Error::invalid(format!(
                "residue modulus {modulus} too large"
            )));
        }
        Ok(Residues { modulus })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    fn reduce_int(&self, n: &BigInt) -> u64 {
        n.mod_floor(&BigInt::from(self.modulus))
            .to_u64()
            .expect("residue fits")
    }

    /// Canonical representative lifted to an integer in `[0, m)`.
    pub fn lift(&self, a: &u64) -> BigInt {
        BigInt::from(*a)
    }
}

impl Ring for Residues {
    type Elem = u64;

    fn tag(&self) -> RingTag {
        RingTag::Residue(self.modulus)
    }

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1
    }

    fn from_int(&self, n: &BigInt) -> u64 {
        self.reduce_int(n)
    }

    fn from_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.modulus as i64) as u64
    }

    fn from_rational(&self, q: &BigRational) -> Result<u64> {
        let num = self.reduce_int(q.numer());
        let den = self.reduce_int(q.denom());
        Ok(self.mul(&num, &self.inv(&den)?))
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.modulus
    }

    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.modulus - b) % self.modulus
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.modulus as u128) as u64
    }

    fn neg(&self, a: &u64) -> u64 {
        (self.modulus - a) % self.modulus
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn inv(&self, a: &u64) -> Result<u64> {
        let m = self.modulus as i64;
        let ext = (*a as i64).extended_gcd(&m);
        if ext.gcd != 1 {
            return Err(Error::NonUnit {
                element: a.to_string(),
                gcd: BigInt::from(ext.gcd),
            });
        }
        Ok(ext.x.rem_euclid(m) as u64)
    }

    fn to_rational(&self, _a: &u64) -> Option<BigRational> {
        None
    }

    fn format_elem(&self, a: &u64) -> String {
        a.to_string()
    }

    fn parse_elem(&self, s: &str) -> Result<u64> {
        let v: u64 = s
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad residue `{s}`")))?;
        if v >= self.modulus {
            return Err(Error::Parse(format!(
                "residue {v} not reduced mod {}",
                self.modulus
            )));
        }
        Ok(v)
    }

    fn mul_add_assign(&self, acc: &mut u64, a: &u64, b: &u64) {
        *acc = ((*acc as u128 + *a as u128 * *b as u128) % self.modulus as u128) as u64;
    }
}
