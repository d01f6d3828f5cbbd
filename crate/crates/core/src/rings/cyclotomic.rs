use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{Rationals, Ring, RingTag};
use crate::error::{Error, Result};
use crate::linalg;

/// Euler's totient.
pub fn euler_phi(n: u64) -> u64 {
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// `Phi_n(x)` as integer coefficients, lowest degree first, obtained by dividing
/// `x^n - 1` by `Phi_d` for every proper divisor `d` of `n`.
pub fn cyclotomic_polynomial(n: u64) -> Vec<BigInt> {
    assert!(n >= 1, "cyclotomic polynomial of order 0");
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            num = div_exact_monic(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

fn div_exact_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut quot = vec![BigInt::zero(); qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn].clone();
        if c.is_zero() {
            continue;
        }
        for (j, d) in den.iter().enumerate() {
            rem[i + j] -= &c * d;
        }
        quot[i] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero), "inexact cyclotomic division");
    quot
}

/// An element `sum coeffs[i] zeta_N^i` of `B[zeta_N]`, always reduced modulo `Phi_N`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycElement<E> {
    pub conductor: u64,
    pub coeffs: Vec<E>,
}

/// The cyclotomic ring `B[x] / Phi_N(x)` over a non-cyclotomic base ring.
#[derive(Clone, Debug)]
pub struct Cyclotomic<B: Ring> {
    conductor: u64,
    base: B,
    /// `Phi_N` over the base, lowest degree first; monic.
    modulus: Arc<Vec<B::Elem>>,
}

impl<B: Ring> PartialEq for Cyclotomic<B> {
    fn eq(&self, other: &Self) -> bool {
        self.conductor == other.conductor && self.base == other.base
    }
}

impl<B: Ring> Cyclotomic<B> {
    pub fn new(conductor: u64, base: B) -> Result<Self> {
        if conductor == 0 {
            return Err(Error::invalid("cyclotomic conductor must be >= 1"));
        }
        if matches!(base.tag(), RingTag::Cyclotomic { .. }) {
            return Err(Error::invalid(
                "cyclotomic base ring must not itself be cyclotomic",
            ));
        }
        let modulus = cyclotomic_polynomial(conductor)
            .iter()
            .map(|c| base.from_int(c))
            .collect();
        Ok(Cyclotomic {
            conductor,
            base,
            modulus: Arc::new(modulus),
        })
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn base(&self) -> &B {
        &self.base
    }

    /// `phi(N)`, the number of coordinates of an element.
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus_poly(&self) -> &[B::Elem] {
        &self.modulus
    }

    /// Reduces an arbitrary coefficient vector modulo `Phi_N`.
    pub fn reduce(&self, mut v: Vec<B::Elem>) -> CycElement<B::Elem> {
        let d = self.degree();
        for i in (d..v.len()).rev() {
            let c = v[i].clone();
            if self.base.is_zero(&c) {
                continue;
            }
            for j in 0..=d {
                let t = self.base.mul(&c, &self.modulus[j]);
                v[i - d + j] = self.base.sub(&v[i - d + j], &t);
            }
        }
        v.resize(d, self.base.zero());
        v.truncate(d);
        CycElement {
            conductor: self.conductor,
            coeffs: v,
        }
    }

    /// `zeta_N^a` for any integer `a`.
    pub fn root_power(&self, a: i64) -> CycElement<B::Elem> {
        let n = self.conductor as i64;
        let e = a.rem_euclid(n) as usize;
        let mut v = vec![self.base.zero(); e + 1];
        v[e] = self.base.one();
        self.reduce(v)
    }

    pub fn from_base(&self, b: B::Elem) -> CycElement<B::Elem> {
        let mut v = vec![self.base.zero(); self.degree()];
        v[0] = b;
        CycElement {
            conductor: self.conductor,
            coeffs: v,
        }
    }

    /// Maps an element of `B[zeta_M]` into this ring via `zeta_M -> zeta_N^(N/M)`.
    pub fn embed(
        &self,
        x: &CycElement<B::Elem>,
        from: &Cyclotomic<B>,
    ) -> Result<CycElement<B::Elem>> {
        if !self.conductor.is_multiple_of(from.conductor) {
            return Err(Error::invalid(format!(
                "cannot embed conductor {} into conductor {}",
                from.conductor, self.conductor
            )));
        }
        let step = (self.conductor / from.conductor) as usize;
        let n = self.conductor as usize;
        let mut v = vec![self.base.zero(); n];
        for (i, c) in x.coeffs.iter().enumerate() {
            let e = (i * step) % n;
            v[e] = self.base.add(&v[e], c);
        }
        Ok(self.reduce(v))
    }

    /// The image under `zeta -> zeta^-1` (complex conjugation).
    pub fn conjugate(&self, x: &CycElement<B::Elem>) -> CycElement<B::Elem> {
        let n = self.conductor as usize;
        let mut v = vec![self.base.zero(); n];
        for (i, c) in x.coeffs.iter().enumerate() {
            let e = (n - i % n) % n;
            v[e] = self.base.add(&v[e], c);
        }
        self.reduce(v)
    }

    /// The base-ring value when `x` has no irrational component.
    pub fn base_part(&self, x: &CycElement<B::Elem>) -> Option<B::Elem> {
        if x.coeffs[1..].iter().all(|c| self.base.is_zero(c)) {
            Some(x.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Column `i` is `x * zeta^i`; solving against it inverts `x`.
    fn multiplication_matrix(&self, x: &CycElement<B::Elem>) -> Vec<Vec<B::Elem>> {
        let d = self.degree();
        let mut cols = Vec::with_capacity(d);
        let mut cur = x.clone();
        for _ in 0..d {
            cols.push(cur.coeffs.clone());
            let mut shifted = vec![self.base.zero()];
            shifted.extend(cur.coeffs.iter().cloned());
            cur = self.reduce(shifted);
        }
        (0..d)
            .map(|r| (0..d).map(|c| cols[c][r].clone()).collect())
            .collect()
    }
}

impl<B: Ring> Ring for Cyclotomic<B> {
    type Elem = CycElement<B::Elem>;

    fn tag(&self) -> RingTag {
        RingTag::Cyclotomic {
            conductor: self.conductor,
            base: Box::new(self.base.tag()),
        }
    }

    fn zero(&self) -> Self::Elem {
        CycElement {
            conductor: self.conductor,
            coeffs: vec![self.base.zero(); self.degree()],
        }
    }

    fn one(&self) -> Self::Elem {
        self.from_base(self.base.one())
    }

    fn from_int(&self, n: &BigInt) -> Self::Elem {
        self.from_base(self.base.from_int(n))
    }

    fn from_rational(&self, q: &BigRational) -> Result<Self::Elem> {
        Ok(self.from_base(self.base.from_rational(q)?))
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(x, y)| self.base.add(x, y))
            .collect();
        CycElement {
            conductor: self.conductor,
            coeffs,
        }
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(x, y)| self.base.sub(x, y))
            .collect();
        CycElement {
            conductor: self.conductor,
            coeffs,
        }
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let d = self.degree();
        if d == 1 {
            return self.from_base(self.base.mul(&a.coeffs[0], &b.coeffs[0]));
        }
        let mut v = vec![self.base.zero(); 2 * d - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if self.base.is_zero(x) {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                self.base.mul_add_assign(&mut v[i + j], x, y);
            }
        }
        self.reduce(v)
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        let coeffs = a.coeffs.iter().map(|x| self.base.neg(x)).collect();
        CycElement {
            conductor: self.conductor,
            coeffs,
        }
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.coeffs.iter().all(|c| self.base.is_zero(c))
    }

    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem> {
        let not_inv = || Error::NotInvertible {
            element: self.format_elem(a),
            ring: self.tag().to_string(),
        };
        if self.is_zero(a) {
            return Err(not_inv());
        }
        let d = self.degree();
        let mut rhs = vec![self.base.zero(); d];
        rhs[0] = self.base.one();
        let matrix = self.multiplication_matrix(a);
        let rational: Option<Vec<Vec<BigRational>>> = matrix
            .iter()
            .map(|row| row.iter().map(|c| self.base.to_rational(c)).collect())
            .collect();
        let coeffs = match rational {
            // characteristic zero: Q(zeta_N) is a field, lift back to the base
            Some(qm) => {
                let qrhs: Vec<BigRational> = rhs
                    .iter()
                    .map(|c| self.base.to_rational(c).unwrap())
                    .collect();
                let sol = linalg::solve(&Rationals, qm, qrhs)?;
                if !sol.consistent || sol.rank < d {
                    return Err(not_inv());
                }
                sol.solution
                    .iter()
                    .map(|c| self.base.from_rational(c))
                    .collect::<Result<Vec<_>>>()
                    .map_err(|_| not_inv())?
            }
            None => {
                let sol = linalg::solve(&self.base, matrix, rhs)?;
                if !sol.consistent || sol.rank < d {
                    return Err(not_inv());
                }
                sol.solution
            }
        };
        Ok(CycElement {
            conductor: self.conductor,
            coeffs,
        })
    }

    fn to_rational(&self, a: &Self::Elem) -> Option<BigRational> {
        self.base_part(a).and_then(|b| self.base.to_rational(&b))
    }

    fn format_elem(&self, a: &Self::Elem) -> String {
        a.coeffs
            .iter()
            .map(|c| self.base.format_elem(c))
            .collect::<Vec<_>>()
            .join(",")
    }

    fn parse_elem(&self, s: &str) -> Result<Self::Elem> {
        let coeffs = s
            .trim()
            .split(',')
            .map(|p| self.base.parse_elem(p))
            .collect::<Result<Vec<_>>>()?;
        if coeffs.len() != self.degree() {
            return Err(Error::Parse(format!(
                "cyclotomic element needs {} coordinates, got {}",
                self.degree(),
                coeffs.len()
            )));
        }
        Ok(CycElement {
            conductor: self.conductor,
            coeffs,
        })
    }
}
