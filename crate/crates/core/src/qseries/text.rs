//! Line-oriented text format.
//!
//! ```text
//! ring=<tag> val=<v> trunc=<T>
//! <coefficient of q^v>
//! ...
//! <coefficient of q^T>
//! ```

use std::fmt::Write;

use super::QSeries;
use crate::error::{Error, Result};
use crate::rings::{Ring, RingTag};

impl<R: Ring> QSeries<R> {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(
            out,
            "ring={} val={} trunc={}",
            self.ring.tag(),
            self.order(),
            self.trunc
        )
        .unwrap();
        for c in &self.coeffs {
            writeln!(out, "{}", self.ring.format_elem(c)).unwrap();
        }
        out
    }
}

fn header_field<'a>(header: &'a str, key: &str) -> Result<&'a str> {
    header
        .split_whitespace()
        .find_map(|f| f.strip_prefix(key).and_then(|r| r.strip_prefix('=')))
        .ok_or_else(|| Error::Parse(format!("header lacks `{key}=`")))
}

/// Parses the text format, checking that the header names `ring`.
pub fn parse_series<R: Ring>(ring: &R, s: &str) -> Result<QSeries<R>> {
    let mut lines = s.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty series text".into()))?;
    let tag: RingTag = header_field(header, "ring")?.parse()?;
    if tag != ring.tag() {
        return Err(Error::RingMismatch {
            left: tag.to_string(),
            right: ring.tag().to_string(),
        });
    }
    let int = |key| -> Result<i64> {
        header_field(header, key)?
            .parse()
            .map_err(|_| Error::Parse(format!("bad `{key}` in header")))
    };
    let val = int("val")?;
    let trunc = int("trunc")?;
    let coeffs = lines
        .filter(|l| !l.trim().is_empty())
        .map(|l| ring.parse_elem(l))
        .collect::<Result<Vec<_>>>()?;
    let expected = (trunc - val + 1).max(0) as usize;
    if coeffs.len() != expected {
        return Err(Error::Parse(format!(
            "expected {expected} coefficient lines, got {}",
            coeffs.len()
        )));
    }
    let s = QSeries::new(ring.clone(), val, coeffs, trunc);
    if s.order() != val {
        return Err(Error::Parse("leading coefficient line is zero".into()));
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::eisenstein_e;
    use crate::rings::{Cyclotomic, Integers, Rationals, Residues};

    #[test]
    fn round_trips() {
        let x = QSeries::from_i64s(Integers, -1, &[3, 0, -7], 4);
        let text = x.to_text();
        assert!(text.starts_with("ring=integer val=-1 trunc=4\n3\n0\n-7\n"));
        assert_eq!(parse_series(&Integers, &text).unwrap(), x);

        let e2 = eisenstein_e(4, 6)
            .unwrap()
            .scale(&num_rational::BigRational::new(1.into(), 7.into()));
        assert_eq!(parse_series(&Rationals, &e2.to_text()).unwrap(), e2);

        let r = Residues::new(121).unwrap();
        let y = QSeries::from_i64s(r, 0, &[120, 11], 3);
        assert!(y.to_text().starts_with("ring=residue(121)"));
        assert_eq!(parse_series(&r, &y.to_text()).unwrap(), y);

        let c = Cyclotomic::new(5, Integers).unwrap();
        let z = QSeries::new(c.clone(), 0, vec![c.root_power(1), c.root_power(4)], 1);
        assert!(z.to_text().contains("0,1,0,0\n"));
        assert_eq!(parse_series(&c, &z.to_text()).unwrap(), z);

        let empty = QSeries::zero(Integers, 3);
        assert_eq!(parse_series(&Integers, &empty.to_text()).unwrap(), empty);
    }

    #[test]
    fn rejects_wrong_ring_and_garbage() {
        let x = QSeries::from_i64s(Integers, 0, &[1], 2);
        assert!(parse_series(&Rationals, &x.to_text()).is_err());
        assert!(parse_series(&Integers, "ring=integer val=0 trunc=1\n1\n").is_err());
        assert!(parse_series(&Integers, "").is_err());
    }
}
