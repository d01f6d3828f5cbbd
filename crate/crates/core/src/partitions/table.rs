use std::collections::BTreeMap;
use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A table of counts indexed by `(n, m)`.
///
/// When `modulus` is set, `m` is a residue class `r` in `0..modulus`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatTable {
    pub statistic: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<u64>,
    pub rows: Vec<StatRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatRow {
    pub n: u32,
    pub m: i64,
    pub count: i64,
}

impl StatTable {
    pub fn new(statistic: &str) -> Self {
        StatTable {
            statistic: statistic.to_string(),
            modulus: None,
            rows: Vec::new(),
        }
    }

    pub fn with_modulus(statistic: &str, t: u64) -> Self {
        StatTable {
            statistic: statistic.to_string(),
            modulus: Some(t),
            rows: Vec::new(),
        }
    }

    pub fn insert(&mut self, n: u32, m: i64, count: i64) {
        match self.rows.binary_search_by(|r| (r.n, r.m).cmp(&(n, m))) {
            Ok(i) => self.rows[i].count = count,
            Err(i) => self.rows.insert(i, StatRow { n, m, count }),
        }
    }

    pub fn get(&self, n: u32, m: i64) -> i64 {
        self.rows
            .binary_search_by(|r| (r.n, r.m).cmp(&(n, m)))
            .map(|i| self.rows[i].count)
            .unwrap_or(0)
    }

    /// `m -> count` for a fixed `n`.
    pub fn row(&self, n: u32) -> BTreeMap<i64, i64> {
        self.rows
            .iter()
            .filter(|r| r.n == n)
            .map(|r| (r.m, r.count))
            .collect()
    }

    pub fn total(&self, n: u32) -> i64 {
        self.rows.iter().filter(|r| r.n == n).map(|r| r.count).sum()
    }

    /// Label used in the first CSV column, e.g. `N` or `NF2 mod 5`.
    pub fn label(&self) -> String {
        match self.modulus {
            Some(t) => format!("{} mod {t}", self.statistic),
            None => self.statistic.clone(),
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("statistic,n,m,count\n");
        let label = self.label();
        for r in &self.rows {
            let _ = writeln!(out, "{label},{},{},{}", r.n, r.m, r.count);
        }
        out
    }

    pub fn from_csv(s: &str) -> Result<Self> {
        let mut lines = s.lines().filter(|l| !l.trim().is_empty());
        if lines.next().map(str::trim) != Some("statistic,n,m,count") {
            return Err(Error::Parse("missing CSV header".into()));
        }
        let mut table: Option<StatTable> = None;
        for line in lines {
            let f: Vec<&str> = line.split(',').map(str::trim).collect();
            if f.len() != 4 {
                return Err(Error::Parse(format!("bad CSV row `{line}`")));
            }
            let num = |x: &str| {
                x.parse::<i64>()
                    .map_err(|_| Error::Parse(format!("bad number `{x}`")))
            };
            let t = table.get_or_insert_with(|| match f[0].split_once(" mod ") {
                Some((name, t)) => match t.parse() {
                    Ok(t) => StatTable::with_modulus(name, t),
                    Err(_) => StatTable::new(f[0]),
                },
                None => StatTable::new(f[0]),
            });
            if t.label() != f[0] {
                return Err(Error::Parse("mixed statistics in one table".into()));
            }
            let n = u32::try_from(num(f[1])?).map_err(|_| Error::Parse("negative n".into()))?;
            t.insert(n, num(f[2])?, num(f[3])?);
        }
        table.ok_or_else(|| Error::Parse("empty table".into()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_layout() {
        let mut t = StatTable::with_modulus("NF2", 5);
        t.insert(2, 0, 1);
        t.insert(1, 4, 0);
        assert_eq!(
            t.to_csv(),
            "statistic,n,m,count\nNF2 mod 5,1,4,0\nNF2 mod 5,2,0,1\n"
        );
        assert_eq!(StatTable::from_csv(&t.to_csv()).unwrap(), t);
        assert_eq!(StatTable::from_json(&t.to_json()).unwrap(), t);
        assert!(StatTable::from_csv("n,m\n").is_err());
    }
}
