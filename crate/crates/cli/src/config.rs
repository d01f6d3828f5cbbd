//! Resolved run configuration: command-line flags layered over an optional `key=value` file.

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    SeriesText,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "series-text" => Ok(Format::SeriesText),
            _ => Err(format!("unknown format `{s}`")),
        }
    }
}

/// Flags shared by every subcommand. Each one may also come from the config file
/// under the same name (`n-max = 30`); a flag given on the command line wins.
#[derive(Clone, Debug, Default, clap::Args)]
pub struct Params {
    /// Series truncation: coefficients are exact through q^TRUNC
    #[arg(long)]
    pub trunc: Option<i64>,
    /// Largest n for tables and progression checks
    #[arg(long)]
    pub n_max: Option<u64>,
    /// Marking count k (Durfee statistics) or moment index (eta_k)
    #[arg(long)]
    pub k: Option<u32>,
    /// Moment order j, or the power l^j in a scan
    #[arg(long)]
    pub j: Option<u32>,
    /// Residue modulus t for NF_k(r, t; n) and the root identities
    #[arg(long)]
    pub t: Option<u64>,
    /// Prime l
    #[arg(long)]
    pub ell: Option<u64>,
    /// Twist numerator a in a/c
    #[arg(long)]
    pub a: Option<u64>,
    /// Twist denominator c in a/c
    #[arg(long)]
    pub c: Option<u64>,
    /// Reduce output coefficients modulo this integer
    #[arg(long)]
    pub modulus: Option<u64>,
    /// Progression moduli A to scan, comma separated
    #[arg(long = "A", value_delimiter = ',')]
    pub moduli: Option<Vec<u64>>,
    #[arg(long)]
    pub format: Option<Format>,
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Cross-check generating-function output against brute-force enumeration
    #[arg(long)]
    pub checked: bool,
}

fn parse_file(path: &Path) -> Result<HashMap<String, String>, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    let mut out = HashMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| {
            CliError::Config(format!("{}:{}: expected key=value", path.display(), i + 1))
        })?;
        out.insert(k.trim().replace('_', "-"), v.trim().to_string());
    }
    Ok(out)
}

fn fill<T: FromStr>(
    slot: &mut Option<T>,
    file: &HashMap<String, String>,
    key: &str,
) -> Result<(), CliError> {
    if slot.is_none() {
        if let Some(v) = file.get(key) {
            *slot = Some(
                v.parse()
                    .map_err(|_| CliError::Config(format!("bad value `{v}` for `{key}`")))?,
            );
        }
    }
    Ok(())
}

const KEYS: &[&str] = &[
    "trunc", "n-max", "k", "j", "t", "ell", "a", "c", "modulus", "A", "format", "output",
    "checked", "threads",
];

impl Params {
    /// Fills every unset flag from the config file.
    pub fn merge_file(mut self, path: Option<&Path>) -> Result<Self, CliError> {
        let Some(path) = path else { return Ok(self) };
        let file = parse_file(path)?;
        if let Some(bad) = file.keys().find(|k| !KEYS.contains(&k.as_str())) {
            return Err(CliError::Config(format!("unknown config key `{bad}`")));
        }
        fill(&mut self.trunc, &file, "trunc")?;
        fill(&mut self.n_max, &file, "n-max")?;
        fill(&mut self.k, &file, "k")?;
        fill(&mut self.j, &file, "j")?;
        fill(&mut self.t, &file, "t")?;
        fill(&mut self.ell, &file, "ell")?;
        fill(&mut self.a, &file, "a")?;
        fill(&mut self.c, &file, "c")?;
        fill(&mut self.modulus, &file, "modulus")?;
        fill(&mut self.format, &file, "format")?;
        fill(&mut self.output, &file, "output")?;
        if self.moduli.is_none() {
            if let Some(v) = file.get("A") {
                let list = v
                    .split(',')
                    .map(|x| x.trim().parse::<u64>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|_| CliError::Config(format!("bad value `{v}` for `A`")))?;
                self.moduli = Some(list);
            }
        }
        if !self.checked {
            if let Some(v) = file.get("checked") {
                self.checked = v
                    .parse()
                    .map_err(|_| CliError::Config(format!("bad value `{v}` for `checked`")))?;
            }
        }
        if let Some(v) = file.get("threads") {
            if std::env::var_os(crate::THREADS_ENV).is_none() {
                let n: usize = v
                    .parse()
                    .map_err(|_| CliError::Config(format!("bad value `{v}` for `threads`")))?;
                crate::set_threads(n)?;
            }
        }
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if matches!(self.trunc, Some(t) if t < 0) {
            return Err(CliError::Config("trunc must be nonnegative".into()));
        }
        for (name, v) in [
            ("n-max", self.n_max),
            ("t", self.t),
            ("ell", self.ell),
            ("c", self.c),
            ("modulus", self.modulus),
        ] {
            if v == Some(0) {
                return Err(CliError::Config(format!("{name} must be positive")));
            }
        }
        if matches!(&self.moduli, Some(m) if m.is_empty() || m.contains(&0)) {
            return Err(CliError::Config("A must list positive moduli".into()));
        }
        Ok(())
    }

    pub fn require<T: Copy>(v: Option<T>, name: &str) -> Result<T, CliError> {
        v.ok_or_else(|| CliError::Config(format!("missing --{name}")))
    }
}
