use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use charvar_core::field::is_prime;
use charvar_core::Limits;
use serde::{Deserialize, Serialize};

/// Problems detected before any counting starts. Always exit code 2.
#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ConfigError {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u32),
    #[error("prime {0} is listed twice")]
    DuplicatePrime(u32),
    #[error("prime {prime} exceeds the enumeration bound {bound}")]
    PrimeAboveBound { prime: u32, bound: u32 },
    #[error("the prime panel is empty")]
    EmptyPanel,
    #[error("thread count must be at least 1")]
    ZeroThreads,
    #[error("cannot parse {what} from {text:?}")]
    Parse { what: &'static str, text: String },
    #[error("{0}")]
    Insufficient(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Text,
    Json,
    Csv,
}

/// Which `λ` values a parametrised target is evaluated at.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
#[derive(Default)]
pub enum LambdaPolicy {
    /// Every `λ ∉ {0, ±1}` at each prime.
    #[default]
    All,
    /// The listed values, at the primes where they are admissible.
    Explicit(Vec<u32>),
}

impl LambdaPolicy {
    /// Values used at `p`, ascending.
    pub fn at(&self, p: u32) -> Vec<u32> {
        match self {
            LambdaPolicy::All => (2..p - 1).collect(),
            LambdaPolicy::Explicit(v) => {
                v.iter().copied().filter(|&l| l >= 2 && l + 1 < p).collect()
            }
        }
    }
}

impl FromStr for LambdaPolicy {
    type Err = ConfigError;
    fn from_str(s: &str) -> Result<Self, ConfigError> {
        if s.trim().eq_ignore_ascii_case("all") {
            return Ok(LambdaPolicy::All);
        }
        let mut v = parse_list(s, "lambda values")?;
        v.sort_unstable();
        v.dedup();
        Ok(LambdaPolicy::Explicit(v))
    }
}

impl fmt::Display for LambdaPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LambdaPolicy::All => f.write_str("all"),
            LambdaPolicy::Explicit(v) => {
                let parts: Vec<String> = v.iter().map(u32::to_string).collect();
                f.write_str(&parts.join(","))
            }
        }
    }
}

fn parse_list(s: &str, what: &'static str) -> Result<Vec<u32>, ConfigError> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse().map_err(|_| ConfigError::Parse {
                what,
                text: t.to_string(),
            })
        })
        .collect()
}

/// `5,7,11` or inclusive ranges such as `5..31` (every prime in the range);
/// both forms can be mixed.
pub fn parse_primes(s: &str) -> Result<Vec<u32>, ConfigError> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        if let Some((a, b)) = part.split_once("..") {
            let bad = || ConfigError::Parse {
                what: "a prime range",
                text: part.to_string(),
            };
            let lo: u32 = a.trim().parse().map_err(|_| bad())?;
            let hi: u32 = b
                .trim_start_matches('=')
                .trim()
                .parse()
                .map_err(|_| bad())?;
            out.extend((lo.max(3)..=hi).filter(|&n| is_prime(n as u64)));
        } else {
            out.push(part.parse().map_err(|_| ConfigError::Parse {
                what: "a prime",
                text: part.to_string(),
            })?);
        }
    }
    Ok(out)
}

/// Everything a run depends on. Two runs with equal configs produce
/// byte-identical reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub primes: Vec<u32>,
    pub limits: Limits,
    pub threads: usize,
    pub cache_dir: Option<PathBuf>,
    pub format: OutputFormat,
    pub lambdas: LambdaPolicy,
    /// Record wall times; off by default so that reports are reproducible.
    pub timings: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            primes: Vec::new(),
            limits: Limits::default(),
            threads: 1,
            cache_dir: None,
            format: OutputFormat::Json,
            lambdas: LambdaPolicy::All,
            timings: false,
        }
    }
}

impl RunConfig {
    /// Sorts the panel and checks the invariants.
    pub fn validated(mut self) -> Result<Self, ConfigError> {
        if self.threads == 0 {
            return Err(ConfigError::ZeroThreads);
        }
        self.primes.sort_unstable();
        for w in self.primes.windows(2) {
            if w[0] == w[1] {
                return Err(ConfigError::DuplicatePrime(w[0]));
            }
        }
        for &p in &self.primes {
            if p < 3 || !is_prime(p as u64) {
                return Err(ConfigError::NotOddPrime(p));
            }
            if p > self.limits.enumeration_bound {
                return Err(ConfigError::PrimeAboveBound {
                    prime: p,
                    bound: self.limits.enumeration_bound,
                });
            }
        }
        Ok(self)
    }
}

/// `{5, …, 31}`.
pub fn block_panel() -> Vec<u32> {
    parse_primes("5..31").expect("static range")
}

/// `{5, …, 73}`: enough primes in each class modulo 4 to fit degree-7
/// branches separately.
pub fn wide_panel() -> Vec<u32> {
    parse_primes("5..73").expect("static range")
}
