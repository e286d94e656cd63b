//! Run configuration: built-in defaults, overridden by a `key = value`
//! file, overridden in turn by command-line flags. The cache directory
//! additionally falls back to the `PADIC_ZETA_CACHE_DIR` environment
//! variable before its default.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use crate::emit::Format;

const RANGE_KEYS: &[&str] = &[
    "recurrence",
    "determinant",
    "telescoping",
    "double_sum",
    "quad_sum",
    "denominators",
    "valuation_bound",
    "archimedean",
    "zeta3_coincidence",
    "table",
    "measure",
];

pub struct Config {
    pub format: Option<Format>,
    pub cache_dir: Option<PathBuf>,
    n_max: BTreeMap<String, u64>,
    /// The Archimedean comparison tolerance is `10^-exponent`.
    pub archimedean_tolerance_exponent: u32,
    /// Sample count for the divided-difference probe per index.
    pub valuation_probes: u64,
}

impl Default for Config {
    fn default() -> Config {
        Config {
            format: None,
            cache_dir: None,
            n_max: BTreeMap::new(),
            archimedean_tolerance_exponent: 12,
            valuation_probes: 12,
        }
    }
}

pub fn load(path: Option<&Path>) -> Result<Config, String> {
    let mut config = Config::default();
    let Some(path) = path else {
        return Ok(config);
    };
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
    for (index, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(format!(
                "{}:{}: expected `key = value`, got {line:?}",
                path.display(),
                index + 1
            ));
        };
        let (key, value) = (key.trim(), value.trim());
        match key {
            "format" => {
                config.format = Some(match value {
                    "text" => Format::Text,
                    "json" => Format::Json,
                    "csv" => Format::Csv,
                    other => return Err(format!("unknown format {other:?}")),
                })
            }
            "cache_dir" => config.cache_dir = Some(PathBuf::from(value)),
            "archimedean.tolerance_exponent" => {
                config.archimedean_tolerance_exponent = parse(value)?
            }
            "valuation.probes" => config.valuation_probes = parse(value)?,
            _ => match key.strip_prefix("n_max.") {
                Some(range) if RANGE_KEYS.contains(&range) => {
                    config.n_max.insert(range.to_string(), parse(value)?);
                }
                _ => return Err(format!("unknown config key {key:?}")),
            },
        }
    }
    Ok(config)
}

impl Config {
    /// Resolve a sweep range: flag, then config, then the built-in default.
    /// Zero is rejected everywhere (ranges are positive).
    pub fn n_max(&self, range: &str, flag: Option<u64>, default: u64) -> Result<u64, String> {
        debug_assert!(RANGE_KEYS.contains(&range));
        let n = flag
            .or_else(|| self.n_max.get(range).copied())
            .unwrap_or(default);
        if n == 0 {
            return Err(format!("the {range} range must be positive"));
        }
        Ok(n)
    }

    pub fn cache_dir(&self, flag: Option<PathBuf>) -> PathBuf {
        flag.or_else(|| self.cache_dir.clone())
            .or_else(|| std::env::var_os("PADIC_ZETA_CACHE_DIR").map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from(".padic-zeta-cache"))
    }
}

fn parse<T: std::str::FromStr>(value: &str) -> Result<T, String>
where
    T::Err: std::fmt::Display,
{
    value
        .parse()
        .map_err(|e| format!("invalid value {value:?}: {e}"))
}
