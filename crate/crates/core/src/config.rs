//! Desk-scale bounds, loadable from a `key = value` text file.
//!
//! ```text
//! # comments and blank lines are ignored
//! ordinal_bound = 64
//! successor_bound = 10000
//! ```

use std::path::Path;

use thiserror::Error;

/// Environment variable naming a configuration file for the CLI.
pub const CONFIG_ENV: &str = "AQARITH_CONFIG";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Config {
    /// Largest von Neumann ordinal that may be built.
    pub ordinal_bound: u64,
    /// Largest right operand for `successor_chain_add`.
    pub successor_bound: u64,
    /// Natural additions whose smaller operand is at most this are expanded
    /// into single successor steps; larger ones use one column-addition step.
    pub unary_add_limit: u64,
    /// Peano numerals longer than this render as `S^n(0)`.
    pub peano_render_cap: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            ordinal_bound: 64,
            successor_bound: 10_000,
            unary_add_limit: 1_000,
            peano_render_cap: 64,
        }
    }
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("config line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("reading config: {0}")]
    Io(#[from] std::io::Error),
}

impl Config {
    pub fn parse(text: &str) -> Result<Config, ConfigError> {
        let mut config = Config::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |message: String| ConfigError::Syntax {
                line: i + 1,
                message,
            };
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| err("expected key = value".into()))?;
            let value: u64 = value
                .trim()
                .parse()
                .map_err(|_| err(format!("value of {} is not a natural number", key.trim())))?;
            let slot = match key.trim() {
                "ordinal_bound" => &mut config.ordinal_bound,
                "successor_bound" => &mut config.successor_bound,
                "unary_add_limit" => &mut config.unary_add_limit,
                "peano_render_cap" => &mut config.peano_render_cap,
                other => return Err(err(format!("unknown key {other}"))),
            };
            *slot = value;
        }
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Config, ConfigError> {
        Config::parse(&std::fs::read_to_string(path)?)
    }

    /// Loads the file named by `AQARITH_CONFIG`, or the defaults when the
    /// variable is unset.
    pub fn from_env() -> Result<Config, ConfigError> {
        match std::env::var_os(CONFIG_ENV) {
            Some(path) => Config::load(Path::new(&path)),
            None => Ok(Config::default()),
        }
    }
}
