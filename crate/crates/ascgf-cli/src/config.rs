//! Key-value config file for reproducible batch runs. Recognized keys:
//!
//! ```text
//! # comment lines start with '#'
//! order = 30              # default series truncation order
//! lattice_bound = 729     # subgroup-enumeration refusal bound
//! bruteforce_guard = 1000000000
//! ```
//!
//! Flags always override config values.

use std::fs;

#[derive(Debug, Default, Clone)]
pub struct Config {
    pub order: Option<usize>,
    pub lattice_bound: Option<u128>,
    pub bruteforce_guard: Option<u128>,
}

impl Config {
    pub fn load(path: &str) -> Result<Self, String> {
        let text =
            fs::read_to_string(path).map_err(|e| format!("cannot read config {path}: {e}"))?;
        Self::parse(&text).map_err(|msg| format!("{path}: {msg}"))
    }

    pub fn parse(text: &str) -> Result<Self, String> {
        let mut config = Config::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("line {}: expected key = value", lineno + 1))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "order" => {
                    config.order = Some(
                        value
                            .parse()
                            .map_err(|_| format!("line {}: invalid order", lineno + 1))?,
                    )
                }
                "lattice_bound" => {
                    config.lattice_bound = Some(
                        value
                            .parse()
                            .map_err(|_| format!("line {}: invalid lattice_bound", lineno + 1))?,
                    )
                }
                "bruteforce_guard" => {
                    config.bruteforce_guard =
                        Some(value.parse().map_err(|_| {
                            format!("line {}: invalid bruteforce_guard", lineno + 1)
                        })?)
                }
                other => return Err(format!("line {}: unknown key {other:?}", lineno + 1)),
            }
        }
        Ok(config)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_rejects() {
        let c = Config::parse("order = 12\n# note\nlattice_bound=64\n").unwrap();
        assert_eq!(c.order, Some(12));
        assert_eq!(c.lattice_bound, Some(64));
        assert_eq!(c.bruteforce_guard, None);
        assert!(Config::parse("bogus = 3").is_err());
        assert!(Config::parse("order 3").is_err());
    }
}
