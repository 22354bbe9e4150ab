//! `key = value` config files. `#` starts a comment; blank lines are ignored.
//!
//! Recognised keys: `abs_tol`, `rel_tol`, `max_subdivisions`,
//! `truncation_tail_tol`, `format` (`csv` | `json`), `parallelism`,
//! `no_timing` (`true` | `false`).

use super::Format;

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigFile {
    pub abs_tol: Option<f64>,
    pub rel_tol: Option<f64>,
    pub max_subdivisions: Option<usize>,
    pub truncation_tail_tol: Option<f64>,
    pub format: Option<Format>,
    pub parallelism: Option<usize>,
    pub no_timing: Option<bool>,
}

pub fn parse_config(text: &str) -> Result<ConfigFile, String> {
    let mut cfg = ConfigFile::default();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let lineno = n + 1;
        let Some((key, value)) = line.split_once('=') else {
            return Err(format!("config line {lineno}: expected key = value"));
        };
        let (key, value) = (key.trim(), value.trim());
        let bad = |what: &str| format!("config line {lineno}: {key} expects {what}, got `{value}`");
        match key {
            "abs_tol" => cfg.abs_tol = Some(value.parse().map_err(|_| bad("a number"))?),
            "rel_tol" => cfg.rel_tol = Some(value.parse().map_err(|_| bad("a number"))?),
            "truncation_tail_tol" => cfg.truncation_tail_tol = Some(value.parse().map_err(|_| bad("a number"))?),
            "max_subdivisions" => cfg.max_subdivisions = Some(value.parse().map_err(|_| bad("an integer"))?),
            "parallelism" => cfg.parallelism = Some(value.parse().map_err(|_| bad("an integer"))?),
            "no_timing" => cfg.no_timing = Some(value.parse().map_err(|_| bad("true or false"))?),
            "format" => {
                cfg.format = Some(match value {
                    "csv" => Format::Csv,
                    "json" => Format::Json,
                    _ => return Err(bad("csv or json")),
                })
            }
            _ => return Err(format!("config line {lineno}: unknown key `{key}`")),
        }
    }
    Ok(cfg)
}
