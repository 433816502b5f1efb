//! Run configuration read from a TOML file; command-line flags take precedence.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::qcalc::SeriesPolicy;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Clone, Debug, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesSection {
    pub rel_tol: Option<f64>,
    pub max_terms: Option<usize>,
}

/// ```toml
/// format = "json"        # or "csv"
/// output = "out.json"    # stdout when absent
/// seed = 42
///
/// [series]
/// rel_tol = 1e-15
/// max_terms = 10000
/// ```
#[derive(Clone, Debug, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub series: SeriesSection,
    pub format: Option<Format>,
    pub output: Option<PathBuf>,
    pub seed: Option<u64>,
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn policy(&self) -> Result<SeriesPolicy> {
        let d = SeriesPolicy::default();
        SeriesPolicy::new(
            self.series.rel_tol.unwrap_or(d.rel_tol),
            self.series.max_terms.unwrap_or(d.max_terms),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_is_default() {
        let c = RunConfig::parse("").unwrap();
        assert_eq!(c, RunConfig::default());
        assert_eq!(c.policy().unwrap(), SeriesPolicy::default());
    }

    #[test]
    fn full_file() {
        let c = RunConfig::parse("format = \"csv\"\nseed = 7\noutput = \"x.csv\"\n[series]\nrel_tol = 1e-12\nmax_terms = 50\n").unwrap();
        assert_eq!(c.format, Some(Format::Csv));
        assert_eq!(c.seed, Some(7));
        assert_eq!(c.policy().unwrap(), SeriesPolicy::new(1e-12, 50).unwrap());
    }

    #[test]
    fn unknown_keys_rejected() {
        assert!(matches!(RunConfig::parse("colour = 1"), Err(Error::Config(_))));
        assert!(RunConfig::parse("[series]\ntol = 1e-3").is_err());
        assert!(RunConfig::parse("[series]\nrel_tol = -1.0").unwrap().policy().is_err());
    }
}
