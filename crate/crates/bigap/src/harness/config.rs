//! Experiment configuration: the parameter bundle, its invariants, and a
//! flat `key = value` file format that any language can parse.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::spectra::DEFAULT_ORACLE_CAP;

/// Which spectra a trial computes.
///
/// Adjacency extremes are computed in every mode — the CSV schema carries
/// them unconditionally and the headline ratio needs them — so `Normalized`
/// and `Both` behave identically at run time: both add the
/// normalized-adjacency gap on top. The two names exist so a config can
/// state its intent literally.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Adjacency extremes only.
    Adjacency,
    /// Adjacency extremes plus the normalized-adjacency gap.
    Normalized,
    /// Alias for `Normalized` in effect: everything is computed.
    Both,
}

impl Mode {
    /// Does this mode compute the normalized-adjacency gap?
    pub fn includes_normalized(self) -> bool {
        matches!(self, Mode::Normalized | Mode::Both)
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "adjacency" => Ok(Mode::Adjacency),
            "normalized" => Ok(Mode::Normalized),
            "both" => Ok(Mode::Both),
            other => Err(Error::Config(format!(
                "unknown mode `{other}` (expected adjacency, normalized, or both)"
            ))),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Adjacency => "adjacency",
            Mode::Normalized => "normalized",
            Mode::Both => "both",
        })
    }
}

/// Everything a multi-trial experiment needs, minus the worker count:
/// parallelism is an execution choice handed to the runner separately,
/// precisely so that identical configs give identical results at any
/// thread count.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    /// Left part size; by convention the smaller side.
    pub n1: usize,
    /// Right part size, `n2 >= n1`.
    pub n2: usize,
    /// Cross-edge probability, in `(0, 1]`.
    pub p: f64,
    /// Number of independent trials, >= 1.
    pub trials: u64,
    /// Master seed; each trial derives its own stream from it.
    pub master_seed: u64,
    /// Multiplicative allowance on every bound, >= 1. Stands in for the
    /// asymptotic correction factor the formulas omit.
    pub slack: f64,
    /// Residual tolerance for the iterative eigensolver.
    pub tol: f64,
    /// Iteration budget for the iterative eigensolver.
    pub max_iter: usize,
    /// Which spectra to compute; see [`Mode`].
    pub mode: Mode,
    /// Largest dimension handed to the dense eigensolver; bigger problems
    /// use the iterative path.
    pub oracle_cap: usize,
}

impl ExperimentConfig {
    /// Build a config with standard solver settings: slack 1.0, tolerance
    /// `1e-8`, 512-step budget, adjacency mode, dense cap
    /// [`DEFAULT_ORACLE_CAP`].
    pub fn new(n1: usize, n2: usize, p: f64, trials: u64, master_seed: u64) -> Self {
        ExperimentConfig {
            n1,
            n2,
            p,
            trials,
            master_seed,
            slack: 1.0,
            tol: 1e-8,
            max_iter: 512,
            mode: Mode::Adjacency,
            oracle_cap: DEFAULT_ORACLE_CAP,
        }
    }

    /// Enforce the parameter invariants. Violations are config errors.
    pub fn validate(&self) -> Result<()> {
        if self.n1 == 0 {
            return Err(Error::Config("n1 must be at least 1".into()));
        }
        if self.n2 < self.n1 {
            return Err(Error::Config(format!(
                "n2 must be at least n1 (sides are ordered), got n1 = {}, n2 = {}",
                self.n1, self.n2
            )));
        }
        if !(self.p > 0.0 && self.p <= 1.0) {
            return Err(Error::Config(format!(
                "p must lie in (0, 1], got {}",
                self.p
            )));
        }
        if self.trials == 0 {
            return Err(Error::Config("trials must be at least 1".into()));
        }
        if !(self.slack >= 1.0 && self.slack.is_finite()) {
            return Err(Error::Config(format!(
                "slack must be a finite value >= 1, got {}",
                self.slack
            )));
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(Error::Config(format!(
                "tol must be a finite value > 0, got {}",
                self.tol
            )));
        }
        if self.max_iter == 0 {
            return Err(Error::Config("max_iter must be at least 1".into()));
        }
        if self.oracle_cap == 0 {
            return Err(Error::Config("oracle_cap must be at least 1".into()));
        }
        Ok(())
    }

    /// Read a config from a flat text file: one `key = value` per line,
    /// `#` starts a comment, blank lines ignored. Recognized keys:
    /// `n1`, `n2`, `p`, `trials`, `seed`, `slack`, `tol`, `max_iter`,
    /// `mode`, `oracle_cap`. The first five are required; the rest default
    /// as in [`ExperimentConfig::new`]. Errors name the offending line.
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_config_str(&text, &path.display().to_string())
    }

    /// Parse the `key = value` format from a string; `origin` labels error
    /// messages (typically the file path).
    pub fn from_config_str(text: &str, origin: &str) -> Result<Self> {
        let mut n1: Option<usize> = None;
        let mut n2: Option<usize> = None;
        let mut p: Option<f64> = None;
        let mut trials: Option<u64> = None;
        let mut seed: Option<u64> = None;
        let mut slack = 1.0f64;
        let mut tol = 1e-8f64;
        let mut max_iter = 512usize;
        let mut mode = Mode::Adjacency;
        let mut oracle_cap = DEFAULT_ORACLE_CAP;

        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let parse_error = |message: String| Error::Parse {
                path: origin.to_string(),
                line: line_no,
                message,
            };
            let line = match raw.find('#') {
                Some(i) => &raw[..i],
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| parse_error(format!("expected `key = value`, got `{line}`")))?;
            let key = key.trim();
            let value = value.trim();
            if value.is_empty() {
                return Err(parse_error(format!("empty value for key `{key}`")));
            }
            macro_rules! num {
                ($ty:ty) => {
                    value.parse::<$ty>().map_err(|e| {
                        parse_error(format!("invalid value `{value}` for key `{key}`: {e}"))
                    })?
                };
            }
            match key {
                "n1" => n1 = Some(num!(usize)),
                "n2" => n2 = Some(num!(usize)),
                "p" => p = Some(num!(f64)),
                "trials" => trials = Some(num!(u64)),
                "seed" => seed = Some(num!(u64)),
                "slack" => slack = num!(f64),
                "tol" => tol = num!(f64),
                "max_iter" => max_iter = num!(usize),
                "oracle_cap" => oracle_cap = num!(usize),
                "mode" => {
                    mode = value
                        .parse::<Mode>()
                        .map_err(|e| parse_error(e.to_string()))?
                }
                other => {
                    return Err(parse_error(format!("unknown key `{other}`")));
                }
            }
        }

        fn require<T>(v: Option<T>, key: &str, origin: &str) -> Result<T> {
            v.ok_or_else(|| Error::Config(format!("missing required key `{key}` in {origin}")))
        }
        let cfg = ExperimentConfig {
            n1: require(n1, "n1", origin)?,
            n2: require(n2, "n2", origin)?,
            p: require(p, "p", origin)?,
            trials: require(trials, "trials", origin)?,
            master_seed: require(seed, "seed", origin)?,
            slack,
            tol,
            max_iter,
            mode,
            oracle_cap,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mode_round_trips_through_strings() {
        for m in [Mode::Adjacency, Mode::Normalized, Mode::Both] {
            assert_eq!(m.to_string().parse::<Mode>().unwrap(), m);
        }
        assert!("Adjacency".parse::<Mode>().is_err(), "names are lowercase");
        assert!("spectral".parse::<Mode>().is_err());
        assert!(Mode::Normalized.includes_normalized());
        assert!(Mode::Both.includes_normalized());
        assert!(!Mode::Adjacency.includes_normalized());
    }

    #[test]
    fn full_config_file_parses() {
        let text = "\
# experiment sweep, size 300
n1 = 300
n2 = 300
p = 0.1       # np = 30
trials = 50
seed = 7
slack = 1.5
tol = 1e-9
max_iter = 256
mode = both
oracle_cap = 800
";
        let cfg = ExperimentConfig::from_config_str(text, "test").unwrap();
        assert_eq!(cfg.n1, 300);
        assert_eq!(cfg.n2, 300);
        assert_eq!(cfg.p, 0.1);
        assert_eq!(cfg.trials, 50);
        assert_eq!(cfg.master_seed, 7);
        assert_eq!(cfg.slack, 1.5);
        assert_eq!(cfg.tol, 1e-9);
        assert_eq!(cfg.max_iter, 256);
        assert_eq!(cfg.mode, Mode::Both);
        assert_eq!(cfg.oracle_cap, 800);
    }

    #[test]
    fn optional_keys_default() {
        let cfg =
            ExperimentConfig::from_config_str("n1=2\nn2=3\np=1.0\ntrials=1\nseed=0\n", "t")
                .unwrap();
        assert_eq!(cfg.slack, 1.0);
        assert_eq!(cfg.tol, 1e-8);
        assert_eq!(cfg.max_iter, 512);
        assert_eq!(cfg.mode, Mode::Adjacency);
        assert_eq!(cfg.oracle_cap, DEFAULT_ORACLE_CAP);
    }

    #[test]
    fn parse_errors_name_the_offending_line() {
        let err = ExperimentConfig::from_config_str("n1 = 2\nbogus line\n", "cfg.txt")
            .unwrap_err()
            .to_string();
        assert!(err.contains("cfg.txt:2"), "{err}");

        let err = ExperimentConfig::from_config_str("n1 = two\n", "cfg.txt")
            .unwrap_err()
            .to_string();
        assert!(err.contains("cfg.txt:1"), "{err}");
        assert!(err.contains("two"), "{err}");

        let err = ExperimentConfig::from_config_str("n1=1\nn2=1\np=1\ntrials=1\nseed=0\nworkers=4\n", "c")
            .unwrap_err()
            .to_string();
        assert!(err.contains("unknown key"), "{err}");
        assert!(err.contains("c:6"), "{err}");

        let err = ExperimentConfig::from_config_str("mode = spectral\nn1=1\n", "c")
            .unwrap_err()
            .to_string();
        assert!(err.contains("c:1"), "{err}");
        assert!(err.contains("spectral"), "{err}");
    }

    #[test]
    fn missing_required_key_is_a_config_error() {
        let err = ExperimentConfig::from_config_str("n1=2\nn2=3\np=0.5\ntrials=4\n", "c")
            .unwrap_err()
            .to_string();
        assert!(err.contains("seed"), "{err}");
    }

    #[test]
    fn invariants_are_enforced() {
        let ok = ExperimentConfig::new(10, 20, 0.5, 3, 1);
        assert!(ok.validate().is_ok());

        let mut c = ok.clone();
        c.trials = 0;
        assert!(c.validate().is_err());

        let mut c = ok.clone();
        c.n2 = 5; // smaller than n1
        assert!(c.validate().is_err());

        let mut c = ok.clone();
        c.p = 0.0;
        assert!(c.validate().is_err());
        c.p = 1.5;
        assert!(c.validate().is_err());
        c.p = f64::NAN;
        assert!(c.validate().is_err());

        let mut c = ok.clone();
        c.slack = 0.9;
        assert!(c.validate().is_err());

        let mut c = ok;
        c.tol = 0.0;
        assert!(c.validate().is_err());
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let text = "\n\n# leading comment\n  n1=4 # trailing\n\nn2 = 4\np=0.25\ntrials=2\nseed=9\n# done\n";
        let cfg = ExperimentConfig::from_config_str(text, "t").unwrap();
        assert_eq!((cfg.n1, cfg.n2, cfg.trials), (4, 4, 2));
    }
}
