use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fock::{FockConfig, QunaughtParams};
use crate::protocol::{Schedule, Selection};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::Config(format!(
                "output format must be csv or json, got '{other}'"
            ))),
        }
    }
}

/// State rendered by the `wigner` command.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum WignerSource {
    /// The binomial input.
    Input,
    /// The qunaught target.
    Target,
    /// Output of the configured post-selected chain.
    Chain,
}

impl FromStr for WignerSource {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "input" => Ok(WignerSource::Input),
            "target" => Ok(WignerSource::Target),
            "chain" => Ok(WignerSource::Chain),
            other => Err(Error::Config(format!(
                "wigner state must be input, target or chain, got '{other}'"
            ))),
        }
    }
}

/// Every parameter of a run. Keys in config files and on the command line
/// are the kebab-case field names.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub dim: usize,
    pub delta_target: f64,
    pub n: usize,
    pub k: usize,
    pub schedule: String,
    /// One token per schedule entry: an outcome index or a peak label
    /// (`C`, `S1`, `S2`, `S`, optionally prefixed `mirror-`). Empty means `C`
    /// at every level.
    pub postselect: Vec<String>,
    /// Envelope cutoff of the target; `None` picks the smallest adequate value.
    pub t_max: Option<usize>,
    pub output_format: OutputFormat,
    pub output_path: Option<PathBuf>,
    pub parallelism: Option<usize>,
    /// First-level outcomes `q1,q2` conditioning the `distribution` command.
    pub condition: Vec<String>,
    pub max_iterations: usize,
    pub n_list: Vec<usize>,
    pub k_list: Vec<usize>,
    pub sweep_deltas: Vec<f64>,
    pub state: WignerSource,
    pub grid_min: f64,
    pub grid_max: f64,
    pub grid_points: usize,
    /// Largest number of leaves `enumerate` may visit.
    pub max_leaves: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            dim: 50,
            delta_target: 0.4,
            n: 2,
            k: 3,
            schedule: "qp".into(),
            postselect: vec![],
            t_max: None,
            output_format: OutputFormat::Csv,
            output_path: None,
            parallelism: None,
            condition: vec![],
            max_iterations: 6,
            n_list: vec![2, 3, 4],
            k_list: (2..=7).collect(),
            sweep_deltas: vec![0.4, 0.35],
            state: WignerSource::Target,
            grid_min: -5.0,
            grid_max: 5.0,
            grid_points: 201,
            max_leaves: 1_000_000,
        }
    }
}

/// Keys accepted by [`RunConfig::set`].
pub const KEYS: &[&str] = &[
    "dim",
    "delta-target",
    "n",
    "k",
    "schedule",
    "postselect",
    "t-max",
    "output-format",
    "output-path",
    "parallelism",
    "condition",
    "max-iterations",
    "n-list",
    "k-list",
    "sweep-deltas",
    "state",
    "grid-min",
    "grid-max",
    "grid-points",
    "max-leaves",
];

fn parse<T: FromStr>(key: &str, value: &str) -> Result<T>
where
    T::Err: fmt::Display,
{
    value
        .trim()
        .parse()
        .map_err(|e| Error::Config(format!("{key} = '{value}': {e}")))
}

fn parse_list<T: FromStr>(key: &str, value: &str) -> Result<Vec<T>>
where
    T::Err: fmt::Display,
{
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| parse(key, s))
        .collect()
}

fn tokens(value: &str) -> Vec<String> {
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(String::from)
        .collect()
}

fn optional<T: FromStr>(key: &str, value: &str) -> Result<Option<T>>
where
    T::Err: fmt::Display,
{
    match value.trim() {
        "" | "auto" => Ok(None),
        v => parse(key, v).map(Some),
    }
}

impl RunConfig {
    /// Sets one field from its textual form.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let key = key.trim().replace('_', "-");
        let k = key.as_str();
        match k {
            "dim" => self.dim = parse(k, value)?,
            "delta-target" => self.delta_target = parse(k, value)?,
            "n" => self.n = parse(k, value)?,
            "k" => self.k = parse(k, value)?,
            "schedule" => self.schedule = value.trim().to_string(),
            "postselect" => self.postselect = tokens(value),
            "t-max" => self.t_max = optional(k, value)?,
            "output-format" => self.output_format = parse(k, value)?,
            "output-path" => {
                self.output_path = match value.trim() {
                    "" | "-" => None,
                    v => Some(PathBuf::from(v)),
                }
            }
            "parallelism" => self.parallelism = optional(k, value)?,
            "condition" => self.condition = tokens(value),
            "max-iterations" => self.max_iterations = parse(k, value)?,
            "n-list" => self.n_list = parse_list(k, value)?,
            "k-list" => self.k_list = parse_list(k, value)?,
            "sweep-deltas" => self.sweep_deltas = parse_list(k, value)?,
            "state" => self.state = parse(k, value)?,
            "grid-min" => self.grid_min = parse(k, value)?,
            "grid-max" => self.grid_max = parse(k, value)?,
            "grid-points" => self.grid_points = parse(k, value)?,
            "max-leaves" => self.max_leaves = parse(k, value)?,
            _ => return Err(Error::Config(format!("unknown key '{key}'"))),
        }
        Ok(())
    }

    /// Applies a flat `key = value` file. Blank lines and `#` comments are skipped.
    pub fn apply_file_text(&mut self, text: &str) -> Result<()> {
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key=value, got '{line}'", lineno + 1)))?;
            self.set(key, value)?;
        }
        Ok(())
    }

    pub fn from_file(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read config file {}: {e}", path.display())))?;
        let mut cfg = RunConfig::default();
        cfg.apply_file_text(&text)?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.dim < 2 {
            return Err(Error::Config(format!("dim must be at least 2, got {}", self.dim)));
        }
        if !(self.delta_target > 0.0 && self.delta_target < 1.0) {
            return Err(Error::Config(format!(
                "delta-target must lie in (0, 1), got {}",
                self.delta_target
            )));
        }
        if self.n == 0 || self.k == 0 {
            return Err(Error::Config("n and k must be at least 1".into()));
        }
        let schedule = self.parsed_schedule()?;
        if !self.postselect.is_empty() && self.postselect.len() != schedule.len() {
            return Err(Error::Config(format!(
                "postselect has {} entries for a schedule of length {}",
                self.postselect.len(),
                schedule.len()
            )));
        }
        self.selections()?;
        if !self.condition.is_empty() && self.condition.len() != 2 {
            return Err(Error::Config("condition takes exactly two first-level outcomes".into()));
        }
        for t in &self.condition {
            t.parse::<Selection>()?;
        }
        if self.parallelism == Some(0) {
            return Err(Error::Config("parallelism must be at least 1".into()));
        }
        if self.grid_points == 0 || self.grid_max.partial_cmp(&self.grid_min) != Some(std::cmp::Ordering::Greater) {
            return Err(Error::Config(
                "grid needs grid-max > grid-min and at least one point".into(),
            ));
        }
        if self.n_list.is_empty() || self.k_list.is_empty() || self.sweep_deltas.is_empty() {
            return Err(Error::Config("sweep lists must not be empty".into()));
        }
        if self.n_list.contains(&0) || self.k_list.contains(&0) {
            return Err(Error::Config("sweep n and k values must be at least 1".into()));
        }
        if let Some(d) = self.sweep_deltas.iter().find(|d| !(**d > 0.0 && **d < 1.0)) {
            return Err(Error::Config(format!("sweep delta {d} outside (0, 1)")));
        }
        Ok(())
    }

    pub fn parsed_schedule(&self) -> Result<Schedule> {
        self.schedule.parse()
    }

    /// Post-selection for every level of the schedule.
    pub fn selections(&self) -> Result<Vec<Selection>> {
        let len = self.parsed_schedule()?.len();
        if self.postselect.is_empty() {
            return Ok(vec![Selection::CENTER; len]);
        }
        self.postselect.iter().map(|t| t.parse::<Selection>()).collect()
    }

    pub fn fock(&self) -> Result<FockConfig> {
        FockConfig::new(self.dim).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn qunaught_params(&self, delta: f64) -> QunaughtParams {
        match self.t_max {
            Some(t) => QunaughtParams::with_t_max(delta, t),
            None => QunaughtParams::new(delta),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        let c = RunConfig::default();
        c.validate().unwrap();
        assert_eq!(c.selections().unwrap(), vec![Selection::CENTER; 2]);
    }

    #[test]
    fn file_then_override() {
        let mut c = RunConfig::default();
        c.apply_file_text("# run\ndim = 40\nschedule=qpqp\npostselect = C, C, 24, S\n\nsweep_deltas=0.4")
            .unwrap();
        assert_eq!(c.dim, 40);
        assert_eq!(c.postselect.len(), 4);
        assert_eq!(c.sweep_deltas, vec![0.4]);
        c.set("dim", "30").unwrap();
        assert_eq!(c.dim, 30);
        c.validate().unwrap();
    }

    #[test]
    fn rejects_bad_input() {
        let mut c = RunConfig::default();
        assert!(c.set("colour", "red").is_err());
        assert!(c.set("dim", "many").is_err());
        assert!(c.apply_file_text("dim 40").is_err());
        c.set("schedule", "qx").unwrap();
        assert!(c.validate().is_err());
        let mut c = RunConfig::default();
        c.set("postselect", "C").unwrap();
        assert!(c.validate().is_err());
        c.set("postselect", "C,Q7").unwrap();
        assert!(c.validate().is_err());
    }

    #[test]
    fn every_key_is_settable() {
        let sample = [
            "50", "0.4", "2", "3", "qp", "C,C", "8", "json", "out", "2", "24,24", "4", "2", "3", "0.4", "chain", "-4",
            "4", "11", "1000",
        ];
        let mut c = RunConfig::default();
        for (k, v) in KEYS.iter().zip(sample) {
            c.set(k, v).unwrap();
        }
        c.validate().unwrap();
        assert_eq!(c.state, WignerSource::Chain);
    }
}
