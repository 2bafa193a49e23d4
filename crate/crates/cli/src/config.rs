//! Run configuration: built-in defaults, then a flat `key = value` file,
//! then `--set key=value` flags.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use hyperchaos_core::horseshoe::HorseshoeParams;
use hyperchaos_core::{Alphabet, MetricParams};

use crate::CliError;

const DEFAULTS: &[(&str, &str)] = &[
    ("m", "2"),
    ("r", "0.5"),
    ("lambda", "0.3333333333333333"),
    ("mu", "3"),
    ("k", "3"),
    ("n", "3"),
    ("horizon", "1000"),
    ("tolerance", "1e-12"),
    ("sets", "20"),
    ("targets", "10"),
    ("target_back", "2"),
    ("target_forward", "3"),
    ("deltas", "0.1,0.01,0.001"),
    ("epsilons", "0.25,0.01"),
    ("recurrence_depths", "10"),
    ("convergence_steps", "20"),
    ("diameter_depth", "12"),
    ("separation_depth", "3"),
    ("diagonal_depth", "8"),
    ("conjugacy_depth", "30"),
    ("itineraries", "100"),
    ("max_period", "12"),
    ("out", "out"),
    ("format", "json,csv,svg"),
    ("seed", "0"),
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Formats {
    pub json: bool,
    pub csv: bool,
    pub svg: bool,
}

impl FromStr for Formats {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let mut f = Formats {
            json: false,
            csv: false,
            svg: false,
        };
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            match part {
                "json" => f.json = true,
                "csv" => f.csv = true,
                "svg" => f.svg = true,
                other => return Err(format!("unknown format `{other}`")),
            }
        }
        if !(f.json || f.csv || f.svg) {
            return Err("no output format selected".into());
        }
        Ok(f)
    }
}

impl fmt::Display for Formats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = [(self.json, "json"), (self.csv, "csv"), (self.svg, "svg")]
            .into_iter()
            .filter_map(|(on, name)| on.then_some(name))
            .collect();
        f.write_str(&names.join(","))
    }
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub alphabet: Alphabet,
    pub metric: MetricParams,
    pub horseshoe: HorseshoeParams,
    /// Past depth of the horseshoe rectangles.
    pub k: u32,
    /// Future depth of the horseshoe rectangles.
    pub n: u32,
    pub horizon: u64,
    pub tolerance: f64,
    pub sets: usize,
    pub targets: usize,
    pub target_back: u32,
    pub target_forward: u32,
    pub deltas: Vec<f64>,
    pub epsilons: Vec<f64>,
    pub recurrence_depths: u32,
    pub convergence_steps: u32,
    pub diameter_depth: u32,
    pub separation_depth: u32,
    pub diagonal_depth: u32,
    pub conjugacy_depth: usize,
    pub itineraries: usize,
    pub max_period: usize,
    pub out: PathBuf,
    pub formats: Formats,
    pub seed: u64,
}

/// Layered key/value settings before validation.
#[derive(Clone, Debug)]
pub struct Settings(BTreeMap<String, String>);

impl Default for Settings {
    fn default() -> Self {
        Settings(
            DEFAULTS
                .iter()
                .map(|(k, v)| (k.to_string(), v.to_string()))
                .collect(),
        )
    }
}

impl Settings {
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), CliError> {
        let key = key.trim();
        if !DEFAULTS.iter().any(|(k, _)| *k == key) {
            return Err(CliError::Config(format!("unknown key `{key}`")));
        }
        self.0.insert(key.to_string(), value.trim().to_string());
        Ok(())
    }

    /// Applies a `key=value` assignment.
    pub fn assign(&mut self, assignment: &str) -> Result<(), CliError> {
        let (key, value) = assignment
            .split_once('=')
            .ok_or_else(|| CliError::Config(format!("expected key=value, got `{assignment}`")))?;
        self.set(key, value)
    }

    pub fn load_file(&mut self, path: &Path) -> Result<(), CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            self.assign(line)
                .map_err(|e| CliError::Config(format!("{}:{}: {e}", path.display(), i + 1)))?;
        }
        Ok(())
    }

    fn get<T: FromStr>(&self, key: &str) -> Result<T, CliError>
    where
        T::Err: fmt::Display,
    {
        let raw = &self.0[key];
        raw.parse()
            .map_err(|e| CliError::Config(format!("{key} = `{raw}`: {e}")))
    }

    fn list(&self, key: &str) -> Result<Vec<f64>, CliError> {
        self.0[key]
            .split(',')
            .map(|v| {
                v.trim()
                    .parse::<f64>()
                    .map_err(|e| CliError::Config(format!("{key}: `{v}`: {e}")))
            })
            .collect()
    }

    pub fn build(&self) -> Result<RunConfig, CliError> {
        let invalid = |key: &str, e: hyperchaos_core::Error| CliError::Config(format!("{key}: {e}"));
        let alphabet = Alphabet::new(self.get("m")?).map_err(|e| invalid("m", e))?;
        let metric = MetricParams::new(self.get("r")?).map_err(|e| invalid("r", e))?;
        let horseshoe =
            HorseshoeParams::new(self.get("lambda")?, self.get("mu")?).map_err(|e| invalid("lambda/mu", e))?;
        let tolerance: f64 = self.get("tolerance")?;
        if !(tolerance > 0.0 && tolerance.is_finite()) {
            return Err(CliError::Config(format!("tolerance {tolerance} must be positive and finite")));
        }
        let deltas = self.list("deltas")?;
        let epsilons = self.list("epsilons")?;
        if deltas.iter().chain(&epsilons).any(|&v| !(v > 0.0 && v.is_finite())) {
            return Err(CliError::Config("deltas and epsilons must be positive".into()));
        }
        let config = RunConfig {
            alphabet,
            metric,
            horseshoe,
            k: self.get("k")?,
            n: self.get("n")?,
            horizon: self.get("horizon")?,
            tolerance,
            sets: self.get("sets")?,
            targets: self.get("targets")?,
            target_back: self.get("target_back")?,
            target_forward: self.get("target_forward")?,
            deltas,
            epsilons,
            recurrence_depths: self.get("recurrence_depths")?,
            convergence_steps: self.get("convergence_steps")?,
            diameter_depth: self.get("diameter_depth")?,
            separation_depth: self.get("separation_depth")?,
            diagonal_depth: self.get("diagonal_depth")?,
            conjugacy_depth: self.get("conjugacy_depth")?,
            itineraries: self.get("itineraries")?,
            max_period: self.get("max_period")?,
            out: PathBuf::from(&self.0["out"]),
            formats: self.get::<Formats>("format")?,
            seed: self.get("seed")?,
        };
        let positive = [
            ("sets", config.sets as u64),
            ("recurrence_depths", config.recurrence_depths as u64),
            ("diameter_depth", config.diameter_depth as u64),
            ("separation_depth", config.separation_depth as u64),
            ("diagonal_depth", config.diagonal_depth as u64),
            ("max_period", config.max_period as u64),
            ("target_forward", config.target_forward as u64),
        ];
        if let Some((key, _)) = positive.iter().find(|(_, v)| *v == 0) {
            return Err(CliError::Config(format!("{key} must be at least 1")));
        }
        if config.horizon < 10 {
            return Err(CliError::Config("horizon must be at least 10".into()));
        }
        if config.conjugacy_depth < 2 {
            return Err(CliError::Config("conjugacy_depth must be at least 2".into()));
        }
        Ok(config)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_build() {
        let c = Settings::default().build().unwrap();
        assert_eq!(c.alphabet.size(), 2);
        assert_eq!(c.metric.r(), 0.5);
        assert_eq!(c.formats.to_string(), "json,csv,svg");
        assert_eq!(c.deltas, vec![0.1, 0.01, 0.001]);
    }

    #[test]
    fn later_layers_win() {
        let mut s = Settings::default();
        s.assign("r = 0.25").unwrap();
        s.assign("r=0.4").unwrap();
        assert_eq!(s.build().unwrap().metric.r(), 0.4);
    }

    #[test]
    fn invalid_values_are_rejected() {
        for bad in ["r=0", "tolerance=0", "m=1", "format=png", "horizon=3", "mu=1.5", "deltas=0.1,-1"] {
            let mut s = Settings::default();
            s.assign(bad).unwrap();
            assert!(s.build().is_err(), "{bad}");
        }
        assert!(Settings::default().assign("colour=red").is_err());
        assert!(Settings::default().assign("r").is_err());
    }
}
