//! Experiment configuration and its flat `key = value` file format.
//!
//! ```text
//! # ZDT1 with the distance filter
//! problem = zdt1
//! method = modified-affg
//! runs = 30
//! base_seed = 42
//! generations = 100
//! ```

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::granulation::PoolConfig;
use crate::nsga2::EAConfig;
use crate::problems::{Problem, ProblemKind};

/// Environment variable that overrides the output directory.
pub const OUTPUT_DIR_ENV: &str = "AFFG_OUTPUT_DIR";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    ExactOnly,
    Affg,
    ModifiedAffg,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::ExactOnly => "exact",
            Method::Affg => "affg",
            Method::ModifiedAffg => "modified-affg",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().replace('_', "-").as_str() {
            "exact" | "exact-only" | "exactonly" | "nsga2" => Ok(Method::ExactOnly),
            "affg" => Ok(Method::Affg),
            "modified-affg" | "modifiedaffg" | "maffg" => Ok(Method::ModifiedAffg),
            other => Err(Error::Config(format!("unknown method `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub problem: ProblemKind,
    pub method: Method,
    pub runs: usize,
    /// Run `i` uses seed `base_seed + i`.
    pub base_seed: u64,
    pub ea: EAConfig,
    /// `None` means twice the population size.
    pub pool_max_size: Option<usize>,
    pub threshold: f64,
    pub output_dir: Option<PathBuf>,
    /// Size of the true-front sample used for IGD.
    pub front_points: usize,
    /// Compute HV and IGD from exact re-evaluations of the population
    /// instead of the stored, possibly approximated, objectives. These
    /// evaluations are not counted.
    pub measure_exact: bool,
    /// Write the final granule pool of every run.
    pub dump_pool: bool,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            problem: ProblemKind::Zdt1,
            method: Method::ModifiedAffg,
            runs: 30,
            base_seed: 0,
            ea: EAConfig::default(),
            pool_max_size: None,
            threshold: PoolConfig::DEFAULT_THRESHOLD,
            output_dir: None,
            front_points: 1000,
            measure_exact: true,
            dump_pool: false,
        }
    }
}

impl ExperimentConfig {
    pub fn new(problem: ProblemKind, method: Method) -> Self {
        Self { problem, method, ..Self::default() }
    }

    pub fn pool_config(&self, problem: &Problem) -> PoolConfig {
        let mut cfg = PoolConfig::for_problem(problem, self.ea.pop_size);
        if let Some(max) = self.pool_max_size {
            cfg.max_size = max;
        }
        cfg.threshold = self.threshold;
        cfg
    }

    pub fn seed_for_run(&self, run: usize) -> u64 {
        self.base_seed.wrapping_add(run as u64)
    }

    pub fn validate(&self) -> Result<()> {
        if self.runs == 0 {
            return Err(Error::Config("runs must be positive".into()));
        }
        if self.front_points < 2 {
            return Err(Error::Config("front_points must be at least 2".into()));
        }
        self.ea.validate()?;
        let problem = Problem::new(self.problem)?;
        self.pool_config(&problem).validate()
    }

    /// Applies one `key = value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        fn num<T: FromStr>(key: &str, value: &str) -> Result<T> {
            value
                .parse()
                .map_err(|_| Error::Config(format!("invalid value `{value}` for `{key}`")))
        }
        match key {
            "problem" => self.problem = value.parse()?,
            "method" => self.method = value.parse()?,
            "runs" => self.runs = num(key, value)?,
            "base_seed" | "seed" => self.base_seed = num(key, value)?,
            "pop_size" => self.ea.pop_size = num(key, value)?,
            "generations" => self.ea.generations = num(key, value)?,
            "crossover_prob" => self.ea.crossover_prob = num(key, value)?,
            "mutation_prob" => {
                self.ea.mutation_prob = match value {
                    "auto" | "1/L" => None,
                    v => Some(num(key, v)?),
                }
            }
            "eta_c" => self.ea.eta_c = num(key, value)?,
            "eta_m" => self.ea.eta_m = num(key, value)?,
            "pool_max_size" => {
                self.pool_max_size = match value {
                    "auto" => None,
                    v => Some(num(key, v)?),
                }
            }
            "threshold" => self.threshold = num(key, value)?,
            "output_dir" => self.output_dir = Some(PathBuf::from(value)),
            "front_points" => self.front_points = num(key, value)?,
            "measure_exact" => self.measure_exact = num(key, value)?,
            "dump_pool" => self.dump_pool = num(key, value)?,
            other => return Err(Error::Config(format!("unknown key `{other}`"))),
        }
        Ok(())
    }

    /// Applies every setting of a `key = value` text on top of `self`.
    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::Config(format!("line {}: expected `key = value`", lineno + 1))
            })?;
            self.set(key.trim(), value.trim())
                .map_err(|e| Error::Config(format!("line {}: {e}", lineno + 1)))?;
        }
        Ok(())
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let mut cfg = Self::default();
        cfg.apply_text(&std::fs::read_to_string(path)?)?;
        Ok(cfg)
    }

    /// Renders every field back into the file format.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut line = |k: &str, v: String| out.push_str(&format!("{k} = {v}\n"));
        line("problem", self.problem.to_string());
        line("method", self.method.to_string());
        line("runs", self.runs.to_string());
        line("base_seed", self.base_seed.to_string());
        line("pop_size", self.ea.pop_size.to_string());
        line("generations", self.ea.generations.to_string());
        line("crossover_prob", self.ea.crossover_prob.to_string());
        line(
            "mutation_prob",
            self.ea.mutation_prob.map_or("auto".into(), |p| p.to_string()),
        );
        line("eta_c", self.ea.eta_c.to_string());
        line("eta_m", self.ea.eta_m.to_string());
        line(
            "pool_max_size",
            self.pool_max_size.map_or("auto".into(), |m| m.to_string()),
        );
        line("threshold", self.threshold.to_string());
        if let Some(dir) = &self.output_dir {
            line("output_dir", dir.display().to_string());
        }
        line("front_points", self.front_points.to_string());
        line("measure_exact", self.measure_exact.to_string());
        line("dump_pool", self.dump_pool.to_string());
        out
    }
}
