use crate::error::{Error, Result};

/// How an individual's objective values were obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EvalKind {
    Exact,
    Approximated,
    Unevaluated,
}

/// A candidate solution.
///
/// `parents` holds the population indices of the two tournament winners that
/// produced this individual through crossover. Both entries are equal when
/// the tournament picked the same individual twice.
#[derive(Clone, Debug, PartialEq)]
pub struct Individual {
    pub genes: Vec<f64>,
    pub objectives: Option<Vec<f64>>,
    pub eval_kind: EvalKind,
    pub violation: f64,
    pub parents: Option<[usize; 2]>,
}

impl Individual {
    pub fn new(genes: Vec<f64>) -> Self {
        Self {
            genes,
            objectives: None,
            eval_kind: EvalKind::Unevaluated,
            violation: 0.0,
            parents: None,
        }
    }

    /// Builds an individual with known exact objectives. Mostly useful in tests.
    pub fn evaluated(genes: Vec<f64>, objectives: Vec<f64>, violation: f64) -> Self {
        let mut ind = Self::new(genes);
        ind.set_exact(objectives, violation);
        ind
    }

    pub fn objectives(&self) -> Option<&[f64]> {
        self.objectives.as_deref()
    }

    pub fn is_feasible(&self) -> bool {
        self.violation <= 0.0
    }

    pub fn is_evaluated(&self) -> bool {
        self.eval_kind != EvalKind::Unevaluated
    }

    pub fn set_exact(&mut self, objectives: Vec<f64>, violation: f64) {
        self.objectives = Some(objectives);
        self.violation = violation;
        self.eval_kind = EvalKind::Exact;
    }

    pub fn set_approximated(&mut self, objectives: Vec<f64>, violation: f64) {
        self.objectives = Some(objectives);
        self.violation = violation;
        self.eval_kind = EvalKind::Approximated;
    }

    pub(crate) fn invalidate(&mut self) {
        self.objectives = None;
        self.violation = 0.0;
        self.eval_kind = EvalKind::Unevaluated;
    }
}

/// Parameters of the evolutionary loop.
#[derive(Clone, Debug, PartialEq)]
pub struct EAConfig {
    pub pop_size: usize,
    pub generations: usize,
    pub crossover_prob: f64,
    /// `None` means `1 / L` with `L` the number of decision variables.
    pub mutation_prob: Option<f64>,
    pub eta_c: f64,
    pub eta_m: f64,
    pub rng_seed: u64,
}

impl Default for EAConfig {
    fn default() -> Self {
        Self {
            pop_size: 50,
            generations: 100,
            crossover_prob: 0.9,
            mutation_prob: None,
            eta_c: 20.0,
            eta_m: 20.0,
            rng_seed: 0,
        }
    }
}

impl EAConfig {
    pub fn mutation_prob_for(&self, dimension: usize) -> f64 {
        self.mutation_prob
            .unwrap_or_else(|| 1.0 / dimension.max(1) as f64)
    }

    pub fn validate(&self) -> Result<()> {
        if self.pop_size == 0 || !self.pop_size.is_multiple_of(2) {
            return Err(Error::Config(format!(
                "pop_size must be positive and even, got {}",
                self.pop_size
            )));
        }
        if self.generations == 0 {
            return Err(Error::Config("generations must be positive".into()));
        }
        if !(0.0..=1.0).contains(&self.crossover_prob) {
            return Err(Error::Config(format!(
                "crossover_prob {} outside [0, 1]",
                self.crossover_prob
            )));
        }
        if let Some(p) = self.mutation_prob {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::Config(format!("mutation_prob {p} outside [0, 1]")));
            }
        }
        if !(self.eta_c > 0.0 && self.eta_m > 0.0) {
            return Err(Error::Config("distribution indices must be positive".into()));
        }
        Ok(())
    }
}
