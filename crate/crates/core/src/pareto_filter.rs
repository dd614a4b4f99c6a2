//! Distance-to-Pareto-set gate layered on top of the similarity gate.
//!
//! After the pool is re-ranked each generation, the centers of its
//! first-front granules form the *current Pareto set*. An offspring that the
//! similarity gate would send to exact evaluation is evaluated only when its
//! Euclidean distance to that set (in decision space) is strictly smaller
//! than the distance of at least one of its two parents. Otherwise it takes
//! the fitness of its most similar granule without entering the pool.

use crate::error::{Error, Result};
use crate::granulation::{affg_gate, GateDecision, GranulePool, PoolConfig};
use crate::metrics::euclidean;
use crate::nsga2::{FitnessStrategy, GateOutcome, Individual};
use crate::problems::Problem;

/// Decision-space centers of the rank-1 granules at one generation.
#[derive(Clone, Debug, PartialEq)]
pub struct CurrentParetoSet {
    centers: Vec<Vec<f64>>,
    generation: usize,
}

impl CurrentParetoSet {
    pub fn new(centers: Vec<Vec<f64>>, generation: usize) -> Self {
        Self { centers, generation }
    }

    /// Collects first-front centers. The pool must have been refreshed.
    pub fn from_pool(pool: &GranulePool, generation: usize) -> Self {
        let centers = pool
            .granules()
            .iter()
            .filter(|g| g.rank == Some(1))
            .map(|g| g.center.clone())
            .collect();
        Self { centers, generation }
    }

    pub fn centers(&self) -> &[Vec<f64>] {
        &self.centers
    }

    pub fn generation(&self) -> usize {
        self.generation
    }

    pub fn len(&self) -> usize {
        self.centers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.centers.is_empty()
    }
}

/// Smallest Euclidean distance from `x` to a member of the set.
pub fn min_distance_to_pareto(x: &[f64], ps: &CurrentParetoSet) -> Result<f64> {
    if ps.is_empty() {
        return Err(Error::EmptyInput("current Pareto set"));
    }
    let mut best = f64::INFINITY;
    for c in &ps.centers {
        if c.len() != x.len() {
            return Err(Error::DimensionMismatch { expected: c.len(), actual: x.len() });
        }
        best = best.min(euclidean(x, c));
    }
    Ok(best)
}

/// Both gates, without side effects.
pub fn modified_gate(
    x: &[f64],
    parents: [&[f64]; 2],
    pool: &GranulePool,
    ps: &CurrentParetoSet,
) -> Result<GateDecision> {
    let (granule, similarity) = match pool.most_similar(x)? {
        None => return Ok(GateDecision::Evaluate),
        Some(best) => best,
    };
    if let approx @ GateDecision::Approximate { .. } = affg_gate(x, pool)? {
        return Ok(approx);
    }
    if ps.is_empty() {
        return Err(Error::Invariant(
            "current Pareto set is empty while the pool is not".into(),
        ));
    }
    let own = min_distance_to_pareto(x, ps)?;
    for parent in parents {
        if own < min_distance_to_pareto(parent, ps)? {
            return Ok(GateDecision::Evaluate);
        }
    }
    Ok(GateDecision::Reject { granule, similarity })
}

/// Scores one offspring with the similarity gate followed by the distance
/// gate, updating the pool. `parents` is the population that
/// `offspring.parents` indexes into.
pub fn modified_evaluate(
    offspring: &mut Individual,
    parents: &[Individual],
    pool: &mut GranulePool,
    ps: &CurrentParetoSet,
    problem: &Problem,
) -> Result<GateOutcome> {
    let [a, b] = offspring.parents.ok_or(Error::MissingParents)?;
    let parent_genes = |i: usize| {
        parents
            .get(i)
            .map(|p| p.genes.as_slice())
            .ok_or_else(|| Error::Invariant(format!("parent index {i} out of range")))
    };
    let decision = modified_gate(&offspring.genes, [parent_genes(a)?, parent_genes(b)?], pool, ps)?;
    match decision {
        GateDecision::Evaluate => {
            pool.evaluate_and_insert(offspring, problem)?;
            Ok(GateOutcome::Exact)
        }
        GateDecision::Approximate { granule, .. } => {
            pool.lend_fitness(granule, offspring);
            Ok(GateOutcome::Approximated)
        }
        GateDecision::Reject { granule, .. } => {
            pool.lend_fitness(granule, offspring);
            Ok(GateOutcome::DistanceRejected)
        }
    }
}

/// NSGA-II fitness strategy with both gates.
#[derive(Clone, Debug)]
pub struct ModifiedAffgStrategy {
    pool: GranulePool,
    pareto_set: CurrentParetoSet,
}

impl ModifiedAffgStrategy {
    pub fn new(cfg: PoolConfig) -> Self {
        Self::try_new(cfg).expect("invalid pool configuration")
    }

    pub fn try_new(cfg: PoolConfig) -> Result<Self> {
        Ok(Self {
            pool: GranulePool::new(cfg)?,
            pareto_set: CurrentParetoSet::new(Vec::new(), 0),
        })
    }

    pub fn pool(&self) -> &GranulePool {
        &self.pool
    }

    pub fn pareto_set(&self) -> &CurrentParetoSet {
        &self.pareto_set
    }
}

impl FitnessStrategy for ModifiedAffgStrategy {
    fn prepare_generation(&mut self, generation: usize) -> Result<()> {
        self.pool.refresh_ranks();
        self.pareto_set = CurrentParetoSet::from_pool(&self.pool, generation);
        Ok(())
    }

    fn evaluate_initial(&mut self, ind: &mut Individual, problem: &Problem) -> Result<()> {
        self.pool.evaluate_and_insert(ind, problem)
    }

    fn evaluate_offspring(
        &mut self,
        offspring: &mut Individual,
        parents: &[Individual],
        problem: &Problem,
    ) -> Result<GateOutcome> {
        if self.pareto_set.is_empty() && !self.pool.is_empty() {
            self.prepare_generation(self.pareto_set.generation())?;
        }
        modified_evaluate(offspring, parents, &mut self.pool, &self.pareto_set, problem)
    }
}
