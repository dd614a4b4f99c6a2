//! Fuzzy fitness granulation.
//!
//! Exactly evaluated solutions are stored as Gaussian granules centred on
//! their decision vectors. A new offspring whose best similarity to the pool
//! reaches the threshold inherits the fitness of its most similar granule;
//! otherwise it is evaluated exactly and becomes a granule itself.
//!
//! Granule widths grow with the granule's nondomination rank inside the pool:
//!
//! ```text
//! σ = σ_min · (1 + (rank − 1) / K)
//! ```
//!
//! where `K` is the number of fronts in the pool, so first-front granules are
//! the narrowest and every width stays in `[σ_min, 2 σ_min)`.

use std::io::Write;

use crate::error::{Error, Result};
use crate::harness::csv::format_sig;
use crate::nsga2::{
    constrained_dominates, nondominated_fronts, FitnessStrategy, GateOutcome, Individual,
};
use crate::problems::Problem;

/// A stored exactly evaluated solution.
#[derive(Clone, Debug, PartialEq)]
pub struct Granule {
    pub center: Vec<f64>,
    pub objectives: Vec<f64>,
    pub violation: f64,
    pub width: f64,
    pub life: u64,
    /// Nondomination rank inside the pool; `None` until the next refresh.
    pub rank: Option<usize>,
    serial: u64,
}

impl Granule {
    /// Insertion order within its pool; smaller is older.
    pub fn serial(&self) -> u64 {
        self.serial
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PoolConfig {
    pub max_size: usize,
    pub threshold: f64,
    pub sigma_min: f64,
    pub initial_life: u64,
}

impl PoolConfig {
    pub const DEFAULT_THRESHOLD: f64 = 0.9;

    /// Twice the population size, threshold 0.9, the problem's σ_min and an
    /// initial life of 1.
    pub fn for_problem(problem: &Problem, pop_size: usize) -> Self {
        Self {
            max_size: 2 * pop_size,
            threshold: Self::DEFAULT_THRESHOLD,
            sigma_min: problem.sigma_min(),
            initial_life: 1,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_size == 0 {
            return Err(Error::Config("pool max_size must be positive".into()));
        }
        if !(self.threshold > 0.0 && self.threshold < 1.0) {
            return Err(Error::Config(format!(
                "similarity threshold {} outside (0, 1)",
                self.threshold
            )));
        }
        if !(self.sigma_min > 0.0 && self.sigma_min.is_finite()) {
            return Err(Error::Config(format!("sigma_min {} must be positive", self.sigma_min)));
        }
        Ok(())
    }
}

/// Mean per-gene Gaussian membership of `x` in granule `g`.
pub fn similarity(x: &[f64], g: &Granule) -> Result<f64> {
    gaussian_similarity(x, &g.center, g.width)
}

fn gaussian_similarity(x: &[f64], center: &[f64], width: f64) -> Result<f64> {
    if x.len() != center.len() {
        return Err(Error::DimensionMismatch { expected: center.len(), actual: x.len() });
    }
    if x.is_empty() {
        return Err(Error::EmptyInput("decision vector"));
    }
    let var = width * width;
    let total: f64 = x
        .iter()
        .zip(center)
        .map(|(a, c)| (-(a - c) * (a - c) / var).exp())
        .sum();
    Ok(total / x.len() as f64)
}

/// Width of a granule with the given pool rank.
pub fn granule_width(rank: usize, rank_count: usize, sigma_min: f64) -> Result<f64> {
    if rank == 0 || rank > rank_count {
        return Err(Error::RankOutOfRange { rank, count: rank_count });
    }
    Ok(sigma_min * (1.0 + (rank - 1) as f64 / rank_count as f64))
}

/// What a fitness gate decided for one offspring.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GateDecision {
    /// Spend an exact evaluation and store the result as a new granule.
    Evaluate,
    /// Similar enough: copy the fitness of granule `granule`.
    Approximate { granule: usize, similarity: f64 },
    /// Not similar enough but not promising either: copy the fitness of the
    /// most similar granule anyway.
    Reject { granule: usize, similarity: f64 },
}

/// A bounded collection of granules.
#[derive(Clone, Debug)]
pub struct GranulePool {
    cfg: PoolConfig,
    granules: Vec<Granule>,
    next_serial: u64,
    rank_count: usize,
}

impl GranulePool {
    pub fn new(cfg: PoolConfig) -> Result<Self> {
        cfg.validate()?;
        Ok(Self { cfg, granules: Vec::new(), next_serial: 0, rank_count: 0 })
    }

    pub fn config(&self) -> &PoolConfig {
        &self.cfg
    }

    pub fn granules(&self) -> &[Granule] {
        &self.granules
    }

    pub fn len(&self) -> usize {
        self.granules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.granules.is_empty()
    }

    /// Number of fronts found by the last refresh.
    pub fn rank_count(&self) -> usize {
        self.rank_count
    }

    /// Adds an exactly evaluated solution with provisional width σ_min, then
    /// evicts if the pool overflows. Returns the evicted granules.
    pub fn insert(&mut self, center: Vec<f64>, objectives: Vec<f64>, violation: f64) -> Result<Vec<Granule>> {
        if let Some(first) = self.granules.first() {
            if first.center.len() != center.len() {
                return Err(Error::DimensionMismatch {
                    expected: first.center.len(),
                    actual: center.len(),
                });
            }
        }
        self.granules.push(Granule {
            center,
            objectives,
            violation,
            width: self.cfg.sigma_min,
            life: self.cfg.initial_life,
            rank: None,
            serial: self.next_serial,
        });
        self.next_serial += 1;
        Ok(self.evict_if_full())
    }

    /// Removes minimum-life granules, oldest first among ties, until the pool
    /// fits its maximum size.
    pub fn evict_if_full(&mut self) -> Vec<Granule> {
        let mut evicted = Vec::new();
        while self.granules.len() > self.cfg.max_size {
            let victim = self
                .granules
                .iter()
                .enumerate()
                .min_by_key(|(_, g)| (g.life, g.serial))
                .map(|(i, _)| i)
                .expect("pool is over capacity, so not empty");
            evicted.push(self.granules.remove(victim));
        }
        evicted
    }

    /// Re-ranks every granule by constrained nondominated sorting of its
    /// objectives and recomputes its width.
    pub fn refresh_ranks(&mut self) {
        let gs = &self.granules;
        let fronts = nondominated_fronts(gs.len(), |a, b| {
            constrained_dominates(&gs[a].objectives, gs[a].violation, &gs[b].objectives, gs[b].violation)
        });
        self.rank_count = fronts.len();
        for (r, front) in fronts.iter().enumerate() {
            let width = granule_width(r + 1, self.rank_count, self.cfg.sigma_min)
                .expect("rank is within 1..=rank_count");
            for &i in front {
                self.granules[i].rank = Some(r + 1);
                self.granules[i].width = width;
            }
        }
    }

    /// Index and similarity of the granule most similar to `x`; the oldest
    /// granule wins ties. `None` for an empty pool.
    pub fn most_similar(&self, x: &[f64]) -> Result<Option<(usize, f64)>> {
        let mut best: Option<(usize, f64)> = None;
        for (i, g) in self.granules.iter().enumerate() {
            let s = similarity(x, g)?;
            if best.is_none_or(|(_, b)| s > b) {
                best = Some((i, s));
            }
        }
        Ok(best)
    }

    /// Copies granule `index`'s fitness onto `ind` and bumps its life.
    pub(crate) fn lend_fitness(&mut self, index: usize, ind: &mut Individual) {
        let g = &mut self.granules[index];
        g.life += 1;
        ind.set_approximated(g.objectives.clone(), g.violation);
    }

    /// Evaluates `ind` exactly and stores it as a new granule.
    pub(crate) fn evaluate_and_insert(&mut self, ind: &mut Individual, problem: &Problem) -> Result<()> {
        problem.evaluate_into(ind)?;
        let objectives = ind.objectives.clone().unwrap_or_default();
        self.insert(ind.genes.clone(), objectives, ind.violation)?;
        Ok(())
    }

    /// Writes one CSV row per granule: center coordinates, objectives,
    /// violation, width, life and rank (0 when not yet ranked).
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        let d = self.granules.first().map_or(0, |g| g.center.len());
        let m = self.granules.first().map_or(0, |g| g.objectives.len());
        let mut header = vec!["granule".to_string()];
        header.extend((1..=d).map(|i| format!("c{i}")));
        header.extend((1..=m).map(|i| format!("f{i}")));
        header.extend(["violation", "sigma", "life", "rank"].map(String::from));
        writeln!(out, "{}", header.join(","))?;
        for g in &self.granules {
            let mut row = vec![g.serial.to_string()];
            row.extend(g.center.iter().map(|&v| format_sig(v)));
            row.extend(g.objectives.iter().map(|&v| format_sig(v)));
            row.push(format_sig(g.violation));
            row.push(format_sig(g.width));
            row.push(g.life.to_string());
            row.push(g.rank.unwrap_or(0).to_string());
            writeln!(out, "{}", row.join(","))?;
        }
        Ok(())
    }
}

/// The similarity gate alone: evaluate when the pool is empty or the best
/// similarity is below the threshold, approximate otherwise.
pub fn affg_gate(x: &[f64], pool: &GranulePool) -> Result<GateDecision> {
    Ok(match pool.most_similar(x)? {
        Some((granule, similarity)) if similarity >= pool.cfg.threshold => {
            GateDecision::Approximate { granule, similarity }
        }
        _ => GateDecision::Evaluate,
    })
}

/// Scores one offspring with the similarity gate, updating the pool.
pub fn affg_evaluate(offspring: &mut Individual, pool: &mut GranulePool, problem: &Problem) -> Result<GateOutcome> {
    match affg_gate(&offspring.genes, pool)? {
        GateDecision::Approximate { granule, .. } | GateDecision::Reject { granule, .. } => {
            pool.lend_fitness(granule, offspring);
            Ok(GateOutcome::Approximated)
        }
        GateDecision::Evaluate => {
            pool.evaluate_and_insert(offspring, problem)?;
            Ok(GateOutcome::Exact)
        }
    }
}

/// NSGA-II fitness strategy using the similarity gate only.
#[derive(Clone, Debug)]
pub struct AffgStrategy {
    pool: GranulePool,
}

impl AffgStrategy {
    pub fn new(cfg: PoolConfig) -> Self {
        Self::try_new(cfg).expect("invalid pool configuration")
    }

    pub fn try_new(cfg: PoolConfig) -> Result<Self> {
        Ok(Self { pool: GranulePool::new(cfg)? })
    }

    pub fn pool(&self) -> &GranulePool {
        &self.pool
    }
}

impl FitnessStrategy for AffgStrategy {
    fn prepare_generation(&mut self, _generation: usize) -> Result<()> {
        self.pool.refresh_ranks();
        Ok(())
    }

    fn evaluate_initial(&mut self, ind: &mut Individual, problem: &Problem) -> Result<()> {
        self.pool.evaluate_and_insert(ind, problem)
    }

    fn evaluate_offspring(
        &mut self,
        offspring: &mut Individual,
        _parents: &[Individual],
        problem: &Problem,
    ) -> Result<GateOutcome> {
        affg_evaluate(offspring, &mut self.pool, problem)
    }
}
