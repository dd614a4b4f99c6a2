use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{
    binary_tournament, crowding_distance, fast_nondominated_sort, polynomial_mutation,
    sbx_crossover, EAConfig, Individual,
};
use crate::error::{Error, Result};
use crate::problems::Problem;

/// Which branch a fitness strategy took for one offspring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GateOutcome {
    /// Evaluated with the real objective functions.
    Exact,
    /// Similar enough to a stored granule; fitness copied from it.
    Approximated,
    /// Dissimilar to the pool but not closer to the Pareto set than either
    /// parent; fitness copied from the most similar granule.
    DistanceRejected,
}

/// Offspring accounting for one generation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GenerationStats {
    pub generation: usize,
    pub exact: usize,
    pub approximated: usize,
    pub rejected: usize,
}

impl GenerationStats {
    fn record(&mut self, outcome: GateOutcome) {
        match outcome {
            GateOutcome::Exact => self.exact += 1,
            GateOutcome::Approximated => self.approximated += 1,
            GateOutcome::DistanceRejected => self.rejected += 1,
        }
    }

    pub fn offspring(&self) -> usize {
        self.exact + self.approximated + self.rejected
    }
}

/// Decides how each new individual obtains its objective values.
pub trait FitnessStrategy {
    /// Called once at the start of every generation, before any offspring is
    /// evaluated.
    fn prepare_generation(&mut self, _generation: usize) -> Result<()> {
        Ok(())
    }

    /// Evaluates a member of the initial population. Always exact.
    fn evaluate_initial(&mut self, ind: &mut Individual, problem: &Problem) -> Result<()>;

    /// Scores one offspring. `parents` is the population the offspring's
    /// parent indices refer to.
    fn evaluate_offspring(
        &mut self,
        offspring: &mut Individual,
        parents: &[Individual],
        problem: &Problem,
    ) -> Result<GateOutcome>;
}

impl<S: FitnessStrategy + ?Sized> FitnessStrategy for &mut S {
    fn prepare_generation(&mut self, generation: usize) -> Result<()> {
        (**self).prepare_generation(generation)
    }

    fn evaluate_initial(&mut self, ind: &mut Individual, problem: &Problem) -> Result<()> {
        (**self).evaluate_initial(ind, problem)
    }

    fn evaluate_offspring(
        &mut self,
        offspring: &mut Individual,
        parents: &[Individual],
        problem: &Problem,
    ) -> Result<GateOutcome> {
        (**self).evaluate_offspring(offspring, parents, problem)
    }
}

/// Plain NSGA-II: every offspring is evaluated exactly.
#[derive(Clone, Copy, Debug, Default)]
pub struct ExactStrategy;

impl FitnessStrategy for ExactStrategy {
    fn evaluate_initial(&mut self, ind: &mut Individual, problem: &Problem) -> Result<()> {
        problem.evaluate_into(ind)
    }

    fn evaluate_offspring(
        &mut self,
        offspring: &mut Individual,
        _parents: &[Individual],
        problem: &Problem,
    ) -> Result<GateOutcome> {
        problem.evaluate_into(offspring)?;
        Ok(GateOutcome::Exact)
    }
}

/// Uniformly sampled, exactly evaluated starting population.
pub fn initial_population<S, R>(
    problem: &Problem,
    cfg: &EAConfig,
    strategy: &mut S,
    rng: &mut R,
) -> Result<Vec<Individual>>
where
    S: FitnessStrategy + ?Sized,
    R: Rng + ?Sized,
{
    let mut pop = Vec::with_capacity(cfg.pop_size);
    for _ in 0..cfg.pop_size {
        let genes = problem
            .bounds()
            .iter()
            .map(|&(lo, hi)| rng.gen_range(lo..=hi))
            .collect();
        let mut ind = Individual::new(genes);
        strategy.evaluate_initial(&mut ind, problem)?;
        pop.push(ind);
    }
    Ok(pop)
}

fn rank_and_crowd(pop: &[Individual]) -> Result<(Vec<usize>, Vec<f64>)> {
    let fronts = fast_nondominated_sort(pop)?;
    let mut ranks = vec![0; pop.len()];
    let mut crowding = vec![0.0; pop.len()];
    for (r, front) in fronts.iter().enumerate() {
        let objs: Vec<&[f64]> = front
            .iter()
            .map(|&i| pop[i].objectives().unwrap_or_default())
            .collect();
        for (&i, d) in front.iter().zip(crowding_distance(&objs)) {
            ranks[i] = r + 1;
            crowding[i] = d;
        }
    }
    Ok((ranks, crowding))
}

/// (μ + λ) truncation: keeps the best `size` members by front, then by
/// crowding distance within the last admitted front.
pub fn environmental_selection(combined: Vec<Individual>, size: usize) -> Result<Vec<Individual>> {
    let fronts = fast_nondominated_sort(&combined)?;
    let mut keep: Vec<usize> = Vec::with_capacity(size);
    for front in fronts {
        if keep.len() + front.len() <= size {
            keep.extend(front);
            continue;
        }
        let objs: Vec<&[f64]> = front
            .iter()
            .map(|&i| combined[i].objectives().unwrap_or_default())
            .collect();
        let crowding = crowding_distance(&objs);
        let mut order: Vec<usize> = (0..front.len()).collect();
        order.sort_by(|&a, &b| crowding[b].total_cmp(&crowding[a]));
        keep.extend(order.into_iter().take(size - keep.len()).map(|k| front[k]));
        break;
    }
    keep.sort_unstable();
    let mut slots: Vec<Option<Individual>> = combined.into_iter().map(Some).collect();
    Ok(keep
        .into_iter()
        .filter_map(|i| slots[i].take())
        .collect())
}

/// Produces the next population: tournament selection, SBX, polynomial
/// mutation, strategy-driven evaluation, and elitist truncation.
pub fn evolve_generation<S, R>(
    pop: &[Individual],
    problem: &Problem,
    strategy: &mut S,
    cfg: &EAConfig,
    generation: usize,
    rng: &mut R,
) -> Result<(Vec<Individual>, GenerationStats)>
where
    S: FitnessStrategy + ?Sized,
    R: Rng + ?Sized,
{
    if pop.is_empty() {
        return Err(Error::EmptyPopulation);
    }
    strategy.prepare_generation(generation)?;
    let (ranks, crowding) = rank_and_crowd(pop)?;
    let bounds = problem.bounds();

    let mut offspring = Vec::with_capacity(cfg.pop_size);
    while offspring.len() < cfg.pop_size {
        let a = binary_tournament(&ranks, &crowding, rng)?;
        let b = binary_tournament(&ranks, &crowding, rng)?;
        let (mut c1, mut c2) = sbx_crossover(&pop[a], &pop[b], [a, b], bounds, cfg, rng);
        polynomial_mutation(&mut c1, bounds, cfg, rng);
        polynomial_mutation(&mut c2, bounds, cfg, rng);
        offspring.push(c1);
        if offspring.len() < cfg.pop_size {
            offspring.push(c2);
        }
    }

    let mut stats = GenerationStats { generation, ..Default::default() };
    for child in &mut offspring {
        let outcome = strategy.evaluate_offspring(child, pop, problem)?;
        stats.record(outcome);
    }

    let mut combined = pop.to_vec();
    combined.extend(offspring);
    let next = environmental_selection(combined, cfg.pop_size)?;
    Ok((next, stats))
}

/// A seeded NSGA-II run over one problem.
pub struct Nsga2<'p, S> {
    problem: &'p Problem,
    cfg: EAConfig,
    strategy: S,
    rng: ChaCha8Rng,
    population: Vec<Individual>,
    generation: usize,
    exact_evaluations: usize,
}

impl<'p, S: FitnessStrategy> Nsga2<'p, S> {
    /// Validates the configuration and evaluates the initial population.
    pub fn new(problem: &'p Problem, cfg: EAConfig, mut strategy: S) -> Result<Self> {
        cfg.validate()?;
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
        let population = initial_population(problem, &cfg, &mut strategy, &mut rng)?;
        let exact_evaluations = population.len();
        Ok(Self {
            problem,
            cfg,
            strategy,
            rng,
            population,
            generation: 0,
            exact_evaluations,
        })
    }

    pub fn step(&mut self) -> Result<GenerationStats> {
        let generation = self.generation + 1;
        let (next, stats) = evolve_generation(
            &self.population,
            self.problem,
            &mut self.strategy,
            &self.cfg,
            generation,
            &mut self.rng,
        )?;
        self.population = next;
        self.generation = generation;
        self.exact_evaluations += stats.exact;
        Ok(stats)
    }

    /// Runs the remaining generations and returns their statistics.
    pub fn run(&mut self) -> Result<Vec<GenerationStats>> {
        let mut out = Vec::new();
        while self.generation < self.cfg.generations {
            out.push(self.step()?);
        }
        Ok(out)
    }

    pub fn population(&self) -> &[Individual] {
        &self.population
    }

    pub fn generation(&self) -> usize {
        self.generation
    }

    /// Exact evaluations so far, including the initial population.
    pub fn exact_evaluations(&self) -> usize {
        self.exact_evaluations
    }

    pub fn strategy(&self) -> &S {
        &self.strategy
    }

    pub fn problem(&self) -> &Problem {
        self.problem
    }

    pub fn config(&self) -> &EAConfig {
        &self.cfg
    }

    pub fn into_parts(self) -> (Vec<Individual>, S) {
        (self.population, self.strategy)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::hypervolume_2d;
    use crate::nsga2::pareto_dominates;

    fn front_hv(pop: &[Individual], reference: [f64; 2]) -> f64 {
        let pts: Vec<[f64; 2]> = pop
            .iter()
            .filter_map(|i| i.objectives().map(|o| [o[0], o[1]]))
            .collect();
        hypervolume_2d(&pts, reference)
    }

    #[test]
    fn exact_strategy_spends_pop_size_per_generation() {
        let problem = Problem::by_name("zdt1").unwrap();
        let cfg = EAConfig { generations: 3, rng_seed: 9, ..EAConfig::default() };
        let mut ea = Nsga2::new(&problem, cfg, ExactStrategy).unwrap();
        for stats in ea.run().unwrap() {
            assert_eq!(stats.exact, 50);
            assert_eq!(stats.offspring(), 50);
        }
        assert_eq!(ea.population().len(), 50);
        assert_eq!(ea.exact_evaluations(), 200);
    }

    #[test]
    fn same_seed_same_trajectory() {
        let problem = Problem::by_name("cf1").unwrap();
        let cfg = EAConfig { generations: 10, rng_seed: 77, ..EAConfig::default() };
        let mut a = Nsga2::new(&problem, cfg.clone(), ExactStrategy).unwrap();
        let mut b = Nsga2::new(&problem, cfg, ExactStrategy).unwrap();
        a.run().unwrap();
        b.run().unwrap();
        assert_eq!(a.population(), b.population());
    }

    #[test]
    fn hypervolume_rarely_drops_under_exact_evaluation() {
        // With exact fitness, elitist truncation can only lose HV when
        // crowding discards a first-front member.
        let problem = Problem::by_name("zdt1").unwrap();
        let reference = problem.hv_reference();
        let (mut steps, mut non_decreasing) = (0, 0);
        for seed in 0..30 {
            let cfg = EAConfig { generations: 20, rng_seed: seed, ..EAConfig::default() };
            let mut ea = Nsga2::new(&problem, cfg, ExactStrategy).unwrap();
            let mut prev = front_hv(ea.population(), reference);
            for _ in 0..20 {
                ea.step().unwrap();
                let hv = front_hv(ea.population(), reference);
                steps += 1;
                if hv >= prev - 1e-12 {
                    non_decreasing += 1;
                }
                prev = hv;
            }
        }
        assert!(non_decreasing * 2 > steps, "{non_decreasing}/{steps}");
    }

    #[test]
    fn first_front_survives_when_truncation_does_not_bind() {
        // Parents: 3 nondominated points plus dominated filler. Offspring are
        // all dominated, so the old first front fits entirely and must stay.
        let mk = |a: f64, b: f64| Individual::evaluated(vec![], vec![a, b], 0.0);
        let mut combined = vec![mk(0.0, 1.0), mk(0.5, 0.5), mk(1.0, 0.0)];
        combined.extend((0..5).map(|i| mk(2.0 + i as f64, 2.0 + i as f64)));
        let next = environmental_selection(combined, 4).unwrap();
        assert_eq!(next.len(), 4);
        for p in [[0.0, 1.0], [0.5, 0.5], [1.0, 0.0]] {
            assert!(next.iter().any(|i| i.objectives() == Some(&p[..])));
        }
        for a in &next {
            for b in &next[..3] {
                assert!(!pareto_dominates(a.objectives().unwrap(), b.objectives().unwrap()));
            }
        }
    }

    #[test]
    fn truncation_prefers_boundary_points() {
        let mk = |a: f64, b: f64| Individual::evaluated(vec![], vec![a, b], 0.0);
        let combined = vec![mk(0.0, 1.0), mk(0.45, 0.55), mk(0.5, 0.5), mk(1.0, 0.0)];
        let next = environmental_selection(combined, 3).unwrap();
        let kept: Vec<&[f64]> = next.iter().map(|i| i.objectives().unwrap()).collect();
        assert!(kept.contains(&&[0.0, 1.0][..]));
        assert!(kept.contains(&&[1.0, 0.0][..]));
    }
}
