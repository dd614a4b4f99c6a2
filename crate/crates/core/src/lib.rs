//! Multi-objective evolutionary optimization with fuzzy fitness granulation.
//!
//! The crate provides an NSGA-II engine whose offspring are scored through a
//! pluggable [`FitnessStrategy`]:
//!
//! * [`ExactStrategy`] evaluates every offspring with the real objective
//!   functions.
//! * [`AffgStrategy`] keeps a pool of Gaussian fuzzy granules and copies the
//!   fitness of the most similar granule whenever the similarity reaches a
//!   fixed threshold.
//! * [`ModifiedAffgStrategy`] adds a second gate: an offspring that is not
//!   similar enough to the pool is only evaluated exactly when it lies closer
//!   to the pool's current Pareto set than at least one of its parents.
//!
//! Benchmarks (ZDT, CEC 2009 UF/CF), quality indicators (hypervolume, IGD),
//! and a seeded multi-run experiment harness round out the crate.
//!
//! ```
//! use affg::{EAConfig, ModifiedAffgStrategy, Nsga2, PoolConfig, Problem};
//!
//! let problem = Problem::by_name("zdt1").unwrap();
//! let cfg = EAConfig { generations: 5, ..EAConfig::default() };
//! let strategy = ModifiedAffgStrategy::new(PoolConfig::for_problem(&problem, cfg.pop_size));
//! let mut ea = Nsga2::new(&problem, cfg, strategy).unwrap();
//! ea.run().unwrap();
//! assert_eq!(ea.population().len(), 50);
//! assert!(ea.exact_evaluations() <= 50 * 6);
//! ```

pub mod error;
pub mod granulation;
pub mod harness;
pub mod metrics;
pub mod nsga2;
pub mod pareto_filter;
pub mod problems;

pub use error::{Error, Result};
pub use granulation::{affg_evaluate, AffgStrategy, Granule, GranulePool, PoolConfig};
pub use metrics::{area_under_curve, hypervolume_2d, igd, percent_difference, MetricSeries};
pub use nsga2::{
    EAConfig, EvalKind, ExactStrategy, FitnessStrategy, GateOutcome, GenerationStats,
    Individual, Nsga2,
};
pub use pareto_filter::{
    min_distance_to_pareto, modified_evaluate, CurrentParetoSet, ModifiedAffgStrategy,
};
pub use problems::{Problem, ProblemKind};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/nsga2.md")]
    mod nsga2 {}
    #[doc = include_str!("../../../book/src/granulation.md")]
    mod granulation {}
    #[doc = include_str!("../../../book/src/pareto_filter.md")]
    mod pareto_filter {}
    #[doc = include_str!("../../../book/src/problems.md")]
    mod problems {}
    #[doc = include_str!("../../../book/src/metrics.md")]
    mod metrics {}
    #[doc = include_str!("../../../book/src/experiments.md")]
    mod experiments {}
}
