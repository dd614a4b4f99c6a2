//! The NSGA-II engine and its building blocks.

mod crowding;
mod dominance;
mod engine;
mod individual;
mod selection;
mod variation;

pub use crowding::crowding_distance;
pub use dominance::{
    constrained_dominates, fast_nondominated_sort, nondominated_fronts, pareto_dominates,
};
pub use engine::{
    environmental_selection, evolve_generation, initial_population, ExactStrategy,
    FitnessStrategy, GateOutcome, GenerationStats, Nsga2,
};
pub use individual::{EAConfig, EvalKind, Individual};
pub use selection::binary_tournament;
pub use variation::{polynomial_mutation, sbx_crossover};
