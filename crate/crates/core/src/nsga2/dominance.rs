use super::Individual;
use crate::error::{Error, Result};

/// Pareto dominance for minimization: `a` is no worse everywhere and
/// strictly better somewhere.
pub fn pareto_dominates(a: &[f64], b: &[f64]) -> bool {
    let mut strictly_better = false;
    for (x, y) in a.iter().zip(b) {
        if x > y {
            return false;
        }
        if x < y {
            strictly_better = true;
        }
    }
    strictly_better
}

/// Deb's constrained domination: a feasible solution beats an infeasible one,
/// two infeasible solutions are ordered by total violation, and two feasible
/// ones fall back to Pareto dominance.
pub fn constrained_dominates(a: &[f64], a_violation: f64, b: &[f64], b_violation: f64) -> bool {
    match (a_violation > 0.0, b_violation > 0.0) {
        (false, true) => true,
        (true, false) => false,
        (true, true) => a_violation < b_violation,
        (false, false) => pareto_dominates(a, b),
    }
}

/// Splits `0..n` into nondomination fronts given a dominance predicate.
///
/// Each front is listed in ascending index order.
pub fn nondominated_fronts<F>(n: usize, dominates: F) -> Vec<Vec<usize>>
where
    F: Fn(usize, usize) -> bool,
{
    let mut dominated_by: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut domination_count = vec![0usize; n];
    let mut current = Vec::new();

    for p in 0..n {
        for q in (p + 1)..n {
            if dominates(p, q) {
                dominated_by[p].push(q);
                domination_count[q] += 1;
            } else if dominates(q, p) {
                dominated_by[q].push(p);
                domination_count[p] += 1;
            }
        }
    }
    for (p, &count) in domination_count.iter().enumerate() {
        if count == 0 {
            current.push(p);
        }
    }

    let mut fronts = Vec::new();
    while !current.is_empty() {
        let mut next = Vec::new();
        for &p in &current {
            for &q in &dominated_by[p] {
                domination_count[q] -= 1;
                if domination_count[q] == 0 {
                    next.push(q);
                }
            }
        }
        next.sort_unstable();
        fronts.push(current);
        current = next;
    }
    fronts
}

/// Fast nondominated sorting under constrained domination.
pub fn fast_nondominated_sort(pop: &[Individual]) -> Result<Vec<Vec<usize>>> {
    let objectives = pop
        .iter()
        .enumerate()
        .map(|(i, ind)| ind.objectives().ok_or(Error::Unevaluated(i)))
        .collect::<Result<Vec<_>>>()?;
    Ok(nondominated_fronts(pop.len(), |a, b| {
        constrained_dominates(
            objectives[a],
            pop[a].violation,
            objectives[b],
            pop[b].violation,
        )
    }))
}
