//! Bounded simulated binary crossover and polynomial mutation.

use rand::Rng;

use super::{EAConfig, Individual};

const SBX_EPS: f64 = 1.0e-14;

/// Bounded SBX on two parents.
///
/// With probability `crossover_prob` each variable is recombined with
/// probability 0.5 and the two resulting values are swapped between children
/// with probability 0.5. Children are clamped to the box and remember
/// `parents`; they start out unevaluated.
pub fn sbx_crossover<R: Rng + ?Sized>(
    p1: &Individual,
    p2: &Individual,
    parents: [usize; 2],
    bounds: &[(f64, f64)],
    cfg: &EAConfig,
    rng: &mut R,
) -> (Individual, Individual) {
    let mut c1 = p1.genes.clone();
    let mut c2 = p2.genes.clone();

    if rng.gen::<f64>() < cfg.crossover_prob {
        for (i, &(lower, upper)) in bounds.iter().enumerate() {
            if rng.gen::<f64>() > 0.5 {
                continue;
            }
            let (a, b) = (p1.genes[i], p2.genes[i]);
            if (a - b).abs() <= SBX_EPS {
                continue;
            }
            let y1 = a.min(b);
            let y2 = a.max(b);
            let u: f64 = rng.gen();
            let spread = y2 - y1;

            let beta_lo = 1.0 + 2.0 * (y1 - lower) / spread;
            let low = 0.5 * ((y1 + y2) - spread_factor(beta_lo, u, cfg.eta_c) * spread);
            let beta_hi = 1.0 + 2.0 * (upper - y2) / spread;
            let high = 0.5 * ((y1 + y2) + spread_factor(beta_hi, u, cfg.eta_c) * spread);

            let low = low.clamp(lower, upper);
            let high = high.clamp(lower, upper);
            if rng.gen_bool(0.5) {
                c1[i] = high;
                c2[i] = low;
            } else {
                c1[i] = low;
                c2[i] = high;
            }
        }
    }

    let child = |genes: Vec<f64>| Individual {
        parents: Some(parents),
        ..Individual::new(genes)
    };
    (child(c1), child(c2))
}

fn spread_factor(beta: f64, u: f64, eta: f64) -> f64 {
    let alpha = 2.0 - beta.powf(-(eta + 1.0));
    if u <= 1.0 / alpha {
        (u * alpha).powf(1.0 / (eta + 1.0))
    } else {
        (1.0 / (2.0 - u * alpha)).powf(1.0 / (eta + 1.0))
    }
}

/// Bounded polynomial mutation, applied gene by gene with the configured
/// probability. Returns `true` when at least one gene changed, in which case
/// the individual's objectives are cleared.
pub fn polynomial_mutation<R: Rng + ?Sized>(
    ind: &mut Individual,
    bounds: &[(f64, f64)],
    cfg: &EAConfig,
    rng: &mut R,
) -> bool {
    let prob = cfg.mutation_prob_for(ind.genes.len());
    let exponent = 1.0 / (cfg.eta_m + 1.0);
    let mut changed = false;

    for (gene, &(lower, upper)) in ind.genes.iter_mut().zip(bounds) {
        if rng.gen::<f64>() >= prob {
            continue;
        }
        let range = upper - lower;
        if range <= 0.0 {
            continue;
        }
        let y = *gene;
        let delta1 = (y - lower) / range;
        let delta2 = (upper - y) / range;
        let u: f64 = rng.gen();
        let deltaq = if u <= 0.5 {
            let xy = 1.0 - delta1;
            let val = 2.0 * u + (1.0 - 2.0 * u) * xy.powf(cfg.eta_m + 1.0);
            val.powf(exponent) - 1.0
        } else {
            let xy = 1.0 - delta2;
            let val = 2.0 * (1.0 - u) + 2.0 * (u - 0.5) * xy.powf(cfg.eta_m + 1.0);
            1.0 - val.powf(exponent)
        };
        let mutated = (y + deltaq * range).clamp(lower, upper);
        if mutated != y {
            *gene = mutated;
            changed = true;
        }
    }

    if changed {
        ind.invalidate();
    }
    changed
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn unit_bounds(d: usize) -> Vec<(f64, f64)> {
        vec![(0.0, 1.0); d]
    }

    #[test]
    fn identical_parents_are_a_fixed_point() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let cfg = EAConfig { crossover_prob: 1.0, ..EAConfig::default() };
        let p = Individual::new(vec![0.3, 0.7, 0.1]);
        for _ in 0..100 {
            let (a, b) = sbx_crossover(&p, &p, [0, 0], &unit_bounds(3), &cfg, &mut rng);
            assert_eq!(a.genes, p.genes);
            assert_eq!(b.genes, p.genes);
        }
    }

    #[test]
    fn zero_crossover_probability_copies_parents() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let cfg = EAConfig { crossover_prob: 0.0, ..EAConfig::default() };
        let p1 = Individual::new(vec![0.1, 0.2]);
        let p2 = Individual::new(vec![0.9, 0.8]);
        let (a, b) = sbx_crossover(&p1, &p2, [4, 7], &unit_bounds(2), &cfg, &mut rng);
        assert_eq!(a.genes, p1.genes);
        assert_eq!(b.genes, p2.genes);
        assert_eq!(a.parents, Some([4, 7]));
        assert_eq!(b.eval_kind, super::super::EvalKind::Unevaluated);
    }

    #[test]
    fn sbx_preserves_the_parent_mean() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let cfg = EAConfig { crossover_prob: 1.0, ..EAConfig::default() };
        let p1 = Individual::new(vec![0.2]);
        let p2 = Individual::new(vec![0.8]);
        let trials = 50_000;
        let mut sum = 0.0;
        for _ in 0..trials {
            let (a, b) = sbx_crossover(&p1, &p2, [0, 1], &unit_bounds(1), &cfg, &mut rng);
            sum += a.genes[0] + b.genes[0];
        }
        let mean = sum / (2 * trials) as f64;
        assert!((mean - 0.5).abs() < 0.01, "mean {mean}");
    }

    #[test]
    fn zero_mutation_probability_is_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let cfg = EAConfig { mutation_prob: Some(0.0), ..EAConfig::default() };
        let mut ind = Individual::evaluated(vec![0.4, 0.6], vec![1.0, 1.0], 0.0);
        let before = ind.clone();
        assert!(!polynomial_mutation(&mut ind, &unit_bounds(2), &cfg, &mut rng));
        assert_eq!(ind, before);
    }

    #[test]
    fn mutation_perturbation_is_centred() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let cfg = EAConfig { mutation_prob: Some(1.0), ..EAConfig::default() };
        let trials = 100_000;
        let mut sum = 0.0;
        for _ in 0..trials {
            let mut ind = Individual::new(vec![0.5]);
            polynomial_mutation(&mut ind, &unit_bounds(1), &cfg, &mut rng);
            sum += ind.genes[0] - 0.5;
        }
        let mean = sum / trials as f64;
        assert!(mean.abs() < 0.005, "mean perturbation {mean}");
    }

    #[test]
    fn mutation_keeps_parentage_and_resets_evaluation() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let cfg = EAConfig { mutation_prob: Some(1.0), ..EAConfig::default() };
        let mut ind = Individual::evaluated(vec![0.5, 0.5], vec![1.0, 1.0], 0.0);
        ind.parents = Some([2, 3]);
        assert!(polynomial_mutation(&mut ind, &unit_bounds(2), &cfg, &mut rng));
        assert_eq!(ind.parents, Some([2, 3]));
        assert!(ind.objectives.is_none());
    }

    proptest! {
        #[test]
        fn variation_respects_bounds(
            seed in any::<u64>(),
            genes in prop::collection::vec((0.0f64..=1.0, 0.0f64..=1.0), 1..8),
            at_edge in any::<bool>(),
        ) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let bounds: Vec<(f64, f64)> = (0..genes.len()).map(|i| (-1.0 - i as f64, 2.0)).collect();
            let scale = |t: f64, (lo, hi): (f64, f64)| if at_edge { lo } else { lo + t * (hi - lo) };
            let g1: Vec<f64> = genes.iter().zip(&bounds).map(|(&(a, _), &b)| scale(a, b)).collect();
            let g2: Vec<f64> = genes.iter().zip(&bounds).map(|(&(_, c), &b)| b.0 + c * (b.1 - b.0)).collect();
            let cfg = EAConfig { crossover_prob: 1.0, mutation_prob: Some(1.0), eta_c: 2.0, eta_m: 2.0, ..EAConfig::default() };
            let (mut a, mut b) = sbx_crossover(&Individual::new(g1), &Individual::new(g2), [0, 1], &bounds, &cfg, &mut rng);
            polynomial_mutation(&mut a, &bounds, &cfg, &mut rng);
            polynomial_mutation(&mut b, &bounds, &cfg, &mut rng);
            for child in [&a, &b] {
                for (x, &(lo, hi)) in child.genes.iter().zip(&bounds) {
                    prop_assert!(*x >= lo && *x <= hi, "{x} outside [{lo}, {hi}]");
                }
            }
        }
    }
}
