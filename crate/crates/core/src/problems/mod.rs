//! Benchmark problems: ZDT1-4, ZDT6, UF1-3, UF5 and CF1-5.
//!
//! Every problem is bi-objective and minimized. CF problems carry a single
//! `c(x) ≥ 0` constraint whose total violation is `max(0, -c(x))`.

mod cec09;
mod zdt;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::nsga2::{pareto_dominates, Individual};

/// Points used when validating a reference point against the true front.
const VALIDATION_SAMPLES: usize = 1000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ProblemKind {
    Zdt1,
    Zdt2,
    Zdt3,
    Zdt4,
    Zdt6,
    Uf1,
    Uf2,
    Uf3,
    Uf5,
    Cf1,
    Cf2,
    Cf3,
    Cf4,
    Cf5,
}

impl ProblemKind {
    pub const ALL: [ProblemKind; 14] = [
        ProblemKind::Zdt1,
        ProblemKind::Zdt2,
        ProblemKind::Zdt3,
        ProblemKind::Zdt4,
        ProblemKind::Zdt6,
        ProblemKind::Uf1,
        ProblemKind::Uf2,
        ProblemKind::Uf3,
        ProblemKind::Uf5,
        ProblemKind::Cf1,
        ProblemKind::Cf2,
        ProblemKind::Cf3,
        ProblemKind::Cf4,
        ProblemKind::Cf5,
    ];

    pub fn name(self) -> &'static str {
        use ProblemKind::*;
        match self {
            Zdt1 => "zdt1",
            Zdt2 => "zdt2",
            Zdt3 => "zdt3",
            Zdt4 => "zdt4",
            Zdt6 => "zdt6",
            Uf1 => "uf1",
            Uf2 => "uf2",
            Uf3 => "uf3",
            Uf5 => "uf5",
            Cf1 => "cf1",
            Cf2 => "cf2",
            Cf3 => "cf3",
            Cf4 => "cf4",
            Cf5 => "cf5",
        }
    }

    pub fn dimension(self) -> usize {
        use ProblemKind::*;
        match self {
            Zdt1 | Zdt2 | Zdt3 => 6,
            Zdt4 | Zdt6 => 10,
            Cf1 | Cf2 | Cf3 | Cf4 | Cf5 => 10,
            Uf1 | Uf2 | Uf3 | Uf5 => 30,
        }
    }

    /// Minimum Gaussian granule width.
    pub fn sigma_min(self) -> f64 {
        use ProblemKind::*;
        match self {
            Zdt1 => 2f64.powi(-4),
            Zdt2 | Zdt3 | Zdt6 => 2f64.powi(-5),
            Zdt4 => 2f64.powi(-6),
            _ => 2f64.powi(-4),
        }
    }

    /// Hypervolume reference point.
    pub fn hv_reference(self) -> [f64; 2] {
        use ProblemKind::*;
        match self {
            Zdt1 => [1.1, 3.5],
            Zdt2 => [1.1, 5.0],
            Zdt3 => [1.1, 6.0],
            Zdt4 => [1.1, 140.0],
            Zdt6 => [1.1, 9.0],
            Cf1 => [3.0, 3.0],
            Cf2 => [8.0, 7.0],
            Cf3 => [68.0, 59.0],
            Cf4 => [18.0, 19.0],
            Cf5 => [31.0, 32.0],
            Uf1 => [8.0, 7.0],
            Uf2 => [6.0, 5.0],
            Uf3 => [12.0, 10.0],
            Uf5 => [18.0, 15.0],
        }
    }

    pub fn n_constraints(self) -> usize {
        use ProblemKind::*;
        match self {
            Cf1 | Cf2 | Cf3 | Cf4 | Cf5 => 1,
            _ => 0,
        }
    }

    fn bounds(self) -> Vec<(f64, f64)> {
        use ProblemKind::*;
        let d = self.dimension();
        let tail = match self {
            Zdt1 | Zdt2 | Zdt3 | Zdt6 | Uf3 | Cf1 => (0.0, 1.0),
            Zdt4 => (-5.0, 5.0),
            Uf1 | Uf2 | Uf5 | Cf2 => (-1.0, 1.0),
            Cf3 | Cf4 | Cf5 => (-2.0, 2.0),
        };
        std::iter::once((0.0, 1.0))
            .chain(std::iter::repeat_n(tail, d - 1))
            .collect()
    }

    fn front(self) -> FrontShape {
        use ProblemKind::*;
        let convex: fn(f64) -> f64 = |f1| 1.0 - f1.sqrt();
        let concave: fn(f64) -> f64 = |f1| 1.0 - f1 * f1;
        let linear_points: fn(usize) -> [f64; 2] = |i| {
            let f1 = i as f64 / 20.0;
            [f1, 1.0 - f1]
        };
        match self {
            Zdt1 | Zdt4 | Uf1 | Uf2 | Uf3 => FrontShape::curve(&[(0.0, 1.0)], convex),
            Zdt2 => FrontShape::curve(&[(0.0, 1.0)], concave),
            Zdt3 => FrontShape::curve(&zdt::ZDT3_SEGMENTS, |f1| {
                1.0 - f1.sqrt() - f1 * (10.0 * std::f64::consts::PI * f1).sin()
            }),
            Zdt6 => FrontShape::curve(&[(zdt::ZDT6_F1_MIN, 1.0)], concave),
            Uf5 | Cf1 => FrontShape::Discrete { count: 21, point: linear_points },
            Cf2 => FrontShape::curve(&[(0.0, 0.0), (1.0 / 16.0, 0.25), (9.0 / 16.0, 1.0)], convex),
            Cf3 => FrontShape::curve(
                &[(0.0, 0.0), (0.5, 0.5f64.sqrt()), (0.75f64.sqrt(), 1.0)],
                concave,
            ),
            Cf4 | Cf5 => FrontShape::curve(&[(0.0, 1.0)], |f1| {
                if f1 <= 0.5 {
                    1.0 - f1
                } else if f1 <= 0.75 {
                    0.75 - 0.5 * f1
                } else {
                    1.125 - f1
                }
            }),
        }
    }
}

impl fmt::Display for ProblemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ProblemKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        ProblemKind::ALL
            .into_iter()
            .find(|k| k.name() == lower)
            .ok_or_else(|| Error::UnknownProblem(s.to_string()))
    }
}

enum FrontShape {
    /// `f2 = f(f1)` over a union of closed f1 intervals; zero-length
    /// intervals are isolated points.
    Curve {
        segments: Vec<(f64, f64)>,
        f2: fn(f64) -> f64,
    },
    /// A finite set of Pareto-optimal points.
    Discrete {
        count: usize,
        point: fn(usize) -> [f64; 2],
    },
}

impl FrontShape {
    fn curve(segments: &[(f64, f64)], f2: fn(f64) -> f64) -> Self {
        FrontShape::Curve { segments: segments.to_vec(), f2 }
    }

    fn sample(&self, points: usize) -> Vec<[f64; 2]> {
        match self {
            FrontShape::Discrete { count, point } => {
                if points >= *count {
                    return (0..*count).map(point).collect();
                }
                let last = (*count - 1) as f64;
                (0..points)
                    .map(|k| {
                        let i = (k as f64 * last / (points - 1) as f64).round() as usize;
                        point(i)
                    })
                    .collect()
            }
            FrontShape::Curve { segments, f2 } => {
                let isolated: Vec<f64> = segments
                    .iter()
                    .filter(|(lo, hi)| hi <= lo)
                    .map(|&(lo, _)| lo)
                    .collect();
                let spans: Vec<(f64, f64)> =
                    segments.iter().copied().filter(|(lo, hi)| hi > lo).collect();
                let total: f64 = spans.iter().map(|(lo, hi)| hi - lo).sum();
                let along = points.saturating_sub(isolated.len());

                let mut f1s = isolated;
                for k in 0..along {
                    let mut s = if along > 1 {
                        total * k as f64 / (along - 1) as f64
                    } else {
                        0.0
                    };
                    let mut placed = spans.last().map_or(0.0, |s| s.1);
                    for &(lo, hi) in &spans {
                        if s <= hi - lo {
                            placed = lo + s;
                            break;
                        }
                        s -= hi - lo;
                    }
                    f1s.push(placed);
                }
                f1s.sort_by(f64::total_cmp);
                f1s.into_iter().map(|f1| [f1, f2(f1)]).collect()
            }
        }
    }
}

/// A benchmark instance with its box constraints and metadata.
#[derive(Clone, Debug, PartialEq)]
pub struct Problem {
    kind: ProblemKind,
    bounds: Vec<(f64, f64)>,
}

impl Problem {
    /// Builds the problem and checks that its reference point is dominated by
    /// the true front.
    pub fn new(kind: ProblemKind) -> Result<Self> {
        let problem = Problem { kind, bounds: kind.bounds() };
        let reference = kind.hv_reference();
        for p in problem.sample_true_front(VALIDATION_SAMPLES)? {
            if !(p[0] <= reference[0] && p[1] <= reference[1] && p != reference) {
                return Err(Error::Invariant(format!(
                    "{kind}: reference point {reference:?} not dominated by front point {p:?}"
                )));
            }
        }
        Ok(problem)
    }

    pub fn by_name(name: &str) -> Result<Self> {
        Self::new(name.parse()?)
    }

    pub fn kind(&self) -> ProblemKind {
        self.kind
    }

    pub fn name(&self) -> &'static str {
        self.kind.name()
    }

    pub fn dimension(&self) -> usize {
        self.bounds.len()
    }

    pub fn n_objectives(&self) -> usize {
        2
    }

    pub fn n_constraints(&self) -> usize {
        self.kind.n_constraints()
    }

    pub fn bounds(&self) -> &[(f64, f64)] {
        &self.bounds
    }

    pub fn sigma_min(&self) -> f64 {
        self.kind.sigma_min()
    }

    pub fn hv_reference(&self) -> [f64; 2] {
        self.kind.hv_reference()
    }

    /// Objective values and total constraint violation of `genes`.
    pub fn evaluate(&self, genes: &[f64]) -> Result<(Vec<f64>, f64)> {
        if genes.len() != self.dimension() {
            return Err(Error::DimensionMismatch {
                expected: self.dimension(),
                actual: genes.len(),
            });
        }
        for (index, (&value, &(lower, upper))) in genes.iter().zip(&self.bounds).enumerate() {
            if !(value >= lower && value <= upper) {
                return Err(Error::OutOfBounds { index, value, lower, upper });
            }
        }
        use ProblemKind::*;
        let (f, violation) = match self.kind {
            Zdt1 => (zdt::zdt1(genes), 0.0),
            Zdt2 => (zdt::zdt2(genes), 0.0),
            Zdt3 => (zdt::zdt3(genes), 0.0),
            Zdt4 => (zdt::zdt4(genes), 0.0),
            Zdt6 => (zdt::zdt6(genes), 0.0),
            Uf1 => (cec09::uf1(genes), 0.0),
            Uf2 => (cec09::uf2(genes), 0.0),
            Uf3 => (cec09::uf3(genes), 0.0),
            Uf5 => (cec09::uf5(genes), 0.0),
            Cf1 => cec09::cf1(genes),
            Cf2 => cec09::cf2(genes),
            Cf3 => cec09::cf3(genes),
            Cf4 => cec09::cf4(genes),
            Cf5 => cec09::cf5(genes),
        };
        Ok((f.to_vec(), violation))
    }

    /// Evaluates exactly and stores the result on the individual.
    pub fn evaluate_into(&self, ind: &mut Individual) -> Result<()> {
        let (objectives, violation) = self.evaluate(&ind.genes)?;
        ind.set_exact(objectives, violation);
        Ok(())
    }

    /// `points` samples of the analytical Pareto front, sorted by f1.
    ///
    /// Continuous fronts are sampled evenly in f1 along the union of their
    /// segments. Fronts made of finitely many points (UF5, CF1) return at most
    /// that many points.
    pub fn sample_true_front(&self, points: usize) -> Result<Vec<[f64; 2]>> {
        if points < 2 {
            return Err(Error::Config(format!(
                "true-front sample needs at least 2 points, got {points}"
            )));
        }
        Ok(self.kind.front().sample(points))
    }
}

/// Every registered problem.
pub fn registry() -> Vec<Problem> {
    ProblemKind::ALL
        .into_iter()
        .map(|k| Problem::new(k).expect("registered problems are valid"))
        .collect()
}

/// Returns `true` when no point of the sample dominates another.
pub fn mutually_nondominated(points: &[[f64; 2]]) -> bool {
    points.iter().all(|a| points.iter().all(|b| !pareto_dominates(a, b)))
}
