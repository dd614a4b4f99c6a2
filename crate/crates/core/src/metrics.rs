//! Quality and cost indicators: hypervolume, IGD, trapezoidal areas under
//! per-generation curves, and percentage differences between two areas.

use std::cmp::Ordering;

use crate::error::{Error, Result};

/// Exact 2-D hypervolume (minimization) of `points` with respect to
/// `reference`.
///
/// Points that do not strictly dominate the reference point contribute
/// nothing, as do dominated points.
pub fn hypervolume_2d<T: AsRef<[f64]>>(points: &[T], reference: [f64; 2]) -> f64 {
    let mut inside: Vec<[f64; 2]> = points
        .iter()
        .map(|p| {
            let p = p.as_ref();
            [p[0], p[1]]
        })
        .filter(|p| p[0] < reference[0] && p[1] < reference[1])
        .collect();
    inside.sort_by(|a, b| {
        a[0].partial_cmp(&b[0])
            .unwrap_or(Ordering::Equal)
            .then(a[1].partial_cmp(&b[1]).unwrap_or(Ordering::Equal))
    });

    let mut volume = 0.0;
    let mut ceiling = reference[1];
    for p in inside {
        if p[1] < ceiling {
            volume += (reference[0] - p[0]) * (ceiling - p[1]);
            ceiling = p[1];
        }
    }
    volume
}

/// Inverted generational distance `(1/N) (Σ_j d_j^t)^(1/t)`, where `d_j` is
/// the Euclidean distance from the `j`-th reference point to its nearest
/// candidate. With `t = 1` this is the mean nearest distance.
pub fn igd<A, B>(front_sample: &[A], candidates: &[B], t: f64) -> Result<f64>
where
    A: AsRef<[f64]>,
    B: AsRef<[f64]>,
{
    if front_sample.is_empty() {
        return Err(Error::EmptyInput("true-front sample"));
    }
    if candidates.is_empty() {
        return Err(Error::EmptyInput("candidate set"));
    }
    if !(t >= 1.0 && t.is_finite()) {
        return Err(Error::Config(format!("IGD exponent must be finite and >= 1, got {t}")));
    }
    let total: f64 = front_sample
        .iter()
        .map(|y| {
            candidates
                .iter()
                .map(|x| euclidean(y.as_ref(), x.as_ref()))
                .fold(f64::INFINITY, f64::min)
                .powf(t)
        })
        .sum();
    Ok(total.powf(1.0 / t) / front_sample.len() as f64)
}

pub(crate) fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MetricKind {
    Hv,
    Igd,
    CumulativeExactEvals,
}

/// A metric recorded against generation numbers.
#[derive(Clone, Debug, PartialEq)]
pub struct MetricSeries {
    generation: Vec<usize>,
    values: Vec<f64>,
    kind: MetricKind,
}

impl MetricSeries {
    pub fn new(kind: MetricKind, generation: Vec<usize>, values: Vec<f64>) -> Result<Self> {
        if generation.len() != values.len() {
            return Err(Error::DimensionMismatch {
                expected: generation.len(),
                actual: values.len(),
            });
        }
        if generation.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Config("generations must be strictly increasing".into()));
        }
        if kind == MetricKind::CumulativeExactEvals && values.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Config("cumulative evaluation counts must not decrease".into()));
        }
        Ok(Self { generation, values, kind })
    }

    /// Series over generations `first, first + 1, ...`.
    pub fn consecutive(kind: MetricKind, first: usize, values: Vec<f64>) -> Result<Self> {
        let generation = (first..first + values.len()).collect();
        Self::new(kind, generation, values)
    }

    pub fn kind(&self) -> MetricKind {
        self.kind
    }

    pub fn generation(&self) -> &[usize] {
        &self.generation
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Trapezoidal integral of the series over its generation axis.
pub fn area_under_curve(series: &MetricSeries) -> Result<f64> {
    if series.len() < 2 {
        return Err(Error::Config(format!(
            "area under curve needs at least 2 points, got {}",
            series.len()
        )));
    }
    Ok(series
        .generation
        .windows(2)
        .zip(series.values.windows(2))
        .map(|(g, v)| (g[1] - g[0]) as f64 * (v[0] + v[1]) / 2.0)
        .sum())
}

/// `100 |a - b| / a`, with `a` the baseline.
pub fn percent_difference(a: f64, b: f64) -> Result<f64> {
    if a == 0.0 {
        return Err(Error::ZeroBaseline);
    }
    Ok(100.0 * (a - b).abs() / a.abs())
}
