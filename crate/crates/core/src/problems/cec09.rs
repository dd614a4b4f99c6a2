//! Bi-objective UF and CF instances of the CEC 2009 competition suite.
//!
//! Variables are 1-indexed in the usual statement of these problems; here
//! `x[j - 1]` is variable `j`. `J1` collects the odd indices `3, 5, ...` and
//! `J2` the even indices `2, 4, ...`.

use std::f64::consts::PI;

/// Sums a per-variable term separately over the odd and even index sets.
struct Split {
    odd: f64,
    even: f64,
    odd_count: f64,
    even_count: f64,
}

impl Split {
    fn new(n: usize, mut term: impl FnMut(usize) -> f64) -> Self {
        let mut s = Split { odd: 0.0, even: 0.0, odd_count: 0.0, even_count: 0.0 };
        for j in 2..=n {
            let t = term(j);
            if j % 2 == 1 {
                s.odd += t;
                s.odd_count += 1.0;
            } else {
                s.even += t;
                s.even_count += 1.0;
            }
        }
        s
    }
}

fn sin_shift(x: &[f64], j: usize) -> f64 {
    let n = x.len() as f64;
    (6.0 * PI * x[0] + j as f64 * PI / n).sin()
}

fn cos_shift(x: &[f64], j: usize) -> f64 {
    let n = x.len() as f64;
    (6.0 * PI * x[0] + j as f64 * PI / n).cos()
}

fn power_shift(x: &[f64], j: usize) -> f64 {
    let n = x.len() as f64;
    x[0].powf(0.5 * (1.0 + 3.0 * (j as f64 - 2.0) / (n - 2.0)))
}

/// `4 Σ y² − 2 Π cos(20 y π / √j) + 2` over one index set.
fn rastrigin_like(x: &[f64], shift: impl Fn(&[f64], usize) -> f64) -> (f64, f64) {
    let n = x.len();
    let (mut sum1, mut sum2, mut prod1, mut prod2) = (0.0, 0.0, 1.0, 1.0);
    let (mut c1, mut c2) = (0.0, 0.0);
    for j in 2..=n {
        let y = x[j - 1] - shift(x, j);
        let p = (20.0 * y * PI / (j as f64).sqrt()).cos();
        if j % 2 == 1 {
            sum1 += y * y;
            prod1 *= p;
            c1 += 1.0;
        } else {
            sum2 += y * y;
            prod2 *= p;
            c2 += 1.0;
        }
    }
    (
        2.0 * (4.0 * sum1 - 2.0 * prod1 + 2.0) / c1,
        2.0 * (4.0 * sum2 - 2.0 * prod2 + 2.0) / c2,
    )
}

/// Violation of a `c ≥ 0` constraint.
fn violation(c: f64) -> f64 {
    (-c).max(0.0)
}

fn squashed(t: f64) -> f64 {
    t / (1.0 + (4.0 * t.abs()).exp())
}

fn h_second(t: f64) -> f64 {
    if t < 1.5 * (1.0 - std::f64::consts::FRAC_1_SQRT_2) {
        t.abs()
    } else {
        0.125 + (t - 1.0).powi(2)
    }
}

pub(super) fn uf1(x: &[f64]) -> [f64; 2] {
    let s = Split::new(x.len(), |j| (x[j - 1] - sin_shift(x, j)).powi(2));
    [
        x[0] + 2.0 * s.odd / s.odd_count,
        1.0 - x[0].sqrt() + 2.0 * s.even / s.even_count,
    ]
}

pub(super) fn uf2(x: &[f64]) -> [f64; 2] {
    let n = x.len() as f64;
    let s = Split::new(x.len(), |j| {
        let amp = 0.3 * x[0] * x[0] * (24.0 * PI * x[0] + 4.0 * j as f64 * PI / n).cos()
            + 0.6 * x[0];
        let carrier = if j % 2 == 1 { cos_shift(x, j) } else { sin_shift(x, j) };
        (x[j - 1] - amp * carrier).powi(2)
    });
    [
        x[0] + 2.0 * s.odd / s.odd_count,
        1.0 - x[0].sqrt() + 2.0 * s.even / s.even_count,
    ]
}

pub(super) fn uf3(x: &[f64]) -> [f64; 2] {
    let (t1, t2) = rastrigin_like(x, power_shift);
    [x[0] + t1, 1.0 - x[0].sqrt() + t2]
}

pub(super) fn uf5(x: &[f64]) -> [f64; 2] {
    const N: f64 = 10.0;
    const EPSILON: f64 = 0.1;
    let s = Split::new(x.len(), |j| {
        let y = x[j - 1] - sin_shift(x, j);
        2.0 * y * y - (4.0 * PI * y).cos() + 1.0
    });
    let ripple = (0.5 / N + EPSILON) * (2.0 * N * PI * x[0]).sin().abs();
    [
        x[0] + ripple + 2.0 * s.odd / s.odd_count,
        1.0 - x[0] + ripple + 2.0 * s.even / s.even_count,
    ]
}

pub(super) fn cf1(x: &[f64]) -> ([f64; 2], f64) {
    const N: f64 = 10.0;
    const A: f64 = 1.0;
    let s = Split::new(x.len(), |j| (x[j - 1] - power_shift(x, j)).powi(2));
    let f1 = x[0] + 2.0 * s.odd / s.odd_count;
    let f2 = 1.0 - x[0] + 2.0 * s.even / s.even_count;
    let c = f1 + f2 - A * (N * PI * (f1 - f2 + 1.0)).sin().abs() - 1.0;
    ([f1, f2], violation(c))
}

pub(super) fn cf2(x: &[f64]) -> ([f64; 2], f64) {
    const N: f64 = 2.0;
    const A: f64 = 1.0;
    let s = Split::new(x.len(), |j| {
        let shift = if j % 2 == 1 { sin_shift(x, j) } else { cos_shift(x, j) };
        (x[j - 1] - shift).powi(2)
    });
    let f1 = x[0] + 2.0 * s.odd / s.odd_count;
    let f2 = 1.0 - x[0].sqrt() + 2.0 * s.even / s.even_count;
    let t = f2 + f1.sqrt() - A * (N * PI * (f1.sqrt() - f2 + 1.0)).sin() - 1.0;
    ([f1, f2], violation(squashed(t)))
}

pub(super) fn cf3(x: &[f64]) -> ([f64; 2], f64) {
    const N: f64 = 2.0;
    const A: f64 = 1.0;
    let (t1, t2) = rastrigin_like(x, sin_shift);
    let f1 = x[0] + t1;
    let f2 = 1.0 - x[0] * x[0] + t2;
    let c = f2 + f1 * f1 - A * (N * PI * (f1 * f1 - f2 + 1.0)).sin() - 1.0;
    ([f1, f2], violation(c))
}

pub(super) fn cf4(x: &[f64]) -> ([f64; 2], f64) {
    let s = Split::new(x.len(), |j| {
        let y = x[j - 1] - sin_shift(x, j);
        if j == 2 {
            h_second(y)
        } else {
            y * y
        }
    });
    let f1 = x[0] + s.odd;
    let f2 = 1.0 - x[0] + s.even;
    let t = x[1] - sin_shift(x, 2) - 0.5 * x[0] + 0.25;
    ([f1, f2], violation(squashed(t)))
}

pub(super) fn cf5(x: &[f64]) -> ([f64; 2], f64) {
    let s = Split::new(x.len(), |j| {
        let carrier = if j % 2 == 1 { cos_shift(x, j) } else { sin_shift(x, j) };
        let y = x[j - 1] - 0.8 * x[0] * carrier;
        if j == 2 {
            h_second(y)
        } else {
            2.0 * y * y - (4.0 * PI * y).cos() + 1.0
        }
    });
    let f1 = x[0] + s.odd;
    let f2 = 1.0 - x[0] + s.even;
    let c = x[1] - 0.8 * x[0] * sin_shift(x, 2) - 0.5 * x[0] + 0.25;
    ([f1, f2], violation(c))
}
