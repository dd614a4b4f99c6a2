//! Zitzler-Deb-Thiele test problems (ZDT5 is binary and not included).

use std::f64::consts::PI;

fn tail_mean(x: &[f64]) -> f64 {
    x[1..].iter().sum::<f64>() / (x.len() - 1) as f64
}

pub(super) fn zdt1(x: &[f64]) -> [f64; 2] {
    let f1 = x[0];
    let g = 1.0 + 9.0 * tail_mean(x);
    [f1, g * (1.0 - (f1 / g).sqrt())]
}

pub(super) fn zdt2(x: &[f64]) -> [f64; 2] {
    let f1 = x[0];
    let g = 1.0 + 9.0 * tail_mean(x);
    [f1, g * (1.0 - (f1 / g).powi(2))]
}

pub(super) fn zdt3(x: &[f64]) -> [f64; 2] {
    let f1 = x[0];
    let g = 1.0 + 9.0 * tail_mean(x);
    let h = 1.0 - (f1 / g).sqrt() - (f1 / g) * (10.0 * PI * f1).sin();
    [f1, g * h]
}

pub(super) fn zdt4(x: &[f64]) -> [f64; 2] {
    let f1 = x[0];
    let g = 1.0
        + 10.0 * (x.len() - 1) as f64
        + x[1..]
            .iter()
            .map(|&v| v * v - 10.0 * (4.0 * PI * v).cos())
            .sum::<f64>();
    [f1, g * (1.0 - (f1 / g).sqrt())]
}

pub(super) fn zdt6(x: &[f64]) -> [f64; 2] {
    let f1 = 1.0 - (-4.0 * x[0]).exp() * (6.0 * PI * x[0]).sin().powi(6);
    let g = 1.0 + 9.0 * tail_mean(x).powf(0.25);
    [f1, g * (1.0 - (f1 / g).powi(2))]
}

/// f1 intervals of the disconnected ZDT3 front.
pub(super) const ZDT3_SEGMENTS: [(f64, f64); 5] = [
    (0.0, 0.0830015349),
    (0.1822287280, 0.2577623634),
    (0.4093136748, 0.4538821041),
    (0.6183967944, 0.6525117038),
    (0.8233317983, 0.8518328654),
];

/// Smallest f1 reachable on the ZDT6 front.
pub(super) const ZDT6_F1_MIN: f64 = 0.2807753191;
