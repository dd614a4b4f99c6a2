use std::fs::{self, File};
use std::io::BufWriter;
use std::path::Path;

use super::config::ExperimentConfig;
use super::csv::{format_sig, write_rows};
use super::plots::emit_plots;
use super::run::{execute_experiment, ExperimentReport};
use crate::error::{Error, Result};
use crate::metrics::percent_difference;

/// One metric compared between two methods.
#[derive(Clone, Debug, PartialEq)]
pub struct ComparisonRow {
    pub metric: &'static str,
    pub value_a: f64,
    pub value_b: f64,
    /// `100 |a - b| / |a|`; zero when both values are zero, NaN when only
    /// the baseline is.
    pub percent_difference: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ComparisonReport {
    pub a: ExperimentReport,
    pub b: ExperimentReport,
    pub rows: Vec<ComparisonRow>,
}

impl ComparisonReport {
    const HEADER: &'static str = "metric,method_a,method_b,value_a,value_b,percent_difference";

    pub fn row(&self, metric: &str) -> Option<&ComparisonRow> {
        self.rows.iter().find(|r| r.metric == metric)
    }

    /// Directory names of the two methods; a repeated method gets `-2`.
    pub fn series_names(&self) -> (String, String) {
        let a = self.a.config.method.to_string();
        let b = self.b.config.method.to_string();
        if a == b {
            let b = format!("{b}-2");
            (a, b)
        } else {
            (a, b)
        }
    }

    /// Writes both experiments into sub-directories, `comparison.csv`, and
    /// the plot files.
    pub fn write(&self, dir: &Path, svg: bool) -> Result<()> {
        let (name_a, name_b) = self.series_names();
        fs::create_dir_all(dir)?;
        self.a.write(&dir.join(&name_a))?;
        self.b.write(&dir.join(&name_b))?;
        let rows: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| {
                vec![
                    r.metric.to_string(),
                    name_a.clone(),
                    name_b.clone(),
                    format_sig(r.value_a),
                    format_sig(r.value_b),
                    format_sig(r.percent_difference),
                ]
            })
            .collect();
        write_rows(BufWriter::new(File::create(dir.join("comparison.csv"))?), Self::HEADER, &rows)?;
        emit_plots(self, dir, svg)
    }
}

fn paired(metric: &'static str, value_a: f64, value_b: f64) -> ComparisonRow {
    let percent_difference = match percent_difference(value_a, value_b) {
        Ok(p) => p,
        Err(_) if value_b == 0.0 => 0.0,
        Err(_) => f64::NAN,
    };
    ComparisonRow { metric, value_a, value_b, percent_difference }
}

fn check_pairable(a: &ExperimentConfig, b: &ExperimentConfig) -> Result<()> {
    let mismatch = if a.problem != b.problem {
        Some("problem")
    } else if a.ea != b.ea {
        Some("evolutionary settings")
    } else if a.runs != b.runs || a.base_seed != b.base_seed {
        Some("runs or seeds")
    } else if a.front_points != b.front_points || a.measure_exact != b.measure_exact {
        Some("measurement settings")
    } else {
        None
    };
    match mismatch {
        Some(what) => Err(Error::Config(format!("cannot compare experiments with different {what}"))),
        None => Ok(()),
    }
}

/// Runs both configurations and pairs their areas under the mean curves and
/// their final qualities, with `cfg_a` as the baseline.
pub fn compare_methods(cfg_a: &ExperimentConfig, cfg_b: &ExperimentConfig) -> Result<ComparisonReport> {
    check_pairable(cfg_a, cfg_b)?;
    let a = execute_experiment(cfg_a)?;
    let b = execute_experiment(cfg_b)?;
    let (sa, sb) = (&a.summary, &b.summary);
    let rows = vec![
        paired("exact_evals", sa.auc_exact_evals, sb.auc_exact_evals),
        paired("hv", sa.auc_hv, sb.auc_hv),
        paired("igd", sa.auc_igd, sb.auc_igd),
        paired("final_hv", sa.mean_final_hv, sb.mean_final_hv),
        paired("final_igd", sa.mean_final_igd, sb.mean_final_igd),
    ];
    Ok(ComparisonReport { a, b, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::Method;
    use crate::problems::ProblemKind;

    fn cfg(method: Method) -> ExperimentConfig {
        let mut cfg = ExperimentConfig::new(ProblemKind::Cf4, method);
        cfg.runs = 2;
        cfg.ea.generations = 8;
        cfg.ea.pop_size = 20;
        cfg.front_points = 100;
        cfg
    }

    #[test]
    fn identical_methods_differ_by_nothing() {
        let report = compare_methods(&cfg(Method::Affg), &cfg(Method::Affg)).unwrap();
        assert_eq!(report.rows.len(), 5);
        for row in &report.rows {
            assert_eq!(row.percent_difference, 0.0, "{}", row.metric);
        }
        assert_eq!(report.series_names(), ("affg".to_string(), "affg-2".to_string()));
    }

    #[test]
    fn mismatched_settings_are_rejected() {
        let mut b = cfg(Method::ModifiedAffg);
        b.problem = ProblemKind::Cf5;
        assert!(compare_methods(&cfg(Method::Affg), &b).is_err());
        let mut b = cfg(Method::ModifiedAffg);
        b.ea.eta_c = 15.0;
        assert!(compare_methods(&cfg(Method::Affg), &b).is_err());
    }

    #[test]
    fn zero_baselines() {
        assert_eq!(paired("x", 0.0, 0.0).percent_difference, 0.0);
        assert!(paired("x", 0.0, 1.0).percent_difference.is_nan());
        assert_eq!(paired("x", 2.0, 1.0).percent_difference, 50.0);
    }
}
