use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use super::config::{ExperimentConfig, Method, OUTPUT_DIR_ENV};
use super::csv::{format_sig, write_rows, RUN_HEADER};
use crate::error::{Error, Result};
use crate::granulation::{AffgStrategy, GranulePool};
use crate::metrics::{area_under_curve, hypervolume_2d, igd, MetricKind, MetricSeries};
use crate::nsga2::{fast_nondominated_sort, ExactStrategy, FitnessStrategy, Individual, Nsga2};
use crate::pareto_filter::ModifiedAffgStrategy;
use crate::problems::Problem;

/// One row of a per-run CSV.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GenerationRecord {
    pub generation: usize,
    /// Includes the initial population.
    pub cum_exact_evals: usize,
    pub hv: f64,
    pub igd: f64,
    pub approx_count: usize,
    pub reject_count: usize,
}

impl GenerationRecord {
    fn csv_row(&self) -> Vec<String> {
        vec![
            self.generation.to_string(),
            self.cum_exact_evals.to_string(),
            format_sig(self.hv),
            format_sig(self.igd),
            self.approx_count.to_string(),
            self.reject_count.to_string(),
        ]
    }
}

/// Cross-run average of the records of one generation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MeanRecord {
    pub generation: usize,
    pub cum_exact_evals: f64,
    pub hv: f64,
    pub igd: f64,
    pub approx_count: f64,
    pub reject_count: f64,
}

impl MeanRecord {
    fn csv_row(&self) -> Vec<String> {
        vec![
            self.generation.to_string(),
            format_sig(self.cum_exact_evals),
            format_sig(self.hv),
            format_sig(self.igd),
            format_sig(self.approx_count),
            format_sig(self.reject_count),
        ]
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunResult {
    pub seed: u64,
    /// Generations `1..=N_G`.
    pub records: Vec<GenerationRecord>,
    pub front_genes: Vec<Vec<f64>>,
    pub front_objectives: Vec<Vec<f64>>,
    pub final_hv: f64,
    pub final_igd: f64,
    pub total_exact: usize,
    pub total_approximated: usize,
    pub total_rejected: usize,
    /// Final granule pool as CSV text, when requested.
    pub pool_csv: Option<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Summary {
    pub problem: String,
    pub method: Method,
    pub runs: usize,
    pub mean_final_hv: f64,
    pub mean_final_igd: f64,
    pub mean_total_exact: f64,
    pub auc_exact_evals: f64,
    pub auc_hv: f64,
    pub auc_igd: f64,
}

impl Summary {
    const HEADER: &'static str =
        "problem,method,runs,mean_final_hv,mean_final_igd,mean_total_exact,auc_exact_evals,auc_hv,auc_igd";

    fn csv_row(&self) -> Vec<String> {
        vec![
            self.problem.clone(),
            self.method.to_string(),
            self.runs.to_string(),
            format_sig(self.mean_final_hv),
            format_sig(self.mean_final_igd),
            format_sig(self.mean_total_exact),
            format_sig(self.auc_exact_evals),
            format_sig(self.auc_hv),
            format_sig(self.auc_igd),
        ]
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentReport {
    pub config: ExperimentConfig,
    pub runs: Vec<RunResult>,
    pub mean: Vec<MeanRecord>,
    pub summary: Summary,
}

impl ExperimentReport {
    pub fn series(&self, kind: MetricKind) -> Result<MetricSeries> {
        let values = self
            .mean
            .iter()
            .map(|r| match kind {
                MetricKind::Hv => r.hv,
                MetricKind::Igd => r.igd,
                MetricKind::CumulativeExactEvals => r.cum_exact_evals,
            })
            .collect();
        let generation = self.mean.iter().map(|r| r.generation).collect();
        MetricSeries::new(kind, generation, values)
    }

    /// Writes the per-run, mean, front and summary CSVs plus `metadata.txt`.
    pub fn write(&self, dir: &Path) -> Result<()> {
        fs::create_dir_all(dir)?;
        for (i, run) in self.runs.iter().enumerate() {
            let rows: Vec<_> = run.records.iter().map(GenerationRecord::csv_row).collect();
            write_rows(create(&dir.join(format!("run_{i:03}.csv")))?, RUN_HEADER, &rows)?;
            write_front(&dir.join(format!("front_{i:03}.csv")), run)?;
            if let Some(pool) = &run.pool_csv {
                fs::write(dir.join(format!("pool_{i:03}.csv")), pool)?;
            }
        }
        let rows: Vec<_> = self.mean.iter().map(MeanRecord::csv_row).collect();
        write_rows(create(&dir.join("mean.csv"))?, RUN_HEADER, &rows)?;
        write_rows(create(&dir.join("summary.csv"))?, Summary::HEADER, &[self.summary.csv_row()])?;

        let stamp = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map_or(0, |d| d.as_secs());
        let mut meta = create(&dir.join("metadata.txt"))?;
        writeln!(meta, "created_unix = {stamp}")?;
        write!(meta, "{}", self.config.to_text())?;
        meta.flush()?;
        Ok(())
    }
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path)?))
}

fn write_front(path: &Path, run: &RunResult) -> Result<()> {
    let d = run.front_genes.first().map_or(0, Vec::len);
    let m = run.front_objectives.first().map_or(2, Vec::len);
    let mut header: Vec<String> = (1..=d).map(|i| format!("x{i}")).collect();
    header.extend((1..=m).map(|i| format!("f{i}")));
    let rows: Vec<Vec<String>> = run
        .front_genes
        .iter()
        .zip(&run.front_objectives)
        .map(|(x, f)| x.iter().chain(f).map(|&v| format_sig(v)).collect())
        .collect();
    write_rows(create(path)?, &header.join(","), &rows)
}

/// Output directory: the configured one, then the environment override,
/// then `out`.
pub(crate) fn resolve_output_dir(cfg: &ExperimentConfig) -> PathBuf {
    cfg.output_dir
        .clone()
        .or_else(|| std::env::var_os(OUTPUT_DIR_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("out"))
}

/// HV and IGD of the first front of `pop`.
///
/// Only feasible individuals count towards HV. IGD uses the feasible first
/// front, or the least-violating front when nothing is feasible.
pub fn population_metrics(pop: &[Individual], problem: &Problem, front_sample: &[[f64; 2]]) -> Result<(f64, f64)> {
    let front = first_front(pop)?;
    let objectives: Vec<&[f64]> = front
        .iter()
        .map(|&i| pop[i].objectives().ok_or(Error::Unevaluated(i)))
        .collect::<Result<_>>()?;
    let feasible = front.iter().any(|&i| pop[i].is_feasible());
    let hv = if feasible {
        hypervolume_2d(&objectives, problem.hv_reference())
    } else {
        0.0
    };
    Ok((hv, igd(front_sample, &objectives, 1.0)?))
}

fn first_front(pop: &[Individual]) -> Result<Vec<usize>> {
    let fronts = fast_nondominated_sort(pop)?;
    fronts.into_iter().next().ok_or(Error::EmptyPopulation)
}

/// The population as it is measured: exactly re-evaluated copies, or the
/// stored objectives as they are.
fn measured(pop: &[Individual], problem: &Problem, exact: bool) -> Result<Vec<Individual>> {
    let mut out = pop.to_vec();
    if exact {
        for ind in &mut out {
            problem.evaluate_into(ind)?;
        }
    }
    Ok(out)
}

/// Executes one seeded run of `cfg`.
pub fn run_single(cfg: &ExperimentConfig, problem: &Problem, front_sample: &[[f64; 2]], seed: u64) -> Result<RunResult> {
    let mut ea_cfg = cfg.ea.clone();
    ea_cfg.rng_seed = seed;
    match cfg.method {
        Method::ExactOnly => drive(cfg, problem, front_sample, ea_cfg, ExactStrategy, |_| None),
        Method::Affg => {
            let strategy = AffgStrategy::try_new(cfg.pool_config(problem))?;
            drive(cfg, problem, front_sample, ea_cfg, strategy, |s| Some(s.pool()))
        }
        Method::ModifiedAffg => {
            let strategy = ModifiedAffgStrategy::try_new(cfg.pool_config(problem))?;
            drive(cfg, problem, front_sample, ea_cfg, strategy, |s| Some(s.pool()))
        }
    }
}

fn drive<S: FitnessStrategy>(
    cfg: &ExperimentConfig,
    problem: &Problem,
    front_sample: &[[f64; 2]],
    ea_cfg: crate::nsga2::EAConfig,
    strategy: S,
    pool_of: impl Fn(&S) -> Option<&GranulePool>,
) -> Result<RunResult> {
    let seed = ea_cfg.rng_seed;
    let mut ea = Nsga2::new(problem, ea_cfg, strategy)?;
    let mut records = Vec::with_capacity(cfg.ea.generations);
    let (mut approximated, mut rejected) = (0, 0);
    while ea.generation() < cfg.ea.generations {
        let stats = ea.step()?;
        approximated += stats.approximated;
        rejected += stats.rejected;
        let pop = measured(ea.population(), problem, cfg.measure_exact)?;
        let (hv, igd) = population_metrics(&pop, problem, front_sample)?;
        records.push(GenerationRecord {
            generation: stats.generation,
            cum_exact_evals: ea.exact_evaluations(),
            hv,
            igd,
            approx_count: stats.approximated,
            reject_count: stats.rejected,
        });
    }

    let pop = measured(ea.population(), problem, cfg.measure_exact)?;
    let (final_hv, final_igd) = population_metrics(&pop, problem, front_sample)?;
    let front = first_front(&pop)?;
    let pool_csv = if cfg.dump_pool {
        match pool_of(ea.strategy()) {
            Some(pool) => {
                let mut buf = Vec::new();
                pool.write_csv(&mut buf)?;
                Some(String::from_utf8(buf).map_err(|e| Error::Invariant(e.to_string()))?)
            }
            None => None,
        }
    } else {
        None
    };
    Ok(RunResult {
        seed,
        records,
        front_genes: front.iter().map(|&i| pop[i].genes.clone()).collect(),
        front_objectives: front
            .iter()
            .map(|&i| pop[i].objectives.clone().ok_or(Error::Unevaluated(i)))
            .collect::<Result<_>>()?,
        final_hv,
        final_igd,
        total_exact: ea.exact_evaluations(),
        total_approximated: approximated,
        total_rejected: rejected,
        pool_csv,
    })
}

/// Runs every seed of `cfg` in parallel and aggregates, without touching the
/// file system.
pub fn execute_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    cfg.validate()?;
    let problem = Problem::new(cfg.problem)?;
    let front_sample = problem.sample_true_front(cfg.front_points)?;
    let runs: Vec<RunResult> = (0..cfg.runs)
        .into_par_iter()
        .map(|i| run_single(cfg, &problem, &front_sample, cfg.seed_for_run(i)))
        .collect::<Result<_>>()?;
    aggregate(cfg.clone(), runs)
}

fn aggregate(config: ExperimentConfig, runs: Vec<RunResult>) -> Result<ExperimentReport> {
    let n = runs.len() as f64;
    let generations = runs.first().map_or(0, |r| r.records.len());
    if runs.iter().any(|r| r.records.len() != generations) {
        return Err(Error::Invariant("runs recorded different generation counts".into()));
    }
    let mean: Vec<MeanRecord> = (0..generations)
        .map(|g| {
            let avg = |f: &dyn Fn(&GenerationRecord) -> f64| runs.iter().map(|r| f(&r.records[g])).sum::<f64>() / n;
            MeanRecord {
                generation: runs[0].records[g].generation,
                cum_exact_evals: avg(&|r| r.cum_exact_evals as f64),
                hv: avg(&|r| r.hv),
                igd: avg(&|r| r.igd),
                approx_count: avg(&|r| r.approx_count as f64),
                reject_count: avg(&|r| r.reject_count as f64),
            }
        })
        .collect();

    let mut report = ExperimentReport {
        summary: Summary {
            problem: config.problem.to_string(),
            method: config.method,
            runs: runs.len(),
            mean_final_hv: runs.iter().map(|r| r.final_hv).sum::<f64>() / n,
            mean_final_igd: runs.iter().map(|r| r.final_igd).sum::<f64>() / n,
            mean_total_exact: runs.iter().map(|r| r.total_exact as f64).sum::<f64>() / n,
            auc_exact_evals: 0.0,
            auc_hv: 0.0,
            auc_igd: 0.0,
        },
        config,
        runs,
        mean,
    };
    if generations >= 2 {
        report.summary.auc_exact_evals = area_under_curve(&report.series(MetricKind::CumulativeExactEvals)?)?;
        report.summary.auc_hv = area_under_curve(&report.series(MetricKind::Hv)?)?;
        report.summary.auc_igd = area_under_curve(&report.series(MetricKind::Igd)?)?;
    }
    Ok(report)
}

/// Executes `cfg` and writes its files to the resolved output directory.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    let report = execute_experiment(cfg)?;
    report.write(&resolve_output_dir(cfg))?;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::ProblemKind;

    fn small(method: Method) -> ExperimentConfig {
        let mut cfg = ExperimentConfig::new(ProblemKind::Zdt1, method);
        cfg.runs = 3;
        cfg.ea.generations = 10;
        cfg.ea.pop_size = 20;
        cfg.front_points = 200;
        cfg
    }

    #[test]
    fn exact_only_counts_every_offspring() {
        let report = execute_experiment(&small(Method::ExactOnly)).unwrap();
        for run in &report.runs {
            assert_eq!(run.total_exact, 11 * 20);
            assert_eq!(run.records.len(), 10);
            assert_eq!(run.records[0].cum_exact_evals, 40);
            assert!(run.records.iter().all(|r| r.approx_count == 0 && r.reject_count == 0));
        }
        assert_eq!(report.summary.mean_total_exact, 220.0);
    }

    #[test]
    fn offspring_accounting_is_conserved() {
        let report = execute_experiment(&small(Method::ModifiedAffg)).unwrap();
        for run in &report.runs {
            let mut prev = 20;
            for r in &run.records {
                let exact = r.cum_exact_evals - prev;
                assert_eq!(exact + r.approx_count + r.reject_count, 20);
                prev = r.cum_exact_evals;
            }
        }
    }

    #[test]
    fn mean_is_the_average_of_runs() {
        let report = execute_experiment(&small(Method::Affg)).unwrap();
        for (g, m) in report.mean.iter().enumerate() {
            let hv: f64 = report.runs.iter().map(|r| r.records[g].hv).sum::<f64>() / 3.0;
            assert!((m.hv - hv).abs() < 1e-12);
        }
        let last = report.mean.last().unwrap();
        assert!((last.hv - report.summary.mean_final_hv).abs() < 1e-12);
    }

    #[test]
    fn infeasible_population_has_zero_hv() {
        let problem = Problem::new(ProblemKind::Cf1).unwrap();
        let sample = problem.sample_true_front(50).unwrap();
        let pop = vec![
            Individual::evaluated(vec![0.0; 10], vec![0.1, 0.2], 0.3),
            Individual::evaluated(vec![0.0; 10], vec![0.5, 0.5], 0.1),
        ];
        let (hv, igd_value) = population_metrics(&pop, &problem, &sample).unwrap();
        assert_eq!(hv, 0.0);
        let expected = igd(&sample, &[[0.5, 0.5]], 1.0).unwrap();
        assert!((igd_value - expected).abs() < 1e-15);
    }
}
