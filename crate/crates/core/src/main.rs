use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use affg::harness::{compare_methods, run_experiment, ExperimentConfig, Method, OUTPUT_DIR_ENV};
use affg::problems::{registry, Problem, ProblemKind};
use affg::Error;

#[derive(Parser)]
#[command(name = "affg", version, about = "NSGA-II with fuzzy fitness granulation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one method for several seeds and write the CSV outputs.
    Run {
        #[arg(long)]
        method: Option<Method>,
        #[command(flatten)]
        common: Common,
    },
    /// Run two methods with identical settings and compare them.
    Compare {
        /// Two comma-separated methods; the first is the baseline.
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        methods: Vec<Method>,
        /// Also draw SVG charts.
        #[arg(long)]
        svg: bool,
        #[command(flatten)]
        common: Common,
    },
    /// List the benchmark problems and their parameters.
    ListProblems,
    /// Sample a problem's true Pareto front as `f1,f2` CSV.
    TrueFront {
        #[arg(long)]
        problem: ProblemKind,
        #[arg(long, default_value_t = 1000)]
        points: usize,
        /// Write to a file instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    problem: Option<ProblemKind>,
    #[arg(long)]
    runs: Option<usize>,
    /// Base seed; run `i` uses `seed + i`.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Flat `key = value` configuration file. Flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    generations: Option<usize>,
    #[arg(long)]
    pop_size: Option<usize>,
    #[arg(long)]
    threshold: Option<f64>,
    #[arg(long)]
    pool_max_size: Option<usize>,
    #[arg(long)]
    front_points: Option<usize>,
    #[arg(long)]
    dump_pool: bool,
}

impl Common {
    fn load(&self) -> Result<ExperimentConfig, Error> {
        let mut cfg = match &self.config {
            Some(path) => ExperimentConfig::from_file(path)?,
            None => ExperimentConfig::default(),
        };
        if let Some(p) = self.problem {
            cfg.problem = p;
        }
        if let Some(r) = self.runs {
            cfg.runs = r;
        }
        if let Some(s) = self.seed {
            cfg.base_seed = s;
        }
        if let Some(g) = self.generations {
            cfg.ea.generations = g;
        }
        if let Some(p) = self.pop_size {
            cfg.ea.pop_size = p;
        }
        if let Some(t) = self.threshold {
            cfg.threshold = t;
        }
        if let Some(m) = self.pool_max_size {
            cfg.pool_max_size = Some(m);
        }
        if let Some(f) = self.front_points {
            cfg.front_points = f;
        }
        cfg.dump_pool |= self.dump_pool;
        if let Some(out) = &self.out {
            cfg.output_dir = Some(out.clone());
        } else if let Some(env) = std::env::var_os(OUTPUT_DIR_ENV) {
            cfg.output_dir = Some(PathBuf::from(env));
        }
        Ok(cfg)
    }
}

fn execute(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Run { method, common } => {
            let mut cfg = common.load()?;
            if let Some(m) = method {
                cfg.method = m;
            }
            let report = run_experiment(&cfg)?;
            let s = &report.summary;
            println!(
                "{} {}: {} runs, mean exact evaluations {}, mean final HV {:.6}, mean final IGD {:.6}",
                s.problem, s.method, s.runs, s.mean_total_exact, s.mean_final_hv, s.mean_final_igd
            );
        }
        Command::Compare { methods, svg, common } => {
            let [a, b] = methods[..] else {
                return Err(Error::Config(format!("--methods needs exactly two methods, got {}", methods.len())));
            };
            let base = common.load()?;
            let cfg_a = ExperimentConfig { method: a, ..base.clone() };
            let cfg_b = ExperimentConfig { method: b, ..base };
            let report = compare_methods(&cfg_a, &cfg_b)?;
            let dir = cfg_a.output_dir.clone().unwrap_or_else(|| PathBuf::from("out"));
            report.write(&dir, svg)?;
            let (name_a, name_b) = report.series_names();
            println!("{:<12} {:>16} {:>16} {:>10}", "metric", name_a, name_b, "diff %");
            for row in &report.rows {
                println!(
                    "{:<12} {:>16.6} {:>16.6} {:>10.4}",
                    row.metric, row.value_a, row.value_b, row.percent_difference
                );
            }
        }
        Command::ListProblems => {
            println!("name  dim  constraints  sigma_min  hv_reference");
            for p in registry() {
                let r = p.hv_reference();
                println!(
                    "{:<5} {:>3}  {:>11}  {:>9}  [{}, {}]",
                    p.name(),
                    p.dimension(),
                    p.n_constraints(),
                    p.sigma_min(),
                    r[0],
                    r[1]
                );
            }
        }
        Command::TrueFront { problem, points, out } => {
            let sample = Problem::new(problem)?.sample_true_front(points)?;
            let mut text = String::from("f1,f2\n");
            for [f1, f2] in sample {
                text.push_str(&format!(
                    "{},{}\n",
                    affg::harness::csv::format_sig(f1),
                    affg::harness::csv::format_sig(f2)
                ));
            }
            match out {
                Some(path) => std::fs::write(path, text)?,
                None => print!("{text}"),
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
