//! `relief`: instance generation, solving, Pareto sweeps and fairness
//! studies for equitable relief distribution.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use relief_core::allocation::{allocate, check_corollary1, RoutePartition};
use relief_core::analysis::{
    price_of_fairness, solve_variant, tradeoff_table, write_pof_csv, write_tradeoff_csv,
    write_variants_csv, AnalysisConfig, Variant,
};
use relief_core::biobjective::{
    min_travel_time_bound, pareto_front, theta_for_bound, ParetoConfig,
};
use relief_core::bnp::{brute_force_solve, solve, BnpConfig, BnpReport, BnpStatus};
use relief_core::master::{augmented_value, RmpParams};
use relief_core::model::{
    generate_instance, load_instance, save_instance, validate_solution, Instance, InstanceType,
    Objective, Solution,
};

const EXIT_INFEASIBLE: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "relief",
    version,
    about = "Equitable relief-aid routing and allocation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a random instance.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long = "type", default_value = "A")]
        kind: InstanceType,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
    },
    /// Solve one epsilon-constrained problem.
    Solve {
        instance: PathBuf,
        /// Branch-and-price (the default).
        #[arg(long, conflicts_with = "oracle")]
        bnp: bool,
        /// Exhaustive enumeration, small instances only.
        #[arg(long)]
        oracle: bool,
        #[command(flatten)]
        opts: SolverArgs,
    },
    /// Optimal deliveries for fixed routes.
    Alloc {
        instance: PathBuf,
        /// JSON list of routes, each a list of shelters.
        #[arg(long)]
        routes: PathBuf,
        #[command(flatten)]
        opts: SolverArgs,
    },
    /// Pareto front over the travel-time bound.
    Pareto {
        instance: PathBuf,
        #[command(flatten)]
        opts: SolverArgs,
    },
    /// Price of fairness over a list of travel-time bounds.
    Pof {
        instance: PathBuf,
        /// Travel-time bounds; ten evenly spaced values by default.
        #[arg(long, value_delimiter = ',')]
        epsilons: Vec<f64>,
        #[command(flatten)]
        opts: SolverArgs,
    },
    /// Time and equity changes along the Pareto front.
    Tradeoff {
        instance: PathBuf,
        #[command(flatten)]
        opts: SolverArgs,
    },
    /// Check a solution file against an instance.
    Validate {
        instance: PathBuf,
        solution: PathBuf,
        #[arg(long)]
        epsilon: Option<f64>,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum Component {
    Grasp,
    Tabu,
    Validineq,
}

#[derive(Args, Debug, Clone)]
struct SolverArgs {
    /// TOML file with defaults for the flags below; flags win.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, default_value = "out")]
    out: PathBuf,
    #[arg(long)]
    epsilon: Option<f64>,
    #[arg(long)]
    gamma: Option<f64>,
    #[arg(long)]
    lambda: Option<f64>,
    #[arg(long)]
    chi: Option<usize>,
    #[arg(long)]
    alpha: Option<f64>,
    /// Seconds; per point for `pareto` and `tradeoff`.
    #[arg(long)]
    time_limit: Option<f64>,
    /// Relative gap at which branch-and-price stops.
    #[arg(long)]
    gap: Option<f64>,
    /// Travel-time decrement of the Pareto sweep.
    #[arg(long)]
    delta: Option<f64>,
    #[arg(long, value_delimiter = ',')]
    disable: Vec<Component>,
    #[arg(long)]
    seed: Option<u64>,
    /// Include wall-clock times in result files.
    #[arg(long)]
    timings: bool,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    epsilon: Option<f64>,
    gamma: Option<f64>,
    lambda: Option<f64>,
    chi: Option<usize>,
    alpha: Option<f64>,
    time_limit: Option<f64>,
    gap: Option<f64>,
    delta: Option<f64>,
    disable: Option<Vec<Component>>,
    seed: Option<u64>,
    timings: Option<bool>,
}

/// Flags merged over the config file and the defaults.
#[derive(Debug, Clone, Serialize)]
struct Settings {
    epsilon: f64,
    gamma: f64,
    lambda: f64,
    chi: usize,
    alpha: f64,
    time_limit: Option<f64>,
    gap: f64,
    delta: f64,
    disable: Vec<Component>,
    seed: u64,
    timings: bool,
}

impl Settings {
    fn resolve(
        args: &SolverArgs,
        inst: &Instance,
        default_time_limit: Option<f64>,
    ) -> Result<Self> {
        let file = match &args.config {
            Some(path) => {
                let text = fs::read_to_string(path)
                    .with_context(|| format!("reading {}", path.display()))?;
                toml::from_str::<FileConfig>(&text)
                    .with_context(|| format!("parsing {}", path.display()))?
            }
            None => FileConfig::default(),
        };
        let defaults = BnpConfig::default();
        let mut disable = if args.disable.is_empty() {
            file.disable.unwrap_or_default()
        } else {
            args.disable.clone()
        };
        disable.sort_by_key(|c| *c as u8);
        disable.dedup();
        let s = Settings {
            epsilon: args.epsilon.or(file.epsilon).unwrap_or(inst.epsilon),
            gamma: args.gamma.or(file.gamma).unwrap_or(1e-4),
            lambda: args.lambda.or(file.lambda).unwrap_or(inst.lambda),
            chi: args.chi.or(file.chi).unwrap_or(defaults.chi),
            alpha: args.alpha.or(file.alpha).unwrap_or(defaults.grasp.alpha),
            time_limit: args.time_limit.or(file.time_limit).or(default_time_limit),
            gap: args.gap.or(file.gap).unwrap_or(defaults.gap_tolerance),
            delta: args.delta.or(file.delta).unwrap_or(1.0),
            disable,
            seed: args.seed.or(file.seed).unwrap_or(0),
            timings: args.timings || file.timings.unwrap_or(false),
        };
        if !(s.gamma >= 0.0)
            || !(0.0..=1.0).contains(&s.lambda)
            || !(s.delta > 0.0)
            || !(s.gap >= 0.0)
        {
            bail!("gamma and gap must be nonnegative, lambda in [0, 1] and delta positive");
        }
        if !(s.alpha >= 0.0 && s.alpha <= 1.0) {
            bail!("alpha must lie in [0, 1]");
        }
        if s.time_limit.is_some_and(|t| !(t > 0.0)) {
            bail!("time limit must be positive");
        }
        Ok(s)
    }

    fn bnp(&self) -> BnpConfig {
        let mut cfg = BnpConfig {
            chi: self.chi,
            gap_tolerance: self.gap,
            time_limit: self.time_limit.map(Duration::from_secs_f64),
            seed: self.seed,
            use_grasp: !self.disable.contains(&Component::Grasp),
            use_tabu: !self.disable.contains(&Component::Tabu),
            valid_inequalities: !self.disable.contains(&Component::Validineq),
            ..BnpConfig::default()
        };
        cfg.grasp.alpha = self.alpha;
        cfg
    }

    fn objective(&self) -> Objective {
        Objective::iaaf(self.lambda)
    }
}

#[derive(Serialize)]
struct Manifest<'a> {
    command: &'a str,
    instance: Option<String>,
    settings: Option<&'a Settings>,
    seed: Option<u64>,
    version: &'static str,
    wall_time_s: f64,
    outputs: Vec<String>,
}

struct Run {
    start: Instant,
    out: PathBuf,
    outputs: Vec<String>,
}

impl Run {
    fn new(out: &Path) -> Result<Self> {
        fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;
        Ok(Self {
            start: Instant::now(),
            out: out.to_path_buf(),
            outputs: Vec::new(),
        })
    }

    fn write(&mut self, name: &str, bytes: Vec<u8>) -> Result<()> {
        let path = self.out.join(name);
        fs::write(&path, bytes).with_context(|| format!("writing {}", path.display()))?;
        self.outputs.push(name.to_string());
        Ok(())
    }

    fn finish(self, command: &str, instance: &Path, settings: &Settings) -> Result<()> {
        let manifest = Manifest {
            command,
            instance: Some(instance.display().to_string()),
            settings: Some(settings),
            seed: Some(settings.seed),
            version: env!("CARGO_PKG_VERSION"),
            wall_time_s: self.start.elapsed().as_secs_f64(),
            outputs: self.outputs,
        };
        let path = self.out.join("manifest.json");
        fs::write(&path, serde_json::to_string_pretty(&manifest)?)?;
        Ok(())
    }
}

fn load(path: &Path) -> Result<Instance> {
    load_instance(path).with_context(|| format!("loading instance {}", path.display()))
}

fn csv_bytes(f: impl FnOnce(&mut Vec<u8>) -> relief_core::Result<()>) -> Result<Vec<u8>> {
    let mut out = Vec::new();
    f(&mut out)?;
    Ok(out)
}

fn json_bytes<T: Serialize>(value: &T) -> Result<Vec<u8>> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    Ok(text.into_bytes())
}

/// Report of the exhaustive solver in the shape of a branch-and-price run.
fn oracle_report(inst: &Instance, params: &RmpParams) -> Result<BnpReport> {
    let start = Instant::now();
    let solution = brute_force_solve(inst, params)?;
    let (status, ub, objective, total_time) = match &solution {
        Some(s) => (
            BnpStatus::Optimal,
            augmented_value(inst, params, &s.deliveries, s.total_time),
            params.objective.evaluate(&inst.demands, &s.deliveries),
            s.total_time,
        ),
        None => (BnpStatus::Infeasible, f64::INFINITY, f64::NAN, f64::NAN),
    };
    Ok(BnpReport {
        status,
        solution,
        upper_bound: ub,
        lower_bound: ub,
        gap_percent: if ub.is_finite() { 0.0 } else { f64::INFINITY },
        objective,
        total_time,
        nodes: 0,
        avg_columns: 0.0,
        columns_initial: 0,
        columns_exact: 0,
        columns_grasp: 0,
        cg_iterations: 0,
        root_bound: f64::NAN,
        wall_time_s: start.elapsed().as_secs_f64(),
        trace: Vec::new(),
    })
}

fn cmd_solve(instance: &Path, oracle: bool, opts: &SolverArgs) -> Result<u8> {
    let inst = load(instance)?;
    let s = Settings::resolve(opts, &inst, None)?;
    let mut run = Run::new(&opts.out)?;
    let cfg = s.bnp();
    let params = RmpParams {
        epsilon: s.epsilon,
        gamma: s.gamma,
        theta: theta_for_bound(&inst, s.epsilon, &cfg)?,
        objective: s.objective(),
    };
    let report = if oracle {
        oracle_report(&inst, &params)?
    } else {
        solve(&inst, &params, &cfg)?
    };
    run.write("result.csv", csv_bytes(|w| report.write_csv(w, s.timings))?)?;
    let code = match &report.solution {
        Some(sol) => {
            run.write("solution.json", json_bytes(sol)?)?;
            println!(
                "{:?}: f1 = {:.6}, total time = {:.3}, gap = {:.6}%",
                report.status, report.objective, sol.total_time, report.gap_percent
            );
            0
        }
        None => {
            println!("{:?}: no routing satisfies the constraints", report.status);
            EXIT_INFEASIBLE
        }
    };
    run.finish(
        if oracle {
            "solve --oracle"
        } else {
            "solve --bnp"
        },
        instance,
        &s,
    )?;
    Ok(code)
}

#[derive(Serialize)]
struct AllocOutput {
    routes: Vec<Vec<usize>>,
    v: Vec<f64>,
    route_loads: Vec<f64>,
    objective: f64,
    load_bounds_hold: bool,
}

fn cmd_alloc(instance: &Path, routes: &Path, opts: &SolverArgs) -> Result<u8> {
    let inst = load(instance)?;
    let s = Settings::resolve(opts, &inst, None)?;
    let mut run = Run::new(&opts.out)?;
    let text =
        fs::read_to_string(routes).with_context(|| format!("reading {}", routes.display()))?;
    let node_sets: Vec<Vec<usize>> =
        serde_json::from_str(&text).context("routes must be a JSON list of lists")?;
    let partition = RoutePartition::new(&inst, node_sets)?;
    let result = allocate(&inst, &partition, &s.objective())?;
    let out = AllocOutput {
        load_bounds_hold: check_corollary1(&inst, &partition, &result),
        routes: partition.node_sets,
        v: result.v,
        route_loads: result.xi,
        objective: result.objective,
    };
    println!("objective = {:.6}", out.objective);
    run.write("allocation.json", json_bytes(&out)?)?;
    run.finish("alloc", instance, &s)?;
    Ok(0)
}

fn pareto_config(s: &Settings) -> ParetoConfig {
    ParetoConfig {
        bnp: s.bnp(),
        objective: s.objective(),
        gamma: s.gamma,
        delta: s.delta,
        point_time_limit: s.time_limit.map(Duration::from_secs_f64),
    }
}

fn cmd_pareto(instance: &Path, opts: &SolverArgs, tradeoff: bool) -> Result<u8> {
    let mut inst = load(instance)?;
    let s = Settings::resolve(opts, &inst, Some(600.0))?;
    inst.epsilon = s.epsilon;
    let mut run = Run::new(&opts.out)?;
    let front = pareto_front(&inst, &pareto_config(&s))?;
    run.write("pareto.csv", csv_bytes(|w| front.write_csv(w, s.timings))?)?;
    let solutions: Vec<&Solution> = front.points.iter().map(|p| &p.solution).collect();
    run.write("pareto_solutions.json", json_bytes(&solutions)?)?;
    if tradeoff {
        let rows = tradeoff_table(&front.points);
        run.write("tradeoff.csv", csv_bytes(|w| write_tradeoff_csv(&rows, w))?)?;
    }
    println!(
        "{} non-dominated points from {} solved problems",
        front.points.len(),
        front.solved
    );
    run.finish(if tradeoff { "tradeoff" } else { "pareto" }, instance, &s)?;
    Ok(if front.points.is_empty() {
        EXIT_INFEASIBLE
    } else {
        0
    })
}

fn cmd_pof(instance: &Path, epsilons: &[f64], opts: &SolverArgs) -> Result<u8> {
    let inst = load(instance)?;
    let s = Settings::resolve(opts, &inst, None)?;
    let mut run = Run::new(&opts.out)?;
    let cfg = AnalysisConfig {
        bnp: s.bnp(),
        lambda: s.lambda,
        gamma: s.gamma,
    };
    let epsilons = if epsilons.is_empty() {
        let Some(low) = min_travel_time_bound(&inst, &cfg.bnp)? else {
            println!("no routing satisfies the constraints");
            return Ok(EXIT_INFEASIBLE);
        };
        let high = s.epsilon.max(low);
        (1..=10)
            .map(|k| low + (high - low) * k as f64 / 10.0)
            .collect()
    } else {
        epsilons.to_vec()
    };
    let rows = price_of_fairness(&inst, &epsilons, &cfg)?;
    run.write("pof.csv", csv_bytes(|w| write_pof_csv(&rows, w))?)?;
    let variants = Variant::ALL
        .into_iter()
        .map(|v| solve_variant(&inst, v, s.epsilon, &cfg))
        .collect::<relief_core::Result<Vec<_>>>()?;
    run.write(
        "variants.csv",
        csv_bytes(|w| write_variants_csv(&variants, w))?,
    )?;
    println!("{} bounds evaluated", rows.len());
    run.finish("pof", instance, &s)?;
    Ok(0)
}

fn cmd_validate(instance: &Path, solution: &Path, epsilon: Option<f64>) -> Result<u8> {
    let inst = load(instance)?;
    let text =
        fs::read_to_string(solution).with_context(|| format!("reading {}", solution.display()))?;
    let sol: Solution = serde_json::from_str(&text).context("parsing solution")?;
    match validate_solution(&inst, &sol, epsilon.unwrap_or(inst.epsilon)) {
        Ok(()) => {
            println!("valid");
            Ok(0)
        }
        Err(v) => {
            println!("violated {}: {}", v.constraint, v.detail);
            Ok(EXIT_INFEASIBLE)
        }
    }
}

fn cmd_gen(n: usize, m: usize, kind: InstanceType, seed: u64, output: &Path) -> Result<u8> {
    let inst = generate_instance(seed, n, m, kind)?;
    inst.validate()?;
    if let Some(dir) = output.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    save_instance(&inst, output)?;
    #[derive(Serialize)]
    struct GenManifest {
        command: &'static str,
        n: usize,
        m: usize,
        kind: String,
        seed: u64,
        version: &'static str,
    }
    let manifest = GenManifest {
        command: "gen",
        n,
        m,
        kind: kind.to_string(),
        seed,
        version: env!("CARGO_PKG_VERSION"),
    };
    let mut path = output.as_os_str().to_owned();
    path.push(".manifest.json");
    fs::write(
        PathBuf::from(path),
        serde_json::to_string_pretty(&manifest)?,
    )?;
    Ok(0)
}

fn run(cli: Cli) -> Result<u8> {
    match &cli.command {
        Command::Gen {
            n,
            m,
            kind,
            seed,
            output,
        } => cmd_gen(*n, *m, *kind, *seed, output),
        Command::Solve {
            instance,
            oracle,
            opts,
            ..
        } => cmd_solve(instance, *oracle, opts),
        Command::Alloc {
            instance,
            routes,
            opts,
        } => cmd_alloc(instance, routes, opts),
        Command::Pareto { instance, opts } => cmd_pareto(instance, opts, false),
        Command::Pof {
            instance,
            epsilons,
            opts,
        } => cmd_pof(instance, epsilons, opts),
        Command::Tradeoff { instance, opts } => cmd_pareto(instance, opts, true),
        Command::Validate {
            instance,
            solution,
            epsilon,
        } => cmd_validate(instance, solution, *epsilon),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
