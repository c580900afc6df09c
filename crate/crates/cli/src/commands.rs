use std::fs;
use std::path::PathBuf;

use clap::{Args, ValueEnum};
use num_bigint::BigUint;

use slcg_core::diagnostics::{
    default_cloud_delta, randu_cloud, slcg_cloud, uniform_cloud, uniformity_report, CloudSource,
};
use slcg_core::generator::{
    alpha_max, alpha_max_even_bound, enumerate_cycle, enumerate_generators, BitWidth,
};
use slcg_core::objective::{constrained_problem, fixed_dimension, get_benchmark, BENCHMARK_IDS, ENGINEERING_IDS};
use slcg_core::optimizer::{optimize, SweepGuard};
use slcg_core::report::{
    write_points_csv, write_run_outputs, write_sweep_outputs, DeltaSpec, RunConfig,
};
use slcg_core::stats::{friedman, holm_posthoc, ResultTable};
use slcg_core::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Args)]
pub struct OptimizeArgs {
    /// Benchmark id (F1..F26, spring, welded_beam, pressure_vessel) or a
    /// path to a run-config JSON file.
    #[arg(long)]
    pub problem: Option<String>,
    /// Run-config JSON file; flags below override its fields.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub dim: Option<usize>,
    /// Bits per variable (default 20, or the problem's native widths).
    #[arg(long)]
    pub bits: Option<u32>,
    /// Fine exploitation step (even, default 2).
    #[arg(long)]
    pub delta_step: Option<u64>,
    /// Exploration step: decimal, 0b-binary, or per-variable patterns
    /// "p_d|..|p_1" (defaults to the per-variable concatenation step).
    #[arg(long = "Delta")]
    pub big_delta: Option<String>,
    #[arg(long)]
    pub s_max: Option<u64>,
    #[arg(long)]
    pub e_max: Option<u64>,
    #[arg(long)]
    pub max_evals: Option<u64>,
    /// Accept an even total bit width (skips odd padding; the termination
    /// bound is then the non-conjectural even-width bound).
    #[arg(long)]
    pub allow_even_n: bool,
    /// Skip the per-candidate history files.
    #[arg(long)]
    pub no_history: bool,
    /// Output directory for result.json, config.json and the CSVs.
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
}

fn load_or_build_config(
    problem: Option<String>,
    config: Option<PathBuf>,
) -> Result<RunConfig> {
    if let Some(path) = config {
        let text = fs::read_to_string(&path)?;
        return RunConfig::from_json(&text);
    }
    let spec = problem.ok_or_else(|| {
        Error::InvalidInput("pass --problem <id|file> or --config <file>".into())
    })?;
    if spec.ends_with(".json") || spec.contains('/') {
        let text = fs::read_to_string(&spec)?;
        return RunConfig::from_json(&text);
    }
    Ok(RunConfig::for_problem(&spec))
}

pub fn run_optimize(args: OptimizeArgs, quiet: bool) -> Result<i32> {
    let mut config = load_or_build_config(args.problem, args.config)?;
    if let Some(dim) = args.dim {
        config.dimension = Some(dim);
    }
    if let Some(bits) = args.bits {
        config.bits_per_variable = Some(bits);
        config.scheme = None;
    }
    if let Some(step) = args.delta_step {
        config.delta_step = Some(step);
    }
    if let Some(delta) = args.big_delta {
        config.delta = Some(DeltaSpec::Text(delta));
    }
    if let Some(s_max) = args.s_max {
        config.s_max = Some(s_max);
    }
    if let Some(e_max) = args.e_max {
        config.e_max = Some(e_max);
    }
    if let Some(max_evals) = args.max_evals {
        config.max_evals = Some(max_evals);
    }
    if args.allow_even_n {
        config.allow_even_bits = Some(true);
    }
    if args.no_history {
        config.emit_history = Some(false);
    }

    let resolved = config.resolve()?;
    let result = optimize(&resolved.problem, &resolved.scheme, &resolved.optimizer)?;
    write_run_outputs(&args.out, &resolved.effective, &result)?;
    if !quiet {
        match result.best_value.is_finite() {
            true => println!(
                "{}: best {} after {} generators ({} evaluations){}",
                resolved.raw_problem.id,
                result.best_value,
                result.generators_evaluated,
                result.function_evaluations,
                if result.budget_exhausted {
                    " [budget exhausted]"
                } else {
                    ""
                }
            ),
            false => println!(
                "{}: no feasible point found in {} evaluations",
                resolved.raw_problem.id, result.function_evaluations
            ),
        }
        println!("outputs written to {}", args.out.display());
    }
    Ok(0)
}

#[derive(Args)]
pub struct SweepArgs {
    /// Benchmark id or run-config JSON file.
    #[arg(long)]
    pub problem: String,
    #[arg(long)]
    pub dim: Option<usize>,
    #[arg(long)]
    pub bits: Option<u32>,
    /// Cap on even candidates examined.
    #[arg(long)]
    pub cap: Option<u64>,
    /// Range-partitioned parallel workers (1 = sequential).
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
    #[arg(long)]
    pub allow_even_n: bool,
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
}

pub fn run_sweep(args: SweepArgs, quiet: bool) -> Result<i32> {
    let mut config = load_or_build_config(Some(args.problem), None)?;
    if let Some(dim) = args.dim {
        config.dimension = Some(dim);
    }
    if let Some(bits) = args.bits {
        config.bits_per_variable = Some(bits);
    }
    if args.allow_even_n {
        config.allow_even_bits = Some(true);
    }
    let resolved = config.resolve()?;
    let mut guard = SweepGuard::default();
    if let Some(cap) = args.cap {
        guard.max_candidates = cap;
        guard.max_generators = cap;
    }
    let landscape = sweep_with_workers(&resolved, &guard, args.workers)?;
    write_sweep_outputs(&args.out, &resolved.effective, &landscape)?;
    if !quiet {
        let best = landscape
            .iter()
            .map(|(_, g)| *g)
            .fold(f64::INFINITY, f64::min);
        println!(
            "{}: {} generators, best {}",
            resolved.raw_problem.id,
            landscape.len(),
            best
        );
        println!("outputs written to {}", args.out.display());
    }
    Ok(0)
}

#[cfg(feature = "parallel")]
fn sweep_with_workers(
    resolved: &slcg_core::report::ResolvedRun,
    guard: &SweepGuard,
    workers: usize,
) -> Result<Vec<(u64, f64)>> {
    slcg_core::optimizer::exhaustive_sweep_parallel(
        &resolved.problem,
        &resolved.scheme,
        guard,
        workers,
    )
}

#[cfg(not(feature = "parallel"))]
fn sweep_with_workers(
    resolved: &slcg_core::report::ResolvedRun,
    guard: &SweepGuard,
    workers: usize,
) -> Result<Vec<(u64, f64)>> {
    if workers > 1 {
        eprintln!("built without the parallel feature; running sequentially");
    }
    exhaustive_sweep(&resolved.problem, &resolved.scheme, guard)
}

#[derive(Args)]
pub struct GeneratorsArgs {
    /// State bit width (3..=26 for exhaustive enumeration).
    #[arg(long)]
    pub n: u32,
    /// Stop after this many generators.
    #[arg(long)]
    pub limit: Option<usize>,
}

pub fn run_generators(args: GeneratorsArgs, format: OutputFormat) -> Result<i32> {
    let width = BitWidth::new(args.n)?;
    let generators = enumerate_generators(width, args.limit)?;
    match format {
        OutputFormat::Csv => {
            println!("generator,period");
            for g in &generators {
                println!("{},{}", g.value(), enumerate_cycle(g).period());
            }
        }
        OutputFormat::Json => {
            let rows: Vec<serde_json::Value> = generators
                .iter()
                .map(|g| {
                    serde_json::json!({
                        "generator": g.value().to_string(),
                        "period": enumerate_cycle(g).period(),
                    })
                })
                .collect();
            println!("{}", serde_json::to_string_pretty(&rows)?);
        }
    }
    Ok(0)
}

#[derive(Args)]
pub struct AlphaMaxArgs {
    #[arg(long)]
    pub n: u32,
    /// Cross-check the closed form against exhaustive enumeration
    /// (feasible for n <= 26).
    #[arg(long)]
    pub brute_force: bool,
    /// Print the non-conjectural bound for even widths.
    #[arg(long)]
    pub allow_even: bool,
}

pub fn run_alpha_max(args: AlphaMaxArgs) -> Result<i32> {
    let width = BitWidth::new(args.n)?;
    if !width.is_odd() {
        if !args.allow_even {
            return Err(Error::EvenBitWidth(args.n));
        }
        println!(
            "alpha_max_bound({}) = {} (even width: floor(2^n/6) + margin, not the closed form)",
            args.n,
            alpha_max_even_bound(width)
        );
        return Ok(0);
    }
    let closed = alpha_max(width)?;
    println!("alpha_max({}) = {closed}", args.n);
    if args.brute_force {
        let generators = enumerate_generators(width, None)?;
        let max = generators.last().map(|g| g.value().clone()).unwrap_or_default();
        let below: BigUint = generators
            .iter()
            .map(|g| g.value().clone())
            .filter(|v| *v != max)
            .max()
            .unwrap_or_default();
        println!("brute-force maximum below the alternating pair = {below}");
        println!("alternating-pair generator = {max}");
        println!(
            "verdict: {}",
            if below == closed { "EQUAL" } else { "MISMATCH" }
        );
        if below != closed {
            return Ok(1);
        }
    }
    Ok(0)
}

#[derive(Args)]
pub struct UniformityArgs {
    #[arg(long, value_parser = parse_source)]
    pub source: CloudSource,
    /// Total state bits for the slcg source.
    #[arg(long, default_value_t = 31)]
    pub n: u32,
    #[arg(long, default_value_t = 3)]
    pub dim: usize,
    #[arg(long, default_value_t = 6200)]
    pub count: usize,
    #[arg(long, default_value_t = 5)]
    pub bins: usize,
    /// Candidate step for the slcg walk (default 2^n/count, singly even).
    #[arg(long)]
    pub delta: Option<u64>,
    /// Admit power-of-two multiples of already admitted generators in the
    /// slcg walk (their cycles are near-duplicates; see the docs).
    #[arg(long)]
    pub no_decorrelate: bool,
    /// Odd seed for the randu source.
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value = "report.json")]
    pub out: PathBuf,
    /// Also write the raw points for external scatter plotting.
    #[arg(long)]
    pub points: Option<PathBuf>,
}

fn parse_source(s: &str) -> Result<CloudSource> {
    s.parse()
}

pub fn run_uniformity(args: UniformityArgs, quiet: bool) -> Result<i32> {
    let cloud = match args.source {
        CloudSource::Slcg => {
            let width = BitWidth::new(args.n)?;
            let delta = match args.delta {
                Some(d) => BigUint::from(d),
                None => default_cloud_delta(width, args.count),
            };
            slcg_cloud(width, args.dim, &delta, args.count, !args.no_decorrelate)?
        }
        CloudSource::Randu => randu_cloud(args.count, args.dim, args.seed)?,
        CloudSource::Uniform => uniform_cloud(args.count, args.dim),
    };
    if cloud.truncated {
        eprintln!(
            "warning: generator space exhausted at {} of {} points",
            cloud.points.len(),
            args.count
        );
    }
    let report = uniformity_report(&cloud, args.bins)?;
    let json = serde_json::to_string_pretty(&report)? + "\n";
    if let Some(parent) = args.out.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent)?;
        }
    }
    fs::write(&args.out, &json)?;
    if let Some(points_path) = args.points {
        write_points_csv(&points_path, &cloud.points)?;
    }
    if !quiet {
        println!("{json}");
    }
    Ok(0)
}

#[derive(Args)]
pub struct BenchSuiteArgs {
    /// Print id, admissible dimensions, bounds and known optimum as CSV.
    #[arg(long)]
    pub list: bool,
    #[arg(long)]
    pub problem: Option<String>,
    #[arg(long)]
    pub dim: Option<usize>,
    /// Comma-separated coordinates to evaluate.
    #[arg(long)]
    pub point: Option<String>,
}

pub fn run_bench_suite(args: BenchSuiteArgs) -> Result<i32> {
    if args.list {
        println!("id,dimensions,bounds,known_optimum,constraints");
        for id in BENCHMARK_IDS {
            let d = fixed_dimension(id).unwrap_or(2);
            let p = get_benchmark(id, d)?;
            let dims = match fixed_dimension(id) {
                Some(d) => d.to_string(),
                None => "2+".to_string(),
            };
            let bounds = format!("{:?}", p.bounds[0]);
            let known = p
                .known_optimum
                .map(|v| v.to_string())
                .unwrap_or_else(|| "".into());
            println!("{id},{dims},\"{bounds}\",{known},0");
        }
        for id in ENGINEERING_IDS {
            let p = constrained_problem(id)?;
            let bounds: Vec<String> = p.bounds.iter().map(|b| format!("{b:?}")).collect();
            println!(
                "{id},{},\"{}\",,{}",
                p.dimension,
                bounds.join(";"),
                p.constraint_values(&vec![
                    (p.bounds[0].0 + p.bounds[0].1) / 2.0;
                    p.dimension
                ])
                .len()
            );
        }
        return Ok(0);
    }
    let id = args
        .problem
        .ok_or_else(|| Error::InvalidInput("pass --list or --problem <id>".into()))?;
    let point_text = args
        .point
        .ok_or_else(|| Error::InvalidInput("pass --point x1,x2,..".into()))?;
    let point: Vec<f64> = point_text
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| Error::InvalidInput(format!("bad coordinate '{t}'")))
        })
        .collect::<Result<_>>()?;
    let problem = if ENGINEERING_IDS.contains(&id.as_str()) {
        constrained_problem(&id)?
    } else {
        get_benchmark(&id, args.dim.unwrap_or(point.len()))?
    };
    if point.len() != problem.dimension {
        return Err(Error::DimensionMismatch {
            id,
            expected: problem.dimension,
            got: point.len(),
        });
    }
    println!("objective = {}", problem.evaluate(&point));
    if problem.has_constraints() {
        let values = problem.constraint_values(&point);
        for (i, v) in values.iter().enumerate() {
            println!("g{} = {v}", i + 1);
        }
        println!("feasible = {}", problem.is_feasible(&point));
    }
    Ok(0)
}

#[derive(Args)]
pub struct StatsArgs {
    /// Results CSV with header `function,dim,<alg1>,<alg2>,..`.
    #[arg(long)]
    pub table: PathBuf,
    #[arg(long, default_value = "S-LCG")]
    pub control: String,
    #[arg(long, default_value_t = 0.05)]
    pub alpha: f64,
    #[arg(long, default_value = "stats.json")]
    pub out: PathBuf,
}

pub fn run_stats(args: StatsArgs, quiet: bool) -> Result<i32> {
    let text = fs::read_to_string(&args.table)?;
    let table = ResultTable::from_csv_str(&text)?;
    let outcome = friedman(&table)?;
    let named: Vec<(String, f64)> = table
        .algorithms
        .iter()
        .cloned()
        .zip(outcome.mean_ranks.iter().copied())
        .collect();
    let holm = holm_posthoc(&named, table.n_rows(), &args.control, args.alpha)?;
    let report = serde_json::json!({
        "rows": table.n_rows(),
        "algorithms": table.algorithms,
        "alpha": args.alpha,
        "control": args.control,
        "friedman": {
            "mean_ranks": named.iter().map(|(name, r)| serde_json::json!({"algorithm": name, "rank": r})).collect::<Vec<_>>(),
            "chi_square": outcome.chi_square,
            "p_value": outcome.p_value,
        },
        "holm": holm,
    });
    let json = serde_json::to_string_pretty(&report)? + "\n";
    if let Some(parent) = args.out.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent)?;
        }
    }
    fs::write(&args.out, &json)?;
    if !quiet {
        println!("{json}");
    }
    Ok(0)
}
