//! Bundled reproduction checks against the recorded reference values: the
//! n = 7 cycle table, the last-generator bounds, the two F8 sweep
//! baselines, the uniformity bands, the engineering designs, and the
//! post-hoc decisions. Each check prints measured vs expected with its
//! tolerance and the run exits non-zero if any fails.

use std::path::PathBuf;

use clap::{Args, ValueEnum};
use num_bigint::BigUint;

use slcg_core::diagnostics::{
    default_cloud_delta, randu_cloud, slcg_cloud, uniformity_report,
};
use slcg_core::generator::{
    alpha_max, alpha_max_recursive, enumerate_cycle, enumerate_generators, BitWidth,
};
use slcg_core::objective::constrained_problem;
use slcg_core::optimizer::{exhaustive_sweep, lag_autocorrelation, optimize, SweepGuard};
use slcg_core::reference;
use slcg_core::report::{DeltaSpec, RunConfig};
use slcg_core::stats::holm_posthoc;
use slcg_core::Result;

#[derive(Clone, Copy, ValueEnum)]
pub enum Target {
    /// n = 7 generator set and all cycle rows, exact.
    Table1,
    /// Last-generator bounds for odd n in 3..=53, closed vs recursive vs
    /// brute force.
    Table3,
    /// F8 exhaustive and adaptive sweeps at d = 2.
    Table4,
    /// Uniformity bands at 6200 points in three dimensions.
    Table2,
    /// Constrained engineering designs.
    Engineering,
    /// Holm post-hoc decisions from the all-dimensions mean ranks.
    Stats,
}

#[derive(Args)]
pub struct ReproduceArgs {
    #[arg(value_enum)]
    pub target: Target,
    /// Optional JSON report destination.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

struct CheckList {
    quiet: bool,
    rows: Vec<serde_json::Value>,
    failures: usize,
}

impl CheckList {
    fn new(quiet: bool) -> Self {
        CheckList {
            quiet,
            rows: Vec::new(),
            failures: 0,
        }
    }

    fn record(&mut self, name: &str, measured: String, expected: String, pass: bool) {
        if !pass {
            self.failures += 1;
        }
        if !self.quiet {
            println!(
                "{} {name}: measured {measured}, expected {expected}",
                if pass { "PASS" } else { "FAIL" }
            );
        }
        self.rows.push(serde_json::json!({
            "check": name,
            "measured": measured,
            "expected": expected,
            "pass": pass,
        }));
    }

    fn check_exact<T: PartialEq + std::fmt::Display>(&mut self, name: &str, measured: T, expected: T) {
        let pass = measured == expected;
        self.record(name, measured.to_string(), expected.to_string(), pass);
    }

    fn check_rel(&mut self, name: &str, measured: f64, expected: f64, rel_tol: f64) {
        let pass = ((measured - expected) / expected).abs() <= rel_tol;
        self.record(
            name,
            format!("{measured}"),
            format!("{expected} (rel tol {rel_tol})"),
            pass,
        );
    }

    fn check_band(&mut self, name: &str, measured: f64, low: f64, high: f64) {
        let pass = measured >= low && measured <= high;
        self.record(name, format!("{measured}"), format!("[{low}, {high}]"), pass);
    }

    fn finish(self, args: &ReproduceArgs) -> Result<i32> {
        if let Some(out) = &args.out {
            let report = serde_json::json!({
                "checks": self.rows,
                "failures": self.failures,
            });
            if let Some(parent) = out.parent() {
                if !parent.as_os_str().is_empty() {
                    std::fs::create_dir_all(parent)?;
                }
            }
            std::fs::write(out, serde_json::to_string_pretty(&report)? + "\n")?;
        }
        if !self.quiet {
            println!(
                "{}",
                if self.failures == 0 {
                    "all checks passed".to_string()
                } else {
                    format!("{} check(s) failed", self.failures)
                }
            );
        }
        Ok(if self.failures == 0 { 0 } else { 1 })
    }
}

pub fn run(args: ReproduceArgs, quiet: bool) -> Result<i32> {
    let mut checks = CheckList::new(quiet);
    match args.target {
        Target::Table1 => table1(&mut checks)?,
        Target::Table3 => table3(&mut checks)?,
        Target::Table4 => table4(&mut checks)?,
        Target::Table2 => table2(&mut checks)?,
        Target::Engineering => engineering(&mut checks)?,
        Target::Stats => stats(&mut checks)?,
    }
    checks.finish(&args)
}

fn table1(checks: &mut CheckList) -> Result<()> {
    let width = BitWidth::new(7)?;
    let generators = enumerate_generators(width, None)?;
    let values: Vec<u64> = generators
        .iter()
        .map(|g| g.value().try_into().expect("7-bit values"))
        .collect();
    checks.check_exact(
        "generator set",
        format!("{values:?}"),
        format!("{:?}", reference::N7_GENERATORS.to_vec()),
    );
    for (g, row) in generators.iter().zip(reference::N7_CYCLES) {
        let cycle = enumerate_cycle(g);
        let states: Vec<u64> = cycle
            .states()
            .iter()
            .map(|s| s.try_into().expect("7-bit values"))
            .collect();
        checks.check_exact(
            &format!("cycle of {}", g.value()),
            format!("{states:?}"),
            format!("{:?}", row.to_vec()),
        );
    }
    Ok(())
}

fn table3(checks: &mut CheckList) -> Result<()> {
    for (n, expected) in reference::ALPHA_MAX_TABLE {
        let width = BitWidth::new(n)?;
        let closed = alpha_max(width)?;
        checks.check_exact(&format!("alpha_max({n}) closed form"), closed.clone(), BigUint::from(expected));
        checks.check_exact(
            &format!("alpha_max({n}) recursive form"),
            alpha_max_recursive(width)?,
            closed.clone(),
        );
        if n <= 23 {
            let generators = enumerate_generators(width, None)?;
            let max = generators.last().expect("non-empty").value().clone();
            let below = generators
                .iter()
                .map(|g| g.value().clone())
                .filter(|v| *v != max)
                .max()
                .expect("at least two generators");
            checks.check_exact(&format!("alpha_max({n}) brute force"), below, closed);
        }
    }
    Ok(())
}

fn table4(checks: &mut CheckList) -> Result<()> {
    let mut config = RunConfig::for_problem("F8");
    config.dimension = Some(2);
    config.bits_per_variable = Some(10);
    let resolved = config.clone().resolve()?;

    let landscape = exhaustive_sweep(&resolved.problem, &resolved.scheme, &SweepGuard::default())?;
    let best = landscape
        .iter()
        .map(|(_, g)| *g)
        .fold(f64::INFINITY, f64::min);
    checks.check_band(
        "exhaustive generators tested",
        landscape.len() as f64,
        reference::f8_d2::EXHAUSTIVE_GENERATORS as f64 * 0.99,
        reference::f8_d2::EXHAUSTIVE_GENERATORS as f64 * 1.01,
    );
    checks.check_rel("exhaustive best g", best, reference::f8_d2::EXHAUSTIVE_BEST, 1e-4);
    checks.check_rel(
        "exhaustive gap to optimum",
        best,
        reference::f8_d2::OPTIMUM,
        1e-4,
    );

    let values: Vec<f64> = landscape.iter().map(|(_, g)| *g).collect();
    let lag1 = lag_autocorrelation(&values, 1)?.rho;
    let lag20 = lag_autocorrelation(&values, 20)?.rho;
    checks.check_band("lag-1 autocorrelation", lag1, 0.55, 0.75);
    checks.check_band("lag-20 autocorrelation", lag20, -0.05, 0.15);

    config.delta = Some(DeltaSpec::Number(reference::f8_d2::ADAPTIVE_DELTA));
    let resolved = config.resolve()?;
    let result = optimize(&resolved.problem, &resolved.scheme, &resolved.optimizer)?;
    checks.check_band(
        "adaptive generators tested",
        result.generators_evaluated as f64,
        reference::f8_d2::ADAPTIVE_GENERATORS as f64 * 0.9,
        reference::f8_d2::ADAPTIVE_GENERATORS as f64 * 1.1,
    );
    checks.check_rel(
        "adaptive best g",
        result.best_value,
        reference::f8_d2::ADAPTIVE_BEST,
        5e-4,
    );
    checks.check_band(
        "adaptive gap (%)",
        (result.best_value - reference::f8_d2::OPTIMUM) / reference::f8_d2::OPTIMUM.abs()
            * 100.0,
        -1e-9,
        0.05,
    );
    Ok(())
}

fn table2(checks: &mut CheckList) -> Result<()> {
    let width = BitWidth::new(31)?;
    let count = reference::uniformity::COUNT;
    let delta = default_cloud_delta(width, count);
    let cloud = slcg_cloud(width, reference::uniformity::DIMENSION, &delta, count, true)?;
    checks.check_exact("slcg cloud size", cloud.points.len(), count);
    let report = uniformity_report(&cloud, reference::uniformity::BINS_PER_AXIS)?;
    checks.check_band("slcg chi-square p", report.chi_square_p, 0.05, 1.0);
    checks.check_band("slcg nn ratio", report.nn_ratio, 0.90, 1.05);
    checks.check_band("slcg max |corr|", report.max_abs_correlation, 0.0, 0.06);

    let randu = randu_cloud(count, reference::uniformity::DIMENSION, 1)?;
    let randu_report = uniformity_report(&randu, reference::uniformity::BINS_PER_AXIS)?;
    checks.check_band("randu nn ratio", randu_report.nn_ratio, 0.60, 0.80);
    Ok(())
}

fn engineering(checks: &mut CheckList) -> Result<()> {
    for baseline in &reference::engineering::BASELINES {
        let problem = constrained_problem(baseline.id)?;
        let feasible = problem.is_feasible(baseline.solution);
        checks.check_exact(
            &format!("{} recorded solution feasible", baseline.id),
            feasible,
            true,
        );
        let cost = problem.evaluate(baseline.solution);
        checks.check_rel(
            &format!("{} recorded cost", baseline.id),
            cost,
            baseline.cost,
            5e-4,
        );

        let mut config = RunConfig::for_problem(baseline.id);
        if baseline.delta_shift > 0 {
            let base = config.clone().resolve()?.optimizer.big_delta;
            let delta = (base >> baseline.delta_shift) >> 1u32 << 1u32;
            config.delta = Some(DeltaSpec::Text(delta.to_string()));
        }
        let resolved = config.resolve()?;
        let result = optimize(&resolved.problem, &resolved.scheme, &resolved.optimizer)?;
        let run_feasible = result
            .best_point
            .as_ref()
            .map(|p| resolved.raw_problem.is_feasible(p))
            .unwrap_or(false);
        checks.check_exact(
            &format!("{} fresh run feasible", baseline.id),
            run_feasible,
            true,
        );
        checks.check_band(
            &format!("{} fresh run cost", baseline.id),
            result.best_value,
            0.0,
            baseline.target,
        );
    }
    Ok(())
}

fn stats(checks: &mut CheckList) -> Result<()> {
    let ranks: Vec<(String, f64)> = reference::friedman_all_d::MEAN_RANKS
        .iter()
        .map(|(name, r)| (name.to_string(), *r))
        .collect();
    let rows = holm_posthoc(
        &ranks,
        reference::friedman_all_d::N_ROWS,
        reference::friedman_all_d::CONTROL,
        0.05,
    )?;
    for row in rows {
        let expected_significant = row.algorithm != reference::friedman_all_d::NOT_SIGNIFICANT;
        checks.check_exact(
            &format!("{} decision (z = {:.2})", row.algorithm, row.z),
            if row.significant { "Significant" } else { "Not significant" },
            if expected_significant { "Significant" } else { "Not significant" },
        );
    }
    Ok(())
}
