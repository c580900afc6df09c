//! Run configuration files and deterministic result persistence.
//!
//! A run config round-trips losslessly through JSON; every output file
//! embeds the full effective configuration (after defaulting) so results
//! are self-describing, and re-running a persisted config reproduces its
//! outputs byte for byte. CSV files use '.' decimals, LF line endings and
//! shortest-round-trip float formatting, with the effective configuration
//! on a leading `#` comment line.

use std::fs;
use std::io::Write as _;
use std::path::Path;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::encoding::{build_delta, default_scheme, EncodingScheme, VariableSpec};
use crate::generator::alpha_bound;
use crate::objective::{constrained_problem, death_penalty, get_benchmark, Problem};
use crate::optimizer::{OptimizerConfig, RunResult, StepKind};
use crate::{Error, Result};

/// Problem reference inside a config: a suite id, or a suite id with
/// overridden box bounds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ProblemRef {
    Id(String),
    Custom {
        id: String,
        bounds: Vec<(f64, f64)>,
    },
}

/// Exploration step specification: a number, a decimal string, a `0b`
/// binary string, or per-variable patterns `"p_d|..|p_1"` written with the
/// last variable first, exactly as whole states print.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DeltaSpec {
    Number(u64),
    Text(String),
}

impl DeltaSpec {
    pub fn parse(&self, scheme: &EncodingScheme, allow_odd: bool) -> Result<BigUint> {
        let delta = match self {
            DeltaSpec::Number(v) => BigUint::from(*v),
            DeltaSpec::Text(text) => {
                if let Some(binary) = text.strip_prefix("0b") {
                    BigUint::parse_bytes(binary.as_bytes(), 2).ok_or_else(|| {
                        Error::InvalidInput(format!("'{text}' is not a binary literal"))
                    })?
                } else if text.contains('|') {
                    let mut segments: Vec<&str> = text.split('|').collect();
                    segments.reverse(); // written MSB-first: variable 1 is last
                    let widths: Vec<u32> =
                        scheme.variables().iter().map(|v| v.bits).collect();
                    if segments.len() != widths.len() {
                        return Err(Error::InvalidInput(format!(
                            "{} pattern segments for {} variables",
                            segments.len(),
                            widths.len()
                        )));
                    }
                    return build_delta(&segments, &widths, allow_odd);
                } else {
                    text.parse::<BigUint>().map_err(|_| {
                        Error::InvalidInput(format!("'{text}' is not a decimal integer"))
                    })?
                }
            }
        };
        if delta.bit(0) && !allow_odd {
            return Err(Error::OddDelta(delta.to_string()));
        }
        Ok(delta)
    }
}

/// User-facing run configuration; unset fields take the documented
/// defaults. The effective (fully defaulted) form uses the same schema
/// with every field present.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub problem: ProblemRef,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dimension: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bits_per_variable: Option<u32>,
    /// Explicit variable layout; overrides `bits_per_variable`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scheme: Option<EncodingScheme>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta_step: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<DeltaSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s_max: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub e_max: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_evals: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub allow_even_bits: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub allow_odd_delta: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub emit_history: Option<bool>,
}

impl RunConfig {
    pub fn for_problem(id: &str) -> Self {
        RunConfig {
            problem: ProblemRef::Id(id.to_string()),
            dimension: None,
            bits_per_variable: None,
            scheme: None,
            delta_step: None,
            delta: None,
            s_max: None,
            e_max: None,
            max_evals: None,
            allow_even_bits: None,
            allow_odd_delta: None,
            emit_history: None,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// Apply defaults and construct the runnable pieces. Constrained
    /// problems are wrapped with the death penalty here.
    pub fn resolve(&self) -> Result<ResolvedRun> {
        let (id, bounds_override) = match &self.problem {
            ProblemRef::Id(id) => (id.clone(), None),
            ProblemRef::Custom { id, bounds } => (id.clone(), Some(bounds.clone())),
        };
        let base = if crate::objective::ENGINEERING_IDS.contains(&id.as_str()) {
            constrained_problem(&id)?
        } else {
            let dimension = self
                .dimension
                .or_else(|| crate::objective::fixed_dimension(&id))
                .ok_or_else(|| {
                    Error::InvalidInput(format!("problem {id} is scalable: set \"dimension\""))
                })?;
            get_benchmark(&id, dimension)?
        };
        if let Some(dim) = self.dimension {
            if dim != base.dimension {
                return Err(Error::DimensionMismatch {
                    id: id.clone(),
                    expected: base.dimension,
                    got: dim,
                });
            }
        }
        let mut problem = base;
        if let Some(bounds) = bounds_override {
            if bounds.len() != problem.dimension {
                return Err(Error::InvalidInput(format!(
                    "{} bounds for dimension {}",
                    bounds.len(),
                    problem.dimension
                )));
            }
            problem.bounds = bounds;
        }

        let allow_even = self.allow_even_bits.unwrap_or(false);
        let scheme = if let Some(scheme) = &self.scheme {
            if scheme.dimension() != problem.dimension {
                return Err(Error::InvalidInput(format!(
                    "scheme has {} variables, problem {} needs {}",
                    scheme.dimension(),
                    problem.id,
                    problem.dimension
                )));
            }
            scheme.clone()
        } else if let (Some(recommended), None) =
            (problem.recommended_bits.clone(), self.bits_per_variable)
        {
            let variables = problem
                .bounds
                .iter()
                .zip(&recommended)
                .map(|(&(lo, hi), &bits)| VariableSpec::new(lo, hi, bits))
                .collect::<Result<Vec<_>>>()?;
            EncodingScheme::new(variables)?
        } else {
            let bits = self.bits_per_variable.unwrap_or(20);
            default_scheme(&problem.bounds, bits, allow_even)?
        };
        if !allow_even && scheme.total_bits() % 2 == 0 {
            return Err(Error::EvenBitWidth(scheme.total_bits()));
        }

        let mut optimizer = OptimizerConfig::for_scheme(&scheme);
        if let Some(step) = self.delta_step {
            optimizer.delta_step = step;
        }
        let allow_odd_delta = self.allow_odd_delta.unwrap_or(false);
        if let Some(delta) = &self.delta {
            optimizer.big_delta = delta.parse(&scheme, allow_odd_delta)?;
        }
        if let Some(s_max) = self.s_max {
            optimizer.stagnation_max = s_max;
        }
        if let Some(e_max) = self.e_max {
            optimizer.exploit_max = e_max;
        }
        optimizer.max_evals = self.max_evals;
        optimizer.record_history = self.emit_history.unwrap_or(true);
        optimizer.alpha_max = alpha_bound(scheme.width());
        optimizer.validate()?;

        let effective = RunConfig {
            problem: ProblemRef::Custom {
                id: id.clone(),
                bounds: problem.bounds.clone(),
            },
            dimension: Some(problem.dimension),
            bits_per_variable: None,
            scheme: Some(scheme.clone()),
            delta_step: Some(optimizer.delta_step),
            delta: Some(DeltaSpec::Text(optimizer.big_delta.to_string())),
            s_max: Some(optimizer.stagnation_max),
            e_max: Some(optimizer.exploit_max),
            max_evals: optimizer.max_evals,
            allow_even_bits: Some(allow_even),
            allow_odd_delta: Some(allow_odd_delta),
            emit_history: Some(optimizer.record_history),
        };

        let run_problem = if problem.has_constraints() {
            death_penalty(&problem)
        } else {
            problem.clone()
        };
        Ok(ResolvedRun {
            problem: run_problem,
            raw_problem: problem,
            scheme,
            optimizer,
            effective,
        })
    }
}

/// A fully resolved run: the (death-penalty wrapped) objective, the layout,
/// the optimizer parameters, and the effective config to persist.
pub struct ResolvedRun {
    pub problem: Problem,
    /// The problem before death-penalty wrapping, for constraint reporting.
    pub raw_problem: Problem,
    pub scheme: EncodingScheme,
    pub optimizer: OptimizerConfig,
    pub effective: RunConfig,
}

/// Scalar summary persisted as `result.json`; the histories live in the
/// CSV files next to it. Non-finite best values serialize as null.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ResultSummary {
    pub config: RunConfig,
    pub best_value: Option<f64>,
    pub best_point: Option<Vec<f64>>,
    pub generators_evaluated: u64,
    pub function_evaluations: u64,
    pub distinct_points: u64,
    pub short_period_generators: u64,
    pub budget_exhausted: bool,
}

impl ResultSummary {
    pub fn new(config: &RunConfig, result: &RunResult) -> Self {
        ResultSummary {
            config: config.clone(),
            best_value: result.best_value.is_finite().then_some(result.best_value),
            best_point: result.best_point.clone(),
            generators_evaluated: result.generators_evaluated,
            function_evaluations: result.function_evaluations,
            distinct_points: result.distinct_points,
            short_period_generators: result.short_period_generators,
            budget_exhausted: result.budget_exhausted,
        }
    }
}

fn config_comment(config: &RunConfig) -> Result<String> {
    Ok(format!("# config {}", serde_json::to_string(config)?))
}

/// `result.json`, `convergence.csv` (evals,best) and `exploitation.csv`
/// (alpha,g,step_type) under `dir`, plus `config.json` holding the
/// effective configuration alone.
pub fn write_run_outputs(dir: &Path, config: &RunConfig, result: &RunResult) -> Result<()> {
    fs::create_dir_all(dir)?;
    let summary = ResultSummary::new(config, result);
    write_atomic(
        &dir.join("result.json"),
        &(serde_json::to_string_pretty(&summary)? + "\n"),
    )?;
    write_atomic(
        &dir.join("config.json"),
        &(serde_json::to_string_pretty(config)? + "\n"),
    )?;

    let mut convergence = String::new();
    convergence.push_str(&config_comment(config)?);
    convergence.push_str("\nevals,best\n");
    for point in &result.convergence {
        convergence.push_str(&format!("{},{}\n", point.evaluations, point.best));
    }
    write_atomic(&dir.join("convergence.csv"), &convergence)?;

    let mut exploitation = String::new();
    exploitation.push_str(&config_comment(config)?);
    exploitation.push_str("\nalpha,g,step_type\n");
    for entry in &result.exploitation {
        match entry.surrogate {
            Some(g) => exploitation.push_str(&format!(
                "{},{},{}\n",
                entry.alpha,
                g,
                entry.step.as_str()
            )),
            None => exploitation.push_str(&format!(
                "{},,{}\n",
                entry.alpha,
                StepKind::SkippedInvalid.as_str()
            )),
        }
    }
    write_atomic(&dir.join("exploitation.csv"), &exploitation)?;
    Ok(())
}

/// `landscape.csv` (alpha,g) and `autocorr.csv` (k,rho for k = 1..=20).
pub fn write_sweep_outputs(
    dir: &Path,
    config: &RunConfig,
    landscape: &[(u64, f64)],
) -> Result<()> {
    fs::create_dir_all(dir)?;
    let mut text = String::new();
    text.push_str(&config_comment(config)?);
    text.push_str("\nalpha,g\n");
    for (alpha, g) in landscape {
        text.push_str(&format!("{alpha},{g}\n"));
    }
    write_atomic(&dir.join("landscape.csv"), &text)?;

    let values: Vec<f64> = landscape.iter().map(|(_, g)| *g).collect();
    let mut autocorr = String::new();
    autocorr.push_str(&config_comment(config)?);
    autocorr.push_str("\nk,rho\n");
    for k in 1..=20usize {
        if let Ok(corr) = crate::optimizer::lag_autocorrelation(&values, k) {
            autocorr.push_str(&format!("{k},{}\n", corr.rho));
        }
    }
    write_atomic(&dir.join("autocorr.csv"), &autocorr)?;
    Ok(())
}

/// Point cloud as CSV with an `x1,..,xd` header.
pub fn write_points_csv(path: &Path, points: &[Vec<f64>]) -> Result<()> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent)?;
        }
    }
    let d = points.first().map_or(0, Vec::len);
    let header: Vec<String> = (1..=d).map(|j| format!("x{j}")).collect();
    let mut text = header.join(",");
    text.push('\n');
    for p in points {
        let row: Vec<String> = p.iter().map(|x| x.to_string()).collect();
        text.push_str(&row.join(","));
        text.push('\n');
    }
    write_atomic(path, &text)
}

fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let mut file = fs::File::create(path)?;
    file.write_all(contents.as_bytes())?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::optimizer::optimize;

    #[test]
    fn config_round_trips_through_json() {
        let text = r#"{
            "problem": "F8",
            "dimension": 2,
            "bits_per_variable": 10,
            "delta": 1004,
            "s_max": 5000
        }"#;
        let config = RunConfig::from_json(text).unwrap();
        let json = serde_json::to_string(&config).unwrap();
        let back = RunConfig::from_json(&json).unwrap();
        assert_eq!(config, back);
    }

    #[test]
    fn resolve_applies_documented_defaults() {
        let mut config = RunConfig::for_problem("F8");
        config.dimension = Some(2);
        config.bits_per_variable = Some(10);
        let resolved = config.resolve().unwrap();
        assert_eq!(resolved.scheme.total_bits(), 21);
        assert_eq!(resolved.optimizer.delta_step, 2);
        assert_eq!(resolved.optimizer.stagnation_max, 5000);
        assert_eq!(resolved.optimizer.exploit_max, 60);
        assert_eq!(
            resolved.optimizer.alpha_max,
            BigUint::from(349524u32)
        );
        // default Delta: last segment size minus the dense offset
        assert_eq!(resolved.optimizer.big_delta, BigUint::from(1004u32));
    }

    #[test]
    fn resolve_rejects_missing_dimension_and_unknown_fields() {
        let config = RunConfig::for_problem("F1");
        assert!(config.resolve().is_err());
        assert!(RunConfig::from_json(r#"{"problem":"F1","bogus":1}"#).is_err());
    }

    #[test]
    fn delta_spec_forms_agree() {
        let scheme = default_scheme(&[(0.0, 1.0); 3], 4, false).unwrap();
        // widths (4, 4, 5): patterns written variable-d first
        let from_patterns = DeltaSpec::Text("00001|0001|0000".into())
            .parse(&scheme, false)
            .unwrap();
        let from_decimal = DeltaSpec::Text("272".into()).parse(&scheme, false).unwrap();
        let from_binary = DeltaSpec::Text("0b100010000".into())
            .parse(&scheme, false)
            .unwrap();
        let from_number = DeltaSpec::Number(272).parse(&scheme, false).unwrap();
        assert_eq!(from_patterns, BigUint::from(272u32));
        assert_eq!(from_decimal, from_patterns);
        assert_eq!(from_binary, from_patterns);
        assert_eq!(from_number, from_patterns);
        assert!(DeltaSpec::Number(3).parse(&scheme, false).is_err());
        assert!(DeltaSpec::Number(3).parse(&scheme, true).is_ok());
    }

    #[test]
    fn effective_config_reruns_identically() {
        let dir = std::env::temp_dir().join("slcg-report-test");
        let _ = fs::remove_dir_all(&dir);

        let mut config = RunConfig::for_problem("F9");
        config.dimension = Some(2);
        config.bits_per_variable = Some(6);
        let resolved = config.resolve().unwrap();
        let result = optimize(&resolved.problem, &resolved.scheme, &resolved.optimizer).unwrap();
        write_run_outputs(&dir.join("a"), &resolved.effective, &result).unwrap();

        // re-run from the persisted effective config
        let persisted = fs::read_to_string(dir.join("a/config.json")).unwrap();
        let again = RunConfig::from_json(&persisted).unwrap().resolve().unwrap();
        let result2 = optimize(&again.problem, &again.scheme, &again.optimizer).unwrap();
        write_run_outputs(&dir.join("b"), &again.effective, &result2).unwrap();

        for file in ["result.json", "config.json", "convergence.csv", "exploitation.csv"] {
            let a = fs::read(dir.join("a").join(file)).unwrap();
            let b = fs::read(dir.join("b").join(file)).unwrap();
            assert_eq!(a, b, "{file} differs between identical runs");
        }
        let _ = fs::remove_dir_all(&dir);
    }

    #[test]
    fn vessel_uses_recommended_discrete_bits() {
        let config = RunConfig::for_problem("pressure_vessel");
        let resolved = config.resolve().unwrap();
        let bits: Vec<u32> = resolved.scheme.variables().iter().map(|v| v.bits).collect();
        assert_eq!(bits, vec![7, 7, 20, 21]);
        assert_eq!(resolved.scheme.total_bits(), 55);
        // death penalty wrapping: infeasible points evaluate to +inf
        assert_eq!(
            resolved.problem.evaluate(&[0.0625, 0.0625, 200.0, 240.0]),
            f64::INFINITY
        );
    }
}
