//! Uniformity study machinery: point clouds from the structured generator,
//! from RANDU, and from an ideal-uniform reference, with chi-square,
//! Kolmogorov-Smirnov, nearest-neighbor and correlation statistics.
//!
//! RANDU is the historical multiplier-65539, modulus-2^31 recurrence whose
//! consecutive triples collapse onto 15 parallel planes; it is the
//! comparator for the lattice defect that single-state bit splitting avoids.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::encoding::EncodingScheme;
use crate::generator::{
    alpha_bound, alternating_generator, is_generator_u64, step_u64, BitWidth,
    FIXED_WIDTH_LIMIT,
};
use crate::mix::{mix64, to_unit};
use crate::{Error, Result};

/// Where a cloud came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CloudSource {
    Slcg,
    Randu,
    Uniform,
}

impl std::str::FromStr for CloudSource {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "slcg" => Ok(CloudSource::Slcg),
            "randu" => Ok(CloudSource::Randu),
            "uniform" => Ok(CloudSource::Uniform),
            other => Err(Error::InvalidInput(format!(
                "unknown cloud source '{other}' (expected slcg|randu|uniform)"
            ))),
        }
    }
}

/// Points in the unit cube with a fixed, recorded count.
#[derive(Debug, Clone)]
pub struct PointCloud {
    pub source: CloudSource,
    pub points: Vec<Vec<f64>>,
    /// Set when the requested count could not be reached before the
    /// generator space was exhausted.
    pub truncated: bool,
}

impl PointCloud {
    pub fn dimension(&self) -> usize {
        self.points.first().map_or(0, Vec::len)
    }
}

/// Cloud from the structured generator: candidates walk from 0 by `delta`
/// (membership-filtered) and every distinct state of each admitted cycle
/// decodes to one point, until `count` points are collected.
///
/// The walk runs to the alternating-pair generator, the true maximum, so a
/// `delta` of 2 with `decorrelate` off reproduces the full state-space
/// partition.
///
/// `decorrelate` skips any candidate that is a power-of-two multiple of an
/// already admitted generator. The cycles of `a` and `2^t * a` are
/// single-small-pattern twins (their k-th states differ by exactly
/// `(2^t - 1) * 2^(k-t)` mod m), so admitting both fills the cloud with
/// near-duplicate points that one coordinate apart; uniformity reports use
/// the rule by default and record it.
pub fn slcg_cloud(
    n: BitWidth,
    dimension: usize,
    delta: &BigUint,
    count: usize,
    decorrelate: bool,
) -> Result<PointCloud> {
    if n.get() > FIXED_WIDTH_LIMIT {
        return Err(Error::GuardTripped(format!(
            "cloud generation supports at most {FIXED_WIDTH_LIMIT}-bit states"
        )));
    }
    if delta.is_zero() || delta.bit(0) {
        return Err(Error::OddDelta(delta.to_string()));
    }
    let scheme = unit_scheme(n, dimension)?;
    let bits = n.get();
    let delta = delta
        .to_u64()
        .ok_or_else(|| Error::InvalidInput("delta exceeds the cloud width".into()))?;
    let stop = if n.is_odd() {
        alternating_generator(n)?.to_u64().expect("width-checked")
    } else {
        alpha_bound(n).to_u64().expect("width-checked")
    };
    let mut admitted = std::collections::HashSet::new();
    let mut points = Vec::with_capacity(count);
    let mut alpha = 0u64;
    'outer: while alpha <= stop {
        if decorrelate && is_power_of_two_multiple(alpha, &admitted) {
            alpha += delta;
            continue;
        }
        if is_generator_u64(alpha, bits) {
            if decorrelate {
                admitted.insert(alpha);
            }
            let mut state = alpha;
            loop {
                points.push(scheme.decode_word(&state));
                if points.len() >= count {
                    break 'outer;
                }
                state = step_u64(state, bits);
                if state == alpha {
                    break;
                }
            }
        }
        alpha += delta;
    }
    let truncated = points.len() < count;
    Ok(PointCloud {
        source: CloudSource::Slcg,
        points,
        truncated,
    })
}

fn is_power_of_two_multiple(alpha: u64, admitted: &std::collections::HashSet<u64>) -> bool {
    let mut halved = alpha;
    while halved != 0 && halved % 2 == 0 {
        halved /= 2;
        if admitted.contains(&halved) {
            return true;
        }
    }
    false
}

/// Default exploration step for a cloud: `2^n / count` rounded to twice an
/// odd number. The magnitude lands the candidate walk near one admitted
/// cycle per `2n` requested points; keeping the step singly even stops the
/// lattice from collapsing onto power-of-two chains that the decorrelation
/// rule would then skip wholesale.
pub fn default_cloud_delta(n: BitWidth, count: usize) -> BigUint {
    let scaled = (BigUint::from(1u32) << n.get()) / BigUint::from(count.max(1));
    let mut even = scaled >> 1u32 << 1u32;
    if even.is_zero() {
        return BigUint::from(2u32);
    }
    if !even.bit(1) {
        even += BigUint::from(2u32);
    }
    even
}

/// Classic RANDU recurrence `x <- 65539 * x mod 2^31` from an odd seed;
/// consecutive outputs grouped into d-tuples, normalized by 2^31.
pub fn randu_cloud(count: usize, dimension: usize, seed: u64) -> Result<PointCloud> {
    if seed % 2 == 0 {
        return Err(Error::InvalidInput(format!(
            "RANDU seed must be odd, got {seed}"
        )));
    }
    if dimension == 0 {
        return Err(Error::InvalidInput("dimension must be positive".into()));
    }
    const MODULUS: u64 = 1 << 31;
    let mut state = seed % MODULUS;
    let mut points = Vec::with_capacity(count);
    for _ in 0..count {
        let mut point = Vec::with_capacity(dimension);
        for _ in 0..dimension {
            state = (65539 * state) % MODULUS;
            point.push(state as f64 / MODULUS as f64);
        }
        points.push(point);
    }
    Ok(PointCloud {
        source: CloudSource::Randu,
        points,
        truncated: false,
    })
}

/// Ideal-uniform reference from a counter-based deterministic stream, so
/// the whole diagnostics suite is reproducible.
pub fn uniform_cloud(count: usize, dimension: usize) -> PointCloud {
    let mut points = Vec::with_capacity(count);
    let mut counter = 0u64;
    for _ in 0..count {
        let mut point = Vec::with_capacity(dimension);
        for _ in 0..dimension {
            counter += 1;
            point.push(to_unit(mix64(counter)));
        }
        points.push(point);
    }
    PointCloud {
        source: CloudSource::Uniform,
        points,
        truncated: false,
    }
}

/// Uniformity statistics over one cloud.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct UniformityReport {
    pub source: CloudSource,
    pub count: usize,
    pub dimension: usize,
    pub bins_per_axis: usize,
    pub chi_square_statistic: f64,
    pub chi_square_p: f64,
    /// Worst per-dimension one-sample KS distance against uniform.
    pub ks_worst_d: f64,
    pub ks_worst_dimension: usize,
    /// Mean nearest-neighbor distance over the expectation for a Poisson
    /// cloud of the same density (edge effects uncorrected).
    pub nn_ratio: f64,
    pub nn_mean: f64,
    pub nn_expected: f64,
    /// Coefficient of variation of the nearest-neighbor distances.
    pub nn_cv: f64,
    pub max_abs_correlation: f64,
    pub degenerate: bool,
}

/// Chi-square over `bins^d` equal-volume cells, per-dimension KS against
/// uniform, nearest-neighbor mean against the Poisson expectation, and the
/// maximum absolute pairwise coordinate correlation.
pub fn uniformity_report(cloud: &PointCloud, bins_per_axis: usize) -> Result<UniformityReport> {
    let count = cloud.points.len();
    let dimension = cloud.dimension();
    if count == 0 || dimension == 0 {
        return Err(Error::InvalidInput("cloud is empty".into()));
    }
    if bins_per_axis < 2 {
        return Err(Error::InvalidInput("bins_per_axis must be at least 2".into()));
    }
    let degenerate = cloud.points.iter().all(|p| p == &cloud.points[0]);

    // chi-square goodness of fit against the uniform expectation
    let cells = bins_per_axis.pow(dimension as u32);
    let mut observed = vec![0u64; cells];
    for p in &cloud.points {
        let mut index = 0usize;
        for &x in p {
            let mut b = (x * bins_per_axis as f64) as usize;
            if b >= bins_per_axis {
                b = bins_per_axis - 1;
            }
            index = index * bins_per_axis + b;
        }
        observed[index] += 1;
    }
    debug_assert_eq!(observed.iter().sum::<u64>(), count as u64);
    let expected = count as f64 / cells as f64;
    let statistic: f64 = observed
        .iter()
        .map(|&o| {
            let d = o as f64 - expected;
            d * d / expected
        })
        .sum();
    let chi_square_p = if degenerate {
        0.0
    } else {
        let dist = ChiSquared::new((cells - 1) as f64)
            .map_err(|e| Error::InvalidInput(format!("chi-square dof: {e}")))?;
        1.0 - dist.cdf(statistic)
    };

    // worst-dimension KS distance
    let mut ks_worst_d = 0.0;
    let mut ks_worst_dimension = 0;
    for j in 0..dimension {
        let mut xs: Vec<f64> = cloud.points.iter().map(|p| p[j]).collect();
        xs.sort_by(|a, b| a.partial_cmp(b).expect("coordinates are finite"));
        let n = xs.len() as f64;
        let mut d = 0.0f64;
        for (i, &x) in xs.iter().enumerate() {
            let upper = (i + 1) as f64 / n - x;
            let lower = x - i as f64 / n;
            d = d.max(upper).max(lower);
        }
        if d > ks_worst_d {
            ks_worst_d = d;
            ks_worst_dimension = j + 1;
        }
    }

    // nearest-neighbor distances, Poisson expectation uncorrected for edges
    let mut nn = vec![f64::INFINITY; count];
    for i in 0..count {
        for j in (i + 1)..count {
            let mut dist = 0.0;
            for k in 0..dimension {
                let d = cloud.points[i][k] - cloud.points[j][k];
                dist += d * d;
            }
            if dist < nn[i] {
                nn[i] = dist;
            }
            if dist < nn[j] {
                nn[j] = dist;
            }
        }
    }
    let nn: Vec<f64> = nn.into_iter().map(f64::sqrt).collect();
    let nn_mean = nn.iter().sum::<f64>() / count as f64;
    let nn_var = nn.iter().map(|d| (d - nn_mean).powi(2)).sum::<f64>() / count as f64;
    let nn_expected = expected_nn_distance(count, dimension);
    let nn_cv = if nn_mean > 0.0 {
        nn_var.sqrt() / nn_mean
    } else {
        0.0
    };

    // maximum absolute pairwise Pearson correlation between coordinates
    let mut max_abs_correlation = 0.0f64;
    for a in 0..dimension {
        for b in (a + 1)..dimension {
            let xs: Vec<f64> = cloud.points.iter().map(|p| p[a]).collect();
            let ys: Vec<f64> = cloud.points.iter().map(|p| p[b]).collect();
            if let Some(r) = pearson(&xs, &ys) {
                max_abs_correlation = max_abs_correlation.max(r.abs());
            }
        }
    }

    Ok(UniformityReport {
        source: cloud.source,
        count,
        dimension,
        bins_per_axis,
        chi_square_statistic: statistic,
        chi_square_p,
        ks_worst_d,
        ks_worst_dimension,
        nn_ratio: if nn_expected > 0.0 { nn_mean / nn_expected } else { 0.0 },
        nn_mean,
        nn_expected,
        nn_cv,
        max_abs_correlation,
        degenerate,
    })
}

/// Poisson-process expectation of the nearest-neighbor distance for `n`
/// points in the unit d-cube: `Gamma(1 + 1/d) / (V_d * n)^(1/d)` with `V_d`
/// the unit-ball volume, i.e. the `sqrt(pi)`-normalized form
/// `Gamma(1 + 1/d) * Gamma(d/2 + 1)^(1/d) / (sqrt(pi) * n^(1/d))`.
pub fn expected_nn_distance(n: usize, d: usize) -> f64 {
    let d_f = d as f64;
    statrs::function::gamma::gamma(1.0 + 1.0 / d_f)
        * statrs::function::gamma::gamma(d_f / 2.0 + 1.0).powf(1.0 / d_f)
        / (std::f64::consts::PI.sqrt() * (n as f64).powf(1.0 / d_f))
}

fn pearson(xs: &[f64], ys: &[f64]) -> Option<f64> {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut cov = 0.0;
    let mut vx = 0.0;
    let mut vy = 0.0;
    for (x, y) in xs.iter().zip(ys) {
        cov += (x - mx) * (y - my);
        vx += (x - mx) * (x - mx);
        vy += (y - my) * (y - my);
    }
    if vx == 0.0 || vy == 0.0 {
        None
    } else {
        Some(cov / (vx * vy).sqrt())
    }
}

/// Unit-cube scheme: `floor(n/d)` bits per variable with the remainder bit
/// on the last variable.
pub fn unit_scheme(n: BitWidth, dimension: usize) -> Result<EncodingScheme> {
    if dimension == 0 {
        return Err(Error::InvalidInput("dimension must be positive".into()));
    }
    let base = n.get() / dimension as u32;
    if base == 0 {
        return Err(Error::InvalidInput(format!(
            "{} bits cannot cover {dimension} variables",
            n.get()
        )));
    }
    let remainder = n.get() - base * dimension as u32;
    let variables = (0..dimension)
        .map(|j| {
            let bits = if j == dimension - 1 { base + remainder } else { base };
            crate::encoding::VariableSpec::new(0.0, 1.0, bits)
        })
        .collect::<Result<Vec<_>>>()?;
    EncodingScheme::new(variables)
}
