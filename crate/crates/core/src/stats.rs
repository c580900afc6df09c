//! Nonparametric comparison machinery over imported result tables: a
//! one-sample Wilcoxon signed-rank test against a deterministic reference
//! value, Friedman mean ranks, and the Holm step-down post-hoc procedure.
//!
//! Competitor results arrive as external CSV tables; nothing here runs the
//! competitor algorithms.

use serde::{Deserialize, Serialize};
use statrs::distribution::{ChiSquared, ContinuousCDF, Normal};

use crate::{Error, Result};

/// Rectangular results table: one row per function instance (function x
/// dimension), one column per algorithm, values oriented for minimization.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultTable {
    pub rows: Vec<(String, String)>,
    pub algorithms: Vec<String>,
    pub values: Vec<Vec<f64>>,
}

impl ResultTable {
    pub fn new(
        rows: Vec<(String, String)>,
        algorithms: Vec<String>,
        values: Vec<Vec<f64>>,
    ) -> Result<Self> {
        if algorithms.len() < 2 {
            return Err(Error::InvalidInput("table needs at least two algorithms".into()));
        }
        if values.len() != rows.len() || values.iter().any(|r| r.len() != algorithms.len()) {
            return Err(Error::InvalidInput(
                "table is not rectangular or has missing cells".into(),
            ));
        }
        Ok(ResultTable {
            rows,
            algorithms,
            values,
        })
    }

    /// Parse the CSV schema `function,dim,<alg1>,<alg2>,..` with one row
    /// per function x dimension.
    pub fn from_csv_str(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::InvalidInput("empty results table".into()))?;
        let columns: Vec<&str> = header.split(',').map(str::trim).collect();
        if columns.len() < 4 || columns[0] != "function" || columns[1] != "dim" {
            return Err(Error::InvalidInput(
                "results header must be 'function,dim,<alg1>,<alg2>,..'".into(),
            ));
        }
        let algorithms: Vec<String> = columns[2..].iter().map(|s| s.to_string()).collect();
        let mut rows = Vec::new();
        let mut values = Vec::new();
        for (index, line) in lines.enumerate() {
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            if fields.len() != columns.len() {
                return Err(Error::InvalidInput(format!(
                    "row {}: expected {} fields, got {}",
                    index + 2,
                    columns.len(),
                    fields.len()
                )));
            }
            let mut row = Vec::with_capacity(algorithms.len());
            for (field, alg) in fields[2..].iter().zip(&algorithms) {
                let v: f64 = field.parse().map_err(|_| {
                    Error::InvalidInput(format!(
                        "row {}: cell '{}' under '{}' is not a number",
                        index + 2,
                        field,
                        alg
                    ))
                })?;
                row.push(v);
            }
            rows.push((fields[0].to_string(), fields[1].to_string()));
            values.push(row);
        }
        ResultTable::new(rows, algorithms, values)
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_algorithms(&self) -> usize {
        self.algorithms.len()
    }
}

/// Direction of a significant one-sample comparison, oriented for
/// minimization: `Worse` means the samples are significantly greater than
/// the reference.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Worse,
    Equal,
    Better,
}

impl Verdict {
    pub fn symbol(self) -> &'static str {
        match self {
            Verdict::Worse => "+",
            Verdict::Equal => "=",
            Verdict::Better => "-",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WilcoxonOutcome {
    pub p_value: f64,
    pub verdict: Verdict,
    /// Sum of ranks of positive differences.
    pub w_plus: f64,
    /// Non-zero differences used.
    pub n_used: usize,
    /// True when the exact distribution was enumerated.
    pub exact: bool,
}

/// Two-sided one-sample Wilcoxon signed-rank test of `samples` against a
/// fixed reference. Zero differences are dropped (the standard convention);
/// ties in magnitude take average ranks. The exact distribution is used for
/// up to 25 non-zero differences, the normal approximation with continuity
/// and tie correction above.
pub fn wilcoxon_one_sample(samples: &[f64], reference: f64, alpha: f64) -> Result<WilcoxonOutcome> {
    if samples.is_empty() {
        return Err(Error::InvalidInput("wilcoxon needs at least one sample".into()));
    }
    let diffs: Vec<f64> = samples
        .iter()
        .map(|s| s - reference)
        .filter(|d| *d != 0.0)
        .collect();
    if diffs.is_empty() {
        return Ok(WilcoxonOutcome {
            p_value: 1.0,
            verdict: Verdict::Equal,
            w_plus: 0.0,
            n_used: 0,
            exact: true,
        });
    }
    let n = diffs.len();
    let ranks = average_ranks(&diffs.iter().map(|d| d.abs()).collect::<Vec<_>>());
    let w_plus: f64 = diffs
        .iter()
        .zip(&ranks)
        .filter(|(d, _)| **d > 0.0)
        .map(|(_, r)| *r)
        .sum();
    let total: f64 = ranks.iter().sum();
    let w_minus = total - w_plus;

    let (p_value, exact) = if n <= 25 {
        (exact_two_sided_p(&ranks, w_plus), true)
    } else {
        let mean = n as f64 * (n as f64 + 1.0) / 4.0;
        let mut variance = n as f64 * (n as f64 + 1.0) * (2.0 * n as f64 + 1.0) / 24.0;
        variance -= tie_correction(&ranks) / 48.0;
        let sd = variance.sqrt();
        let z = if sd > 0.0 {
            ((w_plus - mean).abs() - 0.5).max(0.0) / sd
        } else {
            0.0
        };
        let normal = Normal::standard();
        (2.0 * (1.0 - normal.cdf(z)), false)
    };
    let p_value = p_value.min(1.0);

    let verdict = if p_value < alpha {
        if w_plus > w_minus {
            Verdict::Worse
        } else {
            Verdict::Better
        }
    } else {
        Verdict::Equal
    };
    Ok(WilcoxonOutcome {
        p_value,
        verdict,
        w_plus,
        n_used: n,
        exact,
    })
}

/// Average ranks (1-based) of the values, ties averaged.
fn average_ranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).expect("finite values"));
    let mut ranks = vec![0.0; values.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && values[order[j + 1]] == values[order[i]] {
            j += 1;
        }
        let average = (i + j) as f64 / 2.0 + 1.0;
        for &index in &order[i..=j] {
            ranks[index] = average;
        }
        i = j + 1;
    }
    ranks
}

/// Sum of `t^3 - t` over tie groups of the ranked magnitudes.
fn tie_correction(ranks: &[f64]) -> f64 {
    let mut sorted = ranks.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("finite ranks"));
    let mut correction = 0.0;
    let mut i = 0;
    while i < sorted.len() {
        let mut j = i;
        while j + 1 < sorted.len() && sorted[j + 1] == sorted[i] {
            j += 1;
        }
        let t = (j - i + 1) as f64;
        correction += t * t * t - t;
        i = j + 1;
    }
    correction
}

/// Exact two-sided p-value by dynamic programming over the signed-rank
/// distribution. Ranks are doubled to integers so tied (half-integer)
/// ranks enumerate exactly; the count table covers all 2^n sign choices.
fn exact_two_sided_p(ranks: &[f64], w_plus: f64) -> f64 {
    let doubled: Vec<u64> = ranks.iter().map(|r| (2.0 * r).round() as u64).collect();
    let total: u64 = doubled.iter().sum();
    let mut counts = vec![0.0f64; total as usize + 1];
    counts[0] = 1.0;
    let mut reach = 0usize;
    for &r in &doubled {
        reach += r as usize;
        for s in (r as usize..=reach).rev() {
            counts[s] += counts[s - r as usize];
        }
    }
    let observed = (2.0 * w_plus).round() as u64;
    let mirrored = total - observed;
    let lo = observed.min(mirrored);
    let hi = observed.max(mirrored);
    let mut tail = 0.0;
    for (s, c) in counts.iter().enumerate() {
        if (s as u64) <= lo || (s as u64) >= hi {
            tail += c;
        }
    }
    tail / 2f64.powi(ranks.len() as i32)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FriedmanOutcome {
    pub mean_ranks: Vec<f64>,
    pub chi_square: f64,
    pub p_value: f64,
}

/// Friedman test over a results table: per-row ranks (average on ties),
/// column mean ranks and the chi-square statistic on `k - 1` degrees of
/// freedom.
pub fn friedman(table: &ResultTable) -> Result<FriedmanOutcome> {
    let k = table.n_algorithms();
    let n = table.n_rows();
    if k < 3 {
        return Err(Error::InvalidInput("friedman needs at least 3 algorithms".into()));
    }
    if n < 2 {
        return Err(Error::InvalidInput("friedman needs at least 2 rows".into()));
    }
    let mut rank_sums = vec![0.0; k];
    for row in &table.values {
        for (sum, rank) in rank_sums.iter_mut().zip(average_ranks(row)) {
            *sum += rank;
        }
    }
    let mean_ranks: Vec<f64> = rank_sums.iter().map(|s| s / n as f64).collect();
    let nf = n as f64;
    let kf = k as f64;
    let chi_square = 12.0 * nf / (kf * (kf + 1.0))
        * mean_ranks
            .iter()
            .map(|r| (r - (kf + 1.0) / 2.0).powi(2))
            .sum::<f64>();
    let dist = ChiSquared::new(kf - 1.0)
        .map_err(|e| Error::InvalidInput(format!("chi-square dof: {e}")))?;
    Ok(FriedmanOutcome {
        mean_ranks,
        chi_square,
        p_value: 1.0 - dist.cdf(chi_square),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HolmRow {
    pub algorithm: String,
    pub z: f64,
    pub p_raw: f64,
    pub p_holm: f64,
    pub significant: bool,
}

/// Holm step-down post-hoc comparison of every algorithm against a control,
/// from Friedman mean ranks: `Z_j = (R_j - R_control) / sqrt(k(k+1)/(6N))`,
/// two-sided normal p-values, step-down adjustment with enforced
/// monotonicity, decisions at `alpha`.
pub fn holm_posthoc(
    mean_ranks: &[(String, f64)],
    n_rows: usize,
    control: &str,
    alpha: f64,
) -> Result<Vec<HolmRow>> {
    let k = mean_ranks.len();
    if k < 2 {
        return Err(Error::InvalidInput("holm needs at least two algorithms".into()));
    }
    let control_rank = mean_ranks
        .iter()
        .find(|(name, _)| name == control)
        .map(|(_, r)| *r)
        .ok_or_else(|| Error::InvalidInput(format!("control '{control}' not in ranks")))?;
    let kf = k as f64;
    let se = (kf * (kf + 1.0) / (6.0 * n_rows as f64)).sqrt();
    let normal = Normal::standard();
    let mut rows: Vec<HolmRow> = mean_ranks
        .iter()
        .filter(|(name, _)| name != control)
        .map(|(name, rank)| {
            let z = (rank - control_rank) / se;
            let p_raw = 2.0 * (1.0 - normal.cdf(z.abs()));
            HolmRow {
                algorithm: name.clone(),
                z,
                p_raw,
                p_holm: 0.0,
                significant: false,
            }
        })
        .collect();
    // step-down: ascending raw p, multiplier m, m-1, .., 1, running max
    rows.sort_by(|a, b| a.p_raw.partial_cmp(&b.p_raw).expect("finite p"));
    let m = rows.len();
    let mut running = 0.0f64;
    for (i, row) in rows.iter_mut().enumerate() {
        let adjusted = ((m - i) as f64 * row.p_raw).min(1.0);
        running = running.max(adjusted);
        row.p_holm = running;
        row.significant = row.p_holm < alpha;
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wilcoxon_all_equal_is_equal_with_p_one() {
        let out = wilcoxon_one_sample(&[2.5, 2.5, 2.5], 2.5, 0.05).unwrap();
        assert_eq!(out.verdict, Verdict::Equal);
        assert_eq!(out.p_value, 1.0);
        assert_eq!(out.n_used, 0);
    }

    #[test]
    fn wilcoxon_exact_matches_enumeration_oracle() {
        // nine samples against 1.0: one negative difference of rank 2, so
        // W+ = 43 and the two-sided tail over 2^9 assignments counts the
        // subsets {} {1} {2} on each side: p = 6/512
        let samples = [1.83, 0.50, 1.62, 2.48, 1.68, 1.88, 1.55, 3.06, 1.30];
        let out = wilcoxon_one_sample(&samples, 1.0, 0.05).unwrap();
        assert!(out.exact);
        assert_eq!(out.w_plus, 43.0);
        assert!((out.p_value - 6.0 / 512.0).abs() < 1e-12);
        assert_eq!(out.verdict, Verdict::Worse);

        // all nine differences positive: p = 2/512 whatever the ranks
        let out = wilcoxon_one_sample(&samples, 0.25, 0.05).unwrap();
        assert!((out.p_value - 2.0 / 512.0).abs() < 1e-12);
        assert!((out.p_value - 0.0039).abs() < 1e-4);
        assert_eq!(out.verdict, Verdict::Worse);
    }

    #[test]
    fn wilcoxon_brute_force_oracle_small_case() {
        // independent oracle: enumerate all sign assignments directly
        let samples = [0.4, -0.3, 0.7, 1.1, -0.2, 0.05];
        let reference = 0.0;
        let out = wilcoxon_one_sample(&samples, reference, 0.05).unwrap();
        let diffs: Vec<f64> = samples.iter().map(|s| s - reference).collect();
        let ranks = average_ranks(&diffs.iter().map(|d| d.abs()).collect::<Vec<_>>());
        let w_obs: f64 = diffs
            .iter()
            .zip(&ranks)
            .filter(|(d, _)| **d > 0.0)
            .map(|(_, r)| *r)
            .sum();
        let total: f64 = ranks.iter().sum();
        let mut tail = 0u64;
        for mask in 0u32..(1 << samples.len()) {
            let w: f64 = (0..samples.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| ranks[i])
                .sum();
            if w <= w_obs.min(total - w_obs) || w >= w_obs.max(total - w_obs) {
                tail += 1;
            }
        }
        let oracle = tail as f64 / (1u64 << samples.len()) as f64;
        assert!((out.p_value - oracle).abs() < 1e-12);
    }

    #[test]
    fn wilcoxon_verdict_flips_under_negation() {
        let samples = [1.83, 0.50, 1.62, 2.48, 1.68, 1.88, 1.55, 3.06, 1.30];
        let out = wilcoxon_one_sample(&samples, 1.0, 0.05).unwrap();
        let negated: Vec<f64> = samples.iter().map(|s| -s).collect();
        let flipped = wilcoxon_one_sample(&negated, -1.0, 0.05).unwrap();
        assert_eq!(out.verdict, Verdict::Worse);
        assert_eq!(flipped.verdict, Verdict::Better);
        assert!((out.p_value - flipped.p_value).abs() < 1e-12);
    }

    #[test]
    fn wilcoxon_normal_approximation_kicks_in() {
        let samples: Vec<f64> = (0..30).map(|i| 1.0 + 0.01 * (i as f64 + 1.0)).collect();
        let out = wilcoxon_one_sample(&samples, 1.0, 0.05).unwrap();
        assert!(!out.exact);
        assert_eq!(out.verdict, Verdict::Worse);
        assert!(out.p_value < 1e-4);
    }

    #[test]
    fn wilcoxon_insignificant_case_is_equal() {
        // mean 2.71e-7 samples against 2.66e-7, straddling the reference
        let samples = [
            2.71e-7, 2.60e-7, 2.95e-7, 2.51e-7, 2.77e-7, 2.62e-7, 2.88e-7, 2.48e-7, 2.75e-7,
            2.66e-7, 2.81e-7, 2.55e-7,
        ];
        let out = wilcoxon_one_sample(&samples, 2.66e-7, 0.05).unwrap();
        assert_eq!(out.verdict, Verdict::Equal);
        assert!(out.p_value > 0.05);
    }

    fn table(values: Vec<Vec<f64>>) -> ResultTable {
        let k = values[0].len();
        ResultTable::new(
            (0..values.len())
                .map(|i| (format!("F{}", i + 1), "2".to_string()))
                .collect(),
            (0..k).map(|j| format!("A{j}")).collect(),
            values,
        )
        .unwrap()
    }

    #[test]
    fn friedman_always_smallest_column_ranks_first() {
        let t = table(vec![
            vec![0.1, 5.0, 9.0],
            vec![0.2, 7.0, 3.0],
            vec![0.0, 2.0, 1.0],
            vec![0.5, 4.0, 6.0],
        ]);
        let out = friedman(&t).unwrap();
        assert_eq!(out.mean_ranks[0], 1.0);
    }

    #[test]
    fn friedman_identical_columns_tie() {
        let t = table(vec![
            vec![1.0, 1.0, 5.0],
            vec![2.0, 2.0, 6.0],
            vec![3.0, 3.0, 9.0],
        ]);
        let out = friedman(&t).unwrap();
        assert_eq!(out.mean_ranks[0], out.mean_ranks[1]);
        assert_eq!(out.mean_ranks[0], 1.5);
        assert_eq!(out.mean_ranks[2], 3.0);
    }

    #[test]
    fn friedman_rank_sums_are_conserved_and_chi_square_exact() {
        // rows ranked (1, 2, 3) every time: chi2 = 2N, p = exp(-N) for k=3
        let n = 4;
        let t = table(vec![vec![1.0, 2.0, 3.0]; n]);
        let out = friedman(&t).unwrap();
        let k = 3.0;
        assert!((out.mean_ranks.iter().sum::<f64>() - k * (k + 1.0) / 2.0).abs() < 1e-12);
        assert!((out.chi_square - 2.0 * n as f64).abs() < 1e-12);
        assert!((out.p_value - (-(n as f64)).exp()).abs() < 1e-12);
    }

    #[test]
    fn holm_control_against_itself_is_zero() {
        let ranks = vec![("A".to_string(), 2.0), ("B".to_string(), 2.0)];
        let rows = holm_posthoc(&ranks, 20, "A", 0.05).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].z, 0.0);
        assert!(!rows[0].significant);
    }

    #[test]
    fn holm_adjusted_p_is_monotone_and_dominates_raw() {
        let ranks = vec![
            ("ctl".to_string(), 1.8),
            ("a".to_string(), 2.1),
            ("b".to_string(), 3.4),
            ("c".to_string(), 5.6),
            ("d".to_string(), 2.0),
        ];
        let rows = holm_posthoc(&ranks, 30, "ctl", 0.05).unwrap();
        for w in rows.windows(2) {
            assert!(w[1].p_holm >= w[0].p_holm);
        }
        for row in &rows {
            assert!(row.p_holm >= row.p_raw);
        }
    }

    #[test]
    fn csv_round_trip_and_schema_errors() {
        let text = "function,dim,S-LCG,GA\nF1,2,0.5,0.7\nF1,30,1.5,1.9\n";
        let t = ResultTable::from_csv_str(text).unwrap();
        assert_eq!(t.n_rows(), 2);
        assert_eq!(t.algorithms, vec!["S-LCG", "GA"]);
        assert_eq!(t.values[1][1], 1.9);

        assert!(ResultTable::from_csv_str("bad,header\n1,2\n").is_err());
        assert!(ResultTable::from_csv_str("function,dim,A,B\nF1,2,x,1\n").is_err());
    }
}
