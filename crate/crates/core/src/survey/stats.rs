//! Rank-based tests for ordinal survey scores.

use serde::{Deserialize, Serialize};
use statrs::distribution::{ChiSquared, ContinuousCDF};
use statrs::function::erf::erfc;

use super::SurveyError;

/// Largest number of non-zero differences for which `Auto` enumerates the
/// exact null distribution.
pub const AUTO_EXACT_MAX: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WilcoxonMode {
    Exact,
    NormalApprox,
    #[default]
    Auto,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TestMethod {
    WilcoxonExact,
    WilcoxonNormalApprox,
    FriedmanChiSquare,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TestResult {
    /// Wilcoxon: signed rank sum `W+ - W-`. Friedman: tie-corrected chi-square.
    pub statistic: f64,
    pub p_value: f64,
    pub method: TestMethod,
    /// Wilcoxon: non-zero differences. Friedman: subjects.
    pub n_effective: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub df: Option<f64>,
}

/// Average ranks (1-based) of `values`; tied values share the mean of the
/// ranks they span. Also returns the tie group sizes.
pub fn average_ranks(values: &[f64]) -> (Vec<f64>, Vec<usize>) {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; values.len()];
    let mut ties = Vec::new();
    let mut i = 0;
    while i < order.len() {
        let mut j = i + 1;
        while j < order.len() && values[order[j]] == values[order[i]] {
            j += 1;
        }
        // positions i..j hold ranks i+1..=j
        let avg = (i + 1 + j) as f64 / 2.0;
        for &k in &order[i..j] {
            ranks[k] = avg;
        }
        if j - i > 1 {
            ties.push(j - i);
        }
        i = j;
    }
    (ranks, ties)
}

/// Two-sided Wilcoxon signed-rank test of paired samples.
///
/// Zero differences are dropped before ranking. Exact mode computes the
/// null distribution of `W+` over all `2^m` sign assignments (tied ranks
/// included); it is exact for `m <= 53`.
pub fn wilcoxon_signed_rank(x: &[f64], y: &[f64], mode: WilcoxonMode) -> Result<TestResult, SurveyError> {
    if x.len() != y.len() {
        return Err(SurveyError::LengthMismatch(x.len(), y.len()));
    }
    if x.iter().chain(y).any(|v| !v.is_finite()) {
        return Err(SurveyError::NonFinite);
    }
    let diffs: Vec<f64> = x
        .iter()
        .zip(y)
        .map(|(a, b)| a - b)
        .filter(|d| *d != 0.0)
        .collect();
    let m = diffs.len();
    if m == 0 {
        return Err(SurveyError::InsufficientData(
            "all paired differences are zero".into(),
        ));
    }
    let abs: Vec<f64> = diffs.iter().map(|d| d.abs()).collect();
    let (ranks, ties) = average_ranks(&abs);
    let w_plus: f64 = diffs
        .iter()
        .zip(&ranks)
        .filter(|(d, _)| **d > 0.0)
        .map(|(_, r)| r)
        .sum();
    let total = (m * (m + 1)) as f64 / 2.0;
    let statistic = 2.0 * w_plus - total;

    let exact = match mode {
        WilcoxonMode::Exact => true,
        WilcoxonMode::NormalApprox => false,
        WilcoxonMode::Auto => m <= AUTO_EXACT_MAX,
    };
    if exact {
        let p_value = exact_p_value(&ranks, w_plus);
        Ok(TestResult {
            statistic,
            p_value,
            method: TestMethod::WilcoxonExact,
            n_effective: m,
            z: None,
            df: None,
        })
    } else {
        let mf = m as f64;
        let tie_term: f64 = ties.iter().map(|&t| (t * t * t - t) as f64).sum::<f64>() / 48.0;
        let var = mf * (mf + 1.0) * (2.0 * mf + 1.0) / 24.0 - tie_term;
        let dev = w_plus - mf * (mf + 1.0) / 4.0;
        let z = if var > 0.0 {
            dev.signum() * (dev.abs() - 0.5).max(0.0) / var.sqrt()
        } else {
            0.0
        };
        let p_value = erfc(z.abs() / std::f64::consts::SQRT_2).clamp(0.0, 1.0);
        Ok(TestResult {
            statistic,
            p_value,
            method: TestMethod::WilcoxonNormalApprox,
            n_effective: m,
            z: Some(z),
            df: None,
        })
    }
}

fn exact_p_value(ranks: &[f64], w_plus: f64) -> f64 {
    // average ranks are multiples of 1/2, so doubled ranks are integers
    let doubled: Vec<usize> = ranks.iter().map(|r| (r * 2.0).round() as usize).collect();
    let max_sum: usize = doubled.iter().sum();
    let mut counts = vec![0.0f64; max_sum + 1];
    counts[0] = 1.0;
    let mut reach = 0;
    for &r in &doubled {
        for s in (0..=reach).rev() {
            if counts[s] != 0.0 {
                counts[s + r] += counts[s];
            }
        }
        reach += r;
    }
    let observed = (w_plus * 2.0).round() as usize;
    let lower: f64 = counts[..=observed].iter().sum();
    let upper: f64 = counts[observed..].iter().sum();
    let total = 2f64.powi(ranks.len() as i32);
    (2.0 * lower.min(upper) / total).min(1.0)
}

/// Friedman test over `matrix` (subjects × conditions) with tie-corrected
/// chi-square and `k - 1` degrees of freedom.
///
/// Rows in which every score is tied carry no rank information; if all
/// rows are fully tied the statistic is 0 with p = 1.
pub fn friedman(matrix: &[Vec<f64>]) -> Result<TestResult, SurveyError> {
    let n = matrix.len();
    let k = matrix.first().map_or(0, Vec::len);
    if n < 2 || k < 2 || matrix.iter().any(|row| row.len() != k) {
        return Err(SurveyError::DegenerateShape { rows: n, cols: k });
    }
    if matrix.iter().flatten().any(|v| !v.is_finite()) {
        return Err(SurveyError::NonFinite);
    }
    let mut rank_sums = vec![0.0; k];
    let mut tie_sum = 0.0;
    for row in matrix {
        let (ranks, ties) = average_ranks(row);
        for (acc, r) in rank_sums.iter_mut().zip(&ranks) {
            *acc += r;
        }
        tie_sum += ties.iter().map(|&t| (t * t * t - t) as f64).sum::<f64>();
    }
    let (nf, kf) = (n as f64, k as f64);
    let df = kf - 1.0;
    let correction = 1.0 - tie_sum / (nf * (kf * kf * kf - kf));
    let (statistic, p_value) = if correction <= f64::EPSILON {
        (0.0, 1.0)
    } else {
        let ss: f64 = rank_sums.iter().map(|r| r * r).sum();
        let raw = 12.0 / (nf * kf * (kf + 1.0)) * ss - 3.0 * nf * (kf + 1.0);
        let stat = (raw / correction).max(0.0);
        let dist = ChiSquared::new(df).expect("df >= 1");
        (stat, dist.sf(stat).clamp(0.0, 1.0))
    };
    Ok(TestResult {
        statistic,
        p_value,
        method: TestMethod::FriedmanChiSquare,
        n_effective: n,
        z: None,
        df: Some(df),
    })
}
