//! Normality testing, sample moments, and Q-Q export.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::special::{normal_cdf, normal_quantile};

/// Moment and goodness-of-fit summary of one sample. The KS fields are
/// NaN until a test is attached (see `summarize_with_ks`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SampleSummary {
    pub n: usize,
    pub mean: f64,
    pub variance: f64,
    pub skewness: f64,
    pub excess_kurtosis: f64,
    pub ks_d: f64,
    pub ks_p: f64,
}

/// One-sample Kolmogorov-Smirnov outcome.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KsResult {
    pub d: f64,
    pub p_value: f64,
    /// True when mu/sigma were estimated from the same sample; the
    /// asymptotic p-value is then only indicative and thresholds should
    /// stay conservative (1%).
    pub approximate: bool,
}

/// Survival function of the Kolmogorov distribution,
/// Q(lambda) = 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 lambda^2).
pub fn kolmogorov_sf(lambda: f64) -> f64 {
    if lambda <= 0.0 {
        return 1.0;
    }
    if lambda < 0.2 {
        return 1.0;
    }
    let mut sum = 0.0;
    let mut sign = 1.0;
    for k in 1..=100 {
        let kf = k as f64;
        let term = (-2.0 * kf * kf * lambda * lambda).exp();
        sum += sign * term;
        sign = -sign;
        if term < 1e-16 {
            break;
        }
    }
    (2.0 * sum).clamp(0.0, 1.0)
}

/// One-sample KS test against N(mu, sigma^2) with the asymptotic
/// p-value Q(sqrt(n) D).
pub fn ks_test_normal(sample: &[f64], mu: f64, sigma: f64) -> Result<KsResult> {
    if sample.len() < 8 {
        return Err(Error::DegenerateSample(format!(
            "KS test needs at least 8 points, got {}",
            sample.len()
        )));
    }
    if !(sigma > 0.0) {
        return Err(Error::DegenerateSample(format!("sigma must be positive, got {sigma}")));
    }
    let mut sorted: Vec<f64> = sample.to_vec();
    if sorted.iter().any(|v| !v.is_finite()) {
        return Err(Error::DegenerateSample("sample contains non-finite values".into()));
    }
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = sorted.len() as f64;
    let mut d: f64 = 0.0;
    for (i, &x) in sorted.iter().enumerate() {
        let f = normal_cdf((x - mu) / sigma);
        d = d.max((f - i as f64 / n).abs()).max(((i + 1) as f64 / n - f).abs());
    }
    Ok(KsResult {
        d,
        p_value: kolmogorov_sf(n.sqrt() * d),
        approximate: false,
    })
}

/// KS test with mu/sigma fitted from the sample (Lilliefors situation);
/// the result carries the `approximate` flag.
pub fn ks_test_normal_fitted(sample: &[f64]) -> Result<KsResult> {
    let m = moments(sample)?;
    let mut out = ks_test_normal(sample, m.mean, m.variance.sqrt())?;
    out.approximate = true;
    Ok(out)
}

/// Ordered Q-Q pairs (normal_quantile((i - 0.5)/n), sorted sample_i).
pub fn qq_points(sample: &[f64]) -> Result<Vec<(f64, f64)>> {
    if sample.len() < 2 {
        return Err(Error::DegenerateSample(format!(
            "Q-Q needs at least 2 points, got {}",
            sample.len()
        )));
    }
    let mut sorted: Vec<f64> = sample.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = sorted.len() as f64;
    sorted
        .into_iter()
        .enumerate()
        .map(|(i, x)| Ok((normal_quantile((i as f64 + 0.5) / n)?, x)))
        .collect()
}

/// Coefficient of determination of the least-squares line through the
/// Q-Q points; close to 1 for normal samples.
pub fn qq_r_squared(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    for (x, y) in points {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
        syy += (y - my) * (y - my);
    }
    if sxx == 0.0 || syy == 0.0 {
        return 0.0;
    }
    (sxy * sxy) / (sxx * syy)
}

/// Sample moments: unbiased variance, standardized skewness and excess
/// kurtosis. Pairwise summation keeps the reductions deterministic and
/// well conditioned.
pub fn moments(sample: &[f64]) -> Result<SampleSummary> {
    let n = sample.len();
    if n < 2 {
        return Err(Error::DegenerateSample(format!("need at least 2 points, got {n}")));
    }
    let nf = n as f64;
    let mean = pairwise_sum(sample) / nf;
    let dev: Vec<f64> = sample.iter().map(|x| x - mean).collect();
    let m2 = pairwise_sum(&dev.iter().map(|d| d * d).collect::<Vec<_>>()) / nf;
    if m2 == 0.0 {
        return Err(Error::DegenerateSample(
            "constant sample has no standardized moments".into(),
        ));
    }
    let m3 = pairwise_sum(&dev.iter().map(|d| d * d * d).collect::<Vec<_>>()) / nf;
    let m4 = pairwise_sum(&dev.iter().map(|d| d * d * d * d).collect::<Vec<_>>()) / nf;
    Ok(SampleSummary {
        n,
        mean,
        variance: m2 * nf / (nf - 1.0),
        skewness: m3 / m2.powf(1.5),
        excess_kurtosis: m4 / (m2 * m2) - 3.0,
        ks_d: f64::NAN,
        ks_p: f64::NAN,
    })
}

/// Moments plus a KS test: against N(0,1) when `standard_normal_null`,
/// otherwise against the fitted normal (flagged approximate).
pub fn summarize_with_ks(sample: &[f64], standard_normal_null: bool) -> Result<(SampleSummary, KsResult)> {
    let mut summary = moments(sample)?;
    let ks = if standard_normal_null {
        ks_test_normal(sample, 0.0, 1.0)?
    } else {
        ks_test_normal_fitted(sample)?
    };
    summary.ks_d = ks.d;
    summary.ks_p = ks.p_value;
    Ok((summary, ks))
}

/// Deterministic pairwise (tree) summation.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    match values.len() {
        0 => 0.0,
        1 => values[0],
        2 => values[0] + values[1],
        n => {
            let mid = n / 2;
            pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
        }
    }
}
