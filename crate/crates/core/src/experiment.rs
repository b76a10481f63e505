//! Declarative Monte Carlo harness: simulation -> transform -> sojourn
//! measurement -> theorem normalization, with deterministic replication
//! seeding and order-invariant aggregation.

use std::io::Write;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::covariance::{CovarianceModel, Dependence};
use crate::derived::{derive_field, FieldKind};
use crate::error::{Error, Result};
use crate::excursion::{
    normalize_fisher_lrd, normalize_short_range, validate_moving_level, LevelSchedule,
    MovingLevelCheck, NormalizedStatistic, StudentLrdNormalizer, TheoremTag,
};
use crate::geometry::{Window, WindowKind};
use crate::grid::GridSpec;
use crate::simulate::{child_seed, mix, CirculantEmbedding, EmbeddingOptions, MixingMatrix};
use crate::stats::{pairwise_sum, qq_points, qq_r_squared, summarize_with_ks};

/// Experiments run on 2-D grids (growing-domain design: fixed spacing,
/// window radius grows with r).
pub const EXPERIMENT_DIM: u32 = 2;

fn default_radii() -> Vec<f64> {
    vec![32.0, 64.0, 128.0, 256.0]
}
fn default_replications() -> usize {
    1000
}
fn default_spacing() -> f64 {
    0.25
}
fn default_window() -> WindowKind {
    WindowKind::Disk
}
fn default_level() -> LevelSchedule {
    LevelSchedule::Constant { a: 1.0 }
}
fn default_seed() -> u64 {
    1
}

/// Declarative description of one Monte Carlo run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub covariance: CovarianceModel,
    pub field: FieldKind,
    pub theorem_tag: TheoremTag,
    #[serde(default)]
    pub mixing: Option<Vec<Vec<f64>>>,
    #[serde(default = "default_window")]
    pub window: WindowKind,
    #[serde(default = "default_radii")]
    pub radii: Vec<f64>,
    #[serde(default = "default_level")]
    pub level: LevelSchedule,
    #[serde(default = "default_replications")]
    pub replications: usize,
    #[serde(default = "default_spacing")]
    pub spacing: f64,
    #[serde(default = "default_seed")]
    pub master_seed: u64,
}

impl ExperimentConfig {
    /// Collects every violated invariant (not just the first).
    pub fn validation_errors(&self) -> Vec<String> {
        let mut errs = Vec::new();
        if self.replications < 1 {
            errs.push("replications must be >= 1".into());
        }
        if !(self.spacing > 0.0) {
            errs.push(format!("spacing must be positive, got {}", self.spacing));
        }
        if self.radii.is_empty() {
            errs.push("radii must be non-empty".into());
        }
        if self.radii.iter().any(|r| !(*r > 0.0)) {
            errs.push("radii must be positive".into());
        }
        if self.radii.windows(2).any(|w| w[0] >= w[1]) {
            errs.push("radii must be strictly ascending".into());
        }
        if let Err(e) = self.covariance.validate() {
            errs.push(e.to_string());
        }
        if let Err(e) = self.field.validate() {
            errs.push(e.to_string());
        }
        if let Err(e) = self.level.validate() {
            errs.push(e.to_string());
        }

        let d = EXPERIMENT_DIM;
        let alpha = self.covariance.long_range_exponent();
        let kappa = self.field.hermite_rank();
        let dependence = self.covariance.classify_dependence(d, kappa);
        let tag = self.theorem_tag;

        match tag {
            TheoremTag::Th3 => {
                if !matches!(self.field, FieldKind::Fisher { .. }) {
                    errs.push("Th3 concerns Fisher-Snedecor fields".into());
                }
                if dependence != Dependence::ShortRange {
                    errs.push("Th3 requires a short-range model (sigma*theta*kappa > d)".into());
                }
            }
            TheoremTag::ThS => {
                if !matches!(self.field, FieldKind::Student { .. }) {
                    errs.push("ThS concerns Student fields".into());
                }
                if dependence != Dependence::ShortRange {
                    errs.push("ThS requires a short-range model (sigma*theta*kappa > d)".into());
                }
            }
            TheoremTag::Th6 | TheoremTag::Th8 | TheoremTag::Th10 => {
                if !matches!(self.field, FieldKind::Student { .. }) {
                    errs.push(format!("{} concerns Student fields", tag.as_str()));
                }
                match alpha {
                    Some(a) if a > 0.0 && a < d as f64 => {}
                    _ => errs.push(format!(
                        "{} requires long-range alpha in (0, {d})",
                        tag.as_str()
                    )),
                }
            }
            TheoremTag::Th7 | TheoremTag::Th9 | TheoremTag::Th11 => {
                if !matches!(self.field, FieldKind::Fisher { .. }) {
                    errs.push(format!("{} concerns Fisher-Snedecor fields", tag.as_str()));
                }
                match alpha {
                    Some(a) if a > 0.0 && 2.0 * a < d as f64 => {}
                    _ => errs.push(format!(
                        "{} requires long-range alpha in (0, {}/2)",
                        tag.as_str(),
                        d
                    )),
                }
            }
        }

        // Moving levels are only admitted by the moving-level theorems.
        let moving = matches!(self.level, LevelSchedule::PowerLaw { .. });
        match tag {
            TheoremTag::Th8 | TheoremTag::Th9 => {
                if let Some(a) = alpha {
                    if validate_moving_level(&self.level, self.field, a, d)
                        == MovingLevelCheck::Violates
                    {
                        errs.push(format!(
                            "level schedule grows too fast for {}",
                            tag.as_str()
                        ));
                    }
                }
            }
            _ => {
                if moving {
                    errs.push(format!(
                        "{} is a constant-level theorem; use Th8/Th9 for moving levels",
                        tag.as_str()
                    ));
                }
            }
        }

        // Mixing: required by Th10/Th11, validated whenever present.
        let p = self.field.components();
        match &self.mixing {
            None => {
                if matches!(tag, TheoremTag::Th10 | TheoremTag::Th11) {
                    errs.push(format!("{} requires a mixing matrix", tag.as_str()));
                }
            }
            Some(rows) => match MixingMatrix::new(rows.clone()) {
                Err(e) => errs.push(format!("mixing: {e}")),
                Ok(m) => {
                    if m.p() != p {
                        errs.push(format!(
                            "mixing matrix is {}x{} but the field needs p = {p}",
                            m.p(),
                            m.p()
                        ));
                    } else if tag == TheoremTag::Th11 {
                        if let FieldKind::Fisher { m: fm, .. } = self.field {
                            let fm = fm as usize;
                            let off_block = (0..p).any(|i| {
                                (0..p).any(|j| {
                                    ((i < fm) != (j < fm)) && m.entry(i, j) != 0.0
                                })
                            });
                            if off_block {
                                errs.push(
                                    "Th11 requires block-diagonal mixing (blocks of sizes m and n)"
                                        .into(),
                                );
                            }
                        }
                    }
                }
            },
        }

        errs
    }

    pub fn validate(&self) -> Result<()> {
        let errs = self.validation_errors();
        if errs.is_empty() {
            Ok(())
        } else {
            Err(Error::Config(errs))
        }
    }

    /// Grid sized so the largest window fits (one grid per replication;
    /// all radii are measured on nested windows of the same realization).
    pub fn grid(&self) -> Result<GridSpec> {
        let r_max = *self.radii.last().ok_or_else(|| Error::Config(vec![
            "radii must be non-empty".into(),
        ]))?;
        let extent = match self.window {
            WindowKind::Disk => 2.0 * r_max,
            WindowKind::Square => r_max,
        };
        let n = (extent / self.spacing).ceil() as usize;
        GridSpec::centered_square(n.max(2), self.spacing)
    }

    fn mixing_matrix(&self) -> Result<Option<MixingMatrix>> {
        self.mixing
            .as_ref()
            .map(|rows| MixingMatrix::new(rows.clone()))
            .transpose()
    }
}

/// One normalized-statistic record.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StatisticRecord {
    pub r: f64,
    pub replication: usize,
    pub area: f64,
    pub statistic: f64,
}

/// Per-radius aggregation of the replication statistics.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RadiusSummary {
    pub r: f64,
    pub count: usize,
    pub mean: f64,
    pub variance: f64,
    pub skewness: f64,
    pub excess_kurtosis: f64,
    pub ks_d: f64,
    pub ks_p: f64,
    /// True when the KS null parameters were fitted from the sample.
    pub ks_approximate: bool,
    pub qq_r_squared: f64,
}

#[derive(Debug, Clone)]
pub struct ExperimentResult {
    pub config: ExperimentConfig,
    pub records: Vec<StatisticRecord>,
    pub summaries: Vec<RadiusSummary>,
    /// (replication, error message) for aborted replications.
    pub failures: Vec<(usize, String)>,
    /// Not-a-value cells excluded from areas, summed over the run.
    pub excluded_cells: usize,
    /// Q-Q points (theoretical, sample) per radius, same order as radii.
    pub qq: Vec<Vec<(f64, f64)>>,
}

enum Normalizer {
    ShortRange { tag: TheoremTag },
    StudentLrd(Box<StudentLrdNormalizer>, TheoremTag),
    FisherLrd { m: u32, n: u32, tag: TheoremTag },
}

impl Normalizer {
    fn build(cfg: &ExperimentConfig, window: &Window) -> Result<Self> {
        let tag = cfg.theorem_tag;
        match tag {
            TheoremTag::Th3 | TheoremTag::ThS => Ok(Normalizer::ShortRange { tag }),
            TheoremTag::Th6 | TheoremTag::Th8 | TheoremTag::Th10 => {
                let n = match cfg.field {
                    FieldKind::Student { n } => n,
                    _ => unreachable!("validated"),
                };
                Ok(Normalizer::StudentLrd(
                    Box::new(StudentLrdNormalizer::new(
                        EXPERIMENT_DIM,
                        cfg.covariance,
                        n,
                        window,
                    )?),
                    tag,
                ))
            }
            TheoremTag::Th7 | TheoremTag::Th9 | TheoremTag::Th11 => {
                let (m, n) = match cfg.field {
                    FieldKind::Fisher { m, n } => (m, n),
                    _ => unreachable!("validated"),
                };
                Ok(Normalizer::FisherLrd { m, n, tag })
            }
        }
    }

    fn normalize(
        &self,
        cfg: &ExperimentConfig,
        window: &Window,
        area: f64,
        r: f64,
        level: f64,
    ) -> Result<NormalizedStatistic> {
        match self {
            Normalizer::ShortRange { tag } => {
                let tail = cfg.field.tail_probability(level)?;
                Ok(normalize_short_range(
                    area,
                    r,
                    EXPERIMENT_DIM,
                    window,
                    tail,
                    *tag,
                    level,
                ))
            }
            Normalizer::StudentLrd(norm, tag) => Ok(norm.normalize(area, r, level, *tag)),
            Normalizer::FisherLrd { m, n, tag } => normalize_fisher_lrd(
                area,
                r,
                EXPERIMENT_DIM,
                &cfg.covariance,
                level,
                *m,
                *n,
                window,
                *tag,
            ),
        }
    }
}

struct RepOutcome {
    stats: Vec<NormalizedStatistic>,
    excluded: usize,
}

/// Runs the full pipeline for every replication. Deterministic for a
/// fixed config: replication i always consumes the stream
/// `child_seed(master_seed, i)`, regardless of worker count or schedule.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentResult> {
    cfg.validate()?;
    let grid = cfg.grid()?;
    let mixing = cfg.mixing_matrix()?;
    let p = cfg.field.components();
    let embedding = Arc::new(CirculantEmbedding::new(
        cfg.covariance,
        grid,
        EmbeddingOptions::default(),
    )?);
    let windows: Vec<Window> = cfg
        .radii
        .iter()
        .map(|&r| Window::new(cfg.window, r))
        .collect::<Result<_>>()?;
    for w in &windows {
        if !crate::excursion::grid_covers_window(&grid, w) {
            return Err(Error::Dimension(format!(
                "window r = {} does not fit the grid",
                w.r
            )));
        }
    }
    let normalizer = Normalizer::build(cfg, &windows[0])?;

    let outcomes: Vec<std::result::Result<RepOutcome, String>> = (0..cfg.replications)
        .into_par_iter()
        .map(|rep| {
            let rep_seed = child_seed(cfg.master_seed, rep as u64);
            let run = || -> Result<RepOutcome> {
                let mut v = embedding.sample_vector(rep_seed, p);
                if let Some(m) = &mixing {
                    v = mix(&v, m)?;
                }
                let field = derive_field(&v, cfg.field)?;
                let mut stats = Vec::with_capacity(windows.len());
                let mut excluded = 0usize;
                for (w, &r) in windows.iter().zip(&cfg.radii) {
                    let level = cfg.level.level_at(r);
                    let measure = crate::excursion::excursion_measure(&field, w, level)?;
                    excluded += measure.excluded_nan;
                    stats.push(normalizer.normalize(cfg, w, measure.area, r, level)?);
                }
                Ok(RepOutcome { stats, excluded })
            };
            run().map_err(|e| e.to_string())
        })
        .collect();

    let mut records = Vec::with_capacity(cfg.radii.len() * cfg.replications);
    let mut failures = Vec::new();
    let mut excluded_cells = 0usize;
    let mut per_radius: Vec<Vec<f64>> = vec![Vec::new(); cfg.radii.len()];
    for (rep, outcome) in outcomes.into_iter().enumerate() {
        match outcome {
            Err(msg) => failures.push((rep, msg)),
            Ok(out) => {
                excluded_cells += out.excluded;
                for (idx, s) in out.stats.iter().enumerate() {
                    per_radius[idx].push(s.statistic);
                    records.push(StatisticRecord {
                        r: s.r,
                        replication: rep,
                        area: s.raw_area,
                        statistic: s.statistic,
                    });
                }
            }
        }
    }
    if !failures.is_empty() {
        log::warn!(
            "{} of {} replications failed ({:.1}%)",
            failures.len(),
            cfg.replications,
            100.0 * failures.len() as f64 / cfg.replications as f64
        );
    }
    // records.csv is ordered by (r, replication).
    records.sort_by(|a, b| {
        a.r.partial_cmp(&b.r)
            .unwrap()
            .then(a.replication.cmp(&b.replication))
    });

    let standard_null = cfg.theorem_tag.limit_is_standard_normal();
    let mut summaries = Vec::new();
    let mut qq = Vec::new();
    for (idx, sample) in per_radius.iter().enumerate() {
        let (summary, ks) = summarize_with_ks(sample, standard_null)?;
        let points = qq_points(sample)?;
        let r2 = qq_r_squared(&points);
        summaries.push(RadiusSummary {
            r: cfg.radii[idx],
            count: sample.len(),
            mean: summary.mean,
            variance: summary.variance,
            skewness: summary.skewness,
            excess_kurtosis: summary.excess_kurtosis,
            ks_d: ks.d,
            ks_p: ks.p_value,
            ks_approximate: ks.approximate,
            qq_r_squared: r2,
        });
        qq.push(points);
    }

    Ok(ExperimentResult {
        config: cfg.clone(),
        records,
        summaries,
        failures,
        excluded_cells,
        qq,
    })
}

impl ExperimentResult {
    /// records.csv: `r,rep,area,statistic`.
    pub fn write_records_csv<W: Write>(&self, w: &mut W) -> Result<()> {
        writeln!(w, "r,rep,area,statistic")?;
        for rec in &self.records {
            writeln!(
                w,
                "{},{},{},{}",
                rec.r, rec.replication, rec.area, rec.statistic
            )?;
        }
        Ok(())
    }

    /// summary.csv: one row per radius.
    pub fn write_summary_csv<W: Write>(&self, w: &mut W) -> Result<()> {
        writeln!(
            w,
            "r,count,mean,variance,skewness,excess_kurtosis,ks_d,ks_p,ks_approximate,qq_r_squared"
        )?;
        for s in &self.summaries {
            writeln!(
                w,
                "{},{},{},{},{},{},{},{},{},{}",
                s.r,
                s.count,
                s.mean,
                s.variance,
                s.skewness,
                s.excess_kurtosis,
                s.ks_d,
                s.ks_p,
                s.ks_approximate,
                s.qq_r_squared
            )?;
        }
        Ok(())
    }

    /// qq.csv: `theoretical_quantile,sample_quantile` for the largest
    /// radius (the closest to the asymptotic regime).
    pub fn write_qq_csv<W: Write>(&self, w: &mut W) -> Result<()> {
        writeln!(w, "theoretical_quantile,sample_quantile")?;
        if let Some(points) = self.qq.last() {
            for (t, s) in points {
                writeln!(w, "{t},{s}")?;
            }
        }
        Ok(())
    }

    pub fn summary_for(&self, r: f64) -> Option<&RadiusSummary> {
        self.summaries.iter().find(|s| s.r == r)
    }
}

/// Estimate of `sigma^2 = int Cov(zeta(0), zeta(x)) dx` for the centered
/// exceedance indicator of a short-range configuration: the indicator
/// covariance is measured on a radial lag grid from replicated probe
/// fields and integrated with the d = 2 isotropy factor `2 pi rho`,
/// truncated at the lag where the signal drops below the noise floor.
pub fn estimate_sigma_short_range(
    cfg: &ExperimentConfig,
    n_pairs: usize,
    seed: u64,
) -> Result<(f64, f64)> {
    let kappa = cfg.field.hermite_rank();
    if cfg.covariance.classify_dependence(EXPERIMENT_DIM, kappa) != Dependence::ShortRange {
        return Err(Error::Domain(
            "sigma^2 diverges for long-range dependence; refusing to integrate".into(),
        ));
    }
    if n_pairs < 20 {
        return Err(Error::Domain("need at least 20 probe replications".into()));
    }
    let level = match cfg.level {
        LevelSchedule::Constant { a } => a,
        LevelSchedule::PowerLaw { .. } => {
            return Err(Error::Domain(
                "sigma^2 estimation expects a constant level".into(),
            ))
        }
    };
    let tail = cfg.field.tail_probability(level)?;
    let p = cfg.field.components();

    // Probe grid: 8 length units of lag reach, enough for the
    // exp(-2 rho^2)-type decay of short-range indicator covariances.
    let probe_n = ((16.0 / cfg.spacing).ceil() as usize).clamp(32, 256);
    let grid = GridSpec::centered_square(probe_n, cfg.spacing)?;
    let embedding = Arc::new(CirculantEmbedding::new(
        cfg.covariance,
        grid,
        EmbeddingOptions::default(),
    )?);
    let max_lag = probe_n / 2;

    // Per-replication axis-averaged indicator covariance at integer lags.
    let curves: Vec<Vec<f64>> = (0..n_pairs)
        .into_par_iter()
        .map(|rep| {
            let v = embedding.sample_vector(child_seed(seed, rep as u64), p);
            let field = derive_field(&v, cfg.field).expect("component count fixed");
            let zeta: Vec<f64> = field
                .values
                .iter()
                .map(|&x| if x > level { 1.0 - tail } else { -tail })
                .collect();
            let n = probe_n;
            let mut curve = vec![0.0f64; max_lag + 1];
            for (k, c) in curve.iter_mut().enumerate() {
                let mut acc = 0.0;
                let mut count = 0usize;
                for i in 0..n {
                    for j in 0..n - k {
                        // lag along the second axis
                        acc += zeta[i * n + j] * zeta[i * n + j + k];
                        // lag along the first axis (transposed indexing)
                        acc += zeta[j * n + i] * zeta[(j + k) * n + i];
                        count += 2;
                    }
                }
                *c = acc / count as f64;
            }
            curve
        })
        .collect();

    let mean_curve: Vec<f64> = (0..=max_lag)
        .map(|k| curves.iter().map(|c| c[k]).sum::<f64>() / n_pairs as f64)
        .collect();
    let se_curve: Vec<f64> = (0..=max_lag)
        .map(|k| {
            let m = mean_curve[k];
            let var = curves.iter().map(|c| (c[k] - m).powi(2)).sum::<f64>()
                / (n_pairs as f64 - 1.0);
            (var / n_pairs as f64).sqrt()
        })
        .collect();

    // Truncate where the covariance sinks below the noise floor.
    let mut cut = max_lag;
    for k in 1..=max_lag {
        if mean_curve[k].abs() < 2.0 * se_curve[k] {
            cut = k;
            break;
        }
    }

    let integral = |curve: &[f64]| -> f64 {
        // 2 pi int rho C(rho) drho by the trapezoid rule on the lag grid.
        let s = cfg.spacing;
        let mut acc = 0.0;
        for k in 0..cut {
            let rho0 = k as f64 * s;
            let rho1 = (k + 1) as f64 * s;
            acc += 0.5 * (rho0 * curve[k] + rho1 * curve[k + 1]) * s;
        }
        2.0 * std::f64::consts::PI * acc
    };

    let estimate = integral(&mean_curve);

    // Block decomposition for the standard error.
    let n_blocks = 10.min(n_pairs);
    let block_size = n_pairs / n_blocks;
    let mut block_estimates = Vec::with_capacity(n_blocks);
    for b in 0..n_blocks {
        let lo = b * block_size;
        let hi = if b + 1 == n_blocks { n_pairs } else { lo + block_size };
        let mut block_curve = vec![0.0f64; max_lag + 1];
        for c in &curves[lo..hi] {
            for (acc, v) in block_curve.iter_mut().zip(c) {
                *acc += v;
            }
        }
        for v in block_curve.iter_mut() {
            *v /= (hi - lo) as f64;
        }
        block_estimates.push(integral(&block_curve));
    }
    let bm = pairwise_sum(&block_estimates) / n_blocks as f64;
    let bvar = block_estimates.iter().map(|x| (x - bm).powi(2)).sum::<f64>()
        / (n_blocks as f64 - 1.0);
    let se = (bvar / n_blocks as f64).sqrt();

    Ok((estimate, se))
}

/// Row of the variance-scaling table.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ScalingRow {
    pub r: f64,
    pub variance: f64,
    pub count: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScalingTable {
    pub rows: Vec<ScalingRow>,
    /// Log-log regression slope of Var(M_r - E M_r) against r.
    pub slope: f64,
    pub slope_se: f64,
    /// d for short-range models, 2d - kappa*alpha for long-range ones.
    pub predicted_slope: Option<f64>,
}

/// Runs one independent experiment per radius (fresh seeds, so the
/// cross-radius variances are independent) and regresses log variance of
/// the raw area on log r.
pub fn variance_scaling_probe(cfg: &ExperimentConfig) -> Result<ScalingTable> {
    if cfg.radii.len() < 3 {
        return Err(Error::Domain(
            "variance scaling needs at least 3 radii".into(),
        ));
    }
    cfg.validate()?;
    let mut rows = Vec::with_capacity(cfg.radii.len());
    for (idx, &r) in cfg.radii.iter().enumerate() {
        let mut sub = cfg.clone();
        sub.radii = vec![r];
        sub.master_seed = child_seed(cfg.master_seed, 0x5CA1E + idx as u64);
        let result = run_experiment(&sub)?;
        let areas: Vec<f64> = result.records.iter().map(|rec| rec.area).collect();
        let m = crate::stats::moments(&areas)?;
        rows.push(ScalingRow {
            r,
            variance: m.variance,
            count: areas.len(),
        });
    }

    let xs: Vec<f64> = rows.iter().map(|row| row.r.ln()).collect();
    let ys: Vec<f64> = rows.iter().map(|row| row.variance.ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    // Sampling error of each log-variance is ~ sqrt(2/(count-1)).
    let slope_se = {
        let var_sum: f64 = rows
            .iter()
            .zip(&xs)
            .map(|(row, x)| {
                let sigma2 = 2.0 / (row.count as f64 - 1.0);
                ((x - mx) / sxx).powi(2) * sigma2
            })
            .sum();
        var_sum.sqrt()
    };

    let kappa = cfg.field.hermite_rank();
    let d = EXPERIMENT_DIM as f64;
    let predicted_slope = match cfg.covariance.classify_dependence(EXPERIMENT_DIM, kappa) {
        Dependence::ShortRange => Some(d),
        Dependence::LongRange => cfg
            .covariance
            .long_range_exponent()
            .map(|alpha| 2.0 * d - kappa as f64 * alpha),
        Dependence::Boundary => None,
    };

    Ok(ScalingTable {
        rows,
        slope,
        slope_se,
        predicted_slope,
    })
}
