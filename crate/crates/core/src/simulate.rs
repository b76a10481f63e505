//! Exact Gaussian field synthesis by circulant embedding.
//!
//! The target covariance is wrapped onto an enlarged torus, its spectrum
//! is taken with an FFT, tiny negative eigenvalues are clipped, and a
//! field is synthesized by transforming complex Gaussian spectral weights.
//! The real part of the transform restricted to the requested grid is an
//! exact sample of the (clipped) covariance. Negative mass beyond the
//! clip tolerance doubles the padding, up to a hard limit.

use std::sync::Arc;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rustfft::{Fft, FftPlanner};

use crate::covariance::CovarianceModel;
use crate::error::{Error, Result};
use crate::grid::{FieldSample, GridSpec, VectorFieldSample};

/// Derives a decorrelated child seed from a master seed and a stream
/// index. SplitMix-style 64-bit avalanche; the same (seed, index) pair
/// always yields the same stream, with no coordination between streams.
pub fn child_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(0x1234_5678_9ABC_DEF1);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Debug, Clone, Copy)]
pub struct EmbeddingOptions {
    /// Initial padding factor per axis (torus size = padding * grid size).
    pub padding: usize,
    /// Padding is doubled on failure up to this factor.
    pub max_padding: usize,
    /// Relative negative-eigenvalue magnitude that is clipped silently.
    pub clip_tol: f64,
}

impl Default for EmbeddingOptions {
    fn default() -> Self {
        Self {
            padding: 2,
            max_padding: 8,
            clip_tol: 1e-6,
        }
    }
}

/// Prepared spectral factorization for one (model, grid) pair. Building
/// it costs one covariance fill and one FFT; every `sample` afterwards is
/// one noise fill and one FFT. Safe to share across threads.
pub struct CirculantEmbedding {
    grid: GridSpec,
    model: CovarianceModel,
    torus: [usize; 2],
    /// sqrt(max(eigenvalue, 0) / N), flattened row-major on the torus.
    scale: Vec<f64>,
    fft_rows: Arc<dyn Fft<f64>>,
    fft_cols: Arc<dyn Fft<f64>>,
    /// Relative negative eigenvalue mass that was clipped.
    pub clipped_mass: f64,
    /// Padding factor that succeeded.
    pub padding: usize,
}

// In-place FFT over the second axis of a row-major n0 x n1 buffer,
// then over the first axis (via transposes).
fn fft2_inplace(
    buf: &mut [Complex64],
    n0: usize,
    n1: usize,
    fft_rows: &Arc<dyn Fft<f64>>,
    fft_cols: &Arc<dyn Fft<f64>>,
) {
    debug_assert_eq!(buf.len(), n0 * n1);
    let mut scratch = vec![Complex64::default(); fft_rows.get_inplace_scratch_len()];
    if n1 > 1 {
        for row in buf.chunks_exact_mut(n1) {
            fft_rows.process_with_scratch(row, &mut scratch);
        }
    }
    if n0 > 1 {
        transpose(buf, n0, n1);
        let mut scratch = vec![Complex64::default(); fft_cols.get_inplace_scratch_len()];
        for row in buf.chunks_exact_mut(n0) {
            fft_cols.process_with_scratch(row, &mut scratch);
        }
        transpose(buf, n1, n0);
    }
}

// Transpose a row-major n0 x n1 buffer. Square buffers swap in place
// (blocked for cache locality); rectangular ones go through a copy.
fn transpose(buf: &mut [Complex64], n0: usize, n1: usize) {
    if n0 == n1 {
        const BLOCK: usize = 32;
        for bi in (0..n0).step_by(BLOCK) {
            for bj in (bi..n0).step_by(BLOCK) {
                for i in bi..(bi + BLOCK).min(n0) {
                    let j0 = if bi == bj { i + 1 } else { bj };
                    for j in j0..(bj + BLOCK).min(n0) {
                        buf.swap(i * n0 + j, j * n0 + i);
                    }
                }
            }
        }
    } else {
        let copy: Vec<Complex64> = buf.to_vec();
        for i in 0..n0 {
            for j in 0..n1 {
                buf[j * n0 + i] = copy[i * n1 + j];
            }
        }
    }
}

impl CirculantEmbedding {
    pub fn new(model: CovarianceModel, grid: GridSpec, opts: EmbeddingOptions) -> Result<Self> {
        model.validate()?;
        let mut padding = opts.padding.max(1);
        let mut last_rel_min = 0.0;
        while padding <= opts.max_padding {
            match Self::build(model, grid, padding, opts.clip_tol) {
                Ok(embed) => return Ok(embed),
                Err(Error::Embedding { rel_min, .. }) => {
                    log::info!(
                        "embedding at padding {padding}x has relative negative eigenvalue \
                         {rel_min:.3e}; doubling padding"
                    );
                    last_rel_min = rel_min;
                    padding *= 2;
                }
                Err(e) => return Err(e),
            }
        }
        Err(Error::Embedding {
            padding: padding / 2,
            rel_min: last_rel_min,
            clip_tol: opts.clip_tol,
        })
    }

    fn build(
        model: CovarianceModel,
        grid: GridSpec,
        padding: usize,
        clip_tol: f64,
    ) -> Result<Self> {
        let n0 = grid.shape[0] * padding;
        let n1 = if grid.d == 2 { grid.shape[1] * padding } else { 1 };
        let total = n0 * n1;

        // Torus covariance: distance to the nearest periodic image.
        let mut buf = vec![Complex64::default(); total];
        for i in 0..n0 {
            let di = i.min(n0 - i) as f64 * grid.spacing;
            for j in 0..n1 {
                let dj = if n1 > 1 {
                    j.min(n1 - j) as f64 * grid.spacing
                } else {
                    0.0
                };
                buf[i * n1 + j] = Complex64::new(model.evaluate(di.hypot(dj)), 0.0);
            }
        }

        let mut planner = FftPlanner::new();
        let fft_rows = planner.plan_fft_forward(n1.max(1));
        let fft_cols = planner.plan_fft_forward(n0);
        fft2_inplace(&mut buf, n0, n1, &fft_rows, &fft_cols);

        let mut max_eig = 0.0f64;
        let mut min_eig = f64::INFINITY;
        let mut pos_mass = 0.0;
        let mut neg_mass = 0.0;
        for v in &buf {
            let lam = v.re;
            max_eig = max_eig.max(lam);
            min_eig = min_eig.min(lam);
            if lam >= 0.0 {
                pos_mass += lam;
            } else {
                neg_mass -= lam;
            }
        }
        let rel_min = min_eig / max_eig;
        if rel_min < -clip_tol {
            return Err(Error::Embedding {
                padding,
                rel_min,
                clip_tol,
            });
        }
        let clipped_mass = neg_mass / pos_mass.max(f64::MIN_POSITIVE);
        if clipped_mass > 0.0 {
            log::debug!(
                "clipping relative negative eigenvalue mass {clipped_mass:.3e} \
                 (padding {padding}x)"
            );
        }

        let inv_n = 1.0 / total as f64;
        let scale = buf
            .iter()
            .map(|v| (v.re.max(0.0) * inv_n).sqrt())
            .collect();

        Ok(Self {
            grid,
            model,
            torus: [n0, n1],
            scale,
            fft_rows,
            fft_cols,
            clipped_mass,
            padding,
        })
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    /// Draws one field realization. Complex standard-normal spectral
    /// weights are scaled by the eigenvalue square roots, transformed,
    /// and the real part is restricted to the grid.
    pub fn sample(&self, seed: u64) -> FieldSample {
        let [n0, n1] = self.torus;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut buf: Vec<Complex64> = self
            .scale
            .iter()
            .map(|&s| {
                let re: f64 = StandardNormal.sample(&mut rng);
                let im: f64 = StandardNormal.sample(&mut rng);
                Complex64::new(s * re, s * im)
            })
            .collect();
        fft2_inplace(&mut buf, n0, n1, &self.fft_rows, &self.fft_cols);

        let [nx, ny] = self.grid.shape;
        let mut values = Vec::with_capacity(nx * ny);
        for i in 0..nx {
            for j in 0..ny {
                values.push(buf[i * n1 + j].re);
            }
        }
        FieldSample {
            grid: self.grid,
            values,
            model: self.model,
            seed,
        }
    }

    /// Draws p independent component fields with per-component child
    /// seed streams.
    pub fn sample_vector(&self, seed: u64, p: usize) -> VectorFieldSample {
        let components = (0..p)
            .map(|j| self.sample(child_seed(seed, j as u64)).values)
            .collect();
        VectorFieldSample {
            grid: self.grid,
            components,
            model: self.model,
            seed,
        }
    }
}

/// One-shot scalar field simulation (builds the embedding internally).
pub fn simulate_gaussian_field(
    model: CovarianceModel,
    grid: GridSpec,
    seed: u64,
) -> Result<FieldSample> {
    Ok(CirculantEmbedding::new(model, grid, EmbeddingOptions::default())?.sample(seed))
}

/// One-shot vector field simulation: p independent components, component
/// j drawn from the stream `child_seed(seed, j)`.
pub fn simulate_vector_field(
    model: CovarianceModel,
    p: usize,
    grid: GridSpec,
    seed: u64,
) -> Result<VectorFieldSample> {
    if p < 1 {
        return Err(Error::Domain("vector field needs p >= 1".into()));
    }
    let embedding = CirculantEmbedding::new(model, grid, EmbeddingOptions::default())?;
    Ok(embedding.sample_vector(seed, p))
}

/// Symmetric row-orthonormal mixing matrix (the square root of the
/// cross-correlation structure). Row orthonormality is the property the
/// mixed-field limit theorems rest on, and it is what gets validated.
#[derive(Debug, Clone, PartialEq)]
pub struct MixingMatrix {
    p: usize,
    entries: Vec<f64>, // row-major p x p
}

impl MixingMatrix {
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        let p = rows.len();
        if p == 0 || rows.iter().any(|r| r.len() != p) {
            return Err(Error::Dimension("mixing matrix must be square".into()));
        }
        let entries: Vec<f64> = rows.into_iter().flatten().collect();
        for i in 0..p {
            for j in (i + 1)..p {
                if (entries[i * p + j] - entries[j * p + i]).abs() > 1e-12 {
                    return Err(Error::Domain(format!(
                        "mixing matrix not symmetric at ({i},{j})"
                    )));
                }
            }
        }
        for i in 0..p {
            let norm: f64 = (0..p).map(|j| entries[i * p + j].powi(2)).sum();
            if (norm - 1.0).abs() > 1e-10 {
                return Err(Error::Domain(format!(
                    "mixing matrix row {i} has squared norm {norm}, expected 1"
                )));
            }
        }
        Ok(Self { p, entries })
    }

    pub fn identity(p: usize) -> Self {
        let mut entries = vec![0.0; p * p];
        for i in 0..p {
            entries[i * p + i] = 1.0;
        }
        Self { p, entries }
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.p + j]
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        (0..self.p)
            .map(|i| self.entries[i * self.p..(i + 1) * self.p].to_vec())
            .collect()
    }
}

/// Pointwise linear mixing: output component j at every cell is
/// `sum_i M[j,i] * v_i`.
pub fn mix(v: &VectorFieldSample, m: &MixingMatrix) -> Result<VectorFieldSample> {
    if m.p != v.p() {
        return Err(Error::Dimension(format!(
            "mixing matrix is {}x{} but the field has p = {}",
            m.p,
            m.p,
            v.p()
        )));
    }
    let n = v.grid.len();
    let p = m.p;
    let mut components = vec![vec![0.0f64; n]; p];
    for (j, out) in components.iter_mut().enumerate() {
        for i in 0..p {
            let w = m.entry(j, i);
            if w == 0.0 {
                continue;
            }
            let src = &v.components[i];
            for (o, s) in out.iter_mut().zip(src) {
                *o += w * s;
            }
        }
    }
    Ok(VectorFieldSample {
        grid: v.grid,
        components,
        model: v.model,
        seed: v.seed,
    })
}
