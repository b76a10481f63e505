//! Observation windows, pairwise-distance densities, and the window
//! constants that enter the limit normalizations.
//!
//! The spatial route goes through the distance density psi of a uniform
//! pair in the window (`c1`); the spectral route goes through the Fourier
//! transform of the window indicator (`c3`). The two are tied together by
//! `c2(d,alpha) * c3(1,d,alpha) = |Delta|^2 * c1(1,alpha,Delta)`, which the
//! test suite checks with both sides computed independently.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bessel;
use crate::error::{Error, Result};
use crate::quad;
use crate::special::{c2, reg_inc_beta, BetaParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WindowKind {
    Disk,
    Square,
}

/// Observation window: a disk of radius `r` or an axis-aligned square of
/// side `r`, both centered at the origin. The base (scale-1) set has
/// area |Delta| = unit-ball volume for the disk and 1 for the square.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Window {
    pub kind: WindowKind,
    pub r: f64,
}

/// Volume of the unit ball in dimension d.
pub fn unit_ball_volume(d: u32) -> f64 {
    match d {
        1 => 2.0,
        2 => std::f64::consts::PI,
        3 => 4.0 * std::f64::consts::PI / 3.0,
        _ => {
            let df = d as f64;
            (std::f64::consts::PI.powf(df / 2.0))
                * (crate::special::log_gamma(df / 2.0 + 1.0).unwrap().exp()).recip()
        }
    }
}

impl Window {
    pub fn new(kind: WindowKind, r: f64) -> Result<Self> {
        if !(r > 0.0) {
            return Err(Error::Domain(format!("window scale must be positive, got {r}")));
        }
        Ok(Self { kind, r })
    }

    pub fn disk(r: f64) -> Result<Self> {
        Self::new(WindowKind::Disk, r)
    }

    pub fn square(r: f64) -> Result<Self> {
        Self::new(WindowKind::Square, r)
    }

    /// Area of the base (scale-1) window in dimension d.
    pub fn base_area(&self, d: u32) -> f64 {
        match self.kind {
            WindowKind::Disk => unit_ball_volume(d),
            WindowKind::Square => 1.0,
        }
    }

    /// Area at the window's own scale.
    pub fn area(&self, d: u32) -> f64 {
        self.base_area(d) * self.r.powi(d as i32)
    }

    /// Diameter at the window's own scale.
    pub fn diameter(&self, d: u32) -> f64 {
        match self.kind {
            WindowKind::Disk => 2.0 * self.r,
            WindowKind::Square => self.r * (d as f64).sqrt(),
        }
    }

    /// Membership test for a point given by its first `d` coordinates.
    pub fn contains(&self, point: &[f64]) -> bool {
        match self.kind {
            WindowKind::Disk => {
                point.iter().map(|x| x * x).sum::<f64>() < self.r * self.r
            }
            WindowKind::Square => point.iter().all(|x| x.abs() < 0.5 * self.r),
        }
    }
}

/// Distance density of a uniform pair in the ball v(r) of dimension
/// d in {1, 2, 3}; zero outside [0, 2r]. Closed forms per dimension.
pub fn psi_ball_density(d: u32, r: f64, rho: f64) -> Result<f64> {
    assert!(r > 0.0);
    if !(1..=3).contains(&d) {
        return Err(Error::Unsupported(format!(
            "psi_ball_density supports d in {{1,2,3}}, got {d}"
        )));
    }
    if !(0.0..=2.0 * r).contains(&rho) {
        return Ok(0.0);
    }
    let t = rho / (2.0 * r);
    Ok(match d {
        1 => (1.0 - t) / r,
        2 => 4.0 * rho / (std::f64::consts::PI * r * r) * (t.acos() - t * (1.0 - t * t).sqrt()),
        3 => 3.0 * rho * rho / (r * r * r) * (1.0 - t) * (1.0 - t) * (1.0 + 0.5 * t),
        _ => unreachable!(),
    })
}

/// Same density through the incomplete-beta representation
/// d rho^{d-1} r^{-d} I_{1-(rho/2r)^2}((d+1)/2, 1/2); used to cross-check
/// the dimension-specific closed forms.
pub fn psi_ball_density_general(d: u32, r: f64, rho: f64) -> Result<f64> {
    assert!(r > 0.0);
    if d == 0 {
        return Err(Error::Unsupported("d must be >= 1".into()));
    }
    if !(0.0..=2.0 * r).contains(&rho) {
        return Ok(0.0);
    }
    let t = rho / (2.0 * r);
    let df = d as f64;
    let i = reg_inc_beta(BetaParams::new((df + 1.0) / 2.0, 0.5, 1.0 - t * t)?);
    Ok(df * rho.powi(d as i32 - 1) * r.powi(-(d as i32)) * i)
}

/// Empirical histogram of pair distances in a window.
#[derive(Debug, Clone)]
pub struct DistanceHistogram {
    /// n_bins + 1 uniform edges spanning [0, diameter].
    pub edges: Vec<f64>,
    /// Density estimate per bin (counts / (n * width)).
    pub density: Vec<f64>,
    pub n_samples: usize,
}

impl DistanceHistogram {
    pub fn bin_width(&self) -> f64 {
        self.edges[1] - self.edges[0]
    }

    /// Integral of the histogram density (1 up to rounding).
    pub fn total_mass(&self) -> f64 {
        self.density.iter().sum::<f64>() * self.bin_width()
    }

    /// Empirical CDF evaluated at the bin edges.
    pub fn cdf_at_edges(&self) -> Vec<f64> {
        let w = self.bin_width();
        let mut acc = 0.0;
        let mut out = Vec::with_capacity(self.edges.len());
        out.push(0.0);
        for dens in &self.density {
            acc += dens * w;
            out.push(acc);
        }
        out
    }
}

fn sample_uniform_point(rng: &mut ChaCha8Rng, w: &Window, d: u32, out: &mut [f64]) {
    match w.kind {
        WindowKind::Square => {
            for x in out.iter_mut().take(d as usize) {
                *x = rng.random_range(-0.5 * w.r..0.5 * w.r);
            }
        }
        WindowKind::Disk => loop {
            let mut norm2 = 0.0;
            for x in out.iter_mut().take(d as usize) {
                *x = rng.random_range(-w.r..w.r);
                norm2 += *x * *x;
            }
            if norm2 < w.r * w.r {
                return;
            }
        },
    }
}

/// Monte Carlo distance density of a uniform pair in the window; the
/// oracle route for psi, and the only route for square windows.
pub fn mc_distance_density(
    w: &Window,
    d: u32,
    n_samples: usize,
    seed: u64,
) -> Result<DistanceHistogram> {
    if n_samples < 10_000 {
        return Err(Error::Domain(format!(
            "mc_distance_density needs at least 1e4 samples, got {n_samples}"
        )));
    }
    let diam = w.diameter(d);
    let n_bins = 256;
    let width = diam / n_bins as f64;
    let mut counts = vec![0u64; n_bins];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut u = [0.0f64; 3];
    let mut v = [0.0f64; 3];
    for _ in 0..n_samples {
        sample_uniform_point(&mut rng, w, d, &mut u);
        sample_uniform_point(&mut rng, w, d, &mut v);
        let dist = u
            .iter()
            .zip(&v)
            .take(d as usize)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt();
        let bin = ((dist / width) as usize).min(n_bins - 1);
        counts[bin] += 1;
    }
    let edges = (0..=n_bins).map(|i| i as f64 * width).collect();
    let density = counts
        .iter()
        .map(|&c| c as f64 / (n_samples as f64 * width))
        .collect();
    Ok(DistanceHistogram {
        edges,
        density,
        n_samples,
    })
}

const SQUARE_MC_SAMPLES: usize = 400_000;
const SQUARE_MC_SEED: u64 = 0x5EED_D157;

/// Pairwise integral over the scaled window,
/// `int int_{Delta(r)^2} G(|x-y|) dx dy = |Delta|^2 r^{2d} E G(|U-V|)`.
///
/// The scale factor `r` multiplies the window's own scale. Disk windows
/// integrate G against the closed-form psi (adaptively, with a geometric
/// refinement toward 0 so G may have an integrable singularity there);
/// square windows use a seeded Monte Carlo pair average.
pub fn pairwise_integral<G: Fn(f64) -> f64>(g: G, d: u32, w: &Window, r: f64) -> Result<f64> {
    assert!(r > 0.0);
    let scaled = Window::new(w.kind, w.r * r)?;
    let area = scaled.area(d);
    match w.kind {
        WindowKind::Disk => {
            let radius = scaled.r;
            let f = |rho: f64| g(rho) * psi_ball_density(d, radius, rho).unwrap();
            let rough = quad::gauss_legendre_16(&f, 1e-9 * radius, 2.0 * radius).abs();
            let tol = 1e-10 * rough.max(1.0);
            let mean = quad::integrate_left_singular(&f, 2.0 * radius, tol)?;
            Ok(area * area * mean)
        }
        WindowKind::Square => {
            let mut rng = ChaCha8Rng::seed_from_u64(SQUARE_MC_SEED);
            let mut u = [0.0f64; 3];
            let mut v = [0.0f64; 3];
            let mut sum = 0.0;
            for _ in 0..SQUARE_MC_SAMPLES {
                sample_uniform_point(&mut rng, &scaled, d, &mut u);
                sample_uniform_point(&mut rng, &scaled, d, &mut v);
                let dist = u
                    .iter()
                    .zip(&v)
                    .take(d as usize)
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum::<f64>()
                    .sqrt();
                let val = g(dist);
                if !val.is_finite() {
                    return Err(Error::NonFinite {
                        value: val,
                        sample: vec![dist],
                    });
                }
                sum += val;
            }
            Ok(area * area * sum / SQUARE_MC_SAMPLES as f64)
        }
    }
}

/// Long-range variance constant
/// `c1(kappa, alpha, Delta) = int_0^diam z^{-alpha kappa} psi_Delta(z) dz`
/// for the base (scale-1) window; requires alpha * kappa < d.
pub fn c1(kappa: u32, alpha: f64, w: &Window, d: u32) -> Result<f64> {
    assert!(kappa >= 1);
    if !(alpha >= 0.0) {
        return Err(Error::Domain(format!("alpha must be nonnegative, got {alpha}")));
    }
    let power = alpha * kappa as f64;
    if power >= d as f64 {
        return Err(Error::Domain(format!(
            "c1 requires alpha*kappa < d for integrability, got {power} >= {d}"
        )));
    }
    let base = Window::new(w.kind, 1.0)?;
    match w.kind {
        WindowKind::Disk => {
            let f = |z: f64| z.powf(-power) * psi_ball_density(d, 1.0, z).unwrap();
            quad::integrate_left_singular(&f, 2.0, 1e-11)
        }
        WindowKind::Square => {
            if power >= 1.0 {
                log::warn!(
                    "square-window c1 with alpha*kappa = {power} >= 1 uses a heavy-tailed \
                     Monte Carlo average; expect slow convergence"
                );
            }
            let mut rng = ChaCha8Rng::seed_from_u64(SQUARE_MC_SEED ^ 0xC1);
            let mut u = [0.0f64; 3];
            let mut v = [0.0f64; 3];
            let mut sum = 0.0;
            for _ in 0..SQUARE_MC_SAMPLES {
                sample_uniform_point(&mut rng, &base, d, &mut u);
                sample_uniform_point(&mut rng, &base, d, &mut v);
                let dist = u
                    .iter()
                    .zip(&v)
                    .take(d as usize)
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum::<f64>()
                    .sqrt();
                sum += dist.powf(-power);
            }
            Ok(sum / SQUARE_MC_SAMPLES as f64)
        }
    }
}

/// Fourier transform of the window indicator at frequency `x` (first `d`
/// coordinates are used). Real-valued for these centered windows.
pub fn kernel_k(w: &Window, d: u32, x: &[f64]) -> Complex64 {
    let k = match w.kind {
        WindowKind::Square => {
            let mut prod = 1.0;
            for &xi in x.iter().take(d as usize) {
                prod *= if xi == 0.0 {
                    w.r
                } else {
                    2.0 * (0.5 * xi * w.r).sin() / xi
                };
            }
            prod
        }
        WindowKind::Disk => {
            let rho = x.iter().take(d as usize).map(|v| v * v).sum::<f64>().sqrt();
            if rho == 0.0 {
                w.area(d)
            } else {
                let u = rho * w.r;
                let df = d as f64;
                let bess = match d {
                    1 => bessel::j_half(u),
                    2 => bessel::j1(u),
                    3 => bessel::j_three_halves(u),
                    _ => panic!("disk kernel supports d in {{1,2,3}}"),
                };
                (2.0 * std::f64::consts::PI).powf(df / 2.0) * w.r.powi(d as i32) * bess
                    / u.powf(df / 2.0)
            }
        }
    };
    Complex64::new(k, 0.0)
}

// Radial spectral integral for the disk: c3 = omega_d (2pi)^d R^{2d-alpha}
// int_0^inf J_{d/2}(u)^2 u^{alpha-1-d} du, split into a singular head,
// pi-length blocks through the oscillations, and an averaged tail.
fn c3_disk_radial(d: u32, alpha: f64, radius: f64) -> Result<f64> {
    let df = d as f64;
    let bess: fn(f64) -> f64 = match d {
        1 => bessel::j_half,
        2 => bessel::j1,
        3 => bessel::j_three_halves,
        _ => return Err(Error::Unsupported("disk c3 supports d in {1,2,3}".into())),
    };
    let f = move |u: f64| {
        let j = bess(u);
        j * j * u.powf(alpha - 1.0 - df)
    };
    let mut total = quad::integrate_left_singular(&f, 1.0, 1e-12)?;
    let mut lo = 1.0f64;
    let block = std::f64::consts::PI;
    loop {
        let hi = lo + block;
        total += quad::integrate(&f, lo, hi, 1e-12)?;
        lo = hi;
        // Mean of J^2 over a period is ~ 1/(pi u); the remaining mass is
        // bounded by the integral of that envelope.
        let tail_bound = lo.powf(alpha - df) / (std::f64::consts::PI * (df - alpha));
        if tail_bound < 1e-9 * total.abs() || lo > 1e5 {
            total += tail_bound; // averaged-envelope tail estimate
            log::debug!("c3 radial truncated at u={lo:.1}, tail bound {tail_bound:.3e}");
            break;
        }
    }
    let omega = 2.0 * std::f64::consts::PI.powf(df / 2.0)
        / crate::special::log_gamma(df / 2.0).unwrap().exp();
    Ok(omega
        * (2.0 * std::f64::consts::PI).powi(d as i32)
        * radius.powf(2.0 * df - alpha)
        * total)
}

// 2-D spectral integral for the square via polar coordinates; the angular
// average has 8-fold symmetry.
fn c3_square_2d(alpha: f64, side: f64) -> Result<f64> {
    let k2 = move |l1: f64, l2: f64| {
        let f1 = if l1 == 0.0 { side } else { 2.0 * (0.5 * l1 * side).sin() / l1 };
        let f2 = if l2 == 0.0 { side } else { 2.0 * (0.5 * l2 * side).sin() / l2 };
        f1 * f1 * f2 * f2
    };
    let angular = move |rho: f64| {
        let f = |phi: f64| k2(rho * phi.cos(), rho * phi.sin());
        8.0 * quad::gauss_legendre_16(&f, 0.0, std::f64::consts::FRAC_PI_4)
    };
    let f = move |rho: f64| angular(rho) * rho.powf(alpha - 1.0);
    let mut total = quad::integrate_left_singular(&f, 1.0 / side, 1e-10)?;
    let block = std::f64::consts::PI / side;
    let mut lo = 1.0 / side;
    let mut last;
    loop {
        let hi = lo + block;
        last = quad::integrate(&f, lo, hi, 1e-10)?;
        total += last;
        lo = hi;
        if (last.abs() < 1e-8 * total.abs() && lo > 50.0 / side) || lo > 2e4 / side {
            break;
        }
    }
    Ok(total)
}

/// Spectral window constant for kappa = 1:
/// `c3(1, d, alpha) = int |K(lambda)|^2 |lambda|^{alpha - d} d lambda`,
/// for 0 < alpha < d. Disk windows reduce to a radial Bessel integral;
/// square windows (d = 2) use two-dimensional polar quadrature.
pub fn c3_spectral(d: u32, alpha: f64, w: &Window) -> Result<f64> {
    let df = d as f64;
    if !(alpha > 0.0 && alpha < df) {
        return Err(Error::Domain(format!(
            "c3 requires 0 < alpha < d (divergent otherwise), got alpha={alpha}, d={d}"
        )));
    }
    match w.kind {
        WindowKind::Disk => c3_disk_radial(d, alpha, w.r),
        WindowKind::Square => {
            if d != 2 {
                return Err(Error::Unsupported(
                    "square-window c3 is implemented for d = 2 only".into(),
                ));
            }
            c3_square_2d(alpha, w.r)
        }
    }
}

/// Convenience check of the spatial/spectral identity
/// `c2 * c3 = |Delta|^2 * c1`; returns (lhs, rhs).
pub fn spatial_spectral_identity(d: u32, alpha: f64, w: &Window) -> Result<(f64, f64)> {
    let lhs = c2(d, alpha)? * c3_spectral(d, alpha, w)?;
    let base_area = w.base_area(d);
    let rhs = base_area * base_area * c1(1, alpha, w, d)?;
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::Rng;

    #[test]
    fn psi_closed_form_examples() {
        assert_abs_diff_eq!(psi_ball_density(1, 1.0, 0.0).unwrap(), 1.0, epsilon = 1e-14);
        assert_eq!(psi_ball_density(3, 1.0, 2.0).unwrap(), 0.0);
        assert_abs_diff_eq!(
            psi_ball_density(2, 1.0, 1.0).unwrap(),
            0.782_004_437_911_541_5,
            epsilon = 1e-12
        );
        assert_eq!(psi_ball_density(2, 1.0, 2.5).unwrap(), 0.0);
        assert!(psi_ball_density(4, 1.0, 0.5).is_err());
    }

    #[test]
    fn psi_general_form_agrees_with_special_forms() {
        for d in 1..=3 {
            for &r in &[0.5, 1.0, 3.0] {
                for i in 0..=200 {
                    let rho = 2.0 * r * i as f64 / 200.0;
                    let special = psi_ball_density(d, r, rho).unwrap();
                    let general = psi_ball_density_general(d, r, rho).unwrap();
                    assert!(
                        (special - general).abs() < 1e-10,
                        "mismatch d={d} r={r} rho={rho}: {special} vs {general}"
                    );
                }
            }
        }
    }

    #[test]
    fn psi_integrates_to_one() {
        for d in 1..=3u32 {
            for &r in &[0.5, 1.0, 2.0] {
                let f = |z: f64| psi_ball_density(d, r, z).unwrap();
                let total = quad::integrate(&f, 0.0, 2.0 * r, 1e-12).unwrap();
                assert_abs_diff_eq!(total, 1.0, epsilon = 1e-8);
            }
        }
    }

    #[test]
    fn mc_density_matches_psi_for_disk() {
        let w = Window::disk(1.0).unwrap();
        let hist = mc_distance_density(&w, 2, 100_000, 99).unwrap();
        assert_abs_diff_eq!(hist.total_mass(), 1.0, epsilon = 1e-12);
        // KS distance between empirical and quadrature CDFs at bin edges.
        let emp = hist.cdf_at_edges();
        let mut ks: f64 = 0.0;
        for (i, &edge) in hist.edges.iter().enumerate() {
            let truth = quad::integrate(&|z| psi_ball_density(2, 1.0, z).unwrap(), 0.0, edge, 1e-10)
                .unwrap();
            ks = ks.max((emp[i] - truth).abs());
        }
        assert!(ks < 0.01, "KS distance {ks} too large");
        assert!(*hist.edges.last().unwrap() <= 2.0 + 1e-12);
    }

    #[test]
    fn mc_density_requires_enough_samples() {
        let w = Window::square(1.0).unwrap();
        assert!(mc_distance_density(&w, 2, 100, 1).is_err());
    }

    #[test]
    fn pairwise_integral_normalization() {
        // G = 1 integrates to |Delta(r)|^2.
        let w = Window::disk(1.0).unwrap();
        let v = pairwise_integral(|_| 1.0, 2, &w, 3.0).unwrap();
        let area = std::f64::consts::PI * 9.0;
        assert_abs_diff_eq!(v, area * area, epsilon = 1e-6 * area * area);

        let sq = Window::square(1.0).unwrap();
        let v = pairwise_integral(|_| 1.0, 2, &sq, 2.0).unwrap();
        assert_abs_diff_eq!(v, 16.0, epsilon = 1e-9);
    }

    #[test]
    fn pairwise_integral_inverse_distance_closed_form() {
        // int_0^2 z^{-1} psi(z) dz = 16/(3 pi) for the unit disk, d = 2.
        let w = Window::disk(1.0).unwrap();
        let v = pairwise_integral(|rho| 1.0 / rho, 2, &w, 1.0).unwrap();
        let expected = 16.0 * std::f64::consts::PI / 3.0;
        assert_abs_diff_eq!(v, expected, epsilon = 1e-6 * expected);
    }

    #[test]
    fn pairwise_integral_matches_brute_mc() {
        // Direct 4-dimensional Monte Carlo of the double integral.
        let w = Window::disk(1.0).unwrap();
        let g = |rho: f64| (-rho).exp();
        let quadrature = pairwise_integral(g, 2, &w, 1.0).unwrap();

        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let n = 400_000;
        let mut sum = 0.0;
        let mut sum2 = 0.0;
        let draw = |rng: &mut ChaCha8Rng| loop {
            let x: f64 = rng.random_range(-1.0..1.0);
            let y: f64 = rng.random_range(-1.0..1.0);
            if x * x + y * y < 1.0 {
                return (x, y);
            }
        };
        for _ in 0..n {
            let (x1, y1) = draw(&mut rng);
            let (x2, y2) = draw(&mut rng);
            let v = g(((x1 - x2).powi(2) + (y1 - y2).powi(2)).sqrt());
            sum += v;
            sum2 += v * v;
        }
        let mean = sum / n as f64;
        let se = ((sum2 / n as f64 - mean * mean) / n as f64).sqrt();
        let area = std::f64::consts::PI;
        let mc = area * area * mean;
        let mc_se = area * area * se;
        assert!(
            (quadrature - mc).abs() < 3.0 * mc_se,
            "quadrature {quadrature} vs MC {mc} +/- {mc_se}"
        );
    }

    #[test]
    fn c1_disk_closed_form() {
        let w = Window::disk(1.0).unwrap();
        let v = c1(1, 1.0, &w, 2).unwrap();
        let expected = 16.0 / (3.0 * std::f64::consts::PI);
        assert_abs_diff_eq!(v, expected, epsilon = 1e-8);
    }

    #[test]
    fn c1_small_alpha_is_psi_mass() {
        let w = Window::disk(1.0).unwrap();
        let v = c1(1, 1e-9, &w, 2).unwrap();
        assert_abs_diff_eq!(v, 1.0, epsilon = 1e-6);
    }

    #[test]
    fn c1_rejects_divergent_exponent() {
        let w = Window::disk(1.0).unwrap();
        assert!(c1(2, 1.0, &w, 2).is_err());
        assert!(c1(1, 2.0, &w, 2).is_err());
    }

    #[test]
    fn c1_kappa_two_matches_mc_distance_sampling() {
        let w = Window::disk(1.0).unwrap();
        let v = c1(2, 0.5, &w, 2).unwrap();
        // Oracle: E |U-V|^{-1} by direct pair sampling.
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let n = 500_000;
        let mut sum = 0.0;
        let mut sum2 = 0.0;
        let draw = |rng: &mut ChaCha8Rng| loop {
            let x: f64 = rng.random_range(-1.0..1.0);
            let y: f64 = rng.random_range(-1.0..1.0);
            if x * x + y * y < 1.0 {
                return (x, y);
            }
        };
        for _ in 0..n {
            let (x1, y1) = draw(&mut rng);
            let (x2, y2) = draw(&mut rng);
            let val = ((x1 - x2).powi(2) + (y1 - y2).powi(2)).sqrt().recip();
            sum += val;
            sum2 += val * val;
        }
        let mean = sum / n as f64;
        let se = ((sum2 / n as f64 - mean * mean) / n as f64).sqrt();
        assert!((v - mean).abs() < 3.0 * se, "c1 {v} vs MC {mean} +/- {se}");
    }

    #[test]
    fn kernel_values() {
        let sq = Window::square(1.0).unwrap();
        assert_abs_diff_eq!(kernel_k(&sq, 2, &[0.0, 0.0]).re, 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(
            kernel_k(&sq, 2, &[2.0 * std::f64::consts::PI, 0.0]).re,
            0.0,
            epsilon = 1e-12
        );
        let disk = Window::disk(1.0).unwrap();
        assert_abs_diff_eq!(
            kernel_k(&disk, 2, &[0.0, 0.0]).re,
            std::f64::consts::PI,
            epsilon = 1e-14
        );
        assert_abs_diff_eq!(
            kernel_k(&disk, 2, &[1.0, 0.0]).re,
            2.764_919_374_768_337,
            epsilon = 1e-6
        );
    }

    #[test]
    fn c3_disk_alpha_one_closed_form() {
        let disk = Window::disk(1.0).unwrap();
        let v = c3_spectral(2, 1.0, &disk).unwrap();
        let expected = 32.0 * std::f64::consts::PI * std::f64::consts::PI / 3.0;
        assert!((v - expected).abs() < 5e-4 * expected, "{v} vs {expected}");
    }

    #[test]
    fn spatial_spectral_identity_holds() {
        let disk = Window::disk(1.0).unwrap();
        for &alpha in &[0.5, 1.0, 1.5] {
            let (lhs, rhs) = spatial_spectral_identity(2, alpha, &disk).unwrap();
            assert!(
                (lhs - rhs).abs() < 0.01 * rhs,
                "identity failed at alpha={alpha}: {lhs} vs {rhs}"
            );
        }
    }

    #[test]
    fn c3_guards_divergence() {
        let disk = Window::disk(1.0).unwrap();
        assert!(c3_spectral(2, 2.0, &disk).is_err());
        assert!(c3_spectral(2, 0.0, &disk).is_err());
        assert!(c3_spectral(2, 1.999_999, &disk).is_ok());
    }

    #[test]
    fn square_c3_identity_roughly() {
        // Square windows only promise MC accuracy on the spatial side.
        let sq = Window::square(1.0).unwrap();
        let (lhs, rhs) = spatial_spectral_identity(2, 0.5, &sq).unwrap();
        assert!((lhs - rhs).abs() < 0.05 * rhs, "{lhs} vs {rhs}");
    }

    #[test]
    fn window_membership() {
        let disk = Window::disk(2.0).unwrap();
        assert!(disk.contains(&[1.0, 1.0]));
        assert!(!disk.contains(&[2.0, 0.1]));
        let sq = Window::square(2.0).unwrap();
        assert!(sq.contains(&[0.9, -0.9]));
        assert!(!sq.contains(&[1.1, 0.0]));
        assert!(Window::disk(0.0).is_err());
    }
}
