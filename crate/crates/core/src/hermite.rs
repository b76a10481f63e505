//! Probabilists' Hermite polynomials, multidimensional expansion
//! coefficients, Hermite-rank detection, and the reduced rank-kappa
//! functional.
//!
//! The probabilists' convention (E H_k(xi)^2 = k!) is fixed throughout;
//! the physicists' convention would silently rescale every constant
//! downstream. Coefficients are estimated by plain Monte Carlo with
//! explicit standard errors, which the rank test consumes directly.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::Window;
use crate::grid::VectorFieldSample;
use crate::simulate::child_seed;
use crate::special::{fisher_cdf, student_cdf};

/// H_k(u) by the three-term recurrence H_{k+1} = u H_k - k H_{k-1}.
pub fn hermite_poly(k: usize, u: f64) -> f64 {
    assert!(k <= 30, "hermite_poly supports k <= 30, got {k}");
    if k == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = u;
    for j in 1..k {
        let next = u * cur - j as f64 * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Multi-index nu = (k_1, ..., k_p) with order sum(k_j).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex(Vec<usize>);

impl MultiIndex {
    pub fn new(k: Vec<usize>) -> Self {
        Self(k)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn order(&self) -> usize {
        self.0.iter().sum()
    }

    /// nu! = prod k_j!, exact in f64 for the orders used here.
    pub fn factorial_weight(&self) -> f64 {
        self.0
            .iter()
            .map(|&k| (1..=k).map(|i| i as f64).product::<f64>())
            .product()
    }

    /// Compact display, e.g. "2;0;0".
    pub fn label(&self) -> String {
        self.0
            .iter()
            .map(|k| k.to_string())
            .collect::<Vec<_>>()
            .join(";")
    }
}

impl std::fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({})", self.label())
    }
}

/// All multi-indices in N_k for dimension p (compositions of k into p
/// nonnegative parts), in lexicographic order.
pub fn multi_indices(p: usize, order: usize) -> Vec<MultiIndex> {
    fn rec(p: usize, remaining: usize, prefix: &mut Vec<usize>, out: &mut Vec<MultiIndex>) {
        if p == 1 {
            prefix.push(remaining);
            out.push(MultiIndex::new(prefix.clone()));
            prefix.pop();
            return;
        }
        for k in (0..=remaining).rev() {
            prefix.push(k);
            rec(p - 1, remaining - k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(p, order, &mut Vec::new(), &mut out);
    out
}

/// e_nu(w) = prod_j H_{k_j}(w_j).
pub fn eval_e_nu(nu: &MultiIndex, w: &[f64]) -> Result<f64> {
    if nu.len() != w.len() {
        return Err(Error::Dimension(format!(
            "multi-index has p = {}, point has p = {}",
            nu.len(),
            w.len()
        )));
    }
    Ok(nu
        .parts()
        .iter()
        .zip(w)
        .map(|(&k, &u)| hermite_poly(k, u))
        .product())
}

const MC_CHUNK: usize = 1 << 16;

// Chunked Monte Carlo mean with a deterministic reduction order: each
// chunk owns the stream child_seed(seed, chunk_index), and chunk sums are
// folded in index order, so results do not depend on the worker count.
fn mc_mean_se<F>(f: F, n_samples: usize, seed: u64) -> Result<(f64, f64)>
where
    F: Fn(&mut ChaCha8Rng) -> Result<f64> + Sync,
{
    assert!(n_samples > 1);
    let n_chunks = n_samples.div_ceil(MC_CHUNK);
    let partials: Vec<Result<(f64, f64, usize)>> = (0..n_chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(child_seed(seed, c as u64));
            let count = MC_CHUNK.min(n_samples - c * MC_CHUNK);
            let mut sum = 0.0;
            let mut sum_sq = 0.0;
            for _ in 0..count {
                let v = f(&mut rng)?;
                sum += v;
                sum_sq += v * v;
            }
            Ok((sum, sum_sq, count))
        })
        .collect();
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    for part in partials {
        let (s, s2, _) = part?;
        sum += s;
        sum_sq += s2;
    }
    let n = n_samples as f64;
    let mean = sum / n;
    let var = (sum_sq / n - mean * mean).max(0.0);
    Ok((mean, (var / n).sqrt()))
}

/// Monte Carlo estimate of the expansion coefficient
/// C_nu = E[G(W) e_nu(W)], W ~ N(0, I_p), with its standard error.
pub fn estimate_coefficient<G>(
    g: G,
    p: usize,
    nu: &MultiIndex,
    n_samples: usize,
    seed: u64,
) -> Result<(f64, f64)>
where
    G: Fn(&[f64]) -> f64 + Sync,
{
    if nu.len() != p {
        return Err(Error::Dimension(format!(
            "multi-index dimension {} != p = {p}",
            nu.len()
        )));
    }
    let nu = nu.clone();
    mc_mean_se(
        move |rng| {
            let w: Vec<f64> = (0..p).map(|_| StandardNormal.sample(rng)).collect();
            let gv = g(&w);
            if !gv.is_finite() {
                return Err(Error::NonFinite {
                    value: gv,
                    sample: w,
                });
            }
            Ok(gv * eval_e_nu(&nu, &w).expect("dimension checked"))
        },
        n_samples,
        seed,
    )
}

/// Outcome of Hermite-rank detection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RankResult {
    /// Smallest order with a coefficient exceeding 4 standard errors;
    /// all lower orders were consistent with zero.
    Rank(usize),
    /// No significant coefficient up to `max_order`; explicitly not a
    /// guess.
    Inconclusive { max_order: usize },
}

/// Scans coefficient orders 0..=max_order and reports the smallest order
/// carrying a coefficient larger than 4 standard errors.
pub fn hermite_rank<G>(
    g: G,
    p: usize,
    max_order: usize,
    n_samples: usize,
    seed: u64,
) -> Result<RankResult>
where
    G: Fn(&[f64]) -> f64 + Sync,
{
    assert!(max_order <= 6, "rank detection supports max_order <= 6");
    let mut stream = 0u64;
    for order in 0..=max_order {
        let mut significant = false;
        for nu in multi_indices(p, order) {
            let (est, se) = estimate_coefficient(&g, p, &nu, n_samples, child_seed(seed, stream))?;
            stream += 1;
            if est.abs() > 4.0 * se {
                significant = true;
            }
        }
        if significant {
            return Ok(RankResult::Rank(order));
        }
    }
    Ok(RankResult::Inconclusive { max_order })
}

/// Centered Student exceedance indicator
/// `chi(T_n(w) > a) - P(T_n > a)` as a function of the n+1 Gaussian
/// components.
pub fn student_indicator(a: f64, n: u32) -> impl Fn(&[f64]) -> f64 + Sync + Send + Clone {
    let tail = 1.0 - student_cdf(a, n);
    let nf = n as f64;
    move |w: &[f64]| {
        debug_assert_eq!(w.len(), n as usize + 1);
        let denom = (w[1..].iter().map(|x| x * x).sum::<f64>() / nf).sqrt();
        let exceeds = if denom > 0.0 {
            w[0] / denom > a
        } else {
            w[0] > 0.0
        };
        if exceeds {
            1.0 - tail
        } else {
            -tail
        }
    }
}

/// Centered Fisher-Snedecor exceedance indicator
/// `chi(F_{m,n}(w) > a) - P(F_{m,n} > a)` as a function of the m+n
/// Gaussian components.
pub fn fisher_indicator(a: f64, m: u32, n: u32) -> impl Fn(&[f64]) -> f64 + Sync + Send + Clone {
    let tail = 1.0 - fisher_cdf(a.max(0.0), m, n).expect("level >= 0");
    let (mf, nf) = (m as f64, n as f64);
    let (m, n) = (m as usize, n as usize);
    move |w: &[f64]| {
        debug_assert_eq!(w.len(), m + n);
        let num = w[..m].iter().map(|x| x * x).sum::<f64>() / mf;
        let den = w[m..].iter().map(|x| x * x).sum::<f64>() / nf;
        let exceeds = num / den > a;
        if exceeds {
            1.0 - tail
        } else {
            -tail
        }
    }
}

/// Riemann-sum evaluation of the reduced functional
/// `K_{r,kappa} = sum_nu (C_nu / nu!) int_window e_nu(eta(x)) dx`
/// over the grid cells whose centers lie in the window.
pub fn reduced_functional(
    v: &VectorFieldSample,
    coefficients: &[(MultiIndex, f64)],
    w: &Window,
) -> Result<f64> {
    let grid = &v.grid;
    if !crate::excursion::grid_covers_window(grid, w) {
        return Err(Error::Dimension(
            "window extends beyond the simulated grid".into(),
        ));
    }
    for (nu, _) in coefficients {
        if nu.len() != v.p() {
            return Err(Error::Dimension(format!(
                "coefficient index {nu} does not match p = {}",
                v.p()
            )));
        }
    }
    let mut total = 0.0;
    let mut point = vec![0.0f64; v.p()];
    for i in 0..grid.shape[0] {
        for j in 0..grid.shape[1] {
            let c = grid.coord(i, j);
            if !w.contains(&c[..grid.d as usize]) {
                continue;
            }
            let idx = grid.index(i, j);
            for (slot, comp) in point.iter_mut().zip(&v.components) {
                *slot = comp[idx];
            }
            for (nu, c_nu) in coefficients {
                if *c_nu == 0.0 {
                    continue;
                }
                total += c_nu / nu.factorial_weight() * eval_e_nu(nu, &point)?;
            }
        }
    }
    Ok(total * grid.cell_area())
}

/// Monte Carlo check of the product-moment identity for Hermite
/// polynomials of jointly Gaussian pairs: pairs (xi_j, xi_{j+p}) have
/// correlation r_j and are independent across j.
pub fn lemma1_product_moment(
    k: &MultiIndex,
    m: &MultiIndex,
    correlations: &[f64],
    n_samples: usize,
    seed: u64,
) -> Result<(f64, f64)> {
    let p = correlations.len();
    if k.len() != p || m.len() != p {
        return Err(Error::Dimension(format!(
            "index dimensions ({}, {}) must match correlation count {p}",
            k.len(),
            m.len()
        )));
    }
    for &r in correlations {
        if !(-1.0..=1.0).contains(&r) {
            return Err(Error::Domain(format!("correlation {r} outside [-1, 1]")));
        }
    }
    let (k, m, correlations) = (k.clone(), m.clone(), correlations.to_vec());
    mc_mean_se(
        move |rng| {
            let mut prod = 1.0;
            for j in 0..p {
                let xi: f64 = StandardNormal.sample(rng);
                let noise: f64 = StandardNormal.sample(rng);
                let r = correlations[j];
                let xi_pair = r * xi + (1.0 - r * r).sqrt() * noise;
                prod *= hermite_poly(k.parts()[j], xi) * hermite_poly(m.parts()[j], xi_pair);
            }
            Ok(prod)
        },
        n_samples,
        seed,
    )
}

/// Expected product moment from the closed-form identity
/// `prod delta_{k_j}^{m_j} k_j! r_j^{k_j}`.
pub fn lemma1_expected(k: &MultiIndex, m: &MultiIndex, correlations: &[f64]) -> f64 {
    if k.parts() != m.parts() {
        return 0.0;
    }
    k.parts()
        .iter()
        .zip(correlations)
        .map(|(&kj, &rj)| (1..=kj).map(|i| i as f64).product::<f64>() * rj.powi(kj as i32))
        .product()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn low_order_polynomials() {
        for &u in &[-2.0, 0.0, 0.5, 3.0] {
            assert_eq!(hermite_poly(0, u), 1.0);
            assert_eq!(hermite_poly(1, u), u);
            assert_eq!(hermite_poly(2, u), u * u - 1.0);
            assert_eq!(hermite_poly(3, u), u * u * u - 3.0 * u);
        }
        assert_eq!(hermite_poly(2, 3.0), 8.0);
    }

    #[test]
    fn orthogonality_by_mc() {
        // E H_4(xi) H_2(xi) = 0 within 3 standard errors.
        let (est, se) = mc_mean_se(
            |rng| {
                let x: f64 = StandardNormal.sample(rng);
                Ok(hermite_poly(4, x) * hermite_poly(2, x))
            },
            1_000_000,
            31,
        )
        .unwrap();
        assert!(est.abs() < 3.0 * se, "E H4 H2 = {est} +/- {se}");
    }

    #[test]
    fn e_nu_values() {
        let nu = MultiIndex::new(vec![0, 0, 0]);
        assert_eq!(eval_e_nu(&nu, &[1.0, 2.0, 3.0]).unwrap(), 1.0);
        let nu = MultiIndex::new(vec![1, 1]);
        assert_eq!(eval_e_nu(&nu, &[2.0, 3.0]).unwrap(), 6.0);
        let nu = MultiIndex::new(vec![2, 0]);
        assert_eq!(eval_e_nu(&nu, &[2.0, 5.0]).unwrap(), 3.0);
        assert!(eval_e_nu(&nu, &[1.0]).is_err());
    }

    #[test]
    fn multi_index_enumeration() {
        let n2 = multi_indices(3, 2);
        assert_eq!(n2.len(), 6);
        assert!(n2.contains(&MultiIndex::new(vec![2, 0, 0])));
        assert!(n2.contains(&MultiIndex::new(vec![0, 1, 1])));
        assert_eq!(multi_indices(4, 0).len(), 1);
        assert_eq!(MultiIndex::new(vec![3, 2, 0]).factorial_weight(), 12.0);
    }

    #[test]
    fn summation_theorem_sqrt_normalization() {
        // H_k((sum a_j w_j) / sqrt(sum a_j^2)) =
        //   k! / (sum a_j^2)^{k/2} * sum_{|nu|=k} prod a_j^{k_j}/k_j! H_{k_j}(w_j)
        let a = [3.0, 4.0];
        let norm2: f64 = a.iter().map(|x| x * x).sum();
        let k = 2;
        for i in -4..=4 {
            for j in -4..=4 {
                let w = [i as f64 * 0.7, j as f64 * 0.55];
                let lhs = hermite_poly(k, a.iter().zip(&w).map(|(x, y)| x * y).sum::<f64>()
                    / norm2.sqrt());
                let mut rhs = 0.0;
                for nu in multi_indices(2, k) {
                    let coeff: f64 = nu
                        .parts()
                        .iter()
                        .zip(&a)
                        .map(|(&kj, &aj)| {
                            aj.powi(kj as i32) / (1..=kj).map(|t| t as f64).product::<f64>()
                        })
                        .product();
                    rhs += coeff * eval_e_nu(&nu, &w).unwrap();
                }
                rhs *= 2.0 / norm2; // k! / (sum a^2)^{k/2} with k = 2
                assert_abs_diff_eq!(lhs, rhs, epsilon = 1e-9);
            }
        }
    }

    #[test]
    fn coefficient_estimator_is_unbiased_on_basis() {
        // G = e_mu gives C_nu = nu! * delta_{mu nu}.
        let mu = MultiIndex::new(vec![1, 1]);
        let g = move |w: &[f64]| w[0] * w[1];
        let (est, se) = estimate_coefficient(g, 2, &mu, 400_000, 5).unwrap();
        assert!((est - 1.0).abs() < 3.0 * se, "diagonal: {est} +/- {se}");
        let other = MultiIndex::new(vec![2, 0]);
        let (est, se) = estimate_coefficient(g, 2, &other, 400_000, 6).unwrap();
        assert!(est.abs() < 3.0 * se, "off-diagonal: {est} +/- {se}");
    }

    #[test]
    fn student_first_coefficient_matches_closed_form() {
        let g = student_indicator(1.0, 2);
        let nu = MultiIndex::new(vec![1, 0, 0]);
        let (est, se) = estimate_coefficient(g, 3, &nu, 1_000_000, 17).unwrap();
        let target = crate::special::student_hermite_c1(1.0, 2);
        assert!(
            (est - target).abs() < 3.0 * se,
            "C10 estimate {est} +/- {se}, target {target}"
        );
    }

    #[test]
    fn fisher_coefficients_match_c4_forms() {
        let (a, m, n) = (1.0, 1u32, 2u32);
        let g = fisher_indicator(a, m, n);
        let c4 = crate::special::c4(a, n, m).unwrap();
        // First-order coefficients vanish (the function is even).
        for nu in multi_indices(3, 1) {
            let (est, se) = estimate_coefficient(&g, 3, &nu, 300_000, 23).unwrap();
            assert!(est.abs() < 4.0 * se, "N1 {nu}: {est} +/- {se}");
        }
        // k_j = 2 in the numerator block: 2 c4 / m.
        let (est, se) =
            estimate_coefficient(&g, 3, &MultiIndex::new(vec![2, 0, 0]), 600_000, 29).unwrap();
        assert!(
            (est - 2.0 * c4 / m as f64).abs() < 3.0 * se,
            "numerator coefficient {est} +/- {se}"
        );
        // k_j = 2 in the denominator block: -2 c4 / n.
        let (est, se) =
            estimate_coefficient(&g, 3, &MultiIndex::new(vec![0, 0, 2]), 600_000, 37).unwrap();
        assert!(
            (est + 2.0 * c4 / n as f64).abs() < 3.0 * se,
            "denominator coefficient {est} +/- {se}"
        );
    }

    #[test]
    fn rank_detection() {
        let g1 = |w: &[f64]| w[0];
        assert_eq!(hermite_rank(g1, 2, 4, 200_000, 3).unwrap(), RankResult::Rank(1));
        let student = student_indicator(1.0, 2);
        assert_eq!(
            hermite_rank(student, 3, 4, 400_000, 4).unwrap(),
            RankResult::Rank(1)
        );
        let fisher = fisher_indicator(1.0, 1, 2);
        assert_eq!(
            hermite_rank(fisher, 3, 4, 400_000, 5).unwrap(),
            RankResult::Rank(2)
        );
        // The zero function never produces a significant coefficient.
        let zero = |_: &[f64]| 0.0;
        assert_eq!(
            hermite_rank(zero, 2, 3, 50_000, 6).unwrap(),
            RankResult::Inconclusive { max_order: 3 }
        );
    }

    #[test]
    fn parseval_partial_sums() {
        // For the Student indicator: sum of C_nu^2/nu! over orders <= 6
        // stays below the MC estimate of int G^2 phi, and the gap shrinks
        // as the order grows.
        let g = student_indicator(1.0, 2);
        let total = {
            let g = g.clone();
            mc_mean_se(
                move |rng| {
                    let w: Vec<f64> = (0..3).map(|_| StandardNormal.sample(rng)).collect();
                    let v = g(&w);
                    Ok(v * v)
                },
                400_000,
                71,
            )
            .unwrap()
            .0
        };
        let mut stream = 100u64;
        let mut partial = 0.0;
        let mut gaps = Vec::new();
        for order in 0..=6 {
            for nu in multi_indices(3, order) {
                let (est, _) = estimate_coefficient(&g, 3, &nu, 150_000, child_seed(9, stream))
                    .unwrap();
                stream += 1;
                partial += est * est / nu.factorial_weight();
            }
            gaps.push(total - partial);
        }
        // Small upward bias from squared standard errors is tolerated.
        assert!(partial <= total + 0.02, "partial {partial} vs total {total}");
        assert!(gaps[6] < gaps[4] && gaps[4] < gaps[2], "gap did not shrink: {gaps:?}");
    }

    #[test]
    fn lemma1_examples() {
        let (est, se) = lemma1_product_moment(
            &MultiIndex::new(vec![2]),
            &MultiIndex::new(vec![2]),
            &[0.5],
            400_000,
            11,
        )
        .unwrap();
        assert!((est - 0.5).abs() < 3.0 * se, "{est} +/- {se}");

        let (est, se) = lemma1_product_moment(
            &MultiIndex::new(vec![2]),
            &MultiIndex::new(vec![3]),
            &[0.5],
            400_000,
            12,
        )
        .unwrap();
        assert!(est.abs() < 3.0 * se);

        let (est, se) = lemma1_product_moment(
            &MultiIndex::new(vec![1, 1]),
            &MultiIndex::new(vec![1, 1]),
            &[0.3, 0.7],
            400_000,
            13,
        )
        .unwrap();
        assert!((est - 0.21).abs() < 3.0 * se, "{est} +/- {se}");
        assert_eq!(
            lemma1_expected(
                &MultiIndex::new(vec![1, 1]),
                &MultiIndex::new(vec![1, 1]),
                &[0.3, 0.7]
            ),
            0.21
        );
    }

    #[test]
    fn lemma1_rejects_bad_correlation() {
        let k = MultiIndex::new(vec![1]);
        assert!(lemma1_product_moment(&k, &k, &[1.5], 1000, 1).is_err());
    }

    #[test]
    fn reduced_functional_rank_one_is_component_sum() {
        let grid = crate::grid::GridSpec::centered_square(8, 0.5).unwrap();
        let v = crate::simulate::simulate_vector_field(
            crate::covariance::CovarianceModel::GaussianExp,
            3,
            grid,
            2,
        )
        .unwrap();
        let w = Window::disk(1.5).unwrap();
        let coeffs = vec![(MultiIndex::new(vec![1, 0, 0]), 1.0)];
        let got = reduced_functional(&v, &coeffs, &w).unwrap();
        let mut expected = 0.0;
        for i in 0..8 {
            for j in 0..8 {
                let c = grid.coord(i, j);
                if w.contains(&c) {
                    expected += v.components[0][grid.index(i, j)];
                }
            }
        }
        expected *= grid.cell_area();
        assert_abs_diff_eq!(got, expected, epsilon = 1e-12);

        // All-zero coefficients give zero.
        let zeros = vec![(MultiIndex::new(vec![1, 0, 0]), 0.0)];
        assert_eq!(reduced_functional(&v, &zeros, &w).unwrap(), 0.0);

        // Window exceeding the grid is rejected.
        let big = Window::disk(100.0).unwrap();
        assert!(reduced_functional(&v, &coeffs, &big).is_err());
    }
}
