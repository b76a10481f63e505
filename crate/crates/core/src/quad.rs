//! One-dimensional quadrature used by the window-geometry integrals.
//!
//! The workhorse is an adaptive 16-point Gauss-Legendre rule with interval
//! halving. Integrands with an integrable power singularity at the left
//! endpoint get a geometric pre-partition toward that endpoint, which the
//! distance-density integrals (`z^{-alpha kappa} psi(z)`) need.

use crate::error::{Error, Result};

// Abscissas/weights for 16-point Gauss-Legendre on [-1, 1] (positive half;
// the rule is symmetric).
const GL16_X: [f64; 8] = [
    0.095_012_509_837_637_44,
    0.281_603_550_779_258_9,
    0.458_016_777_657_227_4,
    0.617_876_244_402_643_7,
    0.755_404_408_355_003_0,
    0.865_631_202_387_831_7,
    0.944_575_023_073_232_6,
    0.989_400_934_991_649_9,
];
const GL16_W: [f64; 8] = [
    0.189_450_610_455_068_5,
    0.182_603_415_044_923_6,
    0.169_156_519_395_002_54,
    0.149_595_988_816_576_73,
    0.124_628_971_255_533_87,
    0.095_158_511_682_492_78,
    0.062_253_523_938_647_89,
    0.027_152_459_411_754_095,
];

/// Fixed 16-point Gauss-Legendre estimate on [a, b].
pub fn gauss_legendre_16<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> f64 {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut sum = 0.0;
    for i in 0..8 {
        let dx = h * GL16_X[i];
        sum += GL16_W[i] * (f(c - dx) + f(c + dx));
    }
    sum * h
}

fn adaptive_inner<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> Result<f64> {
    let m = 0.5 * (a + b);
    let left = gauss_legendre_16(f, a, m);
    let right = gauss_legendre_16(f, m, b);
    let diff = left + right - whole;
    if diff.abs() <= tol || b - a < 1e-14 * (b.abs() + 1.0) {
        return Ok(left + right);
    }
    if depth == 0 {
        return Err(Error::Quadrature(format!(
            "max subdivision depth reached on [{a}, {b}], residual {diff:.3e} > {tol:.3e}"
        )));
    }
    Ok(adaptive_inner(f, a, m, left, 0.5 * tol, depth - 1)?
        + adaptive_inner(f, m, b, right, 0.5 * tol, depth - 1)?)
}

/// Adaptive quadrature on [a, b] for integrands smooth in the interior.
pub fn integrate<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    let whole = gauss_legendre_16(f, a, b);
    adaptive_inner(f, a, b, whole, tol.max(1e-15), 48)
}

/// Quadrature on (0, b] for integrands with an integrable power
/// singularity at 0: geometric cells `[b/2^{k+1}, b/2^k]` are integrated
/// adaptively and summed until the cell contribution is negligible.
pub fn integrate_left_singular<F: Fn(f64) -> f64>(f: &F, b: f64, tol: f64) -> Result<f64> {
    assert!(b > 0.0);
    let mut total = 0.0;
    let mut hi = b;
    for _ in 0..220 {
        let lo = 0.5 * hi;
        let cell = integrate(f, lo, hi, tol * 0.1)?;
        total += cell;
        if cell.abs() < tol * total.abs().max(1e-300) && hi < 1e-6 * b {
            return Ok(total);
        }
        hi = lo;
    }
    Ok(total)
}
