//! Pointwise transforms of vector Gaussian samples into Student,
//! Fisher-Snedecor, and chi-square fields.
//!
//! Zero denominators have probability zero in the continuum but can occur
//! in floating point; they map to signed infinity (or NaN when the
//! numerator vanishes too), and the excursion measurement counts and
//! excludes the NaN cells.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{FieldSample, VectorFieldSample};

/// Field transform selector used by configs and the moving-level rules.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum FieldKind {
    /// T_n = eta_1 / sqrt((eta_2^2 + ... + eta_{n+1}^2) / n)
    Student { n: u32 },
    /// F_{m,n} = ((eta_1^2+...+eta_m^2)/m) / ((eta_{m+1}^2+...+eta_{m+n}^2)/n)
    Fisher { m: u32, n: u32 },
}

impl FieldKind {
    /// Number of Gaussian components the transform consumes.
    pub fn components(&self) -> usize {
        match *self {
            FieldKind::Student { n } => n as usize + 1,
            FieldKind::Fisher { m, n } => (m + n) as usize,
        }
    }

    /// Hermite rank of the centered exceedance indicator.
    pub fn hermite_rank(&self) -> u32 {
        match self {
            FieldKind::Student { .. } => 1,
            FieldKind::Fisher { .. } => 2,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            FieldKind::Student { n } if n >= 1 => Ok(()),
            FieldKind::Fisher { m, n } if m >= 1 && n >= 1 => Ok(()),
            _ => Err(Error::Domain(format!("invalid field kind {self:?}"))),
        }
    }

    /// Marginal tail probability P(field > level).
    pub fn tail_probability(&self, level: f64) -> Result<f64> {
        match *self {
            FieldKind::Student { n } => Ok(1.0 - crate::special::student_cdf(level, n)),
            FieldKind::Fisher { m, n } => {
                if level < 0.0 {
                    // F is nonnegative, the whole window exceeds.
                    Ok(1.0)
                } else {
                    Ok(1.0 - crate::special::fisher_cdf(level, m, n)?)
                }
            }
        }
    }
}

/// Student field T_n from p = n + 1 components.
pub fn student_field(v: &VectorFieldSample, n: u32) -> Result<FieldSample> {
    let p = n as usize + 1;
    if v.p() != p {
        return Err(Error::Dimension(format!(
            "student_field with n = {n} needs p = {p} components, got {}",
            v.p()
        )));
    }
    let nf = n as f64;
    let len = v.grid.len();
    let mut values = Vec::with_capacity(len);
    for idx in 0..len {
        let num = v.components[0][idx];
        let mut ss = 0.0;
        for c in &v.components[1..] {
            ss += c[idx] * c[idx];
        }
        let denom = (ss / nf).sqrt();
        values.push(if denom > 0.0 {
            num / denom
        } else if num > 0.0 {
            f64::INFINITY
        } else if num < 0.0 {
            f64::NEG_INFINITY
        } else {
            f64::NAN
        });
    }
    FieldSample::new(v.grid, values, v.model, v.seed)
}

/// Fisher-Snedecor field F_{m,n} from p = m + n components.
pub fn fisher_field(v: &VectorFieldSample, m: u32, n: u32) -> Result<FieldSample> {
    let p = (m + n) as usize;
    if v.p() != p {
        return Err(Error::Dimension(format!(
            "fisher_field with (m,n) = ({m},{n}) needs p = {p} components, got {}",
            v.p()
        )));
    }
    let (mf, nf) = (m as f64, n as f64);
    let len = v.grid.len();
    let mut values = Vec::with_capacity(len);
    for idx in 0..len {
        // m = 1 shares the Student arithmetic path so that
        // F_{1,n} = T_n^2 holds bit-exactly, not just in law.
        if m == 1 {
            let num = v.components[0][idx];
            let mut ss = 0.0;
            for c in &v.components[1..] {
                ss += c[idx] * c[idx];
            }
            let t = num / (ss / nf).sqrt();
            values.push(t * t);
            continue;
        }
        let mut num = 0.0;
        for c in &v.components[..m as usize] {
            num += c[idx] * c[idx];
        }
        let mut den = 0.0;
        for c in &v.components[m as usize..] {
            den += c[idx] * c[idx];
        }
        // 0/0 is NaN already; x/0 is +inf.
        values.push((num / mf) / (den / nf));
    }
    FieldSample::new(v.grid, values, v.model, v.seed)
}

/// Sum of squares of the first k components.
pub fn chi_square_field(v: &VectorFieldSample, k: u32) -> Result<FieldSample> {
    if k as usize > v.p() || k == 0 {
        return Err(Error::Dimension(format!(
            "chi_square_field needs 1 <= k <= p, got k = {k}, p = {}",
            v.p()
        )));
    }
    let len = v.grid.len();
    let mut values = vec![0.0f64; len];
    for c in &v.components[..k as usize] {
        for (out, x) in values.iter_mut().zip(c) {
            *out += x * x;
        }
    }
    FieldSample::new(v.grid, values, v.model, v.seed)
}

/// Applies the transform selected by `kind`.
pub fn derive_field(v: &VectorFieldSample, kind: FieldKind) -> Result<FieldSample> {
    match kind {
        FieldKind::Student { n } => student_field(v, n),
        FieldKind::Fisher { m, n } => fisher_field(v, m, n),
    }
}
