//! Regular lattice geometry, field containers, and the field file formats.

use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::covariance::CovarianceModel;
use crate::error::{Error, Result};

/// Regular grid in dimension 1 or 2. `shape[1]` is 1 when d = 1.
/// `origin` holds the coordinates of the center of cell (0, 0).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub d: u32,
    pub shape: [usize; 2],
    pub spacing: f64,
    pub origin: [f64; 2],
}

impl GridSpec {
    pub fn new_1d(n: usize, spacing: f64, origin: f64) -> Result<Self> {
        Self::validate_parts(1, [n, 1], spacing)?;
        Ok(Self {
            d: 1,
            shape: [n, 1],
            spacing,
            origin: [origin, 0.0],
        })
    }

    pub fn new_2d(shape: [usize; 2], spacing: f64, origin: [f64; 2]) -> Result<Self> {
        Self::validate_parts(2, shape, spacing)?;
        Ok(Self {
            d: 2,
            shape,
            spacing,
            origin,
        })
    }

    /// Square 2-D grid of `n x n` cells centered on the origin: cell
    /// centers sit at `(i + 1/2) * spacing - n * spacing / 2`.
    pub fn centered_square(n: usize, spacing: f64) -> Result<Self> {
        let half = 0.5 * n as f64 * spacing;
        Self::new_2d([n, n], spacing, [0.5 * spacing - half, 0.5 * spacing - half])
    }

    fn validate_parts(d: u32, shape: [usize; 2], spacing: f64) -> Result<()> {
        if !(spacing > 0.0) {
            return Err(Error::Domain(format!("spacing must be positive, got {spacing}")));
        }
        if shape[0] < 2 || (d == 2 && shape[1] < 2) {
            return Err(Error::Domain(format!(
                "grid needs at least 2 cells per axis, got {shape:?}"
            )));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.shape[0] * self.shape[1]
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Lebesgue measure of one cell.
    pub fn cell_area(&self) -> f64 {
        self.spacing.powi(self.d as i32)
    }

    /// Coordinates of the center of cell (i, j).
    pub fn coord(&self, i: usize, j: usize) -> [f64; 2] {
        [
            self.origin[0] + i as f64 * self.spacing,
            self.origin[1] + j as f64 * self.spacing,
        ]
    }

    /// Flat row-major index of cell (i, j).
    pub fn index(&self, i: usize, j: usize) -> usize {
        i * self.shape[1] + j
    }
}

/// One scalar field realization with its provenance.
#[derive(Debug, Clone)]
pub struct FieldSample {
    pub grid: GridSpec,
    pub values: Vec<f64>,
    pub model: CovarianceModel,
    pub seed: u64,
}

impl FieldSample {
    pub fn new(grid: GridSpec, values: Vec<f64>, model: CovarianceModel, seed: u64) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::Dimension(format!(
                "value count {} does not match grid size {}",
                values.len(),
                grid.len()
            )));
        }
        Ok(Self {
            grid,
            values,
            model,
            seed,
        })
    }
}

/// p component fields sharing one grid.
#[derive(Debug, Clone)]
pub struct VectorFieldSample {
    pub grid: GridSpec,
    pub components: Vec<Vec<f64>>,
    pub model: CovarianceModel,
    pub seed: u64,
}

impl VectorFieldSample {
    pub fn new(
        grid: GridSpec,
        components: Vec<Vec<f64>>,
        model: CovarianceModel,
        seed: u64,
    ) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::Dimension("vector field needs p >= 1 components".into()));
        }
        for (j, c) in components.iter().enumerate() {
            if c.len() != grid.len() {
                return Err(Error::Dimension(format!(
                    "component {j} has {} values, grid has {}",
                    c.len(),
                    grid.len()
                )));
            }
        }
        Ok(Self {
            grid,
            components,
            model,
            seed,
        })
    }

    pub fn p(&self) -> usize {
        self.components.len()
    }
}

const FIELD_MAGIC: &[u8; 8] = b"SOJFLD01";

/// Writes a field as little-endian f64 values after a 32-byte header
/// (magic, d, shape, spacing).
pub fn write_field_binary<W: Write>(w: &mut W, grid: &GridSpec, values: &[f64]) -> Result<()> {
    if values.len() != grid.len() {
        return Err(Error::Dimension("value count does not match grid".into()));
    }
    w.write_all(FIELD_MAGIC)?;
    w.write_all(&(grid.d).to_le_bytes())?;
    w.write_all(&(grid.shape[0] as u32).to_le_bytes())?;
    w.write_all(&(grid.shape[1] as u32).to_le_bytes())?;
    w.write_all(&0u32.to_le_bytes())?; // reserved
    w.write_all(&grid.spacing.to_le_bytes())?;
    for v in values {
        w.write_all(&v.to_le_bytes())?;
    }
    Ok(())
}

pub fn write_field_binary_path(path: &Path, grid: &GridSpec, values: &[f64]) -> Result<()> {
    let mut out = BufWriter::new(std::fs::File::create(path)?);
    write_field_binary(&mut out, grid, values)?;
    out.flush()?;
    Ok(())
}

/// Reads the binary field format. The header does not carry provenance;
/// callers attach a model/seed when they need a full `FieldSample`.
pub fn read_field_binary<R: Read>(r: &mut R) -> Result<(GridSpec, Vec<f64>)> {
    let mut header = [0u8; 32];
    r.read_exact(&mut header)?;
    if &header[0..8] != FIELD_MAGIC {
        return Err(Error::Format("bad magic in field file".into()));
    }
    let d = u32::from_le_bytes(header[8..12].try_into().unwrap());
    let nx = u32::from_le_bytes(header[12..16].try_into().unwrap()) as usize;
    let ny = u32::from_le_bytes(header[16..20].try_into().unwrap()) as usize;
    let spacing = f64::from_le_bytes(header[24..32].try_into().unwrap());
    if !(d == 1 || d == 2) {
        return Err(Error::Format(format!("unsupported dimension {d}")));
    }
    let n = nx
        .checked_mul(ny)
        .ok_or_else(|| Error::Format("grid size overflow".into()))?;
    let half = 0.5 * nx as f64 * spacing;
    let grid = if d == 1 {
        GridSpec::new_1d(nx, spacing, 0.5 * spacing - half)?
    } else {
        GridSpec::centered_square(nx, spacing).and_then(|g| {
            if nx == ny {
                Ok(g)
            } else {
                let half_y = 0.5 * ny as f64 * spacing;
                GridSpec::new_2d(
                    [nx, ny],
                    spacing,
                    [0.5 * spacing - half, 0.5 * spacing - half_y],
                )
            }
        })?
    };
    let mut values = vec![0.0f64; n];
    let mut buf = [0u8; 8];
    for v in values.iter_mut() {
        r.read_exact(&mut buf)?;
        *v = f64::from_le_bytes(buf);
    }
    Ok((grid, values))
}

pub fn read_field_binary_path(path: &Path) -> Result<(GridSpec, Vec<f64>)> {
    let mut input = BufReader::new(std::fs::File::open(path)?);
    read_field_binary(&mut input)
}

/// Writes a field as `x,y,value` CSV (or `x,value` for d = 1).
pub fn write_field_csv<W: Write>(w: &mut W, grid: &GridSpec, values: &[f64]) -> Result<()> {
    if grid.d == 1 {
        writeln!(w, "x,value")?;
        for i in 0..grid.shape[0] {
            writeln!(w, "{},{}", grid.coord(i, 0)[0], values[grid.index(i, 0)])?;
        }
    } else {
        writeln!(w, "x,y,value")?;
        for i in 0..grid.shape[0] {
            for j in 0..grid.shape[1] {
                let c = grid.coord(i, j);
                writeln!(w, "{},{},{}", c[0], c[1], values[grid.index(i, j)])?;
            }
        }
    }
    Ok(())
}

/// Reads the `x[,y],value` CSV written by `write_field_csv`, recovering
/// the grid from the coordinates.
pub fn read_field_csv<R: Read>(r: &mut R) -> Result<(GridSpec, Vec<f64>)> {
    let reader = BufReader::new(r);
    let mut lines = reader.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::Format("empty field CSV".into()))??;
    let d = match header.trim() {
        "x,value" => 1,
        "x,y,value" => 2,
        other => return Err(Error::Format(format!("unexpected header {other:?}"))),
    };
    let mut xs: Vec<f64> = Vec::new();
    let mut ys: Vec<f64> = Vec::new();
    let mut values = Vec::new();
    for line in lines {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let parts: Vec<&str> = line.split(',').collect();
        if parts.len() != d + 1 {
            return Err(Error::Format(format!("bad field row {line:?}")));
        }
        let parse = |s: &str| -> Result<f64> {
            s.trim()
                .parse::<f64>()
                .map_err(|e| Error::Format(format!("bad number {s:?}: {e}")))
        };
        xs.push(parse(parts[0])?);
        if d == 2 {
            ys.push(parse(parts[1])?);
        }
        values.push(parse(parts[d])?);
    }
    if values.len() < 2 {
        return Err(Error::Format("field CSV has fewer than 2 cells".into()));
    }
    if d == 1 {
        let spacing = xs[1] - xs[0];
        let grid = GridSpec::new_1d(values.len(), spacing, xs[0])?;
        Ok((grid, values))
    } else {
        // Row-major order: x stays constant while y sweeps one column.
        let ny = (1..xs.len())
            .find(|&i| xs[i] != xs[0])
            .unwrap_or(values.len());
        if ny == 0 || values.len() % ny != 0 {
            return Err(Error::Format("field CSV rows do not form a grid".into()));
        }
        let nx = values.len() / ny;
        let spacing = if ny > 1 { ys[1] - ys[0] } else { 1.0 };
        let grid = GridSpec::new_2d([nx, ny], spacing, [xs[0], ys[0]])?;
        Ok((grid, values))
    }
}
