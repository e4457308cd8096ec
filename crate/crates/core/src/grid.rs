//! Sampled point sets for the discriminant pictures in degrees 2, 3 and 4.
//! Every row carries the residual of its defining equation and is checked
//! before anything is written.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::MonicPoly;
use crate::viete::discriminant;

/// Largest residual a grid row may carry.
pub const GRID_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Figure {
    /// Tangent lines `c = -u b - u^2` to the parabola `b^2 = 4c`.
    ParabolaTangents,
    /// The cusp `(c, d) = (-3u^2, 2u^3)` in the slice `b = 0` with its
    /// tangent lines `d = -u c - u^3`.
    CubicCuspTangents,
    /// `D_{4,2}` in the slice `a_1 = 0`, parametrized by the double root
    /// `z` and `a_2`.
    Swallowtail,
}

impl Figure {
    pub const ALL: [Figure; 3] = [
        Figure::ParabolaTangents,
        Figure::CubicCuspTangents,
        Figure::Swallowtail,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Figure::ParabolaTangents => "parabola-tangents",
            Figure::CubicCuspTangents => "cubic-cusp-tangents",
            Figure::Swallowtail => "swallowtail",
        }
    }
}

impl fmt::Display for Figure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Figure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Figure::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown figure {s:?}")))
    }
}

/// One sampled point. `u` and `v` are the sampling parameters, `x1..x3`
/// the coordinates in coefficient space (unused ones empty).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GridRow {
    pub figure: &'static str,
    pub kind: &'static str,
    pub u: f64,
    pub v: f64,
    pub x1: f64,
    pub x2: f64,
    pub x3: Option<f64>,
    pub residual: f64,
}

/// `samples` evenly spaced values from `lo` to `hi`; the product is formed
/// before dividing so integer grid points come out exact.
pub fn linspace(lo: f64, hi: f64, samples: usize) -> Vec<f64> {
    match samples {
        0 => Vec::new(),
        1 => vec![lo],
        n => (0..n)
            .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
            .collect(),
    }
}

fn parabola_rows(u: f64, bs: &[f64]) -> Vec<GridRow> {
    let mut rows = Vec::with_capacity(bs.len() + 1);
    let b0 = -2.0 * u;
    let c0 = u * u;
    rows.push(GridRow {
        figure: "parabola-tangents",
        kind: "curve",
        u,
        v: b0,
        x1: b0,
        x2: c0,
        x3: None,
        residual: (b0 * b0 - 4.0 * c0).abs(),
    });
    for &b in bs {
        let c = -u * b - u * u;
        rows.push(GridRow {
            figure: "parabola-tangents",
            kind: "tangent",
            u,
            v: b,
            x1: b,
            x2: c,
            x3: None,
            residual: (u * u + b * u + c).abs(),
        });
    }
    rows
}

fn cusp_rows(u: f64, cs: &[f64]) -> Vec<GridRow> {
    let mut rows = Vec::with_capacity(cs.len() + 1);
    let (c0, d0) = (-3.0 * u * u, 2.0 * u * u * u);
    let scale = (4.0 * c0.powi(3)).abs() + 27.0 * d0 * d0;
    rows.push(GridRow {
        figure: "cubic-cusp-tangents",
        kind: "curve",
        u,
        v: c0,
        x1: c0,
        x2: d0,
        x3: None,
        residual: (4.0 * c0.powi(3) + 27.0 * d0 * d0).abs() / scale.max(1.0),
    });
    for &c in cs {
        let d = -u * c - u * u * u;
        rows.push(GridRow {
            figure: "cubic-cusp-tangents",
            kind: "tangent",
            u,
            v: c,
            x1: c,
            x2: d,
            x3: None,
            residual: (u * c + d + u * u * u).abs(),
        });
    }
    rows
}

fn swallowtail_rows(z: f64, a2s: &[f64]) -> Result<Vec<GridRow>> {
    a2s.iter()
        .map(|&a2| {
            let a3 = -4.0 * z.powi(3) - 2.0 * a2 * z;
            let a4 = -z.powi(4) - a2 * z * z - a3 * z;
            let p = MonicPoly::real(&[0.0, a2, a3, a4])?;
            let delta = discriminant(&p)?;
            Ok(GridRow {
                figure: "swallowtail",
                kind: "surface",
                u: z,
                v: a2,
                x1: a2,
                x2: a3,
                x3: Some(a4),
                residual: delta.norm() / p.norm_inf().max(1.0).powi(6),
            })
        })
        .collect()
}

/// All rows of a figure, in deterministic order, each re-validated.
pub fn grid_rows(figure: Figure, samples: usize) -> Result<Vec<GridRow>> {
    if samples == 0 {
        return Err(Error::InvalidInput("samples must be positive".into()));
    }
    let per_u: Vec<Result<Vec<GridRow>>> = match figure {
        Figure::ParabolaTangents => {
            let bs = linspace(-4.0, 4.0, samples);
            linspace(-2.0, 2.0, samples)
                .into_par_iter()
                .map(|u| Ok(parabola_rows(u, &bs)))
                .collect()
        }
        Figure::CubicCuspTangents => {
            let cs = linspace(-4.0, 1.0, samples);
            linspace(-2.0, 2.0, samples)
                .into_par_iter()
                .map(|u| Ok(cusp_rows(u, &cs)))
                .collect()
        }
        Figure::Swallowtail => {
            let a2s = linspace(-2.0, 1.0, samples);
            linspace(-1.5, 1.5, samples)
                .into_par_iter()
                .map(|z| swallowtail_rows(z, &a2s))
                .collect()
        }
    };
    let mut rows = Vec::new();
    for chunk in per_u {
        rows.extend(chunk?);
    }
    if let Some(bad) = rows.iter().find(|row| row.residual.is_nan() || row.residual > GRID_TOL) {
        return Err(Error::CrossCheckMismatch(format!(
            "{} row at u = {}, v = {} has residual {:e}",
            bad.figure, bad.u, bad.v, bad.residual
        )));
    }
    Ok(rows)
}

pub fn write_csv<W: std::io::Write>(rows: &[GridRow], sink: W) -> Result<()> {
    let mut writer = csv::Writer::from_writer(sink);
    for row in rows {
        writer.serialize(row).map_err(|e| Error::Io(e.to_string()))?;
    }
    writer.flush().map_err(|e| Error::Io(e.to_string()))
}

#[derive(Clone, Debug, PartialEq)]
pub struct GridSummary {
    pub rows: usize,
    pub max_residual: f64,
}

/// Validates and writes a figure grid as CSV.
pub fn emit_grid(figure: Figure, samples: usize, out: &Path) -> Result<GridSummary> {
    let rows = grid_rows(figure, samples)?;
    let file = std::fs::File::create(out).map_err(|e| Error::Io(format!("{}: {e}", out.display())))?;
    write_csv(&rows, std::io::BufWriter::new(file))?;
    Ok(GridSummary {
        rows: rows.len(),
        max_residual: rows.iter().map(|row| row.residual).fold(0.0, f64::max),
    })
}

/// The cusp point at parameter `u`.
pub fn cusp_point(u: f64) -> (f64, f64) {
    (-3.0 * u * u, 2.0 * u * u * u)
}

/// Discriminant of a sampled swallowtail row, recomputed from its
/// coordinates.
pub fn swallowtail_discriminant(row: &GridRow) -> Result<f64> {
    let p = MonicPoly::real(&[0.0, row.x1, row.x2, row.x3.unwrap_or(0.0)])?;
    Ok(discriminant(&p)?.norm() / p.norm_inf().max(1.0).powi(6))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parabola_grid_is_exact() {
        let rows = grid_rows(Figure::ParabolaTangents, 5).unwrap();
        assert_eq!(rows.len(), 5 * 6);
        assert!(rows.iter().all(|row| row.residual == 0.0));
    }

    #[test]
    fn cusp_fixture() {
        assert_eq!(cusp_point(1.0), (-3.0, 2.0));
        let rows = grid_rows(Figure::CubicCuspTangents, 41).unwrap();
        assert!(rows
            .iter()
            .any(|row| row.kind == "curve" && row.u == 1.0 && row.x1 == -3.0 && row.x2 == 2.0));
    }

    #[test]
    fn swallowtail_rows_are_on_the_discriminant() {
        let rows = grid_rows(Figure::Swallowtail, 9).unwrap();
        assert_eq!(rows.len(), 81);
        assert!(rows.iter().all(|row| row.residual <= GRID_TOL));
    }

    #[test]
    fn names_round_trip() {
        for f in Figure::ALL {
            assert_eq!(f.name().parse::<Figure>().unwrap(), f);
        }
        assert!("tesseract".parse::<Figure>().is_err());
    }
}
