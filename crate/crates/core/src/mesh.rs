//! Periodic grid sampling of the immersions with OBJ and CSV writers.

use std::f64::consts::TAU;
use std::io::Write;

use crate::catalog::fmt_f64;
use crate::error::{Error, Result};
use crate::surfaces::{AmbientPoint, GeneralizedImmersion, Immersion, LawsonPair, LawsonTau};

pub const MIN_RESOLUTION: usize = 4;

/// Which immersion to sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MeshFamily {
    Tau(LawsonTau),
    Bipolar(LawsonPair),
    Generalized(GeneralizedImmersion),
}

impl MeshFamily {
    pub fn immersion(&self) -> &dyn Immersion {
        match self {
            MeshFamily::Tau(t) => t,
            MeshFamily::Bipolar(p) => p,
            MeshFamily::Generalized(g) => g,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MeshSample {
    pub x: f64,
    pub y: f64,
    pub point: AmbientPoint,
}

/// Vertices on `[0,2π)²`, row-major in `y` then `x` (index `j·nx + i`).
#[derive(Debug, Clone, PartialEq)]
pub struct Mesh {
    pub nx: usize,
    pub ny: usize,
    pub dim: usize,
    pub samples: Vec<MeshSample>,
}

pub fn sample_grid(s: &dyn Immersion, nx: usize, ny: usize) -> Result<Mesh> {
    if nx < MIN_RESOLUTION || ny < MIN_RESOLUTION {
        return Err(Error::InvalidParams(format!(
            "mesh resolution must be at least {MIN_RESOLUTION} (got {nx}x{ny})"
        )));
    }
    let mut samples = Vec::with_capacity(nx * ny);
    for j in 0..ny {
        let y = TAU * j as f64 / ny as f64;
        for i in 0..nx {
            let x = TAU * i as f64 / nx as f64;
            samples.push(MeshSample {
                x,
                y,
                point: s.point(x, y)?,
            });
        }
    }
    Ok(Mesh {
        nx,
        ny,
        dim: s.ambient_dim(),
        samples,
    })
}

impl Mesh {
    /// Two triangles per grid cell, wrapping in both directions (1-based).
    pub fn triangles(&self) -> Vec<[usize; 3]> {
        let idx = |i: usize, j: usize| (j % self.ny) * self.nx + (i % self.nx) + 1;
        let mut out = Vec::with_capacity(2 * self.nx * self.ny);
        for j in 0..self.ny {
            for i in 0..self.nx {
                let (v00, v10, v11, v01) =
                    (idx(i, j), idx(i + 1, j), idx(i + 1, j + 1), idx(i, j + 1));
                out.push([v00, v10, v11]);
                out.push([v00, v11, v01]);
            }
        }
        out
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        let cols: Vec<String> = (1..=self.dim).map(|k| format!("c{k}")).collect();
        writeln!(w, "x_param,y_param,{}", cols.join(","))?;
        for s in &self.samples {
            let coords: Vec<String> = s.point.as_slice().iter().map(|&c| fmt_f64(c)).collect();
            writeln!(w, "{},{},{}", fmt_f64(s.x), fmt_f64(s.y), coords.join(","))?;
        }
        Ok(())
    }

    /// First three ambient coordinates as the vertex, the rest as a comment.
    pub fn write_obj<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(
            w,
            "# {}x{} periodic grid, ambient dimension {}",
            self.nx, self.ny, self.dim
        )?;
        for s in &self.samples {
            let c = s.point.as_slice();
            write!(w, "v {} {} {}", fmt_f64(c[0]), fmt_f64(c[1]), fmt_f64(c[2]))?;
            if c.len() > 3 {
                let rest: Vec<String> = c[3..].iter().map(|&v| fmt_f64(v)).collect();
                write!(w, " # {}", rest.join(" "))?;
            }
            writeln!(w)?;
        }
        for [a, b, c] in self.triangles() {
            writeln!(w, "f {a} {b} {c}")?;
        }
        Ok(())
    }
}
