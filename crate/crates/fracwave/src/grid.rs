//! Uniform space-time grids and nodal functions on them.
//!
//! The spatial mesh has points x_n = n·h with h = L/(N+1); only the N
//! interior points per axis carry unknowns (homogeneous Dirichlet values on
//! the boundary are implicit). The temporal mesh has t_m = m·τ with τ = T/M,
//! and the initial layer t₀ is stored separately from the unknowns so a
//! space-time function holds exactly the N·M (or N²·M) solver degrees of
//! freedom.

use crate::error::{FracError, Result};

/// Number of spatial dimensions of a problem.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridDim {
    One,
    Two,
}

/// Uniform rectangular space-time mesh.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpaceTimeGrid {
    pub dim: GridDim,
    /// Spatial domain length L per axis.
    pub length: f64,
    /// Interior points N per axis.
    pub n_interior: usize,
    /// Mesh width h = L/(N+1).
    pub h: f64,
    /// Final time T.
    pub t_final: f64,
    /// Time levels M.
    pub m_steps: usize,
    /// Time step τ = T/M.
    pub tau: f64,
}

impl SpaceTimeGrid {
    pub fn new_1d(length: f64, n_interior: usize, t_final: f64, m_steps: usize) -> Result<Self> {
        Self::new(GridDim::One, length, n_interior, t_final, m_steps)
    }

    pub fn new_2d(length: f64, n_interior: usize, t_final: f64, m_steps: usize) -> Result<Self> {
        Self::new(GridDim::Two, length, n_interior, t_final, m_steps)
    }

    pub fn new(
        dim: GridDim,
        length: f64,
        n_interior: usize,
        t_final: f64,
        m_steps: usize,
    ) -> Result<Self> {
        if !(length > 0.0) || !(t_final > 0.0) || n_interior == 0 || m_steps == 0 {
            return Err(FracError::Domain(format!(
                "invalid grid: L = {length}, N = {n_interior}, T = {t_final}, M = {m_steps}"
            )));
        }
        Ok(SpaceTimeGrid {
            dim,
            length,
            n_interior,
            h: length / (n_interior as f64 + 1.0),
            t_final,
            m_steps,
            tau: t_final / m_steps as f64,
        })
    }

    /// Grid defined directly by its steps, used by the mode-analysis
    /// measurement runs where (h, τ) realize a target λ.
    pub fn from_steps(dim: GridDim, h: f64, n_interior: usize, tau: f64, m_steps: usize) -> Result<Self> {
        if !(h > 0.0) || !(tau > 0.0) || n_interior == 0 || m_steps == 0 {
            return Err(FracError::Domain(format!(
                "invalid grid steps: h = {h}, N = {n_interior}, tau = {tau}, M = {m_steps}"
            )));
        }
        Ok(SpaceTimeGrid {
            dim,
            length: h * (n_interior as f64 + 1.0),
            n_interior,
            h,
            t_final: tau * m_steps as f64,
            m_steps,
            tau,
        })
    }

    /// Interior coordinate x_{i+1} = (i+1)·h for 0-based interior index i.
    pub fn x(&self, i: usize) -> f64 {
        (i as f64 + 1.0) * self.h
    }

    /// Time level t_{m+1} = (m+1)·τ for 0-based level index m.
    pub fn t(&self, m: usize) -> f64 {
        (m as f64 + 1.0) * self.tau
    }

    /// Interior spatial points: N in 1D, N² in 2D.
    pub fn spatial_points(&self) -> usize {
        match self.dim {
            GridDim::One => self.n_interior,
            GridDim::Two => self.n_interior * self.n_interior,
        }
    }

    /// Total unknowns N·M resp. N²·M.
    pub fn unknowns(&self) -> usize {
        self.spatial_points() * self.m_steps
    }

    /// The coarse grid with doubled mesh width (N → (N−1)/2 interior points).
    pub fn coarsen(&self) -> Result<SpaceTimeGrid> {
        if self.n_interior < 3 || self.n_interior % 2 == 0 {
            return Err(FracError::Domain(format!(
                "grid with N = {} interior points cannot be coarsened",
                self.n_interior
            )));
        }
        Ok(SpaceTimeGrid {
            n_interior: (self.n_interior - 1) / 2,
            h: 2.0 * self.h,
            ..*self
        })
    }
}

/// Nodal values on the interior space-time points, plus the initial layer.
///
/// Values are stored line-major: the M time levels of one spatial point are
/// contiguous, which is the access pattern of every waveform operation.
/// In 2D the spatial index is s = l·N + n for the point (x_n, y_l).
#[derive(Debug, Clone)]
pub struct SpaceTimeFunction {
    pub grid: SpaceTimeGrid,
    /// values[s·M + m] = u at spatial index s, time level m+1.
    pub values: Vec<f64>,
    /// u at t₀ per spatial point (the known initial condition).
    pub initial_layer: Vec<f64>,
}

impl SpaceTimeFunction {
    pub fn zeros(grid: &SpaceTimeGrid) -> Self {
        SpaceTimeFunction {
            grid: *grid,
            values: vec![0.0; grid.unknowns()],
            initial_layer: vec![0.0; grid.spatial_points()],
        }
    }

    /// Fills values from a callback on (spatial index, time index).
    pub fn from_index_fn(grid: &SpaceTimeGrid, f: impl Fn(usize, usize) -> f64) -> Self {
        let m = grid.m_steps;
        let mut values = vec![0.0; grid.unknowns()];
        for s in 0..grid.spatial_points() {
            for k in 0..m {
                values[s * m + k] = f(s, k);
            }
        }
        SpaceTimeFunction {
            grid: *grid,
            values,
            initial_layer: vec![0.0; grid.spatial_points()],
        }
    }

    pub fn line(&self, s: usize) -> &[f64] {
        &self.values[s * self.grid.m_steps..(s + 1) * self.grid.m_steps]
    }

    pub fn line_mut(&mut self, s: usize) -> &mut [f64] {
        &mut self.values[s * self.grid.m_steps..(s + 1) * self.grid.m_steps]
    }

    pub fn at(&self, s: usize, m: usize) -> f64 {
        self.values[s * self.grid.m_steps + m]
    }

    /// Discrete max-norm over all interior space-time points.
    pub fn max_norm(&self) -> f64 {
        self.values.iter().fold(0.0, |a, &v| a.max(v.abs()))
    }

    pub fn conforms_to(&self, grid: &SpaceTimeGrid) -> bool {
        self.grid.dim == grid.dim
            && self.grid.n_interior == grid.n_interior
            && self.grid.m_steps == grid.m_steps
            && self.values.len() == grid.unknowns()
            && self.initial_layer.len() == grid.spatial_points()
    }
}

/// Max-norm of a raw value buffer.
pub(crate) fn max_norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |a, &x| a.max(x.abs()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn grid_spacing_matches_definition() {
        let g = SpaceTimeGrid::new_1d(std::f64::consts::PI, 127, 1.0, 128).unwrap();
        assert_relative_eq!(g.h, std::f64::consts::PI / 128.0, max_relative = 1e-15);
        assert_relative_eq!(g.tau, 1.0 / 128.0, max_relative = 1e-15);
        assert_relative_eq!(g.x(0), g.h, max_relative = 1e-15);
        assert_relative_eq!(g.t(127), 1.0, max_relative = 1e-15);
    }

    #[test]
    fn coarsen_halves_interior() {
        let g = SpaceTimeGrid::new_1d(1.0, 15, 1.0, 8).unwrap();
        let c = g.coarsen().unwrap();
        assert_eq!(c.n_interior, 7);
        assert_relative_eq!(c.h, 2.0 * g.h, max_relative = 1e-15);
        assert_eq!(c.m_steps, 8);
        assert!(SpaceTimeGrid::new_1d(1.0, 4, 1.0, 8).unwrap().coarsen().is_err());
    }

    #[test]
    fn function_layout_is_line_major() {
        let g = SpaceTimeGrid::new_2d(2.0, 3, 1.0, 4).unwrap();
        assert_eq!(g.spatial_points(), 9);
        let f = SpaceTimeFunction::from_index_fn(&g, |s, m| (s * 10 + m) as f64);
        assert_eq!(f.at(2, 3), 23.0);
        assert_eq!(f.line(5), &[50.0, 51.0, 52.0, 53.0]);
        assert_eq!(f.max_norm(), 83.0);
    }

    #[test]
    fn rejects_degenerate_grids() {
        assert!(SpaceTimeGrid::new_1d(0.0, 4, 1.0, 4).is_err());
        assert!(SpaceTimeGrid::new_1d(1.0, 0, 1.0, 4).is_err());
        assert!(SpaceTimeGrid::new_1d(1.0, 4, 1.0, 0).is_err());
    }
}
