//! The recursive multigrid cycle on raw level buffers.

use super::hierarchy::{GridHierarchy, Level};
use super::smoother::smooth;
use super::transfer::{prolong_add_1d, prolong_add_2d, restrict_1d, restrict_2d};
use super::CycleConfig;
use crate::error::{FracError, Result};
use crate::grid::{GridDim, SpaceTimeFunction};
use crate::toeplitz::CirculantEmbedding;
use num_complex::Complex64;
use rayon::prelude::*;

#[derive(Clone, Copy)]
pub(crate) struct CycleParams {
    pub nu1: usize,
    pub nu2: usize,
    pub gamma: usize,
}

impl From<&CycleConfig> for CycleParams {
    fn from(cfg: &CycleConfig) -> Self {
        CycleParams {
            nu1: cfg.nu1,
            nu2: cfg.nu2,
            gamma: cfg.cycle.gamma(),
        }
    }
}

/// Defect r = b − (T_M + A_h)·u on one level (no initial-layer term; the
/// finest-level right-hand side already carries it).
pub(crate) fn level_residual(
    level: &Level,
    kernel_emb: &CirculantEmbedding,
    u: &[f64],
    b: &[f64],
    r: &mut [f64],
) {
    let n = level.grid.n_interior;
    let m = level.grid.m_steps;
    let inv_h2 = 1.0 / (level.grid.h * level.grid.h);
    r.par_chunks_mut(m).enumerate().for_each(|(s, r_line)| {
        let mut scratch: Vec<Complex64> = Vec::new();
        kernel_emb.matvec_into(&u[s * m..(s + 1) * m], r_line, &mut scratch);
        // neighbor differences are taken before scaling by 1/h² so the
        // cancellation between nearly equal values stays exact; otherwise
        // the attainable residual floors at ε·‖u‖/h²
        match level.grid.dim {
            GridDim::One => {
                for k in 0..m {
                    let c = u[s * m + k];
                    let left = if s > 0 { u[(s - 1) * m + k] } else { 0.0 };
                    let right = if s + 1 < n { u[(s + 1) * m + k] } else { 0.0 };
                    let acc = (c - left) + (c - right);
                    r_line[k] = b[s * m + k] - r_line[k] - inv_h2 * acc;
                }
            }
            GridDim::Two => {
                let (xi, yi) = (s % n, s / n);
                for k in 0..m {
                    let c = u[s * m + k];
                    let left = if xi > 0 { u[(s - 1) * m + k] } else { 0.0 };
                    let right = if xi + 1 < n { u[(s + 1) * m + k] } else { 0.0 };
                    let down = if yi > 0 { u[(s - n) * m + k] } else { 0.0 };
                    let up = if yi + 1 < n { u[(s + n) * m + k] } else { 0.0 };
                    let acc = ((c - left) + (c - right)) + ((c - down) + (c - up));
                    r_line[k] = b[s * m + k] - r_line[k] - inv_h2 * acc;
                }
            }
        }
    });
}

/// One multigrid cycle u ← MG(u, b) starting at level `lvl`.
pub(crate) fn run_cycle(
    hierarchy: &GridHierarchy,
    lvl: usize,
    u: &mut Vec<f64>,
    b: &[f64],
    p: CycleParams,
) {
    let level = &hierarchy.levels[lvl];
    if let Some(direct) = &level.coarse {
        direct.solve(u, b);
        return;
    }
    let m = level.grid.m_steps;

    smooth(level, u, b, p.nu1);

    let mut r = vec![0.0; u.len()];
    level_residual(level, &hierarchy.kernel_embedding, u, b, &mut r);

    let coarse_grid = &hierarchy.levels[lvl + 1].grid;
    let mut rc = vec![0.0; coarse_grid.spatial_points() * m];
    match level.grid.dim {
        GridDim::One => restrict_1d(level.grid.n_interior, m, &r, &mut rc),
        GridDim::Two => restrict_2d(level.grid.n_interior, m, &r, &mut rc),
    }

    // γ cycles on the defect equation, continuing from the previous pass
    let mut ec = vec![0.0; rc.len()];
    for _ in 0..p.gamma {
        run_cycle(hierarchy, lvl + 1, &mut ec, &rc, p);
    }

    match level.grid.dim {
        GridDim::One => prolong_add_1d(level.grid.n_interior, m, &ec, u),
        GridDim::Two => prolong_add_2d(level.grid.n_interior, m, &ec, u),
    }

    smooth(level, u, b, p.nu2);
}

/// One multigrid waveform-relaxation cycle on the finest level.
///
/// `rhs` must contain the initial-layer contribution (see
/// [`crate::operator::assemble_rhs`]); coarse-level defect problems use zero
/// initial history.
pub fn wrmg_cycle(
    hierarchy: &GridHierarchy,
    state: &mut SpaceTimeFunction,
    rhs: &SpaceTimeFunction,
    config: &CycleConfig,
) -> Result<()> {
    config.validate()?;
    let grid = &hierarchy.finest().grid;
    if !state.conforms_to(grid) || !rhs.conforms_to(grid) {
        return Err(FracError::Dimension(
            "state or rhs does not conform to the hierarchy's finest grid".into(),
        ));
    }
    let mut u = std::mem::take(&mut state.values);
    run_cycle(hierarchy, 0, &mut u, &rhs.values, CycleParams::from(config));
    state.values = u;
    Ok(())
}
