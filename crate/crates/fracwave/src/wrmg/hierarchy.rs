//! Grid hierarchy with per-level cached line-matrix inverses.

use super::coarse::CoarseSolver;
use crate::error::{FracError, Result};
use crate::grid::{GridDim, SpaceTimeGrid};
use crate::kernel::FractionalKernel;
use crate::toeplitz::{
    invert_first_column, ring_shift, CirculantEmbedding, LowerToeplitz, DEFAULT_INVERSION_BASE,
};

/// One level of the hierarchy: its grid, the diagonal shift 2d/h² of the
/// line matrix T_M + shift·I, and the precomputed inverse first column.
#[derive(Debug)]
pub struct Level {
    pub grid: SpaceTimeGrid,
    /// 2/h² in 1D, 4/h² in 2D — the spatial diagonal folded into each line.
    pub shift: f64,
    /// Embedding of the inverse of the line matrix; one fast matvec per
    /// line solve.
    pub line_inverse: CirculantEmbedding,
    /// Embedding of T_M itself, used by per-line defect evaluations.
    pub kernel_embedding: CirculantEmbedding,
    pub(crate) coarse: Option<CoarseSolver>,
}

impl Level {
    pub fn is_coarsest(&self) -> bool {
        self.coarse.is_some()
    }
}

/// Levels ordered fine to coarse, all sharing (τ, M) and the kernel.
#[derive(Debug)]
pub struct GridHierarchy {
    pub kernel: FractionalKernel,
    /// Embedding of T_M itself; used by defect computations on every level.
    pub kernel_embedding: CirculantEmbedding,
    pub levels: Vec<Level>,
}

impl GridHierarchy {
    /// Builds the hierarchy below `grid`, stopping once a level has at most
    /// `coarsest_n` interior points per axis; that level gets the direct
    /// block-elimination solver.
    pub fn build(grid: &SpaceTimeGrid, kernel: &FractionalKernel, coarsest_n: usize) -> Result<Self> {
        if !kernel.matches(kernel.delta, grid.tau, grid.m_steps) {
            return Err(FracError::Dimension(
                "kernel (tau, M) does not match the grid".into(),
            ));
        }
        if coarsest_n == 0 {
            return Err(FracError::Domain("coarsest_n must be at least 1".into()));
        }
        let kernel_embedding = CirculantEmbedding::from_first_col(&kernel.r);
        let mut levels = Vec::new();
        let mut g = *grid;
        loop {
            let shift = line_shift(&g);
            let col = ring_shift(&kernel.r, shift);
            let inv = invert_first_column(&LowerToeplitz::new(col), DEFAULT_INVERSION_BASE)?;
            let coarsest = g.n_interior <= coarsest_n;
            let coarse = if coarsest {
                Some(CoarseSolver::build(&g, kernel)?)
            } else {
                None
            };
            levels.push(Level {
                grid: g,
                shift,
                line_inverse: CirculantEmbedding::from_first_col(&inv),
                kernel_embedding: kernel_embedding.clone(),
                coarse,
            });
            if coarsest {
                break;
            }
            g = g.coarsen()?;
        }
        Ok(GridHierarchy {
            kernel: kernel.clone(),
            kernel_embedding,
            levels,
        })
    }

    pub fn finest(&self) -> &Level {
        &self.levels[0]
    }
}

pub(crate) fn line_shift(grid: &SpaceTimeGrid) -> f64 {
    let d = match grid.dim {
        GridDim::One => 2.0,
        GridDim::Two => 4.0,
    };
    d / (grid.h * grid.h)
}
