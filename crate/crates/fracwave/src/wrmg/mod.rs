//! Multigrid waveform relaxation (WRMG).
//!
//! The solver treats each spatial grid point as one unknown *line in time*
//! and relaxes whole lines at once: a red-black Gauss-Seidel waveform
//! smoother solves, per line, the lower-triangular Toeplitz system
//! (T_M + (2d/h²)·I)·u = rhs with the neighbor coupling on the right-hand
//! side. Coarsening happens only in space — every level shares τ and M, and
//! the coarsest level is solved directly by block elimination with
//! per-line Toeplitz inverses.
//!
//! All per-level line matrices are inverted once at hierarchy construction;
//! a smoothing step then costs O(M log M) per line.

mod coarse;
mod cycle;
mod hierarchy;
mod measure;
mod smoother;
mod solve;
mod transfer;

pub use hierarchy::{GridHierarchy, Level};
pub use measure::{measured_asymptotic_factor, MeasureProtocol};
pub use solve::{solve, ConvergenceHistory};
pub use cycle::wrmg_cycle;
pub use smoother::{smooth_red_black_1d, smooth_red_black_2d};
pub use transfer::{prolong, restrict};
pub(crate) use transfer::{prolong_add_1d as prolong_add_raw_1d, restrict_1d as restrict_raw_1d};

use crate::error::{FracError, Result};

/// Cycle index γ: V-cycles visit each coarse level once, W-cycles twice.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CycleKind {
    V,
    W,
}

impl CycleKind {
    pub(crate) fn gamma(self) -> usize {
        match self {
            CycleKind::V => 1,
            CycleKind::W => 2,
        }
    }
}

/// Multigrid cycling parameters.
#[derive(Debug, Clone, Copy)]
pub struct CycleConfig {
    pub cycle: CycleKind,
    /// Pre-smoothing steps ν₁.
    pub nu1: usize,
    /// Post-smoothing steps ν₂.
    pub nu2: usize,
    /// Residual reduction factor for the stopping test.
    pub tol: f64,
    pub max_iters: usize,
    /// Interior points per axis at which coarsening stops.
    pub coarsest_n: usize,
}

impl CycleConfig {
    pub fn new(
        cycle: CycleKind,
        nu1: usize,
        nu2: usize,
        tol: f64,
        max_iters: usize,
        coarsest_n: usize,
    ) -> Result<Self> {
        let cfg = CycleConfig {
            cycle,
            nu1,
            nu2,
            tol,
            max_iters,
            coarsest_n,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.nu1 + self.nu2 == 0 {
            return Err(FracError::Domain("nu1 + nu2 must be at least 1".into()));
        }
        if !(self.tol > 0.0 && self.tol <= 1.0) {
            return Err(FracError::Domain(format!(
                "tolerance must lie in (0, 1], got {}",
                self.tol
            )));
        }
        if self.coarsest_n == 0 {
            return Err(FracError::Domain("coarsest_n must be at least 1".into()));
        }
        Ok(())
    }

    /// V(ν₁, ν₂) with the solver defaults: reduce the initial residual by
    /// 1e-10 within 100 iterations, coarsening all the way down to a single
    /// interior point per axis.
    pub fn v_cycle(nu1: usize, nu2: usize) -> Self {
        CycleConfig {
            cycle: CycleKind::V,
            nu1,
            nu2,
            tol: 1e-10,
            max_iters: 100,
            coarsest_n: 1,
        }
    }

    pub fn w_cycle(nu1: usize, nu2: usize) -> Self {
        CycleConfig {
            cycle: CycleKind::W,
            ..Self::v_cycle(nu1, nu2)
        }
    }
}
