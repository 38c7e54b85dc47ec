//! Solver driver: iterate cycles until the initial residual is reduced by
//! the configured factor.

use super::cycle::{level_residual, run_cycle, CycleParams};
use super::hierarchy::GridHierarchy;
use super::CycleConfig;
use crate::error::{FracError, Result};
use crate::grid::{max_norm, SpaceTimeFunction};
use crate::kernel::l1_kernel;
use crate::operator::assemble_rhs;
use crate::problem::ProblemSpec;

/// Per-iteration residual max-norms of a solver run.
#[derive(Debug, Clone)]
pub struct ConvergenceHistory {
    /// ‖res₀‖, ‖res₁‖, …; one entry per completed cycle plus the initial one.
    pub residual_norms: Vec<f64>,
    pub converged: bool,
}

impl ConvergenceHistory {
    pub fn iterations(&self) -> usize {
        self.residual_norms.len() - 1
    }

    /// Reduction factors ‖res_k‖/‖res_{k−1}‖.
    pub fn factors(&self) -> Vec<f64> {
        self.residual_norms
            .windows(2)
            .map(|w| if w[0] > 0.0 { w[1] / w[0] } else { 0.0 })
            .collect()
    }

    /// Geometric mean of the reduction factors after the first iteration
    /// (the first factor alone if only one iteration ran).
    pub fn mean_factor(&self) -> Option<f64> {
        let f = self.factors();
        match f.len() {
            0 => None,
            1 => Some(f[0]),
            n => {
                let first = self.residual_norms[1];
                let last = *self.residual_norms.last().unwrap();
                if first > 0.0 {
                    Some((last / first).powf(1.0 / (n as f64 - 1.0)))
                } else {
                    Some(0.0)
                }
            }
        }
    }
}

/// Solves a linear problem by multigrid waveform relaxation.
///
/// The initial iterate is the constant-in-time extension of the initial
/// condition. Iteration stops once ‖res_k‖_∞ ≤ tol·‖res₀‖_∞ or after
/// `max_iters` cycles; non-convergence is flagged on the history rather
/// than reported as an error.
pub fn solve(
    problem: &ProblemSpec,
    config: &CycleConfig,
) -> Result<(SpaceTimeFunction, ConvergenceHistory)> {
    if !problem.is_linear() {
        return Err(FracError::Domain(
            "wrmg::solve handles linear problems; use fas::solve for the nonlinear kind".into(),
        ));
    }
    config.validate()?;
    let grid = &problem.grid;
    let kernel = l1_kernel(problem.delta, grid.tau, grid.m_steps)?;
    let hierarchy = GridHierarchy::build(grid, &kernel, config.coarsest_n)?;
    let b = assemble_rhs(problem, &kernel);

    // u⁰(t) = g: constant-in-time initial approximation
    let mut state = SpaceTimeFunction::zeros(grid);
    for s in 0..grid.spatial_points() {
        let g0 = problem.initial_at(s);
        state.initial_layer[s] = g0;
        state.line_mut(s).fill(g0);
    }

    let history = iterate(&hierarchy, &mut state.values, &b.values, config);
    Ok((state, history))
}

pub(crate) fn iterate(
    hierarchy: &GridHierarchy,
    u: &mut Vec<f64>,
    b: &[f64],
    config: &CycleConfig,
) -> ConvergenceHistory {
    let finest = hierarchy.finest();
    let params = CycleParams::from(config);
    let mut r = vec![0.0; u.len()];
    level_residual(finest, &hierarchy.kernel_embedding, u, b, &mut r);
    let res0 = max_norm(&r);
    let mut norms = vec![res0];
    let mut converged = res0 <= config.tol * res0 || res0 == 0.0;

    while !converged && norms.len() <= config.max_iters {
        run_cycle(hierarchy, 0, u, b, params);
        level_residual(finest, &hierarchy.kernel_embedding, u, b, &mut r);
        let res = max_norm(&r);
        norms.push(res);
        if res <= config.tol * res0 {
            converged = true;
        }
    }
    ConvergenceHistory {
        residual_norms: norms,
        converged,
    }
}
