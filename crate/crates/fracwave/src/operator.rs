//! The discrete space-time operator of the linear model problems.
//!
//! Acting on the unknowns u_1..u_M of one spatial line, the temporal part is
//! the lower-triangular Toeplitz matvec T_M·u minus the initial-layer
//! contribution c·d_m·u₀; the spatial part applies the central-difference
//! Laplacian per time level. In Kronecker form the operator on the whole
//! space-time vector is T_M ⊗ I + I ⊗ A_h (up to the ordering of indices).

use crate::error::{FracError, Result};
use crate::grid::{GridDim, SpaceTimeFunction};
use crate::kernel::FractionalKernel;
use crate::problem::ProblemSpec;
use crate::toeplitz::CirculantEmbedding;
use num_complex::Complex64;
use rayon::prelude::*;

fn validate(problem: &ProblemSpec, kernel: &FractionalKernel, u: &SpaceTimeFunction) -> Result<()> {
    if !problem.is_linear() {
        return Err(FracError::Domain(
            "apply_space_time_operator handles the linear kinds only".into(),
        ));
    }
    if !kernel.matches(problem.delta, problem.grid.tau, problem.grid.m_steps) {
        return Err(FracError::Dimension(
            "kernel does not match the problem's (delta, tau, M)".into(),
        ));
    }
    if !u.conforms_to(&problem.grid) {
        return Err(FracError::Dimension(
            "space-time function does not conform to the problem grid".into(),
        ));
    }
    Ok(())
}

/// Applies (T_M ⊗ I + I ⊗ A_h) to `u`, folding in the initial-layer term
/// −c·d_m·u₀ of the L1 scheme.
pub fn apply_space_time_operator(
    problem: &ProblemSpec,
    kernel: &FractionalKernel,
    u: &SpaceTimeFunction,
) -> Result<SpaceTimeFunction> {
    validate(problem, kernel, u)?;
    let grid = &problem.grid;
    let m = grid.m_steps;
    let n = grid.n_interior;
    let inv_h2 = 1.0 / (grid.h * grid.h);
    let emb = CirculantEmbedding::from_first_col(&kernel.r);
    let init = kernel.initial_layer_coeffs();

    let mut out = SpaceTimeFunction::zeros(grid);
    out.values
        .par_chunks_mut(m)
        .enumerate()
        .for_each(|(s, line_out)| {
            let mut scratch: Vec<Complex64> = Vec::with_capacity(2 * m);
            emb.matvec_into(u.line(s), line_out, &mut scratch);
            let u0 = u.initial_layer[s];
            if u0 != 0.0 {
                for (k, c) in init.iter().enumerate() {
                    line_out[k] -= c * u0;
                }
            }
            // differences first, then the 1/h² scaling (keeps the smooth-mode
            // cancellation exact; see wrmg::cycle::level_residual)
            match grid.dim {
                GridDim::One => {
                    for k in 0..m {
                        let c = u.at(s, k);
                        let left = if s > 0 { u.at(s - 1, k) } else { 0.0 };
                        let right = if s + 1 < n { u.at(s + 1, k) } else { 0.0 };
                        line_out[k] += inv_h2 * ((c - left) + (c - right));
                    }
                }
                GridDim::Two => {
                    let (xi, yi) = (s % n, s / n);
                    for k in 0..m {
                        let c = u.at(s, k);
                        let left = if xi > 0 { u.at(s - 1, k) } else { 0.0 };
                        let right = if xi + 1 < n { u.at(s + 1, k) } else { 0.0 };
                        let down = if yi > 0 { u.at(s - n, k) } else { 0.0 };
                        let up = if yi + 1 < n { u.at(s + n, k) } else { 0.0 };
                        line_out[k] += inv_h2 * (((c - left) + (c - right)) + ((c - down) + (c - up)));
                    }
                }
            }
        });
    Ok(out)
}

/// Defect f − (T_M ⊗ I + I ⊗ A_h) u.
pub fn residual(
    problem: &ProblemSpec,
    kernel: &FractionalKernel,
    u: &SpaceTimeFunction,
    f: &SpaceTimeFunction,
) -> Result<SpaceTimeFunction> {
    if !f.conforms_to(&problem.grid) {
        return Err(FracError::Dimension(
            "right-hand side does not conform to the problem grid".into(),
        ));
    }
    let mut r = apply_space_time_operator(problem, kernel, u)?;
    for (rv, fv) in r.values.iter_mut().zip(&f.values) {
        *rv = fv - *rv;
    }
    Ok(r)
}

/// Samples the problem's forcing term into a space-time function (no
/// initial-layer contribution; see [`assemble_rhs`] for the solver input).
pub fn sample_rhs(problem: &ProblemSpec) -> SpaceTimeFunction {
    SpaceTimeFunction::from_index_fn(&problem.grid, |s, k| problem.rhs_at(s, k))
}

/// Right-hand side of the space-time system in the unknowns u_1..u_M:
/// the forcing f plus the initial-layer term c·d_m·g moved to the right.
pub fn assemble_rhs(problem: &ProblemSpec, kernel: &FractionalKernel) -> SpaceTimeFunction {
    let init = kernel.initial_layer_coeffs();
    let mut b = SpaceTimeFunction::from_index_fn(&problem.grid, |s, k| problem.rhs_at(s, k));
    let m = problem.grid.m_steps;
    for s in 0..problem.grid.spatial_points() {
        let g = problem.initial_at(s);
        if g != 0.0 {
            let line = b.line_mut(s);
            for k in 0..m {
                line[k] += init[k] * g;
            }
        }
        b.initial_layer[s] = g;
    }
    b
}
