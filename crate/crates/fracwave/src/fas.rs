//! Nonlinear multigrid waveform relaxation (full approximation scheme).
//!
//! Solves the 1D porous-media model D_t^δ u = ∂_x(D(u) ∂_x u) + c ∂_x u + f.
//! The diffusion term uses midpoint-averaged coefficients
//! a_{n±1/2} = (D(u_{n±1}) + D(u_n))/2 and the convection term a first-order
//! upwind difference. The smoother is a nonlinear red-black Gauss-Seidel
//! waveform relaxation: each line is relaxed by marching through its time
//! levels and solving one scalar nonlinear equation per level (history and
//! neighbor lines frozen) with a safeguarded Newton iteration. Coarse grids
//! receive both the restricted defect and the injected approximation, with
//! the usual FAS correction of the coarse right-hand side.

use crate::error::{FracError, Result};
use crate::grid::{max_norm, SpaceTimeFunction, SpaceTimeGrid};
use crate::kernel::{l1_kernel, FractionalKernel};
use crate::problem::{ProblemKind, ProblemSpec, ScalarFn};
use crate::toeplitz::CirculantEmbedding;
use crate::wrmg::{ConvergenceHistory, CycleConfig};
use num_complex::Complex64;
use rayon::prelude::*;

/// The per-line nonlinear time-marching system: L1 temporal coefficients
/// plus the spatial closure evaluating the discrete diffusion/convection
/// term at a point given its neighbors.
pub struct NonlinearLineSystem<'a> {
    pub kernel: &'a FractionalKernel,
    pub h: f64,
    pub diffusion: &'a ScalarFn,
    pub convection: f64,
}

impl NonlinearLineSystem<'_> {
    /// Discrete spatial term at a point: midpoint-averaged diffusion plus
    /// upwind convection (backward difference, c ≥ 0).
    pub fn spatial_term(&self, u_left: f64, u_center: f64, u_right: f64) -> f64 {
        let d = &self.diffusion;
        let dc = d(u_center);
        let a_plus = 0.5 * (d(u_right) + dc);
        let a_minus = 0.5 * (d(u_left) + dc);
        let diff =
            (a_plus * (u_right - u_center) - a_minus * (u_center - u_left)) / (self.h * self.h);
        diff + self.convection * (u_right - u_center) / self.h
    }
}

struct LevelCtx<'a> {
    grid: SpaceTimeGrid,
    kernel: &'a FractionalKernel,
    kemb: &'a CirculantEmbedding,
    init_coeffs: &'a [f64],
    diffusion: &'a ScalarFn,
    convection: f64,
    /// Initial layer per spatial point; zero on coarse levels.
    u0: Vec<f64>,
}

impl LevelCtx<'_> {
    fn line_system(&self) -> NonlinearLineSystem<'_> {
        NonlinearLineSystem {
            kernel: self.kernel,
            h: self.grid.h,
            diffusion: self.diffusion,
            convection: self.convection,
        }
    }

    /// r = b − [T_M u − c·d_m·u₀ − spatial(u)] on this level.
    fn residual_into(&self, u: &[f64], b: &[f64], r: &mut [f64]) {
        let n = self.grid.n_interior;
        let m = self.grid.m_steps;
        let sys = self.line_system();
        r.par_chunks_mut(m).enumerate().for_each(|(s, r_line)| {
            let mut scratch: Vec<Complex64> = Vec::new();
            self.kemb
                .matvec_into(&u[s * m..(s + 1) * m], r_line, &mut scratch);
            for k in 0..m {
                let left = if s > 0 { u[(s - 1) * m + k] } else { 0.0 };
                let right = if s + 1 < n { u[(s + 1) * m + k] } else { 0.0 };
                let center = u[s * m + k];
                r_line[k] = b[s * m + k] - r_line[k]
                    + self.init_coeffs[k] * self.u0[s]
                    + sys.spatial_term(left, center, right);
            }
        });
    }

    /// One red-black nonlinear sweep (even interior indices first).
    fn smooth(&self, u: &mut [f64], b: &[f64]) -> Result<()> {
        let n = self.grid.n_interior;
        let m = self.grid.m_steps;
        for stage_parity in [0usize, 1] {
            let updates: std::result::Result<Vec<(usize, Vec<f64>)>, FracError> = (0..n)
                .into_par_iter()
                .filter(|s| s % 2 == stage_parity)
                .map(|s| {
                    let line = self.solve_line(s, u, b)?;
                    Ok((s, line))
                })
                .collect();
            for (s, line) in updates? {
                u[s * m..(s + 1) * m].copy_from_slice(&line);
            }
        }
        Ok(())
    }

    /// Solves the whole nonlinear time line at spatial index s by forward
    /// marching: at each level the history and the neighbor lines are
    /// frozen, leaving a scalar equation in u_{s,m}.
    fn solve_line(&self, s: usize, u: &[f64], b: &[f64]) -> Result<Vec<f64>> {
        let n = self.grid.n_interior;
        let m = self.grid.m_steps;
        let r = &self.kernel.r;
        let sys = self.line_system();
        let mut line = vec![0.0; m];
        for k in 0..m {
            // L1 history over the already-updated entries of this line
            let mut hist = 0.0;
            for j in 0..k {
                hist += r[k - j] * line[j];
            }
            let left = if s > 0 { u[(s - 1) * m + k] } else { 0.0 };
            let right = if s + 1 < n { u[(s + 1) * m + k] } else { 0.0 };
            let rhs = b[s * m + k] + self.init_coeffs[k] * self.u0[s] - hist;
            let phi = |x: f64| r[0] * x - sys.spatial_term(left, x, right) - rhs;
            let x0 = u[s * m + k];
            line[k] = solve_scalar(&phi, x0).map_err(|msg| FracError::ScalarSolve {
                line: s,
                level: k,
                msg,
            })?;
        }
        Ok(line)
    }
}

/// Safeguarded scalar Newton iteration with a bisection fallback.
///
/// Newton runs with a central-difference derivative until |Φ| ≤ 1e-12 or
/// the step stagnates at the f64 floor; if it fails to converge within 50
/// iterations or diverges, a sign-changing bracket is grown around the
/// starting point and resolved by bisection.
fn solve_scalar(phi: &dyn Fn(f64) -> f64, x0: f64) -> std::result::Result<f64, String> {
    const TOL: f64 = 1e-12;
    let mut x = x0;
    for _ in 0..50 {
        let f = phi(x);
        if !f.is_finite() {
            break;
        }
        if f.abs() <= TOL {
            return Ok(x);
        }
        let eps = 1e-7 * (1.0 + x.abs());
        let df = (phi(x + eps) - phi(x - eps)) / (2.0 * eps);
        if !df.is_finite() || df == 0.0 {
            break;
        }
        let x_next = x - f / df;
        if !x_next.is_finite() || (x_next - x).abs() > 1e8 * (1.0 + x.abs()) {
            break; // diverging; switch to the bracket fallback
        }
        if (x_next - x).abs() <= 1e-15 * (1.0 + x.abs()) {
            return Ok(x_next); // stagnation at the attainable floor
        }
        x = x_next;
    }
    bisect(phi, x0)
}

fn bisect(phi: &dyn Fn(f64) -> f64, x0: f64) -> std::result::Result<f64, String> {
    const TOL: f64 = 1e-12;
    let mut radius = 1.0 + x0.abs();
    let (mut lo, mut hi) = (x0, x0);
    let mut flo = phi(x0);
    let mut found = false;
    for _ in 0..64 {
        lo = x0 - radius;
        hi = x0 + radius;
        flo = phi(lo);
        let fhi = phi(hi);
        if flo.is_finite() && fhi.is_finite() && flo * fhi <= 0.0 {
            found = true;
            break;
        }
        radius *= 2.0;
    }
    if !found {
        return Err("no sign-changing bracket found".into());
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let fm = phi(mid);
        if fm.abs() <= TOL || (hi - lo).abs() <= 1e-15 * (1.0 + mid.abs()) {
            return Ok(mid);
        }
        if flo * fm <= 0.0 {
            hi = mid;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    Ok(0.5 * (lo + hi))
}

fn validate(problem: &ProblemSpec, kernel: &FractionalKernel, u: &SpaceTimeFunction) -> Result<()> {
    if problem.kind != ProblemKind::Nonlinear1d {
        return Err(FracError::Domain(
            "nonlinear operations require a nonlinear-1d problem".into(),
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

fn finest_ctx<'a>(
    problem: &'a ProblemSpec,
    kernel: &'a FractionalKernel,
    kemb: &'a CirculantEmbedding,
    init_coeffs: &'a [f64],
    u0: Vec<f64>,
) -> LevelCtx<'a> {
    LevelCtx {
        grid: problem.grid,
        kernel,
        kemb,
        init_coeffs,
        diffusion: problem.diffusion_coef.as_ref().expect("nonlinear kind"),
        convection: problem.convection,
        u0,
    }
}

/// Defect f − [D_M^δ u − ∂_x(D(u)∂_x u) − c ∂_x u] at every interior point.
pub fn nonlinear_residual(
    problem: &ProblemSpec,
    kernel: &FractionalKernel,
    u: &SpaceTimeFunction,
) -> Result<SpaceTimeFunction> {
    validate(problem, kernel, u)?;
    let kemb = CirculantEmbedding::from_first_col(&kernel.r);
    let init = kernel.initial_layer_coeffs();
    let ctx = finest_ctx(problem, kernel, &kemb, &init, u.initial_layer.clone());
    let f = SpaceTimeFunction::from_index_fn(&problem.grid, |s, k| problem.rhs_at(s, k));
    let mut r = SpaceTimeFunction::zeros(&problem.grid);
    ctx.residual_into(&u.values, &f.values, &mut r.values);
    Ok(r)
}

/// `sweeps` nonlinear red-black waveform sweeps on the finest grid. `rhs`
/// is the forcing term f sampled on the grid (the initial layer enters
/// through `state.initial_layer`).
pub fn nonlinear_smooth_red_black(
    problem: &ProblemSpec,
    kernel: &FractionalKernel,
    state: &mut SpaceTimeFunction,
    rhs: &SpaceTimeFunction,
    sweeps: usize,
) -> Result<()> {
    validate(problem, kernel, state)?;
    let kemb = CirculantEmbedding::from_first_col(&kernel.r);
    let init = kernel.initial_layer_coeffs();
    let ctx = finest_ctx(problem, kernel, &kemb, &init, state.initial_layer.clone());
    for _ in 0..sweeps {
        ctx.smooth(&mut state.values, &rhs.values)?;
    }
    Ok(())
}

/// Grid ladder for the FAS solver; the nonlinear operators are evaluated on
/// the fly on every level.
pub struct FasHierarchy {
    pub kernel: FractionalKernel,
    kemb: CirculantEmbedding,
    init_coeffs: Vec<f64>,
    grids: Vec<SpaceTimeGrid>,
}

impl FasHierarchy {
    pub fn build(problem: &ProblemSpec, coarsest_n: usize) -> Result<Self> {
        if problem.kind != ProblemKind::Nonlinear1d {
            return Err(FracError::Domain(
                "FAS requires the nonlinear-1d kind".into(),
            ));
        }
        let kernel = l1_kernel(problem.delta, problem.grid.tau, problem.grid.m_steps)?;
        let mut grids = vec![problem.grid];
        while grids.last().unwrap().n_interior > coarsest_n {
            grids.push(grids.last().unwrap().coarsen()?);
        }
        let kemb = CirculantEmbedding::from_first_col(&kernel.r);
        let init_coeffs = kernel.initial_layer_coeffs();
        Ok(FasHierarchy {
            kernel,
            kemb,
            init_coeffs,
            grids,
        })
    }

    fn ctx<'a>(&'a self, problem: &'a ProblemSpec, lvl: usize, u0: Vec<f64>) -> LevelCtx<'a> {
        LevelCtx {
            grid: self.grids[lvl],
            kernel: &self.kernel,
            kemb: &self.kemb,
            init_coeffs: &self.init_coeffs,
            diffusion: problem.diffusion_coef.as_ref().expect("nonlinear kind"),
            convection: problem.convection,
            u0,
        }
    }
}

fn restrict_full_weighting(n_fine: usize, m: usize, fine: &[f64]) -> Vec<f64> {
    let nc = (n_fine - 1) / 2;
    let mut out = vec![0.0; nc * m];
    crate::wrmg::restrict_raw_1d(n_fine, m, fine, &mut out);
    out
}

fn inject(n_fine: usize, m: usize, fine: &[f64]) -> Vec<f64> {
    let nc = (n_fine - 1) / 2;
    let mut out = vec![0.0; nc * m];
    for j in 0..nc {
        out[j * m..(j + 1) * m].copy_from_slice(&fine[(2 * j + 1) * m..(2 * j + 2) * m]);
    }
    out
}

fn fas_recurse(
    hierarchy: &FasHierarchy,
    problem: &ProblemSpec,
    lvl: usize,
    u: &mut Vec<f64>,
    b: &[f64],
    u0: &[f64],
    cfg: &CycleConfig,
) -> Result<()> {
    let ctx = hierarchy.ctx(problem, lvl, u0.to_vec());
    let m = ctx.grid.m_steps;
    if lvl + 1 == hierarchy.grids.len() {
        // coarsest level: relax the few remaining lines until the coarse
        // defect is negligible
        let scale = max_norm(b).max(1.0);
        let mut r = vec![0.0; u.len()];
        for _ in 0..100 {
            ctx.smooth(u, b)?;
            ctx.residual_into(u, b, &mut r);
            if max_norm(&r) <= 1e-13 * scale {
                break;
            }
        }
        return Ok(());
    }

    for _ in 0..cfg.nu1 {
        ctx.smooth(u, b)?;
    }

    let mut r = vec![0.0; u.len()];
    ctx.residual_into(u, b, &mut r);
    let n_fine = ctx.grid.n_interior;
    let rc = restrict_full_weighting(n_fine, m, &r);
    let uc_inj = inject(n_fine, m, u);

    // FAS coarse right-hand side b_c = N_c(û_c) + restricted defect;
    // residual_into with rhs rc computes rc − N_c(û), so flip around rc
    let coarse_u0 = vec![0.0; hierarchy.grids[lvl + 1].spatial_points()];
    let coarse_ctx = hierarchy.ctx(problem, lvl + 1, coarse_u0.clone());
    let mut bc = vec![0.0; rc.len()];
    coarse_ctx.residual_into(&uc_inj, &rc, &mut bc);
    for (bcv, rcv) in bc.iter_mut().zip(&rc) {
        *bcv = 2.0 * rcv - *bcv;
    }

    let mut uc = uc_inj.clone();
    fas_recurse(hierarchy, problem, lvl + 1, &mut uc, &bc, &coarse_u0, cfg)?;

    // correct by the prolonged coarse increment
    for (ucv, inj) in uc.iter_mut().zip(&uc_inj) {
        *ucv -= inj;
    }
    crate::wrmg::prolong_add_raw_1d(n_fine, m, &uc, u);

    for _ in 0..cfg.nu2 {
        ctx.smooth(u, b)?;
    }
    Ok(())
}

/// One FAS cycle on the finest grid (γ = 1).
pub fn fas_cycle(
    hierarchy: &FasHierarchy,
    problem: &ProblemSpec,
    state: &mut SpaceTimeFunction,
    rhs: &SpaceTimeFunction,
    config: &CycleConfig,
) -> Result<()> {
    config.validate()?;
    if !state.conforms_to(&problem.grid) || !rhs.conforms_to(&problem.grid) {
        return Err(FracError::Dimension(
            "state or rhs does not conform to the problem grid".into(),
        ));
    }
    let mut u = std::mem::take(&mut state.values);
    let u0 = state.initial_layer.clone();
    let res = fas_recurse(hierarchy, problem, 0, &mut u, &rhs.values, &u0, config);
    state.values = u;
    res
}

/// Solves the nonlinear problem by FAS waveform relaxation, stopping when
/// the initial residual has been reduced by `config.tol`.
pub fn solve(
    problem: &ProblemSpec,
    config: &CycleConfig,
) -> Result<(SpaceTimeFunction, ConvergenceHistory)> {
    if problem.kind != ProblemKind::Nonlinear1d {
        return Err(FracError::Domain(
            "fas::solve handles the nonlinear kind; use wrmg::solve otherwise".into(),
        ));
    }
    config.validate()?;
    let hierarchy = FasHierarchy::build(problem, config.coarsest_n)?;
    let grid = &problem.grid;
    let f = SpaceTimeFunction::from_index_fn(grid, |s, k| problem.rhs_at(s, k));

    let mut state = SpaceTimeFunction::zeros(grid);
    for s in 0..grid.spatial_points() {
        let g0 = problem.initial_at(s);
        state.initial_layer[s] = g0;
        state.line_mut(s).fill(g0);
    }

    let ctx = hierarchy.ctx(problem, 0, state.initial_layer.clone());
    let mut r = vec![0.0; state.values.len()];
    ctx.residual_into(&state.values, &f.values, &mut r);
    let res0 = max_norm(&r);
    let mut norms = vec![res0];
    let mut converged = res0 == 0.0;

    while !converged && norms.len() <= config.max_iters {
        fas_cycle(&hierarchy, problem, &mut state, &f, config)?;
        ctx.residual_into(&state.values, &f.values, &mut r);
        let res = max_norm(&r);
        norms.push(res);
        if res <= config.tol * res0 {
            converged = true;
        }
    }
    Ok((
        state,
        ConvergenceHistory {
            residual_norms: norms,
            converged,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator;
    use crate::problem::problems;
    use crate::wrmg;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;
    use std::sync::Arc;

    fn linear_as_nonlinear(delta: f64, n: usize, m: usize) -> (ProblemSpec, ProblemSpec) {
        // same problem in both kinds: D(u) = 1, c = 0, f = 1, g = 0
        let grid = SpaceTimeGrid::new_1d(1.0, n, 1.0, m).unwrap();
        let lin =
            ProblemSpec::linear_1d(grid, delta, Arc::new(|_, _| 1.0), Arc::new(|_| 0.0), None)
                .unwrap();
        let nonlin = ProblemSpec::nonlinear_1d(
            grid,
            delta,
            Arc::new(|_, _| 1.0),
            Arc::new(|_| 0.0),
            None,
            Arc::new(|_| 1.0),
            0.0,
        )
        .unwrap();
        (lin, nonlin)
    }

    #[test]
    fn reduces_to_linear_residual_for_unit_diffusion() {
        let mut rng = ChaCha8Rng::seed_from_u64(51);
        let (lin, nonlin) = linear_as_nonlinear(0.4, 7, 8);
        let kernel = l1_kernel(0.4, lin.grid.tau, 8).unwrap();
        let mut u = SpaceTimeFunction::zeros(&lin.grid);
        for v in u.values.iter_mut() {
            *v = rng.gen_range(-1.0..1.0);
        }
        let f = operator::sample_rhs(&lin);
        let r_lin = operator::residual(&lin, &kernel, &u, &f).unwrap();
        let r_non = nonlinear_residual(&nonlin, &kernel, &u).unwrap();
        for (a, b) in r_non.values.iter().zip(&r_lin.values) {
            assert!((a - b).abs() <= 1e-13 * b.abs().max(1.0), "{a} vs {b}");
        }
    }

    #[test]
    fn zero_state_unit_forcing_residual_is_one() {
        let p = problems::porous_media(0.7, 15, 8).unwrap();
        let kernel = l1_kernel(0.7, p.grid.tau, 8).unwrap();
        let u = SpaceTimeFunction::zeros(&p.grid);
        let r = nonlinear_residual(&p, &kernel, &u).unwrap();
        for v in &r.values {
            assert!((v - 1.0).abs() <= 1e-14);
        }
    }

    #[test]
    fn matches_pointwise_formula_oracle() {
        // direct evaluation of the discrete equations on a small grid
        let mut rng = ChaCha8Rng::seed_from_u64(52);
        let p = problems::porous_media(0.4, 4, 4).unwrap();
        let kernel = l1_kernel(0.4, p.grid.tau, 4).unwrap();
        let mut u = SpaceTimeFunction::zeros(&p.grid);
        for v in u.values.iter_mut() {
            *v = rng.gen_range(-1.0..1.0);
        }
        let r = nonlinear_residual(&p, &kernel, &u).unwrap();

        let h = p.grid.h;
        let d = |x: f64| 1.0 + x * x;
        for s in 0..4 {
            for k in 0..4 {
                let mut temporal = 0.0;
                for j in 0..=k {
                    temporal += kernel.r[k - j] * u.at(s, j);
                }
                let ul = if s > 0 { u.at(s - 1, k) } else { 0.0 };
                let ur = if s < 3 { u.at(s + 1, k) } else { 0.0 };
                let uc = u.at(s, k);
                let ap = 0.5 * (d(ur) + d(uc));
                let am = 0.5 * (d(ul) + d(uc));
                let spatial = (ap * (ur - uc) - am * (uc - ul)) / (h * h) + (uc - ul) / h;
                let want = 1.0 - temporal + spatial;
                let got = r.at(s, k);
                assert!(
                    (got - want).abs() <= 1e-13 * want.abs().max(1.0),
                    "{got} vs {want}"
                );
            }
        }
    }

    #[test]
    fn linear_coefficients_sweep_matches_linear_smoother() {
        let mut rng = ChaCha8Rng::seed_from_u64(53);
        let (lin, nonlin) = linear_as_nonlinear(0.5, 7, 8);
        let kernel = l1_kernel(0.5, lin.grid.tau, 8).unwrap();

        let mut u_non = SpaceTimeFunction::zeros(&lin.grid);
        for v in u_non.values.iter_mut() {
            *v = rng.gen_range(-1.0..1.0);
        }
        let f = operator::sample_rhs(&lin);
        let mut u_lin = u_non.values.clone();

        nonlinear_smooth_red_black(&nonlin, &kernel, &mut u_non, &f, 1).unwrap();

        let hierarchy = wrmg::GridHierarchy::build(&lin.grid, &kernel, 1).unwrap();
        wrmg::smooth_red_black_1d(hierarchy.finest(), &mut u_lin, &f.values, 1);

        for (a, b) in u_non.values.iter().zip(&u_lin) {
            assert!((a - b).abs() <= 1e-11, "{a} vs {b}");
        }
    }

    #[test]
    fn smoother_fixed_point_at_exact_discrete_solution() {
        // manufacture f so that a chosen u is the exact discrete solution
        let mut rng = ChaCha8Rng::seed_from_u64(54);
        let p = problems::porous_media(0.6, 7, 6).unwrap();
        let kernel = l1_kernel(0.6, p.grid.tau, 6).unwrap();
        let mut target = SpaceTimeFunction::zeros(&p.grid);
        for v in target.values.iter_mut() {
            *v = rng.gen_range(-0.5..0.5);
        }
        // f := N(target): the residual w.r.t. zero forcing, negated
        let zero_f = SpaceTimeFunction::zeros(&p.grid);
        let minus_n = {
            let kemb = CirculantEmbedding::from_first_col(&kernel.r);
            let init = kernel.initial_layer_coeffs();
            let ctx = finest_ctx(&p, &kernel, &kemb, &init, vec![0.0; 7]);
            let mut r = vec![0.0; target.values.len()];
            ctx.residual_into(&target.values, &zero_f.values, &mut r);
            r
        };
        let mut f = SpaceTimeFunction::zeros(&p.grid);
        for (fv, nv) in f.values.iter_mut().zip(&minus_n) {
            *fv = -nv;
        }
        let mut u = target.clone();
        nonlinear_smooth_red_black(&p, &kernel, &mut u, &f, 2).unwrap();
        for (a, b) in u.values.iter().zip(&target.values) {
            assert!((a - b).abs() <= 1e-10, "{a} vs {b}");
        }
    }

    #[test]
    fn single_line_march_matches_bisection_oracle() {
        // one spatial line, M = 3, D(u) = 1 + u²: compare the march against
        // a high-precision bisection-only oracle
        let grid = SpaceTimeGrid::new_1d(1.0, 1, 1.0, 3).unwrap();
        let p = ProblemSpec::nonlinear_1d(
            grid,
            0.5,
            Arc::new(|_, _| 1.0),
            Arc::new(|_| 0.0),
            None,
            Arc::new(|x| 1.0 + x * x),
            0.0,
        )
        .unwrap();
        let kernel = l1_kernel(0.5, grid.tau, 3).unwrap();
        let f = SpaceTimeFunction::from_index_fn(&grid, |_, _| 1.0);
        let mut u = SpaceTimeFunction::zeros(&grid);
        nonlinear_smooth_red_black(&p, &kernel, &mut u, &f, 1).unwrap();

        let h = grid.h;
        let d = |x: f64| 1.0 + x * x;
        let mut oracle = vec![0.0; 3];
        for k in 0..3 {
            let mut hist = 0.0;
            for j in 0..k {
                hist += kernel.r[k - j] * oracle[j];
            }
            let phi = |x: f64| {
                let ap = 0.5 * (d(0.0) + d(x));
                let am = ap;
                let spatial = (ap * (0.0 - x) - am * (x - 0.0)) / (h * h);
                kernel.r[0] * x + hist - spatial - 1.0
            };
            let (mut lo, mut hi) = (-10.0, 10.0);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if phi(lo) * phi(mid) <= 0.0 {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            oracle[k] = 0.5 * (lo + hi);
        }
        for (a, b) in u.line(0).iter().zip(&oracle) {
            assert!((a - b).abs() <= 1e-10, "{a} vs {b}");
        }
    }

    #[test]
    fn fas_on_linear_problem_matches_wrmg_iterates() {
        let (lin, nonlin) = linear_as_nonlinear(0.4, 31, 16);
        let cfg = CycleConfig::v_cycle(0, 1);
        let (_, hist_lin) = wrmg::solve(&lin, &cfg).unwrap();
        let (_, hist_non) = solve(&nonlin, &cfg).unwrap();
        assert!(hist_non.converged && hist_lin.converged);
        let diff = hist_lin.iterations() as i64 - hist_non.iterations() as i64;
        assert!(
            diff.abs() <= 1,
            "{} vs {}",
            hist_lin.iterations(),
            hist_non.iterations()
        );
        for (a, b) in hist_lin
            .residual_norms
            .iter()
            .zip(&hist_non.residual_norms)
            .take(5)
        {
            assert!((a - b).abs() <= 1e-9, "{a} vs {b}");
        }
    }

    #[test]
    fn porous_media_solve_converges() {
        let p = problems::porous_media(0.4, 31, 32).unwrap();
        let (u, hist) = solve(&p, &CycleConfig::v_cycle(0, 1)).unwrap();
        assert!(hist.converged, "history: {:?}", hist.residual_norms);
        assert!(hist.iterations() <= 15);
        // the moisture profile stays nonnegative
        assert!(u.values.iter().all(|&v| v >= -1e-12));
    }
}
