//! Problem definitions: domain, data callbacks and the built-in test cases.

use crate::error::{FracError, Result};
use crate::grid::{GridDim, SpaceTimeGrid};
use crate::special::{gamma_fn, mittag_leffler};
use std::sync::Arc;

/// Callback of (x, t) in 1D.
pub type Fn1d = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;
/// Callback of (x, y, t) in 2D.
pub type Fn2d = Arc<dyn Fn(f64, f64, f64) -> f64 + Send + Sync>;
/// Scalar coefficient callback, e.g. D(u).
pub type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProblemKind {
    Linear1d,
    Linear2d,
    Nonlinear1d,
}

/// A time-fractional diffusion problem on a uniform space-time grid.
///
/// Linear kinds discretize D_t^δ u − Δu = f; the nonlinear kind discretizes
/// D_t^δ u = ∂_x(D(u) ∂_x u) + c ∂_x u + f. Boundary values are homogeneous
/// Dirichlet, the initial condition is `initial`.
#[derive(Clone)]
pub struct ProblemSpec {
    pub grid: SpaceTimeGrid,
    pub delta: f64,
    pub kind: ProblemKind,
    rhs_1d: Option<Fn1d>,
    rhs_2d: Option<Fn2d>,
    initial_1d: Option<Arc<dyn Fn(f64) -> f64 + Send + Sync>>,
    initial_2d: Option<Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>>,
    exact_1d: Option<Fn1d>,
    exact_2d: Option<Fn2d>,
    /// Diffusion coefficient D(u); present exactly for the nonlinear kind.
    pub diffusion_coef: Option<ScalarFn>,
    /// Convection speed c of the nonlinear model.
    pub convection: f64,
}

impl std::fmt::Debug for ProblemSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ProblemSpec")
            .field("grid", &self.grid)
            .field("delta", &self.delta)
            .field("kind", &self.kind)
            .field("convection", &self.convection)
            .finish()
    }
}

fn check_delta(delta: f64) -> Result<()> {
    if !(delta > 0.0 && delta <= 1.0) {
        return Err(FracError::Domain(format!(
            "fractional order must lie in (0, 1], got {delta}"
        )));
    }
    Ok(())
}

impl ProblemSpec {
    pub fn linear_1d(
        grid: SpaceTimeGrid,
        delta: f64,
        rhs: Fn1d,
        initial: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
        exact: Option<Fn1d>,
    ) -> Result<Self> {
        check_delta(delta)?;
        if grid.dim != GridDim::One {
            return Err(FracError::Dimension("linear_1d requires a 1D grid".into()));
        }
        Ok(ProblemSpec {
            grid,
            delta,
            kind: ProblemKind::Linear1d,
            rhs_1d: Some(rhs),
            rhs_2d: None,
            initial_1d: Some(initial),
            initial_2d: None,
            exact_1d: exact,
            exact_2d: None,
            diffusion_coef: None,
            convection: 0.0,
        })
    }

    pub fn linear_2d(
        grid: SpaceTimeGrid,
        delta: f64,
        rhs: Fn2d,
        initial: Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>,
        exact: Option<Fn2d>,
    ) -> Result<Self> {
        check_delta(delta)?;
        if grid.dim != GridDim::Two {
            return Err(FracError::Dimension("linear_2d requires a 2D grid".into()));
        }
        Ok(ProblemSpec {
            grid,
            delta,
            kind: ProblemKind::Linear2d,
            rhs_1d: None,
            rhs_2d: Some(rhs),
            initial_1d: None,
            initial_2d: Some(initial),
            exact_1d: None,
            exact_2d: exact,
            diffusion_coef: None,
            convection: 0.0,
        })
    }

    pub fn nonlinear_1d(
        grid: SpaceTimeGrid,
        delta: f64,
        rhs: Fn1d,
        initial: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
        exact: Option<Fn1d>,
        diffusion_coef: ScalarFn,
        convection: f64,
    ) -> Result<Self> {
        check_delta(delta)?;
        if grid.dim != GridDim::One {
            return Err(FracError::Dimension(
                "nonlinear_1d requires a 1D grid".into(),
            ));
        }
        Ok(ProblemSpec {
            grid,
            delta,
            kind: ProblemKind::Nonlinear1d,
            rhs_1d: Some(rhs),
            rhs_2d: None,
            initial_1d: Some(initial),
            initial_2d: None,
            exact_1d: exact,
            exact_2d: None,
            diffusion_coef: Some(diffusion_coef),
            convection,
        })
    }

    pub fn is_linear(&self) -> bool {
        self.kind != ProblemKind::Nonlinear1d
    }

    pub fn has_exact(&self) -> bool {
        self.exact_1d.is_some() || self.exact_2d.is_some()
    }

    /// Right-hand side at spatial index s, time index m.
    pub fn rhs_at(&self, s: usize, m: usize) -> f64 {
        let t = self.grid.t(m);
        match self.grid.dim {
            GridDim::One => (self.rhs_1d.as_ref().expect("1d rhs"))(self.grid.x(s), t),
            GridDim::Two => {
                let n = s % self.grid.n_interior;
                let l = s / self.grid.n_interior;
                (self.rhs_2d.as_ref().expect("2d rhs"))(self.grid.x(n), self.grid.x(l), t)
            }
        }
    }

    /// Initial condition at spatial index s.
    pub fn initial_at(&self, s: usize) -> f64 {
        match self.grid.dim {
            GridDim::One => (self.initial_1d.as_ref().expect("1d initial"))(self.grid.x(s)),
            GridDim::Two => {
                let n = s % self.grid.n_interior;
                let l = s / self.grid.n_interior;
                (self.initial_2d.as_ref().expect("2d initial"))(self.grid.x(n), self.grid.x(l))
            }
        }
    }

    /// Exact solution at spatial index s, time index m, when available.
    pub fn exact_at(&self, s: usize, m: usize) -> Option<f64> {
        let t = self.grid.t(m);
        match self.grid.dim {
            GridDim::One => self.exact_1d.as_ref().map(|f| f(self.grid.x(s), t)),
            GridDim::Two => self.exact_2d.as_ref().map(|f| {
                let n = s % self.grid.n_interior;
                let l = s / self.grid.n_interior;
                f(self.grid.x(n), self.grid.x(l), t)
            }),
        }
    }
}

/// The built-in test problems driven by the experiment harness.
pub mod problems {
    use super::*;

    /// 1D problem on [0, π] × [0, 1] with f = 0, g = sin x and separable
    /// exact solution E_δ(−t^δ)·sin x. Its solution has a boundary layer at
    /// t = 0 for small δ.
    pub fn mittag_leffler_1d(delta: f64, n_interior: usize, m_steps: usize) -> Result<ProblemSpec> {
        let grid = SpaceTimeGrid::new_1d(std::f64::consts::PI, n_interior, 1.0, m_steps)?;
        let exact: Fn1d = Arc::new(move |x: f64, t: f64| {
            mittag_leffler(delta, -t.powf(delta)).expect("E_delta argument in range") * x.sin()
        });
        ProblemSpec::linear_1d(
            grid,
            delta,
            Arc::new(|_, _| 0.0),
            Arc::new(|x: f64| x.sin()),
            Some(exact),
        )
    }

    /// 2D problem on (0, 2)² × [0, 2] with zero initial data and a
    /// manufactured right-hand side so that u = t²·sin(πx/2)·sin(πy/2).
    pub fn manufactured_2d(delta: f64, n_interior: usize, m_steps: usize) -> Result<ProblemSpec> {
        let grid = SpaceTimeGrid::new_2d(2.0, n_interior, 2.0, m_steps)?;
        let g3 = gamma_fn(3.0 - delta)?;
        let pi2 = std::f64::consts::PI / 2.0;
        let rhs: Fn2d = Arc::new(move |x: f64, y: f64, t: f64| {
            (2.0 * t.powf(2.0 - delta) / g3
                + (1.0 + std::f64::consts::PI * std::f64::consts::PI / 2.0) * t * t)
                * (pi2 * x).sin()
                * (pi2 * y).sin()
        });
        let exact: Fn2d =
            Arc::new(move |x: f64, y: f64, t: f64| t * t * (pi2 * x).sin() * (pi2 * y).sin());
        ProblemSpec::linear_2d(grid, delta, rhs, Arc::new(|_, _| 0.0), Some(exact))
    }

    /// Nonlinear porous-media model on [0, 1] × [0, 1]:
    /// D_t^δ u = ∂_x((1+u²) ∂_x u) + ∂_x u + 1, zero initial data.
    pub fn porous_media(delta: f64, n_interior: usize, m_steps: usize) -> Result<ProblemSpec> {
        let grid = SpaceTimeGrid::new_1d(1.0, n_interior, 1.0, m_steps)?;
        ProblemSpec::nonlinear_1d(
            grid,
            delta,
            Arc::new(|_, _| 1.0),
            Arc::new(|_| 0.0),
            None,
            Arc::new(|u: f64| 1.0 + u * u),
            1.0,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn constructors_enforce_dimension() {
        let g1 = SpaceTimeGrid::new_1d(1.0, 3, 1.0, 4).unwrap();
        let g2 = SpaceTimeGrid::new_2d(1.0, 3, 1.0, 4).unwrap();
        assert!(ProblemSpec::linear_1d(
            g2,
            0.5,
            Arc::new(|_, _| 0.0),
            Arc::new(|_| 0.0),
            None
        )
        .is_err());
        assert!(ProblemSpec::linear_2d(
            g1,
            0.5,
            Arc::new(|_, _, _| 0.0),
            Arc::new(|_, _| 0.0),
            None
        )
        .is_err());
    }

    #[test]
    fn nonlinear_kind_has_coefficient_and_linear_does_not() {
        let p = problems::porous_media(0.4, 31, 32).unwrap();
        assert!(p.diffusion_coef.is_some());
        assert_eq!(p.kind, ProblemKind::Nonlinear1d);
        let q = problems::mittag_leffler_1d(0.4, 31, 32).unwrap();
        assert!(q.diffusion_coef.is_none());
    }

    #[test]
    fn manufactured_2d_exact_value() {
        let p = problems::manufactured_2d(0.7, 7, 8).unwrap();
        // final time level: t = T = 2, diagonal point s = 0 has x = y
        let v = p.exact_at(0, 7).unwrap();
        let x = p.grid.x(0);
        assert_relative_eq!(
            v,
            4.0 * (std::f64::consts::PI * x / 2.0).sin().powi(2),
            max_relative = 1e-14
        );
    }

    #[test]
    fn mittag_leffler_problem_initial_data() {
        let p = problems::mittag_leffler_1d(0.1, 15, 16).unwrap();
        for s in 0..15 {
            assert_relative_eq!(p.initial_at(s), p.grid.x(s).sin(), max_relative = 1e-15);
        }
    }
}
