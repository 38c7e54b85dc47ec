//! Solvers and analysis tools for the time-fractional heat equation
//!
//! The time-fractional heat equation replaces the first-order time derivative
//! with a Caputo derivative of order `δ ∈ (0, 1]`:
//!
//! ```text
//! D_t^δ u − Δu = f,    u = 0 on the boundary,    u(·, 0) = g.
//! ```
//!
//! Discretizing the Caputo derivative with the L1 scheme couples every time
//! level to all earlier ones, so the space-time system has a lower-triangular
//! Toeplitz structure in time. This crate exploits that structure throughout:
//!
//! - [`kernel`] builds the L1 coefficient sequence and [`special`] provides
//!   the Γ and Mittag-Leffler functions it needs.
//! - [`toeplitz`] implements O(M log M) matvecs by circulant embedding and a
//!   divide-and-conquer inversion of triangular Toeplitz matrices.
//! - [`wrmg`] is the multigrid waveform relaxation solver: red-black
//!   zebra-in-time line relaxation, spatial-only coarsening, V- and W-cycles,
//!   in one and two space dimensions.
//! - [`fas`] extends the solver to a nonlinear porous-media model problem via
//!   the full approximation scheme.
//! - [`sama`] is a semi-algebraic mode analysis engine that predicts two-grid
//!   convergence factors by combining Fourier symbols in space with exact
//!   M×M temporal blocks.
//!
//! The companion `fracwave` command-line tool drives the experiment suite
//! (solver robustness tables, mode-analysis sweeps, discretization-order and
//! complexity studies) on top of this crate.

pub mod error;
pub mod fas;
pub mod grid;
pub mod kernel;
pub mod operator;
pub mod problem;
pub mod sama;
pub mod special;
pub mod toeplitz;
pub mod wrmg;

mod fft;

pub use error::FracError;
pub use grid::{GridDim, SpaceTimeFunction, SpaceTimeGrid};
pub use kernel::{l1_kernel, FractionalKernel};
pub use problem::{ProblemKind, ProblemSpec};
