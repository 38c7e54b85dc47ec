//! L1 discretization coefficients for the Caputo derivative.
//!
//! The L1 scheme writes the discrete Caputo derivative of order δ as
//!
//! ```text
//! D_M^δ u_m = c · [ d₁ u_m − d_m u₀ + Σ_{k=1}^{m−1} (d_{k+1} − d_k) u_{m−k} ],
//! ```
//!
//! with `c = τ^{−δ}/Γ(2−δ)` and `d_k = k^{1−δ} − (k−1)^{1−δ}`. Collecting the
//! coefficients of the unknowns u_1..u_M gives a lower-triangular Toeplitz
//! operator whose first column is `r_i = c·(d_i − d_{i−1})`, `d₀ = 0`; the
//! known initial value u₀ contributes `c·d_m·u₀` to the right-hand side.

use crate::error::{FracError, Result};
use crate::special::gamma_fn;

/// First Toeplitz column of the L1 temporal operator plus its parameters.
#[derive(Debug, Clone)]
pub struct FractionalKernel {
    /// Fractional order δ ∈ (0, 1].
    pub delta: f64,
    /// Time step τ.
    pub tau: f64,
    /// Number of time levels M.
    pub m_steps: usize,
    /// First column r_1..r_M of the temporal operator T_M.
    pub r: Vec<f64>,
}

/// d_k = k^{1−δ} − (k−1)^{1−δ} with the conventions d₀ = 0, d₁ = 1.
///
/// The k = 1 case is fixed separately: 0^{1−δ} = 0 for every δ < 1 and the
/// δ → 1 limit keeps d₁ = 1, where a literal `powf` would evaluate 0⁰ = 1.
fn d_coeff(k: usize, delta: f64) -> f64 {
    match k {
        0 => 0.0,
        1 => 1.0,
        _ => {
            let e = 1.0 - delta;
            (k as f64).powf(e) - ((k - 1) as f64).powf(e)
        }
    }
}

/// Builds the L1 kernel for order `delta`, step `tau` and `m_steps` levels.
///
/// For δ = 1 the scheme collapses to the backward-Euler difference,
/// r = [1/τ, −1/τ, 0, …, 0].
pub fn l1_kernel(delta: f64, tau: f64, m_steps: usize) -> Result<FractionalKernel> {
    if !(delta > 0.0 && delta <= 1.0) {
        return Err(FracError::Domain(format!(
            "l1_kernel requires delta in (0, 1], got {delta}"
        )));
    }
    if !(tau > 0.0) {
        return Err(FracError::Domain(format!(
            "l1_kernel requires tau > 0, got {tau}"
        )));
    }
    if m_steps == 0 {
        return Err(FracError::Domain("l1_kernel requires m_steps >= 1".into()));
    }

    let c = tau.powf(-delta) / gamma_fn(2.0 - delta)?;
    let mut r = Vec::with_capacity(m_steps);
    let mut d_prev = 0.0;
    for i in 1..=m_steps {
        let d_i = d_coeff(i, delta);
        r.push(c * (d_i - d_prev));
        d_prev = d_i;
    }
    Ok(FractionalKernel {
        delta,
        tau,
        m_steps,
        r,
    })
}

impl FractionalKernel {
    /// Scaling constant c = τ^{−δ}/Γ(2−δ) = r₁ (because d₁ = 1).
    pub fn scale(&self) -> f64 {
        self.r[0]
    }

    /// Coefficients c·d_m multiplying the initial layer u₀ on the
    /// right-hand side, for m = 1..M. By telescoping these are the prefix
    /// sums of the first column.
    pub fn initial_layer_coeffs(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.m_steps);
        let mut acc = 0.0;
        for &ri in &self.r {
            acc += ri;
            out.push(acc);
        }
        out
    }

    /// True when another kernel was built from the same (δ, τ, M).
    pub fn matches(&self, delta: f64, tau: f64, m_steps: usize) -> bool {
        self.delta == delta && self.tau == tau && self.m_steps == m_steps
    }
}
