//! Direct solver for the coarsest level.
//!
//! The space-time system there is block-structured: spatial couplings are
//! scalar multiples of I_M and every diagonal block is T_M + (2d/h²)·I.
//! Lower-triangular Toeplitz matrices of size M form a commutative ring, and
//! Gaussian elimination over that ring stays inside it — every fill-in block
//! is again a first column. The factorization is computed once per
//! hierarchy; each solve is a pass of O(M log M) convolutions over at most
//! 3 (1D) or 9 (2D) spatial points.

use crate::error::Result;
use crate::grid::{GridDim, SpaceTimeGrid};
use crate::kernel::FractionalKernel;
use crate::toeplitz::{ring_inv, ring_mul, ring_shift};

#[derive(Debug)]
pub(crate) struct CoarseSolver {
    ns: usize,
    m: usize,
    /// Strictly lower multipliers L[i][k], k < i.
    lower: Vec<Vec<Option<Vec<f64>>>>,
    /// Upper blocks U[i][j], j > i, after elimination.
    upper: Vec<Vec<Option<Vec<f64>>>>,
    /// Inverse first columns of the diagonal blocks U[i][i].
    diag_inv: Vec<Vec<f64>>,
}

impl CoarseSolver {
    pub fn build(grid: &SpaceTimeGrid, kernel: &FractionalKernel) -> Result<Self> {
        let ns = grid.spatial_points();
        let m = grid.m_steps;
        let inv_h2 = 1.0 / (grid.h * grid.h);
        let shift = super::hierarchy::line_shift(grid);

        // assemble the block matrix as first columns
        let mut a: Vec<Vec<Option<Vec<f64>>>> = vec![vec![None; ns]; ns];
        let mut couple = |a: &mut Vec<Vec<Option<Vec<f64>>>>, i: usize, j: usize| {
            let mut e = vec![0.0; m];
            e[0] = -inv_h2;
            a[i][j] = Some(e);
        };
        for s in 0..ns {
            a[s][s] = Some(ring_shift(&kernel.r, shift));
            match grid.dim {
                GridDim::One => {
                    if s > 0 {
                        couple(&mut a, s, s - 1);
                    }
                    if s + 1 < ns {
                        couple(&mut a, s, s + 1);
                    }
                }
                GridDim::Two => {
                    let n = grid.n_interior;
                    let (xi, yi) = (s % n, s / n);
                    if xi > 0 {
                        couple(&mut a, s, s - 1);
                    }
                    if xi + 1 < n {
                        couple(&mut a, s, s + 1);
                    }
                    if yi > 0 {
                        couple(&mut a, s, s - n);
                    }
                    if yi + 1 < n {
                        couple(&mut a, s, s + n);
                    }
                }
            }
        }

        // block LU over the Toeplitz ring; diagonal blocks stay invertible
        // because r₁ + 2d/h² > 0 dominates
        let mut lower: Vec<Vec<Option<Vec<f64>>>> = vec![vec![None; ns]; ns];
        let mut diag_inv = Vec::with_capacity(ns);
        for k in 0..ns {
            let dinv = ring_inv(a[k][k].as_ref().expect("diagonal block"))?;
            for i in (k + 1)..ns {
                let Some(aik) = a[i][k].clone() else { continue };
                let lik = ring_mul(&aik, &dinv);
                for j in (k + 1)..ns {
                    let Some(akj) = a[k][j].as_ref() else {
                        continue;
                    };
                    let prod = ring_mul(&lik, akj);
                    match a[i][j].as_mut() {
                        Some(aij) => {
                            for (x, p) in aij.iter_mut().zip(&prod) {
                                *x -= p;
                            }
                        }
                        None => {
                            a[i][j] = Some(prod.iter().map(|p| -p).collect());
                        }
                    }
                }
                lower[i][k] = Some(lik);
            }
            diag_inv.push(dinv);
        }
        let mut upper: Vec<Vec<Option<Vec<f64>>>> = vec![vec![None; ns]; ns];
        for i in 0..ns {
            for j in (i + 1)..ns {
                upper[i][j] = a[i][j].take();
            }
        }
        Ok(CoarseSolver {
            ns,
            m,
            lower,
            upper,
            diag_inv,
        })
    }

    /// Overwrites `u` with the exact solution of the coarsest system for
    /// right-hand side `b` (both of length ns·M, line-major).
    pub fn solve(&self, u: &mut [f64], b: &[f64]) {
        debug_assert_eq!(u.len(), self.ns * self.m);
        debug_assert_eq!(b.len(), self.ns * self.m);
        let m = self.m;
        u.copy_from_slice(b);
        // forward pass with the unit-lower multipliers
        for i in 0..self.ns {
            for k in 0..i {
                if let Some(lik) = &self.lower[i][k] {
                    let (head, tail) = u.split_at_mut(i * m);
                    let yk = &head[k * m..(k + 1) * m];
                    let prod = ring_mul(lik, yk);
                    for (x, p) in tail[..m].iter_mut().zip(&prod) {
                        *x -= p;
                    }
                }
            }
        }
        // back substitution
        for i in (0..self.ns).rev() {
            for j in (i + 1)..self.ns {
                if let Some(uij) = &self.upper[i][j] {
                    let (head, tail) = u.split_at_mut(j * m);
                    let xj = &tail[..m];
                    let prod = ring_mul(uij, xj);
                    for (x, p) in head[i * m..(i + 1) * m].iter_mut().zip(&prod) {
                        *x -= p;
                    }
                }
            }
            let xi = ring_mul(&self.diag_inv[i], &u[i * m..(i + 1) * m]);
            u[i * m..(i + 1) * m].copy_from_slice(&xi);
        }
    }
}
