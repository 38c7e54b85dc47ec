//! Dense linear-algebra oracles shared by the integration tests. Everything
//! here is O(n³) reference code, kept independent of the fast solver paths
//! it checks.

use fracwave::kernel::FractionalKernel;
use fracwave::{GridDim, SpaceTimeGrid};

/// Dense matrix with row-major storage.
#[derive(Clone)]
pub struct Dense {
    pub n: usize,
    pub a: Vec<Vec<f64>>,
}

#[allow(dead_code)]
impl Dense {
    pub fn zeros(n: usize) -> Self {
        Dense {
            n,
            a: vec![vec![0.0; n]; n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.a[i][i] = 1.0;
        }
        m
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        self.a
            .iter()
            .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn matmul(&self, other: &Dense) -> Dense {
        let n = self.n;
        let mut out = Dense::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let aik = self.a[i][k];
                if aik == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out.a[i][j] += aik * other.a[k][j];
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &Dense) -> Dense {
        let mut out = self.clone();
        for i in 0..self.n {
            for j in 0..self.n {
                out.a[i][j] -= other.a[i][j];
            }
        }
        out
    }

    /// Gaussian elimination with partial pivoting.
    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = self.n;
        let mut a = self.a.clone();
        let mut x = b.to_vec();
        for k in 0..n {
            let piv = (k..n)
                .max_by(|&i, &j| a[i][k].abs().total_cmp(&a[j][k].abs()))
                .unwrap();
            a.swap(k, piv);
            x.swap(k, piv);
            for i in (k + 1)..n {
                let f = a[i][k] / a[k][k];
                if f == 0.0 {
                    continue;
                }
                for j in k..n {
                    a[i][j] -= f * a[k][j];
                }
                x[i] -= f * x[k];
            }
        }
        for i in (0..n).rev() {
            let mut acc = x[i];
            for j in (i + 1)..n {
                acc -= a[i][j] * x[j];
            }
            x[i] = acc / a[i][i];
        }
        x
    }

    /// Column-by-column inverse via `solve`.
    pub fn inverse(&self) -> Dense {
        let n = self.n;
        let mut out = Dense::zeros(n);
        for j in 0..n {
            let mut e = vec![0.0; n];
            e[j] = 1.0;
            let col = self.solve(&e);
            for i in 0..n {
                out.a[i][j] = col[i];
            }
        }
        out
    }
}

/// Dense space-time operator T_M ⊗ I + I ⊗ A_h in the line-major index
/// s·M + m used by the solver.
#[allow(dead_code)]
pub fn dense_space_time_operator(
    grid: &SpaceTimeGrid,
    kernel: &FractionalKernel,
) -> Dense {
    let ns = grid.spatial_points();
    let m = grid.m_steps;
    let inv_h2 = 1.0 / (grid.h * grid.h);
    let mut a = Dense::zeros(ns * m);
    let diag = match grid.dim {
        GridDim::One => 2.0,
        GridDim::Two => 4.0,
    };
    for s in 0..ns {
        for i in 0..m {
            for j in 0..=i {
                a.a[s * m + i][s * m + j] += kernel.r[i - j];
            }
            a.a[s * m + i][s * m + i] += diag * inv_h2;
        }
        let mut neighbors = Vec::new();
        match grid.dim {
            GridDim::One => {
                if s > 0 {
                    neighbors.push(s - 1);
                }
                if s + 1 < ns {
                    neighbors.push(s + 1);
                }
            }
            GridDim::Two => {
                let n = grid.n_interior;
                let (xi, yi) = (s % n, s / n);
                if xi > 0 {
                    neighbors.push(s - 1);
                }
                if xi + 1 < n {
                    neighbors.push(s + 1);
                }
                if yi > 0 {
                    neighbors.push(s - n);
                }
                if yi + 1 < n {
                    neighbors.push(s + n);
                }
            }
        }
        for nb in neighbors {
            for k in 0..m {
                a.a[s * m + k][nb * m + k] -= inv_h2;
            }
        }
    }
    a
}

/// Dense error-propagation matrix of one red-black sweep: stage matrices
/// for the even-grid-number lines (Jacobi against old neighbors) then the
/// odd lines.
#[allow(dead_code)]
pub fn dense_red_black_sweep(grid: &SpaceTimeGrid, kernel: &FractionalKernel) -> Dense {
    let ns = grid.spatial_points();
    let m = grid.m_steps;
    let inv_h2 = 1.0 / (grid.h * grid.h);
    let diag = match grid.dim {
        GridDim::One => 2.0,
        GridDim::Two => 4.0,
    };
    // line matrix (T + diag/h² I)⁻¹ as a dense block
    let mut line = Dense::zeros(m);
    for i in 0..m {
        for j in 0..=i {
            line.a[i][j] += kernel.r[i - j];
        }
        line.a[i][i] += diag * inv_h2;
    }
    let line_inv = line.inverse();

    let is_red = |s: usize| -> bool {
        match grid.dim {
            GridDim::One => s % 2 == 0,
            GridDim::Two => {
                let n = grid.n_interior;
                (s % n + s / n) % 2 == 0
            }
        }
    };
    let neighbors = |s: usize| -> Vec<usize> {
        let mut nb = Vec::new();
        match grid.dim {
            GridDim::One => {
                if s > 0 {
                    nb.push(s - 1);
                }
                if s + 1 < ns {
                    nb.push(s + 1);
                }
            }
            GridDim::Two => {
                let n = grid.n_interior;
                let (xi, yi) = (s % n, s / n);
                if xi > 0 {
                    nb.push(s - 1);
                }
                if xi + 1 < n {
                    nb.push(s + 1);
                }
                if yi > 0 {
                    nb.push(s - n);
                }
                if yi + 1 < n {
                    nb.push(s + n);
                }
            }
        }
        nb
    };

    let stage = |color_red: bool| -> Dense {
        let mut st = Dense::identity(ns * m);
        for s in 0..ns {
            if is_red(s) != color_red {
                continue;
            }
            for i in 0..m {
                for j in 0..(ns * m) {
                    st.a[s * m + i][j] = 0.0;
                }
            }
            for nb in neighbors(s) {
                for i in 0..m {
                    for j in 0..m {
                        st.a[s * m + i][nb * m + j] += inv_h2 * line_inv.a[i][j];
                    }
                }
            }
        }
        st
    };

    let red = stage(true);
    let black = stage(false);
    black.matmul(&red)
}

pub fn inf_norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |a, &x| a.max(x.abs()))
}
