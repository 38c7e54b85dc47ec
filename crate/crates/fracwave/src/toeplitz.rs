//! Fast kernels for lower-triangular Toeplitz matrices.
//!
//! An M×M lower-triangular Toeplitz matrix is determined by its first column
//! t₁..t_M, and its matvec is a truncated causal convolution. Embedding the
//! matrix into the 2M×2M circulant
//!
//! ```text
//! C_2M = | T_M  R_M |
//!        | R_M  T_M |
//! ```
//!
//! (R_M strictly upper triangular, holding the wrapped-around entries
//! t₂..t_M) diagonalizes it by the DFT, so one multiplication costs three
//! FFTs of length 2M — two when the eigenvalues are precomputed. Because T_M
//! is lower triangular, the first column of C_2M is simply t₁..t_M followed
//! by M zeros.
//!
//! Inverses are again lower-triangular Toeplitz; the divide-and-conquer
//! partition
//!
//! ```text
//! T_M = | T_{M/2}          |        T_M⁻¹ = | T_{M/2}⁻¹                       |
//!       | P_{M/2}  T_{M/2} |                | −T_{M/2}⁻¹ P_{M/2} T_{M/2}⁻¹  T_{M/2}⁻¹ |
//! ```
//!
//! computes the inverse first column in O(M log M), with a small base block
//! inverted by forward substitution.

use crate::error::{FracError, Result};
use crate::fft::FftPair;
use num_complex::Complex64;

/// Base block size 2⁴ for the divide-and-conquer inversion; below this the
/// recursion overhead dominates and forward substitution wins.
pub const DEFAULT_INVERSION_BASE: usize = 16;

/// Lower-triangular Toeplitz matrix stored as its first column.
#[derive(Debug, Clone)]
pub struct LowerToeplitz {
    /// t₁..t_M with t₁ on the diagonal.
    pub first_col: Vec<f64>,
}

impl LowerToeplitz {
    pub fn new(first_col: Vec<f64>) -> Self {
        assert!(!first_col.is_empty(), "empty Toeplitz column");
        LowerToeplitz { first_col }
    }

    pub fn size(&self) -> usize {
        self.first_col.len()
    }

    /// Precomputes the circulant-embedding eigenvalues for repeated matvecs.
    pub fn embedding(&self) -> CirculantEmbedding {
        CirculantEmbedding::from_first_col(&self.first_col)
    }

    /// y = T x in O(M log M) via a one-off circulant embedding.
    pub fn fast_matvec(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.embedding().fast_matvec(x)
    }
}

/// Eigenvalues of the circulant embedding C_2M, cached together with the
/// FFT plans of length 2M. Immutable after construction and shareable
/// across threads.
#[derive(Debug, Clone)]
pub struct CirculantEmbedding {
    m: usize,
    eigenvalues: Vec<Complex64>,
    fft: FftPair,
}

impl CirculantEmbedding {
    /// Embeds the lower-triangular Toeplitz matrix with the given first
    /// column; the eigenvalues are the DFT of the column padded with M zeros.
    pub fn from_first_col(col: &[f64]) -> Self {
        let m = col.len();
        let fft = FftPair::new(2 * m);
        let mut buf: Vec<Complex64> = Vec::with_capacity(2 * m);
        buf.extend(col.iter().map(|&v| Complex64::new(v, 0.0)));
        buf.resize(2 * m, Complex64::new(0.0, 0.0));
        fft.forward(&mut buf);
        CirculantEmbedding {
            m,
            eigenvalues: buf,
            fft,
        }
    }

    pub fn size(&self) -> usize {
        self.m
    }

    pub fn eigenvalues(&self) -> &[Complex64] {
        &self.eigenvalues
    }

    /// y = T x using the cached eigenvalues (two FFTs).
    pub fn fast_matvec(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.m {
            return Err(FracError::Dimension(format!(
                "fast_matvec: vector length {} does not match M = {}",
                x.len(),
                self.m
            )));
        }
        let mut buf: Vec<Complex64> = Vec::with_capacity(2 * self.m);
        buf.extend(x.iter().map(|&v| Complex64::new(v, 0.0)));
        buf.resize(2 * self.m, Complex64::new(0.0, 0.0));
        self.fft.forward(&mut buf);
        for (v, e) in buf.iter_mut().zip(&self.eigenvalues) {
            *v *= e;
        }
        self.fft.inverse(&mut buf);
        Ok(buf[..self.m].iter().map(|c| c.re).collect())
    }

    /// Same as [`fast_matvec`](Self::fast_matvec) but writes into `out` and
    /// reuses a caller-provided complex scratch buffer of length 2M.
    pub fn matvec_into(&self, x: &[f64], out: &mut [f64], scratch: &mut Vec<Complex64>) {
        debug_assert_eq!(x.len(), self.m);
        debug_assert_eq!(out.len(), self.m);
        scratch.clear();
        scratch.extend(x.iter().map(|&v| Complex64::new(v, 0.0)));
        scratch.resize(2 * self.m, Complex64::new(0.0, 0.0));
        self.fft.forward(scratch);
        for (v, e) in scratch.iter_mut().zip(&self.eigenvalues) {
            *v *= e;
        }
        self.fft.inverse(scratch);
        for (o, c) in out.iter_mut().zip(scratch.iter()) {
            *o = c.re;
        }
    }
}

/// First column of T⁻¹ by divide and conquer.
///
/// Accepts any M: the column is zero-padded to the next power of two for the
/// recursion and the result truncated back (the inverse of a block
/// lower-triangular extension restricts to the inverse of the leading block).
pub fn invert_first_column(t: &LowerToeplitz, base_size: usize) -> Result<Vec<f64>> {
    if t.first_col[0] == 0.0 {
        return Err(FracError::Singular(
            "lower-triangular Toeplitz matrix has zero diagonal".into(),
        ));
    }
    let m = t.size();
    let base = base_size.max(1).next_power_of_two();
    let padded = m.next_power_of_two();
    let mut col = t.first_col.clone();
    col.resize(padded, 0.0);
    let mut w = dc_invert(&col, base);
    w.truncate(m);
    Ok(w)
}

fn dc_invert(col: &[f64], base: usize) -> Vec<f64> {
    let n = col.len();
    if n <= base {
        return invert_by_substitution(col);
    }
    let half = n / 2;
    let w_top = dc_invert(&col[..half], base);

    // u = P_{half} w_top with P[i][j] = col[half + i − j]; these are the
    // indices [half, n) of the cyclic convolution col ⊛ w_top, which carry
    // no wrap-around terms at length n.
    let fft = FftPair::new(n);
    let mut ca: Vec<Complex64> = col.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    let mut cw: Vec<Complex64> = w_top.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    cw.resize(n, Complex64::new(0.0, 0.0));
    fft.forward(&mut ca);
    fft.forward(&mut cw);
    for (a, b) in ca.iter_mut().zip(&cw) {
        *a *= b;
    }
    fft.inverse(&mut ca);
    let u: Vec<f64> = ca[half..].iter().map(|c| c.re).collect();

    // bottom half: −T_{half}⁻¹ u, a truncated convolution with w_top
    let mut cu: Vec<Complex64> = u.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    cu.resize(n, Complex64::new(0.0, 0.0));
    fft.forward(&mut cu);
    for (a, b) in cu.iter_mut().zip(&cw) {
        *a *= b;
    }
    fft.inverse(&mut cu);

    let mut w = w_top;
    w.extend(cu[..half].iter().map(|c| -c.re));
    w
}

/// Forward-substitution solve of T w = e₁ for the base case.
fn invert_by_substitution(col: &[f64]) -> Vec<f64> {
    let n = col.len();
    let mut w = vec![0.0; n];
    w[0] = 1.0 / col[0];
    for i in 1..n {
        let mut acc = 0.0;
        for j in 0..i {
            acc += col[i - j] * w[j];
        }
        w[i] = -acc / col[0];
    }
    w
}

/// Solves T x = b for a lower-triangular Toeplitz matrix.
///
/// With a precomputed embedding of the inverse first column the cost is a
/// single fast matvec; otherwise the inverse column is computed first.
pub fn solve_lower_toeplitz(
    t: &LowerToeplitz,
    b: &[f64],
    precomputed_inverse: Option<&CirculantEmbedding>,
) -> Result<Vec<f64>> {
    if b.len() != t.size() {
        return Err(FracError::Dimension(format!(
            "solve_lower_toeplitz: rhs length {} does not match M = {}",
            b.len(),
            t.size()
        )));
    }
    match precomputed_inverse {
        Some(inv) => inv.fast_matvec(b),
        None => {
            let w = invert_first_column(t, DEFAULT_INVERSION_BASE)?;
            CirculantEmbedding::from_first_col(&w).fast_matvec(b)
        }
    }
}

// ---------------------------------------------------------------------------
// Toeplitz "ring" helpers. Lower-triangular Toeplitz matrices of a fixed size
// form a commutative ring isomorphic to R[z]/(z^M); the coarse-grid direct
// solver and the mode-analysis symbols do their block algebra on first
// columns through these.
// ---------------------------------------------------------------------------

/// Truncated convolution: first column of the product of two
/// lower-triangular Toeplitz matrices given by `a` and `b`.
pub(crate) fn ring_mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    debug_assert_eq!(a.len(), b.len());
    let m = a.len();
    if m <= 32 {
        let mut out = vec![0.0; m];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0.0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate().take(m - i) {
                out[i + j] += ai * bj;
            }
        }
        return out;
    }
    let n = 2 * m;
    let fft = FftPair::new(n);
    let mut ca: Vec<Complex64> = a.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    let mut cb: Vec<Complex64> = b.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    ca.resize(n, Complex64::new(0.0, 0.0));
    cb.resize(n, Complex64::new(0.0, 0.0));
    fft.forward(&mut ca);
    fft.forward(&mut cb);
    for (x, y) in ca.iter_mut().zip(&cb) {
        *x *= y;
    }
    fft.inverse(&mut ca);
    ca[..m].iter().map(|c| c.re).collect()
}

/// First column of the ring inverse.
pub(crate) fn ring_inv(a: &[f64]) -> Result<Vec<f64>> {
    invert_first_column(&LowerToeplitz::new(a.to_vec()), DEFAULT_INVERSION_BASE)
}

/// a + s·e₁ (adds s to the diagonal of the Toeplitz matrix).
pub(crate) fn ring_shift(a: &[f64], s: f64) -> Vec<f64> {
    let mut out = a.to_vec();
    out[0] += s;
    out
}
