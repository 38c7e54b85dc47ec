//! Inter-grid transfers: full-weighting restriction and (bi)linear
//! interpolation, acting per time level. Time is never coarsened.

use crate::error::{FracError, Result};
use crate::grid::{GridDim, SpaceTimeFunction, SpaceTimeGrid};

/// 1D full weighting, stencil (1/4)[1 2 1]; coarse point j sits on fine
/// interior index 2j+1.
pub(crate) fn restrict_1d(n_fine: usize, m: usize, fine: &[f64], coarse: &mut [f64]) {
    let nc = (n_fine - 1) / 2;
    debug_assert_eq!(coarse.len(), nc * m);
    for j in 0..nc {
        let f0 = (2 * j) * m;
        let f1 = (2 * j + 1) * m;
        let f2 = (2 * j + 2) * m;
        for k in 0..m {
            coarse[j * m + k] = 0.25 * (fine[f0 + k] + 2.0 * fine[f1 + k] + fine[f2 + k]);
        }
    }
}

/// Adds the linear interpolant of `coarse` onto `fine`.
pub(crate) fn prolong_add_1d(n_fine: usize, m: usize, coarse: &[f64], fine: &mut [f64]) {
    let nc = (n_fine - 1) / 2;
    for j in 0..nc {
        for k in 0..m {
            fine[(2 * j + 1) * m + k] += coarse[j * m + k];
        }
    }
    for i in (0..n_fine).step_by(2) {
        // fine point with odd grid number: average of coarse neighbors,
        // boundary values are zero
        for k in 0..m {
            let mut v = 0.0;
            if i >= 2 {
                v += coarse[((i - 2) / 2) * m + k];
            }
            if i / 2 < nc {
                v += coarse[(i / 2) * m + k];
            }
            fine[i * m + k] += 0.5 * v;
        }
    }
}

/// 2D full weighting, tensor stencil (1/16)[1 2 1; 2 4 2; 1 2 1].
pub(crate) fn restrict_2d(n_fine: usize, m: usize, fine: &[f64], coarse: &mut [f64]) {
    let nc = (n_fine - 1) / 2;
    debug_assert_eq!(coarse.len(), nc * nc * m);
    let idx = |x: usize, y: usize| (y * n_fine + x) * m;
    for jy in 0..nc {
        for jx in 0..nc {
            let (cx, cy) = (2 * jx + 1, 2 * jy + 1);
            let out = (jy * nc + jx) * m;
            for k in 0..m {
                let center = fine[idx(cx, cy) + k];
                let edges = fine[idx(cx - 1, cy) + k]
                    + fine[idx(cx + 1, cy) + k]
                    + fine[idx(cx, cy - 1) + k]
                    + fine[idx(cx, cy + 1) + k];
                let corners = fine[idx(cx - 1, cy - 1) + k]
                    + fine[idx(cx + 1, cy - 1) + k]
                    + fine[idx(cx - 1, cy + 1) + k]
                    + fine[idx(cx + 1, cy + 1) + k];
                coarse[out + k] = (4.0 * center + 2.0 * edges + corners) / 16.0;
            }
        }
    }
}

/// Adds the bilinear interpolant of `coarse` onto `fine`.
pub(crate) fn prolong_add_2d(n_fine: usize, m: usize, coarse: &[f64], fine: &mut [f64]) {
    let nc = (n_fine - 1) / 2;
    let cval = |jx: isize, jy: isize, k: usize| -> f64 {
        if jx < 0 || jy < 0 || jx >= nc as isize || jy >= nc as isize {
            0.0
        } else {
            coarse[(jy as usize * nc + jx as usize) * m + k]
        }
    };
    for y in 0..n_fine {
        for x in 0..n_fine {
            let out = (y * n_fine + x) * m;
            let (xodd, yodd) = (x % 2 == 1, y % 2 == 1);
            let (jx, jy) = ((x as isize - 1) / 2, (y as isize - 1) / 2);
            match (xodd, yodd) {
                // coincident with coarse point (x = 2jx+1, y = 2jy+1)
                (true, true) => {
                    for k in 0..m {
                        fine[out + k] += cval(jx, jy, k);
                    }
                }
                // horizontal midpoint between coarse columns
                (false, true) => {
                    let jl = x as isize / 2 - 1;
                    for k in 0..m {
                        fine[out + k] += 0.5 * (cval(jl, jy, k) + cval(jl + 1, jy, k));
                    }
                }
                (true, false) => {
                    let jb = y as isize / 2 - 1;
                    for k in 0..m {
                        fine[out + k] += 0.5 * (cval(jx, jb, k) + cval(jx, jb + 1, k));
                    }
                }
                (false, false) => {
                    let jl = x as isize / 2 - 1;
                    let jb = y as isize / 2 - 1;
                    for k in 0..m {
                        fine[out + k] += 0.25
                            * (cval(jl, jb, k)
                                + cval(jl + 1, jb, k)
                                + cval(jl, jb + 1, k)
                                + cval(jl + 1, jb + 1, k));
                    }
                }
            }
        }
    }
}

/// Full-weighting restriction of a space-time function to the next coarser
/// grid; the initial layer is restricted by injection.
pub fn restrict(fine: &SpaceTimeFunction) -> Result<SpaceTimeFunction> {
    let coarse_grid = fine.grid.coarsen()?;
    let mut out = SpaceTimeFunction::zeros(&coarse_grid);
    let m = fine.grid.m_steps;
    match fine.grid.dim {
        GridDim::One => restrict_1d(fine.grid.n_interior, m, &fine.values, &mut out.values),
        GridDim::Two => restrict_2d(fine.grid.n_interior, m, &fine.values, &mut out.values),
    }
    let nc = coarse_grid.n_interior;
    match fine.grid.dim {
        GridDim::One => {
            for j in 0..nc {
                out.initial_layer[j] = fine.initial_layer[2 * j + 1];
            }
        }
        GridDim::Two => {
            for jy in 0..nc {
                for jx in 0..nc {
                    out.initial_layer[jy * nc + jx] =
                        fine.initial_layer[(2 * jy + 1) * fine.grid.n_interior + 2 * jx + 1];
                }
            }
        }
    }
    Ok(out)
}

/// (Bi)linear interpolation of a coarse function to the refined grid.
pub fn prolong(coarse: &SpaceTimeFunction) -> Result<SpaceTimeFunction> {
    let g = &coarse.grid;
    let fine_grid = SpaceTimeGrid {
        n_interior: 2 * g.n_interior + 1,
        h: 0.5 * g.h,
        ..*g
    };
    if fine_grid.n_interior >= usize::MAX / 2 {
        return Err(FracError::Domain("grid too large to refine".into()));
    }
    let mut out = SpaceTimeFunction::zeros(&fine_grid);
    let m = g.m_steps;
    match g.dim {
        GridDim::One => prolong_add_1d(fine_grid.n_interior, m, &coarse.values, &mut out.values),
        GridDim::Two => prolong_add_2d(fine_grid.n_interior, m, &coarse.values, &mut out.values),
    }
    Ok(out)
}
