//! Shared FFT planner. rustfft plans are cached per transform length so the
//! per-line solves inside the smoothers never re-plan.

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use std::sync::{Arc, Mutex, OnceLock};

fn planner() -> &'static Mutex<FftPlanner<f64>> {
    static PLANNER: OnceLock<Mutex<FftPlanner<f64>>> = OnceLock::new();
    PLANNER.get_or_init(|| Mutex::new(FftPlanner::new()))
}

#[derive(Clone)]
pub(crate) struct FftPair {
    pub len: usize,
    pub fwd: Arc<dyn Fft<f64>>,
    pub inv: Arc<dyn Fft<f64>>,
}

impl FftPair {
    pub fn new(len: usize) -> Self {
        let mut p = planner().lock().expect("fft planner poisoned");
        FftPair {
            len,
            fwd: p.plan_fft_forward(len),
            inv: p.plan_fft_inverse(len),
        }
    }

    pub fn forward(&self, buf: &mut [Complex64]) {
        debug_assert_eq!(buf.len(), self.len);
        self.fwd.process(buf);
    }

    /// Inverse transform including the 1/len normalization.
    pub fn inverse(&self, buf: &mut [Complex64]) {
        debug_assert_eq!(buf.len(), self.len);
        self.inv.process(buf);
        let scale = 1.0 / self.len as f64;
        for v in buf.iter_mut() {
            *v *= scale;
        }
    }
}

impl std::fmt::Debug for FftPair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FftPair").field("len", &self.len).finish()
    }
}
