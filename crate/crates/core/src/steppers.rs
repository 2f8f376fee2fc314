//! Integer-order stepping primitives: explicit Euler, the fourth-order Adams
//! predictor-corrector and the six-value Gear (Nordsieck) predictor-corrector
//! for second-order equations.

use crate::error::{Error, Result};

/// Adams-Bashforth weights for `f_{k-1}, .., f_{k-4}`.
pub const ADAMS_PREDICTOR: [f64; 4] = [55.0 / 24.0, -59.0 / 24.0, 37.0 / 24.0, -9.0 / 24.0];

/// Adams-Moulton weights for `f_{k-1}, f_{k-2}, f_{k-3}`.
pub const ADAMS_CORRECTOR: [f64; 3] = [19.0 / 24.0, -5.0 / 24.0, 1.0 / 24.0];

/// Adams-Moulton weight of the new slope `f_k`.
pub const ADAMS_CORRECTOR_NEW: f64 = 9.0 / 24.0;

pub fn euler_step(y_prev: f64, f_prev: f64, h: f64) -> f64 {
    y_prev + h * f_prev
}

/// Combination of the most recent slopes; `f_hist[0]` is `f_{k-1}`.
pub fn adams_increment<const N: usize>(weights: &[f64; N], f_hist: &[f64]) -> Result<f64> {
    if f_hist.len() < N {
        return Err(Error::Startup {
            needed: N,
            available: f_hist.len(),
        });
    }
    Ok(weights.iter().zip(f_hist).map(|(w, f)| w * f).sum())
}

/// Predictor; `f_hist` holds `f_{k-1}, f_{k-2}, f_{k-3}, f_{k-4}` (most recent first).
pub fn adams_predict(y_prev: f64, f_hist: &[f64], h: f64) -> Result<f64> {
    Ok(y_prev + h * adams_increment(&ADAMS_PREDICTOR, f_hist)?)
}

/// Corrector; `f_hist` holds `f_{k-1}, f_{k-2}, f_{k-3}` and `f_k` is the slope
/// at the predicted point.
pub fn adams_correct(y_prev: f64, f_hist: &[f64], f_k: f64, h: f64) -> Result<f64> {
    Ok(y_prev + h * adams_increment(&ADAMS_CORRECTOR, f_hist)? + ADAMS_CORRECTOR_NEW * h * f_k)
}

/// Gear coefficients for a second-order equation carried as six derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GearCoefficients {
    /// `P_l = h^l / l!` for `l = 0..=5`; `P_l = 0` for `l < 0`.
    pub predictor: [f64; 6],
    /// Corrector constants `c_0..c_5`.
    pub corrector: [f64; 6],
}

impl GearCoefficients {
    pub const CORRECTOR: [f64; 6] = [3.0 / 16.0, 251.0 / 360.0, 1.0, 11.0 / 18.0, 1.0 / 6.0, 1.0 / 60.0];

    pub fn new(h: f64) -> Self {
        let mut predictor = [1.0; 6];
        for l in 1..6 {
            predictor[l] = predictor[l - 1] * h / l as f64;
        }
        Self {
            predictor,
            corrector: Self::CORRECTOR,
        }
    }

    /// `P_l`, zero for negative `l`.
    pub fn p(&self, l: isize) -> f64 {
        if l < 0 {
            0.0
        } else {
            self.predictor[l as usize]
        }
    }
}

/// The derivatives `D^0 y .. D^5 y` at one node (unscaled).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct NordsieckState {
    pub d: [f64; 6],
}

impl NordsieckState {
    pub fn new(d: [f64; 6]) -> Self {
        Self { d }
    }

    /// State with only `y` and `y'` set.
    pub fn from_initial(y0: f64, yp0: f64) -> Self {
        Self {
            d: [y0, yp0, 0.0, 0.0, 0.0, 0.0],
        }
    }

    pub fn y(&self) -> f64 {
        self.d[0]
    }

    pub fn is_finite(&self) -> bool {
        self.d.iter().all(|v| v.is_finite())
    }
}

const FACTORIAL: [f64; 6] = [1.0, 1.0, 2.0, 6.0, 24.0, 120.0];

/// Taylor shift of every derivative by one step.
pub fn gear_predict(prev: &NordsieckState, h: f64) -> NordsieckState {
    let c = GearCoefficients::new(h);
    let mut d = [0.0; 6];
    for (i, out) in d.iter_mut().enumerate() {
        // P_{j-i} vanishes for j < i
        *out = (i..6).map(|j| c.p(j as isize - i as isize) * prev.d[j]).sum();
    }
    NordsieckState { d }
}

/// Single corrector pass driven by the second-derivative residual
/// `d2_corrected - predicted.d[2]`.
pub fn gear_correct(predicted: &NordsieckState, d2_corrected: f64, h: f64) -> NordsieckState {
    let delta = d2_corrected - predicted.d[2];
    let mut d = predicted.d;
    for (i, v) in d.iter_mut().enumerate() {
        let scale = FACTORIAL[i] / (2.0 * h.powi(i as i32 - 2));
        *v += scale * GearCoefficients::CORRECTOR[i] * delta;
    }
    NordsieckState { d }
}
