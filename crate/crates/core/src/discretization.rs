//! Discrete fractional operators on a uniform grid.
//!
//! Every Caputo form approximates
//!
//! ```text
//! C D^alpha y(x_k) = 1/Gamma(1 - alpha) * int_{x0}^{x_k} y'(t) (x_k - t)^(-alpha) dt
//! ```
//!
//! by replacing `y'` on each subinterval `[x_{j-1}, x_j]` with a simple shape
//! built from the samples `B_j = y'(x_j)` and integrating the kernel exactly:
//!
//! | form   | shape on `[x_{j-1}, x_j]`          |
//! |--------|------------------------------------|
//! | case 1 | constant `B_{j-1}` (left)          |
//! | case 2 | constant `B_j` (right)             |
//! | case 3 | constant `(B_{j-1} + B_j) / 2`     |
//! | case 4 | linear interpolant of both ends    |
//!
//! The endpoint is the running node `x_k`, so each call is an `O(k)`
//! convolution over the whole history. Distances `x_k - x_j` are always formed
//! as `(k - j) * h` to keep long grids free of cancellation drift.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::special::gamma;

/// Uniform grid `x_k = x0 + k * h`, `k = 0..=n_steps`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    x0: f64,
    h: f64,
    n_steps: usize,
}

impl Grid {
    pub fn new(x0: f64, h: f64, n_steps: usize) -> Result<Self> {
        if !x0.is_finite() {
            return Err(Error::Domain(format!("grid start must be finite, got {x0}")));
        }
        if !(h > 0.0 && h.is_finite()) {
            return Err(Error::Domain(format!("grid step must be positive, got {h}")));
        }
        if n_steps == 0 {
            return Err(Error::Domain("grid needs at least one step".into()));
        }
        Ok(Self { x0, h, n_steps })
    }

    /// Grid covering `[x0, x_end]` with step `h`. The interval must hold a
    /// whole number of steps (to within a relative 1e-9).
    pub fn spanning(x0: f64, x_end: f64, h: f64) -> Result<Self> {
        if x_end.partial_cmp(&x0) != Some(std::cmp::Ordering::Greater) {
            return Err(Error::Domain(format!("x_end = {x_end} must exceed x0 = {x0}")));
        }
        if !(h > 0.0 && h.is_finite()) {
            return Err(Error::Domain(format!("grid step must be positive, got {h}")));
        }
        let steps = (x_end - x0) / h;
        let n = steps.round();
        if (steps - n).abs() > 1e-9 * steps.max(1.0) {
            return Err(Error::Domain(format!(
                "interval [{x0}, {x_end}] is not a whole number of steps of {h}"
            )));
        }
        Self::new(x0, h, n as usize)
    }

    pub fn x0(&self) -> f64 {
        self.x0
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn n_steps(&self) -> usize {
        self.n_steps
    }

    pub fn x_end(&self) -> f64 {
        self.node(self.n_steps)
    }

    pub fn node(&self, k: usize) -> f64 {
        self.x0 + k as f64 * self.h
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..=self.n_steps).map(move |k| self.node(k))
    }

    /// Index of the node closest to `x`, if `x` is within half a step of one.
    pub fn index_of(&self, x: f64) -> Option<usize> {
        let r = (x - self.x0) / self.h;
        let k = r.round();
        if k < 0.0 || k > self.n_steps as f64 || (r - k).abs() > 1e-6 {
            return None;
        }
        Some(k as usize)
    }
}

/// Samples `B_0, B_1, ...` of a function on the nodes of a grid.
///
/// For the Caputo forms the samples are `D^1 y(x_j)`; for the discrete
/// Riemann-Liouville integral they are `y(x_j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DerivativeHistory {
    grid: Grid,
    values: Vec<f64>,
}

impl DerivativeHistory {
    pub fn new(grid: Grid) -> Self {
        Self {
            grid,
            values: Vec::with_capacity(grid.n_steps + 1),
        }
    }

    pub fn from_values(grid: Grid, values: Vec<f64>) -> Result<Self> {
        if values.len() > grid.n_steps + 1 {
            return Err(Error::Domain(format!(
                "{} samples exceed the {} nodes of the grid",
                values.len(),
                grid.n_steps + 1
            )));
        }
        if let Some(bad) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::Domain(format!("sample {bad} is not finite")));
        }
        Ok(Self { grid, values })
    }

    /// Samples `f(x_j)` for `j = 0..=k`.
    pub fn sampled(grid: Grid, k: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::from_values(grid, (0..=k).map(|j| f(grid.node(j))).collect())
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn push(&mut self, v: f64) -> Result<()> {
        if !v.is_finite() {
            return Err(Error::Domain(format!(
                "history sample {} is not finite",
                self.values.len()
            )));
        }
        if self.values.len() > self.grid.n_steps {
            return Err(Error::Domain("history is already full".into()));
        }
        self.values.push(v);
        Ok(())
    }

    pub fn pop(&mut self) -> Option<f64> {
        self.values.pop()
    }

    /// `a * self + b * other`, sample by sample.
    pub fn combine(&self, a: f64, other: &Self, b: f64) -> Result<Self> {
        if self.len() != other.len() {
            return Err(Error::Domain("histories differ in length".into()));
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(u, v)| a * u + b * v)
            .collect();
        Self::from_values(self.grid, values)
    }
}

/// Selector for the four discrete Caputo forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaputoForm {
    Case1,
    Case2,
    Case3,
    Case4,
}

impl CaputoForm {
    pub const ALL: [CaputoForm; 4] = [Self::Case1, Self::Case2, Self::Case3, Self::Case4];

    /// Whether the form reads the sample at the endpoint node itself.
    pub fn needs_endpoint(self) -> bool {
        !matches!(self, Self::Case1)
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Case1 => "case1",
            Self::Case2 => "case2",
            Self::Case3 => "case3",
            Self::Case4 => "case4",
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Self::Case1 => "case-I",
            Self::Case2 => "case-II",
            Self::Case3 => "case-III",
            Self::Case4 => "case-IV",
        }
    }
}

impl fmt::Display for CaputoForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CaputoForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace(['-', '_'], "").as_str() {
            "case1" | "1" | "casei" | "left" => Ok(Self::Case1),
            "case2" | "2" | "caseii" | "right" => Ok(Self::Case2),
            "case3" | "3" | "caseiii" | "middle" => Ok(Self::Case3),
            "case4" | "4" | "caseiv" | "linear" => Ok(Self::Case4),
            _ => Err(Error::InvalidConfig(format!("unknown Caputo form '{s}'"))),
        }
    }
}

/// Precomputed kernel powers `(m h)^(1 - alpha)` and `(m h)^(2 - alpha)` for
/// one grid and order, reused across all steps of a trajectory.
#[derive(Debug, Clone)]
pub struct CaputoKernel {
    alpha: f64,
    pow1: Vec<f64>,
    pow2: Vec<f64>,
    inv_gamma_2ma: f64,
    inv_gamma_1ma: f64,
}

impl CaputoKernel {
    /// Kernel usable for endpoints `k <= max_k`.
    pub fn new(grid: &Grid, alpha: f64, max_k: usize) -> Result<Self> {
        if !(0.0..1.0).contains(&alpha) {
            return Err(Error::Domain(format!("alpha must lie in [0, 1), got {alpha}")));
        }
        let h = grid.h();
        let e1 = 1.0 - alpha;
        let e2 = 2.0 - alpha;
        let pow1 = (0..=max_k).map(|m| (m as f64 * h).powf(e1)).collect();
        let pow2 = (0..=max_k).map(|m| (m as f64 * h).powf(e2)).collect();
        Ok(Self {
            alpha,
            pow1,
            pow2,
            inv_gamma_2ma: 1.0 / gamma(e1 + 1.0)?,
            inv_gamma_1ma: 1.0 / gamma(e1)?,
        })
    }

    pub fn for_grid(grid: &Grid, alpha: f64) -> Result<Self> {
        Self::new(grid, alpha, grid.n_steps())
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    fn check(&self, k: usize, available: usize, needed: usize) -> Result<()> {
        if k < 1 {
            return Err(Error::Domain(
                "discrete Caputo forms need an endpoint index k >= 1".into(),
            ));
        }
        if k >= self.pow1.len() {
            return Err(Error::Domain(format!("endpoint {k} lies beyond the kernel range")));
        }
        if available < needed {
            return Err(Error::Startup { needed, available });
        }
        Ok(())
    }

    /// `(x_k - x_{j-1})^(1-alpha) - (x_k - x_j)^(1-alpha)`
    #[inline]
    fn w1(&self, k: usize, j: usize) -> f64 {
        self.pow1[k - j + 1] - self.pow1[k - j]
    }

    fn piecewise_constant(&self, k: usize, weight: impl Fn(usize) -> f64) -> f64 {
        let s: f64 = (1..=k).map(|j| weight(j) * self.w1(k, j)).sum();
        s * self.inv_gamma_2ma
    }

    /// Case 1, reading `b[0..k]`.
    pub fn case1(&self, b: &[f64], k: usize) -> Result<f64> {
        self.check(k, b.len(), k)?;
        Ok(self.piecewise_constant(k, |j| b[j - 1]))
    }

    /// Case 2, reading `b[1..=k]`.
    pub fn case2(&self, b: &[f64], k: usize) -> Result<f64> {
        self.check(k, b.len(), k + 1)?;
        Ok(self.piecewise_constant(k, |j| b[j]))
    }

    /// Case 3, reading `b[0..=k]`.
    pub fn case3(&self, b: &[f64], k: usize) -> Result<f64> {
        self.check(k, b.len(), k + 1)?;
        Ok(self.piecewise_constant(k, |j| 0.5 * (b[j] + b[j - 1])))
    }

    /// Case 4 with the slope on `[x_{j-1}, x_j]` taken from finite
    /// differences of the samples.
    pub fn case4(&self, b: &[f64], h: f64, k: usize) -> Result<f64> {
        self.check(k, b.len(), k + 1)?;
        Ok(self.linear(b, h, k, |j| (b[j] - b[j - 1]) / h))
    }

    /// Case 4 with explicit slopes: `slopes[j]` is used on `[x_{j-1}, x_j]`
    /// and the line passes through `(x_j, b[j])`.
    pub fn case4_with_slopes(&self, b: &[f64], slopes: &[f64], h: f64, k: usize) -> Result<f64> {
        self.check(k, b.len(), k + 1)?;
        self.check(k, slopes.len(), k + 1)?;
        Ok(self.linear(b, h, k, |j| slopes[j]))
    }

    fn linear(&self, b: &[f64], h: f64, k: usize, slope: impl Fn(usize) -> f64) -> f64 {
        let e1 = 1.0 - self.alpha;
        let e2 = 2.0 - self.alpha;
        let s: f64 = (1..=k)
            .map(|j| {
                let a = slope(j);
                let m = k - j;
                // the line evaluated at x_k: a * x_k + (b_j - a * x_j)
                let at_end = b[j] + a * (m as f64 * h);
                a / e2 * (self.pow2[m] - self.pow2[m + 1]) + at_end / e1 * self.w1(k, j)
            })
            .sum();
        s * self.inv_gamma_1ma
    }

    pub fn eval(&self, form: CaputoForm, b: &[f64], h: f64, k: usize) -> Result<f64> {
        match form {
            CaputoForm::Case1 => self.case1(b, k),
            CaputoForm::Case2 => self.case2(b, k),
            CaputoForm::Case3 => self.case3(b, k),
            CaputoForm::Case4 => self.case4(b, h, k),
        }
    }
}

fn kernel_for(hist: &DerivativeHistory, k: usize, alpha: f64) -> Result<CaputoKernel> {
    if k < 1 {
        return Err(Error::Domain(
            "discrete Caputo forms need an endpoint index k >= 1".into(),
        ));
    }
    if k > hist.grid().n_steps() {
        return Err(Error::Domain(format!("endpoint {k} lies beyond the grid")));
    }
    CaputoKernel::new(hist.grid(), alpha, k)
}

/// Left-side form: `B_{j-1}` on each subinterval.
pub fn caputo_case1(hist: &DerivativeHistory, k: usize, alpha: f64) -> Result<f64> {
    kernel_for(hist, k, alpha)?.case1(hist.values(), k)
}

/// Right-side form: `B_j` on each subinterval.
pub fn caputo_case2(hist: &DerivativeHistory, k: usize, alpha: f64) -> Result<f64> {
    kernel_for(hist, k, alpha)?.case2(hist.values(), k)
}

/// Middle form: the mean of both ends on each subinterval.
pub fn caputo_case3(hist: &DerivativeHistory, k: usize, alpha: f64) -> Result<f64> {
    kernel_for(hist, k, alpha)?.case3(hist.values(), k)
}

/// Linear form: the interpolant of both ends on each subinterval.
pub fn caputo_case4(hist: &DerivativeHistory, k: usize, alpha: f64) -> Result<f64> {
    kernel_for(hist, k, alpha)?.case4(hist.values(), hist.grid().h(), k)
}

pub fn caputo(form: CaputoForm, hist: &DerivativeHistory, k: usize, alpha: f64) -> Result<f64> {
    kernel_for(hist, k, alpha)?.eval(form, hist.values(), hist.grid().h(), k)
}

/// Discrete Riemann-Liouville integral of order `beta`, with `y` held at the
/// constant value `B_j = y(x_j)` on `(x_{j-1}, x_j]`:
///
/// ```text
/// I^beta y(x_k) ~ 1/Gamma(beta + 1) * [ B_1 (x_k - x0)^beta
///                                       + sum_{j=2..k} (B_j - B_{j-1}) (x_k - x_{j-1})^beta ]
/// ```
///
/// `samples` is indexed by node; `B_0` is not read.
pub fn rl_integral_discrete(samples: &DerivativeHistory, k: usize, beta: f64) -> Result<f64> {
    if k < 1 {
        return Err(Error::Domain("the discrete RL integral needs k >= 1".into()));
    }
    if !(beta > 0.0 && beta.is_finite()) {
        return Err(Error::Domain(format!("integral order must be positive, got {beta}")));
    }
    if k > samples.grid().n_steps() {
        return Err(Error::Domain(format!("endpoint {k} lies beyond the grid")));
    }
    let b = samples.values();
    if b.len() < k + 1 {
        return Err(Error::Startup {
            needed: k + 1,
            available: b.len(),
        });
    }
    let h = samples.grid().h();
    let dist = |m: usize| (m as f64 * h).powf(beta);
    let tail: f64 = (2..=k).map(|j| (b[j] - b[j - 1]) * dist(k - j + 1)).sum();
    Ok((b[1] * dist(k) + tail) / gamma(beta + 1.0)?)
}
