//! Run configurations, error reports, reference-table reproduction and
//! figure data.

use std::fmt::Write as _;

use crate::algorithms::{
    is_computable, is_defined_combination, solve, AlgorithmId, DeviationFlag, Method, SolutionTrace,
};
use crate::analytic::{analytic_value, caputo_of_x_squared, EquationClass, InitialConditions, ProblemSpec};
use crate::batch::map_ordered;
use crate::discretization::{CaputoForm, CaputoKernel, Grid};
use crate::error::{Error, Result};
use crate::special::{mittag_leffler, MlParams};

pub const TABLE_ALPHAS: [f64; 3] = [0.1, 0.5, 0.9];
pub const TABLE_STEP: f64 = 0.01;
pub const LONG_SAMPLES: [f64; 5] = [1.0, 4.0, 6.0, 8.0, 10.0];
pub const SHORT_SAMPLES: [f64; 5] = [1.0, 2.0, 3.0, 4.0, 5.0];

/// Tolerances of the acceptance policy.
pub mod tolerance {
    /// Absolute, on analytic cells printed to 7 decimals.
    pub const ANALYTIC_ABS: f64 = 5e-7;
    /// Absolute bound on the linear-form errors of the `x^2` table.
    pub const LINEAR_FORM_ABS: f64 = 1e-6;
    /// Relative, on the piecewise-constant form errors of the `x^2` table.
    pub const FORM_ERROR_REL: f64 = 0.10;
    /// Relative, on every other error cell.
    pub const SOLVER_ERROR_REL: f64 = 0.25;
}

/// Everything needed to run one configured problem.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub class: EquationClass,
    pub alpha: f64,
    pub lambda: f64,
    pub x0: f64,
    pub x_end: f64,
    pub h: f64,
    pub y0: f64,
    pub yp0: Option<f64>,
    pub method: Method,
    /// `None` selects the method's default form.
    pub form: Option<CaputoForm>,
    /// Report points; empty means `x_end` only.
    pub samples: Vec<f64>,
    /// Accept method/form pairs outside the documented set.
    pub allow_any_form: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            class: EquationClass::P2Caputo,
            alpha: 0.5,
            lambda: 1.0,
            x0: 0.0,
            x_end: 1.0,
            h: TABLE_STEP,
            y0: 0.0,
            yp0: None,
            method: Method::Euler,
            form: None,
            samples: Vec::new(),
            allow_any_form: false,
        }
    }
}

impl RunConfig {
    pub fn form(&self) -> CaputoForm {
        self.form.unwrap_or_else(|| self.method.default_form())
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("alpha", self.alpha),
            ("lambda", self.lambda),
            ("x0", self.x0),
            ("x-end", self.x_end),
            ("h", self.h),
            ("y0", self.y0),
        ] {
            if !v.is_finite() {
                return Err(Error::InvalidConfig(format!("{name} must be finite, got {v}")));
            }
        }
        if self.h <= 0.0 {
            return Err(Error::InvalidConfig(format!("h must be positive, got {}", self.h)));
        }
        if self.x_end <= self.x0 {
            return Err(Error::InvalidConfig(format!(
                "x-end ({}) must exceed x0 ({})",
                self.x_end, self.x0
            )));
        }
        if !(0.0..1.0).contains(&self.alpha) {
            return Err(Error::InvalidConfig(format!(
                "alpha must lie in [0, 1), got {}",
                self.alpha
            )));
        }
        let form = self.form();
        if !is_computable(self.class, self.method, form) {
            return Err(Error::InvalidConfig(format!(
                "{} with {form} is not available for {}",
                self.method, self.class
            )));
        }
        if !self.allow_any_form && !is_defined_combination(self.class, self.method, form) {
            return Err(Error::InvalidConfig(format!(
                "{} with {form} is not a documented combination for {}; pass --allow-any-form to run it anyway",
                self.method, self.class
            )));
        }
        if let Some(x) = self.samples.iter().find(|&&x| !(x >= self.x0 && x <= self.x_end)) {
            return Err(Error::InvalidConfig(format!(
                "sample point {x} lies outside [{}, {}]",
                self.x0, self.x_end
            )));
        }
        self.grid()?;
        Ok(())
    }

    pub fn grid(&self) -> Result<Grid> {
        Grid::spanning(self.x0, self.x_end, self.h).map_err(|e| Error::InvalidConfig(e.to_string()))
    }

    pub fn spec(&self) -> Result<ProblemSpec> {
        let yp0 = if self.class.integer_order() == 2 {
            self.yp0.unwrap_or(0.0)
        } else {
            0.0
        };
        ProblemSpec::new(
            self.class,
            self.alpha,
            self.lambda,
            self.x0,
            InitialConditions::new(self.y0, yp0),
        )
    }

    pub fn echo(&self) -> String {
        let mut s = format!(
            "class={} alpha={} lambda={} x0={} x_end={} h={} y0={}",
            self.class, self.alpha, self.lambda, self.x0, self.x_end, self.h, self.y0
        );
        if let Some(yp0) = self.yp0 {
            let _ = write!(s, " yp0={yp0}");
        }
        let _ = write!(s, " method={} form={}", self.method, self.form());
        s
    }
}

/// One reported point: the error is derived, never stored.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SamplePoint {
    pub x: f64,
    pub numeric: f64,
    pub analytic: Option<f64>,
}

impl SamplePoint {
    pub fn abs_error(&self) -> Option<f64> {
        self.analytic.map(|a| (self.numeric - a).abs())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ErrorReport {
    pub config: String,
    pub algorithm: AlgorithmId,
    pub form: Option<CaputoForm>,
    pub flags: Vec<DeviationFlag>,
    pub points: Vec<SamplePoint>,
}

impl ErrorReport {
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.config);
        match self.form {
            Some(f) => {
                let _ = writeln!(out, "{} ({})", self.algorithm, f.label());
            }
            None => {
                let _ = writeln!(out, "{}", self.algorithm);
            }
        }
        if !self.flags.is_empty() {
            let names: Vec<&str> = self.flags.iter().map(|f| f.name()).collect();
            let _ = writeln!(out, "flags: {}", names.join(", "));
        }
        let _ = writeln!(
            out,
            "{:>10}  {:>16}  {:>16}  {:>10}",
            "x", "numeric", "analytic", "abs error"
        );
        for p in &self.points {
            let a = p.analytic.map_or("-".to_string(), |v| format!("{v:.7}"));
            let e = p.abs_error().map_or("-".to_string(), |v| format!("{v:.2e}"));
            let _ = writeln!(out, "{:>10}  {:>16.7}  {a:>16}  {e:>10}", p.x, p.numeric);
        }
        out
    }
}

/// Shortest round-trip decimal, scientific below `1e-3`.
///
/// Shortest round-trip output keeps `abs_error` equal to the recomputed
/// `|y_numeric - y_analytic|` after parsing.
pub fn fmt_num(v: f64) -> String {
    if v == 0.0 {
        "0".to_string()
    } else if v.abs() < 1e-3 {
        format!("{v:e}")
    } else {
        format!("{v}")
    }
}

/// `v` with `digits` significant digits; scientific outside `[1e-4, 1e10)`.
pub fn fmt_sig(v: f64, digits: usize) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let sci = format!("{:.*e}", digits - 1, v);
    let exp: i32 = sci.rsplit('e').next().and_then(|e| e.parse().ok()).unwrap_or(0);
    if (-4..10).contains(&exp) {
        format!("{:.*}", (digits as i32 - 1 - exp).max(0) as usize, v)
    } else {
        sci
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveOutput {
    pub trace: SolutionTrace,
    /// Every grid node.
    pub rows: Vec<SamplePoint>,
    pub report: ErrorReport,
}

fn analytic_or_none(spec: &ProblemSpec, x: f64) -> Result<Option<f64>> {
    match analytic_value(spec, x) {
        Ok(v) => Ok(Some(v)),
        Err(Error::Unsupported(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

pub fn run_solve(cfg: &RunConfig) -> Result<SolveOutput> {
    cfg.validate()?;
    let grid = cfg.grid()?;
    let spec = cfg.spec()?;
    let trace = solve(&spec, &grid, cfg.method, cfg.form())?;

    let rows = grid
        .nodes()
        .zip(&trace.y)
        .map(|(x, &numeric)| {
            Ok(SamplePoint {
                x,
                numeric,
                analytic: analytic_or_none(&spec, x)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let samples = if cfg.samples.is_empty() {
        vec![cfg.x_end]
    } else {
        cfg.samples.clone()
    };
    let points = samples
        .iter()
        .map(|&x| {
            let k = grid
                .index_of(x)
                .ok_or_else(|| Error::InvalidConfig(format!("sample point {x} is not a grid node")))?;
            Ok(rows[k])
        })
        .collect::<Result<Vec<_>>>()?;

    let mut flags = trace.flags.clone();
    if cfg.allow_any_form
        && !is_defined_combination(cfg.class, cfg.method, cfg.form())
        && !flags.contains(&DeviationFlag::UndefinedCombination)
    {
        flags.push(DeviationFlag::UndefinedCombination);
    }
    let report = ErrorReport {
        config: cfg.echo(),
        algorithm: trace.algorithm,
        form: trace.form,
        flags,
        points,
    };
    Ok(SolveOutput { trace, rows, report })
}

pub fn solve_csv(rows: &[SamplePoint]) -> String {
    let mut out = String::from("x,y_numeric,y_analytic,abs_error\n");
    for p in rows {
        let a = p.analytic.map(fmt_num).unwrap_or_default();
        let e = p.abs_error().map(fmt_num).unwrap_or_default();
        let _ = writeln!(out, "{},{},{a},{e}", fmt_num(p.x), fmt_num(p.numeric));
    }
    out
}

/// Published values; `NaN` marks a cell the source leaves blank.
pub mod published {
    const NR: f64 = f64::NAN;

    /// Caputo derivative of `x^2` at `1, 4, 6, 8, 10`, by alpha.
    pub const T1_ANALYTIC: [[f64; 5]; 3] = [
        [1.0944780, 15.2447755, 32.9377877, 56.8955141, 86.9374806],
        [1.5045056, 12.0360444, 22.1116256, 34.0430746, 47.5766431],
        [1.9111582, 8.7813771, 13.7171223, 18.8232939, 24.0600562],
    ];
    /// `[alpha][case-I..case-IV][x]`.
    pub const T1_ERRORS: [[[f64; 5]; 4]; 3] = [
        [
            [1.04e-2, 3.62e-2, 5.22e-2, 6.76e-2, 8.26e-2],
            [1.04e-2, 3.62e-2, 5.21e-2, 6.75e-2, 8.26e-2],
            [1.77e-5, 1.98e-5, 2.02e-5, 2.07e-5, 2.10e-5],
            [0.0, 0.0, 2.00e-8, 0.0, 4.00e-8],
        ],
        [
            [1.17e-2, 2.30e-2, 2.81e-2, 3.24e-2, 3.61e-2],
            [1.08e-2, 2.21e-2, 2.72e-2, 3.14e-2, 3.52e-2],
            [4.60e-4, 4.64e-4, 4.65e-4, 4.66e-4, 4.66e-4],
            [0.0, 0.0, 0.0, 2.00e-8, 1.00e-8],
        ],
        [
            [1.60e-2, 1.76e-2, 1.81e-2, 1.85e-2, 1.88e-2],
            [4.98e-3, 6.54e-3, 7.04e-3, 7.41e-3, 7.70e-3],
            [5.53e-3, 5.53e-3, 5.53e-3, 5.53e-3, 5.53e-3],
            [0.0, 0.0, 0.0, 1.00e-8, 1.00e-8],
        ],
    ];

    pub const T2_ANALYTIC: [[f64; 5]; 3] = [
        [0.8226218, -0.4960927, -0.2222706, 0.5587627, -0.1911696],
        [0.7374822, 0.3129516, 0.1623955, 0.2017797, 0.1867275],
        [0.6512921, 0.8643086, 0.8128471, 0.7787088, 0.7563200],
    ];
    /// `[alpha][Gear, Adams][case-II, case-III, case-IV][x]`.
    pub const T2_ERRORS: [[[[f64; 5]; 3]; 2]; 3] = [
        [
            [
                [2.71e-4, 1.39e-2, 4.21e-3, 5.77e-3, 1.39e-2],
                [1.40e-5, 1.24e-5, 4.23e-6, 1.47e-5, 7.66e-6],
                [1.06e-5, 1.75e-5, 3.08e-5, 5.57e-6, 3.18e-5],
            ],
            [
                [8.55e-5, 1.40e-2, 4.27e-3, 5.89e-3, 1.40e-2],
                [1.71e-4, 1.05e-4, 5.35e-5, 1.11e-4, 3.97e-5],
                [1.70e-4, 1.14e-4, 3.67e-5, 1.09e-4, 5.85e-5],
            ],
        ],
        [
            [
                [7.85e-4, 7.84e-3, 5.76e-3, 4.45e-3, 5.04e-3],
                [1.26e-4, 1.02e-4, 1.96e-5, 2.53e-5, 8.40e-6],
                [1.67e-4, 7.25e-5, 4.27e-5, 4.71e-5, 4.29e-5],
            ],
            [
                [6.92e-5, 7.54e-3, 5.62e-3, 4.27e-3, 4.87e-3],
                [5.90e-4, 3.97e-4, 1.22e-4, 1.56e-4, 1.75e-4],
                [5.40e-4, 2.22e-4, 1.06e-4, 1.34e-4, 1.23e-4],
            ],
        ],
        [
            [
                [2.29e-3, 4.97e-3, 5.13e-3, 5.09e-3, 5.06e-3],
                [1.09e-3, 5.18e-5, 1.20e-4, 7.50e-5, 4.63e-5],
                [1.80e-3, 2.39e-3, 2.25e-3, 2.15e-3, 2.09e-3],
            ],
            [
                [8.76e-5, 1.78e-3, 2.13e-3, 2.23e-3, 2.28e-3],
                [1.25e-3, 3.19e-3, 3.06e-3, 2.89e-3, 2.78e-3],
                [5.65e-4, 7.89e-4, 7.37e-4, 7.02e-4, 6.79e-4],
            ],
        ],
    ];

    pub const T3_ANALYTIC: [[f64; 5]; 3] = [
        [-0.1773782, -1.4960927, -1.2222706, -0.4412373, -1.1911696],
        [-0.2625177, -0.6870484, -0.8376044, -0.7982203, -0.8132725],
        [-0.3487079, -0.1356914, -0.1871529, -0.2212912, -0.2436800],
    ];
    /// `[alpha][Euler, Gear, Adams][x]`.
    pub const T3_ERRORS: [[[f64; 5]; 3]; 3] = [
        [
            [1.79e-5, 2.68e-5, 2.92e-5, 4.23e-6, 3.85e-5],
            [1.40e-5, 1.24e-5, 4.18e-6, 1.47e-5, 7.60e-6],
            [1.70e-4, 1.14e-4, 3.67e-5, 1.09e-4, 5.85e-5],
        ],
        [
            [1.26e-4, 1.04e-4, 2.41e-5, 2.51e-5, 9.32e-6],
            [1.26e-4, 1.02e-4, 1.96e-5, 2.53e-5, 8.40e-6],
            [5.40e-4, 2.22e-4, 1.06e-4, 1.34e-4, 1.23e-4],
        ],
        [
            [1.08e-3, 5.29e-5, 1.20e-4, 7.49e-5, 4.62e-5],
            [1.06e-3, 5.18e-5, 1.20e-4, 7.50e-5, 4.63e-5],
            [5.65e-4, 7.89e-4, 7.37e-4, 7.02e-4, 6.79e-4],
        ],
    ];

    pub const T4_ANALYTIC: [[f64; 5]; 3] = [
        [1.3290813, -1.0029826, 0.3872104, 0.4928008, -0.5873420],
        [1.1341116, 0.1100800, 0.1748923, 0.2090891, 0.1714270],
        [1.0146791, 0.8374876, 0.7913672, 0.7652525, NR],
    ];
    /// `[alpha][Euler, Gear, Adams][x]`.
    pub const T4_ERRORS: [[[f64; 5]; 3]; 3] = [
        [
            [4.83e-3, 3.40e-3, 8.51e-4, 3.06e-3, 1.49e-3],
            [4.83e-3, 3.41e-3, 8.92e-4, 3.10e-3, 1.49e-3],
            [1.06e-2, 6.39e-3, 2.50e-3, 7.28e-3, 2.39e-3],
        ],
        [
            [7.42e-3, 8.06e-5, 3.56e-4, 8.41e-4, 6.45e-4],
            [7.42e-3, 7.54e-5, 3.53e-4, 8.43e-4, 6.45e-4],
            [2.27e-2, 7.88e-3, 4.71e-3, 6.06e-3, 5.61e-3],
        ],
        [
            [5.73e-3, 2.17e-3, 2.01e-3, 1.96e-3, NR],
            [5.74e-3, 2.17e-3, 2.01e-3, 1.96e-3, NR],
            [3.15e-2, 3.69e-2, 3.50e-2, 3.37e-2, NR],
        ],
    ];

    pub const T5_ANALYTIC: [[f64; 5]; 3] = [
        [0.3760660, 0.1811155, 0.1014866, 0.0644356, 0.0452231],
        [0.4275836, 0.3362040, 0.2873412, 0.2553957, 0.2323262],
        [0.4855645, 0.4682030, 0.4580801, 0.4509182, 0.4453768],
    ];
    pub const T5_EULER: [[f64; 5]; 3] = [
        [1.36e-3, 9.40e-4, 5.42e-4, 3.03e-4, 1.70e-4],
        [9.61e-4, 8.60e-4, 7.88e-4, 7.31e-4, 6.85e-4],
        [1.23e-3, 1.19e-3, 1.17e-3, 1.16e-3, 1.14e-3],
    ];

    pub const T6_ANALYTIC: [[f64; 5]; 3] = [
        [0.4855645, 0.4682030, 0.4580801, 0.4509182, 0.4453768],
        [0.4275836, 0.3362040, 0.2873412, 0.2553957, 0.2323262],
        [0.3760660, 0.1811155, 0.1014866, 0.0644356, 0.0452231],
    ];
    pub const T6_EULER: [[f64; 5]; 3] = [
        [1.33e-4, 7.06e-5, 4.85e-5, 3.69e-5, 3.07e-5],
        [8.39e-4, 5.30e-4, 3.73e-4, 2.82e-4, 2.23e-4],
        [1.55e-3, 1.27e-3, 7.99e-4, 4.77e-4, 2.88e-4],
    ];
}

/// Why the Adams row of table 4 is not held to the relative tolerance.
pub const TABLE4_ADAMS_NOTE: &str = "the published Adams errors for the RL problem could not be reproduced \
from the stated recurrence under any reading tried; computed errors are reported alongside";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    NotReported,
    /// Outside tolerance but covered by a documented discrepancy.
    Documented,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Self::Pass => "pass",
            Self::Fail => "fail",
            Self::NotReported => "not-reported",
            Self::Documented => "documented",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowKind {
    Analytic,
    /// Table 1: a bare discrete form applied to a known history.
    Form(CaputoForm),
    Solver(Method, CaputoForm),
}

impl RowKind {
    pub fn label(self) -> String {
        match self {
            Self::Analytic => "analytical".to_string(),
            Self::Form(f) => f.label().to_string(),
            Self::Solver(m, f) => format!("{} {}", m.label(), f.label()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cell {
    pub alpha: f64,
    pub row: RowKind,
    pub x: f64,
    /// Analytic value, or absolute error for error rows.
    pub computed: f64,
    pub published: Option<f64>,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TableReport {
    pub id: u8,
    pub title: &'static str,
    pub samples: [f64; 5],
    pub cells: Vec<Cell>,
    pub flags: Vec<DeviationFlag>,
    pub notes: Vec<&'static str>,
}

fn published(v: f64) -> Option<f64> {
    (!v.is_nan()).then_some(v)
}

fn within_rel(computed: f64, printed: f64, rel: f64) -> bool {
    (computed - printed).abs() <= rel * printed.abs()
}

fn analytic_cell(alpha: f64, x: f64, computed: f64, printed: f64) -> Cell {
    let published = published(printed);
    let verdict = match published {
        None => Verdict::NotReported,
        Some(p) if (computed - p).abs() <= tolerance::ANALYTIC_ABS => Verdict::Pass,
        Some(_) => Verdict::Fail,
    };
    Cell {
        alpha,
        row: RowKind::Analytic,
        x,
        computed,
        published,
        verdict,
    }
}

fn error_cell(alpha: f64, row: RowKind, x: f64, computed: f64, printed: f64, documented: bool) -> Cell {
    let published = published(printed);
    let verdict = match published {
        None => Verdict::NotReported,
        Some(p) => {
            let ok = match row {
                RowKind::Form(CaputoForm::Case4) => computed <= tolerance::LINEAR_FORM_ABS,
                RowKind::Form(_) => within_rel(computed, p, tolerance::FORM_ERROR_REL),
                _ => within_rel(computed, p, tolerance::SOLVER_ERROR_REL),
            };
            match (ok, documented) {
                (true, _) => Verdict::Pass,
                (false, true) => Verdict::Documented,
                (false, false) => Verdict::Fail,
            }
        }
    };
    Cell {
        alpha,
        row,
        x,
        computed,
        published,
        verdict,
    }
}

fn table_grid(samples: &[f64; 5]) -> Result<Grid> {
    Grid::spanning(0.0, samples[4], TABLE_STEP)
}

fn node(grid: &Grid, x: f64) -> Result<usize> {
    grid.index_of(x)
        .ok_or_else(|| Error::Domain(format!("{x} is not a grid node")))
}

fn table1() -> Result<TableReport> {
    let samples = LONG_SAMPLES;
    let grid = table_grid(&samples)?;
    let h = grid.h();
    // D^1 (x^2) at the nodes
    let history: Vec<f64> = grid.nodes().map(|x| 2.0 * x).collect();
    let blocks = map_ordered(&TABLE_ALPHAS, |&alpha| -> Result<Vec<Cell>> {
        let a = TABLE_ALPHAS.iter().position(|&v| v == alpha).expect("table alpha");
        let kern = CaputoKernel::for_grid(&grid, alpha)?;
        let mut cells = Vec::new();
        let exact: Vec<f64> = samples
            .iter()
            .map(|&x| caputo_of_x_squared(alpha, x))
            .collect::<Result<_>>()?;
        for (i, &x) in samples.iter().enumerate() {
            cells.push(analytic_cell(alpha, x, exact[i], published::T1_ANALYTIC[a][i]));
        }
        for (f, form) in CaputoForm::ALL.into_iter().enumerate() {
            for (i, &x) in samples.iter().enumerate() {
                let v = kern.eval(form, &history, h, node(&grid, x)?)?;
                cells.push(error_cell(
                    alpha,
                    RowKind::Form(form),
                    x,
                    (v - exact[i]).abs(),
                    published::T1_ERRORS[a][f][i],
                    false,
                ));
            }
        }
        Ok(cells)
    });
    Ok(TableReport {
        id: 1,
        title: "errors of the discrete Caputo forms applied to y = x^2",
        samples,
        cells: blocks.into_iter().collect::<Result<Vec<_>>>()?.concat(),
        flags: Vec::new(),
        notes: Vec::new(),
    })
}

/// One solver row of tables 2-6.
struct SolverRow {
    method: Method,
    form: CaputoForm,
    printed: [f64; 5],
    documented: bool,
}

fn solver_table(
    id: u8,
    title: &'static str,
    class: EquationClass,
    ic: InitialConditions,
    samples: [f64; 5],
    analytic: &[[f64; 5]; 3],
    rows: impl Fn(usize) -> Vec<SolverRow>,
) -> Result<TableReport> {
    let grid = table_grid(&samples)?;
    let mut jobs = Vec::new();
    for (a, &alpha) in TABLE_ALPHAS.iter().enumerate() {
        let spec = ProblemSpec::new(class, alpha, 1.0, 0.0, ic)?;
        for row in rows(a) {
            jobs.push((a, spec, row));
        }
    }
    let traces = map_ordered(&jobs, |(_, spec, row)| solve(spec, &grid, row.method, row.form));

    let mut cells = Vec::new();
    let mut flags = Vec::new();
    let mut notes = Vec::new();
    for (a, &alpha) in TABLE_ALPHAS.iter().enumerate() {
        let spec = ProblemSpec::new(class, alpha, 1.0, 0.0, ic)?;
        let exact: Vec<f64> = samples
            .iter()
            .map(|&x| analytic_value(&spec, x))
            .collect::<Result<_>>()?;
        for (i, &x) in samples.iter().enumerate() {
            cells.push(analytic_cell(alpha, x, exact[i], analytic[a][i]));
        }
        for ((ja, _, row), trace) in jobs.iter().zip(&traces) {
            if *ja != a {
                continue;
            }
            let trace = trace.as_ref().map_err(Clone::clone)?;
            for f in &trace.flags {
                if !flags.contains(f) {
                    flags.push(*f);
                }
            }
            for (i, &x) in samples.iter().enumerate() {
                let err = (trace.y[node(&grid, x)?] - exact[i]).abs();
                let cell = error_cell(
                    alpha,
                    RowKind::Solver(row.method, row.form),
                    x,
                    err,
                    row.printed[i],
                    row.documented,
                );
                if cell.verdict == Verdict::Documented && !notes.contains(&TABLE4_ADAMS_NOTE) {
                    notes.push(TABLE4_ADAMS_NOTE);
                }
                cells.push(cell);
            }
        }
    }
    Ok(TableReport {
        id,
        title,
        samples,
        cells,
        flags,
        notes,
    })
}

fn three_methods(errors: &[[f64; 5]; 3], adams_documented: bool) -> Vec<SolverRow> {
    vec![
        SolverRow {
            method: Method::Euler,
            form: CaputoForm::Case1,
            printed: errors[0],
            documented: false,
        },
        SolverRow {
            method: Method::Gear,
            form: CaputoForm::Case3,
            printed: errors[1],
            documented: false,
        },
        SolverRow {
            method: Method::Adams,
            form: CaputoForm::Case4,
            printed: errors[2],
            documented: adams_documented,
        },
    ]
}

pub fn run_table(id: u8) -> Result<TableReport> {
    use published::*;
    let caputo2 = EquationClass::P2Caputo;
    match id {
        1 => table1(),
        2 => solver_table(
            2,
            "errors of Gear and Adams with forms II-IV, y'' + C D^alpha y = 0, y(0) = 0, y'(0) = 1",
            caputo2,
            InitialConditions::new(0.0, 1.0),
            LONG_SAMPLES,
            &T2_ANALYTIC,
            |a| {
                let mut rows = Vec::new();
                for (m, method) in [Method::Gear, Method::Adams].into_iter().enumerate() {
                    for (f, form) in [CaputoForm::Case2, CaputoForm::Case3, CaputoForm::Case4]
                        .into_iter()
                        .enumerate()
                    {
                        rows.push(SolverRow {
                            method,
                            form,
                            printed: T2_ERRORS[a][m][f],
                            documented: false,
                        });
                    }
                }
                rows
            },
        ),
        3 => solver_table(
            3,
            "errors of Euler, Gear and Adams, y'' + C D^alpha y = 0, y(0) = -1, y'(0) = 1",
            caputo2,
            InitialConditions::new(-1.0, 1.0),
            LONG_SAMPLES,
            &T3_ANALYTIC,
            |a| three_methods(&T3_ERRORS[a], false),
        ),
        4 => solver_table(
            4,
            "errors of Euler, Gear and Adams, y'' + RL D^alpha y = 0, y(0) = 1, y'(0) = 1",
            EquationClass::P2Rl,
            InitialConditions::new(1.0, 1.0),
            LONG_SAMPLES,
            &T4_ANALYTIC,
            |a| three_methods(&T4_ERRORS[a], true),
        ),
        5 => solver_table(
            5,
            "errors of Euler, y' + RL D^alpha y = 0, y(0) = 1",
            EquationClass::P1Rl,
            InitialConditions::value(1.0),
            SHORT_SAMPLES,
            &T5_ANALYTIC,
            |a| {
                vec![SolverRow {
                    method: Method::Euler,
                    form: CaputoForm::Case1,
                    printed: T5_EULER[a],
                    documented: false,
                }]
            },
        ),
        6 => solver_table(
            6,
            "errors of Euler, C D^alpha y + y = 0, y(0) = 1",
            EquationClass::P0Caputo,
            InitialConditions::value(1.0),
            SHORT_SAMPLES,
            &T6_ANALYTIC,
            |a| {
                vec![SolverRow {
                    method: Method::Euler,
                    form: CaputoForm::Case1,
                    printed: T6_EULER[a],
                    documented: false,
                }]
            },
        ),
        _ => Err(Error::InvalidConfig(format!("table id must be 1-6, got {id}"))),
    }
}

impl TableReport {
    pub fn has_failures(&self) -> bool {
        self.cells.iter().any(|c| c.verdict == Verdict::Fail)
    }

    pub fn count(&self, v: Verdict) -> usize {
        self.cells.iter().filter(|c| c.verdict == v).count()
    }

    pub fn cell(&self, alpha: f64, row: RowKind, x: f64) -> Option<&Cell> {
        self.cells.iter().find(|c| c.alpha == alpha && c.row == row && c.x == x)
    }

    /// Rows in first-seen order.
    fn rows(&self) -> Vec<RowKind> {
        let mut rows = Vec::new();
        for c in &self.cells {
            if !rows.contains(&c.row) {
                rows.push(c.row);
            }
        }
        rows
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "Table {}: {}", self.id, self.title);
        let _ = write!(out, "{:<22}", "");
        for x in self.samples {
            let _ = write!(out, "{:>26}", format!("y({x})"));
        }
        out.push('\n');
        for alpha in TABLE_ALPHAS {
            let _ = writeln!(out, "alpha = {alpha}");
            for row in self.rows() {
                let _ = write!(out, "  {:<20}", row.label());
                for x in self.samples {
                    let Some(c) = self.cell(alpha, row, x) else { continue };
                    let text = match (c.row, c.published) {
                        (RowKind::Analytic, Some(p)) => format!("{:.7} ({p:.7})", c.computed),
                        (RowKind::Analytic, None) => format!("{:.7} (-)", c.computed),
                        (_, Some(p)) => format!("{:.2e} ({p:.2e})", c.computed),
                        (_, None) => format!("{:.2e} (-)", c.computed),
                    };
                    let mark = match c.verdict {
                        Verdict::Pass => "  ",
                        Verdict::Fail => " !",
                        Verdict::NotReported => " -",
                        Verdict::Documented => " *",
                    };
                    let _ = write!(out, "{text:>24}{mark}");
                }
                out.push('\n');
            }
        }
        let _ = writeln!(
            out,
            "cells: {} pass, {} fail, {} not reported, {} documented",
            self.count(Verdict::Pass),
            self.count(Verdict::Fail),
            self.count(Verdict::NotReported),
            self.count(Verdict::Documented)
        );
        out.push_str("computed (published); ! outside tolerance, - not reported, * documented\n");
        if !self.flags.is_empty() {
            let names: Vec<&str> = self.flags.iter().map(|f| f.name()).collect();
            let _ = writeln!(out, "flags: {}", names.join(", "));
        }
        for n in &self.notes {
            let _ = writeln!(out, "note: {n}");
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("table,alpha,row,x,computed,published,verdict\n");
        for c in &self.cells {
            let p = c.published.map(fmt_num).unwrap_or_default();
            let _ = writeln!(
                out,
                "{},{},{},{},{},{p},{}",
                self.id,
                fmt_num(c.alpha),
                c.row.label(),
                fmt_num(c.x),
                fmt_num(c.computed),
                c.verdict.name()
            );
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FigureCurve {
    pub figure: u8,
    pub alpha: f64,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    /// Numerical overlay (figure 4 only).
    pub numeric: Option<Vec<f64>>,
}

impl FigureCurve {
    pub fn file_name(&self) -> String {
        format!("figure{}_alpha{}.csv", self.figure, self.alpha)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(if self.numeric.is_some() {
            "x,y,y_numeric\n"
        } else {
            "x,y\n"
        });
        for (i, (x, y)) in self.x.iter().zip(&self.y).enumerate() {
            let _ = write!(out, "{},{}", fmt_num(*x), fmt_num(*y));
            if let Some(n) = &self.numeric {
                let _ = write!(out, ",{}", fmt_num(n[i]));
            }
            out.push('\n');
        }
        out
    }
}

/// Dense analytic curves over `[0, 10]` (figures 2-4) or `[0, 5]` (5-6).
pub fn run_figure(id: u8) -> Result<Vec<FigureCurve>> {
    let (class, ic, x_end) = match id {
        2 => (EquationClass::P2Caputo, InitialConditions::new(-1.0, 1.0), 10.0),
        3 => (EquationClass::P2Rl, InitialConditions::new(1.0, 1.0), 10.0),
        4 => (EquationClass::P1Caputo, InitialConditions::value(2.0), 10.0),
        5 => (EquationClass::P1Rl, InitialConditions::value(1.0), 5.0),
        6 => (EquationClass::P0Caputo, InitialConditions::value(1.0), 5.0),
        _ => return Err(Error::InvalidConfig(format!("figure id must be 2-6, got {id}"))),
    };
    let grid = Grid::spanning(0.0, x_end, TABLE_STEP)?;
    let curves = map_ordered(&TABLE_ALPHAS, |&alpha| -> Result<FigureCurve> {
        let spec = ProblemSpec::new(class, alpha, 1.0, 0.0, ic)?;
        let x: Vec<f64> = grid.nodes().collect();
        let y = x
            .iter()
            .map(|&x| analytic_value(&spec, x))
            .collect::<Result<Vec<_>>>()?;
        let numeric = if id == 4 {
            Some(solve(&spec, &grid, Method::Euler, CaputoForm::Case1)?.y)
        } else {
            None
        };
        Ok(FigureCurve {
            figure: id,
            alpha,
            x,
            y,
            numeric,
        })
    });
    curves.into_iter().collect()
}

/// `E_{alpha,beta}(z)` printed with 10 significant digits.
pub fn run_ml(alpha: f64, beta: f64, z: f64) -> Result<String> {
    Ok(fmt_sig(mittag_leffler(&MlParams::new(alpha, beta)?, z)?, 10))
}
