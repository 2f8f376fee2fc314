//! Full-trajectory solvers for the model problems.
//!
//! | id  | class      | driver | default Caputo form |
//! |-----|------------|--------|---------------------|
//! | 1.1 | p2 Caputo  | Euler  | case 1              |
//! | 1.2 | p2 Caputo  | Adams  | case 4              |
//! | 1.3 | p2 Caputo  | Gear   | case 3              |
//! | 2.1 | p2 RL      | Euler  | case 1              |
//! | 2.2 | p2 RL      | Adams  | case 4              |
//! | 2.3 | p2 RL      | Gear   | case 3              |
//! | 3.1 | p1 Caputo  | Euler  | case 1              |
//! | 4.1 | p1 RL      | Euler  | case 1              |
//! | 5.1 | p0 Caputo  | Euler  | discrete RL integral|
//!
//! Riemann-Liouville problems are solved through their Caputo form plus the
//! initial-condition term `y0 (x - x0)^(-alpha) / Gamma(1 - alpha)`. That term
//! is singular at `x0`, so it is evaluated at the shifted abscissa
//! `x*_{k-1} = x_{k-1} + h c` with `c = Gamma(1 - alpha)^(-1/alpha)`.
//!
//! Inside the history sums the derivative sample follows the subinterval
//! index (`D^1 y_{j-1}`, or the mean of `D^1 y_j` and `D^1 y_{j-1}`).

use std::fmt;
use std::str::FromStr;

use crate::analytic::{EquationClass, ProblemSpec};
use crate::discretization::{CaputoForm, CaputoKernel, Grid};
use crate::error::{Error, Result};
use crate::special::gamma;
use crate::steppers::{adams_correct, adams_predict, euler_step, gear_correct, gear_predict, NordsieckState};

/// Runs abort once `|y_k|` exceeds this.
pub const DIVERGENCE_LIMIT: f64 = 1e12;

/// Integer-order driver scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Euler,
    Adams,
    Gear,
}

impl Method {
    pub const ALL: [Method; 3] = [Self::Euler, Self::Adams, Self::Gear];

    pub fn default_form(self) -> CaputoForm {
        match self {
            Self::Euler => CaputoForm::Case1,
            Self::Adams => CaputoForm::Case4,
            Self::Gear => CaputoForm::Case3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Euler => "euler",
            Self::Adams => "adams",
            Self::Gear => "gear",
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Self::Euler => "Euler",
            Self::Adams => "Adams",
            Self::Gear => "Gear",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "euler" => Ok(Self::Euler),
            "adams" => Ok(Self::Adams),
            "gear" => Ok(Self::Gear),
            _ => Err(Error::InvalidConfig(format!("unknown method '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AlgorithmId {
    Alg1_1,
    Alg1_2,
    Alg1_3,
    Alg2_1,
    Alg2_2,
    Alg2_3,
    Alg3_1,
    Alg4_1,
    Alg5_1,
}

impl AlgorithmId {
    pub fn lookup(class: EquationClass, method: Method) -> Option<Self> {
        use EquationClass as C;
        use Method as M;
        Some(match (class, method) {
            (C::P2Caputo, M::Euler) => Self::Alg1_1,
            (C::P2Caputo, M::Adams) => Self::Alg1_2,
            (C::P2Caputo, M::Gear) => Self::Alg1_3,
            (C::P2Rl, M::Euler) => Self::Alg2_1,
            (C::P2Rl, M::Adams) => Self::Alg2_2,
            (C::P2Rl, M::Gear) => Self::Alg2_3,
            (C::P1Caputo, M::Euler) => Self::Alg3_1,
            (C::P1Rl, M::Euler) => Self::Alg4_1,
            (C::P0Caputo, M::Euler) => Self::Alg5_1,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Alg1_1 => "1.1",
            Self::Alg1_2 => "1.2",
            Self::Alg1_3 => "1.3",
            Self::Alg2_1 => "2.1",
            Self::Alg2_2 => "2.2",
            Self::Alg2_3 => "2.3",
            Self::Alg3_1 => "3.1",
            Self::Alg4_1 => "4.1",
            Self::Alg5_1 => "5.1",
        }
    }
}

impl fmt::Display for AlgorithmId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "algorithm {}", self.name())
    }
}

/// Places where a solver resolves an ambiguity in its defining recurrence in
/// a particular way. Recorded on the trace so reports can echo them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DeviationFlag {
    /// Gear on the RL class includes the shifted initial-condition term in
    /// the fractional value, as the Adams and Euler variants do.
    RlCorrectionInGear,
    /// Gear with the linear form uses the Nordsieck `D^2 y` samples as the
    /// slope on each subinterval instead of difference quotients.
    NordsieckSlopes,
    /// First-order classes advance `y_k` with the fractional value computed
    /// at step `k`.
    CurrentFractionalValue,
    /// The method/form pair is not one of the documented combinations.
    UndefinedCombination,
}

impl DeviationFlag {
    pub fn name(self) -> &'static str {
        match self {
            Self::RlCorrectionInGear => "rl-correction-in-gear",
            Self::NordsieckSlopes => "nordsieck-slopes",
            Self::CurrentFractionalValue => "current-fractional-value",
            Self::UndefinedCombination => "undefined-combination",
        }
    }
}

impl fmt::Display for DeviationFlag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Per-node output of a solver.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionTrace {
    pub grid: Grid,
    pub algorithm: AlgorithmId,
    /// `None` for algorithm 5.1, which discretizes the RL integral instead.
    pub form: Option<CaputoForm>,
    pub y: Vec<f64>,
    /// `D^1 y_k`; for algorithm 5.1 the piecewise-constant slopes `B_k`.
    pub d1y: Vec<f64>,
    /// Fractional-derivative value used at each step (`frac[0] = 0`).
    pub frac: Vec<f64>,
    pub flags: Vec<DeviationFlag>,
}

impl SolutionTrace {
    fn start(grid: Grid, algorithm: AlgorithmId, form: Option<CaputoForm>, y0: f64, d1y0: f64) -> Self {
        let cap = grid.n_steps() + 1;
        let mut t = Self {
            grid,
            algorithm,
            form,
            y: Vec::with_capacity(cap),
            d1y: Vec::with_capacity(cap),
            frac: Vec::with_capacity(cap),
            flags: Vec::new(),
        };
        t.y.push(y0);
        t.d1y.push(d1y0);
        t.frac.push(0.0);
        t
    }

    fn push(&mut self, y: f64, d1y: f64, frac: f64) -> Result<()> {
        let step = self.y.len();
        for v in [y, d1y, frac] {
            if !v.is_finite() || v.abs() > DIVERGENCE_LIMIT {
                return Err(Error::Divergence { step, value: v.abs() });
            }
        }
        self.y.push(y);
        self.d1y.push(d1y);
        self.frac.push(frac);
        Ok(())
    }

    fn flag(&mut self, f: DeviationFlag) {
        if !self.flags.contains(&f) {
            self.flags.push(f);
        }
    }

    pub fn len(&self) -> usize {
        self.y.len()
    }

    pub fn is_empty(&self) -> bool {
        self.y.is_empty()
    }

    /// `y` at the grid node nearest `x`, if `x` is a node.
    pub fn value_at(&self, x: f64) -> Option<f64> {
        self.grid.index_of(x).and_then(|k| self.y.get(k).copied())
    }
}

/// `c = Gamma(1 - alpha)^(-1/alpha)`, the offset of the shifted abscissa.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShiftConstant(f64);

impl ShiftConstant {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::Unsupported(format!(
                "the RL shift constant needs 0 < alpha < 1, got {alpha}"
            )));
        }
        Ok(Self(gamma(1.0 - alpha)?.powf(-1.0 / alpha)))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// Initial-condition term that turns a Caputo value into a
/// Riemann-Liouville one (`n = 1`): `y0 t^(-alpha) / Gamma(1 - alpha)`.
pub fn rl_to_caputo_correction(y0: f64, alpha: f64, x_star_minus_x0: f64) -> Result<f64> {
    if x_star_minus_x0.is_nan() || x_star_minus_x0 <= 0.0 {
        return Err(Error::Domain(format!(
            "RL correction needs a positive offset, got {x_star_minus_x0}"
        )));
    }
    if !(0.0..1.0).contains(&alpha) {
        return Err(Error::Domain(format!("alpha must lie in [0, 1), got {alpha}")));
    }
    Ok(y0 * x_star_minus_x0.powf(-alpha) / gamma(1.0 - alpha)?)
}

/// The correction term evaluated at `x*_{k-1} = x_{k-1} + h c`.
#[derive(Debug, Clone, Copy)]
struct RlTerm {
    y0: f64,
    alpha: f64,
    c: f64,
    h: f64,
    inv_gamma: f64,
}

impl RlTerm {
    fn new(spec: &ProblemSpec, grid: &Grid) -> Result<Self> {
        let c = ShiftConstant::new(spec.alpha)?.value();
        Ok(Self {
            y0: spec.ic.y0,
            alpha: spec.alpha,
            c,
            h: grid.h(),
            inv_gamma: 1.0 / gamma(1.0 - spec.alpha)?,
        })
    }

    fn at(&self, k: usize) -> f64 {
        let offset = self.h * ((k - 1) as f64 + self.c);
        self.y0 * offset.powf(-self.alpha) * self.inv_gamma
    }
}

/// `0` for Caputo problems, the shifted RL term otherwise.
fn correction(rl: &Option<RlTerm>, k: usize) -> f64 {
    rl.as_ref().map_or(0.0, |t| t.at(k))
}

fn check_spec(spec: &ProblemSpec, allowed: &[EquationClass]) -> Result<()> {
    spec.validate()?;
    if !allowed.contains(&spec.class) {
        return Err(Error::Domain(format!("solver does not handle {} problems", spec.class)));
    }
    Ok(())
}

fn check_origin(spec: &ProblemSpec, grid: &Grid) -> Result<()> {
    if spec.x0 != grid.x0() {
        return Err(Error::Domain(format!(
            "problem starts at {} but the grid starts at {}",
            spec.x0,
            grid.x0()
        )));
    }
    Ok(())
}

fn rl_for(spec: &ProblemSpec, grid: &Grid) -> Result<Option<RlTerm>> {
    if spec.class.is_riemann_liouville() {
        Ok(Some(RlTerm::new(spec, grid)?))
    } else {
        Ok(None)
    }
}

/// Shared Euler recurrence of algorithms 1.1 and 2.1.
fn p2_euler_step(t: &mut SolutionTrace, kern: &CaputoKernel, rl: &Option<RlTerm>, lambda: f64, k: usize) -> Result<()> {
    let h = t.grid.h();
    let frac = kern.case1(&t.d1y, k)? + correction(rl, k);
    let y = euler_step(t.y[k - 1], t.d1y[k - 1], h);
    let d1y = euler_step(t.d1y[k - 1], -lambda * frac, h);
    t.push(y, d1y, frac)
}

fn p2_euler(spec: &ProblemSpec, grid: &Grid) -> Result<SolutionTrace> {
    let id = AlgorithmId::lookup(spec.class, Method::Euler).expect("p2 class");
    let rl = rl_for(spec, grid)?;
    let kern = CaputoKernel::for_grid(grid, spec.alpha)?;
    let mut t = SolutionTrace::start(*grid, id, Some(CaputoForm::Case1), spec.ic.y0, spec.ic.yp0);
    for k in 1..=grid.n_steps() {
        p2_euler_step(&mut t, &kern, &rl, spec.lambda, k)?;
    }
    Ok(t)
}

/// Adams predictor-corrector for either second-order class, with the
/// fractional value at the new node taken from `form`.
///
/// The first three steps come from the Euler recurrence. The predicted
/// `y_k` does not feed the corrector and is not formed.
pub fn adams_p2(spec: &ProblemSpec, grid: &Grid, form: CaputoForm) -> Result<SolutionTrace> {
    check_spec(spec, &[EquationClass::P2Caputo, EquationClass::P2Rl])?;
    check_origin(spec, grid)?;
    if grid.n_steps() < 4 {
        return Err(Error::InsufficientGrid {
            needed: 4,
            available: grid.n_steps(),
        });
    }
    let id = AlgorithmId::lookup(spec.class, Method::Adams).expect("p2 class");
    let rl = rl_for(spec, grid)?;
    let kern = CaputoKernel::for_grid(grid, spec.alpha)?;
    let h = grid.h();
    let lambda = spec.lambda;
    let mut t = SolutionTrace::start(*grid, id, Some(form), spec.ic.y0, spec.ic.yp0);
    if !is_defined_combination(spec.class, Method::Adams, form) {
        t.flag(DeviationFlag::UndefinedCombination);
    }

    for k in 1..4 {
        p2_euler_step(&mut t, &kern, &rl, lambda, k)?;
    }
    for k in 4..=grid.n_steps() {
        let slopes = [t.d1y[k - 1], t.d1y[k - 2], t.d1y[k - 3], t.d1y[k - 4]];
        let accel = [
            -lambda * t.frac[k - 1],
            -lambda * t.frac[k - 2],
            -lambda * t.frac[k - 3],
            -lambda * t.frac[k - 4],
        ];
        let d1y_pred = adams_predict(t.d1y[k - 1], &accel, h)?;

        t.d1y.push(d1y_pred);
        let frac = kern.eval(form, &t.d1y, h, k);
        t.d1y.pop();
        let frac = frac? + correction(&rl, k);

        let y = adams_correct(t.y[k - 1], &slopes[..3], d1y_pred, h)?;
        let d1y = adams_correct(t.d1y[k - 1], &accel[..3], -lambda * frac, h)?;
        t.push(y, d1y, frac)?;
    }
    Ok(t)
}

/// Gear predictor-corrector for either second-order class. One corrector
/// pass per step, driven by `D^2 y = -lambda * D^alpha y`.
pub fn gear_p2(spec: &ProblemSpec, grid: &Grid, form: CaputoForm) -> Result<SolutionTrace> {
    check_spec(spec, &[EquationClass::P2Caputo, EquationClass::P2Rl])?;
    check_origin(spec, grid)?;
    let id = AlgorithmId::lookup(spec.class, Method::Gear).expect("p2 class");
    let rl = rl_for(spec, grid)?;
    let kern = CaputoKernel::for_grid(grid, spec.alpha)?;
    let h = grid.h();
    let mut t = SolutionTrace::start(*grid, id, Some(form), spec.ic.y0, spec.ic.yp0);
    if rl.is_some() {
        t.flag(DeviationFlag::RlCorrectionInGear);
    }
    if form == CaputoForm::Case4 {
        t.flag(DeviationFlag::NordsieckSlopes);
    }
    if !is_defined_combination(spec.class, Method::Gear, form) {
        t.flag(DeviationFlag::UndefinedCombination);
    }

    let mut state = NordsieckState::from_initial(spec.ic.y0, spec.ic.yp0);
    let mut d2y = Vec::with_capacity(grid.n_steps() + 1);
    d2y.push(0.0);

    for k in 1..=grid.n_steps() {
        let pred = gear_predict(&state, h);
        t.d1y.push(pred.d[1]);
        d2y.push(pred.d[2]);
        let frac = match form {
            CaputoForm::Case4 => kern.case4_with_slopes(&t.d1y, &d2y, h, k),
            other => kern.eval(other, &t.d1y, h, k),
        };
        t.d1y.pop();
        d2y.pop();
        let frac = frac? + correction(&rl, k);

        state = gear_correct(&pred, -spec.lambda * frac, h);
        if !state.is_finite() {
            return Err(Error::Divergence {
                step: k,
                value: f64::INFINITY,
            });
        }
        d2y.push(state.d[2]);
        t.push(state.d[0], state.d[1], frac)?;
    }
    Ok(t)
}

/// Euler with the left-side form for `y'' + lambda C D^alpha y = 0`.
pub fn alg_1_1(spec: &ProblemSpec, grid: &Grid) -> Result<SolutionTrace> {
    check_spec(spec, &[EquationClass::P2Caputo])?;
    check_origin(spec, grid)?;
    p2_euler(spec, grid)
}

/// Adams with the linear form for `y'' + lambda C D^alpha y = 0`.
pub fn alg_1_2(spec: &ProblemSpec, grid: &Grid) -> Result<SolutionTrace> {
    check_spec(spec, &[EquationClass::P2Caputo])?;
    adams_p2(spec, grid, CaputoForm::Case4)
}

/// Gear with the middle form for `y'' + lambda C D^alpha y = 0`.
pub fn alg_1_3(spec: &ProblemSpec, grid: &Grid) -> Result<SolutionTrace> {
    check_spec(spec, &[EquationClass::P2Caputo])?;
    gear_p2(spec, grid, CaputoForm::Case3)
}

/// Euler with the left-side form for `y'' + lambda RL D^alpha y = 0`.
pub fn alg_2_1(spec: &ProblemSpec, grid: &Grid) -> Result<SolutionTrace> {
    check_spec(spec, &[EquationClass::P2Rl])?;
    check_origin(spec, grid)?;
    p2_euler(spec, grid)
}

/// Adams with the linear form for `y'' + lambda RL D^alpha y = 0`.
pub fn alg_2_2(spec: &ProblemSpec, grid: &Grid) -> Result<SolutionTrace> {
    check_spec(spec, &[EquationClass::P2Rl])?;
    adams_p2(spec, grid, CaputoForm::Case4)
}

/// Gear with the middle form for `y'' + lambda RL D^alpha y = 0`.
pub fn alg_2_3(spec: &ProblemSpec, grid: &Grid) -> Result<SolutionTrace> {
    check_spec(spec, &[EquationClass::P2Rl])?;
    gear_p2(spec, grid, CaputoForm::Case3)
}

fn p1_euler(spec: &ProblemSpec, grid: &Grid) -> Result<SolutionTrace> {
    let id = AlgorithmId::lookup(spec.class, Method::Euler).expect("p1 class");
    let rl = rl_for(spec, grid)?;
    let kern = CaputoKernel::for_grid(grid, spec.alpha)?;
    let h = grid.h();
    // D^1 y_0 = 0
    let mut t = SolutionTrace::start(*grid, id, Some(CaputoForm::Case1), spec.ic.y0, 0.0);
    t.flag(DeviationFlag::CurrentFractionalValue);
    for k in 1..=grid.n_steps() {
        let frac = kern.case1(&t.d1y, k)? + correction(&rl, k);
        let y = euler_step(t.y[k - 1], -spec.lambda * frac, h);
        t.push(y, -spec.lambda * frac, frac)?;
    }
    Ok(t)
}

/// Euler with the left-side form for `y' + lambda C D^alpha y = 0`.
pub fn alg_3_1(spec: &ProblemSpec, grid: &Grid) -> Result<SolutionTrace> {
    check_spec(spec, &[EquationClass::P1Caputo])?;
    check_origin(spec, grid)?;
    p1_euler(spec, grid)
}

/// Euler with the left-side form for `y' + lambda RL D^alpha y = 0`.
pub fn alg_4_1(spec: &ProblemSpec, grid: &Grid) -> Result<SolutionTrace> {
    check_spec(spec, &[EquationClass::P1Rl])?;
    check_origin(spec, grid)?;
    p1_euler(spec, grid)
}

/// Euler for `C D^alpha y + lambda y = 0`, written as
/// `I^(1-alpha) y' = -lambda y` with `y'` piecewise constant (`B_k` on
/// `(x_{k-1}, x_k]`) and solved for the newest slope at each step.
pub fn alg_5_1(spec: &ProblemSpec, grid: &Grid) -> Result<SolutionTrace> {
    check_spec(spec, &[EquationClass::P0Caputo])?;
    check_origin(spec, grid)?;
    let alpha = spec.alpha;
    let h = grid.h();
    let n = grid.n_steps();
    let e = 1.0 - alpha;
    let pow: Vec<f64> = (0..=n + 1).map(|m| (m as f64 * h).powf(e)).collect();
    let lead = h.powf(alpha - 1.0);
    let g = gamma(2.0 - alpha)?;

    let mut t = SolutionTrace::start(*grid, AlgorithmId::Alg5_1, None, spec.ic.y0, 0.0);
    for k in 1..=n {
        // sum_{j=2..k} B_{j-1} [ (x_k - x_{j-2})^e - (x_k - x_{j-1})^e ]
        let memory: f64 = (2..=k).map(|j| t.d1y[j - 1] * (pow[k - j + 2] - pow[k - j + 1])).sum();
        let b = lead * (-spec.lambda * g * t.y[k - 1] - memory);
        let y = euler_step(t.y[k - 1], b, h);
        t.push(y, b, -spec.lambda * t.y[k - 1])?;
    }
    Ok(t)
}

/// Whether `(method, form)` is one of the documented pairings for `class`.
pub fn is_defined_combination(class: EquationClass, method: Method, form: CaputoForm) -> bool {
    use EquationClass as C;
    match (class, method) {
        (C::P2Caputo | C::P2Rl, Method::Euler) => form == CaputoForm::Case1,
        (C::P2Caputo | C::P2Rl, Method::Adams | Method::Gear) => form != CaputoForm::Case1,
        (C::P1Caputo | C::P1Rl | C::P0Caputo, Method::Euler) => form == CaputoForm::Case1,
        _ => false,
    }
}

/// Whether a solver exists for the combination at all.
pub fn is_computable(class: EquationClass, method: Method, form: CaputoForm) -> bool {
    use EquationClass as C;
    match (class, method) {
        (C::P2Caputo | C::P2Rl, Method::Euler) => form == CaputoForm::Case1,
        (C::P2Caputo | C::P2Rl, Method::Adams | Method::Gear) => true,
        (C::P1Caputo | C::P1Rl | C::P0Caputo, Method::Euler) => form == CaputoForm::Case1,
        _ => false,
    }
}

/// Dispatch to the solver for `spec.class` and `method`.
pub fn solve(spec: &ProblemSpec, grid: &Grid, method: Method, form: CaputoForm) -> Result<SolutionTrace> {
    if spec.class == EquationClass::P0Rl {
        return Err(Error::Unsupported(
            "p0-rl has only the zero solution among continuous functions; no solver is provided".into(),
        ));
    }
    if !is_computable(spec.class, method, form) {
        return Err(Error::Unsupported(format!(
            "{method} with {form} is not available for {} problems",
            spec.class
        )));
    }
    match (spec.class, method) {
        (EquationClass::P2Caputo, Method::Euler) => alg_1_1(spec, grid),
        (EquationClass::P2Rl, Method::Euler) => alg_2_1(spec, grid),
        (_, Method::Adams) => adams_p2(spec, grid, form),
        (_, Method::Gear) => gear_p2(spec, grid, form),
        (EquationClass::P1Caputo, _) => alg_3_1(spec, grid),
        (EquationClass::P1Rl, _) => alg_4_1(spec, grid),
        (EquationClass::P0Caputo, _) => alg_5_1(spec, grid),
        (EquationClass::P0Rl, _) => unreachable!("rejected above"),
    }
}
