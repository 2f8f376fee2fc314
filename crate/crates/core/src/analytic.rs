//! Model problems and their closed-form solutions.
//!
//! All six classes have the form `D^p y + lambda * D^alpha y = 0` (p = 1, 2)
//! or `D^alpha y + lambda * y = 0` (p = 0), with the fractional derivative
//! taken either in the Caputo or the Riemann-Liouville sense and
//! `0 <= alpha < 1`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::special::{gamma, mittag_leffler, ml_deriv_x, MlParams};

/// The six linear model equations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EquationClass {
    /// `y'' + lambda * C D^alpha y = 0`
    P2Caputo,
    /// `y'' + lambda * RL D^alpha y = 0`
    P2Rl,
    /// `y' + lambda * C D^alpha y = 0`
    P1Caputo,
    /// `y' + lambda * RL D^alpha y = 0`
    P1Rl,
    /// `C D^alpha y + lambda * y = 0`
    P0Caputo,
    /// `RL D^alpha y + lambda * y = 0`
    P0Rl,
}

impl EquationClass {
    pub const ALL: [EquationClass; 6] = [
        EquationClass::P2Caputo,
        EquationClass::P2Rl,
        EquationClass::P1Caputo,
        EquationClass::P1Rl,
        EquationClass::P0Caputo,
        EquationClass::P0Rl,
    ];

    /// Order of the integer derivative.
    pub fn integer_order(self) -> u32 {
        match self {
            Self::P2Caputo | Self::P2Rl => 2,
            Self::P1Caputo | Self::P1Rl => 1,
            Self::P0Caputo | Self::P0Rl => 0,
        }
    }

    pub fn is_riemann_liouville(self) -> bool {
        matches!(self, Self::P2Rl | Self::P1Rl | Self::P0Rl)
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::P2Caputo => "p2-caputo",
            Self::P2Rl => "p2-rl",
            Self::P1Caputo => "p1-caputo",
            Self::P1Rl => "p1-rl",
            Self::P0Caputo => "p0-caputo",
            Self::P0Rl => "p0-rl",
        }
    }
}

impl fmt::Display for EquationClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EquationClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.to_ascii_lowercase().replace('_', "-");
        Self::ALL
            .into_iter()
            .find(|c| c.name() == norm)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown equation class '{s}'")))
    }
}

/// `y(x0)` and `y'(x0)`. The slope is only used by the second-order classes.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct InitialConditions {
    pub y0: f64,
    pub yp0: f64,
}

impl InitialConditions {
    pub fn new(y0: f64, yp0: f64) -> Self {
        Self { y0, yp0 }
    }

    pub fn value(y0: f64) -> Self {
        Self { y0, yp0: 0.0 }
    }

    pub fn scaled(self, s: f64) -> Self {
        Self {
            y0: s * self.y0,
            yp0: s * self.yp0,
        }
    }
}

/// A fully specified model problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProblemSpec {
    pub class: EquationClass,
    pub alpha: f64,
    pub lambda: f64,
    pub x0: f64,
    pub ic: InitialConditions,
}

impl ProblemSpec {
    pub fn new(class: EquationClass, alpha: f64, lambda: f64, x0: f64, ic: InitialConditions) -> Result<Self> {
        let spec = Self {
            class,
            alpha,
            lambda,
            x0,
            ic,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..1.0).contains(&self.alpha) {
            return Err(Error::Domain(format!("alpha must lie in [0, 1), got {}", self.alpha)));
        }
        for (name, v) in [
            ("lambda", self.lambda),
            ("x0", self.x0),
            ("y0", self.ic.y0),
            ("yp0", self.ic.yp0),
        ] {
            if !v.is_finite() {
                return Err(Error::Domain(format!("{name} must be finite, got {v}")));
            }
        }
        Ok(())
    }

    pub fn with_ic(self, ic: InitialConditions) -> Self {
        Self { ic, ..self }
    }

    fn expect(&self, class: EquationClass) -> Result<()> {
        if self.class != class {
            return Err(Error::Domain(format!("expected a {class} problem, got {}", self.class)));
        }
        Ok(())
    }

    fn offset(&self, x: f64) -> Result<f64> {
        let t = x - self.x0;
        if t < 0.0 {
            return Err(Error::Domain(format!("x = {x} lies before x0 = {}", self.x0)));
        }
        Ok(t)
    }
}

/// `y` and `y'` of a second-order solution at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValueAndSlope {
    pub y: f64,
    pub d1y: f64,
}

fn ml(alpha: f64, beta: f64, z: f64) -> Result<f64> {
    mittag_leffler(&MlParams::new(alpha, beta)?, z)
}

fn ml_dx(alpha: f64, beta: f64, lambda: f64, t: f64) -> Result<f64> {
    ml_deriv_x(&MlParams::new(alpha, beta)?, lambda, t)
}

/// Solution of `y'' + lambda * C D^alpha y = 0`.
pub fn analytic_eq5(spec: &ProblemSpec, x: f64) -> Result<ValueAndSlope> {
    spec.expect(EquationClass::P2Caputo)?;
    let t = spec.offset(x)?;
    let e = 2.0 - spec.alpha;
    let z = -spec.lambda * t.powf(e);
    let InitialConditions { y0, yp0 } = spec.ic;

    let e2 = ml(e, 2.0, z)?;
    let y = y0 + yp0 * t * e2;
    let d1y = yp0 * e2 + yp0 * e * t * ml_dx(e, 2.0, spec.lambda, t)?;
    Ok(ValueAndSlope { y, d1y })
}

/// Solution of `y'' + lambda * RL D^alpha y = 0`.
pub fn analytic_eq6(spec: &ProblemSpec, x: f64) -> Result<ValueAndSlope> {
    spec.expect(EquationClass::P2Rl)?;
    let t = spec.offset(x)?;
    let e = 2.0 - spec.alpha;
    let z = -spec.lambda * t.powf(e);
    let InitialConditions { y0, yp0 } = spec.ic;

    let e1 = ml(e, 1.0, z)?;
    let e2 = ml(e, 2.0, z)?;
    let y = y0 * e1 + yp0 * t * e2;
    let d1y = e * y0 * ml_dx(e, 1.0, spec.lambda, t)? + yp0 * e2 + e * yp0 * t * ml_dx(e, 2.0, spec.lambda, t)?;
    Ok(ValueAndSlope { y, d1y })
}

/// Solution of `y' + lambda * C D^alpha y = 0`: the constant `y0`.
pub fn analytic_eq7(spec: &ProblemSpec, _x: f64) -> Result<f64> {
    spec.expect(EquationClass::P1Caputo)?;
    Ok(spec.ic.y0)
}

/// Solution of `y' + lambda * RL D^alpha y = 0`.
pub fn analytic_eq8(spec: &ProblemSpec, x: f64) -> Result<f64> {
    spec.expect(EquationClass::P1Rl)?;
    let t = spec.offset(x)?;
    let e = 1.0 - spec.alpha;
    Ok(spec.ic.y0 * ml(e, 1.0, -spec.lambda * t.powf(e))?)
}

/// Solution of `C D^alpha y + lambda * y = 0`.
pub fn analytic_eq9(spec: &ProblemSpec, x: f64) -> Result<f64> {
    spec.expect(EquationClass::P0Caputo)?;
    let t = spec.offset(x)?;
    if spec.alpha == 0.0 {
        // E_{0,1} is outside the series domain; at alpha = 0 the equation is algebraic
        return Ok(if t == 0.0 {
            spec.ic.y0
        } else {
            spec.ic.y0 / (1.0 + spec.lambda)
        });
    }
    Ok(spec.ic.y0 * ml(spec.alpha, 1.0, -spec.lambda * t.powf(spec.alpha))?)
}

/// Solution of `RL D^alpha y + lambda * y = 0` within continuous functions.
///
/// Only the zero function qualifies, so this returns 0 for every input. The
/// class has no numerical algorithm and is excluded from the tables.
pub fn analytic_eq10(spec: &ProblemSpec, _x: f64) -> Result<f64> {
    spec.expect(EquationClass::P0Rl)?;
    Ok(0.0)
}

/// Closed form of `C D^alpha x^2 = Gamma(3) x^(2 - alpha) / Gamma(3 - alpha)`.
pub fn caputo_of_x_squared(alpha: f64, x: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&alpha) {
        return Err(Error::Domain(format!("alpha must lie in [0, 1), got {alpha}")));
    }
    if x < 0.0 {
        return Err(Error::Domain(format!("x must be >= 0, got {x}")));
    }
    Ok(2.0 * x.powf(2.0 - alpha) / gamma(3.0 - alpha)?)
}

/// The analytic `y(x)` for any class.
pub fn analytic_value(spec: &ProblemSpec, x: f64) -> Result<f64> {
    match spec.class {
        EquationClass::P2Caputo => analytic_eq5(spec, x).map(|v| v.y),
        EquationClass::P2Rl => analytic_eq6(spec, x).map(|v| v.y),
        EquationClass::P1Caputo => analytic_eq7(spec, x),
        EquationClass::P1Rl => analytic_eq8(spec, x),
        EquationClass::P0Caputo => analytic_eq9(spec, x),
        EquationClass::P0Rl => analytic_eq10(spec, x),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(class: EquationClass, alpha: f64, y0: f64, yp0: f64) -> ProblemSpec {
        ProblemSpec::new(class, alpha, 1.0, 0.0, InitialConditions::new(y0, yp0)).unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn eq5_reference_values() {
        let s = spec(EquationClass::P2Caputo, 0.5, -1.0, 1.0);
        assert!(close(analytic_eq5(&s, 1.0).unwrap().y, -0.262_517_7, 5e-7));
        let s = spec(EquationClass::P2Caputo, 0.1, 0.0, 1.0);
        assert!(close(analytic_eq5(&s, 4.0).unwrap().y, -0.496_092_7, 5e-7));
    }

    #[test]
    fn eq5_at_origin_returns_initial_conditions() {
        for alpha in [0.0, 0.3, 0.9] {
            let s = ProblemSpec::new(
                EquationClass::P2Caputo,
                alpha,
                2.5,
                1.0,
                InitialConditions::new(0.7, -1.3),
            )
            .unwrap();
            let v = analytic_eq5(&s, 1.0).unwrap();
            assert_eq!(v.y, 0.7);
            assert_eq!(v.d1y, -1.3);
        }
    }

    #[test]
    fn eq6_reference_values() {
        let s = spec(EquationClass::P2Rl, 0.1, 1.0, 1.0);
        assert!(close(analytic_eq6(&s, 1.0).unwrap().y, 1.329_081_3, 5e-7));
        let s = spec(EquationClass::P2Rl, 0.5, 1.0, 1.0);
        assert!(close(analytic_eq6(&s, 4.0).unwrap().y, 0.110_080_0, 5e-7));
        assert_eq!(analytic_eq6(&s, 0.0).unwrap().y, 1.0);
    }

    #[test]
    fn eq7_constant() {
        let s = spec(EquationClass::P1Caputo, 0.5, 2.0, 0.0);
        assert_eq!(analytic_eq7(&s, 5.0).unwrap(), 2.0);
        let s = spec(EquationClass::P1Caputo, 0.5, -3.5, 0.0);
        assert_eq!(analytic_eq7(&s, 10.0).unwrap(), -3.5);
        let s = spec(EquationClass::P1Caputo, 0.5, 0.0, 0.0);
        assert_eq!(analytic_eq7(&s, 123.0).unwrap(), 0.0);
    }

    #[test]
    fn eq8_eq9_reference_values() {
        let s = spec(EquationClass::P1Rl, 0.5, 1.0, 0.0);
        assert!(close(analytic_eq8(&s, 1.0).unwrap(), 0.427_583_6, 5e-7));
        assert_eq!(analytic_eq8(&s, 0.0).unwrap(), 1.0);
        let s = spec(EquationClass::P1Rl, 0.1, 1.0, 0.0);
        assert!(close(analytic_eq8(&s, 2.0).unwrap(), 0.181_115_5, 5e-7));

        let s = spec(EquationClass::P0Caputo, 0.9, 1.0, 0.0);
        assert!(close(analytic_eq9(&s, 1.0).unwrap(), 0.376_066_0, 5e-7));
        assert_eq!(analytic_eq9(&s, 0.0).unwrap(), 1.0);
        let s = spec(EquationClass::P0Caputo, 0.5, 1.0, 0.0);
        assert!(close(analytic_eq9(&s, 3.0).unwrap(), 0.287_341_2, 5e-7));
    }

    #[test]
    fn eq8_eq9_swap_symmetry() {
        for alpha in [0.1, 0.3, 0.5, 0.9] {
            let a = spec(EquationClass::P1Rl, alpha, 1.0, 0.0);
            let b = spec(EquationClass::P0Caputo, 1.0 - alpha, 1.0, 0.0);
            for x in [0.5, 1.0, 2.5, 5.0] {
                let u = analytic_eq8(&a, x).unwrap();
                let v = analytic_eq9(&b, x).unwrap();
                assert!(close(u, v, 1e-12), "{alpha} {x}: {u} {v}");
            }
        }
    }

    #[test]
    fn eq10_is_zero() {
        let s = spec(EquationClass::P0Rl, 0.5, 1.0, 0.0);
        assert_eq!(analytic_eq10(&s, 0.0).unwrap(), 0.0);
        assert_eq!(analytic_eq10(&s, 7.0).unwrap(), 0.0);
    }

    #[test]
    fn caputo_square_reference_values() {
        assert!(close(caputo_of_x_squared(0.1, 1.0).unwrap(), 1.094_478_0, 5e-7));
        assert!(close(caputo_of_x_squared(0.9, 10.0).unwrap(), 24.060_056_2, 5e-7));
        assert_eq!(caputo_of_x_squared(0.4, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn wrong_class_and_bad_inputs_are_rejected() {
        let s = spec(EquationClass::P2Caputo, 0.5, 1.0, 1.0);
        assert!(analytic_eq6(&s, 1.0).is_err());
        assert!(analytic_eq5(&s, -1.0).is_err());
        assert!(ProblemSpec::new(EquationClass::P2Caputo, 1.0, 1.0, 0.0, InitialConditions::default()).is_err());
        assert!(ProblemSpec::new(
            EquationClass::P2Caputo,
            0.5,
            f64::NAN,
            0.0,
            InitialConditions::default()
        )
        .is_err());
    }

    #[test]
    fn slope_matches_finite_difference() {
        let step = 1e-5;
        for class in [EquationClass::P2Caputo, EquationClass::P2Rl] {
            for alpha in [0.1, 0.5, 0.9] {
                let s = spec(class, alpha, 1.0, 1.0);
                for x in [1.0, 4.0] {
                    let f = |t: f64| analytic_value(&s, t).unwrap();
                    let fd = (f(x + step) - f(x - step)) / (2.0 * step);
                    let d1y = match class {
                        EquationClass::P2Caputo => analytic_eq5(&s, x).unwrap().d1y,
                        _ => analytic_eq6(&s, x).unwrap().d1y,
                    };
                    let scale = fd.abs().max(1e-3);
                    assert!((d1y - fd).abs() / scale < 1e-6, "{class} {alpha} {x}: {d1y} vs {fd}");
                }
            }
        }
    }

    #[test]
    fn eq5_near_integer_order_limit() {
        // alpha -> 1: y'' + lambda y' = 0, y = y0 + yp0 (1 - e^{-lambda x}) / lambda
        let s = spec(EquationClass::P2Caputo, 0.999, 0.5, 1.0);
        for x in [0.5f64, 1.0, 2.0] {
            let classical = 0.5 + (1.0 - (-x).exp());
            assert!(close(analytic_eq5(&s, x).unwrap().y, classical, 1e-2));
        }
    }

    #[test]
    fn class_names_round_trip() {
        for c in EquationClass::ALL {
            assert_eq!(c.name().parse::<EquationClass>().unwrap(), c);
        }
        assert_eq!("P2_CAPUTO".parse::<EquationClass>().unwrap(), EquationClass::P2Caputo);
        assert!("p3-caputo".parse::<EquationClass>().is_err());
    }
}
