use fracstep::batch::{solve_many, solve_many_sequential, Job};
use fracstep::discretization::CaputoKernel;
use fracstep::special::{gamma, mittag_leffler, MlParams};
use fracstep::{solve, CaputoForm, EquationClass, Grid, InitialConditions, Method, ProblemSpec};
use proptest::prelude::*;

fn form() -> impl Strategy<Value = CaputoForm> {
    prop::sample::select(CaputoForm::ALL.to_vec())
}

fn method() -> impl Strategy<Value = Method> {
    prop::sample::select(Method::ALL.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kernel_is_linear(
        alpha in 0.0f64..0.99,
        f in prop::collection::vec(-10.0f64..10.0, 2..80),
        seed in prop::collection::vec(-10.0f64..10.0, 80),
        a in -3.0f64..3.0,
        b in -3.0f64..3.0,
        form in form(),
    ) {
        let n = f.len() - 1;
        let grid = Grid::new(0.0, 0.05, n).unwrap();
        let kern = CaputoKernel::for_grid(&grid, alpha).unwrap();
        let g = &seed[..=n];
        let mix: Vec<f64> = f.iter().zip(g).map(|(x, y)| a * x + b * y).collect();
        for k in 1..=n {
            let lhs = kern.eval(form, &mix, grid.h(), k).unwrap();
            let fa = kern.eval(form, &f, grid.h(), k).unwrap();
            let gb = kern.eval(form, g, grid.h(), k).unwrap();
            let scale = (a * fa).abs() + (b * gb).abs() + 1.0;
            prop_assert!((lhs - (a * fa + b * gb)).abs() <= 1e-13 * scale);
        }
    }

    #[test]
    fn constant_history_telescopes(alpha in 0.0f64..0.99, c in -5.0f64..5.0, n in 1usize..200, form in form()) {
        let grid = Grid::new(0.0, 0.01, n).unwrap();
        let kern = CaputoKernel::for_grid(&grid, alpha).unwrap();
        let flat = vec![c; n + 1];
        let exact = c * grid.x_end().powf(1.0 - alpha) / gamma(2.0 - alpha).unwrap();
        prop_assert!((kern.eval(form, &flat, grid.h(), n).unwrap() - exact).abs() <= 1e-13 * (1.0 + exact.abs()));
    }

    #[test]
    fn ml_recurrence(alpha in 0.5f64..2.0, beta in 0.5f64..3.0, z in -4.0f64..3.0) {
        let lhs = mittag_leffler(&MlParams::new(alpha, beta).unwrap(), z).unwrap();
        let rhs = 1.0 / gamma(beta).unwrap() + z * mittag_leffler(&MlParams::new(alpha, alpha + beta).unwrap(), z).unwrap();
        // rounding is bounded by the sum of |terms|, which is E(|z|)
        let scale = mittag_leffler(&MlParams::new(alpha, beta).unwrap(), z.abs()).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-13 * (1.0 + scale));
    }

    #[test]
    fn gamma_recurrence(x in 0.05f64..30.0) {
        let lhs = gamma(x + 1.0).unwrap();
        let rhs = x * gamma(x).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-13 * lhs.abs());
    }

    #[test]
    fn second_order_traces_scale_with_initial_conditions(
        alpha in 0.05f64..0.95,
        y0 in -2.0f64..2.0,
        yp0 in -2.0f64..2.0,
        shift in -3i32..4,
        negate in any::<bool>(),
        rl in any::<bool>(),
        method in method(),
    ) {
        let class = if rl { EquationClass::P2Rl } else { EquationClass::P2Caputo };
        let s = ProblemSpec::new(class, alpha, 1.0, 0.0, InitialConditions::new(y0, yp0)).unwrap();
        let grid = Grid::new(0.0, 0.02, 60).unwrap();
        let scale = 2f64.powi(shift) * if negate { -1.0 } else { 1.0 };
        let base = solve(&s, &grid, method, method.default_form()).unwrap();
        let scaled = solve(&s.with_ic(s.ic.scaled(scale)), &grid, method, method.default_form()).unwrap();
        for (p, q) in base.y.iter().zip(&scaled.y) {
            prop_assert_eq!(scale * p, *q);
        }
    }

    #[test]
    fn gear_and_euler_agree_to_first_order(alpha in 0.05f64..0.95, y0 in -1.0f64..1.0, yp0 in -1.0f64..1.0) {
        let s = ProblemSpec::new(EquationClass::P2Caputo, alpha, 1.0, 0.0, InitialConditions::new(y0, yp0)).unwrap();
        let grid = Grid::spanning(0.0, 2.0, 0.005).unwrap();
        let e = solve(&s, &grid, Method::Euler, CaputoForm::Case1).unwrap();
        let g = solve(&s, &grid, Method::Gear, CaputoForm::Case3).unwrap();
        let gap = e.y.iter().zip(&g.y).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        prop_assert!(gap < 0.02 * (1.0 + y0.abs() + yp0.abs()));
    }
}

#[test]
fn parallel_batch_matches_sequential() {
    let grid = Grid::spanning(0.0, 3.0, 0.01).unwrap();
    let mut jobs = Vec::new();
    for alpha in [0.1, 0.3, 0.5, 0.7, 0.9] {
        for class in [EquationClass::P2Caputo, EquationClass::P2Rl] {
            for m in Method::ALL {
                let s = ProblemSpec::new(class, alpha, 1.0, 0.0, InitialConditions::new(1.0, -0.5)).unwrap();
                jobs.push(Job::new(s, grid, m, m.default_form()));
            }
        }
    }
    assert_eq!(solve_many(&jobs), solve_many_sequential(&jobs));
}
