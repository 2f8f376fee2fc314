//! Many independent solves: table cells, alpha sweeps, figure curves.
//!
//! With the `parallel` feature (default) jobs run on the rayon pool;
//! without it `solve_many` is the sequential loop. Results always come back
//! in job order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::algorithms::{solve, Method, SolutionTrace};
use crate::analytic::ProblemSpec;
use crate::discretization::{CaputoForm, Grid};
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Job {
    pub spec: ProblemSpec,
    pub grid: Grid,
    pub method: Method,
    pub form: CaputoForm,
}

impl Job {
    pub fn new(spec: ProblemSpec, grid: Grid, method: Method, form: CaputoForm) -> Self {
        Self {
            spec,
            grid,
            method,
            form,
        }
    }

    pub fn run(&self) -> Result<SolutionTrace> {
        solve(&self.spec, &self.grid, self.method, self.form)
    }
}

pub fn solve_many_sequential(jobs: &[Job]) -> Vec<Result<SolutionTrace>> {
    jobs.iter().map(Job::run).collect()
}

#[cfg(feature = "parallel")]
pub fn solve_many_parallel(jobs: &[Job]) -> Vec<Result<SolutionTrace>> {
    jobs.par_iter().map(Job::run).collect()
}

pub fn solve_many(jobs: &[Job]) -> Vec<Result<SolutionTrace>> {
    #[cfg(feature = "parallel")]
    {
        solve_many_parallel(jobs)
    }
    #[cfg(not(feature = "parallel"))]
    {
        solve_many_sequential(jobs)
    }
}

/// Apply `f` to every item, concurrently when `parallel` is enabled.
pub fn map_ordered<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::{EquationClass, InitialConditions};

    fn jobs() -> Vec<Job> {
        let grid = Grid::spanning(0.0, 2.0, 0.01).unwrap();
        let mut out = Vec::new();
        for alpha in [0.1, 0.5, 0.9] {
            for method in Method::ALL {
                let spec = ProblemSpec::new(
                    EquationClass::P2Caputo,
                    alpha,
                    1.0,
                    0.0,
                    InitialConditions::new(1.0, 1.0),
                )
                .unwrap();
                out.push(Job::new(spec, grid, method, method.default_form()));
            }
        }
        out
    }

    #[test]
    fn batch_matches_sequential_bitwise() {
        let jobs = jobs();
        let a = solve_many(&jobs);
        let b = solve_many_sequential(&jobs);
        assert_eq!(a, b);
        assert!(a.iter().all(|r| r.is_ok()));
    }

    #[test]
    fn errors_stay_in_place() {
        let mut jobs = jobs();
        jobs[4].form = CaputoForm::Case2;
        jobs[3].method = Method::Euler;
        jobs[3].form = CaputoForm::Case3;
        let out = solve_many(&jobs);
        assert!(out[3].is_err());
        assert!(out[4].is_ok());
    }
}
