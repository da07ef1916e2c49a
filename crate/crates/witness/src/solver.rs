use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::error::WitnessError;
use crate::frame::{retract, StiefelFrame};
use crate::problem::WitnessProblem;

/// Restarts are launched in fixed-size batches so results do not depend on the thread count.
pub const RESTART_BATCH: usize = 8;

const ARMIJO: f64 = 1e-4;
const MIN_STEP: f64 = 1e-16;
const MAX_STEP: f64 = 1e6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Budget {
    pub max_restarts: usize,
    pub max_iters: usize,
    pub residual_target: f64,
}

impl Default for Budget {
    fn default() -> Self {
        Self {
            max_restarts: 32,
            max_iters: 20_000,
            residual_target: 1e-12,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WitnessResult {
    pub frame: StiefelFrame,
    pub residual: f64,
    /// Iterations spent by the winning restart.
    pub iterations: usize,
    pub restarts_used: usize,
    /// Index of the winning restart.
    pub restart: usize,
    pub converged: bool,
    pub seed: u64,
}

/// One descent run from a fixed start.
#[derive(Debug, Clone, PartialEq)]
pub struct Descent {
    pub frame: StiefelFrame,
    pub residual: f64,
    pub iterations: usize,
    /// Objective after each accepted step, starting with the initial value.
    pub history: Vec<f64>,
}

/// `G - V sym(V^T G)` for the Euclidean gradient `G`.
pub fn riemannian_gradient(problem: &WitnessProblem<'_>, v: &StiefelFrame) -> DMatrix<f64> {
    v.project_tangent(&problem.euclidean_gradient(v.matrix()))
}

/// Retraction that nudges the step randomly until `V + step` has full rank.
pub fn retract_or_perturb<R: Rng + ?Sized>(
    v: &StiefelFrame,
    step: &DMatrix<f64>,
    rng: &mut R,
) -> Result<StiefelFrame, WitnessError> {
    let mut step = step.clone();
    for _ in 0..64 {
        match retract(v, &step) {
            Err(WitnessError::RankDeficient) => {
                let scale = 1e-8 * (1.0 + step.amax());
                step += DMatrix::from_fn(step.nrows(), step.ncols(), |_, _| {
                    scale * rng.sample::<f64, _>(StandardNormal)
                });
            }
            other => return other,
        }
    }
    Err(WitnessError::RankDeficient)
}

/// Riemannian gradient descent with Armijo backtracking.
pub fn descend<R: Rng + ?Sized>(
    problem: &WitnessProblem<'_>,
    start: StiefelFrame,
    max_iters: usize,
    residual_target: f64,
    restart: usize,
    rng: &mut R,
) -> Result<Descent, WitnessError> {
    let non_finite = |iteration| WitnessError::NonFinite { restart, iteration };
    let mut v = start;
    let mut value = problem.objective_raw(v.matrix());
    if !value.is_finite() {
        return Err(non_finite(0));
    }
    let mut history = vec![value];
    let mut step = 1.0;
    let mut iterations = 0;
    while iterations < max_iters && value > residual_target {
        let grad = riemannian_gradient(problem, &v);
        let slope = grad.norm_squared();
        if !slope.is_finite() {
            return Err(non_finite(iterations));
        }
        if slope == 0.0 {
            break;
        }
        let mut t = step;
        let accepted = loop {
            let candidate = retract_or_perturb(&v, &(&grad * -t), rng)?;
            let trial = problem.objective_raw(candidate.matrix());
            if !trial.is_finite() {
                return Err(non_finite(iterations));
            }
            if trial <= value - ARMIJO * t * slope {
                break Some((candidate, trial));
            }
            t *= 0.5;
            if t < MIN_STEP {
                break None;
            }
        };
        let Some((candidate, trial)) = accepted else {
            break;
        };
        v = candidate;
        value = trial;
        history.push(value);
        step = (2.0 * t).min(MAX_STEP);
        iterations += 1;
    }
    let frame = retract(&v, &DMatrix::zeros(v.ambient_dim(), v.len()))?;
    let residual = problem.objective_raw(frame.matrix());
    Ok(Descent { frame, residual, iterations, history })
}

fn restart_rng(seed: u64, restart: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(restart as u64);
    rng
}

/// Multi-start descent. Picks the smallest residual, ties going to the earlier restart,
/// and stops after the first batch that reaches `residual_target`.
pub fn solve(
    problem: &WitnessProblem<'_>,
    budget: Budget,
    seed: u64,
) -> Result<WitnessResult, WitnessError> {
    if budget.max_restarts == 0 {
        return Err(WitnessError::InvalidProblem("max_restarts must be at least 1".into()));
    }
    let (n, p) = (problem.n(), problem.frame_len());
    let mut best: Option<(usize, Descent)> = None;
    let mut used = 0;
    while used < budget.max_restarts {
        let end = (used + RESTART_BATCH).min(budget.max_restarts);
        let runs: Vec<Result<Descent, WitnessError>> = (used..end)
            .into_par_iter()
            .map(|restart| {
                let mut rng = restart_rng(seed, restart);
                let start = if restart == 0 {
                    StiefelFrame::standard(n, p)
                } else {
                    StiefelFrame::random(n, p, &mut rng)
                };
                descend(problem, start, budget.max_iters, budget.residual_target, restart, &mut rng)
            })
            .collect();
        for (offset, run) in runs.into_iter().enumerate() {
            let run = run?;
            if best.as_ref().is_none_or(|(_, b)| run.residual < b.residual) {
                best = Some((used + offset, run));
            }
        }
        used = end;
        if best.as_ref().is_some_and(|(_, b)| b.residual <= budget.residual_target) {
            break;
        }
    }
    let (restart, run) = best.expect("at least one restart ran");
    Ok(WitnessResult {
        converged: run.residual <= budget.residual_target
            && run.frame.orthonormality_error() <= run.frame.tolerance(),
        frame: run.frame,
        residual: run.residual,
        iterations: run.iterations,
        restarts_used: used,
        restart,
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map::QuadraticMap;
    use nalgebra::DVector;

    #[test]
    fn constant_map_is_solved_at_start() {
        let f = QuadraticMap::constant(6, DVector::from_vec(vec![3.0, 1.0, 4.0]));
        let p = WitnessProblem::new(6, 2, &f).unwrap();
        let res = solve(&p, Budget::default(), 0).unwrap();
        assert_eq!(res.residual, 0.0);
        assert_eq!(res.iterations, 0);
        assert_eq!(res.restarts_used, RESTART_BATCH);
        assert!(res.converged);
        let v = StiefelFrame::standard(6, 4);
        assert!(riemannian_gradient(&p, &v).iter().all(|&x| x == 0.0));
    }

    #[test]
    fn descent_is_monotone() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let f = QuadraticMap::random(8, 2, &mut rng);
        let p = WitnessProblem::new(8, 2, &f).unwrap();
        for restart in 0..5 {
            let start = StiefelFrame::random(8, 4, &mut rng);
            let run = descend(&p, start, 500, 0.0, restart, &mut rng).unwrap();
            assert!(run.history.windows(2).all(|w| w[1] <= w[0]));
            assert_eq!(run.history.len(), run.iterations + 1);
        }
    }

    #[test]
    fn solve_is_deterministic() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let f = QuadraticMap::random(5, 3, &mut rng);
        let p = WitnessProblem::new(5, 1, &f).unwrap();
        let a = solve(&p, Budget::default(), 99).unwrap();
        let b = solve(&p, Budget::default(), 99).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.seed, 99);
    }

    #[test]
    fn finds_coincident_pair() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let f = QuadraticMap::random(4, 2, &mut rng);
        let p = WitnessProblem::new(4, 1, &f).unwrap();
        let res = solve(&p, Budget::default(), 1).unwrap();
        assert!(res.converged, "residual {}", res.residual);
        assert!(res.residual < 1e-6);
        assert!(res.frame.orthonormality_error() < 1e-10);
    }

    #[test]
    fn zero_restarts_rejected() {
        let f = QuadraticMap::constant(4, DVector::from_element(1, 0.0));
        let p = WitnessProblem::new(4, 1, &f).unwrap();
        let budget = Budget { max_restarts: 0, ..Budget::default() };
        assert!(solve(&p, budget, 0).is_err());
    }
}
