use nalgebra::{DMatrix, DVector};

use crate::error::WitnessError;
use crate::frame::StiefelFrame;
use crate::map::SphereMap;

/// Find `k` orthogonal pairs `(v_{2i-1}, v_{2i})` in `R^n` with `f(v_{2i-1}) = f(v_{2i})`.
///
/// The objective is `sum_i |f(v_{2i-1}) - f(v_{2i})|^2` over orthonormal `n x 2k` frames.
/// Existence of a zero is only guaranteed for `k * m < nf(n, 2k)`; above that the
/// solver still runs, but a converged flag says nothing.
pub struct WitnessProblem<'a> {
    n: usize,
    k: usize,
    f: &'a dyn SphereMap,
}

impl<'a> WitnessProblem<'a> {
    pub fn new(n: usize, k: usize, f: &'a dyn SphereMap) -> Result<Self, WitnessError> {
        if k == 0 || 2 * k > n {
            return Err(WitnessError::InvalidProblem(format!(
                "need 1 <= k and 2k <= n, got n = {n}, k = {k}"
            )));
        }
        if f.input_dim() != n {
            return Err(WitnessError::InvalidProblem(format!(
                "map takes R^{} but n = {n}",
                f.input_dim()
            )));
        }
        if f.output_dim() == 0 {
            return Err(WitnessError::InvalidProblem("map must have m >= 1".into()));
        }
        Ok(Self { n, k, f })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn m(&self) -> usize {
        self.f.output_dim()
    }

    pub fn frame_len(&self) -> usize {
        2 * self.k
    }

    pub fn map(&self) -> &dyn SphereMap {
        self.f
    }

    /// The stacked differences `f(v_{2i-1}) - f(v_{2i})`.
    pub fn residuals(&self, v: &DMatrix<f64>) -> Vec<DVector<f64>> {
        (0..self.k)
            .map(|i| {
                let a = v.column(2 * i).into_owned();
                let b = v.column(2 * i + 1).into_owned();
                self.f.eval(&a) - self.f.eval(&b)
            })
            .collect()
    }

    pub fn objective(&self, v: &StiefelFrame) -> Result<f64, WitnessError> {
        let value = self.objective_raw(v.matrix());
        if value.is_finite() {
            Ok(value)
        } else {
            Err(WitnessError::NonFinite { restart: 0, iteration: 0 })
        }
    }

    pub(crate) fn objective_raw(&self, v: &DMatrix<f64>) -> f64 {
        self.residuals(v).iter().map(|r| r.norm_squared()).sum()
    }

    /// Gradient of the objective in the ambient space `R^{n x 2k}`.
    pub fn euclidean_gradient(&self, v: &DMatrix<f64>) -> DMatrix<f64> {
        let mut g = DMatrix::zeros(self.n, 2 * self.k);
        for i in 0..self.k {
            let a = v.column(2 * i).into_owned();
            let b = v.column(2 * i + 1).into_owned();
            let r = self.f.eval(&a) - self.f.eval(&b);
            let ga = self.f.jacobian(&a).transpose() * &r * 2.0;
            let gb = self.f.jacobian(&b).transpose() * &r * -2.0;
            g.set_column(2 * i, &ga);
            g.set_column(2 * i + 1, &gb);
        }
        g
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map::QuadraticMap;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn rejects_bad_shapes() {
        let f = QuadraticMap::constant(4, DVector::from_element(2, 1.0));
        assert!(WitnessProblem::new(4, 0, &f).is_err());
        assert!(WitnessProblem::new(4, 3, &f).is_err());
        assert!(WitnessProblem::new(5, 1, &f).is_err());
        let g = QuadraticMap::constant(4, DVector::zeros(0));
        assert!(WitnessProblem::new(4, 1, &g).is_err());
        assert!(WitnessProblem::new(4, 2, &f).is_ok());
    }

    #[test]
    fn objective_is_nonnegative_and_symmetric_under_flips() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let f = QuadraticMap::random(6, 2, &mut rng);
        let p = WitnessProblem::new(6, 2, &f).unwrap();
        for _ in 0..20 {
            let v = StiefelFrame::random(6, 4, &mut rng);
            let value = p.objective(&v).unwrap();
            assert!(value >= 0.0);
            let mut swapped = v.matrix().clone();
            swapped.swap_columns(0, 1);
            swapped.swap_columns(2, 3);
            assert!((p.objective_raw(&swapped) - value).abs() < 1e-12 * (1.0 + value));
        }
    }

    #[test]
    fn non_finite_objective_is_an_error() {
        let f = QuadraticMap::constant(3, DVector::from_element(1, f64::INFINITY));
        let p = WitnessProblem::new(3, 1, &f).unwrap();
        assert!(p.objective(&StiefelFrame::standard(3, 2)).is_err());
    }
}
