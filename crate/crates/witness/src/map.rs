use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

/// A smooth map `R^n -> R^m`, evaluated on the unit sphere.
pub trait SphereMap: Sync {
    fn input_dim(&self) -> usize;
    fn output_dim(&self) -> usize;
    fn eval(&self, v: &DVector<f64>) -> DVector<f64>;
    /// `m x n` Jacobian at `v`.
    fn jacobian(&self, v: &DVector<f64>) -> DMatrix<f64>;
}

/// `f(v) = b + A v + (v^T Q_1 v, ..., v^T Q_m v)` with symmetric `Q_l`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticMap {
    offset: DVector<f64>,
    linear: DMatrix<f64>,
    quadratic: Vec<DMatrix<f64>>,
}

impl QuadraticMap {
    /// Panics if the shapes disagree.
    pub fn new(offset: DVector<f64>, linear: DMatrix<f64>, quadratic: Vec<DMatrix<f64>>) -> Self {
        let m = offset.len();
        let n = linear.ncols();
        assert_eq!(linear.nrows(), m, "linear part must be m x n");
        assert_eq!(quadratic.len(), m, "need one quadratic form per output");
        let quadratic = quadratic
            .into_iter()
            .map(|q| {
                assert_eq!(q.shape(), (n, n), "quadratic forms must be n x n");
                (&q + q.transpose()) * 0.5
            })
            .collect();
        Self { offset, linear, quadratic }
    }

    /// Standard Gaussian coefficients.
    pub fn random<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> Self {
        let mut gauss = || rng.sample::<f64, _>(StandardNormal);
        let offset = DVector::from_fn(m, |_, _| gauss());
        let linear = DMatrix::from_fn(m, n, |_, _| gauss());
        let quadratic = (0..m).map(|_| DMatrix::from_fn(n, n, |_, _| gauss())).collect();
        Self::new(offset, linear, quadratic)
    }

    /// [`QuadraticMap::random`] driven by `ChaCha8Rng::seed_from_u64(seed)`.
    pub fn seeded(n: usize, m: usize, seed: u64) -> Self {
        Self::random(n, m, &mut ChaCha8Rng::seed_from_u64(seed))
    }

    pub fn constant(n: usize, value: DVector<f64>) -> Self {
        let m = value.len();
        Self::new(value, DMatrix::zeros(m, n), vec![DMatrix::zeros(n, n); m])
    }
}

impl SphereMap for QuadraticMap {
    fn input_dim(&self) -> usize {
        self.linear.ncols()
    }

    fn output_dim(&self) -> usize {
        self.offset.len()
    }

    fn eval(&self, v: &DVector<f64>) -> DVector<f64> {
        let mut out = &self.offset + &self.linear * v;
        for (l, q) in self.quadratic.iter().enumerate() {
            out[l] += v.dot(&(q * v));
        }
        out
    }

    fn jacobian(&self, v: &DVector<f64>) -> DMatrix<f64> {
        let mut jac = self.linear.clone();
        for (l, q) in self.quadratic.iter().enumerate() {
            let grad = q * v;
            for (j, g) in grad.iter().enumerate() {
                jac[(l, j)] += 2.0 * g;
            }
        }
        jac
    }
}
