use nalgebra::DMatrix;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::WitnessError;

/// Default orthonormality tolerance for frames handed out by this crate.
pub const FRAME_TOLERANCE: f64 = 1e-10;

/// An `n x p` matrix with orthonormal columns.
#[derive(Debug, Clone, PartialEq)]
pub struct StiefelFrame {
    matrix: DMatrix<f64>,
    tolerance: f64,
}

impl StiefelFrame {
    pub fn new(matrix: DMatrix<f64>, tolerance: f64) -> Result<Self, WitnessError> {
        let error = orthonormality_error(&matrix);
        if error.is_nan() || error > tolerance {
            return Err(WitnessError::NotOrthonormal { error, tolerance });
        }
        Ok(Self { matrix, tolerance })
    }

    /// Haar-distributed frame: Q factor of a Gaussian matrix.
    pub fn random<R: Rng + ?Sized>(n: usize, p: usize, rng: &mut R) -> Self {
        assert!(p <= n && p >= 1, "frame size must be in 1..=n");
        loop {
            let g = DMatrix::from_fn(n, p, |_, _| rng.sample::<f64, _>(StandardNormal));
            if let Ok(frame) = retract_matrix(&g, FRAME_TOLERANCE) {
                return frame;
            }
        }
    }

    /// The first `p` standard basis vectors.
    pub fn standard(n: usize, p: usize) -> Self {
        Self {
            matrix: DMatrix::identity(n, p),
            tolerance: FRAME_TOLERANCE,
        }
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn into_matrix(self) -> DMatrix<f64> {
        self.matrix
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn ambient_dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn len(&self) -> usize {
        self.matrix.ncols()
    }

    pub fn is_empty(&self) -> bool {
        self.matrix.ncols() == 0
    }

    pub fn orthonormality_error(&self) -> f64 {
        orthonormality_error(&self.matrix)
    }

    /// `Z - V sym(V^T Z)`: orthogonal projection onto the tangent space.
    pub fn project_tangent(&self, z: &DMatrix<f64>) -> DMatrix<f64> {
        let vtz = self.matrix.transpose() * z;
        let sym = (&vtz + vtz.transpose()) * 0.5;
        z - &self.matrix * sym
    }
}

/// `max |V^T V - I|`.
pub fn orthonormality_error(v: &DMatrix<f64>) -> f64 {
    let gram = v.transpose() * v;
    let p = gram.nrows();
    (gram - DMatrix::<f64>::identity(p, p)).amax()
}

/// QR retraction `qf(V + step)` with the diagonal of `R` made positive.
pub fn retract(frame: &StiefelFrame, step: &DMatrix<f64>) -> Result<StiefelFrame, WitnessError> {
    if step.shape() != frame.matrix.shape() {
        return Err(WitnessError::ShapeMismatch {
            expected: frame.matrix.shape(),
            found: step.shape(),
        });
    }
    retract_matrix(&(&frame.matrix + step), frame.tolerance)
}

fn retract_matrix(a: &DMatrix<f64>, tolerance: f64) -> Result<StiefelFrame, WitnessError> {
    if !a.iter().all(|x| x.is_finite()) {
        return Err(WitnessError::RankDeficient);
    }
    let scale = a.column_iter().map(|c| c.norm()).fold(0.0f64, f64::max);
    let qr = a.clone().qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..a.ncols() {
        let d = r[(j, j)];
        if d.abs() <= 1e-12 * scale.max(1.0) {
            return Err(WitnessError::RankDeficient);
        }
        if d < 0.0 {
            q.column_mut(j).neg_mut();
        }
    }
    Ok(StiefelFrame { matrix: q, tolerance })
}
