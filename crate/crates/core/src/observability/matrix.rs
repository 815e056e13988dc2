use nalgebra::{Matrix6xX, Vector3, Vector6};

use super::sensor::SensorSuite;
use super::transform::{is_collinear, task_axes_from_frames};
use crate::error::Result;
use crate::kinematics::{forward_kinematics, FrameSet, JointConfig, KinematicChain};

/// The 6 × n_s sensor observability matrix S; column `i` is the transformed
/// axis of sensor `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct ObservabilityMatrix {
    pub matrix: Matrix6xX<f64>,
    /// Moment arm `r^i` of each column, sensor origin to task origin (m).
    pub moment_arms: Vec<Vector3<f64>>,
    /// Whether column `i` took the collinear branch of its transform.
    pub collinear: Vec<bool>,
}

impl ObservabilityMatrix {
    /// Wraps a bare matrix, e.g. for evaluating Γ on synthetic data. Moment
    /// arms are set to zero.
    pub fn from_matrix(matrix: Matrix6xX<f64>) -> Self {
        let n = matrix.ncols();
        ObservabilityMatrix {
            matrix,
            moment_arms: vec![Vector3::zeros(); n],
            collinear: vec![true; n],
        }
    }

    pub fn ncols(&self) -> usize {
        self.matrix.ncols()
    }

    pub fn column(&self, i: usize) -> Vector6<f64> {
        self.matrix.column(i).into_owned()
    }

    /// Indices of rows that are identically zero (unobservable task axes).
    pub fn zero_rows(&self) -> Vec<usize> {
        (0..6)
            .filter(|&j| self.matrix.row(j).iter().all(|&v| v == 0.0))
            .collect()
    }
}

pub fn observability_matrix(
    chain: &KinematicChain,
    q: &JointConfig,
    suite: &SensorSuite,
) -> Result<ObservabilityMatrix> {
    suite.validate(chain)?;
    let frames = forward_kinematics(chain, q)?;
    Ok(observability_matrix_from_frames(&frames, suite))
}

/// S from precomputed frames; `suite` must be valid for the frames' chain.
pub fn observability_matrix_from_frames(
    frames: &FrameSet,
    suite: &SensorSuite,
) -> ObservabilityMatrix {
    let task_axes = task_axes_from_frames(frames, suite);
    let mut matrix = Matrix6xX::zeros(suite.len());
    let mut collinear = Vec::with_capacity(suite.len());
    for (i, (sensor, ta)) in suite.axes.iter().zip(&task_axes).enumerate() {
        matrix.set_column(i, &sensor.transform.apply(ta));
        collinear.push(is_collinear(&ta.axis, &ta.moment_arm));
    }
    ObservabilityMatrix {
        matrix,
        moment_arms: task_axes.iter().map(|t| t.moment_arm).collect(),
        collinear,
    }
}
