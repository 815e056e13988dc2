use nalgebra::{Vector3, Vector6};

use super::sensor::{SensorSuite, TransformKind};
use crate::error::Result;
use crate::kinematics::{forward_kinematics, FrameSet, JointConfig, KinematicChain};

/// Relative tolerance for the collinear branch of the force transform:
/// `‖r × ŝ_θ‖ ≤ COLLINEAR_TOL · max(1, ‖r‖)`.
pub const COLLINEAR_TOL: f64 = 1e-12;

/// A sensor axis expressed in the (world-aligned) task frame, before the
/// sensor-type transform.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TaskAxis {
    /// `ŝ = blockdiag(R, R) ŝ′`. May carry negative components.
    pub axis: Vector6<f64>,
    /// From the sensor frame origin to the task-frame origin.
    pub moment_arm: Vector3<f64>,
}

pub fn sensor_axes_in_task_frame(
    chain: &KinematicChain,
    q: &JointConfig,
    suite: &SensorSuite,
) -> Result<Vec<TaskAxis>> {
    suite.validate(chain)?;
    let frames = forward_kinematics(chain, q)?;
    Ok(task_axes_from_frames(&frames, suite))
}

/// Rotates every local axis into the task frame. The suite must already be
/// validated against the chain that produced `frames`.
pub fn task_axes_from_frames(frames: &FrameSet, suite: &SensorSuite) -> Vec<TaskAxis> {
    suite
        .axes
        .iter()
        .map(|sensor| {
            let frame = frames.joints[sensor.mount.parent_joint - 1] * sensor.mount.offset.frame();
            let local = sensor.local_axis_vector();
            let p = frame.rotation * local.fixed_rows::<3>(0);
            let theta = frame.rotation * local.fixed_rows::<3>(3);
            TaskAxis {
                axis: Vector6::new(p.x, p.y, p.z, theta.x, theta.y, theta.z),
                moment_arm: frames.ee_origin - frame.translation,
            }
        })
        .collect()
}

/// True when `r × ŝ_θ` is zero up to [`COLLINEAR_TOL`], i.e. the rotational
/// part of the axis cannot sense a force at the task frame.
pub fn is_collinear(axis: &Vector6<f64>, moment_arm: &Vector3<f64>) -> bool {
    let theta: Vector3<f64> = axis.fixed_rows::<3>(3).into_owned();
    moment_arm.cross(&theta).norm() <= COLLINEAR_TOL * moment_arm.norm().max(1.0)
}

/// Force sensor transform T_f.
///
/// `s̃_p = |ŝ_p| + |r × ŝ_θ| / ‖r × ŝ_θ‖` and `s̃_θ = |ŝ_θ|`; the cross term is
/// dropped when it vanishes (collinear branch, including `r = 0`). The cross
/// term is normalized, so the length of the moment arm has no effect.
pub fn force_transform(axis: &Vector6<f64>, moment_arm: &Vector3<f64>) -> Vector6<f64> {
    let theta: Vector3<f64> = axis.fixed_rows::<3>(3).into_owned();
    let cross = moment_arm.cross(&theta);
    let norm = cross.norm();
    let mut out = axis.abs();
    if norm > COLLINEAR_TOL * moment_arm.norm().max(1.0) {
        let lever = cross.abs() / norm;
        out.fixed_rows_mut::<3>(0).zip_apply(&lever, |o, l| *o += l);
    }
    out
}

/// Identity sensor transform: element-wise absolute value.
pub fn identity_transform(axis: &Vector6<f64>) -> Vector6<f64> {
    axis.abs()
}

impl TransformKind {
    pub fn apply(self, task_axis: &TaskAxis) -> Vector6<f64> {
        match self {
            TransformKind::Force => force_transform(&task_axis.axis, &task_axis.moment_arm),
            TransformKind::Identity => identity_transform(&task_axis.axis),
        }
    }
}
