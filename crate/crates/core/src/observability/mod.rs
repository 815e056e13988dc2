//! Sensor observability: local sensor axes, the task-frame rotation, sensor
//! type transforms, the observability matrix S, the observability functions
//! Γ, the index o and the observability ellipsoid.

mod analyze;
mod gamma;
mod matrix;
mod sensor;
mod transform;

pub use analyze::{
    analyze, analyze_with, result_from_matrix, ObservabilityEllipsoid, ObservabilityResult,
    TASK_AXIS_NAMES,
};
pub use gamma::{gamma_max, gamma_sum, observability_index, GammaKind, ObservabilityFunction};
pub use matrix::{observability_matrix, observability_matrix_from_frames, ObservabilityMatrix};
pub use sensor::{SensorAxis, SensorMount, SensorSuite, TransformKind, TORQUE_Z};
pub use transform::{
    force_transform, identity_transform, is_collinear, sensor_axes_in_task_frame,
    task_axes_from_frames, TaskAxis, COLLINEAR_TOL,
};
