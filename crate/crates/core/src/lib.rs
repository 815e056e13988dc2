//! Sensor observability analysis for serial manipulators.
//!
//! Given a chain in standard DH form and a suite of single-axis directional
//! sensors mounted on its links, this crate computes the observability
//! matrix `S`, the observability vector `s = Γ(S)`, the index `o = Π s_j`
//! and the observability ellipsoid, next to the geometric Jacobian and the
//! kinematic manipulability `w_k`. It classifies configurations and sweeps
//! joint-space trajectories.
//!
//! ```
//! use sensobs_core::{analyze, presets, GammaKind, SensorSuite};
//!
//! let robot = presets::planar_2r();
//! let suite = SensorSuite::joint_torque(&robot);
//! let r = analyze(&robot, &[0.3, 1.2].into(), &suite, GammaKind::Sum, 0.0).unwrap();
//! // joint torques of a planar arm never see out-of-plane force
//! assert_eq!(r.o, 0.0);
//! assert_eq!(r.flagged_axes(), vec!["fz", "tx", "ty"]);
//! ```

pub mod error;
pub mod io;
pub mod kinematics;
pub mod numfmt;
pub mod observability;
pub mod pose;
pub mod presets;
pub mod singularity;
pub mod sweep;

pub use error::{Error, Result};
pub use kinematics::{
    forward_kinematics, geometric_jacobian, jacobian_transpose_nullspace, manipulability, FrameSet,
    Jacobian, JointConfig, JointKind, JointSpec, KinematicChain, RowSelection,
};
pub use observability::{
    analyze, force_transform, gamma_max, gamma_sum, observability_index, observability_matrix,
    GammaKind, ObservabilityEllipsoid, ObservabilityFunction, ObservabilityMatrix,
    ObservabilityResult, SensorAxis, SensorMount, SensorSuite, TransformKind,
};
pub use pose::{Frame, Pose};
pub use singularity::{
    classify, special_case_check, ConfigClassification, SpecialCaseReport, Tolerances,
};
pub use sweep::{interpolate, sweep, SweepSample, SweepSeries, Trajectory, Waypoint};
