//! Serial chains, forward kinematics, the geometric Jacobian, kinematic
//! manipulability and the null space of Jᵀ.

mod chain;
mod fk;
mod jacobian;

pub use chain::{JointConfig, JointKind, JointSpec, KinematicChain};
pub use fk::{forward_kinematics, FrameSet};
pub use jacobian::{
    geometric_jacobian, jacobian_from_frames, jacobian_transpose_nullspace, manipulability,
    Jacobian, RowSelection, NULLSPACE_TOL, SINGULAR_DET_FLOOR, TASK_DIM,
};
