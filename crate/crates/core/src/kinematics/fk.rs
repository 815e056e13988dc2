use nalgebra::{Matrix3, Vector3};

use super::chain::{JointConfig, KinematicChain};
use crate::error::Result;
use crate::pose::Frame;

/// World-frame placement of every joint and of the task frame.
#[derive(Debug, Clone, PartialEq)]
pub struct FrameSet {
    /// Joint frames in world coordinates. The z axis of `joints[k]` is the
    /// axis of joint `k`; each frame moves with the link that joint drives.
    pub joints: Vec<Frame>,
    /// Origin of the task frame F_EE.
    pub ee_origin: Vector3<f64>,
    /// Orientation of the task frame. Always identity: F_EE sits at the end
    /// effector but is aligned with the world frame.
    pub ee_rotation: Matrix3<f64>,
    /// Physical end-effector body frame, including its orientation.
    pub tool: Frame,
}

impl FrameSet {
    pub fn joint_axis(&self, k: usize) -> Vector3<f64> {
        self.joints[k].z_axis()
    }

    pub fn joint_origin(&self, k: usize) -> Vector3<f64> {
        self.joints[k].translation
    }

    /// Vector from the origin of joint `k` to the task-frame origin.
    pub fn moment_arm(&self, k: usize) -> Vector3<f64> {
        self.ee_origin - self.joint_origin(k)
    }
}

pub fn forward_kinematics(chain: &KinematicChain, q: &JointConfig) -> Result<FrameSet> {
    chain.check_config(q)?;
    let mut current = chain.base_frame.frame();
    let mut joints = Vec::with_capacity(chain.dof());
    for (spec, &qk) in chain.joints.iter().zip(q.iter()) {
        let joint = current * spec.joint_frame(qk);
        joints.push(joint);
        current = joint * spec.link_frame();
    }
    let tool = current * chain.ee_offset.frame();
    Ok(FrameSet {
        joints,
        ee_origin: tool.translation,
        ee_rotation: Matrix3::identity(),
        tool,
    })
}
