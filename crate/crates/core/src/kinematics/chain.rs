use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pose::{rot_x, rot_z, Frame, Pose};
use nalgebra::Vector3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum JointKind {
    Revolute,
    Prismatic,
}

/// One joint with its standard (distal) Denavit–Hartenberg parameters.
///
/// The joint variable adds to `theta_offset` for a revolute joint and to `d`
/// for a prismatic one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JointSpec {
    pub name: String,
    pub kind: JointKind,
    pub a: f64,
    pub alpha: f64,
    pub d: f64,
    pub theta_offset: f64,
}

impl JointSpec {
    pub fn revolute(
        name: impl Into<String>,
        a: f64,
        alpha: f64,
        d: f64,
        theta_offset: f64,
    ) -> Self {
        JointSpec {
            name: name.into(),
            kind: JointKind::Revolute,
            a,
            alpha,
            d,
            theta_offset,
        }
    }

    pub fn prismatic(
        name: impl Into<String>,
        a: f64,
        alpha: f64,
        d: f64,
        theta_offset: f64,
    ) -> Self {
        JointSpec {
            kind: JointKind::Prismatic,
            ..JointSpec::revolute(name, a, alpha, d, theta_offset)
        }
    }

    /// `(theta, d)` after applying the joint variable.
    pub fn screw(&self, q: f64) -> (f64, f64) {
        match self.kind {
            JointKind::Revolute => (self.theta_offset + q, self.d),
            JointKind::Prismatic => (self.theta_offset, self.d + q),
        }
    }

    /// The joint frame relative to the previous DH frame: rotation about and
    /// translation along the joint axis. Rigidly attached to the child link.
    pub fn joint_frame(&self, q: f64) -> Frame {
        let (theta, d) = self.screw(q);
        Frame::new(rot_z(theta), Vector3::new(0.0, 0.0, d))
    }

    /// From the joint frame to the next DH frame (`Trans_x(a) Rot_x(alpha)`).
    pub fn link_frame(&self) -> Frame {
        Frame::new(rot_x(self.alpha), Vector3::new(self.a, 0.0, 0.0))
    }

    /// The full DH transform `Rot_z(theta) Trans_z(d) Trans_x(a) Rot_x(alpha)`.
    pub fn transform(&self, q: f64) -> Frame {
        self.joint_frame(q) * self.link_frame()
    }

    fn validate(&self, index: usize) -> Result<()> {
        for (field, v) in [
            ("a", self.a),
            ("alpha", self.alpha),
            ("d", self.d),
            ("theta_offset", self.theta_offset),
        ] {
            if !v.is_finite() {
                return Err(Error::invalid(
                    format!("joints[{index}].{field}"),
                    "must be finite",
                ));
            }
        }
        Ok(())
    }
}

/// An open serial chain from `base_frame` (world) to the end effector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KinematicChain {
    pub name: String,
    #[serde(default)]
    pub base_frame: Pose,
    #[serde(default)]
    pub ee_offset: Pose,
    pub joints: Vec<JointSpec>,
}

impl KinematicChain {
    pub fn new(
        name: impl Into<String>,
        base_frame: Pose,
        ee_offset: Pose,
        joints: Vec<JointSpec>,
    ) -> Result<Self> {
        let chain = KinematicChain {
            name: name.into(),
            base_frame,
            ee_offset,
            joints,
        };
        chain.validate()?;
        Ok(chain)
    }

    pub fn validate(&self) -> Result<()> {
        if self.joints.is_empty() {
            return Err(Error::invalid("joints", "a chain needs at least one joint"));
        }
        if !self.base_frame.is_finite() {
            return Err(Error::invalid("base_frame", "must be finite"));
        }
        if !self.ee_offset.is_finite() {
            return Err(Error::invalid("ee_offset", "must be finite"));
        }
        for (i, joint) in self.joints.iter().enumerate() {
            joint.validate(i)?;
        }
        Ok(())
    }

    /// Number of joints, `n_q`.
    pub fn dof(&self) -> usize {
        self.joints.len()
    }

    pub fn is_all_revolute(&self) -> bool {
        self.joints.iter().all(|j| j.kind == JointKind::Revolute)
    }

    pub fn check_config(&self, q: &JointConfig) -> Result<()> {
        if q.len() != self.dof() {
            return Err(Error::dims("q", self.dof(), q.len()));
        }
        if let Some(i) = q.iter().position(|v| !v.is_finite()) {
            return Err(Error::invalid(format!("q[{i}]"), "must be finite"));
        }
        Ok(())
    }
}

/// Joint values, radians for revolute joints and meters for prismatic ones.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct JointConfig(pub Vec<f64>);

impl JointConfig {
    pub fn zeros(n: usize) -> Self {
        JointConfig(vec![0.0; n])
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }
}

impl std::ops::Deref for JointConfig {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl std::ops::DerefMut for JointConfig {
    fn deref_mut(&mut self) -> &mut [f64] {
        &mut self.0
    }
}

impl From<Vec<f64>> for JointConfig {
    fn from(v: Vec<f64>) -> Self {
        JointConfig(v)
    }
}

impl From<&[f64]> for JointConfig {
    fn from(v: &[f64]) -> Self {
        JointConfig(v.to_vec())
    }
}

impl<const N: usize> From<[f64; N]> for JointConfig {
    fn from(v: [f64; N]) -> Self {
        JointConfig(v.to_vec())
    }
}
