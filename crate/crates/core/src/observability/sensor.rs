use nalgebra::Vector6;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kinematics::KinematicChain;
use crate::pose::Pose;

/// How a rotated sensor axis is carried to the task frame.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TransformKind {
    /// Force/torque physics: rotational axes also observe task-frame forces
    /// through the moment arm.
    Force,
    /// Element-wise absolute value only.
    Identity,
}

/// Where a sensor frame sits on the robot.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SensorMount {
    /// 1-based joint index. The sensor is rigid with the joint frame of this
    /// joint, i.e. with the link the joint drives.
    pub parent_joint: usize,
    /// Sensor frame relative to the parent joint frame.
    pub offset: Pose,
}

impl SensorMount {
    pub fn at_joint(parent_joint: usize) -> Self {
        SensorMount {
            parent_joint,
            offset: Pose::IDENTITY,
        }
    }
}

/// A single measured sensor axis. A 3-axis device is three of these.
#[derive(Debug, Clone, PartialEq)]
pub struct SensorAxis {
    pub name: String,
    pub mount: SensorMount,
    /// Local axis `(p_x, p_y, p_z, θ_x, θ_y, θ_z)` in the sensor frame; every
    /// component in `[0, 1]`. Sensors are bidirectional, so no sign is kept.
    pub local_axis: [f64; 6],
    pub transform: TransformKind,
}

/// Local axis of a joint torque sensor: torque about the local z axis.
pub const TORQUE_Z: [f64; 6] = [0.0, 0.0, 0.0, 0.0, 0.0, 1.0];

impl SensorAxis {
    pub fn new(
        name: impl Into<String>,
        mount: SensorMount,
        local_axis: [f64; 6],
        transform: TransformKind,
    ) -> Self {
        SensorAxis {
            name: name.into(),
            mount,
            local_axis,
            transform,
        }
    }

    /// Single-axis torque sensor aligned with the axis of `joint` (1-based).
    pub fn joint_torque(name: impl Into<String>, joint: usize) -> Self {
        SensorAxis::new(
            name,
            SensorMount::at_joint(joint),
            TORQUE_Z,
            TransformKind::Force,
        )
    }

    /// Single-axis load cell measuring force along local axis `axis` (0..3).
    pub fn load_cell(name: impl Into<String>, mount: SensorMount, axis: usize) -> Self {
        let mut local = [0.0; 6];
        local[axis] = 1.0;
        SensorAxis::new(name, mount, local, TransformKind::Force)
    }

    pub fn local_axis_vector(&self) -> Vector6<f64> {
        Vector6::from_row_slice(&self.local_axis)
    }

    pub(crate) fn validate(&self, index: usize, dof: usize) -> Result<()> {
        let field = |f: &str| format!("sensors[{index}].{f}");
        if self.mount.parent_joint < 1 || self.mount.parent_joint > dof {
            return Err(Error::invalid(
                field("parent_joint"),
                format!("{} is not in [1, {dof}]", self.mount.parent_joint),
            ));
        }
        if !self.mount.offset.is_finite() {
            return Err(Error::invalid(field("offset"), "must be finite"));
        }
        for (j, &v) in self.local_axis.iter().enumerate() {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::invalid(
                    format!("sensors[{index}].axis[{j}]"),
                    format!("{v} is not in [0, 1]"),
                ));
            }
        }
        if self.local_axis.iter().all(|&v| v == 0.0) {
            return Err(Error::invalid(
                field("axis"),
                "at least one component must be positive",
            ));
        }
        Ok(())
    }
}

/// Ordered sensor axes; the order fixes the column order of S.
#[derive(Debug, Clone, PartialEq)]
pub struct SensorSuite {
    pub axes: Vec<SensorAxis>,
}

impl SensorSuite {
    pub fn new(axes: Vec<SensorAxis>) -> Self {
        SensorSuite { axes }
    }

    /// One torque sensor per joint, collinear with the joint axis.
    pub fn joint_torque(chain: &KinematicChain) -> Self {
        SensorSuite::new(
            (1..=chain.dof())
                .map(|k| SensorAxis::joint_torque(format!("tau{k}"), k))
                .collect(),
        )
    }

    /// A 6-axis force/torque sensor as six single-axis entries sharing one frame.
    pub fn six_axis(prefix: &str, mount: SensorMount, transform: TransformKind) -> Self {
        const NAMES: [&str; 6] = ["fx", "fy", "fz", "tx", "ty", "tz"];
        SensorSuite::new(
            NAMES
                .iter()
                .enumerate()
                .map(|(j, n)| {
                    let mut local = [0.0; 6];
                    local[j] = 1.0;
                    SensorAxis::new(format!("{prefix}{n}"), mount, local, transform)
                })
                .collect(),
        )
    }

    /// n_s, the number of sensor axes.
    pub fn len(&self) -> usize {
        self.axes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.axes.is_empty()
    }

    pub fn validate(&self, chain: &KinematicChain) -> Result<()> {
        if self.axes.is_empty() {
            return Err(Error::invalid(
                "sensors",
                "a suite needs at least one sensor axis",
            ));
        }
        for (i, axis) in self.axes.iter().enumerate() {
            axis.validate(i, chain.dof())?;
        }
        Ok(())
    }
}
