//! Rigid transforms built from roll/pitch/yaw and a translation.
//!
//! Angles that sit on a quarter turn are evaluated with exact sine and cosine
//! (0 and ±1), so axis-aligned poses produce exactly axis-aligned frames. The
//! zero tests downstream (zero rows of the observability matrix, the
//! collinear branch of the force transform) depend on this.

use std::f64::consts::FRAC_PI_2;

use nalgebra::{Isometry3, Matrix3, Rotation3, Translation3, UnitQuaternion, Vector3};
use serde::{Deserialize, Serialize};

/// `(sin x, cos x)`, exact when `x` is a multiple of π/2 up to a few ulps.
pub fn sin_cos(x: f64) -> (f64, f64) {
    let turns = (x / FRAC_PI_2).round();
    if (x - turns * FRAC_PI_2).abs() <= 4.0 * f64::EPSILON * x.abs().max(1.0) {
        return match (turns as i64).rem_euclid(4) {
            0 => (0.0, 1.0),
            1 => (1.0, 0.0),
            2 => (0.0, -1.0),
            _ => (-1.0, 0.0),
        };
    }
    x.sin_cos()
}

pub fn rot_x(angle: f64) -> Matrix3<f64> {
    let (s, c) = sin_cos(angle);
    Matrix3::new(1.0, 0.0, 0.0, 0.0, c, -s, 0.0, s, c)
}

pub fn rot_y(angle: f64) -> Matrix3<f64> {
    let (s, c) = sin_cos(angle);
    Matrix3::new(c, 0.0, s, 0.0, 1.0, 0.0, -s, 0.0, c)
}

pub fn rot_z(angle: f64) -> Matrix3<f64> {
    let (s, c) = sin_cos(angle);
    Matrix3::new(c, -s, 0.0, s, c, 0.0, 0.0, 0.0, 1.0)
}

/// A rigid transform as a rotation matrix and a translation.
///
/// Kept as a plain matrix pair rather than an `Isometry3` so that exact
/// quarter-turn entries survive composition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frame {
    pub rotation: Matrix3<f64>,
    pub translation: Vector3<f64>,
}

impl Frame {
    pub fn identity() -> Self {
        Frame {
            rotation: Matrix3::identity(),
            translation: Vector3::zeros(),
        }
    }

    pub fn new(rotation: Matrix3<f64>, translation: Vector3<f64>) -> Self {
        Frame {
            rotation,
            translation,
        }
    }

    pub fn from_rotation(rotation: Matrix3<f64>) -> Self {
        Frame::new(rotation, Vector3::zeros())
    }

    pub fn from_translation(translation: Vector3<f64>) -> Self {
        Frame::new(Matrix3::identity(), translation)
    }

    /// `self * other`: express `other` (given relative to `self`) in `self`'s parent.
    pub fn compose(&self, other: &Frame) -> Frame {
        Frame {
            rotation: self.rotation * other.rotation,
            translation: self.rotation * other.translation + self.translation,
        }
    }

    pub fn z_axis(&self) -> Vector3<f64> {
        self.rotation.column(2).into_owned()
    }

    pub fn to_isometry(&self) -> Isometry3<f64> {
        let rot = Rotation3::from_matrix_unchecked(self.rotation);
        Isometry3::from_parts(
            Translation3::from(self.translation),
            UnitQuaternion::from_rotation_matrix(&rot),
        )
    }
}

impl std::ops::Mul for Frame {
    type Output = Frame;

    fn mul(self, rhs: Frame) -> Frame {
        self.compose(&rhs)
    }
}

/// Pose as written in description files: `rpy` in radians (fixed-axis
/// roll about x, then pitch about y, then yaw about z) and `xyz` in meters.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Pose {
    #[serde(default)]
    pub rpy: [f64; 3],
    #[serde(default)]
    pub xyz: [f64; 3],
}

impl Pose {
    pub const IDENTITY: Pose = Pose {
        rpy: [0.0; 3],
        xyz: [0.0; 3],
    };

    pub fn from_xyz(x: f64, y: f64, z: f64) -> Self {
        Pose {
            rpy: [0.0; 3],
            xyz: [x, y, z],
        }
    }

    pub fn new(rpy: [f64; 3], xyz: [f64; 3]) -> Self {
        Pose { rpy, xyz }
    }

    pub fn rotation(&self) -> Matrix3<f64> {
        let [roll, pitch, yaw] = self.rpy;
        rot_z(yaw) * rot_y(pitch) * rot_x(roll)
    }

    pub fn frame(&self) -> Frame {
        Frame::new(self.rotation(), Vector3::from(self.xyz))
    }

    pub fn is_finite(&self) -> bool {
        self.rpy
            .iter()
            .chain(self.xyz.iter())
            .all(|v| v.is_finite())
    }
}
