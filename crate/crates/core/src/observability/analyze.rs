use nalgebra::Vector6;

use super::gamma::{observability_index, GammaKind, ObservabilityFunction};
use super::matrix::{observability_matrix_from_frames, ObservabilityMatrix};
use super::sensor::SensorSuite;
use crate::error::{Error, Result};
use crate::kinematics::{forward_kinematics, JointConfig, KinematicChain};

/// Task-space axis names, in row order of S and s.
pub const TASK_AXIS_NAMES: [&str; 6] = ["fx", "fy", "fz", "tx", "ty", "tz"];

/// Axis-aligned observability ellipsoids in the task frame, split into the
/// force and torque parts of s.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ObservabilityEllipsoid {
    pub force: [f64; 3],
    pub torque: [f64; 3],
}

#[derive(Debug, Clone, PartialEq)]
pub struct ObservabilityResult {
    /// Observability vector s = Γ(S).
    pub s: Vector6<f64>,
    /// Observability index o = Π s_j.
    pub o: f64,
    /// `None` for caller-supplied functions.
    pub gamma: Option<GammaKind>,
    pub ellipsoid: ObservabilityEllipsoid,
    /// `flags[j]` is set when `s_j < threshold` or `s_j` is exactly zero, so
    /// threshold 0 flags exactly the lost axes.
    pub flags: [bool; 6],
    pub threshold: f64,
}

impl ObservabilityResult {
    pub fn from_vector(s: Vector6<f64>, gamma: Option<GammaKind>, threshold: f64) -> Self {
        ObservabilityResult {
            s,
            o: observability_index(&s),
            gamma,
            ellipsoid: ObservabilityEllipsoid {
                force: [s[0], s[1], s[2]],
                torque: [s[3], s[4], s[5]],
            },
            flags: std::array::from_fn(|j| s[j] < threshold || s[j] == 0.0),
            threshold,
        }
    }

    /// An observability singularity: at least one task axis is lost (o = 0).
    pub fn is_singular(&self) -> bool {
        self.o == 0.0
    }

    pub fn flagged_axes(&self) -> Vec<&'static str> {
        (0..6)
            .filter(|&j| self.flags[j])
            .map(|j| TASK_AXIS_NAMES[j])
            .collect()
    }
}

/// Runs the whole pipeline: rotate, transform, stack, reduce, multiply, flag.
pub fn analyze(
    chain: &KinematicChain,
    q: &JointConfig,
    suite: &SensorSuite,
    gamma: GammaKind,
    threshold: f64,
) -> Result<ObservabilityResult> {
    analyze_with(chain, q, suite, &gamma, threshold)
}

pub fn analyze_with<G: ObservabilityFunction + ?Sized>(
    chain: &KinematicChain,
    q: &JointConfig,
    suite: &SensorSuite,
    gamma: &G,
    threshold: f64,
) -> Result<ObservabilityResult> {
    let s = observe(chain, q, suite)?;
    result_from_matrix(&s, gamma, threshold)
}

/// Γ, index and flags for an existing S.
pub fn result_from_matrix<G: ObservabilityFunction + ?Sized>(
    s: &ObservabilityMatrix,
    gamma: &G,
    threshold: f64,
) -> Result<ObservabilityResult> {
    if threshold.is_nan() || threshold < 0.0 {
        return Err(Error::invalid("threshold", "must be non-negative"));
    }
    Ok(ObservabilityResult::from_vector(
        gamma.reduce(s),
        gamma.kind(),
        threshold,
    ))
}

fn observe(
    chain: &KinematicChain,
    q: &JointConfig,
    suite: &SensorSuite,
) -> Result<ObservabilityMatrix> {
    suite.validate(chain)?;
    let frames = forward_kinematics(chain, q)?;
    Ok(observability_matrix_from_frames(&frames, suite))
}
