//! Bundled robots, sensor suites, reference configurations and a sweep
//! scenario.
//!
//! The 7-DOF `baxter-like` arm shares the alternating-twist joint topology of
//! a Baxter limb. Its offsets are simplified so that the characteristic
//! singular configurations fall on quarter-turn joint values, which makes
//! their defining zeros exact in floating point.

use std::f64::consts::{FRAC_PI_2, PI};
use std::path::{Path, PathBuf};

use crate::error::Result;
use crate::io::{save_robot, save_scenario, save_sensors, ScenarioFile};
use crate::kinematics::{JointConfig, JointSpec, KinematicChain};
use crate::observability::{SensorMount, SensorSuite, TransformKind};
use crate::pose::Pose;
use crate::sweep::{Trajectory, Waypoint, DEFAULT_SAMPLE_RATE};

pub const PLANAR_2R: &str = "planar-2r";
pub const PLANAR_3R: &str = "planar-3r";
pub const BAXTER_LIKE: &str = "baxter-like";

pub const ROBOT_NAMES: [&str; 3] = [PLANAR_2R, PLANAR_3R, BAXTER_LIKE];

pub fn planar_2r() -> KinematicChain {
    KinematicChain::new(
        PLANAR_2R,
        Pose::IDENTITY,
        Pose::IDENTITY,
        vec![
            JointSpec::revolute("shoulder", 1.0, 0.0, 0.0, 0.0),
            JointSpec::revolute("elbow", 1.0, 0.0, 0.0, 0.0),
        ],
    )
    .expect("valid preset")
}

pub fn planar_3r() -> KinematicChain {
    KinematicChain::new(
        PLANAR_3R,
        Pose::IDENTITY,
        Pose::IDENTITY,
        vec![
            JointSpec::revolute("shoulder", 1.0, 0.0, 0.0, 0.0),
            JointSpec::revolute("elbow", 0.8, 0.0, 0.0, 0.0),
            JointSpec::revolute("wrist", 0.5, 0.0, 0.0, 0.0),
        ],
    )
    .expect("valid preset")
}

/// Upper-arm length (joint 3 offset) of the 7-DOF preset.
pub const BAXTER_UPPER_ARM: f64 = 0.36435;
/// Forearm length (joint 5 offset) of the 7-DOF preset.
pub const BAXTER_FOREARM: f64 = 0.37429;
/// Shoulder offset from the first axis (joint 1 link length).
pub const BAXTER_SHOULDER_OFFSET: f64 = 0.069;

pub fn baxter_like() -> KinematicChain {
    KinematicChain::new(
        BAXTER_LIKE,
        Pose::IDENTITY,
        Pose::IDENTITY,
        vec![
            JointSpec::revolute("s0", BAXTER_SHOULDER_OFFSET, -FRAC_PI_2, 0.27035, 0.0),
            JointSpec::revolute("s1", 0.0, FRAC_PI_2, 0.0, FRAC_PI_2),
            JointSpec::revolute("e0", 0.0, -FRAC_PI_2, BAXTER_UPPER_ARM, 0.0),
            JointSpec::revolute("e1", 0.0, FRAC_PI_2, 0.0, FRAC_PI_2),
            JointSpec::revolute("w0", 0.0, -FRAC_PI_2, BAXTER_FOREARM, 0.0),
            JointSpec::revolute("w1", 0.0, FRAC_PI_2, 0.0, 0.0),
            JointSpec::revolute("w2", 0.0, 0.0, 0.229525, 0.0),
        ],
    )
    .expect("valid preset")
}

pub fn robot(name: &str) -> Option<KinematicChain> {
    match name {
        PLANAR_2R => Some(planar_2r()),
        PLANAR_3R => Some(planar_3r()),
        BAXTER_LIKE => Some(baxter_like()),
        _ => None,
    }
}

/// A bundled sensor suite and the robot it is defined on.
#[derive(Debug, Clone, PartialEq)]
pub struct SuitePreset {
    pub name: &'static str,
    pub robot: &'static str,
    pub suite: SensorSuite,
}

pub const SUITE_NAMES: [&str; 5] = [
    "planar-2r-torque",
    "planar-3r-torque",
    "baxter-like-torque",
    "baxter-like-wrist-ft",
    "baxter-like-torque-wrist-ft",
];

/// 6-axis force/torque sensor on the last joint of the 7-DOF preset. Its
/// frame coincides with the end-effector origin.
pub fn baxter_wrist_ft() -> SensorSuite {
    SensorSuite::six_axis("wrist_", SensorMount::at_joint(7), TransformKind::Force)
}

pub fn suite(name: &str) -> Option<SuitePreset> {
    let (robot, suite) = match name {
        "planar-2r-torque" => (PLANAR_2R, SensorSuite::joint_torque(&planar_2r())),
        "planar-3r-torque" => (PLANAR_3R, SensorSuite::joint_torque(&planar_3r())),
        "baxter-like-torque" => (BAXTER_LIKE, SensorSuite::joint_torque(&baxter_like())),
        "baxter-like-wrist-ft" => (BAXTER_LIKE, baxter_wrist_ft()),
        "baxter-like-torque-wrist-ft" => {
            let mut axes = SensorSuite::joint_torque(&baxter_like()).axes;
            axes.extend(baxter_wrist_ft().axes);
            (BAXTER_LIKE, SensorSuite::new(axes))
        }
        _ => return None,
    };
    let name = SUITE_NAMES.iter().find(|n| **n == name)?;
    Some(SuitePreset { name, robot, suite })
}

/// Reference configurations of the 7-DOF preset.
pub mod baxter_poses {
    use super::*;

    /// Elbow bent a right angle, everything else at zero: the forearm and
    /// wrist are stretched horizontally and no joint-torque axis observes a
    /// force along the world x axis. Kinematic and observability singular.
    pub fn wrist_singular() -> JointConfig {
        [0.0, 0.0, 0.0, -FRAC_PI_2, 0.0, 0.0, 0.0].into()
    }

    /// Shoulder pitched up by a quarter turn from [`wrist_singular`]. The
    /// torque axes lose both the vertical force and the torque about world x.
    pub fn shoulder_singular() -> JointConfig {
        [0.0, FRAC_PI_2, 0.0, -FRAC_PI_2, 0.0, 0.0, 0.0].into()
    }

    /// Wrist pitch tilted away from [`wrist_singular`]. Jᵀ keeps a null
    /// vector (x-force balanced by y-torque) while every row of S is nonzero.
    pub fn tilted_wrist() -> JointConfig {
        [0.0, 0.0, 0.0, -FRAC_PI_2, 0.0, 0.2, 0.0].into()
    }

    /// Angle that makes the straight upper-arm/forearm line pass through the
    /// first joint axis despite the shoulder offset.
    pub fn collinear_tilt() -> f64 {
        (BAXTER_SHOULDER_OFFSET / (BAXTER_UPPER_ARM + BAXTER_FOREARM)).asin()
    }

    /// Elbow straight, arm hanging so that the last joint axis is collinear
    /// with the first one. Kinematic singular with every row of S nonzero.
    pub fn collinear_axes() -> JointConfig {
        let phi = collinear_tilt();
        [0.0, -FRAC_PI_2 - phi, 0.0, -FRAC_PI_2, 0.0, PI + phi, 0.0].into()
    }
}

pub const SCENARIO_NAMES: [&str; 1] = ["baxter-like-singular-pass"];

/// Time at which the singular-pass scenario sits in [`baxter_poses::wrist_singular`].
pub const SINGULAR_PASS_TIME: f64 = 4.0;

/// Arbitrary pose, through the wrist singularity, to a zero-elbow pose and on
/// to another arbitrary pose, sampled at 100 Hz.
pub fn singular_pass_trajectory() -> Trajectory {
    let wp = |t: f64, q: [f64; 7]| Waypoint { t, q: q.into() };
    Trajectory::new(
        vec![
            wp(0.0, [-0.8, -0.4, 0.6, 0.3, -0.7, 0.9, 0.0]),
            wp(
                SINGULAR_PASS_TIME,
                [0.0, 0.0, 0.0, -FRAC_PI_2, 0.0, 0.0, 0.0],
            ),
            wp(8.0, [0.5, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]),
            wp(12.0, [0.9, 0.6, -0.5, 0.7, 0.4, -0.8, 0.0]),
        ],
        DEFAULT_SAMPLE_RATE,
    )
    .expect("valid preset")
}

pub fn robot_file_name(name: &str) -> String {
    format!("{name}.robot.json")
}

pub fn suite_file_name(name: &str) -> String {
    format!("{name}.sensors.json")
}

pub fn scenario_file_name(name: &str) -> String {
    format!("{name}.scenario.json")
}

pub fn scenario(name: &str) -> Option<ScenarioFile> {
    match name {
        "baxter-like-singular-pass" => Some(ScenarioFile::new(
            robot_file_name(BAXTER_LIKE),
            suite_file_name("baxter-like-torque"),
            &singular_pass_trajectory(),
            None,
        )),
        _ => None,
    }
}

/// Writes every bundled robot, suite and scenario into `dir` and returns the
/// written paths in a fixed order.
pub fn write_all(dir: impl AsRef<Path>) -> Result<Vec<PathBuf>> {
    let dir = dir.as_ref();
    std::fs::create_dir_all(dir).map_err(|source| crate::Error::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    let mut written = Vec::new();
    for name in ROBOT_NAMES {
        let path = dir.join(robot_file_name(name));
        save_robot(&path, &robot(name).expect("listed preset"))?;
        written.push(path);
    }
    for name in SUITE_NAMES {
        let path = dir.join(suite_file_name(name));
        save_sensors(&path, &suite(name).expect("listed preset").suite)?;
        written.push(path);
    }
    for name in SCENARIO_NAMES {
        let path = dir.join(scenario_file_name(name));
        save_scenario(&path, &scenario(name).expect("listed preset"))?;
        written.push(path);
    }
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_listed_name_resolves() {
        for n in ROBOT_NAMES {
            assert_eq!(robot(n).unwrap().name, n);
        }
        for n in SUITE_NAMES {
            let p = suite(n).unwrap();
            p.suite.validate(&robot(p.robot).unwrap()).unwrap();
        }
        for n in SCENARIO_NAMES {
            scenario(n).unwrap().trajectory().unwrap();
        }
        assert!(robot("puma").is_none());
        assert!(suite("nope").is_none());
    }

    #[test]
    fn collinear_tilt_value() {
        // asin(0.069 / 0.73864)
        assert!((baxter_poses::collinear_tilt() - 0.09355132288376801).abs() < 1e-15);
    }
}
