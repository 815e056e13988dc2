//! JSON robot, sensor-suite and scenario files.
//!
//! Parse errors carry the line and column reported by the JSON reader;
//! validation errors name the offending field path.

use std::fs;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kinematics::{JointConfig, KinematicChain, RowSelection};
use crate::observability::{SensorAxis, SensorMount, SensorSuite, TransformKind};
use crate::pose::Pose;
use crate::sweep::{Trajectory, Waypoint, DEFAULT_SAMPLE_RATE};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SensorEntry {
    name: String,
    parent_joint: usize,
    #[serde(default)]
    offset: Pose,
    axis: [f64; 6],
    transform: TransformKind,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SensorFile {
    sensors: Vec<SensorEntry>,
}

impl From<&SensorSuite> for SensorFile {
    fn from(suite: &SensorSuite) -> Self {
        SensorFile {
            sensors: suite
                .axes
                .iter()
                .map(|a| SensorEntry {
                    name: a.name.clone(),
                    parent_joint: a.mount.parent_joint,
                    offset: a.mount.offset,
                    axis: a.local_axis,
                    transform: a.transform,
                })
                .collect(),
        }
    }
}

impl From<SensorFile> for SensorSuite {
    fn from(file: SensorFile) -> Self {
        SensorSuite::new(
            file.sensors
                .into_iter()
                .map(|e| {
                    SensorAxis::new(
                        e.name,
                        SensorMount {
                            parent_joint: e.parent_joint,
                            offset: e.offset,
                        },
                        e.axis,
                        e.transform,
                    )
                })
                .collect(),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WaypointEntry {
    t: f64,
    q: Vec<f64>,
}

/// On-disk scenario. `robot` and `sensors` are paths relative to the
/// scenario file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub robot: String,
    pub sensors: String,
    waypoints: Vec<WaypointEntry>,
    #[serde(default = "default_rate")]
    pub sample_rate: f64,
    /// Jacobian rows entering `w_k` (`vx`..`wz`); all six when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub manipulability_rows: Option<Vec<String>>,
}

fn default_rate() -> f64 {
    DEFAULT_SAMPLE_RATE
}

impl ScenarioFile {
    pub fn new(
        robot: impl Into<String>,
        sensors: impl Into<String>,
        trajectory: &Trajectory,
        manipulability_rows: Option<RowSelection>,
    ) -> Self {
        ScenarioFile {
            robot: robot.into(),
            sensors: sensors.into(),
            waypoints: trajectory
                .waypoints
                .iter()
                .map(|w| WaypointEntry {
                    t: w.t,
                    q: w.q.0.clone(),
                })
                .collect(),
            sample_rate: trajectory.sample_rate,
            manipulability_rows: manipulability_rows
                .map(|r| r.names().into_iter().map(String::from).collect()),
        }
    }

    pub fn trajectory(&self) -> Result<Trajectory> {
        Trajectory::new(
            self.waypoints
                .iter()
                .map(|w| Waypoint {
                    t: w.t,
                    q: JointConfig(w.q.clone()),
                })
                .collect(),
            self.sample_rate,
        )
    }

    pub fn rows(&self) -> Result<RowSelection> {
        match &self.manipulability_rows {
            None => Ok(RowSelection::ALL),
            Some(names) => RowSelection::from_names(names),
        }
    }
}

/// A scenario with its robot and sensor files resolved and loaded.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub robot: KinematicChain,
    pub sensors: SensorSuite,
    pub trajectory: Trajectory,
    pub rows: RowSelection,
}

impl Scenario {
    pub fn validate(&self) -> Result<()> {
        self.robot.validate()?;
        self.sensors.validate(&self.robot)?;
        self.trajectory.validate()?;
        let n = self.trajectory.waypoints[0].q.len();
        if n != self.robot.dof() {
            return Err(Error::dims("waypoints[0].q", self.robot.dof(), n));
        }
        Ok(())
    }
}

fn parse<T: DeserializeOwned>(text: &str, label: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        path: label.to_string(),
        line: e.line(),
        column: e.column(),
        message: strip_position(&e.to_string()),
    })
}

// serde_json appends " at line L column C"; the error type reports those separately.
fn strip_position(msg: &str) -> String {
    match msg.rfind(" at line ") {
        Some(i) => msg[..i].to_string(),
        None => msg.to_string(),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("model types always serialize");
    s.push('\n');
    s
}

pub fn parse_robot(text: &str, label: &str) -> Result<KinematicChain> {
    let chain: KinematicChain = parse(text, label)?;
    chain.validate()?;
    Ok(chain)
}

pub fn robot_to_json(chain: &KinematicChain) -> String {
    to_json(chain)
}

pub fn load_robot(path: impl AsRef<Path>) -> Result<KinematicChain> {
    let path = path.as_ref();
    parse_robot(&read(path)?, &path.display().to_string())
}

pub fn save_robot(path: impl AsRef<Path>, chain: &KinematicChain) -> Result<()> {
    write(path.as_ref(), &robot_to_json(chain))
}

/// Parses a sensor suite. Checks that need the robot (joint index range) are
/// left to [`SensorSuite::validate`].
pub fn parse_sensors(text: &str, label: &str) -> Result<SensorSuite> {
    let file: SensorFile = parse(text, label)?;
    let suite = SensorSuite::from(file);
    if suite.is_empty() {
        return Err(Error::invalid(
            "sensors",
            "a suite needs at least one sensor axis",
        ));
    }
    for (i, axis) in suite.axes.iter().enumerate() {
        axis.validate(i, usize::MAX)?;
    }
    Ok(suite)
}

pub fn sensors_to_json(suite: &SensorSuite) -> String {
    to_json(&SensorFile::from(suite))
}

pub fn load_sensors(path: impl AsRef<Path>) -> Result<SensorSuite> {
    let path = path.as_ref();
    parse_sensors(&read(path)?, &path.display().to_string())
}

pub fn save_sensors(path: impl AsRef<Path>, suite: &SensorSuite) -> Result<()> {
    write(path.as_ref(), &sensors_to_json(suite))
}

pub fn parse_scenario_file(text: &str, label: &str) -> Result<ScenarioFile> {
    parse(text, label)
}

pub fn scenario_to_json(file: &ScenarioFile) -> String {
    to_json(file)
}

pub fn save_scenario(path: impl AsRef<Path>, file: &ScenarioFile) -> Result<()> {
    write(path.as_ref(), &scenario_to_json(file))
}

/// Loads a scenario and the robot and sensor files it references.
pub fn load_scenario(path: impl AsRef<Path>) -> Result<Scenario> {
    let path = path.as_ref();
    let file = parse_scenario_file(&read(path)?, &path.display().to_string())?;
    let dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
    let resolve = |p: &str| -> PathBuf { dir.join(p) };
    let scenario = Scenario {
        robot: load_robot(resolve(&file.robot))?,
        sensors: load_sensors(resolve(&file.sensors))?,
        trajectory: file.trajectory()?,
        rows: file.rows()?,
    };
    scenario.validate()?;
    Ok(scenario)
}
