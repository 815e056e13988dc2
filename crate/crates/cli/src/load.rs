//! Robot, sensor and scenario inputs, from files or `builtin:<name>`.

use std::path::Path;

use anyhow::{anyhow, Result};
use sensobs_core::io::{self, Scenario};
use sensobs_core::{presets, JointConfig, KinematicChain, SensorSuite};

const BUILTIN: &str = "builtin:";

pub fn robot(spec: &str) -> Result<KinematicChain> {
    match spec.strip_prefix(BUILTIN) {
        Some(name) => presets::robot(name).ok_or_else(|| {
            anyhow!(
                "unknown builtin robot `{name}` (known: {})",
                presets::ROBOT_NAMES.join(", ")
            )
        }),
        None => Ok(io::load_robot(spec)?),
    }
}

pub fn sensors(spec: Option<&str>, chain: &KinematicChain) -> Result<SensorSuite> {
    let suite = match spec {
        None => SensorSuite::joint_torque(chain),
        Some(s) => match s.strip_prefix(BUILTIN) {
            Some(name) => {
                presets::suite(name)
                    .ok_or_else(|| {
                        anyhow!(
                            "unknown builtin suite `{name}` (known: {})",
                            presets::SUITE_NAMES.join(", ")
                        )
                    })?
                    .suite
            }
            None => io::load_sensors(s)?,
        },
    };
    suite.validate(chain)?;
    Ok(suite)
}

pub fn scenario(spec: &str) -> Result<Scenario> {
    match spec.strip_prefix(BUILTIN) {
        Some(name) => {
            let file = presets::scenario(name).ok_or_else(|| {
                anyhow!(
                    "unknown builtin scenario `{name}` (known: {})",
                    presets::SCENARIO_NAMES.join(", ")
                )
            })?;
            let robot = robot(&format!(
                "{BUILTIN}{}",
                strip_suffix(&file.robot, ".robot.json")
            ))?;
            let sensors = sensors(
                Some(&format!(
                    "{BUILTIN}{}",
                    strip_suffix(&file.sensors, ".sensors.json")
                )),
                &robot,
            )?;
            let scenario = Scenario {
                robot,
                sensors,
                trajectory: file.trajectory()?,
                rows: file.rows()?,
            };
            scenario.validate()?;
            Ok(scenario)
        }
        None => Ok(io::load_scenario(Path::new(spec))?),
    }
}

fn strip_suffix<'a>(s: &'a str, suffix: &str) -> &'a str {
    s.strip_suffix(suffix).unwrap_or(s)
}

/// Parses `"0, 0.3,-1.2"` into a joint vector.
pub fn joint_config(text: &str) -> Result<JointConfig> {
    text.split(',')
        .enumerate()
        .map(|(i, v)| {
            let v = v.trim();
            v.parse::<f64>()
                .map_err(|_| anyhow!("invalid value for `q[{i}]`: `{v}` is not a number"))
        })
        .collect::<Result<Vec<_>>>()
        .map(JointConfig::from)
}
