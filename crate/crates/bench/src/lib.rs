//! Fixtures shared by the benchmarks.

use sensobs_core::{presets, JointConfig, KinematicChain, SensorSuite};

/// Fixed, non-singular configuration of the 7-DOF preset.
pub fn baxter_config() -> JointConfig {
    [0.3, -0.5, 0.2, 1.1, -0.4, 0.7, 0.1].into()
}

/// The 7-DOF preset with joint torques and a wrist force/torque sensor.
pub fn baxter_rig() -> (KinematicChain, SensorSuite) {
    let chain = presets::baxter_like();
    let suite = presets::suite("baxter-like-torque-wrist-ft")
        .expect("bundled suite")
        .suite;
    (chain, suite)
}
