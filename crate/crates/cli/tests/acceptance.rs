//! Acceptance gate: one PASS/FAIL line per criterion, non-zero exit on any failure.

use std::f64::consts::{FRAC_PI_2, PI};
use std::process::{Command, ExitCode};
use std::time::Instant;

use nalgebra::{DMatrix, Matrix6xX, Vector3, Vector6};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use sensobs_core::io::{load_robot, load_scenario, load_sensors};
use sensobs_core::observability::{COLLINEAR_TOL, TASK_AXIS_NAMES};
use sensobs_core::presets::{self, baxter_poses, SINGULAR_PASS_TIME};
use sensobs_core::{
    analyze, classify, force_transform, forward_kinematics, gamma_max, gamma_sum,
    geometric_jacobian, manipulability, observability_index, special_case_check, sweep, GammaKind,
    JointConfig, KinematicChain, RowSelection, SensorSuite, Tolerances,
};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn random_q(rng: &mut StdRng, n: usize) -> JointConfig {
    (0..n)
        .map(|_| rng.random_range(-PI..PI))
        .collect::<Vec<_>>()
        .into()
}

fn preset_robots() -> Vec<KinematicChain> {
    presets::ROBOT_NAMES
        .iter()
        .map(|n| presets::robot(n).unwrap())
        .collect()
}

fn special_case_equivalence() -> Outcome {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(1);
    let mut worst: f64 = 0.0;
    let mut parts = Vec::new();
    for chain in preset_robots() {
        let (mut excluded, mut total) = (0, 0);
        for _ in 0..100 {
            let r = special_case_check(&chain, &random_q(&mut rng, chain.dof())).unwrap();
            worst = worst.max(r.max_deviation);
            excluded += r.excluded;
            total += r.columns.len();
        }
        parts.push(format!("{} excluded {excluded}/{total}", chain.name));
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(
        worst <= 1e-12 && secs < 1.0,
        format!(
            "max deviation {worst:.3e}, {}, {secs:.3} s",
            parts.join(", ")
        ),
    )
}

fn singularity_detection() -> Outcome {
    let chain = presets::planar_2r();
    let suite = SensorSuite::joint_torque(&chain);
    let q: JointConfig = [0.0, 0.0].into();
    let mut ok = true;
    for g in [GammaKind::Sum, GammaKind::Max] {
        let r = analyze(&chain, &q, &suite, g, 0.0).unwrap();
        ok &= r.s[0] == 0.0 && r.o == 0.0;
    }
    // brute force Jᵀ f for f = (1,0,0,0,0,0)
    let j = geometric_jacobian(&chain, &q).unwrap();
    let mut jt_f = [0.0; 2];
    for (c, v) in jt_f.iter_mut().enumerate() {
        for r in 0..6 {
            *v += j.0[(r, c)] * if r == 0 { 1.0 } else { 0.0 };
        }
    }
    ok &= jt_f == [0.0, 0.0];
    outcome(
        ok,
        format!("s_fx = 0 and o = 0 for sum and max, Jᵀ·e_fx = {jt_f:?}"),
    )
}

fn sigma_ratio(chain: &KinematicChain, q: &JointConfig) -> f64 {
    let j = geometric_jacobian(chain, q).unwrap();
    let m = DMatrix::from_fn(6, j.ncols(), |r, c| j.0[(r, c)]);
    let sv = m.svd(false, false).singular_values;
    sv.min() / sv.max()
}

fn singularity_independence() -> Outcome {
    let chain = presets::baxter_like();
    let suite = SensorSuite::joint_torque(&chain);
    let tol = Tolerances::default();
    let qa = baxter_poses::collinear_axes();
    let a = classify(&chain, &qa, &suite, GammaKind::Sum, &tol).unwrap();
    let qb = baxter_poses::tilted_wrist();
    let b = classify(&chain, &qb, &suite, GammaKind::Sum, &tol).unwrap();
    let ratio = sigma_ratio(&chain, &qb);
    let ok_a = a.w_k < 1e-9 && a.o_sum > 1e-6;
    let ok_b = b.jt_nullspace_dim >= 1 && b.o_sum > 1e-6 && ratio < 1e-9;
    outcome(
        ok_a && ok_b,
        format!(
            "(a) collinear axes: w_k {:.2e}, o_sum {:.4}; (b) tilted wrist: null dim {}, o_sum {:.4}, σmin/σmax {:.2e}",
            a.w_k, a.o_sum, b.jt_nullspace_dim, b.o_sum, ratio
        ),
    )
}

fn near_boundary(s: &Vector6<f64>, r: &Vector3<f64>) -> bool {
    let theta: Vector3<f64> = s.fixed_rows::<3>(3).into_owned();
    r.cross(&theta).norm() <= 1e3 * COLLINEAR_TOL * r.norm().max(1.0)
}

fn random_axis_and_arm(rng: &mut StdRng) -> (Vector6<f64>, Vector3<f64>) {
    let th = Vector3::new(
        rng.random_range(-1.0..1.0),
        rng.random_range(-1.0..1.0),
        rng.random_range(-1.0..1.0f64),
    )
    .normalize();
    let s = Vector6::new(
        rng.random_range(-1.0..1.0),
        rng.random_range(-1.0..1.0),
        rng.random_range(-1.0..1.0),
        th.x,
        th.y,
        th.z,
    );
    let r = Vector3::new(
        rng.random_range(-2.0..2.0),
        rng.random_range(-2.0..2.0),
        rng.random_range(-2.0..2.0f64),
    );
    (s, r)
}

/// Bit-exact matches, compared samples, skipped samples and worst absolute deviation.
fn scale_trials(
    rng: &mut StdRng,
    mut draw_lambda: impl FnMut(&mut StdRng) -> f64,
) -> (usize, usize, usize, f64) {
    let (mut exact, mut compared, mut skipped, mut worst) = (0, 0, 0, 0.0f64);
    while compared + skipped < 1000 {
        let (s, r) = random_axis_and_arm(rng);
        let rl = r * draw_lambda(rng);
        if near_boundary(&s, &r) || near_boundary(&s, &rl) {
            skipped += 1;
            continue;
        }
        let (a, b) = (force_transform(&s, &r), force_transform(&s, &rl));
        compared += 1;
        exact += (a == b) as usize;
        worst = worst.max((a - b).abs().max());
    }
    (exact, compared, skipped, worst)
}

fn moment_arm_invariance() -> Outcome {
    let mut rng = StdRng::seed_from_u64(4);
    // the criterion as stated: λ log-uniform over [1e-3, 1e3], bit-exact equality
    let (exact, n, skipped, worst) =
        scale_trials(&mut rng, |rng| 10f64.powf(rng.random_range(-3.0..=3.0)));
    // supplementary: λ = 2^k scales r without rounding
    let (p_exact, p_n, _, _) = scale_trials(&mut rng, |rng| 2f64.powi(rng.random_range(-9..=9)));
    outcome(
        exact == n,
        format!(
            "bit-exact {exact}/{n} ({skipped} near the branch boundary skipped), worst |Δ| {worst:.1e}; \
             λ = 2^k bit-exact {p_exact}/{p_n}. Non-dyadic λr is rounded before the transform sees it, \
             so bit equality is not attainable in binary floating point"
        ),
    )
}

fn row_zero_oracle() -> Outcome {
    let mut rng = StdRng::seed_from_u64(5);
    let mut mismatches = 0;
    let mut with_zero = 0;
    for _ in 0..1000 {
        let n = rng.random_range(1..10);
        let forced: Vec<bool> = (0..6).map(|_| rng.random_bool(0.1)).collect();
        let s = Matrix6xX::from_fn(n, |r, _| {
            if forced[r] || rng.random_bool(0.2) {
                0.0
            } else {
                rng.random_range(f64::EPSILON..=1.0)
            }
        });
        let zero_row = s.row_iter().any(|row| row.iter().all(|&v| v == 0.0));
        with_zero += zero_row as usize;
        for v in [gamma_sum(&s), gamma_max(&s)] {
            if (observability_index(&v) == 0.0) != zero_row {
                mismatches += 1;
            }
        }
    }
    outcome(
        mismatches == 0,
        format!("1000 matrices ({with_zero} with a zero row), {mismatches} mismatches over both Γ"),
    )
}

fn fd_error(chain: &KinematicChain, q: &JointConfig) -> f64 {
    let h = 1e-6;
    let j = geometric_jacobian(chain, q).unwrap();
    let r0 = forward_kinematics(chain, q).unwrap().tool.rotation;
    let mut worst: f64 = 0.0;
    for k in 0..chain.dof() {
        let (mut qp, mut qm) = (q.clone(), q.clone());
        qp[k] += h;
        qm[k] -= h;
        let (fp, fm) = (
            forward_kinematics(chain, &qp).unwrap(),
            forward_kinematics(chain, &qm).unwrap(),
        );
        let v = (fp.ee_origin - fm.ee_origin) / (2.0 * h);
        let w = (fp.tool.rotation - fm.tool.rotation) / (2.0 * h) * r0.transpose();
        let omega = [w[(2, 1)], w[(0, 2)], w[(1, 0)]];
        for i in 0..3 {
            worst = worst
                .max((j.0[(i, k)] - v[i]).abs())
                .max((j.0[(3 + i, k)] - omega[i]).abs());
        }
    }
    worst
}

fn jacobian_correctness() -> Outcome {
    let mut rng = StdRng::seed_from_u64(6);
    let mut worst: f64 = 0.0;
    for chain in preset_robots() {
        for _ in 0..100 {
            worst = worst.max(fd_error(&chain, &random_q(&mut rng, chain.dof())));
        }
    }
    let chain = presets::planar_2r();
    let xy = RowSelection::from_names(&["vx", "vy"]).unwrap();
    let mut worst_w: f64 = 0.0;
    for _ in 0..100 {
        let q = random_q(&mut rng, 2);
        let w = manipulability(&geometric_jacobian(&chain, &q).unwrap(), xy).unwrap();
        worst_w = worst_w.max((w - 1.0 * 1.0 * q[1].sin().abs()).abs());
    }
    outcome(
        worst <= 1e-5 && worst_w <= 1e-9,
        format!("max FD error {worst:.2e}; 2R |w_k - l1 l2 |sin q2|| max {worst_w:.2e}"),
    )
}

fn singular_pass_reproduction() -> Outcome {
    let start = Instant::now();
    let dir = tempfile::tempdir().unwrap();
    presets::write_all(dir.path()).unwrap();
    let scen = load_scenario(
        dir.path()
            .join(presets::scenario_file_name("baxter-like-singular-pass")),
    )
    .unwrap();
    let series = sweep(&scen.robot, &scen.sensors, &scen.trajectory, scen.rows).unwrap();
    let secs = start.elapsed().as_secs_f64();

    let argmin = |f: &dyn Fn(&sensobs_core::SweepSample) -> f64| {
        let s = series
            .samples
            .iter()
            .min_by(|a, b| f(a).total_cmp(&f(b)))
            .unwrap();
        (s.t, f(s))
    };
    let mins = [
        ("wk", argmin(&|s| s.wk_norm)),
        ("o_sum", argmin(&|s| s.o_sum_norm)),
        ("o_max", argmin(&|s| s.o_max_norm)),
    ];
    let mins_ok = mins
        .iter()
        .all(|(_, (t, v))| (t - SINGULAR_PASS_TIME).abs() <= 0.1 && *v < 0.02);
    let raw_le_one = series.samples.iter().all(|s| s.o_max <= 1.0);
    let norm_le_one = series.samples.iter().all(|s| s.o_max_norm <= 1.0);
    let norm_hits_one = series.samples.iter().any(|s| s.o_max_norm == 1.0);
    let detail = mins
        .iter()
        .map(|(n, (t, v))| format!("{n} min {v:.3} at t={t}"))
        .collect::<Vec<_>>()
        .join(", ");
    outcome(
        mins_ok && raw_le_one && norm_le_one && norm_hits_one && secs < 5.0,
        format!(
            "{detail}; raw o_max peak {:.4} ≤ 1, normalized o_max reaches 1: {norm_hits_one}; {} samples in {secs:.2} s",
            series.scale.o_max,
            series.samples.len()
        ),
    )
}

fn gamma_max_semantics() -> Outcome {
    // quarter-turn joints make the wrist sensor frame a signed permutation of the world axes
    let chain = presets::baxter_like();
    let wrist = presets::baxter_wrist_ft();
    let mut rng = StdRng::seed_from_u64(8);
    let mut checked = [0usize; 6];
    let mut failures = 0;
    for _ in 0..300 {
        let q: JointConfig = (0..7)
            .map(|_| rng.random_range(-2..=2) as f64 * FRAC_PI_2)
            .collect::<Vec<_>>()
            .into();
        let pick = rng.random_range(0..6);
        let mut axes = SensorSuite::joint_torque(&chain).axes;
        axes.push(wrist.axes[pick].clone());
        let suite = SensorSuite::new(axes);
        let frames = forward_kinematics(&chain, &q).unwrap();
        let rot = frames.joints[6].rotation;
        let local = pick % 3;
        let j = (0..3).find(|&i| rot[(i, local)] != 0.0).unwrap() + if pick >= 3 { 3 } else { 0 };
        let r = analyze(&chain, &q, &suite, GammaKind::Max, 0.0).unwrap();
        checked[j] += 1;
        if r.s[j] != 1.0 {
            failures += 1;
        }
    }
    let per_axis = TASK_AXIS_NAMES
        .iter()
        .zip(checked)
        .map(|(n, c)| format!("{n}:{c}"))
        .collect::<Vec<_>>()
        .join(" ");
    outcome(
        failures == 0 && checked.iter().all(|&c| c > 0),
        format!("300 suites, {failures} with s_j ≠ 1 (cases per axis {per_axis})"),
    )
}

fn cli_determinism() -> Outcome {
    let exe = env!("CARGO_BIN_EXE_sensobs");
    let dir = tempfile::tempdir().unwrap();
    let run = |out: &str| {
        let path = dir.path().join(out);
        let status = Command::new(exe)
            .args([
                "sweep",
                "--scenario",
                "builtin:baxter-like-singular-pass",
                "--out",
            ])
            .arg(&path)
            .status()
            .unwrap();
        assert!(status.success());
        std::fs::read(path).unwrap()
    };
    let (a, b) = (run("a.csv"), run("b.csv"));
    let identical = a == b;

    let pdir = dir.path().join("presets");
    let status = Command::new(exe)
        .args(["presets", "--out"])
        .arg(&pdir)
        .output()
        .unwrap();
    let mut lossless = status.status.success();
    for name in presets::ROBOT_NAMES {
        lossless &=
            load_robot(pdir.join(presets::robot_file_name(name))).ok() == presets::robot(name);
    }
    for name in presets::SUITE_NAMES {
        lossless &= load_sensors(pdir.join(presets::suite_file_name(name))).ok()
            == presets::suite(name).map(|s| s.suite);
    }
    let scen =
        load_scenario(pdir.join(presets::scenario_file_name("baxter-like-singular-pass"))).unwrap();
    lossless &= scen.trajectory == presets::singular_pass_trajectory()
        && scen.robot == presets::baxter_like();
    outcome(
        identical && lossless,
        format!("two sweeps byte-identical: {identical} ({} bytes); preset files reload losslessly: {lossless}", a.len()),
    )
}

fn main() -> ExitCode {
    type Check = (&'static str, fn() -> Outcome);
    let criteria: [Check; 9] = [
        ("special-case equivalence", special_case_equivalence),
        ("observability singularity detection", singularity_detection),
        ("singularity-type independence", singularity_independence),
        ("moment-arm invariance", moment_arm_invariance),
        ("row-zero iff o = 0", row_zero_oracle),
        ("Jacobian correctness", jacobian_correctness),
        (
            "singular-pass sweep reproduction",
            singular_pass_reproduction,
        ),
        ("Γ_max direct observation", gamma_max_semantics),
        ("CLI determinism and round-trip", cli_determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let o = check();
        failed += !o.pass as usize;
        println!(
            "{} criterion {}: {name}: {}",
            if o.pass { "PASS" } else { "FAIL" },
            i + 1,
            o.detail
        );
    }
    println!(
        "{}/{} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
