//! Text, JSON and CSV renderings of the analysis results. The JSON and CSV
//! forms carry the same fields as the text form.

use sensobs_core::numfmt::format_significant;
use sensobs_core::observability::TASK_AXIS_NAMES;
use sensobs_core::{ConfigClassification, JointConfig, ObservabilityResult, SpecialCaseReport};
use serde::Serialize;

const DIGITS: usize = 9;

fn num(x: f64) -> String {
    format_significant(x, DIGITS)
}

fn nums(xs: &[f64]) -> String {
    xs.iter().map(|&x| num(x)).collect::<Vec<_>>().join(",")
}

#[derive(Debug, Serialize)]
pub struct AnalyzeReport {
    pub robot: String,
    pub q: Vec<f64>,
    pub gamma: String,
    pub threshold: f64,
    pub s: [f64; 6],
    pub o: f64,
    pub ellipsoid_force: [f64; 3],
    pub ellipsoid_torque: [f64; 3],
    pub flags: Vec<&'static str>,
}

impl AnalyzeReport {
    pub fn new(robot: &str, q: &JointConfig, gamma: &str, r: &ObservabilityResult) -> Self {
        AnalyzeReport {
            robot: robot.to_string(),
            q: q.0.clone(),
            gamma: gamma.to_string(),
            threshold: r.threshold,
            s: r.s.into(),
            o: r.o,
            ellipsoid_force: r.ellipsoid.force,
            ellipsoid_torque: r.ellipsoid.torque,
            flags: r.flagged_axes(),
        }
    }

    pub fn text(&self) -> String {
        let s: Vec<String> = TASK_AXIS_NAMES
            .iter()
            .zip(self.s.iter())
            .map(|(n, v)| format!("{n}={}", num(*v)))
            .collect();
        let flags = if self.flags.is_empty() {
            "none".to_string()
        } else {
            self.flags.join(" ")
        };
        format!(
            "robot             {}\nq                 {}\ngamma             {}\nthreshold         {}\ns                 {}\no                 {}\nellipsoid_force   {}\nellipsoid_torque  {}\nflags             {}\n",
            self.robot,
            nums(&self.q),
            self.gamma,
            num(self.threshold),
            s.join(" "),
            num(self.o),
            nums(&self.ellipsoid_force),
            nums(&self.ellipsoid_torque),
            flags,
        )
    }

    pub fn csv(&self) -> String {
        let head: Vec<String> = ["robot", "gamma", "threshold"]
            .iter()
            .map(|s| s.to_string())
            .chain((1..=self.q.len()).map(|k| format!("q{k}")))
            .chain(TASK_AXIS_NAMES.iter().map(|n| format!("s_{n}")))
            .chain(["o".to_string(), "flags".to_string()])
            .collect();
        let row: Vec<String> = [self.robot.clone(), self.gamma.clone(), num(self.threshold)]
            .into_iter()
            .chain(self.q.iter().map(|&v| num(v)))
            .chain(self.s.iter().map(|&v| num(v)))
            .chain([num(self.o), self.flags.join(" ")])
            .collect();
        format!("{}\n{}\n", head.join(","), row.join(","))
    }
}

#[derive(Debug, Serialize)]
pub struct ClassifyReport {
    pub robot: String,
    pub q: Vec<f64>,
    pub w_k: f64,
    pub o_sum: f64,
    pub o_max: f64,
    pub gamma: String,
    pub kinematic_singular: bool,
    pub observability_singular: bool,
    pub jt_nullspace_dim: usize,
    pub false_observability_singularity: bool,
}

impl ClassifyReport {
    pub fn new(robot: &str, q: &JointConfig, c: &ConfigClassification) -> Self {
        ClassifyReport {
            robot: robot.to_string(),
            q: q.0.clone(),
            w_k: c.w_k,
            o_sum: c.o_sum,
            o_max: c.o_max,
            gamma: c.gamma.name().to_string(),
            kinematic_singular: c.kinematic_singular,
            observability_singular: c.observability_singular,
            jt_nullspace_dim: c.jt_nullspace_dim,
            false_observability_singularity: c.false_observability_singularity,
        }
    }

    fn fields(&self) -> Vec<(&'static str, String)> {
        vec![
            ("robot", self.robot.clone()),
            ("q", nums(&self.q)),
            ("w_k", num(self.w_k)),
            ("o_sum", num(self.o_sum)),
            ("o_max", num(self.o_max)),
            ("gamma", self.gamma.clone()),
            ("kinematic_singular", self.kinematic_singular.to_string()),
            (
                "observability_singular",
                self.observability_singular.to_string(),
            ),
            ("jt_nullspace_dim", self.jt_nullspace_dim.to_string()),
            (
                "false_observability_singularity",
                self.false_observability_singularity.to_string(),
            ),
        ]
    }

    pub fn text(&self) -> String {
        self.fields()
            .iter()
            .map(|(k, v)| format!("{k:<32}  {v}\n"))
            .collect()
    }

    pub fn csv(&self) -> String {
        let f = self.fields();
        let head: Vec<&str> = f.iter().map(|(k, _)| *k).collect();
        // q holds commas, so quote it
        let row: Vec<String> = f
            .iter()
            .map(|(k, v)| {
                if *k == "q" {
                    format!("\"{v}\"")
                } else {
                    v.clone()
                }
            })
            .collect();
        format!("{}\n{}\n", head.join(","), row.join(","))
    }
}

#[derive(Debug, Serialize)]
pub struct ColumnRow {
    pub joint: usize,
    pub translational: Option<f64>,
    pub rotational: f64,
    pub excluded: bool,
}

#[derive(Debug, Serialize)]
pub struct SpecialCaseOut {
    pub robot: String,
    pub q: Vec<f64>,
    pub max_deviation: f64,
    pub excluded: usize,
    pub columns: Vec<ColumnRow>,
}

impl SpecialCaseOut {
    pub fn new(robot: &str, q: &JointConfig, r: &SpecialCaseReport) -> Self {
        SpecialCaseOut {
            robot: robot.to_string(),
            q: q.0.clone(),
            max_deviation: r.max_deviation,
            excluded: r.excluded,
            columns: r
                .columns
                .iter()
                .enumerate()
                .map(|(i, c)| ColumnRow {
                    joint: i + 1,
                    translational: c.translational,
                    rotational: c.rotational,
                    excluded: c.is_excluded(),
                })
                .collect(),
        }
    }

    fn opt(v: Option<f64>) -> String {
        v.map_or_else(|| "-".to_string(), num)
    }

    pub fn text(&self) -> String {
        let mut out = format!(
            "robot          {}\nq              {}\nmax_deviation  {}\nexcluded       {}\n\njoint  translational     rotational        excluded\n",
            self.robot,
            nums(&self.q),
            num(self.max_deviation),
            self.excluded
        );
        for c in &self.columns {
            out += &format!(
                "{:<5}  {:<16}  {:<16}  {}\n",
                c.joint,
                Self::opt(c.translational),
                num(c.rotational),
                c.excluded
            );
        }
        out
    }

    pub fn csv(&self) -> String {
        let mut out = String::from("joint,translational,rotational,excluded\n");
        for c in &self.columns {
            let t = c.translational.map_or_else(String::new, num);
            out += &format!("{},{},{},{}\n", c.joint, t, num(c.rotational), c.excluded);
        }
        out
    }
}

pub fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}
