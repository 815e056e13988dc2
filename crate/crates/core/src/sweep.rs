//! Joint-space trajectory sweeps recording manipulability and observability
//! indices over time.

use std::io::Write;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::kinematics::{
    forward_kinematics, jacobian_from_frames, manipulability, JointConfig, KinematicChain,
    RowSelection,
};
use crate::numfmt::format_significant;
use crate::observability::{
    gamma_max, gamma_sum, observability_index, observability_matrix_from_frames, SensorSuite,
};

pub const DEFAULT_SAMPLE_RATE: f64 = 100.0;

/// Significant digits of every value in the CSV output.
pub const CSV_DIGITS: usize = 9;

#[derive(Debug, Clone, PartialEq)]
pub struct Waypoint {
    pub t: f64,
    pub q: JointConfig,
}

/// Waypoints joined by piecewise-linear segments in joint space.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub waypoints: Vec<Waypoint>,
    /// Samples per second.
    pub sample_rate: f64,
}

impl Trajectory {
    pub fn new(waypoints: Vec<Waypoint>, sample_rate: f64) -> Result<Self> {
        let traj = Trajectory {
            waypoints,
            sample_rate,
        };
        traj.validate()?;
        Ok(traj)
    }

    pub fn validate(&self) -> Result<()> {
        let first = self
            .waypoints
            .first()
            .ok_or_else(|| Error::invalid("waypoints", "at least one waypoint is required"))?;
        if !(self.sample_rate > 0.0 && self.sample_rate.is_finite()) {
            return Err(Error::invalid("sample_rate", "must be positive and finite"));
        }
        let n = first.q.len();
        for (i, wp) in self.waypoints.iter().enumerate() {
            if !wp.t.is_finite() {
                return Err(Error::invalid(
                    format!("waypoints[{i}].t"),
                    "must be finite",
                ));
            }
            if wp.q.len() != n {
                return Err(Error::dims(format!("waypoints[{i}].q"), n, wp.q.len()));
            }
            if let Some(j) = wp.q.iter().position(|v| !v.is_finite()) {
                return Err(Error::invalid(
                    format!("waypoints[{i}].q[{j}]"),
                    "must be finite",
                ));
            }
            if i > 0 && wp.t <= self.waypoints[i - 1].t {
                return Err(Error::invalid(
                    format!("waypoints[{i}].t"),
                    "waypoint times must be strictly increasing",
                ));
            }
        }
        Ok(())
    }

    pub fn start(&self) -> f64 {
        self.waypoints[0].t
    }

    pub fn end(&self) -> f64 {
        self.waypoints[self.waypoints.len() - 1].t
    }

    /// Sample instants `start + i / sample_rate` up to the last waypoint.
    ///
    /// Times are computed from the index rather than accumulated, so
    /// doubling the rate reproduces every earlier sample time exactly.
    pub fn sample_times(&self) -> Vec<f64> {
        let (start, end) = (self.start(), self.end());
        let count = ((end - start) * self.sample_rate + 1e-9).floor() as usize + 1;
        (0..count)
            .map(|i| (start + i as f64 / self.sample_rate).min(end))
            .collect()
    }
}

/// Joint values at time `t`, linear between the surrounding waypoints.
pub fn interpolate(trajectory: &Trajectory, t: f64) -> Result<JointConfig> {
    let (start, end) = (trajectory.start(), trajectory.end());
    if !(t >= start && t <= end) {
        return Err(Error::TimeOutOfRange { t, start, end });
    }
    let wps = &trajectory.waypoints;
    if let Some(wp) = wps.iter().find(|wp| wp.t == t) {
        return Ok(wp.q.clone());
    }
    let seg = wps
        .windows(2)
        .find(|w| t < w[1].t)
        .expect("t lies strictly inside the span");
    let (a, b) = (&seg[0], &seg[1]);
    let u = (t - a.t) / (b.t - a.t);
    Ok(a.q
        .iter()
        .zip(b.q.iter())
        .map(|(qa, qb)| qa + u * (qb - qa))
        .collect::<Vec<_>>()
        .into())
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSample {
    pub t: f64,
    pub q: JointConfig,
    pub w_k: f64,
    pub o_sum: f64,
    pub o_max: f64,
    pub wk_norm: f64,
    pub o_sum_norm: f64,
    pub o_max_norm: f64,
}

/// Maxima used to normalize each series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesScale {
    pub w_k: f64,
    pub o_sum: f64,
    pub o_max: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSeries {
    pub samples: Vec<SweepSample>,
    pub scale: SeriesScale,
}

/// Divides by the maximum when it is positive; returns the values and the maximum.
pub fn normalize(values: &[f64]) -> (Vec<f64>, f64) {
    let max = values.iter().copied().fold(0.0, f64::max);
    if max > 0.0 {
        (values.iter().map(|v| v / max).collect(), max)
    } else {
        (values.to_vec(), max)
    }
}

/// Display scaling for a normalized series that stretches values near zero:
/// `(1 − e^(−k v)) / (1 − e^(−k))`. Maps [0, 1] onto [0, 1].
pub fn emphasize_near_zero(v: f64, k: f64) -> f64 {
    if k == 0.0 {
        return v;
    }
    (-k * v).exp_m1() / (-k).exp_m1()
}

pub fn sweep(
    chain: &KinematicChain,
    suite: &SensorSuite,
    trajectory: &Trajectory,
    rows: RowSelection,
) -> Result<SweepSeries> {
    trajectory.validate()?;
    suite.validate(chain)?;
    if rows.is_empty() {
        return Err(Error::invalid("rows", "row selection is empty"));
    }
    if trajectory.waypoints[0].q.len() != chain.dof() {
        return Err(Error::dims(
            "waypoints[0].q",
            chain.dof(),
            trajectory.waypoints[0].q.len(),
        ));
    }

    let raw = trajectory
        .sample_times()
        .into_par_iter()
        .map(|t| {
            let q = interpolate(trajectory, t)?;
            let frames = forward_kinematics(chain, &q)?;
            let w_k = manipulability(&jacobian_from_frames(chain, &frames), rows)?;
            let s = observability_matrix_from_frames(&frames, suite);
            let o_sum = observability_index(&gamma_sum(&s.matrix));
            let o_max = observability_index(&gamma_max(&s.matrix));
            Ok((t, q, w_k, o_sum, o_max))
        })
        .collect::<Result<Vec<_>>>()?;

    let (wk_norm, wk_scale) = normalize(&raw.iter().map(|r| r.2).collect::<Vec<_>>());
    let (sum_norm, sum_scale) = normalize(&raw.iter().map(|r| r.3).collect::<Vec<_>>());
    let (max_norm, max_scale) = normalize(&raw.iter().map(|r| r.4).collect::<Vec<_>>());

    let samples = raw
        .into_iter()
        .enumerate()
        .map(|(i, (t, q, w_k, o_sum, o_max))| SweepSample {
            t,
            q,
            w_k,
            o_sum,
            o_max,
            wk_norm: wk_norm[i],
            o_sum_norm: sum_norm[i],
            o_max_norm: max_norm[i],
        })
        .collect();
    Ok(SweepSeries {
        samples,
        scale: SeriesScale {
            w_k: wk_scale,
            o_sum: sum_scale,
            o_max: max_scale,
        },
    })
}

impl SweepSeries {
    pub fn dof(&self) -> usize {
        self.samples.first().map_or(0, |s| s.q.len())
    }

    pub fn csv_header(&self, wk_emphasis: Option<f64>) -> String {
        let mut cols = vec!["t".to_string()];
        cols.extend((1..=self.dof()).map(|k| format!("q{k}")));
        cols.extend(
            [
                "wk",
                "o_sum",
                "o_max",
                "wk_norm",
                "o_sum_norm",
                "o_max_norm",
            ]
            .iter()
            .map(|s| s.to_string()),
        );
        if wk_emphasis.is_some() {
            cols.push("wk_display".into());
        }
        cols.join(",")
    }

    /// Writes one header line and one line per sample. With `wk_emphasis`
    /// set, a trailing `wk_display` column holds the emphasized `wk_norm`.
    pub fn write_csv<W: Write>(
        &self,
        out: &mut W,
        wk_emphasis: Option<f64>,
    ) -> std::io::Result<()> {
        writeln!(out, "{}", self.csv_header(wk_emphasis))?;
        for s in &self.samples {
            let mut fields = Vec::with_capacity(8 + s.q.len());
            fields.push(s.t);
            fields.extend(s.q.iter().copied());
            fields.extend([
                s.w_k,
                s.o_sum,
                s.o_max,
                s.wk_norm,
                s.o_sum_norm,
                s.o_max_norm,
            ]);
            if let Some(k) = wk_emphasis {
                fields.push(emphasize_near_zero(s.wk_norm, k));
            }
            let line: Vec<String> = fields
                .iter()
                .map(|&v| format_significant(v, CSV_DIGITS))
                .collect();
            writeln!(out, "{}", line.join(","))?;
        }
        Ok(())
    }
}
