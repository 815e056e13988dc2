use nalgebra::{Matrix6xX, Vector6};
use serde::{Deserialize, Serialize};

use super::matrix::ObservabilityMatrix;

/// Built-in row-wise reductions of S.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GammaKind {
    /// Row-wise sum: cumulative observation, counts redundancy. Unbounded.
    Sum,
    /// Row-wise max: how directly the best-aligned sensor observes each axis.
    Max,
}

impl GammaKind {
    pub fn name(self) -> &'static str {
        match self {
            GammaKind::Sum => "sum",
            GammaKind::Max => "max",
        }
    }
}

impl std::fmt::Display for GammaKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for GammaKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "sum" => Ok(GammaKind::Sum),
            "max" => Ok(GammaKind::Max),
            other => Err(format!(
                "unknown observability function `{other}` (expected sum or max)"
            )),
        }
    }
}

/// A sensor observability function Γ: reduces S to the observability vector s.
///
/// Implementations see the moment arms as well as S, so models of
/// sensor-to-sensor interaction can use sensor positions.
pub trait ObservabilityFunction {
    fn reduce(&self, s: &ObservabilityMatrix) -> Vector6<f64>;

    /// The built-in kind this function corresponds to, if any.
    fn kind(&self) -> Option<GammaKind> {
        None
    }
}

impl ObservabilityFunction for GammaKind {
    fn reduce(&self, s: &ObservabilityMatrix) -> Vector6<f64> {
        match self {
            GammaKind::Sum => gamma_sum(&s.matrix),
            GammaKind::Max => gamma_max(&s.matrix),
        }
    }

    fn kind(&self) -> Option<GammaKind> {
        Some(*self)
    }
}

impl<F> ObservabilityFunction for F
where
    F: Fn(&ObservabilityMatrix) -> Vector6<f64>,
{
    fn reduce(&self, s: &ObservabilityMatrix) -> Vector6<f64> {
        self(s)
    }
}

pub fn gamma_sum(s: &Matrix6xX<f64>) -> Vector6<f64> {
    Vector6::from_fn(|j, _| s.row(j).iter().sum())
}

/// Row-wise maximum; an empty S gives zeros.
pub fn gamma_max(s: &Matrix6xX<f64>) -> Vector6<f64> {
    Vector6::from_fn(|j, _| s.row(j).iter().copied().fold(0.0, f64::max))
}

/// Sensor observability index `o = Π_j s_j`.
pub fn observability_index(s: &Vector6<f64>) -> f64 {
    s.iter().product()
}
