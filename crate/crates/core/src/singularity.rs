//! Classification of configurations into kinematic, observability and false
//! (Jᵀ null-space only) singularities, and the comparison of S against the
//! geometric Jacobian for joint-torque-only suites.

use nalgebra::Vector3;

use crate::error::{Error, Result};
use crate::kinematics::{
    forward_kinematics, jacobian_from_frames, jacobian_transpose_nullspace, manipulability,
    JointConfig, KinematicChain, RowSelection, NULLSPACE_TOL,
};
use crate::observability::{
    gamma_max, gamma_sum, observability_index, observability_matrix_from_frames, GammaKind,
    SensorSuite,
};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// `w_k` below this is a kinematic singularity.
    pub kinematic: f64,
    /// Relative singular-value cut for the Jᵀ null space.
    pub nullspace: f64,
    /// `o` below this is an observability singularity.
    pub observability: f64,
    /// Rows entering `w_k`.
    pub rows: RowSelection,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            kinematic: 1e-9,
            nullspace: NULLSPACE_TOL,
            observability: 1e-12,
            rows: RowSelection::ALL,
        }
    }
}

impl Tolerances {
    fn validate(&self) -> Result<()> {
        for (field, v) in [
            ("tolerances.kinematic", self.kinematic),
            ("tolerances.nullspace", self.nullspace),
            ("tolerances.observability", self.observability),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::invalid(field, "must be positive and finite"));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConfigClassification {
    pub w_k: f64,
    pub o_sum: f64,
    pub o_max: f64,
    /// The Γ whose index decides `observability_singular`.
    pub gamma: GammaKind,
    pub kinematic_singular: bool,
    pub observability_singular: bool,
    pub jt_nullspace_dim: usize,
    /// Jᵀ has a null space, yet every task axis is still observed.
    pub false_observability_singularity: bool,
}

impl ConfigClassification {
    pub fn o(&self) -> f64 {
        match self.gamma {
            GammaKind::Sum => self.o_sum,
            GammaKind::Max => self.o_max,
        }
    }
}

pub fn classify(
    chain: &KinematicChain,
    q: &JointConfig,
    suite: &SensorSuite,
    gamma: GammaKind,
    tolerances: &Tolerances,
) -> Result<ConfigClassification> {
    tolerances.validate()?;
    suite.validate(chain)?;
    let frames = forward_kinematics(chain, q)?;
    let jacobian = jacobian_from_frames(chain, &frames);
    let w_k = manipulability(&jacobian, tolerances.rows)?;
    let s = observability_matrix_from_frames(&frames, suite);
    let o_sum = observability_index(&gamma_sum(&s.matrix));
    let o_max = observability_index(&gamma_max(&s.matrix));
    let jt_nullspace_dim = jacobian_transpose_nullspace(&jacobian, tolerances.nullspace)?.len();

    let o = match gamma {
        GammaKind::Sum => o_sum,
        GammaKind::Max => o_max,
    };
    let observability_singular = o < tolerances.observability;
    Ok(ConfigClassification {
        w_k,
        o_sum,
        o_max,
        gamma,
        kinematic_singular: w_k < tolerances.kinematic,
        observability_singular,
        jt_nullspace_dim,
        false_observability_singularity: jt_nullspace_dim > 0 && !observability_singular,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ColumnDeviation {
    /// `‖S_p[:,i] − |J_p[:,i]| / ‖J_p[:,i]‖‖`; `None` when the column took the
    /// collinear branch and the normalization is undefined.
    pub translational: Option<f64>,
    /// `‖S_θ[:,i] − |J_θ[:,i]|‖`.
    pub rotational: f64,
}

impl ColumnDeviation {
    pub fn is_excluded(&self) -> bool {
        self.translational.is_none()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpecialCaseReport {
    pub columns: Vec<ColumnDeviation>,
    /// Largest deviation over the non-excluded columns.
    pub max_deviation: f64,
    pub excluded: usize,
}

/// Compares S for the canonical joint-torque suite with the column-wise
/// `[|J_p| / ‖J_p‖ ; |J_θ|]` map of the geometric Jacobian.
pub fn special_case_check(chain: &KinematicChain, q: &JointConfig) -> Result<SpecialCaseReport> {
    if let Some(j) = chain
        .joints
        .iter()
        .find(|j| !matches!(j.kind, crate::kinematics::JointKind::Revolute))
    {
        return Err(Error::UnsupportedChain(format!(
            "joint `{}` is not revolute; the torque-sensor correspondence needs an all-revolute chain",
            j.name
        )));
    }
    let suite = SensorSuite::joint_torque(chain);
    let frames = forward_kinematics(chain, q)?;
    let jacobian = jacobian_from_frames(chain, &frames);
    let s = observability_matrix_from_frames(&frames, &suite);

    let mut columns = Vec::with_capacity(chain.dof());
    let mut max_deviation: f64 = 0.0;
    for i in 0..chain.dof() {
        let jcol = jacobian.0.column(i);
        let scol = s.matrix.column(i);
        let j_p: Vector3<f64> = jcol.fixed_rows::<3>(0).into_owned();
        let j_theta: Vector3<f64> = jcol.fixed_rows::<3>(3).into_owned();
        let s_p: Vector3<f64> = scol.fixed_rows::<3>(0).into_owned();
        let s_theta: Vector3<f64> = scol.fixed_rows::<3>(3).into_owned();

        let rotational = (s_theta - j_theta.abs()).norm();
        let translational = if s.collinear[i] {
            None
        } else {
            Some((s_p - j_p.abs() / j_p.norm()).norm())
        };
        if let Some(t) = translational {
            max_deviation = max_deviation.max(t).max(rotational);
        }
        columns.push(ColumnDeviation {
            translational,
            rotational,
        });
    }
    let excluded = columns.iter().filter(|c| c.is_excluded()).count();
    Ok(SpecialCaseReport {
        columns,
        max_deviation,
        excluded,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kinematics::JointSpec;
    use crate::observability::{SensorMount, TransformKind};
    use crate::pose::Pose;

    fn planar(n: usize) -> KinematicChain {
        KinematicChain::new(
            "planar",
            Pose::IDENTITY,
            Pose::IDENTITY,
            (0..n)
                .map(|k| JointSpec::revolute(format!("j{k}"), 1.0, 0.0, 0.0, 0.0))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn special_case_on_planar_2r() {
        let report = special_case_check(&planar(2), &[0.3, 0.7].into()).unwrap();
        assert_eq!(report.excluded, 0);
        assert!(report.max_deviation <= 1e-12);
    }

    #[test]
    fn column_at_the_task_frame_is_excluded() {
        // last link has zero length, so the last joint sits on the task frame
        let mut chain = planar(2);
        chain.joints[1].a = 0.0;
        let report = special_case_check(&chain, &[0.3, 0.7].into()).unwrap();
        assert_eq!(report.excluded, 1);
        assert!(report.columns[1].is_excluded());
        assert_eq!(report.columns[1].rotational, 0.0);
    }

    #[test]
    fn prismatic_joint_is_unsupported() {
        let mut chain = planar(2);
        chain.joints[1].kind = crate::kinematics::JointKind::Prismatic;
        assert!(matches!(
            special_case_check(&chain, &[0.0, 0.0].into()),
            Err(Error::UnsupportedChain(_))
        ));
    }

    #[test]
    fn non_positive_tolerances_are_rejected() {
        let chain = planar(2);
        let suite = SensorSuite::joint_torque(&chain);
        let tol = Tolerances {
            nullspace: 0.0,
            ..Tolerances::default()
        };
        assert!(classify(&chain, &[0.0, 1.0].into(), &suite, GammaKind::Sum, &tol).is_err());
    }

    #[test]
    fn six_axis_sensor_with_position_rows() {
        let chain = planar(2);
        let suite = SensorSuite::six_axis(
            "ft_",
            SensorMount {
                parent_joint: 2,
                offset: Pose::from_xyz(1.0, 0.0, 0.0),
            },
            TransformKind::Force,
        );
        let tol = Tolerances {
            rows: RowSelection::from_indices(&[0, 1]).unwrap(),
            ..Tolerances::default()
        };
        let c = classify(&chain, &[0.3, 1.2].into(), &suite, GammaKind::Max, &tol).unwrap();
        assert!(!c.kinematic_singular);
        assert!(!c.observability_singular);
        // a planar arm never spans all six wrench directions
        assert_eq!(c.jt_nullspace_dim, 4);
        assert!(c.false_observability_singularity);
    }
}
