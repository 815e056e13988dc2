use nalgebra::{DMatrix, DVector, Matrix6xX, Vector6};
use serde::{Deserialize, Serialize};

use super::chain::{JointConfig, JointKind, KinematicChain};
use super::fk::{forward_kinematics, FrameSet};
use crate::error::{Error, Result};

/// Task-space dimension: `(v_x, v_y, v_z, ω_x, ω_y, ω_z)`.
pub const TASK_DIM: usize = 6;

/// `det(J Jᵀ)` below this is treated as an exact kinematic singularity
/// (equivalently `w_k < 1e-9`).
pub const SINGULAR_DET_FLOOR: f64 = 1e-18;

/// Default relative singular-value cut for the Jᵀ null space.
pub const NULLSPACE_TOL: f64 = 1e-9;

/// Geometric Jacobian at the task-frame origin, 6 × n_q.
#[derive(Debug, Clone, PartialEq)]
pub struct Jacobian(pub Matrix6xX<f64>);

impl Jacobian {
    pub fn matrix(&self) -> &Matrix6xX<f64> {
        &self.0
    }

    pub fn ncols(&self) -> usize {
        self.0.ncols()
    }

    /// Joint torques `Jᵀ f` produced by the end-effector wrench `f`.
    pub fn transpose_mul(&self, wrench: &Vector6<f64>) -> DVector<f64> {
        self.0.tr_mul(wrench)
    }

    /// Singular values of J in descending order.
    pub fn singular_values(&self) -> Vec<f64> {
        let mut sv: Vec<f64> = padded(&self.0).singular_values().iter().copied().collect();
        sv.sort_by(|a, b| b.total_cmp(a));
        sv.truncate(self.ncols().min(TASK_DIM));
        sv
    }
}

/// Columns `[ẑ_k × r_k ; ẑ_k]` (revolute) or `[ẑ_k ; 0]` (prismatic).
pub fn geometric_jacobian(chain: &KinematicChain, q: &JointConfig) -> Result<Jacobian> {
    let frames = forward_kinematics(chain, q)?;
    Ok(jacobian_from_frames(chain, &frames))
}

/// Jacobian from already computed frames; `frames` must come from `chain`.
pub fn jacobian_from_frames(chain: &KinematicChain, frames: &FrameSet) -> Jacobian {
    let mut j = Matrix6xX::zeros(chain.dof());
    for (k, spec) in chain.joints.iter().enumerate() {
        let z = frames.joint_axis(k);
        let (lin, ang) = match spec.kind {
            JointKind::Revolute => (z.cross(&frames.moment_arm(k)), z),
            JointKind::Prismatic => (z, nalgebra::Vector3::zeros()),
        };
        j.fixed_view_mut::<3, 1>(0, k).copy_from(&lin);
        j.fixed_view_mut::<3, 1>(3, k).copy_from(&ang);
    }
    Jacobian(j)
}

/// Which task-space rows enter a manipulability computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowSelection([bool; TASK_DIM]);

impl RowSelection {
    pub const ALL: RowSelection = RowSelection([true; TASK_DIM]);
    pub const POSITION: RowSelection = RowSelection([true, true, true, false, false, false]);
    pub const ORIENTATION: RowSelection = RowSelection([false, false, false, true, true, true]);

    pub const ROW_NAMES: [&'static str; TASK_DIM] = ["vx", "vy", "vz", "wx", "wy", "wz"];

    pub fn from_indices(indices: &[usize]) -> Result<Self> {
        let mut rows = [false; TASK_DIM];
        for &i in indices {
            if i >= TASK_DIM {
                return Err(Error::invalid(
                    "rows",
                    format!("row index {i} is not below {TASK_DIM}"),
                ));
            }
            rows[i] = true;
        }
        Ok(RowSelection(rows))
    }

    /// Parse row names such as `["vx", "vy"]`.
    pub fn from_names<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        let indices = names
            .iter()
            .map(|n| {
                let n = n.as_ref();
                Self::ROW_NAMES
                    .iter()
                    .position(|r| *r == n)
                    .ok_or_else(|| Error::invalid("rows", format!("unknown row `{n}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_indices(&indices)
    }

    pub fn indices(&self) -> Vec<usize> {
        (0..TASK_DIM).filter(|&i| self.0[i]).collect()
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.indices()
            .into_iter()
            .map(|i| Self::ROW_NAMES[i])
            .collect()
    }

    pub fn is_empty(&self) -> bool {
        !self.0.iter().any(|&r| r)
    }
}

impl Default for RowSelection {
    fn default() -> Self {
        RowSelection::ALL
    }
}

/// Kinematic manipulability `w_k = sqrt(det(J_sel J_selᵀ))` over the selected rows.
///
/// Evaluated as the product of the singular values of `J_sel`, which equals the
/// square root of the determinant but does not lose the small ones to
/// cancellation. When more rows are selected than there are joints the
/// determinant is identically zero. Values with `w_k² < 1e-18` return 0.
pub fn manipulability(jacobian: &Jacobian, rows: RowSelection) -> Result<f64> {
    if rows.is_empty() {
        return Err(Error::invalid("rows", "row selection is empty"));
    }
    let idx = rows.indices();
    let n = jacobian.ncols();
    if idx.len() > n {
        return Ok(0.0);
    }
    let sel = DMatrix::from_fn(idx.len(), n, |r, c| jacobian.0[(idx[r], c)]);
    let w: f64 = sel.singular_values().iter().product();
    if w * w < SINGULAR_DET_FLOOR {
        Ok(0.0)
    } else {
        Ok(w)
    }
}

/// Orthonormal basis of the wrenches `f` with `‖Jᵀ f‖ ≤ tol · σ_max(J) · ‖f‖`.
///
/// Takes the left singular vectors of J whose singular value falls under
/// `tol · σ_max`, plus the directions J cannot reach at all when it has fewer
/// than six columns.
pub fn jacobian_transpose_nullspace(jacobian: &Jacobian, tol: f64) -> Result<Vec<Vector6<f64>>> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::invalid("tol", "must be positive and finite"));
    }
    let m = padded(&jacobian.0);
    let svd = m.svd(true, false);
    let u = svd.u.expect("left singular vectors requested");
    let sigma_max = svd.singular_values.iter().copied().fold(0.0, f64::max);
    let cut = tol * sigma_max;
    let basis = svd
        .singular_values
        .iter()
        .enumerate()
        .filter(|(_, &s)| s <= cut)
        .map(|(i, _)| Vector6::from_iterator(u.column(i).iter().copied()))
        .collect();
    Ok(basis)
}

/// J padded with zero columns to at least 6 columns so that the SVD returns
/// a full 6 × 6 set of left singular vectors. Zero columns leave `J Jᵀ` unchanged.
fn padded(j: &Matrix6xX<f64>) -> DMatrix<f64> {
    let cols = j.ncols().max(TASK_DIM);
    DMatrix::from_fn(
        TASK_DIM,
        cols,
        |r, c| if c < j.ncols() { j[(r, c)] } else { 0.0 },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kinematics::JointSpec;
    use crate::pose::Pose;
    use nalgebra::Matrix6;
    use std::f64::consts::FRAC_PI_2;

    fn planar_2r() -> KinematicChain {
        KinematicChain::new(
            "2r",
            Pose::IDENTITY,
            Pose::IDENTITY,
            vec![
                JointSpec::revolute("j1", 1.0, 0.0, 0.0, 0.0),
                JointSpec::revolute("j2", 1.0, 0.0, 0.0, 0.0),
            ],
        )
        .unwrap()
    }

    #[test]
    fn first_column_of_extended_2r() {
        let j = geometric_jacobian(&planar_2r(), &[0.0, 0.0].into()).unwrap();
        let col: Vector6<f64> = j.0.column(0).into_owned();
        assert_eq!(col, Vector6::new(0.0, 2.0, 0.0, 0.0, 0.0, 1.0));
    }

    #[test]
    fn prismatic_column_is_pure_translation() {
        let chain = KinematicChain::new(
            "rp",
            Pose::IDENTITY,
            Pose::IDENTITY,
            vec![
                JointSpec::revolute("j1", 0.0, -FRAC_PI_2, 0.0, 0.0),
                JointSpec::prismatic("j2", 0.0, 0.0, 0.3, 0.0),
            ],
        )
        .unwrap();
        let j = geometric_jacobian(&chain, &[0.0, 0.2].into()).unwrap();
        let col: Vector6<f64> = j.0.column(1).into_owned();
        assert_eq!(col, Vector6::new(0.0, 1.0, 0.0, 0.0, 0.0, 0.0));
    }

    #[test]
    fn identity_jacobian() {
        let j = Jacobian(Matrix6xX::from_column_slice(
            Matrix6::<f64>::identity().as_slice(),
        ));
        assert_eq!(manipulability(&j, RowSelection::ALL).unwrap(), 1.0);
        assert!(jacobian_transpose_nullspace(&j, NULLSPACE_TOL)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn straight_2r_is_singular_in_the_plane() {
        let j = geometric_jacobian(&planar_2r(), &[0.3, 0.0].into()).unwrap();
        let rows = RowSelection::from_indices(&[0, 1]).unwrap();
        assert_eq!(manipulability(&j, rows).unwrap(), 0.0);
    }

    #[test]
    fn more_rows_than_joints_gives_zero() {
        let j = geometric_jacobian(&planar_2r(), &[0.3, 1.0].into()).unwrap();
        assert_eq!(manipulability(&j, RowSelection::ALL).unwrap(), 0.0);
        assert!(manipulability(&j, RowSelection::from_indices(&[0, 1]).unwrap()).unwrap() > 0.0);
    }

    #[test]
    fn empty_selection_is_an_error() {
        let j = geometric_jacobian(&planar_2r(), &[0.0, 1.0].into()).unwrap();
        assert!(manipulability(&j, RowSelection::from_indices(&[]).unwrap()).is_err());
    }

    #[test]
    fn row_names_round_trip() {
        let rows = RowSelection::from_names(&["vx", "wz"]).unwrap();
        assert_eq!(rows.indices(), vec![0, 5]);
        assert_eq!(rows.names(), vec!["vx", "wz"]);
        assert!(RowSelection::from_names(&["fx"]).is_err());
    }

    #[test]
    fn extended_2r_cannot_feel_fx() {
        let j = geometric_jacobian(&planar_2r(), &[0.0, 0.0].into()).unwrap();
        let fx = Vector6::new(1.0, 0.0, 0.0, 0.0, 0.0, 0.0);
        assert_eq!(j.transpose_mul(&fx).norm(), 0.0);
        let basis = jacobian_transpose_nullspace(&j, NULLSPACE_TOL).unwrap();
        // columns span only vy and wz, leaving four unreachable wrench directions
        assert_eq!(basis.len(), 4);
        let projection: f64 = basis.iter().map(|b| b.dot(&fx).powi(2)).sum();
        assert!((projection - 1.0).abs() < 1e-12);
    }

    #[test]
    fn nullspace_rejects_bad_tolerance() {
        let j = geometric_jacobian(&planar_2r(), &[0.0, 1.0].into()).unwrap();
        assert!(jacobian_transpose_nullspace(&j, 0.0).is_err());
        assert!(jacobian_transpose_nullspace(&j, f64::NAN).is_err());
    }

    #[test]
    fn zero_jacobian_has_full_nullspace() {
        let j = Jacobian(Matrix6xX::zeros(3));
        assert_eq!(jacobian_transpose_nullspace(&j, 1e-9).unwrap().len(), 6);
    }
}
