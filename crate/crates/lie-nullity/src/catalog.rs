//! Named 3-dimensional metric Lie algebras: cyclic (Milnor-frame) triples,
//! the conullity-2 frame family, and Perrone's non-unimodular algebra,
//! together with the tabulated scalar/plane-curvature/nullity expectations
//! they must reproduce.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::lie_metric::{curvature, sectional_curvature, BracketEntry, LieMetricSpace};
use crate::linalg;
use crate::nullity::nullity_index;

/// Bracket coefficients of a cyclic orthonormal frame:
/// `[e1,e2] = λ3 e3, [e2,e3] = λ1 e1, [e3,e1] = λ2 e2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MilnorTriple {
    pub lambda1: f64,
    pub lambda2: f64,
    pub lambda3: f64,
}

impl MilnorTriple {
    pub fn new(lambda1: f64, lambda2: f64, lambda3: f64) -> Self {
        MilnorTriple {
            lambda1,
            lambda2,
            lambda3,
        }
    }
}

/// The 3-dimensional unimodular groups, by isomorphism class of the frame
/// algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupLabel {
    SU2,
    SL2R,
    E11,
    E2Tilde,
    Nil3,
    Abelian,
}

impl std::fmt::Display for GroupLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            GroupLabel::SU2 => "SU(2)",
            GroupLabel::SL2R => "SL(2,R)~",
            GroupLabel::E11 => "E(1,1)",
            GroupLabel::E2Tilde => "E(2)~",
            GroupLabel::Nil3 => "Nil3",
            GroupLabel::Abelian => "Abelian",
        };
        f.write_str(name)
    }
}

/// The metric Lie algebra of a cyclic triple on an orthonormal frame.
pub fn milnor_algebra(t: &MilnorTriple) -> LieMetricSpace {
    LieMetricSpace::new(
        3,
        vec![
            BracketEntry {
                i: 0,
                j: 1,
                coeffs: vec![0.0, 0.0, t.lambda3],
            },
            BracketEntry {
                i: 1,
                j: 2,
                coeffs: vec![t.lambda1, 0.0, 0.0],
            },
            BracketEntry {
                i: 0,
                j: 2,
                coeffs: vec![0.0, -t.lambda2, 0.0],
            },
        ],
        None,
    )
    .expect("cyclic triples always build")
}

/// Isomorphism class of the unimodular algebra with these cyclic
/// coefficients, by sign pattern: the count of zero entries and whether the
/// nonzero entries share a sign. Invariant under permutations of the triple
/// and under reversing all three signs (the symmetries induced by frame
/// changes).
pub fn classify_unimodular(t: &MilnorTriple) -> GroupLabel {
    let entries = [t.lambda1, t.lambda2, t.lambda3];
    let scale = entries.iter().fold(1.0f64, |m, x| m.max(x.abs()));
    let tol = 1e-12 * scale;
    let mut pos = 0;
    let mut neg = 0;
    let mut zero = 0;
    for x in entries {
        if x.abs() <= tol {
            zero += 1;
        } else if x > 0.0 {
            pos += 1;
        } else {
            neg += 1;
        }
    }
    match zero {
        3 => GroupLabel::Abelian,
        2 => GroupLabel::Nil3,
        1 => {
            if pos == 2 || neg == 2 {
                GroupLabel::E2Tilde
            } else {
                GroupLabel::E11
            }
        }
        _ => {
            if pos == 3 || neg == 3 {
                GroupLabel::SU2
            } else {
                GroupLabel::SL2R
            }
        }
    }
}

/// Classification of an arbitrary 3-dimensional unimodular algebra on an
/// orthonormal frame. The bracket composed with the cross product gives a
/// symmetric endomorphism exactly in the unimodular case; its eigenvalues
/// are cyclic coefficients for some frame, which are then classified by
/// sign pattern.
pub fn classify_metric_algebra(space: &LieMetricSpace) -> Result<GroupLabel> {
    if space.dim() != 3 {
        return Err(Error::InvalidInput(
            "classification needs a 3-dimensional algebra".into(),
        ));
    }
    if (space.metric() - DMatrix::identity(3, 3)).amax() > 1e-9 {
        return Err(Error::InvalidInput(
            "classification needs an orthonormal frame (identity metric)".into(),
        ));
    }
    let e: Vec<DVector<f64>> = (0..3)
        .map(|i| DVector::from_fn(3, |r, _| if r == i { 1.0 } else { 0.0 }))
        .collect();
    let cols = [
        space.bracket(&e[1], &e[2]),
        space.bracket(&e[2], &e[0]),
        space.bracket(&e[0], &e[1]),
    ];
    let l = DMatrix::from_fn(3, 3, |r, c| cols[c][r]);
    let scale = l.amax().max(1.0);
    if (&l - l.transpose()).amax() > 1e-9 * scale {
        return Err(Error::InvalidInput(
            "algebra is not unimodular: bracket map is not symmetric".into(),
        ));
    }
    let sym = (&l + l.transpose()) * 0.5;
    let eig = sym.symmetric_eigen().eigenvalues;
    Ok(classify_unimodular(&MilnorTriple::new(
        eig[0], eig[1], eig[2],
    )))
}

/// The tabulated families of metrics with conullity 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFamily {
    /// `(θ + 1/θ, θ, 1/θ)` for θ > 0: scal 2, plane curvature −1, ν₁ = 1.
    T1F1,
    /// `(2, θ, θ)`: scal −2 + 4θ, plane curvature −3 + 2θ, ν₁ = 1.
    T1F2,
    /// `(θ − 1/θ, −1/θ, θ)` for 0 < θ ≤ 1: scal −2, K_D = 1, ν₋₁ = 1.
    T2,
}

impl std::str::FromStr for TableFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "T1F1" => Ok(TableFamily::T1F1),
            "T1F2" => Ok(TableFamily::T1F2),
            "T2" => Ok(TableFamily::T2),
            other => Err(Error::InvalidInput(format!(
                "family must be one of T1F1, T1F2, T2, got `{other}`"
            ))),
        }
    }
}

impl std::fmt::Display for TableFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            TableFamily::T1F1 => "T1F1",
            TableFamily::T1F2 => "T1F2",
            TableFamily::T2 => "T2",
        })
    }
}

/// Computed-versus-expected record for one table row.
#[derive(Debug, Clone)]
pub struct TableRowReport {
    pub family: TableFamily,
    pub theta: f64,
    pub triple: [f64; 3],
    pub label: GroupLabel,
    pub expected_label: Option<GroupLabel>,
    pub scal: f64,
    pub expected_scal: f64,
    pub plane_curvature: f64,
    pub expected_plane_curvature: f64,
    pub nullity_kappa: f64,
    pub nullity_index: usize,
    pub expected_index: usize,
    /// Principal angle between the computed nullity line and `e1`.
    pub nullity_axis_angle: f64,
    pub passed: bool,
}

/// Builds the triple for a family at parameter θ, runs curvature and
/// nullity, and compares against the tabulated values.
pub fn table_row_check(family: TableFamily, theta: f64) -> Result<TableRowReport> {
    let (triple, expected_scal, expected_plane, kappa, expected_label) = match family {
        TableFamily::T1F1 => {
            if !(theta > 0.0) {
                return Err(Error::InvalidInput("T1F1 requires theta > 0".into()));
            }
            (
                [theta + 1.0 / theta, theta, 1.0 / theta],
                2.0,
                -1.0,
                1.0,
                Some(GroupLabel::SU2),
            )
        }
        TableFamily::T1F2 => {
            let label = if theta > 0.0 {
                GroupLabel::SU2
            } else if theta < 0.0 {
                GroupLabel::SL2R
            } else {
                GroupLabel::Nil3
            };
            (
                [2.0, theta, theta],
                -2.0 + 4.0 * theta,
                -3.0 + 2.0 * theta,
                1.0,
                Some(label),
            )
        }
        TableFamily::T2 => {
            if !(theta > 0.0 && theta <= 1.0) {
                return Err(Error::InvalidInput("T2 requires 0 < theta <= 1".into()));
            }
            let label = if theta == 1.0 {
                GroupLabel::E11
            } else {
                GroupLabel::SL2R
            };
            (
                [theta - 1.0 / theta, -1.0 / theta, theta],
                -2.0,
                1.0,
                -1.0,
                Some(label),
            )
        }
    };
    let t = MilnorTriple::new(triple[0], triple[1], triple[2]);
    let space = milnor_algebra(&t);
    let curv = curvature(&space)?;
    let e1 = DVector::from_fn(3, |r, _| if r == 0 { 1.0 } else { 0.0 });
    let e2 = DVector::from_fn(3, |r, _| if r == 1 { 1.0 } else { 0.0 });
    let e3 = DVector::from_fn(3, |r, _| if r == 2 { 1.0 } else { 0.0 });
    let plane = sectional_curvature(&curv, space.metric(), &e2, &e3)?;
    let nullity = nullity_index(&curv, space.metric(), kappa, linalg::RTOL_DEFAULT)?;
    let axis_angle = if nullity.index > 0 {
        linalg::principal_angles(&nullity.basis, &[e1])?[0]
    } else {
        f64::INFINITY
    };
    let label = classify_unimodular(&t);
    let passed = (curv.scal - expected_scal).abs() <= 1e-9
        && (plane - expected_plane).abs() <= 1e-9
        && nullity.index == 1
        && axis_angle <= 1e-7
        && expected_label.map_or(true, |want| want == label);
    Ok(TableRowReport {
        family,
        theta,
        triple,
        label,
        expected_label,
        scal: curv.scal,
        expected_scal,
        plane_curvature: plane,
        expected_plane_curvature: expected_plane,
        nullity_kappa: kappa,
        nullity_index: nullity.index,
        expected_index: 1,
        nullity_axis_angle: axis_angle,
        passed,
    })
}

/// Conullity-2 frame family on an orthonormal basis `(T, X, Y)`:
/// `[X,Y] = 2F T, [T,X] = −X + 2F Y, [T,Y] = Y`. For every F the geometry
/// has ν₋₁ = 1 along T, K_D = 1 and scal = −2; F = 0 is E(1,1) and F ≠ 0
/// is SL(2,R)~.
pub fn conullity2_frame(f_const: f64) -> LieMetricSpace {
    LieMetricSpace::new(
        3,
        vec![
            BracketEntry {
                i: 1,
                j: 2,
                coeffs: vec![2.0 * f_const, 0.0, 0.0],
            },
            BracketEntry {
                i: 0,
                j: 1,
                coeffs: vec![0.0, -1.0, 2.0 * f_const],
            },
            BracketEntry {
                i: 0,
                j: 2,
                coeffs: vec![0.0, 0.0, 1.0],
            },
        ],
        None,
    )
    .expect("frame brackets always build")
}

/// Perrone's non-unimodular solvable algebra on an orthonormal frame
/// `(e1, e2, ξ)`: `[e1,e2] = α e2 + 2ξ`, ξ central. Its scalar and plane
/// curvature agree with the cyclic triple `(2, θ, θ)` at `θ = −α²/2`.
pub fn perrone_algebra(alpha: f64) -> Result<LieMetricSpace> {
    if alpha == 0.0 {
        return Err(Error::InvalidInput("alpha must be nonzero".into()));
    }
    Ok(LieMetricSpace::new(
        3,
        vec![BracketEntry {
            i: 0,
            j: 1,
            coeffs: vec![0.0, alpha, 2.0],
        }],
        None,
    )
    .expect("solvable frame brackets always build"))
}
