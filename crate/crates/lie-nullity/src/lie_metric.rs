//! Curvature engine for left-invariant metrics on Lie groups.
//!
//! A metric Lie algebra is described by structure constants on a frame
//! `e_0..e_{n-1}` together with a Gram matrix for the inner product. All
//! curvature quantities follow the sign convention
//!
//! ```text
//! R(X,Y)Z = ∇_X ∇_Y Z − ∇_Y ∇_X Z − ∇_[X,Y] Z,
//! ```
//!
//! so that K(X,Y) = <R(X,Y)Y, X> / (|X|²|Y|² − <X,Y>²) is positive on the
//! round sphere. The connection comes from Koszul's formula, which for
//! left-invariant fields reduces to
//!
//! ```text
//! 2 <∇_X Y, Z> = <[X,Y],Z> − <[Y,Z],X> + <[Z,X],Y>.
//! ```
//!
//! Structure constants are stored sparsely for `i < j` only; the
//! antisymmetric extension is synthesized. The Gram matrix is used as given:
//! no implicit orthonormalization, so catalog frames keep their stated
//! coefficients.

use std::ops::{Index, IndexMut};

use nalgebra::{DMatrix, DVector};
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::linalg;

/// Absolute tolerance for the Jacobi identity on unit-normalized inputs.
pub const JACOBI_TOL: f64 = 1e-10;
/// Absolute tolerance for antisymmetry conflicts between bracket entries.
pub const ANTISYMMETRY_TOL: f64 = 1e-10;

/// Rank-3 array of `f64` indexed as `t[(i, j, k)]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Tensor3 {
    n: usize,
    data: Vec<f64>,
}

impl Tensor3 {
    pub fn zeros(n: usize) -> Self {
        Tensor3 {
            n,
            data: vec![0.0; n * n * n],
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }
}

impl Index<(usize, usize, usize)> for Tensor3 {
    type Output = f64;
    fn index(&self, (i, j, k): (usize, usize, usize)) -> &f64 {
        &self.data[(i * self.n + j) * self.n + k]
    }
}

impl IndexMut<(usize, usize, usize)> for Tensor3 {
    fn index_mut(&mut self, (i, j, k): (usize, usize, usize)) -> &mut f64 {
        &mut self.data[(i * self.n + j) * self.n + k]
    }
}

/// Rank-4 array of `f64` indexed as `t[(i, j, k, l)]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Tensor4 {
    n: usize,
    data: Vec<f64>,
}

impl Tensor4 {
    pub fn zeros(n: usize) -> Self {
        Tensor4 {
            n,
            data: vec![0.0; n * n * n * n],
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }
}

impl Index<(usize, usize, usize, usize)> for Tensor4 {
    type Output = f64;
    fn index(&self, (i, j, k, l): (usize, usize, usize, usize)) -> &f64 {
        &self.data[((i * self.n + j) * self.n + k) * self.n + l]
    }
}

impl IndexMut<(usize, usize, usize, usize)> for Tensor4 {
    fn index_mut(&mut self, (i, j, k, l): (usize, usize, usize, usize)) -> &mut f64 {
        &mut self.data[((i * self.n + j) * self.n + k) * self.n + l]
    }
}

/// One sparse bracket entry: `[e_i, e_j] = sum_k coeffs[k] e_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub coeffs: Vec<f64>,
}

/// A Lie algebra with structure constants and an inner product on a fixed
/// frame. Immutable after construction; every operation on it is a pure
/// function.
#[derive(Debug, Clone)]
pub struct LieMetricSpace {
    dim: usize,
    brackets: Vec<BracketEntry>,
    metric: DMatrix<f64>,
    structure: Tensor3,
}

#[derive(Debug, Deserialize)]
struct SpaceInput {
    dim: usize,
    #[serde(default)]
    brackets: Vec<BracketInput>,
    #[serde(default)]
    metric: Option<Vec<Vec<f64>>>,
}

#[derive(Debug, Deserialize)]
struct BracketInput {
    i: usize,
    j: usize,
    coeffs: Vec<f64>,
}

impl LieMetricSpace {
    /// Builds a space from sparse bracket entries and an optional Gram
    /// matrix (identity when `None`). Entries with `i > j` are normalized to
    /// `i < j` by antisymmetry. Contradictory duplicates are kept and
    /// surface in [`LieMetricSpace::validate`]; the dense structure tensor
    /// uses the first entry for each pair.
    pub fn new(
        dim: usize,
        brackets: Vec<BracketEntry>,
        metric: Option<DMatrix<f64>>,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidInput("dim must be positive".into()));
        }
        let metric = metric.unwrap_or_else(|| DMatrix::identity(dim, dim));
        if metric.nrows() != dim || metric.ncols() != dim {
            return Err(Error::InvalidInput(format!(
                "metric must be {dim}x{dim}, got {}x{}",
                metric.nrows(),
                metric.ncols()
            )));
        }
        let mut normalized = Vec::with_capacity(brackets.len());
        for b in brackets {
            if b.i >= dim || b.j >= dim {
                return Err(Error::InvalidInput(format!(
                    "bracket indices ({}, {}) out of range for dim {dim}",
                    b.i, b.j
                )));
            }
            if b.coeffs.len() != dim {
                return Err(Error::InvalidInput(format!(
                    "bracket ({}, {}) has {} coefficients, expected {dim}",
                    b.i,
                    b.j,
                    b.coeffs.len()
                )));
            }
            if b.i > b.j {
                normalized.push(BracketEntry {
                    i: b.j,
                    j: b.i,
                    coeffs: b.coeffs.iter().map(|c| -c).collect(),
                });
            } else {
                normalized.push(b);
            }
        }
        let mut structure = Tensor3::zeros(dim);
        let mut seen = vec![false; dim * dim];
        for b in &normalized {
            if b.i == b.j || seen[b.i * dim + b.j] {
                continue;
            }
            seen[b.i * dim + b.j] = true;
            for k in 0..dim {
                structure[(b.i, b.j, k)] = b.coeffs[k];
                structure[(b.j, b.i, k)] = -b.coeffs[k];
            }
        }
        Ok(LieMetricSpace {
            dim,
            brackets: normalized,
            metric,
            structure,
        })
    }

    /// Parses the JSON input schema
    /// `{"dim": n, "brackets": [{"i":0,"j":1,"coeffs":[...]}], "metric": [[...]]}`
    /// with 0-based indices; `"metric"` defaults to the identity.
    pub fn from_json(text: &str) -> Result<Self> {
        let input: SpaceInput = serde_json::from_str(text)
            .map_err(|e| Error::InvalidInput(format!("JSON parse error: {e}")))?;
        let metric = match input.metric {
            None => None,
            Some(rows) => {
                let n = input.dim;
                if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                    return Err(Error::InvalidInput(format!("metric must be {n}x{n}")));
                }
                Some(DMatrix::from_fn(n, n, |i, j| rows[i][j]))
            }
        };
        let brackets = input
            .brackets
            .into_iter()
            .map(|b| BracketEntry {
                i: b.i,
                j: b.j,
                coeffs: b.coeffs,
            })
            .collect();
        LieMetricSpace::new(input.dim, brackets, metric)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn metric(&self) -> &DMatrix<f64> {
        &self.metric
    }

    pub fn bracket_entries(&self) -> &[BracketEntry] {
        &self.brackets
    }

    /// Structure constant `c^k_{ij}` with antisymmetry synthesized.
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> f64 {
        self.structure[(i, j, k)]
    }

    /// Lie bracket of two coefficient vectors in the frame.
    pub fn bracket(&self, u: &DVector<f64>, v: &DVector<f64>) -> DVector<f64> {
        let n = self.dim;
        let mut out = DVector::zeros(n);
        for i in 0..n {
            if u[i] == 0.0 {
                continue;
            }
            for j in 0..n {
                let uv = u[i] * v[j];
                if uv == 0.0 {
                    continue;
                }
                for k in 0..n {
                    out[k] += uv * self.structure[(i, j, k)];
                }
            }
        }
        out
    }

    /// Inner product of coefficient vectors under the Gram matrix.
    pub fn inner(&self, u: &DVector<f64>, v: &DVector<f64>) -> f64 {
        u.dot(&(&self.metric * v))
    }

    fn metric_norm(&self, u: &DVector<f64>) -> f64 {
        self.inner(u, u).max(0.0).sqrt()
    }

    /// Checks antisymmetry consistency, the Jacobi identity, and positive
    /// definiteness of the metric. The report is a gate: nothing is
    /// repaired.
    pub fn validate(&self) -> ValidationReport {
        let n = self.dim;
        // Antisymmetry: conflicting duplicates and self-brackets.
        let mut antisym = 0.0f64;
        for (a, ba) in self.brackets.iter().enumerate() {
            if ba.i == ba.j {
                for c in &ba.coeffs {
                    antisym = antisym.max(c.abs());
                }
                continue;
            }
            for bb in self.brackets.iter().skip(a + 1) {
                if ba.i == bb.i && ba.j == bb.j {
                    for k in 0..n {
                        antisym = antisym.max((ba.coeffs[k] - bb.coeffs[k]).abs());
                    }
                }
            }
        }
        // Jacobi identity per triple i < j < k.
        let mut jacobi = 0.0f64;
        let basis: Vec<DVector<f64>> = (0..n)
            .map(|i| DVector::from_fn(n, |r, _| if r == i { 1.0 } else { 0.0 }))
            .collect();
        for i in 0..n {
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    let cyc = self.bracket(&basis[i], &self.bracket(&basis[j], &basis[k]))
                        + self.bracket(&basis[j], &self.bracket(&basis[k], &basis[i]))
                        + self.bracket(&basis[k], &self.bracket(&basis[i], &basis[j]));
                    jacobi = jacobi.max(self.metric_norm(&cyc));
                }
            }
        }
        // Metric: symmetry and eigenvalue range.
        let mut metric_symmetry = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                metric_symmetry = metric_symmetry.max((self.metric[(i, j)] - self.metric[(j, i)]).abs());
            }
        }
        let sym = (&self.metric + self.metric.transpose()) * 0.5;
        let eigs = sym.symmetric_eigen().eigenvalues;
        let min_eig = eigs.iter().cloned().fold(f64::INFINITY, f64::min);
        let max_eig = eigs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);

        let scale = max_eig.abs().max(1.0);
        let passed = antisym <= ANTISYMMETRY_TOL
            && jacobi <= JACOBI_TOL
            && metric_symmetry <= 1e-12 * scale
            && min_eig > 1e-12 * scale;
        ValidationReport {
            antisymmetry_violation: antisym,
            jacobi_residual: jacobi,
            metric_symmetry_violation: metric_symmetry,
            metric_min_eigenvalue: min_eig,
            passed,
        }
    }
}

/// Outcome of [`LieMetricSpace::validate`].
#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub antisymmetry_violation: f64,
    pub jacobi_residual: f64,
    pub metric_symmetry_violation: f64,
    pub metric_min_eigenvalue: f64,
    pub passed: bool,
}

/// Connection coefficients, curvature tensor, Ricci tensor and scalar
/// curvature of a left-invariant metric, all expressed on the input frame.
///
/// `gamma[(i,j,k)]` is the coefficient of `e_k` in `∇_{e_i} e_j`;
/// `riem[(i,j,k,l)] = <R(e_i,e_j)e_k, e_l>`.
#[derive(Debug, Clone)]
pub struct CurvatureData {
    pub dim: usize,
    pub gamma: Tensor3,
    pub riem: Tensor4,
    pub ricci: DMatrix<f64>,
    pub scal: f64,
}

/// Connection coefficients from Koszul's formula.
pub fn koszul_connection(space: &LieMetricSpace) -> Result<Tensor3> {
    let n = space.dim();
    let g = space.metric();
    let chol = g.clone().cholesky().ok_or_else(|| {
        let sym = (g + g.transpose()) * 0.5;
        let min_eig = sym
            .symmetric_eigen()
            .eigenvalues
            .iter()
            .cloned()
            .fold(f64::INFINITY, f64::min);
        Error::SingularMetric { min_eig }
    })?;
    // Lowered bracket <[e_a, e_b], e_d>.
    let mut cl = Tensor3::zeros(n);
    for a in 0..n {
        for b in 0..n {
            for d in 0..n {
                let mut s = 0.0;
                for k in 0..n {
                    s += space.structure_constant(a, b, k) * g[(k, d)];
                }
                cl[(a, b, d)] = s;
            }
        }
    }
    let mut gamma = Tensor3::zeros(n);
    for i in 0..n {
        for j in 0..n {
            let w = DVector::from_fn(n, |l, _| {
                0.5 * (cl[(i, j, l)] - cl[(j, l, i)] + cl[(l, i, j)])
            });
            let col = chol.solve(&w);
            for k in 0..n {
                gamma[(i, j, k)] = col[k];
            }
        }
    }
    Ok(gamma)
}

/// Full curvature data. For left-invariant fields the connection
/// coefficients are constant, so
/// `R(e_i,e_j)e_k = Γ_j(Γ_i-composed) − Γ_i(Γ_j-composed) − Γ_{[e_i,e_j]} e_k`
/// closes without derivatives.
pub fn curvature(space: &LieMetricSpace) -> Result<CurvatureData> {
    let n = space.dim();
    let g = space.metric();
    let gamma = koszul_connection(space)?;
    // R^m_{ijk}
    let mut rup = Tensor4::zeros(n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for m in 0..n {
                    let mut s = 0.0;
                    for p in 0..n {
                        s += gamma[(j, k, p)] * gamma[(i, p, m)];
                        s -= gamma[(i, k, p)] * gamma[(j, p, m)];
                        s -= space.structure_constant(i, j, p) * gamma[(p, k, m)];
                    }
                    rup[(i, j, k, m)] = s;
                }
            }
        }
    }
    let mut riem = Tensor4::zeros(n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let mut s = 0.0;
                    for m in 0..n {
                        s += rup[(i, j, k, m)] * g[(m, l)];
                    }
                    riem[(i, j, k, l)] = s;
                }
            }
        }
    }
    let ginv = g
        .clone()
        .try_inverse()
        .ok_or(Error::SingularMetric { min_eig: 0.0 })?;
    let mut ricci = DMatrix::zeros(n, n);
    for j in 0..n {
        for k in 0..n {
            let mut s = 0.0;
            for i in 0..n {
                for l in 0..n {
                    s += ginv[(i, l)] * riem[(i, j, k, l)];
                }
            }
            ricci[(j, k)] = s;
        }
    }
    let mut scal = 0.0;
    for j in 0..n {
        for k in 0..n {
            scal += ginv[(j, k)] * ricci[(j, k)];
        }
    }
    Ok(CurvatureData {
        dim: n,
        gamma,
        riem,
        ricci,
        scal,
    })
}

/// Sectional curvature of the plane spanned by `u` and `v`. Errors when the
/// plane is degenerate (Gram determinant below tolerance, relatively).
pub fn sectional_curvature(
    curv: &CurvatureData,
    metric: &DMatrix<f64>,
    u: &DVector<f64>,
    v: &DVector<f64>,
) -> Result<f64> {
    let n = curv.dim;
    let uu = u.dot(&(metric * u));
    let vv = v.dot(&(metric * v));
    let uv = u.dot(&(metric * v));
    let den = uu * vv - uv * uv;
    let scale = (uu * vv).max(f64::MIN_POSITIVE);
    if den <= 1e-12 * scale {
        return Err(Error::DegeneratePlane { denom: den / scale });
    }
    let mut num = 0.0;
    for i in 0..n {
        if u[i] == 0.0 {
            continue;
        }
        for j in 0..n {
            if v[j] == 0.0 {
                continue;
            }
            for k in 0..n {
                for l in 0..n {
                    num += curv.riem[(i, j, k, l)] * u[i] * v[j] * v[k] * u[l];
                }
            }
        }
    }
    Ok(num / den)
}

/// Growth vector of the distribution spanned by `d`: dimensions of the
/// filtration `D^1 ⊆ D^2 ⊆ ...` with `D^{r+1} = D^r + [D, D^r]`, recorded
/// while strictly increasing. The distribution is bracket-generating iff
/// the last entry equals `dim`.
pub fn growth_vector(space: &LieMetricSpace, d: &[DVector<f64>]) -> Vec<usize> {
    growth_vector_with_tol(space, d, linalg::RTOL_DEFAULT)
}

/// Same as [`growth_vector`] with an explicit rank tolerance.
pub fn growth_vector_with_tol(space: &LieMetricSpace, d: &[DVector<f64>], rtol: f64) -> Vec<usize> {
    let n = space.dim();
    let d_basis = linalg::orthonormal_span(d, rtol).expect("SVD of span");
    let mut current = d_basis.clone();
    let mut dims = vec![current.len()];
    while *dims.last().unwrap() < n {
        let mut extended = current.clone();
        for a in &d_basis {
            for w in &current {
                extended.push(space.bracket(a, w));
            }
        }
        let next = linalg::orthonormal_span(&extended, rtol).expect("SVD of span");
        if next.len() <= *dims.last().unwrap() {
            break;
        }
        dims.push(next.len());
        current = next;
    }
    dims
}

#[cfg(test)]
mod tests {
    use super::*;

    fn basis_vec(n: usize, i: usize) -> DVector<f64> {
        DVector::from_fn(n, |r, _| if r == i { 1.0 } else { 0.0 })
    }

    fn milnor(l1: f64, l2: f64, l3: f64) -> LieMetricSpace {
        // [e1,e2]=l3 e3, [e2,e3]=l1 e1, [e3,e1]=l2 e2 on indices 0,1,2
        LieMetricSpace::new(
            3,
            vec![
                BracketEntry {
                    i: 0,
                    j: 1,
                    coeffs: vec![0.0, 0.0, l3],
                },
                BracketEntry {
                    i: 1,
                    j: 2,
                    coeffs: vec![l1, 0.0, 0.0],
                },
                BracketEntry {
                    i: 0,
                    j: 2,
                    coeffs: vec![0.0, -l2, 0.0],
                },
            ],
            None,
        )
        .unwrap()
    }

    #[test]
    fn abelian_validates_with_zero_jacobi() {
        let space = LieMetricSpace::new(4, vec![], None).unwrap();
        let report = space.validate();
        assert!(report.passed);
        assert_eq!(report.jacobi_residual, 0.0);
        assert_eq!(report.antisymmetry_violation, 0.0);
    }

    #[test]
    fn milnor_triple_validates() {
        // direct cyclic-bracket expansion: every double bracket of the
        // (2,1,1) frame lands back on a frame axis and the cyclic sum cancels
        let space = milnor(2.0, 1.0, 1.0);
        let report = space.validate();
        assert!(report.passed, "{report:?}");
        assert!(report.jacobi_residual <= JACOBI_TOL);
    }

    #[test]
    fn contradictory_duplicates_fail_validation() {
        let space = LieMetricSpace::new(
            3,
            vec![
                BracketEntry {
                    i: 0,
                    j: 1,
                    coeffs: vec![0.0, 0.0, 1.0],
                },
                BracketEntry {
                    i: 0,
                    j: 1,
                    coeffs: vec![0.0, 0.0, -1.0],
                },
            ],
            None,
        )
        .unwrap();
        let report = space.validate();
        assert!(!report.passed);
        assert!((report.antisymmetry_violation - 2.0).abs() < 1e-15);
    }

    #[test]
    fn flipped_entry_is_normalized() {
        let a = LieMetricSpace::new(
            2,
            vec![BracketEntry {
                i: 1,
                j: 0,
                coeffs: vec![1.0, 0.0],
            }],
            None,
        )
        .unwrap();
        assert_eq!(a.structure_constant(0, 1, 0), -1.0);
        assert_eq!(a.structure_constant(1, 0, 0), 1.0);
        assert!(a.validate().passed);
    }

    #[test]
    fn abelian_connection_vanishes() {
        let space = LieMetricSpace::new(3, vec![], None).unwrap();
        let gamma = koszul_connection(&space).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    assert_eq!(gamma[(i, j, k)], 0.0);
                }
            }
        }
    }

    #[test]
    fn biinvariant_connection_is_half_bracket() {
        // oracle: for lambda=(c,c,c) the metric is bi-invariant and
        // ∇_X Y = [X,Y]/2
        let space = milnor(2.0, 2.0, 2.0);
        let gamma = koszul_connection(&space).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    let expected = 0.5 * space.structure_constant(i, j, k);
                    assert!((gamma[(i, j, k)] - expected).abs() < 1e-14);
                }
            }
        }
    }

    #[test]
    fn abelian_curvature_vanishes() {
        let space = LieMetricSpace::new(3, vec![], None).unwrap();
        let curv = curvature(&space).unwrap();
        assert_eq!(curv.scal, 0.0);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(curv.ricci[(i, j)], 0.0);
            }
        }
    }

    #[test]
    fn round_su2_has_unit_sectional_curvature() {
        // oracle: bi-invariant K(X,Y) = |[X,Y]|^2 / 4 for orthonormal X, Y
        let space = milnor(2.0, 2.0, 2.0);
        let curv = curvature(&space).unwrap();
        assert!((curv.scal - 6.0).abs() < 1e-12);
        for i in 0..3 {
            for j in 0..3 {
                if i == j {
                    continue;
                }
                let u = basis_vec(3, i);
                let v = basis_vec(3, j);
                let k = sectional_curvature(&curv, space.metric(), &u, &v).unwrap();
                let oracle = space.bracket(&u, &v).norm_squared() / 4.0;
                assert!((k - oracle).abs() < 1e-12);
                assert!((k - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn milnor_211_matches_table_values() {
        let space = milnor(2.0, 1.0, 1.0);
        let curv = curvature(&space).unwrap();
        assert!((curv.scal - 2.0).abs() < 1e-12, "scal = {}", curv.scal);
        let k23 = sectional_curvature(&curv, space.metric(), &basis_vec(3, 1), &basis_vec(3, 2))
            .unwrap();
        assert!((k23 + 1.0).abs() < 1e-12, "K(e2,e3) = {k23}");
    }

    #[test]
    fn sectional_is_plane_dependent_only() {
        let space = milnor(2.5, 2.0, 0.5);
        let curv = curvature(&space).unwrap();
        let u = DVector::from_vec(vec![1.0, 0.5, -0.25]);
        let v = DVector::from_vec(vec![0.0, 1.0, 1.5]);
        let k0 = sectional_curvature(&curv, space.metric(), &u, &v).unwrap();
        // random-ish invertible change of plane basis
        let u2 = &u * 0.7 - &v * 1.3;
        let v2 = &u * 0.2 + &v * 0.4;
        let k1 = sectional_curvature(&curv, space.metric(), &u2, &v2).unwrap();
        assert!((k0 - k1).abs() < 1e-9, "{k0} vs {k1}");
    }

    #[test]
    fn degenerate_plane_is_rejected() {
        let space = LieMetricSpace::new(3, vec![], None).unwrap();
        let curv = curvature(&space).unwrap();
        let u = basis_vec(3, 0);
        let v = &u * 2.0;
        assert!(matches!(
            sectional_curvature(&curv, space.metric(), &u, &v),
            Err(Error::DegeneratePlane { .. })
        ));
    }

    #[test]
    fn growth_vector_heisenberg_contact_plane() {
        // [e2,e3] = 2 e1 spans the rest
        let space = milnor(2.0, 0.0, 0.0);
        let d = vec![basis_vec(3, 1), basis_vec(3, 2)];
        assert_eq!(growth_vector(&space, &d), vec![2, 3]);
    }

    #[test]
    fn growth_vector_stabilizes_on_abelian() {
        let space = LieMetricSpace::new(4, vec![], None).unwrap();
        let d = vec![basis_vec(4, 0), basis_vec(4, 2)];
        assert_eq!(growth_vector(&space, &d), vec![2]);
    }

    #[test]
    fn json_round_trip_defaults_metric_to_identity() {
        let space = LieMetricSpace::from_json(
            r#"{"dim":3,"brackets":[{"i":0,"j":1,"coeffs":[0.0,0.0,2.0]}]}"#,
        )
        .unwrap();
        assert_eq!(space.dim(), 3);
        assert_eq!(space.metric()[(2, 2)], 1.0);
        assert_eq!(space.structure_constant(0, 1, 2), 2.0);
    }
}
