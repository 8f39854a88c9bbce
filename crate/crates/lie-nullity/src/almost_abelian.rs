//! Closed-form geometry of almost-Abelian groups `R ⋉_A V`, their
//! 0-nullity, lattice criteria, and the explicit low-dimensional
//! constructions used throughout the crate.
//!
//! The codimension-one Abelian ideal V carries the adjoint action of the
//! unit generator ξ as a matrix A with `[ξ, X] = AX`; the metric makes
//! `(ξ, X_1..X_m)` orthonormal. Everything geometric is controlled by the
//! symmetric/skew decomposition `A = A_sy + A_sk`.

use nalgebra::{DMatrix, DVector};
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::lie_metric::{BracketEntry, CurvatureData, LieMetricSpace, Tensor3, Tensor4};
use crate::linalg;
use crate::nullity::{nullity_index, NullityResult};

pub use crate::linalg::charpoly;

/// An almost-Abelian group presented by the adjoint action on its Abelian
/// ideal. Immutable after construction.
#[derive(Debug, Clone)]
pub struct AlmostAbelianGroup {
    m: usize,
    a: DMatrix<f64>,
    a_sy: DMatrix<f64>,
    a_sk: DMatrix<f64>,
}

#[derive(Debug, Deserialize)]
struct MatrixInput {
    m: usize,
    #[serde(rename = "A")]
    a: Vec<Vec<f64>>,
}

impl AlmostAbelianGroup {
    pub fn new(a: DMatrix<f64>) -> Result<Self> {
        if a.nrows() != a.ncols() || a.nrows() == 0 {
            return Err(Error::InvalidInput(format!(
                "A must be square and nonempty, got {}x{}",
                a.nrows(),
                a.ncols()
            )));
        }
        if a.amax() == 0.0 {
            return Err(Error::InvalidInput(
                "A must be nonzero (the group would be Abelian)".into(),
            ));
        }
        let a_sy = (&a + a.transpose()) * 0.5;
        let a_sk = (&a - a.transpose()) * 0.5;
        Ok(AlmostAbelianGroup {
            m: a.nrows(),
            a,
            a_sy,
            a_sk,
        })
    }

    /// Parses the JSON schema `{"m": 4, "A": [[...]]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let input: MatrixInput = serde_json::from_str(text)
            .map_err(|e| Error::InvalidInput(format!("JSON parse error: {e}")))?;
        if input.a.len() != input.m || input.a.iter().any(|r| r.len() != input.m) {
            return Err(Error::InvalidInput(format!(
                "A must be {0}x{0}",
                input.m
            )));
        }
        AlmostAbelianGroup::new(DMatrix::from_fn(input.m, input.m, |i, j| input.a[i][j]))
    }

    /// Dimension of the Abelian ideal V (the group has dimension m + 1).
    pub fn ideal_dim(&self) -> usize {
        self.m
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.a
    }

    pub fn symmetric_part(&self) -> &DMatrix<f64> {
        &self.a_sy
    }

    pub fn skew_part(&self) -> &DMatrix<f64> {
        &self.a_sk
    }

    pub fn is_unimodular(&self, tol: f64) -> bool {
        self.a.trace().abs() <= tol
    }

    /// The same group as a structure-constant space on the orthonormal
    /// basis `(ξ, X_1..X_m)`, with `[ξ, X_i] = Σ_k A_{ki} X_k` and V
    /// Abelian.
    pub fn to_lie_metric(&self) -> LieMetricSpace {
        let m = self.m;
        let mut brackets = Vec::with_capacity(m);
        for i in 1..=m {
            let mut coeffs = vec![0.0; m + 1];
            for k in 1..=m {
                coeffs[k] = self.a[(k - 1, i - 1)];
            }
            brackets.push(BracketEntry { i: 0, j: i, coeffs });
        }
        LieMetricSpace::new(m + 1, brackets, None).expect("semidirect-product brackets are valid")
    }
}

/// Curvature of an almost-Abelian group assembled from the closed-form
/// blocks (basis order `ξ, X_1..X_m`, identity Gram matrix):
///
/// ```text
/// R(X,Y)Z  = −<S Y, Z> S X + <S X, Z> S Y,      R(X,Y)ξ = 0,
/// R(ξ,X)Y  = <([K,S] − S²) X, Y> ξ,             R(ξ,X)ξ = ([S,K] + S²) X,
/// ```
///
/// with `S = A_sy`, `K = A_sk`. Ricci and scalar curvature follow by
/// contraction.
pub fn aa_curvature(group: &AlmostAbelianGroup) -> CurvatureData {
    let m = group.m;
    let n = m + 1;
    let s = &group.a_sy;
    let k = &group.a_sk;

    let mut gamma = Tensor3::zeros(n);
    for j in 1..=n - 1 {
        for l in 1..=n - 1 {
            // ∇_ξ X_j = K X_j ; ∇_{X_j} ξ = −S X_j ; ∇_{X_j} X_l = <S X_j, X_l> ξ
            gamma[(0, j, l)] = k[(l - 1, j - 1)];
            gamma[(j, 0, l)] = -s[(l - 1, j - 1)];
        }
        for l in 1..=n - 1 {
            gamma[(j, l, 0)] = s[(l - 1, j - 1)];
        }
    }

    // M = K S − S K − S², a symmetric matrix.
    let mm = k * s - s * k - s * s;
    let mut riem = Tensor4::zeros(n);
    for i in 1..n {
        for j in 1..n {
            for p in 1..n {
                for q in 1..n {
                    riem[(i, j, p, q)] = s[(i - 1, p - 1)] * s[(j - 1, q - 1)]
                        - s[(j - 1, p - 1)] * s[(i - 1, q - 1)];
                }
            }
            let v = mm[(i - 1, j - 1)];
            riem[(0, i, j, 0)] = v;
            riem[(i, 0, j, 0)] = -v;
            riem[(0, i, 0, j)] = -v;
            riem[(i, 0, 0, j)] = v;
        }
    }

    let mut ricci = DMatrix::zeros(n, n);
    for j in 0..n {
        for p in 0..n {
            let mut acc = 0.0;
            for i in 0..n {
                acc += riem[(i, j, p, i)];
            }
            ricci[(j, p)] = acc;
        }
    }
    let scal = ricci.trace();
    CurvatureData {
        dim: n,
        gamma,
        riem,
        ricci,
        scal,
    }
}

/// Basis of the 0-nullity inside V: `ker A_sy ∩ A_sk^{-1}(ker A_sy)`,
/// computed as the kernel of the stacked operator `[S; S K]`. Flat groups
/// (vanishing symmetric part) are rejected — their 0-nullity is everything.
pub fn aa_nullity(group: &AlmostAbelianGroup) -> Result<Vec<DVector<f64>>> {
    let s = &group.a_sy;
    if s.amax() <= 1e-14 * group.a.amax() {
        return Err(Error::FlatGroup);
    }
    let m = group.m;
    let sk = s * &group.a_sk;
    let mut stacked = DMatrix::zeros(2 * m, m);
    stacked.view_mut((0, 0), (m, m)).copy_from(s);
    stacked.view_mut((m, 0), (m, m)).copy_from(&sk);
    Ok(linalg::kernel(&stacked, linalg::RTOL_DEFAULT)?.basis)
}

/// Which matrix the lattice criterion inspects: the scaled action itself or
/// its exponential.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntegralityMode {
    /// Characteristic polynomial of `λA` must be integral.
    Linear,
    /// Characteristic polynomial of `exp(λA)` must be integral with
    /// determinant ±1.
    Exponential,
}

impl std::str::FromStr for IntegralityMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "linear" => Ok(IntegralityMode::Linear),
            "exponential" => Ok(IntegralityMode::Exponential),
            other => Err(Error::InvalidInput(format!(
                "mode must be `linear` or `exponential`, got `{other}`"
            ))),
        }
    }
}

/// Result of an integrality test of the lattice criterion.
#[derive(Debug, Clone)]
pub struct IntegralityCheck {
    pub integral: bool,
    /// Monic characteristic polynomial coefficients as computed.
    pub coefficients: Vec<f64>,
    /// The same coefficients rounded to the nearest integers.
    pub rounded: Vec<i64>,
    /// Largest distance from a coefficient to its nearest integer.
    pub max_deviation: f64,
    /// Determinant of the inspected matrix.
    pub det: f64,
}

fn nilpotency_check(a: &DMatrix<f64>, tol: f64) -> Result<()> {
    let spectral_radius = a
        .complex_eigenvalues()
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    if spectral_radius <= tol {
        return Err(Error::Nilpotent(format!(
            "all eigenvalues within {tol:e} of zero"
        )));
    }
    Ok(())
}

/// Lattice integrality test: in linear mode the characteristic polynomial
/// of `λA` (for unimodular, non-nilpotent A), in exponential mode the
/// characteristic polynomial of `exp(λA)` together with `|det| = 1`.
pub fn integrality_check(
    a: &DMatrix<f64>,
    lambda: f64,
    mode: IntegralityMode,
    tol: f64,
) -> Result<IntegralityCheck> {
    if lambda == 0.0 {
        return Err(Error::InvalidInput("lambda must be nonzero".into()));
    }
    if a.nrows() != a.ncols() || a.nrows() == 0 {
        return Err(Error::InvalidInput("A must be square and nonempty".into()));
    }
    let target = match mode {
        IntegralityMode::Linear => {
            if a.trace().abs() > tol {
                return Err(Error::InvalidInput(format!(
                    "linear mode requires a unimodular group (tr A = {:e})",
                    a.trace()
                )));
            }
            nilpotency_check(a, tol)?;
            a * lambda
        }
        IntegralityMode::Exponential => (a * lambda).exp(),
    };
    let coefficients = charpoly(&target);
    let rounded: Vec<i64> = coefficients.iter().map(|c| c.round() as i64).collect();
    let max_deviation = coefficients
        .iter()
        .map(|c| (c - c.round()).abs())
        .fold(0.0, f64::max);
    let m = target.nrows();
    let det = if m % 2 == 0 {
        coefficients[m]
    } else {
        -coefficients[m]
    };
    let mut integral = max_deviation <= tol;
    if mode == IntegralityMode::Exponential {
        integral = integral && (det.abs() - 1.0).abs() <= tol;
    }
    Ok(IntegralityCheck {
        integral,
        coefficients,
        rounded,
        max_deviation,
        det,
    })
}

/// One verified scaling found by [`lattice_lambda_search`].
#[derive(Debug, Clone)]
pub struct LatticeCandidate {
    pub lambda: f64,
    /// The integer value of `tr exp(λA)` that produced this candidate.
    pub trace_target: i64,
    pub coefficients: Vec<i64>,
}

const LAMBDA_SEARCH_HORIZON: f64 = 25.0;
const LAMBDA_SEARCH_STEPS: usize = 4000;

/// Searches scalings λ > 0 with `tr exp(λA)` equal to an integer `k` in
/// `[-bound, bound]` (bisection between grid sign changes of the trace),
/// then keeps the solutions that pass the exponential integrality test.
/// An empty list means no candidate was found within the bound.
pub fn lattice_lambda_search(
    a: &DMatrix<f64>,
    coefficient_bound: i64,
    tol: f64,
) -> Result<Vec<LatticeCandidate>> {
    if a.trace().abs() > tol {
        return Err(Error::InvalidInput(format!(
            "lambda search requires a unimodular group (tr A = {:e})",
            a.trace()
        )));
    }
    nilpotency_check(a, tol)?;
    if coefficient_bound < 0 {
        return Err(Error::InvalidInput("bound must be nonnegative".into()));
    }
    let f: Vec<f64> = (1..=LAMBDA_SEARCH_STEPS)
        .map(|i| {
            let lambda = LAMBDA_SEARCH_HORIZON * i as f64 / LAMBDA_SEARCH_STEPS as f64;
            (a * lambda).exp().trace()
        })
        .collect();
    let lambda_at = |i: usize| LAMBDA_SEARCH_HORIZON * (i + 1) as f64 / LAMBDA_SEARCH_STEPS as f64;
    let mut out: Vec<LatticeCandidate> = Vec::new();
    for k in -coefficient_bound..=coefficient_bound {
        let target = k as f64;
        for i in 0..f.len() - 1 {
            let g0 = f[i] - target;
            let g1 = f[i + 1] - target;
            if g0 == 0.0 || g0.signum() == g1.signum() {
                continue;
            }
            let lambda = linalg::bisect(
                |x| (a * x).exp().trace() - target,
                lambda_at(i),
                lambda_at(i + 1),
            );
            if lambda <= 1e-6 {
                continue;
            }
            let check = integrality_check(a, lambda, IntegralityMode::Exponential, tol)?;
            if !check.integral {
                continue;
            }
            if out.iter().any(|c| (c.lambda - lambda).abs() <= 1e-8) {
                continue;
            }
            out.push(LatticeCandidate {
                lambda,
                trace_target: k,
                coefficients: check.rounded,
            });
        }
    }
    out.sort_by(|x, y| x.lambda.partial_cmp(&y.lambda).unwrap());
    Ok(out)
}

/// Report of the 5-dimensional finite-volume construction exposed by the
/// `example5` command: spectral data of the integer conjugacy target, the
/// derived quartic coefficients, the assembled action and its verified
/// nullity.
#[derive(Debug, Clone)]
pub struct Example5Report {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub sigma: f64,
    pub mu: f64,
    pub nu: f64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    /// The assembled 4x4 action matrix.
    pub matrix: DMatrix<f64>,
    pub charpoly_a: Vec<f64>,
    pub charpoly_b: Vec<f64>,
    pub nullity_index: usize,
    pub nullity_basis: Vec<DVector<f64>>,
}

fn stage_err(stage: &'static str, detail: String) -> Error {
    Error::ConstructionStage { stage, detail }
}

/// Builds the unimodular 4x4 action whose exponential is conjugate to an
/// integer matrix, yielding a 5-dimensional group with 0-nullity 1 that
/// admits lattices. Every stage is verified; any failure aborts with the
/// stage named. The construction is deterministic.
pub fn construct_example5() -> Result<Example5Report> {
    // Integer conjugacy target with det 1: two real eigenvalues and one
    // complex pair.
    let c_int = DMatrix::from_row_slice(
        4,
        4,
        &[
            1.0, 0.0, 0.0, 1.0, //
            1.0, 2.0, 0.0, 2.0, //
            0.0, 1.0, 3.0, 0.0, //
            0.0, 0.0, 1.0, 0.0,
        ],
    );
    let eigen = linalg::eigenvalues(&c_int);
    let mut reals = Vec::new();
    let mut complexes = Vec::new();
    for z in &eigen {
        if z.im.abs() <= 1e-9 * z.norm().max(1.0) {
            reals.push(z.re);
        } else if z.im > 0.0 {
            complexes.push(*z);
        }
    }
    if reals.len() != 2 || complexes.len() != 1 {
        return Err(stage_err(
            "eigendecompose",
            format!("expected 2 real eigenvalues and 1 complex pair, got {eigen:?}"),
        ));
    }
    for z in &eigen {
        let (_, residual) = linalg::eigenvector_for(&c_int, *z)?;
        if residual > 1e-10 {
            return Err(stage_err(
                "eigendecompose",
                format!("eigenvector residual {residual:e} for eigenvalue {z}"),
            ));
        }
    }
    let small = reals[0].min(reals[1]);
    let large = reals[0].max(reals[1]);
    if small <= 0.0 {
        return Err(stage_err(
            "eigendecompose",
            format!("smallest real eigenvalue {small} is not positive"),
        ));
    }
    let gamma = -small.ln();
    let z = complexes[0];
    let alpha = z.norm().ln();
    let beta = z.arg();
    if !(beta > 0.0 && beta < std::f64::consts::PI) {
        return Err(stage_err(
            "eigendecompose",
            format!("principal argument {beta} outside (0, pi)"),
        ));
    }
    if (large.ln() - (gamma - 2.0 * alpha)).abs() > 1e-8 {
        return Err(stage_err(
            "angles-consistency",
            format!(
                "log(larger real eigenvalue) = {} but gamma - 2 alpha = {}",
                large.ln(),
                gamma - 2.0 * alpha
            ),
        ));
    }

    let sigma = -2.0 * alpha * alpha + beta * beta - (alpha - gamma).powi(2);
    let mu = 2.0 * alpha * ((alpha - gamma).powi(2) + beta * beta);
    let nu = (alpha * alpha + beta * beta) * gamma * (2.0 * alpha - gamma);
    if !(mu > 0.0 && nu < 0.0) {
        return Err(stage_err(
            "coefficients",
            format!("expected mu > 0 and nu < 0, got mu = {mu}, nu = {nu}"),
        ));
    }

    // First positive root of a^4 + sigma a^2 - mu a + nu, bracketed from 0.
    let p = |x: f64| x.powi(4) + sigma * x * x - mu * x + nu;
    let upper = 1.0 + sigma.abs() + mu.abs() + nu.abs();
    let slices = 4096;
    let mut bracket = None;
    let mut x0 = 0.0;
    let mut p0 = p(0.0);
    for i in 1..=slices {
        let x1 = upper * i as f64 / slices as f64;
        let p1 = p(x1);
        if p0.signum() != p1.signum() {
            bracket = Some((x0, x1));
            break;
        }
        x0 = x1;
        p0 = p1;
    }
    let (lo, hi) = bracket.ok_or_else(|| {
        stage_err("quartic", format!("no sign change on [0, {upper}]"))
    })?;
    let a = linalg::bisect(p, lo, hi);
    if !(a > 0.0) || p(a).abs() > 1e-9 * upper.powi(4) {
        return Err(stage_err(
            "quartic",
            format!("root a = {a} with residual {:e}", p(a)),
        ));
    }
    let b = (-nu).sqrt() / a;
    let c = (mu / a).sqrt();

    let matrix = DMatrix::from_row_slice(
        4,
        4,
        &[
            0.0, -b, 0.0, -c, //
            b, 0.0, 0.0, 0.0, //
            0.0, 0.0, -a, 0.0, //
            c, 0.0, 0.0, a,
        ],
    );
    let charpoly_a = charpoly(&matrix);
    let formula_a = vec![1.0, 0.0, -a * a + b * b + c * c, a * c * c, -a * a * b * b];
    let charpoly_b = vec![1.0, 0.0, sigma, mu, nu];
    for (x, y) in charpoly_a.iter().zip(formula_a.iter()) {
        if (x - y).abs() > 1e-9 {
            return Err(stage_err(
                "charpoly-match",
                format!("computed charpoly {charpoly_a:?} deviates from its closed form"),
            ));
        }
    }
    let charpoly_gap = charpoly_a
        .iter()
        .zip(charpoly_b.iter())
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max);
    if charpoly_gap > 1e-9 {
        return Err(stage_err(
            "charpoly-match",
            format!("p_A and p_B differ by {charpoly_gap:e}"),
        ));
    }
    if matrix.trace().abs() > 1e-12 {
        return Err(stage_err(
            "trace",
            format!("tr A = {:e}", matrix.trace()),
        ));
    }

    let group = AlmostAbelianGroup::new(matrix.clone())?;
    let nullity_basis = aa_nullity(&group)?;
    let x2 = DVector::from_fn(4, |r, _| if r == 1 { 1.0 } else { 0.0 });
    if nullity_basis.len() != 1 {
        return Err(stage_err(
            "nullity",
            format!("expected a line, got dimension {}", nullity_basis.len()),
        ));
    }
    let angles = linalg::principal_angles(&nullity_basis, &[x2.clone()])?;
    if angles[0] > 1e-7 {
        return Err(stage_err(
            "nullity",
            format!("nullity is not along X2 (angle {:e})", angles[0]),
        ));
    }
    // Splitting value along the nullity direction: -(∇_ξ X2)^h = -A_sk X2
    // must be a nonzero multiple of X1.
    let w = -(group.skew_part() * &x2);
    if (w[0].abs() - b).abs() > 1e-9 || w.iter().skip(1).any(|v| v.abs() > 1e-12) || b <= 0.0 {
        return Err(stage_err(
            "splitting",
            format!("splitting value {w:?} is not a nonzero multiple of X1"),
        ));
    }

    Ok(Example5Report {
        alpha,
        beta,
        gamma,
        sigma,
        mu,
        nu,
        a,
        b,
        c,
        matrix,
        charpoly_a,
        charpoly_b,
        nullity_index: 1,
        nullity_basis,
    })
}

/// The unimodular group with action `diag(I_{m/2}, −I_{m/2})`, its verified
/// (−1)-nullity and the lattice witness scaling.
#[derive(Debug, Clone)]
pub struct Nul1Group {
    pub group: AlmostAbelianGroup,
    pub scal: f64,
    /// Witness scaling λ = log((3 + √5)/2).
    pub lambda: f64,
    pub witness: IntegralityCheck,
    pub nullity: NullityResult,
}

fn poly_pow(base: &[i64], exp: usize) -> Vec<i64> {
    let mut acc = vec![1i64];
    for _ in 0..exp {
        let mut next = vec![0i64; acc.len() + base.len() - 1];
        for (i, &x) in acc.iter().enumerate() {
            for (j, &y) in base.iter().enumerate() {
                next[i + j] += x * y;
            }
        }
        acc = next;
    }
    acc
}

/// Builds `R ⋉ R^m` with `A = diag(I_{m/2}, −I_{m/2})` for even m, checks
/// that the (−1)-nullity has index 1 along ξ, and verifies the lattice
/// witness `exp(λA)` with λ = log((3+√5)/2), whose characteristic
/// polynomial is `(x² − 3x + 1)^{m/2}`.
pub fn nul1_group(m: usize) -> Result<Nul1Group> {
    if m < 2 || m % 2 != 0 {
        return Err(Error::InvalidInput(format!(
            "m must be a positive even integer, got {m}"
        )));
    }
    let a = DMatrix::from_fn(m, m, |i, j| {
        if i != j {
            0.0
        } else if i < m / 2 {
            1.0
        } else {
            -1.0
        }
    });
    let group = AlmostAbelianGroup::new(a.clone())?;
    let curv = aa_curvature(&group);
    let scal = curv.scal;

    let space = group.to_lie_metric();
    let full_curv = crate::lie_metric::curvature(&space)?;
    let nullity = nullity_index(&full_curv, space.metric(), -1.0, linalg::RTOL_DEFAULT)?;
    if nullity.index != 1 {
        return Err(stage_err(
            "nullity",
            format!("expected (-1)-nullity 1, found {}", nullity.index),
        ));
    }
    let xi = DVector::from_fn(m + 1, |r, _| if r == 0 { 1.0 } else { 0.0 });
    let angles = linalg::principal_angles(&nullity.basis, &[xi])?;
    if angles[0] > 1e-7 {
        return Err(stage_err(
            "nullity",
            format!("(-1)-nullity is not along xi (angle {:e})", angles[0]),
        ));
    }

    let lambda = ((3.0 + 5.0f64.sqrt()) / 2.0).ln();
    let witness = integrality_check(&a, lambda, IntegralityMode::Exponential, 1e-6)?;
    let expected = poly_pow(&[1, -3, 1], m / 2);
    if !witness.integral || witness.rounded != expected {
        return Err(stage_err(
            "lattice-witness",
            format!(
                "expected coefficients {expected:?}, got {:?} (integral: {})",
                witness.rounded, witness.integral
            ),
        ));
    }
    Ok(Nul1Group {
        group,
        scal,
        lambda,
        witness,
        nullity,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie_metric::{curvature, sectional_curvature};
    use rand::prelude::*;

    fn basis_vec(n: usize, i: usize) -> DVector<f64> {
        DVector::from_fn(n, |r, _| if r == i { 1.0 } else { 0.0 })
    }

    fn diag(entries: &[f64]) -> DMatrix<f64> {
        DMatrix::from_diagonal(&DVector::from_column_slice(entries))
    }

    #[test]
    fn boost_group_curvature() {
        // A = diag(1, -1): scal = -2, K(X1,X2) = 1, K(xi, X_i) = -1
        let group = AlmostAbelianGroup::new(diag(&[1.0, -1.0])).unwrap();
        let curv = aa_curvature(&group);
        assert!((curv.scal + 2.0).abs() < 1e-14);
        let g = DMatrix::identity(3, 3);
        let k12 = sectional_curvature(&curv, &g, &basis_vec(3, 1), &basis_vec(3, 2)).unwrap();
        assert!((k12 - 1.0).abs() < 1e-14);
        // oracle: K(X,Y) = -det of the S-Gram on the plane = -(1)(-1) = 1
        for i in 1..3 {
            let k = sectional_curvature(&curv, &g, &basis_vec(3, 0), &basis_vec(3, i)).unwrap();
            assert!((k + 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn skew_action_is_flat() {
        // every curvature block carries a factor of A_sy
        let a = DMatrix::from_row_slice(2, 2, &[0.0, -1.0, 1.0, 0.0]);
        let group = AlmostAbelianGroup::new(a).unwrap();
        let curv = aa_curvature(&group);
        assert_eq!(curv.scal, 0.0);
        let mut max = 0.0f64;
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    for l in 0..3 {
                        max = max.max(curv.riem[(i, j, k, l)].abs());
                    }
                }
            }
        }
        assert_eq!(max, 0.0);
    }

    #[test]
    fn four_block_diagonal_ricci() {
        let group = AlmostAbelianGroup::new(diag(&[1.0, 1.0, -1.0, -1.0])).unwrap();
        let curv = aa_curvature(&group);
        assert!((curv.ricci[(0, 0)] + 4.0).abs() < 1e-14);
        assert!((curv.scal + 4.0).abs() < 1e-14);
    }

    #[test]
    fn ricci_closed_forms_in_the_eigenbasis() {
        // with S diagonal: Ric(xi, X_i) = 0 and
        // Ric(X_i, X_j) = (lambda_i - lambda_j) <K X_i, X_j> off-diagonal
        let s = diag(&[0.7, -0.2, -0.5]);
        let k = DMatrix::from_row_slice(3, 3, &[0.0, 0.4, -0.1, -0.4, 0.0, 0.9, 0.1, -0.9, 0.0]);
        let group = AlmostAbelianGroup::new(&s + &k).unwrap();
        let curv = aa_curvature(&group);
        for i in 1..4 {
            assert!(curv.ricci[(0, i)].abs() < 1e-14);
            assert!(curv.ricci[(i, 0)].abs() < 1e-14);
        }
        for i in 1..4usize {
            for j in 1..4usize {
                if i == j {
                    continue;
                }
                let li = s[(i - 1, i - 1)];
                let lj = s[(j - 1, j - 1)];
                let pairing = (&k * basis_vec(3, i - 1)).dot(&basis_vec(3, j - 1));
                let expected = (li - lj) * pairing;
                assert!(
                    (curv.ricci[(i, j)] - expected).abs() < 1e-10,
                    "Ric({i},{j})"
                );
            }
        }
    }

    #[test]
    fn oracle_equivalence_with_the_koszul_pipeline() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for _ in 0..20 {
            let m = rng.random_range(2..=5);
            let a = DMatrix::from_fn(m, m, |_, _| rng.random_range(-1.0..1.0));
            let group = match AlmostAbelianGroup::new(a) {
                Ok(g) => g,
                Err(_) => continue,
            };
            let direct = aa_curvature(&group);
            let space = group.to_lie_metric();
            assert!(space.validate().passed);
            let generic = curvature(&space).unwrap();
            let n = m + 1;
            let mut max_diff = 0.0f64;
            for i in 0..n {
                for j in 0..n {
                    max_diff = max_diff.max((direct.ricci[(i, j)] - generic.ricci[(i, j)]).abs());
                    for k in 0..n {
                        max_diff = max_diff
                            .max((direct.gamma[(i, j, k)] - generic.gamma[(i, j, k)]).abs());
                        for l in 0..n {
                            max_diff = max_diff.max(
                                (direct.riem[(i, j, k, l)] - generic.riem[(i, j, k, l)]).abs(),
                            );
                        }
                    }
                }
            }
            max_diff = max_diff.max((direct.scal - generic.scal).abs());
            assert!(max_diff <= 1e-10, "max component difference {max_diff}");
        }
    }

    #[test]
    fn nullity_examples() {
        // rank-one symmetric action: kernel of S is everything but X1
        let group = AlmostAbelianGroup::new(diag(&[1.0, 0.0, 0.0, 0.0])).unwrap();
        assert_eq!(aa_nullity(&group).unwrap().len(), 3);

        let group = AlmostAbelianGroup::new(diag(&[1.0, 1.0, -1.0, -1.0])).unwrap();
        assert_eq!(aa_nullity(&group).unwrap().len(), 0);

        let skew = DMatrix::from_row_slice(2, 2, &[0.0, -1.0, 1.0, 0.0]);
        assert!(matches!(
            aa_nullity(&AlmostAbelianGroup::new(skew).unwrap()),
            Err(Error::FlatGroup)
        ));
    }

    #[test]
    fn nullity_agrees_with_the_stacked_solver() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for _ in 0..10 {
            let m = rng.random_range(2..=5);
            let a = DMatrix::from_fn(m, m, |_, _| rng.random_range(-1.0..1.0));
            let group = AlmostAbelianGroup::new(a).unwrap();
            let direct = match aa_nullity(&group) {
                Ok(basis) => basis,
                Err(Error::FlatGroup) => continue,
                Err(e) => panic!("{e}"),
            };
            let space = group.to_lie_metric();
            let curv = curvature(&space).unwrap();
            let solved =
                nullity_index(&curv, space.metric(), 0.0, linalg::RTOL_DEFAULT).unwrap();
            assert_eq!(solved.index, direct.len());
            if direct.is_empty() {
                continue;
            }
            let embedded: Vec<DVector<f64>> = direct
                .iter()
                .map(|v| {
                    let mut w = DVector::zeros(m + 1);
                    for i in 0..m {
                        w[i + 1] = v[i];
                    }
                    w
                })
                .collect();
            let angles = linalg::principal_angles(&embedded, &solved.basis).unwrap();
            assert!(angles.iter().all(|&x| x <= 1e-7), "{angles:?}");
        }
    }

    #[test]
    fn integrality_examples() {
        let lambda = ((3.0 + 5.0f64.sqrt()) / 2.0).ln();
        let check = integrality_check(
            &diag(&[1.0, -1.0]),
            lambda,
            IntegralityMode::Exponential,
            1e-6,
        )
        .unwrap();
        assert!(check.integral);
        assert_eq!(check.rounded, vec![1, -3, 1]);
        assert!((check.det - 1.0).abs() < 1e-9);

        let check = integrality_check(
            &diag(&[1.0, 1.0, -1.0, -1.0]),
            lambda,
            IntegralityMode::Exponential,
            1e-6,
        )
        .unwrap();
        assert!(check.integral);
        assert_eq!(check.rounded, vec![1, -6, 11, -6, 1]);

        // linear mode on a boost: charpoly of 2A is x^2 - 4
        let check =
            integrality_check(&diag(&[1.0, -1.0]), 2.0, IntegralityMode::Linear, 1e-6).unwrap();
        assert!(check.integral);
        assert_eq!(check.rounded, vec![1, 0, -4]);

        // nilpotent rejected in linear mode
        let nil = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 0.0, 0.0]);
        assert!(matches!(
            integrality_check(&nil, 1.0, IntegralityMode::Linear, 1e-6),
            Err(Error::Nilpotent(_))
        ));
        // zero scaling rejected
        assert!(integrality_check(&nil, 0.0, IntegralityMode::Exponential, 1e-6).is_err());
    }

    #[test]
    fn lambda_search_finds_the_golden_scaling() {
        let lambda = ((3.0 + 5.0f64.sqrt()) / 2.0).ln();
        let found = lattice_lambda_search(&diag(&[1.0, -1.0]), 5, 1e-6).unwrap();
        assert!(
            found
                .iter()
                .any(|c| (c.lambda - lambda).abs() < 1e-6 && c.trace_target == 3),
            "{found:?}"
        );
        let found = lattice_lambda_search(&diag(&[1.0, 1.0, -1.0, -1.0]), 7, 1e-6).unwrap();
        assert!(
            found
                .iter()
                .any(|c| (c.lambda - lambda).abs() < 1e-6 && c.trace_target == 6),
            "{found:?}"
        );
    }

    #[test]
    fn lambda_search_rejects_bad_inputs() {
        assert!(lattice_lambda_search(&diag(&[1.0, -0.5]), 3, 1e-6).is_err());
        let nil = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 0.0, 0.0]);
        assert!(matches!(
            lattice_lambda_search(&nil, 3, 1e-6),
            Err(Error::Nilpotent(_))
        ));
    }

    #[test]
    fn example5_reproduces_the_spectral_data() {
        // frozen from a 40-digit eigendecomposition of the integer matrix:
        // eigenvalues 0.15550145..., 3.47097938..., 1.18675958 ± 0.66658652 i
        let report = construct_example5().unwrap();
        assert!((report.alpha - 0.308331705259228).abs() < 1e-9);
        assert!((report.beta - 0.511771071975814).abs() < 1e-9);
        assert!((report.gamma - 1.861100206681986).abs() < 1e-9);
        assert_eq!(report.nullity_index, 1);
        assert!(report.matrix.trace().abs() <= 1e-12);
        assert!(report.a > 0.0 && report.b > 0.0 && report.c > 0.0);
        let gap = report
            .charpoly_a
            .iter()
            .zip(report.charpoly_b.iter())
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max);
        assert!(gap <= 1e-9);
    }

    #[test]
    fn example5_is_deterministic() {
        let r1 = construct_example5().unwrap();
        let r2 = construct_example5().unwrap();
        assert_eq!(r1.alpha.to_bits(), r2.alpha.to_bits());
        assert_eq!(r1.a.to_bits(), r2.a.to_bits());
        assert_eq!(r1.matrix, r2.matrix);
        assert_eq!(r1.charpoly_a, r2.charpoly_a);
    }

    #[test]
    fn nul1_group_witness_and_nullity() {
        let out = nul1_group(4).unwrap();
        assert_eq!(out.witness.rounded, vec![1, -6, 11, -6, 1]);
        assert_eq!(out.nullity.index, 1);
        assert!((out.scal + 4.0).abs() < 1e-12);

        let out = nul1_group(2).unwrap();
        assert!((out.scal + 2.0).abs() < 1e-12);

        assert!(nul1_group(3).is_err());
        assert!(nul1_group(0).is_err());
    }

    #[test]
    fn json_input_schema() {
        let group =
            AlmostAbelianGroup::from_json(r#"{"m":2,"A":[[1.0,0.0],[0.0,-1.0]]}"#).unwrap();
        assert_eq!(group.ideal_dim(), 2);
        assert!(group.is_unimodular(1e-12));
    }
}
