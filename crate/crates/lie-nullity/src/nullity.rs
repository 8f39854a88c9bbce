//! Kappa-nullity as the kernel of a stacked linear operator.
//!
//! A tangent vector `z` lies in the kappa-nullity iff
//! `R(x,y)z + κ(<x,z> y − <y,z> x) = 0` for all `x`, `y`. On a frame it is
//! enough to test the pairs `(e_i, e_j)` with `i < j`, which stacks into one
//! rectangular operator `L_κ = A + κB` acting on `z`. Kernel dimensions are
//! decided by singular values below `tol * sigma_max`; when the whole
//! operator vanishes the kernel is everything.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::lie_metric::CurvatureData;
use crate::linalg;

/// Kernel of the nullity operator at one value of kappa.
#[derive(Debug, Clone)]
pub struct NullityResult {
    pub kappa: f64,
    /// Index of kappa-nullity: dimension of the kernel.
    pub index: usize,
    /// Orthonormal basis of the nullity (metric inner product).
    pub basis: Vec<DVector<f64>>,
    /// Largest kept singular-value ratio (0 when the kernel is clean).
    pub residual: f64,
}

/// Stacked pencil `L_kappa = A + kappa * B` over all frame pairs `i < j`.
struct NullityPencil {
    a: DMatrix<f64>,
    b: DMatrix<f64>,
}

impl NullityPencil {
    fn new(curv: &CurvatureData, metric: &DMatrix<f64>) -> Result<Self> {
        let n = curv.dim;
        let ginv = metric
            .clone()
            .try_inverse()
            .ok_or(Error::SingularMetric { min_eig: 0.0 })?;
        let pairs = n * (n - 1) / 2;
        let mut a = DMatrix::zeros(pairs * n, n);
        let mut b = DMatrix::zeros(pairs * n, n);
        let mut row_block = 0;
        for i in 0..n {
            for j in (i + 1)..n {
                for k in 0..n {
                    for m in 0..n {
                        // raised curvature R^m_{ijk}
                        let mut r = 0.0;
                        for l in 0..n {
                            r += curv.riem[(i, j, k, l)] * ginv[(l, m)];
                        }
                        a[(row_block * n + m, k)] = r;
                    }
                    // kappa * (<e_i, z> e_j - <e_j, z> e_i)
                    b[(row_block * n + j, k)] += metric[(i, k)];
                    b[(row_block * n + i, k)] -= metric[(j, k)];
                }
                row_block += 1;
            }
        }
        Ok(NullityPencil { a, b })
    }

    fn at(&self, kappa: f64) -> DMatrix<f64> {
        &self.a + &self.b * kappa
    }

    /// Magnitude of the assembled operator data at this kappa. The kernel
    /// cut needs this floor: on a space form probed at its own curvature
    /// the whole pencil collapses to rounding noise, and a purely relative
    /// threshold would miss the full kernel.
    fn data_scale(&self, kappa: f64) -> f64 {
        self.a.amax().max(kappa.abs() * self.b.amax())
    }
}

/// Index and basis of the kappa-nullity read from the curvature tensor.
///
/// A vanishing operator (flat space probed at the right kappa) honestly
/// reports the whole space as kernel.
pub fn nullity_index(
    curv: &CurvatureData,
    metric: &DMatrix<f64>,
    kappa: f64,
    tol: f64,
) -> Result<NullityResult> {
    let pencil = NullityPencil::new(curv, metric)?;
    Ok(nullity_at(&pencil, metric, kappa, tol)?.0)
}

/// Kernel of the pencil at one kappa, plus the smallest singular value of
/// the operator (used by the scan).
fn nullity_at(
    pencil: &NullityPencil,
    metric: &DMatrix<f64>,
    kappa: f64,
    tol: f64,
) -> Result<(NullityResult, f64)> {
    let op = pencil.at(kappa);
    let scale = pencil.data_scale(kappa);
    let kernel = linalg::kernel(&op, tol)?;
    let (raw_basis, residual) = if kernel.sigma_max <= tol * scale {
        let n = op.ncols();
        let full = (0..n)
            .map(|i| DVector::from_fn(n, |r, _| if r == i { 1.0 } else { 0.0 }))
            .collect();
        let residual = if scale > 0.0 {
            kernel.sigma_max / scale
        } else {
            0.0
        };
        (full, residual)
    } else {
        (kernel.basis, kernel.kept_ratio)
    };
    let basis = linalg::gram_schmidt_metric(&raw_basis, metric);
    let result = NullityResult {
        kappa,
        index: basis.len(),
        basis,
        residual,
    };
    Ok((result, kernel.sigma_min))
}

/// One grid point of a kappa scan.
#[derive(Debug, Clone)]
pub struct KappaSample {
    pub kappa: f64,
    pub sigma_min: f64,
    pub index: usize,
}

/// A refined kappa value with positive nullity index.
#[derive(Debug, Clone)]
pub struct KappaDetection {
    pub kappa: f64,
    pub index: usize,
}

#[derive(Debug, Clone)]
pub struct KappaScanResult {
    pub samples: Vec<KappaSample>,
    pub detected: Vec<KappaDetection>,
}

/// Scans `sigma_min(L_kappa)` over the grid, refines every local minimum by
/// golden-section search down to width 1e-10 and re-tests the refined kappa
/// with [`nullity_index`]. On a validated homogeneous input at most one
/// kappa can be detected.
pub fn kappa_scan(
    curv: &CurvatureData,
    metric: &DMatrix<f64>,
    grid: &[f64],
    tol: f64,
) -> Result<KappaScanResult> {
    if grid.is_empty() {
        return Err(Error::InvalidInput("kappa grid must be nonempty".into()));
    }
    let pencil = NullityPencil::new(curv, metric)?;
    let mut samples = Vec::with_capacity(grid.len());
    for &kappa in grid {
        let (result, sigma_min) = nullity_at(&pencil, metric, kappa, tol)?;
        samples.push(KappaSample {
            kappa,
            sigma_min,
            index: result.index,
        });
    }
    let sigma_of = |kappa: f64| -> f64 {
        linalg::sigma_extremes(&pencil.at(kappa))
            .map(|(lo, _)| lo)
            .unwrap_or(f64::INFINITY)
    };
    let mut detected: Vec<KappaDetection> = Vec::new();
    let last = samples.len() - 1;
    for i in 0..samples.len() {
        let here = samples[i].sigma_min;
        let left_ok = i == 0 || samples[i - 1].sigma_min >= here;
        let right_ok = i == last || samples[i + 1].sigma_min >= here;
        if !(left_ok && right_ok) {
            continue;
        }
        let lo = if i == 0 { grid[0] } else { grid[i - 1] };
        let hi = if i == last { grid[last] } else { grid[i + 1] };
        let refined = if hi > lo {
            linalg::golden_min(sigma_of, lo, hi, 1e-10)
        } else {
            grid[i]
        };
        let (result, _) = nullity_at(&pencil, metric, refined, tol)?;
        if result.index == 0 {
            continue;
        }
        if detected.iter().any(|d| (d.kappa - refined).abs() <= 1e-6) {
            continue;
        }
        detected.push(KappaDetection {
            kappa: refined,
            index: result.index,
        });
    }
    detected.sort_by(|a, b| a.kappa.partial_cmp(&b.kappa).unwrap());
    Ok(KappaScanResult { samples, detected })
}

/// Radon-Hurwitz number rho(m): with `m = (odd) * 2^(c+4d)`, `0 <= c <= 3`,
/// this is `2^c + 8d`.
pub fn radon_hurwitz(m: u64) -> Result<u64> {
    if m == 0 {
        return Err(Error::InvalidInput("radon_hurwitz requires m >= 1".into()));
    }
    let v = m.trailing_zeros() as u64;
    let c = v % 4;
    let d = v / 4;
    Ok((1u64 << c) + 8 * d)
}

/// Whether a pair (n, d) clears the Radon-Hurwitz obstruction for positive
/// kappa: true iff `rho(n - d) >= d + 1`.
pub fn rh_obstruction_check(n: u64, d: u64) -> Result<bool> {
    if d == 0 || d >= n {
        return Err(Error::InvalidInput(format!(
            "rh_obstruction_check requires 1 <= d < n, got (n, d) = ({n}, {d})"
        )));
    }
    Ok(radon_hurwitz(n - d)? >= d + 1)
}
