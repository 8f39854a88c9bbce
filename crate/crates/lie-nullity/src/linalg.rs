//! Small dense linear-algebra helpers shared across the crate: SVD-based
//! kernel/rank decisions, characteristic polynomials, eigenvalue utilities,
//! and scalar root finding.

use nalgebra::{Complex, ComplexField, DMatrix, DVector};

use crate::error::{Error, Result};

/// Default relative threshold for rank/kernel decisions: singular values
/// below `RTOL_DEFAULT * sigma_max` count as zero.
pub const RTOL_DEFAULT: f64 = 1e-9;

const SVD_MAX_ITER: usize = 1000;

/// Kernel of a real matrix detected by singular-value thresholding.
#[derive(Debug, Clone)]
pub struct KernelResult {
    /// Euclidean-orthonormal basis of the kernel.
    pub basis: Vec<DVector<f64>>,
    pub sigma_max: f64,
    pub sigma_min: f64,
    /// Largest kept singular value divided by `sigma_max` (0 when the kernel
    /// is empty or the operator vanishes).
    pub kept_ratio: f64,
}

fn svd_values_and_vt(m: &DMatrix<f64>) -> Result<(Vec<f64>, DMatrix<f64>)> {
    let svd = m
        .clone()
        .try_svd(false, true, f64::EPSILON, SVD_MAX_ITER)
        .ok_or_else(|| Error::NonConvergence("SVD did not converge".into()))?;
    let sigma: Vec<f64> = svd.singular_values.iter().copied().collect();
    let v_t = svd.v_t.expect("right singular vectors requested");
    Ok((sigma, v_t))
}

/// Kernel of `m` with relative tolerance `rtol`.
///
/// A matrix with no rows (or identically zero) has the whole space as
/// kernel. Wide matrices are padded with zero rows so the full right
/// singular space is available.
pub fn kernel(m: &DMatrix<f64>, rtol: f64) -> Result<KernelResult> {
    let n = m.ncols();
    if m.nrows() == 0 || m.amax() == 0.0 {
        let basis = (0..n)
            .map(|i| DVector::from_fn(n, |r, _| if r == i { 1.0 } else { 0.0 }))
            .collect();
        return Ok(KernelResult {
            basis,
            sigma_max: 0.0,
            sigma_min: 0.0,
            kept_ratio: 0.0,
        });
    }
    let work = if m.nrows() < n {
        let mut p = DMatrix::zeros(n, n);
        p.view_mut((0, 0), (m.nrows(), n)).copy_from(m);
        p
    } else {
        m.clone()
    };
    let (sigma, v_t) = svd_values_and_vt(&work)?;
    let sigma_max = sigma.iter().cloned().fold(0.0, f64::max);
    let sigma_min = sigma.iter().cloned().fold(f64::INFINITY, f64::min);
    let cut = rtol * sigma_max;
    let mut basis = Vec::new();
    let mut kept_max = 0.0f64;
    for (i, &s) in sigma.iter().enumerate() {
        if s <= cut {
            basis.push(v_t.row(i).transpose());
            kept_max = kept_max.max(s);
        }
    }
    let kept_ratio = if basis.is_empty() || sigma_max == 0.0 {
        0.0
    } else {
        kept_max / sigma_max
    };
    Ok(KernelResult {
        basis,
        sigma_max,
        sigma_min,
        kept_ratio,
    })
}

/// Numerical rank with relative tolerance `rtol`.
pub fn rank(m: &DMatrix<f64>, rtol: f64) -> Result<usize> {
    if m.nrows() == 0 || m.ncols() == 0 || m.amax() == 0.0 {
        return Ok(0);
    }
    let sigma = m
        .clone()
        .try_svd(false, false, f64::EPSILON, SVD_MAX_ITER)
        .ok_or_else(|| Error::NonConvergence("SVD did not converge".into()))?
        .singular_values;
    let sigma_max = sigma.iter().cloned().fold(0.0, f64::max);
    Ok(sigma.iter().filter(|&&s| s > rtol * sigma_max).count())
}

/// Smallest and largest singular values of `m`.
pub fn sigma_extremes(m: &DMatrix<f64>) -> Result<(f64, f64)> {
    let sigma = m
        .clone()
        .try_svd(false, false, f64::EPSILON, SVD_MAX_ITER)
        .ok_or_else(|| Error::NonConvergence("SVD did not converge".into()))?
        .singular_values;
    let max = sigma.iter().cloned().fold(0.0, f64::max);
    let min = sigma.iter().cloned().fold(f64::INFINITY, f64::min);
    Ok((min, max))
}

/// Orthonormal basis of the span of `vectors` (columns), via SVD.
pub fn orthonormal_span(vectors: &[DVector<f64>], rtol: f64) -> Result<Vec<DVector<f64>>> {
    if vectors.is_empty() {
        return Ok(Vec::new());
    }
    let n = vectors[0].len();
    let m = DMatrix::from_fn(n, vectors.len(), |r, c| vectors[c][r]);
    if m.amax() == 0.0 {
        return Ok(Vec::new());
    }
    let svd = m
        .clone()
        .try_svd(true, false, f64::EPSILON, SVD_MAX_ITER)
        .ok_or_else(|| Error::NonConvergence("SVD did not converge".into()))?;
    let u = svd.u.expect("left singular vectors requested");
    let sigma_max = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    let mut out = Vec::new();
    for (i, &s) in svd.singular_values.iter().enumerate() {
        if s > rtol * sigma_max {
            out.push(u.column(i).into_owned());
        }
    }
    Ok(out)
}

/// Principal angles (radians, ascending) between the spans of `a` and `b`.
pub fn principal_angles(a: &[DVector<f64>], b: &[DVector<f64>]) -> Result<Vec<f64>> {
    let qa = orthonormal_span(a, RTOL_DEFAULT)?;
    let qb = orthonormal_span(b, RTOL_DEFAULT)?;
    if qa.is_empty() || qb.is_empty() {
        return Ok(Vec::new());
    }
    let m = DMatrix::from_fn(qa.len(), qb.len(), |i, j| qa[i].dot(&qb[j]));
    let mut sigma: Vec<f64> = m
        .try_svd(false, false, f64::EPSILON, SVD_MAX_ITER)
        .ok_or_else(|| Error::NonConvergence("SVD did not converge".into()))?
        .singular_values
        .iter()
        .copied()
        .collect();
    sigma.sort_by(|x, y| y.partial_cmp(x).unwrap());
    Ok(sigma.iter().map(|s| s.min(1.0).acos()).collect())
}

/// Gram-Schmidt with respect to the inner product `<u, v> = u^T g v`.
/// Vectors that fall below the drop tolerance are discarded.
pub fn gram_schmidt_metric(vectors: &[DVector<f64>], g: &DMatrix<f64>) -> Vec<DVector<f64>> {
    let mut out: Vec<DVector<f64>> = Vec::new();
    for v in vectors {
        let mut w = v.clone();
        for q in &out {
            let proj = q.dot(&(g * &w));
            w -= q * proj;
        }
        let norm2 = w.dot(&(g * &w));
        if norm2 > 1e-24 {
            out.push(w / norm2.sqrt());
        }
    }
    out
}

/// Monic characteristic polynomial coefficients of a square matrix, highest
/// power first: `det(xI - M) = x^m + c_1 x^(m-1) + ... + c_m`.
///
/// For integer matrices the Faddeev-LeVerrier recursion runs in `i128`
/// arithmetic, which is exact (every division is by a divisor of the trace).
/// Otherwise, or on overflow, the same recursion runs in `f64`.
pub fn charpoly(m: &DMatrix<f64>) -> Vec<f64> {
    assert_eq!(m.nrows(), m.ncols(), "charpoly expects a square matrix");
    if let Some(coeffs) = charpoly_integer(m) {
        return coeffs;
    }
    charpoly_float(m)
}

fn charpoly_integer(m: &DMatrix<f64>) -> Option<Vec<f64>> {
    let n = m.nrows();
    let mut a = vec![0i128; n * n];
    for i in 0..n {
        for j in 0..n {
            let x = m[(i, j)];
            if x.fract() != 0.0 || x.abs() > 1e15 {
                return None;
            }
            a[i * n + j] = x as i128;
        }
    }
    let mul = |x: &[i128], y: &[i128]| -> Option<Vec<i128>> {
        let mut z = vec![0i128; n * n];
        for i in 0..n {
            for k in 0..n {
                let xik = x[i * n + k];
                if xik == 0 {
                    continue;
                }
                for j in 0..n {
                    z[i * n + j] = z[i * n + j].checked_add(xik.checked_mul(y[k * n + j])?)?;
                }
            }
        }
        Some(z)
    };
    let trace = |x: &[i128]| -> Option<i128> {
        let mut t = 0i128;
        for i in 0..n {
            t = t.checked_add(x[i * n + i])?;
        }
        Some(t)
    };
    let mut coeffs = vec![1i128];
    let mut mk = a.clone();
    for k in 1..=n {
        let tk = trace(&mk)?;
        debug_assert_eq!(tk % (k as i128), 0);
        let ck = -tk / (k as i128);
        coeffs.push(ck);
        if k < n {
            for i in 0..n {
                mk[i * n + i] = mk[i * n + i].checked_add(ck)?;
            }
            mk = mul(&a, &mk)?;
        }
    }
    Some(coeffs.into_iter().map(|c| c as f64).collect())
}

fn charpoly_float(m: &DMatrix<f64>) -> Vec<f64> {
    let n = m.nrows();
    let mut coeffs = vec![1.0];
    let mut mk = m.clone();
    for k in 1..=n {
        let ck = -mk.trace() / (k as f64);
        coeffs.push(ck);
        if k < n {
            for i in 0..n {
                mk[(i, i)] += ck;
            }
            mk = m * mk;
        }
    }
    coeffs
}

/// Elementary symmetric functions `sigma_0..sigma_m` of the eigenvalues,
/// read off the characteristic polynomial.
pub fn elementary_symmetric(m: &DMatrix<f64>) -> Vec<f64> {
    charpoly(m)
        .into_iter()
        .enumerate()
        .map(|(j, c)| if j % 2 == 0 { c } else { -c })
        .collect()
}

/// Eigenvalues of a real square matrix, sorted by (re, im) for determinism.
pub fn eigenvalues(m: &DMatrix<f64>) -> Vec<Complex<f64>> {
    let mut ev: Vec<Complex<f64>> = m.complex_eigenvalues().iter().copied().collect();
    ev.sort_by(|a, b| {
        a.re.partial_cmp(&b.re)
            .unwrap()
            .then(a.im.partial_cmp(&b.im).unwrap())
    });
    ev
}

/// Real eigenvalues of `m`: entries whose imaginary part is negligible
/// relative to their magnitude.
pub fn real_eigenvalues(m: &DMatrix<f64>) -> Vec<f64> {
    eigenvalues(m)
        .into_iter()
        .filter(|z| z.im.abs() <= 1e-9 * z.norm().max(1.0))
        .map(|z| z.re)
        .collect()
}

/// Unit eigenvector for `lambda` as the smallest right singular vector of
/// `M - lambda I`, with the attained residual `||Mv - lambda v||`.
pub fn eigenvector_for(m: &DMatrix<f64>, lambda: Complex<f64>) -> Result<(DVector<Complex<f64>>, f64)> {
    let n = m.nrows();
    let mc = DMatrix::from_fn(n, n, |i, j| {
        let d = if i == j { lambda } else { Complex::new(0.0, 0.0) };
        Complex::new(m[(i, j)], 0.0) - d
    });
    let svd = mc
        .try_svd(false, true, f64::EPSILON, SVD_MAX_ITER)
        .ok_or_else(|| Error::NonConvergence("complex SVD did not converge".into()))?;
    let v_t = svd.v_t.expect("right singular vectors requested");
    let mut best = 0usize;
    for (i, s) in svd.singular_values.iter().enumerate() {
        if *s < svd.singular_values[best] {
            best = i;
        }
    }
    let v: DVector<Complex<f64>> = v_t.row(best).transpose().map(|z| z.conjugate());
    let mz = DMatrix::from_fn(n, n, |i, j| Complex::new(m[(i, j)], 0.0));
    let residual = (&mz * &v - &v * lambda).norm();
    Ok((v, residual))
}

/// Golden-section minimization of `f` on `[a, b]` down to interval `width`.
pub fn golden_min<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, width: f64) -> f64 {
    let inv_phi = (5.0f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while (b - a).abs() > width {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}

/// Bisection for a sign change of `f` on `[a, b]`; `f(a)` and `f(b)` must
/// have opposite signs.
pub fn bisect<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64) -> f64 {
    let mut fa = f(a);
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fa < 0.0) == (fm < 0.0) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
        if (b - a).abs() <= f64::EPSILON * (a.abs() + b.abs()).max(1.0) {
            break;
        }
    }
    0.5 * (a + b)
}
