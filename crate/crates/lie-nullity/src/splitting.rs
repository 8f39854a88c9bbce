//! Closed-form evolution of the splitting tensor along nullity geodesics.
//!
//! Along a unit-speed geodesic tangent to the nullity, the splitting tensor
//! restricted to the conullity satisfies the matrix Riccati equation
//! `C' = C² + κI`, solved in closed form by `C(t) = -J0'(t) J0(t)^{-1}` with
//!
//! ```text
//! J0(t) = cos(√κ t) I − sin(√κ t)/√κ · C0        (κ > 0)
//!       = cosh(√−κ t) I − sinh(√−κ t)/√−κ · C0   (κ < 0)
//!       = I − t C0                               (κ = 0)
//! ```
//!
//! Since J0 is affine in C0, everything is evaluated through matrix
//! products; no general matrix-function machinery is involved. Singularities
//! of the flow are the zeros of `det J0`, which come exactly from the real
//! eigenvalues of C0.

use std::io::Write;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::linalg;

/// Relative condition floor below which J0(t) counts as singular.
const J0_SINGULAR_RTOL: f64 = 1e-12;

/// Disk radius around ±1 used when counting eigenvalue multiplicities.
const UNIT_EIGEN_TOL: f64 = 1e-8;

/// Initial data of a splitting-tensor flow: kappa and the restriction of
/// the splitting tensor to the conullity at t = 0.
#[derive(Debug, Clone)]
pub struct SplittingState {
    kappa: f64,
    c0: DMatrix<f64>,
}

impl SplittingState {
    pub fn new(kappa: f64, c0: DMatrix<f64>) -> Result<Self> {
        if c0.nrows() != c0.ncols() || c0.nrows() == 0 {
            return Err(Error::InvalidInput(format!(
                "C0 must be square and nonempty, got {}x{}",
                c0.nrows(),
                c0.ncols()
            )));
        }
        if !kappa.is_finite() || c0.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidInput("kappa and C0 must be finite".into()));
        }
        Ok(SplittingState { kappa, c0 })
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    /// Conullity dimension k (size of C0).
    pub fn conullity(&self) -> usize {
        self.c0.nrows()
    }

    pub fn c0(&self) -> &DMatrix<f64> {
        &self.c0
    }

    /// Scalar coefficients of `J0 = a I + b C0` and `J0' = da I + db C0`.
    fn coefficients(&self, t: f64) -> (f64, f64, f64, f64) {
        if self.kappa > 0.0 {
            let s = self.kappa.sqrt();
            let (sin, cos) = (s * t).sin_cos();
            (cos, -sin / s, -s * sin, -cos)
        } else if self.kappa < 0.0 {
            let s = (-self.kappa).sqrt();
            let (sinh, cosh) = ((s * t).sinh(), (s * t).cosh());
            (cosh, -sinh / s, s * sinh, -cosh)
        } else {
            (1.0, -t, 0.0, -1.0)
        }
    }

    /// The transition matrix J0(t); always the identity at t = 0.
    pub fn j0_matrix(&self, t: f64) -> DMatrix<f64> {
        let (a, b, _, _) = self.coefficients(t);
        let k = self.conullity();
        DMatrix::identity(k, k) * a + &self.c0 * b
    }

    /// Time derivative J0'(t).
    pub fn j0_prime(&self, t: f64) -> DMatrix<f64> {
        let (_, _, da, db) = self.coefficients(t);
        let k = self.conullity();
        DMatrix::identity(k, k) * da + &self.c0 * db
    }

    /// The splitting tensor `C(t) = -J0'(t) J0(t)^{-1}`; `C(0) = C0`.
    /// Fails with the offending time when J0(t) is singular.
    pub fn splitting_at(&self, t: f64) -> Result<DMatrix<f64>> {
        let j0 = self.j0_matrix(t);
        let (sig_min, sig_max) = linalg::sigma_extremes(&j0)?;
        if sig_max == 0.0 || sig_min <= J0_SINGULAR_RTOL * sig_max {
            return Err(Error::SingularJacobi { t });
        }
        // Solve X J0 = J0' columnwise through the transpose.
        let xt = j0
            .transpose()
            .lu()
            .solve(&self.j0_prime(t).transpose())
            .ok_or(Error::SingularJacobi { t })?;
        Ok(-xt.transpose())
    }

    /// Central-difference residual of the Riccati equation at `t`:
    /// `max | (C(t+h) − C(t−h)) / 2h − (C(t)² + κI) |`, an O(h²) quantity
    /// wherever the flow is regular on the stencil.
    pub fn riccati_residual(&self, t: f64, h: f64) -> Result<f64> {
        let c_minus = self.splitting_at(t - h)?;
        let c_plus = self.splitting_at(t + h)?;
        let c = self.splitting_at(t)?;
        let k = self.conullity();
        let fd = (c_plus - c_minus) / (2.0 * h);
        let rhs = &c * &c + DMatrix::identity(k, k) * self.kappa;
        Ok((fd - rhs).amax())
    }

    /// All zeros of `det J0` in the open interval `(t_lo, t_hi)`, from the
    /// real eigenvalues of C0 in closed form, sorted ascending.
    pub fn singular_times(&self, t_lo: f64, t_hi: f64) -> Vec<f64> {
        let mut out = Vec::new();
        let reals = linalg::real_eigenvalues(&self.c0);
        if self.kappa > 0.0 {
            let s = self.kappa.sqrt();
            let period = std::f64::consts::PI / s;
            for lambda in reals {
                // sqrt(kappa) cot(sqrt(kappa) t) = lambda, repeated mod pi/s
                let t0 = (std::f64::consts::FRAC_PI_2 - (lambda / s).atan()) / s;
                let m_lo = ((t_lo - t0) / period).floor() as i64;
                let m_hi = ((t_hi - t0) / period).ceil() as i64;
                for m in m_lo..=m_hi {
                    let t = t0 + period * m as f64;
                    if t > t_lo && t < t_hi {
                        out.push(t);
                    }
                }
            }
        } else if self.kappa < 0.0 {
            let s = (-self.kappa).sqrt();
            for lambda in reals {
                // sqrt(-kappa) coth(sqrt(-kappa) t) = lambda needs |lambda| > s
                if lambda.abs() > s {
                    let t = (s / lambda).atanh() / s;
                    if t > t_lo && t < t_hi {
                        out.push(t);
                    }
                }
            }
        } else {
            for lambda in reals {
                if lambda != 0.0 {
                    let t = 1.0 / lambda;
                    if t > t_lo && t < t_hi {
                        out.push(t);
                    }
                }
            }
        }
        out.sort_by(|a, b| a.partial_cmp(b).unwrap());
        out.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
        out
    }

    /// Smallest `t > 0` with `det J0(t) = 0`, if any. The closed-form
    /// answer is cross-checked by a determinant sweep on a guard grid
    /// before reporting that no singularity exists.
    pub fn first_singularity(&self) -> Option<f64> {
        let horizon = self.guard_horizon();
        if let Some(&t) = self.singular_times(0.0, horizon).first() {
            return Some(t);
        }
        // Guard sweep for sign changes of det J0. For kappa < 0 the raw
        // determinant cancels catastrophically at large t (cosh - sinh);
        // sweep the normalized polynomial det(I - (xi/s) C0), xi = tanh(st),
        // which has the same zeros on t > 0.
        let k = self.conullity();
        let (to_det, to_time, lo, hi): (Box<dyn Fn(f64) -> f64>, Box<dyn Fn(f64) -> f64>, f64, f64) =
            if self.kappa < 0.0 {
                let s = (-self.kappa).sqrt();
                let c0 = self.c0.clone();
                (
                    Box::new(move |xi: f64| {
                        (DMatrix::identity(k, k) - &c0 * (xi / s)).determinant()
                    }),
                    Box::new(move |xi: f64| xi.atanh() / s),
                    0.0,
                    (s * horizon).tanh(),
                )
            } else {
                let this = self.clone();
                (
                    Box::new(move |t: f64| this.j0_matrix(t).determinant()),
                    Box::new(|t: f64| t),
                    0.0,
                    horizon,
                )
            };
        let steps = 2000;
        let mut prev_x = lo + (hi - lo) / steps as f64;
        let mut prev = to_det(prev_x);
        for i in 2..=steps {
            let x = lo + (hi - lo) * i as f64 / steps as f64;
            let det = to_det(x);
            if prev != 0.0 && prev.signum() != det.signum() {
                return Some(to_time(linalg::bisect(&*to_det, prev_x, x)));
            }
            prev = det;
            prev_x = x;
        }
        None
    }

    fn guard_horizon(&self) -> f64 {
        if self.kappa > 0.0 {
            // singularities from real eigenvalues repeat with period pi/s
            1.5 * std::f64::consts::PI / self.kappa.sqrt()
        } else {
            let scale = self.c0.amax().max((-self.kappa).sqrt()).max(0.1);
            20.0 / scale
        }
    }
}

/// Eigenvalue bookkeeping for the trace of the κ = −1 flow: multiplicities
/// of ±1, the limits of `tr C(t)` at t → ±∞, and the elementary symmetric
/// functions entering the rational form `tr C(t) = −P(tanh t)/Q(tanh t)`.
#[derive(Debug, Clone)]
pub struct TraceLimitReport {
    pub k_plus: usize,
    pub k_minus: usize,
    /// Limit of tr C(t) as t → +∞: −(m − 2 k_plus).
    pub limit_plus: f64,
    /// Limit of tr C(t) as t → −∞: m − 2 k_minus.
    pub limit_minus: f64,
    /// sigma_0..sigma_m of the eigenvalues of C0.
    pub sigma: Vec<f64>,
    /// Max deviation of tr C(t) from −P(tanh t)/Q(tanh t) over t in [−5, 5].
    pub trace_identity_residual: f64,
}

fn horner(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

/// `Q(xi) = sum_j (−1)^j sigma_j xi^j = det(I − xi C0)`.
pub fn q_polynomial(sigma: &[f64], xi: f64) -> f64 {
    let coeffs: Vec<f64> = sigma
        .iter()
        .enumerate()
        .map(|(j, s)| if j % 2 == 0 { *s } else { -s })
        .collect();
    horner(&coeffs, xi)
}

/// `P(xi) = sum_j (−1)^j [(m−j) xi^{j+1} + j xi^{j−1}] sigma_j`, assembled
/// per power of xi before evaluating so that cancellations between terms
/// happen at coefficient level (P and Q share roots at xi = ±1 and the
/// quotient is evaluated there).
pub fn p_polynomial(sigma: &[f64], xi: f64) -> f64 {
    let m = sigma.len() - 1;
    let mut coeffs = vec![0.0f64; m + 2];
    for (j, s) in sigma.iter().enumerate() {
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        coeffs[j + 1] += sign * s * (m - j) as f64;
        if j >= 1 {
            coeffs[j - 1] += sign * s * j as f64;
        }
    }
    horner(&coeffs, xi)
}

/// Multiplicities of ±1 among the eigenvalues of C0 and the resulting trace
/// limits of the κ = −1 flow. Errors when a real eigenvalue leaves the
/// completeness range `|λ| ≤ 1` (the flow then hits a singularity and the
/// limits do not exist) or when an eigenvalue sits ambiguously near ±1.
pub fn trace_limits(c0: &DMatrix<f64>) -> Result<TraceLimitReport> {
    if c0.nrows() != c0.ncols() || c0.nrows() == 0 {
        return Err(Error::InvalidInput("C0 must be square and nonempty".into()));
    }
    let m = c0.nrows();
    let eigen = linalg::eigenvalues(c0);
    let mut k_plus = 0usize;
    let mut k_minus = 0usize;
    for z in &eigen {
        for target in [1.0f64, -1.0] {
            let dist = ((z.re - target).powi(2) + z.im.powi(2)).sqrt();
            if dist <= UNIT_EIGEN_TOL {
                if target > 0.0 {
                    k_plus += 1;
                } else {
                    k_minus += 1;
                }
            } else if (z.re - target).abs() <= UNIT_EIGEN_TOL && z.im.abs() > UNIT_EIGEN_TOL {
                return Err(Error::AmbiguousEigenvalue {
                    re: z.re,
                    im: z.im,
                    target,
                });
            }
        }
    }
    // Completeness: a real eigenvalue beyond ±1 puts a singularity at
    // finite time; report it instead of a limit.
    for z in &eigen {
        if z.im.abs() <= 1e-9 * z.norm().max(1.0) && z.re.abs() > 1.0 + UNIT_EIGEN_TOL {
            let t = (1.0 / z.re).atanh();
            return Err(Error::SingularFlow { t });
        }
    }
    let sigma = linalg::elementary_symmetric(c0);
    let state = SplittingState::new(-1.0, c0.clone())?;
    let mut residual = 0.0f64;
    let samples = 101;
    for i in 0..samples {
        let t = -5.0 + 10.0 * i as f64 / (samples - 1) as f64;
        let xi = t.tanh();
        let rational = -p_polynomial(&sigma, xi) / q_polynomial(&sigma, xi);
        let direct = state.splitting_at(t)?.trace();
        residual = residual.max((rational - direct).abs());
    }
    Ok(TraceLimitReport {
        k_plus,
        k_minus,
        limit_plus: -((m as f64) - 2.0 * k_plus as f64),
        limit_minus: (m as f64) - 2.0 * k_minus as f64,
        sigma,
        trace_identity_residual: residual,
    })
}

/// Conullity-2 curvature evolution for κ ≤ 0:
/// `K_D(t) = κ + (K_D(0) − κ) / |det J0(t)|`, with `det J0` in closed form —
/// the quadratic `1 − tr(C0) t + det(C0) t²` for κ = 0 and the exponential
/// combination for κ < 0.
pub fn conullity2_evolution(kd0: f64, kappa: f64, c0: &DMatrix<f64>, t: f64) -> Result<f64> {
    if c0.nrows() != 2 || c0.ncols() != 2 {
        return Err(Error::InvalidInput(format!(
            "conullity-2 evolution expects a 2x2 C0, got {}x{}",
            c0.nrows(),
            c0.ncols()
        )));
    }
    if kappa > 0.0 {
        return Err(Error::InvalidInput(
            "conullity-2 evolution is defined for kappa <= 0".into(),
        ));
    }
    let tr = c0.trace();
    let det = c0.determinant();
    let det_j0 = if kappa == 0.0 {
        1.0 - tr * t + det * t * t
    } else {
        let s = (-kappa).sqrt();
        let quot = det / kappa;
        0.5 * (1.0 + quot)
            + 0.25 * (1.0 - quot - tr / s) * (2.0 * s * t).exp()
            + 0.25 * (1.0 - quot + tr / s) * (-2.0 * s * t).exp()
    };
    if det_j0.abs() <= 1e-12 {
        return Err(Error::SingularJacobi { t });
    }
    Ok(kappa + (kd0 - kappa) / det_j0.abs())
}

/// Output of [`scalar_riccati_blowup`].
#[derive(Debug, Clone, Copy)]
pub struct BlowupResult {
    /// Upper bound for the blow-up time: `(π/2 − arctan(β0/δ)) / δ`.
    pub bound: f64,
    /// Escape time (|β| > 1e8) of the adaptive integration of β' = δ² + β².
    pub numeric_blowup: f64,
}

const ESCAPE_THRESHOLD: f64 = 1e8;

/// Comparison bound for the scalar Riccati inequality `β' ≥ δ² + β²`: the
/// arctangent bound on the blow-up time together with a numerically
/// integrated escape time of the equality case.
pub fn scalar_riccati_blowup(beta0: f64, delta: f64) -> Result<BlowupResult> {
    if !(delta > 0.0) {
        return Err(Error::InvalidInput("delta must be positive".into()));
    }
    let bound = (std::f64::consts::FRAC_PI_2 - (beta0 / delta).atan()) / delta;
    let numeric = integrate_escape(beta0, delta, 1.1 * bound + 1.0)?;
    Ok(BlowupResult {
        bound,
        numeric_blowup: numeric,
    })
}

/// Dormand-Prince 5(4) on the scalar ODE y' = delta^2 + y^2 until escape.
fn integrate_escape(y0: f64, delta: f64, t_max: f64) -> Result<f64> {
    const A: [[f64; 6]; 6] = [
        [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
        [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
        [
            19372.0 / 6561.0,
            -25360.0 / 2187.0,
            64448.0 / 6561.0,
            -212.0 / 729.0,
            0.0,
            0.0,
        ],
        [
            9017.0 / 3168.0,
            -355.0 / 33.0,
            46732.0 / 5247.0,
            49.0 / 176.0,
            -5103.0 / 18656.0,
            0.0,
        ],
        [
            35.0 / 384.0,
            0.0,
            500.0 / 1113.0,
            125.0 / 192.0,
            -2187.0 / 6784.0,
            11.0 / 84.0,
        ],
    ];
    const B5: [f64; 7] = [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
        0.0,
    ];
    const B4: [f64; 7] = [
        5179.0 / 57600.0,
        0.0,
        7571.0 / 16695.0,
        393.0 / 640.0,
        -92097.0 / 339200.0,
        187.0 / 2100.0,
        1.0 / 40.0,
    ];
    const RTOL: f64 = 1e-10;
    const ATOL: f64 = 1e-12;

    let f = |y: f64| delta * delta + y * y;
    let mut t = 0.0;
    let mut y = y0;
    let mut h = 1e-6;
    for _ in 0..20_000_000u64 {
        if y.abs() >= ESCAPE_THRESHOLD {
            return Ok(t);
        }
        if t >= t_max {
            return Err(Error::NonConvergence(format!(
                "no escape before t = {t_max}"
            )));
        }
        let mut k = [0.0f64; 7];
        k[0] = f(y);
        for stage in 0..6 {
            let mut acc = 0.0;
            for (idx, kv) in k.iter().enumerate().take(stage + 1) {
                acc += A[stage][idx] * kv;
            }
            k[stage + 1] = f(y + h * acc);
        }
        let y5 = y + h * B5.iter().zip(&k).map(|(b, kv)| b * kv).sum::<f64>();
        let y4 = y + h * B4.iter().zip(&k).map(|(b, kv)| b * kv).sum::<f64>();
        let err = (y5 - y4).abs() / (ATOL + RTOL * y.abs().max(y5.abs()));
        if err <= 1.0 {
            t += h;
            y = y5;
        }
        let factor = if err > 0.0 {
            (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
        } else {
            5.0
        };
        h = (h * factor).min(t_max - t + 1e-12);
    }
    Err(Error::NonConvergence("step budget exhausted".into()))
}

/// Writes the trace of a flow as CSV with the exact header
/// `t,C_00,...,C_{k-1}{k-1},trC,detJ0[,KD]` (row-major C entries, one row
/// per sample). The `KD` column is present iff `kd0` is given, which
/// requires conullity 2 and κ ≤ 0.
pub fn write_trace_csv<W: Write>(
    out: &mut W,
    state: &SplittingState,
    ts: &[f64],
    kd0: Option<f64>,
) -> Result<()> {
    let k = state.conullity();
    if kd0.is_some() && k != 2 {
        return Err(Error::InvalidInput(
            "the KD column requires a 2x2 splitting tensor".into(),
        ));
    }
    let mut header = String::from("t");
    for i in 0..k {
        for j in 0..k {
            header.push_str(&format!(",C_{i}{j}"));
        }
    }
    header.push_str(",trC,detJ0");
    if kd0.is_some() {
        header.push_str(",KD");
    }
    writeln!(out, "{header}").map_err(|e| Error::InvalidInput(format!("csv write: {e}")))?;
    for &t in ts {
        let c = state.splitting_at(t)?;
        let det = state.j0_matrix(t).determinant();
        let mut row = format!("{t:.16e}");
        for i in 0..k {
            for j in 0..k {
                row.push_str(&format!(",{:.16e}", c[(i, j)]));
            }
        }
        row.push_str(&format!(",{:.16e},{:.16e}", c.trace(), det));
        if let Some(kd) = kd0 {
            let kd_t = conullity2_evolution(kd, state.kappa(), state.c0(), t)?;
            row.push_str(&format!(",{kd_t:.16e}"));
        }
        writeln!(out, "{row}").map_err(|e| Error::InvalidInput(format!("csv write: {e}")))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat2(a: f64, b: f64, c: f64, d: f64) -> DMatrix<f64> {
        DMatrix::from_row_slice(2, 2, &[a, b, c, d])
    }

    #[test]
    fn j0_closed_forms() {
        // kappa = 0, C0 = 0
        let state = SplittingState::new(0.0, DMatrix::zeros(2, 2)).unwrap();
        assert_eq!(state.j0_matrix(3.7), DMatrix::identity(2, 2));

        // kappa = -1, diag(1,-1): scalar evaluation per eigenvalue
        let state = SplittingState::new(-1.0, mat2(1.0, 0.0, 0.0, -1.0)).unwrap();
        let j = state.j0_matrix(1.0);
        assert!((j[(0, 0)] - (-1.0f64).exp()).abs() < 1e-15);
        assert!((j[(1, 1)] - 1.0f64.exp()).abs() < 1e-15);
        assert_eq!(j[(0, 1)], 0.0);

        // kappa = 1, rotation generator at t = pi/4
        let c0 = mat2(0.0, -1.0, 1.0, 0.0);
        let state = SplittingState::new(1.0, c0.clone()).unwrap();
        let j = state.j0_matrix(std::f64::consts::FRAC_PI_4);
        let expected = (DMatrix::identity(2, 2) - c0) * (0.5f64.sqrt());
        assert!((j - expected).amax() < 1e-15);
    }

    #[test]
    fn stationary_points_of_the_riccati_flow() {
        // C0^2 + kappa I = 0 freezes the flow
        let cases = [
            (1.0, mat2(0.0, -1.0, 1.0, 0.0)),
            (-1.0, mat2(1.0, 0.0, 0.0, -1.0)),
            (0.0, mat2(0.0, 0.0, 0.7, 0.0)),
        ];
        for (kappa, c0) in cases {
            let state = SplittingState::new(kappa, c0.clone()).unwrap();
            for t in [-1.5, -0.3, 0.4, 2.0] {
                let c = state.splitting_at(t).unwrap();
                assert!(
                    (&c - &c0).amax() < 1e-12,
                    "kappa={kappa}, t={t}: {:?}",
                    (&c - &c0).amax()
                );
            }
        }
    }

    #[test]
    fn riccati_residual_is_second_order() {
        let state = SplittingState::new(0.0, DMatrix::zeros(2, 2)).unwrap();
        assert_eq!(state.riccati_residual(0.5, 1e-4).unwrap(), 0.0);

        let state = SplittingState::new(1.0, mat2(0.0, -2.0, 0.5, 0.0)).unwrap();
        assert!(state.riccati_residual(0.3, 1e-4).unwrap() <= 1e-6);
    }

    #[test]
    fn riccati_residual_for_contractive_negative_curvature() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let raw = DMatrix::from_fn(3, 3, |_, _| rng.random_range(-1.0..1.0));
            let rho = raw
                .complex_eigenvalues()
                .iter()
                .map(|z| z.norm())
                .fold(0.0, f64::max);
            let c0 = if rho >= 1.0 { &raw * (0.95 / rho) } else { raw };
            let state = SplittingState::new(-1.0, c0).unwrap();
            for i in 0..9 {
                let t = -2.0 + 0.5 * i as f64;
                let res = state.riccati_residual(t, 1e-4).unwrap();
                assert!(res <= 1e-6, "t = {t}, residual = {res}");
            }
        }
    }

    #[test]
    fn semigroup_property() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for kappa in [-1.0, 0.0, 1.0] {
            let raw = DMatrix::from_fn(2, 2, |_, _| rng.random_range(-0.5..0.5));
            let state = SplittingState::new(kappa, raw).unwrap();
            let s = 0.3;
            let t = 0.4;
            let cs = state.splitting_at(s).unwrap();
            let restarted = SplittingState::new(kappa, cs).unwrap();
            let lhs = restarted.splitting_at(t).unwrap();
            let rhs = state.splitting_at(s + t).unwrap();
            assert!((lhs - rhs).amax() < 1e-8, "kappa = {kappa}");
        }
    }

    #[test]
    fn trace_plus_log_derivative_of_det_vanishes() {
        let state = SplittingState::new(-1.0, mat2(0.3, 0.2, -0.4, 0.1)).unwrap();
        for t in [-1.0, 0.0, 0.7, 1.9] {
            let c = state.splitting_at(t).unwrap();
            let j0 = state.j0_matrix(t);
            let x = j0
                .transpose()
                .lu()
                .solve(&state.j0_prime(t).transpose())
                .unwrap()
                .transpose();
            assert!((c.trace() + x.trace()).abs() < 1e-9);
        }
    }

    #[test]
    fn first_singularity_closed_forms() {
        // kappa = 0: t = 1/lambda for the positive eigenvalue
        let state = SplittingState::new(0.0, mat2(2.0, 0.0, 0.0, -1.0)).unwrap();
        let t = state.first_singularity().unwrap();
        assert!((t - 0.5).abs() < 1e-12);

        // kappa = 1, rotation generator: no real eigenvalues
        let state = SplittingState::new(1.0, mat2(0.0, -1.0, 1.0, 0.0)).unwrap();
        assert!(state.first_singularity().is_none());

        // kappa = -1, diag(1,-1): |lambda| = 1 never triggers coth
        let state = SplittingState::new(-1.0, mat2(1.0, 0.0, 0.0, -1.0)).unwrap();
        assert!(state.first_singularity().is_none());

        // kappa = -1 with lambda = 2 > 1: t = atanh(1/2), confirmed by a
        // determinant sign check on both sides
        let state = SplittingState::new(-1.0, mat2(2.0, 0.0, 0.0, 0.0)).unwrap();
        let t = state.first_singularity().unwrap();
        assert!((t - 0.5f64.atanh()).abs() < 1e-12);
        assert!(state.j0_matrix(t - 1e-3).determinant() > 0.0);
        assert!(state.j0_matrix(t + 1e-3).determinant() < 0.0);
        assert!(state.j0_matrix(t).determinant().abs() < 1e-10);
    }

    #[test]
    fn kappa_positive_real_eigenvalue_always_triggers() {
        let state = SplittingState::new(1.0, mat2(0.5, 0.0, 0.0, 0.25)).unwrap();
        let t = state.first_singularity().unwrap();
        // cot(t) = 0.5 at the first positive branch
        assert!((t - (std::f64::consts::FRAC_PI_2 - 0.5f64.atan())).abs() < 1e-12);
    }

    #[test]
    fn trace_limit_examples() {
        // diag(1,0): branch from 1 stays 1, branch from 0 tends to -tanh
        let report = trace_limits(&mat2(1.0, 0.0, 0.0, 0.0)).unwrap();
        assert_eq!((report.k_plus, report.k_minus), (1, 0));
        assert_eq!(report.limit_plus, 0.0);
        assert_eq!(report.limit_minus, 2.0);
        assert!(report.trace_identity_residual < 1e-8);

        // zero matrix: tr C(t) = -2 tanh t
        let report = trace_limits(&DMatrix::zeros(2, 2)).unwrap();
        assert_eq!(report.limit_plus, -2.0);
        assert_eq!(report.limit_minus, 2.0);

        // diag(1,1,-1,-1): both limits vanish
        let c0 = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![1.0, 1.0, -1.0, -1.0]));
        let report = trace_limits(&c0).unwrap();
        assert_eq!((report.k_plus, report.k_minus), (2, 2));
        assert_eq!(report.limit_plus, 0.0);
        assert_eq!(report.limit_minus, 0.0);
        assert_eq!(report.sigma, vec![1.0, 0.0, -2.0, 0.0, 1.0]);
    }

    #[test]
    fn trace_limits_reject_incomplete_flows() {
        let err = trace_limits(&mat2(2.0, 0.0, 0.0, 0.0)).unwrap_err();
        match err {
            Error::SingularFlow { t } => assert!((t - 0.5f64.atanh()).abs() < 1e-12),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn trace_limits_flag_ambiguous_eigenvalues() {
        // eigenvalues 1 ± 1e-6 i: real part on the disk boundary, imaginary
        // part too large to count
        let c0 = mat2(1.0, -1e-6, 1e-6, 1.0);
        assert!(matches!(
            trace_limits(&c0),
            Err(Error::AmbiguousEigenvalue { .. })
        ));
    }

    #[test]
    fn q_polynomial_matches_determinant() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let c0 = DMatrix::from_fn(3, 3, |_, _| rng.random_range(-1.0..1.0));
        let sigma = linalg::elementary_symmetric(&c0);
        for _ in 0..10 {
            let xi: f64 = rng.random_range(-2.0..2.0);
            let direct = (DMatrix::identity(3, 3) - &c0 * xi).determinant();
            assert!((q_polynomial(&sigma, xi) - direct).abs() < 1e-9);
        }
    }

    #[test]
    fn conullity2_closed_forms() {
        // nilpotent: det J0 = 1, K_D frozen
        let c0 = mat2(0.0, 0.0, 1.0, 0.0);
        for t in [-2.0, 0.0, 1.0, 3.0] {
            assert!((conullity2_evolution(5.0, 0.0, &c0, t).unwrap() - 5.0).abs() < 1e-12);
        }
        // kappa = -1 stationary case
        let c0 = mat2(1.0, 0.0, 0.0, -1.0);
        for t in [-1.0, 0.5, 2.0] {
            assert!((conullity2_evolution(1.0, -1.0, &c0, t).unwrap() - 1.0).abs() < 1e-12);
        }
        // kappa = 0, diag(1,0): K_D(0.5) = 1/|1-0.5| = 2
        let c0 = mat2(1.0, 0.0, 0.0, 0.0);
        assert!((conullity2_evolution(1.0, 0.0, &c0, 0.5).unwrap() - 2.0).abs() < 1e-12);
        // kappa > 0 rejected
        assert!(conullity2_evolution(1.0, 0.5, &c0, 0.1).is_err());
    }

    #[test]
    fn conullity2_satisfies_the_scalar_curvature_ode() {
        // d/dt K_D = tr C(t) (K_D - kappa), checked by central differences
        let c0 = mat2(0.4, 0.3, -0.2, 0.1);
        for kappa in [0.0, -1.0] {
            let state = SplittingState::new(kappa, c0.clone()).unwrap();
            for t in [-0.8, 0.0, 0.6] {
                let h = 1e-5;
                let kd = |x: f64| conullity2_evolution(2.0, kappa, &c0, x).unwrap();
                let lhs = (kd(t + h) - kd(t - h)) / (2.0 * h);
                let rhs = state.splitting_at(t).unwrap().trace() * (kd(t) - kappa);
                assert!((lhs - rhs).abs() < 1e-6, "kappa={kappa}, t={t}");
            }
        }
    }

    #[test]
    fn blowup_bound_matches_tangent_solution() {
        let out = scalar_riccati_blowup(0.0, 1.0).unwrap();
        assert!((out.bound - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
        assert!(out.numeric_blowup <= out.bound * 1.01);
        assert!((out.numeric_blowup - out.bound).abs() / out.bound < 0.01);

        let out = scalar_riccati_blowup(1.0, 1.0).unwrap();
        assert!((out.bound - std::f64::consts::FRAC_PI_4).abs() < 1e-15);

        // large beta0 pushes the bound to zero
        let out = scalar_riccati_blowup(1e9, 1.0).unwrap();
        assert!(out.bound < 1e-8);

        assert!(scalar_riccati_blowup(0.0, 0.0).is_err());
    }

    #[test]
    fn csv_header_and_shape() {
        let state = SplittingState::new(0.0, mat2(0.0, 0.0, 0.3, 0.0)).unwrap();
        let mut buf = Vec::new();
        write_trace_csv(&mut buf, &state, &[0.0, 0.5], Some(5.0)).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "t,C_00,C_01,C_10,C_11,trC,detJ0,KD");
        assert_eq!(lines.count(), 2);

        let mut buf = Vec::new();
        write_trace_csv(&mut buf, &state, &[0.0], None).unwrap();
        assert!(String::from_utf8(buf)
            .unwrap()
            .starts_with("t,C_00,C_01,C_10,C_11,trC,detJ0\n"));
    }
}
