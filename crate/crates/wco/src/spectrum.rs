//! Spectrum predictions for certified normal pairs, finite-section
//! eigenvalues, and the approximate-eigenvector residual that certifies the
//! unit-circle spectrum of parabolic unitary pairs.
//!
//! Finite sections approximate spectra reliably in the compact regime
//! (interior fixed point, derivative of modulus below one). For unitary
//! symbols of parabolic or hyperbolic type the sections pollute, and the
//! unit-circle prediction is validated through the residual route instead of
//! eigenvalue convergence.

use nalgebra::DMatrix;
use num_complex::Complex64;
use thiserror::Error;

use crate::hardy::{series_exp, series_mul, taylor_of_lft, TaylorPoly};
use crate::mobius::{MapClass, MobiusError, MobiusMap};
use crate::operator::{finite_section, is_normal, is_unitary, OperatorError, WcoSpec};
use crate::synthesis::{matches_ifpn, unitary_pair, LftWco, SynthesisError};

#[derive(Error, Debug, Clone, PartialEq)]
pub enum SpectrumError {
    #[error(transparent)]
    Mobius(#[from] MobiusError),
    #[error(transparent)]
    Operator(#[from] OperatorError),
    #[error("synthesis failure: {0}")]
    Synthesis(#[from] SynthesisError),
    #[error("operator is not certified normal or unitary by an exact test")]
    NotCertifiedNormal,
    #[error("eigenvalue iteration failed to converge")]
    NumericalBreakdown,
    #[error("point sets must be nonempty")]
    EmptySet,
    #[error("parameters must satisfy Re(t) = 0, t != 0, s > 1")]
    InvalidParameters,
    #[error("series order {n} leaves a coefficient tail of {tail_fraction:.3e} of the norm")]
    TruncationInsufficient { n: usize, tail_fraction: f64 },
}

pub type PointSet = Vec<Complex64>;

/// Predicted spectrum of a certified pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpectrumPrediction {
    /// Closure of the orbit `{gamma delta^n : n >= 0}` (plus `0` when
    /// `|delta| < 1`).
    KernelOrbit {
        gamma: Complex64,
        delta: Complex64,
    },
    UnitCircle,
    Unpredicted,
}

impl SpectrumPrediction {
    pub fn label(&self) -> &'static str {
        match self {
            SpectrumPrediction::KernelOrbit { .. } => "kernel_orbit",
            SpectrumPrediction::UnitCircle => "unit_circle",
            SpectrumPrediction::Unpredicted => "unpredicted",
        }
    }
}

/// Predict the spectrum of a linear fractional pair from the exact
/// certificates: interior fixed point gives the weighted derivative orbit,
/// parabolic or hyperbolic unitary pairs give the unit circle.
pub fn predict_spectrum(w: &LftWco) -> Result<SpectrumPrediction, SpectrumError> {
    let zero_weight = w.weight().constant_value().is_some_and(|v| v.norm() == 0.0);
    if zero_weight {
        return Ok(SpectrumPrediction::KernelOrbit {
            gamma: Complex64::ZERO,
            delta: Complex64::ZERO,
        });
    }
    let interior = w.symbol().constant_value().is_some()
        || w.symbol().classify()?.interior_fixed_point().is_some();
    if interior {
        let m = matches_ifpn(w)?;
        if m.matches {
            return Ok(SpectrumPrediction::KernelOrbit {
                gamma: m.weight_value,
                delta: m.derivative,
            });
        }
        return Err(SpectrumError::NotCertifiedNormal);
    }
    let spec = w.to_spec()?;
    let unitary = is_unitary(&spec, 32, 1e-8)?.holds();
    if unitary {
        match w.symbol().classify()? {
            MapClass::ParabolicAutomorphism { .. } | MapClass::HyperbolicAutomorphism { .. } => {
                return Ok(SpectrumPrediction::UnitCircle)
            }
            _ => {}
        }
    }
    let normal = is_normal(&spec, 32, 1e-8)?;
    if normal.is_normal() && normal.certificate.starts_with("exact") {
        // certified normal with boundary fixed point, outside the predicted families
        return Ok(SpectrumPrediction::Unpredicted);
    }
    Err(SpectrumError::NotCertifiedNormal)
}

/// All eigenvalues of the `N x N` section, by the dense complex Schur
/// decomposition.
pub fn section_eigenvalues(w: &WcoSpec, n: usize) -> Result<PointSet, SpectrumError> {
    if n < 8 {
        return Err(SpectrumError::Operator(OperatorError::DimensionTooSmall {
            n,
            min: 8,
        }));
    }
    let a = finite_section(w, n)?;
    eigenvalues(a.matrix())
}

pub(crate) fn eigenvalues(m: &DMatrix<Complex64>) -> Result<PointSet, SpectrumError> {
    m.clone()
        .try_schur(f64::EPSILON, 100_000)
        .and_then(|s| s.eigenvalues())
        .map(|e| e.iter().copied().collect())
        .ok_or(SpectrumError::NumericalBreakdown)
}

/// Hausdorff distance between two finite point sets.
pub fn hausdorff(a: &[Complex64], b: &[Complex64]) -> Result<f64, SpectrumError> {
    if a.is_empty() || b.is_empty() {
        return Err(SpectrumError::EmptySet);
    }
    let directed = |x: &[Complex64], y: &[Complex64]| {
        x.iter()
            .map(|p| {
                y.iter()
                    .map(|q| (p - q).norm())
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(0.0_f64, f64::max)
    };
    Ok(directed(a, b).max(directed(b, a)))
}

/// The finite comparison set for a kernel-orbit prediction: the first `n`
/// orbit points, plus the accumulation point `0` when `|delta| < 1`.
pub fn kernel_orbit_points(gamma: Complex64, delta: Complex64, n: usize) -> PointSet {
    let mut pts = Vec::with_capacity(n + 1);
    let mut cur = gamma;
    for _ in 0..n {
        pts.push(cur);
        cur *= delta;
    }
    if delta.norm() < 1.0 && gamma.norm() > 0.0 {
        pts.push(Complex64::ZERO);
    }
    pts
}

/// Sort eigenvalues by modulus descending, ties broken by argument
/// ascending; the stable order used by the CSV export.
pub fn sort_points(points: &mut [Complex64]) {
    points.sort_by(|x, y| {
        y.norm()
            .partial_cmp(&x.norm())
            .unwrap()
            .then(x.arg().partial_cmp(&y.arg()).unwrap())
    });
}

fn check_bbc_params(t: Complex64, s: f64) -> Result<(), SpectrumError> {
    if t.re.abs() > 1e-12 || t.norm() == 0.0 || s <= 1.0 {
        return Err(SpectrumError::InvalidParameters);
    }
    Ok(())
}

/// The normalized squared residual of the approximate eigenvector `G_s`
/// under the parabolic unitary pair with translation `t` (pure imaginary):
///
/// `rho(s, t) = 2 - 8 (s+1)^2 / (4 (s+1)^2 + |t|^2 (s-1)^2)`,
///
/// which vanishes as `s -> 1+`. Equivalent to the normalized expansion
/// `(s^2-1) [ 2/(s^2-1) - (8(s+1)/(s-1)) / (4(s+1)^2 + |t|^2 (1-s)^2) ]`
/// using `||G_s||^2 = 1/(s^2 - 1)`.
pub fn bbc_residual_sq(t: Complex64, s: f64) -> Result<f64, SpectrumError> {
    check_bbc_params(t, s)?;
    let sp = (s + 1.0) * (s + 1.0);
    let sm = (s - 1.0) * (s - 1.0);
    Ok(2.0 - 8.0 * sp / (4.0 * sp + t.norm_sqr() * sm))
}

/// Residual of the truncated `G_s` under the section of the parabolic
/// unitary pair: `|| W (G_s/||G_s||) - nu e^{lambda t} (G_s/||G_s||) ||`
/// with `nu = (2+t)/sqrt(4+|t|^2)`.
///
/// `G_s = exp(lambda (1+z)/(1-z)) / (s - z)` carries slowly decaying
/// coefficients; the tail against the exact norm `1/(s^2-1)` is guarded and
/// the call refuses truncations losing more than `1e-6` of the norm.
pub fn bbc_numeric_check(
    t: Complex64,
    s: f64,
    lambda: f64,
    n: usize,
) -> Result<f64, SpectrumError> {
    check_bbc_params(t, s)?;
    if !(s > 1.05 && s <= 2.0) || !(-2.0..=-0.1).contains(&lambda) || n < 128 {
        return Err(SpectrumError::InvalidParameters);
    }
    let g = g_s_coefficients(s, lambda, n)?;
    let norm_sq_exact = 1.0 / (s * s - 1.0);
    let partial: f64 = g.coeffs().iter().map(|c| c.norm_sqr()).sum();
    let tail_fraction = ((norm_sq_exact - partial).max(0.0) / norm_sq_exact).sqrt();
    if tail_fraction > 1e-6 {
        return Err(SpectrumError::TruncationInsufficient { n, tail_fraction });
    }
    let phi = MobiusMap::canonical_parabolic(t)?;
    let pair = unitary_pair(&phi, Complex64::new(1.0, 0.0))?;
    let section = finite_section(&pair.to_spec()?, n)?;
    let u = nalgebra::DVector::from_iterator(n, g.coeffs()[..n].iter().copied())
        / Complex64::new(partial.sqrt(), 0.0);
    let nu = (Complex64::new(2.0, 0.0) + t) / Complex64::new((4.0 + t.norm_sqr()).sqrt(), 0.0);
    let eig = nu * (Complex64::new(lambda, 0.0) * t).exp();
    let resid = section.matrix() * &u - u.map(|x| x * eig);
    Ok(resid.norm())
}

/// Maclaurin coefficients of `G_s = exp(lambda (1+z)/(1-z)) / (s - z)` to
/// order `n`. The exponent expands as `lambda (1 + 2z + 2z^2 + ...)`.
pub fn g_s_coefficients(s: f64, lambda: f64, n: usize) -> Result<TaylorPoly, SpectrumError> {
    let mut expo = vec![Complex64::new(2.0 * lambda, 0.0); n + 1];
    expo[0] = Complex64::new(lambda, 0.0);
    let inner = series_exp(&TaylorPoly::new(expo).map_err(OperatorError::Hardy)?, n);
    let pole = MobiusMap::new(
        Complex64::ZERO,
        Complex64::new(1.0, 0.0),
        Complex64::new(-1.0, 0.0),
        Complex64::new(s, 0.0),
    )?;
    let kernel_part = taylor_of_lft(&pole, n).map_err(OperatorError::Hardy)?;
    Ok(series_mul(&inner, &kernel_part, n))
}

/// The eigenvalue scalar `nu = c (2+t)/sqrt(4+|t|^2)`, unimodular for pure
/// imaginary `t`.
pub fn bbc_eigenvalue_scalar(t: Complex64, c: Complex64) -> Complex64 {
    c * (Complex64::new(2.0, 0.0) + t) / Complex64::new((4.0 + t.norm_sqr()).sqrt(), 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::{EqMode, Symbol};
    use crate::synthesis::normal_pair_interior;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn predict_diagonal() {
        let pair = LftWco::new(
            MobiusMap::constant(c(0.7, 0.1)),
            MobiusMap::dilation(c(0.5, 0.0)),
        )
        .unwrap();
        match predict_spectrum(&pair).unwrap() {
            SpectrumPrediction::KernelOrbit { gamma, delta } => {
                assert!((gamma - c(0.7, 0.1)).norm() < 1e-12);
                assert!((delta - c(0.5, 0.0)).norm() < 1e-12);
            }
            other => panic!("wrong prediction {other:?}"),
        }
    }

    #[test]
    fn predict_parabolic_unitary() {
        let phi = MobiusMap::canonical_parabolic(c(0.0, 2.0)).unwrap();
        let pair = unitary_pair(&phi, c(1.0, 0.0)).unwrap();
        assert_eq!(
            predict_spectrum(&pair).unwrap(),
            SpectrumPrediction::UnitCircle
        );

        let hyp = MobiusMap::canonical_hyperbolic(2.0, c(0.0, 1.0)).unwrap();
        let pair = unitary_pair(&hyp, c(1.0, 0.0)).unwrap();
        assert_eq!(
            predict_spectrum(&pair).unwrap(),
            SpectrumPrediction::UnitCircle
        );
    }

    #[test]
    fn predict_elliptic_unitary_orbit_is_unimodular() {
        let p = c(0.4, 0.0);
        let zeta = Complex64::from_polar(1.0, 0.8);
        let ap = MobiusMap::alpha(p).unwrap();
        let phi = ap
            .compose(&MobiusMap::dilation(zeta).compose(&ap).unwrap())
            .unwrap();
        let pair = unitary_pair(&phi, c(1.0, 0.0)).unwrap();
        match predict_spectrum(&pair).unwrap() {
            SpectrumPrediction::KernelOrbit { gamma, delta } => {
                assert!((gamma.norm() - 1.0).abs() < 1e-12);
                assert!((delta.norm() - 1.0).abs() < 1e-12);
                assert!((delta - zeta).norm() < 1e-10);
            }
            other => panic!("wrong prediction {other:?}"),
        }
    }

    #[test]
    fn predict_rejects_uncertified() {
        let pair = LftWco::new(
            MobiusMap::constant(c(1.0, 0.0)),
            MobiusMap::alpha(c(0.5, 0.0)).unwrap(),
        )
        .unwrap();
        // unit weight over an elliptic-type automorphism is not normal
        assert_eq!(
            predict_spectrum(&pair),
            Err(SpectrumError::NotCertifiedNormal)
        );
    }

    #[test]
    fn predict_parabolic_kernel_weight_unpredicted() {
        let pair = crate::synthesis::normal_pair_parabolic(c(2.0, 0.0), c(1.0, 0.0)).unwrap();
        assert_eq!(
            predict_spectrum(&pair).unwrap(),
            SpectrumPrediction::Unpredicted
        );
    }

    #[test]
    fn diagonal_eigenvalues_exact() {
        let delta = c(0.0, 0.5);
        let w = WcoSpec::new(
            Symbol::Lft(MobiusMap::constant(c(1.0, 0.0))),
            Symbol::Lft(MobiusMap::dilation(delta)),
            EqMode::Exact,
        )
        .unwrap();
        let mut eigs = section_eigenvalues(&w, 8).unwrap();
        sort_points(&mut eigs);
        let mut expect: Vec<Complex64> = (0..8).map(|k| delta.powu(k)).collect();
        sort_points(&mut expect);
        for (a, b) in eigs.iter().zip(expect.iter()) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn compact_normal_spectrum_converges() {
        let pair = normal_pair_interior(c(0.5, 0.0), c(0.5, 0.0), c(1.0, 0.0)).unwrap();
        let spec = pair.to_spec().unwrap();
        let mut prev = f64::INFINITY;
        for n in [16usize, 32, 64] {
            let eigs = section_eigenvalues(&spec, n).unwrap();
            let pred = kernel_orbit_points(c(1.0, 0.0), c(0.5, 0.0), n);
            let h = hausdorff(&eigs, &pred).unwrap();
            assert!(
                h <= prev + 1e-12,
                "hausdorff must not increase: {h} after {prev}"
            );
            prev = h;
        }
        assert!(prev < 1e-4);
    }

    #[test]
    fn hausdorff_basics() {
        let a = vec![c(0.0, 0.0)];
        let b = vec![c(1.0, 0.0)];
        assert_eq!(hausdorff(&a, &a).unwrap(), 0.0);
        assert_eq!(hausdorff(&a, &b).unwrap(), 1.0);
        let ab = vec![c(0.0, 0.0), c(1.0, 0.0)];
        assert_eq!(hausdorff(&ab, &a).unwrap(), 1.0);
        assert_eq!(hausdorff(&[], &a), Err(SpectrumError::EmptySet));
    }

    #[test]
    fn residual_closed_form() {
        // fixed point of the residual algebra at s = 1.01, t = 2i
        let rho = bbc_residual_sq(c(0.0, 2.0), 1.01).unwrap();
        assert!((rho - 4.950249987624363e-5).abs() < 1e-12);
        // the unnormalized expansion route gives the same value
        let s = 1.01_f64;
        let t2 = 4.0_f64;
        let raw = 2.0 / (s * s - 1.0)
            - (8.0 * (s + 1.0) / (s - 1.0)) / (4.0 * (s + 1.0).powi(2) + t2 * (1.0 - s).powi(2));
        assert!(((s * s - 1.0) * raw - rho).abs() < 1e-12);

        // decreasing toward the limit s -> 1+
        let mut prev = bbc_residual_sq(c(0.0, 2.0), 1.5).unwrap();
        for s in [1.4, 1.3, 1.2, 1.1, 1.05, 1.01] {
            let cur = bbc_residual_sq(c(0.0, 2.0), s).unwrap();
            assert!(cur <= prev);
            assert!(cur >= 0.0);
            prev = cur;
        }
        // quadratic vanishing rate
        for h in [1e-2, 1e-3, 1e-4] {
            let rho = bbc_residual_sq(c(0.0, 2.0), 1.0 + h).unwrap();
            assert!(rho <= 0.51 * h * h);
        }
        assert_eq!(
            bbc_residual_sq(c(1.0, 0.0), 1.2),
            Err(SpectrumError::InvalidParameters)
        );
        assert_eq!(
            bbc_residual_sq(c(0.0, 2.0), 0.9),
            Err(SpectrumError::InvalidParameters)
        );
    }

    #[test]
    fn eigenvalue_scalar_unimodular() {
        for t in [c(0.0, 1.0), c(0.0, 2.0), c(0.0, -3.0)] {
            let nu = bbc_eigenvalue_scalar(t, c(1.0, 0.0));
            assert!((nu.norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn g_s_expansion_normalization() {
        // at lambda -> 0 the inner factor is 1 and G_s is the shifted kernel
        let g = g_s_coefficients(1.5, -1e-12, 32).unwrap();
        let expect = taylor_of_lft(
            &MobiusMap::new(Complex64::ZERO, c(1.0, 0.0), c(-1.0, 0.0), c(1.5, 0.0)).unwrap(),
            32,
        )
        .unwrap();
        assert!(g.sub(&expect).h2_norm() < 1e-10);
    }

    #[test]
    fn bbc_numeric_guard_fires_at_desk_scale() {
        // the inner-factor coefficients decay algebraically, so the stated
        // truncation cannot capture the norm; the guard must refuse
        match bbc_numeric_check(c(0.0, 2.0), 1.2, -1.0, 256) {
            Err(SpectrumError::TruncationInsufficient { tail_fraction, .. }) => {
                assert!(tail_fraction > 0.1);
            }
            other => panic!("expected the truncation guard, got {other:?}"),
        }
    }

    #[test]
    fn orbit_points_include_accumulation() {
        let pts = kernel_orbit_points(c(1.0, 0.0), c(0.5, 0.0), 4);
        assert_eq!(pts.len(), 5);
        assert_eq!(pts[4], Complex64::ZERO);
        let pts = kernel_orbit_points(c(1.0, 0.0), c(0.0, 1.0), 4);
        assert_eq!(pts.len(), 4);
    }

    #[test]
    fn sorted_points_are_stable() {
        let mut pts = vec![c(0.5, 0.0), c(-1.0, 0.0), c(0.0, 1.0), c(1.0, 0.0)];
        sort_points(&mut pts);
        // modulus descending, ties by ascending argument
        assert_eq!(pts[0], c(1.0, 0.0));
        assert_eq!(pts[1], c(0.0, 1.0));
        assert_eq!(pts[2], c(-1.0, 0.0));
        assert_eq!(pts[3], c(0.5, 0.0));
    }
}
