//! Truncated Maclaurin-series arithmetic and reproducing-kernel calculus for
//! the Hardy space of the unit disc.
//!
//! A function is carried by its first `N+1` Maclaurin coefficients; the inner
//! product is the coefficient dot product. Reproducing kernels
//! `K_b = 1/(1 - conj(b) z)` are kept symbolic as weighted point lists, where
//! inner products and adjoint actions are exact.

use num_complex::Complex64;
use thiserror::Error;

use crate::mobius::MobiusMap;

/// Default truncation order. Coefficients of disc-selfmap symbols decay
/// geometrically, so this reaches machine-precision tails for poles of
/// modulus 1.25 or more.
pub const DEFAULT_ORDER: usize = 64;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum HardyError {
    #[error("coefficients must be finite and nonempty")]
    InvalidCoefficients,
    #[error("pole of the linear fractional symbol lies in the closed unit disc")]
    PoleInClosedDisc,
    #[error("composition requires |phi(0)| < 1")]
    CompositionDiverges,
    #[error("quadrature needs at least 2*degree + 1 points, got {got}")]
    InsufficientQuadrature { got: usize },
    #[error("point lies outside the open unit disc")]
    PointNotInDisc,
}

/// Finite Maclaurin coefficient sequence; index `k` carries the coefficient
/// of `z^k`.
#[derive(Debug, Clone, PartialEq)]
pub struct TaylorPoly {
    coeffs: Vec<Complex64>,
}

impl TaylorPoly {
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self, HardyError> {
        if coeffs.is_empty()
            || coeffs
                .iter()
                .any(|c| !c.re.is_finite() || !c.im.is_finite())
        {
            return Err(HardyError::InvalidCoefficients);
        }
        Ok(TaylorPoly { coeffs })
    }

    pub fn zero(order: usize) -> Self {
        TaylorPoly {
            coeffs: vec![Complex64::ZERO; order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Complex64::new(1.0, 0.0), order)
    }

    pub fn constant(value: Complex64, order: usize) -> Self {
        let mut coeffs = vec![Complex64::ZERO; order + 1];
        coeffs[0] = value;
        TaylorPoly { coeffs }
    }

    /// The monomial `z^k`, truncated at `order`.
    pub fn monomial(k: usize, order: usize) -> Self {
        let mut coeffs = vec![Complex64::ZERO; order + 1];
        if k <= order {
            coeffs[k] = Complex64::new(1.0, 0.0);
        }
        TaylorPoly { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or(Complex64::ZERO)
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Pad with zeros or cut so the order becomes `n`.
    pub fn truncate(&self, n: usize) -> TaylorPoly {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(n + 1, Complex64::ZERO);
        TaylorPoly { coeffs }
    }

    /// Degree after discarding trailing coefficients below `tol` relative to
    /// the largest coefficient.
    pub fn trimmed_degree(&self, tol: f64) -> usize {
        let scale = self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        if scale == 0.0 {
            return 0;
        }
        self.coeffs
            .iter()
            .rposition(|c| c.norm() > tol * scale)
            .unwrap_or(0)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::ZERO, |acc, c| acc * z + c)
    }

    pub fn add(&self, other: &TaylorPoly) -> TaylorPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = vec![Complex64::ZERO; n];
        for (k, c) in coeffs.iter_mut().enumerate() {
            *c = self.coeff(k) + other.coeff(k);
        }
        TaylorPoly { coeffs }
    }

    pub fn sub(&self, other: &TaylorPoly) -> TaylorPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = vec![Complex64::ZERO; n];
        for (k, c) in coeffs.iter_mut().enumerate() {
            *c = self.coeff(k) - other.coeff(k);
        }
        TaylorPoly { coeffs }
    }

    pub fn scale(&self, s: Complex64) -> TaylorPoly {
        TaylorPoly {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// Coefficient two-norm `(sum |f_k|^2)^{1/2}`.
    pub fn h2_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.coeffs.iter().all(|c| c.norm() <= tol)
    }
}

/// First `n+1` Maclaurin coefficients of `(az + b)/(cz + d)` via the
/// geometric-series expansion of `1/(cz + d)`.
pub fn taylor_of_lft(m: &MobiusMap, n: usize) -> Result<TaylorPoly, HardyError> {
    let (a, b, c, d) = m.coeffs();
    if c.norm() > 0.0 && (d / c).norm() <= 1.0 {
        return Err(HardyError::PoleInClosedDisc);
    }
    let ratio = -c / d;
    let mut geo = Vec::with_capacity(n + 1);
    let mut cur = Complex64::new(1.0, 0.0) / d;
    for _ in 0..=n {
        geo.push(cur);
        cur *= ratio;
    }
    let mut coeffs = vec![Complex64::ZERO; n + 1];
    for k in 0..=n {
        coeffs[k] = b * geo[k];
        if k > 0 {
            coeffs[k] += a * geo[k - 1];
        }
    }
    Ok(TaylorPoly { coeffs })
}

/// Cauchy product truncated at order `n`.
pub fn series_mul(f: &TaylorPoly, g: &TaylorPoly, n: usize) -> TaylorPoly {
    let mut coeffs = vec![Complex64::ZERO; n + 1];
    let fl = f.coeffs.len().min(n + 1);
    for i in 0..fl {
        if f.coeffs[i] == Complex64::ZERO {
            continue;
        }
        let gl = g.coeffs.len().min(n + 1 - i);
        for j in 0..gl {
            coeffs[i + j] += f.coeffs[i] * g.coeffs[j];
        }
    }
    TaylorPoly { coeffs }
}

/// Maclaurin coefficients of `f(phi(z))` to order `n`, by Horner-style
/// accumulation with every intermediate power truncated at `n`.
pub fn series_compose(
    f: &TaylorPoly,
    phi: &TaylorPoly,
    n: usize,
) -> Result<TaylorPoly, HardyError> {
    if phi.coeff(0).norm() >= 1.0 {
        return Err(HardyError::CompositionDiverges);
    }
    let mut out = TaylorPoly::zero(n);
    for k in (0..f.coeffs.len()).rev() {
        out = series_mul(&out, phi, n);
        out.coeffs[0] += f.coeffs[k];
    }
    Ok(out)
}

/// Series exponential `exp(f)` to order `n`, by the derivative recurrence
/// `n b_n = sum k a_k b_{n-k}`.
pub fn series_exp(f: &TaylorPoly, n: usize) -> TaylorPoly {
    let mut out = vec![Complex64::ZERO; n + 1];
    out[0] = f.coeff(0).exp();
    for m in 1..=n {
        let mut acc = Complex64::ZERO;
        for k in 1..=m {
            acc += (k as f64) * f.coeff(k) * out[m - k];
        }
        out[m] = acc / (m as f64);
    }
    TaylorPoly { coeffs: out }
}

/// Squared boundary norm `(1/2pi) int |f(e^{it})|^2 dt` by the trapezoidal
/// rule on a uniform grid, which is exact for polynomials once the point
/// count exceeds twice the degree.
pub fn boundary_norm_check(f: &TaylorPoly, points: usize) -> Result<f64, HardyError> {
    let deg = f.trimmed_degree(1e-300);
    if points < 2 * deg + 1 {
        return Err(HardyError::InsufficientQuadrature { got: points });
    }
    let mut acc = 0.0;
    for j in 0..points {
        let theta = 2.0 * std::f64::consts::PI * (j as f64) / (points as f64);
        let z = Complex64::from_polar(1.0, theta);
        acc += f.eval(z).norm_sqr();
    }
    Ok(acc / points as f64)
}

/// `||K_b|| = (1 - |b|^2)^{-1/2}`.
pub fn kernel_norm(beta: Complex64) -> Result<f64, HardyError> {
    if beta.norm() >= 1.0 {
        return Err(HardyError::PointNotInDisc);
    }
    Ok(1.0 / (1.0 - beta.norm_sqr()).sqrt())
}

/// `<K_a, K_b> = K_a(b) = 1/(1 - conj(a) b)`.
pub fn kernel_inner(a: Complex64, b: Complex64) -> Result<Complex64, HardyError> {
    if a.norm() >= 1.0 || b.norm() >= 1.0 {
        return Err(HardyError::PointNotInDisc);
    }
    Ok(Complex64::new(1.0, 0.0) / (Complex64::new(1.0, 0.0) - a.conj() * b))
}

/// A finite combination `sum w_i K_{p_i}` of reproducing kernels at points of
/// the open disc. The empty combination is the zero function.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelCombo {
    terms: Vec<(Complex64, Complex64)>,
}

impl KernelCombo {
    pub fn zero() -> Self {
        KernelCombo { terms: Vec::new() }
    }

    /// The single kernel `K_beta`.
    pub fn kernel_at(beta: Complex64) -> Result<Self, HardyError> {
        if beta.norm() >= 1.0 {
            return Err(HardyError::PointNotInDisc);
        }
        Ok(KernelCombo {
            terms: vec![(Complex64::new(1.0, 0.0), beta)],
        })
    }

    pub fn new(terms: Vec<(Complex64, Complex64)>) -> Result<Self, HardyError> {
        if terms.iter().any(|(_, p)| p.norm() >= 1.0) {
            return Err(HardyError::PointNotInDisc);
        }
        Ok(KernelCombo { terms })
    }

    /// `(weight, point)` pairs.
    pub fn terms(&self) -> &[(Complex64, Complex64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(|(w, _)| w.norm() == 0.0)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.terms
            .iter()
            .map(|(w, p)| w / (Complex64::new(1.0, 0.0) - p.conj() * z))
            .sum()
    }

    /// Exact inner product of two kernel combinations.
    pub fn inner(&self, other: &KernelCombo) -> Complex64 {
        let mut acc = Complex64::ZERO;
        for (w, p) in &self.terms {
            for (v, q) in &other.terms {
                acc += w * v.conj() / (Complex64::new(1.0, 0.0) - p.conj() * *q);
            }
        }
        acc
    }

    pub fn norm(&self) -> f64 {
        self.inner(self).re.max(0.0).sqrt()
    }

    /// Truncated coefficient expansion: `K_p` has coefficients `conj(p)^k`.
    pub fn to_taylor(&self, n: usize) -> TaylorPoly {
        let mut coeffs = vec![Complex64::ZERO; n + 1];
        for (w, p) in &self.terms {
            let pc = p.conj();
            let mut cur = Complex64::new(1.0, 0.0);
            for c in coeffs.iter_mut() {
                *c += w * cur;
                cur *= pc;
            }
        }
        TaylorPoly { coeffs }
    }
}
