//! Finite-section realization of weighted composition operators and the
//! normality, unitarity, and Hermitian testers.
//!
//! The operator `W f = psi (f . phi)` is compressed to the span of the first
//! `N` monomials; column `n` of the section holds the leading Maclaurin
//! coefficients of `psi phi^n`. Defects are measured on the top-left `N/2`
//! block, where the compression converges first. Whenever both symbols are
//! linear fractional the testers prefer exact coefficient certificates to
//! numeric defects.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::hardy::{series_mul, taylor_of_lft, HardyError, KernelCombo, TaylorPoly};
use crate::mobius::{MobiusError, MobiusMap};
use crate::serial::fmt_complex_csv;
use crate::synthesis::{self, LftWco};

#[derive(Error, Debug, Clone, PartialEq)]
pub enum OperatorError {
    #[error(transparent)]
    Mobius(#[from] MobiusError),
    #[error(transparent)]
    Hardy(#[from] HardyError),
    #[error("phi is not a selfmap of the unit disc")]
    NotSelfmap,
    #[error("weight symbol is not expandable on the closed disc")]
    InvalidWeight,
    #[error("section dimension {n} is below the minimum {min}")]
    DimensionTooSmall { n: usize, min: usize },
    #[error("dense eigenvalue/singular-value iteration failed to converge")]
    NumericalBreakdown,
    #[error("exact certificate failed: {0}")]
    Certificate(String),
}

/// A symbol carried either exactly (ratio of degree-one polynomials) or as a
/// truncated series.
#[derive(Debug, Clone, PartialEq)]
pub enum Symbol {
    Lft(MobiusMap),
    Series(TaylorPoly),
}

impl Symbol {
    pub fn as_lft(&self) -> Option<&MobiusMap> {
        match self {
            Symbol::Lft(m) => Some(m),
            Symbol::Series(_) => None,
        }
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        match self {
            Symbol::Lft(m) => m.eval(z),
            Symbol::Series(t) => t.eval(z),
        }
    }

    pub fn to_taylor(&self, n: usize) -> Result<TaylorPoly, HardyError> {
        match self {
            Symbol::Lft(m) => {
                if let Some(v) = m.constant_value() {
                    Ok(TaylorPoly::constant(v, n))
                } else {
                    taylor_of_lft(m, n)
                }
            }
            Symbol::Series(t) => Ok(t.truncate(n)),
        }
    }
}

/// Tolerance regime for symbol-equality certificates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EqMode {
    Exact,
    Numeric,
}

impl EqMode {
    /// Coefficient tolerance used by the exact certificate paths.
    pub fn coeff_tol(self) -> f64 {
        match self {
            EqMode::Exact => 1e-12,
            EqMode::Numeric => 1e-10,
        }
    }
}

/// Symbol pair of a weighted composition operator; `phi` is verified to be a
/// selfmap of the disc at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct WcoSpec {
    psi: Symbol,
    phi: Symbol,
    mode: EqMode,
}

impl WcoSpec {
    pub fn new(psi: Symbol, phi: Symbol, mode: EqMode) -> Result<Self, OperatorError> {
        match &phi {
            Symbol::Lft(m) => {
                let ok = match m.constant_value() {
                    Some(v) => v.norm() < 1.0,
                    None => m.is_disc_selfmap()?,
                };
                if !ok {
                    return Err(OperatorError::NotSelfmap);
                }
            }
            Symbol::Series(t) => {
                if t.coeff(0).norm() >= 1.0 {
                    return Err(OperatorError::NotSelfmap);
                }
                // truncated symbols may poke out of the disc by rounding only
                let mut sup: f64 = 0.0;
                for j in 0..512 {
                    let theta = 2.0 * std::f64::consts::PI * (j as f64) / 512.0;
                    sup = sup.max(t.eval(Complex64::from_polar(1.0, theta)).norm());
                }
                if sup > 1.0 + 1e-6 {
                    return Err(OperatorError::NotSelfmap);
                }
            }
        }
        if let Symbol::Lft(w) = &psi {
            let [d0, d1] = w.denominator();
            if d1.norm() > 0.0 && (d0 / d1).norm() <= 1.0 {
                return Err(OperatorError::InvalidWeight);
            }
        }
        Ok(WcoSpec { psi, phi, mode })
    }

    /// Exact pair from linear fractional weight and symbol.
    pub fn exact(weight: MobiusMap, symbol: MobiusMap) -> Result<Self, OperatorError> {
        WcoSpec::new(Symbol::Lft(weight), Symbol::Lft(symbol), EqMode::Exact)
    }

    pub fn psi(&self) -> &Symbol {
        &self.psi
    }

    pub fn phi(&self) -> &Symbol {
        &self.phi
    }

    pub fn mode(&self) -> EqMode {
        self.mode
    }

    fn exact_pair(&self) -> Option<LftWco> {
        match (&self.psi, &self.phi) {
            (Symbol::Lft(w), Symbol::Lft(s)) => LftWco::new(*w, *s).ok(),
            _ => None,
        }
    }

    fn psi_is_zero(&self) -> bool {
        match &self.psi {
            Symbol::Lft(w) => w.constant_value().is_some_and(|v| v.norm() == 0.0),
            Symbol::Series(t) => t.is_zero(0.0),
        }
    }
}

/// An `N x N` compression to the monomial basis.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteSection {
    mat: DMatrix<Complex64>,
}

impl FiniteSection {
    pub fn dimension(&self) -> usize {
        self.mat.nrows()
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.mat[(i, j)]
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.mat
    }

    pub fn from_matrix(mat: DMatrix<Complex64>) -> Self {
        assert_eq!(mat.nrows(), mat.ncols(), "sections are square");
        FiniteSection { mat }
    }

    /// Row-major CSV with entries formatted as `re+imj` literals.
    pub fn to_csv(&self) -> String {
        let n = self.dimension();
        let mut out = String::new();
        for i in 0..n {
            let row: Vec<String> = (0..n).map(|j| fmt_complex_csv(self.mat[(i, j)])).collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}

/// Section of `W_{psi,phi}`: column `n` holds the first `N` coefficients of
/// `psi phi^n`. Truncating every intermediate power at order `N-1` is exact
/// for the retained coefficients.
pub fn finite_section(w: &WcoSpec, n: usize) -> Result<FiniteSection, OperatorError> {
    if n == 0 {
        return Err(OperatorError::DimensionTooSmall { n, min: 1 });
    }
    let order = n - 1;
    let psi = w.psi.to_taylor(order)?;
    let phi = w.phi.to_taylor(order)?;
    let mut mat = DMatrix::<Complex64>::zeros(n, n);
    let mut power = TaylorPoly::one(order);
    for j in 0..n {
        let col = series_mul(&psi, &power, order);
        for i in 0..n {
            mat[(i, j)] = col.coeff(i);
        }
        if j + 1 < n {
            power = series_mul(&power, &phi, order);
        }
    }
    Ok(FiniteSection { mat })
}

/// Exact adjoint action on kernel combinations:
/// `W* K_b = conj(psi(b)) K_{phi(b)}` termwise, with vanished terms dropped.
pub fn adjoint_on_kernel(w: &WcoSpec, v: &KernelCombo) -> Result<KernelCombo, OperatorError> {
    let mut terms = Vec::new();
    for (weight, beta) in v.terms() {
        if beta.norm() >= 1.0 {
            return Err(OperatorError::Hardy(HardyError::PointNotInDisc));
        }
        let pb = w.phi.eval(*beta);
        debug_assert!(pb.norm() < 1.0, "selfmaps keep kernel points in the disc");
        let scaled = weight * w.psi.eval(*beta).conj();
        if scaled.norm() > 0.0 {
            terms.push((scaled, pb));
        }
    }
    KernelCombo::new(terms).map_err(OperatorError::Hardy)
}

/// Section of the adjoint of an unweighted linear fractional composition
/// operator, assembled from the factorization `M_g C_sigma M_h^*`.
///
/// Multiplication sections are lower triangular and `M_h^*` keeps the
/// monomial flag invariant, so the product of the three sections is the
/// section of the product operator with no truncation crosstalk.
pub fn cowen_adjoint_section(phi: &MobiusMap, n: usize) -> Result<FiniteSection, OperatorError> {
    let triple = phi.cowen_aux()?;
    let identity = MobiusMap::identity();
    let m_g = finite_section(&WcoSpec::exact(triple.g, identity)?, n)?;
    let c_sigma = finite_section(
        &WcoSpec::new(
            Symbol::Lft(MobiusMap::constant(Complex64::new(1.0, 0.0))),
            Symbol::Lft(triple.sigma),
            EqMode::Exact,
        )?,
        n,
    )?;
    let m_h = finite_section(&WcoSpec::exact(triple.h, identity)?, n)?;
    let mat = m_g.mat * c_sigma.mat * m_h.mat.adjoint();
    Ok(FiniteSection { mat })
}

/// Largest singular value.
pub fn spectral_norm(m: &DMatrix<Complex64>) -> Result<f64, OperatorError> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Ok(0.0);
    }
    m.clone()
        .try_svd(false, false, f64::EPSILON, 100_000)
        .map(|svd| svd.singular_values.max())
        .ok_or(OperatorError::NumericalBreakdown)
}

/// Top-left half-dimension block, where compressions converge first.
pub fn central_block(m: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let b = m.nrows() / 2;
    m.view((0, 0), (b, b)).into_owned()
}

/// Spectral norm of the self-commutator `A* A - A A*` restricted to the
/// top-left `N/2` block of the `N x N` section.
pub fn commutator_defect(w: &WcoSpec, n: usize) -> Result<f64, OperatorError> {
    if n < 8 {
        return Err(OperatorError::DimensionTooSmall { n, min: 8 });
    }
    let a = finite_section(w, n)?.mat;
    let comm = a.adjoint() * &a - &a * a.adjoint();
    spectral_norm(&central_block(&comm))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NormalityVerdict {
    Normal,
    NotNormal,
    Inconclusive,
}

/// Outcome of a normality test with the defect measured and the test that
/// decided the verdict named.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NormalityReport {
    pub verdict: NormalityVerdict,
    pub defect: f64,
    pub tolerance: f64,
    pub certificate: String,
    #[serde(rename = "N")]
    pub dimension: usize,
}

impl NormalityReport {
    pub fn is_normal(&self) -> bool {
        self.verdict == NormalityVerdict::Normal
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

fn weight_zero_in_disc(w: &WcoSpec) -> Result<Option<Complex64>, OperatorError> {
    match &w.psi {
        Symbol::Lft(m) => {
            if m.constant_value().is_some() {
                return Ok(None); // nonzero constant; the zero weight is handled earlier
            }
            let [n0, n1] = m.numerator();
            if n1.norm() == 0.0 {
                return Ok(None);
            }
            let root = -n0 / n1;
            Ok((root.norm() < 1.0 - 1e-12).then_some(root))
        }
        Symbol::Series(t) => {
            let deg = t.trimmed_degree(1e-12);
            if deg == 0 {
                return Ok(None);
            }
            let roots = polynomial_roots(t, deg)?;
            Ok(roots.into_iter().find(|r| r.norm() < 1.0 - 1e-6))
        }
    }
}

fn polynomial_roots(t: &TaylorPoly, deg: usize) -> Result<Vec<Complex64>, OperatorError> {
    if deg == 1 {
        return Ok(vec![-t.coeff(0) / t.coeff(1)]);
    }
    let lead = t.coeff(deg);
    let mut companion = DMatrix::<Complex64>::zeros(deg, deg);
    for i in 1..deg {
        companion[(i, i - 1)] = Complex64::new(1.0, 0.0);
    }
    for i in 0..deg {
        companion[(i, deg - 1)] = -t.coeff(i) / lead;
    }
    companion
        .try_schur(f64::EPSILON, 100_000)
        .and_then(|s| s.eigenvalues())
        .map(|e| e.iter().copied().collect())
        .ok_or(OperatorError::NumericalBreakdown)
}

/// Search a disc grid for two points identified by a series symbol, refining
/// the candidate by Newton iteration. A confirmed pair disproves normality
/// through the kernel-difference construction.
fn non_univalence_witness(phi: &TaylorPoly) -> Option<(Complex64, Complex64)> {
    const GRID: usize = 41;
    let mut pts = Vec::new();
    for i in 0..GRID {
        for j in 0..GRID {
            let re = -0.96 + 1.92 * (i as f64) / (GRID - 1) as f64;
            let im = -0.96 + 1.92 * (j as f64) / (GRID - 1) as f64;
            let z = Complex64::new(re, im);
            if z.norm() <= 0.96 {
                pts.push((z, phi.eval(z)));
            }
        }
    }
    let mut best: Option<(Complex64, Complex64, f64)> = None;
    for i in 0..pts.len() {
        for j in (i + 1)..pts.len() {
            let (a, fa) = pts[i];
            let (b, fb) = pts[j];
            if (a - b).norm() < 0.15 {
                continue;
            }
            let d = (fa - fb).norm();
            if best.is_none_or(|(_, _, bd)| d < bd) {
                best = Some((a, b, d));
            }
        }
    }
    let (a, mut b, _) = best?;
    let target = phi.eval(a);
    // derivative series for the Newton refinement
    let dphi: Vec<Complex64> = (1..=phi.order()).map(|k| phi.coeff(k) * k as f64).collect();
    let dphi = TaylorPoly::new(if dphi.is_empty() {
        vec![Complex64::ZERO]
    } else {
        dphi
    })
    .ok()?;
    for _ in 0..60 {
        let fb = phi.eval(b);
        let db = dphi.eval(b);
        if db.norm() < 1e-14 {
            break;
        }
        let step = (fb - target) / db;
        b -= step;
        if b.norm() >= 0.999 {
            return None;
        }
        if step.norm() < 1e-15 {
            break;
        }
    }
    let confirmed =
        (phi.eval(b) - target).norm() < 1e-10 && (a - b).norm() > 0.05 && b.norm() < 1.0;
    confirmed.then_some((a, b))
}

/// Normality pipeline: zero weight, then the kernel-zero obstruction, then
/// exact linear fractional certificates (interior fixed-point form, boundary
/// commutation form), then numeric fallbacks (non-univalence witness for
/// series symbols, self-commutator defect).
pub fn is_normal(w: &WcoSpec, n: usize, tol: f64) -> Result<NormalityReport, OperatorError> {
    let report = |verdict, defect, certificate: &str| NormalityReport {
        verdict,
        defect,
        tolerance: tol,
        certificate: certificate.to_string(),
        dimension: n,
    };

    if w.psi_is_zero() {
        return Ok(report(NormalityVerdict::Normal, 0.0, "zero-weight"));
    }
    if weight_zero_in_disc(w)?.is_some() {
        return Ok(report(NormalityVerdict::NotNormal, 0.0, "kernel-zero"));
    }

    if let Some(pair) = w.exact_pair() {
        let tol_eq = w.mode.coeff_tol();
        let class = pair.symbol().classify()?;
        if class.interior_fixed_point().is_some() {
            let m = synthesis::matches_ifpn(&pair)
                .map_err(|e| OperatorError::Certificate(e.to_string()))?;
            let verdict = if m.matches {
                NormalityVerdict::Normal
            } else {
                NormalityVerdict::NotNormal
            };
            return Ok(report(verdict, 0.0, "exact-ifpn"));
        }
        // boundary Denjoy-Wolff point: the commutation certificate applies to
        // weights proportional to the kernel at sigma(0)
        let sigma0 = pair.symbol().cowen_aux()?.sigma.eval(Complex64::ZERO);
        if synthesis::weight_kernel_ratio(pair.weight(), sigma0, tol_eq).is_some() {
            let lfs = synthesis::lfs_condition(pair.symbol())
                .map_err(|e| OperatorError::Certificate(e.to_string()))?;
            let verdict = if lfs {
                NormalityVerdict::Normal
            } else {
                NormalityVerdict::NotNormal
            };
            return Ok(report(verdict, 0.0, "exact-lfs"));
        }
    }

    if let Symbol::Series(t) = &w.phi {
        let nonconstant = t.trimmed_degree(1e-12) >= 1;
        if nonconstant {
            if let Some((a, b)) = non_univalence_witness(t) {
                let detail = format!("non-univalence witness phi({a}) = phi({b})");
                let mut rep = report(NormalityVerdict::NotNormal, 0.0, "non-univalence");
                rep.certificate = detail;
                return Ok(rep);
            }
        }
    }

    let a = finite_section(w, n)?.mat;
    let scale = spectral_norm(&a)?.powi(2).max(f64::MIN_POSITIVE);
    let comm = a.adjoint() * &a - &a * a.adjoint();
    let defect = spectral_norm(&central_block(&comm))?;
    let rel = defect / scale;
    let verdict = if rel < tol {
        NormalityVerdict::Normal
    } else if rel <= 10.0 * tol {
        NormalityVerdict::Inconclusive
    } else {
        NormalityVerdict::NotNormal
    };
    Ok(report(verdict, defect, "commutator"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckVerdict {
    Holds,
    Fails,
    Inconclusive,
}

/// Outcome of a unitarity or Hermitian test.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OperatorCheck {
    pub verdict: CheckVerdict,
    pub defect: f64,
    pub tolerance: f64,
    pub certificate: String,
    #[serde(rename = "N")]
    pub dimension: usize,
}

impl OperatorCheck {
    pub fn holds(&self) -> bool {
        self.verdict == CheckVerdict::Holds
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

/// Unitarity test. Exact path: the symbol must be an automorphism and the
/// weight a unimodular multiple of the normalized kernel at the preimage of
/// zero. Numeric path: central-block defects of `A*A - I` and `AA* - I`.
pub fn is_unitary(w: &WcoSpec, n: usize, tol: f64) -> Result<OperatorCheck, OperatorError> {
    let report = |verdict, defect, certificate: &str| OperatorCheck {
        verdict,
        defect,
        tolerance: tol,
        certificate: certificate.to_string(),
        dimension: n,
    };

    if let Some(pair) = w.exact_pair() {
        let tol_eq = w.mode.coeff_tol();
        let phi = pair.symbol();
        if phi.constant_value().is_some() || !phi.is_automorphism() {
            return Ok(report(CheckVerdict::Fails, 0.0, "not-automorphism"));
        }
        let beta = phi.inverse()?.eval(Complex64::ZERO);
        let Some(ratio) = synthesis::weight_kernel_ratio(pair.weight(), beta, tol_eq) else {
            return Ok(report(CheckVerdict::Fails, 0.0, "weight-form"));
        };
        // psi = c sqrt(1-|beta|^2) K_beta demands |ratio|^2 = 1 - |beta|^2
        let defect = (ratio.norm_sqr() - (1.0 - beta.norm_sqr())).abs();
        if defect <= tol_eq {
            return Ok(report(CheckVerdict::Holds, 0.0, "exact-uwco"));
        }
        return Ok(report(CheckVerdict::Fails, defect, "weight-modulus"));
    }

    let a = finite_section(w, n)?.mat;
    let eye = DMatrix::<Complex64>::identity(n, n);
    let d1 = spectral_norm(&central_block(&(a.adjoint() * &a - &eye)))?;
    let d2 = spectral_norm(&central_block(&(&a * a.adjoint() - &eye)))?;
    let defect = d1.max(d2);
    let verdict = if defect < tol {
        CheckVerdict::Holds
    } else {
        CheckVerdict::Fails
    };
    Ok(report(verdict, defect, "section-isometry"))
}

/// Hermitian test by the central-block defect of `A - A*` relative to the
/// section norm.
pub fn is_hermitian(w: &WcoSpec, n: usize, tol: f64) -> Result<OperatorCheck, OperatorError> {
    let a = finite_section(w, n)?.mat;
    let scale = spectral_norm(&a)?.max(f64::MIN_POSITIVE);
    let defect = spectral_norm(&central_block(&(&a - a.adjoint())))?;
    let verdict = if defect < tol * scale {
        CheckVerdict::Holds
    } else {
        CheckVerdict::Fails
    };
    Ok(OperatorCheck {
        verdict,
        defect,
        tolerance: tol,
        certificate: "section-symmetry".to_string(),
        dimension: n,
    })
}
