//! Constructors for the unitary and normal weight/symbol pairs and the exact
//! coefficient-level equality checks behind them.
//!
//! Every pair built here carries a linear fractional weight together with a
//! linear fractional disc selfmap, so the testers can certify properties by
//! finite rational-function algebra instead of matrix defects.

use num_complex::Complex64;
use thiserror::Error;

use crate::hardy::kernel_norm;
use crate::mobius::{MobiusError, MobiusMap};
use crate::operator::{
    central_block, finite_section, spectral_norm, EqMode, OperatorError, WcoSpec,
};

#[derive(Error, Debug, Clone, PartialEq)]
pub enum SynthesisError {
    #[error(transparent)]
    Mobius(#[from] MobiusError),
    #[error("symbol is not an automorphism of the disc")]
    NotAutomorphism,
    #[error("free scalar must be unimodular")]
    NotUnimodular,
    #[error("fixed point must lie in the open unit disc")]
    PointNotInDisc,
    #[error("derivative parameter must satisfy |delta| <= 1")]
    DeltaTooLarge,
    #[error("translation parameter must satisfy Re(t) >= 0 and t != 0")]
    InvalidTranslation,
    #[error("symbol has no fixed point in the open disc")]
    NoInteriorFixedPoint,
    #[error("weight denominator has a zero in the closed unit disc")]
    WeightPole,
    #[error("symbol is not a selfmap of the unit disc")]
    NotSelfmap,
    #[error(transparent)]
    Operator(Box<OperatorError>),
}

impl From<OperatorError> for SynthesisError {
    fn from(e: OperatorError) -> Self {
        SynthesisError::Operator(Box::new(e))
    }
}

/// A weighted composition pair with both symbols linear fractional. The
/// weight is a rational function of degree at most one whose denominator has
/// no zero in the closed disc; the symbol maps the disc into itself.
#[derive(Debug, Clone, PartialEq)]
pub struct LftWco {
    weight: MobiusMap,
    symbol: MobiusMap,
}

impl LftWco {
    pub fn new(weight: MobiusMap, symbol: MobiusMap) -> Result<Self, SynthesisError> {
        let [d0, d1] = weight.denominator();
        if d1.norm() > 0.0 && (d0 / d1).norm() <= 1.0 {
            return Err(SynthesisError::WeightPole);
        }
        let symbol_ok = match symbol.constant_value() {
            Some(v) => v.norm() < 1.0,
            None => symbol.is_disc_selfmap()?,
        };
        if !symbol_ok {
            return Err(SynthesisError::NotSelfmap);
        }
        Ok(LftWco { weight, symbol })
    }

    pub fn weight(&self) -> &MobiusMap {
        &self.weight
    }

    pub fn symbol(&self) -> &MobiusMap {
        &self.symbol
    }

    pub fn weight_num(&self) -> [Complex64; 2] {
        self.weight.numerator()
    }

    pub fn weight_den(&self) -> [Complex64; 2] {
        self.weight.denominator()
    }

    pub fn to_spec(&self) -> Result<WcoSpec, OperatorError> {
        WcoSpec::exact(self.weight, self.symbol)
    }
}

/// `psi = c sqrt(1 - |beta|^2) K_beta` over the automorphism `phi`, where
/// `phi(beta) = 0`; the resulting operator is unitary.
pub fn unitary_pair(phi: &MobiusMap, c: Complex64) -> Result<LftWco, SynthesisError> {
    if !phi.is_automorphism() {
        return Err(SynthesisError::NotAutomorphism);
    }
    if (c.norm() - 1.0).abs() > 1e-12 {
        return Err(SynthesisError::NotUnimodular);
    }
    let beta = phi.inverse()?.eval(Complex64::ZERO);
    debug_assert!(beta.norm() < 1.0);
    let scale = c * (1.0 - beta.norm_sqr()).sqrt();
    let weight = MobiusMap::new(
        Complex64::ZERO,
        scale,
        -beta.conj(),
        Complex64::new(1.0, 0.0),
    )?;
    LftWco::new(weight, *phi)
}

/// The interior fixed-point normal family: `phi` fixes `p` with derivative
/// `delta`, and `psi = gamma K_p / (K_p . phi)`. Reduced coefficients:
/// `phi = (p(1-delta) + (delta - |p|^2) z) / (1 - |p|^2 delta + conj(p)(delta - 1) z)`,
/// `psi = gamma (1 - |p|^2) / (1 - |p|^2 delta - conj(p)(1 - delta) z)`.
///
/// `delta = 0` collapses the symbol to the constant `p` (a rank-one
/// operator); `delta = 1` gives the identity symbol with constant weight.
pub fn normal_pair_interior(
    p: Complex64,
    delta: Complex64,
    gamma: Complex64,
) -> Result<LftWco, SynthesisError> {
    if p.norm() >= 1.0 {
        return Err(SynthesisError::PointNotInDisc);
    }
    if delta.norm() > 1.0 + 1e-12 {
        return Err(SynthesisError::DeltaTooLarge);
    }
    let one = Complex64::new(1.0, 0.0);
    let psq = Complex64::new(p.norm_sqr(), 0.0);
    let symbol = MobiusMap::new(
        delta - psq,
        p * (one - delta),
        p.conj() * (delta - one),
        one - psq * delta,
    )?;
    let weight = MobiusMap::new(
        Complex64::ZERO,
        gamma * (one - psq),
        -p.conj() * (one - delta),
        one - psq * delta,
    )?;
    LftWco::new(weight, symbol)
}

/// The parabolic kernel-weight family: `phi` is the canonical parabolic map
/// with translation `t` and `psi = rho K_{sigma(0)}`, which reduces to
/// `rho (2+t) / ((2+t) - t z)`. Normal for every admissible `t`.
pub fn normal_pair_parabolic(t: Complex64, rho: Complex64) -> Result<LftWco, SynthesisError> {
    let symbol = MobiusMap::canonical_parabolic(t).map_err(|e| match e {
        MobiusError::InvalidTranslation => SynthesisError::InvalidTranslation,
        other => SynthesisError::Mobius(other),
    })?;
    let sigma0 = symbol.cowen_aux()?.sigma.eval(Complex64::ZERO);
    debug_assert!(sigma0.norm() < 1.0);
    let weight = MobiusMap::new(
        Complex64::ZERO,
        rho,
        -sigma0.conj(),
        Complex64::new(1.0, 0.0),
    )?;
    LftWco::new(weight, symbol)
}

/// Result of testing a pair against the interior fixed-point normal form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IfpnMatch {
    pub matches: bool,
    pub fixed_point: Complex64,
    pub derivative: Complex64,
    pub weight_value: Complex64,
}

/// If the weight equals `rho K_beta` for a scalar `rho`, return `rho`.
///
/// Decided by cross-multiplication: `psi (1 - conj(beta) z)` must be a scalar
/// multiple of `1`, i.e. proportional to the weight denominator.
pub fn weight_kernel_ratio(psi: &MobiusMap, beta: Complex64, tol: f64) -> Option<Complex64> {
    let [n0, n1] = psi.numerator();
    let [d0, d1] = psi.denominator();
    let bc = beta.conj();
    // u = num * (1 - conj(beta) z), degree <= 2; v = den padded to degree 2
    let u = [n0, n1 - n0 * bc, -n1 * bc];
    let v = [d0, d1, Complex64::ZERO];
    let scale = u
        .iter()
        .chain(v.iter())
        .map(|z| z.norm())
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE);
    for i in 0..3 {
        for j in (i + 1)..3 {
            if (u[i] * v[j] - u[j] * v[i]).norm() > tol * scale * scale {
                return None;
            }
        }
    }
    // ratio read off at the largest denominator coefficient
    let (ui, vi) = if d0.norm() >= d1.norm() {
        (u[0], v[0])
    } else {
        (u[1], v[1])
    };
    if vi.norm() == 0.0 {
        return None;
    }
    Some(ui / vi)
}

/// Equality of two rational functions of degree at most one, by
/// cross-multiplied polynomial comparison. `tol = 0` demands bitwise
/// equality of the cross products.
pub fn rational_eq(w1: &MobiusMap, w2: &MobiusMap, tol: f64) -> bool {
    let [n0, n1] = w1.numerator();
    let [d0, d1] = w1.denominator();
    let [m0, m1] = w2.numerator();
    let [e0, e1] = w2.denominator();
    let lhs = [n0 * e0, n0 * e1 + n1 * e0, n1 * e1];
    let rhs = [m0 * d0, m0 * d1 + m1 * d0, m1 * d1];
    let scale = lhs
        .iter()
        .chain(rhs.iter())
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    if scale == 0.0 {
        return true;
    }
    if tol == 0.0 {
        return lhs == rhs;
    }
    lhs.iter()
        .zip(rhs.iter())
        .all(|(a, b)| (a - b).norm() <= tol * scale)
}

/// Test a pair against the interior fixed-point normal form: extract the
/// fixed point `p`, `delta = phi'(p)`, `gamma = psi(p)`, and compare both
/// symbols against the reduced rational forms.
pub fn matches_ifpn(w: &LftWco) -> Result<IfpnMatch, SynthesisError> {
    let tol = EqMode::Exact.coeff_tol();
    let (p, delta) = if let Some(v) = w.symbol.constant_value() {
        if v.norm() >= 1.0 {
            return Err(SynthesisError::NoInteriorFixedPoint);
        }
        (v, Complex64::ZERO)
    } else {
        let class = w.symbol.classify()?;
        match class.interior_fixed_point() {
            Some(p) => (p, class.derivative().unwrap()),
            None => return Err(SynthesisError::NoInteriorFixedPoint),
        }
    };
    let gamma = w.weight.eval(p);
    let expected = match normal_pair_interior(p, delta, gamma) {
        Ok(e) => e,
        Err(_) => {
            return Ok(IfpnMatch {
                matches: false,
                fixed_point: p,
                derivative: delta,
                weight_value: gamma,
            })
        }
    };
    let symbol_ok = w.symbol.same_function(expected.symbol(), tol);
    let weight_ok = rational_eq(&w.weight, expected.weight(), tol);
    Ok(IfpnMatch {
        matches: symbol_ok && weight_ok,
        fixed_point: p,
        derivative: delta,
        weight_value: gamma,
    })
}

/// The boundary commutation condition for the kernel weight `K_{sigma(0)}`:
/// the two composed pairs
/// `(|d|^2 / (|d|^2 - |b|^2 - (conj(b)a - conj(d)c) z), sigma . phi)` and
/// `(|d|^2 / (|d|^2 - |c|^2 - (conj(b)d - c conj(a)) z), phi . sigma)` must
/// agree. Scale-invariant in the coefficients of `phi`.
pub fn lfs_condition(phi: &MobiusMap) -> Result<bool, SynthesisError> {
    if phi.is_constant() {
        return Err(SynthesisError::NotSelfmap);
    }
    if !phi.is_disc_selfmap()? {
        return Err(SynthesisError::NotSelfmap);
    }
    let (a, b, c, d) = phi.coeffs();
    let sigma = phi.cowen_aux()?.sigma;
    let dd = Complex64::new(d.norm_sqr(), 0.0);
    let left_den = [
        dd - Complex64::new(b.norm_sqr(), 0.0),
        -(b.conj() * a - d.conj() * c),
    ];
    let right_den = [
        dd - Complex64::new(c.norm_sqr(), 0.0),
        -(b.conj() * d - c * a.conj()),
    ];
    let left_weight = MobiusMap::new(Complex64::ZERO, dd, left_den[1], left_den[0])?;
    let right_weight = MobiusMap::new(Complex64::ZERO, dd, right_den[1], right_den[0])?;
    let left_symbol = sigma.compose(phi)?;
    let right_symbol = phi.compose(&sigma)?;
    Ok(operator_equality_lft(
        &left_weight,
        &left_symbol,
        &right_weight,
        &right_symbol,
        EqMode::Numeric,
    ))
}

/// Equality of two weighted composition operators with linear fractional
/// data: the weights must agree as rational functions and the symbols as
/// normalized maps. Applying both operators to `1` and to `z` shows the
/// condition is necessary as well as sufficient.
pub fn operator_equality_lft(
    w1: &MobiusMap,
    tau1: &MobiusMap,
    w2: &MobiusMap,
    tau2: &MobiusMap,
    mode: EqMode,
) -> bool {
    let (wtol, mtol) = match mode {
        EqMode::Exact => (0.0, 0.0),
        EqMode::Numeric => (1e-10, 1e-10),
    };
    rational_eq(w1, w2, wtol) && tau1.same_function(tau2, mtol)
}

/// Defect of the conjugation identity: the section product
/// `W_{psi_p, alpha_p} C_{delta z} W_{psi_p, alpha_p}^*` against the section
/// of the interior normal pair at `(p, delta)`, measured on the central
/// block. The adjoint factor is itself a weighted composition pair
/// `((1/||K_p||) g, alpha_p)` with `g = K_p`.
pub fn conjugation_check(p: Complex64, delta: Complex64, n: usize) -> Result<f64, SynthesisError> {
    if p.norm() >= 1.0 {
        return Err(SynthesisError::PointNotInDisc);
    }
    if delta.norm() > 1.0 + 1e-12 {
        return Err(SynthesisError::DeltaTooLarge);
    }
    if n < 16 {
        return Err(SynthesisError::Operator(Box::new(
            OperatorError::DimensionTooSmall { n, min: 16 },
        )));
    }
    let alpha = MobiusMap::alpha(p)?;
    let mu = 1.0 / kernel_norm(p).map_err(OperatorError::Hardy)?;
    let kernel_weight = MobiusMap::new(
        Complex64::ZERO,
        Complex64::new(mu, 0.0),
        -p.conj(),
        Complex64::new(1.0, 0.0),
    )?;
    let u = finite_section(&WcoSpec::exact(kernel_weight, alpha)?, n)?;
    let diag = finite_section(
        &WcoSpec::exact(
            MobiusMap::constant(Complex64::new(1.0, 0.0)),
            MobiusMap::dilation(delta),
        )?,
        n,
    )?;
    let v = finite_section(&WcoSpec::exact(kernel_weight, alpha)?, n)?;
    let target = finite_section(
        &normal_pair_interior(p, delta, Complex64::new(1.0, 0.0))?.to_spec()?,
        n,
    )?;
    let product = u.matrix() * diag.matrix() * v.matrix();
    let diff = product - target.matrix();
    Ok(spectral_norm(&central_block(&diff))?)
}
