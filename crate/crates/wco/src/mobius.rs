//! Linear fractional maps of the unit disc: algebra, geometry, and
//! Denjoy-Wolff classification.
//!
//! A map `z -> (az + b)/(cz + d)` is stored with its coefficients scaled
//! so the largest-modulus coefficient is exactly `1`, which makes equality
//! of maps a coefficient comparison. Degenerate coefficient tuples whose
//! numerator is a scalar multiple of the denominator are admitted and
//! flagged as constant maps; they arise naturally as limits of the disc
//! selfmap families built here (e.g. a fixed-point contraction with zero
//! derivative collapses to its fixed point).

use num_complex::Complex64;
use thiserror::Error;

/// Tolerance for coefficient equality of normalized maps.
pub const COEFF_TOL: f64 = 1e-12;
/// Tolerance for geometric predicates (boundary membership, fixed-point snapping).
pub const GEOM_TOL: f64 = 1e-10;
/// Determinant threshold below which a normalized coefficient tuple is constant.
const DEGENERACY_TOL: f64 = 1e-13;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum MobiusError {
    #[error("coefficients are not finite")]
    NonFinite,
    #[error("degenerate coefficients: the denominator vanishes identically")]
    Degenerate,
    #[error("operation requires a nonconstant map")]
    ConstantMap,
    #[error("operation requires a map other than the identity")]
    IdentityMap,
    #[error("map is not a selfmap of the unit disc")]
    NotSelfmap,
    #[error("point lies outside the open unit disc")]
    PointNotInDisc,
    #[error("translation parameter must satisfy Re(t) >= 0 and t != 0")]
    InvalidTranslation,
    #[error("parameters must satisfy r > 1 and Re(t) >= 0")]
    InvalidParameters,
}

/// A linear fractional map `z -> (az + b)/(cz + d)`, normalized so the
/// first coefficient of largest modulus (in the order a, b, c, d) equals 1.
///
/// The same type doubles as a rational function of degree at most one in
/// numerator and denominator; the weight functions of this crate are
/// carried this way. Joint rescaling of all four coefficients does not
/// change the function, so normalization is harmless for weights.
#[derive(Debug, Clone, Copy)]
pub struct MobiusMap {
    a: Complex64,
    b: Complex64,
    c: Complex64,
    d: Complex64,
}

impl MobiusMap {
    pub fn new(
        a: Complex64,
        b: Complex64,
        c: Complex64,
        d: Complex64,
    ) -> Result<Self, MobiusError> {
        for z in [a, b, c, d] {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(MobiusError::NonFinite);
            }
        }
        let coeffs = [a, b, c, d];
        let max = coeffs.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if max == 0.0 {
            return Err(MobiusError::Degenerate);
        }
        // ties broken by coefficient order; the tie test tolerates rounding
        // so different construction routes of one map normalize alike
        let pivot = coeffs
            .iter()
            .find(|z| z.norm() >= max * (1.0 - 1e-12))
            .copied()
            .unwrap();
        let m = MobiusMap {
            a: a / pivot,
            b: b / pivot,
            c: c / pivot,
            d: d / pivot,
        };
        if m.c.norm() <= DEGENERACY_TOL && m.d.norm() <= DEGENERACY_TOL {
            return Err(MobiusError::Degenerate);
        }
        Ok(m)
    }

    pub fn identity() -> Self {
        MobiusMap::new(
            Complex64::new(1.0, 0.0),
            Complex64::ZERO,
            Complex64::ZERO,
            Complex64::new(1.0, 0.0),
        )
        .unwrap()
    }

    /// `z -> delta z` (rotation when |delta| = 1, dilation otherwise).
    pub fn dilation(delta: Complex64) -> Self {
        MobiusMap::new(
            delta,
            Complex64::ZERO,
            Complex64::ZERO,
            Complex64::new(1.0, 0.0),
        )
        .unwrap()
    }

    /// The constant map `z -> v`.
    pub fn constant(v: Complex64) -> Self {
        MobiusMap::new(
            Complex64::ZERO,
            v,
            Complex64::ZERO,
            Complex64::new(1.0, 0.0),
        )
        .unwrap()
    }

    /// The self-inverse disc automorphism `alpha_p(z) = (p - z)/(1 - conj(p) z)`
    /// exchanging `p` and `0`.
    pub fn alpha(p: Complex64) -> Result<Self, MobiusError> {
        if p.norm() >= 1.0 {
            return Err(MobiusError::PointNotInDisc);
        }
        MobiusMap::new(
            Complex64::new(-1.0, 0.0),
            p,
            -p.conj(),
            Complex64::new(1.0, 0.0),
        )
    }

    /// The Cayley-type map `T(z) = (1 + z)/(1 - z)` taking the disc onto the
    /// right halfplane.
    pub fn halfplane_transfer() -> Self {
        MobiusMap::new(
            Complex64::new(1.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(-1.0, 0.0),
            Complex64::new(1.0, 0.0),
        )
        .unwrap()
    }

    /// The parabolic selfmap fixing 1 obtained by conjugating the halfplane
    /// translation `w -> w + t`: `((2-t)z + t) / (-tz + (2+t))`.
    ///
    /// An automorphism exactly when `Re(t) = 0`.
    pub fn canonical_parabolic(t: Complex64) -> Result<Self, MobiusError> {
        if t.re < 0.0 || t.norm() == 0.0 {
            return Err(MobiusError::InvalidTranslation);
        }
        let two = Complex64::new(2.0, 0.0);
        MobiusMap::new(two - t, t, -t, two + t)
    }

    /// The hyperbolic selfmap fixing 1 with derivative `1/r` there, obtained
    /// by conjugating `w -> rw + t`: `((1+r-t)z + r+t-1) / ((r-t-1)z + 1+r+t)`.
    ///
    /// An automorphism exactly when `Re(t) = 0`.
    pub fn canonical_hyperbolic(r: f64, t: Complex64) -> Result<Self, MobiusError> {
        let r_valid = r.is_finite() && r > 1.0;
        if !r_valid || t.re < 0.0 {
            return Err(MobiusError::InvalidParameters);
        }
        let r = Complex64::new(r, 0.0);
        let one = Complex64::new(1.0, 0.0);
        MobiusMap::new(one + r - t, r + t - one, r - t - one, one + r + t)
    }

    pub fn coeffs(&self) -> (Complex64, Complex64, Complex64, Complex64) {
        (self.a, self.b, self.c, self.d)
    }

    /// Numerator coefficients `[b, a]` of `b + a z`.
    pub fn numerator(&self) -> [Complex64; 2] {
        [self.b, self.a]
    }

    /// Denominator coefficients `[d, c]` of `d + c z`.
    pub fn denominator(&self) -> [Complex64; 2] {
        [self.d, self.c]
    }

    pub fn det(&self) -> Complex64 {
        self.a * self.d - self.b * self.c
    }

    pub fn is_constant(&self) -> bool {
        self.det().norm() <= DEGENERACY_TOL
    }

    /// Value of a constant map, `None` for nonconstant maps.
    pub fn constant_value(&self) -> Option<Complex64> {
        if !self.is_constant() {
            return None;
        }
        if self.d.norm() >= self.c.norm() {
            Some(self.b / self.d)
        } else {
            Some(self.a / self.c)
        }
    }

    pub fn is_identity(&self) -> bool {
        self.approx_eq(&MobiusMap::identity(), COEFF_TOL)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        (self.a * z + self.b) / (self.c * z + self.d)
    }

    /// `phi'(z) = (ad - bc)/(cz + d)^2`.
    pub fn derivative_at(&self, z: Complex64) -> Complex64 {
        let den = self.c * z + self.d;
        self.det() / (den * den)
    }

    /// Entrywise comparison of normalized coefficient tuples.
    pub fn approx_eq(&self, other: &MobiusMap, tol: f64) -> bool {
        (self.a - other.a).norm() <= tol
            && (self.b - other.b).norm() <= tol
            && (self.c - other.c).norm() <= tol
            && (self.d - other.d).norm() <= tol
    }

    /// Equality as functions: projective cross-product comparison for
    /// nonconstant maps (immune to pivot choice), value comparison when both
    /// sides are constant.
    pub fn same_function(&self, other: &MobiusMap, tol: f64) -> bool {
        match (self.constant_value(), other.constant_value()) {
            (Some(u), Some(v)) => (u - v).norm() <= tol,
            (None, None) => {
                let u = [self.a, self.b, self.c, self.d];
                let v = [other.a, other.b, other.c, other.d];
                for i in 0..4 {
                    for j in (i + 1)..4 {
                        if (u[i] * v[j] - u[j] * v[i]).norm() > tol {
                            return false;
                        }
                    }
                }
                true
            }
            _ => false,
        }
    }

    /// Composition `self . other` (apply `other` first), via the coefficient
    /// matrix product.
    pub fn compose(&self, other: &MobiusMap) -> Result<MobiusMap, MobiusError> {
        if self.is_constant() || other.is_constant() {
            return Err(MobiusError::ConstantMap);
        }
        let m = MobiusMap::new(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )?;
        debug_assert!(
            !m.is_constant(),
            "composition of nondegenerate maps is nondegenerate"
        );
        Ok(m)
    }

    /// The inverse map, from the adjugate coefficient matrix.
    pub fn inverse(&self) -> Result<MobiusMap, MobiusError> {
        if self.is_constant() {
            return Err(MobiusError::ConstantMap);
        }
        MobiusMap::new(self.d, -self.b, -self.c, self.a)
    }

    /// Image of the unit circle: `Some((center, radius))` when the image is a
    /// circle, `None` when it is a line (pole on the unit circle).
    pub fn boundary_image(&self) -> Result<Option<(Complex64, f64)>, MobiusError> {
        if self.is_constant() {
            return Err(MobiusError::ConstantMap);
        }
        let (a, b, c, d) = (self.a, self.b, self.c, self.d);
        let denom = d.norm_sqr() - c.norm_sqr();
        if denom.abs() <= GEOM_TOL {
            return Ok(None);
        }
        let center = (b * d.conj() - a * c.conj()) / denom;
        let radius = self.det().norm() / denom.abs();
        Ok(Some((center, radius)))
    }

    /// Whether the map sends the open disc into itself, decided from the
    /// exact image circle of the boundary.
    pub fn is_disc_selfmap(&self) -> Result<bool, MobiusError> {
        let image = self.boundary_image()?;
        let Some((center, radius)) = image else {
            return Ok(false); // boundary maps to a line; image of the disc is unbounded
        };
        // pole inside the disc sends the disc to the exterior of the image circle
        if self.c.norm() > 0.0 {
            let pole = -self.d / self.c;
            if pole.norm() <= 1.0 + GEOM_TOL {
                return Ok(false);
            }
        }
        Ok(center.norm() + radius <= 1.0 + COEFF_TOL)
    }

    /// Whether the map is a disc automorphism: the boundary image circle is
    /// the unit circle itself.
    pub fn is_automorphism(&self) -> bool {
        match self.boundary_image() {
            Ok(Some((center, radius))) => {
                center.norm() <= COEFF_TOL && (radius - 1.0).abs() <= COEFF_TOL && {
                    // exclude maps sending the disc to the exterior
                    self.c.norm() == 0.0 || (-self.d / self.c).norm() > 1.0
                }
            }
            _ => false,
        }
    }

    /// Fixed points: the roots of `c z^2 + (d - a) z - b = 0`, with the point
    /// at infinity standing in when the quadratic degenerates.
    pub fn fixed_points(&self) -> Result<FixedPointSet, MobiusError> {
        if self.is_constant() {
            // a constant map fixes exactly its value
            return Ok(FixedPointSet {
                points: vec![FixedPoint::Finite(self.constant_value().unwrap())],
                double: false,
            });
        }
        if self.is_identity() {
            return Err(MobiusError::IdentityMap);
        }
        let a2 = self.c;
        let a1 = self.d - self.a;
        let a0 = -self.b;
        if a2.norm() <= DEGENERACY_TOL {
            if a1.norm() <= DEGENERACY_TOL {
                // translation-like: only infinity is fixed, with multiplicity two
                return Ok(FixedPointSet {
                    points: vec![FixedPoint::Infinity],
                    double: true,
                });
            }
            return Ok(FixedPointSet {
                points: vec![FixedPoint::Finite(-a0 / a1), FixedPoint::Infinity],
                double: false,
            });
        }
        let disc = a1 * a1 - 4.0 * a2 * a0;
        let scale = a1.norm_sqr() + (a2 * a0).norm();
        if disc.norm() <= 1e-24_f64.max(1e-14 * scale) {
            return Ok(FixedPointSet {
                points: vec![FixedPoint::Finite(-a1 / (2.0 * a2))],
                double: true,
            });
        }
        let sq = disc.sqrt();
        // pick the sign that avoids cancellation
        let q = if (a1 + sq).norm() >= (a1 - sq).norm() {
            -(a1 + sq) / 2.0
        } else {
            -(a1 - sq) / 2.0
        };
        let r1 = q / a2;
        let r2 = a0 / q;
        Ok(FixedPointSet {
            points: vec![FixedPoint::Finite(r1), FixedPoint::Finite(r2)],
            double: false,
        })
    }

    /// Denjoy-Wolff classification of a disc selfmap.
    pub fn classify(&self) -> Result<MapClass, MobiusError> {
        if self.is_constant() {
            let v = self.constant_value().unwrap();
            if v.norm() < 1.0 {
                return Ok(MapClass::Constant { value: v });
            }
            return Err(MobiusError::NotSelfmap);
        }
        if self.is_identity() {
            return Ok(MapClass::Identity);
        }
        if !self.is_disc_selfmap()? {
            return Err(MobiusError::NotSelfmap);
        }
        let fixed = self.fixed_points()?;
        // interior fixed point wins
        for p in &fixed.points {
            if let FixedPoint::Finite(z) = p {
                if z.norm() < 1.0 - GEOM_TOL {
                    let deriv = self.derivative_at(*z);
                    if deriv.norm() < 1.0 - GEOM_TOL {
                        return Ok(MapClass::InteriorDw {
                            point: *z,
                            derivative: deriv,
                        });
                    }
                    return Ok(MapClass::EllipticAutomorphism {
                        point: *z,
                        derivative: deriv,
                    });
                }
            }
        }
        // boundary Denjoy-Wolff point: the boundary fixed point with derivative in (0, 1]
        let mut best: Option<(Complex64, f64)> = None;
        for p in &fixed.points {
            if let FixedPoint::Finite(z) = p {
                if (z.norm() - 1.0).abs() <= GEOM_TOL {
                    let omega = z / z.norm();
                    let deriv = self.derivative_at(omega);
                    debug_assert!(
                        deriv.im.abs() <= 1e-8,
                        "boundary derivative of a selfmap at its fixed point is real"
                    );
                    let d = deriv.re;
                    if d > 0.0 && d <= 1.0 + GEOM_TOL && best.is_none_or(|(_, bd)| d < bd) {
                        best = Some((omega, d));
                    }
                }
            }
        }
        let Some((omega, d)) = best else {
            return Err(MobiusError::NotSelfmap);
        };
        let auto = self.is_automorphism();
        if (d - 1.0).abs() <= GEOM_TOL {
            if auto {
                Ok(MapClass::ParabolicAutomorphism { omega })
            } else {
                Ok(MapClass::ParabolicNonAutomorphism { omega })
            }
        } else if auto {
            Ok(MapClass::HyperbolicAutomorphism {
                omega,
                derivative: d,
            })
        } else {
            Ok(MapClass::HyperbolicNonAutomorphism {
                omega,
                derivative: d,
            })
        }
    }

    /// The adjoint-factorization data `(g, sigma, h)` of a nonconstant
    /// linear fractional selfmap: `g(z) = 1/(-conj(b) z + conj(d))`,
    /// `sigma(z) = (conj(a) z - conj(c))/(-conj(b) z + conj(d))`, and
    /// `h(z) = cz + d`.
    ///
    /// `g` and `h` scale with the coefficient representation while only the
    /// operator product is invariant, so the triple is computed on the
    /// `d = 1` rescaling; a selfmap always has `|d| > |c| >= 0`.
    pub fn cowen_aux(&self) -> Result<CowenTriple, MobiusError> {
        if self.is_constant() {
            return Err(MobiusError::ConstantMap);
        }
        if !self.is_disc_selfmap()? {
            return Err(MobiusError::NotSelfmap);
        }
        let (a, b, c) = (self.a / self.d, self.b / self.d, self.c / self.d);
        let d = Complex64::new(1.0, 0.0);
        let g = MobiusMap::new(
            Complex64::ZERO,
            Complex64::new(1.0, 0.0),
            -b.conj(),
            d.conj(),
        )?;
        let sigma = MobiusMap::new(a.conj(), -c.conj(), -b.conj(), d.conj())?;
        let h = MobiusMap::new(c, d, Complex64::ZERO, Complex64::new(1.0, 0.0))?;
        Ok(CowenTriple { g, sigma, h })
    }
}

impl PartialEq for MobiusMap {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a && self.b == other.b && self.c == other.c && self.d == other.d
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FixedPoint {
    Finite(Complex64),
    Infinity,
}

/// Fixed points of a nonidentity map; `double` marks a vanishing discriminant.
#[derive(Debug, Clone, PartialEq)]
pub struct FixedPointSet {
    pub points: Vec<FixedPoint>,
    pub double: bool,
}

impl FixedPointSet {
    pub fn finite(&self) -> Vec<Complex64> {
        self.points
            .iter()
            .filter_map(|p| match p {
                FixedPoint::Finite(z) => Some(*z),
                FixedPoint::Infinity => None,
            })
            .collect()
    }
}

/// Dynamical type of a disc selfmap, keyed by the Denjoy-Wolff point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MapClass {
    Identity,
    Constant {
        value: Complex64,
    },
    InteriorDw {
        point: Complex64,
        derivative: Complex64,
    },
    EllipticAutomorphism {
        point: Complex64,
        derivative: Complex64,
    },
    ParabolicAutomorphism {
        omega: Complex64,
    },
    ParabolicNonAutomorphism {
        omega: Complex64,
    },
    HyperbolicAutomorphism {
        omega: Complex64,
        derivative: f64,
    },
    HyperbolicNonAutomorphism {
        omega: Complex64,
        derivative: f64,
    },
}

impl MapClass {
    /// The Denjoy-Wolff point (the fixed value for constants, unset for the identity).
    pub fn denjoy_wolff(&self) -> Option<Complex64> {
        match self {
            MapClass::Identity => None,
            MapClass::Constant { value } => Some(*value),
            MapClass::InteriorDw { point, .. } | MapClass::EllipticAutomorphism { point, .. } => {
                Some(*point)
            }
            MapClass::ParabolicAutomorphism { omega }
            | MapClass::ParabolicNonAutomorphism { omega } => Some(*omega),
            MapClass::HyperbolicAutomorphism { omega, .. }
            | MapClass::HyperbolicNonAutomorphism { omega, .. } => Some(*omega),
        }
    }

    /// Derivative at the Denjoy-Wolff point.
    pub fn derivative(&self) -> Option<Complex64> {
        match self {
            MapClass::Identity => Some(Complex64::new(1.0, 0.0)),
            MapClass::Constant { .. } => Some(Complex64::ZERO),
            MapClass::InteriorDw { derivative, .. }
            | MapClass::EllipticAutomorphism { derivative, .. } => Some(*derivative),
            MapClass::ParabolicAutomorphism { .. } | MapClass::ParabolicNonAutomorphism { .. } => {
                Some(Complex64::new(1.0, 0.0))
            }
            MapClass::HyperbolicAutomorphism { derivative, .. }
            | MapClass::HyperbolicNonAutomorphism { derivative, .. } => {
                Some(Complex64::new(*derivative, 0.0))
            }
        }
    }

    /// Interior fixed point when one exists (includes the constant's value and
    /// the origin for the identity).
    pub fn interior_fixed_point(&self) -> Option<Complex64> {
        match self {
            MapClass::Identity => Some(Complex64::ZERO),
            MapClass::Constant { value } => Some(*value),
            MapClass::InteriorDw { point, .. } | MapClass::EllipticAutomorphism { point, .. } => {
                Some(*point)
            }
            _ => None,
        }
    }

    pub fn is_automorphism(&self) -> bool {
        matches!(
            self,
            MapClass::Identity
                | MapClass::EllipticAutomorphism { .. }
                | MapClass::ParabolicAutomorphism { .. }
                | MapClass::HyperbolicAutomorphism { .. }
        )
    }

    pub fn label(&self) -> &'static str {
        match self {
            MapClass::Identity => "identity",
            MapClass::Constant { .. } => "constant",
            MapClass::InteriorDw { .. } => "interior_dw",
            MapClass::EllipticAutomorphism { .. } => "elliptic_automorphism",
            MapClass::ParabolicAutomorphism { .. } => "parabolic_automorphism",
            MapClass::ParabolicNonAutomorphism { .. } => "parabolic_nonautomorphism",
            MapClass::HyperbolicAutomorphism { .. } => "hyperbolic_automorphism",
            MapClass::HyperbolicNonAutomorphism { .. } => "hyperbolic_nonautomorphism",
        }
    }
}

/// The factorization data of the adjoint of a linear fractional composition
/// operator: `g` and `h` are rational functions of degree at most one
/// (stored as maps-as-functions), `sigma` is a disc selfmap.
#[derive(Debug, Clone, PartialEq)]
pub struct CowenTriple {
    pub g: MobiusMap,
    pub sigma: MobiusMap,
    pub h: MobiusMap,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn m(a: f64, b: f64, cc: f64, d: f64) -> MobiusMap {
        MobiusMap::new(c(a, 0.0), c(b, 0.0), c(cc, 0.0), c(d, 0.0)).unwrap()
    }

    #[test]
    fn compose_alpha_zero_is_identity() {
        let a0 = MobiusMap::alpha(Complex64::ZERO).unwrap();
        let id = a0.compose(&a0).unwrap();
        assert!(id.is_identity());
    }

    #[test]
    fn compose_dilation_conjugate_at_origin() {
        let a0 = MobiusMap::alpha(Complex64::ZERO).unwrap();
        let inner = MobiusMap::dilation(c(0.5, 0.0)).compose(&a0).unwrap();
        let phi = a0.compose(&inner).unwrap();
        assert!(phi.approx_eq(&MobiusMap::dilation(c(0.5, 0.0)), COEFF_TOL));
    }

    #[test]
    fn compose_contracted_alpha_half() {
        // alpha_{1/2} composed with 0.5*alpha_{1/2} reduces to (2+2z)/(7-2z)
        let ap = MobiusMap::alpha(c(0.5, 0.0)).unwrap();
        let scaled = MobiusMap::dilation(c(0.5, 0.0)).compose(&ap).unwrap();
        let phi = ap.compose(&scaled).unwrap();
        let expected = m(2.0, 2.0, -2.0, 7.0);
        assert!(phi.approx_eq(&expected, COEFF_TOL));
    }

    #[test]
    fn inverse_examples() {
        assert!(MobiusMap::identity().inverse().unwrap().is_identity());
        let ap = MobiusMap::alpha(c(0.3, 0.4)).unwrap();
        assert!(ap.inverse().unwrap().approx_eq(&ap, COEFF_TOL));
        let h = m(2.0, 1.0, 1.0, 2.0);
        let expected = m(2.0, -1.0, -1.0, 2.0);
        assert!(h.inverse().unwrap().approx_eq(&expected, COEFF_TOL));
        let comp = h.compose(&h.inverse().unwrap()).unwrap();
        assert!(comp.is_identity());
    }

    #[test]
    fn disc_selfmap_predicate() {
        assert!(m(1.0, 1.0, 0.0, 2.0).is_disc_selfmap().unwrap()); // (z+1)/2
        assert!(!m(2.0, 0.0, 0.0, 1.0).is_disc_selfmap().unwrap()); // 2z
        assert!(m(2.0, 1.0, 1.0, 2.0).is_disc_selfmap().unwrap()); // (2z+1)/(z+2)
        let constant = MobiusMap::constant(c(0.3, 0.0));
        assert_eq!(constant.is_disc_selfmap(), Err(MobiusError::ConstantMap));
    }

    #[test]
    fn automorphism_predicate() {
        for p in [c(0.0, 0.0), c(0.5, 0.0), c(-0.3, 0.6)] {
            assert!(MobiusMap::alpha(p).unwrap().is_automorphism());
        }
        assert!(!m(1.0, 1.0, 0.0, 2.0).is_automorphism());
        assert!(MobiusMap::canonical_parabolic(c(0.0, 2.0))
            .unwrap()
            .is_automorphism());
        assert!(!MobiusMap::canonical_parabolic(c(1.0, 0.0))
            .unwrap()
            .is_automorphism());
    }

    #[test]
    fn fixed_points_examples() {
        let half = m(1.0, 0.0, 0.0, 2.0);
        let f = half.fixed_points().unwrap();
        assert_eq!(f.points.len(), 2);
        assert_eq!(f.points[0], FixedPoint::Finite(Complex64::ZERO));
        assert_eq!(f.points[1], FixedPoint::Infinity);

        let h = m(2.0, 1.0, 1.0, 2.0);
        let f = h.fixed_points().unwrap();
        let mut pts = f.finite();
        pts.sort_by(|x, y| x.re.partial_cmp(&y.re).unwrap());
        assert!((pts[0] - c(-1.0, 0.0)).norm() < 1e-12);
        assert!((pts[1] - c(1.0, 0.0)).norm() < 1e-12);

        let par = MobiusMap::canonical_parabolic(c(0.0, 2.0)).unwrap();
        let f = par.fixed_points().unwrap();
        assert!(f.double);
        assert_eq!(f.points.len(), 1);
        assert!((f.finite()[0] - c(1.0, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn classify_examples() {
        match m(1.0, 0.0, 0.0, 2.0).classify().unwrap() {
            MapClass::InteriorDw { point, derivative } => {
                assert!(point.norm() < 1e-12);
                assert!((derivative - c(0.5, 0.0)).norm() < 1e-12);
            }
            other => panic!("wrong class {other:?}"),
        }
        match MobiusMap::canonical_parabolic(c(1.0, 0.0))
            .unwrap()
            .classify()
            .unwrap()
        {
            MapClass::ParabolicNonAutomorphism { omega } => {
                assert!((omega - c(1.0, 0.0)).norm() < 1e-10)
            }
            other => panic!("wrong class {other:?}"),
        }
        match m(2.0, 1.0, 1.0, 2.0).classify().unwrap() {
            MapClass::HyperbolicAutomorphism { omega, derivative } => {
                assert!((omega - c(1.0, 0.0)).norm() < 1e-10);
                assert!((derivative - 1.0 / 3.0).abs() < 1e-12);
            }
            other => panic!("wrong class {other:?}"),
        }
        assert_eq!(
            MobiusMap::identity().classify().unwrap(),
            MapClass::Identity
        );
        match MobiusMap::constant(c(0.2, 0.1)).classify().unwrap() {
            MapClass::Constant { value } => assert!((value - c(0.2, 0.1)).norm() < 1e-15),
            other => panic!("wrong class {other:?}"),
        }
        assert_eq!(
            m(2.0, 0.0, 0.0, 1.0).classify(),
            Err(MobiusError::NotSelfmap)
        );
    }

    #[test]
    fn classify_elliptic_automorphism() {
        // alpha_p . (zeta alpha_p) with |zeta| = 1 fixes p with unimodular derivative
        let p = c(0.4, 0.1);
        let zeta = Complex64::from_polar(1.0, 1.2);
        let ap = MobiusMap::alpha(p).unwrap();
        let phi = ap
            .compose(&MobiusMap::dilation(zeta).compose(&ap).unwrap())
            .unwrap();
        match phi.classify().unwrap() {
            MapClass::EllipticAutomorphism { point, derivative } => {
                assert!((point - p).norm() < 1e-10);
                assert!((derivative - zeta).norm() < 1e-10);
            }
            other => panic!("wrong class {other:?}"),
        }
    }

    #[test]
    fn alpha_exchanges_point_and_origin() {
        let p = c(0.5, 0.0);
        let ap = MobiusMap::alpha(p).unwrap();
        assert!(ap.eval(p).norm() < 1e-15);
        assert!((ap.eval(Complex64::ZERO) - p).norm() < 1e-15);
        assert!(MobiusMap::alpha(c(1.2, 0.0)).is_err());
        let a0 = MobiusMap::alpha(Complex64::ZERO).unwrap();
        assert!(a0.approx_eq(&m(-1.0, 0.0, 0.0, 1.0), 0.0));
    }

    #[test]
    fn canonical_parabolic_examples() {
        let t2 = MobiusMap::canonical_parabolic(c(2.0, 0.0)).unwrap();
        assert!(t2.approx_eq(&m(0.0, 2.0, -2.0, 4.0), COEFF_TOL)); // 1/(2-z)
        for t in [c(2.0, 0.0), c(0.0, 2.0), c(1.0, -1.0)] {
            let phi = MobiusMap::canonical_parabolic(t).unwrap();
            assert!((phi.eval(c(1.0, 0.0)) - c(1.0, 0.0)).norm() < 1e-12);
            assert!((phi.derivative_at(c(1.0, 0.0)) - c(1.0, 0.0)).norm() < 1e-12);
            assert!(phi.is_disc_selfmap().unwrap());
        }
        assert_eq!(
            MobiusMap::canonical_parabolic(c(-1.0, 0.0)),
            Err(MobiusError::InvalidTranslation)
        );
        assert_eq!(
            MobiusMap::canonical_parabolic(Complex64::ZERO),
            Err(MobiusError::InvalidTranslation)
        );
    }

    #[test]
    fn canonical_hyperbolic_examples() {
        let h = MobiusMap::canonical_hyperbolic(2.0, Complex64::ZERO).unwrap();
        assert!(h.approx_eq(&m(3.0, 1.0, 1.0, 3.0), COEFF_TOL));
        assert!((h.derivative_at(c(1.0, 0.0)) - c(0.5, 0.0)).norm() < 1e-12);
        for (r, t) in [(2.0, c(0.0, 0.0)), (1.5, c(1.0, 0.5)), (4.0, c(0.0, 2.0))] {
            let phi = MobiusMap::canonical_hyperbolic(r, t).unwrap();
            assert!((phi.eval(c(1.0, 0.0)) - c(1.0, 0.0)).norm() < 1e-12);
            assert!(phi.is_disc_selfmap().unwrap());
        }
        assert!(!MobiusMap::canonical_hyperbolic(2.0, c(1.0, 0.0))
            .unwrap()
            .is_automorphism());
        assert!(MobiusMap::canonical_hyperbolic(2.0, c(0.0, 1.0))
            .unwrap()
            .is_automorphism());
        assert!(MobiusMap::canonical_hyperbolic(0.9, Complex64::ZERO).is_err());
    }

    #[test]
    fn halfplane_conjugation_roundtrip() {
        // T . phi . T^{-1} recovers w -> w + t and w -> rw + t
        let t = c(1.0, 1.0);
        let transfer = MobiusMap::halfplane_transfer();
        let phi = MobiusMap::canonical_parabolic(t).unwrap();
        let lifted = transfer
            .compose(&phi.compose(&transfer.inverse().unwrap()).unwrap())
            .unwrap();
        let translation = MobiusMap::new(c(1.0, 0.0), t, Complex64::ZERO, c(1.0, 0.0)).unwrap();
        assert!(lifted.approx_eq(&translation, 1e-12));

        let r = 2.5;
        let phi = MobiusMap::canonical_hyperbolic(r, t).unwrap();
        let lifted = transfer
            .compose(&phi.compose(&transfer.inverse().unwrap()).unwrap())
            .unwrap();
        let affine = MobiusMap::new(c(r, 0.0), t, Complex64::ZERO, c(1.0, 0.0)).unwrap();
        assert!(lifted.approx_eq(&affine, 1e-12));
    }

    #[test]
    fn cowen_aux_examples() {
        let p = c(0.5, 0.0);
        let ap = MobiusMap::alpha(p).unwrap();
        let triple = ap.cowen_aux().unwrap();
        assert!(triple.sigma.approx_eq(&ap, COEFF_TOL));
        // g = 1/(1 - conj(p) z), h = 1 - conj(p) z
        let g = MobiusMap::new(Complex64::ZERO, c(1.0, 0.0), -p.conj(), c(1.0, 0.0)).unwrap();
        assert!(triple.g.approx_eq(&g, COEFF_TOL));
        let h = MobiusMap::new(-p.conj(), c(1.0, 0.0), Complex64::ZERO, c(1.0, 0.0)).unwrap();
        assert!(triple.h.approx_eq(&h, COEFF_TOL));

        // dilation: sigma is the conjugate dilation, g and h are constant
        let d = MobiusMap::dilation(c(0.3, 0.4));
        let triple = d.cowen_aux().unwrap();
        assert!(triple
            .sigma
            .approx_eq(&MobiusMap::dilation(c(0.3, -0.4)), COEFF_TOL));
        assert!(triple.g.is_constant());
        assert!((triple.g.constant_value().unwrap() - c(1.0, 0.0)).norm() < 1e-15);
        assert!(triple.h.is_constant());
    }

    #[test]
    fn cowen_sigma_for_general_automorphism() {
        // eta (beta - z)/(1 - conj(beta) z) has sigma = (beta - conj(eta) z)/(1 - conj(eta beta) z)
        let eta = Complex64::from_polar(1.0, 0.7);
        let beta = c(0.3, -0.2);
        let phi = MobiusMap::new(-eta, eta * beta, -beta.conj(), c(1.0, 0.0)).unwrap();
        let triple = phi.cowen_aux().unwrap();
        let expected =
            MobiusMap::new(-eta.conj(), beta, -(eta * beta).conj(), c(1.0, 0.0)).unwrap();
        assert!(triple.sigma.approx_eq(&expected, COEFF_TOL));
        // for automorphisms sigma is the inverse map
        assert!(triple.sigma.approx_eq(&phi.inverse().unwrap(), COEFF_TOL));
    }

    #[test]
    fn cowen_sigma_is_involutive() {
        let phi = m(2.0, 1.0, 1.0, 3.0);
        let triple = phi.cowen_aux().unwrap();
        let back = triple.sigma.cowen_aux().unwrap();
        assert!(back.sigma.approx_eq(&phi, COEFF_TOL));
    }

    #[test]
    fn degenerate_and_constant_handling() {
        assert_eq!(
            MobiusMap::new(c(1.0, 0.0), c(1.0, 0.0), Complex64::ZERO, Complex64::ZERO),
            Err(MobiusError::Degenerate)
        );
        let k = MobiusMap::constant(c(0.5, 0.5));
        assert!(k.is_constant());
        assert_eq!(k.constant_value(), Some(c(0.5, 0.5)));
        assert_eq!(k.compose(&k), Err(MobiusError::ConstantMap));
        assert_eq!(k.inverse(), Err(MobiusError::ConstantMap));
        // constant built from proportional rows
        let k2 = MobiusMap::new(c(-0.25, 0.0), c(0.5, 0.0), c(-0.5, 0.0), c(1.0, 0.0)).unwrap();
        assert!(k2.is_constant());
        assert!((k2.constant_value().unwrap() - c(0.5, 0.0)).norm() < 1e-15);
        assert!(k.same_function(&MobiusMap::constant(c(0.5, 0.5)), 1e-14));
    }
}
