//! Cross-validation of the exact certificates against the numeric section
//! route, on parameter ranges where the sections converge: the two roads
//! must reach the same verdict.

use num_complex::Complex64;

use wco::mobius::{MapClass, MobiusMap};
use wco::operator::{commutator_defect, finite_section, is_normal, spectral_norm, WcoSpec};
use wco::spectrum::hausdorff;
use wco::synthesis::{normal_pair_interior, unitary_pair};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn exact_normal_verdicts_match_numeric_defects() {
    // synthesized compact-regime pairs: certified normal exactly, and the
    // section commutator sits at rounding level
    for p in [c(0.0, 0.0), c(0.3, 0.0), c(0.5, 0.0), c(0.2, -0.4)] {
        for delta in [c(0.3, 0.0), c(0.0, 0.5), c(0.6, 0.0)] {
            let pair = normal_pair_interior(p, delta, c(1.0, 0.0)).unwrap();
            let spec = pair.to_spec().unwrap();
            let rep = is_normal(&spec, 64, 1e-8).unwrap();
            assert!(rep.is_normal(), "exact verdict at p={p}, delta={delta}");
            assert_eq!(rep.certificate, "exact-ifpn");
            let defect = commutator_defect(&spec, 64).unwrap();
            assert!(
                defect < 1e-10,
                "numeric defect {defect:.3e} at p={p}, delta={delta}"
            );
        }
    }
}

#[test]
fn exact_not_normal_verdicts_match_numeric_defects() {
    // the unit weight over the same symbols is not normal; the numeric
    // commutator agrees loudly
    for p in [c(0.2, 0.0), c(0.4, 0.0), c(0.5, 0.0), c(0.3, 0.3)] {
        for delta in [c(0.3, 0.0), c(0.5, 0.0), c(0.0, 0.6)] {
            let symbol = *normal_pair_interior(p, delta, c(1.0, 0.0)).unwrap().symbol();
            let spec = WcoSpec::exact(MobiusMap::constant(c(1.0, 0.0)), symbol).unwrap();
            let rep = is_normal(&spec, 64, 1e-8).unwrap();
            assert!(!rep.is_normal(), "exact verdict at p={p}, delta={delta}");
            assert_eq!(rep.certificate, "exact-ifpn");
            let a = finite_section(&spec, 64).unwrap();
            let scale = spectral_norm(a.matrix()).unwrap().powi(2);
            let defect = commutator_defect(&spec, 64).unwrap();
            assert!(
                defect > 1e-3 * scale,
                "numeric route silent at p={p}, delta={delta}: {defect:.3e}"
            );
        }
    }
}

#[test]
fn canonical_families_classify_as_built() {
    for t in [c(1.0, 0.0), c(2.0, 0.0), c(2.0, 1.0), c(0.5, -2.0)] {
        let phi = MobiusMap::canonical_parabolic(t).unwrap();
        match phi.classify().unwrap() {
            MapClass::ParabolicNonAutomorphism { omega } => {
                assert!((omega - c(1.0, 0.0)).norm() < 1e-9)
            }
            other => panic!("t={t}: wrong class {other:?}"),
        }
    }
    for t in [c(0.0, 2.0), c(0.0, -1.0), c(0.0, 0.5)] {
        let phi = MobiusMap::canonical_parabolic(t).unwrap();
        match phi.classify().unwrap() {
            MapClass::ParabolicAutomorphism { omega } => {
                assert!((omega - c(1.0, 0.0)).norm() < 1e-9)
            }
            other => panic!("t={t}: wrong class {other:?}"),
        }
    }
    for r in [1.5, 2.0, 4.0] {
        for t in [c(0.0, 0.0), c(0.5, 0.0), c(1.0, 1.0), c(0.0, 2.0)] {
            let phi = MobiusMap::canonical_hyperbolic(r, t).unwrap();
            let class = phi.classify().unwrap();
            let auto = t.re == 0.0;
            match class {
                MapClass::HyperbolicAutomorphism { omega, derivative } if auto => {
                    assert!((omega - c(1.0, 0.0)).norm() < 1e-9);
                    assert!((derivative - 1.0 / r).abs() < 1e-10);
                }
                MapClass::HyperbolicNonAutomorphism { omega, derivative } if !auto => {
                    assert!((omega - c(1.0, 0.0)).norm() < 1e-9);
                    assert!((derivative - 1.0 / r).abs() < 1e-10);
                }
                other => panic!("r={r}, t={t}: wrong class {other:?}"),
            }
        }
    }
}

#[test]
fn unitary_certificate_against_adjoint_route() {
    // certified unitary pairs send the truncated kernel through the section
    // adjoint and back to itself (compact kernel data, so tails are tame)
    let beta = c(0.3, 0.1);
    let pair = unitary_pair(&MobiusMap::alpha(beta).unwrap(), c(0.0, 1.0)).unwrap();
    let spec = pair.to_spec().unwrap();
    let n = 64;
    let a = finite_section(&spec, n).unwrap().matrix().clone();
    let kb = wco::KernelCombo::kernel_at(beta).unwrap().to_taylor(n - 1);
    let v = nalgebra::DVector::from_iterator(n, kb.coeffs().iter().copied());
    let roundtrip = &a * (a.adjoint() * &v);
    let err = (roundtrip - v).norm();
    assert!(err < 1e-10, "W W* K_beta differs from K_beta by {err:.3e}");
}

#[test]
fn conjugated_product_shares_spectrum_in_compact_regime() {
    // eigenvalue sets of the conjugated product and the synthesized section
    // coincide where the conjugation identity converges
    for (p, delta) in [
        (c(0.5, 0.0), c(0.6, 0.0)),
        (c(0.3, 0.2), c(0.0, 0.5)),
        (c(0.5, 0.0), c(0.3, 0.0)),
    ] {
        let n = 64;
        let mu = (1.0 - p.norm_sqr()).sqrt();
        let kernel_weight = MobiusMap::new(
            Complex64::ZERO,
            c(mu, 0.0),
            -p.conj(),
            c(1.0, 0.0),
        )
        .unwrap();
        let alpha = MobiusMap::alpha(p).unwrap();
        let u = finite_section(&WcoSpec::exact(kernel_weight, alpha).unwrap(), n).unwrap();
        let d = finite_section(
            &WcoSpec::exact(MobiusMap::constant(c(1.0, 0.0)), MobiusMap::dilation(delta)).unwrap(),
            n,
        )
        .unwrap();
        let product = u.matrix() * d.matrix() * u.matrix();
        let pair = normal_pair_interior(p, delta, c(1.0, 0.0)).unwrap();
        let t = finite_section(&pair.to_spec().unwrap(), n).unwrap();
        let e1 = eigs(&product);
        let e2 = eigs(t.matrix());
        let h = hausdorff(&e1, &e2).unwrap();
        assert!(h < 1e-6, "eigenvalue sets differ by {h:.3e} at p={p}, delta={delta}");
    }
}

fn eigs(m: &nalgebra::DMatrix<Complex64>) -> Vec<Complex64> {
    m.clone()
        .try_schur(f64::EPSILON, 100_000)
        .and_then(|s| s.eigenvalues())
        .map(|e| e.iter().copied().collect())
        .expect("eigenvalues converge")
}
