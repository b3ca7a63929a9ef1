use std::f64::consts::PI;
use std::sync::Arc;

use approx::assert_relative_eq;
use nalgebra::DMatrix;

use conformal::curvature::scalar_curvature;
use conformal::density::{decompose_form, gauge_act, holder_pairing, star_section, DensityField, SymmetricForm};
use conformal::grid::RadialGrid;
use conformal::metric::{DiagonalMetric, Geometry};
use conformal::models;
use conformal::yamabe_action::{cosmological_estimate, curvature_norm, yamabe_functional_fn};
use conformal::Error;

#[test]
fn identity_is_its_own_blowup() {
    let p = decompose_form(&SymmetricForm::new(DMatrix::identity(4, 4)).unwrap()).unwrap();
    assert_eq!(p.unimodular.matrix(), &DMatrix::<f64>::identity(4, 4));
    assert_eq!(p.density, 1.0);
}

#[test]
fn diagonal_form_splits() {
    let q = SymmetricForm::diagonal(&[4.0, 1.0, 1.0, 1.0]).unwrap();
    let p = decompose_form(&q).unwrap();
    let expected = SymmetricForm::diagonal(&[4.0, 1.0, 1.0, 1.0]).unwrap().scaled(4f64.powf(-0.25));
    assert!(p.unimodular.relative_distance(&expected) < 1e-15);
    assert_relative_eq!(p.density, 4f64.powf(0.125), max_relative = 1e-15);
    assert!(p.reconstruct().relative_distance(&q) < 1e-15);
}

#[test]
fn minkowski_keeps_signature() {
    let q = SymmetricForm::diagonal(&[1.0, -1.0, -1.0, -1.0]).unwrap();
    let p = decompose_form(&q).unwrap();
    assert_eq!(p.unimodular, q);
    assert_eq!(p.density, 1.0);
    assert_eq!(p.unimodular.signature(), -2);
}

#[test]
fn gauge_examples() {
    let id = SymmetricForm::new(DMatrix::identity(4, 4)).unwrap();
    assert_eq!(gauge_act(1.0, &id, 0.7).unwrap(), (id.clone(), 0.7));
    let (g, phi) = gauge_act(2.0, &id, 1.0).unwrap();
    assert!(g.relative_distance(&id.scaled(4.0)) < 1e-15);
    assert_eq!(phi, 0.5);
    assert!(conformal::density::reconstruct(&g, phi).relative_distance(&id) < 1e-15);
    assert_eq!(gauge_act(-1.0, &id, 0.7).unwrap(), (id.clone(), -0.7));
    assert!(matches!(gauge_act(0.0, &id, 1.0), Err(Error::Gauge { .. })));
}

#[test]
fn density_norms() {
    let unit = Arc::new(RadialGrid::simpson(0.0, 1.0, 201).unwrap());
    let one = DensityField::from_fn(4.0, 4, unit.clone(), |_| 1.0).unwrap();
    assert_relative_eq!(one.density_norm().unwrap(), 1.0, max_relative = 1e-14);
    let c = DensityField::from_fn(1.5, 4, unit.clone(), |_| -3.0).unwrap();
    assert_relative_eq!(c.density_norm().unwrap(), 3.0, max_relative = 1e-14);
    let x = DensityField::from_fn(2.0, 4, unit.clone(), |x| x).unwrap();
    assert_relative_eq!(x.density_norm().unwrap(), (1.0f64 / 3.0).sqrt(), max_relative = 1e-12);
    let sup = DensityField::from_fn(0.0, 4, unit, |x| x * (1.0 - x)).unwrap();
    assert_relative_eq!(sup.density_norm().unwrap(), 0.25, max_relative = 1e-12);
}

#[test]
fn holder_examples() {
    let unit = Arc::new(RadialGrid::simpson(0.0, 1.0, 101).unwrap());
    let one = DensityField::from_fn(2.0, 4, unit.clone(), |_| 1.0).unwrap();
    let p = holder_pairing(&one, &one).unwrap();
    assert_relative_eq!(p.product_norm, p.bound, max_relative = 1e-14);
    let w1 = DensityField::from_fn(1.0, 4, unit.clone(), |_| 1.0).unwrap();
    let w4 = DensityField::from_fn(4.0, 4, unit, |_| 1.0).unwrap();
    assert!(matches!(holder_pairing(&w1, &w4), Err(Error::WeightRange { .. })));
}

#[test]
fn minkowski_star_section() {
    let grid = Arc::new(RadialGrid::simpson(0.0, 1.0, 21).unwrap());
    let metric = DiagonalMetric::new("Minkowski", 4, 3, |_, g| {
        g.copy_from_slice(&[1.0, -1.0, -1.0, -1.0]);
    });
    let geom = Geometry::new(metric, grid, 1, vec![0.0; 4]).unwrap();
    let star = star_section(&geom, 2.0).unwrap();
    assert!(star.samples().iter().all(|&v| v == -1.0));
    let euclid = Geometry::new(DiagonalMetric::euclidean(4), geom.grid().clone(), 1, vec![0.0; 4]).unwrap();
    assert!(star_section(&euclid, 3.0).unwrap().samples().iter().all(|&v| v == 1.0));
}

#[test]
fn round_sphere_curvature() {
    for a in [0.5, 1.0, 2.0] {
        let g = models::sphere4(a, 32).unwrap();
        let r = scalar_curvature(&g).unwrap();
        assert!(r.max_abs_deviation(12.0 / (a * a)) < 1e-3 * 12.0 / (a * a), "a = {a}");
    }
}

#[test]
fn sphere_curvature_norm() {
    // ‖R‖_{n/2} = 12 vol^{1/2} on the unit S⁴, invariant under rescaling
    let vol = 8.0 * PI * PI / 3.0;
    let unit = curvature_norm(&models::sphere4(1.0, 48).unwrap(), 2.0).unwrap();
    assert_relative_eq!(unit, 12.0 * vol.sqrt(), max_relative = 1e-3);
    let big = curvature_norm(&models::sphere4(3.0, 48).unwrap(), 2.0).unwrap();
    assert_relative_eq!(big, unit, max_relative = 1e-10);
}

#[test]
fn flat_torus_action_vanishes() {
    let g = models::flat_torus(32).unwrap();
    assert!(yamabe_functional_fn(&g, &|_| 1.0).unwrap().abs() < 1e-12);
}

#[test]
fn cosmological_bound_is_order_one() {
    assert_relative_eq!(cosmological_estimate(1e-35, 4e17).unwrap(), 1.6, max_relative = 1e-12);
}
