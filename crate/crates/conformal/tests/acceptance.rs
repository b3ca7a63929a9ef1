//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Criteria 1 and 5 compare against closed forms that the computation does
//! not reproduce; they print FAIL. The process exits nonzero when any other
//! criterion fails, or when one of those two starts passing (so the README
//! gets updated). `ACCEPTANCE_STRICT=1` makes every FAIL fatal.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use conformal::constants::PhysicalConstants;
use conformal::curvature::{scalar_curvature, weyl_action};
use conformal::density::{decompose_form, gauge_act, holder_pairing, reconstruct, DensityField, SymmetricForm};
use conformal::duffing_asymptotics::{transplant_residual, v0_profile, AsymptoticSeries, TGrid};
use conformal::experiments::{p_vector_fd_gap, weak_delta_grid, yamabe_invariance_gap, SEED};
use conformal::friedman::{aeon_volume, beta_half};
use conformal::grid::RadialGrid;
use conformal::models;
use conformal::schwarzschild_interior::{determinant_roots, p_eigenvalues, radial_geodesic, u_factor, RNParams};
use conformal::yamabe_action::{cosmological_estimate, curvature_norm, einstein_hilbert_equiv, planck_frequency};
use conformal::yamabe_ode::series::{format_rational, rational, w2_from_order_two};
use conformal::yamabe_ode::shoot::{default_solution, rho_tilde_numeric};
use conformal::yamabe_ode::{
    binomial_coefficients, find_rho, printed_w2, radius_estimate, rho_tilde_closed, v_deformation,
    w_equation_residual, w_recurrence, RationalSeries,
};

/// Criteria expected to print FAIL.
const KNOWN_RED: [usize; 2] = [1, 5];

struct Line {
    id: usize,
    title: &'static str,
    pass: bool,
    detail: String,
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn friedman() -> Line {
    let start = Instant::now();
    let v = aeon_volume(1.0, 4096).unwrap();
    let beta = beta_half(2.5).unwrap();
    let secs = start.elapsed().as_secs_f64();
    let beta_ok = (beta - 5.0 * PI / 16.0).abs() < 1e-10;
    Line {
        id: 1,
        title: "Friedman aeon volume",
        pass: v.rel_gap <= 1e-6 && beta_ok && secs < 1.0,
        detail: format!(
            "volume {:.9} vs (5/4)pi^3 {:.9} (rel gap {:.3e}, tol 1e-6); Beta 5pi/16 err {:.1e}; {:.3}s",
            v.value,
            v.printed_closed_form,
            v.rel_gap,
            (beta - 5.0 * PI / 16.0).abs(),
            secs
        ),
    }
}

fn series_coefficients() -> Line {
    let start = Instant::now();
    let s = w_recurrence(60);
    let top = w_equation_residual(&s);
    let secs = start.elapsed().as_secs_f64();
    let c = s.coefficients();
    let exact = c[0] == rational(1, 1) && c[1] == rational(-3, 26);
    // every truncation must solve the equation through its own order
    let bad: Vec<usize> = (0..60)
        .step_by(1)
        .filter(|&n| {
            let t = RationalSeries::from_coefficients(s.exponent().clone(), c[..=n].to_vec());
            w_equation_residual(&t).order.is_some_and(|o| o <= n)
        })
        .collect();
    let top_ok = top.order.map_or(true, |o| o > 60);
    let w2_ok = w2_from_order_two(&c[1]) == c[2];
    Line {
        id: 2,
        title: "Series coefficients",
        pass: exact && bad.is_empty() && top_ok && w2_ok && secs < 5.0,
        detail: format!(
            "w1 = {}; residual oracle failures at N = {:?}; w2 = {} (printed {}, mismatch {}); N=60 in {:.2}s",
            format_rational(&c[1]),
            bad,
            format_rational(&c[2]),
            format_rational(&printed_w2()),
            c[2] != printed_w2(),
            secs
        ),
    }
}

fn radius() -> Line {
    let est = radius_estimate(&w_recurrence(60).coefficients_f64());
    let r = est.radius.unwrap_or(f64::NAN);
    let geo: Vec<f64> = (0..=60).map(|k| 0.5f64.powi(-k)).collect();
    let rg = radius_estimate(&geo).radius.unwrap_or(f64::NAN);
    let rb = radius_estimate(&binomial_coefficients(-0.5, 60)).radius.unwrap_or(f64::NAN);
    Line {
        id: 3,
        title: "Radius of convergence",
        pass: (0.9..=1.1).contains(&r) && rel(rg, 0.5) < 0.01 && rel(rb, 1.0) < 0.01,
        detail: format!("Domb-Sykes R = {r:.5}; calibration geometric {rg:.6} (0.5), binomial {rb:.6} (1)"),
    }
}

fn critical_point() -> Line {
    let s = w_recurrence(60);
    let cp = find_rho(&default_solution(&s, 0.1, 1e-3).unwrap()).unwrap();
    let mut spread: f64 = 0.0;
    for (order, r0, h) in [(40, 0.1, 1e-3), (60, 0.2, 1e-3), (60, 0.1, 5e-4), (60, 0.05, 2e-3)] {
        let other = find_rho(&default_solution(&w_recurrence(order), r0, h).unwrap()).unwrap().rho;
        spread = spread.max((other - cp.rho).abs());
    }
    let gap = (cp.rho - rho_tilde_closed()).abs();
    let tilde_err = (rho_tilde_numeric() - rho_tilde_closed()).abs();
    Line {
        id: 4,
        title: "Critical point",
        pass: cp.sign_changes == 1 && spread <= 1e-6 && gap <= 0.10 && tilde_err <= 1e-10,
        detail: format!(
            "rho = {:.9} ({} sign change); spread under solver changes {spread:.1e}; |rho - rho~| = {gap:.4} with rho~ = {:.9}; rho~ root error {tilde_err:.1e}",
            cp.rho,
            cp.sign_changes,
            rho_tilde_closed()
        ),
    }
}

fn distributional_curvature() -> Line {
    let rows = weak_delta_grid().unwrap();
    let magnitude = rows.iter().map(|(_, _, w)| rel(w.laplacian_coefficient.abs(), w.printed_laplacian)).fold(0.0, f64::max);
    let signed = rows.iter().map(|(_, _, w)| rel(w.curvature_coefficient, w.printed_curvature)).fold(0.0, f64::max);
    let (m, e, w) = &rows[4];
    Line {
        id: 5,
        title: "Distributional curvature",
        pass: magnitude <= 1e-4 && signed <= 1e-4,
        detail: format!(
            "|Delta U| coefficient vs 4D^2/m^3: max rel err {magnitude:.1e} on 3x3 grid; Rbar coefficient vs -24D^2/m^3: max rel err {signed:.2} (at m={m}, e={e}: Delta U {:.6}, Rbar {:.6}, expected {:.6})",
            w.laplacian_coefficient, w.curvature_coefficient, w.printed_curvature
        ),
    }
}

fn p_consistency() -> Line {
    let mut gap: f64 = 0.0;
    for (m, e, k) in [(1.0, 0.0, 2.0), (1.0, 0.6, 0.3), (2.0, 1.0, -0.5), (0.7, 0.2, 1.28)] {
        gap = gap.max(p_vector_fd_gap(RNParams::new(m, e).unwrap(), k).unwrap());
    }
    let p = RNParams::schwarzschild(1.0).unwrap();
    let v = p_eigenvalues(p, 2.0, 1.0, 1.0).unwrap();
    let roots = determinant_roots(p);
    let listed: Vec<String> = roots.roots.iter().map(|r| format!("{:.4}(x{})", r.k, r.multiplicity)).collect();
    Line {
        id: 6,
        title: "P consistency",
        pass: gap <= 1e-6 && v == [-8.0, 8.0, 0.0, 0.0] && roots.printed_root_present && !roots.unique && roots.roots.len() == 4,
        detail: format!(
            "closed form vs FD Ricci max gap {gap:.1e}; P(m=1,e=0,k=2,r=1) = {v:?}; det roots {}; printed root unique: {}",
            listed.join(" "),
            roots.unique
        ),
    }
}

fn geodesics() -> Line {
    let p = RNParams::schwarzschild(1.0).unwrap();
    let g = radial_geodesic(p, &u_factor(p), 1.0, 1.9, 1e-5).unwrap();
    let finite = g.proper_time.is_some_and(|t| t.is_finite() && t > 0.0);
    let s = w_recurrence(60);
    let d = v_deformation(&s, &default_solution(&s, 0.1, 1e-3).unwrap(), 0.5).unwrap();
    Line {
        id: 7,
        title: "Geodesics",
        pass: finite && (g.asymptotic_ratio - 1.0).abs() <= 0.01 && d.proper_time.relative_error <= 0.02,
        detail: format!(
            "U: tau = {:.6}, small-r ratio {:.6}; V: log slope {:.6} vs {:.6} (rel err {:.1e})",
            g.proper_time.unwrap_or(f64::NAN),
            g.asymptotic_ratio,
            d.proper_time.slope,
            d.proper_time.expected_slope,
            d.proper_time.relative_error
        ),
    }
}

fn conformal_invariance() -> Line {
    let k = PhysicalConstants::codata2018();
    let families = [
        models::sphere4(1.0, 48).unwrap(),
        models::sphere4(2.0, 48).unwrap(),
        models::bumped_torus(0.1, 128).unwrap(),
        models::sample_warped_torus(128).unwrap(),
    ];
    let y = families.iter().map(|g| yamabe_invariance_gap(g).unwrap()).fold(0.0, f64::max);
    let diagram = families.iter().map(|g| einstein_hilbert_equiv(g, &k).unwrap().relative_gap).fold(0.0, f64::max);
    let norm = families[..3]
        .iter()
        .map(|g| rel(curvature_norm(&g.scaled(9.0), 2.0).unwrap(), curvature_norm(g, 2.0).unwrap()))
        .fold(0.0, f64::max);
    Line {
        id: 8,
        title: "Conformal invariance",
        pass: y <= 1e-6 && diagram <= 1e-6 && norm <= 1e-10,
        detail: format!("Y gap over 4 families {y:.1e}; diagram gap {diagram:.1e}; ||R||_2 rescale gap {norm:.1e}"),
    }
}

fn planck() -> Line {
    let nu = planck_frequency(&PhysicalConstants::codata2018());
    let c = cosmological_estimate(1e-35, 4e17).unwrap();
    Line {
        id: 9,
        title: "Planck frequency",
        pass: rel(nu, 90.7e41) <= 5e-3 && (c - 1.6).abs() < 1e-12,
        detail: format!("{nu:.4e} Hz vs 9.07e42 (rel {:.1e}); Lambda age^2 = {c}", rel(nu, 90.7e41)),
    }
}

fn duffing() -> Line {
    let grid = TGrid::new(60.0, 4096).unwrap();
    let v = v0_profile(&grid);
    let (lo, hi) = (v.samples[v.samples.len() - 1], v.samples[0]);
    let mut s = AsymptoticSeries::leading(grid);
    let mut slopes = Vec::new();
    let mut ok = true;
    for _ in 0..3 {
        let rep = s.residual_decay().unwrap();
        let worst = rep.slopes.0.max(rep.slopes.1);
        ok &= worst <= rep.bound;
        slopes.push(format!("{worst:.2}<={:.1}", rep.bound));
        s = s.correction_step().unwrap();
    }
    let tr = transplant_residual(&default_solution(&w_recurrence(40), 0.1, 1e-3).unwrap());
    let limits_ok = (lo - 1.0).abs() < 1e-12 && (hi - 1.0 / 3.0).abs() < 1e-12;
    Line {
        id: 10,
        title: "Duffing induction",
        pass: ok && limits_ok && tr <= 1e-6,
        detail: format!("slopes n=0,1,2: {}; v0 limits ({lo:.12}, {hi:.12}); transplant residual {tr:.1e}", slopes.join(", ")),
    }
}

fn property_suites(elapsed: f64) -> Line {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut round: f64 = 0.0;
    let mut orbit: f64 = 0.0;
    for _ in 0..200 {
        let d: Vec<f64> = (0..4).map(|_| rng.gen_range(0.1..10.0) * if rng.gen_bool(0.3) { -1.0 } else { 1.0 }).collect();
        let q = SymmetricForm::diagonal(&d).unwrap();
        let b = decompose_form(&q).unwrap();
        round = round.max(b.reconstruct().relative_distance(&q));
        let u = rng.gen_range(0.2..5.0) * if rng.gen_bool(0.5) { -1.0 } else { 1.0 };
        let (g, phi) = gauge_act(u, &b.unimodular, b.density).unwrap();
        let b2 = decompose_form(&reconstruct(&g, phi)).unwrap();
        orbit = orbit.max(b2.unimodular.relative_distance(&b.unimodular)).max(rel(b2.density, b.density));
    }
    let grid = Arc::new(RadialGrid::simpson(0.0, 1.0, 129).unwrap());
    let mut holder_ok = true;
    for s in [0.5, 1.0, 2.0, 3.0, 3.5] {
        for _ in 0..20 {
            let a: Vec<f64> = grid.points().iter().map(|_| rng.gen_range(0.0..3.0)).collect();
            let b: Vec<f64> = grid.points().iter().map(|_| rng.gen_range(0.0..3.0)).collect();
            let p = holder_pairing(
                &DensityField::new(s, 4, grid.clone(), a).unwrap(),
                &DensityField::new(4.0 - s, 4, grid.clone(), b).unwrap(),
            )
            .unwrap();
            holder_ok &= p.value <= p.bound * (1.0 + 1e-12);
        }
    }
    let weyl = [models::bumped_torus(0.1, 128).unwrap(), models::sample_warped_torus(128).unwrap()]
        .iter()
        .map(|g| {
            let w = weyl_action(g).unwrap();
            let r = g.integrate_dvol(&scalar_curvature(g).unwrap().samples).unwrap();
            (w - r).abs() / r.abs().max(1.0)
        })
        .fold(0.0, f64::max);
    Line {
        id: 11,
        title: "Property suites",
        pass: round <= 1e-12 && orbit <= 1e-12 && holder_ok && weyl <= 1e-4 && elapsed < 120.0,
        detail: format!(
            "round trip {round:.1e}, gauge orbit {orbit:.1e} (200 seeded forms); Hoelder on 100 seeded pairs: {holder_ok}; Weyl vs int R {weyl:.1e}; acceptance run {elapsed:.1}s (full suite timed by cargo test)"
        ),
    }
}

fn main() -> ExitCode {
    let start = Instant::now();
    let mut lines = vec![
        friedman(),
        series_coefficients(),
        radius(),
        critical_point(),
        distributional_curvature(),
        p_consistency(),
        geodesics(),
        conformal_invariance(),
        planck(),
        duffing(),
    ];
    lines.push(property_suites(start.elapsed().as_secs_f64()));
    for l in &lines {
        println!("{} {:>2}. {}: {}", if l.pass { "PASS" } else { "FAIL" }, l.id, l.title, l.detail);
    }
    let strict = std::env::var("ACCEPTANCE_STRICT").is_ok_and(|v| v == "1");
    let unexpected: Vec<usize> = lines
        .iter()
        .filter(|l| if KNOWN_RED.contains(&l.id) && !strict { l.pass } else { !l.pass })
        .map(|l| l.id)
        .collect();
    let passed = lines.iter().filter(|l| l.pass).count();
    println!("{passed}/{} criteria pass; expected FAIL: {KNOWN_RED:?}", lines.len());
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("unexpected outcome for criteria {unexpected:?}");
        ExitCode::FAILURE
    }
}
