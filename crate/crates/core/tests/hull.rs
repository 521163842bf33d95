use imcf_core::constructions::{build_dumbbell, DumbbellSpec};
use imcf_core::hull::*;
use imcf_core::par::Exec;
use imcf_core::Error;

/// Mean curvature of the revolved graph `y = f(x)` (n = 2) by central differences.
fn graph_mean_curvature(b: &BridgeProfile) -> f64 {
    let h = b.x[1] - b.x[0];
    let mut worst: f64 = 0.0;
    for i in 1..b.x.len() - 1 {
        let fp = (b.f[i + 1] - b.f[i - 1]) / (2.0 * h);
        let fpp = (b.f[i + 1] - 2.0 * b.f[i] + b.f[i - 1]) / (h * h);
        let w = (1.0 + fp * fp).sqrt();
        worst = worst.max((1.0 / (b.f[i] * w) - fpp / (w * w * w)).abs());
    }
    worst
}

#[test]
fn close_unit_balls_are_not_outward_minimizing() {
    let (res, bridge) = hull_two_balls_with_bridge(1.0, 1.0, 0.05, 2).unwrap();
    let b = bridge.unwrap();
    assert!(!res.is_outward_minimizing && res.margin < 0.0);
    assert!(res.hull_area < res.body_area);
    assert!(b.h_residual < 1e-8, "{}", b.h_residual);
    assert!(graph_mean_curvature(&b) < 1e-5);
    assert!(b.max_radius() <= 1.0);
    let p1 = 1.0 + 0.5 * 0.05;
    assert!(b.x_left() >= -p1 && b.x_right() <= p1);
    assert!(res.slab_ok && res.cylinder_ok);
    let cat = b.catenoid.unwrap();
    assert!(cat.max_deviation < 1e-6);
    for (&x, &f) in b.x.iter().zip(&b.f).step_by(97) {
        assert!((cat.c * ((x - cat.b) / cat.c).cosh() - f).abs() < 1e-6);
    }
    // the bridge ends sit on the spheres
    for (x, f, c) in [(b.x_left(), b.f[0], -p1), (b.x_right(), *b.f.last().unwrap(), p1)] {
        assert!(((x - c).hypot(f) - 1.0).abs() < 1e-9);
    }
}

#[test]
fn planar_bridges_are_rejected() {
    assert!(matches!(hull_two_balls_with_bridge(1.0, 1.0, 0.3, 1), Err(Error::InvalidParams(_))));
}

#[test]
fn unequal_balls_bridge() {
    let (res, bridge) = hull_two_balls_with_bridge(1.0, 0.7, 0.05, 2).unwrap();
    let b = bridge.unwrap();
    assert!(b.h_residual < 1e-8 && b.tangency_residual < 1e-10);
    assert!(res.cylinder_ok && res.slab_ok);
    assert!(b.catenoid.unwrap().b > 0.0, "neck leans toward the smaller ball");
}

#[test]
fn margin_threshold_is_bracketed() {
    let scan = margin_threshold(1.0, 2, 0.02, 1.0, 50, 1e-3, Exec::default()).unwrap();
    assert!(scan.bracket.1 - scan.bracket.0 <= 1e-3);
    assert_eq!(scan.sign_changes, 1);
    assert!((scan.d_star - 0.31995).abs() < 1e-3, "d* = {}", scan.d_star);
    let below = hull_two_balls(1.0, scan.bracket.0 - 1e-3, 2).unwrap();
    let above = hull_two_balls(1.0, scan.bracket.1 + 1e-3, 2).unwrap();
    assert!(below.margin < 0.0 && (above.bridge.is_none() || above.margin > 0.0));
    let seq = margin_threshold(1.0, 2, 0.02, 1.0, 50, 1e-3, Exec::Sequential).unwrap();
    assert_eq!(seq.d_star, scan.d_star);
}

#[test]
fn threshold_scan_rejects_bad_ranges() {
    assert!(matches!(margin_threshold(1.0, 2, 0.5, 0.1, 10, 1e-3, Exec::Sequential), Err(Error::InvalidParams(_))));
    assert!(matches!(margin_threshold(1.0, 2, 2.0, 3.0, 10, 1e-3, Exec::Sequential), Err(Error::NoConvergence(_))));
}

#[test]
fn default_dumbbell_is_not_strictly_outward_minimizing() {
    let db = build_dumbbell(&DumbbellSpec::default(), 512).unwrap();
    let a = audit_dumbbell_hull(&db).unwrap();
    assert!(!a.is_strictly && !a.is_outward_minimizing);
    assert!(a.clearance.unwrap() > 0.0);
    assert!((a.comparison_area - a.dumbbell_area - a.two_ball.margin).abs() < 1e-12);
}

#[test]
fn bridge_landing_on_the_flare_is_reported() {
    let spec = DumbbellSpec {
        r: 0.37,
        junction: Some(0.929),
        eps_i_ii: Some(0.929),
        eps_ii_iii: Some(1.0),
        eps_iii_iv: Some(1.0),
        ..DumbbellSpec::default()
    };
    let db = build_dumbbell(&spec, 512).unwrap();
    assert!(matches!(audit_dumbbell_hull(&db), Err(Error::HullTouched(_))));
}

#[test]
fn far_dumbbell_bells_cannot_be_built() {
    let spec = DumbbellSpec { d: 2.0, ..DumbbellSpec::default() };
    assert!(matches!(build_dumbbell(&spec, 256), Err(Error::CannotSatisfy(_))));
}
