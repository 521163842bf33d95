//! Acceptance criteria, one PASS/FAIL line each. Exits non-zero on any FAIL.

use std::time::Instant;

use imcf_core::constructions::quintic::{det3, matching_matrix};
use imcf_core::constructions::{
    build_bean, build_dumbbell, build_sphere, build_torus, quintic_c2_coefficients, BeanSpec, BellJunction,
    DumbbellSpec,
};
use imcf_core::diagnostics::{
    containment_monitor, diameter_origin, direction_grid, first_star_time, gradient_estimate_audit,
    gradient_estimate_audit_with, reflection_profile_about, t_star, Plane, Raster,
};
use imcf_core::flow::{
    arrival_field, arrival_time_residual, avoidance_check, run, run_radial_graph, EventKind, FlowConfig,
    FlowTrajectory,
};
use imcf_core::geometry::{diameter, hausdorff_distance, inradius, ProfileSurface, RadialGraph, Vec2};
use imcf_core::hull::{hull_two_balls_with_bridge, margin_threshold};
use imcf_core::par::Exec;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Frame spacing of the waiting-time check.
const DT_FRAME: f64 = 0.01;
/// Regression baseline for the two-ball threshold d*(1, 2).
const D_STAR_BASELINE: f64 = 0.31995;

type Check<'a> = Box<dyn Fn() -> Outcome + 'a>;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

struct Runs {
    sphere: FlowTrajectory,
    sphere_secs: f64,
    egg: (ProfileSurface, FlowTrajectory),
    blob: (ProfileSurface, FlowTrajectory),
}

fn solve3(mut m: [[f64; 3]; 3], mut b: [f64; 3]) -> [f64; 3] {
    for col in 0..3 {
        let piv = (col..3).max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs())).unwrap();
        m.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..3 {
            let f = m[row][col] / m[col][col];
            for k in col..3 {
                m[row][k] -= f * m[col][k];
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = [0.0; 3];
    for row in (0..3).rev() {
        let s: f64 = (row + 1..3).map(|k| m[row][k] * x[k]).sum();
        x[row] = (b[row] - s) / m[row][row];
    }
    x
}

fn mean_radius(s: &ProfileSurface) -> f64 {
    let (sum, k) = s.points().fold((0.0, 0), |(a, k), p| (a + p.norm(), k + 1));
    sum / k as f64
}

fn c1_sphere(r: &Runs) -> Outcome {
    let radius = mean_radius(&r.sphere.last().surface);
    let worst = r.sphere.last().surface.points().map(|p| (p.norm() / 0.5f64.exp() - 1.0).abs()).fold(0.0, f64::max);
    outcome(
        worst < 1e-4 && r.sphere_secs < 60.0 && r.sphere.last().t == 1.0,
        format!("mean radius {radius:.10}, max rel err {worst:.2e}, {:.1} s", r.sphere_secs),
    )
}

fn area_error(tr: &FlowTrajectory) -> f64 {
    let a0 = tr.frames[0].diag.area;
    tr.frames.iter().map(|f| (f.diag.area / (f.t.exp() * a0) - 1.0).abs()).fold(0.0, f64::max)
}

fn c2_area(r: &Runs) -> Outcome {
    let circle = run(&build_sphere(1, 1.0, 256).unwrap(), &FlowConfig { m: 256, ..FlowConfig::default() }).unwrap();
    let runs = [("sphere", &r.sphere), ("circle", &circle), ("egg", &r.egg.1), ("blob", &r.blob.1)];
    let mut pass = true;
    let mut parts = Vec::new();
    for (name, tr) in runs {
        pass &= tr.event.kind == EventKind::Completed;
        let e = area_error(tr);
        pass &= e < 1e-3;
        parts.push(format!("{name} {e:.1e}"));
    }
    outcome(pass, format!("max |A/(e^t A0) - 1|: {}", parts.join(", ")))
}

fn c3_waiting(r: &Runs) -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for (name, (s, tr)) in [("egg", &r.egg), ("blob", &r.blob)] {
        let ts = t_star(diameter(s).value, inradius(s).unwrap().radius, s.n()).unwrap();
        let first = first_star_time(tr);
        pass &= first.is_some_and(|t| t <= ts + DT_FRAME);
        parts.push(format!("{name} t_first {first:?} <= t* {ts:.4}"));
    }
    outcome(pass, parts.join(", "))
}

fn c4_gradient(r: &Runs) -> Outcome {
    let sphere = build_sphere(2, 1.0, 512).unwrap();
    let centered = gradient_estimate_audit(&sphere, 0.0, Vec2::ZERO).unwrap().max_slack;
    let (s0, tr) = &r.blob;
    let (o, diam) = diameter_origin(s0);
    let lambda = reflection_profile_about(s0, 16, o, Exec::default()).unwrap().big_lambda.max(0.0);
    let mut worst = f64::NEG_INFINITY;
    let mut audited = 0;
    let mut pass = centered.abs() < 1e-6;
    for f in &tr.frames {
        let h = f.surface.spacing();
        if f.surface.points().any(|p| (p - o).norm() < 0.5 * diam - h) {
            continue;
        }
        match gradient_estimate_audit_with(&f.surface, lambda, o, 0.5 * diam) {
            Ok(g) => {
                audited += 1;
                worst = worst.max(g.max_slack - 2.0 * h);
                pass &= g.max_slack <= 2.0 * h;
            }
            Err(_) => pass = false,
        }
    }
    pass &= audited > 0;
    outcome(
        pass,
        format!("centered sphere slack {centered:.1e}; blob Λ = {lambda:.4}, {audited} frames, max slack - 2h = {worst:.2e}"),
    )
}

fn admissible_planes(s: &ProfileSurface, count: usize) -> Vec<Plane> {
    let (o, diam) = diameter_origin(s);
    let raster = Raster::new(s, Exec::default()).unwrap();
    let h = s.spacing();
    let mut planes = Vec::new();
    for alpha in direction_grid(s.n(), count) {
        let base = Plane::at_angle(alpha, 0.0);
        let shift = base.normal[0] * o.x + base.normal[1] * o.y;
        for k in 0..8 {
            let lambda = shift + 0.5 * diam * (-0.875 + 0.25 * k as f64);
            let p = Plane::at_angle(alpha, lambda);
            if raster.admissibility(&p, h).admissible {
                planes.push(p);
            }
        }
    }
    planes
}

fn c5_admissibility(r: &Runs) -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for (name, (s, tr)) in [("egg", &r.egg), ("blob", &r.blob)] {
        let planes = admissible_planes(s, 16);
        let mut worst: f64 = 0.0;
        for f in tr.frames.iter().step_by(10) {
            let raster = Raster::new(&f.surface, Exec::default()).unwrap();
            let h = f.surface.spacing();
            for p in &planes {
                let v = raster.violation(p);
                worst = worst.max(v / h);
                pass &= v < 2.0 * h;
            }
        }
        pass &= !planes.is_empty();
        parts.push(format!("{name}: {} planes, max violation {worst:.2} h", planes.len()));
    }
    outcome(pass, parts.join("; "))
}

fn c6_avoidance(r: &Runs) -> Outcome {
    let cfg = FlowConfig { t_end: 1.0, m: 256, ..FlowConfig::default() };
    let disk = build_sphere(1, 0.3, 256).unwrap().translated(Vec2::new(0.4, 0.1)).unwrap();
    let inner1 = run(&disk, &cfg).unwrap();
    let ball = build_sphere(2, 0.5, 256).unwrap().translated(Vec2::new(2.3, 0.0)).unwrap();
    let cfg2 = FlowConfig { t_end: r.blob.1.last().t, m: 256, ..FlowConfig::default() };
    let inner2 = run(&ball, &cfg2).unwrap();
    let mut pass = true;
    let mut parts = Vec::new();
    for (name, outer, inner) in [("disk in egg", &r.egg.1, &inner1), ("ball in blob", &r.blob.1, &inner2)] {
        match avoidance_check(outer, inner) {
            Ok(rep) => {
                pass &= rep.min_increment >= -1e-6 && rep.all_contained;
                parts.push(format!("{name}: min dℓ {:.2e}, {} frames", rep.min_increment, rep.times.len()));
            }
            Err(e) => {
                pass = false;
                parts.push(format!("{name}: {e}"));
            }
        }
    }
    outcome(pass, parts.join("; "))
}

fn c7_containment(r: &Runs) -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for (name, s, tr) in [
        ("sphere", &build_sphere(2, 1.0, 512).unwrap(), &r.sphere),
        ("egg", &r.egg.0, &r.egg.1),
        ("blob", &r.blob.0, &r.blob.1),
    ] {
        let ins = inradius(s).unwrap();
        let (o, d) = diameter_origin(s);
        let rep = containment_monitor(tr, ins.center, ins.radius, o, d);
        let worst = rep
            .frames
            .iter()
            .map(|f| (f.inner_slack - f.tolerance).max(f.outer_slack - f.tolerance))
            .fold(f64::NEG_INFINITY, f64::max);
        pass &= rep.all_ok;
        parts.push(format!("{name} {} frames, max slack - h {worst:.2e}", rep.frames.len()));
    }
    outcome(pass, parts.join("; "))
}

fn c8_torus() -> Outcome {
    let tor = build_torus(2.0, 0.25, 256).unwrap();
    let tr = run(&tor, &FlowConfig { t_end: 20.0, m: 256, ..FlowConfig::default() }).unwrap();
    let ts = t_star(diameter(&tor).value, inradius(&tor).unwrap().radius, 2).unwrap();
    let last = &tr.last().surface;
    let inner = tr.event.min_h_sample.is_some_and(|(c, i)| {
        let p = last.curves()[c].points()[i];
        let lowest = last.points().map(|q| q.y).fold(f64::INFINITY, f64::min);
        p.x.abs() < 5.0 * last.spacing() && p.y - lowest < 5.0 * last.spacing()
    });
    let hs: Vec<f64> = tr.frames.iter().rev().take(50).map(|f| f.diag.min_h).collect();
    let monotone = hs.windows(2).all(|w| w[0] <= w[1]);
    outcome(
        tr.event.kind == EventKind::SingularityDetected && tr.event.t_event < 2.0 * ts && inner && monotone,
        format!(
            "{} at t = {:.4} < 2t* = {:.4}, inner equator {inner}, min H monotone {monotone}",
            tr.event.kind.as_str(),
            tr.event.t_event,
            2.0 * ts
        ),
    )
}

fn c9_dumbbell() -> Outcome {
    let db = build_dumbbell(&DumbbellSpec::default(), 512).unwrap();
    let tr = run(&db.section, &FlowConfig { t_end: 20.0, ..FlowConfig::default() }).unwrap();
    let ts = t_star(db.report.diameter, db.report.inradius, 2).unwrap();
    let kind_ok = matches!(tr.event.kind, EventKind::SelfIntersection | EventKind::SingularityDetected);
    outcome(
        kind_ok && tr.event.t_event < 2.0 * ts,
        format!("{} at t = {:.4} < 2t* = {:.4}", tr.event.kind.as_str(), tr.event.t_event, 2.0 * ts),
    )
}

fn c10_gluing() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut worst_coef: f64 = 0.0;
    let mut worst_bc: f64 = 0.0;
    let mut worst_det: f64 = 0.0;
    for _ in 0..1000 {
        let (g, g1, g2) = (rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0), rng.gen_range(-20.0..20.0));
        let eps: f64 = rng.gen_range(0.1..2.0);
        let q = quintic_c2_coefficients(g, g1, g2, eps).unwrap();
        let m = [[1.0, 1.0, 1.0], [3.0, 4.0, 5.0], [6.0, 12.0, 20.0]];
        let x = solve3(m, [g, g1 * eps, g2 * eps * eps]);
        let got = [q.a * eps.powi(3), q.b * eps.powi(4), q.c * eps.powi(5)];
        let scale = 1.0f64.max(g.abs()).max((g1 * eps).abs()).max((g2 * eps * eps).abs());
        for k in 0..3 {
            worst_coef = worst_coef.max((got[k] - x[k]).abs() / scale);
        }
        let (p, p1, p2) = q.jet(eps);
        worst_bc = worst_bc.max(((p - g).abs() + (p1 - g1).abs() * eps + (p2 - g2).abs() * eps * eps) / scale);
        let det = det3(&matching_matrix(eps));
        worst_det = worst_det.max((det - 2.0 * eps.powi(9)).abs() / eps.powi(9).max(1.0));
    }
    let (big_r, r) = (1.0f64, 0.6f64);
    let eps = (big_r * big_r - r * r).sqrt();
    let a = BellJunction::center_plane(big_r, r).unwrap().coeffs.a;
    let display = 4.0 / eps / r - big_r * big_r / (2.0 * eps * r.powi(3));
    outcome(
        worst_coef < 1e-12 && worst_det < 1e-12 && worst_bc < 1e-10 && (a - display).abs() < 1e-12,
        format!("coef {worst_coef:.1e}, det {worst_det:.1e}, bc {worst_bc:.1e}, A = {a:.6}"),
    )
}

fn c11_certificates() -> Outcome {
    let db = build_dumbbell(&DumbbellSpec::default(), 512).unwrap();
    let rep = &db.report;
    outcome(
        rep.i_ii_max_p_ppp < 1.0
            && rep.ii_iii_max_ppp <= rep.inverse_r
            && rep.iii_iv_max_ppp <= rep.inverse_r
            && rep.min_h > 0.0,
        format!(
            "p p'' {:.4} < 1, p'' {:.4} / {:.4} <= 1/r {:.1}, min H {:.4}",
            rep.i_ii_max_p_ppp, rep.ii_iii_max_ppp, rep.iii_iv_max_ppp, rep.inverse_r, rep.min_h
        ),
    )
}

fn c12_hull() -> Outcome {
    let (res, bridge) = hull_two_balls_with_bridge(1.0, 1.0, 0.05, 2).unwrap();
    let Some(b) = bridge else { return outcome(false, "no bridge at d = 0.05".into()) };
    let p1 = 1.0 + 0.025;
    let cat = b.catenoid.map_or(f64::INFINITY, |c| c.max_deviation);
    let scan = margin_threshold(1.0, 2, 0.02, 1.0, 50, 1e-3, Exec::default()).unwrap();
    let width = scan.bracket.1 - scan.bracket.0;
    outcome(
        res.margin < 0.0
            && !res.is_outward_minimizing
            && b.h_residual < 1e-8
            && b.max_radius() <= 1.0
            && b.x_left() >= -p1
            && b.x_right() <= p1
            && cat < 1e-6
            && width <= 1e-3
            && (scan.d_star - D_STAR_BASELINE).abs() < 1e-3,
        format!(
            "margin {:.5}, |H| {:.1e}, cosh dev {cat:.1e}, d* = {:.5} in [{:.5}, {:.5}] (baseline {D_STAR_BASELINE})",
            res.margin, b.h_residual, scan.d_star, scan.bracket.0, scan.bracket.1
        ),
    )
}

fn c13_arrival(r: &Runs) -> Outcome {
    let field = arrival_field(&r.sphere, 128, None, Exec::default()).unwrap();
    let mut worst: f64 = 0.0;
    for j in 0..field.ny {
        for i in 0..field.nx {
            if let Some(u) = field.get(i, j) {
                worst = worst.max((u - 2.0 * field.node(i, j).norm().ln()).abs());
            }
        }
    }
    match arrival_time_residual(&r.sphere) {
        Ok(res) => outcome(
            res.max < 0.05 && worst < 1e-3,
            format!("max |u - 2 log|x|| {worst:.1e}, PDE residual max {:.2e} mean {:.1e} on {} nodes", res.max, res.mean, res.count),
        ),
        Err(e) => outcome(false, e.to_string()),
    }
}

fn c14_cross_scheme() -> Outcome {
    let g = RadialGraph::from_fn(1, Vec2::ZERO, 512, |th| 1.0 + 0.15 * (2.0 * th).cos()).unwrap();
    let cfg = FlowConfig { t_end: 1.0, m: 512, record_every: 0.5, ..FlowConfig::default() };
    let a = run_radial_graph(&g, &cfg).unwrap();
    let b = run(&g.to_profile().unwrap(), &cfg).unwrap();
    let d = hausdorff_distance(&a.last().surface, &b.last().surface);
    outcome(d < 5e-3 && a.last().t == 1.0 && b.last().t == 1.0, format!("Hausdorff distance {d:.2e}"))
}

fn main() {
    let start = Instant::now();
    let sphere0 = build_sphere(2, 1.0, 512).unwrap();
    let clock = Instant::now();
    let sphere = run(&sphere0, &FlowConfig { t_end: 1.0, m: 512, cfl: 0.25, ..FlowConfig::default() }).unwrap();
    let sphere_secs = clock.elapsed().as_secs_f64();

    let egg = build_bean(&BeanSpec::default_for(1).unwrap(), 256).unwrap();
    let egg_tr = run(&egg, &FlowConfig { t_end: 1.0, m: 256, ..FlowConfig::default() }).unwrap();
    let blob = build_bean(&BeanSpec::default_for(2).unwrap(), 256).unwrap();
    let ts = t_star(diameter(&blob).value, inradius(&blob).unwrap().radius, 2).unwrap();
    let blob_tr = run(&blob, &FlowConfig { t_end: (ts + 0.5).ceil(), m: 256, ..FlowConfig::default() }).unwrap();
    let runs = Runs { sphere, sphere_secs, egg: (egg, egg_tr), blob: (blob, blob_tr) };

    let criteria: Vec<(&str, Check<'_>)> = vec![
        ("sphere exactness", Box::new(|| c1_sphere(&runs))),
        ("area growth", Box::new(|| c2_area(&runs))),
        ("waiting time", Box::new(|| c3_waiting(&runs))),
        ("gradient estimate", Box::new(|| c4_gradient(&runs))),
        ("admissibility preservation", Box::new(|| c5_admissibility(&runs))),
        ("one-sided avoidance", Box::new(|| c6_avoidance(&runs))),
        ("containment", Box::new(|| c7_containment(&runs))),
        ("torus singularity", Box::new(c8_torus)),
        ("dumbbell deadline", Box::new(c9_dumbbell)),
        ("gluing lemma", Box::new(c10_gluing)),
        ("mean-convexity certificates", Box::new(c11_certificates)),
        ("hull certificate", Box::new(c12_hull)),
        ("arrival-time residual", Box::new(|| c13_arrival(&runs))),
        ("cross-scheme oracle", Box::new(c14_cross_scheme)),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let o = check();
        if !o.pass {
            failed += 1;
        }
        println!("{} {:>2} {name}: {}", if o.pass { "PASS" } else { "FAIL" }, k + 1, o.detail);
    }
    println!("acceptance: {} passed, {failed} failed in {:.1} s", criteria.len() - failed, start.elapsed().as_secs_f64());
    if failed > 0 {
        std::process::exit(1);
    }
}
