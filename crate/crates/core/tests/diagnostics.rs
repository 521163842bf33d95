use imcf_core::constructions::{build_bean, build_dumbbell, build_peanut, build_sphere, build_torus, BeanSpec, DumbbellSpec, PeanutSpec};
use imcf_core::diagnostics::*;
use imcf_core::flow::{run, EventKind, FlowConfig};
use imcf_core::geometry::{diameter, inradius, DistanceIndex, ProfileSurface, Vec2};
use imcf_core::par::Exec;
use imcf_core::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn planes_through_the_center_of_a_ball_are_admissible() {
    for n in [1, 2] {
        let s = build_sphere(n, 1.0, 256).unwrap();
        for k in 0..8 {
            let a = is_admissible(&s, &Plane::at_angle(0.4 * k as f64, 0.0), None).unwrap();
            assert!(a.admissible, "n={n} k={k} {a:?}");
        }
    }
}

#[test]
fn self_intersecting_input_is_rejected() {
    let s = build_sphere(1, 1.0, 128).unwrap();
    let t = s.translated(Vec2::new(0.5, 0.0)).unwrap();
    let both = ProfileSurface::new(1, vec![s.curves()[0].clone(), t.curves()[0].clone()]).unwrap();
    assert!(matches!(is_admissible(&both, &Plane::at_angle(0.0, 0.0), None), Err(Error::NotEmbedded(_))));
}

/// Reflect 1e5 random points of the body across `x = λ` (normal `±e₁`)
/// and return the deepest escape outside the body.
fn dense_oracle(s: &ProfileSurface, sign: f64, lambda: f64, seed: u64) -> f64 {
    let (lo, hi) = s.bounding_box();
    let index = DistanceIndex::new(s);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    let mut kept = 0;
    while kept < 100_000 {
        let x = rng.gen_range(lo.x..hi.x);
        let y = rng.gen_range(-hi.y..hi.y);
        let z = rng.gen_range(-hi.y..hi.y);
        let rho = y.hypot(z);
        if !s.contains(Vec2::new(x, rho)) || sign * x >= lambda {
            continue;
        }
        kept += 1;
        let xr = 2.0 * sign * lambda - x;
        let q = Vec2::new(xr, rho);
        if !s.contains(q) {
            worst = worst.max(index.distance(q));
        }
    }
    worst
}

#[test]
fn asymmetric_peanut_matches_dense_oracle() {
    let spec = PeanutSpec::asymmetric();
    let s = build_peanut(&spec, 512).unwrap();
    let mid = spec.neck_midpoint().unwrap();
    let h = s.spacing();
    for (sign, alpha) in [(1.0, 0.0), (-1.0, std::f64::consts::PI)] {
        let lambda = sign * mid;
        let a = is_admissible(&s, &Plane::at_angle(alpha, lambda), None).unwrap();
        let oracle = dense_oracle(&s, sign, lambda, 7);
        assert_eq!(a.admissible, oracle <= h, "sign {sign}: raster {a:?}, oracle depth {oracle}");
        assert!((a.violation - oracle).abs() < 0.05 + 0.05 * oracle, "{} vs {oracle}", a.violation);
    }
}

#[test]
fn ball_reflection_constants() {
    for n in [1, 2] {
        let s = build_sphere(n, 1.0, 256).unwrap();
        let h = s.spacing();
        let p = reflection_profile(&s, 16).unwrap();
        assert!(p.big_lambda.abs() <= 2.0 * h, "n={n} Λ={}", p.big_lambda);
        assert!(p.lambda_max.iter().all(|l| l.abs() <= 2.0 * h));
        let c = if n == 1 { Vec2::new(0.3, -0.2) } else { Vec2::new(0.3, 0.0) };
        let shifted = s.translated(c).unwrap();
        let q = reflection_profile_about(&shifted, if n == 1 { 64 } else { 16 }, Vec2::ZERO, Exec::default()).unwrap();
        assert!((q.big_lambda - c.norm()).abs() <= 2.0 * h, "n={n} Λ={} |c|={}", q.big_lambda, c.norm());
    }
}

#[test]
fn reflection_constant_is_translation_invariant() {
    let s = build_peanut(&PeanutSpec::asymmetric(), 256).unwrap();
    let a = reflection_profile(&s, 16).unwrap();
    let b = reflection_profile(&s.translated(Vec2::new(0.5, 0.0)).unwrap(), 16).unwrap();
    assert!((a.big_lambda - b.big_lambda).abs() <= 1e-12, "{} vs {}", a.big_lambda, b.big_lambda);
}

#[test]
fn reflection_constant_is_at_most_half_the_diameter() {
    let db = build_dumbbell(&DumbbellSpec::default(), 512).unwrap();
    let p = reflection_profile(&db.section, 16).unwrap();
    assert!(p.big_lambda <= 0.5 * diameter(&db.section).value);
    let s = build_peanut(&PeanutSpec::asymmetric(), 256).unwrap();
    let p = reflection_profile(&s, 16).unwrap();
    assert!(p.big_lambda <= 0.5 * diameter(&s).value && p.big_lambda > 0.0);
}

#[test]
fn star_shape_of_fixtures() {
    let blob = build_bean(&BeanSpec::default_for(2).unwrap(), 512).unwrap();
    let (o, _) = diameter_origin(&blob);
    let r = is_star_shaped(&blob, o).unwrap();
    assert!(!r.star_shaped && r.bad_rays > 0 && r.min_support < 0.0);
    let egg = build_bean(&BeanSpec::default_for(1).unwrap(), 256).unwrap();
    let (o, _) = diameter_origin(&egg);
    assert!(is_star_shaped(&egg, o).unwrap().star_shaped);
    let torus = build_torus(2.0, 0.5, 256).unwrap();
    assert!(matches!(is_star_shaped(&torus, Vec2::new(0.0, 0.0)), Err(Error::CenterOutside(_))));
    assert!(!is_star_shaped(&torus, Vec2::new(0.0, 2.0)).unwrap().star_shaped);
}

#[test]
fn waiting_time_formula() {
    assert!((t_star(2.0, 1.0, 2).unwrap() - 1.3862943611198906).abs() < 1e-15);
    let torus = build_torus(2.0, 0.5, 512).unwrap();
    let (d, r) = (diameter(&torus).value, inradius(&torus).unwrap().radius);
    assert!((d - 5.0).abs() < 1e-6 && (r - 0.5).abs() < 1e-3, "d={d} R={r}");
    assert!((t_star(5.0, 0.5, 2).unwrap() - 4.605170185988092).abs() < 1e-12);
    let mut prev = f64::INFINITY;
    for k in 1..=10 {
        let r = 1.0 - 0.5f64.powi(k);
        let t = t_star(2.0, r, 2).unwrap();
        assert!(t < prev && t > 2.0 * 2f64.ln());
        prev = t;
    }
    for s in [0.25, 2.0, 8.0] {
        assert_eq!(t_star(7.0 * s, 1.3 * s, 2).unwrap(), t_star(7.0, 1.3, 2).unwrap());
    }
    let egg = build_bean(&BeanSpec::default_for(1).unwrap(), 256).unwrap();
    let big = egg.scaled(4.0);
    let t0 = t_star(diameter(&egg).value, inradius(&egg).unwrap().radius, 1).unwrap();
    let t1 = t_star(diameter(&big).value, inradius(&big).unwrap().radius, 1).unwrap();
    assert!((t0 - t1).abs() < 1e-9, "{t0} vs {t1}");
}

#[test]
fn star_time_of_spheres_and_tori() {
    let s = build_sphere(2, 1.0, 256).unwrap();
    let tr = run(&s, &FlowConfig { t_end: 0.1, m: 256, ..FlowConfig::default() }).unwrap();
    assert_eq!(first_star_time(&tr), Some(0.0));
    let tor = build_torus(2.0, 0.25, 128).unwrap();
    let tr = run(&tor, &FlowConfig { t_end: 20.0, m: 128, ..FlowConfig::default() }).unwrap();
    assert_eq!(tr.event.kind, EventKind::SingularityDetected);
    assert_eq!(first_star_time(&tr), None);
}

#[test]
fn gradient_estimate_on_spheres() {
    let s = build_sphere(2, 1.0, 512).unwrap();
    let g = gradient_estimate_audit(&s, 0.0, Vec2::ZERO).unwrap();
    assert!(g.max_slack.abs() < 1e-6 && g.audited == 512, "{g:?}");
    for n in [1, 2] {
        let c = Vec2::new(0.3, 0.0);
        let s = build_sphere(n, 1.0, 512).unwrap().translated(c).unwrap();
        let h = s.spacing();
        let g = gradient_estimate_audit_with(&s, 0.3, Vec2::ZERO, 0.0).unwrap();
        assert!(g.max_slack <= 2.0 * h, "n={n} {g:?}");
        // the bound is sharp for shifted spheres
        assert!(g.max_slack > -0.01, "n={n} {g:?}");
        let g = gradient_estimate_audit_with(&s, 0.1, Vec2::ZERO, 0.0).unwrap();
        assert!(g.max_slack > 0.1, "a smaller constant must fail: {g:?}");
    }
}

#[test]
fn gradient_estimate_rejects_non_graphs() {
    let blob = build_bean(&BeanSpec::default_for(2).unwrap(), 256).unwrap();
    let (o, _) = diameter_origin(&blob);
    assert!(matches!(gradient_estimate_audit_with(&blob, 0.0, o, 0.0), Err(Error::NotAGraph(_))));
}

#[test]
fn sphere_containment_is_tight() {
    let s = build_sphere(2, 1.0, 256).unwrap();
    let tr = run(&s, &FlowConfig { t_end: 1.5, m: 256, ..FlowConfig::default() }).unwrap();
    let rep = containment_monitor(&tr, Vec2::ZERO, 1.0, Vec2::ZERO, 2.0);
    assert!(rep.all_ok);
    for f in &rep.frames {
        assert!(f.inner_slack.abs() < 1e-4 && f.outer_slack.abs() < 1e-4, "{f:?}");
    }
    let escape = rep.escape_time.expect("escape ball must be swallowed");
    let ts = t_star(2.0, 1.0, 2).unwrap();
    assert!(escape <= 2.0 * ts + 0.01);
    assert!((escape - 2.0 * 2f64.ln()).abs() < 0.011, "{escape}");
    let recs = rep.records();
    assert_eq!(recs.len(), 2 * rep.frames.len());
    assert!(recs.iter().all(|r| r.pass));
}

#[test]
fn bean_containment_holds() {
    let s = build_bean(&BeanSpec::default_for(1).unwrap(), 256).unwrap();
    let tr = run(&s, &FlowConfig { t_end: 1.0, m: 256, record_every: 0.05, ..FlowConfig::default() }).unwrap();
    let ins = inradius(&s).unwrap();
    let (o, d) = diameter_origin(&s);
    let rep = containment_monitor(&tr, ins.center, ins.radius, o, d);
    assert!(rep.all_ok, "{:?}", rep.frames.iter().find(|f| !(f.inner_ok && f.outer_ok)));
}

#[test]
fn admissible_planes_stay_admissible_on_a_convex_curve() {
    let s = build_bean(&BeanSpec::default_for(1).unwrap(), 256).unwrap();
    let tr = run(&s, &FlowConfig { t_end: 0.5, m: 256, record_every: 0.25, ..FlowConfig::default() }).unwrap();
    let (o, _) = diameter_origin(&s);
    let raster0 = Raster::new(&s, Exec::default()).unwrap();
    let h = s.spacing();
    let mut planes = Vec::new();
    for alpha in direction_grid(1, 16) {
        for k in 0..8 {
            let lambda = -0.6 + 0.1 * k as f64;
            let base = Plane::at_angle(alpha, 0.0);
            let offset = lambda + base.normal[0] * o.x + base.normal[1] * o.y;
            let p = Plane::at_angle(alpha, offset);
            if raster0.admissibility(&p, h).admissible {
                planes.push(p);
            }
        }
    }
    assert!(planes.len() > 20);
    for f in &tr.frames[1..] {
        let r = Raster::new(&f.surface, Exec::default()).unwrap();
        for p in &planes {
            let v = r.violation(p);
            assert!(v < 2.0 * h, "t={} plane {p:?} violation {v}", f.t);
        }
    }
}
