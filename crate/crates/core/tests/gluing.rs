use imcf_core::constructions::{
    build_dumbbell, quintic_c2_coefficients, BellJunction, DumbbellSpec, QuinticCoeffs,
};
use imcf_core::constructions::quintic::{det3, matching_matrix};
use imcf_core::Error;
use proptest::prelude::*;

/// Gaussian elimination with partial pivoting.
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

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn coefficients_match_linear_solve(
        g in -5.0f64..5.0,
        g1 in -5.0f64..5.0,
        g2 in -20.0f64..20.0,
        eps in 0.1f64..2.0,
    ) {
        let q = quintic_c2_coefficients(g, g1, g2, eps).unwrap();
        // unknowns scaled to (A ε³, B ε⁴, C ε⁵) keep the system well conditioned
        let m = [[1.0, 1.0, 1.0], [3.0, 4.0, 5.0], [6.0, 12.0, 20.0]];
        let x = solve3(m, [g, g1 * eps, g2 * eps * eps]);
        let got = [q.a * eps.powi(3), q.b * eps.powi(4), q.c * eps.powi(5)];
        let scale = 1.0f64.max(g.abs()).max((g1 * eps).abs()).max((g2 * eps * eps).abs());
        for k in 0..3 {
            prop_assert!((got[k] - x[k]).abs() <= 1e-12 * scale, "k={} {} vs {}", k, got[k], x[k]);
        }
        let (p, p1, p2) = q.jet(eps);
        prop_assert!((p - g).abs() <= 1e-10 * scale);
        prop_assert!((p1 - g1).abs() * eps <= 1e-10 * scale);
        prop_assert!((p2 - g2).abs() * eps * eps <= 1e-10 * scale);
        prop_assert_eq!(q.jet(0.0), (0.0, 0.0, 0.0));
    }

    #[test]
    fn determinant_is_two_eps_nine(eps in 0.05f64..3.0) {
        let d = det3(&matching_matrix(eps));
        let expect = 2.0 * eps.powi(9);
        prop_assert!((d - expect).abs() <= 1e-12 * expect.max(1.0), "{} vs {}", d, expect);
    }
}

#[test]
fn degenerate_interval_is_rejected() {
    assert!(matches!(quintic_c2_coefficients(1.0, 0.0, 0.0, 0.0), Err(Error::DegenerateInterval(_))));
    assert!(matches!(quintic_c2_coefficients(1.0, 0.0, 0.0, -1.0), Err(Error::DegenerateInterval(_))));
}

fn center_plane(r: f64) -> QuinticCoeffs {
    BellJunction::center_plane(1.0, r).unwrap().coeffs
}

#[test]
fn region_one_two_worked_values() {
    let (big_r, r) = (1.0f64, 0.6f64);
    let eps = (big_r * big_r - r * r).sqrt();
    assert!((eps - 0.8).abs() < 1e-15);
    let q = center_plane(r);
    let a = 4.0 / eps / r - big_r * big_r / (2.0 * eps * r.powi(3));
    assert!((q.a - a).abs() < 1e-12, "{} vs {a}", q.a);
    assert!((q.a - 5.4398).abs() < 1e-4);
}

#[test]
fn region_one_two_bounds_that_hold() {
    for k in 1..=19 {
        let r = 0.05 * k as f64;
        let eps = (1.0 - r * r).sqrt();
        let q = center_plane(r);
        assert!(q.a <= 7.0 / (2.0 * eps * r) + 1e-12, "A bound at r={r}");
        assert!(q.c <= 5.0 / (2.0 * eps.powi(3) * r) + 1e-12, "C bound at r={r}");
        let max_p = (0..=2000).map(|i| q.value(eps * i as f64 / 2000.0)).fold(f64::MIN, f64::max);
        assert!(max_p + r <= r + eps * eps / r.powi(3) + 1e-12, "height bound at r={r}");
    }
}

#[test]
fn second_derivative_bound_fails_near_r_equal_big_r() {
    let r = 0.95;
    let eps = (1.0f64 - r * r).sqrt();
    let q = center_plane(r);
    let max_pp = (0..=4000).map(|i| q.d2(eps * i as f64 / 4000.0)).fold(f64::MIN, f64::max);
    let bound = 12.0 * eps * eps / r.powi(3);
    assert!(max_pp > bound, "max p'' = {max_pp}, bound = {bound}");
    assert!((max_pp - 1.81).abs() < 0.01);
    // smaller necks respect it
    let r = 0.6;
    let eps = (1.0f64 - r * r).sqrt();
    let q = center_plane(r);
    let max_pp = (0..=4000).map(|i| q.d2(eps * i as f64 / 4000.0)).fold(f64::MIN, f64::max);
    assert!(max_pp <= 12.0 * eps * eps / r.powi(3));
}

#[test]
fn default_dumbbell_certificates() {
    let db = build_dumbbell(&DumbbellSpec::default(), 512).unwrap();
    let rep = &db.report;
    assert!(rep.i_ii_max_p_ppp < 1.0, "p p'' = {}", rep.i_ii_max_p_ppp);
    assert!(rep.ii_iii_max_ppp <= rep.inverse_r);
    assert!(rep.iii_iv_max_ppp <= rep.inverse_r);
    assert!(rep.min_h > 0.0 && rep.tube_min_h > 0.0 && rep.section_min_h > 0.0);
    assert_eq!((rep.genus, rep.euler_characteristic), (0, 2));
    assert!(rep.connected && rep.embedded);
    for j in &rep.c2_jumps {
        assert!(j.value.abs() < 1e-6 && j.slope.abs() < 1e-5 && j.curvature.abs() < 1e-4, "{j:?}");
    }
}

#[test]
fn wide_neck_is_not_mean_convex() {
    let spec = DumbbellSpec {
        r: 0.99,
        junction: Some(-0.9),
        eps_i_ii: Some(0.2),
        eps_ii_iii: Some(1.0),
        eps_iii_iv: Some(1.0),
        ..DumbbellSpec::default()
    };
    match build_dumbbell(&spec, 256) {
        Err(Error::NotMeanConvex { condition, value, .. }) => {
            assert!(condition.contains("p*p''"), "{condition}");
            assert!(value >= 1.0);
        }
        other => panic!("expected NotMeanConvex, got {other:?}"),
    }
}

#[test]
fn overlapping_turn_gluing_is_rejected() {
    let spec = DumbbellSpec { eps_ii_iii: Some(5.0), eps_iii_iv: Some(1.0), eps_i_ii: Some(1.0), ..DumbbellSpec::default() };
    assert!(matches!(build_dumbbell(&spec, 256), Err(Error::GluingOverlap(_))));
}
