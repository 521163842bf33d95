//! The handle dumbbell: two balls of radius `R` with a small gap `d`,
//! joined far from the gap by a thin tube of radius `r`.
//!
//! Right half, in the plane of the handle (x along the axis through the
//! ball centers, y lateral):
//!
//! * I: sphere about `(p1, 0)`, `p1 = R + d/2`, kept up to the junction;
//! * I-II: quintic flare narrowing to the tube radius, directed away from the gap;
//! * II: straight tube along the x-axis up to `X0`;
//! * II-III, III, III-IV: tube whose centerline turns through a half circle
//!   of radius `R_star` centered at `(X0, -R_star)`, with quintic gluings of
//!   the centerline at both ends;
//! * IV: straight tube on `y = -2 R_star` back to `x = 0`.
//!
//! The left half is the mirror image across `x = 0`. The composite is not
//! rotationally symmetric; flows run on an axisymmetric section made of the
//! two capsules bell + flare + tube, each closed by a small C² end cap.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::axial::{axial_profile, Cap};
use super::junction::{c2_jumps, tube_min_h, ArcGluing, BellJunction};
use crate::error::{Error, Result};
use crate::geometry::{inradius, DistanceIndex, mean_curvature, self_intersects, ProfileSurface, Vec2};
use crate::hull::minimal_bridge;

/// Neck-to-cap ratio of the section's end caps (inside the mean-convex
/// window of the center-plane gluing).
const END_CAP_RATIO: f64 = 0.37;
const HALVINGS: usize = 40;
const ZONE_SAMPLES: usize = 4000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DumbbellSpec {
    #[serde(rename = "R")]
    pub radius: f64,
    pub d: f64,
    pub r: f64,
    #[serde(rename = "R_star")]
    pub r_star: f64,
    #[serde(rename = "eps_I_II", default, skip_serializing_if = "Option::is_none")]
    pub eps_i_ii: Option<f64>,
    #[serde(rename = "eps_II_III", default, skip_serializing_if = "Option::is_none")]
    pub eps_ii_iii: Option<f64>,
    #[serde(rename = "eps_III_IV", default, skip_serializing_if = "Option::is_none")]
    pub eps_iii_iv: Option<f64>,
    /// Start of the I-II zone, measured from the bell center toward the
    /// gap (negative: on the far side). Default `-R/2`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub junction: Option<f64>,
    /// Length of the straight tube II. Default `R`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub neck_length: Option<f64>,
}

impl Default for DumbbellSpec {
    fn default() -> Self {
        Self {
            radius: 1.0,
            d: 0.1,
            r: 0.2,
            r_star: 4.0,
            eps_i_ii: None,
            eps_ii_iii: None,
            eps_iii_iv: None,
            junction: None,
            neck_length: None,
        }
    }
}

impl DumbbellSpec {
    pub fn p1(&self) -> f64 {
        self.radius + 0.5 * self.d
    }

    pub fn junction_or_default(&self) -> f64 {
        self.junction.unwrap_or(-0.5 * self.radius)
    }

    pub fn neck_length_or_default(&self) -> f64 {
        self.neck_length.unwrap_or(self.radius)
    }

    /// Junction in the bell's local coordinate pointing toward the tube.
    fn s_junction(&self) -> f64 {
        -self.junction_or_default()
    }

    fn validate(&self) -> Result<()> {
        let fin = [self.radius, self.d, self.r, self.r_star].iter().all(|v| v.is_finite());
        if !fin || !(self.radius > 0.0) || !(self.d > 0.0) {
            return Err(Error::InvalidParams("dumbbell needs finite R > 0 and d > 0".into()));
        }
        if !(self.r > 0.0 && self.r < self.radius) {
            return Err(Error::InvalidParams(format!("tube radius r = {} must lie in (0, R)", self.r)));
        }
        if !(self.r_star > self.r) {
            return Err(Error::InvalidParams(format!("R_star = {} must exceed r = {}", self.r_star, self.r)));
        }
        if self.junction_or_default().abs() >= self.radius {
            return Err(Error::InvalidParams("junction must lie strictly inside the bell".into()));
        }
        Ok(())
    }

    fn eps(&self) -> Result<(f64, f64, f64)> {
        match (self.eps_i_ii, self.eps_ii_iii, self.eps_iii_iv) {
            (Some(a), Some(b), Some(c)) => Ok((a, b, c)),
            _ => Err(Error::InvalidParams("gluing lengths are not set".into())),
        }
    }
}

fn check_flare(bell: &BellJunction) -> Result<()> {
    let st = bell.zone_stats(ZONE_SAMPLES);
    let min_f = (0..=ZONE_SAMPLES)
        .map(|k| bell.value(bell.junction + bell.eps * k as f64 / ZONE_SAMPLES as f64))
        .fold(f64::INFINITY, f64::min);
    if !(min_f > 0.0) {
        return Err(Error::InvalidGeometry(format!("I-II flare reaches the axis (min f = {min_f:e})")));
    }
    if !(st.max_f_fpp < 1.0) {
        return Err(Error::NotMeanConvex {
            condition: "p*p'' < 1".into(),
            location: "I-II zone".into(),
            value: st.max_f_fpp,
        });
    }
    if !(st.min_h > 0.0) {
        return Err(Error::NotMeanConvex {
            condition: "H > 0".into(),
            location: format!("I-II zone, s = {}", st.argmin_h),
            value: st.min_h,
        });
    }
    Ok(())
}

fn check_turn(g: &ArcGluing, r: f64, label: &str) -> Result<(f64, f64)> {
    let (max_q2, max_k) = g.zone_stats(ZONE_SAMPLES);
    if !(max_q2 <= 1.0 / r) {
        return Err(Error::NotMeanConvex {
            condition: "p'' <= 1/r".into(),
            location: format!("{label} zone"),
            value: max_q2,
        });
    }
    let h = tube_min_h(r, max_k.max(1.0 / g.big_radius));
    if !(h > 0.0) {
        return Err(Error::NotMeanConvex {
            condition: "H > 0".into(),
            location: format!("{label} tube"),
            value: h,
        });
    }
    Ok((max_q2, max_k))
}

/// Choose the three gluing lengths: each starts large and is halved until
/// its sufficient and direct mean-convexity checks pass. Existing values
/// are ignored, so the result depends only on the geometric parameters.
pub fn auto_epsilon(spec: &DumbbellSpec) -> Result<DumbbellSpec> {
    spec.validate()?;
    let bridge = minimal_bridge(spec.radius, spec.radius, spec.d, 2)?.ok_or_else(|| {
        Error::CannotSatisfy(format!(
            "no minimal bridge for d = {}: the two balls are already outward minimizing",
            spec.d
        ))
    })?;
    let s_attach = -spec.radius * bridge.attach_right.cos();
    let s_j = spec.s_junction();
    if !(s_attach < s_j) {
        return Err(Error::CannotSatisfy(format!(
            "bridge attaches at s = {s_attach} past the junction s = {s_j}"
        )));
    }

    let mut eps1 = 2.0 * spec.radius;
    let mut found = None;
    for _ in 0..=HALVINGS {
        if let Ok(bell) = BellJunction::new(spec.radius, spec.r, s_j, eps1) {
            if check_flare(&bell).is_ok() {
                found = Some(eps1);
                break;
            }
        }
        eps1 *= 0.5;
    }
    let eps1 = found.ok_or_else(|| Error::CannotSatisfy("no I-II gluing length passes the checks".into()))?;

    let mut eps2 = 0.5 * spec.r_star;
    let mut found = None;
    for _ in 0..=HALVINGS {
        if let Ok(g) = ArcGluing::new(spec.r_star, eps2) {
            if check_turn(&g, spec.r, "II-III").is_ok() {
                found = Some(eps2);
                break;
            }
        }
        eps2 *= 0.5;
    }
    let eps2 = found.ok_or_else(|| Error::CannotSatisfy("no II-III gluing length passes the checks".into()))?;

    Ok(DumbbellSpec {
        eps_i_ii: Some(eps1),
        eps_ii_iii: Some(eps2),
        eps_iii_iv: Some(eps2),
        ..*spec
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JumpReport {
    pub location: String,
    pub value: f64,
    pub slope: f64,
    pub curvature: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DumbbellReport {
    pub min_h: f64,
    pub min_h_location: String,
    pub i_ii_max_p_ppp: f64,
    pub i_ii_min_h: f64,
    pub ii_iii_max_ppp: f64,
    pub iii_iv_max_ppp: f64,
    pub inverse_r: f64,
    pub tube_min_h: f64,
    pub c2_jumps: Vec<JumpReport>,
    pub euler_characteristic: i64,
    pub genus: i64,
    pub connected: bool,
    pub embedded: bool,
    /// Distance from the turning handle to the bell surfaces, minus r.
    pub bell_clearance: f64,
    /// Smallest distance between far-apart parts of the tube centerline, minus 2r.
    pub tube_clearance: f64,
    pub area: f64,
    pub diameter: f64,
    pub inradius: f64,
    pub section_min_h: f64,
}

/// Built dumbbell: exact composite data plus the axisymmetric flow section.
#[derive(Debug, Clone)]
pub struct Dumbbell {
    pub spec: DumbbellSpec,
    pub bell: BellJunction,
    pub turn_top: ArcGluing,
    pub turn_bottom: ArcGluing,
    pub end_cap: BellJunction,
    /// Start of the straight tube II.
    pub x_tube: f64,
    /// End of the straight tube II, where the centerline starts turning.
    pub x_turn: f64,
    pub section: ProfileSurface,
    pub report: DumbbellReport,
}

impl Dumbbell {
    fn p1(&self) -> f64 {
        self.spec.p1()
    }

    /// Right-half tube centerline from `x_turn` to `x = 0`, with unit
    /// tangents, sampled at spacing about `ds`.
    pub fn centerline(&self, ds: f64) -> Vec<(Vec2, Vec2)> {
        let rs = self.spec.r_star;
        let x0 = self.x_turn;
        let mut pts = Vec::new();
        let k = ((self.turn_top.eps / ds).ceil() as usize).max(8);
        for j in 0..k {
            let xi = self.turn_top.eps * j as f64 / k as f64;
            let (q, q1, _) = self.turn_top.jet(xi);
            pts.push((Vec2::new(x0 + xi, -q), Vec2::new(1.0, -q1).normalized()));
        }
        let center = Vec2::new(x0, -rs);
        let a_top = (rs * rs - self.turn_top.eps.powi(2)).sqrt().atan2(self.turn_top.eps);
        let a_bot = -(rs * rs - self.turn_bottom.eps.powi(2)).sqrt().atan2(self.turn_bottom.eps);
        let k = (((a_top - a_bot) * rs / ds).ceil() as usize).max(8);
        for j in 0..k {
            let a = a_top - (a_top - a_bot) * j as f64 / k as f64;
            pts.push((center + Vec2::from_polar(rs, a), Vec2::new(a.sin(), -a.cos())));
        }
        let k = ((self.turn_bottom.eps / ds).ceil() as usize).max(8);
        for j in 0..k {
            let xi = self.turn_bottom.eps * (k - j) as f64 / k as f64;
            let (q, q1, _) = self.turn_bottom.jet(xi);
            pts.push((Vec2::new(x0 + xi, -2.0 * rs + q), Vec2::new(-1.0, -q1).normalized()));
        }
        let k = ((x0 / ds).ceil() as usize).max(8);
        for j in 0..=k {
            let x = x0 * (k - j) as f64 / k as f64;
            pts.push((Vec2::new(x, -2.0 * rs), Vec2::new(-1.0, 0.0)));
        }
        pts
    }

    /// Length of the right-half centerline from `x_tube` to `x = 0`.
    pub fn centerline_length(&self) -> f64 {
        let arc = |g: &ArcGluing| {
            let k = 20000;
            (0..k)
                .map(|j| {
                    let xi = g.eps * (j as f64 + 0.5) / k as f64;
                    (1.0 + g.jet(xi).1.powi(2)).sqrt() * g.eps / k as f64
                })
                .sum::<f64>()
        };
        let rs = self.spec.r_star;
        let a_top = (rs * rs - self.turn_top.eps.powi(2)).sqrt().atan2(self.turn_top.eps);
        let a_bot = -(rs * rs - self.turn_bottom.eps.powi(2)).sqrt().atan2(self.turn_bottom.eps);
        (self.x_turn - self.x_tube) + arc(&self.turn_top) + rs * (a_top - a_bot) + arc(&self.turn_bottom) + self.x_turn
    }

    /// Bell meridian (kept sphere and flare) as `(x, f)` points, right bell.
    fn bell_meridian(&self, ds: f64) -> Vec<Vec2> {
        let (rad, p1) = (self.spec.radius, self.p1());
        let phi_j = (self.bell.junction / rad).clamp(-1.0, 1.0).acos();
        let mut out = Vec::new();
        let k = (((PI - phi_j) * rad / ds).ceil() as usize).max(8);
        for j in 0..=k {
            let phi = PI - (PI - phi_j) * j as f64 / k as f64;
            out.push(Vec2::new(p1 + rad * phi.cos(), rad * phi.sin()));
        }
        let k = ((self.bell.eps / ds).ceil() as usize).max(8);
        for j in 1..=k {
            let s = self.bell.junction + self.bell.eps * j as f64 / k as f64;
            out.push(Vec2::new(p1 + s, self.bell.value(s)));
        }
        out
    }

    /// Points of the non-spherical parts (flare and whole tube, both halves)
    /// in meridian coordinates `(x, distance to the axis)`.
    pub fn non_spherical_meridian(&self, ds: f64) -> Vec<Vec2> {
        let mut out = Vec::new();
        let k = ((self.bell.eps / ds).ceil() as usize).max(8);
        for j in 0..=k {
            let s = self.bell.junction + self.bell.eps * j as f64 / k as f64;
            out.push(Vec2::new(self.p1() + s, self.bell.value(s)));
        }
        let k = (((self.x_turn - self.x_tube) / ds).ceil() as usize).max(2);
        for j in 0..=k {
            out.push(Vec2::new(self.x_tube + (self.x_turn - self.x_tube) * j as f64 / k as f64, self.spec.r));
        }
        let r = self.spec.r;
        let az = ((2.0 * PI * r / ds).ceil() as usize).max(16);
        for (c, t) in self.centerline(ds) {
            let nrm = t.perp_right();
            for a in 0..az {
                let phi = 2.0 * PI * a as f64 / az as f64;
                let (y, z) = (c.y + r * phi.cos() * nrm.y, r * phi.sin());
                out.push(Vec2::new(c.x + r * phi.cos() * nrm.x, (y * y + z * z).sqrt()));
            }
        }
        let mirrored: Vec<Vec2> = out.iter().map(|p| Vec2::new(-p.x, p.y)).collect();
        out.extend(mirrored);
        out
    }

    /// 3D sample points of the composite surface (both halves).
    pub fn composite_points(&self, ds: f64) -> Vec<[f64; 3]> {
        let mut out = Vec::new();
        for q in self.bell_meridian(ds) {
            let az = ((2.0 * PI * q.y / ds).ceil() as usize).max(4);
            for a in 0..az {
                let phi = 2.0 * PI * a as f64 / az as f64;
                out.push([q.x, q.y * phi.cos(), q.y * phi.sin()]);
            }
        }
        let r = self.spec.r;
        let az = ((2.0 * PI * r / ds).ceil() as usize).max(16);
        let k = (((self.x_turn - self.x_tube) / ds).ceil() as usize).max(2);
        let mut line: Vec<(Vec2, Vec2)> = (0..k)
            .map(|j| {
                let x = self.x_tube + (self.x_turn - self.x_tube) * j as f64 / k as f64;
                (Vec2::new(x, 0.0), Vec2::new(1.0, 0.0))
            })
            .collect();
        line.extend(self.centerline(ds));
        for (c, t) in line {
            let nrm = t.perp_right();
            for a in 0..az {
                let phi = 2.0 * PI * a as f64 / az as f64;
                out.push([c.x + r * phi.cos() * nrm.x, c.y + r * phi.cos() * nrm.y, r * phi.sin()]);
            }
        }
        let mirrored: Vec<[f64; 3]> = out.iter().map(|p| [-p[0], p[1], p[2]]).collect();
        out.extend(mirrored);
        out
    }
}

/// Euler characteristic and genus of a surface assembled from pieces
/// `(euler characteristic, boundary circles)` glued pairwise along circles.
fn assemble_topology(pieces: &[i64], glue: &[(usize, usize)]) -> (i64, i64, bool) {
    let mut parent: Vec<usize> = (0..pieces.len()).collect();
    fn find(p: &mut [usize], i: usize) -> usize {
        if p[i] != i {
            let r = find(p, p[i]);
            p[i] = r;
        }
        p[i]
    }
    for &(a, b) in glue {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        parent[ra] = rb;
    }
    let root = find(&mut parent, 0);
    let connected = (0..pieces.len()).all(|i| find(&mut parent, i) == root);
    let chi: i64 = pieces.iter().sum();
    (chi, (2 - chi) / 2, connected)
}

/// Diameter of a point cloud: extreme points along many directions, then
/// all pairs among them.
fn cloud_diameter(pts: &[[f64; 3]]) -> f64 {
    let dirs = 1500;
    let golden = PI * (3.0 - 5f64.sqrt());
    let mut cand = crate::par::Exec::default().map(dirs, |k| {
        let z = 1.0 - 2.0 * (k as f64 + 0.5) / dirs as f64;
        let rho = (1.0 - z * z).sqrt();
        let th = golden * k as f64;
        let u = [rho * th.cos(), rho * th.sin(), z];
        let proj = |p: &[f64; 3]| p[0] * u[0] + p[1] * u[1] + p[2] * u[2];
        pts.iter()
            .enumerate()
            .max_by(|a, b| proj(a.1).total_cmp(&proj(b.1)))
            .unwrap()
            .0
    });
    cand.sort_unstable();
    cand.dedup();
    let mut best = 0.0_f64;
    for (i, &a) in cand.iter().enumerate() {
        for &b in &cand[i + 1..] {
            let p = pts[a];
            let q = pts[b];
            best = best.max(((p[0] - q[0]).powi(2) + (p[1] - q[1]).powi(2) + (p[2] - q[2]).powi(2)).sqrt());
        }
    }
    best
}

/// Build the dumbbell, choosing any unset gluing length with [`auto_epsilon`].
/// `m` is the sample budget of the axisymmetric section.
pub fn build_dumbbell(spec: &DumbbellSpec, m: usize) -> Result<Dumbbell> {
    spec.validate()?;
    let spec = if spec.eps().is_err() { auto_epsilon(spec)? } else { *spec };
    let (eps1, eps2, eps3) = spec.eps()?;
    let (rad, r, rs) = (spec.radius, spec.r, spec.r_star);
    let neck_len = spec.neck_length_or_default();
    if !(neck_len > 0.0) {
        return Err(Error::GluingOverlap(format!("straight tube length {neck_len} leaves no room between the gluings")));
    }
    for (label, e) in [("II-III", eps2), ("III-IV", eps3)] {
        if !(e < rs) {
            return Err(Error::GluingOverlap(format!("{label} length {e} reaches past the half circle (R_star = {rs})")));
        }
    }

    let bell = BellJunction::new(rad, r, spec.s_junction(), eps1)?;
    check_flare(&bell)?;
    let turn_top = ArcGluing::new(rs, eps2)?;
    let turn_bottom = ArcGluing::new(rs, eps3)?;
    let (q2_top, k_top) = check_turn(&turn_top, r, "II-III")?;
    let (q2_bot, k_bot) = check_turn(&turn_bottom, r, "III-IV")?;
    let flare = bell.zone_stats(ZONE_SAMPLES);

    let p1 = spec.p1();
    let x_tube = p1 + bell.zone_end();
    let x_turn = x_tube + neck_len;
    let cap_radius = r / END_CAP_RATIO;
    let end_cap = BellJunction::center_plane(cap_radius, r)?;

    let cap_eps = end_cap.eps;
    let right = Cap {
        center: x_turn,
        radius: cap_radius,
        join: x_turn + cap_eps,
    };
    let left = Cap {
        center: p1,
        radius: rad,
        join: p1 + bell.junction,
    };
    let capsule = axial_profile(
        right,
        left,
        |x| if x < x_turn { bell.value(x - p1) } else { end_cap.value(x_turn - x) },
        (m / 2).max(16),
    )?;
    let right_half = ProfileSurface::single(2, capsule)?;
    let left_half = right_half.reflected_x();
    let section = ProfileSurface::new(2, vec![right_half.curves()[0].clone(), left_half.curves()[0].clone()])?;

    let mut db = Dumbbell {
        spec,
        bell,
        turn_top,
        turn_bottom,
        end_cap,
        x_tube,
        x_turn,
        section,
        report: DumbbellReport {
            min_h: 0.0,
            min_h_location: String::new(),
            i_ii_max_p_ppp: flare.max_f_fpp,
            i_ii_min_h: flare.min_h,
            ii_iii_max_ppp: q2_top,
            iii_iv_max_ppp: q2_bot,
            inverse_r: 1.0 / r,
            tube_min_h: 0.0,
            c2_jumps: Vec::new(),
            euler_characteristic: 0,
            genus: 0,
            connected: false,
            embedded: false,
            bell_clearance: 0.0,
            tube_clearance: 0.0,
            area: 0.0,
            diameter: 0.0,
            inradius: 0.0,
            section_min_h: 0.0,
        },
    };

    let tube_h = tube_min_h(r, k_top.max(k_bot).max(1.0 / rs));
    let candidates = [
        (2.0 / rad, "I sphere"),
        (flare.min_h, "I-II zone"),
        (1.0 / r, "II tube"),
        (tube_h, "II-III/III-IV tube"),
    ];
    let (min_h, loc) = candidates.iter().fold((f64::INFINITY, ""), |a, &(h, l)| if h < a.0 { (h, l) } else { a });
    db.report.min_h = min_h;
    db.report.min_h_location = loc.to_string();
    db.report.tube_min_h = tube_h;

    let step = 1e-3;
    let mut jumps = Vec::new();
    for (label, x0) in [("I|I-II", bell.junction), ("I-II|II", bell.zone_end())] {
        let j = c2_jumps(|s| bell.value(s), x0, step);
        jumps.push(JumpReport { location: label.into(), value: j[0], slope: j[1], curvature: j[2] });
    }
    for (label, g) in [("II-III", &turn_top), ("III-IV", &turn_bottom)] {
        for (end, x0) in [("start", 0.0), ("end", g.eps)] {
            let j = c2_jumps(|x| g.jet(x).0, x0, step);
            jumps.push(JumpReport { location: format!("{label} {end}"), value: j[0], slope: j[1], curvature: j[2] });
        }
    }
    db.report.c2_jumps = jumps;

    // Pieces: two bells with one hole each (disks) and the tube (annulus).
    let (chi, genus, connected) = assemble_topology(&[1, 1, 0], &[(0, 2), (1, 2)]);
    db.report.euler_characteristic = chi;
    db.report.genus = genus;
    db.report.connected = connected;

    let ds = 0.25 * r;
    let line = db.centerline(ds);
    // Handle centerline against the solid right bell (kept sphere and flare),
    // measured in the meridian plane; the left half follows by symmetry.
    let merid = db.bell_meridian(0.25 * ds);
    let bell_index = DistanceIndex::from_segments(merid.windows(2).map(|w| (w[0], w[1])).collect());
    let bell_clear = line
        .iter()
        .map(|(c, _)| bell_index.distance(Vec2::new(c.x, c.y.abs())) - r)
        .fold(f64::INFINITY, f64::min);
    // Whole open centerline: tube II, the turn, line IV, then the mirror image back.
    let k = (((x_turn - x_tube) / ds).ceil() as usize).max(2);
    let mut path: Vec<Vec2> = (0..k).map(|j| Vec2::new(x_tube + (x_turn - x_tube) * j as f64 / k as f64, 0.0)).collect();
    path.extend(line.iter().map(|(c, _)| *c));
    let back: Vec<Vec2> = path.iter().rev().skip(1).map(|c| Vec2::new(-c.x, c.y)).collect();
    path.extend(back);
    // Closer pairs are covered by the curvature bound r * kappa < 1/2.
    let kappa_max = k_top.max(k_bot).max(1.0 / rs);
    let mut arc = vec![0.0];
    for w in path.windows(2) {
        arc.push(arc.last().unwrap() + w[0].dist(w[1]));
    }
    let tube_clear = crate::par::Exec::default()
        .map(path.len(), |i| {
            (i + 1..path.len())
                .filter(|&j| arc[j] - arc[i] > PI / kappa_max)
                .map(|j| path[i].dist(path[j]) - 2.0 * r)
                .fold(f64::INFINITY, f64::min)
        })
        .into_iter()
        .fold(f64::INFINITY, f64::min);
    db.report.bell_clearance = bell_clear;
    db.report.tube_clearance = tube_clear;
    let section_embedded = self_intersects(&db.section).is_none();
    db.report.embedded = bell_clear > 0.0 && tube_clear > 0.0 && section_embedded;
    if !db.report.embedded {
        return Err(Error::InvalidGeometry(format!(
            "dumbbell is not embedded (bell clearance {bell_clear:e}, tube clearance {tube_clear:e}, section embedded {section_embedded})"
        )));
    }

    let zone_area = {
        let k = 20000;
        (0..k)
            .map(|j| {
                let s = bell.junction + bell.eps * (j as f64 + 0.5) / k as f64;
                let (f, f1, _) = bell.jet(s);
                2.0 * PI * f * (1.0 + f1 * f1).sqrt() * bell.eps / k as f64
            })
            .sum::<f64>()
    };
    let sphere_area = 2.0 * PI * rad * (rad + bell.junction);
    db.report.area = 2.0 * (sphere_area + zone_area + 2.0 * PI * r * db.centerline_length());
    db.report.diameter = cloud_diameter(&db.composite_points(0.05 * rad));
    db.report.inradius = inradius(&db.section)?.radius;
    db.report.section_min_h = mean_curvature(&db.section)?
        .iter()
        .flatten()
        .copied()
        .fold(f64::INFINITY, f64::min);
    if !(db.report.section_min_h > 0.0) {
        return Err(Error::NotMeanConvex {
            condition: "H > 0".into(),
            location: "sampled flow section".into(),
            value: db.report.section_min_h,
        });
    }
    Ok(db)
}
