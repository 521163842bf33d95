use imcf_core::constructions::DumbbellReport;
use imcf_core::diagnostics::t_star;
use imcf_core::geometry::io::write_profile;
use imcf_core::geometry::{area, diameter, inradius, self_intersects, LocalGeometry};
use imcf_core::hull::{audit_dumbbell_hull, DumbbellHullAudit};
use serde::Serialize;

use crate::config::ExperimentConfig;
use crate::error::CliResult;
use crate::output::{create_dir, write, write_json};
use crate::shapes::{Built, ShapeConfig};

#[derive(Debug, Serialize)]
pub struct BuildReport {
    pub shape: ShapeConfig,
    pub n: usize,
    pub components: usize,
    pub samples: usize,
    /// Measures of the written profile.
    pub area: f64,
    pub diameter: f64,
    pub inradius: f64,
    pub inradius_center: [f64; 2],
    pub t_star: f64,
    pub min_h: f64,
    pub self_intersecting: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dumbbell: Option<DumbbellBlock>,
}

/// Certificates of the full handle dumbbell (the profile is its flow section).
#[derive(Debug, Serialize)]
pub struct DumbbellBlock {
    pub min_h: f64,
    pub diameter: f64,
    pub inradius: f64,
    pub t_star: f64,
    pub outward_minimizing: bool,
    pub strictly_outward_minimizing: bool,
    pub certificates: DumbbellReport,
    pub hull: DumbbellHullAudit,
}

pub fn report(shape: &ShapeConfig, built: &Built) -> CliResult<BuildReport> {
    let s = &built.surface;
    let ins = inradius(s)?;
    let diam = diameter(s).value;
    let dumbbell = match &built.dumbbell {
        Some(db) => {
            let hull = audit_dumbbell_hull(db)?;
            Some(DumbbellBlock {
                min_h: db.report.min_h,
                diameter: db.report.diameter,
                inradius: db.report.inradius,
                t_star: t_star(db.report.diameter, db.report.inradius, 2)?,
                outward_minimizing: hull.is_outward_minimizing,
                strictly_outward_minimizing: hull.is_strictly,
                certificates: db.report.clone(),
                hull,
            })
        }
        None => None,
    };
    Ok(BuildReport {
        shape: shape.clone(),
        n: s.n(),
        components: s.curves().len(),
        samples: s.sample_count(),
        area: area(s),
        diameter: diam,
        inradius: ins.radius,
        inradius_center: [ins.center.x, ins.center.y],
        t_star: t_star(diam, ins.radius, s.n())?,
        min_h: LocalGeometry::compute(s)?.min_h(),
        self_intersecting: self_intersects(s).is_some(),
        dumbbell,
    })
}

pub fn run(cfg: &ExperimentConfig) -> CliResult<i32> {
    let built = cfg.shape.build(cfg.flow.m)?;
    let rep = report(&cfg.shape, &built)?;
    create_dir(&cfg.output_dir)?;
    write(&cfg.output_dir.join("profile.csv"), &write_profile(&built.surface))?;
    write_json(&cfg.output_dir.join("build_report.json"), &rep)?;
    println!(
        "built {} samples: area {:.6}, diam {:.6}, inradius {:.6}, t* {:.6}, min H {:.6}{}",
        rep.samples,
        rep.area,
        rep.diameter,
        rep.inradius,
        rep.t_star,
        rep.min_h,
        rep.dumbbell
            .as_ref()
            .map(|d| format!(", outward minimizing {}", d.outward_minimizing))
            .unwrap_or_default()
    );
    Ok(0)
}
