use super::stepper::FlowConfig;
use super::{EventKind, FlowEvent, FlowTrajectory, Frame, FrameDiagnostics};
use crate::error::{Error, Result};
use crate::geometry::{area, self_intersects, RadialGraph};

/// Mean curvature at sample `k` from centered differences in θ.
fn mean_curvature_at(g: &RadialGraph, k: usize) -> f64 {
    let dth = g.dtheta();
    let ki = k as isize;
    let r = g.at(ki);
    let rp = (g.at(ki + 1) - g.at(ki - 1)) / (2.0 * dth);
    let rpp = (g.at(ki + 1) - 2.0 * r + g.at(ki - 1)) / (dth * dth);
    let q = r * r + rp * rp;
    let kappa = (r * r + 2.0 * rp * rp - r * rpp) / q.powf(1.5);
    if g.n() == 1 {
        return kappa;
    }
    let th = g.theta(k);
    let s = th.sin();
    if s.abs() < 1e-12 {
        // on the axis the rotational principal curvature equals kappa
        return 2.0 * kappa;
    }
    kappa + (r * s - rp * th.cos()) / (q.sqrt() * r * s)
}

/// `∂r/∂t = sqrt(1 + r'^2/r^2) / H` at every sample, with the mean
/// curvatures.
pub fn radial_velocity(g: &RadialGraph) -> Result<(Vec<f64>, Vec<f64>)> {
    let dth = g.dtheta();
    let m = g.radii().len();
    let mut vel = Vec::with_capacity(m);
    let mut hs = Vec::with_capacity(m);
    for k in 0..m {
        let r = g.at(k as isize);
        if !(r > 0.0) {
            return Err(Error::LostStarShape { index: k, reason: format!("r = {r:e}") });
        }
        let h = mean_curvature_at(g, k);
        if !(h > 0.0) {
            return Err(Error::LostStarShape { index: k, reason: format!("H = {h:e}") });
        }
        let rp = (g.at(k as isize + 1) - g.at(k as isize - 1)) / (2.0 * dth);
        vel.push((1.0 + rp * rp / (r * r)).sqrt() / h);
        hs.push(h);
    }
    Ok((vel, hs))
}

fn advance(g: &RadialGraph, v: &[f64], dt: f64) -> Result<RadialGraph> {
    let r: Vec<f64> = g.radii().iter().zip(v).map(|(r, v)| r + dt * v).collect();
    if let Some(k) = r.iter().position(|&x| !(x > 0.0)) {
        return Err(Error::LostStarShape { index: k, reason: format!("r = {:e}", r[k]) });
    }
    Ok(g.with_radii(r))
}

fn frame(g: &RadialGraph, t: f64, hs: &[f64]) -> Result<Frame> {
    let surface = g.to_profile()?;
    Ok(Frame {
        t,
        diag: FrameDiagnostics {
            area: area(&surface),
            min_h: hs.iter().copied().fold(f64::INFINITY, f64::min),
            max_h: hs.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            embedded: self_intersects(&surface).is_none(),
        },
        surface,
    })
}

/// Integrate a star-shaped graph with Heun steps. `config.m` and
/// `config.resample_every` are ignored; the θ-grid is that of `graph`.
/// Fails with `LostStarShape` if a radius or mean curvature becomes
/// non-positive.
pub fn run_radial_graph(graph: &RadialGraph, config: &FlowConfig) -> Result<FlowTrajectory> {
    config.validate()?;
    let (_, h0) = radial_velocity(graph)?;
    let mut g = graph.clone();
    let mut frames = vec![frame(&g, 0.0, &h0)?];
    let mut radial = vec![g.clone()];
    let mut t = 0.0;
    let mut steps = 0usize;
    let mut record_k = 1usize;
    let mut next_record = config.record_time(record_k);
    let dth = g.dtheta();

    let event = loop {
        if steps >= config.max_steps {
            break FlowEvent {
                kind: EventKind::StoppedMaxSteps,
                t_event: t,
                detail: format!("max_steps = {} reached", config.max_steps),
                intersection: None,
                min_h_sample: None,
            };
        }
        let (v1, hs) = radial_velocity(&g)?;
        let min_h = hs.iter().copied().fold(f64::INFINITY, f64::min);
        let r_min = g.radii().iter().copied().fold(f64::INFINITY, f64::min);
        let mut dt = config.cfl * (r_min * dth).powi(2) * min_h * min_h;
        let target = next_record;
        let landing = t + dt >= target - 1e-12 * target.max(1.0);
        if landing {
            dt = target - t;
        }
        let pred = advance(&g, &v1, dt)?;
        g = if config.rk2 {
            let (v2, _) = radial_velocity(&pred)?;
            let avg: Vec<f64> = v1.iter().zip(&v2).map(|(a, b)| 0.5 * (a + b)).collect();
            advance(&g, &avg, dt)?
        } else {
            pred
        };
        steps += 1;
        if landing {
            t = target;
            let (_, hs) = radial_velocity(&g)?;
            frames.push(frame(&g, t, &hs)?);
            radial.push(g.clone());
            record_k += 1;
            next_record = config.record_time(record_k);
            if t == config.t_end {
                break FlowEvent {
                    kind: EventKind::Completed,
                    t_event: t,
                    detail: String::new(),
                    intersection: None,
                    min_h_sample: None,
                };
            }
        } else {
            t += dt;
        }
    };

    Ok(FlowTrajectory {
        n: graph.n(),
        frames,
        event,
        steps,
        first_intersection: None,
        radial,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Vec2;

    #[test]
    fn sphere_expands_exponentially() {
        for n in [1usize, 2] {
            let g = RadialGraph::from_fn(n, Vec2::ZERO, 128, |_| 1.0).unwrap();
            let cfg = FlowConfig { t_end: 0.5, record_every: 0.25, ..FlowConfig::default() };
            let tr = run_radial_graph(&g, &cfg).unwrap();
            let expect = (0.5 / n as f64).exp();
            let r = tr.radial.last().unwrap().radii();
            for &x in r {
                assert!((x - expect).abs() < 1e-6, "n={n} r={x} expect={expect}");
            }
        }
    }

    #[test]
    fn pole_curvature_is_continuous() {
        let g = RadialGraph::from_fn(2, Vec2::ZERO, 201, |th| 1.0 + 0.1 * (2.0 * th).cos()).unwrap();
        let h0 = mean_curvature_at(&g, 0);
        let h1 = mean_curvature_at(&g, 1);
        assert!((h0 - h1).abs() < 0.01, "{h0} vs {h1}");
    }
}
