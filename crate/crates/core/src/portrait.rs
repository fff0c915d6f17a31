//! Phase-portrait data: direction field, trajectories and fixed points, as
//! CSV or a self-contained SVG.
//!
//! CSV columns: `kind,id,xi,theta,beta,tau,dtheta,dbeta,singular_flag`,
//! where `kind` is one of `arrow`, `trajectory`, `fixed_point_attractive`,
//! `fixed_point_repulsive` or `error`. Fields that do not apply to a row
//! kind are left empty. For arrows `id` is the grid node index; for
//! trajectories and errors it is the index of the initial state.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flow::{
    self, direction_field, fixed_points, integrate_with, FieldArrow, FixedPoint, FlowState,
    IntegratorOptions, Stability, Trajectory,
};

pub const CSV_HEADER: &str = "kind,id,xi,theta,beta,tau,dtheta,dbeta,singular_flag";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Svg,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InitialState {
    pub theta: f64,
    pub beta: f64,
    #[serde(default)]
    pub tau: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct PortraitSpec {
    pub n_theta: usize,
    pub n_beta: usize,
    pub theta_range: (f64, f64),
    pub beta_range: (f64, f64),
    pub initial_states: Vec<InitialState>,
    pub xi_end: f64,
    pub step: f64,
    /// Keep every `record_every`-th integration sample (the last one is
    /// always kept).
    pub record_every: usize,
    pub beta_min: f64,
}

/// Speeds of the default fan of trajectories, mirrored to negative β.
pub const FAN_SPEEDS: [f64; 6] = [0.1, 0.26, 0.42, 0.58, 0.74, 0.9];

impl Default for PortraitSpec {
    fn default() -> Self {
        let initial_states = FAN_SPEEDS
            .iter()
            .flat_map(|&b| [b, -b])
            .map(|beta| InitialState {
                theta: FRAC_PI_2,
                beta,
                tau: 0.0,
            })
            .collect();
        PortraitSpec {
            n_theta: 20,
            n_beta: 20,
            theta_range: (0.0, PI),
            beta_range: (-1.0, 1.0),
            initial_states,
            xi_end: 12.0,
            step: 1e-3,
            record_every: 50,
            beta_min: flow::DEFAULT_BETA_MIN,
        }
    }
}

impl PortraitSpec {
    pub fn validate(&self) -> Result<()> {
        if self.n_theta < 2 || self.n_beta < 2 {
            return Err(Error::InvalidInput("grid counts must be at least 2".into()));
        }
        if self.record_every == 0 {
            return Err(Error::InvalidInput(
                "record_every must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct Portrait {
    pub arrows: Vec<FieldArrow>,
    /// In spec order; a failed integration keeps its error.
    pub trajectories: Vec<std::result::Result<Trajectory, Error>>,
    pub fixed_points: Vec<FixedPoint>,
}

/// Evaluates the field and integrates every initial state. Trajectories run
/// on separate threads; results keep spec order.
pub fn compute_portrait(spec: &PortraitSpec) -> Result<Portrait> {
    spec.validate()?;
    let arrows = direction_field(
        spec.theta_range,
        spec.beta_range,
        spec.n_theta,
        spec.n_beta,
        spec.beta_min,
    )?;
    let opts = IntegratorOptions {
        beta_min: spec.beta_min,
        ..IntegratorOptions::new(spec.xi_end, spec.step)
    };
    let trajectories = std::thread::scope(|scope| {
        let handles: Vec<_> = spec
            .initial_states
            .iter()
            .map(|init| {
                scope.spawn(move || {
                    let state = FlowState::from_beta(init.theta, init.beta, init.tau)?;
                    integrate_with(&state, &opts)
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("trajectory worker panicked"))
            .collect()
    });
    Ok(Portrait {
        arrows,
        trajectories,
        fixed_points: fixed_points(),
    })
}

/// Indices of the samples that are written out.
pub fn recorded_indices(len: usize, every: usize) -> impl Iterator<Item = usize> {
    (0..len).filter(move |&i| i % every == 0 || i + 1 == len)
}

pub fn render_phase_portrait(spec: &PortraitSpec, format: OutputFormat) -> Result<String> {
    let portrait = compute_portrait(spec)?;
    Ok(match format {
        OutputFormat::Csv => render_csv(&portrait, spec),
        OutputFormat::Svg => render_svg(&portrait, spec),
    })
}

fn fixed_point_kind(fp: &FixedPoint) -> &'static str {
    match fp.stability {
        Stability::Attractive => "fixed_point_attractive",
        _ => "fixed_point_repulsive",
    }
}

pub fn render_csv(portrait: &Portrait, spec: &PortraitSpec) -> String {
    let mut out = String::new();
    out.push_str(CSV_HEADER);
    out.push('\n');
    for (id, a) in portrait.arrows.iter().enumerate() {
        let _ = writeln!(
            out,
            "arrow,{id},,{},{},,{},{},{}",
            a.theta, a.beta, a.dtheta, a.dbeta, a.singular as u8
        );
    }
    for (id, (traj, init)) in portrait
        .trajectories
        .iter()
        .zip(&spec.initial_states)
        .enumerate()
    {
        match traj {
            Ok(t) => {
                for i in recorded_indices(t.samples.len(), spec.record_every) {
                    let s = &t.samples[i];
                    let st = &s.state;
                    let (dtheta, dbeta) = match flow::flow_rhs(st, spec.beta_min) {
                        Ok(d) => (d.dtheta, d.dbeta),
                        Err(_) => (f64::NAN, f64::NAN),
                    };
                    let _ = writeln!(
                        out,
                        "trajectory,{id},{},{},{},{},{dtheta},{dbeta},0",
                        s.xi,
                        st.theta(),
                        st.beta(),
                        st.tau()
                    );
                }
            }
            Err(_) => {
                let _ = writeln!(
                    out,
                    "error,{id},,{},{},{},,,",
                    init.theta, init.beta, init.tau
                );
            }
        }
    }
    for fp in &portrait.fixed_points {
        let _ = writeln!(
            out,
            "{},,,{},{},,0,0,0",
            fixed_point_kind(fp),
            fp.theta,
            fp.beta
        );
    }
    out
}

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 600.0;
const MARGIN: f64 = 50.0;
const ARROW_CAP: f64 = 18.0;
const ARROW_GAIN: f64 = 6.0;

struct Frame {
    beta_range: (f64, f64),
    theta_range: (f64, f64),
}

impl Frame {
    fn sx(&self) -> f64 {
        (WIDTH - 2.0 * MARGIN) / (self.beta_range.1 - self.beta_range.0)
    }
    fn sy(&self) -> f64 {
        (HEIGHT - 2.0 * MARGIN) / (self.theta_range.1 - self.theta_range.0)
    }
    fn x(&self, beta: f64) -> f64 {
        MARGIN + (beta - self.beta_range.0) * self.sx()
    }
    fn y(&self, theta: f64) -> f64 {
        HEIGHT - MARGIN - (theta - self.theta_range.0) * self.sy()
    }
}

/// SVG 1.1 drawing: β horizontal, θ vertical (increasing upward). Arrow
/// length grows with `ln(1 + |field|)` up to a cap; attractive fixed points
/// are filled, repulsive ones hollow.
pub fn render_svg(portrait: &Portrait, spec: &PortraitSpec) -> String {
    let frame = Frame {
        beta_range: spec.beta_range,
        theta_range: spec.theta_range,
    };
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    out.push_str(concat!(
        "<defs><marker id=\"head\" markerWidth=\"6\" markerHeight=\"6\" refX=\"5\" refY=\"3\" ",
        "orient=\"auto\"><path d=\"M0,0 L6,3 L0,6 z\" fill=\"#555\"/></marker></defs>\n"
    ));
    let _ = writeln!(
        out,
        r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
    );
    let (x0, x1) = (frame.x(spec.beta_range.0), frame.x(spec.beta_range.1));
    let (y0, y1) = (frame.y(spec.theta_range.0), frame.y(spec.theta_range.1));
    let _ = writeln!(
        out,
        r##"<rect x="{x0:.2}" y="{y1:.2}" width="{:.2}" height="{:.2}" fill="none" stroke="#000"/>"##,
        x1 - x0,
        y0 - y1
    );
    let _ = writeln!(
        out,
        r#"<text x="{:.2}" y="{:.2}" font-size="16" text-anchor="middle">β</text>"#,
        WIDTH / 2.0,
        HEIGHT - 12.0
    );
    let _ = writeln!(
        out,
        r#"<text x="16" y="{:.2}" font-size="16" text-anchor="middle">θ</text>"#,
        HEIGHT / 2.0
    );
    for (v, label) in [
        (spec.beta_range.0, spec.beta_range.0),
        (spec.beta_range.1, spec.beta_range.1),
    ] {
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" font-size="12" text-anchor="middle">{label}</text>"#,
            frame.x(v),
            y0 + 16.0
        );
    }
    for v in [spec.theta_range.0, spec.theta_range.1] {
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" font-size="12" text-anchor="end">{:.4}</text>"#,
            x0 - 6.0,
            frame.y(v) + 4.0,
            v
        );
    }

    out.push_str("<g stroke=\"#555\" stroke-width=\"1\" marker-end=\"url(#head)\">\n");
    for a in &portrait.arrows {
        let (dx, dy) = if a.singular {
            (0.0, -a.direction.0)
        } else {
            (a.dbeta * frame.sx(), -a.dtheta * frame.sy())
        };
        let norm = dx.hypot(dy);
        if norm == 0.0 {
            continue;
        }
        let len = if a.singular {
            ARROW_CAP
        } else {
            (ARROW_GAIN * a.magnitude.ln_1p()).min(ARROW_CAP)
        };
        let (px, py) = (frame.x(a.beta), frame.y(a.theta));
        let _ = writeln!(
            out,
            r#"<line x1="{px:.2}" y1="{py:.2}" x2="{:.2}" y2="{:.2}"/>"#,
            px + len * dx / norm,
            py + len * dy / norm
        );
    }
    out.push_str("</g>\n");

    out.push_str("<g fill=\"none\" stroke=\"#1f5fbf\" stroke-width=\"1.5\">\n");
    for t in portrait.trajectories.iter().flatten() {
        let mut points = String::new();
        for i in recorded_indices(t.samples.len(), spec.record_every) {
            let st = &t.samples[i].state;
            if !points.is_empty() {
                points.push(' ');
            }
            let _ = write!(
                points,
                "{:.2},{:.2}",
                frame.x(st.beta()),
                frame.y(st.theta())
            );
        }
        let _ = writeln!(out, r#"<polyline points="{points}"/>"#);
    }
    out.push_str("</g>\n");

    for fp in &portrait.fixed_points {
        let fill = match fp.stability {
            Stability::Attractive => "#000",
            _ => "#fff",
        };
        let _ = writeln!(
            out,
            r##"<circle cx="{:.2}" cy="{:.2}" r="6" fill="{fill}" stroke="#000" stroke-width="1.5"/>"##,
            frame.x(fp.beta),
            frame.y(fp.theta)
        );
    }
    out.push_str("</svg>\n");
    out
}
