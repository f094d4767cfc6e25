//! Zero counts of `φ` in rectangles by the argument principle.

use std::f64::consts::PI;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::herglotz::ModelPair;
use crate::numerics::quad::{integrate, QuadOptions};
use crate::{Error, Result, C64};

/// Largest admissible distance of the winding integral from an integer.
pub const INTEGER_TOL: f64 = 0.05;
/// The bottom edge on the real axis is moved this far (relative) below it.
const AXIS_NUDGE: f64 = 1e-7;
const MAX_NUDGES: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Rectangle {
    pub x0: f64,
    pub x1: f64,
    pub y0: f64,
    pub y1: f64,
}

impl Rectangle {
    pub fn contains(&self, z: C64) -> bool {
        z.re > self.x0 && z.re < self.x1 && z.im > self.y0 && z.im < self.y1
    }

    fn size(&self) -> f64 {
        (self.x1 - self.x0).max(self.y1 - self.y0)
    }

    fn expand(&self, d: f64) -> Rectangle {
        Rectangle {
            x0: self.x0 - d,
            x1: self.x1 + d,
            y0: self.y0,
            y1: self.y1 + d,
        }
    }
}

impl FromStr for Rectangle {
    type Err = Error;

    /// `x0,x1,y0,y1`
    fn from_str(s: &str) -> Result<Self> {
        let v: Vec<f64> = s
            .split(',')
            .map(|p| p.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::BadParameters(format!("rectangle '{s}': {e}")))?;
        if v.len() != 4 {
            return Err(Error::BadParameters(format!(
                "rectangle '{s}' needs x0,x1,y0,y1"
            )));
        }
        let r = Rectangle {
            x0: v[0],
            x1: v[1],
            y0: v[2],
            y1: v[3],
        };
        if !(r.x0 < r.x1 && r.y0 < r.y1 && r.y0 >= 0.0) {
            return Err(Error::BadParameters(format!(
                "rectangle '{s}' must satisfy x0 < x1, 0 <= y0 < y1"
            )));
        }
        Ok(r)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct WindowCount {
    pub requested: Rectangle,
    /// Rectangle actually integrated over, after nudging.
    pub contour: Rectangle,
    pub winding: f64,
    pub distance_to_integer: f64,
    /// Zeros of `i + ρ` inside the contour (poles of `φ`).
    pub poles_inside: usize,
    pub zero_count: i64,
    /// Zeros of the numerator polynomial inside the same contour.
    pub companion_count: Option<usize>,
    pub nudges: usize,
}

fn edge_integral(model: &ModelPair, a: C64, b: C64, opts: QuadOptions) -> (C64, bool) {
    let d = b - a;
    let r = integrate(|s| model.phi_log_derivative(a + d * s) * d, 0.0, 1.0, opts);
    (r.value, r.converged)
}

fn winding(model: &ModelPair, r: &Rectangle) -> (f64, bool) {
    let corners = [
        C64::new(r.x0, r.y0),
        C64::new(r.x1, r.y0),
        C64::new(r.x1, r.y1),
        C64::new(r.x0, r.y1),
    ];
    let opts = QuadOptions {
        abs_tol: 1e-10,
        rel_tol: 1e-10,
        max_segments: 4000,
    };
    let mut total = C64::new(0.0, 0.0);
    let mut ok = true;
    for k in 0..4 {
        let (v, c) = edge_integral(model, corners[k], corners[(k + 1) % 4], opts);
        total += v;
        ok &= c;
    }
    ((total / C64::new(0.0, 2.0 * PI)).re, ok)
}

/// Counts zeros of `φ` in the closed rectangle: zeros on the real axis are
/// included by moving the bottom edge just below it. Poles of `φ` (zeros of
/// `i + ρ`, all in the open lower half-plane) that the nudge captures are
/// added back.
pub fn volterra_window_check(model: &ModelPair, rect: Rectangle) -> Result<WindowCount> {
    let rf = model.rational().ok();
    let (zeros, poles): (Option<Vec<C64>>, Vec<C64>) = match &rf {
        Some(rf) => (
            Some(rf.p_beta.roots()?.iter().map(|u| u * rf.scale).collect()),
            rf.phi_denominator()
                .roots()?
                .iter()
                .map(|u| u * rf.scale)
                .collect(),
        ),
        None => (None, Vec::new()),
    };
    let scale = model.scale().max(rect.size()).max(1.0);
    let mut nudges = 0;
    let mut last = String::new();
    while nudges < MAX_NUDGES {
        let grow = if nudges == 0 {
            0.0
        } else {
            1e-3 * rect.size() * nudges as f64
        };
        let mut contour = rect.expand(grow);
        if contour.y0 == 0.0 {
            contour.y0 = -AXIS_NUDGE * scale * (1 + nudges) as f64;
        }
        let (w, converged) = winding(model, &contour);
        let k = w.round();
        let dist = (w - k).abs();
        if converged && dist <= INTEGER_TOL {
            let poles_inside = poles.iter().filter(|p| contour.contains(**p)).count();
            return Ok(WindowCount {
                requested: rect,
                contour,
                winding: w,
                distance_to_integer: dist,
                poles_inside,
                zero_count: k as i64 + poles_inside as i64,
                companion_count: zeros
                    .as_ref()
                    .map(|z| z.iter().filter(|z| contour.contains(**z)).count()),
                nudges,
            });
        }
        last = format!("winding {w} (converged: {converged})");
        nudges += 1;
    }
    Err(Error::ContourTooClose(last))
}
