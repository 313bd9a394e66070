//! One- and two-dimensional quadrature on the period box.

mod gauss;
mod region;

pub use gauss::GaussRule;
pub use region::{TriangleRegion, MIN_AREA};

use crate::complex::CompensatedSum;
use crate::error::{Error, Result};
use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;

/// Resolution and tolerance shared by all integrators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub nodes_1d: usize,
    /// Panels per axis for two-dimensional rules.
    pub panels_2d: usize,
    /// Gauss order per panel.
    pub order: usize,
    pub tol: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec { nodes_1d: 512, panels_2d: 64, order: 8, tol: 1e-10 }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        if self.nodes_1d < 16 {
            return Err(Error::InvalidInput(format!("nodes_1d = {} is below 16", self.nodes_1d)));
        }
        if self.panels_2d < 2 {
            return Err(Error::InvalidInput("panels_2d must be at least 2".into()));
        }
        if self.order == 0 || self.order > 64 {
            return Err(Error::InvalidInput(format!("gauss order {} is outside 1..=64", self.order)));
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(Error::InvalidInput("quadrature tol must be positive".into()));
        }
        Ok(())
    }
}

#[inline]
fn agree(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol * b.norm().max(1.0)
}

/// Result of an integration together with the last doubling difference.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: Complex64,
    pub est_error: f64,
}

/// Trapezoid rule on `n` equispaced nodes of `[-pi, pi)`.
pub fn trapezoid_fixed<F: Fn(f64) -> Complex64>(f: F, n: usize) -> Complex64 {
    let h = 2.0 * PI / n as f64;
    let mut s = CompensatedSum::new();
    for j in 0..n {
        s.add(f(-PI + h * j as f64));
    }
    s.value() * h
}

/// Periodic trapezoid with a node-doubling convergence test.
pub fn periodic_trapezoid<F: Fn(f64) -> Complex64>(f: F, spec: &QuadratureSpec) -> Result<Complex64> {
    Ok(periodic_trapezoid_est(f, spec)?.value)
}

pub fn periodic_trapezoid_est<F: Fn(f64) -> Complex64>(f: F, spec: &QuadratureSpec) -> Result<Integral> {
    spec.validate()?;
    let mut n = spec.nodes_1d;
    let mut prev = trapezoid_fixed(&f, n);
    for _ in 0..2 {
        // Refine by adding the midpoints of the current grid.
        let h = 2.0 * PI / n as f64;
        let mut mid = CompensatedSum::new();
        for j in 0..n {
            mid.add(f(-PI + h * (j as f64 + 0.5)));
        }
        let next = 0.5 * (prev + mid.value() * h);
        n *= 2;
        if agree(next, prev, spec.tol) {
            return Ok(Integral { value: next, est_error: (next - prev).norm() });
        }
        prev = next;
    }
    Err(Error::NoConvergence { what: "periodic trapezoid", iterations: n })
}

fn composite_gauss<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64, panels: usize, rule: &GaussRule) -> Complex64 {
    let h = (b - a) / panels as f64;
    let mut s = CompensatedSum::new();
    for p in 0..panels {
        let lo = a + h * p as f64;
        for (x, w) in rule.mapped(lo, lo + h) {
            s.add(f(x) * w);
        }
    }
    s.value()
}

/// Composite Gauss-Legendre on `[a, b]` with a panel-doubling test.
pub fn panel_integral_1d<F: Fn(f64) -> Complex64>(f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<Complex64> {
    Ok(panel_integral_1d_est(f, a, b, spec)?.value)
}

pub fn panel_integral_1d_est<F: Fn(f64) -> Complex64>(
    f: F,
    a: f64,
    b: f64,
    spec: &QuadratureSpec,
) -> Result<Integral> {
    spec.validate()?;
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::InvalidInput("integration limits must be finite".into()));
    }
    let rule = GaussRule::new(spec.order);
    let mut panels = (spec.nodes_1d / spec.order).max(1);
    let mut prev = composite_gauss(&f, a, b, panels, &rule);
    for _ in 0..2 {
        panels *= 2;
        let next = composite_gauss(&f, a, b, panels, &rule);
        if agree(next, prev, spec.tol) {
            return Ok(Integral { value: next, est_error: (next - prev).norm() });
        }
        prev = next;
    }
    Err(Error::NoConvergence { what: "panel integral", iterations: panels * spec.order })
}

// Duffy-collapsed tensor rule on the triangle at a given panel count. Rows of
// the outer variable run in parallel; the row sums are reduced in a fixed order.
fn triangle_level<F>(f2: &F, t: &TriangleRegion, panels: usize, rule: &GaussRule) -> Complex64
where
    F: Fn(f64, f64) -> Complex64 + Sync,
{
    let [(x0, y0), (x1, y1), (x2, y2)] = t.vertices();
    let (ax, ay) = (x1 - x0, y1 - y0);
    let (bx, by) = (x2 - x0, y2 - y0);
    let jac = t.signed_double_area().abs();
    let h = 1.0 / panels as f64;
    let rows: Vec<Complex64> = (0..panels)
        .into_par_iter()
        .map(|ps| {
            let mut acc = CompensatedSum::new();
            let slo = h * ps as f64;
            for (s, ws) in rule.mapped(slo, slo + h) {
                let mut inner = CompensatedSum::new();
                for pt in 0..panels {
                    let tlo = h * pt as f64;
                    for (u, wt) in rule.mapped(tlo, tlo + h) {
                        let a = s * (1.0 - u);
                        let b = s * u;
                        inner.add(f2(x0 + a * ax + b * bx, y0 + a * ay + b * by) * wt);
                    }
                }
                acc.add(inner.value() * (ws * s));
            }
            acc.value()
        })
        .collect();
    let mut total = CompensatedSum::new();
    for r in rows {
        total.add(r);
    }
    total.value() * jac
}

/// Integral of `f2` over a triangle.
pub fn triangle_integral<F>(f2: F, region: &TriangleRegion, spec: &QuadratureSpec) -> Result<Complex64>
where
    F: Fn(f64, f64) -> Complex64 + Sync,
{
    Ok(triangle_integral_est(f2, region, spec)?.value)
}

pub fn triangle_integral_est<F>(f2: F, region: &TriangleRegion, spec: &QuadratureSpec) -> Result<Integral>
where
    F: Fn(f64, f64) -> Complex64 + Sync,
{
    spec.validate()?;
    let area = region.area();
    if area < MIN_AREA {
        return Err(Error::DegenerateRegion { area });
    }
    let rule = GaussRule::new(spec.order);
    let mut panels = (spec.panels_2d / 2).max(1);
    let mut prev = triangle_level(&f2, region, panels, &rule);
    for _ in 0..3 {
        panels *= 2;
        let next = triangle_level(&f2, region, panels, &rule);
        if agree(next, prev, spec.tol) {
            return Ok(Integral { value: next, est_error: (next - prev).norm() });
        }
        prev = next;
    }
    Err(Error::NoConvergence { what: "triangle integral", iterations: panels })
}

/// `iint f2(theta, phi) sgn(theta + phi)` over the period box, split along the
/// diagonal so that no panel straddles the jump.
pub fn sign_split_integral<F>(f2: F, spec: &QuadratureSpec) -> Result<Complex64>
where
    F: Fn(f64, f64) -> Complex64 + Sync,
{
    let plus = triangle_integral_est(&f2, &TriangleRegion::tilde_plus(), spec)?;
    let minus = triangle_integral_est(&f2, &TriangleRegion::tilde_minus(), spec)?;
    Ok(plus.value - minus.value)
}

fn box_level<F>(f2: &F, panels: usize, rule: &GaussRule) -> Complex64
where
    F: Fn(f64, f64) -> Complex64 + Sync,
{
    let h = 2.0 * PI / panels as f64;
    let rows: Vec<Complex64> = (0..panels)
        .into_par_iter()
        .map(|pt| {
            let mut acc = CompensatedSum::new();
            let tlo = -PI + h * pt as f64;
            for (t, wt) in rule.mapped(tlo, tlo + h) {
                for pp in 0..panels {
                    let plo = -PI + h * pp as f64;
                    for (p, wp) in rule.mapped(plo, plo + h) {
                        acc.add(f2(t, p) * (wt * wp));
                    }
                }
            }
            acc.value()
        })
        .collect();
    let mut total = CompensatedSum::new();
    for r in rows {
        total.add(r);
    }
    total.value()
}

/// Tensor Gauss integral over the whole period box.
pub fn box_integral<F>(f2: F, spec: &QuadratureSpec) -> Result<Complex64>
where
    F: Fn(f64, f64) -> Complex64 + Sync,
{
    spec.validate()?;
    let rule = GaussRule::new(spec.order);
    let mut panels = (spec.panels_2d / 2).max(1);
    let mut prev = box_level(&f2, panels, &rule);
    for _ in 0..3 {
        panels *= 2;
        let next = box_level(&f2, panels, &rule);
        if agree(next, prev, spec.tol) {
            return Ok(next);
        }
        prev = next;
    }
    Err(Error::NoConvergence { what: "box integral", iterations: panels })
}
