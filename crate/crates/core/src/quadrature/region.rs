use crate::error::{Error, Result};
use std::f64::consts::PI;

/// Smallest triangle area treated as a genuine region.
pub const MIN_AREA: f64 = 1e-14;

const BOX_SLACK: f64 = 1e-12;

/// A triangle in the `(theta, phi)` period box `[-pi, pi]^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriangleRegion {
    vertices: [(f64, f64); 3],
}

impl TriangleRegion {
    pub fn new(vertices: [(f64, f64); 3]) -> Result<TriangleRegion> {
        for &(t, p) in &vertices {
            if !(t.is_finite() && p.is_finite()) {
                return Err(Error::InvalidInput("triangle vertex is not finite".into()));
            }
            if t.abs() > PI + BOX_SLACK || p.abs() > PI + BOX_SLACK {
                return Err(Error::InvalidInput(format!(
                    "triangle vertex ({t}, {p}) lies outside the period box"
                )));
            }
        }
        Ok(TriangleRegion { vertices })
    }

    pub fn vertices(&self) -> [(f64, f64); 3] {
        self.vertices
    }

    pub fn signed_double_area(&self) -> f64 {
        let [(x0, y0), (x1, y1), (x2, y2)] = self.vertices;
        (x1 - x0) * (y2 - y0) - (x2 - x0) * (y1 - y0)
    }

    pub fn area(&self) -> f64 {
        0.5 * self.signed_double_area().abs()
    }

    /// Upper-left corner triangle with legs `2pi - pi/gamma`. `None` when it
    /// is empty, which happens for `gamma <= 1/2`.
    pub fn delta_plus(gamma: f64) -> Option<TriangleRegion> {
        let r = Self::corner_leg(gamma)?;
        Some(TriangleRegion { vertices: [(-PI, PI - r), (-PI, PI), (-PI + r, PI)] })
    }

    /// Point reflection of [`TriangleRegion::delta_plus`] through the origin.
    pub fn delta_minus(gamma: f64) -> Option<TriangleRegion> {
        let r = Self::corner_leg(gamma)?;
        Some(TriangleRegion { vertices: [(PI, -PI + r), (PI, -PI), (PI - r, -PI)] })
    }

    /// Half of the box with `theta + phi > 0`.
    pub fn tilde_plus() -> TriangleRegion {
        TriangleRegion { vertices: [(-PI, PI), (PI, PI), (PI, -PI)] }
    }

    /// Half of the box with `theta + phi < 0`.
    pub fn tilde_minus() -> TriangleRegion {
        TriangleRegion { vertices: [(PI, -PI), (-PI, -PI), (-PI, PI)] }
    }

    fn corner_leg(gamma: f64) -> Option<f64> {
        if !(gamma > 0.5 && gamma <= 1.0) {
            return None;
        }
        let r = 2.0 * PI - PI / gamma;
        if 0.5 * r * r < MIN_AREA {
            None
        } else {
            Some(r)
        }
    }

    /// Area of the band between the two corner triangles.
    pub fn middle_band_area(gamma: f64) -> f64 {
        let corners = Self::delta_plus(gamma).map_or(0.0, |t| t.area());
        4.0 * PI * PI - 2.0 * corners
    }
}
