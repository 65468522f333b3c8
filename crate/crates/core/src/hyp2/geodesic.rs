//! Complete geodesics of the upper half-plane: half-circles centered on the
//! real axis, or vertical lines.

use super::{dist, map_to_zero_infinity, HPoint, Hyp2Error, Isometry};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Geodesic {
    /// Half-circle |z - c| = r, r > 0.
    Circle { c: f64, r: f64 },
    /// Vertical line Re z = x.
    Vertical { x: f64 },
}

impl Geodesic {
    /// Geodesic with the given boundary endpoints (None = infinity).
    pub fn through_boundary(u: Option<f64>, v: Option<f64>) -> Option<Self> {
        match (u, v) {
            (Some(u), Some(v)) => {
                if (u - v).abs() < 1e-14 * (1.0 + u.abs() + v.abs()) {
                    None
                } else {
                    Some(Geodesic::Circle {
                        c: 0.5 * (u + v),
                        r: 0.5 * (u - v).abs(),
                    })
                }
            }
            (Some(u), None) | (None, Some(u)) => Some(Geodesic::Vertical { x: u }),
            (None, None) => None,
        }
    }

    /// Geodesic through two interior points.
    pub fn through_points(z: HPoint, w: HPoint) -> Self {
        if (z.x - w.x).abs() < 1e-12 {
            return Geodesic::Vertical { x: 0.5 * (z.x + w.x) };
        }
        // equidistant center on the real axis: |z - c|^2 = |w - c|^2
        let c = (z.x * z.x + z.y * z.y - w.x * w.x - w.y * w.y) / (2.0 * (z.x - w.x));
        let r = ((z.x - c) * (z.x - c) + z.y * z.y).sqrt();
        Geodesic::Circle { c, r }
    }

    /// Boundary endpoints, ordered (left, right) for circles.
    pub fn endpoints(&self) -> (Option<f64>, Option<f64>) {
        match *self {
            Geodesic::Circle { c, r } => (Some(c - r), Some(c + r)),
            Geodesic::Vertical { x } => (Some(x), None),
        }
    }

    /// Signed side indicator: zero on the geodesic, opposite signs on the
    /// two complementary half-planes.
    pub fn side(&self, z: HPoint) -> f64 {
        match *self {
            Geodesic::Circle { c, r } => (z.x - c) * (z.x - c) + z.y * z.y - r * r,
            Geodesic::Vertical { x } => z.x - x,
        }
    }

    /// Side indicator for a boundary point (None = infinity).
    pub fn side_boundary(&self, p: Option<f64>) -> f64 {
        match *self {
            Geodesic::Circle { c, r } => match p {
                Some(x) => (x - c) * (x - c) - r * r,
                None => 1.0,
            },
            Geodesic::Vertical { x } => match p {
                Some(p) => p - x,
                None => 1.0,
            },
        }
    }

    /// Reflection (orientation-reversing isometry) across the geodesic,
    /// applied to a point.
    pub fn reflect(&self, z: HPoint) -> HPoint {
        match *self {
            Geodesic::Circle { c, r } => {
                let dx = z.x - c;
                let rho2 = dx * dx + z.y * z.y;
                HPoint::new(c + r * r * dx / rho2, r * r * z.y / rho2)
            }
            Geodesic::Vertical { x } => HPoint::new(2.0 * x - z.x, z.y),
        }
    }

    /// Hyperbolic distance from a point to the geodesic.
    pub fn dist_to(&self, z: HPoint) -> f64 {
        // sinh(dist) = |side quantity| normalized; use the standard formulas.
        match *self {
            Geodesic::Circle { c, r } => {
                let dx = z.x - c;
                let num = dx * dx + z.y * z.y - r * r;
                (num / (2.0 * r * z.y)).abs().asinh()
            }
            Geodesic::Vertical { x } => ((z.x - x) / z.y).abs().asinh(),
        }
    }

    /// Image geodesic under an isometry (mapped through the endpoints).
    pub fn map(&self, g: &Isometry) -> Geodesic {
        let (u, v) = self.endpoints();
        let mu = apply_real(g, u);
        let mv = apply_real(g, v);
        Geodesic::through_boundary(mu, mv).expect("isometries keep endpoints distinct")
    }
}

/// Moebius action on R u {inf} (None = infinity).
pub fn apply_real(g: &Isometry, x: Option<f64>) -> Option<f64> {
    let (a, b, c, d) = g.entries();
    match x {
        None => {
            if c.abs() < 1e-300 {
                None
            } else {
                Some(a / c)
            }
        }
        Some(x) => {
            let den = c * x + d;
            if den.abs() < 1e-300 {
                None
            } else {
                Some((a * x + b) / den)
            }
        }
    }
}

/// Feet of the common perpendicular between two disjoint geodesics:
/// (foot on `g1`, foot on `g2`, distance between the geodesics).
pub fn common_perpendicular(g1: &Geodesic, g2: &Geodesic) -> Result<(HPoint, HPoint, f64), Hyp2Error> {
    // Normalize g1 to the imaginary axis.
    let (u, v) = g1.endpoints();
    let n = map_to_zero_infinity(u, v);
    let h2 = g2.map(&n);
    let (c, r) = match h2 {
        Geodesic::Circle { c, r } => (c, r),
        Geodesic::Vertical { .. } => {
            return Err(Hyp2Error::NumericFailure {
                context: "common_perpendicular: geodesics share an endpoint",
                residual: 0.0,
            })
        }
    };
    if c.abs() <= r {
        return Err(Hyp2Error::NumericFailure {
            context: "common_perpendicular: geodesics intersect or touch",
            residual: r - c.abs(),
        });
    }
    let rho = (c * c - r * r).sqrt();
    let foot1 = HPoint::new(0.0, rho);
    let fx = (c * c - r * r) / c;
    let fy = r * rho / c.abs();
    let foot2 = HPoint::new(fx, fy);
    let ninv = n.inverse();
    let p1 = ninv.apply(foot1);
    let p2 = ninv.apply(foot2);
    let d = dist(p1, p2);
    Ok((p1, p2, d))
}
