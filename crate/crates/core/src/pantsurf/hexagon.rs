//! The right-angled hexagon chart of a pair of pants.
//!
//! The three boundary axes of a pants group, together with their pairwise
//! common perpendiculars, bound a right-angled hexagon; the pants is the
//! double of that hexagon across the perpendicular (seam) sides. A hexagon
//! plus one adjacent reflected copy is a fundamental domain, which is what
//! the frame sampler draws from.

use super::{PantsError, PantsGroup};
use crate::hyp2::{common_perpendicular, dist, Frame2, Geodesic, HPoint};
use crate::seeding::rng_from_seed;
use rand::Rng;

pub struct PantsChart {
    /// Hexagon vertices in cyclic order:
    /// [p13, p12, p21, p23, p32, p31] with pij = foot on axis i of the
    /// perpendicular to axis j.
    pub vertices: [HPoint; 6],
    /// Side geodesics in cyclic order: axis1, perp(1,2), axis2, perp(2,3),
    /// axis3, perp(3,1).
    pub sides: [Geodesic; 6],
    inside_sign: [f64; 6],
    /// Euclidean bounding box (x0, x1, y0, y1) of the hexagon.
    pub bbox: (f64, f64, f64, f64),
    /// Seam across which the second half of the fundamental domain lies.
    pub seam: Geodesic,
}

impl PantsChart {
    pub fn build(p: &PantsGroup) -> Result<Self, PantsError> {
        let curves = p.boundary_curves();
        let axes = [
            crate::hyp2::axis(&curves[0])?,
            crate::hyp2::axis(&curves[1])?,
            crate::hyp2::axis(&curves[2])?,
        ];
        let (p12, p21, _) = common_perpendicular(&axes[0], &axes[1])?;
        let (p23, p32, _) = common_perpendicular(&axes[1], &axes[2])?;
        let (p31, p13, _) = common_perpendicular(&axes[2], &axes[0])?;
        let vertices = [p13, p12, p21, p23, p32, p31];
        let sides = [
            axes[0],
            Geodesic::through_points(p12, p21),
            axes[1],
            Geodesic::through_points(p23, p32),
            axes[2],
            Geodesic::through_points(p31, p13),
        ];
        // Interior side of each geodesic: where the non-incident vertices sit.
        let mut inside_sign = [0.0f64; 6];
        for (i, side) in sides.iter().enumerate() {
            let mut sign = 0.0f64;
            for (j, v) in vertices.iter().enumerate() {
                // vertices j = i and j = (i+1) mod 6 lie on side i
                if j == i || j == (i + 1) % 6 {
                    continue;
                }
                let s = side.side(*v);
                if s.abs() > 1e-9 {
                    if sign == 0.0 {
                        sign = s.signum();
                    } else if sign != s.signum() {
                        return Err(PantsError::NumericFailure {
                            context: "hexagon is not convex",
                            residual: s.abs(),
                        });
                    }
                }
            }
            if sign == 0.0 {
                return Err(PantsError::NumericFailure {
                    context: "degenerate hexagon side",
                    residual: 0.0,
                });
            }
            inside_sign[i] = sign;
        }
        // bounding box over vertices plus circular-arc apexes
        let mut x0 = f64::INFINITY;
        let mut x1 = f64::NEG_INFINITY;
        let mut y0 = f64::INFINITY;
        let mut y1 = f64::NEG_INFINITY;
        for v in &vertices {
            x0 = x0.min(v.x);
            x1 = x1.max(v.x);
            y0 = y0.min(v.y);
            y1 = y1.max(v.y);
        }
        for (i, side) in sides.iter().enumerate() {
            if let Geodesic::Circle { c, r } = side {
                let a = vertices[i];
                let b = vertices[(i + 1) % 6];
                if a.x.min(b.x) <= *c && *c <= a.x.max(b.x) {
                    y1 = y1.max(*r);
                }
            }
        }
        Ok(PantsChart {
            vertices,
            sides,
            inside_sign,
            bbox: (x0, x1, y0, y1),
            seam: sides[1],
        })
    }

    pub fn contains(&self, z: HPoint) -> bool {
        self.sides
            .iter()
            .zip(self.inside_sign)
            .all(|(side, sign)| side.side(z) * sign >= -1e-12)
    }

    /// Half-boundary side lengths (the sides lying on the three axes); these
    /// equal half the pants boundary lengths.
    pub fn axis_side_lengths(&self) -> [f64; 3] {
        [
            dist(self.vertices[0], self.vertices[1]),
            dist(self.vertices[2], self.vertices[3]),
            dist(self.vertices[4], self.vertices[5]),
        ]
    }

    /// Hyperbolic area of the bounding box.
    pub fn bbox_area(&self) -> f64 {
        let (x0, x1, y0, y1) = self.bbox;
        (x1 - x0) * (1.0 / y0 - 1.0 / y1)
    }

    /// A deterministic interior point: the midpoint of the seam between the
    /// feet on axes 1 and 2.
    pub fn center(&self) -> HPoint {
        // walk the geodesic between vertices 1 and 2 to its midpoint
        midpoint(self.vertices[1], self.vertices[2])
    }
}

/// Midpoint of the geodesic segment between two points, by averaging the
/// arclength parameter along the connecting geodesic.
pub fn midpoint(a: HPoint, b: HPoint) -> HPoint {
    match Geodesic::through_points(a, b) {
        Geodesic::Vertical { x } => HPoint::new(x, (a.y * b.y).sqrt()),
        Geodesic::Circle { c, r } => {
            // arclength along (c + r cos t, r sin t) is ln tan(t/2)
            let s = |p: HPoint| (f64::atan2(p.y, p.x - c) / 2.0).tan().ln();
            let t = 2.0 * ((0.5 * (s(a) + s(b))).exp()).atan();
            HPoint::new(c + r * t.cos(), r * t.sin())
        }
    }
}

/// One uniform-area sample from the double-hexagon fundamental domain plus a
/// uniform direction; deterministic per seed. Also returns the number of
/// rejection proposals used (diagnostic for the area estimate).
pub fn sample_frame(chart: &PantsChart, seed: u64) -> (Frame2, usize) {
    let mut rng = rng_from_seed(seed);
    let (x0, x1, y0, y1) = chart.bbox;
    let mut proposals = 0usize;
    loop {
        proposals += 1;
        let x = rng.gen_range(x0..x1);
        // density 1/y^2 on [y0, y1] by inverse transform
        let u: f64 = rng.gen();
        let y = 1.0 / (1.0 / y0 - u * (1.0 / y0 - 1.0 / y1));
        let z = HPoint::new(x, y);
        if chart.contains(z) {
            let flip: bool = rng.gen();
            let point = if flip { chart.seam.reflect(z) } else { z };
            let dir = rng.gen_range(0.0..std::f64::consts::TAU);
            return (Frame2::new(point, dir), proposals);
        }
    }
}

/// Monte Carlo estimate of the pants area from the acceptance rate of the
/// chart sampler: 2 * bbox_area * accepted / proposed.
pub fn estimate_pants_area(chart: &PantsChart, samples: usize, seed: u64) -> f64 {
    let mut rng = rng_from_seed(seed);
    let (x0, x1, y0, y1) = chart.bbox;
    let mut accepted = 0usize;
    for _ in 0..samples {
        let x = rng.gen_range(x0..x1);
        let u: f64 = rng.gen();
        let y = 1.0 / (1.0 / y0 - u * (1.0 / y0 - 1.0 / y1));
        if chart.contains(HPoint::new(x, y)) {
            accepted += 1;
        }
    }
    2.0 * chart.bbox_area() * accepted as f64 / samples as f64
}
