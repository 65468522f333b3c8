//! Exact-contract kernel for the hyperbolic plane.
//!
//! Isometries are unimodular 2x2 real matrices modulo sign, acting on the
//! upper half-plane by z -> (az+b)/(cz+d). The determinant is renormalized
//! and the sign canonicalized after every composition, so matrices stay
//! within 1e-12 of SL(2,R) over arbitrarily long products. Interior geometry
//! lives in half-plane coordinates; the circle at infinity is coordinatized
//! by the disk-model angle obtained through the fixed Cayley transform
//! z -> (z - i)/(z + i).

mod geodesic;

pub use geodesic::{apply_real, common_perpendicular, Geodesic};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Determinant drift tolerance (renormalization contract).
pub const DET_TOL: f64 = 1e-12;
/// Width of the parabolic tie band around |trace| = 2.
pub const CLASS_TOL: f64 = 1e-9;

const TAU: f64 = std::f64::consts::TAU;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Hyp2Error {
    #[error("isometry is not hyperbolic (|trace| = {trace_abs})")]
    NotHyperbolic { trace_abs: f64 },
    #[error("|trace| = {trace_abs} lies in the parabolic tie band; strict classification refused")]
    AmbiguousClass { trace_abs: f64 },
    #[error("arc must contain the repelling fixed point and exclude the attracting one")]
    BadArc,
    #[error("numeric failure in {context} (residual {residual:e})")]
    NumericFailure { context: &'static str, residual: f64 },
    #[error("matrix is not in GL+(2,R): det = {det}")]
    BadDeterminant { det: f64 },
}

/// Conjugacy type of a nontrivial isometry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IsometryClass {
    Elliptic,
    Parabolic,
    Hyperbolic,
}

/// An orientation-preserving isometry of H^2: a matrix in SL(2,R) up to sign.
///
/// Canonical representative: the first entry of (a, b, c, d) with absolute
/// value above 1e-12 is positive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Isometry {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
}

/// A point of the upper half-plane, y > 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HPoint {
    pub x: f64,
    pub y: f64,
}

/// A point on the circle at infinity, as a disk-model angle in [0, 2pi).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundaryPoint {
    pub theta: f64,
}

/// A base point with a unit tangent direction (angle in [0, 2pi)).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Frame2 {
    pub base: HPoint,
    pub direction: f64,
}

/// A closed arc on the boundary circle: angles lo + t for t in [0, len].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Arc {
    pub lo: f64,
    pub len: f64,
}

fn norm_angle(t: f64) -> f64 {
    let mut a = t % TAU;
    if a < 0.0 {
        a += TAU;
    }
    if a >= TAU {
        a = 0.0;
    }
    a
}

impl HPoint {
    pub fn new(x: f64, y: f64) -> Self {
        assert!(y > 0.0, "upper half-plane point needs y > 0, got y = {y}");
        HPoint { x, y }
    }

    pub fn i() -> Self {
        HPoint { x: 0.0, y: 1.0 }
    }
}

impl BoundaryPoint {
    pub fn new(theta: f64) -> Self {
        BoundaryPoint {
            theta: norm_angle(theta),
        }
    }

    /// Disk-model angle of a point of R u {inf} on the half-plane boundary.
    /// Infinity maps to angle 0, the origin to pi.
    pub fn from_real(x: Option<f64>) -> Self {
        match x {
            None => BoundaryPoint { theta: 0.0 },
            // (x - i)/(x + i) = ((x^2 - 1) - 2ix) / (x^2 + 1)
            Some(x) => BoundaryPoint::new(f64::atan2(-2.0 * x, x * x - 1.0)),
        }
    }

    /// Inverse of `from_real`: None encodes the point at infinity.
    pub fn to_real(self) -> Option<f64> {
        if self.theta == 0.0 {
            return None;
        }
        let t = self.theta / 2.0;
        let s = t.sin();
        if s.abs() < 1e-300 {
            return None;
        }
        Some(-t.cos() / s)
    }
}

impl Frame2 {
    pub fn new(base: HPoint, direction: f64) -> Self {
        Frame2 {
            base,
            direction: norm_angle(direction),
        }
    }
}

impl Isometry {
    /// Builds an isometry from matrix entries in GL+(2,R); the matrix is
    /// scaled to determinant one and sign-canonicalized.
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self, Hyp2Error> {
        let det = a * d - b * c;
        if !(det.is_finite() && det > 0.0) {
            return Err(Hyp2Error::BadDeterminant { det });
        }
        let s = det.sqrt();
        let mut g = Isometry {
            a: a / s,
            b: b / s,
            c: c / s,
            d: d / s,
        };
        g.canonicalize_sign();
        Ok(g)
    }

    pub fn identity() -> Self {
        Isometry {
            a: 1.0,
            b: 0.0,
            c: 0.0,
            d: 1.0,
        }
    }

    /// diag(e^{t/2}, e^{-t/2}): translation by t along the imaginary axis,
    /// repelling 0, attracting infinity (for t > 0).
    pub fn axis_translation(t: f64) -> Self {
        let l = (t / 2.0).exp();
        Isometry {
            a: l,
            b: 0.0,
            c: 0.0,
            d: 1.0 / l,
        }
    }

    /// Rotation by `angle` about the point i.
    pub fn rotation_about_i(angle: f64) -> Self {
        let h = angle / 2.0;
        let mut g = Isometry {
            a: h.cos(),
            b: h.sin(),
            c: -h.sin(),
            d: h.cos(),
        };
        g.canonicalize_sign();
        g
    }

    /// Maps i to the given point with zero rotation: compose of a horizontal
    /// translation and a dilation.
    pub fn point_transport(to: HPoint) -> Self {
        let s = to.y.sqrt();
        Isometry::new(s, to.x / s, 0.0, 1.0 / s).expect("y > 0 gives det 1")
    }

    pub fn entries(&self) -> (f64, f64, f64, f64) {
        (self.a, self.b, self.c, self.d)
    }

    pub fn trace(&self) -> f64 {
        self.a + self.d
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    pub fn inverse(&self) -> Self {
        let mut g = Isometry {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        };
        g.canonicalize_sign();
        g
    }

    fn canonicalize_sign(&mut self) {
        for e in [self.a, self.b, self.c, self.d] {
            if e.abs() > DET_TOL {
                if e < 0.0 {
                    self.a = -self.a;
                    self.b = -self.b;
                    self.c = -self.c;
                    self.d = -self.d;
                }
                return;
            }
        }
    }

    fn renormalize(&mut self) {
        // The det estimate ad - bc carries absolute error ~ eps * |M|^2, so
        // drift correction is only meaningful for moderate norms. Products of
        // unit-determinant matrices stay unit-determinant up to entry
        // rounding, so skipping the correction for large matrices is safe;
        // the correction re-anchors whenever the norm comes back down.
        let f2 = self.a * self.a + self.b * self.b + self.c * self.c + self.d * self.d;
        if f2 <= 1e8 {
            let det = self.a * self.d - self.b * self.c;
            let s = det.sqrt();
            self.a /= s;
            self.b /= s;
            self.c /= s;
            self.d /= s;
        }
        self.canonicalize_sign();
    }

    /// Matrix distance in PSL: entrywise sup distance minimized over sign.
    pub fn psl_distance(&self, other: &Isometry) -> f64 {
        let plus = (self.a - other.a)
            .abs()
            .max((self.b - other.b).abs())
            .max((self.c - other.c).abs())
            .max((self.d - other.d).abs());
        let minus = (self.a + other.a)
            .abs()
            .max((self.b + other.b).abs())
            .max((self.c + other.c).abs())
            .max((self.d + other.d).abs());
        plus.min(minus)
    }

    pub fn is_identity(&self, tol: f64) -> bool {
        self.psl_distance(&Isometry::identity()) <= tol
    }

    /// Largest singular value.
    pub fn op_norm(&self) -> f64 {
        let t = self.a * self.a + self.b * self.b + self.c * self.c + self.d * self.d;
        ((t + (t * t - 4.0).max(0.0).sqrt()) / 2.0).sqrt()
    }

    /// Action on the upper half-plane.
    pub fn apply(&self, z: HPoint) -> HPoint {
        let nx = self.a * z.x + self.b;
        let ny = self.a * z.y;
        let dx = self.c * z.x + self.d;
        let dy = self.c * z.y;
        let den = dx * dx + dy * dy;
        HPoint {
            x: (nx * dx + ny * dy) / den,
            y: z.y / den,
        }
    }

    /// Action on a frame: the base moves by the point action and the
    /// direction by the argument of the derivative 1/(cz+d)^2.
    pub fn apply_frame(&self, f: Frame2) -> Frame2 {
        let dx = self.c * f.base.x + self.d;
        let dy = self.c * f.base.y;
        Frame2::new(
            self.apply(f.base),
            f.direction - 2.0 * f64::atan2(dy, dx),
        )
    }

    /// Action on the circle at infinity, in disk-model angles. The matrix is
    /// conjugated once by the Cayley transform so the computation never
    /// leaves the unit circle.
    pub fn apply_boundary(&self, p: BoundaryPoint) -> BoundaryPoint {
        // disk matrix [[alpha, beta], [-conj(beta), -conj(alpha)]] with
        // alpha = (c-b) + (a+d) i, beta = (b+c) + (a-d) i.
        let (ar, ai) = (self.c - self.b, self.a + self.d);
        let (br, bi) = (self.b + self.c, self.a - self.d);
        let (wr, wi) = (p.theta.cos(), p.theta.sin());
        // numerator alpha*w + beta, denominator -conj(beta)*w - conj(alpha)
        let nr = ar * wr - ai * wi + br;
        let ni = ar * wi + ai * wr + bi;
        let dr = -(br * wr + bi * wi) - ar;
        let di = -(br * wi - bi * wr) + ai;
        BoundaryPoint::new(f64::atan2(ni * dr - nr * di, nr * dr + ni * di))
    }
}

impl std::ops::Mul for Isometry {
    type Output = Isometry;

    fn mul(self, h: Isometry) -> Isometry {
        let mut g = Isometry {
            a: self.a * h.a + self.b * h.c,
            b: self.a * h.b + self.b * h.d,
            c: self.c * h.a + self.d * h.c,
            d: self.c * h.b + self.d * h.d,
        };
        g.renormalize();
        g
    }
}

/// Matrix product with renormalization to det 1 and canonical sign.
pub fn compose(g: Isometry, h: Isometry) -> Isometry {
    g * h
}

/// Trichotomy by |trace| with tie band `CLASS_TOL` around 2. The identity is
/// reported elliptic (a zero rotation). With `strict` set, a trace in the
/// tie band is refused: the samplers in this crate never produce
/// near-parabolic elements, so landing in the band signals a bug upstream.
pub fn classify_with(g: &Isometry, strict: bool) -> Result<IsometryClass, Hyp2Error> {
    if g.is_identity(DET_TOL) {
        return Ok(IsometryClass::Elliptic);
    }
    let t = g.trace().abs();
    if (t - 2.0).abs() <= CLASS_TOL {
        if strict {
            return Err(Hyp2Error::AmbiguousClass { trace_abs: t });
        }
        return Ok(IsometryClass::Parabolic);
    }
    if t > 2.0 {
        Ok(IsometryClass::Hyperbolic)
    } else {
        Ok(IsometryClass::Elliptic)
    }
}

pub fn classify(g: &Isometry) -> IsometryClass {
    classify_with(g, false).expect("non-strict classification is total")
}

/// Translation length 2 arccosh(|tr|/2) of a hyperbolic isometry.
pub fn translation_length(g: &Isometry) -> Result<f64, Hyp2Error> {
    let t = g.trace().abs();
    if classify(g) != IsometryClass::Hyperbolic {
        return Err(Hyp2Error::NotHyperbolic { trace_abs: t });
    }
    Ok(2.0 * (t / 2.0).acosh())
}

/// Hyperbolic distance arccosh(1 + ((x1-x2)^2 + (y1-y2)^2) / (2 y1 y2)).
pub fn dist(z: HPoint, w: HPoint) -> f64 {
    let dx = z.x - w.x;
    let dy = z.y - w.y;
    (1.0 + (dx * dx + dy * dy) / (2.0 * z.y * w.y)).acosh()
}

/// Displacement of a point under an isometry.
pub fn displacement(g: &Isometry, z: HPoint) -> f64 {
    dist(z, g.apply(z))
}

/// Fixed points of a hyperbolic isometry on R u {inf}, as (attracting,
/// repelling). `None` encodes infinity.
pub fn fixed_points_real(g: &Isometry) -> Result<(Option<f64>, Option<f64>), Hyp2Error> {
    let t = g.trace().abs();
    if classify(g) != IsometryClass::Hyperbolic {
        return Err(Hyp2Error::NotHyperbolic { trace_abs: t });
    }
    if g.c.abs() < 1e-14 {
        // infinity is fixed; the finite fixed point solves (a-d) z = -b.
        let other = g.b / (g.d - g.a);
        // multiplier at infinity is 1/a^2: attracting iff |a| > 1.
        if g.a.abs() > 1.0 {
            return Ok((None, Some(other)));
        }
        return Ok((Some(other), None));
    }
    // c z^2 + (d - a) z - b = 0
    let disc = (g.a - g.d) * (g.a - g.d) + 4.0 * g.b * g.c;
    let root = disc.max(0.0).sqrt();
    // stable quadratic roots
    let q = -0.5 * ((g.d - g.a) + (g.d - g.a).signum() * root);
    let (z1, z2) = if q.abs() > 1e-300 {
        (q / g.c, -g.b / q)
    } else {
        ((-(g.d - g.a) + root) / (2.0 * g.c), (-(g.d - g.a) - root) / (2.0 * g.c))
    };
    // attracting fixed point has |derivative| = 1/(c z + d)^2 < 1.
    let m1 = (g.c * z1 + g.d).abs();
    if m1 > 1.0 {
        Ok((Some(z1), Some(z2)))
    } else {
        Ok((Some(z2), Some(z1)))
    }
}

/// Fixed points on the boundary circle, as (attracting, repelling).
pub fn fixed_points(g: &Isometry) -> Result<(BoundaryPoint, BoundaryPoint), Hyp2Error> {
    let (att, rep) = fixed_points_real(g)?;
    Ok((BoundaryPoint::from_real(att), BoundaryPoint::from_real(rep)))
}

/// Endpoints (repelling, attracting) of the axis of a hyperbolic isometry.
pub fn axis_endpoints(g: &Isometry) -> Result<(Option<f64>, Option<f64>), Hyp2Error> {
    let (att, rep) = fixed_points_real(g)?;
    Ok((rep, att))
}

/// The axis of a hyperbolic isometry as a geodesic.
pub fn axis(g: &Isometry) -> Result<Geodesic, Hyp2Error> {
    let (rep, att) = axis_endpoints(g)?;
    Geodesic::through_boundary(rep, att).ok_or(Hyp2Error::NumericFailure {
        context: "axis endpoints coincide",
        residual: 0.0,
    })
}

/// Result of moving a hyperbolic isometry to the standard translation form.
pub struct StandardForm {
    /// n with n g n^{-1} = diag(e^{l/2}, e^{-l/2}).
    pub normalizer: Isometry,
    /// Translation length.
    pub length: f64,
    /// Matrix residual of the diagonalization.
    pub residual: f64,
}

/// Conjugates a hyperbolic isometry to diag(e^{l/2}, e^{-l/2}): the
/// normalizer maps the repelling fixed point to 0 and the attracting one to
/// infinity.
pub fn standard_form(g: &Isometry) -> Result<StandardForm, Hyp2Error> {
    let length = translation_length(g)?;
    let (rep, att) = axis_endpoints(g)?;
    let normalizer = map_to_zero_infinity(rep, att);
    let diag = normalizer * *g * normalizer.inverse();
    let target = Isometry::axis_translation(length);
    let residual = diag.psl_distance(&target);
    // fixed points of a matrix with entries of size s carry errors ~ eps s^2
    let scale = g.op_norm().max(1.0);
    if residual > 1e-9 * scale * scale {
        return Err(Hyp2Error::NumericFailure {
            context: "standard_form diagonalization",
            residual,
        });
    }
    Ok(StandardForm {
        normalizer,
        length,
        residual,
    })
}

/// The Moebius transformation sending u to 0 and v to infinity (None = inf).
pub fn map_to_zero_infinity(u: Option<f64>, v: Option<f64>) -> Isometry {
    match (u, v) {
        (Some(u), Some(v)) => {
            // z -> (z - u)/(z - v), with a sign fix to stay in GL+.
            if u > v {
                Isometry::new(1.0, -u, 1.0, -v).expect("det = u - v > 0")
            } else {
                Isometry::new(-1.0, u, 1.0, -v).expect("det = v - u > 0")
            }
        }
        (Some(u), None) => Isometry::new(1.0, -u, 0.0, 1.0).expect("det 1"),
        (None, Some(v)) => Isometry::new(0.0, -1.0, 1.0, -v).expect("det 1"),
        (None, None) => panic!("geodesic endpoints must be distinct"),
    }
}

impl Arc {
    pub fn new(lo: f64, len: f64) -> Self {
        assert!(len > 0.0 && len < TAU, "arc length must lie in (0, 2pi)");
        Arc {
            lo: norm_angle(lo),
            len,
        }
    }

    /// Arc of angular radius `r` centered at `center`.
    pub fn around(center: f64, r: f64) -> Self {
        Arc::new(center - r, 2.0 * r)
    }

    pub fn hi(&self) -> f64 {
        norm_angle(self.lo + self.len)
    }

    pub fn contains(&self, theta: f64) -> bool {
        let mut d = norm_angle(theta) - self.lo;
        if d < 0.0 {
            d += TAU;
        }
        d <= self.len
    }

    /// Length of the complementary arc.
    pub fn complement_len(&self) -> f64 {
        TAU - self.len
    }

    /// Image under an isometry. Orientation-preserving circle maps send the
    /// counterclockwise arc [lo, lo+len] to the counterclockwise arc between
    /// the endpoint images.
    pub fn map(&self, g: &Isometry) -> Arc {
        let lo = g.apply_boundary(BoundaryPoint::new(self.lo)).theta;
        let hi = g.apply_boundary(BoundaryPoint::new(self.hi())).theta;
        let mut len = hi - lo;
        len -= TAU * (len / TAU).floor();
        if len == 0.0 {
            len = TAU * 0.5; // degenerate; cannot happen for honest arcs
    }
        Arc { lo, len }
    }
}

/// Iterates h on an arc around the repelling fixed point: returns
/// h(U), h^2(U), ..., h^k(U).
///
/// Contract: the arcs are nested increasing and their complements shrink to
/// the attracting fixed point at rate e^{-k l(h)}.
pub fn ns_iterate(h: &Isometry, u: Arc, k: usize) -> Result<Vec<Arc>, Hyp2Error> {
    let (att, rep) = fixed_points(h)?;
    if !u.contains(rep.theta) || u.contains(att.theta) {
        return Err(Hyp2Error::BadArc);
    }
    let mut arcs = Vec::with_capacity(k);
    let mut cur = u;
    for _ in 0..k {
        cur = cur.map(h);
        arcs.push(cur);
    }
    Ok(arcs)
}

impl Serialize for Isometry {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        // decimal-string 4-tuple, full precision
        let t = [
            format!("{:.17e}", self.a),
            format!("{:.17e}", self.b),
            format!("{:.17e}", self.c),
            format!("{:.17e}", self.d),
        ];
        t.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Isometry {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let t = <[String; 4]>::deserialize(d)?;
        let mut v = [0.0f64; 4];
        for (i, s) in t.iter().enumerate() {
            v[i] = s.parse::<f64>().map_err(D::Error::custom)?;
        }
        Isometry::new(v[0], v[1], v[2], v[3]).map_err(D::Error::custom)
    }
}

/// Test/diagnostic helper: a pseudo-random isometry, the product of a
/// horizontal translation, a dilation and a rotation about i.
pub fn random_isometry<R: rand::Rng>(rng: &mut R) -> Isometry {
    let x: f64 = rng.gen_range(-3.0..3.0);
    let y: f64 = rng.gen_range(0.25..4.0);
    let theta: f64 = rng.gen_range(0.0..TAU);
    Isometry::point_transport(HPoint::new(x, y)) * Isometry::rotation_about_i(theta)
}

/// Test/diagnostic helper: a pseudo-random hyperbolic isometry with
/// translation length drawn uniformly from the given range.
pub fn random_hyperbolic<R: rand::Rng>(rng: &mut R, len_lo: f64, len_hi: f64) -> Isometry {
    let l: f64 = rng.gen_range(len_lo..len_hi);
    let h = random_isometry(rng);
    h * Isometry::axis_translation(l) * h.inverse()
}
