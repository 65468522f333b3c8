//! Hyperbolic pairs of pants from boundary lengths, Fenchel-Nielsen gluing
//! along trees of pants, random tree-of-pants samplers, and the injectivity
//! radius bounds with their brute-force word-search oracles.
//!
//! A pair of pants with boundary lengths (l1, l2, l3) is realized by the
//! trace triple tr A = -2 cosh(l1/2), tr B = -2 cosh(l2/2),
//! tr AB = -2 cosh(l3/2); the boundary curves are A, B and (AB)^-1. Gluing
//! conjugates each new pants so its designated boundary axis coincides with
//! the host's, on the opposite side, then slides by the twist displacement
//! t * l along the common axis.

mod hexagon;
mod words;

pub use hexagon::{estimate_pants_area, sample_frame, PantsChart};
pub use words::{min_displacement, min_translation_length, SearchOutcome, WordBudget};

use crate::hyp2::{
    axis_endpoints, classify, standard_form, translation_length, Frame2, Hyp2Error, Isometry,
    IsometryClass,
};
use crate::seeding::{keyed_seed, rng_from_seed};
use rand::Rng;
use rand_distr::Distribution;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PantsError {
    #[error("invalid lengths: {0}")]
    InvalidLengths(String),
    #[error("numeric failure in {context} (residual {residual:e})")]
    NumericFailure { context: &'static str, residual: f64 },
    #[error("word budget exhausted after {words_used} words (complete to length {complete_to})")]
    Budget { words_used: usize, complete_to: usize },
    #[error("assignment covers {values} edges but the tree has {edges}")]
    MissingAssignment { edges: usize, values: usize },
    #[error(transparent)]
    Hyp2(#[from] Hyp2Error),
}

/// Boundary lengths of a pair of pants, all positive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PantsLengths {
    pub l1: f64,
    pub l2: f64,
    pub l3: f64,
}

impl PantsLengths {
    pub fn new(l1: f64, l2: f64, l3: f64) -> Result<Self, PantsError> {
        if !(l1 > 0.0 && l2 > 0.0 && l3 > 0.0) {
            return Err(PantsError::InvalidLengths(format!("({l1}, {l2}, {l3})")));
        }
        Ok(PantsLengths { l1, l2, l3 })
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.l1, self.l2, self.l3]
    }
}

/// A discrete free rank-2 group realizing a hyperbolic pair of pants. The
/// three boundary geodesics are the axes of A, B and (AB)^-1.
#[derive(Debug, Clone, Serialize)]
pub struct PantsGroup {
    a: Isometry,
    b: Isometry,
    lengths: PantsLengths,
}

impl PantsGroup {
    pub fn generators(&self) -> (Isometry, Isometry) {
        (self.a, self.b)
    }

    pub fn lengths(&self) -> PantsLengths {
        self.lengths
    }

    /// Boundary curves in slot order: A, B, (AB)^-1 with translation lengths
    /// l1, l2, l3.
    pub fn boundary_curves(&self) -> [Isometry; 3] {
        [self.a, self.b, (self.a * self.b).inverse()]
    }
}

/// Builds the pants group for the given boundary lengths via the hexagon
/// trace identities. Postcondition: translation lengths match within 1e-9
/// and no nontrivial word of length <= 8 comes within 1e-6 of the identity.
pub fn pants_group(l: PantsLengths) -> Result<PantsGroup, PantsError> {
    let lam = (l.l1 / 2.0).exp();
    let mu = (-l.l1 / 2.0).exp();
    let yy = -2.0 * (l.l2 / 2.0).cosh();
    let zz = 2.0 * (l.l3 / 2.0).cosh();
    let p = (zz - mu * yy) / (lam - mu);
    let s = yy - p;
    let q = p * s - 1.0;
    let a = Isometry::new(-lam, 0.0, 0.0, -mu).map_err(Hyp2Error::from)?;
    let b = Isometry::new(p, q, 1.0, s).map_err(Hyp2Error::from)?;
    let g = PantsGroup { a, b, lengths: l };

    let targets = l.as_array();
    for (curve, target) in g.boundary_curves().iter().zip(targets) {
        let got = translation_length(curve)?;
        let res = (got - target).abs();
        if res > 1e-8 {
            return Err(PantsError::NumericFailure {
                context: "pants boundary length",
                residual: res,
            });
        }
    }
    verify_free(&g, 8, 1e-6)?;
    Ok(g)
}

/// No nontrivial reduced word of length <= depth is within tol of the
/// identity in PSL.
fn verify_free(g: &PantsGroup, depth: usize, tol: f64) -> Result<(), PantsError> {
    let gens = [g.a, g.a.inverse(), g.b, g.b.inverse()];
    fn rec(
        gens: &[Isometry; 4],
        word_last: usize,
        mat: Isometry,
        len: usize,
        depth: usize,
        tol: f64,
    ) -> Result<(), PantsError> {
        let d = mat.psl_distance(&Isometry::identity());
        if d <= tol {
            return Err(PantsError::NumericFailure {
                context: "pants group freeness",
                residual: d,
            });
        }
        if len == depth {
            return Ok(());
        }
        for (i, h) in gens.iter().enumerate() {
            if i ^ 1 == word_last {
                continue;
            }
            rec(gens, i, mat * *h, len + 1, depth, tol)?;
        }
        Ok(())
    }
    for (i, h) in gens.iter().enumerate() {
        rec(&gens, i, *h, 1, depth, tol)?;
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Trees of pants
// ---------------------------------------------------------------------------

/// One gluing slot of a tree: a real edge to a child vertex, or a stub (a
/// free boundary left by the truncation).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TreeEdge {
    pub u: usize,
    pub u_slot: usize,
    /// Child vertex; None marks a stub.
    pub v: Option<usize>,
    pub v_slot: usize,
    /// Stable sampling key: unchanged when the tree is regrown to a larger
    /// radius, so per-edge draws are consistent across truncations.
    pub key: String,
}

/// A finite tree of pants: every vertex carries exactly three slots (edges
/// or stubs). Ball trees truncate the 3-regular tree at a given radius.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TreeSpec {
    radius: usize,
    depths: Vec<usize>,
    slots: Vec<[usize; 3]>,
    edges: Vec<TreeEdge>,
    root: usize,
}

impl TreeSpec {
    /// The 3-regular tree truncated at distance `radius` from the center.
    /// Boundary pants keep stub slots so every pants has three boundary
    /// lengths.
    pub fn ball(radius: usize) -> TreeSpec {
        let mut depths = vec![0usize];
        let mut addresses = vec!["c".to_string()];
        let mut slots: Vec<[usize; 3]> = vec![[usize::MAX; 3]];
        let mut edges: Vec<TreeEdge> = Vec::new();
        let mut queue = std::collections::VecDeque::from([0usize]);
        while let Some(u) = queue.pop_front() {
            let udepth = depths[u];
            let child_slots: Vec<usize> = if u == 0 { vec![0, 1, 2] } else { vec![1, 2] };
            for (i, &slot) in child_slots.iter().enumerate() {
                let key = format!("{}/{}", addresses[u], i);
                let e = edges.len();
                if udepth < radius {
                    let v = depths.len();
                    depths.push(udepth + 1);
                    addresses.push(key.clone());
                    slots.push([usize::MAX; 3]);
                    edges.push(TreeEdge { u, u_slot: slot, v: Some(v), v_slot: 0, key });
                    slots[u][slot] = e;
                    slots[v][0] = e;
                    queue.push_back(v);
                } else {
                    edges.push(TreeEdge { u, u_slot: slot, v: None, v_slot: 0, key });
                    slots[u][slot] = e;
                }
            }
        }
        TreeSpec { radius, depths, slots, edges, root: 0 }
    }

    /// A path of n pants (used by chain realizations): slot 0 faces left,
    /// slot 1 right, slot 2 dangles.
    pub fn path(n: usize) -> TreeSpec {
        TreeSpec::path_rooted(n, 0)
    }

    /// A path of n pants rooted at the given vertex, so the base frame and
    /// the gluing BFS start there.
    pub fn path_rooted(n: usize, root: usize) -> TreeSpec {
        assert!(n >= 1 && root < n);
        let mut slots: Vec<[usize; 3]> = vec![[usize::MAX; 3]; n];
        let mut edges: Vec<TreeEdge> = Vec::new();
        for i in 0..n - 1 {
            let e = edges.len();
            edges.push(TreeEdge {
                u: i,
                u_slot: 1,
                v: Some(i + 1),
                v_slot: 0,
                key: format!("p/{i}"),
            });
            slots[i][1] = e;
            slots[i + 1][0] = e;
        }
        // stubs: the two open ends and one dangler per vertex
        let mut stub = |u: usize, slot: usize, key: String, edges: &mut Vec<TreeEdge>, slots: &mut Vec<[usize; 3]>| {
            let e = edges.len();
            edges.push(TreeEdge { u, u_slot: slot, v: None, v_slot: 0, key });
            slots[u][slot] = e;
        };
        stub(0, 0, "p/L".into(), &mut edges, &mut slots);
        stub(n - 1, 1, "p/R".into(), &mut edges, &mut slots);
        for i in 0..n {
            stub(i, 2, format!("p/s{i}"), &mut edges, &mut slots);
        }
        TreeSpec {
            radius: 0,
            depths: (0..n).map(|i| i.abs_diff(root)).collect(),
            slots,
            edges,
            root,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.slots.len()
    }

    pub fn edges(&self) -> &[TreeEdge] {
        &self.edges
    }

    pub fn internal_edge_count(&self) -> usize {
        self.edges.iter().filter(|e| e.v.is_some()).count()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn depth_of(&self, v: usize) -> usize {
        self.depths[v]
    }

    pub fn slots_of(&self, v: usize) -> [usize; 3] {
        self.slots[v]
    }
}

/// Per-edge Fenchel-Nielsen pair: a positive length and a twist, recorded as
/// a fraction of the length (the circle coordinate; integer shifts of the
/// twist yield the same glued group).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FnPair {
    pub length: f64,
    pub twist: f64,
}

/// Fenchel-Nielsen coordinates for a tree: one pair per edge (stubs
/// included, so truncation boundaries still carry lengths).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FNAssignment {
    values: Vec<FnPair>,
}

impl FNAssignment {
    pub fn new(values: Vec<FnPair>) -> Result<Self, PantsError> {
        for v in &values {
            if !(v.length > 0.0 && v.length.is_finite()) {
                return Err(PantsError::InvalidLengths(format!("edge length {}", v.length)));
            }
        }
        Ok(FNAssignment { values })
    }

    pub fn get(&self, edge: usize) -> FnPair {
        self.values[edge]
    }

    pub fn values(&self) -> &[FnPair] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// A length law on (0, infinity) for the per-edge draws; twists are always
/// uniform on [0, 1).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum LengthLaw {
    PointMass(f64),
    Uniform(f64, f64),
    LogNormal(f64, f64),
    TruncatedExp { rate: f64, cap: f64 },
}

impl LengthLaw {
    pub fn validate(&self) -> Result<(), PantsError> {
        let ok = match *self {
            LengthLaw::PointMass(l) => l > 0.0,
            LengthLaw::Uniform(a, b) => 0.0 < a && a < b,
            LengthLaw::LogNormal(_, s) => s > 0.0,
            LengthLaw::TruncatedExp { rate, cap } => rate > 0.0 && cap > 0.0,
        };
        if ok {
            Ok(())
        } else {
            Err(PantsError::InvalidLengths(format!("{self:?}")))
        }
    }

    pub fn sample<R: Rng>(&self, rng: &mut R) -> f64 {
        match *self {
            LengthLaw::PointMass(l) => l,
            LengthLaw::Uniform(a, b) => rng.gen_range(a..b),
            LengthLaw::LogNormal(m, s) => {
                let d = rand_distr::LogNormal::new(m, s).expect("validated");
                d.sample(rng)
            }
            LengthLaw::TruncatedExp { rate, cap } => {
                let u: f64 = rng.gen();
                let mass = 1.0 - (-rate * cap).exp();
                -((1.0 - u * mass).ln()) / rate
            }
        }
    }
}

/// Independent per-edge (length, twist) draws: length from the law, twist
/// uniform on [0, 1). Deterministic per seed, and keyed per edge so shared
/// edges of different truncations receive identical values.
pub fn sample_fn(tree: &TreeSpec, law: &LengthLaw, seed: u64) -> Result<FNAssignment, PantsError> {
    law.validate()?;
    let mut values = Vec::with_capacity(tree.edges.len());
    for e in &tree.edges {
        let mut rng = rng_from_seed(keyed_seed(seed, e.key.as_bytes()));
        let length = law.sample(&mut rng);
        let twist: f64 = rng.gen_range(0.0..1.0);
        values.push(FnPair { length, twist });
    }
    FNAssignment::new(values)
}

// ---------------------------------------------------------------------------
// Gluing
// ---------------------------------------------------------------------------

/// A pants placed in the plane: its local group conjugated by `conjugator`.
#[derive(Debug, Clone, Serialize)]
pub struct PlacedPants {
    pub conjugator: Isometry,
    pub pants: PantsGroup,
}

impl PlacedPants {
    pub fn boundary_curve(&self, slot: usize) -> Isometry {
        let local = self.pants.boundary_curves()[slot];
        self.conjugator * local * self.conjugator.inverse()
    }
}

/// A finite approximation to the surface group of a tree of pants: the free
/// basis assembled by the gluing, the base frame on the root pants, and the
/// placement data for diagnostics.
#[derive(Debug, Clone, Serialize)]
pub struct SurfaceGroupApprox {
    pub tree: TreeSpec,
    pub fn_assignment: FNAssignment,
    pub generators: Vec<Isometry>,
    pub base_frame: Frame2,
    pub placed: Vec<PlacedPants>,
    /// Per edge: the glued boundary curve in global coordinates (None for stubs).
    pub edge_curves: Vec<Option<Isometry>>,
}

/// The rotation z -> -1/z: swaps the two sides of the imaginary axis while
/// reversing its orientation.
fn side_flip() -> Isometry {
    Isometry::new(0.0, -1.0, 1.0, 0.0).expect("det 1")
}

/// Which side of the imaginary axis the normalized pants occupies: the sign
/// of the images of the other boundary curves' fixed points under n.
fn side_sign(n: &Isometry, others: &[Isometry]) -> Result<f64, PantsError> {
    let mut sign = 0.0f64;
    for w in others {
        let (rep, att) = axis_endpoints(w)?;
        for x in [rep, att] {
            let y = match crate::hyp2::apply_real(n, x) {
                Some(v) => v,
                None => {
                    return Err(PantsError::NumericFailure {
                        context: "side probe hit infinity",
                        residual: 0.0,
                    })
                }
            };
            if y.abs() < 1e-12 {
                return Err(PantsError::NumericFailure {
                    context: "side probe landed on the axis",
                    residual: y.abs(),
                });
            }
            if sign == 0.0 {
                sign = y.signum();
            } else if sign != y.signum() {
                return Err(PantsError::NumericFailure {
                    context: "pants straddles its boundary axis",
                    residual: y.abs(),
                });
            }
        }
    }
    Ok(sign)
}

/// The normalizer of a pants boundary slot, canonicalized so that the seam
/// foot toward the next slot lands at the point i of the imaginary axis.
/// Anchoring the free axis-translation to pants geometry makes the map
/// equivariant under conjugation of the whole curve system, which keeps
/// twists coherent across nesting depths and across separate builds.
fn canonical_normalizer(curves: &[Isometry; 3], slot: usize) -> Result<(Isometry, f64), PantsError> {
    let sf = standard_form(&curves[slot])?;
    let own_axis = crate::hyp2::axis(&curves[slot])?;
    let next_axis = crate::hyp2::axis(&curves[(slot + 1) % 3])?;
    let (foot, _, _) = crate::hyp2::common_perpendicular(&own_axis, &next_axis)?;
    let z = sf.normalizer.apply(foot);
    // the foot tolerance scales with the conditioning of the curve system:
    // curves far from the origin carry entry errors ~ eps * |curve|^2
    let scale = curves.iter().map(|c| c.op_norm()).fold(1.0f64, f64::max);
    if z.x.abs() > (1.0 + z.y) * (1e-7 + 1e-12 * scale * scale) {
        return Err(PantsError::NumericFailure {
            context: "seam foot off the normalized axis",
            residual: z.x.abs(),
        });
    }
    let slide = Isometry::axis_translation(-z.y.ln());
    Ok((slide * sf.normalizer, sf.length))
}

/// The conjugator g gluing a source pants onto a target boundary curve:
/// g w_source g^-1 = w_target^(+-1), the source lands on the opposite side
/// of the axis from the target's pants, and the source is slid by the twist
/// displacement along the common axis (zero twist aligns the seam feet).
pub fn edge_conjugator(
    target_curves: &[Isometry; 3],
    target_slot: usize,
    source_curves: &[Isometry; 3],
    source_slot: usize,
    twist_displacement: f64,
) -> Result<Isometry, PantsError> {
    let (n_t, len_t) = canonical_normalizer(target_curves, target_slot)?;
    let (mut n_s, len_s) = canonical_normalizer(source_curves, source_slot)?;
    let mismatch = (len_t - len_s).abs();
    let len_scale = target_curves[target_slot]
        .op_norm()
        .max(source_curves[source_slot].op_norm())
        .max(1.0);
    if mismatch > 1e-8 * (1.0 + 1e-4 * len_scale) {
        return Err(PantsError::NumericFailure {
            context: "gluing length mismatch",
            residual: mismatch,
        });
    }
    let others = |curves: &[Isometry; 3], slot: usize| -> [Isometry; 2] {
        [curves[(slot + 1) % 3], curves[(slot + 2) % 3]]
    };
    let side_t = side_sign(&n_t, &others(target_curves, target_slot))?;
    if side_sign(&n_s, &others(source_curves, source_slot))? == side_t {
        n_s = side_flip() * n_s;
    }
    let g = n_t.inverse() * Isometry::axis_translation(twist_displacement) * n_s;
    let glued = g * source_curves[source_slot] * g.inverse();
    let w_target = &target_curves[target_slot];
    let res = glued
        .psl_distance(w_target)
        .min(glued.psl_distance(&w_target.inverse()));
    // entry errors of conjugated curves scale with the square of their norm,
    // so the tolerance is relative; past norm 1e9 the relative error itself
    // degrades and the build fails loudly instead of producing garbage
    let scale = w_target.op_norm().max(1.0);
    if scale > 1e9 {
        return Err(PantsError::NumericFailure {
            context: "gluing beyond f64 precision range",
            residual: scale,
        });
    }
    if res > 1e-8 * scale * scale {
        return Err(PantsError::NumericFailure {
            context: "glued axis mismatch",
            residual: res,
        });
    }
    Ok(g)
}

/// Which generator of a pants completes its glued boundary curve to a free
/// basis: {A, B}, {B, A} and {(AB)^-1, A} are all bases of the rank-2 group.
fn basis_partner(p: &PantsGroup, glued_slot: usize) -> Isometry {
    match glued_slot {
        0 => p.b,
        _ => p.a,
    }
}

/// Assembles the surface group of a tree of pants: pants are placed by BFS
/// from the root, each glued along its parent edge with the edge's twist.
/// The generator list is a free basis (root generators plus one new
/// generator per further pants), with count tree vertices + 1, matching the
/// Euler characteristic of the glued surface.
pub fn build_group(tree: &TreeSpec, fn_assignment: &FNAssignment) -> Result<SurfaceGroupApprox, PantsError> {
    if fn_assignment.len() != tree.edges.len() {
        return Err(PantsError::MissingAssignment {
            edges: tree.edges.len(),
            values: fn_assignment.len(),
        });
    }
    let n = tree.vertex_count();
    let lengths_at = |v: usize| -> Result<PantsLengths, PantsError> {
        let s = tree.slots_of(v);
        PantsLengths::new(
            fn_assignment.get(s[0]).length,
            fn_assignment.get(s[1]).length,
            fn_assignment.get(s[2]).length,
        )
    };

    let mut placed: Vec<Option<PlacedPants>> = vec![None; n];
    let root = tree.root();
    let root_pants = pants_group(lengths_at(root)?)?;
    let mut generators = vec![root_pants.a, root_pants.b];
    placed[root] = Some(PlacedPants { conjugator: Isometry::identity(), pants: root_pants });
    let mut edge_curves: Vec<Option<Isometry>> = vec![None; tree.edges.len()];

    let mut queue = std::collections::VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        for slot_u in 0..3 {
            let ei = tree.slots_of(u)[slot_u];
            let edge = &tree.edges[ei];
            // the unplaced endpoint, whichever side of the edge record it is on
            let (v, v_slot) = if edge.u == u {
                match edge.v {
                    Some(v) if placed[v].is_none() => (v, edge.v_slot),
                    _ => continue,
                }
            } else if edge.v == Some(u) && placed[edge.u].is_none() {
                (edge.u, edge.u_slot)
            } else {
                continue;
            };
            let host = placed[u].as_ref().expect("BFS order");
            let target_curves = [
                host.boundary_curve(0),
                host.boundary_curve(1),
                host.boundary_curve(2),
            ];
            let pants_v = pants_group(lengths_at(v)?)?;
            let source_curves = pants_v.boundary_curves();
            let pair = fn_assignment.get(ei);
            // the twist is a circle coordinate: integer turns slide by a full
            // boundary length, which conjugates the glued subgroup by the
            // boundary curve; reducing mod 1 makes the period exact
            let tau = pair.twist.rem_euclid(1.0) * pair.length;
            let g = edge_conjugator(&target_curves, slot_u, &source_curves, v_slot, tau)?;
            generators.push(g * basis_partner(&pants_v, v_slot) * g.inverse());
            edge_curves[ei] = Some(target_curves[slot_u]);
            placed[v] = Some(PlacedPants { conjugator: g, pants: pants_v });
            queue.push_back(v);
        }
    }

    // rank bookkeeping: a tree of n pants glues to a planar surface of Euler
    // characteristic -n, whose fundamental group is free of rank n + 1
    assert_eq!(generators.len(), n + 1, "free basis size must match 1 - chi");
    for g in &generators {
        debug_assert_eq!(classify(g), IsometryClass::Hyperbolic);
    }

    let placed: Vec<PlacedPants> = placed.into_iter().map(|p| p.expect("all placed")).collect();
    let chart = PantsChart::build(&placed[root].pants)?;
    let base_frame = Frame2::new(chart.center(), 0.0);
    Ok(SurfaceGroupApprox {
        tree: tree.clone(),
        fn_assignment: fn_assignment.clone(),
        generators,
        base_frame,
        placed,
        edge_curves,
    })
}

// ---------------------------------------------------------------------------
// Bounds and oracles
// ---------------------------------------------------------------------------

/// The tree-injectivity lower bound min((l-1)/2, R sinh(1/sinh l)), clamped
/// at zero.
pub fn star_bound(l: f64, radius: usize) -> f64 {
    assert!(l > 0.0);
    let sinh_term = radius as f64 * (1.0 / l.sinh()).sinh();
    (0.5 * (l - 1.0)).min(sinh_term).max(0.0)
}

/// The conservative variant with the collar radius arcsinh(1/sinh l) in
/// place of sinh(1/sinh l); see [`pants_segment_bounds`].
pub fn star_bound_arcsinh(l: f64, radius: usize) -> f64 {
    assert!(l > 0.0);
    let t = radius as f64 * (1.0 / l.sinh()).asinh();
    (0.5 * (l - 1.0)).min(t).max(0.0)
}

/// Both crossing-segment bounds for a pants with boundary lengths near l:
/// the stated sinh(1/sinh l) bound and the same-boundary-return bound
/// (l-1)/2, along with the collar radius arcsinh(1/sinh l) that the collar
/// argument actually produces. The sinh and arcsinh variants agree to third
/// order as l grows; both are reported so either convention can be checked.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SegmentBounds {
    pub sinh_bound: f64,
    pub half_bound: f64,
    pub collar_arcsinh: f64,
}

pub fn pants_segment_bounds(l: f64) -> SegmentBounds {
    assert!(l > 0.0);
    SegmentBounds {
        sinh_bound: (1.0 / l.sinh()).sinh(),
        half_bound: (0.5 * (l - 1.0)).max(0.0),
        collar_arcsinh: (1.0 / l.sinh()).asinh(),
    }
}

/// Minimum translation length over nontrivial reduced words of length <= w
/// in the group's free basis; exhaustive within the budget, `Budget` error
/// beyond it. Use [`systole_search`] for the budget-relative outcome.
pub fn systole_oracle(g: &SurfaceGroupApprox, w: usize, budget: WordBudget) -> Result<f64, PantsError> {
    let out = systole_search(g, w, budget);
    if out.anomalies > 0 {
        return Err(PantsError::NumericFailure {
            context: "non-hyperbolic word in a glued group",
            residual: out.anomalies as f64,
        });
    }
    if !out.complete {
        return Err(PantsError::Budget {
            words_used: out.words_used,
            complete_to: out.complete_to,
        });
    }
    Ok(out.value)
}

pub fn systole_search(g: &SurfaceGroupApprox, w: usize, budget: WordBudget) -> SearchOutcome {
    min_translation_length(&g.generators, w, budget)
}

/// Half the minimum displacement of the frame's base point over nontrivial
/// reduced words of length <= w.
pub fn inj_radius_at(
    g: &SurfaceGroupApprox,
    frame: &Frame2,
    w: usize,
    budget: WordBudget,
) -> Result<f64, PantsError> {
    let out = inj_radius_search(g, frame, w, budget);
    if !out.complete {
        return Err(PantsError::Budget {
            words_used: out.words_used,
            complete_to: out.complete_to,
        });
    }
    Ok(out.value)
}

pub fn inj_radius_search(
    g: &SurfaceGroupApprox,
    frame: &Frame2,
    w: usize,
    budget: WordBudget,
) -> SearchOutcome {
    let mut out = min_displacement(&g.generators, frame.base, w, budget);
    out.value *= 0.5;
    out
}

/// Draws a base frame on the pants uniformly: a point of the double-hexagon
/// fundamental domain by area-uniform rejection, and an independent uniform
/// direction. Deterministic per seed.
pub fn sample_base_frame(p: &PantsGroup, seed: u64) -> Result<Frame2, PantsError> {
    let chart = PantsChart::build(p)?;
    Ok(sample_frame(&chart, seed).0)
}

/// A doubled pair of pants: two copies glued along all three boundary
/// curves, a closed genus-2 surface group. Returns a generating set (one
/// amalgam generator for the first curve, HNN closures for the other two).
pub fn doubled_pants_group(l: PantsLengths, twists: [f64; 3]) -> Result<Vec<Isometry>, PantsError> {
    let host = pants_group(l)?;
    let guest = pants_group(l)?;
    let hc = host.boundary_curves();
    let gc = guest.boundary_curves();
    let tau = |i: usize| twists[i].rem_euclid(1.0) * l.as_array()[i];
    // amalgam along curve 0
    let g = edge_conjugator(&hc, 0, &gc, 0, tau(0))?;
    let guest_global = [g * gc[0] * g.inverse(), g * gc[1] * g.inverse(), g * gc[2] * g.inverse()];
    // HNN closures along curves 1 and 2
    let t1 = edge_conjugator(&hc, 1, &guest_global, 1, tau(1))?;
    let t2 = edge_conjugator(&hc, 2, &guest_global, 2, tau(2))?;
    Ok(vec![
        host.generators().0,
        host.generators().1,
        g * guest.generators().0 * g.inverse(),
        t1,
        t2,
    ])
}

#[cfg(test)]
mod tests;
