//! Two-dimensional realization of gluing windows: each block is a pair of
//! pants glued to a mirror pants along an internal curve of length L_a, with
//! two boundary curves of length sigma facing the neighboring blocks (the
//! third boundary of each pants dangles). Blocks are glued left to right
//! with zero twists, matching the gluing pattern's lack of a twist
//! parameter; closed chains add a closure isometry identifying the two ends.

use super::{GlueError, GluingWindow};
use crate::hyp2::Isometry;
use crate::pantsurf::{
    build_group, edge_conjugator, sample_base_frame, FNAssignment, FnPair, SurfaceGroupApprox,
    TreeSpec,
};

/// A pants-chain realization of a finite gluing window. Block at position j
/// occupies path vertices 2 (j - lo) and 2 (j - lo) + 1; the base frame sits
/// on the left pants of the block at position 0.
#[derive(Debug, Clone, Serialize)]
pub struct ChainRealization {
    pub group: SurfaceGroupApprox,
    pub block_internal_lengths: (f64, f64),
    pub boundary_length: f64,
    lo: i64,
    n_blocks: usize,
}

use serde::Serialize;

impl ChainRealization {
    /// Positions [lo, hi) of the realized blocks.
    pub fn block_range(&self) -> (i64, i64) {
        (self.lo, self.lo + self.n_blocks as i64)
    }

    fn vertex_of(&self, pos: i64, right: bool) -> Option<usize> {
        let (lo, hi) = self.block_range();
        if pos < lo || pos >= hi {
            return None;
        }
        Some(2 * (pos - lo) as usize + usize::from(right))
    }

    /// The four pants generators of the block at a position, conjugated into
    /// global coordinates.
    pub fn block_generators(&self, pos: i64) -> Option<[Isometry; 4]> {
        let vl = self.vertex_of(pos, false)?;
        let vr = self.vertex_of(pos, true)?;
        let mut out = [Isometry::identity(); 4];
        for (k, &v) in [vl, vr].iter().enumerate() {
            let placed = &self.group.placed[v];
            let (a, b) = placed.pants.generators();
            out[2 * k] = placed.conjugator * a * placed.conjugator.inverse();
            out[2 * k + 1] = placed.conjugator * b * placed.conjugator.inverse();
        }
        Some(out)
    }

    /// The internal curve (length L_a) of the block at a position.
    pub fn internal_curve(&self, pos: i64) -> Option<Isometry> {
        let vl = self.vertex_of(pos, false)?;
        let ei = self.group.tree.slots_of(vl)[1];
        self.group.edge_curves[ei]
    }
}

fn chain_tree_and_fn(
    letters: &[u8],
    root_block: usize,
    l0: f64,
    l1: f64,
    sigma: f64,
) -> Result<(TreeSpec, FNAssignment), GlueError> {
    let n = letters.len();
    let tree = TreeSpec::path_rooted(2 * n, 2 * root_block);
    let mut values = vec![FnPair { length: sigma, twist: 0.0 }; tree.edges().len()];
    for (ei, edge) in tree.edges().iter().enumerate() {
        // internal edges join vertices 2m and 2m+1; everything else is sigma
        if let Some(v) = edge.v {
            if edge.u % 2 == 0 && v == edge.u + 1 {
                let a = letters[edge.u / 2];
                values[ei].length = if a == 0 { l0 } else { l1 };
            }
        }
    }
    Ok((tree, FNAssignment::new(values)?))
}

/// Realizes a gluing window as a pants chain with zero twists. The seed
/// draws the base frame on the base block's left pants.
pub fn realize_chain(
    window: &GluingWindow,
    l0: f64,
    l1: f64,
    sigma: f64,
    seed: u64,
) -> Result<ChainRealization, GlueError> {
    let alpha = &window.alpha;
    let (lo, _) = alpha.range();
    let root_block = alpha.offset_of_zero();
    let (tree, fnv) = chain_tree_and_fn(alpha.letters(), root_block, l0, l1, sigma)?;
    let mut group = build_group(&tree, &fnv)?;
    let root_pants = group.placed[tree.root()].pants.clone();
    group.base_frame = sample_base_frame(&root_pants, seed)?;
    Ok(ChainRealization {
        group,
        block_internal_lengths: (l0, l1),
        boundary_length: sigma,
        lo,
        n_blocks: alpha.len(),
    })
}

/// A closed chain of k blocks repeating a period word. Only one period is
/// developed explicitly; the one-period shift isometry generates the rest by
/// conjugation, which keeps every locally-relevant matrix numerically
/// shallow no matter how large k is. The closure identifying the circle is
/// the (k / period)-th power of the shift.
#[derive(Debug, Clone, Serialize)]
pub struct ClosedChainRealization {
    /// The developed fundamental period: blocks 0 .. period length.
    pub period_chain: ChainRealization,
    /// The one-period shift: maps block j onto block j + period length.
    pub shift: Isometry,
    /// shift^(k / period): the deck transformation closing the k-block circle.
    pub closure: Isometry,
    pub period: Vec<u8>,
    pub k_blocks: usize,
}

impl ClosedChainRealization {
    /// A generating set: the fundamental period's basis plus the closure.
    /// (Blocks beyond one period are shift-conjugates of these.)
    pub fn generators(&self) -> Vec<Isometry> {
        let mut gens = self.period_chain.group.generators.clone();
        gens.push(self.closure);
        gens
    }

    /// Block generators at any position: position j is the block j mod p of
    /// the fundamental period conjugated by shift^(j div p).
    pub fn block_generators_cyclic(&self, pos: i64) -> [Isometry; 4] {
        let p = self.period.len() as i64;
        let q = pos.div_euclid(p);
        let r = pos.rem_euclid(p);
        let base = self
            .period_chain
            .block_generators(r)
            .expect("representative in the fundamental period");
        let mut conj = Isometry::identity();
        let t = if q >= 0 { self.shift } else { self.shift.inverse() };
        for _ in 0..q.unsigned_abs() {
            conj = conj * t;
        }
        base.map(|g| conj * g * conj.inverse())
    }
}

/// Closes k blocks repeating the period word into a circle; k must be a
/// positive multiple of the period length.
pub fn realize_closed_chain(
    period: &[u8],
    k_blocks: usize,
    l0: f64,
    l1: f64,
    sigma: f64,
    seed: u64,
) -> Result<ClosedChainRealization, GlueError> {
    assert!(!period.is_empty());
    assert!(k_blocks >= 1 && k_blocks % period.len() == 0, "k must repeat the period");
    if let Some(&bad) = period.iter().find(|&&c| c > 1) {
        return Err(GlueError::NotBinary(bad));
    }
    let (tree, fnv) = chain_tree_and_fn(period, 0, l0, l1, sigma)?;
    let mut group = build_group(&tree, &fnv)?;
    let root_pants = group.placed[tree.root()].pants.clone();
    group.base_frame = sample_base_frame(&root_pants, seed)?;

    let n = period.len();
    let first = &group.placed[0];
    let last = &group.placed[2 * n - 1];
    let first_curves = [
        first.boundary_curve(0),
        first.boundary_curve(1),
        first.boundary_curve(2),
    ];
    let last_curves = [
        last.boundary_curve(0),
        last.boundary_curve(1),
        last.boundary_curve(2),
    ];
    // the shift glues a copy of the chain's left boundary (slot 0 of the
    // first pants) onto its right boundary (slot 1 of the last pants)
    let shift = edge_conjugator(&last_curves, 1, &first_curves, 0, 0.0)?;
    let mut closure = Isometry::identity();
    for _ in 0..k_blocks / n {
        closure = closure * shift;
    }
    Ok(ClosedChainRealization {
        period_chain: ChainRealization {
            group,
            block_internal_lengths: (l0, l1),
            boundary_length: sigma,
            lo: 0,
            n_blocks: n,
        },
        shift,
        closure,
        period: period.to_vec(),
        k_blocks,
    })
}
