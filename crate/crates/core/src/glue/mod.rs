//! Block gluings along a binary sequence: the volume-reweighted measure, the
//! run-length chunk bookkeeping behind the covering obstruction, and a
//! two-dimensional realization of finite gluing windows as pants chains.
//!
//! Volumes enter the chunk formula as exact rationals parsed from decimal
//! strings, so integrality verdicts never ride on float noise. Covering
//! verdicts are grid-relative: hypotheses range over at most `max_components`
//! components with block counts at most `max_count`.

use crate::pantsurf::PantsError;
use crate::seeding::{rng_from_seed, trial_seed};
use crate::symdyn::{sample_window, ShiftMeasure, WindowWord};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GlueError {
    #[error("cannot parse {0:?} as a decimal volume")]
    BadVolume(String),
    #[error("volumes must be positive")]
    NonPositiveVolume,
    #[error("gluing windows use the binary alphabet, got letter {0}")]
    NotBinary(u8),
    #[error("invalid cover hypothesis: {0}")]
    BadHypothesis(String),
    #[error(transparent)]
    Pants(#[from] PantsError),
}

/// Exact rational from a decimal string such as "2", "0.75" or "-1.5e2".
pub fn rational_from_decimal(s: &str) -> Result<BigRational, GlueError> {
    let err = || GlueError::BadVolume(s.to_string());
    let t = s.trim();
    let (mant, exp) = match t.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i64>().map_err(|_| err())?),
        None => (t, 0),
    };
    let (int_part, frac_part) = match mant.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mant, ""),
    };
    if frac_part.contains(['+', '-']) {
        return Err(err());
    }
    let digits = format!("{int_part}{frac_part}");
    if digits.is_empty() || digits == "-" || digits == "+" {
        return Err(err());
    }
    let n: BigInt = digits.parse().map_err(|_| err())?;
    let shift = exp - frac_part.len() as i64;
    let ten = BigInt::from(10);
    Ok(if shift >= 0 {
        BigRational::from_integer(n * ten.pow(shift as u32))
    } else {
        BigRational::new(n, ten.pow((-shift) as u32))
    })
}

/// Volumes of the two blocks and of the gluing hypersurface.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlockGeometry {
    pub vol0: BigRational,
    pub vol1: BigRational,
    pub vol_sigma: BigRational,
}

impl BlockGeometry {
    pub fn new(vol0: BigRational, vol1: BigRational, vol_sigma: BigRational) -> Result<Self, GlueError> {
        if !(vol0.is_positive() && vol1.is_positive() && vol_sigma.is_positive()) {
            return Err(GlueError::NonPositiveVolume);
        }
        Ok(BlockGeometry { vol0, vol1, vol_sigma })
    }

    pub fn from_decimals(v0: &str, v1: &str, vs: &str) -> Result<Self, GlueError> {
        BlockGeometry::new(
            rational_from_decimal(v0)?,
            rational_from_decimal(v1)?,
            rational_from_decimal(vs)?,
        )
    }

    pub fn unit() -> Self {
        BlockGeometry {
            vol0: BigRational::one(),
            vol1: BigRational::one(),
            vol_sigma: BigRational::one(),
        }
    }

    pub fn vol_of_label(&self, label: u8) -> &BigRational {
        if label == 0 {
            &self.vol0
        } else {
            &self.vol1
        }
    }
}

/// A finite window of a gluing pattern together with its block volumes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GluingWindow {
    pub alpha: WindowWord,
    pub geometry: BlockGeometry,
}

impl GluingWindow {
    pub fn new(alpha: WindowWord, geometry: BlockGeometry) -> Result<Self, GlueError> {
        if let Some(&bad) = alpha.letters().iter().find(|&&c| c > 1) {
            return Err(GlueError::NotBinary(bad));
        }
        Ok(GluingWindow { alpha, geometry })
    }
}

/// Probability that the block containing the base frame is a 1-block under
/// the volume-reweighted measure: P(a0 = 1) vol1 / (P(a0 = 0) vol0 +
/// P(a0 = 1) vol1). The marginal is closed-form for Bernoulli and Markov
/// measures and an orbit average for periodic ones.
pub fn nu_prime_weight(geometry: &BlockGeometry, m: &ShiftMeasure) -> f64 {
    let p1 = m.marginal(1);
    let p0 = m.marginal(0);
    let v0 = geometry.vol0.to_f64().expect("volume fits f64");
    let v1 = geometry.vol1.to_f64().expect("volume fits f64");
    p1 * v1 / (p0 * v0 + p1 * v1)
}

/// Draws a window against the reweighted measure by rejection: candidates
/// from the shift-invariant measure are accepted with probability
/// vol(block at 0) / max(vol0, vol1). Deterministic per seed.
pub fn sample_nu_prime(
    geometry: &BlockGeometry,
    m: &ShiftMeasure,
    length: usize,
    seed: u64,
) -> WindowWord {
    let v0 = geometry.vol0.to_f64().expect("volume fits f64");
    let v1 = geometry.vol1.to_f64().expect("volume fits f64");
    let vmax = v0.max(v1);
    for attempt in 0..u64::MAX {
        let s = trial_seed(seed, attempt);
        let cand = sample_window(m, length, s);
        let w = if cand.at(0).expect("origin in window") == 0 { v0 } else { v1 } / vmax;
        let mut rng = rng_from_seed(trial_seed(s, 1));
        if rng.gen::<f64>() < w {
            return cand;
        }
    }
    unreachable!("rejection sampling terminates")
}

/// Run-length encoding of a letter sequence: maximal runs of equal labels.
pub fn chunks(letters: &[u8]) -> Vec<(u8, usize)> {
    let mut out: Vec<(u8, usize)> = Vec::new();
    for &c in letters {
        match out.last_mut() {
            Some((label, n)) if *label == c => *n += 1,
            _ => out.push((c, 1)),
        }
    }
    out
}

/// Inverse of [`chunks`].
pub fn decode_chunks(runs: &[(u8, usize)]) -> Vec<u8> {
    let mut out = Vec::new();
    for &(label, n) in runs {
        out.extend(std::iter::repeat(label).take(n));
    }
    out
}

/// End-to-end arrangement of the chunk components in the covered manifold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Arrangement {
    Cycle,
    Segment,
}

/// One component of the hypothesized covered manifold: a label, its volume,
/// and how many boundary hypersurfaces it has.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoverComponent {
    pub label: u8,
    pub vol: BigRational,
    pub boundary_count: u8,
}

/// A hypothesis for a finite-volume manifold covered by the gluing: the
/// components of the two label-regions, arranged in a circle or a segment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoverHypothesis {
    pub arrangement: Arrangement,
    pub components: Vec<CoverComponent>,
}

impl CoverHypothesis {
    pub fn validate(&self) -> Result<(), GlueError> {
        let m = self.components.len();
        if m == 0 {
            return Err(GlueError::BadHypothesis("no components".into()));
        }
        for c in &self.components {
            if !c.vol.is_positive() {
                return Err(GlueError::BadHypothesis("component volume must be positive".into()));
            }
            if c.label > 1 {
                return Err(GlueError::BadHypothesis(format!("label {} not binary", c.label)));
            }
        }
        for w in self.components.windows(2) {
            if w[0].label == w[1].label {
                return Err(GlueError::BadHypothesis("labels must alternate".into()));
            }
        }
        match self.arrangement {
            Arrangement::Cycle => {
                if m > 1 && self.components[0].label == self.components[m - 1].label {
                    return Err(GlueError::BadHypothesis("cycle labels must alternate around".into()));
                }
                if self.components.iter().any(|c| c.boundary_count != 2) {
                    return Err(GlueError::BadHypothesis("cycle components have two boundaries".into()));
                }
            }
            Arrangement::Segment => {
                for (i, c) in self.components.iter().enumerate() {
                    let want = if i == 0 || i == m - 1 { 1 } else { 2 };
                    if c.boundary_count != want {
                        return Err(GlueError::BadHypothesis(format!(
                            "segment component {i} needs boundary count {want}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Number of blocks in a chunk covering a component: the volume count
/// 2 vol(Sigma) vol(C) / (vol(N_label) vol(dC)) with vol(dC) =
/// boundary_count * vol(Sigma). Exact rational arithmetic.
pub fn blocks_per_chunk(
    geometry: &BlockGeometry,
    vol_c: &BigRational,
    boundary_count: u8,
    label: u8,
) -> BigRational {
    assert!(vol_c.is_positive());
    assert!(boundary_count == 1 || boundary_count == 2);
    let two = BigRational::from_integer(BigInt::from(2));
    let vol_boundary = BigRational::from_integer(BigInt::from(boundary_count)) * &geometry.vol_sigma;
    two * &geometry.vol_sigma * vol_c / (geometry.vol_of_label(label) * vol_boundary)
}

/// The periodic gluing word a cover hypothesis forces, when all block counts
/// are integral: a cycle concatenates its chunk runs; a segment is traversed
/// forward then backward with the endpoint runs counted once.
pub fn infer_period(h: &CoverHypothesis, geometry: &BlockGeometry) -> Option<Vec<u8>> {
    h.validate().ok()?;
    let mut counts = Vec::with_capacity(h.components.len());
    for c in &h.components {
        let n = blocks_per_chunk(geometry, &c.vol, c.boundary_count, c.label);
        if !n.is_integer() || !n.is_positive() {
            return None;
        }
        counts.push(n.to_integer().to_usize()?);
    }
    let mut runs: Vec<(u8, usize)> = h
        .components
        .iter()
        .zip(&counts)
        .map(|(c, &n)| (c.label, n))
        .collect();
    if h.arrangement == Arrangement::Segment && h.components.len() > 2 {
        let back: Vec<(u8, usize)> = (1..h.components.len() - 1)
            .rev()
            .map(|i| (h.components[i].label, counts[i]))
            .collect();
        runs.extend(back);
    }
    Some(decode_chunks(&runs))
}

/// Whether the window is a factor of the bi-infinite repetition of the word
/// the hypothesis forces.
pub fn cover_consistent(alpha: &WindowWord, h: &CoverHypothesis, geometry: &BlockGeometry) -> bool {
    match infer_period(h, geometry) {
        Some(word) => is_factor_of_periodic(alpha.letters(), &word),
        None => false,
    }
}

/// Whether `window` occurs in the bi-infinite repetition of `word`.
pub fn is_factor_of_periodic(window: &[u8], word: &[u8]) -> bool {
    let p = word.len();
    (0..p).any(|phase| {
        window
            .iter()
            .enumerate()
            .all(|(i, &c)| word[(phase + i) % p] == c)
    })
}

mod search;
mod chain;

pub use chain::{realize_chain, realize_closed_chain, ChainRealization, ClosedChainRealization};
pub use search::{search_cover, CoverSearchOutcome};

#[cfg(test)]
mod tests;
