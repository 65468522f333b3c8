//! Exhaustive search for a cover hypothesis consistent with a gluing window,
//! over the declared grid (component count <= max_components, block counts
//! <= max_count).
//!
//! The grid is explored through the run structure of the window rather than
//! by blind enumeration of count vectors: a consistent hypothesis forces its
//! cyclic run sequence to match the window's interior runs at some anchor,
//! which pins every constrained slot and leaves the rest free (set to their
//! minimum). Every candidate that survives the matching is re-verified with
//! [`cover_consistent`], so the shortcut cannot create false positives; it
//! cannot lose witnesses either, because any consistent hypothesis matches
//! at the anchor its own word realizes.

use super::{
    chunks, cover_consistent, Arrangement, BlockGeometry, CoverComponent, CoverHypothesis,
    WindowWord,
};
use num_bigint::BigInt;
use num_rational::BigRational;

#[derive(Debug, Clone)]
pub struct CoverSearchOutcome {
    /// A consistent hypothesis inside the grid, if one was found.
    pub consistent: Option<CoverHypothesis>,
    /// Candidates examined (grid-budget diagnostic).
    pub hypotheses_checked: u64,
    pub max_components: usize,
    pub max_count: usize,
}

/// Builds the hypothesis whose chunk formula yields the given block counts:
/// vol(C) = n * vol(label) * boundary_count / 2.
fn hypothesis_from_counts(
    arrangement: Arrangement,
    labels: &[u8],
    counts: &[usize],
    geometry: &BlockGeometry,
) -> CoverHypothesis {
    let m = labels.len();
    let components = labels
        .iter()
        .zip(counts)
        .enumerate()
        .map(|(i, (&label, &n))| {
            let boundary_count = match arrangement {
                Arrangement::Cycle => 2,
                Arrangement::Segment => {
                    if i == 0 || i == m - 1 {
                        1
                    } else {
                        2
                    }
                }
            };
            let vol = BigRational::from_integer(BigInt::from(n))
                * geometry.vol_of_label(label)
                * BigRational::new(BigInt::from(boundary_count), BigInt::from(2));
            CoverComponent { label, vol, boundary_count }
        })
        .collect();
    CoverHypothesis { arrangement, components }
}

/// The cyclic run slots of the word a hypothesis forces, as (component
/// index, label) per slot: a cycle visits each component once; a segment
/// visits interior components twice (forward and backward).
fn run_slots(arrangement: Arrangement, m: usize, labels: &[u8]) -> Vec<(usize, u8)> {
    match arrangement {
        Arrangement::Cycle => (0..m).map(|i| (i, labels[i])).collect(),
        Arrangement::Segment => {
            let mut slots: Vec<(usize, u8)> = (0..m).map(|i| (i, labels[i])).collect();
            for i in (1..m.saturating_sub(1)).rev() {
                slots.push((i, labels[i]));
            }
            slots
        }
    }
}

/// Searches the hypothesis grid for one consistent with the window.
pub fn search_cover(
    alpha: &WindowWord,
    geometry: &BlockGeometry,
    max_components: usize,
    max_count: usize,
) -> CoverSearchOutcome {
    let mut out = CoverSearchOutcome {
        consistent: None,
        hypotheses_checked: 0,
        max_components,
        max_count,
    };
    let runs = chunks(alpha.letters());
    let s = runs.len();

    'grid: for arrangement in [Arrangement::Cycle, Arrangement::Segment] {
        for m in 1..=max_components {
            if arrangement == Arrangement::Cycle && m > 1 && m % 2 == 1 {
                continue; // labels cannot alternate around an odd cycle
            }
            for start_label in 0..2u8 {
                let labels: Vec<u8> = (0..m).map(|i| (start_label + i as u8) % 2).collect();
                let slots = run_slots(arrangement, m, &labels);
                let t = slots.len();
                if t == 1 {
                    // single-slot word: constant; the window must be constant
                    // of the matching label and any count works
                    out.hypotheses_checked += 1;
                    if s == 1 && runs[0].0 == labels[0] {
                        let hyp =
                            hypothesis_from_counts(arrangement, &labels, &[1], geometry);
                        if hyp.validate().is_ok() && cover_consistent(alpha, &hyp, geometry) {
                            out.consistent = Some(hyp);
                            break 'grid;
                        }
                    }
                    continue;
                }
                // exact runs from the window interior pin slots exactly; the
                // truncatable first/last runs only impose lower bounds
                for anchor in 0..t {
                    out.hypotheses_checked += 1;
                    if let Some(counts) =
                        match_counts(&runs, &slots, anchor, t, m, max_count)
                    {
                        let hyp = hypothesis_from_counts(arrangement, &labels, &counts, geometry);
                        if hyp.validate().is_ok() && cover_consistent(alpha, &hyp, geometry) {
                            out.consistent = Some(hyp);
                            break 'grid;
                        }
                    }
                }
            }
        }
    }
    out
}

/// Tries to satisfy the window's run constraints with the cyclic slot
/// structure, anchoring the window's first run at slot `anchor`. Returns
/// per-component block counts on success.
fn match_counts(
    runs: &[(u8, usize)],
    slots: &[(usize, u8)],
    anchor: usize,
    t: usize,
    m: usize,
    max_count: usize,
) -> Option<Vec<usize>> {
    let s = runs.len();
    let mut exact: Vec<Option<usize>> = vec![None; m];
    let mut minimum: Vec<usize> = vec![1; m];
    for (i, &(label, len)) in runs.iter().enumerate() {
        let (comp, slot_label) = slots[(anchor + i) % t];
        if slot_label != label {
            return None;
        }
        let truncatable = i == 0 || i + 1 == s;
        if truncatable {
            if minimum[comp] < len {
                minimum[comp] = len;
            }
        } else {
            match exact[comp] {
                None => exact[comp] = Some(len),
                Some(prev) if prev == len => {}
                Some(_) => return None,
            }
        }
    }
    let mut counts = Vec::with_capacity(m);
    for c in 0..m {
        let n = match exact[c] {
            Some(n) => {
                if n < minimum[c] {
                    return None;
                }
                n
            }
            None => minimum[c],
        };
        if n == 0 || n > max_count {
            return None;
        }
        counts.push(n);
    }
    Some(counts)
}

/// Blind enumeration over all count vectors in the grid; exponential, used
/// to cross-validate the run-matching search on small grids.
#[cfg(test)]
pub fn search_cover_bruteforce(
    alpha: &WindowWord,
    geometry: &BlockGeometry,
    max_components: usize,
    max_count: usize,
) -> Option<CoverHypothesis> {
    for arrangement in [Arrangement::Cycle, Arrangement::Segment] {
        for m in 1..=max_components {
            for start_label in 0..2u8 {
                let labels: Vec<u8> = (0..m).map(|i| (start_label + i as u8) % 2).collect();
                let mut counts = vec![1usize; m];
                loop {
                    let hyp = hypothesis_from_counts(arrangement, &labels, &counts, geometry);
                    if hyp.validate().is_ok() && cover_consistent(alpha, &hyp, geometry) {
                        return Some(hyp);
                    }
                    // odometer
                    let mut i = 0;
                    loop {
                        if i == m {
                            break;
                        }
                        counts[i] += 1;
                        if counts[i] <= max_count {
                            break;
                        }
                        counts[i] = 1;
                        i += 1;
                    }
                    if i == m {
                        break;
                    }
                }
            }
        }
    }
    None
}
