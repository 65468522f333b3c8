//! Desk-scale proxies for Chabauty proximity of discrete subgroups: finite
//! ball windows (word depth and operator-norm cutoff) compared by Hausdorff
//! distance, and limit-set density diagnostics on the boundary circle.
//!
//! Nothing here claims to metrize the Chabauty topology: every verdict is
//! relative to the window parameters (radius, word depth, generating list),
//! which the callers fix explicitly.

use crate::glue::{realize_chain, realize_closed_chain, BlockGeometry, GlueError, GluingWindow};
use crate::hyp2::{HPoint, Isometry};
use crate::pantsurf::WordBudget;
use crate::symdyn::WindowWord;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ChabautyError {
    #[error("ball radii differ: {a} vs {b}")]
    RadiusMismatch { a: f64, b: f64 },
    #[error("word budget exhausted after {words_used} words")]
    Budget { words_used: usize },
    #[error("chain realization failed: {0}")]
    Glue(#[from] GlueError),
    #[error("closings must repeat the period: {k} blocks vs period {period}")]
    PeriodMismatch { k: usize, period: usize },
}

/// A finite window onto a subgroup: the distinct elements expressible in at
/// most `word_depth` letters whose operator norm is at most `radius`,
/// canonically sorted for reproducible comparisons.
#[derive(Debug, Clone, Serialize)]
pub struct BallSet {
    pub elements: Vec<Isometry>,
    pub radius: f64,
    pub word_depth: usize,
}

/// Enumerates the ball window. The reduced-word DFS prunes a prefix as soon
/// as no completion within the remaining depth can shrink its norm below the
/// cutoff (a singular-value bound using the largest generator norms), which
/// is what keeps deep generator lists affordable.
pub fn ball_set(
    gens: &[Isometry],
    radius: f64,
    word_depth: usize,
    budget: WordBudget,
) -> Result<BallSet, ChabautyError> {
    assert!(radius > 0.0 && word_depth >= 1);
    let mut alpha: Vec<Isometry> = Vec::with_capacity(2 * gens.len());
    for g in gens {
        alpha.push(*g);
        alpha.push(g.inverse());
    }
    // suffix_shrink[m]: the most a product of m letters can divide a norm by
    let mut norms: Vec<f64> = alpha.iter().map(|g| g.op_norm()).collect();
    norms.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let mut suffix_shrink = vec![1.0f64; word_depth + 1];
    for m in 1..=word_depth {
        suffix_shrink[m] = suffix_shrink[m - 1] * norms.get(m - 1).copied().unwrap_or(1.0);
    }

    let mut elements: Vec<Isometry> = vec![Isometry::identity()];
    let mut words_used = 0usize;
    // memo: matrices already expanded with at least this remaining depth.
    // Generator lists with relations (closed chains, doubled surfaces) make
    // the word tree wildly redundant; expanding each element once per
    // remaining depth is exact and collapses the search.
    // scale-invariant key: entries normalized by the norm (relative 1e-9
    // quantization) plus a log-norm bucket, so huge matrices cannot saturate
    // the integer range and alias each other
    let mem_key = |g: &Isometry| -> [i64; 5] {
        let (a, b, c, d) = g.entries();
        let n = g.op_norm().max(1e-300);
        [
            (a / n * 1e9).round() as i64,
            (b / n * 1e9).round() as i64,
            (c / n * 1e9).round() as i64,
            (d / n * 1e9).round() as i64,
            (n.ln() * 1e7).round() as i64,
        ]
    };
    // the barred continuation letter and the remaining depth are part of the
    // state: reduced words forbid only the inverse of the last letter, and a
    // revisit can only be skipped when an earlier visit dominated it in both
    // remaining depth and accumulated conditioning
    let mut expanded: std::collections::HashMap<([i64; 5], usize, usize), f64> =
        std::collections::HashMap::new();
    // reliability gate: rounding injected at any step gets amplified by the
    // rest of the word, so a word's entries are trustworthy only while
    // eps * (product of letter norms) stays below the target accuracy.
    // Relation words that cancel through large letters otherwise deposit
    // noise copies of small elements into the window.
    let letter_norms: Vec<f64> = alpha.iter().map(|g| g.op_norm().max(1.0)).collect();
    let cond_cap = 1e-8 / f64::EPSILON;
    // iterative DFS over reduced words
    let mut frame_letters: Vec<usize> = Vec::new();
    let mut frame_mats: Vec<Isometry> = Vec::new();
    let mut frame_conds: Vec<f64> = Vec::new();
    let mut cursors: Vec<usize> = vec![0];
    loop {
        let depth = frame_letters.len();
        let cursor = &mut cursors[depth];
        if *cursor >= alpha.len() {
            if depth == 0 {
                break;
            }
            frame_letters.pop();
            frame_mats.pop();
            frame_conds.pop();
            cursors.pop();
            *cursors.last_mut().unwrap() += 1;
            continue;
        }
        let letter = *cursor;
        if depth > 0 && frame_letters[depth - 1] ^ 1 == letter {
            *cursor += 1;
            continue;
        }
        let cond = frame_conds.last().copied().unwrap_or(1.0) * letter_norms[letter];
        if cond > cond_cap {
            *cursor += 1;
            continue;
        }
        words_used += 1;
        if words_used > budget.max_words {
            return Err(ChabautyError::Budget { words_used });
        }
        let mat = match frame_mats.last() {
            Some(&m) => m * alpha[letter],
            None => alpha[letter],
        };
        let norm = mat.op_norm();
        if norm <= radius {
            elements.push(mat);
        }
        let remaining = word_depth - depth - 1;
        let worth_expanding =
            remaining > 0 && norm <= radius * suffix_shrink[remaining] && norm.is_finite();
        if worth_expanding {
            let key = (mem_key(&mat), letter, remaining);
            let dominated = expanded.get(&key).is_some_and(|&prev| prev <= cond);
            if !dominated {
                expanded.insert(key, cond);
                frame_letters.push(letter);
                frame_mats.push(mat);
                frame_conds.push(cond);
                cursors.push(0);
                continue;
            }
        }
        *cursor += 1;
    }

    // canonical ordering: lexicographic on rounded entries, then dedup in PSL
    let key = |g: &Isometry| {
        let (a, b, c, d) = g.entries();
        [
            (a * 1e9).round() as i64,
            (b * 1e9).round() as i64,
            (c * 1e9).round() as i64,
            (d * 1e9).round() as i64,
        ]
    };
    elements.sort_by_key(key);
    elements.dedup_by(|a, b| a.psl_distance(b) <= 1e-7);
    Ok(BallSet { elements, radius, word_depth })
}

/// Symmetric Hausdorff distance between two ball windows of equal radius
/// under the PSL sup-norm, with boundary softening: an element whose norm
/// lies within 1e-6 * radius of the cutoff sphere may be unmatched without
/// contributing (window-boundary effects are not Chabauty-meaningful).
pub fn proxy_distance(s1: &BallSet, s2: &BallSet) -> Result<f64, ChabautyError> {
    if (s1.radius - s2.radius).abs() > 1e-12 {
        return Err(ChabautyError::RadiusMismatch { a: s1.radius, b: s2.radius });
    }
    let band = s1.radius * (1.0 - 1e-6);
    let directed = |from: &BallSet, to: &BallSet| -> f64 {
        let mut worst = 0.0f64;
        for g in &from.elements {
            let best = to
                .elements
                .iter()
                .map(|h| g.psl_distance(h))
                .fold(f64::INFINITY, f64::min);
            if g.op_norm() >= band {
                continue; // lenient at the window boundary
            }
            worst = worst.max(best);
        }
        worst
    };
    Ok(directed(s1, s2).max(directed(s2, s1)))
}

/// Orbit directions from a base point: the maximum angular gap on the circle
/// between directions toward the orbit points of words of length <= w.
pub fn direction_density(
    gens: &[Isometry],
    base: HPoint,
    w: usize,
    budget: WordBudget,
) -> Result<f64, ChabautyError> {
    let mut alpha: Vec<Isometry> = Vec::with_capacity(2 * gens.len());
    for g in gens {
        alpha.push(*g);
        alpha.push(g.inverse());
    }
    // move the base point to the disk center, then directions are plain args
    let center = Isometry::point_transport(base).inverse();
    let mut angles: Vec<f64> = Vec::new();
    let mut words_used = 0usize;
    fn rec(
        alpha: &[Isometry],
        last: Option<usize>,
        mat: Option<Isometry>,
        depth: usize,
        center: &Isometry,
        base: HPoint,
        angles: &mut Vec<f64>,
        words_used: &mut usize,
        budget: usize,
    ) -> Result<(), ChabautyError> {
        if depth == 0 {
            return Ok(());
        }
        for (i, g) in alpha.iter().enumerate() {
            if last.is_some_and(|l| l ^ 1 == i) {
                continue;
            }
            *words_used += 1;
            if *words_used > budget {
                return Err(ChabautyError::Budget { words_used: *words_used });
            }
            let m = match mat {
                Some(m) => m * *g,
                None => *g,
            };
            let z = center.apply(m.apply(base));
            // direction toward z from the disk center
            let theta = f64::atan2(-2.0 * z.x, z.x * z.x + z.y * z.y - 1.0);
            if z.x.abs() > 1e-12 || (z.y - 1.0).abs() > 1e-12 {
                angles.push(theta.rem_euclid(std::f64::consts::TAU));
            }
            rec(alpha, Some(i), Some(m), depth - 1, center, base, angles, words_used, budget)?;
        }
        Ok(())
    }
    rec(
        &alpha,
        None,
        None,
        w,
        &center,
        base,
        &mut angles,
        &mut words_used,
        budget.max_words,
    )?;
    angles.sort_by(|a, b| a.partial_cmp(b).unwrap());
    angles.dedup_by(|a, b| (*a - *b).abs() <= 1e-12);
    if angles.len() < 2 {
        return Ok(std::f64::consts::TAU);
    }
    let mut gap = angles[0] + std::f64::consts::TAU - angles[angles.len() - 1];
    for pair in angles.windows(2) {
        gap = gap.max(pair[1] - pair[0]);
    }
    Ok(gap)
}

/// One row of the lattice-limit curve: a k-block closing compared against
/// the long open window.
#[derive(Debug, Clone, Serialize)]
pub struct LatticeLimitRow {
    pub k: usize,
    pub distance: f64,
    pub closed_ball: usize,
    pub open_ball: usize,
}

/// Compares periodic closings against the open chain window: realizes the
/// closed chain of k blocks and the open window, takes ball windows over the
/// block-local generating lists (blocks within `local_blocks` of the base,
/// plus the closure for closed chains), and reports the proxy distance per
/// k. The curve is expected to be nonincreasing and to vanish once the
/// closing's wrap elements leave the norm window.
#[allow(clippy::too_many_arguments)]
pub fn lattice_limit_experiment(
    period: &[u8],
    ks: &[usize],
    l0: f64,
    l1: f64,
    sigma: f64,
    radius: f64,
    word_depth: usize,
    local_blocks: i64,
    budget: WordBudget,
) -> Result<Vec<LatticeLimitRow>, ChabautyError> {
    let p = period.len();
    // The limit object: the bi-infinite periodic chain, whose local window
    // is the one-period development shifted by powers of tau. Deriving the
    // window this way keeps every matrix numerically shallow; the finite
    // realize_chain window converges to it and is cross-checked below.
    let infinite = realize_closed_chain(period, p, l0, l1, sigma, 7)?;
    let mut open_gens: Vec<Isometry> = Vec::new();
    for pos in -local_blocks..=local_blocks {
        open_gens.extend(infinite.block_generators_cyclic(pos));
    }
    let open_ball = ball_set(&open_gens, radius, word_depth, budget)?;

    // cross-route sanity: an independently developed finite window agrees
    // with the shift-derived one at the f64 cross-path noise level
    let window_half = local_blocks + 1;
    let letters: Vec<u8> = (-window_half..=window_half)
        .map(|i| period[i.rem_euclid(p as i64) as usize])
        .collect();
    let alpha = WindowWord::new(letters, window_half as usize);
    let finite = realize_chain(&GluingWindow::new(alpha, BlockGeometry::unit())?, l0, l1, sigma, 7)?;
    for pos in -local_blocks..=local_blocks {
        let a = finite.block_generators(pos).expect("inside window");
        let b = infinite.block_generators_cyclic(pos);
        for (x, y) in a.iter().zip(&b) {
            let scale = y.op_norm().max(1.0);
            if x.psl_distance(y) > 1e-4 * scale * scale {
                return Err(ChabautyError::Glue(GlueError::Pants(
                    crate::pantsurf::PantsError::NumericFailure {
                        context: "finite window drifted from the periodic development",
                        residual: x.psl_distance(y),
                    },
                )));
            }
        }
    }

    let mut rows = Vec::with_capacity(ks.len());
    for &k in ks {
        if k % p != 0 {
            return Err(ChabautyError::PeriodMismatch { k, period: p });
        }
        let closed = realize_closed_chain(period, k, l0, l1, sigma, 7)?;
        let mut gens: Vec<Isometry> = Vec::new();
        for pos in -local_blocks..=local_blocks {
            gens.extend(closed.block_generators_cyclic(pos));
        }
        gens.push(closed.closure);
        let ball = ball_set(&gens, radius, word_depth, budget)?;
        let distance = proxy_distance(&ball, &open_ball)?;
        rows.push(LatticeLimitRow {
            k,
            distance,
            closed_ball: ball.elements.len(),
            open_ball: open_ball.elements.len(),
        });
    }
    Ok(rows)
}
