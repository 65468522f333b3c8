//! Subshifts presented by families of sample words, periodic-point detection
//! on the window SFT, shift-invariant measure samplers, and the free-group
//! geodesic combinatorics that embeds symbol strings as geodesics.
//!
//! The subshift C itself is cut out by an infinite family; everything here
//! works with a finite window length L and finitely many samples, which
//! defines a *superset* of C (the window SFT). A `None` verdict from
//! [`find_periodic`] therefore transfers to C, while `Some` verdicts are
//! statements about the window SFT.

mod freegroup;

pub use freegroup::{
    axis_of, embed_string, is_axis, shift_geodesic, FreeWord, GeodesicWindow, Letter,
};

use crate::seeding::rng_from_seed;
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SymdynError {
    #[error("shift by {shift} leaves the window (offset {offset}, length {len})")]
    OutOfWindow { shift: i64, offset: usize, len: usize },
    #[error("window of span {span} is too short to test a word of length {word_len}")]
    WindowTooShort { span: usize, word_len: usize },
    #[error("the trivial element has no axis")]
    TrivialElement,
    #[error("invalid measure: {0}")]
    BadMeasure(String),
    #[error("letter {letter} out of alphabet range {alphabet}")]
    BadLetter { letter: u8, alphabet: usize },
}

/// A family of sample words over {0, .., alphabet_size - 1}. The induced
/// subshift consists of the bi-infinite strings all of whose finite
/// substrings occur in some sample.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubshiftFamily {
    alphabet_size: usize,
    samples: Vec<Vec<u8>>,
}

impl SubshiftFamily {
    pub fn new(alphabet_size: usize, samples: Vec<Vec<u8>>) -> Result<Self, SymdynError> {
        if alphabet_size < 2 {
            return Err(SymdynError::BadMeasure("alphabet size must be at least 2".into()));
        }
        if samples.is_empty() || samples.iter().any(|s| s.is_empty()) {
            return Err(SymdynError::BadMeasure("samples must be nonempty".into()));
        }
        for s in &samples {
            for &c in s {
                if c as usize >= alphabet_size {
                    return Err(SymdynError::BadLetter { letter: c, alphabet: alphabet_size });
                }
            }
        }
        Ok(SubshiftFamily { alphabet_size, samples })
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn samples(&self) -> &[Vec<u8>] {
        &self.samples
    }
}

/// Prefix of the Thue-Morse word: t(n) = parity of the binary weight of n.
pub fn thue_morse(len: usize) -> Vec<u8> {
    (0..len).map(|n| (n.count_ones() % 2) as u8).collect()
}

/// The canonical aperiodic test family: Thue-Morse prefixes of the given lengths.
pub fn thue_morse_family(lens: &[usize]) -> SubshiftFamily {
    SubshiftFamily::new(2, lens.iter().map(|&l| thue_morse(l)).collect()).expect("valid family")
}

/// All length-L factors of the family's samples.
pub fn factor_set(fam: &SubshiftFamily, l: usize) -> BTreeSet<Vec<u8>> {
    assert!(l >= 1);
    let mut out = BTreeSet::new();
    for s in &fam.samples {
        if s.len() >= l {
            for w in s.windows(l) {
                out.insert(w.to_vec());
            }
        }
    }
    out
}

/// Whether the word occurs as a substring of some sample.
pub fn admits(w: &[u8], fam: &SubshiftFamily) -> bool {
    if w.is_empty() {
        return true;
    }
    fam.samples
        .iter()
        .any(|s| s.len() >= w.len() && s.windows(w.len()).any(|win| win == w))
}

/// Searches for a periodic point of the window-L SFT with period at most
/// `pmax`: a cyclic word all of whose length-L cyclic windows are admissible.
///
/// Returns the lexicographically smallest such word of minimal period, or
/// `None` when no period <= pmax survives the window-L approximation. A
/// `None` is budget-relative to (L, pmax): since the window SFT contains the
/// subshift, it does rule out periodic points of period <= pmax in C, but
/// says nothing about larger periods.
pub fn find_periodic(fam: &SubshiftFamily, l: usize, pmax: usize) -> Option<Vec<u8>> {
    assert!(l >= 2 && pmax >= 1);
    let n = fam.alphabet_size as u64;
    for k in 1..=pmax {
        if k + 1 < l {
            // short periods: brute force over alphabet^k in lex order
            let total = n.pow(k as u32);
            for code in 0..total {
                let mut word = vec![0u8; k];
                let mut c = code;
                for slot in word.iter_mut().rev() {
                    *slot = (c % n) as u8;
                    c /= n;
                }
                if cyclic_word_admissible(&word, l, fam) {
                    return Some(word);
                }
            }
        } else if let Some(w) = search_period_on_graph(fam, l, k) {
            return Some(w);
        }
    }
    None
}

fn cyclic_word_admissible(word: &[u8], l: usize, fam: &SubshiftFamily) -> bool {
    let k = word.len();
    let mut window = vec![0u8; l];
    for s in 0..k {
        for (j, w) in window.iter_mut().enumerate() {
            *w = word[(s + j) % k];
        }
        if !admits(&window, fam) {
            return false;
        }
    }
    true
}

/// de Bruijn-style search for a period-k word, k >= L-1: vertices are the
/// admissible (L-1)-blocks, edges the admissible L-blocks; a period-k point
/// is a closed k-walk read off by first letters. The DFS assigns letters in
/// lex order and prunes with exact "reachable in m steps" tables, so the
/// first word found is the lexicographic minimum.
fn search_period_on_graph(fam: &SubshiftFamily, l: usize, k: usize) -> Option<Vec<u8>> {
    let blocks: Vec<Vec<u8>> = factor_set(fam, l - 1).into_iter().collect();
    if blocks.is_empty() {
        return None;
    }
    let index: BTreeMap<&[u8], usize> = blocks
        .iter()
        .enumerate()
        .map(|(i, b)| (b.as_slice(), i))
        .collect();
    let nv = blocks.len();
    let words_per_row = (nv + 63) / 64;
    // adjacency by letter: succ[u] = edges (next letter, target block)
    let mut succ: Vec<Vec<(u8, usize)>> = vec![Vec::new(); nv];
    for (u, b) in blocks.iter().enumerate() {
        for c in 0..fam.alphabet_size as u8 {
            let mut lw = b.clone();
            lw.push(c);
            if admits(&lw, fam) {
                if let Some(&v) = index.get(&lw[1..]) {
                    succ[u].push((c, v));
                }
            }
        }
    }
    // reach[m][u] = bitset of blocks reachable from u in exactly m steps
    let mut reach: Vec<Vec<u64>> = Vec::with_capacity(k + 1);
    let mut r0 = vec![0u64; nv * words_per_row];
    for u in 0..nv {
        r0[u * words_per_row + u / 64] |= 1 << (u % 64);
    }
    reach.push(r0);
    for m in 1..=k {
        let prev = &reach[m - 1];
        let mut cur = vec![0u64; nv * words_per_row];
        for u in 0..nv {
            for &(_, v) in &succ[u] {
                let (dst, src) = (
                    u * words_per_row,
                    v * words_per_row,
                );
                for w in 0..words_per_row {
                    cur[dst + w] |= prev[src + w];
                }
            }
        }
        reach.push(cur);
    }
    let reachable = |m: usize, from: usize, to: usize| -> bool {
        reach[m][from * words_per_row + to / 64] & (1 << (to % 64)) != 0
    };

    // DFS over the k letters of the cyclic word.
    let mut word = vec![0u8; k];
    fn dfs(
        word: &mut Vec<u8>,
        t: usize,
        k: usize,
        l: usize,
        fam: &SubshiftFamily,
        index: &BTreeMap<&[u8], usize>,
        reachable: &dyn Fn(usize, usize, usize) -> bool,
        b0: Option<usize>,
    ) -> bool {
        if t == k {
            // closing windows that wrap around the seam
            let mut window = vec![0u8; l];
            for s in k + 1 - l..k {
                for (j, w) in window.iter_mut().enumerate() {
                    *w = word[(s + j) % k];
                }
                if !admits(&window, fam) {
                    return false;
                }
            }
            return true;
        }
        for c in 0..fam.alphabet_size() as u8 {
            word[t] = c;
            let mut b0_next = b0;
            let mut ok = true;
            if t + 1 >= l - 1 && t + 1 <= k {
                // the block ending at position t is complete
                let start = t + 1 - (l - 1);
                let blk = &word[start..t + 1];
                match index.get(blk) {
                    None => ok = false,
                    Some(&bi) => {
                        if start == 0 {
                            b0_next = Some(bi);
                        }
                        // non-wrapped window check: the L-window ending at t
                        if ok && t + 1 >= l {
                            ok = admits(&word[t + 1 - l..t + 1], fam);
                        }
                        // exact remaining-steps feasibility back to b0
                        if ok {
                            let b0v = b0_next.expect("b0 set once the first block closes");
                            let remaining = k - start;
                            ok = reachable(remaining, bi, b0v);
                        }
                    }
                }
            }
            if ok && dfs(word, t + 1, k, l, fam, index, reachable, b0_next) {
                return true;
            }
        }
        word[t] = 0;
        false
    }
    if dfs(&mut word, 0, k, l, fam, &index, &reachable, None) {
        Some(word)
    } else {
        None
    }
}

// ---------------------------------------------------------------------------
// Windows and shift-invariant measures
// ---------------------------------------------------------------------------

/// A finite window onto a bi-infinite symbol string: `letters[offset + i]`
/// is the symbol at position i, for i in [-offset, len - offset).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowWord {
    letters: Vec<u8>,
    offset_of_zero: usize,
}

impl WindowWord {
    pub fn new(letters: Vec<u8>, offset_of_zero: usize) -> Self {
        assert!(offset_of_zero < letters.len(), "offset must index the window");
        WindowWord { letters, offset_of_zero }
    }

    /// Centered window: offset = len / 2.
    pub fn centered(letters: Vec<u8>) -> Self {
        let off = letters.len() / 2;
        WindowWord::new(letters, off)
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn offset_of_zero(&self) -> usize {
        self.offset_of_zero
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Symbol at position i, if the window covers it.
    pub fn at(&self, i: i64) -> Option<u8> {
        let idx = i + self.offset_of_zero as i64;
        if idx < 0 || idx >= self.letters.len() as i64 {
            None
        } else {
            Some(self.letters[idx as usize])
        }
    }

    /// Position range [lo, hi) covered by the window.
    pub fn range(&self) -> (i64, i64) {
        let lo = -(self.offset_of_zero as i64);
        (lo, lo + self.letters.len() as i64)
    }
}

/// Applies the shift S^k, S(w)(i) = w(i-1), by moving the origin within the
/// fixed window. Fails when the new origin leaves the window.
pub fn shift_window(w: &WindowWord, k: i64) -> Result<WindowWord, SymdynError> {
    let new_off = w.offset_of_zero as i64 - k;
    if new_off < 0 || new_off >= w.letters.len() as i64 {
        return Err(SymdynError::OutOfWindow {
            shift: k,
            offset: w.offset_of_zero,
            len: w.letters.len(),
        });
    }
    Ok(WindowWord::new(w.letters.clone(), new_off as usize))
}

/// A shift-invariant measure on the full shift, in sampler form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum ShiftMeasure {
    Bernoulli(Vec<f64>),
    Markov { p: Vec<Vec<f64>>, pi: Vec<f64> },
    PeriodicOrbit(Vec<u8>),
}

impl ShiftMeasure {
    pub fn bernoulli(probs: Vec<f64>) -> Result<Self, SymdynError> {
        if probs.len() < 2 || probs.iter().any(|&x| x < 0.0) {
            return Err(SymdynError::BadMeasure("need >= 2 nonnegative probabilities".into()));
        }
        let s: f64 = probs.iter().sum();
        if (s - 1.0).abs() > 1e-12 {
            return Err(SymdynError::BadMeasure(format!("probabilities sum to {s}")));
        }
        Ok(ShiftMeasure::Bernoulli(probs))
    }

    /// Markov measure with an explicit stationary vector; validates row sums
    /// to 1e-12 and stationarity pi P = pi to 1e-9.
    pub fn markov(p: Vec<Vec<f64>>, pi: Vec<f64>) -> Result<Self, SymdynError> {
        let n = p.len();
        if n < 2 || pi.len() != n || p.iter().any(|r| r.len() != n) {
            return Err(SymdynError::BadMeasure("matrix must be square, order >= 2".into()));
        }
        for (i, row) in p.iter().enumerate() {
            if row.iter().any(|&x| x < 0.0) {
                return Err(SymdynError::BadMeasure(format!("negative entry in row {i}")));
            }
            let s: f64 = row.iter().sum();
            if (s - 1.0).abs() > 1e-12 {
                return Err(SymdynError::BadMeasure(format!("row {i} sums to {s}")));
            }
        }
        let spi: f64 = pi.iter().sum();
        if pi.iter().any(|&x| x < 0.0) || (spi - 1.0).abs() > 1e-9 {
            return Err(SymdynError::BadMeasure("pi must be a probability vector".into()));
        }
        for j in 0..n {
            let dot: f64 = (0..n).map(|i| pi[i] * p[i][j]).sum();
            if (dot - pi[j]).abs() > 1e-9 {
                return Err(SymdynError::BadMeasure(format!(
                    "pi is not stationary at column {j}: {dot} vs {}",
                    pi[j]
                )));
            }
        }
        Ok(ShiftMeasure::Markov { p, pi })
    }

    /// Markov measure with the stationary vector computed by a direct solve.
    pub fn markov_from_matrix(p: Vec<Vec<f64>>) -> Result<Self, SymdynError> {
        let pi = stationary_vector(&p)?;
        ShiftMeasure::markov(p, pi)
    }

    pub fn periodic_orbit(word: Vec<u8>) -> Result<Self, SymdynError> {
        if word.is_empty() {
            return Err(SymdynError::BadMeasure("periodic word must be nonempty".into()));
        }
        Ok(ShiftMeasure::PeriodicOrbit(word))
    }

    pub fn alphabet_size(&self) -> usize {
        match self {
            ShiftMeasure::Bernoulli(p) => p.len(),
            ShiftMeasure::Markov { p, .. } => p.len(),
            ShiftMeasure::PeriodicOrbit(w) => *w.iter().max().unwrap() as usize + 1,
        }
    }

    /// Marginal probability of the symbol at any single position.
    pub fn marginal(&self, symbol: u8) -> f64 {
        match self {
            ShiftMeasure::Bernoulli(p) => p.get(symbol as usize).copied().unwrap_or(0.0),
            ShiftMeasure::Markov { pi, .. } => pi.get(symbol as usize).copied().unwrap_or(0.0),
            ShiftMeasure::PeriodicOrbit(w) => {
                w.iter().filter(|&&c| c == symbol).count() as f64 / w.len() as f64
            }
        }
    }
}

/// Solves pi P = pi, sum pi = 1 by Gaussian elimination on (P^T - I) with
/// the normalization row appended.
fn stationary_vector(p: &[Vec<f64>]) -> Result<Vec<f64>, SymdynError> {
    let n = p.len();
    // rows: (P^T - I) x = 0 for the first n-1 coordinates, plus sum x = 1
    let mut a = vec![vec![0.0f64; n + 1]; n];
    for j in 0..n - 1 {
        for i in 0..n {
            a[j][i] = p[i][j] - if i == j { 1.0 } else { 0.0 };
        }
        a[j][n] = 0.0;
    }
    for i in 0..n {
        a[n - 1][i] = 1.0;
    }
    a[n - 1][n] = 1.0;
    // elimination with partial pivoting
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&r, &s| a[r][col].abs().partial_cmp(&a[s][col].abs()).unwrap())
            .unwrap();
        if a[piv][col].abs() < 1e-13 {
            return Err(SymdynError::BadMeasure("stationary solve is singular".into()));
        }
        a.swap(col, piv);
        for r in 0..n {
            if r != col {
                let f = a[r][col] / a[col][col];
                for c in col..=n {
                    a[r][c] -= f * a[col][c];
                }
            }
        }
    }
    Ok((0..n).map(|i| a[i][n] / a[i][i]).collect())
}

/// Draws a window of the given length: i.i.d. for Bernoulli, stationary
/// start then chain for Markov, uniformly random phase for a periodic orbit.
/// Deterministic per seed; the origin sits at length / 2.
pub fn sample_window(m: &ShiftMeasure, length: usize, seed: u64) -> WindowWord {
    assert!(length >= 1);
    let mut rng = rng_from_seed(seed);
    let letters = match m {
        ShiftMeasure::Bernoulli(p) => (0..length).map(|_| draw_from(&mut rng, p)).collect(),
        ShiftMeasure::Markov { p, pi } => {
            let mut out = Vec::with_capacity(length);
            let mut state = draw_from(&mut rng, pi);
            out.push(state);
            for _ in 1..length {
                state = draw_from(&mut rng, &p[state as usize]);
                out.push(state);
            }
            out
        }
        ShiftMeasure::PeriodicOrbit(w) => {
            let phase = rng.gen_range(0..w.len());
            (0..length).map(|i| w[(phase + i) % w.len()]).collect()
        }
    };
    WindowWord::new(letters, length / 2)
}

fn draw_from<R: Rng>(rng: &mut R, probs: &[f64]) -> u8 {
    let u: f64 = rng.gen();
    let mut acc = 0.0;
    for (i, &p) in probs.iter().enumerate() {
        acc += p;
        if u < acc {
            return i as u8;
        }
    }
    (probs.len() - 1) as u8
}
