//! Reduced words in a free group, geodesic windows, and the axis/shift
//! correspondence: an element's axis is the bi-infinite repetition of its
//! cyclically reduced core, and a window is an axis of g exactly when g acts
//! on it by a nonzero shift.

use super::{SymdynError, WindowWord};
use serde::{Deserialize, Serialize};

/// One signed generator letter: phi_gen or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Letter {
    pub gen: u32,
    pub inv: bool,
}

impl Letter {
    pub fn new(gen: u32, inv: bool) -> Self {
        Letter { gen, inv }
    }

    pub fn inverse(self) -> Self {
        Letter { gen: self.gen, inv: !self.inv }
    }

    pub fn cancels(self, other: Letter) -> bool {
        self.gen == other.gen && self.inv != other.inv
    }
}

impl std::fmt::Display for Letter {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.inv {
            write!(f, "{}^-1", self.gen)
        } else {
            write!(f, "{}", self.gen)
        }
    }
}

/// A reduced word in the free group: no adjacent (x, x^-1) pair.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct FreeWord {
    letters: Vec<Letter>,
}

impl FreeWord {
    pub fn identity() -> Self {
        FreeWord { letters: Vec::new() }
    }

    pub fn generator(gen: u32) -> Self {
        FreeWord { letters: vec![Letter::new(gen, false)] }
    }

    /// Builds from letters, freely reducing.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last().is_some_and(|last| last.cancels(l)) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        FreeWord { letters: out }
    }

    /// Parses a whitespace-separated list of signed 1-based generator
    /// indices: "1 -2 1" is phi_0 phi_1^-1 phi_0.
    pub fn parse(s: &str) -> Option<Self> {
        let mut letters = Vec::new();
        for tok in s.split_whitespace() {
            let v: i64 = tok.parse().ok()?;
            if v == 0 {
                return None;
            }
            letters.push(Letter::new((v.unsigned_abs() - 1) as u32, v < 0));
        }
        Some(FreeWord::from_letters(letters))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn mul(&self, other: &FreeWord) -> FreeWord {
        FreeWord::from_letters(self.letters.iter().chain(other.letters.iter()).copied())
    }

    pub fn mul_letter(&self, l: Letter) -> FreeWord {
        let mut out = self.letters.clone();
        if out.last().is_some_and(|last| last.cancels(l)) {
            out.pop();
        } else {
            out.push(l);
        }
        FreeWord { letters: out }
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// Cyclic reduction g = c * core * c^-1 with core cyclically reduced.
    /// Returns (conjugator c, core).
    pub fn cyclic_reduce(&self) -> (FreeWord, FreeWord) {
        let mut lo = 0usize;
        let mut hi = self.letters.len();
        while hi - lo >= 2 && self.letters[lo].cancels(self.letters[hi - 1]) {
            lo += 1;
            hi -= 1;
        }
        (
            FreeWord { letters: self.letters[..lo].to_vec() },
            FreeWord { letters: self.letters[lo..hi].to_vec() },
        )
    }

    /// True when no rotation of the word cancels: first and last letters are
    /// not inverse to each other.
    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.letters.first(), self.letters.last()) {
            (Some(&a), Some(&b)) => self.letters.len() == 1 || !a.cancels(b),
            _ => true,
        }
    }
}

impl std::fmt::Display for FreeWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|l| {
                let v = (l.gen + 1) as i64;
                if l.inv { (-v).to_string() } else { v.to_string() }
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// A finite window of a geodesic gamma: Z -> F. Values are determined by the
/// anchor gamma(0) and the step letters: gamma(i+1) = gamma(i) * step_i.
/// The step sequence is reduced, so every gamma(i) lies at word distance
/// |i - j| from gamma(j).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeodesicWindow {
    lo: i64,
    steps: Vec<Letter>,
    anchor: FreeWord,
}

impl GeodesicWindow {
    /// Window over positions [lo, lo + steps.len()], with gamma(0) = anchor.
    /// The step sequence must be reduced and the window must contain 0.
    pub fn new(lo: i64, steps: Vec<Letter>, anchor: FreeWord) -> Self {
        let hi = lo + steps.len() as i64;
        assert!(lo <= 0 && 0 <= hi, "window must contain position 0");
        for pair in steps.windows(2) {
            assert!(!pair[0].cancels(pair[1]), "steps must be reduced");
        }
        GeodesicWindow { lo, steps, anchor }
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.steps.len() as i64
    }

    pub fn steps(&self) -> &[Letter] {
        &self.steps
    }

    pub fn anchor(&self) -> &FreeWord {
        &self.anchor
    }

    /// Step letter at position i (the move gamma(i) -> gamma(i+1)).
    pub fn step_at(&self, i: i64) -> Option<Letter> {
        if i < self.lo || i >= self.hi() {
            None
        } else {
            Some(self.steps[(i - self.lo) as usize])
        }
    }

    /// gamma(i), walking from the anchor.
    pub fn at(&self, i: i64) -> Option<FreeWord> {
        if i < self.lo || i > self.hi() {
            return None;
        }
        let mut w = self.anchor.clone();
        if i >= 0 {
            for j in 0..i {
                w = w.mul_letter(self.step_at(j).expect("in window"));
            }
        } else {
            for j in (i..0).rev() {
                w = w.mul_letter(self.step_at(j).expect("in window").inverse());
            }
        }
        Some(w)
    }

    /// Steps restricted to the overlap with another window agree. This is
    /// equality in the quotient by left translation, which is where the
    /// symbol-string embedding lives.
    pub fn agrees_mod_left(&self, other: &GeodesicWindow) -> bool {
        let lo = self.lo.max(other.lo);
        let hi = self.hi().min(other.hi());
        if lo >= hi {
            return true;
        }
        (lo..hi).all(|i| self.step_at(i) == other.step_at(i))
    }
}

/// The shift-invariant embedding of symbol strings into geodesics mod left
/// translation: step_i = phi_{e(i)}, gamma(0) = 1. All steps are positive
/// letters, so the window is automatically geodesic.
pub fn embed_string(e: &WindowWord) -> GeodesicWindow {
    let (lo, _) = e.range();
    let steps: Vec<Letter> = e
        .letters()
        .iter()
        .map(|&c| Letter::new(c as u32, false))
        .collect();
    GeodesicWindow::new(lo, steps, FreeWord::identity())
}

/// The shift S^k on geodesic windows: S(gamma)(i) = gamma(i-1). The step
/// sequence is fixed; the anchor moves to the old gamma(-k).
pub fn shift_geodesic(g: &GeodesicWindow, k: i64) -> Result<GeodesicWindow, SymdynError> {
    let new_lo = g.lo + k;
    let new_hi = g.hi() + k;
    if new_lo > 0 || new_hi < 0 {
        return Err(SymdynError::OutOfWindow {
            shift: k,
            offset: (-g.lo) as usize,
            len: g.steps.len(),
        });
    }
    let anchor = g.at(-k).expect("checked in range");
    Ok(GeodesicWindow::new(new_lo, g.steps.clone(), anchor))
}

/// Axis of a nontrivial element: cyclically reduce g = c * core * c^-1; the
/// axis repeats the core's letters with period |core|, anchored so that
/// gamma(0) = c (the conjugator). Returns the window spanning
/// [-half_window, half_window] together with the period.
pub fn axis_of(g: &FreeWord, half_window: usize) -> Result<(GeodesicWindow, usize), SymdynError> {
    let (conj, core) = g.cyclic_reduce();
    if core.is_empty() {
        return Err(SymdynError::TrivialElement);
    }
    let p = core.len();
    let m = half_window as i64;
    let steps: Vec<Letter> = (-m..m)
        .map(|i| core.letters()[(i.rem_euclid(p as i64)) as usize])
        .collect();
    Ok((GeodesicWindow::new(-m, steps, conj), p))
}

/// Whether g translates the window: exists k with 0 < |k| <= |g| and
/// g * gamma(i) = gamma(i + k) for every i where both sides are in the
/// window. Requires the window span to exceed 2 |g|.
pub fn is_axis(gamma: &GeodesicWindow, g: &FreeWord) -> Result<bool, SymdynError> {
    let span = (gamma.hi() - gamma.lo()) as usize;
    if g.is_empty() {
        return Err(SymdynError::TrivialElement);
    }
    if span <= 2 * g.len() {
        return Err(SymdynError::WindowTooShort { span, word_len: g.len() });
    }
    let kmax = g.len() as i64;
    for k in (-kmax..=kmax).filter(|&k| k != 0) {
        let lo = gamma.lo().max(gamma.lo() - k);
        let hi = gamma.hi().min(gamma.hi() - k);
        if lo > hi {
            continue;
        }
        let ok = (lo..=hi).all(|i| {
            let lhs = g.mul(&gamma.at(i).expect("in window"));
            let rhs = gamma.at(i + k).expect("in window");
            lhs == rhs
        });
        if ok {
            return Ok(true);
        }
    }
    Ok(false)
}
