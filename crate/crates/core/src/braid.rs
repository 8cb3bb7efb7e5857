//! Braid words in Artin generators and the operations built on them.
//!
//! Conventions used everywhere in the crate:
//!
//! * letter `+i` is `σ_i` (strand at position `i` passes over position
//!   `i + 1`), letter `-i` is `σ_i^{-1}`;
//! * words are read top to bottom, and `u.compose(v)` places `u` above `v`;
//! * [`Permutation`] maps a start position to the end position of the same
//!   strand, so `perm(uv) = perm(v) ∘ perm(u)`.
//!
//! Triviality is decided by Dehornoy's handle reduction, which is complete.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BraidError {
    #[error("strand count mismatch: {0} vs {1}")]
    Strand(usize, usize),
    #[error("out of range: {0}")]
    Range(String),
    #[error("strand block does not form a cable: {0}")]
    NotACable(String),
}

/// A word in the Artin generators of `B_l`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

/// Permutation of strand positions, 1-based, stored as an image table.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(l: usize) -> Self {
        Permutation((1..=l).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Option<Self> {
        let l = images.len();
        let mut seen = vec![false; l + 1];
        for &i in &images {
            if i == 0 || i > l || seen[i] {
                return None;
            }
            seen[i] = true;
        }
        Some(Permutation(images))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Image of 1-based position `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.0[i - 1]
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j - 1] = i + 1;
        }
        Permutation(inv)
    }

    /// `self` followed by `then`.
    pub fn then(&self, then: &Permutation) -> Permutation {
        Permutation(self.0.iter().map(|&i| then.apply(i)).collect())
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i + 1 == j)
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }
}

impl BraidWord {
    pub fn identity(strands: usize) -> Self {
        BraidWord { strands, letters: Vec::new() }
    }

    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self, BraidError> {
        if strands == 0 {
            return Err(BraidError::Range("a braid needs at least one strand".into()));
        }
        if let Some(&bad) = letters.iter().find(|&&x| x == 0 || x.unsigned_abs() as usize >= strands) {
            return Err(BraidError::Range(format!("generator {bad} on {strands} strands")));
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn sigma(strands: usize, i: i32) -> Self {
        Self::new(strands, vec![i]).expect("generator in range")
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn compose(&self, other: &BraidWord) -> Result<BraidWord, BraidError> {
        if self.strands != other.strands {
            return Err(BraidError::Strand(self.strands, other.strands));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord { strands: self.strands, letters })
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord { strands: self.strands, letters: self.letters.iter().rev().map(|x| -x).collect() }
    }

    /// Same letters on more strands.
    pub fn widen(&self, strands: usize) -> BraidWord {
        assert!(strands >= self.strands);
        BraidWord { strands, letters: self.letters.clone() }
    }

    /// Letters shifted by `offset` positions, on `strands` strands.
    pub fn shifted(&self, offset: usize, strands: usize) -> Result<BraidWord, BraidError> {
        let o = offset as i32;
        BraidWord::new(strands, self.letters.iter().map(|&x| x.signum() * (x.abs() + o)).collect())
    }

    pub fn permutation(&self) -> Permutation {
        // pos[s] = current position of the strand that started at s
        let mut at: Vec<usize> = (0..=self.strands).collect(); // at[position] = strand
        for &x in &self.letters {
            let i = x.unsigned_abs() as usize;
            at.swap(i, i + 1);
        }
        let mut images = vec![0; self.strands];
        for (p, &s) in at.iter().enumerate().skip(1) {
            images[s - 1] = p;
        }
        Permutation(images)
    }

    /// Cancels adjacent inverse pairs.
    pub fn free_reduced(&self) -> BraidWord {
        BraidWord { strands: self.strands, letters: free_reduce(&self.letters) }
    }

    /// True iff the word represents the identity of `B_l`.
    pub fn is_trivial(&self) -> bool {
        if self.letters.is_empty() {
            return true;
        }
        if !self.permutation().is_identity() {
            return false;
        }
        handle_reduce(&self.letters).is_empty()
    }

    pub fn equals(&self, other: &BraidWord) -> bool {
        self.strands == other.strands
            && (self.letters == other.letters
                || self.compose(&other.inverse()).map(|w| w.is_trivial()).unwrap_or(false))
    }

    /// A handle-free word representing the same braid.
    pub fn handle_reduced(&self) -> BraidWord {
        BraidWord { strands: self.strands, letters: handle_reduce(&self.letters) }
    }

    /// Geometric strand deletion: keeps the strands whose start positions are
    /// in `keep` (1-based), drops every crossing involving another strand and
    /// reindexes.
    pub fn delete_strands(&self, keep: &[usize]) -> Result<BraidWord, BraidError> {
        let l = self.strands;
        if keep.is_empty() {
            return Err(BraidError::Range("nothing to keep".into()));
        }
        let mut kept = vec![false; l + 1];
        for &k in keep {
            if k == 0 || k > l {
                return Err(BraidError::Range(format!("strand {k} of {l}")));
            }
            kept[k] = true;
        }
        let new_l = kept.iter().filter(|&&b| b).count();
        let mut at: Vec<usize> = (0..=l).collect();
        let mut out = Vec::new();
        for &x in &self.letters {
            let i = x.unsigned_abs() as usize;
            if kept[at[i]] && kept[at[i + 1]] {
                let below = (1..i).filter(|&p| kept[at[p]]).count();
                out.push(x.signum() * (below as i32 + 1));
            }
            at.swap(i, i + 1);
        }
        Ok(BraidWord { strands: new_l, letters: out })
    }

    /// Replaces the strand starting at position `k` by `width` parallel
    /// strands. Every crossing of that strand becomes a block of `width`
    /// crossings of the same sign, and `inner` is appended at the bottom on
    /// the cable's final positions.
    pub fn cable_strand(&self, k: usize, width: usize, inner: &BraidWord) -> Result<BraidWord, BraidError> {
        let l = self.strands;
        if k == 0 || k > l {
            return Err(BraidError::Range(format!("strand {k} of {l}")));
        }
        if width == 0 {
            return Err(BraidError::Range("cable width must be positive".into()));
        }
        if inner.strands != width {
            return Err(BraidError::Strand(inner.strands, width));
        }
        let extra = (width - 1) as i32;
        let w = width as i32;
        let mut cable_pos = k; // position of the cable in the old indexing
        let mut out = Vec::with_capacity(self.letters.len() * 2);
        for &x in &self.letters {
            let i = x.unsigned_abs() as usize;
            let s = x.signum();
            let new_i = |p: usize| -> i32 {
                if p > cable_pos {
                    p as i32 + extra
                } else {
                    p as i32
                }
            };
            if i == cable_pos {
                // cable on the left crosses the strand to its right
                let p = i as i32;
                for j in (0..w).rev() {
                    out.push(s * (p + j));
                }
                cable_pos = i + 1;
            } else if i + 1 == cable_pos {
                let p = i as i32;
                for j in 0..w {
                    out.push(s * (p + j));
                }
                cable_pos = i;
            } else {
                out.push(s * new_i(i));
            }
        }
        let base = cable_pos as i32 - 1;
        out.extend(inner.letters.iter().map(|&x| x.signum() * (x.abs() + base)));
        Ok(BraidWord { strands: l + width - 1, letters: out })
    }

    /// Splits off a cable whose strands start at `start..start + width`.
    /// Returns `(inner, outer)` where `outer` has the block fused to one
    /// strand at position `start`, provided the block genuinely forms a tube,
    /// i.e. the word equals `outer.cable_strand(start, width, inner)`.
    pub fn extract_cable(&self, start: usize, width: usize) -> Result<(BraidWord, BraidWord), BraidError> {
        let l = self.strands;
        if start == 0 || width == 0 || start + width - 1 > l {
            return Err(BraidError::Range(format!("block {start}+{width} of {l}")));
        }
        let perm = self.permutation();
        let images: Vec<usize> = (start..start + width).map(|p| perm.apply(p)).collect();
        let lo = *images.iter().min().expect("nonempty");
        let hi = *images.iter().max().expect("nonempty");
        if hi - lo + 1 != width {
            return Err(BraidError::NotACable(format!("block {start}..{} ends at {images:?}", start + width - 1)));
        }
        let block: Vec<usize> = (start..start + width).collect();
        let inner = self.delete_strands(&block)?;
        let rest: Vec<usize> = (1..=l).filter(|&p| p <= start || p >= start + width).collect();
        let outer = self.delete_strands(&rest)?;
        let rebuilt = outer.cable_strand(start, width, &inner)?;
        if self.equals(&rebuilt) {
            Ok((inner.free_reduced(), outer.free_reduced()))
        } else {
            Err(BraidError::NotACable("strands of the block are linked with other strands".into()))
        }
    }

    /// Positive and every pair of strands crosses at most once.
    pub fn is_simple(&self) -> bool {
        if self.letters.iter().any(|&x| x < 0) {
            return false;
        }
        let l = self.strands;
        let mut at: Vec<usize> = (0..=l).collect();
        let mut crossed = vec![false; (l + 1) * (l + 1)];
        for &x in &self.letters {
            let i = x as usize;
            let (a, b) = (at[i].min(at[i + 1]), at[i].max(at[i + 1]));
            if std::mem::replace(&mut crossed[a * (l + 1) + b], true) {
                return false;
            }
            at.swap(i, i + 1);
        }
        true
    }

    /// The ribbon carrying the block of `width` consecutive strands starting
    /// at `from` rigidly to the block starting at `to`: every intervening
    /// strand crosses the whole block once, positively.
    pub fn ribbon(strands: usize, width: usize, from: usize, to: usize) -> Result<BraidWord, BraidError> {
        if from == 0 || to == 0 || from + width - 1 > strands || to + width - 1 > strands {
            return Err(BraidError::Range(format!("blocks {from}, {to} of width {width} on {strands}")));
        }
        let w = width as i32;
        let mut letters = Vec::new();
        let mut p = from as i32;
        while p > to as i32 {
            // strand at p - 1 moves right across the block
            for j in 0..w {
                letters.push(p - 1 + j);
            }
            p -= 1;
        }
        while p < to as i32 {
            // strand at p + width moves left across the block
            for j in (0..w).rev() {
                letters.push(p + j);
            }
            p += 1;
        }
        BraidWord::new(strands, letters)
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, &x) in self.letters.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            if x > 0 {
                write!(f, "s{x}")?;
            } else {
                write!(f, "S{}", -x)?;
            }
        }
        Ok(())
    }
}

pub(crate) fn free_reduce(letters: &[i32]) -> Vec<i32> {
    let mut out: Vec<i32> = Vec::with_capacity(letters.len());
    for &x in letters {
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

/// Finds the handle whose right end is leftmost. Such a handle never
/// contains a nested handle, so it is permitted.
fn leftmost_handle(w: &[i32]) -> Option<(usize, usize)> {
    for j in 1..w.len() {
        let i = w[j].abs();
        for k in (0..j).rev() {
            let a = w[k].abs();
            if a > i {
                continue;
            }
            if a == i && w[k] == -w[j] {
                return Some((k, j));
            }
            break;
        }
    }
    None
}

/// Dehornoy handle reduction to a handle-free word. The result is empty iff
/// the input is the trivial braid.
pub(crate) fn handle_reduce(letters: &[i32]) -> Vec<i32> {
    let mut w = free_reduce(letters);
    while let Some((k, j)) = leftmost_handle(&w) {
        let e = w[k].signum();
        let i = w[k].abs();
        let mut mid = Vec::with_capacity(j - k);
        for &x in &w[k + 1..j] {
            if x.abs() == i + 1 {
                let d = x.signum();
                mid.push(-e * (i + 1));
                mid.push(d * i);
                mid.push(e * (i + 1));
            } else {
                mid.push(x);
            }
        }
        let mut next = Vec::with_capacity(w.len() + mid.len());
        next.extend_from_slice(&w[..k]);
        next.extend(mid);
        next.extend_from_slice(&w[j + 1..]);
        w = free_reduce(&next);
    }
    w
}
