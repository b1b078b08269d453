//! Splittable sets and the structural checks behind the crown lower bound.
//!
//! Let `w` be `k`-uniform. A set `A` of letters is *splittable* in `w` when
//! some rotation of `w` induces on `A` a concatenation `P'_1 … P'_k` of
//! permutations of `A`. The rotation that starts at the first letter of
//! `P'_1` is the canonical shift; in it the word factors as
//! `P_1 I_1 … P_k I_k` where `P_i` runs from the first to the last letter of
//! `P'_i` and `I_i` is the (possibly empty) gap before `P_{i+1}`.
//!
//! Everything here inspects a concrete word. On a word that genuinely
//! represents its graph the violation lists are empty; a nonempty list
//! certifies inconsistent inputs.

use std::collections::{BTreeMap, BTreeSet};
use std::ops::Range;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::word::{Letter, Word};

/// One permutation block `P'_i` and its enclosing factors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Block {
    /// Positions (in the shifted word) of the letters of `P'_i`.
    pub positions: Vec<usize>,
    /// The permutation `P'_i` itself.
    pub letters: Vec<Letter>,
    /// `P_i`: from the first to the last position of the block, inclusive
    /// start, exclusive end.
    pub factor: Range<usize>,
    /// `I_i`: the gap up to the next block (or the end of the word).
    pub gap: Range<usize>,
}

/// A canonical split of a splittable set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitDecomposition {
    /// Rotation applied to the original word (position `shift` moves to 0).
    pub shift: usize,
    /// The split set `A`, ascending.
    pub set: Vec<Letter>,
    pub blocks: Vec<Block>,
}

impl SplitDecomposition {
    pub fn k(&self) -> usize {
        self.blocks.len()
    }

    /// Re-derives the decomposition from `w` and checks it field by field,
    /// including the ordering fact `a_i < b_j` for all `a, b` in `A`, `i < j`.
    pub fn validate(&self, w: &Word) -> Result<()> {
        let set: BTreeSet<Letter> = self.set.iter().copied().collect();
        let fresh = split_at(w, &set, self.shift)?
            .ok_or_else(|| Error::BadSplit(format!("shift {} does not split the set", self.shift)))?;
        if &fresh != self {
            return Err(Error::BadSplit("decomposition does not match the word".into()));
        }
        let shifted = w.cyclic_shift(self.shift)?;
        let k = self.k();
        for &a in &self.set {
            for &b in &self.set {
                for i in 1..=k {
                    for j in i + 1..=k {
                        if shifted.nth_occurrence(a, i)? >= shifted.nth_occurrence(b, j)? {
                            return Err(Error::BadSplit(format!(
                                "occurrence {i} of {a} is not before occurrence {j} of {b}"
                            )));
                        }
                    }
                }
            }
        }
        let mut cursor = 0;
        for block in &self.blocks {
            if block.factor.start != cursor || block.factor.end != block.gap.start {
                return Err(Error::BadSplit("factors do not tile the word".into()));
            }
            cursor = block.gap.end;
        }
        if cursor != w.len() {
            return Err(Error::BadSplit("factors do not cover the word".into()));
        }
        Ok(())
    }
}

fn check_inputs(w: &Word, set: &BTreeSet<Letter>) -> Result<usize> {
    let k = w.uniformity()?.ok_or(Error::NotUniform)?;
    if set.is_empty() {
        return Err(Error::BadSplit("the set to split is empty".into()));
    }
    if let Some(&x) = set.iter().find(|&&x| !w.contains(x)) {
        return Err(Error::AbsentLetter(x));
    }
    Ok(k)
}

/// Attempts the split with the rotation starting at `shift`.
fn split_at(w: &Word, set: &BTreeSet<Letter>, shift: usize) -> Result<Option<SplitDecomposition>> {
    let k = check_inputs(w, set)?;
    let len = w.len();
    let letters = w.letters();
    let m = set.len();
    let induced: Vec<(usize, Letter)> = (0..len)
        .map(|j| (j, letters[(shift + j) % len]))
        .filter(|(_, x)| set.contains(x))
        .collect();
    let mut blocks = Vec::with_capacity(k);
    for chunk in induced.chunks(m) {
        let distinct: BTreeSet<Letter> = chunk.iter().map(|&(_, x)| x).collect();
        if distinct.len() != m {
            return Ok(None);
        }
        let positions: Vec<usize> = chunk.iter().map(|&(p, _)| p).collect();
        let first = positions[0];
        let last = positions[m - 1];
        blocks.push(Block {
            letters: chunk.iter().map(|&(_, x)| x).collect(),
            factor: first..last + 1,
            gap: last + 1..last + 1,
            positions,
        });
    }
    for i in 0..blocks.len() {
        let end = blocks.get(i + 1).map_or(len, |b| b.factor.start);
        blocks[i].gap.end = end;
    }
    // the canonical shift puts l(P_1) at position 0
    if blocks.first().map(|b| b.factor.start) != Some(0) {
        return Ok(None);
    }
    Ok(Some(SplitDecomposition {
        shift,
        set: set.iter().copied().collect(),
        blocks,
    }))
}

/// Finds the smallest canonical shift splitting `set`, or `None` when no
/// rotation of `w` induces a concatenation of permutations on it.
///
/// Only rotations starting at a letter of `set` can be canonical, and all of
/// them are tried.
pub fn find_split(w: &Word, set: &BTreeSet<Letter>) -> Result<Option<SplitDecomposition>> {
    check_inputs(w, set)?;
    let letters = w.letters();
    (0..w.len())
        .into_par_iter()
        .filter(|&s| set.contains(&letters[s]))
        .map(|s| split_at(w, set, s))
        .find_map_first(|r| match r {
            Ok(None) => None,
            other => Some(other),
        })
        .transpose()
        .map(Option::flatten)
}

/// Splits `N(v)`; every word representing `g` admits this split, so a
/// failure means `w` does not represent `g`.
pub fn neighborhood_split(w: &Word, g: &Graph, v: Letter) -> Result<SplitDecomposition> {
    let nb = g.neighborhood(v)?;
    if nb.is_empty() {
        return Err(Error::BadSplit(format!("vertex {v} has no neighbours")));
    }
    find_split(w, &nb)?.ok_or_else(|| Error::NotSplittable(nb.into_iter().collect()))
}

/// A triple with `a, b` in `A`, `x` outside, `ax, bx` edges and
/// `a_1 < x_1 < b_1` in the canonical shift, but `ab` not an edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Lemma1Violation {
    pub a: Letter,
    pub b: Letter,
    pub x: Letter,
}

/// Scans every triple `(a, b, x)` with `a, b` in the split set, `x` a common
/// neighbour outside it and `a_1 < x_1 < b_1` in the canonical shift, and
/// reports those where `a` and `b` are not adjacent.
pub fn check_lemma1(
    w: &Word,
    g: &Graph,
    set: &BTreeSet<Letter>,
    sd: &SplitDecomposition,
) -> Result<Vec<Lemma1Violation>> {
    if sd.set.iter().copied().collect::<BTreeSet<_>>() != *set {
        return Err(Error::BadSplit("decomposition was made for a different set".into()));
    }
    sd.validate(w)?;
    let shifted = w.cyclic_shift(sd.shift)?;
    let first: BTreeMap<Letter, usize> = shifted
        .alphabet()
        .map(|x| (x, shifted.occurrences(x)[0]))
        .collect();
    let outside: Vec<Letter> = shifted.alphabet().filter(|x| !set.contains(x)).collect();
    let mut violations = Vec::new();
    for &a in set {
        for &b in set {
            if first[&a] >= first[&b] {
                continue;
            }
            for &x in &outside {
                if g.has_edge(a, x)
                    && g.has_edge(b, x)
                    && first[&a] < first[&x]
                    && first[&x] < first[&b]
                    && !g.has_edge(a, b)
                {
                    violations.push(Lemma1Violation { a, b, x });
                }
            }
        }
    }
    Ok(violations)
}

/// Occurrences of `x` in the factor `P_i I_i … I_{i+t-2} P_{i+t-1}` of the
/// canonical shift (`i` is 1-based).
pub fn claim1_count(w: &Word, sd: &SplitDecomposition, x: Letter, i: usize, t: usize) -> Result<usize> {
    let k = sd.k();
    if i < 1 || t < 1 || i + t - 1 > k {
        return Err(Error::OutOfRange(format!(
            "factor P_{i}..P_{} does not exist for k = {k}",
            i + t.max(1) - 1
        )));
    }
    sd.validate(w)?;
    let start = sd.blocks[i - 1].factor.start;
    let end = sd.blocks[i + t - 2].factor.end;
    let shifted = w.cyclic_shift(sd.shift)?;
    Ok(shifted
        .occurrences(x)
        .iter()
        .filter(|&&p| start <= p && p < end)
        .count())
}

/// Letters of `A` that are (or are not) the first or last letter of some
/// block `P'_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Coverage {
    pub covered: BTreeSet<Letter>,
    pub uncovered: BTreeSet<Letter>,
}

pub fn endpoint_coverage(sd: &SplitDecomposition, set: &BTreeSet<Letter>) -> Coverage {
    let ends: BTreeSet<Letter> = sd
        .blocks
        .iter()
        .flat_map(|b| b.letters.first().into_iter().chain(b.letters.last()))
        .copied()
        .collect();
    let (covered, uncovered) = set.iter().partition(|x| ends.contains(x));
    Coverage { covered, uncovered }
}
