//! Letters, words and the alternation relation.
//!
//! A [`Word`] is an immutable sequence of [`Letter`]s together with the
//! ordered occurrence positions of every letter. Two distinct letters `x`
//! and `y` *alternate* in a word when deleting every other letter leaves
//! `xyxy…` or `yxyx…`; the graph whose edges are exactly the alternating
//! pairs is the graph the word represents.
//!
//! Positions are 0-based. Occurrence counters (`x_1`, `x_2`, …) are 1-based.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::num::NonZeroU32;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// A vertex name: a positive index, optionally primed (`i` vs `i'`).
///
/// Letters order by index first and then unprimed before primed, so
/// `1 < 1' < 2 < 2'`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    index: NonZeroU32,
    primed: bool,
}

impl Letter {
    pub fn new(index: u32, primed: bool) -> Result<Self> {
        let index = NonZeroU32::new(index).ok_or(Error::ZeroIndex)?;
        Ok(Letter { index, primed })
    }

    /// Unprimed letter `i`. Panics if `i == 0`.
    pub fn plain(index: u32) -> Self {
        Letter::new(index, false).expect("letter index must be positive")
    }

    /// Primed letter `i'`. Panics if `i == 0`.
    pub fn primed(index: u32) -> Self {
        Letter::new(index, true).expect("letter index must be positive")
    }

    pub fn index(self) -> u32 {
        self.index.get()
    }

    pub fn is_primed(self) -> bool {
        self.primed
    }

    /// The same index with the prime flag flipped.
    pub fn toggle_prime(self) -> Self {
        Letter {
            index: self.index,
            primed: !self.primed,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.primed {
            write!(f, "{}'", self.index)
        } else {
            write!(f, "{}", self.index)
        }
    }
}

impl FromStr for Letter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (digits, primed) = match s.strip_suffix('\'') {
            Some(rest) => (rest, true),
            None => (s, false),
        };
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::BadToken(s.to_string()));
        }
        let index: u32 = digits.parse().map_err(|_| Error::BadToken(s.to_string()))?;
        Letter::new(index, primed)
    }
}

impl Serialize for Letter {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Letter {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A finite word over [`Letter`]s with occurrence bookkeeping.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word {
    letters: Vec<Letter>,
    occ: BTreeMap<Letter, Vec<usize>>,
}

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        let mut occ: BTreeMap<Letter, Vec<usize>> = BTreeMap::new();
        for (pos, &x) in letters.iter().enumerate() {
            occ.entry(x).or_default().push(pos);
        }
        Word { letters, occ }
    }

    /// Parses whitespace-separated tokens such as `1 4 2' 12`.
    pub fn parse_tokens(text: &str) -> Result<Self> {
        let letters = text
            .split_whitespace()
            .map(str::parse)
            .collect::<Result<Vec<Letter>>>()?;
        Ok(Word::new(letters))
    }

    /// Parses the separator-free form used for words with single-digit
    /// indices, e.g. `3'32'1'132'23'1'231'1`.
    pub fn parse_compact(text: &str) -> Result<Self> {
        let mut letters = Vec::new();
        let mut chars = text.trim().chars().peekable();
        while let Some(c) = chars.next() {
            let digit = c
                .to_digit(10)
                .ok_or_else(|| Error::NotCompact(format!("unexpected character `{c}`")))?;
            let primed = chars.next_if_eq(&'\'').is_some();
            letters.push(Letter::new(digit, primed)?);
        }
        Ok(Word::new(letters))
    }

    /// Token form when the text contains whitespace, compact form otherwise.
    pub fn parse(text: &str) -> Result<Self> {
        let trimmed = text.trim();
        if trimmed.contains(char::is_whitespace) {
            Word::parse_tokens(trimmed)
        } else {
            Word::parse_compact(trimmed)
        }
    }

    /// Canonical token form: one token per letter separated by single spaces.
    pub fn to_token_string(&self) -> String {
        let tokens: Vec<String> = self.letters.iter().map(Letter::to_string).collect();
        tokens.join(" ")
    }

    /// Compact form, available only when every index is a single digit.
    pub fn to_compact_string(&self) -> Result<String> {
        if let Some(x) = self.letters.iter().find(|x| x.index() > 9) {
            return Err(Error::NotCompact(format!("letter {x} has a multi-digit index")));
        }
        Ok(self.letters.iter().map(Letter::to_string).collect())
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

    /// Distinct letters in ascending order.
    pub fn alphabet(&self) -> impl Iterator<Item = Letter> + '_ {
        self.occ.keys().copied()
    }

    pub fn alphabet_set(&self) -> BTreeSet<Letter> {
        self.occ.keys().copied().collect()
    }

    pub fn contains(&self, x: Letter) -> bool {
        self.occ.contains_key(&x)
    }

    /// Ordered positions of `x` (empty if `x` does not occur).
    pub fn occurrences(&self, x: Letter) -> &[usize] {
        self.occ.get(&x).map_or(&[], Vec::as_slice)
    }

    pub fn count(&self, x: Letter) -> usize {
        self.occurrences(x).len()
    }

    /// Keeps only the letters in `set`, preserving order.
    pub fn subword_induced(&self, set: &BTreeSet<Letter>) -> Word {
        Word::new(
            self.letters
                .iter()
                .copied()
                .filter(|x| set.contains(x))
                .collect(),
        )
    }

    /// Removes every occurrence of the given letters.
    pub fn without(&self, remove: &BTreeSet<Letter>) -> Word {
        Word::new(
            self.letters
                .iter()
                .copied()
                .filter(|x| !remove.contains(x))
                .collect(),
        )
    }

    /// Whether `x` and `y` alternate.
    ///
    /// Two letters occurring once each always alternate. Asking about a
    /// letter that does not occur is an error, not `false`.
    pub fn alternates(&self, x: Letter, y: Letter) -> Result<bool> {
        if x == y {
            return Err(Error::SameLetter(x));
        }
        let ox = self.occ.get(&x).ok_or(Error::AbsentLetter(x))?;
        let oy = self.occ.get(&y).ok_or(Error::AbsentLetter(y))?;
        Ok(interleaved(ox, oy))
    }

    /// The graph on the alphabet whose edges are the alternating pairs.
    pub fn induced_graph(&self) -> Result<Graph> {
        if self.is_empty() {
            return Err(Error::EmptyWord);
        }
        let entries: Vec<(Letter, &Vec<usize>)> = self.occ.iter().map(|(&x, o)| (x, o)).collect();
        let mut edges = Vec::new();
        for (i, (x, ox)) in entries.iter().enumerate() {
            for (y, oy) in &entries[i + 1..] {
                if interleaved(ox, oy) {
                    edges.push((*x, *y));
                }
            }
        }
        Graph::from_parts(entries.iter().map(|e| e.0), edges)
    }

    /// Checks that the word represents `g` as a labeled graph, reporting
    /// what differs when it does not.
    pub fn check_represents(&self, g: &Graph) -> std::result::Result<(), Mismatch> {
        if self.is_empty() {
            return if g.vertex_count() == 0 {
                Ok(())
            } else {
                Err(Mismatch::EmptyWord)
            };
        }
        let alphabet = self.alphabet_set();
        let vertices: BTreeSet<Letter> = g.vertices().iter().copied().collect();
        if alphabet != vertices {
            return Err(Mismatch::Alphabet {
                missing_from_word: vertices.difference(&alphabet).copied().collect(),
                not_in_graph: alphabet.difference(&vertices).copied().collect(),
            });
        }
        let induced = self.induced_graph().map_err(|_| Mismatch::EmptyWord)?;
        let want: BTreeSet<(Letter, Letter)> = g.edges().collect();
        let have: BTreeSet<(Letter, Letter)> = induced.edges().collect();
        if want == have {
            Ok(())
        } else {
            Err(Mismatch::Edges {
                missing: want.difference(&have).copied().collect(),
                extra: have.difference(&want).copied().collect(),
            })
        }
    }

    pub fn represents(&self, g: &Graph) -> bool {
        self.check_represents(g).is_ok()
    }

    /// `Some(k)` when every letter occurs exactly `k` times.
    pub fn uniformity(&self) -> Result<Option<usize>> {
        let mut counts = self.occ.values().map(Vec::len);
        let k = counts.next().ok_or(Error::EmptyWord)?;
        Ok(counts.all(|c| c == k).then_some(k))
    }

    /// Rotation moving position `s mod |w|` to the front.
    pub fn cyclic_shift(&self, s: usize) -> Result<Word> {
        if self.is_empty() {
            return Err(Error::EmptyWord);
        }
        let mut letters = self.letters.clone();
        letters.rotate_left(s % self.len());
        Ok(Word::new(letters))
    }

    /// 0-based position of the `i`-th (1-based) occurrence of `x`.
    pub fn nth_occurrence(&self, x: Letter, i: usize) -> Result<usize> {
        let occ = self.occurrences(x);
        match i.checked_sub(1).and_then(|j| occ.get(j)) {
            Some(&pos) => Ok(pos),
            None => Err(Error::MissingOccurrence {
                letter: x,
                wanted: i,
                found: occ.len(),
            }),
        }
    }

    pub fn first_letter(&self) -> Result<Letter> {
        self.letters.first().copied().ok_or(Error::EmptyWord)
    }

    pub fn last_letter(&self) -> Result<Letter> {
        self.letters.last().copied().ok_or(Error::EmptyWord)
    }

    /// Concatenation of `self` and `other`.
    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word::new(letters)
    }

    /// Applies a renaming to every letter.
    pub fn relabel(&self, f: impl Fn(Letter) -> Letter) -> Word {
        self.letters.iter().map(|&x| f(x)).collect()
    }

    /// The word with positions `i` and `i + 1` exchanged.
    pub fn swap_adjacent(&self, i: usize) -> Result<Word> {
        if i + 1 >= self.len() {
            return Err(Error::OutOfRange(format!(
                "cannot swap positions {i} and {} in a word of length {}",
                i + 1,
                self.len()
            )));
        }
        let mut letters = self.letters.clone();
        letters.swap(i, i + 1);
        Ok(Word::new(letters))
    }
}

/// Whether two sorted position lists strictly interleave.
fn interleaved(a: &[usize], b: &[usize]) -> bool {
    let (first, second) = match (a.first(), b.first()) {
        (Some(x), Some(y)) if x < y => (a, b),
        (Some(_), Some(_)) => (b, a),
        _ => return false,
    };
    // first must lead: f0 < s0 < f1 < s1 < ...
    if first.len() != second.len() && first.len() != second.len() + 1 {
        return false;
    }
    for (j, &s) in second.iter().enumerate() {
        if s < first[j] {
            return false;
        }
        if let Some(&next) = first.get(j + 1) {
            if next < s {
                return false;
            }
        }
    }
    true
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({})", self.to_token_string())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_token_string())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Word::parse(s)
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word::new(iter.into_iter().collect())
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_token_string())
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        Word::parse_tokens(&s).map_err(serde::de::Error::custom)
    }
}

/// Why a word fails to represent a graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Mismatch {
    EmptyWord,
    Alphabet {
        missing_from_word: Vec<Letter>,
        not_in_graph: Vec<Letter>,
    },
    /// `missing`: graph edges that do not alternate. `extra`: alternating
    /// non-edges.
    Edges {
        missing: Vec<(Letter, Letter)>,
        extra: Vec<(Letter, Letter)>,
    },
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn list<T: fmt::Display>(items: &[T]) -> String {
            items.iter().map(T::to_string).collect::<Vec<_>>().join(", ")
        }
        fn pairs(items: &[(Letter, Letter)]) -> String {
            items
                .iter()
                .map(|(x, y)| format!("{x}-{y}"))
                .collect::<Vec<_>>()
                .join(", ")
        }
        match self {
            Mismatch::EmptyWord => write!(f, "empty word cannot represent a nonempty graph"),
            Mismatch::Alphabet {
                missing_from_word,
                not_in_graph,
            } => write!(
                f,
                "alphabet mismatch: vertices missing from word [{}], letters not in graph [{}]",
                list(missing_from_word),
                list(not_in_graph)
            ),
            Mismatch::Edges { missing, extra } => write!(
                f,
                "edge mismatch: non-alternating edges [{}], alternating non-edges [{}]",
                pairs(missing),
                pairs(extra)
            ),
        }
    }
}
