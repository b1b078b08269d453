//! Explicit representations of crown graphs.
//!
//! For `n >= 5` the crown graph `H_{n,n}` is `⌈n/2⌉`-representable. The word
//! is built from two families of permutations (one over `{1..n}`, one over
//! `{1'..n'}`), each family containing every pair of letters in both orders
//! and with prescribed first and last letters. Concatenating the blocks
//! alternately gives a word for `K_{n,n}`; rotating it one step to the left
//! brings every block junction `i i'` / `i' i` into a contiguous factor, and
//! swapping each of those factors breaks exactly the matching edges `i i'`.
//!
//! Small cases (`n <= 4`) use fixed words.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::word::{Letter, Word};

/// An ordered list of disjoint ordered pairs `(a_i, b_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairPartition {
    pairs: Vec<(Letter, Letter)>,
}

impl PairPartition {
    pub fn new(pairs: Vec<(Letter, Letter)>) -> Result<Self> {
        if pairs.is_empty() {
            return Err(Error::BadPartition("no pairs".into()));
        }
        let mut seen = BTreeSet::new();
        for &(a, b) in &pairs {
            for x in [a, b] {
                if !seen.insert(x) {
                    return Err(Error::BadPartition(format!("letter {x} used twice")));
                }
            }
        }
        Ok(PairPartition { pairs })
    }

    pub fn pairs(&self) -> &[(Letter, Letter)] {
        &self.pairs
    }

    pub fn k(&self) -> usize {
        self.pairs.len()
    }

    /// The ground set covered by the pairs.
    pub fn ground_set(&self) -> BTreeSet<Letter> {
        self.pairs.iter().flat_map(|&(a, b)| [a, b]).collect()
    }
}

/// `k` permutations of a `2k`-set; `perms[i]` belongs to pair `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermutationFamily {
    perms: Vec<Vec<Letter>>,
}

impl PermutationFamily {
    pub fn perms(&self) -> &[Vec<Letter>] {
        &self.perms
    }

    /// First pair index whose permutation does not start with `a_i` and end
    /// with `b_i`.
    pub fn endpoint_violation(&self, pp: &PairPartition) -> Option<usize> {
        (0..pp.k()).find(|&i| {
            let (a, b) = pp.pairs[i];
            self.perms.get(i).map(|p| (p.first(), p.last())) != Some((Some(&a), Some(&b)))
        })
    }

    /// A pair `{x, y}` that appears in only one relative order across the
    /// family, if any.
    pub fn one_sided_pair(&self) -> Option<(Letter, Letter)> {
        let first = self.perms.first()?;
        let positions: Vec<Vec<(Letter, usize)>> = self
            .perms
            .iter()
            .map(|p| {
                let mut v: Vec<(Letter, usize)> =
                    p.iter().enumerate().map(|(i, &x)| (x, i)).collect();
                v.sort();
                v
            })
            .collect();
        let mut letters = first.clone();
        letters.sort();
        for (xi, &x) in letters.iter().enumerate() {
            for (yi, &y) in letters.iter().enumerate().skip(xi + 1) {
                let mut before = false;
                let mut after = false;
                for pos in &positions {
                    if pos[xi].1 < pos[yi].1 {
                        before = true;
                    } else {
                        after = true;
                    }
                }
                if !(before && after) {
                    return Some((x, y));
                }
            }
        }
        None
    }
}

/// Builds permutations `P(a_i, b_i)` of the ground set with
/// `P(a_i, b_i)` starting at `a_i`, ending at `b_i`, and every pair of
/// letters appearing in both orders somewhere in the family. Needs `k >= 3`.
///
/// With `S` the ground set in ascending order:
///
/// ```text
/// P(a1,b1) = a1 b2  P        a2 b1      P  = S \ {a1,a2,b1,b2}
/// P(a2,b2) = a2 b1  rev(P)   a1 b2
/// P(a3,b3) = a3 b2 a1  P'  b1 a2 b3     P' = S \ {a1,a2,a3,b1,b2,b3}
/// P(ai,bi) = ai  S \ {ai,bi}  bi        i >= 4
/// ```
pub fn lemma4_permutations(pp: &PairPartition) -> Result<PermutationFamily> {
    let k = pp.k();
    if k < 3 {
        return Err(Error::BadPartition(format!(
            "need at least 3 pairs (ground set of 6 or more letters), got {k}"
        )));
    }
    let ground = pp.ground_set();
    let rest = |skip: &[Letter]| -> Vec<Letter> {
        ground.iter().copied().filter(|x| !skip.contains(x)).collect()
    };
    let [(a1, b1), (a2, b2), (a3, b3)] = [pp.pairs[0], pp.pairs[1], pp.pairs[2]];

    let middle = rest(&[a1, a2, b1, b2]);
    let mut perms = Vec::with_capacity(k);

    let mut p1 = vec![a1, b2];
    p1.extend(&middle);
    p1.extend([a2, b1]);
    perms.push(p1);

    let mut p2 = vec![a2, b1];
    p2.extend(middle.iter().rev());
    p2.extend([a1, b2]);
    perms.push(p2);

    let mut p3 = vec![a3, b2, a1];
    p3.extend(rest(&[a1, a2, a3, b1, b2, b3]));
    p3.extend([b1, a2, b3]);
    perms.push(p3);

    for &(a, b) in &pp.pairs[3..] {
        let mut p = vec![a];
        p.extend(rest(&[a, b]));
        p.push(b);
        perms.push(p);
    }

    let family = PermutationFamily { perms };
    if let Some(i) = family.endpoint_violation(pp) {
        return Err(Error::Construction(format!("permutation {i} has wrong endpoints")));
    }
    if let Some((x, y)) = family.one_sided_pair() {
        return Err(Error::Construction(format!("pair {x},{y} appears in one order only")));
    }
    Ok(family)
}

/// Intermediate words of the even-`n` crown construction.
#[derive(Clone, Debug)]
pub struct CrownConstruction {
    pub n: usize,
    /// `P(1,2) P(2',3') P(3,4) … P(n-1,n) P(n',1')`; represents `K_{n,n}`.
    pub blocks_word: Word,
    /// `blocks_word` rotated one position to the left.
    pub rotated: Word,
    /// Left positions `p` of the swapped factors `(p, p+1)` in `rotated`.
    pub swap_positions: Vec<usize>,
    /// The final `n/2`-uniform word for `H_{n,n}`.
    pub word: Word,
}

/// Runs the even-`n` construction (`n >= 6`) and keeps every stage.
pub fn crown_construction(n: usize) -> Result<CrownConstruction> {
    if n < 6 || !n.is_multiple_of(2) {
        return Err(Error::InvalidSize(format!(
            "the block construction needs an even n >= 6, got {n}"
        )));
    }
    let n32 = n as u32;
    let unprimed = PairPartition::new(
        (1..=n32)
            .step_by(2)
            .map(|i| (Letter::plain(i), Letter::plain(i + 1)))
            .collect(),
    )?;
    let primed = PairPartition::new(
        (2..=n32)
            .step_by(2)
            .map(|i| (Letter::primed(i), Letter::primed(i % n32 + 1)))
            .collect(),
    )?;
    let u = lemma4_permutations(&unprimed)?;
    let v = lemma4_permutations(&primed)?;

    let mut letters = Vec::with_capacity(n * n);
    for (pu, pv) in u.perms().iter().zip(v.perms()) {
        letters.extend(pu);
        letters.extend(pv);
    }
    let blocks_word = Word::new(letters.clone());

    letters.rotate_left(1);
    let rotated = Word::new(letters.clone());

    // block m ends at m*n - 1 before rotation, so every junction (including
    // the wrap-around one) sits at (m*n - 2, m*n - 1) afterwards
    let swap_positions: Vec<usize> = (1..=n).map(|m| m * n - 2).collect();
    for &p in &swap_positions {
        let (x, y) = (letters[p], letters[p + 1]);
        if x.index() != y.index() || x.is_primed() == y.is_primed() {
            return Err(Error::Construction(format!(
                "junction at {p} holds {x}{y}, expected a factor i i'"
            )));
        }
        letters.swap(p, p + 1);
    }
    let word = Word::new(letters);

    let crown = Graph::crown(n)?;
    if let Err(m) = word.check_represents(&crown) {
        return Err(Error::Construction(format!("H_{{{n},{n}}} word: {m}")));
    }
    Ok(CrownConstruction {
        n,
        blocks_word,
        rotated,
        swap_positions,
        word,
    })
}

/// The `⌈n/2⌉`-uniform word representing `H_{n,n}` for `n >= 5`.
///
/// Odd `n` deletes `n+1` and `(n+1)'` from the word for `n+1`.
pub fn theorem2_word(n: usize) -> Result<Word> {
    if n < 5 {
        return Err(Error::InvalidSize(format!(
            "the general construction needs n >= 5, got {n}; use fixed_crown_word"
        )));
    }
    if n.is_multiple_of(2) {
        return Ok(crown_construction(n)?.word);
    }
    let m = n as u32 + 1;
    let remove: BTreeSet<Letter> = [Letter::plain(m), Letter::primed(m)].into();
    let word = crown_construction(n + 1)?.word.without(&remove);
    if let Err(e) = word.check_represents(&Graph::crown(n)?) {
        return Err(Error::Construction(format!("H_{{{n},{n}}} word: {e}")));
    }
    Ok(word)
}

const FIXED_CROWN_WORDS: [&str; 4] = [
    "11'1'1",
    "12'21'21'12'",
    "12'3'123'1'231'2'3",
    "414'343'231'12'24'1'3'44'2'33'11'22'",
];

const TABLE1_WORDS: [&str; 4] = [
    "11'1'1",
    "12'21'21'12'",
    "123'32'1'132'23'1'231'13'2'",
    "1234'43'2'1'1243'34'2'1'1342'24'3'1'2341'14'3'2'",
];

fn small_fixture(table: &[&str; 4], n: usize) -> Result<Word> {
    match n.checked_sub(1).and_then(|i| table.get(i)) {
        Some(s) => Word::parse_compact(s),
        None => Err(Error::InvalidSize(format!("fixture words exist for n in 1..=4, got {n}"))),
    }
}

/// Classic short words for `H_{1,1}` … `H_{4,4}` (2, 2, 2 and 3 copies of
/// each letter), exactly as usually printed.
///
/// The `n = 4` word represents the 3-cube under the prism labeling (edges
/// `i i'`, `1-2-3-4-1`, `1'-2'-3'-4'-1'`), not the crown labeling; see
/// [`CROWN4_FROM_PRISM`] and [`represent_crown`].
pub fn fixed_crown_word(n: usize) -> Result<Word> {
    small_fixture(&FIXED_CROWN_WORDS, n)
}

/// Isomorphism from the prism-labeled 3-cube onto the crown graph `H_{4,4}`.
///
/// One colour class `{1, 3, 2', 4'}` becomes `{1, 2, 3, 4}`; every vertex's
/// antipode (its unique non-neighbour in the other class) becomes the primed
/// copy of its image.
pub const CROWN4_FROM_PRISM: [((u32, bool), (u32, bool)); 8] = [
    ((1, false), (1, false)),
    ((3, false), (2, false)),
    ((2, true), (3, false)),
    ((4, true), (4, false)),
    ((3, true), (1, true)),
    ((1, true), (2, true)),
    ((4, false), (3, true)),
    ((2, false), (4, true)),
];

/// The prism graph on `{1..4} ∪ {1'..4'}`: two 4-cycles joined by `i i'`.
pub fn prism4() -> Graph {
    let cycle = |primed: bool| {
        (1..=4u32).map(move |i| {
            let l = |j: u32| Letter::new(j, primed).expect("positive index");
            (l(i), l(i % 4 + 1))
        })
    };
    let rungs = (1..=4u32).map(|i| (Letter::plain(i), Letter::primed(i)));
    Graph::from_parts(
        (1..=4u32).flat_map(|i| [Letter::plain(i), Letter::primed(i)]),
        cycle(false).chain(cycle(true)).chain(rungs),
    )
    .expect("prism graph is well formed")
}

/// Applies [`CROWN4_FROM_PRISM`] to a letter.
pub fn crown4_relabel(x: Letter) -> Letter {
    CROWN4_FROM_PRISM
        .iter()
        .find(|((i, p), _)| x.index() == *i && x.is_primed() == *p)
        .map_or(x, |&(_, (j, q))| Letter::new(j, q).expect("positive index"))
}

/// `H_{n,n}` as a concatenation of `n` permutations, `n` in `1..=4`.
pub fn table1_word(n: usize) -> Result<Word> {
    small_fixture(&TABLE1_WORDS, n)
}

/// A minimum-uniformity word for `H_{n,n}`, verified before it is returned.
///
/// `n = 4` returns the cube fixture carried over to the crown labeling.
pub fn represent_crown(n: usize) -> Result<Word> {
    let word = match n {
        0 => return Err(Error::InvalidSize("crown graph needs n >= 1".into())),
        4 => fixed_crown_word(4)?.relabel(crown4_relabel),
        1..=3 => fixed_crown_word(n)?,
        _ => theorem2_word(n)?,
    };
    word.check_represents(&Graph::crown(n)?)
        .map_err(|m| Error::Construction(m.to_string()))?;
    Ok(word)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pp(pairs: &[(u32, u32)]) -> PairPartition {
        PairPartition::new(
            pairs
                .iter()
                .map(|&(a, b)| (Letter::plain(a), Letter::plain(b)))
                .collect(),
        )
        .unwrap()
    }

    fn word_of(p: &[Letter]) -> String {
        p.iter().map(Letter::to_string).collect()
    }

    #[test]
    fn pair_permutations_six_letters() {
        let fam = lemma4_permutations(&pp(&[(1, 2), (3, 4), (5, 6)])).unwrap();
        let got: Vec<String> = fam.perms().iter().map(|p| word_of(p)).collect();
        assert_eq!(got, ["145632", "326514", "541236"]);
    }

    #[test]
    fn pair_permutations_reject_small_and_bad_partitions() {
        assert!(matches!(
            lemma4_permutations(&pp(&[(1, 2), (3, 4)])),
            Err(Error::BadPartition(_))
        ));
        assert!(PairPartition::new(vec![(Letter::plain(1), Letter::plain(1))]).is_err());
        assert!(PairPartition::new(vec![]).is_err());
    }

    #[test]
    fn pair_permutations_eight_letters_shuffled_pairs() {
        let p = pp(&[(7, 2), (1, 8), (4, 3), (6, 5)]);
        let fam = lemma4_permutations(&p).unwrap();
        assert_eq!(fam.endpoint_violation(&p), None);
        assert_eq!(fam.one_sided_pair(), None);
        assert_eq!(word_of(&fam.perms()[3]), "61234785");
    }

    #[test]
    fn fixed_words_are_verified() {
        for n in 1..=4 {
            let w = fixed_crown_word(n).unwrap();
            let target = if n == 4 { prism4() } else { Graph::crown(n).unwrap() };
            assert!(w.represents(&target), "n={n}");
            assert_eq!(w.uniformity().unwrap(), Some(if n == 4 { 3 } else { 2 }));
            let t = table1_word(n).unwrap();
            assert!(t.represents(&Graph::crown(n).unwrap()), "n={n}");
            // the n = 1 row 11'1'1 uses two copies
            assert_eq!(t.uniformity().unwrap(), Some(n.max(2)));
        }
        assert!(fixed_crown_word(0).is_err());
        assert!(fixed_crown_word(5).is_err());
        assert!(table1_word(5).is_err());
    }

    #[test]
    fn cube_relabeling_is_an_isomorphism() {
        let prism = prism4();
        let crown = Graph::crown(4).unwrap();
        let images: BTreeSet<Letter> = prism.vertices().iter().map(|&v| crown4_relabel(v)).collect();
        assert_eq!(images.len(), 8);
        let mapped = Graph::from_parts(
            images,
            prism.edges().map(|(x, y)| (crown4_relabel(x), crown4_relabel(y))),
        )
        .unwrap();
        assert_eq!(mapped, crown);
        let w4 = represent_crown(4).unwrap();
        assert_eq!(w4.uniformity().unwrap(), Some(3));
        assert!(w4.represents(&crown));
        assert!(!fixed_crown_word(4).unwrap().represents(&crown));
    }

    #[test]
    fn construction_stages_for_six() {
        let c = crown_construction(6).unwrap();
        assert_eq!(c.blocks_word.len(), 36);
        assert!(c
            .blocks_word
            .represents(&Graph::complete_bipartite(6, 6).unwrap()));
        assert_eq!(c.swap_positions, [4, 10, 16, 22, 28, 34]);
        assert_eq!(c.word.uniformity().unwrap(), Some(3));
        assert!(c.word.represents(&Graph::crown(6).unwrap()));
        assert!(crown_construction(7).is_err());
        assert!(crown_construction(4).is_err());
    }

    #[test]
    fn crown_words_small() {
        assert_eq!(theorem2_word(5).unwrap().uniformity().unwrap(), Some(3));
        assert!(theorem2_word(5).unwrap().represents(&Graph::crown(5).unwrap()));
        assert!(matches!(theorem2_word(4), Err(Error::InvalidSize(_))));
    }

    #[test]
    fn represent_crown_dispatch() {
        assert_eq!(represent_crown(2).unwrap().to_compact_string().unwrap(), "12'21'21'12'");
        let w6 = represent_crown(6).unwrap();
        assert_eq!((w6.uniformity().unwrap(), w6.alphabet().count()), (Some(3), 12));
        assert!(represent_crown(0).is_err());
    }
}
