//! Exact representation numbers by exhaustive search over `k`-uniform words.
//!
//! The engine extends a partial word one letter at a time (letters tried in
//! ascending order) and keeps, per letter, the set of letters placed since
//! its last occurrence plus the set of partners with which it has already
//! stopped alternating. Pruning rules, all of which keep every completable
//! branch:
//!
//! - an edge `xy` whose induced subword already repeats a letter is dead
//!   (this also bounds the count difference of adjacent letters by one);
//! - a non-edge `xy` that still alternates and can no longer repeat a letter
//!   given the remaining copies of `x` and `y` is dead;
//! - any representing uniform word can be rotated to start with the first
//!   vertex, so position 0 is fixed;
//! - for the built-in crown, complete and complete bipartite labelings, the
//!   first occurrences of vertices that the automorphisms fixing the first
//!   vertex permute freely are forced into ascending order.
//!
//! Witnesses are re-verified with [`Word::check_represents`] before they are
//! reported.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::word::{Letter, Word};

const MAX_VERTICES: usize = 64;
const CHECK_INTERVAL: u64 = 1 << 12;

/// A labeled family whose automorphisms are known without computing them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Family {
    Complete(usize),
    Crown(usize),
    CompleteBipartite(usize, usize),
}

impl Family {
    /// Recognizes the built-in labelings by exact (labeled) equality.
    pub fn recognize(g: &Graph) -> Option<Family> {
        let p = g.vertices().iter().filter(|v| !v.is_primed()).count();
        let q = g.vertex_count() - p;
        let expected = (1..=p as u32)
            .map(Letter::plain)
            .chain((1..=q as u32).map(Letter::primed));
        let mut names: Vec<Letter> = expected.collect();
        names.sort();
        if names != g.vertices() || p == 0 {
            return None;
        }
        let candidates = if q == 0 {
            vec![Family::Complete(p)]
        } else if p == q {
            vec![Family::Crown(p), Family::CompleteBipartite(p, q)]
        } else {
            vec![Family::CompleteBipartite(p, q)]
        };
        candidates.into_iter().find(|f| f.build().as_ref() == Ok(g))
    }

    pub fn build(self) -> Result<Graph> {
        match self {
            Family::Complete(m) => Graph::complete(m),
            Family::Crown(n) => Graph::crown(n),
            Family::CompleteBipartite(p, q) => Graph::complete_bipartite(p, q),
        }
    }

    pub fn label(self) -> String {
        match self {
            Family::Complete(m) => format!("complete({m})"),
            Family::Crown(n) => format!("crown({n})"),
            Family::CompleteBipartite(p, q) => format!("complete_bipartite({p},{q})"),
        }
    }

    /// Vertex chains whose first occurrences may be assumed ascending once
    /// vertex `1` is fixed at position 0. Every permutation of a chain extends
    /// to an automorphism fixing `1` (for the crown graph, `i -> s(i)` moves
    /// `i'` to `s(i)'` along with it).
    fn chains(self) -> Vec<Vec<Letter>> {
        let plain = |a: usize, b: usize| (a as u32..=b as u32).map(Letter::plain).collect();
        let primed = |b: usize| (1..=b as u32).map(Letter::primed).collect();
        match self {
            Family::Complete(m) => vec![plain(2, m)],
            Family::Crown(n) => vec![plain(2, n)],
            Family::CompleteBipartite(p, q) => vec![plain(2, p), primed(q)],
        }
    }
}

/// Knobs for a search run.
#[derive(Clone, Debug)]
pub struct SearchConfig {
    /// Wall-clock budget per level; `None` means unlimited.
    pub budget: Option<Duration>,
    /// Worker threads; `None` uses the rayon default.
    pub threads: Option<usize>,
    /// Single-threaded, reproducible search order and witness.
    pub deterministic: bool,
    /// Apply the automorphism chains of recognized families.
    pub family_symmetry: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            budget: None,
            threads: None,
            deterministic: false,
            family_symmetry: true,
        }
    }
}

impl SearchConfig {
    pub fn deterministic() -> Self {
        SearchConfig {
            deterministic: true,
            ..SearchConfig::default()
        }
    }
}

/// Result of one level of the search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelRecord {
    pub k: usize,
    pub witness_found: bool,
    /// The level was searched to completion without finding a word.
    pub refuted: bool,
    pub nodes: u64,
    pub elapsed_ms: u128,
    pub budget_hit: bool,
}

/// Certificate for a single level or for an iterative-deepening run.
#[derive(Clone, Debug)]
pub struct SearchOutcome {
    /// Family label when recognized, `custom` otherwise.
    pub graph_id: String,
    /// Level of the witness, or the last level tried.
    pub k: usize,
    pub witness: Option<Word>,
    /// Single level: the level was fully refuted. Deepening run: every level
    /// below `k` (and `k` itself when there is no witness) was fully refuted.
    pub exhaustive: bool,
    pub nodes_explored: u64,
    pub elapsed: Duration,
    pub budget_hit: bool,
    pub levels: Vec<LevelRecord>,
}

/// JSON form of a [`SearchOutcome`].
#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub graph: String,
    pub k: usize,
    pub witness: Option<String>,
    pub exhaustive: bool,
    pub nodes_explored: u64,
    pub elapsed_ms: u128,
    pub budget_hit: bool,
    pub levels: Vec<LevelRecord>,
}

impl SearchOutcome {
    pub fn certificate(&self, g: &Graph) -> Certificate {
        Certificate {
            graph: g.to_edge_list(),
            k: self.k,
            witness: self.witness.as_ref().map(Word::to_token_string),
            exhaustive: self.exhaustive,
            nodes_explored: self.nodes_explored,
            elapsed_ms: self.elapsed.as_millis(),
            budget_hit: self.budget_hit,
            levels: self.levels.clone(),
        }
    }
}

struct Problem {
    nv: usize,
    k: u8,
    total: usize,
    all: u64,
    adj: Vec<u64>,
    /// `prev[v]`: vertex whose first occurrence must precede `v`'s.
    prev: Vec<Option<usize>>,
}

impl Problem {
    fn new(g: &Graph, k: usize, family: Option<Family>) -> Result<Self> {
        let nv = g.vertex_count();
        let adj = (0..nv)
            .map(|i| g.neighbor_bits(i).ones().fold(0u64, |m, j| m | 1 << j))
            .collect();
        let mut prev = vec![None; nv];
        for chain in family.map(Family::chains).unwrap_or_default() {
            let ids: Vec<usize> = chain.iter().filter_map(|&v| g.index_of(v)).collect();
            for w in ids.windows(2) {
                prev[w[1]] = Some(w[0]);
            }
        }
        Ok(Problem {
            nv,
            k: k as u8,
            total: nv * k,
            all: if nv == 64 { u64::MAX } else { (1u64 << nv) - 1 },
            adj,
            prev,
        })
    }
}

/// Per-depth snapshot: counts, "placed since last occurrence" sets and
/// already-broken pairs.
#[derive(Clone)]
struct Frame {
    cnt: Vec<u8>,
    since: Vec<u64>,
    broken: Vec<u64>,
    /// Letters with at most one copy left.
    low: u64,
}

enum Flow {
    Found,
    Exhausted,
    Stopped,
}

struct Walker<'a> {
    p: &'a Problem,
    frames: Vec<Frame>,
    word: Vec<u8>,
    nodes: u64,
    stop: &'a AtomicBool,
    deadline: Option<Instant>,
    timed_out: bool,
    /// When set, prefixes reaching this depth are collected instead of
    /// searched further.
    collect_at: Option<usize>,
    collected: Vec<Vec<u8>>,
}

impl<'a> Walker<'a> {
    fn new(p: &'a Problem, stop: &'a AtomicBool, deadline: Option<Instant>) -> Self {
        let root = Frame {
            cnt: vec![0; p.nv],
            since: vec![0; p.nv],
            broken: vec![0; p.nv],
            low: if p.k <= 1 { p.all } else { 0 },
        };
        Walker {
            p,
            frames: vec![root; p.total + 1],
            word: Vec::with_capacity(p.total),
            nodes: 0,
            stop,
            deadline,
            timed_out: false,
            collect_at: None,
            collected: Vec::new(),
        }
    }

    /// Places vertex `z` at position `depth` if no rule forbids it; on success
    /// frame `depth + 1` holds the new state.
    fn try_place(&mut self, depth: usize, z: usize) -> bool {
        let p = self.p;
        let (head, tail) = self.frames.split_at_mut(depth + 1);
        let cur = &head[depth];
        let c = cur.cnt[z];
        if c == p.k {
            return false;
        }
        if c == 0 {
            if depth == 0 && z != 0 {
                return false;
            }
            if let Some(q) = p.prev[z] {
                if cur.cnt[q] == 0 {
                    return false;
                }
            }
        }
        let bit = 1u64 << z;
        // pairs {z, y} whose subword currently ends in z
        let repeat = if c > 0 { p.all & !bit & !cur.since[z] } else { 0 };
        if repeat & p.adj[z] != 0 {
            return false;
        }
        let next = &mut tail[0];
        next.cnt.copy_from_slice(&cur.cnt);
        next.broken.copy_from_slice(&cur.broken);
        for (s, &old) in next.since.iter_mut().zip(&cur.since) {
            *s = old | bit;
        }
        next.since[z] = 0;
        let fresh = repeat & !cur.broken[z];
        if fresh != 0 {
            next.broken[z] |= fresh;
            let mut m = fresh;
            while m != 0 {
                let y = m.trailing_zeros() as usize;
                next.broken[y] |= bit;
                m &= m - 1;
            }
        }
        next.cnt[z] = c + 1;
        next.low = cur.low;
        if c + 2 >= p.k {
            next.low |= bit;
        }
        if c + 1 == p.k {
            // z is exhausted and ends every pair subword it is in; a non-edge
            // partner with at most one copy left can no longer break alternation
            let doomed = p.all & !p.adj[z] & !bit & !next.broken[z] & next.low;
            if doomed != 0 {
                return false;
            }
        }
        true
    }

    fn dfs(&mut self, depth: usize) -> Flow {
        self.nodes += 1;
        if self.nodes.is_multiple_of(CHECK_INTERVAL) {
            if self.stop.load(Ordering::Relaxed) {
                return Flow::Stopped;
            }
            if self.deadline.is_some_and(|d| Instant::now() >= d) {
                self.timed_out = true;
                return Flow::Stopped;
            }
        }
        if depth == self.p.total {
            return Flow::Found;
        }
        if self.collect_at == Some(depth) {
            self.collected.push(self.word.clone());
            return Flow::Exhausted;
        }
        for z in 0..self.p.nv {
            if !self.try_place(depth, z) {
                continue;
            }
            self.word.push(z as u8);
            match self.dfs(depth + 1) {
                Flow::Exhausted => {
                    self.word.pop();
                }
                other => return other,
            }
        }
        Flow::Exhausted
    }

    /// Replays a collected prefix and searches below it.
    fn run_from(&mut self, prefix: &[u8]) -> Flow {
        self.word.clear();
        for (depth, &z) in prefix.iter().enumerate() {
            let ok = self.try_place(depth, z as usize);
            debug_assert!(ok, "collected prefix must replay");
            self.word.push(z);
        }
        self.dfs(prefix.len())
    }
}

fn validate_inputs(g: &Graph, k: usize) -> Result<()> {
    if k < 1 {
        return Err(Error::Search("k must be at least 1".into()));
    }
    if k > u8::MAX as usize {
        return Err(Error::Search(format!("k = {k} is beyond the supported range")));
    }
    if g.vertex_count() == 0 {
        return Err(Error::Search("graph has no vertices".into()));
    }
    if g.vertex_count() > MAX_VERTICES {
        return Err(Error::Search(format!(
            "graphs with more than {MAX_VERTICES} vertices are not supported"
        )));
    }
    Ok(())
}

/// Searches for a `k`-uniform word representing `g`.
pub fn exists_k_word(g: &Graph, k: usize, config: &SearchConfig) -> Result<SearchOutcome> {
    validate_inputs(g, k)?;
    let family = Family::recognize(g);
    let graph_id = family.map_or_else(|| "custom".to_string(), Family::label);
    let problem = Problem::new(g, k, family.filter(|_| config.family_symmetry))?;
    let start = Instant::now();
    let deadline = config.budget.map(|b| start + b);

    let (found, nodes, timed_out) = if config.deterministic {
        run_sequential(&problem, deadline)
    } else {
        match config.threads {
            Some(t) => {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(t.max(1))
                    .build()
                    .map_err(|e| Error::Search(e.to_string()))?;
                pool.install(|| run_parallel(&problem, deadline, t.max(1)))
            }
            None => run_parallel(&problem, deadline, rayon::current_num_threads()),
        }
    };
    let elapsed = start.elapsed();

    let witness = match found {
        Some(ids) => {
            let word = Word::new(ids.iter().map(|&i| g.vertices()[i as usize]).collect());
            if let Err(m) = word.check_represents(g) {
                return Err(Error::Search(format!("search produced a bad witness: {m}")));
            }
            if word.uniformity()? != Some(k) {
                return Err(Error::Search("search produced a non-uniform witness".into()));
            }
            Some(word)
        }
        None => None,
    };
    let refuted = witness.is_none() && !timed_out;
    let record = LevelRecord {
        k,
        witness_found: witness.is_some(),
        refuted,
        nodes,
        elapsed_ms: elapsed.as_millis(),
        budget_hit: timed_out,
    };
    Ok(SearchOutcome {
        graph_id,
        k,
        witness,
        exhaustive: refuted,
        nodes_explored: nodes,
        elapsed,
        budget_hit: timed_out,
        levels: vec![record],
    })
}

fn run_sequential(p: &Problem, deadline: Option<Instant>) -> (Option<Vec<u8>>, u64, bool) {
    let stop = AtomicBool::new(false);
    let mut walker = Walker::new(p, &stop, deadline);
    match walker.dfs(0) {
        Flow::Found => (Some(walker.word), walker.nodes, false),
        Flow::Exhausted => (None, walker.nodes, false),
        Flow::Stopped => (None, walker.nodes, walker.timed_out),
    }
}

/// Splits the tree at the shallowest depth giving enough subtrees, then
/// searches the subtrees as independent tasks. A witness cancels the rest.
fn run_parallel(p: &Problem, deadline: Option<Instant>, threads: usize) -> (Option<Vec<u8>>, u64, bool) {
    let target = 16 * threads;
    let stop = AtomicBool::new(false);
    let mut frontier = vec![Vec::new()];
    let mut nodes = 0u64;
    for depth in 1..p.total {
        let mut walker = Walker::new(p, &stop, None);
        walker.collect_at = Some(depth);
        if let Flow::Found = walker.dfs(0) {
            return (Some(walker.word), nodes + walker.nodes, false);
        }
        nodes = walker.nodes;
        frontier = walker.collected;
        if frontier.len() >= target || frontier.is_empty() {
            break;
        }
    }

    let total_nodes = AtomicU64::new(nodes);
    let timed_out = AtomicBool::new(false);
    let witness: Mutex<Option<Vec<u8>>> = Mutex::new(None);
    frontier.par_iter().for_each(|prefix| {
        if stop.load(Ordering::Relaxed) {
            return;
        }
        let mut walker = Walker::new(p, &stop, deadline);
        let flow = walker.run_from(prefix);
        total_nodes.fetch_add(walker.nodes, Ordering::Relaxed);
        match flow {
            Flow::Found => {
                let mut slot = witness.lock().expect("witness lock");
                if slot.is_none() {
                    *slot = Some(walker.word);
                }
                stop.store(true, Ordering::Relaxed);
            }
            Flow::Stopped if walker.timed_out => {
                timed_out.store(true, Ordering::Relaxed);
                stop.store(true, Ordering::Relaxed);
            }
            _ => {}
        }
    });
    let found = witness.into_inner().expect("witness lock");
    let timed_out = found.is_none() && timed_out.load(Ordering::Relaxed);
    (found, total_nodes.load(Ordering::Relaxed), timed_out)
}

/// Iterative deepening over `k = 1..=k_max`; the budget applies per level.
///
/// Stops at the first level with a witness. Without a witness the outcome
/// reports the last level tried.
pub fn repnum(g: &Graph, k_max: usize, config: &SearchConfig) -> Result<SearchOutcome> {
    if k_max < 1 {
        return Err(Error::Search("k_max must be at least 1".into()));
    }
    let start = Instant::now();
    let mut levels = Vec::new();
    let mut nodes = 0;
    let mut all_refuted = true;
    let mut last = None;
    for k in 1..=k_max {
        let level = exists_k_word(g, k, config)?;
        nodes += level.nodes_explored;
        levels.extend(level.levels.iter().cloned());
        if level.witness.is_some() {
            return Ok(SearchOutcome {
                exhaustive: all_refuted,
                nodes_explored: nodes,
                elapsed: start.elapsed(),
                levels,
                ..level
            });
        }
        all_refuted &= level.exhaustive;
        let budget_hit = level.budget_hit;
        last = Some(level);
        if budget_hit {
            break;
        }
    }
    let last = last.expect("at least one level runs");
    Ok(SearchOutcome {
        exhaustive: all_refuted,
        nodes_explored: nodes,
        elapsed: start.elapsed(),
        budget_hit: levels.iter().any(|l| l.budget_hit),
        levels,
        ..last
    })
}
