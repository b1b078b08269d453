//! Labeled simple graphs over [`Letter`]s, the crown/complete families, and
//! edge-list / DOT I/O.
//!
//! Vertices get a dense index (ascending letter order) fixed at construction;
//! adjacency is one bitset row per vertex.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::word::Letter;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertices: Vec<Letter>,
    index: BTreeMap<Letter, usize>,
    adj: Vec<FixedBitSet>,
}

/// Non-fatal observation made while reading an edge list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeListWarning {
    pub line: usize,
    pub message: String,
}

impl Graph {
    /// Builds a graph from a vertex set and edges between those vertices.
    pub fn from_parts<V, E>(vertices: V, edges: E) -> Result<Self>
    where
        V: IntoIterator<Item = Letter>,
        E: IntoIterator<Item = (Letter, Letter)>,
    {
        let set: BTreeSet<Letter> = vertices.into_iter().collect();
        let vertices: Vec<Letter> = set.into_iter().collect();
        let index: BTreeMap<Letter, usize> =
            vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let n = vertices.len();
        let mut adj = vec![FixedBitSet::with_capacity(n); n];
        for (x, y) in edges {
            if x == y {
                return Err(Error::SelfLoop(x));
            }
            let i = *index.get(&x).ok_or(Error::UnknownVertex(x))?;
            let j = *index.get(&y).ok_or(Error::UnknownVertex(y))?;
            adj[i].insert(j);
            adj[j].insert(i);
        }
        Ok(Graph {
            vertices,
            index,
            adj,
        })
    }

    /// The crown graph: `K_{n,n}` on `{1..n} ∪ {1'..n'}` minus the matching
    /// `{i i'}`, i.e. edges `i j'` for `i != j`.
    pub fn crown(n: usize) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidSize("crown graph needs n >= 1".into()));
        }
        let n32 = n as u32;
        let vertices = (1..=n32).flat_map(|i| [Letter::plain(i), Letter::primed(i)]);
        let edges = (1..=n32).flat_map(|i| {
            (1..=n32)
                .filter(move |&j| j != i)
                .map(move |j| (Letter::plain(i), Letter::primed(j)))
        });
        Graph::from_parts(vertices, edges)
    }

    /// `K_m` on the unprimed letters `1..m`.
    pub fn complete(m: usize) -> Result<Self> {
        if m < 1 {
            return Err(Error::InvalidSize("complete graph needs m >= 1".into()));
        }
        let m = m as u32;
        let edges = (1..=m).flat_map(|i| (i + 1..=m).map(move |j| (Letter::plain(i), Letter::plain(j))));
        Graph::from_parts((1..=m).map(Letter::plain), edges)
    }

    /// `K_{p,q}` with parts `{1..p}` and `{1'..q'}` and every edge `i j'`.
    pub fn complete_bipartite(p: usize, q: usize) -> Result<Self> {
        if p < 1 || q < 1 {
            return Err(Error::InvalidSize(
                "complete bipartite graph needs both parts nonempty".into(),
            ));
        }
        let (p, q) = (p as u32, q as u32);
        let vertices = (1..=p).map(Letter::plain).chain((1..=q).map(Letter::primed));
        let edges =
            (1..=p).flat_map(|i| (1..=q).map(move |j| (Letter::plain(i), Letter::primed(j))));
        Graph::from_parts(vertices, edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|row| row.count_ones(..)).sum::<usize>() / 2
    }

    /// Vertices in ascending letter order; position = dense index.
    pub fn vertices(&self) -> &[Letter] {
        &self.vertices
    }

    pub fn contains(&self, v: Letter) -> bool {
        self.index.contains_key(&v)
    }

    pub fn index_of(&self, v: Letter) -> Option<usize> {
        self.index.get(&v).copied()
    }

    /// Neighbor bitset of the vertex with dense index `i`.
    pub fn neighbor_bits(&self, i: usize) -> &FixedBitSet {
        &self.adj[i]
    }

    pub fn has_edge(&self, x: Letter, y: Letter) -> bool {
        match (self.index_of(x), self.index_of(y)) {
            (Some(i), Some(j)) => self.adj[i].contains(j),
            _ => false,
        }
    }

    /// `N(v)`.
    pub fn neighborhood(&self, v: Letter) -> Result<BTreeSet<Letter>> {
        let i = self.index_of(v).ok_or(Error::UnknownVertex(v))?;
        Ok(self.adj[i].ones().map(|j| self.vertices[j]).collect())
    }

    pub fn degree(&self, v: Letter) -> Result<usize> {
        let i = self.index_of(v).ok_or(Error::UnknownVertex(v))?;
        Ok(self.adj[i].count_ones(..))
    }

    /// Edges `(x, y)` with `x < y`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Letter, Letter)> + '_ {
        self.adj.iter().enumerate().flat_map(move |(i, row)| {
            row.ones()
                .filter(move |&j| j > i)
                .map(move |j| (self.vertices[i], self.vertices[j]))
        })
    }

    /// Whether no two vertices of `set` are adjacent.
    pub fn is_independent(&self, set: &BTreeSet<Letter>) -> bool {
        set.iter()
            .all(|&x| set.iter().all(|&y| x == y || !self.has_edge(x, y)))
    }

    /// Reads the edge-list format.
    ///
    /// ```text
    /// # comment
    /// p 4          (optional header: vertex count)
    /// 1 2'         (edge)
    /// 3            (vertex with no edges required)
    /// ```
    ///
    /// Duplicate edges are dropped with a warning; self-loops are errors.
    pub fn from_edge_list(text: &str) -> Result<(Self, Vec<EdgeListWarning>)> {
        let mut vertices = BTreeSet::new();
        let mut edges: BTreeSet<(Letter, Letter)> = BTreeSet::new();
        let mut warnings = Vec::new();
        let mut declared: Option<(usize, usize)> = None;
        let mut seen_content = false;

        for (lineno, raw) in text.lines().enumerate() {
            let line = lineno + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let tokens: Vec<&str> = content.split_whitespace().collect();
            if tokens[0] == "p" {
                if seen_content {
                    return Err(Error::EdgeList {
                        line,
                        msg: "header must precede all vertex and edge lines".into(),
                    });
                }
                seen_content = true;
                let count = match tokens.as_slice() {
                    [_, n] => n.parse::<usize>().ok(),
                    _ => None,
                };
                let count = count.ok_or_else(|| Error::EdgeList {
                    line,
                    msg: format!("malformed header `{content}`"),
                })?;
                declared = Some((count, line));
                continue;
            }
            seen_content = true;
            let parse = |tok: &str| {
                tok.parse::<Letter>().map_err(|e| Error::EdgeList {
                    line,
                    msg: e.to_string(),
                })
            };
            match tokens.as_slice() {
                [v] => {
                    vertices.insert(parse(v)?);
                }
                [u, v] => {
                    let (u, v) = (parse(u)?, parse(v)?);
                    if u == v {
                        return Err(Error::EdgeList {
                            line,
                            msg: format!("self-loop on {u}"),
                        });
                    }
                    vertices.insert(u);
                    vertices.insert(v);
                    if !edges.insert((u.min(v), u.max(v))) {
                        warnings.push(EdgeListWarning {
                            line,
                            message: format!("duplicate edge {u} {v} ignored"),
                        });
                    }
                }
                _ => {
                    return Err(Error::EdgeList {
                        line,
                        msg: format!("expected one or two letters, got `{content}`"),
                    })
                }
            }
        }
        if let Some((count, line)) = declared {
            if count != vertices.len() {
                return Err(Error::EdgeList {
                    line,
                    msg: format!(
                        "header declares {count} vertices but {} are named",
                        vertices.len()
                    ),
                });
            }
        }
        Ok((Graph::from_parts(vertices, edges)?, warnings))
    }

    /// Canonical edge list: header, isolated vertices, then sorted edges.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("p {}\n", self.vertex_count());
        for (i, v) in self.vertices.iter().enumerate() {
            if self.adj[i].is_clear() {
                let _ = writeln!(out, "{v}");
            }
        }
        for (x, y) in self.edges() {
            let _ = writeln!(out, "{x} {y}");
        }
        out
    }

    /// Undirected DOT with quoted vertex names.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph G {\n");
        for v in &self.vertices {
            let _ = writeln!(out, "  \"{v}\";");
        }
        for (x, y) in self.edges() {
            let _ = writeln!(out, "  \"{x}\" -- \"{y}\";");
        }
        out.push_str("}\n");
        out
    }
}
