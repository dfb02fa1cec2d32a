//! Undirected simple graphs with canonical edge identifiers.
//!
//! Vertices are labeled `1..=n`. Edges are stored as sorted pairs in
//! lexicographic order and the identifier of an edge is its 1-based position
//! in that order, which makes identifiers reproducible across runs and
//! platforms.

use crate::error::Error;
use crate::Result;
use std::fmt::Write as _;

/// An undirected simple graph on vertices `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: u32,
    /// Sorted pairs `(u, v)` with `u < v`, lexicographically ordered.
    edges: Vec<(u32, u32)>,
    adj: Vec<Vec<u32>>,
}

impl Graph {
    /// Builds a graph, validating simplicity and assigning canonical edge ids.
    pub fn new(n: u32, edges: &[(u32, u32)]) -> Result<Graph> {
        let mut sorted = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            if a == b {
                return Err(Error::SelfLoop(a));
            }
            for v in [a, b] {
                if v == 0 || v > n {
                    return Err(Error::VertexOutOfRange(v, n));
                }
            }
            sorted.push((a.min(b), a.max(b)));
        }
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge(w[0].0, w[0].1));
        }
        let mut adj = vec![Vec::new(); n as usize + 1];
        for &(u, v) in &sorted {
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        for l in &mut adj {
            l.sort_unstable();
        }
        Ok(Graph { n, edges: sorted, adj })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.edges.len() as u32
    }

    pub fn vertices(&self) -> impl Iterator<Item = u32> + '_ {
        1..=self.n
    }

    /// Edges in identifier order; the edge with id `i` is `edges()[i-1]`.
    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    /// Endpoints of the edge with the given 1-based identifier.
    pub fn endpoints(&self, id: u32) -> (u32, u32) {
        self.edges[id as usize - 1]
    }

    /// Canonical identifier of edge `{u, v}`, if present.
    pub fn edge_id(&self, u: u32, v: u32) -> Option<u32> {
        let key = (u.min(v), u.max(v));
        self.edges.binary_search(&key).ok().map(|i| i as u32 + 1)
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.edge_id(u, v).is_some()
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.adj[v as usize]
    }

    pub fn degree(&self, v: u32) -> usize {
        self.adj[v as usize].len()
    }

    /// Connected components as sorted vertex lists.
    pub fn components(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.n as usize + 1];
        let mut out = Vec::new();
        for s in 1..=self.n {
            if seen[s as usize] {
                continue;
            }
            let mut comp = vec![s];
            seen[s as usize] = true;
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &w in self.neighbors(v) {
                    if !seen[w as usize] {
                        seen[w as usize] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    /// Induced subgraph on `verts` (sorted, deduplicated by the caller or not),
    /// with vertices relabeled `1..=k` in ascending order of their original
    /// labels. Returns the subgraph and the original label of each new vertex.
    pub fn induced(&self, verts: &[u32]) -> Result<(Graph, Vec<u32>)> {
        let mut labels: Vec<u32> = verts.to_vec();
        labels.sort_unstable();
        labels.dedup();
        let mut index = vec![0u32; self.n as usize + 1];
        for (i, &v) in labels.iter().enumerate() {
            index[v as usize] = i as u32 + 1;
        }
        let mut edges = Vec::new();
        for &(u, v) in &self.edges {
            if index[u as usize] != 0 && index[v as usize] != 0 {
                edges.push((index[u as usize], index[v as usize]));
            }
        }
        Ok((Graph::new(labels.len() as u32, &edges)?, labels))
    }

    /// Closed neighborhood of a vertex set, sorted.
    pub fn closed_neighborhood(&self, set: &[u32]) -> Vec<u32> {
        let mut mark = vec![false; self.n as usize + 1];
        for &v in set {
            mark[v as usize] = true;
            for &w in self.neighbors(v) {
                mark[w as usize] = true;
            }
        }
        (1..=self.n).filter(|&v| mark[v as usize]).collect()
    }

    /// Open neighborhood of a vertex set, sorted.
    pub fn open_neighborhood(&self, set: &[u32]) -> Vec<u32> {
        let mut inside = vec![false; self.n as usize + 1];
        for &v in set {
            inside[v as usize] = true;
        }
        let mut out: Vec<u32> = self
            .closed_neighborhood(set)
            .into_iter()
            .filter(|&v| !inside[v as usize])
            .collect();
        out.sort_unstable();
        out
    }

    /// Adjacency bitmasks for graphs on at most 64 vertices; bit `v-1` of
    /// `masks[u-1]` is set iff `uv` is an edge.
    pub fn adjacency_masks(&self) -> Vec<u64> {
        assert!(self.n <= 64, "bitmask representation needs n <= 64");
        let mut masks = vec![0u64; self.n as usize];
        for &(u, v) in &self.edges {
            masks[u as usize - 1] |= 1 << (v - 1);
            masks[v as usize - 1] |= 1 << (u - 1);
        }
        masks
    }

    /// Parses the `.gr` format: a header `p gr <n> <m>` followed by `m` lines
    /// `e <u> <v>`; lines starting with `c` are comments.
    pub fn parse_gr(text: &str) -> Result<Graph> {
        let mut n: Option<u32> = None;
        let mut m_declared = 0usize;
        let mut edges = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('c') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            match fields[0] {
                "p" => {
                    if n.is_some() || fields.len() != 4 || fields[1] != "gr" {
                        return Err(Error::MalformedHeader(line.to_string()));
                    }
                    n = Some(
                        fields[2]
                            .parse()
                            .map_err(|_| Error::MalformedHeader(line.to_string()))?,
                    );
                    m_declared = fields[3]
                        .parse()
                        .map_err(|_| Error::MalformedHeader(line.to_string()))?;
                }
                "e" => {
                    if n.is_none() || fields.len() != 3 {
                        return Err(Error::MalformedLine { line: lineno + 1, text: line.to_string() });
                    }
                    let u: u32 = fields[1]
                        .parse()
                        .map_err(|_| Error::MalformedLine { line: lineno + 1, text: line.to_string() })?;
                    let v: u32 = fields[2]
                        .parse()
                        .map_err(|_| Error::MalformedLine { line: lineno + 1, text: line.to_string() })?;
                    edges.push((u, v));
                }
                _ => return Err(Error::MalformedLine { line: lineno + 1, text: line.to_string() }),
            }
        }
        let n = n.ok_or_else(|| Error::MalformedHeader(String::from("missing 'p gr' header")))?;
        if edges.len() != m_declared {
            return Err(Error::EdgeCountMismatch { expected: m_declared, found: edges.len() });
        }
        Graph::new(n, &edges)
    }

    /// Serializes to the `.gr` format.
    pub fn to_gr(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "p gr {} {}", self.n, self.m());
        for &(u, v) in &self.edges {
            let _ = writeln!(s, "e {} {}", u, v);
        }
        s
    }

    /// Complete graph on `n` vertices.
    pub fn complete(n: u32) -> Graph {
        let mut edges = Vec::new();
        for u in 1..=n {
            for v in u + 1..=n {
                edges.push((u, v));
            }
        }
        Graph::new(n, &edges).unwrap()
    }

    /// Path `1-2-...-n`.
    pub fn path(n: u32) -> Graph {
        let edges: Vec<(u32, u32)> = (1..n).map(|v| (v, v + 1)).collect();
        Graph::new(n, &edges).unwrap()
    }

    /// Cycle `1-2-...-n-1`.
    pub fn cycle(n: u32) -> Graph {
        assert!(n >= 3);
        let mut edges: Vec<(u32, u32)> = (1..n).map(|v| (v, v + 1)).collect();
        edges.push((n, 1));
        Graph::new(n, &edges).unwrap()
    }
}
