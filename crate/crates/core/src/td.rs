//! Tree decompositions: validation, the `.td` file format, and the edge
//! assignment used when reasoning over segments.

use crate::error::Error;
use crate::graph::Graph;
use crate::tree::Tree;
use crate::Result;
use std::collections::BTreeSet;
use std::fmt::Write as _;

/// A tree decomposition: a tree whose nodes carry bags of graph vertices.
#[derive(Debug, Clone)]
pub struct TreeDecomposition {
    tree: Tree,
    bags: Vec<Vec<u32>>, // sorted vertex lists, one per tree node
}

impl TreeDecomposition {
    pub fn new(tree: Tree, mut bags: Vec<Vec<u32>>) -> Result<TreeDecomposition> {
        if bags.len() != tree.n() {
            return Err(Error::NotATree);
        }
        for b in &mut bags {
            b.sort_unstable();
            b.dedup();
        }
        Ok(TreeDecomposition { tree, bags })
    }

    pub fn tree(&self) -> &Tree {
        &self.tree
    }

    pub fn bags(&self) -> &[Vec<u32>] {
        &self.bags
    }

    pub fn bag(&self, node: usize) -> &[u32] {
        &self.bags[node]
    }

    /// Max bag size minus one.
    pub fn width(&self) -> usize {
        self.bags.iter().map(|b| b.len()).max().unwrap_or(0).saturating_sub(1)
    }

    /// Checks the decomposition against `g` and returns the width: every
    /// vertex occurs in a nonempty connected set of bags and every edge is
    /// contained in some bag.
    pub fn validate(&self, g: &Graph) -> Result<usize> {
        for v in g.vertices() {
            let occ: Vec<usize> = (0..self.tree.n())
                .filter(|&x| self.bags[x].binary_search(&v).is_ok())
                .collect();
            if occ.is_empty() {
                return Err(Error::MissingVertex(v));
            }
            // connectivity of the occurrence set in the tree
            let occ_set: BTreeSet<usize> = occ.iter().copied().collect();
            let mut seen = BTreeSet::from([occ[0]]);
            let mut stack = vec![occ[0]];
            while let Some(x) = stack.pop() {
                for &y in self.tree.neighbors(x) {
                    if occ_set.contains(&y) && seen.insert(y) {
                        stack.push(y);
                    }
                }
            }
            if seen.len() != occ.len() {
                return Err(Error::DisconnectedOccurrence(v));
            }
        }
        for &(u, v) in g.edges() {
            if !self.bags.iter().any(|b| {
                b.binary_search(&u).is_ok() && b.binary_search(&v).is_ok()
            }) {
                return Err(Error::UncoveredEdge(u, v));
            }
        }
        Ok(self.width())
    }

    /// Whether the underlying tree is a path (every node has degree <= 2).
    pub fn is_path(&self) -> bool {
        (0..self.tree.n()).all(|x| self.tree.neighbors(x).len() <= 2)
    }

    /// Assigns every edge of `g` to a node whose bag contains it (the first
    /// one in node order).
    pub fn edge_assignment(&self, g: &Graph) -> Result<Vec<usize>> {
        let mut eta = Vec::with_capacity(g.m() as usize);
        for &(u, v) in g.edges() {
            let node = (0..self.tree.n())
                .find(|&x| {
                    self.bags[x].binary_search(&u).is_ok()
                        && self.bags[x].binary_search(&v).is_ok()
                })
                .ok_or(Error::UncoveredEdge(u, v))?;
            eta.push(node);
        }
        Ok(eta)
    }

    /// Makes the edge assignment injective by duplicating nodes: a node whose
    /// bag hosts `c > 1` edges gains `c - 1` pendant copies of itself, and the
    /// extra edges move to the copies. Returns the new decomposition and the
    /// injective assignment.
    pub fn with_injective_assignment(&self, g: &Graph) -> Result<(TreeDecomposition, Vec<usize>)> {
        let mut eta = self.edge_assignment(g)?;
        let mut bags = self.bags.clone();
        let mut edges = self.tree.edges();
        let mut used: Vec<bool> = vec![false; self.tree.n()];
        for e in 0..eta.len() {
            let x = eta[e];
            if !used[x] {
                used[x] = true;
                continue;
            }
            let copy = bags.len();
            bags.push(bags[x].clone());
            edges.push((x, copy));
            eta[e] = copy;
        }
        let tree = Tree::new(bags.len(), &edges)?;
        Ok((TreeDecomposition { tree, bags }, eta))
    }

    /// Parses the `.td` format: header `s td <#bags> <width+1> <n>`, bag lines
    /// `b <id> <v...>` (1-based ids), then tree edges `<x> <y>`.
    pub fn parse_td(text: &str) -> Result<TreeDecomposition> {
        let mut header: Option<(usize, usize, u32)> = None;
        let mut bags: Vec<Vec<u32>> = Vec::new();
        let mut edges: Vec<(usize, usize)> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('c') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let bad = || Error::MalformedLine { line: lineno + 1, text: line.to_string() };
            match fields[0] {
                "s" => {
                    if header.is_some() || fields.len() != 5 || fields[1] != "td" {
                        return Err(Error::MalformedHeader(line.to_string()));
                    }
                    let nb = fields[2].parse().map_err(|_| bad())?;
                    let w1 = fields[3].parse().map_err(|_| bad())?;
                    let n = fields[4].parse().map_err(|_| bad())?;
                    header = Some((nb, w1, n));
                    bags = vec![Vec::new(); nb];
                }
                "b" => {
                    let (nb, _, n) = header.ok_or_else(|| Error::MalformedHeader(line.to_string()))?;
                    let id: usize = fields.get(1).ok_or_else(bad)?.parse().map_err(|_| bad())?;
                    if id == 0 || id > nb {
                        return Err(bad());
                    }
                    let mut bag = Vec::new();
                    for f in &fields[2..] {
                        let v: u32 = f.parse().map_err(|_| bad())?;
                        if v == 0 || v > n {
                            return Err(Error::VertexOutOfRange(v, n));
                        }
                        bag.push(v);
                    }
                    bags[id - 1] = bag;
                }
                _ => {
                    let (nb, _, _) = header.ok_or_else(|| Error::MalformedHeader(line.to_string()))?;
                    if fields.len() != 2 {
                        return Err(bad());
                    }
                    let x: usize = fields[0].parse().map_err(|_| bad())?;
                    let y: usize = fields[1].parse().map_err(|_| bad())?;
                    if x == 0 || y == 0 || x > nb || y > nb {
                        return Err(bad());
                    }
                    edges.push((x - 1, y - 1));
                }
            }
        }
        let (nb, _, _) = header.ok_or_else(|| Error::MalformedHeader("missing 's td' header".into()))?;
        let tree = Tree::new(nb, &edges)?;
        TreeDecomposition::new(tree, bags)
    }

    pub fn to_td(&self, n_vertices: u32) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "s td {} {} {}",
            self.bags.len(),
            self.width() + 1,
            n_vertices
        );
        for (i, bag) in self.bags.iter().enumerate() {
            let _ = write!(s, "b {}", i + 1);
            for v in bag {
                let _ = write!(s, " {}", v);
            }
            let _ = writeln!(s);
        }
        for (x, y) in self.tree.edges() {
            let _ = writeln!(s, "{} {}", x + 1, y + 1);
        }
        s
    }
}
