//! Elimination forests and exact treedepth.
//!
//! An elimination forest of a graph is a rooted forest on the vertex set such
//! that every graph edge joins an ancestor-descendant pair. The minimum height
//! over all elimination forests is the treedepth.

use crate::error::Error;
use crate::graph::Graph;
use crate::Result;
use std::fmt::Write as _;

/// A rooted forest on vertices `1..=n`, stored as parent pointers (0 = root).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EliminationForest {
    parent: Vec<u32>, // index v-1 holds parent of v, 0 for roots
}

impl EliminationForest {
    /// Builds a forest from parent pointers (`parents[v-1] == 0` marks roots).
    /// Acyclicity is checked lazily by [`EliminationForest::validate`] and
    /// eagerly by the level computation here.
    pub fn from_parents(parents: Vec<u32>) -> Result<EliminationForest> {
        let n = parents.len() as u32;
        for &p in &parents {
            if p > n {
                return Err(Error::VertexOutOfRange(p, n));
            }
        }
        let f = EliminationForest { parent: parents };
        f.levels()?; // rejects cyclic parent chains
        Ok(f)
    }

    pub fn n(&self) -> usize {
        self.parent.len()
    }

    /// Parent of `v`, or `None` for roots.
    pub fn parent(&self, v: u32) -> Option<u32> {
        let p = self.parent[v as usize - 1];
        (p != 0).then_some(p)
    }

    /// Number of strict ancestors of every vertex; fails on cyclic parents.
    pub fn levels(&self) -> Result<Vec<u32>> {
        let n = self.n();
        let mut lvl = vec![u32::MAX; n + 1];
        for start in 1..=n as u32 {
            if lvl[start as usize] != u32::MAX {
                continue;
            }
            // walk up to a known level or a root, then unwind
            let mut chain = Vec::new();
            let mut v = start;
            loop {
                if chain.len() > n {
                    return Err(Error::CyclicParent(start));
                }
                chain.push(v);
                match self.parent(v) {
                    None => {
                        break;
                    }
                    Some(p) => {
                        if lvl[p as usize] != u32::MAX {
                            break;
                        }
                        if chain.contains(&p) {
                            return Err(Error::CyclicParent(p));
                        }
                        v = p;
                    }
                }
            }
            let mut base = match self.parent(*chain.last().unwrap()) {
                Some(p) => lvl[p as usize] + 1,
                None => 0,
            };
            for &u in chain.iter().rev() {
                lvl[u as usize] = base;
                base += 1;
            }
        }
        lvl.remove(0);
        Ok(lvl)
    }

    /// Level of a single vertex.
    pub fn level(&self, v: u32) -> u32 {
        let mut l = 0;
        let mut u = v;
        while let Some(p) = self.parent(u) {
            u = p;
            l += 1;
        }
        l
    }

    /// Max level plus one; 0 for the empty forest.
    pub fn height(&self) -> u32 {
        match self.levels() {
            Ok(lvls) => lvls.iter().max().map_or(0, |&m| m + 1),
            Err(_) => 0,
        }
    }

    /// Strict ancestors of `v`, closest first.
    pub fn tail(&self, v: u32) -> Vec<u32> {
        let mut out = Vec::new();
        let mut u = v;
        while let Some(p) = self.parent(u) {
            out.push(p);
            u = p;
        }
        out
    }

    /// Whether `a` is an ancestor of `b` (every vertex is its own ancestor).
    pub fn is_ancestor(&self, a: u32, b: u32) -> bool {
        let mut u = b;
        loop {
            if u == a {
                return true;
            }
            match self.parent(u) {
                Some(p) => u = p,
                None => return false,
            }
        }
    }

    /// Vertices of the subtree rooted at `v` (including `v`), sorted.
    pub fn subtree(&self, v: u32) -> Vec<u32> {
        (1..=self.n() as u32)
            .filter(|&u| self.is_ancestor(v, u))
            .collect()
    }

    /// Checks that the forest is an elimination forest of `g` and returns its
    /// height. Reports a witness edge with incomparable endpoints otherwise.
    pub fn validate(&self, g: &Graph) -> Result<u32> {
        if self.n() != g.n() as usize {
            return Err(Error::ForestSizeMismatch { forest: self.n(), graph: g.n() as usize });
        }
        let lvls = self.levels()?;
        for &(u, v) in g.edges() {
            if !self.is_ancestor(u, v) && !self.is_ancestor(v, u) {
                return Err(Error::IncomparableEdge(u, v));
            }
        }
        Ok(lvls.iter().max().map_or(0, |&m| m + 1))
    }

    /// Parses the `.ef` format: one line `<v> <parent>` per vertex, parent 0
    /// for roots; lines starting with `c` are comments.
    pub fn parse_ef(text: &str) -> Result<EliminationForest> {
        let mut pairs = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('c') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 2 {
                return Err(Error::MalformedLine { line: lineno + 1, text: line.to_string() });
            }
            let v: u32 = fields[0]
                .parse()
                .map_err(|_| Error::MalformedLine { line: lineno + 1, text: line.to_string() })?;
            let p: u32 = fields[1]
                .parse()
                .map_err(|_| Error::MalformedLine { line: lineno + 1, text: line.to_string() })?;
            pairs.push((v, p));
        }
        let n = pairs.len() as u32;
        let mut parents = vec![u32::MAX; n as usize];
        for (v, p) in pairs {
            if v == 0 || v > n {
                return Err(Error::VertexOutOfRange(v, n));
            }
            parents[v as usize - 1] = p;
        }
        if parents.contains(&u32::MAX) {
            return Err(Error::MalformedHeader("missing vertex line in .ef file".into()));
        }
        EliminationForest::from_parents(parents)
    }

    pub fn to_ef(&self) -> String {
        let mut s = String::new();
        for v in 1..=self.n() as u32 {
            let _ = writeln!(s, "{} {}", v, self.parent(v).unwrap_or(0));
        }
        s
    }
}

/// Computes the exact treedepth of `g` and a witnessing minimum-height
/// elimination forest by dynamic programming over vertex subsets.
///
/// Refuses graphs larger than `bound` vertices.
pub fn treedepth_exact(g: &Graph, bound: usize) -> Result<(u32, EliminationForest)> {
    let n = g.n() as usize;
    if n > bound {
        return Err(Error::SizeBoundExceeded { n, bound });
    }
    if n == 0 {
        return Ok((0, EliminationForest { parent: vec![] }));
    }
    assert!(n <= 20, "subset DP is for desk-scale graphs");
    let adj = g.adjacency_masks();
    let adj: Vec<u32> = adj.iter().map(|&m| m as u32).collect();
    let full: u32 = if n == 32 { u32::MAX } else { (1 << n) - 1 };

    // depth[mask] = treedepth of the induced subgraph; root[mask] = best root
    // for a connected mask.
    let mut depth = vec![u32::MAX; (full as usize) + 1];
    let mut best_root = vec![0u8; (full as usize) + 1];

    fn components_of(mask: u32, adj: &[u32]) -> Vec<u32> {
        let mut rest = mask;
        let mut comps = Vec::new();
        while rest != 0 {
            let s = rest & rest.wrapping_neg();
            let mut comp = s;
            loop {
                let mut grown = comp;
                let mut bits = comp;
                while bits != 0 {
                    let v = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    grown |= adj[v] & mask;
                }
                if grown == comp {
                    break;
                }
                comp = grown;
            }
            comps.push(comp);
            rest &= !comp;
        }
        comps
    }

    fn solve(mask: u32, adj: &[u32], depth: &mut [u32], best_root: &mut [u8]) -> u32 {
        if mask == 0 {
            return 0;
        }
        if depth[mask as usize] != u32::MAX {
            return depth[mask as usize];
        }
        let comps = components_of(mask, adj);
        let d = if comps.len() > 1 {
            comps
                .iter()
                .map(|&c| solve(c, adj, depth, best_root))
                .max()
                .unwrap()
        } else {
            let mut best = u32::MAX;
            let mut bits = mask;
            while bits != 0 {
                let v = bits.trailing_zeros();
                bits &= bits - 1;
                let d = 1 + solve(mask & !(1 << v), adj, depth, best_root);
                if d < best {
                    best = d;
                    best_root[mask as usize] = v as u8;
                }
            }
            best
        };
        depth[mask as usize] = d;
        d
    }

    let d = solve(full, &adj, &mut depth, &mut best_root);

    // Reconstruct the forest: in a connected mask, remove the recorded root
    // and recurse on the components, whose roots become its children.
    let mut parent = vec![0u32; n];
    let mut stack: Vec<(u32, u32)> = vec![(full, 0)]; // (mask, parent vertex or 0)
    while let Some((mask, above)) = stack.pop() {
        if mask == 0 {
            continue;
        }
        for comp in components_of(mask, &adj) {
            solve(comp, &adj, &mut depth, &mut best_root);
            let r = best_root[comp as usize] as u32;
            parent[r as usize] = above;
            stack.push((comp & !(1 << r), r + 1));
        }
    }
    let forest = EliminationForest { parent };
    debug_assert_eq!(forest.validate(g)?, d);
    Ok((d, forest))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k2_chain_has_height_2() {
        let g = Graph::complete(2);
        let f = EliminationForest::from_parents(vec![0, 1]).unwrap();
        assert_eq!(f.validate(&g).unwrap(), 2);
    }

    #[test]
    fn c4_layered_forest_has_height_3() {
        // cycle 1-2-3-4-1; root 1, child 3, children 2 and 4 under 3
        let g = Graph::cycle(4);
        let f = EliminationForest::from_parents(vec![0, 3, 1, 3]).unwrap();
        assert_eq!(f.validate(&g).unwrap(), 3);
        assert_eq!(f.levels().unwrap(), vec![0, 2, 1, 2]);
    }

    #[test]
    fn c4_sibling_forest_reports_witness_edge() {
        let g = Graph::cycle(4);
        let f = EliminationForest::from_parents(vec![0, 1, 2, 2]).unwrap();
        assert!(matches!(f.validate(&g), Err(Error::IncomparableEdge(3, 4))));
    }

    #[test]
    fn cyclic_parents_rejected() {
        assert!(matches!(
            EliminationForest::from_parents(vec![2, 3, 1]),
            Err(Error::CyclicParent(_))
        ));
    }

    #[test]
    fn parent_levels_are_consistent() {
        // lvl(parent(v)) = lvl(v) - 1 and roots have level 0
        let f = EliminationForest::from_parents(vec![0, 1, 1, 2, 0]).unwrap();
        let lvls = f.levels().unwrap();
        for v in 1..=5u32 {
            match f.parent(v) {
                Some(p) => assert_eq!(lvls[p as usize - 1], lvls[v as usize - 1] - 1),
                None => assert_eq!(lvls[v as usize - 1], 0),
            }
        }
    }

    #[test]
    fn treedepth_small_cases() {
        assert_eq!(treedepth_exact(&Graph::complete(2), 12).unwrap().0, 2);
        assert_eq!(treedepth_exact(&Graph::path(4), 12).unwrap().0, 3);
        assert_eq!(treedepth_exact(&Graph::complete(4), 12).unwrap().0, 4);
        assert_eq!(treedepth_exact(&Graph::cycle(4), 12).unwrap().0, 3);
    }

    #[test]
    fn treedepth_respects_bound() {
        let g = Graph::path(13);
        assert!(matches!(
            treedepth_exact(&g, 12),
            Err(Error::SizeBoundExceeded { n: 13, bound: 12 })
        ));
    }

    #[test]
    fn treedepth_forest_is_optimal_for_paths() {
        // td(P_n) = floor(log2(n)) + 1
        for n in 1..=12u32 {
            let g = Graph::path(n);
            let (d, f) = treedepth_exact(&g, 12).unwrap();
            assert_eq!(d, 32 - n.leading_zeros());
            assert_eq!(f.validate(&g).unwrap(), d);
        }
    }

    #[test]
    fn ef_round_trip() {
        let f = EliminationForest::from_parents(vec![0, 1, 1, 3]).unwrap();
        let g = EliminationForest::parse_ef(&f.to_ef()).unwrap();
        assert_eq!(f, g);
    }
}
