//! Unrooted trees and segments.
//!
//! A *segment* of a tree is a nonempty connected subtree with at most two
//! boundary nodes (nodes with a neighbor outside the segment). Its size is its
//! edge count. [`split_segment`] partitions a segment of size `l >= 2` into at
//! most five segments of size at most `l/2` with pairwise disjoint edge sets.

use crate::error::Error;
use crate::Result;
use std::collections::BTreeSet;

/// An unrooted tree on nodes `0..n`.
#[derive(Debug, Clone)]
pub struct Tree {
    n: usize,
    adj: Vec<Vec<usize>>,
}

impl Tree {
    /// Builds a tree from `n-1` edges; errors if the edges do not form a tree.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Tree> {
        if n == 0 || edges.len() != n - 1 {
            return Err(Error::NotATree);
        }
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in edges {
            if a >= n || b >= n || a == b {
                return Err(Error::NotATree);
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        let t = Tree { n, adj };
        if t.reachable_from(0).len() != n {
            return Err(Error::NotATree);
        }
        Ok(t)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.n.saturating_sub(1));
        for v in 0..self.n {
            for &w in &self.adj[v] {
                if v < w {
                    out.push((v, w));
                }
            }
        }
        out
    }

    fn reachable_from(&self, s: usize) -> Vec<usize> {
        let mut seen = vec![false; self.n];
        seen[s] = true;
        let mut stack = vec![s];
        let mut out = vec![s];
        while let Some(v) = stack.pop() {
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    out.push(w);
                    stack.push(w);
                }
            }
        }
        out
    }

    /// Path between two nodes, inclusive.
    pub fn path(&self, a: usize, b: usize) -> Vec<usize> {
        let mut prev = vec![usize::MAX; self.n];
        prev[a] = a;
        let mut queue = std::collections::VecDeque::from([a]);
        while let Some(v) = queue.pop_front() {
            if v == b {
                break;
            }
            for &w in &self.adj[v] {
                if prev[w] == usize::MAX {
                    prev[w] = v;
                    queue.push_back(w);
                }
            }
        }
        let mut path = vec![b];
        let mut v = b;
        while v != a {
            v = prev[v];
            path.push(v);
        }
        path.reverse();
        path
    }

    /// A uniformly random labeled tree on `n` nodes via a random Prüfer
    /// sequence.
    pub fn random(n: usize, rng: &mut impl rand::Rng) -> Tree {
        assert!(n >= 1);
        if n == 1 {
            return Tree { n: 1, adj: vec![Vec::new()] };
        }
        if n == 2 {
            return Tree::new(2, &[(0, 1)]).unwrap();
        }
        let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
        let mut degree = vec![1usize; n];
        for &v in &seq {
            degree[v] += 1;
        }
        let mut edges = Vec::with_capacity(n - 1);
        let mut leaves: BTreeSet<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
        for &v in &seq {
            let leaf = *leaves.iter().next().unwrap();
            leaves.remove(&leaf);
            edges.push((leaf, v));
            degree[v] -= 1;
            if degree[v] == 1 {
                leaves.insert(v);
            }
        }
        let mut it = leaves.into_iter();
        let (a, b) = (it.next().unwrap(), it.next().unwrap());
        edges.push((a, b));
        Tree::new(n, &edges).unwrap()
    }
}

/// A segment: a connected subtree with at most two boundary nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segment {
    /// Sorted node set.
    nodes: Vec<usize>,
}

impl Segment {
    /// Validates connectivity, nonemptiness and the boundary bound against `t`.
    pub fn new(t: &Tree, nodes: &[usize]) -> Result<Segment> {
        let mut ns: Vec<usize> = nodes.to_vec();
        ns.sort_unstable();
        ns.dedup();
        if ns.is_empty() {
            return Err(Error::NotASegment("empty node set".into()));
        }
        if ns.iter().any(|&v| v >= t.n()) {
            return Err(Error::NotASegment("node out of range".into()));
        }
        let seg = Segment { nodes: ns };
        if !seg.is_connected(t) {
            return Err(Error::NotASegment("induced subtree not connected".into()));
        }
        let b = seg.boundary(t);
        if b.len() > 2 {
            return Err(Error::NotASegment(format!("boundary has {} nodes", b.len())));
        }
        Ok(seg)
    }

    fn from_sorted_unchecked(nodes: Vec<usize>) -> Segment {
        Segment { nodes }
    }

    pub fn nodes(&self) -> &[usize] {
        &self.nodes
    }

    pub fn contains(&self, v: usize) -> bool {
        self.nodes.binary_search(&v).is_ok()
    }

    /// Edge count of the induced subtree.
    pub fn size(&self) -> usize {
        self.nodes.len() - 1
    }

    /// Tree edges inside the segment.
    pub fn edges(&self, t: &Tree) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for &v in &self.nodes {
            for &w in t.neighbors(v) {
                if v < w && self.contains(w) {
                    out.push((v, w));
                }
            }
        }
        out
    }

    /// Nodes of the segment with a neighbor outside it, sorted.
    pub fn boundary(&self, t: &Tree) -> Vec<usize> {
        self.nodes
            .iter()
            .copied()
            .filter(|&v| t.neighbors(v).iter().any(|w| !self.contains(*w)))
            .collect()
    }

    fn is_connected(&self, t: &Tree) -> bool {
        let start = self.nodes[0];
        let mut seen: BTreeSet<usize> = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &w in t.neighbors(v) {
                if self.contains(w) && seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        seen.len() == self.nodes.len()
    }
}

/// Component of the segment minus edge `(cut_a, cut_b)` that contains `side`.
fn component_without_edge(t: &Tree, seg: &[usize], cut: (usize, usize), side: usize) -> Vec<usize> {
    let in_seg: BTreeSet<usize> = seg.iter().copied().collect();
    let mut seen = BTreeSet::from([side]);
    let mut stack = vec![side];
    while let Some(v) = stack.pop() {
        for &w in t.neighbors(v) {
            if (v, w) == cut || (w, v) == cut {
                continue;
            }
            if in_seg.contains(&w) && seen.insert(w) {
                stack.push(w);
            }
        }
    }
    seen.into_iter().collect()
}

/// Splits a segment of size `l >= 2` into at most five segments with pairwise
/// disjoint edge sets covering it, each of size at most `l/2`.
pub fn split_segment(t: &Tree, seg: &Segment) -> Result<Vec<Segment>> {
    let l = seg.size();
    if l < 2 {
        return Err(Error::SegmentTooSmall(l));
    }
    let nodes = seg.nodes();

    // Orient every segment edge towards the side with more edges (ties toward
    // the smaller endpoint) and pick a sink.
    let mut outdeg: std::collections::BTreeMap<usize, usize> =
        nodes.iter().map(|&v| (v, 0)).collect();
    for (x, y) in seg.edges(t) {
        let side_x = component_without_edge(t, nodes, (x, y), x).len() - 1; // edges on x's side
        let side_y = l - 1 - side_x;
        let towards_x = side_x > side_y || (side_x == side_y && x < y);
        if towards_x {
            *outdeg.get_mut(&y).unwrap() += 1;
        } else {
            *outdeg.get_mut(&x).unwrap() += 1;
        }
    }
    let z = *outdeg.iter().find(|(_, &d)| d == 0).expect("a sink exists").0;

    // Branch components hanging off z.
    let branches: Vec<(usize, Vec<usize>)> = t
        .neighbors(z)
        .iter()
        .copied()
        .filter(|x| seg.contains(*x))
        .map(|x| (x, component_without_edge(t, nodes, (z, x), x)))
        .collect();

    let mut parts: Vec<Vec<usize>>;
    // A branch component with k nodes spans k-1 edges, so together with the
    // edge to z it has k edges.
    if let Some((x, comp)) = branches.iter().find(|(_, c)| c.len() > l / 2) {
        // Corner case: one branch plus its z-edge already exceeds half; cut
        // both sides off the edge xz and keep the edge itself as its own part.
        let other = component_without_edge(t, nodes, (z, *x), z);
        let mut cut_edge = vec![*x, z];
        cut_edge.sort_unstable();
        parts = vec![comp.clone(), other, cut_edge];
    } else {
        // Each branch plus z has at most l/2 edges; merge the two smallest
        // until at most three parts remain.
        parts = branches
            .into_iter()
            .map(|(_, mut c)| {
                c.push(z);
                c.sort_unstable();
                c
            })
            .collect();
        while parts.len() > 3 {
            parts.sort_by_key(|p| (p.len(), *p.first().unwrap()));
            let b = parts.remove(1);
            let a = &mut parts[0];
            a.extend_from_slice(&b);
            a.sort_unstable();
            a.dedup();
        }
    }

    // Fix up any part whose boundary in T has three nodes by splitting it at
    // a node that separates the boundary.
    let mut fixed: Vec<Vec<usize>> = Vec::new();
    for part in parts {
        let probe = Segment::from_sorted_unchecked(part.clone());
        let bnd = probe.boundary(t);
        if bnd.len() <= 2 {
            fixed.push(part);
            continue;
        }
        assert_eq!(bnd.len(), 3, "parts have at most three boundary nodes");
        let (a, b, c) = (bnd[0], bnd[1], bnd[2]);
        // d = meeting node of the three pairwise paths inside the part.
        let part_tree_path = |from: usize, to: usize| -> Vec<usize> { t.path(from, to) };
        let ab: BTreeSet<usize> = part_tree_path(a, b).into_iter().collect();
        let d = *part_tree_path(c, a).iter().find(|v| ab.contains(v)).unwrap();
        let in_part: BTreeSet<usize> = part.iter().copied().collect();
        // Components of part - d, grouped by which boundary node they contain.
        let mut groups: Vec<Vec<usize>> = vec![Vec::new(); 3];
        let mut seen: BTreeSet<usize> = BTreeSet::from([d]);
        for &v in &part {
            if seen.contains(&v) {
                continue;
            }
            let mut comp = vec![v];
            seen.insert(v);
            let mut stack = vec![v];
            while let Some(u) = stack.pop() {
                for &w in t.neighbors(u) {
                    if w != d && in_part.contains(&w) && seen.insert(w) {
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            let which = [a, b, c]
                .iter()
                .position(|x| comp.contains(x))
                .unwrap_or(0);
            groups[which].extend(comp);
        }
        for mut g in groups.into_iter().filter(|g| !g.is_empty()) {
            g.push(d);
            g.sort_unstable();
            g.dedup();
            fixed.push(g);
        }
    }

    let out: Vec<Segment> = fixed
        .into_iter()
        .map(|nodes| Segment::from_sorted_unchecked(nodes))
        .collect();

    debug_assert!(out.len() <= 5);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::stream;
    use rand::Rng;
    use std::collections::BTreeSet;

    /// Postcondition oracle: disjoint edge sets, exact cover, sizes <= l/2,
    /// boundaries <= 2, each part connected.
    pub(crate) fn check_split(t: &Tree, seg: &Segment, parts: &[Segment]) {
        assert!(parts.len() <= 5, "got {} parts", parts.len());
        let l = seg.size();
        let mut all_edges: BTreeSet<(usize, usize)> = BTreeSet::new();
        for p in parts {
            assert!(p.size() * 2 <= l, "part size {} > {}/2", p.size(), l);
            assert!(p.boundary(t).len() <= 2);
            for e in p.edges(t) {
                assert!(all_edges.insert(e), "edge {:?} covered twice", e);
            }
        }
        let want: BTreeSet<(usize, usize)> = seg.edges(t).into_iter().collect();
        assert_eq!(all_edges, want, "edge partition mismatch");
    }

    #[test]
    fn split_path_of_two_edges() {
        let t = Tree::new(3, &[(0, 1), (1, 2)]).unwrap();
        let seg = Segment::new(&t, &[0, 1, 2]).unwrap();
        let parts = split_segment(&t, &seg).unwrap();
        check_split(&t, &seg, &parts);
        assert_eq!(parts.len(), 2);
        assert!(parts.iter().all(|p| p.size() == 1));
    }

    #[test]
    fn split_star_with_four_leaves() {
        let t = Tree::new(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        let seg = Segment::new(&t, &[0, 1, 2, 3, 4]).unwrap();
        let parts = split_segment(&t, &seg).unwrap();
        check_split(&t, &seg, &parts);
    }

    #[test]
    fn split_rejects_single_edge() {
        let t = Tree::new(2, &[(0, 1)]).unwrap();
        let seg = Segment::new(&t, &[0, 1]).unwrap();
        assert!(matches!(split_segment(&t, &seg), Err(Error::SegmentTooSmall(1))));
    }

    /// Random segment with boundary <= 2: take a path u..v plus everything
    /// hanging off its interior.
    pub(crate) fn random_segment(t: &Tree, rng: &mut impl rand::Rng) -> Option<Segment> {
        let n = t.n();
        if n < 3 {
            return None;
        }
        if rng.gen_ratio(1, 8) {
            return Some(Segment::new(t, &(0..n).collect::<Vec<_>>()).unwrap());
        }
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u == v {
            return None;
        }
        let path = t.path(u, v);
        let interior: BTreeSet<usize> = path[1..path.len() - 1].iter().copied().collect();
        let mut nodes: BTreeSet<usize> = path.iter().copied().collect();
        // grow components of T - {u, v} that touch the interior
        let mut stack: Vec<usize> = interior.iter().copied().collect();
        while let Some(x) = stack.pop() {
            for &w in t.neighbors(x) {
                if w != u && w != v && nodes.insert(w) {
                    stack.push(w);
                }
            }
        }
        let nodes: Vec<usize> = nodes.into_iter().collect();
        if nodes.len() < 3 {
            return None;
        }
        Segment::new(t, &nodes).ok()
    }

    #[test]
    fn split_random_trees() {
        let mut rng = stream(20240, "tree-split-test", 0);
        let mut done = 0;
        while done < 500 {
            let n = rng.gen_range(3..=200);
            let t = Tree::random(n, &mut rng);
            let Some(seg) = random_segment(&t, &mut rng) else { continue };
            if seg.size() < 2 {
                continue;
            }
            let parts = split_segment(&t, &seg).unwrap();
            check_split(&t, &seg, &parts);
            done += 1;
        }
    }
}
