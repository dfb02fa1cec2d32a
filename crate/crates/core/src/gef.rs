//! Generalized elimination forests.
//!
//! A generalized elimination forest of a graph is a rooted forest `F` with a
//! mapping `eta` from vertices to forest nodes such that the images of every
//! edge's endpoints are in ancestor-descendant relation. It compresses a
//! separator hierarchy: each node holds the separator extracted at one
//! recursion step, and expanding every node's vertex group into a path yields
//! an ordinary elimination forest of the same height.

use crate::error::Error;
use crate::forest::EliminationForest;
use crate::graph::Graph;
use crate::separator::is_balanced_separator;
use crate::Result;

/// Oracle interface: given a graph and a measure set `S` (labels of that
/// graph), produce a set `X` such that every component of `G - X` holds at
/// most `floor(|S|/2)` vertices of `S`.
pub type SeparatorOracle<'a> = dyn FnMut(&Graph, &[u32]) -> Result<Vec<u32>> + 'a;

/// A rooted forest of vertex groups.
#[derive(Debug, Clone)]
pub struct GeneralizedEliminationForest {
    /// Parent of each forest node (`None` for roots).
    parent: Vec<Option<usize>>,
    /// Sorted vertex group of each node; may be empty for internal nodes.
    preimage: Vec<Vec<u32>>,
    /// Vertex -> forest node (index `v-1`).
    eta: Vec<usize>,
}

/// Structural report produced by [`GeneralizedEliminationForest::validate`].
#[derive(Debug, Clone)]
pub struct GefReport {
    pub roots: usize,
    pub max_children: usize,
    pub topological_height: u32,
    pub height: u64,
    /// Observed max of `|eta^{-1}(x)| / (n/2^depth)^alpha` over nodes.
    pub preimage_constant: f64,
    /// Observed max of `|N(eta^{-1}(subtree[x]))| / (n/2^depth)^alpha`.
    pub neighborhood_constant: f64,
}

impl GeneralizedEliminationForest {
    pub fn node_count(&self) -> usize {
        self.parent.len()
    }

    pub fn parent(&self, x: usize) -> Option<usize> {
        self.parent[x]
    }

    pub fn preimage(&self, x: usize) -> &[u32] {
        &self.preimage[x]
    }

    pub fn eta(&self, v: u32) -> usize {
        self.eta[v as usize - 1]
    }

    pub fn children(&self, x: usize) -> Vec<usize> {
        (0..self.parent.len()).filter(|&y| self.parent[y] == Some(x)).collect()
    }

    fn depth(&self, x: usize) -> u32 {
        let mut d = 0;
        let mut y = x;
        while let Some(p) = self.parent[y] {
            y = p;
            d += 1;
        }
        d
    }

    fn is_node_ancestor(&self, a: usize, b: usize) -> bool {
        let mut y = b;
        loop {
            if y == a {
                return true;
            }
            match self.parent[y] {
                Some(p) => y = p,
                None => return false,
            }
        }
    }

    /// Vertices mapped into the subtree rooted at `x`.
    pub fn subtree_preimage(&self, x: usize) -> Vec<u32> {
        let mut out = Vec::new();
        for (i, &node) in self.eta.iter().enumerate() {
            if self.is_node_ancestor(x, node) {
                out.push(i as u32 + 1);
            }
        }
        out
    }

    /// Height: the largest total group size along a root-to-node path.
    pub fn height(&self) -> u64 {
        (0..self.node_count())
            .map(|x| {
                let mut total = self.preimage[x].len() as u64;
                let mut y = x;
                while let Some(p) = self.parent[y] {
                    y = p;
                    total += self.preimage[y].len() as u64;
                }
                total
            })
            .max()
            .unwrap_or(0)
    }

    /// Expands every node's group into a path (ascending vertex order),
    /// producing an ordinary elimination forest of the same height.
    pub fn to_elimination_forest(&self, n: u32) -> Result<EliminationForest> {
        let mut parent = vec![0u32; n as usize];
        // bottom[x]: deepest expanded vertex on the path from the root to x
        // (None while the chain so far holds only empty groups)
        let mut bottom: Vec<Option<u32>> = vec![None; self.node_count()];
        let mut order: Vec<usize> = (0..self.node_count()).collect();
        order.sort_by_key(|&x| self.depth(x));
        for x in order {
            let mut prev = self.parent[x].and_then(|p| bottom[p]);
            for &v in &self.preimage[x] {
                parent[v as usize - 1] = prev.unwrap_or(0);
                prev = Some(v);
            }
            bottom[x] = prev;
        }
        EliminationForest::from_parents(parent)
    }

    /// Checks the ancestor condition and the structural bounds; `alpha` is the
    /// separability degree used to report the observed constants.
    pub fn validate(&self, g: &Graph, alpha: f64) -> Result<GefReport> {
        let n = g.n();
        if self.eta.len() != n as usize {
            return Err(Error::ForestSizeMismatch { forest: self.eta.len(), graph: n as usize });
        }
        for &(u, v) in g.edges() {
            let (x, y) = (self.eta(u), self.eta(v));
            if !self.is_node_ancestor(x, y) && !self.is_node_ancestor(y, x) {
                return Err(Error::IncomparableEdge(u, v));
            }
        }
        let roots = (0..self.node_count()).filter(|&x| self.parent[x].is_none()).count();
        let max_children = (0..self.node_count())
            .map(|x| self.children(x).len())
            .max()
            .unwrap_or(0);
        let topological_height = (0..self.node_count())
            .map(|x| self.depth(x) + 1)
            .max()
            .unwrap_or(0);
        let mut preimage_constant: f64 = 0.0;
        let mut neighborhood_constant: f64 = 0.0;
        for x in 0..self.node_count() {
            let i = self.depth(x);
            let scale = (n as f64 / 2f64.powi(i as i32)).powf(alpha);
            let sub = self.subtree_preimage(x);
            // |eta^{-1}(subtree[x])| <= n / 2^depth, exactly
            if (sub.len() as u64) << i > n as u64 {
                return Err(Error::SeparatorIntegrity(format!(
                    "subtree at depth {} holds {} vertices > n/2^depth",
                    i,
                    sub.len()
                )));
            }
            preimage_constant = preimage_constant.max(self.preimage[x].len() as f64 / scale);
            let boundary = g.open_neighborhood(&sub);
            neighborhood_constant = neighborhood_constant.max(boundary.len() as f64 / scale);
        }
        Ok(GefReport {
            roots,
            max_children,
            topological_height,
            height: self.height(),
            preimage_constant,
            neighborhood_constant,
        })
    }
}

/// Builds a generalized elimination forest by recursively extracting balanced
/// separators from `oracle` and grouping the remaining components into at most
/// seven parts that halve both the current vertex measure and its boundary.
pub fn build_gef(
    g: &Graph,
    oracle: &mut SeparatorOracle<'_>,
) -> Result<GeneralizedEliminationForest> {
    if g.n() == 0 {
        return Err(Error::SizeBoundExceeded { n: 0, bound: 0 });
    }
    let mut gef = GeneralizedEliminationForest {
        parent: Vec::new(),
        preimage: Vec::new(),
        eta: vec![usize::MAX; g.n() as usize],
    };
    let all: Vec<u32> = g.vertices().collect();
    build_node(g, &all, None, oracle, &mut gef)?;
    debug_assert!(gef.eta.iter().all(|&x| x != usize::MAX));
    Ok(gef)
}

fn build_node(
    g: &Graph,
    a: &[u32],
    above: Option<usize>,
    oracle: &mut SeparatorOracle<'_>,
    gef: &mut GeneralizedEliminationForest,
) -> Result<usize> {
    // H' = G[N[A]], S = N(A)
    let closed = g.closed_neighborhood(a);
    let (h, labels) = g.induced(&closed)?;
    let to_local = |v: u32| labels.binary_search(&v).unwrap() as u32 + 1;
    let a_local: Vec<u32> = a.iter().map(|&v| to_local(v)).collect();
    let s: Vec<u32> = g.open_neighborhood(a);
    let s_local: Vec<u32> = s.iter().map(|&v| to_local(v)).collect();

    let x = oracle(&h, &a_local)?;
    if !is_balanced_separator(&h, &a_local, &x) {
        return Err(Error::SeparatorIntegrity("oracle separator does not halve the measure".into()));
    }
    let y = oracle(&h, &s_local)?;
    if !is_balanced_separator(&h, &s_local, &y) {
        return Err(Error::SeparatorIntegrity("oracle separator does not halve the boundary".into()));
    }
    let mut z_local: Vec<u32> = x.iter().chain(y.iter()).copied().collect();
    z_local.sort_unstable();
    z_local.dedup();

    // components of H' - Z, grouped into <= 7 parts with both halving bounds
    let rest: Vec<u32> = h.vertices().filter(|v| z_local.binary_search(v).is_err()).collect();
    let comps: Vec<Vec<u32>> = if rest.is_empty() {
        Vec::new()
    } else {
        let (hz, hz_labels) = h.induced(&rest)?;
        hz.components()
            .into_iter()
            .map(|c| c.into_iter().map(|v| hz_labels[v as usize - 1]).collect())
            .collect()
    };
    let in_a: Vec<bool> = {
        let mut m = vec![false; h.n() as usize + 1];
        for &v in &a_local {
            m[v as usize] = true;
        }
        m
    };
    let in_s: Vec<bool> = {
        let mut m = vec![false; h.n() as usize + 1];
        for &v in &s_local {
            m[v as usize] = true;
        }
        m
    };
    let weight = |part: &[u32]| -> (usize, usize) {
        let wa = part.iter().filter(|&&v| in_a[v as usize]).count();
        let ws = part.iter().filter(|&&v| in_s[v as usize]).count();
        (wa, ws)
    };
    let (na, ns) = (a_local.len(), s_local.len());

    let mut parts: Vec<Vec<u32>> = comps;
    while parts.len() > 7 {
        // merge the two lightest parts that are not yet above a quarter of
        // either measure; at most six parts can be above
        let mut mergeable: Vec<usize> = (0..parts.len())
            .filter(|&i| {
                let (wa, ws) = weight(&parts[i]);
                4 * wa <= na && (ns == 0 || 4 * ws <= ns)
            })
            .collect();
        assert!(mergeable.len() >= 2, "at most six parts can exceed a quarter");
        mergeable.sort_by_key(|&i| (parts[i].len(), parts[i].first().copied()));
        let (i, j) = (mergeable[0].min(mergeable[1]), mergeable[0].max(mergeable[1]));
        let merged = parts.remove(j);
        parts[i].extend(merged);
        parts[i].sort_unstable();
    }
    for p in &parts {
        let (wa, ws) = weight(p);
        if 2 * wa > na || (ns > 0 && 2 * ws > ns) {
            return Err(Error::SeparatorIntegrity("component grouping violates a halving bound".into()));
        }
    }

    // the node itself holds Z ∩ A (in original labels)
    let node = gef.parent.len();
    gef.parent.push(above);
    let group: Vec<u32> = z_local
        .iter()
        .filter(|&&v| in_a[v as usize])
        .map(|&v| labels[v as usize - 1])
        .collect();
    for &v in &group {
        gef.eta[v as usize - 1] = node;
    }
    gef.preimage.push(group);

    for part in parts {
        let sub_a: Vec<u32> = part
            .iter()
            .filter(|&&v| in_a[v as usize])
            .map(|&v| labels[v as usize - 1])
            .collect();
        if !sub_a.is_empty() {
            build_node(g, &sub_a, Some(node), oracle, gef)?;
        }
    }
    Ok(node)
}
