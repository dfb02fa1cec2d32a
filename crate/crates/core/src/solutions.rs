//! Solution families, configurations of partial Hamiltonian-cycle solutions,
//! compliance, minimum-weight compliant sets, and pivotal-vertex analysis.
//!
//! Everything here is exhaustive by design: these enumerators are the trusted
//! oracles the isolation schemes are checked against, so they trade speed for
//! obviousness and refuse instances above a configurable size bound.

use crate::error::Error;
use crate::forest::EliminationForest;
use crate::graph::Graph;
use crate::schemes::{Domain, WeightFunction};
use crate::Result;
use num_bigint::BigUint;
use std::collections::BTreeMap;
use std::fmt::Write as _;

/// The solution families this crate can enumerate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Problem {
    HamiltonianCycle,
    MaximumIndependentSet,
    MaximumMatching,
    /// Minimum vertex sets containing the terminals that induce a connected
    /// subgraph.
    MinimumSteinerTree(Vec<u32>),
    MinimumMaximalMatching,
}

impl Problem {
    pub fn domain(&self) -> Domain {
        match self {
            Problem::HamiltonianCycle
            | Problem::MaximumMatching
            | Problem::MinimumMaximalMatching => Domain::Edge,
            Problem::MaximumIndependentSet | Problem::MinimumSteinerTree(_) => Domain::Vertex,
        }
    }
}

/// Size caps for the exhaustive enumerators.
#[derive(Debug, Clone, Copy)]
pub struct EnumerationLimits {
    pub hamiltonian: usize,
    pub general: usize,
}

impl Default for EnumerationLimits {
    fn default() -> Self {
        EnumerationLimits { hamiltonian: 14, general: 16 }
    }
}

/// A complete, duplicate-free solution family in canonical order: each member
/// is a sorted id list, and members are sorted lexicographically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Family {
    pub domain: Domain,
    pub sets: Vec<Vec<u32>>,
}

impl Family {
    fn canonicalize(domain: Domain, mut sets: Vec<Vec<u32>>) -> Family {
        for s in &mut sets {
            s.sort_unstable();
        }
        sets.sort();
        sets.dedup();
        Family { domain, sets }
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// One solution per line, sorted ids, space-separated.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for set in &self.sets {
            let ids: Vec<String> = set.iter().map(|v| v.to_string()).collect();
            let _ = writeln!(s, "{}", ids.join(" "));
        }
        s
    }
}

fn mask_adjacency(g: &Graph) -> Vec<u32> {
    assert!(g.n() <= 32);
    let mut adj = vec![0u32; g.n() as usize];
    for &(u, v) in g.edges() {
        adj[u as usize - 1] |= 1 << (v - 1);
        adj[v as usize - 1] |= 1 << (u - 1);
    }
    adj
}

fn mask_is_connected(mask: u32, adj: &[u32]) -> bool {
    if mask == 0 {
        return true;
    }
    let mut comp = mask & mask.wrapping_neg();
    loop {
        let mut grown = comp;
        let mut bits = comp;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            grown |= adj[v] & mask;
        }
        if grown == comp {
            return comp == mask;
        }
        comp = grown;
    }
}

fn hamiltonian_cycles(g: &Graph) -> Vec<Vec<u32>> {
    let n = g.n() as usize;
    if n < 3 {
        return Vec::new();
    }
    let adj = mask_adjacency(g);
    let mut out = Vec::new();
    let mut path: Vec<u32> = vec![0]; // 0-based vertex indices, start fixed at 0
    let full: u32 = if n == 32 { u32::MAX } else { (1 << n) - 1 };

    fn extend(
        g: &Graph,
        adj: &[u32],
        path: &mut Vec<u32>,
        visited: u32,
        full: u32,
        out: &mut Vec<Vec<u32>>,
    ) {
        let last = *path.last().unwrap();
        if visited == full {
            // close the cycle; count each cycle once by orienting it so that
            // the second vertex is smaller than the last
            if adj[last as usize] & 1 != 0 && path[1] < last {
                let mut ids: Vec<u32> = path
                    .windows(2)
                    .map(|w| g.edge_id(w[0] + 1, w[1] + 1).unwrap())
                    .collect();
                ids.push(g.edge_id(last + 1, 1).unwrap());
                ids.sort_unstable();
                out.push(ids);
            }
            return;
        }
        let mut cand = adj[last as usize] & !visited;
        while cand != 0 {
            let v = cand.trailing_zeros();
            cand &= cand - 1;
            path.push(v);
            extend(g, adj, path, visited | (1 << v), full, out);
            path.pop();
        }
    }
    extend(g, &adj, &mut path, 1, full, &mut out);
    out
}

fn maximum_independent_sets(g: &Graph) -> Vec<Vec<u32>> {
    let n = g.n() as usize;
    let adj = mask_adjacency(g);
    let mut best = 0u32;
    let mut out: Vec<u32> = Vec::new(); // masks
    for mask in 0u32..(1u64 << n) as u32 {
        let mut ok = true;
        let mut bits = mask;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            if adj[v] & mask != 0 {
                ok = false;
                break;
            }
        }
        if !ok {
            continue;
        }
        let size = mask.count_ones();
        if size > best {
            best = size;
            out.clear();
        }
        if size == best {
            out.push(mask);
        }
    }
    out.into_iter()
        .map(|m| (0..n as u32).filter(|v| m >> v & 1 == 1).map(|v| v + 1).collect())
        .collect()
}

/// Visits every matching of `g` exactly once as (edge ids, covered mask).
fn visit_matchings(g: &Graph, visit: &mut dyn FnMut(&[u32], u32)) {
    let edges = g.edges();
    let mut chosen: Vec<u32> = Vec::new();
    fn rec(
        edges: &[(u32, u32)],
        idx: usize,
        covered: u32,
        chosen: &mut Vec<u32>,
        visit: &mut dyn FnMut(&[u32], u32),
    ) {
        if idx == edges.len() {
            visit(chosen, covered);
            return;
        }
        let (u, v) = edges[idx];
        rec(edges, idx + 1, covered, chosen, visit);
        let bits = (1 << (u - 1)) | (1 << (v - 1));
        if covered & bits == 0 {
            chosen.push(idx as u32 + 1);
            rec(edges, idx + 1, covered | bits, chosen, visit);
            chosen.pop();
        }
    }
    rec(edges, 0, 0, &mut chosen, visit);
}

fn maximum_matchings(g: &Graph) -> Vec<Vec<u32>> {
    let mut best = 0usize;
    let mut out: Vec<Vec<u32>> = Vec::new();
    visit_matchings(g, &mut |ids, _| {
        if ids.len() > best {
            best = ids.len();
            out.clear();
        }
        if ids.len() == best {
            out.push(ids.to_vec());
        }
    });
    out
}

fn minimum_maximal_matchings(g: &Graph) -> Vec<Vec<u32>> {
    let edges = g.edges();
    let mut best = usize::MAX;
    let mut out: Vec<Vec<u32>> = Vec::new();
    visit_matchings(g, &mut |ids, covered| {
        let maximal = edges
            .iter()
            .all(|&(u, v)| covered & ((1 << (u - 1)) | (1 << (v - 1))) != 0 || u == v);
        if !maximal {
            return;
        }
        if ids.len() < best {
            best = ids.len();
            out.clear();
        }
        if ids.len() == best {
            out.push(ids.to_vec());
        }
    });
    out
}

fn minimum_steiner_trees(g: &Graph, terminals: &[u32]) -> Result<Vec<Vec<u32>>> {
    let n = g.n() as usize;
    let adj = mask_adjacency(g);
    let mut t_mask: u32 = 0;
    for &v in terminals {
        if v == 0 || v > g.n() {
            return Err(Error::VertexOutOfRange(v, g.n()));
        }
        t_mask |= 1 << (v - 1);
    }
    let mut best = u32::MAX;
    let mut out: Vec<u32> = Vec::new();
    for mask in 0u32..(1u64 << n) as u32 {
        if mask & t_mask != t_mask || !mask_is_connected(mask, &adj) {
            continue;
        }
        let size = mask.count_ones();
        if size < best {
            best = size;
            out.clear();
        }
        if size == best {
            out.push(mask);
        }
    }
    Ok(out
        .into_iter()
        .map(|m| (0..n as u32).filter(|v| m >> v & 1 == 1).map(|v| v + 1).collect())
        .collect())
}

/// Exhaustively enumerates the complete solution family of `problem` on `g`.
pub fn enumerate_family(problem: &Problem, g: &Graph, limits: EnumerationLimits) -> Result<Family> {
    let n = g.n() as usize;
    let bound = match problem {
        Problem::HamiltonianCycle => limits.hamiltonian,
        _ => limits.general,
    };
    if n > bound {
        return Err(Error::SizeBoundExceeded { n, bound });
    }
    let sets = match problem {
        Problem::HamiltonianCycle => hamiltonian_cycles(g),
        Problem::MaximumIndependentSet => maximum_independent_sets(g),
        Problem::MaximumMatching => maximum_matchings(g),
        Problem::MinimumSteinerTree(t) => minimum_steiner_trees(g, t)?,
        Problem::MinimumMaximalMatching => minimum_maximal_matchings(g),
    };
    Ok(Family::canonicalize(problem.domain(), sets))
}

// ---------------------------------------------------------------------------
// Subgraph views, partial solutions and configurations
// ---------------------------------------------------------------------------

/// A subgraph of a host graph keeping original vertex labels and edge ids.
#[derive(Debug, Clone)]
pub struct SubgraphView {
    vertices: Vec<u32>,
    edges: Vec<(u32, u32, u32)>, // (host edge id, u, v), ascending by id
}

impl SubgraphView {
    pub fn whole(g: &Graph) -> SubgraphView {
        SubgraphView {
            vertices: g.vertices().collect(),
            edges: g
                .edges()
                .iter()
                .enumerate()
                .map(|(i, &(u, v))| (i as u32 + 1, u, v))
                .collect(),
        }
    }

    /// Induced subgraph on a vertex set.
    pub fn induced(g: &Graph, verts: &[u32]) -> SubgraphView {
        let mut vertices: Vec<u32> = verts.to_vec();
        vertices.sort_unstable();
        vertices.dedup();
        let edges = g
            .edges()
            .iter()
            .enumerate()
            .filter(|(_, &(u, v))| {
                vertices.binary_search(&u).is_ok() && vertices.binary_search(&v).is_ok()
            })
            .map(|(i, &(u, v))| (i as u32 + 1, u, v))
            .collect();
        SubgraphView { vertices, edges }
    }

    /// The interval `G<s,t,s',t'>`: vertices `{s..=t} ∪ {s'..=t'}` and the
    /// host edges with one endpoint in each range.
    pub fn interval(g: &Graph, s: u32, t: u32, s2: u32, t2: u32) -> Result<SubgraphView> {
        if !(1 <= s && s <= t && t <= g.n() && 1 <= s2 && s2 <= t2 && t2 <= g.n()) {
            return Err(Error::VertexOutOfRange(t.max(t2), g.n()));
        }
        let in_a = |v: u32| s <= v && v <= t;
        let in_b = |v: u32| s2 <= v && v <= t2;
        let mut vertices: Vec<u32> = (s..=t).chain(s2..=t2).collect();
        vertices.sort_unstable();
        vertices.dedup();
        let edges = g
            .edges()
            .iter()
            .enumerate()
            .filter(|(_, &(u, v))| (in_a(u) && in_b(v)) || (in_a(v) && in_b(u)))
            .map(|(i, &(u, v))| (i as u32 + 1, u, v))
            .collect();
        Ok(SubgraphView { vertices, edges })
    }

    pub fn vertices(&self) -> &[u32] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(u32, u32, u32)] {
        &self.edges
    }

    pub fn contains_vertex(&self, v: u32) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    fn endpoints(&self, id: u32) -> Option<(u32, u32)> {
        self.edges
            .binary_search_by_key(&id, |&(i, _, _)| i)
            .ok()
            .map(|idx| (self.edges[idx].1, self.edges[idx].2))
    }

    pub fn edge_pairs(&self, ids: &[u32]) -> Result<Vec<(u32, u32)>> {
        ids.iter()
            .map(|&id| self.endpoints(id).ok_or(Error::WeightDomain(id)))
            .collect()
    }
}

/// An edge set in which every vertex has degree at most two and no cycle
/// exists.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct PartialSolution {
    ids: Vec<u32>,
}

impl PartialSolution {
    /// Validates the degree and acyclicity invariants inside `view`.
    pub fn new(view: &SubgraphView, ids: &[u32]) -> Result<PartialSolution> {
        let mut ids: Vec<u32> = ids.to_vec();
        ids.sort_unstable();
        ids.dedup();
        let pairs = view.edge_pairs(&ids)?;
        let mut degree: BTreeMap<u32, u8> = BTreeMap::new();
        for &(u, v) in &pairs {
            for w in [u, v] {
                let d = degree.entry(w).or_insert(0);
                *d += 1;
                if *d > 2 {
                    return Err(Error::InvalidPartialSolution(format!(
                        "vertex {w} has degree 3"
                    )));
                }
            }
        }
        if has_cycle(&pairs) {
            return Err(Error::InvalidPartialSolution("edge set contains a cycle".into()));
        }
        Ok(PartialSolution { ids })
    }

    pub fn ids(&self) -> &[u32] {
        &self.ids
    }
}

fn has_cycle(pairs: &[(u32, u32)]) -> bool {
    let mut parent: BTreeMap<u32, u32> = BTreeMap::new();
    fn find(parent: &mut BTreeMap<u32, u32>, v: u32) -> u32 {
        let p = *parent.entry(v).or_insert(v);
        if p == v {
            v
        } else {
            let r = find(parent, p);
            parent.insert(v, r);
            r
        }
    }
    for &(u, v) in pairs {
        let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
        if ru == rv {
            return true;
        }
        parent.insert(ru, rv);
    }
    false
}

/// A boundary state `(V0, V1, V2, M)`: a partition of the boundary set by
/// degree class, plus a matching on the degree-one class recording which path
/// endpoints belong together.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Configuration {
    v0: Vec<u32>,
    v1: Vec<u32>,
    v2: Vec<u32>,
    matching: Vec<(u32, u32)>,
}

impl Configuration {
    pub fn new(
        v0: Vec<u32>,
        v1: Vec<u32>,
        v2: Vec<u32>,
        matching: Vec<(u32, u32)>,
    ) -> Result<Configuration> {
        let mut c = Configuration { v0, v1, v2, matching };
        c.v0.sort_unstable();
        c.v1.sort_unstable();
        c.v2.sort_unstable();
        c.matching = c.matching.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
        c.matching.sort_unstable();
        for part in [&c.v0, &c.v1, &c.v2] {
            if part.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidConfiguration("repeated vertex in a class".into()));
            }
        }
        for (a, b) in [(&c.v0, &c.v1), (&c.v0, &c.v2), (&c.v1, &c.v2)] {
            if a.iter().any(|v| b.binary_search(v).is_ok()) {
                return Err(Error::InvalidConfiguration("degree classes overlap".into()));
            }
        }
        let mut used: Vec<u32> = Vec::new();
        for &(a, b) in &c.matching {
            if a == b || c.v1.binary_search(&a).is_err() || c.v1.binary_search(&b).is_err() {
                return Err(Error::InvalidConfiguration("matching pair outside V1".into()));
            }
            used.push(a);
            used.push(b);
        }
        used.sort_unstable();
        if used.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidConfiguration("matching reuses a vertex".into()));
        }
        Ok(c)
    }

    pub fn empty() -> Configuration {
        Configuration { v0: vec![], v1: vec![], v2: vec![], matching: vec![] }
    }

    pub fn v0(&self) -> &[u32] {
        &self.v0
    }

    pub fn v1(&self) -> &[u32] {
        &self.v1
    }

    pub fn v2(&self) -> &[u32] {
        &self.v2
    }

    pub fn matching(&self) -> &[(u32, u32)] {
        &self.matching
    }

    /// The boundary set `X = V0 ∪ V1 ∪ V2`, sorted.
    pub fn boundary(&self) -> Vec<u32> {
        let mut x: Vec<u32> = self.v0.iter().chain(&self.v1).chain(&self.v2).copied().collect();
        x.sort_unstable();
        x
    }

    /// Whether the matching covers V1 exactly (it may not when a traced path
    /// escapes the boundary).
    pub fn is_proper(&self) -> bool {
        self.matching.len() * 2 == self.v1.len()
    }
}

/// All perfect matchings on a sorted element list, in lexicographic order of
/// their sorted pair lists.
pub fn perfect_matchings(elems: &[u32]) -> Vec<Vec<(u32, u32)>> {
    if elems.len() % 2 != 0 {
        return Vec::new();
    }
    if elems.is_empty() {
        return vec![Vec::new()];
    }
    let first = elems[0];
    let mut out = Vec::new();
    for i in 1..elems.len() {
        let partner = elems[i];
        let rest: Vec<u32> = elems[1..]
            .iter()
            .copied()
            .filter(|&v| v != partner)
            .collect();
        for mut sub in perfect_matchings(&rest) {
            let mut m = vec![(first, partner)];
            m.append(&mut sub);
            out.push(m);
        }
    }
    out
}

/// All configurations on a boundary set: every partition `(V0, V1, V2)` with
/// `|V1|` even, combined with every perfect matching on `V1`.
pub fn enumerate_configurations(x: &[u32]) -> Vec<Configuration> {
    let mut sorted: Vec<u32> = x.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let k = sorted.len();
    let mut out = Vec::new();
    let mut assignment = vec![0u8; k];
    loop {
        let v0: Vec<u32> = (0..k).filter(|&i| assignment[i] == 0).map(|i| sorted[i]).collect();
        let v1: Vec<u32> = (0..k).filter(|&i| assignment[i] == 1).map(|i| sorted[i]).collect();
        let v2: Vec<u32> = (0..k).filter(|&i| assignment[i] == 2).map(|i| sorted[i]).collect();
        if v1.len() % 2 == 0 {
            for m in perfect_matchings(&v1) {
                out.push(
                    Configuration::new(v0.clone(), v1.clone(), v2.clone(), m)
                        .expect("constructed configurations are valid"),
                );
            }
        }
        // next ternary assignment
        let mut i = 0;
        loop {
            if i == k {
                out.sort();
                return out;
            }
            if assignment[i] < 2 {
                assignment[i] += 1;
                break;
            }
            assignment[i] = 0;
            i += 1;
        }
    }
}

/// Configuration of an abstract edge list on `x`: degree classes within `x`
/// and the pairs of degree-one boundary vertices joined by a path. Requires
/// max degree two; tolerates cycles (they contribute no endpoints).
pub fn configuration_of_pairs(pairs: &[(u32, u32)], x: &[u32]) -> Result<Configuration> {
    let mut xs: Vec<u32> = x.to_vec();
    xs.sort_unstable();
    xs.dedup();
    let mut adjacency: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
    for &(u, v) in pairs {
        adjacency.entry(u).or_default().push(v);
        adjacency.entry(v).or_default().push(u);
    }
    if adjacency.values().any(|l| l.len() > 2) {
        return Err(Error::InvalidPartialSolution("vertex of degree 3".into()));
    }
    let degree = |v: u32| adjacency.get(&v).map_or(0, |l| l.len());
    let v0: Vec<u32> = xs.iter().copied().filter(|&v| degree(v) == 0).collect();
    let v1: Vec<u32> = xs.iter().copied().filter(|&v| degree(v) == 1).collect();
    let v2: Vec<u32> = xs.iter().copied().filter(|&v| degree(v) == 2).collect();
    // trace each path from its endpoints
    let mut matching = Vec::new();
    let mut seen: Vec<u32> = Vec::new();
    for (&start, l) in &adjacency {
        if l.len() != 1 || seen.contains(&start) {
            continue;
        }
        let mut prev = start;
        let mut cur = l[0];
        while degree(cur) == 2 {
            let next = adjacency[&cur].iter().copied().find(|&w| w != prev).unwrap();
            prev = cur;
            cur = next;
        }
        seen.push(start);
        seen.push(cur);
        if xs.binary_search(&start).is_ok() && xs.binary_search(&cur).is_ok() {
            matching.push((start.min(cur), start.max(cur)));
        }
    }
    Configuration::new(v0, v1, v2, matching)
}

/// Configuration of a partial solution on the boundary `x`.
pub fn configuration_of(
    view: &SubgraphView,
    s: &PartialSolution,
    x: &[u32],
) -> Result<Configuration> {
    let pairs = view.edge_pairs(s.ids())?;
    configuration_of_pairs(&pairs, x)
}

/// Compliance: `S ∩ M = ∅` and `S ∪ M` forms one simple cycle visiting
/// exactly the view's vertices outside `V2`. A cycle on fewer than three
/// vertices does not exist, except the empty cycle on zero vertices, which
/// only the empty solution satisfies.
pub fn is_compliant(view: &SubgraphView, edge_ids: &[u32], c: &Configuration) -> Result<bool> {
    let pairs = view.edge_pairs(edge_ids)?;
    // S and M must be disjoint as edge sets
    for &(u, v) in &pairs {
        if c.matching.contains(&(u.min(v), u.max(v))) {
            return Ok(false);
        }
    }
    let w: Vec<u32> = view
        .vertices
        .iter()
        .copied()
        .filter(|v| c.v2.binary_search(v).is_err())
        .collect();
    let union: Vec<(u32, u32)> = pairs.iter().copied().chain(c.matching.iter().copied()).collect();
    if w.is_empty() {
        return Ok(union.is_empty());
    }
    if w.len() < 3 {
        return Ok(false);
    }
    if union.len() != w.len() {
        return Ok(false);
    }
    // every vertex of W has degree exactly 2, nothing else is touched
    let mut deg: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for (i, &(u, v)) in union.iter().enumerate() {
        deg.entry(u).or_default().push(i);
        deg.entry(v).or_default().push(i);
    }
    for &v in &w {
        if deg.get(&v).map_or(0, |l| l.len()) != 2 {
            return Ok(false);
        }
    }
    if deg.keys().any(|v| w.binary_search(v).is_err()) {
        return Ok(false);
    }
    // walk the 2-regular union from one vertex; a single cycle covers all of W
    let start = w[0];
    let mut visited = 1usize;
    let mut cur = start;
    let mut via = deg[&start][0];
    loop {
        let (u, v) = union[via];
        let next = if u == cur { v } else { u };
        if next == start {
            break;
        }
        visited += 1;
        let edges = &deg[&next];
        via = if edges[0] == via { edges[1] } else { edges[0] };
        cur = next;
        if visited > w.len() {
            return Ok(false);
        }
    }
    Ok(visited == w.len())
}

/// Candidate solutions for compliance queries: edge sets of the view with
/// maximum degree two and at most one cycle (a compliant set is either
/// acyclic or a single closed cycle).
fn visit_candidate_solutions(view: &SubgraphView, visit: &mut dyn FnMut(&[u32])) {
    // backtracking makes a persistent union-find awkward; views are small, so
    // recount cycles from scratch whenever an edge is taken
    fn cycle_count(view: &SubgraphView, chosen: &[u32]) -> u32 {
        let pairs = view.edge_pairs(chosen).unwrap();
        let mut parent: BTreeMap<u32, u32> = BTreeMap::new();
        fn find(parent: &mut BTreeMap<u32, u32>, v: u32) -> u32 {
            let p = *parent.entry(v).or_insert(v);
            if p == v {
                v
            } else {
                let r = find(parent, p);
                parent.insert(v, r);
                r
            }
        }
        let mut cycles = 0;
        for &(u, v) in &pairs {
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            if ru == rv {
                cycles += 1;
            } else {
                parent.insert(ru, rv);
            }
        }
        cycles
    }

    fn rec(
        view: &SubgraphView,
        idx: usize,
        chosen: &mut Vec<u32>,
        degree: &mut BTreeMap<u32, u8>,
        visit: &mut dyn FnMut(&[u32]),
    ) {
        if idx == view.edges().len() {
            visit(chosen);
            return;
        }
        let (id, u, v) = view.edges()[idx];
        rec(view, idx + 1, chosen, degree, visit);
        if degree.get(&u).copied().unwrap_or(0) < 2 && degree.get(&v).copied().unwrap_or(0) < 2 {
            chosen.push(id);
            if cycle_count(view, chosen) <= 1 {
                *degree.entry(u).or_insert(0) += 1;
                *degree.entry(v).or_insert(0) += 1;
                rec(view, idx + 1, chosen, degree, visit);
                *degree.get_mut(&u).unwrap() -= 1;
                *degree.get_mut(&v).unwrap() -= 1;
            }
            chosen.pop();
        }
    }
    let mut chosen: Vec<u32> = Vec::new();
    let mut degree: BTreeMap<u32, u8> = BTreeMap::new();
    rec(view, 0, &mut chosen, &mut degree, visit);
}

/// Minimum-weight classification of every realized configuration on `x`:
/// maps each configuration to its minimum solution weight and all solutions
/// attaining it.
pub fn compliant_min_map(
    omega: &WeightFunction,
    view: &SubgraphView,
    x: &[u32],
) -> Result<BTreeMap<Configuration, (BigUint, Vec<Vec<u32>>)>> {
    let mut xs: Vec<u32> = x.to_vec();
    xs.sort_unstable();
    xs.dedup();
    let mut map: BTreeMap<Configuration, (BigUint, Vec<Vec<u32>>)> = BTreeMap::new();
    let mut error: Option<Error> = None;
    visit_candidate_solutions(view, &mut |ids| {
        if error.is_some() {
            return;
        }
        let pairs = match view.edge_pairs(ids) {
            Ok(p) => p,
            Err(e) => {
                error = Some(e);
                return;
            }
        };
        // every non-boundary vertex must be saturated by the solution
        let mut deg: BTreeMap<u32, u8> = BTreeMap::new();
        for &(u, v) in &pairs {
            *deg.entry(u).or_insert(0) += 1;
            *deg.entry(v).or_insert(0) += 1;
        }
        for &v in view.vertices() {
            if xs.binary_search(&v).is_err() && deg.get(&v).copied().unwrap_or(0) != 2 {
                return;
            }
        }
        let weight = match omega.total(ids) {
            Ok(w) => w,
            Err(e) => {
                error = Some(e);
                return;
            }
        };
        let d = |v: u32| deg.get(&v).copied().unwrap_or(0);
        let v0: Vec<u32> = xs.iter().copied().filter(|&v| d(v) == 2).collect();
        let v1: Vec<u32> = xs.iter().copied().filter(|&v| d(v) == 1).collect();
        let v2: Vec<u32> = xs.iter().copied().filter(|&v| d(v) == 0).collect();
        for m in perfect_matchings(&v1) {
            let c = Configuration::new(v0.clone(), v1.clone(), v2.clone(), m)
                .expect("classes are disjoint by construction");
            match is_compliant(view, ids, &c) {
                Ok(true) => {
                    let entry = map.entry(c).or_insert_with(|| (weight.clone(), Vec::new()));
                    if weight < entry.0 {
                        *entry = (weight.clone(), vec![ids.to_vec()]);
                    } else if weight == entry.0 {
                        entry.1.push(ids.to_vec());
                    }
                }
                Ok(false) => {}
                Err(e) => error = Some(e),
            }
        }
    });
    if let Some(e) = error {
        return Err(e);
    }
    Ok(map)
}

/// All compliant solutions of minimum weight for one configuration; empty if
/// none is compliant. The configuration must live on the boundary `x`.
pub fn min_compliant(
    omega: &WeightFunction,
    view: &SubgraphView,
    x: &[u32],
    c: &Configuration,
) -> Result<Vec<Vec<u32>>> {
    let mut xs: Vec<u32> = x.to_vec();
    xs.sort_unstable();
    xs.dedup();
    if c.boundary() != xs {
        return Err(Error::InvalidConfiguration(
            "configuration does not partition the boundary".into(),
        ));
    }
    let mut best: Option<(BigUint, Vec<Vec<u32>>)> = None;
    let mut error: Option<Error> = None;
    visit_candidate_solutions(view, &mut |ids| {
        if error.is_some() {
            return;
        }
        match is_compliant(view, ids, c) {
            Ok(false) => return,
            Ok(true) => {}
            Err(e) => {
                error = Some(e);
                return;
            }
        }
        let weight = match omega.total(ids) {
            Ok(w) => w,
            Err(e) => {
                error = Some(e);
                return;
            }
        };
        match &mut best {
            None => best = Some((weight, vec![ids.to_vec()])),
            Some((w, sets)) => {
                if weight < *w {
                    *w = weight;
                    *sets = vec![ids.to_vec()];
                } else if weight == *w {
                    sets.push(ids.to_vec());
                }
            }
        }
    });
    if let Some(e) = error {
        return Err(e);
    }
    Ok(best.map(|(_, sets)| sets).unwrap_or_default())
}

// ---------------------------------------------------------------------------
// Pivotal vertices and the exchange property
// ---------------------------------------------------------------------------

/// Vertices `u ∈ A △ B` whose strict-ancestor trace agrees in both sets:
/// `tail(u) ∩ A = tail(u) ∩ B`.
pub fn pivotal_vertices(a: &[u32], b: &[u32], f: &EliminationForest) -> Result<Vec<u32>> {
    let mut a: Vec<u32> = a.to_vec();
    let mut b: Vec<u32> = b.to_vec();
    a.sort_unstable();
    b.sort_unstable();
    if a == b {
        return Err(Error::EqualSets);
    }
    let in_a = |v: u32| a.binary_search(&v).is_ok();
    let in_b = |v: u32| b.binary_search(&v).is_ok();
    let mut out = Vec::new();
    for v in 1..=f.n() as u32 {
        if in_a(v) == in_b(v) {
            continue;
        }
        if f.tail(v).iter().all(|&x| in_a(x) == in_b(x)) {
            out.push(v);
        }
    }
    Ok(out)
}

/// Edge variant: `u` is edge-pivotal for edge sets `A`, `B` when every edge
/// from `u` to a strict ancestor lies in both or neither set, some edge from
/// `u` into its subtree lies in exactly one, and no strict ancestor of `u`
/// has both properties.
pub fn edge_pivotal_vertices(
    g: &Graph,
    f: &EliminationForest,
    a: &[u32],
    b: &[u32],
) -> Result<Vec<u32>> {
    let mut a: Vec<u32> = a.to_vec();
    let mut b: Vec<u32> = b.to_vec();
    a.sort_unstable();
    b.sort_unstable();
    if a == b {
        return Err(Error::EqualSets);
    }
    let in_a = |id: u32| a.binary_search(&id).is_ok();
    let in_b = |id: u32| b.binary_search(&id).is_ok();
    let candidate = |u: u32| -> bool {
        let tail = f.tail(u);
        let agrees_above = tail.iter().all(|&x| match g.edge_id(u, x) {
            Some(id) => in_a(id) == in_b(id),
            None => true,
        });
        if !agrees_above {
            return false;
        }
        (1..=g.n()).any(|x| {
            x != u
                && f.is_ancestor(u, x)
                && g.edge_id(u, x).is_some_and(|id| in_a(id) != in_b(id))
        })
    };
    let mut out = Vec::new();
    for u in 1..=g.n() {
        if candidate(u) && !f.tail(u).iter().any(|&x| candidate(x)) {
            out.push(u);
        }
    }
    Ok(out)
}

/// Exhaustive exchange-property check: whenever the family has two or more
/// minimizers under `omega`, some pair of minimizers must admit exactly one
/// pivotal (resp. edge-pivotal) vertex.
pub fn exchange_check(
    problem: &Problem,
    g: &Graph,
    f: &EliminationForest,
    omega: &WeightFunction,
    limits: EnumerationLimits,
) -> Result<bool> {
    match problem {
        Problem::MaximumIndependentSet | Problem::MaximumMatching => {}
        _ => {
            return Err(Error::SchemeConfig(
                "exchange check applies to maximum independent sets and maximum matchings".into(),
            ))
        }
    }
    let family = enumerate_family(problem, g, limits)?;
    let mut min_weight: Option<BigUint> = None;
    let mut minimizers: Vec<&Vec<u32>> = Vec::new();
    for set in &family.sets {
        let w = omega.total(set)?;
        match &min_weight {
            None => {
                min_weight = Some(w);
                minimizers = vec![set];
            }
            Some(best) => {
                if w < *best {
                    min_weight = Some(w);
                    minimizers = vec![set];
                } else if w == *best {
                    minimizers.push(set);
                }
            }
        }
    }
    if minimizers.len() <= 1 {
        return Ok(true);
    }
    for i in 0..minimizers.len() {
        for j in i + 1..minimizers.len() {
            let pivots = match problem {
                Problem::MaximumIndependentSet => {
                    pivotal_vertices(minimizers[i], minimizers[j], f)?
                }
                Problem::MaximumMatching => {
                    edge_pivotal_vertices(g, f, minimizers[i], minimizers[j])?
                }
                _ => unreachable!(),
            };
            debug_assert!(
                !pivots.is_empty(),
                "distinct sets admit at least one pivotal vertex"
            );
            if pivots.len() == 1 {
                return Ok(true);
            }
        }
    }
    Ok(false)
}
