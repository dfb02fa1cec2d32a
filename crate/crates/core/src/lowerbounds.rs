//! Constructive adversaries: given any finite tuple of weight functions on a
//! universe, find two subsets they cannot tell apart and build an instance
//! (maximum independent set, Steiner tree, minimum maximal matching or
//! Hamiltonian cycle) whose only two optima are exactly those subsets, with a
//! shallow witnessing decomposition. No weight function of the tuple can then
//! isolate the instance's solution family.

use crate::error::Error;
use crate::forest::EliminationForest;
use crate::graph::Graph;
use crate::solutions::{enumerate_family, EnumerationLimits, Problem};
use crate::td::TreeDecomposition;
use crate::tree::Tree;
use crate::Result;
use std::collections::HashMap;
use std::fmt::Write as _;

/// Instance kinds of the adversarial builders.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LbKind {
    Mis,
    Steiner,
    MinMaxMatching,
    HamiltonianCycle,
}

impl LbKind {
    pub fn name(self) -> &'static str {
        match self {
            LbKind::Mis => "mis",
            LbKind::Steiner => "steiner",
            LbKind::MinMaxMatching => "mmm",
            LbKind::HamiltonianCycle => "hc",
        }
    }
}

/// The shallow decomposition shipped with an instance.
#[derive(Debug, Clone)]
pub enum LbWitness {
    /// Elimination forest of height at most 4.
    Forest(EliminationForest),
    /// Path decomposition of width at most 4.
    Path(TreeDecomposition),
}

/// An adversarial instance: its optimum family is exactly `{optimum_a,
/// optimum_b}` (as universe identifiers) and both optima weigh the same under
/// every weight function of the generating tuple.
#[derive(Debug, Clone)]
pub struct LbInstance {
    pub kind: LbKind,
    pub graph: Graph,
    pub terminals: Option<Vec<u32>>,
    pub optimum_a: Vec<u32>,
    pub optimum_b: Vec<u32>,
    /// For edge-universe kinds: universe identifier of each graph edge
    /// (indexed by edge id - 1). Vertex-universe kinds label vertices by
    /// themselves.
    pub edge_labels: Option<Vec<u32>>,
    pub witness: LbWitness,
}

impl LbInstance {
    /// Maps a set of graph-internal edge ids to universe identifiers.
    fn relabel(&self, ids: &[u32]) -> Vec<u32> {
        match &self.edge_labels {
            None => {
                let mut v = ids.to_vec();
                v.sort_unstable();
                v
            }
            Some(labels) => {
                let mut v: Vec<u32> = ids.iter().map(|&e| labels[e as usize - 1]).collect();
                v.sort_unstable();
                v
            }
        }
    }

    fn problem(&self) -> Problem {
        match self.kind {
            LbKind::Mis => Problem::MaximumIndependentSet,
            LbKind::Steiner => Problem::MinimumSteinerTree(self.terminals.clone().unwrap_or_default()),
            LbKind::MinMaxMatching => Problem::MinimumMaximalMatching,
            LbKind::HamiltonianCycle => Problem::HamiltonianCycle,
        }
    }

    /// Manifest naming the instance, its optima and the edge labeling.
    pub fn manifest(&self) -> String {
        let fmt = |v: &[u32]| {
            v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
        };
        let mut s = String::new();
        let _ = writeln!(s, "kind={}", self.kind.name());
        let _ = writeln!(s, "A={}", fmt(&self.optimum_a));
        let _ = writeln!(s, "B={}", fmt(&self.optimum_b));
        if let Some(t) = &self.terminals {
            let _ = writeln!(s, "terminals={}", fmt(t));
        }
        if let Some(l) = &self.edge_labels {
            let _ = writeln!(s, "edge_labels={}", fmt(l));
        }
        let _ = writeln!(
            s,
            "witness={}",
            match &self.witness {
                LbWitness::Forest(_) => "forest",
                LbWitness::Path(_) => "path-decomposition",
            }
        );
        s
    }
}

fn weigh(omega: &[u64], set: &[u32]) -> u64 {
    set.iter().map(|&i| omega[i as usize - 1]).sum()
}

/// Finds two different subsets `A`, `B` of the universe with `A ∪ B`
/// everything, `|A \ B| = |B \ A| = k`, and equal weight under every supplied
/// function. Searches `k` from `floor(beta * n)` down to 1 and returns the
/// first collision in canonical order.
pub fn find_colliding_pair(
    omegas: &[Vec<u64>],
    beta: (u32, u32),
) -> Result<(Vec<u32>, Vec<u32>)> {
    let n = omegas.first().map_or(0, |w| w.len());
    if n == 0 || omegas.is_empty() {
        return Err(Error::NoCollidingPair);
    }
    if n > 24 {
        return Err(Error::SizeBoundExceeded { n, bound: 24 });
    }
    let kmax = (n as u64 * beta.0 as u64 / beta.1 as u64) as usize;
    for k in (1..=kmax.min(n / 2)).rev() {
        if let Some(pair) = find_colliding_pair_exact(omegas, k) {
            return Ok(pair);
        }
    }
    Err(Error::NoCollidingPair)
}

/// Like [`find_colliding_pair`] but with the difference size fixed to exactly
/// `k`: scans disjoint k-subset pairs with equal fingerprints (their common
/// part would cancel anyway) and completes both sides with the rest of the
/// universe.
pub fn find_colliding_pair_exact(
    omegas: &[Vec<u64>],
    k: usize,
) -> Option<(Vec<u32>, Vec<u32>)> {
    let n = omegas.first().map(|w| w.len())?;
    if k == 0 || 2 * k > n {
        return None;
    }
    let fingerprint = |mask: u32| -> Vec<u64> {
        omegas
            .iter()
            .map(|w| {
                (0..n)
                    .filter(|&i| mask >> i & 1 == 1)
                    .map(|i| w[i])
                    .sum()
            })
            .collect()
    };
    // enumerate k-subsets as masks in lexicographic order of index lists
    let mut combo: Vec<usize> = (0..k).collect();
    let mut seen: HashMap<Vec<u64>, Vec<u32>> = HashMap::new();
    loop {
        let mask: u32 = combo.iter().fold(0, |m, &i| m | 1 << i);
        let fp = fingerprint(mask);
        if let Some(others) = seen.get(&fp) {
            if let Some(&other) = others.iter().find(|&&o| o & mask == 0) {
                let rest: Vec<u32> = (0..n as u32)
                    .filter(|&i| (other | mask) >> i & 1 == 0)
                    .map(|i| i + 1)
                    .collect();
                let complete = |m: u32| -> Vec<u32> {
                    let mut out: Vec<u32> =
                        (0..n as u32).filter(|&i| m >> i & 1 == 1).map(|i| i + 1).collect();
                    out.extend(&rest);
                    out.sort_unstable();
                    out
                };
                return Some((complete(other), complete(mask)));
            }
        }
        seen.entry(fp).or_default().push(mask);
        // next combination
        let mut i = k;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if combo[i] < n - k + i {
                combo[i] += 1;
                for j in i + 1..k {
                    combo[j] = combo[j - 1] + 1;
                }
                break;
            }
        }
    }
}

fn split_pair(n: u32, a: &[u32], b: &[u32]) -> Result<(Vec<u32>, Vec<u32>, Vec<u32>)> {
    let mut a: Vec<u32> = a.to_vec();
    let mut b: Vec<u32> = b.to_vec();
    a.sort_unstable();
    b.sort_unstable();
    let only_a: Vec<u32> = a.iter().copied().filter(|v| b.binary_search(v).is_err()).collect();
    let only_b: Vec<u32> = b.iter().copied().filter(|v| a.binary_search(v).is_err()).collect();
    let shared: Vec<u32> = a.iter().copied().filter(|v| b.binary_search(v).is_ok()).collect();
    if only_a.len() != only_b.len() || only_a.is_empty() {
        return Err(Error::NotConstructible(
            "need two sets with equal, nonempty differences".into(),
        ));
    }
    let mut union: Vec<u32> = a.iter().chain(&b).copied().collect();
    union.sort_unstable();
    union.dedup();
    if union != (1..=n).collect::<Vec<u32>>() {
        return Err(Error::NotConstructible("A and B must cover the universe".into()));
    }
    Ok((only_a, only_b, shared))
}

/// Builder dispatch.
pub fn build_lb_instance(kind: LbKind, n: u32, a: &[u32], b: &[u32]) -> Result<LbInstance> {
    let inst = match kind {
        LbKind::Mis => build_mis_instance(n, a, b)?,
        LbKind::Steiner => build_steiner_instance(n, a, b)?,
        LbKind::MinMaxMatching => build_mmm_instance(n, a, b)?,
        LbKind::HamiltonianCycle => build_hc_instance(n, a, b)?,
    };
    check_structure(&inst)?;
    Ok(inst)
}

/// Structural postcondition common to all builders: the optimum family is
/// exactly the two intended sets and the witness meets its bound.
fn check_structure(inst: &LbInstance) -> Result<()> {
    let family = enumerate_family(&inst.problem(), &inst.graph, EnumerationLimits::default())?;
    let mut optima: Vec<Vec<u32>> = family.sets.iter().map(|s| inst.relabel(s)).collect();
    optima.sort();
    let mut want = vec![inst.optimum_a.clone(), inst.optimum_b.clone()];
    want.sort();
    if optima != want {
        return Err(Error::NotConstructible(format!(
            "optimum family has {} members, expected the two intended ones",
            optima.len()
        )));
    }
    match &inst.witness {
        LbWitness::Forest(f) => {
            let h = f.validate(&inst.graph)?;
            if h > 4 {
                return Err(Error::NotConstructible(format!("forest height {h} > 4")));
            }
        }
        LbWitness::Path(td) => {
            let w = td.validate(&inst.graph)?;
            if !td.is_path() || w > 4 {
                return Err(Error::NotConstructible(format!("path decomposition width {w} > 4")));
            }
        }
    }
    Ok(())
}

/// Two maximum independent sets: a matching `a_i b_i` plus the cross edges
/// `a_i b_1` and `a_1 b_i`; the shared elements stay isolated.
pub fn build_mis_instance(n: u32, a: &[u32], b: &[u32]) -> Result<LbInstance> {
    let (only_a, only_b, _) = split_pair(n, a, b)?;
    let k = only_a.len();
    let mut edges: Vec<(u32, u32)> = Vec::new();
    for i in 0..k {
        edges.push((only_a[i], only_b[i]));
    }
    for i in 1..k {
        edges.push((only_a[i], only_b[0]));
        edges.push((only_a[0], only_b[i]));
    }
    let graph = Graph::new(n, &edges)?;
    // layered forest: a_1 over b_1 over the remaining a_i over their b_i
    let mut parent = vec![0u32; n as usize];
    parent[only_b[0] as usize - 1] = only_a[0];
    for i in 1..k {
        parent[only_a[i] as usize - 1] = only_b[0];
        parent[only_b[i] as usize - 1] = only_a[i];
    }
    let forest = EliminationForest::from_parents(parent)?;
    let mut optimum_a = a.to_vec();
    let mut optimum_b = b.to_vec();
    optimum_a.sort_unstable();
    optimum_b.sort_unstable();
    Ok(LbInstance {
        kind: LbKind::Mis,
        graph,
        terminals: None,
        optimum_a,
        optimum_b,
        edge_labels: None,
        witness: LbWitness::Forest(forest),
    })
}

/// Two minimum Steiner trees over the terminals `A ∩ B`: the differences form
/// two disjoint connector routes of equal length.
pub fn build_steiner_instance(n: u32, a: &[u32], b: &[u32]) -> Result<LbInstance> {
    let (only_a, only_b, shared) = split_pair(n, a, b)?;
    let k = only_a.len();
    if k < 2 {
        return Err(Error::NotConstructible("need difference size at least 2".into()));
    }
    if shared.len() < k {
        return Err(Error::NotConstructible(format!(
            "need at least {k} shared elements, have {}",
            shared.len()
        )));
    }
    let mut edges: Vec<(u32, u32)> = Vec::new();
    let mut parent = vec![0u32; n as usize];
    if k == 2 {
        // 6-cycle through both routes: t1 - a1 - a2 - t* - b2 - b1 - t1,
        // remaining terminals pendant on t1
        let t1 = shared[0];
        let tstar = *shared.last().unwrap();
        edges.push((t1, only_a[0]));
        edges.push((only_a[0], only_a[1]));
        edges.push((only_a[1], tstar));
        edges.push((t1, only_b[0]));
        edges.push((only_b[0], only_b[1]));
        edges.push((only_b[1], tstar));
        for &t in &shared[1..shared.len() - 1] {
            edges.push((t1, t));
        }
        parent[t1 as usize - 1] = tstar;
        parent[only_a[0] as usize - 1] = t1;
        parent[only_b[0] as usize - 1] = t1;
        for &t in &shared[1..shared.len() - 1] {
            parent[t as usize - 1] = t1;
        }
        parent[only_a[1] as usize - 1] = only_a[0];
        parent[only_b[1] as usize - 1] = only_b[0];
    } else {
        // terminals t_1..t_{k-1} hang between the routes; both routes meet in
        // the hubs a_k and b_k, and a_1/b_1 link the hubs to t_1's star
        let t: Vec<u32> = shared[..k - 1].to_vec();
        let hub_a = only_a[k - 1];
        let hub_b = only_b[k - 1];
        for &x in &shared[k - 1..] {
            edges.push((t[0], x));
        }
        for i in 0..k - 1 {
            edges.push((t[i], only_a[i]));
            edges.push((t[i], only_b[i]));
            edges.push((only_a[i], hub_a));
            edges.push((only_b[i], hub_b));
        }
        parent[hub_b as usize - 1] = hub_a;
        for &ti in &t {
            parent[ti as usize - 1] = hub_b;
        }
        for i in 0..k - 1 {
            parent[only_a[i] as usize - 1] = t[i];
            parent[only_b[i] as usize - 1] = t[i];
        }
        for &x in &shared[k - 1..] {
            parent[x as usize - 1] = t[0];
        }
    }
    let graph = Graph::new(n, &edges)?;
    let forest = EliminationForest::from_parents(parent)?;
    let mut optimum_a = a.to_vec();
    let mut optimum_b = b.to_vec();
    optimum_a.sort_unstable();
    optimum_b.sort_unstable();
    Ok(LbInstance {
        kind: LbKind::Steiner,
        graph,
        terminals: Some(shared),
        optimum_a,
        optimum_b,
        edge_labels: None,
        witness: LbWitness::Forest(forest),
    })
}

fn graph_with_labels(
    vertex_count: u32,
    labeled_edges: &[(u32, u32, u32)], // (universe id, u, v)
) -> Result<(Graph, Vec<u32>)> {
    let pairs: Vec<(u32, u32)> = labeled_edges.iter().map(|&(_, u, v)| (u, v)).collect();
    let graph = Graph::new(vertex_count, &pairs)?;
    let mut labels = vec![0u32; graph.m() as usize];
    for &(id, u, v) in labeled_edges {
        let e = graph.edge_id(u, v).expect("edge was just inserted");
        labels[e as usize - 1] = id;
    }
    Ok((graph, labels))
}

/// Two minimum maximal matchings. The universe is an edge set; `3k - 2`
/// shared identifiers are spent on the gadget (pendant edges `d_i` and the
/// cross edges `c_i`, `c'_i`) and the rest become isolated edges contained in
/// both optima, which therefore shift from `A`, `B` to
/// `(A \ B) ∪ K`, `(B \ A) ∪ K`.
pub fn build_mmm_instance(m: u32, a: &[u32], b: &[u32]) -> Result<LbInstance> {
    let (only_a, only_b, shared) = split_pair(m, a, b)?;
    let k = only_a.len();
    if k < 2 {
        return Err(Error::NotConstructible("need difference size at least 2".into()));
    }
    if shared.len() < 3 * k - 2 {
        return Err(Error::NotConstructible(format!(
            "need at least {} shared elements, have {}",
            3 * k - 2,
            shared.len()
        )));
    }
    let kbar = &shared[..3 * k - 2];
    let d_ids = &kbar[..k];
    let c_ids = &kbar[k..2 * k - 1];
    let cp_ids = &kbar[2 * k - 1..];
    let k_rest = &shared[3 * k - 2..];

    let kk = k as u32;
    let vc = |i: u32| i + 1; // v^c_i, i in 0..k
    let va = |i: u32| kk + i + 1;
    let vb = |i: u32| 2 * kk + i + 1;
    let vd = |i: u32| 3 * kk + i + 1;
    let mut vertex_count = 4 * kk;
    let mut labeled: Vec<(u32, u32, u32)> = Vec::new();
    for i in 0..kk {
        labeled.push((only_a[i as usize], vc(i), va(i)));
        labeled.push((only_b[i as usize], vc(i), vb(i)));
        labeled.push((d_ids[i as usize], vc(i), vd(i)));
    }
    for i in 0..kk - 1 {
        labeled.push((c_ids[i as usize], vb(kk - 1), va(i)));
        labeled.push((cp_ids[i as usize], va(kk - 1), vb(i)));
    }
    for &id in k_rest {
        labeled.push((id, vertex_count + 1, vertex_count + 2));
        vertex_count += 2;
    }
    let (graph, labels) = graph_with_labels(vertex_count, &labeled)?;

    let mut parent = vec![0u32; vertex_count as usize];
    parent[vb(kk - 1) as usize - 1] = va(kk - 1);
    for i in 0..kk {
        parent[vc(i) as usize - 1] = vb(kk - 1);
        parent[vd(i) as usize - 1] = vc(i);
        if i != kk - 1 {
            parent[va(i) as usize - 1] = vc(i);
            parent[vb(i) as usize - 1] = vc(i);
        }
    }
    let mut extra = 4 * kk + 1;
    while extra < vertex_count {
        parent[extra as usize] = extra; // second endpoint under the first
        extra += 2;
    }
    let forest = EliminationForest::from_parents(parent)?;

    let mut optimum_a: Vec<u32> = only_a.iter().chain(k_rest).copied().collect();
    let mut optimum_b: Vec<u32> = only_b.iter().chain(k_rest).copied().collect();
    optimum_a.sort_unstable();
    optimum_b.sort_unstable();
    Ok(LbInstance {
        kind: LbKind::MinMaxMatching,
        graph,
        terminals: None,
        optimum_a,
        optimum_b,
        edge_labels: Some(labels),
        witness: LbWitness::Forest(forest),
    })
}

/// Pairing of ring positions used by the Hamiltonian-cycle gadget.
fn hc_pairing(k: usize) -> Vec<(usize, usize)> {
    let mut pairs: Vec<(usize, usize)> = (1..k).map(|j| (j, 2 * k - j)).collect();
    pairs.push((k, 2 * k));
    pairs
}

/// Checks that a perfect matching on ring positions closes each of the two
/// alternating ring matchings into a single cycle.
fn pairing_closes_ring(k: usize, pairs: &[(usize, usize)]) -> bool {
    let close = |ring: &dyn Fn(usize) -> usize| -> bool {
        // walk ring edge, then pairing edge, alternating
        let partner = |v: usize| -> usize {
            pairs
                .iter()
                .find_map(|&(x, y)| if x == v { Some(y) } else if y == v { Some(x) } else { None })
                .unwrap()
        };
        let start = 1usize;
        let mut v = start;
        let mut visited = 0usize;
        loop {
            v = ring(v);
            v = partner(v);
            visited += 2;
            if v == start {
                break;
            }
            if visited > 2 * k {
                return false;
            }
        }
        visited == 2 * k
    };
    // matching a pairs (2j-1, 2j); matching b pairs (2j, 2j+1 mod 2k)
    let ring_a = |v: usize| if v % 2 == 1 { v + 1 } else { v - 1 };
    let ring_b = move |v: usize| {
        if v % 2 == 0 {
            if v == 2 * k {
                1
            } else {
                v + 1
            }
        } else if v == 1 {
            2 * k
        } else {
            v - 1
        }
    };
    close(&ring_a) && close(&ring_b)
}

/// Two Hamiltonian cycles: an alternating ring `a_1 b_1 a_2 b_2 ...` whose
/// shared identifiers are spent on vertex-disjoint connector paths between
/// ring vertices. Every connector is subdivided (length at least two), which
/// forces any Hamiltonian cycle through all connectors and then through
/// either all `a`-edges or all `b`-edges.
pub fn build_hc_instance(m: u32, a: &[u32], b: &[u32]) -> Result<LbInstance> {
    let (only_a, only_b, shared) = split_pair(m, a, b)?;
    let k = only_a.len();
    if k < 3 {
        return Err(Error::NotConstructible("need difference size at least 3".into()));
    }
    if shared.len() < 2 * k {
        return Err(Error::NotConstructible(format!(
            "need at least {} shared elements, have {}",
            2 * k,
            shared.len()
        )));
    }
    let pairs = hc_pairing(k);
    if !pairing_closes_ring(k, &pairs) {
        return Err(Error::NotConstructible("connector pairing does not close the ring".into()));
    }

    let kk = k as u32;
    let ring = |pos: usize| pos as u32; // ring vertex at position 1..=2k
    let mut labeled: Vec<(u32, u32, u32)> = Vec::new();
    for j in 0..k {
        let (x, y) = (2 * j as u32 + 1, 2 * j as u32 + 2);
        labeled.push((only_a[j], x, y));
        let y2 = if y == 2 * kk { 1 } else { y + 1 };
        labeled.push((only_b[j], y, y2));
    }
    // connectors: the last pairing (k, 2k) takes the leftover length
    let mut next_vertex = 2 * kk;
    let mut shared_iter = shared.iter().copied();
    let mut short_internals: Vec<u32> = Vec::new();
    for &(x, y) in &pairs[..k - 1] {
        next_vertex += 1;
        short_internals.push(next_vertex);
        labeled.push((shared_iter.next().unwrap(), ring(x), next_vertex));
        labeled.push((shared_iter.next().unwrap(), next_vertex, ring(y)));
    }
    let long_len = shared.len() - 2 * (k - 1); // >= 2
    let mut long_internals: Vec<u32> = Vec::new();
    {
        let (x, y) = pairs[k - 1];
        let mut prev = ring(x);
        for _ in 0..long_len - 1 {
            next_vertex += 1;
            long_internals.push(next_vertex);
            labeled.push((shared_iter.next().unwrap(), prev, next_vertex));
            prev = next_vertex;
        }
        labeled.push((shared_iter.next().unwrap(), prev, ring(y)));
    }
    debug_assert!(shared_iter.next().is_none());
    let (graph, labels) = graph_with_labels(next_vertex, &labeled)?;

    // width-4 path decomposition over the folded layout
    // sigma = [w_2k, w_1, w_{2k-1}, w_2, w_{2k-2}, ..., w_{k+1}, w_k]
    let mut sigma: Vec<u32> = vec![2 * kk];
    for t in 1..k {
        sigma.push(t as u32);
        sigma.push((2 * k - t) as u32);
    }
    sigma.push(kk);
    let anchor = 2 * kk; // w_2k sits in every bag
    let mut bags: Vec<Vec<u32>> = Vec::new();
    for i in 0..sigma.len() - 2 {
        let mut bag = vec![sigma[i], sigma[i + 1], sigma[i + 2], anchor];
        bag.sort_unstable();
        bag.dedup();
        bags.push(bag);
        // connector run for pairing (t, 2k-t) goes right after window 2t-1
        if i % 2 == 1 {
            let t = (i + 1) / 2;
            if t <= k - 1 {
                let mut bag = vec![sigma[i], sigma[i + 1], sigma[i + 2], anchor, short_internals[t - 1]];
                bag.sort_unstable();
                bag.dedup();
                bags.push(bag);
            }
        }
    }
    if long_internals.len() == 1 {
        bags.push(vec![kk, long_internals[0], anchor]);
    } else {
        for w in long_internals.windows(2) {
            bags.push(vec![kk, w[0], w[1], anchor]);
        }
    }
    let tree_edges: Vec<(usize, usize)> = (1..bags.len()).map(|i| (i - 1, i)).collect();
    let td = TreeDecomposition::new(Tree::new(bags.len(), &tree_edges)?, bags)?;

    let mut optimum_a = a.to_vec();
    let mut optimum_b = b.to_vec();
    optimum_a.sort_unstable();
    optimum_b.sort_unstable();
    Ok(LbInstance {
        kind: LbKind::HamiltonianCycle,
        graph,
        terminals: None,
        optimum_a,
        optimum_b,
        edge_labels: Some(labels),
        witness: LbWitness::Path(td),
    })
}

/// Verification report for an instance against a weight tuple.
#[derive(Debug, Clone)]
pub struct LbVerifyReport {
    pub two_optima: bool,
    pub optima_match: bool,
    pub equal_weights: bool,
    pub witness_ok: bool,
    pub detail: String,
}

impl LbVerifyReport {
    pub fn ok(&self) -> bool {
        self.two_optima && self.optima_match && self.equal_weights && self.witness_ok
    }
}

/// Re-derives the optimum family by brute force and checks: exactly two
/// optima, both as intended, equal under every supplied weight function, and
/// the witnessing decomposition within its bound.
pub fn verify_lb_instance(inst: &LbInstance, omegas: &[Vec<u64>]) -> Result<LbVerifyReport> {
    let family = enumerate_family(&inst.problem(), &inst.graph, EnumerationLimits::default())?;
    let mut optima: Vec<Vec<u32>> = family.sets.iter().map(|s| inst.relabel(s)).collect();
    optima.sort();
    let two_optima = optima.len() == 2;
    let mut want = vec![inst.optimum_a.clone(), inst.optimum_b.clone()];
    want.sort();
    let optima_match = optima == want;
    let equal_weights = omegas
        .iter()
        .all(|w| weigh(w, &inst.optimum_a) == weigh(w, &inst.optimum_b));
    let witness_ok = match &inst.witness {
        LbWitness::Forest(f) => f.validate(&inst.graph).map(|h| h <= 4).unwrap_or(false),
        LbWitness::Path(td) => td
            .validate(&inst.graph)
            .map(|w| w <= 4 && td.is_path())
            .unwrap_or(false),
    };
    let detail = format!(
        "optima={} two={} match={} equal_weights={} witness={}",
        optima.len(),
        two_optima,
        optima_match,
        equal_weights,
        witness_ok
    );
    Ok(LbVerifyReport { two_optima, optima_match, equal_weights, witness_ok, detail })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::stream;
    use rand::Rng;

    #[test]
    fn constant_weights_collide_immediately() {
        let omegas = vec![vec![1u64; 4]];
        let (a, b) = find_colliding_pair(&omegas, (1, 2)).unwrap();
        // all three conditions
        let mut union: Vec<u32> = a.iter().chain(&b).copied().collect();
        union.sort_unstable();
        union.dedup();
        assert_eq!(union, vec![1, 2, 3, 4]);
        let only_a = a.iter().filter(|v| !b.contains(v)).count();
        let only_b = b.iter().filter(|v| !a.contains(v)).count();
        assert_eq!(only_a, only_b);
        assert!(only_a >= 1 && only_a <= 2);
        assert_eq!(weigh(&omegas[0], &a), weigh(&omegas[0], &b));
    }

    #[test]
    fn identity_weights_on_two_elements_do_not_collide() {
        let omegas = vec![vec![1u64, 2]];
        assert!(matches!(
            find_colliding_pair(&omegas, (1, 2)),
            Err(Error::NoCollidingPair)
        ));
    }

    #[test]
    fn random_tuples_collide_and_build_mis_instances() {
        let mut rng = stream(51, "lb-mis", 0);
        for _ in 0..10 {
            let n = 12usize;
            let omegas: Vec<Vec<u64>> =
                (0..2).map(|_| (0..n).map(|_| rng.gen_range(1..=12u64)).collect()).collect();
            let (a, b) = find_colliding_pair(&omegas, (1, 2)).unwrap();
            let inst = build_lb_instance(LbKind::Mis, n as u32, &a, &b).unwrap();
            let report = verify_lb_instance(&inst, &omegas).unwrap();
            assert!(report.ok(), "{}", report.detail);
        }
    }

    #[test]
    fn mis_instance_k1_is_a_single_edge() {
        // A = {1,3}, B = {2,3}: difference {1} vs {2}
        let inst = build_lb_instance(LbKind::Mis, 3, &[1, 3], &[2, 3]).unwrap();
        assert_eq!(inst.graph.m(), 1);
        let report = verify_lb_instance(&inst, &[vec![1, 1, 5]]).unwrap();
        assert!(report.ok(), "{}", report.detail);
    }

    #[test]
    fn mis_instance_k2_is_a_four_cycle_plus_isolated() {
        // A = {1,2,5,6}, B = {3,4,5,6}
        let inst = build_lb_instance(LbKind::Mis, 6, &[1, 2, 5, 6], &[3, 4, 5, 6]).unwrap();
        assert_eq!(inst.graph.m(), 4);
        assert_eq!(inst.graph.degree(5), 0);
        assert_eq!(inst.graph.degree(6), 0);
        // the four gadget vertices all have degree 2: a 4-cycle
        for v in [1, 2, 3, 4] {
            assert_eq!(inst.graph.degree(v), 2);
        }
    }

    #[test]
    fn steiner_instances_verify_for_k2_and_k3() {
        // k = 2: A = {1,2} ∪ shared, B = {3,4} ∪ shared on n = 8
        let a: Vec<u32> = vec![1, 2, 5, 6, 7, 8];
        let b: Vec<u32> = vec![3, 4, 5, 6, 7, 8];
        let inst = build_lb_instance(LbKind::Steiner, 8, &a, &b).unwrap();
        let report = verify_lb_instance(&inst, &[vec![1; 8]]).unwrap();
        assert!(report.ok(), "{}", report.detail);
        // k = 3 on n = 12
        let a: Vec<u32> = vec![1, 2, 3, 7, 8, 9, 10, 11, 12];
        let b: Vec<u32> = vec![4, 5, 6, 7, 8, 9, 10, 11, 12];
        let inst = build_lb_instance(LbKind::Steiner, 12, &a, &b).unwrap();
        let report = verify_lb_instance(&inst, &[vec![1; 12]]).unwrap();
        assert!(report.ok(), "{}", report.detail);
    }

    #[test]
    fn mmm_instance_verifies() {
        // k = 2 on m = 12: differences {1,2} / {3,4}, shared 5..12
        let a: Vec<u32> = vec![1, 2, 5, 6, 7, 8, 9, 10, 11, 12];
        let b: Vec<u32> = vec![3, 4, 5, 6, 7, 8, 9, 10, 11, 12];
        let inst = build_lb_instance(LbKind::MinMaxMatching, 12, &a, &b).unwrap();
        let report = verify_lb_instance(&inst, &[vec![1; 12]]).unwrap();
        assert!(report.ok(), "{}", report.detail);
        // optima are the shifted sets (A \ B) ∪ K
        assert!(inst.optimum_a.starts_with(&[1, 2]));
    }

    #[test]
    fn hc_instance_has_exactly_two_cycles() {
        // k = 3 on m = 12: differences {1,2,3} / {4,5,6}, shared 7..12
        let a: Vec<u32> = vec![1, 2, 3, 7, 8, 9, 10, 11, 12];
        let b: Vec<u32> = vec![4, 5, 6, 7, 8, 9, 10, 11, 12];
        let inst = build_lb_instance(LbKind::HamiltonianCycle, 12, &a, &b).unwrap();
        let report = verify_lb_instance(&inst, &[vec![1; 12]]).unwrap();
        assert!(report.ok(), "{}", report.detail);
        assert!(matches!(inst.witness, LbWitness::Path(_)));
    }

    #[test]
    fn hc_needs_three_and_enough_shared() {
        let a: Vec<u32> = vec![1, 2, 3, 4];
        let b: Vec<u32> = vec![3, 4, 1, 2];
        assert!(build_hc_instance(4, &a, &b).is_err());
    }

    #[test]
    fn fresh_weights_usually_disagree() {
        let inst = build_lb_instance(LbKind::Mis, 6, &[1, 2, 5, 6], &[3, 4, 5, 6]).unwrap();
        let fresh = vec![vec![1u64, 2, 3, 4, 5, 6]];
        let report = verify_lb_instance(&inst, &fresh).unwrap();
        assert!(!report.equal_weights);
        assert!(!report.ok());
    }

    #[test]
    fn tampered_instance_is_diagnosed() {
        let mut inst = build_lb_instance(LbKind::Mis, 6, &[1, 2, 5, 6], &[3, 4, 5, 6]).unwrap();
        // drop the cross edges: now many maximum independent sets exist
        inst.graph = Graph::new(6, &[(1, 3), (2, 4)]).unwrap();
        let report = verify_lb_instance(&inst, &[vec![1; 6]]).unwrap();
        assert!(!report.two_optima);
        assert!(report.detail.contains("two=false"));
    }

    #[test]
    fn pairing_closes_for_all_desk_sizes() {
        for k in 2..=12 {
            assert!(pairing_closes_ring(k, &hc_pairing(k)), "k = {k}");
        }
    }

    #[test]
    fn manifest_names_both_optima() {
        let inst = build_lb_instance(LbKind::Mis, 3, &[1, 3], &[2, 3]).unwrap();
        let m = inst.manifest();
        assert!(m.contains("A=1,3"));
        assert!(m.contains("B=2,3"));
        assert!(m.contains("kind=mis"));
    }
}
