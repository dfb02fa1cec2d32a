//! The compatibility matrix over perfect matchings, GF(2) rank, and the
//! induced cardinality bound on minimum-weight compliant solutions.
//!
//! The compatibility matrix on an even boundary set `X` is indexed by the
//! perfect matchings on `X`, with a 1 wherever two matchings union into a
//! single cycle (a doubled pair counts as a 2-cycle, which makes the 1x1
//! matrix at `|X| = 2` equal to `[1]`). Its rank over GF(2) is `2^(|X|/2-1)`,
//! and stays that small even though the dimension grows like `(|X|-1)!!`.

use crate::error::Error;
use crate::graph::Graph;
use crate::schemes::WeightFunction;
use crate::solutions::{compliant_min_map, perfect_matchings, Configuration, SubgraphView};
use crate::Result;
use std::fmt::Write as _;

/// Bit matrix over the perfect matchings on a boundary set.
#[derive(Debug, Clone)]
pub struct CompatibilityMatrix {
    boundary: Vec<u32>,
    matchings: Vec<Vec<(u32, u32)>>,
    rows: Vec<Vec<u64>>, // packed bits, row-major
}

impl CompatibilityMatrix {
    pub fn dim(&self) -> usize {
        self.matchings.len()
    }

    pub fn boundary(&self) -> &[u32] {
        &self.boundary
    }

    /// Matchings in canonical (lexicographic) index order.
    pub fn matchings(&self) -> &[Vec<(u32, u32)>] {
        &self.matchings
    }

    pub fn bit(&self, i: usize, j: usize) -> bool {
        self.rows[i][j / 64] >> (j % 64) & 1 == 1
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    /// Dump: dimension header, then one hex string per row (low bit first
    /// within each 16-word group).
    pub fn dump(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{}x{}", self.dim(), self.dim());
        for row in &self.rows {
            for word in row {
                let _ = write!(s, "{:016x}", word);
            }
            let _ = writeln!(s);
        }
        s
    }
}

/// Whether the union of two perfect matchings (as a multigraph) is a single
/// cycle covering all their vertices; equal matchings qualify only on two
/// vertices.
pub fn union_is_single_cycle(m1: &[(u32, u32)], m2: &[(u32, u32)], size: usize) -> bool {
    if size == 0 {
        // the empty cycle on zero vertices
        return m1.is_empty() && m2.is_empty();
    }
    if size % 2 != 0 || m1.len() * 2 != size || m2.len() * 2 != size {
        return false;
    }
    let next = |m: &[(u32, u32)], v: u32| -> u32 {
        m.iter()
            .find_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .expect("perfect matching covers its boundary")
    };
    // alternate m1, m2 starting anywhere; a single cycle visits everyone
    let start = m1[0].0;
    let mut visited = 0usize;
    let mut v = start;
    loop {
        v = next(m1, v);
        visited += 2;
        v = next(m2, v);
        if v == start {
            break;
        }
        if visited > size {
            return false;
        }
    }
    visited == size
}

/// Builds the compatibility matrix on an even boundary set of size at most 12.
pub fn compat_matrix(x: &[u32]) -> Result<CompatibilityMatrix> {
    let mut boundary: Vec<u32> = x.to_vec();
    boundary.sort_unstable();
    boundary.dedup();
    if boundary.len() % 2 != 0 {
        return Err(Error::OddBoundary(boundary.len()));
    }
    if boundary.len() > 12 {
        return Err(Error::SizeBoundExceeded { n: boundary.len(), bound: 12 });
    }
    let matchings = perfect_matchings(&boundary);
    let dim = matchings.len();
    let words = dim.div_ceil(64);
    let mut rows = vec![vec![0u64; words]; dim];
    for i in 0..dim {
        for j in i..dim {
            if union_is_single_cycle(&matchings[i], &matchings[j], boundary.len()) {
                rows[i][j / 64] |= 1 << (j % 64);
                rows[j][i / 64] |= 1 << (i % 64);
            }
        }
    }
    Ok(CompatibilityMatrix { boundary, matchings, rows })
}

/// Rank over GF(2) by in-place elimination on packed rows.
pub fn gf2_rank(rows: &[Vec<u64>]) -> usize {
    let mut rows: Vec<Vec<u64>> = rows.to_vec();
    let words = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..words * 64 {
        let (w, b) = (col / 64, col % 64);
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][w] >> b & 1 == 1) else {
            continue;
        };
        rows.swap(rank, pivot);
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[w] >> b & 1 == 1 {
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Outcome of [`min_solution_count_check`].
#[derive(Debug, Clone)]
pub struct MinCountReport {
    /// Number of distinct solutions across all per-configuration minimum sets.
    pub count: usize,
    /// The bound `3^|X| * 2^(|X|/2 - 1)` they must stay под.
    pub bound: u128,
    pub ok: bool,
}

/// Checks that the number of distinct minimum-weight compliant solutions over
/// all configurations on `x` is at most `3^|X| * 2^(|X|/2-1)`. Requires the
/// weight function to give every configuration at most one minimizer and
/// reports the first violating configuration otherwise.
pub fn min_solution_count_check(
    g: &Graph,
    x: &[u32],
    omega: &WeightFunction,
) -> Result<MinCountReport> {
    let view = SubgraphView::whole(g);
    let map = compliant_min_map(omega, &view, x)?;
    let mut union: Vec<Vec<u32>> = Vec::new();
    for (c, (_, sets)) in &map {
        if sets.len() > 1 {
            return Err(Error::MinNotUnique(format!("{c:?}")));
        }
        union.extend(sets.iter().cloned());
    }
    union.sort();
    union.dedup();
    let mut xs: Vec<u32> = x.to_vec();
    xs.sort_unstable();
    xs.dedup();
    let k = xs.len() as u32;
    let bound = 3u128.pow(k) * if k >= 2 { 1u128 << (k / 2 - 1) } else { 1 };
    Ok(MinCountReport { count: union.len(), bound, ok: (union.len() as u128) <= bound })
}

/// Rows of the block-diagonal matrix indexed by configurations: entry
/// `[c, c']` is 1 when `V0 = V2'`, `V2 = V0'` and the two matchings union
/// into a single cycle.
pub fn hat_rows(configs: &[Configuration], against: &[Configuration]) -> Vec<Vec<u64>> {
    let words = against.len().div_ceil(64);
    configs
        .iter()
        .map(|c| {
            let mut row = vec![0u64; words];
            for (j, d) in against.iter().enumerate() {
                if c.v0() == d.v2()
                    && c.v2() == d.v0()
                    && c.v1() == d.v1()
                    && union_is_single_cycle(c.matching(), d.matching(), c.v1().len())
                {
                    row[j / 64] |= 1 << (j % 64);
                }
            }
            row
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::stream;
    use crate::schemes::{Domain, SchemeMeta};
    use crate::solutions::enumerate_configurations;
    use num_bigint::BigUint;
    use rand::Rng;

    #[test]
    fn boundary_two_gives_the_one_matrix() {
        let m = compat_matrix(&[1, 2]).unwrap();
        assert_eq!(m.dim(), 1);
        assert!(m.bit(0, 0), "a doubled pair is a 2-cycle");
        assert_eq!(gf2_rank(m.rows()), 1);
    }

    #[test]
    fn boundary_four_matrix_is_all_ones_off_diagonal() {
        let m = compat_matrix(&[1, 2, 3, 4]).unwrap();
        assert_eq!(m.dim(), 3);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(m.bit(i, j), i != j);
            }
        }
        assert_eq!(gf2_rank(m.rows()), 2);
    }

    #[test]
    fn boundary_six_is_symmetric_with_zero_diagonal() {
        let m = compat_matrix(&[1, 2, 3, 4, 5, 6]).unwrap();
        assert_eq!(m.dim(), 15);
        for i in 0..15 {
            assert!(!m.bit(i, i));
            for j in 0..15 {
                assert_eq!(m.bit(i, j), m.bit(j, i));
            }
        }
    }

    #[test]
    fn rank_identity_up_to_ten() {
        for half in 1..=5u32 {
            let x: Vec<u32> = (1..=2 * half).collect();
            let m = compat_matrix(&x).unwrap();
            assert_eq!(gf2_rank(m.rows()), 1 << (half - 1), "|X| = {}", 2 * half);
        }
    }

    #[test]
    fn odd_boundary_is_rejected() {
        assert!(matches!(compat_matrix(&[1, 2, 3]), Err(Error::OddBoundary(3))));
    }

    #[test]
    fn rank_of_identity_and_zero() {
        let id: Vec<Vec<u64>> = (0..5).map(|i| vec![1u64 << i]).collect();
        assert_eq!(gf2_rank(&id), 5);
        let zero = vec![vec![0u64; 2]; 4];
        assert_eq!(gf2_rank(&zero), 0);
    }

    #[test]
    fn matrix_dump_shape() {
        let m = compat_matrix(&[1, 2, 3, 4]).unwrap();
        let dump = m.dump();
        let mut lines = dump.lines();
        assert_eq!(lines.next(), Some("3x3"));
        assert_eq!(lines.count(), 3);
    }

    fn injective_weights(m: u32, rng: &mut impl Rng) -> WeightFunction {
        let mut vals: Vec<u64> = Vec::new();
        while vals.len() < m as usize {
            let v = rng.gen_range(1..1_000_000u64);
            if !vals.contains(&v) {
                vals.push(v);
            }
        }
        WeightFunction::new(
            Domain::Edge,
            vals.iter().map(|&v| BigUint::from(v)).collect(),
            SchemeMeta {
                kind: "random-injective".into(),
                params: String::new(),
                seed: None,
                primes: vec![],
                declared_bound: BigUint::from(1_000_000u64),
                random_bits: 0,
            },
        )
    }

    #[test]
    fn min_count_bound_holds_on_random_graphs() {
        let mut rng = stream(41, "rank-mincount", 0);
        let mut done = 0;
        while done < 8 {
            let n = rng.gen_range(5..=7u32);
            let mut edges = Vec::new();
            for u in 1..=n {
                for v in u + 1..=n {
                    if rng.gen_bool(0.55) {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::new(n, &edges).unwrap();
            if g.m() == 0 {
                continue;
            }
            let omega = injective_weights(g.m(), &mut rng);
            let x: Vec<u32> = vec![1, 2, 3, 4];
            match min_solution_count_check(&g, &x, &omega) {
                Ok(report) => {
                    assert!(report.ok, "count {} above bound {}", report.count, report.bound);
                    done += 1;
                }
                // ties can happen even with injective edge weights; skip
                Err(Error::MinNotUnique(_)) => continue,
                Err(e) => panic!("{e}"),
            }
        }
    }

    #[test]
    fn constant_zero_weights_violate_uniqueness() {
        let g = Graph::complete(4);
        let omega = WeightFunction::new(
            Domain::Edge,
            vec![BigUint::from(0u8); 6],
            SchemeMeta {
                kind: "zero".into(),
                params: String::new(),
                seed: None,
                primes: vec![],
                declared_bound: BigUint::from(0u8),
                random_bits: 0,
            },
        );
        assert!(matches!(
            min_solution_count_check(&g, &[1, 2], &omega),
            Err(Error::MinNotUnique(_))
        ));
    }

    #[test]
    fn empty_boundary_union_has_at_most_one_solution() {
        let mut rng = stream(43, "rank-empty", 0);
        let g = Graph::complete(5);
        let omega = injective_weights(g.m(), &mut rng);
        let report = min_solution_count_check(&g, &[], &omega).unwrap();
        assert!(report.count <= 1);
    }

    #[test]
    fn realized_hat_rows_are_independent() {
        // rows of the block-diagonal matrix indexed by configurations realized
        // by per-configuration minimizers are linearly independent
        let mut rng = stream(47, "rank-hat", 0);
        let mut done = 0;
        while done < 5 {
            let n = rng.gen_range(4..=6u32);
            let mut edges = Vec::new();
            for u in 1..=n {
                for v in u + 1..=n {
                    if rng.gen_bool(0.6) {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::new(n, &edges).unwrap();
            if g.m() == 0 {
                continue;
            }
            let omega = injective_weights(g.m(), &mut rng);
            let x: Vec<u32> = (1..=4.min(n)).collect();
            let view = SubgraphView::whole(&g);
            let map = match compliant_min_map(&omega, &view, &x) {
                Ok(m) => m,
                Err(_) => continue,
            };
            if map.values().any(|(_, sets)| sets.len() > 1) {
                continue;
            }
            // configurations OF the minimizers (their own boundary states)
            let mut realized: Vec<Configuration> = Vec::new();
            for (_, (_, sets)) in &map {
                for ids in sets {
                    let pairs = view.edge_pairs(ids).unwrap();
                    let c = crate::solutions::configuration_of_pairs(&pairs, &x).unwrap();
                    if c.is_proper() && !realized.contains(&c) {
                        realized.push(c);
                    }
                }
            }
            if realized.is_empty() {
                continue;
            }
            let all = enumerate_configurations(&x);
            let rows = hat_rows(&realized, &all);
            assert_eq!(gf2_rank(&rows), realized.len());
            done += 1;
        }
    }
}
