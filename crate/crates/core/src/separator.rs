//! Exact balanced separators by exhaustive search.

use crate::error::Error;
use crate::graph::Graph;
use crate::Result;

/// Returns a minimum-cardinality set `X` such that every connected component
/// of `G - X` contains at most `floor(|S|/2)` vertices of `S`. Among the
/// minimum-size candidates the lexicographically first one is returned, so the
/// result is deterministic.
///
/// Subsets are enumerated by increasing size, which is viable only at desk
/// scale; graphs must have at most 64 vertices.
pub fn balanced_separator(g: &Graph, s: &[u32]) -> Result<Vec<u32>> {
    let n = g.n() as usize;
    if n > 64 {
        return Err(Error::SizeBoundExceeded { n, bound: 64 });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let adj = g.adjacency_masks();
    let mut s_mask: u64 = 0;
    for &v in s {
        s_mask |= 1 << (v - 1);
    }
    let half = (s_mask.count_ones() / 2) as u32;

    for size in 0..=n {
        let mut combo: Vec<usize> = (0..size).collect();
        loop {
            let mut x_mask: u64 = 0;
            for &i in &combo {
                x_mask |= 1 << i;
            }
            if is_balanced(&adj, n, x_mask, s_mask, half) {
                return Ok(combo.iter().map(|&i| i as u32 + 1).collect());
            }
            if !next_combination(&mut combo, n) {
                break;
            }
        }
    }
    unreachable!("X = V(G) always balances");
}

/// Advances `combo` to the next k-combination of `0..n` in lexicographic
/// order; returns false after the last one.
fn next_combination(combo: &mut [usize], n: usize) -> bool {
    let k = combo.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if combo[i] < n - k + i {
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Checks the separator property directly: every component of `G - X` holds at
/// most `half` vertices of `S`.
pub fn is_balanced_separator(g: &Graph, s: &[u32], x: &[u32]) -> bool {
    let n = g.n() as usize;
    if n > 64 {
        return false;
    }
    let adj = g.adjacency_masks();
    let mut s_mask = 0u64;
    for &v in s {
        s_mask |= 1 << (v - 1);
    }
    let mut x_mask = 0u64;
    for &v in x {
        x_mask |= 1 << (v - 1);
    }
    is_balanced(&adj, n, x_mask, s_mask, (s_mask.count_ones() / 2) as u32)
}

fn is_balanced(adj: &[u64], n: usize, x_mask: u64, s_mask: u64, half: u32) -> bool {
    let full: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut rest = full & !x_mask;
    while rest != 0 {
        let seed = rest & rest.wrapping_neg();
        let mut comp = seed;
        loop {
            let mut grown = comp;
            let mut bits = comp;
            while bits != 0 {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                grown |= adj[v] & !x_mask;
            }
            if grown == comp {
                break;
            }
            comp = grown;
        }
        if (comp & s_mask).count_ones() > half {
            return false;
        }
        rest &= !comp;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p3_center() {
        let g = Graph::path(3);
        assert_eq!(balanced_separator(&g, &[1, 2, 3]).unwrap(), vec![2]);
    }

    #[test]
    fn single_vertex() {
        let g = Graph::new(1, &[]).unwrap();
        assert_eq!(balanced_separator(&g, &[1]).unwrap(), vec![1]);
    }

    #[test]
    fn c4_needs_two() {
        let g = Graph::cycle(4);
        let x = balanced_separator(&g, &[1, 2, 3, 4]).unwrap();
        assert_eq!(x.len(), 2);
        assert!(is_balanced_separator(&g, &[1, 2, 3, 4], &x));
    }

    #[test]
    fn empty_measure_needs_nothing() {
        let g = Graph::complete(5);
        assert!(balanced_separator(&g, &[]).unwrap().is_empty());
    }

    #[test]
    fn result_is_minimal_and_valid() {
        let g = Graph::new(6, &[(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (2, 5)]).unwrap();
        let s: Vec<u32> = (1..=6).collect();
        let x = balanced_separator(&g, &s).unwrap();
        assert!(is_balanced_separator(&g, &s, &x));
        // no smaller separator exists: check all subsets of size |x|-1
        if !x.is_empty() {
            let k = x.len() - 1;
            let n = 6;
            let mut found = false;
            let masks = 0u64..(1 << n);
            for m in masks {
                if m.count_ones() as usize == k {
                    let cand: Vec<u32> = (0..n).filter(|i| m >> i & 1 == 1).map(|i| i as u32 + 1).collect();
                    if is_balanced_separator(&g, &s, &cand) {
                        found = true;
                    }
                }
            }
            assert!(!found, "separator not minimal");
        }
    }
}
