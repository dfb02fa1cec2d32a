//! Weight-function constructors.
//!
//! Four Hamiltonian-cycle schemes (general graphs, bounded treewidth,
//! separable classes, and a parametric variant with a configurable prime
//! range) all follow the same blueprint: sample a tuple of random primes
//! `p_i`, hash every edge to `2^id(e) mod p_i`, and stack the layers
//! positionally with large multipliers. The level-aware schemes for maximum
//! independent sets and maximum matchings instead read a vertex's (or edge's)
//! level in a supplied elimination forest.
//!
//! All constructors are pure given their parameters and seed; the sampled
//! prime tuple, the declared weight bound and the random-bit count are
//! recorded in the produced metadata, and the bound is asserted against the
//! actual weights at construction time.

use crate::error::Error;
use crate::forest::EliminationForest;
use crate::graph::Graph;
use crate::numt::sample_prime;
use crate::rng;
use crate::Result;
use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::Rng;
use std::fmt::Write as _;

/// Whether a weight function is defined on vertices or edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    Vertex,
    Edge,
}

/// Metadata recorded with every weight function.
#[derive(Debug, Clone)]
pub struct SchemeMeta {
    pub kind: String,
    pub params: String,
    pub seed: Option<u64>,
    pub primes: Vec<BigUint>,
    /// Hard upper bound on every assigned weight.
    pub declared_bound: BigUint,
    /// Bits needed to address the scheme's sample space.
    pub random_bits: u64,
}

/// A total weight function on `1..=len` vertex or edge identifiers.
#[derive(Debug, Clone)]
pub struct WeightFunction {
    domain: Domain,
    weights: Vec<BigUint>,
    pub meta: SchemeMeta,
}

impl WeightFunction {
    pub fn new(domain: Domain, weights: Vec<BigUint>, meta: SchemeMeta) -> WeightFunction {
        assert!(
            weights.iter().all(|w| *w <= meta.declared_bound),
            "scheme emitted a weight above its declared bound"
        );
        WeightFunction { domain, weights, meta }
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn get(&self, id: u32) -> Result<&BigUint> {
        if id == 0 {
            return Err(Error::WeightDomain(id));
        }
        self.weights
            .get(id as usize - 1)
            .ok_or(Error::WeightDomain(id))
    }

    pub fn total(&self, ids: &[u32]) -> Result<BigUint> {
        let mut sum = BigUint::zero();
        for &id in ids {
            sum += self.get(id)?;
        }
        Ok(sum)
    }

    pub fn max_weight(&self) -> BigUint {
        self.weights.iter().max().cloned().unwrap_or_default()
    }

    /// TSV dump: a `#`-comment block with the metadata, then `<id>\t<weight>`.
    pub fn to_tsv(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# kind: {}", self.meta.kind);
        let _ = writeln!(
            s,
            "# domain: {}",
            match self.domain {
                Domain::Vertex => "vertex",
                Domain::Edge => "edge",
            }
        );
        let _ = writeln!(s, "# params: {}", self.meta.params);
        if let Some(seed) = self.meta.seed {
            let _ = writeln!(s, "# seed: {}", seed);
        }
        let primes: Vec<String> = self.meta.primes.iter().map(|p| p.to_string()).collect();
        let _ = writeln!(s, "# primes: {}", primes.join(","));
        let _ = writeln!(s, "# bound: {}", self.meta.declared_bound);
        let _ = writeln!(s, "# random-bits: {}", self.meta.random_bits);
        for (i, w) in self.weights.iter().enumerate() {
            let _ = writeln!(s, "{}\t{}", i + 1, w);
        }
        s
    }
}

/// Parameters shared by the Hamiltonian-cycle schemes.
#[derive(Debug, Clone)]
pub struct SchemeParams {
    /// The scheme constant; prime ranges grow exponentially in it.
    pub c: u32,
    /// Separability degree as a rational in (0,1), for the separable kind.
    pub alpha: Option<(u32, u32)>,
    /// Treewidth bound, for the treewidth kind.
    pub k: Option<u32>,
    /// Treedepth bound, where a scheme needs one.
    pub d: Option<u32>,
    /// Single prime range, for the parametric kind.
    pub m_override: Option<BigUint>,
}

impl Default for SchemeParams {
    fn default() -> Self {
        SchemeParams { c: 4, alpha: None, k: None, d: None, m_override: None }
    }
}

/// The four Hamiltonian-cycle scheme kinds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HcKind {
    General,
    Treewidth,
    Separable,
    Parametric,
}

impl HcKind {
    pub fn name(self) -> &'static str {
        match self {
            HcKind::General => "hc-general",
            HcKind::Treewidth => "hc-treewidth",
            HcKind::Separable => "hc-separable",
            HcKind::Parametric => "hc-parametric",
        }
    }
}

pub(crate) fn ceil_log2(n: u32) -> u32 {
    if n <= 1 {
        0
    } else {
        32 - (n - 1).leading_zeros()
    }
}

fn ceil_log2_u64(x: u64) -> u64 {
    if x <= 1 {
        0
    } else {
        64 - (x - 1).leading_zeros() as u64
    }
}

fn pow2(bits: u64) -> BigUint {
    BigUint::one() << bits
}

/// Smallest `b >= 1` with `b^den * 2^(i*num) >= n^num`, i.e. the exact value
/// of `ceil((n / 2^i)^(num/den))`.
fn ceil_pow_ratio(n: u32, i: u32, num: u32, den: u32) -> u64 {
    let target = BigUint::from(n).pow(num);
    let shift = BigUint::one() << (i as u64 * num as u64);
    let mut b = 1u64;
    while BigUint::from(b).pow(den) * &shift < target {
        b += 1;
    }
    b
}

fn bits_of_range(m: &BigUint) -> u64 {
    // bits to address the range {1..M}
    (m - BigUint::one()).bits()
}

/// One scheme layer: new weight = multiplier * previous + (2^id mod prime).
struct Layer {
    multiplier: BigUint,
    prime: BigUint,
    range: BigUint,
}

/// Stacks layers over the edges of `g`, starting from `base` (one value per
/// edge, with exact bound `base_bound`). Returns the stack of per-layer
/// weight vectors and the exact bound of the last one.
fn compose_layers(
    base: Vec<BigUint>,
    base_bound: BigUint,
    layers: &[Layer],
) -> (Vec<Vec<BigUint>>, BigUint) {
    let two = BigUint::from(2u8);
    let mut stack = vec![base];
    let mut bound = base_bound;
    for layer in layers {
        let prev = stack.last().unwrap();
        let next: Vec<BigUint> = prev
            .iter()
            .enumerate()
            .map(|(idx, w)| {
                let id = idx as u32 + 1;
                let residue = two.modpow(&BigUint::from(id), &layer.prime);
                &layer.multiplier * w + residue
            })
            .collect();
        bound = &layer.multiplier * bound + (&layer.range - BigUint::one());
        stack.push(next);
    }
    (stack, bound)
}

fn residue_base(g: &Graph, p0: &BigUint) -> Vec<BigUint> {
    let two = BigUint::from(2u8);
    (1..=g.m()).map(|id| two.modpow(&BigUint::from(id), p0)).collect()
}

/// Prime ranges of the general scheme: `M_i = 2^(C (ceil(lg n) + 2^i))` for
/// `i = 0..=ceil(lg n)`.
pub fn general_ranges(n: u32, c: u32) -> Vec<BigUint> {
    let lg = ceil_log2(n) as u64;
    (0..=lg).map(|i| pow2(c as u64 * (lg + (1u64 << i)))).collect()
}

/// Prime ranges of the treewidth scheme: `3 ceil(lg n)` copies of
/// `M = 2^(C (k + ceil(lg n)))`.
pub fn treewidth_ranges(n: u32, c: u32, k: u32) -> Vec<BigUint> {
    let lg = ceil_log2(n) as u64;
    let m = pow2(c as u64 * (k as u64 + lg));
    vec![m; (3 * lg) as usize]
}

/// Prime ranges of the parametric scheme: `1 + ceil(lg n)` copies of `M`.
pub fn parametric_ranges(n: u32, m: &BigUint) -> Vec<BigUint> {
    vec![m.clone(); ceil_log2(n) as usize + 1]
}

/// Prime ranges of the separable scheme: the primary family
/// `M_i = 2^(C (ceil(alpha lg n) + 2^i))` for `i = 0..=ceil(alpha lg n) + C`,
/// followed by the per-level family
/// `N_i = 2^(C (ceil(lg n) + ceil((n/2^i)^alpha)))` for `i = 0..=ceil(lg n)`.
pub fn separable_ranges(n: u32, c: u32, alpha: (u32, u32)) -> (Vec<BigUint>, Vec<BigUint>) {
    let lg = ceil_log2(n);
    let (num, den) = alpha;
    let la = (lg as u64 * num as u64).div_ceil(den as u64);
    let top = la + c as u64;
    let primary = (0..=top).map(|i| pow2(c as u64 * (la + (1u64 << i)))).collect();
    let per_level = (0..=lg)
        .map(|i| pow2(c as u64 * (lg as u64 + ceil_pow_ratio(n, i, num, den))))
        .collect();
    (primary, per_level)
}

fn sample_tuple(ranges: &[BigUint], seed: u64, label: &str) -> Result<Vec<BigUint>> {
    ranges
        .iter()
        .enumerate()
        .map(|(i, m)| {
            let mut r = rng::stream(seed, label, i as u64);
            Ok(sample_prime(m, &mut r, format!("{label}[{i}] seed={seed}"))?.prime)
        })
        .collect()
}

fn check_tuple(primes: &[BigUint], ranges: &[BigUint]) -> Result<()> {
    if primes.len() != ranges.len() {
        return Err(Error::SchemeConfig(format!(
            "expected {} primes, got {}",
            ranges.len(),
            primes.len()
        )));
    }
    for (p, m) in primes.iter().zip(ranges) {
        if p > m || !crate::numt::is_prime(p) {
            return Err(Error::SchemeConfig(format!("{p} is not a prime in 1..={m}")));
        }
    }
    Ok(())
}

/// Full layer stack of a Hamiltonian-cycle scheme for a fixed prime tuple; the
/// last entry of `layers` is the output weight vector.
pub(crate) struct HcStack {
    pub layers: Vec<Vec<BigUint>>,
    pub bound: BigUint,
}

pub(crate) fn hc_ranges(kind: HcKind, n: u32, params: &SchemeParams) -> Result<Vec<BigUint>> {
    Ok(match kind {
        HcKind::General => general_ranges(n, params.c),
        HcKind::Treewidth => {
            let k = params
                .k
                .ok_or_else(|| Error::SchemeConfig("treewidth kind needs k".into()))?;
            treewidth_ranges(n, params.c, k)
        }
        HcKind::Parametric => {
            let m = params.m_override.clone().ok_or_else(|| {
                Error::SchemeConfig("parametric kind needs an explicit prime range".into())
            })?;
            if m < BigUint::from(2u8) {
                return Err(Error::SchemeConfig("prime range must be at least 2".into()));
            }
            parametric_ranges(n, &m)
        }
        HcKind::Separable => {
            let alpha = params
                .alpha
                .ok_or_else(|| Error::SchemeConfig("separable kind needs alpha".into()))?;
            if alpha.0 == 0 || alpha.0 >= alpha.1 {
                return Err(Error::SchemeConfig("alpha must lie strictly between 0 and 1".into()));
            }
            let (mut p, mut q) = separable_ranges(n, params.c, alpha);
            p.append(&mut q);
            p
        }
    })
}

pub(crate) fn hc_stack_from_primes(
    kind: HcKind,
    g: &Graph,
    params: &SchemeParams,
    primes: &[BigUint],
) -> Result<HcStack> {
    let ranges = hc_ranges(kind, g.n(), params)?;
    check_tuple(primes, &ranges)?;
    let n = BigUint::from(g.n());
    match kind {
        HcKind::General => {
            let layers: Vec<Layer> = (1..ranges.len())
                .map(|i| Layer {
                    multiplier: &ranges[i - 1] * &n,
                    prime: primes[i].clone(),
                    range: ranges[i].clone(),
                })
                .collect();
            let (stack, bound) =
                compose_layers(residue_base(g, &primes[0]), &ranges[0] - BigUint::one(), &layers);
            Ok(HcStack { layers: stack, bound })
        }
        HcKind::Treewidth => {
            let layers: Vec<Layer> = (0..ranges.len())
                .map(|i| Layer {
                    multiplier: &ranges[i] * &n,
                    prime: primes[i].clone(),
                    range: ranges[i].clone(),
                })
                .collect();
            let base = vec![BigUint::zero(); g.m() as usize];
            let (stack, bound) = compose_layers(base, BigUint::zero(), &layers);
            Ok(HcStack { layers: stack, bound })
        }
        HcKind::Parametric => {
            let mult = &ranges[0] * &n * &n;
            let layers: Vec<Layer> = (1..ranges.len())
                .map(|i| Layer {
                    multiplier: mult.clone(),
                    prime: primes[i].clone(),
                    range: ranges[i].clone(),
                })
                .collect();
            let (stack, bound) =
                compose_layers(residue_base(g, &primes[0]), &ranges[0] - BigUint::one(), &layers);
            Ok(HcStack { layers: stack, bound })
        }
        HcKind::Separable => {
            let alpha = params.alpha.unwrap();
            let (primary, per_level) = separable_ranges(g.n(), params.c, alpha);
            let p_primes = &primes[..primary.len()];
            let q_primes = &primes[primary.len()..];
            // primary family behaves like the general scheme
            let mut layers: Vec<Layer> = (1..primary.len())
                .map(|i| Layer {
                    multiplier: &primary[i - 1] * &n,
                    prime: p_primes[i].clone(),
                    range: primary[i].clone(),
                })
                .collect();
            // per-level family applied from the deepest level down to 0:
            // the first descent step is multiplied by M_top * n, then each
            // level i step by N_{i+1} * n
            let lg = ceil_log2(g.n()) as usize;
            let mut mult = primary.last().unwrap() * &n;
            for i in (0..=lg).rev() {
                layers.push(Layer {
                    multiplier: mult.clone(),
                    prime: q_primes[i].clone(),
                    range: per_level[i].clone(),
                });
                mult = &per_level[i] * &n;
            }
            let (stack, bound) =
                compose_layers(residue_base(g, &p_primes[0]), &primary[0] - BigUint::one(), &layers);
            Ok(HcStack { layers: stack, bound })
        }
    }
}

fn render_params(kind: HcKind, g: &Graph, params: &SchemeParams) -> String {
    let mut s = format!("n={} m={} C={}", g.n(), g.m(), params.c);
    if let (HcKind::Treewidth, Some(k)) = (kind, params.k) {
        let _ = write!(s, " k={}", k);
    }
    if let (HcKind::Separable, Some((num, den))) = (kind, params.alpha) {
        let _ = write!(s, " alpha={}/{}", num, den);
    }
    if let (HcKind::Parametric, Some(m)) = (kind, params.m_override.as_ref()) {
        let _ = write!(s, " M={}", m);
    }
    s
}

/// Builds a Hamiltonian-cycle weight function from an explicit prime tuple
/// (one prime per range of the kind).
pub fn hc_scheme_from_primes(
    kind: HcKind,
    g: &Graph,
    params: &SchemeParams,
    primes: Vec<BigUint>,
) -> Result<WeightFunction> {
    let stack = hc_stack_from_primes(kind, g, params, &primes)?;
    let ranges = hc_ranges(kind, g.n(), params)?;
    let weights = stack.layers.last().cloned().unwrap_or_default();
    let meta = SchemeMeta {
        kind: kind.name().to_string(),
        params: render_params(kind, g, params),
        seed: None,
        primes,
        declared_bound: stack.bound,
        random_bits: ranges.iter().map(bits_of_range).sum(),
    };
    Ok(WeightFunction::new(Domain::Edge, weights, meta))
}

/// Samples a Hamiltonian-cycle weight function of the given kind. The
/// decomposition itself is never consulted; width parameters only size the
/// prime ranges.
pub fn hc_scheme_sample(
    kind: HcKind,
    g: &Graph,
    params: &SchemeParams,
    seed: u64,
) -> Result<WeightFunction> {
    let ranges = hc_ranges(kind, g.n(), params)?;
    let primes = sample_tuple(&ranges, seed, kind.name())?;
    let mut wf = hc_scheme_from_primes(kind, g, params, primes)?;
    wf.meta.seed = Some(seed);
    Ok(wf)
}

// ---------------------------------------------------------------------------
// Level-aware schemes
// ---------------------------------------------------------------------------

/// A weight table indexed by elimination-forest level; vertices of equal level
/// always receive equal weight.
#[derive(Debug, Clone)]
pub struct LevelWeights {
    levels: Vec<BigUint>,
    pub random_bits: u64,
    pub deterministic_fallback: bool,
    pub seed: Option<u64>,
}

impl LevelWeights {
    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    pub fn at_level(&self, level: u32) -> &BigUint {
        &self.levels[level as usize]
    }

    /// Expands the table into a vertex weight function through a forest of
    /// height at most the table's depth.
    pub fn apply(&self, g: &Graph, f: &EliminationForest) -> Result<WeightFunction> {
        let height = f.validate(g)?;
        if height as usize > self.levels.len() {
            return Err(Error::SchemeConfig(format!(
                "forest height {} exceeds the table depth {}",
                height,
                self.levels.len()
            )));
        }
        let lvls = f.levels()?;
        let weights: Vec<BigUint> =
            lvls.iter().map(|&l| self.levels[l as usize].clone()).collect();
        let bound = self.levels.iter().max().cloned().unwrap_or_default();
        let meta = SchemeMeta {
            kind: if self.deterministic_fallback { "mis-det" } else { "mis-rand" }.to_string(),
            params: format!("n={} d={}", g.n(), self.levels.len()),
            seed: self.seed,
            primes: Vec::new(),
            declared_bound: bound,
            random_bits: self.random_bits,
        };
        Ok(WeightFunction::new(Domain::Vertex, weights, meta))
    }
}

/// Deterministic level-aware scheme for vertex selection problems with the
/// exchange property: weight `2^level`.
pub fn mis_det_weights(g: &Graph, f: &EliminationForest) -> Result<WeightFunction> {
    let height = f.validate(g)?;
    let table = LevelWeights {
        levels: (0..height.max(1)).map(|l| pow2(l as u64)).collect(),
        random_bits: 0,
        deterministic_fallback: true,
        seed: None,
    };
    table.apply(g, f)
}

/// Randomized level-aware scheme: splits each level `i` as
/// `i = ceil(lg n) * e(i) + f(i)` and assigns `r_{e(i)} * 2^{f(i)}` with
/// `kappa + 1 = floor(d / ceil(lg n)) + 1` uniform draws from `{1..32 n^5}`.
/// Falls back to the deterministic scheme when `d < 5 ceil(lg n)`, where the
/// exponential level weights already fit the polynomial budget.
pub fn mis_rand_level_weights(n: u32, d: u32, seed: u64) -> LevelWeights {
    assert!(n >= 2 && d >= 1);
    let lgn = ceil_log2(n).max(1);
    if d < 5 * lgn {
        return LevelWeights {
            levels: (0..d).map(|l| pow2(l as u64)).collect(),
            random_bits: 0,
            deterministic_fallback: true,
            seed: Some(seed),
        };
    }
    let range = 32u64
        .checked_mul((n as u64).pow(5))
        .expect("level weight range fits in 64 bits");
    let kappa = d / lgn;
    let mut rng = rng::stream(seed, "mis-rand", 0);
    let draws: Vec<u64> = (0..=kappa).map(|_| rng.gen_range(1..=range)).collect();
    let levels: Vec<BigUint> = (0..d)
        .map(|i| {
            let (e, f) = (i / lgn, i % lgn);
            BigUint::from(draws[e as usize]) << (f as u64)
        })
        .collect();
    LevelWeights {
        levels,
        random_bits: (kappa as u64 + 1) * ceil_log2_u64(range),
        deterministic_fallback: false,
        seed: Some(seed),
    }
}

fn edge_levels(g: &Graph, f: &EliminationForest) -> Result<Vec<u32>> {
    let lvls = f.levels()?;
    Ok(g.edges()
        .iter()
        .map(|&(u, v)| lvls[u as usize - 1].min(lvls[v as usize - 1]))
        .collect())
}

/// Deterministic level-aware scheme for maximum matchings:
/// `id(e) * n^(2 level(e))` with `level(e) = min` of the endpoint levels.
pub fn matching_det_weights(g: &Graph, f: &EliminationForest) -> Result<WeightFunction> {
    let height = f.validate(g)?;
    let n = BigUint::from(g.n());
    let weights: Vec<BigUint> = edge_levels(g, f)?
        .iter()
        .enumerate()
        .map(|(idx, &l)| BigUint::from(idx as u32 + 1) * n.pow(2 * l))
        .collect();
    let bound = BigUint::from(g.m().max(1)) * n.pow(2 * height.saturating_sub(1));
    let meta = SchemeMeta {
        kind: "matching-det".to_string(),
        params: format!("n={} m={} d={}", g.n(), g.m(), height),
        seed: None,
        primes: Vec::new(),
        declared_bound: bound,
        random_bits: 0,
    };
    Ok(WeightFunction::new(Domain::Edge, weights, meta))
}

/// Randomized matching scheme from explicit per-level draws `r_l` (each in
/// `{1..n^10}`): weight `id(e) * r_{level(e)}`.
pub fn matching_rand_weights_from_draws(
    g: &Graph,
    f: &EliminationForest,
    draws: &[u64],
) -> Result<WeightFunction> {
    let height = f.validate(g)?;
    if (draws.len() as u32) < height {
        return Err(Error::SchemeConfig(format!(
            "need {} per-level draws, got {}",
            height,
            draws.len()
        )));
    }
    let weights: Vec<BigUint> = edge_levels(g, f)?
        .iter()
        .enumerate()
        .map(|(idx, &l)| BigUint::from(idx as u32 + 1) * BigUint::from(draws[l as usize]))
        .collect();
    let range = (g.n() as u64)
        .checked_pow(10)
        .ok_or_else(|| Error::SchemeConfig("n too large for the n^10 draw range".into()))?;
    let bound = BigUint::from(g.m().max(1)) * BigUint::from(range);
    let meta = SchemeMeta {
        kind: "matching-rand".to_string(),
        params: format!("n={} m={} d={}", g.n(), g.m(), height),
        seed: None,
        primes: Vec::new(),
        declared_bound: bound,
        random_bits: height as u64 * ceil_log2_u64(range),
    };
    Ok(WeightFunction::new(Domain::Edge, weights, meta))
}

/// Randomized level-aware scheme for maximum matchings: one uniform draw from
/// `{1..n^10}` per level.
pub fn matching_rand_weights(
    g: &Graph,
    f: &EliminationForest,
    seed: u64,
) -> Result<WeightFunction> {
    let height = f.validate(g)?;
    let range = (g.n() as u64)
        .checked_pow(10)
        .ok_or_else(|| Error::SchemeConfig("n too large for the n^10 draw range".into()))?;
    let mut rng = rng::stream(seed, "matching-rand", 0);
    let draws: Vec<u64> = (0..height).map(|_| rng.gen_range(1..=range)).collect();
    let mut wf = matching_rand_weights_from_draws(g, f, &draws)?;
    wf.meta.seed = Some(seed);
    Ok(wf)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forest::treedepth_exact;
    use num_traits::ToPrimitive;

    #[test]
    fn general_scheme_is_deterministic() {
        let g = Graph::complete(4);
        let p = SchemeParams::default();
        let a = hc_scheme_sample(HcKind::General, &g, &p, 0).unwrap();
        let b = hc_scheme_sample(HcKind::General, &g, &p, 0).unwrap();
        for id in 1..=g.m() {
            assert_eq!(a.get(id).unwrap(), b.get(id).unwrap());
        }
        assert_eq!(a.meta.primes, b.meta.primes);
        let c = hc_scheme_sample(HcKind::General, &g, &p, 1).unwrap();
        assert_ne!(a.meta.primes, c.meta.primes);
    }

    #[test]
    fn general_layer_decomposition_holds_per_edge() {
        let g = Graph::complete(4);
        let p = SchemeParams::default();
        let ranges = general_ranges(4, 4);
        let primes = sample_tuple(&ranges, 3, "test").unwrap();
        let stack = hc_stack_from_primes(HcKind::General, &g, &p, &primes).unwrap();
        let two = BigUint::from(2u8);
        let n = BigUint::from(g.n());
        for i in 1..stack.layers.len() {
            let mult = &ranges[i - 1] * &n;
            for idx in 0..g.m() as usize {
                let residue = two.modpow(&BigUint::from(idx as u32 + 1), &primes[i]);
                // the always-true layer identity
                assert_eq!(
                    stack.layers[i][idx],
                    &mult * &stack.layers[i - 1][idx] + &residue
                );
                // the mod form whenever the residue is below the multiplier
                if residue < mult {
                    assert_eq!(&stack.layers[i][idx] % &mult, residue);
                }
            }
        }
    }

    #[test]
    fn treewidth_scheme_respects_bound_and_single_range() {
        let g = Graph::cycle(8);
        let p = SchemeParams { k: Some(2), ..SchemeParams::default() };
        let wf = hc_scheme_sample(HcKind::Treewidth, &g, &p, 5).unwrap();
        let lg = ceil_log2(8) as u64;
        let m = pow2(4 * (2 + lg));
        // all primes drawn from the single range M
        assert!(wf.meta.primes.iter().all(|q| *q <= m));
        assert_eq!(wf.meta.primes.len(), (3 * lg) as usize);
        // max weight < 2 (M n)^(3 lg n)
        let cap = (&m * BigUint::from(8u32)).pow(3 * lg as u32) * BigUint::from(2u8);
        assert!(wf.max_weight() < cap);
        assert!(wf.meta.declared_bound < cap);
    }

    #[test]
    fn parametric_needs_range_and_treewidth_needs_k() {
        let g = Graph::complete(4);
        let p = SchemeParams::default();
        assert!(matches!(
            hc_scheme_sample(HcKind::Parametric, &g, &p, 0),
            Err(Error::SchemeConfig(_))
        ));
        assert!(matches!(
            hc_scheme_sample(HcKind::Treewidth, &g, &p, 0),
            Err(Error::SchemeConfig(_))
        ));
    }

    #[test]
    fn separable_scheme_builds_and_stays_in_bound() {
        let g = Graph::cycle(8);
        let p = SchemeParams { alpha: Some((1, 2)), ..SchemeParams::default() };
        let wf = hc_scheme_sample(HcKind::Separable, &g, &p, 2).unwrap();
        let (primary, per_level) = separable_ranges(8, 4, (1, 2));
        assert_eq!(wf.meta.primes.len(), primary.len() + per_level.len());
        assert!(wf.max_weight() <= wf.meta.declared_bound);
    }

    #[test]
    fn mis_det_matches_powers_of_two() {
        // path 1-2-3 rooted at 2: weights 2,1,2
        let g = Graph::path(3);
        let f = EliminationForest::from_parents(vec![2, 0, 2]).unwrap();
        let wf = mis_det_weights(&g, &f).unwrap();
        assert_eq!(wf.get(1).unwrap().to_u64().unwrap(), 2);
        assert_eq!(wf.get(2).unwrap().to_u64().unwrap(), 1);
        assert_eq!(wf.get(3).unwrap().to_u64().unwrap(), 2);
    }

    #[test]
    fn mis_det_on_c4_isolates_the_lighter_side() {
        let g = Graph::cycle(4);
        let f = EliminationForest::from_parents(vec![0, 3, 1, 3]).unwrap();
        let wf = mis_det_weights(&g, &f).unwrap();
        let w13 = wf.total(&[1, 3]).unwrap().to_u64().unwrap();
        let w24 = wf.total(&[2, 4]).unwrap().to_u64().unwrap();
        assert_eq!((w13, w24), (3, 8));
    }

    #[test]
    fn mis_det_rejects_invalid_forest() {
        let g = Graph::cycle(4);
        let f = EliminationForest::from_parents(vec![0, 1, 2, 2]).unwrap();
        assert!(matches!(mis_det_weights(&g, &f), Err(Error::IncomparableEdge(3, 4))));
    }

    #[test]
    fn mis_rand_falls_back_below_five_log_n() {
        let t = mis_rand_level_weights(16, 3, 9);
        assert!(t.deterministic_fallback);
        assert_eq!(t.at_level(2), &BigUint::from(4u8));
        assert_eq!(t.random_bits, 0);
    }

    #[test]
    fn mis_rand_is_level_aware_and_bounded() {
        let n = 16u32;
        let d = 24u32;
        let a = mis_rand_level_weights(n, d, 3);
        let b = mis_rand_level_weights(n, d, 3);
        assert!(!a.deterministic_fallback);
        let cap = BigUint::from(32 * (n as u64).pow(5)) << (ceil_log2(n) - 1) as u64;
        for l in 0..d {
            assert_eq!(a.at_level(l), b.at_level(l));
            assert!(a.at_level(l) <= &cap);
        }
        // bits: (kappa+1) * ceil(log2(32 n^5)) with 32 * 16^5 = 2^25
        let kappa = d / ceil_log2(n);
        assert_eq!(a.random_bits, (kappa as u64 + 1) * 25);
    }

    #[test]
    fn matching_det_weights_on_p3() {
        // root 2: both edges have level 0, weights id * n^0 = id
        let g = Graph::path(3);
        let f = EliminationForest::from_parents(vec![2, 0, 2]).unwrap();
        let wf = matching_det_weights(&g, &f).unwrap();
        assert_eq!(wf.get(1).unwrap().to_u64().unwrap(), 1);
        assert_eq!(wf.get(2).unwrap().to_u64().unwrap(), 2);
    }

    #[test]
    fn matching_rand_degenerate_draws_reduce_to_ids() {
        let g = Graph::complete(4);
        let (_, f) = treedepth_exact(&g, 12).unwrap();
        let wf = matching_rand_weights_from_draws(&g, &f, &[1, 1, 1, 1]).unwrap();
        for id in 1..=g.m() {
            assert_eq!(wf.get(id).unwrap().to_u64().unwrap(), id as u64);
        }
    }

    #[test]
    fn matching_rand_is_deterministic_and_bounded() {
        let g = Graph::complete(5);
        let (_, f) = treedepth_exact(&g, 12).unwrap();
        let a = matching_rand_weights(&g, &f, 11).unwrap();
        let b = matching_rand_weights(&g, &f, 11).unwrap();
        for id in 1..=g.m() {
            assert_eq!(a.get(id).unwrap(), b.get(id).unwrap());
        }
        let cap = BigUint::from(g.m()) * BigUint::from(5u64.pow(10));
        assert!(a.max_weight() <= cap);
    }

    #[test]
    fn distinct_linear_forms_rarely_tie_at_the_minimum() {
        // view each maximum independent set X as the linear form
        // rho -> sum_v rho_{e(v)} 2^{f(v)}; over random draws of rho the event
        // "two distinct forms tie at the minimum" happens at most half the
        // time (here: far less; assert the stated bound)
        use crate::solutions::{enumerate_family, EnumerationLimits, Problem};
        use rand::Rng;
        let mut rng = crate::rng::stream(29, "linear-forms", 0);
        let mut graphs: Vec<(Graph, EliminationForest, u32)> = Vec::new();
        while graphs.len() < 4 {
            let n = rng.gen_range(8..=10u32);
            let mut edges = Vec::new();
            for u in 1..=n {
                for v in u + 1..=n {
                    if rng.gen_bool(0.3) {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::new(n, &edges).unwrap();
            let (d, f) = crate::forest::treedepth_exact(&g, 16).unwrap();
            // levels must exceed 5 ceil(lg n) so the randomized branch runs
            let d_padded = d.max(5 * ceil_log2(n));
            graphs.push((g, f, d_padded));
        }
        let mut exercised = false;
        for (g, f, d) in &graphs {
            let family = enumerate_family(
                &Problem::MaximumIndependentSet,
                g,
                EnumerationLimits::default(),
            )
            .unwrap();
            if family.len() < 2 {
                continue;
            }
            exercised = true;
            let lgn = ceil_log2(g.n()).max(1);
            let lvls = f.levels().unwrap();
            // coefficient of rho_e in the form of X: sum over v in X with
            // e(v) = e of 2^{f(v)}
            let coeffs = |x: &[u32]| -> Vec<u64> {
                let mut cs = vec![0u64; (*d / lgn) as usize + 1];
                for &v in x {
                    let i = lvls[v as usize - 1];
                    cs[(i / lgn) as usize] += 1 << (i % lgn);
                }
                cs
            };
            let forms: Vec<Vec<u64>> = family.sets.iter().map(|x| coeffs(x)).collect();
            let mut ties = 0u32;
            let trials = 200u32;
            for t in 0..trials {
                let mut r = crate::rng::stream(101, "form-draw", t as u64);
                let range = 32 * (g.n() as u64).pow(5);
                let draws: Vec<u64> = (0..forms[0].len()).map(|_| r.gen_range(1..=range)).collect();
                let values: Vec<u128> = forms
                    .iter()
                    .map(|f| f.iter().zip(&draws).map(|(&c, &r)| c as u128 * r as u128).sum())
                    .collect();
                let min = values.iter().min().unwrap();
                let minimizers: Vec<usize> =
                    (0..forms.len()).filter(|&i| values[i] == *min).collect();
                let distinct_tied = minimizers
                    .iter()
                    .any(|&i| minimizers.iter().any(|&j| forms[i] != forms[j]));
                if distinct_tied {
                    ties += 1;
                }
            }
            assert!(ties * 2 <= trials, "tie rate {}/{}", ties, trials);
        }
        assert!(exercised);
    }

    #[test]
    fn tsv_records_metadata() {
        let g = Graph::complete(4);
        let wf = hc_scheme_sample(HcKind::General, &g, &SchemeParams::default(), 7).unwrap();
        let tsv = wf.to_tsv();
        assert!(tsv.contains("# kind: hc-general"));
        assert!(tsv.contains("# seed: 7"));
        assert!(tsv.contains("# primes: "));
        assert_eq!(
            tsv.lines().filter(|l| !l.starts_with('#')).count(),
            g.m() as usize
        );
    }
}
