//! Desk-scale derandomized Hamiltonicity driver.
//!
//! The driver enumerates an isolation scheme's weight functions (either by
//! seed sampling or by walking every prime tuple of the scheme's ranges) and,
//! for each weight function `ω` and target `t`, asks a detector whether some
//! Hamiltonian cycle has weight exactly `t`. A detector hit is a cycle, so a
//! positive answer is sound regardless of budget. The built-in brute-force
//! detector is correct unconditionally, which also makes a completed sweep of
//! the whole achievable range `[Σ n smallest, Σ n largest]` without a hit a
//! sound negative answer.

use crate::error::Error;
use crate::graph::Graph;
use crate::numt::{crt_reconstruct, dft_coefficient, find_generator, is_prime};
use crate::rng;
use crate::schemes::{hc_scheme_from_primes, hc_scheme_sample, HcKind, SchemeParams, WeightFunction};
use crate::solutions::{enumerate_family, EnumerationLimits, Problem};
use crate::Result;
use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

/// A per-(graph, weight function) membership oracle over cycle weights.
pub trait PreparedDetector {
    /// Whether some Hamiltonian cycle has weight exactly `t`.
    fn detect(&self, t: &BigUint) -> bool;

    fn detect_u64(&self, t: u64) -> bool {
        self.detect(&BigUint::from(t))
    }
}

/// Detector factory; the driver only ever issues membership queries against
/// the prepared oracle.
pub trait HcDetector {
    fn prepare(&self, g: &Graph, omega: &WeightFunction) -> Result<Box<dyn PreparedDetector>>;
}

/// Exhaustive detector: enumerates all Hamiltonian cycles once and answers
/// queries from the sorted weight list. Correct unconditionally, not just
/// when the weight-t cycle is unique.
#[derive(Debug, Clone)]
pub struct BruteForceDetector {
    pub cap: usize,
}

impl Default for BruteForceDetector {
    fn default() -> Self {
        BruteForceDetector { cap: 12 }
    }
}

struct PreparedBruteForce {
    weights: Vec<BigUint>,
    small: Option<Vec<u64>>, // sorted, present when every weight fits u64
}

impl PreparedDetector for PreparedBruteForce {
    fn detect(&self, t: &BigUint) -> bool {
        self.weights.binary_search(t).is_ok()
    }

    fn detect_u64(&self, t: u64) -> bool {
        match &self.small {
            Some(v) => v.binary_search(&t).is_ok(),
            None => self.detect(&BigUint::from(t)),
        }
    }
}

impl HcDetector for BruteForceDetector {
    fn prepare(&self, g: &Graph, omega: &WeightFunction) -> Result<Box<dyn PreparedDetector>> {
        let limits = EnumerationLimits { hamiltonian: self.cap, ..EnumerationLimits::default() };
        let family = enumerate_family(&Problem::HamiltonianCycle, g, limits)?;
        let mut weights: Vec<BigUint> = family
            .sets
            .iter()
            .map(|ids| omega.total(ids))
            .collect::<Result<_>>()?;
        weights.sort();
        weights.dedup();
        let small = weights
            .iter()
            .map(|w| w.to_u64())
            .collect::<Option<Vec<u64>>>();
        Ok(Box::new(PreparedBruteForce { weights, small }))
    }
}

/// Whether some Hamiltonian cycle of `g` has weight exactly `t`.
pub fn unique_weight_detector(g: &Graph, omega: &WeightFunction, t: &BigUint) -> Result<bool> {
    Ok(BruteForceDetector::default().prepare(g, omega)?.detect(t))
}

/// How the driver enumerates weight functions.
#[derive(Debug, Clone)]
pub enum OmegaSchedule {
    /// Monte Carlo: `count` sampled weight functions from derived seeds.
    Seeds { kind: HcKind, params: SchemeParams, seed: u64, count: u64 },
    /// Deterministic: every tuple of primes from the scheme's ranges; only
    /// viable when the ranges are tiny.
    PrimeTuples { kind: HcKind, params: SchemeParams },
}

/// Caps the number of detector queries.
#[derive(Debug, Clone, Copy)]
pub struct Budget {
    pub max_detector_calls: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_detector_calls: 1 << 28 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HcDecision {
    Hamiltonian,
    NotHamiltonian,
    /// The budget ran out before any weight function's range was swept.
    Inconclusive,
}

#[derive(Debug, Clone)]
pub struct SolveReport {
    pub decision: HcDecision,
    pub detector_calls: u64,
    pub weight_functions_tried: u64,
}

fn primes_up_to(m: u64) -> Vec<u64> {
    (2..=m).filter(|&x| is_prime(&BigUint::from(x))).collect()
}

fn tuple_space(kind: HcKind, g: &Graph, params: &SchemeParams) -> Result<Vec<Vec<BigUint>>> {
    let ranges = crate::schemes::hc_ranges(kind, g.n(), params)?;
    let mut lists: Vec<Vec<u64>> = Vec::new();
    let mut total: u128 = 1;
    for m in &ranges {
        let m = m
            .to_u64()
            .filter(|&m| m <= 1 << 20)
            .ok_or_else(|| Error::SchemeConfig("prime tuple mode needs tiny ranges".into()))?;
        let ps = primes_up_to(m);
        if ps.is_empty() {
            return Err(Error::SchemeConfig(format!("no prime in 1..={m}")));
        }
        total = total.saturating_mul(ps.len() as u128);
        if total > 1_000_000 {
            return Err(Error::SchemeConfig("prime tuple space too large".into()));
        }
        lists.push(ps);
    }
    // odometer over the cartesian product
    let mut tuples = Vec::new();
    let mut idx = vec![0usize; lists.len()];
    loop {
        tuples.push(
            idx.iter()
                .zip(&lists)
                .map(|(&i, l)| BigUint::from(l[i]))
                .collect::<Vec<BigUint>>(),
        );
        let mut pos = 0;
        loop {
            if pos == lists.len() {
                return Ok(tuples);
            }
            idx[pos] += 1;
            if idx[pos] < lists[pos].len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

/// Sum of the `n` smallest and `n` largest edge weights: every Hamiltonian
/// cycle weight lies in this interval.
fn weight_envelope(g: &Graph, omega: &WeightFunction) -> Result<(BigUint, BigUint)> {
    let mut all: Vec<BigUint> = (1..=g.m()).map(|id| omega.get(id).cloned()).collect::<Result<_>>()?;
    all.sort();
    let n = g.n() as usize;
    let lo: BigUint = all[..n].iter().sum();
    let hi: BigUint = all[all.len() - n..].iter().sum();
    Ok((lo, hi))
}

/// Runs the derandomized driver: for each scheduled weight function, sweeps
/// every target in its achievable envelope. A detector hit decides
/// Hamiltonian; a completed sweep without a hit decides not Hamiltonian; an
/// exhausted budget is inconclusive.
pub fn solve_hc_deterministic(
    g: &Graph,
    schedule: &OmegaSchedule,
    detector: &dyn HcDetector,
    budget: Budget,
) -> Result<SolveReport> {
    let n = g.n() as usize;
    if n < 3 || (g.m() as usize) < n {
        // too few vertices or edges for any cycle through all vertices
        return Ok(SolveReport {
            decision: HcDecision::NotHamiltonian,
            detector_calls: 0,
            weight_functions_tried: 0,
        });
    }
    let omegas: Vec<WeightFunction> = match schedule {
        OmegaSchedule::Seeds { kind, params, seed, count } => (0..*count)
            .map(|i| {
                use rand::RngCore;
                let s = rng::stream(*seed, "solve-hc", i).next_u64();
                hc_scheme_sample(*kind, g, params, s)
            })
            .collect::<Result<_>>()?,
        OmegaSchedule::PrimeTuples { kind, params } => tuple_space(*kind, g, params)?
            .into_iter()
            .map(|primes| hc_scheme_from_primes(*kind, g, params, primes))
            .collect::<Result<_>>()?,
    };

    let mut calls = 0u64;
    let mut tried = 0u64;
    for omega in &omegas {
        if calls >= budget.max_detector_calls {
            break;
        }
        tried += 1;
        let prepared = detector.prepare(g, omega)?;
        let (lo, hi) = weight_envelope(g, omega)?;
        let remaining = budget.max_detector_calls - calls;
        let range = &hi - &lo + BigUint::one();
        let complete = range <= BigUint::from(remaining);
        let steps = if complete { range.to_u64() } else { Some(remaining) };
        match (lo.to_u64(), hi.to_u64(), steps) {
            (Some(lo), Some(_), Some(steps)) => {
                for t in lo..lo + steps {
                    calls += 1;
                    if prepared.detect_u64(t) {
                        return Ok(SolveReport {
                            decision: HcDecision::Hamiltonian,
                            detector_calls: calls,
                            weight_functions_tried: tried,
                        });
                    }
                }
            }
            _ => {
                // big-number sweep; same semantics, slower
                let mut t = lo.clone();
                let mut left = steps.unwrap_or(remaining);
                while left > 0 {
                    calls += 1;
                    left -= 1;
                    if prepared.detect(&t) {
                        return Ok(SolveReport {
                            decision: HcDecision::Hamiltonian,
                            detector_calls: calls,
                            weight_functions_tried: tried,
                        });
                    }
                    t += BigUint::one();
                }
            }
        }
        if complete {
            // the full achievable range was swept with an unconditional
            // detector and nothing fired
            return Ok(SolveReport {
                decision: HcDecision::NotHamiltonian,
                detector_calls: calls,
                weight_functions_tried: tried,
            });
        }
    }
    Ok(SolveReport {
        decision: HcDecision::Inconclusive,
        detector_calls: calls,
        weight_functions_tried: tried,
    })
}

/// Extracts the integer coefficient of `x^t` from a polynomial available only
/// through evaluation oracles modulo several primes: per-prime inverse DFT
/// through a group generator, then Chinese-remainder reconstruction. The
/// result is exact whenever the true coefficient is below `bound` and the
/// prime product exceeds it.
pub fn coefficient_pipeline(
    primes: &[u64],
    mut eval: impl FnMut(u64, u64) -> u64,
    t: u64,
    bound: &BigUint,
) -> Result<BigUint> {
    let mut residues: Vec<(BigUint, BigUint)> = Vec::new();
    for &p in primes {
        let g = find_generator(&BigUint::from(p))?
            .to_u64()
            .expect("generator fits the field");
        let c = dft_coefficient(&mut |x| eval(p, x), g, p - 1, t, p)?;
        residues.push((BigUint::from(c), BigUint::from(p)));
    }
    crt_reconstruct(&residues, bound)
}
