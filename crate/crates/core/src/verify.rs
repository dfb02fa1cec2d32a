//! Trial harnesses: isolation predicates, empirical success rates and the
//! modular-distinctness check behind the prime-hashing layers.

use crate::error::Error;
use crate::forest::EliminationForest;
use crate::graph::Graph;
use crate::schemes::{
    hc_scheme_sample, matching_rand_weights, mis_rand_level_weights, HcKind, SchemeParams,
    WeightFunction,
};
use crate::solutions::{enumerate_family, EnumerationLimits, Family, Problem};
use crate::Result;
use num_bigint::BigUint;
use num_traits::Zero;
use rayon::prelude::*;
use std::fmt::Write as _;

/// Result of a trial sweep.
#[derive(Debug, Clone)]
pub struct TrialReport {
    pub scheme: String,
    pub instance: String,
    pub trials: u64,
    pub successes: u64,
    pub seed: u64,
    pub max_weight: BigUint,
    pub random_bits: u64,
}

impl TrialReport {
    pub fn rate(&self) -> f64 {
        if self.trials == 0 {
            1.0
        } else {
            self.successes as f64 / self.trials as f64
        }
    }

    /// Single-line key=value record, appendable to a results log.
    pub fn to_line(&self) -> String {
        let mut s = String::new();
        let _ = write!(
            s,
            "scheme={} instance={} trials={} successes={} rate={:.4} seed={} max_weight={} random_bits={}",
            self.scheme,
            self.instance,
            self.trials,
            self.successes,
            self.rate(),
            self.seed,
            self.max_weight,
            self.random_bits
        );
        s
    }
}

/// True when exactly one member of the family attains the minimum weight.
/// Families with at most one member are isolated vacuously.
pub fn is_isolating(omega: &WeightFunction, family: &Family) -> Result<bool> {
    if family.len() <= 1 {
        return Ok(true);
    }
    let mut min: Option<BigUint> = None;
    let mut count = 0usize;
    for set in &family.sets {
        let w = omega.total(set)?;
        match &min {
            None => {
                min = Some(w);
                count = 1;
            }
            Some(best) => {
                if w < *best {
                    min = Some(w);
                    count = 1;
                } else if w == *best {
                    count += 1;
                }
            }
        }
    }
    Ok(count == 1)
}

/// What to sample on each trial.
#[derive(Debug, Clone)]
pub enum SchemeSpec {
    Hc { kind: HcKind, params: SchemeParams },
    MisDeterministic,
    MisRandomized { d: u32 },
    MatchingDeterministic,
    MatchingRandomized,
}

impl SchemeSpec {
    pub fn name(&self) -> String {
        match self {
            SchemeSpec::Hc { kind, .. } => kind.name().to_string(),
            SchemeSpec::MisDeterministic => "mis-det".into(),
            SchemeSpec::MisRandomized { .. } => "mis-rand".into(),
            SchemeSpec::MatchingDeterministic => "matching-det".into(),
            SchemeSpec::MatchingRandomized => "matching-rand".into(),
        }
    }

    pub fn problem(&self) -> Problem {
        match self {
            SchemeSpec::Hc { .. } => Problem::HamiltonianCycle,
            SchemeSpec::MisDeterministic | SchemeSpec::MisRandomized { .. } => {
                Problem::MaximumIndependentSet
            }
            SchemeSpec::MatchingDeterministic | SchemeSpec::MatchingRandomized => {
                Problem::MaximumMatching
            }
        }
    }

    fn sample(
        &self,
        g: &Graph,
        forest: Option<&EliminationForest>,
        seed: u64,
    ) -> Result<WeightFunction> {
        let need_forest = || {
            forest.ok_or_else(|| {
                Error::SchemeConfig("this scheme needs an elimination forest".into())
            })
        };
        match self {
            SchemeSpec::Hc { kind, params } => hc_scheme_sample(*kind, g, params, seed),
            SchemeSpec::MisDeterministic => crate::schemes::mis_det_weights(g, need_forest()?),
            SchemeSpec::MisRandomized { d } => {
                mis_rand_level_weights(g.n(), *d, seed).apply(g, need_forest()?)
            }
            SchemeSpec::MatchingDeterministic => {
                crate::schemes::matching_det_weights(g, need_forest()?)
            }
            SchemeSpec::MatchingRandomized => matching_rand_weights(g, need_forest()?, seed),
        }
    }
}

/// Runs `trials` independent seeds of the scheme against the exhaustively
/// enumerated family, in parallel; results are gathered by index, so the
/// report does not depend on scheduling.
pub fn success_rate(
    spec: &SchemeSpec,
    g: &Graph,
    forest: Option<&EliminationForest>,
    instance: &str,
    trials: u64,
    seed: u64,
    limits: EnumerationLimits,
) -> Result<TrialReport> {
    let family = enumerate_family(&spec.problem(), g, limits)?;
    let outcomes: Vec<Result<(bool, BigUint, u64)>> = (0..trials)
        .into_par_iter()
        .map(|i| {
            use rand::RngCore;
            let trial_seed = crate::rng::stream(seed, "trial-seed", i).next_u64();
            let omega = spec.sample(g, forest, trial_seed)?;
            let iso = is_isolating(&omega, &family)?;
            Ok((iso, omega.max_weight(), omega.meta.random_bits))
        })
        .collect();
    let mut successes = 0u64;
    let mut max_weight = BigUint::zero();
    let mut random_bits = 0u64;
    for o in outcomes {
        let (iso, w, bits) = o?;
        if iso {
            successes += 1;
        }
        if w > max_weight {
            max_weight = w;
        }
        random_bits = random_bits.max(bits);
    }
    Ok(TrialReport {
        scheme: spec.name(),
        instance: instance.to_string(),
        trials,
        successes,
        seed,
        max_weight,
        random_bits,
    })
}

/// Whether all members of `s` have pairwise distinct residues modulo `p`.
pub fn fks_check(s: &[BigUint], p: &BigUint) -> bool {
    let mut residues: Vec<BigUint> = s.iter().map(|x| x % p).collect();
    residues.sort();
    residues.windows(2).all(|w| w[0] != w[1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forest::treedepth_exact;
    use crate::numt::sample_prime;
    use crate::rng::stream;
    use crate::schemes::{Domain, SchemeMeta};
    use num_bigint::RandBigInt;
    use num_traits::One;

    fn weights_from(vals: &[u64], domain: Domain) -> WeightFunction {
        WeightFunction::new(
            domain,
            vals.iter().map(|&v| BigUint::from(v)).collect(),
            SchemeMeta {
                kind: "fixed".into(),
                params: String::new(),
                seed: None,
                primes: vec![],
                declared_bound: BigUint::from(*vals.iter().max().unwrap_or(&0)),
                random_bits: 0,
            },
        )
    }

    fn family(domain: Domain, sets: &[&[u32]]) -> Family {
        Family { domain, sets: sets.iter().map(|s| s.to_vec()).collect() }
    }

    #[test]
    fn isolating_basics() {
        let fam = family(Domain::Vertex, &[&[1], &[2]]);
        assert!(!is_isolating(&weights_from(&[1, 1], Domain::Vertex), &fam).unwrap());
        assert!(is_isolating(&weights_from(&[1, 2], Domain::Vertex), &fam).unwrap());
        let empty = family(Domain::Vertex, &[]);
        assert!(is_isolating(&weights_from(&[1], Domain::Vertex), &empty).unwrap());
    }

    #[test]
    fn isolating_reports_missing_domain() {
        let fam = family(Domain::Vertex, &[&[1], &[3]]);
        assert!(matches!(
            is_isolating(&weights_from(&[1, 2], Domain::Vertex), &fam),
            Err(Error::WeightDomain(3))
        ));
    }

    #[test]
    fn isolating_agrees_with_two_pass_oracle() {
        use rand::Rng;
        let mut rng = stream(3, "iso-oracle", 0);
        for _ in 0..200 {
            let universe = rng.gen_range(2..8u32);
            let members = rng.gen_range(0..8usize);
            let sets: Vec<Vec<u32>> = (0..members)
                .map(|_| {
                    let mut s: Vec<u32> =
                        (1..=universe).filter(|_| rng.gen_bool(0.5)).collect();
                    if s.is_empty() {
                        s.push(1);
                    }
                    s
                })
                .collect();
            let mut sets = sets;
            sets.sort();
            sets.dedup();
            let vals: Vec<u64> = (0..universe).map(|_| rng.gen_range(1..6)).collect();
            let w = weights_from(&vals, Domain::Vertex);
            let fam = Family { domain: Domain::Vertex, sets: sets.clone() };
            // oracle: compute all totals, count how many equal the minimum
            let totals: Vec<BigUint> =
                sets.iter().map(|s| w.total(s).unwrap()).collect();
            let expected = match totals.iter().min() {
                None => true,
                Some(min) => totals.iter().filter(|t| *t == min).count() == 1 || sets.len() <= 1,
            };
            assert_eq!(is_isolating(&w, &fam).unwrap(), expected);
        }
    }

    #[test]
    fn heavier_duplicate_member_never_flips_isolation() {
        use rand::Rng;
        let mut rng = stream(5, "iso-monotone", 0);
        for _ in 0..100 {
            let universe = 6u32;
            let sets: Vec<Vec<u32>> = (0..4)
                .map(|_| {
                    let mut s: Vec<u32> =
                        (1..=universe).filter(|_| rng.gen_bool(0.5)).collect();
                    if s.is_empty() {
                        s.push(1);
                    }
                    s.sort_unstable();
                    s
                })
                .collect();
            let mut sets = sets;
            sets.sort();
            sets.dedup();
            let vals: Vec<u64> = (0..universe).map(|_| rng.gen_range(1..10)).collect();
            let w = weights_from(&vals, Domain::Vertex);
            let fam = Family { domain: Domain::Vertex, sets: sets.clone() };
            if !is_isolating(&w, &fam).unwrap() {
                continue;
            }
            // append a strictly heavier member: the full universe plus weight
            let mut heavier = sets.clone();
            heavier.push((1..=universe).collect());
            heavier.sort();
            heavier.dedup();
            if heavier.len() == sets.len() {
                continue; // universe was already a member
            }
            let totals: Vec<BigUint> =
                sets.iter().map(|s| w.total(s).unwrap()).collect();
            let full = w.total(&(1..=universe).collect::<Vec<_>>()).unwrap();
            if totals.iter().all(|t| *t < full) {
                let fam2 = Family { domain: Domain::Vertex, sets: heavier };
                assert!(is_isolating(&w, &fam2).unwrap());
            }
        }
    }

    #[test]
    fn deterministic_mis_scheme_always_succeeds() {
        let g = Graph::cycle(5);
        let (_, f) = treedepth_exact(&g, 12).unwrap();
        let report = success_rate(
            &SchemeSpec::MisDeterministic,
            &g,
            Some(&f),
            "C5",
            20,
            1,
            EnumerationLimits::default(),
        )
        .unwrap();
        assert_eq!(report.successes, report.trials);
        assert!(report.to_line().contains("rate=1.0000"));
    }

    #[test]
    fn general_scheme_isolates_k4_most_of_the_time() {
        let g = Graph::complete(4);
        let report = success_rate(
            &SchemeSpec::Hc { kind: HcKind::General, params: SchemeParams::default() },
            &g,
            None,
            "K4",
            200,
            7,
            EnumerationLimits::default(),
        )
        .unwrap();
        assert!(report.rate() >= 0.5, "rate {}", report.rate());
    }

    #[test]
    fn vacuous_family_gives_rate_one() {
        // a tree has no Hamiltonian cycle
        let g = Graph::path(5);
        let report = success_rate(
            &SchemeSpec::Hc { kind: HcKind::General, params: SchemeParams::default() },
            &g,
            None,
            "P5",
            10,
            3,
            EnumerationLimits::default(),
        )
        .unwrap();
        assert_eq!(report.successes, 10);
    }

    #[test]
    fn success_rate_is_reproducible() {
        let g = Graph::complete(4);
        let spec = SchemeSpec::Hc { kind: HcKind::General, params: SchemeParams::default() };
        let a = success_rate(&spec, &g, None, "K4", 50, 9, EnumerationLimits::default()).unwrap();
        let b = success_rate(&spec, &g, None, "K4", 50, 9, EnumerationLimits::default()).unwrap();
        assert_eq!(a.to_line(), b.to_line());
    }

    #[test]
    fn fks_small_cases() {
        let s: Vec<BigUint> = [1u64, 2, 3].iter().map(|&x| BigUint::from(x)).collect();
        assert!(fks_check(&s, &BigUint::from(5u8)));
        let s: Vec<BigUint> = [1u64, 6].iter().map(|&x| BigUint::from(x)).collect();
        assert!(!fks_check(&s, &BigUint::from(5u8)));
    }

    #[test]
    fn fks_failure_rate_respects_the_hashing_bound() {
        // random 100-element sets of 64-bit numbers, primes up to 2^40:
        // failure probability at most n k^2 / sqrt(M) = 64 * 10^4 / 2^20,
        // plus three standard deviations of the 1000-trial estimate
        let trials = 1000u64;
        let p_bound = 64.0 * 100.0 * 100.0 / (2f64.powi(20));
        let sigma = (p_bound * (1.0 - p_bound) / trials as f64).sqrt().max(0.002);
        let m = BigUint::one() << 40;
        let mut failures = 0u64;
        for i in 0..trials {
            let mut rng = stream(17, "fks-trial", i);
            let set: Vec<BigUint> = (0..100).map(|_| rng.gen_biguint(64)).collect();
            let p = sample_prime(&m, &mut rng, "fks").unwrap().prime;
            if !fks_check(&set, &p) {
                failures += 1;
            }
        }
        let rate = failures as f64 / trials as f64;
        assert!(rate <= p_bound + 3.0 * sigma, "rate {rate}, bound {p_bound}");
    }
}
