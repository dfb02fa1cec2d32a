//! Number-theoretic support: primality testing, uniform prime sampling in
//! huge ranges, multiplicative-group generators, finite-field DFT coefficient
//! extraction and Chinese-remainder reconstruction.

use crate::error::Error;
use crate::Result;
use num_bigint::{BigUint, RandBigInt};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;

/// A sampled prime together with its range bound and provenance note.
#[derive(Debug, Clone)]
pub struct PrimeSample {
    pub prime: BigUint,
    pub range: BigUint,
    pub provenance: String,
}

/// Bases that make Miller-Rabin deterministic for all n < 3.3 * 10^24, which
/// covers everything below 2^64.
const SMALL_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

fn miller_rabin_witness(n: &BigUint, base: &BigUint) -> bool {
    // returns true if `base` witnesses that n is composite
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap();
    let d = &n_minus_1 >> s;
    let mut x = base.modpow(&d, n);
    if x.is_one() || x == n_minus_1 {
        return false;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if x == n_minus_1 {
            return false;
        }
    }
    true
}

/// Primality test: deterministic Miller-Rabin bases below 2^64, and 64
/// pseudo-random rounds (derived deterministically from `n`) above.
pub fn is_prime(n: &BigUint) -> bool {
    if *n < BigUint::from(2u8) {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43] {
        let p = BigUint::from(p);
        if *n == p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    if n.bits() <= 64 {
        return SMALL_BASES
            .iter()
            .all(|&b| !miller_rabin_witness(n, &BigUint::from(b)));
    }
    // seed the base stream from the candidate itself, so the test is a pure
    // function of n
    let seed = n.iter_u64_digits().fold(0u64, |acc, d| acc.rotate_left(17) ^ d);
    let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(seed ^ 0x6d72_7072_696d_6531);
    let lo = BigUint::from(2u8);
    let hi = n - BigUint::from(2u8);
    (0..64).all(|_| {
        let base = rng.gen_biguint_range(&lo, &hi);
        !miller_rabin_witness(n, &base)
    })
}

/// Uniform prime in `{1..=M}` by rejection sampling; deterministic given the
/// generator state.
pub fn sample_prime(
    m: &BigUint,
    rng: &mut impl Rng,
    provenance: impl Into<String>,
) -> Result<PrimeSample> {
    if *m < BigUint::from(2u8) {
        return Err(Error::RangeTooSmall(m.to_string()));
    }
    let lo = BigUint::one();
    let hi = m + BigUint::one(); // gen_biguint_range excludes the upper bound
    loop {
        let candidate = rng.gen_biguint_range(&lo, &hi);
        if is_prime(&candidate) {
            return Ok(PrimeSample {
                prime: candidate,
                range: m.clone(),
                provenance: provenance.into(),
            });
        }
    }
}

/// Trial division below 2^16, then Brent's rho; returns prime factors with
/// multiplicities, ascending.
pub fn factorize(n: &BigUint) -> Vec<(BigUint, u32)> {
    let mut n = n.clone();
    let mut factors: Vec<BigUint> = Vec::new();
    if n <= BigUint::one() {
        return Vec::new();
    }
    let mut p = 2u64;
    while p < (1 << 16) {
        let bp = BigUint::from(p);
        if (&bp * &bp) > n {
            break;
        }
        while (&n % &bp).is_zero() {
            factors.push(bp.clone());
            n /= &bp;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if is_prime(&m) {
            factors.push(m);
            continue;
        }
        let d = pollard_rho(&m);
        stack.push(&m / &d);
        stack.push(d);
    }
    factors.sort();
    let mut out: Vec<(BigUint, u32)> = Vec::new();
    for f in factors {
        match out.last_mut() {
            Some((p, e)) if *p == f => *e += 1,
            _ => out.push((f, 1)),
        }
    }
    out
}

fn pollard_rho(n: &BigUint) -> BigUint {
    if (n % 2u8).is_zero() {
        return BigUint::from(2u8);
    }
    let seed = n.iter_u64_digits().fold(1u64, |acc, d| acc.rotate_left(11) ^ d);
    let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(seed);
    loop {
        let c = rng.gen_biguint_below(n);
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut x = rng.gen_biguint_below(n);
        let mut y = x.clone();
        loop {
            x = f(&x);
            y = f(&f(&y));
            if x == y {
                break; // cycle without factor; retry with new parameters
            }
            let diff = if x > y { &x - &y } else { &y - &x };
            let d = diff.gcd(n);
            if !d.is_one() {
                if d == *n {
                    break;
                }
                return d;
            }
        }
    }
}

/// Finds the smallest generator of the multiplicative group modulo the prime
/// `p`, via the prime-factor test on the group order.
pub fn find_generator(p: &BigUint) -> Result<BigUint> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p.to_string()));
    }
    let one = BigUint::one();
    if *p == BigUint::from(2u8) {
        return Ok(one); // the trivial group
    }
    let order = p - &one;
    let prime_factors: Vec<BigUint> = factorize(&order).into_iter().map(|(q, _)| q).collect();
    let mut candidate = BigUint::from(2u8);
    while candidate < *p {
        if prime_factors
            .iter()
            .all(|q| !candidate.modpow(&(&order / q), p).is_one())
        {
            return Ok(candidate);
        }
        candidate += &one;
    }
    unreachable!("every prime field has a generator");
}

#[inline]
fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

fn invmod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

/// Extracts the coefficient of `x^t` from the polynomial behind `eval` by the
/// inverse discrete Fourier transform over `F_p`:
/// `c_t = N^{-1} * sum_i rho^{-i t} P(rho^i)`.
///
/// `rho` must be a primitive `n_order`-root of unity and the polynomial degree
/// must be below `n_order`.
pub fn dft_coefficient(
    eval: &mut dyn FnMut(u64) -> u64,
    rho: u64,
    n_order: u64,
    t: u64,
    p: u64,
) -> Result<u64> {
    if !is_prime(&BigUint::from(p)) {
        return Err(Error::NotPrime(p.to_string()));
    }
    if rho % p == 0 || powmod(rho, n_order, p) != 1 {
        return Err(Error::InvalidRoot(rho, n_order, p));
    }
    // primitive: rho^(N/q) != 1 for every prime q dividing N
    for (q, _) in factorize(&BigUint::from(n_order)) {
        let q = q.to_u64().unwrap();
        if powmod(rho, n_order / q, p) == 1 {
            return Err(Error::InvalidRoot(rho, n_order, p));
        }
    }
    let rho_inv_t = powmod(invmod(rho, p), t % n_order, p);
    let mut acc = 0u64;
    let mut point = 1u64; // rho^i
    let mut twiddle = 1u64; // rho^{-i t}
    for _ in 0..n_order {
        let val = eval(point) % p;
        acc = (acc + mulmod(twiddle, val, p)) % p;
        point = mulmod(point, rho, p);
        twiddle = mulmod(twiddle, rho_inv_t, p);
    }
    Ok(mulmod(acc, invmod(n_order % p, p), p))
}

/// Reconstructs the unique `x` below the product of the moduli with
/// `x = r_i (mod p_i)` for all i. The moduli must be pairwise coprime and
/// their product must exceed `bound`.
pub fn crt_reconstruct(residues: &[(BigUint, BigUint)], bound: &BigUint) -> Result<BigUint> {
    let mut product = BigUint::one();
    for (i, (_, p)) in residues.iter().enumerate() {
        for (_, q) in &residues[i + 1..] {
            if !p.gcd(q).is_one() {
                return Err(Error::NonCoprimeModuli(p.to_string(), q.to_string()));
            }
        }
        product *= p;
    }
    if product <= *bound {
        return Err(Error::InsufficientModuli(bound.to_string()));
    }
    let mut x = BigUint::zero();
    let mut m = BigUint::one();
    for (r, p) in residues {
        let r = r % p;
        // x' = x + m * ((r - x) * m^{-1} mod p)
        let m_inv = (&m % p)
            .modinv(p)
            .expect("coprimality was checked above");
        let x_mod_p = &x % p;
        let delta = if r >= x_mod_p { &r - &x_mod_p } else { p - (&x_mod_p - &r) };
        x += &m * ((delta * m_inv) % p);
        m *= p;
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::stream;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn miller_rabin_agrees_with_trial_division_up_to_a_million() {
        let limit = 1_000_000usize;
        let mut sieve = vec![true; limit + 1];
        sieve[0] = false;
        sieve[1] = false;
        for i in 2..=limit {
            if sieve[i] {
                let mut j = i * i;
                while j <= limit {
                    sieve[j] = false;
                    j += i;
                }
            }
        }
        for n in 0..=limit {
            assert_eq!(is_prime(&big(n as u64)), sieve[n], "disagree at {}", n);
        }
    }

    #[test]
    fn sampling_rejects_tiny_range() {
        let mut rng = stream(1, "prime", 0);
        assert!(matches!(
            sample_prime(&big(1), &mut rng, "test"),
            Err(Error::RangeTooSmall(_))
        ));
    }

    #[test]
    fn sampling_m2_always_yields_2() {
        for seed in 0..20 {
            let mut rng = stream(seed, "prime", 0);
            assert_eq!(sample_prime(&big(2), &mut rng, "test").unwrap().prime, big(2));
        }
    }

    #[test]
    fn sampling_is_deterministic_at_80_bits() {
        let m = BigUint::one() << 80;
        let a = sample_prime(&m, &mut stream(42, "prime", 7), "t").unwrap();
        let b = sample_prime(&m, &mut stream(42, "prime", 7), "t").unwrap();
        assert_eq!(a.prime, b.prime);
        assert!(a.prime <= m);
        assert!(is_prime(&a.prime));
    }

    #[test]
    fn sampling_m10_is_roughly_uniform() {
        // chi-square over the four primes {2,3,5,7} with 10^4 draws;
        // 99%-quantile of chi2(3) is 11.34, assert with headroom
        let mut counts = [0u32; 4];
        for i in 0..10_000u64 {
            let mut rng = stream(9, "prime-uniform", i);
            let p = sample_prime(&big(10), &mut rng, "t").unwrap().prime;
            let idx = [2u64, 3, 5, 7]
                .iter()
                .position(|&q| big(q) == p)
                .expect("prime in range");
            counts[idx] += 1;
        }
        let expected = 2500.0f64;
        let chi2: f64 = counts
            .iter()
            .map(|&c| {
                let d = c as f64 - expected;
                d * d / expected
            })
            .sum();
        assert!(chi2 < 16.0, "chi2 = {chi2}, counts = {counts:?}");
    }

    #[test]
    fn generators_for_small_primes() {
        assert_eq!(find_generator(&big(2)).unwrap(), big(1));
        assert_eq!(find_generator(&big(5)).unwrap(), big(2));
        assert_eq!(find_generator(&big(7)).unwrap(), big(3));
        assert!(matches!(find_generator(&big(6)), Err(Error::NotPrime(_))));
    }

    #[test]
    fn generator_order_is_exact_below_10000() {
        // order of g is exactly p-1: g^(p-1) = 1 and g^((p-1)/q) != 1
        for p in (3..10_000u64).filter(|&p| is_prime(&big(p))) {
            let g = find_generator(&big(p)).unwrap().to_u64().unwrap();
            assert_eq!(powmod(g, p - 1, p), 1);
            for (q, _) in factorize(&big(p - 1)) {
                let q = q.to_u64().unwrap();
                assert_ne!(powmod(g, (p - 1) / q, p), 1, "p={p} g={g} q={q}");
            }
        }
    }

    #[test]
    fn dft_constant_polynomial() {
        let p = 13u64;
        let g = find_generator(&big(p)).unwrap().to_u64().unwrap();
        let n = p - 1;
        for t in 0..n {
            let c = dft_coefficient(&mut |_| 9, g, n, t, p).unwrap();
            assert_eq!(c, if t == 0 { 9 } else { 0 });
        }
    }

    #[test]
    fn dft_identity_polynomial_over_f5() {
        // P(x) = x with rho = 2, N = 4 over F_5
        for (t, want) in [(0u64, 0u64), (1, 1), (2, 0), (3, 0)] {
            let c = dft_coefficient(&mut |x| x, 2, 4, t, 5).unwrap();
            assert_eq!(c, want, "t = {t}");
        }
    }

    #[test]
    fn dft_rejects_non_primitive_root() {
        // 4 has order 2 modulo 5, not 4
        assert!(matches!(
            dft_coefficient(&mut |x| x, 4, 4, 0, 5),
            Err(Error::InvalidRoot(4, 4, 5))
        ));
        assert!(matches!(
            dft_coefficient(&mut |x| x, 3, 3, 0, 5),
            Err(Error::InvalidRoot(3, 3, 5))
        ));
    }

    #[test]
    fn dft_round_trips_random_polynomials() {
        use rand::Rng;
        let mut rng = stream(11, "dft", 0);
        for p in [97u64, 193, 257] {
            let g = find_generator(&big(p)).unwrap().to_u64().unwrap();
            let n = p - 1;
            for _ in 0..200 {
                let deg = rng.gen_range(0..8usize);
                let coeffs: Vec<u64> = (0..=deg).map(|_| rng.gen_range(0..p)).collect();
                let mut eval = |x: u64| {
                    coeffs.iter().rev().fold(0u64, |acc, &c| (mulmod(acc, x, p) + c) % p)
                };
                for (t, &want) in coeffs.iter().enumerate() {
                    let c = dft_coefficient(&mut eval, g, n, t as u64, p).unwrap();
                    assert_eq!(c, want);
                }
                let beyond = dft_coefficient(&mut eval, g, n, deg as u64 + 1, p).unwrap();
                assert_eq!(beyond, 0);
            }
        }
    }

    #[test]
    fn crt_small_cases() {
        assert_eq!(
            crt_reconstruct(&[(big(1), big(3)), (big(1), big(5))], &big(14)).unwrap(),
            big(1)
        );
        assert_eq!(
            crt_reconstruct(&[(big(2), big(3)), (big(3), big(5))], &big(14)).unwrap(),
            big(8)
        );
        assert!(matches!(
            crt_reconstruct(&[(big(0), big(2))], &big(10)),
            Err(Error::InsufficientModuli(_))
        ));
        assert!(matches!(
            crt_reconstruct(&[(big(1), big(4)), (big(1), big(6))], &big(10)),
            Err(Error::NonCoprimeModuli(_, _))
        ));
    }

    #[test]
    fn crt_agrees_with_brute_force() {
        // all x in 0..15 against moduli (3, 5)
        for x in 0u64..15 {
            let got = crt_reconstruct(&[(big(x % 3), big(3)), (big(x % 5), big(5))], &big(14)).unwrap();
            assert_eq!(got, big(x));
        }
    }

    #[test]
    fn factorize_small() {
        let f = factorize(&big(360));
        assert_eq!(f, vec![(big(2), 3), (big(3), 2), (big(5), 1)]);
        assert_eq!(factorize(&big(1)), vec![]);
        assert_eq!(factorize(&big(97)), vec![(big(97), 1)]);
    }
}
