//! Number-theoretic kernel: modular exponentiation, primality, factoring,
//! multiplicative order and the primitive-root / Blum predicates.
//!
//! The public entry points take [`BigUint`]. Whenever the modulus fits in a
//! machine word the work is routed through the `*_u64` functions, which use
//! 128-bit intermediate products and return identical results.

use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Trial division runs over every prime up to this bound before Pollard rho
/// takes over.
pub const TRIAL_DIVISION_BOUND: u32 = 1_000_000;

/// Miller-Rabin witnesses that are deterministic for every n < 3.3 * 10^24.
const DETERMINISTIC_WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Default round count used when primality of a caller-supplied modulus is
/// checked and the value does not fit in 64 bits.
pub const DEFAULT_PRIMALITY_ROUNDS: u32 = 40;

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// `base^exp mod m` with a word-sized modulus. `m == 1` yields 0.
pub fn mod_pow_u64(base: u64, mut exp: u64, m: u64) -> u64 {
    debug_assert!(m >= 1);
    if m == 1 {
        return 0;
    }
    let mut base = base % m;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// Computes `base^exponent mod modulus`.
///
/// Runs in O(log exponent) modular multiplications. Fails when the modulus is
/// below 2.
pub fn mod_exp(base: &BigUint, exponent: &BigUint, modulus: &BigUint) -> Result<BigUint> {
    if *modulus < BigUint::from(2u32) {
        return Err(Error::InvalidModulus(modulus.clone()));
    }
    if let Some(m) = modulus.to_u64() {
        let mut b = (base % m).to_u64().expect("reduced below a u64 modulus");
        let mut acc = 1u64 % m;
        // Square-and-multiply over the exponent's limbs, least significant first.
        for limb in exponent.iter_u64_digits() {
            let mut limb = limb;
            for _ in 0..64 {
                if limb & 1 == 1 {
                    acc = mul_mod(acc, b, m);
                }
                b = mul_mod(b, b, m);
                limb >>= 1;
            }
        }
        return Ok(BigUint::from(acc));
    }
    Ok(base.modpow(exponent, modulus))
}

fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = TRIAL_DIVISION_BOUND as usize;
        let mut composite = vec![false; n + 1];
        let mut primes = Vec::with_capacity(80_000);
        for i in 2..=n {
            if !composite[i] {
                primes.push(i as u32);
                let mut j = i * i;
                while j <= n {
                    composite[j] = true;
                    j += i;
                }
            }
        }
        primes
    })
}

fn miller_rabin_round_u64(n: u64, d: u64, s: u32, a: u64) -> bool {
    let a = a % n;
    if a == 0 {
        return true;
    }
    let mut x = mod_pow_u64(a, d, n);
    if x == 1 || x == n - 1 {
        return true;
    }
    for _ in 1..s {
        x = mul_mod(x, x, n);
        if x == n - 1 {
            return true;
        }
    }
    false
}

/// Deterministic primality test for word-sized inputs.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &DETERMINISTIC_WITNESSES {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    DETERMINISTIC_WITNESSES
        .iter()
        .all(|&a| miller_rabin_round_u64(n, d, s, a))
}

// splitmix64; witnesses for large inputs are derived from n so results are
// reproducible run to run.
fn splitmix(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Miller-Rabin primality test.
///
/// Inputs below 2^64 get an exact answer from a fixed witness set. Larger
/// inputs run `rounds` rounds with witnesses drawn deterministically from n,
/// so a composite survives with probability at most 4^-rounds.
pub fn is_probable_prime(n: &BigUint, rounds: u32) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    if n.is_even() {
        return false;
    }
    for &p in small_primes().iter().take(1000) {
        if (n % p).is_zero() {
            return false;
        }
    }
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().expect("n - 1 is non-zero");
    let d = &n_minus_1 >> s;
    let span = n - 3u32; // witnesses in [2, n - 2]
    let mut state = n
        .iter_u64_digits()
        .fold(0x5eed_u64, |acc, limb| acc ^ limb.rotate_left(17));
    'witness: for _ in 0..rounds.max(1) {
        let mut raw = BigUint::zero();
        for _ in 0..(n.bits() / 64 + 1) {
            raw = (raw << 64) + splitmix(&mut state);
        }
        let a = raw % &span + 2u32;
        let mut x = a.modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = &x * &x % n;
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// True iff `p` is prime and `p ≡ 3 (mod 4)`.
pub fn is_blum_prime(p: &BigUint) -> bool {
    (p % 4u32) == BigUint::from(3u32) && is_probable_prime(p, DEFAULT_PRIMALITY_ROUNDS)
}

/// Complete prime factorization of an integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    value: BigUint,
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    /// The factored integer.
    pub fn value(&self) -> &BigUint {
        &self.value
    }

    /// `(prime, exponent)` pairs in increasing prime order.
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    /// Multiplies the factors back together.
    pub fn recompose(&self) -> BigUint {
        self.factors
            .iter()
            .fold(BigUint::one(), |acc, &(p, e)| acc * BigUint::from(p).pow(e))
    }

    /// Carmichael function λ(n): the exponent of the unit group mod n.
    pub fn carmichael(&self) -> u64 {
        let mut lambda: u128 = 1;
        for &(p, e) in &self.factors {
            let part: u128 = if p == 2 {
                match e {
                    1 => 1,
                    2 => 2,
                    _ => 1u128 << (e - 2),
                }
            } else {
                (p as u128).pow(e - 1) * (p as u128 - 1)
            };
            lambda = lambda.lcm(&part);
        }
        u64::try_from(lambda).expect("λ(n) < n <= 2^64")
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &(p, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str(" · ")?;
            }
            if e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Montgomery arithmetic modulo an odd word-sized n, with R = 2^64.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Montgomery {
    n: u64,
    n_inv: u64,
    r2: u64,
}

impl Montgomery {
    pub(crate) fn new(n: u64) -> Self {
        debug_assert!(n % 2 == 1);
        // Newton iteration doubles the correct low bits each round: 1 → 64.
        let mut n_inv = n;
        for _ in 0..6 {
            n_inv = n_inv.wrapping_mul(2u64.wrapping_sub(n.wrapping_mul(n_inv)));
        }
        let r = ((1u128 << 64) % n as u128) as u64;
        Montgomery {
            n,
            n_inv,
            r2: mul_mod(r, r, n),
        }
    }

    #[inline]
    fn reduce(&self, t: u128) -> u64 {
        let m = (t as u64).wrapping_mul(self.n_inv);
        let mn_hi = ((m as u128 * self.n as u128) >> 64) as u64;
        let t_hi = (t >> 64) as u64;
        if t_hi < mn_hi {
            t_hi.wrapping_sub(mn_hi).wrapping_add(self.n)
        } else {
            t_hi - mn_hi
        }
    }

    #[inline]
    pub(crate) fn mul(&self, a: u64, b: u64) -> u64 {
        self.reduce(a as u128 * b as u128)
    }

    #[inline]
    pub(crate) fn encode(&self, x: u64) -> u64 {
        self.mul(x % self.n, self.r2)
    }

    #[cfg(test)]
    pub(crate) fn decode(&self, x: u64) -> u64 {
        self.reduce(x as u128)
    }

    #[inline]
    fn add(&self, a: u64, b: u64) -> u64 {
        let (s, overflow) = a.overflowing_add(b);
        if overflow || s >= self.n {
            s.wrapping_sub(self.n)
        } else {
            s
        }
    }
}

fn pollard_brent(n: u64) -> u64 {
    debug_assert!(n % 2 == 1 && !is_prime_u64(n));
    let abs_diff = |a: u64, b: u64| a.max(b) - a.min(b);
    // Iterates x → x² + c in Montgomery form; differences keep their common
    // factors with n since R is a unit.
    let mont = Montgomery::new(n);
    let mut seed = n;
    loop {
        let c = splitmix(&mut seed) % (n - 1) + 1;
        let mut y = splitmix(&mut seed) % n;
        let f = |x: u64| mont.add(mont.mul(x, x), c);
        let block = 128u64;
        let (mut g, mut r, mut q) = (1u64, 1u64, mont.encode(1));
        let mut x = y;
        let mut ys = y;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..block.min(r - k) {
                    y = f(y);
                    q = mont.mul(q, abs_diff(x, y));
                }
                g = gcd_u64(q, n);
                k += block;
            }
            r *= 2;
        }
        if g == n {
            // Backtrack one step at a time from the last saved position.
            loop {
                ys = f(ys);
                g = gcd_u64(abs_diff(x, ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
}

fn rho_factor(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime_u64(n) {
        out.push(n);
        return;
    }
    let d = pollard_brent(n);
    rho_factor(d, out);
    rho_factor(n / d, out);
}

fn collect(primes: Vec<u64>) -> Vec<(u64, u32)> {
    let mut primes = primes;
    primes.sort_unstable();
    let mut factors: Vec<(u64, u32)> = Vec::new();
    for p in primes {
        match factors.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => factors.push((p, 1)),
        }
    }
    factors
}

/// Factors a word-sized integer `n >= 2`.
pub fn factorize_u64(n: u64) -> Vec<(u64, u32)> {
    assert!(n >= 2, "factorize_u64 needs n >= 2");
    let mut rest = n;
    let mut primes = Vec::new();
    let twos = rest.trailing_zeros();
    primes.extend(std::iter::repeat_n(2, twos as usize));
    rest >>= twos;
    for &p in small_primes().iter().skip(1) {
        let p = p as u64;
        if p * p > rest {
            break;
        }
        while rest.is_multiple_of(p) {
            primes.push(p);
            rest /= p;
        }
    }
    if rest > 1 {
        rho_factor(rest, &mut primes);
    }
    collect(primes)
}

/// Complete factorization of `2 <= n <= 2^64`.
///
/// Trial division up to 10^6 followed by Pollard-rho (Brent variant) on the
/// cofactor. Larger inputs are rejected.
pub fn factorize(n: &BigUint) -> Result<Factorization> {
    if *n < BigUint::from(2u32) {
        return Err(Error::InvalidModulus(n.clone()));
    }
    if n.bits() > 65 || (n.bits() == 65 && *n != BigUint::one() << 64u32) {
        return Err(Error::UnsupportedSize {
            what: format!("factorization input {n}"),
            limit: "2^64".into(),
        });
    }
    let twos = n.trailing_zeros().unwrap_or(0);
    let odd = (n >> twos).to_u64().expect("odd part of n <= 2^64 fits u64");
    let mut factors = Vec::new();
    if twos > 0 {
        factors.push((2u64, twos as u32));
    }
    if odd > 1 {
        factors.extend(factorize_u64(odd));
    }
    Ok(Factorization {
        value: n.clone(),
        factors,
    })
}

fn strip_to_order(g: u64, m: u64, mut t: u64, primes: impl Iterator<Item = u64>) -> u64 {
    for q in primes {
        while t.is_multiple_of(q) && mod_pow_u64(g, t / q, m) == 1 {
            t /= q;
        }
    }
    t
}

/// Multiplicative order of `g` modulo a word-sized `m >= 2`.
pub fn multiplicative_order_u64(g: u64, m: u64) -> Result<u64> {
    if m < 2 {
        return Err(Error::InvalidModulus(BigUint::from(m)));
    }
    if gcd_u64(g % m, m) != 1 {
        return Err(Error::NotAUnit {
            value: BigUint::from(g),
            modulus: BigUint::from(m),
        });
    }
    let lambda = if is_prime_u64(m) {
        m - 1
    } else {
        Factorization {
            value: BigUint::from(m),
            factors: factorize_u64(m),
        }
        .carmichael()
    };
    if lambda == 1 {
        return Ok(1);
    }
    let group = factorize_u64(lambda);
    Ok(strip_to_order(g, m, lambda, group.into_iter().map(|(q, _)| q)))
}

/// Smallest `t >= 1` with `g^t ≡ 1 (mod m)`.
///
/// Starts from the group exponent (p − 1 for prime m, the Carmichael function
/// otherwise) and strips prime factors while the power stays at 1.
pub fn multiplicative_order(g: &BigUint, m: &BigUint) -> Result<BigUint> {
    if *m < BigUint::from(2u32) {
        return Err(Error::InvalidModulus(m.clone()));
    }
    if !g.gcd(m).is_one() {
        return Err(Error::NotAUnit {
            value: g.clone(),
            modulus: m.clone(),
        });
    }
    if let Some(m64) = m.to_u64() {
        let g64 = (g % m64).to_u64().expect("reduced");
        return multiplicative_order_u64(g64, m64).map(BigUint::from);
    }
    // Only m = 2^64 gets here; larger values are rejected by factorize.
    let lambda = factorize(m)?.carmichael();
    let mut t = BigUint::from(lambda);
    for (q, _) in factorize_u64(lambda.max(2)) {
        while (&t % q).is_zero() && mod_exp(g, &(&t / q), m)?.is_one() {
            t /= q;
        }
    }
    Ok(t)
}

/// True iff `g` generates the unit group modulo the prime `p`.
pub fn is_primitive_root(g: &BigUint, p: &BigUint) -> Result<bool> {
    if !is_probable_prime(p, DEFAULT_PRIMALITY_ROUNDS) {
        return Err(Error::InvalidPrime(p.clone()));
    }
    let order = multiplicative_order(g, p)?;
    Ok(order == p - 1u32)
}

/// Word-sized convenience for [`is_primitive_root`] on an already-validated prime.
pub fn is_primitive_root_u64(g: u64, p: u64) -> Result<bool> {
    Ok(multiplicative_order_u64(g, p)? == p - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    fn naive_pow(b: u64, e: u64, m: u64) -> u64 {
        let mut acc = 1 % m;
        for _ in 0..e {
            acc = acc * (b % m) % m;
        }
        acc
    }

    fn scan_order(g: u64, m: u64) -> u64 {
        let mut x = g % m;
        let mut t = 1;
        while x != 1 {
            x = x * g % m;
            t += 1;
        }
        t
    }

    #[test]
    fn mod_exp_examples() {
        assert_eq!(mod_exp(&big(10), &big(6), &big(7)).unwrap(), big(1));
        assert_eq!(mod_exp(&big(2), &big(6), &big(13)).unwrap(), big(naive_pow(2, 6, 13)));
        assert_eq!(mod_exp(&big(2), &big(6), &big(13)).unwrap(), big(12));
        for m in 2..30u64 {
            for x in 1..m {
                if gcd_u64(x, m) == 1 {
                    assert_eq!(mod_exp(&big(x), &big(0), &big(m)).unwrap(), big(1));
                }
            }
        }
    }

    #[test]
    fn mod_exp_rejects_small_modulus() {
        assert!(matches!(
            mod_exp(&big(3), &big(2), &big(1)),
            Err(Error::InvalidModulus(_))
        ));
        assert!(matches!(
            mod_exp(&big(3), &big(2), &big(0)),
            Err(Error::InvalidModulus(_))
        ));
    }

    #[test]
    fn mod_exp_matches_naive_exhaustively() {
        for m in 2..=100u64 {
            for b in 0..m + 3 {
                for e in 0..=100u64 {
                    assert_eq!(
                        mod_exp(&big(b), &big(e), &big(m)).unwrap(),
                        big(naive_pow(b, e, m)),
                        "{b}^{e} mod {m}"
                    );
                }
            }
        }
    }

    #[test]
    fn mod_exp_word_and_bignum_paths_agree() {
        // Word-sized modulus with a multi-limb exponent, checked against modpow.
        let m = big(0xffff_ffff_ffff_ffc5);
        let b = big(0x1234_5678_9abc_def1);
        let e = (BigUint::one() << 200u32) + 12345u32;
        assert_eq!(mod_exp(&b, &e, &m).unwrap(), b.modpow(&e, &m));
        let big_m = (BigUint::one() << 127u32) - 1u32;
        assert_eq!(mod_exp(&b, &e, &big_m).unwrap(), b.modpow(&e, &big_m));
    }

    #[test]
    fn order_examples() {
        assert_eq!(multiplicative_order(&big(2), &big(7)).unwrap(), big(3));
        assert_eq!(multiplicative_order(&big(10), &big(7)).unwrap(), big(6));
        assert_eq!(multiplicative_order(&big(2), &big(13)).unwrap(), big(scan_order(2, 13)));
        assert_eq!(multiplicative_order(&big(2), &big(13)).unwrap(), big(12));
    }

    #[test]
    fn order_rejects_non_units() {
        assert!(matches!(
            multiplicative_order(&big(6), &big(9)),
            Err(Error::NotAUnit { .. })
        ));
    }

    #[test]
    fn order_matches_scan_for_small_moduli() {
        for m in 2..400u64 {
            for g in 1..m {
                if gcd_u64(g, m) != 1 {
                    continue;
                }
                let t = multiplicative_order_u64(g, m).unwrap();
                assert_eq!(t, scan_order(g, m), "ord({g}) mod {m}");
                assert_eq!(mod_pow_u64(g, t, m), 1);
            }
        }
    }

    #[test]
    fn order_modulo_two_to_the_64() {
        let m = BigUint::one() << 64u32;
        // 3 has order 2^62 modulo 2^64.
        assert_eq!(multiplicative_order(&big(3), &m).unwrap(), BigUint::one() << 62u32);
        assert_eq!(multiplicative_order(&(&m - 1u32), &m).unwrap(), big(2));
    }

    #[test]
    fn primitive_root_examples() {
        assert!(is_primitive_root(&big(2), &big(13)).unwrap());
        assert!(!is_primitive_root(&big(2), &big(7)).unwrap());
        assert!(is_primitive_root(&big(10), &big(7)).unwrap());
        assert!(matches!(
            is_primitive_root(&big(2), &big(15)),
            Err(Error::InvalidPrime(_))
        ));
    }

    #[test]
    fn primality_examples() {
        assert!(is_probable_prime(&big(13), 1));
        assert!(!is_probable_prime(&big(15), 1));
        assert!(!is_probable_prime(&big(32767), 1));
        assert!(!is_probable_prime(&big(1), 1));
        assert!(is_probable_prime(&big(2), 1));
        // Strong pseudoprimes to the bases {2, 3, 5, 7} and {2, ..., 23}.
        assert!(!is_probable_prime(&big(3_215_031_751), 1));
        assert!(!is_probable_prime(&big(3_825_123_056_546_413_051), 1));
        assert!(is_probable_prime(&big(18_446_744_073_709_551_557), 1));
    }

    #[test]
    fn primality_agrees_with_sieve() {
        let primes: std::collections::HashSet<u32> = small_primes().iter().copied().collect();
        for n in 0..200_000u32 {
            assert_eq!(is_prime_u64(n as u64), primes.contains(&n), "{n}");
        }
    }

    #[test]
    fn primality_beyond_64_bits() {
        let m61 = (BigUint::one() << 61u32) - 1u32;
        let m127 = (BigUint::one() << 127u32) - 1u32;
        assert!(is_probable_prime(&m127, 20));
        assert!(!is_probable_prime(&(&m127 * &m61), 20));
        let p = big(18_446_744_073_709_551_557);
        assert!(!is_probable_prime(&(&p * &p), 20));
        assert!(!is_probable_prime(&((BigUint::one() << 128u32) + 1u32), 20));
    }

    #[test]
    fn factorize_examples() {
        let f = factorize(&big(32767)).unwrap();
        assert_eq!(f.factors(), &[(7, 1), (31, 1), (151, 1)]);
        assert_eq!(factorize(&big(12)).unwrap().factors(), &[(2, 2), (3, 1)]);
        assert_eq!(factorize(&big(6897)).unwrap().factors(), &[(3, 1), (11, 2), (19, 1)]);
        assert_eq!(f.to_string(), "7 · 31 · 151");
        assert_eq!(factorize(&big(6897)).unwrap().to_string(), "3 · 11^2 · 19");
    }

    #[test]
    fn factorize_bounds() {
        let limit = BigUint::one() << 64u32;
        assert_eq!(factorize(&limit).unwrap().factors(), &[(2, 64)]);
        assert!(matches!(
            factorize(&(&limit + 1u32)),
            Err(Error::UnsupportedSize { .. })
        ));
        assert!(matches!(factorize(&big(1)), Err(Error::InvalidModulus(_))));
    }

    #[test]
    fn factorize_hard_semiprimes() {
        let p = 4_294_967_291u64; // largest 32-bit prime
        let q = 4_294_967_279u64;
        let f = factorize(&(big(p) * q)).unwrap();
        assert_eq!(f.factors(), &[(q, 1), (p, 1)]);
        let r = 1_000_003u64;
        let f = factorize(&(big(r) * r * 1_000_033u64)).unwrap();
        assert_eq!(f.factors(), &[(r, 2), (1_000_033, 1)]);
    }

    #[test]
    fn factorize_recomposes_up_to_a_million() {
        for n in 2..=1_000_000u64 {
            let f = factorize_u64(n);
            let back = f.iter().fold(1u64, |acc, &(p, e)| acc * p.pow(e));
            assert_eq!(back, n);
            assert!(f.iter().all(|&(p, _)| is_prime_u64(p)));
        }
    }

    #[test]
    fn blum_examples() {
        assert!(is_blum_prime(&big(7)));
        assert!(!is_blum_prime(&big(13)));
        assert!(is_blum_prime(&big(19)));
        assert!(!is_blum_prime(&big(15)));
        assert!(!is_blum_prime(&big(3 * 7)));
    }

    #[test]
    fn montgomery_matches_plain_mulmod() {
        let moduli = [3u64, 13, 1_000_003, 0xffff_ffff_ffff_ffc5, u64::MAX, (1 << 63) + 1];
        let mut state = 99u64;
        for &n in &moduli {
            let mont = Montgomery::new(n);
            for _ in 0..2000 {
                let a = splitmix(&mut state) % n;
                let b = splitmix(&mut state) % n;
                let got = mont.decode(mont.mul(mont.encode(a), mont.encode(b)));
                assert_eq!(got, mul_mod(a, b, n), "{a} * {b} mod {n}");
            }
        }
    }

    #[test]
    fn factorize_near_word_limit() {
        // Two primes just under 2^32 whose product sits above 2^63.
        let (p, q) = (4_294_967_291u64, 4_294_967_279u64);
        assert!(p as u128 * q as u128 > 1u128 << 63);
        assert_eq!(factorize_u64(p * q), vec![(q, 1), (p, 1)]);
        assert_eq!(
            factorize_u64(u64::MAX),
            vec![(3, 1), (5, 1), (17, 1), (257, 1), (641, 1), (65537, 1), (6_700_417, 1)]
        );
    }

    #[test]
    fn carmichael_values() {
        let lambda = |n: u64| factorize(&big(n)).unwrap().carmichael();
        assert_eq!(lambda(8), 2);
        assert_eq!(lambda(16), 4);
        assert_eq!(lambda(15), 4);
        assert_eq!(lambda(21), 6);
        assert_eq!(lambda(32767), 150);
    }
}
