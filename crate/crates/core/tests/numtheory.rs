use num_bigint::BigUint;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{RngExt, SeedableRng};

use recip::numtheory::{factorize, is_prime_u64, mod_exp, mod_pow_u64, multiplicative_order, multiplicative_order_u64};

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

#[test]
fn order_is_minimal_over_all_divisors() {
    for m in 2..2000u64 {
        for g in [2u64, 3, 5, 10, m - 1] {
            if g >= m || num_integer::gcd(g, m) != 1 {
                continue;
            }
            let t = multiplicative_order_u64(g, m).unwrap();
            assert_eq!(mod_pow_u64(g, t, m), 1);
            for d in divisors(t).into_iter().filter(|&d| d < t) {
                assert_ne!(mod_pow_u64(g, d, m), 1, "ord({g} mod {m}) = {t} but {d} works");
            }
        }
    }
}

#[test]
fn order_divides_p_minus_1() {
    for p in (3..5000u64).filter(|&p| is_prime_u64(p)) {
        for g in 2..20u64.min(p) {
            let t = multiplicative_order_u64(g, p).unwrap();
            assert_eq!((p - 1) % t, 0);
        }
    }
}

#[test]
fn factorize_random_64_bit_inputs() {
    let mut rng = StdRng::seed_from_u64(0x00d5_e9a1);
    for _ in 0..1000 {
        let n: u64 = rng.random::<u64>().max(2);
        let f = factorize(&BigUint::from(n)).unwrap();
        assert_eq!(f.recompose(), BigUint::from(n));
        assert!(f.primes().all(is_prime_u64), "{n}: {f}");
    }
}

proptest! {
    #[test]
    fn big_order_matches_word_order(m in 3u64..1_000_000_000, g in 2u64..1_000_000) {
        prop_assume!(num_integer::gcd(g, m) == 1);
        let big = multiplicative_order(&BigUint::from(g), &BigUint::from(m)).unwrap();
        prop_assert_eq!(big, BigUint::from(multiplicative_order_u64(g, m).unwrap()));
    }

    #[test]
    fn mod_exp_matches_modpow(b in any::<u64>(), e in any::<u64>(), m in 2u64..) {
        let (b, e, m) = (BigUint::from(b), BigUint::from(e), BigUint::from(m));
        prop_assert_eq!(mod_exp(&b, &e, &m).unwrap(), b.modpow(&e, &m));
    }

    #[test]
    fn factorize_recomposes(n in 2u64..) {
        let f = factorize(&BigUint::from(n)).unwrap();
        prop_assert_eq!(f.recompose(), BigUint::from(n));
    }
}
