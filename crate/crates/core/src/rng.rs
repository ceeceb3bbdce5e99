//! Recursive power-exponent bit generator.
//!
//! Two residues are carried side by side. Starting from `x1 = S mod n1` and
//! `x2 = S^k mod n2`, every step emits `(x1 mod 2) XOR (x2 mod 2)` and then
//! raises both residues to the e-th power. After t steps the residues are
//! `S^(e^t) mod n1` and `S^(k·e^t) mod n2`, so with e = 2 and k = 1 the
//! output is
//!
//! ```text
//! a(0) = (S   mod n1 mod 2) ⊕ (S   mod n2 mod 2)
//! a(1) = (S^2 mod n1 mod 2) ⊕ (S^2 mod n2 mod 2)
//! a(2) = (S^4 mod n1 mod 2) ⊕ (S^4 mod n2 mod 2)
//! ```
//!
//! Output indices start at 0 here, unlike d-sequence digits.
//!
//! The moduli are either two primes or two composites whose prime factors
//! are all ≡ 3 (mod 4). Composite moduli must come with their factorization;
//! the generator never tries to factor them.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::numtheory::{is_blum_prime, is_probable_prime, mod_pow_u64, mul_mod, DEFAULT_PRIMALITY_ROUNDS};
use crate::sequence::DigitSequence;

/// Upper bound for both the exponent e and the seed power k.
pub const MAX_EXPONENT: u64 = 1 << 31;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ModulusKind {
    #[default]
    Prime,
    /// Product of primes, each ≡ 3 (mod 4).
    Composite,
}

impl fmt::Display for ModulusKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModulusKind::Prime => "prime",
            ModulusKind::Composite => "composite",
        })
    }
}

impl std::str::FromStr for ModulusKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "prime" => Ok(ModulusKind::Prime),
            "composite" => Ok(ModulusKind::Composite),
            other => Err(Error::Parse(format!("unknown modulus kind {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Which {
    N1,
    N2,
}

impl fmt::Display for Which {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Which::N1 => "n1",
            Which::N2 => "n2",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConfigError {
    #[error("n1 and n2 must differ")]
    EqualModuli,
    #[error("{0} = {1} must be at least 3")]
    ModulusTooSmall(Which, BigUint),
    #[error("{0} = {1} must be odd")]
    EvenModulus(Which, BigUint),
    #[error("{0} = {1} is not prime")]
    NotPrime(Which, BigUint),
    #[error("seed shares a factor with {0}")]
    SeedNotCoprime(Which),
    #[error("degenerate seed: S mod {0} = {1}")]
    DegenerateSeed(Which, BigUint),
    #[error("cannot verify the Blum condition for {0}: no factorization supplied")]
    CannotVerifyBlum(Which),
    #[error("supplied factors of {0} multiply to {1}, not to the modulus")]
    FactorsDoNotMultiply(Which, BigUint),
    #[error("factor {1} of {0} is not prime")]
    FactorNotPrime(Which, BigUint),
    #[error("factor {1} of {0} is not congruent to 3 mod 4")]
    FactorNotBlum(Which, BigUint),
    #[error("exponent {0} outside [2, 2^31]")]
    ExponentOutOfRange(u64),
    #[error("seed power {0} outside [1, 2^31]")]
    SeedPowerOutOfRange(u64),
}

/// Every check that failed, in the order they were run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigErrors(pub Vec<ConfigError>);

impl fmt::Display for ConfigErrors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

impl std::error::Error for ConfigErrors {}

impl From<ConfigErrors> for Error {
    fn from(e: ConfigErrors) -> Self {
        Error::Config(e)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RngConfig {
    pub n1: BigUint,
    pub n2: BigUint,
    pub seed: BigUint,
    /// Power applied to both residues each step (e).
    pub exponent: u64,
    /// Power of the seed fed to the second modulus (k).
    pub seed_power: u64,
    pub modulus_kind: ModulusKind,
    pub n1_factors: Option<Vec<BigUint>>,
    pub n2_factors: Option<Vec<BigUint>>,
}

impl RngConfig {
    /// Prime moduli, squaring, k = 1.
    pub fn new(n1: impl Into<BigUint>, n2: impl Into<BigUint>, seed: impl Into<BigUint>) -> Self {
        RngConfig {
            n1: n1.into(),
            n2: n2.into(),
            seed: seed.into(),
            exponent: 2,
            seed_power: 1,
            modulus_kind: ModulusKind::Prime,
            n1_factors: None,
            n2_factors: None,
        }
    }

    pub fn with_exponent(mut self, e: u64) -> Self {
        self.exponent = e;
        self
    }

    pub fn with_seed_power(mut self, k: u64) -> Self {
        self.seed_power = k;
        self
    }

    /// Switches to composite moduli with the given prime factor lists.
    pub fn with_composite(mut self, n1_factors: Vec<BigUint>, n2_factors: Vec<BigUint>) -> Self {
        self.modulus_kind = ModulusKind::Composite;
        self.n1_factors = Some(n1_factors);
        self.n2_factors = Some(n2_factors);
        self
    }

    /// Runs every check and reports each failure separately.
    pub fn validate(&self) -> std::result::Result<ValidatedConfig, ConfigErrors> {
        let mut errors = Vec::new();
        if self.n1 == self.n2 {
            errors.push(ConfigError::EqualModuli);
        }
        if !(2..=MAX_EXPONENT).contains(&self.exponent) {
            errors.push(ConfigError::ExponentOutOfRange(self.exponent));
        }
        if !(1..=MAX_EXPONENT).contains(&self.seed_power) {
            errors.push(ConfigError::SeedPowerOutOfRange(self.seed_power));
        }
        for (which, n, factors) in [
            (Which::N1, &self.n1, &self.n1_factors),
            (Which::N2, &self.n2, &self.n2_factors),
        ] {
            self.check_modulus(which, n, factors.as_deref(), &mut errors);
        }
        if errors.is_empty() {
            Ok(ValidatedConfig::new_unchecked(self.clone()))
        } else {
            Err(ConfigErrors(errors))
        }
    }

    fn check_modulus(&self, which: Which, n: &BigUint, factors: Option<&[BigUint]>, errors: &mut Vec<ConfigError>) {
        if *n < BigUint::from(3u32) {
            errors.push(ConfigError::ModulusTooSmall(which, n.clone()));
            return;
        }
        if n.is_even() {
            errors.push(ConfigError::EvenModulus(which, n.clone()));
        }
        match self.modulus_kind {
            ModulusKind::Prime => {
                if !is_probable_prime(n, DEFAULT_PRIMALITY_ROUNDS) {
                    errors.push(ConfigError::NotPrime(which, n.clone()));
                }
            }
            ModulusKind::Composite => match factors {
                None => errors.push(ConfigError::CannotVerifyBlum(which)),
                Some(fs) => {
                    let product = fs.iter().fold(BigUint::one(), |acc, f| acc * f);
                    if product != *n {
                        errors.push(ConfigError::FactorsDoNotMultiply(which, product));
                    }
                    for f in fs {
                        if !is_probable_prime(f, DEFAULT_PRIMALITY_ROUNDS) {
                            errors.push(ConfigError::FactorNotPrime(which, f.clone()));
                        } else if !is_blum_prime(f) {
                            errors.push(ConfigError::FactorNotBlum(which, f.clone()));
                        }
                    }
                }
            },
        }
        if !self.seed.gcd(n).is_one() {
            errors.push(ConfigError::SeedNotCoprime(which));
        }
        let residue = &self.seed % n;
        if residue.is_zero() || residue.is_one() || residue == n - 1u32 {
            errors.push(ConfigError::DegenerateSeed(which, residue));
        }
    }

    /// Builds a config from flat `key = value` pairs. Keys: `n1`, `n2`,
    /// `seed` (required), `exponent`, `seed_power`, `modulus_kind`,
    /// `n1_factors`, `n2_factors` (comma-separated).
    pub fn from_pairs<K, V>(pairs: impl IntoIterator<Item = (K, V)>) -> Result<Self>
    where
        K: AsRef<str>,
        V: AsRef<str>,
    {
        let mut map = BTreeMap::new();
        for (k, v) in pairs {
            map.insert(k.as_ref().trim().to_string(), v.as_ref().trim().to_string());
        }
        let int = |key: &str| -> Result<Option<BigUint>> {
            map.get(key)
                .map(|v| {
                    v.parse::<BigUint>()
                        .map_err(|_| Error::Parse(format!("{key}: bad integer {v:?}")))
                })
                .transpose()
        };
        let word = |key: &str, default: u64| -> Result<u64> {
            map.get(key).map_or(Ok(default), |v| {
                v.parse::<u64>()
                    .map_err(|_| Error::Parse(format!("{key}: bad integer {v:?}")))
            })
        };
        let list = |key: &str| -> Result<Option<Vec<BigUint>>> {
            map.get(key)
                .map(|v| {
                    v.split(',')
                        .map(|t| {
                            t.trim()
                                .parse::<BigUint>()
                                .map_err(|_| Error::Parse(format!("{key}: bad factor {t:?}")))
                        })
                        .collect()
                })
                .transpose()
        };
        const KEYS: [&str; 8] = [
            "n1",
            "n2",
            "seed",
            "exponent",
            "seed_power",
            "modulus_kind",
            "n1_factors",
            "n2_factors",
        ];
        if let Some(k) = map.keys().find(|k| !KEYS.contains(&k.as_str())) {
            return Err(Error::Parse(format!("unknown config key {k:?}")));
        }
        let required = |key: &str| -> Result<BigUint> {
            int(key)?.ok_or_else(|| Error::Parse(format!("missing required key {key:?}")))
        };
        Ok(RngConfig {
            n1: required("n1")?,
            n2: required("n2")?,
            seed: required("seed")?,
            exponent: word("exponent", 2)?,
            seed_power: word("seed_power", 1)?,
            modulus_kind: map.get("modulus_kind").map_or(Ok(ModulusKind::Prime), |v| v.parse())?,
            n1_factors: list("n1_factors")?,
            n2_factors: list("n2_factors")?,
        })
    }

    pub fn parse_kv(text: &str) -> Result<Self> {
        Self::from_pairs(parse_kv_pairs(text)?)
    }

    /// Flat `key = value` text, one key per line, readable by
    /// [`RngConfig::parse_kv`].
    pub fn to_kv(&self) -> String {
        let join = |fs: &[BigUint]| fs.iter().map(|f| f.to_string()).collect::<Vec<_>>().join(",");
        let mut out = format!(
            "n1 = {}\nn2 = {}\nseed = {}\nexponent = {}\nseed_power = {}\nmodulus_kind = {}\n",
            self.n1, self.n2, self.seed, self.exponent, self.seed_power, self.modulus_kind
        );
        if let Some(fs) = &self.n1_factors {
            out.push_str(&format!("n1_factors = {}\n", join(fs)));
        }
        if let Some(fs) = &self.n2_factors {
            out.push_str(&format!("n2_factors = {}\n", join(fs)));
        }
        out
    }
}

/// Splits flat key-value text into pairs. Blank lines and `#` comments are
/// skipped.
pub fn parse_kv_pairs(text: &str) -> Result<Vec<(String, String)>> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .enumerate()
        .filter(|(_, l)| !l.is_empty())
        .map(|(i, l)| {
            l.split_once('=')
                .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
                .ok_or_else(|| Error::Parse(format!("line {}: expected key = value", i + 1)))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Arith {
    Word { n1: u64, n2: u64 },
    Big,
}

/// A config that passed [`RngConfig::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidatedConfig {
    config: RngConfig,
    arith: Arith,
}

impl ValidatedConfig {
    /// Skips validation. Both moduli must still be at least 2; anything else
    /// (degenerate seeds, composite "primes") is accepted as given.
    pub fn new_unchecked(config: RngConfig) -> Self {
        assert!(
            config.n1 >= BigUint::from(2u32) && config.n2 >= BigUint::from(2u32),
            "moduli must be at least 2"
        );
        let arith = match (config.n1.to_u64(), config.n2.to_u64()) {
            (Some(n1), Some(n2)) => Arith::Word { n1, n2 },
            _ => Arith::Big,
        };
        ValidatedConfig { config, arith }
    }

    pub fn config(&self) -> &RngConfig {
        &self.config
    }

    /// Fresh generator positioned at output a(0).
    pub fn generator(&self) -> Generator {
        Generator {
            config: self.clone(),
            state: init(self),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Residues {
    Word(u64, u64),
    Big(BigUint, BigUint),
}

/// Current residue pair and the number of steps taken.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RngState {
    residues: Residues,
    step: u64,
}

impl RngState {
    pub fn x1(&self) -> BigUint {
        match &self.residues {
            Residues::Word(x1, _) => BigUint::from(*x1),
            Residues::Big(x1, _) => x1.clone(),
        }
    }

    pub fn x2(&self) -> BigUint {
        match &self.residues {
            Residues::Word(_, x2) => BigUint::from(*x2),
            Residues::Big(_, x2) => x2.clone(),
        }
    }

    pub fn step(&self) -> u64 {
        self.step
    }

    fn parities(&self) -> (u8, u8) {
        match &self.residues {
            Residues::Word(a, b) => ((a & 1) as u8, (b & 1) as u8),
            Residues::Big(a, b) => (a.bit(0) as u8, b.bit(0) as u8),
        }
    }
}

/// `x1 = S mod n1`, `x2 = S^k mod n2`, step 0.
pub fn init(config: &ValidatedConfig) -> RngState {
    let c = &config.config;
    let residues = match config.arith {
        Arith::Word { n1, n2 } => {
            let s1 = (&c.seed % n1).to_u64().expect("reduced");
            let s2 = (&c.seed % n2).to_u64().expect("reduced");
            Residues::Word(s1, mod_pow_u64(s2, c.seed_power, n2))
        }
        Arith::Big => Residues::Big(&c.seed % &c.n1, c.seed.modpow(&BigUint::from(c.seed_power), &c.n2)),
    };
    RngState { residues, step: 0 }
}

#[inline]
fn advance(state: &mut RngState, config: &ValidatedConfig) {
    let e = config.config.exponent;
    match (&mut state.residues, &config.arith) {
        (Residues::Word(x1, x2), Arith::Word { n1, n2 }) => {
            if e == 2 {
                *x1 = mul_mod(*x1, *x1, *n1);
                *x2 = mul_mod(*x2, *x2, *n2);
            } else {
                *x1 = mod_pow_u64(*x1, e, *n1);
                *x2 = mod_pow_u64(*x2, e, *n2);
            }
        }
        (Residues::Big(x1, x2), Arith::Big) => {
            let e = BigUint::from(e);
            *x1 = x1.modpow(&e, &config.config.n1);
            *x2 = x2.modpow(&e, &config.config.n2);
        }
        _ => panic!("state does not belong to this config"),
    }
    state.step += 1;
}

/// Emits `(x1 mod 2) XOR (x2 mod 2)`, then raises both residues to the e-th
/// power.
#[inline]
pub fn next_bit(state: &mut RngState, config: &ValidatedConfig) -> u8 {
    let (b1, b2) = state.parities();
    advance(state, config);
    b1 ^ b2
}

/// Owning iterator over the output bits.
#[derive(Debug, Clone)]
pub struct Generator {
    config: ValidatedConfig,
    state: RngState,
}

impl Generator {
    pub fn state(&self) -> &RngState {
        &self.state
    }
}

impl Iterator for Generator {
    type Item = u8;

    #[inline]
    fn next(&mut self) -> Option<u8> {
        Some(next_bit(&mut self.state, &self.config))
    }
}

/// Bits a(0), …, a(count − 1).
pub fn generate(config: &ValidatedConfig, count: usize) -> DigitSequence {
    DigitSequence::from_bits(config.generator().take(count))
}

/// The two parity streams `x1 mod 2` and `x2 mod 2` before they are XORed.
pub fn parity_streams(config: &ValidatedConfig, count: usize) -> (DigitSequence, DigitSequence) {
    let mut state = init(config);
    let mut first = Vec::with_capacity(count);
    let mut second = Vec::with_capacity(count);
    for _ in 0..count {
        let (a, b) = state.parities();
        first.push(a);
        second.push(b);
        advance(&mut state, config);
    }
    (DigitSequence::from_bits(first), DigitSequence::from_bits(second))
}

/// Shape of the eventually periodic state orbit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Cycle {
    /// Steps taken before the orbit enters its cycle.
    pub preperiod: u64,
    pub period: u64,
}

/// Brent cycle detection on the residue pair. Returns `None` when no cycle
/// shows up within `max_steps` advances.
pub fn measure_period(config: &ValidatedConfig, max_steps: u64) -> Option<Cycle> {
    let start = init(config);
    let step = |s: &RngState| {
        let mut s = s.clone();
        advance(&mut s, config);
        s
    };
    let same = |a: &RngState, b: &RngState| a.residues == b.residues;

    let mut power = 1u64;
    let mut period = 1u64;
    let mut tortoise = start.clone();
    let mut hare = step(&start);
    let mut taken = 1u64;
    while !same(&tortoise, &hare) {
        if taken >= max_steps {
            return None;
        }
        if power == period {
            tortoise = hare.clone();
            power *= 2;
            period = 0;
        }
        hare = step(&hare);
        period += 1;
        taken += 1;
    }

    let mut tortoise = start.clone();
    let mut hare = start;
    for _ in 0..period {
        hare = step(&hare);
    }
    let mut preperiod = 0u64;
    while !same(&tortoise, &hare) {
        tortoise = step(&tortoise);
        hare = step(&hare);
        preperiod += 1;
    }
    Some(Cycle { preperiod, period })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    fn valid(c: RngConfig) -> ValidatedConfig {
        c.validate().unwrap()
    }

    #[test]
    fn validation_examples() {
        assert!(RngConfig::new(7u32, 13u32, 10u32).validate().is_ok());
        let errs = RngConfig::new(7u32, 13u32, 7u32).validate().unwrap_err();
        assert!(errs.0.contains(&ConfigError::SeedNotCoprime(Which::N1)));
        let errs = RngConfig::new(7u32, 13u32, 1u32).validate().unwrap_err();
        assert!(errs.0.contains(&ConfigError::DegenerateSeed(Which::N1, big(1))));
        assert!(errs.0.contains(&ConfigError::DegenerateSeed(Which::N2, big(1))));
    }

    #[test]
    fn validation_reports_each_failure() {
        let errs = RngConfig::new(15u32, 15u32, 14u32)
            .with_exponent(1)
            .with_seed_power(0)
            .validate()
            .unwrap_err();
        assert_eq!(
            errs.0,
            vec![
                ConfigError::EqualModuli,
                ConfigError::ExponentOutOfRange(1),
                ConfigError::SeedPowerOutOfRange(0),
                ConfigError::NotPrime(Which::N1, big(15)),
                ConfigError::DegenerateSeed(Which::N1, big(14)),
                ConfigError::NotPrime(Which::N2, big(15)),
                ConfigError::DegenerateSeed(Which::N2, big(14)),
            ]
        );
        let errs = RngConfig::new(8u32, 2u32, 3u32).validate().unwrap_err();
        assert!(errs.0.contains(&ConfigError::EvenModulus(Which::N1, big(8))));
        assert!(errs.0.contains(&ConfigError::ModulusTooSmall(Which::N2, big(2))));
        assert!(RngConfig::new(7u32, 13u32, 3u32)
            .with_exponent(MAX_EXPONENT + 1)
            .validate()
            .is_err());
    }

    #[test]
    fn composite_moduli_need_blum_factors() {
        let base = RngConfig {
            modulus_kind: ModulusKind::Composite,
            ..RngConfig::new(21u32, 77u32, 5u32)
        };
        let errs = base.validate().unwrap_err();
        assert_eq!(
            errs.0,
            vec![
                ConfigError::CannotVerifyBlum(Which::N1),
                ConfigError::CannotVerifyBlum(Which::N2)
            ]
        );
        let ok = base.clone().with_composite(vec![big(3), big(7)], vec![big(7), big(11)]);
        assert!(ok.validate().is_ok());
        let wrong_product = base
            .clone()
            .with_composite(vec![big(3), big(11)], vec![big(7), big(11)]);
        assert!(wrong_product
            .validate()
            .unwrap_err()
            .0
            .contains(&ConfigError::FactorsDoNotMultiply(Which::N1, big(33))));
        let not_blum = RngConfig {
            modulus_kind: ModulusKind::Composite,
            ..RngConfig::new(39u32, 77u32, 5u32)
        }
        .with_composite(vec![big(3), big(13)], vec![big(7), big(11)]);
        assert!(not_blum
            .validate()
            .unwrap_err()
            .0
            .contains(&ConfigError::FactorNotBlum(Which::N1, big(13))));
    }

    #[test]
    fn init_examples() {
        let s = init(&valid(RngConfig::new(11u32, 13u32, 3u32)));
        assert_eq!((s.x1(), s.x2(), s.step()), (big(3), big(3), 0));
        let s = init(&valid(RngConfig::new(11u32, 13u32, 3u32).with_seed_power(2)));
        assert_eq!((s.x1(), s.x2()), (big(3), big(9)));
        let s = init(&valid(RngConfig::new(7u32, 13u32, 10u32)));
        assert_eq!((s.x1(), s.x2()), (big(3), big(10)));
    }

    #[test]
    fn next_bit_walks_the_states() {
        let c = valid(RngConfig::new(11u32, 13u32, 3u32));
        let mut s = init(&c);
        let mut seen = Vec::new();
        for _ in 0..3 {
            seen.push((s.x1(), s.x2()));
            let _ = next_bit(&mut s, &c);
        }
        assert_eq!(seen, vec![(big(3), big(3)), (big(9), big(9)), (big(4), big(3))]);
        assert_eq!(generate(&c, 3).to_text(), "001");
        assert_eq!(generate(&c, 8).to_text(), "00100010");
        assert!(generate(&c, 0).is_empty());
    }

    #[test]
    fn even_residues_start_with_zero() {
        // 30 ≡ 2 (mod 7) and 30 ≡ 4 (mod 13).
        let c = valid(RngConfig::new(7u32, 13u32, 30u32));
        assert_eq!(generate(&c, 1).digits(), &[0]);
    }

    #[test]
    fn big_and_word_paths_agree() {
        let word = RngConfig::new(1_000_003u64, 999_983u64, 123_456u64)
            .with_exponent(3)
            .with_seed_power(5);
        let forced_big = ValidatedConfig {
            config: word.clone(),
            arith: Arith::Big,
        };
        let forced_big_state = RngState {
            residues: match init(&valid(word.clone())).residues {
                Residues::Word(a, b) => Residues::Big(big(a), big(b)),
                r => r,
            },
            step: 0,
        };
        let mut g = Generator {
            config: forced_big,
            state: forced_big_state,
        };
        let fast = generate(&valid(word), 2000);
        let slow: Vec<u8> = (&mut g).take(2000).collect();
        assert_eq!(fast, DigitSequence::from_bits(slow));
    }

    #[test]
    fn period_examples() {
        let c = valid(RngConfig::new(11u32, 13u32, 3u32));
        assert_eq!(
            measure_period(&c, 1000),
            Some(Cycle {
                preperiod: 0,
                period: 4
            })
        );
        let fixed = ValidatedConfig::new_unchecked(RngConfig::new(11u32, 13u32, 1u32));
        assert_eq!(
            measure_period(&fixed, 10),
            Some(Cycle {
                preperiod: 0,
                period: 1
            })
        );
    }

    #[test]
    fn period_search_gives_up() {
        let c = valid(RngConfig::new(1_000_003u64, 999_983u64, 5u64));
        assert_eq!(measure_period(&c, 16), None);
    }

    #[test]
    fn preperiod_is_found() {
        // Squaring mod 13 from 2: orbit 2, 4, 3, 9, 3, … enters a 2-cycle after two steps.
        // Second modulus 11 from 2: 2, 4, 5, 3, 9, 4, … enters a 4-cycle after one step.
        let c = ValidatedConfig::new_unchecked(RngConfig::new(13u32, 11u32, 2u32));
        assert_eq!(
            measure_period(&c, 100),
            Some(Cycle {
                preperiod: 2,
                period: 4
            })
        );
    }

    #[test]
    fn kv_round_trip() {
        let c = RngConfig::new(21u32, 77u32, 5u32)
            .with_exponent(3)
            .with_seed_power(4)
            .with_composite(vec![big(3), big(7)], vec![big(7), big(11)]);
        assert_eq!(RngConfig::parse_kv(&c.to_kv()).unwrap(), c);
        let text = "# demo\nn1 = 11\nn2=13\n\nseed = 3  # comment\n";
        assert_eq!(RngConfig::parse_kv(text).unwrap(), RngConfig::new(11u32, 13u32, 3u32));
        assert!(RngConfig::parse_kv("n1 = 11\nn2 = 13\n").is_err());
        assert!(RngConfig::parse_kv("n1 = 11\nn2 = 13\nseed = 3\ncolour = red\n").is_err());
        assert!(RngConfig::parse_kv("n1 11\n").is_err());
        assert!(RngConfig::parse_kv("n1 = 11\nn2 = 13\nseed = x\n").is_err());
    }
}
