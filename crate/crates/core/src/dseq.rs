//! Prime-reciprocal (d-) sequences: the base-b expansion of 1/p.
//!
//! Digit indices start at 1, so for base 2 the i-th digit is
//! `(2^i mod p) mod 2`. For p = 13 that gives `000100111011`.
//!
//! General bases are produced by long division. In base 2 with odd p the
//! parity shortcut coincides with long division, since the remainder after
//! step i is `2^i mod p` and `2·r_{i-1} = p·digit_i + r_i` forces
//! `digit_i ≡ r_i (mod 2)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numtheory::{is_prime_u64, mod_pow_u64, multiplicative_order_u64};
use crate::sequence::DigitSequence;

/// Largest `p − 1` for which a full period is materialized.
pub const DEFAULT_DIGIT_CAP: u64 = 1 << 24;

/// One d-sequence: the base-`base` expansion of `1/prime`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DSeqSpec {
    prime: u64,
    base: u32,
    period: u64,
}

impl DSeqSpec {
    /// Validates that `prime` is an odd prime and `base >= 2` is coprime to it.
    pub fn new(prime: u64, base: u32) -> Result<Self> {
        if prime == 2 || !is_prime_u64(prime) {
            return Err(Error::InvalidPrime(prime.into()));
        }
        if base < 2 {
            return Err(Error::InvalidSpec(format!("base must be at least 2, got {base}")));
        }
        if (base as u64).is_multiple_of(prime) {
            return Err(Error::InvalidSpec(format!("base {base} is not coprime to {prime}")));
        }
        let period = multiplicative_order_u64(base as u64, prime)?;
        Ok(DSeqSpec { prime, base, period })
    }

    pub fn binary(prime: u64) -> Result<Self> {
        Self::new(prime, 2)
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    /// Period of the expansion: the multiplicative order of the base mod p.
    /// Always divides p − 1.
    pub fn period(&self) -> u64 {
        self.period
    }

    /// True iff the period is p − 1, i.e. the base is a primitive root of p.
    pub fn is_max_length(&self) -> bool {
        self.period == self.prime - 1
    }

    /// The i-th bit (i >= 1) of a binary d-sequence, `(2^i mod p) mod 2`.
    pub fn bit_at(&self, i: u64) -> Result<u8> {
        if self.base != 2 {
            return Err(Error::WrongBase {
                expected: 2,
                found: self.base,
            });
        }
        if i == 0 {
            return Err(Error::InvalidIndex);
        }
        Ok((mod_pow_u64(2, i, self.prime) & 1) as u8)
    }

    /// Endless digit stream starting at digit 1.
    pub fn digits(&self) -> Digits {
        Digits {
            prime: self.prime,
            base: self.base as u64,
            remainder: 1,
        }
    }

    /// Digit stream starting at digit `start` (1-based).
    pub fn digits_from(&self, start: u64) -> Result<Digits> {
        if start == 0 {
            return Err(Error::InvalidIndex);
        }
        Ok(Digits {
            prime: self.prime,
            base: self.base as u64,
            remainder: mod_pow_u64(self.base as u64, start - 1, self.prime),
        })
    }

    /// Exactly one period of digits, with the period declared.
    pub fn digits_one_period(&self) -> Result<DigitSequence> {
        self.digits_one_period_capped(DEFAULT_DIGIT_CAP)
    }

    /// As [`DSeqSpec::digits_one_period`], refusing primes with `p − 1 > cap`.
    pub fn digits_one_period_capped(&self, cap: u64) -> Result<DigitSequence> {
        if self.prime - 1 > cap {
            return Err(Error::UnsupportedSize {
                what: format!("p − 1 = {} digits", self.prime - 1),
                limit: cap.to_string(),
            });
        }
        let digits: Vec<u32> = self.digits().take(self.period as usize).collect();
        Ok(DigitSequence::from_parts(self.base, digits, Some(self.period)))
    }

    /// Checks that bit `i + (p−1)/2` complements bit `i` over the first half
    /// period. Only defined for maximum-length binary sequences; anything
    /// else is a precondition error rather than `false`.
    pub fn half_complement_holds(&self) -> Result<bool> {
        if self.base != 2 {
            return Err(Error::WrongBase {
                expected: 2,
                found: self.base,
            });
        }
        if !self.is_max_length() {
            return Err(Error::PreconditionViolated(format!(
                "half-complement is only defined for maximum-length sequences; \
                 2 has order {} modulo {}",
                self.period, self.prime
            )));
        }
        let half = ((self.prime - 1) / 2) as usize;
        let first: Vec<u32> = self.digits().take(half).collect();
        let second = self.digits_from(half as u64 + 1)?.take(half);
        Ok(first.iter().zip(second).all(|(&a, b)| a + b == 1))
    }
}

/// Long-division digit iterator over `1/p`. Never terminates.
#[derive(Debug, Clone)]
pub struct Digits {
    prime: u64,
    base: u64,
    remainder: u64,
}

impl Digits {
    /// The remainder after the digits emitted so far.
    pub fn remainder(&self) -> u64 {
        self.remainder
    }
}

impl Iterator for Digits {
    type Item = u32;

    #[inline]
    fn next(&mut self) -> Option<u32> {
        let scaled = self.remainder as u128 * self.base as u128;
        let p = self.prime as u128;
        self.remainder = (scaled % p) as u64;
        Some((scaled / p) as u32)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        (usize::MAX, None)
    }
}

/// `(p − 1) / log2(p)`: how many sequence digits a maximum-length binary
/// d-sequence yields per bit needed to write p down.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExpansionRatio {
    pub prime: u64,
    pub ratio: f64,
    /// Whether 2 is a primitive root of p. The formula describes the
    /// maximum-length case; the value is returned either way.
    pub max_length: bool,
}

pub fn expansion_ratio(prime: u64) -> Result<ExpansionRatio> {
    let spec = DSeqSpec::binary(prime)?;
    Ok(ExpansionRatio {
        prime,
        ratio: (prime - 1) as f64 / (prime as f64).log2(),
        max_length: spec.is_max_length(),
    })
}
