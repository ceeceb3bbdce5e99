//! Periodic digit sequences as reduced fractions.
//!
//! A pattern of length L repeated forever in base b is the fraction
//! `V / (b^L − 1)`, where V is the pattern read as a base-b integer. Going
//! the other way, a fraction `a/N` with `gcd(b, N) = 1` expands to a purely
//! periodic sequence whose period is the order of b modulo N.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::dseq::DEFAULT_DIGIT_CAP;
use crate::error::{Error, Result};
use crate::numtheory::{factorize, multiplicative_order, Factorization};
use crate::sequence::DigitSequence;

/// A reduced fraction `0 < a/N < 1` whose base-`base` expansion is purely
/// periodic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalSeq {
    numerator: BigUint,
    denominator: BigUint,
    /// `None` when N was too large to factor.
    denominator_factors: Option<Factorization>,
    base: u32,
}

impl RationalSeq {
    /// Reduces `a/N` to lowest terms and checks it denotes a purely periodic
    /// expansion in `base`.
    pub fn new(numerator: BigUint, denominator: BigUint, base: u32) -> Result<Self> {
        if base < 2 {
            return Err(Error::InvalidSpec(format!("base must be at least 2, got {base}")));
        }
        if numerator.is_zero() || numerator >= denominator {
            return Err(Error::NotProperFraction { numerator, denominator });
        }
        let g = numerator.gcd(&denominator);
        let (numerator, denominator) = (numerator / &g, denominator / &g);
        if !denominator.gcd(&BigUint::from(base)).is_one() {
            return Err(Error::NonPurelyPeriodic { base, denominator });
        }
        let denominator_factors = factorize(&denominator).ok();
        Ok(RationalSeq {
            numerator,
            denominator,
            denominator_factors,
            base,
        })
    }

    /// Parses `"a/N"`.
    pub fn parse(text: &str, base: u32) -> Result<Self> {
        let (a, n) = text
            .trim()
            .split_once('/')
            .ok_or_else(|| Error::Parse(format!("expected a/N, got {text:?}")))?;
        let parse = |s: &str| {
            s.trim()
                .parse::<BigUint>()
                .map_err(|_| Error::Parse(format!("bad integer {s:?} in fraction")))
        };
        Self::new(parse(a)?, parse(n)?, base)
    }

    pub fn numerator(&self) -> &BigUint {
        &self.numerator
    }

    pub fn denominator(&self) -> &BigUint {
        &self.denominator
    }

    pub fn denominator_factors(&self) -> Option<&Factorization> {
        self.denominator_factors.as_ref()
    }

    /// False when the denominator exceeded the factoring range.
    pub fn is_factored(&self) -> bool {
        self.denominator_factors.is_some()
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    /// Period of the expansion, `ord_N(base)`.
    ///
    /// Denominators outside the factoring range fall back to stepping the
    /// powers of the base, up to [`DEFAULT_DIGIT_CAP`] steps.
    pub fn period(&self) -> Result<u64> {
        if self.denominator.is_one() {
            return Ok(1);
        }
        let base = BigUint::from(self.base);
        if self.is_factored() {
            let order = multiplicative_order(&base, &self.denominator)?;
            return order.to_u64().ok_or_else(|| Error::UnsupportedSize {
                what: format!("period {order}"),
                limit: "2^64".into(),
            });
        }
        let mut x = &base % &self.denominator;
        for t in 1..=DEFAULT_DIGIT_CAP {
            if x.is_one() {
                return Ok(t);
            }
            x = x * &base % &self.denominator;
        }
        Err(Error::UnsupportedSize {
            what: format!("period of {} modulo an unfactored {}", self.base, self.denominator),
            limit: DEFAULT_DIGIT_CAP.to_string(),
        })
    }

    /// Endless long-division digit stream of the expansion.
    pub fn digits(&self) -> RationalDigits {
        let inner = match (self.numerator.to_u64(), self.denominator.to_u64()) {
            (Some(a), Some(n)) => DivisionState::Word { rem: a, den: n },
            _ => DivisionState::Big {
                rem: self.numerator.clone(),
                den: self.denominator.clone(),
            },
        };
        RationalDigits { base: self.base, inner }
    }

    /// Report form `a / (p1^e1 · p2^e2 · …)`; falls back to `a / N` when the
    /// denominator is unfactored.
    pub fn factored(&self) -> String {
        match &self.denominator_factors {
            Some(f) => format!("{} / ({})", self.numerator, f),
            None => format!("{} / {}", self.numerator, self.denominator),
        }
    }
}

impl fmt::Display for RationalSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numerator, self.denominator)
    }
}

#[derive(Debug, Clone)]
enum DivisionState {
    Word { rem: u64, den: u64 },
    Big { rem: BigUint, den: BigUint },
}

/// Long-division iterator for a [`RationalSeq`].
#[derive(Debug, Clone)]
pub struct RationalDigits {
    base: u32,
    inner: DivisionState,
}

impl Iterator for RationalDigits {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        let digit = match &mut self.inner {
            DivisionState::Word { rem, den } => {
                let scaled = *rem as u128 * self.base as u128;
                *rem = (scaled % *den as u128) as u64;
                (scaled / *den as u128) as u32
            }
            DivisionState::Big { rem, den } => {
                let scaled = &*rem * self.base;
                let (q, r) = scaled.div_rem(den);
                *rem = r;
                q.to_u32().expect("digit < base")
            }
        };
        Some(digit)
    }
}

/// Maps one period of a repeating pattern to its reduced fraction.
///
/// The period is the pattern's declared period when present, otherwise its
/// full length. An all-zero pattern has no fraction in (0, 1) and is
/// rejected, as is the all-(b−1) pattern, whose value is exactly 1.
pub fn sequence_to_rational(pattern: &DigitSequence) -> Result<RationalSeq> {
    let len = pattern.declared_period().unwrap_or(pattern.len() as u64);
    if len == 0 {
        return Err(Error::InvalidSpec("pattern must have at least one digit".into()));
    }
    if (len as usize) > pattern.len() {
        return Err(Error::InvalidSpec(format!(
            "declared period {len} exceeds the {} digits supplied",
            pattern.len()
        )));
    }
    let base = pattern.base();
    let digits = &pattern.digits()[..len as usize];
    let value = digits.iter().fold(BigUint::zero(), |acc, &d| acc * base + d);
    if value.is_zero() {
        return Err(Error::ZeroValue);
    }
    let denominator = BigUint::from(base).pow(len as u32) - 1u32;
    RationalSeq::new(value, denominator, base)
}

/// The first `count` digits of the expansion of `r`, with its period declared.
pub fn rational_to_sequence(r: &RationalSeq, count: usize) -> Result<DigitSequence> {
    if !r.denominator.gcd(&BigUint::from(r.base)).is_one() {
        return Err(Error::NonPurelyPeriodic {
            base: r.base,
            denominator: r.denominator.clone(),
        });
    }
    let period = r.period()?;
    let digits: Vec<u32> = r.digits().take(count).collect();
    Ok(DigitSequence::from_parts(r.base, digits, Some(period)))
}
