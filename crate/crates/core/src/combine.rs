//! Longer-period streams built from several binary d-sequences.
//!
//! XOR mode adds the component bits mod 2 position by position; the result
//! has period dividing `lcm(p_i − 1)`. Splice mode concatenates whole
//! periods or interleaves the components round-robin.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use crate::dseq::{DSeqSpec, Digits};
use crate::error::{Error, Result};
use crate::numtheory::factorize_u64;
use crate::sequence::DigitSequence;

/// Default limit on the window materialized by [`minimal_period`].
pub const DEFAULT_PERIOD_WINDOW_CAP: u64 = 1 << 26;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpliceOrder {
    /// One full period of each component in turn, cyclically.
    Concatenate,
    /// Bit i of each component in round-robin.
    Interleave,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Xor,
    Splice(SpliceOrder),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CombinedSpec {
    components: Vec<DSeqSpec>,
    mode: Mode,
}

impl CombinedSpec {
    /// At least two binary components with pairwise distinct primes.
    pub fn xor(components: Vec<DSeqSpec>) -> Result<Self> {
        Self::new(components, Mode::Xor)
    }

    pub fn splice(components: Vec<DSeqSpec>, order: SpliceOrder) -> Result<Self> {
        Self::new(components, Mode::Splice(order))
    }

    pub fn new(components: Vec<DSeqSpec>, mode: Mode) -> Result<Self> {
        if components.len() < 2 {
            return Err(Error::InvalidSpec(format!(
                "a combination needs at least 2 components, got {}",
                components.len()
            )));
        }
        if let Some(c) = components.iter().find(|c| c.base() != 2) {
            return Err(Error::WrongBase {
                expected: 2,
                found: c.base(),
            });
        }
        for (i, a) in components.iter().enumerate() {
            if components[..i].iter().any(|b| b.prime() == a.prime()) {
                return Err(Error::InvalidSpec(format!(
                    "prime {} appears more than once",
                    a.prime()
                )));
            }
        }
        Ok(CombinedSpec { components, mode })
    }

    /// Convenience constructor from a list of primes.
    pub fn from_primes(primes: &[u64], mode: Mode) -> Result<Self> {
        let components = primes
            .iter()
            .map(|&p| DSeqSpec::binary(p))
            .collect::<Result<Vec<_>>>()?;
        Self::new(components, mode)
    }

    pub fn components(&self) -> &[DSeqSpec] {
        &self.components
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn primes(&self) -> Vec<u64> {
        self.components.iter().map(DSeqSpec::prime).collect()
    }

    /// Endless bit stream for this spec, whatever its mode.
    pub fn bits(&self) -> CombinedBits {
        let streams = self.components.iter().map(DSeqSpec::digits).collect();
        match self.mode {
            Mode::Xor => CombinedBits::Xor(XorBits { streams }),
            Mode::Splice(SpliceOrder::Interleave) => CombinedBits::Interleave { streams, next: 0 },
            Mode::Splice(SpliceOrder::Concatenate) => CombinedBits::Concatenate {
                specs: self.components.clone(),
                current: 0,
                left: self.components[0].period(),
                stream: self.components[0].digits(),
            },
        }
    }
}

/// XOR of several d-sequence streams, starting at index 1.
#[derive(Debug, Clone)]
pub struct XorBits {
    streams: Vec<Digits>,
}

impl XorBits {
    fn over(components: &[DSeqSpec]) -> Self {
        XorBits {
            streams: components.iter().map(DSeqSpec::digits).collect(),
        }
    }
}

impl Iterator for XorBits {
    type Item = u8;

    #[inline]
    fn next(&mut self) -> Option<u8> {
        let mut bit = 0u32;
        for s in &mut self.streams {
            bit ^= s.next().expect("digit streams are endless");
        }
        Some(bit as u8)
    }
}

#[derive(Debug, Clone)]
pub enum CombinedBits {
    Xor(XorBits),
    Interleave {
        streams: Vec<Digits>,
        next: usize,
    },
    Concatenate {
        specs: Vec<DSeqSpec>,
        current: usize,
        left: u64,
        stream: Digits,
    },
}

impl Iterator for CombinedBits {
    type Item = u8;

    fn next(&mut self) -> Option<u8> {
        match self {
            CombinedBits::Xor(x) => x.next(),
            CombinedBits::Interleave { streams, next } => {
                let bit = streams[*next].next();
                *next = (*next + 1) % streams.len();
                bit.map(|b| b as u8)
            }
            CombinedBits::Concatenate {
                specs,
                current,
                left,
                stream,
            } => {
                if *left == 0 {
                    *current = (*current + 1) % specs.len();
                    *left = specs[*current].period();
                    *stream = specs[*current].digits();
                }
                *left -= 1;
                stream.next().map(|b| b as u8)
            }
        }
    }
}

fn require_xor(spec: &CombinedSpec) -> Result<()> {
    match spec.mode {
        Mode::Xor => Ok(()),
        Mode::Splice(_) => Err(Error::InvalidSpec("operation needs an xor-mode combination".into())),
    }
}

/// Bits 1..=count of the XOR of all components.
pub fn xor_stream(spec: &CombinedSpec, count: usize) -> Result<DigitSequence> {
    require_xor(spec)?;
    Ok(DigitSequence::from_bits(XorBits::over(&spec.components).take(count)))
}

/// `lcm(p_i − 1)` over the given primes: the largest period an XOR of their
/// binary d-sequences can have.
pub fn period_bound(primes: &[u64]) -> BigUint {
    primes.iter().fold(BigUint::one(), |acc, &p| {
        acc.lcm(&BigUint::from(p.saturating_sub(1).max(1)))
    })
}

/// Measured period of the XOR stream, with the default window cap.
pub fn minimal_period(spec: &CombinedSpec) -> Result<u64> {
    require_xor(spec)?;
    minimal_xor_period(&spec.components, DEFAULT_PERIOD_WINDOW_CAP)
}

/// Smallest divisor d of the lcm bound B such that the first B bits of the
/// XOR stream repeat with period d. Divisors are tried in increasing order
/// against a materialized B-bit window. Accepts a single component, in which
/// case the answer is that component's own period.
pub fn minimal_xor_period(components: &[DSeqSpec], cap: u64) -> Result<u64> {
    if components.is_empty() {
        return Err(Error::InvalidSpec("no components".into()));
    }
    let primes: Vec<u64> = components.iter().map(DSeqSpec::prime).collect();
    let bound = period_bound(&primes);
    let b = match bound.to_u64() {
        Some(b) if b <= cap => b,
        _ => {
            return Err(Error::UnsupportedSize {
                what: format!("period bound {bound}"),
                limit: cap.to_string(),
            })
        }
    };
    let window: Vec<u8> = XorBits::over(components).take(b as usize).collect();
    let d = divisors(b)
        .into_iter()
        .find(|&d| {
            let d = d as usize;
            window[d..].iter().zip(&window).all(|(x, y)| x == y)
        })
        .unwrap_or(b);
    Ok(d)
}

fn divisors(n: u64) -> Vec<u64> {
    let mut divs = vec![1u64];
    if n > 1 {
        for (p, e) in factorize_u64(n) {
            let existing = divs.len();
            let mut pk = 1u64;
            for _ in 0..e {
                pk *= p;
                for i in 0..existing {
                    divs.push(divs[i] * pk);
                }
            }
        }
    }
    divs.sort_unstable();
    divs
}

/// Splices the components into one stream of `count` bits.
pub fn splice(components: &[DSeqSpec], order: SpliceOrder, count: usize) -> Result<DigitSequence> {
    let spec = CombinedSpec::splice(components.to_vec(), order)?;
    Ok(DigitSequence::from_bits(spec.bits().take(count)))
}
