//! Finite digit strings shared by every generator, plus the bitstream text
//! and packed encodings.

use std::fmt;

use crate::error::{Error, Result};

/// A finite run of base-`b` digits, optionally tagged with the period of the
/// infinite sequence it was cut from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigitSequence {
    base: u32,
    digits: Vec<u32>,
    declared_period: Option<u64>,
}

impl DigitSequence {
    pub fn new(base: u32, digits: Vec<u32>) -> Result<Self> {
        if base < 2 {
            return Err(Error::InvalidSpec(format!("base must be at least 2, got {base}")));
        }
        if let Some(&d) = digits.iter().find(|&&d| d >= base) {
            return Err(Error::InvalidDigit { digit: d as u64, base });
        }
        Ok(DigitSequence {
            base,
            digits,
            declared_period: None,
        })
    }

    /// Builds a binary sequence; any non-zero input byte counts as a 1.
    pub fn from_bits(bits: impl IntoIterator<Item = u8>) -> Self {
        DigitSequence {
            base: 2,
            digits: bits.into_iter().map(|b| (b != 0) as u32).collect(),
            declared_period: None,
        }
    }

    /// Parses the text form produced by [`DigitSequence::to_text`]: one
    /// character per digit for bases up to 10, whitespace- or comma-separated
    /// decimal numbers above that.
    pub fn parse(text: &str, base: u32) -> Result<Self> {
        let text = text.trim();
        let digits = if base <= 10 {
            text.chars()
                .filter(|c| !c.is_whitespace())
                .map(|c| {
                    c.to_digit(10)
                        .ok_or_else(|| Error::Parse(format!("unexpected character {c:?} in digit string")))
                })
                .collect::<Result<Vec<u32>>>()?
        } else {
            text.split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<u32>().map_err(|_| Error::Parse(format!("bad digit {t:?}"))))
                .collect::<Result<Vec<u32>>>()?
        };
        DigitSequence::new(base, digits)
    }

    /// Attaches a declared period. The period must be at least 1 and the
    /// digits present must already repeat with it.
    pub fn with_period(mut self, period: u64) -> Result<Self> {
        if period == 0 {
            return Err(Error::InvalidSpec("declared period must be positive".into()));
        }
        let p = period as usize;
        if p < self.digits.len() && (p..self.digits.len()).any(|i| self.digits[i] != self.digits[i - p]) {
            return Err(Error::InvalidSpec(format!(
                "digits do not repeat with declared period {period}"
            )));
        }
        self.declared_period = Some(period);
        Ok(self)
    }

    pub(crate) fn from_parts(base: u32, digits: Vec<u32>, declared_period: Option<u64>) -> Self {
        debug_assert!(digits.iter().all(|&d| d < base));
        DigitSequence {
            base,
            digits,
            declared_period,
        }
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn digits(&self) -> &[u32] {
        &self.digits
    }

    pub fn into_digits(self) -> Vec<u32> {
        self.digits
    }

    pub fn declared_period(&self) -> Option<u64> {
        self.declared_period
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    /// Smallest `d >= 1` such that `digits[i] == digits[i + d]` across the
    /// whole window. Returns the length when nothing shorter fits, and 0 for
    /// an empty sequence.
    pub fn minimal_period(&self) -> usize {
        let s = &self.digits;
        let n = s.len();
        if n == 0 {
            return 0;
        }
        // KMP prefix function; the shortest period is n minus the longest border.
        let mut fail = vec![0usize; n];
        for i in 1..n {
            let mut k = fail[i - 1];
            while k > 0 && s[i] != s[k] {
                k = fail[k - 1];
            }
            if s[i] == s[k] {
                k += 1;
            }
            fail[i] = k;
        }
        n - fail[n - 1]
    }

    /// Text form: digits run together for bases up to 10, otherwise
    /// space-separated decimal values.
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(self.digits.len());
        write_digits(&mut out, self.base, &self.digits, true);
        out
    }

    /// Packs a binary sequence into bytes, most significant bit first, with
    /// the final byte zero-padded.
    pub fn to_packed(&self) -> Result<Vec<u8>> {
        if self.base != 2 {
            return Err(Error::WrongBase {
                expected: 2,
                found: self.base,
            });
        }
        let mut packer = BitPacker::default();
        let mut out = Vec::with_capacity(self.digits.len().div_ceil(8));
        for &bit in &self.digits {
            if let Some(byte) = packer.push(bit as u8) {
                out.push(byte);
            }
        }
        out.extend(packer.finish());
        Ok(out)
    }
}

impl fmt::Display for DigitSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Appends digits in the shared text format. `first` says whether this chunk
/// starts the stream (no leading separator).
pub(crate) fn write_digits(out: &mut String, base: u32, digits: &[u32], first: bool) {
    use std::fmt::Write as _;
    if base <= 10 {
        out.extend(digits.iter().map(|&d| char::from(b'0' + d as u8)));
    } else {
        for (i, d) in digits.iter().enumerate() {
            if i > 0 || !first {
                out.push(' ');
            }
            let _ = write!(out, "{d}");
        }
    }
}

/// Accumulates bits MSB-first into bytes.
#[derive(Debug, Default, Clone)]
pub struct BitPacker {
    current: u8,
    filled: u8,
}

impl BitPacker {
    /// Pushes one bit; returns a byte once eight have been collected.
    pub fn push(&mut self, bit: u8) -> Option<u8> {
        self.current = (self.current << 1) | (bit & 1);
        self.filled += 1;
        if self.filled == 8 {
            let byte = self.current;
            self.current = 0;
            self.filled = 0;
            Some(byte)
        } else {
            None
        }
    }

    /// Flushes a partial byte, zero-padded on the right.
    pub fn finish(self) -> Option<u8> {
        (self.filled > 0).then(|| self.current << (8 - self.filled))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_out_of_range_digits() {
        assert!(matches!(
            DigitSequence::new(2, vec![0, 1, 2]),
            Err(Error::InvalidDigit { digit: 2, base: 2 })
        ));
        assert!(DigitSequence::new(1, vec![]).is_err());
    }

    #[test]
    fn text_forms() {
        let s = DigitSequence::new(10, vec![1, 4, 2, 8, 5, 7]).unwrap();
        assert_eq!(s.to_text(), "142857");
        let s = DigitSequence::new(16, vec![1, 15, 0, 12]).unwrap();
        assert_eq!(s.to_text(), "1 15 0 12");
        assert_eq!(DigitSequence::parse("1 15 0 12", 16).unwrap(), s);
        assert_eq!(DigitSequence::parse("0011\n", 2).unwrap().digits(), &[0, 0, 1, 1]);
        assert!(DigitSequence::parse("0021", 2).is_err());
        assert!(DigitSequence::parse("01x", 2).is_err());
    }

    #[test]
    fn packing_is_msb_first_and_zero_padded() {
        let s = DigitSequence::parse("1000000011", 2).unwrap();
        assert_eq!(s.to_packed().unwrap(), vec![0x80, 0xc0]);
        assert_eq!(DigitSequence::from_bits([]).to_packed().unwrap(), Vec::<u8>::new());
        let s = DigitSequence::parse("10100101", 2).unwrap();
        assert_eq!(s.to_packed().unwrap(), vec![0xa5]);
        assert!(DigitSequence::new(3, vec![1]).unwrap().to_packed().is_err());
    }

    #[test]
    fn minimal_period_of_windows() {
        let p = |t: &str| DigitSequence::parse(t, 2).unwrap().minimal_period();
        assert_eq!(p("001001001"), 3);
        assert_eq!(p("0010010"), 3);
        assert_eq!(p("0001"), 4);
        assert_eq!(p("1111"), 1);
        assert_eq!(p(""), 0);
    }

    #[test]
    fn declared_period_must_fit() {
        let s = DigitSequence::parse("001001", 2).unwrap();
        assert!(s.clone().with_period(3).is_ok());
        assert!(s.clone().with_period(2).is_err());
        assert!(s.with_period(0).is_err());
    }
}
