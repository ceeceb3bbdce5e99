//! Balance and autocorrelation statistics, and the position-recovery
//! demonstration showing that a short window of a binary d-sequence pins
//! down where in the period it was cut.

use std::collections::{BTreeMap, HashSet};

use serde::Serialize;

use crate::dseq::DSeqSpec;
use crate::error::{Error, Result};
use crate::sequence::DigitSequence;

/// Position recovery and window uniqueness refuse primes with p − 1 above this.
pub const SCAN_CAP: u64 = 1 << 22;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub zeros: u64,
    pub ones: u64,
}

impl Counts {
    fn of(bits: &[u32]) -> Self {
        let ones = bits.iter().filter(|&&b| b == 1).count() as u64;
        Counts {
            zeros: bits.len() as u64 - ones,
            ones,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HalfBalance {
    pub first: Counts,
    pub second: Counts,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalysisReport {
    pub length: u64,
    pub zeros: u64,
    pub ones: u64,
    /// Counts over each half of the first period, when an even period was given.
    pub half_balance: Option<HalfBalance>,
    /// Shift → normalized periodic autocorrelation in [−1, 1].
    pub autocorrelation: BTreeMap<u64, f64>,
    pub notes: Vec<String>,
}

impl AnalysisReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn require_binary(bits: &DigitSequence) -> Result<()> {
    if bits.base() != 2 {
        return Err(Error::WrongBase {
            expected: 2,
            found: bits.base(),
        });
    }
    Ok(())
}

/// Zero/one counts over the whole input, plus per-half counts over the first
/// period when `period` is supplied, even, and covered by the input.
pub fn balance_stats(bits: &DigitSequence, period: Option<u64>) -> Result<AnalysisReport> {
    require_binary(bits)?;
    let all = Counts::of(bits.digits());
    let mut notes = Vec::new();
    let half_balance = match period {
        Some(l) if l % 2 == 1 => {
            notes.push(format!("period {l} is odd; no half-period split"));
            None
        }
        Some(l) if l as usize > bits.len() => {
            notes.push(format!("input shorter than period {l}; no half-period split"));
            None
        }
        Some(l) if l > 0 => {
            let half = (l / 2) as usize;
            let d = bits.digits();
            Some(HalfBalance {
                first: Counts::of(&d[..half]),
                second: Counts::of(&d[half..2 * half]),
            })
        }
        _ => None,
    };
    Ok(AnalysisReport {
        length: bits.len() as u64,
        zeros: all.zeros,
        ones: all.ones,
        half_balance,
        autocorrelation: BTreeMap::new(),
        notes,
    })
}

/// Periodic autocorrelation over one declared period: for each shift s,
/// `(agreements − disagreements) / L` comparing bit i with bit (i + s) mod L.
pub fn autocorrelation(bits: &DigitSequence, shifts: &[u64]) -> Result<BTreeMap<u64, f64>> {
    require_binary(bits)?;
    let period = bits.declared_period().ok_or(Error::MissingPeriod)?;
    if period as usize > bits.len() {
        return Err(Error::InvalidSpec(format!(
            "declared period {period} exceeds the {} bits supplied",
            bits.len()
        )));
    }
    let l = period as usize;
    let one = &bits.digits()[..l];
    Ok(shifts
        .iter()
        .map(|&s| {
            let s_mod = (s % period) as usize;
            let agree = (0..l).filter(|&i| one[i] == one[(i + s_mod) % l]).count() as i64;
            let value = if s_mod == 0 {
                1.0
            } else {
                (2 * agree - l as i64) as f64 / l as f64
            };
            (s, value)
        })
        .collect())
}

/// Balance statistics plus autocorrelation at `shifts` (shift 0 is always
/// included) when the input declares its period.
pub fn analyze(bits: &DigitSequence, shifts: &[u64]) -> Result<AnalysisReport> {
    let mut report = balance_stats(bits, bits.declared_period())?;
    if bits.declared_period().is_some() {
        let mut all = vec![0];
        all.extend_from_slice(shifts);
        report.autocorrelation = autocorrelation(bits, &all)?;
    } else {
        report.notes.push("no declared period; autocorrelation skipped".into());
    }
    Ok(report)
}

/// One period of the binary d-sequence of `p`, refusing primes above the scan cap.
fn scan_period(p: u64) -> Result<Vec<u32>> {
    let spec = DSeqSpec::binary(p)?;
    Ok(spec.digits_one_period_capped(SCAN_CAP)?.into_digits())
}

/// Every start position i in `[1, period]` where `window` matches the
/// d-sequence of `p` read cyclically from digit i. Exhaustive scan.
pub fn recover_position(p: u64, window: &DigitSequence) -> Result<Vec<u64>> {
    require_binary(window)?;
    if window.is_empty() {
        return Err(Error::InvalidSpec("window must hold at least one bit".into()));
    }
    let seq = scan_period(p)?;
    let l = seq.len();
    let w = window.digits();
    Ok((0..l)
        .filter(|&start| w.iter().enumerate().all(|(j, &b)| seq[(start + j) % l] == b))
        .map(|start| start as u64 + 1)
        .collect())
}

/// True iff every cyclic window of length `window_len` in one period of the
/// d-sequence of `p` occurs at exactly one position.
pub fn window_uniqueness(p: u64, window_len: u64) -> Result<bool> {
    let seq = scan_period(p)?;
    let l = seq.len();
    if window_len == 0 || window_len as usize > l {
        return Err(Error::PreconditionViolated(format!(
            "window length {window_len} must be in [1, {l}]"
        )));
    }
    let n = window_len as usize;
    let mut doubled = seq.clone();
    doubled.extend_from_slice(&seq[..n - 1]);
    let mut seen = HashSet::with_capacity(l);
    Ok((0..l).all(|i| seen.insert(&doubled[i..i + n])))
}
