//! Command-line front end.
//!
//! Data goes to standard output, diagnostics to standard error. Exit codes:
//! 0 on success, 1 on usage errors, 2 on domain errors.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

use crate::analysis::{analyze, recover_position, window_uniqueness};
use crate::combine::{minimal_period, period_bound, CombinedSpec, Mode, SpliceOrder};
use crate::dseq::DSeqSpec;
use crate::error::Error;
use crate::rational::{rational_to_sequence, sequence_to_rational, RationalSeq};
use crate::rng::{measure_period, parse_kv_pairs, RngConfig};
use crate::sequence::{write_digits, BitPacker, DigitSequence};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;

const CHUNK: usize = 1 << 16;

#[derive(Debug, Parser)]
#[command(
    name = "recip",
    version,
    about = "Prime-reciprocal sequences and the recursive power-exponent bit generator"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Digits of the base-b expansion of 1/p
    Dseq(DseqArgs),
    /// Period of 1/p in base b and whether it is maximal
    Period(PeriodArgs),
    /// Convert a repeating pattern to a reduced fraction, or back
    Rational(RationalArgs),
    /// XOR or splice several binary d-sequences
    Combine(CombineArgs),
    /// Recursive power-exponent generator
    Rng(RngArgs),
    /// Balance and autocorrelation report (JSON)
    Analyze(AnalyzeArgs),
    /// Recover the position of a window cut from a binary d-sequence
    Attack(AttackArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    /// '0'/'1' characters and a trailing newline
    Ascii,
    /// Bytes, most significant bit first, final byte zero-padded
    Packed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CombineMode {
    Xor,
    Concatenate,
    Interleave,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Prime,
    Composite,
}

#[derive(Debug, Args)]
struct DseqArgs {
    #[arg(long)]
    prime: u64,
    #[arg(long, default_value_t = 2)]
    base: u32,
    /// Number of digits; defaults to one full period
    #[arg(long)]
    count: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Ascii)]
    format: Format,
}

#[derive(Debug, Args)]
struct PeriodArgs {
    #[arg(long)]
    prime: u64,
    #[arg(long, default_value_t = 2)]
    base: u32,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("input").required(true).args(["pattern", "fraction"])))]
struct RationalArgs {
    /// One period of the repeating digits
    #[arg(long)]
    pattern: Option<String>,
    /// A fraction "a/N" to expand
    #[arg(long)]
    fraction: Option<String>,
    #[arg(long, default_value_t = 2)]
    base: u32,
    /// Digits to emit when expanding a fraction; defaults to one period
    #[arg(long, requires = "fraction")]
    count: Option<u64>,
    /// Print the denominator in factored form
    #[arg(long, requires = "pattern")]
    factored: bool,
}

#[derive(Debug, Args)]
struct CombineArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    primes: Vec<u64>,
    #[arg(long, value_enum, default_value_t = CombineMode::Xor)]
    mode: CombineMode,
    #[arg(long, required_unless_present = "measure_period")]
    count: Option<u64>,
    /// Print the measured minimal period and the lcm bound instead of bits
    #[arg(long)]
    measure_period: bool,
    #[arg(long, value_enum, default_value_t = Format::Ascii)]
    format: Format,
}

#[derive(Debug, Args)]
struct RngArgs {
    /// Flat key-value config file; flags override its entries
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    n1: Option<String>,
    #[arg(long)]
    n2: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    #[arg(long)]
    exponent: Option<u64>,
    #[arg(long)]
    seed_power: Option<u64>,
    #[arg(long, value_enum)]
    kind: Option<KindArg>,
    /// Comma-separated prime factors of n1 (composite moduli)
    #[arg(long)]
    n1_factors: Option<String>,
    #[arg(long)]
    n2_factors: Option<String>,
    #[arg(long, required_unless_present = "measure_period")]
    count: Option<u64>,
    /// Print preperiod and period of the state orbit instead of bits
    #[arg(long)]
    measure_period: bool,
    #[arg(long, default_value_t = 10_000_000)]
    max_steps: u64,
    #[arg(long, value_enum, default_value_t = Format::Ascii)]
    format: Format,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("source").required(true).args(["prime", "input"])))]
struct AnalyzeArgs {
    /// Analyze one period of the binary d-sequence of this prime
    #[arg(long)]
    prime: Option<u64>,
    /// File of ASCII bits, or '-' for standard input
    #[arg(long)]
    input: Option<PathBuf>,
    /// Period of the input stream
    #[arg(long, requires = "input")]
    period: Option<u64>,
    /// Autocorrelation shifts (shift 0 is always reported)
    #[arg(long, value_delimiter = ',')]
    shifts: Vec<u64>,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("query").required(true).args(["window", "window_len"])))]
struct AttackArgs {
    #[arg(long)]
    prime: u64,
    /// Observed bits; prints every matching start position
    #[arg(long)]
    window: Option<String>,
    /// Prints whether every window of this length is unique
    #[arg(long)]
    window_len: Option<u64>,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Domain(Error),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

type CliResult = Result<(), Failure>;

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let text = e.to_string();
                    let line = text.lines().next().unwrap_or("error: invalid arguments");
                    let _ = writeln!(err, "{line}");
                    EXIT_USAGE
                }
            };
        }
    };
    let result = dispatch(cli.command, out).and_then(|()| out.flush().map_err(Failure::Io));
    match result {
        Ok(()) => EXIT_OK,
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => EXIT_OK,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Domain(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_DOMAIN
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_DOMAIN
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> CliResult {
    match command {
        Command::Dseq(a) => cmd_dseq(a, out),
        Command::Period(a) => cmd_period(a, out),
        Command::Rational(a) => cmd_rational(a, out),
        Command::Combine(a) => cmd_combine(a, out),
        Command::Rng(a) => cmd_rng(a, out),
        Command::Analyze(a) => cmd_analyze(a, out),
        Command::Attack(a) => cmd_attack(a, out),
    }
}

/// Streams `count` bits in the chosen format without materializing them.
fn emit_bits(bits: impl Iterator<Item = u8>, count: u64, format: Format, out: &mut dyn Write) -> io::Result<()> {
    let mut buf = Vec::with_capacity(CHUNK);
    match format {
        Format::Ascii => {
            for bit in bits.take(count as usize) {
                buf.push(b'0' + bit);
                if buf.len() == CHUNK {
                    out.write_all(&buf)?;
                    buf.clear();
                }
            }
            buf.push(b'\n');
        }
        Format::Packed => {
            let mut packer = BitPacker::default();
            for bit in bits.take(count as usize) {
                if let Some(byte) = packer.push(bit) {
                    buf.push(byte);
                    if buf.len() == CHUNK {
                        out.write_all(&buf)?;
                        buf.clear();
                    }
                }
            }
            buf.extend(packer.finish());
        }
    }
    out.write_all(&buf)
}

/// Streams digits of any base in the shared text format.
fn emit_digits(digits: impl Iterator<Item = u32>, base: u32, count: u64, out: &mut dyn Write) -> io::Result<()> {
    let mut text = String::with_capacity(CHUNK);
    let mut chunk = Vec::with_capacity(1024);
    let mut first = true;
    let mut digits = digits.take(count as usize).peekable();
    while digits.peek().is_some() {
        chunk.clear();
        chunk.extend(digits.by_ref().take(1024));
        write_digits(&mut text, base, &chunk, first);
        first = false;
        if text.len() >= CHUNK {
            out.write_all(text.as_bytes())?;
            text.clear();
        }
    }
    text.push('\n');
    out.write_all(text.as_bytes())
}

fn cmd_dseq(a: DseqArgs, out: &mut dyn Write) -> CliResult {
    let spec = DSeqSpec::new(a.prime, a.base)?;
    let count = a.count.unwrap_or(spec.period());
    match a.format {
        Format::Packed if a.base != 2 => Err(Failure::Usage("packed output needs --base 2".into())),
        Format::Packed => Ok(emit_bits(spec.digits().map(|d| d as u8), count, a.format, out)?),
        Format::Ascii => Ok(emit_digits(spec.digits(), a.base, count, out)?),
    }
}

fn cmd_period(a: PeriodArgs, out: &mut dyn Write) -> CliResult {
    let spec = DSeqSpec::new(a.prime, a.base)?;
    let tag = if spec.is_max_length() {
        "max-length"
    } else {
        "not-max-length"
    };
    writeln!(out, "{} {tag}", spec.period())?;
    Ok(())
}

fn cmd_rational(a: RationalArgs, out: &mut dyn Write) -> CliResult {
    if let Some(pattern) = a.pattern {
        let seq = DigitSequence::parse(&pattern, a.base)?;
        let r = sequence_to_rational(&seq)?;
        if a.factored {
            writeln!(out, "{}", r.factored())?;
        } else {
            writeln!(out, "{r}")?;
        }
        return Ok(());
    }
    let text = a.fraction.expect("clap enforces pattern or fraction");
    let r = RationalSeq::parse(&text, a.base)?;
    let count = match a.count {
        Some(c) => c,
        None => r.period()?,
    };
    if count <= 1 << 20 {
        // Goes through the checked path so the period is validated too.
        let seq = rational_to_sequence(&r, count as usize)?;
        writeln!(out, "{seq}")?;
    } else {
        emit_digits(r.digits(), a.base, count, out)?;
    }
    Ok(())
}

fn cmd_combine(a: CombineArgs, out: &mut dyn Write) -> CliResult {
    let mode = match a.mode {
        CombineMode::Xor => Mode::Xor,
        CombineMode::Concatenate => Mode::Splice(SpliceOrder::Concatenate),
        CombineMode::Interleave => Mode::Splice(SpliceOrder::Interleave),
    };
    let spec = CombinedSpec::from_primes(&a.primes, mode)?;
    if a.measure_period {
        if mode != Mode::Xor {
            return Err(Failure::Usage("--measure-period needs --mode xor".into()));
        }
        let d = minimal_period(&spec)?;
        writeln!(out, "minimal-period {d} bound {}", period_bound(&a.primes))?;
        return Ok(());
    }
    let count = a.count.expect("clap enforces count");
    Ok(emit_bits(spec.bits(), count, a.format, out)?)
}

fn rng_config(a: &RngArgs) -> Result<RngConfig, Failure> {
    let mut pairs: BTreeMap<String, String> = BTreeMap::new();
    if let Some(path) = &a.config {
        let text = fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("cannot read config {}: {e}", path.display())))?;
        pairs.extend(parse_kv_pairs(&text)?);
    }
    let mut set = |key: &str, value: Option<String>| {
        if let Some(v) = value {
            pairs.insert(key.to_string(), v);
        }
    };
    set("n1", a.n1.clone());
    set("n2", a.n2.clone());
    set("seed", a.seed.clone());
    set("exponent", a.exponent.map(|e| e.to_string()));
    set("seed_power", a.seed_power.map(|k| k.to_string()));
    set(
        "modulus_kind",
        a.kind.map(|k| match k {
            KindArg::Prime => "prime".to_string(),
            KindArg::Composite => "composite".to_string(),
        }),
    );
    set("n1_factors", a.n1_factors.clone());
    set("n2_factors", a.n2_factors.clone());
    for key in ["n1", "n2", "seed"] {
        if !pairs.contains_key(key) {
            return Err(Failure::Usage(format!("missing --{key} (flag or config file)")));
        }
    }
    Ok(RngConfig::from_pairs(pairs)?)
}

fn cmd_rng(a: RngArgs, out: &mut dyn Write) -> CliResult {
    let config = rng_config(&a)?.validate().map_err(Error::from)?;
    if a.measure_period {
        match measure_period(&config, a.max_steps) {
            Some(c) => writeln!(out, "preperiod {} period {}", c.preperiod, c.period)?,
            None => writeln!(out, "not-found within {} steps", a.max_steps)?,
        }
        return Ok(());
    }
    let count = a.count.expect("clap enforces count");
    Ok(emit_bits(config.generator(), count, a.format, out)?)
}

fn cmd_analyze(a: AnalyzeArgs, out: &mut dyn Write) -> CliResult {
    let bits = match (a.prime, &a.input) {
        (Some(p), _) => DSeqSpec::binary(p)?.digits_one_period()?,
        (None, Some(path)) => {
            let mut text = String::new();
            if path.as_os_str() == "-" {
                io::stdin().read_to_string(&mut text)?;
            } else {
                text = fs::read_to_string(path)
                    .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
            }
            let seq = DigitSequence::parse(&text, 2)?;
            match a.period {
                Some(l) => seq.with_period(l)?,
                None => seq,
            }
        }
        (None, None) => unreachable!("clap enforces a source"),
    };
    let report = analyze(&bits, &a.shifts)?;
    writeln!(out, "{}", report.to_json())?;
    Ok(())
}

fn cmd_attack(a: AttackArgs, out: &mut dyn Write) -> CliResult {
    if let Some(len) = a.window_len {
        let unique = window_uniqueness(a.prime, len)?;
        writeln!(out, "{}", if unique { "unique" } else { "not-unique" })?;
        return Ok(());
    }
    let window = DigitSequence::parse(a.window.as_deref().expect("clap enforces a query"), 2)?;
    let positions = recover_position(a.prime, &window)?;
    let line: Vec<String> = positions.iter().map(u64::to_string).collect();
    writeln!(out, "{}", line.join(" "))?;
    Ok(())
}
