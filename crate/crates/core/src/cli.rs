//! The `tapcode` command line.
//!
//! [`run`] does all the work and writes to caller-supplied streams so the
//! binary stays a one-liner and tests can drive it directly. Usage errors
//! exit with 2; operation errors exit with 1 and print the error name on the
//! diagnostics stream.

use std::fs;
use std::io::Write;
use std::net::TcpListener;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};

use crate::analysis::{efficiency_report, ingest_corpus, speed_estimate, GERMAN_CORPUS};
use crate::bits::BitStream;
use crate::code::{
    canonical_german_table, derive_from_morse, format_morse, from_groups, to_groups, CodeWord,
    GroupPattern, Payload, TapTable, MAX_PAYLOAD_LEN,
};
use crate::codec::{decode, encode, EncodeOptions};
use crate::error::Error;
use crate::schemes::{
    build_optimized_polybius, huffman_lengths, morse_table_costs, tap_cost, CodeLengthTable,
    PolybiusSquare,
};
use crate::timing::{decode_session, DecodeMode, TapSession};

#[derive(Debug, Parser)]
#[command(name = "tapcode", version, about = "Binary tap code toolkit")]
struct Cli {
    /// Table file (`symbol<TAB>written[<TAB>groups]`) replacing the German table.
    #[arg(long, global = true, value_name = "FILE")]
    table: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the code table.
    Table {
        #[arg(long, value_enum, default_value_t = TableFormat::Tsv)]
        format: TableFormat,
    },
    /// Encode text into a slot stream.
    Encode {
        text: String,
        /// Send digits as letters (1-6 e,n,r,a,o,z; 7 s; 8 t; 9 h; 0 i).
        #[arg(long)]
        digit_mode: bool,
        /// Separate every eighth (two slots) with a space.
        #[arg(long)]
        grouped: bool,
    },
    /// Decode a slot stream, or a recorded tap session.
    Decode {
        #[arg(required_unless_present = "session")]
        bits: Option<String>,
        /// Session file: one onset in ms per line, then `END <ms>`.
        #[arg(long, value_name = "FILE", conflicts_with = "bits")]
        session: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = ModeArg::Relaxed)]
        mode: ModeArg,
        /// Sixteenth duration in ms; estimated from the taps when absent.
        #[arg(long, value_name = "MS")]
        unit: Option<f64>,
    },
    /// Convert between bit notation (`101101`) and group notation (`1,2,1`).
    Groups { input: String },
    /// Compare code efficiencies on a corpus.
    Analyze {
        /// UTF-8 text; the bundled German corpus when absent.
        #[arg(long, value_name = "FILE")]
        corpus: Option<PathBuf>,
        /// Line-delimited JSON instead of a table.
        #[arg(long)]
        json: bool,
        /// Print one scheme's per-symbol costs instead of the averages.
        #[arg(long, value_enum, value_name = "SCHEME")]
        costs: Option<CostScheme>,
    },
    /// Knock every Morse sequence and show which renderings are kept.
    Derive {
        #[arg(long, default_value_t = MAX_PAYLOAD_LEN)]
        max_elements: usize,
    },
    /// Speed for a given cost per character and sixteenth duration.
    Estimate {
        bits_per_char: f64,
        /// Seconds per slot; fractions such as `1/6` are accepted.
        #[arg(value_parser = parse_seconds)]
        unit_seconds: f64,
    },
    /// Serve the live tapping line protocol on localhost.
    Serve {
        #[arg(long, default_value_t = 7373)]
        port: u16,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TableFormat {
    Bits,
    Groups,
    Tsv,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Strict,
    Relaxed,
}

impl From<ModeArg> for DecodeMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Strict => DecodeMode::Strict,
            ModeArg::Relaxed => DecodeMode::Relaxed,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CostScheme {
    Tap,
    Huffman,
    Morse,
    PolybiusOriginal,
    PolybiusOptimized,
}

fn parse_seconds(s: &str) -> std::result::Result<f64, String> {
    let value = match s.split_once('/') {
        Some((n, d)) => {
            let n: f64 = n.trim().parse().map_err(|_| format!("bad number `{n}`"))?;
            let d: f64 = d.trim().parse().map_err(|_| format!("bad number `{d}`"))?;
            n / d
        }
        None => s.parse().map_err(|_| format!("bad number `{s}`"))?,
    };
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(format!("`{s}` is not a positive duration"))
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                2
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    match execute(cli, out) {
        Ok(()) => 0,
        Err(Failure::Op(e)) => {
            let _ = writeln!(err, "{}: {e}", e.name());
            1
        }
        Err(Failure::Io(msg)) => {
            let _ = writeln!(err, "io-error: {msg}");
            1
        }
    }
}

enum Failure {
    Op(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Op(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

fn read(path: &PathBuf) -> std::result::Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn execute(cli: Cli, out: &mut dyn Write) -> std::result::Result<(), Failure> {
    let table = match &cli.table {
        Some(path) => TapTable::from_text(&read(path)?)?,
        None => canonical_german_table(),
    };
    match cli.command {
        Command::Table { format } => {
            for (sym, cw) in table.entries() {
                match format {
                    TableFormat::Bits => writeln!(out, "{sym}\t{}", cw.written())?,
                    TableFormat::Groups => writeln!(out, "{sym}\t{}", cw.groups())?,
                    TableFormat::Tsv => writeln!(out, "{sym}\t{}\t{}", cw.written(), cw.groups())?,
                }
            }
        }
        Command::Encode {
            text,
            digit_mode,
            grouped,
        } => {
            let opts = EncodeOptions::default().with_digit_mode(digit_mode);
            let stream = encode(&text, &table, &opts)?;
            if grouped {
                writeln!(out, "{}", stream.grouped(" "))?;
            } else {
                writeln!(out, "{stream}")?;
            }
        }
        Command::Decode {
            bits,
            session,
            mode,
            unit,
        } => {
            let text = match (bits, session) {
                (Some(bits), _) => decode(&bits.parse::<BitStream>()?, &table)?,
                (None, Some(path)) => {
                    let mut s = TapSession::from_text(&read(&path)?)?;
                    s.set_unit(unit)?;
                    decode_session(&s, &table, mode.into())?
                }
                (None, None) => unreachable!("clap requires one input"),
            };
            writeln!(out, "{text}")?;
        }
        Command::Groups { input } => {
            let input = input.trim();
            if input.contains(',') || !input.chars().all(|c| c == '0' || c == '1') {
                let groups: GroupPattern = input.parse()?;
                let payload = from_groups(&groups);
                let written = payload.written();
                let sym = table.symbol_for_written(&written);
                writeln!(out, "{written}{}", symbol_suffix(sym))?;
            } else {
                let bits: BitStream = input.parse()?;
                let payload = match Payload::new(bits.clone()) {
                    Ok(p) => p,
                    Err(_) => CodeWord::from_written(&bits)?.payload().clone(),
                };
                let sym = table.symbol_for_payload(&payload);
                writeln!(out, "{}{}", to_groups(&payload), symbol_suffix(sym))?;
            }
        }
        Command::Analyze {
            corpus,
            json,
            costs,
        } => {
            let text = match &corpus {
                Some(path) => read(path)?,
                None => GERMAN_CORPUS.to_string(),
            };
            let freqs = ingest_corpus(&text)?;
            match costs {
                None => {
                    let report = efficiency_report(&freqs)?;
                    if json {
                        write!(out, "{}", report.to_json_lines())?;
                    } else {
                        write!(out, "{}", report.to_tsv())?;
                    }
                }
                Some(scheme) => {
                    let symbols: Vec<char> = freqs.symbols().collect();
                    let t = match scheme {
                        CostScheme::Tap => {
                            CodeLengthTable::from_fn(symbols, |c| tap_cost(&table, c))?
                        }
                        CostScheme::Huffman => huffman_lengths(&freqs)?,
                        CostScheme::Morse => morse_table_costs(symbols)?,
                        CostScheme::PolybiusOriginal => {
                            let sq = PolybiusSquare::original();
                            CodeLengthTable::from_fn(symbols, |c| sq.cost(c))?
                        }
                        CostScheme::PolybiusOptimized => {
                            let sq = build_optimized_polybius(&freqs);
                            CodeLengthTable::from_fn(symbols, |c| sq.cost(c))?
                        }
                    };
                    write!(out, "{}", t.to_text())?;
                }
            }
        }
        Command::Derive { max_elements } => {
            let d = derive_from_morse(max_elements);
            for class in &d.classes {
                let dropped: Vec<String> = class
                    .dropped
                    .iter()
                    .map(|(seq, r)| format!("{} {}", format_morse(seq), r))
                    .collect();
                writeln!(
                    out,
                    "{}\t{}\tdropped: {}",
                    class.kept.1,
                    format_morse(&class.kept.0),
                    dropped.join(", ")
                )?;
            }
            let tap = crate::code::enumerate_payloads(max_elements)
                .into_iter()
                .map(|p| p.written())
                .filter(|w| w.len() <= max_elements)
                .collect::<std::collections::BTreeSet<_>>();
            let derived = d
                .written_forms()
                .into_iter()
                .filter(|w| w.len() <= max_elements)
                .collect::<std::collections::BTreeSet<_>>();
            let verdict = if tap == derived { "equal" } else { "different" };
            writeln!(
                out,
                "written forms up to {max_elements} slots: {} derived, {} enumerated, {verdict}",
                derived.len(),
                tap.len()
            )?;
        }
        Command::Estimate {
            bits_per_char,
            unit_seconds,
        } => {
            let s = speed_estimate(bits_per_char, unit_seconds)?;
            writeln!(out, "chars_per_second\t{:.4}", s.chars_per_second)?;
            writeln!(out, "words_per_minute\t{:.4}", s.words_per_minute)?;
        }
        Command::Serve { port } => {
            let listener = TcpListener::bind(("127.0.0.1", port))?;
            writeln!(out, "listening on {}", listener.local_addr()?)?;
            out.flush()?;
            crate::serve::serve(listener, Arc::new(table))?;
        }
    }
    Ok(())
}

fn symbol_suffix(sym: Option<char>) -> String {
    sym.map(|s| format!("\t{s}")).unwrap_or_default()
}
