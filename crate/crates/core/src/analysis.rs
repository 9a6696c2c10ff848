//! Corpus statistics and the efficiency comparison.

use std::fmt;

use serde::Serialize;

use crate::code::{canonical_german_table, TapTable};
use crate::error::{Error, Result};
use crate::schemes::{
    build_optimized_polybius, fixed_width_cost, huffman_lengths, tap_cost, weighted, MorseTable,
    PolybiusSquare,
};

/// Public-domain German prose bundled for the efficiency comparison.
pub const GERMAN_CORPUS: &str = include_str!("../corpus/de.txt");
/// Public-domain English prose bundled for the efficiency comparison.
pub const ENGLISH_CORPUS: &str = include_str!("../corpus/en.txt");

/// Characters kept by [`ingest_corpus`]: 26 letters, four German extras and
/// the space.
pub const ANALYSIS_ALPHABET: [char; 31] = [
    'a', 'b', 'c', 'd', 'e', 'f', 'g', 'h', 'i', 'j', 'k', 'l', 'm', 'n', 'o', 'p', 'q', 'r', 's',
    't', 'u', 'v', 'w', 'x', 'y', 'z', 'ä', 'ö', 'ü', 'ß', ' ',
];

/// Symbol counts and the probabilities derived from them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrequencyTable {
    counts: Vec<(char, u64)>,
    total: u64,
}

impl FrequencyTable {
    /// Table over arbitrary symbols, kept in the given order.
    pub fn from_counts(counts: impl IntoIterator<Item = (char, u64)>) -> Result<Self> {
        let mut merged: Vec<(char, u64)> = Vec::new();
        for (c, n) in counts {
            match merged.iter_mut().find(|(s, _)| *s == c) {
                Some((_, m)) => *m += n,
                None => merged.push((c, n)),
            }
        }
        let total = merged.iter().map(|(_, n)| n).sum();
        if total == 0 {
            return Err(Error::EmptyCorpus);
        }
        Ok(FrequencyTable {
            counts: merged,
            total,
        })
    }

    /// Same as [`ingest_corpus`].
    pub fn from_text(text: &str) -> Result<Self> {
        ingest_corpus(text)
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn count(&self, symbol: char) -> u64 {
        self.counts
            .iter()
            .find(|(c, _)| *c == symbol)
            .map_or(0, |(_, n)| *n)
    }

    pub fn probability(&self, symbol: char) -> f64 {
        self.count(symbol) as f64 / self.total as f64
    }

    pub fn symbols(&self) -> impl Iterator<Item = char> + '_ {
        self.counts.iter().map(|(c, _)| *c)
    }

    pub fn counts(&self) -> &[(char, u64)] {
        &self.counts
    }

    pub fn probabilities(&self) -> impl Iterator<Item = (char, f64)> + '_ {
        let total = self.total as f64;
        self.counts.iter().map(move |&(c, n)| (c, n as f64 / total))
    }

    /// Adds the counts of `other`. Counts are additive, so tables built from
    /// chunks of a corpus merge to the table of the whole corpus.
    pub fn merge(&self, other: &FrequencyTable) -> FrequencyTable {
        let mut counts = self.counts.clone();
        for &(c, n) in &other.counts {
            match counts.iter_mut().find(|(s, _)| *s == c) {
                Some((_, m)) => *m += n,
                None => counts.push((c, n)),
            }
        }
        FrequencyTable {
            counts,
            total: self.total + other.total,
        }
    }

    /// Shannon entropy in bits per symbol.
    pub fn entropy(&self) -> f64 {
        -self
            .probabilities()
            .filter(|&(_, p)| p > 0.0)
            .map(|(_, p)| p * p.log2())
            .sum::<f64>()
    }
}

/// Lowercases, keeps the [`ANALYSIS_ALPHABET`], turns every run of
/// whitespace (after dropping everything else) into one space and trims the
/// ends. Absent symbols stay in the table with a zero count.
pub fn ingest_corpus(text: &str) -> Result<FrequencyTable> {
    let mut counts = [0u64; ANALYSIS_ALPHABET.len()];
    let space = ANALYSIS_ALPHABET.len() - 1;
    let mut pending_space = false;
    let mut seen_letter = false;
    for c in text.chars().flat_map(char::to_lowercase) {
        if c.is_whitespace() {
            pending_space = seen_letter;
            continue;
        }
        if let Some(i) = ANALYSIS_ALPHABET[..space].iter().position(|&a| a == c) {
            if pending_space {
                counts[space] += 1;
                pending_space = false;
            }
            counts[i] += 1;
            seen_letter = true;
        }
    }
    FrequencyTable::from_counts(ANALYSIS_ALPHABET.iter().copied().zip(counts))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    Huffman,
    FixedWidth,
    Tap,
    PolybiusOptimized,
    PolybiusOriginal,
    MorseBinary,
}

impl Scheme {
    pub const ALL: [Scheme; 6] = [
        Scheme::Huffman,
        Scheme::FixedWidth,
        Scheme::Tap,
        Scheme::PolybiusOptimized,
        Scheme::PolybiusOriginal,
        Scheme::MorseBinary,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Scheme::Huffman => "huffman",
            Scheme::FixedWidth => "fixed_width",
            Scheme::Tap => "tap",
            Scheme::PolybiusOptimized => "polybius_optimized",
            Scheme::PolybiusOriginal => "polybius_original",
            Scheme::MorseBinary => "morse_binary",
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Average cost per character of every scheme over one frequency table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EfficiencyReport {
    pub averages: Vec<(Scheme, f64)>,
    /// Morse in symbols over {dit, dah, pause}.
    pub morse_ternary: f64,
    /// Bits carrying the same information as `morse_ternary` trits.
    pub morse_ternary_binary: f64,
}

impl EfficiencyReport {
    pub fn get(&self, scheme: Scheme) -> f64 {
        self.averages
            .iter()
            .find(|(s, _)| *s == scheme)
            .map(|&(_, v)| v)
            .expect("every scheme is reported")
    }

    /// `scheme<TAB>avg_bits` lines, then
    /// `morse_ternary<TAB>avg_symbols<TAB>binary_equivalent`.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for (s, v) in &self.averages {
            out.push_str(&format!("{s}\t{v:.4}\n"));
        }
        out.push_str(&format!(
            "morse_ternary\t{:.4}\t{:.4}\n",
            self.morse_ternary, self.morse_ternary_binary
        ));
        out
    }

    /// One JSON object per line.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for (s, v) in &self.averages {
            let line = serde_json::json!({ "scheme": s, "avg_bits": v });
            out.push_str(&line.to_string());
            out.push('\n');
        }
        let line = serde_json::json!({
            "scheme": "morse_ternary",
            "avg_symbols": self.morse_ternary,
            "binary_equivalent": self.morse_ternary_binary,
        });
        out.push_str(&line.to_string());
        out.push('\n');
        out
    }
}

/// Report against the canonical German table.
pub fn efficiency_report(freqs: &FrequencyTable) -> Result<EfficiencyReport> {
    efficiency_report_with(freqs, &canonical_german_table())
}

pub fn efficiency_report_with(
    freqs: &FrequencyTable,
    table: &TapTable,
) -> Result<EfficiencyReport> {
    let morse = MorseTable::international();
    let original = PolybiusSquare::original();
    let optimized = build_optimized_polybius(freqs);
    let fixed = fixed_width_cost(freqs.symbols().count()) as f64;

    let huffman = huffman_lengths(freqs)?.weighted_bits(freqs)?;
    let tap = weighted(freqs, |c| tap_cost(table, c).map(f64::from))?;
    let poly_opt = weighted(freqs, |c| optimized.cost(c).map(f64::from))?;
    let poly_orig = weighted(freqs, |c| original.cost(c).map(f64::from))?;
    let morse_binary = weighted(freqs, |c| morse.binary_cost(c).map(f64::from))?;
    let morse_ternary = weighted(freqs, |c| morse.ternary_cost(c).map(f64::from))?;

    Ok(EfficiencyReport {
        averages: vec![
            (Scheme::Huffman, huffman),
            (Scheme::FixedWidth, fixed),
            (Scheme::Tap, tap),
            (Scheme::PolybiusOptimized, poly_opt),
            (Scheme::PolybiusOriginal, poly_orig),
            (Scheme::MorseBinary, morse_binary),
        ],
        morse_ternary,
        morse_ternary_binary: ternary_to_binary(morse_ternary),
    })
}

/// Bits carrying as much information as `trits` ternary symbols.
pub fn ternary_to_binary(trits: f64) -> f64 {
    trits * 3f64.log2()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Speed {
    pub chars_per_second: f64,
    pub words_per_minute: f64,
}

/// Letters per word, including the trailing space.
pub const CHARS_PER_WORD: f64 = 6.0;

pub fn speed_estimate(bits_per_char: f64, unit_seconds: f64) -> Result<Speed> {
    if !(bits_per_char > 0.0 && unit_seconds > 0.0) {
        return Err(Error::InvalidOption(
            "bits per character and unit must be positive".into(),
        ));
    }
    let cps = 1.0 / (bits_per_char * unit_seconds);
    Ok(Speed {
        chars_per_second: cps,
        words_per_minute: cps * 60.0 / CHARS_PER_WORD,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ingest_examples() {
        let f = ingest_corpus("Ab  cd.").unwrap();
        assert_eq!(f.total(), 5);
        assert_eq!(f.count(' '), 1);
        for c in ['a', 'b', 'c', 'd'] {
            assert_eq!(f.count(c), 1);
        }
        assert_eq!(f.symbols().count(), 31);

        let f = ingest_corpus("ÄÖÜ").unwrap();
        assert_eq!((f.count('ä'), f.count('ö'), f.count('ü')), (1, 1, 1));

        assert_eq!(ingest_corpus("123"), Err(Error::EmptyCorpus));
        assert_eq!(ingest_corpus(""), Err(Error::EmptyCorpus));
    }

    #[test]
    fn ingest_collapses_around_dropped_characters() {
        let f = ingest_corpus("  one - two\n\nthree  ").unwrap();
        assert_eq!(f.count(' '), 2);
        assert_eq!(f.total(), 13);
    }

    #[test]
    fn probabilities_sum_to_one() {
        let f = ingest_corpus(GERMAN_CORPUS).unwrap();
        let sum: f64 = f.probabilities().map(|(_, p)| p).sum();
        assert!((sum - 1.0).abs() < 1e-9);
    }

    #[test]
    fn merge_is_additive() {
        let a = ingest_corpus("der wolf").unwrap();
        let b = ingest_corpus("und rotkäppchen").unwrap();
        let m = a.merge(&b);
        assert_eq!(m.total(), a.total() + b.total());
        assert_eq!(m.count('o'), 2);
    }

    #[test]
    fn dominant_symbol_report() {
        let f = FrequencyTable::from_counts([('e', 1_000_000), ('n', 1)]).unwrap();
        let r = efficiency_report(&f).unwrap();
        assert!((r.get(Scheme::Tap) - 4.0).abs() < 1e-4);
    }

    #[test]
    fn ternary_conversion() {
        assert!((ternary_to_binary(4.13) - 6.5458).abs() < 1e-3);
        assert!((ternary_to_binary(1.0) - 1.585).abs() < 1e-3);
        assert!((ternary_to_binary(0.5) - 0.792).abs() < 1e-3);
    }

    #[test]
    fn speed_examples() {
        let s = speed_estimate(6.0, 1.0 / 6.0).unwrap();
        assert!((s.chars_per_second - 1.0).abs() < 1e-12);
        assert!((s.words_per_minute - 10.0).abs() < 1e-12);
        let s = speed_estimate(6.0, 1.0 / 3.0).unwrap();
        assert!((s.chars_per_second - 0.5).abs() < 1e-12);
        assert!((s.words_per_minute - 5.0).abs() < 1e-12);
        let s = speed_estimate(4.0, 0.25).unwrap();
        assert!((s.words_per_minute - 10.0).abs() < 1e-12);
        assert!(speed_estimate(0.0, 1.0).is_err());
    }

    #[test]
    fn report_formats() {
        let r = efficiency_report(&ingest_corpus("tap code").unwrap()).unwrap();
        let tsv = r.to_tsv();
        assert_eq!(tsv.lines().count(), 7);
        assert!(tsv.starts_with("huffman\t"));
        assert!(tsv.lines().last().unwrap().starts_with("morse_ternary\t"));
        for line in r.to_json_lines().lines() {
            let v: serde_json::Value = serde_json::from_str(line).unwrap();
            assert!(v["scheme"].is_string());
        }
    }
}
