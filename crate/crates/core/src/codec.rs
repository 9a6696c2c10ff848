//! Framing text into a continuous slot stream and reading it back.
//!
//! Letters are sent as framed codewords back to back. A space adds
//! `word_gap_zeros` silent slots after the previous letter's terminator, so a
//! word boundary is heard as a silence of at least four slots while a letter
//! boundary is two or three.

use crate::bits::BitStream;
use crate::code::TapTable;
use crate::error::{Error, Result};

/// Extra silent slots per space.
pub const DEFAULT_WORD_GAP_ZEROS: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EncodeOptions {
    /// Substitute digits with letters before encoding.
    pub digit_mode: bool,
    /// Must be even and at least 2.
    pub word_gap_zeros: usize,
}

impl Default for EncodeOptions {
    fn default() -> Self {
        EncodeOptions {
            digit_mode: false,
            word_gap_zeros: DEFAULT_WORD_GAP_ZEROS,
        }
    }
}

impl EncodeOptions {
    pub fn with_digit_mode(mut self, on: bool) -> Self {
        self.digit_mode = on;
        self
    }

    pub fn validate(&self) -> Result<()> {
        validate_word_gap(self.word_gap_zeros)
    }
}

fn validate_word_gap(zeros: usize) -> Result<()> {
    if zeros < 2 || !zeros.is_multiple_of(2) {
        return Err(Error::InvalidOption(format!(
            "word gap must be even and at least 2, got {zeros}"
        )));
    }
    Ok(())
}

/// Letter standing in for a digit: 1-6 are e,n,r,a,o,z, then 7 s, 8 t, 9 h
/// and 0 i.
pub fn digit_letter(digit: char) -> Option<char> {
    Some(match digit {
        '1' => 'e',
        '2' => 'n',
        '3' => 'r',
        '4' => 'a',
        '5' => 'o',
        '6' => 'z',
        '7' => 's',
        '8' => 't',
        '9' => 'h',
        '0' => 'i',
        _ => return None,
    })
}

/// Lowercases `text` and applies digit substitution when enabled. This is
/// the text that [`encode`] actually transmits.
pub fn normalize(text: &str, digit_mode: bool) -> String {
    text.chars()
        .flat_map(char::to_lowercase)
        .map(|c| {
            if digit_mode {
                digit_letter(c).unwrap_or(c)
            } else {
                c
            }
        })
        .collect()
}

pub fn encode(text: &str, table: &TapTable, opts: &EncodeOptions) -> Result<BitStream> {
    opts.validate()?;
    let mut out = BitStream::new();
    for c in normalize(text, opts.digit_mode).chars() {
        if c == ' ' {
            out.push_zeros(opts.word_gap_zeros);
            continue;
        }
        let cw = table.get(c).ok_or(Error::UnknownSymbol(c))?;
        out.extend_from(cw.framed());
    }
    Ok(out)
}

/// Reads a stream produced by [`encode`].
///
/// Each letter is the run of bits from a tap up to the first `00`; an odd
/// payload is looked up with its pad restored, so the decoder never needs to
/// track parity. A silence of two or three slots after a letter is a letter
/// gap; four or more also ends the word. Runs of spaces therefore come back
/// as a single space, and a stream may not start with silence.
pub fn decode(stream: &BitStream, table: &TapTable) -> Result<String> {
    let bits = stream.bits();
    let n = bits.len();
    let mut out = String::new();

    if bits.first() == Some(&false) {
        let lead = bits.iter().take_while(|&&b| !b).count();
        return Err(Error::Malformed(format!(
            "{lead} silent slots before the first tap"
        )));
    }

    let mut pos = 0;
    while pos < n {
        let start = pos;
        // A payload never contains "00", so the first one ends it.
        let end = (start..n.saturating_sub(1))
            .find(|&i| !bits[i] && !bits[i + 1])
            .ok_or(Error::TruncatedStream(start))?;
        let mut written = BitStream::from_bits(bits[start..end].to_vec());
        if written.len() % 2 == 1 {
            written.push(false);
        }
        let sym = table
            .symbol_for_written(&written)
            .ok_or_else(|| Error::UnknownCodeword(written.to_string()))?;
        out.push(sym);

        let zeros = bits[end..].iter().take_while(|&&b| !b).count();
        if zeros >= 4 {
            out.push(' ');
        }
        pos = end + zeros;
    }
    Ok(out)
}
