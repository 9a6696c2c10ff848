//! Plain bit sequences. One bit is one sixteenth slot on the tapping grid:
//! `1` is a tap, `0` is a silent slot.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// An ordered sequence of slots.
///
/// Serializes as an ASCII string of `0`/`1`. Parsing ignores whitespace and
/// `|`, so the grouped rendering produced by [`BitStream::grouped`] parses
/// back to the same stream.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitStream(Vec<bool>);

impl BitStream {
    pub fn new() -> Self {
        BitStream(Vec::new())
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        BitStream(bits)
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn into_bits(self) -> Vec<bool> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn count_ones(&self) -> usize {
        self.0.iter().filter(|&&b| b).count()
    }

    pub fn push(&mut self, bit: bool) {
        self.0.push(bit);
    }

    pub fn push_zeros(&mut self, n: usize) {
        self.0.extend(std::iter::repeat_n(false, n));
    }

    pub fn extend_from(&mut self, other: &BitStream) {
        self.0.extend_from_slice(&other.0);
    }

    /// Renders the stream with `sep` inserted after every second bit, which
    /// shows the eighth-beat alignment.
    pub fn grouped(&self, sep: &str) -> String {
        let mut out = String::with_capacity(self.len() * (1 + sep.len()) / 2 + 1);
        for (i, pair) in self.0.chunks(2).enumerate() {
            if i > 0 {
                out.push_str(sep);
            }
            for &b in pair {
                out.push(if b { '1' } else { '0' });
            }
        }
        out
    }
}

impl fmt::Display for BitStream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BitStream {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut bits = Vec::with_capacity(s.len());
        for c in s.chars() {
            match c {
                '0' => bits.push(false),
                '1' => bits.push(true),
                '|' => {}
                c if c.is_whitespace() => {}
                c => return Err(Error::InvalidBits(c)),
            }
        }
        Ok(BitStream(bits))
    }
}

impl From<Vec<bool>> for BitStream {
    fn from(bits: Vec<bool>) -> Self {
        BitStream(bits)
    }
}
