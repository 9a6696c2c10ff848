//! Payloads, codewords and tap tables.
//!
//! A codeword is built from a *payload*: a run of taps and single silences
//! that starts and ends with a tap and never contains two silences in a row.
//! The payload is padded with one `0` when its length is odd (the *written*
//! form, always an even number of slots) and then terminated by `00` (the
//! *framed* form). Because a payload never contains `00`, the first `00` of a
//! framed codeword is always its pad or terminator, so codewords can be
//! concatenated without any extra separator.

use std::cmp::Reverse;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use crate::bits::BitStream;
use crate::error::{Error, Result};

/// Longest payload used by [`construct_table`].
pub const MAX_PAYLOAD_LEN: usize = 8;

/// Payload left unassigned by the canonical table. It has only five taps but
/// its syncopated rhythm is hard to keep.
pub const EXCLUDED_PAYLOAD: &str = "11010101";

/// The canonical German table, in assignment order, as written forms.
const CANONICAL: [(char, &str); 32] = [
    ('e', "10"),
    ('n', "11"),
    ('i', "1010"),
    ('r', "1110"),
    ('s', "1101"),
    ('t', "1011"),
    ('a', "1111"),
    ('h', "101010"),
    ('d', "111010"),
    ('l', "110110"),
    ('u', "101110"),
    ('c', "110101"),
    ('m', "101101"),
    ('g', "101011"),
    ('o', "111110"),
    ('b', "111101"),
    ('f', "111011"),
    ('w', "110111"),
    ('k', "101111"),
    ('z', "111111"),
    ('p', "10101010"),
    ('v', "10110110"),
    ('ä', "11101010"),
    ('ü', "10111010"),
    ('ß', "10101110"),
    ('ö', "10101011"),
    ('j', "11011010"),
    ('x', "10101101"),
    ('y', "10110101"),
    ('q', "11010110"),
    ('.', "10111110"),
    ('?', "11101011"),
];

/// Number of symbols in the canonical German table.
pub const CANONICAL_LEN: usize = CANONICAL.len();

/// Symbols of the canonical table from most to least frequent.
pub fn canonical_german_order() -> Vec<char> {
    CANONICAL.iter().map(|&(c, _)| c).collect()
}

/// The information-bearing core of a codeword.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Payload(BitStream);

impl Payload {
    pub fn new(bits: BitStream) -> Result<Self> {
        if is_valid_payload(bits.bits()) {
            Ok(Payload(bits))
        } else {
            Err(Error::InvalidPayload(bits.to_string()))
        }
    }

    pub fn bits(&self) -> &BitStream {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn count_ones(&self) -> usize {
        self.0.count_ones()
    }

    /// Payload plus a pad `0` when its length is odd.
    pub fn written(&self) -> BitStream {
        let mut w = self.0.clone();
        if w.len() % 2 == 1 {
            w.push(false);
        }
        w
    }

    /// Written form plus the `00` terminator.
    pub fn framed(&self) -> BitStream {
        let mut f = self.written();
        f.push_zeros(2);
        f
    }

    pub fn framed_len(&self) -> usize {
        self.len() + self.len() % 2 + 2
    }

    /// Sort key used by the enumeration: shorter framed codewords first, then
    /// fewer taps, then descending numeric value of the written form.
    pub fn enumeration_key(&self) -> (usize, usize, Reverse<BitStream>) {
        (
            self.framed_len(),
            self.count_ones(),
            Reverse(self.written()),
        )
    }
}

impl fmt::Display for Payload {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl FromStr for Payload {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Payload::new(s.parse()?)
    }
}

fn is_valid_payload(bits: &[bool]) -> bool {
    match (bits.first(), bits.last()) {
        (Some(true), Some(true)) => !bits.windows(2).any(|w| !w[0] && !w[1]),
        _ => false,
    }
}

/// A payload together with its written and framed forms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CodeWord {
    payload: Payload,
    written: BitStream,
    framed: BitStream,
}

impl CodeWord {
    pub fn new(payload: Payload) -> Self {
        let written = payload.written();
        let framed = payload.framed();
        CodeWord {
            payload,
            written,
            framed,
        }
    }

    /// Recovers the codeword from its written form by stripping a trailing
    /// pad `0`.
    pub fn from_written(written: &BitStream) -> Result<Self> {
        if !written.len().is_multiple_of(2) {
            return Err(Error::InvalidPayload(written.to_string()));
        }
        let mut bits = written.bits().to_vec();
        if bits.last() == Some(&false) {
            bits.pop();
        }
        Ok(CodeWord::new(Payload::new(bits.into())?))
    }

    pub fn payload(&self) -> &Payload {
        &self.payload
    }

    pub fn written(&self) -> &BitStream {
        &self.written
    }

    pub fn framed(&self) -> &BitStream {
        &self.framed
    }

    pub fn groups(&self) -> GroupPattern {
        to_groups(&self.payload)
    }
}

/// Counts of consecutive taps, e.g. `1,2,1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupPattern(Vec<u32>);

impl GroupPattern {
    pub fn new(counts: Vec<u32>) -> Result<Self> {
        if counts.is_empty() || counts.contains(&0) {
            return Err(Error::InvalidGroups(format_counts(&counts)));
        }
        Ok(GroupPattern(counts))
    }

    pub fn counts(&self) -> &[u32] {
        &self.0
    }

    pub fn total_taps(&self) -> u32 {
        self.0.iter().sum()
    }
}

fn format_counts(counts: &[u32]) -> String {
    counts
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

impl fmt::Display for GroupPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_counts(&self.0))
    }
}

impl FromStr for GroupPattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let counts = s
            .split(',')
            .map(|part| part.trim().parse::<u32>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::InvalidGroups(s.to_string()))?;
        GroupPattern::new(counts)
    }
}

/// Run lengths of the taps in `payload`.
pub fn to_groups(payload: &Payload) -> GroupPattern {
    let mut counts = Vec::new();
    let mut run = 0u32;
    for &bit in payload.bits().bits() {
        if bit {
            run += 1;
        } else {
            counts.push(run);
            run = 0;
        }
    }
    counts.push(run);
    GroupPattern(counts)
}

/// Tap groups of the given sizes joined by single silences.
pub fn from_groups(groups: &GroupPattern) -> Payload {
    let mut bits = Vec::with_capacity(groups.total_taps() as usize + groups.0.len());
    for (i, &count) in groups.0.iter().enumerate() {
        if i > 0 {
            bits.push(false);
        }
        bits.extend(std::iter::repeat_n(true, count as usize));
    }
    Payload(bits.into())
}

/// All payloads of exactly `len` bits, in no particular order.
fn payloads_of_len(len: usize) -> Vec<Payload> {
    fn grow(prefix: &mut Vec<bool>, len: usize, out: &mut Vec<Payload>) {
        if prefix.len() == len {
            if prefix.last() == Some(&true) {
                out.push(Payload(prefix.clone().into()));
            }
            return;
        }
        prefix.push(true);
        grow(prefix, len, out);
        prefix.pop();
        if prefix.last() == Some(&true) {
            prefix.push(false);
            grow(prefix, len, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if len > 0 {
        grow(&mut vec![true], len, &mut out);
    }
    out
}

/// Every payload of length `1..=max_payload_len`, ordered by
/// [`Payload::enumeration_key`].
pub fn enumerate_payloads(max_payload_len: usize) -> Vec<Payload> {
    let mut all: Vec<Payload> = (1..=max_payload_len).flat_map(payloads_of_len).collect();
    all.sort_by_cached_key(Payload::enumeration_key);
    all
}

/// How [`construct_table`] orders payloads that share a sort key.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TieBreak {
    /// Follow the canonical table's assignment order and leave
    /// [`EXCLUDED_PAYLOAD`] unused.
    #[default]
    Canonical,
    /// Descending numeric value of the written form; nothing is excluded.
    Deterministic,
}

fn assignment_sequence(tiebreak: TieBreak) -> Vec<Payload> {
    let enumerated = enumerate_payloads(MAX_PAYLOAD_LEN);
    match tiebreak {
        TieBreak::Deterministic => enumerated,
        TieBreak::Canonical => {
            let excluded: Payload = EXCLUDED_PAYLOAD.parse().expect("valid payload");
            let mut seq: Vec<Payload> = CANONICAL
                .iter()
                .map(|&(_, w)| {
                    CodeWord::from_written(&w.parse().expect("valid bits"))
                        .expect("canonical codeword")
                        .payload
                })
                .collect();
            let used: BTreeSet<Payload> = seq.iter().cloned().collect();
            seq.extend(
                enumerated
                    .into_iter()
                    .filter(|p| *p != excluded && !used.contains(p)),
            );
            seq
        }
    }
}

/// Number of symbols [`construct_table`] can encode.
pub fn table_capacity(tiebreak: TieBreak) -> usize {
    assignment_sequence(tiebreak).len()
}

/// Assigns the i-th symbol (most frequent first) the i-th payload.
pub fn construct_table(symbols_by_frequency: &[char], tiebreak: TieBreak) -> Result<TapTable> {
    if symbols_by_frequency.is_empty() {
        return Err(Error::InvalidAlphabet("no symbols".into()));
    }
    let seq = assignment_sequence(tiebreak);
    if symbols_by_frequency.len() > seq.len() {
        return Err(Error::AlphabetTooLarge {
            requested: symbols_by_frequency.len(),
            available: seq.len(),
        });
    }
    let entries = symbols_by_frequency
        .iter()
        .zip(seq)
        .map(|(&s, p)| (s, CodeWord::new(p)))
        .collect();
    TapTable::from_entries(entries)
}

/// The 32-entry German table.
pub fn canonical_german_table() -> TapTable {
    construct_table(&canonical_german_order(), TieBreak::Canonical).expect("canonical table")
}

/// Ordered symbol to codeword map with a reverse index on written forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TapTable {
    entries: Vec<(char, CodeWord)>,
    by_symbol: HashMap<char, usize>,
    by_written: HashMap<BitStream, usize>,
}

impl TapTable {
    /// Builds a table, checking that symbols and written forms are distinct.
    /// Entries are stably sorted by framed length, then tap count.
    pub fn from_entries(mut entries: Vec<(char, CodeWord)>) -> Result<Self> {
        entries.sort_by_key(|(_, cw)| (cw.framed().len(), cw.payload().count_ones()));
        let mut by_symbol = HashMap::with_capacity(entries.len());
        let mut by_written = HashMap::with_capacity(entries.len());
        for (i, (sym, cw)) in entries.iter().enumerate() {
            if sym.is_whitespace() {
                return Err(Error::InvalidTable(format!(
                    "whitespace symbol {sym:?} is reserved for word gaps"
                )));
            }
            if by_symbol.insert(*sym, i).is_some() {
                return Err(Error::InvalidTable(format!("duplicate symbol {sym:?}")));
            }
            if by_written.insert(cw.written().clone(), i).is_some() {
                return Err(Error::InvalidTable(format!(
                    "duplicate codeword {}",
                    cw.written()
                )));
            }
        }
        Ok(TapTable {
            entries,
            by_symbol,
            by_written,
        })
    }

    pub fn entries(&self) -> &[(char, CodeWord)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, symbol: char) -> Option<&CodeWord> {
        self.by_symbol.get(&symbol).map(|&i| &self.entries[i].1)
    }

    pub fn symbol_for_written(&self, written: &BitStream) -> Option<char> {
        self.by_written.get(written).map(|&i| self.entries[i].0)
    }

    pub fn symbol_for_payload(&self, payload: &Payload) -> Option<char> {
        self.symbol_for_written(&payload.written())
    }

    pub fn symbols(&self) -> impl Iterator<Item = char> + '_ {
        self.entries.iter().map(|(s, _)| *s)
    }

    /// `symbol<TAB>written<TAB>groups`, one line per entry.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (sym, cw) in &self.entries {
            out.push_str(&format!("{sym}\t{}\t{}\n", cw.written(), cw.groups()));
        }
        out
    }

    /// Parses the [`to_text`](TapTable::to_text) format. The groups column is
    /// optional but must agree with the written form when present; blank lines
    /// and `#` comments are skipped.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut entries = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim_end_matches('\r');
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |msg: &str| Error::InvalidTable(format!("line {}: {msg}", lineno + 1));
            let mut fields = line.split('\t');
            let sym_field = fields.next().unwrap_or_default();
            let mut chars = sym_field.chars();
            let sym = match (chars.next(), chars.next()) {
                (Some(c), None) => c,
                _ => return Err(bad("symbol must be a single character")),
            };
            let written: BitStream = fields
                .next()
                .ok_or_else(|| bad("missing codeword"))?
                .parse()
                .map_err(|_| bad("codeword is not a bit string"))?;
            let cw = CodeWord::from_written(&written).map_err(|e| bad(&e.to_string()))?;
            if let Some(groups) = fields.next().filter(|g| !g.is_empty()) {
                let groups: GroupPattern = groups.parse().map_err(|_| bad("bad groups"))?;
                if groups != cw.groups() {
                    return Err(bad("groups disagree with codeword"));
                }
            }
            entries.push((sym, cw));
        }
        if entries.is_empty() {
            return Err(Error::InvalidTable("no entries".into()));
        }
        TapTable::from_entries(entries)
    }
}

/// A Morse element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MorseElement {
    Dit,
    Dah,
}

impl MorseElement {
    /// Knocked rendering: a dit is one tap, a dah is a tap held for an eighth.
    pub fn knocked(self) -> &'static [bool] {
        match self {
            MorseElement::Dit => &[true],
            MorseElement::Dah => &[true, false],
        }
    }

    pub fn symbol(self) -> char {
        match self {
            MorseElement::Dit => '.',
            MorseElement::Dah => '-',
        }
    }
}

/// Writes a Morse sequence as `.` and `-`.
pub fn format_morse(elements: &[MorseElement]) -> String {
    elements.iter().map(|e| e.symbol()).collect()
}

/// Renders a Morse sequence as knocked slots.
pub fn knock_morse(elements: &[MorseElement]) -> BitStream {
    elements
        .iter()
        .flat_map(|e| e.knocked().iter().copied())
        .collect::<Vec<_>>()
        .into()
}

/// Morse sequences whose knocked renderings share one onset pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CollisionClass {
    /// Tap onsets with trailing silence removed.
    pub onsets: BitStream,
    /// The rendering of even length, which fits the eighth raster.
    pub kept: (Vec<MorseElement>, BitStream),
    pub dropped: Vec<(Vec<MorseElement>, BitStream)>,
}

/// Result of knocking every Morse sequence up to a given number of elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorseDerivation {
    pub max_elements: usize,
    pub classes: Vec<CollisionClass>,
}

impl MorseDerivation {
    /// The kept renderings; these are written forms of the tap code.
    pub fn written_forms(&self) -> BTreeSet<BitStream> {
        self.classes.iter().map(|c| c.kept.1.clone()).collect()
    }
}

fn strip_trailing_zeros(bits: &BitStream) -> BitStream {
    let b = bits.bits();
    let end = b.iter().rposition(|&x| x).map_or(0, |i| i + 1);
    b[..end].to_vec().into()
}

/// Knocks every dit/dah sequence of `1..=max_elements` elements, groups the
/// renderings that sound the same and keeps the even-length one of each group.
pub fn derive_from_morse(max_elements: usize) -> MorseDerivation {
    let mut classes: std::collections::BTreeMap<BitStream, Vec<(Vec<MorseElement>, BitStream)>> =
        Default::default();
    for len in 1..=max_elements {
        for mask in 0u64..(1u64 << len) {
            let seq: Vec<MorseElement> = (0..len)
                .map(|i| {
                    if mask >> (len - 1 - i) & 1 == 1 {
                        MorseElement::Dah
                    } else {
                        MorseElement::Dit
                    }
                })
                .collect();
            let rendering = knock_morse(&seq);
            classes
                .entry(strip_trailing_zeros(&rendering))
                .or_default()
                .push((seq, rendering));
        }
    }
    let classes = classes
        .into_iter()
        .filter_map(|(onsets, mut members)| {
            let kept_idx = members.iter().position(|(_, r)| r.len() % 2 == 0)?;
            let kept = members.remove(kept_idx);
            Some(CollisionClass {
                onsets,
                kept,
                dropped: members,
            })
        })
        .collect();
    MorseDerivation {
        max_elements,
        classes,
    }
}

/// First `k` codewords of the unpadded variant meant for machine data: `0`,
/// then every payload followed by `00`, without the even-length rule.
pub fn construct_data_variant(k: usize) -> Vec<BitStream> {
    let mut out = Vec::with_capacity(k);
    if k == 0 {
        return out;
    }
    out.push(BitStream::from_bits(vec![false]));
    let mut len = 1;
    while out.len() < k {
        let mut batch = payloads_of_len(len);
        batch.sort_by_cached_key(|p| (p.count_ones(), Reverse(p.bits().clone())));
        for p in batch {
            if out.len() == k {
                break;
            }
            let mut cw = p.bits().clone();
            cw.push_zeros(2);
            out.push(cw);
        }
        len += 1;
    }
    out
}
