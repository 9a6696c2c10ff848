//! From tap timestamps to text.
//!
//! Two readings of a tap session are supported. *Strict* mode snaps every
//! onset to the sixteenth grid and decodes the resulting slot stream exactly
//! like a written bitstream. *Relaxed* mode ignores the grid and only counts
//! taps: short gaps join taps into a group, medium gaps separate groups of the
//! same letter and long gaps end the letter.

use std::fmt;
use std::str::FromStr;

use crate::bits::BitStream;
use crate::code::{from_groups, GroupPattern, TapTable};
use crate::codec;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TapEvent {
    pub onset_ms: u64,
}

/// Tap onsets relative to the session start.
#[derive(Debug, Clone, PartialEq)]
pub struct TapSession {
    events: Vec<TapEvent>,
    unit_ms: Option<f64>,
    end_ms: u64,
}

impl Default for TapSession {
    fn default() -> Self {
        TapSession::empty()
    }
}

impl TapSession {
    pub fn empty() -> Self {
        TapSession {
            events: Vec::new(),
            unit_ms: None,
            end_ms: 0,
        }
    }

    pub fn new(onsets: &[u64], end_ms: u64) -> Result<Self> {
        let mut s = TapSession::empty();
        for &t in onsets {
            s.push(t)?;
        }
        s.finish(end_ms)?;
        Ok(s)
    }

    pub fn with_unit(mut self, unit_ms: f64) -> Result<Self> {
        self.set_unit(Some(unit_ms))?;
        Ok(self)
    }

    pub fn set_unit(&mut self, unit_ms: Option<f64>) -> Result<()> {
        if let Some(u) = unit_ms {
            if !(u.is_finite() && u > 0.0) {
                return Err(Error::InvalidSession(format!(
                    "unit must be positive, got {u}"
                )));
            }
        }
        self.unit_ms = unit_ms;
        Ok(())
    }

    /// Appends a tap. Onsets must be strictly increasing.
    pub fn push(&mut self, onset_ms: u64) -> Result<()> {
        if let Some(last) = self.events.last() {
            if onset_ms <= last.onset_ms {
                return Err(Error::InvalidSession(format!(
                    "onset {onset_ms} does not follow {}",
                    last.onset_ms
                )));
            }
        }
        self.events.push(TapEvent { onset_ms });
        self.end_ms = self.end_ms.max(onset_ms);
        Ok(())
    }

    /// Sets the session end, which must not precede the last tap.
    pub fn finish(&mut self, end_ms: u64) -> Result<()> {
        if let Some(last) = self.events.last() {
            if end_ms < last.onset_ms {
                return Err(Error::InvalidSession(format!(
                    "end {end_ms} precedes last onset {}",
                    last.onset_ms
                )));
            }
        }
        self.end_ms = end_ms;
        Ok(())
    }

    pub fn events(&self) -> &[TapEvent] {
        &self.events
    }

    pub fn unit_ms(&self) -> Option<f64> {
        self.unit_ms
    }

    pub fn end_ms(&self) -> u64 {
        self.end_ms
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    /// Places a tap at every `1` of `stream`, one slot per `unit_ms`.
    pub fn from_stream(stream: &BitStream, unit_ms: u64) -> Result<Self> {
        let onsets: Vec<u64> = stream
            .bits()
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| i as u64 * unit_ms)
            .collect();
        TapSession::new(&onsets, stream.len() as u64 * unit_ms)?.with_unit(unit_ms as f64)
    }

    /// Multiplies every timestamp (and the unit, if known) by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        let scale = |t: u64| (t as f64 * factor).round() as u64;
        let onsets: Vec<u64> = self.events.iter().map(|e| scale(e.onset_ms)).collect();
        let mut s = TapSession::new(&onsets, scale(self.end_ms))?;
        s.set_unit(self.unit_ms.map(|u| u * factor))?;
        Ok(s)
    }

    /// One onset per line, then `END <ms>`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for e in &self.events {
            out.push_str(&format!("{}\n", e.onset_ms));
        }
        out.push_str(&format!("END {}\n", self.end_ms));
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut session = TapSession::empty();
        let mut ended = false;
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let bad = || Error::InvalidSession(format!("line {}: `{line}`", lineno + 1));
            if ended {
                return Err(bad());
            }
            if let Some(rest) = line.strip_prefix("END") {
                session.finish(rest.trim().parse().map_err(|_| bad())?)?;
                ended = true;
            } else {
                session.push(line.parse().map_err(|_| bad())?)?;
            }
        }
        if !ended {
            return Err(Error::InvalidSession("missing END line".into()));
        }
        Ok(session)
    }
}

/// Consecutive sorted intervals further apart than this ratio start a new
/// cluster.
const CLUSTER_SPLIT_RATIO: f64 = 1.3;

/// Estimates the sixteenth duration as the mean of the smallest cluster of
/// inter-onset intervals.
pub fn estimate_unit(session: &TapSession) -> Result<f64> {
    if session.events.len() < 2 {
        return Err(Error::InsufficientEvents);
    }
    let mut intervals: Vec<u64> = session
        .events
        .windows(2)
        .map(|w| w[1].onset_ms - w[0].onset_ms)
        .collect();
    intervals.sort_unstable();
    let mut cluster_len = 1;
    while cluster_len < intervals.len()
        && intervals[cluster_len] as f64 <= intervals[cluster_len - 1] as f64 * CLUSTER_SPLIT_RATIO
    {
        cluster_len += 1;
    }
    let sum: u64 = intervals[..cluster_len].iter().sum();
    Ok(sum as f64 / cluster_len as f64)
}

fn unit_for(session: &TapSession) -> Result<f64> {
    match session.unit_ms {
        Some(u) => Ok(u),
        None => estimate_unit(session),
    }
}

/// Snaps onsets to the nearest grid slot. The stream runs up to the slot of the session
/// end (exclusive), and at least through the last tap.
pub fn quantize(session: &TapSession, unit_ms: f64) -> Result<BitStream> {
    if !(unit_ms.is_finite() && unit_ms > 0.0) {
        return Err(Error::InvalidOption(format!(
            "unit must be positive, got {unit_ms}"
        )));
    }
    // Ties go to the even slot, so a tap half a unit after another collides.
    let slot = |t: u64| (t as f64 / unit_ms).round_ties_even() as u64;
    let slots: Vec<u64> = session.events.iter().map(|e| slot(e.onset_ms)).collect();
    if let Some(w) = slots.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::Collision(w[0]));
    }
    let len = slots.last().map_or(0, |&s| s + 1).max(slot(session.end_ms)) as usize;
    let mut bits = vec![false; len];
    for s in slots {
        bits[s as usize] = true;
    }
    Ok(bits.into())
}

/// Gap thresholds for relaxed segmentation, as multiples of the unit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RelaxedRatios {
    /// Gaps below this join taps into one group.
    pub group_gap: f64,
    /// Gaps at or above this end the letter.
    pub letter_gap: f64,
}

impl Default for RelaxedRatios {
    fn default() -> Self {
        // Midway between the 1, 2 and 3 slot gaps of exact tapping.
        RelaxedRatios {
            group_gap: 1.5,
            letter_gap: 2.5,
        }
    }
}

impl RelaxedRatios {
    pub fn new(group_gap: f64, letter_gap: f64) -> Result<Self> {
        let r = RelaxedRatios {
            group_gap,
            letter_gap,
        };
        r.validate()?;
        Ok(r)
    }

    pub fn validate(&self) -> Result<()> {
        if 1.0 < self.group_gap && self.group_gap < self.letter_gap {
            Ok(())
        } else {
            Err(Error::InvalidOption(format!(
                "need 1 < group gap < letter gap, got {} and {}",
                self.group_gap, self.letter_gap
            )))
        }
    }

    /// Gaps at or above this also emit a space.
    pub fn word_gap(&self) -> f64 {
        2.0 * self.letter_gap
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RelaxedToken {
    Letter(GroupPattern),
    Space,
}

/// Relaxed segmentation including word boundaries. The silence between the
/// last tap and the session end counts like any other gap, so a session that
/// ends a word gap after its last tap ends with a space.
pub fn relaxed_tokens(session: &TapSession, ratios: RelaxedRatios) -> Result<Vec<RelaxedToken>> {
    ratios.validate()?;
    let unit = match session.events.len() {
        0 => return Err(Error::InsufficientEvents),
        1 => session.unit_ms,
        _ => Some(unit_for(session)?),
    };
    let mut tokens = Vec::new();
    let mut groups = Vec::new();
    let mut run = 1u32;
    for w in session.events.windows(2) {
        let gap = (w[1].onset_ms - w[0].onset_ms) as f64 / unit.expect("two or more taps");
        if gap < ratios.group_gap {
            run += 1;
            continue;
        }
        groups.push(run);
        run = 1;
        if gap >= ratios.letter_gap {
            tokens.push(RelaxedToken::Letter(GroupPattern::new(std::mem::take(
                &mut groups,
            ))?));
            if gap >= ratios.word_gap() {
                tokens.push(RelaxedToken::Space);
            }
        }
    }
    groups.push(run);
    tokens.push(RelaxedToken::Letter(GroupPattern::new(groups)?));
    if let (Some(unit), Some(last)) = (unit, session.events.last()) {
        if (session.end_ms - last.onset_ms) as f64 / unit >= ratios.word_gap() {
            tokens.push(RelaxedToken::Space);
        }
    }
    Ok(tokens)
}

/// Group patterns of the letters in `session`, ignoring word boundaries.
pub fn segment_relaxed(session: &TapSession, ratios: RelaxedRatios) -> Result<Vec<GroupPattern>> {
    Ok(relaxed_tokens(session, ratios)?
        .into_iter()
        .filter_map(|t| match t {
            RelaxedToken::Letter(g) => Some(g),
            RelaxedToken::Space => None,
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DecodeMode {
    Strict,
    #[default]
    Relaxed,
}

impl fmt::Display for DecodeMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DecodeMode::Strict => "strict",
            DecodeMode::Relaxed => "relaxed",
        })
    }
}

impl FromStr for DecodeMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "strict" => Ok(DecodeMode::Strict),
            "relaxed" => Ok(DecodeMode::Relaxed),
            other => Err(Error::InvalidOption(format!("unknown mode `{other}`"))),
        }
    }
}

pub fn decode_session(session: &TapSession, table: &TapTable, mode: DecodeMode) -> Result<String> {
    decode_session_with(session, table, mode, RelaxedRatios::default())
}

/// Decodes a session. An empty session decodes to the empty string.
///
/// Strict mode drops the silence before the first tap, since a listener
/// cannot hear leading word gaps.
pub fn decode_session_with(
    session: &TapSession,
    table: &TapTable,
    mode: DecodeMode,
    ratios: RelaxedRatios,
) -> Result<String> {
    if session.is_empty() {
        return Ok(String::new());
    }
    match mode {
        DecodeMode::Strict => {
            let stream = quantize(session, unit_for(session)?)?;
            let first = stream.bits().iter().position(|&b| b).unwrap_or(0);
            let trimmed = BitStream::from_bits(stream.bits()[first..].to_vec());
            codec::decode(&trimmed, table)
        }
        DecodeMode::Relaxed => tokens_to_text(&relaxed_tokens(session, ratios)?, table),
    }
}

/// Looks up each letter's group pattern in `table`.
pub fn tokens_to_text(tokens: &[RelaxedToken], table: &TapTable) -> Result<String> {
    let mut out = String::new();
    for token in tokens {
        match token {
            RelaxedToken::Space => out.push(' '),
            RelaxedToken::Letter(g) => {
                let sym = table
                    .symbol_for_payload(&from_groups(g))
                    .ok_or_else(|| Error::UnknownPattern(g.to_string()))?;
                out.push(sym);
            }
        }
    }
    Ok(out)
}
