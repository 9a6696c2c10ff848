//! A true binary code for channels that carry only a tap or silence.
//!
//! Letters are *payloads* of taps (`1`) and single silent slots (`0`); a
//! double silence ends the letter, and an extra pad slot keeps every letter
//! on an even (eighth-note) boundary. The crate covers
//!
//! - [`code`]: payload enumeration, table construction, the canonical German
//!   table, group (run-length) notation and the Morse-collision derivation;
//! - [`codec`]: framing text into slot streams and decoding them;
//! - [`timing`]: turning tap timestamps into text, on a strict grid or by
//!   counting taps;
//! - [`schemes`] and [`analysis`]: the cost models of Huffman, fixed width,
//!   Morse and Polybius codes, and corpus-weighted comparisons;
//! - [`serve`]: a line protocol for live tapping clients;
//! - [`cli`]: the `tapcode` command.
//!
//! ```
//! use tapcode::{canonical_german_table, decode, encode, EncodeOptions};
//!
//! let table = canonical_german_table();
//! let stream = encode("ende", &table, &EncodeOptions::default()).unwrap();
//! assert_eq!(stream.grouped(" "), "10 00 11 00 11 10 10 00 10 00");
//! assert_eq!(decode(&stream, &table).unwrap(), "ende");
//! ```

pub mod analysis;
pub mod bits;
pub mod cli;
pub mod code;
pub mod codec;
pub mod error;
pub mod schemes;
pub mod serve;
pub mod timing;

pub use analysis::{
    efficiency_report, ingest_corpus, speed_estimate, ternary_to_binary, EfficiencyReport,
    FrequencyTable, Scheme, Speed,
};
pub use bits::BitStream;
pub use code::{
    canonical_german_table, construct_data_variant, construct_table, derive_from_morse,
    enumerate_payloads, from_groups, to_groups, CodeWord, GroupPattern, MorseElement, Payload,
    TapTable, TieBreak,
};
pub use codec::{decode, encode, EncodeOptions};
pub use error::{Error, Result};
pub use timing::{
    decode_session, estimate_unit, quantize, segment_relaxed, DecodeMode, RelaxedRatios, TapEvent,
    TapSession,
};
