//! Encodes a phrase, shows the slot stream and decodes it again.
//!
//! ```text
//! cargo run --example encode_decode -- "treffen um 8"
//! ```

use tapcode::codec::normalize;
use tapcode::{canonical_german_table, decode, encode, EncodeOptions};

fn main() {
    let text = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "treffen um 8".to_string());
    let table = canonical_german_table();
    let opts = EncodeOptions::default().with_digit_mode(true);

    let stream = match encode(&text, &table, &opts) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("{}: {e}", e.name());
            std::process::exit(1);
        }
    };
    println!("sent:    {}", normalize(&text, true));
    println!(
        "slots:   {} ({} sixteenths)",
        stream.grouped(" "),
        stream.len()
    );
    println!("decoded: {}", decode(&stream, &table).unwrap());
}
