//! Turns timestamps into text, once on the grid and once by counting taps.

use tapcode::timing::segment_relaxed;
use tapcode::{
    canonical_german_table, decode_session, encode, estimate_unit, quantize, DecodeMode,
    EncodeOptions, RelaxedRatios, TapSession,
};

fn main() {
    let table = canonical_german_table();

    // "ende" on a 150 ms grid, then the same taps with a sloppy hand
    let stream = encode("ende", &table, &EncodeOptions::default()).unwrap();
    let exact = TapSession::from_stream(&stream, 150).unwrap();
    let onsets: Vec<u64> = exact.events().iter().map(|e| e.onset_ms).collect();
    let wobble = [0i64, 6, -5, 8, -7, 3, -4, 7];
    let sloppy: Vec<u64> = onsets
        .iter()
        .zip(wobble.iter().cycle())
        .map(|(&t, &w)| (t as i64 + 40 + w) as u64)
        .collect();
    let session = TapSession::new(&sloppy, exact.end_ms() + 40).unwrap();

    let unit = estimate_unit(&session).unwrap();
    println!("onsets  {sloppy:?}");
    println!("unit    {unit:.1} ms");
    println!("grid    {}", quantize(&session, unit).unwrap().grouped(" "));
    let groups: Vec<String> = segment_relaxed(&session, RelaxedRatios::default())
        .unwrap()
        .iter()
        .map(|g| g.to_string())
        .collect();
    println!("groups  {}", groups.join(" | "));
    for mode in [DecodeMode::Strict, DecodeMode::Relaxed] {
        match decode_session(&session, &table, mode) {
            Ok(text) => println!("{mode:<7} {text}"),
            Err(e) => println!("{mode:<7} error: {}", e.name()),
        }
    }
}
