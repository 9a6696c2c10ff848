//! Average cost per character of each scheme on the bundled corpora, or on a
//! text file given as the first argument.

use tapcode::analysis::{ENGLISH_CORPUS, GERMAN_CORPUS};
use tapcode::{efficiency_report, ingest_corpus, speed_estimate, Scheme};

fn main() {
    let corpora: Vec<(String, String)> = match std::env::args().nth(1) {
        Some(path) => vec![(
            path.clone(),
            std::fs::read_to_string(&path).expect("readable file"),
        )],
        None => vec![
            ("german".into(), GERMAN_CORPUS.into()),
            ("english".into(), ENGLISH_CORPUS.into()),
        ],
    };
    for (name, text) in corpora {
        let freqs = ingest_corpus(&text).unwrap();
        let report = efficiency_report(&freqs).unwrap();
        println!(
            "{name}: {} characters, entropy {:.3}",
            freqs.total(),
            freqs.entropy()
        );
        print!("{}", report.to_tsv());
        let tap = report.get(Scheme::Tap);
        let speed = speed_estimate(tap, 0.125).unwrap();
        println!(
            "at 120 bpm sixteenths: {:.2} chars/s, {:.1} wpm\n",
            speed.chars_per_second, speed.words_per_minute
        );
    }
}
