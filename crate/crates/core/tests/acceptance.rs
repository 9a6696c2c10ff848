//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use tapcode::analysis::GERMAN_CORPUS;
use tapcode::code::{canonical_german_order, CANONICAL_LEN};
use tapcode::codec::normalize;
use tapcode::timing::decode_session_with;
use tapcode::{
    canonical_german_table, construct_table, decode, derive_from_morse, efficiency_report, encode,
    enumerate_payloads, ingest_corpus, speed_estimate, ternary_to_binary, to_groups, BitStream,
    DecodeMode, EncodeOptions, RelaxedRatios, Scheme, TapSession, TieBreak,
};

const WRITTEN_FORMS: [(char, &str); 32] = [
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

const GROUP_NOTATION: [(char, &str); 32] = [
    ('e', "1"),
    ('n', "2"),
    ('i', "1,1"),
    ('r', "3"),
    ('s', "2,1"),
    ('t', "1,2"),
    ('a', "4"),
    ('h', "1,1,1"),
    ('d', "3,1"),
    ('l', "2,2"),
    ('u', "1,3"),
    ('c', "2,1,1"),
    ('m', "1,2,1"),
    ('g', "1,1,2"),
    ('o', "5"),
    ('b', "4,1"),
    ('f', "3,2"),
    ('w', "2,3"),
    ('k', "1,4"),
    ('z', "6"),
    ('p', "1,1,1,1"),
    ('v', "1,2,2"),
    ('ä', "3,1,1"),
    ('ü', "1,3,1"),
    ('ß', "1,1,3"),
    ('ö', "1,1,1,2"),
    ('j', "2,2,1"),
    ('x', "1,1,2,1"),
    ('y', "1,2,1,1"),
    ('q', "2,1,2"),
    ('.', "1,5"),
    ('?', "3,1,2"),
];

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

/// Payload strings of length `n`, by brute force over all `2^n` strings.
fn brute_force_payloads(n: usize) -> Vec<String> {
    (0u32..1 << n)
        .map(|m| format!("{m:0n$b}"))
        .filter(|s| s.starts_with('1') && s.ends_with('1') && !s.contains("00"))
        .collect()
}

fn written_of(payload: &str) -> String {
    if payload.len() % 2 == 1 {
        format!("{payload}0")
    } else {
        payload.to_string()
    }
}

fn written_forms() -> Outcome {
    let start = Instant::now();
    let table = match construct_table(&canonical_german_order(), TieBreak::Canonical) {
        Ok(t) => t,
        Err(e) => return outcome(false, format!("construction failed: {e}")),
    };
    let elapsed = start.elapsed();
    let mismatches: Vec<String> = WRITTEN_FORMS
        .iter()
        .filter_map(|&(c, w)| {
            let got = table.get(c).map(|cw| cw.written().to_string());
            (got.as_deref() != Some(w)).then(|| format!("{c}: {got:?} != {w}"))
        })
        .collect();
    let pass =
        mismatches.is_empty() && table.len() == CANONICAL_LEN && elapsed < Duration::from_secs(1);
    outcome(
        pass,
        format!(
            "{}/32 exact, {} entries, {:.1} ms {}",
            32 - mismatches.len(),
            table.len(),
            elapsed.as_secs_f64() * 1e3,
            mismatches.join(" ")
        ),
    )
}

fn group_notation() -> Outcome {
    let table = canonical_german_table();
    let mismatches: Vec<String> = GROUP_NOTATION
        .iter()
        .filter_map(|&(c, g)| {
            let got = table.get(c).map(|cw| to_groups(cw.payload()).to_string());
            (got.as_deref() != Some(g)).then(|| format!("{c}: {got:?} != {g}"))
        })
        .collect();
    outcome(
        mismatches.is_empty(),
        format!(
            "{}/32 exact {}",
            32 - mismatches.len(),
            mismatches.join(" ")
        ),
    )
}

fn fibonacci() -> Outcome {
    let payloads = enumerate_payloads(20);
    let mut counts = [0u64; 21];
    for p in &payloads {
        counts[p.len()] += 1;
    }
    let first: Vec<u64> = counts[1..=8].to_vec();
    let listed = first == [1, 1, 2, 3, 5, 8, 13, 21];
    let recurrence = (3..=20).all(|n| counts[n] == counts[n - 1] + counts[n - 2]);
    let mut oracle_ok = true;
    for n in 1..=20 {
        let expected: BTreeSet<String> = brute_force_payloads(n).into_iter().collect();
        let got: BTreeSet<String> = payloads
            .iter()
            .filter(|p| p.len() == n)
            .map(|p| p.to_string())
            .collect();
        oracle_ok &= expected == got;
    }
    outcome(
        listed && recurrence && oracle_ok,
        format!("n=1..8 {first:?}, recurrence to 20: {recurrence}, brute force to 20: {oracle_ok}"),
    )
}

fn morse_derivation() -> Outcome {
    let derived = derive_from_morse(8);
    let kept: BTreeSet<String> = derived
        .written_forms()
        .iter()
        .map(|b| b.to_string())
        .collect();
    let table = canonical_german_table();
    let mut details = Vec::new();
    let mut pass = true;
    for len in [2usize, 4, 6, 8] {
        let expected: BTreeSet<String> = (len - 1..=len)
            .flat_map(brute_force_payloads)
            .map(|p| written_of(&p))
            .filter(|w| w.len() == len)
            .collect();
        let got: BTreeSet<String> = kept.iter().filter(|w| w.len() == len).cloned().collect();
        let equal = expected == got;
        pass &= equal;
        details.push(format!("len {len}: {}={}", got.len(), expected.len()));
        if len <= 6 {
            let in_table: BTreeSet<String> = table
                .entries()
                .iter()
                .map(|(_, cw)| cw.written().to_string())
                .filter(|w| w.len() == len)
                .collect();
            pass &= in_table == got;
        }
    }
    let find = |morse: &str| {
        derived
            .classes
            .iter()
            .find(|c| tapcode::code::format_morse(&c.kept.0) == morse)
            .map(|c| c.kept.1.to_string())
    };
    let dah3 = find("---");
    let dah_dit2 = find("-..");
    pass &= dah3.as_deref() == Some("101010") && dah_dit2.as_deref() == Some("1011");
    outcome(
        pass,
        format!(
            "{}, --- kept as {dah3:?}, -.. kept as {dah_dit2:?}",
            details.join(", ")
        ),
    )
}

fn random_text(rng: &mut StdRng, symbols: &[char], with_digits: bool) -> String {
    let len = rng.gen_range(1..40);
    let mut s = String::new();
    let mut last_space = true;
    for _ in 0..len {
        let r = rng.gen_range(0..100);
        if r < 15 && !last_space {
            s.push(' ');
            last_space = true;
        } else if with_digits && r < 25 {
            s.push(char::from(b'0' + rng.gen_range(0..10u8)));
            last_space = false;
        } else {
            s.push(symbols[rng.gen_range(0..symbols.len())]);
            last_space = false;
        }
    }
    s
}

fn round_trip() -> Outcome {
    let table = canonical_german_table();
    let symbols: Vec<char> = table.symbols().collect();
    let mut rng = StdRng::seed_from_u64(0x7a9c0de);
    let mut failures = Vec::new();
    for i in 0..1000 {
        let digit_mode = i % 2 == 1;
        let text = random_text(&mut rng, &symbols, digit_mode);
        let opts = EncodeOptions::default().with_digit_mode(digit_mode);
        let expected = normalize(&text, digit_mode);
        let got = encode(&text, &table, &opts).and_then(|s| decode(&s, &table));
        if got.as_deref() != Ok(expected.as_str()) {
            failures.push(format!("{text:?} -> {got:?}"));
        }
    }
    outcome(
        failures.is_empty(),
        format!(
            "{}/1000 exact (digit mode on and off) {}",
            1000 - failures.len(),
            failures.first().cloned().unwrap_or_default()
        ),
    )
}

fn efficiency() -> Outcome {
    let start = Instant::now();
    let report = match ingest_corpus(GERMAN_CORPUS).and_then(|f| efficiency_report(&f)) {
        Ok(r) => r,
        Err(e) => return outcome(false, format!("analysis failed: {e}")),
    };
    let elapsed = start.elapsed();
    let huffman = report.get(Scheme::Huffman);
    let fixed = report.get(Scheme::FixedWidth);
    let tap = report.get(Scheme::Tap);
    let poly_opt = report.get(Scheme::PolybiusOptimized);
    let poly_orig = report.get(Scheme::PolybiusOriginal);
    let morse = report.get(Scheme::MorseBinary);
    let checks = [
        ("huffman", huffman, 4.2, 0.4),
        ("fixed", fixed, 5.0, 0.0),
        ("tap", tap, 6.0, 0.5),
        ("morse_binary", morse, 8.26, 1.0),
        ("morse_ternary", report.morse_ternary, 4.13, 0.5),
        ("polybius_original", poly_orig, 7.7, 1.0),
        ("polybius_optimized", poly_opt, 6.5, 0.8),
    ];
    let mut pass = true;
    let mut parts = Vec::new();
    for (name, got, want, tol) in checks {
        let ok = (got - want).abs() <= tol + 1e-12;
        pass &= ok;
        let mark = if ok { "ok" } else { "OUT" };
        parts.push(format!("{name} {got:.3} [{want}±{tol} {mark}]"));
    }
    let ordered = huffman < fixed
        && fixed < tap
        && tap < poly_opt
        && poly_opt <= poly_orig
        && poly_orig < morse;
    pass &= ordered && elapsed < Duration::from_secs(5);
    parts.push(format!("ordering {ordered}"));
    parts.push(format!("{:.0} ms", elapsed.as_secs_f64() * 1e3));
    outcome(pass, parts.join(", "))
}

fn ternary_conversion() -> Outcome {
    let bits = ternary_to_binary(4.13);
    outcome(
        (bits - 6.55).abs() <= 0.01,
        format!("4.13 trits = {bits:.4} bits"),
    )
}

fn speed() -> Outcome {
    match speed_estimate(6.0, 1.0 / 6.0) {
        Ok(s) => outcome(
            (s.chars_per_second - 1.0).abs() < 1e-9 && (s.words_per_minute - 10.0).abs() < 1e-9,
            format!("{} cps, {} wpm", s.chars_per_second, s.words_per_minute),
        ),
        Err(e) => outcome(false, e.to_string()),
    }
}

fn timing() -> Outcome {
    let table = canonical_german_table();
    let ratios = RelaxedRatios::default();
    let mut failures = Vec::new();
    let mut check = |label: String, session: &TapSession, want: &str, mode: DecodeMode| {
        let got = decode_session_with(session, &table, mode, ratios);
        if got.as_deref() != Ok(want) {
            failures.push(format!("{label} {mode}: {got:?}"));
        }
    };
    let mut cases: Vec<String> = table.symbols().map(String::from).collect();
    cases.extend(["ende".to_string(), "tap code".to_string()]);
    for text in &cases {
        let stream: BitStream = encode(text, &table, &EncodeOptions::default()).unwrap();
        let session = TapSession::from_stream(&stream, 160).unwrap();
        check(text.clone(), &session, text, DecodeMode::Strict);
        check(text.clone(), &session, text, DecodeMode::Relaxed);
        for factor in [0.5, 2.0] {
            let scaled = session.scaled(factor).unwrap();
            check(
                format!("{text} x{factor}"),
                &scaled,
                text,
                DecodeMode::Relaxed,
            );
        }
    }
    outcome(
        failures.is_empty(),
        format!(
            "{} sessions x (strict, relaxed, relaxed x0.5, relaxed x2), {} failures {}",
            cases.len(),
            failures.len(),
            failures.join(" ")
        ),
    )
}

fn max_run() -> Outcome {
    let table = canonical_german_table();
    let (sym, run) = table
        .entries()
        .iter()
        .map(|(c, cw)| {
            let s = cw.payload().to_string();
            (*c, s.split('0').map(str::len).max().unwrap_or(0))
        })
        .max_by_key(|&(_, r)| r)
        .unwrap();
    outcome(
        run <= 6 && sym == 'z',
        format!("longest run {run} at {sym}"),
    )
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("canonical written forms", written_forms),
        ("canonical group notation", group_notation),
        ("fibonacci counts", fibonacci),
        ("morse derivation", morse_derivation),
        ("round trip", round_trip),
        ("efficiency figures", efficiency),
        ("ternary to binary", ternary_conversion),
        ("speed estimate", speed),
        ("timing strict and relaxed", timing),
        ("max run", max_run),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let o = run();
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!("{tag} {name}: {}", o.detail.trim_end());
        failed += usize::from(!o.pass);
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
