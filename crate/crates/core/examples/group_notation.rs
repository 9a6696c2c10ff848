//! Converts between bits and run-length groups.

use tapcode::{canonical_german_table, from_groups, to_groups, GroupPattern, Payload};

fn main() {
    let table = canonical_german_table();
    for g in ["1", "3,1", "1,2,1", "2,2,1", "1,5"] {
        let pattern: GroupPattern = g.parse().unwrap();
        let payload = from_groups(&pattern);
        let sym = table.symbol_for_payload(&payload).unwrap_or('-');
        println!("{g:<6} -> {:<9} {sym}", payload.written().to_string());
    }
    let p: Payload = "1101101".parse().unwrap();
    println!("{p} -> {}", to_groups(&p));
}
