//! Prints the canonical German table with group notation and tap cost.

use tapcode::canonical_german_table;
use tapcode::schemes::tap_cost;

fn main() {
    let table = canonical_german_table();
    println!("sym  written   groups    slots");
    for (sym, cw) in table.entries() {
        println!(
            "{sym:<4} {:<9} {:<9} {}",
            cw.written().to_string(),
            cw.groups().to_string(),
            tap_cost(&table, *sym).unwrap()
        );
    }
}
