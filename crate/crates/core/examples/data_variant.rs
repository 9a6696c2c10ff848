//! The unpadded variant for machine data, where a lone `0` is a codeword.

use tapcode::construct_data_variant;

fn main() {
    for (i, cw) in construct_data_variant(16).iter().enumerate() {
        println!("{i:>2} {cw}");
    }
}
