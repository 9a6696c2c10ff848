//! Counts payloads per length; the counts are Fibonacci numbers.

use tapcode::enumerate_payloads;

fn main() {
    let max = 12;
    let payloads = enumerate_payloads(max);
    for n in 1..=max {
        let of_len: Vec<String> = payloads
            .iter()
            .filter(|p| p.len() == n)
            .map(|p| p.to_string())
            .collect();
        let shown = if of_len.len() <= 8 {
            of_len.join(" ")
        } else {
            format!("{} ...", of_len[..4].join(" "))
        };
        println!("{n:>2} {:>4}  {shown}", of_len.len());
    }
}
