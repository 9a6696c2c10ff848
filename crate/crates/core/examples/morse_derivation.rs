//! Knocks every Morse sequence of up to six elements and shows which
//! renderings collide. The kept ones are exactly the tap code's written forms.

use tapcode::code::format_morse;
use tapcode::derive_from_morse;

fn main() {
    let d = derive_from_morse(6);
    for class in d.classes.iter().filter(|c| c.kept.1.len() <= 6) {
        let dropped: Vec<String> = class
            .dropped
            .iter()
            .map(|(seq, r)| format!("{} as {}", format_morse(seq), r))
            .collect();
        println!(
            "{:<7} {:<7} drops {}",
            class.kept.1.to_string(),
            format_morse(&class.kept.0),
            dropped.join(", ")
        );
    }
}
