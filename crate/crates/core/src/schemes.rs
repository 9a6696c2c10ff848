//! Cost models of the codes the tap code is compared against.
//!
//! All binary costs are in sixteenth slots (bits) per character, including
//! whatever silence separates one character from the next. Neither Morse nor
//! the Polybius square has umlauts or `ß`, so those are sent as digraphs
//! (`ä` as `ae`, `ß` as `ss`, ...).

use std::cmp::{Ordering, Reverse};
use std::collections::{BTreeMap, BinaryHeap, HashMap};

use crate::analysis::FrequencyTable;
use crate::code::{MorseElement, TapTable};
use crate::codec::DEFAULT_WORD_GAP_ZEROS;
use crate::error::{Error, Result};

/// Digraph used for characters that Morse and Polybius lack.
pub fn digraph(c: char) -> Option<[char; 2]> {
    match c {
        'ä' => Some(['a', 'e']),
        'ö' => Some(['o', 'e']),
        'ü' => Some(['u', 'e']),
        'ß' => Some(['s', 's']),
        _ => None,
    }
}

fn expand(c: char) -> Vec<char> {
    digraph(c).map_or_else(|| vec![c], |d| d.to_vec())
}

// Standard 1/3 timing.
const DIT_SLOTS: u32 = 1;
const DAH_SLOTS: u32 = 3;
const ELEMENT_GAP_SLOTS: u32 = 1;
const LETTER_GAP_SLOTS: u32 = 3;
const WORD_GAP_SLOTS: u32 = 7;

/// International Morse for `a`-`z`.
#[derive(Debug, Clone)]
pub struct MorseTable {
    codes: HashMap<char, Vec<MorseElement>>,
}

impl MorseTable {
    pub fn international() -> Self {
        const CODES: [(char, &str); 26] = [
            ('a', ".-"),
            ('b', "-..."),
            ('c', "-.-."),
            ('d', "-.."),
            ('e', "."),
            ('f', "..-."),
            ('g', "--."),
            ('h', "...."),
            ('i', ".."),
            ('j', ".---"),
            ('k', "-.-"),
            ('l', ".-.."),
            ('m', "--"),
            ('n', "-."),
            ('o', "---"),
            ('p', ".--."),
            ('q', "--.-"),
            ('r', ".-."),
            ('s', "..."),
            ('t', "-"),
            ('u', "..-"),
            ('v', "...-"),
            ('w', ".--"),
            ('x', "-..-"),
            ('y', "-.--"),
            ('z', "--.."),
        ];
        let codes = CODES
            .iter()
            .map(|&(c, s)| {
                let els = s
                    .chars()
                    .map(|e| {
                        if e == '.' {
                            MorseElement::Dit
                        } else {
                            MorseElement::Dah
                        }
                    })
                    .collect();
                (c, els)
            })
            .collect();
        MorseTable { codes }
    }

    pub fn elements(&self, c: char) -> Option<&[MorseElement]> {
        self.codes.get(&c).map(Vec::as_slice)
    }

    /// Elements of every letter `c` is sent as (one, or two for a digraph).
    fn letters(&self, c: char) -> Result<Vec<&[MorseElement]>> {
        expand(c)
            .into_iter()
            .map(|l| self.elements(l).ok_or(Error::UnknownSymbol(c)))
            .collect()
    }

    /// Slots on the binary timeline: dit 1, dah 3, 1 between elements and 3
    /// after the letter. A space widens the preceding letter gap to the 7 slot
    /// word gap.
    pub fn binary_cost(&self, c: char) -> Result<u32> {
        if c == ' ' {
            return Ok(WORD_GAP_SLOTS - LETTER_GAP_SLOTS);
        }
        Ok(self
            .letters(c)?
            .into_iter()
            .map(|els| {
                let on: u32 = els
                    .iter()
                    .map(|e| match e {
                        MorseElement::Dit => DIT_SLOTS,
                        MorseElement::Dah => DAH_SLOTS,
                    })
                    .sum();
                on + ELEMENT_GAP_SLOTS * (els.len() as u32 - 1) + LETTER_GAP_SLOTS
            })
            .sum())
    }

    /// Symbols over the alphabet {dit, dah, pause}: the elements plus one
    /// pause closing the letter. A space is one more pause.
    pub fn ternary_cost(&self, c: char) -> Result<u32> {
        if c == ' ' {
            return Ok(1);
        }
        Ok(self
            .letters(c)?
            .into_iter()
            .map(|els| els.len() as u32 + 1)
            .sum())
    }
}

pub fn morse_binary_cost(symbol: char) -> Result<u32> {
    MorseTable::international().binary_cost(symbol)
}

pub fn morse_ternary_cost(symbol: char) -> Result<u32> {
    MorseTable::international().ternary_cost(symbol)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolybiusLayout {
    Original,
    Optimized,
}

/// Letters of the classic square; `j` shares the cell of `i`.
const SQUARE_LETTERS: &str = "abcdefghiklmnopqrstuvwxyz";

/// Silent slots closing a Polybius letter.
const POLYBIUS_LETTER_GAP: u32 = 2;

/// A letter is tapped as `row` taps, a pause, `col` taps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolybiusSquare {
    cells: BTreeMap<char, (u32, u32)>,
    layout: PolybiusLayout,
}

impl PolybiusSquare {
    /// The classic 5×5 square filled alphabetically.
    pub fn original() -> Self {
        let cells = SQUARE_LETTERS
            .chars()
            .enumerate()
            .map(|(i, c)| (c, (i as u32 / 5 + 1, i as u32 % 5 + 1)))
            .collect();
        PolybiusSquare {
            cells,
            layout: PolybiusLayout::Original,
        }
    }

    pub fn layout(&self) -> PolybiusLayout {
        self.layout
    }

    pub fn cell(&self, letter: char) -> Option<(u32, u32)> {
        let letter = if letter == 'j' { 'i' } else { letter };
        self.cells.get(&letter).copied()
    }

    pub fn cells(&self) -> &BTreeMap<char, (u32, u32)> {
        &self.cells
    }

    /// Largest row or column index in use.
    pub fn extent(&self) -> u32 {
        self.cells
            .values()
            .map(|&(r, c)| r.max(c))
            .max()
            .unwrap_or(0)
    }

    /// `row + 1 + col + 2` slots per letter; a space adds another letter gap.
    pub fn cost(&self, c: char) -> Result<u32> {
        if c == ' ' {
            return Ok(POLYBIUS_LETTER_GAP);
        }
        expand(c)
            .into_iter()
            .map(|l| {
                let (r, col) = self.cell(l).ok_or(Error::UnknownSymbol(c))?;
                Ok(cell_cost(r, col))
            })
            .sum()
    }
}

fn cell_cost(row: u32, col: u32) -> u32 {
    row + 1 + col + POLYBIUS_LETTER_GAP
}

pub fn polybius_cost(square: &PolybiusSquare, symbol: char) -> Result<u32> {
    square.cost(symbol)
}

/// Fills anti-diagonals (constant `row + col`, hence constant cost) with the
/// square's letters, most frequent first. Umlauts count towards their
/// digraph letters and `j` towards `i`, as in the classic square. Equal
/// frequencies keep alphabetical order.
pub fn build_optimized_polybius(freqs: &FrequencyTable) -> PolybiusSquare {
    let mut weight: BTreeMap<char, f64> = SQUARE_LETTERS.chars().map(|c| (c, 0.0)).collect();
    for (sym, p) in freqs.probabilities() {
        for l in expand(sym) {
            let l = if l == 'j' { 'i' } else { l };
            if let Some(w) = weight.get_mut(&l) {
                *w += p;
            }
        }
    }
    let mut letters: Vec<(char, f64)> = weight.into_iter().collect();
    letters.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
    let cells = letters
        .into_iter()
        .zip(diagonal_cells())
        .map(|((c, _), cell)| (c, cell))
        .collect();
    PolybiusSquare {
        cells,
        layout: PolybiusLayout::Optimized,
    }
}

/// (1,1), (1,2), (2,1), (1,3), (2,2), (3,1), ...
fn diagonal_cells() -> impl Iterator<Item = (u32, u32)> {
    (2u32..).flat_map(|sum| (1..sum).map(move |row| (row, sum - row)))
}

/// Bits needed for a fixed-width code over `alphabet_size` symbols.
pub fn fixed_width_cost(alphabet_size: usize) -> u32 {
    let n = alphabet_size.max(2);
    usize::BITS - (n - 1).leading_zeros()
}

/// Framed codeword length; a space costs the default word gap.
pub fn tap_cost(table: &TapTable, symbol: char) -> Result<u32> {
    if symbol == ' ' {
        return Ok(DEFAULT_WORD_GAP_ZEROS as u32);
    }
    table
        .get(symbol)
        .map(|cw| cw.framed().len() as u32)
        .ok_or(Error::UnknownSymbol(symbol))
}

/// Per-symbol costs of one scheme.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct CodeLengthTable {
    costs: BTreeMap<char, SymbolCost>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SymbolCost {
    pub bits: u32,
    pub ternary: Option<u32>,
}

impl CodeLengthTable {
    pub fn insert(&mut self, symbol: char, bits: u32, ternary: Option<u32>) {
        self.costs.insert(symbol, SymbolCost { bits, ternary });
    }

    pub fn get(&self, symbol: char) -> Option<SymbolCost> {
        self.costs.get(&symbol).copied()
    }

    pub fn bits(&self, symbol: char) -> Option<u32> {
        self.get(symbol).map(|c| c.bits)
    }

    pub fn len(&self) -> usize {
        self.costs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.costs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (char, SymbolCost)> + '_ {
        self.costs.iter().map(|(&c, &s)| (c, s))
    }

    /// Σ 2^-len over all symbols.
    pub fn kraft_sum(&self) -> f64 {
        self.costs
            .values()
            .map(|c| 0.5f64.powi(c.bits as i32))
            .sum()
    }

    /// Probability-weighted mean bits over the symbols of `freqs`.
    pub fn weighted_bits(&self, freqs: &FrequencyTable) -> Result<f64> {
        weighted(freqs, |c| {
            self.bits(c).map(f64::from).ok_or(Error::UnknownSymbol(c))
        })
    }

    /// `symbol<TAB>cost_bits[<TAB>cost_ternary]` lines, with space spelled
    /// `space`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (c, cost) in self.iter() {
            let sym = if c == ' ' {
                "space".to_string()
            } else {
                c.to_string()
            };
            match cost.ternary {
                Some(t) => out.push_str(&format!("{sym}\t{}\t{t}\n", cost.bits)),
                None => out.push_str(&format!("{sym}\t{}\n", cost.bits)),
            }
        }
        out
    }

    /// Builds a table from a cost function over the given symbols.
    pub fn from_fn(
        symbols: impl IntoIterator<Item = char>,
        mut bits: impl FnMut(char) -> Result<u32>,
    ) -> Result<Self> {
        let mut t = CodeLengthTable::default();
        for c in symbols {
            t.insert(c, bits(c)?, None);
        }
        Ok(t)
    }
}

/// Σ p(c)·cost(c) over symbols with non-zero probability.
pub fn weighted(freqs: &FrequencyTable, mut cost: impl FnMut(char) -> Result<f64>) -> Result<f64> {
    let mut total = 0.0;
    for (c, p) in freqs.probabilities() {
        if p > 0.0 {
            total += p * cost(c)?;
        }
    }
    Ok(total)
}

pub fn morse_table_costs(symbols: impl IntoIterator<Item = char>) -> Result<CodeLengthTable> {
    let morse = MorseTable::international();
    let mut t = CodeLengthTable::default();
    for c in symbols {
        t.insert(c, morse.binary_cost(c)?, Some(morse.ternary_cost(c)?));
    }
    Ok(t)
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct HeapNode {
    weight: f64,
    id: usize,
}

impl Eq for HeapNode {}

impl Ord for HeapNode {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight
            .total_cmp(&other.weight)
            .then(self.id.cmp(&other.id))
    }
}

impl PartialOrd for HeapNode {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Binary Huffman code lengths over the symbols with non-zero probability.
/// Among equal weights the earliest created node is merged first.
pub fn huffman_lengths(freqs: &FrequencyTable) -> Result<CodeLengthTable> {
    let symbols: Vec<(char, f64)> = freqs.probabilities().filter(|&(_, p)| p > 0.0).collect();
    if symbols.len() < 2 {
        return Err(Error::DegenerateAlphabet);
    }
    // members[id] lists the leaves under node id
    let mut members: Vec<Vec<usize>> = (0..symbols.len()).map(|i| vec![i]).collect();
    let mut depth = vec![0u32; symbols.len()];
    let mut heap: BinaryHeap<Reverse<HeapNode>> = symbols
        .iter()
        .enumerate()
        .map(|(id, &(_, weight))| Reverse(HeapNode { weight, id }))
        .collect();
    while heap.len() > 1 {
        let Reverse(a) = heap.pop().expect("two nodes");
        let Reverse(b) = heap.pop().expect("two nodes");
        let mut merged = std::mem::take(&mut members[a.id]);
        merged.append(&mut std::mem::take(&mut members[b.id]));
        for &leaf in &merged {
            depth[leaf] += 1;
        }
        let id = members.len();
        members.push(merged);
        heap.push(Reverse(HeapNode {
            weight: a.weight + b.weight,
            id,
        }));
    }
    let mut t = CodeLengthTable::default();
    for (i, &(c, _)) in symbols.iter().enumerate() {
        t.insert(c, depth[i], None);
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::canonical_german_table;

    #[test]
    fn morse_binary_examples() {
        assert_eq!(morse_binary_cost('e').unwrap(), 4);
        assert_eq!(morse_binary_cost('s').unwrap(), 8);
        assert_eq!(morse_binary_cost('o').unwrap(), 14);
        // ä is sent as "ae"
        assert_eq!(morse_binary_cost('ä').unwrap(), 8 + 4);
        assert_eq!(morse_binary_cost(' ').unwrap(), 4);
        assert_eq!(morse_binary_cost('#'), Err(Error::UnknownSymbol('#')));
    }

    #[test]
    fn morse_ternary_examples() {
        assert_eq!(morse_ternary_cost('e').unwrap(), 2);
        assert_eq!(morse_ternary_cost('q').unwrap(), 5);
        assert_eq!(morse_ternary_cost('t').unwrap(), 2);
        assert_eq!(morse_ternary_cost('ß').unwrap(), 8);
        assert_eq!(morse_ternary_cost('.'), Err(Error::UnknownSymbol('.')));
    }

    #[test]
    fn polybius_cell_costs() {
        assert_eq!(cell_cost(1, 1), 5);
        assert_eq!(cell_cost(1, 5), 9);
        assert_eq!(cell_cost(5, 5), 13);
        let sq = PolybiusSquare::original();
        assert_eq!(polybius_cost(&sq, 'a').unwrap(), 5);
        assert_eq!(polybius_cost(&sq, 'e').unwrap(), 9);
        assert_eq!(polybius_cost(&sq, 'z').unwrap(), 13);
        assert_eq!(sq.cell('j'), sq.cell('i'));
        assert_eq!(polybius_cost(&sq, 'ü').unwrap(), 12 + 9);
        assert_eq!(polybius_cost(&sq, '?'), Err(Error::UnknownSymbol('?')));
    }

    #[test]
    fn diagonal_order() {
        let first: Vec<_> = diagonal_cells().take(6).collect();
        assert_eq!(first, [(1, 1), (1, 2), (2, 1), (1, 3), (2, 2), (3, 1)]);
    }

    #[test]
    fn optimized_places_by_frequency() {
        let f = FrequencyTable::from_text("eeeeennnnnnnnrrr").unwrap();
        let sq = build_optimized_polybius(&f);
        assert_eq!(sq.layout(), PolybiusLayout::Optimized);
        assert_eq!(sq.cell('n'), Some((1, 1)));
        assert_eq!(sq.cell('e'), Some((1, 2)));
        assert_eq!(sq.cell('r'), Some((2, 1)));
        // zero-frequency letters follow alphabetically
        assert_eq!(sq.cell('a'), Some((1, 3)));
        assert!(sq.extent() > 5);
    }

    #[test]
    fn fixed_width_examples() {
        assert_eq!(fixed_width_cost(31), 5);
        assert_eq!(fixed_width_cost(32), 5);
        assert_eq!(fixed_width_cost(2), 1);
        assert_eq!(fixed_width_cost(1), 1);
        assert_eq!(fixed_width_cost(33), 6);
    }

    #[test]
    fn tap_cost_examples() {
        let t = canonical_german_table();
        assert_eq!(tap_cost(&t, 'e').unwrap(), 4);
        assert_eq!(tap_cost(&t, 'z').unwrap(), 8);
        assert_eq!(tap_cost(&t, 'p').unwrap(), 10);
        assert_eq!(tap_cost(&t, ' ').unwrap(), 2);
        assert_eq!(tap_cost(&t, '!'), Err(Error::UnknownSymbol('!')));
    }

    #[test]
    fn huffman_examples() {
        let f = FrequencyTable::from_counts([('a', 2), ('b', 1), ('c', 1)]).unwrap();
        let h = huffman_lengths(&f).unwrap();
        assert_eq!(h.bits('a'), Some(1));
        assert_eq!(h.bits('b'), Some(2));
        assert_eq!(h.bits('c'), Some(2));
        assert!((h.weighted_bits(&f).unwrap() - 1.5).abs() < 1e-12);

        let f = FrequencyTable::from_counts([('a', 1), ('b', 1), ('c', 1), ('d', 1)]).unwrap();
        let h = huffman_lengths(&f).unwrap();
        assert!(h.iter().all(|(_, c)| c.bits == 2));
        assert!((h.kraft_sum() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn huffman_degenerate() {
        let f = FrequencyTable::from_counts([('a', 5)]).unwrap();
        assert_eq!(huffman_lengths(&f), Err(Error::DegenerateAlphabet));
    }

    #[test]
    fn cost_table_export() {
        let t = morse_table_costs(['e', ' ']).unwrap();
        assert_eq!(t.to_text(), "space\t4\t1\ne\t4\t2\n");
    }
}
