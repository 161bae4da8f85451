// SPDX-License-Identifier: Apache-2.0

//! Fredkin and Feynman gate semantics.
//!
//! Each gate is defined once by its boolean equations and once as a
//! tabulated permutation of its input space. Bit tuples are ordered
//! most-significant-first, so the tuple `(x1, x2, x3)` has table index
//! `x1·4 + x2·2 + x3`.

use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

/// A single logic value.
pub type Bit = bool;

/// The closed set of gates a netlist may contain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GateKind {
    /// 3×3 controlled swap.
    Fredkin,
    /// 2×2 controlled NOT.
    Feynman,
}

impl GateKind {
    pub const ALL: [GateKind; 2] = [GateKind::Fredkin, GateKind::Feynman];

    /// Number of inputs, which is also the number of outputs.
    pub fn arity(self) -> usize {
        match self {
            GateKind::Fredkin => 3,
            GateKind::Feynman => 2,
        }
    }

    /// Keyword used by the `.rnl` text format.
    pub fn keyword(self) -> &'static str {
        match self {
            GateKind::Fredkin => "fredkin",
            GateKind::Feynman => "feynman",
        }
    }

    pub fn from_keyword(word: &str) -> Option<GateKind> {
        match word {
            "fredkin" => Some(GateKind::Fredkin),
            "feynman" => Some(GateKind::Feynman),
            _ => None,
        }
    }

    /// Cached permutation table for this gate.
    pub fn table(self) -> &'static PermutationTable {
        static FREDKIN: OnceLock<PermutationTable> = OnceLock::new();
        static FEYNMAN: OnceLock<PermutationTable> = OnceLock::new();
        match self {
            GateKind::Fredkin => FREDKIN.get_or_init(|| permutation_of(GateKind::Fredkin)),
            GateKind::Feynman => FEYNMAN.get_or_init(|| permutation_of(GateKind::Feynman)),
        }
    }

    /// Evaluate the gate through its equations.
    ///
    /// `inputs` and `outputs` must both have length `self.arity()`.
    pub fn apply(self, inputs: &[Bit], outputs: &mut [Bit]) {
        match self {
            GateKind::Fredkin => {
                let (a, b, c) = apply_fredkin(inputs[0], inputs[1], inputs[2]);
                outputs[0] = a;
                outputs[1] = b;
                outputs[2] = c;
            }
            GateKind::Feynman => {
                let (a, b) = apply_feynman(inputs[0], inputs[1]);
                outputs[0] = a;
                outputs[1] = b;
            }
        }
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

/// Fredkin gate: `x1` passes through and, when set, swaps `x2` and `x3`.
pub fn apply_fredkin(x1: Bit, x2: Bit, x3: Bit) -> (Bit, Bit, Bit) {
    let y1 = x1;
    let y2 = (!x1 && x2) || (x1 && x3);
    let y3 = (x1 && x2) || (!x1 && x3);
    (y1, y2, y3)
}

/// Feynman gate: `x1` passes through, `x2` is XORed with it.
pub fn apply_feynman(x1: Bit, x2: Bit) -> (Bit, Bit) {
    (x1, x1 ^ x2)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GateError {
    #[error("table of arity {arity} needs {expected} entries, got {found}")]
    WrongLength {
        arity: usize,
        expected: usize,
        found: usize,
    },
    #[error("entry {index} maps to {value}, outside the {arity}-bit space")]
    OutOfRange {
        index: usize,
        value: u32,
        arity: usize,
    },
    #[error("arity {0} is too large to tabulate")]
    ArityTooLarge(usize),
    #[error("table is not a bijection")]
    NotBijective,
}

/// A total map from every `k`-bit input tuple to an output tuple.
///
/// `entries[i]` is the output tuple for input tuple `i`, both encoded
/// most-significant-first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermutationTable {
    arity: usize,
    entries: Vec<u32>,
}

impl PermutationTable {
    pub const MAX_ARITY: usize = 16;

    pub fn new(arity: usize, entries: Vec<u32>) -> Result<Self, GateError> {
        if arity > Self::MAX_ARITY {
            return Err(GateError::ArityTooLarge(arity));
        }
        let expected = 1usize << arity;
        if entries.len() != expected {
            return Err(GateError::WrongLength {
                arity,
                expected,
                found: entries.len(),
            });
        }
        if let Some((index, &value)) = entries
            .iter()
            .enumerate()
            .find(|(_, &v)| v as usize >= expected)
        {
            return Err(GateError::OutOfRange {
                index,
                value,
                arity,
            });
        }
        Ok(PermutationTable { arity, entries })
    }

    pub fn identity(arity: usize) -> Result<Self, GateError> {
        if arity > Self::MAX_ARITY {
            return Err(GateError::ArityTooLarge(arity));
        }
        Self::new(arity, (0..1u32 << arity).collect())
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Output tuple index for the given input tuple index.
    pub fn lookup(&self, input: u32) -> u32 {
        self.entries[input as usize]
    }

    /// Evaluate on bit slices of length `arity`.
    pub fn apply(&self, inputs: &[Bit], outputs: &mut [Bit]) {
        let out = self.lookup(pack_bits(inputs));
        unpack_bits_into(out, outputs);
    }
}

/// Encode a bit tuple most-significant-first.
pub fn pack_bits(bits: &[Bit]) -> u32 {
    bits.iter().fold(0, |acc, &b| (acc << 1) | b as u32)
}

/// Decode `value` into `out.len()` bits, most-significant-first.
pub fn unpack_bits_into(value: u32, out: &mut [Bit]) {
    let k = out.len();
    for (i, slot) in out.iter_mut().enumerate() {
        *slot = (value >> (k - 1 - i)) & 1 == 1;
    }
}

pub fn unpack_bits(value: u32, arity: usize) -> Vec<Bit> {
    let mut out = vec![false; arity];
    unpack_bits_into(value, &mut out);
    out
}

/// Tabulate a gate's equations over its whole input space.
pub fn permutation_of(kind: GateKind) -> PermutationTable {
    let arity = kind.arity();
    let mut outputs = vec![false; arity];
    let entries = (0..1u32 << arity)
        .map(|index| {
            let inputs = unpack_bits(index, arity);
            kind.apply(&inputs, &mut outputs);
            pack_bits(&outputs)
        })
        .collect();
    PermutationTable { arity, entries }
}

/// True iff no two inputs share an output.
pub fn is_bijective(table: &PermutationTable) -> bool {
    let mut seen = vec![false; table.len()];
    for &out in table.entries() {
        let slot = &mut seen[out as usize];
        if *slot {
            return false;
        }
        *slot = true;
    }
    true
}

/// True iff every entry preserves the number of set bits.
pub fn is_conservative(table: &PermutationTable) -> bool {
    table
        .entries()
        .iter()
        .enumerate()
        .all(|(input, &out)| (input as u32).count_ones() == out.count_ones())
}

/// True iff the table composed with itself is the identity.
pub fn is_self_inverse(table: &PermutationTable) -> Result<bool, GateError> {
    if !is_bijective(table) {
        return Err(GateError::NotBijective);
    }
    Ok(table
        .entries()
        .iter()
        .enumerate()
        .all(|(input, &out)| table.lookup(out) as usize == input))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fredkin_equations_exhaustive() {
        for index in 0..8u32 {
            let x = unpack_bits(index, 3);
            let (y1, y2, y3) = apply_fredkin(x[0], x[1], x[2]);
            // control set swaps the data lines
            let (e2, e3) = if x[0] { (x[2], x[1]) } else { (x[1], x[2]) };
            assert_eq!((y1, y2, y3), (x[0], e2, e3), "input {index:03b}");
        }
    }

    #[test]
    fn fredkin_examples() {
        for b in [false, true] {
            for c in [false, true] {
                assert_eq!(apply_fredkin(false, b, c), (false, b, c));
            }
        }
        assert_eq!(apply_fredkin(true, false, true), (true, true, false));
        assert_eq!(apply_fredkin(true, true, false), (true, false, true));
        assert_eq!(apply_fredkin(false, false, true), (false, false, true));
    }

    #[test]
    fn fredkin_and_or_cells() {
        for a in [false, true] {
            for b in [false, true] {
                assert_eq!(apply_fredkin(a, b, false).2, a && b);
                assert_eq!(apply_fredkin(a, b, true).1, a || b);
            }
        }
    }

    #[test]
    fn feynman_examples() {
        for a in [false, true] {
            assert_eq!(apply_feynman(a, false), (a, a));
            assert_eq!(apply_feynman(a, true), (a, !a));
        }
        assert_eq!(apply_feynman(true, true), (true, false));
    }

    #[test]
    fn tables() {
        let fredkin = permutation_of(GateKind::Fredkin);
        assert_eq!(fredkin.arity(), 3);
        assert_eq!(fredkin.entries(), &[0, 1, 2, 3, 4, 6, 5, 7]);

        let feynman = permutation_of(GateKind::Feynman);
        assert_eq!(feynman.arity(), 2);
        assert_eq!(feynman.entries(), &[0b00, 0b01, 0b11, 0b10]);

        for kind in GateKind::ALL {
            assert_eq!(kind.table().len(), 1 << kind.arity());
        }
    }

    #[test]
    fn properties() {
        let fredkin = permutation_of(GateKind::Fredkin);
        let feynman = permutation_of(GateKind::Feynman);
        assert!(is_bijective(&fredkin));
        assert!(is_bijective(&feynman));
        assert!(is_conservative(&fredkin));
        assert!(!is_conservative(&feynman));
        assert_eq!(is_self_inverse(&fredkin), Ok(true));
        assert_eq!(is_self_inverse(&feynman), Ok(true));
        for k in 0..5 {
            assert!(is_conservative(&PermutationTable::identity(k).unwrap()));
        }
    }

    #[test]
    fn collision_is_not_bijective() {
        let t = PermutationTable::new(2, vec![0b00, 0b00, 0b11, 0b10]).unwrap();
        assert!(!is_bijective(&t));
        assert_eq!(is_self_inverse(&t), Err(GateError::NotBijective));
    }

    #[test]
    fn rotation_is_not_involution() {
        let t = PermutationTable::new(2, vec![1, 2, 0, 3]).unwrap();
        assert!(is_bijective(&t));
        assert_eq!(is_self_inverse(&t), Ok(false));
        let t = PermutationTable::new(2, vec![1, 2, 3, 0]).unwrap();
        assert_eq!(is_self_inverse(&t), Ok(false));
    }

    #[test]
    fn malformed_tables() {
        assert!(matches!(
            PermutationTable::new(2, vec![0, 1, 2]),
            Err(GateError::WrongLength { .. })
        ));
        assert!(matches!(
            PermutationTable::new(1, vec![0, 2]),
            Err(GateError::OutOfRange { index: 1, .. })
        ));
    }

    #[test]
    fn table_and_equations_agree() {
        for kind in GateKind::ALL {
            let k = kind.arity();
            for index in 0..1u32 << k {
                let x = unpack_bits(index, k);
                let mut by_eq = vec![false; k];
                let mut by_table = vec![false; k];
                kind.apply(&x, &mut by_eq);
                kind.table().apply(&x, &mut by_table);
                assert_eq!(by_eq, by_table);
            }
        }
    }
}
