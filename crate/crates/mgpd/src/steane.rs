//! The Steane (7,1,3) code: stabilizer generators, syndromes, sign masks,
//! and the syndrome-decode tables used by both communication parties.
//!
//! Qubit `j` sits in the support of the X-type generators `g1,g2,g3` (and of
//! the Z-type `g4,g5,g6`) exactly where the binary digits of `j` are set with
//! weights 4, 2, 1. A single error on qubit `j` therefore produces `j` in
//! binary as its syndrome triple, which is what makes table-free decoding and
//! the XOR remap rule below work.

use crate::channel::ChannelKind;
use crate::pauli::PauliOperator;
use std::fmt;

/// Code length.
pub const N: usize = 7;

/// Number of stabilizer generators.
pub const GENERATOR_COUNT: usize = 6;

/// Stabilizer generators and logical operators of the code.
#[derive(Clone, Debug)]
pub struct CodeDefinition {
    generators: [PauliOperator; GENERATOR_COUNT],
    logical_x: PauliOperator,
    logical_z: PauliOperator,
}

impl CodeDefinition {
    /// The standard Steane generators: `g1..g3` are X-strings and `g4..g6`
    /// the Z-strings on the same qubit sets {4,5,6,7}, {2,3,6,7}, {1,3,5,7}.
    pub fn steane() -> Self {
        let supports: [&[usize]; 3] = [&[4, 5, 6, 7], &[2, 3, 6, 7], &[1, 3, 5, 7]];
        let gx = supports.map(|s| PauliOperator::from_supports(N, s, &[]));
        let gz = supports.map(|s| PauliOperator::from_supports(N, &[], s));
        let all: [usize; N] = [1, 2, 3, 4, 5, 6, 7];
        Self {
            generators: [gx[0], gx[1], gx[2], gz[0], gz[1], gz[2]],
            logical_x: PauliOperator::from_supports(N, &all, &[]),
            logical_z: PauliOperator::from_supports(N, &[], &all),
        }
    }

    /// Generator `g_k`, `k` in `1..=6`.
    pub fn generator(&self, k: usize) -> &PauliOperator {
        assert!((1..=GENERATOR_COUNT).contains(&k), "generator index {k} out of range");
        &self.generators[k - 1]
    }

    pub fn generators(&self) -> &[PauliOperator; GENERATOR_COUNT] {
        &self.generators
    }

    pub fn logical_x(&self) -> &PauliOperator {
        &self.logical_x
    }

    pub fn logical_z(&self) -> &PauliOperator {
        &self.logical_z
    }
}

/// Six syndrome bits ordered `g1..g6`; bit k is set when the error
/// anticommutes with `g_k`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Syndrome {
    bits: u8,
}

impl Syndrome {
    pub fn from_bits(bits: u8) -> Self {
        assert!(bits < 64, "syndrome uses six bits");
        Self { bits }
    }

    pub fn trivial() -> Self {
        Self { bits: 0 }
    }

    pub fn bits(&self) -> u8 {
        self.bits
    }

    /// Outcome bit for generator `k` in `1..=6`.
    pub fn bit(&self, k: usize) -> bool {
        assert!((1..=GENERATOR_COUNT).contains(&k), "generator index {k} out of range");
        self.bits >> (k - 1) & 1 == 1
    }

    pub fn is_trivial(&self) -> bool {
        self.bits == 0
    }

    /// The `(g1,g2,g3)` outcomes read as a binary number, `g1` most
    /// significant. For a phase-flip error `Z_j` this equals `j`.
    pub fn phase_triple(&self) -> u8 {
        4 * (self.bits & 1) + 2 * (self.bits >> 1 & 1) + (self.bits >> 2 & 1)
    }

    /// The `(g4,g5,g6)` outcomes read as a binary number, `g4` most
    /// significant. For a bit-flip error `X_j` this equals `j`.
    pub fn bit_triple(&self) -> u8 {
        4 * (self.bits >> 3 & 1) + 2 * (self.bits >> 4 & 1) + (self.bits >> 5 & 1)
    }
}

impl fmt::Display for Syndrome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for k in 1..=GENERATOR_COUNT {
            write!(f, "{}", self.bit(k) as u8)?;
        }
        Ok(())
    }
}

/// Which generator projection directions are flipped relative to the
/// original code. Bit k set means `g_k` is used with a −1 eigenvalue.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct SignMask {
    bits: u8,
}

impl SignMask {
    pub fn empty() -> Self {
        Self { bits: 0 }
    }

    pub fn from_bits(bits: u8) -> Self {
        assert!(bits < 64, "sign mask uses six bits");
        Self { bits }
    }

    /// Mask flipping exactly the listed generators (`1..=6`).
    pub fn from_generators(flipped: &[usize]) -> Self {
        let mut bits = 0u8;
        for &k in flipped {
            assert!((1..=GENERATOR_COUNT).contains(&k), "generator index {k} out of range");
            bits |= 1 << (k - 1);
        }
        Self { bits }
    }

    pub fn bits(&self) -> u8 {
        self.bits
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn flips(&self, k: usize) -> bool {
        assert!((1..=GENERATOR_COUNT).contains(&k), "generator index {k} out of range");
        self.bits >> (k - 1) & 1 == 1
    }

    /// Projection sign for generator `k`: −1 where flipped, +1 otherwise.
    pub fn sign(&self, k: usize) -> f64 {
        if self.flips(k) {
            -1.0
        } else {
            1.0
        }
    }

    /// Whether the mask only touches generators its channel kind can use:
    /// phase-flip masks live on `g1..g3`, bit-flip on `g4..g6`, and
    /// bit-phase-flip masks must pair `g_k` with `g_{k+3}`.
    pub fn family_consistent(&self, kind: ChannelKind) -> bool {
        let low = self.bits & 0b000_111;
        let high = (self.bits & 0b111_000) >> 3;
        match kind {
            ChannelKind::PhaseFlip => high == 0,
            ChannelKind::BitFlip => low == 0,
            ChannelKind::BitPhaseFlip => low == high,
        }
    }

    /// The mask's row index 0..=7 in its family's remap table: the flipped
    /// generator triple read as binary with the low-index generator most
    /// significant (so flipping `g1` alone gives 4 and `g3` alone gives 1).
    pub fn family_index(&self, kind: ChannelKind) -> u8 {
        assert!(
            self.family_consistent(kind),
            "mask {} is not usable with a {} channel",
            self.label(),
            kind.label()
        );
        let triple = match kind {
            ChannelKind::PhaseFlip | ChannelKind::BitPhaseFlip => self.bits & 0b111,
            ChannelKind::BitFlip => self.bits >> 3,
        };
        4 * (triple & 1) + 2 * (triple >> 1 & 1) + (triple >> 2 & 1)
    }

    /// Human-readable label: `original` for the empty mask, else the flipped
    /// generators such as `g1g3`.
    pub fn label(&self) -> String {
        if self.is_empty() {
            return "original".to_string();
        }
        (1..=GENERATOR_COUNT)
            .filter(|&k| self.flips(k))
            .map(|k| format!("g{k}"))
            .collect()
    }
}

/// The syndrome an error produces against the (unmasked) generators.
pub fn syndrome_of(code: &CodeDefinition, error: &PauliOperator) -> Syndrome {
    let mut bits = 0u8;
    for (k, g) in code.generators().iter().enumerate() {
        if !error.commutes(g) {
            bits |= 1 << k;
        }
    }
    Syndrome::from_bits(bits)
}

/// The syndrome an observer measuring with the *original* projection
/// directions reads out when the encoder used `mask`: each flipped generator
/// contributes an inverted outcome bit. Applying the same mask twice returns
/// the true syndrome, so this is an involution.
pub fn eve_view(syndrome: Syndrome, mask: SignMask) -> Syndrome {
    Syndrome::from_bits(syndrome.bits() ^ mask.bits())
}

/// Result of decoding a syndrome under a single-error-kind hypothesis.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ErrorLookup {
    /// The unique identity-or-single error of the kind with this syndrome.
    Identified(PauliOperator),
    /// No error of the hypothesised kind produces this syndrome.
    Unexpected,
}

impl ErrorLookup {
    pub fn identified(&self) -> Option<&PauliOperator> {
        match self {
            ErrorLookup::Identified(op) => Some(op),
            ErrorLookup::Unexpected => None,
        }
    }
}

/// The identity (index 0) or single error of the family on qubit `index`.
pub fn family_error(kind: ChannelKind, index: u8) -> PauliOperator {
    assert!(index < 8, "family error index {index} out of range");
    if index == 0 {
        PauliOperator::identity(N)
    } else {
        PauliOperator::single_error(kind.error_kind(), index as usize, N)
    }
}

/// Inverse of [`family_error`]: 0 for the identity, the qubit index for the
/// family's single error on it, `None` for anything else.
pub fn family_index_of(op: &PauliOperator, kind: ChannelKind) -> Option<u8> {
    (0..8u8).find(|&index| *op == family_error(kind, index))
}

/// Decodes a syndrome assuming at most one error of the channel's kind.
///
/// A phase-flip (Z) error leaves `g4..g6` silent and writes its qubit index
/// into the `(g1,g2,g3)` triple; bit-flip mirrors this on the other triple;
/// a bit-phase-flip (Y) error writes the same index into both triples. Any
/// other pattern is reported as [`ErrorLookup::Unexpected`] — a first-class
/// outcome (it is what an observer sees under unanticipated interference),
/// not a failure.
pub fn lookup_error(syndrome: Syndrome, kind: ChannelKind) -> ErrorLookup {
    let phase = syndrome.phase_triple();
    let bit = syndrome.bit_triple();
    let index = match kind {
        ChannelKind::PhaseFlip if bit == 0 => phase,
        ChannelKind::BitFlip if phase == 0 => bit,
        ChannelKind::BitPhaseFlip if phase == bit => phase,
        _ => return ErrorLookup::Unexpected,
    };
    ErrorLookup::Identified(family_error(kind, index))
}

/// How an original-directions observer misreads errors under each mask of a
/// family: `entry(m, e) = e XOR m` indexes the error whose syndrome is the
/// true error's syndrome with the mask pattern folded in.
#[derive(Clone, Debug)]
pub struct RemapTable {
    pub kind: ChannelKind,
    entries: [[u8; 8]; 8],
}

/// Family mask row indices in the conventional published row order:
/// original, g1, g2, g3, g1g2, g1g3, g2g3, g1g2g3.
pub const REMAP_ROW_ORDER: [u8; 8] = [0, 4, 2, 1, 6, 5, 3, 7];

impl RemapTable {
    /// Perceived-error index for mask row `m` and true-error index `e`.
    pub fn entry(&self, m: usize, e: usize) -> u8 {
        self.entries[m][e]
    }

    pub fn row(&self, m: usize) -> [u8; 8] {
        self.entries[m]
    }

    /// Label for a family error index under this table's kind.
    pub fn label(&self, index: u8) -> String {
        family_error(self.kind, index).label()
    }

    /// True when every row and every column is a permutation of 0..=7 and
    /// all rows are distinct.
    pub fn is_sudoku(&self) -> bool {
        let rows_ok = self.entries.iter().all(|row| {
            let mut seen = [false; 8];
            row.iter().for_each(|&v| seen[v as usize] = true);
            seen.iter().all(|&s| s)
        });
        let cols_ok = (0..8).all(|c| {
            let mut seen = [false; 8];
            (0..8).for_each(|r| seen[self.entries[r][c] as usize] = true);
            seen.iter().all(|&s| s)
        });
        let distinct = (0..8).all(|a| (a + 1..8).all(|b| self.entries[a] != self.entries[b]));
        rows_ok && cols_ok && distinct
    }
}

/// Builds the 8×8 perceived-error table for one channel family.
pub fn remap_table(kind: ChannelKind) -> RemapTable {
    let mut entries = [[0u8; 8]; 8];
    for (m, row) in entries.iter_mut().enumerate() {
        for (e, slot) in row.iter_mut().enumerate() {
            *slot = (e ^ m) as u8;
        }
    }
    RemapTable { kind, entries }
}

/// Fold three mask measurement outcomes into the index of the error they
/// mimic: `j = 4·m1 + 2·m2 + m3`.
pub fn correction_index(m1: bool, m2: bool, m3: bool) -> u8 {
    4 * m1 as u8 + 2 * m2 as u8 + m3 as u8
}
