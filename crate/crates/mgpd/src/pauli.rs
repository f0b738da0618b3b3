//! Symplectic representation of n-qubit Pauli operators.
//!
//! An operator is stored as X/Z bit masks plus a power of i, so that its
//! matrix form is `i^phase_exp * prod_q X^{x_q} Z^{z_q}` with qubit 1 as the
//! most significant tensor factor. Under this convention `Y` on one qubit is
//! `(x=1, z=1, phase_exp=1)`, since `Y = i·X·Z`. Qubits are numbered `1..=n`
//! externally to match the usual generator-table labelling (`X4X5X6X7` etc.).

use serde::{Deserialize, Serialize};
use std::fmt;

/// Largest qubit count supported by the packed bit-mask storage.
pub const MAX_QUBITS: usize = 64;

/// Single-qubit Pauli letter.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum PauliKind {
    X,
    Y,
    Z,
}

/// An n-qubit Pauli operator with exact phase tracking.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct PauliOperator {
    n: u8,
    x_bits: u64,
    z_bits: u64,
    /// Exponent t in the global phase i^t, reduced mod 4.
    phase_exp: u8,
}

impl PauliOperator {
    /// The identity on `n` qubits with phase +1.
    pub fn identity(n: usize) -> Self {
        assert!((1..=MAX_QUBITS).contains(&n), "qubit count {n} out of range");
        Self { n: n as u8, x_bits: 0, z_bits: 0, phase_exp: 0 }
    }

    /// A weight-1 operator acting as `kind` on `qubit` (1-based).
    pub fn single_error(kind: PauliKind, qubit: usize, n: usize) -> Self {
        let mut op = Self::identity(n);
        assert!(
            (1..=n).contains(&qubit),
            "qubit index {qubit} out of range 1..={n}"
        );
        let bit = 1u64 << (qubit - 1);
        match kind {
            PauliKind::X => op.x_bits = bit,
            PauliKind::Z => op.z_bits = bit,
            PauliKind::Y => {
                op.x_bits = bit;
                op.z_bits = bit;
                op.phase_exp = 1; // Y = i·X·Z
            }
        }
        op
    }

    /// Builds an operator from explicit X and Z supports (1-based), phase +1.
    pub fn from_supports(n: usize, x_support: &[usize], z_support: &[usize]) -> Self {
        let mut op = Self::identity(n);
        for &q in x_support {
            assert!((1..=n).contains(&q), "qubit index {q} out of range 1..={n}");
            op.x_bits |= 1 << (q - 1);
        }
        for &q in z_support {
            assert!((1..=n).contains(&q), "qubit index {q} out of range 1..={n}");
            op.z_bits |= 1 << (q - 1);
        }
        op
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn phase_exp(&self) -> u8 {
        self.phase_exp
    }

    pub fn x_bit(&self, qubit: usize) -> bool {
        assert!((1..=self.n()).contains(&qubit), "qubit index out of range");
        self.x_bits >> (qubit - 1) & 1 == 1
    }

    pub fn z_bit(&self, qubit: usize) -> bool {
        assert!((1..=self.n()).contains(&qubit), "qubit index out of range");
        self.z_bits >> (qubit - 1) & 1 == 1
    }

    /// Number of qubits acted on non-trivially.
    pub fn weight(&self) -> usize {
        (self.x_bits | self.z_bits).count_ones() as usize
    }

    /// True for the identity with phase exactly +1.
    pub fn is_identity(&self) -> bool {
        self.x_bits == 0 && self.z_bits == 0 && self.phase_exp == 0
    }

    /// True when the two operators commute; they anticommute otherwise.
    ///
    /// Two Paulis either commute or anticommute, decided by the parity of the
    /// symplectic product `<a.x, b.z> + <a.z, b.x>`.
    pub fn commutes(&self, other: &Self) -> bool {
        assert_eq!(self.n, other.n, "operators act on different qubit counts");
        let cross = (self.x_bits & other.z_bits).count_ones()
            + (self.z_bits & other.x_bits).count_ones();
        cross % 2 == 0
    }

    /// The ordered product `self · other` with exact phase accumulation.
    ///
    /// Moving each X of `other` left through a Z of `self` on the same qubit
    /// contributes a factor −1, i.e. `i^2`.
    pub fn multiply(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "operators act on different qubit counts");
        let swaps = (self.z_bits & other.x_bits).count_ones() as u8;
        Self {
            n: self.n,
            x_bits: self.x_bits ^ other.x_bits,
            z_bits: self.z_bits ^ other.z_bits,
            phase_exp: (self.phase_exp + other.phase_exp + 2 * (swaps % 2)) % 4,
        }
    }

    /// Hermitian adjoint: conjugates the phase and reverses each site's
    /// `X^x Z^z` factor order, `(XZ)† = ZX = −XZ`.
    pub fn adjoint(&self) -> Self {
        let overlaps = (self.x_bits & self.z_bits).count_ones() as u8;
        Self {
            phase_exp: ((4 - self.phase_exp) + 2 * (overlaps % 2)) % 4,
            ..*self
        }
    }

    /// The per-site letter, or `None` for an identity site.
    pub fn site_kind(&self, qubit: usize) -> Option<PauliKind> {
        match (self.x_bit(qubit), self.z_bit(qubit)) {
            (false, false) => None,
            (true, false) => Some(PauliKind::X),
            (false, true) => Some(PauliKind::Z),
            (true, true) => Some(PauliKind::Y),
        }
    }

    /// Compact label such as `I`, `Z4`, `X4X5X6X7`; a site with both bits set
    /// prints as `Y`. A non-trivial stored phase is prefixed (`i`, `-`, `-i`).
    ///
    /// Note the label drops the internal `i^t`-vs-`Y` bookkeeping: `Y3` means
    /// the textbook Y on qubit 3 (stored phase 1 absorbed into the letter).
    pub fn label(&self) -> String {
        let mut letters = String::new();
        let mut y_sites = 0u8;
        for q in 1..=self.n() {
            if let Some(kind) = self.site_kind(q) {
                if kind == PauliKind::Y {
                    y_sites += 1;
                }
                letters.push_str(match kind {
                    PauliKind::X => "X",
                    PauliKind::Y => "Y",
                    PauliKind::Z => "Z",
                });
                letters.push_str(&q.to_string());
            }
        }
        if letters.is_empty() {
            letters.push('I');
        }
        // Each printed Y absorbs one factor of i from the stored phase.
        let residual = (self.phase_exp + 4 - (y_sites % 4)) % 4;
        let prefix = match residual {
            0 => "",
            1 => "i",
            2 => "-",
            _ => "-i",
        };
        format!("{prefix}{letters}")
    }
}

impl fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(q: usize) -> PauliOperator {
        PauliOperator::single_error(PauliKind::X, q, 7)
    }
    fn y(q: usize) -> PauliOperator {
        PauliOperator::single_error(PauliKind::Y, q, 7)
    }
    fn z(q: usize) -> PauliOperator {
        PauliOperator::single_error(PauliKind::Z, q, 7)
    }

    #[test]
    fn identity_properties() {
        let id = PauliOperator::identity(7);
        assert!(id.is_identity());
        assert_eq!(id.weight(), 0);
        assert_eq!(id.label(), "I");
        assert_eq!(id.multiply(&z(3)), z(3));
        assert_eq!(z(3).multiply(&id), z(3));
    }

    #[test]
    fn single_error_layout() {
        let op = y(3);
        assert!(op.x_bit(3) && op.z_bit(3));
        assert_eq!(op.phase_exp(), 1);
        assert_eq!(op.weight(), 1);
        assert_eq!(op.label(), "Y3");
    }

    #[test]
    fn same_site_products_track_phase() {
        // X·Z = -iY: bits (1,1) with no extra phase.
        let xz = x(1).multiply(&z(1));
        assert_eq!((xz.x_bit(1), xz.z_bit(1), xz.phase_exp()), (true, true, 0));
        assert_eq!(xz.label(), "-iY1");
        // Z·X = iY: the swap contributes i^2.
        let zx = z(1).multiply(&x(1));
        assert_eq!(zx.phase_exp(), 2);
        assert_eq!(zx.label(), "iY1");
        // Y² = I with phase exactly +1.
        assert!(y(5).multiply(&y(5)).is_identity());
        assert!(x(2).multiply(&x(2)).is_identity());
        assert!(z(2).multiply(&z(2)).is_identity());
    }

    #[test]
    fn disjoint_y_product_phase() {
        // Y1·Y2 = (iX1Z1)(iX2Z2) carries i², which is exactly Y⊗Y in
        // matrix form; the label folds both i's back into the letters.
        let yy = y(1).multiply(&y(2));
        assert_eq!(yy.phase_exp(), 2);
        assert_eq!(yy.label(), "Y1Y2");
    }

    #[test]
    fn commutation_rules() {
        assert!(!x(1).commutes(&z(1)));
        assert!(!x(1).commutes(&y(1)));
        assert!(!y(1).commutes(&z(1)));
        assert!(x(1).commutes(&z(2)));
        assert!(x(1).commutes(&x(1)));
        let g1 = PauliOperator::from_supports(7, &[4, 5, 6, 7], &[]);
        let g6 = PauliOperator::from_supports(7, &[], &[1, 3, 5, 7]);
        // Overlap {5, 7} is even, so an X-string and Z-string commute here.
        assert!(g1.commutes(&g6));
        assert!(!g1.commutes(&z(4)));
    }

    #[test]
    fn adjoint_is_involutive_and_fixes_singles() {
        for op in [x(1), y(4), z(7)] {
            assert_eq!(op.adjoint(), op, "single-qubit Paulis are Hermitian");
        }
        let prod = y(2).multiply(&z(3)).multiply(&x(1));
        assert_eq!(prod.adjoint().adjoint(), prod);
        // A·A† must be +identity.
        assert!(prod.multiply(&prod.adjoint()).is_identity());
    }

    #[test]
    fn generator_style_labels() {
        let g1 = PauliOperator::from_supports(7, &[4, 5, 6, 7], &[]);
        assert_eq!(g1.label(), "X4X5X6X7");
        let g4 = PauliOperator::from_supports(7, &[], &[4, 5, 6, 7]);
        assert_eq!(g4.label(), "Z4Z5Z6Z7");
    }

    #[test]
    #[should_panic(expected = "out of range")]
    fn qubit_index_zero_rejected() {
        PauliOperator::single_error(PauliKind::X, 0, 7);
    }

    #[test]
    #[should_panic(expected = "out of range")]
    fn qubit_index_past_n_rejected() {
        PauliOperator::single_error(PauliKind::X, 8, 7);
    }

    #[test]
    #[should_panic(expected = "different qubit counts")]
    fn mixed_widths_rejected() {
        let a = PauliOperator::identity(7);
        let b = PauliOperator::identity(3);
        a.multiply(&b);
    }
}
