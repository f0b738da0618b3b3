//! Dense 2⁷-dimensional linear algebra: exact matrix/state forms of Pauli
//! operators, stabilizer projectors, generator measurements, and the
//! single-qubit Pauli channels.
//!
//! This layer is ground truth for the fast symbolic simulator: everything the
//! syndrome bookkeeping claims is re-derived here by explicit 128×128
//! arithmetic. Basis order puts qubit 1 in the most significant bit of the
//! computational index, matching the operator labels.

use crate::channel::ChannelKind;
use crate::error::{Error, Result};
use crate::pauli::PauliOperator;
use crate::steane::{CodeDefinition, SignMask, Syndrome, GENERATOR_COUNT};
use ndarray::{Array1, Array2};
use num_complex::Complex64;

pub type DenseMatrix = Array2<Complex64>;
pub type DenseState = Array1<Complex64>;

/// Hilbert-space dimension for the 7-qubit block.
pub const DIM: usize = 128;

/// Norm below which a projected seed state is treated as vanishing during
/// logical-basis construction.
pub const SEED_NORM_TOL: f64 = 1e-6;

/// Probability below which a measurement branch counts as impossible.
pub const BRANCH_TOL: f64 = 1e-12;

fn one() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

fn phase_factor(exp: u8) -> Complex64 {
    match exp % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// The operator's X/Z supports re-indexed into basis-state bit positions
/// (qubit `j` of an `n`-qubit operator occupies index bit `n − j`).
fn basis_masks(op: &PauliOperator) -> (usize, usize) {
    let n = op.n();
    let (mut x, mut z) = (0usize, 0usize);
    for j in 1..=n {
        if op.x_bit(j) {
            x |= 1 << (n - j);
        }
        if op.z_bit(j) {
            z |= 1 << (n - j);
        }
    }
    (x, z)
}

/// The computational basis state `|index⟩` of an `n`-qubit register.
pub fn basis_state(index: usize, n: usize) -> DenseState {
    let dim = 1 << n;
    assert!(index < dim, "basis index {index} out of range");
    let mut v = Array1::zeros(dim);
    v[index] = one();
    v
}

/// Applies a Pauli operator to a state vector in O(2ⁿ): each basis amplitude
/// moves to `b ⊕ x` with sign `(−1)^{z·b}` and the stored `i^t` out front.
pub fn apply_pauli_state(op: &PauliOperator, state: &DenseState) -> DenseState {
    let dim = 1usize << op.n();
    assert_eq!(state.len(), dim, "state dimension mismatch");
    let (x, z) = basis_masks(op);
    let phase = phase_factor(op.phase_exp());
    let mut out = Array1::zeros(dim);
    for b in 0..dim {
        let sign = if (z & b).count_ones() % 2 == 1 { -1.0 } else { 1.0 };
        out[b ^ x] = phase * sign * state[b];
    }
    out
}

/// Left-multiplies a matrix by a Pauli operator in O(4ⁿ) — a signed row
/// permutation, avoiding a full matrix product.
pub fn apply_pauli_matrix(op: &PauliOperator, m: &DenseMatrix) -> DenseMatrix {
    let dim = 1usize << op.n();
    assert_eq!(m.dim(), (dim, dim), "matrix dimension mismatch");
    let (x, z) = basis_masks(op);
    let phase = phase_factor(op.phase_exp());
    let mut out = Array2::zeros((dim, dim));
    for k in 0..dim {
        let sign = if (z & k).count_ones() % 2 == 1 { -1.0 } else { 1.0 };
        let factor = phase * sign;
        let src = m.row(k);
        let mut dst = out.row_mut(k ^ x);
        for (d, &s) in dst.iter_mut().zip(src.iter()) {
            *d = factor * s;
        }
    }
    out
}

/// Right-multiplies a matrix by a Pauli operator (`M · E`) — a signed column
/// permutation.
pub fn apply_pauli_matrix_right(m: &DenseMatrix, op: &PauliOperator) -> DenseMatrix {
    let dim = 1usize << op.n();
    assert_eq!(m.dim(), (dim, dim), "matrix dimension mismatch");
    let (x, z) = basis_masks(op);
    let phase = phase_factor(op.phase_exp());
    let mut out = Array2::zeros((dim, dim));
    for c in 0..dim {
        let sign = if (z & c).count_ones() % 2 == 1 { -1.0 } else { 1.0 };
        let factor = phase * sign;
        let src = m.column(c ^ x);
        let mut dst = out.column_mut(c);
        for (d, &s) in dst.iter_mut().zip(src.iter()) {
            *d = factor * s;
        }
    }
    out
}

/// Full matrix of a Pauli operator, built independently of the fast path by
/// a Kronecker product over sites; used as the oracle in tests and for the
/// 2×2 channel operators.
pub fn pauli_matrix(op: &PauliOperator) -> DenseMatrix {
    let site = |x: bool, z: bool| -> DenseMatrix {
        let o = Complex64::new(0.0, 0.0);
        let p = one();
        let n = -p;
        match (x, z) {
            (false, false) => ndarray::array![[p, o], [o, p]],
            (true, false) => ndarray::array![[o, p], [p, o]],
            (false, true) => ndarray::array![[p, o], [o, n]],
            (true, true) => ndarray::array![[o, n], [p, o]], // X·Z
        }
    };
    let mut m = ndarray::array![[phase_factor(op.phase_exp())]];
    for j in 1..=op.n() {
        m = ndarray::linalg::kron(&m, &site(op.x_bit(j), op.z_bit(j)));
    }
    m
}

/// Applies the six projector factors `(I + s_k g_k)/2` to a matrix from the
/// left. Because the factors commute, this turns any `P̃·M` product into six
/// signed permutations instead of a matrix multiplication.
pub fn project_matrix(code: &CodeDefinition, mask: SignMask, m: &DenseMatrix) -> DenseMatrix {
    let mut acc = m.clone();
    for k in 1..=GENERATOR_COUNT {
        let moved = apply_pauli_matrix(code.generator(k), &acc);
        acc = (acc + moved * Complex64::new(mask.sign(k), 0.0)) * Complex64::new(0.5, 0.0);
    }
    acc
}

/// State-vector counterpart of [`project_matrix`].
pub fn project_state(code: &CodeDefinition, mask: SignMask, v: &DenseState) -> DenseState {
    let mut acc = v.clone();
    for k in 1..=GENERATOR_COUNT {
        let moved = apply_pauli_state(code.generator(k), &acc);
        acc = (acc + moved * Complex64::new(mask.sign(k), 0.0)) * Complex64::new(0.5, 0.0);
    }
    acc
}

/// The rank-2 projector `(1/2⁶) ∏ (I + s_k g_k)` onto the mask's codespace.
pub fn build_projector(code: &CodeDefinition, mask: SignMask) -> DenseMatrix {
    project_matrix(code, mask, &Array2::eye(DIM))
}

pub fn frobenius_norm(m: &DenseMatrix) -> f64 {
    m.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

pub fn trace(m: &DenseMatrix) -> Complex64 {
    m.diag().sum()
}

/// Hilbert–Schmidt inner product `tr(a† b)`.
pub fn hs_inner(a: &DenseMatrix, b: &DenseMatrix) -> Complex64 {
    a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum()
}

pub fn state_norm(v: &DenseState) -> f64 {
    v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

pub fn state_inner(a: &DenseState, b: &DenseState) -> Complex64 {
    a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum()
}

/// Orthonormal logical basis `(|0̄⟩, |1̄⟩)` of the mask's codespace.
///
/// Deterministic construction: computational seeds `|0⟩, |1⟩, …` are pushed
/// through the projector and the first one with a surviving logical-Z̄ = +1
/// component (norm above [`SEED_NORM_TOL`]) defines `|0̄⟩`; then
/// `|1̄⟩ = X̄|0̄⟩`, which stays in the codespace (X̄ commutes with every
/// generator) and flips the Z̄ eigenvalue.
pub fn logical_basis(code: &CodeDefinition, mask: SignMask) -> (DenseState, DenseState) {
    for seed in 0..DIM {
        let projected = project_state(code, mask, &basis_state(seed, 7));
        let z_moved = apply_pauli_state(code.logical_z(), &projected);
        let plus = (projected + z_moved) * Complex64::new(0.5, 0.0);
        let norm = state_norm(&plus);
        if norm > SEED_NORM_TOL {
            let zero = plus / Complex64::new(norm, 0.0);
            let one_state = apply_pauli_state(code.logical_x(), &zero);
            return (zero, one_state);
        }
    }
    unreachable!("every sign pattern of commuting generators has a nonempty codespace");
}

/// Encodes the logical amplitudes `(a, b)` into the mask's codespace.
pub fn encode_logical(
    code: &CodeDefinition,
    mask: SignMask,
    a: Complex64,
    b: Complex64,
) -> Result<DenseState> {
    let norm = a.norm_sqr() + b.norm_sqr();
    if (norm - 1.0).abs() > 1e-10 {
        return Err(Error::InvalidParameter(format!(
            "logical amplitudes have norm² = {norm}, expected 1"
        )));
    }
    let (zero, one_state) = logical_basis(code, mask);
    Ok(zero * a + one_state * b)
}

/// Outcome of one projective generator measurement.
#[derive(Clone, Debug)]
pub struct Measurement {
    /// 0 for the `+sign` eigenspace, 1 for the `−sign` eigenspace.
    pub outcome: u8,
    /// Probability of the reported outcome.
    pub probability: f64,
    pub post: DenseState,
}

/// Projectively measures an involutory Pauli `g` against the direction
/// `sign`, reporting the **likelier** branch (ties fall to outcome 0).
///
/// All measurements in this codebase act on stabilizer eigenstates, so the
/// reported probability is always 0 or 1 up to rounding; the deterministic
/// branch rule just removes an irrelevant coin flip. A state with no usable
/// branch (numerically null input) is an error.
pub fn measure_generator(state: &DenseState, g: &PauliOperator, sign: f64) -> Result<Measurement> {
    assert!(
        g.multiply(g).is_identity(),
        "measurement operator must square to the identity"
    );
    let moved = apply_pauli_state(g, state) * Complex64::new(sign, 0.0);
    let half = Complex64::new(0.5, 0.0);
    let plus = (state + &moved) * half;
    let minus = (state - &moved) * half;
    let p0 = state_norm(&plus).powi(2);
    let p1 = state_norm(&minus).powi(2);
    let (outcome, probability, branch) = if p0 >= p1 {
        (0, p0, plus)
    } else {
        (1, p1, minus)
    };
    if probability < BRANCH_TOL {
        return Err(Error::Undefined(
            "both measurement branches have zero probability (null state)".into(),
        ));
    }
    Ok(Measurement {
        outcome,
        probability,
        post: branch / Complex64::new(probability.sqrt(), 0.0),
    })
}

/// Measures all six generators with the observer's signs, assembling the
/// outcome bits into a syndrome and returning the collapsed state.
pub fn measure_syndrome(
    state: &DenseState,
    code: &CodeDefinition,
    observer_mask: SignMask,
) -> Result<(Syndrome, DenseState)> {
    let mut bits = 0u8;
    let mut current = state.clone();
    for k in 1..=GENERATOR_COUNT {
        let m = measure_generator(&current, code.generator(k), observer_mask.sign(k))?;
        bits |= m.outcome << (k - 1);
        current = m.post;
    }
    Ok((Syndrome::from_bits(bits), current))
}

/// Amplitude-level round trip: encode `(a, b)` under `mask`, apply the
/// channel error, measure the syndrome in the observer's `bob_mask` frame,
/// decode it under the `kind` hypothesis, apply the correction, and return
/// the overlap-squared with the original encoded state.
///
/// An undecodable syndrome leaves the state uncorrected (the observer
/// abstains), which simply shows up as reduced fidelity.
pub fn encode_decode_fidelity(
    code: &CodeDefinition,
    a: Complex64,
    b: Complex64,
    mask: SignMask,
    error: &PauliOperator,
    bob_mask: SignMask,
    kind: ChannelKind,
) -> Result<f64> {
    let encoded = encode_logical(code, mask, a, b)?;
    let errored = apply_pauli_state(error, &encoded);
    let (syndrome, collapsed) = measure_syndrome(&errored, code, bob_mask)?;
    let corrected = match crate::steane::lookup_error(syndrome, kind).identified() {
        Some(correction) => apply_pauli_state(correction, &collapsed),
        None => collapsed,
    };
    Ok(state_inner(&encoded, &corrected).norm_sqr())
}

/// Applies the single-qubit Pauli channel `ρ ↦ (1−p)ρ + p·KρK` for the
/// kind's Pauli `K` to a 2×2 density matrix.
pub fn apply_pauli_channel_dense(
    rho: &DenseMatrix,
    kind: ChannelKind,
    p: f64,
) -> Result<DenseMatrix> {
    if rho.dim() != (2, 2) {
        return Err(Error::InvalidParameter(
            "density matrix must be 2×2".into(),
        ));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!(
            "channel probability {p} outside [0, 1]"
        )));
    }
    let herm_defect = (0..2)
        .flat_map(|i| (0..2).map(move |j| (i, j)))
        .map(|(i, j)| (rho[(i, j)] - rho[(j, i)].conj()).norm())
        .fold(0.0f64, f64::max);
    let tr = rho[(0, 0)] + rho[(1, 1)];
    let det = rho[(0, 0)] * rho[(1, 1)] - rho[(0, 1)] * rho[(1, 0)];
    if herm_defect > 1e-10
        || (tr - one()).norm() > 1e-10
        || det.re < -1e-10
        || rho[(0, 0)].re < -1e-10
    {
        return Err(Error::InvalidParameter(
            "input is not a single-qubit density matrix".into(),
        ));
    }
    let k = pauli_matrix(&PauliOperator::single_error(kind.error_kind(), 1, 1));
    let moved = k.dot(rho).dot(&k);
    Ok(rho * Complex64::new(1.0 - p, 0.0) + moved * Complex64::new(p, 0.0))
}
