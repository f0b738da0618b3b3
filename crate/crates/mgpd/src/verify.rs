//! Dense verification sweeps with machine-readable reports: the
//! masked-projector error-product analysis, the sign-conjugation identity,
//! frame/dense syndrome agreement, and the measurement contrast between the
//! masked and unmasked frames.
//!
//! Everything here recomputes claims of the symbolic layer by explicit
//! 128-dimensional algebra and reports norms, so a reader can audit which
//! identities hold exactly and which only to floating-point tolerance.

use crate::channel::ChannelKind;
use crate::dense::{
    apply_pauli_matrix, apply_pauli_matrix_right, apply_pauli_state, build_projector,
    encode_decode_fidelity, encode_logical, frobenius_norm, hs_inner, measure_generator,
    measure_syndrome, project_matrix, DenseMatrix, DIM,
};
use crate::error::Result;
use crate::pauli::{PauliKind, PauliOperator};
use crate::protocol::StrategyClass;
use crate::steane::{
    eve_view, family_error, syndrome_of, CodeDefinition, SignMask, GENERATOR_COUNT, N,
};
use ndarray::Array2;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// Below this Frobenius norm an operator counts as proportional/zero.
pub const PROPORTIONALITY_TOL: f64 = 1e-10;

/// Tolerance for identities expected to hold exactly (orthogonality,
/// entrywise operator equality).
pub const EXACT_TOL: f64 = 1e-12;

/// The correctable error set: identity plus all 21 single-qubit Paulis.
pub fn correctable_set() -> Vec<PauliOperator> {
    let mut set = vec![PauliOperator::identity(N)];
    for kind in [PauliKind::X, PauliKind::Y, PauliKind::Z] {
        for q in 1..=N {
            set.push(PauliOperator::single_error(kind, q, N));
        }
    }
    set
}

/// One `P̃ E_i† E_j P̃` evaluation against the unmasked projector `P`.
#[derive(Clone, Debug, Serialize)]
pub struct PropositionReport {
    /// 1: `E_i†E_j` commutes with every generator; 2: anticommutes with the
    /// flipped generator only; 3: anticommutes with some unflipped one.
    pub case_id: u8,
    /// Index of the single flipped generator.
    pub h: usize,
    pub e_i: String,
    pub e_j: String,
    pub lhs_norm: f64,
    pub proportional_to_p: bool,
    /// Best-fit `c` minimizing `‖lhs − c·P‖_F` (the would-be β).
    pub proportionality_constant: Complex64,
    pub residual_norm: f64,
    /// δ_ij — the coefficient the correctability condition would need.
    pub alpha: f64,
    /// Case 2 only: whether the sandwich is the zero operator.
    pub matches_zero_operator: Option<bool>,
    /// Case 2 only: whether it instead equals `α·P − 2·P·E_i†E_j`.
    pub matches_projected_product_form: Option<bool>,
}

fn classify_case(code: &CodeDefinition, product: &PauliOperator, h: usize) -> u8 {
    let anticommuting: Vec<usize> = (1..=GENERATOR_COUNT)
        .filter(|&k| !product.commutes(code.generator(k)))
        .collect();
    if anticommuting.is_empty() {
        1
    } else if anticommuting == [h] {
        2
    } else {
        3
    }
}

fn proposition_report_with(
    code: &CodeDefinition,
    h: usize,
    mask: SignMask,
    p: &DenseMatrix,
    p_masked: &DenseMatrix,
    e_i: &PauliOperator,
    e_j: &PauliOperator,
) -> PropositionReport {
    let product = e_i.adjoint().multiply(e_j);
    let case_id = classify_case(code, &product, h);
    // lhs = P̃ · (E_i†E_j) · P̃, with the outer projector applied factor by
    // factor (no full matrix product needed).
    let lhs = project_matrix(code, mask, &apply_pauli_matrix(&product, p_masked));
    let lhs_norm = frobenius_norm(&lhs);
    // Best fit over c: tr(P†·lhs)/tr(P†·P); P is Hermitian with trace 2.
    let constant = hs_inner(p, &lhs) / hs_inner(p, p);
    let residual = frobenius_norm(&(&lhs - &(p * constant)));
    let alpha = if e_i == e_j { 1.0 } else { 0.0 };
    let (matches_zero, matches_form) = if case_id == 2 {
        let candidate =
            p * Complex64::new(alpha, 0.0) - apply_pauli_matrix_right(p, &product) * Complex64::new(2.0, 0.0);
        (
            Some(lhs_norm <= EXACT_TOL),
            Some(frobenius_norm(&(&lhs - &candidate)) <= PROPORTIONALITY_TOL),
        )
    } else {
        (None, None)
    };
    PropositionReport {
        case_id,
        h,
        e_i: e_i.label(),
        e_j: e_j.label(),
        lhs_norm,
        proportional_to_p: residual < PROPORTIONALITY_TOL,
        proportionality_constant: constant,
        residual_norm: residual,
        alpha,
        matches_zero_operator: matches_zero,
        matches_projected_product_form: matches_form,
    }
}

/// Evaluates one error pair against the single-generator mask `{g_h}`.
pub fn check_proposition1(
    code: &CodeDefinition,
    h: usize,
    e_i: &PauliOperator,
    e_j: &PauliOperator,
) -> PropositionReport {
    let mask = SignMask::from_generators(&[h]);
    let p = build_projector(code, SignMask::empty());
    let p_masked = build_projector(code, mask);
    proposition_report_with(code, h, mask, &p, &p_masked, e_i, e_j)
}

/// Full 22×22 sweep of the correctable set for one flipped generator.
#[derive(Clone, Debug, Serialize)]
pub struct PropositionSweep {
    pub h: usize,
    pub pair_count: usize,
    /// Pairs landing in cases 1, 2, 3.
    pub case_counts: [usize; 3],
    /// Residual of the `(I, I)` pair — the witness that no constant makes
    /// the masked sandwich proportional to `P`.
    pub identity_pair_residual: f64,
    pub identity_pair_proportional: bool,
    pub all_case3_proportional_with_alpha: bool,
    pub case2_zero_operator_count: usize,
    pub case2_projected_product_form_count: usize,
    pub pass: bool,
    /// Per-pair detail, kept for programmatic use; the serialized bundle
    /// carries only the aggregates above.
    #[serde(skip_serializing)]
    pub reports: Vec<PropositionReport>,
}

/// Runs the error-pair sweep for mask `{g_h}`.
///
/// Pass means: every case-3 pair is proportional to `P` with constant equal
/// to its α, and the identity pair is *not* proportional (residual ≥ 1).
/// Case-2 pairs are reported, not gated: the two closed forms they might
/// take are recorded per pair.
pub fn run_proposition_sweep(code: &CodeDefinition, h: usize) -> PropositionSweep {
    assert!((1..=GENERATOR_COUNT).contains(&h), "generator index {h} out of range");
    let mask = SignMask::from_generators(&[h]);
    let p = build_projector(code, SignMask::empty());
    let p_masked = build_projector(code, mask);
    let errors = correctable_set();
    let mut reports = Vec::with_capacity(errors.len() * errors.len());
    for e_i in &errors {
        for e_j in &errors {
            reports.push(proposition_report_with(code, h, mask, &p, &p_masked, e_i, e_j));
        }
    }
    let mut case_counts = [0usize; 3];
    for r in &reports {
        case_counts[r.case_id as usize - 1] += 1;
    }
    let identity = &reports[0];
    let identity_pair_residual = identity.residual_norm;
    let identity_pair_proportional = identity.proportional_to_p;
    let all_case3 = reports.iter().filter(|r| r.case_id == 3).all(|r| {
        r.proportional_to_p
            && (r.proportionality_constant - Complex64::new(r.alpha, 0.0)).norm()
                <= PROPORTIONALITY_TOL
    });
    let case2_zero = reports
        .iter()
        .filter(|r| r.matches_zero_operator == Some(true))
        .count();
    let case2_form = reports
        .iter()
        .filter(|r| r.matches_projected_product_form == Some(true))
        .count();
    let pass = all_case3 && !identity_pair_proportional && identity_pair_residual >= 1.0;
    PropositionSweep {
        h,
        pair_count: reports.len(),
        case_counts,
        identity_pair_residual,
        identity_pair_proportional,
        all_case3_proportional_with_alpha: all_case3,
        case2_zero_operator_count: case2_zero,
        case2_projected_product_form_count: case2_form,
        pass,
        reports,
    }
}

/// `‖P̃_m · P‖_F` for one mask.
#[derive(Clone, Debug, Serialize)]
pub struct MaskOrthogonality {
    pub mask: String,
    pub frobenius_norm: f64,
}

/// Products of every nonempty-mask projector with the unmasked projector;
/// all must vanish (each flipped factor annihilates its unflipped partner).
pub fn run_orthogonality_sweep(code: &CodeDefinition) -> Vec<MaskOrthogonality> {
    let p = build_projector(code, SignMask::empty());
    (1..64u8)
        .map(|bits| {
            let mask = SignMask::from_bits(bits);
            MaskOrthogonality {
                mask: mask.label(),
                frobenius_norm: frobenius_norm(&project_matrix(code, mask, &p)),
            }
        })
        .collect()
}

/// Top-level bundle for the projector verification command.
#[derive(Clone, Debug, Serialize)]
pub struct PropositionBundle {
    pub orthogonality: Vec<MaskOrthogonality>,
    pub orthogonality_pass: bool,
    pub sweeps: Vec<PropositionSweep>,
    pub pass: bool,
}

pub fn run_proposition_checks(code: &CodeDefinition, hs: &[usize]) -> PropositionBundle {
    let orthogonality = run_orthogonality_sweep(code);
    let orthogonality_pass = orthogonality.iter().all(|o| o.frobenius_norm < EXACT_TOL);
    let sweeps: Vec<PropositionSweep> = hs
        .iter()
        .map(|&h| run_proposition_sweep(code, h))
        .collect();
    let pass = orthogonality_pass && sweeps.iter().all(|s| s.pass);
    PropositionBundle {
        orthogonality,
        orthogonality_pass,
        sweeps,
        pass,
    }
}

/// One `(Z_j, sign pattern)` instance of the conjugation identity.
#[derive(Clone, Debug, Serialize)]
pub struct SignConjugationCase {
    /// 0 stands for the identity operator instead of `Z_j`.
    pub qubit: usize,
    pub mask: String,
    /// True when the mask's flipped set equals the set of phase generators
    /// `Z_j` anticommutes with — the condition for the identity to hold.
    pub matched: bool,
    pub equal: bool,
    pub max_entry_diff: f64,
}

/// Exhaustive check that `Z_j · ∏(I + s_k g_k) = ∏(I + g_k) · Z_j` over the
/// phase generators `g1..g3` holds exactly when the sign pattern matches
/// `Z_j`'s anticommutation pattern (moving `Z_j` through flips those signs).
#[derive(Clone, Debug, Serialize)]
pub struct SignConjugationReport {
    pub cases: Vec<SignConjugationCase>,
    pub matched_equal_count: usize,
    pub mismatched_unequal_count: usize,
    pub pass: bool,
}

pub fn run_sign_conjugation(code: &CodeDefinition) -> SignConjugationReport {
    let mut cases = Vec::with_capacity(64);
    for j in 0..=7usize {
        let z_j = if j == 0 {
            PauliOperator::identity(N)
        } else {
            PauliOperator::single_error(PauliKind::Z, j, N)
        };
        // Anticommutation pattern against g1..g3 as mask bits.
        let pattern: u8 = (1..=3)
            .filter(|&k| !z_j.commutes(code.generator(k)))
            .fold(0, |bits, k| bits | 1 << (k - 1));
        for bits in 0..8u8 {
            let mask = SignMask::from_bits(bits);
            // LHS: Z_j · ∏_{k≤3}(I + s_k g_k), unscaled partial product.
            let mut lhs: DenseMatrix = Array2::eye(DIM);
            for k in 1..=3 {
                let moved = apply_pauli_matrix(code.generator(k), &lhs);
                lhs = lhs + moved * Complex64::new(mask.sign(k), 0.0);
            }
            lhs = apply_pauli_matrix(&z_j, &lhs);
            // RHS: ∏_{k≤3}(I + g_k) · Z_j.
            let mut rhs = apply_pauli_matrix(&z_j, &Array2::eye(DIM));
            for k in 1..=3 {
                let moved = apply_pauli_matrix(code.generator(k), &rhs);
                rhs = rhs + moved;
            }
            let max_entry_diff = lhs
                .iter()
                .zip(rhs.iter())
                .map(|(a, b)| (a - b).norm())
                .fold(0.0f64, f64::max);
            cases.push(SignConjugationCase {
                qubit: j,
                mask: mask.label(),
                matched: bits == pattern,
                equal: max_entry_diff <= EXACT_TOL,
                max_entry_diff,
            });
        }
    }
    let matched_equal_count = cases.iter().filter(|c| c.matched && c.equal).count();
    let mismatched_unequal_count = cases.iter().filter(|c| !c.matched && !c.equal).count();
    let pass = matched_equal_count == 8 && mismatched_unequal_count == 56;
    SignConjugationReport {
        cases,
        matched_equal_count,
        mismatched_unequal_count,
        pass,
    }
}

/// One (mask, error) cross-check between symbolic and dense syndromes.
#[derive(Clone, Debug, Serialize)]
pub struct FrameAgreementCase {
    pub mask: String,
    pub error: String,
    /// Decoder's (mask-adjusted) dense measurement equals the symbolic
    /// syndrome of the error.
    pub decoder_frame_matches: bool,
    /// Original-directions dense measurement equals the symbolic
    /// mask-shifted view.
    pub original_frame_matches: bool,
}

/// Ties the fast syndrome bookkeeping to dense ground truth for one channel
/// family: all 8 masks × 8 single-kind errors, measured in both frames.
#[derive(Clone, Debug, Serialize)]
pub struct FrameAgreementReport {
    pub kind: ChannelKind,
    pub cases: Vec<FrameAgreementCase>,
    pub pass: bool,
}

pub fn run_frame_agreement(code: &CodeDefinition, kind: ChannelKind) -> FrameAgreementReport {
    let amplitudes = (
        Complex64::new(0.6, 0.0),
        Complex64::new(0.0, 0.8),
    );
    let masks: Vec<SignMask> = (0..64u8)
        .map(SignMask::from_bits)
        .filter(|m| m.family_consistent(kind))
        .collect();
    let mut cases = Vec::with_capacity(64);
    for &mask in &masks {
        let encoded = encode_logical(code, mask, amplitudes.0, amplitudes.1)
            .expect("amplitudes are normalized");
        for e in 0..8u8 {
            let error = family_error(kind, e);
            let errored = apply_pauli_state(&error, &encoded);
            let symbolic = syndrome_of(code, &error);
            let (decoder_syndrome, _) =
                measure_syndrome(&errored, code, mask).expect("stabilizer eigenstate");
            let (original_syndrome, _) =
                measure_syndrome(&errored, code, SignMask::empty()).expect("stabilizer eigenstate");
            cases.push(FrameAgreementCase {
                mask: mask.label(),
                error: error.label(),
                decoder_frame_matches: decoder_syndrome == symbolic,
                original_frame_matches: original_syndrome == eve_view(symbolic, mask),
            });
        }
    }
    let pass = cases
        .iter()
        .all(|c| c.decoder_frame_matches && c.original_frame_matches);
    FrameAgreementReport { kind, cases, pass }
}

/// The headline measurement contrast: a phase error that flips the unmasked
/// `g1` outcome to 1 reads 0 on the `g1`-flipped code.
#[derive(Clone, Debug, Serialize)]
pub struct MeasurementContrast {
    pub unmasked_outcome: u8,
    pub unmasked_probability: f64,
    pub masked_outcome: u8,
    pub masked_probability: f64,
    pub pass: bool,
}

pub fn run_measurement_contrast(code: &CodeDefinition) -> MeasurementContrast {
    let z6 = PauliOperator::single_error(PauliKind::Z, 6, N);
    let amplitudes = (Complex64::new(0.8, 0.0), Complex64::new(0.0, 0.6));
    let read_g1 = |mask: SignMask| {
        let encoded = encode_logical(code, mask, amplitudes.0, amplitudes.1).unwrap();
        let errored = apply_pauli_state(&z6, &encoded);
        measure_generator(&errored, code.generator(1), 1.0).unwrap()
    };
    let unmasked = read_g1(SignMask::empty());
    let masked = read_g1(SignMask::from_generators(&[1]));
    let deterministic = (unmasked.probability - 1.0).abs() < PROPORTIONALITY_TOL
        && (masked.probability - 1.0).abs() < PROPORTIONALITY_TOL;
    MeasurementContrast {
        unmasked_outcome: unmasked.outcome,
        unmasked_probability: unmasked.probability,
        masked_outcome: masked.outcome,
        masked_probability: masked.probability,
        pass: unmasked.outcome == 1 && masked.outcome == 0 && deterministic,
    }
}

/// Bundle for the circuit verification command.
#[derive(Clone, Debug, Serialize)]
pub struct CircuitsReport {
    pub sign_conjugation: SignConjugationReport,
    pub frame_agreement: Vec<FrameAgreementReport>,
    pub measurement_contrast: MeasurementContrast,
    pub pass: bool,
}

pub fn run_circuit_checks(code: &CodeDefinition) -> CircuitsReport {
    let sign_conjugation = run_sign_conjugation(code);
    let frame_agreement: Vec<FrameAgreementReport> = ChannelKind::ALL
        .into_iter()
        .map(|kind| run_frame_agreement(code, kind))
        .collect();
    let measurement_contrast = run_measurement_contrast(code);
    let pass = sign_conjugation.pass
        && frame_agreement.iter().all(|f| f.pass)
        && measurement_contrast.pass;
    CircuitsReport {
        sign_conjugation,
        frame_agreement,
        measurement_contrast,
        pass,
    }
}

/// A decoder that knows the observer mask recovers every correctable single
/// error exactly; matched frames must give fidelity one.
pub const FIDELITY_MATCHED_TOL: f64 = 1e-10;
/// A decoder working in the wrong sign frame mis-corrects the reference case
/// by a logical operator, so its fidelity must fall well below one.
pub const FIDELITY_MISMATCH_GAP: f64 = 1e-3;

/// Round-trip fidelity sweep over random logical states, all eight family
/// masks of every error family, and one random family error per state.
#[derive(Clone, Debug, Serialize)]
pub struct FidelityReport {
    pub seed: u64,
    pub samples_per_mask: usize,
    pub matched_case_count: usize,
    pub matched_min_fidelity: f64,
    pub mismatched_example_fidelity: f64,
    pub pass: bool,
}

/// Encode random logical states under every family sign mask, hit each with a
/// random error from the matching family, and decode in the same frame. Also
/// evaluates one frame-mismatch case: a state encoded with generator 1
/// flipped, hit by a phase flip on qubit 6, decoded in the unmasked frame.
pub fn run_fidelity_sweep(
    code: &CodeDefinition,
    seed: u64,
    samples: usize,
) -> Result<FidelityReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut matched_min: f64 = 1.0;
    let mut matched_cases = 0usize;
    for kind in ChannelKind::ALL {
        let strategy = StrategyClass::for_kind(kind);
        for digit in 0..8u8 {
            let mask = strategy.entry(digit);
            for _ in 0..samples {
                let (a, b) = random_amplitudes(&mut rng);
                let error = family_error(kind, rng.gen_range(0..8u8));
                let f = encode_decode_fidelity(code, a, b, mask, &error, mask, kind)?;
                matched_min = matched_min.min(f);
                matched_cases += 1;
            }
        }
    }
    let s = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let mismatched = encode_decode_fidelity(
        code,
        s,
        s,
        SignMask::from_generators(&[1]),
        &PauliOperator::single_error(PauliKind::Z, 6, N),
        SignMask::empty(),
        ChannelKind::PhaseFlip,
    )?;
    Ok(FidelityReport {
        seed,
        samples_per_mask: samples,
        matched_case_count: matched_cases,
        matched_min_fidelity: matched_min,
        mismatched_example_fidelity: mismatched,
        pass: matched_min >= 1.0 - FIDELITY_MATCHED_TOL
            && mismatched < 1.0 - FIDELITY_MISMATCH_GAP,
    })
}

/// Uniform point on the Bloch sphere expressed as logical amplitudes.
fn random_amplitudes(rng: &mut impl Rng) -> (Complex64, Complex64) {
    let cos_theta: f64 = rng.gen_range(-1.0..=1.0);
    let half = (0.5 * cos_theta.acos()).sin_cos();
    let phi: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    (
        Complex64::new(half.1, 0.0),
        Complex64::from_polar(half.0, phi),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orthogonality_holds_for_every_nonempty_mask() {
        let code = CodeDefinition::steane();
        let sweep = run_orthogonality_sweep(&code);
        assert_eq!(sweep.len(), 63);
        for o in &sweep {
            assert!(o.frobenius_norm < EXACT_TOL, "mask {}: {}", o.mask, o.frobenius_norm);
        }
    }

    #[test]
    fn single_pair_reports_land_in_the_documented_cases() {
        let code = CodeDefinition::steane();
        let identity = PauliOperator::identity(N);
        let z1 = PauliOperator::single_error(PauliKind::Z, 1, N);
        let z4 = PauliOperator::single_error(PauliKind::Z, 4, N);

        // (I, I): the product commutes with everything and the sandwich is
        // the masked projector itself — visibly not a multiple of P.
        let r = check_proposition1(&code, 1, &identity, &identity);
        assert_eq!(r.case_id, 1);
        assert!(!r.proportional_to_p);
        assert!((r.lhs_norm - 2.0f64.sqrt()).abs() < 1e-10);
        assert!((r.residual_norm - 2.0f64.sqrt()).abs() < 1e-10);
        assert!(r.proportionality_constant.norm() < 1e-10);

        // (I, Z1): Z1 anticommutes with g3, an unflipped generator.
        let r = check_proposition1(&code, 1, &identity, &z1);
        assert_eq!(r.case_id, 3);
        assert!(r.proportional_to_p);
        assert!(r.proportionality_constant.norm() < 1e-10);
        assert!(r.lhs_norm < EXACT_TOL);

        // (I, Z4): Z4 anticommutes with g1 only.
        let r = check_proposition1(&code, 1, &identity, &z4);
        assert_eq!(r.case_id, 2);
        assert_eq!(r.matches_zero_operator, Some(true));
        assert_eq!(r.matches_projected_product_form, Some(false));
    }

    #[test]
    fn full_sweep_partitions_pairs_and_passes() {
        let code = CodeDefinition::steane();
        let sweep = run_proposition_sweep(&code, 1);
        assert_eq!(sweep.pair_count, 484);
        // 22 self-pairs commute with everything; 10 pairs differ by exactly
        // the g1 syndrome bit; the rest touch another generator.
        assert_eq!(sweep.case_counts, [22, 10, 452]);
        assert!(sweep.pass);
        assert!((sweep.identity_pair_residual - 2.0f64.sqrt()).abs() < 1e-10);
        assert_eq!(sweep.case2_zero_operator_count, 10);
        assert_eq!(sweep.case2_projected_product_form_count, 0);
        // Every self-pair is case 1 with the same non-proportional shape.
        for r in sweep.reports.iter().filter(|r| r.case_id == 1) {
            assert_eq!(r.e_i, r.e_j);
            assert!(!r.proportional_to_p);
        }
    }

    #[test]
    fn sweeps_pass_for_a_bit_family_generator_too() {
        let code = CodeDefinition::steane();
        let sweep = run_proposition_sweep(&code, 4);
        assert!(sweep.pass);
        assert_eq!(sweep.case_counts, [22, 10, 452]);
        assert_eq!(sweep.case2_zero_operator_count, 10);
    }

    #[test]
    fn sign_conjugation_matches_exactly_the_anticommutation_patterns() {
        let code = CodeDefinition::steane();
        let report = run_sign_conjugation(&code);
        assert_eq!(report.cases.len(), 64);
        assert!(report.pass);
        assert_eq!(report.matched_equal_count, 8);
        assert_eq!(report.mismatched_unequal_count, 56);
        // The published instance: Z5 against signs (−, +, −).
        let published = report
            .cases
            .iter()
            .find(|c| c.qubit == 5 && c.mask == "g1g3")
            .unwrap();
        assert!(published.matched && published.equal);
    }

    #[test]
    fn dense_syndromes_agree_with_the_symbolic_path_for_all_families() {
        let code = CodeDefinition::steane();
        for kind in ChannelKind::ALL {
            let report = run_frame_agreement(&code, kind);
            assert_eq!(report.cases.len(), 64);
            assert!(report.pass, "kind {kind:?}");
        }
    }

    #[test]
    fn measurement_contrast_reads_one_unmasked_and_zero_masked() {
        let code = CodeDefinition::steane();
        let contrast = run_measurement_contrast(&code);
        assert!(contrast.pass);
        assert_eq!(contrast.unmasked_outcome, 1);
        assert_eq!(contrast.masked_outcome, 0);
    }

    #[test]
    fn bundles_aggregate_their_parts() {
        let code = CodeDefinition::steane();
        let bundle = run_proposition_checks(&code, &[1]);
        assert!(bundle.pass && bundle.orthogonality_pass);
        let circuits = run_circuit_checks(&code);
        assert!(circuits.pass);
    }

    #[test]
    fn fidelity_sweep_is_perfect_when_frames_match_and_degrades_otherwise() {
        let code = CodeDefinition::steane();
        let report = run_fidelity_sweep(&code, 7, 3).unwrap();
        assert!(report.pass, "min {}", report.matched_min_fidelity);
        assert_eq!(report.matched_case_count, 3 * 8 * 3);
        assert!(report.matched_min_fidelity >= 1.0 - FIDELITY_MATCHED_TOL);
        assert!(report.mismatched_example_fidelity < 1e-10);
    }

    #[test]
    fn random_amplitudes_are_normalized() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let (a, b) = random_amplitudes(&mut rng);
            assert!((a.norm_sqr() + b.norm_sqr() - 1.0).abs() < 1e-12);
        }
    }
}
