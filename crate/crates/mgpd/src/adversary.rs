//! Eavesdropper behaviour and the statistical tests run by both sides:
//! Eve's original-directions decoding and intercept-resend attack, Bob's
//! post-hoc eavesdropping detection, and Eve's steganalysis of the channel's
//! per-qubit error frequencies.

use crate::channel::{ChannelKind, ChannelParams};
use crate::pauli::PauliOperator;
use crate::stats;
use crate::steane::{
    eve_view, lookup_error, syndrome_of, CodeDefinition, ErrorLookup, SignMask, Syndrome,
};
use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};

/// Counters accumulated over one protocol run.
///
/// `per_qubit_error_counts` and `eve_inferred_error_counts` record the
/// original-directions view (what an interceptor reads), while the
/// per-key-position tables record Bob's mask-adjusted outcomes.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct TrialStats {
    /// Blocks on which the original-directions view shows an error on qubit
    /// `k` (index `k-1`).
    pub per_qubit_error_counts: [u64; 7],
    /// Original-directions inferred error, indexed 0 (identity) through 7.
    pub eve_inferred_error_counts: [u64; 8],
    /// Bob's identity-outcome count at each key position.
    pub identity_counts_per_key_position: Vec<u64>,
    /// Blocks seen at each key position.
    pub block_counts_per_key_position: Vec<u64>,
    /// Bob's full inferred-error distribution (identity + 7 errors) at each
    /// key position.
    pub bob_outcome_counts_per_key_position: Vec<[u64; 8]>,
    pub decode_success_count: u64,
    pub unexpected_syndrome_count: u64,
    pub stego_block_count: u64,
    pub total_blocks: u64,
}

impl TrialStats {
    pub fn new(key_len: usize) -> Self {
        assert!(key_len >= 1, "key length must be positive");
        Self {
            per_qubit_error_counts: [0; 7],
            eve_inferred_error_counts: [0; 8],
            identity_counts_per_key_position: vec![0; key_len],
            block_counts_per_key_position: vec![0; key_len],
            bob_outcome_counts_per_key_position: vec![[0; 8]; key_len],
            decode_success_count: 0,
            unexpected_syndrome_count: 0,
            stego_block_count: 0,
            total_blocks: 0,
        }
    }

    pub fn key_len(&self) -> usize {
        self.block_counts_per_key_position.len()
    }

    /// Structural consistency of the counters; used by tests and after
    /// deserializing externally supplied stats.
    pub fn check_invariants(&self) -> crate::Result<()> {
        let l = self.key_len();
        if self.identity_counts_per_key_position.len() != l
            || self.bob_outcome_counts_per_key_position.len() != l
        {
            return Err(crate::Error::InvalidConfig(
                "per-position tables disagree on key length".into(),
            ));
        }
        let position_sum: u64 = self.block_counts_per_key_position.iter().sum();
        if position_sum != self.total_blocks {
            return Err(crate::Error::InvalidConfig(format!(
                "per-position blocks sum to {position_sum}, not total {}",
                self.total_blocks
            )));
        }
        let all_counters = self
            .per_qubit_error_counts
            .iter()
            .chain(self.eve_inferred_error_counts.iter())
            .chain(self.identity_counts_per_key_position.iter())
            .chain(self.block_counts_per_key_position.iter())
            .chain([
                &self.decode_success_count,
                &self.unexpected_syndrome_count,
                &self.stego_block_count,
            ]);
        for &c in all_counters {
            if c > self.total_blocks {
                return Err(crate::Error::InvalidConfig(format!(
                    "counter {c} exceeds total blocks {}",
                    self.total_blocks
                )));
            }
        }
        for (pos, row) in self.bob_outcome_counts_per_key_position.iter().enumerate() {
            let row_sum: u64 = row.iter().sum();
            let identity = self.identity_counts_per_key_position[pos];
            if row_sum > self.block_counts_per_key_position[pos] || row[0] != identity {
                return Err(crate::Error::InvalidConfig(format!(
                    "outcome table inconsistent at position {pos}"
                )));
            }
        }
        Ok(())
    }
}

/// What an interceptor measuring with the original projection directions
/// infers about a block: the syndrome it reads and its decode of it.
pub fn eve_decode(
    error: &PauliOperator,
    mask: SignMask,
    code: &CodeDefinition,
    kind: ChannelKind,
) -> (Syndrome, ErrorLookup) {
    let seen = eve_view(syndrome_of(code, error), mask);
    (seen, lookup_error(seen, kind))
}

/// Record of one intercept-resend action on a block.
#[derive(Clone, Copy, Debug)]
pub struct InterceptResult {
    pub eve_syndrome: Syndrome,
    /// The correction Eve applies before resending.
    pub eve_correction: PauliOperator,
    /// Error left on the state after her correction: `correction · error`.
    /// Its syndrome equals the mask pattern, whatever the channel error was.
    pub residual: PauliOperator,
}

/// Eve measures the intercepted block with the original directions, applies
/// the correction her decode suggests, and resends.
///
/// For a single-kind channel with a family-consistent mask her syndrome
/// always decodes (asserted), but the decode is mask-shifted: the residual
/// she leaves behind carries the mask pattern as its syndrome.
pub fn intercept_resend(
    true_error: &PauliOperator,
    mask: SignMask,
    code: &CodeDefinition,
    kind: ChannelKind,
) -> InterceptResult {
    assert!(
        mask.family_consistent(kind),
        "mask {} cannot arise on a {} channel",
        mask.label(),
        kind.label()
    );
    let (eve_syndrome, decoded) = eve_decode(true_error, mask, code, kind);
    let eve_correction = *decoded
        .identified()
        .expect("family-consistent masks always yield a decodable syndrome");
    InterceptResult {
        eve_syndrome,
        eve_correction,
        residual: eve_correction.multiply(true_error),
    }
}

/// Run-level verdict of Bob's detection scan.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DetectionVerdict {
    Clean,
    EavesdropperDetected,
    /// Every position had too few samples to test.
    Inconclusive,
}

/// Per-key-position detail of the detection scan.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PositionReport {
    pub position: usize,
    pub samples: u64,
    pub identity_freq: f64,
    /// z statistic of the identity frequency against `1 − 7p`.
    pub identity_z: f64,
    /// Most frequent single-error outcome at this position (1..=7), with its
    /// frequency and its z statistic against the null frequency `p`.
    pub dominant_error_index: u8,
    pub dominant_error_freq: f64,
    pub dominant_error_z: f64,
    pub flagged: bool,
    pub inconclusive: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DetectionReport {
    pub alpha: f64,
    pub min_samples: u64,
    pub expected_identity_rate: f64,
    pub positions: Vec<PositionReport>,
    pub verdict: DetectionVerdict,
}

/// Bob's per-key-position eavesdropping scan.
///
/// At each position with enough samples, a two-sided z-test compares the
/// identity-outcome frequency with `1 − 7p`, and each of the seven error
/// outcomes is tested against `p` at level `alpha/7` (a Bonferroni split, so
/// one position's total false-positive budget stays at `2·alpha`). Any
/// flagged position marks the run as detected.
pub fn bob_eavesdrop_detect(
    stats: &TrialStats,
    params: &ChannelParams,
    alpha: f64,
    min_samples: u64,
) -> DetectionReport {
    let p0 = params.identity_probability();
    let z_identity_crit = stats::z_critical_two_sided(alpha);
    let z_label_crit = stats::z_critical_two_sided(alpha / 7.0);
    let mut positions = Vec::with_capacity(stats.key_len());
    for pos in 0..stats.key_len() {
        let n = stats.block_counts_per_key_position[pos];
        let outcomes = &stats.bob_outcome_counts_per_key_position[pos];
        if n < min_samples.max(1) {
            positions.push(PositionReport {
                position: pos,
                samples: n,
                identity_freq: f64::NAN,
                identity_z: f64::NAN,
                dominant_error_index: 0,
                dominant_error_freq: f64::NAN,
                dominant_error_z: f64::NAN,
                flagged: false,
                inconclusive: true,
            });
            continue;
        }
        let identity = stats.identity_counts_per_key_position[pos];
        let identity_z = stats::binomial_z(identity, n, p0);
        let mut flagged = identity_z.abs() > z_identity_crit;
        let (dominant_error_index, dominant_count) = (1..8)
            .map(|j| (j as u8, outcomes[j]))
            .max_by_key(|&(_, c)| c)
            .unwrap();
        let dominant_error_z = stats::binomial_z(dominant_count, n, params.p);
        for &count in &outcomes[1..] {
            if stats::binomial_z(count, n, params.p).abs() > z_label_crit {
                flagged = true;
            }
        }
        positions.push(PositionReport {
            position: pos,
            samples: n,
            identity_freq: identity as f64 / n as f64,
            identity_z,
            dominant_error_index,
            dominant_error_freq: dominant_count as f64 / n as f64,
            dominant_error_z,
            flagged,
            inconclusive: false,
        });
    }
    let verdict = if positions.iter().any(|p| p.flagged) {
        DetectionVerdict::EavesdropperDetected
    } else if positions.iter().all(|p| p.inconclusive) {
        DetectionVerdict::Inconclusive
    } else {
        DetectionVerdict::Clean
    };
    DetectionReport {
        alpha,
        min_samples,
        expected_identity_rate: p0,
        positions,
        verdict,
    }
}

/// Eve's channel-profiling report.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SteganalysisReport {
    pub alpha: f64,
    /// Tolerance band `[p, p + delta]` Eve accepts as normal drift.
    pub band_low: f64,
    pub band_high: f64,
    pub frame_len: u64,
    pub per_qubit_freq: [f64; 7],
    pub per_qubit_flagged: [bool; 7],
    pub suspicious: bool,
}

/// Eve's steganalysis: does any qubit's observed error frequency leave the
/// band `[p, p + delta]` by more than her sampling margin?
///
/// The margin on each edge is `z(alpha) · sqrt(q(1−q)/n)` with `q` the edge
/// value — the same binomial z machinery Bob uses, pointed at the band.
pub fn eve_steganalysis(
    per_qubit_counts: &[u64; 7],
    frame_len: u64,
    params: &ChannelParams,
    alpha: f64,
) -> SteganalysisReport {
    assert!(frame_len > 0, "empty frame");
    let n = frame_len as f64;
    let (lo, hi) = (params.p, params.p + params.delta);
    let z = Normal::new(0.0, 1.0).unwrap().inverse_cdf(1.0 - alpha);
    let margin_lo = z * (lo * (1.0 - lo) / n).sqrt();
    let margin_hi = z * (hi * (1.0 - hi) / n).sqrt();
    let mut per_qubit_freq = [0.0; 7];
    let mut per_qubit_flagged = [false; 7];
    for (k, &count) in per_qubit_counts.iter().enumerate() {
        let f = count as f64 / n;
        per_qubit_freq[k] = f;
        per_qubit_flagged[k] = f > hi + margin_hi || f < lo - margin_lo;
    }
    SteganalysisReport {
        alpha,
        band_low: lo,
        band_high: hi,
        frame_len,
        per_qubit_freq,
        per_qubit_flagged,
        suspicious: per_qubit_flagged.iter().any(|&f| f),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::ChannelKind;
    use crate::steane::family_error;

    fn all_family_masks(kind: ChannelKind) -> Vec<SignMask> {
        (0..64u8)
            .map(SignMask::from_bits)
            .filter(|m| m.family_consistent(kind))
            .collect()
    }

    #[test]
    fn residual_always_carries_the_mask_pattern() {
        let code = CodeDefinition::steane();
        for kind in ChannelKind::ALL {
            for mask in all_family_masks(kind) {
                for e in 0..8 {
                    let error = family_error(kind, e);
                    let out = intercept_resend(&error, mask, &code, kind);
                    assert_eq!(
                        syndrome_of(&code, &out.residual),
                        Syndrome::from_bits(mask.bits()),
                        "kind {kind:?} mask {} error {error}",
                        mask.label()
                    );
                }
            }
        }
    }

    #[test]
    fn intercept_under_g1_matches_published_sequence() {
        // Channel-1 errors I, Z1..Z7 under mask g1: Eve reads the shifted
        // syndromes and applies Z4, Z5, Z6, Z7, I, Z1, Z2, Z3.
        let code = CodeDefinition::steane();
        let mask = SignMask::from_generators(&[1]);
        let expected_syndromes = [
            "100000", "101000", "110000", "111000", "000000", "001000", "010000", "011000",
        ];
        let expected_corrections = ["Z4", "Z5", "Z6", "Z7", "I", "Z1", "Z2", "Z3"];
        for e in 0..8u8 {
            let error = family_error(ChannelKind::PhaseFlip, e);
            let out = intercept_resend(&error, mask, &code, ChannelKind::PhaseFlip);
            assert_eq!(out.eve_syndrome.to_string(), expected_syndromes[e as usize]);
            assert_eq!(out.eve_correction.label(), expected_corrections[e as usize]);
        }
    }

    #[test]
    fn bob_sees_channel_two_errors_shifted_by_the_mask() {
        // Whatever happened in channel 1, Bob's syndrome after the attack is
        // the channel-2 syndrome XOR the mask pattern.
        let code = CodeDefinition::steane();
        for kind in ChannelKind::ALL {
            for mask in all_family_masks(kind) {
                for e1 in 0..8 {
                    let out = intercept_resend(&family_error(kind, e1), mask, &code, kind);
                    for e2 in 0..8 {
                        let second = family_error(kind, e2);
                        let total = second.multiply(&out.residual);
                        let bob = syndrome_of(&code, &total);
                        let expected =
                            Syndrome::from_bits(syndrome_of(&code, &second).bits() ^ mask.bits());
                        assert_eq!(bob, expected);
                    }
                }
            }
        }
    }

    fn synthetic_stats(
        per_position_outcomes: Vec<[u64; 8]>,
    ) -> TrialStats {
        let l = per_position_outcomes.len();
        let mut stats = TrialStats::new(l);
        for (pos, row) in per_position_outcomes.into_iter().enumerate() {
            let n: u64 = row.iter().sum();
            stats.block_counts_per_key_position[pos] = n;
            stats.identity_counts_per_key_position[pos] = row[0];
            stats.bob_outcome_counts_per_key_position[pos] = row;
            stats.total_blocks += n;
        }
        stats.check_invariants().unwrap();
        stats
    }

    #[test]
    fn detection_flags_the_attacked_shape_and_passes_the_clean_shape() {
        let params = ChannelParams::new(ChannelKind::PhaseFlip, 0.05, 0.0).unwrap();
        // Clean positions: identity ≈ 0.65·n, each error ≈ 0.05·n.
        let clean_row = [650, 50, 50, 50, 50, 50, 50, 50];
        let report = bob_eavesdrop_detect(
            &synthetic_stats(vec![clean_row; 4]),
            &params,
            0.001,
            100,
        );
        assert_eq!(report.verdict, DetectionVerdict::Clean);

        // One attacked position under a g1-type mask: identity and the
        // dominant slot swap frequencies.
        let attacked_row = [50, 50, 50, 50, 650, 50, 50, 50];
        let report = bob_eavesdrop_detect(
            &synthetic_stats(vec![clean_row, attacked_row]),
            &params,
            0.001,
            100,
        );
        assert_eq!(report.verdict, DetectionVerdict::EavesdropperDetected);
        assert!(report.positions[1].flagged);
        assert_eq!(report.positions[1].dominant_error_index, 4);
        assert!((report.positions[1].dominant_error_freq - 0.65).abs() < 1e-12);
    }

    #[test]
    fn detection_reports_thin_positions_as_inconclusive() {
        let params = ChannelParams::new(ChannelKind::PhaseFlip, 0.05, 0.0).unwrap();
        let thin_row = [13, 1, 1, 1, 1, 1, 1, 1];
        let report =
            bob_eavesdrop_detect(&synthetic_stats(vec![thin_row; 2]), &params, 0.001, 100);
        assert_eq!(report.verdict, DetectionVerdict::Inconclusive);
        assert!(report.positions.iter().all(|p| p.inconclusive));
    }

    #[test]
    fn steganalysis_accepts_the_band_edge_and_flags_naive_masking() {
        let params = ChannelParams::new(ChannelKind::PhaseFlip, 0.1, 0.02).unwrap();
        // All qubits at the top of the band: within tolerance.
        let report = eve_steganalysis(&[12_000; 7], 100_000, &params, 0.001);
        assert!(!report.suspicious);

        // Naive constant g1 masking at p = 0.01: qubit 4 shows up at 1−7p.
        let naive_params = ChannelParams::new(ChannelKind::PhaseFlip, 0.01, 0.001).unwrap();
        let mut counts = [1_000u64; 7];
        counts[3] = 93_000;
        let report = eve_steganalysis(&counts, 100_000, &naive_params, 0.001);
        assert!(report.suspicious);
        assert!(report.per_qubit_flagged[3]);
        assert_eq!(report.per_qubit_flagged.iter().filter(|&&f| f).count(), 1);
    }

    #[test]
    fn invariant_checks_catch_corrupted_stats() {
        let mut stats = synthetic_stats(vec![[10, 1, 1, 1, 1, 1, 1, 1]; 2]);
        stats.total_blocks += 1;
        assert!(stats.check_invariants().is_err());
    }
}
