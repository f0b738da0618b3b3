//! The MGPD protocol: shared-key mask scheduling, per-block encode/decode
//! frames, and the full simulated run.
//!
//! A shared key sequence of digits 0..=7 selects, cyclically, which sign
//! mask each block is encoded with; digit 0 means the unmodified code and a
//! nonzero digit both hides one secret block and shifts what an
//! original-directions observer reads. The fraction of nonzero digits is
//! budgeted by `p_g` so that the observable per-qubit error rate stays
//! inside the channel's tolerance band.

use crate::adversary::{intercept_resend, TrialStats};
use crate::channel::{block_rng, sample_block_error, ChannelKind, ChannelParams};
use crate::error::{Error, Result};
use crate::pauli::PauliOperator;
use crate::steane::{
    lookup_error, syndrome_of, CodeDefinition, ErrorLookup, SignMask, Syndrome,
};
use serde::{Deserialize, Serialize};

/// Default shared-key length.
pub const DEFAULT_KEY_LEN: usize = 10;

/// Width of the `|1 − 8p|` singularity window treated as zero when the
/// budget bound is computed.
pub const PG_SINGULARITY_ETA: f64 = 1e-9;

/// Tolerance applied when validating a user-supplied `p_g` against the
/// budget bound, absorbing f64 rounding of round-number inputs.
pub const PG_VALIDATION_TOL: f64 = 1e-12;

/// Largest admissible masking rate `p_g` for a channel at `(p, delta)`:
/// `min(delta/|1−8p|, 1/7)`, with the `p = 1/8` singularity (where masking
/// is invisible in the error rate) capped at the hard `1/7` limit.
pub fn compute_pg_bound(p: f64, delta: f64) -> f64 {
    let denom = (1.0 - 8.0 * p).abs();
    if denom < PG_SINGULARITY_ETA {
        1.0 / 7.0
    } else {
        (delta / denom).min(1.0 / 7.0)
    }
}

/// The eight masks a channel kind's strategy class offers, indexed by key
/// digit: ∅, then single flips, pairs, and the full triple in published
/// order. Bit-phase-flip entries pair each `g_k` with `g_{k+3}`.
#[derive(Clone, Debug)]
pub struct StrategyClass {
    pub kind: ChannelKind,
    entries: [SignMask; 8],
}

/// Generator subsets per digit, in the order ∅, g1, g2, g3, g1g2, g1g3,
/// g2g3, g1g2g3 (indices relative to the family's generator triple).
const DIGIT_SUBSETS: [&[usize]; 8] = [
    &[],
    &[1],
    &[2],
    &[3],
    &[1, 2],
    &[1, 3],
    &[2, 3],
    &[1, 2, 3],
];

impl StrategyClass {
    pub fn for_kind(kind: ChannelKind) -> Self {
        let entries = std::array::from_fn(|digit| {
            let mut generators = Vec::new();
            for &k in DIGIT_SUBSETS[digit] {
                match kind {
                    ChannelKind::PhaseFlip => generators.push(k),
                    ChannelKind::BitFlip => generators.push(k + 3),
                    ChannelKind::BitPhaseFlip => {
                        generators.push(k);
                        generators.push(k + 3);
                    }
                }
            }
            SignMask::from_generators(&generators)
        });
        Self { kind, entries }
    }

    pub fn entry(&self, digit: u8) -> SignMask {
        assert!(digit < 8, "key digit {digit} out of range");
        self.entries[digit as usize]
    }
}

/// A shared key: digits 0..=7 applied cyclically over the block stream.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct KeySequence {
    digits: Vec<u8>,
}

impl KeySequence {
    /// Builds the balanced key for masking rate `p_g` and length `len`:
    /// `c = round(7·p_g·len)` nonzero digits (ties round away from zero),
    /// counts split evenly with lower digits taking the extras, spread over
    /// the zeros as evenly as possible.
    pub fn build(p_g: f64, len: usize) -> Result<Self> {
        if len == 0 {
            return Err(Error::InvalidParameter("key length must be positive".into()));
        }
        if !p_g.is_finite() || !(0.0..=1.0 / 7.0 + PG_VALIDATION_TOL).contains(&p_g) {
            return Err(Error::InvalidParameter(format!(
                "p_g = {p_g} outside [0, 1/7]"
            )));
        }
        let c = ((7.0 * p_g * len as f64).round() as usize).min(len);
        let (base, extra) = (c / 7, c % 7);
        let mut counts = [0usize; 8];
        for d in 1..=7 {
            counts[d] = base + (d <= extra) as usize;
        }
        // Nonzero digits in balanced cycles 1..=7, 1..=extra.
        let mut nonzero = Vec::with_capacity(c);
        for cycle in 0..base + 1 {
            for d in 1..=7u8 {
                if counts[d as usize] > cycle {
                    nonzero.push(d);
                }
            }
        }
        // Spread the c nonzero slots over len positions evenly.
        let mut digits = Vec::with_capacity(len);
        let mut next = nonzero.into_iter();
        for i in 0..len {
            if (i + 1) * c / len > i * c / len {
                digits.push(next.next().expect("slot count matches digit count"));
            } else {
                digits.push(0);
            }
        }
        Ok(Self { digits })
    }

    /// Wraps an explicit digit sequence. Only the digit range is checked;
    /// balance is **not** enforced, so deliberately non-compliant keys (for
    /// steganalysis experiments) can be built here.
    pub fn from_digits(digits: Vec<u8>) -> Result<Self> {
        if digits.is_empty() {
            return Err(Error::InvalidParameter("key must not be empty".into()));
        }
        if let Some(&bad) = digits.iter().find(|&&d| d > 7) {
            return Err(Error::InvalidParameter(format!("key digit {bad} out of range")));
        }
        Ok(Self { digits })
    }

    pub fn digits(&self) -> &[u8] {
        &self.digits
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    /// Digit applied to the given block, cycling through the key.
    pub fn digit_at(&self, block_index: u64) -> u8 {
        self.digits[(block_index % self.digits.len() as u64) as usize]
    }

    pub fn counts(&self) -> [usize; 8] {
        let mut counts = [0; 8];
        for &d in &self.digits {
            counts[d as usize] += 1;
        }
        counts
    }

    /// All nonzero digits appear equally often, within one.
    pub fn is_balanced(&self) -> bool {
        let counts = self.counts();
        let nonzero = &counts[1..];
        nonzero.iter().max().unwrap() - nonzero.iter().min().unwrap() <= 1
    }

    pub fn nonzero_fraction(&self) -> f64 {
        let counts = self.counts();
        (self.len() - counts[0]) as f64 / self.len() as f64
    }
}

/// Everything one protocol run needs.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ProtocolConfig {
    pub params: ChannelParams,
    pub p_g: f64,
    pub key: KeySequence,
    pub blocks: u64,
    pub seed: u64,
    pub attack: bool,
}

impl ProtocolConfig {
    /// A compliant configuration: the key is built from `p_g`, which must
    /// respect the budget bound.
    pub fn new(
        params: ChannelParams,
        p_g: f64,
        key_len: usize,
        blocks: u64,
        seed: u64,
        attack: bool,
    ) -> Result<Self> {
        let config = Self {
            params,
            p_g,
            key: KeySequence::build(p_g, key_len)?,
            blocks,
            seed,
            attack,
        };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        self.params.validate()?;
        let bound = compute_pg_bound(self.params.p, self.params.delta);
        if !self.p_g.is_finite() || self.p_g < 0.0 || self.p_g > bound + PG_VALIDATION_TOL {
            return Err(Error::InvalidConfig(format!(
                "p_g = {} exceeds the budget bound {bound}",
                self.p_g
            )));
        }
        if self.blocks == 0 {
            return Err(Error::InvalidConfig("block count must be positive".into()));
        }
        Ok(())
    }
}

/// Per-block record as it moves through encode, channel, and decode.
#[derive(Clone, Debug)]
pub struct BlockFrame {
    pub index: u64,
    pub key_digit: u8,
    pub mask: SignMask,
    pub is_stego: bool,
    pub secret_id: Option<u64>,
    /// Total error on the block when it reaches Bob (set after channel
    /// sampling, and after the attack when one is running).
    pub true_error: Option<PauliOperator>,
    pub bob_syndrome: Option<Syndrome>,
    pub decode_success: Option<bool>,
}

/// Prepares a block frame for one key digit. Secret payload may ride only on
/// masked (nonzero-digit) blocks.
pub fn encode_block(
    key_digit: u8,
    strategy: &StrategyClass,
    secret_id: Option<u64>,
) -> Result<BlockFrame> {
    if key_digit > 7 {
        return Err(Error::InvalidParameter(format!(
            "key digit {key_digit} out of range"
        )));
    }
    if key_digit == 0 && secret_id.is_some() {
        return Err(Error::InvalidConfig(
            "an unmodified block cannot carry secret payload".into(),
        ));
    }
    Ok(BlockFrame {
        index: 0,
        key_digit,
        mask: strategy.entry(key_digit),
        is_stego: key_digit != 0,
        secret_id,
        true_error: None,
        bob_syndrome: None,
        decode_success: None,
    })
}

/// Bob's decode of one block: measuring with his sign-adjusted directions
/// cancels the mask, so his syndrome is the plain syndrome of the error.
///
/// `decode_success` records literal operator equality between his inferred
/// error and the block's true error. Without an attack the true error is a
/// single sampled error and the decode always recovers it; the composite
/// residuals an intercept-resend attack leaves behind generally are not
/// single errors, so the decode is generally wrong even when it reports a
/// correctable syndrome.
pub fn bob_decode_block(
    frame: &mut BlockFrame,
    code: &CodeDefinition,
    kind: ChannelKind,
) -> ErrorLookup {
    let error = frame
        .true_error
        .as_ref()
        .expect("decode requires a sampled error");
    let syndrome = syndrome_of(code, error);
    let decoded = lookup_error(syndrome, kind);
    frame.bob_syndrome = Some(syndrome);
    frame.decode_success = Some(match decoded.identified() {
        Some(inferred) => inferred == error,
        None => false,
    });
    decoded
}

/// Runs the whole protocol for `config.blocks` blocks and accumulates
/// the trial counters.
///
/// Per-block randomness comes from `block_rng(seed, index)`, so results are
/// bit-identical however the loop is scheduled. Under attack, Eve
/// intercept-resends every block after the first channel pass and a second,
/// independent channel pass follows her.
pub fn run_protocol(config: &ProtocolConfig) -> TrialStats {
    let code = CodeDefinition::steane();
    let kind = config.params.kind;
    let strategy = StrategyClass::for_kind(kind);
    let key_len = config.key.len();
    let mut stats = TrialStats::new(key_len);
    let mut secret_counter = 0u64;

    for index in 0..config.blocks {
        let digit = config.key.digit_at(index);
        let secret_id = (digit != 0).then(|| {
            secret_counter += 1;
            secret_counter
        });
        let mut frame = encode_block(digit, &strategy, secret_id).expect("digit from key");
        frame.index = index;

        let mut rng = block_rng(config.seed, index);
        let channel_error = sample_block_error(&config.params, &mut rng);

        // Original-directions view of the block as it leaves channel 1;
        // with an attack running this is exactly what Eve measures.
        let eve_seen = crate::steane::eve_view(syndrome_of(&code, &channel_error), frame.mask);
        let eve_index = match kind {
            ChannelKind::PhaseFlip | ChannelKind::BitPhaseFlip => eve_seen.phase_triple(),
            ChannelKind::BitFlip => eve_seen.bit_triple(),
        };
        stats.eve_inferred_error_counts[eve_index as usize] += 1;
        if eve_index != 0 {
            stats.per_qubit_error_counts[eve_index as usize - 1] += 1;
        }

        let total_error = if config.attack {
            let intercepted = intercept_resend(&channel_error, frame.mask, &code, kind);
            let second_error = sample_block_error(&config.params, &mut rng);
            second_error.multiply(&intercepted.residual)
        } else {
            channel_error
        };
        frame.true_error = Some(total_error);

        let decoded = bob_decode_block(&mut frame, &code, kind);
        let position = (index % key_len as u64) as usize;
        stats.block_counts_per_key_position[position] += 1;
        match decoded.identified() {
            Some(inferred) => {
                let bob_index = crate::steane::family_index_of(inferred, kind)
                    .expect("decode yields a family error");
                stats.bob_outcome_counts_per_key_position[position][bob_index as usize] += 1;
                if bob_index == 0 {
                    stats.identity_counts_per_key_position[position] += 1;
                }
            }
            None => stats.unexpected_syndrome_count += 1,
        }
        if frame.decode_success == Some(true) {
            stats.decode_success_count += 1;
        }
        if frame.is_stego {
            stats.stego_block_count += 1;
        }
        stats.total_blocks += 1;
    }
    stats
}
