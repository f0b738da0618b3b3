//! Block single-error channel model.
//!
//! Each seven-qubit block independently suffers no error with probability
//! `1 − 7p` or a fixed-kind error on one of its seven qubits, each with
//! probability `p`. The channel kind selects the error letter: bit-flip → X,
//! phase-flip → Z, bit-phase-flip → Y. Randomness is drawn from per-block
//! counter-mode streams so that any block can be re-derived from the master
//! seed alone, independent of evaluation order.

use crate::error::{Error, Result};
use crate::pauli::{PauliKind, PauliOperator};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Number of data qubits per block.
pub const BLOCK_QUBITS: usize = 7;

/// Upper bound on the per-qubit error probability, from `1 − 7p ≥ 0`.
pub const MAX_ERROR_PROBABILITY: f64 = 1.0 / 7.0;

/// Which single-qubit error the channel applies.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChannelKind {
    BitFlip,
    PhaseFlip,
    BitPhaseFlip,
}

impl ChannelKind {
    pub const ALL: [ChannelKind; 3] = [
        ChannelKind::BitFlip,
        ChannelKind::PhaseFlip,
        ChannelKind::BitPhaseFlip,
    ];

    /// The Pauli letter this channel kind applies.
    pub fn error_kind(self) -> PauliKind {
        match self {
            ChannelKind::BitFlip => PauliKind::X,
            ChannelKind::PhaseFlip => PauliKind::Z,
            ChannelKind::BitPhaseFlip => PauliKind::Y,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            ChannelKind::BitFlip => "bit-flip",
            ChannelKind::PhaseFlip => "phase-flip",
            ChannelKind::BitPhaseFlip => "bit-phase-flip",
        }
    }
}

impl std::str::FromStr for ChannelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ChannelKind::ALL
            .into_iter()
            .find(|kind| kind.label() == s)
            .ok_or_else(|| {
                Error::InvalidParameter(format!(
                    "unknown channel kind {s:?}; expected bit-flip, phase-flip, or bit-phase-flip"
                ))
            })
    }
}

/// Channel parameters: error kind, per-qubit probability `p`, and the
/// deviation budget `delta` that steganographic use may add on top of `p`.
#[derive(Clone, Copy, PartialEq, Debug, Serialize, Deserialize)]
pub struct ChannelParams {
    pub kind: ChannelKind,
    pub p: f64,
    pub delta: f64,
    /// Slack allowed on the `p + delta ≤ 1/7` budget check. The hard bound
    /// `p ≤ 1/7` is never slackened.
    #[serde(default)]
    pub eps_slack: f64,
}

impl ChannelParams {
    pub fn new(kind: ChannelKind, p: f64, delta: f64) -> Result<Self> {
        Self::with_slack(kind, p, delta, 0.0)
    }

    pub fn with_slack(kind: ChannelKind, p: f64, delta: f64, eps_slack: f64) -> Result<Self> {
        let params = Self { kind, p, delta, eps_slack };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.p.is_finite() || !(0.0..=MAX_ERROR_PROBABILITY).contains(&self.p) {
            return Err(Error::InvalidParameter(format!(
                "p = {} outside [0, 1/7]",
                self.p
            )));
        }
        if !self.delta.is_finite() || self.delta < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "delta = {} must be non-negative",
                self.delta
            )));
        }
        if !self.eps_slack.is_finite() || self.eps_slack < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "eps_slack = {} must be non-negative",
                self.eps_slack
            )));
        }
        if self.p + self.delta > MAX_ERROR_PROBABILITY + self.eps_slack {
            return Err(Error::InvalidParameter(format!(
                "p + delta = {} exceeds 1/7 + slack {}",
                self.p + self.delta,
                self.eps_slack
            )));
        }
        Ok(())
    }

    /// Probability that a block passes with no error at all.
    pub fn identity_probability(&self) -> f64 {
        1.0 - 7.0 * self.p
    }

    /// The same channel viewed at the top of the tolerance band: `p` replaced
    /// by `p + delta`. This is the worst channel an observer calibrated to
    /// the band would still accept as normal. Fails when the shifted `p`
    /// breaks the block-model bound.
    pub fn shifted(&self) -> Result<Self> {
        Self::with_slack(self.kind, self.p + self.delta, self.delta, self.eps_slack + self.delta)
    }
}

/// Deterministic per-block RNG stream derived from the master seed.
pub fn block_rng(master_seed: u64, block_index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(block_index);
    rng
}

/// Samples one block error: identity with probability `1 − 7p`, otherwise the
/// channel's error letter on qubit `1 + floor(u/p)`. Consumes exactly one
/// uniform draw from the stream.
pub fn sample_block_error(params: &ChannelParams, rng: &mut impl Rng) -> PauliOperator {
    let u: f64 = rng.gen();
    let threshold = 7.0 * params.p;
    if u >= threshold {
        PauliOperator::identity(BLOCK_QUBITS)
    } else {
        let qubit = ((u / params.p) as usize + 1).min(BLOCK_QUBITS);
        PauliOperator::single_error(params.kind.error_kind(), qubit, BLOCK_QUBITS)
    }
}
