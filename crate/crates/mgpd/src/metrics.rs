//! Closed-form performance metrics — embedding rate, key consumption, key
//! generation rate, KL divergence — for this scheme and the published
//! comparison schemes, plus emission of the comparison-curve data sets.
//!
//! All logarithms are base 2 (bits) with the `0·log 0 = 0` convention.
//! Values that a closed form sends to infinity are surfaced as explicit
//! `None`/"undefined" markers, never silently dropped.

use crate::error::{Error, Result};
use crate::protocol::compute_pg_bound;
use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;

/// The schemes the closed forms cover.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SchemeId {
    /// This work: masking via modified generator projection directions.
    Mgpd,
    /// Error-syndrome embedding schemes (fixed channel-usage budget).
    RefsErrorEmbed,
    /// Fixed one-in-seven watermark embedding.
    Watermark,
    Bb84,
    QsdcTwoStep,
}

impl SchemeId {
    pub fn label(self) -> &'static str {
        match self {
            SchemeId::Mgpd => "mgpd",
            SchemeId::RefsErrorEmbed => "refs-error-embed",
            SchemeId::Watermark => "watermark",
            SchemeId::Bb84 => "bb84",
            SchemeId::QsdcTwoStep => "qsdc-two-step",
        }
    }
}

const LN_2: f64 = std::f64::consts::LN_2;

fn log2(x: f64) -> f64 {
    x.ln() / LN_2
}

/// Binary entropy `h(q) = −q·log₂q − (1−q)·log₂(1−q)`.
pub fn binary_entropy(q: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&q) {
        return Err(Error::InvalidParameter(format!(
            "entropy argument {q} outside [0, 1]"
        )));
    }
    let term = |x: f64| if x == 0.0 { 0.0 } else { -x * log2(x) };
    Ok(term(q) + term(1.0 - q))
}

/// Secret payload per carrier qubit.
///
/// MGPD: the masking-rate bound `min(δ/|1−8p|, 1/7)`, zero beyond the
/// single-error regime `p > 1/7`. Error-syndrome embedding: `(4/7)·δ·(1 −
/// 4p/3)`. Watermarking: fixed `1/7`.
pub fn embedding_rate(scheme: SchemeId, p: f64, delta: f64) -> Result<f64> {
    if p < 0.0 || delta < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "negative rate parameters (p = {p}, delta = {delta})"
        )));
    }
    match scheme {
        SchemeId::Mgpd => Ok(if p > 1.0 / 7.0 {
            0.0
        } else {
            compute_pg_bound(p, delta)
        }),
        SchemeId::RefsErrorEmbed => Ok(4.0 / 7.0 * delta * (1.0 - 4.0 * p / 3.0)),
        SchemeId::Watermark => Ok(1.0 / 7.0),
        other => Err(Error::InvalidParameter(format!(
            "{} has no embedding rate",
            other.label()
        ))),
    }
}

/// Key bits consumed to steganographically use `n_carrier` qubits.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct KeyConsumption {
    pub bits: f64,
    /// Set when the error-embedding count had to be clamped into `[0, N]`.
    pub clamped: bool,
}

/// MGPD consumes only the fixed shared key (`mgpd_key_len` digits,
/// independent of `n_carrier`); error-syndrome embedding needs
/// `log₂ C(N, round(δ/7·(1−4p/3)·N))` bits to address its embedding
/// positions; watermarking needs one key bit per block, `N/7`.
pub fn key_consumption(
    scheme: SchemeId,
    n_carrier: u64,
    p: f64,
    delta: f64,
    mgpd_key_len: usize,
) -> Result<KeyConsumption> {
    if n_carrier == 0 {
        return Err(Error::InvalidParameter("carrier count must be positive".into()));
    }
    match scheme {
        SchemeId::Mgpd => Ok(KeyConsumption {
            bits: mgpd_key_len as f64,
            clamped: false,
        }),
        SchemeId::RefsErrorEmbed => {
            let n = n_carrier as f64;
            let raw = (delta / 7.0 * (1.0 - 4.0 * p / 3.0) * n).round();
            let clamped = !(0.0..=n).contains(&raw);
            let k = raw.clamp(0.0, n);
            // log₂ C(n, k) via log-gamma, overflow-free for any N.
            let bits =
                (ln_gamma(n + 1.0) - ln_gamma(k + 1.0) - ln_gamma(n - k + 1.0)) / LN_2;
            Ok(KeyConsumption { bits, clamped })
        }
        SchemeId::Watermark => Ok(KeyConsumption {
            bits: n_carrier as f64 / 7.0,
            clamped: false,
        }),
        other => Err(Error::InvalidParameter(format!(
            "{} has no key-consumption model",
            other.label()
        ))),
    }
}

/// Long-run key (or covert-payload) generation rate per channel use.
pub fn key_rate(scheme: SchemeId, p: f64, delta: f64, epsilon: f64) -> Result<f64> {
    match scheme {
        SchemeId::Mgpd => embedding_rate(SchemeId::Mgpd, p, delta),
        SchemeId::Bb84 => {
            if !(0.0..=0.5).contains(&p) {
                return Err(Error::InvalidParameter(format!(
                    "error rate {p} outside [0, 1/2]"
                )));
            }
            Ok((1.0 - epsilon) / 2.0 * (1.0 - binary_entropy(p)?))
        }
        SchemeId::QsdcTwoStep => {
            if !(0.0..=0.5).contains(&p) {
                return Err(Error::InvalidParameter(format!(
                    "error rate {p} outside [0, 1/2]"
                )));
            }
            Ok((1.0 - 2.0 * epsilon) * (1.0 - binary_entropy(p)?))
        }
        other => Err(Error::InvalidParameter(format!(
            "{} has no key-rate model",
            other.label()
        ))),
    }
}

/// Closed-form KL divergence (bits) between the clean and post-attack
/// outcome distributions. `Ok(None)` marks a +∞ endpoint (a zero in a
/// denominator whose coefficient does not vanish).
pub fn kl_divergence_closed(scheme: SchemeId, p: f64) -> Result<Option<f64>> {
    // One `a·log₂(a/b)` term under the 0·log 0 convention; `None` is +∞.
    let term = |a: f64, b: f64| -> Option<f64> {
        if a == 0.0 {
            Some(0.0)
        } else if b == 0.0 {
            None
        } else {
            Some(a * log2(a / b))
        }
    };
    match scheme {
        SchemeId::Mgpd => {
            if !(0.0..=1.0 / 7.0).contains(&p) {
                return Err(Error::InvalidParameter(format!(
                    "error rate {p} outside [0, 1/7]"
                )));
            }
            let id = 1.0 - 7.0 * p;
            Ok(match (term(p, id), term(id, p)) {
                (Some(a), Some(b)) => Some(a + b),
                _ => None,
            })
        }
        SchemeId::Bb84 => {
            if !(0.0..=0.5).contains(&p) {
                return Err(Error::InvalidParameter(format!(
                    "error rate {p} outside [0, 1/2]"
                )));
            }
            let attacked = bb84_attack_error_rate(p)?;
            Ok(match (term(p, attacked), term(1.0 - p, 1.0 - attacked)) {
                (Some(a), Some(b)) => Some(a + b),
                _ => None,
            })
        }
        SchemeId::QsdcTwoStep => {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::InvalidParameter(format!(
                    "error rate {p} outside [0, 1]"
                )));
            }
            // Second detection round: honest outcome distribution (1−p, p)
            // against the fully randomized (1/4, 3/4).
            Ok(
                match (term(1.0 - p, 0.25), term(p, 0.75)) {
                    (Some(a), Some(b)) => Some(a + b),
                    _ => None,
                },
            )
        }
        other => Err(Error::InvalidParameter(format!(
            "{} has no closed-form divergence",
            other.label()
        ))),
    }
}

/// Plug-in KL divergence between two empirical distributions over the same
/// outcome alphabet. `Ok(None)` flags an absolute-continuity violation
/// (`Q(x) = 0` with `P(x) > 0`).
pub fn kl_divergence_empirical(p: &[f64], q: &[f64]) -> Result<Option<f64>> {
    if p.len() != q.len() || p.is_empty() {
        return Err(Error::InvalidParameter(
            "distributions must share a nonempty alphabet".into(),
        ));
    }
    for (name, dist) in [("P", p), ("Q", q)] {
        if dist.iter().any(|&x| x < 0.0) || (dist.iter().sum::<f64>() - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidParameter(format!(
                "{name} is not a probability distribution"
            )));
        }
    }
    let mut total = 0.0;
    for (&px, &qx) in p.iter().zip(q.iter()) {
        if px == 0.0 {
            continue;
        }
        if qx == 0.0 {
            return Ok(None);
        }
        total += px * log2(px / qx);
    }
    Ok(Some(total))
}

/// Per-qubit error rate an intercept-resend attacker induces on the BB84
/// channel: measurement disturbance (1/4) plus the two channel passes.
pub fn bb84_attack_error_rate(p: f64) -> Result<f64> {
    if !(0.0..=0.5).contains(&p) {
        return Err(Error::InvalidParameter(format!(
            "error rate {p} outside [0, 1/2]"
        )));
    }
    Ok(0.25 + p - p * p)
}

/// The four emitted comparison data sets.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FigureId {
    /// Key consumption vs carrier count.
    Fig5,
    /// Embedding rate vs channel error rate, one sub-series per tolerance.
    Fig6,
    /// Key generation rate vs channel error rate.
    Fig7,
    /// Clean-vs-attacked KL divergence vs channel error rate.
    Fig9,
}

impl FigureId {
    pub const ALL: [FigureId; 4] = [FigureId::Fig5, FigureId::Fig6, FigureId::Fig7, FigureId::Fig9];

    pub fn label(self) -> &'static str {
        match self {
            FigureId::Fig5 => "fig5",
            FigureId::Fig6 => "fig6",
            FigureId::Fig7 => "fig7",
            FigureId::Fig9 => "fig9",
        }
    }
}

impl std::str::FromStr for FigureId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        FigureId::ALL
            .into_iter()
            .find(|f| f.label() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown figure id {s:?}")))
    }
}

/// One emitted row: `value = None` renders as an explicit "undefined".
#[derive(Clone, Debug, Serialize)]
pub struct CurvePoint {
    pub figure_id: &'static str,
    pub x: f64,
    pub scheme: String,
    pub value: Option<f64>,
}

/// Fixed conditions for the comparison curves.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CurveParams {
    /// Tolerance sub-series for the embedding-rate sweep.
    pub deltas: Vec<f64>,
    /// Tolerance for the key-consumption and key-rate curves.
    pub delta: f64,
    /// Channel error rate for the key-consumption curve.
    pub p: f64,
    /// Detection-sampling fraction for the key-rate comparisons.
    pub epsilon: f64,
    pub mgpd_key_len: usize,
}

impl Default for CurveParams {
    fn default() -> Self {
        Self {
            deltas: vec![0.005, 0.01, 0.02, 0.03],
            delta: 0.02,
            p: 0.1,
            epsilon: 0.05,
            mgpd_key_len: crate::protocol::DEFAULT_KEY_LEN,
        }
    }
}

/// Carrier counts for the key-consumption curve.
const N_GRID: [u64; 13] = [
    100, 200, 500, 1_000, 2_000, 5_000, 10_000, 20_000, 50_000, 100_000, 200_000, 500_000,
    1_000_000,
];

fn p_grid(steps: usize, step: f64) -> Vec<f64> {
    (0..=steps).map(|i| i as f64 * step).collect()
}

/// Emits the rows of one comparison data set, sorted by x then scheme.
pub fn emit_curves(figure: FigureId, params: &CurveParams) -> Result<Vec<CurvePoint>> {
    let mut rows = Vec::new();
    let fig = figure.label();
    match figure {
        FigureId::Fig5 => {
            for &n in &N_GRID {
                for scheme in [SchemeId::Mgpd, SchemeId::RefsErrorEmbed, SchemeId::Watermark] {
                    let kc =
                        key_consumption(scheme, n, params.p, params.delta, params.mgpd_key_len)?;
                    rows.push(CurvePoint {
                        figure_id: fig,
                        x: n as f64,
                        scheme: scheme.label().to_string(),
                        value: Some(kc.bits),
                    });
                }
            }
        }
        FigureId::Fig6 => {
            for p in p_grid(30, 0.005) {
                for &delta in &params.deltas {
                    for scheme in [SchemeId::Mgpd, SchemeId::RefsErrorEmbed] {
                        rows.push(CurvePoint {
                            figure_id: fig,
                            x: p,
                            scheme: format!("{}-d{delta}", scheme.label()),
                            value: Some(embedding_rate(scheme, p, delta)?),
                        });
                    }
                }
                rows.push(CurvePoint {
                    figure_id: fig,
                    x: p,
                    scheme: SchemeId::Watermark.label().to_string(),
                    value: Some(embedding_rate(SchemeId::Watermark, p, 0.0)?),
                });
            }
        }
        FigureId::Fig7 => {
            for p in p_grid(50, 0.01) {
                for scheme in [SchemeId::Mgpd, SchemeId::Bb84, SchemeId::QsdcTwoStep] {
                    rows.push(CurvePoint {
                        figure_id: fig,
                        x: p,
                        scheme: scheme.label().to_string(),
                        value: Some(key_rate(scheme, p, params.delta, params.epsilon)?),
                    });
                }
            }
        }
        FigureId::Fig9 => {
            for p in p_grid(28, 0.005) {
                for scheme in [SchemeId::Mgpd, SchemeId::Bb84, SchemeId::QsdcTwoStep] {
                    rows.push(CurvePoint {
                        figure_id: fig,
                        x: p,
                        scheme: scheme.label().to_string(),
                        value: kl_divergence_closed(scheme, p)?,
                    });
                }
            }
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn entropy_reference_points() {
        assert_eq!(binary_entropy(0.5).unwrap(), 1.0);
        assert_eq!(binary_entropy(0.0).unwrap(), 0.0);
        assert_eq!(binary_entropy(1.0).unwrap(), 0.0);
        // Independently computed high-precision value.
        assert!((binary_entropy(0.11).unwrap() - 0.499_915_958_164_528).abs() < 1e-12);
        assert!(binary_entropy(-0.1).is_err());
        assert!(binary_entropy(1.1).is_err());
    }

    #[test]
    fn embedding_rates_match_the_published_settings() {
        let r = embedding_rate(SchemeId::Mgpd, 0.1, 0.02).unwrap();
        assert!((r - 0.1).abs() < 1e-15);
        // Ceiling reached before the singularity and held across it.
        assert_eq!(embedding_rate(SchemeId::Mgpd, 0.12, 0.02).unwrap(), 1.0 / 7.0);
        assert_eq!(embedding_rate(SchemeId::Mgpd, 0.125, 0.02).unwrap(), 1.0 / 7.0);
        assert_eq!(embedding_rate(SchemeId::Mgpd, 0.15, 0.02).unwrap(), 0.0);
        assert_eq!(embedding_rate(SchemeId::Watermark, 0.3, 0.9).unwrap(), 1.0 / 7.0);
        let refs = embedding_rate(SchemeId::RefsErrorEmbed, 0.1, 0.02).unwrap();
        assert!((refs - 4.0 / 7.0 * 0.02 * (1.0 - 4.0 * 0.1 / 3.0)).abs() < 1e-15);
        assert!(embedding_rate(SchemeId::Bb84, 0.1, 0.02).is_err());
    }

    proptest! {
        #[test]
        fn mgpd_rate_is_monotone_in_the_tolerance(p in 0.0..0.12f64, d1 in 0.0..0.2f64, d2 in 0.0..0.2f64) {
            let (lo, hi) = if d1 <= d2 { (d1, d2) } else { (d2, d1) };
            let r_lo = embedding_rate(SchemeId::Mgpd, p, lo).unwrap();
            let r_hi = embedding_rate(SchemeId::Mgpd, p, hi).unwrap();
            prop_assert!(r_lo <= r_hi + 1e-15);
        }

        #[test]
        fn empirical_divergence_is_nonnegative_and_zero_on_itself(
            raw_p in prop::collection::vec(0.01..1.0f64, 8),
            raw_q in prop::collection::vec(0.01..1.0f64, 8),
        ) {
            let norm = |v: &[f64]| -> Vec<f64> {
                let s: f64 = v.iter().sum();
                v.iter().map(|x| x / s).collect()
            };
            let p = norm(&raw_p);
            let q = norm(&raw_q);
            let d = kl_divergence_empirical(&p, &q).unwrap().unwrap();
            prop_assert!(d >= -1e-12);
            let self_d = kl_divergence_empirical(&p, &p).unwrap().unwrap();
            prop_assert!(self_d.abs() < 1e-12);
        }
    }

    #[test]
    fn key_consumption_reference_points() {
        let mgpd_small = key_consumption(SchemeId::Mgpd, 1_000, 0.1, 0.02, 10).unwrap();
        let mgpd_large = key_consumption(SchemeId::Mgpd, 1_000_000, 0.1, 0.02, 10).unwrap();
        assert_eq!(mgpd_small.bits, 10.0);
        assert_eq!(mgpd_small.bits, mgpd_large.bits);
        assert_eq!(
            key_consumption(SchemeId::Watermark, 700, 0.0, 0.0, 10).unwrap().bits,
            100.0
        );
        // C(1000, 2) = 499500 exactly; the log-gamma path must agree.
        let refs = key_consumption(SchemeId::RefsErrorEmbed, 1_000, 0.1, 0.02, 10).unwrap();
        assert!(!refs.clamped);
        assert!((refs.bits - (499_500.0f64).log2()).abs() < 1e-9);
        assert!((refs.bits - 18.930_125_152_454_505).abs() < 1e-9);
        // A negative embedding count clamps to zero and is flagged.
        let clamped = key_consumption(SchemeId::RefsErrorEmbed, 1_000, 0.9, 0.02, 10).unwrap();
        assert!(clamped.clamped);
        assert_eq!(clamped.bits, 0.0);
    }

    #[test]
    fn refs_consumption_outgrows_the_constant_key() {
        let mut previous_ratio = 0.0;
        for doublings in 0..8 {
            let n = 1_000u64 << doublings;
            let refs = key_consumption(SchemeId::RefsErrorEmbed, n, 0.1, 0.02, 10).unwrap();
            let mgpd = key_consumption(SchemeId::Mgpd, n, 0.1, 0.02, 10).unwrap();
            let ratio = refs.bits / mgpd.bits;
            assert!(ratio > previous_ratio, "N = {n}");
            previous_ratio = ratio;
        }
        assert!(previous_ratio > 100.0);
    }

    #[test]
    fn key_rate_reference_points() {
        assert!((key_rate(SchemeId::Bb84, 0.0, 0.0, 0.05).unwrap() - 0.475).abs() < 1e-15);
        assert!((key_rate(SchemeId::QsdcTwoStep, 0.0, 0.0, 0.05).unwrap() - 0.9).abs() < 1e-15);
        assert!((key_rate(SchemeId::Mgpd, 0.1, 0.02, 0.0).unwrap() - 0.1).abs() < 1e-15);
        assert!(key_rate(SchemeId::Bb84, 0.6, 0.0, 0.05).is_err());
        assert!(key_rate(SchemeId::Watermark, 0.1, 0.02, 0.05).is_err());
    }

    #[test]
    fn closed_form_divergences_match_independent_evaluations() {
        let mgpd = kl_divergence_closed(SchemeId::Mgpd, 0.1).unwrap().unwrap();
        assert!((mgpd - 0.2 * 3.0f64.log2()).abs() < 1e-12);
        assert!((mgpd - 0.316_992_500_144_231_2).abs() < 1e-12);
        assert!(
            (kl_divergence_closed(SchemeId::Mgpd, 0.05).unwrap().unwrap()
                - 2.220_263_830_884_655)
                .abs()
                < 1e-12
        );
        let bb84_0 = kl_divergence_closed(SchemeId::Bb84, 0.0).unwrap().unwrap();
        assert!((bb84_0 - (4.0f64 / 3.0).log2()).abs() < 1e-12);
        assert!((bb84_0 - 0.415_037_499_278_843_8).abs() < 1e-12);
        assert!(
            (kl_divergence_closed(SchemeId::Bb84, 0.05).unwrap().unwrap()
                - 0.285_013_340_283_491_6)
                .abs()
                < 1e-12
        );
        assert_eq!(kl_divergence_closed(SchemeId::QsdcTwoStep, 0.0).unwrap(), Some(2.0));
        assert!(
            (kl_divergence_closed(SchemeId::QsdcTwoStep, 0.05).unwrap().unwrap()
                - 1.634_354_917_847_986)
                .abs()
                < 1e-12
        );
    }

    #[test]
    fn divergence_endpoints_are_marked_undefined() {
        assert_eq!(kl_divergence_closed(SchemeId::Mgpd, 0.0).unwrap(), None);
        assert_eq!(kl_divergence_closed(SchemeId::Mgpd, 1.0 / 7.0).unwrap(), None);
        assert!(kl_divergence_closed(SchemeId::Mgpd, 0.2).is_err());
        assert!(kl_divergence_closed(SchemeId::Watermark, 0.1).is_err());
    }

    #[test]
    fn empirical_divergence_recovers_the_closed_form_for_the_attack_permutation() {
        // Clean block-outcome distribution at p = 0.1 vs the attacked one,
        // where identity and one error slot swap probabilities: six terms
        // cancel and the two remaining reproduce the closed form.
        let p = 0.1;
        let clean = [1.0 - 7.0 * p, p, p, p, p, p, p, p];
        let mut attacked = [p; 8];
        attacked[4] = 1.0 - 7.0 * p;
        let d = kl_divergence_empirical(&clean, &attacked).unwrap().unwrap();
        let closed = kl_divergence_closed(SchemeId::Mgpd, p).unwrap().unwrap();
        assert!((d - closed).abs() < 1e-12);
    }

    #[test]
    fn empirical_divergence_edge_cases() {
        let uniform = [0.125; 8];
        assert_eq!(kl_divergence_empirical(&uniform, &uniform).unwrap(), Some(0.0));
        let p = [0.5, 0.5, 0.0, 0.0];
        let q = [0.5, 0.0, 0.5, 0.0];
        assert_eq!(kl_divergence_empirical(&p, &q).unwrap(), None);
        assert!(kl_divergence_empirical(&[0.5, 0.5], &[1.0]).is_err());
        assert!(kl_divergence_empirical(&[0.7, 0.7], &[0.5, 0.5]).is_err());
    }

    #[test]
    fn attack_error_rate_reference_points() {
        assert_eq!(bb84_attack_error_rate(0.0).unwrap(), 0.25);
        assert_eq!(bb84_attack_error_rate(0.5).unwrap(), 0.5);
        assert!((bb84_attack_error_rate(0.05).unwrap() - 0.2975).abs() < 1e-15);
        for i in 0..=10 {
            let p = i as f64 * 0.05;
            let rate = bb84_attack_error_rate(p).unwrap();
            assert!((1.0 - rate) - (0.75 + p * p - p) < 1e-15);
        }
        assert!(bb84_attack_error_rate(0.6).is_err());
    }

    #[test]
    fn consumption_curve_shows_constant_vs_growing_series() {
        let rows = emit_curves(FigureId::Fig5, &CurveParams::default()).unwrap();
        let mgpd: Vec<f64> = rows
            .iter()
            .filter(|r| r.scheme == "mgpd")
            .map(|r| r.value.unwrap())
            .collect();
        assert_eq!(mgpd.len(), 13);
        assert!(mgpd.iter().all(|&v| v == mgpd[0]));
        // The addressing cost is flat at zero until the embedding count
        // rounds above zero, then grows without bound.
        let refs: Vec<f64> = rows
            .iter()
            .filter(|r| r.scheme == "refs-error-embed")
            .map(|r| r.value.unwrap())
            .collect();
        assert!(refs.windows(2).all(|w| w[1] >= w[0]));
        assert!(*refs.last().unwrap() > 100.0 * mgpd[0]);
    }

    #[test]
    fn embedding_curve_reaches_the_ceiling_near_the_singularity() {
        let rows = emit_curves(FigureId::Fig6, &CurveParams::default()).unwrap();
        let at = |p: f64, scheme: &str| -> f64 {
            rows.iter()
                .find(|r| (r.x - p).abs() < 1e-12 && r.scheme == scheme)
                .unwrap()
                .value
                .unwrap()
        };
        assert_eq!(at(0.12, "mgpd-d0.02"), 1.0 / 7.0);
        assert_eq!(at(0.15, "mgpd-d0.02"), 0.0);
        assert!((at(0.1, "mgpd-d0.02") - 0.1).abs() < 1e-15);
        assert!(at(0.1, "mgpd-d0.005") < at(0.1, "mgpd-d0.03"));
    }

    #[test]
    fn divergence_curve_marks_endpoints_and_orders_schemes_at_low_p() {
        let rows = emit_curves(FigureId::Fig9, &CurveParams::default()).unwrap();
        let at = |p: f64, scheme: &str| -> Option<f64> {
            rows.iter()
                .find(|r| (r.x - p).abs() < 1e-12 && r.scheme == scheme)
                .unwrap()
                .value
        };
        assert_eq!(at(0.0, "mgpd"), None);
        let mgpd = at(0.05, "mgpd").unwrap();
        assert!(mgpd > at(0.05, "bb84").unwrap());
        assert!(mgpd > at(0.05, "qsdc-two-step").unwrap());
    }

    #[test]
    fn rate_curve_covers_all_schemes() {
        let rows = emit_curves(FigureId::Fig7, &CurveParams::default()).unwrap();
        for scheme in ["mgpd", "bb84", "qsdc-two-step"] {
            assert_eq!(rows.iter().filter(|r| r.scheme == scheme).count(), 51);
        }
        assert!(rows.iter().all(|r| r.value.is_some()));
    }
}
