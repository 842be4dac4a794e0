//! Active-attacker harness.
//!
//! Attacks are judged observationally: an attack succeeds when the victim's
//! decrypt returns a message, and fails when it returns ⊥. Each outcome
//! carries the victim's counter trace so cost claims can be checked
//! exactly.

mod attacks;
mod cost;
mod privacy;

pub use attacks::{forge_origin, forge_origin_trial, splice_component, splice_trial, AttackOutcome, SpliceVariant};
pub use cost::{run_cost_experiment, CostConfig, CostReport, Role, TrialRecord};
pub use privacy::{permutation_rank, privacy_probe, PrivacyReport, ProbeConfig};

use rand::{CryptoRng, RngCore};

use crate::ciphertext::RecipientSet;
use crate::error::Result;
use crate::params::SystemParams;
use crate::primitives::pke::{pke_gen, RecipientKeyPair};

/// Fresh recipients for one trial. The set is built from all of `members`.
pub(crate) fn fresh_members<R: RngCore + CryptoRng>(
    params: &SystemParams,
    n: usize,
    rng: &mut R,
) -> Result<(Vec<RecipientKeyPair>, RecipientSet)> {
    let members: Vec<_> = (0..n).map(|_| pke_gen(params, rng)).collect();
    let set = RecipientSet::new(members.iter().map(|k| *k.pk()).collect())?;
    Ok((members, set))
}

/// Shortest decimal rendering of a mean that keeps at least one fractional
/// digit (`8.0`, `4.5`, `4.4937`).
pub(crate) fn format_mean(value: f64) -> String {
    let mut s = format!("{value:.4}");
    while s.ends_with('0') && !s.ends_with(".0") {
        s.pop();
    }
    s
}
