use rand::seq::SliceRandom;
use rand::{CryptoRng, Rng, RngCore};

use crate::ciphertext::{signed_payload, BroadcastCiphertext, RecipientSet, Scheme};
use crate::counters::OpCounters;
use crate::error::Result;
use crate::params::SystemParams;
use crate::primitives::ots::ots_gen;
use crate::primitives::pke::RejectMode;
use crate::primitives::sig::sig_gen;
use crate::primitives::sym::SymmetricKey;
use crate::{decrypt_any, improved, original};

use super::fresh_members;

/// What one victim did with one adversarial ciphertext.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AttackOutcome {
    pub attack_name: String,
    pub target: Scheme,
    recovered: Option<Vec<u8>>,
    pub counters: OpCounters,
}

impl AttackOutcome {
    pub const CSV_HEADER: &'static str = "attack,scheme,accepted,recovered_len,pke_dec,ots_verify,sig_verify,sym_dec";

    pub fn observe(attack_name: impl Into<String>, target: Scheme, result: Option<Vec<u8>>, counters: OpCounters) -> Self {
        AttackOutcome { attack_name: attack_name.into(), target, recovered: result, counters }
    }

    pub fn accepted_by_recipient(&self) -> bool {
        self.recovered.is_some()
    }

    pub fn recovered_message(&self) -> Option<&[u8]> {
        self.recovered.as_deref()
    }

    pub fn to_text(&self) -> String {
        let verdict = if self.accepted_by_recipient() { "ACCEPTED" } else { "REJECTED" };
        let recovered = self.recovered.as_ref().map_or_else(|| "-".to_string(), |m| format!("{} bytes", m.len()));
        format!(
            "attack={} scheme={} verdict={} recovered={} counters: {}",
            self.attack_name, self.target, verdict, recovered, self.counters
        )
    }

    pub fn to_csv_row(&self) -> String {
        let c = &self.counters;
        format!(
            "{},{},{},{},{},{},{},{}",
            self.attack_name,
            self.target,
            self.accepted_by_recipient(),
            self.recovered.as_ref().map_or(0, Vec::len),
            c.pke_dec(),
            c.ots_verify(),
            c.sig_verify(),
            c.sym_dec()
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpliceVariant {
    /// Reuse the honest `σ` over the new body.
    CopySignature,
    /// Sign the new body under a fresh key the adversary owns.
    ResignFreshKey,
}

impl SpliceVariant {
    pub fn name(self) -> &'static str {
        match self {
            SpliceVariant::CopySignature => "copy-sig",
            SpliceVariant::ResignFreshKey => "resign",
        }
    }
}

/// The adversary knows only the published recipient keys and runs the
/// honest encryptor with keys of its own.
///
/// For [`Scheme::Original`] that is the whole attack: nothing in the
/// ciphertext ties it to any broadcaster. For [`Scheme::Improved`] the
/// adversary signs with a fresh broadcaster key pair, since it cannot
/// replace the `pk_B` recipients already trust.
pub fn forge_origin<R: RngCore + CryptoRng>(
    scheme: Scheme,
    params: &SystemParams,
    recipients: &RecipientSet,
    adversary_message: &[u8],
    rng: &mut R,
) -> Result<BroadcastCiphertext> {
    let mut scratch = OpCounters::new();
    match scheme {
        Scheme::Original => original::encrypt(params, recipients, adversary_message, rng, &mut scratch),
        Scheme::Improved => {
            let impostor = sig_gen(params, rng);
            improved::encrypt(params, recipients, adversary_message, &impostor, rng, &mut scratch)
        }
    }
}

/// Builds `C'` from every component of an honest `C`, a fresh `C2'`
/// carrying `adversary_message` under a key the adversary chose, and a `σ'`
/// per `variant`.
pub fn splice_component<R: RngCore + CryptoRng>(
    params: &SystemParams,
    honest: &BroadcastCiphertext,
    adversary_message: &[u8],
    variant: SpliceVariant,
    rng: &mut R,
) -> Result<BroadcastCiphertext> {
    let mut scratch = OpCounters::new();
    let mut components = honest.components().to_vec();
    components.shuffle(rng);
    let c2 = SymmetricKey::generate(rng).encrypt(adversary_message, rng, &mut scratch);
    let sigma = match variant {
        SpliceVariant::CopySignature => honest.sigma().to_vec(),
        SpliceVariant::ResignFreshKey => {
            let body = signed_payload(&components, &c2);
            match honest.scheme() {
                Scheme::Original => ots_gen(params, rng, &mut scratch).sign(&body, &mut scratch)?.into_bytes(),
                Scheme::Improved => sig_gen(params, rng).sign(&body, &mut scratch),
            }
        }
    };
    BroadcastCiphertext::from_parts(honest.scheme(), sigma, components, c2)
}

/// One forged-origin trial: an honest world of `n` recipients (and, for the
/// improved scheme, an honest broadcaster whose `pk_B` they trust), an
/// adversarial broadcast, and one randomly chosen member decrypting it.
pub fn forge_origin_trial<R: RngCore + CryptoRng>(
    scheme: Scheme,
    n: usize,
    mode: RejectMode,
    rng: &mut R,
) -> Result<AttackOutcome> {
    let params = SystemParams::default();
    let (members, set) = fresh_members(&params, n, rng)?;
    let trusted = sig_gen(&params, rng).public_key();
    let forged = forge_origin(scheme, &params, &set, b"adversary-chosen broadcast", rng)?;

    let victim = &members[rng.gen_range(0..n)];
    let mut counters = OpCounters::new();
    let result = decrypt_any(victim.sk(), Some(&trusted), &forged, mode, &mut counters);
    Ok(AttackOutcome::observe("forge-origin", scheme, result, counters))
}

/// One splice trial: honest broadcast to `n` members, spliced per
/// `variant`, then every member tries to decrypt. One outcome per member.
pub fn splice_trial<R: RngCore + CryptoRng>(
    scheme: Scheme,
    variant: SpliceVariant,
    n: usize,
    mode: RejectMode,
    rng: &mut R,
) -> Result<Vec<AttackOutcome>> {
    let params = SystemParams::default();
    let (members, set) = fresh_members(&params, n, rng)?;
    let broadcaster = sig_gen(&params, rng);
    let mut scratch = OpCounters::new();
    let honest = match scheme {
        Scheme::Original => original::encrypt(&params, &set, b"honest broadcast", rng, &mut scratch)?,
        Scheme::Improved => improved::encrypt(&params, &set, b"honest broadcast", &broadcaster, rng, &mut scratch)?,
    };
    let spliced = splice_component(&params, &honest, b"spliced payload", variant, rng)?;

    let trusted = broadcaster.public_key();
    let name = format!("splice-{}", variant.name());
    Ok(members
        .iter()
        .map(|m| {
            let mut counters = OpCounters::new();
            let result = decrypt_any(m.sk(), Some(&trusted), &spliced, mode, &mut counters);
            AttackOutcome::observe(name.clone(), scheme, result, counters)
        })
        .collect())
}
