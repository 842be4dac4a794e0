use std::collections::BTreeSet;
use std::fmt::Write as _;

use memchr::memmem;
use rand::{CryptoRng, RngCore};
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::ciphertext::Scheme;
use crate::counters::OpCounters;
use crate::error::{Error, Result};
use crate::params::SystemParams;
use crate::primitives::pke::{pke_dec, RejectMode};
use crate::primitives::sig::sig_gen;
use crate::{improved, original};

use super::fresh_members;

pub const MIN_ORDER_N: usize = 2;
pub const MAX_ORDER_N: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProbeConfig {
    pub scheme: Scheme,
    pub n: usize,
    pub trials: usize,
    pub message_len: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PrivacyReport {
    pub config: ProbeConfig,
    /// Every serialized ciphertext length observed; one value means the
    /// length depends only on `(n, |M|)`.
    pub ciphertext_lengths: BTreeSet<usize>,
    /// How often each of the `n!` component orderings occurred, indexed by
    /// [`permutation_rank`].
    pub ordering_counts: Vec<u64>,
    pub chi_square: f64,
    pub p_value: f64,
    /// Recipient public keys found verbatim inside a serialized ciphertext.
    pub pk_occurrences: u64,
}

impl PrivacyReport {
    pub fn lengths_uniform(&self) -> bool {
        self.ciphertext_lengths.len() == 1
    }

    pub fn to_text(&self) -> String {
        let c = &self.config;
        let mut out = format!("privacy scheme={} n={} trials={} |M|={}\n", c.scheme, c.n, c.trials, c.message_len);
        let lengths: Vec<String> = self.ciphertext_lengths.iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "  ciphertext lengths {{{}}} uniform={}", lengths.join(","), self.lengths_uniform());
        let _ = writeln!(
            out,
            "  ordering chi-square {:.3} over {} cells, p={:.4}",
            self.chi_square,
            self.ordering_counts.len(),
            self.p_value
        );
        let _ = writeln!(out, "  recipient pk occurrences {}", self.pk_occurrences);
        out
    }
}

/// Lexicographic rank of a permutation of `0..perm.len()` (Lehmer code).
pub fn permutation_rank(perm: &[usize]) -> usize {
    let n = perm.len();
    let mut rank = 0;
    for i in 0..n {
        let smaller_later = perm[i + 1..].iter().filter(|&&x| x < perm[i]).count();
        rank = rank * (n - i) + smaller_later;
    }
    rank
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// Per trial: a fresh recipient set, one broadcast of a `message_len`-byte
/// message, the component ordering recovered by letting each member find
/// its own component, and a scan of the serialized bytes for every
/// recipient key.
pub fn privacy_probe<R: RngCore + CryptoRng>(config: ProbeConfig, rng: &mut R) -> Result<PrivacyReport> {
    if !(MIN_ORDER_N..=MAX_ORDER_N).contains(&config.n) {
        return Err(Error::InvalidConfig(format!(
            "n must be in {MIN_ORDER_N}..={MAX_ORDER_N} for the ordering test, got {}",
            config.n
        )));
    }
    if config.trials == 0 {
        return Err(Error::InvalidConfig("at least one trial required".into()));
    }
    let params = SystemParams::default();
    let cells = factorial(config.n);
    let mut ordering_counts = vec![0u64; cells];
    let mut ciphertext_lengths = BTreeSet::new();
    let mut pk_occurrences = 0;
    let mut message = vec![0u8; config.message_len];
    let mut scratch = OpCounters::new();

    for _ in 0..config.trials {
        let (members, set) = fresh_members(&params, config.n, rng)?;
        rng.fill_bytes(&mut message);
        let ct = match config.scheme {
            Scheme::Original => original::encrypt(&params, &set, &message, rng, &mut scratch)?,
            Scheme::Improved => improved::encrypt(&params, &set, &message, &sig_gen(&params, rng), rng, &mut scratch)?,
        };
        let bytes = ct.to_bytes();
        ciphertext_lengths.insert(bytes.len());

        let mut perm = Vec::with_capacity(config.n);
        for m in &members {
            let slot = ct
                .components()
                .iter()
                .position(|c| matches!(pke_dec(m.sk(), c, RejectMode::Strict, &mut scratch), Ok(Some(_))))
                .ok_or_else(|| Error::InvalidConfig("member could not find its component".into()))?;
            perm.push(slot);
        }
        ordering_counts[permutation_rank(&perm)] += 1;

        pk_occurrences += members.iter().filter(|m| memmem::find(&bytes, m.pk().as_bytes()).is_some()).count() as u64;
    }

    let expected = config.trials as f64 / cells as f64;
    let chi_square: f64 = ordering_counts.iter().map(|&o| (o as f64 - expected).powi(2) / expected).sum();
    let p_value = ChiSquared::new((cells - 1) as f64)
        .map(|d| d.sf(chi_square))
        .map_err(|e| Error::InvalidConfig(format!("chi-square distribution: {e}")))?;

    Ok(PrivacyReport { config, ciphertext_lengths, ordering_counts, chi_square, p_value, pk_occurrences })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    #[test]
    fn rank_is_a_bijection_onto_factorial_range() {
        // Brute force over all permutations of 0..4.
        let mut ranks = BTreeSet::new();
        let items = [0usize, 1, 2, 3];
        for a in items {
            for b in items {
                for c in items {
                    for d in items {
                        let p = [a, b, c, d];
                        if BTreeSet::from(p).len() == 4 {
                            ranks.insert(permutation_rank(&p));
                        }
                    }
                }
            }
        }
        assert_eq!(ranks, (0..24).collect());
        assert_eq!(permutation_rank(&[0, 1, 2]), 0);
        assert_eq!(permutation_rank(&[2, 1, 0]), 5);
        assert_eq!(permutation_rank(&[1, 0, 2]), 2);
    }

    #[test]
    fn rejects_out_of_range_n() {
        let mut rng = ChaCha20Rng::seed_from_u64(0);
        for n in [0, 1, 9] {
            let cfg = ProbeConfig { scheme: Scheme::Improved, n, trials: 10, message_len: 4 };
            assert!(privacy_probe(cfg, &mut rng).is_err());
        }
    }

    #[test]
    fn small_improved_probe() {
        let mut rng = ChaCha20Rng::seed_from_u64(31);
        let cfg = ProbeConfig { scheme: Scheme::Improved, n: 2, trials: 400, message_len: 16 };
        let r = privacy_probe(cfg, &mut rng).unwrap();
        assert!(r.lengths_uniform());
        assert_eq!(r.ordering_counts.iter().sum::<u64>(), 400);
        assert_eq!(r.pk_occurrences, 0);
        assert!(r.p_value > 0.001, "{}", r.to_text());
    }
}
