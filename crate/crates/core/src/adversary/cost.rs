use std::fmt::Write as _;

use num_rational::Ratio;
use rand::{CryptoRng, Rng, RngCore};

use crate::ciphertext::Scheme;
use crate::counters::{Op, OpCounters};
use crate::error::{Error, Result};
use crate::params::SystemParams;
use crate::primitives::pke::{pke_gen, RejectMode};
use crate::primitives::sig::sig_gen;
use crate::{improved, original};

use super::{format_mean, fresh_members};

pub const MIN_TRIALS: usize = 100;
pub const MAX_RECIPIENTS: usize = 32;

const MESSAGE: &[u8] = b"fixed broadcast used by every cost-experiment trial";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Role {
    /// A uniformly chosen member of the recipient set.
    Member,
    NonMember,
}

impl Role {
    pub fn name(self) -> &'static str {
        match self {
            Role::Member => "member",
            Role::NonMember => "nonmember",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CostConfig {
    pub scheme: Scheme,
    pub n: usize,
    pub role: Role,
    pub mode: RejectMode,
    pub trials: usize,
}

impl CostConfig {
    pub fn validate(&self) -> Result<()> {
        if !(1..=MAX_RECIPIENTS).contains(&self.n) {
            return Err(Error::InvalidConfig(format!("n must be in 1..={MAX_RECIPIENTS}, got {}", self.n)));
        }
        if self.trials < MIN_TRIALS {
            return Err(Error::InvalidConfig(format!("at least {MIN_TRIALS} trials required, got {}", self.trials)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrialRecord {
    pub trial: usize,
    pub counters: OpCounters,
    pub recovered: bool,
}

impl TrialRecord {
    /// Header matches other than the one that opened `C2`.
    pub fn false_header_matches(&self) -> u64 {
        self.counters.header_match() - u64::from(self.recovered && self.counters.header_match() > 0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CostReport {
    pub config: CostConfig,
    pub records: Vec<TrialRecord>,
}

impl CostReport {
    pub const CSV_HEADER: &'static str = "scheme,n,role,mode,trial,pke_dec,ots_verify,sig_verify,sym_dec";
    const CSV_OPS: [Op; 4] = [Op::PkeDec, Op::OtsVerify, Op::SigVerify, Op::SymDec];

    pub fn trials(&self) -> usize {
        self.records.len()
    }

    /// Exact mean of one counter over all trials.
    pub fn mean(&self, op: Op) -> Ratio<u64> {
        let total: u64 = self.records.iter().map(|r| r.counters.get(op)).sum();
        Ratio::new(total, self.trials() as u64)
    }

    pub fn mean_f64(&self, op: Op) -> f64 {
        let m = self.mean(op);
        *m.numer() as f64 / *m.denom() as f64
    }

    pub fn recovered(&self) -> usize {
        self.records.iter().filter(|r| r.recovered).count()
    }

    pub fn header_false_matches(&self) -> u64 {
        self.records.iter().map(TrialRecord::false_header_matches).sum()
    }

    fn row_prefix(&self) -> String {
        let c = &self.config;
        format!("{},{},{},{}", c.scheme, c.n, c.role.name(), c.mode.name())
    }

    /// One row per trial in documented column order, then a `mean` row.
    pub fn to_csv(&self) -> String {
        let prefix = self.row_prefix();
        let mut out = String::from(Self::CSV_HEADER);
        out.push('\n');
        for r in &self.records {
            let _ = write!(out, "{prefix},{}", r.trial);
            for op in Self::CSV_OPS {
                let _ = write!(out, ",{}", r.counters.get(op));
            }
            out.push('\n');
        }
        let _ = write!(out, "{prefix},mean");
        for op in Self::CSV_OPS {
            let _ = write!(out, ",{}", format_mean(self.mean_f64(op)));
        }
        out.push('\n');
        out
    }

    pub fn to_text(&self) -> String {
        let c = &self.config;
        let mut out = format!(
            "cost scheme={} n={} role={} mode={} trials={}\n",
            c.scheme,
            c.n,
            c.role.name(),
            c.mode.name(),
            self.trials()
        );
        for op in Op::ALL {
            let m = self.mean(op);
            let _ = writeln!(out, "  mean {:<12} {:>8}  ({}/{})", op.name(), format_mean(self.mean_f64(op)), m.numer(), m.denom());
        }
        let _ = writeln!(out, "  recovered    {}/{}", self.recovered(), self.trials());
        let _ = writeln!(out, "  header false matches {}", self.header_false_matches());
        out
    }
}

/// Each trial: fresh recipients (and broadcaster), one encryption of a fixed
/// message, one decryption by the designated recipient with its own
/// counters.
pub fn run_cost_experiment<R: RngCore + CryptoRng>(config: CostConfig, rng: &mut R) -> Result<CostReport> {
    config.validate()?;
    let params = SystemParams::default();
    let mut records = Vec::with_capacity(config.trials);
    for trial in 1..=config.trials {
        let (members, set) = fresh_members(&params, config.n, rng)?;
        let outsider;
        let designated = match config.role {
            Role::Member => &members[rng.gen_range(0..config.n)],
            Role::NonMember => {
                outsider = pke_gen(&params, rng);
                &outsider
            }
        };

        let mut scratch = OpCounters::new();
        let mut counters = OpCounters::new();
        let result = match config.scheme {
            Scheme::Original => {
                let ct = original::encrypt(&params, &set, MESSAGE, rng, &mut scratch)?;
                original::decrypt(designated.sk(), &ct, config.mode, &mut counters)
            }
            Scheme::Improved => {
                let broadcaster = sig_gen(&params, rng);
                let ct = improved::encrypt(&params, &set, MESSAGE, &broadcaster, rng, &mut scratch)?;
                improved::decrypt(designated.sk(), &broadcaster.public_key(), &ct, config.mode, &mut counters)
            }
        };
        if config.role == Role::Member && result.as_deref() != Some(MESSAGE) {
            return Err(Error::InvalidConfig(format!("trial {trial}: member failed to decrypt")));
        }
        records.push(TrialRecord { trial, counters, recovered: result.is_some() });
    }
    Ok(CostReport { config, records })
}
