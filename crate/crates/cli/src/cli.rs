use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pbe_core::adversary::{Role, SpliceVariant};
use pbe_core::{RejectMode, Scheme};

#[derive(Debug, Parser)]
#[command(name = "pbe", version, about = "Private broadcast encryption: keys, broadcasts, attacks and cost benchmarks")]
pub struct Cli {
    /// Seed for every random choice; makes all commands deterministic.
    #[arg(long, global = true, env = "PBE_SEED")]
    pub seed: Option<u64>,

    /// Security level the key files are bound to.
    #[arg(long, global = true, default_value_t = 128)]
    pub level: u32,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a recipient key pair.
    Keygen(KeygenArgs),
    /// Generate a broadcaster signing key pair.
    BcastKeygen(KeygenArgs),
    /// Encrypt a message to a set of recipients.
    Encrypt(EncryptArgs),
    /// Decrypt a broadcast (exit 2 when rejected).
    Decrypt(DecryptArgs),
    /// Produce adversarial ciphertexts.
    #[command(subcommand)]
    Attack(AttackCommand),
    /// Run a counter-trace cost experiment and print the table.
    Bench(BenchArgs),
    /// Check ciphertext length uniformity, ordering uniformity and key leakage.
    Probe(ProbeArgs),
    /// Print the structure of a ciphertext.
    Inspect(InspectArgs),
}

#[derive(Debug, Args)]
pub struct KeygenArgs {
    /// Public key file ("-" for standard output).
    #[arg(long)]
    pub out_pub: PathBuf,
    /// Secret key file; never standard output.
    #[arg(long)]
    pub out_secret: PathBuf,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SchemeArg {
    Original,
    Improved,
}

impl From<SchemeArg> for Scheme {
    fn from(s: SchemeArg) -> Self {
        match s {
            SchemeArg::Original => Scheme::Original,
            SchemeArg::Improved => Scheme::Improved,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ModeArg {
    Strict,
    Permissive,
}

impl From<ModeArg> for RejectMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Strict => RejectMode::Strict,
            ModeArg::Permissive => RejectMode::Permissive,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum RoleArg {
    Member,
    Nonmember,
}

impl From<RoleArg> for Role {
    fn from(r: RoleArg) -> Self {
        match r {
            RoleArg::Member => Role::Member,
            RoleArg::Nonmember => Role::NonMember,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum VariantArg {
    CopySig,
    Resign,
}

impl From<VariantArg> for SpliceVariant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::CopySig => SpliceVariant::CopySignature,
            VariantArg::Resign => SpliceVariant::ResignFreshKey,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, ValueEnum)]
pub enum FormatArg {
    #[default]
    Csv,
    Text,
}

#[derive(Debug, Args)]
pub struct EncryptArgs {
    #[arg(long, value_enum)]
    pub scheme: SchemeArg,
    /// Recipient public key files.
    #[arg(long, num_args = 1.., required = true)]
    pub to: Vec<PathBuf>,
    /// Broadcaster secret key file (improved scheme).
    #[arg(long)]
    pub bcast_key: Option<PathBuf>,
    /// Message file ("-" for standard input).
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Ciphertext file ("-" for standard output).
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct VictimArgs {
    /// Recipient secret key file.
    #[arg(long)]
    pub key: PathBuf,
    /// Trusted broadcaster public key file (improved scheme).
    #[arg(long)]
    pub bcast_pub: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "strict")]
    pub mode: ModeArg,
}

#[derive(Debug, Args)]
pub struct DecryptArgs {
    #[command(flatten)]
    pub victim: VictimArgs,
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Plaintext destination; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum AttackCommand {
    /// Encrypt an adversary-chosen message to published keys with the
    /// adversary's own signing key.
    ForgeOrigin(ForgeArgs),
    /// Reuse the components of an honest ciphertext under a new body.
    Splice(SpliceArgs),
}

#[derive(Debug, Args)]
pub struct ForgeArgs {
    #[arg(long, value_enum)]
    pub scheme: SchemeArg,
    #[arg(long, num_args = 1.., required = true)]
    pub to: Vec<PathBuf>,
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct SpliceArgs {
    #[arg(long, value_enum)]
    pub variant: VariantArg,
    /// Honest ciphertext to splice from.
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Adversary payload file.
    #[arg(long)]
    pub payload: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, value_enum)]
    pub scheme: SchemeArg,
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum)]
    pub role: RoleArg,
    #[arg(long, value_enum, default_value = "permissive")]
    pub mode: ModeArg,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: FormatArg,
}

#[derive(Debug, Args)]
pub struct ProbeArgs {
    #[arg(long, value_enum)]
    pub scheme: SchemeArg,
    #[arg(long, default_value_t = 3)]
    pub n: usize,
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    #[arg(long, default_value_t = 64)]
    pub message_len: usize,
}

#[derive(Debug, Args)]
pub struct InspectArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
}
