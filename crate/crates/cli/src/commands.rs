use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use pbe_core::adversary::{forge_origin, privacy_probe, run_cost_experiment, splice_component, CostConfig, ProbeConfig};
use pbe_core::wire::{KeyFile, KeyMaterial, KeyRole};
use pbe_core::{
    decrypt_any, improved, original, pke_gen, BroadcastCiphertext, BroadcasterKeyPair, BroadcasterPublicKey,
    OpCounters, RecipientPublicKey, RecipientSecretKey, RecipientSet, Scheme, SystemParams,
};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use thiserror::Error;

use crate::cli::{AttackCommand, Cli, Command, FormatArg, VictimArgs};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("rejected: {0}")]
    Rejected(String),
}

impl CliError {
    pub const REJECTED: u8 = 2;
    pub const USAGE: u8 = 64;
    pub const IO: u8 = 74;

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => Self::USAGE,
            CliError::Io { .. } => Self::IO,
            CliError::Rejected(_) => Self::REJECTED,
        }
    }
}

impl From<pbe_core::Error> for CliError {
    fn from(e: pbe_core::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

type CliResult<T = ()> = Result<T, CliError>;

fn is_stdio(path: &Path) -> bool {
    path.as_os_str() == "-"
}

fn read_input(path: &Path) -> CliResult<Vec<u8>> {
    let io_err = |source| CliError::Io { path: path.to_path_buf(), source };
    if is_stdio(path) {
        let mut buf = Vec::new();
        io::stdin().read_to_end(&mut buf).map_err(io_err)?;
        Ok(buf)
    } else {
        fs::read(path).map_err(io_err)
    }
}

fn write_output(path: &Path, bytes: &[u8]) -> CliResult {
    let io_err = |source| CliError::Io { path: path.to_path_buf(), source };
    if is_stdio(path) {
        let mut out = io::stdout().lock();
        out.write_all(bytes).and_then(|_| out.flush()).map_err(io_err)
    } else {
        fs::write(path, bytes).map_err(io_err)
    }
}

fn write_key_file(path: &Path, file: &KeyFile) -> CliResult {
    if file.role().is_secret() && is_stdio(path) {
        return Err(CliError::Usage("secret keys are never written to standard output".into()));
    }
    write_output(path, &file.to_bytes())
}

fn load_key(path: &Path, params: &SystemParams, want: KeyRole) -> CliResult<KeyMaterial> {
    let bytes = read_input(path)?;
    let file = KeyFile::from_bytes(&bytes, params)
        .map_err(|e| CliError::Usage(format!("{}: not a usable key file: {e}", path.display())))?;
    if file.role() != want {
        return Err(CliError::Usage(format!(
            "{}: expected a {} key, found {}",
            path.display(),
            want.name(),
            file.role().name()
        )));
    }
    Ok(file.into_key())
}

fn recipient_public(path: &Path, params: &SystemParams) -> CliResult<RecipientPublicKey> {
    match load_key(path, params, KeyRole::RecipientPublic)? {
        KeyMaterial::RecipientPublic(pk) => Ok(pk),
        _ => unreachable!("role checked by load_key"),
    }
}

fn recipient_secret(path: &Path, params: &SystemParams) -> CliResult<RecipientSecretKey> {
    match load_key(path, params, KeyRole::RecipientSecret)? {
        KeyMaterial::RecipientSecret(sk) => Ok(sk),
        _ => unreachable!("role checked by load_key"),
    }
}

fn broadcaster_public(path: &Path, params: &SystemParams) -> CliResult<BroadcasterPublicKey> {
    match load_key(path, params, KeyRole::BroadcasterPublic)? {
        KeyMaterial::BroadcasterPublic(pk) => Ok(pk),
        _ => unreachable!("role checked by load_key"),
    }
}

fn broadcaster_secret(path: &Path, params: &SystemParams) -> CliResult<BroadcasterKeyPair> {
    match load_key(path, params, KeyRole::BroadcasterSecret)? {
        KeyMaterial::BroadcasterSecret(kp) => Ok(kp),
        _ => unreachable!("role checked by load_key"),
    }
}

fn recipient_set(paths: &[PathBuf], params: &SystemParams) -> CliResult<RecipientSet> {
    let pks = paths.iter().map(|p| recipient_public(p, params)).collect::<CliResult<Vec<_>>>()?;
    Ok(RecipientSet::new(pks)?)
}

fn read_ciphertext(path: &Path) -> CliResult<BroadcastCiphertext> {
    BroadcastCiphertext::from_bytes(&read_input(path)?)
        .map_err(|e| CliError::Rejected(format!("malformed ciphertext: {e}")))
}

pub fn run(cli: Cli) -> CliResult {
    let params = SystemParams::init(cli.level)?;
    let mut rng = match cli.seed {
        Some(seed) => ChaCha20Rng::seed_from_u64(seed),
        None => ChaCha20Rng::from_entropy(),
    };

    match cli.command {
        Command::Keygen(args) => {
            let kp = pke_gen(&params, &mut rng);
            write_key_file(&args.out_secret, &KeyFile::new(&params, KeyMaterial::RecipientSecret(kp.sk().clone())))?;
            write_key_file(&args.out_pub, &KeyFile::new(&params, KeyMaterial::RecipientPublic(*kp.pk())))
        }
        Command::BcastKeygen(args) => {
            let kp = improved::keygen_broadcaster(&params, &mut rng);
            let pk = kp.public_key();
            write_key_file(&args.out_secret, &KeyFile::new(&params, KeyMaterial::BroadcasterSecret(kp)))?;
            write_key_file(&args.out_pub, &KeyFile::new(&params, KeyMaterial::BroadcasterPublic(pk)))
        }
        Command::Encrypt(args) => {
            let set = recipient_set(&args.to, &params)?;
            let message = read_input(&args.input)?;
            let mut counters = OpCounters::new();
            let ct = match (Scheme::from(args.scheme), &args.bcast_key) {
                (Scheme::Original, None) => original::encrypt(&params, &set, &message, &mut rng, &mut counters)?,
                (Scheme::Original, Some(_)) => {
                    return Err(CliError::Usage("--bcast-key is only meaningful for --scheme improved".into()))
                }
                (Scheme::Improved, Some(path)) => {
                    let kp = broadcaster_secret(path, &params)?;
                    improved::encrypt(&params, &set, &message, &kp, &mut rng, &mut counters)?
                }
                (Scheme::Improved, None) => {
                    return Err(CliError::Usage("--scheme improved requires --bcast-key".into()))
                }
            };
            write_output(&args.out, &ct.to_bytes())
        }
        Command::Decrypt(args) => {
            let ct = read_ciphertext(&args.input)?;
            let message = decrypt_with(&args.victim, &params, &ct)?;
            match args.out {
                Some(path) => write_output(&path, &message),
                None => write_output(Path::new("-"), &message),
            }
        }
        Command::Attack(AttackCommand::ForgeOrigin(args)) => {
            let set = recipient_set(&args.to, &params)?;
            let message = read_input(&args.input)?;
            let ct = forge_origin(args.scheme.into(), &params, &set, &message, &mut rng)?;
            write_output(&args.out, &ct.to_bytes())
        }
        Command::Attack(AttackCommand::Splice(args)) => {
            let honest = read_ciphertext(&args.input)?;
            let payload = read_input(&args.payload)?;
            let ct = splice_component(&params, &honest, &payload, args.variant.into(), &mut rng)?;
            write_output(&args.out, &ct.to_bytes())
        }
        Command::Bench(args) => {
            let config = CostConfig {
                scheme: args.scheme.into(),
                n: args.n,
                role: args.role.into(),
                mode: args.mode.into(),
                trials: args.trials,
            };
            let report = run_cost_experiment(config, &mut rng)?;
            let text = match args.format {
                FormatArg::Csv => report.to_csv(),
                FormatArg::Text => report.to_text(),
            };
            write_output(Path::new("-"), text.as_bytes())
        }
        Command::Probe(args) => {
            let config = ProbeConfig {
                scheme: args.scheme.into(),
                n: args.n,
                trials: args.trials,
                message_len: args.message_len,
            };
            let report = privacy_probe(config, &mut rng)?;
            write_output(Path::new("-"), report.to_text().as_bytes())
        }
        Command::Inspect(args) => {
            let ct = read_ciphertext(&args.input)?;
            write_output(Path::new("-"), describe(&ct).as_bytes())
        }
    }
}

fn decrypt_with(victim: &VictimArgs, params: &SystemParams, ct: &BroadcastCiphertext) -> CliResult<Vec<u8>> {
    let sk = recipient_secret(&victim.key, params)?;
    let trusted = match (ct.scheme(), &victim.bcast_pub) {
        (Scheme::Improved, None) => {
            return Err(CliError::Usage("improved-scheme ciphertexts need --bcast-pub".into()));
        }
        (_, Some(path)) => Some(broadcaster_public(path, params)?),
        (Scheme::Original, None) => None,
    };
    let mut counters = OpCounters::new();
    decrypt_any(&sk, trusted.as_ref(), ct, victim.mode.into(), &mut counters)
        .ok_or_else(|| CliError::Rejected(format!("decryption returned ⊥ ({counters})")))
}

fn describe(ct: &BroadcastCiphertext) -> String {
    format!(
        "scheme      {}\nsigma       {} bytes\ncomponents  {} x {} bytes\nc2          {} bytes\ntotal       {} bytes\n",
        ct.scheme(),
        ct.sigma().len(),
        ct.components().len(),
        ct.component_len(),
        ct.c2().len(),
        ct.to_bytes().len()
    )
}
