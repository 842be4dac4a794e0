use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn pbe_cmd(dir: &Path) -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_pbe"));
    cmd.current_dir(dir).env_remove("PBE_SEED");
    cmd
}

fn pbe(dir: &Path, args: &[&str]) -> Output {
    pbe_cmd(dir).args(args).output().expect("spawn pbe")
}

fn ok(dir: &Path, args: &[&str]) -> Output {
    let out = pbe(dir, args);
    assert!(out.status.success(), "pbe {args:?}: {}", String::from_utf8_lossy(&out.stderr));
    out
}

/// Three recipients plus an outsider and a broadcaster key.
fn setup(dir: &Path) {
    for (i, name) in ["alice", "bob", "carol", "eve"].iter().enumerate() {
        let seed = (10 + i).to_string();
        ok(dir, &["--seed", &seed, "keygen", "--out-pub", &format!("{name}.pub"), "--out-secret", &format!("{name}.sec")]);
    }
    ok(dir, &["--seed", "20", "bcast-keygen", "--out-pub", "B.pub", "--out-secret", "B.sec"]);
}

fn encrypt(dir: &Path, scheme: &str, input: &str, out: &str) {
    let mut args = vec!["encrypt", "--scheme", scheme, "--to", "alice.pub", "bob.pub", "carol.pub", "--in", input, "--out", out];
    if scheme == "improved" {
        args.extend(["--bcast-key", "B.sec"]);
    }
    ok(dir, &args);
}

#[test]
fn roundtrip_both_schemes_byte_exact() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    setup(d);
    let msg: Vec<u8> = (0..5000u32).map(|i| (i * 31 % 251) as u8).collect();
    fs::write(d.join("msg.bin"), &msg).unwrap();
    for scheme in ["original", "improved"] {
        encrypt(d, scheme, "msg.bin", "ct");
        for who in ["alice", "bob", "carol"] {
            for mode in ["strict", "permissive"] {
                let out_file = format!("{who}-{mode}.out");
                ok(d, &["decrypt", "--key", &format!("{who}.sec"), "--bcast-pub", "B.pub", "--mode", mode, "--in", "ct", "--out", &out_file]);
                assert_eq!(fs::read(d.join(&out_file)).unwrap(), msg, "{scheme} {who} {mode}");
            }
        }
        let out = pbe(d, &["decrypt", "--key", "eve.sec", "--bcast-pub", "B.pub", "--in", "ct"]);
        assert_eq!(out.status.code(), Some(2), "{scheme} outsider");
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn stdin_stdout_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    setup(d);
    fs::write(d.join("m"), b"piped").unwrap();
    encrypt(d, "original", "m", "-");
    let ct = ok(d, &["encrypt", "--scheme", "original", "--to", "alice.pub", "--in", "m", "--out", "-"]).stdout;
    let mut child = pbe_cmd(d)
        .args(["decrypt", "--key", "alice.sec", "--in", "-"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    use std::io::Write;
    child.stdin.take().unwrap().write_all(&ct).unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    assert_eq!(out.stdout, b"piped");
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    setup(d);
    fs::write(d.join("m"), b"x").unwrap();
    fs::write(d.join("garbage"), b"PBE1\x02junk").unwrap();

    assert_eq!(pbe(d, &["frobnicate"]).status.code(), Some(64));
    assert_eq!(pbe(d, &["--level", "100", "keygen", "--out-pub", "x", "--out-secret", "y"]).status.code(), Some(64));
    assert_eq!(pbe(d, &["bench", "--scheme", "original", "--n", "2", "--role", "member", "--trials", "5"]).status.code(), Some(64));
    assert_eq!(pbe(d, &["encrypt", "--scheme", "improved", "--to", "alice.pub", "--in", "m", "--out", "c"]).status.code(), Some(64));
    assert_eq!(pbe(d, &["decrypt", "--key", "alice.sec", "--in", "garbage"]).status.code(), Some(2));
    assert_eq!(pbe(d, &["decrypt", "--key", "alice.sec", "--in", "missing"]).status.code(), Some(74));
    assert_eq!(pbe(d, &["--help"]).status.code(), Some(0));

    // Keys generated at one level are refused at another.
    encrypt(d, "original", "m", "c");
    assert_eq!(pbe(d, &["--level", "256", "decrypt", "--key", "alice.sec", "--in", "c"]).status.code(), Some(64));
    // Role mismatch: a public key where a secret key is expected.
    assert_eq!(pbe(d, &["decrypt", "--key", "alice.pub", "--in", "c"]).status.code(), Some(64));
}

#[test]
fn secrets_never_on_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let out = pbe(d, &["keygen", "--out-pub", "p", "--out-secret", "-"]);
    assert_eq!(out.status.code(), Some(64));
    assert!(out.stdout.is_empty());
    let out = pbe(d, &["bcast-keygen", "--out-pub", "p", "--out-secret", "-"]);
    assert_eq!(out.status.code(), Some(64));
    assert!(out.stdout.is_empty());
    let out = ok(d, &["keygen", "--out-pub", "-", "--out-secret", "s"]);
    assert!(out.stdout.starts_with(b"PBEK\x01"));
}

#[test]
fn seeded_runs_are_reproducible() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for d in [a.path(), b.path()] {
        setup(d);
        fs::write(d.join("m"), b"same bytes").unwrap();
        ok(d, &["--seed", "42", "encrypt", "--scheme", "original", "--to", "alice.pub", "bob.pub", "--in", "m", "--out", "c1"]);
        let out = pbe_cmd(d)
            .env("PBE_SEED", "42")
            .args(["encrypt", "--scheme", "original", "--to", "alice.pub", "bob.pub", "--in", "m", "--out", "c2"])
            .output()
            .unwrap();
        assert!(out.status.success());
        ok(d, &["encrypt", "--scheme", "original", "--to", "alice.pub", "bob.pub", "--in", "m", "--out", "c3"]);
    }
    let read = |d: &Path, f: &str| fs::read(d.join(f)).unwrap();
    assert_eq!(read(a.path(), "alice.sec"), read(b.path(), "alice.sec"));
    assert_eq!(read(a.path(), "c1"), read(b.path(), "c1"));
    assert_eq!(read(a.path(), "c1"), read(a.path(), "c2"));
    assert_ne!(read(a.path(), "c3"), read(b.path(), "c3"));
}

#[test]
fn forge_origin_asymmetry() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    setup(d);
    fs::write(d.join("spam"), b"buy now").unwrap();
    for (scheme, expected) in [("original", 0), ("improved", 2)] {
        ok(d, &["attack", "forge-origin", "--scheme", scheme, "--to", "alice.pub", "bob.pub", "--in", "spam", "--out", "f"]);
        let out = pbe(d, &["decrypt", "--key", "bob.sec", "--bcast-pub", "B.pub", "--in", "f"]);
        assert_eq!(out.status.code(), Some(expected), "{scheme}");
    }
}

#[test]
fn splice_rejected_by_members() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    setup(d);
    fs::write(d.join("m"), b"honest").unwrap();
    fs::write(d.join("evil"), b"evil").unwrap();
    for scheme in ["original", "improved"] {
        encrypt(d, scheme, "m", "honest.ct");
        for variant in ["copy-sig", "resign"] {
            ok(d, &["attack", "splice", "--variant", variant, "--in", "honest.ct", "--payload", "evil", "--out", "s"]);
            for who in ["alice", "bob", "carol"] {
                let out = pbe(d, &["decrypt", "--key", &format!("{who}.sec"), "--bcast-pub", "B.pub", "--mode", "permissive", "--in", "s"]);
                assert_eq!(out.status.code(), Some(2), "{scheme} {variant} {who}");
            }
        }
    }
}

#[test]
fn bench_reports_nonmember_cost() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let out = ok(d, &["--seed", "1", "bench", "--scheme", "original", "--n", "8", "--role", "nonmember", "--trials", "100"]);
    let csv = String::from_utf8(out.stdout).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("scheme,n,role,mode,trial,pke_dec,ots_verify,sig_verify,sym_dec"));
    assert_eq!(csv.lines().count(), 102);
    assert_eq!(csv.lines().last(), Some("original,8,nonmember,permissive,mean,8.0,8.0,0.0,0.0"));

    let text = String::from_utf8(ok(d, &["bench", "--scheme", "improved", "--n", "8", "--role", "nonmember", "--format", "text"]).stdout).unwrap();
    assert!(text.lines().any(|l| l.split_whitespace().collect::<Vec<_>>() == ["mean", "sig_verify", "1.0", "(1/1)"]), "{text}");
}

#[test]
fn probe_and_inspect() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let probe = String::from_utf8(ok(d, &["--seed", "3", "probe", "--scheme", "improved", "--trials", "600"]).stdout).unwrap();
    assert!(probe.contains("p="), "{probe}");

    setup(d);
    fs::write(d.join("m"), b"hello").unwrap();
    encrypt(d, "improved", "m", "c");
    let text = String::from_utf8(ok(d, &["inspect", "--in", "c"]).stdout).unwrap();
    assert!(text.contains("scheme      improved"), "{text}");
    assert!(text.contains("components  3 x 128 bytes"), "{text}");
    assert!(text.contains("sigma       64 bytes"), "{text}");
}
