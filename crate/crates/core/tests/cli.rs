//! Drives the `rossler` binary end to end and checks outputs, file formats
//! and exit codes.

mod common;

use std::fs;
use std::path::Path;

use rossler_machine::export::read_trajectory_csv;
use rossler_machine::keys::{self, RosslerKey};
use rossler_machine::rossler::{run_machine_trajectory, SystemParams, REFERENCE_INIT};

use common::rossler;

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn write_key(dir: &Path, seed: u64) -> std::path::PathBuf {
    let path = dir.join(format!("k{seed}.rkey"));
    let out = rossler(&["keygen", "--seed", &seed.to_string(), "--out", s(&path)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    path
}

#[test]
fn simulate_defaults_round_trip_through_csv() {
    let out = rossler(&["simulate"]);
    assert_eq!(out.status.code(), Some(0));
    let rows = read_trajectory_csv(out.stdout.as_slice()).unwrap();
    assert_eq!(rows.len(), 501);

    let traj = run_machine_trajectory(&SystemParams::CANONICAL, REFERENCE_INIT, 500, 0.1).unwrap();
    for (n, (t, state)) in rows.iter().enumerate() {
        assert_eq!(t.to_bits(), (n as f64 * 0.1).to_bits());
        assert_eq!(state.map(f64::to_bits), traj.states[n].map(f64::to_bits));
    }
}

#[test]
fn simulate_flags_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("traj.csv");
    let out = rossler(&[
        "simulate", "--a", "0.1", "--b", "0.1", "--c", "14", "--x0", "1", "--y0", "-1", "--z0", "0.5", "--steps", "20",
        "--h", "0.05", "--out", s(&path),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let rows = read_trajectory_csv(fs::read(&path).unwrap().as_slice()).unwrap();
    assert_eq!(rows.len(), 21);
    assert_eq!(rows[0].1, [1.0, -1.0, 0.5]);

    let single = rossler(&["simulate", "--steps", "0"]);
    assert_eq!(String::from_utf8(single.stdout).unwrap(), "t,x,y,z\n0,0.0001,0.0001,0.0001\n");
}

#[test]
fn simulate_error_codes() {
    assert_eq!(rossler(&["simulate", "--h", "0"]).status.code(), Some(2));
    assert_eq!(rossler(&["simulate", "--bogus"]).status.code(), Some(2));
    assert_eq!(rossler(&["simulate", "--h", "10"]).status.code(), Some(1));
    let dir = tempfile::tempdir().unwrap();
    let unwritable = dir.path().join("missing/dir/out.csv");
    assert_eq!(rossler(&["simulate", "--out", s(&unwritable)]).status.code(), Some(2));
}

#[test]
fn keygen_is_reproducible_and_valid() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.rkey"), dir.path().join("b.rkey"));
    let out_a = rossler(&["keygen", "--seed", "0", "--out", s(&a)]);
    let out_b = rossler(&["keygen", "--seed", "0", "--out", s(&b)]);
    assert!(out_a.status.success() && out_b.status.success());
    let bytes = fs::read(&a).unwrap();
    assert_eq!(bytes.len(), 61);
    assert_eq!(bytes, fs::read(&b).unwrap());
    assert_eq!(out_a.stdout, out_b.stdout);

    let key = RosslerKey::from_bytes(&bytes).unwrap();
    assert_eq!(key, keys::generate_key(0).unwrap());
    assert!(keys::validate_key(&key).is_valid());
    let fp = String::from_utf8(out_a.stdout).unwrap();
    assert_eq!(fp.trim_end(), rossler_machine::cli::key_fingerprint(&key));
}

#[test]
fn keygen_from_entropy_reports_seed() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("k.rkey");
    let out = rossler(&["keygen", "--out", s(&path)]);
    assert!(out.status.success());
    let err = String::from_utf8(out.stderr).unwrap();
    let seed: u64 = err.trim().strip_prefix("seed: ").unwrap().parse().unwrap();
    assert_eq!(RosslerKey::from_bytes(&fs::read(&path).unwrap()).unwrap(), keys::generate_key(seed).unwrap());

    let bad = dir.path().join("no/such/dir/k.rkey");
    assert_eq!(rossler(&["keygen", "--seed", "1", "--out", s(&bad)]).status.code(), Some(2));
}

#[test]
fn encrypt_decrypt_files() {
    let dir = tempfile::tempdir().unwrap();
    let key = write_key(dir.path(), 11);
    let plain = dir.path().join("plain.bin");
    let ct = dir.path().join("plain.rct");
    let back = dir.path().join("back.bin");
    let data: Vec<u8> = (0..3000u32).map(|i| (i * 31 % 256) as u8).collect();
    fs::write(&plain, &data).unwrap();

    assert!(rossler(&["encrypt", "--key", s(&key), "--in", s(&plain), "--out", s(&ct)]).status.success());
    assert_eq!(fs::metadata(&ct).unwrap().len(), 13 + 8 * data.len() as u64);
    assert!(rossler(&["decrypt", "--key", s(&key), "--in", s(&ct), "--out", s(&back)]).status.success());
    assert_eq!(fs::read(&back).unwrap(), data);

    let empty = dir.path().join("empty");
    fs::write(&empty, b"").unwrap();
    assert!(rossler(&["encrypt", "--key", s(&key), "--in", s(&empty), "--out", s(&ct)]).status.success());
    assert_eq!(fs::read(&ct).unwrap().len(), 13);
}

#[test]
fn decrypt_failures() {
    let dir = tempfile::tempdir().unwrap();
    let key = write_key(dir.path(), 11);
    let other = write_key(dir.path(), 12);
    let plain = dir.path().join("plain.txt");
    let ct = dir.path().join("plain.rct");
    let back = dir.path().join("back.txt");
    fs::write(&plain, b"attack at dawn").unwrap();
    assert!(rossler(&["encrypt", "--key", s(&key), "--in", s(&plain), "--out", s(&ct)]).status.success());

    let wrong = rossler(&["decrypt", "--key", s(&other), "--in", s(&ct), "--out", s(&back)]);
    assert_eq!(wrong.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&wrong.stderr).contains("position 0"));

    let mut bytes = fs::read(&ct).unwrap();
    bytes.truncate(bytes.len() - 3);
    fs::write(&ct, &bytes).unwrap();
    assert_eq!(rossler(&["decrypt", "--key", s(&key), "--in", s(&ct), "--out", s(&back)]).status.code(), Some(2));

    let bad_key = dir.path().join("bad.rkey");
    fs::write(&bad_key, [0u8; 60]).unwrap();
    assert_eq!(rossler(&["encrypt", "--key", s(&bad_key), "--in", s(&plain), "--out", s(&ct)]).status.code(), Some(2));

    let divergent = dir.path().join("div.rkey");
    fs::write(&divergent, RosslerKey { h: 10.0, ..RosslerKey::REFERENCE }.to_bytes()).unwrap();
    assert_eq!(rossler(&["encrypt", "--key", s(&divergent), "--in", s(&plain), "--out", s(&ct)]).status.code(), Some(2));
}

#[test]
fn tolerant_decrypt_flag() {
    let dir = tempfile::tempdir().unwrap();
    let key = write_key(dir.path(), 5);
    let plain = dir.path().join("p");
    let ct = dir.path().join("c");
    let back = dir.path().join("b");
    fs::write(&plain, b"xyz").unwrap();
    assert!(rossler(&["encrypt", "--key", s(&key), "--in", s(&plain), "--out", s(&ct)]).status.success());
    let out = rossler(&["decrypt", "--key", s(&key), "--in", s(&ct), "--out", s(&back), "--tolerance", "0"]);
    assert!(out.status.success());
    assert_eq!(fs::read(&back).unwrap(), b"xyz");
    let huge = rossler(&["decrypt", "--key", s(&key), "--in", s(&ct), "--out", s(&back), "--tolerance", "1e9"]);
    assert_eq!(huge.status.code(), Some(1));
}

#[test]
fn digest_and_verify() {
    let dir = tempfile::tempdir().unwrap();
    let key = write_key(dir.path(), 3);
    let msg = dir.path().join("msg");
    fs::write(&msg, b"transfer 100 to alice").unwrap();

    let out = rossler(&["digest", "--key", s(&key), "--in", s(&msg)]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.len(), 17);
    assert!(text.ends_with('\n'));
    let hex = text.trim_end();
    assert!(hex.bytes().all(|c| c.is_ascii_digit() || (b'a'..=b'f').contains(&c)));

    let ok = rossler(&["verify", "--key", s(&key), "--in", s(&msg), "--digest", hex]);
    assert_eq!(ok.status.code(), Some(0));

    fs::write(&msg, b"transfer 900 to alice").unwrap();
    let tampered = rossler(&["verify", "--key", s(&key), "--in", s(&msg), "--digest", hex]);
    assert_eq!(tampered.status.code(), Some(1));

    assert_eq!(rossler(&["verify", "--key", s(&key), "--in", s(&msg), "--digest", &hex[..15]]).status.code(), Some(2));
    assert_eq!(
        rossler(&["verify", "--key", s(&key), "--in", s(&msg), "--digest", "zzzzzzzzzzzzzzzz"]).status.code(),
        Some(2)
    );
}

#[test]
fn keyspace_command() {
    let out = rossler(&["keyspace", "--bits", "16"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "2^112\n");
    assert_eq!(String::from_utf8(rossler(&["keyspace", "--bits", "1"]).stdout).unwrap(), "2^7\n");
    assert_eq!(rossler(&["keyspace", "--bits", "0"]).status.code(), Some(2));
}
