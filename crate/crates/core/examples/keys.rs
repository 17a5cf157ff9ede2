//! Generate, validate, save and reload a key.
//!
//! cargo run --example keys -- [seed]

use rossler_machine::cli::key_fingerprint;
use rossler_machine::keys::{generate_key, validate_key, KeyFailure, RosslerKey};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let seed: u64 = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(2024);

    let key = generate_key(seed)?;
    println!("seed {seed} -> {key:?}");
    println!("fingerprint {}", key_fingerprint(&key));

    let bytes = key.to_bytes();
    println!("{} bytes: {:02x?}", bytes.len(), &bytes[..8]);
    let back = RosslerKey::from_bytes(&bytes)?;
    assert_eq!(back, key);

    let report = validate_key(&key);
    println!("valid: {}", report.is_valid());

    // A step this large blows up, so the key is rejected.
    let bad = RosslerKey { h: 10.0, ..key };
    match validate_key(&bad).failure {
        Some(KeyFailure::Divergent { byte, step }) => {
            println!("h = 10 rejected: byte {byte} diverges at step {step}")
        }
        other => println!("h = 10: {other:?}"),
    }
    Ok(())
}
