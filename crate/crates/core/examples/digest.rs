//! Keyed digest of a message, then a tamper check.

use rossler_machine::digest::{compute_digest, verify_digest, weighted_sum, Digest};
use rossler_machine::keys::generate_key;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let key = generate_key(3)?;
    let msg = b"transfer 100 to alice";

    let tag = compute_digest(msg, &key)?;
    println!("weighted sum {}", weighted_sum(msg));
    println!("digest {tag} ({})", tag.value());

    let parsed: Digest = tag.to_hex().parse()?;
    println!("verify original: {}", verify_digest(msg, &key, &parsed));
    println!("verify tampered: {}", verify_digest(b"transfer 900 to alice", &key, &parsed));
    println!("verify swapped:  {}", verify_digest(b"transfer 010 to alice", &key, &parsed));
    Ok(())
}
