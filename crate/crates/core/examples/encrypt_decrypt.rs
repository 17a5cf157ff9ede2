//! Round trip a message through the cipher and the RCT1 byte format.

use rossler_machine::cipher::{Ciphertext, Codebook, DecryptMode};
use rossler_machine::keys::generate_key;
use rossler_machine::Error;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let key = generate_key(11)?;
    let codebook = Codebook::build(&key)?;
    let message = b"Meet me under the attractor.";

    let ct = codebook.encrypt(message);
    for (byte, value) in message.iter().zip(ct.values()).take(4) {
        println!("{:?} -> {value}", *byte as char);
    }

    let bytes = ct.to_bytes();
    println!("ciphertext file: {} bytes", bytes.len());
    let parsed = Ciphertext::from_bytes(&bytes)?;
    let plain = codebook.decrypt(&parsed, DecryptMode::Exact)?;
    println!("{}", String::from_utf8_lossy(&plain));

    // Values printed with nine decimals only survive the tolerant mode.
    let rounded: Vec<f64> = ct.values().iter().map(|v| format!("{v:.9}").parse().unwrap()).collect();
    let rounded = Ciphertext::from_values(rounded);
    assert!(matches!(codebook.decrypt(&rounded, DecryptMode::Exact), Err(Error::NoMatch { .. })));
    let plain = codebook.decrypt(&rounded, DecryptMode::Tolerant(1e-8))?;
    assert_eq!(plain, message);

    let other = Codebook::build(&generate_key(12)?)?;
    match other.decrypt(&ct, DecryptMode::Exact) {
        Err(e) => println!("wrong key: {e}"),
        Ok(p) => println!("wrong key produced {p:?}"),
    }
    Ok(())
}
