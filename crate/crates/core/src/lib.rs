//! The Rössler dynamical machine and two keyed schemes built on it.
//!
//! - [`ode`]: fixed-step RK4 with a bit-reproducible evaluation order.
//! - [`rossler`]: the Rössler vector field and the machine
//!   `(a, b, c) × (x0, y0, z0) × N -> final state`.
//! - [`keys`]: the seven-component shared key, its generator, validator and
//!   61-byte file format.
//! - [`cipher`]: per-byte endpoint encryption with codebook decryption.
//! - [`digest`]: positional weighted-sum digest.
//! - [`export`]: round-trip-exact trajectory CSV.
//! - [`cli`]: the `rossler` command-line front end.
//!
//! The schemes are a faithful, deterministic testbed. They are not secure:
//! the cipher is a byte substitution and the digest is 64 bits wide.
//!
//! ```
//! use rossler_machine::{cipher, digest, keys};
//!
//! let key = keys::generate_key(7).unwrap();
//! let ct = cipher::encrypt(b"attack at dawn", &key).unwrap();
//! let pt = cipher::decrypt(&ct, &key, cipher::DecryptMode::Exact).unwrap();
//! assert_eq!(pt, b"attack at dawn");
//!
//! let tag = digest::compute_digest(b"attack at dawn", &key).unwrap();
//! assert!(digest::verify_digest(b"attack at dawn", &key, &tag));
//! ```

pub mod cipher;
pub mod cli;
pub mod digest;
pub mod error;
pub mod export;
pub mod keys;
pub mod ode;
pub mod rossler;

pub use cipher::{decrypt, encrypt, Ciphertext, Codebook, DecryptMode, Workers};
pub use digest::{compute_digest, verify_digest, Digest};
pub use error::{Error, Result};
pub use keys::{generate_key, validate_key, RosslerKey};
pub use rossler::{run_machine, run_machine_trajectory, StateVector, SystemParams};
