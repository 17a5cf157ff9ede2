//! The shared secret: seven machine inputs `(a, b, c, y0, z0, h, N)`.
//!
//! `x0` is not part of the key; the cipher and digest put the message there.

use std::collections::HashMap;
use std::num::NonZeroU32;

use crate::cipher::{self, Workers};
use crate::error::{Error, Result};
use crate::rossler::{MachineConfig, SystemParams};

pub const KEY_MAGIC: &[u8; 4] = b"RKEY";
pub const KEY_VERSION: u8 = 0x01;
pub const KEY_LEN: usize = 61;

/// Number of secret components in a key.
pub const KEY_COMPONENTS: u64 = 7;

/// Consecutive invalid candidates after which [`generate_key`] gives up.
pub const KEYGEN_MAX_ATTEMPTS: u32 = 1000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RosslerKey {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub y0: f64,
    pub z0: f64,
    pub h: f64,
    pub n_steps: u64,
}

impl RosslerKey {
    /// Canonical parameters with the reference start `y0 = z0 = 1e-4`,
    /// `h = 0.1`, 500 steps.
    pub const REFERENCE: RosslerKey = RosslerKey {
        a: 0.2,
        b: 0.2,
        c: 5.7,
        y0: 0.0001,
        z0: 0.0001,
        h: 0.1,
        n_steps: 500,
    };

    pub fn params(&self) -> SystemParams {
        SystemParams::new(self.a, self.b, self.c)
    }

    pub fn machine(&self) -> MachineConfig {
        MachineConfig {
            params: self.params(),
            h: self.h,
            n_steps: self.n_steps,
        }
    }

    fn reals(&self) -> [f64; 6] {
        [self.a, self.b, self.c, self.y0, self.z0, self.h]
    }

    /// Structural invariants only; see [`validate_key`] for the full check.
    pub fn check_invariants(&self) -> std::result::Result<(), KeyFailure> {
        if !self.reals().iter().all(|v| v.is_finite()) {
            return Err(KeyFailure::NonFiniteParameter);
        }
        if self.h <= 0.0 || self.n_steps == 0 {
            return Err(KeyFailure::OutOfRange);
        }
        Ok(())
    }

    pub fn to_bytes(&self) -> [u8; KEY_LEN] {
        let mut out = [0u8; KEY_LEN];
        out[..4].copy_from_slice(KEY_MAGIC);
        out[4] = KEY_VERSION;
        for (i, v) in self.reals().iter().enumerate() {
            out[5 + 8 * i..13 + 8 * i].copy_from_slice(&v.to_be_bytes());
        }
        out[53..].copy_from_slice(&self.n_steps.to_be_bytes());
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        if bytes.len() != KEY_LEN {
            return Err(Error::Format(format!(
                "key must be {KEY_LEN} bytes, got {}",
                bytes.len()
            )));
        }
        if &bytes[..4] != KEY_MAGIC {
            return Err(Error::Format("bad key magic".into()));
        }
        if bytes[4] != KEY_VERSION {
            return Err(Error::Format(format!(
                "unsupported key version {:#04x}",
                bytes[4]
            )));
        }
        let real = |i: usize| {
            let start = 5 + 8 * i;
            f64::from_be_bytes(bytes[start..start + 8].try_into().unwrap())
        };
        let key = RosslerKey {
            a: real(0),
            b: real(1),
            c: real(2),
            y0: real(3),
            z0: real(4),
            h: real(5),
            n_steps: u64::from_be_bytes(bytes[53..].try_into().unwrap()),
        };
        key.check_invariants()
            .map_err(|f| Error::Value(format!("decoded key is unusable: {f}")))?;
        Ok(key)
    }
}

pub fn serialize_key(key: &RosslerKey) -> [u8; KEY_LEN] {
    key.to_bytes()
}

pub fn deserialize_key(bytes: &[u8]) -> Result<RosslerKey> {
    RosslerKey::from_bytes(bytes)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum KeyFailure {
    #[error("machine run for byte {byte} diverged at step {step}")]
    Divergent { byte: u8, step: u64 },
    #[error("bytes {first} and {second} map to the same endpoint")]
    Collision { first: u8, second: u8 },
    #[error("a real component is not finite")]
    NonFiniteParameter,
    #[error("step size must be positive and the step count at least one")]
    OutOfRange,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KeyValidationReport {
    pub failure: Option<KeyFailure>,
}

impl KeyValidationReport {
    pub fn is_valid(&self) -> bool {
        self.failure.is_none()
    }
}

/// Checks the invariants, then builds the full codebook and requires 256
/// finite, pairwise bit-distinct endpoints.
pub fn validate_key(key: &RosslerKey) -> KeyValidationReport {
    validate_key_with(key, Workers::default())
}

/// [`validate_key`] on an explicit worker count. The report does not depend
/// on it: divergence and collisions are reported for the lowest byte.
pub fn validate_key_with(key: &RosslerKey, workers: Workers) -> KeyValidationReport {
    let failure = check(key, workers).err();
    KeyValidationReport { failure }
}

fn check(key: &RosslerKey, workers: Workers) -> std::result::Result<(), KeyFailure> {
    key.check_invariants()?;
    let entries = cipher::endpoints(key, workers)
        .map_err(|(byte, step)| KeyFailure::Divergent { byte, step })?;
    let mut seen: HashMap<u64, u8> = HashMap::with_capacity(256);
    for (byte, v) in (0..=255u8).zip(entries) {
        if let Some(&first) = seen.get(&v.to_bits()) {
            return Err(KeyFailure::Collision {
                first,
                second: byte,
            });
        }
        seen.insert(v.to_bits(), byte);
    }
    Ok(())
}

/// SplitMix64 (Steele, Lea & Flood). Outputs map to `[0, 1)` by division
/// by 2^64.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// `u64 -> f64` rounds to nearest, so outputs within 2^10 of 2^64 give
    /// exactly 1.0. Callers clamp where that matters.
    pub fn next_unit(&mut self) -> f64 {
        self.next_u64() as f64 / 18_446_744_073_709_551_616.0
    }

    fn next_in(&mut self, lo: f64, hi: f64) -> f64 {
        lo + self.next_unit() * (hi - lo)
    }
}

/// One unvalidated candidate drawn from `seed`. Draw order: a, b, c, y0, z0, N.
pub fn candidate_key(seed: u64) -> RosslerKey {
    let mut rng = SplitMix64::new(seed);
    let a = rng.next_in(0.1, 0.3);
    let b = rng.next_in(0.1, 0.3);
    let c = rng.next_in(4.0, 7.0);
    let y0 = rng.next_in(-1.0, 1.0);
    let z0 = rng.next_in(-1.0, 1.0);
    let n_steps = 100 + ((rng.next_unit() * 901.0) as u64).min(900);
    RosslerKey {
        a,
        b,
        c,
        y0,
        z0,
        h: 0.1,
        n_steps,
    }
}

/// First valid candidate among seeds `seed, seed + 1, ...` (wrapping).
pub fn generate_key(seed: u64) -> Result<RosslerKey> {
    generate_key_with(seed, Workers::default())
}

pub fn generate_key_with(seed: u64, workers: Workers) -> Result<RosslerKey> {
    (0..KEYGEN_MAX_ATTEMPTS)
        .map(|i| candidate_key(seed.wrapping_add(u64::from(i))))
        .find(|k| validate_key_with(k, workers).is_valid())
        .ok_or(Error::KeygenExhausted {
            seed,
            attempts: KEYGEN_MAX_ATTEMPTS,
        })
}

/// Exponent of the keyspace size `2^(7n)` when every component is an
/// `n`-bit quantity.
pub fn keyspace_bits(bits_per_component: NonZeroU32) -> u64 {
    KEY_COMPONENTS * u64::from(bits_per_component.get())
}
