//! Keyed weighted-sum digest.
//!
//! The message is reduced to `s = Σ i·map_byte(m_i)` (1-based positions),
//! folded into `[0, 1)` as `frac(s·γ)` with `γ = (√5 − 1)/2`, and used as the
//! machine's initial `x`. The endpoint's `x` is the 64-bit digest.
//!
//! No collision or preimage resistance is claimed.

use std::fmt;
use std::str::FromStr;

use crate::cipher::map_byte;
use crate::error::{Error, Result};
use crate::keys::RosslerKey;
use crate::rossler::StateVector;

/// Nearest binary64 to (√5 − 1)/2.
pub const GOLDEN_CONJUGATE: f64 = 0.618_033_988_749_894_9;

/// Positional sum `Σ i·map_byte(m_i)`, accumulated left to right.
///
/// Every term is an integer multiple of 1/1024, so the sum is exact until it
/// passes 2^43.
pub fn weighted_sum(message: &[u8]) -> f64 {
    message
        .iter()
        .zip(1u64..)
        .fold(0.0, |acc, (&b, i)| acc + i as f64 * map_byte(b))
}

/// `frac(s·γ)`, in `[0, 1)`. Expects a finite, non-negative `s`.
pub fn fold_to_unit(s: f64) -> f64 {
    debug_assert!(s.is_finite() && s >= 0.0, "fold_to_unit({s})");
    let u = s * GOLDEN_CONJUGATE;
    u - u.floor()
}

/// Endpoint x of the keyed machine run for a message.
#[derive(Clone, Copy)]
pub struct Digest(f64);

impl Digest {
    pub fn value(&self) -> f64 {
        self.0
    }

    /// Raw bits, as received. May be any pattern, NaN included.
    pub fn from_bits(bits: u64) -> Self {
        Digest(f64::from_bits(bits))
    }

    pub fn to_bits(&self) -> u64 {
        self.0.to_bits()
    }

    /// 16 lowercase hex digits of the big-endian binary64.
    pub fn to_hex(&self) -> String {
        format!("{:016x}", self.to_bits())
    }

    pub fn from_hex(s: &str) -> Result<Self> {
        if s.len() != 16 || !s.bytes().all(|c| c.is_ascii_hexdigit()) {
            return Err(Error::Format(format!(
                "digest must be exactly 16 hex digits, got {s:?}"
            )));
        }
        let bits = u64::from_str_radix(s, 16).map_err(|e| Error::Format(e.to_string()))?;
        Ok(Digest::from_bits(bits))
    }
}

/// Bitwise equality, so NaN payloads compare by pattern.
impl PartialEq for Digest {
    fn eq(&self, other: &Self) -> bool {
        self.to_bits() == other.to_bits()
    }
}

impl Eq for Digest {}

impl fmt::Debug for Digest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Digest({} / {})", self.0, self.to_hex())
    }
}

impl fmt::Display for Digest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl FromStr for Digest {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Digest::from_hex(s)
    }
}

/// Initial x fed to the machine for `message`.
pub fn digest_seed(message: &[u8]) -> f64 {
    fold_to_unit(weighted_sum(message))
}

pub fn compute_digest(message: &[u8], key: &RosslerKey) -> Result<Digest> {
    let init = StateVector::new(digest_seed(message), key.y0, key.z0);
    let end = key.machine().run(init)?;
    Ok(Digest(end.x))
}

/// True iff the recomputed digest has exactly the claimed bits. A run that
/// cannot complete verifies nothing.
pub fn verify_digest(message: &[u8], key: &RosslerKey, claimed: &Digest) -> bool {
    compute_digest(message, key).is_ok_and(|d| d == *claimed)
}
