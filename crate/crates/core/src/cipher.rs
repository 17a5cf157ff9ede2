//! Per-byte endpoint cipher.
//!
//! Each plaintext byte `p` becomes the initial `x0 = (p + 1) / 1024`; the
//! machine runs from `(x0, y0, z0)` under the key and the final `x` is the
//! ciphertext value. The receiver rebuilds the same 256 endpoints (the
//! codebook) and looks every received value up.
//!
//! There is no chaining between bytes, so this is a byte-substitution
//! cipher and offers no real confidentiality against frequency analysis or
//! known plaintext.

use std::collections::HashMap;
use std::num::NonZeroUsize;
use std::thread;

use crate::error::{Error, Result};
use crate::keys::RosslerKey;
use crate::ode::{self, OdeError};
use crate::rossler::RosslerField;

pub const CIPHERTEXT_MAGIC: &[u8; 4] = b"RCT1";
pub const CIPHERTEXT_VERSION: u8 = 0x01;
pub const CIPHERTEXT_HEADER_LEN: usize = 13;

/// Maps a byte to its initial x value, `(b + 1) / 1024`. Exact in binary64.
#[inline]
pub fn map_byte(b: u8) -> f64 {
    (f64::from(b) + 1.0) / 1024.0
}

/// Thread count used when evaluating the 256 codebook entries. Results are
/// bit-identical for every count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Workers(NonZeroUsize);

impl Workers {
    pub const ONE: Workers = Workers(NonZeroUsize::MIN);

    pub fn new(n: usize) -> Option<Self> {
        NonZeroUsize::new(n).map(Workers)
    }

    pub fn get(&self) -> NonZeroUsize {
        self.0
    }
}

impl Default for Workers {
    fn default() -> Self {
        Workers(thread::available_parallelism().unwrap_or(NonZeroUsize::MIN))
    }
}

fn endpoint(key: &RosslerKey, byte: u8) -> std::result::Result<f64, u64> {
    let field = RosslerField(key.params());
    let init = [map_byte(byte), key.y0, key.z0];
    match ode::integrate(&field, &init, key.h, key.n_steps) {
        Ok(end) => Ok(end[0]),
        Err(OdeError::Divergence { step }) => Err(step),
        // Starting values are finite and h was checked by the caller; any
        // other failure still means "no usable endpoint", reported at step 0.
        Err(_) => Err(0),
    }
}

/// Endpoint x for every byte, in byte order. On divergence, returns the
/// lowest diverging byte and its step index.
pub(crate) fn endpoints(key: &RosslerKey, workers: Workers) -> std::result::Result<Vec<f64>, (u8, u64)> {
    let bytes: Vec<u8> = (0..=255).collect();
    let chunk = bytes.len().div_ceil(workers.get().get());
    let results: Vec<std::result::Result<f64, u64>> = if chunk >= bytes.len() {
        bytes.iter().map(|&b| endpoint(key, b)).collect()
    } else {
        thread::scope(|s| {
            let handles: Vec<_> = bytes
                .chunks(chunk)
                .map(|part| s.spawn(move || part.iter().map(|&b| endpoint(key, b)).collect::<Vec<_>>()))
                .collect();
            handles
                .into_iter()
                .flat_map(|h| h.join().expect("codebook worker panicked"))
                .collect()
        })
    };
    results
        .into_iter()
        .zip(0..=255u8)
        .map(|(r, byte)| r.map_err(|step| (byte, step)))
        .collect()
}

/// How received values are matched against the codebook.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum DecryptMode {
    /// Bit-exact match. Sound whenever both sides ran the same arithmetic.
    #[default]
    Exact,
    /// Nearest entry within `eps`, provided no other entry is also within
    /// `eps`. Only for values that went through a lossy decimal round trip;
    /// endpoints of long runs can sit closer together than any useful eps.
    Tolerant(f64),
}

/// The 256 endpoints of a key, indexed by plaintext byte.
#[derive(Debug, Clone)]
pub struct Codebook {
    entries: Vec<f64>,
    // bit pattern -> byte, or None if two bytes share that endpoint
    index: HashMap<u64, Option<u8>>,
}

impl PartialEq for Codebook {
    fn eq(&self, other: &Self) -> bool {
        self.entries.iter().map(|v| v.to_bits()).eq(other.entries.iter().map(|v| v.to_bits()))
    }
}

impl Codebook {
    pub fn build(key: &RosslerKey) -> Result<Self> {
        Self::build_with(key, Workers::default())
    }

    pub fn build_with(key: &RosslerKey, workers: Workers) -> Result<Self> {
        key.check_invariants()
            .map_err(|f| Error::InvalidArgument(format!("unusable key: {f}")))?;
        let entries = endpoints(key, workers).map_err(|(byte, step)| Error::CodebookDivergence { byte, step })?;
        let mut index = HashMap::with_capacity(256);
        for (byte, v) in (0..=255u8).zip(&entries) {
            index
                .entry(v.to_bits())
                .and_modify(|slot| *slot = None)
                .or_insert(Some(byte));
        }
        Ok(Codebook { entries, index })
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn entry(&self, byte: u8) -> f64 {
        self.entries[usize::from(byte)]
    }

    pub fn encrypt(&self, plaintext: &[u8]) -> Ciphertext {
        Ciphertext(plaintext.iter().map(|&b| self.entry(b)).collect())
    }

    pub fn decrypt(&self, ct: &Ciphertext, mode: DecryptMode) -> Result<Vec<u8>> {
        if let DecryptMode::Tolerant(eps) = mode {
            if !(eps.is_finite() && eps >= 0.0) {
                return Err(Error::InvalidArgument(format!(
                    "tolerance must be finite and non-negative, got {eps}"
                )));
            }
        }
        ct.values()
            .iter()
            .enumerate()
            .map(|(position, &v)| {
                if !v.is_finite() {
                    return Err(Error::Format(format!(
                        "non-finite ciphertext value at position {position}"
                    )));
                }
                match mode {
                    DecryptMode::Exact => self.lookup_exact(v, position),
                    DecryptMode::Tolerant(eps) => self.lookup_nearest(v, eps, position),
                }
            })
            .collect()
    }

    fn lookup_exact(&self, v: f64, position: usize) -> Result<u8> {
        match self.index.get(&v.to_bits()) {
            Some(Some(byte)) => Ok(*byte),
            Some(None) => Err(Error::Ambiguous { position }),
            None => Err(Error::NoMatch { position }),
        }
    }

    fn lookup_nearest(&self, v: f64, eps: f64, position: usize) -> Result<u8> {
        let mut best: Option<(f64, u8)> = None;
        let mut second = f64::INFINITY;
        for (byte, e) in (0..=255u8).zip(&self.entries) {
            let d = (v - e).abs();
            match best {
                Some((bd, _)) if d >= bd => second = second.min(d),
                Some((bd, _)) => {
                    second = bd;
                    best = Some((d, byte));
                }
                None => best = Some((d, byte)),
            }
        }
        let (d, byte) = best.expect("codebook has 256 entries");
        if d > eps {
            Err(Error::NoMatch { position })
        } else if second <= eps {
            Err(Error::Ambiguous { position })
        } else {
            Ok(byte)
        }
    }
}

pub fn build_codebook(key: &RosslerKey) -> Result<Codebook> {
    Codebook::build(key)
}

/// One endpoint value per plaintext byte.
#[derive(Debug, Clone, Default)]
pub struct Ciphertext(Vec<f64>);

impl PartialEq for Ciphertext {
    fn eq(&self, other: &Self) -> bool {
        self.0.len() == other.0.len()
            && self.0.iter().zip(&other.0).all(|(a, b)| a.to_bits() == b.to_bits())
    }
}

impl Ciphertext {
    /// Wraps raw values. Non-finite values are rejected at decryption.
    pub fn from_values(values: Vec<f64>) -> Self {
        Ciphertext(values)
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `RCT1`, version byte, big-endian u64 count, then big-endian binary64 values.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(CIPHERTEXT_HEADER_LEN + 8 * self.0.len());
        out.extend_from_slice(CIPHERTEXT_MAGIC);
        out.push(CIPHERTEXT_VERSION);
        out.extend_from_slice(&(self.0.len() as u64).to_be_bytes());
        for v in &self.0 {
            out.extend_from_slice(&v.to_be_bytes());
        }
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        if bytes.len() < CIPHERTEXT_HEADER_LEN {
            return Err(Error::Format(format!(
                "ciphertext header needs {CIPHERTEXT_HEADER_LEN} bytes, got {}",
                bytes.len()
            )));
        }
        if &bytes[..4] != CIPHERTEXT_MAGIC {
            return Err(Error::Format("bad ciphertext magic".into()));
        }
        if bytes[4] != CIPHERTEXT_VERSION {
            return Err(Error::Format(format!(
                "unsupported ciphertext version {:#04x}",
                bytes[4]
            )));
        }
        let count = u64::from_be_bytes(bytes[5..13].try_into().unwrap());
        let body = &bytes[CIPHERTEXT_HEADER_LEN..];
        if !body.len().is_multiple_of(8) || body.len() as u64 / 8 != count {
            return Err(Error::Format(format!(
                "header declares {count} values but body holds {} bytes",
                body.len()
            )));
        }
        let values: Vec<f64> = body
            .chunks_exact(8)
            .map(|c| f64::from_be_bytes(c.try_into().unwrap()))
            .collect();
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::Format(format!("non-finite ciphertext value at position {i}")));
        }
        Ok(Ciphertext(values))
    }
}

pub fn encrypt(plaintext: &[u8], key: &RosslerKey) -> Result<Ciphertext> {
    Ok(Codebook::build(key)?.encrypt(plaintext))
}

pub fn decrypt(ct: &Ciphertext, key: &RosslerKey, mode: DecryptMode) -> Result<Vec<u8>> {
    Codebook::build(key)?.decrypt(ct, mode)
}
