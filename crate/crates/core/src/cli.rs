//! `rossler` command line.
//!
//! Exit codes: 0 success, 1 verification or match failure (and divergence),
//! 2 usage or format error. Machine-readable output goes to stdout,
//! diagnostics to stderr.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::num::NonZeroU32;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use sha2::{Digest as _, Sha256};

use crate::cipher::{Ciphertext, Codebook, DecryptMode};
use crate::digest::{compute_digest, Digest};
use crate::error::Error;
use crate::export::write_trajectory_csv;
use crate::keys::{self, RosslerKey};
use crate::rossler::{run_machine_trajectory, StateVector, SystemParams, REFERENCE_INIT};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILURE: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "rossler", version, about = "Rössler machine simulation, endpoint cipher and digest")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Integrate the Rössler system and print the trajectory as CSV (t,x,y,z).
    Simulate {
        #[arg(long, default_value_t = 0.2, allow_negative_numbers = true)]
        a: f64,
        #[arg(long, default_value_t = 0.2, allow_negative_numbers = true)]
        b: f64,
        #[arg(long, default_value_t = 5.7, allow_negative_numbers = true)]
        c: f64,
        #[arg(long, default_value_t = REFERENCE_INIT.x, allow_negative_numbers = true)]
        x0: f64,
        #[arg(long, default_value_t = REFERENCE_INIT.y, allow_negative_numbers = true)]
        y0: f64,
        #[arg(long, default_value_t = REFERENCE_INIT.z, allow_negative_numbers = true)]
        z0: f64,
        #[arg(long, default_value_t = 500)]
        steps: u64,
        #[arg(long, default_value_t = 0.1, allow_negative_numbers = true)]
        h: f64,
        /// Write the CSV here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate a validated key file and print its fingerprint.
    Keygen {
        /// Defaults to OS entropy; the seed used is reported on stderr.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Encrypt a file into the RCT1 ciphertext format.
    Encrypt {
        #[arg(long)]
        key: PathBuf,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Decrypt an RCT1 ciphertext file.
    Decrypt {
        #[arg(long)]
        key: PathBuf,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Match the nearest codebook entry within this distance instead of
        /// requiring identical bits.
        #[arg(long)]
        tolerance: Option<f64>,
    },
    /// Print the 16-hex-digit digest of a file.
    Digest {
        #[arg(long)]
        key: PathBuf,
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Check a file against a claimed digest.
    Verify {
        #[arg(long)]
        key: PathBuf,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        digest: String,
    },
    /// Print the keyspace size for n-bit key components.
    Keyspace {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        bits: u32,
    },
}

#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn failed(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_FAILURE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NoMatch { .. }
            | Error::Ambiguous { .. }
            | Error::Ode(_)
            | Error::CodebookDivergence { .. }
            | Error::KeygenExhausted { .. } => EXIT_FAILURE,
            Error::InvalidArgument(_) | Error::Format(_) | Error::Value(_) => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type CliResult = Result<(), Failure>;

/// Parses `args` (program name first) and runs the subcommand, returning the
/// process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(rendered.as_bytes())
            } else {
                stdout.write_all(rendered.as_bytes())
            };
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match dispatch(cli.command, stdout, stderr) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(cmd: Command, stdout: &mut dyn Write, stderr: &mut dyn Write) -> CliResult {
    match cmd {
        Command::Simulate {
            a,
            b,
            c,
            x0,
            y0,
            z0,
            steps,
            h,
            out,
        } => simulate(SystemParams::new(a, b, c), StateVector::new(x0, y0, z0), steps, h, out.as_deref(), stdout),
        Command::Keygen { seed, out } => keygen(seed, &out, stdout, stderr),
        Command::Encrypt { key, input, out } => encrypt(&key, &input, &out),
        Command::Decrypt {
            key,
            input,
            out,
            tolerance,
        } => decrypt(&key, &input, &out, tolerance),
        Command::Digest { key, input } => digest(&key, &input, stdout),
        Command::Verify { key, input, digest } => verify(&key, &input, &digest, stdout),
        Command::Keyspace { bits } => keyspace(bits, stdout),
    }
}

fn read(path: &Path) -> Result<Vec<u8>, Failure> {
    fs::read(path).map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, bytes: &[u8]) -> CliResult {
    fs::write(path, bytes).map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))
}

fn stdout_err(e: io::Error) -> Failure {
    Failure::usage(format!("cannot write output: {e}"))
}

fn load_key(path: &Path) -> Result<RosslerKey, Failure> {
    let key = RosslerKey::from_bytes(&read(path)?)?;
    if let Some(reason) = keys::validate_key(&key).failure {
        return Err(Failure::usage(format!("key {} is not usable: {reason}", path.display())));
    }
    Ok(key)
}

fn simulate(
    params: SystemParams,
    init: StateVector,
    steps: u64,
    h: f64,
    out: Option<&Path>,
    stdout: &mut dyn Write,
) -> CliResult {
    if !params.is_finite() || !init.is_finite() {
        return Err(Failure::usage("parameters and initial state must be finite"));
    }
    if !(h.is_finite() && h > 0.0) {
        return Err(Failure::usage(format!("--h must be finite and positive, got {h}")));
    }
    let traj = if steps == 0 {
        crate::ode::Trajectory {
            t0: 0.0,
            h,
            states: vec![init.into()],
        }
    } else {
        run_machine_trajectory(&params, init, steps, h).map_err(|e| Failure::from(e.error))?
    };
    match out {
        Some(path) => {
            let file = fs::File::create(path)
                .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))?;
            write_trajectory_csv(&traj, io::BufWriter::new(file)).map_err(stdout_err)
        }
        None => write_trajectory_csv(&traj, io::BufWriter::new(stdout)).map_err(stdout_err),
    }
}

/// First 8 hex digits of SHA-256 over the 61-byte key file.
pub fn key_fingerprint(key: &RosslerKey) -> String {
    let hash = Sha256::digest(key.to_bytes());
    hash[..4].iter().map(|b| format!("{b:02x}")).collect()
}

fn keygen(seed: Option<u64>, out: &Path, stdout: &mut dyn Write, stderr: &mut dyn Write) -> CliResult {
    let seed = seed.unwrap_or_else(|| {
        let s = rand::random();
        let _ = writeln!(stderr, "seed: {s}");
        s
    });
    let key = keys::generate_key(seed)?;
    write(out, &key.to_bytes())?;
    writeln!(stdout, "{}", key_fingerprint(&key)).map_err(stdout_err)
}

fn encrypt(key: &Path, input: &Path, out: &Path) -> CliResult {
    let key = load_key(key)?;
    let plaintext = read(input)?;
    let ct = Codebook::build(&key)?.encrypt(&plaintext);
    write(out, &ct.to_bytes())
}

fn decrypt(key: &Path, input: &Path, out: &Path, tolerance: Option<f64>) -> CliResult {
    let key = load_key(key)?;
    let ct = Ciphertext::from_bytes(&read(input)?)?;
    let mode = tolerance.map_or(DecryptMode::Exact, DecryptMode::Tolerant);
    let plaintext = Codebook::build(&key)?.decrypt(&ct, mode)?;
    write(out, &plaintext)
}

fn digest(key: &Path, input: &Path, stdout: &mut dyn Write) -> CliResult {
    let key = load_key(key)?;
    let d = compute_digest(&read(input)?, &key)?;
    writeln!(stdout, "{d}").map_err(stdout_err)
}

fn verify(key: &Path, input: &Path, claimed: &str, stdout: &mut dyn Write) -> CliResult {
    let claimed = Digest::from_hex(claimed)?;
    let key = load_key(key)?;
    let actual = compute_digest(&read(input)?, &key)?;
    if actual == claimed {
        writeln!(stdout, "ok").map_err(stdout_err)
    } else {
        writeln!(stdout, "mismatch").map_err(stdout_err)?;
        Err(Failure::failed(format!("digest mismatch: computed {actual}, claimed {claimed}")))
    }
}

fn keyspace(bits: u32, stdout: &mut dyn Write) -> CliResult {
    let bits = NonZeroU32::new(bits).ok_or_else(|| Failure::usage("--bits must be at least 1"))?;
    writeln!(stdout, "2^{}", keys::keyspace_bits(bits)).map_err(stdout_err)
}
