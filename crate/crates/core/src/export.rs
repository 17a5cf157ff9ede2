//! Trajectory CSV: header `t,x,y,z`, one row per sample.
//!
//! Reals use Rust's shortest round-trip formatting, so parsing a cell gives
//! back the exact binary64 that was written.

use std::io::{self, BufRead, Write};

use crate::error::{Error, Result};
use crate::ode::Trajectory;

pub const CSV_HEADER: &str = "t,x,y,z";

pub fn write_trajectory_csv<W: Write>(traj: &Trajectory<3>, mut out: W) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for (t, [x, y, z]) in traj.iter() {
        writeln!(out, "{t},{x},{y},{z}")?;
    }
    out.flush()
}

/// Parsed rows as `(t, [x, y, z])`.
pub fn read_trajectory_csv<R: BufRead>(input: R) -> Result<Vec<(f64, [f64; 3])>> {
    let mut lines = input.lines();
    match lines.next() {
        Some(Ok(h)) if h.trim_end() == CSV_HEADER => {}
        _ => return Err(Error::Format(format!("expected header {CSV_HEADER:?}"))),
    }
    lines
        .enumerate()
        .map(|(i, line)| {
            let line = line.map_err(|e| Error::Format(e.to_string()))?;
            let cells: Vec<f64> = line
                .trim_end()
                .split(',')
                .map(str::parse)
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| Error::Format(format!("row {}: {e}", i + 1)))?;
            match cells[..] {
                [t, x, y, z] => Ok((t, [x, y, z])),
                _ => Err(Error::Format(format!("row {} has {} cells", i + 1, cells.len()))),
            }
        })
        .collect()
}
