//! Runs the reference machine and writes the trajectory as CSV.
//!
//! cargo run --example simulate -- [out.csv]

use std::fs::File;
use std::io::{self, BufWriter, Write};

use rossler_machine::export::write_trajectory_csv;
use rossler_machine::rossler::{MachineConfig, REFERENCE_INIT};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let traj = MachineConfig::REFERENCE.run_trajectory(REFERENCE_INIT)?;

    let max_x = traj.states.iter().map(|s| s[0].abs()).fold(0.0, f64::max);
    let end = traj.last();
    eprintln!("{} states, max |x| = {max_x:.4}", traj.states.len());
    eprintln!("final state ({}, {}, {})", end[0], end[1], end[2]);

    let out: Box<dyn Write> = match std::env::args().nth(1) {
        Some(path) => Box::new(File::create(path)?),
        None => Box::new(io::stdout().lock()),
    };
    write_trajectory_csv(&traj, BufWriter::new(out))?;
    Ok(())
}
