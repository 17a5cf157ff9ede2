//! Empirical order of the RK4 integrator on the Rössler system.
//!
//! Integrates to t = 10 with successively halved steps and compares against
//! a fine-step solution. Each halving should shrink the error about 16x.

use rossler_machine::ode::integrate;
use rossler_machine::rossler::{RosslerField, SystemParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let field = RosslerField(SystemParams::CANONICAL);
    let start = [1.0, 1.0, 1.0];
    let t_end = 10.0;

    let reference = integrate(&field, &start, t_end / 64_000.0, 64_000)?;

    let mut prev: Option<f64> = None;
    println!("{:>8} {:>12} {:>8}", "h", "error", "ratio");
    for k in 0..6 {
        let n = 100u64 << k;
        let h = t_end / n as f64;
        let end = integrate(&field, &start, h, n)?;
        let err = (0..3).map(|i| (end[i] - reference[i]).abs()).fold(0.0, f64::max);
        match prev {
            Some(p) => println!("{h:>8.5} {err:>12.3e} {:>8.2}", p / err),
            None => println!("{h:>8.5} {err:>12.3e} {:>8}", "-"),
        }
        prev = Some(err);
    }
    Ok(())
}
