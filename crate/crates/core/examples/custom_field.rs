//! The integrator takes any closure as a vector field. Here: the Lorenz
//! system and a harmonic oscillator.

use rossler_machine::ode::{integrate, integrate_trajectory};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let lorenz = |s: &[f64; 3]| {
        let (sigma, rho, beta) = (10.0, 28.0, 8.0 / 3.0);
        [sigma * (s[1] - s[0]), s[0] * (rho - s[2]) - s[1], s[0] * s[1] - beta * s[2]]
    };
    let traj = integrate_trajectory(&lorenz, &[1.0, 1.0, 1.0], 0.01, 2000)?;
    let z_max = traj.states.iter().map(|s| s[2]).fold(f64::MIN, f64::max);
    println!("lorenz: max z over t in [0, 20] = {z_max:.3}");

    let oscillator = |s: &[f64; 2]| [s[1], -s[0]];
    let n = 1000;
    let h = 2.0 * std::f64::consts::PI / n as f64;
    let end = integrate(&oscillator, &[1.0, 0.0], h, n)?;
    println!("oscillator after one period: ({:.3e}, {:.3e}) from (1, 0)", end[0] - 1.0, end[1]);
    Ok(())
}
