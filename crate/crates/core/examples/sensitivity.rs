//! Two starts 1e-8 apart, followed step by step until they separate.

use rossler_machine::rossler::{run_machine_trajectory, StateVector, SystemParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = SystemParams::CANONICAL;
    let a = StateVector::new(1.0, 1.0, 1.0);
    let b = StateVector::new(1.0 + 1e-8, 1.0, 1.0);

    let ta = run_machine_trajectory(&p, a, 2000, 0.1)?;
    let tb = run_machine_trajectory(&p, b, 2000, 0.1)?;

    let mut crossed = None;
    for (n, (sa, sb)) in ta.states.iter().zip(&tb.states).enumerate() {
        let d = StateVector::from(*sa).distance(&StateVector::from(*sb));
        if n % 200 == 0 {
            println!("step {n:>5}  t = {:>6.1}  |dx| = {d:.3e}", ta.time(n));
        }
        if crossed.is_none() && d > 1e-2 {
            crossed = Some(n);
        }
    }
    match crossed {
        Some(n) => println!("separation exceeds 1e-2 at step {n}"),
        None => println!("still within 1e-2 after 2000 steps"),
    }
    Ok(())
}
