//! The Rössler system and the machine that integrates it:
//! (parameters, initial state, step count) in, final state out.

use crate::error::{Error, Result};
use crate::ode::{self, StateVec, Trajectory, TrajectoryError, VectorField};

/// `(a, b, c)` in
///
/// ```text
/// x' = -y - z
/// y' = x + a·y
/// z' = b + z·(x - c)
/// ```
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl SystemParams {
    /// The classic chaotic regime `a = b = 0.2`, `c = 5.7`.
    pub const CANONICAL: SystemParams = SystemParams {
        a: 0.2,
        b: 0.2,
        c: 5.7,
    };

    pub const fn new(a: f64, b: f64, c: f64) -> Self {
        SystemParams { a, b, c }
    }

    pub fn is_finite(&self) -> bool {
        self.a.is_finite() && self.b.is_finite() && self.c.is_finite()
    }
}

impl Default for SystemParams {
    fn default() -> Self {
        Self::CANONICAL
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl StateVector {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        StateVector { x, y, z }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn distance(&self, other: &StateVector) -> f64 {
        let (dx, dy, dz) = (self.x - other.x, self.y - other.y, self.z - other.z);
        (dx * dx + dy * dy + dz * dz).sqrt()
    }

    pub fn to_bits(&self) -> [u64; 3] {
        [self.x.to_bits(), self.y.to_bits(), self.z.to_bits()]
    }
}

impl From<StateVec<3>> for StateVector {
    fn from(s: StateVec<3>) -> Self {
        StateVector::new(s[0], s[1], s[2])
    }
}

impl From<StateVector> for StateVec<3> {
    fn from(s: StateVector) -> Self {
        [s.x, s.y, s.z]
    }
}

/// Evaluates the Rössler right-hand side at `s`.
#[inline]
pub fn rossler_field(params: &SystemParams, s: &StateVector) -> StateVector {
    StateVector {
        x: -s.y - s.z,
        y: s.x + params.a * s.y,
        z: params.b + s.z * (s.x - params.c),
    }
}

/// [`rossler_field`] as an integrable vector field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RosslerField(pub SystemParams);

impl VectorField<3> for RosslerField {
    #[inline]
    fn eval(&self, s: &StateVec<3>) -> StateVec<3> {
        let p = &self.0;
        [-s[1] - s[2], s[0] + p.a * s[1], p.b + s[2] * (s[0] - p.c)]
    }
}

/// Step size and step count for a machine run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MachineConfig {
    pub params: SystemParams,
    pub h: f64,
    pub n_steps: u64,
}

impl MachineConfig {
    /// Canonical parameters, `h = 0.1`, 500 steps.
    pub const REFERENCE: MachineConfig = MachineConfig {
        params: SystemParams::CANONICAL,
        h: 0.1,
        n_steps: 500,
    };

    pub fn validate(&self) -> Result<()> {
        if !self.params.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "system parameters must be finite: {:?}",
                self.params
            )));
        }
        if !(self.h.is_finite() && self.h > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "step size must be finite and positive, got {}",
                self.h
            )));
        }
        if self.n_steps == 0 {
            return Err(Error::InvalidArgument(
                "machine needs at least one step".into(),
            ));
        }
        Ok(())
    }

    pub fn run(&self, init: StateVector) -> Result<StateVector> {
        run_machine(&self.params, init, self.n_steps, self.h)
    }

    pub fn run_trajectory(&self, init: StateVector) -> Result<Trajectory<3>, MachineError> {
        run_machine_trajectory(&self.params, init, self.n_steps, self.h)
    }
}

/// Reference starting point `(1e-4, 1e-4, 1e-4)`.
pub const REFERENCE_INIT: StateVector = StateVector::new(0.0001, 0.0001, 0.0001);

/// Integrates the Rössler system for `n_steps` RK4 steps of size `h` and
/// returns the final state.
pub fn run_machine(
    params: &SystemParams,
    init: StateVector,
    n_steps: u64,
    h: f64,
) -> Result<StateVector> {
    MachineConfig {
        params: *params,
        h,
        n_steps,
    }
    .validate()?;
    let end = ode::integrate(&RosslerField(*params), &init.into(), h, n_steps)?;
    Ok(end.into())
}

/// Failed trajectory run, keeping whatever was computed.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("{error}")]
pub struct MachineError {
    pub error: Error,
    pub partial: Option<Trajectory<3>>,
}

impl From<TrajectoryError<3>> for MachineError {
    fn from(e: TrajectoryError<3>) -> Self {
        MachineError {
            error: e.error.into(),
            partial: Some(e.partial),
        }
    }
}

/// Same run as [`run_machine`], keeping all `n_steps + 1` states.
pub fn run_machine_trajectory(
    params: &SystemParams,
    init: StateVector,
    n_steps: u64,
    h: f64,
) -> Result<Trajectory<3>, MachineError> {
    MachineConfig {
        params: *params,
        h,
        n_steps,
    }
    .validate()
    .map_err(|error| MachineError {
        error,
        partial: None,
    })?;
    Ok(ode::integrate_trajectory(
        &RosslerField(*params),
        &init.into(),
        h,
        n_steps,
    )?)
}
