//! Fixed-step classical Runge-Kutta (RK4) integration for autonomous systems
//! `x' = f(x)` of any fixed dimension `M`.
//!
//! # Arithmetic contract
//!
//! Every step is evaluated in binary64 in one fixed order:
//!
//! ```text
//! a = f(x)
//! b = f(x + (h/2)·a)
//! c = f(x + (h/2)·b)
//! d = f(x + h·c)
//! x' = x + (h/6)·(((a + 2b) + 2c) + d)
//! ```
//!
//! `h/2` and `h/6` are computed once per step, the four stages are fully
//! materialized, and nothing is fused or reassociated. Two parties running
//! the same field on the same inputs therefore get the same bits, which is
//! what the cipher and digest rely on.

use thiserror::Error;

/// A point in an `M`-dimensional phase space.
pub type StateVec<const M: usize> = [f64; M];

/// Right-hand side of an autonomous system `x' = f(x)`.
///
/// Implementations must be pure: the same input bits always give the same
/// output bits, and no state is kept between calls.
pub trait VectorField<const M: usize> {
    fn eval(&self, state: &StateVec<M>) -> StateVec<M>;
}

impl<F, const M: usize> VectorField<M> for F
where
    F: Fn(&StateVec<M>) -> StateVec<M>,
{
    #[inline]
    fn eval(&self, state: &StateVec<M>) -> StateVec<M> {
        self(state)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum OdeError {
    #[error("step size must be finite and positive, got {0}")]
    InvalidStepSize(f64),
    #[error("initial state has a non-finite component")]
    NonFiniteInitialState,
    /// `step` is the zero-based index of the step `n -> n + 1` whose stages
    /// or result first contained a non-finite value; state `n` was finite.
    #[error("integration diverged at step {step}")]
    Divergence { step: u64 },
}

/// The four stage derivatives of one RK4 step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RkStages<const M: usize> {
    pub a: StateVec<M>,
    pub b: StateVec<M>,
    pub c: StateVec<M>,
    pub d: StateVec<M>,
}

impl<const M: usize> RkStages<M> {
    fn all_finite(&self) -> bool {
        [&self.a, &self.b, &self.c, &self.d]
            .into_iter()
            .all(all_finite)
    }
}

/// A sampled solution: `states[n]` is the state at `t0 + n·h`.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory<const M: usize> {
    pub t0: f64,
    pub h: f64,
    pub states: Vec<StateVec<M>>,
}

impl<const M: usize> Trajectory<M> {
    /// Number of steps taken (one less than the number of states).
    pub fn n_steps(&self) -> usize {
        self.states.len().saturating_sub(1)
    }

    /// Reporting time of sample `n`. Never used inside the integration.
    pub fn time(&self, n: usize) -> f64 {
        self.t0 + n as f64 * self.h
    }

    pub fn last(&self) -> &StateVec<M> {
        self.states
            .last()
            .expect("a trajectory always holds its initial state")
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, &StateVec<M>)> + '_ {
        self.states.iter().enumerate().map(|(n, s)| (self.time(n), s))
    }
}

/// Divergence while sampling a trajectory. `partial` holds every finite
/// state computed before the failing step.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("{error} after {} finite states", partial.states.len())]
pub struct TrajectoryError<const M: usize> {
    pub error: OdeError,
    pub partial: Trajectory<M>,
}

#[inline]
fn all_finite<const M: usize>(s: &StateVec<M>) -> bool {
    s.iter().all(|v| v.is_finite())
}

#[inline]
fn offset<const M: usize>(x: &StateVec<M>, scale: f64, k: &StateVec<M>) -> StateVec<M> {
    let mut out = [0.0; M];
    for i in 0..M {
        out[i] = x[i] + scale * k[i];
    }
    out
}

fn check_step_size(h: f64) -> Result<(), OdeError> {
    if h.is_finite() && h > 0.0 {
        Ok(())
    } else {
        Err(OdeError::InvalidStepSize(h))
    }
}

/// Evaluates the four RK4 stages at `state`.
pub fn rk4_stages<F, const M: usize>(field: &F, state: &StateVec<M>, h: f64) -> RkStages<M>
where
    F: VectorField<M> + ?Sized,
{
    let half = h / 2.0;
    let a = field.eval(state);
    let b = field.eval(&offset(state, half, &a));
    let c = field.eval(&offset(state, half, &b));
    let d = field.eval(&offset(state, h, &c));
    RkStages { a, b, c, d }
}

#[inline]
fn combine<const M: usize>(state: &StateVec<M>, h: f64, k: &RkStages<M>) -> StateVec<M> {
    let sixth = h / 6.0;
    let mut out = [0.0; M];
    for i in 0..M {
        out[i] = state[i] + sixth * (((k.a[i] + 2.0 * k.b[i]) + 2.0 * k.c[i]) + k.d[i]);
    }
    out
}

/// One step without argument validation; `step` only labels the error.
#[inline]
fn advance<F, const M: usize>(
    field: &F,
    state: &StateVec<M>,
    h: f64,
    step: u64,
) -> Result<StateVec<M>, OdeError>
where
    F: VectorField<M> + ?Sized,
{
    let stages = rk4_stages(field, state, h);
    let next = combine(state, h, &stages);
    if stages.all_finite() && all_finite(&next) {
        Ok(next)
    } else {
        Err(OdeError::Divergence { step })
    }
}

/// Advances `state` by one RK4 step of size `h`.
pub fn rk4_step<F, const M: usize>(
    field: &F,
    state: &StateVec<M>,
    h: f64,
) -> Result<StateVec<M>, OdeError>
where
    F: VectorField<M> + ?Sized,
{
    check_step_size(h)?;
    if !all_finite(state) {
        return Err(OdeError::NonFiniteInitialState);
    }
    advance(field, state, h, 0)
}

/// Applies [`rk4_step`] `n_steps` times. Zero steps returns `state0` unchanged.
pub fn integrate<F, const M: usize>(
    field: &F,
    state0: &StateVec<M>,
    h: f64,
    n_steps: u64,
) -> Result<StateVec<M>, OdeError>
where
    F: VectorField<M> + ?Sized,
{
    check_step_size(h)?;
    if !all_finite(state0) {
        return Err(OdeError::NonFiniteInitialState);
    }
    let mut state = *state0;
    for step in 0..n_steps {
        state = advance(field, &state, h, step)?;
    }
    Ok(state)
}

/// Like [`integrate`] but keeps every intermediate state, starting at `t0 = 0`.
pub fn integrate_trajectory<F, const M: usize>(
    field: &F,
    state0: &StateVec<M>,
    h: f64,
    n_steps: u64,
) -> Result<Trajectory<M>, TrajectoryError<M>>
where
    F: VectorField<M> + ?Sized,
{
    let mut traj = Trajectory {
        t0: 0.0,
        h,
        states: Vec::new(),
    };
    let fail = |error, partial| TrajectoryError { error, partial };

    if let Err(e) = check_step_size(h) {
        return Err(fail(e, traj));
    }
    if !all_finite(state0) {
        return Err(fail(OdeError::NonFiniteInitialState, traj));
    }
    traj.states
        .reserve(usize::try_from(n_steps).unwrap_or(0).saturating_add(1));
    traj.states.push(*state0);

    let mut state = *state0;
    for step in 0..n_steps {
        match advance(field, &state, h, step) {
            Ok(next) => {
                traj.states.push(next);
                state = next;
            }
            Err(e) => return Err(fail(e, traj)),
        }
    }
    Ok(traj)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zero(_: &[f64; 3]) -> [f64; 3] {
        [0.0; 3]
    }

    fn one(_: &[f64; 1]) -> [f64; 1] {
        [1.0]
    }

    fn growth(x: &[f64; 1]) -> [f64; 1] {
        [x[0]]
    }

    #[test]
    fn zero_field_leaves_state_unchanged() {
        let s = [3.5, -1.0, 2.0];
        assert_eq!(rk4_step(&zero, &s, 0.1).unwrap(), s);
        assert_eq!(integrate(&zero, &s, 0.1, 1000).unwrap(), s);
    }

    #[test]
    fn constant_field_single_step() {
        let st = rk4_stages(&one, &[0.0], 0.1);
        assert_eq!((st.a, st.b, st.c, st.d), ([1.0], [1.0], [1.0], [1.0]));
        assert_eq!(rk4_step(&one, &[0.0], 0.1).unwrap(), [0.1]);
    }

    #[test]
    fn exponential_single_step() {
        // Frozen from an independent binary64 evaluation of the same stage order.
        let x = rk4_step(&growth, &[1.0], 0.1).unwrap()[0];
        assert_eq!(x.to_bits(), 1.1051708333333332_f64.to_bits());
        // Taylor polynomial 1 + h + h²/2 + h³/6 + h⁴/24, nearest double; the
        // staged evaluation rounds to within one ulp of it.
        let nearest = 1.1051708333333333_f64;
        assert!((x.to_bits() as i64 - nearest.to_bits() as i64).abs() <= 1);
    }

    #[test]
    fn constant_field_ten_steps() {
        let x = integrate(&one, &[0.0], 0.1, 10).unwrap()[0];
        assert_eq!(x.to_bits(), 0.9999999999999999_f64.to_bits());
    }

    #[test]
    fn exponential_ten_steps_close_to_e() {
        let x = integrate(&growth, &[1.0], 0.1, 10).unwrap()[0];
        assert!((x - std::f64::consts::E).abs() < 2.3e-6, "{x}");
    }

    #[test]
    fn zero_steps_returns_initial_state() {
        let s = [-0.0, 1e-310, 7.0];
        let out = integrate(&zero, &s, 0.1, 0).unwrap();
        assert_eq!(out.map(f64::to_bits), s.map(f64::to_bits));
        let traj = integrate_trajectory(&zero, &s, 0.1, 0).unwrap();
        assert_eq!(traj.states.len(), 1);
        assert_eq!(traj.n_steps(), 0);
    }

    #[test]
    fn rejects_bad_step_sizes() {
        for h in [0.0, -0.1, f64::NAN, f64::INFINITY] {
            assert!(matches!(
                rk4_step(&one, &[0.0], h),
                Err(OdeError::InvalidStepSize(_))
            ));
            assert!(integrate(&one, &[0.0], h, 3).is_err());
        }
    }

    #[test]
    fn rejects_non_finite_initial_state() {
        assert_eq!(
            integrate(&one, &[f64::NAN], 0.1, 1),
            Err(OdeError::NonFiniteInitialState)
        );
    }

    #[test]
    fn divergence_reports_first_failing_step() {
        // x' = x² blows up in finite time (t = 1 from x0 = 1); with h = 0.5 the
        // state overflows after a handful of steps.
        let square = |x: &[f64; 1]| [x[0] * x[0]];
        let err = integrate_trajectory(&square, &[1.0], 0.5, 100).unwrap_err();
        let OdeError::Divergence { step } = err.error else {
            panic!("expected divergence, got {:?}", err.error);
        };
        assert_eq!(err.partial.states.len() as u64, step + 1);
        assert!(err.partial.states.iter().all(|s| s[0].is_finite()));
        assert_eq!(
            integrate(&square, &[1.0], 0.5, 100),
            Err(OdeError::Divergence { step })
        );
    }

    #[test]
    fn trajectory_times_are_reporting_only() {
        let traj = integrate_trajectory(&one, &[0.0], 0.25, 4).unwrap();
        let times: Vec<f64> = traj.iter().map(|(t, _)| t).collect();
        assert_eq!(times, vec![0.0, 0.25, 0.5, 0.75, 1.0]);
    }
}
