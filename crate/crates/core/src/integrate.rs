//! Fixed-step classical Runge-Kutta for small fixed-size states.

/// Advances `state` by one RK4 step of `ẋ = f(t, x)`.
pub fn rk4_step<const N: usize, F>(t: f64, state: &[f64; N], dt: f64, mut f: F) -> [f64; N]
where
    F: FnMut(f64, &[f64; N]) -> [f64; N],
{
    let half = 0.5 * dt;
    let k1 = f(t, state);
    let k2 = f(t + half, &axpy(state, half, &k1));
    let k3 = f(t + half, &axpy(state, half, &k2));
    let k4 = f(t + dt, &axpy(state, dt, &k3));
    core::array::from_fn(|i| state[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]))
}

/// Fallible variant; the first error from `f` aborts the step.
pub fn try_rk4_step<const N: usize, E, F>(
    t: f64,
    state: &[f64; N],
    dt: f64,
    mut f: F,
) -> Result<[f64; N], E>
where
    F: FnMut(f64, &[f64; N]) -> Result<[f64; N], E>,
{
    let half = 0.5 * dt;
    let k1 = f(t, state)?;
    let k2 = f(t + half, &axpy(state, half, &k1))?;
    let k3 = f(t + half, &axpy(state, half, &k2))?;
    let k4 = f(t + dt, &axpy(state, dt, &k3))?;
    Ok(core::array::from_fn(|i| {
        state[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i])
    }))
}

fn axpy<const N: usize>(x: &[f64; N], a: f64, y: &[f64; N]) -> [f64; N] {
    core::array::from_fn(|i| x[i] + a * y[i])
}
