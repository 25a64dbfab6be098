/// One classical fourth-order Runge–Kutta step of `ẋ = f(t, x)`.
pub fn rk4_step<const N: usize, E>(
    t: f64,
    x: &[f64; N],
    dt: f64,
    mut f: impl FnMut(f64, &[f64; N]) -> Result<[f64; N], E>,
) -> Result<[f64; N], E> {
    let axpy = |a: f64, d: &[f64; N]| -> [f64; N] { core::array::from_fn(|i| x[i] + a * d[i]) };
    let k1 = f(t, x)?;
    let k2 = f(t + 0.5 * dt, &axpy(0.5 * dt, &k1))?;
    let k3 = f(t + 0.5 * dt, &axpy(0.5 * dt, &k2))?;
    let k4 = f(t + dt, &axpy(dt, &k3))?;
    Ok(core::array::from_fn(|i| {
        x[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i])
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::convert::Infallible;

    #[test]
    fn constant_state_is_fixed_point() {
        let x = [1.5, -2.0];
        let y = rk4_step(0.0, &x, 0.1, |_, _| Ok::<_, Infallible>([0.0, 0.0])).unwrap();
        assert_eq!(x, y);
    }

    #[test]
    fn exponential_decay() {
        let mut x = [1.0];
        let dt = 1e-3;
        for k in 0..1000 {
            x = rk4_step(k as f64 * dt, &x, dt, |_, x| Ok::<_, Infallible>([-x[0]])).unwrap();
        }
        assert!((x[0] - libm::exp(-1.0)).abs() < 1e-9);
    }

    #[test]
    fn errors_propagate() {
        let r = rk4_step(0.0, &[1.0], 0.1, |t, _| if t > 0.0 { Err("boom") } else { Ok([1.0]) });
        assert_eq!(r, Err("boom"));
    }
}
