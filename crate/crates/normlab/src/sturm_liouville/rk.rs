//! Embedded Dormand–Prince 5(4) integrator for small complex systems with
//! standard proportional step control.

use num_complex::Complex64;

use super::SturmLiouvilleError;

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;
// difference between the 5th- and embedded 4th-order weights
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

pub const MAX_STEPS: usize = 20_000_000;

/// Integrates `y' = f(x, y)` from `x0` to `x_end` (either direction),
/// invoking `observer` after each accepted step.
pub fn integrate_adaptive<const N: usize, F, O>(
    f: &F,
    x0: f64,
    y0: [Complex64; N],
    x_end: f64,
    rtol: f64,
    atol: f64,
    mut observer: O,
) -> Result<[Complex64; N], SturmLiouvilleError>
where
    F: Fn(f64, &[Complex64; N]) -> [Complex64; N],
    O: FnMut(f64, &[Complex64; N]),
{
    if x_end == x0 {
        return Ok(y0);
    }
    let dir = (x_end - x0).signum();
    let mut x = x0;
    let mut y = y0;
    let mut k1 = eval(f, x, &y)?;
    let mut h = dir * 1e-4 * (x0.abs().max(1e-3));
    let mut steps = 0usize;

    loop {
        steps += 1;
        if steps > MAX_STEPS {
            return Err(SturmLiouvilleError::StepUnderflow { x });
        }
        if (x + h - x_end) * dir > 0.0 {
            h = x_end - x;
        }
        let combine = |y: &[Complex64; N], parts: &[(&[Complex64; N], f64)]| {
            let mut out = *y;
            for (i, slot) in out.iter_mut().enumerate() {
                for (k, c) in parts {
                    *slot += k[i] * (c * h);
                }
            }
            out
        };

        let y2 = combine(&y, &[(&k1, A21)]);
        let k2 = eval(f, x + C2 * h, &y2)?;
        let y3 = combine(&y, &[(&k1, A31), (&k2, A32)]);
        let k3 = eval(f, x + C3 * h, &y3)?;
        let y4 = combine(&y, &[(&k1, A41), (&k2, A42), (&k3, A43)]);
        let k4 = eval(f, x + C4 * h, &y4)?;
        let y5 = combine(&y, &[(&k1, A51), (&k2, A52), (&k3, A53), (&k4, A54)]);
        let k5 = eval(f, x + C5 * h, &y5)?;
        let y6 = combine(
            &y,
            &[(&k1, A61), (&k2, A62), (&k3, A63), (&k4, A64), (&k5, A65)],
        );
        let k6 = eval(f, x + h, &y6)?;
        let y_new = combine(&y, &[(&k1, B1), (&k3, B3), (&k4, B4), (&k5, B5), (&k6, B6)]);
        let k7 = eval(f, x + h, &y_new)?;

        // scaled RMS of the embedded error estimate
        let mut err_sq = 0.0;
        for i in 0..N {
            let e = k1[i] * E1 + k3[i] * E3 + k4[i] * E4 + k5[i] * E5 + k6[i] * E6 + k7[i] * E7;
            let scale = atol + rtol * y[i].norm().max(y_new[i].norm());
            let ratio = e.norm() * h.abs() / scale;
            err_sq += ratio * ratio;
        }
        let err = (err_sq / N as f64).sqrt();

        if err <= 1.0 {
            x += h;
            y = y_new;
            k1 = k7; // first-same-as-last
            observer(x, &y);
            if (x - x_end) * dir >= 0.0 {
                return Ok(y);
            }
        }
        let factor = if err > 0.0 {
            (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
        } else {
            5.0
        };
        h *= factor;
        if h.abs() < 1e-14 * x.abs().max(1e-3) {
            return Err(SturmLiouvilleError::StepUnderflow { x });
        }
    }
}

fn eval<const N: usize, F>(
    f: &F,
    x: f64,
    y: &[Complex64; N],
) -> Result<[Complex64; N], SturmLiouvilleError>
where
    F: Fn(f64, &[Complex64; N]) -> [Complex64; N],
{
    let dy = f(x, y);
    if dy
        .iter()
        .any(|v| !v.re.is_finite() || !v.im.is_finite())
    {
        return Err(SturmLiouvilleError::CoefficientEvaluationFailure { x });
    }
    Ok(dy)
}
