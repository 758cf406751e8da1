//! Finite-difference differentiation via Fornberg weights on arbitrary
//! node sets: at least 4th-order stencils in the interior, one-sided
//! windows of the same width at the ends.

use num_complex::Complex64;

use super::{FunctionSpaceError, GridFunction};

/// Fornberg weights for the `m`-th derivative at `x0` from nodes `x`.
fn fd_weights(x: &[f64], x0: f64, m: usize) -> Vec<f64> {
    let n = x.len();
    debug_assert!(n > m);
    let mut c = vec![vec![0.0; m + 1]; n];
    let mut c1 = 1.0;
    let mut c4 = x[0] - x0;
    c[0][0] = 1.0;
    for i in 1..n {
        let mn = i.min(m);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = x[i] - x0;
        for j in 0..i {
            let c3 = x[i] - x[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[i][k] = c1 * (k as f64 * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                }
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for k in (1..=mn).rev() {
                c[j][k] = (c4 * c[j][k] - k as f64 * c[j][k - 1]) / c3;
            }
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    c.into_iter().map(|row| row[m]).collect()
}

fn fd_apply(nodes: &[f64], values: &[Complex64], order: usize) -> Vec<Complex64> {
    let n = nodes.len();
    let mut width = order + 4;
    if width % 2 == 0 {
        width += 1;
    }
    let width = width.min(n);
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let start = i.saturating_sub(width / 2).min(n - width);
        let w = fd_weights(&nodes[start..start + width], nodes[i], order);
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, &wj) in w.iter().enumerate() {
            acc += values[start + j] * wj;
        }
        out.push(acc);
    }
    out
}

/// Differentiates a grid function `order` times (1..=4). Attached exact
/// derivatives are preferred for orders 1 and 2; otherwise Fornberg
/// finite differences are used.
pub fn derivative(f: &GridFunction, order: u32) -> Result<GridFunction, FunctionSpaceError> {
    if !(1..=4).contains(&order) {
        return Err(FunctionSpaceError::UnsupportedOrder(order));
    }
    let n = f.grid().len();
    if n < order as usize + 4 {
        return Err(FunctionSpaceError::GridTooSmall {
            min: order as usize + 4,
            got: n,
        });
    }
    match (order, f.deriv1(), f.deriv2()) {
        (1, Some(d1), _) => {
            let mut out = GridFunction::new(f.grid().clone(), d1.to_vec())?;
            if let Some(d2) = f.deriv2() {
                // the second derivative of f is the first derivative of f'
                out = GridFunction {
                    deriv1: Some(d2.to_vec()),
                    ..out
                };
            }
            Ok(out)
        }
        (2, _, Some(d2)) => GridFunction::new(f.grid().clone(), d2.to_vec()),
        _ => {
            let vals = fd_apply(f.grid().nodes(), f.values(), order as usize);
            GridFunction::new(f.grid().clone(), vals)
        }
    }
}

/// `m`-th derivative, chaining through attached exact derivatives where
/// possible: for m >= 3 with an exact second derivative present, finite
/// differences act on that instead of on the raw samples.
pub fn nth_derivative(f: &GridFunction, m: u32) -> Result<GridFunction, FunctionSpaceError> {
    match m {
        0 => Ok(f.clone()),
        1 | 2 => derivative(f, m),
        3 | 4 => {
            if let Some(d2) = f.deriv2() {
                let base = GridFunction::new(f.grid().clone(), d2.to_vec())?;
                derivative(&base, m - 2)
            } else {
                derivative(f, m)
            }
        }
        _ => Err(FunctionSpaceError::UnsupportedOrder(m)),
    }
}
