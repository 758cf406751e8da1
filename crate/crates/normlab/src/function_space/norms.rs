//! Weighted L^p norms and the Landau-type norm quotient.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{
    integrate_samples, nth_derivative, FunctionSpaceError, GridFunction, GridKind, QuadValue,
    Weight,
};

/// The exponents for which sharp constants are on record.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LpExponent {
    #[serde(rename = "1")]
    One,
    #[serde(rename = "2")]
    Two,
    #[serde(rename = "inf")]
    Inf,
}

impl LpExponent {
    pub fn as_str(&self) -> &'static str {
        match self {
            LpExponent::One => "1",
            LpExponent::Two => "2",
            LpExponent::Inf => "inf",
        }
    }
}

impl std::str::FromStr for LpExponent {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "1" => Ok(LpExponent::One),
            "2" => Ok(LpExponent::Two),
            "inf" | "oo" => Ok(LpExponent::Inf),
            other => Err(format!("unsupported exponent {other:?} (use 1, 2 or inf)")),
        }
    }
}

/// Weighted L^p norm of the samples with a quadrature error estimate.
///
/// For p in {1, 2} this is composite quadrature of `(∫ w |f|^p)^{1/p}`; the
/// reported error adds head/tail bounds for half-line grids so undecayed
/// functions are caught rather than silently truncated. For p = ∞ it is the
/// max over nodes (which understates the true sup; tolerances are applied
/// one-sidedly by callers).
pub fn lp_norm(
    f: &GridFunction,
    p: LpExponent,
    w: &Weight,
) -> Result<QuadValue, FunctionSpaceError> {
    if !f.is_finite() {
        return Err(FunctionSpaceError::NonFiniteValue);
    }
    if p == LpExponent::Inf {
        let value = f.values().iter().map(|v| v.norm()).fold(0.0, f64::max);
        return Ok(QuadValue { value, error: 0.0 });
    }
    let pow = match p {
        LpExponent::One => 1.0,
        LpExponent::Two => 2.0,
        LpExponent::Inf => unreachable!(),
    };
    let grid = f.grid();
    let g: Vec<f64> = grid
        .nodes()
        .iter()
        .zip(f.values())
        .map(|(&x, v)| w.eval(x) * v.norm().powf(pow))
        .collect();
    if g.iter().any(|gi| !gi.is_finite()) {
        return Err(FunctionSpaceError::NonFiniteValue);
    }
    let mut quad = integrate_samples(grid, &g);

    // Half-line truncation bound: the omitted tail is charged to the error
    // estimate as g(x_max) * x_max rather than assumed to vanish.
    if matches!(grid.kind(), GridKind::Uniform | GridKind::LogRefinedAtZero) {
        quad.error += g[g.len() - 1].abs() * grid.last().abs().max(1.0);
    }
    // Omitted head below the first node of a log-refined grid, bounded via
    // the local power behavior g ~ C x^s.
    if grid.kind() == GridKind::LogRefinedAtZero {
        quad.error += head_estimate(grid.nodes(), &g);
    }

    let integral = quad.value.max(0.0);
    let value = integral.powf(1.0 / pow);
    let error = if value > 0.0 {
        quad.error / (pow * value.powf(pow - 1.0))
    } else {
        quad.error.powf(1.0 / pow)
    };
    Ok(QuadValue { value, error })
}

fn head_estimate(nodes: &[f64], g: &[f64]) -> f64 {
    let (x0, x1) = (nodes[0], nodes[1]);
    let (g0, g1) = (g[0].max(1e-300), g[1].max(1e-300));
    let slope = (g1 / g0).ln() / (x1 / x0).ln();
    if slope <= -1.0 + 1e-3 {
        // divergent or border-line head: poison the estimate
        f64::INFINITY
    } else {
        // \int_0^{x0} C x^s dx = g(x0) x0 / (s + 1)
        g0 * x0 / (slope + 1.0)
    }
}

/// L^2 inner product `∫ conj(f) g dx` on a shared grid (unweighted).
pub fn inner_product_l2(
    f: &GridFunction,
    g: &GridFunction,
) -> Result<Complex64, FunctionSpaceError> {
    if f.grid().len() != g.grid().len() {
        return Err(FunctionSpaceError::LengthMismatch {
            values: g.grid().len(),
            nodes: f.grid().len(),
        });
    }
    let prod: Vec<Complex64> = f
        .values()
        .iter()
        .zip(g.values())
        .map(|(a, b)| a.conj() * b)
        .collect();
    let re: Vec<f64> = prod.iter().map(|z| z.re).collect();
    let im: Vec<f64> = prod.iter().map(|z| z.im).collect();
    Ok(Complex64::new(
        integrate_samples(f.grid(), &re).value,
        integrate_samples(f.grid(), &im).value,
    ))
}

/// Landau quotient `‖f^(k)‖^n / (‖f‖^{n-k} ‖f^(n)‖^k)`, the empirical
/// constant the sharp inequalities bound.
pub fn landau_ratio(
    f: &GridFunction,
    n: u32,
    k: u32,
    p: LpExponent,
    w: &Weight,
) -> Result<f64, FunctionSpaceError> {
    assert!(n >= 2 && k >= 1 && k < n, "need n >= 2 and 1 <= k < n");
    let f0 = lp_norm(f, p, w)?;
    let fk = lp_norm(&nth_derivative(f, k)?, p, w)?;
    let fn_ = lp_norm(&nth_derivative(f, n)?, p, w)?;
    if f0.value <= f64::MIN_POSITIVE || fn_.value <= f64::MIN_POSITIVE {
        return Err(FunctionSpaceError::DegenerateDenominator);
    }
    Ok(fk.value.powi(n as i32)
        / (f0.value.powi((n - k) as i32) * fn_.value.powi(k as i32)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function_space::Grid;
    use approx::assert_relative_eq;
    use num_complex::Complex64;

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn l2_norm_of_decaying_exponential() {
        // ‖e^{-x}‖_2 on (0, ∞) = 2^{-1/2}
        let grid = Grid::uniform(0.0, 40.0, 4001).unwrap();
        let f = GridFunction::from_fn(grid, |x| re((-x).exp()));
        let q = lp_norm(&f, LpExponent::Two, &Weight::one()).unwrap();
        assert!((q.value - 0.5f64.sqrt()).abs() <= q.error.max(1e-9));
        assert_relative_eq!(q.value, 0.5f64.sqrt(), max_relative = 1e-7);
    }

    #[test]
    fn zero_function_has_zero_norms() {
        let grid = Grid::uniform(0.0, 1.0, 17).unwrap();
        let f = GridFunction::from_fn(grid, |_| re(0.0));
        for p in [LpExponent::One, LpExponent::Two, LpExponent::Inf] {
            assert_eq!(lp_norm(&f, p, &Weight::one()).unwrap().value, 0.0);
        }
    }

    #[test]
    fn sup_norm_of_sine_on_long_interval() {
        let grid = Grid::two_sided(100.0 * std::f64::consts::PI, 20001).unwrap();
        let f = GridFunction::from_fn(grid, |x| re(x.sin()));
        let q = lp_norm(&f, LpExponent::Inf, &Weight::one()).unwrap();
        assert!(q.value <= 1.0 && q.value > 1.0 - 1e-4);
    }

    #[test]
    fn landau_ratio_is_one_for_pure_exponential() {
        let grid = Grid::uniform(0.0, 50.0, 4001).unwrap();
        let f = GridFunction::from_fn_with_derivatives(grid, |x| {
            let e = (-x).exp();
            (re(e), re(-e), re(e))
        });
        let r = landau_ratio(&f, 2, 1, LpExponent::Two, &Weight::one()).unwrap();
        assert_relative_eq!(r, 1.0, max_relative = 1e-6);
    }

    #[test]
    fn degenerate_denominator_reported() {
        let grid = Grid::uniform(0.0, 1.0, 17).unwrap();
        let f = GridFunction::from_fn(grid, |_| re(0.0));
        let err = landau_ratio(&f, 2, 1, LpExponent::Two, &Weight::one());
        assert!(matches!(
            err,
            Err(FunctionSpaceError::DegenerateDenominator)
        ));
    }

    #[test]
    fn norm_scales_linearly() {
        let grid = Grid::uniform(0.0, 10.0, 201).unwrap();
        let f = GridFunction::from_fn(grid.clone(), |x| re((-x).exp() * (3.0 * x).cos()));
        let g = f.scaled(re(-2.5));
        for p in [LpExponent::One, LpExponent::Two, LpExponent::Inf] {
            let nf = lp_norm(&f, p, &Weight::one()).unwrap().value;
            let ng = lp_norm(&g, p, &Weight::one()).unwrap().value;
            assert_relative_eq!(ng, 2.5 * nf, max_relative = 1e-13);
        }
    }
}
