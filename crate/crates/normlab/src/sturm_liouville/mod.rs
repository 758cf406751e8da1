//! General Sturm–Liouville engine for `τu = r⁻¹[-(p u')' + q u] = z u` on an
//! interval regular at the left endpoint and limit point at the right:
//! adaptive integration in the quasi-derivative variables, Weyl–Titchmarsh
//! m-function numerics with a certified disk radius, the Dirichlet form,
//! and the best-constant angle search over rays in both half planes.

mod rk;
mod theta0;
mod weyl;

pub use theta0::{log_rho_grid, theta0_search, Theta0Options, Theta0Result};
pub use weyl::{
    m_function, m_function_with_data, trace_ray, weyl_disk, BoundaryKind, MFunctionOptions,
    MTrace, MTraceSample, RaySign, WeylDisk,
};

use std::sync::Arc;

use num_complex::Complex64;
use thiserror::Error;

use crate::function_space::{
    integrate_samples, nth_derivative, FunctionSpaceError, GridFunction, QuadValue,
};

#[derive(Debug, Error)]
pub enum SturmLiouvilleError {
    #[error("step size underflow near x = {x} (stiffness or singularity)")]
    StepUnderflow { x: f64 },
    #[error("coefficient evaluation failed near x = {x}")]
    CoefficientEvaluationFailure { x: f64 },
    #[error("Weyl disk radius {radius:.3e} still above tolerance at truncation {x_max}")]
    DiskTooLarge { radius: f64, x_max: f64 },
    #[error("angle tolerance {0} too small (minimum 1e-6)")]
    AngleToleranceTooSmall(f64),
    #[error("integrand head/tail estimate exceeds bound; integral diverges")]
    DivergentIntegrand,
    #[error("m-function needs nonreal z, got {0}")]
    RealSpectralParameter(Complex64),
    #[error(transparent)]
    FunctionSpace(#[from] FunctionSpaceError),
}

/// One coefficient function: a power `c x^s` or an arbitrary callable.
#[derive(Clone)]
pub enum Coefficient {
    Power { coeff: f64, exponent: f64 },
    Func(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
}

impl Coefficient {
    pub fn constant(c: f64) -> Self {
        Coefficient::Power {
            coeff: c,
            exponent: 0.0,
        }
    }

    pub fn power(coeff: f64, exponent: f64) -> Self {
        Coefficient::Power { coeff, exponent }
    }

    pub fn eval(&self, x: f64) -> f64 {
        match self {
            Coefficient::Power { coeff, exponent } => {
                if *coeff == 0.0 {
                    0.0
                } else if *exponent == 0.0 {
                    *coeff
                } else {
                    coeff * x.powf(*exponent)
                }
            }
            Coefficient::Func(f) => f(x),
        }
    }

    /// Reciprocal evaluation, exact for powers (avoids 1/0 at an endpoint
    /// where the exponent makes the reciprocal vanish).
    pub fn eval_reciprocal(&self, x: f64) -> f64 {
        match self {
            Coefficient::Power { coeff, exponent } => {
                if *exponent == 0.0 {
                    1.0 / coeff
                } else {
                    x.powf(-exponent) / coeff
                }
            }
            Coefficient::Func(f) => 1.0 / f(x),
        }
    }
}

impl std::fmt::Debug for Coefficient {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Coefficient::Power { coeff, exponent } => write!(f, "{coeff} * x^{exponent}"),
            Coefficient::Func(_) => write!(f, "<callable>"),
        }
    }
}

/// Coefficient triple `(p, q, r)` on an interval `(a, b)`, `b` possibly
/// infinite, with `p, r > 0` on the interior. `regular_at_a` records that
/// `1/p, q, r` are integrable near `a`, so solutions can be launched from
/// the endpoint itself.
#[derive(Debug, Clone)]
pub struct SlCoefficients {
    pub p: Coefficient,
    pub q: Coefficient,
    pub r: Coefficient,
    pub interval: (f64, f64),
    pub regular_at_a: bool,
}

impl SlCoefficients {
    pub fn new(
        p: Coefficient,
        q: Coefficient,
        r: Coefficient,
        interval: (f64, f64),
        regular_at_a: bool,
    ) -> Self {
        SlCoefficients {
            p,
            q,
            r,
            interval,
            regular_at_a,
        }
    }

    /// `p = r = 1`, `q = 0` on the half line: the classical second-derivative
    /// expression.
    pub fn classical() -> Self {
        Self::power_weights(0.0, 0.0)
    }

    /// Power weights `p = x^β`, `r = x^α`, `q = 0` on `(0, ∞)`; regular at 0
    /// for α > −1, β < 1.
    pub fn power_weights(alpha: f64, beta: f64) -> Self {
        assert!(alpha > -1.0 && beta < 1.0, "need α > -1 and β < 1");
        SlCoefficients {
            p: Coefficient::power(1.0, beta),
            q: Coefficient::constant(0.0),
            r: Coefficient::power(1.0, alpha),
            interval: (0.0, f64::INFINITY),
            regular_at_a: true,
        }
    }

    /// Left launch point: the endpoint itself when the quasi-derivative
    /// system is evaluable there, else a small inset.
    pub(crate) fn launch_point(&self) -> f64 {
        let a = self.interval.0;
        let probe = [
            self.p.eval_reciprocal(a),
            self.q.eval(a),
            self.r.eval(a),
        ];
        if probe.iter().all(|v| v.is_finite()) {
            a
        } else {
            a + 1e-10 * (self.interval.1.min(1e10) - a).max(1.0)
        }
    }
}

/// Solution state `(x, u, p u')` in the quasi-derivative variables.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlState {
    pub x: f64,
    pub u: Complex64,
    pub qd: Complex64,
}

impl SlState {
    pub fn new(x: f64, u: Complex64, qd: Complex64) -> Self {
        SlState { x, u, qd }
    }
}

pub(crate) fn sl_rhs(
    coef: &SlCoefficients,
    z: Complex64,
) -> impl Fn(f64, &[Complex64; 2]) -> [Complex64; 2] + '_ {
    move |x, y| {
        let inv_p = coef.p.eval_reciprocal(x);
        let qr = Complex64::new(coef.q.eval(x), 0.0) - z * coef.r.eval(x);
        [y[1] * inv_p, y[0] * qr]
    }
}

/// Integrates `τu = zu` from a given state to `to_x` with local error per
/// step at most `tol`, returning the accepted-step trajectory including the
/// endpoint state.
pub fn integrate(
    coef: &SlCoefficients,
    z: Complex64,
    from: &SlState,
    to_x: f64,
    tol: f64,
) -> Result<Vec<SlState>, SturmLiouvilleError> {
    assert!(tol > 0.0, "tolerance must be positive");
    let rhs = sl_rhs(coef, z);
    let mut trajectory = vec![*from];
    rk::integrate_adaptive(
        &rhs,
        from.x,
        [from.u, from.qd],
        to_x,
        tol,
        tol * 1e-2,
        |x, y| trajectory.push(SlState::new(x, y[0], y[1])),
    )?;
    Ok(trajectory)
}

/// Diagonal Dirichlet form `∫ [p |f'|² + q |f|²] dx` by quadrature on the
/// function's own grid (mathematically real for the diagonal case).
pub fn dirichlet_form(
    f: &GridFunction,
    coef: &SlCoefficients,
) -> Result<QuadValue, SturmLiouvilleError> {
    let d1 = nth_derivative(f, 1)?;
    let g: Vec<f64> = f
        .grid()
        .nodes()
        .iter()
        .zip(f.values().iter().zip(d1.values()))
        .map(|(&x, (v, dv))| coef.p.eval(x) * dv.norm_sqr() + coef.q.eval(x) * v.norm_sqr())
        .collect();
    if g.iter().any(|gi| !gi.is_finite()) {
        return Err(SturmLiouvilleError::DivergentIntegrand);
    }
    let quad = integrate_samples(f.grid(), &g);
    if !quad.value.is_finite() {
        return Err(SturmLiouvilleError::DivergentIntegrand);
    }
    Ok(quad)
}

/// Samples the equality candidate `Y(ρ, x) = Im(z ψ(z, x))` along a grid,
/// where `z = ρ e^{iθ₀}` on the upper ray or its lower-ray analog and
/// `ψ = θ + m φ` is the Weyl solution.
pub fn extremal_y(
    coef: &SlCoefficients,
    rho: f64,
    sign: RaySign,
    theta0: f64,
    grid: &crate::function_space::Grid,
    opts: &MFunctionOptions,
) -> Result<GridFunction, SturmLiouvilleError> {
    let z = sign.ray_point(rho, theta0);
    let (m, _radius) = m_function(coef, z, BoundaryKind::NeumannType, opts)?;
    let rhs = sl_rhs(coef, z);
    let a = coef.launch_point();
    // joint state (θ, θ^[1], φ, φ^[1]) advanced node to node
    let mut state = [
        Complex64::new(0.0, 0.0),
        Complex64::new(1.0, 0.0),
        Complex64::new(-1.0, 0.0),
        Complex64::new(0.0, 0.0),
    ];
    let mut x = a;
    let joint = |xx: f64, y: &[Complex64; 4]| {
        let t = rhs(xx, &[y[0], y[1]]);
        let p = rhs(xx, &[y[2], y[3]]);
        [t[0], t[1], p[0], p[1]]
    };
    let mut values = Vec::with_capacity(grid.len());
    for &node in grid.nodes() {
        if node > x {
            state = rk::integrate_adaptive(&joint, x, state, node, 1e-10, 1e-13, |_, _| {})?;
            x = node;
        }
        let psi = state[0] + m * state[2];
        values.push(Complex64::new((z * psi).im, 0.0));
    }
    Ok(GridFunction::new(grid.clone(), values)?)
}
