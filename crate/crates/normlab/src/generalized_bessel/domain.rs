//! Friedrichs-domain machinery for the generalized Bessel problem:
//! membership tests through generalized boundary values and head
//! integrability, the distinguished-extension quadratic-form inequality,
//! the power-weighted Hardy inequality, the one-parameter family of
//! self-adjoint extensions, and the head-divergence demonstration for the
//! non-distinguished ones.

use num_complex::Complex64;
use serde::Serialize;

use crate::function_space::{
    integrate_samples, lp_norm, nth_derivative, Grid, GridFunction, LpExponent, Weight,
};
use crate::report::{InequalityReport, Verdict};
use crate::sturm_liouville::SlState;

use super::{
    generalized_boundary_values, m_closed_form, normalized_system_states, weyl_solution,
    BesselParams, GeneralizedBesselError,
};

/// C² taper from 1 to 0 over `[x1, x2]` (value, first, second derivative).
pub fn cutoff_taper(x: f64, x1: f64, x2: f64) -> (f64, f64, f64) {
    debug_assert!(x1 < x2);
    if x <= x1 {
        (1.0, 0.0, 0.0)
    } else if x >= x2 {
        (0.0, 0.0, 0.0)
    } else {
        let w = x2 - x1;
        let u = (x - x1) / w;
        let s = 1.0 - u * u * u * (10.0 - 15.0 * u + 6.0 * u * u);
        let s1 = -30.0 * u * u * (1.0 - u) * (1.0 - u) / w;
        let s2 = -60.0 * u * (1.0 - u) * (1.0 - 2.0 * u) / (w * w);
        (s, s1, s2)
    }
}

fn product_with_taper(
    grid: &Grid,
    x1: f64,
    x2: f64,
    f: impl Fn(f64) -> (Complex64, Complex64, Complex64),
) -> GridFunction {
    GridFunction::from_fn_with_derivatives(grid.clone(), move |x| {
        let (v, d1, d2) = f(x);
        let (s, s1, s2) = cutoff_taper(x, x1, x2);
        (
            v * s,
            d1 * s + v * s1,
            d2 * s + d1 * (2.0 * s1) + v * s2,
        )
    })
}

/// Same taper product from precomputed per-node (value, f', f'') samples.
fn samples_with_taper(
    grid: &Grid,
    x1: f64,
    x2: f64,
    samples: &[(Complex64, Complex64, Complex64)],
) -> GridFunction {
    let mut values = Vec::with_capacity(grid.len());
    let mut d1s = Vec::with_capacity(grid.len());
    let mut d2s = Vec::with_capacity(grid.len());
    for (&x, &(v, d1, d2)) in grid.nodes().iter().zip(samples) {
        let (s, s1, s2) = cutoff_taper(x, x1, x2);
        values.push(v * s);
        d1s.push(d1 * s + v * s1);
        d2s.push(d2 * s + d1 * (2.0 * s1) + v * s2);
    }
    GridFunction::with_derivatives(grid.clone(), values, d1s, d2s)
        .expect("sample count matches grid")
}

/// Principal solution at the origin tapered to zero: the canonical member
/// of the Friedrichs domain.
pub fn principal_cutoff(params: &BesselParams, grid: &Grid, x1: f64, x2: f64) -> GridFunction {
    let (s, b) = (params.s_plus(), 1.0 - params.beta);
    product_with_taper(grid, x1, x2, move |x| {
        let v = x.powf(s) / b;
        (
            Complex64::new(v, 0.0),
            Complex64::new(s * v / x, 0.0),
            Complex64::new(s * (s - 1.0) * v / (x * x), 0.0),
        )
    })
}

/// Nonprincipal solution tapered to zero: lies in the maximal domain but
/// outside the Friedrichs domain (nonzero boundary value).
pub fn nonprincipal_cutoff(params: &BesselParams, grid: &Grid, x1: f64, x2: f64) -> GridFunction {
    assert!(params.gamma > 0.0, "log branch not supported here");
    let s = params.s_minus();
    let amp = (1.0 - params.beta) / (params.c() * params.gamma);
    product_with_taper(grid, x1, x2, move |x| {
        let v = amp * x.powf(s);
        (
            Complex64::new(v, 0.0),
            Complex64::new(s * v / x, 0.0),
            Complex64::new(s * (s - 1.0) * v / (x * x), 0.0),
        )
    })
}

/// `φ(z, ·)` tapered to zero, with derivatives supplied through the
/// quasi-derivative and the differential equation itself.
pub fn phi_cutoff(
    params: &BesselParams,
    z: Complex64,
    grid: &Grid,
    x1: f64,
    x2: f64,
) -> Result<GridFunction, GeneralizedBesselError> {
    let p = *params;
    let states: Vec<(f64, SlState)> = grid
        .nodes()
        .iter()
        .map(|&x| normalized_system_states(&p, z, x).map(|(phi, _)| (x, phi)))
        .collect::<Result<_, _>>()?;
    let values: Vec<(Complex64, Complex64, Complex64)> = states
        .iter()
        .map(|&(x, st)| {
            let d1 = st.qd * x.powf(-p.beta);
            // from (p u')' = (q - z r) u
            let q = p.q_strength() * x.powf(p.beta - 2.0);
            let d2 = (Complex64::new(q, 0.0) - z * x.powf(p.alpha)) * st.u * x.powf(-p.beta)
                - d1 * (p.beta / x);
            (st.u, d1, d2)
        })
        .collect();
    Ok(samples_with_taper(grid, x1, x2, &values))
}

/// Outcome of the Friedrichs-domain membership test with the failing
/// criterion named.
#[derive(Debug, Clone, Serialize)]
pub struct FriedrichsDiagnostics {
    pub is_member: bool,
    pub boundary_value: Complex64,
    pub boundary_ok: bool,
    pub gradient_integrable: bool,
    pub weighted_value_integrable: bool,
    pub failing: Option<&'static str>,
}

/// Local power of `g` near the left end of a log grid, fitted over the two
/// smallest decades; `None` when the samples vanish there.
fn head_power(grid: &Grid, g: &[f64]) -> Option<f64> {
    let x0 = grid.first();
    let pick = |target: f64| -> f64 {
        let mut best = (f64::INFINITY, 0.0);
        for (&x, &v) in grid.nodes().iter().zip(g) {
            let d = (x / target).ln().abs();
            if d < best.0 {
                best = (d, v);
            }
        }
        best.1
    };
    let scale = g.iter().cloned().fold(0.0, f64::max);
    let (g0, g1) = (pick(x0), pick(30.0 * x0));
    if g0.abs() <= 1e-240 * scale.max(1e-240) {
        return None;
    }
    Some((g1.abs().max(1e-300) / g0.abs()).ln() / 30.0f64.ln())
}

fn head_converges(grid: &Grid, g: &[f64]) -> bool {
    match head_power(grid, g) {
        None => true,
        // integrand ~ x^s integrable at 0 for s > -1; demand margin
        Some(slope) => slope > -0.9,
    }
}

/// Friedrichs-domain membership: vanishing generalized boundary value plus,
/// for γ ∈ (0, 1), head integrability of `x^β |f'|²` and `x^{β-2} |f|²`.
/// For γ = 0 only the boundary-value criterion applies.
pub fn friedrichs_member(
    f: &GridFunction,
    params: &BesselParams,
) -> Result<FriedrichsDiagnostics, GeneralizedBesselError> {
    let bd = generalized_boundary_values(f, params)?;
    let scale = bd.value.norm() + bd.derivative.norm();
    let boundary_ok = bd.value.norm() <= 1e-4 * scale.max(1e-6) + 10.0 * bd.error;

    let (mut gradient_integrable, mut weighted_value_integrable) = (true, true);
    if params.gamma > 0.0 {
        let d1 = nth_derivative(f, 1)?;
        let grad: Vec<f64> = f
            .grid()
            .nodes()
            .iter()
            .zip(d1.values())
            .map(|(&x, dv)| x.powf(params.beta) * dv.norm_sqr())
            .collect();
        gradient_integrable = head_converges(f.grid(), &grad);
        let weighted: Vec<f64> = f
            .grid()
            .nodes()
            .iter()
            .zip(f.values())
            .map(|(&x, v)| x.powf(params.beta - 2.0) * v.norm_sqr())
            .collect();
        weighted_value_integrable = head_converges(f.grid(), &weighted);
    }

    let failing = if !boundary_ok {
        Some("generalized boundary value g̃(0) ≠ 0")
    } else if !gradient_integrable {
        Some("x^β |f'|² not integrable near 0")
    } else if !weighted_value_integrable {
        Some("x^{β-2} |f|² not integrable near 0")
    } else {
        None
    };
    Ok(FriedrichsDiagnostics {
        is_member: failing.is_none(),
        boundary_value: bd.value,
        boundary_ok,
        gradient_integrable,
        weighted_value_integrable,
        failing,
    })
}

/// The distinguished-extension quadratic-form inequality with constant 1:
/// `|∫ x^β |f'|² + q_strength x^{β-2} |f|²| ≤ ‖f‖_{L²(x^α)} ‖τf‖_{L²(x^α)}`
/// for Friedrichs-domain members, γ ∈ (0, 1).
pub fn friedrichs_form_check(
    f: &GridFunction,
    params: &BesselParams,
) -> Result<InequalityReport, GeneralizedBesselError> {
    if params.gamma <= 0.0 {
        return Err(GeneralizedBesselError::GammaOutOfRange);
    }
    let diag = friedrichs_member(f, params)?;
    if !diag.is_member {
        return Err(GeneralizedBesselError::NotInFriedrichsDomain(
            diag.failing.unwrap_or("membership test failed"),
        ));
    }

    let d1 = nth_derivative(f, 1)?;
    let d2 = crate::function_space::derivative(&d1, 1)?;
    let qs = params.q_strength();
    let form: Vec<f64> = f
        .grid()
        .nodes()
        .iter()
        .zip(f.values().iter().zip(d1.values()))
        .map(|(&x, (v, dv))| {
            x.powf(params.beta) * dv.norm_sqr() + qs * x.powf(params.beta - 2.0) * v.norm_sqr()
        })
        .collect();
    let lhs_quad = integrate_samples(f.grid(), &form);

    // τf = x^{-α} [ -(x^β f')' + q f ] with the closed-form coefficient q
    let tau: Vec<Complex64> = f
        .grid()
        .nodes()
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let lead = -params.beta * x.powf(params.beta - 1.0) * d1.values()[i]
                - x.powf(params.beta) * d2.values()[i];
            (lead + qs * x.powf(params.beta - 2.0) * f.values()[i]) * x.powf(-params.alpha)
        })
        .collect();
    let tau = GridFunction::new(f.grid().clone(), tau)?;
    let weight = Weight::power(1.0, params.alpha);
    let nf = lp_norm(f, LpExponent::Two, &weight)?;
    let nt = lp_norm(&tau, LpExponent::Two, &weight)?;

    let lhs = lhs_quad.value.abs();
    let rhs = nf.value * nt.value;
    let quad_error = lhs_quad.error + nf.error * nt.value + nf.value * nt.error;
    Ok(InequalityReport::decide(lhs, rhs, 1.0, quad_error))
}

/// Power-weighted Hardy inequality
/// `∫₀^R x^β |f'|² ≥ ((1-β)²/4) ∫₀^R x^{β-2} |f|²` under the vanishing
/// hypothesis at the origin (tested over the three smallest grid decades).
/// The report's `ratio` is the saturation `lhs / rhs` of the weighted-value
/// side against the gradient side.
pub fn weighted_hardy_check(
    f: &GridFunction,
    beta: f64,
    r_max: f64,
) -> Result<InequalityReport, GeneralizedBesselError> {
    assert!(beta < 1.0, "need β < 1");
    let grid = f.grid();
    let x_min = grid.first();
    assert!(x_min > 0.0, "Hardy check needs a log-refined grid");

    // liminf |f| = 0 at grid resolution: the smallest decade must not sit
    // above the third one
    let decade_min = |k: u32| -> f64 {
        grid.nodes()
            .iter()
            .zip(f.values())
            .filter(|(&x, _)| x >= x_min * 10f64.powi(k as i32) && x < x_min * 10f64.powi(k as i32 + 1))
            .map(|(_, v)| v.norm())
            .fold(f64::INFINITY, f64::min)
    };
    let (m0, m2) = (decade_min(0), decade_min(2));
    let sup = f.values().iter().map(|v| v.norm()).fold(0.0, f64::max);
    if !(m0 <= 0.9 * m2 + 1e-12 * sup || m0 <= 1e-10 * sup) {
        return Err(GeneralizedBesselError::HypothesisViolated);
    }

    // truncate to (0, R]
    let cut = grid
        .nodes()
        .iter()
        .position(|&x| x > r_max)
        .unwrap_or(grid.len());
    if cut < Grid::MIN_NODES {
        return Err(GeneralizedBesselError::InvalidParams(
            "truncation leaves too few nodes".into(),
        ));
    }
    let sub_grid = Grid::from_nodes(grid.nodes()[..cut].to_vec(), grid.kind())?;
    let d1 = nth_derivative(f, 1)?;

    let grad: Vec<f64> = sub_grid
        .nodes()
        .iter()
        .zip(d1.values())
        .map(|(&x, dv)| x.powf(beta) * dv.norm_sqr())
        .collect();
    let weighted: Vec<f64> = sub_grid
        .nodes()
        .iter()
        .zip(f.values())
        .map(|(&x, v)| x.powf(beta - 2.0) * v.norm_sqr())
        .collect();
    let rhs_quad = integrate_samples(&sub_grid, &grad);
    let lhs_quad = integrate_samples(&sub_grid, &weighted);

    let constant = (1.0 - beta).powi(2) / 4.0;
    let lhs = constant * lhs_quad.value;
    let rhs = rhs_quad.value;
    let quad_error = constant * lhs_quad.error + rhs_quad.error;
    let verdict = if lhs <= rhs + quad_error {
        Verdict::Holds
    } else {
        Verdict::Violated
    };
    Ok(InequalityReport {
        lhs,
        rhs,
        constant_used: constant,
        ratio: lhs / rhs.max(f64::MIN_POSITIVE),
        verdict,
        quad_error,
    })
}

/// The δ-rotated system: `φ_δ = cos δ · φ − sin δ · θ`,
/// `θ_δ = sin δ · φ + cos δ · θ` (still with Wronskian 1), the rotated
/// m-function, and the Weyl solution `ψ_δ = ψ₀ / (cos δ + sin δ · m₀)`.
#[derive(Debug, Clone)]
pub struct ExtensionSystem {
    pub phi: SlState,
    pub theta: SlState,
    pub psi: Complex64,
    pub m_delta: Complex64,
}

pub fn extension_family(
    params: &BesselParams,
    z: Complex64,
    x: f64,
) -> Result<ExtensionSystem, GeneralizedBesselError> {
    if params.gamma <= 0.0 {
        return Err(GeneralizedBesselError::GammaOutOfRange);
    }
    let (phi0, theta0) = normalized_system_states(params, z, x)?;
    let (sin_d, cos_d) = params.delta.sin_cos();
    let rot = |a: &SlState, b: &SlState, ca: f64, cb: f64| SlState {
        x: a.x,
        u: a.u * ca + b.u * cb,
        qd: a.qd * ca + b.qd * cb,
    };
    let phi = rot(&phi0, &theta0, cos_d, -sin_d);
    let theta = rot(&phi0, &theta0, sin_d, cos_d);
    let m0 = m_closed_form(params, z)?;
    let denom = Complex64::new(cos_d, 0.0) + m0 * sin_d;
    let m_delta = (-sin_d + m0 * cos_d) / denom;
    let psi = weyl_solution(params, z, x)? / denom;
    Ok(ExtensionSystem {
        phi,
        theta,
        psi,
        m_delta,
    })
}

/// One truncation level of the head-divergence scan.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct DivergencePoint {
    pub eps: f64,
    /// `∫_ε x^β |f'|² dx`
    pub grad_integral: f64,
    /// `∫_ε x^{β-2} |f|² dx`
    pub hardy_integral: f64,
}

/// Truncated head integrals of `f = φ_δ(z, ·) · taper` for a sequence of
/// lower limits ε. For δ ≠ 0 both integrals grow like `ε^{-(2+α-β)γ}`;
/// for the distinguished extension (δ = 0) they stay bounded. Requires the
/// non-resonant case `(2+α-β)γ ≠ 1-β`.
pub fn divergence_scan(
    params: &BesselParams,
    z: Complex64,
    eps: &[f64],
    taper: (f64, f64),
) -> Result<Vec<DivergencePoint>, GeneralizedBesselError> {
    if params.gamma <= 0.0 {
        return Err(GeneralizedBesselError::GammaOutOfRange);
    }
    if (params.c() * params.gamma - (1.0 - params.beta)).abs() < 1e-9 {
        return Err(GeneralizedBesselError::ProvisoViolated);
    }
    let eps_min = eps.iter().cloned().fold(f64::INFINITY, f64::min);
    assert!(eps_min > 0.0 && taper.0 < taper.1, "bad scan configuration");
    let grid = Grid::log_refined(eps_min * 0.5, taper.1, 200)?;
    let f = phi_delta_tapered(params, z, &grid, taper.0, taper.1)?;
    let d1 = f.deriv1().expect("taper construction attaches derivatives");

    let nodes = grid.nodes();
    let grad: Vec<f64> = nodes
        .iter()
        .zip(d1)
        .map(|(&x, dv)| x.powf(params.beta) * dv.norm_sqr())
        .collect();
    let hardy: Vec<f64> = nodes
        .iter()
        .zip(f.values())
        .map(|(&x, v)| x.powf(params.beta - 2.0) * v.norm_sqr())
        .collect();

    // cumulative trapezoid from the right; linear part for a lower limit
    // inside a panel
    let tail_from = |g: &[f64], eps: f64| -> f64 {
        let mut acc = 0.0;
        for i in (0..nodes.len() - 1).rev() {
            let (x0, x1) = (nodes[i], nodes[i + 1]);
            if x1 <= eps {
                break;
            }
            let lo = x0.max(eps);
            let g_lo = if x0 >= eps {
                g[i]
            } else {
                g[i] + (g[i + 1] - g[i]) * (eps - x0) / (x1 - x0)
            };
            acc += 0.5 * (g_lo + g[i + 1]) * (x1 - lo);
        }
        acc
    };

    Ok(eps
        .iter()
        .map(|&e| DivergencePoint {
            eps: e,
            grad_integral: tail_from(&grad, e),
            hardy_integral: tail_from(&hardy, e),
        })
        .collect())
}

/// `φ_δ(z, ·)` times the taper, with derivatives from the rotated states
/// and the ODE (the near-origin profile of a generic resolvent element).
fn phi_delta_tapered(
    params: &BesselParams,
    z: Complex64,
    grid: &Grid,
    x1: f64,
    x2: f64,
) -> Result<GridFunction, GeneralizedBesselError> {
    let p = *params;
    let values: Vec<(Complex64, Complex64, Complex64)> = grid
        .nodes()
        .iter()
        .map(|&x| {
            let sys = extension_family(&p, z, x)?;
            let d1 = sys.phi.qd * x.powf(-p.beta);
            let q = p.q_strength() * x.powf(p.beta - 2.0);
            let d2 = (Complex64::new(q, 0.0) - z * x.powf(p.alpha)) * sys.phi.u * x.powf(-p.beta)
                - d1 * (p.beta / x);
            Ok((sys.phi.u, d1, d2))
        })
        .collect::<Result<_, GeneralizedBesselError>>()?;
    Ok(samples_with_taper(grid, x1, x2, &values))
}
