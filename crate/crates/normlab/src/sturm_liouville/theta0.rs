//! Best-constant angle search: the critical ray angle ϑ₀ and the constant
//! `K = 1/cos(ϑ₀)` for the quadratic-form inequality over the maximal
//! domain.
//!
//! For each half plane the sign condition `∓Im(z² m±(z)) ≥ 0` must hold on
//! every ray of angle φ ∈ [ϑ, π/2]; ϑ± is the infimum of admissible ϑ. The
//! ray predicate is checked on a finite log-spaced ρ-grid with a
//! dimensionless tolerance (the tested quantity is normalized by |z² m|),
//! the infimum is bisected to `angle_tol`, and a verification sweep guards
//! the "for all φ above" quantifier at grid resolution. ρ values where the
//! normalized quantity sits at zero on the critical ray are reported as
//! equality candidates.

use serde::Serialize;

use super::weyl::{m_function, BoundaryKind, MFunctionOptions, RaySign};
use super::{SlCoefficients, SturmLiouvilleError};

#[derive(Debug, Clone, Copy)]
pub struct Theta0Options {
    /// Bisection resolution for the critical angle (radians).
    pub angle_tol: f64,
    /// Dimensionless slack for the ray sign condition.
    pub num_tol: f64,
    pub m_opts: MFunctionOptions,
}

impl Default for Theta0Options {
    fn default() -> Self {
        Theta0Options {
            angle_tol: 5e-3,
            num_tol: 1e-3,
            m_opts: MFunctionOptions {
                rel_tol: 1e-6,
                ..Default::default()
            },
        }
    }
}

/// Outcome of the angle search. `k` is present only when ϑ₀ sits strictly
/// inside (0, π/2); angles reported as 0 are below `angle_tol`.
#[derive(Debug, Clone, Serialize)]
pub struct Theta0Result {
    pub theta_plus: f64,
    pub theta_minus: f64,
    pub theta0: f64,
    pub k: Option<f64>,
    /// ρ with the upper-ray quantity ≈ 0 on the critical ray.
    pub e_plus: Vec<f64>,
    /// Same for the lower ray.
    pub e_minus: Vec<f64>,
}

/// Runs the two half-plane searches over a log-spaced ρ-grid spanning at
/// least four decades and assembles ϑ₀, K, and the equality candidates.
pub fn theta0_search(
    coef: &SlCoefficients,
    rho_grid: &[f64],
    opts: &Theta0Options,
) -> Result<Theta0Result, SturmLiouvilleError> {
    if opts.angle_tol < 1e-6 {
        return Err(SturmLiouvilleError::AngleToleranceTooSmall(opts.angle_tol));
    }
    assert!(
        rho_grid.len() >= 2
            && rho_grid.windows(2).all(|w| w[0] < w[1])
            && rho_grid[rho_grid.len() - 1] / rho_grid[0] >= 9.99e3,
        "ρ-grid must be increasing and span at least four decades"
    );
    let theta_plus = critical_angle(coef, RaySign::Plus, rho_grid, opts)?;
    let theta_minus = critical_angle(coef, RaySign::Minus, rho_grid, opts)?;
    let theta0 = theta_plus.max(theta_minus);
    let k = (theta0 < std::f64::consts::FRAC_PI_2 - opts.angle_tol)
        .then(|| 1.0 / theta0.cos());
    let e_plus = equality_candidates(coef, RaySign::Plus, theta0, rho_grid, opts)?;
    let e_minus = equality_candidates(coef, RaySign::Minus, theta0, rho_grid, opts)?;
    Ok(Theta0Result {
        theta_plus,
        theta_minus,
        theta0,
        k,
        e_plus,
        e_minus,
    })
}

/// Normalized ray quantity `∓Im(z² m(z)) / |z² m(z)|` at one point.
fn ray_quantity(
    coef: &SlCoefficients,
    sign: RaySign,
    angle: f64,
    rho: f64,
    opts: &Theta0Options,
) -> Result<f64, SturmLiouvilleError> {
    let z = sign.ray_point(rho, angle);
    let (m, _) = m_function(coef, z, BoundaryKind::NeumannType, &opts.m_opts)?;
    let v = z * z * m;
    let normalized = v.im / v.norm().max(f64::MIN_POSITIVE);
    Ok(match sign {
        RaySign::Plus => -normalized,
        RaySign::Minus => normalized,
    })
}

/// Whether the sign condition holds along the whole ρ-grid at this angle,
/// up to the dimensionless slack (early exit on a clear violation).
fn ray_ok(
    coef: &SlCoefficients,
    sign: RaySign,
    angle: f64,
    rho_grid: &[f64],
    opts: &Theta0Options,
) -> Result<bool, SturmLiouvilleError> {
    for &rho in rho_grid {
        if ray_quantity(coef, sign, angle, rho, opts)? < -opts.num_tol {
            return Ok(false);
        }
    }
    Ok(true)
}

fn critical_angle(
    coef: &SlCoefficients,
    sign: RaySign,
    rho_grid: &[f64],
    opts: &Theta0Options,
) -> Result<f64, SturmLiouvilleError> {
    let top = std::f64::consts::FRAC_PI_2;
    if !ray_ok(coef, sign, top, rho_grid, opts)? {
        // the admissible set is empty at grid resolution
        return Ok(top);
    }
    let mut lo = opts.angle_tol;
    if ray_ok(coef, sign, lo, rho_grid, opts)? {
        // candidate infimum at the open end; guard against a failure pocket
        // between lo and π/2 before reporting zero
        let mut pocket = None;
        for i in 1..8 {
            let phi = lo + (top - lo) * i as f64 / 8.0;
            if !ray_ok(coef, sign, phi, rho_grid, opts)? {
                pocket = Some(phi);
                break;
            }
        }
        match pocket {
            None => return Ok(0.0),
            Some(phi) => lo = phi,
        }
    }
    let mut hi = top;
    while hi - lo > opts.angle_tol {
        let mid = 0.5 * (lo + hi);
        if ray_ok(coef, sign, mid, rho_grid, opts)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    // certify the "for all angles above" quantifier at grid resolution
    for round in 0..3 {
        let mut worst = None;
        for i in 0..=8 {
            let phi = hi + (top - hi) * i as f64 / 8.0;
            if !ray_ok(coef, sign, phi, rho_grid, opts)? {
                worst = Some(phi);
            }
        }
        match worst {
            None => break,
            Some(phi) if round < 2 => {
                // non-monotone pocket above the bisected angle: restart above it
                let mut lo2 = phi;
                let mut hi2 = top;
                while hi2 - lo2 > opts.angle_tol {
                    let mid = 0.5 * (lo2 + hi2);
                    if ray_ok(coef, sign, mid, rho_grid, opts)? {
                        hi2 = mid;
                    } else {
                        lo2 = mid;
                    }
                }
                hi = hi2;
            }
            Some(_) => return Ok(top),
        }
    }
    Ok(hi)
}

fn equality_candidates(
    coef: &SlCoefficients,
    sign: RaySign,
    theta0: f64,
    rho_grid: &[f64],
    opts: &Theta0Options,
) -> Result<Vec<f64>, SturmLiouvilleError> {
    if theta0 <= 0.0 {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for &rho in rho_grid {
        let q = ray_quantity(coef, sign, theta0, rho, opts)?;
        if q.abs() <= 10.0 * opts.num_tol {
            out.push(rho);
        }
    }
    Ok(out)
}

/// Log-spaced ρ-grid helper (inclusive endpoints).
pub fn log_rho_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    assert!(lo > 0.0 && hi > lo && count >= 2);
    let (la, lb) = (lo.ln(), hi.ln());
    (0..count)
        .map(|i| (la + (lb - la) * i as f64 / (count - 1) as f64).exp())
        .collect()
}
