//! Weyl–Titchmarsh m-function numerics in the limit-point case.
//!
//! The normalized pair θ, φ (θ(a) = 0, θ^[1](a) = 1; φ(a) = −1, φ^[1](a) = 0)
//! is integrated jointly to a truncation X. Real boundary conditions at X
//! trace a circle in the m-plane under the Möbius map
//! `t ↦ −(tθ(X) + θ^[1](X)) / (tφ(X) + φ^[1](X))`; its center and radius are
//!
//! ```text
//!   center = −W(θ, conj φ)(X) / W(φ, conj φ)(X)
//!   radius = |W(θ, φ)(X)| / |W(φ, conj φ)(X)|
//! ```
//!
//! with `W(u, v) = u v^[1] − u^[1] v`. The disks nest and shrink to the
//! limit-point m(z), so the radius is a certified bound on |m − center|.
//! The numerator of the radius uses the *computed* Wronskian (exactly 1 in
//! exact arithmetic), so integration error inflates the certificate rather
//! than silently tightening it.

use num_complex::Complex64;
use serde::Serialize;

use super::rk::integrate_adaptive;
use super::{sl_rhs, SlCoefficients, SlState, SturmLiouvilleError};

/// Which m-function convention to report: Neumann-type as computed from the
/// normalized pair, or the Dirichlet-type transform −1/m.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundaryKind {
    NeumannType,
    DirichletType,
}

/// Upper (`Plus`) or lower (`Minus`) half-plane ray family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RaySign {
    Plus,
    Minus,
}

impl RaySign {
    /// `z = ρ e^{iθ}` on the upper ray, `ρ e^{i(θ+π)}` on the lower one.
    pub fn ray_point(&self, rho: f64, angle: f64) -> Complex64 {
        match self {
            RaySign::Plus => Complex64::from_polar(rho, angle),
            RaySign::Minus => Complex64::from_polar(rho, angle + std::f64::consts::PI),
        }
    }
}

/// Weyl disk at a finite truncation: every admissible m lies within
/// `radius` of `center`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct WeylDisk {
    pub center: Complex64,
    pub radius: f64,
}

#[derive(Debug, Clone, Copy)]
pub struct MFunctionOptions {
    /// Stop once `radius <= rel_tol * |center|`.
    pub rel_tol: f64,
    /// Give up (DiskTooLarge) beyond this truncation.
    pub x_max: f64,
    /// Local relative tolerance of the ODE integrator.
    pub ode_rtol: f64,
}

impl Default for MFunctionOptions {
    fn default() -> Self {
        MFunctionOptions {
            rel_tol: 1e-7,
            x_max: 1e6,
            ode_rtol: 1e-10,
        }
    }
}

/// Joint integrator state for (θ, φ) in quasi-derivative variables.
struct PairState {
    x: f64,
    y: [Complex64; 4],
}

impl PairState {
    fn disk(&self) -> WeylDisk {
        let (theta, theta_qd, phi, phi_qd) = (self.y[0], self.y[1], self.y[2], self.y[3]);
        let w_phi_conj = phi * phi_qd.conj() - phi_qd * phi.conj();
        let w_theta_conj = theta * phi_qd.conj() - theta_qd * phi.conj();
        let w_pair = theta * phi_qd - theta_qd * phi;
        WeylDisk {
            center: -w_theta_conj / w_phi_conj,
            radius: w_pair.norm() / w_phi_conj.norm(),
        }
    }
}

fn advance(
    coef: &SlCoefficients,
    z: Complex64,
    state: &mut PairState,
    to_x: f64,
    rtol: f64,
) -> Result<(), SturmLiouvilleError> {
    let rhs = sl_rhs(coef, z);
    let joint = |x: f64, y: &[Complex64; 4]| {
        let t = rhs(x, &[y[0], y[1]]);
        let p = rhs(x, &[y[2], y[3]]);
        [t[0], t[1], p[0], p[1]]
    };
    state.y = integrate_adaptive(&joint, state.x, state.y, to_x, rtol, 1e-13, |_, _| {})?;
    state.x = to_x;
    Ok(())
}

fn regular_start(coef: &SlCoefficients) -> PairState {
    PairState {
        x: coef.launch_point(),
        y: [
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(-1.0, 0.0),
            Complex64::new(0.0, 0.0),
        ],
    }
}

/// Weyl disk of the truncated problem at exactly `x_trunc`.
pub fn weyl_disk(
    coef: &SlCoefficients,
    z: Complex64,
    x_trunc: f64,
    ode_rtol: f64,
) -> Result<WeylDisk, SturmLiouvilleError> {
    if z.im == 0.0 {
        return Err(SturmLiouvilleError::RealSpectralParameter(z));
    }
    let mut state = regular_start(coef);
    advance(coef, z, &mut state, x_trunc, ode_rtol)?;
    Ok(state.disk())
}

/// Limit-point m-function with a certified error bound: integrates outward
/// over a doubling truncation schedule until the disk radius drops below
/// `rel_tol * |center|`, then reports the disk center (transformed for the
/// Dirichlet-type convention) and the transformed radius.
pub fn m_function(
    coef: &SlCoefficients,
    z: Complex64,
    bc: BoundaryKind,
    opts: &MFunctionOptions,
) -> Result<(Complex64, f64), SturmLiouvilleError> {
    if z.im == 0.0 {
        return Err(SturmLiouvilleError::RealSpectralParameter(z));
    }
    let state = regular_start(coef);
    m_from_state(coef, z, state, bc, opts)
}

/// Same as [`m_function`] but launched from caller-supplied initial data for
/// the normalized pair at `x0` (used when the left endpoint is singular and
/// closed forms provide exact states near it). The initial pair must have
/// quasi-derivative Wronskian W(θ, φ) = 1.
pub fn m_function_with_data(
    coef: &SlCoefficients,
    z: Complex64,
    theta: &SlState,
    phi: &SlState,
    bc: BoundaryKind,
    opts: &MFunctionOptions,
) -> Result<(Complex64, f64), SturmLiouvilleError> {
    if z.im == 0.0 {
        return Err(SturmLiouvilleError::RealSpectralParameter(z));
    }
    assert_eq!(theta.x, phi.x, "pair states must share a base point");
    let state = PairState {
        x: theta.x,
        y: [theta.u, theta.qd, phi.u, phi.qd],
    };
    m_from_state(coef, z, state, bc, opts)
}

fn m_from_state(
    coef: &SlCoefficients,
    z: Complex64,
    mut state: PairState,
    bc: BoundaryKind,
    opts: &MFunctionOptions,
) -> Result<(Complex64, f64), SturmLiouvilleError> {
    let mut target = (state.x.abs().max(1.0)) * 2.0;
    loop {
        advance(coef, z, &mut state, target, opts.ode_rtol)?;
        let disk = state.disk();
        if disk.radius <= opts.rel_tol * disk.center.norm() {
            return Ok(transform(disk, bc));
        }
        if target >= opts.x_max {
            return Err(SturmLiouvilleError::DiskTooLarge {
                radius: disk.radius,
                x_max: opts.x_max,
            });
        }
        target = (target * 2.0).min(opts.x_max);
    }
}

/// Möbius image of the disk under m ↦ −1/m for the Dirichlet-type
/// convention; the Neumann-type disk passes through unchanged.
fn transform(disk: WeylDisk, bc: BoundaryKind) -> (Complex64, f64) {
    match bc {
        BoundaryKind::NeumannType => (disk.center, disk.radius),
        BoundaryKind::DirichletType => {
            let denom = disk.center.norm_sqr() - disk.radius * disk.radius;
            (-disk.center.conj() / denom, disk.radius / denom)
        }
    }
}

/// Sampled m-values along one ray `z = ρ e^{iθ}` (or its lower-half-plane
/// analog) over a ρ-grid.
#[derive(Debug, Clone, Serialize)]
pub struct MTraceSample {
    pub rho: f64,
    pub z: Complex64,
    pub m: Complex64,
    pub disk_radius: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct MTrace {
    pub ray_angle: f64,
    pub sign: RaySign,
    pub samples: Vec<MTraceSample>,
}

impl MTrace {
    /// CSV rows `theta,rho,z_re,z_im,m_re,m_im,disk_radius`.
    pub fn write_csv<W: std::io::Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "theta,rho,z_re,z_im,m_re,m_im,disk_radius")?;
        for s in &self.samples {
            writeln!(
                out,
                "{},{},{},{},{},{},{}",
                self.ray_angle, s.rho, s.z.re, s.z.im, s.m.re, s.m.im, s.disk_radius
            )?;
        }
        Ok(())
    }
}

/// Evaluates the Neumann-type m-function along a ray for every ρ in the
/// grid.
pub fn trace_ray(
    coef: &SlCoefficients,
    sign: RaySign,
    angle: f64,
    rho_grid: &[f64],
    opts: &MFunctionOptions,
) -> Result<MTrace, SturmLiouvilleError> {
    let mut samples = Vec::with_capacity(rho_grid.len());
    for &rho in rho_grid {
        let z = sign.ray_point(rho, angle);
        let (m, disk_radius) = m_function(coef, z, BoundaryKind::NeumannType, opts)?;
        samples.push(MTraceSample {
            rho,
            z,
            m,
            disk_radius,
        });
    }
    Ok(MTrace {
        ray_angle: angle,
        sign,
        samples,
    })
}
