//! Finite-dimensional Hilbert-space testbed for the abstract operator
//! inequalities: dissipative (Kato, constant 2), symmetric (constant 1),
//! fractional-power interpolation, and uniformly bounded semigroups.
//!
//! Matrices are dense complex; classification tolerances are fixed at
//! 1e−12 so roundoff-level asymmetry does not flip a flag.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::report::InequalityReport;

const CLASS_TOL: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum OperatorError {
    #[error("operator is not dissipative (max Re eigenvalue of Hermitian part {0:.3e})")]
    NotDissipative(f64),
    #[error("operator is not symmetric")]
    NotSymmetric,
    #[error("operator is not positive semidefinite")]
    NotPsd,
    #[error("matrix must be square and nonempty with finite entries")]
    MalformedMatrix,
}

/// Dense complex square matrix acting on C^dim.
#[derive(Debug, Clone, PartialEq)]
pub struct Operator {
    entries: DMatrix<Complex64>,
}

impl Operator {
    pub fn new(entries: DMatrix<Complex64>) -> Result<Self, OperatorError> {
        if entries.nrows() == 0
            || entries.nrows() != entries.ncols()
            || entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(OperatorError::MalformedMatrix);
        }
        Ok(Operator { entries })
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    pub fn apply(&self, f: &DVector<Complex64>) -> DVector<Complex64> {
        &self.entries * f
    }

    /// Largest singular value.
    pub fn operator_norm(&self) -> f64 {
        self.entries.clone().svd(false, false).singular_values[0]
    }

    fn hermitian_part(&self) -> DMatrix<Complex64> {
        (&self.entries + self.entries.adjoint()) * Complex64::new(0.5, 0.0)
    }
}

/// Structural flags established by [`classify`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperatorClass {
    pub symmetric: bool,
    pub dissipative: bool,
    pub psd: bool,
}

/// Flags: symmetric ⟺ entries equal their conjugate transpose within 1e−12;
/// dissipative ⟺ the Hermitian part has no eigenvalue above 1e−12; psd ⟺
/// symmetric with smallest eigenvalue above −1e−12.
pub fn classify(a: &Operator) -> OperatorClass {
    let adj = a.entries.adjoint();
    let symmetric = a
        .entries
        .iter()
        .zip(adj.iter())
        .all(|(x, y)| (x - y).norm() <= CLASS_TOL);
    let herm_eigs = a.hermitian_part().symmetric_eigen().eigenvalues;
    let max_re = herm_eigs.iter().fold(f64::NEG_INFINITY, |m, &l| m.max(l));
    let min_re = herm_eigs.iter().fold(f64::INFINITY, |m, &l| m.min(l));
    OperatorClass {
        symmetric,
        dissipative: max_re <= CLASS_TOL,
        psd: symmetric && min_re >= -CLASS_TOL,
    }
}

/// Check `‖Af‖² ≤ 2 ‖f‖ ‖A²f‖` for a dissipative operator.
pub fn kato_check(
    a: &Operator,
    f: &DVector<Complex64>,
) -> Result<InequalityReport, OperatorError> {
    let class = classify(a);
    if !class.dissipative {
        let max = a
            .hermitian_part()
            .symmetric_eigen()
            .eigenvalues
            .iter()
            .fold(f64::NEG_INFINITY, |m, &l| m.max(l));
        return Err(OperatorError::NotDissipative(max));
    }
    let af = a.apply(f);
    let aaf = a.apply(&af);
    let lhs = af.norm().powi(2);
    let rhs = 2.0 * f.norm() * aaf.norm();
    Ok(InequalityReport::decide(lhs, rhs, 2.0, 1e-9))
}

/// Result of [`symmetric_check`]: the constant-1 report plus whether the
/// equality characterization (`A²f` proportional to `f`) is met.
#[derive(Debug, Clone)]
pub struct SymmetricCheck {
    pub report: InequalityReport,
    pub equality: bool,
}

/// Check `‖Af‖² ≤ ‖f‖ ‖A²f‖` for a scalar multiple of a symmetric
/// operator; flags equality via the residual of `A²f` against its
/// projection onto the span of `f`.
///
/// Accepts Hermitian and skew-Hermitian input (real or imaginary scalar);
/// other phases must be rotated by the caller.
pub fn symmetric_check(
    a: &Operator,
    f: &DVector<Complex64>,
) -> Result<SymmetricCheck, OperatorError> {
    let skew = a
        .entries
        .iter()
        .zip(a.entries.adjoint().iter())
        .all(|(x, y)| (x + y).norm() <= CLASS_TOL);
    if !classify(a).symmetric && !skew {
        return Err(OperatorError::NotSymmetric);
    }
    let af = a.apply(f);
    let aaf = a.apply(&af);
    let lhs = af.norm().powi(2);
    let rhs = f.norm() * aaf.norm();
    let report = InequalityReport::decide(lhs, rhs, 1.0, 1e-9);
    let fn2 = f.norm().powi(2);
    let equality = if fn2 > 0.0 {
        let coeff = f.dotc(&aaf) / Complex64::new(fn2, 0.0);
        let residual = (&aaf - f * coeff).norm();
        residual <= 1e-8 * aaf.norm().max(1e-300)
    } else {
        false
    };
    Ok(SymmetricCheck { report, equality })
}

/// `S^τ` for positive semidefinite `S` by spectral decomposition;
/// roundoff-negative eigenvalues are clamped at zero before powering.
pub fn fractional_power(s: &Operator, tau: f64) -> Result<Operator, OperatorError> {
    assert!((0.0..1.0).contains(&tau) || tau == 1.0, "τ must lie in (0, 1]");
    if !classify(s).psd {
        return Err(OperatorError::NotPsd);
    }
    let eig = s.entries.clone().symmetric_eigen();
    let powered = DMatrix::from_diagonal(
        &eig.eigenvalues
            .map(|l| Complex64::new(l.max(0.0).powf(tau), 0.0)),
    );
    let q = eig.eigenvectors;
    Operator::new(&q * powered * q.adjoint())
}

/// Uniform semigroup bound `M = max_{t ≤ t_max} ‖exp(tA)‖` sampled on an
/// equally spaced t-grid (always includes t = 0, so M ≥ 1).
pub fn semigroup_bound(a: &Operator, t_max: f64, samples: usize) -> f64 {
    let samples = samples.max(2);
    let mut m: f64 = 0.0;
    for i in 0..samples {
        let t = t_max * i as f64 / (samples - 1) as f64;
        let e = expm(&(a.entries.clone() * Complex64::new(t, 0.0)));
        let norm = e.svd(false, false).singular_values[0];
        m = m.max(norm);
    }
    m
}

/// Matrix exponential by scaling-and-squaring with a [13/13] Padé core.
pub fn expm(a: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let norm1 = one_norm(a);
    // theta_13 for double precision
    let theta = 5.371_920_351_148_152;
    let s = if norm1 > theta {
        (norm1 / theta).log2().ceil() as i32
    } else {
        0
    };
    let scaled = a / Complex64::new(2f64.powi(s), 0.0);
    let mut e = pade13(&scaled);
    for _ in 0..s {
        e = &e * &e;
    }
    e
}

fn pade13(a: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    const B: [f64; 14] = [
        64_764_752_532_480_000.0,
        32_382_376_266_240_000.0,
        7_771_770_303_897_600.0,
        1_187_353_796_428_800.0,
        129_060_195_264_000.0,
        10_559_470_521_600.0,
        670_442_572_800.0,
        33_522_128_640.0,
        1_323_241_920.0,
        40_840_800.0,
        960_960.0,
        16_380.0,
        182.0,
        1.0,
    ];
    let b = |i: usize| Complex64::new(B[i], 0.0);
    let n = a.nrows();
    let id = DMatrix::<Complex64>::identity(n, n);
    let a2 = a * a;
    let a4 = &a2 * &a2;
    let a6 = &a2 * &a4;
    let u_inner = &a6 * (&a6 * b(13) + &a4 * b(11) + &a2 * b(9))
        + &a6 * b(7)
        + &a4 * b(5)
        + &a2 * b(3)
        + &id * b(1);
    let u = a * u_inner;
    let v = &a6 * (&a6 * b(12) + &a4 * b(10) + &a2 * b(8))
        + &a6 * b(6)
        + &a4 * b(4)
        + &a2 * b(2)
        + &id * b(0);
    let denom = &v - &u;
    let numer = &v + &u;
    denom
        .lu()
        .solve(&numer)
        .expect("Padé denominator is singular")
}

fn one_norm(a: &DMatrix<Complex64>) -> f64 {
    (0..a.ncols())
        .map(|j| a.column(j).iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Deterministic seeded generation of structured matrices: Hermitian via
/// `(B + B*)/2`, dissipative via `iH + N` with `N` negative semidefinite,
/// psd via `B* B`, otherwise a plain dense draw.
pub fn random_operator(class: OperatorClass, dim: usize, seed: u64) -> Operator {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let raw = |rng: &mut ChaCha8Rng| {
        DMatrix::from_fn(dim, dim, |_, _| {
            Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        })
    };
    let b = raw(&mut rng);
    let entries = if class.psd {
        b.adjoint() * &b
    } else if class.symmetric {
        (&b + b.adjoint()) * Complex64::new(0.5, 0.0)
    } else if class.dissipative {
        let h = (&b + b.adjoint()) * Complex64::new(0.5, 0.0);
        let c = raw(&mut rng);
        let n = c.adjoint() * &c;
        h * Complex64::i() - n * Complex64::new(0.5, 0.0)
    } else {
        b
    };
    Operator::new(entries).expect("generated matrix is well formed")
}

/// Random vector on C^dim from the same seeded stream family.
pub fn random_vector(dim: usize, seed: u64) -> DVector<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    DVector::from_fn(dim, |_, _| {
        Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    })
}

/// A dissipative matrix and a vector attaining the Kato bound exactly.
///
/// The pair is the differentiation operator restricted to the span of the
/// two decaying exponentials `exp(λ± x)`, `λ± = d e^{±2πi/3}`, realized on
/// C^2 through the Cholesky factor of the Gram matrix of that span, then
/// embedded in a 4×4 block with a second dissipative block. The vector is
/// the image of the damped-sine extremal, so `‖Af‖² = 2 ‖f‖ ‖A²f‖` up to
/// roundoff.
pub fn kato_equality_pair(d: f64) -> (Operator, DVector<Complex64>) {
    assert!(d > 0.0);
    let lambda_p = Complex64::from_polar(d, 2.0 * std::f64::consts::FRAC_PI_3);
    let lambda_m = lambda_p.conj();
    // Gram matrix of {e^{λ+ x}, e^{λ- x}} in L²(0, ∞): G_jk = -1/(conj λ_j + λ_k)
    let g = DMatrix::from_row_slice(
        2,
        2,
        &[
            -(lambda_p.conj() + lambda_p).inv(),
            -(lambda_p.conj() + lambda_m).inv(),
            -(lambda_m.conj() + lambda_p).inv(),
            -(lambda_m.conj() + lambda_m).inv(),
        ],
    );
    let chol = g.cholesky().expect("Gram matrix is positive definite");
    let l_star = chol.l().adjoint();
    let l_star_inv = l_star
        .clone()
        .try_inverse()
        .expect("Cholesky factor invertible");
    let diag = DMatrix::from_diagonal(&DVector::from_vec(vec![lambda_p, lambda_m]));
    let block = &l_star * diag * &l_star_inv;

    let mut entries = DMatrix::from_element(4, 4, Complex64::new(0.0, 0.0));
    entries.view_mut((0, 0), (2, 2)).copy_from(&block);
    entries[(2, 2)] = Complex64::new(-1.0, 0.3);
    entries[(3, 3)] = Complex64::new(-2.0, -0.7);

    // coefficients of C e^{-Dx/2} sin(√3 D x/2 - π/3) in the exponential basis
    let phase = Complex64::from_polar(1.0, -std::f64::consts::FRAC_PI_3);
    let scale = (Complex64::new(0.0, 2.0)).inv();
    let coeffs = DVector::from_vec(vec![scale * phase, -scale * phase.conj()]);
    let mapped = &l_star * coeffs;
    let f = DVector::from_vec(vec![
        mapped[0],
        mapped[1],
        Complex64::new(0.0, 0.0),
        Complex64::new(0.0, 0.0),
    ]);
    (
        Operator::new(entries).expect("well formed"),
        f,
    )
}

/// One record of a seeded sweep, serialized by the CLI as a JSON line.
#[derive(Debug, Clone, Serialize)]
pub struct SweepRecord {
    pub seed: u64,
    pub dim: usize,
    pub check: &'static str,
    pub ratio: f64,
    pub verdict: crate::report::Verdict,
}

fn sweep_dim(i: usize) -> usize {
    2 + i % 7
}

/// Seeded dissipative sweep of the constant-2 bound, one record per case.
pub fn kato_sweep(cases: usize, base_seed: u64) -> Vec<SweepRecord> {
    use rayon::prelude::*;
    (0..cases)
        .into_par_iter()
        .map(|i| {
            let dim = sweep_dim(i);
            let seed = base_seed + i as u64;
            let a = random_operator(
                OperatorClass {
                    dissipative: true,
                    ..Default::default()
                },
                dim,
                seed,
            );
            let f = random_vector(dim, seed ^ 0x9e37_79b9);
            let report = kato_check(&a, &f).expect("generated operator is dissipative");
            SweepRecord {
                seed,
                dim,
                check: "kato_dissipative",
                ratio: report.ratio,
                verdict: report.verdict,
            }
        })
        .collect()
}

/// Seeded Hermitian and skew-Hermitian sweeps of the constant-1 bound.
pub fn symmetric_sweep(cases: usize, base_seed: u64) -> Vec<SweepRecord> {
    use rayon::prelude::*;
    (0..cases)
        .into_par_iter()
        .flat_map_iter(|i| {
            let dim = sweep_dim(i);
            let seed = base_seed + i as u64;
            let h = random_operator(
                OperatorClass {
                    symmetric: true,
                    ..Default::default()
                },
                dim,
                seed,
            );
            let f = random_vector(dim, seed ^ 0x51f1_5ead);
            let herm = symmetric_check(&h, &f).expect("Hermitian by construction");
            let skew_op = Operator::new(h.entries() * Complex64::i()).expect("well formed");
            let skew = symmetric_check(&skew_op, &f).expect("skew-Hermitian accepted");
            [
                SweepRecord {
                    seed,
                    dim,
                    check: "symmetric",
                    ratio: herm.report.ratio,
                    verdict: herm.report.verdict,
                },
                SweepRecord {
                    seed,
                    dim,
                    check: "skew_symmetric",
                    ratio: skew.report.ratio,
                    verdict: skew.report.verdict,
                },
            ]
        })
        .collect()
}

/// Seeded PSD sweep of the fractional-power interpolation bound over the
/// τ-grid {0.1, ..., 0.9}; the record carries the worst ratio over τ.
pub fn interpolation_sweep(cases: usize, base_seed: u64) -> Vec<SweepRecord> {
    use rayon::prelude::*;
    (0..cases)
        .into_par_iter()
        .map(|i| {
            let dim = sweep_dim(i);
            let seed = base_seed + i as u64;
            let s = random_operator(
                OperatorClass {
                    psd: true,
                    symmetric: true,
                    ..Default::default()
                },
                dim,
                seed,
            );
            let f = random_vector(dim, seed ^ 0x2545_f491);
            let mut worst_ratio = 0.0f64;
            let mut verdict = crate::report::Verdict::Holds;
            for step in 1..=9 {
                let tau = step as f64 / 10.0;
                let st = fractional_power(&s, tau).expect("generated matrix is psd");
                let lhs = st.apply(&f).norm();
                let rhs = f.norm().powf(1.0 - tau) * s.apply(&f).norm().powf(tau);
                if lhs > rhs + 1e-9 {
                    verdict = crate::report::Verdict::Violated;
                }
                if rhs > 0.0 {
                    worst_ratio = worst_ratio.max(lhs / rhs);
                }
            }
            SweepRecord {
                seed,
                dim,
                check: "fractional_interpolation",
                ratio: worst_ratio,
                verdict,
            }
        })
        .collect()
}
