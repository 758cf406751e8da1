//! Numerical laboratory for sharp constants in classical derivative norm
//! inequalities (Landau, Hardy–Littlewood, Kallman–Rota, Kato) and for the
//! Evans–Everitt best-constant procedure for Sturm–Liouville quadratic forms,
//! including an explicitly solvable generalized Bessel problem on the half line.
//!
//! The crate is organized around sampled functions on one-dimensional grids
//! ([`GridFunction`]), a catalog of known sharp constants with verifiers and
//! empirical estimators ([`catalog`]), a finite-dimensional operator testbed
//! ([`operators`]), self-contained special functions ([`special`]), a general
//! Sturm–Liouville engine with Weyl–Titchmarsh m-function numerics
//! ([`sturm_liouville`]), and the closed-form generalized Bessel model
//! ([`generalized_bessel`]).

pub mod catalog;
pub mod function_space;
pub mod generalized_bessel;
pub mod operators;
pub mod report;
pub mod special;
pub mod sturm_liouville;

pub use catalog::{Domain, InequalityCase};
pub use function_space::{Grid, GridFunction, GridKind, LpExponent, QuadValue, Weight};
pub use generalized_bessel::{BesselParams, BoundaryData};
pub use operators::{Operator, OperatorClass};
pub use report::{InequalityReport, Verdict};
pub use special::BesselOrder;
pub use sturm_liouville::{
    BoundaryKind, Coefficient, MTrace, RaySign, SlCoefficients, SlState, Theta0Result, WeylDisk,
};
