//! Grids, weighted L^p norms, numerical derivatives, and the Landau-type
//! norm ratios consumed by every inequality check.
//!
//! Functions are carried as complex samples on a strictly increasing grid
//! ([`GridFunction`]); exact first and second derivatives can be attached
//! when a family is known in closed form, otherwise finite differences
//! supply them.

mod derivative;
mod io;
mod norms;
mod quadrature;

pub use derivative::{derivative, nth_derivative};
pub use io::{read_grid_function_csv, write_grid_function_csv};
pub use norms::{inner_product_l2, landau_ratio, lp_norm, LpExponent};
pub use quadrature::{integrate_samples, QuadValue};

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FunctionSpaceError {
    #[error("empty grid")]
    EmptyGrid,
    #[error("grid needs at least {min} nodes, got {got}")]
    GridTooSmall { min: usize, got: usize },
    #[error("grid nodes must be strictly increasing and finite")]
    NodesNotIncreasing,
    #[error("log-refined grid requires a positive minimum node")]
    NonpositiveLogNode,
    #[error("sample length {values} does not match node count {nodes}")]
    LengthMismatch { values: usize, nodes: usize },
    #[error("non-finite sample encountered")]
    NonFiniteValue,
    #[error("Landau ratio denominator vanishes (limiting case; caller decides)")]
    DegenerateDenominator,
    #[error("derivative order {0} outside supported range 1..=4")]
    UnsupportedOrder(u32),
    #[error("grid function csv: {0}")]
    Csv(String),
}

/// Layout of a grid; quadrature and refinement strategies key off this.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GridKind {
    /// Equally spaced nodes on `[a, b]`.
    Uniform,
    /// Geometrically spaced nodes accumulating at zero; min node > 0.
    LogRefinedAtZero,
    /// Equally spaced nodes on a symmetric interval of the real line.
    TwoSidedLine,
}

/// Strictly increasing sample points with at least [`Grid::MIN_NODES`] nodes.
#[derive(Debug, Clone)]
pub struct Grid {
    nodes: Vec<f64>,
    kind: GridKind,
}

impl Grid {
    pub const MIN_NODES: usize = 16;

    /// Wraps explicit nodes after validating the grid invariants.
    pub fn from_nodes(nodes: Vec<f64>, kind: GridKind) -> Result<Self, FunctionSpaceError> {
        if nodes.is_empty() {
            return Err(FunctionSpaceError::EmptyGrid);
        }
        if nodes.len() < Self::MIN_NODES {
            return Err(FunctionSpaceError::GridTooSmall {
                min: Self::MIN_NODES,
                got: nodes.len(),
            });
        }
        if nodes.iter().any(|x| !x.is_finite())
            || nodes.windows(2).any(|w| w[1] <= w[0])
        {
            return Err(FunctionSpaceError::NodesNotIncreasing);
        }
        if kind == GridKind::LogRefinedAtZero && nodes[0] <= 0.0 {
            return Err(FunctionSpaceError::NonpositiveLogNode);
        }
        Ok(Grid { nodes, kind })
    }

    /// Uniform grid on `[a, b]`. The node count is rounded up so the panel
    /// count is divisible by four (composite Simpson plus one Richardson
    /// halving always apply).
    pub fn uniform(a: f64, b: f64, n: usize) -> Result<Self, FunctionSpaceError> {
        let n = round_up_nodes(n);
        let h = (b - a) / (n - 1) as f64;
        let nodes = (0..n).map(|i| a + h * i as f64).collect();
        Self::from_nodes(nodes, GridKind::Uniform)
    }

    /// Symmetric uniform grid on `[-half_width, half_width]`.
    pub fn two_sided(half_width: f64, n: usize) -> Result<Self, FunctionSpaceError> {
        let n = round_up_nodes(n);
        let h = 2.0 * half_width / (n - 1) as f64;
        let nodes = (0..n).map(|i| -half_width + h * i as f64).collect();
        Self::from_nodes(nodes, GridKind::TwoSidedLine)
    }

    /// Geometric grid from `x_min` to `x_max` with roughly `per_decade`
    /// nodes per decade (uniform in log x).
    pub fn log_refined(
        x_min: f64,
        x_max: f64,
        per_decade: usize,
    ) -> Result<Self, FunctionSpaceError> {
        if x_min <= 0.0 {
            return Err(FunctionSpaceError::NonpositiveLogNode);
        }
        let decades = (x_max / x_min).log10();
        let n = round_up_nodes(((decades * per_decade as f64).ceil() as usize).max(Self::MIN_NODES));
        let (la, lb) = (x_min.ln(), x_max.ln());
        let h = (lb - la) / (n - 1) as f64;
        let nodes = (0..n).map(|i| (la + h * i as f64).exp()).collect();
        Self::from_nodes(nodes, GridKind::LogRefinedAtZero)
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn kind(&self) -> GridKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn first(&self) -> f64 {
        self.nodes[0]
    }

    pub fn last(&self) -> f64 {
        *self.nodes.last().unwrap()
    }

    /// Uniform spacing, if the grid is (numerically) equally spaced.
    pub fn spacing(&self) -> Option<f64> {
        let h = self.nodes[1] - self.nodes[0];
        let uniform = self
            .nodes
            .windows(2)
            .all(|w| ((w[1] - w[0]) - h).abs() <= 1e-9 * h.abs().max(1.0));
        uniform.then_some(h)
    }

    /// Same span and kind with doubled node density (midpoint insertion in
    /// the native coordinate, so uniform stays uniform and geometric stays
    /// geometric).
    pub fn refine(&self) -> Grid {
        let mut nodes = Vec::with_capacity(self.nodes.len() * 2 - 1);
        for w in self.nodes.windows(2) {
            nodes.push(w[0]);
            let mid = match self.kind {
                GridKind::LogRefinedAtZero => (w[0].ln() / 2.0 + w[1].ln() / 2.0).exp(),
                _ => 0.5 * (w[0] + w[1]),
            };
            nodes.push(mid);
        }
        nodes.push(self.last());
        Grid {
            nodes,
            kind: self.kind,
        }
    }
}

fn round_up_nodes(n: usize) -> usize {
    let n = n.max(Grid::MIN_NODES + 1);
    // next count with (n - 1) % 4 == 0
    n + (4 - (n - 1) % 4) % 4
}


/// Positive weight function on the grid interior: either `c * x^s` or an
/// arbitrary callable.
#[derive(Clone)]
pub enum Weight {
    Power { coeff: f64, exponent: f64 },
    General(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
}

impl Weight {
    pub fn one() -> Self {
        Weight::Power {
            coeff: 1.0,
            exponent: 0.0,
        }
    }

    pub fn power(coeff: f64, exponent: f64) -> Self {
        Weight::Power { coeff, exponent }
    }

    pub fn general(f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Weight::General(Arc::new(f))
    }

    pub fn eval(&self, x: f64) -> f64 {
        match self {
            Weight::Power { coeff, exponent } => {
                if *exponent == 0.0 {
                    *coeff
                } else {
                    coeff * x.powf(*exponent)
                }
            }
            Weight::General(f) => f(x),
        }
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Weight::Power { coeff, exponent } => write!(f, "Weight({coeff} * x^{exponent})"),
            Weight::General(_) => write!(f, "Weight(general)"),
        }
    }
}

/// Complex samples over a [`Grid`], optionally carrying exact first and
/// second derivatives when the function is known in closed form.
#[derive(Debug, Clone)]
pub struct GridFunction {
    grid: Grid,
    values: Vec<Complex64>,
    deriv1: Option<Vec<Complex64>>,
    deriv2: Option<Vec<Complex64>>,
}

impl GridFunction {
    pub fn new(grid: Grid, values: Vec<Complex64>) -> Result<Self, FunctionSpaceError> {
        if values.len() != grid.len() {
            return Err(FunctionSpaceError::LengthMismatch {
                values: values.len(),
                nodes: grid.len(),
            });
        }
        Ok(GridFunction {
            grid,
            values,
            deriv1: None,
            deriv2: None,
        })
    }

    pub fn with_derivatives(
        grid: Grid,
        values: Vec<Complex64>,
        deriv1: Vec<Complex64>,
        deriv2: Vec<Complex64>,
    ) -> Result<Self, FunctionSpaceError> {
        let n = grid.len();
        if values.len() != n || deriv1.len() != n || deriv2.len() != n {
            return Err(FunctionSpaceError::LengthMismatch {
                values: values.len().min(deriv1.len()).min(deriv2.len()),
                nodes: n,
            });
        }
        Ok(GridFunction {
            grid,
            values,
            deriv1: Some(deriv1),
            deriv2: Some(deriv2),
        })
    }

    pub fn from_fn(grid: Grid, f: impl Fn(f64) -> Complex64) -> Self {
        let values = grid.nodes().iter().map(|&x| f(x)).collect();
        GridFunction {
            grid,
            values,
            deriv1: None,
            deriv2: None,
        }
    }

    /// Samples `f` together with its exact first and second derivatives.
    pub fn from_fn_with_derivatives(
        grid: Grid,
        f: impl Fn(f64) -> (Complex64, Complex64, Complex64),
    ) -> Self {
        let mut values = Vec::with_capacity(grid.len());
        let mut d1 = Vec::with_capacity(grid.len());
        let mut d2 = Vec::with_capacity(grid.len());
        for &x in grid.nodes() {
            let (v, a, b) = f(x);
            values.push(v);
            d1.push(a);
            d2.push(b);
        }
        GridFunction {
            grid,
            values,
            deriv1: Some(d1),
            deriv2: Some(d2),
        }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn deriv1(&self) -> Option<&[Complex64]> {
        self.deriv1.as_deref()
    }

    pub fn deriv2(&self) -> Option<&[Complex64]> {
        self.deriv2.as_deref()
    }

    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|v| v.re.is_finite() && v.im.is_finite())
    }

    /// Pointwise scalar multiple, scaling attached derivatives as well.
    pub fn scaled(&self, c: Complex64) -> GridFunction {
        let scale = |v: &Vec<Complex64>| v.iter().map(|&z| c * z).collect::<Vec<_>>();
        GridFunction {
            grid: self.grid.clone(),
            values: scale(&self.values),
            deriv1: self.deriv1.as_ref().map(scale),
            deriv2: self.deriv2.as_ref().map(scale),
        }
    }
}
