//! Shared fixtures for the kernel benchmarks.

use num_complex::Complex64;

use normlab::function_space::{Grid, GridFunction};

/// The half-line equality-family member used across benchmarks.
pub fn extremal_fixture() -> GridFunction {
    let grid = Grid::uniform(0.0, 60.0, 4001).unwrap();
    normlab::catalog::half_line_extremal(Complex64::new(1.0, 0.0), 1.0, &grid).unwrap()
}
