//! CSV interchange for grid functions.
//!
//! Format: header `x,re,im` with optional `dre,dim,ddre,ddim` columns for
//! exact first/second derivatives, one node per row, `.` decimal separator.

use std::io::{Read, Write};

use num_complex::Complex64;

use super::{FunctionSpaceError, Grid, GridFunction, GridKind};

pub fn write_grid_function_csv<W: Write>(
    f: &GridFunction,
    out: W,
) -> Result<(), FunctionSpaceError> {
    let mut w = csv::Writer::from_writer(out);
    let with_derivs = f.deriv1().is_some() && f.deriv2().is_some();
    let header: &[&str] = if with_derivs {
        &["x", "re", "im", "dre", "dim", "ddre", "ddim"]
    } else {
        &["x", "re", "im"]
    };
    w.write_record(header).map_err(csv_err)?;
    for (i, &x) in f.grid().nodes().iter().enumerate() {
        let v = f.values()[i];
        let mut rec = vec![fmt(x), fmt(v.re), fmt(v.im)];
        if with_derivs {
            let d1 = f.deriv1().unwrap()[i];
            let d2 = f.deriv2().unwrap()[i];
            rec.extend([fmt(d1.re), fmt(d1.im), fmt(d2.re), fmt(d2.im)]);
        }
        w.write_record(&rec).map_err(csv_err)?;
    }
    w.flush().map_err(|e| FunctionSpaceError::Csv(e.to_string()))
}

pub fn read_grid_function_csv<R: Read>(
    input: R,
    kind: GridKind,
) -> Result<GridFunction, FunctionSpaceError> {
    let mut r = csv::Reader::from_reader(input);
    let headers = r.headers().map_err(csv_err)?.clone();
    let with_derivs = headers.len() >= 7;
    if headers.len() != 3 && headers.len() != 7 {
        return Err(FunctionSpaceError::Csv(format!(
            "expected 3 or 7 columns, got {}",
            headers.len()
        )));
    }
    let mut nodes = Vec::new();
    let mut values = Vec::new();
    let mut d1 = Vec::new();
    let mut d2 = Vec::new();
    for rec in r.records() {
        let rec = rec.map_err(csv_err)?;
        let field = |i: usize| -> Result<f64, FunctionSpaceError> {
            rec.get(i)
                .ok_or_else(|| FunctionSpaceError::Csv(format!("missing column {i}")))?
                .trim()
                .parse::<f64>()
                .map_err(|e| FunctionSpaceError::Csv(e.to_string()))
        };
        nodes.push(field(0)?);
        values.push(Complex64::new(field(1)?, field(2)?));
        if with_derivs {
            d1.push(Complex64::new(field(3)?, field(4)?));
            d2.push(Complex64::new(field(5)?, field(6)?));
        }
    }
    let grid = Grid::from_nodes(nodes, kind)?;
    if with_derivs {
        GridFunction::with_derivatives(grid, values, d1, d2)
    } else {
        GridFunction::new(grid, values)
    }
}

fn fmt(x: f64) -> String {
    // round-trippable shortest representation, `.` separator by construction
    format!("{x}")
}

fn csv_err(e: csv::Error) -> FunctionSpaceError {
    FunctionSpaceError::Csv(e.to_string())
}
