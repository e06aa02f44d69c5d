use crate::error::{FracError, Result};

/// Solves a tridiagonal system.
///
/// All slices have the system size `n`. Row `i` reads
/// `lower[i] x[i-1] + diag[i] x[i] + upper[i] x[i+1] = rhs[i]`;
/// `lower[0]` and `upper[n-1]` are ignored.
pub fn thomas_solve(lower: &[f64], diag: &[f64], upper: &[f64], rhs: &[f64]) -> Result<Vec<f64>> {
    let mut scratch = Vec::new();
    let mut out = Vec::new();
    thomas_solve_into(lower, diag, upper, rhs, &mut scratch, &mut out)?;
    Ok(out)
}

/// Allocation-free form of [`thomas_solve`] for time-stepping loops.
pub fn thomas_solve_into(
    lower: &[f64],
    diag: &[f64],
    upper: &[f64],
    rhs: &[f64],
    scratch: &mut Vec<f64>,
    out: &mut Vec<f64>,
) -> Result<()> {
    let n = diag.len();
    if lower.len() != n || upper.len() != n || rhs.len() != n {
        return Err(FracError::DimensionMismatch(format!(
            "tridiagonal bands {}/{}/{} and rhs {} must all have length {n}",
            lower.len(),
            diag.len(),
            upper.len(),
            rhs.len()
        )));
    }
    scratch.clear();
    scratch.resize(n, 0.0);
    out.clear();
    out.resize(n, 0.0);
    if n == 0 {
        return Ok(());
    }

    let mut pivot = diag[0];
    check_pivot(pivot, 0)?;
    out[0] = rhs[0] / pivot;
    for i in 1..n {
        scratch[i] = upper[i - 1] / pivot;
        pivot = diag[i] - lower[i] * scratch[i];
        check_pivot(pivot, i)?;
        out[i] = (rhs[i] - lower[i] * out[i - 1]) / pivot;
    }
    for i in (0..n - 1).rev() {
        out[i] -= scratch[i + 1] * out[i + 1];
    }
    Ok(())
}

fn check_pivot(p: f64, row: usize) -> Result<()> {
    if p == 0.0 || !p.is_finite() {
        Err(FracError::ZeroPivot(row))
    } else {
        Ok(())
    }
}
