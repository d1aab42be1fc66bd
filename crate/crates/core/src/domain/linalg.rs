//! Sparse symmetric systems: CSR storage, incomplete Cholesky and PCG.

use crate::error::{Error, Result};

/// Compressed sparse rows with sorted column indices.
#[derive(Debug, Clone, PartialEq)]
pub struct Csr {
    n: usize,
    row_ptr: Vec<usize>,
    cols: Vec<usize>,
    vals: Vec<f64>,
}

impl Csr {
    /// Builds from per-row `(column, value)` lists; duplicates are summed.
    pub fn from_rows(rows: Vec<Vec<(usize, f64)>>) -> Self {
        let n = rows.len();
        let mut row_ptr = Vec::with_capacity(n + 1);
        let mut cols = Vec::new();
        let mut vals = Vec::new();
        row_ptr.push(0);
        for mut row in rows {
            row.sort_by_key(|e| e.0);
            for (c, v) in row {
                if cols.len() > *row_ptr.last().expect("row_ptr starts non-empty")
                    && *cols.last().expect("checked non-empty") == c
                {
                    *vals.last_mut().expect("checked non-empty") += v;
                } else {
                    cols.push(c);
                    vals.push(v);
                }
            }
            row_ptr.push(cols.len());
        }
        Self {
            n,
            row_ptr,
            cols,
            vals,
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    pub fn row(&self, i: usize) -> (&[usize], &[f64]) {
        let (a, b) = (self.row_ptr[i], self.row_ptr[i + 1]);
        (&self.cols[a..b], &self.vals[a..b])
    }

    fn row_dot(&self, i: usize, x: &[f64]) -> f64 {
        let (c, v) = self.row(i);
        c.iter().zip(v).map(|(j, a)| a * x[*j]).sum()
    }

    /// y = A x. Rows are independent, so the parallel path is bit-identical.
    pub fn mul_into(&self, x: &[f64], y: &mut [f64]) {
        #[cfg(feature = "parallel")]
        {
            use rayon::prelude::*;
            if self.n >= 4096 {
                y.par_iter_mut()
                    .enumerate()
                    .for_each(|(i, yi)| *yi = self.row_dot(i, x));
                return;
            }
        }
        for (i, yi) in y.iter_mut().enumerate() {
            *yi = self.row_dot(i, x);
        }
    }

    pub fn mul(&self, x: &[f64]) -> Vec<f64> {
        let mut y = vec![0.0; self.n];
        self.mul_into(x, &mut y);
        y
    }

    /// xᵀ A x.
    pub fn quadratic_form(&self, x: &[f64]) -> f64 {
        dot(x, &self.mul(x))
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        (0..self.n).all(|i| {
            let (c, v) = self.row(i);
            c.iter().zip(v).all(|(j, a)| {
                let (cj, vj) = self.row(*j);
                match cj.binary_search(&i) {
                    Ok(k) => (vj[k] - a).abs() <= tol * a.abs().max(1.0),
                    Err(_) => false,
                }
            })
        })
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Zero-fill incomplete Cholesky A ≈ L Lᵀ, stored by rows of L.
#[derive(Debug, Clone)]
pub struct IncompleteCholesky {
    lower: Csr,
    diag: Vec<f64>,
}

impl IncompleteCholesky {
    pub fn new(a: &Csr) -> Result<Self> {
        let n = a.dim();
        let mut rows: Vec<Vec<(usize, f64)>> = Vec::with_capacity(n);
        for i in 0..n {
            let (c, v) = a.row(i);
            rows.push(c.iter().zip(v).filter(|(j, _)| **j <= i).map(|(j, x)| (*j, *x)).collect());
        }
        let mut lower = Csr::from_rows(rows);
        let mut diag = vec![0.0; n];
        for i in 0..n {
            let (a_lo, a_hi) = (lower.row_ptr[i], lower.row_ptr[i + 1]);
            for p in a_lo..a_hi {
                let j = lower.cols[p];
                // l_ij = (a_ij − Σ_{k<j} l_ik l_jk) / l_jj over the shared pattern.
                let mut s = lower.vals[p];
                let (b_lo, b_hi) = (lower.row_ptr[j], lower.row_ptr[j + 1]);
                let (mut x, mut y) = (a_lo, b_lo);
                while x < p && y < b_hi {
                    let (cx, cy) = (lower.cols[x], lower.cols[y]);
                    if cy >= j {
                        break;
                    }
                    if cx == cy {
                        s -= lower.vals[x] * lower.vals[y];
                        x += 1;
                        y += 1;
                    } else if cx < cy {
                        x += 1;
                    } else {
                        y += 1;
                    }
                }
                if j == i {
                    if !(s > 0.0) {
                        return Err(Error::NonConvergence {
                            what: "incomplete Cholesky (non-positive pivot)",
                            iterations: i,
                        });
                    }
                    let d = s.sqrt();
                    lower.vals[p] = d;
                    diag[i] = d;
                } else {
                    lower.vals[p] = s / diag[j];
                }
            }
        }
        Ok(Self { lower, diag })
    }

    /// z = (L Lᵀ)⁻¹ r.
    pub fn apply(&self, r: &[f64], z: &mut [f64]) {
        let n = self.diag.len();
        let l = &self.lower;
        for i in 0..n {
            let (c, v) = l.row(i);
            let mut s = r[i];
            for (j, a) in c.iter().zip(v) {
                if *j < i {
                    s -= a * z[*j];
                }
            }
            z[i] = s / self.diag[i];
        }
        for i in (0..n).rev() {
            z[i] /= self.diag[i];
            let zi = z[i];
            let (c, v) = l.row(i);
            for (j, a) in c.iter().zip(v) {
                if *j < i {
                    z[*j] -= a * zi;
                }
            }
        }
    }
}

/// Outcome of a preconditioned CG solve.
#[derive(Debug, Clone, PartialEq)]
pub struct CgOutcome {
    pub iterations: usize,
    pub relative_residual: f64,
}

/// Solves A x = b from the initial guess in `x`, to ‖r‖ ≤ rel_tol ‖b‖.
pub fn pcg(
    a: &Csr,
    pre: &IncompleteCholesky,
    b: &[f64],
    x: &mut [f64],
    rel_tol: f64,
    max_iter: usize,
) -> Result<CgOutcome> {
    let n = a.dim();
    let b_norm = norm(b);
    if b_norm == 0.0 {
        x.iter_mut().for_each(|v| *v = 0.0);
        return Ok(CgOutcome {
            iterations: 0,
            relative_residual: 0.0,
        });
    }
    let mut r = a.mul(x);
    for i in 0..n {
        r[i] = b[i] - r[i];
    }
    let mut z = vec![0.0; n];
    pre.apply(&r, &mut z);
    let mut p = z.clone();
    let mut rz = dot(&r, &z);
    let mut ap = vec![0.0; n];
    for it in 0..=max_iter {
        let res = norm(&r) / b_norm;
        if res <= rel_tol {
            return Ok(CgOutcome {
                iterations: it,
                relative_residual: res,
            });
        }
        if it == max_iter {
            break;
        }
        a.mul_into(&p, &mut ap);
        let alpha = rz / dot(&p, &ap);
        for i in 0..n {
            x[i] += alpha * p[i];
            r[i] -= alpha * ap[i];
        }
        pre.apply(&r, &mut z);
        let rz_new = dot(&r, &z);
        let beta = rz_new / rz;
        rz = rz_new;
        for i in 0..n {
            p[i] = z[i] + beta * p[i];
        }
    }
    Err(Error::NonConvergence {
        what: "preconditioned conjugate gradient",
        iterations: max_iter,
    })
}
