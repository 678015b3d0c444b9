//! Seifert matrices of positive torus braids and an eigenvalue-based
//! signature oracle, independent of the lattice-point formula.

use nalgebra::{DMatrix, SymmetricEigen};
use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::theta::Theta;

/// Largest braid parameter the oracle accepts.
pub const ORACLE_MAX: u64 = 8;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeifertMatrix {
    pub size: usize,
    pub entries: Vec<Vec<i64>>,
}

impl SeifertMatrix {
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }
}

/// Seifert form of the fiber surface of the closure of `(σ₁⋯σ_{p-1})^q`.
///
/// Generators are the bricks between consecutive crossings in one column,
/// ordered row-major: brick `j` of column `i` has index `j(p-1) + i`.
pub fn seifert_matrix_torus(p: u64, q: u64) -> Result<SeifertMatrix> {
    if !(2 <= p && p <= q && q <= ORACLE_MAX) {
        return Err(domain(format!("oracle needs 2 <= p <= q <= {ORACLE_MAX}, got ({p},{q})")));
    }
    let (cols, rows) = ((p - 1) as usize, (q - 1) as usize);
    let size = cols * rows;
    let index = |i: usize, j: usize| j * cols + i;
    // crossing j of column i happens at time j(p-1)+i
    let span = |i: usize, j: usize| (j * cols + i, (j + 1) * cols + i);
    let mut m = vec![vec![0i64; size]; size];
    for j in 0..rows {
        for i in 0..cols {
            let a = index(i, j);
            m[a][a] = -1;
            if j + 1 < rows {
                m[a][index(i, j + 1)] = 1;
            }
            if i + 1 < cols {
                let (sa, ea) = span(i, j);
                for jb in 0..rows {
                    let b = index(i + 1, jb);
                    let (sb, eb) = span(i + 1, jb);
                    if sa < sb && sb < ea && ea < eb {
                        m[a][b] -= 1;
                    } else if sb < sa && sa < eb && eb < ea {
                        m[b][a] += 1;
                    }
                }
            }
        }
    }
    Ok(SeifertMatrix { size, entries: m })
}

/// Signature of `(1-ω)M + (1-ω̄)Mᵀ` at `ω = exp(2πiθ)`.
///
/// Eigenvalues closer to zero than `2⁻³⁰·max|H_ij|·size` make the sign
/// count unreliable; such evaluations are rejected rather than guessed.
pub fn oracle_signature(m: &SeifertMatrix, theta: &Theta) -> Result<i64> {
    let n = m.size;
    if n == 0 {
        return Ok(0);
    }
    let angle = 2.0 * std::f64::consts::PI * theta.to_f64();
    let (c, s) = (angle.cos(), angle.sin());
    // H = (1-c)(M+Mᵀ) - i·s(M-Mᵀ) = A + iB, embedded as [[A,-B],[B,A]]
    let mut h = DMatrix::<f64>::zeros(2 * n, 2 * n);
    let mut max_abs = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let (mij, mji) = (m.get(i, j) as f64, m.get(j, i) as f64);
            let a = (1.0 - c) * (mij + mji);
            let b = -s * (mij - mji);
            max_abs = max_abs.max(a.hypot(b));
            h[(i, j)] = a;
            h[(i + n, j + n)] = a;
            h[(i, j + n)] = -b;
            h[(i + n, j)] = b;
        }
    }
    let tolerance = 2f64.powi(-30) * max_abs * n as f64;
    let eigen = SymmetricEigen::new(h);
    let (mut pos, mut neg) = (0i64, 0i64);
    for &lambda in eigen.eigenvalues.iter() {
        if lambda.abs() < tolerance {
            return Err(Error::Rejected(format!("eigenvalue {lambda:e} within tolerance {tolerance:e} at θ = {theta}")));
        }
        if lambda > 0.0 {
            pos += 1;
        } else {
            neg += 1;
        }
    }
    // every eigenvalue of H appears twice in the real embedding
    Ok((pos - neg) / 2)
}
