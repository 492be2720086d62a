//! Dense symmetric eigensolvers backing the spectral norm.
//!
//! Two independent routes: cyclic Jacobi for small matrices (all
//! eigenvalues, near machine precision) and power iteration on the squared
//! matrix for large ones (dominant magnitude only; squaring avoids the
//! ±λ oscillation of bipartite-like spectra).

use crate::error::{Error, Result};

/// Hard cap on Jacobi sweeps; cyclic Jacobi converges quadratically, so
/// hitting this means the input is broken (NaN/Inf), not slow.
pub const JACOBI_MAX_SWEEPS: usize = 64;

/// Default iteration cap for power iteration.
pub const POWER_ITERATION_CAP: usize = 100_000;

/// Dense symmetric matrix in row-major storage.
#[derive(Debug, Clone)]
pub struct SymMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                data[i * n + j] = f(i, j);
            }
        }
        Self { n, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// Frobenius norm of the off-diagonal part.
    fn off_diagonal_norm(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j {
                    s += self.get(i, j).powi(2);
                }
            }
        }
        s.sqrt()
    }

    fn matvec(&self, x: &[f64], out: &mut [f64]) {
        for i in 0..self.n {
            out[i] = (0..self.n).map(|j| self.get(i, j) * x[j]).sum();
        }
    }
}

/// Outcome of an eigensolve: value(s) plus convergence diagnostics.
#[derive(Debug, Clone)]
pub struct EigenSolve {
    pub eigenvalues: Vec<f64>,
    /// Jacobi: sweeps performed. Power iteration: matrix-vector rounds.
    pub iterations: usize,
    /// Relative residual at exit (off-diagonal/Frobenius for Jacobi,
    /// `‖Bx − μx‖/‖B‖` for power iteration).
    pub residual: f64,
}

/// All eigenvalues of a symmetric matrix by cyclic Jacobi rotations.
///
/// Internally drives the off-diagonal mass to near machine precision; `tol`
/// is the acceptance threshold on the relative off-diagonal residual, not
/// the internal target. Eigenvalues are returned in descending order.
pub fn jacobi_eigenvalues(matrix: &SymMatrix, tol: f64) -> Result<EigenSolve> {
    let n = matrix.dim();
    let mut a = matrix.clone();
    let fro = a.frobenius_norm();
    if n == 1 || fro == 0.0 {
        let mut eigenvalues: Vec<f64> = (0..n).map(|i| a.get(i, i)).collect();
        eigenvalues.sort_by(|x, y| y.partial_cmp(x).unwrap());
        return Ok(EigenSolve {
            eigenvalues,
            iterations: 0,
            residual: 0.0,
        });
    }
    // Aim for machine precision regardless of the requested tolerance; the
    // no-rotation break below stops the loop once f64 cannot improve.
    let target = fro * 1e-15;
    let mut sweeps = 0;
    while sweeps < JACOBI_MAX_SWEEPS {
        let off = a.off_diagonal_norm();
        if off <= target {
            break;
        }
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a.get(p, q);
                if apq == 0.0 {
                    continue;
                }
                let app = a.get(p, p);
                let aqq = a.get(q, q);
                // Skip rotations that cannot change the result in f64.
                if apq.abs() <= f64::EPSILON * 0.5 * (app.abs() + aqq.abs()) && sweeps > 2 {
                    continue;
                }
                rotated = true;
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (1.0 + theta * theta).sqrt())
                } else {
                    1.0 / (theta - (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a.get(k, p);
                    let akq = a.get(k, q);
                    a.set(k, p, c * akp - s * akq);
                    a.set(k, q, s * akp + c * akq);
                }
                for k in 0..n {
                    let apk = a.get(p, k);
                    let aqk = a.get(q, k);
                    a.set(p, k, c * apk - s * aqk);
                    a.set(q, k, s * apk + c * aqk);
                }
            }
        }
        sweeps += 1;
        if !rotated {
            break;
        }
    }
    let residual = if fro == 0.0 { 0.0 } else { a.off_diagonal_norm() / fro };
    if residual > tol {
        return Err(Error::NonConvergence {
            iterations: sweeps,
            residual,
            tol,
        });
    }
    let mut eigenvalues: Vec<f64> = (0..n).map(|i| a.get(i, i)).collect();
    eigenvalues.sort_by(|x, y| y.partial_cmp(x).unwrap());
    Ok(EigenSolve {
        eigenvalues,
        iterations: sweeps,
        residual,
    })
}

/// Dominant eigenvalue magnitude of a symmetric matrix via power iteration
/// on `B = S·S`. Returns `√λ_max(B) = max |λ_i(S)|`.
///
/// Deterministic: starts from the normalized all-ones vector. Errors with a
/// diagnostic if the relative residual has not reached `tol` within `cap`
/// iterations; never returns a silent wrong value.
pub fn power_iteration_spectral_norm(matrix: &SymMatrix, tol: f64, cap: usize) -> Result<EigenSolve> {
    let n = matrix.dim();
    let fro = matrix.frobenius_norm();
    if fro == 0.0 {
        return Ok(EigenSolve {
            eigenvalues: vec![0.0],
            iterations: 0,
            residual: 0.0,
        });
    }
    let mut x = vec![1.0 / (n as f64).sqrt(); n];
    let mut sx = vec![0.0; n];
    let mut bx = vec![0.0; n];
    let mut mu = 0.0;
    for iteration in 1..=cap {
        matrix.matvec(&x, &mut sx);
        matrix.matvec(&sx, &mut bx);
        mu = x.iter().zip(&bx).map(|(a, b)| a * b).sum::<f64>();
        let residual_norm = bx
            .iter()
            .zip(&x)
            .map(|(b, xi)| (b - mu * xi).powi(2))
            .sum::<f64>()
            .sqrt();
        // Normalize against the squared matrix's scale.
        let scale = fro * fro;
        if residual_norm <= tol * scale {
            return Ok(EigenSolve {
                eigenvalues: vec![mu.max(0.0).sqrt()],
                iterations: iteration,
                residual: residual_norm / scale,
            });
        }
        let norm = bx.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm == 0.0 {
            // x landed in the kernel of S²; the dominant action on the
            // all-ones start has been exhausted, restart deterministically
            // from a basis vector not yet tried.
            let k = iteration % n;
            x.iter_mut().for_each(|v| *v = 0.0);
            x[k] = 1.0;
            continue;
        }
        for i in 0..n {
            x[i] = bx[i] / norm;
        }
    }
    Err(Error::NonConvergence {
        iterations: cap,
        residual: mu,
        tol,
    })
}
