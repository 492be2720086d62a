//! Oracles shared by the oracle-comparison and acceptance suites. These
//! deliberately avoid the library's own algorithms: the grid oracle is raw
//! brute force, the eigenvalue oracle is nalgebra's symmetric eigensolver.

use graphon::kernel::StepKernel;
use graphon::norms::weighted_spectral_matrix;
use nalgebra::DMatrix;

/// Brute-force bilinear maximization over the fractional grid
/// `{0, 0.25, 0.5, 0.75, 1}ⁿ` on both sides. The grid contains every
/// indicator vertex, and a bilinear form on a box attains its extrema at
/// vertices, so this equals the cut norm for small n.
pub fn grid_cut_norm(k: &StepKernel) -> f64 {
    const LEVELS: [f64; 5] = [0.0, 0.25, 0.5, 0.75, 1.0];
    let n = k.block_count();
    assert!(n <= 4, "grid oracle is exponential in n");
    let w = k.weights();
    let points = LEVELS.len().pow(n as u32);
    let vector = |mut idx: usize| -> Vec<f64> {
        (0..n)
            .map(|_| {
                let v = LEVELS[idx % LEVELS.len()];
                idx /= LEVELS.len();
                v
            })
            .collect()
    };
    let mut best = 0.0_f64;
    for si in 0..points {
        let s = vector(si);
        for ti in 0..points {
            let t = vector(ti);
            let mut form = 0.0;
            for i in 0..n {
                for j in 0..n {
                    form += w[i] * w[j] * k.value(i, j) * s[i] * t[j];
                }
            }
            best = best.max(form.abs());
        }
    }
    best
}

/// Eigenvalues of the weighted operator matrix through nalgebra, the dense
/// eigensolver oracle.
pub fn nalgebra_eigenvalues(k: &StepKernel) -> Vec<f64> {
    let s = weighted_spectral_matrix(k);
    let n = s.dim();
    let m = DMatrix::from_fn(n, n, |i, j| s.get(i, j));
    m.symmetric_eigen().eigenvalues.iter().copied().collect()
}
