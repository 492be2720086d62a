//! Step kernels and step graphons.
//!
//! A step kernel is a bounded symmetric function on `[0,1]²` that is constant
//! on the cells of a finite product partition. It is stored as the block
//! weights (lengths of the partition intervals) plus the square matrix of
//! block values. A step graphon is the `[0,1]`-valued special case, which is
//! what graphs sampled from the model and homomorphism densities require.

use crate::error::{Error, Result};
use crate::rng;
use crate::tolerances::{SYMMETRY_TOL, WEIGHT_SUM_TOL};

/// Symmetric block-constant bounded function on `[0,1]²`.
///
/// Invariants, enforced at construction and preserved by every operation:
/// the weights are positive and sum to 1 within [`WEIGHT_SUM_TOL`], the
/// value matrix is symmetric, and `|value| <= bound` everywhere.
#[derive(Debug, Clone, PartialEq)]
pub struct StepKernel {
    weights: Vec<f64>,
    /// Row-major `n × n`, symmetric.
    values: Vec<f64>,
    bound: f64,
}

impl StepKernel {
    /// Validate and build a kernel from a square value matrix and block weights.
    ///
    /// The matrix must be symmetric within [`SYMMETRY_TOL`]; it is then
    /// symmetrized exactly by averaging `(v[i][j] + v[j][i]) / 2` so that
    /// float round-trips through files cannot reintroduce asymmetry. The
    /// bound is set to the largest absolute value.
    pub fn new(values: Vec<Vec<f64>>, weights: Vec<f64>) -> Result<Self> {
        let n = weights.len();
        if n == 0 {
            return Err(Error::Empty);
        }
        if values.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "{} weights but {} value rows",
                n,
                values.len()
            )));
        }
        for (i, row) in values.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch(format!(
                    "value row {} has length {}, expected {}",
                    i,
                    row.len(),
                    n
                )));
            }
        }
        for (i, &w) in weights.iter().enumerate() {
            if w.is_nan() || w <= 0.0 {
                return Err(Error::NonPositiveWeight { index: i, value: w });
            }
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > WEIGHT_SUM_TOL {
            return Err(Error::WeightSum {
                sum,
                tol: WEIGHT_SUM_TOL,
            });
        }
        for i in 0..n {
            for j in (i + 1)..n {
                let delta = (values[i][j] - values[j][i]).abs();
                if delta > SYMMETRY_TOL {
                    return Err(Error::NotSymmetric {
                        i,
                        j,
                        delta,
                        tol: SYMMETRY_TOL,
                    });
                }
            }
        }
        let mut flat = vec![0.0; n * n];
        let mut bound: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                let v = 0.5 * (values[i][j] + values[j][i]);
                flat[i * n + j] = v;
                bound = bound.max(v.abs());
            }
        }
        Ok(Self {
            weights,
            values: flat,
            bound,
        })
    }

    /// Like [`StepKernel::new`] but with an explicit bound, e.g. the sum of
    /// the operands' bounds for a kernel difference. Errors if any value
    /// exceeds it.
    pub fn with_bound(values: Vec<Vec<f64>>, weights: Vec<f64>, bound: f64) -> Result<Self> {
        let mut k = Self::new(values, weights)?;
        let n = k.block_count();
        for i in 0..n {
            for j in 0..n {
                let v = k.value(i, j);
                if v.abs() > bound {
                    return Err(Error::BoundExceeded {
                        i,
                        j,
                        value: v,
                        bound,
                    });
                }
            }
        }
        k.bound = bound;
        Ok(k)
    }

    /// Constant kernel of a single block.
    pub fn constant(value: f64) -> Self {
        Self {
            weights: vec![1.0],
            values: vec![value],
            bound: value.abs(),
        }
    }

    pub fn block_count(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn bound(&self) -> f64 {
        self.bound
    }

    /// Value on block `(i, j)`.
    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.block_count() + j]
    }

    /// Largest absolute block value (the essential sup norm).
    pub fn sup_norm(&self) -> f64 {
        self.values.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    /// Value matrix in nested row form, as it appears in kernel files.
    pub fn value_rows(&self) -> Vec<Vec<f64>> {
        let n = self.block_count();
        (0..n)
            .map(|i| self.values[i * n..(i + 1) * n].to_vec())
            .collect()
    }

    /// Block containing `u`: blocks are half-open `[c_{i-1}, c_i)` with the
    /// last block closed, so `u = 0` maps to block 0 and `u = 1` to the last.
    pub fn block_index(&self, u: f64) -> Result<usize> {
        if !(0.0..=1.0).contains(&u) {
            return Err(Error::OutOfDomain(u));
        }
        let mut cumulative = 0.0;
        for (i, w) in self.weights.iter().enumerate() {
            cumulative += w;
            if u < cumulative {
                return Ok(i);
            }
        }
        Ok(self.block_count() - 1)
    }

    /// Pointwise kernel value `W(u, v)`.
    pub fn evaluate(&self, u: f64, v: f64) -> Result<f64> {
        let i = self.block_index(u)?;
        let j = self.block_index(v)?;
        Ok(self.value(i, j))
    }

    /// Apply the integral operator to a block-constant signal:
    /// `out[i] = Σ_j w[j] · value[i][j] · x[j]`.
    pub fn apply(&self, x: &BlockSignal) -> Result<BlockSignal> {
        let n = self.block_count();
        if x.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "signal has {} coefficients, kernel has {} blocks",
                x.len(),
                n
            )));
        }
        let out = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| self.weights[j] * self.value(i, j) * x.coefficients()[j])
                    .sum()
            })
            .collect();
        Ok(BlockSignal::new(out))
    }

    /// Short content digest: SHA-256 over the bit-exact little-endian
    /// encoding of block count, weights, and values, truncated to 16 hex
    /// characters. Identifies a kernel across reports and re-loads.
    pub fn digest(&self) -> String {
        use sha2::{Digest, Sha256};
        let mut hasher = Sha256::new();
        hasher.update((self.block_count() as u64).to_le_bytes());
        for w in &self.weights {
            hasher.update(w.to_bits().to_le_bytes());
        }
        for v in &self.values {
            hasher.update(v.to_bits().to_le_bytes());
        }
        let digest = hasher.finalize();
        digest[..8].iter().map(|b| format!("{b:02x}")).collect()
    }

    /// Scale every value by `c` (bound scales with `|c|`).
    pub fn scale(&self, c: f64) -> Self {
        Self {
            weights: self.weights.clone(),
            values: self.values.iter().map(|v| c * v).collect(),
            bound: self.bound * c.abs(),
        }
    }

    /// Blockwise difference `a − b` on the common refinement of the two
    /// partitions. The bound of the result is `a.bound() + b.bound()`.
    pub fn difference(a: &StepKernel, b: &StepKernel) -> Result<StepKernel> {
        let boundaries = merge_boundaries(&a.weights, &b.weights);
        let m = boundaries.len() - 1;
        let mut weights = Vec::with_capacity(m);
        let mut index_a = Vec::with_capacity(m);
        let mut index_b = Vec::with_capacity(m);
        for cell in 0..m {
            weights.push(boundaries[cell + 1] - boundaries[cell]);
            let mid = 0.5 * (boundaries[cell] + boundaries[cell + 1]);
            index_a.push(a.block_index(mid)?);
            index_b.push(b.block_index(mid)?);
        }
        // Renormalize away the float drift of the merged boundaries.
        let sum: f64 = weights.iter().sum();
        for w in &mut weights {
            *w /= sum;
        }
        let values = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| a.value(index_a[i], index_a[j]) - b.value(index_b[i], index_b[j]))
                    .collect()
            })
            .collect();
        StepKernel::with_bound(values, weights, a.bound + b.bound)
    }
}

/// Merged, deduplicated cumulative boundaries of two partitions of `[0,1]`.
fn merge_boundaries(wa: &[f64], wb: &[f64]) -> Vec<f64> {
    let cumulative = |ws: &[f64]| {
        let mut c = Vec::with_capacity(ws.len());
        let mut acc = 0.0;
        for w in ws {
            acc += w;
            c.push(acc);
        }
        // Pin the final boundary so both partitions end at exactly 1.
        *c.last_mut().unwrap() = 1.0;
        c
    };
    let ca = cumulative(wa);
    let cb = cumulative(wb);
    let mut merged = vec![0.0];
    let (mut i, mut j) = (0, 0);
    while i < ca.len() || j < cb.len() {
        let next = match (ca.get(i), cb.get(j)) {
            (Some(&x), Some(&y)) if (x - y).abs() <= WEIGHT_SUM_TOL => {
                i += 1;
                j += 1;
                x.min(y)
            }
            (Some(&x), Some(&y)) if x < y => {
                i += 1;
                x
            }
            (Some(_), Some(&y)) => {
                j += 1;
                y
            }
            (Some(&x), None) => {
                i += 1;
                x
            }
            (None, Some(&y)) => {
                j += 1;
                y
            }
            (None, None) => unreachable!(),
        };
        if next - merged.last().unwrap() > WEIGHT_SUM_TOL {
            merged.push(next);
        }
    }
    *merged.last_mut().unwrap() = 1.0;
    merged
}

/// Step graphon: a step kernel with all values in `[0,1]` and bound 1.
#[derive(Debug, Clone, PartialEq)]
pub struct StepGraphon(StepKernel);

impl StepGraphon {
    /// Validate and build a graphon (all values in `[0,1]`).
    pub fn new(values: Vec<Vec<f64>>, weights: Vec<f64>) -> Result<Self> {
        Self::from_kernel(StepKernel::new(values, weights)?)
    }

    /// Reinterpret a kernel as a graphon; errors on any value outside `[0,1]`.
    pub fn from_kernel(mut kernel: StepKernel) -> Result<Self> {
        let n = kernel.block_count();
        for i in 0..n {
            for j in 0..n {
                let v = kernel.value(i, j);
                if !(0.0..=1.0).contains(&v) {
                    return Err(Error::NotAGraphon { i, j, value: v });
                }
            }
        }
        kernel.bound = 1.0;
        Ok(Self(kernel))
    }

    /// Constant graphon `W ≡ p`.
    pub fn constant(p: f64) -> Result<Self> {
        Self::from_kernel(StepKernel::constant(p))
    }

    pub fn as_kernel(&self) -> &StepKernel {
        &self.0
    }

    pub fn into_kernel(self) -> StepKernel {
        self.0
    }

    /// Induced step graphon of a graph: `n` blocks of weight `1/n`, values
    /// given by the adjacency matrix.
    pub fn from_adjacency(g: &AdjacencyGraph) -> Result<Self> {
        let n = g.vertex_count();
        if n == 0 {
            return Err(Error::InvalidGraph("graph has no vertices".into()));
        }
        let values = (0..n)
            .map(|i| (0..n).map(|j| f64::from(u8::from(g.has_edge(i, j)))).collect())
            .collect();
        Self::new(values, vec![1.0 / n as f64; n])
    }

    /// W-random graph: draw `n` uniform labels `u_1..u_n`, then connect each
    /// pair `i < j` (row-major order) with probability `W(u_i, u_j)`.
    /// Deterministic given the seed; the generator is [`rng::RNG_ALGORITHM`].
    pub fn sample_graph(&self, n: usize, seed: u64) -> Result<AdjacencyGraph> {
        if n == 0 {
            return Err(Error::InvalidGraph("cannot sample a graph on 0 vertices".into()));
        }
        let mut r = rng::seeded(seed);
        let labels: Vec<f64> = (0..n).map(|_| rng::unit(&mut r)).collect();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                let p = self.as_kernel().evaluate(labels[i], labels[j])?;
                if rng::unit(&mut r) < p {
                    edges.push((i, j));
                }
            }
        }
        AdjacencyGraph::new(n, edges)
    }

    /// True when every block value is 0 or 1 within `tol`.
    pub fn is_zero_one_valued(&self, tol: f64) -> bool {
        let n = self.0.block_count();
        (0..n).all(|i| {
            (0..n).all(|j| {
                let v = self.0.value(i, j);
                v.abs() <= tol || (v - 1.0).abs() <= tol
            })
        })
    }
}

impl std::ops::Deref for StepGraphon {
    type Target = StepKernel;

    fn deref(&self) -> &StepKernel {
        &self.0
    }
}

/// Block-constant signal on `[0,1]`: one coefficient per kernel block.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockSignal(Vec<f64>);

impl BlockSignal {
    pub fn new(coefficients: Vec<f64>) -> Self {
        Self(coefficients)
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Simple undirected graph stored as a canonical `i < j` edge list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjacencyGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl AdjacencyGraph {
    /// Build from an edge list. Pairs are normalized to `i < j`, duplicates
    /// collapse; self-loops and out-of-range endpoints are rejected.
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGraph("graph has no vertices".into()));
        }
        let mut canonical = Vec::with_capacity(edges.len());
        for (a, b) in edges {
            if a == b {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {a}")));
            }
            if a >= n || b >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({a},{b}) out of range for {n} vertices"
                )));
            }
            canonical.push((a.min(b), a.max(b)));
        }
        canonical.sort_unstable();
        canonical.dedup();
        Ok(Self { n, edges: canonical })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        if a == b {
            return false;
        }
        self.edges.binary_search(&(a.min(b), a.max(b))).is_ok()
    }

    /// Dense symmetric 0/1 matrix with zero diagonal.
    pub fn adjacency_matrix(&self) -> Vec<Vec<u8>> {
        let mut m = vec![vec![0u8; self.n]; self.n];
        for &(a, b) in &self.edges {
            m[a][b] = 1;
            m[b][a] = 1;
        }
        m
    }
}

/// Named analytic graphon families, discretized at block midpoints.
#[derive(Debug, Clone, PartialEq)]
pub enum GraphonFamily {
    /// `W(u,v) = p`.
    Constant(f64),
    /// `W(u,v) = u·v`.
    Product,
    /// `W(u,v) = min(u,v)`.
    Min,
    /// Stochastic block model with a symmetric `k × k` probability matrix
    /// over `k` equal-width communities.
    Sbm(Vec<Vec<f64>>),
    /// `W(u,v) = exp(−α·|u−v|)`.
    ExpDecay(f64),
}

impl GraphonFamily {
    /// Parse a family from its CLI name and flat parameter vector.
    pub fn parse(name: &str, params: &[f64]) -> Result<Self> {
        let invalid = |reason: &str| Error::InvalidParams {
            family: name.to_string(),
            reason: reason.to_string(),
        };
        match name {
            "constant" => {
                if params.len() != 1 {
                    return Err(invalid("expected exactly one parameter p"));
                }
                let p = params[0];
                if !(0.0..=1.0).contains(&p) {
                    return Err(invalid("p must lie in [0,1]"));
                }
                Ok(Self::Constant(p))
            }
            "product" => {
                if !params.is_empty() {
                    return Err(invalid("takes no parameters"));
                }
                Ok(Self::Product)
            }
            "min" => {
                if !params.is_empty() {
                    return Err(invalid("takes no parameters"));
                }
                Ok(Self::Min)
            }
            "sbm" => {
                let len = params.len();
                let k = (len as f64).sqrt().round() as usize;
                if k == 0 || k * k != len {
                    return Err(invalid("expected k*k entries of a square block matrix"));
                }
                let mut rows = Vec::with_capacity(k);
                for i in 0..k {
                    rows.push(params[i * k..(i + 1) * k].to_vec());
                }
                for i in 0..k {
                    for j in 0..k {
                        if !(0.0..=1.0).contains(&rows[i][j]) {
                            return Err(invalid("block probabilities must lie in [0,1]"));
                        }
                        if (rows[i][j] - rows[j][i]).abs() > SYMMETRY_TOL {
                            return Err(invalid("block matrix must be symmetric"));
                        }
                    }
                }
                Ok(Self::Sbm(rows))
            }
            "exp-decay" => {
                if params.len() != 1 {
                    return Err(invalid("expected exactly one parameter alpha"));
                }
                if !params[0].is_finite() {
                    return Err(invalid("alpha must be finite"));
                }
                Ok(Self::ExpDecay(params[0]))
            }
            other => Err(Error::UnknownFamily(other.to_string())),
        }
    }

    /// Pointwise value of the analytic family before discretization.
    pub fn density(&self, u: f64, v: f64) -> f64 {
        match self {
            Self::Constant(p) => *p,
            Self::Product => u * v,
            Self::Min => u.min(v),
            Self::Sbm(rows) => {
                let k = rows.len();
                let block = |x: f64| ((x * k as f64) as usize).min(k - 1);
                rows[block(u)][block(v)]
            }
            Self::ExpDecay(alpha) => (-alpha * (u - v).abs()).exp(),
        }
    }

    /// Midpoint discretization: `resolution` uniform blocks, each valued at
    /// the family function of the block midpoints, clamped to `[0,1]`.
    pub fn build(&self, resolution: usize) -> Result<StepGraphon> {
        if resolution == 0 {
            return Err(Error::InvalidParams {
                family: format!("{self:?}"),
                reason: "resolution must be at least 1".into(),
            });
        }
        let r = resolution as f64;
        let mid = |i: usize| (i as f64 + 0.5) / r;
        let values = (0..resolution)
            .map(|i| {
                (0..resolution)
                    .map(|j| self.density(mid(i), mid(j)).clamp(0.0, 1.0))
                    .collect()
            })
            .collect();
        StepGraphon::new(values, vec![1.0 / r; resolution])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bipartite() -> StepGraphon {
        StepGraphon::new(vec![vec![0.0, 1.0], vec![1.0, 0.0]], vec![0.5, 0.5]).unwrap()
    }

    #[test]
    fn constant_kernel_bound() {
        let k = StepKernel::new(vec![vec![0.5]], vec![1.0]).unwrap();
        assert_eq!(k.bound(), 0.5);
        assert_eq!(k.block_count(), 1);
    }

    #[test]
    fn bipartite_construction() {
        let g = bipartite();
        assert_eq!(g.value(0, 1), 1.0);
        assert_eq!(g.value(0, 0), 0.0);
        assert_eq!(g.bound(), 1.0);
    }

    #[test]
    fn rejects_asymmetry() {
        let err = StepKernel::new(vec![vec![0.0, 1.0], vec![0.9, 0.0]], vec![0.5, 0.5]);
        assert!(matches!(err, Err(Error::NotSymmetric { .. })));
    }

    #[test]
    fn symmetrizes_roundoff() {
        let eps = 1e-14;
        let k = StepKernel::new(vec![vec![0.0, 1.0 + eps], vec![1.0, 0.0]], vec![0.5, 0.5]).unwrap();
        assert_eq!(k.value(0, 1), k.value(1, 0));
    }

    #[test]
    fn rejects_bad_weights() {
        assert!(matches!(
            StepKernel::new(vec![vec![0.0]], vec![0.0]),
            Err(Error::NonPositiveWeight { .. })
        ));
        assert!(matches!(
            StepKernel::new(vec![vec![0.0, 0.0], vec![0.0, 0.0]], vec![0.6, 0.5]),
            Err(Error::WeightSum { .. })
        ));
        assert!(matches!(StepKernel::new(vec![], vec![]), Err(Error::Empty)));
    }

    #[test]
    fn rejects_dimension_mismatch() {
        assert!(matches!(
            StepKernel::new(vec![vec![0.0]], vec![0.5, 0.5]),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn graphon_rejects_out_of_range() {
        assert!(matches!(
            StepGraphon::new(vec![vec![1.5]], vec![1.0]),
            Err(Error::NotAGraphon { .. })
        ));
        assert!(matches!(
            StepGraphon::new(vec![vec![-0.1]], vec![1.0]),
            Err(Error::NotAGraphon { .. })
        ));
    }

    #[test]
    fn apply_constant() {
        let k = StepKernel::constant(0.5);
        let y = k.apply(&BlockSignal::new(vec![1.0])).unwrap();
        assert_eq!(y.coefficients(), &[0.5]);
    }

    #[test]
    fn apply_bipartite_indicator() {
        let g = bipartite();
        let y = g.apply(&BlockSignal::new(vec![1.0, 0.0])).unwrap();
        assert_eq!(y.coefficients(), &[0.0, 0.5]);
    }

    #[test]
    fn apply_zero_signal() {
        let g = bipartite();
        let y = g.apply(&BlockSignal::new(vec![0.0, 0.0])).unwrap();
        assert_eq!(y.coefficients(), &[0.0, 0.0]);
    }

    #[test]
    fn apply_dimension_mismatch() {
        let g = bipartite();
        assert!(matches!(
            g.apply(&BlockSignal::new(vec![1.0])),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn evaluate_block_lookup() {
        let g = bipartite();
        assert_eq!(g.evaluate(0.2, 0.8).unwrap(), 1.0);
        assert_eq!(g.evaluate(0.2, 0.3).unwrap(), 0.0);
    }

    #[test]
    fn evaluate_boundaries() {
        let g = bipartite();
        // Half-open blocks: the interior boundary belongs to the later block,
        // the domain endpoints to the first and last.
        assert_eq!(g.block_index(0.0).unwrap(), 0);
        assert_eq!(g.block_index(0.5).unwrap(), 1);
        assert_eq!(g.block_index(1.0).unwrap(), 1);
        assert!(matches!(g.evaluate(1.2, 0.0), Err(Error::OutOfDomain(_))));
        assert!(matches!(g.evaluate(0.0, -0.1), Err(Error::OutOfDomain(_))));
    }

    #[test]
    fn adjacency_graph_basics() {
        let g = AdjacencyGraph::new(3, vec![(2, 0), (0, 2), (1, 2)]).unwrap();
        assert_eq!(g.edges(), &[(0, 2), (1, 2)]);
        assert!(g.has_edge(2, 0));
        assert!(!g.has_edge(0, 1));
        assert!(AdjacencyGraph::new(3, vec![(1, 1)]).is_err());
        assert!(AdjacencyGraph::new(3, vec![(0, 3)]).is_err());
        assert!(AdjacencyGraph::new(0, vec![]).is_err());
    }

    #[test]
    fn from_adjacency_single_edge() {
        let g = AdjacencyGraph::new(2, vec![(0, 1)]).unwrap();
        let w = StepGraphon::from_adjacency(&g).unwrap();
        assert_eq!(w.value_rows(), vec![vec![0.0, 1.0], vec![1.0, 0.0]]);
        assert_eq!(w.weights(), &[0.5, 0.5]);
    }

    #[test]
    fn from_adjacency_empty_and_triangle() {
        let empty = AdjacencyGraph::new(3, vec![]).unwrap();
        let w = StepGraphon::from_adjacency(&empty).unwrap();
        assert!(w.value_rows().iter().flatten().all(|&v| v == 0.0));
        assert_eq!(w.weights(), &[1.0 / 3.0; 3]);

        let triangle = AdjacencyGraph::new(3, vec![(0, 1), (1, 2), (0, 2)]).unwrap();
        let w = StepGraphon::from_adjacency(&triangle).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(w.value(i, j), f64::from(u8::from(i != j)));
            }
        }
    }

    #[test]
    fn sample_complete_and_empty() {
        let ones = StepGraphon::constant(1.0).unwrap();
        let g = ones.sample_graph(4, 7).unwrap();
        assert_eq!(g.edges().len(), 6);

        let zeros = StepGraphon::constant(0.0).unwrap();
        let g = zeros.sample_graph(4, 7).unwrap();
        assert!(g.edges().is_empty());
    }

    #[test]
    fn sample_is_deterministic() {
        let w = GraphonFamily::Sbm(vec![vec![0.9, 0.1], vec![0.1, 0.9]])
            .build(2)
            .unwrap();
        let a = w.sample_graph(20, 99).unwrap();
        let b = w.sample_graph(20, 99).unwrap();
        assert_eq!(a, b);
        let c = w.sample_graph(20, 100).unwrap();
        assert_ne!(a, c);
        assert!(w.sample_graph(0, 1).is_err());
    }

    #[test]
    fn difference_same_kernel_is_zero() {
        let g = bipartite();
        let d = StepKernel::difference(g.as_kernel(), g.as_kernel()).unwrap();
        let n = d.block_count();
        for i in 0..n {
            for j in 0..n {
                assert_eq!(d.value(i, j), 0.0);
            }
        }
    }

    #[test]
    fn difference_of_constants() {
        let a = StepKernel::constant(0.7);
        let b = StepKernel::constant(0.2);
        let d = StepKernel::difference(&a, &b).unwrap();
        assert_eq!(d.block_count(), 1);
        assert!((d.value(0, 0) - 0.5).abs() < 1e-15);
        assert!((d.bound() - 0.9).abs() < 1e-15);
    }

    #[test]
    fn difference_refines_partitions() {
        // 2 uniform blocks vs 3 uniform blocks: boundaries 0, 1/3, 1/2, 2/3, 1.
        let a = StepGraphon::new(vec![vec![0.0, 1.0], vec![1.0, 0.0]], vec![0.5, 0.5]).unwrap();
        let rows3 = vec![
            vec![0.2, 0.4, 0.6],
            vec![0.4, 0.2, 0.4],
            vec![0.6, 0.4, 0.2],
        ];
        let b = StepGraphon::new(rows3, vec![1.0 / 3.0; 3]).unwrap();
        let d = StepKernel::difference(a.as_kernel(), b.as_kernel()).unwrap();
        assert_eq!(d.block_count(), 4);
        let expected_weights = [1.0 / 3.0, 1.0 / 6.0, 1.0 / 6.0, 1.0 / 3.0];
        for (w, e) in d.weights().iter().zip(expected_weights) {
            assert!((w - e).abs() < 1e-12);
        }
        // Cell (0,3): a-block (0,1) = 1, b-block (0,2) = 0.6.
        assert!((d.value(0, 3) - 0.4).abs() < 1e-12);
        // Cell (1,2): a-blocks (0,1) = 1, b-block (1,1) = 0.2.
        assert!((d.value(1, 2) - 0.8).abs() < 1e-12);
    }

    #[test]
    fn builtin_constant_and_sbm() {
        let w = GraphonFamily::parse("constant", &[0.5]).unwrap().build(1).unwrap();
        assert_eq!(w.value_rows(), vec![vec![0.5]]);

        let w = GraphonFamily::parse("sbm", &[0.0, 1.0, 1.0, 0.0])
            .unwrap()
            .build(2)
            .unwrap();
        assert_eq!(w.value_rows(), vec![vec![0.0, 1.0], vec![1.0, 0.0]]);
    }

    #[test]
    fn builtin_product_midpoints() {
        let w = GraphonFamily::parse("product", &[]).unwrap().build(2).unwrap();
        let rows = w.value_rows();
        assert_eq!(rows[0], vec![0.0625, 0.1875]);
        assert_eq!(rows[1], vec![0.1875, 0.5625]);
    }

    #[test]
    fn builtin_rejects_bad_input() {
        assert!(matches!(
            GraphonFamily::parse("frobnicate", &[]),
            Err(Error::UnknownFamily(_))
        ));
        assert!(matches!(
            GraphonFamily::parse("constant", &[1.5]),
            Err(Error::InvalidParams { .. })
        ));
        assert!(matches!(
            GraphonFamily::parse("sbm", &[0.1, 0.2, 0.3]),
            Err(Error::InvalidParams { .. })
        ));
        assert!(GraphonFamily::parse("min", &[]).unwrap().build(0).is_err());
    }

    #[test]
    fn exp_decay_clamps() {
        let w = GraphonFamily::parse("exp-decay", &[2.0]).unwrap().build(4).unwrap();
        assert!(w.value_rows().iter().flatten().all(|v| (0.0..=1.0).contains(v)));
        assert_eq!(w.value(0, 0), 1.0);
    }
}
