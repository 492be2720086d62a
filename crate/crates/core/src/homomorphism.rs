//! Homomorphism densities of simple undirected motifs in step graphons.
//!
//! For a motif `F = (V, E)` and a step graphon the defining integral
//! collapses to a finite sum over block assignments:
//! `t(F, W) = Σ_{φ: V → blocks} Π_{(i,j) ∈ E} values[φ(i)][φ(j)] · Π_v weights[φ(v)]`.
//! The sum is exact; no sampling anywhere. Isolated motif vertices
//! contribute a factor `Σ_i w_i = 1` through the same product. C₂ as a
//! simple undirected graph is the single-edge motif, so `t(C₂, W)` is the
//! edge density `∫∫W` — not the squared Hilbert–Schmidt norm `∫∫W²`; the
//! two differ unless `W` is {0,1}-valued. [`errata_gap`] exhibits the
//! difference.

use serde::{Deserialize, Serialize};

use crate::eigen;
use crate::error::{Error, Result};
use crate::kernel::StepGraphon;
use crate::norms::{hs_norm_squared, weighted_spectral_matrix};
use crate::tolerances::SPECTRAL_TOL;

/// Default cap on motif vertices in exact enumeration.
pub const MAX_MOTIF_VERTICES: usize = 8;

/// Default cap on graphon blocks in exact enumeration.
pub const MAX_HOM_BLOCKS: usize = 10;

/// Simple undirected motif: vertex count plus canonical `i < j` edge list.
/// Directedness is unrepresentable by construction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Motif {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
}

impl Motif {
    /// Build a motif, normalizing edges to `i < j`. Self-loops, duplicate
    /// edges, and out-of-range endpoints are rejected.
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::InvalidMotif("motif needs at least one vertex".into()));
        }
        let mut canonical = Vec::with_capacity(edges.len());
        for (a, b) in edges {
            if a == b {
                return Err(Error::InvalidMotif(format!("self-loop at vertex {a}")));
            }
            if a >= vertex_count || b >= vertex_count {
                return Err(Error::InvalidMotif(format!(
                    "edge ({a},{b}) out of range for {vertex_count} vertices"
                )));
            }
            canonical.push((a.min(b), a.max(b)));
        }
        canonical.sort_unstable();
        let before = canonical.len();
        canonical.dedup();
        if canonical.len() != before {
            return Err(Error::InvalidMotif("duplicate edge".into()));
        }
        Ok(Self {
            vertex_count,
            edges: canonical,
        })
    }

    /// The single-edge motif (C₂ read as a simple undirected graph).
    pub fn edge() -> Self {
        Self {
            vertex_count: 2,
            edges: vec![(0, 1)],
        }
    }

    /// Cycle C_k for `k ≥ 3`; `k = 2` degrades to the single-edge motif.
    pub fn cycle(k: usize) -> Result<Self> {
        match k {
            0 | 1 => Err(Error::InvalidMotif(format!(
                "cycle length {k} has no simple undirected form"
            ))),
            2 => Ok(Self::edge()),
            _ => Self::new(k, (0..k).map(|i| (i, (i + 1) % k)).collect()),
        }
    }

    pub fn triangle() -> Self {
        Self::cycle(3).unwrap()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }
}

/// Exact homomorphism density `t(F, W)` by enumeration over block
/// assignments, with the default budget caps.
pub fn hom_density(motif: &Motif, graphon: &StepGraphon) -> Result<f64> {
    hom_density_with_budget(motif, graphon, MAX_MOTIF_VERTICES, MAX_HOM_BLOCKS)
}

/// [`hom_density`] with explicit enumeration budget. The sum runs over
/// `blocks^vertices` assignments; both caps guard against blowup.
pub fn hom_density_with_budget(
    motif: &Motif,
    graphon: &StepGraphon,
    max_vertices: usize,
    max_blocks: usize,
) -> Result<f64> {
    let vertices = motif.vertex_count();
    let blocks = graphon.block_count();
    if vertices > max_vertices || blocks > max_blocks {
        return Err(Error::BudgetExceeded {
            vertices,
            blocks,
            max_vertices,
            max_blocks,
        });
    }
    // Edges grouped by their larger endpoint, so each factor is applied the
    // moment its second endpoint is assigned.
    let mut back_edges: Vec<Vec<usize>> = vec![Vec::new(); vertices];
    for &(a, b) in motif.edges() {
        back_edges[b].push(a);
    }
    let weights = graphon.weights();
    let mut assignment = vec![0usize; vertices];
    let mut sum = 0.0;
    enumerate_assignments(
        graphon,
        weights,
        &back_edges,
        &mut assignment,
        0,
        1.0,
        &mut sum,
    );
    Ok(sum)
}

fn enumerate_assignments(
    graphon: &StepGraphon,
    weights: &[f64],
    back_edges: &[Vec<usize>],
    assignment: &mut [usize],
    vertex: usize,
    partial: f64,
    sum: &mut f64,
) {
    if vertex == back_edges.len() {
        *sum += partial;
        return;
    }
    for block in 0..weights.len() {
        assignment[vertex] = block;
        let mut factor = weights[block];
        for &earlier in &back_edges[vertex] {
            factor *= graphon.value(assignment[earlier], block);
            if factor == 0.0 {
                break;
            }
        }
        if factor == 0.0 {
            continue;
        }
        enumerate_assignments(
            graphon,
            weights,
            back_edges,
            assignment,
            vertex + 1,
            partial * factor,
            sum,
        );
    }
}

/// Edge density `t(C₂, W) = ∫∫W = Σ_ij w_i w_j values[i][j]`, closed form.
pub fn edge_density(graphon: &StepGraphon) -> f64 {
    let n = graphon.block_count();
    let w = graphon.weights();
    let mut total = 0.0;
    for i in 0..n {
        let mut row = 0.0;
        for j in 0..n {
            row += w[j] * graphon.value(i, j);
        }
        total += w[i] * row;
    }
    total
}

/// The quantities the errata separates: `t(C₂, W)`, `‖T_W‖²_HS`, and their
/// gap. For a graphon the gap is `∫∫(W − W²) ≥ 0`, and it vanishes exactly
/// when `W` is {0,1}-valued almost everywhere.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrataWitness {
    pub t_c2: f64,
    pub hs_squared: f64,
    pub gap: f64,
}

/// Compare `t(C₂, W)` with the squared Hilbert–Schmidt norm. A nonzero gap
/// demonstrates that the two are different functionals.
pub fn errata_gap(graphon: &StepGraphon) -> ErrataWitness {
    let t_c2 = edge_density(graphon);
    let hs_squared = hs_norm_squared(graphon.as_kernel());
    ErrataWitness {
        t_c2,
        hs_squared,
        gap: t_c2 - hs_squared,
    }
}

/// Independent spectral route to cycle densities: for `k ≥ 3`,
/// `t(C_k, W) = Σ_i λ_i(S)^k` where `S` is the weighted spectral matrix of
/// the graphon's operator. Cross-checks the assignment enumeration.
pub fn cycle_density_spectral(k: usize, graphon: &StepGraphon) -> Result<f64> {
    if k < 3 {
        return Err(Error::CycleTooShort(k));
    }
    let s = weighted_spectral_matrix(graphon.as_kernel());
    let solve = eigen::jacobi_eigenvalues(&s, SPECTRAL_TOL)?;
    Ok(solve
        .eigenvalues
        .iter()
        .map(|ev| ev.powi(k as i32))
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tolerances::ALGEBRAIC_TOL;

    fn bipartite() -> StepGraphon {
        StepGraphon::new(vec![vec![0.0, 1.0], vec![1.0, 0.0]], vec![0.5, 0.5]).unwrap()
    }

    #[test]
    fn motif_normalizes_and_validates() {
        let m = Motif::new(3, vec![(2, 0), (1, 2)]).unwrap();
        assert_eq!(m.edges(), &[(0, 2), (1, 2)]);
        assert!(Motif::new(2, vec![(0, 0)]).is_err());
        assert!(Motif::new(2, vec![(0, 1), (1, 0)]).is_err());
        assert!(Motif::new(2, vec![(0, 2)]).is_err());
        assert!(Motif::new(0, vec![]).is_err());
        assert!(Motif::cycle(1).is_err());
        assert_eq!(Motif::cycle(2).unwrap(), Motif::edge());
    }

    #[test]
    fn single_edge_on_constant_half() {
        let g = StepGraphon::constant(0.5).unwrap();
        let t = hom_density(&Motif::edge(), &g).unwrap();
        assert!((t - 0.5).abs() < 1e-15);
    }

    #[test]
    fn triangle_on_bipartite_vanishes() {
        let t = hom_density(&Motif::triangle(), &bipartite()).unwrap();
        assert_eq!(t, 0.0);
    }

    #[test]
    fn triangle_on_constant_is_cubed() {
        let g = StepGraphon::constant(0.5).unwrap();
        let t = hom_density(&Motif::triangle(), &g).unwrap();
        assert!((t - 0.125).abs() < 1e-15);
    }

    #[test]
    fn isolated_vertices_contribute_unit_factor() {
        let g = bipartite();
        let edge_plus_isolated = Motif::new(3, vec![(0, 1)]).unwrap();
        let a = hom_density(&Motif::edge(), &g).unwrap();
        let b = hom_density(&edge_plus_isolated, &g).unwrap();
        assert!((a - b).abs() < ALGEBRAIC_TOL);
    }

    #[test]
    fn budget_guard() {
        let g = StepGraphon::constant(0.5).unwrap();
        let path9 = Motif::new(9, (0..8).map(|i| (i, i + 1)).collect()).unwrap();
        assert!(matches!(
            hom_density(&path9, &g),
            Err(Error::BudgetExceeded { .. })
        ));
        let big = crate::kernel::GraphonFamily::Constant(0.5).build(11).unwrap();
        assert!(matches!(
            hom_density(&Motif::edge(), &big),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn edge_density_examples() {
        assert!((edge_density(&StepGraphon::constant(0.5).unwrap()) - 0.5).abs() < 1e-15);
        assert!((edge_density(&bipartite()) - 0.5).abs() < 1e-15);
        assert_eq!(edge_density(&StepGraphon::constant(0.0).unwrap()), 0.0);
    }

    #[test]
    fn edge_density_matches_hom_density() {
        let g = bipartite();
        let via_motif = hom_density(&Motif::edge(), &g).unwrap();
        assert!((edge_density(&g) - via_motif).abs() < ALGEBRAIC_TOL);
    }

    #[test]
    fn errata_constant_half() {
        let w = errata_gap(&StepGraphon::constant(0.5).unwrap());
        assert!((w.t_c2 - 0.5).abs() < 1e-15);
        assert!((w.hs_squared - 0.25).abs() < 1e-15);
        assert!((w.gap - 0.25).abs() < 1e-15);
    }

    #[test]
    fn errata_zero_one_graphon_has_no_gap() {
        let w = errata_gap(&bipartite());
        assert!(w.gap.abs() < 1e-15);
        let zero = errata_gap(&StepGraphon::constant(0.0).unwrap());
        assert_eq!((zero.t_c2, zero.hs_squared, zero.gap), (0.0, 0.0, 0.0));
    }

    #[test]
    fn spectral_cycle_route() {
        let g = StepGraphon::constant(0.5).unwrap();
        assert!((cycle_density_spectral(3, &g).unwrap() - 0.125).abs() < 1e-12);

        let b = bipartite();
        assert!(cycle_density_spectral(3, &b).unwrap().abs() < 1e-12);
        assert!((cycle_density_spectral(4, &b).unwrap() - 0.125).abs() < 1e-12);

        assert!(matches!(
            cycle_density_spectral(2, &b),
            Err(Error::CycleTooShort(2))
        ));
    }

    #[test]
    fn spectral_route_matches_enumeration() {
        let g = crate::kernel::GraphonFamily::Product.build(4).unwrap();
        for k in 3..=5 {
            let enumerated = hom_density(&Motif::cycle(k).unwrap(), &g).unwrap();
            let spectral = cycle_density_spectral(k, &g).unwrap();
            assert!(
                (enumerated - spectral).abs() < 1e-9,
                "k={k}: {enumerated} vs {spectral}"
            );
        }
    }
}
