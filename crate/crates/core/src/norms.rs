//! The four norms of a step kernel: cut norm, ∞,1-operator norm (= type-2
//! cut norm), 2,2-operator norm, and Hilbert–Schmidt norm.
//!
//! For a step kernel with weights `w` and values `K`, every bilinear
//! quantity here reduces to the measure-weighted matrix `M_ij = w_i w_j K_ij`:
//!
//! * cut norm      = max over `s,t ∈ {0,1}ⁿ` of `|sᵀMt|` — a bilinear form
//!   on the box `[0,1]ⁿ × [0,1]ⁿ` attains its extrema at vertices, so the
//!   supremum over measurable sets is an exact finite maximum;
//! * ∞,1 norm      = max over `f,g ∈ {±1}ⁿ` of `|fᵀMg|`, same vertex
//!   argument on `[−1,1]ⁿ`;
//! * 2,2 norm      = spectral norm of `S_ij = √(w_i)·K_ij·√(w_j)`;
//! * Hilbert–Schmidt = `√(Σ_ij w_i w_j K_ij²)` in closed form.
//!
//! Exact enumerations walk the hypercube in Gray-code order with O(n)
//! incremental column-sum updates. Heuristics are alternating maximization
//! with seeded random restarts and only ever certify a lower bound. Every
//! certificate re-evaluates to its claimed value by a canonical summation
//! order, so reported numbers are independently checkable.

use serde::{Deserialize, Serialize};

use crate::eigen::{self, SymMatrix};
use crate::error::{Error, Result};
use crate::kernel::StepKernel;
use crate::rng::{self, RNG_ALGORITHM};
use crate::tolerances::{ALGEBRAIC_TOL, SPECTRAL_TOL};

/// Default block-count cap for exact cut-norm enumeration (2ⁿ states).
pub const CUT_EXACT_LIMIT: usize = 20;

/// Default cap for exact ∞,1 enumeration (2ⁿ⁻¹ states by the f ↦ −f symmetry).
pub const INF1_EXACT_LIMIT: usize = 21;

/// Above this dimension the 2,2 norm switches from Jacobi to power iteration.
pub const JACOBI_SIZE_LIMIT: usize = 512;

/// Default number of random restarts for the heuristics.
pub const DEFAULT_RESTARTS: u32 = 50;

/// Refresh incremental Gray-code column sums this often to keep drift
/// below the algebraic tolerance.
const REFRESH_INTERVAL: u64 = 4096;

/// Cap on alternating-maximization rounds per restart. The objective is
/// monotone on a finite lattice, so this is a safety net, not a tuning knob.
const ALTERNATION_CAP: usize = 1000;

/// Maximizer witness for the cut norm: indicator vectors of the block sets
/// S and T together with the value they attain.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CutCertificate {
    pub s_indicator: Vec<u8>,
    pub t_indicator: Vec<u8>,
    pub value: f64,
}

impl CutCertificate {
    /// Recompute `|Σ_ij w_i w_j K_ij s_i t_j|` from the stored indicators.
    pub fn evaluate(&self, k: &StepKernel) -> Result<f64> {
        let n = k.block_count();
        if self.s_indicator.len() != n || self.t_indicator.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "certificate over {} blocks, kernel has {}",
                self.s_indicator.len(),
                n
            )));
        }
        let m = MeasureWeighted::new(k);
        Ok(m.indicator_form(&self.s_indicator, &self.t_indicator).abs())
    }
}

/// Maximizer witness for the ∞,1 norm: ±1 sign vectors and their value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SignCertificate {
    pub f_signs: Vec<i8>,
    pub g_signs: Vec<i8>,
    pub value: f64,
}

impl SignCertificate {
    /// Recompute `|Σ_ij w_i w_j K_ij f_i g_j|` from the stored signs.
    pub fn evaluate(&self, k: &StepKernel) -> Result<f64> {
        let n = k.block_count();
        if self.f_signs.len() != n || self.g_signs.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "certificate over {} blocks, kernel has {}",
                self.f_signs.len(),
                n
            )));
        }
        let m = MeasureWeighted::new(k);
        Ok(m.sign_form(&self.f_signs, &self.g_signs).abs())
    }
}

/// The measure-weighted matrix `M_ij = w_i w_j K_ij`, the common ground of
/// both bilinear norms.
struct MeasureWeighted {
    n: usize,
    m: Vec<f64>,
}

impl MeasureWeighted {
    fn new(k: &StepKernel) -> Self {
        let n = k.block_count();
        let w = k.weights();
        let mut m = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                m[i * n + j] = w[i] * w[j] * k.value(i, j);
            }
        }
        Self { n, m }
    }

    fn at(&self, i: usize, j: usize) -> f64 {
        self.m[i * self.n + j]
    }

    /// Canonical evaluation order for `sᵀMt`: row sums first, then the outer
    /// sum. Certificates store exactly this number.
    fn indicator_form(&self, s: &[u8], t: &[u8]) -> f64 {
        let mut total = 0.0;
        for i in 0..self.n {
            if s[i] == 0 {
                continue;
            }
            let mut row = 0.0;
            for j in 0..self.n {
                if t[j] == 1 {
                    row += self.at(i, j);
                }
            }
            total += row;
        }
        total
    }

    fn sign_form(&self, f: &[i8], g: &[i8]) -> f64 {
        let mut total = 0.0;
        for i in 0..self.n {
            let mut row = 0.0;
            for j in 0..self.n {
                row += self.at(i, j) * f64::from(g[j]);
            }
            total += row * f64::from(f[i]);
        }
        total
    }

    /// Column sums `(Mᵀs)_j` for an indicator set encoded as a bitmask.
    fn columns_for_mask(&self, mask: u64, cols: &mut [f64]) {
        cols.iter_mut().for_each(|c| *c = 0.0);
        for i in 0..self.n {
            if mask >> i & 1 == 1 {
                for j in 0..self.n {
                    cols[j] += self.at(i, j);
                }
            }
        }
    }

    /// Column sums `(Mᵀf)_j` for a sign vector encoded as a bitmask of −1
    /// positions (bit p set means `f_{p+1} = −1`; `f_0` is always +1).
    fn columns_for_signs(&self, mask: u64, cols: &mut [f64]) {
        for j in 0..self.n {
            let mut c = self.at(0, j);
            for i in 1..self.n {
                let sign = if mask >> (i - 1) & 1 == 1 { -1.0 } else { 1.0 };
                c += sign * self.at(i, j);
            }
            cols[j] = c;
        }
    }
}

fn mask_to_indicator(mask: u64, n: usize) -> Vec<u8> {
    (0..n).map(|i| (mask >> i & 1) as u8).collect()
}

fn mask_to_signs(mask: u64, n: usize) -> Vec<i8> {
    let mut f = vec![1i8; n];
    for (p, sign) in f.iter_mut().enumerate().skip(1) {
        if mask >> (p - 1) & 1 == 1 {
            *sign = -1;
        }
    }
    f
}

/// Exact cut norm `max_{s,t ∈ {0,1}ⁿ} |sᵀMt|` with a maximizing certificate.
///
/// Enumerates `s` in Gray-code order, keeping the column sums `(Mᵀs)_j`
/// updated in O(n) per step; for each `s` the optimal `t` is the positive
/// (or negative) support of the column sums, and both sign branches are
/// taken since the cut norm is an absolute value. Zero column sums leave
/// `t_j = 0`. Errors when `n` exceeds `limit`.
pub fn cut_norm_exact(k: &StepKernel, limit: usize) -> Result<(f64, CutCertificate)> {
    let n = k.block_count();
    if n > limit || n >= 63 {
        return Err(Error::ExactLimitExceeded { n, limit });
    }
    let m = MeasureWeighted::new(k);
    let mut cols = vec![0.0; n];
    let mut best_value = 0.0_f64;
    let mut best_mask = 0u64;
    let mut best_positive = true;
    let mut mask = 0u64;
    for step in 1..(1u64 << n) {
        let bit = step.trailing_zeros() as usize;
        mask ^= 1 << bit;
        if step % REFRESH_INTERVAL == 0 {
            m.columns_for_mask(mask, &mut cols);
        } else if mask >> bit & 1 == 1 {
            for j in 0..n {
                cols[j] += m.at(bit, j);
            }
        } else {
            for j in 0..n {
                cols[j] -= m.at(bit, j);
            }
        }
        let mut positive = 0.0;
        let mut negative = 0.0;
        for &c in &cols {
            if c > 0.0 {
                positive += c;
            } else {
                negative -= c;
            }
        }
        if positive > best_value {
            best_value = positive;
            best_mask = mask;
            best_positive = true;
        }
        if negative > best_value {
            best_value = negative;
            best_mask = mask;
            best_positive = false;
        }
    }
    let s_indicator = mask_to_indicator(best_mask, n);
    m.columns_for_mask(best_mask, &mut cols);
    let t_indicator: Vec<u8> = cols
        .iter()
        .map(|&c| u8::from(if best_positive { c > 0.0 } else { c < 0.0 }))
        .collect();
    let value = m.indicator_form(&s_indicator, &t_indicator).abs();
    let certificate = CutCertificate {
        s_indicator,
        t_indicator,
        value,
    };
    Ok((value, certificate))
}

/// Certified lower bound on the cut norm by alternating maximization with
/// seeded random restarts.
///
/// Each restart draws `s` uniformly from `{0,1}ⁿ` and runs both sign
/// branches to a fixpoint: given `s`, take `t_j = 1` exactly where the
/// column sum has the sign being maximized, then re-optimize `s` against
/// `t`, and repeat. The returned value always reproduces from its
/// certificate; it never exceeds the exact norm.
pub fn cut_norm_heuristic(k: &StepKernel, restarts: u32, seed: u64) -> (f64, CutCertificate) {
    let n = k.block_count();
    let m = MeasureWeighted::new(k);
    let mut r = rng::seeded(seed);
    let mut best_value = 0.0_f64;
    let mut best = CutCertificate {
        s_indicator: vec![0; n],
        t_indicator: vec![0; n],
        value: 0.0,
    };
    let restarts = restarts.max(1);
    for _ in 0..restarts {
        let initial: Vec<u8> = (0..n).map(|_| rng::indicator(&mut r)).collect();
        for maximize_positive in [true, false] {
            let mut s = initial.clone();
            let mut previous = f64::NEG_INFINITY;
            for _ in 0..ALTERNATION_CAP {
                let t = best_indicator_response(&m, &s, maximize_positive, false);
                let s_next = best_indicator_response(&m, &t, maximize_positive, true);
                let signed = m.indicator_form(&s_next, &t);
                let objective = if maximize_positive { signed } else { -signed };
                let stalled = objective <= previous;
                let fixed = s_next == s;
                s = s_next;
                if fixed || stalled {
                    break;
                }
                previous = objective;
            }
            let t = best_indicator_response(&m, &s, maximize_positive, false);
            let value = m.indicator_form(&s, &t).abs();
            if value > best_value {
                best_value = value;
                best = CutCertificate {
                    s_indicator: s,
                    t_indicator: t,
                    value,
                };
            }
        }
    }
    (best_value, best)
}

/// Optimal indicator response to a fixed partner: include block `j` exactly
/// when its (row or column) sum has the sign being maximized. Zero sums stay
/// out of the set.
fn best_indicator_response(
    m: &MeasureWeighted,
    fixed: &[u8],
    maximize_positive: bool,
    respond_rows: bool,
) -> Vec<u8> {
    let n = m.n;
    (0..n)
        .map(|a| {
            let mut sum = 0.0;
            for b in 0..n {
                if fixed[b] == 1 {
                    sum += if respond_rows { m.at(a, b) } else { m.at(b, a) };
                }
            }
            u8::from(if maximize_positive { sum > 0.0 } else { sum < 0.0 })
        })
        .collect()
}

/// Exact ∞,1-operator norm `max_{f ∈ {±1}ⁿ} Σ_j |(Mᵀf)_j|` with maximizing
/// sign vectors.
///
/// The supremum over `‖f‖_∞, ‖g‖_∞ ≤ 1` is attained at sign vertices; `g`
/// is read off as the sign pattern of the column sums (zeros resolve to +1).
/// The `f ↦ −f` symmetry halves the enumeration to `2ⁿ⁻¹` states.
pub fn op_norm_inf1_exact(k: &StepKernel, limit: usize) -> Result<(f64, SignCertificate)> {
    let n = k.block_count();
    if n > limit || n >= 64 {
        return Err(Error::ExactLimitExceeded { n, limit });
    }
    let m = MeasureWeighted::new(k);
    let mut cols = vec![0.0; n];
    m.columns_for_signs(0, &mut cols);
    let mut best_value: f64 = cols.iter().map(|c| c.abs()).sum();
    let mut best_mask = 0u64;
    let mut mask = 0u64;
    for step in 1..(1u64 << (n - 1)) {
        let bit = step.trailing_zeros() as usize;
        mask ^= 1 << bit;
        let position = bit + 1;
        if step % REFRESH_INTERVAL == 0 {
            m.columns_for_signs(mask, &mut cols);
        } else {
            // The sign at `position` just flipped; its new value is −1 when
            // the bit is set. Delta is twice the new signed row.
            let sign = if mask >> bit & 1 == 1 { -1.0 } else { 1.0 };
            for j in 0..n {
                cols[j] += 2.0 * sign * m.at(position, j);
            }
        }
        let value: f64 = cols.iter().map(|c| c.abs()).sum();
        if value > best_value {
            best_value = value;
            best_mask = mask;
        }
    }
    let f_signs = mask_to_signs(best_mask, n);
    m.columns_for_signs(best_mask, &mut cols);
    let g_signs: Vec<i8> = cols.iter().map(|&c| if c < 0.0 { -1 } else { 1 }).collect();
    let value = m.sign_form(&f_signs, &g_signs).abs();
    let certificate = SignCertificate {
        f_signs,
        g_signs,
        value,
    };
    Ok((value, certificate))
}

/// Certified lower bound on the ∞,1 norm: alternating sign updates
/// `f_i ← sign((Mg)_i)`, `g_j ← sign((Mᵀf)_j)` to a fixpoint, with seeded
/// random ±1 restarts. Zeros resolve to +1.
pub fn op_norm_inf1_heuristic(k: &StepKernel, restarts: u32, seed: u64) -> (f64, SignCertificate) {
    let n = k.block_count();
    let m = MeasureWeighted::new(k);
    let mut r = rng::seeded(seed);
    let mut best_value = f64::NEG_INFINITY;
    let mut best = SignCertificate {
        f_signs: vec![1; n],
        g_signs: vec![1; n],
        value: 0.0,
    };
    let restarts = restarts.max(1);
    for _ in 0..restarts {
        let mut g: Vec<i8> = (0..n).map(|_| rng::sign(&mut r)).collect();
        let mut f = vec![1i8; n];
        for _ in 0..ALTERNATION_CAP {
            let f_next = best_sign_response(&m, &g, true);
            let g_next = best_sign_response(&m, &f_next, false);
            if f_next == f && g_next == g {
                break;
            }
            f = f_next;
            g = g_next;
        }
        let value = m.sign_form(&f, &g).abs();
        if value > best_value {
            best_value = value;
            best = SignCertificate {
                f_signs: f,
                g_signs: g,
                value,
            };
        }
    }
    (best.value, best)
}

fn best_sign_response(m: &MeasureWeighted, fixed: &[i8], respond_rows: bool) -> Vec<i8> {
    let n = m.n;
    (0..n)
        .map(|a| {
            let mut sum = 0.0;
            for b in 0..n {
                let entry = if respond_rows { m.at(a, b) } else { m.at(b, a) };
                sum += entry * f64::from(fixed[b]);
            }
            if sum < 0.0 {
                -1
            } else {
                1
            }
        })
        .collect()
}

/// How a spectral value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpectralMethod {
    Jacobi,
    PowerIteration,
}

/// 2,2-operator norm together with its convergence diagnostics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralEstimate {
    pub value: f64,
    pub method: SpectralMethod,
    pub iterations: usize,
    pub residual: f64,
}

/// The symmetric matrix `S_ij = √(w_i)·K_ij·√(w_j)` whose spectrum is that
/// of the kernel's integral operator.
pub fn weighted_spectral_matrix(k: &StepKernel) -> SymMatrix {
    let w = k.weights();
    let roots: Vec<f64> = w.iter().map(|x| x.sqrt()).collect();
    SymMatrix::from_fn(k.block_count(), |i, j| roots[i] * k.value(i, j) * roots[j])
}

/// 2,2-operator norm: the spectral norm of [`weighted_spectral_matrix`].
///
/// Jacobi up to [`JACOBI_SIZE_LIMIT`] blocks, power iteration on `S·S`
/// beyond. Non-convergence is a diagnostic error, never a silent value.
pub fn op_norm_22(k: &StepKernel, tol: f64) -> Result<SpectralEstimate> {
    op_norm_22_with(k, tol, JACOBI_SIZE_LIMIT, eigen::POWER_ITERATION_CAP)
}

/// [`op_norm_22`] with explicit method dispatch threshold and iteration cap.
pub fn op_norm_22_with(
    k: &StepKernel,
    tol: f64,
    jacobi_limit: usize,
    power_cap: usize,
) -> Result<SpectralEstimate> {
    let s = weighted_spectral_matrix(k);
    if k.block_count() <= jacobi_limit {
        let solve = eigen::jacobi_eigenvalues(&s, tol)?;
        let value = solve
            .eigenvalues
            .iter()
            .fold(0.0_f64, |acc, ev| acc.max(ev.abs()));
        Ok(SpectralEstimate {
            value,
            method: SpectralMethod::Jacobi,
            iterations: solve.iterations,
            residual: solve.residual,
        })
    } else {
        let solve = eigen::power_iteration_spectral_norm(&s, tol, power_cap)?;
        Ok(SpectralEstimate {
            value: solve.eigenvalues[0],
            method: SpectralMethod::PowerIteration,
            iterations: solve.iterations,
            residual: solve.residual,
        })
    }
}

/// Squared Hilbert–Schmidt norm `Σ_ij w_i w_j K_ij² = ∫∫|W|²`, exact
/// closed form. The summation order matches `edge_density`, so for a
/// {0,1}-valued graphon the two sums agree bit for bit.
pub fn hs_norm_squared(k: &StepKernel) -> f64 {
    let n = k.block_count();
    let w = k.weights();
    let mut total = 0.0;
    for i in 0..n {
        let mut row = 0.0;
        for j in 0..n {
            row += w[j] * k.value(i, j).powi(2);
        }
        total += w[i] * row;
    }
    total
}

/// Hilbert–Schmidt norm `√(Σ_ij w_i w_j K_ij²)`.
pub fn hs_norm(k: &StepKernel) -> f64 {
    hs_norm_squared(k).sqrt()
}

/// Tag distinguishing an exact value from a certified lower bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MethodTag {
    #[serde(rename = "exact")]
    Exact,
    #[serde(rename = "heuristic-lower-bound")]
    HeuristicLowerBound,
}

impl std::fmt::Display for MethodTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Exact => write!(f, "exact"),
            Self::HeuristicLowerBound => write!(f, "heuristic-lower-bound"),
        }
    }
}

/// A norm value paired with how it was obtained.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormValue {
    pub value: f64,
    pub method: MethodTag,
}

/// Knobs for [`full_norm_report`] and the lemma checks.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormConfig {
    /// Exact cut-norm enumeration cap (2ⁿ states).
    pub cut_exact_limit: usize,
    /// Exact ∞,1 enumeration cap (2ⁿ⁻¹ states).
    pub inf1_exact_limit: usize,
    /// Dimension threshold between Jacobi and power iteration.
    pub jacobi_limit: usize,
    /// Convergence tolerance for the spectral norm.
    pub spectral_tol: f64,
    /// Iteration cap for power iteration.
    pub power_iteration_cap: usize,
    /// Random restarts for the heuristics.
    pub restarts: u32,
    /// Seed for heuristic restarts.
    pub seed: u64,
}

impl Default for NormConfig {
    fn default() -> Self {
        Self {
            cut_exact_limit: CUT_EXACT_LIMIT,
            inf1_exact_limit: INF1_EXACT_LIMIT,
            jacobi_limit: JACOBI_SIZE_LIMIT,
            spectral_tol: SPECTRAL_TOL,
            power_iteration_cap: eigen::POWER_ITERATION_CAP,
            restarts: DEFAULT_RESTARTS,
            seed: 0,
        }
    }
}

/// Tolerances recorded verbatim in every report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportTolerances {
    pub algebraic: f64,
    pub spectral: f64,
}

/// All four norms of one kernel, with method tags, certificates, and the
/// reproducibility data (seed, restarts, generator) used to obtain them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormReport {
    pub kernel_digest: String,
    pub blocks: usize,
    pub bound: f64,
    pub cut_norm_1: NormValue,
    pub op_inf1: NormValue,
    pub op_22: SpectralEstimate,
    pub hs: f64,
    pub cut_certificate: CutCertificate,
    pub sign_certificate: SignCertificate,
    pub rng_algorithm: String,
    pub seed: u64,
    pub restarts: u32,
    pub tolerances: ReportTolerances,
}

/// Compute all four norms, choosing exact enumeration or the heuristic per
/// the configured limits.
pub fn full_norm_report(k: &StepKernel, config: &NormConfig) -> Result<NormReport> {
    let n = k.block_count();
    let cut_limit = config.cut_exact_limit.min(62);
    let inf1_limit = config.inf1_exact_limit.min(63);
    let (cut_value, cut_certificate, cut_method) = if n <= cut_limit {
        let (v, c) = cut_norm_exact(k, cut_limit)?;
        (v, c, MethodTag::Exact)
    } else {
        let (v, c) = cut_norm_heuristic(k, config.restarts, config.seed);
        (v, c, MethodTag::HeuristicLowerBound)
    };
    let (inf1_value, sign_certificate, inf1_method) = if n <= inf1_limit {
        let (v, c) = op_norm_inf1_exact(k, inf1_limit)?;
        (v, c, MethodTag::Exact)
    } else {
        let (v, c) = op_norm_inf1_heuristic(k, config.restarts, config.seed);
        (v, c, MethodTag::HeuristicLowerBound)
    };
    let op_22 = op_norm_22_with(
        k,
        config.spectral_tol,
        config.jacobi_limit,
        config.power_iteration_cap,
    )?;
    Ok(NormReport {
        kernel_digest: k.digest(),
        blocks: n,
        bound: k.bound(),
        cut_norm_1: NormValue {
            value: cut_value,
            method: cut_method,
        },
        op_inf1: NormValue {
            value: inf1_value,
            method: inf1_method,
        },
        op_22,
        hs: hs_norm(k),
        cut_certificate,
        sign_certificate,
        rng_algorithm: RNG_ALGORITHM.to_string(),
        seed: config.seed,
        restarts: config.restarts,
        tolerances: ReportTolerances {
            algebraic: ALGEBRAIC_TOL,
            spectral: config.spectral_tol,
        },
    })
}
