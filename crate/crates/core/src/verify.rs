//! Machine verification of the three norm-equivalence results on concrete
//! kernels and randomized families.
//!
//! Six inequalities are checked in a fixed chain order:
//!
//! 1. `‖W‖□,1 ≤ |||T_W|||∞,1`            (cut-norm lemma, lower)
//! 2. `|||T_W|||∞,1 ≤ 4‖W‖□,1`           (cut-norm lemma, upper)
//! 3. `|||T_W|||∞,1 ≤ |||T_W|||2,2`      (operator-norm lemma, lower)
//! 4. `|||T_W|||2,2 ≤ √(2|||T_W|||∞,1)`  (operator-norm lemma, upper)
//! 5. `‖W‖□,1 ≤ |||T_W|||2,2`            (sandwich, lower)
//! 6. `|||T_W|||2,2 ≤ √(8‖W‖□,1)`        (sandwich, upper)
//!
//! The two sandwich bounds compose from the two lemmas; the proposition
//! report records the intermediate quantities `√(2·inf1)` and `√(2·4·cut)`
//! so the composed chain is visible in the output. A heuristic lower bound
//! can never certify an upper-bound inequality, so kernels too large for
//! exact enumeration yield a non-conclusive report rather than a verdict.
//! The scale-sensitive upper bounds (2, 4, 8 are absolute constants) are
//! stated for kernels bounded by 1; the random families here stay inside
//! `[−1, 1]` and every report records the kernel's sup norm.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::io::KernelFile;
use crate::kernel::StepKernel;
use crate::norms::{
    cut_norm_exact, cut_norm_heuristic, op_norm_22_with, op_norm_inf1_exact,
    op_norm_inf1_heuristic, MethodTag, NormConfig, NormValue, SpectralEstimate,
};
use crate::rng::{self, RNG_ALGORITHM};
use crate::tolerances::SLACK_TOL;

/// One inequality `left ≤ right` with its slack and verdict.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InequalityCheck {
    pub name: String,
    pub left: f64,
    pub right: f64,
    /// `right − left`; negative beyond [`SLACK_TOL`] means failure.
    pub slack: f64,
    pub pass: bool,
}

fn entry(name: &str, left: f64, right: f64) -> InequalityCheck {
    let slack = right - left;
    InequalityCheck {
        name: name.to_string(),
        left,
        right,
        slack,
        pass: slack >= -SLACK_TOL,
    }
}

/// Whether a report's verdict is backed by exact norms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "reason")]
pub enum CheckStatus {
    Conclusive,
    NonConclusive(String),
}

impl CheckStatus {
    pub fn is_conclusive(&self) -> bool {
        matches!(self, Self::Conclusive)
    }
}

/// The norm values a check ran against, with their method tags.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormSummary {
    pub cut: NormValue,
    pub inf1: NormValue,
    pub op22: SpectralEstimate,
    /// Largest absolute block value; the upper-bound constants assume ≤ 1.
    pub sup_norm: f64,
}

/// Intermediate quantities of the sandwich proof, recorded so the composed
/// constant √8 = √(2·4) is visible: `op22 ≤ √(2·inf1) ≤ √(2·4·cut)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProofChain {
    pub sqrt_2_inf1: f64,
    pub sqrt_2_times_4_cut: f64,
}

/// Per-result verification report: every inequality of the named result,
/// with slacks, verdicts, and the norms used.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub result: String,
    pub kernel_digest: String,
    pub status: CheckStatus,
    pub entries: Vec<InequalityCheck>,
    pub norms: NormSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub proof_chain: Option<ProofChain>,
}

impl LemmaReport {
    /// All entries pass (a non-conclusive report can still "pass" in the
    /// lower-bound sense, but callers should gate on `status` first).
    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }
}

fn bilinear_norms(k: &StepKernel, config: &NormConfig) -> (NormValue, NormValue, CheckStatus) {
    let n = k.block_count();
    // The enumerators cap at the bitmask width however large the
    // configured limit is.
    let cut_limit = config.cut_exact_limit.min(62);
    let inf1_limit = config.inf1_exact_limit.min(63);
    let cut = if n <= cut_limit {
        let (value, _) = cut_norm_exact(k, cut_limit).expect("within limit");
        NormValue {
            value,
            method: MethodTag::Exact,
        }
    } else {
        let (value, _) = cut_norm_heuristic(k, config.restarts, config.seed);
        NormValue {
            value,
            method: MethodTag::HeuristicLowerBound,
        }
    };
    let inf1 = if n <= inf1_limit {
        let (value, _) = op_norm_inf1_exact(k, inf1_limit).expect("within limit");
        NormValue {
            value,
            method: MethodTag::Exact,
        }
    } else {
        let (value, _) = op_norm_inf1_heuristic(k, config.restarts, config.seed);
        NormValue {
            value,
            method: MethodTag::HeuristicLowerBound,
        }
    };
    let status = if cut.method == MethodTag::Exact && inf1.method == MethodTag::Exact {
        CheckStatus::Conclusive
    } else {
        CheckStatus::NonConclusive(format!(
            "{n} blocks exceed the exact enumeration limits; heuristic lower bounds cannot certify upper-bound inequalities"
        ))
    };
    (cut, inf1, status)
}

fn op22(k: &StepKernel, config: &NormConfig) -> Result<SpectralEstimate> {
    op_norm_22_with(
        k,
        config.spectral_tol,
        config.jacobi_limit,
        config.power_iteration_cap,
    )
}

/// Check `‖W‖□,1 ≤ |||T_W|||∞,1 ≤ 4‖W‖□,1`.
pub fn check_cut_norm_lemma(k: &StepKernel, config: &NormConfig) -> Result<LemmaReport> {
    let (cut, inf1, status) = bilinear_norms(k, config);
    let op22 = op22(k, config)?;
    Ok(LemmaReport {
        result: "cut-norm-lemma".to_string(),
        kernel_digest: k.digest(),
        status,
        entries: vec![
            entry("cut_le_inf1", cut.value, inf1.value),
            entry("inf1_le_4cut", inf1.value, 4.0 * cut.value),
        ],
        norms: NormSummary {
            cut,
            inf1,
            op22,
            sup_norm: k.sup_norm(),
        },
        proof_chain: None,
    })
}

/// Check `|||T_W|||∞,1 ≤ |||T_W|||2,2 ≤ √(2|||T_W|||∞,1)`.
pub fn check_operator_norm_lemma(k: &StepKernel, config: &NormConfig) -> Result<LemmaReport> {
    let (cut, inf1, status) = bilinear_norms(k, config);
    let op22 = op22(k, config)?;
    Ok(LemmaReport {
        result: "operator-norm-lemma".to_string(),
        kernel_digest: k.digest(),
        status,
        entries: vec![
            entry("inf1_le_op22", inf1.value, op22.value),
            entry("op22_le_sqrt_2_inf1", op22.value, (2.0 * inf1.value).sqrt()),
        ],
        norms: NormSummary {
            cut,
            inf1,
            op22,
            sup_norm: k.sup_norm(),
        },
        proof_chain: None,
    })
}

/// Check the sandwich `‖W‖□,1 ≤ |||T_W|||2,2 ≤ √(8‖W‖□,1)`, recording the
/// intermediate bounds that compose it.
pub fn check_proposition(k: &StepKernel, config: &NormConfig) -> Result<LemmaReport> {
    let (cut, inf1, status) = bilinear_norms(k, config);
    let op22 = op22(k, config)?;
    let proof_chain = ProofChain {
        sqrt_2_inf1: (2.0 * inf1.value).sqrt(),
        sqrt_2_times_4_cut: (2.0 * (4.0 * cut.value)).sqrt(),
    };
    Ok(LemmaReport {
        result: "sandwich-proposition".to_string(),
        kernel_digest: k.digest(),
        status,
        entries: vec![
            entry("cut_le_op22", cut.value, op22.value),
            entry("op22_le_sqrt_8cut", op22.value, (8.0 * cut.value).sqrt()),
        ],
        norms: NormSummary {
            cut,
            inf1,
            op22,
            sup_norm: k.sup_norm(),
        },
        proof_chain: Some(proof_chain),
    })
}

/// All three checks on one kernel, norms computed once.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KernelVerification {
    pub kernel_digest: String,
    pub blocks: usize,
    pub status: CheckStatus,
    pub cut_norm_lemma: LemmaReport,
    pub operator_norm_lemma: LemmaReport,
    pub proposition: LemmaReport,
}

impl KernelVerification {
    /// The six slacks in chain order (cut-norm lemma, operator-norm lemma,
    /// sandwich proposition; lower then upper within each).
    pub fn slacks(&self) -> Vec<f64> {
        self.cut_norm_lemma
            .entries
            .iter()
            .chain(&self.operator_norm_lemma.entries)
            .chain(&self.proposition.entries)
            .map(|e| e.slack)
            .collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = &InequalityCheck> {
        self.cut_norm_lemma
            .entries
            .iter()
            .chain(&self.operator_norm_lemma.entries)
            .chain(&self.proposition.entries)
    }

    pub fn all_pass(&self) -> bool {
        self.entries().all(|e| e.pass)
    }
}

/// Run all three checks, sharing one norm computation.
pub fn verify_kernel(k: &StepKernel, config: &NormConfig) -> Result<KernelVerification> {
    let (cut, inf1, status) = bilinear_norms(k, config);
    let op22 = op22(k, config)?;
    let digest = k.digest();
    let norms = NormSummary {
        cut: cut.clone(),
        inf1: inf1.clone(),
        op22: op22.clone(),
        sup_norm: k.sup_norm(),
    };
    let cut_norm_lemma = LemmaReport {
        result: "cut-norm-lemma".to_string(),
        kernel_digest: digest.clone(),
        status: status.clone(),
        entries: vec![
            entry("cut_le_inf1", cut.value, inf1.value),
            entry("inf1_le_4cut", inf1.value, 4.0 * cut.value),
        ],
        norms: norms.clone(),
        proof_chain: None,
    };
    let operator_norm_lemma = LemmaReport {
        result: "operator-norm-lemma".to_string(),
        kernel_digest: digest.clone(),
        status: status.clone(),
        entries: vec![
            entry("inf1_le_op22", inf1.value, op22.value),
            entry("op22_le_sqrt_2_inf1", op22.value, (2.0 * inf1.value).sqrt()),
        ],
        norms: norms.clone(),
        proof_chain: None,
    };
    let proposition = LemmaReport {
        result: "sandwich-proposition".to_string(),
        kernel_digest: digest.clone(),
        status: status.clone(),
        entries: vec![
            entry("cut_le_op22", cut.value, op22.value),
            entry("op22_le_sqrt_8cut", op22.value, (8.0 * cut.value).sqrt()),
        ],
        norms,
        proof_chain: Some(ProofChain {
            sqrt_2_inf1: (2.0 * inf1.value).sqrt(),
            sqrt_2_times_4_cut: (2.0 * (4.0 * cut.value)).sqrt(),
        }),
    };
    Ok(KernelVerification {
        kernel_digest: digest,
        blocks: k.block_count(),
        status,
        cut_norm_lemma,
        operator_norm_lemma,
        proposition,
    })
}

/// How block weights of random kernels are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WeightMode {
    /// All blocks get weight `1/n`.
    Uniform,
    /// Normalized unit-exponential draws (flat Dirichlet).
    DirichletLike,
}

/// Seeded random step kernel: independent uniform values on the upper
/// triangle (row-major, diagonal included), mirrored; weights per
/// [`WeightMode`]. The range must satisfy `−1 ≤ lo ≤ hi ≤ 1`.
pub fn random_step_kernel(
    n: usize,
    value_range: (f64, f64),
    weight_mode: WeightMode,
    seed: u64,
) -> Result<StepKernel> {
    let (lo, hi) = value_range;
    if n == 0 {
        return Err(Error::Empty);
    }
    if lo.is_nan() || hi.is_nan() || lo > hi {
        return Err(Error::InvalidRange {
            lo,
            hi,
            reason: "lower end exceeds upper end".into(),
        });
    }
    if lo < -1.0 || hi > 1.0 {
        return Err(Error::InvalidRange {
            lo,
            hi,
            reason: "range must lie within [-1, 1]".into(),
        });
    }
    let mut r = rng::seeded(seed);
    let mut values = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in i..n {
            let v = rng::uniform(&mut r, lo, hi);
            values[i][j] = v;
            values[j][i] = v;
        }
    }
    let weights = match weight_mode {
        WeightMode::Uniform => vec![1.0 / n as f64; n],
        WeightMode::DirichletLike => {
            let draws: Vec<f64> = (0..n)
                .map(|_| loop {
                    let u = rng::unit(&mut r);
                    if u > 0.0 {
                        break -(1.0 - u).ln();
                    }
                })
                .collect();
            let total: f64 = draws.iter().sum();
            draws.iter().map(|d| d / total).collect()
        }
    };
    StepKernel::new(values, weights)
}

/// What a random family draws.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "family")]
pub enum FamilyKind {
    /// Random step graphons, values in `[0, 1]`.
    Graphon,
    /// Random step kernels with values in `[lo, hi] ⊆ [−1, 1]`.
    Kernel { lo: f64, hi: f64 },
    /// Differences of two independent random graphons (values in `[−1, 1]`,
    /// defined on the common refinement).
    GraphonDifference,
}

/// Generator specification for [`verify_family`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    pub min_blocks: usize,
    pub max_blocks: usize,
    pub count: usize,
    pub seed: u64,
    pub weight_mode: WeightMode,
}

/// One family instance with its three reports.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceVerification {
    pub index: usize,
    pub blocks: usize,
    pub verification: KernelVerification,
}

/// Worst observed slack for one inequality across a family.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WorstSlack {
    pub inequality: String,
    pub slack: f64,
    pub instance: usize,
}

/// Largest observed left/right ratio for an upper-bound inequality, with
/// the witnessing kernel embedded for later study. No tightness claim is
/// made; these are observations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WorstRatio {
    pub inequality: String,
    pub ratio: f64,
    pub instance: usize,
    pub kernel: KernelFile,
}

/// An instance that failed some inequality, serialized verbatim so the
/// failure can be reproduced from the report alone.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FailureRecord {
    pub instance: usize,
    pub slacks: Vec<f64>,
    pub kernel: KernelFile,
}

/// Family-level aggregation of the per-instance reports.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilyAggregate {
    pub total: usize,
    pub passed: usize,
    pub non_conclusive: usize,
    pub worst_slacks: Vec<WorstSlack>,
    pub worst_ratios: Vec<WorstRatio>,
    pub failures: Vec<FailureRecord>,
}

/// Verification of a whole randomized family.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilyReport {
    pub spec: FamilySpec,
    pub rng_algorithm: String,
    pub instances: Vec<InstanceVerification>,
    pub aggregate: FamilyAggregate,
}

impl FamilyReport {
    pub fn all_pass(&self) -> bool {
        self.aggregate.failures.is_empty()
    }
}

/// Draw the family deterministically from the master seed. Per instance,
/// the draw order is fixed: block count, instance seed, and for differences
/// a second block count and seed.
fn generate_family(spec: &FamilySpec) -> Result<Vec<StepKernel>> {
    use rand::Rng;
    let mut master = rng::seeded(spec.seed);
    let mut kernels = Vec::with_capacity(spec.count);
    for _ in 0..spec.count {
        let n = master.random_range(spec.min_blocks..=spec.max_blocks);
        let instance_seed = master.random::<u64>();
        let kernel = match spec.kind {
            FamilyKind::Graphon => {
                random_step_kernel(n, (0.0, 1.0), spec.weight_mode, instance_seed)?
            }
            FamilyKind::Kernel { lo, hi } => {
                random_step_kernel(n, (lo, hi), spec.weight_mode, instance_seed)?
            }
            FamilyKind::GraphonDifference => {
                let n2 = master.random_range(spec.min_blocks..=spec.max_blocks);
                let second_seed = master.random::<u64>();
                let a = random_step_kernel(n, (0.0, 1.0), spec.weight_mode, instance_seed)?;
                let b = random_step_kernel(n2, (0.0, 1.0), spec.weight_mode, second_seed)?;
                StepKernel::difference(&a, &b)?
            }
        };
        kernels.push(kernel);
    }
    Ok(kernels)
}

const CHAIN_ORDER: [&str; 6] = [
    "cut_le_inf1",
    "inf1_le_4cut",
    "inf1_le_op22",
    "op22_le_sqrt_2_inf1",
    "cut_le_op22",
    "op22_le_sqrt_8cut",
];

/// Run the three checks over a seeded random family and aggregate.
///
/// Instances evaluate in parallel; each is a pure function of its kernel,
/// and the reduction below is order-independent, so the report is identical
/// regardless of worker count. Sizes must stay within the exact limits so
/// every verdict is conclusive.
pub fn verify_family(spec: &FamilySpec, config: &NormConfig) -> Result<FamilyReport> {
    if spec.count > 0 {
        if spec.min_blocks == 0 || spec.min_blocks > spec.max_blocks {
            return Err(Error::InvalidRange {
                lo: spec.min_blocks as f64,
                hi: spec.max_blocks as f64,
                reason: "block-count range must satisfy 1 <= min <= max".into(),
            });
        }
        let worst_case = match spec.kind {
            FamilyKind::GraphonDifference => 2 * spec.max_blocks - 1,
            _ => spec.max_blocks,
        };
        if worst_case > config.cut_exact_limit {
            return Err(Error::InvalidRange {
                lo: spec.min_blocks as f64,
                hi: spec.max_blocks as f64,
                reason: format!(
                    "family can reach {worst_case} blocks, beyond the exact limit {} required for conclusive verification",
                    config.cut_exact_limit
                ),
            });
        }
    }
    let kernels = generate_family(spec)?;
    let instances: Vec<InstanceVerification> = kernels
        .par_iter()
        .enumerate()
        .map(|(index, k)| {
            verify_kernel(k, config).map(|verification| InstanceVerification {
                index,
                blocks: k.block_count(),
                verification,
            })
        })
        .collect::<Result<_>>()?;

    let mut worst_slacks: Vec<WorstSlack> = Vec::new();
    let mut worst_ratios: Vec<WorstRatio> = Vec::new();
    let mut failures = Vec::new();
    let mut passed = 0;
    let mut non_conclusive = 0;
    for inst in &instances {
        let v = &inst.verification;
        if v.all_pass() {
            passed += 1;
        } else {
            failures.push(FailureRecord {
                instance: inst.index,
                slacks: v.slacks(),
                kernel: KernelFile::from_kernel(&kernels[inst.index]),
            });
        }
        if !v.status.is_conclusive() {
            non_conclusive += 1;
        }
        for check in v.entries() {
            match worst_slacks.iter_mut().find(|w| w.inequality == check.name) {
                Some(w) if check.slack < w.slack => {
                    w.slack = check.slack;
                    w.instance = inst.index;
                }
                Some(_) => {}
                None => worst_slacks.push(WorstSlack {
                    inequality: check.name.clone(),
                    slack: check.slack,
                    instance: inst.index,
                }),
            }
        }
        for check in v.entries() {
            // Ratios only for the three upper bounds, where the constant
            // lives; skip near-zero denominators.
            let is_upper = matches!(
                check.name.as_str(),
                "inf1_le_4cut" | "op22_le_sqrt_2_inf1" | "op22_le_sqrt_8cut"
            );
            if !is_upper || check.right.abs() < 1e-15 {
                continue;
            }
            let ratio = check.left / check.right;
            match worst_ratios.iter_mut().find(|w| w.inequality == check.name) {
                Some(w) if ratio > w.ratio => {
                    w.ratio = ratio;
                    w.instance = inst.index;
                    w.kernel = KernelFile::from_kernel(&kernels[inst.index]);
                }
                Some(_) => {}
                None => worst_ratios.push(WorstRatio {
                    inequality: check.name.clone(),
                    ratio,
                    instance: inst.index,
                    kernel: KernelFile::from_kernel(&kernels[inst.index]),
                }),
            }
        }
    }
    worst_slacks.sort_by_key(|w| CHAIN_ORDER.iter().position(|n| *n == w.inequality));
    worst_ratios.sort_by_key(|w| CHAIN_ORDER.iter().position(|n| *n == w.inequality));
    let aggregate = FamilyAggregate {
        total: instances.len(),
        passed,
        non_conclusive,
        worst_slacks,
        worst_ratios,
        failures,
    };
    Ok(FamilyReport {
        spec: spec.clone(),
        rng_algorithm: RNG_ALGORITHM.to_string(),
        instances,
        aggregate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::StepGraphon;

    fn config() -> NormConfig {
        NormConfig::default()
    }

    #[test]
    fn constant_half_chain_slacks() {
        let k = StepKernel::constant(0.5);
        let v = verify_kernel(&k, &config()).unwrap();
        let slacks = v.slacks();
        let expected = [0.0, 1.5, 0.0, 0.5, 0.0, 1.5];
        for (got, want) in slacks.iter().zip(expected) {
            assert!((got - want).abs() < 1e-12, "{slacks:?}");
        }
        assert!(v.all_pass());
        assert!(v.status.is_conclusive());
    }

    #[test]
    fn zero_kernel_equality_chain() {
        let k = StepKernel::new(vec![vec![0.0]], vec![1.0]).unwrap();
        let v = verify_kernel(&k, &config()).unwrap();
        assert!(v.slacks().iter().all(|s| *s == 0.0));
        assert!(v.all_pass());
    }

    #[test]
    fn bipartite_lemma_values() {
        let g = StepGraphon::new(vec![vec![0.0, 1.0], vec![1.0, 0.0]], vec![0.5, 0.5]).unwrap();
        let report = check_operator_norm_lemma(g.as_kernel(), &config()).unwrap();
        assert!((report.entries[0].left - 0.5).abs() < 1e-12);
        assert!((report.entries[1].right - 1.0).abs() < 1e-12);
        assert!(report.all_pass());

        let prop = check_proposition(g.as_kernel(), &config()).unwrap();
        assert!((prop.entries[1].right - 2.0).abs() < 1e-12);
        let chain = prop.proof_chain.unwrap();
        assert!((chain.sqrt_2_inf1 - 1.0).abs() < 1e-12);
        assert!((chain.sqrt_2_times_4_cut - 2.0).abs() < 1e-12);
    }

    #[test]
    fn oversized_kernel_is_non_conclusive() {
        let n = 6;
        let rows: Vec<Vec<f64>> = (0..n)
            .map(|i| (0..n).map(|j| f64::from(u8::from(i != j))).collect())
            .collect();
        let k = StepKernel::new(rows, vec![1.0 / n as f64; n]).unwrap();
        let tight = NormConfig {
            cut_exact_limit: 4,
            inf1_exact_limit: 4,
            ..NormConfig::default()
        };
        let report = check_cut_norm_lemma(&k, &tight).unwrap();
        assert!(!report.status.is_conclusive());
        assert_eq!(report.norms.cut.method, MethodTag::HeuristicLowerBound);
    }

    #[test]
    fn random_kernel_determinism_and_range() {
        let a = random_step_kernel(6, (0.0, 1.0), WeightMode::Uniform, 11).unwrap();
        let b = random_step_kernel(6, (0.0, 1.0), WeightMode::Uniform, 11).unwrap();
        assert_eq!(a, b);
        assert!(StepGraphon::from_kernel(a.clone()).is_ok());

        let degenerate = random_step_kernel(1, (0.3, 0.3), WeightMode::Uniform, 0).unwrap();
        assert_eq!(degenerate.value(0, 0), 0.3);

        assert!(random_step_kernel(3, (0.5, 0.1), WeightMode::Uniform, 0).is_err());
        assert!(random_step_kernel(3, (-2.0, 0.1), WeightMode::Uniform, 0).is_err());
        assert!(random_step_kernel(0, (0.0, 1.0), WeightMode::Uniform, 0).is_err());
    }

    #[test]
    fn dirichlet_weights_are_valid() {
        let k = random_step_kernel(8, (-1.0, 1.0), WeightMode::DirichletLike, 5).unwrap();
        assert!(k.weights().iter().all(|w| *w > 0.0));
        assert!((k.weights().iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn empty_family_vacuous_pass() {
        let spec = FamilySpec {
            kind: FamilyKind::Graphon,
            min_blocks: 1,
            max_blocks: 10,
            count: 0,
            seed: 7,
            weight_mode: WeightMode::Uniform,
        };
        let report = verify_family(&spec, &config()).unwrap();
        assert_eq!(report.aggregate.total, 0);
        assert!(report.all_pass());
    }

    #[test]
    fn small_graphon_family_passes() {
        let spec = FamilySpec {
            kind: FamilyKind::Graphon,
            min_blocks: 1,
            max_blocks: 6,
            count: 25,
            seed: 3,
            weight_mode: WeightMode::Uniform,
        };
        let report = verify_family(&spec, &config()).unwrap();
        assert_eq!(report.aggregate.passed, 25);
        assert!(report.aggregate.failures.is_empty());
        assert_eq!(report.aggregate.worst_slacks.len(), 6);
        assert_eq!(report.aggregate.worst_ratios.len(), 3);
        // Observed upper-bound ratios never exceed 1.
        for w in &report.aggregate.worst_ratios {
            assert!(w.ratio <= 1.0 + 1e-9, "{w:?}");
        }
    }

    #[test]
    fn difference_family_passes() {
        let spec = FamilySpec {
            kind: FamilyKind::GraphonDifference,
            min_blocks: 1,
            max_blocks: 5,
            count: 10,
            seed: 13,
            weight_mode: WeightMode::Uniform,
        };
        let report = verify_family(&spec, &config()).unwrap();
        assert_eq!(report.aggregate.passed, 10);
    }

    #[test]
    fn aggregate_recomputes_from_instances() {
        let spec = FamilySpec {
            kind: FamilyKind::Graphon,
            min_blocks: 1,
            max_blocks: 8,
            count: 30,
            seed: 17,
            weight_mode: WeightMode::DirichletLike,
        };
        let report = verify_family(&spec, &config()).unwrap();
        let passed = report
            .instances
            .iter()
            .filter(|i| i.verification.all_pass())
            .count();
        assert_eq!(passed, report.aggregate.passed);
        for worst in &report.aggregate.worst_slacks {
            let recomputed = report
                .instances
                .iter()
                .flat_map(|i| i.verification.entries())
                .filter(|e| e.name == worst.inequality)
                .map(|e| e.slack)
                .fold(f64::INFINITY, f64::min);
            assert_eq!(recomputed.to_bits(), worst.slack.to_bits());
        }
    }

    #[test]
    fn family_rejects_sizes_beyond_exact_limit() {
        let spec = FamilySpec {
            kind: FamilyKind::Graphon,
            min_blocks: 1,
            max_blocks: 30,
            count: 1,
            seed: 0,
            weight_mode: WeightMode::Uniform,
        };
        assert!(verify_family(&spec, &config()).is_err());
    }

    #[test]
    fn family_is_deterministic() {
        let spec = FamilySpec {
            kind: FamilyKind::Kernel { lo: -1.0, hi: 1.0 },
            min_blocks: 2,
            max_blocks: 6,
            count: 8,
            seed: 21,
            weight_mode: WeightMode::DirichletLike,
        };
        let a = verify_family(&spec, &config()).unwrap();
        let b = verify_family(&spec, &config()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn out_of_scale_kernel_fails_upper_bounds() {
        // The upper-bound constants assume sup|W| <= 1; a constant-3 kernel
        // must trip the falsification path, not pass silently.
        let k = StepKernel::constant(3.0);
        let v = verify_kernel(&k, &config()).unwrap();
        assert!(!v.all_pass());
        assert!(!v.operator_norm_lemma.entries[1].pass);
    }
}
