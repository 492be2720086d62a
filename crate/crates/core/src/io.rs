//! File schemas and report envelopes.
//!
//! Three small JSON document types move through the CLI:
//!
//! * kernel file: `{"weights": [w_0, …], "values": [[v_00, …], …]}`
//! * adjacency file: `{"n": 4, "edges": [[0,1], [2,3], …]}` (0-indexed pairs)
//! * motif file: `{"vertices": 3, "edges": [[0,1], [1,2], …]}`
//!
//! Reports share one envelope: a `schema_version`, a header holding
//! everything time-dependent (timestamps, elapsed wall time, the command
//! line), and a `payload` that is a pure function of inputs and seeds.
//! Two runs with identical flags and seeds produce byte-identical payloads;
//! only the header differs.

use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homomorphism::Motif;
use crate::kernel::{AdjacencyGraph, StepKernel};

/// Version stamped on every report envelope.
pub const REPORT_SCHEMA_VERSION: &str = "1";

/// On-disk form of a step kernel.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KernelFile {
    pub weights: Vec<f64>,
    pub values: Vec<Vec<f64>>,
}

impl KernelFile {
    pub fn from_kernel(k: &StepKernel) -> Self {
        Self {
            weights: k.weights().to_vec(),
            values: k.value_rows(),
        }
    }

    pub fn to_kernel(&self) -> Result<StepKernel> {
        StepKernel::new(self.values.clone(), self.weights.clone())
    }
}

/// On-disk form of a graph: vertex count plus 0-indexed edge pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AdjacencyFile {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl AdjacencyFile {
    pub fn from_graph(g: &AdjacencyGraph) -> Self {
        Self {
            n: g.vertex_count(),
            edges: g.edges().to_vec(),
        }
    }

    pub fn to_graph(&self) -> Result<AdjacencyGraph> {
        AdjacencyGraph::new(self.n, self.edges.clone())
    }
}

/// On-disk form of a motif; canonical `i < j` ordering is enforced on read.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MotifFile {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
}

impl MotifFile {
    pub fn from_motif(m: &Motif) -> Self {
        Self {
            vertices: m.vertex_count(),
            edges: m.edges().to_vec(),
        }
    }

    pub fn to_motif(&self) -> Result<Motif> {
        Motif::new(self.vertices, self.edges.clone())
    }
}

/// Time-dependent report metadata, ignorable when comparing payloads.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportHeader {
    pub tool: String,
    pub created_unix_ms: u64,
    pub elapsed_ms: u64,
    pub command: String,
}

/// Versioned wrapper around a deterministic payload.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportEnvelope<T> {
    pub schema_version: String,
    pub header: ReportHeader,
    pub payload: T,
}

impl<T> ReportEnvelope<T> {
    pub fn new(header: ReportHeader, payload: T) -> Self {
        Self {
            schema_version: REPORT_SCHEMA_VERSION.to_string(),
            header,
            payload,
        }
    }
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        context: format!("reading {}", path.display()),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| Error::Json {
        context: format!("parsing {}", path.display()),
        source,
    })
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value).map_err(|source| Error::Json {
        context: format!("serializing {}", path.display()),
        source,
    })?;
    text.push('\n');
    std::fs::write(path, text).map_err(|source| Error::Io {
        context: format!("writing {}", path.display()),
        source,
    })
}

pub fn load_kernel(path: &Path) -> Result<StepKernel> {
    read_json::<KernelFile>(path)?.to_kernel()
}

pub fn save_kernel(path: &Path, k: &StepKernel) -> Result<()> {
    write_json(path, &KernelFile::from_kernel(k))
}

pub fn load_adjacency(path: &Path) -> Result<AdjacencyGraph> {
    read_json::<AdjacencyFile>(path)?.to_graph()
}

pub fn save_adjacency(path: &Path, g: &AdjacencyGraph) -> Result<()> {
    write_json(path, &AdjacencyFile::from_graph(g))
}

pub fn load_motif(path: &Path) -> Result<Motif> {
    read_json::<MotifFile>(path)?.to_motif()
}

pub fn save_motif(path: &Path, m: &Motif) -> Result<()> {
    write_json(path, &MotifFile::from_motif(m))
}

pub fn save_report<T: Serialize>(path: &Path, report: &ReportEnvelope<T>) -> Result<()> {
    write_json(path, report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::StepGraphon;

    #[test]
    fn kernel_file_round_trip() {
        let g = StepGraphon::new(vec![vec![0.0, 1.0], vec![1.0, 0.0]], vec![0.5, 0.5]).unwrap();
        let file = KernelFile::from_kernel(g.as_kernel());
        let back = file.to_kernel().unwrap();
        assert_eq!(back, *g.as_kernel());
    }

    #[test]
    fn kernel_json_bitexact_round_trip() {
        let k = StepKernel::new(
            vec![vec![0.1 + 0.2, -0.3], vec![-0.3, 1.0 / 3.0]],
            vec![1.0 / 3.0, 2.0 / 3.0],
        )
        .unwrap();
        let json = serde_json::to_string(&KernelFile::from_kernel(&k)).unwrap();
        let parsed: KernelFile = serde_json::from_str(&json).unwrap();
        let back = parsed.to_kernel().unwrap();
        assert_eq!(back.digest(), k.digest());
    }

    #[test]
    fn missing_field_names_the_field() {
        let err = serde_json::from_str::<KernelFile>("{\"values\": [[0.5]]}").unwrap_err();
        assert!(err.to_string().contains("weights"), "{err}");
    }

    #[test]
    fn unknown_field_is_rejected() {
        let err = serde_json::from_str::<KernelFile>(
            "{\"weights\": [1.0], \"values\": [[0.5]], \"extra\": 1}",
        )
        .unwrap_err();
        assert!(err.to_string().contains("extra"), "{err}");
    }

    #[test]
    fn adjacency_and_motif_round_trip() {
        let g = AdjacencyGraph::new(4, vec![(3, 1), (0, 2)]).unwrap();
        let back = AdjacencyFile::from_graph(&g).to_graph().unwrap();
        assert_eq!(back, g);

        let m = Motif::triangle();
        let back = MotifFile::from_motif(&m).to_motif().unwrap();
        assert_eq!(back, m);
    }
}
