//! Exact odd colorings, graph thickness, and discharging bookkeeping for
//! small graphs.

pub mod budget;
pub mod canon;
pub mod coloring;
pub mod critical;
pub mod discharging;
pub mod enumerate;
pub mod format;
pub mod generate;
pub mod graph;
pub mod planarity;
pub mod sampling;

pub use budget::Budget;
pub use canon::canonical_key;
pub use coloring::{
    odd_chromatic_number, odd_verdict, ColoringError, OddChromatic, OddVerdict, PartialColoring, VertexColoring,
};
pub use critical::{is_odd_k_critical, is_odd_k_minor_critical, CriticalityReport, MinorReport};
pub use discharging::{verify_certificate, CertificateReport, ChargeLedger};
pub use format::{parse_graph, serialize_graph, Format, ParseError};
pub use graph::{DegreeStats, Girth, Graph, GraphError};
pub use planarity::{planar_embed, EdgePartition, Planarity, PlaneEmbedding, ThicknessOutcome};
