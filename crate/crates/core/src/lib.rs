//! Distance-k dominating sets on graphs excluding a K_{2,t} minor.
//!
//! The constant-round heuristic lives in [`domset`] and runs on the
//! synchronous message-passing simulator in [`local`]. The clustered
//! `(1 + α)` pipeline is in [`approx`]. [`oracle`] holds the exact solvers
//! used to check everything else.

pub mod approx;
pub mod bounds;
pub mod decomposition;
pub mod domset;
pub mod error;
pub mod experiments;
pub mod generators;
pub mod graph;
pub mod local;
pub mod oracle;
pub mod voronoi;

pub use approx::{ApproxRun, EpsilonSource};
pub use decomposition::{ClusterPartition, Fraction};
pub use domset::DomSetRun;
pub use error::{Error, Result};
pub use generators::{Family, GeneratorSpec};
pub use graph::{read_graph, write_graph, Diameter, Graph, GraphFile, QuotientGraph, VertexId, VertexSet};
pub use oracle::OptimalCertificate;
pub use voronoi::VoronoiPartition;
