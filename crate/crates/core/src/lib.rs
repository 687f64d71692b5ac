//! Bibliometric analysis of a combined citation and coauthorship network:
//! corpus ingestion and culling, author name disambiguation, a temporal
//! hybrid graph, the statistics computed over it, and a synthetic corpus
//! generator with ground truth.

pub mod date;
pub mod disambig;
pub mod graph;
pub mod ingest;
pub mod metrics;
pub mod report;
pub mod synthgen;

pub use date::PubDate;
pub use disambig::{
    disambiguate, evaluate, DisambigError, DisambigEvaluation, DisambigParams, GoldLabels, IdentityMap, MentionId,
    SimilarityWeights,
};
pub use graph::{build_hybrid, CitationClass, CoauthorGraph, GraphError, HybridGraph};
pub use ingest::{cull, parse_corpus, CorpusView, CullReport, CulledCorpus, IngestError, PaperRecord, RawCorpus};
pub use metrics::{BlockSeries, Ccdf, Credit, MetricsError};
pub use synthgen::{generate, GenConfig, GoldCorpus, NameNoise, SynthError};
