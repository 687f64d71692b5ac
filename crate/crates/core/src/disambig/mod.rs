//! Author name disambiguation.
//!
//! Every mention starts as its own author. Affiliation strings are first
//! grouped into clusters; mentions with identical normalized names that share
//! an affiliation cluster are then merged outright. Finally, clusters with
//! compatible (but not necessarily identical) names that never appear on the
//! same paper are scored on shared affiliations, shared coauthors, identical
//! names and shared journals, and merged greedily, best pair first, while the
//! score stays above a threshold.

mod affiliations;
mod evaluate;
mod identity;
mod merge;
mod names;

pub use affiliations::{
    cluster_affiliations, normalize_affiliation, quick_ratio, real_quick_ratio, sequence_ratio,
    AffiliationCluster, AffiliationClusters, DEFAULT_AFFILIATION_THRESHOLD,
};
pub use evaluate::{evaluate, DisambigEvaluation, GoldLabels};
pub use identity::{IdentityEntry, IdentityMap, MentionId};
pub use merge::{
    agglomerate, agglomerate_by, candidate_pairs, merge_step1, pair_similarity, MentionCluster,
    MentionRef, MentionTable, SimilarityScore, SimilarityWeights, DEFAULT_MERGE_THRESHOLD,
};
pub use names::{names_compatible, normalize_name, NameKey};

use serde::{Deserialize, Serialize};

use crate::ingest::CorpusView;

#[derive(Debug, thiserror::Error)]
pub enum DisambigError {
    #[error("cannot parse author name {0:?}: no surname")]
    UnparseableName(String),
    #[error("gold labels missing mention ({paper_id}, {index})")]
    MissingGold { paper_id: String, index: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DisambigParams {
    pub affiliation_threshold: f64,
    pub merge_threshold: f64,
    pub weights: SimilarityWeights,
}

impl Default for DisambigParams {
    fn default() -> Self {
        Self {
            affiliation_threshold: DEFAULT_AFFILIATION_THRESHOLD,
            merge_threshold: DEFAULT_MERGE_THRESHOLD,
            weights: SimilarityWeights::default(),
        }
    }
}

impl DisambigParams {
    pub fn validate(&self) -> Result<(), DisambigError> {
        let t = self.affiliation_threshold;
        if !(t > 0.0 && t <= 1.0) {
            return Err(DisambigError::InvalidParameter(format!(
                "affiliation threshold {t} not in (0, 1]"
            )));
        }
        if self.merge_threshold.is_nan() {
            return Err(DisambigError::InvalidParameter("merge threshold is NaN".into()));
        }
        let w = &self.weights;
        for (name, v) in [
            ("affiliation weight", w.affiliation),
            ("coauthor weight", w.coauthor),
            ("name weight", w.identical_name),
            ("journal weight", w.journal),
        ] {
            if !(v >= 0.0 && v.is_finite()) {
                return Err(DisambigError::InvalidParameter(format!("{name} {v} must be finite and >= 0")));
            }
        }
        Ok(())
    }
}

/// Intermediate results, kept for inspection.
#[derive(Clone, Debug)]
pub struct Disambiguation {
    pub affiliations: AffiliationClusters,
    pub step1_clusters: usize,
    pub clusters: Vec<MentionCluster>,
    pub identities: IdentityMap,
}

/// Runs both merge steps over every mention in `view`.
pub fn disambiguate(view: &CorpusView<'_>, params: &DisambigParams) -> Result<Disambiguation, DisambigError> {
    params.validate()?;
    let table = MentionTable::build(view, params.affiliation_threshold)?;
    let step1 = merge_step1(&table);
    let step1_clusters = step1.len();
    let clusters = agglomerate(step1, &params.weights, params.merge_threshold);
    let identities = IdentityMap::from_clusters(&table, &clusters);
    Ok(Disambiguation { affiliations: table.affiliations().clone(), step1_clusters, clusters, identities })
}

/// Treats every distinct raw name string as one author.
pub fn raw_name_identities(view: &CorpusView<'_>) -> IdentityMap {
    IdentityMap::by_raw_name(view)
}
