//! Statistics and curves over a [`HybridGraph`].
//!
//! A graph is built from a single corpus view, so every function here works
//! on whichever view the graph was built from. All functions are read-only
//! and deterministic; the pair-enumerating ones run in parallel and merge
//! partial results in a fixed order.

mod blocks;
mod citations;
mod closure;
mod participation;
mod productivity;
mod reciprocity;
mod summary;

pub use blocks::{block_series, block_start, fit_exponential, Block, BlockSeries, BlockStatistic, ExpFit};
pub use citations::{
    class_fractions_per_block, delay_ccdf, mean_delay_by_class, ClassFractionBlock, ClassFractions, DelayMeans,
};
pub use closure::{clustering_coefficient, prospective_closure, ClosureBin, ClosureResult, ClusteringVariant};
pub use participation::{participation_table, ParticipationCounts, ParticipationRow, ParticipationTable};
pub use productivity::{author_credit, lorenz_and_gini, productivity_ccdf, Credit, LorenzCurve};
pub use reciprocity::{reciprocity, ReciprocityCounts, ReciprocityResult};
pub use summary::{summary_statistics, SummaryStatistics};

use serde::{Deserialize, Serialize};

/// Slack used when comparing accumulated floating-point credit against a
/// threshold, so that e.g. three thirds count as exactly one.
pub const TIE_EPS: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MetricsError {
    #[error("block width must be at least 1 year, got {0}")]
    InvalidWidth(i32),
    #[error("need at least two blocks to fit, got {0}")]
    TooFewPoints(usize),
    #[error("block starting {start_year} has no positive value")]
    NonPositive { start_year: i32 },
    #[error("graph has no authors")]
    NoAuthors,
    #[error("total credit is zero")]
    ZeroCredit,
}

/// Complementary cumulative distribution: each point is `(x, fraction of
/// values strictly greater than x)`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Ccdf {
    pub points: Vec<(f64, f64)>,
}

impl Ccdf {
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Step-function lookup at the largest tabulated x not exceeding `x`;
    /// `None` before the first point.
    pub fn at(&self, x: f64) -> Option<f64> {
        let i = self.points.partition_point(|&(px, _)| px <= x + TIE_EPS);
        if i == 0 {
            return None;
        }
        Some(self.points[i - 1].1)
    }
}
