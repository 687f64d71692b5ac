use serde::{Deserialize, Serialize};

use crate::graph::HybridGraph;

/// Corpus-level means for one view.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SummaryStatistics {
    pub view: String,
    pub papers: usize,
    pub authors: usize,
    pub citations: usize,
    pub authors_per_paper: Option<f64>,
    /// Citations to papers inside the view, per paper.
    pub citations_per_paper: Option<f64>,
    /// Distinct coauthors over a whole career, per author.
    pub collaborators_per_author: Option<f64>,
    pub papers_per_author: Option<f64>,
}

pub fn summary_statistics(g: &HybridGraph) -> SummaryStatistics {
    let papers = g.paper_count();
    let authors = g.author_count();
    let mean = |num: usize, den: usize| (den > 0).then(|| num as f64 / den as f64);
    let bylines: usize = g.papers().iter().map(|p| p.authors.len()).sum();
    let collaborators: usize = (0..authors as u32).map(|a| g.coauthor_events(a).len()).sum();
    SummaryStatistics {
        view: g.label().to_string(),
        papers,
        authors,
        citations: g.citations().len(),
        authors_per_paper: mean(bylines, papers),
        citations_per_paper: mean(g.citations().len(), papers),
        collaborators_per_author: mean(collaborators, authors),
        papers_per_author: mean(bylines, authors),
    }
}
