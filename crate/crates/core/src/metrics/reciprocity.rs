use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::date::PubDate;
use crate::graph::{CitationClass, HybridGraph};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReciprocityCounts {
    pub events: usize,
    pub eligible: usize,
    pub reciprocated: usize,
}

impl ReciprocityCounts {
    pub fn rate(&self) -> Option<f64> {
        (self.eligible > 0).then(|| self.reciprocated as f64 / self.eligible as f64)
    }

    fn add(mut self, o: Self) -> Self {
        self.events += o.events;
        self.eligible += o.eligible;
        self.reciprocated += o.reciprocated;
        self
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ReciprocityResult {
    pub noncoauthor_rate: Option<f64>,
    pub coauthor_rate: Option<f64>,
    /// Events where the two authors had not coauthored before the citing
    /// paper.
    pub noncoauthor: ReciprocityCounts,
    pub coauthor: ReciprocityCounts,
}

/// Events are distinct `(citing paper P, citing author a, cited author b)`
/// triples over non-self citations. An event is eligible when `b` publishes
/// after `P`, and reciprocated when one of those later papers by `b` cites a
/// paper by `a` through a non-self citation.
pub fn reciprocity(g: &HybridGraph) -> ReciprocityResult {
    // (citing author, cited author) -> latest date such a citation was made
    let mut latest: HashMap<(u32, u32), PubDate> = HashMap::new();
    for c in g.citations().iter().filter(|c| c.class != CitationClass::SelfCite) {
        let date = g.paper(c.citing).date;
        for &x in &g.paper(c.citing).authors {
            for &y in &g.paper(c.cited).authors {
                latest
                    .entry((x, y))
                    .and_modify(|d| {
                        if date.latest_key() > d.latest_key() {
                            *d = date;
                        }
                    })
                    .or_insert(date);
            }
        }
    }
    let last: Vec<Option<PubDate>> = (0..g.author_count() as u32).map(|a| g.last_paper_date(a)).collect();

    let (noncoauthor, coauthor) = (0..g.paper_count() as u32)
        .into_par_iter()
        .map(|p| {
            let paper = g.paper(p);
            let pairs: BTreeSet<(u32, u32)> = g
                .outgoing(p)
                .iter()
                .map(|&e| g.citations()[e as usize])
                .filter(|c| c.class != CitationClass::SelfCite)
                .flat_map(|c| {
                    paper.authors.iter().flat_map(move |&a| g.paper(c.cited).authors.iter().map(move |&b| (a, b)))
                })
                .collect();
            let mut split = (ReciprocityCounts::default(), ReciprocityCounts::default());
            for (a, b) in pairs {
                let bucket = if g.coauthored_before(a, b, &paper.date) { &mut split.1 } else { &mut split.0 };
                bucket.events += 1;
                if last[b as usize].is_some_and(|d| d.follows(&paper.date)) {
                    bucket.eligible += 1;
                    if latest.get(&(b, a)).is_some_and(|d| d.follows(&paper.date)) {
                        bucket.reciprocated += 1;
                    }
                }
            }
            split
        })
        .reduce(
            || (ReciprocityCounts::default(), ReciprocityCounts::default()),
            |x, y| (x.0.add(y.0), x.1.add(y.1)),
        );
    ReciprocityResult { noncoauthor_rate: noncoauthor.rate(), coauthor_rate: coauthor.rate(), noncoauthor, coauthor }
}
