use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::graph::{sorted_intersect, CitationClass, HybridGraph};

/// Paper counts for one direction (made or received).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParticipationCounts {
    pub self_cite: usize,
    pub coauthor: usize,
    pub both: usize,
    pub either: usize,
    /// Papers for which both kinds were possible.
    pub both_possible: usize,
    /// Of those, papers with at least one citation of either kind.
    pub either_given_both_possible: usize,
}

impl ParticipationCounts {
    fn add(mut self, o: Self) -> Self {
        self.self_cite += o.self_cite;
        self.coauthor += o.coauthor;
        self.both += o.both;
        self.either += o.either;
        self.both_possible += o.both_possible;
        self.either_given_both_possible += o.either_given_both_possible;
        self
    }

    fn single(has_self: bool, has_coauthor: bool, self_possible: bool, coauthor_possible: bool) -> Self {
        let possible = self_possible && coauthor_possible;
        let either = has_self || has_coauthor;
        Self {
            self_cite: has_self as usize,
            coauthor: has_coauthor as usize,
            both: (has_self && has_coauthor) as usize,
            either: either as usize,
            both_possible: possible as usize,
            either_given_both_possible: (possible && either) as usize,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ParticipationRow {
    SelfCitation,
    CoauthorCitation,
    Both,
    Either,
    EitherGivenBothPossible,
}

impl ParticipationRow {
    pub const ALL: [ParticipationRow; 5] = [
        ParticipationRow::SelfCitation,
        ParticipationRow::CoauthorCitation,
        ParticipationRow::Both,
        ParticipationRow::Either,
        ParticipationRow::EitherGivenBothPossible,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            ParticipationRow::SelfCitation => "self",
            ParticipationRow::CoauthorCitation => "coauthor",
            ParticipationRow::Both => "both",
            ParticipationRow::Either => "either",
            ParticipationRow::EitherGivenBothPossible => "either_given_both_possible",
        }
    }
}

/// Papers making or receiving at least one citation of each kind.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParticipationTable {
    pub papers: usize,
    pub made: ParticipationCounts,
    pub received: ParticipationCounts,
}

fn percent(num: usize, den: usize) -> Option<f64> {
    (den > 0).then(|| 100.0 * num as f64 / den as f64)
}

impl ParticipationTable {
    fn pick(c: &ParticipationCounts, row: ParticipationRow, papers: usize) -> Option<f64> {
        match row {
            ParticipationRow::SelfCitation => percent(c.self_cite, papers),
            ParticipationRow::CoauthorCitation => percent(c.coauthor, papers),
            ParticipationRow::Both => percent(c.both, papers),
            ParticipationRow::Either => percent(c.either, papers),
            ParticipationRow::EitherGivenBothPossible => percent(c.either_given_both_possible, c.both_possible),
        }
    }

    /// Percentage of papers; `None` when the denominator is empty.
    pub fn made_percent(&self, row: ParticipationRow) -> Option<f64> {
        Self::pick(&self.made, row, self.papers)
    }

    pub fn received_percent(&self, row: ParticipationRow) -> Option<f64> {
        Self::pick(&self.received, row, self.papers)
    }
}

/// Whether each kind of citation could have been made by / to `p`:
///
/// - self made: an author of `p` has an earlier paper;
/// - coauthor made: an author of `p` has an earlier-acquired coauthor with an
///   earlier paper sharing no author with `p`;
/// - self received: an author of `p` has a later paper;
/// - coauthor received: a later paper sharing no author with `p` has an
///   author who coauthored with an author of `p` before that later paper.
struct Possibility<'g> {
    g: &'g HybridGraph,
}

impl Possibility<'_> {
    fn self_made(&self, p: u32) -> bool {
        let date = self.g.paper(p).date;
        // author papers are in earliest-key order, so the first is enough
        self.g.paper(p).authors.iter().any(|&a| {
            self.g.author_papers(a).first().is_some_and(|&q| self.g.paper(q).date.precedes(&date))
        })
    }

    fn self_received(&self, p: u32) -> bool {
        let date = self.g.paper(p).date;
        self.g.paper(p).authors.iter().any(|&a| {
            self.g.last_paper_date(a).is_some_and(|d| d.follows(&date))
        })
    }

    fn coauthor_made(&self, p: u32) -> bool {
        let paper = self.g.paper(p);
        let key = paper.date.earliest_key();
        paper.authors.iter().any(|&x| {
            self.g.coauthor_events(x).iter().filter(|e| e.date.precedes(&paper.date)).any(|e| {
                self.g
                    .author_papers(e.coauthor)
                    .iter()
                    .map(|&q| self.g.paper(q))
                    // anything preceding p sorts strictly before it
                    .take_while(|q| q.date.earliest_key() < key)
                    .any(|q| q.date.precedes(&paper.date) && !sorted_intersect(&q.authors, &paper.authors))
            })
        })
    }

    fn coauthor_received(&self, p: u32) -> bool {
        let paper = self.g.paper(p);
        paper.authors.iter().any(|&a| {
            self.g.coauthor_events(a).iter().any(|e| {
                self.g.author_papers(e.coauthor).iter().rev().map(|&q| self.g.paper(q)).any(|q| {
                    q.date.follows(&paper.date)
                        && e.date.precedes(&q.date)
                        && !sorted_intersect(&q.authors, &paper.authors)
                })
            })
        })
    }
}

pub fn participation_table(g: &HybridGraph) -> ParticipationTable {
    let poss = Possibility { g };
    let has = |edges: &[u32], class: CitationClass| edges.iter().any(|&e| g.citations()[e as usize].class == class);
    let (made, received) = (0..g.paper_count() as u32)
        .into_par_iter()
        .map(|p| {
            let out = g.outgoing(p);
            let inc = g.incoming(p);
            let made = ParticipationCounts::single(
                has(out, CitationClass::SelfCite),
                has(out, CitationClass::CoauthorCite),
                poss.self_made(p),
                poss.coauthor_made(p),
            );
            let received = ParticipationCounts::single(
                has(inc, CitationClass::SelfCite),
                has(inc, CitationClass::CoauthorCite),
                poss.self_received(p),
                poss.coauthor_received(p),
            );
            (made, received)
        })
        .reduce(
            || (ParticipationCounts::default(), ParticipationCounts::default()),
            |a, b| (a.0.add(b.0), a.1.add(b.1)),
        );
    ParticipationTable { papers: g.paper_count(), made, received }
}
