//! The hybrid network: citation digraph, author–paper incidence and a
//! temporal coauthorship index, frozen at build time.
//!
//! "Previously coauthored" always means a joint paper dated strictly before
//! the reference date (see [`PubDate::precedes`]). Each author pair keeps
//! only the earliest joint date under [`PubDate::earliest_key`], which is
//! enough to answer every "strictly before" query exactly.

use std::collections::HashMap;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::date::PubDate;
use crate::disambig::{IdentityMap, MentionId};
use crate::ingest::CorpusView;

#[derive(Debug, thiserror::Error)]
pub enum GraphError {
    #[error("mention ({paper_id}, {index}) has no identity")]
    MissingIdentity { paper_id: String, index: usize },
    #[error("unknown author `{0}`")]
    UnknownAuthor(String),
    #[error("unknown paper `{0}`")]
    UnknownPaper(String),
    #[error("no citation {citing} -> {cited}")]
    UnknownCitation { citing: String, cited: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CitationClass {
    SelfCite,
    CoauthorCite,
    Distant,
}

impl CitationClass {
    pub const ALL: [CitationClass; 3] = [CitationClass::SelfCite, CitationClass::CoauthorCite, CitationClass::Distant];

    pub fn name(&self) -> &'static str {
        match self {
            CitationClass::SelfCite => "self",
            CitationClass::CoauthorCite => "coauthor",
            CitationClass::Distant => "distant",
        }
    }

    pub fn index(&self) -> usize {
        *self as usize
    }
}

#[derive(Clone, Debug)]
pub struct PaperNode {
    pub id: String,
    pub date: PubDate,
    pub journal: String,
    /// Distinct author indices, sorted.
    pub authors: Vec<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Citation {
    pub citing: u32,
    pub cited: u32,
    pub class: CitationClass,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CoauthorEvent {
    pub date: PubDate,
    pub coauthor: u32,
}

#[derive(Clone, Debug)]
pub struct HybridGraph {
    label: String,
    papers: Vec<PaperNode>,
    paper_index: HashMap<String, u32>,
    citations: Vec<Citation>,
    cites_out: Vec<Vec<u32>>,
    cites_in: Vec<Vec<u32>>,
    author_ids: Vec<String>,
    author_index: HashMap<String, u32>,
    author_papers: Vec<Vec<u32>>,
    coauthor_index: Vec<Vec<CoauthorEvent>>,
    first_joint: HashMap<(u32, u32), PubDate>,
}

fn pair_key(a: u32, b: u32) -> (u32, u32) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

pub(crate) fn sorted_intersect(a: &[u32], b: &[u32]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return true,
        }
    }
    false
}

/// Builds the three layers over `view`. Papers are stored in chronological
/// order (earliest key, then id); authors in identity-map order, restricted
/// to those with a paper in the view. Citations to papers outside the view
/// are dropped.
pub fn build_hybrid(view: &CorpusView<'_>, identities: &IdentityMap) -> Result<HybridGraph, GraphError> {
    let lookup = identities.lookup();

    let mut order: Vec<_> = view.papers().collect();
    order.sort_by(|a, b| a.pub_date.earliest_key().cmp(&b.pub_date.earliest_key()).then_with(|| a.id.cmp(&b.id)));

    // identity position -> dense author index, assigned in identity order
    let mut used = vec![false; identities.authors.len()];
    let mut bylines: Vec<Vec<usize>> = Vec::with_capacity(order.len());
    for p in &order {
        let mut byline = Vec::with_capacity(p.mentions.len());
        for i in 0..p.mentions.len() {
            let key = MentionId::new(p.id.clone(), i);
            let &who = lookup
                .get(&key)
                .ok_or_else(|| GraphError::MissingIdentity { paper_id: p.id.clone(), index: i })?;
            used[who] = true;
            byline.push(who);
        }
        bylines.push(byline);
    }
    let mut dense = vec![u32::MAX; identities.authors.len()];
    let mut author_ids = Vec::new();
    for (i, entry) in identities.authors.iter().enumerate() {
        if used[i] {
            dense[i] = author_ids.len() as u32;
            author_ids.push(entry.id.clone());
        }
    }
    let author_index: HashMap<String, u32> =
        author_ids.iter().enumerate().map(|(i, id)| (id.clone(), i as u32)).collect();

    let papers: Vec<PaperNode> = order
        .iter()
        .zip(bylines)
        .map(|(p, byline)| {
            let mut authors: Vec<u32> = byline.into_iter().map(|w| dense[w]).collect();
            authors.sort_unstable();
            authors.dedup();
            PaperNode { id: p.id.clone(), date: p.pub_date, journal: p.journal.clone(), authors }
        })
        .collect();
    let paper_index: HashMap<String, u32> =
        papers.iter().enumerate().map(|(i, p)| (p.id.clone(), i as u32)).collect();

    let mut author_papers = vec![Vec::new(); author_ids.len()];
    let mut first_joint: HashMap<(u32, u32), PubDate> = HashMap::new();
    for (pi, p) in papers.iter().enumerate() {
        for (x, &a) in p.authors.iter().enumerate() {
            author_papers[a as usize].push(pi as u32);
            for &b in &p.authors[x + 1..] {
                // papers are visited in earliest-key order, so the first
                // insertion is the minimum
                first_joint.entry((a, b)).or_insert(p.date);
            }
        }
    }
    let mut coauthor_index = vec![Vec::new(); author_ids.len()];
    for (&(a, b), &date) in &first_joint {
        coauthor_index[a as usize].push(CoauthorEvent { date, coauthor: b });
        coauthor_index[b as usize].push(CoauthorEvent { date, coauthor: a });
    }
    for events in &mut coauthor_index {
        events.sort_by_key(|e| (e.date.earliest_key(), e.coauthor));
    }

    let mut graph = HybridGraph {
        label: view.label().to_string(),
        cites_out: vec![Vec::new(); papers.len()],
        cites_in: vec![Vec::new(); papers.len()],
        papers,
        paper_index,
        citations: Vec::new(),
        author_ids,
        author_index,
        author_papers,
        coauthor_index,
        first_joint,
    };

    let mut citations = Vec::new();
    for (pi, p) in order.iter().enumerate() {
        for cited in &p.cited_ids {
            if let Some(&qi) = graph.paper_index.get(cited) {
                let class = graph.classify_indices(pi as u32, qi);
                citations.push(Citation { citing: pi as u32, cited: qi, class });
            }
        }
    }
    for (e, c) in citations.iter().enumerate() {
        graph.cites_out[c.citing as usize].push(e as u32);
        graph.cites_in[c.cited as usize].push(e as u32);
    }
    graph.citations = citations;
    Ok(graph)
}

impl HybridGraph {
    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn papers(&self) -> &[PaperNode] {
        &self.papers
    }

    pub fn paper(&self, index: u32) -> &PaperNode {
        &self.papers[index as usize]
    }

    pub fn paper_count(&self) -> usize {
        self.papers.len()
    }

    pub fn paper_index(&self, id: &str) -> Option<u32> {
        self.paper_index.get(id).copied()
    }

    pub fn citations(&self) -> &[Citation] {
        &self.citations
    }

    /// Edge indices into [`Self::citations`].
    pub fn outgoing(&self, paper: u32) -> &[u32] {
        &self.cites_out[paper as usize]
    }

    pub fn incoming(&self, paper: u32) -> &[u32] {
        &self.cites_in[paper as usize]
    }

    pub fn author_count(&self) -> usize {
        self.author_ids.len()
    }

    pub fn author_id(&self, author: u32) -> &str {
        &self.author_ids[author as usize]
    }

    pub fn author_index(&self, id: &str) -> Option<u32> {
        self.author_index.get(id).copied()
    }

    /// Papers of an author, chronological.
    pub fn author_papers(&self, author: u32) -> &[u32] {
        &self.author_papers[author as usize]
    }

    /// First-coauthorship events of an author, sorted by date.
    pub fn coauthor_events(&self, author: u32) -> &[CoauthorEvent] {
        &self.coauthor_index[author as usize]
    }

    pub fn first_joint(&self, a: u32, b: u32) -> Option<PubDate> {
        self.first_joint.get(&pair_key(a, b)).copied()
    }

    pub fn coauthor_pairs(&self) -> impl Iterator<Item = ((u32, u32), PubDate)> + '_ {
        self.first_joint.iter().map(|(&k, &d)| (k, d))
    }

    pub fn coauthored_before(&self, a: u32, b: u32, date: &PubDate) -> bool {
        self.first_joint(a, b).is_some_and(|d| d.precedes(date))
    }

    /// Latest publication date of an author, by [`PubDate::latest_key`].
    pub fn last_paper_date(&self, author: u32) -> Option<PubDate> {
        self.author_papers(author).iter().map(|&p| self.paper(p).date).max_by_key(|d| d.latest_key())
    }

    pub fn coauthors_as_of_index(&self, author: u32, date: &PubDate) -> Vec<u32> {
        self.coauthor_index[author as usize]
            .iter()
            .filter(|e| e.date.precedes(date))
            .map(|e| e.coauthor)
            .collect()
    }

    /// Authors whose first joint paper with `author` is strictly earlier than
    /// `date`.
    pub fn coauthors_as_of(&self, author: &str, date: &PubDate) -> Result<Vec<&str>, GraphError> {
        let a = self.author_index(author).ok_or_else(|| GraphError::UnknownAuthor(author.to_string()))?;
        let mut out: Vec<&str> = self.coauthors_as_of_index(a, date).into_iter().map(|b| self.author_id(b)).collect();
        out.sort_unstable();
        Ok(out)
    }

    fn classify_indices(&self, citing: u32, cited: u32) -> CitationClass {
        let p = &self.papers[citing as usize];
        let q = &self.papers[cited as usize];
        if sorted_intersect(&p.authors, &q.authors) {
            return CitationClass::SelfCite;
        }
        let prior = p.authors.iter().any(|&a| q.authors.iter().any(|&b| self.coauthored_before(a, b, &p.date)));
        if prior {
            CitationClass::CoauthorCite
        } else {
            CitationClass::Distant
        }
    }

    pub fn classify_citation(&self, citing: &str, cited: &str) -> Result<CitationClass, GraphError> {
        let missing = || GraphError::UnknownCitation { citing: citing.to_string(), cited: cited.to_string() };
        let p = self.paper_index(citing).ok_or_else(missing)?;
        let q = self.paper_index(cited).ok_or_else(missing)?;
        self.outgoing(p)
            .iter()
            .map(|&e| self.citations[e as usize])
            .find(|c| c.cited == q)
            .map(|c| c.class)
            .ok_or_else(missing)
    }

    pub fn class_counts(&self) -> [usize; 3] {
        let mut counts = [0; 3];
        for c in &self.citations {
            counts[c.class.index()] += 1;
        }
        counts
    }

    /// Simple undirected coauthorship graph; with `as_of`, only pairs whose
    /// first joint paper strictly precedes it.
    pub fn coauthorship_projection(&self, as_of: Option<&PubDate>) -> CoauthorGraph {
        let mut adjacency = vec![Vec::new(); self.author_count()];
        for (&(a, b), date) in &self.first_joint {
            if as_of.is_none_or(|t| date.precedes(t)) {
                adjacency[a as usize].push(b);
                adjacency[b as usize].push(a);
            }
        }
        for n in &mut adjacency {
            n.sort_unstable();
        }
        CoauthorGraph { adjacency }
    }

    /// `citing,cited,class` rows using paper ids.
    pub fn write_citation_edges<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "citing,cited,class")?;
        for c in &self.citations {
            writeln!(out, "{},{},{}", self.paper(c.citing).id, self.paper(c.cited).id, c.class.name())?;
        }
        out.flush()
    }

    /// `author_a,author_b,first_joint_date` rows, sorted.
    pub fn write_coauthor_events<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "author_a,author_b,first_joint_date")?;
        let mut rows: Vec<_> = self.first_joint.iter().collect();
        rows.sort_by_key(|(&k, _)| k);
        for (&(a, b), d) in rows {
            writeln!(out, "{},{},{}", self.author_id(a), self.author_id(b), d)?;
        }
        out.flush()
    }
}

/// Undirected simple graph over author indices with sorted adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoauthorGraph {
    pub adjacency: Vec<Vec<u32>>,
}

impl CoauthorGraph {
    pub fn from_edges(nodes: usize, edges: &[(u32, u32)]) -> Self {
        let mut adjacency = vec![Vec::new(); nodes];
        for &(a, b) in edges {
            if a != b {
                adjacency[a as usize].push(b);
                adjacency[b as usize].push(a);
            }
        }
        for n in &mut adjacency {
            n.sort_unstable();
            n.dedup();
        }
        Self { adjacency }
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.adjacency[v as usize]
    }

    pub fn has_edge(&self, a: u32, b: u32) -> bool {
        self.adjacency[a as usize].binary_search(&b).is_ok()
    }

    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(a, n)| n.iter().filter(move |&&b| b > a as u32).map(move |&b| (a as u32, b)))
    }
}
