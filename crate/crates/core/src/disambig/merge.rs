use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, BinaryHeap, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::affiliations::{cluster_affiliations, AffiliationClusters};
use super::names::{names_compatible, normalize_name, NameKey};
use super::DisambigError;
use crate::ingest::CorpusView;

pub const DEFAULT_MERGE_THRESHOLD: f64 = 2.0;

/// Position of a mention: paper index within the view, byline slot.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct MentionRef {
    pub paper: u32,
    pub slot: u32,
}

#[derive(Clone, Debug)]
struct MentionInfo {
    at: MentionRef,
    key: NameKey,
    full: String,
    affiliations: Vec<u32>,
    journal: u32,
    coauthors: Vec<u32>,
}

/// Every mention of a view with its normalized name and features.
#[derive(Clone, Debug)]
pub struct MentionTable {
    paper_ids: Vec<String>,
    mentions: Vec<MentionInfo>,
    affiliations: AffiliationClusters,
}

impl MentionTable {
    pub fn build(view: &CorpusView<'_>, affiliation_threshold: f64) -> Result<Self, DisambigError> {
        let affiliations = cluster_affiliations(
            view.papers().flat_map(|p| p.mentions.iter().flat_map(|m| m.affiliations.iter().map(String::as_str))),
            affiliation_threshold,
        );
        Self::with_affiliations(view, affiliations)
    }

    pub fn with_affiliations(view: &CorpusView<'_>, affiliations: AffiliationClusters) -> Result<Self, DisambigError> {
        let mut journals: HashMap<&str, u32> = HashMap::new();
        let mut tokens: HashMap<(String, Option<char>), u32> = HashMap::new();
        let mut paper_ids = Vec::with_capacity(view.len());
        let mut mentions = Vec::new();

        for (pi, paper) in view.papers().enumerate() {
            paper_ids.push(paper.id.clone());
            let next = journals.len() as u32;
            let journal = *journals.entry(paper.journal.as_str()).or_insert(next);
            let keys: Vec<NameKey> =
                paper.mentions.iter().map(|m| normalize_name(&m.raw_name)).collect::<Result<_, _>>()?;
            let paper_tokens: Vec<u32> = keys
                .iter()
                .map(|k| {
                    let next = tokens.len() as u32;
                    *tokens.entry((k.last.clone(), k.first_initial())).or_insert(next)
                })
                .collect();
            for (slot, (m, key)) in paper.mentions.iter().zip(keys).enumerate() {
                let mut affs: Vec<u32> =
                    m.affiliations.iter().filter_map(|a| affiliations.cluster_of(a)).collect();
                affs.sort_unstable();
                affs.dedup();
                let coauthors = paper_tokens
                    .iter()
                    .enumerate()
                    .filter(|&(s, _)| s != slot)
                    .map(|(_, &t)| t)
                    .collect();
                mentions.push(MentionInfo {
                    at: MentionRef { paper: pi as u32, slot: slot as u32 },
                    full: key.full(),
                    key,
                    affiliations: affs,
                    journal,
                    coauthors,
                });
            }
        }
        Ok(Self { paper_ids, mentions, affiliations })
    }

    pub fn affiliations(&self) -> &AffiliationClusters {
        &self.affiliations
    }

    pub fn len(&self) -> usize {
        self.mentions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mentions.is_empty()
    }

    pub fn paper_id(&self, paper: u32) -> &str {
        &self.paper_ids[paper as usize]
    }

    pub fn name_key(&self, at: MentionRef) -> Option<&NameKey> {
        self.mentions
            .binary_search_by_key(&at, |m| m.at)
            .ok()
            .map(|i| &self.mentions[i].key)
    }

    /// One singleton cluster per mention, ids in mention order.
    pub fn singletons(&self) -> Vec<MentionCluster> {
        self.mentions.iter().enumerate().map(|(i, m)| MentionCluster::singleton(i as u32, m)).collect()
    }
}

/// A candidate author: a set of mentions plus the features the merge steps
/// score on. Feature sets are unions over member mentions.
#[derive(Clone, Debug, PartialEq)]
pub struct MentionCluster {
    pub author_id: u32,
    pub mentions: BTreeSet<MentionRef>,
    pub name_keys: BTreeSet<NameKey>,
    pub affiliation_clusters: BTreeSet<u32>,
    pub papers: BTreeSet<u32>,
    pub journals: BTreeSet<u32>,
    /// Interned (surname, first initial) tokens of co-listed authors.
    pub coauthors: BTreeSet<u32>,
}

impl MentionCluster {
    fn singleton(author_id: u32, m: &MentionInfo) -> Self {
        Self {
            author_id,
            mentions: BTreeSet::from([m.at]),
            name_keys: BTreeSet::from([m.key.clone()]),
            affiliation_clusters: m.affiliations.iter().copied().collect(),
            papers: BTreeSet::from([m.at.paper]),
            journals: BTreeSet::from([m.journal]),
            coauthors: m.coauthors.iter().copied().collect(),
        }
    }

    /// Bare cluster for hand-built fixtures.
    pub fn from_parts(author_id: u32, keys: &[NameKey], papers: &[u32]) -> Self {
        Self {
            author_id,
            mentions: papers.iter().map(|&p| MentionRef { paper: p, slot: 0 }).collect(),
            name_keys: keys.iter().cloned().collect(),
            affiliation_clusters: BTreeSet::new(),
            papers: papers.iter().copied().collect(),
            journals: BTreeSet::new(),
            coauthors: BTreeSet::new(),
        }
    }

    pub fn shares_paper(&self, other: &MentionCluster) -> bool {
        !self.papers.is_disjoint(&other.papers)
    }

    pub fn names_compatible_with(&self, other: &MentionCluster) -> bool {
        self.name_keys.iter().any(|a| other.name_keys.iter().any(|b| names_compatible(a, b)))
    }

    pub fn surname(&self) -> &str {
        self.name_keys.iter().next().map(|k| k.last.as_str()).unwrap_or("")
    }

    fn absorb(&mut self, other: MentionCluster) {
        self.mentions.extend(other.mentions);
        self.name_keys.extend(other.name_keys);
        self.affiliation_clusters.extend(other.affiliation_clusters);
        self.papers.extend(other.papers);
        self.journals.extend(other.journals);
        self.coauthors.extend(other.coauthors);
    }
}

/// Merges mentions whose normalized full names are identical and that share
/// at least one affiliation cluster. A merge that would put two mentions of
/// one paper into a cluster is skipped.
pub fn merge_step1(table: &MentionTable) -> Vec<MentionCluster> {
    let mut by_name: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
    for (i, m) in table.mentions.iter().enumerate() {
        by_name.entry(m.full.as_str()).or_default().push(i);
    }

    let mut out: Vec<MentionCluster> = Vec::with_capacity(table.len());
    for group in by_name.values() {
        let mut local: Vec<MentionCluster> = Vec::new();
        for &i in group {
            let mut current = MentionCluster::singleton(0, &table.mentions[i]);
            let mut k = 0;
            while k < local.len() {
                let c = &local[k];
                if !c.affiliation_clusters.is_disjoint(&current.affiliation_clusters) && !c.shares_paper(&current) {
                    current.absorb(local.remove(k));
                } else {
                    k += 1;
                }
            }
            local.push(current);
        }
        out.extend(local);
    }
    out.sort_by_key(|c| *c.mentions.first().expect("clusters are non-empty"));
    for (id, c) in out.iter_mut().enumerate() {
        c.author_id = id as u32;
    }
    out
}

fn blocks(clusters: &[MentionCluster]) -> BTreeMap<&str, Vec<usize>> {
    let mut blocks: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
    for (i, c) in clusters.iter().enumerate() {
        blocks.entry(c.surname()).or_default().push(i);
    }
    blocks
}

fn is_candidate(a: &MentionCluster, b: &MentionCluster) -> bool {
    !a.shares_paper(b) && a.names_compatible_with(b)
}

/// Unordered pairs `(lo_id, hi_id)` of clusters with compatible names and no
/// common paper, sorted.
pub fn candidate_pairs(clusters: &[MentionCluster]) -> Vec<(u32, u32)> {
    let mut pairs: Vec<(u32, u32)> = blocks(clusters)
        .into_values()
        .flat_map(|members| {
            let mut found = Vec::new();
            for (x, &i) in members.iter().enumerate() {
                for &j in &members[x + 1..] {
                    let (a, b) = (&clusters[i], &clusters[j]);
                    if is_candidate(a, b) {
                        found.push((a.author_id.min(b.author_id), a.author_id.max(b.author_id)));
                    }
                }
            }
            found
        })
        .collect();
    pairs.sort_unstable();
    pairs
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimilarityWeights {
    pub affiliation: f64,
    pub coauthor: f64,
    pub identical_name: f64,
    pub journal: f64,
}

impl Default for SimilarityWeights {
    fn default() -> Self {
        Self { affiliation: 2.0, coauthor: 1.0, identical_name: 1.0, journal: 0.5 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SimilarityScore {
    pub shared_affiliations: usize,
    pub shared_coauthors: usize,
    pub full_name_identical: bool,
    pub shared_journal: bool,
    pub combined: f64,
}

pub fn pair_similarity(a: &MentionCluster, b: &MentionCluster, w: &SimilarityWeights) -> SimilarityScore {
    let shared_affiliations = a.affiliation_clusters.intersection(&b.affiliation_clusters).count();
    let shared_coauthors = a.coauthors.intersection(&b.coauthors).count();
    let full_name_identical = !a.name_keys.is_disjoint(&b.name_keys);
    let shared_journal = !a.journals.is_disjoint(&b.journals);
    let combined = w.affiliation * shared_affiliations as f64
        + w.coauthor * shared_coauthors as f64
        + if full_name_identical { w.identical_name } else { 0.0 }
        + if shared_journal { w.journal } else { 0.0 };
    SimilarityScore { shared_affiliations, shared_coauthors, full_name_identical, shared_journal, combined }
}

pub fn agglomerate(clusters: Vec<MentionCluster>, weights: &SimilarityWeights, merge_threshold: f64) -> Vec<MentionCluster> {
    agglomerate_by(clusters, merge_threshold, |a, b| pair_similarity(a, b, weights).combined)
}

struct Candidate {
    score: f64,
    lo: u32,
    hi: u32,
    lo_slot: usize,
    hi_slot: usize,
    lo_version: u32,
    hi_version: u32,
}

impl PartialEq for Candidate {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Candidate {}

impl PartialOrd for Candidate {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Candidate {
    // Max-heap order: highest score, then smallest (lo, hi) id pair.
    fn cmp(&self, other: &Self) -> Ordering {
        self.score
            .total_cmp(&other.score)
            .then_with(|| other.lo.cmp(&self.lo))
            .then_with(|| other.hi.cmp(&self.hi))
            .then_with(|| other.lo_version.cmp(&self.lo_version))
            .then_with(|| other.hi_version.cmp(&self.hi_version))
    }
}

/// Greedy best-first agglomeration over candidate pairs (compatible names,
/// no shared paper). After each merge only pairs touching the merged cluster
/// are rescored. The merged cluster keeps the smaller author id.
pub fn agglomerate_by<F>(clusters: Vec<MentionCluster>, merge_threshold: f64, score: F) -> Vec<MentionCluster>
where
    F: Fn(&MentionCluster, &MentionCluster) -> f64 + Sync,
{
    let mut slots: Vec<Option<MentionCluster>> = clusters.into_iter().map(Some).collect();
    let mut versions = vec![0u32; slots.len()];

    let make = |slots: &[Option<MentionCluster>], versions: &[u32], i: usize, j: usize| -> Option<Candidate> {
        let (a, b) = (slots[i].as_ref()?, slots[j].as_ref()?);
        if !is_candidate(a, b) {
            return None;
        }
        let s = score(a, b);
        if s.is_nan() || s < merge_threshold {
            return None;
        }
        let (lo_slot, hi_slot) = if a.author_id < b.author_id { (i, j) } else { (j, i) };
        Some(Candidate {
            score: s,
            lo: a.author_id.min(b.author_id),
            hi: a.author_id.max(b.author_id),
            lo_slot,
            hi_slot,
            lo_version: versions[lo_slot],
            hi_version: versions[hi_slot],
        })
    };

    let block_members: Vec<Vec<usize>> = {
        let mut by_surname: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
        for (i, s) in slots.iter().enumerate() {
            by_surname.entry(s.as_ref().expect("all live").surname()).or_default().push(i);
        }
        by_surname.into_values().collect()
    };
    let mut heap: BinaryHeap<Candidate> = block_members
        .par_iter()
        .flat_map_iter(|members| {
            let mut found = Vec::new();
            for (x, &i) in members.iter().enumerate() {
                for &j in &members[x + 1..] {
                    found.extend(make(&slots, &versions, i, j));
                }
            }
            found
        })
        .collect::<Vec<_>>()
        .into();
    let mut block_of: HashMap<usize, usize> = HashMap::new();
    let mut members: Vec<Vec<usize>> = Vec::with_capacity(block_members.len());
    for (b, m) in block_members.into_iter().enumerate() {
        for &s in &m {
            block_of.insert(s, b);
        }
        members.push(m);
    }

    while let Some(c) = heap.pop() {
        let stale = slots[c.lo_slot].is_none()
            || slots[c.hi_slot].is_none()
            || versions[c.lo_slot] != c.lo_version
            || versions[c.hi_slot] != c.hi_version;
        if stale {
            continue;
        }
        let absorbed = slots[c.hi_slot].take().expect("checked live");
        let keep = slots[c.lo_slot].as_mut().expect("checked live");
        debug_assert!(!keep.shares_paper(&absorbed));
        keep.absorb(absorbed);
        versions[c.lo_slot] += 1;

        let block = &mut members[block_of[&c.lo_slot]];
        block.retain(|&s| s != c.hi_slot);
        for &other in block.iter() {
            if other != c.lo_slot {
                heap.extend(make(&slots, &versions, c.lo_slot, other));
            }
        }
    }

    let mut out: Vec<MentionCluster> = slots.into_iter().flatten().collect();
    out.sort_by_key(|c| c.author_id);
    out
}
