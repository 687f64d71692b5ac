use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use super::merge::{MentionCluster, MentionTable};
use super::DisambigError;
use crate::ingest::CorpusView;

/// A mention addressed by paper id and byline position.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MentionId {
    pub paper_id: String,
    pub index: usize,
}

impl MentionId {
    pub fn new(paper_id: impl Into<String>, index: usize) -> Self {
        Self { paper_id: paper_id.into(), index }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityEntry {
    pub id: String,
    /// Normalized name variants, for auditing.
    #[serde(default)]
    pub names: Vec<String>,
    pub mentions: Vec<MentionId>,
}

/// Resolved author identities: each entry owns a disjoint set of mentions.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityMap {
    pub authors: Vec<IdentityEntry>,
}

pub(crate) fn format_author_id(n: usize) -> String {
    format!("A{n:06}")
}

impl IdentityMap {
    pub fn from_clusters(table: &MentionTable, clusters: &[MentionCluster]) -> Self {
        let mut ordered: Vec<&MentionCluster> = clusters.iter().collect();
        ordered.sort_by_key(|c| c.mentions.first().copied());
        let authors = ordered
            .into_iter()
            .enumerate()
            .map(|(i, c)| IdentityEntry {
                id: format_author_id(i + 1),
                names: c.name_keys.iter().map(|k| k.full()).collect(),
                mentions: c
                    .mentions
                    .iter()
                    .map(|m| MentionId::new(table.paper_id(m.paper), m.slot as usize))
                    .collect(),
            })
            .collect();
        Self { authors }
    }

    /// One identity per distinct raw name string.
    pub fn by_raw_name(view: &CorpusView<'_>) -> Self {
        let mut groups: BTreeMap<&str, Vec<MentionId>> = BTreeMap::new();
        let mut first_seen: Vec<&str> = Vec::new();
        for p in view.papers() {
            for (i, m) in p.mentions.iter().enumerate() {
                let name = m.raw_name.trim();
                let entry = groups.entry(name).or_default();
                if entry.is_empty() {
                    first_seen.push(name);
                }
                entry.push(MentionId::new(p.id.clone(), i));
            }
        }
        let authors = first_seen
            .into_iter()
            .enumerate()
            .map(|(i, name)| IdentityEntry {
                id: format_author_id(i + 1),
                names: vec![name.to_string()],
                mentions: groups.remove(name).unwrap_or_default(),
            })
            .collect();
        Self { authors }
    }

    /// Builds a map from explicit labels, one identity per distinct label in
    /// first-seen order.
    pub fn from_labels<'a, I>(labels: I) -> Self
    where
        I: IntoIterator<Item = (MentionId, &'a str)>,
    {
        let mut index: HashMap<&str, usize> = HashMap::new();
        let mut authors: Vec<IdentityEntry> = Vec::new();
        for (mention, label) in labels {
            let i = *index.entry(label).or_insert_with(|| {
                authors.push(IdentityEntry { id: label.to_string(), names: vec![], mentions: vec![] });
                authors.len() - 1
            });
            authors[i].mentions.push(mention);
        }
        Self { authors }
    }

    pub fn len(&self) -> usize {
        self.authors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.authors.is_empty()
    }

    pub fn mention_count(&self) -> usize {
        self.authors.iter().map(|a| a.mentions.len()).sum()
    }

    /// Mention → position of its identity in `authors`.
    pub fn lookup(&self) -> HashMap<&MentionId, usize> {
        let mut out = HashMap::with_capacity(self.mention_count());
        for (i, a) in self.authors.iter().enumerate() {
            for m in &a.mentions {
                out.insert(m, i);
            }
        }
        out
    }

    /// Partition of mentions, independent of id naming and ordering.
    pub fn partition(&self) -> BTreeSet<BTreeSet<MentionId>> {
        self.authors.iter().map(|a| a.mentions.iter().cloned().collect()).collect()
    }

    pub fn write_json<W: Write>(&self, out: W) -> Result<(), DisambigError> {
        serde_json::to_writer_pretty(out, self)
            .map_err(|e| DisambigError::Format { line: 0, message: e.to_string() })
    }

    pub fn read_json<R: Read>(input: R) -> Result<Self, DisambigError> {
        let map: IdentityMap = serde_json::from_reader(input).map_err(|e| DisambigError::Format {
            line: e.line(),
            message: e.to_string(),
        })?;
        let mut seen = BTreeSet::new();
        for a in &map.authors {
            for m in &a.mentions {
                if !seen.insert(m) {
                    return Err(DisambigError::Format {
                        line: 0,
                        message: format!("mention ({}, {}) assigned twice", m.paper_id, m.index),
                    });
                }
            }
        }
        Ok(map)
    }
}
