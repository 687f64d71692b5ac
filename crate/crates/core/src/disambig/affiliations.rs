//! Affiliation string similarity and greedy clustering.

use std::collections::HashMap;

use serde::Serialize;
use unicode_normalization::char::is_combining_mark;
use unicode_normalization::UnicodeNormalization;

pub const DEFAULT_AFFILIATION_THRESHOLD: f64 = 0.9;

/// Ratcliff/Obershelp matching ratio `2·M / (|a| + |b|)`, where `M` is the
/// number of characters in recursively found longest common blocks. This is
/// the ratio Python's `difflib.SequenceMatcher` reports with autojunk off.
pub fn sequence_ratio(a: &str, b: &str) -> f64 {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    let total = a.len() + b.len();
    if total == 0 {
        return 1.0;
    }
    2.0 * matching_characters(&a, &b) as f64 / total as f64
}

/// Upper bound on [`sequence_ratio`] from lengths alone.
pub fn real_quick_ratio(a: &str, b: &str) -> f64 {
    let (la, lb) = (a.chars().count(), b.chars().count());
    if la + lb == 0 {
        return 1.0;
    }
    2.0 * la.min(lb) as f64 / (la + lb) as f64
}

/// Upper bound on [`sequence_ratio`] from character multisets.
pub fn quick_ratio(a: &str, b: &str) -> f64 {
    let mut counts: HashMap<char, i64> = HashMap::new();
    for c in b.chars() {
        *counts.entry(c).or_default() += 1;
    }
    let mut matches = 0usize;
    let mut la = 0usize;
    for c in a.chars() {
        la += 1;
        let n = counts.entry(c).or_default();
        if *n > 0 {
            matches += 1;
        }
        *n -= 1;
    }
    let total = la + b.chars().count();
    if total == 0 {
        return 1.0;
    }
    2.0 * matches as f64 / total as f64
}

fn matching_characters(a: &[char], b: &[char]) -> usize {
    let mut b_positions: HashMap<char, Vec<usize>> = HashMap::new();
    for (j, &c) in b.iter().enumerate() {
        b_positions.entry(c).or_default().push(j);
    }
    let mut total = 0;
    let mut stack = vec![(0, a.len(), 0, b.len())];
    while let Some((alo, ahi, blo, bhi)) = stack.pop() {
        let (i, j, k) = longest_match(a, &b_positions, alo, ahi, blo, bhi);
        if k == 0 {
            continue;
        }
        total += k;
        if alo < i && blo < j {
            stack.push((alo, i, blo, j));
        }
        if i + k < ahi && j + k < bhi {
            stack.push((i + k, ahi, j + k, bhi));
        }
    }
    total
}

/// Longest common block in `a[alo..ahi]` × `b[blo..bhi]`; ties go to the
/// smallest `i`, then the smallest `j`.
fn longest_match(
    a: &[char],
    b_positions: &HashMap<char, Vec<usize>>,
    alo: usize,
    ahi: usize,
    blo: usize,
    bhi: usize,
) -> (usize, usize, usize) {
    let (mut best_i, mut best_j, mut best_k) = (alo, blo, 0);
    // run length of the match ending at (i-1, j)
    let mut prev: HashMap<usize, usize> = HashMap::new();
    for (i, c) in a.iter().enumerate().take(ahi).skip(alo) {
        let mut cur = HashMap::new();
        if let Some(positions) = b_positions.get(c) {
            for &j in positions {
                if j < blo {
                    continue;
                }
                if j >= bhi {
                    break;
                }
                let k = j.checked_sub(1).and_then(|p| prev.get(&p)).copied().unwrap_or(0) + 1;
                cur.insert(j, k);
                if k > best_k {
                    best_i = i + 1 - k;
                    best_j = j + 1 - k;
                    best_k = k;
                }
            }
        }
        prev = cur;
    }
    (best_i, best_j, best_k)
}

/// Case-folded, diacritic-free, whitespace-collapsed form used for
/// comparison.
pub fn normalize_affiliation(raw: &str) -> String {
    let folded: String = raw
        .nfkd()
        .filter(|c| !is_combining_mark(*c))
        .flat_map(char::to_lowercase)
        .collect();
    folded.split_whitespace().collect::<Vec<_>>().join(" ")
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AffiliationCluster {
    pub cluster_id: u32,
    /// Raw strings, sorted.
    pub members: Vec<String>,
    /// Normalized text of the first (lexicographically smallest) member.
    pub canonical: String,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct AffiliationClusters {
    clusters: Vec<AffiliationCluster>,
    by_raw: HashMap<String, u32>,
}

impl AffiliationClusters {
    pub fn clusters(&self) -> &[AffiliationCluster] {
        &self.clusters
    }

    pub fn cluster_of(&self, raw: &str) -> Option<u32> {
        self.by_raw.get(raw).copied()
    }

    pub fn len(&self) -> usize {
        self.clusters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clusters.is_empty()
    }
}

/// Processes strings in lexicographic order of their normalized form; each
/// joins the existing cluster whose canonical text is most similar, if that
/// similarity reaches `threshold`, and otherwise founds a new cluster.
pub fn cluster_affiliations<'a, I>(strings: I, threshold: f64) -> AffiliationClusters
where
    I: IntoIterator<Item = &'a str>,
{
    let mut raws: Vec<(String, &str)> =
        strings.into_iter().map(|s| (normalize_affiliation(s), s)).collect();
    raws.sort();
    raws.dedup_by(|a, b| a.1 == b.1);

    let mut out = AffiliationClusters::default();
    let mut by_norm: HashMap<String, u32> = HashMap::new();
    for (norm, raw) in raws {
        let target = by_norm.get(&norm).copied().or_else(|| {
            let mut best: Option<(f64, u32)> = None;
            for c in &out.clusters {
                if real_quick_ratio(&norm, &c.canonical) < threshold
                    || quick_ratio(&norm, &c.canonical) < threshold
                {
                    continue;
                }
                let r = sequence_ratio(&norm, &c.canonical);
                if r >= threshold && best.is_none_or(|(b, _)| r > b) {
                    best = Some((r, c.cluster_id));
                }
            }
            best.map(|(_, id)| id)
        });
        let id = match target {
            Some(id) => {
                out.clusters[id as usize].members.push(raw.to_string());
                id
            }
            None => {
                let id = out.clusters.len() as u32;
                out.clusters.push(AffiliationCluster {
                    cluster_id: id,
                    members: vec![raw.to_string()],
                    canonical: norm.clone(),
                });
                id
            }
        };
        by_norm.insert(norm, id);
        out.by_raw.insert(raw.to_string(), id);
    }
    for c in &mut out.clusters {
        c.members.sort();
    }
    out
}
