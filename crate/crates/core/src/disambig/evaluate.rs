use std::collections::HashMap;
use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use super::identity::{IdentityMap, MentionId};
use super::DisambigError;

/// Ground-truth author label per mention.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GoldLabels {
    labels: HashMap<MentionId, String>,
}

#[derive(Serialize, Deserialize)]
struct GoldLine {
    paper: String,
    index: usize,
    author: String,
}

impl GoldLabels {
    pub fn insert(&mut self, mention: MentionId, label: impl Into<String>) {
        self.labels.insert(mention, label.into());
    }

    pub fn get(&self, mention: &MentionId) -> Option<&str> {
        self.labels.get(mention).map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&MentionId, &str)> {
        self.labels.iter().map(|(m, l)| (m, l.as_str()))
    }

    /// The gold partition as an identity map, ordered by mention.
    pub fn to_identity_map(&self) -> IdentityMap {
        let mut sorted: Vec<(&MentionId, &str)> = self.iter().collect();
        sorted.sort();
        IdentityMap::from_labels(sorted.into_iter().map(|(m, l)| (m.clone(), l)))
    }

    /// One `{"paper":..,"index":..,"author":..}` object per line, sorted by
    /// mention.
    pub fn write_jsonl<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        let mut sorted: Vec<_> = self.labels.iter().collect();
        sorted.sort();
        for (m, label) in sorted {
            let line = GoldLine { paper: m.paper_id.clone(), index: m.index, author: label.clone() };
            serde_json::to_writer(&mut out, &line)?;
            out.write_all(b"\n")?;
        }
        out.flush()
    }

    pub fn read_jsonl<R: BufRead>(input: R) -> Result<Self, DisambigError> {
        let mut gold = GoldLabels::default();
        for (i, line) in input.lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let g: GoldLine = serde_json::from_str(&line)
                .map_err(|e| DisambigError::Format { line: i + 1, message: e.to_string() })?;
            gold.insert(MentionId::new(g.paper, g.index), g.author);
        }
        Ok(gold)
    }
}

/// Pairwise error rates over all unordered mention pairs of the predicted
/// map: false positives are predicted-same pairs that are gold-different,
/// false negatives are gold-same pairs predicted different.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DisambigEvaluation {
    pub false_positive_rate: f64,
    pub false_negative_rate: f64,
    pub predicted_same_pairs: u64,
    pub gold_same_pairs: u64,
    pub agreeing_same_pairs: u64,
    pub mentions: usize,
}

fn pairs(n: u64) -> u64 {
    n * n.saturating_sub(1) / 2
}

/// Counts pairs through the predicted × gold contingency table, so the cost
/// is linear in the number of mentions.
pub fn evaluate(predicted: &IdentityMap, gold: &GoldLabels) -> Result<DisambigEvaluation, DisambigError> {
    let mut gold_sizes: HashMap<&str, u64> = HashMap::new();
    let mut cells: HashMap<(usize, &str), u64> = HashMap::new();
    let mut predicted_same = 0;
    let mut mentions = 0;
    for (pi, author) in predicted.authors.iter().enumerate() {
        predicted_same += pairs(author.mentions.len() as u64);
        for m in &author.mentions {
            let label = gold.get(m).ok_or_else(|| DisambigError::MissingGold {
                paper_id: m.paper_id.clone(),
                index: m.index,
            })?;
            *gold_sizes.entry(label).or_default() += 1;
            *cells.entry((pi, label)).or_default() += 1;
            mentions += 1;
        }
    }
    let gold_same: u64 = gold_sizes.values().map(|&n| pairs(n)).sum();
    let agreeing: u64 = cells.values().map(|&n| pairs(n)).sum();
    let rate = |num: u64, den: u64| if den == 0 { 0.0 } else { num as f64 / den as f64 };
    Ok(DisambigEvaluation {
        false_positive_rate: rate(predicted_same - agreeing, predicted_same),
        false_negative_rate: rate(gold_same - agreeing, gold_same),
        predicted_same_pairs: predicted_same,
        gold_same_pairs: gold_same,
        agreeing_same_pairs: agreeing,
        mentions,
    })
}
