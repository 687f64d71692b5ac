use std::collections::{BTreeMap, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use super::MetricsError;
use crate::graph::HybridGraph;

/// First year of the block containing `year`; blocks are aligned so that
/// their start is a multiple of `width`.
pub fn block_start(year: i32, width: i32) -> i32 {
    year - year.rem_euclid(width)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Block {
    pub start_year: i32,
    /// `None` where a mean has no members to average over.
    pub value: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlockSeries {
    pub block_width_years: i32,
    /// Contiguous blocks in ascending order.
    pub blocks: Vec<Block>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BlockStatistic {
    Papers,
    UniqueAuthors,
    MeanAuthorsPerPaper,
    /// Per author publishing in the block, the number of distinct coauthors
    /// on their papers in that block; averaged over those authors.
    MeanUniqueCoauthorsPerAuthor,
    /// Outgoing citations per paper, by the citing paper's block.
    MeanCitationsMade,
    /// Incoming citations per paper, by the cited paper's block.
    MeanCitationsReceived,
}

impl BlockStatistic {
    pub const ALL: [BlockStatistic; 6] = [
        BlockStatistic::Papers,
        BlockStatistic::UniqueAuthors,
        BlockStatistic::MeanAuthorsPerPaper,
        BlockStatistic::MeanUniqueCoauthorsPerAuthor,
        BlockStatistic::MeanCitationsMade,
        BlockStatistic::MeanCitationsReceived,
    ];
}

pub(crate) fn check_width(width: i32) -> Result<(), MetricsError> {
    if width < 1 {
        return Err(MetricsError::InvalidWidth(width));
    }
    Ok(())
}

pub fn block_series(g: &HybridGraph, statistic: BlockStatistic, width: i32) -> Result<BlockSeries, MetricsError> {
    check_width(width)?;
    let mut by_block: BTreeMap<i32, Vec<u32>> = BTreeMap::new();
    for (i, p) in g.papers().iter().enumerate() {
        by_block.entry(block_start(p.date.get_year(), width)).or_default().push(i as u32);
    }
    let (Some(&first), Some(&last)) = (by_block.keys().next(), by_block.keys().next_back()) else {
        return Ok(BlockSeries { block_width_years: width, blocks: vec![] });
    };

    let mean = |num: f64, den: usize| if den == 0 { None } else { Some(num / den as f64) };
    let value = |papers: &[u32]| -> Option<f64> {
        match statistic {
            BlockStatistic::Papers => Some(papers.len() as f64),
            BlockStatistic::UniqueAuthors => {
                let authors: HashSet<u32> = papers.iter().flat_map(|&p| g.paper(p).authors.iter().copied()).collect();
                Some(authors.len() as f64)
            }
            BlockStatistic::MeanAuthorsPerPaper => {
                mean(papers.iter().map(|&p| g.paper(p).authors.len() as f64).sum(), papers.len())
            }
            BlockStatistic::MeanUniqueCoauthorsPerAuthor => {
                let mut coauthors: HashMap<u32, HashSet<u32>> = HashMap::new();
                for &p in papers {
                    let byline = &g.paper(p).authors;
                    for &a in byline {
                        coauthors.entry(a).or_default().extend(byline.iter().filter(|&&b| b != a));
                    }
                }
                mean(coauthors.values().map(|s| s.len() as f64).sum(), coauthors.len())
            }
            BlockStatistic::MeanCitationsMade => {
                mean(papers.iter().map(|&p| g.outgoing(p).len() as f64).sum(), papers.len())
            }
            BlockStatistic::MeanCitationsReceived => {
                mean(papers.iter().map(|&p| g.incoming(p).len() as f64).sum(), papers.len())
            }
        }
    };

    let blocks = (first..=last)
        .step_by(width as usize)
        .map(|start| {
            let papers = by_block.get(&start).map(Vec::as_slice).unwrap_or(&[]);
            let v = match (statistic, papers.is_empty()) {
                (BlockStatistic::Papers | BlockStatistic::UniqueAuthors, true) => Some(0.0),
                (_, true) => None,
                _ => value(papers),
            };
            Block { start_year: start, value: v }
        })
        .collect();
    Ok(BlockSeries { block_width_years: width, blocks })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExpFit {
    pub rate_per_year: f64,
    /// `ln 2 / rate`; absent when the series is not growing.
    pub doubling_time_years: Option<f64>,
    pub r_squared: f64,
    pub intercept: f64,
    pub points: usize,
}

/// Rates at or below this are treated as no growth.
const MIN_GROWTH_RATE: f64 = 1e-12;

/// Least-squares line through `(block midpoint, ln value)`. `range` keeps
/// blocks whose start year lies in the closed interval.
pub fn fit_exponential(series: &BlockSeries, range: Option<(i32, i32)>) -> Result<ExpFit, MetricsError> {
    let half = series.block_width_years as f64 / 2.0;
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for b in &series.blocks {
        if range.is_some_and(|(lo, hi)| b.start_year < lo || b.start_year > hi) {
            continue;
        }
        match b.value {
            Some(v) if v > 0.0 => {
                xs.push(b.start_year as f64 + half);
                ys.push(v.ln());
            }
            _ => return Err(MetricsError::NonPositive { start_year: b.start_year }),
        }
    }
    if xs.len() < 2 {
        return Err(MetricsError::TooFewPoints(xs.len()));
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let r_squared = if syy == 0.0 { 1.0 } else { (sxy * sxy) / (sxx * syy) };
    Ok(ExpFit {
        rate_per_year: slope,
        doubling_time_years: (slope > MIN_GROWTH_RATE).then(|| std::f64::consts::LN_2 / slope),
        r_squared,
        intercept,
        points: xs.len(),
    })
}
