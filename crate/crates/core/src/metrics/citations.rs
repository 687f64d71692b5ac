use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::blocks::{block_start, check_width};
use super::{Block, BlockSeries, Ccdf, MetricsError, TIE_EPS};
use crate::graph::{Citation, CitationClass, HybridGraph};

fn delay(g: &HybridGraph, c: &Citation) -> f64 {
    g.paper(c.citing).date.years_since(&g.paper(c.cited).date)
}

fn selected<'a>(g: &'a HybridGraph, class: Option<CitationClass>) -> impl Iterator<Item = &'a Citation> + 'a {
    g.citations().iter().filter(move |c| class.is_none_or(|k| c.class == k))
}

/// Fraction of citations (optionally of one class) whose delay exceeds each
/// whole number of years, from 0 up to the first threshold no delay exceeds.
pub fn delay_ccdf(g: &HybridGraph, class: Option<CitationClass>) -> Ccdf {
    let mut delays: Vec<f64> = selected(g, class).map(|c| delay(g, c)).collect();
    if delays.is_empty() {
        return Ccdf::default();
    }
    delays.sort_by(f64::total_cmp);
    let n = delays.len() as f64;
    let top = delays[delays.len() - 1].max(0.0).ceil() as i64;
    let points = (0..=top)
        .map(|x| {
            let not_above = delays.partition_point(|&d| d <= x as f64 + TIE_EPS);
            (x as f64, (delays.len() - not_above) as f64 / n)
        })
        .collect();
    Ccdf { points }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct DelayMeans {
    /// Classes without citations are absent.
    pub by_class: BTreeMap<CitationClass, f64>,
    pub overall: Option<f64>,
    pub counts: BTreeMap<CitationClass, usize>,
}

pub fn mean_delay_by_class(g: &HybridGraph) -> DelayMeans {
    let mut sums = [0.0; 3];
    let mut counts = [0usize; 3];
    for c in g.citations() {
        sums[c.class.index()] += delay(g, c);
        counts[c.class.index()] += 1;
    }
    let total: usize = counts.iter().sum();
    let mut out = DelayMeans {
        overall: (total > 0).then(|| sums.iter().sum::<f64>() / total as f64),
        ..Default::default()
    };
    for class in CitationClass::ALL {
        let i = class.index();
        if counts[i] > 0 {
            out.by_class.insert(class, sums[i] / counts[i] as f64);
            out.counts.insert(class, counts[i]);
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassFractionBlock {
    pub start_year: i32,
    /// Indexed by [`CitationClass::index`].
    pub counts: [usize; 3],
    pub fractions: [f64; 3],
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassFractions {
    pub block_width_years: i32,
    /// Only blocks in which at least one citation was made.
    pub blocks: Vec<ClassFractionBlock>,
}

impl ClassFractions {
    /// One contiguous series per class, with `None` for blocks without
    /// citations.
    pub fn to_series(&self) -> [BlockSeries; 3] {
        let w = self.block_width_years;
        let starts: Vec<i32> = match (self.blocks.first(), self.blocks.last()) {
            (Some(a), Some(b)) => (a.start_year..=b.start_year).step_by(w as usize).collect(),
            _ => vec![],
        };
        let by_start: BTreeMap<i32, &ClassFractionBlock> = self.blocks.iter().map(|b| (b.start_year, b)).collect();
        CitationClass::ALL.map(|class| BlockSeries {
            block_width_years: w,
            blocks: starts
                .iter()
                .map(|&s| Block { start_year: s, value: by_start.get(&s).map(|b| b.fractions[class.index()]) })
                .collect(),
        })
    }
}

/// Share of each class among citations made in a block, by the citing
/// paper's year.
pub fn class_fractions_per_block(g: &HybridGraph, width: i32) -> Result<ClassFractions, MetricsError> {
    check_width(width)?;
    let mut counts: BTreeMap<i32, [usize; 3]> = BTreeMap::new();
    for c in g.citations() {
        let start = block_start(g.paper(c.citing).date.get_year(), width);
        counts.entry(start).or_default()[c.class.index()] += 1;
    }
    let blocks = counts
        .into_iter()
        .map(|(start_year, counts)| {
            let total: usize = counts.iter().sum();
            ClassFractionBlock { start_year, counts, fractions: counts.map(|n| n as f64 / total as f64) }
        })
        .collect();
    Ok(ClassFractions { block_width_years: width, blocks })
}
