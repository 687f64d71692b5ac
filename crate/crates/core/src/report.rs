//! Assembles figure and table files for one or both corpus views.
//!
//! Figures are flat CSV tables with columns `x,y,series`, where `series`
//! names the view (and curve, when a figure has several). Tables are long
//! form CSV. Missing values are written as empty fields.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::Serialize;

use crate::disambig::IdentityMap;
use crate::graph::{build_hybrid, CitationClass, GraphError, HybridGraph};
use crate::ingest::{author_count_histogram, CulledCorpus, IngestError};
use crate::metrics::{
    block_series, class_fractions_per_block, clustering_coefficient, delay_ccdf, fit_exponential, lorenz_and_gini,
    mean_delay_by_class, participation_table, productivity_ccdf, prospective_closure, reciprocity,
    summary_statistics, BlockSeries, BlockStatistic, ClosureResult, ClusteringVariant, Credit, DelayMeans, ExpFit,
    MetricsError, ParticipationRow, ParticipationTable, ReciprocityResult, SummaryStatistics,
};

pub const FIGURES: std::ops::RangeInclusive<u8> = 1..=11;
pub const TABLES: std::ops::RangeInclusive<u8> = 1..=3;
pub const HISTOGRAM_LOG_BIN_START: usize = 10;
pub const HISTOGRAM_BIN_FACTOR: f64 = 2.0;

#[derive(Debug, thiserror::Error)]
pub enum ReportError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Metrics(#[from] MetricsError),
    #[error(transparent)]
    Ingest(#[from] IngestError),
    #[error("unknown {kind} `{value}`; valid: {valid}")]
    UnknownSelection { kind: &'static str, value: String, valid: String },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportOptions {
    pub figures: BTreeSet<u8>,
    pub tables: BTreeSet<u8>,
    /// Views to run, as `include_large` flags.
    pub views: Vec<bool>,
    pub block_width: i32,
}

impl Default for ReportOptions {
    fn default() -> Self {
        Self { figures: FIGURES.collect(), tables: TABLES.collect(), views: vec![true, false], block_width: 5 }
    }
}

/// Parses a comma-separated list such as `1,3,5-7`; an empty string selects
/// nothing.
pub fn parse_selection(kind: &'static str, spec: &str, valid: std::ops::RangeInclusive<u8>) -> Result<BTreeSet<u8>, ReportError> {
    let err = |value: &str| ReportError::UnknownSelection {
        kind,
        value: value.to_string(),
        valid: format!("{}..{}", valid.start(), valid.end()),
    };
    let mut out = BTreeSet::new();
    for part in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (a, b) = part.split_once('-').unwrap_or((part, part));
        let parse = |s: &str| -> Result<u8, ReportError> {
            let s = s.trim();
            let s = s.strip_prefix(kind).unwrap_or(s);
            s.parse::<u8>().ok().filter(|n| valid.contains(n)).ok_or_else(|| err(part))
        };
        let (lo, hi) = (parse(a)?, parse(b)?);
        if lo > hi {
            return Err(err(part));
        }
        out.extend(lo..=hi);
    }
    Ok(out)
}

/// Everything computed for one view.
#[derive(Clone, Debug, Serialize)]
pub struct ViewSummary {
    pub view: String,
    pub statistics: SummaryStatistics,
    pub gini_fractional: Option<f64>,
    pub papers_growth: Option<ExpFit>,
    pub authors_growth: Option<ExpFit>,
    pub clustering_global: Option<f64>,
    pub clustering_mean_local: Option<f64>,
    pub closure: ClosureResult,
    pub reciprocity: ReciprocityResult,
    pub delays: DelayMeans,
    pub participation: ParticipationTable,
    pub citation_class_counts: BTreeMap<CitationClass, usize>,
}

#[derive(Clone, Debug, Default)]
pub struct Bundle {
    /// File name to contents.
    pub files: BTreeMap<String, String>,
    pub summaries: Vec<ViewSummary>,
    pub warnings: Vec<String>,
}

fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

struct Csv {
    text: String,
}

impl Csv {
    fn new(header: &str) -> Self {
        Self { text: format!("{header}\n") }
    }

    fn row(&mut self, fields: &[&dyn std::fmt::Display]) {
        let line: Vec<String> = fields.iter().map(|f| f.to_string()).collect();
        writeln!(self.text, "{}", line.join(",")).unwrap();
    }

    fn series(&mut self, name: &str, s: &BlockSeries) {
        for b in &s.blocks {
            self.row(&[&b.start_year, &opt(b.value), &name]);
        }
    }

    fn points(&mut self, name: &str, pts: &[(f64, f64)]) {
        for (x, y) in pts {
            self.row(&[x, y, &name]);
        }
    }
}

fn growth(series: &BlockSeries) -> Option<ExpFit> {
    // zero blocks at either end of the span carry no growth information
    let positive: Vec<_> = series.blocks.iter().filter(|b| b.value.is_some_and(|v| v > 0.0)).collect();
    let (lo, hi) = (positive.first()?.start_year, positive.last()?.start_year);
    fit_exponential(series, Some((lo, hi))).ok()
}

fn summarize(g: &HybridGraph, width: i32) -> Result<ViewSummary, ReportError> {
    let projection = g.coauthorship_projection(None);
    let counts = g.class_counts();
    Ok(ViewSummary {
        view: g.label().to_string(),
        statistics: summary_statistics(g),
        gini_fractional: lorenz_and_gini(g, Credit::Fractional).ok().map(|x| x.1),
        papers_growth: growth(&block_series(g, BlockStatistic::Papers, width)?),
        authors_growth: growth(&block_series(g, BlockStatistic::UniqueAuthors, width)?),
        clustering_global: clustering_coefficient(&projection, ClusteringVariant::GlobalTransitivity),
        clustering_mean_local: clustering_coefficient(&projection, ClusteringVariant::MeanLocal),
        closure: prospective_closure(g),
        reciprocity: reciprocity(g),
        delays: mean_delay_by_class(g),
        participation: participation_table(g),
        citation_class_counts: CitationClass::ALL.iter().map(|&c| (c, counts[c.index()])).collect(),
    })
}

/// Computes the selected figures and tables for every requested view.
pub fn build_bundle(corpus: &CulledCorpus, identities: &IdentityMap, opts: &ReportOptions) -> Result<Bundle, ReportError> {
    let w = opts.block_width;
    if w < 1 {
        return Err(MetricsError::InvalidWidth(w).into());
    }
    let mut bundle = Bundle::default();
    let mut figs: BTreeMap<u8, Csv> = opts.figures.iter().map(|&f| (f, Csv::new("x,y,series"))).collect();
    let mut table1 = Csv::new("statistic,view,value");
    let mut table2 = Csv::new("citation_type,view,mean_delay_years,citations");
    let mut table3 = Csv::new("citation_type,view,made_percent,received_percent");

    for &include_large in &opts.views {
        let view = corpus.view(include_large);
        let g = build_hybrid(&view, identities)?;
        let v = g.label().to_string();

        for (&f, csv) in figs.iter_mut() {
            match f {
                1 => {
                    for (credit, name) in [(Credit::Whole, "whole"), (Credit::Fractional, "fractional")] {
                        csv.points(&format!("{name}:{v}"), &productivity_ccdf(&g, credit).points);
                    }
                }
                2 => {
                    if let Ok((curve, _)) = lorenz_and_gini(&g, Credit::Fractional) {
                        csv.points(&v, &curve.points);
                    }
                }
                3 => csv.series(&v, &block_series(&g, BlockStatistic::Papers, w)?),
                4 => csv.series(&v, &block_series(&g, BlockStatistic::UniqueAuthors, w)?),
                5 => csv.series(&v, &block_series(&g, BlockStatistic::MeanAuthorsPerPaper, w)?),
                6 => csv.series(&v, &block_series(&g, BlockStatistic::MeanUniqueCoauthorsPerAuthor, w)?),
                7 => {
                    csv.series(&format!("made:{v}"), &block_series(&g, BlockStatistic::MeanCitationsMade, w)?);
                    csv.series(&format!("received:{v}"), &block_series(&g, BlockStatistic::MeanCitationsReceived, w)?);
                }
                8 => {
                    csv.points(&format!("all:{v}"), &delay_ccdf(&g, None).points);
                    for class in CitationClass::ALL {
                        csv.points(&format!("{}:{v}", class.name()), &delay_ccdf(&g, Some(class)).points);
                    }
                }
                9 => {
                    let fractions = class_fractions_per_block(&g, w)?;
                    if fractions.blocks.is_empty() {
                        bundle.warnings.push(format!("fig9 ({v}): no citations, series empty"));
                    }
                    for b in &fractions.blocks {
                        for class in CitationClass::ALL {
                            csv.row(&[&b.start_year, &b.fractions[class.index()], &format!("{}:{v}", class.name())]);
                        }
                    }
                }
                10 => {
                    for bin in prospective_closure(&g).by_shared_count {
                        csv.row(&[&bin.k, &bin.probability, &v]);
                    }
                }
                11 => {
                    if let Ok(h) = author_count_histogram(&view, HISTOGRAM_LOG_BIN_START, HISTOGRAM_BIN_FACTOR) {
                        for b in h.nonzero() {
                            csv.row(&[&b.lo, &b.density(), &v]);
                        }
                    }
                }
                _ => unreachable!("selection validated"),
            }
        }

        let summary = summarize(&g, w)?;
        let s = &summary.statistics;
        for (name, value) in [
            ("total_papers", Some(s.papers as f64)),
            ("total_authors", Some(s.authors as f64)),
            ("authors_per_paper", s.authors_per_paper),
            ("citations_per_paper", s.citations_per_paper),
            ("collaborators_per_author", s.collaborators_per_author),
            ("papers_per_author", s.papers_per_author),
        ] {
            table1.row(&[&name, &v, &opt(value)]);
        }
        for class in CitationClass::ALL {
            let mean = summary.delays.by_class.get(&class).copied();
            let n = summary.delays.counts.get(&class).copied().unwrap_or(0);
            table2.row(&[&class.name(), &v, &opt(mean), &n]);
        }
        table2.row(&[&"all", &v, &opt(summary.delays.overall), &s.citations]);
        for row in ParticipationRow::ALL {
            let p = &summary.participation;
            table3.row(&[&row.name(), &v, &opt(p.made_percent(row)), &opt(p.received_percent(row))]);
        }
        bundle.summaries.push(summary);
    }

    for (f, csv) in figs {
        bundle.files.insert(format!("fig{f}.csv"), csv.text);
    }
    for (t, csv) in [(1, table1), (2, table2), (3, table3)] {
        if opts.tables.contains(&t) {
            bundle.files.insert(format!("table{t}.csv"), csv.text);
        }
    }
    Ok(bundle)
}
