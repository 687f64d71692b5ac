//! Corpus ingestion: newline-delimited paper records, culling and views.
//!
//! One JSON object per line:
//!
//! ```text
//! {"id":"p1","title":"...","date":"1993-04-01","journal":"PR",
//!  "authors":[{"name":"J. Smith","affils":["Univ. of Michigan"]}],"cites":["p0"]}
//! ```

use std::collections::{HashMap, HashSet};
use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::date::PubDate;

pub const DEFAULT_LARGE_PAPER_THRESHOLD: usize = 50;
pub const DEFAULT_YEAR_RANGE: (i32, i32) = (1800, 2100);

#[derive(Debug, thiserror::Error)]
pub enum IngestError {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("line {line}: malformed record: {message}")]
    Malformed { line: usize, message: String },
    #[error("line {line}: duplicate paper id `{id}`")]
    DuplicateId { line: usize, id: String },
    #[error("line {line}: year {year} outside valid range {min}..={max}")]
    YearOutOfRange { line: usize, year: i32, min: i32, max: i32 },
    #[error("line {line}: author mention {index} has an empty name")]
    EmptyName { line: usize, index: usize },
    #[error("empty corpus")]
    EmptyCorpus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuthorMention {
    #[serde(rename = "name")]
    pub raw_name: String,
    #[serde(rename = "affils", default)]
    pub affiliations: Vec<String>,
}

impl AuthorMention {
    pub fn new(raw_name: impl Into<String>, affiliations: &[&str]) -> Self {
        Self {
            raw_name: raw_name.into(),
            affiliations: affiliations.iter().map(|s| s.to_string()).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PaperRecord {
    pub id: String,
    pub title: String,
    #[serde(rename = "date")]
    pub pub_date: PubDate,
    pub journal: String,
    #[serde(rename = "authors")]
    pub mentions: Vec<AuthorMention>,
    #[serde(rename = "cites")]
    pub cited_ids: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DanglingCitation {
    pub paper_id: String,
    pub cited_id: String,
}

#[derive(Clone, Copy, Debug)]
pub struct ParseOptions {
    pub year_range: (i32, i32),
}

impl Default for ParseOptions {
    fn default() -> Self {
        Self { year_range: DEFAULT_YEAR_RANGE }
    }
}

/// A parsed but not yet culled corpus.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct RawCorpus {
    pub papers: Vec<PaperRecord>,
    pub dangling: Vec<DanglingCitation>,
}

impl RawCorpus {
    /// Builds a corpus from in-memory records, enforcing id uniqueness and
    /// flagging dangling citations.
    pub fn from_papers(papers: Vec<PaperRecord>) -> Result<Self, IngestError> {
        let mut seen = HashSet::with_capacity(papers.len());
        for (i, p) in papers.iter().enumerate() {
            if !seen.insert(p.id.as_str()) {
                return Err(IngestError::DuplicateId { line: i + 1, id: p.id.clone() });
            }
        }
        let dangling = find_dangling(&papers, &seen);
        Ok(Self { papers, dangling })
    }

    pub fn len(&self) -> usize {
        self.papers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.papers.is_empty()
    }

    pub fn write_jsonl<W: Write>(&self, out: W) -> std::io::Result<()> {
        write_records(&self.papers, out)
    }
}

fn find_dangling(papers: &[PaperRecord], ids: &HashSet<&str>) -> Vec<DanglingCitation> {
    papers
        .iter()
        .flat_map(|p| {
            p.cited_ids.iter().filter(|c| !ids.contains(c.as_str())).map(|c| DanglingCitation {
                paper_id: p.id.clone(),
                cited_id: c.clone(),
            })
        })
        .collect()
}

pub fn write_records<W: Write>(papers: &[PaperRecord], mut out: W) -> std::io::Result<()> {
    for p in papers {
        serde_json::to_writer(&mut out, p)?;
        out.write_all(b"\n")?;
    }
    out.flush()
}

/// Parses a newline-delimited corpus. Blank lines are skipped.
pub fn parse_corpus<R: BufRead>(input: R, opts: &ParseOptions) -> Result<RawCorpus, IngestError> {
    let mut papers = Vec::new();
    let mut lines_by_id: HashMap<String, usize> = HashMap::new();
    let (min, max) = opts.year_range;

    for (i, line) in input.lines().enumerate() {
        let line_no = i + 1;
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let record: PaperRecord = serde_json::from_str(&line).map_err(|e| IngestError::Malformed {
            line: line_no,
            message: e.to_string(),
        })?;
        let year = record.pub_date.get_year();
        if year < min || year > max {
            return Err(IngestError::YearOutOfRange { line: line_no, year, min, max });
        }
        if let Some(index) = record.mentions.iter().position(|m| m.raw_name.trim().is_empty()) {
            return Err(IngestError::EmptyName { line: line_no, index });
        }
        if lines_by_id.insert(record.id.clone(), line_no).is_some() {
            return Err(IngestError::DuplicateId { line: line_no, id: record.id });
        }
        papers.push(record);
    }

    let ids: HashSet<&str> = papers.iter().map(|p| p.id.as_str()).collect();
    let dangling = find_dangling(&papers, &ids);
    Ok(RawCorpus { papers, dangling })
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CullReport {
    pub removed_authorless: usize,
    pub removed_self_loops: usize,
    pub removed_acausal: usize,
    pub collapsed_duplicate_citations: usize,
    pub removed_dangling: usize,
    pub flagged_large_papers: usize,
}

impl CullReport {
    /// Total records and edges removed; flags are not removals.
    pub fn removals(&self) -> usize {
        self.removed_authorless
            + self.removed_self_loops
            + self.removed_acausal
            + self.collapsed_duplicate_citations
            + self.removed_dangling
    }
}

/// A corpus satisfying every culling invariant. Large papers are kept and
/// flagged; [`CorpusView`] decides whether they participate.
#[derive(Clone, Debug, PartialEq)]
pub struct CulledCorpus {
    papers: Vec<PaperRecord>,
    large: Vec<bool>,
    large_threshold: usize,
}

impl CulledCorpus {
    pub fn papers(&self) -> &[PaperRecord] {
        &self.papers
    }

    pub fn len(&self) -> usize {
        self.papers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.papers.is_empty()
    }

    pub fn large_threshold(&self) -> usize {
        self.large_threshold
    }

    pub fn is_large(&self, index: usize) -> bool {
        self.large[index]
    }

    pub fn large_count(&self) -> usize {
        self.large.iter().filter(|&&b| b).count()
    }

    pub fn view(&self, include_large: bool) -> CorpusView<'_> {
        split_view(self, include_large)
    }

    pub fn into_raw(self) -> RawCorpus {
        RawCorpus { papers: self.papers, dangling: Vec::new() }
    }

    pub fn write_jsonl<W: Write>(&self, out: W) -> std::io::Result<()> {
        write_records(&self.papers, out)
    }
}

/// Applies the culling rules: authorless papers are dropped, then each
/// bibliography loses self-citations, repeated ids, ids outside the corpus
/// and citations to papers dated after the citing paper (in that order of
/// precedence). Citations between coinciding dates are kept.
pub fn cull(raw: RawCorpus, large_paper_threshold: usize) -> (CulledCorpus, CullReport) {
    let mut report = CullReport::default();
    let mut papers: Vec<PaperRecord> = Vec::with_capacity(raw.papers.len());
    for p in raw.papers {
        if p.mentions.is_empty() {
            report.removed_authorless += 1;
        } else {
            papers.push(p);
        }
    }

    let dates: HashMap<String, PubDate> =
        papers.iter().map(|p| (p.id.clone(), p.pub_date)).collect();

    for p in &mut papers {
        let mut seen: HashSet<&str> = HashSet::with_capacity(p.cited_ids.len());
        let mut kept = Vec::with_capacity(p.cited_ids.len());
        for cited in &p.cited_ids {
            if *cited == p.id {
                report.removed_self_loops += 1;
                continue;
            }
            if !seen.insert(cited.as_str()) {
                report.collapsed_duplicate_citations += 1;
                continue;
            }
            match dates.get(cited) {
                None => report.removed_dangling += 1,
                Some(cited_date) if p.pub_date.precedes(cited_date) => report.removed_acausal += 1,
                Some(_) => kept.push(cited.clone()),
            }
        }
        drop(seen);
        p.cited_ids = kept;
    }

    let large: Vec<bool> = papers.iter().map(|p| p.mentions.len() >= large_paper_threshold).collect();
    report.flagged_large_papers = large.iter().filter(|&&b| b).count();
    (CulledCorpus { papers, large, large_threshold: large_paper_threshold }, report)
}

/// A read-only selection of a culled corpus.
#[derive(Clone, Debug)]
pub struct CorpusView<'a> {
    corpus: &'a CulledCorpus,
    include_large: bool,
    indices: Vec<usize>,
}

pub fn split_view(corpus: &CulledCorpus, include_large: bool) -> CorpusView<'_> {
    let indices = (0..corpus.len()).filter(|&i| include_large || !corpus.large[i]).collect();
    CorpusView { corpus, include_large, indices }
}

impl<'a> CorpusView<'a> {
    pub fn papers(&self) -> impl ExactSizeIterator<Item = &'a PaperRecord> + '_ {
        self.indices.iter().map(move |&i| &self.corpus.papers[i])
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn include_large(&self) -> bool {
        self.include_large
    }

    pub fn corpus(&self) -> &'a CulledCorpus {
        self.corpus
    }

    pub fn label(&self) -> &'static str {
        if self.include_large {
            "with_large"
        } else {
            "without_large"
        }
    }

    pub fn mean_authors_per_paper(&self) -> f64 {
        if self.is_empty() {
            return 0.0;
        }
        self.papers().map(|p| p.mentions.len()).sum::<usize>() as f64 / self.len() as f64
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HistogramBin {
    /// Inclusive lower author count.
    pub lo: usize,
    /// Exclusive upper author count.
    pub hi: usize,
    pub count: usize,
}

impl HistogramBin {
    pub fn width(&self) -> usize {
        self.hi - self.lo
    }

    /// Papers per unit author count, for plotting log-binned data.
    pub fn density(&self) -> f64 {
        self.count as f64 / self.width() as f64
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AuthorCountHistogram {
    pub log_bin_start: usize,
    pub factor: f64,
    pub bins: Vec<HistogramBin>,
}

impl AuthorCountHistogram {
    pub fn total(&self) -> usize {
        self.bins.iter().map(|b| b.count).sum()
    }

    pub fn nonzero(&self) -> impl Iterator<Item = &HistogramBin> {
        self.bins.iter().filter(|b| b.count > 0)
    }
}

/// Exact bins of width one below `log_bin_start`, then bins whose width grows
/// by `factor`. Bins run contiguously from one author up to the bin holding
/// the largest byline; empty bins are kept.
pub fn author_count_histogram(
    view: &CorpusView<'_>,
    log_bin_start: usize,
    factor: f64,
) -> Result<AuthorCountHistogram, IngestError> {
    if view.is_empty() {
        return Err(IngestError::EmptyCorpus);
    }
    let sizes: Vec<usize> = view.papers().map(|p| p.mentions.len()).collect();
    let max = *sizes.iter().max().expect("non-empty");
    let start = log_bin_start.max(1);

    let mut bins = Vec::new();
    let mut lo = 1;
    while lo <= max {
        let hi = if lo < start {
            lo + 1
        } else {
            ((lo as f64 * factor).ceil() as usize).max(lo + 1)
        };
        bins.push(HistogramBin { lo, hi, count: 0 });
        lo = hi;
    }
    for s in sizes {
        // bins are sorted and contiguous from 1
        let idx = bins.partition_point(|b| b.hi <= s);
        bins[idx].count += 1;
    }
    Ok(AuthorCountHistogram { log_bin_start: start, factor, bins })
}
