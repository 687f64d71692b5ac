#![allow(dead_code)]

pub mod oracle;

use bibnet_core::graph::HybridGraph;
use bibnet_core::ingest::{AuthorMention, CulledCorpus, PaperRecord};
use bibnet_core::metrics::*;
use bibnet_core::synthgen::GroupSizeDistribution;
use bibnet_core::{build_hybrid, cull, generate, CitationClass, GenConfig, IdentityMap, RawCorpus};

use oracle::{Net, EPS};

/// Small corpora (at most 200 papers) with parameters varied by seed. Large
/// papers are flagged at 5 authors so both views differ.
pub fn small_config(seed: u64) -> GenConfig {
    let s = seed as f64;
    GenConfig {
        seed,
        start_year: 1980,
        end_year: 1999,
        initial_papers_per_year: 2.0 + (seed % 3) as f64,
        papers_growth_rate: 0.05,
        group_size: GroupSizeDistribution { exponent: 1.5 + (seed % 4) as f64 * 0.5, cutoff: 8 },
        author_population: 60 + (seed as usize % 5) * 40,
        new_author_probability: 0.2 + 0.1 * (seed % 3) as f64,
        repeat_coauthor_probability: 0.3 + 0.1 * (s % 4.0),
        mean_references: 2.0 + (seed % 5) as f64,
        aging_halflife_years: if seed.is_multiple_of(2) { Some(5.0) } else { None },
        self_cite_propensity: 0.1 + 0.05 * (seed % 3) as f64,
        coauthor_cite_propensity: 0.1,
        ..GenConfig::default()
    }
}

pub const SMALL_LARGE_THRESHOLD: usize = 5;

pub struct Fixture {
    pub corpus: CulledCorpus,
    pub identities: IdentityMap,
}

impl Fixture {
    pub fn graph(&self, include_large: bool) -> HybridGraph {
        build_hybrid(&self.corpus.view(include_large), &self.identities).unwrap()
    }

    pub fn net(&self, include_large: bool) -> Net {
        Net::new(&self.corpus.view(include_large), &self.identities)
    }
}

/// Generated corpus with gold identities.
pub fn small_fixture(seed: u64) -> Fixture {
    let gc = generate(&small_config(seed)).unwrap();
    assert!(gc.corpus.len() <= 200, "{} papers", gc.corpus.len());
    let identities = gc.gold.to_identity_map();
    let (corpus, _) = cull(gc.corpus, SMALL_LARGE_THRESHOLD);
    Fixture { corpus, identities }
}

pub fn paper(id: &str, date: &str, authors: &[&str], cites: &[&str]) -> PaperRecord {
    PaperRecord {
        id: id.into(),
        title: String::new(),
        pub_date: date.parse().unwrap(),
        journal: "PR".into(),
        mentions: authors.iter().map(|a| AuthorMention::new(*a, &["Univ"])).collect(),
        cited_ids: cites.iter().map(|s| s.to_string()).collect(),
    }
}

/// Hand-built corpus where each raw name is one author.
pub fn fixture(papers: Vec<PaperRecord>) -> Fixture {
    let (corpus, _) = cull(RawCorpus::from_papers(papers).unwrap(), 50);
    let identities = IdentityMap::by_raw_name(&corpus.view(true));
    Fixture { corpus, identities }
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= EPS
}

fn same_points(what: &str, got: &[(f64, f64)], want: &[(f64, f64)]) -> Result<(), String> {
    if got.len() != want.len() {
        return Err(format!("{what}: {} points, oracle {}", got.len(), want.len()));
    }
    for (i, (g, w)) in got.iter().zip(want).enumerate() {
        if !close(g.0, w.0) || !close(g.1, w.1) {
            return Err(format!("{what}: point {i} is {g:?}, oracle {w:?}"));
        }
    }
    Ok(())
}

fn same_opt(what: &str, got: Option<f64>, want: Option<f64>) -> Result<(), String> {
    match (got, want) {
        (None, None) => Ok(()),
        (Some(g), Some(w)) if close(g, w) => Ok(()),
        _ => Err(format!("{what}: {got:?}, oracle {want:?}")),
    }
}

fn same<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: {got:?}, oracle {want:?}"))
    }
}

/// Every metric on `g` against the brute-force oracle on `net`.
pub fn compare_with_oracle(g: &HybridGraph, net: &Net, width: i32) -> Result<(), String> {
    let counts = g.class_counts();
    same("class counts", counts, net.class_counts())?;

    same_points("whole ccdf", &productivity_ccdf(g, Credit::Whole).points, &net.productivity_ccdf(false))?;
    same_points("fractional ccdf", &productivity_ccdf(g, Credit::Fractional).points, &net.productivity_ccdf(true))?;

    let (curve, gini) = lorenz_and_gini(g, Credit::Fractional).map_err(|e| e.to_string())?;
    let (ocurve, ogini) = net.lorenz_gini();
    same_points("lorenz", &curve.points, &ocurve)?;
    same_opt("gini", Some(gini), Some(ogini))?;

    for (i, stat) in BlockStatistic::ALL.into_iter().enumerate() {
        let s = block_series(g, stat, width).map_err(|e| e.to_string())?;
        let want = net.block_series(i, width);
        same(&format!("{stat:?} block count"), s.blocks.len(), want.len())?;
        for (b, (start, v)) in s.blocks.iter().zip(want) {
            same(&format!("{stat:?} start"), b.start_year, start)?;
            same_opt(&format!("{stat:?} block {start}"), b.value, v)?;
        }
    }

    same_points("delay ccdf all", &delay_ccdf(g, None).points, &net.delay_ccdf(None))?;
    for class in CitationClass::ALL {
        same_points(&format!("delay ccdf {class:?}"), &delay_ccdf(g, Some(class)).points, &net.delay_ccdf(Some(class)))?;
    }

    let means = mean_delay_by_class(g);
    let (omeans, overall) = net.mean_delays();
    same_opt("overall delay", means.overall, overall)?;
    for class in CitationClass::ALL {
        same_opt(&format!("{class:?} delay"), means.by_class.get(&class).copied(), omeans[class.index()])?;
    }

    let fr = class_fractions_per_block(g, width).map_err(|e| e.to_string())?;
    let ofr = net.class_fractions(width);
    same("fraction blocks", fr.blocks.len(), ofr.len())?;
    for (b, (start, f)) in fr.blocks.iter().zip(ofr) {
        same("fraction start", b.start_year, start)?;
        for (&x, y) in b.fractions.iter().zip(f) {
            same_opt("fraction", Some(x), Some(y))?;
        }
    }

    let t = participation_table(g);
    let (made, recv) = net.participation();
    let flat = |c: &ParticipationCounts| {
        [c.self_cite, c.coauthor, c.both, c.either, c.both_possible, c.either_given_both_possible]
    };
    same("participation made", flat(&t.made), made)?;
    same("participation received", flat(&t.received), recv)?;

    let r = reciprocity(g);
    let (non, co) = net.reciprocity();
    same("reciprocity non-coauthor", [r.noncoauthor.events, r.noncoauthor.eligible, r.noncoauthor.reciprocated], non)?;
    same("reciprocity coauthor", [r.coauthor.events, r.coauthor.eligible, r.coauthor.reciprocated], co)?;

    let proj = g.coauthorship_projection(None);
    let (oglobal, olocal) = oracle::clustering(&net.projection());
    same_opt("global clustering", clustering_coefficient(&proj, ClusteringVariant::GlobalTransitivity), oglobal)?;
    same_opt("mean local clustering", clustering_coefficient(&proj, ClusteringVariant::MeanLocal), olocal)?;

    let c = prospective_closure(g);
    let (pairs, closed, bins) = net.closure();
    same("closure pairs", (c.pairs, c.closed), (pairs, closed))?;
    let got: Vec<(usize, usize, usize)> = c.by_shared_count.iter().map(|b| (b.k, b.pairs, b.closed)).collect();
    let want: Vec<(usize, usize, usize)> = bins.into_iter().map(|(k, (p, c))| (k, p, c)).collect();
    same("closure bins", got, want)?;
    Ok(())
}
