use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use bibnet_core::disambig::{DisambigParams, SimilarityWeights, DEFAULT_AFFILIATION_THRESHOLD, DEFAULT_MERGE_THRESHOLD};
use bibnet_core::ingest::ParseOptions;
use bibnet_core::report::{build_bundle, parse_selection, Bundle, ReportOptions, FIGURES, TABLES};
use bibnet_core::{cull, disambiguate as run_disambig, evaluate, CullReport, CulledCorpus, GenConfig, GoldLabels, IdentityMap};
use clap::Args;
use serde::Serialize;
use serde_json::json;

use crate::manifest::{sha256_hex, RunManifest};
use crate::GlobalArgs;

pub const CORPUS_FILE: &str = "corpus.jsonl";
pub const CULL_REPORT_FILE: &str = "cull_report.json";
pub const IDENTITIES_FILE: &str = "identities.json";
pub const GOLD_FILE: &str = "gold.jsonl";
pub const EVALUATION_FILE: &str = "evaluation.json";
pub const SUMMARY_FILE: &str = "summary.json";
pub const CONFIG_FILE: &str = "config.toml";

#[derive(Debug, Args)]
pub struct DisambigArgs {
    /// Minimum combined similarity for a step-2 merge.
    #[arg(long, default_value_t = DEFAULT_MERGE_THRESHOLD)]
    merge_threshold: f64,
    /// Minimum string similarity for two affiliations to share a cluster.
    #[arg(long, default_value_t = DEFAULT_AFFILIATION_THRESHOLD)]
    affiliation_threshold: f64,
    #[arg(long, default_value_t = SimilarityWeights::default().affiliation)]
    affiliation_weight: f64,
    #[arg(long, default_value_t = SimilarityWeights::default().coauthor)]
    coauthor_weight: f64,
    #[arg(long, default_value_t = SimilarityWeights::default().identical_name)]
    name_weight: f64,
    #[arg(long, default_value_t = SimilarityWeights::default().journal)]
    journal_weight: f64,
    /// Gold labels (JSONL) to score the result against.
    #[arg(long)]
    gold: Option<PathBuf>,
}

impl DisambigArgs {
    fn params(&self) -> DisambigParams {
        DisambigParams {
            affiliation_threshold: self.affiliation_threshold,
            merge_threshold: self.merge_threshold,
            weights: SimilarityWeights {
                affiliation: self.affiliation_weight,
                coauthor: self.coauthor_weight,
                identical_name: self.name_weight,
                journal: self.journal_weight,
            },
        }
    }
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    /// Overrides the seed in the config.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct Selection {
    /// Figures to compute, e.g. `1,3-5`. Defaults to all.
    #[arg(long)]
    figures: Option<String>,
    /// Tables to compute, e.g. `2`. Defaults to all.
    #[arg(long)]
    tables: Option<String>,
    /// Only the view that keeps large papers.
    #[arg(long)]
    with_large: bool,
    /// Only the view that drops large papers.
    #[arg(long)]
    without_large: bool,
}

impl Selection {
    fn options(&self, block_width: i32) -> Result<ReportOptions> {
        // naming only one of the two sets leaves the other empty
        let explicit = self.figures.is_some() || self.tables.is_some();
        let pick = |kind, spec: &Option<String>, range| match spec {
            Some(s) => parse_selection(kind, s, range),
            None if explicit => Ok(Default::default()),
            None => Ok(range.collect()),
        };
        let views = match (self.with_large, self.without_large) {
            (true, false) => vec![true],
            (false, true) => vec![false],
            _ => vec![true, false],
        };
        Ok(ReportOptions {
            figures: pick("figure", &self.figures, FIGURES)?,
            tables: pick("table", &self.tables, TABLES)?,
            views,
            block_width,
        })
    }
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    /// Identity map produced by `disambiguate`.
    #[arg(long)]
    identities: PathBuf,
    #[command(flatten)]
    selection: Selection,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    #[command(flatten)]
    disambig: DisambigArgs,
    #[command(flatten)]
    selection: Selection,
}

fn input(g: &GlobalArgs) -> Result<&Path> {
    g.input.as_deref().context("missing required --input")
}

fn read(path: &Path) -> Result<Vec<u8>> {
    std::fs::read(path).with_context(|| format!("reading {}", path.display()))
}

fn out_dir(g: &GlobalArgs) -> Result<&Path> {
    std::fs::create_dir_all(&g.output_dir).with_context(|| format!("creating {}", g.output_dir.display()))?;
    Ok(&g.output_dir)
}

struct Outputs<'a> {
    dir: &'a Path,
    written: Vec<String>,
}

impl<'a> Outputs<'a> {
    fn new(dir: &'a Path) -> Self {
        Self { dir, written: Vec::new() }
    }

    fn write(&mut self, name: &str, contents: impl AsRef<[u8]>) -> Result<()> {
        let path = self.dir.join(name);
        std::fs::write(&path, contents).with_context(|| format!("writing {}", path.display()))?;
        self.written.push(name.to_string());
        Ok(())
    }

    fn json(&mut self, name: &str, value: &impl Serialize) -> Result<()> {
        let mut text = serde_json::to_string_pretty(value)?;
        text.push('\n');
        self.write(name, text)
    }

    fn finish(self, mut manifest: RunManifest) -> Result<()> {
        manifest.outputs = self.written;
        manifest.write(self.dir)
    }
}

fn load_corpus(path: &Path, bytes: &[u8], large_threshold: usize) -> Result<(CulledCorpus, CullReport)> {
    if large_threshold == 0 {
        bail!("--large-paper-threshold must be at least 1");
    }
    let raw = bibnet_core::parse_corpus(bytes, &ParseOptions::default())
        .with_context(|| format!("parsing corpus {}", path.display()))?;
    Ok(cull(raw, large_threshold))
}

fn corpus_jsonl(corpus: &CulledCorpus) -> Result<Vec<u8>> {
    let mut buf = Vec::new();
    corpus.write_jsonl(&mut buf)?;
    Ok(buf)
}

fn identities_json(map: &IdentityMap) -> Result<Vec<u8>> {
    let mut buf = Vec::new();
    map.write_json(&mut buf)?;
    buf.push(b'\n');
    Ok(buf)
}

fn print_cull(report: &CullReport, corpus: &CulledCorpus) {
    println!(
        "kept {} papers ({} flagged large); removed {} authorless, {} self-loops, {} acausal, {} dangling; collapsed {} duplicate citations",
        corpus.len(),
        report.flagged_large_papers,
        report.removed_authorless,
        report.removed_self_loops,
        report.removed_acausal,
        report.removed_dangling,
        report.collapsed_duplicate_citations,
    );
}

/// Disambiguates over every paper, large ones included, so both views share
/// one identity map.
fn resolve(corpus: &CulledCorpus, args: &DisambigArgs, out: &mut Outputs, manifest: &mut RunManifest) -> Result<IdentityMap> {
    let result = run_disambig(&corpus.view(true), &args.params())?;
    println!(
        "{} mentions -> {} identities ({} after exact-name merge)",
        result.identities.mention_count(),
        result.identities.len(),
        result.step1_clusters
    );
    if let Some(path) = &args.gold {
        let bytes = read(path)?;
        let gold = GoldLabels::read_jsonl(&bytes[..]).with_context(|| format!("reading gold labels {}", path.display()))?;
        manifest.add_input("gold", path, &bytes);
        let eval = evaluate(&result.identities, &gold)?;
        println!("false positive rate {:.6}, false negative rate {:.6}", eval.false_positive_rate, eval.false_negative_rate);
        out.json(EVALUATION_FILE, &eval)?;
    }
    out.write(IDENTITIES_FILE, identities_json(&result.identities)?)?;
    Ok(result.identities)
}

fn emit_bundle(bundle: &Bundle, out: &mut Outputs) -> Result<()> {
    for w in &bundle.warnings {
        eprintln!("warning: {w}");
    }
    for (name, text) in &bundle.files {
        out.write(name, text)?;
    }
    out.json(SUMMARY_FILE, &bundle.summaries)?;
    println!("wrote {} figure/table files to {}", bundle.files.len(), out.dir.display());
    Ok(())
}

fn selection_params(opts: &ReportOptions) -> serde_json::Value {
    json!({
        "figures": opts.figures,
        "tables": opts.tables,
        "views": opts.views.iter().map(|&l| if l { "with_large" } else { "without_large" }).collect::<Vec<_>>(),
        "block_width": opts.block_width,
    })
}

pub fn ingest(g: &GlobalArgs) -> Result<()> {
    let path = input(g)?;
    let bytes = read(path)?;
    let (corpus, report) = load_corpus(path, &bytes, g.large_paper_threshold)?;
    let mut manifest = RunManifest::new("ingest", json!({ "large_paper_threshold": g.large_paper_threshold }))?;
    manifest.add_input("corpus", path, &bytes);
    manifest.corpus_sha256 = sha256_hex(&bytes);

    let mut out = Outputs::new(out_dir(g)?);
    out.write(CORPUS_FILE, corpus_jsonl(&corpus)?)?;
    out.json(CULL_REPORT_FILE, &report)?;
    print_cull(&report, &corpus);
    out.finish(manifest)
}

pub fn disambiguate(g: &GlobalArgs, args: &DisambigArgs) -> Result<()> {
    let path = input(g)?;
    let bytes = read(path)?;
    let (corpus, _) = load_corpus(path, &bytes, g.large_paper_threshold)?;
    let params = args.params();
    let mut manifest = RunManifest::new(
        "disambiguate",
        json!({ "large_paper_threshold": g.large_paper_threshold, "disambiguation": params }),
    )?;
    manifest.add_input("corpus", path, &bytes);
    manifest.corpus_sha256 = sha256_hex(&bytes);

    let mut out = Outputs::new(out_dir(g)?);
    resolve(&corpus, args, &mut out, &mut manifest)?;
    out.finish(manifest)
}

pub fn generate(g: &GlobalArgs, args: &GenerateArgs) -> Result<()> {
    let mut config = match &g.input {
        Some(path) => {
            let bytes = read(path)?;
            let text = String::from_utf8(bytes).with_context(|| format!("config {} is not UTF-8", path.display()))?;
            toml::from_str::<GenConfig>(&text).with_context(|| format!("invalid config {}", path.display()))?
        }
        None => GenConfig::default(),
    };
    if let Some(seed) = args.seed {
        config.seed = seed;
    }
    let gold = bibnet_core::generate(&config).context("invalid config")?;

    let mut corpus = Vec::new();
    gold.corpus.write_jsonl(&mut corpus)?;
    let mut labels = Vec::new();
    gold.gold.write_jsonl(&mut labels)?;

    let mut manifest = RunManifest::new("generate", &config)?;
    if let Some(path) = &g.input {
        manifest.add_input("config", path, &read(path)?);
    }
    manifest.corpus_sha256 = sha256_hex(&corpus);

    let mut out = Outputs::new(out_dir(g)?);
    out.write(CORPUS_FILE, &corpus)?;
    out.write(GOLD_FILE, &labels)?;
    out.write(CONFIG_FILE, toml::to_string(&config)?)?;
    println!(
        "generated {} papers, {} authors, {} mentions (seed {})",
        gold.corpus.len(),
        gold.authors.len(),
        gold.gold.len(),
        config.seed
    );
    out.finish(manifest)
}

pub fn analyze(g: &GlobalArgs, args: &AnalyzeArgs) -> Result<()> {
    let opts = args.selection.options(g.block_width)?;
    let path = input(g)?;
    let bytes = read(path)?;
    let (corpus, _) = load_corpus(path, &bytes, g.large_paper_threshold)?;
    let id_bytes = read(&args.identities)?;
    let identities = IdentityMap::read_json(&id_bytes[..])
        .with_context(|| format!("reading identity map {}", args.identities.display()))?;

    let mut manifest = RunManifest::new(
        "analyze",
        json!({ "large_paper_threshold": g.large_paper_threshold, "selection": selection_params(&opts) }),
    )?;
    manifest.add_input("corpus", path, &bytes);
    manifest.add_input("identities", &args.identities, &id_bytes);
    manifest.corpus_sha256 = sha256_hex(&bytes);

    let bundle = build_bundle(&corpus, &identities, &opts)?;
    let mut out = Outputs::new(out_dir(g)?);
    emit_bundle(&bundle, &mut out)?;
    out.finish(manifest)
}

pub fn report(g: &GlobalArgs, args: &ReportArgs) -> Result<()> {
    let opts = args.selection.options(g.block_width)?;
    let path = input(g)?;
    let bytes = read(path)?;
    let (corpus, cull_report) = load_corpus(path, &bytes, g.large_paper_threshold)?;
    let mut manifest = RunManifest::new(
        "report",
        json!({
            "large_paper_threshold": g.large_paper_threshold,
            "disambiguation": args.disambig.params(),
            "selection": selection_params(&opts),
        }),
    )?;
    manifest.add_input("corpus", path, &bytes);
    manifest.corpus_sha256 = sha256_hex(&bytes);

    let mut out = Outputs::new(out_dir(g)?);
    out.write(CORPUS_FILE, corpus_jsonl(&corpus)?)?;
    out.json(CULL_REPORT_FILE, &cull_report)?;
    print_cull(&cull_report, &corpus);
    let identities = resolve(&corpus, &args.disambig, &mut out, &mut manifest)?;
    let bundle = build_bundle(&corpus, &identities, &opts)?;
    emit_bundle(&bundle, &mut out)?;
    out.finish(manifest)
}
