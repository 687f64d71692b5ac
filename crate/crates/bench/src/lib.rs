//! Shared corpus fixtures for the benchmarks.

use bibnet_core::{cull, disambiguate, generate, CulledCorpus, DisambigParams, GenConfig, IdentityMap};

/// A noisy synthetic corpus of roughly `papers` papers, culled, together with
/// its disambiguated identity map.
pub fn fixture(papers: usize) -> (CulledCorpus, IdentityMap) {
    let config = GenConfig {
        start_year: 1950,
        end_year: 2009,
        initial_papers_per_year: papers as f64 / 520.0,
        ..GenConfig::standard_noise()
    };
    let gold = generate(&config).expect("valid benchmark config");
    let (corpus, _) = cull(gold.corpus, 50);
    let identities = disambiguate(&corpus.view(true), &DisambigParams::default())
        .expect("default parameters are valid")
        .identities;
    (corpus, identities)
}
