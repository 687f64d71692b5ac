use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::date::PubDate;
use crate::graph::{CoauthorGraph, HybridGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClusteringVariant {
    /// Three times the triangle count over the connected-triple count.
    GlobalTransitivity,
    /// Mean local coefficient over nodes of degree at least two.
    MeanLocal,
}

fn common_count(a: &[u32], b: &[u32]) -> usize {
    let (mut i, mut j, mut n) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                n += 1;
                i += 1;
                j += 1;
            }
        }
    }
    n
}

/// `None` when no node has two neighbours.
pub fn clustering_coefficient(graph: &CoauthorGraph, variant: ClusteringVariant) -> Option<f64> {
    // per node: (links among its neighbours, neighbour pairs)
    let per_node: Vec<(u64, u64)> = (0..graph.node_count() as u32)
        .into_par_iter()
        .map(|v| {
            let n = graph.neighbors(v);
            let d = n.len() as u64;
            let links: u64 = n.iter().map(|&u| common_count(n, graph.neighbors(u)) as u64).sum::<u64>() / 2;
            (links, d * d.saturating_sub(1) / 2)
        })
        .collect();
    match variant {
        ClusteringVariant::GlobalTransitivity => {
            let closed: u64 = per_node.iter().map(|x| x.0).sum();
            let triples: u64 = per_node.iter().map(|x| x.1).sum();
            // each triangle is seen once from each corner
            (triples > 0).then(|| closed as f64 / triples as f64)
        }
        ClusteringVariant::MeanLocal => {
            let locals: Vec<f64> =
                per_node.iter().filter(|x| x.1 > 0).map(|&(l, t)| l as f64 / t as f64).collect();
            (!locals.is_empty()).then(|| locals.iter().sum::<f64>() / locals.len() as f64)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClosureBin {
    /// Shared coauthors.
    pub k: usize,
    pub pairs: usize,
    pub closed: usize,
    pub probability: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ClosureResult {
    pub pairs: usize,
    pub closed: usize,
    pub probability: Option<f64>,
    pub by_shared_count: Vec<ClosureBin>,
}

/// Author pairs that at some point shared a coauthor without having
/// coauthored themselves, and how many of them later did.
///
/// A pair that eventually coauthors at date `t` qualifies only if some
/// shared coauthor was linked to both strictly before `t`; its `k` counts
/// those shared coauthors. A pair that never coauthors always qualifies,
/// and its `k` counts shared coauthors linked to both no later than the
/// earlier of the two authors' last papers.
pub fn prospective_closure(g: &HybridGraph) -> ClosureResult {
    let proj = g.coauthorship_projection(None);
    let last: Vec<Option<PubDate>> = (0..g.author_count() as u32).map(|a| g.last_paper_date(a)).collect();
    let fj = |a: u32, b: u32| g.first_joint(a, b).expect("projection edge has a joint date");

    let bins: BTreeMap<usize, (usize, usize)> = (0..proj.node_count() as u32)
        .into_par_iter()
        .fold(BTreeMap::new, |mut bins: BTreeMap<usize, (usize, usize)>, a| {
            // two-hop partners c > a, with the shared neighbours
            let mut shared: HashMap<u32, Vec<u32>> = HashMap::new();
            for &b in proj.neighbors(a) {
                for &c in proj.neighbors(b) {
                    if c > a {
                        shared.entry(c).or_default().push(b);
                    }
                }
            }
            for (c, via) in shared {
                let (k, closed) = match g.first_joint(a, c) {
                    Some(t) => {
                        let k = via.iter().filter(|&&b| fj(a, b).precedes(&t) && fj(b, c).precedes(&t)).count();
                        if k == 0 {
                            continue;
                        }
                        (k, true)
                    }
                    None => {
                        let (la, lc) = (last[a as usize].unwrap(), last[c as usize].unwrap());
                        let cutoff = if la.latest_key() <= lc.latest_key() { la } else { lc };
                        let k = via
                            .iter()
                            .filter(|&&b| !fj(a, b).follows(&cutoff) && !fj(b, c).follows(&cutoff))
                            .count();
                        (k, false)
                    }
                };
                let e = bins.entry(k).or_default();
                e.0 += 1;
                e.1 += closed as usize;
            }
            bins
        })
        .reduce(BTreeMap::new, |mut x, y| {
            for (k, (p, c)) in y {
                let e = x.entry(k).or_default();
                e.0 += p;
                e.1 += c;
            }
            x
        });

    let pairs: usize = bins.values().map(|b| b.0).sum();
    let closed: usize = bins.values().map(|b| b.1).sum();
    ClosureResult {
        pairs,
        closed,
        probability: (pairs > 0).then(|| closed as f64 / pairs as f64),
        by_shared_count: bins
            .into_iter()
            .map(|(k, (p, c))| ClosureBin { k, pairs: p, closed: c, probability: c as f64 / p as f64 })
            .collect(),
    }
}
