//! Brute-force reference implementations. Nothing here uses the graph
//! module: every relation is recomputed by scanning all papers.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use bibnet_core::ingest::CorpusView;
use bibnet_core::{CitationClass, IdentityMap, MentionId, PubDate};

pub const EPS: f64 = 1e-9;

#[derive(Clone, Debug)]
pub struct OPaper {
    pub id: String,
    pub date: PubDate,
    pub authors: BTreeSet<String>,
}

#[derive(Clone, Debug)]
pub struct Net {
    pub papers: Vec<OPaper>,
    /// (citing, cited) paper positions.
    pub cites: Vec<(usize, usize)>,
    /// Class of each citation, computed by [`Net::class`].
    pub classes: Vec<CitationClass>,
    papers_of: HashMap<String, Vec<usize>>,
    authors: Vec<String>,
}

impl Net {
    pub fn new(view: &CorpusView<'_>, ids: &IdentityMap) -> Self {
        let mut label: HashMap<MentionId, String> = HashMap::new();
        for a in &ids.authors {
            for m in &a.mentions {
                label.insert(m.clone(), a.id.clone());
            }
        }
        let papers: Vec<OPaper> = view
            .papers()
            .map(|p| OPaper {
                id: p.id.clone(),
                date: p.pub_date,
                authors: (0..p.mentions.len()).map(|i| label[&MentionId::new(p.id.clone(), i)].clone()).collect(),
            })
            .collect();
        let pos: HashMap<&str, usize> = papers.iter().enumerate().map(|(i, p)| (p.id.as_str(), i)).collect();
        let mut cites = Vec::new();
        for (i, p) in view.papers().enumerate() {
            for c in &p.cited_ids {
                if let Some(&j) = pos.get(c.as_str()) {
                    cites.push((i, j));
                }
            }
        }
        let mut papers_of: HashMap<String, Vec<usize>> = HashMap::new();
        for (i, p) in papers.iter().enumerate() {
            for a in &p.authors {
                papers_of.entry(a.clone()).or_default().push(i);
            }
        }
        let authors: Vec<String> = papers_of.keys().cloned().collect::<BTreeSet<_>>().into_iter().collect();
        let mut net = Net { papers, cites, classes: vec![], papers_of, authors };
        net.classes = net.cites.iter().map(|&(p, q)| net.class(p, q)).collect();
        net
    }

    pub fn authors(&self) -> &[String] {
        &self.authors
    }

    fn of(&self, a: &str) -> &[usize] {
        self.papers_of.get(a).map(Vec::as_slice).unwrap_or(&[])
    }

    fn shares_author(&self, p: usize, q: usize) -> bool {
        self.papers[p].authors.iter().any(|a| self.papers[q].authors.contains(a))
    }

    pub fn joint<'s>(&'s self, a: &'s str, b: &'s str) -> impl Iterator<Item = &'s OPaper> + 's {
        self.of(a).iter().map(|&i| &self.papers[i]).filter(move |p| a != b && p.authors.contains(b))
    }

    pub fn coauthored_before(&self, a: &str, b: &str, d: &PubDate) -> bool {
        self.joint(a, b).any(|p| p.date.precedes(d))
    }

    pub fn class(&self, p: usize, q: usize) -> CitationClass {
        if self.shares_author(p, q) {
            return CitationClass::SelfCite;
        }
        let d = self.papers[p].date;
        for a in &self.papers[p].authors {
            for b in &self.papers[q].authors {
                if self.coauthored_before(a, b, &d) {
                    return CitationClass::CoauthorCite;
                }
            }
        }
        CitationClass::Distant
    }

    pub fn class_counts(&self) -> [usize; 3] {
        let mut out = [0; 3];
        for &c in &self.classes {
            out[c as usize] += 1;
        }
        out
    }

    pub fn credit(&self, fractional: bool) -> BTreeMap<String, f64> {
        let mut out: BTreeMap<String, f64> = BTreeMap::new();
        for p in &self.papers {
            for a in &p.authors {
                *out.entry(a.clone()).or_default() += if fractional { 1.0 / p.authors.len() as f64 } else { 1.0 };
            }
        }
        out
    }

    pub fn productivity_ccdf(&self, fractional: bool) -> Vec<(f64, f64)> {
        let values: Vec<f64> = self.credit(fractional).into_values().collect();
        ccdf_at_values(&values)
    }

    pub fn lorenz_gini(&self) -> (Vec<(f64, f64)>, f64) {
        let mut v: Vec<(String, f64)> = self.credit(true).into_iter().collect();
        v.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap().then(a.0.cmp(&b.0)));
        let total: f64 = v.iter().map(|x| x.1).sum();
        let n = v.len() as f64;
        let mut pts = vec![(0.0, 0.0)];
        let mut acc = 0.0;
        for (i, (_, c)) in v.iter().enumerate() {
            acc += c;
            pts.push(((i + 1) as f64 / n, acc / total));
        }
        let mut area = 0.0;
        for w in pts.windows(2) {
            area += (w[1].0 - w[0].0) * (w[0].1 + w[1].1) / 2.0;
        }
        (pts, 2.0 * (area - 0.5))
    }

    fn block_of(&self, year: i32, width: i32) -> i32 {
        let mut s = year;
        while s.rem_euclid(width) != 0 {
            s -= 1;
        }
        s
    }

    fn block_starts(&self, width: i32) -> Vec<i32> {
        let years: Vec<i32> = self.papers.iter().map(|p| p.date.get_year()).collect();
        let (Some(&lo), Some(&hi)) = (years.iter().min(), years.iter().max()) else { return vec![] };
        let mut out = vec![];
        let mut s = self.block_of(lo, width);
        while s <= hi {
            out.push(s);
            s += width;
        }
        out
    }

    /// `stat`: 0 papers, 1 unique authors, 2 authors/paper, 3 unique
    /// coauthors/author, 4 citations made/paper, 5 received/paper.
    pub fn block_series(&self, stat: usize, width: i32) -> Vec<(i32, Option<f64>)> {
        self.block_starts(width)
            .into_iter()
            .map(|s| {
                let inb: Vec<usize> =
                    (0..self.papers.len()).filter(|&i| self.block_of(self.papers[i].date.get_year(), width) == s).collect();
                let n = inb.len();
                let mean = |x: f64, d: usize| if d == 0 { None } else { Some(x / d as f64) };
                let v = match stat {
                    0 => Some(n as f64),
                    1 => Some(inb.iter().flat_map(|&i| self.papers[i].authors.iter()).collect::<BTreeSet<_>>().len() as f64),
                    2 => mean(inb.iter().map(|&i| self.papers[i].authors.len() as f64).sum(), n),
                    3 => {
                        let authors: BTreeSet<&String> = inb.iter().flat_map(|&i| self.papers[i].authors.iter()).collect();
                        let total: usize = authors
                            .iter()
                            .map(|a| {
                                inb.iter()
                                    .filter(|&&i| self.papers[i].authors.contains(*a))
                                    .flat_map(|&i| self.papers[i].authors.iter())
                                    .filter(|b| b != a)
                                    .collect::<BTreeSet<_>>()
                                    .len()
                            })
                            .sum();
                        mean(total as f64, authors.len())
                    }
                    4 => mean(self.cites.iter().filter(|c| inb.contains(&c.0)).count() as f64, n),
                    5 => mean(self.cites.iter().filter(|c| inb.contains(&c.1)).count() as f64, n),
                    _ => unreachable!(),
                };
                (s, v)
            })
            .collect()
    }

    fn delay(&self, c: (usize, usize)) -> f64 {
        self.papers[c.0].date.years_since(&self.papers[c.1].date)
    }

    pub fn delay_ccdf(&self, class: Option<CitationClass>) -> Vec<(f64, f64)> {
        let d: Vec<f64> = self
            .cites
            .iter()
            .zip(&self.classes)
            .filter(|&(_, &k)| class.is_none_or(|want| want == k))
            .map(|(&c, _)| self.delay(c))
            .collect();
        if d.is_empty() {
            return vec![];
        }
        let max = d.iter().cloned().fold(0.0, f64::max);
        let mut out = vec![];
        let mut x = 0.0;
        loop {
            out.push((x, d.iter().filter(|&&v| v > x + EPS).count() as f64 / d.len() as f64));
            if x >= max {
                break;
            }
            x += 1.0;
        }
        out
    }

    pub fn mean_delays(&self) -> ([Option<f64>; 3], Option<f64>) {
        let mut sum = [0.0; 3];
        let mut n = [0usize; 3];
        for (&(p, q), &class) in self.cites.iter().zip(&self.classes) {
            let k = class as usize;
            sum[k] += self.delay((p, q));
            n[k] += 1;
        }
        let tot: usize = n.iter().sum();
        let per = [0, 1, 2].map(|k| (n[k] > 0).then(|| sum[k] / n[k] as f64));
        (per, (tot > 0).then(|| sum.iter().sum::<f64>() / tot as f64))
    }

    pub fn class_fractions(&self, width: i32) -> Vec<(i32, [f64; 3])> {
        self.block_starts(width)
            .into_iter()
            .filter_map(|s| {
                let mut n = [0usize; 3];
                for (&(p, _), &class) in self.cites.iter().zip(&self.classes) {
                    if self.block_of(self.papers[p].date.get_year(), width) == s {
                        n[class as usize] += 1;
                    }
                }
                let t: usize = n.iter().sum();
                (t > 0).then(|| (s, n.map(|x| x as f64 / t as f64)))
            })
            .collect()
    }

    /// Per direction: [self, coauthor, both, either, both_possible,
    /// either_given_both_possible].
    pub fn participation(&self) -> ([usize; 6], [usize; 6]) {
        let np = self.papers.len();
        let mut made = [0; 6];
        let mut recv = [0; 6];
        for p in 0..np {
            let pd = self.papers[p].date;
            let pick = |side: fn(&(usize, usize)) -> usize| -> Vec<CitationClass> {
                self.cites.iter().zip(&self.classes).filter(|(c, _)| side(c) == p).map(|(_, &k)| k).collect()
            };
            let out = pick(|c| c.0);
            let inc = pick(|c| c.1);

            let self_made = (0..np).any(|q| q != p && self.shares_author(p, q) && self.papers[q].date.precedes(&pd));
            let co_made = self.papers[p].authors.iter().any(|x| {
                self.authors.iter().any(|y| {
                    self.coauthored_before(x, y, &pd)
                        && (0..np).any(|q| {
                            self.papers[q].authors.contains(y)
                                && self.papers[q].date.precedes(&pd)
                                && !self.shares_author(p, q)
                        })
                })
            });
            let self_recv = (0..np).any(|q| q != p && self.shares_author(p, q) && self.papers[q].date.follows(&pd));
            let co_recv = (0..np).any(|q| {
                let qd = self.papers[q].date;
                qd.follows(&pd)
                    && !self.shares_author(p, q)
                    && self.papers[p]
                        .authors
                        .iter()
                        .any(|a| self.papers[q].authors.iter().any(|b| self.coauthored_before(a, b, &qd)))
            });
            tally(&mut made, &out, self_made, co_made);
            tally(&mut recv, &inc, self_recv, co_recv);
        }
        (made, recv)
    }

    /// ([events, eligible, reciprocated] for non-coauthors, same for
    /// coauthors).
    pub fn reciprocity(&self) -> ([usize; 3], [usize; 3]) {
        let mut events: BTreeSet<(usize, String, String)> = BTreeSet::new();
        for (&(p, q), &class) in self.cites.iter().zip(&self.classes) {
            if class == CitationClass::SelfCite {
                continue;
            }
            for a in &self.papers[p].authors {
                for b in &self.papers[q].authors {
                    events.insert((p, a.clone(), b.clone()));
                }
            }
        }
        let mut non = [0; 3];
        let mut co = [0; 3];
        for (p, a, b) in events {
            let pd = self.papers[p].date;
            let bucket = if self.coauthored_before(&a, &b, &pd) { &mut co } else { &mut non };
            bucket[0] += 1;
            let later = |r: &OPaper| r.authors.contains(&b) && r.date.follows(&pd);
            if self.papers.iter().any(later) {
                bucket[1] += 1;
                let back = self.cites.iter().zip(&self.classes).any(|(&(r, s), &k)| {
                    later(&self.papers[r]) && self.papers[s].authors.contains(&a) && k != CitationClass::SelfCite
                });
                if back {
                    bucket[2] += 1;
                }
            }
        }
        (non, co)
    }

    pub fn projection(&self) -> BTreeSet<(String, String)> {
        let mut e = BTreeSet::new();
        for p in &self.papers {
            for a in &p.authors {
                for b in &p.authors {
                    if a < b {
                        e.insert((a.clone(), b.clone()));
                    }
                }
            }
        }
        e
    }

    /// Earliest joint date; dates of one pair must be totally ordered.
    fn first_joint(&self, a: &str, b: &str) -> Option<PubDate> {
        let dates: Vec<PubDate> = self.joint(a, b).map(|p| p.date).collect();
        dates.iter().find(|d| !dates.iter().any(|e| e.precedes(d))).copied()
    }

    fn last_paper(&self, a: &str) -> PubDate {
        let dates: Vec<PubDate> = self.of(a).iter().map(|&i| self.papers[i].date).collect();
        *dates.iter().find(|d| !dates.iter().any(|e| e.follows(d))).unwrap()
    }

    /// (pairs, closed, per-k (pairs, closed)).
    pub fn closure(&self) -> (usize, usize, BTreeMap<usize, (usize, usize)>) {
        let edges = self.projection();
        let adj = |a: &String, b: &String| edges.contains(&(a.min(b).clone(), a.max(b).clone()));
        let authors = &self.authors;
        let mut bins: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
        for (i, a) in authors.iter().enumerate() {
            for c in &authors[i + 1..] {
                let common: Vec<&String> = authors.iter().filter(|b| adj(a, b) && adj(b, c)).collect();
                if common.is_empty() {
                    continue;
                }
                let (k, closed) = match self.first_joint(a, c) {
                    Some(t) => {
                        let k = common
                            .iter()
                            .filter(|b| self.coauthored_before(a, b, &t) && self.coauthored_before(b, c, &t))
                            .count();
                        if k == 0 {
                            continue;
                        }
                        (k, true)
                    }
                    None => {
                        let (la, lc) = (self.last_paper(a), self.last_paper(c));
                        let tc = if lc.precedes(&la) { lc } else { la };
                        let k = common
                            .iter()
                            .filter(|b| {
                                self.joint(a, b).any(|p| !p.date.follows(&tc))
                                    && self.joint(b, c).any(|p| !p.date.follows(&tc))
                            })
                            .count();
                        (k, false)
                    }
                };
                let e = bins.entry(k).or_default();
                e.0 += 1;
                e.1 += closed as usize;
            }
        }
        let pairs = bins.values().map(|x| x.0).sum();
        let closed = bins.values().map(|x| x.1).sum();
        (pairs, closed, bins)
    }
}

fn tally(row: &mut [usize; 6], edges: &[CitationClass], self_possible: bool, co_possible: bool) {
    let s = edges.contains(&CitationClass::SelfCite);
    let c = edges.contains(&CitationClass::CoauthorCite);
    row[0] += s as usize;
    row[1] += c as usize;
    row[2] += (s && c) as usize;
    row[3] += (s || c) as usize;
    if self_possible && co_possible {
        row[4] += 1;
        row[5] += (s || c) as usize;
    }
}

/// CCDF evaluated at 0 and at every distinct value.
pub fn ccdf_at_values(values: &[f64]) -> Vec<(f64, f64)> {
    if values.is_empty() {
        return vec![];
    }
    let mut xs: Vec<f64> = vec![0.0];
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    for v in sorted {
        if v > xs.last().unwrap() + EPS {
            xs.push(v);
        }
    }
    xs.into_iter()
        .map(|x| (x, values.iter().filter(|&&v| v > x + EPS).count() as f64 / values.len() as f64))
        .collect()
}

/// Brute force over node triples: (global transitivity, mean local).
pub fn clustering(edges: &BTreeSet<(String, String)>) -> (Option<f64>, Option<f64>) {
    let nodes: Vec<&String> = edges.iter().flat_map(|(a, b)| [a, b]).collect::<BTreeSet<_>>().into_iter().collect();
    let has = |a: &String, b: &String| edges.contains(&(a.min(b).clone(), a.max(b).clone()));
    let (mut tri, mut open) = (0usize, 0usize);
    for i in 0..nodes.len() {
        for j in i + 1..nodes.len() {
            for k in j + 1..nodes.len() {
                let n = has(nodes[i], nodes[j]) as usize + has(nodes[j], nodes[k]) as usize + has(nodes[i], nodes[k]) as usize;
                match n {
                    3 => tri += 1,
                    2 => open += 1,
                    _ => {}
                }
            }
        }
    }
    let global = (3 * tri + open > 0).then(|| 3.0 * tri as f64 / (3 * tri + open) as f64);
    let mut locals = vec![];
    for v in &nodes {
        let nb: Vec<&String> = nodes.iter().copied().filter(|u| u != v && has(v, u)).collect();
        if nb.len() < 2 {
            continue;
        }
        let mut closed = 0;
        let mut total = 0;
        for x in 0..nb.len() {
            for y in x + 1..nb.len() {
                total += 1;
                closed += has(nb[x], nb[y]) as usize;
            }
        }
        locals.push(closed as f64 / total as f64);
    }
    let mean = (!locals.is_empty()).then(|| locals.iter().sum::<f64>() / locals.len() as f64);
    (global, mean)
}
