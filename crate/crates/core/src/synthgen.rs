//! Synthetic corpora with known ground truth.
//!
//! Randomness comes from ChaCha8 seeded with [`GenConfig::seed`] through
//! `seed_from_u64`; name corruption uses stream 1 of the same seed, so a
//! clean corpus and its corrupted variant share everything but the names.
//!
//! Process, year by year:
//! - the number of papers follows `initial_papers_per_year * exp(rate * t)`,
//!   rounded by flooring the running total so counts are deterministic;
//! - each byline size is drawn from a power law truncated at the cutoff, and
//!   each slot is filled by a new author, a previous coauthor of someone
//!   already on the byline, or an existing author chosen with probability
//!   proportional to their paper count; authors occasionally move to a new
//!   home institution, which is the affiliation on their later papers;
//! - each reference is, in turn, a self citation, a coauthor citation, or a
//!   Price draw with weight `in-degree + attachment_offset`, thinned by an
//!   exponential aging factor.

use std::collections::HashSet;

use rand::distributions::WeightedIndex;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::date::PubDate;
use crate::disambig::{GoldLabels, MentionId};
use crate::ingest::{AuthorMention, PaperRecord, RawCorpus};

#[derive(Debug, thiserror::Error)]
pub enum SynthError {
    #[error("invalid config field `{field}`: {message}")]
    InvalidConfig { field: &'static str, message: String },
}

fn invalid(field: &'static str, message: impl Into<String>) -> SynthError {
    SynthError::InvalidConfig { field, message: message.into() }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GroupSizeDistribution {
    /// `P(s) ∝ s^-exponent` for `1 <= s <= cutoff`.
    pub exponent: f64,
    pub cutoff: usize,
}

impl Default for GroupSizeDistribution {
    fn default() -> Self {
        Self { exponent: 2.5, cutoff: 12 }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct NameNoise {
    /// Per mention: given name reduced to its initial.
    pub initial_probability: f64,
    /// Per mention: middle initial dropped.
    pub middle_drop_probability: f64,
    /// Per author: surname replaced by another author's surname.
    pub surname_collision_probability: f64,
}

impl NameNoise {
    /// Name noise used by [`GenConfig::standard_noise`].
    pub fn standard() -> Self {
        Self { initial_probability: 0.25, middle_drop_probability: 0.25, surname_collision_probability: 0.05 }
    }

    pub fn is_zero(&self) -> bool {
        self.initial_probability == 0.0
            && self.middle_drop_probability == 0.0
            && self.surname_collision_probability == 0.0
    }

    fn validate(&self) -> Result<(), SynthError> {
        check_probability("name_noise.initial_probability", self.initial_probability)?;
        check_probability("name_noise.middle_drop_probability", self.middle_drop_probability)?;
        check_probability("name_noise.surname_collision_probability", self.surname_collision_probability)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GenConfig {
    pub seed: u64,
    pub start_year: i32,
    /// Inclusive.
    pub end_year: i32,
    pub initial_papers_per_year: f64,
    pub papers_growth_rate: f64,
    pub group_size: GroupSizeDistribution,
    /// Upper bound on the number of distinct authors.
    pub author_population: usize,
    pub new_author_probability: f64,
    pub repeat_coauthor_probability: f64,
    pub institutions: usize,
    /// Per authorship: the author moves to a new home institution first.
    pub affiliation_move_probability: f64,
    pub journals: Vec<String>,
    pub mean_references: f64,
    pub attachment_offset: f64,
    pub aging_halflife_years: Option<f64>,
    pub self_cite_propensity: f64,
    pub coauthor_cite_propensity: f64,
    pub name_noise: NameNoise,
}

impl Default for GenConfig {
    fn default() -> Self {
        Self {
            seed: 1,
            start_year: 1950,
            end_year: 1999,
            initial_papers_per_year: 10.0,
            papers_growth_rate: std::f64::consts::LN_2 / 12.0,
            group_size: GroupSizeDistribution::default(),
            author_population: 5000,
            new_author_probability: 0.3,
            repeat_coauthor_probability: 0.4,
            institutions: 150,
            affiliation_move_probability: 0.0,
            journals: ["Phys. Rev.", "Phys. Rev. A", "Phys. Rev. B", "Phys. Rev. D", "Phys. Rev. E", "Phys. Rev. Lett."]
                .map(String::from)
                .to_vec(),
            mean_references: 8.0,
            attachment_offset: 1.0,
            aging_halflife_years: Some(8.0),
            self_cite_propensity: 0.15,
            coauthor_cite_propensity: 0.1,
            name_noise: NameNoise::default(),
        }
    }
}

fn check_probability(field: &'static str, p: f64) -> Result<(), SynthError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(invalid(field, format!("{p} is not a probability")));
    }
    Ok(())
}

impl GenConfig {
    /// The benchmark setting for disambiguation quality: standard name noise
    /// plus a 2% chance per authorship of moving institution.
    pub fn standard_noise() -> Self {
        Self { name_noise: NameNoise::standard(), affiliation_move_probability: 0.02, ..Self::default() }
    }

    pub fn validate(&self) -> Result<(), SynthError> {
        if self.end_year < self.start_year {
            return Err(invalid("end_year", format!("{} is before start_year {}", self.end_year, self.start_year)));
        }
        if !(self.initial_papers_per_year > 0.0 && self.initial_papers_per_year.is_finite()) {
            return Err(invalid("initial_papers_per_year", "must be positive"));
        }
        if !(self.papers_growth_rate > 0.0 && self.papers_growth_rate.is_finite()) {
            return Err(invalid("papers_growth_rate", "must be positive"));
        }
        if !self.group_size.exponent.is_finite() {
            return Err(invalid("group_size.exponent", "must be finite"));
        }
        if self.group_size.cutoff < 1 {
            return Err(invalid("group_size.cutoff", "must be at least 1"));
        }
        if self.author_population < 1 {
            return Err(invalid("author_population", "must be at least 1"));
        }
        if self.group_size.cutoff > self.author_population {
            return Err(invalid(
                "group_size.cutoff",
                format!("{} exceeds author_population {}", self.group_size.cutoff, self.author_population),
            ));
        }
        if self.author_population > MAX_POPULATION {
            return Err(invalid("author_population", format!("at most {MAX_POPULATION} distinct names available")));
        }
        check_probability("new_author_probability", self.new_author_probability)?;
        check_probability("repeat_coauthor_probability", self.repeat_coauthor_probability)?;
        check_probability("self_cite_propensity", self.self_cite_propensity)?;
        check_probability("coauthor_cite_propensity", self.coauthor_cite_propensity)?;
        check_probability("affiliation_move_probability", self.affiliation_move_probability)?;
        if self.institutions < 1 {
            return Err(invalid("institutions", "must be at least 1"));
        }
        if self.journals.is_empty() {
            return Err(invalid("journals", "must not be empty"));
        }
        if !(self.mean_references >= 0.0 && self.mean_references.is_finite()) {
            return Err(invalid("mean_references", "must be finite and >= 0"));
        }
        if !(self.attachment_offset > 0.0 && self.attachment_offset.is_finite()) {
            return Err(invalid("attachment_offset", "must be positive"));
        }
        if let Some(h) = self.aging_halflife_years {
            if !(h > 0.0 && h.is_finite()) {
                return Err(invalid("aging_halflife_years", "must be positive"));
            }
        }
        self.name_noise.validate()
    }

    /// Papers published in each year of the span.
    pub fn papers_per_year(&self) -> Vec<(i32, usize)> {
        let mut cumulative = 0.0;
        let mut emitted = 0usize;
        (self.start_year..=self.end_year)
            .map(|y| {
                cumulative += self.initial_papers_per_year * (self.papers_growth_rate * (y - self.start_year) as f64).exp();
                let total = cumulative.floor() as usize;
                let n = total - emitted;
                emitted = total;
                (y, n)
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldAuthor {
    pub label: String,
    pub given: String,
    pub middle: char,
    pub surname: String,
    /// Home institution at the end of the run.
    pub affiliation: String,
}

impl GoldAuthor {
    pub fn canonical_name(&self) -> String {
        format!("{} {}. {}", self.given, self.middle, self.surname)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct NoiseStats {
    pub initialed_mentions: usize,
    pub middle_dropped_mentions: usize,
    /// Authors whose surname was replaced.
    pub collided_authors: usize,
}

#[derive(Clone, Debug)]
pub struct GoldCorpus {
    pub corpus: RawCorpus,
    pub gold: GoldLabels,
    /// Indexed by the numeric part of the gold label.
    pub authors: Vec<GoldAuthor>,
    pub config: GenConfig,
    pub noise: NoiseStats,
}

const GIVEN: &[&str] = &[
    "Aaron", "Abigail", "Adrian", "Alice", "Andrew", "Anna", "Arthur", "Barbara", "Benjamin", "Beatrice", "Carl",
    "Caroline", "Charles", "Clara", "Daniel", "Diana", "David", "Dorothy", "Edward", "Elena", "Emil", "Emma",
    "Felix", "Frances", "Frank", "Gloria", "George", "Grace", "Harold", "Helen", "Henry", "Irene", "Isaac", "Julia",
    "James", "Karen", "Kenneth", "Laura", "Leonard", "Lillian", "Louis", "Margaret", "Marvin", "Maria", "Michael",
    "Nadia", "Nathan", "Olivia", "Oscar", "Patricia", "Paul", "Rachel", "Richard", "Rosa", "Robert", "Sarah",
    "Samuel", "Sophia", "Thomas", "Teresa", "Victor", "Vera", "Walter", "Wendy", "William", "Yvonne",
];

const SURNAMES: &[&str] = &[
    "Abbott", "Adler", "Alvarez", "Anderson", "Arnold", "Bailey", "Baker", "Barnes", "Becker", "Bell", "Bennett",
    "Berg", "Bishop", "Blake", "Bose", "Brandt", "Brooks", "Brown", "Burke", "Byrne", "Campbell", "Carter", "Chen",
    "Clark", "Cohen", "Cole", "Collins", "Cooper", "Cruz", "Dalton", "Davies", "Dixon", "Doyle", "Dunn", "Eaton",
    "Ellis", "Evans", "Farber", "Fischer", "Fleming", "Ford", "Foster", "Fowler", "Garcia", "Gardner", "Gibson",
    "Gordon", "Graham", "Grant", "Gray", "Greene", "Hale", "Hall", "Hansen", "Harper", "Hayes", "Heller", "Hoffman",
    "Holt", "Howard", "Hughes", "Hunt", "Ito", "Jacobs", "Jensen", "Johnson", "Jones", "Kahn", "Kato", "Keller",
    "Kelly", "Kim", "Klein", "Koch", "Kramer", "Kumar", "Lambert", "Lang", "Larsen", "Lawson", "Lee", "Lehmann",
    "Lewis", "Lindqvist", "Lopez", "Lowe", "Lucas", "Lund", "Mann", "Marsh", "Marlow", "Mason", "Meyer", "Miller",
    "Mills", "Moore", "Morgan", "Morris", "Murphy", "Nagel", "Nash", "Nelson", "Norris", "Nielsen", "Novak",
    "Ogawa", "Olsen", "Owens", "Palmer", "Park", "Parker", "Patel", "Pearson", "Perez", "Peters", "Pohl", "Porter",
    "Price", "Quinn", "Ramos", "Reed", "Reyes", "Rhodes", "Richter", "Riley", "Rivera", "Roberts", "Rossi",
    "Russell", "Sato", "Schmidt", "Schultz", "Scott", "Shaw", "Silva", "Singh", "Stone", "Sullivan", "Suzuki",
    "Tanaka", "Taylor", "Thompson", "Torres", "Turner", "Vogel", "Wagner", "Walker", "Walsh", "Ward", "Watson",
    "Weber", "Wells", "White", "Wolf", "Wood", "Wright", "Young", "Zhang", "Zimmer",
];

const MIDDLES: &[char] = &[
    'A', 'B', 'C', 'D', 'E', 'F', 'G', 'H', 'J', 'K', 'L', 'M', 'N', 'P', 'R', 'S', 'T', 'W',
];

const MAX_POPULATION: usize = GIVEN.len() * SURNAMES.len() * MIDDLES.len() / 2;

const SYLLABLES: &[&str] = &[
    "ka", "lo", "mi", "ren", "sa", "tor", "vel", "qui", "dan", "bor", "fen", "gar", "hol", "ix", "jun", "mar",
    "nor", "pel", "ros", "tal", "ur", "wes", "zan", "cor", "del",
];

const INSTITUTION_FORMS: &[&str] = &["University of {}", "{} Institute of Technology", "{} National Laboratory", "{} College"];

fn institution_names(rng: &mut ChaCha8Rng, n: usize) -> Vec<String> {
    let mut seen = HashSet::new();
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let k = rng.gen_range(3..=4);
        let mut word: String = (0..k).map(|_| *SYLLABLES.choose(rng).unwrap()).collect();
        word[..1].make_ascii_uppercase();
        let name = INSTITUTION_FORMS.choose(rng).unwrap().replace("{}", &word);
        if seen.insert(name.clone()) {
            out.push(name);
        }
    }
    out
}

struct State {
    rng: ChaCha8Rng,
    authors: Vec<GoldAuthor>,
    used_names: HashSet<(usize, usize, usize)>,
    institutions: Vec<String>,
    /// One entry per authorship, for paper-count-proportional choice.
    authorship_tickets: Vec<u32>,
    coauthors: Vec<Vec<u32>>,
    author_papers: Vec<Vec<u32>>,
    /// One entry per citation received.
    citation_tickets: Vec<u32>,
    dates: Vec<PubDate>,
    bylines: Vec<Vec<u32>>,
}

impl State {
    fn new_author(&mut self) -> u32 {
        let key = loop {
            let key = (
                self.rng.gen_range(0..GIVEN.len()),
                self.rng.gen_range(0..MIDDLES.len()),
                self.rng.gen_range(0..SURNAMES.len()),
            );
            if self.used_names.insert(key) {
                break key;
            }
        };
        let id = self.authors.len() as u32;
        let affiliation = self.institutions.choose(&mut self.rng).unwrap().clone();
        self.authors.push(GoldAuthor {
            label: format!("G{:06}", id + 1),
            given: GIVEN[key.0].to_string(),
            middle: MIDDLES[key.1],
            surname: SURNAMES[key.2].to_string(),
            affiliation,
        });
        self.coauthors.push(Vec::new());
        self.author_papers.push(Vec::new());
        id
    }

    fn pick_author(&mut self, cfg: &GenConfig, byline: &[u32]) -> u32 {
        let room = self.authors.len() < cfg.author_population;
        for _ in 0..32 {
            let candidate = if room && (self.authorship_tickets.is_empty() || self.rng.gen_bool(cfg.new_author_probability))
            {
                return self.new_author();
            } else if !byline.is_empty() && self.rng.gen_bool(cfg.repeat_coauthor_probability) {
                let anchor = *byline.choose(&mut self.rng).unwrap();
                match self.coauthors[anchor as usize].choose(&mut self.rng) {
                    Some(&c) => c,
                    None => continue,
                }
            } else if let Some(&a) = self.authorship_tickets.choose(&mut self.rng) {
                a
            } else {
                self.rng.gen_range(0..self.authors.len() as u32)
            };
            if !byline.contains(&candidate) {
                return candidate;
            }
        }
        if room {
            return self.new_author();
        }
        // population exhausted and random picks keep colliding
        let start = self.rng.gen_range(0..self.authors.len() as u32);
        (0..self.authors.len() as u32)
            .map(|i| (start + i) % self.authors.len() as u32)
            .find(|a| !byline.contains(a))
            .expect("cutoff <= population leaves a free author")
    }

    fn pick_reference(&mut self, cfg: &GenConfig, byline: &[u32], date: &PubDate, chosen: &[u32]) -> Option<u32> {
        let existing = self.dates.len() as u32;
        if existing == 0 {
            return None;
        }
        for _ in 0..64 {
            let u: f64 = self.rng.gen();
            let candidate = if u < cfg.self_cite_propensity {
                let a = *byline.choose(&mut self.rng).unwrap();
                match self.author_papers[a as usize].choose(&mut self.rng) {
                    Some(&p) => p,
                    None => continue,
                }
            } else if u < cfg.self_cite_propensity + cfg.coauthor_cite_propensity {
                let a = *byline.choose(&mut self.rng).unwrap();
                let Some(&c) = self.coauthors[a as usize].choose(&mut self.rng) else { continue };
                match self.author_papers[c as usize].choose(&mut self.rng) {
                    Some(&p) => p,
                    None => continue,
                }
            } else {
                let edges = self.citation_tickets.len() as f64;
                let p = if self.rng.gen::<f64>() * (edges + cfg.attachment_offset * existing as f64) < edges {
                    *self.citation_tickets.choose(&mut self.rng).unwrap()
                } else {
                    self.rng.gen_range(0..existing)
                };
                if let Some(h) = cfg.aging_halflife_years {
                    let age = date.years_since(&self.dates[p as usize]).max(0.0);
                    if !self.rng.gen_bool(0.5f64.powf(age / h)) {
                        continue;
                    }
                }
                p
            };
            if !chosen.contains(&candidate) {
                return Some(candidate);
            }
        }
        None
    }
}

fn reference_count(rng: &mut ChaCha8Rng, mean: f64) -> usize {
    let base = mean.floor();
    base as usize + rng.gen_bool(mean - base) as usize
}

fn random_dates(rng: &mut ChaCha8Rng, year: i32, n: usize) -> Vec<PubDate> {
    let first = chrono::NaiveDate::from_ymd_opt(year, 1, 1).unwrap();
    let days = chrono::NaiveDate::from_ymd_opt(year + 1, 1, 1).unwrap().signed_duration_since(first).num_days();
    let mut offsets: Vec<i64> = (0..n).map(|_| rng.gen_range(0..days)).collect();
    offsets.sort_unstable();
    offsets.into_iter().map(|d| PubDate::from_naive(first + chrono::Duration::days(d))).collect()
}

/// Builds a clean corpus, then applies `config.name_noise`.
pub fn generate(config: &GenConfig) -> Result<GoldCorpus, SynthError> {
    config.validate()?;
    let cfg = config;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let institutions = institution_names(&mut rng, cfg.institutions);
    let sizes: Vec<f64> = (1..=cfg.group_size.cutoff).map(|s| (s as f64).powf(-cfg.group_size.exponent)).collect();
    let size_dist = WeightedIndex::new(&sizes).map_err(|e| invalid("group_size", e.to_string()))?;
    let mut st = State {
        rng,
        authors: Vec::new(),
        used_names: HashSet::new(),
        institutions,
        authorship_tickets: Vec::new(),
        coauthors: Vec::new(),
        author_papers: Vec::new(),
        citation_tickets: Vec::new(),
        dates: Vec::new(),
        bylines: Vec::new(),
    };
    let mut papers = Vec::new();
    let mut gold = GoldLabels::default();

    for (year, count) in cfg.papers_per_year() {
        let dates = random_dates(&mut st.rng, year, count);
        for date in dates {
            let index = st.dates.len() as u32;
            let id = format!("P{:06}", index + 1);
            let size = size_dist.sample(&mut st.rng) + 1;
            let mut byline = Vec::with_capacity(size);
            for _ in 0..size {
                let a = st.pick_author(cfg, &byline);
                byline.push(a);
            }

            let wanted = reference_count(&mut st.rng, cfg.mean_references).min(index as usize);
            let mut refs = Vec::with_capacity(wanted);
            for _ in 0..wanted {
                if let Some(r) = st.pick_reference(cfg, &byline, &date, &refs) {
                    refs.push(r);
                }
            }

            for &a in &byline {
                if st.rng.gen_bool(cfg.affiliation_move_probability) {
                    let to = st.institutions.choose(&mut st.rng).unwrap().clone();
                    st.authors[a as usize].affiliation = to;
                }
            }
            let journal = cfg.journals.choose(&mut st.rng).unwrap().clone();
            let mentions = byline
                .iter()
                .enumerate()
                .map(|(slot, &a)| {
                    let author = &st.authors[a as usize];
                    gold.insert(MentionId::new(id.clone(), slot), author.label.clone());
                    AuthorMention { raw_name: author.canonical_name(), affiliations: vec![author.affiliation.clone()] }
                })
                .collect();
            papers.push(PaperRecord {
                id,
                title: format!("Synthetic paper {}", index + 1),
                pub_date: date,
                journal,
                mentions,
                cited_ids: refs.iter().map(|&r| format!("P{:06}", r + 1)).collect(),
            });

            for &a in &byline {
                st.authorship_tickets.push(a);
                st.author_papers[a as usize].push(index);
                st.coauthors[a as usize].extend(byline.iter().filter(|&&b| b != a));
            }
            st.citation_tickets.extend(&refs);
            st.dates.push(date);
            st.bylines.push(byline);
        }
    }

    let corpus = RawCorpus::from_papers(papers).expect("generated ids are unique");
    let clean = GoldCorpus { corpus, gold, authors: st.authors, config: cfg.clone(), noise: NoiseStats::default() };
    let noise = cfg.name_noise;
    Ok(corrupt_names(clean, &noise))
}

/// Perturbs mention strings; gold labels are untouched.
pub fn corrupt_names(mut gc: GoldCorpus, noise: &NameNoise) -> GoldCorpus {
    let mut rng = ChaCha8Rng::seed_from_u64(gc.config.seed);
    rng.set_stream(1);
    let mut stats = gc.noise;

    let mut surnames: Vec<String> = gc.authors.iter().map(|a| a.surname.clone()).collect();
    if gc.authors.len() > 1 {
        for (i, surname) in surnames.iter_mut().enumerate() {
            if rng.gen_bool(noise.surname_collision_probability) {
                let own = gc.authors[i].surname.clone();
                let other = (0..16)
                    .map(|_| rng.gen_range(0..gc.authors.len()))
                    .find(|&j| gc.authors[j].surname != own);
                if let Some(j) = other {
                    *surname = gc.authors[j].surname.clone();
                    stats.collided_authors += 1;
                }
            }
        }
    }

    let index_of = |label: &str| label[1..].parse::<usize>().expect("gold label") - 1;
    for p in &mut gc.corpus.papers {
        for (slot, m) in p.mentions.iter_mut().enumerate() {
            let label = gc.gold.get(&MentionId::new(p.id.clone(), slot)).expect("gold covers every mention");
            let i = index_of(label);
            let a = &gc.authors[i];
            let initial = rng.gen_bool(noise.initial_probability);
            let drop_middle = rng.gen_bool(noise.middle_drop_probability);
            stats.initialed_mentions += initial as usize;
            stats.middle_dropped_mentions += drop_middle as usize;
            if !initial && !drop_middle && surnames[i] == a.surname {
                continue;
            }
            let given = if initial { format!("{}.", &a.given[..1]) } else { a.given.clone() };
            m.raw_name = if drop_middle {
                format!("{given} {}", surnames[i])
            } else {
                format!("{given} {}. {}", a.middle, surnames[i])
            };
        }
    }
    gc.noise = stats;
    gc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ingest::cull;

    fn small() -> GenConfig {
        GenConfig { start_year: 1980, end_year: 1999, initial_papers_per_year: 3.0, ..Default::default() }
    }

    fn bytes(gc: &GoldCorpus) -> Vec<u8> {
        let mut buf = Vec::new();
        gc.corpus.write_jsonl(&mut buf).unwrap();
        gc.gold.write_jsonl(&mut buf).unwrap();
        buf
    }

    #[test]
    fn deterministic_for_a_seed() {
        assert_eq!(bytes(&generate(&small()).unwrap()), bytes(&generate(&small()).unwrap()));
        let other = GenConfig { seed: 2, ..small() };
        assert_ne!(bytes(&generate(&small()).unwrap()), bytes(&generate(&other).unwrap()));
    }

    #[test]
    fn passes_cull_untouched() {
        for seed in 0..5 {
            let gc = generate(&GenConfig { seed, ..small() }).unwrap();
            let n = gc.corpus.len();
            let (c, report) = cull(gc.corpus, 50);
            assert_eq!(report.removals(), 0);
            assert_eq!(c.len(), n);
        }
    }

    #[test]
    fn gold_covers_every_mention() {
        let gc = generate(&small()).unwrap();
        let mentions: usize = gc.corpus.papers.iter().map(|p| p.mentions.len()).sum();
        assert_eq!(gc.gold.len(), mentions);
    }

    #[test]
    fn zero_references_means_no_citations() {
        let gc = generate(&GenConfig { mean_references: 0.0, ..small() }).unwrap();
        assert!(gc.corpus.papers.iter().all(|p| p.cited_ids.is_empty()));
    }

    #[test]
    fn zero_noise_is_identity() {
        let gc = generate(&small()).unwrap();
        let before = bytes(&gc);
        assert_eq!(bytes(&corrupt_names(gc, &NameNoise::default())), before);
    }

    #[test]
    fn full_initialing() {
        let gc = generate(&small()).unwrap();
        let noisy = corrupt_names(gc, &NameNoise { initial_probability: 1.0, ..Default::default() });
        for p in &noisy.corpus.papers {
            for m in &p.mentions {
                let first = m.raw_name.split(' ').next().unwrap();
                assert_eq!(first.len(), 2, "{}", m.raw_name);
                assert!(first.ends_with('.'));
            }
        }
    }

    #[test]
    fn infeasible_configs_name_the_field() {
        let bad = GenConfig { author_population: 3, ..small() };
        let err = generate(&bad).unwrap_err().to_string();
        assert!(err.contains("group_size.cutoff"), "{err}");
        let bad = GenConfig { new_author_probability: 1.5, ..small() };
        assert!(generate(&bad).unwrap_err().to_string().contains("new_author_probability"));
    }

    #[test]
    fn yearly_counts_follow_the_growth_curve() {
        let cfg = GenConfig { start_year: 2000, end_year: 2009, initial_papers_per_year: 1.0, papers_growth_rate: 1e-9, ..small() };
        assert!(cfg.papers_per_year().iter().all(|&(_, n)| n == 1));
    }
}
