//! Author name normalization and compatibility.

use std::fmt;

use serde::{Deserialize, Serialize};
use unicode_normalization::char::is_combining_mark;
use unicode_normalization::UnicodeNormalization;

use super::DisambigError;

const SUFFIXES: &[&str] = &["jr", "sr", "ii", "iii", "iv"];
const PARTICLES: &[&str] = &["van", "von", "der", "den", "de", "del", "della", "di", "da", "du", "la", "le"];

/// A normalized name: surname plus ordered given-name tokens. A token of
/// length one is an initial.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NameKey {
    pub last: String,
    pub givens: Vec<String>,
}

impl NameKey {
    pub fn new(last: &str, givens: &[&str]) -> Self {
        Self { last: last.to_string(), givens: givens.iter().map(|s| s.to_string()).collect() }
    }

    pub fn first_initial(&self) -> Option<char> {
        self.givens.first().and_then(|g| g.chars().next())
    }

    /// Canonical text form, e.g. `john a smith`.
    pub fn full(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for NameKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for g in &self.givens {
            write!(f, "{g} ")?;
        }
        f.write_str(&self.last)
    }
}

/// Lower-cases, strips diacritics, and turns punctuation other than commas
/// and intra-word hyphens into token breaks. Apostrophes are dropped so that
/// `O'Brien` becomes `obrien`.
fn fold(raw: &str) -> String {
    let mut out = String::with_capacity(raw.len());
    for c in raw.nfkd().filter(|c| !is_combining_mark(*c)) {
        match c {
            '\'' | '\u{2019}' | '`' => {}
            ',' => out.push(','),
            '-' => out.push('-'),
            c if c.is_alphanumeric() => out.extend(c.to_lowercase()),
            _ => out.push(' '),
        }
    }
    out
}

fn tokens(part: &str) -> Vec<String> {
    part.split_whitespace()
        .map(|t| t.trim_matches('-').to_string())
        .filter(|t| !t.is_empty())
        .collect()
}

fn is_suffix(t: &str) -> bool {
    SUFFIXES.contains(&t)
}

/// Parses `First M. Last`, `Last, First M.` and `Last, First, Jr.` forms
/// into a [`NameKey`]. Hyphenated surnames stay a single token, lowercase
/// particles (`van`, `de`, ...) directly before the surname are joined onto
/// it, and generational suffixes are kept as trailing given tokens.
pub fn normalize_name(raw: &str) -> Result<NameKey, DisambigError> {
    let err = || DisambigError::UnparseableName(raw.to_string());
    let folded = fold(raw);

    let (mut surname_tokens, mut givens) = match folded.split_once(',') {
        Some((last, rest)) => {
            let givens: Vec<String> = rest.split(',').flat_map(tokens).collect();
            (tokens(last), givens)
        }
        None => {
            let mut all = tokens(&folded);
            let mut suffixes = Vec::new();
            while all.len() > 1 && all.last().is_some_and(|t| is_suffix(t)) {
                suffixes.insert(0, all.pop().unwrap());
            }
            let Some(last) = all.pop() else { return Err(err()) };
            let mut surname = vec![last];
            while all.len() > 1 && all.last().is_some_and(|t| PARTICLES.contains(&t.as_str())) {
                surname.insert(0, all.pop().unwrap());
            }
            all.extend(suffixes);
            (surname, all)
        }
    };

    // "Smith Jr., John"
    while surname_tokens.len() > 1 && surname_tokens.last().is_some_and(|t| is_suffix(t)) {
        givens.push(surname_tokens.pop().unwrap());
    }
    if surname_tokens.is_empty() {
        return Err(err());
    }
    Ok(NameKey { last: surname_tokens.join(" "), givens })
}

fn is_initial(t: &str) -> bool {
    t.chars().count() == 1
}

fn tokens_compatible(a: &str, b: &str) -> bool {
    a == b || (is_initial(a) && b.starts_with(a)) || (is_initial(b) && a.starts_with(b))
}

/// Surnames must be identical. First given names must agree (equal, or one
/// an initial of the other); the remaining tokens of the shorter list must
/// align in order with tokens of the longer one. A name with no given
/// tokens is compatible with any name sharing its surname.
pub fn names_compatible(a: &NameKey, b: &NameKey) -> bool {
    if a.last != b.last {
        return false;
    }
    let (short, long) = if a.givens.len() <= b.givens.len() {
        (&a.givens, &b.givens)
    } else {
        (&b.givens, &a.givens)
    };
    let Some(first) = short.first() else { return true };
    if !tokens_compatible(first, &long[0]) {
        return false;
    }
    // Earliest-match greedy is exact for subsequence alignment.
    let mut rest = long[1..].iter();
    short[1..].iter().all(|s| rest.any(|l| tokens_compatible(s, l)))
}
