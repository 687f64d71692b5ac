//! Publication dates with optional month/day precision.
//!
//! Two dates are compared at the finest granularity both of them carry. A
//! year-only date is therefore *equal* to every date in the same year, which
//! makes `precedes` a strict partial order rather than a total one. Sorting
//! uses [`PubDate::earliest_key`] / [`PubDate::latest_key`], which embed the
//! partial order into a total one in the two directions needed for
//! "does any of these dates precede X" and "does any of these dates follow X"
//! queries.

use std::fmt;
use std::str::FromStr;

use chrono::{Datelike, NaiveDate};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub const DAYS_PER_YEAR: f64 = 365.25;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PubDate {
    year: i32,
    month: Option<u8>,
    day: Option<u8>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid date `{0}` (expected YYYY, YYYY-MM or YYYY-MM-DD)")]
pub struct DateParseError(pub String);

impl PubDate {
    pub fn year(year: i32) -> Self {
        Self { year, month: None, day: None }
    }

    pub fn year_month(year: i32, month: u8) -> Option<Self> {
        (1..=12).contains(&month).then_some(Self { year, month: Some(month), day: None })
    }

    pub fn ymd(year: i32, month: u8, day: u8) -> Option<Self> {
        NaiveDate::from_ymd_opt(year, month as u32, day as u32)?;
        Some(Self { year, month: Some(month), day: Some(day) })
    }

    pub fn get_year(&self) -> i32 {
        self.year
    }

    pub fn month(&self) -> Option<u8> {
        self.month
    }

    pub fn day(&self) -> Option<u8> {
        self.day
    }

    pub fn has_day(&self) -> bool {
        self.day.is_some()
    }

    fn naive(&self) -> Option<NaiveDate> {
        NaiveDate::from_ymd_opt(self.year, self.month? as u32, self.day? as u32)
    }

    /// Strictly earlier, compared at the coarsest granularity common to both.
    pub fn precedes(&self, other: &PubDate) -> bool {
        if self.year != other.year {
            return self.year < other.year;
        }
        match (self.month, other.month) {
            (Some(a), Some(b)) if a != b => a < b,
            (Some(_), Some(_)) => matches!((self.day, other.day), (Some(a), Some(b)) if a < b),
            _ => false,
        }
    }

    pub fn follows(&self, other: &PubDate) -> bool {
        other.precedes(self)
    }

    /// Neither precedes the other.
    pub fn coincides(&self, other: &PubDate) -> bool {
        !self.precedes(other) && !other.precedes(self)
    }

    /// Total-order key placing unknown month/day *after* known ones within a
    /// year. The minimum of a set under this key precedes `x` iff any member
    /// of the set precedes `x`.
    pub fn earliest_key(&self) -> (i32, u8, u8) {
        (self.year, self.month.unwrap_or(13), self.day.unwrap_or(32))
    }

    /// Total-order key placing unknown month/day *before* known ones. The
    /// maximum of a set under this key follows `x` iff any member follows `x`.
    pub fn latest_key(&self) -> (i32, u8, u8) {
        (self.year, self.month.unwrap_or(0), self.day.unwrap_or(0))
    }

    /// Elapsed years from `earlier` to `self`: day-precise when both carry a
    /// day, whole years otherwise.
    pub fn years_since(&self, earlier: &PubDate) -> f64 {
        match (self.naive(), earlier.naive()) {
            (Some(a), Some(b)) => (a - b).num_days() as f64 / DAYS_PER_YEAR,
            _ => (self.year - earlier.year) as f64,
        }
    }

    pub fn from_naive(date: NaiveDate) -> Self {
        Self {
            year: date.year(),
            month: Some(date.month() as u8),
            day: Some(date.day() as u8),
        }
    }
}

impl FromStr for PubDate {
    type Err = DateParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || DateParseError(s.to_string());
        let parts: Vec<&str> = s.trim().split('-').collect();
        let num = |p: &str, len: usize| -> Result<u32, DateParseError> {
            if p.len() != len || !p.bytes().all(|b| b.is_ascii_digit()) {
                return Err(err());
            }
            p.parse().map_err(|_| err())
        };
        match parts.as_slice() {
            [y] => Ok(Self::year(num(y, 4)? as i32)),
            [y, m] => Self::year_month(num(y, 4)? as i32, num(m, 2)? as u8).ok_or_else(err),
            [y, m, d] => {
                Self::ymd(num(y, 4)? as i32, num(m, 2)? as u8, num(d, 2)? as u8).ok_or_else(err)
            }
            _ => Err(err()),
        }
    }
}

impl fmt::Display for PubDate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:04}", self.year)?;
        if let Some(m) = self.month {
            write!(f, "-{m:02}")?;
            if let Some(d) = self.day {
                write!(f, "-{d:02}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for PubDate {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PubDate {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
