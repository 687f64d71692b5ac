use serde::{Deserialize, Serialize};

use super::{Ccdf, MetricsError, TIE_EPS};
use crate::graph::HybridGraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Credit {
    /// One unit per paper.
    Whole,
    /// `1 / byline size` per paper.
    Fractional,
}

/// Credit per author, indexed like the graph's authors.
pub fn author_credit(g: &HybridGraph, credit: Credit) -> Vec<f64> {
    let mut out = vec![0.0; g.author_count()];
    for p in g.papers() {
        let share = match credit {
            Credit::Whole => 1.0,
            Credit::Fractional => 1.0 / p.authors.len() as f64,
        };
        for &a in &p.authors {
            out[a as usize] += share;
        }
    }
    out
}

/// Fraction of authors whose credit exceeds x, tabulated at x = 0 and at
/// every distinct credit value.
pub fn productivity_ccdf(g: &HybridGraph, credit: Credit) -> Ccdf {
    let mut values = author_credit(g, credit);
    if values.is_empty() {
        return Ccdf::default();
    }
    values.sort_by(f64::total_cmp);
    let n = values.len() as f64;
    let mut xs = vec![0.0];
    for &v in &values {
        if v > xs[xs.len() - 1] + TIE_EPS {
            xs.push(v);
        }
    }
    let points = xs
        .into_iter()
        .map(|x| {
            let not_above = values.partition_point(|&v| v <= x + TIE_EPS);
            (x, (values.len() - not_above) as f64 / n)
        })
        .collect();
    Ccdf { points }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LorenzCurve {
    /// `(fraction of authors, fraction of credit they hold)`, most prolific
    /// first, from (0, 0) to (1, 1).
    pub points: Vec<(f64, f64)>,
}

/// Lorenz curve with authors ordered by descending credit (ties by author
/// id), and the Gini coefficient, twice the area between the curve and the
/// diagonal under the trapezoid rule.
pub fn lorenz_and_gini(g: &HybridGraph, credit: Credit) -> Result<(LorenzCurve, f64), MetricsError> {
    let values = author_credit(g, credit);
    if values.is_empty() {
        return Err(MetricsError::NoAuthors);
    }
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| {
        values[b].total_cmp(&values[a]).then_with(|| g.author_id(a as u32).cmp(g.author_id(b as u32)))
    });
    let sorted: Vec<f64> = order.iter().map(|&a| values[a]).collect();
    let total: f64 = sorted.iter().sum();
    if total <= 0.0 {
        return Err(MetricsError::ZeroCredit);
    }
    let n = sorted.len();
    let mut points = Vec::with_capacity(n + 1);
    points.push((0.0, 0.0));
    let mut acc = 0.0;
    for (i, &v) in sorted.iter().enumerate() {
        acc += v;
        let q = if i + 1 == n { 1.0 } else { acc / total };
        points.push(((i + 1) as f64 / n as f64, q));
    }
    // The trapezoid area reduces to sum_j (n + 1 - 2j) v_j / (n T) with j
    // 1-based. Pairing j with n + 1 - j keeps every term non-negative and
    // makes equal credit give exactly zero.
    let mut num = 0.0;
    for j in 0..n / 2 {
        num += (n - 1 - 2 * j) as f64 * (sorted[j] - sorted[n - 1 - j]);
    }
    Ok((LorenzCurve { points }, num / (n as f64 * total)))
}
