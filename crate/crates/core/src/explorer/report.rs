use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::classify::{CensusRecord, EqualityClass};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SummaryKey {
    pub d: usize,
    pub field: String,
    pub equality_class: EqualityClass,
    pub equality_class_star: EqualityClass,
    pub bipartite: bool,
    pub dual_bipartite: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummaryRow {
    #[serde(flatten)]
    pub key: SummaryKey,
    pub count: u64,
}

/// Record counts grouped by diameter, field, equality classes and flags.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: u64,
    pub rows: Vec<SummaryRow>,
}

/// Deterministic fold of a record stream: rows are sorted by key.
pub fn census_report<'a>(records: impl IntoIterator<Item = &'a CensusRecord>) -> Summary {
    let mut counts: BTreeMap<SummaryKey, u64> = BTreeMap::new();
    let mut total = 0;
    for r in records {
        total += 1;
        let key = SummaryKey {
            d: r.d,
            field: r.field.clone(),
            equality_class: r.equality_class,
            equality_class_star: r.equality_class_star,
            bipartite: r.bipartite,
            dual_bipartite: r.dual_bipartite,
        };
        *counts.entry(key).or_default() += 1;
    }
    Summary {
        total,
        rows: counts
            .into_iter()
            .map(|(key, count)| SummaryRow { key, count })
            .collect(),
    }
}

impl Summary {
    /// Aligned plain-text table.
    pub fn to_table(&self) -> String {
        let header = [
            "d",
            "field",
            "Upsilon",
            "Upsilon*",
            "bipartite",
            "dual_bipartite",
            "count",
        ];
        let body: Vec<[String; 7]> = self
            .rows
            .iter()
            .map(|r| {
                [
                    r.key.d.to_string(),
                    r.key.field.clone(),
                    r.key.equality_class.name().to_string(),
                    r.key.equality_class_star.name().to_string(),
                    r.key.bipartite.to_string(),
                    r.key.dual_bipartite.to_string(),
                    r.count.to_string(),
                ]
            })
            .collect();
        let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
        for row in &body {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.len());
            }
        }
        let mut out = String::new();
        let line = |cells: Vec<&str>, out: &mut String| {
            let parts: Vec<String> = cells
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:<w$}"))
                .collect();
            let _ = writeln!(out, "{}", parts.join("  ").trim_end());
        };
        line(header.to_vec(), &mut out);
        for row in &body {
            line(row.iter().map(String::as_str).collect(), &mut out);
        }
        let _ = writeln!(out, "total {}", self.total);
        out
    }
}
