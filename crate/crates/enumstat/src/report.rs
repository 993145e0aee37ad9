//! Human- and machine-readable outputs: rankings, the grouped age
//! listing, the statistics report, and the enumerator listing.

use std::fmt;

use serde_json::json;
use thiserror::Error;

use crate::corpus::{render_record_line, Corpus, FellowRecord};
use crate::poly::{print_grouped, Polynomial};
use crate::stats::{summary_to_json, DisplayProfile, StatsSummary};

/// Axis a ranking sorts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RankKey {
    Age,
    Publications,
    Citations,
}

impl RankKey {
    pub fn label(self) -> &'static str {
        match self {
            RankKey::Age => "age",
            RankKey::Publications => "publications",
            RankKey::Citations => "citations",
        }
    }

    fn value(self, record: &FellowRecord) -> u64 {
        match self {
            RankKey::Age => record.age as u64,
            RankKey::Publications => record.publications,
            RankKey::Citations => record.citations,
        }
    }

    /// Tie-break axis: the other bibliometric count, ascending.
    fn tiebreak(self, record: &FellowRecord) -> u64 {
        match self {
            RankKey::Age | RankKey::Citations => record.publications,
            RankKey::Publications => record.citations,
        }
    }
}

impl fmt::Display for RankKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankEntry {
    pub rank: usize,
    pub record: FellowRecord,
}

/// Records sharing one key value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankGroup {
    pub value: u64,
    pub records: Vec<FellowRecord>,
}

/// A corpus permutation sorted on one axis, carried both flat (with
/// 1-based ranks) and grouped by key value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ranking {
    pub key: RankKey,
    pub entries: Vec<RankEntry>,
    pub groups: Vec<RankGroup>,
}

/// Sort descending on the key; break ties ascending on the other
/// bibliometric axis, then by name. An empty corpus yields an empty
/// ranking.
pub fn rank_records(corpus: &Corpus, key: RankKey) -> Ranking {
    let mut sorted: Vec<FellowRecord> = corpus.records.clone();
    sorted.sort_by(|x, y| {
        key.value(y)
            .cmp(&key.value(x))
            .then_with(|| key.tiebreak(x).cmp(&key.tiebreak(y)))
            .then_with(|| x.name.cmp(&y.name))
    });

    let mut groups: Vec<RankGroup> = Vec::new();
    for record in &sorted {
        let value = key.value(record);
        match groups.last_mut() {
            Some(group) if group.value == value => group.records.push(record.clone()),
            _ => groups.push(RankGroup {
                value,
                records: vec![record.clone()],
            }),
        }
    }

    Ranking {
        key,
        entries: sorted
            .into_iter()
            .enumerate()
            .map(|(i, record)| RankEntry { rank: i + 1, record })
            .collect(),
        groups,
    }
}

/// The age listing in grouped form: ages descending, group sizes
/// explicit, ties resolved as in `rank_records`.
pub fn grouped_age_listing(corpus: &Corpus) -> Ranking {
    rank_records(corpus, RankKey::Age)
}

/// Flat ranking text: `RANK. NAME (BIRTH-DEATH) PUBS;CITES`, one entry
/// per line. The lines themselves stay inside the record-line grammar.
pub fn ranking_to_text(ranking: &Ranking) -> String {
    ranking
        .entries
        .iter()
        .map(|e| format!("{}. {}", e.rank, render_record_line(&e.record)))
        .collect::<Vec<_>>()
        .join("\n")
}

/// Grouped listing text: a count header per key value, then the
/// group's records indented.
pub fn grouped_listing_to_text(ranking: &Ranking) -> String {
    let mut lines = Vec::new();
    for group in &ranking.groups {
        let noun = if group.records.len() == 1 { "record" } else { "records" };
        lines.push(format!("{} {} ({} {})", ranking.key, group.value, group.records.len(), noun));
        for record in &group.records {
            lines.push(format!("  {}", render_record_line(record)));
        }
    }
    lines.join("\n")
}

fn record_json(record: &FellowRecord) -> serde_json::Value {
    json!({
        "name": record.name,
        "birth": record.birth_year,
        "death": record.death_year,
        "age": record.age,
        "publications": record.publications,
        "citations": record.citations,
    })
}

/// Ranking as JSON: a list of rank objects.
pub fn ranking_to_json(ranking: &Ranking) -> serde_json::Value {
    let entries: Vec<serde_json::Value> = ranking
        .entries
        .iter()
        .map(|e| {
            let mut obj = record_json(&e.record);
            obj["rank"] = json!(e.rank);
            obj
        })
        .collect();
    json!({ "key": ranking.key.label(), "entries": entries })
}

/// Grouped ranking as JSON: one object per key value with its count.
pub fn grouped_to_json(ranking: &Ranking) -> serde_json::Value {
    let groups: Vec<serde_json::Value> = ranking
        .groups
        .iter()
        .map(|g| {
            json!({
                "value": g.value,
                "count": g.records.len(),
                "records": g.records.iter().map(record_json).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({ "key": ranking.key.label(), "groups": groups })
}

/// Output flavor for reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Json,
}

/// The statistics report: one line per axis with its four statistics,
/// then the three correlations. The JSON flavor follows the summary
/// schema. Byte output is deterministic for a fixed summary.
pub fn theorem_report(summary: &StatsSummary, format: ReportFormat) -> String {
    let profile = DisplayProfile::default();
    match format {
        ReportFormat::Json => {
            let value = summary_to_json(summary, &profile);
            serde_json::to_string_pretty(&value).expect("summary serializes")
        }
        ReportFormat::Text => {
            let json = summary_to_json(summary, &profile);
            let axis_line = |label: &str, key: &str| {
                format!(
                    "{label}: mean {}, standard deviation {}, skewness {}, kurtosis {}",
                    json[key]["mean"].as_str().unwrap(),
                    json[key]["std_dev"].as_str().unwrap(),
                    json[key]["skewness"].as_str().unwrap(),
                    json[key]["kurtosis"].as_str().unwrap(),
                )
            };
            let mut out = format!("population: {} records\n\n", summary.population);
            out.push_str(&axis_line("age at death", "age"));
            out.push('\n');
            out.push_str(&axis_line("publications", "publications"));
            out.push('\n');
            out.push_str(&axis_line("citations", "citations"));
            out.push('\n');
            out.push_str(&format!(
                "correlations: age-publications {}, age-citations {}, publications-citations {}",
                json["correlations"]["age_pub"].as_str().unwrap(),
                json["correlations"]["age_cit"].as_str().unwrap(),
                json["correlations"]["pub_cit"].as_str().unwrap(),
            ));
            out
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReportError {
    #[error("polynomial has non-integer exponents; only uncentered enumerators can be listed")]
    NonIntegerExponents,
}

/// The enumerator in canonical grammar, one line per ascending
/// a-exponent group.
pub fn lemma_listing(poly: &Polynomial) -> Result<String, ReportError> {
    if !poly.all_integer_exponents() {
        return Err(ReportError::NonIntegerExponents);
    }
    Ok(print_grouped(poly))
}
