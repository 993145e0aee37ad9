//! Record data model and ingestion.
//!
//! Two on-disk formats are supported:
//! - record-lines: one `NAME (BIRTH-DEATH) PUBS;CITES` per non-blank line,
//!   `#` comment lines allowed;
//! - CSV with the fixed header `name,birth,death,publications,citations`.

use std::collections::HashMap;
use std::fmt;
use std::io::Read;

use thiserror::Error;

/// Fixed CSV header for the CSV ingestion format.
pub const CSV_HEADER: [&str; 5] = ["name", "birth", "death", "publications", "citations"];

/// One deceased fellow: display name plus the numeric triple the
/// statistics are computed from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FellowRecord {
    pub name: String,
    pub birth_year: i32,
    pub death_year: i32,
    /// Years lived, always `death_year - birth_year`.
    pub age: i32,
    pub publications: u64,
    pub citations: u64,
}

impl FellowRecord {
    /// Checked constructor; computes the age and rejects `death <= birth`.
    pub fn new(
        name: impl Into<String>,
        birth_year: i32,
        death_year: i32,
        publications: u64,
        citations: u64,
    ) -> Result<Self, RecordError> {
        let name = name.into();
        if name.is_empty() {
            return Err(RecordError::EmptyName);
        }
        if death_year <= birth_year {
            return Err(RecordError::DeathNotAfterBirth {
                birth: birth_year,
                death: death_year,
            });
        }
        Ok(FellowRecord {
            name,
            birth_year,
            death_year,
            age: death_year - birth_year,
            publications,
            citations,
        })
    }

    /// The key two records may never share: names are display-only, so
    /// identity is the numeric quadruple.
    pub fn identity_key(&self) -> (i32, i32, u64, u64) {
        (self.birth_year, self.death_year, self.publications, self.citations)
    }
}

/// The statistical population: an ordered collection of records.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Corpus {
    pub records: Vec<FellowRecord>,
    pub source_label: String,
}

impl Corpus {
    pub fn new(records: Vec<FellowRecord>, source_label: impl Into<String>) -> Self {
        Corpus {
            records,
            source_label: source_label.into(),
        }
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }
}

/// Why a single record failed to parse or construct.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RecordError {
    EmptyName,
    MissingYears,
    UnclosedYears,
    BadYear(String),
    MissingSeparator,
    BadCount(String),
    DeathNotAfterBirth { birth: i32, death: i32 },
}

impl fmt::Display for RecordError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RecordError::EmptyName => write!(f, "empty name"),
            RecordError::MissingYears => write!(f, "missing '(' before the year range"),
            RecordError::UnclosedYears => write!(f, "missing ')' after the year range"),
            RecordError::BadYear(s) => write!(f, "malformed year {s:?}"),
            RecordError::MissingSeparator => write!(f, "missing ';' between counts"),
            RecordError::BadCount(s) => write!(f, "non-numeric count {s:?}"),
            RecordError::DeathNotAfterBirth { birth, death } => {
                write!(f, "death year {death} is not after birth year {birth}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CorpusError {
    #[error("malformed record {line:?}: {reason}")]
    Record { line: String, reason: RecordError },
    #[error("line {line_number}: malformed record {line:?}: {reason}")]
    RecordAt {
        line_number: u64,
        line: String,
        reason: RecordError,
    },
    #[error("lines {first_line} and {second_line}: duplicate identity key (birth {birth}, death {death}, publications {publications}, citations {citations})")]
    DuplicateIdentity {
        birth: i32,
        death: i32,
        publications: u64,
        citations: u64,
        first_line: u64,
        second_line: u64,
    },
    #[error("bad csv header {got:?}: expected \"name,birth,death,publications,citations\"")]
    CsvHeader { got: String },
    #[error("csv: {0}")]
    Csv(String),
    #[error("i/o: {0}")]
    Io(String),
}

/// Input file format for [`load_corpus`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SourceFormat {
    RecordLines,
    Csv,
}

impl SourceFormat {
    /// Pick a format from a file extension; `.csv` means CSV, anything
    /// else (including `.records`) means record-lines.
    pub fn detect(path: &std::path::Path) -> SourceFormat {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("csv") => SourceFormat::Csv,
            _ => SourceFormat::RecordLines,
        }
    }
}

fn collapse_whitespace(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}

/// Strip an optional leading `N.` rank prefix, as used by ranked listings.
fn strip_rank_prefix(line: &str) -> &str {
    let trimmed = line.trim_start();
    let digits = trimmed.chars().take_while(|c| c.is_ascii_digit()).count();
    if digits > 0 {
        if let Some(rest) = trimmed[digits..].strip_prefix('.') {
            // Only a rank if a name still follows; "1925. something" inside
            // a name never occurs at the start of a record line.
            return rest;
        }
    }
    line
}

fn parse_year(s: &str) -> Result<i32, RecordError> {
    let t = s.trim();
    if t.is_empty() || !t.chars().all(|c| c.is_ascii_digit()) {
        return Err(RecordError::BadYear(t.to_string()));
    }
    t.parse().map_err(|_| RecordError::BadYear(t.to_string()))
}

fn parse_count(s: &str) -> Result<u64, RecordError> {
    let t = s.trim();
    if t.is_empty() || !t.chars().all(|c| c.is_ascii_digit()) {
        return Err(RecordError::BadCount(t.to_string()));
    }
    t.parse().map_err(|_| RecordError::BadCount(t.to_string()))
}

fn parse_record_fields(line: &str) -> Result<FellowRecord, RecordError> {
    let rest = strip_rank_prefix(line);
    let open = rest.rfind('(').ok_or(RecordError::MissingYears)?;
    let name = collapse_whitespace(&rest[..open]);
    let tail = &rest[open + 1..];
    let close = tail.find(')').ok_or(RecordError::UnclosedYears)?;
    let years = &tail[..close];
    let counts = &tail[close + 1..];

    let (birth_str, death_str) = years
        .split_once('-')
        .ok_or_else(|| RecordError::BadYear(years.trim().to_string()))?;
    let birth = parse_year(birth_str)?;
    let death = parse_year(death_str)?;

    let (pubs_str, cites_str) = counts.split_once(';').ok_or(RecordError::MissingSeparator)?;
    let publications = parse_count(pubs_str)?;
    let citations = parse_count(cites_str)?;

    FellowRecord::new(name, birth, death, publications, citations)
}

/// Parse a single record line of the form
/// `NAME ( BIRTH-DEATH ) PUBS;CITES`, with arbitrary internal whitespace
/// and an optional leading `N.` rank prefix. Whitespace inside the name
/// collapses to single spaces.
pub fn parse_record_line(line: &str) -> Result<FellowRecord, CorpusError> {
    parse_record_fields(line).map_err(|reason| CorpusError::Record {
        line: line.trim().to_string(),
        reason,
    })
}

/// Canonical renderer; `parse_record_line` inverts it exactly.
pub fn render_record_line(record: &FellowRecord) -> String {
    format!(
        "{} ({}-{}) {};{}",
        record.name, record.birth_year, record.death_year, record.publications, record.citations
    )
}

fn load_record_lines(text: &str) -> Result<Vec<(u64, FellowRecord)>, CorpusError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_number = (i + 1) as u64;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let record = parse_record_fields(line).map_err(|reason| CorpusError::RecordAt {
            line_number,
            line: line.to_string(),
            reason,
        })?;
        out.push((line_number, record));
    }
    Ok(out)
}

fn load_csv(text: &str) -> Result<Vec<(u64, FellowRecord)>, CorpusError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());

    let headers = reader.headers().map_err(|e| CorpusError::Csv(e.to_string()))?;
    let got: Vec<&str> = headers.iter().collect();
    if got != CSV_HEADER {
        return Err(CorpusError::CsvHeader { got: got.join(",") });
    }

    let mut out = Vec::new();
    for row in reader.records() {
        let row = row.map_err(|e| CorpusError::Csv(e.to_string()))?;
        let line_number = row.position().map(|p| p.line()).unwrap_or(0);
        let rendered = row.iter().collect::<Vec<_>>().join(",");
        let fail = |reason| CorpusError::RecordAt {
            line_number,
            line: rendered.clone(),
            reason,
        };
        if row.len() != 5 {
            return Err(fail(RecordError::MissingSeparator));
        }
        let name = collapse_whitespace(&row[0]);
        let birth = parse_year(&row[1]).map_err(fail)?;
        let death = parse_year(&row[2]).map_err(fail)?;
        let publications = parse_count(&row[3]).map_err(fail)?;
        let citations = parse_count(&row[4]).map_err(fail)?;
        let record = FellowRecord::new(name, birth, death, publications, citations).map_err(fail)?;
        out.push((line_number, record));
    }
    Ok(out)
}

/// Load a corpus from a byte stream, preserving input order. Any
/// unparseable non-comment line aborts with its line number; a duplicated
/// identity key aborts with both line numbers.
pub fn load_corpus<R: Read>(
    mut source: R,
    format: SourceFormat,
    source_label: impl Into<String>,
) -> Result<Corpus, CorpusError> {
    let mut text = String::new();
    source
        .read_to_string(&mut text)
        .map_err(|e| CorpusError::Io(e.to_string()))?;

    let numbered = match format {
        SourceFormat::RecordLines => load_record_lines(&text)?,
        SourceFormat::Csv => load_csv(&text)?,
    };

    let mut seen: HashMap<(i32, i32, u64, u64), u64> = HashMap::new();
    for (line_number, record) in &numbered {
        let key = record.identity_key();
        if let Some(&first_line) = seen.get(&key) {
            return Err(CorpusError::DuplicateIdentity {
                birth: key.0,
                death: key.1,
                publications: key.2,
                citations: key.3,
                first_line,
                second_line: *line_number,
            });
        }
        seen.insert(key, *line_number);
    }

    Ok(Corpus::new(
        numbered.into_iter().map(|(_, r)| r).collect(),
        source_label,
    ))
}

/// One violated rule found by [`validate_corpus`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationFinding {
    pub record_index: usize,
    pub name: String,
    pub rule: ValidationRule,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ValidationRule {
    AgeMismatch { age: i32, birth: i32, death: i32 },
    DeathNotAfterBirth { birth: i32, death: i32 },
    DuplicateIdentity { other_index: usize },
}

impl fmt::Display for ValidationFinding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "record {} ({}): ", self.record_index + 1, self.name)?;
        match &self.rule {
            ValidationRule::AgeMismatch { age, birth, death } => {
                write!(f, "age mismatch: age {age} but {death} - {birth} = {}", death - birth)
            }
            ValidationRule::DeathNotAfterBirth { birth, death } => {
                write!(f, "death year {death} is not after birth year {birth}")
            }
            ValidationRule::DuplicateIdentity { other_index } => {
                write!(f, "duplicate identity with record {}", other_index + 1)
            }
        }
    }
}

/// Check every record invariant and identity-key uniqueness. An empty
/// findings list means the corpus is valid.
pub fn validate_corpus(corpus: &Corpus) -> Vec<ValidationFinding> {
    let mut findings = Vec::new();
    let mut seen: HashMap<(i32, i32, u64, u64), usize> = HashMap::new();

    for (i, record) in corpus.records.iter().enumerate() {
        if record.death_year <= record.birth_year {
            findings.push(ValidationFinding {
                record_index: i,
                name: record.name.clone(),
                rule: ValidationRule::DeathNotAfterBirth {
                    birth: record.birth_year,
                    death: record.death_year,
                },
            });
        }
        if record.age != record.death_year - record.birth_year {
            findings.push(ValidationFinding {
                record_index: i,
                name: record.name.clone(),
                rule: ValidationRule::AgeMismatch {
                    age: record.age,
                    birth: record.birth_year,
                    death: record.death_year,
                },
            });
        }
        match seen.get(&record.identity_key()) {
            Some(&other_index) => findings.push(ValidationFinding {
                record_index: i,
                name: record.name.clone(),
                rule: ValidationRule::DuplicateIdentity { other_index },
            }),
            None => {
                seen.insert(record.identity_key(), i);
            }
        }
    }
    findings
}
