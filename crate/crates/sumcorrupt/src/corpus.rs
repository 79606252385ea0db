// SPDX-License-Identifier: Apache-2.0

//! JSONL corpora in the CodeXGLUE code-to-text shape.
//!
//! A record keeps every field of its source line in the original order with
//! the original value bytes. Only `code` and the summary field are decoded;
//! writing re-encodes just the fields that were changed.

use std::collections::BTreeMap;
use std::fmt;
use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::de::{Deserializer, MapAccess, Visitor};
use serde::{Deserialize, Serialize};
use serde_json::value::RawValue;
use sumcorrupt_core::Language;

pub const CODE_FIELD: &str = "code";
pub const TOKENS_FIELD: &str = "code_tokens";

/// Which key held the reference summary.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SummaryField {
    Summary,
    Docstring,
}

impl SummaryField {
    pub fn key(self) -> &'static str {
        match self {
            SummaryField::Summary => "summary",
            SummaryField::Docstring => "docstring",
        }
    }
}

#[derive(Debug, Clone)]
pub struct CodeRecord {
    /// 0-based line number in the file the record was read from.
    pub index: usize,
    pub language: Language,
    code: String,
    summary: String,
    summary_field: SummaryField,
    fields: Vec<(String, Box<RawValue>)>,
}

impl PartialEq for CodeRecord {
    fn eq(&self, other: &Self) -> bool {
        self.index == other.index
            && self.language == other.language
            && self.summary_field == other.summary_field
            && self.fields.len() == other.fields.len()
            && self
                .fields
                .iter()
                .zip(&other.fields)
                .all(|((k1, v1), (k2, v2))| k1 == k2 && v1.get() == v2.get())
    }
}

impl Eq for CodeRecord {}

fn raw_string(s: &str) -> Box<RawValue> {
    let encoded = serde_json::to_string(s).expect("strings always encode");
    RawValue::from_string(encoded).expect("encoded string is valid JSON")
}

impl CodeRecord {
    pub fn new(index: usize, language: Language, code: &str, summary: &str) -> Self {
        CodeRecord {
            index,
            language,
            code: code.to_owned(),
            summary: summary.to_owned(),
            summary_field: SummaryField::Summary,
            fields: vec![
                (CODE_FIELD.to_owned(), raw_string(code)),
                ("summary".to_owned(), raw_string(summary)),
            ],
        }
    }

    pub fn code(&self) -> &str {
        &self.code
    }

    pub fn summary(&self) -> &str {
        &self.summary
    }

    pub fn summary_field(&self) -> SummaryField {
        self.summary_field
    }

    /// Same record with `code` replaced; every other field is untouched.
    pub fn with_code(&self, code: String) -> Self {
        let mut out = self.clone();
        out.set_raw(CODE_FIELD, raw_string(&code));
        out.code = code;
        out
    }

    /// Raw JSON of a field other than `code` and the summary.
    pub fn extra(&self, key: &str) -> Option<&RawValue> {
        self.extras().find(|(k, _)| *k == key).map(|(_, v)| v)
    }

    pub fn extras(&self) -> impl Iterator<Item = (&str, &RawValue)> {
        let summary = self.summary_field.key();
        self.fields
            .iter()
            .filter(move |(k, _)| k != CODE_FIELD && k != summary)
            .map(|(k, v)| (k.as_str(), v.as_ref()))
    }

    /// Replace a passthrough field in place, or append it.
    pub fn set_extra(&mut self, key: &str, value: &impl Serialize) -> serde_json::Result<()> {
        let value = serde_json::value::to_raw_value(value)?;
        self.set_raw(key, value);
        Ok(())
    }

    fn set_raw(&mut self, key: &str, value: Box<RawValue>) {
        match self.fields.iter_mut().find(|(k, _)| k == key) {
            Some(slot) => slot.1 = value,
            None => self.fields.push((key.to_owned(), value)),
        }
    }

    /// One JSON object, no trailing newline.
    pub fn to_json_line(&self) -> String {
        let mut out = String::with_capacity(self.code.len() * 2 + 64);
        out.push('{');
        for (i, (k, v)) in self.fields.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push_str(&serde_json::to_string(k).expect("strings always encode"));
            out.push(':');
            out.push_str(v.get());
        }
        out.push('}');
        out
    }

    /// Parse one line; `index` is its 0-based position.
    pub fn from_json_line(line: &str, index: usize, language: Language) -> Result<Self, LineError> {
        let Fields(fields) = serde_json::from_str(line).map_err(LineError::Json)?;
        let field = |key: &str| fields.iter().find(|(k, _)| k == key).map(|(_, v)| v);
        let decode = |key: &'static str, raw: &RawValue| {
            serde_json::from_str::<String>(raw.get()).map_err(|_| LineError::NotText(key))
        };
        let code = decode(CODE_FIELD, field(CODE_FIELD).ok_or(LineError::Missing(CODE_FIELD))?)?;
        if code.is_empty() {
            return Err(LineError::EmptyCode);
        }
        let (summary_field, raw) = match (field("summary"), field("docstring")) {
            (Some(raw), _) => (SummaryField::Summary, raw),
            (None, Some(raw)) => (SummaryField::Docstring, raw),
            (None, None) => return Err(LineError::Missing("summary")),
        };
        let summary = decode(summary_field.key(), raw)?;
        Ok(CodeRecord {
            index,
            language,
            code,
            summary,
            summary_field,
            fields,
        })
    }
}

/// A JSON object as an ordered list of raw fields.
struct Fields(Vec<(String, Box<RawValue>)>);

impl<'de> Deserialize<'de> for Fields {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = Fields;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a JSON object")
            }
            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<Fields, A::Error> {
                let mut out: Vec<(String, Box<RawValue>)> = Vec::new();
                while let Some((k, v)) = map.next_entry::<String, Box<RawValue>>()? {
                    match out.iter_mut().find(|(key, _)| *key == k) {
                        // Later duplicates win, as in every mainstream JSON reader.
                        Some(slot) => slot.1 = v,
                        None => out.push((k, v)),
                    }
                }
                Ok(Fields(out))
            }
        }
        d.deserialize_map(V)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum LineError {
    #[error("invalid JSON: {0}")]
    Json(serde_json::Error),
    #[error("missing `{0}` field")]
    Missing(&'static str),
    #[error("`{0}` is not a string")]
    NotText(&'static str),
    #[error("`code` is empty")]
    EmptyCode,
    #[error("blank line")]
    Blank,
}

#[derive(Debug, thiserror::Error)]
pub enum CorpusError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("{path}:{line}: {source}")]
    Line {
        path: PathBuf,
        /// 1-based.
        line: usize,
        #[source]
        source: LineError,
    },
    #[error("cannot combine a {clean} corpus with a {corrupted} corpus")]
    LanguageMismatch { clean: Language, corrupted: Language },
}

impl CorpusError {
    pub fn io(path: &Path, source: io::Error) -> Self {
        CorpusError::Io {
            path: path.to_owned(),
            source,
        }
    }
}

/// Records in file order. A final newline is optional; any other blank line
/// is an error.
pub fn read_corpus(path: &Path, language: Language) -> Result<Vec<CodeRecord>, CorpusError> {
    let file = File::open(path).map_err(|e| CorpusError::io(path, e))?;
    let mut out = Vec::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|e| CorpusError::io(path, e))?;
        let line = line.strip_suffix('\r').unwrap_or(&line);
        let parsed = if line.trim().is_empty() {
            Err(LineError::Blank)
        } else {
            CodeRecord::from_json_line(line, i, language)
        };
        out.push(parsed.map_err(|source| CorpusError::Line {
            path: path.to_owned(),
            line: i + 1,
            source,
        })?);
    }
    Ok(out)
}

pub fn write_corpus(records: &[CodeRecord], path: &Path) -> Result<(), CorpusError> {
    write_lines(path, records.iter().map(CodeRecord::to_json_line))
}

/// Newline-terminated lines, written through a buffer.
pub fn write_lines(path: &Path, lines: impl IntoIterator<Item = String>) -> Result<(), CorpusError> {
    let io_err = |e| CorpusError::io(path, e);
    let mut w = BufWriter::new(File::create(path).map_err(io_err)?);
    for line in lines {
        w.write_all(line.as_bytes()).map_err(io_err)?;
        w.write_all(b"\n").map_err(io_err)?;
    }
    w.flush().map_err(io_err)
}

/// Clean records first, then corrupted ones, unmodified.
pub fn combine_splits(clean: &[CodeRecord], corrupted: &[CodeRecord]) -> Result<Vec<CodeRecord>, CorpusError> {
    let lang = |rs: &[CodeRecord]| rs.first().map(|r| r.language);
    if let (Some(a), Some(b)) = (lang(clean), lang(corrupted)) {
        if a != b {
            return Err(CorpusError::LanguageMismatch { clean: a, corrupted: b });
        }
    }
    Ok(clean.iter().chain(corrupted).cloned().collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Split {
    Train,
    Valid,
    Test,
}

impl Split {
    /// Guess the split from a file name such as `train.jsonl`.
    pub fn from_path(path: &Path) -> Option<Split> {
        let stem = path.file_name()?.to_str()?.to_ascii_lowercase();
        [
            ("train", Split::Train),
            ("valid", Split::Valid),
            ("dev", Split::Valid),
            ("test", Split::Test),
        ]
        .into_iter()
        .find(|(key, _)| stem.contains(key))
        .map(|(_, s)| s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum TransformLabel {
    Original,
    Renamed,
    Commented,
    Deadcode,
}

/// One line of a drop log.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DropEntry {
    pub index: usize,
    pub transform: TransformLabel,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitStats {
    pub language: Language,
    pub transform_label: TransformLabel,
    pub train_count: usize,
    pub valid_count: usize,
    pub test_count: usize,
    pub dropped_count: usize,
    pub drop_reasons: BTreeMap<String, usize>,
}

impl SplitStats {
    pub fn empty(language: Language, transform_label: TransformLabel) -> Self {
        SplitStats {
            language,
            transform_label,
            train_count: 0,
            valid_count: 0,
            test_count: 0,
            dropped_count: 0,
            drop_reasons: BTreeMap::new(),
        }
    }

    pub fn count(&self, split: Split) -> usize {
        match split {
            Split::Train => self.train_count,
            Split::Valid => self.valid_count,
            Split::Test => self.test_count,
        }
    }

    pub fn kept(&self) -> usize {
        self.train_count + self.valid_count + self.test_count
    }

    /// Records that went into the transformation: kept plus dropped.
    pub fn input_count(&self) -> usize {
        self.kept() + self.dropped_count
    }

    pub fn merge(&mut self, other: &SplitStats) {
        self.train_count += other.train_count;
        self.valid_count += other.valid_count;
        self.test_count += other.test_count;
        self.dropped_count += other.dropped_count;
        for (reason, n) in &other.drop_reasons {
            *self.drop_reasons.entry(reason.clone()).or_default() += n;
        }
    }
}

/// Counts for one split file and its drop log.
pub fn compute_stats(
    language: Language,
    transform_label: TransformLabel,
    split: Split,
    records: &[CodeRecord],
    drops: &[DropEntry],
) -> SplitStats {
    let mut stats = SplitStats::empty(language, transform_label);
    match split {
        Split::Train => stats.train_count = records.len(),
        Split::Valid => stats.valid_count = records.len(),
        Split::Test => stats.test_count = records.len(),
    }
    stats.dropped_count = drops.len();
    for d in drops {
        *stats.drop_reasons.entry(d.reason.clone()).or_default() += 1;
    }
    stats
}

pub fn read_drops(path: &Path) -> Result<Vec<DropEntry>, CorpusError> {
    let file = File::open(path).map_err(|e| CorpusError::io(path, e))?;
    let mut out = Vec::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|e| CorpusError::io(path, e))?;
        let entry = serde_json::from_str(&line).map_err(|e| CorpusError::Line {
            path: path.to_owned(),
            line: i + 1,
            source: LineError::Json(e),
        })?;
        out.push(entry);
    }
    Ok(out)
}
