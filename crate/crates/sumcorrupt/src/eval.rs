// SPDX-License-Identifier: Apache-2.0

//! Smoothed BLEU-4 over prediction files.

use std::collections::HashMap;
use std::io;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;
use sumcorrupt_core::bleu::summary_bleu4;
use sumcorrupt_core::Language;

use crate::corpus::{read_corpus, CorpusError};

/// Summaries keyed by sample index, in file order.
pub type IndexedSummaries = Vec<(u64, String)>;

#[derive(Debug, thiserror::Error)]
pub enum EvalError {
    #[error(transparent)]
    Corpus(#[from] CorpusError),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("{path}:{line}: expected `index<TAB>summary` with a non-negative integer index")]
    BadLine { path: PathBuf, line: usize },
    #[error("{path}: index {index} appears more than once")]
    DuplicateIndex { path: PathBuf, index: u64 },
    #[error("no reference for prediction index {index}")]
    MissingReference { index: u64 },
    #[error("no predictions to score")]
    Empty,
}

/// Parse `index<TAB>summary` lines. A line without a tab is an index with an
/// empty summary, as in the benchmark script.
pub fn parse_indexed(path: &Path, text: &str) -> Result<IndexedSummaries, EvalError> {
    let mut out = Vec::new();
    let mut seen = HashMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.strip_suffix('\r').unwrap_or(line);
        let (index, summary) = line.split_once('\t').unwrap_or((line, ""));
        let index: u64 = index.trim().parse().map_err(|_| EvalError::BadLine {
            path: path.to_owned(),
            line: i + 1,
        })?;
        if seen.insert(index, ()).is_some() {
            return Err(EvalError::DuplicateIndex {
                path: path.to_owned(),
                index,
            });
        }
        out.push((index, summary.to_owned()));
    }
    Ok(out)
}

/// Read a summaries file. `.jsonl` files are corpora: the summary of the
/// record on line `i` has index `i`.
pub fn read_indexed(path: &Path) -> Result<IndexedSummaries, EvalError> {
    if path.extension().is_some_and(|e| e == "jsonl") {
        let records = read_corpus(path, Language::Python)?;
        return Ok(records
            .into_iter()
            .map(|r| (r.index as u64, r.summary().to_owned()))
            .collect());
    }
    let text = std::fs::read_to_string(path).map_err(|source| EvalError::Io {
        path: path.to_owned(),
        source,
    })?;
    parse_indexed(path, &text)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BleuReport {
    /// Sorted by index.
    #[serde(skip)]
    pub per_sample: Vec<(u64, f64)>,
    pub corpus_score: f64,
    pub n_samples: usize,
}

impl BleuReport {
    pub fn write_csv(&self, path: &Path) -> Result<(), csv::Error> {
        let mut w = csv::Writer::from_path(path)?;
        w.write_record(["index", "score"])?;
        for (index, score) in &self.per_sample {
            w.serialize((index, score))?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Score every prediction against the reference with the same index and
/// average. References without a prediction are ignored.
pub fn corpus_bleu(predictions: &[(u64, String)], references: &[(u64, String)]) -> Result<BleuReport, EvalError> {
    let refs: HashMap<u64, &str> = references.iter().map(|(i, s)| (*i, s.as_str())).collect();
    let mut pairs = Vec::with_capacity(predictions.len());
    for (index, pred) in predictions {
        let reference = refs.get(index).ok_or(EvalError::MissingReference { index: *index })?;
        pairs.push((*index, pred.as_str(), *reference));
    }
    if pairs.is_empty() {
        return Err(EvalError::Empty);
    }
    pairs.sort_by_key(|p| p.0);
    let per_sample: Vec<(u64, f64)> = pairs
        .par_iter()
        .map(|(i, pred, reference)| (*i, summary_bleu4(pred, reference)))
        .collect();
    let corpus_score = sumcorrupt_core::bleu::mean(per_sample.iter().map(|p| p.1)).expect("non-empty");
    Ok(BleuReport {
        n_samples: per_sample.len(),
        per_sample,
        corpus_score,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> IndexedSummaries {
        parse_indexed(Path::new("p.txt"), text).unwrap()
    }

    #[test]
    fn identity_scores_100() {
        let r = parse("0\tReturns the sum.\n1\tget a value\n");
        let report = corpus_bleu(&r, &r).unwrap();
        assert_eq!(report.corpus_score, 100.0);
        assert_eq!(report.n_samples, 2);
    }

    #[test]
    fn pairs_are_matched_by_index() {
        let refs = parse("0\treturns the sum\n1\topens a file for reading\n2\tcloses it\n");
        let preds = parse("1\topens a file\n0\treturns the sum\n");
        let report = corpus_bleu(&preds, &refs).unwrap();
        assert_eq!(report.per_sample[0], (0, 100.0));
        assert_eq!(report.per_sample[1].0, 1);
        let mut shuffled = preds.clone();
        shuffled.reverse();
        assert_eq!(corpus_bleu(&shuffled, &refs).unwrap().corpus_score, report.corpus_score);
    }

    #[test]
    fn errors() {
        let p = Path::new("p.txt");
        assert!(matches!(
            parse_indexed(p, "0\ta\n0\tb\n"),
            Err(EvalError::DuplicateIndex { index: 0, .. })
        ));
        assert!(matches!(
            parse_indexed(p, "x\ta\n"),
            Err(EvalError::BadLine { line: 1, .. })
        ));
        let refs = parse("0\ta\n");
        let preds = parse("0\ta\n7\tb\n9\tc\n");
        let err = corpus_bleu(&preds, &refs).unwrap_err();
        assert!(matches!(err, EvalError::MissingReference { index: 7 }));
        assert!(err.to_string().contains('7'));
        assert_eq!(parse("3\n"), [(3, String::new())]);
    }

    #[test]
    fn jsonl_references() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("test.jsonl");
        std::fs::write(&path, "{\"code\":\"x\",\"docstring\":\"Returns the sum.\"}\n").unwrap();
        assert_eq!(read_indexed(&path).unwrap(), [(0, "Returns the sum.".to_owned())]);
    }
}
