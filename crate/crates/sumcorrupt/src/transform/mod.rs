// SPDX-License-Identifier: Apache-2.0

//! The three corruptions and their whole-split driver.

mod comment;
mod deadcode;
mod rename;

use std::collections::BTreeMap;
use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sumcorrupt_core::donor::sample_donor_position;
use sumcorrupt_core::{Language, RenameMap};

use crate::corpus::{compute_stats, CodeRecord, DropEntry, Split, SplitStats, TransformLabel, TOKENS_FIELD};
use crate::lang::{lex_tokens, parse_function};

pub use comment::inject_commented_code;
pub use deadcode::insert_dead_code;
pub use rename::rename_identifiers;

pub const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum TransformKind {
    Rename,
    Comment,
    Deadcode,
}

impl TransformKind {
    pub fn label(self) -> TransformLabel {
        match self {
            TransformKind::Rename => TransformLabel::Renamed,
            TransformKind::Comment => TransformLabel::Commented,
            TransformKind::Deadcode => TransformLabel::Deadcode,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            TransformKind::Rename => "rename",
            TransformKind::Comment => "comment",
            TransformKind::Deadcode => "deadcode",
        }
    }

    fn needs_donor(self) -> bool {
        self != TransformKind::Rename
    }
}

impl fmt::Display for TransformKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConfigError {
    #[error("dead-code insertion is not defined for Java: code after a return does not compile")]
    DeadcodeJava,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TransformConfig {
    transform: TransformKind,
    seed: u64,
    language: Language,
    /// Emit ineligible records unchanged instead of dropping them.
    keep_ineligible: bool,
}

impl TransformConfig {
    pub fn new(transform: TransformKind, seed: u64, language: Language) -> Result<Self, ConfigError> {
        if transform == TransformKind::Deadcode && language == Language::Java {
            return Err(ConfigError::DeadcodeJava);
        }
        Ok(TransformConfig {
            transform,
            seed,
            language,
            keep_ineligible: false,
        })
    }

    pub fn keep_ineligible(mut self, keep: bool) -> Self {
        self.keep_ineligible = keep;
        self
    }

    pub fn transform(&self) -> TransformKind {
        self.transform
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn language(&self) -> Language {
        self.language
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Transformed,
    Unchanged,
    Dropped,
}

/// Why a record was dropped or left unchanged.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Reason {
    /// The record (or, for dead code, the donor) does not parse.
    ParseFailure,
    /// The edited code no longer parses.
    ReparseFailure,
    NoRenameableIdentifiers,
    /// Every renameable name already has the generated form.
    IdentityRename,
    /// The host has no function body to insert into.
    NoInsertionPoint,
    NoReturn,
    DonorUninsertable,
    /// The split has a single record, so there is nobody to borrow from.
    NoDonor,
}

impl Reason {
    pub fn as_str(self) -> &'static str {
        match self {
            Reason::ParseFailure => "parse_failure",
            Reason::ReparseFailure => "reparse_failure",
            Reason::NoRenameableIdentifiers => "no_renameable_identifiers",
            Reason::IdentityRename => "identity_rename",
            Reason::NoInsertionPoint => "no_insertion_point",
            Reason::NoReturn => "no_return",
            Reason::DonorUninsertable => "donor_uninsertable",
            Reason::NoDonor => "no_donor",
        }
    }

    /// The record is fine but this transform has nothing to do with it.
    fn is_ineligibility(self) -> bool {
        matches!(
            self,
            Reason::NoInsertionPoint | Reason::NoReturn | Reason::DonorUninsertable | Reason::NoDonor
        )
    }
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransformOutcome {
    pub status: Status,
    /// Absent when dropped.
    pub record: Option<CodeRecord>,
    pub reason: Option<Reason>,
    pub rename_map: Option<RenameMap>,
    pub donor_index: Option<usize>,
}

impl TransformOutcome {
    pub(crate) fn transformed(record: CodeRecord) -> Self {
        TransformOutcome {
            status: Status::Transformed,
            record: Some(record),
            reason: None,
            rename_map: None,
            donor_index: None,
        }
    }

    pub(crate) fn unchanged(record: &CodeRecord, reason: Reason) -> Self {
        TransformOutcome {
            status: Status::Unchanged,
            record: Some(record.clone()),
            reason: Some(reason),
            rename_map: None,
            donor_index: None,
        }
    }

    pub(crate) fn dropped(reason: Reason) -> Self {
        TransformOutcome {
            status: Status::Dropped,
            record: None,
            reason: Some(reason),
            rename_map: None,
            donor_index: None,
        }
    }

    fn with_donor(mut self, donor: Option<usize>) -> Self {
        self.donor_index = donor;
        self
    }
}

/// The record carrying `code`, provided `code` still parses. A `code_tokens`
/// field, when present, is regenerated from the new code.
pub(crate) fn finish(record: &CodeRecord, code: String) -> Result<CodeRecord, Reason> {
    let parsed = parse_function(record.language, &code);
    if !parsed.parse_ok() {
        return Err(Reason::ReparseFailure);
    }
    let mut out = record.with_code(code);
    if out.extra(TOKENS_FIELD).is_some() {
        out.set_extra(TOKENS_FIELD, &lex_tokens(&parsed))
            .expect("string lists always serialize");
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutcomeCounts {
    pub input: usize,
    pub transformed: usize,
    pub unchanged: usize,
    pub dropped: usize,
}

#[derive(Debug, Clone)]
pub struct SplitOutput {
    /// Kept records in input order.
    pub records: Vec<CodeRecord>,
    pub drops: Vec<DropEntry>,
    pub stats: SplitStats,
    pub counts: OutcomeCounts,
    /// Why kept records were left unchanged.
    pub unchanged_reasons: BTreeMap<String, usize>,
}

/// Donor position for every host, drawn in host order from a fresh generator.
pub fn assign_donors(len: usize, seed: u64) -> Vec<Option<usize>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..len).map(|i| sample_donor_position(len, i, &mut rng).ok()).collect()
}

pub fn transform_record(record: &CodeRecord, donor: Option<&CodeRecord>, kind: TransformKind) -> TransformOutcome {
    match (kind, donor) {
        (TransformKind::Rename, _) => rename_identifiers(record),
        (_, None) => TransformOutcome::dropped(Reason::NoDonor),
        (TransformKind::Comment, Some(d)) => inject_commented_code(record, d),
        (TransformKind::Deadcode, Some(d)) => insert_dead_code(record, d),
    }
}

/// Apply `config` to a split. Runs on the current rayon pool; the output does
/// not depend on its size.
pub fn transform_split(split: &[CodeRecord], config: &TransformConfig, which: Split) -> SplitOutput {
    let donors = if config.transform.needs_donor() {
        assign_donors(split.len(), config.seed)
    } else {
        vec![None; split.len()]
    };
    let outcomes: Vec<TransformOutcome> = split
        .par_iter()
        .zip(donors.par_iter())
        .map(|(record, donor)| {
            let out = transform_record(record, donor.map(|d| &split[d]), config.transform);
            let out = match (out.status, out.reason) {
                (Status::Dropped, Some(r)) if config.keep_ineligible && r.is_ineligibility() => {
                    TransformOutcome::unchanged(record, r)
                }
                _ => out,
            };
            out.with_donor(*donor)
        })
        .collect();

    let label = config.transform.label();
    let mut records = Vec::new();
    let mut drops = Vec::new();
    let mut counts = OutcomeCounts {
        input: split.len(),
        ..Default::default()
    };
    let mut unchanged_reasons = BTreeMap::new();
    for (record, outcome) in split.iter().zip(outcomes) {
        match outcome.status {
            Status::Transformed => counts.transformed += 1,
            Status::Unchanged => {
                counts.unchanged += 1;
                if let Some(r) = outcome.reason {
                    *unchanged_reasons.entry(r.as_str().to_owned()).or_default() += 1;
                }
            }
            Status::Dropped => counts.dropped += 1,
        }
        match outcome.record {
            Some(r) => records.push(r),
            None => drops.push(DropEntry {
                index: record.index,
                transform: label,
                reason: outcome.reason.map_or("unknown", Reason::as_str).to_owned(),
            }),
        }
    }
    let stats = compute_stats(config.language, label, which, &records, &drops);
    SplitOutput {
        records,
        drops,
        stats,
        counts,
        unchanged_reasons,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn py(i: usize, code: &str) -> CodeRecord {
        CodeRecord::new(i, Language::Python, code, "s")
    }

    #[test]
    fn deadcode_java_is_rejected() {
        assert_eq!(
            TransformConfig::new(TransformKind::Deadcode, 1, Language::Java),
            Err(ConfigError::DeadcodeJava)
        );
        assert!(TransformConfig::new(TransformKind::Deadcode, 1, Language::JavaScript).is_ok());
        assert!(TransformConfig::new(TransformKind::Comment, 1, Language::Java).is_ok());
    }

    #[test]
    fn donors_skip_the_host_and_are_reproducible() {
        let a = assign_donors(50, 9);
        assert_eq!(a, assign_donors(50, 9));
        assert_ne!(a, assign_donors(50, 10));
        for (i, d) in a.iter().enumerate() {
            assert_ne!(d.unwrap(), i);
        }
        assert_eq!(assign_donors(1, 9), [None]);
        assert_eq!(assign_donors(2, 9), [Some(1), Some(0)]);
    }

    #[test]
    fn split_conserves_records_and_order() {
        let split = vec![
            py(0, "def f(a):\n    return a\n"),
            py(1, "def g(:\n"),
            py(2, "def h():\n    pass\n"),
            py(3, "def k(x):\n    y = x\n    return y\n"),
        ];
        for kind in [TransformKind::Rename, TransformKind::Comment, TransformKind::Deadcode] {
            let cfg = TransformConfig::new(kind, 3, Language::Python).unwrap();
            let out = transform_split(&split, &cfg, Split::Train);
            assert_eq!(out.records.len() + out.drops.len(), split.len(), "{kind}");
            assert_eq!(out.stats.input_count(), split.len());
            let idx: Vec<usize> = out.records.iter().map(|r| r.index).collect();
            let mut sorted = idx.clone();
            sorted.sort();
            assert_eq!(idx, sorted);
            assert!(out.drops.iter().any(|d| d.index == 1 && d.reason == "parse_failure"));
        }
        let cfg = TransformConfig::new(TransformKind::Deadcode, 3, Language::Python).unwrap();
        let out = transform_split(&split, &cfg, Split::Train);
        assert!(out.drops.iter().any(|d| d.index == 2 && d.reason == "no_return"));
        let kept = transform_split(&split, &cfg.keep_ineligible(true), Split::Train);
        assert!(kept.records.iter().any(|r| r.index == 2 && r.code() == split[2].code()));
        assert!(kept.drops.iter().all(|d| d.reason == "parse_failure"));
    }

    #[test]
    fn single_record_split_has_no_donor() {
        let cfg = TransformConfig::new(TransformKind::Comment, 3, Language::Python).unwrap();
        let out = transform_split(&[py(0, "def f():\n    return 1\n")], &cfg, Split::Test);
        assert_eq!(out.drops[0].reason, "no_donor");
    }

    #[test]
    fn tokens_are_regenerated_only_when_present() {
        let mut r = py(0, "def add(a, b):\n    return a + b\n");
        let out = rename_identifiers(&r).record.unwrap();
        assert!(out.extra(TOKENS_FIELD).is_none());
        r.set_extra(TOKENS_FIELD, &["stale"]).unwrap();
        let out = rename_identifiers(&r).record.unwrap();
        let toks: Vec<String> = serde_json::from_str(out.extra(TOKENS_FIELD).unwrap().get()).unwrap();
        assert_eq!(toks[..4], ["def", "FUNC_0", "(", "VAR_0"]);
    }
}
