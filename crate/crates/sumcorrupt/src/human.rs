// SPDX-License-Identifier: Apache-2.0

//! Blind pairwise comparison of two summarizers by two annotators.
//!
//! Annotators see summaries in positions A and B; a separate key file maps
//! positions to models. Annotations are de-blinded, disagreements resolved,
//! and agreement and tallies reported.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::path::{Path, PathBuf};

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use sumcorrupt_core::agreement::{
    cohens_kappa, raw_agreement, resolve_pair, tally, AgreementError, BlindKey, KappaCategories, Model, PositionLabel,
    Resolution, Tally, Verdict,
};

/// Input to blinding: one example with both systems' summaries.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sample {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub task_id: Option<String>,
    pub code: String,
    pub gold: String,
    pub model_1: String,
    pub model_2: String,
}

/// What annotators see.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlindTask {
    pub task_id: String,
    pub code: String,
    pub gold: String,
    pub summary_a: String,
    pub summary_b: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KeyEntry {
    pub task_id: String,
    pub a: Model,
    pub b: Model,
}

impl KeyEntry {
    fn key(&self) -> BlindKey {
        BlindKey { a: self.a }
    }
}

/// A judgment in position space, as exported by the annotation tool.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Annotation {
    pub task_id: String,
    pub annotator_id: String,
    pub label: PositionLabel,
}

/// A judgment in model space.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnotationRecord {
    pub task_id: String,
    pub annotator_id: String,
    pub label: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FinalLabel {
    pub task_id: String,
    pub label: Verdict,
}

#[derive(Debug, thiserror::Error)]
pub enum HumanError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}: {source}")]
    Line {
        path: PathBuf,
        line: usize,
        #[source]
        source: serde_json::Error,
    },
    #[error("task `{0}` is not in the key file")]
    UnknownTask(String),
    #[error("task `{task}` has more than one label from annotator `{annotator}`")]
    DuplicateLabel { task: String, annotator: String },
    #[error("task `{0}` is annotated by only one annotator")]
    Uncovered(String),
    #[error("cannot sample {wanted} tasks from {available} examples")]
    SampleTooLarge { wanted: usize, available: usize },
    #[error("task id `{0}` is used twice")]
    DuplicateTask(String),
    #[error(transparent)]
    Agreement(#[from] AgreementError),
}

pub fn read_jsonl<T: DeserializeOwned>(path: &Path) -> Result<Vec<T>, HumanError> {
    let text = std::fs::read_to_string(path).map_err(|source| HumanError::Io {
        path: path.to_owned(),
        source,
    })?;
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            serde_json::from_str(l).map_err(|source| HumanError::Line {
                path: path.to_owned(),
                line: i + 1,
                source,
            })
        })
        .collect()
}

pub fn to_jsonl<T: Serialize>(items: &[T]) -> Vec<String> {
    items
        .iter()
        .map(|t| serde_json::to_string(t).expect("plain records serialize"))
        .collect()
}

/// Optionally subsample `n` examples, then flip a fair coin per task for
/// which model sits in position A. Everything is drawn from one generator
/// seeded with `seed`, subsample first.
pub fn make_blind_tasks(
    samples: &[Sample],
    n: Option<usize>,
    seed: u64,
) -> Result<(Vec<BlindTask>, Vec<KeyEntry>), HumanError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let chosen: Vec<usize> = match n {
        Some(n) if n > samples.len() => {
            return Err(HumanError::SampleTooLarge {
                wanted: n,
                available: samples.len(),
            })
        }
        Some(n) => {
            let mut picked = sample(&mut rng, samples.len(), n).into_vec();
            picked.sort_unstable();
            picked
        }
        None => (0..samples.len()).collect(),
    };
    let mut tasks = Vec::with_capacity(chosen.len());
    let mut keys = Vec::with_capacity(chosen.len());
    let mut ids = BTreeSet::new();
    for i in chosen {
        let s = &samples[i];
        let task_id = s.task_id.clone().unwrap_or_else(|| i.to_string());
        if !ids.insert(task_id.clone()) {
            return Err(HumanError::DuplicateTask(task_id));
        }
        let key = BlindKey::draw(&mut rng);
        let text = |m: Model| match m {
            Model::Model1 => s.model_1.clone(),
            Model::Model2 => s.model_2.clone(),
        };
        tasks.push(BlindTask {
            task_id: task_id.clone(),
            code: s.code.clone(),
            gold: s.gold.clone(),
            summary_a: text(key.a),
            summary_b: text(key.b()),
        });
        keys.push(KeyEntry {
            task_id,
            a: key.a,
            b: key.b(),
        });
    }
    Ok((tasks, keys))
}

/// Samples from a corpus and two `index<TAB>summary` prediction lists.
/// Only indices present in both lists are used.
pub fn samples_from_predictions(
    corpus: &[crate::corpus::CodeRecord],
    model_1: &[(u64, String)],
    model_2: &[(u64, String)],
) -> Vec<Sample> {
    let m2: HashMap<u64, &str> = model_2.iter().map(|(i, s)| (*i, s.as_str())).collect();
    let by_index: HashMap<u64, &crate::corpus::CodeRecord> = corpus.iter().map(|r| (r.index as u64, r)).collect();
    let mut out: Vec<Sample> = model_1
        .iter()
        .filter_map(|(i, p1)| {
            let r = by_index.get(i)?;
            Some(Sample {
                task_id: Some(i.to_string()),
                code: r.code().to_owned(),
                gold: r.summary().to_owned(),
                model_1: p1.clone(),
                model_2: (*m2.get(i)?).to_owned(),
            })
        })
        .collect();
    out.sort_by_key(|s| s.task_id.as_ref().and_then(|t| t.parse::<u64>().ok()));
    out
}

/// Map position labels to model labels through the key.
pub fn deblind(annotations: &[Annotation], keys: &[KeyEntry]) -> Result<Vec<AnnotationRecord>, HumanError> {
    let keys: HashMap<&str, BlindKey> = keys.iter().map(|k| (k.task_id.as_str(), k.key())).collect();
    let mut seen = BTreeSet::new();
    annotations
        .iter()
        .map(|a| {
            let key = keys
                .get(a.task_id.as_str())
                .ok_or_else(|| HumanError::UnknownTask(a.task_id.clone()))?;
            if !seen.insert((a.task_id.as_str(), a.annotator_id.as_str())) {
                return Err(HumanError::DuplicateLabel {
                    task: a.task_id.clone(),
                    annotator: a.annotator_id.clone(),
                });
            }
            Ok(AnnotationRecord {
                task_id: a.task_id.clone(),
                annotator_id: a.annotator_id.clone(),
                label: key.deblind(a.label),
            })
        })
        .collect()
}

fn by_task(records: &[AnnotationRecord]) -> Result<BTreeMap<&str, Verdict>, HumanError> {
    let mut out = BTreeMap::new();
    for r in records {
        if out.insert(r.task_id.as_str(), r.label).is_some() {
            return Err(HumanError::DuplicateLabel {
                task: r.task_id.clone(),
                annotator: r.annotator_id.clone(),
            });
        }
    }
    Ok(out)
}

/// Both annotators' labels per task, in task order. Every task must be
/// covered by both.
pub fn paired(
    first: &[AnnotationRecord],
    second: &[AnnotationRecord],
) -> Result<Vec<(String, Verdict, Verdict)>, HumanError> {
    let a = by_task(first)?;
    let b = by_task(second)?;
    if let Some(t) = a
        .keys()
        .find(|t| !b.contains_key(*t))
        .or_else(|| b.keys().find(|t| !a.contains_key(*t)))
    {
        return Err(HumanError::Uncovered((*t).to_owned()));
    }
    Ok(a.iter().map(|(t, v)| ((*t).to_owned(), *v, b[t])).collect())
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Resolved {
    pub final_labels: BTreeMap<String, Verdict>,
    pub needs_discussion: Vec<String>,
}

impl Resolved {
    /// Fill discussion outcomes in; tasks they do not cover stay pending.
    pub fn merge_discussion(&mut self, outcomes: &[AnnotationRecord]) {
        let outcomes: HashMap<&str, Verdict> = outcomes.iter().map(|r| (r.task_id.as_str(), r.label)).collect();
        let final_labels = &mut self.final_labels;
        self.needs_discussion.retain(|t| match outcomes.get(t.as_str()) {
            Some(v) => {
                final_labels.insert(t.clone(), *v);
                false
            }
            None => true,
        });
    }

    pub fn finals(&self) -> Vec<FinalLabel> {
        self.final_labels
            .iter()
            .map(|(t, v)| FinalLabel {
                task_id: t.clone(),
                label: *v,
            })
            .collect()
    }
}

/// Equal labels stand; a tie yields to the other annotator's prediction;
/// opposite predictions go to discussion.
pub fn resolve_ties(first: &[AnnotationRecord], second: &[AnnotationRecord]) -> Result<Resolved, HumanError> {
    let mut out = Resolved::default();
    for (task, a, b) in paired(first, second)? {
        match resolve_pair(a, b) {
            Resolution::Final(v) => {
                out.final_labels.insert(task, v);
            }
            Resolution::NeedsDiscussion => out.needs_discussion.push(task),
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AgreementReport {
    pub n_tasks: usize,
    pub raw_agreement: f64,
    /// `None` when chance agreement is 1 but observed agreement is not.
    pub kappa: Option<f64>,
    pub kappa_categories: u8,
    pub tally: Tally,
    pub needs_discussion: Vec<String>,
}

pub fn agreement_report(
    first: &[AnnotationRecord],
    second: &[AnnotationRecord],
    discussion: Option<&[AnnotationRecord]>,
    categories: KappaCategories,
) -> Result<AgreementReport, HumanError> {
    let pairs: Vec<(Verdict, Verdict)> = paired(first, second)?.into_iter().map(|(_, a, b)| (a, b)).collect();
    let raw = raw_agreement(&pairs)?;
    let kappa = match cohens_kappa(&pairs, categories) {
        Ok(k) => Some(k),
        Err(AgreementError::DegenerateChance { .. }) => None,
        Err(e) => return Err(e.into()),
    };
    let mut resolved = resolve_ties(first, second)?;
    if let Some(d) = discussion {
        resolved.merge_discussion(d);
    }
    Ok(AgreementReport {
        n_tasks: pairs.len(),
        raw_agreement: raw,
        kappa,
        kappa_categories: match categories {
            KappaCategories::Three => 3,
            KappaCategories::Two => 2,
        },
        tally: tally(resolved.final_labels.values().copied()),
        needs_discussion: resolved.needs_discussion,
    })
}

/// True when a task file carries no model identity: every line is exactly a
/// task object, and no model name occurs anywhere in the bytes.
pub fn is_blind(task_file: &str) -> bool {
    let names = [Model::Model1, Model::Model2].map(Model::as_str);
    if names.iter().any(|n| task_file.contains(n)) {
        return false;
    }
    task_file
        .lines()
        .filter(|l| !l.trim().is_empty())
        .all(|l| serde_json::from_str::<BlindTask>(l).is_ok())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn samples(n: usize) -> Vec<Sample> {
        (0..n)
            .map(|i| Sample {
                task_id: None,
                code: format!("def f{i}(): pass"),
                gold: format!("gold {i}"),
                model_1: format!("first {i}"),
                model_2: format!("second {i}"),
            })
            .collect()
    }

    fn rec(task: &str, who: &str, label: Verdict) -> AnnotationRecord {
        AnnotationRecord {
            task_id: task.into(),
            annotator_id: who.into(),
            label,
        }
    }

    #[test]
    fn blinding_is_deterministic_and_complete() {
        let s = samples(200);
        let (tasks, keys) = make_blind_tasks(&s, None, 42).unwrap();
        assert_eq!((tasks.len(), keys.len()), (200, 200));
        assert_eq!(make_blind_tasks(&s, None, 42).unwrap(), (tasks.clone(), keys.clone()));
        for (t, k) in tasks.iter().zip(&keys) {
            let i: usize = t.task_id.parse().unwrap();
            let expect_a = if k.a == Model::Model1 {
                &s[i].model_1
            } else {
                &s[i].model_2
            };
            assert_eq!(&t.summary_a, expect_a);
            assert_ne!(k.a, k.b);
        }
        let file = to_jsonl(&tasks).join("\n");
        assert!(is_blind(&file));
        assert!(!is_blind(&to_jsonl(&keys).join("\n")));
        assert!(!is_blind(
            "{\"task_id\":\"1\",\"code\":\"\",\"gold\":\"\",\"summary_a\":\"\",\"summary_b\":\"\",\"a\":\"x\"}"
        ));
    }

    #[test]
    fn subsampling_keeps_source_order() {
        let (tasks, _) = make_blind_tasks(&samples(1000), Some(200), 7).unwrap();
        assert_eq!(tasks.len(), 200);
        let ids: Vec<usize> = tasks.iter().map(|t| t.task_id.parse().unwrap()).collect();
        assert!(ids.windows(2).all(|w| w[0] < w[1]));
        assert!(matches!(
            make_blind_tasks(&samples(3), Some(4), 7),
            Err(HumanError::SampleTooLarge { .. })
        ));
    }

    #[test]
    fn position_a_is_fair() {
        let (_, keys) = make_blind_tasks(&samples(10_000), None, 42).unwrap();
        let share = keys.iter().filter(|k| k.a == Model::Model1).count() as f64 / 10_000.0;
        assert!((0.47..=0.53).contains(&share), "{share}");
    }

    #[test]
    fn deblinding() {
        let keys = vec![KeyEntry {
            task_id: "t".into(),
            a: Model::Model2,
            b: Model::Model1,
        }];
        let ann = |label| Annotation {
            task_id: "t".into(),
            annotator_id: "x".into(),
            label,
        };
        assert_eq!(
            deblind(&[ann(PositionLabel::A)], &keys).unwrap()[0].label,
            Verdict::Prediction2
        );
        assert_eq!(
            deblind(&[ann(PositionLabel::B)], &keys).unwrap()[0].label,
            Verdict::Prediction1
        );
        assert_eq!(
            deblind(&[ann(PositionLabel::Tie)], &keys).unwrap()[0].label,
            Verdict::Tie
        );
        let stray = Annotation {
            task_id: "u".into(),
            ..ann(PositionLabel::A)
        };
        let err = deblind(&[stray], &keys).unwrap_err();
        assert!(err.to_string().contains("`u`"));
        assert!(matches!(
            deblind(&[ann(PositionLabel::A), ann(PositionLabel::B)], &keys),
            Err(HumanError::DuplicateLabel { .. })
        ));
    }

    #[test]
    fn label_wire_format() {
        let a: Annotation = serde_json::from_str(r#"{"task_id":"1","annotator_id":"x","label":"TIE"}"#).unwrap();
        assert_eq!(a.label, PositionLabel::Tie);
        let line = serde_json::to_string(&rec("1", "x", Verdict::Prediction1)).unwrap();
        assert!(line.contains("\"prediction_1\""));
        let k = serde_json::to_string(&KeyEntry {
            task_id: "1".into(),
            a: Model::Model1,
            b: Model::Model2,
        })
        .unwrap();
        assert_eq!(k, r#"{"task_id":"1","a":"model_1","b":"model_2"}"#);
    }

    #[test]
    fn tie_resolution_and_discussion() {
        use Verdict::*;
        let first = [
            rec("1", "x", Prediction1),
            rec("2", "x", Tie),
            rec("3", "x", Prediction1),
        ];
        let second = [
            rec("1", "y", Prediction1),
            rec("2", "y", Prediction2),
            rec("3", "y", Prediction2),
        ];
        let mut r = resolve_ties(&first, &second).unwrap();
        assert_eq!(r.final_labels["1"], Prediction1);
        assert_eq!(r.final_labels["2"], Prediction2);
        assert_eq!(r.needs_discussion, ["3"]);
        assert_eq!(r.final_labels.len() + r.needs_discussion.len(), 3);
        r.merge_discussion(&[rec("3", "both", Prediction2)]);
        assert_eq!(r.final_labels.len(), 3);
        assert!(r.needs_discussion.is_empty());
        assert!(matches!(resolve_ties(&first, &second[..2]), Err(HumanError::Uncovered(t)) if t == "3"));
    }

    #[test]
    fn report_on_identical_annotations() {
        use Verdict::*;
        let labels = [Prediction1, Prediction2, Tie, Prediction2];
        let first: Vec<_> = labels
            .iter()
            .enumerate()
            .map(|(i, v)| rec(&i.to_string(), "x", *v))
            .collect();
        let second: Vec<_> = labels
            .iter()
            .enumerate()
            .map(|(i, v)| rec(&i.to_string(), "y", *v))
            .collect();
        let r = agreement_report(&first, &second, None, KappaCategories::Three).unwrap();
        assert_eq!((r.raw_agreement, r.kappa), (1.0, Some(1.0)));
        assert_eq!(
            (r.tally.model_1, r.tally.model_2, r.tally.tie, r.tally.total),
            (1, 2, 1, 4)
        );
    }
}
