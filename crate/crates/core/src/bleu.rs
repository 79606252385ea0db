// SPDX-License-Identifier: Apache-2.0

//! Sentence-level smoothed BLEU-4, as scored by the CodeXGLUE code-to-text
//! evaluator.
//!
//! Per sentence, with clipped n-gram matches `m_n` out of `g_n` candidate
//! n-grams:
//!
//! ```text
//! log p_1 = ln(m_1 + tiny) - ln(g_1 + tiny)          (no smoothing)
//! log p_n = ln(m_n + 1 + tiny) - ln(g_n + 1 + tiny)  (n = 2..4)
//! bp      = min(0, 1 - (|ref| + 1) / (|cand| + 1))
//! score   = 100 * exp(mean(log p_1..p_4) + bp)
//! ```
//!
//! `tiny` is the smallest normal `f64`. The brevity penalty carries the same
//! add-one as the benchmark script. An empty candidate scores 0.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use unicode_general_category::{get_general_category, GeneralCategory};

pub const MAX_ORDER: usize = 4;

/// Lowercase, split into word runs and single punctuation characters, then
/// split underscores out of word runs.
///
/// Word characters follow Python's `str` regex `\w`: letters, numbers and
/// `_`. The underscore split reproduces the NIST punctuation pass the
/// benchmark applies after its own word/punctuation split.
pub fn tokenize_summary(text: &str) -> Vec<String> {
    let lowered = text.to_lowercase();
    let mut tokens = Vec::new();
    let mut word = String::new();
    for c in lowered.chars() {
        if is_word_char(c) && c != '_' {
            word.push(c);
            continue;
        }
        if !word.is_empty() {
            tokens.push(core::mem::take(&mut word));
        }
        if !is_space(c) {
            tokens.push(String::from(c));
        }
    }
    if !word.is_empty() {
        tokens.push(word);
    }
    tokens
}

fn is_word_char(c: char) -> bool {
    if c.is_ascii() {
        return c.is_ascii_alphanumeric() || c == '_';
    }
    use GeneralCategory::*;
    matches!(
        get_general_category(c),
        UppercaseLetter
            | LowercaseLetter
            | TitlecaseLetter
            | ModifierLetter
            | OtherLetter
            | DecimalNumber
            | LetterNumber
            | OtherNumber
    )
}

/// Python's `str.isspace`, which also counts the ASCII separators 0x1C-0x1F.
fn is_space(c: char) -> bool {
    c.is_whitespace() || ('\u{1c}'..='\u{1f}').contains(&c)
}

/// Clipped n-gram matches and candidate n-gram counts for orders 1..=4.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct NgramCounts {
    pub matches: [usize; MAX_ORDER],
    pub guesses: [usize; MAX_ORDER],
    pub candidate_len: usize,
    pub reference_len: usize,
}

impl NgramCounts {
    pub fn of<S: AsRef<str>>(candidate: &[S], reference: &[S]) -> Self {
        let cand: Vec<&str> = candidate.iter().map(AsRef::as_ref).collect();
        let refr: Vec<&str> = reference.iter().map(AsRef::as_ref).collect();
        let mut counts = NgramCounts {
            candidate_len: cand.len(),
            reference_len: refr.len(),
            ..Default::default()
        };
        for n in 1..=MAX_ORDER {
            let available = ngram_histogram(&refr, n);
            let produced = ngram_histogram(&cand, n);
            counts.guesses[n - 1] = cand.len().saturating_sub(n - 1);
            counts.matches[n - 1] = produced
                .iter()
                .map(|(gram, &c)| c.min(available.get(gram).copied().unwrap_or(0)))
                .sum();
        }
        counts
    }

    /// Score in `[0, 100]`.
    pub fn score(&self) -> f64 {
        if self.candidate_len == 0 {
            return 0.0;
        }
        let tiny = f64::MIN_POSITIVE;
        let mut log_precision = 0.0;
        for k in 0..MAX_ORDER {
            let smooth = if k > 0 { 1.0 } else { 0.0 };
            let m = self.matches[k] as f64;
            let g = self.guesses[k] as f64;
            log_precision += libm::log(m + smooth + tiny) - libm::log(g + smooth + tiny);
        }
        log_precision /= MAX_ORDER as f64;
        let brevity = 1.0 - (self.reference_len as f64 + 1.0) / (self.candidate_len as f64 + 1.0);
        let brevity = if brevity < 0.0 { brevity } else { 0.0 };
        let score = 100.0 * libm::exp(log_precision + brevity);
        score.clamp(0.0, 100.0)
    }
}

fn ngram_histogram<'a>(tokens: &[&'a str], n: usize) -> BTreeMap<Vec<&'a str>, usize> {
    let mut out = BTreeMap::new();
    if tokens.len() >= n {
        for window in tokens.windows(n) {
            *out.entry(window.to_vec()).or_insert(0) += 1;
        }
    }
    out
}

/// Smoothed BLEU-4 of one candidate against one reference, in `[0, 100]`.
pub fn sentence_bleu4<S: AsRef<str>>(candidate: &[S], reference: &[S]) -> f64 {
    NgramCounts::of(candidate, reference).score()
}

/// Tokenize both sides with [`tokenize_summary`] and score.
pub fn summary_bleu4(candidate: &str, reference: &str) -> f64 {
    sentence_bleu4(&tokenize_summary(candidate), &tokenize_summary(reference))
}

/// Arithmetic mean; `None` for an empty input.
pub fn mean(scores: impl IntoIterator<Item = f64>) -> Option<f64> {
    let (sum, n) = scores.into_iter().fold((0.0f64, 0usize), |(s, n), x| (s + x, n + 1));
    (n > 0).then(|| sum / n as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;

    fn toks(s: &str) -> Vec<String> {
        tokenize_summary(s)
    }

    #[test]
    fn tokenizes_like_the_benchmark() {
        assert_eq!(toks("Returns the sum."), ["returns", "the", "sum", "."]);
        assert!(toks("").is_empty());
        assert_eq!(toks("A  b"), ["a", "b"]);
        assert_eq!(toks("get_user_id()"), ["get", "_", "user", "_", "id", "(", ")"]);
        assert_eq!(toks("3.5 isn't"), ["3", ".", "5", "isn", "'", "t"]);
        assert_eq!(toks("Größe ändern"), ["größe", "ändern"]);
        assert_eq!(toks("a\u{1f}b"), ["a", "b"]);
    }

    #[test]
    fn identical_nonempty_is_100() {
        for s in ["a", "a b", "returns the sum of two numbers ."] {
            let t = toks(s);
            assert_eq!(sentence_bleu4(&t, &t), 100.0);
        }
    }

    #[test]
    fn empty_candidate_is_zero() {
        let empty: [&str; 0] = [];
        assert_eq!(sentence_bleu4(&empty, &["a", "b"]), 0.0);
        assert_eq!(sentence_bleu4(&empty, &empty), 0.0);
    }

    // Hand evaluation of the formula for [a,b,c,d] vs [a,b,c,e]:
    // matches 3,2,1,0 of guesses 4,3,2,1; equal lengths so bp = 0.
    // log p = ln(3/4) + ln(3/4) + ln(2/3) + ln(1/2), averaged over 4.
    #[test]
    fn one_substitution_matches_hand_computation() {
        let got = sentence_bleu4(&["a", "b", "c", "d"], &["a", "b", "c", "e"]);
        let expected = 100.0 * ((0.75f64 * 0.75 * (2.0 / 3.0) * 0.5).ln() / 4.0).exp();
        assert!((got - expected).abs() < 1e-9, "{got} vs {expected}");
        assert!((got - 65.803_700_6).abs() < 1e-6);
    }

    #[test]
    fn short_candidate_pays_brevity_penalty() {
        // [a, b] vs [a, b, c, d]: p1 = p2 = 1, p3 = p4 = 1/1 after smoothing
        // (0 + 1)/(0 + 1); bp = 1 - 5/3.
        let got = sentence_bleu4(&["a", "b"], &["a", "b", "c", "d"]);
        let expected = 100.0 * (1.0f64 - 5.0 / 3.0).exp();
        assert!((got - expected).abs() < 1e-9);
    }

    #[test]
    fn no_unigram_overlap_is_effectively_zero() {
        let got = sentence_bleu4(&["x", "y"], &["a", "b"]);
        assert!(got < 1e-60);
    }

    #[test]
    fn mean_of_scores() {
        assert_eq!(mean(vec![100.0, 50.0]), Some(75.0));
        assert_eq!(mean(Vec::new()), None);
    }

    proptest! {
        #[test]
        fn scores_are_bounded(
            cand in proptest::collection::vec("[abc]", 0..9),
            refr in proptest::collection::vec("[abc]", 0..9),
        ) {
            let s = sentence_bleu4(&cand, &refr);
            prop_assert!((0.0..=100.0).contains(&s));
            if !cand.is_empty() && cand == refr {
                prop_assert_eq!(s, 100.0);
            }
        }

        #[test]
        fn only_exact_matches_reach_100(
            cand in proptest::collection::vec("[ab]", 1..7),
            refr in proptest::collection::vec("[ab]", 1..7),
        ) {
            let s = sentence_bleu4(&cand, &refr);
            prop_assert_eq!(s == 100.0, cand == refr);
        }
    }
}
