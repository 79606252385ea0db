// SPDX-License-Identifier: Apache-2.0

//! Span edits against an unmodified source text.
//!
//! Every edit is expressed in byte offsets of the *original* text. Edits are
//! validated as a set (no overlaps, char boundaries, in bounds) and then applied
//! from the highest offset down, so earlier offsets never shift.

use alloc::string::String;
use alloc::vec::Vec;
use core::ops::Range;

/// Replace `start..end` of the original text with `replacement`.
///
/// An insertion is an edit with `start == end`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edit {
    pub start: usize,
    pub end: usize,
    pub replacement: String,
}

impl Edit {
    pub fn replace(span: Range<usize>, replacement: impl Into<String>) -> Self {
        Edit {
            start: span.start,
            end: span.end,
            replacement: replacement.into(),
        }
    }

    pub fn insert(at: usize, text: impl Into<String>) -> Self {
        Edit::replace(at..at, text)
    }

    pub fn span(&self) -> Range<usize> {
        self.start..self.end
    }

    pub fn is_insertion(&self) -> bool {
        self.start == self.end
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EditError {
    #[error("edits {first:?} and {second:?} overlap")]
    Overlap { first: Range<usize>, second: Range<usize> },
    #[error("edit {span:?} is outside the {len}-byte source")]
    OutOfBounds { span: Range<usize>, len: usize },
    #[error("edit {span:?} does not fall on character boundaries")]
    NotCharBoundary { span: Range<usize> },
}

/// Apply `edits` to `source`.
///
/// Insertions sharing an offset are emitted in the order given. An insertion
/// at the end of a replaced span (or at its start) is not an overlap.
pub fn apply_edits(source: &str, edits: &[Edit]) -> Result<String, EditError> {
    let mut order: Vec<usize> = (0..edits.len()).collect();
    // Stable: ties keep caller order. Insertions sort before a replacement
    // starting at the same offset.
    order.sort_by_key(|&i| (edits[i].start, !edits[i].is_insertion()));

    for &i in &order {
        let e = &edits[i];
        if e.start > e.end || e.end > source.len() {
            return Err(EditError::OutOfBounds {
                span: e.span(),
                len: source.len(),
            });
        }
        if !source.is_char_boundary(e.start) || !source.is_char_boundary(e.end) {
            return Err(EditError::NotCharBoundary { span: e.span() });
        }
    }
    let mut cursor = 0usize;
    let mut previous = 0..0;
    for &i in &order {
        let e = &edits[i];
        if e.start < cursor {
            return Err(EditError::Overlap {
                first: previous,
                second: e.span(),
            });
        }
        cursor = e.end;
        previous = e.span();
    }

    let mut out = String::from(source);
    for &i in order.iter().rev() {
        let e = &edits[i];
        out.replace_range(e.start..e.end, &e.replacement);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;

    #[test]
    fn zero_edits_is_identity() {
        assert_eq!(apply_edits("def f(): pass", &[]).unwrap(), "def f(): pass");
    }

    #[test]
    fn single_replacement_touches_only_its_span() {
        let src = "def add(a, b): return a + b";
        let out = apply_edits(src, &[Edit::replace(4..7, "FUNC_0")]).unwrap();
        assert_eq!(out, "def FUNC_0(a, b): return a + b");
        assert_eq!(&out[..4], &src[..4]);
        assert_eq!(&out[10..], &src[7..]);
    }

    #[test]
    fn edits_apply_regardless_of_given_order() {
        let src = "a b c";
        let fwd = [Edit::replace(0..1, "x"), Edit::replace(4..5, "zz")];
        let rev = [fwd[1].clone(), fwd[0].clone()];
        assert_eq!(apply_edits(src, &fwd).unwrap(), "x b zz");
        assert_eq!(apply_edits(src, &rev).unwrap(), "x b zz");
    }

    #[test]
    fn insertions_at_same_offset_keep_caller_order() {
        let out = apply_edits("ab", &[Edit::insert(1, "1"), Edit::insert(1, "2")]).unwrap();
        assert_eq!(out, "a12b");
    }

    #[test]
    fn insertion_adjacent_to_replacement_is_allowed() {
        let src = "def f(): return 1";
        let edits = vec![Edit::replace(8..9, "\n"), Edit::insert(9, "    # c\n    ")];
        assert_eq!(apply_edits(src, &edits).unwrap(), "def f():\n    # c\n    return 1");
        let edits = vec![Edit::insert(8, "<"), Edit::replace(8..9, "_")];
        assert_eq!(apply_edits(src, &edits).unwrap(), "def f():<_return 1");
    }

    #[test]
    fn overlapping_edits_are_rejected() {
        let err = apply_edits("abcdef", &[Edit::replace(0..3, "x"), Edit::replace(2..4, "y")]);
        assert!(matches!(err, Err(EditError::Overlap { .. })));
        let err = apply_edits("abcdef", &[Edit::replace(0..4, "x"), Edit::insert(2, "y")]);
        assert!(matches!(err, Err(EditError::Overlap { .. })));
        let err = apply_edits(
            "abcdef",
            &[Edit::replace(0..5, "x"), Edit::replace(1..2, "y"), Edit::insert(3, "z")],
        );
        assert!(matches!(err, Err(EditError::Overlap { .. })));
    }

    #[test]
    fn bounds_and_char_boundaries_are_checked() {
        assert!(matches!(
            apply_edits("abc", &[Edit::insert(4, "x")]),
            Err(EditError::OutOfBounds { .. })
        ));
        assert!(matches!(
            apply_edits("é", &[Edit::insert(1, "x")]),
            Err(EditError::NotCharBoundary { .. })
        ));
    }

    proptest! {
        // Disjoint replacements: output equals left-to-right splice.
        #[test]
        fn matches_left_to_right_splice(
            src in "[a-z ]{0,40}",
            cuts in proptest::collection::vec((0usize..40, 0usize..3, "[A-Z]{0,3}"), 0..6),
        ) {
            let mut edits = Vec::new();
            let mut next_free = 0usize;
            let mut sorted = cuts.clone();
            sorted.sort_by_key(|c| c.0);
            for (start, len, text) in sorted {
                let start = start.max(next_free);
                let end = start + len;
                if end > src.len() {
                    break;
                }
                next_free = end + 1;
                edits.push(Edit::replace(start..end, text));
            }
            let mut expected = String::new();
            let mut cursor = 0;
            for e in &edits {
                expected.push_str(&src[cursor..e.start]);
                expected.push_str(&e.replacement);
                cursor = e.end;
            }
            expected.push_str(&src[cursor..]);
            edits.reverse();
            prop_assert_eq!(apply_edits(&src, &edits).unwrap(), expected);
        }
    }
}
