// SPDX-License-Identifier: Apache-2.0

//! Pure algorithms behind the `sumcorrupt` toolkit.
//!
//! Everything here works on plain text and counts: span edits, comment
//! rendering, generic-name allocation, donor sampling, smoothed BLEU-4 and
//! inter-annotator agreement. Parsing, file formats and the command line live
//! in the `sumcorrupt` crate.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod agreement;
pub mod bleu;
pub mod comment;
pub mod donor;
pub mod edit;
pub mod language;
pub mod naming;

pub use edit::{apply_edits, Edit, EditError};
pub use language::Language;
pub use naming::{IdentifierKind, RenameMap};
