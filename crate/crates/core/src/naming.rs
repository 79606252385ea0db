// SPDX-License-Identifier: Apache-2.0

//! Generic replacement names for renamed identifiers.
//!
//! Function names become `FUNC_k` and parameters/locals become `VAR_k`. Each
//! counter starts at 0 per record and advances in first-appearance order. A
//! candidate that already occurs in the record as a name we are *not*
//! renaming is skipped, which keeps the map injective and collision-free.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum IdentifierKind {
    FunctionName,
    Parameter,
    LocalVariable,
}

impl IdentifierKind {
    fn prefix(self) -> &'static str {
        match self {
            IdentifierKind::FunctionName => "FUNC_",
            IdentifierKind::Parameter | IdentifierKind::LocalVariable => "VAR_",
        }
    }
}

/// Original name to generated name, in first-appearance order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RenameMap {
    entries: Vec<(String, String)>,
    /// Next free `FUNC_k` value.
    pub function_counter: u32,
    /// Next free `VAR_k` value.
    pub variable_counter: u32,
}

impl RenameMap {
    /// Allocate names for `originals`, visited in order; repeats are ignored.
    ///
    /// `is_reserved` reports names that stay in the record after renaming;
    /// those are never handed out.
    pub fn allocate<'a, I, F>(originals: I, is_reserved: F) -> Self
    where
        I: IntoIterator<Item = (&'a str, IdentifierKind)>,
        F: Fn(&str) -> bool,
    {
        let mut map = RenameMap::default();
        let mut seen: BTreeSet<&'a str> = BTreeSet::new();
        let mut candidate = String::new();
        for (name, kind) in originals {
            if !seen.insert(name) {
                continue;
            }
            let counter = match kind {
                IdentifierKind::FunctionName => &mut map.function_counter,
                _ => &mut map.variable_counter,
            };
            loop {
                candidate.clear();
                let _ = write!(candidate, "{}{}", kind.prefix(), *counter);
                *counter += 1;
                if !is_reserved(&candidate) {
                    break;
                }
            }
            map.entries.push((name.into(), candidate.clone()));
        }
        map
    }

    pub fn get(&self, original: &str) -> Option<&str> {
        self.entries
            .iter()
            .find(|(from, _)| from == original)
            .map(|(_, to)| to.as_str())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &str)> {
        self.entries.iter().map(|(a, b)| (a.as_str(), b.as_str()))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// True when every name maps to itself (renaming already-generic code).
    pub fn is_identity(&self) -> bool {
        self.entries.iter().all(|(from, to)| from == to)
    }
}
