// SPDX-License-Identifier: Apache-2.0

use sumcorrupt_core::{Edit, RenameMap};

use super::{finish, Reason, TransformOutcome};
use crate::corpus::CodeRecord;
use crate::lang::{parse_function, renameables_with_remaining, render};

/// Replace function, parameter and local names with `FUNC_k` / `VAR_k`.
pub fn rename_identifiers(record: &CodeRecord) -> TransformOutcome {
    let parsed = parse_function(record.language, record.code());
    if !parsed.parse_ok() {
        return TransformOutcome::dropped(Reason::ParseFailure);
    }
    let (occurrences, remaining) = renameables_with_remaining(&parsed);
    if occurrences.is_empty() {
        return TransformOutcome::unchanged(record, Reason::NoRenameableIdentifiers);
    }
    let map = RenameMap::allocate(occurrences.iter().map(|o| (o.name.as_str(), o.kind)), |candidate| {
        remaining.contains(candidate)
    });
    if map.is_identity() {
        let mut out = TransformOutcome::unchanged(record, Reason::IdentityRename);
        out.rename_map = Some(map);
        return out;
    }
    let edits: Vec<Edit> = occurrences
        .iter()
        .filter_map(|o| {
            let to = map.get(&o.name)?;
            (to != o.name).then(|| Edit::replace(o.span.clone(), to))
        })
        .collect();
    let code = render(&parsed, &edits).expect("occurrence spans are disjoint");
    match finish(record, code) {
        Ok(r) => {
            let mut out = TransformOutcome::transformed(r);
            out.rename_map = Some(map);
            out
        }
        Err(reason) => TransformOutcome::dropped(reason),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transform::Status;
    use sumcorrupt_core::Language;

    fn rename(lang: Language, code: &str) -> TransformOutcome {
        rename_identifiers(&CodeRecord::new(0, lang, code, "s"))
    }

    fn code(out: &TransformOutcome) -> &str {
        out.record.as_ref().unwrap().code()
    }

    #[test]
    fn python_add() {
        let out = rename(Language::Python, "def add(a, b):\n    return a + b");
        assert_eq!(out.status, Status::Transformed);
        assert_eq!(code(&out), "def FUNC_0(VAR_0, VAR_1):\n    return VAR_0 + VAR_1");
        let map: Vec<_> = out
            .rename_map
            .as_ref()
            .unwrap()
            .iter()
            .map(|(a, b)| (a.to_owned(), b.to_owned()))
            .collect();
        assert_eq!(
            map,
            [
                ("add".into(), "FUNC_0".into()),
                ("a".into(), "VAR_0".into()),
                ("b".into(), "VAR_1".into())
            ]
        );
    }

    #[test]
    fn builtins_stay() {
        let out = rename(Language::Python, "def f():\n    return len([1])");
        assert_eq!(code(&out), "def FUNC_0():\n    return len([1])");
    }

    #[test]
    fn unparseable_is_dropped() {
        let out = rename(Language::JavaScript, "function (a) { return a; }");
        assert_eq!((out.status, out.reason), (Status::Dropped, Some(Reason::ParseFailure)));
        assert!(out.record.is_none());
    }

    #[test]
    fn generated_names_avoid_remaining_ones() {
        let out = rename(Language::Python, "def f(a):\n    return a + VAR_0\n");
        assert_eq!(code(&out), "def FUNC_0(VAR_1):\n    return VAR_1 + VAR_0\n");
    }

    #[test]
    fn already_generic_is_identity() {
        let once = rename(Language::Java, "int f(int a, int b) { int c = a * b; return c; }");
        let twice = rename_identifiers(once.record.as_ref().unwrap());
        assert_eq!(twice.status, Status::Unchanged);
        assert_eq!(twice.reason, Some(Reason::IdentityRename));
        assert!(twice.rename_map.unwrap().is_identity());
    }

    #[test]
    fn nothing_to_rename() {
        let out = rename(Language::Python, "def f():\n    eval('1')\n");
        assert_eq!(out.reason, Some(Reason::NoRenameableIdentifiers));
        assert_eq!(code(&out), "def f():\n    eval('1')\n");
    }
}
