// SPDX-License-Identifier: Apache-2.0

use std::collections::BTreeSet;

use sumcorrupt_core::Language;

use super::{finish, Reason, TransformOutcome};
use crate::corpus::CodeRecord;
use crate::lang::scope::Flavor;
use crate::lang::{dead_code_facts, find_insertion_points, parse_function, render, DeadCodeFacts};

/// Insert the donor's body statements after the host's final top-level
/// `return`.
pub fn insert_dead_code(record: &CodeRecord, donor: &CodeRecord) -> TransformOutcome {
    let language = record.language;
    if language == Language::Java {
        return TransformOutcome::dropped(Reason::DonorUninsertable);
    }
    let parsed = parse_function(language, record.code());
    if !parsed.parse_ok() {
        return TransformOutcome::dropped(Reason::ParseFailure);
    }
    let site = find_insertion_points(&parsed).and_then(|p| p.final_top_level_return().cloned());
    let (Some(site), Some(host)) = (site, dead_code_facts(&parsed)) else {
        return TransformOutcome::dropped(Reason::NoReturn);
    };
    let donor_parsed = parse_function(donor.language, donor.code());
    if donor.language != language || !donor_parsed.parse_ok() {
        return TransformOutcome::dropped(Reason::ParseFailure);
    }
    let Some(guest) = dead_code_facts(&donor_parsed) else {
        return TransformOutcome::dropped(Reason::DonorUninsertable);
    };
    let Some(body) = guest.body.clone() else {
        return TransformOutcome::dropped(Reason::DonorUninsertable);
    };
    let admissible = match language {
        Language::Python => python_admits(&host, &guest),
        _ => javascript_admits(&host, &guest),
    };
    if !admissible {
        return TransformOutcome::dropped(Reason::DonorUninsertable);
    }
    let mut statements = donor.code()[body].to_owned();
    if guest.body_last_needs_semicolon {
        statements.push(';');
    }
    let payload = reindent(&statements, &guest.body_indentation, &site.indentation);
    let code = render(&parsed, &site.edits(&payload)).expect("the reshape ends before the insertion");
    match finish(record, code) {
        Ok(r) => TransformOutcome::transformed(r),
        Err(_) => TransformOutcome::dropped(Reason::DonorUninsertable),
    }
}

/// Move `text` from indentation `from` to `to`: the first line gains `to`,
/// later lines swap a leading `from` for `to`.
fn reindent(text: &str, from: &str, to: &str) -> String {
    let mut out = String::with_capacity(text.len() + to.len() * 8);
    for (i, line) in text.split('\n').enumerate() {
        if i > 0 {
            out.push('\n');
        }
        if line.trim().is_empty() && i > 0 {
            continue;
        }
        out.push_str(to);
        out.push_str(if i == 0 {
            line
        } else {
            line.strip_prefix(from).unwrap_or(line)
        });
    }
    out
}

fn flavored(facts: &DeadCodeFacts, flavor: Flavor) -> impl Iterator<Item = &String> {
    facts.bound.get(&flavor).into_iter().flatten()
}

fn meets(a: impl IntoIterator<Item = impl AsRef<str>>, b: &BTreeSet<String>) -> bool {
    a.into_iter().any(|n| b.contains(n.as_ref()))
}

/// Python only decides locality at compile time, so any name the donor binds
/// would turn a host global into an unbound local.
fn python_admits(host: &DeadCodeFacts, guest: &DeadCodeFacts) -> bool {
    if guest.has_yield && !host.is_generator {
        return false;
    }
    if guest.has_await && !host.is_async {
        return false;
    }
    if guest.has_escape || guest.has_wildcard_import {
        return false;
    }
    if guest.has_py2_statement && !host.has_py2_statement {
        return false;
    }
    if host.is_async && host.is_generator && guest.has_valued_return {
        return false;
    }
    !meets(&guest.all_bound, &host.free_names)
}

fn javascript_admits(host: &DeadCodeFacts, guest: &DeadCodeFacts) -> bool {
    if (guest.has_yield && !host.is_generator) || (guest.has_await && !host.is_async) {
        return false;
    }
    if guest.has_super || (host.strict && !guest.strict) {
        return false;
    }
    if guest.all_bound.contains("arguments") || guest.all_bound.contains("eval") {
        return false;
    }
    // `var` and function declarations hoist, `let`/`const` shadow for the
    // whole block: either can capture a name the host reads from outside.
    if meets(&guest.all_bound, &host.free_names) {
        return false;
    }
    let host_top: BTreeSet<String> = [Flavor::Param, Flavor::Var, Flavor::Lexical, Flavor::Function]
        .into_iter()
        .flat_map(|f| flavored(host, f).cloned())
        .collect();
    let host_lexical: BTreeSet<String> = flavored(host, Flavor::Lexical).cloned().collect();
    if meets(flavored(guest, Flavor::Lexical), &host_top) {
        return false;
    }
    if meets(flavored(guest, Flavor::Var), &host_lexical) {
        return false;
    }
    // A hoisted function declaration overwrites a parameter or `var` of the
    // same name before the first statement runs.
    !meets(flavored(guest, Flavor::Function), &host.all_names)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transform::Status;

    fn insert(lang: Language, host: &str, donor: &str) -> TransformOutcome {
        insert_dead_code(
            &CodeRecord::new(0, lang, host, "s"),
            &CodeRecord::new(1, lang, donor, "s"),
        )
    }

    fn code(lang: Language, host: &str, donor: &str) -> String {
        let out = insert(lang, host, donor);
        assert_eq!(out.status, Status::Transformed, "{host} <- {donor}: {:?}", out.reason);
        out.record.unwrap().code().to_owned()
    }

    fn reason(lang: Language, host: &str, donor: &str) -> Option<Reason> {
        insert(lang, host, donor).reason
    }

    #[test]
    fn python_body_follows_the_return() {
        let py = Language::Python;
        assert_eq!(
            code(py, "def f():\n    return 1", "def g():\n    y = 2"),
            "def f():\n    return 1\n    y = 2"
        );
        assert_eq!(
            code(py, "def f(): return 1", "def g(): y = 2"),
            "def f():\n    return 1\n    y = 2"
        );
        assert_eq!(
            code(
                py,
                "def f(a):\n    if a:\n        return 0\n    return 1  # one\n",
                "def g(b):\n\tfor i in b:\n\t\tprint(i)\n"
            ),
            "def f(a):\n    if a:\n        return 0\n    return 1  # one\n    for i in b:\n    \tprint(i)\n"
        );
        let undefined = code(py, "def f():\n    return 1", "def g():\n    return missing(q)");
        assert!(undefined.ends_with("return missing(q)"));
    }

    #[test]
    fn python_rejections() {
        let py = Language::Python;
        assert_eq!(
            reason(py, "def f():\n    pass", "def g():\n    y = 2"),
            Some(Reason::NoReturn)
        );
        assert_eq!(
            reason(py, "def f():\n    if x:\n        return 1", "def g():\n    y = 2"),
            Some(Reason::NoReturn)
        );
        assert_eq!(reason(py, "def f(:", "def g():\n    y = 2"), Some(Reason::ParseFailure));
        assert_eq!(
            reason(py, "def f():\n    return 1", "def g(:"),
            Some(Reason::ParseFailure)
        );
        let drop = |donor| reason(py, "def f():\n    return x", donor);
        assert_eq!(drop("def g():\n    yield 1"), Some(Reason::DonorUninsertable));
        assert_eq!(drop("def g():\n    x = 1"), Some(Reason::DonorUninsertable));
        assert_eq!(
            drop("def g():\n    global y\n    y = 1"),
            Some(Reason::DonorUninsertable)
        );
        assert_eq!(drop("async def g():\n    await h()"), Some(Reason::DonorUninsertable));
        assert_eq!(
            drop("def g():\n    for x in y:\n        pass"),
            Some(Reason::DonorUninsertable)
        );
        assert_eq!(
            drop("def g():\n    y = [x for x in z]"),
            Some(Reason::DonorUninsertable)
        );
        assert_eq!(drop("def g(x):\n    return x"), None);
        assert_eq!(
            reason(py, "def f():\n    yield 1\n    return", "def g():\n    yield 2"),
            None
        );
    }

    #[test]
    fn javascript_body_follows_the_return() {
        let js = Language::JavaScript;
        assert_eq!(
            code(
                js,
                "function f() {\n  return 1\n}",
                "function g() {\n    var y = 2\n    h(y)\n}"
            ),
            "function f() {\n  return 1;\n  var y = 2\n  h(y);\n}"
        );
        assert_eq!(
            code(js, "function f() { return 1; }", "function g() { q(); }"),
            "function f() { return 1;\nq(); }"
        );
    }

    #[test]
    fn javascript_rejections() {
        let js = Language::JavaScript;
        let drop = |host, donor| reason(js, host, donor);
        let r = Some(Reason::DonorUninsertable);
        assert_eq!(drop("function f() { return x; }", "function g() { var x = 1; }"), r);
        assert_eq!(drop("function f(a) { return a; }", "function g() { let a = 1; }"), r);
        assert_eq!(
            drop("function f() { let a = 1; return a; }", "function g() { var a; }"),
            r
        );
        assert_eq!(
            drop("function f(a) { return a; }", "function g() { function a() {} }"),
            r
        );
        assert_eq!(drop("function f() { return 1; }", "function g() { var arguments; }"), r);
        assert_eq!(drop("function f() { return 1; }", "function* g() { yield 1; }"), r);
        assert_eq!(drop("function f() { return 1; }", "async function g() { await 1; }"), r);
        assert_eq!(
            drop("function f() { 'use strict'; return 1; }", "function g() { h(); }"),
            r
        );
        assert_eq!(drop("function f() { return 1; }", "function g() { super.x(); }"), r);
        assert_eq!(
            drop("function f() { h(); }", "function g() { h(); }"),
            Some(Reason::NoReturn)
        );
        assert_eq!(
            drop("const f = x => x;", "function g() { h(); }"),
            Some(Reason::NoReturn)
        );
        assert_eq!(drop("function f(a) { return a; }", "function g() { var a = 2; }"), None);
        assert_eq!(
            drop("async function f() { return 1; }", "async function g() { await h(); }"),
            None
        );
    }

    #[test]
    fn reindent_replaces_the_donor_prefix() {
        assert_eq!(reindent("a\n    b\n\n  c", "    ", "\t"), "\ta\n\tb\n\n\t  c");
    }
}
