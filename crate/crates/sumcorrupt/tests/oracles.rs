// SPDX-License-Identifier: Apache-2.0

mod common;

use common::{corpus, strip_tokens, LANGUAGES};
use proptest::prelude::*;
use sumcorrupt::corpus::CodeRecord;
use sumcorrupt::lang::parse_function;
use sumcorrupt::transform::{assign_donors, transform_record, Status, TransformKind};
use sumcorrupt_core::Language;

#[test]
fn lexer_drops_comments_only() {
    let js = strip_tokens(
        Language::JavaScript,
        "a = /x\\/y/g; // c\nb = `t ${ {k: '//'} } u` /* d */ / 2;",
    );
    assert_eq!(
        js,
        [
            "a", "=", "/x\\/y/g", ";", "b", "=", "`", "t ", "${", "{", "k", ":", "'//'", "}", "}", " u", "`", "/", "2",
            ";"
        ]
    );
    let py = strip_tokens(Language::Python, "x = '#' # c\ny = \"\"\"a\n# b\"\"\"");
    assert_eq!(py, ["x", "=", "'#'", "y", "=", "\"\"\"a\n# b\"\"\""]);
    let java = strip_tokens(Language::Java, "s = \"/* \\\" */\"; /* a */ c = '\\''; // e");
    assert_eq!(java, ["s", "=", "\"/* \\\" */\"", ";", "c", "=", "'\\''", ";"]);
}

/// Every token that changed was an original name mapped by the rename map,
/// and nothing else moved.
#[test]
fn renamed_tokens_follow_the_map() {
    for lang in LANGUAGES {
        let records = corpus(lang);
        let mut renamed = 0;
        for r in &records {
            let out = transform_record(r, None, TransformKind::Rename);
            if out.status != Status::Transformed {
                continue;
            }
            renamed += 1;
            let map = out.rename_map.as_ref().unwrap();
            let before = strip_tokens(lang, r.code());
            let after = strip_tokens(lang, out.record.as_ref().unwrap().code());
            assert_eq!(before.len(), after.len(), "{lang} #{}", r.index);
            for (b, a) in before.iter().zip(&after) {
                if b != a {
                    assert_eq!(map.get(b), Some(a.as_str()), "{lang} #{}: {b} -> {a}", r.index);
                }
            }
            let new_names: Vec<&str> = map.iter().map(|(_, new)| new).collect();
            for (b, a) in before.iter().zip(&after) {
                if new_names.contains(&a.as_str()) && b == a {
                    panic!("{lang} #{}: {a} already present and not renamed", r.index);
                }
            }
        }
        assert!(renamed * 10 > records.len() * 9, "{lang}: only {renamed} renamed");
    }
}

#[test]
fn generic_names_avoid_survivors() {
    let r = CodeRecord::new(0, Language::Python, "def f(a):\n    return VAR_0(a).FUNC_0", "s");
    let out = transform_record(&r, None, TransformKind::Rename);
    let code = out.record.unwrap().code().to_owned();
    assert_eq!(code, "def FUNC_1(VAR_1):\n    return VAR_0(VAR_1).FUNC_0");
}

#[test]
fn commented_small_cases_strip_back() {
    let cases = [
        (
            Language::Python,
            "def f(a):\n    '''doc'''\n    return a",
            "def g():\n    s = '''x\n# y'''",
        ),
        (Language::Python, "async def f(): return await g()", "x = '#'\n"),
        (
            Language::JavaScript,
            "function f(a) {\n  return `${a}`;\n}",
            "function g() { return /x\\/*/; }",
        ),
        (
            Language::Java,
            "void f() { int x = 1; }",
            "String s = \"*/\"; /* c */ char c = '*';",
        ),
    ];
    for (lang, host, donor) in cases {
        let h = CodeRecord::new(0, lang, host, "s");
        let d = CodeRecord::new(1, lang, donor, "s");
        let out = transform_record(&h, Some(&d), TransformKind::Comment);
        let code = out.record.expect("transformed").code().to_owned();
        assert!(parse_function(lang, &code).parse_ok(), "{code}");
        assert_eq!(strip_tokens(lang, &code), strip_tokens(lang, host), "{code}");
    }
}

fn python_function() -> impl Strategy<Value = String> {
    let name = prop::sample::select(vec!["a", "b", "count", "item", "total", "VAR_0", "len", "x1"]);
    let stmt = (name.clone(), name.clone(), 0i32..9).prop_map(|(l, r, k)| match k % 4 {
        0 => format!("{l} = {r} + {k}"),
        1 => format!("for {l} in range({k}):\n        {r} = {l}"),
        2 => format!("if {r}:\n        {l} = [{r} for {r} in ({k},)]"),
        _ => format!("print({r})"),
    });
    (
        prop::collection::vec(name.clone(), 0..3),
        prop::collection::vec(stmt, 1..5),
        name,
    )
        .prop_map(|(params, body, ret)| {
            let mut params = params;
            params.sort();
            params.dedup();
            let body: Vec<String> = body.iter().map(|s| format!("    {s}")).collect();
            format!("def f({}):\n{}\n    return {ret}", params.join(", "), body.join("\n"))
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn transforms_keep_python_parseable(host in python_function(), donor in python_function()) {
        let h = CodeRecord::new(0, Language::Python, host.as_str(), "s");
        let d = CodeRecord::new(1, Language::Python, donor.as_str(), "s");
        for kind in [TransformKind::Rename, TransformKind::Comment, TransformKind::Deadcode] {
            let out = transform_record(&h, Some(&d), kind);
            if let Some(r) = &out.record {
                prop_assert!(parse_function(Language::Python, r.code()).parse_ok(), "{kind}: {}", r.code());
            }
            if kind == TransformKind::Comment {
                let code = out.record.unwrap().code().to_owned();
                prop_assert_eq!(strip_tokens(Language::Python, &code), strip_tokens(Language::Python, &host));
            }
        }
    }

    #[test]
    fn donors_are_other_records(len in 0usize..300, seed in any::<u64>()) {
        let donors = assign_donors(len, seed);
        prop_assert_eq!(donors.len(), len);
        for (i, d) in donors.iter().enumerate() {
            match d {
                Some(j) => prop_assert!(*j != i && *j < len),
                None => prop_assert!(len < 2),
            }
        }
        prop_assert_eq!(donors, assign_donors(len, seed));
    }
}
