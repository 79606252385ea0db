// SPDX-License-Identifier: Apache-2.0

//! Rendering a snippet inert with the host language's comment syntax.

use alloc::string::String;
use alloc::vec::Vec;

use crate::Language;

/// Split `text` on the line terminators the language's lexer recognises.
///
/// Splitting only on `\n` is not enough: a lone `\r` ends a Python line and
/// U+2028/U+2029 end a JavaScript line, so either would let the tail of a
/// line comment escape into live code.
pub fn split_lines(language: Language, text: &str) -> Vec<&str> {
    let mut lines = Vec::new();
    let mut start = 0;
    let mut chars = text.char_indices().peekable();
    while let Some((i, c)) = chars.next() {
        let terminator_len = match c {
            '\n' => 1,
            '\r' => {
                if matches!(chars.peek(), Some((_, '\n'))) {
                    chars.next();
                    2
                } else {
                    1
                }
            }
            '\u{2028}' | '\u{2029}' if language == Language::JavaScript => c.len_utf8(),
            _ => continue,
        };
        lines.push(&text[start..i]);
        start = i + terminator_len;
    }
    lines.push(&text[start..]);
    lines
}

/// Comment out `snippet` for insertion at `indentation`.
///
/// * Python: every line becomes `indentation + "# " + line`.
/// * JavaScript: every line becomes `indentation + "// " + line`.
/// * Java: the snippet is wrapped in a `/* ... */` block on its own lines,
///   with terminators inside the snippet neutralised first.
///
/// Lines are joined with `\n`; no trailing newline is added.
pub fn comment_out(language: Language, snippet: &str, indentation: &str) -> String {
    let mut out = String::new();
    match language {
        Language::Python | Language::JavaScript => {
            let marker = if language == Language::Python { "# " } else { "// " };
            for (i, line) in split_lines(language, snippet).into_iter().enumerate() {
                if i > 0 {
                    out.push('\n');
                }
                out.push_str(indentation);
                out.push_str(marker);
                out.push_str(line);
            }
        }
        Language::Java => {
            let body = neutralize_block_comment(snippet);
            out.push_str(indentation);
            out.push_str("/*\n");
            for line in split_lines(language, &body) {
                out.push_str(indentation);
                out.push_str(line);
                out.push('\n');
            }
            out.push_str(indentation);
            out.push_str("*/");
        }
    }
    out
}

/// Make `text` safe to place between `/*` and `*/`.
///
/// Literal `*/` becomes `* /`. Java translates `\uXXXX` escapes before
/// lexing, so escapes that decode to `*` or `/` get a space after the
/// backslash as well.
pub fn neutralize_block_comment(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b'*' if bytes.get(i + 1) == Some(&b'/') => {
                out.push_str("* ");
                i += 1;
            }
            b'\\' => {
                out.push('\\');
                if let Some(len) = unicode_escape_len(&bytes[i..]) {
                    let hex = &text[i + len - 4..i + len];
                    if matches!(u32::from_str_radix(hex, 16), Ok(0x2a) | Ok(0x2f)) {
                        out.push(' ');
                    }
                }
                i += 1;
            }
            _ => {
                let c = text[i..].chars().next().unwrap_or_default();
                out.push(c);
                i += c.len_utf8();
            }
        }
    }
    out
}

/// Length of a `\u+XXXX` escape at the start of `bytes`.
fn unicode_escape_len(bytes: &[u8]) -> Option<usize> {
    let us = bytes[1..].iter().take_while(|&&b| b == b'u').count();
    if us == 0 {
        return None;
    }
    let hex_start = 1 + us;
    let hex = bytes.get(hex_start..hex_start + 4)?;
    hex.iter().all(u8::is_ascii_hexdigit).then_some(hex_start + 4)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn python_prefixes_every_line() {
        assert_eq!(
            comment_out(Language::Python, "x = 1\ny = 2", "    "),
            "    # x = 1\n    # y = 2"
        );
    }

    #[test]
    fn javascript_prefixes_every_line() {
        assert_eq!(
            comment_out(Language::JavaScript, "var a;\nf(a);", "  "),
            "  // var a;\n  // f(a);"
        );
    }

    #[test]
    fn java_wraps_in_block() {
        assert_eq!(comment_out(Language::Java, "int z = 3;", ""), "/*\nint z = 3;\n*/");
        assert_eq!(
            comment_out(Language::Java, "int z = 3;\nz++;", "  "),
            "  /*\n  int z = 3;\n  z++;\n  */"
        );
    }

    #[test]
    fn java_neutralizes_terminators() {
        assert_eq!(comment_out(Language::Java, "a */ b", ""), "/*\na * / b\n*/");
        assert_eq!(neutralize_block_comment("x **/ y"), "x ** / y");
        assert_eq!(
            neutralize_block_comment(r"s = '\u002a\u002F';"),
            r"s = '\ u002a\ u002F';"
        );
        assert_eq!(neutralize_block_comment(r"\uuu002a"), r"\ uuu002a");
        // Other escapes are left alone.
        assert_eq!(neutralize_block_comment(r"A \n \u12"), r"A \n \u12");
    }

    #[test]
    fn lone_carriage_returns_split_python_lines() {
        assert_eq!(
            comment_out(Language::Python, "a = 1\rb = 2\r\nc = 3", ""),
            "# a = 1\n# b = 2\n# c = 3"
        );
    }

    #[test]
    fn javascript_line_separators_split_lines() {
        let out = comment_out(Language::JavaScript, "a();\u{2028}b();", "");
        assert_eq!(out, "// a();\n// b();");
        // Not a Python line terminator.
        assert_eq!(split_lines(Language::Python, "a\u{2028}b").len(), 1);
    }

    #[test]
    fn split_lines_keeps_empty_segments() {
        assert_eq!(split_lines(Language::Python, "a\n\nb\n"), ["a", "", "b", ""]);
        assert_eq!(split_lines(Language::Java, ""), [""]);
    }
}
