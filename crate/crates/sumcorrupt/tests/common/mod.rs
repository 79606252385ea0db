// SPDX-License-Identifier: Apache-2.0
#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use sumcorrupt::corpus::{read_corpus, CodeRecord};
use sumcorrupt_core::Language;

pub const LANGUAGES: [Language; 3] = [Language::Python, Language::JavaScript, Language::Java];

pub fn fixture(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(rel)
}

pub fn workspace_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

pub fn script(name: &str) -> PathBuf {
    workspace_root().join("scripts").join(name)
}

pub fn corpus_path(lang: Language) -> PathBuf {
    fixture(&format!("corpus/{}.jsonl", lang.as_str()))
}

pub fn corpus(lang: Language) -> Vec<CodeRecord> {
    read_corpus(&corpus_path(lang), lang).expect("fixture corpus reads")
}

pub fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_sumcorrupt"))
}

pub fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

pub fn has_tool(tool: &str) -> bool {
    Command::new(tool)
        .arg("--version")
        .output()
        .is_ok_and(|o| o.status.success())
}

/// Tokens of `code` with comments and layout removed. Words, string
/// literals and single punctuation characters are tokens.
pub fn strip_tokens(lang: Language, code: &str) -> Vec<String> {
    let chars: Vec<char> = code.chars().collect();
    let mut lexer = Lexer {
        lang,
        s: &chars,
        i: 0,
        out: Vec::new(),
    };
    lexer.code(false);
    lexer.out
}

struct Lexer<'a> {
    lang: Language,
    s: &'a [char],
    i: usize,
    out: Vec<String>,
}

impl Lexer<'_> {
    fn peek(&self, k: usize) -> Option<char> {
        self.s.get(self.i + k).copied()
    }

    fn starts(&self, pat: &str) -> bool {
        pat.chars().enumerate().all(|(k, c)| self.peek(k) == Some(c))
    }

    fn word_char(c: char) -> bool {
        c.is_alphanumeric() || c == '_' || c == '$'
    }

    fn regex_allowed(&self) -> bool {
        const BEFORE_REGEX: &[&str] = &[
            "return",
            "typeof",
            "instanceof",
            "in",
            "of",
            "new",
            "delete",
            "void",
            "throw",
            "case",
            "do",
            "else",
            "yield",
            "await",
        ];
        match self.out.last() {
            None => true,
            Some(t) => {
                let c = t.chars().next().unwrap();
                if Self::word_char(c) {
                    BEFORE_REGEX.contains(&t.as_str())
                } else {
                    !matches!(c, ')' | ']' | '}' | '"' | '\'' | '`')
                }
            }
        }
    }

    /// Lex until the end, or until an unmatched `}` when `in_template`.
    fn code(&mut self, in_template: bool) {
        let mut depth = 0usize;
        while let Some(c) = self.peek(0) {
            let line_comment = match self.lang {
                Language::Python => c == '#',
                _ => self.starts("//"),
            };
            if line_comment {
                while self.peek(0).is_some_and(|c| c != '\n') {
                    self.i += 1;
                }
                continue;
            }
            if self.lang != Language::Python && self.starts("/*") {
                self.i += 2;
                while self.peek(0).is_some() && !self.starts("*/") {
                    self.i += 1;
                }
                self.i = (self.i + 2).min(self.s.len());
                continue;
            }
            if c.is_whitespace() || (self.lang == Language::Python && c == '\\' && self.peek(1) == Some('\n')) {
                self.i += 1;
                continue;
            }
            if c == '"' || c == '\'' {
                self.string();
                continue;
            }
            if c == '`' && self.lang == Language::JavaScript {
                self.template();
                continue;
            }
            if c == '/' && self.lang == Language::JavaScript && self.regex_allowed() {
                self.regex();
                continue;
            }
            if Self::word_char(c) {
                let start = self.i;
                while self.peek(0).is_some_and(Self::word_char) {
                    self.i += 1;
                }
                self.out.push(self.s[start..self.i].iter().collect());
                continue;
            }
            if in_template {
                if c == '{' {
                    depth += 1;
                } else if c == '}' {
                    if depth == 0 {
                        self.i += 1;
                        return;
                    }
                    depth -= 1;
                }
            }
            self.out.push(c.to_string());
            self.i += 1;
        }
    }

    fn string(&mut self) {
        let start = self.i;
        let q = self.peek(0).unwrap();
        let triple = matches!(self.lang, Language::Python | Language::Java)
            && self.peek(1) == Some(q)
            && self.peek(2) == Some(q);
        self.i += if triple { 3 } else { 1 };
        while let Some(c) = self.peek(0) {
            if c == '\\' {
                self.i += 2;
                continue;
            }
            if triple {
                if c == q && self.peek(1) == Some(q) && self.peek(2) == Some(q) {
                    self.i += 3;
                    break;
                }
            } else if c == q || c == '\n' {
                self.i += 1;
                break;
            }
            self.i += 1;
        }
        self.i = self.i.min(self.s.len());
        self.out.push(self.s[start..self.i].iter().collect());
    }

    fn template(&mut self) {
        self.out.push("`".into());
        self.i += 1;
        let mut chunk = String::new();
        while let Some(c) = self.peek(0) {
            if c == '\\' {
                chunk.extend(self.s[self.i..(self.i + 2).min(self.s.len())].iter());
                self.i += 2;
                continue;
            }
            if c == '`' {
                self.i += 1;
                break;
            }
            if c == '$' && self.peek(1) == Some('{') {
                self.out.push(std::mem::take(&mut chunk));
                self.i += 2;
                self.out.push("${".into());
                self.code(true);
                self.out.push("}".into());
                continue;
            }
            chunk.push(c);
            self.i += 1;
        }
        self.out.push(chunk);
        self.out.push("`".into());
    }

    fn regex(&mut self) {
        let start = self.i;
        self.i += 1;
        let mut class = false;
        while let Some(c) = self.peek(0) {
            match c {
                '\\' => self.i += 1,
                '[' => class = true,
                ']' => class = false,
                '/' if !class => break,
                '\n' => break,
                _ => {}
            }
            self.i += 1;
        }
        self.i = (self.i + 1).min(self.s.len());
        while self.peek(0).is_some_and(|c| c.is_ascii_alphabetic()) {
            self.i += 1;
        }
        self.out.push(self.s[start..self.i].iter().collect());
    }
}
