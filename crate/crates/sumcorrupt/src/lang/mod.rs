// SPDX-License-Identifier: Apache-2.0

//! Per-language parsing, identifier discovery and insertion sites.

mod java;
mod javascript;
mod python;
pub(crate) mod scope;

use std::cell::RefCell;
use std::collections::{BTreeSet, HashMap, HashSet};
use std::ops::Range;

use sumcorrupt_core::{apply_edits, Edit, EditError, IdentifierKind, Language};
use tree_sitter::{Node, Parser, Tree};

use scope::ScopeTree;

/// Prefix wrapped around a bare Java method so the grammar sees a class.
pub(crate) const JAVA_PREFIX: &str = "class __W {\n";
pub(crate) const JAVA_SUFFIX: &str = "\n}";

#[derive(Clone)]
pub struct ParsedFunction {
    language: Language,
    source: String,
    /// `source`, or the wrapped form for Java.
    text: String,
    offset: usize,
    tree: Tree,
    parse_ok: bool,
}

impl std::fmt::Debug for ParsedFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ParsedFunction")
            .field("language", &self.language)
            .field("parse_ok", &self.parse_ok)
            .field("source", &self.source)
            .finish()
    }
}

thread_local! {
    static PARSERS: RefCell<[Option<Parser>; 3]> = const { RefCell::new([None, None, None]) };
}

fn grammar(language: Language) -> tree_sitter::Language {
    match language {
        Language::Python => tree_sitter_python::LANGUAGE.into(),
        Language::JavaScript => tree_sitter_javascript::LANGUAGE.into(),
        Language::Java => tree_sitter_java::LANGUAGE.into(),
    }
}

fn slot(language: Language) -> usize {
    match language {
        Language::Python => 0,
        Language::JavaScript => 1,
        Language::Java => 2,
    }
}

/// Parse one corpus function. Failure is reported through `parse_ok`.
pub fn parse_function(language: Language, code: &str) -> ParsedFunction {
    let (text, offset) = match language {
        Language::Java => (format!("{JAVA_PREFIX}{code}{JAVA_SUFFIX}"), JAVA_PREFIX.len()),
        _ => (code.to_owned(), 0),
    };
    let tree = PARSERS.with(|cell| {
        let mut parsers = cell.borrow_mut();
        let parser = parsers[slot(language)].get_or_insert_with(|| {
            let mut p = Parser::new();
            p.set_language(&grammar(language))
                .expect("bundled grammar matches the tree-sitter ABI");
            p
        });
        parser.parse(&text, None).expect("parser has a language and no timeout")
    });
    let root = tree.root_node();
    let mut parse_ok = !root.has_error();
    if parse_ok && language == Language::JavaScript {
        parse_ok = !javascript::violates_statement_lookahead(&text, root);
    }
    if parse_ok && language == Language::Java {
        parse_ok = java::wrapper_intact(root);
    }
    ParsedFunction {
        language,
        source: code.to_owned(),
        text,
        offset,
        tree,
        parse_ok,
    }
}

impl ParsedFunction {
    pub fn language(&self) -> Language {
        self.language
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn parse_ok(&self) -> bool {
        self.parse_ok
    }

    pub fn tree(&self) -> &Tree {
        &self.tree
    }

    pub(crate) fn text(&self) -> &str {
        &self.text
    }

    pub(crate) fn node_text(&self, node: Node) -> &str {
        &self.text[node.byte_range()]
    }

    /// Parser-text range to source range.
    pub(crate) fn to_source(&self, span: Range<usize>) -> Range<usize> {
        span.start - self.offset..span.end - self.offset
    }

    pub(crate) fn source_offset(&self, at: usize) -> usize {
        at - self.offset
    }

    /// The function the record is about.
    pub(crate) fn host(&self) -> Option<Node<'_>> {
        let root = self.tree.root_node();
        match self.language {
            Language::Python => python::host(root),
            Language::JavaScript => javascript::host(root),
            Language::Java => java::host(root),
        }
    }

    pub(crate) fn analyze(&self) -> ScopeTree {
        let host = self.host();
        let mut tree = match self.language {
            Language::Python => python::analyze(self, host),
            Language::JavaScript => javascript::analyze(self, host),
            Language::Java => java::analyze(self, host),
        };
        let handled: HashSet<usize> = tree.refs.iter().map(|r| r.span.start).collect();
        for leaf in name_leaves(self) {
            if !handled.contains(&leaf.start_byte()) {
                tree.taint(self.node_text(leaf), leaf.byte_range());
            }
        }
        tree
    }
}

fn name_kinds(language: Language) -> &'static [&'static str] {
    match language {
        Language::Python => &["identifier"],
        Language::JavaScript => &[
            "identifier",
            "property_identifier",
            "shorthand_property_identifier",
            "shorthand_property_identifier_pattern",
            "statement_identifier",
        ],
        Language::Java => &["identifier", "type_identifier"],
    }
}

/// Name-like leaves that are not in a member position after `.`.
fn name_leaves(pf: &ParsedFunction) -> Vec<Node<'_>> {
    let kinds = name_kinds(pf.language);
    let mut out = Vec::new();
    for_each_node(pf.tree.root_node(), &mut |n| {
        if kinds.contains(&n.kind()) && !is_member_position(n) {
            out.push(n);
        }
        true
    });
    out
}

pub(crate) fn is_member_position(node: Node) -> bool {
    matches!(
        node.prev_sibling().map(|p| p.kind()),
        Some(".") | Some("?.") | Some("optional_chain")
    )
}

/// Pre-order traversal; `visit` returns whether to descend.
pub(crate) fn for_each_node<'t>(node: Node<'t>, visit: &mut impl FnMut(Node<'t>) -> bool) {
    let mut cursor = node.walk();
    let mut stack = vec![node];
    while let Some(n) = stack.pop() {
        if visit(n) {
            let children: Vec<Node<'t>> = n.children(&mut cursor).collect();
            stack.extend(children.into_iter().rev());
        }
    }
}

pub(crate) fn named_children<'t>(node: Node<'t>) -> Vec<Node<'t>> {
    let mut cursor = node.walk();
    node.named_children(&mut cursor).collect()
}

pub(crate) fn children<'t>(node: Node<'t>) -> Vec<Node<'t>> {
    let mut cursor = node.walk();
    node.children(&mut cursor).collect()
}

pub(crate) fn is_comment(node: Node) -> bool {
    matches!(
        node.kind(),
        "comment" | "line_comment" | "block_comment" | "html_comment"
    )
}

/// One occurrence of a renameable name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentifierOccurrence {
    pub name: String,
    pub kind: IdentifierKind,
    /// Byte range into the record's code.
    pub span: Range<usize>,
    pub declaration: bool,
}

/// Every occurrence of every name that can be renamed safely, by position.
pub fn collect_renameables(parsed: &ParsedFunction) -> Vec<IdentifierOccurrence> {
    if !parsed.parse_ok {
        return Vec::new();
    }
    renameables_with_remaining(parsed).0
}

/// Renameable occurrences plus the names that stay in the record.
pub(crate) fn renameables_with_remaining(parsed: &ParsedFunction) -> (Vec<IdentifierOccurrence>, BTreeSet<String>) {
    let tree = parsed.analyze();
    let renameable = tree.renameable();
    let mut seen = HashSet::new();
    let mut out: Vec<IdentifierOccurrence> = tree
        .refs
        .iter()
        .filter(|r| renameable.contains(&r.name))
        .filter_map(|r| {
            let (kind, declaration) = tree.occurrence_kind(r)?;
            Some(IdentifierOccurrence {
                name: r.name.clone(),
                kind,
                span: parsed.to_source(r.span.clone()),
                declaration,
            })
        })
        .filter(|o| seen.insert(o.span.start))
        .collect();
    out.sort_by_key(|o| o.span.start);
    let all: BTreeSet<String> = name_leaves_all(parsed)
        .into_iter()
        .filter(|n| !renameable.contains(n))
        .collect();
    (out, all)
}

/// Texts of all name-like leaves, member positions included.
fn name_leaves_all(pf: &ParsedFunction) -> BTreeSet<String> {
    let kinds = name_kinds(pf.language);
    let mut out = BTreeSet::new();
    for_each_node(pf.tree.root_node(), &mut |n| {
        if kinds.contains(&n.kind()) || n.kind() == "private_property_identifier" {
            out.insert(pf.node_text(n).to_owned());
        }
        true
    });
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InsertionKind {
    AfterSignature,
    AfterReturn,
}

/// A place where statements or comments can be inserted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InsertionPoint {
    pub kind: InsertionKind,
    /// Byte offset into the record's code.
    pub byte_offset: usize,
    /// Indentation each inserted line should carry.
    pub indentation: String,
    /// For returns: a direct child of the host body.
    pub top_level: bool,
    lead: String,
    trail: String,
    reshape: Option<Edit>,
}

impl InsertionPoint {
    /// Edits that place `payload` (already indented lines) at this point.
    pub fn edits(&self, payload: &str) -> Vec<Edit> {
        let mut out = Vec::new();
        if let Some(r) = &self.reshape {
            out.push(r.clone());
        }
        out.push(Edit::insert(
            self.byte_offset,
            format!("{}{}{}", self.lead, payload, self.trail),
        ));
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InsertionPoints {
    pub signature_point: InsertionPoint,
    /// Every return in the host, in source order.
    pub return_points: Vec<InsertionPoint>,
}

impl InsertionPoints {
    pub fn final_top_level_return(&self) -> Option<&InsertionPoint> {
        self.return_points.iter().rev().find(|p| p.top_level)
    }
}

/// `None` when the record has no function with a body.
pub fn find_insertion_points(parsed: &ParsedFunction) -> Option<InsertionPoints> {
    if !parsed.parse_ok {
        return None;
    }
    let host = parsed.host()?;
    match parsed.language {
        Language::Python => python::insertion_points(parsed, host),
        Language::JavaScript | Language::Java => brace_insertion_points(parsed, host),
    }
}

/// Apply edits expressed against the record's code.
pub fn render(parsed: &ParsedFunction, edits: &[Edit]) -> Result<String, EditError> {
    apply_edits(&parsed.source, edits)
}

pub(crate) fn line_start(text: &str, at: usize) -> usize {
    text[..at].rfind(['\n', '\r']).map_or(0, |i| i + 1)
}

pub(crate) fn line_end(text: &str, at: usize) -> usize {
    text[at..].find(['\n', '\r']).map_or(text.len(), |i| at + i)
}

/// Leading whitespace of the line containing `at`.
pub(crate) fn indentation_at(text: &str, at: usize) -> &str {
    let start = line_start(text, at);
    let line = &text[start..line_end(text, start)];
    let n = line.len() - line.trim_start_matches([' ', '\t', '\x0c']).len();
    &line[..n]
}

pub(crate) const INDENT_STEP: &str = "    ";

fn brace_insertion_points(pf: &ParsedFunction, host: Node) -> Option<InsertionPoints> {
    let body = match pf.language {
        Language::Java => host.child_by_field_name("body")?,
        _ => host
            .child_by_field_name("body")
            .filter(|b| b.kind() == "statement_block")?,
    };
    let open = children(body).into_iter().find(|c| c.kind() == "{")?;
    let text = pf.text();
    let brace_end = open.end_byte();
    let first = named_children(body).into_iter().find(|c| !is_comment(*c));
    let after_brace = &text[brace_end..line_end(text, brace_end)];
    let close_start = body.end_byte() - 1;
    let indentation = match first {
        Some(f) if f.start_position().row > open.start_position().row => {
            indentation_at(text, f.start_byte()).to_owned()
        }
        _ => format!("{}{}", indentation_at(text, open.start_byte()), INDENT_STEP),
    };
    let rest_blank = after_brace.trim().is_empty() && line_end(text, brace_end) < close_start;
    let (offset, lead) = if rest_blank {
        let eol = line_end(text, brace_end);
        let next = if text[eol..].starts_with("\r\n") {
            eol + 2
        } else {
            eol + 1
        };
        (next, String::new())
    } else {
        (brace_end, "\n".to_owned())
    };
    let signature_point = InsertionPoint {
        kind: InsertionKind::AfterSignature,
        byte_offset: pf.source_offset(offset),
        indentation,
        top_level: true,
        lead,
        trail: "\n".to_owned(),
        reshape: None,
    };
    let mut return_points = Vec::new();
    for_each_node(body, &mut |n| {
        if n.kind() == "return_statement" {
            let has_semicolon = n
                .child(n.child_count().saturating_sub(1))
                .is_some_and(|c| c.kind() == ";");
            return_points.push(InsertionPoint {
                kind: InsertionKind::AfterReturn,
                byte_offset: pf.source_offset(n.end_byte()),
                indentation: indentation_at(text, n.start_byte()).to_owned(),
                top_level: n.parent().is_some_and(|p| p.id() == body.id()),
                lead: if has_semicolon { "\n".into() } else { ";\n".into() },
                trail: String::new(),
                reshape: None,
            });
        }
        true
    });
    Some(InsertionPoints {
        signature_point,
        return_points,
    })
}

/// Token texts for a `code_tokens` field: leaves of the tree with string
/// literals kept whole and comments included.
pub fn lex_tokens(parsed: &ParsedFunction) -> Vec<String> {
    let atomic: &[&str] = match parsed.language {
        Language::Python => &["string"],
        Language::JavaScript => &["string", "template_string", "regex"],
        Language::Java => &["string_literal", "character_literal"],
    };
    let skip = match parsed.language {
        Language::Python => parsed.host().and_then(python::docstring).map(|n| n.byte_range()),
        _ => None,
    };
    let lo = parsed.offset;
    let hi = parsed.offset + parsed.source.len();
    let mut out = Vec::new();
    for_each_node(parsed.tree.root_node(), &mut |n| {
        let r = n.byte_range();
        if r.end <= lo || r.start >= hi {
            return r.start < lo && r.end > lo;
        }
        if skip.as_ref() == Some(&r) {
            return false;
        }
        if atomic.contains(&n.kind()) || n.child_count() == 0 {
            if !r.is_empty() {
                out.push(parsed.node_text(n).to_owned());
            }
            return false;
        }
        true
    });
    out
}

/// Parts of a function needed to use it as dead-code payload or host.
#[derive(Debug, Clone, Default)]
pub(crate) struct DeadCodeFacts {
    /// Body statements, first to last, in source coordinates.
    pub body: Option<Range<usize>>,
    pub body_indentation: String,
    pub body_last_needs_semicolon: bool,
    pub free_names: BTreeSet<String>,
    /// Names bound at function level, by flavor.
    pub bound: HashMap<scope::Flavor, BTreeSet<String>>,
    /// Names bound anywhere inside the function other than parameters, for
    /// conservative checks.
    pub all_bound: BTreeSet<String>,
    pub all_names: BTreeSet<String>,
    pub is_async: bool,
    pub is_generator: bool,
    pub has_yield: bool,
    pub has_await: bool,
    pub has_escape: bool,
    pub has_py2_statement: bool,
    pub has_wildcard_import: bool,
    pub has_valued_return: bool,
    pub has_super: bool,
    pub strict: bool,
}

pub(crate) fn dead_code_facts(parsed: &ParsedFunction) -> Option<DeadCodeFacts> {
    let host = parsed.host()?;
    let tree = parsed.analyze();
    let mut facts = match parsed.language {
        Language::Python => python::dead_code_facts(parsed, host),
        Language::JavaScript => javascript::dead_code_facts(parsed, host),
        Language::Java => return None,
    }?;
    facts.free_names = tree.free_names();
    facts.has_escape = tree.has_escape();
    if let Some(scope) = tree.host_scope {
        for (name, flavor) in tree.declared_in(scope) {
            facts.bound.entry(flavor).or_default().insert(name.to_owned());
        }
    }
    for r in &tree.refs {
        if let scope::Role::Decl { flavor, .. } = r.role {
            if flavor != scope::Flavor::Param && r.scope != ScopeTree::OUTER {
                facts.all_bound.insert(r.name.clone());
            }
            if flavor == scope::Flavor::Var {
                facts.bound.entry(flavor).or_default().insert(r.name.clone());
            }
        }
    }
    facts.all_names = name_leaves_all(parsed);
    Some(facts)
}
