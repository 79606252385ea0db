// SPDX-License-Identifier: Apache-2.0

use sumcorrupt_core::IdentifierKind;
use tree_sitter::Node;

use super::scope::{Flavor, ScopeId, ScopeKind, ScopeTree};
use super::{children, for_each_node, indentation_at, is_comment, named_children, DeadCodeFacts, ParsedFunction};

const FUNCTIONS: &[&str] = &[
    "function_declaration",
    "generator_function_declaration",
    "function_expression",
    "function",
    "generator_function",
    "arrow_function",
    "method_definition",
];

/// An expression statement may not begin with `{`, `function`,
/// `async function`, `class` or `let [`. tree-sitter accepts these; a
/// conforming parser does not.
pub(super) fn violates_statement_lookahead(text: &str, root: Node) -> bool {
    let mut bad = false;
    for_each_node(root, &mut |n| {
        if bad {
            return false;
        }
        if n.kind() == "expression_statement" {
            let rest = &text[n.start_byte()..];
            bad = rest.starts_with('{')
                || starts_word(rest, "function")
                || starts_word(rest, "class")
                || (starts_word(rest, "async") && starts_word(rest[5..].trim_start_matches([' ', '\t']), "function"))
                || (starts_word(rest, "let") && rest[3..].trim_start().starts_with('['));
        }
        !bad
    });
    bad
}

fn starts_word(s: &str, word: &str) -> bool {
    s.strip_prefix(word)
        .is_some_and(|t| !t.starts_with(|c: char| c.is_alphanumeric() || c == '_' || c == '$'))
}

pub(super) fn host(root: Node) -> Option<Node> {
    for c in named_children(root) {
        if matches!(c.kind(), "function_declaration" | "generator_function_declaration") {
            return Some(c);
        }
    }
    let mut found = None;
    for_each_node(root, &mut |n| {
        if found.is_some() {
            return false;
        }
        if FUNCTIONS.contains(&n.kind()) {
            found = Some(n);
            return false;
        }
        true
    });
    found
}

struct Walker<'a> {
    pf: &'a ParsedFunction,
    t: ScopeTree,
    host_id: Option<usize>,
}

pub(super) fn analyze(pf: &ParsedFunction, host: Option<Node>) -> ScopeTree {
    let mut w = Walker {
        pf,
        t: ScopeTree::new(),
        host_id: host.map(|h| h.id()),
    };
    for c in named_children(pf.tree().root_node()) {
        w.visit(c, ScopeTree::OUTER);
    }
    w.t
}

fn is_function_scope(k: ScopeKind) -> bool {
    matches!(k, ScopeKind::Function | ScopeKind::Outer)
}

impl<'a> Walker<'a> {
    fn text(&self, n: Node) -> &'a str {
        let pf: &'a ParsedFunction = self.pf;
        pf.node_text(n)
    }

    fn declare(&mut self, scope: ScopeId, n: Node, kind: IdentifierKind, flavor: Flavor, taint: bool) {
        let name = self.text(n);
        self.t.declare(scope, name, n.byte_range(), kind, flavor, 0, taint);
    }

    fn visit(&mut self, n: Node, scope: ScopeId) {
        match n.kind() {
            "function_declaration" | "generator_function_declaration" => {
                if let Some(name) = n.child_by_field_name("name") {
                    if Some(n.id()) == self.host_id {
                        let text = self.text(name);
                        self.t.declare_host(text, name.byte_range());
                    } else if is_function_scope(self.t.kind(scope)) {
                        self.declare(scope, name, IdentifierKind::FunctionName, Flavor::Function, false);
                    } else {
                        // Block-level declaration: block binding plus a var
                        // binding in sloppy mode.
                        self.declare(scope, name, IdentifierKind::FunctionName, Flavor::Lexical, true);
                        let f = self.t.nearest(scope, is_function_scope);
                        self.declare(f, name, IdentifierKind::FunctionName, Flavor::Var, true);
                    }
                }
                self.function(n, scope);
            }
            "function_expression" | "function" | "generator_function" => {
                let inner = match n.child_by_field_name("name") {
                    Some(name) => {
                        let s = self.t.open(scope, ScopeKind::Block);
                        self.declare(s, name, IdentifierKind::FunctionName, Flavor::Other, false);
                        s
                    }
                    None => scope,
                };
                self.function(n, inner);
            }
            "arrow_function" => self.function(n, scope),
            "method_definition" => {
                if let Some(name) = n.child_by_field_name("name") {
                    if name.kind() == "computed_property_name" {
                        self.visit(name, scope);
                    }
                }
                self.function(n, scope);
            }
            "class_declaration" | "class" => {
                let mut inner = scope;
                if let Some(name) = n.child_by_field_name("name") {
                    if n.kind() == "class" {
                        inner = self.t.open(scope, ScopeKind::Block);
                    }
                    self.declare(inner, name, IdentifierKind::LocalVariable, Flavor::Lexical, true);
                }
                for c in named_children(n) {
                    if Some(c.id()) != n.child_by_field_name("name").map(|x| x.id()) {
                        self.visit(c, inner);
                    }
                }
            }
            "field_definition" => {
                for c in named_children(n) {
                    match c.kind() {
                        "property_identifier" | "private_property_identifier" => {}
                        _ => self.visit(c, scope),
                    }
                }
            }
            "variable_declaration" | "lexical_declaration" => {
                let (target, flavor) = if n.kind() == "variable_declaration" {
                    (self.t.nearest(scope, is_function_scope), Flavor::Var)
                } else {
                    (scope, Flavor::Lexical)
                };
                for d in named_children(n) {
                    if d.kind() != "variable_declarator" {
                        continue;
                    }
                    if let Some(name) = d.child_by_field_name("name") {
                        self.bind(name, target, scope, flavor, IdentifierKind::LocalVariable);
                    }
                    if let Some(v) = d.child_by_field_name("value") {
                        self.visit(v, scope);
                    }
                }
            }
            "statement_block" | "switch_body" | "class_static_block" => {
                let b = self.t.open(scope, ScopeKind::Block);
                for c in named_children(n) {
                    if c.kind() == "statement_block" && n.kind() == "class_static_block" {
                        self.visit_children(c, b);
                    } else {
                        self.visit(c, b);
                    }
                }
            }
            "for_statement" => {
                let s = self.t.open(scope, ScopeKind::Block);
                self.visit_children(n, s);
            }
            "for_in_statement" => {
                let kind = n.child_by_field_name("kind").map(|k| self.text(k));
                let left = n.child_by_field_name("left");
                let s = match kind {
                    Some("let") | Some("const") => {
                        let s = self.t.open(scope, ScopeKind::Block);
                        if let Some(l) = left {
                            self.bind(l, s, s, Flavor::Lexical, IdentifierKind::LocalVariable);
                        }
                        s
                    }
                    Some(_) => {
                        let f = self.t.nearest(scope, is_function_scope);
                        if let Some(l) = left {
                            self.bind(l, f, scope, Flavor::Var, IdentifierKind::LocalVariable);
                        }
                        scope
                    }
                    None => {
                        if let Some(l) = left {
                            self.visit(l, scope);
                        }
                        scope
                    }
                };
                for field in ["right", "value", "body"] {
                    if let Some(c) = n.child_by_field_name(field) {
                        self.visit(c, s);
                    }
                }
            }
            "catch_clause" => {
                let c = self.t.open(scope, ScopeKind::Block);
                if let Some(p) = n.child_by_field_name("parameter") {
                    self.bind(p, c, c, Flavor::Lexical, IdentifierKind::LocalVariable);
                }
                if let Some(b) = n.child_by_field_name("body") {
                    self.visit_children(b, c);
                }
            }
            "with_statement" => {
                self.t.dynamic = true;
                self.visit_children(n, scope);
            }
            "call_expression" => {
                if let Some(f) = n.child_by_field_name("function") {
                    if f.kind() == "identifier" && self.text(f) == "eval" {
                        self.t.dynamic = true;
                    }
                }
                self.visit_children(n, scope);
            }
            "member_expression" => {
                if let Some(o) = n.child_by_field_name("object") {
                    self.visit(o, scope);
                }
            }
            "pair" | "pair_pattern" => {
                if let Some(k) = n.child_by_field_name("key") {
                    if k.kind() == "computed_property_name" {
                        self.visit(k, scope);
                    }
                }
                if let Some(v) = n.child_by_field_name("value") {
                    self.visit(v, scope);
                }
            }
            "shorthand_property_identifier" | "shorthand_property_identifier_pattern" => {
                let name = self.text(n);
                self.t.use_name(scope, name, n.byte_range(), true);
            }
            "template_string" => self.tainted_uses(n, scope),
            "labeled_statement" => {
                if let Some(b) = n.child_by_field_name("body") {
                    self.visit(b, scope);
                }
            }
            "break_statement" | "continue_statement" | "string" | "regex" | "comment" => {}
            k if k.starts_with("jsx_") && k != "jsx_expression" => {
                for c in named_children(n) {
                    if c.kind().starts_with("jsx_") {
                        self.visit(c, scope);
                    }
                }
            }
            "identifier" => {
                let name = self.text(n);
                self.t.use_name(scope, name, n.byte_range(), false);
            }
            _ => self.visit_children(n, scope),
        }
    }

    fn visit_children(&mut self, n: Node, scope: ScopeId) {
        for c in named_children(n) {
            self.visit(c, scope);
        }
    }

    fn function(&mut self, n: Node, scope: ScopeId) {
        let f = self.t.open(scope, ScopeKind::Function);
        if Some(n.id()) == self.host_id {
            self.t.host_scope = Some(f);
        }
        if let Some(p) = n.child_by_field_name("parameter") {
            self.bind(p, f, f, Flavor::Param, IdentifierKind::Parameter);
        }
        if let Some(params) = n.child_by_field_name("parameters") {
            for p in named_children(params) {
                self.bind(p, f, f, Flavor::Param, IdentifierKind::Parameter);
            }
        }
        if let Some(body) = n.child_by_field_name("body") {
            if body.kind() == "statement_block" {
                self.visit_children(body, f);
            } else {
                self.visit(body, f);
            }
        }
    }

    /// Bind the names in a declaration pattern into `target`; default values
    /// and computed keys are evaluated in `scope`.
    fn bind(&mut self, p: Node, target: ScopeId, scope: ScopeId, flavor: Flavor, kind: IdentifierKind) {
        match p.kind() {
            "identifier" => self.declare(target, p, kind, flavor, false),
            "shorthand_property_identifier_pattern" => self.declare(target, p, kind, flavor, true),
            "object_pattern" | "array_pattern" | "rest_pattern" => {
                for c in named_children(p) {
                    self.bind(c, target, scope, flavor, kind);
                }
            }
            "pair_pattern" => {
                if let Some(k) = p.child_by_field_name("key") {
                    if k.kind() == "computed_property_name" {
                        self.visit(k, scope);
                    }
                }
                if let Some(v) = p.child_by_field_name("value") {
                    self.bind(v, target, scope, flavor, kind);
                }
            }
            "assignment_pattern" | "object_assignment_pattern" => {
                if let Some(l) = p.child_by_field_name("left") {
                    self.bind(l, target, scope, flavor, kind);
                }
                if let Some(r) = p.child_by_field_name("right") {
                    self.visit(r, scope);
                }
            }
            "comment" => {}
            _ => self.visit(p, scope),
        }
    }

    fn tainted_uses(&mut self, n: Node, scope: ScopeId) {
        let pf = self.pf;
        for_each_node(n, &mut |c| {
            if c.kind() == "identifier" && !super::is_member_position(c) {
                self.t.use_name(scope, pf.node_text(c), c.byte_range(), true);
            }
            true
        });
    }
}

fn body_statements(body: Node) -> Vec<Node> {
    named_children(body).into_iter().filter(|c| !is_comment(*c)).collect()
}

fn is_strict(pf: &ParsedFunction, body: Node) -> bool {
    for s in body_statements(body) {
        if s.kind() != "expression_statement" {
            break;
        }
        let inner = named_children(s);
        match inner.as_slice() {
            [lit] if lit.kind() == "string" => {
                let t = pf.node_text(*lit);
                if &t[1..t.len() - 1] == "use strict" {
                    return true;
                }
            }
            _ => break,
        }
    }
    false
}

const NEEDS_SEMICOLON: &[&str] = &[
    "expression_statement",
    "variable_declaration",
    "lexical_declaration",
    "return_statement",
    "throw_statement",
    "break_statement",
    "continue_statement",
    "debugger_statement",
    "do_statement",
];

pub(super) fn dead_code_facts(pf: &ParsedFunction, host: Node) -> Option<DeadCodeFacts> {
    let body = host
        .child_by_field_name("body")
        .filter(|b| b.kind() == "statement_block")?;
    let stmts = body_statements(body);
    let mut facts = DeadCodeFacts {
        is_async: children(host).iter().any(|c| c.kind() == "async"),
        is_generator: matches!(host.kind(), "generator_function_declaration" | "generator_function")
            || children(host).iter().any(|c| c.kind() == "*"),
        strict: is_strict(pf, body) || host.parent().is_some_and(|p| p.kind() == "class_body"),
        ..Default::default()
    };
    if let (Some(first), Some(last)) = (stmts.first(), stmts.last()) {
        facts.body = Some(pf.to_source(first.start_byte()..last.end_byte()));
        facts.body_indentation = if first.start_position().row > body.start_position().row {
            indentation_at(pf.text(), first.start_byte()).to_owned()
        } else {
            String::new()
        };
        let last_child = last.child(last.child_count().saturating_sub(1));
        facts.body_last_needs_semicolon =
            NEEDS_SEMICOLON.contains(&last.kind()) && last_child.is_some_and(|c| c.kind() != ";");
    }
    for_each_node(body, &mut |n| match n.kind() {
        "function_declaration"
        | "generator_function_declaration"
        | "function_expression"
        | "function"
        | "generator_function"
        | "method_definition"
        | "class_declaration"
        | "class" => false,
        "arrow_function" => {
            // Arrows inherit `super` but not `yield` or `await`.
            for_each_node(n, &mut |m| {
                if m.kind() == "super" {
                    facts.has_super = true;
                }
                !matches!(m.kind(), "function_expression" | "function" | "function_declaration")
            });
            false
        }
        "yield_expression" => {
            facts.has_yield = true;
            true
        }
        "await_expression" => {
            facts.has_await = true;
            true
        }
        "for_in_statement" => {
            if children(n).iter().any(|c| c.kind() == "await") {
                facts.has_await = true;
            }
            true
        }
        "super" | "meta_property" => {
            facts.has_super = true;
            true
        }
        _ => true,
    });
    Some(facts)
}
