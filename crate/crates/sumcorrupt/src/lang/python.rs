// SPDX-License-Identifier: Apache-2.0

use sumcorrupt_core::{Edit, IdentifierKind};
use tree_sitter::Node;

use super::scope::{Flavor, ScopeId, ScopeKind, ScopeTree};
use super::{
    children, for_each_node, indentation_at, is_comment, line_end, line_start, named_children, DeadCodeFacts,
    InsertionKind, InsertionPoint, InsertionPoints, ParsedFunction, INDENT_STEP,
};

const DYNAMIC: &[&str] = &["eval", "exec", "locals", "vars", "globals", "dir"];

const COMPREHENSIONS: &[&str] = &[
    "list_comprehension",
    "set_comprehension",
    "dictionary_comprehension",
    "generator_expression",
];

pub(super) fn host(root: Node) -> Option<Node> {
    for c in named_children(root) {
        match c.kind() {
            "function_definition" => return Some(c),
            "decorated_definition" => {
                let def = c.child_by_field_name("definition")?;
                if def.kind() == "function_definition" {
                    return Some(def);
                }
            }
            _ => {}
        }
    }
    None
}

pub(super) fn docstring(host: Node) -> Option<Node> {
    let body = host.child_by_field_name("body")?;
    let first = named_children(body).into_iter().find(|c| !is_comment(*c))?;
    if first.kind() != "expression_statement" {
        return None;
    }
    let inner = named_children(first);
    match inner.as_slice() {
        [s] if s.kind() == "string" || s.kind() == "concatenated_string" => Some(*s),
        _ => None,
    }
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
            "function_definition" => self.function(n, scope),
            "class_definition" => {
                if let Some(name) = n.child_by_field_name("name") {
                    self.declare(scope, name, IdentifierKind::LocalVariable, Flavor::Other, true);
                }
                if let Some(sup) = n.child_by_field_name("superclasses") {
                    self.visit(sup, scope);
                }
                if let Some(body) = n.child_by_field_name("body") {
                    let c = self.t.open(scope, ScopeKind::Class);
                    self.visit(body, c);
                }
            }
            "lambda" => {
                let l = self.t.open(scope, ScopeKind::Function);
                if let Some(p) = n.child_by_field_name("parameters") {
                    self.parameters(p, scope, l);
                }
                if let Some(b) = n.child_by_field_name("body") {
                    self.visit(b, l);
                }
            }
            k if COMPREHENSIONS.contains(&k) => self.comprehension(n, scope),
            "assignment" | "augmented_assignment" => {
                if let Some(l) = n.child_by_field_name("left") {
                    self.target(l, scope);
                }
                if let Some(t) = n.child_by_field_name("type") {
                    self.visit(t, scope);
                }
                if let Some(r) = n.child_by_field_name("right") {
                    self.visit(r, scope);
                }
            }
            "named_expression" => {
                let target = self.t.nearest(scope, |k| k != ScopeKind::Comprehension);
                if let Some(name) = n.child_by_field_name("name") {
                    self.declare(target, name, IdentifierKind::LocalVariable, Flavor::Other, false);
                }
                if let Some(v) = n.child_by_field_name("value") {
                    self.visit(v, scope);
                }
            }
            "for_statement" => {
                if let Some(l) = n.child_by_field_name("left") {
                    self.target(l, scope);
                }
                for field in ["right", "body", "alternative"] {
                    if let Some(c) = n.child_by_field_name(field) {
                        self.visit(c, scope);
                    }
                }
            }
            "as_pattern" => {
                for c in named_children(n) {
                    if c.kind() == "as_pattern_target" {
                        self.target(c, scope);
                    } else {
                        self.visit(c, scope);
                    }
                }
            }
            "except_clause" | "except_group_clause" => {
                let alias = n.child_by_field_name("alias").map(|a| a.id());
                for c in named_children(n) {
                    if Some(c.id()) == alias {
                        self.target(c, scope);
                    } else {
                        self.visit(c, scope);
                    }
                }
            }
            "delete_statement" => {
                for c in named_children(n) {
                    self.target(c, scope);
                }
            }
            "global_statement" | "nonlocal_statement" => {
                for c in named_children(n) {
                    if c.kind() == "identifier" {
                        let name = self.text(c);
                        self.t.escape(scope, name, c.byte_range());
                    }
                }
            }
            "import_statement" | "import_from_statement" | "future_import_statement" => self.import(n, scope),
            "keyword_argument" => {
                if let Some(v) = n.child_by_field_name("value") {
                    self.visit(v, scope);
                }
            }
            "attribute" => {
                if let Some(o) = n.child_by_field_name("object") {
                    self.visit(o, scope);
                }
            }
            "string" | "concatenated_string" => self.tainted_uses(n, scope),
            "match_statement" => {
                if let Some(s) = n.child_by_field_name("subject") {
                    self.visit(s, scope);
                }
                if let Some(body) = n.child_by_field_name("body") {
                    for case in named_children(body) {
                        for c in named_children(case) {
                            if c.kind() == "case_pattern" {
                                self.pattern(c, scope);
                            } else {
                                self.visit(c, scope);
                            }
                        }
                    }
                }
            }
            "exec_statement" => {
                self.t.dynamic = true;
                self.visit_children(n, scope);
            }
            "type_alias_statement" | "type_parameter" => {}
            "identifier" => {
                let name = self.text(n);
                if DYNAMIC.contains(&name) {
                    self.t.dynamic = true;
                }
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

    fn function(&mut self, def: Node, scope: ScopeId) {
        let is_host = Some(def.id()) == self.host_id;
        if let Some(name) = def.child_by_field_name("name") {
            if is_host {
                let text = self.text(name);
                self.t.declare_host(text, name.byte_range());
            } else {
                self.declare(scope, name, IdentifierKind::FunctionName, Flavor::Function, false);
            }
        }
        let f = self.t.open(scope, ScopeKind::Function);
        if is_host {
            self.t.host_scope = Some(f);
        }
        if let Some(p) = def.child_by_field_name("parameters") {
            self.parameters(p, scope, f);
        }
        if let Some(r) = def.child_by_field_name("return_type") {
            self.visit(r, scope);
        }
        if let Some(b) = def.child_by_field_name("body") {
            self.visit(b, f);
        }
    }

    fn parameters(&mut self, params: Node, outer: ScopeId, f: ScopeId) {
        for p in named_children(params) {
            self.parameter(p, outer, f);
        }
    }

    fn parameter(&mut self, p: Node, outer: ScopeId, f: ScopeId) {
        match p.kind() {
            "identifier" => self.declare(f, p, IdentifierKind::Parameter, Flavor::Param, false),
            "default_parameter" | "typed_default_parameter" => {
                if let Some(name) = p.child_by_field_name("name") {
                    self.parameter(name, outer, f);
                }
                for field in ["type", "value"] {
                    if let Some(c) = p.child_by_field_name(field) {
                        self.visit(c, outer);
                    }
                }
            }
            "typed_parameter" => {
                for c in named_children(p) {
                    if c.kind() == "type" {
                        self.visit(c, outer);
                    } else {
                        self.parameter(c, outer, f);
                    }
                }
            }
            "list_splat_pattern" | "dictionary_splat_pattern" | "tuple_pattern" => {
                for c in named_children(p) {
                    self.parameter(c, outer, f);
                }
            }
            _ => {}
        }
    }

    fn target(&mut self, n: Node, scope: ScopeId) {
        match n.kind() {
            "identifier" => self.declare(scope, n, IdentifierKind::LocalVariable, Flavor::Other, false),
            "pattern_list"
            | "tuple_pattern"
            | "list_pattern"
            | "tuple"
            | "list"
            | "expression_list"
            | "parenthesized_expression"
            | "list_splat_pattern"
            | "list_splat"
            | "as_pattern_target" => {
                for c in named_children(n) {
                    self.target(c, scope);
                }
            }
            _ => self.visit(n, scope),
        }
    }

    fn comprehension(&mut self, n: Node, scope: ScopeId) {
        let c = self.t.open(scope, ScopeKind::Comprehension);
        let mut first = true;
        for part in named_children(n) {
            match part.kind() {
                "for_in_clause" => {
                    let right_scope = if first { scope } else { c };
                    first = false;
                    let mut cursor = part.walk();
                    let rights: Vec<Node> = part.children_by_field_name("right", &mut cursor).collect();
                    for r in rights {
                        self.visit(r, right_scope);
                    }
                    if let Some(l) = part.child_by_field_name("left") {
                        self.target(l, c);
                    }
                }
                _ => self.visit(part, c),
            }
        }
    }

    fn import(&mut self, n: Node, scope: ScopeId) {
        let names: Vec<Node> = {
            let mut cursor = n.walk();
            n.children_by_field_name("name", &mut cursor).collect()
        };
        for name in names {
            let bound = match name.kind() {
                "aliased_import" => name.child_by_field_name("alias"),
                "dotted_name" => name.named_child(0),
                _ => None,
            };
            if let Some(b) = bound {
                self.declare(scope, b, IdentifierKind::LocalVariable, Flavor::Other, true);
            }
        }
        if children(n).iter().any(|c| c.kind() == "wildcard_import") {
            self.t.dynamic = true;
        }
    }

    /// Interpolated names: real uses, but never renamed.
    fn tainted_uses(&mut self, n: Node, scope: ScopeId) {
        let pf = self.pf;
        for_each_node(n, &mut |c| {
            if c.kind() == "identifier" && !super::is_member_position(c) {
                let name = pf.node_text(c);
                if DYNAMIC.contains(&name) {
                    self.t.dynamic = true;
                }
                self.t.use_name(scope, name, c.byte_range(), true);
            }
            true
        });
    }

    fn pattern(&mut self, n: Node, scope: ScopeId) {
        match n.kind() {
            "dotted_name" => {
                let parts = named_children(n);
                let under_class = n.parent().is_some_and(|p| p.kind() == "class_pattern");
                if parts.len() == 1 && !under_class {
                    self.declare(scope, parts[0], IdentifierKind::LocalVariable, Flavor::Other, true);
                } else if let Some(first) = parts.first() {
                    let name = self.text(*first);
                    self.t.use_name(scope, name, first.byte_range(), true);
                }
            }
            "keyword_pattern" => {
                for c in named_children(n).into_iter().skip(1) {
                    self.pattern(c, scope);
                }
            }
            "identifier" => self.declare(scope, n, IdentifierKind::LocalVariable, Flavor::Other, true),
            "string" | "concatenated_string" => {}
            _ => {
                for c in named_children(n) {
                    self.pattern(c, scope);
                }
            }
        }
    }
}

fn body_statements(body: Node) -> Vec<Node> {
    named_children(body).into_iter().filter(|c| !is_comment(*c)).collect()
}

/// Colon ending the `def` header.
fn header_colon(def: Node) -> Option<Node> {
    let body = def.child_by_field_name("body")?;
    children(def)
        .into_iter()
        .rfind(|c| c.kind() == ":" && c.end_byte() <= body.start_byte())
}

struct BodyLayout {
    indentation: String,
    /// Present when the body shares the header line.
    reshape: Option<Edit>,
    first_start: usize,
}

fn body_layout(pf: &ParsedFunction, def: Node) -> Option<BodyLayout> {
    let body = def.child_by_field_name("body")?;
    let first = *body_statements(body).first()?;
    let colon = header_colon(def)?;
    let text = pf.text();
    if first.start_position().row == colon.end_position().row {
        let indentation = format!("{}{}", indentation_at(text, def.start_byte()), INDENT_STEP);
        let def_line = line_start(text, def.start_byte());
        let indentation = if text[def_line..].starts_with('\t') {
            format!("{}\t", indentation_at(text, def.start_byte()))
        } else {
            indentation
        };
        Some(BodyLayout {
            reshape: Some(Edit::replace(
                pf.source_offset(colon.end_byte())..pf.source_offset(first.start_byte()),
                "\n",
            )),
            indentation,
            first_start: first.start_byte(),
        })
    } else {
        Some(BodyLayout {
            indentation: indentation_at(text, first.start_byte()).to_owned(),
            reshape: None,
            first_start: first.start_byte(),
        })
    }
}

pub(super) fn insertion_points(pf: &ParsedFunction, host: Node) -> Option<InsertionPoints> {
    let layout = body_layout(pf, host)?;
    let text = pf.text();
    let signature_point = match &layout.reshape {
        Some(edit) => InsertionPoint {
            kind: InsertionKind::AfterSignature,
            byte_offset: pf.source_offset(layout.first_start),
            indentation: layout.indentation.clone(),
            top_level: true,
            lead: String::new(),
            trail: format!("\n{}", layout.indentation),
            reshape: Some(edit.clone()),
        },
        None => InsertionPoint {
            kind: InsertionKind::AfterSignature,
            byte_offset: pf.source_offset(line_start(text, layout.first_start)),
            indentation: layout.indentation.clone(),
            top_level: true,
            lead: String::new(),
            trail: "\n".to_owned(),
            reshape: None,
        },
    };
    let body = host.child_by_field_name("body")?;
    let mut return_points = Vec::new();
    for_each_node(body, &mut |n| {
        if n.kind() == "return_statement" {
            let top_level = n.parent().is_some_and(|p| p.id() == body.id());
            let (indentation, reshape) = if top_level {
                // The body moves to its own line, so it needs the indentation too.
                let reshape = layout
                    .reshape
                    .as_ref()
                    .map(|e| Edit::replace(e.span(), format!("\n{}", layout.indentation)));
                (layout.indentation.clone(), reshape)
            } else {
                (indentation_at(text, n.start_byte()).to_owned(), None)
            };
            return_points.push(InsertionPoint {
                kind: InsertionKind::AfterReturn,
                byte_offset: pf.source_offset(after_statement(text, n.end_byte())),
                indentation,
                top_level,
                lead: "\n".to_owned(),
                trail: String::new(),
                reshape,
            });
        }
        true
    });
    Some(InsertionPoints {
        signature_point,
        return_points,
    })
}

/// End of the line holding a statement that ends at `end`, when only blanks
/// or a comment follow it.
fn after_statement(text: &str, end: usize) -> usize {
    let eol = line_end(text, end);
    let rest = text[end..eol].trim_start_matches([' ', '\t', '\x0c']);
    if rest.is_empty() || rest.starts_with('#') {
        eol
    } else {
        end
    }
}

pub(super) fn dead_code_facts(pf: &ParsedFunction, host: Node) -> Option<DeadCodeFacts> {
    let body = host.child_by_field_name("body")?;
    let stmts = body_statements(body);
    let layout = body_layout(pf, host)?;
    let mut facts = DeadCodeFacts {
        body: Some(pf.to_source(stmts.first()?.start_byte()..stmts.last()?.end_byte())),
        body_indentation: if layout.reshape.is_some() {
            String::new()
        } else {
            layout.indentation
        },
        is_async: children(host).iter().any(|c| c.kind() == "async"),
        ..Default::default()
    };
    for_each_node(body, &mut |n| match n.kind() {
        "function_definition" | "lambda" | "class_definition" => false,
        "yield" => {
            facts.has_yield = true;
            true
        }
        "await" => {
            facts.has_await = true;
            true
        }
        "for_statement" | "with_statement" | "for_in_clause" => {
            if children(n).iter().any(|c| c.kind() == "async") {
                facts.has_await = true;
            }
            true
        }
        "print_statement" | "exec_statement" => {
            facts.has_py2_statement = true;
            true
        }
        "wildcard_import" => {
            facts.has_wildcard_import = true;
            true
        }
        "return_statement" => {
            if n.named_child_count() > 0 {
                facts.has_valued_return = true;
            }
            true
        }
        _ => true,
    });
    facts.is_generator = facts.has_yield;
    Some(facts)
}
