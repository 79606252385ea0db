// SPDX-License-Identifier: Apache-2.0

use sumcorrupt_core::IdentifierKind;
use tree_sitter::Node;

use super::scope::{Flavor, ScopeId, ScopeKind, ScopeTree};
use super::{named_children, ParsedFunction};

const METHODS: &[&str] = &[
    "method_declaration",
    "constructor_declaration",
    "compact_constructor_declaration",
];

/// Type positions: never renamed, never descended into.
const TYPES: &[&str] = &[
    "type_identifier",
    "integral_type",
    "floating_point_type",
    "boolean_type",
    "void_type",
    "generic_type",
    "array_type",
    "scoped_type_identifier",
    "type_arguments",
    "type_parameters",
    "annotated_type",
    "catch_type",
    "dimensions",
    "modifiers",
    "marker_annotation",
    "annotation",
    "scoped_identifier",
    "class_literal",
    "throws",
];

fn wrapper_body(root: Node) -> Option<Node> {
    let class = root.named_child(0)?;
    (class.kind() == "class_declaration").then_some(())?;
    class.child_by_field_name("body")
}

/// The synthetic class must still be the only top-level node.
pub(super) fn wrapper_intact(root: Node) -> bool {
    root.named_child_count() == 1 && wrapper_body(root).is_some()
}

pub(super) fn host(root: Node) -> Option<Node> {
    named_children(wrapper_body(root)?)
        .into_iter()
        .find(|c| METHODS.contains(&c.kind()))
}

struct Walker<'a> {
    pf: &'a ParsedFunction,
    t: ScopeTree,
    host_name: Option<&'a str>,
}

pub(super) fn analyze(pf: &ParsedFunction, host: Option<Node>) -> ScopeTree {
    let mut w = Walker {
        pf,
        t: ScopeTree::new(),
        host_name: None,
    };
    if let Some(h) = host {
        w.host(h);
    }
    w.t
}

impl<'a> Walker<'a> {
    fn text(&self, n: Node) -> &'a str {
        let pf: &'a ParsedFunction = self.pf;
        pf.node_text(n)
    }

    fn declare(&mut self, scope: ScopeId, n: Node, kind: IdentifierKind, visible_from: usize) {
        let name = self.text(n);
        let flavor = if kind == IdentifierKind::Parameter {
            Flavor::Param
        } else {
            Flavor::Other
        };
        self.t
            .declare(scope, name, n.byte_range(), kind, flavor, visible_from, false);
    }

    fn host(&mut self, m: Node) {
        if let Some(name) = m.child_by_field_name("name") {
            if m.kind() == "method_declaration" {
                let text = self.text(name);
                self.host_name = Some(text);
                self.t.declare_host(text, name.byte_range());
            }
        }
        let f = self.t.open(ScopeTree::OUTER, ScopeKind::Function);
        self.t.host_scope = Some(f);
        self.method_body(m, f);
    }

    fn method_body(&mut self, m: Node, f: ScopeId) {
        if let Some(params) = m.child_by_field_name("parameters") {
            self.parameters(params, f);
        }
        if let Some(body) = m.child_by_field_name("body") {
            self.visit(body, f);
        }
    }

    fn parameters(&mut self, params: Node, f: ScopeId) {
        for p in named_children(params) {
            match p.kind() {
                "formal_parameter" => {
                    if let Some(name) = p.child_by_field_name("name") {
                        self.declare(f, name, IdentifierKind::Parameter, 0);
                    }
                }
                "spread_parameter" => {
                    for c in named_children(p) {
                        if c.kind() == "variable_declarator" {
                            if let Some(name) = c.child_by_field_name("name") {
                                self.declare(f, name, IdentifierKind::Parameter, 0);
                            }
                        }
                    }
                }
                "identifier" => self.declare(f, p, IdentifierKind::Parameter, 0),
                _ => {}
            }
        }
    }

    fn declarators(&mut self, decl: Node, scope: ScopeId) {
        let mut cursor = decl.walk();
        let ds: Vec<Node> = decl.children_by_field_name("declarator", &mut cursor).collect();
        for d in ds {
            if let Some(name) = d.child_by_field_name("name") {
                self.declare(scope, name, IdentifierKind::LocalVariable, d.start_byte());
            }
            if let Some(v) = d.child_by_field_name("value") {
                self.visit(v, scope);
            }
        }
    }

    fn visit(&mut self, n: Node, scope: ScopeId) {
        match n.kind() {
            k if TYPES.contains(&k) => {}
            "block" | "switch_block" | "constructor_body" => {
                let b = self.t.open(scope, ScopeKind::Block);
                self.visit_children(n, b);
            }
            "local_variable_declaration" => self.declarators(n, scope),
            "for_statement" => {
                let s = self.t.open(scope, ScopeKind::Block);
                self.visit_children(n, s);
            }
            "enhanced_for_statement" => {
                if let Some(v) = n.child_by_field_name("value") {
                    self.visit(v, scope);
                }
                let s = self.t.open(scope, ScopeKind::Block);
                if let Some(name) = n.child_by_field_name("name") {
                    self.declare(s, name, IdentifierKind::LocalVariable, 0);
                }
                if let Some(b) = n.child_by_field_name("body") {
                    self.visit(b, s);
                }
            }
            "try_with_resources_statement" => {
                let s = self.t.open(scope, ScopeKind::Block);
                let body = n.child_by_field_name("body").map(|b| b.id());
                for c in named_children(n) {
                    match c.kind() {
                        "resource_specification" => {
                            for r in named_children(c) {
                                if r.kind() != "resource" {
                                    continue;
                                }
                                match r.child_by_field_name("name") {
                                    Some(name) => {
                                        if let Some(v) = r.child_by_field_name("value") {
                                            self.visit(v, s);
                                        }
                                        self.declare(s, name, IdentifierKind::LocalVariable, r.start_byte());
                                    }
                                    None => self.visit_children(r, s),
                                }
                            }
                        }
                        _ if Some(c.id()) == body => self.visit(c, s),
                        _ => self.visit(c, scope),
                    }
                }
            }
            "catch_clause" => {
                let c = self.t.open(scope, ScopeKind::Block);
                for part in named_children(n) {
                    if part.kind() == "catch_formal_parameter" {
                        if let Some(name) = part.child_by_field_name("name") {
                            self.declare(c, name, IdentifierKind::LocalVariable, 0);
                        }
                    } else {
                        self.visit(part, c);
                    }
                }
            }
            "lambda_expression" => {
                let l = self.t.open(scope, ScopeKind::Function);
                if let Some(p) = n.child_by_field_name("parameters") {
                    match p.kind() {
                        "identifier" => self.declare(l, p, IdentifierKind::Parameter, 0),
                        _ => self.parameters(p, l),
                    }
                }
                if let Some(b) = n.child_by_field_name("body") {
                    self.visit(b, l);
                }
            }
            "method_invocation" => {
                match n.child_by_field_name("object") {
                    Some(o) => self.visit(o, scope),
                    None => {
                        if let Some(name) = n.child_by_field_name("name") {
                            let text = self.text(name);
                            if Some(text) == self.host_name {
                                self.t.use_name(scope, text, name.byte_range(), false);
                            }
                        }
                    }
                }
                if let Some(a) = n.child_by_field_name("arguments") {
                    self.visit(a, scope);
                }
            }
            "method_reference" => {
                if let Some(first) = n.named_child(0) {
                    self.visit(first, scope);
                }
            }
            "field_access" => {
                if let Some(o) = n.child_by_field_name("object") {
                    self.visit(o, scope);
                }
            }
            "object_creation_expression" => {
                for c in named_children(n) {
                    if c.kind() == "class_body" {
                        self.class_body(c, scope);
                    } else {
                        self.visit(c, scope);
                    }
                }
            }
            "class_declaration" | "record_declaration" | "enum_declaration" | "interface_declaration" => {
                if let Some(b) = n.child_by_field_name("body") {
                    self.class_body(b, scope);
                }
            }
            "instanceof_expression" => {
                if let Some(l) = n.child_by_field_name("left") {
                    self.visit(l, scope);
                }
            }
            "labeled_statement" => {
                for c in named_children(n).into_iter().skip(1) {
                    self.visit(c, scope);
                }
            }
            "break_statement" | "continue_statement" | "string_literal" | "line_comment" | "block_comment"
            | "switch_label" => {
                if n.kind() == "switch_label" {
                    for c in named_children(n) {
                        if c.kind() != "identifier" && c.kind() != "pattern" {
                            self.visit(c, scope);
                        }
                    }
                }
            }
            "cast_expression" => {
                if let Some(v) = n.child_by_field_name("value") {
                    self.visit(v, scope);
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

    /// Anonymous or local class: members are not renamed, and outer names
    /// used inside are treated as unresolved.
    fn class_body(&mut self, body: Node, scope: ScopeId) {
        let c = self.t.open(scope, ScopeKind::Class);
        for member in named_children(body) {
            match member.kind() {
                "field_declaration" | "constant_declaration" => {
                    let mut cursor = member.walk();
                    let ds: Vec<Node> = member.children_by_field_name("declarator", &mut cursor).collect();
                    for d in ds {
                        if let Some(v) = d.child_by_field_name("value") {
                            self.visit(v, c);
                        }
                    }
                }
                "method_declaration" | "constructor_declaration" => {
                    let f = self.t.open(c, ScopeKind::Function);
                    self.method_body(member, f);
                }
                "enum_constant" => {
                    if let Some(a) = member.child_by_field_name("arguments") {
                        self.visit(a, c);
                    }
                    if let Some(b) = member.child_by_field_name("body") {
                        self.class_body(b, c);
                    }
                }
                _ => self.visit(member, c),
            }
        }
    }
}
