// SPDX-License-Identifier: Apache-2.0

//! Language-neutral scope bookkeeping shared by the three walkers.
//!
//! A walker opens scopes and records references while traversing the host
//! function. Resolution runs afterwards, so hoisted declarations are seen by
//! earlier uses.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::ops::Range;

use sumcorrupt_core::IdentifierKind;

pub(crate) type ScopeId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum ScopeKind {
    /// Everything around the host function.
    Outer,
    Function,
    Block,
    /// Python class body or Java class body. Names bound here are members.
    Class,
    /// Python comprehension.
    Comprehension,
}

/// How a declaration introduces its name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub(crate) enum Flavor {
    Param,
    /// `def`, JavaScript function declarations.
    Function,
    /// JavaScript `var`.
    Var,
    /// JavaScript `let`, `const`, `class`.
    Lexical,
    Other,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Role {
    Decl {
        kind: IdentifierKind,
        flavor: Flavor,
        taint: bool,
    },
    Use {
        taint: bool,
    },
    /// The name appears in a position we do not rename.
    Taint,
    /// `global` / `nonlocal`: the name escapes the function.
    Escape,
}

#[derive(Debug, Clone)]
pub(crate) struct Ref {
    pub name: String,
    /// Byte range in the text handed to the parser.
    pub span: Range<usize>,
    pub scope: ScopeId,
    pub role: Role,
}

#[derive(Debug, Clone, Copy)]
struct Binding {
    kind: IdentifierKind,
    visible_from: usize,
    host: bool,
}

#[derive(Debug)]
struct Scope {
    parent: Option<ScopeId>,
    kind: ScopeKind,
    bindings: HashMap<String, Binding>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Resolution {
    /// Bound inside the host function, or the host function's own name.
    Local,
    /// Bound in the surrounding code (including the host name).
    Outer,
    /// Bound as a class member, or reached across a class body.
    Member,
    Unresolved,
}

#[derive(Debug)]
pub(crate) struct ScopeTree {
    scopes: Vec<Scope>,
    pub refs: Vec<Ref>,
    /// A construct that defeats static resolution was seen.
    pub dynamic: bool,
    pub host_scope: Option<ScopeId>,
}

impl ScopeTree {
    pub fn new() -> Self {
        ScopeTree {
            scopes: vec![Scope {
                parent: None,
                kind: ScopeKind::Outer,
                bindings: HashMap::new(),
            }],
            refs: Vec::new(),
            dynamic: false,
            host_scope: None,
        }
    }

    pub const OUTER: ScopeId = 0;

    pub fn open(&mut self, parent: ScopeId, kind: ScopeKind) -> ScopeId {
        self.scopes.push(Scope {
            parent: Some(parent),
            kind,
            bindings: HashMap::new(),
        });
        self.scopes.len() - 1
    }

    pub fn kind(&self, id: ScopeId) -> ScopeKind {
        self.scopes[id].kind
    }

    /// Nearest enclosing scope (including `id`) satisfying `pred`.
    pub fn nearest(&self, mut id: ScopeId, pred: impl Fn(ScopeKind) -> bool) -> ScopeId {
        loop {
            if pred(self.scopes[id].kind) {
                return id;
            }
            match self.scopes[id].parent {
                Some(p) => id = p,
                None => return id,
            }
        }
    }

    /// Record a declaration; the first declaration of a name in a scope wins.
    #[allow(clippy::too_many_arguments)]
    pub fn declare(
        &mut self,
        scope: ScopeId,
        name: &str,
        span: Range<usize>,
        kind: IdentifierKind,
        flavor: Flavor,
        visible_from: usize,
        taint: bool,
    ) {
        self.bind(scope, name, span, kind, flavor, visible_from, taint, false);
    }

    /// Declare the host function's own name in the outer scope.
    pub fn declare_host(&mut self, name: &str, span: Range<usize>) {
        self.bind(
            Self::OUTER,
            name,
            span,
            IdentifierKind::FunctionName,
            Flavor::Function,
            0,
            false,
            true,
        );
    }

    #[allow(clippy::too_many_arguments)]
    fn bind(
        &mut self,
        scope: ScopeId,
        name: &str,
        span: Range<usize>,
        kind: IdentifierKind,
        flavor: Flavor,
        visible_from: usize,
        taint: bool,
        host: bool,
    ) {
        self.scopes[scope].bindings.entry(name.to_owned()).or_insert(Binding {
            kind,
            visible_from,
            host,
        });
        self.refs.push(Ref {
            name: name.to_owned(),
            span,
            scope,
            role: Role::Decl { kind, flavor, taint },
        });
    }

    pub fn use_name(&mut self, scope: ScopeId, name: &str, span: Range<usize>, taint: bool) {
        self.refs.push(Ref {
            name: name.to_owned(),
            span,
            scope,
            role: Role::Use { taint },
        });
    }

    pub fn taint(&mut self, name: &str, span: Range<usize>) {
        self.refs.push(Ref {
            name: name.to_owned(),
            span,
            scope: Self::OUTER,
            role: Role::Taint,
        });
    }

    pub fn escape(&mut self, scope: ScopeId, name: &str, span: Range<usize>) {
        self.refs.push(Ref {
            name: name.to_owned(),
            span,
            scope,
            role: Role::Escape,
        });
    }

    fn lookup(&self, start: ScopeId, name: &str, at: usize) -> (Resolution, Option<Binding>) {
        let mut cur = Some(start);
        let mut crossed_class = false;
        while let Some(id) = cur {
            let scope = &self.scopes[id];
            // Class bodies are only visible to code directly inside them.
            let visible = scope.kind != ScopeKind::Class || id == start;
            if visible {
                if let Some(b) = scope.bindings.get(name) {
                    if b.visible_from <= at {
                        let res = if crossed_class || scope.kind == ScopeKind::Class {
                            Resolution::Member
                        } else if scope.kind == ScopeKind::Outer {
                            if b.host {
                                Resolution::Local
                            } else {
                                Resolution::Outer
                            }
                        } else {
                            Resolution::Local
                        };
                        return (res, Some(*b));
                    }
                }
            }
            if scope.kind == ScopeKind::Class {
                crossed_class = true;
            }
            cur = scope.parent;
        }
        (Resolution::Unresolved, None)
    }

    fn resolve(&self, r: &Ref) -> (Resolution, Option<Binding>) {
        match r.role {
            Role::Decl { .. } => self.lookup(r.scope, &r.name, usize::MAX),
            Role::Use { .. } => self.lookup(r.scope, &r.name, r.span.start),
            Role::Taint | Role::Escape => (Resolution::Unresolved, None),
        }
    }

    /// Names whose every reference is a clean, host-local declaration or use.
    pub fn renameable(&self) -> HashSet<String> {
        if self.dynamic {
            return HashSet::new();
        }
        let mut clean_names = HashSet::new();
        let mut tainted = HashSet::new();
        for r in &self.refs {
            let (res, _) = self.resolve(r);
            let clean = match r.role {
                Role::Decl { taint, .. } | Role::Use { taint } => !taint && res == Resolution::Local,
                Role::Taint | Role::Escape => false,
            };
            if clean {
                clean_names.insert(r.name.as_str());
            } else {
                tainted.insert(r.name.as_str());
            }
        }
        clean_names.difference(&tainted).map(|n| (*n).to_owned()).collect()
    }

    /// Names referenced by the host that resolve outside it: the host's own
    /// name, surrounding bindings, globals and builtins, and anything named
    /// in `global` / `nonlocal`.
    pub fn free_names(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for r in &self.refs {
            match r.role {
                Role::Use { .. } => {
                    let (res, binding) = self.lookup(r.scope, &r.name, r.span.start);
                    let escapes = match res {
                        Resolution::Unresolved | Resolution::Outer => true,
                        Resolution::Local => binding.is_some_and(|b| b.host),
                        Resolution::Member => false,
                    };
                    if escapes {
                        out.insert(r.name.clone());
                    }
                }
                Role::Escape => {
                    out.insert(r.name.clone());
                }
                _ => {}
            }
        }
        out
    }

    /// Declarations whose binding lives in scope `id`.
    pub fn declared_in(&self, id: ScopeId) -> impl Iterator<Item = (&str, Flavor)> + '_ {
        self.refs.iter().filter_map(move |r| match r.role {
            Role::Decl { flavor, .. } if r.scope == id => Some((r.name.as_str(), flavor)),
            _ => None,
        })
    }

    pub fn has_escape(&self) -> bool {
        self.refs.iter().any(|r| r.role == Role::Escape)
    }

    /// Classification of reference `r` as a first-class occurrence: kind and
    /// whether it is a declaration.
    pub fn occurrence_kind(&self, r: &Ref) -> Option<(IdentifierKind, bool)> {
        let (_, binding) = self.resolve(r);
        match r.role {
            Role::Decl { kind, .. } => Some((binding.map_or(kind, |b| b.kind), true)),
            Role::Use { .. } => binding.map(|b| (b.kind, false)),
            _ => None,
        }
    }
}
