//! The stanza input format and its canonical serialization.
//!
//! A document is a sequence of `[stanza]` headers, each followed by
//! `key: value` lines. `#` starts a comment. Words are whitespace-separated
//! letter names and `1` alone is the empty word. Parsing is purely
//! syntactic; names are resolved against the groups later.
//!
//! ```text
//! [group]
//! name: A
//! cyclic: 2 a
//!
//! [presentation]
//! cyclic: 2 x
//!
//! [action]
//! kernel: A
//! map: x = identity
//!
//! [factorset]
//! factor: v1 = a
//! ```

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A syntax error with the 1-based line it occurred on.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        message: message.into(),
    })
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputDocument {
    pub groups: Vec<GroupDecl>,
    pub presentation: Option<PresentationDecl>,
    pub order: Option<OrderDecl>,
    pub action: Option<ActionDecl>,
    pub factorset: Option<FactorSetDecl>,
    pub hnn: Option<HnnDecl>,
    pub limits: LimitsDecl,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupDecl {
    pub name: String,
    pub kind: GroupKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GroupKind {
    Cyclic { order: usize, generator: String },
    Klein,
    Symmetric3,
    Trivial,
    /// Element names and the rows of the multiplication table by name.
    Table { elements: Vec<String>, rows: Vec<Vec<String>> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PresentationDecl {
    Relations {
        letters: Vec<String>,
        inverses: Vec<(String, String)>,
        /// `(lhs, rhs)` as normalized word text.
        relations: Vec<(String, String)>,
    },
    Cyclic { order: usize, letter: String },
    FreeAbelian(usize),
    /// The multiplication-table presentation of a named group.
    Table(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum OrderKind {
    DegLex,
    Tower,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderDecl {
    pub kind: OrderKind,
    /// Letters from smallest to largest; declaration order when absent.
    pub rank: Option<Vec<String>>,
    /// Letters classed as kernel letters for the tower order.
    pub kernel_letters: Vec<String>,
}

/// An automorphism of a finite group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum AutDecl {
    Identity,
    Inversion,
    /// `x->y` images; unlisted elements are fixed.
    Images(Vec<(String, String)>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionDecl {
    pub kernel: String,
    /// `(letter, automorphism)`; unlisted letters act trivially.
    pub maps: Vec<(String, AutDecl)>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorSetDecl {
    /// `(relation, value)` where the relation is `v<k>` (1-based) or the
    /// left side of the relation; unlisted factors are the identity.
    pub factors: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupDecl {
    pub members: Vec<String>,
    pub reps: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HnnDecl {
    pub base: String,
    pub kernel: String,
    /// `C`; the whole base group when absent.
    pub c: Option<SubgroupDecl>,
    /// `D`; equal to `C` when absent.
    pub d: Option<SubgroupDecl>,
    /// `φ` as element pairs; the identity on `C` when empty.
    pub phi: Vec<(String, String)>,
    pub omega: Option<Vec<String>>,
    /// `(h, t or T, automorphism)` keyed by base element or stable letter.
    pub actions: Vec<(String, AutDecl)>,
    /// `(two-letter word, value)`: `h h'`, `h t` or `h T`.
    pub factors: Vec<(String, String)>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LimitsDecl {
    pub max_rules: Option<usize>,
    pub max_degree: Option<usize>,
    pub max_steps: Option<usize>,
    pub max_len: Option<usize>,
    pub samples: Option<usize>,
    pub context_len: Option<usize>,
    pub seed: Option<u64>,
    pub guard: Option<u128>,
}

impl LimitsDecl {
    fn is_empty(&self) -> bool {
        *self == LimitsDecl::default()
    }
}

struct Entry {
    key: String,
    value: String,
    line: usize,
}

struct Stanza {
    name: String,
    line: usize,
    entries: Vec<Entry>,
}

fn split_stanzas(text: &str) -> Result<Vec<Stanza>, ParseError> {
    let mut out: Vec<Stanza> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(rest) = content.strip_prefix('[') {
            let Some(name) = rest.strip_suffix(']') else {
                return err(line, "unterminated stanza header");
            };
            out.push(Stanza {
                name: name.trim().to_string(),
                line,
                entries: Vec::new(),
            });
            continue;
        }
        let Some((key, value)) = content.split_once(':') else {
            return err(line, format!("expected `key: value`, found `{content}`"));
        };
        let Some(stanza) = out.last_mut() else {
            return err(line, "entry before the first stanza header");
        };
        stanza.entries.push(Entry {
            key: key.trim().to_string(),
            value: value.trim().to_string(),
            line,
        });
    }
    Ok(out)
}

/// Collapses whitespace; the empty word is written `1`.
pub fn normalize_word(text: &str) -> String {
    let tokens: Vec<&str> = text.split_whitespace().filter(|t| *t != "1").collect();
    if tokens.is_empty() {
        "1".to_string()
    } else {
        tokens.join(" ")
    }
}

fn tokens(value: &str) -> Vec<String> {
    value.split_whitespace().map(String::from).collect()
}

fn number<T: std::str::FromStr>(e: &Entry) -> Result<T, ParseError> {
    e.value
        .parse()
        .or_else(|_| err(e.line, format!("`{}` expects a number, found `{}`", e.key, e.value)))
}

fn split_pair<'a>(e: &'a Entry, sep: &str) -> Result<(&'a str, &'a str), ParseError> {
    match e.value.split_once(sep) {
        Some((l, r)) if !l.trim().is_empty() && !r.trim().is_empty() => Ok((l.trim(), r.trim())),
        _ => err(e.line, format!("`{}` expects `left {sep} right`", e.key)),
    }
}

fn images(text: &str, line: usize) -> Result<Vec<(String, String)>, ParseError> {
    text.split_whitespace()
        .map(|p| match p.split_once("->") {
            Some((x, y)) if !x.is_empty() && !y.is_empty() => Ok((x.to_string(), y.to_string())),
            _ => err(line, format!("expected `x->y`, found `{p}`")),
        })
        .collect()
}

fn aut(text: &str, line: usize) -> Result<AutDecl, ParseError> {
    match text {
        "identity" => Ok(AutDecl::Identity),
        "inversion" => Ok(AutDecl::Inversion),
        _ => images(text, line).map(AutDecl::Images),
    }
}

fn unknown<T>(stanza: &str, e: &Entry) -> Result<T, ParseError> {
    err(e.line, format!("unknown key `{}` in [{stanza}]", e.key))
}

fn once<T>(slot: &mut Option<T>, value: T, e: &Entry) -> Result<(), ParseError> {
    if slot.is_some() {
        return err(e.line, format!("`{}` given twice", e.key));
    }
    *slot = Some(value);
    Ok(())
}

fn parse_group(s: &Stanza) -> Result<GroupDecl, ParseError> {
    let (mut name, mut kind, mut elements) = (None, None, None);
    let mut rows = Vec::new();
    for e in &s.entries {
        match e.key.as_str() {
            "name" => once(&mut name, e.value.clone(), e)?,
            "cyclic" => {
                let t = tokens(&e.value);
                let order = t.first().and_then(|n| n.parse().ok()).filter(|&n: &usize| n >= 1);
                match (order, t.get(1), t.len()) {
                    (Some(order), Some(g), 2) => once(&mut kind, GroupKind::Cyclic { order, generator: g.clone() }, e)?,
                    _ => return err(e.line, "`cyclic` expects `<order> <generator>`"),
                }
            }
            "preset" => {
                let k = match e.value.as_str() {
                    "klein" => GroupKind::Klein,
                    "s3" => GroupKind::Symmetric3,
                    "trivial" => GroupKind::Trivial,
                    other => return err(e.line, format!("unknown preset `{other}`")),
                };
                once(&mut kind, k, e)?;
            }
            "elements" => once(&mut elements, tokens(&e.value), e)?,
            "row" => rows.push(tokens(&e.value)),
            _ => return unknown("group", e),
        }
    }
    let name = name.ok_or(ParseError {
        line: s.line,
        message: "[group] needs a `name`".into(),
    })?;
    let kind = match (kind, elements) {
        (Some(k), None) if rows.is_empty() => k,
        (None, Some(elements)) => GroupKind::Table { elements, rows },
        _ => return err(s.line, "[group] needs exactly one of `cyclic`, `preset` or `elements` with `row`s"),
    };
    Ok(GroupDecl { name, kind })
}

fn parse_presentation(s: &Stanza) -> Result<PresentationDecl, ParseError> {
    let mut letters = None;
    let mut inverses = Vec::new();
    let mut relations = Vec::new();
    let mut other = None;
    for e in &s.entries {
        match e.key.as_str() {
            "letters" => once(&mut letters, tokens(&e.value), e)?,
            "inverse" => match tokens(&e.value).as_slice() {
                [x, y] => inverses.push((x.clone(), y.clone())),
                _ => return err(e.line, "`inverse` expects two letters"),
            },
            "rel" => {
                let (l, r) = split_pair(e, "->")?;
                relations.push((normalize_word(l), normalize_word(r)));
            }
            "cyclic" => {
                let t = tokens(&e.value);
                match (t.first().and_then(|n| n.parse().ok()), t.get(1), t.len()) {
                    (Some(order), Some(l), 2) => once(&mut other, PresentationDecl::Cyclic { order, letter: l.clone() }, e)?,
                    _ => return err(e.line, "`cyclic` expects `<order> <letter>`"),
                }
            }
            "free-abelian" => once(&mut other, PresentationDecl::FreeAbelian(number(e)?), e)?,
            "table" => once(&mut other, PresentationDecl::Table(e.value.clone()), e)?,
            _ => return unknown("presentation", e),
        }
    }
    match (letters, other) {
        (Some(letters), None) => Ok(PresentationDecl::Relations {
            letters,
            inverses,
            relations,
        }),
        (None, Some(p)) if inverses.is_empty() && relations.is_empty() => Ok(p),
        _ => err(
            s.line,
            "[presentation] needs either `letters` with `rel`s or one of `cyclic`, `free-abelian`, `table`",
        ),
    }
}

fn parse_order(s: &Stanza) -> Result<OrderDecl, ParseError> {
    let (mut kind, mut rank, mut kernel) = (None, None, None);
    for e in &s.entries {
        match e.key.as_str() {
            "kind" => {
                let k = match e.value.as_str() {
                    "deg-lex" => OrderKind::DegLex,
                    "tower" => OrderKind::Tower,
                    other => return err(e.line, format!("unknown order `{other}`")),
                };
                once(&mut kind, k, e)?;
            }
            "rank" => once(&mut rank, tokens(&e.value), e)?,
            "kernel-letters" => once(&mut kernel, tokens(&e.value), e)?,
            _ => return unknown("order", e),
        }
    }
    Ok(OrderDecl {
        kind: kind.unwrap_or(OrderKind::DegLex),
        rank,
        kernel_letters: kernel.unwrap_or_default(),
    })
}

fn parse_action(s: &Stanza) -> Result<ActionDecl, ParseError> {
    let mut kernel = None;
    let mut maps = Vec::new();
    for e in &s.entries {
        match e.key.as_str() {
            "kernel" => once(&mut kernel, e.value.clone(), e)?,
            "map" => {
                let (l, r) = split_pair(e, "=")?;
                maps.push((l.to_string(), aut(r, e.line)?));
            }
            _ => return unknown("action", e),
        }
    }
    let kernel = kernel.ok_or(ParseError {
        line: s.line,
        message: "[action] needs a `kernel`".into(),
    })?;
    Ok(ActionDecl { kernel, maps })
}

fn parse_factorset(s: &Stanza) -> Result<FactorSetDecl, ParseError> {
    let mut factors = Vec::new();
    for e in &s.entries {
        match e.key.as_str() {
            "factor" => {
                let (l, r) = split_pair(e, "=")?;
                factors.push((normalize_word(l), r.to_string()));
            }
            _ => return unknown("factorset", e),
        }
    }
    Ok(FactorSetDecl { factors })
}

fn parse_hnn(s: &Stanza) -> Result<HnnDecl, ParseError> {
    let (mut base, mut kernel, mut omega) = (None, None, None);
    let (mut c, mut c_reps, mut d, mut d_reps, mut phi) = (None, None, None, None, None);
    let (mut actions, mut factors) = (Vec::new(), Vec::new());
    for e in &s.entries {
        match e.key.as_str() {
            "base" => once(&mut base, e.value.clone(), e)?,
            "kernel" => once(&mut kernel, e.value.clone(), e)?,
            "c" => once(&mut c, tokens(&e.value), e)?,
            "c-reps" => once(&mut c_reps, tokens(&e.value), e)?,
            "d" => once(&mut d, tokens(&e.value), e)?,
            "d-reps" => once(&mut d_reps, tokens(&e.value), e)?,
            "phi" => once(&mut phi, images(&e.value, e.line)?, e)?,
            "omega" => once(&mut omega, tokens(&e.value), e)?,
            "act" => {
                let (l, r) = split_pair(e, "=")?;
                actions.push((l.to_string(), aut(r, e.line)?));
            }
            "factor" => {
                let (l, r) = split_pair(e, "=")?;
                if tokens(l).len() != 2 {
                    return err(e.line, "an HNN factor is indexed by a two-letter word");
                }
                factors.push((normalize_word(l), r.to_string()));
            }
            _ => return unknown("hnn", e),
        }
    }
    let need = |v: Option<String>, key: &str| {
        v.ok_or(ParseError {
            line: s.line,
            message: format!("[hnn] needs a `{key}`"),
        })
    };
    let sub = |members: Option<Vec<String>>, reps: Option<Vec<String>>, key: &str| match (members, reps) {
        (Some(members), reps) => Ok(Some(SubgroupDecl { members, reps })),
        (None, None) => Ok(None),
        (None, Some(_)) => err(s.line, format!("`{key}-reps` given without `{key}`")),
    };
    Ok(HnnDecl {
        base: need(base, "base")?,
        kernel: need(kernel, "kernel")?,
        c: sub(c, c_reps, "c")?,
        d: sub(d, d_reps, "d")?,
        phi: phi.unwrap_or_default(),
        omega,
        actions,
        factors,
    })
}

fn parse_limits(s: &Stanza) -> Result<LimitsDecl, ParseError> {
    let mut l = LimitsDecl::default();
    for e in &s.entries {
        match e.key.as_str() {
            "max-rules" => once(&mut l.max_rules, number(e)?, e)?,
            "max-degree" => once(&mut l.max_degree, number(e)?, e)?,
            "max-steps" => once(&mut l.max_steps, number(e)?, e)?,
            "max-len" => once(&mut l.max_len, number(e)?, e)?,
            "samples" => once(&mut l.samples, number(e)?, e)?,
            "context-len" => once(&mut l.context_len, number(e)?, e)?,
            "seed" => once(&mut l.seed, number(e)?, e)?,
            "guard" => once(&mut l.guard, number(e)?, e)?,
            _ => return unknown("limits", e),
        }
    }
    Ok(l)
}

fn single<T>(slot: &mut Option<T>, value: T, s: &Stanza) -> Result<(), ParseError> {
    if slot.is_some() {
        return err(s.line, format!("[{}] given twice", s.name));
    }
    *slot = Some(value);
    Ok(())
}

/// Parses a document. Errors carry the offending line.
pub fn parse_document(text: &str) -> Result<InputDocument, ParseError> {
    let mut doc = InputDocument::default();
    let mut limits = None;
    for s in split_stanzas(text)? {
        match s.name.as_str() {
            "group" => {
                let g = parse_group(&s)?;
                if doc.groups.iter().any(|h| h.name == g.name) {
                    return err(s.line, format!("group `{}` declared twice", g.name));
                }
                doc.groups.push(g);
            }
            "presentation" => single(&mut doc.presentation, parse_presentation(&s)?, &s)?,
            "order" => single(&mut doc.order, parse_order(&s)?, &s)?,
            "action" => single(&mut doc.action, parse_action(&s)?, &s)?,
            "factorset" => single(&mut doc.factorset, parse_factorset(&s)?, &s)?,
            "hnn" => single(&mut doc.hnn, parse_hnn(&s)?, &s)?,
            "limits" => single(&mut limits, parse_limits(&s)?, &s)?,
            other => return err(s.line, format!("unknown stanza [{other}]")),
        }
    }
    doc.limits = limits.unwrap_or_default();
    Ok(doc)
}

fn render_aut(a: &AutDecl) -> String {
    match a {
        AutDecl::Identity => "identity".into(),
        AutDecl::Inversion => "inversion".into(),
        AutDecl::Images(ps) => render_images(ps),
    }
}

fn render_images(ps: &[(String, String)]) -> String {
    ps.iter().map(|(x, y)| format!("{x}->{y}")).collect::<Vec<_>>().join(" ")
}

/// Canonical text of a document; [`parse_document`] inverts it.
pub fn serialize_document(doc: &InputDocument) -> String {
    let mut out = String::new();
    let mut stanza = |name: &str, lines: Vec<String>| {
        if !out.is_empty() {
            out.push('\n');
        }
        let _ = writeln!(out, "[{name}]");
        for l in lines {
            let _ = writeln!(out, "{l}");
        }
    };
    for g in &doc.groups {
        let mut lines = vec![format!("name: {}", g.name)];
        match &g.kind {
            GroupKind::Cyclic { order, generator } => lines.push(format!("cyclic: {order} {generator}")),
            GroupKind::Klein => lines.push("preset: klein".into()),
            GroupKind::Symmetric3 => lines.push("preset: s3".into()),
            GroupKind::Trivial => lines.push("preset: trivial".into()),
            GroupKind::Table { elements, rows } => {
                lines.push(format!("elements: {}", elements.join(" ")));
                lines.extend(rows.iter().map(|r| format!("row: {}", r.join(" "))));
            }
        }
        stanza("group", lines);
    }
    if let Some(p) = &doc.presentation {
        let lines = match p {
            PresentationDecl::Relations {
                letters,
                inverses,
                relations,
            } => {
                let mut lines = vec![format!("letters: {}", letters.join(" "))];
                lines.extend(inverses.iter().map(|(x, y)| format!("inverse: {x} {y}")));
                lines.extend(relations.iter().map(|(l, r)| format!("rel: {l} -> {r}")));
                lines
            }
            PresentationDecl::Cyclic { order, letter } => vec![format!("cyclic: {order} {letter}")],
            PresentationDecl::FreeAbelian(k) => vec![format!("free-abelian: {k}")],
            PresentationDecl::Table(g) => vec![format!("table: {g}")],
        };
        stanza("presentation", lines);
    }
    if let Some(o) = &doc.order {
        let kind = match o.kind {
            OrderKind::DegLex => "deg-lex",
            OrderKind::Tower => "tower",
        };
        let mut lines = vec![format!("kind: {kind}")];
        if let Some(r) = &o.rank {
            lines.push(format!("rank: {}", r.join(" ")));
        }
        if !o.kernel_letters.is_empty() {
            lines.push(format!("kernel-letters: {}", o.kernel_letters.join(" ")));
        }
        stanza("order", lines);
    }
    if let Some(a) = &doc.action {
        let mut lines = vec![format!("kernel: {}", a.kernel)];
        lines.extend(a.maps.iter().map(|(l, m)| format!("map: {l} = {}", render_aut(m))));
        stanza("action", lines);
    }
    if let Some(f) = &doc.factorset {
        stanza(
            "factorset",
            f.factors.iter().map(|(r, v)| format!("factor: {r} = {v}")).collect(),
        );
    }
    if let Some(h) = &doc.hnn {
        let mut lines = vec![format!("base: {}", h.base), format!("kernel: {}", h.kernel)];
        for (key, sub) in [("c", &h.c), ("d", &h.d)] {
            if let Some(s) = sub {
                lines.push(format!("{key}: {}", s.members.join(" ")));
                if let Some(r) = &s.reps {
                    lines.push(format!("{key}-reps: {}", r.join(" ")));
                }
            }
        }
        if !h.phi.is_empty() {
            lines.push(format!("phi: {}", render_images(&h.phi)));
        }
        if let Some(o) = &h.omega {
            lines.push(format!("omega: {}", o.join(" ")));
        }
        lines.extend(h.actions.iter().map(|(l, m)| format!("act: {l} = {}", render_aut(m))));
        lines.extend(h.factors.iter().map(|(w, v)| format!("factor: {w} = {v}")));
        stanza("hnn", lines);
    }
    if !doc.limits.is_empty() {
        let l = &doc.limits;
        let mut lines = Vec::new();
        let mut push = |key: &str, v: Option<String>| {
            if let Some(v) = v {
                lines.push(format!("{key}: {v}"));
            }
        };
        push("max-rules", l.max_rules.map(|v| v.to_string()));
        push("max-degree", l.max_degree.map(|v| v.to_string()));
        push("max-steps", l.max_steps.map(|v| v.to_string()));
        push("max-len", l.max_len.map(|v| v.to_string()));
        push("samples", l.samples.map(|v| v.to_string()));
        push("context-len", l.context_len.map(|v| v.to_string()));
        push("seed", l.seed.map(|v| v.to_string()));
        push("guard", l.guard.map(|v| v.to_string()));
        stanza("limits", lines);
    }
    out
}
