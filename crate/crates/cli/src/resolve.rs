//! Turns a parsed document into library objects, resolving names.

use std::collections::HashMap;

use gsb_core::engine::RewriteSystem;
use gsb_core::group::{Automorphism, Elem, FiniteGroup, PartialIso, SubgroupWithCosets};
use gsb_core::hnn::{HnnAction, HnnExtensionSpec, HnnFactors, HnnSpec, STABLE, STABLE_INV};
use gsb_core::order::{OrderSpec, Slot};
use gsb_core::schreier::{BPresentation, ExtensionSpec};
use gsb_core::word::{Alphabet, LetterClass, Polynomial};

use crate::document::{
    ActionDecl, AutDecl, GroupKind, HnnDecl, InputDocument, OrderDecl, OrderKind, PresentationDecl, SubgroupDecl,
};
use crate::CliError;

fn input(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

/// The groups declared in a document, by name.
pub struct Groups(HashMap<String, FiniteGroup>);

impl Groups {
    pub fn from_document(doc: &InputDocument) -> Result<Self, CliError> {
        let mut map = HashMap::new();
        for g in &doc.groups {
            let group = match &g.kind {
                GroupKind::Cyclic { order, generator } => FiniteGroup::cyclic(*order, generator),
                GroupKind::Klein => FiniteGroup::klein_four(),
                GroupKind::Symmetric3 => FiniteGroup::symmetric3(),
                GroupKind::Trivial => FiniteGroup::trivial(),
                GroupKind::Table { elements, rows } => {
                    let index: HashMap<&str, Elem> =
                        elements.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
                    let table = rows
                        .iter()
                        .map(|r| {
                            r.iter()
                                .map(|n| {
                                    index
                                        .get(n.as_str())
                                        .copied()
                                        .ok_or_else(|| input(format!("group {}: unknown element `{n}`", g.name)))
                                })
                                .collect::<Result<Vec<_>, _>>()
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    FiniteGroup::from_table(elements.clone(), table)
                        .map_err(|e| input(format!("group {}: {e}", g.name)))?
                }
            };
            map.insert(g.name.clone(), group);
        }
        Ok(Groups(map))
    }

    pub fn get(&self, name: &str) -> Result<&FiniteGroup, CliError> {
        self.0.get(name).ok_or_else(|| input(format!("no group named `{name}`")))
    }
}

fn element(g: &FiniteGroup, name: &str) -> Result<Elem, CliError> {
    g.lookup(name).map_err(|e| input(e.to_string()))
}

fn automorphism(g: &FiniteGroup, decl: &AutDecl) -> Result<Automorphism, CliError> {
    match decl {
        AutDecl::Identity => Ok(Automorphism::identity(g)),
        AutDecl::Inversion => Automorphism::inversion(g).map_err(|e| input(e.to_string())),
        AutDecl::Images(pairs) => {
            let mut map: Vec<Elem> = g.elements().collect();
            for (x, y) in pairs {
                map[element(g, x)?] = element(g, y)?;
            }
            Automorphism::new(g, map).map_err(|e| input(e.to_string()))
        }
    }
}

fn presentation(doc: &InputDocument) -> Result<&PresentationDecl, CliError> {
    doc.presentation.as_ref().ok_or_else(|| input("the file has no [presentation]"))
}

fn relations_alphabet(letters: &[String], order: Option<&OrderDecl>) -> Result<Alphabet, CliError> {
    let kernel = order.map(|o| o.kernel_letters.as_slice()).unwrap_or_default();
    if let Some(k) = kernel.iter().find(|k| !letters.contains(k)) {
        return Err(input(format!("kernel letter `{k}` is not a declared letter")));
    }
    Alphabet::from_letters(letters.iter().map(|l| {
        let class = if kernel.contains(l) { LetterClass::A } else { LetterClass::Y };
        (l.as_str(), class)
    }))
    .map_err(|e| input(e.to_string()))
}

/// Rank of each letter: its position in `rank`, or declaration order.
fn ranks(al: &Alphabet, order: Option<&OrderDecl>) -> Result<Vec<u32>, CliError> {
    let Some(rank) = order.and_then(|o| o.rank.as_ref()) else {
        return Ok((0..al.len() as u32).collect());
    };
    let mut out = vec![u32::MAX; al.len()];
    for (i, name) in rank.iter().enumerate() {
        let l = al.lookup(name).ok_or_else(|| input(format!("rank names unknown letter `{name}`")))?;
        out[l.index()] = i as u32;
    }
    if out.contains(&u32::MAX) || rank.len() != al.len() {
        return Err(input("`rank` must list every letter exactly once"));
    }
    Ok(out)
}

fn order_spec(al: &Alphabet, order: Option<&OrderDecl>) -> Result<OrderSpec, CliError> {
    let r = ranks(al, order)?;
    match order.map_or(OrderKind::DegLex, |o| o.kind) {
        OrderKind::DegLex => OrderSpec::deg_lex_ranked(r).map_err(|e| input(e.to_string())),
        OrderKind::Tower => {
            let slots = al
                .letters()
                .map(|l| match al.class(l) {
                    LetterClass::A => Slot::A(r[l.index()]),
                    _ => Slot::Y(r[l.index()]),
                })
                .collect();
            OrderSpec::tower(slots).map_err(|e| input(e.to_string()))
        }
    }
}

/// The rewriting system of the presentation, as written.
pub fn rewrite_system(doc: &InputDocument, groups: &Groups) -> Result<RewriteSystem, CliError> {
    match presentation(doc)? {
        PresentationDecl::Relations { letters, relations, .. } => {
            let al = relations_alphabet(letters, doc.order.as_ref())?;
            let ord = order_spec(&al, doc.order.as_ref())?;
            let polys = relations
                .iter()
                .map(|(l, r)| {
                    let (l, r) = (al.parse_word(l), al.parse_word(r));
                    match (l, r) {
                        (Ok(l), Ok(r)) if l != r => Ok(Polynomial::binomial(l, r)),
                        (Ok(l), Ok(_)) => Err(input(format!("relation `{}` has equal sides", al.render(&l)))),
                        (Err(e), _) | (_, Err(e)) => Err(input(e.to_string())),
                    }
                })
                .collect::<Result<Vec<_>, _>>()?;
            RewriteSystem::new(al, ord, polys).map_err(|e| input(e.to_string()))
        }
        _ => Ok(b_presentation(doc, groups)?.system().clone()),
    }
}

/// The presentation as the quotient `B` of an extension.
pub fn b_presentation(doc: &InputDocument, groups: &Groups) -> Result<BPresentation, CliError> {
    let b = match presentation(doc)? {
        PresentationDecl::Relations {
            letters,
            inverses,
            relations,
        } => {
            let al = relations_alphabet(letters, None)?;
            let ord = order_spec(&al, doc.order.as_ref())?;
            let word = |s: &str| al.parse_word(s).map_err(|e| input(e.to_string()));
            let rels = relations
                .iter()
                .map(|(l, r)| Ok((word(l)?, word(r)?)))
                .collect::<Result<Vec<_>, CliError>>()?;
            let letter = |s: &str| al.lookup(s).ok_or_else(|| input(format!("unknown letter `{s}`")));
            let invs = inverses
                .iter()
                .map(|(x, y)| Ok((letter(x)?, letter(y)?)))
                .collect::<Result<Vec<_>, CliError>>()?;
            let n = rels.len();
            BPresentation::new(al.clone(), ord, rels, invs, vec![None; n])
        }
        PresentationDecl::Cyclic { order, letter } => BPresentation::cyclic(*order, letter),
        PresentationDecl::FreeAbelian(k) => BPresentation::free_abelian(*k),
        PresentationDecl::Table(name) => BPresentation::from_table(groups.get(name)?, None),
    };
    b.map_err(|e| input(e.to_string()))
}

/// The finite group behind a table presentation, if any.
pub fn b_table_group<'a>(doc: &InputDocument, groups: &'a Groups) -> Result<Option<&'a FiniteGroup>, CliError> {
    match presentation(doc)? {
        PresentationDecl::Table(name) => groups.get(name).map(Some),
        _ => Ok(None),
    }
}

fn action_decl(doc: &InputDocument) -> Result<&ActionDecl, CliError> {
    doc.action.as_ref().ok_or_else(|| input("the file has no [action] naming the kernel"))
}

/// The kernel group named in `[action]`.
pub fn kernel<'a>(doc: &InputDocument, groups: &'a Groups) -> Result<&'a FiniteGroup, CliError> {
    groups.get(&action_decl(doc)?.kernel)
}

/// Index of the relation named by `v<k>` or by its left side.
fn relation_index(b: &BPresentation, key: &str) -> Result<usize, CliError> {
    if let Some(k) = key.strip_prefix('v').and_then(|k| k.parse::<usize>().ok()) {
        if (1..=b.num_relations()).contains(&k) {
            return Ok(k - 1);
        }
        return Err(input(format!("no relation v{k}; there are {}", b.num_relations())));
    }
    let al = b.alphabet();
    b.relations()
        .iter()
        .position(|(v, _)| al.render(v) == key)
        .ok_or_else(|| input(format!("no relation with left side `{key}`")))
}

/// Complete Schreier extension data.
pub fn extension_spec(doc: &InputDocument, groups: &Groups) -> Result<ExtensionSpec, CliError> {
    let b = b_presentation(doc, groups)?;
    let decl = action_decl(doc)?;
    let a = groups.get(&decl.kernel)?;
    let al = b.alphabet();
    let mut action = vec![Automorphism::identity(a); al.len()];
    for (letter, m) in &decl.maps {
        let l = al.lookup(letter).ok_or_else(|| input(format!("action for unknown letter `{letter}`")))?;
        action[l.index()] = automorphism(a, m)?;
    }
    let mut factors = vec![a.identity(); b.num_relations()];
    if let Some(fs) = &doc.factorset {
        for (rel, value) in &fs.factors {
            factors[relation_index(&b, rel)?] = element(a, value)?;
        }
    }
    ExtensionSpec::new(a.clone(), b, action, factors).map_err(|e| input(e.to_string()))
}

fn subgroup(h: &FiniteGroup, decl: Option<&SubgroupDecl>) -> Result<SubgroupWithCosets, CliError> {
    let Some(decl) = decl else {
        return Ok(SubgroupWithCosets::whole(h));
    };
    let mut members = decl.members.iter().map(|m| element(h, m)).collect::<Result<Vec<_>, _>>()?;
    members.sort_unstable();
    members.dedup();
    let reps = match &decl.reps {
        Some(r) => r.iter().map(|m| element(h, m)).collect::<Result<Vec<_>, _>>()?,
        None if members.len() == h.order() => vec![h.identity()],
        None if members == [h.identity()] => h.elements().collect(),
        None => return Err(input("a proper nontrivial subgroup needs its coset representatives listed")),
    };
    SubgroupWithCosets::new(h, members, reps).map_err(|e| input(e.to_string()))
}

fn hnn_decl(doc: &InputDocument) -> Result<&HnnDecl, CliError> {
    doc.hnn.as_ref().ok_or_else(|| input("the file has no [hnn]"))
}

/// The HNN base data and extension data of `[hnn]`.
pub fn hnn_extension_spec(doc: &InputDocument, groups: &Groups) -> Result<HnnExtensionSpec, CliError> {
    let decl = hnn_decl(doc)?;
    let h = groups.get(&decl.base)?;
    let a = groups.get(&decl.kernel)?;
    let c = subgroup(h, decl.c.as_ref())?;
    let d = match &decl.d {
        Some(_) => subgroup(h, decl.d.as_ref())?,
        None => c.clone(),
    };
    let phi = if decl.phi.is_empty() {
        if c.members() != d.members() {
            return Err(input("`phi` is required when C and D differ"));
        }
        PartialIso::identity_on(h, &c)
    } else {
        let pairs = decl
            .phi
            .iter()
            .map(|(x, y)| Ok((element(h, x)?, element(h, y)?)))
            .collect::<Result<Vec<_>, CliError>>()?;
        PartialIso::new(h, &c, &d, pairs).map_err(|e| input(e.to_string()))?
    };
    let omega = match &decl.omega {
        Some(o) => Some(o.iter().map(|x| element(h, x)).collect::<Result<Vec<_>, _>>()?),
        None => None,
    };
    let base = HnnSpec::new(h.clone(), c, d, phi, omega).map_err(|e| input(e.to_string()))?;

    let n = h.order();
    let mut action = HnnAction::trivial(a, n);
    for (key, m) in &decl.actions {
        let aut = automorphism(a, m)?;
        match key.as_str() {
            STABLE => action.t = aut,
            STABLE_INV => action.t_inv = aut,
            other => action.h[element(h, other)?] = aut,
        }
    }
    let mut factors = HnnFactors::trivial(a, n);
    for (word, value) in &decl.factors {
        let v = element(a, value)?;
        let parts: Vec<&str> = word.split_whitespace().collect();
        let x = element(h, parts[0])?;
        match parts[1] {
            STABLE => factors.t[x] = v,
            STABLE_INV => factors.t_inv[x] = v,
            other => factors.hh[x * n + element(h, other)?] = v,
        }
    }
    HnnExtensionSpec::new(base, a.clone(), action, factors).map_err(|e| input(e.to_string()))
}

/// Non-fixed points of an automorphism, or `identity`.
pub fn render_automorphism(g: &FiniteGroup, aut: &Automorphism) -> String {
    let moved: Vec<String> = g
        .elements()
        .filter(|&x| aut.apply(x) != x)
        .map(|x| format!("{}->{}", g.name(x), g.name(aut.apply(x))))
        .collect();
    if moved.is_empty() {
        "identity".into()
    } else {
        moved.join(" ")
    }
}
