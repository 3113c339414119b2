//! Symbolic derivation of the extension conditions `ξ = ζ`.
//!
//! Each composition `(f_{v₁}, f_{v₂})_w` of `R` is lifted to the extension
//! system with the factor values kept as formal letters `(v)^u`, `u ∈ Y*`
//! the accumulated action superscript. Both monomials of the lifted
//! composition are rewritten with
//!
//! * `v → h_v·(v)` (the factor omitted when forced to 1), and
//! * `(v)^u · y → y · (v)^{u y}`,
//!
//! taking the first applicable relation in index order at its leftmost
//! occurrence and commuting only when no relation applies. Each side ends
//! as `z · (product of formal letters)` with `z ∈ Irr(R)`; the two products
//! are `ξ` and `ζ`. Compositions whose ambiguity `w` contains a leading word
//! strictly inside are skipped, as their conditions are consequences of the
//! others. Superscripts are kept as written rather than reduced
//! modulo `R`, since `a^u` and `a^{u'}` may differ for `u = u'` in `B`.

use serde::{Deserialize, Serialize};

use super::{BPresentation, ExtensionSpec, SchreierError};
use crate::engine::{find_compositions, Composition, CompositionKind};
use crate::group::Elem;
use crate::word::{Letter, Word};

const SYMBOLIC_STEP_LIMIT: usize = 100_000;

/// The formal letter `(v)^u`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FactorTerm {
    pub relation: usize,
    pub sup: Word,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Sym {
    Y(Letter),
    F(FactorTerm),
}

/// `ξ = ζ` for one composition of `R`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivedEquation {
    pub kind: CompositionKind,
    pub f: usize,
    pub g: usize,
    pub w: Word,
    pub z: Word,
    pub xi: Vec<FactorTerm>,
    pub zeta: Vec<FactorTerm>,
}

/// `(v) a^v = a^{h_v} (v)` for one relation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionEquation {
    pub relation: usize,
}

/// One derived equation evaluated at concrete data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquationCheck {
    pub text: String,
    pub lhs: Elem,
    pub rhs: Elem,
}

#[derive(Clone, Debug)]
pub struct DerivedConditions {
    b: BPresentation,
    pub equations: Vec<DerivedEquation>,
    pub action: Vec<ActionEquation>,
    /// Compositions whose two sides agree formally.
    pub trivial_compositions: usize,
    /// Intersection compositions skipped because a leading word sits
    /// strictly inside `w`; their conditions follow from compositions on
    /// proper subwords of `w`.
    pub composite_compositions: usize,
    /// Compositions whose sides did not reach the shape `z·(ξ − ζ)`.
    pub shape_failures: Vec<String>,
}

/// Rewrites to `z · (formal letters)`.
fn normal_form(b: &BPresentation, mut word: Vec<Sym>) -> Result<(Word, Vec<FactorTerm>), String> {
    for _ in 0..SYMBOLIC_STEP_LIMIT {
        if let Some((rel, pos)) = find_relation(b, &word) {
            let (v, h) = &b.relations()[rel];
            let mut repl: Vec<Sym> = h.letters().iter().map(|l| Sym::Y(*l)).collect();
            if !b.is_forced(rel) {
                repl.push(Sym::F(FactorTerm {
                    relation: rel,
                    sup: Word::empty(),
                }));
            }
            word.splice(pos..pos + v.len(), repl);
            continue;
        }
        let commute = (0..word.len().saturating_sub(1))
            .find(|&i| matches!((&word[i], &word[i + 1]), (Sym::F(_), Sym::Y(_))));
        if let Some(i) = commute {
            if let (Sym::F(mut t), Sym::Y(y)) = (word[i].clone(), word[i + 1].clone()) {
                t.sup.push(y);
                word[i] = Sym::Y(y);
                word[i + 1] = Sym::F(t);
            }
            continue;
        }
        let z: Word = word
            .iter()
            .filter_map(|s| match s {
                Sym::Y(l) => Some(*l),
                Sym::F(_) => None,
            })
            .collect();
        let fs = word
            .into_iter()
            .filter_map(|s| match s {
                Sym::F(t) => Some(t),
                Sym::Y(_) => None,
            })
            .collect();
        return Ok((z, fs));
    }
    Err(format!("no normal form within {SYMBOLIC_STEP_LIMIT} steps"))
}

fn find_relation(b: &BPresentation, word: &[Sym]) -> Option<(usize, usize)> {
    b.relations().iter().enumerate().find_map(|(i, (v, _))| {
        let n = v.len();
        (0..=word.len().saturating_sub(n)).find_map(|p| {
            let hit = n <= word.len()
                && word[p..p + n]
                    .iter()
                    .zip(v.letters())
                    .all(|(s, l)| *s == Sym::Y(*l));
            hit.then_some((i, p))
        })
    })
}

/// An intersection whose `w` has a leading-word occurrence touching
/// neither end splits into two compositions on proper subwords of `w` (or
/// disjoint rewrites), so its condition is implied by theirs.
fn is_composite(b: &BPresentation, c: &Composition) -> bool {
    c.kind == CompositionKind::Intersection
        && b.relations().iter().any(|(v, _)| {
            c.w.occurrences(v)
                .into_iter()
                .any(|q| q > 0 && q + v.len() < c.w.len())
        })
}

fn ys(w: &Word) -> Vec<Sym> {
    w.letters().iter().map(|l| Sym::Y(*l)).collect()
}

/// Derives `ξ = ζ` for every composition of `R` and lists the action
/// condition for every relation.
pub fn derive_conditions(b: &BPresentation) -> Result<DerivedConditions, SchreierError> {
    let mut equations = Vec::new();
    let mut trivial = 0;
    let mut shape_failures = Vec::new();
    let al = b.alphabet();
    let mut composite = 0;
    for c in find_compositions(b.system()) {
        if is_composite(b, &c) {
            composite += 1;
            continue;
        }
        let factor = |rel: usize| -> Vec<Sym> {
            if b.is_forced(rel) {
                vec![]
            } else {
                vec![Sym::F(FactorTerm {
                    relation: rel,
                    sup: Word::empty(),
                })]
            }
        };
        let (_, hf) = &b.relations()[c.f];
        let (_, hg) = &b.relations()[c.g];
        // lifted value: a·h_g·(g) [·b] − h_f·(f) [·b]
        let mut plus = ys(&c.a);
        plus.extend(ys(hg));
        plus.extend(factor(c.g));
        let mut minus = ys(hf);
        minus.extend(factor(c.f));
        match c.kind {
            CompositionKind::Intersection => minus.extend(ys(&c.b)),
            CompositionKind::Inclusion => plus.extend(ys(&c.b)),
        }
        let sides = normal_form(b, plus).and_then(|p| normal_form(b, minus).map(|m| (p, m)));
        match sides {
            Err(e) => shape_failures.push(format!("{}: {e}", al.render(&c.w))),
            Ok(((z1, xi), (z2, zeta))) => {
                if z1 != z2 {
                    shape_failures.push(format!(
                        "{}: sides end in `{}` and `{}`",
                        al.render(&c.w),
                        al.render(&z1),
                        al.render(&z2)
                    ));
                } else if xi == zeta {
                    trivial += 1;
                } else {
                    equations.push(DerivedEquation {
                        kind: c.kind,
                        f: c.f,
                        g: c.g,
                        w: c.w,
                        z: z1,
                        xi,
                        zeta,
                    });
                }
            }
        }
    }
    let action = (0..b.num_relations())
        .map(|relation| ActionEquation { relation })
        .collect();
    Ok(DerivedConditions {
        b: b.clone(),
        equations,
        action,
        trivial_compositions: trivial,
        composite_compositions: composite,
        shape_failures,
    })
}

/// Puts the lexicographically smaller side first.
pub fn normalize_equation(lhs: &str, rhs: &str) -> String {
    if lhs <= rhs {
        format!("{lhs} = {rhs}")
    } else {
        format!("{rhs} = {lhs}")
    }
}

impl DerivedConditions {
    pub fn presentation(&self) -> &BPresentation {
        &self.b
    }

    fn superscript(&self, u: &Word) -> String {
        if u.is_empty() {
            String::new()
        } else {
            format!("^{{{}}}", self.b.alphabet().render(u))
        }
    }

    pub fn render_term(&self, t: &FactorTerm) -> String {
        format!("{}{}", self.b.factor_name(t.relation), self.superscript(&t.sup))
    }

    pub fn render_product(&self, ts: &[FactorTerm]) -> String {
        if ts.is_empty() {
            "1".to_string()
        } else {
            ts.iter().map(|t| self.render_term(t)).collect::<Vec<_>>().join(" ")
        }
    }

    /// `ξ = ζ` with the sides in normalized order.
    pub fn render_equation(&self, eq: &DerivedEquation) -> String {
        normalize_equation(&self.render_product(&eq.xi), &self.render_product(&eq.zeta))
    }

    /// `(v) a^{v} = a^{h_v} (v)`, with `a^{1}` written `a` and forced
    /// factors dropped.
    pub fn render_action(&self, eq: &ActionEquation) -> String {
        let (v, h) = &self.b.relations()[eq.relation];
        let power = |u: &Word| format!("a{}", self.superscript(u));
        let (lhs, rhs) = if self.b.is_forced(eq.relation) {
            (power(v), power(h))
        } else {
            let f = self.b.factor_name(eq.relation);
            (format!("{f} {}", power(v)), format!("{} {f}", power(h)))
        };
        normalize_equation(&lhs, &rhs)
    }

    /// Rendered composition equations, duplicates removed, in derivation
    /// order.
    pub fn equation_strings(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for e in &self.equations {
            let s = self.render_equation(e);
            if !out.contains(&s) {
                out.push(s);
            }
        }
        out
    }

    pub fn action_strings(&self) -> Vec<String> {
        self.action.iter().map(|e| self.render_action(e)).collect()
    }

    /// Value of a product of formal letters at concrete data.
    pub fn evaluate_product(&self, spec: &ExtensionSpec, ts: &[FactorTerm]) -> Elem {
        let a = spec.a();
        ts.iter().fold(a.identity(), |acc, t| {
            a.mul(acc, spec.act(spec.factor(t.relation), &t.sup))
        })
    }

    /// Every composition equation evaluated at `spec`.
    pub fn evaluate(&self, spec: &ExtensionSpec) -> Vec<EquationCheck> {
        self.equations
            .iter()
            .map(|e| EquationCheck {
                text: self.render_equation(e),
                lhs: self.evaluate_product(spec, &e.xi),
                rhs: self.evaluate_product(spec, &e.zeta),
            })
            .collect()
    }

    /// Human-readable failures of both condition families at `spec`.
    pub fn failures(&self, spec: &ExtensionSpec) -> Vec<String> {
        let a = spec.a();
        let mut out = Vec::new();
        for chk in self.evaluate(spec) {
            if chk.lhs != chk.rhs {
                out.push(format!(
                    "{} fails: ξ = {}, ζ = {}",
                    chk.text,
                    a.name(chk.lhs),
                    a.name(chk.rhs)
                ));
            }
        }
        for eq in &self.action {
            let (v, h) = &self.b.relations()[eq.relation];
            let f = spec.factor(eq.relation);
            if let Some(x) = a
                .elements()
                .find(|&x| a.mul(f, spec.act(x, v)) != a.mul(spec.act(x, h), f))
            {
                out.push(format!("{} fails at a = {}", self.render_action(eq), a.name(x)));
            }
        }
        out
    }

    /// Whether every derived condition holds at `spec`.
    pub fn holds(&self, spec: &ExtensionSpec) -> bool {
        self.failures(spec).is_empty()
    }
}
