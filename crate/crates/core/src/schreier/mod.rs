//! Schreier extensions of a finite group `A` by a group `B = sgp⟨Y | R⟩`
//! where `R = {v = h_v}` is a minimal Gröbner-Shirshov basis.
//!
//! The extension is presented by
//! `S = {a a' = [a a'], v = h_v·(v), a y = y a^y}` over `A₁ ∪ Y` with the
//! tower order. `S` is a Gröbner-Shirshov basis exactly when the extension
//! conditions hold, and then `Irr(S)` consists of the words `b·a` with
//! `b ∈ Irr(R)`, `a ∈ A`. Two independent routes decide this: certifying
//! `S` with the engine, and evaluating the symbolically derived conditions.

mod symbolic;

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::engine::{
    check_compositions, irr_enumerate, reduce, CompositionKind, EngineError, RewriteSystem,
    SystemStatus,
};
use crate::group::{
    cartesian, table_presentation, Automorphism, Elem, FiniteGroup, GroupError, TableExtension,
};
use crate::order::{OrderError, OrderSpec, Slot};
use crate::word::{Alphabet, Letter, LetterClass, Polynomial, Word, WordError};

pub use symbolic::{
    derive_conditions, normalize_equation, ActionEquation, DerivedConditions, DerivedEquation,
    EquationCheck, FactorTerm,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SchreierError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error("relation {0} has equal sides")]
    EqualSides(usize),
    #[error("presentation is not a Gröbner-Shirshov basis: composition at `{0}` leaves `{1}`")]
    NotGsb(String, String),
    #[error("presentation basis is not minimal: `{0}` contains `{1}`")]
    NotMinimal(String, String),
    #[error("the quotient presentation must use a deg-lex order")]
    QuotientOrder,
    #[error("expected {expected} {what}, got {got}")]
    Arity {
        what: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("factor of the inverse relation `{0}` must be the identity")]
    ForcedFactor(String),
    #[error("factor value #{0} is not an element of A")]
    FactorOutOfRange(usize),
    #[error("`{0}` names both an element of A and a letter of B")]
    LetterClash(String),
    #[error("no action given for letter #{0}")]
    UnmappedLetter(u32),
    #[error("the extension conditions fail; no group to build")]
    CheckFailed,
    #[error("the quotient has irreducible words of length {0}, so it is not finite within the bound")]
    InfiniteQuotient(usize),
    #[error("unexpected normal form `{0}`")]
    BadNormalForm(String),
    #[error("search space of {0} candidates exceeds the guard {1}")]
    GuardExceeded(u128, u128),
}

/// Longest normal form of `B` searched when building finite extension groups.
pub const QUOTIENT_LEN_BOUND: usize = 12;

/// `B = sgp⟨Y | R⟩` with `R = {v = h_v}` a certified minimal basis under
/// deg-lex. Relation `i` is rule `i` of the system.
#[derive(Clone, Debug)]
pub struct BPresentation {
    system: RewriteSystem,
    relations: Vec<(Word, Word)>,
    inverse: Vec<Option<Letter>>,
    aliases: Vec<Option<String>>,
    table: Option<(FiniteGroup, Vec<Elem>)>,
}

impl BPresentation {
    /// `relations` are pairs of equal words in either orientation;
    /// `inverses` declares formal inverse letters.
    pub fn new(
        alphabet: Alphabet,
        order: OrderSpec,
        relations: Vec<(Word, Word)>,
        inverses: Vec<(Letter, Letter)>,
        aliases: Vec<Option<String>>,
    ) -> Result<Self, SchreierError> {
        if order.deg_lex_ranks().is_none() {
            return Err(SchreierError::QuotientOrder);
        }
        if aliases.len() != relations.len() {
            return Err(SchreierError::Arity {
                what: "relation aliases",
                expected: relations.len(),
                got: aliases.len(),
            });
        }
        let mut polys = Vec::with_capacity(relations.len());
        for (i, (l, r)) in relations.iter().enumerate() {
            if l == r {
                return Err(SchreierError::EqualSides(i));
            }
            polys.push(Polynomial::binomial(l.clone(), r.clone()));
        }
        let mut system = RewriteSystem::new(alphabet.clone(), order, polys)?;
        let relations: Vec<(Word, Word)> = relations
            .into_iter()
            .zip(system.rules())
            .map(|((l, r), rule)| if rule.lead() == &l { (l, r) } else { (r, l) })
            .collect();
        for outcome in check_compositions(&system)? {
            if !outcome.trivial {
                return Err(SchreierError::NotGsb(
                    alphabet.render(&outcome.composition.w),
                    alphabet.render_poly(&outcome.remainder),
                ));
            }
        }
        for (i, (v, _)) in relations.iter().enumerate() {
            for (j, (u, _)) in relations.iter().enumerate() {
                if i != j && v.contains_subword(u) {
                    return Err(SchreierError::NotMinimal(alphabet.render(v), alphabet.render(u)));
                }
            }
        }
        system.set_status(SystemStatus::CertifiedGsb);
        system.mark_minimal();
        let mut inverse = vec![None; alphabet.len()];
        for (x, y) in inverses {
            alphabet.check_word(&Word::new(vec![x, y]))?;
            inverse[x.index()] = Some(y);
            inverse[y.index()] = Some(x);
        }
        Ok(BPresentation {
            system,
            relations,
            inverse,
            aliases,
            table: None,
        })
    }

    /// `⟨x | xⁿ = 1⟩` with the single factor named `a0`.
    pub fn cyclic(n: usize, letter: &str) -> Result<Self, SchreierError> {
        let alphabet = Alphabet::uniform([letter], LetterClass::Y)?;
        let x = Word::from_ids(&vec![0; n]);
        Self::new(
            alphabet,
            OrderSpec::deg_lex(1),
            vec![(x, Word::empty())],
            vec![],
            vec![Some("a0".to_string())],
        )
    }

    /// The free abelian group on `x1 … xk` with inverse letters `X1 … Xk`,
    /// ordered `X1 < x1 < X2 < x2 < …` and presented by
    /// `x_p^ε x_q^δ = x_q^δ x_p^ε` (`p > q`) and `x_q^ε x_q^{-ε} = 1`.
    pub fn free_abelian(k: usize) -> Result<Self, SchreierError> {
        let mut alphabet = Alphabet::new();
        let mut ranks = Vec::new();
        for i in 1..=k {
            alphabet.push(&format!("x{i}"), LetterClass::Y)?;
            alphabet.push(&format!("X{i}"), LetterClass::Y)?;
            ranks.push(2 * (i as u32 - 1) + 1);
            ranks.push(2 * (i as u32 - 1));
        }
        let gen = |i: usize, e: i8| Letter((2 * (i - 1) + usize::from(e < 0)) as u32);
        let signs = [1i8, -1];
        let mut relations = Vec::new();
        for p in 1..=k {
            for q in 1..p {
                for &e in &signs {
                    for &d in &signs {
                        relations.push((
                            Word::new(vec![gen(p, e), gen(q, d)]),
                            Word::new(vec![gen(q, d), gen(p, e)]),
                        ));
                    }
                }
            }
        }
        for q in 1..=k {
            for &e in &signs {
                relations.push((Word::new(vec![gen(q, e), gen(q, -e)]), Word::empty()));
            }
        }
        let inverses = (1..=k).map(|i| (gen(i, 1), gen(i, -1))).collect();
        let n = relations.len();
        Self::new(
            alphabet,
            OrderSpec::deg_lex_ranked(ranks)?,
            relations,
            inverses,
            vec![None; n],
        )
    }

    /// The multiplication-table presentation `{b b' = [b b']}` over
    /// `B₁ = B \ {1}`. Letters follow `ranking` (table order by default),
    /// relations are row-major pairs.
    pub fn from_table(group: &FiniteGroup, ranking: Option<&[Elem]>) -> Result<Self, SchreierError> {
        let tp = table_presentation(group, ranking)?;
        let letter = |e: Elem| tp.letter_of(e).map(|i| Letter(i as u32));
        let relations = tp
            .pairs
            .iter()
            .map(|&(x, y)| {
                let lhs = Word::new(vec![letter(x).unwrap(), letter(y).unwrap()]);
                let rhs = letter(group.mul(x, y)).map(Word::single).unwrap_or_default();
                (lhs, rhs)
            })
            .collect::<Vec<_>>();
        let inverses = tp
            .letter_elems
            .iter()
            .map(|&e| (letter(e).unwrap(), letter(group.inv(e)).unwrap()))
            .collect();
        let n = relations.len();
        let ranks = (0..tp.alphabet.len() as u32).collect();
        let mut b = Self::new(
            tp.alphabet.clone(),
            OrderSpec::deg_lex_ranked(ranks)?,
            relations,
            inverses,
            vec![None; n],
        )?;
        b.table = Some((group.clone(), tp.letter_elems));
        Ok(b)
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.system.alphabet()
    }

    pub fn system(&self) -> &RewriteSystem {
        &self.system
    }

    /// `(v, h_v)` per relation, `v` the leading word.
    pub fn relations(&self) -> &[(Word, Word)] {
        &self.relations
    }

    pub fn num_relations(&self) -> usize {
        self.relations.len()
    }

    pub fn inverse_of(&self, l: Letter) -> Option<Letter> {
        self.inverse[l.index()]
    }

    /// The factor of relation `i` is forced to 1 when the relation reads
    /// `y y' = 1` for distinct formal inverses `y`, `y'`.
    pub fn is_forced(&self, i: usize) -> bool {
        let (v, h) = &self.relations[i];
        h.is_empty()
            && v.len() == 2
            && v.letters()[0] != v.letters()[1]
            && self.inverse_of(v.letters()[0]) == Some(v.letters()[1])
    }

    pub fn alias(&self, i: usize) -> Option<&str> {
        self.aliases[i].as_deref()
    }

    pub fn set_alias(&mut self, i: usize, alias: Option<String>) {
        self.aliases[i] = alias;
    }

    /// Display name of the factor `(v)`: its alias, or `(y₁,…,y_k)`.
    pub fn factor_name(&self, i: usize) -> String {
        match &self.aliases[i] {
            Some(a) => a.clone(),
            None => {
                let names: Vec<&str> = self.relations[i]
                    .0
                    .letters()
                    .iter()
                    .map(|l| self.alphabet().name(*l))
                    .collect();
                format!("({})", names.join(","))
            }
        }
    }

    /// The group and letter-to-element map when built from a table.
    pub fn table(&self) -> Option<(&FiniteGroup, &[Elem])> {
        self.table.as_ref().map(|(g, m)| (g, m.as_slice()))
    }

    /// `Irr(R)`, provided every irreducible word is shorter than `bound`.
    pub fn finite_elements(&self, bound: usize) -> Result<Vec<Word>, SchreierError> {
        let irr = irr_enumerate(&self.system, bound);
        if irr.iter().any(|w| w.len() == bound) {
            return Err(SchreierError::InfiniteQuotient(bound));
        }
        Ok(irr)
    }

    /// `R`-normal form of a word over `Y`.
    pub fn normal_form(&self, w: &Word) -> Result<Word, SchreierError> {
        let nf = reduce(&Polynomial::monomial(w.clone()), &self.system)?.remainder;
        single_word(&nf).ok_or_else(|| SchreierError::BadNormalForm(self.alphabet().render_poly(&nf)))
    }
}

fn single_word(p: &Polynomial) -> Option<Word> {
    let mut terms = p.terms();
    let (w, c) = terms.next()?;
    (terms.next().is_none() && *c == crate::word::scalar(1)).then(|| w.clone())
}

/// Concrete extension data: an automorphism `ψ_y` per letter of `B` and a
/// factor `(v) ∈ A` per relation.
#[derive(Clone, Debug)]
pub struct ExtensionSpec {
    a: FiniteGroup,
    b: BPresentation,
    action: Vec<Automorphism>,
    factors: Vec<Elem>,
}

impl ExtensionSpec {
    pub fn new(
        a: FiniteGroup,
        b: BPresentation,
        action: Vec<Automorphism>,
        factors: Vec<Elem>,
    ) -> Result<Self, SchreierError> {
        if action.len() != b.alphabet().len() {
            return Err(SchreierError::Arity {
                what: "automorphisms",
                expected: b.alphabet().len(),
                got: action.len(),
            });
        }
        if factors.len() != b.num_relations() {
            return Err(SchreierError::Arity {
                what: "factor values",
                expected: b.num_relations(),
                got: factors.len(),
            });
        }
        for psi in &action {
            Automorphism::new(&a, psi.map().to_vec())?;
        }
        for (i, &f) in factors.iter().enumerate() {
            if f >= a.order() {
                return Err(SchreierError::FactorOutOfRange(i));
            }
            if b.is_forced(i) && f != a.identity() {
                return Err(SchreierError::ForcedFactor(b.alphabet().render(&b.relations()[i].0)));
            }
        }
        Ok(ExtensionSpec { a, b, action, factors })
    }

    /// Trivial action and trivial factor set: the direct product `A × B`.
    pub fn trivial(a: FiniteGroup, b: BPresentation) -> Self {
        let action = vec![Automorphism::identity(&a); b.alphabet().len()];
        let factors = vec![a.identity(); b.num_relations()];
        ExtensionSpec { a, b, action, factors }
    }

    pub fn a(&self) -> &FiniteGroup {
        &self.a
    }

    pub fn b(&self) -> &BPresentation {
        &self.b
    }

    pub fn action(&self) -> &[Automorphism] {
        &self.action
    }

    pub fn factors(&self) -> &[Elem] {
        &self.factors
    }

    pub fn factor(&self, relation: usize) -> Elem {
        self.factors[relation]
    }

    /// `x^u`, applying `ψ_{y₁}` first.
    pub fn act(&self, x: Elem, u: &Word) -> Elem {
        u.letters().iter().fold(x, |acc, l| self.action[l.index()].apply(acc))
    }
}

/// `a^u` for `u = y₁ ⋯ y_r`: `ψ_{y₁}` first, then `ψ_{y₂}`, and so on.
pub fn action_on_word(spec: &ExtensionSpec, a: Elem, u: &Word) -> Result<Elem, SchreierError> {
    if let Some(l) = u.letters().iter().find(|l| l.index() >= spec.action.len()) {
        return Err(SchreierError::UnmappedLetter(l.0));
    }
    Ok(spec.act(a, u))
}

/// `S` over `A₁ ∪ Y` with the tower order, plus the letter bookkeeping.
#[derive(Clone, Debug)]
pub struct ExtensionSystem {
    pub system: RewriteSystem,
    a_letter: Vec<Option<Letter>>,
    a_of_letter: Vec<Option<Elem>>,
    a_identity: Elem,
    y_offset: u32,
}

impl ExtensionSystem {
    pub fn a_word(&self, a: Elem) -> Word {
        self.a_letter[a].map(Word::single).unwrap_or_default()
    }

    /// A word over `B`'s alphabet as a word over `A₁ ∪ Y`.
    pub fn lift(&self, w: &Word) -> Word {
        w.letters().iter().map(|l| Letter(l.0 + self.y_offset)).collect()
    }

    /// Splits a normal form `b·a` into `b` (over `B`'s alphabet) and `a`.
    pub fn split_normal_form(&self, w: &Word) -> Option<(Word, Elem)> {
        let letters = w.letters();
        let ys = letters.iter().take_while(|l| l.0 >= self.y_offset).count();
        let b: Word = letters[..ys].iter().map(|l| Letter(l.0 - self.y_offset)).collect();
        match &letters[ys..] {
            [] => Some((b, self.a_identity)),
            [l] => self.a_of_letter[l.index()].map(|a| (b, a)),
            _ => None,
        }
    }
}

/// Builds `S = {a a' = [a a'], v = h_v·(v), a y = y a^y}`.
pub fn build_extension_system(spec: &ExtensionSpec) -> Result<ExtensionSystem, SchreierError> {
    let a = &spec.a;
    let b = &spec.b;
    let mut alphabet = Alphabet::new();
    let mut a_letter = vec![None; a.order()];
    let mut slots = Vec::new();
    for (rank, e) in a.non_identity().into_iter().enumerate() {
        a_letter[e] = Some(alphabet.push(a.name(e), LetterClass::A)?);
        slots.push(Slot::A(rank as u32));
    }
    let y_offset = alphabet.len() as u32;
    let ranks = b.system.order().deg_lex_ranks().ok_or(SchreierError::QuotientOrder)?;
    for l in b.alphabet().letters() {
        let name = b.alphabet().name(l);
        alphabet
            .push(name, LetterClass::Y)
            .map_err(|_| SchreierError::LetterClash(name.to_string()))?;
        slots.push(Slot::Y(ranks[l.index()]));
    }
    let mut a_of_letter = vec![None; alphabet.len()];
    for (e, l) in a_letter.iter().enumerate() {
        if let Some(l) = l {
            a_of_letter[l.index()] = Some(e);
        }
    }
    let es = ExtensionSystem {
        system: RewriteSystem::new(alphabet.clone(), OrderSpec::deg_lex(0), vec![])?,
        a_letter,
        a_of_letter,
        a_identity: a.identity(),
        y_offset,
    };
    let mut polys = Vec::new();
    for x in a.non_identity() {
        for y in a.non_identity() {
            polys.push((
                Polynomial::binomial(es.a_word(x).concat(&es.a_word(y)), es.a_word(a.mul(x, y))),
                None,
            ));
        }
    }
    for (i, (v, h)) in b.relations().iter().enumerate() {
        polys.push((
            Polynomial::binomial(es.lift(v), es.lift(h).concat(&es.a_word(spec.factors[i]))),
            Some(b.factor_name(i)),
        ));
    }
    for x in a.non_identity() {
        for y in b.alphabet().letters() {
            let yw = es.lift(&Word::single(y));
            polys.push((
                Polynomial::binomial(es.a_word(x).concat(&yw), yw.concat(&es.a_word(spec.act(x, &Word::single(y))))),
                None,
            ));
        }
    }
    let order = OrderSpec::tower(slots)?;
    let system = RewriteSystem::new_labeled(alphabet, order, polys)?;
    Ok(ExtensionSystem { system, ..es })
}

/// One instance of `(v) a^v = a^{h_v} (v)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionCheck {
    pub relation: usize,
    pub a: Elem,
    pub lhs: Elem,
    pub rhs: Elem,
}

impl ActionCheck {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Evaluates `(v) a^v` and `a^{h_v} (v)` for every relation and every `a`.
pub fn check_action_condition(spec: &ExtensionSpec) -> Vec<ActionCheck> {
    let mut out = Vec::new();
    for (i, (v, h)) in spec.b.relations().iter().enumerate() {
        let f = spec.factors[i];
        for x in spec.a.elements() {
            out.push(ActionCheck {
                relation: i,
                a: x,
                lhs: spec.a.mul(f, spec.act(x, v)),
                rhs: spec.a.mul(spec.act(x, h), f),
            });
        }
    }
    out
}

/// A composition of `S` and the outcome of reducing it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompositionCheck {
    pub kind: CompositionKind,
    pub w: String,
    pub f: String,
    pub g: String,
    pub remainder: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConditionReport {
    pub action_checked: usize,
    pub action_failures: Vec<ActionCheck>,
    pub compositions_checked: usize,
    /// Nontrivial compositions of `S`.
    pub composition_failures: Vec<CompositionCheck>,
    /// Verdict of the derived conditions evaluated at the data, when run.
    pub derived_passed: Option<bool>,
    pub derived_failures: Vec<String>,
    /// Whether `S` is a Gröbner-Shirshov basis and the action condition holds.
    pub passed: bool,
}

impl ConditionReport {
    /// Whether the derived conditions, when evaluated, agree with the
    /// engine's verdict.
    pub fn routes_agree(&self) -> bool {
        self.derived_passed.is_none_or(|d| d == self.passed)
    }
}

/// Runs the action condition and certifies every composition of `S`; also
/// evaluates the derived conditions when `derived` is supplied.
pub fn check_extension_with(
    spec: &ExtensionSpec,
    derived: Option<&DerivedConditions>,
) -> Result<ConditionReport, SchreierError> {
    let actions = check_action_condition(spec);
    let action_checked = actions.len();
    let action_failures: Vec<ActionCheck> = actions.into_iter().filter(|c| !c.holds()).collect();
    let es = build_extension_system(spec)?;
    let outcomes = check_compositions(&es.system)?;
    let compositions_checked = outcomes.len();
    let al = es.system.alphabet();
    let composition_failures: Vec<CompositionCheck> = outcomes
        .into_iter()
        .filter(|o| !o.trivial)
        .map(|o| CompositionCheck {
            kind: o.composition.kind,
            w: al.render(&o.composition.w),
            f: es.system.render_rule(o.composition.f),
            g: es.system.render_rule(o.composition.g),
            remainder: al.render_poly(&o.remainder),
        })
        .collect();
    let (derived_passed, derived_failures) = match derived {
        Some(d) => {
            let fails = d.failures(spec);
            (Some(fails.is_empty()), fails)
        }
        None => (None, Vec::new()),
    };
    Ok(ConditionReport {
        action_checked,
        passed: action_failures.is_empty() && composition_failures.is_empty(),
        action_failures,
        compositions_checked,
        composition_failures,
        derived_passed,
        derived_failures,
    })
}

/// [`check_extension_with`] with freshly derived conditions.
pub fn check_extension(spec: &ExtensionSpec) -> Result<ConditionReport, SchreierError> {
    let derived = derive_conditions(&spec.b)?;
    check_extension_with(spec, Some(&derived))
}

/// The extension group on normal forms `b·a`, with the maps tying it to
/// `A` and `B`.
#[derive(Clone, Debug)]
pub struct ExtensionGroup {
    pub group: FiniteGroup,
    /// `(b, a)` per element of `group`.
    pub pairs: Vec<(Word, Elem)>,
    /// `Irr(R)`, indexed as in `quotient_group`.
    pub quotient: Vec<Word>,
    pub quotient_group: FiniteGroup,
    /// Element of `group` for `(1, a)`.
    pub a_image: Vec<Elem>,
    /// Index in `quotient` of each element's `b`.
    pub projection: Vec<usize>,
    a: FiniteGroup,
    b_table: Option<FiniteGroup>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureReport {
    pub order: usize,
    pub expected_order: usize,
    pub a_embedding_homomorphic: bool,
    pub a_normal: bool,
    pub projection_homomorphic: bool,
    pub kernel_is_a: bool,
    /// Compared with `B`'s own table when it has one.
    pub quotient_isomorphic_to_b: Option<bool>,
}

impl StructureReport {
    pub fn passed(&self) -> bool {
        self.order == self.expected_order
            && self.a_embedding_homomorphic
            && self.a_normal
            && self.projection_homomorphic
            && self.kernel_is_a
            && self.quotient_isomorphic_to_b != Some(false)
    }
}

impl ExtensionGroup {
    /// Normality by exhaustive conjugation, the projection onto the
    /// quotient, and the quotient's isomorphism type.
    pub fn structure(&self) -> StructureReport {
        let g = &self.group;
        let in_a: Vec<bool> = {
            let mut v = vec![false; g.order()];
            for &x in &self.a_image {
                v[x] = true;
            }
            v
        };
        let a = &self.a;
        let img = &self.a_image;
        let a_embedding_homomorphic = a
            .elements()
            .all(|x| a.elements().all(|y| g.mul(img[x], img[y]) == img[a.mul(x, y)]));
        let a_normal = g.elements().all(|x| {
            self.a_image
                .iter()
                .all(|&k| in_a[g.mul(g.mul(x, k), g.inv(x))])
        });
        let q = &self.quotient_group;
        let projection_homomorphic = g.elements().all(|x| {
            g.elements()
                .all(|y| self.projection[g.mul(x, y)] == q.mul(self.projection[x], self.projection[y]))
        });
        let kernel_is_a = g
            .elements()
            .all(|x| (self.projection[x] == q.identity()) == in_a[x]);
        StructureReport {
            order: g.order(),
            expected_order: self.a.order() * self.quotient.len(),
            a_embedding_homomorphic,
            a_normal,
            projection_homomorphic,
            kernel_is_a,
            quotient_isomorphic_to_b: self.b_table.as_ref().map(|b| q.is_isomorphic(b)),
        }
    }
}

/// Builds the extension group on `Irr(S) = {b·a}` by reducing products.
/// Requires the engine route of [`check_extension_with`] to pass and `B`
/// to be finite.
pub fn extension_group(spec: &ExtensionSpec) -> Result<ExtensionGroup, SchreierError> {
    if !check_extension_with(spec, None)?.passed {
        return Err(SchreierError::CheckFailed);
    }
    let es = build_extension_system(spec)?;
    let a = &spec.a;
    let quotient = spec.b.finite_elements(QUOTIENT_LEN_BOUND)?;
    let q_index: HashMap<Word, usize> = quotient.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
    let n_a = a.order();
    let pairs: Vec<(Word, Elem)> = quotient
        .iter()
        .flat_map(|b| a.elements().map(move |x| (b.clone(), x)))
        .collect();
    let word_of = |(b, x): &(Word, Elem)| es.lift(b).concat(&es.a_word(*x));
    let al = es.system.alphabet();
    let mut table = vec![vec![0; pairs.len()]; pairs.len()];
    for (i, p) in pairs.iter().enumerate() {
        for (j, r) in pairs.iter().enumerate() {
            let prod = word_of(p).concat(&word_of(r));
            let nf = reduce(&Polynomial::monomial(prod), &es.system)?.remainder;
            let w = single_word(&nf).ok_or_else(|| SchreierError::BadNormalForm(al.render_poly(&nf)))?;
            let (b, x) = es
                .split_normal_form(&w)
                .ok_or_else(|| SchreierError::BadNormalForm(al.render(&w)))?;
            let bi = *q_index
                .get(&b)
                .ok_or_else(|| SchreierError::BadNormalForm(al.render(&w)))?;
            table[i][j] = bi * n_a + x;
        }
    }
    let bal = spec.b.alphabet();
    let names: Vec<String> = pairs
        .iter()
        .map(|(b, x)| match (b.is_empty(), *x == a.identity()) {
            (true, true) => "1".to_string(),
            (true, false) => a.name(*x).to_string(),
            (false, true) => bal.render(b),
            (false, false) => format!("{} {}", bal.render(b), a.name(*x)),
        })
        .collect();
    let group = FiniteGroup::from_table(names, table)?;
    let mut q_table = vec![vec![0; quotient.len()]; quotient.len()];
    for (i, u) in quotient.iter().enumerate() {
        for (j, v) in quotient.iter().enumerate() {
            let nf = spec.b.normal_form(&u.concat(v))?;
            q_table[i][j] = q_index[&nf];
        }
    }
    let quotient_group = FiniteGroup::from_table(quotient.iter().map(|w| bal.render(w)).collect(), q_table)?;
    // quotient[0] is the empty word, so (1, x) sits at index x
    debug_assert!(quotient[0].is_empty());
    let a_image = a.elements().collect();
    let projection = pairs.iter().map(|(b, _)| q_index[b]).collect();
    Ok(ExtensionGroup {
        group,
        pairs,
        quotient,
        quotient_group,
        a_image,
        projection,
        a: a.clone(),
        b_table: spec.b.table().map(|(g, _)| g.clone()),
    })
}

/// One passing choice of action and factor set.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ExtensionCandidate {
    pub action: Vec<Automorphism>,
    pub factors: Vec<Elem>,
}

impl ExtensionCandidate {
    /// Same data indexed as a table extension (valid for table-presented `B`
    /// built in table order).
    pub fn to_table_extension(&self) -> TableExtension {
        TableExtension {
            action: self.action.clone(),
            factors: self.factors.clone(),
        }
    }

    pub fn to_spec(&self, a: &FiniteGroup, b: &BPresentation) -> Result<ExtensionSpec, SchreierError> {
        ExtensionSpec::new(a.clone(), b.clone(), self.action.clone(), self.factors.clone())
    }
}

/// Every action `Y → Aut(A)` and factor set (forced entries held at 1) for
/// which `S` is a Gröbner-Shirshov basis, sorted.
pub fn enumerate_extensions(
    a: &FiniteGroup,
    b: &BPresentation,
    guard: u128,
) -> Result<Vec<ExtensionCandidate>, SchreierError> {
    let auts = a.automorphisms()?;
    let n_letters = b.alphabet().len();
    let free: Vec<usize> = (0..b.num_relations()).filter(|&i| !b.is_forced(i)).collect();
    let space = (auts.len() as u128)
        .checked_pow(n_letters as u32)
        .and_then(|s| s.checked_mul((a.order() as u128).checked_pow(free.len() as u32)?))
        .unwrap_or(u128::MAX);
    if space > guard {
        return Err(SchreierError::GuardExceeded(space, guard));
    }
    let actions = cartesian(auts.len(), n_letters);
    let factor_choices = cartesian(a.order(), free.len());
    let jobs: Vec<(&Vec<usize>, &Vec<usize>)> = actions
        .iter()
        .flat_map(|x| factor_choices.iter().map(move |f| (x, f)))
        .collect();
    let results: Vec<Option<ExtensionCandidate>> = jobs
        .par_iter()
        .map(|(act_idx, choice)| {
            let action: Vec<Automorphism> = act_idx.iter().map(|&i| auts[i].clone()).collect();
            let mut factors = vec![a.identity(); b.num_relations()];
            for (slot, &value) in free.iter().zip(choice.iter()) {
                factors[*slot] = value;
            }
            let spec = ExtensionSpec::new(a.clone(), b.clone(), action.clone(), factors.clone())?;
            if !check_action_condition(&spec).iter().all(ActionCheck::holds) {
                return Ok(None);
            }
            let passed = check_extension_with(&spec, None)?.passed;
            Ok(passed.then_some(ExtensionCandidate { action, factors }))
        })
        .collect::<Result<_, SchreierError>>()?;
    let mut out: Vec<ExtensionCandidate> = results.into_iter().flatten().collect();
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests;
