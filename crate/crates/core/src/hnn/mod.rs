//! Schreier extensions of a finite group `A` by an HNN extension
//! `B = gp⟨H, t | t⁻¹ c t = φ(c), c ∈ C⟩` of a finite group `H`.
//!
//! `B` is presented over `H₁ ∪ {t, T}` (with `T` standing for `t⁻¹`) by
//! `hh' = [hh']`, `ht = h_C t φ(c_h)`, `hT = h_D T φ⁻¹(d_h)` and
//! `tT = Tt = 1`, where `h = h_C c_h = h_D d_h` splits `h` along the chosen
//! coset representatives of `C` and `D`. The extension system decorates
//! these relations with factor values and adds `aa' = [aa']`, `ay = y a^y`.
//! The order is the non-monomial HNN order, so certification goes through
//! the sampled conditions (I) and (II) of the engine, cross-checked against
//! the exact evaluation of the extension conditions in [`check_h_conditions`].
//!
//! A relation `ht = h_C t φ(c_h)` with `h` a representative of its own
//! coset would read `ht = ht`; it is omitted, and the matching factor
//! `(h, t)` is forced to `1` (likewise for `T` and `D`).

mod conditions;
mod model;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::engine::{
    check_condition_I, check_condition_II, find_compositions, ConditionIIReport, ConditionIReport,
    EngineError, RewriteSystem, DEFAULT_MAX_CONTEXT_LEN, DEFAULT_SAMPLES,
};
use crate::group::{Automorphism, Elem, FiniteGroup, GroupError, PartialIso, SubgroupWithCosets};
use crate::order::{HnnOrderData, OrderError, OrderSpec, Slot};
use crate::word::{Alphabet, Letter, LetterClass, Polynomial, Word, WordError};

pub use conditions::{check_h_conditions, HConditionReport, HFailure, HFamily, HFamilyReport};
pub use model::{
    hnn_normal_forms, model_ball_size, DirectProductModel, FreeProductModel, HnnModel,
    NormalFormReport, Syllable,
};

/// Name of the stable letter.
pub const STABLE: &str = "t";
/// Name of the inverse of the stable letter.
pub const STABLE_INV: &str = "T";
/// Default bound on `contexts × compositions` for the sampled checks.
pub const DEFAULT_SAMPLING_GUARD: u128 = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HnnError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error("φ must map every element of C into D")]
    BadIsomorphism,
    #[error("the ordering of H₁ must list every non-identity element once")]
    BadOmega,
    #[error("`{0}` is used by more than one letter")]
    LetterClash(String),
    #[error("expected {expected} {what}, got {got}")]
    Arity {
        what: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("factor `{0}` is forced to be the identity")]
    ForcedFactor(String),
    #[error("factor `{0}` is not an element of A")]
    FactorOutOfRange(String),
    #[error("the identity of H must act trivially")]
    IdentityAction,
    #[error("rule `{0}` is not oriented by the HNN order")]
    Orientation(String),
    #[error("sampled checks need {0} context evaluations, above the guard {1}")]
    SamplingGuard(u128, u128),
    #[error("the extension conditions fail; normal forms are not certified")]
    ConditionsFail,
    #[error("normal forms `{0}` and `{1}` evaluate to the same model element")]
    ModelCollision(String, String),
}

/// A letter of the HNN extension system by role.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum HnnLetter {
    A(Elem),
    H(Elem),
    T,
    TInv,
}

/// A generator of `B` acting on `A`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gen {
    H(Elem),
    T,
    TInv,
}

/// `H`, the subgroups `C` and `D` with their representatives (listed in
/// the order `I`, `J`), `φ: C → D`, and the order `Ω` on `H₁`.
#[derive(Clone, Debug)]
pub struct HnnSpec {
    h: FiniteGroup,
    c: SubgroupWithCosets,
    d: SubgroupWithCosets,
    phi: PartialIso,
    omega: Vec<Elem>,
}

impl HnnSpec {
    /// `omega` lists `H₁` from smallest to largest; `None` uses table order.
    pub fn new(
        h: FiniteGroup,
        c: SubgroupWithCosets,
        d: SubgroupWithCosets,
        phi: PartialIso,
        omega: Option<Vec<Elem>>,
    ) -> Result<Self, HnnError> {
        let pairs = phi.pairs();
        let mut image: Vec<Elem> = pairs.iter().map(|p| p.1).collect();
        image.sort_unstable();
        if pairs.iter().map(|p| p.0).collect::<Vec<_>>() != c.members() || image != d.members() {
            return Err(HnnError::BadIsomorphism);
        }
        let omega = omega.unwrap_or_else(|| h.non_identity());
        let mut sorted = omega.clone();
        sorted.sort_unstable();
        if sorted != h.non_identity() {
            return Err(HnnError::BadOmega);
        }
        Ok(HnnSpec { h, c, d, phi, omega })
    }

    /// `C = D = H` with `φ = id`: `B ≅ H × Z`.
    pub fn central(h: FiniteGroup) -> Self {
        let c = SubgroupWithCosets::whole(&h);
        let phi = PartialIso::identity_on(&h, &c);
        HnnSpec::new(h, c.clone(), c, phi, None).expect("identity data is valid")
    }

    /// `C = D = {1}`: `B ≅ H * Z`.
    pub fn free(h: FiniteGroup) -> Self {
        let c = SubgroupWithCosets::trivial(&h);
        let phi = PartialIso::identity_on(&h, &c);
        HnnSpec::new(h, c.clone(), c, phi, None).expect("trivial data is valid")
    }

    pub fn h(&self) -> &FiniteGroup {
        &self.h
    }

    pub fn c(&self) -> &SubgroupWithCosets {
        &self.c
    }

    pub fn d(&self) -> &SubgroupWithCosets {
        &self.d
    }

    pub fn phi(&self) -> &PartialIso {
        &self.phi
    }

    pub fn omega(&self) -> &[Elem] {
        &self.omega
    }

    /// `(h_C, c_h)`.
    pub fn split_c(&self, h: Elem) -> (Elem, Elem) {
        self.c.decompose(h)
    }

    /// `(h_D, d_h)`.
    pub fn split_d(&self, h: Elem) -> (Elem, Elem) {
        self.d.decompose(h)
    }

    /// Whether `ht = h_C t φ(c_h)` is a genuine relation (`h ∈ H₁` and not a
    /// representative of its `C`-coset).
    pub fn has_t_rule(&self, h: Elem) -> bool {
        h != self.h.identity() && !self.c.is_rep(h)
    }

    /// Whether `hT = h_D T φ⁻¹(d_h)` is a genuine relation.
    pub fn has_t_inv_rule(&self, h: Elem) -> bool {
        h != self.h.identity() && !self.d.is_rep(h)
    }
}

/// Letter bookkeeping shared by the presentation of `B` and the extension
/// system.
#[derive(Clone, Debug)]
struct Letters {
    alphabet: Alphabet,
    slots: Vec<Slot>,
    roles: Vec<HnnLetter>,
    a_letter: Vec<Option<Letter>>,
    h_letter: Vec<Option<Letter>>,
    t: Letter,
    t_inv: Letter,
}

impl Letters {
    fn new(a: Option<&FiniteGroup>, spec: &HnnSpec) -> Result<Self, HnnError> {
        let mut alphabet = Alphabet::new();
        let mut slots = Vec::new();
        let mut roles = Vec::new();
        let mut push = |alphabet: &mut Alphabet, name: &str, class, slot, role| {
            roles.push(role);
            slots.push(slot);
            alphabet
                .push(name, class)
                .map_err(|_| HnnError::LetterClash(name.to_string()))
        };
        let mut a_letter = vec![None; a.map_or(0, FiniteGroup::order)];
        if let Some(a) = a {
            for (rank, e) in a.non_identity().into_iter().enumerate() {
                a_letter[e] = Some(push(&mut alphabet, a.name(e), LetterClass::A, Slot::A(rank as u32), HnnLetter::A(e))?);
            }
        }
        let mut h_letter = vec![None; spec.h.order()];
        for &e in &spec.omega {
            h_letter[e] = Some(push(&mut alphabet, spec.h.name(e), LetterClass::H, Slot::H(e), HnnLetter::H(e))?);
        }
        let t = push(&mut alphabet, STABLE, LetterClass::T, Slot::T, HnnLetter::T)?;
        let t_inv = push(&mut alphabet, STABLE_INV, LetterClass::TInv, Slot::TInv, HnnLetter::TInv)?;
        Ok(Letters {
            alphabet,
            slots,
            roles,
            a_letter,
            h_letter,
            t,
            t_inv,
        })
    }

    fn order(&self, spec: &HnnSpec) -> Result<OrderSpec, HnnError> {
        let data = HnnOrderData::new(self.slots.clone(), &spec.h, &spec.omega, &spec.c, &spec.d)?;
        Ok(OrderSpec::hnn(data))
    }

    fn a(&self, e: Elem) -> Word {
        self.a_letter.get(e).copied().flatten().map(Word::single).unwrap_or_default()
    }

    fn h(&self, e: Elem) -> Word {
        self.h_letter[e].map(Word::single).unwrap_or_default()
    }

    fn stable(&self, inverse: bool) -> Word {
        Word::single(if inverse { self.t_inv } else { self.t })
    }

    fn cat(parts: &[&Word]) -> Word {
        parts.iter().fold(Word::empty(), |acc, w| acc.concat(w))
    }
}

/// Builds the system from `(lhs, rhs)` pairs and checks that every pair is
/// oriented `lhs ≻ rhs`.
fn oriented_system(letters: &Letters, spec: &HnnSpec, pairs: Vec<(Word, Word)>) -> Result<RewriteSystem, HnnError> {
    let order = letters.order(spec)?;
    for (l, r) in &pairs {
        if !order.greater(l, r) {
            let al = &letters.alphabet;
            return Err(HnnError::Orientation(format!("{} -> {}", al.render(l), al.render(r))));
        }
    }
    let polys = pairs.into_iter().map(|(l, r)| Polynomial::binomial(l, r)).collect();
    Ok(RewriteSystem::new(letters.alphabet.clone(), order, polys)?)
}

/// `R = {hh' = [hh'], ht = h_C t φ(c_h), hT = h_D T φ⁻¹(d_h), tT = Tt = 1}`
/// over `H₁ ∪ {t, T}` under the HNN order, degenerate relations omitted.
pub fn hnn_presentation(spec: &HnnSpec) -> Result<RewriteSystem, HnnError> {
    let letters = Letters::new(None, spec)?;
    let no_factor = |_: &str| Word::empty();
    let pairs = relation_pairs(&letters, spec, &no_factor);
    oriented_system(&letters, spec, pairs)
}

/// The relations of `B` in rule order, each decorated on the right by
/// `factor(name)` where `name` identifies the relation's factor.
fn relation_pairs(letters: &Letters, spec: &HnnSpec, factor: &dyn Fn(&str) -> Word) -> Vec<(Word, Word)> {
    let h = &spec.h;
    let mut pairs = Vec::new();
    for &x in &spec.omega {
        for &y in &spec.omega {
            pairs.push((
                Letters::cat(&[&letters.h(x), &letters.h(y)]),
                Letters::cat(&[&letters.h(h.mul(x, y)), &factor(&factor_name_hh(h, x, y))]),
            ));
        }
    }
    for inverse in [false, true] {
        for &x in &spec.omega {
            let (rep, m, image) = if inverse {
                if !spec.has_t_inv_rule(x) {
                    continue;
                }
                let (rep, m) = spec.split_d(x);
                (rep, m, spec.phi.apply_inverse(m))
            } else {
                if !spec.has_t_rule(x) {
                    continue;
                }
                let (rep, m) = spec.split_c(x);
                (rep, m, spec.phi.apply(m))
            };
            debug_assert!(m != h.identity());
            pairs.push((
                Letters::cat(&[&letters.h(x), &letters.stable(inverse)]),
                Letters::cat(&[
                    &letters.h(rep),
                    &letters.stable(inverse),
                    &letters.h(image),
                    &factor(&factor_name_t(h, x, inverse)),
                ]),
            ));
        }
    }
    pairs.push((Letters::cat(&[&letters.stable(false), &letters.stable(true)]), Word::empty()));
    pairs.push((Letters::cat(&[&letters.stable(true), &letters.stable(false)]), Word::empty()));
    pairs
}

fn factor_name_hh(h: &FiniteGroup, x: Elem, y: Elem) -> String {
    format!("({},{})", h.name(x), h.name(y))
}

fn factor_name_t(h: &FiniteGroup, x: Elem, inverse: bool) -> String {
    format!("({},{})", h.name(x), if inverse { STABLE_INV } else { STABLE })
}

/// Automorphisms `ψ_h` (indexed by the elements of `H`, identity at `1`),
/// `ψ_t` and `ψ_T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HnnAction {
    pub h: Vec<Automorphism>,
    pub t: Automorphism,
    pub t_inv: Automorphism,
}

impl HnnAction {
    pub fn trivial(a: &FiniteGroup, h_order: usize) -> Self {
        let id = Automorphism::identity(a);
        HnnAction {
            h: vec![id.clone(); h_order],
            t: id.clone(),
            t_inv: id,
        }
    }
}

/// Factor values: `hh[x·|H| + y] = (x, y)`, `t[x] = (x, t)`,
/// `t_inv[x] = (x, T)`. Entries with an identity argument are `1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HnnFactors {
    pub hh: Vec<Elem>,
    pub t: Vec<Elem>,
    pub t_inv: Vec<Elem>,
}

impl HnnFactors {
    pub fn trivial(a: &FiniteGroup, h_order: usize) -> Self {
        let e = a.identity();
        HnnFactors {
            hh: vec![e; h_order * h_order],
            t: vec![e; h_order],
            t_inv: vec![e; h_order],
        }
    }
}

/// Extension data over an HNN group.
#[derive(Clone, Debug)]
pub struct HnnExtensionSpec {
    base: HnnSpec,
    a: FiniteGroup,
    action: HnnAction,
    factors: HnnFactors,
}

impl HnnExtensionSpec {
    pub fn new(base: HnnSpec, a: FiniteGroup, action: HnnAction, factors: HnnFactors) -> Result<Self, HnnError> {
        let n = base.h.order();
        for (what, expected, got) in [
            ("automorphisms ψ_h", n, action.h.len()),
            ("factors (h,h')", n * n, factors.hh.len()),
            ("factors (h,t)", n, factors.t.len()),
            ("factors (h,T)", n, factors.t_inv.len()),
        ] {
            if expected != got {
                return Err(HnnError::Arity { what, expected, got });
            }
        }
        for psi in action.h.iter().chain([&action.t, &action.t_inv]) {
            Automorphism::new(&a, psi.map().to_vec())?;
        }
        if !action.h[base.h.identity()].is_identity() {
            return Err(HnnError::IdentityAction);
        }
        let spec = HnnExtensionSpec { base, a, action, factors };
        let h = &spec.base.h;
        let mut entries = Vec::new();
        for x in h.elements() {
            for y in h.elements() {
                entries.push((factor_name_hh(h, x, y), spec.factors.hh[x * n + y], spec.forced_hh(x, y)));
            }
        }
        for x in h.elements() {
            entries.push((factor_name_t(h, x, false), spec.factors.t[x], !spec.base.has_t_rule(x)));
            entries.push((factor_name_t(h, x, true), spec.factors.t_inv[x], !spec.base.has_t_inv_rule(x)));
        }
        for (name, value, forced) in entries {
            if value >= spec.a.order() {
                return Err(HnnError::FactorOutOfRange(name));
            }
            if forced && value != spec.a.identity() {
                return Err(HnnError::ForcedFactor(name));
            }
        }
        Ok(spec)
    }

    /// Trivial action and factor set: `A × B`.
    pub fn trivial(base: HnnSpec, a: FiniteGroup) -> Self {
        let n = base.h.order();
        let action = HnnAction::trivial(&a, n);
        let factors = HnnFactors::trivial(&a, n);
        HnnExtensionSpec { base, a, action, factors }
    }

    pub fn base(&self) -> &HnnSpec {
        &self.base
    }

    pub fn a(&self) -> &FiniteGroup {
        &self.a
    }

    pub fn action(&self) -> &HnnAction {
        &self.action
    }

    pub fn factors(&self) -> &HnnFactors {
        &self.factors
    }

    /// Whether `(x, y)` must be `1`: an identity argument, or `y = x⁻¹`
    /// with `y ≠ x`. The factor of an involution's square stays free.
    pub fn forced_hh(&self, x: Elem, y: Elem) -> bool {
        let h = &self.base.h;
        x == h.identity() || y == h.identity() || (y == h.inv(x) && x != y)
    }

    /// `(x, y)`, with `1` for an identity argument.
    pub fn f(&self, x: Elem, y: Elem) -> Elem {
        let h = &self.base.h;
        if x == h.identity() || y == h.identity() {
            self.a.identity()
        } else {
            self.factors.hh[x * h.order() + y]
        }
    }

    /// `(x, t)`, or `(x, T)` when `inverse`.
    pub fn g(&self, x: Elem, inverse: bool) -> Elem {
        if inverse {
            self.factors.t_inv[x]
        } else {
            self.factors.t[x]
        }
    }

    fn automorphism(&self, g: Gen) -> Option<&Automorphism> {
        match g {
            Gen::H(e) if e == self.base.h.identity() => None,
            Gen::H(e) => Some(&self.action.h[e]),
            Gen::T => Some(&self.action.t),
            Gen::TInv => Some(&self.action.t_inv),
        }
    }

    /// `x^{g₁ g₂ ⋯}`, applying `ψ_{g₁}` first.
    pub fn act(&self, x: Elem, gens: &[Gen]) -> Elem {
        gens.iter()
            .fold(x, |acc, &g| self.automorphism(g).map_or(acc, |psi| psi.apply(acc)))
    }
}

/// `S` over `A₁ ∪ H₁ ∪ {t, T}` under the HNN order, with letter roles.
#[derive(Clone, Debug)]
pub struct HnnExtensionSystem {
    pub system: RewriteSystem,
    roles: Vec<HnnLetter>,
    a_letter: Vec<Option<Letter>>,
}

impl HnnExtensionSystem {
    /// Role of every letter, indexed by letter id.
    pub fn roles(&self) -> &[HnnLetter] {
        &self.roles
    }

    pub fn role(&self, l: Letter) -> HnnLetter {
        self.roles[l.index()]
    }

    pub fn a_word(&self, a: Elem) -> Word {
        self.a_letter[a].map(Word::single).unwrap_or_default()
    }
}

/// Builds `S = {aa' = [aa'], ay = y a^y, hh' = [hh'](h,h'),
/// ht = h_C t φ(c_h)(h,t), hT = h_D T φ⁻¹(d_h)(h,T), tT = Tt = 1}`.
pub fn build_hnn_extension_system(espec: &HnnExtensionSpec) -> Result<HnnExtensionSystem, HnnError> {
    let spec = &espec.base;
    let a = &espec.a;
    let h = &spec.h;
    let letters = Letters::new(Some(a), spec)?;
    let mut pairs = Vec::new();
    for x in a.non_identity() {
        for y in a.non_identity() {
            pairs.push((Letters::cat(&[&letters.a(x), &letters.a(y)]), letters.a(a.mul(x, y))));
        }
    }
    let mut gens: Vec<(Word, Gen)> = spec.omega.iter().map(|&e| (letters.h(e), Gen::H(e))).collect();
    gens.push((letters.stable(false), Gen::T));
    gens.push((letters.stable(true), Gen::TInv));
    for x in a.non_identity() {
        for (yw, g) in &gens {
            pairs.push((
                Letters::cat(&[&letters.a(x), yw]),
                Letters::cat(&[yw, &letters.a(espec.act(x, &[*g]))]),
            ));
        }
    }
    // factor values looked up by the relation's factor name
    let mut by_name = std::collections::HashMap::new();
    for x in h.elements() {
        for y in h.elements() {
            by_name.insert(factor_name_hh(h, x, y), espec.f(x, y));
        }
        by_name.insert(factor_name_t(h, x, false), espec.g(x, false));
        by_name.insert(factor_name_t(h, x, true), espec.g(x, true));
    }
    let factor = |name: &str| letters.a(by_name[name]);
    pairs.extend(relation_pairs(&letters, spec, &factor));
    let system = oriented_system(&letters, spec, pairs)?;
    Ok(HnnExtensionSystem {
        system,
        roles: letters.roles,
        a_letter: letters.a_letter,
    })
}

/// Budget for the sampled conditions (I) and (II).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sampling {
    pub samples: usize,
    pub max_context_len: usize,
    pub seed: u64,
    /// Upper bound on `contexts × (rules + compositions)`.
    pub guard: u128,
}

impl Default for Sampling {
    fn default() -> Self {
        Sampling {
            samples: DEFAULT_SAMPLES,
            max_context_len: DEFAULT_MAX_CONTEXT_LEN,
            seed: 0,
            guard: DEFAULT_SAMPLING_GUARD,
        }
    }
}

/// Outcome of [`check_extension_hnn`]. The condition route is exact; the
/// sampled route is evidence only.
#[derive(Clone, Debug)]
pub struct HnnVerdict {
    pub h_conditions: HConditionReport,
    pub condition_i: ConditionIReport,
    pub condition_ii: ConditionIIReport,
    /// Families of the compositions flagged by the sampled (II) check;
    /// [`HFamily::of_roles`] is `None` for shapes outside the nine, which
    /// are listed in `other_failures`.
    pub condition_ii_families: Vec<HFamily>,
    pub other_failures: Vec<String>,
    pub passed: bool,
}

impl HnnVerdict {
    /// Whether the exact conditions and the sampled composition check flag
    /// the same families.
    pub fn routes_agree(&self) -> bool {
        self.other_failures.is_empty() && self.h_conditions.failing_families() == self.condition_ii_families
    }
}

/// Evaluates the extension conditions exactly and runs the sampled checks
/// of (I) and (II) on the extension system.
pub fn check_extension_hnn(espec: &HnnExtensionSpec, sampling: Sampling) -> Result<HnnVerdict, HnnError> {
    let es = build_hnn_extension_system(espec)?;
    let short = 1 + es.system.alphabet().len() as u128;
    let contexts = short * short + sampling.samples as u128;
    let work = contexts * (es.system.len() + find_compositions(&es.system).len()) as u128;
    if work > sampling.guard {
        return Err(HnnError::SamplingGuard(work, sampling.guard));
    }
    let h_conditions = check_h_conditions(espec);
    let condition_i = check_condition_I(&es.system, sampling.samples, sampling.max_context_len, sampling.seed);
    let condition_ii = check_condition_II(&es.system, sampling.samples, sampling.max_context_len, sampling.seed)?;
    let mut condition_ii_families = Vec::new();
    let mut other_failures = Vec::new();
    for w in &condition_ii.witnesses {
        let word = &w.composition().w;
        let roles: Vec<HnnLetter> = word.letters().iter().map(|&l| es.role(l)).collect();
        match HFamily::of_roles(&roles) {
            Some(f) => condition_ii_families.push(f),
            None => other_failures.push(es.system.alphabet().render(word)),
        }
    }
    condition_ii_families.sort();
    condition_ii_families.dedup();
    let passed = h_conditions.passed() && condition_i.passed && condition_ii.passed;
    Ok(HnnVerdict {
        h_conditions,
        condition_i,
        condition_ii,
        condition_ii_families,
        other_failures,
        passed,
    })
}
