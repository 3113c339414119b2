//! Gröbner-Shirshov machinery over a fixed alphabet and order: compositions,
//! reduction with traces, triviality, Shirshov completion, interreduction,
//! `Irr(S)` enumeration and the sampled checks of conditions (I) and (II)
//! used when the order is not monomial.

mod complete;
mod compositions;
mod conditions;
mod irr;
mod reduce;

use std::fmt;

use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::order::{OrderError, OrderSpec};
use crate::word::{Alphabet, Polynomial, Scalar, Word, WordError};

pub use complete::{minimalize, shirshov_complete, CompletionReport, CompletionStatus, Limits};
pub use compositions::{
    check_compositions, composition_value, find_compositions, is_trivial, Composition,
    CompositionKind, CompositionOutcome,
};
pub use conditions::{
    check_condition_I, check_condition_II, ConditionIReport, ConditionIWitness,
    ConditionIIReport, ConditionIIWitness, DEFAULT_MAX_CONTEXT_LEN, DEFAULT_SAMPLES,
};
pub use irr::{irr_count, irr_enumerate};
pub use reduce::{
    reduce, reduce_randomized, reduce_with_limit, ReductionStep, ReductionTrace, DEFAULT_MAX_STEPS,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error("rule {0} is the zero polynomial")]
    ZeroRule(usize),
    #[error("reduction exceeded {0} steps; the order may not be monomial on this input")]
    StepLimit(usize),
    #[error("this operation needs a monomial order; use the condition (II) check instead")]
    RequiresMonomialOrder,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SystemStatus {
    Candidate,
    CertifiedGsb,
    CertifiedFailed,
}

/// A monic polynomial together with its cached leading word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    poly: Polynomial,
    lead: Word,
    label: Option<String>,
}

impl Rule {
    pub fn poly(&self) -> &Polynomial {
        &self.poly
    }

    pub fn lead(&self) -> &Word {
        &self.lead
    }

    /// Everything but the leading term, as `s̄ - s`; the rewrite target.
    pub fn tail(&self) -> Polynomial {
        let mut t = self.poly.neg();
        t.add_term(self.lead.clone(), Scalar::one());
        t
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }
}

/// An ordered list of monic rules under one order.
#[derive(Clone, Debug)]
pub struct RewriteSystem {
    alphabet: Alphabet,
    order: OrderSpec,
    rules: Vec<Rule>,
    status: SystemStatus,
    minimal: bool,
}

impl RewriteSystem {
    pub fn new(alphabet: Alphabet, order: OrderSpec, polys: Vec<Polynomial>) -> Result<Self, EngineError> {
        Self::new_labeled(alphabet, order, polys.into_iter().map(|p| (p, None)).collect())
    }

    /// Like [`RewriteSystem::new`] with an optional display label per rule.
    pub fn new_labeled(
        alphabet: Alphabet,
        order: OrderSpec,
        polys: Vec<(Polynomial, Option<String>)>,
    ) -> Result<Self, EngineError> {
        let mut sys = RewriteSystem {
            alphabet,
            order,
            rules: Vec::with_capacity(polys.len()),
            status: SystemStatus::Candidate,
            minimal: false,
        };
        for (i, (p, label)) in polys.into_iter().enumerate() {
            if p.is_zero() {
                return Err(EngineError::ZeroRule(i));
            }
            sys.push_rule_labeled(p, label)?;
        }
        Ok(sys)
    }

    /// Appends `p` scaled to be monic. Returns the new rule's index.
    pub fn push_rule(&mut self, p: Polynomial) -> Result<usize, EngineError> {
        self.push_rule_labeled(p, None)
    }

    pub fn push_rule_labeled(&mut self, p: Polynomial, label: Option<String>) -> Result<usize, EngineError> {
        if p.is_zero() {
            return Err(EngineError::ZeroRule(self.rules.len()));
        }
        for w in p.words() {
            self.alphabet.check_word(w)?;
            self.order.check_word(w)?;
        }
        let (lead, coeff) = p
            .leading_by(|u, v| self.order.compare(u, v))
            .map(|(w, c)| (w.clone(), c.clone()))
            .expect("nonzero polynomial has a leading term");
        let poly = if coeff.is_one() { p } else { p.scale(&coeff.recip()) };
        self.rules.push(Rule { poly, lead, label });
        self.minimal = false;
        self.status = SystemStatus::Candidate;
        Ok(self.rules.len() - 1)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn order(&self) -> &OrderSpec {
        &self.order
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn rule(&self, i: usize) -> &Rule {
        &self.rules[i]
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn leads(&self) -> impl Iterator<Item = &Word> {
        self.rules.iter().map(|r| &r.lead)
    }

    pub fn status(&self) -> SystemStatus {
        self.status
    }

    pub fn set_status(&mut self, status: SystemStatus) {
        self.status = status;
    }

    pub fn is_minimal(&self) -> bool {
        self.minimal
    }

    /// Whether no leading word contains another as a subword.
    pub fn leads_form_antichain(&self) -> bool {
        self.rules.iter().enumerate().all(|(i, r)| {
            self.rules
                .iter()
                .enumerate()
                .all(|(j, s)| i == j || !r.lead.contains_subword(&s.lead))
        })
    }

    /// First rule in index order whose leading word occurs in `w`, with its
    /// leftmost position.
    pub fn find_reducer(&self, w: &Word) -> Option<(usize, usize)> {
        self.rules
            .iter()
            .enumerate()
            .find_map(|(i, r)| w.find(&r.lead).map(|pos| (i, pos)))
    }

    pub fn is_reducible(&self, w: &Word) -> bool {
        self.find_reducer(w).is_some()
    }

    /// Leading word of `p` under this system's order.
    pub fn leading_word(&self, p: &Polynomial) -> Option<Word> {
        p.leading_by(|u, v| self.order.compare(u, v)).map(|(w, _)| w.clone())
    }

    pub fn render_word(&self, w: &Word) -> String {
        self.alphabet.render(w)
    }

    pub fn render_poly(&self, p: &Polynomial) -> String {
        self.alphabet.render_poly(p)
    }

    /// Rule rendered as `lead -> tail`.
    pub fn render_rule(&self, i: usize) -> String {
        let r = &self.rules[i];
        format!(
            "{} -> {}",
            self.alphabet.render(&r.lead),
            self.alphabet.render_poly(&r.tail())
        )
    }

    pub(crate) fn replace_rules(&mut self, rules: Vec<Rule>, minimal: bool) {
        self.rules = rules;
        self.minimal = minimal;
    }

    pub(crate) fn mark_minimal(&mut self) {
        self.minimal = true;
    }
}

impl fmt::Display for RewriteSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rules.len() {
            writeln!(f, "{}", self.render_rule(i))?;
        }
        Ok(())
    }
}
