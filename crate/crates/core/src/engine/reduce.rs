//! Reduction of polynomials modulo a rewrite system, with a replayable trace.
//!
//! The fixed strategy rewrites the greatest reducible term (under the
//! system's order) using the first matching rule in index order at its
//! leftmost occurrence.

use num_traits::Zero;
use rand::Rng;

use super::{EngineError, RewriteSystem};
use crate::word::{Polynomial, Scalar, Word};

pub const DEFAULT_MAX_STEPS: usize = 200_000;

/// One rewrite: `coeff · left · s · right` was subtracted, where `s` is rule
/// `rule` and `word = left · s̄ · right` is the term that was rewritten.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionStep {
    pub rule: usize,
    pub left: Word,
    pub right: Word,
    pub coeff: Scalar,
    pub word: Word,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionTrace {
    pub input: Polynomial,
    pub steps: Vec<ReductionStep>,
    pub remainder: Polynomial,
}

impl ReductionTrace {
    /// Recomputes `input - Σ coeffᵢ · leftᵢ · sᵢ · rightᵢ`.
    pub fn replay(&self, system: &RewriteSystem) -> Polynomial {
        let mut p = self.input.clone();
        for st in &self.steps {
            p.add_scaled(system.rule(st.rule).poly(), &-st.coeff.clone(), &st.left, &st.right);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.remainder.is_zero()
    }
}

fn pick_greatest_term(p: &Polynomial, system: &RewriteSystem) -> Option<(Word, Scalar)> {
    p.leading_by(|u, v| system.order().compare(u, v))
        .map(|(w, c)| (w.clone(), c.clone()))
}

/// Reduces with the default step guard.
pub fn reduce(f: &Polynomial, system: &RewriteSystem) -> Result<ReductionTrace, EngineError> {
    reduce_with_limit(f, system, DEFAULT_MAX_STEPS)
}

/// Reduces `f` until no term contains a leading word, failing with
/// [`EngineError::StepLimit`] after `max_steps` rewrites.
pub fn reduce_with_limit(
    f: &Polynomial,
    system: &RewriteSystem,
    max_steps: usize,
) -> Result<ReductionTrace, EngineError> {
    let mut work = f.clone();
    let mut remainder = Polynomial::zero();
    let mut steps = Vec::new();
    while let Some((w, c)) = pick_greatest_term(&work, system) {
        match system.find_reducer(&w) {
            None => {
                work.add_term(w.clone(), -c.clone());
                remainder.add_term(w, c);
            }
            Some((rule, pos)) => {
                if steps.len() >= max_steps {
                    return Err(EngineError::StepLimit(max_steps));
                }
                let lead_len = system.rule(rule).lead().len();
                let left = w.prefix(pos);
                let right = w.suffix_from(pos + lead_len);
                work.add_scaled(system.rule(rule).poly(), &-c.clone(), &left, &right);
                steps.push(ReductionStep {
                    rule,
                    left,
                    right,
                    coeff: c,
                    word: w,
                });
            }
        }
    }
    debug_assert!(remainder.words().all(|w| !system.is_reducible(w)));
    Ok(ReductionTrace {
        input: f.clone(),
        steps,
        remainder,
    })
}

/// Reduces by rewriting a uniformly random reducible term with a random
/// matching rule at a random occurrence. Used to test confluence.
pub fn reduce_randomized<R: Rng + ?Sized>(
    f: &Polynomial,
    system: &RewriteSystem,
    rng: &mut R,
    max_steps: usize,
) -> Result<Polynomial, EngineError> {
    let mut p = f.clone();
    for _ in 0..max_steps {
        let reducible: Vec<(Word, Scalar)> = p
            .terms()
            .filter(|(w, _)| system.is_reducible(w))
            .map(|(w, c)| (w.clone(), c.clone()))
            .collect();
        if reducible.is_empty() {
            return Ok(p);
        }
        let (w, c) = &reducible[rng.gen_range(0..reducible.len())];
        let mut choices = Vec::new();
        for (i, r) in system.rules().iter().enumerate() {
            for pos in w.occurrences(r.lead()) {
                choices.push((i, pos));
            }
        }
        let (rule, pos) = choices[rng.gen_range(0..choices.len())];
        let lead_len = system.rule(rule).lead().len();
        let left = w.prefix(pos);
        let right = w.suffix_from(pos + lead_len);
        debug_assert!(!c.is_zero());
        p.add_scaled(system.rule(rule).poly(), &-c.clone(), &left, &right);
    }
    Err(EngineError::StepLimit(max_steps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::OrderSpec;
    use crate::word::{Alphabet, LetterClass};

    fn cyclic3() -> (Alphabet, RewriteSystem) {
        let al = Alphabet::uniform(["x"], LetterClass::Y).unwrap();
        let x3 = al.parse_word("x x x").unwrap();
        let s = RewriteSystem::new(
            al.clone(),
            OrderSpec::deg_lex(1),
            vec![Polynomial::binomial(x3, Word::empty())],
        )
        .unwrap();
        (al, s)
    }

    #[test]
    fn x_cubed_reduces_to_one() {
        let (al, s) = cyclic3();
        let t = reduce(&Polynomial::monomial(al.parse_word("x x x").unwrap()), &s).unwrap();
        assert_eq!(t.remainder, Polynomial::one());
        assert_eq!(t.steps.len(), 1);
        assert_eq!(t.replay(&s), t.remainder);
    }

    #[test]
    fn leftmost_occurrence_is_used() {
        let (al, s) = cyclic3();
        let x4 = Polynomial::monomial(al.parse_word("x x x x").unwrap());
        let t = reduce(&x4, &s).unwrap();
        assert_eq!(t.steps[0].left, Word::empty());
        assert_eq!(t.steps[0].right, al.parse_word("x").unwrap());
        assert_eq!(t.remainder, Polynomial::monomial(al.parse_word("x").unwrap()));
    }

    #[test]
    fn step_limit_trips() {
        let (al, s) = cyclic3();
        let long = Polynomial::monomial(al.parse_word(&["x"; 30].join(" ")).unwrap());
        assert_eq!(reduce_with_limit(&long, &s, 3), Err(EngineError::StepLimit(3)));
    }
}
