//! Sampled checks of conditions (I) and (II), the replacement for
//! monomiality when deciding whether a system is a Gröbner-Shirshov basis
//! under a non-monomial order:
//!
//! * (I) `lead(a·s·b) = a·s̄·b` for all contexts `a`, `b`;
//! * (II) every composition reduces to zero as `Σ αᵢ aᵢ tᵢ bᵢ` with
//!   `c·aᵢ·t̄ᵢ·bᵢ·d < c·w·d` for all contexts `c`, `d`.
//!
//! Contexts are enumerated exhaustively up to length one and sampled beyond,
//! so a pass is evidence rather than proof.

#![allow(non_snake_case)]

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::compositions::{find_compositions, Composition};
use super::reduce::reduce;
use super::{EngineError, RewriteSystem};
use crate::order::{random_word, words_up_to};
use crate::word::{Letter, Polynomial, Word};

pub const DEFAULT_SAMPLES: usize = 500;
pub const DEFAULT_MAX_CONTEXT_LEN: usize = 4;

fn contexts(letters: &[Letter], samples: usize, max_len: usize, seed: u64) -> Vec<(Word, Word)> {
    let short = words_up_to(letters, max_len.min(1));
    let mut out: Vec<(Word, Word)> = short
        .iter()
        .flat_map(|c| short.iter().map(move |d| (c.clone(), d.clone())))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        out.push((
            random_word(&mut rng, letters, max_len),
            random_word(&mut rng, letters, max_len),
        ));
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionIWitness {
    pub rule: usize,
    pub left: Word,
    pub right: Word,
    pub expected: Word,
    pub actual: Word,
}

#[derive(Clone, Debug)]
pub struct ConditionIReport {
    pub passed: bool,
    pub rules_checked: usize,
    pub contexts_per_rule: usize,
    pub witness: Option<ConditionIWitness>,
}

/// Checks `lead(a·s·b) = a·s̄·b` for every rule over the sampled contexts.
pub fn check_condition_I(system: &RewriteSystem, samples: usize, max_ctx_len: usize, seed: u64) -> ConditionIReport {
    let letters: Vec<Letter> = system.alphabet().letters().collect();
    let ctx = contexts(&letters, samples, max_ctx_len, seed);
    let witness = (0..system.len()).into_par_iter().find_map_first(|i| {
        let rule = system.rule(i);
        ctx.iter().find_map(|(a, b)| {
            let expected = rule.lead().wrap(a, b);
            let actual = system
                .leading_word(&rule.poly().mul_context(a, b))
                .expect("rules are nonzero");
            (actual != expected).then(|| ConditionIWitness {
                rule: i,
                left: a.clone(),
                right: b.clone(),
                expected,
                actual,
            })
        })
    });
    ConditionIReport {
        passed: witness.is_none(),
        rules_checked: system.len(),
        contexts_per_rule: ctx.len(),
        witness,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConditionIIWitness {
    /// The composition does not reduce to zero.
    Nontrivial { composition: Composition, remainder: Polynomial },
    /// A rewritten word is not below `w` in the context `c · _ · d`.
    Order {
        composition: Composition,
        step_word: Word,
        left: Word,
        right: Word,
    },
}

impl ConditionIIWitness {
    pub fn composition(&self) -> &Composition {
        match self {
            ConditionIIWitness::Nontrivial { composition, .. } => composition,
            ConditionIIWitness::Order { composition, .. } => composition,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ConditionIIReport {
    pub passed: bool,
    pub compositions_checked: usize,
    pub contexts_per_composition: usize,
    /// All failures, in composition order.
    pub witnesses: Vec<ConditionIIWitness>,
}

/// Reduces every composition with the fixed strategy and checks the
/// resulting presentation `Σ αᵢ aᵢ tᵢ bᵢ` against the sampled contexts.
pub fn check_condition_II(
    system: &RewriteSystem,
    samples: usize,
    max_ctx_len: usize,
    seed: u64,
) -> Result<ConditionIIReport, EngineError> {
    let letters: Vec<Letter> = system.alphabet().letters().collect();
    let ctx = contexts(&letters, samples, max_ctx_len, seed);
    let comps = find_compositions(system);
    let results: Vec<Option<ConditionIIWitness>> = comps
        .par_iter()
        .map(|c| check_one(system, c, &ctx))
        .collect::<Result<_, _>>()?;
    let witnesses: Vec<_> = results.into_iter().flatten().collect();
    Ok(ConditionIIReport {
        passed: witnesses.is_empty(),
        compositions_checked: comps.len(),
        contexts_per_composition: ctx.len(),
        witnesses,
    })
}

fn check_one(
    system: &RewriteSystem,
    c: &Composition,
    ctx: &[(Word, Word)],
) -> Result<Option<ConditionIIWitness>, EngineError> {
    let trace = reduce(&c.value, system)?;
    if !trace.remainder.is_zero() {
        return Ok(Some(ConditionIIWitness::Nontrivial {
            composition: c.clone(),
            remainder: trace.remainder,
        }));
    }
    for (left, right) in ctx {
        let cwd = c.w.wrap(left, right);
        for st in &trace.steps {
            if !system.order().less(&st.word.wrap(left, right), &cwd) {
                return Ok(Some(ConditionIIWitness::Order {
                    composition: c.clone(),
                    step_word: st.word.clone(),
                    left: left.clone(),
                    right: right.clone(),
                }));
            }
        }
    }
    Ok(None)
}
