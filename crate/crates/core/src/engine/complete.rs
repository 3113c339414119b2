//! Shirshov completion and interreduction to a minimal basis.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::compositions::compositions_of_pair;
use super::reduce::reduce_with_limit;
use super::{EngineError, RewriteSystem, Rule, SystemStatus};
use crate::word::Polynomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    pub max_rules: usize,
    /// Compositions whose `w` is longer than this are skipped and reported.
    pub max_degree: usize,
    /// Step guard per reduction.
    pub max_steps: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_rules: 500,
            max_degree: 16,
            max_steps: super::DEFAULT_MAX_STEPS,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CompletionStatus {
    Complete,
    /// Completion stopped early or skipped compositions; the named limit
    /// tripped.
    HitLimit(String),
}

#[derive(Clone, Debug)]
pub struct CompletionReport {
    pub basis: RewriteSystem,
    pub status: CompletionStatus,
    pub rules_added: usize,
    pub compositions_checked: usize,
    pub compositions_pruned: usize,
}

impl CompletionReport {
    pub fn is_complete(&self) -> bool {
        self.status == CompletionStatus::Complete
    }
}

/// Adds monic normal forms of nontrivial compositions until every
/// composition is trivial or a limit trips. On completion the result is
/// interreduced and marked as a certified basis.
pub fn shirshov_complete(system: &RewriteSystem, limits: Limits) -> Result<CompletionReport, EngineError> {
    if !system.order().monomial_certified() {
        return Err(EngineError::RequiresMonomialOrder);
    }
    let mut work = system.clone();
    let mut queue: VecDeque<(usize, usize)> = VecDeque::new();
    for i in 0..work.len() {
        for j in 0..work.len() {
            queue.push_back((i, j));
        }
    }
    let mut added = 0;
    let mut checked = 0;
    let mut pruned = 0;
    let mut stopped: Option<String> = None;

    'outer: while let Some((i, j)) = queue.pop_front() {
        for c in compositions_of_pair(&work, i, j) {
            if c.w.len() > limits.max_degree {
                pruned += 1;
                continue;
            }
            checked += 1;
            let trace = reduce_with_limit(&c.value, &work, limits.max_steps)?;
            if trace.remainder.is_zero() {
                continue;
            }
            if work.len() >= limits.max_rules {
                stopped = Some(format!("max_rules={}", limits.max_rules));
                break 'outer;
            }
            let n = work.push_rule(trace.remainder)?;
            added += 1;
            for k in 0..=n {
                queue.push_back((n, k));
                if k != n {
                    queue.push_back((k, n));
                }
            }
        }
    }

    let status = match (stopped, pruned) {
        (Some(why), _) => CompletionStatus::HitLimit(why),
        (None, 0) => CompletionStatus::Complete,
        (None, _) => CompletionStatus::HitLimit(format!("max_degree={}", limits.max_degree)),
    };
    let basis = if status == CompletionStatus::Complete {
        let mut b = minimalize(&work)?;
        b.set_status(SystemStatus::CertifiedGsb);
        b
    } else {
        work.set_status(SystemStatus::Candidate);
        work
    };
    Ok(CompletionReport {
        basis,
        status,
        rules_added: added,
        compositions_checked: checked,
        compositions_pruned: pruned,
    })
}

/// Removes rules whose leading word contains another rule's leading word
/// (re-adding any nonzero normal form of a removed rule), then reduces every
/// tail. The resulting leading words form an antichain under the subword
/// relation.
pub fn minimalize(system: &RewriteSystem) -> Result<RewriteSystem, EngineError> {
    let status = system.status();
    let mut work = system.clone();
    loop {
        let redundant = (0..work.len()).find(|&i| {
            (0..work.len()).any(|j| {
                j != i
                    && work.rule(i).lead().contains_subword(work.rule(j).lead())
                    && (work.rule(i).lead() != work.rule(j).lead() || j < i)
            })
        });
        let Some(i) = redundant else { break };
        let mut rules: Vec<Rule> = work.rules().to_vec();
        let removed = rules.remove(i);
        work.replace_rules(rules, false);
        let nf = reduce_with_limit(removed.poly(), &work, super::DEFAULT_MAX_STEPS)?.remainder;
        if !nf.is_zero() {
            work.push_rule_labeled(nf, removed.label)?;
        }
    }
    let mut reduced = Vec::with_capacity(work.len());
    for i in 0..work.len() {
        let rule = work.rule(i);
        let tail = reduce_with_limit(&rule.tail(), &work, super::DEFAULT_MAX_STEPS)?.remainder;
        let mut poly = Polynomial::monomial(rule.lead().clone());
        poly.add_scaled(&tail, &-crate::word::scalar(1), &Default::default(), &Default::default());
        reduced.push(Rule {
            poly,
            lead: rule.lead().clone(),
            label: rule.label.clone(),
        });
    }
    work.replace_rules(reduced, true);
    work.set_status(status);
    work.mark_minimal();
    Ok(work)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::irr_enumerate;
    use crate::order::OrderSpec;
    use crate::word::{Alphabet, LetterClass};

    fn sys(names: &[&str], rels: &[(&str, &str)]) -> (Alphabet, RewriteSystem) {
        let al = Alphabet::uniform(names.iter().copied(), LetterClass::Y).unwrap();
        let polys = rels
            .iter()
            .map(|(l, r)| Polynomial::binomial(al.parse_word(l).unwrap(), al.parse_word(r).unwrap()))
            .collect();
        let s = RewriteSystem::new(al.clone(), OrderSpec::deg_lex(names.len()), polys).unwrap();
        (al, s)
    }

    #[test]
    fn x_cubed_is_already_complete() {
        let (_, s) = sys(&["x"], &[("x x x", "1")]);
        let r = shirshov_complete(&s, Limits::default()).unwrap();
        assert!(r.is_complete());
        assert_eq!(r.rules_added, 0);
        assert_eq!(r.basis.len(), 1);
        assert_eq!(r.basis.status(), SystemStatus::CertifiedGsb);
    }

    #[test]
    fn minimalize_examples() {
        let (al, s) = sys(&["x"], &[("x x", "1"), ("x x x", "x")]);
        let m = minimalize(&s).unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(al.render(m.rule(0).lead()), "x x");

        let (al, s) = sys(&["x", "y"], &[("x x", "1"), ("x x y", "y")]);
        let m = minimalize(&s).unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(al.render(m.rule(0).lead()), "x x");
        assert!(m.is_minimal() && m.leads_form_antichain());

        let again = minimalize(&m).unwrap();
        assert_eq!(again.rules(), m.rules());
    }

    #[test]
    fn s3_completes_to_six_normal_forms() {
        let (_, s) = sys(&["x", "y"], &[("x x", "1"), ("y y", "1"), ("x y x", "y x y")]);
        let r = shirshov_complete(&s, Limits::default()).unwrap();
        assert!(r.is_complete());
        let irr = irr_enumerate(&r.basis, 8);
        assert_eq!(irr.len(), 6);
    }

    #[test]
    fn degree_pruning_is_reported() {
        let (_, s) = sys(&["x", "y"], &[("x x", "1"), ("y y", "1"), ("x y x", "y x y")]);
        let limits = Limits {
            max_degree: 2,
            ..Limits::default()
        };
        let r = shirshov_complete(&s, limits).unwrap();
        assert_eq!(r.status, CompletionStatus::HitLimit("max_degree=2".into()));
        assert!(r.compositions_pruned > 0);
    }
}
