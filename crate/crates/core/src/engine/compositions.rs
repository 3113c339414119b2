//! Intersection and inclusion compositions between rules.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::reduce::{reduce, ReductionTrace};
use super::{EngineError, RewriteSystem};
use crate::word::{Polynomial, Scalar, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CompositionKind {
    /// `w = f̄·b = a·ḡ` with `a`, `b` nonempty.
    Intersection,
    /// `w = f̄ = a·ḡ·b`.
    Inclusion,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Composition {
    pub kind: CompositionKind,
    pub f: usize,
    pub g: usize,
    pub w: Word,
    pub a: Word,
    pub b: Word,
    pub value: Polynomial,
}

/// `f·b − a·g` for an intersection, `f − a·g·b` for an inclusion.
pub fn composition_value(
    system: &RewriteSystem,
    kind: CompositionKind,
    f: usize,
    g: usize,
    a: &Word,
    b: &Word,
) -> Polynomial {
    let fp = system.rule(f).poly();
    let gp = system.rule(g).poly();
    let minus = -Scalar::from_integer(1.into());
    match kind {
        CompositionKind::Intersection => {
            let mut v = fp.mul_context(&Word::empty(), b);
            v.add_scaled(gp, &minus, a, &Word::empty());
            v
        }
        CompositionKind::Inclusion => {
            let mut v = fp.clone();
            v.add_scaled(gp, &minus, a, b);
            v
        }
    }
}

/// Compositions of the ordered pair `(f, g)`, by increasing position.
pub(crate) fn compositions_of_pair(system: &RewriteSystem, f: usize, g: usize) -> Vec<Composition> {
    let fl = system.rule(f).lead();
    let gl = system.rule(g).lead();
    let mut out = Vec::new();
    // intersection: a proper suffix of f̄ equals a proper prefix of ḡ
    let (nf, ng) = (fl.len(), gl.len());
    for start in 1..nf {
        let overlap = nf - start;
        if overlap >= ng {
            continue;
        }
        if fl.letters()[start..] == gl.letters()[..overlap] {
            let a = fl.prefix(start);
            let b = gl.suffix_from(overlap);
            let w = a.concat(gl);
            let value = composition_value(system, CompositionKind::Intersection, f, g, &a, &b);
            out.push(Composition {
                kind: CompositionKind::Intersection,
                f,
                g,
                w,
                a,
                b,
                value,
            });
        }
    }
    // inclusion: ḡ occurs inside f̄; equal leads only once per unordered pair
    if f != g && !(fl == gl && f > g) {
        for pos in fl.occurrences(gl) {
            let a = fl.prefix(pos);
            let b = fl.suffix_from(pos + ng);
            let value = composition_value(system, CompositionKind::Inclusion, f, g, &a, &b);
            out.push(Composition {
                kind: CompositionKind::Inclusion,
                f,
                g,
                w: fl.clone(),
                a,
                b,
                value,
            });
        }
    }
    out
}

/// All compositions, ordered by `(f, g, position)`. Self-overlaps included.
pub fn find_compositions(system: &RewriteSystem) -> Vec<Composition> {
    let n = system.len();
    (0..n)
        .flat_map(|f| (0..n).map(move |g| (f, g)))
        .flat_map(|(f, g)| compositions_of_pair(system, f, g))
        .collect()
}

/// Reduces `c.value`. Triviality is decided only under a monomial order.
pub fn is_trivial(c: &Composition, system: &RewriteSystem) -> Result<(bool, ReductionTrace), EngineError> {
    if !system.order().monomial_certified() {
        return Err(EngineError::RequiresMonomialOrder);
    }
    let trace = reduce(&c.value, system)?;
    Ok((trace.is_zero(), trace))
}

#[derive(Clone, Debug)]
pub struct CompositionOutcome {
    pub composition: Composition,
    pub trivial: bool,
    pub remainder: Polynomial,
    pub steps: usize,
}

/// Runs [`is_trivial`] on every composition in parallel, in deterministic
/// output order.
pub fn check_compositions(system: &RewriteSystem) -> Result<Vec<CompositionOutcome>, EngineError> {
    find_compositions(system)
        .into_par_iter()
        .map(|c| {
            let (trivial, trace) = is_trivial(&c, system)?;
            Ok(CompositionOutcome {
                trivial,
                remainder: trace.remainder,
                steps: trace.steps.len(),
                composition: c,
            })
        })
        .collect()
}
