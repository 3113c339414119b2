//! Normal forms of the extension system and their evaluation in a concrete
//! model group. Injectivity of the evaluation on the enumerated normal
//! forms is the testable stand-in for linear independence when `B` is
//! infinite.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt::Debug;
use std::hash::Hash;

use serde::Serialize;

use super::{build_hnn_extension_system, check_h_conditions, HnnError, HnnExtensionSpec, HnnLetter};
use crate::engine::irr_enumerate;
use crate::group::{Elem, FiniteGroup};
use crate::word::Word;

/// A group in which the letters of the extension system can be evaluated.
pub trait HnnModel {
    type Elem: Clone + Eq + Hash + Debug;

    fn identity(&self) -> Self::Elem;
    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn generator(&self, letter: HnnLetter) -> Self::Elem;

    fn evaluate(&self, letters: impl IntoIterator<Item = HnnLetter>) -> Self::Elem {
        letters
            .into_iter()
            .fold(self.identity(), |acc, l| self.mul(&acc, &self.generator(l)))
    }
}

/// `A × H × Z` with `t ↦ 1 ∈ Z`: the extension with trivial data when
/// `C = D = H` and `φ = id`.
#[derive(Clone, Debug)]
pub struct DirectProductModel {
    pub a: FiniteGroup,
    pub h: FiniteGroup,
}

impl HnnModel for DirectProductModel {
    type Elem = (Elem, Elem, i64);

    fn identity(&self) -> Self::Elem {
        (self.a.identity(), self.h.identity(), 0)
    }

    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        (self.a.mul(x.0, y.0), self.h.mul(x.1, y.1), x.2 + y.2)
    }

    fn generator(&self, letter: HnnLetter) -> Self::Elem {
        let (a, h) = (self.a.identity(), self.h.identity());
        match letter {
            HnnLetter::A(x) => (x, h, 0),
            HnnLetter::H(x) => (a, x, 0),
            HnnLetter::T => (a, h, 1),
            HnnLetter::TInv => (a, h, -1),
        }
    }
}

/// A syllable of a reduced word in `H * Z`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Syllable {
    H(Elem),
    T(i64),
}

/// `A × (H * Z)` with free-product elements as reduced syllable sequences:
/// the extension with trivial data when `C = D = {1}`.
#[derive(Clone, Debug)]
pub struct FreeProductModel {
    pub a: FiniteGroup,
    pub h: FiniteGroup,
}

impl FreeProductModel {
    fn push(&self, out: &mut Vec<Syllable>, s: &Syllable) {
        let merged = match (out.last(), s) {
            (Some(Syllable::H(x)), Syllable::H(y)) => Some(Syllable::H(self.h.mul(*x, *y))),
            (Some(Syllable::T(m)), Syllable::T(n)) => Some(Syllable::T(m + n)),
            _ => None,
        };
        match merged {
            Some(m) => {
                out.pop();
                let trivial = matches!(m, Syllable::H(x) if x == self.h.identity()) || m == Syllable::T(0);
                if !trivial {
                    out.push(m);
                }
            }
            None => out.push(s.clone()),
        }
    }
}

impl HnnModel for FreeProductModel {
    type Elem = (Elem, Vec<Syllable>);

    fn identity(&self) -> Self::Elem {
        (self.a.identity(), Vec::new())
    }

    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        let mut word = x.1.clone();
        for s in &y.1 {
            self.push(&mut word, s);
        }
        (self.a.mul(x.0, y.0), word)
    }

    fn generator(&self, letter: HnnLetter) -> Self::Elem {
        let e = self.a.identity();
        match letter {
            HnnLetter::A(x) => (x, vec![]),
            HnnLetter::H(x) => (e, vec![Syllable::H(x)]),
            HnnLetter::T => (e, vec![Syllable::T(1)]),
            HnnLetter::TInv => (e, vec![Syllable::T(-1)]),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct NormalFormReport {
    /// Normal forms of length at most the bound, rendered.
    pub words: Vec<String>,
    /// Distinct model values, equal to `words.len()` on success.
    pub distinct_values: usize,
}

/// Enumerates `Irr(S)` up to `max_len` and checks that the evaluation into
/// `model` is injective on it. Requires the exact extension conditions.
pub fn hnn_normal_forms<M: HnnModel>(
    espec: &HnnExtensionSpec,
    max_len: usize,
    model: &M,
) -> Result<NormalFormReport, HnnError> {
    if !check_h_conditions(espec).passed() {
        return Err(HnnError::ConditionsFail);
    }
    let es = build_hnn_extension_system(espec)?;
    let al = es.system.alphabet();
    let words: Vec<Word> = irr_enumerate(&es.system, max_len);
    let mut seen: HashMap<M::Elem, &Word> = HashMap::new();
    for w in &words {
        let value = model.evaluate(w.letters().iter().map(|&l| es.role(l)));
        if let Some(prev) = seen.insert(value, w) {
            return Err(HnnError::ModelCollision(al.render(prev), al.render(w)));
        }
    }
    Ok(NormalFormReport {
        distinct_values: seen.len(),
        words: words.iter().map(|w| al.render(w)).collect(),
    })
}

/// Number of elements of `model` at word length at most `radius` in the
/// given generators, by breadth-first search.
pub fn model_ball_size<M: HnnModel>(model: &M, generators: &[HnnLetter], radius: usize) -> usize {
    let gens: Vec<M::Elem> = generators.iter().map(|&g| model.generator(g)).collect();
    let mut seen = HashSet::from([model.identity()]);
    let mut frontier = VecDeque::from([(model.identity(), 0usize)]);
    while let Some((x, d)) = frontier.pop_front() {
        if d == radius {
            continue;
        }
        for g in &gens {
            let y = model.mul(&x, g);
            if seen.insert(y.clone()) {
                frontier.push_back((y, d + 1));
            }
        }
    }
    seen.len()
}
