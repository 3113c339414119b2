//! Letters, words and polynomials of the free associative algebra over the
//! rationals.
//!
//! Words are flat sequences of [`Letter`] ids. They do not carry a reference to
//! their [`Alphabet`]; membership is validated once, when a word enters a
//! [`crate::engine::RewriteSystem`] or an order, and every operation afterwards
//! is infallible.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Exact rational coefficient.
pub type Scalar = BigRational;

pub fn scalar(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("duplicate letter name `{0}`")]
    DuplicateLetter(String),
    #[error("`1` is reserved for the empty word and cannot name a letter")]
    IdentityLetter,
    #[error("unknown letter `{0}`")]
    UnknownLetter(String),
    #[error("letter id {0} is outside the alphabet (size {1})")]
    ForeignLetter(u32, usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Letter(pub u32);

impl Letter {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Role a letter plays in the constructions: generators of the kernel group
/// `A`, generators of the quotient, elements of an HNN base group, or the
/// stable letter and its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LetterClass {
    A,
    Y,
    H,
    T,
    TInv,
}

/// Named letters with classes. Declaration order is the default ranking.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
    classes: Vec<LetterClass>,
    index: HashMap<String, Letter>,
}

impl Alphabet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_letters<S: AsRef<str>>(
        letters: impl IntoIterator<Item = (S, LetterClass)>,
    ) -> Result<Self, WordError> {
        let mut alphabet = Self::new();
        for (name, class) in letters {
            alphabet.push(name.as_ref(), class)?;
        }
        Ok(alphabet)
    }

    /// Every letter gets the same class.
    pub fn uniform<S: AsRef<str>>(
        names: impl IntoIterator<Item = S>,
        class: LetterClass,
    ) -> Result<Self, WordError> {
        Self::from_letters(names.into_iter().map(|n| (n, class)))
    }

    pub fn push(&mut self, name: &str, class: LetterClass) -> Result<Letter, WordError> {
        if name == "1" {
            return Err(WordError::IdentityLetter);
        }
        if self.index.contains_key(name) {
            return Err(WordError::DuplicateLetter(name.to_string()));
        }
        let letter = Letter(self.names.len() as u32);
        self.names.push(name.to_string());
        self.classes.push(class);
        self.index.insert(name.to_string(), letter);
        Ok(letter)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.names.len() as u32).map(Letter)
    }

    pub fn letters_of(&self, class: LetterClass) -> Vec<Letter> {
        self.letters().filter(|l| self.class(*l) == class).collect()
    }

    pub fn name(&self, letter: Letter) -> &str {
        &self.names[letter.index()]
    }

    pub fn class(&self, letter: Letter) -> LetterClass {
        self.classes[letter.index()]
    }

    pub fn lookup(&self, name: &str) -> Option<Letter> {
        self.index.get(name).copied()
    }

    pub fn contains(&self, letter: Letter) -> bool {
        letter.index() < self.names.len()
    }

    pub fn check_word(&self, word: &Word) -> Result<(), WordError> {
        match word.letters().iter().find(|l| !self.contains(**l)) {
            Some(l) => Err(WordError::ForeignLetter(l.0, self.len())),
            None => Ok(()),
        }
    }

    /// Parses whitespace-separated letter names; `1` alone is the empty word.
    pub fn parse_word(&self, text: &str) -> Result<Word, WordError> {
        let mut letters = Vec::new();
        for token in text.split_whitespace() {
            if token == "1" {
                continue;
            }
            let letter = self
                .lookup(token)
                .ok_or_else(|| WordError::UnknownLetter(token.to_string()))?;
            letters.push(letter);
        }
        Ok(Word(letters))
    }

    pub fn render(&self, word: &Word) -> String {
        if word.is_empty() {
            return "1".to_string();
        }
        word.letters()
            .iter()
            .map(|l| self.name(*l))
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn render_poly(&self, poly: &Polynomial) -> String {
        poly.render(|w| self.render(w))
    }
}

/// An element of the free monoid; the empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn single(letter: Letter) -> Self {
        Word(vec![letter])
    }

    pub fn from_ids(ids: &[u32]) -> Self {
        Word(ids.iter().map(|&i| Letter(i)).collect())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    /// Length (degree) of the word.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    /// `left · self · right`
    pub fn wrap(&self, left: &Word, right: &Word) -> Word {
        let mut letters = Vec::with_capacity(left.len() + self.len() + right.len());
        letters.extend_from_slice(&left.0);
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(&right.0);
        Word(letters)
    }

    pub fn push(&mut self, letter: Letter) {
        self.0.push(letter);
    }

    pub fn slice(&self, start: usize, end: usize) -> Word {
        Word(self.0[start..end].to_vec())
    }

    pub fn prefix(&self, len: usize) -> Word {
        self.slice(0, len)
    }

    pub fn suffix_from(&self, start: usize) -> Word {
        self.slice(start, self.len())
    }

    /// Start positions of every occurrence of `pattern` as a subword.
    pub fn occurrences(&self, pattern: &Word) -> Vec<usize> {
        if pattern.len() > self.len() {
            return Vec::new();
        }
        if pattern.is_empty() {
            return (0..=self.len()).collect();
        }
        self.0
            .windows(pattern.len())
            .enumerate()
            .filter(|(_, w)| *w == pattern.letters())
            .map(|(i, _)| i)
            .collect()
    }

    pub fn find(&self, pattern: &Word) -> Option<usize> {
        if pattern.is_empty() {
            return Some(0);
        }
        if pattern.len() > self.len() {
            return None;
        }
        self.0
            .windows(pattern.len())
            .position(|w| w == pattern.letters())
    }

    pub fn contains_subword(&self, pattern: &Word) -> bool {
        self.find(pattern).is_some()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "1");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "#{}", l.0)?;
        }
        Ok(())
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

/// A finite formal sum of words with nonzero rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    terms: BTreeMap<Word, Scalar>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Word::empty())
    }

    pub fn monomial(word: Word) -> Self {
        Self::term(word, Scalar::one())
    }

    pub fn term(word: Word, coeff: Scalar) -> Self {
        let mut p = Self::zero();
        p.add_term(word, coeff);
        p
    }

    /// The relation `lhs = rhs` read as the polynomial `lhs - rhs`.
    pub fn binomial(lhs: Word, rhs: Word) -> Self {
        let mut p = Self::monomial(lhs);
        p.add_term(rhs, -Scalar::one());
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Word, Scalar)>) -> Self {
        let mut p = Self::zero();
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn words(&self) -> impl Iterator<Item = &Word> {
        self.terms.keys()
    }

    pub fn coeff(&self, word: &Word) -> Scalar {
        self.terms.get(word).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, word: Word, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(word);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &Polynomial) {
        for (w, c) in &other.terms {
            self.add_term(w.clone(), c.clone());
        }
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out.add_scaled(other, &-Scalar::one(), &Word::empty(), &Word::empty());
        out
    }

    /// `self += coeff · left · other · right`
    pub fn add_scaled(&mut self, other: &Polynomial, coeff: &Scalar, left: &Word, right: &Word) {
        for (w, c) in &other.terms {
            self.add_term(w.wrap(left, right), c * coeff);
        }
    }

    pub fn scale(&self, coeff: &Scalar) -> Polynomial {
        if coeff.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), c * coeff))
                .collect(),
        }
    }

    pub fn neg(&self) -> Polynomial {
        self.scale(&-Scalar::one())
    }

    /// `left · self · right`, coefficients unchanged.
    pub fn mul_context(&self, left: &Word, right: &Word) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.wrap(left, right), c.clone()))
                .collect(),
        }
    }

    /// Leading word and its coefficient with respect to `cmp`. `None` for zero.
    pub fn leading_by<F>(&self, mut cmp: F) -> Option<(&Word, &Scalar)>
    where
        F: FnMut(&Word, &Word) -> std::cmp::Ordering,
    {
        let mut best: Option<(&Word, &Scalar)> = None;
        for (w, c) in &self.terms {
            best = match best {
                Some((bw, bc)) if cmp(w, bw) != std::cmp::Ordering::Greater => Some((bw, bc)),
                _ => Some((w, c)),
            };
        }
        best
    }

    pub fn max_degree(&self) -> usize {
        self.terms.keys().map(Word::len).max().unwrap_or(0)
    }

    /// Terms are listed by descending degree, then descending word.
    pub fn render<F: Fn(&Word) -> String>(&self, word_name: F) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(u, _), (v, _)| v.len().cmp(&u.len()).then_with(|| v.cmp(u)));
        for (i, (w, c)) in terms.into_iter().enumerate() {
            let negative = c.is_negative();
            let magnitude = c.abs();
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            if magnitude.is_one() {
                out.push_str(&word_name(w));
            } else if w.is_empty() {
                out.push_str(&magnitude.to_string());
            } else {
                out.push_str(&format!("{}·{}", magnitude, word_name(w)));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy() -> Alphabet {
        Alphabet::uniform(["x", "y", "a"], LetterClass::Y).unwrap()
    }

    #[test]
    fn concat_examples() {
        let al = xy();
        let w = |s| al.parse_word(s).unwrap();
        assert_eq!(w("x y").concat(&w("x")), w("x y x"));
        assert_eq!(w("1").concat(&w("x")), w("x"));
        let abcd = Alphabet::uniform(["a", "b", "c", "d"], LetterClass::A).unwrap();
        let joined = abcd
            .parse_word("a b")
            .unwrap()
            .concat(&abcd.parse_word("c d").unwrap());
        assert_eq!(abcd.render(&joined), "a b c d");
        assert_eq!(joined.len(), 4);
    }

    #[test]
    fn poly_add_examples() {
        let al = xy();
        let w = |s| al.parse_word(s).unwrap();
        let x_minus_1 = Polynomial::binomial(w("x"), w("1"));
        let one_minus_x = Polynomial::binomial(w("1"), w("x"));
        assert!(x_minus_1.add(&one_minus_x).is_zero());

        let x2 = Polynomial::monomial(w("x x"));
        assert_eq!(x2.add(&x2), Polynomial::term(w("x x"), scalar(2)));

        let f = Polynomial::binomial(w("x x"), w("a"));
        let g = Polynomial::binomial(w("a"), w("x"));
        assert_eq!(f.add(&g), Polynomial::binomial(w("x x"), w("x")));
    }

    #[test]
    fn mul_context_examples() {
        let al = xy();
        let w = |s| al.parse_word(s).unwrap();
        let s = Polynomial::binomial(w("y"), w("1"));
        assert_eq!(
            s.mul_context(&w("x"), &w("1")),
            Polynomial::binomial(w("x y"), w("x"))
        );
        assert_eq!(s.mul_context(&Word::empty(), &Word::empty()), s);
        let s = Polynomial::binomial(w("x x"), w("a"));
        assert_eq!(
            s.mul_context(&w("y"), &w("x")),
            Polynomial::binomial(w("y x x x"), w("y a x"))
        );
    }

    #[test]
    fn identity_cannot_be_a_letter() {
        assert_eq!(
            Alphabet::uniform(["1"], LetterClass::A),
            Err(WordError::IdentityLetter)
        );
        assert!(matches!(
            Alphabet::uniform(["x", "x"], LetterClass::A),
            Err(WordError::DuplicateLetter(_))
        ));
    }

    #[test]
    fn occurrences_and_render() {
        let al = xy();
        let w = al.parse_word("x x x").unwrap();
        assert_eq!(w.occurrences(&al.parse_word("x x").unwrap()), vec![0, 1]);
        assert_eq!(al.render(&Word::empty()), "1");
        let p = Polynomial::binomial(al.parse_word("x y").unwrap(), Word::empty());
        assert_eq!(al.render_poly(&p), "x y - 1");
        assert!(al.check_word(&Word::from_ids(&[7])).is_err());
    }
}
