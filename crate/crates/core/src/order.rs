//! Total orders on words.
//!
//! Three families share one comparison contract:
//!
//! * deg-lex: degree first, then lexicographic by letter rank;
//! * the tower order on `(A₁ ∪ Y)*`: words are split as `e₁ y₁ … e_t y_t e_{t+1}`
//!   with `eᵢ ∈ A₁*`, and compared by `(t, y₁ … y_t, e₁ … e_{t+1})`, the blocks
//!   by deg-lex. This order is monomial;
//! * the HNN order on `(A₁ ∪ H₁ ∪ {t, t⁻¹})*`: words are split at stable
//!   letters, segments are weighed like tower words with `H₁` in the role of
//!   `Y`, and a segment is compared by the `C`-order, `D`-order or absolute
//!   order on `H` depending on the stable letter that follows it. This order
//!   is total but not monomial.

use std::cmp::Ordering;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::{Elem, FiniteGroup, SubgroupWithCosets};
use crate::word::{Alphabet, Letter, LetterClass, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrderError {
    #[error("letter #{0} is outside the order's domain")]
    OutsideDomain(u32),
    #[error("letter `{0}` has class {1:?}, which this order does not rank")]
    WrongClass(String, LetterClass),
    #[error("ranking must be a permutation of 0..{0}")]
    BadRanking(usize),
    #[error("the absolute order must list every non-identity element of H exactly once")]
    BadAbsoluteOrder,
    #[error("exactly one letter each must play t and t⁻¹")]
    StableLetters,
}

/// How a letter participates in a tower or HNN order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Slot {
    Outside,
    /// Kernel letter with its rank in the deg-lex order on `A₁*`.
    A(u32),
    /// Quotient letter with its rank in `Y`.
    Y(u32),
    /// Base-group letter standing for an element of `H₁`.
    H(Elem),
    T,
    TInv,
}

/// Orders on `H` and the letter roles needed by the HNN order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HnnOrderData {
    slots: Vec<Slot>,
    /// Absolute rank per element of `H`; the identity is smallest.
    abs_rank: Vec<u32>,
    /// `(index of h_C, absolute rank of c_h)` per element.
    c_key: Vec<(u32, u32)>,
    /// `(index of h_D, absolute rank of d_h)` per element.
    d_key: Vec<(u32, u32)>,
}

impl HnnOrderData {
    /// `omega` lists `H₁` from smallest to largest. Coset indices come from
    /// the order in which `c` and `d` list their representatives.
    pub fn new(
        slots: Vec<Slot>,
        h: &FiniteGroup,
        omega: &[Elem],
        c: &SubgroupWithCosets,
        d: &SubgroupWithCosets,
    ) -> Result<Self, OrderError> {
        let mut abs_rank = vec![u32::MAX; h.order()];
        abs_rank[h.identity()] = 0;
        for (i, &e) in omega.iter().enumerate() {
            if e >= h.order() || e == h.identity() || abs_rank[e] != u32::MAX {
                return Err(OrderError::BadAbsoluteOrder);
            }
            abs_rank[e] = i as u32 + 1;
        }
        if abs_rank.contains(&u32::MAX) {
            return Err(OrderError::BadAbsoluteOrder);
        }
        let t_count = slots.iter().filter(|s| **s == Slot::T).count();
        let ti_count = slots.iter().filter(|s| **s == Slot::TInv).count();
        if t_count != 1 || ti_count != 1 {
            return Err(OrderError::StableLetters);
        }
        let key = |sub: &SubgroupWithCosets, g: Elem| {
            let (_, m) = sub.decompose(g);
            (sub.rep_index(g) as u32, abs_rank[m])
        };
        let c_key = h.elements().map(|g| key(c, g)).collect();
        let d_key = h.elements().map(|g| key(d, g)).collect();
        Ok(HnnOrderData {
            slots,
            abs_rank,
            c_key,
            d_key,
        })
    }

    pub fn slots(&self) -> &[Slot] {
        &self.slots
    }

    pub fn abs_rank(&self, h: Elem) -> u32 {
        self.abs_rank[h]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum OrderKind {
    DegLex { ranks: Vec<u32> },
    Tower { slots: Vec<Slot> },
    Hnn(Box<HnnOrderData>),
}

/// A total order on words over a fixed alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderSpec {
    kind: OrderKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum OrderVariant {
    DegLex,
    Tower,
    Hnn,
}

impl OrderSpec {
    /// Deg-lex with letters ranked by id.
    pub fn deg_lex(alphabet_len: usize) -> Self {
        OrderSpec {
            kind: OrderKind::DegLex {
                ranks: (0..alphabet_len as u32).collect(),
            },
        }
    }

    /// Deg-lex with an explicit rank per letter id.
    pub fn deg_lex_ranked(ranks: Vec<u32>) -> Result<Self, OrderError> {
        let mut sorted = ranks.clone();
        sorted.sort_unstable();
        if sorted.iter().enumerate().any(|(i, r)| *r != i as u32) {
            return Err(OrderError::BadRanking(ranks.len()));
        }
        Ok(OrderSpec {
            kind: OrderKind::DegLex { ranks },
        })
    }

    /// Tower order; every slot must be `A` or `Y`.
    pub fn tower(slots: Vec<Slot>) -> Result<Self, OrderError> {
        if let Some(i) = slots
            .iter()
            .position(|s| !matches!(s, Slot::A(_) | Slot::Y(_)))
        {
            return Err(OrderError::OutsideDomain(i as u32));
        }
        Ok(OrderSpec {
            kind: OrderKind::Tower { slots },
        })
    }

    /// Tower order ranking letters by declaration order within each class.
    pub fn tower_for(alphabet: &Alphabet) -> Result<Self, OrderError> {
        let mut a = 0;
        let mut y = 0;
        let mut slots = Vec::with_capacity(alphabet.len());
        for l in alphabet.letters() {
            slots.push(match alphabet.class(l) {
                LetterClass::A => {
                    a += 1;
                    Slot::A(a - 1)
                }
                LetterClass::Y => {
                    y += 1;
                    Slot::Y(y - 1)
                }
                other => return Err(OrderError::WrongClass(alphabet.name(l).into(), other)),
            });
        }
        Self::tower(slots)
    }

    pub fn hnn(data: HnnOrderData) -> Self {
        OrderSpec {
            kind: OrderKind::Hnn(Box::new(data)),
        }
    }

    pub fn variant(&self) -> OrderVariant {
        match self.kind {
            OrderKind::DegLex { .. } => OrderVariant::DegLex,
            OrderKind::Tower { .. } => OrderVariant::Tower,
            OrderKind::Hnn(_) => OrderVariant::Hnn,
        }
    }

    /// Deg-lex and tower orders are monomial; the HNN order is not.
    pub fn monomial_certified(&self) -> bool {
        !matches!(self.kind, OrderKind::Hnn(_))
    }

    pub fn domain_len(&self) -> usize {
        match &self.kind {
            OrderKind::DegLex { ranks } => ranks.len(),
            OrderKind::Tower { slots } => slots.len(),
            OrderKind::Hnn(d) => d.slots.len(),
        }
    }

    /// Letter ranks of a deg-lex order.
    pub fn deg_lex_ranks(&self) -> Option<&[u32]> {
        match &self.kind {
            OrderKind::DegLex { ranks } => Some(ranks),
            _ => None,
        }
    }

    pub fn hnn_data(&self) -> Option<&HnnOrderData> {
        match &self.kind {
            OrderKind::Hnn(d) => Some(d),
            _ => None,
        }
    }

    pub fn check_word(&self, w: &Word) -> Result<(), OrderError> {
        let n = self.domain_len();
        for l in w.letters() {
            if l.index() >= n {
                return Err(OrderError::OutsideDomain(l.0));
            }
            let outside = match &self.kind {
                OrderKind::DegLex { .. } => false,
                OrderKind::Tower { slots } => slots[l.index()] == Slot::Outside,
                OrderKind::Hnn(d) => d.slots[l.index()] == Slot::Outside,
            };
            if outside {
                return Err(OrderError::OutsideDomain(l.0));
            }
        }
        Ok(())
    }

    pub fn try_compare(&self, u: &Word, v: &Word) -> Result<Ordering, OrderError> {
        self.check_word(u)?;
        self.check_word(v)?;
        Ok(self.compare(u, v))
    }

    /// Compares two words already known to lie in the domain.
    ///
    /// Panics on letters outside the domain; use [`OrderSpec::try_compare`]
    /// for unchecked input.
    pub fn compare(&self, u: &Word, v: &Word) -> Ordering {
        if u == v {
            return Ordering::Equal;
        }
        match &self.kind {
            OrderKind::DegLex { ranks } => deg_lex(u.letters(), v.letters(), |l| ranks[l.index()]),
            OrderKind::Tower { slots } => {
                let wu = tower_weight_in(slots, u);
                let wv = tower_weight_in(slots, v);
                compare_tower(slots, &wu, &wv)
            }
            OrderKind::Hnn(data) => {
                let wu = hnn_weight_in(data, u);
                let wv = hnn_weight_in(data, v);
                compare_hnn(data, &wu, &wv)
            }
        }
    }

    pub fn greater(&self, u: &Word, v: &Word) -> bool {
        self.compare(u, v) == Ordering::Greater
    }

    pub fn less(&self, u: &Word, v: &Word) -> bool {
        self.compare(u, v) == Ordering::Less
    }

    /// Tower weight; `None` unless this is a tower order.
    pub fn tower_weight(&self, w: &Word) -> Option<TowerWeight> {
        match &self.kind {
            OrderKind::Tower { slots } => Some(tower_weight_in(slots, w)),
            _ => None,
        }
    }

    /// HNN weight; `None` unless this is an HNN order.
    pub fn hnn_weight(&self, w: &Word) -> Option<HnnWeight> {
        match &self.kind {
            OrderKind::Hnn(d) => Some(hnn_weight_in(d, w)),
            _ => None,
        }
    }
}

fn deg_lex(u: &[Letter], v: &[Letter], rank: impl Fn(Letter) -> u32) -> Ordering {
    u.len().cmp(&v.len()).then_with(|| {
        u.iter()
            .zip(v)
            .map(|(a, b)| rank(*a).cmp(&rank(*b)))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    })
}

fn a_rank(slots: &[Slot], l: Letter) -> u32 {
    match slots[l.index()] {
        Slot::A(r) => r,
        _ => unreachable!("block letters are kernel letters"),
    }
}

/// `d = e₁ y₁ … e_t y_t e_{t+1}` with `eᵢ` kernel-letter blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerWeight {
    pub ys: Vec<Letter>,
    pub blocks: Vec<Word>,
}

impl TowerWeight {
    pub fn t(&self) -> usize {
        self.ys.len()
    }

    pub fn reassemble(&self) -> Word {
        let mut out = Word::empty();
        for (i, block) in self.blocks.iter().enumerate() {
            for l in block.letters() {
                out.push(*l);
            }
            if let Some(y) = self.ys.get(i) {
                out.push(*y);
            }
        }
        out
    }
}

/// Splits a word into kernel blocks around the separator letters.
fn split_blocks(w: &Word, is_separator: impl Fn(Letter) -> bool) -> (Vec<Letter>, Vec<Word>) {
    let mut seps = Vec::new();
    let mut blocks = vec![Word::empty()];
    for &l in w.letters() {
        if is_separator(l) {
            seps.push(l);
            blocks.push(Word::empty());
        } else {
            blocks.last_mut().unwrap().push(l);
        }
    }
    (seps, blocks)
}

fn tower_weight_in(slots: &[Slot], w: &Word) -> TowerWeight {
    let (ys, blocks) = split_blocks(w, |l| matches!(slots[l.index()], Slot::Y(_)));
    TowerWeight { ys, blocks }
}

/// Splits a tower word. Free function form of [`OrderSpec::tower_weight`].
pub fn tower_weight(ord: &OrderSpec, w: &Word) -> Option<TowerWeight> {
    ord.tower_weight(w)
}

fn compare_tower(slots: &[Slot], u: &TowerWeight, v: &TowerWeight) -> Ordering {
    let y_rank = |l: &Letter| match slots[l.index()] {
        Slot::Y(r) => r,
        _ => unreachable!(),
    };
    u.t()
        .cmp(&v.t())
        .then_with(|| u.ys.iter().map(y_rank).cmp(v.ys.iter().map(y_rank)))
        .then_with(|| {
            u.blocks
                .iter()
                .zip(&v.blocks)
                .map(|(a, b)| deg_lex(a.letters(), b.letters(), |l| a_rank(slots, l)))
                .find(|o| o.is_ne())
                .unwrap_or(Ordering::Equal)
        })
}

/// One `(A₁ ∪ H₁)*` segment: `e₁ h₁ … e_n h_n e_{n+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SegmentWeight {
    pub hs: Vec<Elem>,
    pub h_letters: Vec<Letter>,
    pub blocks: Vec<Word>,
}

impl SegmentWeight {
    pub fn n(&self) -> usize {
        self.hs.len()
    }
}

/// `u = u₁ t^{ε₁} … u_k t^{ε_k} u_{k+1}` with a weight per segment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HnnWeight {
    /// `+1` for `t`, `-1` for `t⁻¹`.
    pub exponents: Vec<i8>,
    pub stable_letters: Vec<Letter>,
    pub segments: Vec<SegmentWeight>,
}

impl HnnWeight {
    pub fn k(&self) -> usize {
        self.exponents.len()
    }

    pub fn reassemble(&self) -> Word {
        let mut out = Word::empty();
        for (i, seg) in self.segments.iter().enumerate() {
            for (j, block) in seg.blocks.iter().enumerate() {
                for l in block.letters() {
                    out.push(*l);
                }
                if let Some(h) = seg.h_letters.get(j) {
                    out.push(*h);
                }
            }
            if let Some(t) = self.stable_letters.get(i) {
                out.push(*t);
            }
        }
        out
    }
}

fn hnn_weight_in(data: &HnnOrderData, w: &Word) -> HnnWeight {
    let slots = &data.slots;
    let (stable_letters, raw_segments) =
        split_blocks(w, |l| matches!(slots[l.index()], Slot::T | Slot::TInv));
    let exponents = stable_letters
        .iter()
        .map(|l| if slots[l.index()] == Slot::T { 1 } else { -1 })
        .collect();
    let segments = raw_segments
        .iter()
        .map(|seg| {
            let (h_letters, blocks) = split_blocks(seg, |l| matches!(slots[l.index()], Slot::H(_)));
            let hs = h_letters
                .iter()
                .map(|l| match slots[l.index()] {
                    Slot::H(e) => e,
                    _ => unreachable!(),
                })
                .collect();
            SegmentWeight {
                hs,
                h_letters,
                blocks,
            }
        })
        .collect();
    HnnWeight {
        exponents,
        stable_letters,
        segments,
    }
}

/// Splits a word at stable letters. Free function form of
/// [`OrderSpec::hnn_weight`].
pub fn hnn_weight(ord: &OrderSpec, w: &Word) -> Option<HnnWeight> {
    ord.hnn_weight(w)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum SegmentMode {
    Absolute,
    COrder,
    DOrder,
}

fn compare_segment(data: &HnnOrderData, mode: SegmentMode, u: &SegmentWeight, v: &SegmentWeight) -> Ordering {
    let n = u.n();
    let by_n = n.cmp(&v.n());
    if by_n.is_ne() {
        return by_n;
    }
    for i in 0..n {
        let (a, b) = (u.hs[i], v.hs[i]);
        let o = if i + 1 < n || mode == SegmentMode::Absolute {
            data.abs_rank[a].cmp(&data.abs_rank[b])
        } else if mode == SegmentMode::COrder {
            data.c_key[a].cmp(&data.c_key[b])
        } else {
            data.d_key[a].cmp(&data.d_key[b])
        };
        if o.is_ne() {
            return o;
        }
    }
    u.blocks
        .iter()
        .zip(&v.blocks)
        .map(|(a, b)| deg_lex(a.letters(), b.letters(), |l| a_rank(&data.slots, l)))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal)
}

fn compare_hnn(data: &HnnOrderData, u: &HnnWeight, v: &HnnWeight) -> Ordering {
    let by_k = u.k().cmp(&v.k());
    if by_k.is_ne() {
        return by_k;
    }
    // t > t⁻¹
    let by_exp = u.exponents.cmp(&v.exponents);
    if by_exp.is_ne() {
        return by_exp;
    }
    for (i, (su, sv)) in u.segments.iter().zip(&v.segments).enumerate() {
        let mode = match u.exponents.get(i) {
            Some(1) => SegmentMode::COrder,
            Some(_) => SegmentMode::DOrder,
            None => SegmentMode::Absolute,
        };
        let o = compare_segment(data, mode, su, sv);
        if o.is_ne() {
            return o;
        }
    }
    Ordering::Equal
}

/// A violation of `u > v ⇒ c·u·d > c·v·d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialWitness {
    pub greater: Word,
    pub smaller: Word,
    pub left: Word,
    pub right: Word,
}

/// Evidence gathered by [`certify_monomial`]. A pass is evidence, not proof.
#[derive(Clone, Debug)]
pub struct MonomialReport {
    pub variant: OrderVariant,
    pub exhaustive_words: usize,
    pub exhaustive_max_len: usize,
    pub context_max_len: usize,
    pub random_trials: usize,
    /// Antisymmetry, totality and transitivity on the exhaustive word set.
    pub total_order_ok: bool,
    pub monomial_ok: bool,
    pub order_witness: Option<(Word, Word)>,
    pub witness: Option<MonomialWitness>,
}

impl MonomialReport {
    pub fn passed(&self) -> bool {
        self.total_order_ok && self.monomial_ok
    }
}

/// All words over `letters` of length at most `max_len`, shortest first.
pub fn words_up_to(letters: &[Letter], max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut frontier = vec![Word::empty()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(frontier.len() * letters.len());
        for w in &frontier {
            for &l in letters {
                let mut x = w.clone();
                x.push(l);
                next.push(x);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

pub fn random_word<R: Rng + ?Sized>(rng: &mut R, letters: &[Letter], max_len: usize) -> Word {
    if letters.is_empty() {
        return Word::empty();
    }
    let len = rng.gen_range(0..=max_len);
    (0..len)
        .map(|_| letters[rng.gen_range(0..letters.len())])
        .collect()
}

/// Checks the order axioms exhaustively on all words of bounded length, then
/// compatibility with two-sided multiplication exhaustively on neighbouring
/// pairs of that set (sufficient once the set is linearly ordered) and on
/// `trials` random longer cases. For a non-monomial order the first witness
/// found is reported.
pub fn certify_monomial<R: Rng + ?Sized>(
    ord: &OrderSpec,
    letters: &[Letter],
    trials: usize,
    rng: &mut R,
) -> MonomialReport {
    let exhaustive_max_len = match letters.len() {
        0..=3 => 4,
        4..=6 => 3,
        _ => 2,
    };
    let context_max_len = if letters.len() <= 4 { 2 } else { 1 };
    let mut words = words_up_to(letters, exhaustive_max_len);
    words.sort_by(|u, v| ord.compare(u, v));

    let mut order_witness = None;
    'outer: for i in 0..words.len() {
        if ord.compare(&words[i], &words[i]) != Ordering::Equal {
            order_witness = Some((words[i].clone(), words[i].clone()));
            break;
        }
        for j in i + 1..words.len() {
            let fwd = ord.compare(&words[i], &words[j]);
            let back = ord.compare(&words[j], &words[i]);
            if fwd != Ordering::Less || back != Ordering::Greater {
                order_witness = Some((words[i].clone(), words[j].clone()));
                break 'outer;
            }
        }
    }

    let contexts = words_up_to(letters, context_max_len);
    let mut witness = None;
    'pairs: for pair in words.windows(2) {
        let (small, big) = (&pair[0], &pair[1]);
        for c in &contexts {
            for d in &contexts {
                if !ord.greater(&big.wrap(c, d), &small.wrap(c, d)) {
                    witness = Some(MonomialWitness {
                        greater: big.clone(),
                        smaller: small.clone(),
                        left: c.clone(),
                        right: d.clone(),
                    });
                    break 'pairs;
                }
            }
        }
    }
    let mut done = 0;
    while witness.is_none() && done < trials {
        done += 1;
        let u = random_word(rng, letters, 6);
        let v = random_word(rng, letters, 6);
        if u == v {
            continue;
        }
        let (big, small) = if ord.greater(&u, &v) { (u, v) } else { (v, u) };
        let c = random_word(rng, letters, 3);
        let d = random_word(rng, letters, 3);
        if !ord.greater(&big.wrap(&c, &d), &small.wrap(&c, &d)) {
            witness = Some(MonomialWitness {
                greater: big,
                smaller: small,
                left: c,
                right: d,
            });
        }
    }
    MonomialReport {
        variant: ord.variant(),
        exhaustive_words: words.len(),
        exhaustive_max_len,
        context_max_len,
        random_trials: done,
        total_order_ok: order_witness.is_none(),
        monomial_ok: witness.is_none(),
        order_witness,
        witness,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn tower_ay() -> (Alphabet, OrderSpec) {
        let al = Alphabet::from_letters([
            ("a", LetterClass::A),
            ("b", LetterClass::A),
            ("c", LetterClass::A),
            ("y", LetterClass::Y),
            ("z", LetterClass::Y),
        ])
        .unwrap();
        let ord = OrderSpec::tower_for(&al).unwrap();
        (al, ord)
    }

    #[test]
    fn deg_lex_examples() {
        let al = Alphabet::uniform(["x", "y"], LetterClass::Y).unwrap();
        let ord = OrderSpec::deg_lex(2);
        let w = |s| al.parse_word(s).unwrap();
        assert_eq!(ord.compare(&w("x y"), &w("y x")), Ordering::Less);
        assert_eq!(ord.compare(&w("x x x"), &w("y y")), Ordering::Greater);
        assert_eq!(ord.compare(&w("x y"), &w("x y")), Ordering::Equal);
    }

    #[test]
    fn tower_kernel_letter_before_quotient_letter_is_greater() {
        let (al, ord) = tower_ay();
        let w = |s: &str| al.parse_word(s).unwrap();
        for a in ["a", "b", "c"] {
            for a2 in ["a", "b", "c"] {
                let u = w(&format!("{a} y"));
                let v = w(&format!("y {a2}"));
                assert_eq!(ord.compare(&u, &v), Ordering::Greater, "{a} y vs y {a2}");
            }
        }
        // more quotient letters always wins
        assert!(ord.greater(&w("y"), &w("a a a a a")));
        assert!(ord.greater(&w("z"), &w("y c c")));
    }

    #[test]
    fn tower_weight_examples() {
        let (al, ord) = tower_ay();
        let w = |s| al.parse_word(s).unwrap();
        let tw = ord.tower_weight(&w("a y b c")).unwrap();
        assert_eq!(tw.t(), 1);
        assert_eq!(tw.ys, vec![al.lookup("y").unwrap()]);
        assert_eq!(tw.blocks, vec![w("a"), w("b c")]);
        let tw = ord.tower_weight(&Word::empty()).unwrap();
        assert_eq!((tw.t(), tw.blocks.clone()), (0, vec![Word::empty()]));
        let tw = ord.tower_weight(&w("y z")).unwrap();
        assert_eq!(tw.t(), 2);
        assert_eq!(tw.blocks, vec![Word::empty(); 3]);
        assert_eq!(tw.reassemble(), w("y z"));
    }

    fn z4_hnn() -> (Alphabet, OrderSpec) {
        // H = Z4, C = D = {1, h2}, reps {1, h}
        let h = FiniteGroup::cyclic(4, "h");
        let c = SubgroupWithCosets::new(&h, vec![0, 2], vec![0, 1]).unwrap();
        let al = Alphabet::from_letters([
            ("a", LetterClass::A),
            ("h", LetterClass::H),
            ("h2", LetterClass::H),
            ("h3", LetterClass::H),
            ("t", LetterClass::T),
            ("T", LetterClass::TInv),
        ])
        .unwrap();
        let slots = vec![Slot::A(0), Slot::H(1), Slot::H(2), Slot::H(3), Slot::T, Slot::TInv];
        let data = HnnOrderData::new(slots, &h, &[1, 2, 3], &c, &c).unwrap();
        (al, OrderSpec::hnn(data))
    }

    #[test]
    fn hnn_stable_letter_ranks_above_inverse() {
        let (al, ord) = z4_hnn();
        let w = |s| al.parse_word(s).unwrap();
        assert_eq!(ord.compare(&w("t"), &w("T")), Ordering::Greater);
        // h t vs h_C t φ(c_h): h3 = h · h2
        assert!(ord.greater(&w("h3 t"), &w("h t h2")));
        assert!(ord.greater(&w("h2 t"), &w("t h2")));
        assert!(!ord.monomial_certified());
    }

    #[test]
    fn hnn_weight_examples() {
        let (al, ord) = z4_hnn();
        let w = |s| al.parse_word(s).unwrap();
        let hw = ord.hnn_weight(&w("h t h2 T")).unwrap();
        assert_eq!(hw.exponents, vec![1, -1]);
        assert_eq!(hw.segments.len(), 3);
        assert_eq!(hw.segments[0].hs, vec![1]);
        assert_eq!(hw.segments[1].hs, vec![2]);
        assert_eq!(hw.segments[2].n(), 0);
        assert_eq!(hw.reassemble(), w("h t h2 T"));
        let hw = ord.hnn_weight(&w("a h")).unwrap();
        assert_eq!((hw.k(), hw.segments[0].n()), (0, 1));
        let hw = ord.hnn_weight(&w("t T")).unwrap();
        assert_eq!(hw.k(), 2);
        assert!(hw.segments.iter().all(|s| s.n() == 0 && s.blocks == vec![Word::empty()]));
    }

    #[test]
    fn certify_reports() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let al = Alphabet::uniform(["x", "y", "z"], LetterClass::Y).unwrap();
        let letters: Vec<Letter> = al.letters().collect();
        let r = certify_monomial(&OrderSpec::deg_lex(3), &letters, 1000, &mut rng);
        assert!(r.passed());

        let (al, ord) = tower_ay();
        let letters: Vec<Letter> = al.letters().collect();
        assert!(certify_monomial(&ord, &letters, 1000, &mut rng).passed());

        let (al, ord) = z4_hnn();
        let letters: Vec<Letter> = al.letters().collect();
        let r = certify_monomial(&ord, &letters, 1000, &mut rng);
        assert!(r.total_order_ok);
        let wit = r.witness.expect("HNN order is not monomial");
        assert!(ord.greater(&wit.greater, &wit.smaller));
        assert!(!ord.greater(
            &wit.greater.wrap(&wit.left, &wit.right),
            &wit.smaller.wrap(&wit.left, &wit.right)
        ));
    }

    #[test]
    fn outside_domain_is_an_error() {
        let ord = OrderSpec::deg_lex(2);
        assert_eq!(
            ord.try_compare(&Word::from_ids(&[0]), &Word::from_ids(&[5])),
            Err(OrderError::OutsideDomain(5))
        );
    }
}
