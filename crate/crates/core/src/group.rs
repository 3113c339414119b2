//! Finite groups given by Cayley tables, their automorphisms, subgroups with
//! chosen left-coset representatives, partial isomorphisms, and a brute-force
//! scan of extension data used as an oracle for the rewriting route.

use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::engine::{EngineError, RewriteSystem};
use crate::order::OrderSpec;
use crate::word::{Alphabet, LetterClass, Polynomial, Word, WordError};

/// Index of a group element in its table.
pub type Elem = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("group table must be square and nonempty")]
    NotSquare,
    #[error("row {0} is not a permutation of the elements")]
    NotLatin(usize),
    #[error("element `{0}` is not a two-sided identity")]
    BadIdentity(String),
    #[error("associativity fails at ({0}, {1}, {2})")]
    NotAssociative(String, String, String),
    #[error("duplicate element name `{0}`")]
    DuplicateName(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("map is not a bijection of the group")]
    NotBijective,
    #[error("map does not fix the identity")]
    MovesIdentity,
    #[error("map is not a homomorphism: f({0}·{1}) != f({0})·f({1})")]
    NotHomomorphic(String, String),
    #[error("subset is not a subgroup")]
    NotSubgroup,
    #[error("coset representatives are inconsistent: {0}")]
    BadCosets(String),
    #[error("isomorphism must map the whole of C onto D")]
    BadIsomorphism,
    #[error("search space of {0} candidates exceeds the guard {1}")]
    GuardExceeded(u128, u128),
    #[error("automorphisms are only enumerated for groups of order <= 8 (got {0})")]
    TooLargeForAut(usize),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Engine(#[from] Box<EngineError>),
}

/// A finite group stored as its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteGroup {
    names: Vec<String>,
    table: Vec<Vec<Elem>>,
    identity: Elem,
    inverses: Vec<Elem>,
}

impl FiniteGroup {
    /// Validates the Latin-square, identity and (exhaustively, for order at
    /// most 64) associativity laws.
    pub fn from_table(names: Vec<String>, table: Vec<Vec<Elem>>) -> Result<Self, GroupError> {
        let n = names.len();
        if n == 0 || table.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(GroupError::NotSquare);
        }
        let mut seen = BTreeSet::new();
        for name in &names {
            if !seen.insert(name.clone()) {
                return Err(GroupError::DuplicateName(name.clone()));
            }
        }
        for (i, row) in table.iter().enumerate() {
            let distinct: BTreeSet<_> = row.iter().copied().collect();
            if distinct.len() != n || distinct.iter().any(|&x| x >= n) {
                return Err(GroupError::NotLatin(i));
            }
        }
        for c in 0..n {
            let distinct: BTreeSet<_> = table.iter().map(|r| r[c]).collect();
            if distinct.len() != n {
                return Err(GroupError::NotLatin(c));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| GroupError::BadIdentity(names[0].clone()))?;
        if n <= 64 {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if table[table[a][b]][c] != table[a][table[b][c]] {
                            return Err(GroupError::NotAssociative(
                                names[a].clone(),
                                names[b].clone(),
                                names[c].clone(),
                            ));
                        }
                    }
                }
            }
        }
        let inverses = (0..n)
            .map(|a| (0..n).find(|&b| table[a][b] == identity).unwrap())
            .collect();
        Ok(FiniteGroup {
            names,
            table,
            identity,
            inverses,
        })
    }

    /// The cyclic group of order `n`, elements `1, g, g2, …`.
    pub fn cyclic(n: usize, generator: &str) -> Self {
        assert!(n >= 1);
        let names = (0..n)
            .map(|k| match k {
                0 => "1".to_string(),
                1 => generator.to_string(),
                _ => format!("{generator}{k}"),
            })
            .collect();
        let table = (0..n)
            .map(|i| (0..n).map(|j| (i + j) % n).collect())
            .collect();
        Self::from_table(names, table).expect("cyclic table is a group")
    }

    pub fn trivial() -> Self {
        Self::cyclic(1, "g")
    }

    /// `{1, a, b, c}` with every non-identity element of order two.
    pub fn klein_four() -> Self {
        let names = ["1", "a", "b", "c"].map(String::from).to_vec();
        let table = (0..4).map(|i| (0..4).map(|j| i ^ j).collect()).collect();
        Self::from_table(names, table).expect("Klein four table is a group")
    }

    /// Symmetric group on three points, elements named by cycle notation.
    pub fn symmetric3() -> Self {
        let perms: [[usize; 3]; 6] = [
            [0, 1, 2],
            [1, 0, 2],
            [0, 2, 1],
            [2, 1, 0],
            [1, 2, 0],
            [2, 0, 1],
        ];
        let names = ["1", "s", "t", "u", "r", "r2"].map(String::from).to_vec();
        let compose = |p: &[usize; 3], q: &[usize; 3]| -> [usize; 3] {
            // apply p then q
            [q[p[0]], q[p[1]], q[p[2]]]
        };
        let table = perms
            .iter()
            .map(|p| {
                perms
                    .iter()
                    .map(|q| {
                        let r = compose(p, q);
                        perms.iter().position(|x| *x == r).unwrap()
                    })
                    .collect()
            })
            .collect();
        Self::from_table(names, table).expect("S3 table is a group")
    }

    pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Self {
        let n = g.order() * h.order();
        let pair = |k: usize| (k / h.order(), k % h.order());
        let names = (0..n)
            .map(|k| {
                let (a, b) = pair(k);
                match (a == g.identity, b == h.identity) {
                    (true, true) => "1".to_string(),
                    (false, true) => g.name(a).to_string(),
                    (true, false) => h.name(b).to_string(),
                    (false, false) => format!("{}.{}", g.name(a), h.name(b)),
                }
            })
            .collect();
        let table = (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| {
                        let (a, b) = pair(x);
                        let (c, d) = pair(y);
                        g.mul(a, c) * h.order() + h.mul(b, d)
                    })
                    .collect()
            })
            .collect();
        Self::from_table(names, table).expect("direct product is a group")
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn identity(&self) -> Elem {
        self.identity
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.names.len()
    }

    /// Elements other than the identity, in table order.
    pub fn non_identity(&self) -> Vec<Elem> {
        self.elements().filter(|&e| e != self.identity).collect()
    }

    pub fn name(&self, e: Elem) -> &str {
        &self.names[e]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn table(&self) -> &[Vec<Elem>] {
        &self.table
    }

    pub fn lookup(&self, name: &str) -> Result<Elem, GroupError> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| GroupError::UnknownElement(name.to_string()))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.table[a][b]
    }

    pub fn product(&self, elems: impl IntoIterator<Item = Elem>) -> Elem {
        elems
            .into_iter()
            .fold(self.identity, |acc, e| self.table[acc][e])
    }

    pub fn inv(&self, a: Elem) -> Elem {
        self.inverses[a]
    }

    pub fn element_order(&self, a: Elem) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn center_size(&self) -> usize {
        self.elements()
            .filter(|&a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
            .count()
    }

    pub fn fingerprint(&self) -> Fingerprint {
        let mut order_profile: Vec<usize> =
            self.elements().map(|a| self.element_order(a)).collect();
        order_profile.sort_unstable();
        Fingerprint {
            order: self.order(),
            abelian: self.is_abelian(),
            center_size: self.center_size(),
            order_profile,
        }
    }

    /// All automorphisms, found by filtering permutations that fix the
    /// identity. Restricted to order at most 8.
    pub fn automorphisms(&self) -> Result<Vec<Automorphism>, GroupError> {
        if self.order() > 8 {
            return Err(GroupError::TooLargeForAut(self.order()));
        }
        let movable = self.non_identity();
        let mut out = Vec::new();
        let mut images = movable.clone();
        permutations(&mut images, 0, &mut |perm| {
            let mut map = vec![self.identity; self.order()];
            for (src, dst) in movable.iter().zip(perm) {
                map[*src] = *dst;
            }
            if let Ok(aut) = Automorphism::new(self, map) {
                out.push(aut);
            }
        });
        out.sort();
        Ok(out)
    }

    /// Whether some bijection is an isomorphism onto `other`.
    pub fn is_isomorphic(&self, other: &FiniteGroup) -> bool {
        if self.order() != other.order() || self.fingerprint() != other.fingerprint() {
            return false;
        }
        if self.order() > 10 {
            // fingerprints only
            return true;
        }
        let src = self.non_identity();
        let mut images = other.non_identity();
        let mut found = false;
        permutations(&mut images, 0, &mut |perm| {
            if found {
                return;
            }
            let mut map = vec![other.identity; self.order()];
            for (s, d) in src.iter().zip(perm) {
                map[*s] = *d;
            }
            found = self
                .elements()
                .all(|a| self.elements().all(|b| map[self.mul(a, b)] == other.mul(map[a], map[b])));
        });
        found
    }
}

fn permutations(items: &mut Vec<Elem>, k: usize, visit: &mut dyn FnMut(&[Elem])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permutations(items, k + 1, visit);
        items.swap(k, i);
    }
}

/// Order profile, abelianness and center size; used instead of a full
/// isomorphism test when classifying small extensions.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Fingerprint {
    pub order: usize,
    pub abelian: bool,
    pub center_size: usize,
    pub order_profile: Vec<usize>,
}

/// A table-preserving permutation of a group's elements.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Automorphism {
    map: Vec<Elem>,
}

impl Automorphism {
    pub fn new(group: &FiniteGroup, map: Vec<Elem>) -> Result<Self, GroupError> {
        let n = group.order();
        if map.len() != n || map.iter().collect::<BTreeSet<_>>().len() != n || map.iter().any(|&x| x >= n) {
            return Err(GroupError::NotBijective);
        }
        if map[group.identity()] != group.identity() {
            return Err(GroupError::MovesIdentity);
        }
        for a in group.elements() {
            for b in group.elements() {
                if map[group.mul(a, b)] != group.mul(map[a], map[b]) {
                    return Err(GroupError::NotHomomorphic(
                        group.name(a).to_string(),
                        group.name(b).to_string(),
                    ));
                }
            }
        }
        Ok(Automorphism { map })
    }

    pub fn identity(group: &FiniteGroup) -> Self {
        Automorphism {
            map: group.elements().collect(),
        }
    }

    /// `a ↦ a⁻¹`; an automorphism only for abelian groups.
    pub fn inversion(group: &FiniteGroup) -> Result<Self, GroupError> {
        Self::new(group, group.elements().map(|a| group.inv(a)).collect())
    }

    /// Conjugation `a ↦ g⁻¹ a g`.
    pub fn conjugation(group: &FiniteGroup, g: Elem) -> Self {
        let gi = group.inv(g);
        Automorphism {
            map: group
                .elements()
                .map(|a| group.mul(group.mul(gi, a), g))
                .collect(),
        }
    }

    pub fn apply(&self, a: Elem) -> Elem {
        self.map[a]
    }

    pub fn map(&self) -> &[Elem] {
        &self.map
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &Automorphism) -> Automorphism {
        Automorphism {
            map: self.map.iter().map(|&a| next.map[a]).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &a)| i == a)
    }
}

/// A subgroup together with chosen left-coset representatives listed in
/// index order. Every element decomposes uniquely as `rep · member`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupWithCosets {
    members: Vec<Elem>,
    reps: Vec<Elem>,
    is_member: Vec<bool>,
    decomposition: Vec<(usize, Elem)>,
}

impl SubgroupWithCosets {
    pub fn new(group: &FiniteGroup, members: Vec<Elem>, reps: Vec<Elem>) -> Result<Self, GroupError> {
        let n = group.order();
        let mut is_member = vec![false; n];
        for &m in &members {
            if m >= n {
                return Err(GroupError::NotSubgroup);
            }
            is_member[m] = true;
        }
        let members: Vec<Elem> = group.elements().filter(|&e| is_member[e]).collect();
        if !is_member[group.identity()]
            || members
                .iter()
                .any(|&a| !is_member[group.inv(a)] || members.iter().any(|&b| !is_member[group.mul(a, b)]))
        {
            return Err(GroupError::NotSubgroup);
        }
        if reps.iter().any(|&r| r >= n) {
            return Err(GroupError::BadCosets("representative outside the group".into()));
        }
        let mut decomposition = vec![(usize::MAX, group.identity()); n];
        for (idx, &r) in reps.iter().enumerate() {
            for &m in &members {
                let g = group.mul(r, m);
                if decomposition[g].0 != usize::MAX {
                    return Err(GroupError::BadCosets(format!(
                        "`{}` lies in two listed cosets",
                        group.name(g)
                    )));
                }
                decomposition[g] = (idx, m);
            }
        }
        if let Some(g) = decomposition.iter().position(|d| d.0 == usize::MAX) {
            return Err(GroupError::BadCosets(format!(
                "`{}` lies in no listed coset",
                group.name(g)
            )));
        }
        if reps[decomposition[group.identity()].0] != group.identity() {
            return Err(GroupError::BadCosets(
                "the subgroup's own coset must be represented by the identity".into(),
            ));
        }
        Ok(SubgroupWithCosets {
            members,
            reps,
            is_member,
            decomposition,
        })
    }

    /// The whole group with the single representative `1`.
    pub fn whole(group: &FiniteGroup) -> Self {
        Self::new(group, group.elements().collect(), vec![group.identity()]).unwrap()
    }

    /// The trivial subgroup; every element represents its own coset.
    pub fn trivial(group: &FiniteGroup) -> Self {
        Self::new(group, vec![group.identity()], group.elements().collect()).unwrap()
    }

    pub fn members(&self) -> &[Elem] {
        &self.members
    }

    pub fn reps(&self) -> &[Elem] {
        &self.reps
    }

    pub fn contains(&self, g: Elem) -> bool {
        self.is_member[g]
    }

    pub fn is_rep(&self, g: Elem) -> bool {
        self.reps.contains(&g)
    }

    /// `g = rep · member`.
    pub fn decompose(&self, g: Elem) -> (Elem, Elem) {
        let (idx, m) = self.decomposition[g];
        (self.reps[idx], m)
    }

    /// Position of `g`'s representative in the index order.
    pub fn rep_index(&self, g: Elem) -> usize {
        self.decomposition[g].0
    }
}

/// An isomorphism between two subgroups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialIso {
    forward: HashMap<Elem, Elem>,
    backward: HashMap<Elem, Elem>,
}

impl PartialIso {
    pub fn new(
        group: &FiniteGroup,
        source: &SubgroupWithCosets,
        target: &SubgroupWithCosets,
        pairs: impl IntoIterator<Item = (Elem, Elem)>,
    ) -> Result<Self, GroupError> {
        let forward: HashMap<Elem, Elem> = pairs.into_iter().collect();
        if forward.len() != source.members().len()
            || source.members().iter().any(|c| !forward.contains_key(c))
            || forward.values().any(|d| !target.contains(*d))
        {
            return Err(GroupError::BadIsomorphism);
        }
        let backward: HashMap<Elem, Elem> = forward.iter().map(|(c, d)| (*d, *c)).collect();
        if backward.len() != target.members().len() {
            return Err(GroupError::BadIsomorphism);
        }
        for &a in source.members() {
            for &b in source.members() {
                if forward[&group.mul(a, b)] != group.mul(forward[&a], forward[&b]) {
                    return Err(GroupError::NotHomomorphic(
                        group.name(a).to_string(),
                        group.name(b).to_string(),
                    ));
                }
            }
        }
        Ok(PartialIso { forward, backward })
    }

    pub fn identity_on(group: &FiniteGroup, sub: &SubgroupWithCosets) -> Self {
        Self::new(group, sub, sub, sub.members().iter().map(|&c| (c, c))).unwrap()
    }

    /// φ(c)
    pub fn apply(&self, c: Elem) -> Elem {
        self.forward[&c]
    }

    /// φ⁻¹(d)
    pub fn apply_inverse(&self, d: Elem) -> Elem {
        self.backward[&d]
    }

    pub fn pairs(&self) -> Vec<(Elem, Elem)> {
        let mut p: Vec<_> = self.forward.iter().map(|(a, b)| (*a, *b)).collect();
        p.sort_unstable();
        p
    }
}

/// `g = rep · member` against `sub`'s stored representatives.
pub fn coset_decompose(g: Elem, sub: &SubgroupWithCosets) -> (Elem, Elem) {
    sub.decompose(g)
}

/// The multiplication-table presentation of a group: letters `G \ {1}` and
/// relations `b b' = [b b']`.
#[derive(Clone, Debug)]
pub struct TablePresentation {
    pub alphabet: Alphabet,
    /// Letter `i` stands for element `letter_elems[i]`.
    pub letter_elems: Vec<Elem>,
    /// Relation `k` is `pairs[k].0 · pairs[k].1 = product`.
    pub pairs: Vec<(Elem, Elem)>,
    pub system: RewriteSystem,
}

impl TablePresentation {
    pub fn letter_of(&self, e: Elem) -> Option<usize> {
        self.letter_elems.iter().position(|&x| x == e)
    }
}

/// Builds `{b b' = [b b'] | b, b' ∈ G₁}` under deg-lex. `ranking` lists the
/// non-identity elements from smallest to largest; `None` uses table order.
pub fn table_presentation(
    group: &FiniteGroup,
    ranking: Option<&[Elem]>,
) -> Result<TablePresentation, GroupError> {
    let letter_elems: Vec<Elem> = match ranking {
        Some(r) => r.to_vec(),
        None => group.non_identity(),
    };
    let alphabet = Alphabet::uniform(letter_elems.iter().map(|&e| group.name(e)), LetterClass::Y)?;
    let letter = |e: Elem| -> Word {
        match letter_elems.iter().position(|&x| x == e) {
            Some(i) => Word::from_ids(&[i as u32]),
            None => Word::empty(),
        }
    };
    let mut pairs = Vec::new();
    let mut polys = Vec::new();
    for &b in &letter_elems {
        for &c in &letter_elems {
            pairs.push((b, c));
            polys.push(Polynomial::binomial(
                letter(b).concat(&letter(c)),
                letter(group.mul(b, c)),
            ));
        }
    }
    let order = OrderSpec::deg_lex(alphabet.len());
    let system = RewriteSystem::new(alphabet.clone(), order, polys).map_err(Box::new)?;
    Ok(TablePresentation {
        alphabet,
        letter_elems,
        pairs,
        system,
    })
}

/// One candidate extension datum over a table-presented quotient: an action
/// per non-identity element of `B` (table order) and a factor value per
/// ordered pair of non-identity elements (row-major).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TableExtension {
    pub action: Vec<Automorphism>,
    pub factors: Vec<Elem>,
}

/// Whether `(b, b')` is forced to the identity: `b' = b⁻¹` with `b' ≠ b`.
pub fn forced_inverse_pair(b_group: &FiniteGroup, b: Elem, c: Elem) -> bool {
    c == b_group.inv(b) && c != b
}

/// Checks the two cocycle identities
/// `(b,b') a^{b b'} = a^{[b b']} (b,b')` and
/// `(b, b'b'') (b', b'') = (b b', b'') (b, b')^{b''}`
/// for all `b, b', b'' ∈ B`, `a ∈ A`.
pub fn satisfies_cocycle_identities(a: &FiniteGroup, b: &FiniteGroup, ext: &TableExtension) -> bool {
    let b1 = b.non_identity();
    let slot = |e: Elem| b1.iter().position(|&x| x == e);
    let act = |x: Elem, el: Elem| -> Elem {
        match slot(el) {
            Some(i) => ext.action[i].apply(x),
            None => x,
        }
    };
    let factor = |x: Elem, y: Elem| -> Elem {
        match (slot(x), slot(y)) {
            (Some(i), Some(j)) => ext.factors[i * b1.len() + j],
            _ => a.identity(),
        }
    };
    for &x in &b1 {
        for &y in &b1 {
            let f = factor(x, y);
            let xy = b.mul(x, y);
            for el in a.elements() {
                let lhs = a.mul(f, act(act(el, x), y));
                let rhs = a.mul(act(el, xy), f);
                if lhs != rhs {
                    return false;
                }
            }
            for &z in &b1 {
                let lhs = a.mul(factor(x, b.mul(y, z)), factor(y, z));
                let rhs = a.mul(factor(xy, z), act(factor(x, y), z));
                if lhs != rhs {
                    return false;
                }
            }
        }
    }
    true
}

/// Exhaustive scan of all actions `B₁ → Aut(A)` and all factor sets
/// `B₁ × B₁ → A` (forced entries held at 1) satisfying the cocycle identities.
pub fn brute_force_extensions(
    a: &FiniteGroup,
    b: &FiniteGroup,
    guard: u128,
) -> Result<Vec<TableExtension>, GroupError> {
    let auts = a.automorphisms()?;
    let b1 = b.non_identity();
    let free: Vec<usize> = b1
        .iter()
        .flat_map(|&x| b1.iter().map(move |&y| (x, y)))
        .enumerate()
        .filter(|(_, (x, y))| !forced_inverse_pair(b, *x, *y))
        .map(|(k, _)| k)
        .collect();
    let space = (auts.len() as u128)
        .checked_pow(b1.len() as u32)
        .and_then(|s| s.checked_mul((a.order() as u128).checked_pow(free.len() as u32)?))
        .unwrap_or(u128::MAX);
    if space > guard {
        return Err(GroupError::GuardExceeded(space, guard));
    }
    let actions = cartesian(auts.len(), b1.len());
    let factor_choices = cartesian(a.order(), free.len());
    let (n1, free) = (b1.len(), &free);
    let mut out: Vec<TableExtension> = actions
        .par_iter()
        .flat_map_iter(|act_idx| {
            let action: Vec<Automorphism> = act_idx.iter().map(|&i| auts[i].clone()).collect();
            factor_choices.iter().filter_map(move |choice| {
                let mut factors = vec![a.identity(); n1 * n1];
                for (slot, &value) in free.iter().zip(choice) {
                    factors[*slot] = value;
                }
                let ext = TableExtension {
                    action: action.clone(),
                    factors,
                };
                satisfies_cocycle_identities(a, b, &ext).then_some(ext)
            })
        })
        .collect();
    out.sort();
    Ok(out)
}

/// All tuples in `0..base` of length `len`, lexicographic.
pub(crate) fn cartesian(base: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..base).map(move |x| {
                    let mut p = prefix.clone();
                    p.push(x);
                    p
                })
            })
            .collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_groups_validate() {
        assert_eq!(FiniteGroup::cyclic(4, "h").order(), 4);
        assert!(FiniteGroup::klein_four().is_abelian());
        let s3 = FiniteGroup::symmetric3();
        assert!(!s3.is_abelian());
        assert_eq!(s3.center_size(), 1);
        assert_eq!(
            FiniteGroup::direct_product(&FiniteGroup::cyclic(2, "a"), &FiniteGroup::cyclic(3, "b"))
                .fingerprint(),
            FiniteGroup::cyclic(6, "g").fingerprint()
        );
    }

    #[test]
    fn rejects_non_group_tables() {
        let names = ["1", "a"].map(String::from).to_vec();
        assert_eq!(
            FiniteGroup::from_table(names.clone(), vec![vec![0, 1], vec![1, 1]]),
            Err(GroupError::NotLatin(1))
        );
        assert_eq!(
            FiniteGroup::from_table(names, vec![vec![0, 1]]),
            Err(GroupError::NotSquare)
        );
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(FiniteGroup::cyclic(2, "a").automorphisms().unwrap().len(), 1);
        assert_eq!(FiniteGroup::cyclic(3, "a").automorphisms().unwrap().len(), 2);
        assert_eq!(FiniteGroup::cyclic(4, "a").automorphisms().unwrap().len(), 2);
        assert_eq!(FiniteGroup::klein_four().automorphisms().unwrap().len(), 6);
        assert_eq!(FiniteGroup::symmetric3().automorphisms().unwrap().len(), 6);
    }

    #[test]
    fn rejects_non_homomorphic_permutation_of_z4() {
        let z4 = FiniteGroup::cyclic(4, "h");
        // swaps h and h2, fixes h3
        let err = Automorphism::new(&z4, vec![0, 2, 1, 3]).unwrap_err();
        assert!(matches!(err, GroupError::NotHomomorphic(_, _)));
        assert_eq!(
            Automorphism::new(&z4, vec![1, 0, 2, 3]).unwrap_err(),
            GroupError::MovesIdentity
        );
    }

    #[test]
    fn coset_decompose_examples() {
        let z4 = FiniteGroup::cyclic(4, "h");
        let whole = SubgroupWithCosets::whole(&z4);
        let trivial = SubgroupWithCosets::trivial(&z4);
        for g in z4.elements() {
            assert_eq!(coset_decompose(g, &whole), (0, g));
            assert_eq!(coset_decompose(g, &trivial), (g, 0));
        }
        let c = SubgroupWithCosets::new(&z4, vec![0, 2], vec![0, 1]).unwrap();
        assert_eq!(coset_decompose(3, &c), (1, 2));
        for g in z4.elements() {
            let (r, m) = coset_decompose(g, &c);
            assert_eq!(z4.mul(r, m), g);
        }
    }

    #[test]
    fn coset_data_is_validated() {
        let z4 = FiniteGroup::cyclic(4, "h");
        assert!(matches!(
            SubgroupWithCosets::new(&z4, vec![0, 2], vec![0, 2]),
            Err(GroupError::BadCosets(_))
        ));
        assert!(matches!(
            SubgroupWithCosets::new(&z4, vec![0, 2], vec![2, 1]),
            Err(GroupError::BadCosets(_))
        ));
        assert_eq!(
            SubgroupWithCosets::new(&z4, vec![0, 1], vec![0, 2]),
            Err(GroupError::NotSubgroup)
        );
    }

    #[test]
    fn table_presentation_examples() {
        let z2 = FiniteGroup::cyclic(2, "a");
        let p = table_presentation(&z2, None).unwrap();
        assert_eq!(p.system.len(), 1);
        assert_eq!(p.alphabet.render_poly(p.system.rules()[0].poly()), "a a - 1");

        let z3 = FiniteGroup::cyclic(3, "a");
        let p = table_presentation(&z3, None).unwrap();
        let rendered: Vec<String> = p
            .system
            .rules()
            .iter()
            .map(|r| p.alphabet.render_poly(r.poly()))
            .collect();
        assert_eq!(
            rendered,
            ["a a - a2", "a a2 - 1", "a2 a - 1", "a2 a2 - a"]
        );
    }

    #[test]
    fn brute_force_small_cases() {
        let z2 = FiniteGroup::cyclic(2, "a");
        let z3 = FiniteGroup::cyclic(3, "a");
        assert_eq!(brute_force_extensions(&z2, &z2, 1 << 20).unwrap().len(), 2);
        assert_eq!(brute_force_extensions(&z3, &z2, 1 << 20).unwrap().len(), 4);
        assert_eq!(
            brute_force_extensions(&z2, &FiniteGroup::trivial(), 1 << 20)
                .unwrap()
                .len(),
            1
        );
        assert!(matches!(
            brute_force_extensions(&z3, &z2, 3),
            Err(GroupError::GuardExceeded(6, 3))
        ));
    }

    #[test]
    fn partial_iso_validation() {
        let z4 = FiniteGroup::cyclic(4, "h");
        let c = SubgroupWithCosets::new(&z4, vec![0, 2], vec![0, 1]).unwrap();
        assert!(PartialIso::new(&z4, &c, &c, [(0, 0), (2, 2)]).is_ok());
        assert_eq!(
            PartialIso::new(&z4, &c, &c, [(0, 2), (2, 0)]),
            Err(GroupError::NotHomomorphic("1".into(), "1".into()))
        );
    }
}
