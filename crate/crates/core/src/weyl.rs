//! Weyl groups: element arithmetic, inversion sets, the dot action, and
//! Borel–Weil–Bott regularization.
//!
//! The inversion set of `w` is `{alpha > 0 : w(alpha) < 0}`. Elements are
//! identified by their action matrix on fundamental-weight coordinates;
//! the reduced word and inversion set are caches.
//!
//! Reduced words use the text format `1.2.1` (1-based simple reflection
//! indices, leftmost letter applied last), with `e` for the identity.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::rootsys::{GroupType, RootSystem, Weight};

/// Default cap on `|W|` for full enumeration.
pub const DEFAULT_GROUP_CAP: usize = 1_000_000;

/// A subset of the positive roots of one root system, as a bitset over
/// root indices. All supported types have at most 36 positive roots.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootSubset(u64);

impl RootSubset {
    pub const MAX_ROOTS: usize = 64;

    pub fn empty() -> Self {
        RootSubset(0)
    }

    pub fn full(n_pos: usize) -> Self {
        debug_assert!(n_pos <= Self::MAX_ROOTS);
        if n_pos == 64 {
            RootSubset(u64::MAX)
        } else {
            RootSubset((1u64 << n_pos) - 1)
        }
    }

    pub fn from_bits(bits: u64) -> Self {
        RootSubset(bits)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        let mut s = RootSubset::empty();
        for k in it {
            s.insert(k);
        }
        s
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, k: usize) -> bool {
        self.0 >> k & 1 == 1
    }

    pub fn insert(&mut self, k: usize) {
        self.0 |= 1 << k;
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        RootSubset(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        RootSubset(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        RootSubset(self.0 & !other.0)
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// Complement inside `Phi^+` of a system with `n_pos` positive roots.
    pub fn complement(self, n_pos: usize) -> Self {
        RootSubset(!self.0 & Self::full(n_pos).0)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |&k| self.contains(k))
    }

    /// Image under a permutation of root indices.
    pub fn permuted(self, perm: &[usize]) -> Self {
        RootSubset::from_indices(self.iter().map(|k| perm[k]))
    }

    /// Closed under root addition: `a, b in S` and `a + b` a root imply `a + b in S`.
    pub fn is_closed(self, rs: &RootSystem) -> bool {
        self.iter().all(|a| {
            self.iter().all(|b| match rs.root_sum(a, b) {
                Some(c) => self.contains(c),
                None => true,
            })
        })
    }

    /// Both the set and its complement in `Phi^+` are closed.
    pub fn is_biconvex(self, rs: &RootSystem) -> bool {
        self.is_closed(rs) && self.complement(rs.n_pos()).is_closed(rs)
    }
}

/// A Weyl group element with cached length, lexicographically minimal
/// reduced word, and inversion set.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeylElement {
    group: GroupType,
    rank: usize,
    action: Vec<i64>,
    word: Vec<u8>,
    inversions: RootSubset,
}

fn apply_matrix(m: &[i64], r: usize, lam: &[i64]) -> Vec<i64> {
    (0..r).map(|j| (0..r).map(|k| m[j * r + k] * lam[k]).sum()).collect()
}

fn identity_matrix(r: usize) -> Vec<i64> {
    let mut m = vec![0; r * r];
    for i in 0..r {
        m[i * r + i] = 1;
    }
    m
}

/// `s_i * m` (left multiplication by a simple reflection).
fn reflect_left(rs: &RootSystem, i: usize, m: &[i64]) -> Vec<i64> {
    let r = rs.rank();
    let cartan = rs.cartan();
    let mut out = m.to_vec();
    for j in 0..r {
        let a = cartan[j][i];
        if a != 0 {
            for k in 0..r {
                out[j * r + k] -= a * m[i * r + k];
            }
        }
    }
    out
}

fn inversions_of(rs: &RootSystem, m: &[i64]) -> RootSubset {
    let r = rs.rank();
    let mut s = RootSubset::empty();
    for (k, root) in rs.positive_roots_fw().iter().enumerate() {
        let image = Weight::new(apply_matrix(m, r, root.coords()));
        match rs.root_index_fw(&image) {
            Some((_, false)) => s.insert(k),
            Some((_, true)) => {}
            None => unreachable!("Weyl group elements permute the roots"),
        }
    }
    s
}

impl WeylElement {
    pub fn identity(rs: &RootSystem) -> Self {
        let r = rs.rank();
        WeylElement {
            group: rs.group_type(),
            rank: r,
            action: identity_matrix(r),
            word: Vec::new(),
            inversions: RootSubset::empty(),
        }
    }

    /// Product of simple reflections `s_{i_1} ... s_{i_k}` (0-based indices;
    /// the word need not be reduced).
    pub fn from_word(rs: &RootSystem, word: &[usize]) -> Result<Self> {
        let r = rs.rank();
        let mut m = identity_matrix(r);
        for &i in word.iter().rev() {
            if i >= r {
                return Err(Error::Parse(format!("simple reflection {} out of range", i + 1)));
            }
            m = reflect_left(rs, i, &m);
        }
        Ok(Self::from_action(rs, m))
    }

    /// Recomputes all caches from an action matrix (row-major, rank x rank).
    pub fn from_action(rs: &RootSystem, action: Vec<i64>) -> Self {
        let r = rs.rank();
        let inversions = inversions_of(rs, &action);
        // peel off the smallest left descent at each step
        let mut word = Vec::with_capacity(inversions.len());
        let mut cur = action.clone();
        let mut len = inversions.len();
        while len > 0 {
            let (i, next) = (0..r)
                .find_map(|i| {
                    let next = reflect_left(rs, i, &cur);
                    (inversions_of(rs, &next).len() < len).then_some((i, next))
                })
                .expect("a non-identity element has a left descent");
            word.push(i as u8);
            cur = next;
            len -= 1;
        }
        WeylElement { group: rs.group_type(), rank: r, action, word, inversions }
    }

    pub fn group_type(&self) -> GroupType {
        self.group
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    /// Lexicographically minimal reduced word, 0-based.
    pub fn word(&self) -> &[u8] {
        &self.word
    }

    pub fn inversions(&self) -> RootSubset {
        self.inversions
    }

    /// Row-major action matrix on fundamental-weight coordinates.
    pub fn action(&self) -> &[i64] {
        &self.action
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    pub fn act(&self, lam: &Weight) -> Result<Weight> {
        if lam.rank() != self.rank {
            return Err(Error::RankMismatch { expected: self.rank, got: lam.rank() });
        }
        Ok(self.act_unchecked(lam))
    }

    pub(crate) fn act_unchecked(&self, lam: &Weight) -> Weight {
        Weight::new(apply_matrix(&self.action, self.rank, lam.coords()))
    }

    /// The dot action `w(lam + rho) - rho`.
    pub fn dot(&self, lam: &Weight) -> Result<Weight> {
        let rho = Weight::new(vec![1; self.rank]);
        let shifted = self.act(&(lam + &rho))?;
        Ok(&shifted - &rho)
    }

    pub fn word_string(&self) -> String {
        format_word(&self.word)
    }

    pub fn determinant_sign(&self) -> i64 {
        if self.length().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.word_string())
    }
}

pub fn format_word(word: &[u8]) -> String {
    if word.is_empty() {
        return "e".to_string();
    }
    word.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(".")
}

/// Parses `"1.2.1"` or `"e"` into 0-based simple reflection indices.
pub fn parse_word(s: &str) -> Result<Vec<usize>> {
    let s = s.trim();
    if s == "e" || s.is_empty() {
        return Ok(Vec::new());
    }
    s.split('.')
        .map(|t| match t.parse::<usize>() {
            Ok(i) if i >= 1 => Ok(i - 1),
            _ => Err(Error::Parse(format!("bad reduced word '{s}'"))),
        })
        .collect()
}

/// The whole Weyl group, enumerated once and indexed.
///
/// Elements are sorted by `(length, reduced word)`; index 0 is the identity
/// and the last index is the longest element.
#[derive(Debug)]
pub struct WeylGroup {
    rs: Arc<RootSystem>,
    elements: Vec<WeylElement>,
    by_action: HashMap<Vec<i64>, usize>,
    by_inversions: HashMap<RootSubset, usize>,
    left_simple: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    neg_w0: Vec<usize>,
}

impl WeylGroup {
    pub fn new(rs: Arc<RootSystem>) -> Result<Self> {
        Self::with_cap(rs, DEFAULT_GROUP_CAP)
    }

    pub fn for_type(t: GroupType) -> Result<Self> {
        Self::new(Arc::new(RootSystem::new(t)?))
    }

    pub fn with_cap(rs: Arc<RootSystem>, cap: usize) -> Result<Self> {
        let r = rs.rank();
        let too_large = || Error::GroupTooLarge { group: rs.group_type().to_string(), cap };

        let mut elements = vec![WeylElement::identity(&rs)];
        let mut by_action: HashMap<Vec<i64>, usize> = HashMap::new();
        by_action.insert(elements[0].action.clone(), 0);
        let mut level = vec![0usize];
        while !level.is_empty() {
            let mut next = Vec::new();
            for i in 0..r {
                for &w in &level {
                    let m = reflect_left(&rs, i, &elements[w].action);
                    if by_action.contains_key(&m) {
                        continue;
                    }
                    if elements.len() >= cap {
                        return Err(too_large());
                    }
                    let mut word = Vec::with_capacity(elements[w].word.len() + 1);
                    word.push(i as u8);
                    word.extend_from_slice(&elements[w].word);
                    let inversions = inversions_of(&rs, &m);
                    debug_assert_eq!(inversions.len(), word.len());
                    let idx = elements.len();
                    by_action.insert(m.clone(), idx);
                    elements.push(WeylElement { group: rs.group_type(), rank: r, action: m, word, inversions });
                    next.push(idx);
                }
            }
            level = next;
        }

        let by_inversions = elements.iter().enumerate().map(|(k, w)| (w.inversions, k)).collect();
        let left_simple: Vec<Vec<usize>> =
            elements.iter().map(|w| (0..r).map(|i| by_action[&reflect_left(&rs, i, &w.action)]).collect()).collect();
        let inverse = elements.iter().map(|w| w.word.iter().fold(0usize, |x, &i| left_simple[x][i as usize])).collect();
        let w0 = &elements[elements.len() - 1];
        let neg_w0 = rs
            .positive_roots_fw()
            .iter()
            .map(|root| {
                let image = -&w0.act_unchecked(root);
                let (k, positive) = rs.root_index_fw(&image).expect("root");
                debug_assert!(positive);
                k
            })
            .collect();

        Ok(WeylGroup { rs, elements, by_action, by_inversions, left_simple, inverse, neg_w0 })
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn root_system_arc(&self) -> Arc<RootSystem> {
        Arc::clone(&self.rs)
    }

    pub fn group_type(&self) -> GroupType {
        self.rs.group_type()
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn element(&self, idx: usize) -> &WeylElement {
        &self.elements[idx]
    }

    pub fn identity(&self) -> &WeylElement {
        &self.elements[0]
    }

    pub fn longest_index(&self) -> usize {
        self.elements.len() - 1
    }

    pub fn longest_element(&self) -> &WeylElement {
        &self.elements[self.longest_index()]
    }

    /// `l(w_0) = |Phi^+|`.
    pub fn max_length(&self) -> usize {
        self.rs.n_pos()
    }

    pub fn index_of(&self, w: &WeylElement) -> Result<usize> {
        self.check(w)?;
        Ok(self.by_action[&w.action])
    }

    fn check(&self, w: &WeylElement) -> Result<()> {
        if w.group != self.group_type() {
            return Err(Error::MixedRootSystems(self.group_type().to_string(), w.group.to_string()));
        }
        Ok(())
    }

    pub fn multiply(&self, u: &WeylElement, v: &WeylElement) -> Result<WeylElement> {
        let (a, b) = (self.index_of(u)?, self.index_of(v)?);
        Ok(self.elements[self.mul_index(a, b)].clone())
    }

    pub fn inverse(&self, w: &WeylElement) -> Result<WeylElement> {
        Ok(self.elements[self.inverse[self.index_of(w)?]].clone())
    }

    pub fn mul_index(&self, a: usize, b: usize) -> usize {
        self.elements[a].word.iter().rev().fold(b, |x, &i| self.left_simple[x][i as usize])
    }

    pub fn inverse_index(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// Index of `s_i * w`.
    pub fn left_simple_index(&self, w: usize, i: usize) -> usize {
        self.left_simple[w][i]
    }

    /// The unique element with the given inversion set, if the set is one.
    pub fn from_inversion_set(&self, s: RootSubset) -> Option<&WeylElement> {
        self.index_of_inversions(s).map(|k| &self.elements[k])
    }

    pub fn index_of_inversions(&self, s: RootSubset) -> Option<usize> {
        self.by_inversions.get(&s).copied()
    }

    /// Element for a (not necessarily reduced) word.
    pub fn index_of_word(&self, word: &[usize]) -> Result<usize> {
        let r = self.rs.rank();
        let mut x = 0;
        for &i in word.iter().rev() {
            if i >= r {
                return Err(Error::Parse(format!("simple reflection {} out of range", i + 1)));
            }
            x = self.left_simple[x][i];
        }
        Ok(x)
    }

    pub fn parse_element(&self, s: &str) -> Result<usize> {
        self.index_of_word(&parse_word(s)?)
    }

    /// Permutation of positive-root indices induced by `-w_0`.
    pub fn neg_w0_permutation(&self) -> &[usize] {
        &self.neg_w0
    }

    /// `lam* = -w_0 lam`.
    pub fn weight_star(&self, lam: &Weight) -> Result<Weight> {
        Ok(-&self.longest_element().act(lam)?)
    }

    /// `w(lam)` for every element, in index order.
    pub fn orbit_images(&self, lam: &Weight) -> Vec<Weight> {
        self.elements.iter().map(|w| w.act_unchecked(lam)).collect()
    }
}

/// Cohomology of the line bundle attached to a weight on `G/B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BwbClass {
    /// `chi + rho` is singular; all cohomology vanishes.
    Zero,
    /// `chi = w . weight` with `weight` dominant and `degree = l(w)`.
    Nonzero { degree: usize, weight: Weight },
}

/// Dot-regularizes `chi`: sorts `chi + rho` into the dominant chamber with
/// simple reflections, counting them.
pub fn borel_weil_bott(rs: &RootSystem, chi: &Weight) -> Result<BwbClass> {
    rs.check_rank(chi)?;
    let shifted = chi + rs.rho();
    let (dominant, applied) = rs.dominant_representative(&shifted);
    if dominant.coords().contains(&0) {
        return Ok(BwbClass::Zero);
    }
    Ok(BwbClass::Nonzero { degree: applied.len(), weight: &dominant - rs.rho() })
}
