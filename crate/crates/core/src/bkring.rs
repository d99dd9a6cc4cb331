//! The Belkale–Kumar product on `H*(G/B, Z)` from inversion-set
//! combinatorics.
//!
//! `sigma_w` is the class of the closure of `BwB/B` (dimension `l(w)`), and
//! its Poincaré dual is `sigma_{w0 w}`. A tuple `(w_1, ..., w_s)` is
//! Levi-movable when the complements `Phi^+ \ Phi_{w_i}` partition `Phi^+`;
//! the structure constant of the product is 1 exactly on those tuples and 0
//! elsewhere.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::rootsys::GroupType;
use crate::weyl::{RootSubset, WeylElement, WeylGroup};

/// Largest tuple size accepted by the enumerators.
pub const MAX_TUPLE_SIZE: usize = 6;

/// An integer combination of Schubert classes, keyed by element index in
/// the owning [`WeylGroup`]. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomClass {
    group: GroupType,
    coeffs: BTreeMap<usize, i64>,
}

impl CohomClass {
    pub fn zero(group: GroupType) -> Self {
        CohomClass { group, coeffs: BTreeMap::new() }
    }

    pub fn schubert(group: GroupType, w: usize) -> Self {
        let mut c = Self::zero(group);
        c.add_term(w, 1);
        c
    }

    pub fn group_type(&self) -> GroupType {
        self.group
    }

    pub fn add_term(&mut self, w: usize, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let e = self.coeffs.entry(w).or_insert(0);
        *e += coeff;
        if *e == 0 {
            self.coeffs.remove(&w);
        }
    }

    pub fn coefficient(&self, w: usize) -> i64 {
        self.coeffs.get(&w).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.coeffs.iter().map(|(&k, &v)| (k, v))
    }
}

fn check_tuple_size(s: usize) -> Result<()> {
    if !(2..=MAX_TUPLE_SIZE).contains(&s) {
        return Err(Error::TupleSize { s, max: MAX_TUPLE_SIZE });
    }
    Ok(())
}

fn indices(g: &WeylGroup, ws: &[&WeylElement]) -> Result<Vec<usize>> {
    ws.iter().map(|w| g.index_of(w)).collect()
}

/// The complements of the inversion sets partition `Phi^+`.
pub fn is_levi_movable(g: &WeylGroup, ws: &[&WeylElement]) -> Result<bool> {
    check_tuple_size(ws.len())?;
    Ok(is_levi_movable_idx(g, &indices(g, ws)?))
}

pub fn is_levi_movable_idx(g: &WeylGroup, ws: &[usize]) -> bool {
    let n = g.max_length();
    let mut used = RootSubset::empty();
    for &w in ws {
        let c = g.element(w).inversions().complement(n);
        if !c.is_disjoint(used) {
            return false;
        }
        used = used.union(c);
    }
    used == RootSubset::full(n)
}

/// The inversion sets partition `Phi^+`.
pub fn is_inversion_partition_idx(g: &WeylGroup, ws: &[usize]) -> bool {
    let mut used = RootSubset::empty();
    for &w in ws {
        let s = g.element(w).inversions();
        if !s.is_disjoint(used) {
            return false;
        }
        used = used.union(s);
    }
    used == RootSubset::full(g.max_length())
}

/// `c^{BK}_{uvw}`: 1 when `(u, v, w)` is Levi-movable, else 0.
pub fn bk_coefficient(g: &WeylGroup, u: &WeylElement, v: &WeylElement, w: &WeylElement) -> Result<u8> {
    Ok(is_levi_movable(g, &[u, v, w])? as u8)
}

/// `sigma_u (.) sigma_v = sum_w c_{uvw} sigma_{w0 w}`.
pub fn bk_product(g: &WeylGroup, u: &WeylElement, v: &WeylElement) -> Result<CohomClass> {
    let (a, b) = (g.index_of(u)?, g.index_of(v)?);
    let mut out = CohomClass::zero(g.group_type());
    if let Some(d) = bk_product_idx(g, a, b) {
        out.add_term(d, 1);
    }
    Ok(out)
}

/// Index of the single Schubert class in `sigma_a (.) sigma_b`, if nonzero.
///
/// The third slot of a Levi-movable triple is forced: its inversion set is
/// the union of the first two complements.
pub fn bk_product_idx(g: &WeylGroup, a: usize, b: usize) -> Option<usize> {
    let n = g.max_length();
    let ca = g.element(a).inversions().complement(n);
    let cb = g.element(b).inversions().complement(n);
    if !ca.is_disjoint(cb) {
        return None;
    }
    let w = g.index_of_inversions(ca.union(cb))?;
    Some(g.mul_index(g.longest_index(), w))
}

/// Bilinear extension of the product to arbitrary classes.
pub fn bk_multiply(g: &WeylGroup, x: &CohomClass, y: &CohomClass) -> Result<CohomClass> {
    for c in [x, y] {
        if c.group != g.group_type() {
            return Err(Error::MixedRootSystems(g.group_type().to_string(), c.group.to_string()));
        }
    }
    let mut out = CohomClass::zero(g.group_type());
    for (a, ca) in x.terms() {
        for (b, cb) in y.terms() {
            if let Some(d) = bk_product_idx(g, a, b) {
                out.add_term(d, ca * cb);
            }
        }
    }
    Ok(out)
}

/// `w0 w`, the index of the Poincaré dual class.
pub fn poincare_dual(g: &WeylGroup, w: &WeylElement) -> Result<WeylElement> {
    let k = g.index_of(w)?;
    Ok(g.element(g.mul_index(g.longest_index(), k)).clone())
}

/// Elements whose inversion set lies inside `allowed`, in index order.
///
/// These form a lower ideal in left weak order (`Phi_{s_i w}` adds one root
/// to `Phi_w`), so a search from the identity finds all of them.
fn elements_within(g: &WeylGroup, allowed: RootSubset) -> Vec<usize> {
    let r = g.root_system().rank();
    let mut seen = std::collections::HashSet::new();
    seen.insert(0usize);
    let mut stack = vec![0usize];
    while let Some(w) = stack.pop() {
        let len = g.element(w).length();
        for i in 0..r {
            let v = g.left_simple_index(w, i);
            let ev = g.element(v);
            if ev.length() == len + 1 && ev.inversions().is_subset(allowed) && seen.insert(v) {
                stack.push(v);
            }
        }
    }
    let mut out: Vec<usize> = seen.into_iter().collect();
    out.sort_unstable();
    out
}

fn partitions_from(
    g: &WeylGroup,
    slots_left: usize,
    used: RootSubset,
    prefix: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    let n = g.max_length();
    let rest = used.complement(n);
    if slots_left == 1 {
        if let Some(w) = g.index_of_inversions(rest) {
            prefix.push(w);
            out.push(prefix.clone());
            prefix.pop();
        }
        return;
    }
    for w in elements_within(g, rest) {
        prefix.push(w);
        partitions_from(g, slots_left - 1, used.union(g.element(w).inversions()), prefix, out);
        prefix.pop();
    }
}

/// All ordered `s`-tuples `(w_1, ..., w_s)` with `Phi^+` the disjoint
/// union of the `Phi_{w_i}`, as element indices in lexicographic order.
pub fn enumerate_partition_tuples(g: &WeylGroup, s: usize) -> Result<Vec<Vec<usize>>> {
    check_tuple_size(s)?;
    let first = elements_within(g, RootSubset::full(g.max_length()));
    let chunks: Vec<Vec<Vec<usize>>> = first
        .par_iter()
        .map(|&w| {
            let mut out = Vec::new();
            let mut prefix = vec![w];
            partitions_from(g, s - 1, g.element(w).inversions(), &mut prefix, &mut out);
            out
        })
        .collect();
    Ok(chunks.into_iter().flatten().collect())
}

/// All Levi-movable `s`-tuples, in lexicographic index order.
///
/// Scans W slot by slot with complement-disjointness and length pruning;
/// the last slot is read off the inversion-set table.
pub fn enumerate_levi_movable_tuples(g: &WeylGroup, s: usize) -> Result<Vec<Vec<usize>>> {
    check_tuple_size(s)?;
    let n = g.max_length();
    let target_len = (s - 1) * n;

    fn rec(
        g: &WeylGroup,
        slots_left: usize,
        used: RootSubset,
        len_left: usize,
        prefix: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if slots_left == 1 {
            // the last complement is whatever is left, so its inversion set is `used`
            let inv = used;
            if let Some(w) = g.index_of_inversions(inv) {
                if g.element(w).length() == len_left {
                    prefix.push(w);
                    out.push(prefix.clone());
                    prefix.pop();
                }
            }
            return;
        }
        let n = g.max_length();
        for (w, e) in g.elements().iter().enumerate() {
            if e.length() > len_left {
                break;
            }
            let c = e.inversions().complement(n);
            if c.is_disjoint(used) {
                prefix.push(w);
                rec(g, slots_left - 1, used.union(c), len_left - e.length(), prefix, out);
                prefix.pop();
            }
        }
    }

    let chunks: Vec<Vec<Vec<usize>>> = (0..g.order())
        .into_par_iter()
        .map(|w| {
            let mut out = Vec::new();
            let e = g.element(w);
            if e.length() <= target_len {
                let mut prefix = vec![w];
                rec(g, s - 1, e.inversions().complement(n), target_len - e.length(), &mut prefix, &mut out);
            }
            out
        })
        .collect();
    Ok(chunks.into_iter().flatten().collect())
}
