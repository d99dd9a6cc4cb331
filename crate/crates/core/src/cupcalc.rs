//! Cup products on `H*(G/B, Z)` through divided differences in the
//! coinvariant algebra.
//!
//! Polynomials live in the simple-root variables `x_i = alpha_i`. The point
//! class `sigma_e` is represented by `prod_{a>0} a / |W|`; for a reduced word
//! `w = s_{a_1} ... s_{a_m}` the class `sigma_w` is
//! `d_{a_m} ... d_{a_1}(sigma_e)` with `d_i f = (f - s_i f) / alpha_i`. The
//! degree of the representative of `sigma_w` is `l(w0) - l(w)`.
//!
//! This is an oracle: it is slow, exact, and never used by the fast path.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::bkring::CohomClass;
use crate::error::{Error, Result};
use crate::rootsys::RootSystem;
use crate::weyl::WeylGroup;

/// Largest `l(w0)` the oracle accepts by default (F4 has 24).
pub const DEFAULT_MAX_TOP_DEGREE: usize = 24;

const EXP_BITS: u32 = 8;
const MAX_VARS: usize = 8;

/// A monomial packed as 8-bit exponents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(u64);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    pub fn var(i: usize) -> Self {
        Monomial(1 << (EXP_BITS * i as u32))
    }

    pub fn exponent(self, i: usize) -> u32 {
        ((self.0 >> (EXP_BITS * i as u32)) & 0xff) as u32
    }

    pub fn degree(self) -> u32 {
        (0..MAX_VARS).map(|i| self.exponent(i)).sum()
    }

    fn times(self, other: Monomial) -> Monomial {
        Monomial(self.0 + other.0)
    }

    fn pow_var(i: usize, e: u32) -> Monomial {
        Monomial((e as u64) << (EXP_BITS * i as u32))
    }

    fn divide_var(self, i: usize) -> Monomial {
        debug_assert!(self.exponent(i) > 0);
        Monomial(self.0 - (1 << (EXP_BITS * i as u32)))
    }
}

/// An exact-rational polynomial in the simple-root variables.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CoinvariantPoly {
    terms: BTreeMap<Monomial, BigRational>,
}

impl CoinvariantPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: BigRational) -> Self {
        let mut p = Self::zero();
        p.add_term(Monomial::ONE, c);
        p
    }

    /// The linear form `sum_j c_j x_j`.
    pub fn linear(coeffs: &[i64]) -> Self {
        let mut p = Self::zero();
        for (j, &c) in coeffs.iter().enumerate() {
            p.add_term(Monomial::var(j), BigRational::from_integer(c.into()));
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: Monomial) -> BigRational {
        self.terms.get(&m).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Total degree, or `None` for the zero polynomial or a mixed-degree one.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|m| m.degree());
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut p = Self::zero();
        for (m, x) in &self.terms {
            p.add_term(*m, x * c);
        }
        p
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut p = self.clone();
        for (m, x) in &other.terms {
            p.add_term(*m, -x.clone());
        }
        p
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut p = Self::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                p.add_term(a.times(*b), x * y);
            }
        }
        p
    }

    /// Image under the simple reflection `s_i`:
    /// `x_j -> x_j - <alpha_j, alpha_i^vee> x_i`.
    pub fn reflect(&self, rs: &RootSystem, i: usize) -> Self {
        let r = rs.rank();
        let cartan = rs.cartan();
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let ei = m.exponent(i);
            let sign = if ei % 2 == 0 { 1 } else { -1 };
            let mut partial: Vec<(Monomial, BigInt)> = vec![(Monomial::pow_var(i, ei), BigInt::from(sign))];
            for j in 0..r {
                let ej = m.exponent(j);
                if j == i || ej == 0 {
                    continue;
                }
                let a = cartan[i][j];
                if a == 0 {
                    for t in partial.iter_mut() {
                        t.0 = t.0.times(Monomial::pow_var(j, ej));
                    }
                    continue;
                }
                // (x_j - a x_i)^ej = sum_k C(ej, k) (-a)^k x_i^k x_j^(ej-k)
                let mut expansion = Vec::with_capacity(ej as usize + 1);
                let mut binom = BigInt::one();
                let neg_a = BigInt::from(-a);
                let mut pow = BigInt::one();
                for k in 0..=ej {
                    let mono = Monomial::pow_var(i, k).times(Monomial::pow_var(j, ej - k));
                    expansion.push((mono, &binom * &pow));
                    binom = binom * BigInt::from(ej - k) / BigInt::from(k + 1);
                    pow *= &neg_a;
                }
                let mut next = Vec::with_capacity(partial.len() * expansion.len());
                for (pm, pc) in &partial {
                    for (em, ec) in &expansion {
                        next.push((pm.times(*em), pc * ec));
                    }
                }
                partial = next;
            }
            for (pm, pc) in partial {
                out.add_term(pm, c * BigRational::from_integer(pc));
            }
        }
        out
    }
}

/// `d_i p = (p - s_i p) / alpha_i`.
pub fn divided_difference(rs: &RootSystem, i: usize, p: &CoinvariantPoly) -> Result<CoinvariantPoly> {
    let diff = p.sub(&p.reflect(rs, i));
    let mut out = CoinvariantPoly::zero();
    for (m, c) in diff.terms {
        if m.exponent(i) == 0 {
            return Err(Error::Arithmetic(format!("p - s_{} p is not divisible by alpha_{}", i + 1, i + 1)));
        }
        out.add_term(m.divide_var(i), c);
    }
    Ok(out)
}

/// Memoized Schubert representatives and the point-class functional for
/// one Weyl group.
#[derive(Debug)]
pub struct CupCalculator {
    group: Arc<WeylGroup>,
    reps: Vec<OnceLock<CoinvariantPoly>>,
    functional: RwLock<HashMap<Monomial, BigRational>>,
}

impl CupCalculator {
    pub fn new(group: Arc<WeylGroup>) -> Result<Self> {
        Self::with_cap(group, DEFAULT_MAX_TOP_DEGREE)
    }

    pub fn with_cap(group: Arc<WeylGroup>, max_top_degree: usize) -> Result<Self> {
        if group.max_length() > max_top_degree || group.root_system().rank() > MAX_VARS {
            return Err(Error::GroupTooLarge { group: group.group_type().to_string(), cap: max_top_degree });
        }
        let reps = (0..group.order()).map(|_| OnceLock::new()).collect();
        Ok(CupCalculator { group, reps, functional: RwLock::new(HashMap::new()) })
    }

    pub fn group(&self) -> &WeylGroup {
        &self.group
    }

    fn rs(&self) -> &RootSystem {
        self.group.root_system()
    }

    /// `prod_{a>0} a / |W|`, the point class.
    pub fn point_class(&self) -> CoinvariantPoly {
        let rs = self.rs();
        let prod = rs
            .positive_roots()
            .iter()
            .fold(CoinvariantPoly::constant(BigRational::one()), |acc, root| acc.mul(&CoinvariantPoly::linear(root)));
        prod.scale(&BigRational::new(BigInt::one(), BigInt::from(self.group.order())))
    }

    /// Representative of `sigma_w`, built along the lexicographically
    /// minimal reduced word.
    pub fn schubert_representative(&self, w: usize) -> Result<&CoinvariantPoly> {
        if let Some(p) = self.reps[w].get() {
            return Ok(p);
        }
        let p = match self.group.element(w).word().last() {
            None => self.point_class(),
            Some(&i) => {
                let shorter = self.group.mul_index(w, self.group.index_of_word(&[i as usize])?);
                divided_difference(self.rs(), i as usize, self.schubert_representative(shorter)?)?
            }
        };
        Ok(self.reps[w].get_or_init(|| p))
    }

    /// `d_{a_m} ... d_{a_1}(sigma_e)` for an explicit word `a_1 ... a_m`.
    pub fn representative_along(&self, word: &[usize]) -> Result<CoinvariantPoly> {
        let mut p = self.point_class();
        for &i in word {
            p = divided_difference(self.rs(), i, &p)?;
        }
        Ok(p)
    }

    fn monomial_value(&self, m: Monomial) -> Result<BigRational> {
        if let Some(v) = self.functional.read().expect("functional cache poisoned").get(&m) {
            return Ok(v.clone());
        }
        let mut p = CoinvariantPoly::zero();
        p.add_term(m, BigRational::one());
        for &i in self.group.longest_element().word() {
            p = divided_difference(self.rs(), i as usize, &p)?;
        }
        let v = p.coefficient(Monomial::ONE);
        self.functional.write().expect("functional cache poisoned").insert(m, v.clone());
        Ok(v)
    }

    /// Coefficient of the point class: `d_{w0}` applied to the top-degree part.
    pub fn integrate(&self, p: &CoinvariantPoly) -> Result<BigRational> {
        let top = self.group.max_length() as u32;
        let mut acc = BigRational::zero();
        for (m, c) in p.terms() {
            if m.degree() == top {
                acc += c * self.monomial_value(*m)?;
            }
        }
        Ok(acc)
    }

    /// Intersection number `sigma_{w_1} . ... . sigma_{w_s}` against the
    /// point class; 0 unless the codimensions add up to `l(w0)`.
    pub fn intersection_number(&self, ws: &[usize]) -> Result<u64> {
        let n = self.group.max_length();
        let codim: usize = ws.iter().map(|&w| n - self.group.element(w).length()).sum();
        if codim != n {
            return Ok(0);
        }
        let mut prod = CoinvariantPoly::constant(BigRational::one());
        for &w in ws {
            prod = prod.mul(self.schubert_representative(w)?);
        }
        let v = self.integrate(&prod)?;
        if !v.is_integer() || v.is_negative() {
            return Err(Error::Arithmetic(format!("intersection number {v} of {ws:?} is not a nonnegative integer")));
        }
        v.to_integer().to_u64().ok_or_else(|| Error::Arithmetic(format!("intersection number {v} too large")))
    }

    /// `c_{uvw}`, defined by `sigma_u sigma_v = sum_w c_{uvw} sigma_{w0 w}`.
    pub fn cup_coefficient(&self, u: usize, v: usize, w: usize) -> Result<u64> {
        self.intersection_number(&[u, v, w])
    }

    pub fn cup_product(&self, u: usize, v: usize) -> Result<CohomClass> {
        let g = &*self.group;
        let n = g.max_length();
        let mut out = CohomClass::zero(g.group_type());
        let need = (2 * n).checked_sub(g.element(u).length() + g.element(v).length());
        let Some(need) = need else { return Ok(out) };
        for w in 0..g.order() {
            if g.element(w).length() == need {
                let c = self.cup_coefficient(u, v, w)?;
                out.add_term(g.mul_index(g.longest_index(), w), c as i64);
            }
        }
        Ok(out)
    }
}
