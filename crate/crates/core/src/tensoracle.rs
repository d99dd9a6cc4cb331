//! Brute-force tensor-product oracle: Weyl dimensions, Freudenthal weight
//! multiplicities, Klimyk decompositions, and invariant dimensions.
//!
//! Everything is exact. Inputs whose modules exceed the configured budget
//! produce [`Error::OracleOverflow`] instead of an approximation.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::{Arc, RwLock};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rootsys::{RootSystem, Weight};
use crate::weyl::{borel_weil_bott, BwbClass};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    /// Largest Weyl dimension of a single factor.
    pub max_dim: u64,
    /// Largest number of distinct weights of a single factor.
    pub max_support: usize,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget { max_dim: 100_000, max_support: 1_000_000 }
    }
}

/// `V_lam (x) V_mu` as a sum of irreducibles, sorted by highest weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub terms: Vec<(Weight, u64)>,
}

impl Decomposition {
    pub fn multiplicity(&self, nu: &Weight) -> u64 {
        self.terms.binary_search_by(|(w, _)| w.cmp(nu)).map(|k| self.terms[k].1).unwrap_or(0)
    }
}

/// Invariant dimensions at `k = 1..K`, possibly cut short by the budget.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StableProbe {
    pub dims: Vec<(u32, u64)>,
    pub overflow: Option<Error>,
}

type WeightList = Arc<Vec<(Weight, u64)>>;

#[derive(Debug)]
pub struct TensorOracle {
    rs: Arc<RootSystem>,
    budget: OracleBudget,
    /// Gram matrix of the fundamental weights, scaled to integers.
    gram: Vec<Vec<i128>>,
    cache: RwLock<HashMap<Weight, WeightList>>,
}

impl TensorOracle {
    pub fn new(rs: Arc<RootSystem>) -> Self {
        Self::with_budget(rs, OracleBudget::default())
    }

    pub fn with_budget(rs: Arc<RootSystem>, budget: OracleBudget) -> Self {
        let g = rs.fundamental_gram();
        let denom = g.iter().flatten().fold(1i64, |acc, x| acc.lcm(x.denom()));
        let gram =
            g.iter().map(|row| row.iter().map(|x| (x.numer() * (denom / x.denom())) as i128).collect()).collect();
        TensorOracle { rs, budget, gram, cache: RwLock::new(HashMap::new()) }
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn budget(&self) -> OracleBudget {
        self.budget
    }

    fn form(&self, x: &Weight, y: &Weight) -> i128 {
        let r = self.rs.rank();
        let mut s = 0i128;
        for i in 0..r {
            if x[i] == 0 {
                continue;
            }
            for j in 0..r {
                s += x[i] as i128 * self.gram[i][j] * y[j] as i128;
            }
        }
        s
    }

    fn check_dominant(&self, lam: &Weight) -> Result<()> {
        self.rs.check_rank(lam)?;
        if !lam.is_dominant() {
            return Err(Error::NonDominantInput(lam.to_string()));
        }
        Ok(())
    }

    /// `prod_{a>0} <lam + rho, a^vee> / <rho, a^vee>`.
    pub fn weyl_dim(&self, lam: &Weight) -> Result<BigUint> {
        self.check_dominant(lam)?;
        let shifted = lam + self.rs.rho();
        let mut num = BigUint::from(1u32);
        let mut den = BigUint::from(1u32);
        for k in 0..self.rs.n_pos() {
            num *= self.rs.pairing_unchecked(&shifted, k) as u64;
            den *= self.rs.pairing_unchecked(self.rs.rho(), k) as u64;
        }
        let (q, r) = num.div_rem(&den);
        if !r.is_zero() {
            return Err(Error::Arithmetic(format!("Weyl dimension of {lam} is not integral")));
        }
        Ok(q)
    }

    fn weyl_dim_budgeted(&self, lam: &Weight) -> Result<u64> {
        let d = self.weyl_dim(lam)?;
        match d.to_u64() {
            Some(d) if d <= self.budget.max_dim => Ok(d),
            _ => {
                Err(Error::OracleOverflow(format!("dim V_({lam}) = {d} exceeds the budget of {}", self.budget.max_dim)))
            }
        }
    }

    /// `lam* = -w_0 lam`, the dominant weight in the orbit of `-lam`.
    pub fn dual(&self, lam: &Weight) -> Weight {
        self.rs.dominant_representative(&-lam).0
    }

    /// Dominant weights of `V_lam` with their multiplicities (Freudenthal).
    pub fn dominant_multiplicities(&self, lam: &Weight) -> Result<BTreeMap<Weight, u64>> {
        self.check_dominant(lam)?;
        self.weyl_dim_budgeted(lam)?;
        let rs = &*self.rs;
        let roots = rs.positive_roots_fw();

        let mut level: HashMap<Weight, i64> = HashMap::new();
        level.insert(lam.clone(), 0);
        let mut stack = vec![lam.clone()];
        while let Some(mu) = stack.pop() {
            let l = level[&mu];
            for (k, a) in roots.iter().enumerate() {
                let nu = &mu - a;
                if nu.is_dominant() && !level.contains_key(&nu) {
                    level.insert(nu.clone(), l + rs.height(k));
                    stack.push(nu);
                }
            }
            if level.len() > self.budget.max_support {
                return Err(Error::OracleOverflow(format!(
                    "weight support of V_({lam}) exceeds {}",
                    self.budget.max_support
                )));
            }
        }
        let mut order: Vec<(i64, Weight)> = level.into_iter().map(|(w, l)| (l, w)).collect();
        order.sort();

        let lam_rho = lam + rs.rho();
        let top = self.form(&lam_rho, &lam_rho);
        let mut mult: HashMap<Weight, u64> = HashMap::new();
        for (l, mu) in order {
            if l == 0 {
                mult.insert(mu, 1);
                continue;
            }
            let mut num: i128 = 0;
            for a in roots {
                let mut nu = &mu + a;
                loop {
                    let dom = rs.dominant_representative(&nu).0;
                    let Some(&m) = mult.get(&dom) else { break };
                    num += m as i128 * self.form(&nu, a);
                    nu = &nu + a;
                }
            }
            let mu_rho = &mu + rs.rho();
            let den = top - self.form(&mu_rho, &mu_rho);
            if den <= 0 || (2 * num) % den != 0 {
                return Err(Error::Arithmetic(format!("Freudenthal recursion for {lam} at {mu} is not integral")));
            }
            let m = 2 * num / den;
            if m < 0 {
                return Err(Error::Arithmetic(format!("negative multiplicity at {mu}")));
            }
            mult.insert(mu, m as u64);
        }
        Ok(mult.into_iter().filter(|(_, m)| *m > 0).collect())
    }

    /// All weights of `V_lam` with multiplicities, sorted by weight.
    pub fn weight_multiplicities(&self, lam: &Weight) -> Result<BTreeMap<Weight, u64>> {
        Ok(self.weight_list(lam)?.iter().cloned().collect())
    }

    fn weight_list(&self, lam: &Weight) -> Result<WeightList> {
        if let Some(hit) = self.cache.read().expect("oracle cache poisoned").get(lam) {
            return Ok(Arc::clone(hit));
        }
        let dominant = self.dominant_multiplicities(lam)?;
        let r = self.rs.rank();
        let mut all = Vec::new();
        for (mu, m) in dominant {
            let mut orbit: HashSet<Weight> = HashSet::new();
            orbit.insert(mu.clone());
            let mut stack = vec![mu];
            while let Some(x) = stack.pop() {
                for i in 0..r {
                    let y = self.rs.reflect(i, &x);
                    if orbit.insert(y.clone()) {
                        stack.push(y);
                    }
                }
            }
            all.extend(orbit.into_iter().map(|w| (w, m)));
            if all.len() > self.budget.max_support {
                return Err(Error::OracleOverflow(format!(
                    "weight support of V_({lam}) exceeds {}",
                    self.budget.max_support
                )));
            }
        }
        all.sort();
        let list = Arc::new(all);
        self.cache.write().expect("oracle cache poisoned").insert(lam.clone(), Arc::clone(&list));
        Ok(list)
    }

    /// Klimyk: dot-regularize `lam + beta` over the weights `beta` of the
    /// smaller factor and accumulate with sign.
    pub fn decompose(&self, lam: &Weight, mu: &Weight) -> Result<Decomposition> {
        self.check_dominant(lam)?;
        self.check_dominant(mu)?;
        let dl = self.weyl_dim_budgeted(lam)?;
        let dm = self.weyl_dim_budgeted(mu)?;
        let (big, small) = if dm <= dl { (lam, mu) } else { (mu, lam) };
        let mut acc: BTreeMap<Weight, i64> = BTreeMap::new();
        for (beta, m) in self.weight_list(small)?.iter() {
            if let BwbClass::Nonzero { degree, weight } = borel_weil_bott(&self.rs, &(big + beta))? {
                let sign = if degree % 2 == 0 { 1 } else { -1 };
                *acc.entry(weight).or_insert(0) += sign * *m as i64;
            }
        }
        let mut terms = Vec::new();
        for (w, c) in acc {
            if c < 0 {
                return Err(Error::Arithmetic(format!("negative Klimyk coefficient at {w}")));
            }
            if c > 0 {
                terms.push((w, c as u64));
            }
        }
        Ok(Decomposition { terms })
    }

    /// `dim (V_{l_1} (x) ... (x) V_{l_s})^G`.
    pub fn invariant_dim(&self, weights: &[Weight]) -> Result<u64> {
        if weights.len() < 2 {
            return Err(Error::TupleSize { s: weights.len(), max: usize::MAX });
        }
        for w in weights {
            self.check_dominant(w)?;
        }
        if weights.len() == 2 {
            return Ok((self.dual(&weights[0]) == weights[1]) as u64);
        }
        // the largest factor is matched against the product of the others
        let dims = weights.iter().map(|w| self.weyl_dim_budgeted(w)).collect::<Result<Vec<_>>>()?;
        let target = (0..weights.len()).max_by(|&a, &b| dims[a].cmp(&dims[b]).then(b.cmp(&a))).expect("nonempty");
        let rest: Vec<&Weight> = (0..weights.len()).filter(|&k| k != target).map(|k| &weights[k]).collect();
        let mut acc: BTreeMap<Weight, u64> = BTreeMap::new();
        acc.insert(rest[0].clone(), 1);
        for next in &rest[1..] {
            let mut out: BTreeMap<Weight, u64> = BTreeMap::new();
            for (kappa, m) in &acc {
                for (nu, c) in self.decompose(kappa, next)?.terms {
                    *out.entry(nu).or_insert(0) += m * c;
                }
            }
            acc = out;
        }
        Ok(acc.get(&self.dual(&weights[target])).copied().unwrap_or(0))
    }

    /// `[(k, dim (V_{k l_1} (x) ... )^G) for k = 1..K]`.
    pub fn stable_mult_probe(&self, weights: &[Weight], depth: u32) -> StableProbe {
        let mut dims = Vec::new();
        for k in 1..=depth {
            let scaled: Vec<Weight> = weights.iter().map(|w| w.scaled(k as i64)).collect();
            match self.invariant_dim(&scaled) {
                Ok(d) => dims.push((k, d)),
                Err(e) => return StableProbe { dims, overflow: Some(e) },
            }
        }
        StableProbe { dims, overflow: None }
    }
}
