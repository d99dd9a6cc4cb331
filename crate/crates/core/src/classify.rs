//! PRV, cohomological and regularly extremal status of tuples of dominant
//! weights, plus sampling of the regular faces attached to a witness.
//!
//! All three searches work on tuples `(w_1, ..., w_s)` of element indices
//! into one [`WeylGroup`]:
//!
//! * PRV: `sum w_i l_i = 0`.
//! * cohomological: the inversion sets `Phi_{w_i}` partition `Phi^+` and
//!   `sum w_i^{-1} l_i = 0`.
//! * regularly extremal: the complements `Phi_{w_i}^c` partition `Phi^+`,
//!   `sum w_i^{-1} l_i = 0`, and the cup product of the `sigma_{w_i}` is the
//!   point class.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::bkring::{
    enumerate_levi_movable_tuples, enumerate_partition_tuples, is_inversion_partition_idx, MAX_TUPLE_SIZE,
};
use crate::cupcalc::CupCalculator;
use crate::error::{Error, Result};
use crate::rootsys::{GroupType, Weight};
use crate::tensoracle::{OracleBudget, TensorOracle};
use crate::weyl::WeylGroup;

/// Witness lists longer than this are refused rather than materialized.
pub const MAX_WITNESSES: usize = 1_000_000;

/// Largest number of candidate tuples `face_sample` will scan.
pub const MAX_FACE_CANDIDATES: u64 = 10_000_000;

/// A tuple of element indices into the owning [`WeylGroup`].
pub type Witness = Vec<usize>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StableMultOne {
    /// Follows from a cohomological witness; holds for every k.
    ProvenTrue,
    /// The invariant space at scale `k` has dimension `dim != 1`.
    RefutedAtK { k: u32, dim: u64 },
    /// Dimension 1 for every probed `k <= K`.
    UnknownUpTo(u32),
}

impl StableMultOne {
    /// Where the answer comes from.
    pub fn provenance(&self) -> &'static str {
        match self {
            StableMultOne::ProvenTrue => "cohomological-equivalence",
            _ => "finite-probe",
        }
    }
}

impl fmt::Display for StableMultOne {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StableMultOne::ProvenTrue => write!(f, "ProvenTrue"),
            StableMultOne::RefutedAtK { k, dim } => write!(f, "RefutedAtK({k}, dim={dim})"),
            StableMultOne::UnknownUpTo(k) => write!(f, "UnknownUpTo({k})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripleClassification {
    pub group: GroupType,
    pub weights: Vec<Weight>,
    pub prv: bool,
    pub prv_witnesses: Vec<Witness>,
    pub cohomological: bool,
    pub coh_witnesses: Vec<Witness>,
    pub regularly_extremal: bool,
    pub rex_witnesses: Vec<Witness>,
    pub stable_mult_one: StableMultOne,
    /// `(k, invariant dimension)`; empty when the oracle ran out of budget.
    pub oracle_mults: Vec<(u32, u64)>,
    /// Set when the tensor oracle refused a scaled tuple.
    pub overflow: Option<Error>,
}

#[derive(Debug, Clone, Copy)]
pub struct ClassifyOptions {
    /// Probe `k = 1..=depth`.
    pub depth: u32,
    /// Re-check the cup condition of every regularly extremal witness.
    pub verify_cup: bool,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions { depth: 3, verify_cup: false }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceSample {
    pub tuples: Vec<Vec<Weight>>,
    /// Rank of the lattice spanned by `tuples`.
    pub lattice_rank: usize,
}

type TupleCache = Mutex<HashMap<usize, Arc<Vec<Witness>>>>;

/// Shared state for classifying many tuples in one group: tuple
/// enumerations, the tensor oracle and the cup-product oracle are built
/// once and reused.
#[derive(Debug)]
pub struct Classifier {
    group: Arc<WeylGroup>,
    oracle: TensorOracle,
    partitions: TupleCache,
    levi: TupleCache,
    cup: OnceLock<Result<CupCalculator>>,
}

impl Classifier {
    pub fn new(group: Arc<WeylGroup>) -> Self {
        Self::with_budget(group, OracleBudget::default())
    }

    pub fn with_budget(group: Arc<WeylGroup>, budget: OracleBudget) -> Self {
        let oracle = TensorOracle::with_budget(group.root_system_arc(), budget);
        Classifier {
            group,
            oracle,
            partitions: Mutex::new(HashMap::new()),
            levi: Mutex::new(HashMap::new()),
            cup: OnceLock::new(),
        }
    }

    pub fn group(&self) -> &WeylGroup {
        &self.group
    }

    pub fn oracle(&self) -> &TensorOracle {
        &self.oracle
    }

    pub fn cup_calculator(&self) -> Result<&CupCalculator> {
        self.cup.get_or_init(|| CupCalculator::new(self.group.clone())).as_ref().map_err(Clone::clone)
    }

    fn cached(
        &self,
        cache: &TupleCache,
        s: usize,
        build: fn(&WeylGroup, usize) -> Result<Vec<Witness>>,
    ) -> Result<Arc<Vec<Witness>>> {
        if let Some(t) = cache.lock().expect("tuple cache poisoned").get(&s) {
            return Ok(t.clone());
        }
        let built = Arc::new(build(&self.group, s)?);
        let mut guard = cache.lock().expect("tuple cache poisoned");
        Ok(guard.entry(s).or_insert(built).clone())
    }

    /// Ordered `s`-tuples whose inversion sets partition `Phi^+`.
    pub fn partition_tuples(&self, s: usize) -> Result<Arc<Vec<Witness>>> {
        self.cached(&self.partitions, s, enumerate_partition_tuples)
    }

    /// Ordered `s`-tuples whose complemented inversion sets partition `Phi^+`.
    pub fn levi_movable_tuples(&self, s: usize) -> Result<Arc<Vec<Witness>>> {
        self.cached(&self.levi, s, enumerate_levi_movable_tuples)
    }

    fn check_weights(&self, weights: &[Weight]) -> Result<()> {
        if !(2..=MAX_TUPLE_SIZE).contains(&weights.len()) {
            return Err(Error::TupleSize { s: weights.len(), max: MAX_TUPLE_SIZE });
        }
        let rs = self.group.root_system();
        for w in weights {
            rs.check_rank(w)?;
            if !w.is_dominant() {
                return Err(Error::NonDominantInput(w.to_string()));
            }
        }
        Ok(())
    }

    fn sort_witnesses(&self, ws: &mut [Witness]) {
        let g = &*self.group;
        ws.sort_by_cached_key(|t| (t.iter().map(|&u| g.element(u).length()).sum::<usize>(), t.clone()));
    }

    /// `images[i][u] = u^{-1} l_i`.
    fn inverse_images(&self, weights: &[Weight]) -> Vec<Vec<Weight>> {
        let g = &*self.group;
        weights
            .iter()
            .map(|lam| (0..g.order()).map(|u| g.element(g.inverse_index(u)).act_unchecked(lam)).collect())
            .collect()
    }

    fn filter_vanishing(&self, weights: &[Weight], tuples: &[Witness]) -> Vec<Witness> {
        let images = self.inverse_images(weights);
        let rank = self.group.root_system().rank();
        let mut out: Vec<Witness> = tuples
            .par_iter()
            .filter(|t| {
                let mut acc = Weight::zero(rank);
                for (i, &u) in t.iter().enumerate() {
                    acc += &images[i][u];
                }
                acc.is_zero()
            })
            .cloned()
            .collect();
        self.sort_witnesses(&mut out);
        out
    }

    /// All `(w_1, ..., w_s)` with `sum w_i l_i = 0`, where `w_s` is reduced to
    /// the shortest element producing its image.
    pub fn prv_witnesses(&self, weights: &[Weight]) -> Result<Vec<Witness>> {
        self.check_weights(weights)?;
        let g = &*self.group;
        let s = weights.len();
        // group elements by the image they produce; first entry is shortest
        let classes: Vec<Vec<(Weight, Vec<usize>)>> = weights[..s - 1]
            .iter()
            .map(|lam| {
                let mut order: Vec<(Weight, Vec<usize>)> = Vec::new();
                let mut pos: HashMap<Weight, usize> = HashMap::new();
                for u in 0..g.order() {
                    let img = g.element(u).act_unchecked(lam);
                    match pos.get(&img) {
                        Some(&k) => order[k].1.push(u),
                        None => {
                            pos.insert(img.clone(), order.len());
                            order.push((img, vec![u]));
                        }
                    }
                }
                order
            })
            .collect();
        let mut last: HashMap<Weight, usize> = HashMap::new();
        for u in 0..g.order() {
            last.entry(g.element(u).act_unchecked(&weights[s - 1])).or_insert(u);
        }

        // choices of image class per component whose sum closes up
        let hits: Vec<(Vec<usize>, usize)> = (0..classes[0].len())
            .into_par_iter()
            .flat_map_iter(|c0| {
                let mut found = Vec::new();
                let mut stack = vec![c0];
                let mut sums = vec![classes[0][c0].0.clone()];
                search_classes(&classes, &last, &mut stack, &mut sums, &mut found);
                found
            })
            .collect();

        let mut total: usize = 0;
        for (choice, _) in &hits {
            let n = choice.iter().enumerate().try_fold(1usize, |acc, (i, &c)| acc.checked_mul(classes[i][c].1.len()));
            total = n
                .and_then(|n| total.checked_add(n))
                .filter(|&t| t <= MAX_WITNESSES)
                .ok_or(Error::TooManyWitnesses { cap: MAX_WITNESSES })?;
        }

        let mut out = Vec::with_capacity(total);
        for (choice, us) in hits {
            let mut tuple = vec![0; s];
            tuple[s - 1] = us;
            expand(&classes, &choice, 0, &mut tuple, &mut out);
        }
        self.sort_witnesses(&mut out);
        Ok(out)
    }

    /// Tuples satisfying `Phi^+ = Phi_{w_1} ⊔ ... ⊔ Phi_{w_s}` and
    /// `sum w_i^{-1} l_i = 0`.
    pub fn cohomological_witnesses(&self, weights: &[Weight]) -> Result<Vec<Witness>> {
        self.check_weights(weights)?;
        let tuples = self.partition_tuples(weights.len())?;
        Ok(self.filter_vanishing(weights, &tuples))
    }

    /// Tuples satisfying `Phi^+ = Phi_{w_1}^c ⊔ ... ⊔ Phi_{w_s}^c` and
    /// `sum w_i^{-1} l_i = 0`. With `verify_cup`, also checks that the cup
    /// product of the `sigma_{w_i}` is the point class and fails otherwise.
    pub fn regularly_extremal_witnesses(&self, weights: &[Weight], verify_cup: bool) -> Result<Vec<Witness>> {
        self.check_weights(weights)?;
        let tuples = self.levi_movable_tuples(weights.len())?;
        let out = self.filter_vanishing(weights, &tuples);
        if verify_cup {
            let cup = self.cup_calculator()?;
            for t in &out {
                let c = cup.intersection_number(t)?;
                if c != 1 {
                    return Err(Error::Arithmetic(format!(
                        "cup product of witness {t:?} is {c} times the point class"
                    )));
                }
            }
        }
        Ok(out)
    }

    pub fn classify(&self, weights: &[Weight], opts: &ClassifyOptions) -> Result<TripleClassification> {
        if opts.depth == 0 {
            return Err(Error::InvalidArgument("scaling depth must be at least 1".into()));
        }
        let prv_witnesses = self.prv_witnesses(weights)?;
        let coh_witnesses = self.cohomological_witnesses(weights)?;
        let rex_witnesses = self.regularly_extremal_witnesses(weights, opts.verify_cup)?;
        let cohomological = !coh_witnesses.is_empty();

        let probe = self.oracle.stable_mult_probe(weights, opts.depth);
        let refuted = probe.dims.iter().find(|&&(_, d)| d != 1).copied();
        let stable_mult_one = if cohomological {
            StableMultOne::ProvenTrue
        } else if let Some((k, dim)) = refuted {
            StableMultOne::RefutedAtK { k, dim }
        } else {
            StableMultOne::UnknownUpTo(probe.dims.len() as u32)
        };
        let oracle_mults = if probe.overflow.is_some() { Vec::new() } else { probe.dims };

        Ok(TripleClassification {
            group: self.group.group_type(),
            weights: weights.to_vec(),
            prv: !prv_witnesses.is_empty(),
            prv_witnesses,
            cohomological,
            coh_witnesses,
            regularly_extremal: !rex_witnesses.is_empty(),
            rex_witnesses,
            stable_mult_one,
            oracle_mults,
            overflow: probe.overflow,
        })
    }

    /// Dominant tuples on the face of `witness`: the first `s - 1` weights
    /// range over dominant weights with coordinates `<= bound`, and the last
    /// is forced to `-w_s (sum_{i<s} w_i^{-1} l_i)`.
    pub fn face_sample(&self, witness: &[usize], bound: i64) -> Result<FaceSample> {
        let g = &*self.group;
        let s = witness.len();
        if !(2..=MAX_TUPLE_SIZE).contains(&s) {
            return Err(Error::TupleSize { s, max: MAX_TUPLE_SIZE });
        }
        if bound < 1 {
            return Err(Error::InvalidArgument(format!("face bound must be positive, got {bound}")));
        }
        if let Some(&bad) = witness.iter().find(|&&u| u >= g.order()) {
            return Err(Error::InvalidWitness(format!("element index {bad} out of range")));
        }
        if !is_inversion_partition_idx(g, witness) {
            let words: Vec<String> = witness.iter().map(|&u| g.element(u).word_string()).collect();
            return Err(Error::InvalidWitness(format!(
                "inversion sets of {} do not partition the positive roots",
                words.join(";")
            )));
        }
        let rank = g.root_system().rank();
        let free = rank * (s - 1);
        let per = (bound + 1) as u64;
        let candidates = (0..free).try_fold(1u64, |acc, _| acc.checked_mul(per));
        if candidates.is_none_or(|c| c > MAX_FACE_CANDIDATES) {
            return Err(Error::InvalidArgument(format!(
                "face bound {bound} gives more than {MAX_FACE_CANDIDATES} candidates"
            )));
        }
        let inverses: Vec<usize> = witness.iter().map(|&u| g.inverse_index(u)).collect();
        let last = g.element(witness[s - 1]);

        let mut tuples = Vec::new();
        let mut coords = vec![0i64; free];
        loop {
            let lams: Vec<Weight> = coords.chunks(rank).map(|c| Weight::new(c.to_vec())).collect();
            let mut acc = Weight::zero(rank);
            for (lam, &ui) in lams.iter().zip(&inverses) {
                acc += &g.element(ui).act_unchecked(lam);
            }
            let nu = -&last.act_unchecked(&acc);
            if nu.is_dominant() {
                let mut t = lams;
                t.push(nu);
                tuples.push(t);
            }
            // odometer with the last coordinate moving fastest
            let mut k = free;
            loop {
                if k == 0 {
                    let lattice_rank = lattice_rank(&tuples);
                    return Ok(FaceSample { tuples, lattice_rank });
                }
                k -= 1;
                if coords[k] < bound {
                    coords[k] += 1;
                    break;
                }
                coords[k] = 0;
            }
        }
    }
}

fn search_classes(
    classes: &[Vec<(Weight, Vec<usize>)>],
    last: &HashMap<Weight, usize>,
    stack: &mut Vec<usize>,
    sums: &mut Vec<Weight>,
    found: &mut Vec<(Vec<usize>, usize)>,
) {
    let depth = stack.len();
    let sum = sums.last().expect("nonempty").clone();
    if depth == classes.len() {
        if let Some(&u) = last.get(&-&sum) {
            found.push((stack.clone(), u));
        }
        return;
    }
    for (c, (img, _)) in classes[depth].iter().enumerate() {
        stack.push(c);
        sums.push(&sum + img);
        search_classes(classes, last, stack, sums, found);
        sums.pop();
        stack.pop();
    }
}

fn expand(
    classes: &[Vec<(Weight, Vec<usize>)>],
    choice: &[usize],
    i: usize,
    tuple: &mut Witness,
    out: &mut Vec<Witness>,
) {
    if i == choice.len() {
        out.push(tuple.clone());
        return;
    }
    for &u in &classes[i][choice[i]].1 {
        tuple[i] = u;
        expand(classes, choice, i + 1, tuple, out);
    }
}

/// Rank over Q of the concatenated coordinate vectors.
fn lattice_rank(tuples: &[Vec<Weight>]) -> usize {
    let mut basis: Vec<(usize, Vec<BigRational>)> = Vec::new();
    for t in tuples {
        let mut v: Vec<BigRational> =
            t.iter().flat_map(|w| w.coords().iter().map(|&c| BigRational::from_integer(c.into()))).collect();
        for (pivot, row) in &basis {
            if !v[*pivot].is_zero() {
                let f = v[*pivot].clone();
                for (x, y) in v.iter_mut().zip(row) {
                    *x -= &f * y;
                }
            }
        }
        if let Some(p) = v.iter().position(|x| !x.is_zero()) {
            let inv = BigRational::one() / &v[p];
            for x in v.iter_mut() {
                *x *= &inv;
            }
            // keep the basis fully reduced so later pivots stay clean
            for (_, row) in basis.iter_mut() {
                if !row[p].is_zero() {
                    let f = row[p].clone();
                    for (x, y) in row.iter_mut().zip(&v) {
                        *x -= &f * y;
                    }
                }
            }
            basis.push((p, v));
        }
    }
    basis.len()
}
