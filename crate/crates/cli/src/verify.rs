//! Invariant suites run by `eigencone verify`. Each suite stops at its
//! first counterexample and reports it as JSON.

use std::collections::BTreeSet;
use std::sync::Arc;

use clap::ValueEnum;
use eigencone::bkring::{
    bk_product_idx, enumerate_levi_movable_tuples, enumerate_partition_tuples, is_inversion_partition_idx,
    is_levi_movable_idx,
};
use eigencone::tensoracle::OracleBudget;
use eigencone::{Classifier, ClassifyOptions, CupCalculator, Error, TripleClassification, Weight, WeylGroup};
use serde_json::{json, Value};

use crate::commands::{witness_string, Failure};

/// Suites that scan `W^3` refuse groups larger than this.
pub const MAX_CUBE_ORDER: usize = 200;
/// Weight sweeps refuse more candidate triples than this.
pub const MAX_SWEEP: usize = 200_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Suite {
    /// Levi-movable triples have cup coefficient 1.
    #[value(alias = "theorem3")]
    LeviCup,
    /// BK coefficients match the cup product on Levi-movable triples and vanish elsewhere.
    #[value(alias = "theorem7")]
    BkSupport,
    /// BK product is commutative and associative, with Poincare duality.
    RingAxioms,
    /// Cohomological exactly when PRV with multiplicity one for k = 1..=depth.
    Equivalence,
    /// Partition and Levi-movable tuple counts agree with brute force.
    Counting,
    /// Every PRV triple carries an invariant.
    PrvLowerBound,
    /// Tensor decompositions add up in dimension and commute.
    OracleConsistency,
    /// Cohomological witnesses map to regularly extremal ones under right w0 translation.
    Bridge,
    All,
}

impl Suite {
    const EACH: [Suite; 8] = [
        Suite::LeviCup,
        Suite::BkSupport,
        Suite::RingAxioms,
        Suite::Equivalence,
        Suite::Counting,
        Suite::PrvLowerBound,
        Suite::OracleConsistency,
        Suite::Bridge,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::LeviCup => "levi-cup",
            Suite::BkSupport => "bk-support",
            Suite::RingAxioms => "ring-axioms",
            Suite::Equivalence => "equivalence",
            Suite::Counting => "counting",
            Suite::PrvLowerBound => "prv-lower-bound",
            Suite::OracleConsistency => "oracle-consistency",
            Suite::Bridge => "bridge",
            Suite::All => "all",
        }
    }
}

pub struct SuiteResult {
    pub suite: Suite,
    pub passed: bool,
    pub detail: String,
    pub counterexample: Option<Value>,
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyParams {
    pub weight_bound: i64,
    pub depth: u32,
    pub budget: OracleBudget,
}

type Check = Result<String, (String, Value)>;

pub fn expand(suites: &[Suite]) -> Vec<Suite> {
    let set: BTreeSet<Suite> = if suites.is_empty() || suites.contains(&Suite::All) {
        Suite::EACH.into_iter().collect()
    } else {
        suites.iter().copied().collect()
    };
    set.into_iter().collect()
}

pub fn run(g: Arc<WeylGroup>, suites: &[Suite], params: VerifyParams) -> Result<Vec<SuiteResult>, Failure> {
    let ctx = Context::new(g, params);
    let mut out = Vec::new();
    for suite in expand(suites) {
        let check = match suite {
            Suite::LeviCup => ctx.levi_cup()?,
            Suite::BkSupport => ctx.bk_support()?,
            Suite::RingAxioms => ctx.ring_axioms()?,
            Suite::Equivalence => ctx.equivalence()?,
            Suite::Counting => ctx.counting()?,
            Suite::PrvLowerBound => ctx.prv_lower_bound()?,
            Suite::OracleConsistency => ctx.oracle_consistency()?,
            Suite::Bridge => ctx.bridge()?,
            Suite::All => unreachable!("expanded"),
        };
        out.push(match check {
            Ok(detail) => SuiteResult { suite, passed: true, detail, counterexample: None },
            Err((detail, cx)) => SuiteResult { suite, passed: false, detail, counterexample: Some(cx) },
        });
    }
    Ok(out)
}

struct Context {
    g: Arc<WeylGroup>,
    classifier: Classifier,
    params: VerifyParams,
}

impl Context {
    fn new(g: Arc<WeylGroup>, params: VerifyParams) -> Self {
        let classifier = Classifier::with_budget(g.clone(), params.budget);
        Context { g, classifier, params }
    }

    fn group_name(&self) -> String {
        self.g.group_type().to_string()
    }

    fn words(&self, t: &[usize]) -> String {
        witness_string(&self.g, t)
    }

    fn require_cube(&self) -> Result<(), Failure> {
        if self.g.order() > MAX_CUBE_ORDER {
            return Err(Error::GroupTooLarge { group: self.group_name(), cap: MAX_CUBE_ORDER }.into());
        }
        Ok(())
    }

    fn cup(&self) -> Result<CupCalculator, Failure> {
        self.require_cube()?;
        Ok(CupCalculator::new(self.g.clone())?)
    }

    /// Degree-admissible triples: lengths add up to `2 l(w0)`.
    fn admissible(&self) -> Vec<[usize; 3]> {
        let g = &*self.g;
        let top = 2 * g.max_length();
        let mut by_length: Vec<Vec<usize>> = vec![Vec::new(); g.max_length() + 1];
        for w in 0..g.order() {
            by_length[g.element(w).length()].push(w);
        }
        let mut out = Vec::new();
        for u in 0..g.order() {
            for v in 0..g.order() {
                let used = g.element(u).length() + g.element(v).length();
                if let Some(need) = top.checked_sub(used).filter(|&n| n <= g.max_length()) {
                    out.extend(by_length[need].iter().map(|&w| [u, v, w]));
                }
            }
        }
        out
    }

    fn levi_cup(&self) -> Result<Check, Failure> {
        let cup = self.cup()?;
        let mut count = 0;
        for t in self.admissible() {
            if !is_levi_movable_idx(&self.g, &t) {
                continue;
            }
            count += 1;
            let c = cup.cup_coefficient(t[0], t[1], t[2])?;
            if c != 1 {
                return Ok(Err((
                    format!("Levi-movable triple {} has cup coefficient {c}", self.words(&t)),
                    json!({ "triple": self.words(&t), "cup_coefficient": c }),
                )));
            }
        }
        Ok(Ok(format!("{count}/{count} Levi-movable triples with cup coefficient 1")))
    }

    fn bk_support(&self) -> Result<Check, Failure> {
        let cup = self.cup()?;
        let g = &*self.g;
        let w0 = g.longest_index();
        let (mut levi, mut cup_only) = (0, 0);
        for t in self.admissible() {
            let lm = is_levi_movable_idx(g, &t);
            let bk = (bk_product_idx(g, t[0], t[1]) == Some(g.mul_index(w0, t[2]))) as u64;
            let c = cup.cup_coefficient(t[0], t[1], t[2])?;
            let bad = bk != lm as u64 || (lm && c != bk) || c < bk;
            if bad {
                return Ok(Err((
                    format!("triple {}: bk {bk}, cup {c}, levi-movable {lm}", self.words(&t)),
                    json!({ "triple": self.words(&t), "bk": bk, "cup": c, "levi_movable": lm }),
                )));
            }
            levi += lm as usize;
            cup_only += (!lm && c > 0) as usize;
        }
        Ok(Ok(format!(
            "{levi} Levi-movable triples agree with the cup product; {cup_only} nonzero cup triples have bk 0"
        )))
    }

    fn ring_axioms(&self) -> Result<Check, Failure> {
        self.require_cube()?;
        let g = &*self.g;
        let n = g.order();
        let w0 = g.longest_index();
        for a in 0..n {
            if bk_product_idx(g, w0, a) != Some(a) {
                return Ok(Err((
                    "fundamental class is not a unit".into(),
                    json!({ "axiom": "unit", "element": self.words(&[a]) }),
                )));
            }
            for b in 0..n {
                let ab = bk_product_idx(g, a, b);
                if ab != bk_product_idx(g, b, a) {
                    return Ok(Err((
                        "product is not commutative".into(),
                        json!({ "axiom": "commutativity", "pair": self.words(&[a, b]) }),
                    )));
                }
                let dual = is_levi_movable_idx(g, &[a, b, w0]);
                if dual != (b == g.mul_index(w0, a)) {
                    return Ok(Err((
                        "Poincare duality fails".into(),
                        json!({ "axiom": "duality", "pair": self.words(&[a, b]) }),
                    )));
                }
                for c in 0..n {
                    let left = ab.and_then(|x| bk_product_idx(g, x, c));
                    let right = bk_product_idx(g, b, c).and_then(|x| bk_product_idx(g, a, x));
                    if left != right {
                        return Ok(Err((
                            "product is not associative".into(),
                            json!({ "axiom": "associativity", "triple": self.words(&[a, b, c]) }),
                        )));
                    }
                }
            }
        }
        Ok(Ok(format!("commutativity, associativity and duality over {} triples", n * n * n)))
    }

    fn counting(&self) -> Result<Check, Failure> {
        self.require_cube()?;
        let g = &*self.g;
        let n = g.order();
        let mut parts = BTreeSet::new();
        let mut levi = BTreeSet::new();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let t = vec![a, b, c];
                    if is_inversion_partition_idx(g, &t) {
                        parts.insert(t.clone());
                    }
                    if is_levi_movable_idx(g, &t) {
                        levi.insert(t);
                    }
                }
            }
        }
        let enumerated: BTreeSet<Vec<usize>> = enumerate_partition_tuples(g, 3)?.into_iter().collect();
        let enumerated_levi: BTreeSet<Vec<usize>> = enumerate_levi_movable_tuples(g, 3)?.into_iter().collect();
        for (name, fast, brute) in [("partition", &enumerated, &parts), ("levi-movable", &enumerated_levi, &levi)] {
            if fast != brute {
                let missing: Vec<String> = brute.difference(fast).take(5).map(|t| self.words(t)).collect();
                let extra: Vec<String> = fast.difference(brute).take(5).map(|t| self.words(t)).collect();
                return Ok(Err((
                    format!("{name} enumeration: {} tuples vs {} by brute force", fast.len(), brute.len()),
                    json!({ "kind": name, "missing": missing, "extra": extra }),
                )));
            }
        }
        Ok(Ok(format!("{} partition triples, {} Levi-movable triples", parts.len(), levi.len())))
    }

    fn dominant_box(&self) -> Result<Vec<Weight>, Failure> {
        let r = self.g.root_system().rank();
        let side = (self.params.weight_bound + 1) as usize;
        let count = side.checked_pow(3 * r as u32).filter(|&c| c <= MAX_SWEEP);
        if self.params.weight_bound < 0 || count.is_none() {
            return Err(Failure::new(
                5,
                format!("weight sweep with bound {} is too large for {}", self.params.weight_bound, self.group_name()),
            ));
        }
        let mut out = vec![Vec::new()];
        for _ in 0..r {
            out = out
                .into_iter()
                .flat_map(|p: Vec<i64>| {
                    (0..=self.params.weight_bound).map(move |c| {
                        let mut q = p.clone();
                        q.push(c);
                        q
                    })
                })
                .collect();
        }
        Ok(out.into_iter().map(Weight::new).collect())
    }

    fn sweep(
        &self,
        mut f: impl FnMut(&[Weight; 3]) -> Result<Option<(String, Value)>, Failure>,
    ) -> Result<Check, Failure> {
        let b = self.dominant_box()?;
        let mut count = 0;
        for x in &b {
            for y in &b {
                for z in &b {
                    let t = [x.clone(), y.clone(), z.clone()];
                    if let Some(fail) = f(&t)? {
                        return Ok(Err(fail));
                    }
                    count += 1;
                }
            }
        }
        Ok(Ok(format!("{count} triples")))
    }

    fn classify(&self, t: &[Weight]) -> Result<TripleClassification, Failure> {
        let opts = ClassifyOptions { depth: self.params.depth, verify_cup: false };
        let c = self.classifier.classify(t, &opts)?;
        if let Some(e) = c.overflow.clone() {
            return Err(e.into());
        }
        Ok(c)
    }

    fn equivalence(&self) -> Result<Check, Failure> {
        let (mut coh, mut prv) = (0, 0);
        let res = self.sweep(|t| {
            let c = self.classify(t)?;
            let ones = c.oracle_mults.iter().all(|&(_, d)| d == 1);
            coh += c.cohomological as usize;
            prv += c.prv as usize;
            let ok = c.cohomological == (c.prv && ones) && c.regularly_extremal == c.cohomological;
            Ok((!ok).then(|| {
                (
                    format!("{} breaks the equivalence", eigencone::rootsys::format_weights(t)),
                    json!({
                        "weights": eigencone::rootsys::format_weights(t),
                        "prv": c.prv,
                        "cohomological": c.cohomological,
                        "regularly_extremal": c.regularly_extremal,
                        "oracle_mults": c.oracle_mults,
                    }),
                )
            }))
        })?;
        Ok(res.map(|d| format!("{d} at depth {}: {prv} PRV, {coh} cohomological", self.params.depth)))
    }

    fn prv_lower_bound(&self) -> Result<Check, Failure> {
        let mut prv = 0;
        let res = self.sweep(|t| {
            if self.classifier.prv_witnesses(t)?.is_empty() {
                return Ok(None);
            }
            prv += 1;
            let d = self.classifier.oracle().invariant_dim(t)?;
            Ok((d == 0).then(|| {
                let w = eigencone::rootsys::format_weights(t);
                (format!("PRV triple {w} has no invariant"), json!({ "weights": w, "invariant_dim": d }))
            }))
        })?;
        Ok(res.map(|d| format!("{d}: {prv} PRV triples all carry an invariant")))
    }

    fn bridge(&self) -> Result<Check, Failure> {
        let g = &*self.g;
        let w0 = g.longest_index();
        let mut nonempty = 0;
        let res = self.sweep(|t| {
            let coh = self.classifier.cohomological_witnesses(t)?;
            let rex = self.classifier.regularly_extremal_witnesses(t, false)?;
            let moved: BTreeSet<Vec<usize>> =
                coh.iter().map(|w| w.iter().map(|&u| g.mul_index(u, w0)).collect()).collect();
            let rex: BTreeSet<Vec<usize>> = rex.into_iter().collect();
            nonempty += !coh.is_empty() as usize;
            Ok((moved != rex).then(|| {
                let w = eigencone::rootsys::format_weights(t);
                (
                    format!("{w}: right w0 translation does not match"),
                    json!({
                        "weights": w,
                        "cohomological": coh.iter().map(|x| self.words(x)).collect::<Vec<_>>(),
                        "regularly_extremal": rex.iter().map(|x| self.words(x)).collect::<Vec<_>>(),
                    }),
                )
            }))
        })?;
        Ok(res.map(|d| format!("{d}: {nonempty} with witnesses, all matched by right w0 translation")))
    }

    fn oracle_consistency(&self) -> Result<Check, Failure> {
        let b = self.dominant_box()?;
        let oracle = self.classifier.oracle();
        let mut pairs = 0;
        for x in &b {
            for y in &b {
                let dec = oracle.decompose(x, y)?;
                let cx = || json!({ "lambda": x.to_string(), "mu": y.to_string() });
                if dec != oracle.decompose(y, x)? {
                    return Ok(Err((format!("decompose({x}; {y}) is not symmetric"), cx())));
                }
                let mut total = num_bigint::BigUint::from(0u32);
                for (nu, m) in &dec.terms {
                    total += oracle.weyl_dim(nu)? * *m;
                }
                if total != oracle.weyl_dim(x)? * oracle.weyl_dim(y)? {
                    return Ok(Err((format!("dimensions of {x} x {y} do not add up"), cx())));
                }
                if let Some((nu, m)) = dec.terms.first() {
                    let nu_star = oracle.dual(nu);
                    let t = [x.clone(), y.clone(), nu_star];
                    for p in [[0, 1, 2], [1, 2, 0], [2, 0, 1], [1, 0, 2]] {
                        let ws: Vec<Weight> = p.iter().map(|&k| t[k].clone()).collect();
                        if oracle.invariant_dim(&ws)? != *m {
                            return Ok(Err((format!("invariant dimension of {x}; {y}; {nu}* is not symmetric"), cx())));
                        }
                    }
                }
                pairs += 1;
            }
        }
        Ok(Ok(format!("{pairs} pairs")))
    }
}

pub fn describe(r: &SuiteResult) -> String {
    let status = if r.passed { "PASS" } else { "FAIL" };
    format!("{status} {}: {}", r.suite.name(), r.detail)
}

pub fn counterexample(group: &str, r: &SuiteResult) -> Option<Value> {
    r.counterexample.as_ref().map(|cx| json!({ "suite": r.suite.name(), "group": group, "counterexample": cx }))
}
