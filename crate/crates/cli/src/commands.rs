use std::fmt::Write as _;
use std::sync::Arc;

use eigencone::bkring::{enumerate_levi_movable_tuples, enumerate_partition_tuples, is_levi_movable_idx};
use eigencone::rootsys::{format_weights, parse_weights};
use eigencone::tensoracle::{OracleBudget, TensorOracle};
use eigencone::{Classifier, ClassifyOptions, Error, TripleClassification, Weight, WeylGroup};
use num_bigint::BigUint;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

/// A command's result in every output format, plus its exit code.
pub struct Rendered {
    pub text: String,
    pub json: Value,
    pub csv: Vec<Vec<String>>,
    pub code: i32,
    /// Printed on stderr.
    pub note: Option<String>,
}

impl Rendered {
    fn ok(text: String, json: Value, csv: Vec<Vec<String>>) -> Self {
        Rendered { text, json, csv, code: 0, note: None }
    }
}

#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    pub fn new(code: i32, message: impl Into<String>) -> Self {
        Failure { code, message: message.into() }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_)
        | Error::UnsupportedType(_)
        | Error::RankMismatch { .. }
        | Error::TupleSize { .. }
        | Error::InvalidArgument(_)
        | Error::IndexOutOfRange { .. }
        | Error::MixedRootSystems(..) => 2,
        Error::NonDominantInput(_) | Error::InvalidWitness(_) => 3,
        Error::OracleOverflow(_) => 4,
        Error::GroupTooLarge { .. } | Error::TooManyWitnesses { .. } => 5,
        Error::Arithmetic(_) => 1,
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure { code: exit_code(&e), message: e.to_string() }
    }
}

pub fn witness_string(g: &WeylGroup, t: &[usize]) -> String {
    t.iter().map(|&u| g.element(u).word_string()).collect::<Vec<_>>().join(";")
}

fn parse_witness(g: &WeylGroup, s: &str) -> Result<Vec<usize>, Failure> {
    s.split(';').map(|w| g.parse_element(w.trim()).map_err(Failure::from)).collect()
}

fn scope_label(s: usize) -> &'static str {
    match s {
        2 => "pair",
        3 => "triple",
        _ => "extended: s-fold generalization",
    }
}

pub fn csv_string(rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.write_record(r).expect("in-memory csv write");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv flush")).expect("utf8 csv")
}

pub fn classify(
    g: Arc<WeylGroup>,
    weights: &str,
    opts: ClassifyOptions,
    budget: OracleBudget,
) -> Result<Rendered, Failure> {
    let ws = parse_weights(weights)?;
    let classifier = Classifier::with_budget(g.clone(), budget);
    let c = classifier.classify(&ws, &opts)?;
    let mut out = render_classification(&g, &c);
    if let Some(e) = &c.overflow {
        out.code = exit_code(e);
        out.note = Some(format!("error: {e}"));
    }
    Ok(out)
}

fn render_classification(g: &WeylGroup, c: &TripleClassification) -> Rendered {
    let lists =
        [("prv", &c.prv_witnesses), ("cohomological", &c.coh_witnesses), ("regularly_extremal", &c.rex_witnesses)];
    let provenance = c.stable_mult_one.provenance();
    let scope = scope_label(c.weights.len());

    let mut text = String::new();
    writeln!(text, "group: {}", c.group).unwrap();
    writeln!(text, "weights: {}", format_weights(&c.weights)).unwrap();
    if c.weights.len() != 3 {
        writeln!(text, "scope: {scope}").unwrap();
    }
    writeln!(text, "prv: {}", c.prv).unwrap();
    writeln!(text, "cohomological: {}", c.cohomological).unwrap();
    writeln!(text, "regularly_extremal: {}", c.regularly_extremal).unwrap();
    writeln!(text, "stable_mult_one: {} [{provenance}]", c.stable_mult_one).unwrap();
    let mults: Vec<String> = c.oracle_mults.iter().map(|(k, d)| format!("k={k}:{d}")).collect();
    writeln!(text, "oracle_mults: {}", mults.join(" ")).unwrap();
    if let Some(e) = &c.overflow {
        writeln!(text, "oracle: {e}").unwrap();
    }
    for (name, list) in lists {
        writeln!(text, "{name}_witnesses: {}", list.len()).unwrap();
        for t in list.iter() {
            writeln!(text, "  {}", witness_string(g, t)).unwrap();
        }
    }

    let witnesses: Vec<Value> = lists
        .iter()
        .flat_map(|(name, list)| {
            list.iter().map(move |t| {
                let elems: Vec<String> = t.iter().map(|&u| g.element(u).word_string()).collect();
                json!({ "kind": name, "elements": elems })
            })
        })
        .collect();
    let json = json!({
        "group": c.group.to_string(),
        "weights": c.weights.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
        "scope": scope,
        "flags": {
            "prv": c.prv,
            "cohomological": c.cohomological,
            "regularly_extremal": c.regularly_extremal,
            "stable_mult_one": c.stable_mult_one.to_string(),
        },
        "witnesses": witnesses,
        "oracle_mults": c.oracle_mults.iter().map(|(k, d)| json!({ "k": k, "dim": d })).collect::<Vec<_>>(),
        "oracle_overflow": c.overflow.as_ref().map(|e| e.to_string()),
        "provenance": provenance,
    });

    let row = |a: &str, b: &str, v: String| vec![a.to_string(), b.to_string(), v];
    let mut csv = vec![row("section", "key", "value".into())];
    csv.push(row("input", "group", c.group.to_string()));
    csv.push(row("input", "weights", format_weights(&c.weights)));
    csv.push(row("input", "scope", scope.into()));
    csv.push(row("flag", "prv", c.prv.to_string()));
    csv.push(row("flag", "cohomological", c.cohomological.to_string()));
    csv.push(row("flag", "regularly_extremal", c.regularly_extremal.to_string()));
    csv.push(row("flag", "stable_mult_one", c.stable_mult_one.to_string()));
    csv.push(row("flag", "provenance", provenance.into()));
    for (k, d) in &c.oracle_mults {
        csv.push(row("oracle_mult", &k.to_string(), d.to_string()));
    }
    for (name, list) in lists {
        for t in list.iter() {
            csv.push(row("witness", name, witness_string(g, t)));
        }
    }
    Rendered::ok(text, json, csv)
}

pub fn bk_table(g: &WeylGroup, max_order: usize) -> Result<Rendered, Failure> {
    if g.order() > max_order {
        return Err(Error::GroupTooLarge { group: g.group_type().to_string(), cap: max_order }.into());
    }
    let top = 2 * g.max_length();
    let mut by_length: Vec<Vec<usize>> = vec![Vec::new(); g.max_length() + 1];
    for w in 0..g.order() {
        by_length[g.element(w).length()].push(w);
    }
    let mut rows = vec![vec!["u".to_string(), "v".into(), "w".into(), "coefficient".into()]];
    let mut nonzero = 0usize;
    for u in 0..g.order() {
        for v in 0..g.order() {
            let used = g.element(u).length() + g.element(v).length();
            let Some(need) = top.checked_sub(used).filter(|&n| n <= g.max_length()) else { continue };
            for &w in &by_length[need] {
                let c = is_levi_movable_idx(g, &[u, v, w]) as u8;
                nonzero += c as usize;
                rows.push(vec![
                    g.element(u).word_string(),
                    g.element(v).word_string(),
                    g.element(w).word_string(),
                    c.to_string(),
                ]);
            }
        }
    }
    let body = csv_string(&rows);
    let digest = format!("{:x}", Sha256::digest(body.as_bytes()));
    let count = rows.len() - 1;

    let mut text = String::new();
    for r in &rows {
        writeln!(text, "{}", r.join(" ")).unwrap();
    }
    writeln!(text, "rows: {count}").unwrap();
    writeln!(text, "nonzero: {nonzero}").unwrap();
    writeln!(text, "sha256: {digest}").unwrap();
    let json = json!({
        "group": g.group_type().to_string(),
        "rows": rows[1..].iter().map(|r| json!({
            "u": r[0], "v": r[1], "w": r[2], "coefficient": r[3].parse::<u8>().unwrap()
        })).collect::<Vec<_>>(),
        "row_count": count,
        "nonzero": nonzero,
        "sha256": digest,
    });
    let mut out = Rendered::ok(text, json, rows);
    out.note = Some(format!("rows: {count} nonzero: {nonzero} sha256: {digest}"));
    Ok(out)
}

pub fn enumerate(g: &WeylGroup, s: usize, levi: bool) -> Result<Rendered, Failure> {
    let tuples = if levi { enumerate_levi_movable_tuples(g, s)? } else { enumerate_partition_tuples(g, s)? };
    let kind = if levi { "levi-movable" } else { "inversion-partition" };
    let mut text = String::new();
    for t in &tuples {
        writeln!(text, "{}", witness_string(g, t)).unwrap();
    }
    writeln!(text, "rows: {}", tuples.len()).unwrap();
    let mut csv = vec![(1..=s).map(|i| format!("w{i}")).collect::<Vec<_>>()];
    csv.extend(tuples.iter().map(|t| t.iter().map(|&u| g.element(u).word_string()).collect()));
    let json = json!({
        "group": g.group_type().to_string(),
        "s": s,
        "kind": kind,
        "scope": scope_label(s),
        "tuples": csv[1..].to_vec(),
        "row_count": tuples.len(),
    });
    Ok(Rendered::ok(text, json, csv))
}

pub fn decompose(g: &WeylGroup, weights: &str, budget: OracleBudget) -> Result<Rendered, Failure> {
    let ws = parse_weights(weights)?;
    if ws.len() != 2 {
        return Err(Failure::new(2, format!("decompose takes two weights, got {}", ws.len())));
    }
    let oracle = TensorOracle::with_budget(g.root_system_arc(), budget);
    let dec = oracle.decompose(&ws[0], &ws[1])?;
    let mut rows = vec![vec!["nu".to_string(), "multiplicity".into(), "dim".into()]];
    let total = total_dim(&oracle, &dec.terms)?;
    for (nu, m) in &dec.terms {
        rows.push(vec![nu.to_string(), m.to_string(), oracle.weyl_dim(nu)?.to_string()]);
    }
    let (da, db) = (oracle.weyl_dim(&ws[0])?, oracle.weyl_dim(&ws[1])?);
    let mut text = String::new();
    for r in &rows[1..] {
        writeln!(text, "{} x{} dim {}", r[0], r[1], r[2]).unwrap();
    }
    writeln!(text, "rows: {}", dec.terms.len()).unwrap();
    writeln!(text, "total dim: {total} = {da} x {db}").unwrap();
    let json = json!({
        "group": g.group_type().to_string(),
        "weights": ws.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
        "terms": rows[1..].iter().map(|r| json!({
            "nu": r[0], "multiplicity": r[1].parse::<u64>().unwrap(), "dim": r[2]
        })).collect::<Vec<_>>(),
        "total_dim": total.to_string(),
    });
    Ok(Rendered::ok(text, json, rows))
}

fn total_dim(oracle: &TensorOracle, terms: &[(Weight, u64)]) -> Result<BigUint, Error> {
    let mut total = BigUint::from(0u32);
    for (nu, m) in terms {
        total += oracle.weyl_dim(nu)? * *m;
    }
    Ok(total)
}

pub fn face(g: Arc<WeylGroup>, witness: &str, bound: i64) -> Result<Rendered, Failure> {
    let t = parse_witness(&g, witness)?;
    let classifier = Classifier::new(g.clone());
    let sample = classifier.face_sample(&t, bound)?;
    let rows: Vec<String> = sample.tuples.iter().map(|ws| format_weights(ws)).collect();
    let mut text = String::new();
    for r in &rows {
        writeln!(text, "{r}").unwrap();
    }
    writeln!(text, "rows: {}", rows.len()).unwrap();
    writeln!(text, "lattice rank: {}", sample.lattice_rank).unwrap();
    let json = json!({
        "group": g.group_type().to_string(),
        "witness": witness_string(&g, &t),
        "bound": bound,
        "tuples": rows,
        "lattice_rank": sample.lattice_rank,
    });
    let mut csv = vec![vec!["weights".to_string()]];
    csv.extend(rows.iter().map(|r| vec![r.clone()]));
    Ok(Rendered::ok(text, json, csv))
}
