mod commands;
mod config;
mod verify;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use eigencone::{ClassifyOptions, GroupType, WeylGroup};
use serde_json::json;

use commands::{csv_string, Failure, Rendered};
use config::{Format, RunConfig, CONFIG_ENV};
use verify::{Suite, VerifyParams};

#[derive(Parser)]
#[command(
    name = "eigencone",
    version,
    about = "Classify tuples of dominant weights and check the Belkale-Kumar product on G/B"
)]
struct Cli {
    /// TOML run configuration.
    #[arg(long, global = true, env = CONFIG_ENV)]
    config: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// PRV, cohomological and regularly extremal status of a weight tuple.
    Classify {
        #[arg(long)]
        group: Option<String>,
        /// Semicolon-separated weights, e.g. "1,0;0,1;1,1".
        #[arg(long, allow_hyphen_values = true)]
        weights: String,
        /// Probe multiplicities for k = 1..=depth.
        #[arg(long)]
        depth: Option<u32>,
        /// Re-check regularly extremal witnesses with the cup-product oracle.
        #[arg(long)]
        verify_cup: bool,
    },
    /// Every degree-admissible structure constant of the BK product.
    BkTable {
        #[arg(long)]
        group: Option<String>,
        #[arg(long, default_value_t = 200)]
        max_order: usize,
    },
    /// Tuples whose inversion sets partition the positive roots.
    Enumerate {
        #[arg(long)]
        group: Option<String>,
        #[arg(long = "s", default_value_t = 3)]
        s: usize,
        /// List Levi-movable tuples (complements partition) instead.
        #[arg(long)]
        levi: bool,
    },
    /// Decompose a tensor product of two irreducibles.
    Decompose {
        #[arg(long)]
        group: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        weights: String,
    },
    /// Sample the face attached to a witness.
    Face {
        #[arg(long)]
        group: Option<String>,
        /// Semicolon-separated reduced words, e.g. "e;e;1.2.1".
        #[arg(long)]
        witness: String,
        #[arg(long, default_value_t = 1)]
        bound: i64,
    },
    /// Run invariant suites; exits 1 if any fails.
    Verify {
        #[arg(long)]
        group: Option<String>,
        #[arg(long = "suite", value_enum)]
        suites: Vec<Suite>,
        /// Coordinate bound for weight sweeps.
        #[arg(long)]
        bound: Option<i64>,
        #[arg(long)]
        depth: Option<u32>,
    },
}

fn load_group(flag: Option<String>, cfg: &RunConfig) -> Result<Arc<WeylGroup>, Failure> {
    let name = flag
        .or_else(|| cfg.group.clone())
        .ok_or_else(|| Failure::new(2, "no group given (use --group or set `group` in the config)"))?;
    let t: GroupType = name.parse()?;
    Ok(Arc::new(WeylGroup::for_type(t)?))
}

fn dispatch(command: Command, cfg: &RunConfig) -> Result<Rendered, Failure> {
    let budget = cfg.oracle.into();
    match command {
        Command::Classify { group, weights, depth, verify_cup } => {
            let g = load_group(group, cfg)?;
            let opts =
                ClassifyOptions { depth: depth.unwrap_or(cfg.scaling_depth), verify_cup: verify_cup || cfg.verify.cup };
            commands::classify(g, &weights, opts, budget)
        }
        Command::BkTable { group, max_order } => commands::bk_table(&*load_group(group, cfg)?, max_order),
        Command::Enumerate { group, s, levi } => commands::enumerate(&*load_group(group, cfg)?, s, levi),
        Command::Decompose { group, weights } => commands::decompose(&*load_group(group, cfg)?, &weights, budget),
        Command::Face { group, witness, bound } => commands::face(load_group(group, cfg)?, &witness, bound),
        Command::Verify { group, suites, bound, depth } => {
            let g = load_group(group, cfg)?;
            let name = g.group_type().to_string();
            let params = VerifyParams {
                weight_bound: bound.unwrap_or(cfg.weight_bound),
                depth: depth.unwrap_or(cfg.scaling_depth),
                budget,
            };
            let results = verify::run(g, &suites, params)?;
            Ok(render_verify(&name, &results))
        }
    }
}

fn render_verify(group: &str, results: &[verify::SuiteResult]) -> Rendered {
    let mut text = String::new();
    for r in results {
        text.push_str(&verify::describe(r));
        text.push('\n');
        if let Some(cx) = verify::counterexample(group, r) {
            text.push_str(&format!("  counterexample: {cx}\n"));
        }
    }
    let json = json!({
        "group": group,
        "suites": results.iter().map(|r| json!({
            "suite": r.suite.name(),
            "passed": r.passed,
            "detail": r.detail,
            "counterexample": r.counterexample,
        })).collect::<Vec<_>>(),
    });
    let mut csv = vec![vec!["suite".to_string(), "passed".into(), "detail".into()]];
    csv.extend(results.iter().map(|r| vec![r.suite.name().to_string(), r.passed.to_string(), r.detail.clone()]));
    let failed: Vec<_> = results.iter().filter(|r| !r.passed).collect();
    let note = (!failed.is_empty()).then(|| {
        failed
            .iter()
            .filter_map(|r| verify::counterexample(group, r))
            .map(|cx| cx.to_string())
            .collect::<Vec<_>>()
            .join("\n")
    });
    Rendered { text, json, csv, code: if failed.is_empty() { 0 } else { 1 }, note }
}

fn emit(rendered: &Rendered, format: Format, out: Option<&PathBuf>) -> Result<(), Failure> {
    let body = match format {
        Format::Text => rendered.text.clone(),
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&rendered.json).expect("json value")),
        Format::Csv => csv_string(&rendered.csv),
    };
    match out {
        Some(path) => std::fs::write(path, body).map_err(|e| Failure::new(2, format!("{}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(body.as_bytes()).and_then(|_| stdout.flush()).map_err(|e| Failure::new(1, e.to_string()))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = (|| {
        let cfg = match &cli.config {
            Some(path) => RunConfig::load(path).map_err(|m| Failure::new(2, m))?,
            None => RunConfig::default(),
        };
        let format = cli.format.unwrap_or(cfg.format);
        let rendered = dispatch(cli.command, &cfg)?;
        emit(&rendered, format, cli.out.as_ref())?;
        // Text output already carries the summary; other formats repeat it on stderr.
        if let (Some(note), false) = (&rendered.note, format == Format::Text) {
            eprintln!("{note}");
        }
        Ok::<i32, Failure>(rendered.code)
    })();
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code as u8)
        }
    }
}
