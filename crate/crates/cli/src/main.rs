use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand};
use serde::Deserialize;
use serde_json::{json, Value};

use qfactor::catalog::{self, EXAMPLE_NAMES};
use qfactor::decision::{evaluate, is_real};
use qfactor::drinfeld::KRFactor;
use qfactor::dynkin::{DynkinA, Interval, Node};
use qfactor::graph::{build_graph, QFactGraph};
use qfactor::qchar::{dominant_product_lweights, socle_head};
use qfactor::redsets::r_set;
use qfactor::sweep::{self, SweepBounds};

const FIXTURES: &str = include_str!("../data/fixtures.json");

#[derive(Parser)]
#[command(
    name = "qfactor",
    version,
    about = "Primality and reality of type A q-factorization graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the reducibility set of two Kirillov-Reshetikhin modules.
    Rset {
        #[arg(long)]
        rank: Node,
        #[arg(long)]
        i: Node,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        j: Node,
        #[arg(long)]
        s: u32,
        /// Lower end of the subdiagram (defaults to the whole diagram).
        #[arg(long, requires = "jhi")]
        jlo: Option<Node>,
        #[arg(long, requires = "jlo")]
        jhi: Option<Node>,
    },
    /// Print the q-factorization of the input polynomial.
    Factorize { input: PathBuf },
    /// Print the q-factorization graph in DOT format.
    Graph {
        input: PathBuf,
        /// Write DOT here instead of stdout; stdout then gets a JSON summary.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Print the shape classification of the graph.
    Classify { input: PathBuf },
    /// Decide primality (and reality) of the input.
    Prime {
        input: PathBuf,
        /// Include the full certificate.
        #[arg(long)]
        trace: bool,
    },
    /// Decide reality of the input.
    Real { input: PathBuf },
    /// Dominant ℓ-weights and socle/head of a product of two fundamentals.
    QcharProduct {
        #[arg(long)]
        rank: Node,
        #[arg(long)]
        i: Node,
        #[arg(long)]
        j: Node,
        #[arg(long)]
        m: i64,
    },
    /// Rerun a worked example against its stored reference statuses.
    Examples { name: String },
    /// Run a consistency sweep.
    Sweep {
        #[arg(long)]
        check: String,
        #[arg(long, default_value_t = 6)]
        max_rank: Node,
        #[arg(long, default_value_t = 4)]
        max_weight: u32,
        #[arg(long, default_value_t = 1000)]
        samples: u32,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
    },
}

/// Exit code 1 for bad input, 2 for a failed internal check.
enum Failure {
    Input(anyhow::Error),
    Internal(anyhow::Error),
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Input(e.into())
    }
}

type CmdResult = Result<(), Failure>;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct InputSpec {
    rank: Node,
    factors: Vec<FactorSpec>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FactorSpec {
    color: Node,
    exponent: i64,
    weight: u32,
}

fn read_input(path: &Path) -> anyhow::Result<String> {
    if path.as_os_str() == "-" {
        let mut buf = String::new();
        io::stdin()
            .read_to_string(&mut buf)
            .context("reading stdin")?;
        Ok(buf)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn load_graph(path: &Path) -> anyhow::Result<QFactGraph> {
    let spec: InputSpec = serde_json::from_str(&read_input(path)?).context("parsing input JSON")?;
    let ambient = DynkinA::new(spec.rank)?;
    let factors = spec
        .factors
        .iter()
        .map(|f| KRFactor::new(f.color, f.exponent, f.weight))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(build_graph(&factors, ambient)?)
}

fn emit(value: &Value) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("serializable")
    );
}

fn factor_list(g: &QFactGraph) -> Value {
    json!(g.vertices())
}

fn cmd_rset(
    rank: Node,
    i: Node,
    r: u32,
    j: Node,
    s: u32,
    window: Option<(Node, Node)>,
) -> CmdResult {
    let g = DynkinA::new(rank)?;
    let within = match window {
        Some((lo, hi)) => Interval::new(lo, hi)?,
        None => g.full(),
    };
    println!("{}", r_set(&g, i, r, j, s, within)?);
    Ok(())
}

fn cmd_factorize(input: &Path) -> CmdResult {
    let g = load_graph(input)?;
    if g.was_refactorized() {
        eprintln!("note: input was not a q-factorization and has been refactorized");
    }
    emit(&json!({ "refactorized": g.was_refactorized(), "factors": factor_list(&g) }));
    Ok(())
}

fn cmd_graph(input: &Path, dot: Option<&Path>) -> CmdResult {
    let g = load_graph(input)?;
    match dot {
        Some(path) => {
            fs::write(path, g.to_dot()).with_context(|| format!("writing {}", path.display()))?;
            emit(&json!({
                "dot": path.display().to_string(),
                "vertices": g.len(),
                "arrows": g.arrows().len(),
            }));
        }
        None => print!("{}", g.to_dot()),
    }
    Ok(())
}

fn cmd_classify(input: &Path) -> CmdResult {
    let g = load_graph(input)?;
    let shape = g.classify();
    eprintln!(
        "{:?}: {} vertices, {} arrows",
        shape.tag,
        g.len(),
        g.arrows().len()
    );
    emit(&json!({ "factors": factor_list(&g), "shape": shape }));
    Ok(())
}

fn cmd_prime(input: &Path, trace: bool) -> CmdResult {
    let g = load_graph(input)?;
    let v = evaluate(&g);
    eprintln!("primality {:?}, reality {:?}", v.primality, v.reality);
    let mut out = json!({ "primality": v.primality, "reality": v.reality });
    if trace {
        out["factors"] = factor_list(&g);
        out["refactorized"] = json!(g.was_refactorized());
        out["certificate"] = json!(v.certificate);
    }
    emit(&out);
    Ok(())
}

fn cmd_real(input: &Path) -> CmdResult {
    let g = load_graph(input)?;
    let v = is_real(&g);
    eprintln!("reality {:?}", v.reality);
    emit(&json!({ "reality": v.reality, "certificate": v.certificate }));
    Ok(())
}

fn cmd_qchar(rank: Node, i: Node, j: Node, m: i64) -> CmdResult {
    let g = DynkinA::new(rank)?;
    let dominant = dominant_product_lweights(&g, i, j, m)?;
    let sh = socle_head(&g, i, j, m)?;
    if dominant != sh.dominant_set() || !sh.socle_simple {
        return Err(Failure::Internal(anyhow!(
            "brute force disagrees with the closed form"
        )));
    }
    emit(&json!({
        "dominant": dominant.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
        "p": sh.p,
        "socle": sh.socle,
        "socle_dropped_trivial": sh.socle_pair.iter().filter(|f| f.trivial).count(),
        "socle_simple": sh.socle_simple,
        "head": sh.head.roots().map(|(c, e, k)| json!({ "color": c, "exponent": e, "multiplicity": k })).collect::<Vec<_>>(),
    }));
    Ok(())
}

fn cmd_examples(name: &str) -> CmdResult {
    if !EXAMPLE_NAMES.contains(&name) {
        return Err(Failure::Input(anyhow!(
            "unknown example {name:?}; expected one of {}",
            EXAMPLE_NAMES.join(", ")
        )));
    }
    let fixtures: Value = serde_json::from_str(FIXTURES).expect("bundled fixtures parse");
    let report = catalog::run_example(name).map_err(|e| Failure::Internal(e.into()))?;
    for c in &report.checks {
        eprintln!("{} {}", if c.pass { "PASS" } else { "FAIL" }, c.claim);
    }
    let verdicts: Vec<Value> = report
        .verdicts
        .iter()
        .map(|(fixture, v)| {
            let reference = fixtures["fixtures"]
                .get(fixture)
                .cloned()
                .unwrap_or(Value::Null);
            eprintln!(
                "{fixture}: engine {:?}/{:?}, reference {}",
                v.primality,
                v.reality,
                reference.get("primality").unwrap_or(&Value::Null)
            );
            json!({
                "fixture": fixture,
                "engine": { "primality": v.primality, "reality": v.reality },
                "reference": reference,
            })
        })
        .collect();
    emit(&json!({
        "example": name,
        "all_pass": report.all_pass(),
        "checks": report.checks,
        "verdicts": verdicts,
    }));
    if report.all_pass() {
        Ok(())
    } else {
        Err(Failure::Internal(anyhow!(
            "example {name} has failing checks"
        )))
    }
}

fn cmd_sweep(check: &str, bounds: SweepBounds) -> CmdResult {
    if !sweep::CHECK_NAMES.contains(&check) {
        return Err(Failure::Input(anyhow!(
            "unknown check {check:?}; expected one of {}",
            sweep::CHECK_NAMES.join(", ")
        )));
    }
    let report = sweep::run_check(check, bounds).map_err(|e| Failure::Internal(e.into()))?;
    let status = if report.passed() { "PASS" } else { "FAIL" };
    eprintln!(
        "{status} {check}: {} instances, {} failures",
        report.instances, report.failures
    );
    emit(&json!({ "status": status, "bounds": bounds, "report": report }));
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Internal(anyhow!(
            "sweep {check} found a counterexample"
        )))
    }
}

fn run(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Rset {
            rank,
            i,
            r,
            j,
            s,
            jlo,
            jhi,
        } => cmd_rset(rank, i, r, j, s, jlo.zip(jhi)),
        Command::Factorize { input } => cmd_factorize(&input),
        Command::Graph { input, dot } => cmd_graph(&input, dot.as_deref()),
        Command::Classify { input } => cmd_classify(&input),
        Command::Prime { input, trace } => cmd_prime(&input, trace),
        Command::Real { input } => cmd_real(&input),
        Command::QcharProduct { rank, i, j, m } => cmd_qchar(rank, i, j, m),
        Command::Examples { name } => cmd_examples(&name),
        Command::Sweep {
            check,
            max_rank,
            max_weight,
            samples,
            seed,
        } => cmd_sweep(
            &check,
            SweepBounds {
                max_rank,
                max_weight,
                samples,
                seed,
            },
        ),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Internal(e)) => {
            eprintln!("internal error: {e:#}");
            ExitCode::from(2)
        }
    }
}
