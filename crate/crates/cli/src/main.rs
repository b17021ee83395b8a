use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde::Serialize;
use serde_json::{json, Value};

use ldbound::bounds::{
    asymptotic_threshold, best_size_upper, chebyshev_cyclic_radius, evaluate, AsymptoticFamily, BoundQuery,
    BoundResult, KTable,
};
use ldbound::codefile::{format_code, parse_space, read_code, space_header};
use ldbound::linear::LinearCode;
use ldbound::matrix::Matrix;
use ldbound::oracle::{
    covering_radius_with_cap, list_profile, max_packing, min_covering, min_distance, multiplicity_stats, ExplicitCode,
    SearchMode,
};
use ldbound::report::{Environment, Report, Status};
use ldbound::space::{space_size, PermMetric, SpaceSpec};
use ldbound::suites::{run_suite, SuiteParams, SUITES};
use ldbound::Error;

const DEFAULT_CAP: u64 = 1 << 24;
const DEFAULT_NODES: u64 = 10_000_000;

#[derive(Parser, Debug)]
#[command(name = "ldbound", version, about = "Bounds and exact oracles for list-decodable codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Write the JSON report to stdout, or to PATH with `--json=PATH`.
    #[arg(long, global = true, num_args = 0..=1, require_equals = true, default_missing_value = "-", value_name = "PATH")]
    json: Option<String>,

    /// Write CSV rows to stdout, or to PATH with `--csv=PATH`.
    #[arg(long, global = true, num_args = 0..=1, require_equals = true, default_missing_value = "-", value_name = "PATH")]
    csv: Option<String>,

    /// Enumeration cap in points.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    cap: u64,

    /// Node budget for exact searches.
    #[arg(long, global = true, default_value_t = DEFAULT_NODES)]
    nodes: u64,

    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate every bound for a space, radius and list size.
    Bound(BoundArgs),
    /// Run an exact oracle on a code file or a space.
    Oracle(OracleArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Tabulate an asymptotic rate threshold over a grid of radius ratios.
    Asympt(AsymptArgs),
}

#[derive(Args, Debug, Clone, Serialize)]
struct SpaceArgs {
    /// hamming, rank, cover, pair, insdel, sumrank, subspace, constdim or permutation.
    #[arg(long)]
    space: Option<String>,
    #[arg(long)]
    q: Option<u64>,
    #[arg(long)]
    n: Option<u64>,
    #[arg(long)]
    m: Option<u64>,
    /// Subspace dimension for constdim spaces.
    #[arg(long)]
    k: Option<u64>,
    /// Alphabet size for insdel spaces.
    #[arg(long)]
    v: Option<u64>,
    /// Sum-rank blocks, e.g. 2x3,2x3.
    #[arg(long)]
    blocks: Option<String>,
    /// Subspace dimensions, e.g. 1,2.
    #[arg(long)]
    dims: Option<String>,
    /// s or i for subspaces, hamming or chebyshev for permutations.
    #[arg(long)]
    metric: Option<String>,
}

impl SpaceArgs {
    fn spec(&self) -> Result<SpaceSpec, Failure> {
        let kind = self.space.as_deref().ok_or_else(|| Failure::usage("--space is required"))?;
        let mut header = format!("space {kind}");
        let nums = [("q", self.q), ("n", self.n), ("m", self.m), ("k", self.k), ("v", self.v)];
        for (key, val) in nums {
            if let Some(x) = val {
                let _ = write!(header, " {key}={x}");
            }
        }
        for (key, val) in [("blocks", &self.blocks), ("dims", &self.dims), ("metric", &self.metric)] {
            if let Some(x) = val {
                let _ = write!(header, " {key}={x}");
            }
        }
        parse_space(&header, 0).map_err(|e| Failure::usage(e.to_string().replace("parse error at line 0: ", "")))
    }
}

#[derive(Args, Debug, Clone, Serialize)]
struct BoundArgs {
    #[command(flatten)]
    space: SpaceArgs,
    /// List radius (deletions for insdel). Defaults to R_n for Chebyshev permutations.
    #[arg(long, visible_alias = "rho")]
    d: Option<u64>,
    /// Insertion radius for insdel spaces.
    #[arg(long)]
    d2: Option<u64>,
    #[arg(long = "L", default_value_t = 1)]
    l: u64,
    /// Generator matrix of a linear code for the dual-distance bounds, rows joined by `;`.
    #[arg(long)]
    generator: Option<String>,
    /// `k,d` when the length equals the Griesmer length n_q(k, d).
    #[arg(long)]
    griesmer: Option<String>,
    /// Size of a code whose list size is bounded from below.
    #[arg(long)]
    code_size: Option<String>,
    #[arg(long)]
    code_dim: Option<u64>,
    #[arg(long)]
    code_distance: Option<u64>,
    #[arg(long)]
    epsilon: Option<f64>,
    /// A known covering code: `size,radius`.
    #[arg(long)]
    cover: Option<String>,
    /// Size of a code with minimum distance 2d+1.
    #[arg(long)]
    packing_size: Option<String>,
    /// Constant of the single-deletion covering bound.
    #[arg(long)]
    w: Option<f64>,
    /// Also evaluate the average-radius bound.
    #[arg(long)]
    average_radius: bool,
    /// Extra directory of covering-table CSVs.
    #[arg(long)]
    tables: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum OracleKind {
    CoveringRadius,
    Profile,
    Multiplicity,
    Mindist,
    Mincover,
    Maxpack,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Mode {
    Greedy,
    Exact,
}

#[derive(Args, Debug, Clone, Serialize)]
struct OracleArgs {
    what: OracleKind,
    /// Code file.
    #[arg(long)]
    code: Option<PathBuf>,
    #[command(flatten)]
    space: SpaceArgs,
    /// Radius for profile, multiplicity and mincover (defaults to the covering radius).
    #[arg(long)]
    r: Option<u64>,
    /// Minimum distance for maxpack.
    #[arg(long)]
    d: Option<u64>,
    #[arg(long, value_enum, default_value_t = Mode::Greedy)]
    mode: Mode,
}

#[derive(Args, Debug, Clone, Serialize)]
struct VerifyArgs {
    #[arg(value_parser = clap::builder::PossibleValuesParser::new(SUITES))]
    suite: String,
    #[arg(long = "L")]
    l: Option<u64>,
    #[arg(long)]
    n: Option<u64>,
    #[arg(long)]
    n_max: Option<u64>,
    #[arg(long, default_value_t = 100)]
    trials: u64,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Family {
    Hamming,
    BinaryList,
    LargeQ,
    Rank,
    Subspace,
    SumRank,
    PermutationChebyshev,
}

#[derive(Args, Debug, Clone, Serialize)]
struct AsymptArgs {
    #[arg(long, value_enum)]
    family: Family,
    #[arg(long, default_value_t = 2)]
    q: u64,
    /// n/m for rank metric.
    #[arg(long, default_value_t = 1.0)]
    b: f64,
    /// Sum-rank block rows.
    #[arg(long)]
    n: Option<u64>,
    /// Sum-rank block columns.
    #[arg(long)]
    m: Option<u64>,
    #[arg(long, default_value_t = 0.05)]
    from: f64,
    #[arg(long, default_value_t = 0.45)]
    to: f64,
    #[arg(long, default_value_t = 0.05)]
    step: f64,
}

/// A command that did not finish with status ok.
struct Failure {
    code: u8,
    status: Status,
    msg: String,
}

impl Failure {
    fn usage(msg: impl Into<String>) -> Self {
        Failure { code: 2, status: Status::Inapplicable, msg: msg.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::CapExceeded { .. } | Error::BudgetExceeded { .. } => {
                Failure { code: 3, status: Status::BudgetExceeded, msg: e.to_string() }
            }
            other => Failure::usage(other.to_string()),
        }
    }
}

/// What a command produced: the report body, human text and CSV rows.
struct Output {
    query: Value,
    results: Vec<Value>,
    status: Status,
    text: String,
    csv: Vec<Vec<String>>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let env = Environment::new(cli.seed, cli.cap, cli.nodes);
    let (query, outcome) = match &cli.command {
        Command::Bound(a) => (to_value(a), cmd_bound(a)),
        Command::Oracle(a) => (to_value(a), cmd_oracle(a, &cli)),
        Command::Verify(a) => (to_value(a), cmd_verify(a, &cli)),
        Command::Asympt(a) => (to_value(a), cmd_asympt(a)),
    };
    let query = json!({ "command": command_name(&cli.command), "args": query });
    match outcome {
        Ok(out) => {
            let code = if out.status == Status::Failed { 1 } else { 0 };
            let report = Report { query: out.query, results: out.results, environment: env, status: out.status };
            if let Err(e) = emit(&cli, &report, &out.text, &out.csv) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("error: {}", f.msg);
            if cli.json.is_some() {
                let report =
                    Report { query, results: vec![json!({ "error": f.msg })], environment: env, status: f.status };
                let _ = write_to(cli.json.as_deref().unwrap(), &report.to_json());
            }
            ExitCode::from(f.code)
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Bound(_) => "bound",
        Command::Oracle(_) => "oracle",
        Command::Verify(_) => "verify",
        Command::Asympt(_) => "asympt",
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("arguments serialize")
}

fn write_to(path: &str, text: &str) -> std::io::Result<()> {
    if path == "-" {
        print!("{text}");
        if !text.ends_with('\n') {
            println!();
        }
        Ok(())
    } else {
        std::fs::write(path, text)
    }
}

fn emit(cli: &Cli, report: &Report, text: &str, rows: &[Vec<String>]) -> std::io::Result<()> {
    let mut printed = false;
    if let Some(path) = &cli.json {
        write_to(path, &report.to_json())?;
        printed = path == "-";
    }
    if let Some(path) = &cli.csv {
        let mut s = String::new();
        for r in rows {
            s.push_str(&r.iter().map(|c| csv_cell(c)).collect::<Vec<_>>().join(","));
            s.push('\n');
        }
        write_to(path, &s)?;
        printed |= path == "-";
    }
    if !printed {
        print!("{text}");
    }
    Ok(())
}

fn csv_cell(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn parse_big(flag: &str, s: &str) -> Result<BigUint, Failure> {
    s.parse().map_err(|_| Failure::usage(format!("--{flag} expects a nonnegative integer, got {s:?}")))
}

fn parse_pair(flag: &str, s: &str) -> Result<(String, u64), Failure> {
    let bad = || Failure::usage(format!("--{flag} expects two comma-separated integers, got {s:?}"));
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    Ok((a.trim().to_string(), b.trim().parse().map_err(|_| bad())?))
}

fn parse_generator(q: u64, s: &str) -> Result<LinearCode, Failure> {
    let rows = s
        .split(';')
        .map(|r| r.split_whitespace().map(|x| x.parse::<u32>()).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| Failure::usage(format!("--generator: bad entry in {s:?}")))?;
    let cols = rows.first().map_or(0, |r| r.len());
    if rows.iter().any(|r| r.len() != cols) {
        return Err(Failure::usage("--generator rows must have equal length"));
    }
    Ok(LinearCode::from_generator(q, &Matrix::from_rows(cols, &rows))?)
}

fn build_query(a: &BoundArgs) -> Result<BoundQuery, Failure> {
    let space = a.space.spec()?;
    let d = match (a.d, &space) {
        (Some(d), _) => d,
        (None, SpaceSpec::Permutation { n, metric: PermMetric::Chebyshev }) => chebyshev_cyclic_radius(*n),
        (None, _) => return Err(Failure::usage("--d is required")),
    };
    let mut q = BoundQuery::new(space.clone(), d, a.l);
    q.d2 = a.d2;
    let mut tables = KTable::from_env()?;
    if let Some(dir) = &a.tables {
        tables.merge_dir(dir)?;
    }
    q.aux.tables = Some(tables);
    if let Some(g) = &a.generator {
        let field = space.q().ok_or_else(|| Failure::usage("--generator needs a space with an alphabet size"))?;
        q.aux.code = Some(parse_generator(field, g)?);
    }
    if let Some(g) = &a.griesmer {
        let (k, dd) = parse_pair("griesmer", g)?;
        let k = k.parse().map_err(|_| Failure::usage(format!("--griesmer: bad k in {g:?}")))?;
        q.aux.griesmer = Some((k, dd));
    }
    if let Some(c) = &a.cover {
        let (size, r) = parse_pair("cover", c)?;
        q.aux.cover = Some((parse_big("cover", &size)?, r));
    }
    if let Some(s) = &a.code_size {
        q.aux.code_size = Some(parse_big("code-size", s)?);
    }
    if let Some(s) = &a.packing_size {
        q.aux.packing_size = Some(parse_big("packing-size", s)?);
    }
    q.aux.code_dimension = a.code_dim;
    q.aux.code_distance = a.code_distance;
    q.aux.epsilon = a.epsilon;
    q.aux.w = a.w;
    q.aux.average_radius = a.average_radius;
    Ok(q)
}

/// Applicable finite size-uppers first (ascending), then everything else in
/// evaluation order.
fn display_order(results: &[BoundResult]) -> Vec<&BoundResult> {
    let mut ranked: Vec<&BoundResult> = results.iter().filter(|r| r.is_comparable_size_upper()).collect();
    ranked.sort_by(|a, b| a.value.as_ref().unwrap().cmp_value(b.value.as_ref().unwrap()).then(a.name.cmp(&b.name)));
    ranked.extend(results.iter().filter(|r| !r.is_comparable_size_upper()));
    ranked
}

fn cmd_bound(a: &BoundArgs) -> Result<Output, Failure> {
    let q = build_query(a)?;
    let results = evaluate(&q)?;
    let ordered = display_order(&results);
    let any = results.iter().any(|r| r.applicable && !r.asymptotic);
    let best = best_size_upper(&results);

    let mut text = format!("{}  d={}  L={}\n", space_header(&q.space), q.d, q.l);
    let _ = writeln!(text, "{:<34} {:<11} {:>24}  {}", "bound", "kind", "value", "citation");
    for r in &ordered {
        let value = match (&r.value, r.applicable) {
            (Some(v), true) => v.to_string(),
            _ => "-".to_string(),
        };
        let mut tags = Vec::new();
        if r.reference {
            tags.push("reference");
        }
        if r.asymptotic {
            tags.push("asymptotic");
        }
        if r.parametric {
            tags.push("parametric");
        }
        if r.consistent == Some(false) {
            tags.push("inconsistent");
        }
        let tag = if tags.is_empty() { String::new() } else { format!(" [{}]", tags.join(", ")) };
        let _ = writeln!(text, "{:<34} {:<11} {:>24}  {}{}", r.name, r.kind.to_string(), value, r.citation, tag);
        if let Some(reason) = r.reason.as_ref().filter(|_| !r.applicable) {
            let _ = writeln!(text, "{:<34} inapplicable: {reason}", "");
        }
        if let Some(note) = &r.note {
            let _ = writeln!(text, "{:<34} note: {note}", "");
        }
    }
    match best {
        Some(b) => {
            let _ = writeln!(text, "best size upper bound: {} ({})", b.value.as_ref().unwrap(), b.name);
        }
        None if !any => text.push_str("no finite bound applies\n"),
        None => {}
    }

    let mut csv = vec![[
        "name",
        "kind",
        "applicable",
        "value",
        "raw",
        "reference",
        "asymptotic",
        "parametric",
        "citation",
        "reason",
        "note",
    ]
    .map(String::from)
    .to_vec()];
    for r in &ordered {
        csv.push(vec![
            r.name.clone(),
            r.kind.to_string(),
            r.applicable.to_string(),
            r.value.as_ref().filter(|_| r.applicable).map(|v| v.to_string()).unwrap_or_default(),
            r.raw.map(|x| x.to_string()).unwrap_or_default(),
            r.reference.to_string(),
            r.asymptotic.to_string(),
            r.parametric.to_string(),
            r.citation.clone(),
            r.reason.clone().unwrap_or_default(),
            r.note.clone().unwrap_or_default(),
        ]);
    }

    let mut values: Vec<Value> = ordered.iter().map(|r| to_value(*r)).collect();
    if let Some(b) = best {
        values.push(json!({ "best_size_upper": b.name, "value": b.value }));
    }
    Ok(Output {
        query: json!({ "command": "bound", "space": q.space, "d": q.d, "d2": q.d2, "L": q.l }),
        results: values,
        status: if any { Status::Ok } else { Status::Inapplicable },
        text,
        csv,
    })
}

fn codewords(c: &ExplicitCode) -> Vec<String> {
    format_code(c).lines().skip(1).map(String::from).collect()
}

fn check_cap(s: &SpaceSpec, cap: u64) -> Result<(), Failure> {
    let size = space_size(s);
    if size > BigUint::from(cap) {
        return Err(Error::CapExceeded { size: size.to_string(), cap }.into());
    }
    Ok(())
}

fn cmd_oracle(a: &OracleArgs, cli: &Cli) -> Result<Output, Failure> {
    let code = a.code.as_ref().map(|p| read_code(p)).transpose()?;
    let space = match (&code, &a.space.space) {
        (Some(c), _) => c.space().clone(),
        (None, Some(_)) => a.space.spec()?,
        (None, None) => return Err(Failure::usage("give --code FILE or a --space description")),
    };
    check_cap(&space, cli.cap)?;
    let need_code = || code.as_ref().ok_or_else(|| Failure::usage("this oracle needs --code FILE"));
    let radius = |c: &ExplicitCode| -> Result<u64, Failure> {
        match a.r {
            Some(r) => Ok(r),
            None => Ok(covering_radius_with_cap(c, cli.cap)?),
        }
    };
    let mode = match a.mode {
        Mode::Greedy => SearchMode::Greedy,
        Mode::Exact => SearchMode::Exact,
    };
    let (result, text, csv): (Value, String, Vec<Vec<String>>) = match a.what {
        OracleKind::CoveringRadius => {
            let r = covering_radius_with_cap(need_code()?, cli.cap)?;
            (
                json!({ "covering_radius": r }),
                format!("{r}\n"),
                vec![vec!["covering_radius".into()], vec![r.to_string()]],
            )
        }
        OracleKind::Profile => {
            let c = need_code()?;
            let p = list_profile(c, radius(c)?)?;
            (
                to_value(&p),
                format!("r={} L1={} L2={}\n", p.radius, p.l1, p.l2),
                vec![
                    vec!["radius".into(), "l1".into(), "l2".into()],
                    vec![p.radius.to_string(), p.l1.to_string(), p.l2.to_string()],
                ],
            )
        }
        OracleKind::Multiplicity => {
            let c = need_code()?;
            let r = radius(c)?;
            let s = multiplicity_stats(c, r)?;
            let ratio = format!("{}/{}", s.multiratio.num, s.multiratio.den);
            (
                json!({ "radius": r, "max_mul": s.max_mul, "multi_count": s.multi_count.to_string(), "multiratio": ratio }),
                format!("r={r} max_mul={} multi_count={} multiratio={ratio}\n", s.max_mul, s.multi_count),
                vec![
                    vec!["radius".into(), "max_mul".into(), "multi_count".into(), "multiratio".into()],
                    vec![r.to_string(), s.max_mul.to_string(), s.multi_count.to_string(), ratio],
                ],
            )
        }
        OracleKind::Mindist => {
            let d = min_distance(need_code()?)?;
            (json!({ "min_distance": d }), format!("{d}\n"), vec![vec!["min_distance".into()], vec![d.to_string()]])
        }
        OracleKind::Mincover | OracleKind::Maxpack => {
            let (found, label, r) = if matches!(a.what, OracleKind::Mincover) {
                let r = a.r.ok_or_else(|| Failure::usage("mincover needs --r"))?;
                (min_covering(&space, r, mode, cli.nodes)?, "covering radius", r)
            } else {
                let d = a.d.or(a.r).ok_or_else(|| Failure::usage("maxpack needs --d"))?;
                (max_packing(&space, d, mode, cli.nodes)?, "minimum distance", d)
            };
            let words = codewords(&found);
            let mut text = format!(
                "size {} ({label} {r}, {})\n",
                found.len(),
                if matches!(a.mode, Mode::Exact) { "exact" } else { "greedy" }
            );
            for w in &words {
                let _ = writeln!(text, "  {w}");
            }
            let mut rows = vec![vec!["codeword".to_string()]];
            rows.extend(words.iter().map(|w| vec![w.clone()]));
            (json!({ "size": found.len().to_string(), "radius": r, "mode": a.mode, "codewords": words }), text, rows)
        }
    };
    Ok(Output {
        query: json!({ "command": "oracle", "what": a.what, "space": space, "code": a.code, "r": a.r, "d": a.d, "mode": a.mode }),
        results: vec![result],
        status: Status::Ok,
        text,
        csv,
    })
}

fn cmd_verify(a: &VerifyArgs, cli: &Cli) -> Result<Output, Failure> {
    let p = SuiteParams {
        seed: cli.seed.unwrap_or(0),
        trials: a.trials,
        l: a.l,
        n: a.n,
        n_max: a.n_max,
        budget: cli.nodes,
    };
    let report = run_suite(&a.suite, &p)?;
    let mut text = String::new();
    let mut csv = vec![vec!["check".to_string(), "passed".into(), "detail".into()]];
    for c in &report.checks {
        let _ = writeln!(text, "{} {}: {}", if c.passed { "ok  " } else { "FAIL" }, c.name, c.detail);
        csv.push(vec![c.name.clone(), c.passed.to_string(), c.detail.clone()]);
    }
    let failed = report.failures().count();
    let _ = writeln!(text, "{}: {} checks, {failed} failed", report.suite, report.checks.len());
    Ok(Output {
        query: json!({ "command": "verify", "suite": a.suite, "params": p }),
        results: report.checks.iter().map(to_value).collect(),
        status: if report.passed { Status::Ok } else { Status::Failed },
        text,
        csv,
    })
}

fn cmd_asympt(a: &AsymptArgs) -> Result<Output, Failure> {
    if !(a.step > 0.0) || a.to < a.from {
        return Err(Failure::usage("need --step > 0 and --from <= --to"));
    }
    let columns: Vec<(&str, AsymptoticFamily)> = match a.family {
        Family::Hamming => vec![("threshold", AsymptoticFamily::Hamming { q: a.q })],
        Family::BinaryList => vec![("threshold", AsymptoticFamily::BinaryList)],
        Family::LargeQ => vec![("threshold", AsymptoticFamily::LargeQ { q: a.q })],
        Family::Rank => vec![("threshold", AsymptoticFamily::Rank { b: a.b })],
        Family::Subspace => {
            vec![("subspace_s", AsymptoticFamily::SubspaceS), ("subspace_i", AsymptoticFamily::SubspaceI)]
        }
        Family::SumRank => {
            let n = a.n.ok_or_else(|| Failure::usage("sum-rank needs --n"))?;
            vec![("threshold", AsymptoticFamily::SumRank { q: a.q, n, m: a.m.unwrap_or(n) })]
        }
        Family::PermutationChebyshev => vec![("threshold", AsymptoticFamily::PermutationChebyshev)],
    };
    let steps = ((a.to - a.from) / a.step + 1e-9).floor() as u64;
    let mut header = vec!["rho".to_string()];
    header.extend(columns.iter().map(|(c, _)| c.to_string()));
    let mut csv = vec![header];
    let mut results = Vec::new();
    for i in 0..=steps {
        // Rounded to 12 digits so grid points print as typed.
        let rho = ((a.from + i as f64 * a.step) * 1e12).round() / 1e12;
        let mut row = vec![rho.to_string()];
        let mut obj = serde_json::Map::new();
        obj.insert("rho".into(), json!(rho));
        let mut skipped = false;
        for (name, fam) in &columns {
            match asymptotic_threshold(*fam, rho) {
                Ok(v) => {
                    row.push(format!("{v:.12}"));
                    obj.insert(name.to_string(), json!(v));
                }
                Err(e) => {
                    eprintln!("warning: skipping rho = {rho} for {}: {e}", fam.name());
                    skipped = true;
                }
            }
        }
        if !skipped {
            csv.push(row);
            results.push(Value::Object(obj));
        }
    }
    let text = csv.iter().map(|r| r.join(",") + "\n").collect();
    Ok(Output {
        query: json!({ "command": "asympt", "families": columns.iter().map(|(_, f)| *f).collect::<Vec<_>>(), "from": a.from, "to": a.to, "step": a.step }),
        status: if results.is_empty() { Status::Inapplicable } else { Status::Ok },
        results,
        text,
        csv,
    })
}
