//! `klein`: command-line front end for klein-core.
//!
//! Exit codes: 0 when no check failed (findings allowed), 1 when a check
//! failed, 2 on usage or input errors.

use std::collections::BTreeSet;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use klein_core::algebra::validate_algebra;
use klein_core::catalog::{catalog_get, catalog_list, Payload};
use klein_core::checks::{
    check_bracket_grading, check_central_series_meet, check_nilpotent_order_bound, check_second_form,
    check_semisimple_order, check_witness_chain,
};
use klein_core::io::{action_to_json, algebra_to_json, pair_to_json, parse_document, Document};
use klein_core::jets::{
    check_jet_agreement, default_k_max, jet_filtration, structure_constants_from_fields, ActionFamily,
};
use klein_core::scalar::{default_labels, format_combination, format_scalar, parse_scalar, Scalar};
use klein_core::search::{search_max_order, SearchConfig};
use klein_core::series::{derived_series, killing_form, lower_central_series, SeriesChain};
use klein_core::tower::{check_derived_lower_bound, check_tower, effective_tower, lemma8_pair};
use klein_core::{
    classify, effectivity_radical, order, weisfeiler_filtration, CheckRecord, Error, KleinPair, LieAlgebra,
    Report, Status,
};

#[derive(Parser)]
#[command(name = "klein", version, about = "Weisfeiler filtrations and orders of Lie algebra pairs")]
struct Cli {
    /// Write the report to PATH instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Check the Jacobi identity (and closure, for pairs and actions).
    Validate { input: String },
    /// Lower central and derived series.
    Series { input: String },
    /// Nilpotency, solvability, perfectness and Killing form data.
    Classify { input: String },
    /// Weisfeiler filtration of a pair.
    Filtration { input: String },
    /// Order of an effective pair.
    Order { input: String },
    /// Run one verification suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        input: String,
    },
    /// Jet filtration of a vector-field action.
    Jets {
        #[arg(value_enum)]
        mode: JetMode,
        input: String,
        /// Highest jet order examined (default: twice the number of generators).
        #[arg(long, value_name = "N")]
        k_max: Option<usize>,
    },
    /// Enumerate stabilizer candidates and rank effective pairs by order.
    Search {
        /// Algebra file or catalog:key[:params].
        #[arg(long)]
        algebra: String,
        /// Comma-separated stabilizer dimensions.
        #[arg(long, value_name = "D,..", default_value = "1,2")]
        stab_dim: String,
        /// Coefficient grid, `lo..hi` or a comma-separated list of rationals.
        #[arg(long, default_value = "-2..2", allow_hyphen_values = true)]
        grid: String,
        #[arg(long, default_value_t = klein_core::search::DEFAULT_CAP)]
        cap: usize,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// List or emit built-in examples.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Eq10,
    Prop5,
    Prop6,
    Cor7,
    Prop9,
    Lemma8,
    Witness,
    SecondForm,
}

#[derive(Clone, Copy, ValueEnum)]
enum JetMode {
    Filtration,
    Prop4,
    Derive,
}

#[derive(Subcommand)]
enum CatalogAction {
    List,
    Emit {
        key: String,
        #[arg(allow_negative_numbers = true)]
        params: Vec<i64>,
    },
}

/// Input or usage problem: exit code 2.
struct UsageError(String);

impl From<Error> for UsageError {
    fn from(e: Error) -> Self {
        UsageError(e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, UsageError>;

enum Output {
    Report(Report),
    /// Already rendered; `failed` drives the exit code.
    Raw { text: String, failed: bool },
}

/// What one invocation printed and how it exited.
struct Invocation {
    code: u8,
    stdout: String,
    stderr: String,
}

fn execute<I, T>(args: I) -> Invocation
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let code = e.exit_code() as u8;
            return if e.use_stderr() {
                Invocation { code, stdout: String::new(), stderr: text }
            } else {
                Invocation { code, stdout: text, stderr: String::new() }
            };
        }
    };
    let usage = |msg: String| Invocation { code: 2, stdout: String::new(), stderr: format!("error: {msg}\n") };
    let format = cli.format;
    let (text, failed) = match run(cli.command, format) {
        Ok(Output::Report(r)) => {
            let text = match format {
                Format::Text => r.to_text(),
                Format::Json => r.to_json(),
            };
            (text, r.has_failures())
        }
        Ok(Output::Raw { text, failed }) => (text, failed),
        Err(UsageError(msg)) => return usage(msg),
    };
    let code = u8::from(failed);
    match &cli.out {
        Some(path) => match fs::write(path, text) {
            Ok(()) => Invocation { code, stdout: String::new(), stderr: String::new() },
            Err(e) => usage(format!("cannot write {}: {e}", path.display())),
        },
        None => Invocation { code, stdout: text, stderr: String::new() },
    }
}

fn main() -> ExitCode {
    let inv = execute(std::env::args_os());
    print!("{}", inv.stdout);
    eprint!("{}", inv.stderr);
    ExitCode::from(inv.code)
}

/// `catalog:key` or `catalog:key:p1,p2`, else a file path.
fn load(source: &str) -> CliResult<Document> {
    if let Some(rest) = source.strip_prefix("catalog:") {
        let (key, params) = match rest.split_once(':') {
            None => (rest, Vec::new()),
            Some((key, ps)) => {
                let params = ps
                    .split(',')
                    .map(|p| p.trim().parse::<i64>().map_err(|_| UsageError(format!("bad catalog parameter {p:?}"))))
                    .collect::<CliResult<Vec<_>>>()?;
                (key, params)
            }
        };
        let entry = catalog_get(key, &params)?;
        return Ok(match entry.payload {
            Payload::Algebra(a) => Document::Algebra(a),
            Payload::Pair(p) => Document::Pair(p),
            Payload::Action(f) => Document::Action(f),
        });
    }
    let text = fs::read_to_string(source).map_err(|e| UsageError(format!("cannot read {source}: {e}")))?;
    Ok(parse_document(&text)?)
}

fn load_algebra(source: &str) -> CliResult<LieAlgebra> {
    match load(source)? {
        Document::Algebra(a) => Ok(a),
        Document::Pair(p) => Ok(p.algebra().clone()),
        Document::Action(_) => Err(UsageError(format!("{source} is an action family, not an algebra"))),
    }
}

fn load_pair(source: &str) -> CliResult<KleinPair> {
    match load(source)? {
        Document::Pair(p) => Ok(p),
        _ => Err(UsageError(format!("{source} is not a pair"))),
    }
}

fn load_action(source: &str) -> CliResult<ActionFamily> {
    match load(source)? {
        Document::Action(f) => Ok(f),
        _ => Err(UsageError(format!("{source} is not an action family"))),
    }
}

/// Turns expected mathematical outcomes into records; everything else is an
/// input error.
fn checked(check: &str, inputs: &str, result: klein_core::Result<Report>) -> CliResult<Report> {
    match result {
        Ok(r) => Ok(r),
        Err(Error::NotEffective { radical }) => Ok(single(CheckRecord::new(
            check,
            inputs,
            format!(
                "not effective: stabilizer contains the ideal {}",
                radical.display(&default_labels(radical.ambient_dim()))
            ),
            "effective pair",
            Status::Fail,
        ))),
        Err(Error::NotClosed { i, j }) => Ok(single(CheckRecord::new(
            check,
            inputs,
            format!("[v{}, v{}] is outside the span of the generators", i + 1, j + 1),
            "bracket-closed family",
            Status::Fail,
        ))),
        Err(e @ (Error::NotApplicable(_) | Error::BadSeed(_))) => {
            Ok(single(CheckRecord::new(check, inputs, e.to_string(), "", Status::NotApplicable)))
        }
        Err(e) => Err(e.into()),
    }
}

fn single(record: CheckRecord) -> Report {
    let mut r = Report::new();
    r.push(record);
    r
}

fn run(command: Command, format: Format) -> CliResult<Output> {
    match command {
        Command::Validate { input } => validate(&input).map(Output::Report),
        Command::Series { input } => {
            let alg = load_algebra(&input)?;
            let mut report = series_records(&alg, &lower_central_series(&alg), "lower-central", "g_");
            report.extend(series_records(&alg, &derived_series(&alg), "derived", "g^"));
            Ok(Output::Report(report))
        }
        Command::Classify { input } => classify_cmd(&input).map(Output::Report),
        Command::Filtration { input } => filtration_cmd(&input).map(Output::Report),
        Command::Order { input } => order_cmd(&input).map(Output::Report),
        Command::Verify { suite, input } => verify(suite, &input).map(Output::Report),
        Command::Jets { mode, input, k_max } => jets(mode, &input, k_max, format),
        Command::Search { algebra, stab_dim, grid, cap, workers } => {
            let cfg = SearchConfig {
                stab_dims: parse_dims(&stab_dim)?,
                coeff_grid: parse_grid(&grid)?,
                candidate_cap: cap,
                workers,
                ..SearchConfig::new(load_algebra(&algebra)?)
            };
            let result = search_max_order(&cfg)?;
            let text = match format {
                Format::Text => result.to_text(),
                Format::Json => result.to_json(&cfg),
            };
            Ok(Output::Raw { text, failed: !result.rejected.is_empty() })
        }
        Command::Catalog { action } => catalog_cmd(action, format),
    }
}

fn validate(input: &str) -> CliResult<Report> {
    let mut report = Report::new();
    let doc = load(input)?;
    let alg = match &doc {
        Document::Algebra(a) => a.clone(),
        Document::Pair(p) => p.algebra().clone(),
        Document::Action(f) => {
            let closed = f.bracket_table();
            report.push(CheckRecord::new(
                "independent",
                input,
                f.is_independent().to_string(),
                "true",
                Status::from_bool(f.is_independent()),
            ));
            report.push(CheckRecord::new(
                "bracket-closed",
                input,
                match &closed {
                    Ok(_) => "true".to_string(),
                    Err(e) => e.to_string(),
                },
                "true",
                Status::from_bool(closed.is_ok()),
            ));
            report.push(CheckRecord::info("transitive", input, f.is_transitive().to_string()));
            if closed.is_err() || !f.is_independent() {
                return Ok(report);
            }
            structure_constants_from_fields(f)?.0
        }
    };
    let v = validate_algebra(&alg);
    if v.ok {
        report.push(CheckRecord::new("jacobi", alg.name(), "holds on every basis triple", "", Status::Pass));
    }
    for viol in &v.violations {
        let (i, j, k) = viol.triple;
        let l = alg.labels();
        report.push(CheckRecord::new(
            "jacobi",
            format!("{}, {}, {}", l[i], l[j], l[k]),
            format!("Jacobi sum = {}", format_combination(&viol.sum, l)),
            "0",
            Status::Fail,
        ));
    }
    if let Document::Pair(p) = &doc {
        report.push(CheckRecord::new(
            "stabilizer-closed",
            p.stabilizer().display(alg.labels()).to_string(),
            "true",
            "true",
            Status::Pass,
        ));
    }
    Ok(report)
}

fn series_records(alg: &LieAlgebra, chain: &SeriesChain, check: &str, sym: &str) -> Report {
    let mut report = Report::new();
    for (k, t) in chain.terms.iter().enumerate() {
        report.push(CheckRecord::info(
            check,
            format!("{}; k={k}", alg.name()),
            format!("{sym}({k}) dim {}: {}", t.dim(), t.display(alg.labels())),
        ));
    }
    report.push(CheckRecord::info(
        format!("{check}-length"),
        alg.name(),
        format!("{} (terminal {})", chain.length(), chain.terminal().display(alg.labels())),
    ));
    report
}

fn classify_cmd(input: &str) -> CliResult<Report> {
    let alg = load_algebra(input)?;
    let c = classify(&alg);
    let name = alg.name();
    let mut report = Report::new();
    let mut info = |check: &str, value: String| report.push(CheckRecord::info(check, name, value));
    info("nilpotent", c.is_nilpotent.to_string());
    info("solvable", c.is_solvable.to_string());
    info("perfect", c.is_perfect.to_string());
    info("nil-length", c.nil_length.to_string());
    info("sol-length", c.sol_length.map_or("undefined".to_string(), |s| s.to_string()));
    info("killing-rank", c.killing_rank.to_string());
    let s = c.killing_signature;
    info("killing-signature", format!("(+{}, -{}, 0:{})", s.positive, s.negative, s.zero));
    let k = killing_form(&alg);
    let rows: Vec<String> = k
        .iter()
        .map(|r| format!("[{}]", r.iter().map(format_scalar).collect::<Vec<_>>().join(", ")))
        .collect();
    info("killing-form", rows.join(" "));
    Ok(report)
}

fn filtration_cmd(input: &str) -> CliResult<Report> {
    let pair = load_pair(input)?;
    let alg = pair.algebra();
    let labels = alg.labels();
    let f = weisfeiler_filtration(&pair);
    let mut report = Report::new();
    report.push(CheckRecord::info(
        "filtration",
        format!("{}; k=-1", alg.name()),
        format!("F-1 dim {}: {}", f.ambient().dim(), f.ambient().display(labels)),
    ));
    for (k, t) in f.terms().iter().enumerate() {
        report.push(CheckRecord::info(
            "filtration",
            format!("{}; k={k}", alg.name()),
            format!("F{k} dim {}: {}", t.dim(), t.display(labels)),
        ));
    }
    report.push(CheckRecord::info(
        "stabilization",
        alg.name(),
        format!("index {}, terminal {}", f.stabilization_index(), f.terminal().display(labels)),
    ));
    let radical = effectivity_radical(&pair);
    report.push(CheckRecord::info(
        "effective",
        alg.name(),
        format!("{} (radical {})", radical.is_zero(), radical.display(labels)),
    ));
    Ok(report)
}

fn order_cmd(input: &str) -> CliResult<Report> {
    let pair = load_pair(input)?;
    let labels = pair.algebra().labels();
    Ok(match order(&pair) {
        Ok(r) => single(CheckRecord::info("order", input, format!("r = {r}"))),
        Err(Error::NotEffective { radical }) => single(CheckRecord::new(
            "order",
            input,
            format!("not effective: stabilizer contains the ideal {}", radical.display(labels)),
            "effective pair",
            Status::Fail,
        )),
        Err(e) => return Err(e.into()),
    })
}

fn verify(suite: Suite, input: &str) -> CliResult<Report> {
    match suite {
        Suite::Eq10 => Ok(check_bracket_grading(&load_pair(input)?)),
        Suite::SecondForm => Ok(check_second_form(&load_pair(input)?)),
        Suite::Prop5 => checked("semisimple-order", input, check_semisimple_order(&load_pair(input)?)),
        Suite::Prop6 => checked("stabilizer-meets-lower-central", input, check_central_series_meet(&load_pair(input)?)),
        Suite::Cor7 => checked("nilpotent-order-bound", input, check_nilpotent_order_bound(&load_pair(input)?)),
        Suite::Witness => checked("witness-chain", input, check_witness_chain(&load_pair(input)?)),
        Suite::Lemma8 => {
            let alg = load_algebra(input)?;
            checked("normalizer-tower", input, lemma8_pair(&alg).map(|t| check_tower(&alg, &t)))
        }
        Suite::Prop9 => {
            let alg = load_algebra(input)?;
            checked(
                "derived-lower-bound",
                input,
                effective_tower(&alg).and_then(|t| {
                    let mut report = check_tower(&alg, &t);
                    report.extend(check_derived_lower_bound(&alg, &t.k_sub, &t.h_sub)?);
                    Ok(report)
                }),
            )
        }
    }
}

fn jets(mode: JetMode, input: &str, k_max: Option<usize>, format: Format) -> CliResult<Output> {
    let fam = load_action(input)?;
    let k_max = k_max.unwrap_or_else(|| default_k_max(&fam));
    let labels = fam.labels();
    match mode {
        JetMode::Filtration => {
            let result = jet_filtration(&fam, k_max).map(|jf| {
                let mut report = Report::new();
                for (k, t) in jf.terms.iter().enumerate() {
                    report.push(CheckRecord::info(
                        "jet-kernel",
                        format!("k={k}"),
                        format!("dim {}: {}", t.dim(), t.display(&labels)),
                    ));
                }
                report.push(match jf.r {
                    Some(r) => CheckRecord::info("jet-order", input, format!("r = {r}")),
                    None => CheckRecord::new(
                        "jet-order",
                        input,
                        format!("not stabilized by k_max = {k_max}"),
                        "zero kernel",
                        Status::Fail,
                    ),
                });
                report
            });
            checked("jet-filtration", input, result).map(Output::Report)
        }
        JetMode::Prop4 => checked("jet-equals-weisfeiler", input, check_jet_agreement(&fam, k_max)).map(Output::Report),
        JetMode::Derive => {
            let (alg, table) = match structure_constants_from_fields(&fam) {
                Ok(x) => x,
                Err(e @ Error::NotClosed { .. }) => {
                    return checked("derive", input, Err(e)).map(Output::Report);
                }
                Err(e) => return Err(e.into()),
            };
            if format == Format::Json {
                return Ok(Output::Raw { text: algebra_to_json(&alg), failed: false });
            }
            let mut report = Report::new();
            for (i, g) in fam.generators().iter().enumerate() {
                report.push(CheckRecord::info("generator", &labels[i], g.to_string()));
            }
            for ((i, j), v) in &table {
                report.push(CheckRecord::info(
                    "bracket",
                    format!("[{}, {}]", labels[*i], labels[*j]),
                    format_combination(v, &labels),
                ));
            }
            let ok = validate_algebra(&alg).ok;
            report.push(CheckRecord::new("jacobi", alg.name(), ok.to_string(), "true", Status::from_bool(ok)));
            Ok(Output::Report(report))
        }
    }
}

fn catalog_cmd(action: CatalogAction, format: Format) -> CliResult<Output> {
    match action {
        CatalogAction::List => {
            let list = catalog_list();
            let text = match format {
                Format::Text => list
                    .iter()
                    .map(|i| format!("{:<16}{:<28}{}\n", i.key, i.params, i.description))
                    .collect(),
                Format::Json => {
                    let items: Vec<serde_json::Value> = list
                        .iter()
                        .map(|i| serde_json::json!({"key": i.key, "params": i.params, "description": i.description}))
                        .collect();
                    let mut s = serde_json::to_string_pretty(&items).expect("serializes");
                    s.push('\n');
                    s
                }
            };
            Ok(Output::Raw { text, failed: false })
        }
        CatalogAction::Emit { key, params } => {
            let entry = catalog_get(&key, &params)?;
            let text = match &entry.payload {
                Payload::Algebra(a) => algebra_to_json(a),
                Payload::Pair(p) => pair_to_json(p),
                Payload::Action(f) => action_to_json(f),
            };
            Ok(Output::Raw { text, failed: false })
        }
    }
}

fn parse_dims(s: &str) -> CliResult<BTreeSet<usize>> {
    s.split(',')
        .map(|d| d.trim().parse::<usize>().map_err(|_| UsageError(format!("bad stabilizer dimension {d:?}"))))
        .collect()
}

fn parse_grid(s: &str) -> CliResult<Vec<Scalar>> {
    if let Some((lo, hi)) = s.split_once("..") {
        let lo: i64 = lo.trim().parse().map_err(|_| UsageError(format!("bad grid bound {lo:?}")))?;
        let hi: i64 = hi.trim().parse().map_err(|_| UsageError(format!("bad grid bound {hi:?}")))?;
        if lo > hi {
            return Err(UsageError(format!("empty grid {s}")));
        }
        return Ok((lo..=hi).map(klein_core::scalar::int).collect());
    }
    s.split(',').map(|x| parse_scalar(x.trim()).map_err(UsageError::from)).collect()
}
