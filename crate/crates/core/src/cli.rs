//! The `vlink` command line.
//!
//! Every command prints one JSON document (or a JSON array in batch mode,
//! when the input holds several diagrams separated by blank lines).
//! Exit codes: 0 success, 1 bad input or usage, 2 an inexact search result
//! under `--require-exact`.

use std::fmt::Write as _;
use std::io::{Read, Write};

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::bounds::{self, BoundReport};
use crate::error::{Error, Result};
use crate::gauss::{parse_gauss_code, Diagram};
use crate::index::UnknottingIndex;
use crate::invariants::{self, PairSummary, WritheSpectrum};
use crate::moves::{self, Move, MoveBudget};
use crate::pretzel::{self, FamilyReport, VerifyOptions};
use crate::random::{random_diagram, RandomSpec};
use crate::search::{self, SearchCaps, SearchResult};

#[derive(Debug, Parser)]
#[command(
    name = "vlink",
    version,
    about = "Virtual-link invariants and unknotting indices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Debug, Args)]
struct Common {
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// States the move search may visit per candidate.
    #[arg(long, global = true, default_value_t = 100_000)]
    budget_states: usize,
    /// Depth limit of the move search.
    #[arg(long, global = true, default_value_t = 64)]
    budget_depth: usize,
    /// Let the move search use R3 moves.
    #[arg(long, global = true)]
    enable_r3: bool,
    /// Let the move search insert R2 pairs.
    #[arg(long, global = true)]
    enable_r2_insertion: bool,
    /// Largest crossing count the exact search accepts.
    #[arg(long, global = true, default_value_t = 16)]
    cap: usize,
    /// Largest linking-crossing count the subset oracles accept.
    #[arg(long, global = true, default_value_t = 20)]
    linking_cap: usize,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Exit with status 2 when a search cannot certify an exact value.
    #[arg(long, global = true)]
    require_exact: bool,
}

impl Common {
    fn budget(&self) -> MoveBudget {
        MoveBudget {
            max_states: self.budget_states,
            max_depth: self.budget_depth,
            enable_r3: self.enable_r3,
            enable_r2_insertion: self.enable_r2_insertion,
        }
    }

    fn caps(&self) -> SearchCaps {
        SearchCaps {
            max_crossings: self.cap,
            max_linking_crossings: self.linking_cap,
            use_lower_bound: true,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Span, linking numbers, writhes and warping degree.
    Invariants(InputArg),
    /// Lower and upper unknotting-index bounds.
    Bounds(InputArg),
    /// Exact unknotting index by bounded search.
    Search(InputArg),
    /// Reduce by Reidemeister moves.
    Simplify(InputArg),
    /// Labeled pretzel diagrams and their closed forms.
    #[command(subcommand)]
    Pretzel(PretzelCommand),
    /// Brute-force checks of the span and ℓ identities.
    #[command(subcommand)]
    Oracle(OracleCommand),
}

#[derive(Debug, Args)]
struct InputArg {
    /// File with Gauss codes, or `-` for standard input.
    #[arg(default_value = "-")]
    input: String,
}

#[derive(Debug, Subcommand)]
enum PretzelCommand {
    /// Print the labeled standard diagram.
    Gen {
        #[arg(value_parser = parse_params)]
        params: Params,
    },
    /// Evaluate a closed form.
    Formula(FormulaArgs),
    /// Check every virtualization subset.
    Verify {
        #[arg(value_parser = parse_params)]
        params: Params,
        /// Check all subsets instead of the first `--max-subsets`.
        #[arg(long)]
        all_subsets: bool,
        #[arg(long, default_value_t = 1024)]
        max_subsets: usize,
        /// Skip the exact search.
        #[arg(long)]
        no_search: bool,
    },
}

#[derive(Debug, Clone)]
struct Params(Vec<u32>);

fn parse_params(s: &str) -> std::result::Result<Params, String> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<u32>()
                .map_err(|e| format!("bad parameter {t:?}: {e}"))
        })
        .collect::<std::result::Result<Vec<_>, _>>()
        .map(Params)
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("theorem").required(true).args(["thm31", "thm32", "cor33"])))]
struct FormulaArgs {
    #[arg(long, value_parser = parse_params)]
    thm31: Option<Params>,
    #[arg(long, value_parser = parse_params)]
    thm32: Option<Params>,
    /// Two parameters `p1,p2`.
    #[arg(long, value_parser = parse_params)]
    cor33: Option<Params>,
    #[arg(long)]
    k: Option<u32>,
    #[arg(long)]
    k1: Option<u32>,
    /// Per-strand counts of virtualized even labels.
    #[arg(long, value_parser = parse_params)]
    k_even: Option<Params>,
    /// Per-strand counts of virtualized odd labels.
    #[arg(long, value_parser = parse_params)]
    k_odd: Option<Params>,
}

#[derive(Debug, Subcommand)]
enum OracleCommand {
    /// Minimal virtualizations to zero span against the total span.
    Lemma22(OracleArgs),
    /// Brute-force ℓ against the closed form on two-component diagrams.
    Thm26(OracleArgs),
}

#[derive(Debug, Args)]
struct OracleArgs {
    #[arg(default_value = "-")]
    input: String,
    /// Check this many random diagrams instead of reading input.
    #[arg(long)]
    random: Option<usize>,
    #[arg(long, default_value_t = 8)]
    max_linking: usize,
}

struct Outcome {
    value: Value,
    text: String,
    inexact: bool,
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let mut stdout = std::io::stdout().lock();
    let mut stderr = std::io::stderr().lock();
    run_with_io(argv, &mut std::io::stdin().lock(), &mut stdout, &mut stderr)
}

/// As [`run`], with explicit streams.
pub fn run_with_io<I, T>(
    argv: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    configure_threads();
    match execute(&cli, stdin) {
        Ok(outcome) => {
            let body = match cli.common.format {
                Format::Json => {
                    serde_json::to_string_pretty(&outcome.value).expect("values serialize") + "\n"
                }
                Format::Text => outcome.text,
            };
            let _ = stdout.write_all(body.as_bytes());
            if cli.common.require_exact && outcome.inexact {
                2
            } else {
                0
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            1
        }
    }
}

fn configure_threads() {
    if let Some(n) = std::env::var("VLINK_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
    {
        // A second call in the same process keeps the first pool.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global();
    }
}

fn read_input(path: &str, stdin: &mut dyn Read) -> Result<String> {
    let mut text = String::new();
    let outcome = if path == "-" {
        stdin.read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    outcome.map_err(|e| Error::Syntax {
        line: 0,
        column: 0,
        message: format!("cannot read {path}: {e}"),
    })?;
    Ok(text)
}

/// Blank-line separated blocks; a single block (or none) is not a batch.
fn parse_blocks(text: &str) -> Result<(Vec<Diagram>, bool)> {
    let mut blocks: Vec<Vec<&str>> = vec![Vec::new()];
    for line in text.lines() {
        if line.trim().is_empty() {
            if !blocks.last().unwrap().is_empty() {
                blocks.push(Vec::new());
            }
        } else {
            blocks.last_mut().unwrap().push(line);
        }
    }
    blocks.retain(|b| !b.is_empty());
    if blocks.len() <= 1 {
        return Ok((vec![parse_gauss_code(text)?], false));
    }
    let diagrams = blocks
        .iter()
        .map(|b| parse_gauss_code(&b.join("\n")))
        .collect::<Result<Vec<_>>>()?;
    Ok((diagrams, true))
}

fn execute(cli: &Cli, stdin: &mut dyn Read) -> Result<Outcome> {
    let common = &cli.common;
    match &cli.command {
        Command::Invariants(a) => per_diagram(&a.input, stdin, |d| Ok(invariants_doc(d))),
        Command::Bounds(a) => per_diagram(&a.input, stdin, |d| Ok(bounds_doc(d))),
        Command::Search(a) => per_diagram(&a.input, stdin, |d| {
            let result = search::unknotting_index(d, &common.budget(), &common.caps())?;
            Ok(search_doc(d, result))
        }),
        Command::Simplify(a) => {
            per_diagram(&a.input, stdin, |d| Ok(simplify_doc(d, &common.budget())))
        }
        Command::Pretzel(p) => pretzel_command(p, common),
        Command::Oracle(o) => oracle_command(o, common, stdin),
    }
}

fn per_diagram(
    path: &str,
    stdin: &mut dyn Read,
    f: impl Fn(&Diagram) -> Result<Outcome>,
) -> Result<Outcome> {
    let text = read_input(path, stdin)?;
    let (diagrams, batch) = parse_blocks(&text)?;
    let outcomes = diagrams.iter().map(f).collect::<Result<Vec<_>>>()?;
    if !batch {
        return Ok(outcomes.into_iter().next().expect("one diagram"));
    }
    let inexact = outcomes.iter().any(|o| o.inexact);
    let text = outcomes
        .iter()
        .map(|o| o.text.as_str())
        .collect::<Vec<_>>()
        .join("\n");
    Ok(Outcome {
        value: Value::Array(outcomes.into_iter().map(|o| o.value).collect()),
        text,
        inexact,
    })
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("values serialize")
}

#[derive(Serialize)]
struct InvariantsDoc<'a> {
    command: &'static str,
    diagram: &'a Diagram,
    components: usize,
    crossings: usize,
    linking_crossings: usize,
    virtual_count: Option<u32>,
    total_span: u64,
    doubled_lk: i64,
    warping_degree: u64,
    pairs: Vec<PairSummary>,
    writhes: Vec<WritheSpectrum>,
}

fn invariants_doc(d: &Diagram) -> Outcome {
    let doc = InvariantsDoc {
        command: "invariants",
        diagram: d,
        components: d.component_count(),
        crossings: d.crossing_count(),
        linking_crossings: d.linking_crossing_count(),
        virtual_count: d.virtual_count(),
        total_span: invariants::total_span(d),
        doubled_lk: invariants::doubled_linking_number(d),
        warping_degree: invariants::warping_degree(d),
        pairs: invariants::pair_summaries(d),
        writhes: invariants::component_writhes(d),
    };
    let mut text = format!(
        "diagram        {}\ncomponents     {}\ncrossings      {}\ntotal span     {}\ndoubled lk     {}\nwarping degree {}\n",
        d, doc.components, doc.crossings, doc.total_span, doc.doubled_lk, doc.warping_degree
    );
    for p in &doc.pairs {
        let _ = writeln!(
            text,
            "pair ({}, {})     span {} doubled lk {} doubled ell {}",
            p.i, p.j, p.span, p.doubled_lk, p.ell_doubled
        );
    }
    for (i, w) in doc.writhes.iter().enumerate() {
        let _ = writeln!(text, "writhes D{i}     {}", spectrum_text(w));
    }
    Outcome {
        value: to_value(&doc),
        text,
        inexact: false,
    }
}

fn spectrum_text(w: &WritheSpectrum) -> String {
    if w.is_empty() {
        return "{}".into();
    }
    let parts: Vec<String> = w
        .entries()
        .iter()
        .map(|(k, v)| format!("J{k}={v}"))
        .collect();
    parts.join(" ")
}

#[derive(Serialize)]
struct BoundsDoc<'a> {
    command: &'static str,
    diagram: &'a Diagram,
    #[serde(flatten)]
    report: BoundReport,
}

fn bounds_doc(d: &Diagram) -> Outcome {
    let report = bounds::bound_report(d);
    let mut text = format!("diagram {d}\nlower   {}\n", report.lower);
    match report.upper {
        Some(u) => {
            let _ = writeln!(text, "upper   {u}");
        }
        None => text.push_str("upper   unknown (no virtual crossing count)\n"),
    }
    if let Some(k) = &report.knot_lower {
        let _ = writeln!(text, "knot lower {}", k.effective());
    }
    if let Some(k) = &report.knot_upper {
        let _ = writeln!(text, "knot upper {k}");
    }
    Outcome {
        value: to_value(&BoundsDoc {
            command: "bounds",
            diagram: d,
            report,
        }),
        text,
        inexact: false,
    }
}

#[derive(Serialize)]
struct SearchDoc<'a> {
    command: &'static str,
    diagram: &'a Diagram,
    #[serde(flatten)]
    result: &'a SearchResult,
}

fn search_doc(d: &Diagram, result: SearchResult) -> Outcome {
    let w = result.witness();
    let text = match result.exact() {
        Some(u) => format!(
            "diagram {d}\nexact   {u}\nvirtualize {:?} change {:?}\n",
            w.virtualized, w.changed
        ),
        None => format!(
            "diagram {d}\ninterval {} .. {}\nvirtualize {:?} change {:?}\n",
            interval_lower(&result),
            result.upper(),
            w.virtualized,
            w.changed
        ),
    };
    Outcome {
        value: to_value(&SearchDoc {
            command: "search",
            diagram: d,
            result: &result,
        }),
        text,
        inexact: result.exact().is_none(),
    }
}

fn interval_lower(result: &SearchResult) -> String {
    match &result.outcome {
        search::SearchOutcome::Interval { lower, .. } => lower.to_string(),
        search::SearchOutcome::Exact { m, n, .. } => UnknottingIndex::new(*m, *n).to_string(),
    }
}

#[derive(Serialize)]
struct SimplifyDoc<'a> {
    command: &'static str,
    diagram: &'a Diagram,
    result: Diagram,
    crossings: usize,
    trace: Vec<Move>,
    states_explored: usize,
    exhausted: bool,
}

fn simplify_doc(d: &Diagram, budget: &MoveBudget) -> Outcome {
    let s = moves::simplify_traced(d, budget);
    let text = format!(
        "diagram {d}\nresult  {}\nmoves   {}\n",
        s.diagram,
        s.trace.len()
    );
    Outcome {
        value: to_value(&SimplifyDoc {
            command: "simplify",
            diagram: d,
            crossings: s.diagram.crossing_count(),
            result: s.diagram,
            trace: s.trace,
            states_explored: s.states_explored,
            exhausted: s.exhausted,
        }),
        text,
        inexact: false,
    }
}

fn pretzel_command(cmd: &PretzelCommand, common: &Common) -> Result<Outcome> {
    match cmd {
        PretzelCommand::Gen { params } => {
            let lp = pretzel::pretzel(&params.0)?;
            let strands: Vec<Value> = (1..=lp.strand_count())
                .map(|i| {
                    let r = pretzel::strand_labels(&lp.params, i).expect("strand in range");
                    json!({"strand": i, "first_label": r.start(), "last_label": r.end()})
                })
                .collect();
            let value = json!({
                "command": "pretzel_gen",
                "params": lp.params,
                "diagram": lp.diagram,
                "components": lp.diagram.component_count(),
                "crossings": lp.diagram.crossing_count(),
                "strands": strands,
            });
            let text = format!("L{:?}\n{}\n", lp.params, lp.diagram);
            Ok(Outcome {
                value,
                text,
                inexact: false,
            })
        }
        PretzelCommand::Formula(f) => {
            let u = formula(f)?;
            Ok(Outcome {
                value: json!({"command": "pretzel_formula", "m": u.m, "n": u.n}),
                text: format!("{u}\n"),
                inexact: false,
            })
        }
        PretzelCommand::Verify {
            params,
            all_subsets,
            max_subsets,
            no_search,
        } => {
            let options = VerifyOptions {
                max_subsets: if *all_subsets {
                    usize::MAX
                } else {
                    *max_subsets
                },
                budget: common.budget(),
                caps: common.caps(),
                run_search: !no_search,
                ..VerifyOptions::default()
            };
            let report = pretzel::verify_family(&params.0, &options)?;
            let text = verify_text(&report);
            let inexact = report
                .checks
                .iter()
                .any(|c| c.search.as_ref().is_some_and(|s| s.exact.is_none()));
            let mut value = to_value(&report);
            value["command"] = json!("pretzel_verify");
            Ok(Outcome {
                value,
                text,
                inexact,
            })
        }
    }
}

fn formula(f: &FormulaArgs) -> Result<UnknottingIndex> {
    let need = |v: Option<u32>, name: &str| {
        v.ok_or_else(|| Error::PreconditionViolated(format!("--{name} is required")))
    };
    if let Some(p) = &f.thm31 {
        return pretzel::thm31_index(&p.0, need(f.k, "k")?, need(f.k1, "k1")?);
    }
    if let Some(p) = &f.thm32 {
        let zeros = vec![0; p.0.len()];
        let k_even = f.k_even.as_ref().map_or(zeros.clone(), |v| v.0.clone());
        let k_odd = f.k_odd.as_ref().map_or(zeros, |v| v.0.clone());
        return pretzel::thm32_index(&p.0, &k_even, &k_odd);
    }
    let p = f.cor33.as_ref().expect("clap enforces one closed form");
    if p.0.len() != 2 {
        return Err(Error::PreconditionViolated(
            "--cor33 takes exactly two parameters".into(),
        ));
    }
    pretzel::cor33_index(p.0[0], p.0[1], need(f.k, "k")?, need(f.k1, "k1")?)
}

fn verify_text(report: &FamilyReport) -> String {
    let mut text = format!(
        "L{:?}: {} of {} subsets checked, {} with discrepancies\n",
        report.params, report.subsets_checked, report.total_subsets, report.discrepancy_count
    );
    for c in report.checks.iter().filter(|c| !c.passed()) {
        let _ = writeln!(text, "  {:?}: {}", c.labels, c.discrepancies.join("; "));
    }
    text
}

fn oracle_command(cmd: &OracleCommand, common: &Common, stdin: &mut dyn Read) -> Result<Outcome> {
    let (args, name) = match cmd {
        OracleCommand::Lemma22(a) => (a, "lemma22"),
        OracleCommand::Thm26(a) => (a, "thm26"),
    };
    let diagrams: Vec<Diagram> = match args.random {
        Some(count) => {
            let mut rng = ChaCha8Rng::seed_from_u64(common.seed);
            (0..count)
                .map(|_| {
                    use rand::Rng;
                    let components = if name == "thm26" {
                        2
                    } else {
                        rng.gen_range(2..=4)
                    };
                    let linking = rng.gen_range(0..=args.max_linking);
                    let self_crossings = rng.gen_range(0..=2);
                    random_diagram(
                        &mut rng,
                        &RandomSpec::new(components, linking, self_crossings),
                    )
                })
                .collect()
        }
        None => parse_blocks(&read_input(&args.input, stdin)?)?.0,
    };
    let cap = common.linking_cap;
    let mut rows = Vec::with_capacity(diagrams.len());
    let mut failures = 0;
    for d in &diagrams {
        let row = match name {
            "lemma22" => {
                let span = invariants::total_span(d);
                let brute = search::min_virtualizations_capped(d, cap)?;
                let agree = span == brute;
                json!({"diagram": d, "total_span": span, "min_virtualizations": brute, "agree": agree})
            }
            _ => {
                d.check_pair(0, 1)?;
                if d.component_count() != 2 {
                    return Err(Error::PreconditionViolated(
                        "the ℓ oracle takes two-component diagrams".into(),
                    ));
                }
                let closed = invariants::pair_ell_doubled(d, 0, 1)?;
                let brute = search::ell_bruteforce_capped(d, cap)?.doubled();
                let agree = closed as i64 == brute;
                json!({"diagram": d, "pair_ell_doubled": closed, "ell_bruteforce_doubled": brute, "agree": agree})
            }
        };
        if row["agree"] == json!(false) {
            failures += 1;
        }
        rows.push(row);
    }
    let text = format!(
        "{name}: {} diagrams, {failures} disagreements\n",
        rows.len()
    );
    Ok(Outcome {
        value: json!({
            "command": format!("oracle_{name}"),
            "checked": rows.len(),
            "disagreements": failures,
            "cases": rows,
        }),
        text,
        inexact: false,
    })
}
