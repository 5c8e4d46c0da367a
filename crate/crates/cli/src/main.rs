use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use cubic_census::classify::CurveGeometry;
use cubic_census::closed_forms::Registry;
use cubic_census::engine::{pair_census, Budget};
use cubic_census::verify::{case_for, census_rows, criterion_title, CheckRow, Suite, Verifier, VerifyOptions};
use cubic_census::{build_code, dual_code, Error, Evaluation};

const EXIT_FAIL: u8 = 1;
const EXIT_BUDGET: u8 = 2;
const EXIT_USAGE: u8 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Parser, Debug)]
#[command(name = "cubic-census", version, about = "Exact censuses of plane curve pairs over small finite fields")]
struct Cli {
    /// Worker threads; defaults to the hardware parallelism.
    #[arg(long, global = true, env = "CUBIC_CENSUS_THREADS")]
    threads: Option<usize>,
    /// Raise the work limits to admit the long-running checks.
    #[arg(long, global = true)]
    extended: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Include per-check timings (JSON only, in a separate section).
    #[arg(long, global = true)]
    timing: bool,
    /// Override the limit on `q^k` for a single form space.
    #[arg(long, global = true)]
    max_forms: Option<u128>,
    /// Override the limit on ordered class pairs.
    #[arg(long, global = true)]
    max_pairs: Option<u128>,
    /// Override the limit on point subsets.
    #[arg(long, global = true)]
    max_subsets: Option<u128>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Census of ordered form pairs by number of common zeros.
    Census {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        e: u32,
        #[arg(long)]
        q: u64,
        /// Evaluate at the affine points only.
        #[arg(long)]
        affine: bool,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        /// Comma-separated field sizes; defaults depend on the suite.
        #[arg(long, value_delimiter = ',')]
        q: Vec<u64>,
    },
    /// Inspect the closed-form registry.
    Formulas {
        #[command(subcommand)]
        action: FormulasAction,
    },
    /// Print a generator matrix of an evaluation code.
    DumpCode {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        affine: bool,
        /// Dump the dual code instead.
        #[arg(long)]
        dual: bool,
    },
}

#[derive(Subcommand, Debug)]
enum FormulasAction {
    List,
    Eval {
        #[arg(long)]
        id: String,
        #[arg(long)]
        q: u64,
        /// Evaluate below the formula's validity range.
        #[arg(long)]
        out_of_range: bool,
    },
}

/// A finished command: its report text and whether every check passed.
struct Outcome {
    text: String,
    pass: bool,
}

fn exit_for(err: &Error) -> u8 {
    match err {
        Error::BudgetExceeded { .. } => EXIT_BUDGET,
        Error::NotPrimePower(_)
        | Error::FieldSizeOutOfRange { .. }
        | Error::UnsupportedDegree(_)
        | Error::FieldTooSmall { .. }
        | Error::UnknownFormula(_)
        | Error::OutOfRange { .. }
        | Error::InvalidArgument(_) => EXIT_USAGE,
        _ => EXIT_FAIL,
    }
}

fn budget(cli: &Cli) -> Budget {
    let base = if cli.extended { Budget::EXTENDED } else { Budget::DEFAULT };
    Budget {
        forms: cli.max_forms.unwrap_or(base.forms),
        class_pairs: cli.max_pairs.unwrap_or(base.class_pairs),
        subsets: cli.max_subsets.unwrap_or(base.subsets),
    }
}

fn evaluation(affine: bool) -> Evaluation {
    if affine {
        Evaluation::Affine
    } else {
        Evaluation::Projective
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn rows_csv(rows: &[CheckRow]) -> String {
    let mut out = String::from("check,criterion,q,formula,brute_force,verdict\n");
    for r in rows {
        let verdict = if r.pass { "pass" } else { "fail" };
        out.push_str(&format!(
            "{},{},{},\"{}\",\"{}\",{verdict}\n",
            r.check, r.criterion, r.q, r.formula, r.brute_force
        ));
    }
    out
}

fn rows_text(rows: &[CheckRow]) -> String {
    rows.iter()
        .map(|r| {
            let (verdict, rel) = if r.pass { ("pass", "=") } else { ("FAIL", "!=") };
            format!("{:<40} q={:<2} {} {rel} {}  {verdict}\n", r.check, r.q, r.formula, r.brute_force)
        })
        .collect()
}

fn census(cli: &Cli, d: u32, e: u32, q: u64, affine: bool) -> Result<Outcome, Error> {
    let ev = evaluation(affine);
    let geometry = CurveGeometry::for_q(q)?;
    let t = Instant::now();
    let table = pair_census(&geometry, d, e, ev, &budget(cli))?;
    let rows = match case_for(d, e, ev) {
        Some(case) if q >= case.q_min() => census_rows(case, &table, t)?,
        _ => Vec::new(),
    };
    let pass = rows.iter().all(|r| r.pass);
    let text = match cli.format {
        Format::Json => pretty(&json!({ "census": table.to_json(), "comparison": rows, "pass": pass })),
        Format::Csv => {
            let mut s = table.to_csv();
            if !rows.is_empty() {
                s.push('\n');
                s.push_str(&rows_csv(&rows));
            }
            s
        }
        Format::Text => {
            let mut s = table.to_csv().replace(',', "\t");
            if !rows.is_empty() {
                s.push('\n');
                s.push_str(&rows_text(&rows));
                s.push_str(if pass { "verdict: pass\n" } else { "verdict: FAIL\n" });
            }
            s
        }
    };
    Ok(Outcome { text, pass })
}

fn verify(cli: &Cli, suite: &str, qs: &[u64]) -> Result<Outcome, Error> {
    let suite: Suite = suite.parse()?;
    let qs = if qs.is_empty() { suite.default_qs() } else { qs.to_vec() };
    let opts = VerifyOptions { qs, extended: cli.extended, budget: budget(cli) };
    let report = Verifier::new(opts).run_suite(suite)?;
    let text = match cli.format {
        Format::Json => pretty(&report.to_json(cli.timing)),
        Format::Csv => report.to_csv(),
        Format::Text => {
            let mut s = String::new();
            for (criterion, rows) in report.by_criterion() {
                s.push_str(&format!("# {criterion}: {}\n", criterion_title(criterion)));
                let owned: Vec<CheckRow> = rows.into_iter().cloned().collect();
                s.push_str(&rows_text(&owned));
            }
            for skip in &report.skipped {
                s.push_str(&format!("skipped {skip}\n"));
            }
            s.push_str(if report.pass { "verdict: pass\n" } else { "verdict: FAIL\n" });
            s
        }
    };
    Ok(Outcome { text, pass: report.pass })
}

fn formulas(cli: &Cli, action: &FormulasAction) -> Result<Outcome, Error> {
    let reg = Registry::global();
    let text = match action {
        FormulasAction::List => match cli.format {
            Format::Json => pretty(&reg.to_json()),
            Format::Csv => {
                let mut s = String::from("id,family,q_min,description\n");
                for f in reg.formulas() {
                    s.push_str(&format!("{},{},{},\"{}\"\n", f.id, f.family.name(), f.q_min, f.description));
                }
                s
            }
            Format::Text => reg
                .formulas()
                .iter()
                .map(|f| format!("{:<28} {:<26} {}\n", f.id, f.family.name(), f.description))
                .collect(),
        },
        FormulasAction::Eval { id, q, out_of_range } => {
            let value = if *out_of_range { reg.eval_unchecked(id, *q)? } else { reg.eval(id, *q)? };
            match cli.format {
                Format::Json => pretty(&json!({ "id": id, "q": q.to_string(), "value": value.to_string() })),
                Format::Csv => format!("id,q,value\n{id},{q},{value}\n"),
                Format::Text => format!("{value}\n"),
            }
        }
    };
    Ok(Outcome { text, pass: true })
}

fn dump_code(cli: &Cli, d: u32, q: u64, affine: bool, dual: bool) -> Result<Outcome, Error> {
    let geometry = CurveGeometry::for_q(q)?;
    let mut code = build_code(geometry.plane(), d, evaluation(affine))?;
    if dual {
        code = dual_code(geometry.field(), &code);
    }
    let text = match cli.format {
        Format::Json | Format::Text => pretty(&code.to_json()),
        Format::Csv => {
            let json = code.to_json();
            let rows = json["generator"].as_array().cloned().unwrap_or_default();
            rows.iter()
                .map(|r| {
                    let cells: Vec<String> = r.as_array().into_iter().flatten().map(|c| c.to_string()).collect();
                    cells.join(",") + "\n"
                })
                .collect()
        }
    };
    Ok(Outcome { text, pass: true })
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    match &cli.command {
        Command::Census { d, e, q, affine } => census(cli, *d, *e, *q, *affine),
        Command::Verify { suite, q } => verify(cli, suite, q),
        Command::Formulas { action } => formulas(cli, action),
        Command::DumpCode { d, q, affine, dual } => dump_code(cli, *d, *q, *affine, *dual),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("cubic-census: cannot configure {n} threads: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    }
    match run(&cli) {
        Ok(outcome) => {
            let written = match &cli.output {
                Some(path) => fs::write(path, &outcome.text),
                None => io::stdout().write_all(outcome.text.as_bytes()),
            };
            if let Err(e) = written {
                eprintln!("cubic-census: {e}");
                return ExitCode::from(EXIT_FAIL);
            }
            if outcome.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_FAIL)
            }
        }
        Err(e) => {
            eprintln!("cubic-census: {e}");
            ExitCode::from(exit_for(&e))
        }
    }
}
