mod cache;
mod report;

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use sylow3::closed_form::{big_m, little_m, membership, omega_known};
use sylow3::descriptor::Membership;
use sylow3::small::small_char_data;
use sylow3::sylow::{n_total, seq_stats, sigma_type, sigma_vector, CharLabel};
use sylow3::tables::{self, Table, TABLE_NAMES};
use sylow3::verify::{run_suite, SuiteReport, VerifyOptions, SUITES};
use sylow3::{oracle, Partition};

use cache::Cache;
use report::{Report, Source};

/// Largest degree for which `omega --enumerate` lists members.
const ENUMERATE_CAP: u64 = 120;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Lib(#[from] sylow3::Error),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Failed(String),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Failed(_) | CliError::Io(_) => 1,
            _ => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Parser)]
#[command(
    name = "sylow3",
    version,
    about = "Sylow branching coefficients of symmetric groups at p = 3"
)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Directory for the LR coefficient cache and the P_27 class profile
    /// [env: SYLOW3_CACHE_DIR] [default: .cache]
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Do not read or write any cache files.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Worker threads (defaults to the number of cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Per-component statistics, types and N of a label such as `0000;10;10`.
    Classify {
        /// Binary sequences separated by `;`, with `-` for the empty one.
        label: String,
    },
    /// The positivity set of a label, as a descriptor.
    Omega {
        /// Binary sequences separated by `;`, with `-` for the empty one.
        label: String,
        /// List every member (n <= 120).
        #[arg(long)]
        enumerate: bool,
        /// Also compute the set exactly and compare (n <= 39, parts up to 27).
        #[arg(long)]
        oracle: bool,
    },
    /// Whether a partition lies in the positivity set of a label.
    Member {
        /// Parts in brackets, e.g. `[5,4]`.
        partition: String,
        /// Binary sequences separated by `;`, with `-` for the empty one.
        label: String,
        /// Compute the multiplicity exactly instead of only reading descriptors.
        #[arg(long)]
        oracle: bool,
    },
    /// Run verification suites; `all` runs every suite.
    Verify {
        /// Suite names, or `all`.
        #[arg(required = true)]
        suites: Vec<String>,
        /// Include the full-size D-set comparison over 54 points.
        #[arg(long)]
        slow: bool,
    },
    /// Regenerate a table: example-81, example-99, table1 or table2.
    Table { name: String },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build_global()
        {
            eprintln!("warning: {e}");
        }
    }
    let cache = Cache::open(cli.cache_dir.clone(), cli.no_cache);
    let start = Instant::now();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let result = run(&cli, &mut out);
    let _ = out.flush();
    cache.save();
    eprintln!("finished in {:.2}s", start.elapsed().as_secs_f64());
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: &Cli, out: &mut impl Write) -> Result<(), CliError> {
    match &cli.command {
        Command::Classify { label } => classify(&parse_label(label)?)?.write(cli.format, out),
        Command::Omega {
            label,
            enumerate,
            oracle,
        } => {
            let report = omega(&parse_label(label)?, *enumerate, *oracle)?;
            report.write(cli.format, out)?;
            check_agreement(&report)
        }
        Command::Member {
            partition,
            label,
            oracle,
        } => {
            let report = member(&parse_partition(partition)?, &parse_label(label)?, *oracle)?;
            report.write(cli.format, out)?;
            check_agreement(&report)
        }
        Command::Verify { suites, slow } => verify(suites, *slow, cli.format, out),
        Command::Table { name } => table(name, cli.format, out),
    }
}

fn parse_label(text: &str) -> Result<CharLabel, CliError> {
    Ok(text.parse::<CharLabel>()?)
}

fn parse_partition(text: &str) -> Result<Partition, CliError> {
    Ok(text.parse::<Partition>()?)
}

fn check_agreement(report: &Report) -> Result<(), CliError> {
    match report.get("agrees") {
        Some(serde_json::Value::Bool(false)) => {
            Err(CliError::Failed("closed form and oracle disagree".into()))
        }
        _ => Ok(()),
    }
}

fn classify(label: &CharLabel) -> Result<Report, CliError> {
    let mut r = Report::new("classify");
    r.input("label", label);
    r.field("n", label.n(), Source::Input);
    let (big, small) = label.split();
    for (i, c) in big.display_order().into_iter().enumerate() {
        let st = seq_stats(c);
        let (ty, n_value) = sigma_type(c)?;
        let key = |name: &str| format!("component[{i}].{name}");
        r.field(key("sequence"), c.to_string(), Source::Input);
        for (name, v) in [
            ("f", st.first_one),
            ("g", st.second_one),
            ("F", st.leading_run),
            ("G", st.leading_run.and(st.first_after_run)),
            ("H", st.leading_run.and(st.second_after_run)),
        ] {
            if let Some(v) = v {
                r.field(key(name), v, Source::Input);
            }
        }
        r.field(key("type"), ty.tag(), Source::ClosedForm);
        r.field(key("N"), n_value, Source::ClosedForm);
        r.field(key("quasi_trivial"), c.is_quasi_trivial(), Source::Input);
    }
    if small.n() > 0 {
        let d = small_char_data(&small)?;
        r.field("small_part", small.to_string(), Source::Input);
        r.field("small_part.row", d.row, Source::Table);
        r.field("small_part.N", d.n_value, Source::Table);
        r.field("small_part.in_psi1", d.psi1, Source::Table);
        r.field("small_part.in_psi2", d.psi2, Source::Table);
    }
    r.field("quasi_trivial", label.is_quasi_trivial(), Source::Input);
    if big.n() > 0 && big.is_quasi_trivial() {
        let v = sigma_vector(&big)?;
        r.field("sigma_vector", v.to_string(), Source::ClosedForm);
        r.field("sigma_in_E", v.in_e(), Source::ClosedForm);
        r.field("sigma_in_F", v.in_f(), Source::ClosedForm);
    }
    r.field("N", n_total(label)?, Source::ClosedForm);
    r.field("m", little_m(label)?, Source::ClosedForm);
    r.field("M", big_m(label), Source::ClosedForm);
    Ok(r)
}

fn oracle_in_scope(label: &CharLabel) -> Result<(), CliError> {
    if label.n() > oracle::MAX_DEGREE
        || label
            .components()
            .iter()
            .any(|c| c.len() > oracle::MAX_LEVEL)
    {
        return Err(sylow3::Error::OracleScope(format!(
            "{label} (the oracle handles n <= {} with parts up to 27)",
            oracle::MAX_DEGREE
        ))
        .into());
    }
    cache::announce_profile(label.components().iter().any(|c| c.len() == 3));
    Ok(())
}

fn omega(label: &CharLabel, enumerate: bool, use_oracle: bool) -> Result<Report, CliError> {
    let mut r = Report::new("omega");
    r.input("label", label);
    let d = omega_known(label)?;
    r.field("n", label.n(), Source::Input);
    r.field("omega", d.to_string(), Source::ClosedForm);
    r.field("exact", d.is_exact(), Source::ClosedForm);
    r.field("descriptor", serde_json::to_value(&d)?, Source::ClosedForm);
    r.field("m", little_m(label)?, Source::ClosedForm);
    r.field("M", big_m(label), Source::ClosedForm);
    let known = if enumerate || use_oracle {
        if label.n() > ENUMERATE_CAP {
            return Err(sylow3::Error::TooLarge(label.n(), ENUMERATE_CAP).into());
        }
        Some(d.known.enumerate()?)
    } else {
        None
    };
    if let Some(known) = &known {
        let name = if d.is_exact() { "count" } else { "known_count" };
        r.field(name, known.len(), Source::ClosedForm);
        if enumerate {
            r.members = Some(known.iter().map(ToString::to_string).collect());
        }
    }
    if use_oracle {
        oracle_in_scope(label)?;
        let exact = oracle::omega_oracle(label)?;
        let known = known.expect("enumerated above");
        r.field("oracle_count", exact.len(), Source::Oracle);
        let agrees = match &d.unknown_region {
            None => exact == known,
            Some(region) => {
                let inner = known.iter().all(|x| exact.binary_search(x).is_ok());
                let outer = exact.iter().all(|x| {
                    x.fits_box(region.upper_box)
                        && (!region.no_other_thin || !x.is_thin() || known.binary_search(x).is_ok())
                });
                inner && outer
            }
        };
        r.field("agrees", agrees, Source::Oracle);
    }
    Ok(r)
}

fn member(lambda: &Partition, label: &CharLabel, use_oracle: bool) -> Result<Report, CliError> {
    let mut r = Report::new("member");
    r.input("partition", lambda).input("label", label);
    let v = membership(lambda, label)?;
    r.field("verdict", v.membership.to_string(), Source::ClosedForm);
    r.field("rule", v.rule.clone(), Source::ClosedForm);
    if use_oracle {
        oracle_in_scope(label)?;
        let z = oracle::branching_coefficient(lambda, label)?;
        r.field("Z", z, Source::Oracle);
        let exact = if z > 0 {
            Membership::In
        } else {
            Membership::Out
        };
        r.field("oracle_verdict", exact.to_string(), Source::Oracle);
        r.field(
            "agrees",
            v.membership == Membership::Unknown || v.membership == exact,
            Source::Oracle,
        );
    }
    Ok(r)
}

#[derive(Serialize)]
struct CheckRow<'a> {
    suite: &'a str,
    check: &'a str,
    passed: bool,
    detail: &'a str,
}

fn verify(
    names: &[String],
    slow: bool,
    format: Format,
    out: &mut impl Write,
) -> Result<(), CliError> {
    let mut suites: Vec<&str> = Vec::new();
    for name in names {
        if name == "all" {
            suites.extend(SUITES);
        } else if let Some(s) = SUITES.iter().find(|s| **s == name.as_str()) {
            suites.push(s);
        } else {
            return Err(CliError::Usage(format!(
                "unknown suite {name:?}; expected one of all, {}",
                SUITES.join(", ")
            )));
        }
    }
    if suites
        .iter()
        .any(|s| ["k3-omega", "theorem-c", "m-bounds"].contains(s))
    {
        cache::announce_profile(true);
    }
    let reports: Vec<SuiteReport> = suites
        .par_iter()
        .map(|s| {
            let r = run_suite(s, VerifyOptions { slow });
            if let Ok(r) = &r {
                eprintln!(
                    "{}: {} checks in {:.1}s",
                    r.suite,
                    r.checks.len(),
                    r.seconds
                );
            }
            r
        })
        .collect::<Result<_, _>>()?;
    let rows: Vec<CheckRow> = reports
        .iter()
        .flat_map(|r| {
            r.checks.iter().map(|c| CheckRow {
                suite: &r.suite,
                check: &c.name,
                passed: c.passed,
                detail: c.detail.as_deref().unwrap_or(""),
            })
        })
        .collect();
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, &rows)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            for row in &rows {
                w.serialize(row)?;
            }
            w.flush()?;
        }
        Format::Text => {
            for r in &reports {
                let failed = r.failures().count();
                let status = if failed == 0 { "PASS" } else { "FAIL" };
                writeln!(
                    out,
                    "{}: {status} ({}/{} checks)",
                    r.suite,
                    r.checks.len() - failed,
                    r.checks.len()
                )?;
                for c in &r.checks {
                    match &c.detail {
                        None => writeln!(out, "  ok    {}", c.name)?,
                        Some(d) => writeln!(out, "  FAIL  {}: {d}", c.name)?,
                    }
                }
            }
        }
    }
    let failed: usize = reports.iter().map(|r| r.failures().count()).sum();
    if failed > 0 {
        return Err(CliError::Failed(format!("{failed} check(s) failed")));
    }
    Ok(())
}

fn opt(v: Option<u32>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn table_records(t: &Table) -> Vec<Vec<String>> {
    let s = |x: &dyn ToString| x.to_string();
    match t {
        Table::Sequences(rows) => {
            let header = [
                "s",
                "sigma",
                "f",
                "g",
                "F",
                "G",
                "H",
                "N",
                "m",
                "M",
                "quasi_trivial",
                "omega",
            ];
            let mut out = vec![header.iter().map(|h| h.to_string()).collect()];
            out.extend(rows.iter().map(|r| {
                vec![
                    r.s.clone(),
                    r.sigma.clone(),
                    opt(r.f),
                    opt(r.g),
                    opt(r.big_f),
                    opt(r.big_g),
                    opt(r.big_h),
                    s(&r.n_value),
                    s(&r.m),
                    s(&r.big_m),
                    s(&r.quasi_trivial),
                    r.omega.clone(),
                ]
            }));
            out
        }
        Table::Labels(rows) => {
            let header = [
                "label",
                "n",
                "component_N",
                "N",
                "m",
                "M",
                "quasi_trivial",
                "omega",
            ];
            let mut out = vec![header.iter().map(|h| h.to_string()).collect()];
            out.extend(rows.iter().map(|r| {
                let parts: Vec<String> = r.component_n.iter().map(ToString::to_string).collect();
                vec![
                    r.label.clone(),
                    s(&r.n),
                    parts.join(";"),
                    s(&r.n_value),
                    s(&r.m),
                    s(&r.big_m),
                    s(&r.quasi_trivial),
                    r.omega.clone(),
                ]
            }));
            out
        }
        Table::Small(rows) => {
            let header = ["label", "l", "row", "N", "omega", "psi1", "psi2"];
            let mut out = vec![header.iter().map(|h| h.to_string()).collect()];
            out.extend(rows.iter().map(|r| {
                vec![
                    r.label.clone(),
                    s(&r.l),
                    r.row.clone(),
                    s(&r.n_value),
                    r.omega.clone(),
                    s(&r.psi1),
                    s(&r.psi2),
                ]
            }));
            out
        }
    }
}

fn table(name: &str, format: Format, out: &mut impl Write) -> Result<(), CliError> {
    if !TABLE_NAMES.contains(&name) {
        return Err(CliError::Usage(format!(
            "unknown table {name:?}; expected one of {}",
            TABLE_NAMES.join(", ")
        )));
    }
    let t = tables::table(name)?;
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, &t)?;
            writeln!(out)?;
        }
        Format::Csv | Format::Text => {
            let mut w = csv::Writer::from_writer(&mut *out);
            for rec in table_records(&t) {
                w.write_record(&rec)?;
            }
            w.flush()?;
        }
    }
    Ok(())
}
