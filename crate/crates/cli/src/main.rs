use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use ehrhart_magic::counting::{count_graph_dual, GraphShape, DEFAULT_BUDGET};
use ehrhart_magic::report::{bipartite_table, check_source, scan, CheckReport, ScanKind, Source};
use ehrhart_magic::{
    power_to_hstar, power_to_magic, selftest, Error, FamilyId, GraphSpec, MagicVerdict, Rational,
};

#[derive(Parser)]
#[command(
    name = "ehrmagic",
    version,
    about = "Exact Ehrhart polynomials in the magic basis"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Worker threads (defaults to all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Basis {
    Power,
    Magic,
    Hstar,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableKind {
    Bipartite,
}

#[derive(Subcommand)]
enum Command {
    /// Print the Ehrhart polynomial of a family member, e.g. `stasheff:5`.
    Family {
        id: String,
        #[arg(long, value_enum, default_value_t = Basis::Power)]
        basis: Basis,
    },
    /// Magic positivity, palindromicity and h* diagnostics for a family or graph.
    Check {
        /// Family (`cycle:4`) or graph shortcut (`k_bipartite:3,7`, `graph:cycle:5`).
        source: Option<String>,
        /// Graph given as JSON: {"vertices": v, "edges": [[a, b], ...], "root": r}.
        #[arg(long, conflicts_with = "source")]
        graph: Option<PathBuf>,
        /// Maximum number of enumerated labels per count.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Magic positivity of the complete bipartite duals.
    Table {
        #[arg(value_enum, default_value_t = TableKind::Bipartite)]
        kind: TableKind,
        #[arg(long, default_value_t = 11)]
        max_m: usize,
        #[arg(long, default_value_t = 11)]
        max_n: usize,
        /// Only cells with m + n at most this value are computed.
        #[arg(long, default_value_t = 13)]
        max_sum: usize,
    },
    /// Magic positivity of a family for every dimension up to `--max-d`.
    Scan {
        /// One of cycle, stasheff, stasheff_aux.
        kind: String,
        #[arg(long)]
        max_d: usize,
    },
    /// Count lattice points of the n-th dilate of a graph dual.
    Count {
        /// Graph shortcut: cycle:v, path:v, complete:v, k_bipartite:m,n, complete_minus_edge:v.
        shape: Option<String>,
        #[arg(long, conflicts_with = "shape")]
        graph: Option<PathBuf>,
        #[arg(short = 'n', long = "n")]
        n: u64,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Run the built-in cross-checks.
    Selftest,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

enum CliError {
    Core(Error),
    Io(io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => e.fmt(f),
            CliError::Io(e) => e.fmt(f),
        }
    }
}

fn exit_code(e: &CliError) -> u8 {
    match e {
        CliError::Core(Error::Parse(_) | Error::InvalidArgument(_) | Error::InvalidGraph(_)) => 2,
        CliError::Core(Error::BudgetExceeded { .. }) => 3,
        _ => 1,
    }
}

fn run(cli: &Cli) -> Result<u8, CliError> {
    let mut out = io::stdout().lock();
    match &cli.command {
        Command::Family { id, basis } => family(&mut out, cli.format, id, *basis),
        Command::Check {
            source,
            graph,
            budget,
        } => {
            let src = match (source, graph) {
                (_, Some(path)) => Source::from_graph_file(path)?,
                (Some(s), None) => Source::parse(s)?,
                (None, None) => return Err(missing("a source or --graph")),
            };
            let report = check_source(&src, *budget)?;
            print_check(&mut out, cli.format, &report)?;
            Ok(0)
        }
        Command::Table {
            kind: TableKind::Bipartite,
            max_m,
            max_n,
            max_sum,
        } => table(&mut out, cli.format, *max_m, *max_n, *max_sum),
        Command::Scan { kind, max_d } => scan_cmd(&mut out, cli.format, kind.parse()?, *max_d),
        Command::Count {
            shape,
            graph,
            n,
            budget,
        } => {
            let report = match (shape, graph) {
                (_, Some(path)) => {
                    let g = GraphSpec::from_file(path)?;
                    ehrhart_magic::CountReport {
                        n: *n,
                        count: count_graph_dual(&g, *n, *budget)?,
                        method: ehrhart_magic::CountMethod::GraphDfs,
                    }
                }
                (Some(s), None) => {
                    let s = s.strip_prefix("graph:").unwrap_or(s);
                    s.parse::<GraphShape>()?.count(*n, *budget)?
                }
                (None, None) => return Err(missing("a graph shortcut or --graph")),
            };
            match cli.format {
                Format::Text => writeln!(out, "{}", report.count),
                Format::Json => writeln!(out, "{}", to_json(&report)),
                Format::Csv => {
                    writeln!(out, "n,count,method")?;
                    writeln!(
                        out,
                        "{},{},{}",
                        report.n,
                        report.count,
                        to_json(&report.method).trim_matches('"')
                    )
                }
            }?;
            Ok(0)
        }
        Command::Selftest => selftest_cmd(&mut out, cli.format),
    }
}

fn missing(what: &str) -> CliError {
    Error::InvalidArgument(format!("expected {what}")).into()
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("serializable")
}

fn family(out: &mut impl Write, format: Format, id: &str, basis: Basis) -> Result<u8, CliError> {
    let f: FamilyId = id.parse()?;
    let p = f.ehrhart();
    let (name, coeffs): (&str, Vec<Rational>) = match basis {
        Basis::Power => ("power", (0..=f.d).map(|k| p.coeff(k)).collect()),
        Basis::Magic => ("magic", power_to_magic(&p, f.d)?.a),
        Basis::Hstar => ("hstar", power_to_hstar(&p, f.d)?.h),
    };
    let strs: Vec<String> = coeffs.iter().map(|c| c.to_string()).collect();
    match format {
        Format::Text => {
            if basis == Basis::Power {
                writeln!(out, "{p}")?;
            } else {
                writeln!(out, "{}", strs.join(", "))?;
            }
        }
        Format::Json => {
            let v = json!({"family": f.to_string(), "d": f.d, "basis": name, "coefficients": strs});
            writeln!(out, "{v}")?;
        }
        Format::Csv => {
            writeln!(out, "index,coefficient")?;
            for (i, c) in strs.iter().enumerate() {
                writeln!(out, "{i},{c}")?;
            }
        }
    }
    Ok(0)
}

fn join(v: &[Rational]) -> String {
    v.iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

fn witnesses(v: &MagicVerdict) -> String {
    v.witnesses()
        .iter()
        .map(|w| format!("a_{}={}", w.index, w.value))
        .collect::<Vec<_>>()
        .join(" ")
}

fn print_check(out: &mut impl Write, format: Format, r: &CheckReport) -> io::Result<()> {
    let verdict = if r.magic_positive() {
        "positive"
    } else {
        "negative"
    };
    let h = &r.hstar;
    match format {
        Format::Json => writeln!(out, "{}", to_json(r)),
        Format::Text => {
            writeln!(out, "source: {}", r.source)?;
            writeln!(out, "dimension: {}", r.d)?;
            writeln!(out, "ehrhart: {}", r.power)?;
            writeln!(out, "magic: {}", join(&r.magic.a))?;
            if r.magic_positive() {
                writeln!(out, "magic verdict: positive")?;
            } else {
                writeln!(
                    out,
                    "magic verdict: negative ({})",
                    witnesses(&r.magic_verdict)
                )?;
            }
            writeln!(out, "magic palindromic: {}", r.magic_palindromic)?;
            writeln!(out, "h*: {}", join(&h.vector.h))?;
            writeln!(
                out,
                "h* integral: {}, nonnegative: {}, palindromic: {}, unimodal: {}, log-concave: {}",
                h.integral,
                h.flags.nonnegative,
                h.flags.palindromic,
                h.flags.unimodal,
                h.flags.log_concave
            )?;
            writeln!(
                out,
                "h* real-rooted: {} ({} distinct real roots, squarefree degree {})",
                h.roots.real_rooted, h.roots.distinct_real_roots, h.roots.squarefree_degree
            )
        }
        Format::Csv => {
            writeln!(out, "key,value")?;
            writeln!(out, "source,{}", r.source)?;
            writeln!(out, "d,{}", r.d)?;
            writeln!(out, "magic,{}", join(&r.magic.a).replace(", ", " "))?;
            writeln!(out, "magic_verdict,{verdict}")?;
            writeln!(out, "magic_palindromic,{}", r.magic_palindromic)?;
            writeln!(out, "hstar,{}", join(&h.vector.h).replace(", ", " "))?;
            writeln!(out, "hstar_real_rooted,{}", h.roots.real_rooted)?;
            writeln!(out, "hstar_unimodal,{}", h.flags.unimodal)
        }
    }
}

fn table(
    out: &mut impl Write,
    format: Format,
    max_m: usize,
    max_n: usize,
    max_sum: usize,
) -> Result<u8, CliError> {
    if max_m < 2 || max_n < 2 {
        return Err(Error::InvalidArgument("--max-m and --max-n must be at least 2".into()).into());
    }
    let cells = bipartite_table(max_m, max_n, max_sum)?;
    match format {
        Format::Json => writeln!(out, "{}", to_json(&cells))?,
        Format::Csv => {
            writeln!(out, "m,n,magic_positive")?;
            for c in &cells {
                let v = c.magic_positive.map_or(String::new(), |b| b.to_string());
                writeln!(out, "{},{},{v}", c.m, c.m2)?;
            }
        }
        Format::Text => {
            write!(out, "m\\n")?;
            for m2 in 2..=max_n {
                write!(out, "{m2:>3}")?;
            }
            writeln!(out)?;
            for row in cells.chunks(max_n - 1) {
                write!(out, "{:>3}", row[0].m)?;
                for c in row {
                    let mark = match c.magic_positive {
                        Some(true) => "+",
                        Some(false) => "-",
                        None => ".",
                    };
                    write!(out, "{mark:>3}")?;
                }
                writeln!(out)?;
            }
        }
    }
    Ok(0)
}

fn scan_cmd(
    out: &mut impl Write,
    format: Format,
    kind: ScanKind,
    max_d: usize,
) -> Result<u8, CliError> {
    if max_d < kind.min_d() {
        return Err(
            Error::InvalidArgument(format!("--max-d must be at least {}", kind.min_d())).into(),
        );
    }
    if format == Format::Csv {
        writeln!(out, "d,magic_positive,palindromic,witnesses")?;
    }
    let mut write_err = None;
    let rows = scan(kind, max_d, rayon::current_num_threads() * 2, |row| {
        let res = match format {
            Format::Json => writeln!(out, "{}", to_json(row)),
            Format::Csv => writeln!(
                out,
                "{},{},{},{}",
                row.d,
                row.verdict.is_positive(),
                row.palindromic,
                witnesses(&row.verdict)
            ),
            Format::Text => {
                let v = if row.verdict.is_positive() {
                    "positive".to_string()
                } else {
                    format!("negative {}", witnesses(&row.verdict))
                };
                let pal = if row.palindromic {
                    ""
                } else {
                    " (not palindromic)"
                };
                writeln!(out, "d={} {v}{pal}", row.d)
            }
        };
        if let Err(e) = res.and_then(|_| out.flush()) {
            write_err.get_or_insert(e);
        }
    })?;
    if let Some(e) = write_err {
        return Err(e.into());
    }
    let failures: Vec<usize> = rows
        .iter()
        .filter(|r| !r.verdict.is_positive())
        .map(|r| r.d)
        .collect();
    let all_palindromic = rows.iter().all(|r| r.palindromic);
    match format {
        Format::Json => writeln!(
            out,
            "{}",
            json!({"summary": {"dimensions": rows.len(), "failures": failures, "all_palindromic": all_palindromic}})
        )?,
        Format::Text => writeln!(
            out,
            "summary: {} dimensions, {} not magic positive, palindromic: {}",
            rows.len(),
            failures.len(),
            all_palindromic
        )?,
        Format::Csv => {}
    }
    Ok(0)
}

fn selftest_cmd(out: &mut impl Write, format: Format) -> Result<u8, CliError> {
    let mut failed = 0;
    let mut results = Vec::new();
    for check in selftest::checks() {
        let start = Instant::now();
        let res = (check.run)();
        let secs = start.elapsed().as_secs_f64();
        if format == Format::Text {
            match &res {
                Ok(()) => writeln!(out, "[PASS] {} ({secs:.2}s)", check.name)?,
                Err(msg) => writeln!(out, "[FAIL] {}: {msg}", check.name)?,
            }
            out.flush()?;
        }
        if res.is_err() {
            failed += 1;
        }
        results.push((check.name, res));
    }
    match format {
        Format::Text => writeln!(out, "{} checks, {failed} failed", results.len())?,
        Format::Json => {
            let v: Vec<_> = results
                .iter()
                .map(|(name, r)| json!({"check": name, "pass": r.is_ok(), "detail": r.as_ref().err()}))
                .collect();
            writeln!(out, "{}", serde_json::Value::Array(v))?;
        }
        Format::Csv => {
            writeln!(out, "check,pass")?;
            for (name, r) in &results {
                writeln!(out, "{name},{}", r.is_ok())?;
            }
        }
    }
    Ok(if failed == 0 { 0 } else { 1 })
}
