use std::collections::BTreeMap;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use seshadri::arrangement::{
    gen_a1_6, gen_a1_9, gen_ceva, gen_generic, gen_quasipencil, gen_star, IncidenceStructure,
};
use seshadri::error::{Error, Result};
use seshadri::inequalities::{
    chain_lower_bound, check_bezout_mult, check_elx1, check_elx2, check_elx2_improved, check_huh,
    check_osz, check_osz_milnor, effective_gonality, prune_candidates, render_severi_table,
    severi_table, special_lower_bound, CurveSingData, Singularity, SEVERI_TABLE_XS,
};
use seshadri::io::report::{
    certificate_text, estimate_text, to_json, CertificateReport, EstimateReport, Report,
};
use seshadri::io::{bundled_json, read_arrangement, ArrangementFile, DATA_DIR_ENV};
use seshadri::projective::{fmt_rat, parse_rat};
use seshadri::seshadri::{
    covering_lower_bound, min_line_cover_with_limit, resolve_with, severi_estimate, LineDivisor,
    ResolveOptions, DEFAULT_NODE_LIMIT,
};

#[derive(Parser)]
#[command(
    name = "seshadri",
    version,
    about = "Exact Seshadri constants at singular points of line arrangements"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write an arrangement file
    Generate(GenerateArgs),
    /// Summarize an arrangement and bound its Seshadri constant
    Analyze(AnalyzeArgs),
    /// Produce a single lower-bound certificate
    Certify(CertifyArgs),
    /// Inequalities for singular plane curves
    #[command(subcommand)]
    Ineq(IneqCommand),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GenName {
    Ceva,
    Star,
    Quasipencil,
    #[value(name = "a1_6")]
    A1_6,
    #[value(name = "a1_9")]
    A1_9,
    #[value(name = "a1_15")]
    A1_15,
    Klein,
    Wiman,
    Generic,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Args)]
struct GenerateArgs {
    name: GenName,
    /// CEVA parameter
    #[arg(long)]
    n: Option<usize>,
    /// Number of lines for star, quasipencil and generic
    #[arg(long)]
    d: Option<usize>,
    /// Required for generic
    #[arg(long)]
    seed: Option<u64>,
    /// Output path; stdout when absent
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SearchArgs {
    /// Largest line cover to search for
    #[arg(long)]
    budget: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_NODE_LIMIT)]
    node_limit: u64,
}

#[derive(Args)]
struct AnalyzeArgs {
    file: PathBuf,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    report: ReportFormat,
    #[command(flatten)]
    search: SearchArgs,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    /// Pairing with the whole arrangement
    Pairing,
    /// Pairing with a minimum line cover
    Cover,
    /// Pairing with the virtual lines declared in the file
    Virtual,
}

#[derive(Args)]
struct CertifyArgs {
    file: PathBuf,
    #[arg(long, value_enum)]
    method: Method,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    report: ReportFormat,
    #[command(flatten)]
    search: SearchArgs,
}

#[derive(Subcommand)]
enum IneqCommand {
    /// Run every check on one multiplicity vector
    Check(CheckArgs),
    /// List vectors beating a target ratio that no check excludes
    Prune(PruneArgs),
    /// f(x) and g(x) for nodal curves, truncated to four decimals
    SeveriTable(TableArgs),
    /// Exact constant at the nodes of a nodal curve of degree d >= 6
    SeveriEstimate(SeveriArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Preset {
    Node,
    Cusp,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long)]
    d: u32,
    /// Weakly decreasing, e.g. `3,2x7`
    #[arg(long, default_value = "")]
    mults: String,
    /// One Milnor number per point, same syntax as --mults
    #[arg(long, conflicts_with = "preset")]
    milnor: Option<String>,
    /// Every point is a node or every point is a cusp
    #[arg(long, value_enum)]
    preset: Option<Preset>,
    /// Known bound on the gonality
    #[arg(long)]
    gon: Option<u32>,
    /// Distinguished point for the Huh check; all points when absent
    #[arg(long)]
    o: Option<usize>,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    report: ReportFormat,
}

#[derive(Args)]
struct PruneArgs {
    #[arg(long)]
    s: usize,
    #[arg(long)]
    d_max: u32,
    /// Rational such as `1/3`
    #[arg(long)]
    target: String,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    report: ReportFormat,
}

#[derive(Args)]
struct TableArgs {
    /// Comma-separated, default 6,7,8,9,10,20,50,100
    #[arg(long)]
    xs: Option<String>,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    report: ReportFormat,
}

#[derive(Args)]
struct SeveriArgs {
    #[arg(long)]
    d: u64,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    report: ReportFormat,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            // a closed pipe is not an error worth reporting
            let _ = std::io::stdout().write_all(out.as_bytes());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn run(cmd: Command) -> Result<String> {
    match cmd {
        Command::Generate(args) => generate(args),
        Command::Analyze(args) => analyze(args),
        Command::Certify(args) => certify(args),
        Command::Ineq(IneqCommand::Check(args)) => ineq_check(args),
        Command::Ineq(IneqCommand::Prune(args)) => ineq_prune(args),
        Command::Ineq(IneqCommand::SeveriTable(args)) => ineq_table(args),
        Command::Ineq(IneqCommand::SeveriEstimate(args)) => ineq_severi(args),
    }
}

fn need<T>(value: Option<T>, flag: &str, name: &str) -> Result<T> {
    value.ok_or_else(|| Error::BadParameter(format!("`generate {name}` needs --{flag}")))
}

fn generate(args: GenerateArgs) -> Result<String> {
    let data_dir = std::env::var_os(DATA_DIR_ENV).map(PathBuf::from);
    let bundled = |name: &str| -> Result<IncidenceStructure> {
        Ok(
            ArrangementFile::from_json(&bundled_json(name, data_dir.as_deref())?)?
                .load()?
                .structure,
        )
    };
    let s = match args.name {
        GenName::Ceva => gen_ceva(need(args.n, "n", "ceva")?)?,
        GenName::Star => gen_star(need(args.d, "d", "star")?)?,
        GenName::Quasipencil => gen_quasipencil(need(args.d, "d", "quasipencil")?)?,
        GenName::A1_6 => gen_a1_6()?,
        GenName::A1_9 => gen_a1_9()?,
        GenName::A1_15 => bundled("a1_15")?,
        GenName::Klein => bundled("klein")?,
        GenName::Wiman => bundled("wiman")?,
        GenName::Generic => gen_generic(
            need(args.d, "d", "generic")?,
            need(args.seed, "seed", "generic")?,
        )?,
    };
    let text = ArrangementFile::from_structure(&s).to_json();
    match args.output {
        Some(path) => {
            std::fs::write(&path, text)
                .map_err(|e| Error::Parse(format!("cannot write {}: {e}", path.display())))?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn options(search: &SearchArgs) -> ResolveOptions {
    ResolveOptions {
        cover_budget: search.budget,
        node_limit: search.node_limit,
    }
}

fn analyze(args: AnalyzeArgs) -> Result<String> {
    let loaded = read_arrangement(&args.file)?;
    let estimate = resolve_with(&loaded.structure, &[], options(&args.search))?;
    let report = Report::new(&loaded.structure, &estimate, loaded.warnings);
    Ok(match args.report {
        ReportFormat::Json => report.to_json(),
        ReportFormat::Text => report.to_text(),
    })
}

#[derive(Serialize)]
struct CertifyReport {
    file: String,
    method: &'static str,
    certificate: Option<CertificateReport>,
    notes: Vec<String>,
}

fn certify(args: CertifyArgs) -> Result<String> {
    let s = read_arrangement(&args.file)?.structure;
    let mut notes = Vec::new();
    let (method, divisor) = match args.method {
        Method::Pairing => ("pairing", Some(LineDivisor::full_arrangement(&s))),
        Method::Virtual => ("virtual", Some(LineDivisor::virtual_lines(&s, None)?)),
        Method::Cover => {
            let budget = args.search.budget.unwrap_or(s.num_points());
            let cover = min_line_cover_with_limit(&s, budget, args.search.node_limit)?;
            if cover.is_none() {
                notes.push(format!("no line cover with at most {budget} lines"));
            }
            ("cover", cover)
        }
    };
    let certificate = divisor.map(|d| covering_lower_bound(&d, &s)).transpose()?;
    let report = CertifyReport {
        file: display_name(&args.file),
        method,
        certificate: certificate.as_ref().map(CertificateReport::from),
        notes,
    };
    Ok(match args.report {
        ReportFormat::Json => to_json(&report),
        ReportFormat::Text => {
            let mut out = format!("{} certificate for {}\n", report.method, report.file);
            if let Some(c) = &report.certificate {
                out.push_str(&certificate_text(c));
            }
            for n in &report.notes {
                out.push_str(&format!("  note: {n}\n"));
            }
            out
        }
    })
}

fn display_name(path: &Path) -> String {
    path.file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_default()
}

/// Parses `3,2x7` into `[3, 2, 2, 2, 2, 2, 2, 2]`.
fn parse_list<T: std::str::FromStr + Clone>(text: &str) -> Result<Vec<T>> {
    let mut out = Vec::new();
    for item in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let bad = || Error::BadParameter(format!("cannot parse list entry {item:?}"));
        match item.split_once('x') {
            Some((value, count)) => {
                let value: T = value.trim().parse().map_err(|_| bad())?;
                let count: usize = count.trim().parse().map_err(|_| bad())?;
                out.extend(std::iter::repeat_n(value, count));
            }
            None => out.push(item.parse().map_err(|_| bad())?),
        }
    }
    Ok(out)
}

#[derive(Serialize)]
#[serde(untagged)]
enum Outcome {
    Holds(bool),
    Skipped(String),
}

impl Outcome {
    fn of(r: Result<bool>) -> Self {
        match r {
            Ok(b) => Outcome::Holds(b),
            Err(e) => Outcome::Skipped(format!("not applicable: {e}")),
        }
    }
}

#[derive(Serialize)]
struct CheckReport {
    curve: CurveSingData,
    effective_gonality: u32,
    checks: BTreeMap<&'static str, Outcome>,
    /// Square of the bound `sqrt(sum m(m-1) / (sum m)^2)`.
    chain_bound_squared: Option<String>,
    /// Square of the bound `sqrt(1/(2s))`.
    special_bound_squared: Option<String>,
}

fn ineq_check(args: CheckArgs) -> Result<String> {
    let mults: Vec<u32> = parse_list(&args.mults)?;
    let mut c = CurveSingData::new(args.d, mults.clone())?;
    if let Some(preset) = args.preset {
        let sing = match preset {
            Preset::Node => Singularity::Node,
            Preset::Cusp => Singularity::Cusp,
        };
        if mults.iter().any(|&m| m != sing.multiplicity()) {
            return Err(Error::BadParameter(
                "presets need every multiplicity to be 2".into(),
            ));
        }
        c = c.with_milnor(vec![sing.milnor(); mults.len()])?;
    }
    if let Some(milnor) = &args.milnor {
        c = c.with_milnor(parse_list(milnor)?)?;
    }
    if let Some(g) = args.gon {
        c = c.with_gonality_bound(g)?;
    }
    let huh = match args.o {
        Some(o) => check_huh(&c, o),
        None if mults.is_empty() => Err(Error::BadParameter(
            "no singular point to distinguish".into(),
        )),
        None => (0..mults.len()).try_fold(true, |acc, o| Ok(acc && check_huh(&c, o)?)),
    };
    let checks = BTreeMap::from([
        ("osz", Outcome::of(check_osz(&c))),
        ("osz_milnor", Outcome::of(check_osz_milnor(&c))),
        ("bezout", Outcome::Holds(check_bezout_mult(&c))),
        ("elx1", Outcome::of(check_elx1(&c))),
        ("elx2", Outcome::of(check_elx2(&c))),
        ("elx2_improved", Outcome::of(check_elx2_improved(&c))),
        ("huh", Outcome::of(huh)),
    ]);
    let report = CheckReport {
        effective_gonality: effective_gonality(&c),
        checks,
        chain_bound_squared: chain_lower_bound(&mults).ok().map(|b| fmt_rat(b.square())),
        special_bound_squared: special_lower_bound(mults.len() as u64)
            .ok()
            .map(|b| fmt_rat(b.square())),
        curve: c,
    };
    Ok(match args.report {
        ReportFormat::Json => to_json(&report),
        ReportFormat::Text => {
            let mut out = format!(
                "degree {}, multiplicities {:?}, gonality bound {}\n",
                report.curve.degree(),
                report.curve.mults(),
                report.effective_gonality
            );
            for (name, outcome) in &report.checks {
                match outcome {
                    Outcome::Holds(b) => out.push_str(&format!("{name}: {b}\n")),
                    Outcome::Skipped(why) => out.push_str(&format!("{name}: {why}\n")),
                }
            }
            if let (Some(chain), Some(special)) =
                (&report.chain_bound_squared, &report.special_bound_squared)
            {
                out.push_str(&format!("lower bounds: sqrt({chain}) >= sqrt({special})\n"));
            }
            out
        }
    })
}

#[derive(Serialize)]
struct PruneReport {
    s: usize,
    d_max: u32,
    target: String,
    /// Vectors no check excludes; none of them is known to exist.
    not_excluded: Vec<CurveSingData>,
}

fn ineq_prune(args: PruneArgs) -> Result<String> {
    let target = parse_rat(&args.target).map_err(|e| Error::BadParameter(e.to_string()))?;
    let found = prune_candidates(args.s, args.d_max, &target)?;
    let report = PruneReport {
        s: args.s,
        d_max: args.d_max,
        target: fmt_rat(&target),
        not_excluded: found,
    };
    Ok(match args.report {
        ReportFormat::Json => to_json(&report),
        ReportFormat::Text => {
            let mut out = format!(
                "{} vectors with d <= {}, s <= {} and ratio below {} are not excluded\n",
                report.not_excluded.len(),
                report.d_max,
                report.s,
                report.target
            );
            for c in &report.not_excluded {
                out.push_str(&format!("  d = {}, m = {:?}\n", c.degree(), c.mults()));
            }
            out
        }
    })
}

fn ineq_table(args: TableArgs) -> Result<String> {
    let xs = match &args.xs {
        Some(text) => parse_list(text)?,
        None => SEVERI_TABLE_XS.to_vec(),
    };
    let rows = severi_table(&xs)?;
    Ok(match args.report {
        ReportFormat::Json => to_json(&rows),
        ReportFormat::Text => render_severi_table(&rows),
    })
}

fn ineq_severi(args: SeveriArgs) -> Result<String> {
    let e = severi_estimate(args.d)?;
    let report = EstimateReport::from(&e);
    Ok(match args.report {
        ReportFormat::Json => to_json(&report),
        ReportFormat::Text => estimate_text(&report),
    })
}
