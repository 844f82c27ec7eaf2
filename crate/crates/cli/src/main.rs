//! `revcode`: count, enumerate and analyze reversible codes over GF(4).
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 usage or parse error,
//! 3 resource guard.

use std::collections::BTreeSet;
use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use revcode::counter::{self, CountTable, Mode};
use revcode::distance::{distance_report, DistanceReport, DEFAULT_SWEEP_CEILING};
use revcode::dna::{self, ConstraintReport, DEFAULT_EXPORT_CEILING, DEFAULT_PAIR_CEILING};
use revcode::enumerator::{enumerate_type, generator_matrix, EnumerateOptions, DEFAULT_CEILING};
use revcode::oracle::{brute_force_reversible, table_from_codes, ORACLE_MAX_N};
use revcode::text::{emit_code, emit_rows, parse_records};
use revcode::{Error, IsoType, ReverseSpace, ReversibleCode, Subspace};

const CEILING_VAR: &str = "REVCODE_CEILING";

#[derive(Parser)]
#[command(name = "revcode", version, about = "Reversible and reversible-complementary codes over GF(4)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count codes per isomorphism type
    Count(CountArgs),
    /// Stream every code of one isomorphism type
    Enumerate(EnumerateArgs),
    /// Minimum distance, socle bound and DNA constraint margins
    Distance(DistanceArgs),
    /// Cross-check enumerator and counter against brute force
    Verify(VerifyArgs),
    /// Write every codeword of a code as a DNA strand
    ExportDna(ExportArgs),
}

#[derive(Args)]
struct OutputArg {
    /// Write to this file instead of standard output
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Paper,
    Verified,
    Both,
    Oracle,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Paper => Mode::Paper,
            ModeArg::Verified => Mode::Verified,
            ModeArg::Both => Mode::Both,
            ModeArg::Oracle => Mode::Oracle,
        }
    }
}

#[derive(Args)]
struct CountArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, requires = "s")]
    t: Option<usize>,
    #[arg(long, requires = "t")]
    s: Option<usize>,
    /// Only codes containing the all-ones vector
    #[arg(long)]
    contains_one: bool,
    #[arg(long, value_enum, default_value = "both")]
    mode: ModeArg,
    /// Print the number of realized isomorphism types instead of a table
    #[arg(long)]
    iso_types: bool,
    #[arg(long)]
    json: bool,
    #[command(flatten)]
    out: OutputArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Matrix,
    Dna,
    Generator,
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    t: usize,
    #[arg(long)]
    s: usize,
    #[arg(long)]
    contains_one: bool,
    #[arg(long, value_enum, default_value = "matrix")]
    format: Format,
    /// Stop after this many codes
    #[arg(long)]
    limit: Option<usize>,
    /// Enumerate even above the size ceiling
    #[arg(long)]
    force: bool,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[command(flatten)]
    out: OutputArg,
}

#[derive(Args)]
struct DistanceArgs {
    /// File of codes in matrix format
    #[arg(long = "in", conflicts_with_all = ["n", "t", "s"])]
    input: Option<PathBuf>,
    #[arg(long, requires_all = ["t", "s"])]
    n: Option<usize>,
    #[arg(long)]
    t: Option<usize>,
    #[arg(long)]
    s: Option<usize>,
    #[arg(long)]
    contains_one: bool,
    #[arg(long)]
    force: bool,
    #[arg(long)]
    json: bool,
    #[command(flatten)]
    out: OutputArg,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    n: usize,
    /// Permit lengths above the brute-force limit
    #[arg(long)]
    allow_large: bool,
    #[arg(long)]
    json: bool,
    #[command(flatten)]
    out: OutputArg,
}

#[derive(Args)]
struct ExportArgs {
    /// File of codes in matrix format
    #[arg(long = "in")]
    input: PathBuf,
    #[command(flatten)]
    out: OutputArg,
}

struct Failure {
    code: u8,
    msg: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e {
            Error::TooLarge { .. } => 3,
            _ => 2,
        };
        Failure { code, msg: e.to_string() }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Failure {
        Failure {
            code: 2,
            msg: e.to_string(),
        }
    }
}

type Outcome = Result<u8, Failure>;

fn open_output(out: &OutputArg) -> io::Result<Box<dyn Write>> {
    Ok(match &out.output {
        Some(p) => Box::new(BufWriter::new(fs::File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn env_ceiling() -> Result<Option<u64>, Failure> {
    match std::env::var(CEILING_VAR) {
        Ok(v) => v.trim().parse().map(Some).map_err(|_| Failure {
            code: 2,
            msg: format!("{CEILING_VAR} must be a non-negative integer, got {v:?}"),
        }),
        Err(_) => Ok(None),
    }
}

fn read_codes(path: &PathBuf) -> Result<Vec<Subspace>, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure {
        code: 2,
        msg: format!("{}: {e}", path.display()),
    })?;
    Ok(parse_records(&text)?)
}

fn cmd_count(a: &CountArgs) -> Outcome {
    let mut w = open_output(&a.out)?;
    if a.iso_types {
        let k = counter::count_iso_types(a.n, a.contains_one)?;
        if a.json {
            writeln!(w, "{}", json!({"n": a.n, "contains_one": a.contains_one, "iso_types": k}))?;
        } else {
            write!(w, "n={}\ncontains_one={}\niso_types={k}\n", a.n, a.contains_one)?;
        }
        w.flush()?;
        return Ok(0);
    }
    let types: Vec<IsoType> = match (a.t, a.s) {
        (Some(t), Some(s)) => vec![IsoType::new(t, s)],
        _ => IsoType::all_for(a.n),
    };
    let mode = Mode::from(a.mode);
    let table = if mode == Mode::Oracle {
        let codes = brute_force_reversible(a.n, false)?;
        let full = table_from_codes(a.n, a.contains_one, &codes);
        let entries = full.entries.into_iter().filter(|e| types.contains(&e.iso_type())).collect();
        CountTable::from_entries(a.n, a.contains_one, Mode::Oracle, entries)
    } else {
        counter::count_table_for(a.n, a.contains_one, mode, &types)?
    };
    if a.json {
        writeln!(w, "{}", serde_json::to_string(&table).expect("serializable"))?;
    } else {
        w.write_all(table.render().as_bytes())?;
    }
    w.flush()?;
    Ok(0)
}

fn cmd_enumerate(a: &EnumerateArgs) -> Outcome {
    let rs = ReverseSpace::new(a.n)?;
    let opts = EnumerateOptions {
        ceiling: env_ceiling()?.unwrap_or(DEFAULT_CEILING),
        force: a.force,
        jobs: a.jobs,
    };
    let stream = enumerate_type(&rs, a.t, a.s, a.contains_one, &opts)?;
    let mut w = open_output(&a.out)?;
    let limit = a.limit.unwrap_or(usize::MAX);
    for (i, code) in stream.take(limit).enumerate() {
        match a.format {
            Format::Matrix => w.write_all(emit_code(&code).as_bytes())?,
            Format::Generator => {
                let g = generator_matrix(&code)?;
                w.write_all(emit_rows(a.n, &g.rows()).as_bytes())?;
            }
            Format::Dna => {
                if i > 0 {
                    w.write_all(b"\n")?;
                }
                let strands = dna::export_dna_with_ceiling(code.space(), export_ceiling()?)?;
                w.write_all(dna::render_strands(&strands).as_bytes())?;
            }
        }
    }
    w.flush()?;
    Ok(0)
}

fn export_ceiling() -> Result<u64, Failure> {
    Ok(env_ceiling()?.unwrap_or(DEFAULT_EXPORT_CEILING))
}

struct Analysis {
    code: ReversibleCode,
    distance: DistanceReport,
    constraints: Option<ConstraintReport>,
}

fn analyze(code: ReversibleCode, rs: &ReverseSpace, ceiling: Option<u64>) -> Result<Analysis, Failure> {
    let distance = distance_report(&code, rs, ceiling.unwrap_or(DEFAULT_SWEEP_CEILING))?;
    let pair_ceiling = ceiling.unwrap_or(DEFAULT_PAIR_CEILING);
    let constraints = match dna::constraint_report_with_ceiling(code.space(), pair_ceiling) {
        Ok(r) => Some(r),
        Err(Error::TooLarge { .. }) => None,
        Err(e) => return Err(e.into()),
    };
    Ok(Analysis {
        code,
        distance,
        constraints,
    })
}

fn cmd_distance(a: &DistanceArgs) -> Outcome {
    let ceiling = env_ceiling()?;
    let codes: Vec<ReversibleCode> = match (&a.input, a.n, a.t, a.s) {
        (Some(path), ..) => {
            let mut out = Vec::new();
            for space in read_codes(path)? {
                let rs = ReverseSpace::new(space.n())?;
                out.push(ReversibleCode::new(space, &rs)?);
            }
            out
        }
        (None, Some(n), Some(t), Some(s)) => {
            let rs = ReverseSpace::new(n)?;
            let opts = EnumerateOptions {
                ceiling: ceiling.unwrap_or(DEFAULT_CEILING),
                force: a.force,
                jobs: 1,
            };
            enumerate_type(&rs, t, s, a.contains_one, &opts)?.collect()
        }
        _ => {
            return Err(Failure {
                code: 2,
                msg: "distance needs --in FILE or --n, --t and --s".into(),
            })
        }
    };
    let mut reports = Vec::with_capacity(codes.len());
    for code in codes {
        if code.dim() == 0 {
            return Err(Error::ZeroCode.into());
        }
        let rs = ReverseSpace::new(code.n())?;
        reports.push(analyze(code, &rs, ceiling)?);
    }
    let violations = reports
        .iter()
        .filter(|r| {
            let d = &r.distance;
            let dm = d.d_min.unwrap_or(0);
            d.bound_socle.is_some_and(|b| dm > b) || dm > d.bound_singleton || d.hat_identity == Some(false)
        })
        .count();
    let mut w = open_output(&a.out)?;
    if a.json {
        let items: Vec<_> = reports
            .iter()
            .map(|r| {
                json!({
                    "code": emit_code(&r.code),
                    "distance": r.distance,
                    "constraints": r.constraints,
                })
            })
            .collect();
        let doc = json!({"reports": items, "codes": reports.len(), "violations": violations});
        writeln!(w, "{doc}")?;
    } else {
        for (i, r) in reports.iter().enumerate() {
            if i > 0 {
                w.write_all(b"\n")?;
            }
            w.write_all(emit_code(&r.code).as_bytes())?;
            w.write_all(r.distance.render().as_bytes())?;
            match &r.constraints {
                Some(c) => w.write_all(c.render().as_bytes())?,
                None => w.write_all(b"constraints=skipped\n")?,
            }
        }
        if reports.len() > 1 {
            writeln!(w, "\nsummary codes={} violations={violations}", reports.len())?;
        }
    }
    w.flush()?;
    Ok(0)
}

struct SettingCheck {
    contains_one: bool,
    oracle_total: String,
    enumerator_ok: bool,
    counter_ok: bool,
    mismatches: Vec<String>,
    paper_discrepancies: Vec<IsoType>,
}

fn verify_setting(n: usize, contains_one: bool, oracle_codes: &[ReversibleCode]) -> Result<SettingCheck, Failure> {
    let rs = ReverseSpace::new(n)?;
    let oracle_table = table_from_codes(n, contains_one, oracle_codes);
    let both = counter::count_table(n, contains_one, Mode::Both)?;
    let opts = EnumerateOptions {
        force: true,
        ..EnumerateOptions::default()
    };
    let mut mismatches = Vec::new();
    let (mut enumerator_ok, mut counter_ok) = (true, true);
    for ty in IsoType::all_for(n) {
        let expected: BTreeSet<&Subspace> = oracle_codes
            .iter()
            .filter(|c| c.iso_type() == ty && (!contains_one || c.contains_one()))
            .map(|c| c.space())
            .collect();
        let emitted: Vec<ReversibleCode> = enumerate_type(&rs, ty.t, ty.s, contains_one, &opts)?.collect();
        let got: BTreeSet<&Subspace> = emitted.iter().map(|c| c.space()).collect();
        if got != expected || got.len() != emitted.len() {
            enumerator_ok = false;
            mismatches.push(format!(
                "enumerator {ty}: emitted {} distinct of {}, oracle {}",
                got.len(),
                emitted.len(),
                expected.len()
            ));
        }
        let oracle_cell = oracle_table.entry(ty).and_then(|e| e.oracle.clone());
        let verified_cell = both.entry(ty).and_then(|e| e.verified.clone());
        if oracle_cell != verified_cell {
            counter_ok = false;
            mismatches.push(format!(
                "counter {ty}: verified {} oracle {}",
                verified_cell.map_or("none".into(), |c| c.to_string()),
                oracle_cell.map_or("none".into(), |c| c.to_string())
            ));
        }
    }
    Ok(SettingCheck {
        contains_one,
        oracle_total: oracle_table.total.oracle.map_or("0".into(), |c| c.to_string()),
        enumerator_ok,
        counter_ok,
        mismatches,
        paper_discrepancies: both.discrepancies,
    })
}

fn pass(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn cmd_verify(a: &VerifyArgs) -> Outcome {
    let oracle_codes = brute_force_reversible(a.n, a.allow_large)?;
    let checks = [
        verify_setting(a.n, false, &oracle_codes)?,
        verify_setting(a.n, true, &oracle_codes)?,
    ];
    let ok = checks.iter().all(|c| c.enumerator_ok && c.counter_ok);
    let mut w = open_output(&a.out)?;
    if a.json {
        let items: Vec<_> = checks
            .iter()
            .map(|c| {
                json!({
                    "contains_one": c.contains_one,
                    "oracle_total": c.oracle_total,
                    "enumerator": pass(c.enumerator_ok),
                    "counter": pass(c.counter_ok),
                    "mismatches": c.mismatches,
                    "paper_discrepancies": c.paper_discrepancies,
                })
            })
            .collect();
        writeln!(w, "{}", json!({"n": a.n, "checks": items, "result": pass(ok)}))?;
    } else {
        writeln!(w, "n={}", a.n)?;
        for c in &checks {
            writeln!(
                w,
                "check contains_one={} oracle_total={} enumerator={} counter={}",
                c.contains_one,
                c.oracle_total,
                pass(c.enumerator_ok),
                pass(c.counter_ok)
            )?;
            for m in &c.mismatches {
                writeln!(w, "mismatch contains_one={} {m}", c.contains_one)?;
            }
            let list: Vec<String> = c.paper_discrepancies.iter().map(|d| d.to_string()).collect();
            writeln!(
                w,
                "paper_discrepancies contains_one={} {}",
                c.contains_one,
                if list.is_empty() { "none".into() } else { list.join(",") }
            )?;
        }
        writeln!(w, "result={}", pass(ok))?;
    }
    w.flush()?;
    Ok(if ok { 0 } else { 1 })
}

fn cmd_export(a: &ExportArgs) -> Outcome {
    let codes = read_codes(&a.input)?;
    let ceiling = export_ceiling()?;
    let mut w = open_output(&a.out)?;
    for (i, c) in codes.iter().enumerate() {
        if i > 0 {
            w.write_all(b"\n")?;
        }
        let strands = dna::export_dna_with_ceiling(c, ceiling)?;
        w.write_all(dna::render_strands(&strands).as_bytes())?;
    }
    w.flush()?;
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Count(a) => cmd_count(a),
        Command::Enumerate(a) => cmd_enumerate(a),
        Command::Distance(a) => cmd_distance(a),
        Command::Verify(a) => {
            if a.n > ORACLE_MAX_N && !a.allow_large {
                Err(Failure {
                    code: 3,
                    msg: format!("verify is limited to n <= {ORACLE_MAX_N}; pass --allow-large to override"),
                })
            } else {
                cmd_verify(a)
            }
        }
        Command::ExportDna(a) => cmd_export(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("revcode: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
