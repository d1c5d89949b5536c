//! Command-line frontend for the `flatlim` binary.
//!
//! Exit codes: 0 extremal limit, 2 embedded points, 3 rejected, 1 internal
//! error, 64 usage error. Identical arguments (including --seed) produce
//! byte-identical output. FLATLIM_LOG=1|2 turns on progress logging on
//! stderr.

use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::family::{self, CertifyOptions, PointSet};
use crate::groebner::{ideals_equal, Ideal, DEFAULT_STEP_CAP};
use crate::hilbert;
use crate::poly::{Polynomial, TermOrder, WeightVector};
use crate::report::{parse_field, CertificationReport, Verdict};
use crate::scalar::{Field, Scalar};

const EXIT_INTERNAL: i32 = 1;
const EXIT_USAGE: i32 = 64;

#[derive(Parser)]
#[command(
    name = "flatlim",
    version,
    about = "Certify flat limits of disjoint line unions on a smooth quadric in P^3"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Certify the flat limit of a configuration of d disjoint lines.
    Certify(CertifyArgs),
    /// Reproduce the documented degree-4 instance with an embedded point.
    Example {
        /// Emit the JSON report instead of the annotated text walk-through.
        #[arg(long)]
        json: bool,
    },
    /// Print the constants c_d (recurrence checked against the closed form).
    Catalan {
        /// Largest d to print, starting from 2.
        #[arg(long, default_value_t = 10)]
        max_d: usize,
    },
    /// Print the reduced Groebner basis of an ideal, one element per line.
    Gb(GbArgs),
    /// Print the Hilbert series numerator and Hilbert polynomial of an ideal.
    Hilbert(HilbertArgs),
}

#[derive(Args)]
struct CertifyArgs {
    /// Number of lines (inferred from --points when omitted).
    #[arg(long)]
    d: Option<usize>,
    /// Comma-separated point values, e.g. 0,1,3 (rationals like -1/2 allowed).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with = "random")]
    points: Option<Vec<String>>,
    /// Certify K random instances instead (requires --d); instance i uses
    /// seed + i. JSON output becomes an array of reports.
    #[arg(long, value_name = "K", num_args = 0..=1, default_missing_value = "1")]
    random: Option<u64>,
    /// Base RNG seed for --random.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Random points are integers drawn from [-bound, bound].
    #[arg(long, default_value_t = 10)]
    bound: i64,
    /// Coefficient field: q for the rationals, p=<prime> for F_p.
    #[arg(long, default_value = "q")]
    field: String,
    /// Emit the machine-readable JSON report instead of text.
    #[arg(long)]
    json: bool,
    /// Extend the Hilbert-function comparison windows through this degree.
    #[arg(long)]
    degree_bound: Option<u32>,
    /// Cap on colon steps inside each saturation.
    #[arg(long, default_value_t = DEFAULT_STEP_CAP)]
    step_cap: usize,
    /// Worker threads for batch runs (default: one per core).
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Args)]
struct GbArgs {
    /// Term order: grevlex, lex, or weight:w1,w2,w3,w4 (refining grevlex).
    #[arg(long, default_value = "grevlex")]
    order: String,
    /// Inline comma-separated generators, e.g. "x^2, x*y".
    #[arg(long)]
    ideal: Option<String>,
    /// Files with one generator per line; blank lines and # comments skipped.
    #[arg(value_name = "FILE")]
    files: Vec<PathBuf>,
    /// Coefficient field: q for the rationals, p=<prime> for F_p.
    #[arg(long, default_value = "q")]
    field: String,
}

#[derive(Args)]
struct HilbertArgs {
    /// Inline comma-separated generators, e.g. "x, y".
    #[arg(long)]
    ideal: Option<String>,
    /// File with one generator per line; blank lines and # comments skipped.
    #[arg(value_name = "FILE", conflicts_with = "ideal")]
    file: Option<PathBuf>,
    /// Coefficient field: q for the rationals, p=<prime> for F_p.
    #[arg(long, default_value = "q")]
    field: String,
}

/// Parses the process arguments and runs the selected command, returning
/// the process exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            let _ = err.print();
            return code;
        }
    };
    match &cli.command {
        Command::Certify(args) => cmd_certify(args),
        Command::Example { json } => cmd_example(*json),
        Command::Catalan { max_d } => cmd_catalan(*max_d),
        Command::Gb(args) => cmd_gb(args),
        Command::Hilbert(args) => cmd_hilbert(args),
    }
}

fn resolve_field(s: &str) -> Result<Field, i32> {
    parse_field(s).ok_or_else(|| {
        eprintln!("error: invalid field {s:?} (use q or p=<prime>)");
        EXIT_USAGE
    })
}

fn emit(report: &CertificationReport, json: bool) {
    if json {
        print!("{}", report.to_json());
    } else {
        print!("{report}");
    }
}

fn cmd_certify(args: &CertifyArgs) -> i32 {
    let field = match resolve_field(&args.field) {
        Ok(f) => f,
        Err(code) => return code,
    };
    let base_opts = CertifyOptions {
        seed: None,
        step_cap: args.step_cap,
        degree_bound: args.degree_bound,
    };

    if let Some(point_strs) = &args.points {
        let mut values = Vec::with_capacity(point_strs.len());
        for s in point_strs {
            match Scalar::parse(s.trim(), field) {
                Ok(v) => values.push(v),
                Err(e) => {
                    eprintln!("error: bad point {s:?}: {e}");
                    return EXIT_USAGE;
                }
            }
        }
        if let Some(d) = args.d {
            if d != values.len() {
                eprintln!("error: --d {d} disagrees with {} point(s)", values.len());
                return EXIT_USAGE;
            }
        }
        // The characteristic gate comes first so that residue collisions in
        // F_2/F_3 do not mask the real reason the field is excluded.
        let report = if let Some(reason) = family::characteristic_rejection(field) {
            CertificationReport::rejected_input(values, field, reason)
        } else {
            match PointSet::new(values.clone()) {
                Ok(pts) => match family::certify_with(&pts, &base_opts) {
                    Ok(report) => report,
                    Err(e) => {
                        eprintln!("error: {e}");
                        return EXIT_INTERNAL;
                    }
                },
                Err(e) => CertificationReport::rejected_input(values, field, e.to_string()),
            }
        };
        emit(&report, args.json);
        return report.verdict.exit_code();
    }

    let Some(k) = args.random else {
        eprintln!("error: provide --points or --random");
        return EXIT_USAGE;
    };
    let Some(d) = args.d else {
        eprintln!("error: --random requires --d");
        return EXIT_USAGE;
    };
    if d < 2 {
        eprintln!("error: need d >= 2");
        return EXIT_USAGE;
    }
    if args.bound < 1 || (d as i64) > 2 * args.bound + 1 {
        eprintln!("error: --bound {} cannot host {d} distinct integer points", args.bound);
        return EXIT_USAGE;
    }
    if let Field::Fp(p) = field {
        if (d as u64) > p {
            eprintln!("error: F_{p} has no {d} distinct points");
            return EXIT_USAGE;
        }
    }

    let seeds: Vec<u64> = (0..k).map(|i| args.seed.wrapping_add(i)).collect();
    let run_one = |seed: &u64| -> Result<CertificationReport, String> {
        if let Some(reason) = family::characteristic_rejection(field) {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let pts = family::random_point_set(d, field, args.bound, &mut rng);
            let mut report = CertificationReport::rejected_input(pts.values().to_vec(), field, reason);
            report.instance.seed = Some(*seed);
            return Ok(report);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(*seed);
        let pts = family::random_point_set(d, field, args.bound, &mut rng);
        let opts = CertifyOptions { seed: Some(*seed), ..base_opts.clone() };
        family::certify_with(&pts, &opts).map_err(|e| format!("seed {seed}: {e}"))
    };
    let results: Vec<Result<CertificationReport, String>> = match args.jobs {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| seeds.par_iter().map(run_one).collect()),
            Err(e) => {
                eprintln!("error: cannot build thread pool: {e}");
                return EXIT_INTERNAL;
            }
        },
        None => seeds.par_iter().map(run_one).collect(),
    };

    let mut internal = false;
    let mut code = 0;
    if args.json {
        let mut dtos = Vec::new();
        for result in &results {
            match result {
                Ok(report) => {
                    code = code.max(report.verdict.exit_code());
                    dtos.push(report.to_dto());
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    internal = true;
                }
            }
        }
        let mut s = serde_json::to_string_pretty(&dtos).expect("report serialization is total");
        s.push('\n');
        print!("{s}");
    } else {
        let mut first = true;
        for result in &results {
            match result {
                Ok(report) => {
                    if !first {
                        println!();
                    }
                    first = false;
                    print!("{report}");
                    code = code.max(report.verdict.exit_code());
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    internal = true;
                }
            }
        }
    }
    if internal {
        EXIT_INTERNAL
    } else {
        code
    }
}

fn cmd_example(json: bool) -> i32 {
    use crate::family::worked_example as ex;

    let field = Field::Q;
    let parse = |s: &str| Polynomial::parse(s, field).expect("documented strings parse");
    let pts = ex::point_set();
    let parts = family::det_a(&pts);
    let report = match family::certify(&pts) {
        Ok(report) => report,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INTERNAL;
        }
    };
    let detail = report.detail.as_ref().expect("documented instance is not rejected");
    let snap_ideal = |gens: &[String]| {
        Ideal::new(field, gens.iter().map(|s| parse(s)).collect())
    };
    let documented_ideal = |gens: &[&str]| {
        Ideal::new(field, gens.iter().map(|s| parse(s)).collect())
    };

    let mut failures: Vec<&str> = Vec::new();
    let mut check = |label: &'static str, ok: bool| {
        if !ok {
            failures.push(label);
        }
    };
    check("G factorization", parts.g == parse(ex::G_FACTORED));
    check("B factorization", parts.b == parse(ex::B_FACTORED));
    check(
        "initial form of A",
        parts.a.initial_form(&pts.omega()).expect("A is nonzero") == parse(ex::INITIAL_A_FACTORED),
    );
    check(
        "initial ideal",
        ideals_equal(
            &snap_ideal(&detail.initial_ideal.reduced_groebner),
            &documented_ideal(&ex::INITIAL_IDEAL_GENS),
        ),
    );
    check(
        "saturated ideal",
        ideals_equal(
            &snap_ideal(&detail.saturated_ideal.reduced_groebner),
            &documented_ideal(&ex::SATURATED_GENS),
        ),
    );
    check(
        "verdict",
        report.verdict == Verdict::EmbeddedPoints { length: ex::EMBEDDED_LENGTH },
    );
    check(
        "embedded locus",
        detail.embedded_locus.as_ref() == Some(&parse(ex::EMBEDDED_LOCUS)),
    );
    check(
        "extremal part genus",
        detail.hilbert.genus_extremal == Some(BigInt::from(ex::EXTREMAL_PART_GENUS)),
    );
    if !failures.is_empty() {
        for label in &failures {
            eprintln!("error: documented value does not match the computation: {label}");
        }
        return EXIT_INTERNAL;
    }

    if json {
        print!("{}", report.to_json());
        return 0;
    }
    println!("documented instance: d = {}, points {} over Q", ex::D, pts);
    println!();
    println!("A = x*G - z*B with");
    println!("G = {}", ex::G_FACTORED);
    println!("B = {}", ex::B_FACTORED);
    println!("in_(4,2,1,1)(A) = {}", ex::INITIAL_A_FACTORED);
    println!();
    println!("initial ideal generators (equal, as an ideal, to the computed one):");
    for g in ex::INITIAL_IDEAL_GENS {
        println!("  {g}");
    }
    println!("saturation of the initial ideal:");
    for g in ex::SATURATED_GENS {
        println!("  {g}");
    }
    println!(
        "embedded point: length {} where {} = 0 on the support line",
        ex::EMBEDDED_LENGTH,
        ex::EMBEDDED_LOCUS
    );
    println!();
    print!("{report}");
    0
}

fn cmd_catalan(max_d: usize) -> i32 {
    if max_d < 2 {
        eprintln!("error: --max-d must be at least 2");
        return EXIT_USAGE;
    }
    for d in 2..=max_d {
        println!("c_{d} = {}", family::catalan_c(d));
    }
    0
}

fn parse_order(s: &str) -> Option<TermOrder> {
    match s {
        "grevlex" => Some(TermOrder::Grevlex),
        "lex" => Some(TermOrder::Lex),
        _ => {
            let rest = s.strip_prefix("weight:")?;
            let weights: Vec<u64> = rest
                .split(',')
                .map(|p| p.trim().parse().ok())
                .collect::<Option<_>>()?;
            let weights: [u64; 4] = weights.try_into().ok()?;
            WeightVector::new(weights).map(|w| TermOrder::weight_refined(w, TermOrder::Grevlex))
        }
    }
}

/// Collects generators from an optional inline list and input files.
fn gather_generators(
    inline: Option<&str>,
    files: &[PathBuf],
    field: Field,
) -> Result<Vec<Polynomial>, i32> {
    let mut gens = Vec::new();
    if let Some(inline) = inline {
        for part in inline.split(',') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            match Polynomial::parse(part, field) {
                Ok(p) => gens.push(p),
                Err(e) => {
                    eprintln!("error: in --ideal, generator {part:?}: {e}");
                    return Err(EXIT_USAGE);
                }
            }
        }
    }
    for file in files {
        let text = match fs::read_to_string(file) {
            Ok(t) => t,
            Err(e) => {
                eprintln!("error: cannot read {}: {e}", file.display());
                return Err(EXIT_USAGE);
            }
        };
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            match Polynomial::parse(line, field) {
                Ok(p) => gens.push(p),
                Err(e) => {
                    eprintln!("error: {}:{}: {e}", file.display(), idx + 1);
                    return Err(EXIT_USAGE);
                }
            }
        }
    }
    if gens.is_empty() {
        eprintln!("error: no generators given (use --ideal or FILE)");
        return Err(EXIT_USAGE);
    }
    Ok(gens)
}

fn cmd_gb(args: &GbArgs) -> i32 {
    let field = match resolve_field(&args.field) {
        Ok(f) => f,
        Err(code) => return code,
    };
    let Some(order) = parse_order(&args.order) else {
        eprintln!(
            "error: invalid order {:?} (grevlex, lex, or weight:w1,w2,w3,w4)",
            args.order
        );
        return EXIT_USAGE;
    };
    let gens = match gather_generators(args.ideal.as_deref(), &args.files, field) {
        Ok(g) => g,
        Err(code) => return code,
    };
    let gb = Ideal::new(field, gens).groebner_basis(&order);
    for f in gb.elements() {
        println!("{f}");
    }
    0
}

fn cmd_hilbert(args: &HilbertArgs) -> i32 {
    let field = match resolve_field(&args.field) {
        Ok(f) => f,
        Err(code) => return code,
    };
    let files: Vec<PathBuf> = args.file.iter().cloned().collect();
    let gens = match gather_generators(args.ideal.as_deref(), &files, field) {
        Ok(g) => g,
        Err(code) => return code,
    };
    let ideal = Ideal::new(field, gens);
    match hilbert::hilbert_numerator(&ideal) {
        Ok(num) => {
            let coeffs: Vec<String> = num.coeffs().iter().map(BigInt::to_string).collect();
            println!("numerator: [{}]", coeffs.join(", "));
            println!("hilbert polynomial: {}", num.hilbert_polynomial());
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_INTERNAL
        }
    }
}
