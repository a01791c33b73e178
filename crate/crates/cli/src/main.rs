//! Command-line driver: named examples or JSON structure files in, homology
//! tables and duality reports out.
//!
//! Exit codes: 0 success, 1 invalid input, 2 axiom failure, 3 certification
//! requested but unattainable at the given truncation. Output is
//! deterministic — identical invocations produce identical bytes.

use clap::{Args, Parser, Subcommand, ValueEnum};
use hochschild::bar_cobar::{
    cohochschild, ext_from_resolution, hochschild as hochschild_homology, oracle_crosscheck,
    tor_one_sided, ExtTable, PeriodicResolution,
};
use hochschild::dg::registry::{ExampleObject, ExampleParams, ExampleRegistry};
use hochschild::dg::{
    check_algebra_axioms, check_coalgebra_axioms, dualize_algebra, dualize_coalgebra, DGAlgebra,
    DGCoalgebra,
};
use hochschild::duality::{
    duality_transport_cohh, quasi_properness_report, tensor_rank_bound_demo, DualitySubject,
    QuasiPropernessReport,
};
use hochschild::error::{Error, Result};
use hochschild::graded::{ChainComplex, GradedModule, HomologyTable, Stability, Window};
use hochschild::ring::CoefficientRing;
use hochschild::schema::{
    algebra_to_value, coalgebra_to_value, parse_structure_file, table_to_json, ParsedStructure,
};
use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "hochschild",
    version,
    about = "Exact Hochschild and coHochschild homology of graded DG (co)algebras",
    long_about = "Exact Hochschild and coHochschild homology of graded DG (co)algebras \
                  over GF(p) and Z, with truncation certificates and linear-duality \
                  transport.\n\nInputs are named registry examples (--example) or JSON \
                  structure files (--input). The unnormalized oracle's size cap is \
                  controlled by the HOCHSCHILD_ORACLE_CAP environment variable \
                  (default 20000 basis tuples per degree)."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Hochschild homology via the truncated normalized cyclic bar complex
    Hh {
        #[command(flatten)]
        input: InputArgs,
        /// Simplicial truncation level N
        #[arg(long)]
        levels: usize,
        /// Degree window lo:hi to report
        #[arg(long, allow_hyphen_values = true)]
        window: String,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        /// Also run the unnormalized oracle and require agreement
        #[arg(long)]
        oracle_crosscheck: bool,
        /// Exit 3 unless every reported degree carries a certificate
        #[arg(long)]
        certificate_required: bool,
    },
    /// coHochschild homology via the truncated conormalized cyclic cobar complex
    Cohh {
        #[command(flatten)]
        input: InputArgs,
        /// Cosimplicial truncation level N
        #[arg(long)]
        levels: usize,
        /// Degree window lo:hi to report
        #[arg(long, allow_hyphen_values = true)]
        window: String,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        /// Exit 3 unless every reported degree carries a certificate
        #[arg(long)]
        certificate_required: bool,
    },
    /// Tor of the augmentation module via the one-sided bar complex
    Tor {
        #[command(flatten)]
        input: InputArgs,
        /// Number of bar stages to keep
        #[arg(long)]
        levels: usize,
        /// Stage window lo:hi to report (rows are bar stages)
        #[arg(long, allow_hyphen_values = true)]
        window: String,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        /// Exit 3 unless every reported stage carries a certificate
        #[arg(long)]
        certificate_required: bool,
    },
    /// Ext over the exterior algebra on one generator, from its periodic resolution
    Ext {
        /// Field characteristic
        #[arg(long, default_value_t = 2)]
        p: u32,
        /// Degree of the exterior generator
        #[arg(long, default_value_t = -1, allow_hyphen_values = true)]
        z_degree: i64,
        /// Highest cohomological stage to report
        #[arg(long, default_value_t = 4)]
        stages: usize,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Dualize an algebra or coalgebra and emit it as a structure file
    Dualize {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Check the (co)algebra axioms and report violations
    Axioms {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Quasi-properness report: finiteness Conditions 1 and 2
    Check {
        #[command(flatten)]
        input: InputArgs,
        /// Highest tensor power for Condition 1
        #[arg(long, default_value_t = 3)]
        n_max: usize,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// coHochschild homology computed through the dual algebra
    Transport {
        #[command(flatten)]
        input: InputArgs,
        /// Simplicial truncation level N on the dual side
        #[arg(long)]
        levels: usize,
        /// Degree window lo:hi to report
        #[arg(long, allow_hyphen_values = true)]
        window: String,
        /// Override a quasi-properness refusal (recorded in the audit trail)
        #[arg(long)]
        force: bool,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Tensor-rank separation: the identity pairing versus short simple sums
    Demo {
        /// Vector-space dimension m
        #[arg(long)]
        m: usize,
        /// Coefficient field, gfp:<p>
        #[arg(long, default_value = "gfp:2")]
        ring: String,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
}

/// Input selection shared by structure-consuming commands.
#[derive(Args)]
struct InputArgs {
    /// Registry example: exterior, exterior-coalgebra, truncated-polynomial,
    /// koszul, dual-koszul, laurent, finite-vector-space
    #[arg(long, conflicts_with = "input")]
    example: Option<String>,
    /// JSON structure file
    #[arg(long)]
    input: Option<PathBuf>,
    /// Coefficient ring for examples: gfp:<p> or z
    #[arg(long)]
    ring: Option<String>,
    /// Prime parameter for examples built over a specific p
    #[arg(long)]
    p: Option<u32>,
    /// Generator degree, repeatable
    #[arg(long = "gen-degree", allow_hyphen_values = true)]
    gen_degree: Vec<i64>,
    /// Truncation order for truncated-polynomial
    #[arg(long)]
    truncation: Option<u32>,
    /// Rank for finite-vector-space
    #[arg(long)]
    size: Option<usize>,
    /// Skip the axiom check when parsing a structure file
    #[arg(long)]
    no_check: bool,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

/// 1 invalid input, 2 axiom failure, 3 certification unattainable.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::AxiomViolation { .. } | Error::CompositionNotZero { .. } => 2,
        Error::CertificationUnattainable { .. } | Error::TransportRefused { .. } => 3,
        _ => 1,
    }
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Hh { input, levels, window, format, oracle_crosscheck: oracle, certificate_required } => {
            let a = expect_algebra(load_object(&input)?)?;
            let w = parse_window(&window)?;
            let table = hochschild_homology(&a, levels, w)?;
            let mut notes = Vec::new();
            if oracle {
                oracle_crosscheck(&a, levels, w)?;
                notes.push(format!(
                    "unnormalized oracle agrees on certified degrees in [{}, {}]",
                    w.lo, w.hi
                ));
            }
            if certificate_required {
                require_certificates(&table, levels)?;
            }
            print_table(&table, format, &notes);
            Ok(())
        }
        Command::Cohh { input, levels, window, format, certificate_required } => {
            let c = expect_coalgebra(load_object(&input)?)?;
            let w = parse_window(&window)?;
            let table = cohochschild(&c, levels, w)?;
            if certificate_required {
                require_certificates(&table, levels)?;
            }
            print_table(&table, format, &[]);
            Ok(())
        }
        Command::Tor { input, levels, window, format, certificate_required } => {
            let a = expect_algebra(load_object(&input)?)?;
            let w = parse_window(&window)?;
            let table = tor_one_sided(&a, levels, w)?;
            if certificate_required {
                require_certificates(&table, levels)?;
            }
            print_table(&table, format, &["rows are bar stages s, not internal degrees".to_string()]);
            Ok(())
        }
        Command::Ext { p, z_degree, stages, format } => {
            let ring = CoefficientRing::prime_field(p)?;
            let res = PeriodicResolution::standard(z_degree, stages + 1);
            let target = GradedModule::new(ring, [(0, 1)].into());
            let table = ext_from_resolution(&res, &target, Window::new(0, stages as i64)?)?;
            print_ext(&table, Window::new(0, stages as i64)?, format);
            Ok(())
        }
        Command::Dualize { input } => {
            let value = match load_object(&input)? {
                ExampleObject::Algebra(a) => {
                    coalgebra_to_value(&dualize_algebra(&a, reflected_span(a.complex())?)?)?
                }
                ExampleObject::Coalgebra(c) => {
                    algebra_to_value(&dualize_coalgebra(&c, reflected_span(c.complex())?)?)?
                }
                ExampleObject::Module(_) => {
                    return Err(Error::BadParameter(
                        "dualize needs an algebra or a coalgebra".to_string(),
                    ))
                }
            };
            println!("{}", serde_json::to_string_pretty(&value)?);
            Ok(())
        }
        Command::Axioms { input } => {
            // Parse without the gate so this command is the one reporting.
            match load_object_unchecked(&input)? {
                ExampleObject::Algebra(a) => check_algebra_axioms(&a).into_result()?,
                ExampleObject::Coalgebra(c) => check_coalgebra_axioms(&c).into_result()?,
                // Bare complexes have d² = 0 enforced at construction.
                ExampleObject::Module(_) => {}
            }
            println!("all axioms hold");
            Ok(())
        }
        Command::Check { input, n_max, format } => {
            let report = match load_object(&input)? {
                ExampleObject::Algebra(a) => {
                    quasi_properness_report(DualitySubject::Algebra(&a), n_max, None)?
                }
                ExampleObject::Coalgebra(c) => {
                    quasi_properness_report(DualitySubject::Coalgebra(&c), n_max, None)?
                }
                ExampleObject::Module(_) => {
                    return Err(Error::BadParameter(
                        "check needs an algebra or a coalgebra".to_string(),
                    ))
                }
            };
            print_check(&report, format)?;
            Ok(())
        }
        Command::Transport { input, levels, window, force, format } => {
            let c = expect_coalgebra(load_object(&input)?)?;
            let w = parse_window(&window)?;
            let result = duality_transport_cohh(&c, levels, w, force)?;
            match format {
                Format::Table => {
                    for line in &result.audit {
                        println!("{line}");
                    }
                    print!("{}", result.table.render_text());
                }
                Format::Json => {
                    let mut v = serde_json::to_value(table_to_json(&result.table))?;
                    v["forced"] = serde_json::Value::Bool(result.forced);
                    v["audit"] = serde_json::to_value(&result.audit)?;
                    println!("{}", serde_json::to_string_pretty(&v)?);
                }
            }
            Ok(())
        }
        Command::Demo { m, ring, format } => {
            let demo = tensor_rank_bound_demo(m, parse_ring(&ring)?)?;
            match format {
                Format::Table => {
                    println!("dimension m:        {}", demo.m);
                    println!("identity rank:      {}", demo.identity_rank);
                    println!("term budget r:      {}", demo.term_budget);
                    println!("samples:            {}", demo.samples);
                    println!("max rank observed:  {}", demo.max_rank_observed);
                    println!("bound rank <= r:    {}", if demo.bound_holds { "holds" } else { "VIOLATED" });
                    for note in &demo.notes {
                        println!("note: {note}");
                    }
                }
                Format::Json => println!("{}", serde_json::to_string_pretty(&demo)?),
            }
            Ok(())
        }
    }
}

fn parse_ring(text: &str) -> Result<CoefficientRing> {
    match text {
        "z" | "Z" | "integers" => Ok(CoefficientRing::integers()),
        _ => match text.strip_prefix("gfp:") {
            Some(p) => {
                let p: u32 = p
                    .parse()
                    .map_err(|_| Error::BadParameter(format!("bad prime in ring '{text}'")))?;
                CoefficientRing::prime_field(p)
            }
            None => Err(Error::BadParameter(format!(
                "unknown ring '{text}'; use gfp:<p> or z"
            ))),
        },
    }
}

fn parse_window(text: &str) -> Result<Window> {
    let parts: Vec<&str> = text.split(':').collect();
    let [lo, hi] = parts.as_slice() else {
        return Err(Error::BadParameter(format!("window '{text}' is not of the form lo:hi")));
    };
    let parse = |s: &str| -> Result<i64> {
        s.trim()
            .parse()
            .map_err(|_| Error::BadParameter(format!("window bound '{s}' is not an integer")))
    };
    Window::new(parse(lo)?, parse(hi)?)
}

fn registry_params(args: &InputArgs) -> Result<ExampleParams> {
    Ok(ExampleParams {
        ring: args.ring.as_deref().map(parse_ring).transpose()?,
        p: args.p,
        gen_degrees: args.gen_degree.clone(),
        truncation: args.truncation,
        size: args.size,
        window: None,
    })
}

fn load_with(args: &InputArgs, check_axioms: bool) -> Result<ExampleObject> {
    match (&args.example, &args.input) {
        (Some(name), None) => ExampleRegistry::with_defaults().build(name, &registry_params(args)?),
        (None, Some(path)) => Ok(match parse_structure_file(path, check_axioms)? {
            ParsedStructure::Algebra(a) => ExampleObject::Algebra(a),
            ParsedStructure::Coalgebra(c) => ExampleObject::Coalgebra(c),
        }),
        (None, None) => Err(Error::BadParameter(
            "an input is required: --example <name> or --input <file.json>".to_string(),
        )),
        (Some(_), Some(_)) => unreachable!("clap conflicts_with rejects this"),
    }
}

fn load_object(args: &InputArgs) -> Result<ExampleObject> {
    load_with(args, !args.no_check)
}

fn load_object_unchecked(args: &InputArgs) -> Result<ExampleObject> {
    load_with(args, false)
}

fn expect_algebra(obj: ExampleObject) -> Result<DGAlgebra> {
    match obj {
        ExampleObject::Algebra(a) => Ok(a),
        other => Err(Error::BadParameter(format!(
            "this operation needs an algebra, got a {}",
            other.kind()
        ))),
    }
}

fn expect_coalgebra(obj: ExampleObject) -> Result<DGCoalgebra> {
    match obj {
        ExampleObject::Coalgebra(c) => Ok(c),
        other => Err(Error::BadParameter(format!(
            "this operation needs a coalgebra, got a {}",
            other.kind()
        ))),
    }
}

/// The window a dual wants: the reflection of everything the input covers.
fn reflected_span(x: &ChainComplex) -> Result<Window> {
    let span = x
        .covered()
        .or_else(|| x.natural_window())
        .unwrap_or(Window::new(0, 0)?);
    Ok(span.reflect())
}

fn require_certificates(table: &HomologyTable, levels: usize) -> Result<()> {
    for (&t, row) in &table.rows {
        if !matches!(row.stability, Stability::Certified { .. }) {
            return Err(Error::CertificationUnattainable {
                context: format!(
                    "degree {t} is {} at N = {levels}; raise --levels or drop --certificate-required",
                    row.stability.short_name()
                ),
            });
        }
    }
    Ok(())
}

fn print_table(table: &HomologyTable, format: Format, notes: &[String]) {
    match format {
        Format::Table => {
            print!("{}", table.render_text());
            for note in notes {
                println!("note: {note}");
            }
        }
        Format::Json => {
            let mut v = serde_json::to_value(table_to_json(table)).expect("table serializes");
            if !notes.is_empty() {
                v["notes"] = serde_json::to_value(notes).expect("notes serialize");
            }
            println!("{}", serde_json::to_string_pretty(&v).expect("json renders"));
        }
    }
}

fn print_ext(table: &ExtTable, stages: Window, format: Format) {
    // Emit every (s, t) cell with s in the window and t in the union of
    // internal degrees seen, so zero rows are visible and ordering is fixed.
    let internal: Vec<i64> = {
        let mut ts: Vec<i64> = table.groups.keys().map(|&(_, t)| t).collect();
        ts.sort_unstable();
        ts.dedup();
        if ts.is_empty() {
            vec![0]
        } else {
            ts
        }
    };
    match format {
        Format::Table => {
            println!("stage  degree  free  torsion");
            for s in stages.iter() {
                for &t in &internal {
                    let g = table.group(s, t);
                    let torsion = if g.torsion.is_empty() {
                        "-".to_string()
                    } else {
                        g.torsion.iter().map(|d| format!("Z/{d}")).collect::<Vec<_>>().join("+")
                    };
                    println!("{s:>5}  {t:>6}  {:>4}  {torsion}", g.free_rank);
                }
            }
        }
        Format::Json => {
            let rows: Vec<serde_json::Value> = stages
                .iter()
                .flat_map(|s| {
                    internal.iter().map(move |&t| (s, t))
                })
                .map(|(s, t)| {
                    let g = table.group(s, t);
                    serde_json::json!({
                        "stage": s,
                        "degree": t,
                        "free": g.free_rank,
                        "torsion": g.torsion,
                    })
                })
                .collect();
            let v = serde_json::json!({ "ring": table.ring.describe(), "rows": rows });
            println!("{}", serde_json::to_string_pretty(&v).expect("json renders"));
        }
    }
}

fn print_check(report: &QuasiPropernessReport, format: Format) -> Result<()> {
    match format {
        Format::Table => {
            println!("subject: {}", report.subject);
            for c1 in &report.condition1 {
                let verdicts: BTreeMap<i64, &'static str> = c1
                    .per_degree
                    .iter()
                    .map(|(&t, v)| (t, if v.is_iso() { "iso" } else { "FAIL" }))
                    .collect();
                let failing: Vec<String> = verdicts
                    .iter()
                    .filter(|(_, v)| **v == "FAIL")
                    .map(|(t, _)| t.to_string())
                    .collect();
                let line = if failing.is_empty() {
                    "pass".to_string()
                } else {
                    format!("FAIL at degrees {}", failing.join(", "))
                };
                println!("condition 1, tensor power {}: {line}", c1.tensor_power);
                for note in &c1.notes {
                    println!("  note: {note}");
                }
            }
            let c2_fail: Vec<String> = report
                .condition2
                .per_degree
                .iter()
                .filter(|(_, v)| !v.is_iso())
                .map(|(t, _)| t.to_string())
                .collect();
            if c2_fail.is_empty() {
                println!("condition 2: pass");
            } else {
                println!("condition 2: FAIL at degrees {}", c2_fail.join(", "));
            }
            for note in &report.condition2.notes {
                println!("  note: {note}");
            }
            println!(
                "verdict: {}",
                match (report.passed(), report.certifiable) {
                    (true, true) => "quasi-proper",
                    (true, false) => "quasi-proper at this truncation only",
                    (false, _) => "NOT quasi-proper",
                }
            );
        }
        Format::Json => println!("{}", serde_json::to_string_pretty(report)?),
    }
    Ok(())
}
