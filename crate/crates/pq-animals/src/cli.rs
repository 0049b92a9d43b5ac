//! Command-line front end.
//!
//! Subcommands: `pmin` for single queries, `table` for ranges, `words` for
//! word and continued-fraction dumps, `verify` for the cross-validation
//! sweeps, `render` for SVG output. Exit codes: 0 success, 1 verification or
//! runtime failure, 2 usage error.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num::bigint::BigInt;
use num::ToPrimitive;
use serde::Serialize;

use crate::context::{TessClass, TessContext};
use crate::error::Result;
use crate::perimeter;
use crate::render;
use crate::spiral::SpiralAnimal;
use crate::verify::{self, Scope};
use crate::words;

#[derive(Parser)]
#[command(
    name = "pq-animals",
    version,
    about = "Exact minimal perimeters of {p,q}-tessellation animals"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Minimal perimeter of an n-tile animal
    Pmin(PminArgs),
    /// Stream a range of tile counts as CSV or JSON records
    Table(TableArgs),
    /// Print boundary words, Sturmian prefixes or continued fractions
    Words(WordsArgs),
    /// Run the cross-validation sweeps
    Verify(VerifyArgs),
    /// Render a spiral animal as an SVG file
    Render(RenderArgs),
}

#[derive(Args)]
struct PminArgs {
    p: u32,
    q: u32,
    n: BigInt,
    /// Recompute via the spiral simulator and the word oracle and compare
    #[arg(long)]
    verify: bool,
    #[arg(long, conflicts_with = "csv")]
    json: bool,
    #[arg(long)]
    csv: bool,
}

#[derive(Args)]
struct TableArgs {
    p: u32,
    q: u32,
    n_from: u64,
    n_to: u64,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct WordsArgs {
    p: u32,
    q: u32,
    /// Which word to print
    #[arg(value_enum)]
    kind: WordKind,
    /// Layer index k (for d/u/w) or prefix length (for sturmian); unused for cf
    k_or_n: Option<u64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum WordKind {
    /// Boundary degree word d_k
    D,
    /// Recurrence word U_k
    U,
    /// Recurrence word W_k
    W,
    /// Sturmian word prefix of beta
    Sturmian,
    /// Continued fraction of beta
    Cf,
}

#[derive(Args)]
struct VerifyArgs {
    /// Reduced caps for a fast smoke run
    #[arg(long)]
    quick: bool,
    /// Restrict to specific signatures, e.g. --pq 4,5 (repeatable)
    #[arg(long, value_name = "P,Q")]
    pq: Vec<String>,
    /// Cap the per-signature sweep range
    #[arg(long)]
    nmax: Option<u64>,
}

#[derive(Args)]
struct RenderArgs {
    p: u32,
    q: u32,
    n: u64,
    out: std::path::PathBuf,
}

/// One output row; `epsilon` is a 20-significant-digit decimal for human
/// consumption only, every internal comparison is exact.
#[derive(Serialize)]
struct OutputRecord {
    p: u32,
    q: u32,
    n: String,
    p_min: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    k: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    m: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    epsilon: Option<String>,
    source: &'static str,
}

const EPSILON_DIGITS: usize = 20;

fn record_for(ctx: &TessContext, n: &BigInt, source: &'static str) -> Result<OutputRecord> {
    let p_min = perimeter::pmin(ctx, n)?;
    let threshold = BigInt::from(ctx.p()) * BigInt::from(ctx.q() - 2);
    let breakdown = if ctx.class() == TessClass::Hyperbolic && n > &threshold {
        Some(perimeter::m_closed(ctx, n)?)
    } else {
        None
    };
    Ok(OutputRecord {
        p: ctx.p(),
        q: ctx.q(),
        n: n.to_string(),
        p_min: p_min.to_string(),
        k: breakdown.as_ref().map(|b| b.k),
        m: breakdown.as_ref().map(|b| b.m.to_string()),
        epsilon: breakdown
            .as_ref()
            .map(|b| b.epsilon.to_decimal(EPSILON_DIGITS)),
        source,
    })
}

fn csv_header() -> &'static str {
    "p,q,n,pmin,k,m,epsilon"
}

fn csv_row(r: &OutputRecord) -> String {
    format!(
        "{},{},{},{},{},{},{}",
        r.p,
        r.q,
        r.n,
        r.p_min,
        r.k.map_or(String::new(), |k| k.to_string()),
        r.m.clone().unwrap_or_default(),
        r.epsilon.clone().unwrap_or_default()
    )
}

fn new_context(p: u32, q: u32) -> std::result::Result<TessContext, String> {
    let ctx = TessContext::new(p, q).map_err(|e| e.to_string())?;
    if ctx.class() == TessClass::Spherical {
        return Err(format!(
            "signature ({p},{q}) is spherical; only euclidean and hyperbolic are supported"
        ));
    }
    Ok(ctx)
}

fn usage_error(msg: &str) -> i32 {
    eprintln!("error: {msg}");
    2
}

fn run_pmin(args: PminArgs) -> i32 {
    let ctx = match new_context(args.p, args.q) {
        Ok(c) => c,
        Err(e) => return usage_error(&e),
    };
    if args.n < BigInt::from(1) {
        return usage_error("n must be at least 1");
    }
    let record = match record_for(&ctx, &args.n, "closed") {
        Ok(r) => r,
        Err(e) => return usage_error(&e.to_string()),
    };
    if args.verify {
        let n_u64 = match args.n.to_u64() {
            Some(v) => v,
            None => return usage_error("--verify needs n small enough to simulate"),
        };
        let mut animal = match SpiralAnimal::new(&ctx) {
            Ok(a) => a,
            Err(e) => return usage_error(&e.to_string()),
        };
        if let Err(e) = animal.grow_to(n_u64) {
            eprintln!("error: {e}");
            return 1;
        }
        let sim = BigInt::from(animal.perimeter());
        let closed: BigInt = record.p_min.parse().expect("own record parses");
        let mut sources = vec![("closed", closed.clone()), ("simulator", sim.clone())];
        let threshold = BigInt::from(ctx.p()) * BigInt::from(ctx.q() - 2);
        if ctx.class() == TessClass::Hyperbolic && args.n > threshold {
            match (perimeter::m_oracle(&ctx, &args.n), ctx.layer_index(&args.n)) {
                (Ok(m), Ok(k)) => {
                    let stats = ctx.sequences(k).expect("layer stats");
                    let layers = BigInt::from(ctx.p() - 2) * (&args.n - &stats.tiles)
                        + &stats.perimeter
                        - BigInt::from(2) * m;
                    sources.push(("layers", layers));
                }
                (Err(e), _) | (_, Err(e)) => {
                    eprintln!("error: {e}");
                    return 1;
                }
            }
        }
        if sources.iter().any(|(_, v)| v != &closed) {
            eprintln!("verification mismatch:");
            for (name, v) in &sources {
                eprintln!("  {name}: {v}");
            }
            return 1;
        }
        for (name, _) in &sources[1..] {
            let rec = OutputRecord {
                source: name,
                ..match record_for(&ctx, &args.n, name) {
                    Ok(r) => r,
                    Err(e) => return usage_error(&e.to_string()),
                }
            };
            if args.json {
                println!("{}", serde_json::to_string(&rec).unwrap());
            }
        }
    }
    if args.json {
        println!("{}", serde_json::to_string(&record).unwrap());
    } else if args.csv {
        println!("{}", csv_header());
        println!("{}", csv_row(&record));
    } else {
        let extra = match (&record.k, &record.m) {
            (Some(k), Some(m)) => format!("  [k={k} m={m}]"),
            _ => String::new(),
        };
        println!(
            "P_min({},{}; n={}) = {}{extra}",
            record.p, record.q, record.n, record.p_min
        );
        if let Some(eps) = &record.epsilon {
            println!("epsilon = {eps}  (display only)");
        }
    }
    0
}

fn run_table(args: TableArgs) -> i32 {
    if args.n_from > args.n_to {
        return usage_error("empty range: n_from must be <= n_to");
    }
    if args.n_from == 0 {
        return usage_error("n must be at least 1");
    }
    let ctx = match new_context(args.p, args.q) {
        Ok(c) => c,
        Err(e) => return usage_error(&e),
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    if args.format == Format::Csv {
        writeln!(out, "{}", csv_header()).unwrap();
    }
    for n in args.n_from..=args.n_to {
        let record = match record_for(&ctx, &BigInt::from(n), "closed") {
            Ok(r) => r,
            Err(e) => {
                eprintln!("error: {e}");
                return 1;
            }
        };
        match args.format {
            Format::Csv => writeln!(out, "{}", csv_row(&record)).unwrap(),
            Format::Json => writeln!(out, "{}", serde_json::to_string(&record).unwrap()).unwrap(),
        }
    }
    0
}

fn run_words(args: WordsArgs) -> i32 {
    let ctx = match new_context(args.p, args.q) {
        Ok(c) => c,
        Err(e) => return usage_error(&e),
    };
    if ctx.class() != TessClass::Hyperbolic {
        return usage_error("word machinery is defined for hyperbolic signatures only");
    }
    let index = args.k_or_n.unwrap_or(match args.kind {
        WordKind::Sturmian => 20,
        _ => 2,
    });
    let result: Result<String> = (|| match args.kind {
        WordKind::D => Ok(words::substitute_degree_word(&ctx, index as u32)?.to_string()),
        WordKind::U => Ok(words::uw_words(&ctx, index as u32)?.0.to_string()),
        WordKind::W => Ok(words::uw_words(&ctx, index as u32)?.1.to_string()),
        WordKind::Sturmian => Ok(words::sturmian_prefix(&ctx, index as usize)?.to_string()),
        WordKind::Cf => Ok(words::continued_fraction_closed(&ctx)?.to_string()),
    })();
    match result {
        Ok(text) => {
            println!("{text}");
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn run_verify(args: VerifyArgs) -> i32 {
    let mut scope = if args.quick {
        Scope::quick()
    } else {
        Scope::default()
    };
    if !args.pq.is_empty() {
        let mut signatures = Vec::new();
        for spec in &args.pq {
            let parts: Vec<_> = spec.split(',').collect();
            let parsed = (|| {
                if parts.len() != 2 {
                    return None;
                }
                Some((parts[0].trim().parse().ok()?, parts[1].trim().parse().ok()?))
            })();
            let (p, q): (u32, u32) = match parsed {
                Some(pair) => pair,
                None => return usage_error(&format!("cannot parse --pq '{spec}' as P,Q")),
            };
            match new_context(p, q) {
                Ok(ctx) if ctx.class() == TessClass::Hyperbolic => signatures.push((p, q)),
                Ok(_) => {
                    return usage_error(&format!(
                        "--pq {p},{q} is not hyperbolic; verification sweeps need (p-2)(q-2) > 4"
                    ))
                }
                Err(e) => return usage_error(&e),
            }
        }
        scope.signatures = signatures;
    }
    if let Some(nmax) = args.nmax {
        scope.n_cap = nmax;
    }
    match verify::run_all(&scope) {
        Ok(reports) => {
            let mut ok = true;
            for r in &reports {
                println!(
                    "{:<28} {}  ({})",
                    r.name,
                    if r.passed { "PASS" } else { "FAIL" },
                    r.detail
                );
                ok &= r.passed;
            }
            if ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn run_render(args: RenderArgs) -> i32 {
    let ctx = match new_context(args.p, args.q) {
        Ok(c) => c,
        Err(e) => return usage_error(&e),
    };
    if args.n == 0 {
        return usage_error("n must be at least 1");
    }
    let mut animal = match SpiralAnimal::new(&ctx) {
        Ok(a) => a,
        Err(e) => return usage_error(&e.to_string()),
    };
    if let Err(e) = animal.grow_to(args.n) {
        eprintln!("error: {e}");
        return 1;
    }
    match render::render_svg(&animal).and_then(|svg| {
        std::fs::write(&args.out, svg)?;
        Ok(())
    }) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

/// Parse argv and dispatch; returns the process exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    match cli.command {
        Command::Pmin(args) => run_pmin(args),
        Command::Table(args) => run_table(args),
        Command::Words(args) => run_words(args),
        Command::Verify(args) => run_verify(args),
        Command::Render(args) => run_render(args),
    }
}
