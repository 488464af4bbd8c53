//! `fatpoints`: resolutions of fat point ideals at up to eight general
//! points of the plane.
//!
//! Exit codes: 0 success, 1 usage error, 2 internal invariant violated,
//! 3 oracle mismatch.

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use fatpoints::cohomology::cohomology;
use fatpoints::lattice::{exceptional_curves, nearly_uniform_nef_generators, square_zero_curves, CurveKind};
use fatpoints::oracle::{compare, monotone_vectors, ExactEngine, OracleInstance, DEFAULT_PRIME};
use fatpoints::parse::{parse_batch, parse_divisor_class, parse_multiplicities};
use fatpoints::resolution::hilbert_function;
use fatpoints::{mu_rank, resolution, DivisorClass, Error, FatPointScheme, Triple};

#[derive(Parser, Debug)]
#[command(name = "fatpoints", version, about = "Hilbert functions and resolutions of fat points in the plane")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Minimal free resolution of the ideal of m1 p1 + ... + mk pk.
    Resolve {
        /// Comma separated multiplicities, at most eight.
        #[arg(required_unless_present = "batch", conflicts_with = "batch")]
        mults: Option<String>,
        /// File with one multiplicity list per line; prints JSON lines.
        #[arg(long)]
        batch: Option<PathBuf>,
    },
    /// Hilbert function of the ideal over a range of degrees.
    Hilbert {
        mults: String,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        from: i64,
        #[arg(long, allow_negative_numbers = true)]
        to: i64,
    },
    /// h0, h1, h2 of dL - m1 E1 - ... - m8 E8.
    H0 {
        #[arg(required = true, num_args = 1..=9, allow_negative_numbers = true)]
        class: Vec<String>,
    },
    /// Kernel and cokernel of multiplication by linear forms on dL - sum mi Ei.
    Mu {
        #[arg(required = true, num_args = 1..=9, allow_negative_numbers = true)]
        class: Vec<String>,
    },
    /// Tables of exceptional and square-zero curve classes.
    Curves {
        #[arg(long, value_enum)]
        kind: KindArg,
    },
    /// Generators of the nearly uniform nef cone.
    Cone {
        /// Print the generators.
        #[arg(long)]
        list: bool,
        /// Decompose `d a b`, meaning dL - a(E1 + ... + E7) - bE8.
        #[arg(long, num_args = 3, value_names = ["D", "A", "B"], allow_negative_numbers = true)]
        decompose: Option<Vec<i64>>,
    },
    /// Compare the engine with brute-force linear algebra over a prime field.
    OracleCheck {
        /// Check every monotone vector with entries up to this bound.
        #[arg(long, default_value_t = 2)]
        max_mult: i64,
        /// Largest degree compared; defaults to the end of each scheme's window.
        #[arg(long)]
        tmax: Option<i64>,
        #[arg(long, default_value_t = DEFAULT_PRIME)]
        prime: u64,
        /// Point seeds; may be repeated.
        #[arg(long, default_values_t = [1u64, 2])]
        seed: Vec<u64>,
        /// Check only this multiplicity list.
        #[arg(long)]
        mults: Option<String>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Exceptional,
    SquareZero,
}

#[derive(Debug)]
enum Failure {
    Engine(Error),
    Mismatch(usize),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Engine(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

type Outcome = std::result::Result<(), Failure>;

// C(24, 8) = 735471 schemes at the bound
const MAX_SWEEP_MULT: i64 = 16;

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("engine types serialize")
}

fn class_arg(tokens: &[String]) -> Result<DivisorClass, Error> {
    parse_divisor_class(&tokens.join(" "))
}

fn scheme_arg(text: &str) -> Result<FatPointScheme, Error> {
    FatPointScheme::new(&parse_multiplicities(text)?)
}

fn mults_text(m: &[i64]) -> String {
    m.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn degree_map(map: &std::collections::BTreeMap<i64, u64>) -> String {
    if map.is_empty() {
        return "none".into();
    }
    map.iter().map(|(t, n)| format!("{n}@{t}")).collect::<Vec<_>>().join(" ")
}

fn resolve(out: &mut impl Write, format: Format, mults: Option<String>, batch: Option<PathBuf>) -> Outcome {
    if let Some(path) = batch {
        let text =
            std::fs::read_to_string(&path).map_err(|e| Error::Usage(format!("cannot read {}: {e}", path.display())))?;
        let lines = parse_batch(&text)?;
        let results: Vec<Result<String, Error>> = lines
            .par_iter()
            .map(|(line, m)| {
                let scheme = FatPointScheme::new(m).map_err(|e| Error::Usage(format!("line {line}: {e}")))?;
                Ok(json(&resolution(&scheme)?))
            })
            .collect();
        for r in results {
            writeln!(out, "{}", r?)?;
        }
        return Ok(());
    }
    let scheme = scheme_arg(mults.as_deref().unwrap_or_default())?;
    let res = resolution(&scheme)?;
    match format {
        Format::Json => writeln!(out, "{}", json(&res))?,
        Format::Text => {
            writeln!(out, "mults {}", mults_text(&res.mults))?;
            writeln!(out, "alpha {}", res.alpha)?;
            writeln!(out, "generators {}", degree_map(&res.generators))?;
            writeln!(out, "syzygies {}", degree_map(&res.syzygies))?;
            for (t, h) in &res.hilbert {
                writeln!(out, "h({t}) = {h}")?;
            }
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct HilbertRow {
    t: i64,
    h: u64,
}

fn hilbert(out: &mut impl Write, format: Format, mults: &str, from: i64, to: i64) -> Outcome {
    let scheme = scheme_arg(mults)?;
    if from > to {
        return Err(Error::Usage(format!("--from {from} exceeds --to {to}")).into());
    }
    hilbert_function(&scheme, to)?;
    let rows = (from..=to)
        .map(|t| Ok(HilbertRow { t, h: hilbert_function(&scheme, t)? }))
        .collect::<Result<Vec<_>, Error>>()?;
    match format {
        Format::Json => writeln!(out, "{}", json(&rows))?,
        Format::Text => {
            for r in rows {
                writeln!(out, "{} {}", r.t, r.h)?;
            }
        }
    }
    Ok(())
}

fn h0(out: &mut impl Write, format: Format, class: &[String]) -> Outcome {
    let class = class_arg(class)?;
    let c = cohomology(&class)?;
    match format {
        Format::Json => writeln!(out, "{}", json(&c))?,
        Format::Text => {
            writeln!(out, "class {class}")?;
            writeln!(out, "h0 {}\nh1 {}\nh2 {}\nchi {}", c.h0, c.h1, c.h2, c.chi)?;
        }
    }
    Ok(())
}

fn mu(out: &mut impl Write, format: Format, class: &[String]) -> Outcome {
    let report = mu_rank(&class_arg(class)?)?;
    match format {
        Format::Json => writeln!(out, "{}", json(&report))?,
        Format::Text => {
            writeln!(out, "class {}", report.class)?;
            writeln!(out, "ker {}\ncok {}\nrank {}", report.ker, report.cok, report.rank())?;
            for step in &report.trace {
                let case = json(&step.case);
                writeln!(
                    out,
                    "  {}  {case}  ker {} cok {} h0 {} h0(F+L) {}",
                    step.class, step.ker, step.cok, step.h0, step.h0_next
                )?;
            }
        }
    }
    Ok(())
}

fn curves(out: &mut impl Write, format: Format, kind: KindArg) -> Outcome {
    let (table, kind) = match kind {
        KindArg::Exceptional => (exceptional_curves(), CurveKind::Exceptional),
        KindArg::SquareZero => (square_zero_curves(), CurveKind::SquareZero),
    };
    match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Table<'a> {
                kind: CurveKind,
                count: usize,
                curves: &'a [fatpoints::CurveClass],
            }
            writeln!(out, "{}", json(&Table { kind, count: table.len(), curves: table }))?;
        }
        Format::Text => {
            for c in table {
                writeln!(out, "{}  lambda {} Lambda {}", c.class, c.reduction_threshold, c.max_rank_threshold)?;
            }
            writeln!(out, "count {}", table.len())?;
        }
    }
    Ok(())
}

fn cone(out: &mut impl Write, format: Format, list: bool, decompose: Option<Vec<i64>>) -> Outcome {
    if !list && decompose.is_none() {
        return Err(Error::Usage("cone needs --list or --decompose".into()).into());
    }
    let gens = nearly_uniform_nef_generators();
    if list {
        match format {
            Format::Json => writeln!(out, "{}", json(gens))?,
            Format::Text => {
                for g in gens {
                    writeln!(out, "{g}  {}", g.to_class())?;
                }
            }
        }
    }
    if let Some(v) = decompose {
        let t = Triple::new(v[0], v[1], v[2]);
        let coeffs = t.decompose();
        match format {
            Format::Json => {
                #[derive(Serialize)]
                struct Decomposition {
                    triple: Triple,
                    nef: bool,
                    coefficients: Option<[u64; 7]>,
                }
                writeln!(out, "{}", json(&Decomposition { triple: t, nef: t.in_nef_cone(), coefficients: coeffs }))?;
            }
            Format::Text => match coeffs {
                Some(c) => {
                    let terms: Vec<String> =
                        gens.iter().zip(c).filter(|(_, k)| *k > 0).map(|(g, k)| format!("{k}*{g}")).collect();
                    let terms = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
                    writeln!(out, "{t} = {terms}")?;
                }
                None => writeln!(out, "{t} is not in the cone")?,
            },
        }
    }
    Ok(())
}

fn oracle_check(
    out: &mut impl Write,
    max_mult: i64,
    tmax: Option<i64>,
    prime: u64,
    seeds: &[u64],
    mults: Option<String>,
) -> Outcome {
    let schemes: Vec<FatPointScheme> = match mults {
        Some(text) => vec![scheme_arg(&text)?],
        None => {
            if !(0..=MAX_SWEEP_MULT).contains(&max_mult) {
                return Err(Error::Usage(format!("--max-mult must be between 0 and {MAX_SWEEP_MULT}")).into());
            }
            monotone_vectors(max_mult).iter().map(|m| FatPointScheme::new(m)).collect::<Result<_, _>>()?
        }
    };
    let instances = seeds.iter().map(|&s| OracleInstance::new(prime, s)).collect::<Result<Vec<_>, _>>()?;
    let jobs: Vec<(&FatPointScheme, &OracleInstance)> =
        schemes.iter().flat_map(|z| instances.iter().map(move |i| (z, i))).collect();
    let reports = jobs
        .par_iter()
        .map(|(z, inst)| {
            let t_end = match tmax {
                Some(t) => t,
                None => resolution(z)?.window_end,
            };
            compare(inst, z, t_end, &ExactEngine)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut mismatches = 0;
    for report in &reports {
        for row in &report.rows {
            writeln!(out, "{}", json(row))?;
        }
        mismatches += usize::from(!report.success());
    }
    if mismatches > 0 {
        return Err(Failure::Mismatch(mismatches));
    }
    Ok(())
}

fn run(cli: Cli) -> Outcome {
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let format = cli.format;
    match cli.command {
        Command::Resolve { mults, batch } => resolve(&mut out, format, mults, batch)?,
        Command::Hilbert { mults, from, to } => hilbert(&mut out, format, &mults, from, to)?,
        Command::H0 { class } => h0(&mut out, format, &class)?,
        Command::Mu { class } => mu(&mut out, format, &class)?,
        Command::Curves { kind } => curves(&mut out, format, kind)?,
        Command::Cone { list, decompose } => cone(&mut out, format, list, decompose)?,
        Command::OracleCheck { max_mult, tmax, prime, seed, mults } => {
            oracle_check(&mut out, max_mult, tmax, prime, &seed, mults)?
        }
    }
    out.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Engine(e @ Error::Usage(_))) => {
            eprintln!("fatpoints: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Engine(e @ Error::Invariant(_))) => {
            eprintln!("fatpoints: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Mismatch(n)) => {
            eprintln!("fatpoints: oracle disagreed with the engine on {n} scheme(s)");
            ExitCode::from(3)
        }
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(Failure::Io(e)) => {
            eprintln!("fatpoints: {e}");
            ExitCode::from(1)
        }
    }
}
