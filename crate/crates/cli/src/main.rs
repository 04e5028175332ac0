use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use sqfree_core::experiments::{self, format_real, round_sig, scan_csv, QscanOutcome};
use sqfree_core::{parse_modulus, Admissible, DensityEstimate, Error, Field, Limits, PolyRing};

mod verify;

#[derive(Parser)]
#[command(name = "sqfree", version, about = "Square-free values of polynomials at prime polynomials over F_q[t]")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Worker threads (defaults to one per core).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Cap on enumerated polynomials and on residues scanned modulo P^2.
    #[arg(long, global = true)]
    budget: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args, Clone)]
struct FieldArgs {
    /// Field size, a prime power up to 2^16.
    #[arg(long)]
    q: u64,
    /// Defining polynomial of F_q over F_p in the variable u, e.g. "u^2+u+1".
    #[arg(long)]
    modulus: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Number of primes of each degree up to n, or the primes of degree n.
    Primes {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        n: usize,
        /// List the primes of degree n instead of counting.
        #[arg(long)]
        list: bool,
    },
    /// Truncated Euler product with a certified interval.
    Density {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        f: String,
        /// Cutoff: primes of degree < M enter the product. Defaults to the
        /// smallest certifiable value.
        #[arg(long = "M")]
        m: Option<u32>,
    },
    /// Fraction of primes of degree n with f(P) square-free, for a range of n.
    Scan {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        f: String,
        #[arg(long = "n-min")]
        n_min: usize,
        #[arg(long = "n-max")]
        n_max: usize,
        #[arg(long = "M")]
        m: Option<u32>,
    },
    /// Exhaustive property checks.
    Verify {
        #[arg(long, value_enum)]
        suite: verify::Suite,
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        f: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long = "M")]
        m: Option<usize>,
        /// Modulus of the progressions for the weil suite.
        #[arg(long = "Q")]
        modulus_q: Option<String>,
        /// Constant in the weil bound.
        #[arg(long)]
        slack: Option<f64>,
    },
    /// The same expression over several fields at a fixed degree.
    Qscan {
        /// Comma-separated field sizes.
        #[arg(long, value_delimiter = ',', required = true)]
        q: Vec<u64>,
        #[arg(long)]
        f: String,
        #[arg(long)]
        n: usize,
    },
}

pub(crate) enum Failure {
    Core(Error),
    Property,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

pub(crate) type Outcome = Result<(), Failure>;

pub(crate) fn ring(field: &FieldArgs) -> Result<PolyRing, Error> {
    let f = match &field.modulus {
        None => Field::with_order(field.q)?,
        Some(text) => {
            let (p, m) = sqfree_core::field::split_prime_power(field.q)?;
            Field::new(p, m, Some(parse_modulus(p, text)?))?
        }
    };
    Ok(PolyRing::new(f))
}

pub(crate) fn admit(ring: &PolyRing, text: &str) -> Result<Admissible, Error> {
    ring.admit(&ring.parse_bipoly(text)?)
}

pub(crate) fn real(x: f64) -> Value {
    json!(round_sig(x))
}

pub(crate) fn big(x: u128) -> Value {
    u64::try_from(x).map(Value::from).unwrap_or_else(|_| Value::from(x.to_string()))
}

pub(crate) fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn density_json(ring: &PolyRing, d: &DensityEstimate) -> Value {
    json!({
        "truncated_value": real(d.truncated_value),
        "lower": real(d.lower),
        "upper": real(d.upper),
        "M": d.m,
        "B": big(d.b),
        "positive": d.positive,
        "culprit": d.culprit.as_ref().map(|p| ring.display(p.poly()).to_string()),
    })
}

fn run(cli: Cli) -> Outcome {
    let limits = cli.budget.map(Limits::uniform).unwrap_or_default();
    let format = cli.format;
    match cli.command {
        Command::Primes { field, n, list } => {
            let ring = ring(&field)?;
            if list {
                limits.check_enumeration(ring.monic_count(n)?)?;
                let primes: Vec<String> = ring.primes(n)?.map(|p| ring.display(p.poly()).to_string()).collect();
                match format {
                    Format::Csv => {
                        println!("prime");
                        primes.iter().for_each(|p| println!("{p}"));
                    }
                    Format::Json => print_json(&json!({ "q": field.q, "n": n, "primes": primes })),
                }
            } else {
                let counts = (1..=n).map(|d| Ok((d, ring.count_primes(d)?))).collect::<Result<Vec<_>, Error>>()?;
                match format {
                    Format::Csv => {
                        println!("n,count");
                        counts.iter().for_each(|(d, c)| println!("{d},{c}"));
                    }
                    Format::Json => {
                        let rows: Vec<Value> = counts.iter().map(|&(d, c)| json!({ "n": d, "count": big(c) })).collect();
                        print_json(&json!({ "q": field.q, "counts": rows }));
                    }
                }
            }
        }
        Command::Density { field, f, m } => {
            let ring = ring(&field)?;
            let f = admit(&ring, &f)?;
            let m = match m {
                Some(m) => m,
                None => ring.smallest_certifiable_cutoff(&f, 1)?,
            };
            let d = ring.truncated_density(&f, m, &limits)?;
            match format {
                Format::Csv => {
                    println!("truncated_value,lower,upper,M,B,positive,culprit");
                    println!(
                        "{},{},{},{},{},{},{}",
                        format_real(d.truncated_value),
                        format_real(d.lower),
                        format_real(d.upper),
                        d.m,
                        d.b,
                        d.positive,
                        d.culprit.as_ref().map(|p| ring.display(p.poly()).to_string()).unwrap_or_default()
                    );
                }
                Format::Json => print_json(&density_json(&ring, &d)),
            }
        }
        Command::Scan { field, f, n_min, n_max, m } => {
            let ring = ring(&field)?;
            let f = admit(&ring, &f)?;
            let m = match m {
                Some(m) => m,
                None => {
                    let base = experiments::default_scan_cutoff(ring.q(), n_max);
                    ring.smallest_certifiable_cutoff(&f, base)?
                }
            };
            let scan = ring.scan(&f, n_min, n_max, m, &limits)?;
            match format {
                Format::Csv => print!("{}", scan_csv(&scan.rows)),
                Format::Json => {
                    let rows: Vec<Value> = scan
                        .rows
                        .iter()
                        .map(|r| {
                            json!({
                                "n": r.n,
                                "primes": r.primes,
                                "hits": r.hits,
                                "fraction": real(r.fraction),
                                "c_trunc": real(r.c_trunc),
                                "c_lower": real(r.c_lower),
                                "c_upper": real(r.c_upper),
                                "deviation": real(r.deviation),
                                "log_ref": real(r.log_ref),
                            })
                        })
                        .collect();
                    print_json(&json!({ "density": density_json(&ring, &scan.density), "rows": rows }));
                }
            }
        }
        Command::Verify { suite, field, f, n, m, modulus_q, slack } => {
            let ring = ring(&field)?;
            let args = verify::SuiteArgs { f, n, m, modulus_q, slack };
            verify::run(suite, &ring, &args, &limits, format)?;
        }
        Command::Qscan { q, f, n } => {
            let rows = experiments::qscan(&f, &q, n, &limits)?;
            match format {
                Format::Csv => {
                    println!("q,n,primes,hits,fraction,status");
                    for r in &rows {
                        match &r.outcome {
                            QscanOutcome::Counted { primes, hits, fraction } => {
                                println!("{},{},{},{},{},ok", r.q, r.n, primes, hits, format_real(*fraction))
                            }
                            QscanOutcome::Skipped(why) => println!("{},{},,,,skipped: {}", r.q, r.n, why.replace(',', ";")),
                        }
                    }
                }
                Format::Json => {
                    let rows: Vec<Value> = rows
                        .iter()
                        .map(|r| match &r.outcome {
                            QscanOutcome::Counted { primes, hits, fraction } => json!({
                                "q": r.q, "n": r.n, "primes": primes, "hits": hits,
                                "fraction": real(*fraction), "status": "ok",
                            }),
                            QscanOutcome::Skipped(why) => json!({
                                "q": r.q, "n": r.n, "primes": null, "hits": null,
                                "fraction": null, "status": format!("skipped: {why}"),
                            }),
                        })
                        .collect();
                    print_json(&Value::Array(rows));
                }
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Property) => ExitCode::from(4),
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::BudgetExceeded { .. } | Error::Overflow(_) => 3,
                Error::Internal(_) => 1,
                _ => 2,
            })
        }
    }
}
