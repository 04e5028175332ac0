use clap::ValueEnum;
use serde_json::{json, Map, Value};

use sqfree_core::experiments::format_real;
use sqfree_core::{Error, Limits, Poly, PolyRing};

use crate::{admit, big, print_json, real, Failure, Format, Outcome};

/// Largest `q^d` for which the explicit-formula suite enumerates primes
/// instead of using Moebius inversion.
const EXPLICIT_FORMULA_ENUMERATION_MAX: u128 = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Hensel,
    ExplicitFormula,
    Weil,
    Frobenius,
    Sieve,
    Remainder,
}

pub struct SuiteArgs {
    pub f: Option<String>,
    pub n: Option<usize>,
    pub m: Option<usize>,
    pub modulus_q: Option<String>,
    pub slack: Option<f64>,
}

impl SuiteArgs {
    fn f(&self) -> Result<&str, Error> {
        self.f
            .as_deref()
            .ok_or_else(|| Error::InvalidArgument("this suite needs --f".into()))
    }
}

enum Cell {
    Int(u128),
    Real(f64),
    Text(String),
    Bool(bool),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Real(v) => format_real(*v),
            Cell::Text(s) => s.replace(',', ";"),
            Cell::Bool(b) => b.to_string(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => big(*v),
            Cell::Real(v) => real(*v),
            Cell::Text(s) => json!(s),
            Cell::Bool(b) => json!(b),
        }
    }
}

struct Table {
    columns: &'static [&'static str],
    rows: Vec<Vec<Cell>>,
}

impl Table {
    fn new(columns: &'static [&'static str]) -> Table {
        Table { columns, rows: Vec::new() }
    }

    fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// Prints the table; the last column of every row is its pass flag.
    fn finish(self, suite: Suite, format: Format) -> Outcome {
        let pass = self.rows.iter().all(|r| matches!(r.last(), Some(Cell::Bool(true))));
        match format {
            Format::Csv => {
                println!("{}", self.columns.join(","));
                for row in &self.rows {
                    println!("{}", row.iter().map(Cell::csv).collect::<Vec<_>>().join(","));
                }
            }
            Format::Json => {
                let rows: Vec<Value> = self
                    .rows
                    .iter()
                    .map(|row| {
                        let obj: Map<String, Value> =
                            self.columns.iter().zip(row).map(|(k, c)| (k.to_string(), c.json())).collect();
                        Value::Object(obj)
                    })
                    .collect();
                let name = suite.to_possible_value().expect("named").get_name().to_string();
                print_json(&json!({ "suite": name, "pass": pass, "rows": rows }));
            }
        }
        if pass {
            Ok(())
        } else {
            eprintln!("property check failed");
            Err(Failure::Property)
        }
    }
}

pub fn run(suite: Suite, ring: &PolyRing, args: &SuiteArgs, limits: &Limits, format: Format) -> Outcome {
    let table = match suite {
        Suite::Hensel => hensel(ring, args, limits)?,
        Suite::ExplicitFormula => explicit_formula(ring, args, limits)?,
        Suite::Weil => weil(ring, args, limits)?,
        Suite::Frobenius => frobenius(ring, args, limits)?,
        Suite::Sieve => sieve(ring, args, limits)?,
        Suite::Remainder => remainder(ring, args, limits)?,
    };
    table.finish(suite, format)
}

/// Exhaustive root counts modulo `P^2` against the count modulo `P` above
/// the critical degree, and the uniform bound everywhere.
fn hensel(ring: &PolyRing, args: &SuiteArgs, limits: &Limits) -> Result<Table, Error> {
    let f = admit(ring, args.f()?)?;
    let n = args.n.unwrap_or(5);
    let bound = ring.rho_bound(&f)?;
    let critical = f.critical_degree();
    let mut t = Table::new(&["prime", "degree", "roots_mod_p", "roots_mod_p2", "bound", "unramified", "pass"]);
    for d in 1..=n {
        for prime in ring.primes(d)? {
            let mod_p = ring.roots_mod_prime(&f, &prime)?;
            let (mod_p2, _) = ring.scan_prime_square(&f, &prime, limits)?;
            let unramified = d > critical;
            let pass = mod_p2 <= bound && (!unramified || mod_p2 == mod_p);
            t.push(vec![
                Cell::Text(ring.display(prime.poly()).to_string()),
                Cell::Int(d as u128),
                Cell::Int(mod_p),
                Cell::Int(mod_p2),
                Cell::Int(bound),
                Cell::Bool(unramified),
                Cell::Bool(pass),
            ]);
        }
    }
    Ok(t)
}

/// `sum_{d | n} d pi_q(d) = q^n`.
fn explicit_formula(ring: &PolyRing, args: &SuiteArgs, limits: &Limits) -> Result<Table, Error> {
    let n = args.n.unwrap_or(12);
    let mut counts = Vec::with_capacity(n);
    let mut sources = Vec::with_capacity(n);
    for d in 1..=n {
        let size = ring.monic_count(d)?;
        if size <= EXPLICIT_FORMULA_ENUMERATION_MAX && size <= limits.enumeration as u128 {
            counts.push(ring.primes(d)?.count() as u128);
            sources.push("enumeration");
        } else {
            counts.push(ring.count_primes(d)?);
            sources.push("mobius");
        }
    }
    let mut t = Table::new(&["n", "pi", "source", "sum", "q_pow_n", "pass"]);
    for k in 1..=n {
        let sum = (1..=k)
            .filter(|d| k % d == 0)
            .try_fold(0u128, |acc, d| acc.checked_add((d as u128).checked_mul(counts[d - 1])?))
            .ok_or(Error::Overflow("explicit formula sum"))?;
        let total = ring.monic_count(k)?;
        t.push(vec![
            Cell::Int(k as u128),
            Cell::Int(counts[k - 1]),
            Cell::Text(sources[k - 1].into()),
            Cell::Int(sum),
            Cell::Int(total),
            Cell::Bool(sum == total),
        ]);
    }
    Ok(t)
}

fn weil(ring: &PolyRing, args: &SuiteArgs, limits: &Limits) -> Result<Table, Error> {
    let modulus = match &args.modulus_q {
        Some(text) => ring.parse(text)?,
        None => Poly::t(),
    };
    let n = args.n.unwrap_or(12);
    let mut t = Table::new(&["n", "main_term", "max_deviation", "bound", "pass"]);
    for k in 1..=n {
        let w = ring.weil_check(k, &modulus, args.slack, limits)?;
        t.push(vec![
            Cell::Int(k as u128),
            Cell::Real(w.main_term),
            Cell::Real(w.max_deviation),
            Cell::Real(w.bound),
            Cell::Bool(w.pass),
        ]);
    }
    Ok(t)
}

/// Roundtrip, degree bounds and monicity over every monic polynomial of
/// each degree up to `n`, and one non-monic multiple of each.
fn frobenius(ring: &PolyRing, args: &SuiteArgs, limits: &Limits) -> Result<Table, Error> {
    let n = args.n.unwrap_or(8);
    let p = ring.field().p() as usize;
    let scalar = ring.field().generator().unwrap_or_else(|| ring.field().from_int(1));
    let mut t = Table::new(&["degree", "checked", "failures", "pass"]);
    for d in 0..=n {
        limits.check_enumeration(ring.monic_count(d)?)?;
        let mut checked = 0u128;
        let mut failures = 0u128;
        for monic in ring.monics(d) {
            for a in [monic.clone(), ring.scale(&monic, scalar)] {
                checked += 1;
                let parts = ring.frobenius_decompose(&a);
                let mut ok = ring.frobenius_recompose(&parts)? == a;
                for (j, part) in parts.iter().enumerate() {
                    ok &= match part.degree() {
                        None => true,
                        Some(e) => j <= d && e <= (d - j) / p,
                    };
                }
                if a.is_monic() {
                    let b = &parts[d % p];
                    ok &= b.is_monic() && b.degree() == Some(d / p);
                }
                failures += u128::from(!ok);
            }
        }
        t.push(vec![
            Cell::Int(d as u128),
            Cell::Int(checked),
            Cell::Int(failures),
            Cell::Bool(failures == 0),
        ]);
    }
    Ok(t)
}

fn sieve(ring: &PolyRing, args: &SuiteArgs, limits: &Limits) -> Result<Table, Error> {
    let f = admit(ring, args.f()?)?;
    let n = args.n.unwrap_or(10);
    let m = args.m.unwrap_or(2);
    let c = ring.sieve_split_counts(&f, n, m, limits)?;
    let mut t = Table::new(&["n", "M", "primes", "hits", "p_prime", "p_doubleprime", "pass"]);
    t.push(vec![
        Cell::Int(n as u128),
        Cell::Int(m as u128),
        Cell::Int(c.primes_total.into()),
        Cell::Int(c.squarefree_hits.into()),
        Cell::Int(c.p_prime_count.unwrap_or(0).into()),
        Cell::Int(c.p_doubleprime_count.unwrap_or(0).into()),
        Cell::Bool(c.sandwich_holds() == Some(true)),
    ]);
    Ok(t)
}

fn remainder(ring: &PolyRing, args: &SuiteArgs, limits: &Limits) -> Result<Table, Error> {
    let f = admit(ring, args.f()?)?;
    let n = args.n.unwrap_or(10);
    let m = args.m.unwrap_or(2);
    let c = ring.remainder_counts(&f, n, m, limits)?;
    let consistent = c.bad_middle + c.bad_large >= c.not_squarefree - c.small_only;
    let mut t = Table::new(&[
        "n",
        "M",
        "monic",
        "not_squarefree",
        "small_only",
        "bad_middle",
        "bad_large",
        "middle_ratio",
        "large_ratio",
        "pass",
    ]);
    t.push(vec![
        Cell::Int(n as u128),
        Cell::Int(m as u128),
        Cell::Int(c.monic_total.into()),
        Cell::Int(c.not_squarefree.into()),
        Cell::Int(c.small_only.into()),
        Cell::Int(c.bad_middle.into()),
        Cell::Int(c.bad_large.into()),
        Cell::Real(c.middle_ratio()),
        Cell::Real(c.large_ratio()),
        Cell::Bool(consistent),
    ]);
    Ok(t)
}
