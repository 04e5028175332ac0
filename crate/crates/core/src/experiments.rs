//! Exhaustive counts over primes and monic polynomials of a fixed degree.
//!
//! Work is split into fixed index ranges of [`ENUMERATION_CHUNK`]
//! polynomials and the per-range integer tallies are summed, so results do
//! not depend on the number of threads.

use std::fmt::Write as _;
use std::ops::Add;

use rayon::prelude::*;

use crate::bivariate::Admissible;
use crate::config::{default_weil_slack, Limits, ENUMERATION_CHUNK, REPORT_SIGNIFICANT_DIGITS};
use crate::density::DensityEstimate;
use crate::field::Field;
use crate::polyring::{Poly, PolyRing};
use crate::{Error, Result};

/// Counts over `pi_q(n)` (and, for the remainder sets, over all monic
/// polynomials of degree `n`). Fields a given operation does not compute
/// are `None`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SieveCounts {
    pub n: usize,
    pub m: Option<usize>,
    pub primes_total: u64,
    pub squarefree_hits: u64,
    /// Primes `a` with no `P^2 | f(a)` for `deg P < m`.
    pub p_prime_count: Option<u64>,
    /// Primes `a` with some `P^2 | f(a)` for `deg P >= m`.
    pub p_doubleprime_count: Option<u64>,
    pub bad_middle: Option<u64>,
    pub bad_large: Option<u64>,
}

impl SieveCounts {
    pub fn fraction(&self) -> f64 {
        if self.primes_total == 0 {
            0.0
        } else {
            self.squarefree_hits as f64 / self.primes_total as f64
        }
    }

    /// `|P'| - |P''| <= |P| <= |P'|`, when both sides were computed.
    pub fn sandwich_holds(&self) -> Option<bool> {
        let (pp, ppp) = (self.p_prime_count?, self.p_doubleprime_count?);
        let hits = self.squarefree_hits;
        Some(pp.saturating_sub(ppp) <= hits && hits <= pp)
    }
}

/// Remainder sets over all monic `a` of degree `n`.
#[derive(Clone, Debug, PartialEq)]
pub struct RemainderCounts {
    pub n: usize,
    pub m: usize,
    pub monic_total: u64,
    /// `a` with `f(a)` not square-free.
    pub not_squarefree: u64,
    /// `a` whose square prime divisors of `f(a)` all have degree `< m`
    /// (and there is at least one).
    pub small_only: u64,
    /// Some `P^2 | f(a)` with `m <= deg P <= n/2`.
    pub bad_middle: u64,
    /// Some `P^2 | f(a)` with `deg P > n/2`.
    pub bad_large: u64,
    /// `q^n / (m q^m)`.
    pub middle_scale: f64,
    /// `q^(n (p-1) / p)`.
    pub large_scale: f64,
}

impl RemainderCounts {
    pub fn middle_ratio(&self) -> f64 {
        self.bad_middle as f64 / self.middle_scale
    }

    pub fn large_ratio(&self) -> f64 {
        self.bad_large as f64 / self.large_scale
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct WeilReport {
    pub n: usize,
    /// `q^n / (n phi(Q))`.
    pub main_term: f64,
    pub max_deviation: f64,
    /// `slack * deg Q * q^(n/2) / n`.
    pub bound: f64,
    pub slack: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanRow {
    pub n: usize,
    pub primes: u64,
    pub hits: u64,
    pub fraction: f64,
    pub c_trunc: f64,
    pub c_lower: f64,
    pub c_upper: f64,
    /// `|fraction - c_trunc|`.
    pub deviation: f64,
    /// `1 / log_q n`.
    pub log_ref: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Scan {
    pub density: DensityEstimate,
    pub rows: Vec<ScanRow>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum QscanOutcome {
    Counted { primes: u64, hits: u64, fraction: f64 },
    Skipped(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct QscanRow {
    pub q: u64,
    pub n: usize,
    pub outcome: QscanOutcome,
}

#[derive(Clone, Copy, Debug, Default)]
struct Tally {
    visited: u64,
    hits: u64,
    p_prime: u64,
    p_doubleprime: u64,
    not_squarefree: u64,
    small_only: u64,
    bad_middle: u64,
    bad_large: u64,
}

impl Add for Tally {
    type Output = Tally;

    fn add(self, o: Tally) -> Tally {
        Tally {
            visited: self.visited + o.visited,
            hits: self.hits + o.hits,
            p_prime: self.p_prime + o.p_prime,
            p_doubleprime: self.p_doubleprime + o.p_doubleprime,
            not_squarefree: self.not_squarefree + o.not_squarefree,
            small_only: self.small_only + o.small_only,
            bad_middle: self.bad_middle + o.bad_middle,
            bad_large: self.bad_large + o.bad_large,
        }
    }
}

impl PolyRing {
    /// Visits every monic polynomial of degree `n` (only the primes when
    /// `primes_only`), summing the tallies `visit` returns.
    fn tally<F>(&self, n: usize, primes_only: bool, limits: &Limits, visit: F) -> Result<Tally>
    where
        F: Fn(&Poly, &mut Tally) -> Result<()> + Sync,
    {
        if n == 0 {
            return Err(Error::DegreeTooSmall { min: 1, got: 0 });
        }
        let count = self.monic_count(n)?;
        limits.check_enumeration(count)?;
        let chunk = ENUMERATION_CHUNK as u128;
        let chunks = count.div_ceil(chunk) as u64;
        (0..chunks)
            .into_par_iter()
            .map(|c| {
                let start = c as u128 * chunk;
                let mut acc = Tally::default();
                for a in self.monic_range(n, start..start + chunk) {
                    if primes_only && !self.is_irreducible(&a)? {
                        continue;
                    }
                    acc.visited += 1;
                    visit(&a, &mut acc)?;
                }
                Ok(acc)
            })
            .try_reduce(Tally::default, |a, b| Ok(a + b))
    }

    /// `|pi_q(n)|` and the number of primes `a` of degree `n` with `f(a)`
    /// square-free.
    pub fn empirical_density(&self, f: &Admissible, n: usize, limits: &Limits) -> Result<SieveCounts> {
        let t = self.tally(n, true, limits, |a, acc| {
            let v = self.eval(f.f(), a);
            if !v.is_zero() && self.is_squarefree(&v)? {
                acc.hits += 1;
            }
            Ok(())
        })?;
        Ok(SieveCounts { n, primes_total: t.visited, squarefree_hits: t.hits, ..SieveCounts::default() })
    }

    /// Adds `|P'(n, m)|` and `|P''(n, m)|` to the empirical counts.
    pub fn sieve_split_counts(&self, f: &Admissible, n: usize, m: usize, limits: &Limits) -> Result<SieveCounts> {
        if m == 0 || m > n {
            return Err(Error::InvalidArgument(format!("need 1 <= M <= n, got M = {m}, n = {n}")));
        }
        let t = self.tally(n, true, limits, |a, acc| {
            let profile = self.square_profile(&self.eval(f.f(), a))?;
            acc.hits += u64::from(profile.is_squarefree());
            acc.p_prime += u64::from(!profile.any_below(m));
            acc.p_doubleprime += u64::from(profile.any_at_least(m));
            Ok(())
        })?;
        Ok(SieveCounts {
            n,
            m: Some(m),
            primes_total: t.visited,
            squarefree_hits: t.hits,
            p_prime_count: Some(t.p_prime),
            p_doubleprime_count: Some(t.p_doubleprime),
            ..SieveCounts::default()
        })
    }

    /// Counts of monic `a` of degree `n` by where the square prime divisors
    /// of `f(a)` sit relative to `m` and `n/2`.
    pub fn remainder_counts(&self, f: &Admissible, n: usize, m: usize, limits: &Limits) -> Result<RemainderCounts> {
        if m == 0 {
            return Err(Error::InvalidArgument("cutoff M must be at least 1".into()));
        }
        let half = n / 2;
        let t = self.tally(n, false, limits, |a, acc| {
            let profile = self.square_profile(&self.eval(f.f(), a))?;
            if profile.is_squarefree() {
                return Ok(());
            }
            acc.not_squarefree += 1;
            acc.small_only += u64::from(!profile.any_at_least(m));
            acc.bad_middle += u64::from(profile.any_within(m, half));
            acc.bad_large += u64::from(profile.any_at_least(half + 1));
            Ok(())
        })?;
        let q = self.q() as f64;
        let p = self.field().p() as f64;
        Ok(RemainderCounts {
            n,
            m,
            monic_total: t.visited,
            not_squarefree: t.not_squarefree,
            small_only: t.small_only,
            bad_middle: t.bad_middle,
            bad_large: t.bad_large,
            middle_scale: q.powi(n as i32) / (m as f64 * q.powi(m as i32)),
            large_scale: q.powf(n as f64 * (p - 1.0) / p),
        })
    }

    /// Largest deviation of the prime counts in reduced residue classes
    /// modulo `modulus` from `q^n / (n phi(Q))`, against
    /// `slack * deg Q * q^(n/2) / n`.
    pub fn weil_check(&self, n: usize, modulus: &Poly, slack: Option<f64>, limits: &Limits) -> Result<WeilReport> {
        let dq = match modulus.degree() {
            Some(d) if d >= 1 => d,
            _ => return Err(Error::ConstantInput),
        };
        if n == 0 {
            return Err(Error::DegreeTooSmall { min: 1, got: 0 });
        }
        limits.check_enumeration(self.monic_count(n)?)?;
        let slack = slack.unwrap_or_else(|| default_weil_slack(dq));
        let counts = self.prime_residue_counts(n, modulus)?;
        let q = self.q() as f64;
        let main_term = q.powi(n as i32) / (n as f64 * self.euler_phi(modulus)? as f64);
        let mut max_deviation = 0.0f64;
        for a in self.residues(dq) {
            if a.is_zero() || !self.gcd(&a, modulus)?.is_one() {
                continue;
            }
            let count = counts.get(&a).copied().unwrap_or(0) as f64;
            max_deviation = max_deviation.max((count - main_term).abs());
        }
        let bound = slack * dq as f64 * q.powf(n as f64 / 2.0) / n as f64;
        Ok(WeilReport { n, main_term, max_deviation, bound, slack, pass: max_deviation <= bound })
    }

    /// Empirical fractions for `n_min..=n_max` against the density interval
    /// at cutoff `m`.
    pub fn scan(&self, f: &Admissible, n_min: usize, n_max: usize, m: u32, limits: &Limits) -> Result<Scan> {
        if n_min == 0 || n_min > n_max {
            return Err(Error::InvalidArgument(format!("bad degree range {n_min}..={n_max}")));
        }
        let density = self.truncated_density(f, m, limits)?;
        let q = self.q() as f64;
        let rows = (n_min..=n_max)
            .map(|n| {
                let c = self.empirical_density(f, n, limits)?;
                let fraction = c.fraction();
                Ok(ScanRow {
                    n,
                    primes: c.primes_total,
                    hits: c.squarefree_hits,
                    fraction,
                    c_trunc: density.truncated_value,
                    c_lower: density.lower,
                    c_upper: density.upper,
                    deviation: (fraction - density.truncated_value).abs(),
                    log_ref: q.ln() / (n as f64).ln(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Scan { density, rows })
    }
}

/// `max(1, floor(log_q(n / 9)))`.
pub fn default_scan_cutoff(q: u64, n_max: usize) -> u32 {
    let mut m = 0u32;
    let mut power = q as f64;
    while power <= n_max as f64 / 9.0 {
        m += 1;
        power *= q as f64;
    }
    m.max(1)
}

/// The fraction of square-free values at primes of degree `n`, for the same
/// expression read over each field in `qs`. Fields where the expression is
/// not admissible are reported and skipped.
pub fn qscan(text: &str, qs: &[u64], n: usize, limits: &Limits) -> Result<Vec<QscanRow>> {
    let mut out = Vec::with_capacity(qs.len());
    for &q in qs {
        let ring = PolyRing::new(Field::with_order(q)?);
        let f = ring.parse_bipoly(text)?;
        let outcome = match ring.admit(&f) {
            Ok(adm) => {
                let c = ring.empirical_density(&adm, n, limits)?;
                QscanOutcome::Counted { primes: c.primes_total, hits: c.squarefree_hits, fraction: c.fraction() }
            }
            Err(e @ (Error::Inadmissible(_) | Error::Inseparable)) => QscanOutcome::Skipped(e.to_string()),
            Err(e) => return Err(e),
        };
        out.push(QscanRow { q, n, outcome });
    }
    Ok(out)
}

/// Rounds to [`REPORT_SIGNIFICANT_DIGITS`] significant digits.
pub fn round_sig(x: f64) -> f64 {
    format_real(x).parse().unwrap_or(x)
}

/// Shortest decimal rendering of `x` after rounding to
/// [`REPORT_SIGNIFICANT_DIGITS`] significant digits.
pub fn format_real(x: f64) -> String {
    if !x.is_finite() {
        return if x.is_nan() { "nan".into() } else if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.*e}", REPORT_SIGNIFICANT_DIGITS - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-6..REPORT_SIGNIFICANT_DIGITS as i32).contains(&exp) {
        let mantissa = mantissa.trim_end_matches('0').trim_end_matches('.');
        return format!("{mantissa}e{exp}");
    }
    let decimals = (REPORT_SIGNIFICANT_DIGITS as i32 - 1 - exp).max(0) as usize;
    let rounded: f64 = sci.parse().expect("valid float");
    let s = format!("{rounded:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

pub const SCAN_CSV_HEADER: &str = "n,primes,hits,fraction,c_trunc,c_lower,c_upper,deviation,log_ref";

pub fn scan_csv(rows: &[ScanRow]) -> String {
    let mut out = String::from(SCAN_CSV_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            r.n,
            r.primes,
            r.hits,
            format_real(r.fraction),
            format_real(r.c_trunc),
            format_real(r.c_lower),
            format_real(r.c_upper),
            format_real(r.deviation),
            format_real(r.log_ref)
        );
    }
    out
}
