mod common;

use std::collections::BTreeSet;

use common::{raw_bi, ring, Fp, TEST_SET};
use sqfree_core::experiments::{qscan, scan_csv, QscanOutcome};
use sqfree_core::{Limits, PolyRing};

fn admitted(q: u64, text: &str) -> (PolyRing, sqfree_core::Admissible) {
    let r = ring(q);
    let f = r.admit(&r.parse_bipoly(text).unwrap()).unwrap();
    (r, f)
}

#[test]
fn hits_match_trial_division_recount() {
    let lim = Limits::default();
    for &(q, text) in TEST_SET {
        let (r, f) = admitted(q, text);
        let fp = Fp { p: q as u32 };
        let fr = raw_bi(f.f());
        let top = if q == 2 { 6 } else { 4 };
        for n in 1..=top {
            let primes = fp.primes(n);
            let hits = primes.iter().filter(|p| fp.is_squarefree(&fp.eval(&fr, p))).count() as u64;
            let c = r.empirical_density(&f, n, &lim).unwrap();
            assert_eq!((c.primes_total, c.squarefree_hits), (primes.len() as u64, hits), "{text}, n = {n}");
        }
    }
}

#[test]
fn sandwich_always_holds() {
    let lim = Limits::default();
    for &(q, text) in TEST_SET {
        let (r, f) = admitted(q, text);
        let top = if q == 2 { 9 } else { 5 };
        for n in 1..=top {
            for m in 1..=n {
                let c = r.sieve_split_counts(&f, n, m, &lim).unwrap();
                assert_eq!(c.sandwich_holds(), Some(true), "{text}, n = {n}, M = {m}: {c:?}");
                assert!(c.squarefree_hits <= c.primes_total);
            }
            let e = r.empirical_density(&f, n, &lim).unwrap();
            assert_eq!(e.squarefree_hits, r.sieve_split_counts(&f, n, 1, &lim).unwrap().squarefree_hits);
        }
    }
}

/// Degrees of the primes `P` with `P^2 | v`, by trial division. Every
/// prime square divides zero.
fn square_degrees(fp: &Fp, v: &[u32], primes_by_degree: &[Vec<Vec<u32>>]) -> BTreeSet<usize> {
    if v.is_empty() {
        return (1..=64).collect();
    }
    let n = v.len() - 1;
    let mut out = BTreeSet::new();
    for d in 1..=n / 2 {
        if primes_by_degree[d].iter().any(|p| fp.rem(v, &fp.mul(p, p)).is_empty()) {
            out.insert(d);
        }
    }
    out
}

#[test]
fn remainder_counts_match_direct_classification() {
    let lim = Limits::default();
    for &(q, text) in TEST_SET.iter().filter(|(q, _)| *q == 2) {
        let (r, f) = admitted(q, text);
        let fp = Fp { p: 2 };
        let fr = raw_bi(f.f());
        for n in 2..=7usize {
            let top = (fr.iter().map(|c| c.len()).max().unwrap_or(1) + (fr.len() - 1) * n) / 2;
            let primes_by_degree: Vec<Vec<Vec<u32>>> = (0..=top).map(|d| if d == 0 { vec![] } else { fp.primes(d) }).collect();
            let classes: Vec<BTreeSet<usize>> =
                fp.monics(n).iter().map(|a| square_degrees(&fp, &fp.eval(&fr, a), &primes_by_degree)).collect();
            for m in 1..=n {
                let c = r.remainder_counts(&f, n, m, &lim).unwrap();
                let count = |pred: &dyn Fn(&BTreeSet<usize>) -> bool| {
                    classes.iter().filter(|s| pred(s)).count() as u64
                };
                assert_eq!(c.not_squarefree, count(&|s| !s.is_empty()), "{text} n={n} M={m}");
                assert_eq!(c.bad_middle, count(&|s| s.iter().any(|&d| m <= d && d <= n / 2)), "{text} n={n} M={m}");
                assert_eq!(c.bad_large, count(&|s| s.iter().any(|&d| d > n / 2)), "{text} n={n} M={m}");
                assert!(c.bad_middle + c.bad_large >= c.not_squarefree - c.small_only);
            }
        }
    }
}

#[test]
fn remainder_consistency_up_to_degree_ten() {
    let lim = Limits::default();
    for &(q, text) in TEST_SET.iter().filter(|(q, _)| *q == 2) {
        let (r, f) = admitted(q, text);
        for n in 2..=10 {
            for m in 1..=3 {
                let c = r.remainder_counts(&f, n, m, &lim).unwrap();
                assert!(c.bad_middle + c.bad_large >= c.not_squarefree - c.small_only, "{text} n={n} M={m}");
                if n < 2 * m {
                    assert_eq!(c.bad_middle, 0);
                }
            }
        }
    }
}

#[test]
fn serial_and_parallel_csv_are_identical() {
    let (r, f) = admitted(2, "x^3 + t");
    let run = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| scan_csv(&r.scan(&f, 6, 14, 4, &Limits::default()).unwrap().rows))
    };
    let serial = run(1);
    assert_eq!(serial, run(4));
    assert_eq!(serial, run(7));
    assert!(serial.starts_with("n,primes,hits,fraction,c_trunc,c_lower,c_upper,deviation,log_ref\n"));
}

#[test]
fn scan_of_x_is_all_ones() {
    let (r, f) = admitted(3, "x");
    let scan = r.scan(&f, 1, 6, 2, &Limits::default()).unwrap();
    assert!(scan.rows.iter().all(|row| row.fraction == 1.0 && row.c_trunc == 1.0));
}

#[test]
fn degenerate_scan_is_all_zero_past_the_exceptional_degree() {
    let (r, f) = admitted(2, "(x+1)*(x+1+t^2)");
    let scan = r.scan(&f, 2, 10, 2, &Limits::default()).unwrap();
    assert!(!scan.density.positive);
    assert!(scan.rows.iter().all(|row| row.fraction == 0.0 && row.c_trunc == 0.0));
}

#[test]
fn single_q_reduces_to_empirical_density() {
    let lim = Limits::default();
    let rows = qscan("x^3 + t", &[5], 3, &lim).unwrap();
    let (r, f) = admitted(5, "x^3 + t");
    let c = r.empirical_density(&f, 3, &lim).unwrap();
    assert_eq!(
        rows[0].outcome,
        QscanOutcome::Counted { primes: c.primes_total, hits: c.squarefree_hits, fraction: c.fraction() }
    );
}

#[test]
fn weil_default_slack_holds_for_small_moduli() {
    let lim = Limits::default();
    for q in [2u64, 3] {
        let r = ring(q);
        for modulus in ["t", "t+1", "t^2+1", "t^2+t+2"] {
            let Ok(m) = r.parse(modulus) else { continue };
            for n in 1..=8 {
                match r.weil_check(n, &m, None, &lim) {
                    Ok(w) => assert!(w.pass, "q={q} Q={modulus} n={n}: {w:?}"),
                    Err(e) => panic!("{e}"),
                }
            }
        }
    }
}
