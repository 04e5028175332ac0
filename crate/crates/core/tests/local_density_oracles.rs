mod common;

use common::{raw, raw_bi, ring, Fp, TEST_SET};
use sqfree_core::{Limits, PolyRing};

fn admitted(q: u64, text: &str) -> (PolyRing, sqfree_core::Admissible) {
    let r = ring(q);
    let f = r.admit(&r.parse_bipoly(text).unwrap()).unwrap();
    (r, f)
}

#[test]
fn hensel_consistency_above_critical_degree() {
    let lim = Limits::default();
    for &(q, text) in TEST_SET {
        let (r, f) = admitted(q, text);
        let top = if q == 2 { 5 } else { 4 };
        for d in f.critical_degree() + 1..=top {
            for p in r.primes(d).unwrap() {
                let (scanned, _) = r.scan_prime_square(&f, &p, &lim).unwrap();
                assert_eq!(scanned, r.roots_mod_prime(&f, &p).unwrap(), "{text} at {}", r.display(p.poly()));
            }
        }
    }
}

#[test]
fn uniform_bound_and_rho_ordering() {
    let lim = Limits::default();
    for &(q, text) in TEST_SET {
        let (r, f) = admitted(q, text);
        let bound = r.rho_bound(&f).unwrap();
        for c in r.local_profile(&f, if q == 2 { 4 } else { 3 }, &lim).unwrap() {
            assert!(c.rho <= c.roots_mod_p2 && c.roots_mod_p2 <= bound, "{text}: {c:?}");
            assert!(c.roots_mod_p2 <= r.monic_count(2 * c.prime.degree()).unwrap());
            if c.hensel_path {
                assert!(c.roots_mod_p2 <= f.degree_x() as u128);
            }
        }
    }
}

#[test]
fn counts_match_brute_force_oracle() {
    let lim = Limits::default();
    for &(q, text) in TEST_SET {
        let (r, f) = admitted(q, text);
        let fp = Fp { p: q as u32 };
        let fr = raw_bi(f.f());
        let top = if q == 2 { 3 } else { 2 };
        for d in 1..=top {
            for p in r.primes(d).unwrap() {
                let pr = raw(p.poly());
                let p2 = fp.mul(&pr, &pr);
                let c = r.local_count(&f, &p, &lim).unwrap();
                assert_eq!(c.roots_mod_p as u64, fp.roots(&fr, &pr), "{text}");
                assert_eq!(c.roots_mod_p2 as u64, fp.roots(&fr, &p2), "{text}");
                assert_eq!(c.rho as u64, fp.rho(&fr, &p2), "{text}");
            }
        }
    }
}

/// Degree 5 and 6 primes go through the gcd with `X^(q^d) - X`.
#[test]
fn gcd_root_count_matches_oracle() {
    for &(q, text) in TEST_SET.iter().filter(|(q, _)| *q == 2) {
        let (r, f) = admitted(q, text);
        let fp = Fp { p: 2 };
        let fr = raw_bi(f.f());
        for d in 5..=6 {
            for p in r.primes(d).unwrap() {
                assert_eq!(r.roots_mod_prime(&f, &p).unwrap() as u64, fp.roots(&fr, &raw(p.poly())), "{text}");
            }
        }
    }
}

#[test]
fn lifts_are_roots_mod_prime_square() {
    for &(q, text) in TEST_SET {
        let (r, f) = admitted(q, text);
        let d = f.critical_degree() + 1;
        if d > 4 {
            continue;
        }
        for p in r.primes(d).unwrap() {
            let p2 = r.mul(p.poly(), p.poly());
            for c in r.residues(d) {
                if !r.eval_mod(f.f(), &c, p.poly()).unwrap().is_zero() {
                    continue;
                }
                let lifted = r.hensel_lift(&f, &p, &c).unwrap();
                assert!(r.eval_mod(f.f(), &lifted, &p2).unwrap().is_zero());
                assert_eq!(r.rem(&lifted, p.poly()).unwrap(), c);
            }
        }
    }
}

#[test]
fn truncated_product_matches_oracle_rho() {
    let lim = Limits::default();
    for &(q, text) in TEST_SET {
        let (r, f) = admitted(q, text);
        let fp = Fp { p: q as u32 };
        let fr = raw_bi(f.f());
        let Ok(m) = r.smallest_certifiable_cutoff(&f, 1) else { continue };
        if r.monic_count(2 * (m as usize - 1)).unwrap() > 1 << 12 {
            continue;
        }
        let est = r.truncated_density(&f, m, &lim).unwrap();
        let mut product = 1.0f64;
        for d in 1..m as usize {
            let norm = (q as f64).powi(d as i32);
            for p in fp.primes(d) {
                let rho = fp.rho(&fr, &fp.mul(&p, &p));
                product *= 1.0 - rho as f64 / (norm * norm - norm);
            }
        }
        assert!((est.truncated_value - product).abs() < 1e-12, "{text}: {} vs {product}", est.truncated_value);
        assert_eq!(est.positive, product > 0.0);
    }
}

#[test]
fn positivity_matches_product_and_intervals_nest() {
    let lim = Limits::default();
    for &(q, text) in TEST_SET {
        let (r, f) = admitted(q, text);
        let Ok(pos) = r.positivity_check(&f, &lim) else { continue };
        let Ok(start) = r.smallest_certifiable_cutoff(&f, f.critical_degree() as u32 + 1) else { continue };
        let mut prev: Option<(f64, f64)> = None;
        for m in start..start + 3 {
            let Ok(est) = r.truncated_density(&f, m, &lim) else { break };
            assert_eq!(pos.positive, est.truncated_value > 0.0, "{text} at M = {m}");
            assert_eq!(pos.culprit().cloned(), est.culprit.clone());
            assert!(0.0 <= est.lower && est.lower <= est.upper && est.upper <= est.truncated_value);
            if let Some((lo, hi)) = prev {
                assert!(est.lower >= lo - 1e-12 && est.upper <= hi + 1e-12, "{text}: interval widened at M = {m}");
            }
            prev = Some((est.lower, est.upper));
        }
    }
}

#[test]
fn vanishing_product_means_no_square_free_values() {
    let lim = Limits::default();
    let (r, f) = admitted(2, "(x+1)*(x+1+t^2)");
    let pos = r.positivity_check(&f, &lim).unwrap();
    let culprit = pos.culprit().unwrap();
    assert_eq!(culprit.degree(), 1);
    // Only primes of degree <= the critical degree can escape.
    for n in f.critical_degree() + 1..=12 {
        assert_eq!(r.empirical_density(&f, n, &lim).unwrap().squarefree_hits, 0, "n = {n}");
    }
}
