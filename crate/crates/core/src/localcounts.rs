//! Roots of `f` modulo a prime `P` and modulo `P^2`.

use rayon::prelude::*;

use crate::bivariate::{Admissible, BiPoly};
use crate::config::{Limits, DEFAULT_LOCAL_SCAN_BUDGET, EXHAUSTIVE_ROOT_MAX_DEG};
use crate::polyring::{Poly, PolyRing, PrimeMod};
use crate::{Error, Result};

/// Root counts of `f` at one prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalCount {
    pub prime: PrimeMod,
    pub roots_mod_p: u128,
    pub roots_mod_p2: u128,
    /// Roots modulo `P^2` that are coprime to `P`.
    pub rho: u128,
    /// Whether the counts modulo `P^2` came from the unramified shortcut
    /// rather than a scan.
    pub hensel_path: bool,
}

impl PolyRing {
    fn reduce_bipoly(&self, f: &BiPoly, m: &Poly) -> Result<BiPoly> {
        Ok(BiPoly::from_xcoeffs(f.xcoeffs().iter().map(|c| self.rem(c, m)).collect::<Result<_>>()?))
    }

    /// Number of `a` with `deg a < deg P` and `f(a) = 0 mod P`.
    pub fn roots_mod_prime(&self, f: &Admissible, prime: &PrimeMod) -> Result<u128> {
        let d = prime.degree();
        let fbar = self.reduce_bipoly(f.f(), prime.poly())?;
        let size = self.monic_count(d)?;
        if fbar.is_zero() {
            return Ok(size);
        }
        if d <= EXHAUSTIVE_ROOT_MAX_DEG && size <= DEFAULT_LOCAL_SCAN_BUDGET as u128 {
            return self.count_roots_by_scan(&fbar, prime.poly(), d);
        }
        self.count_roots_by_gcd(&fbar, prime)
    }

    fn count_roots_by_scan(&self, f: &BiPoly, m: &Poly, d: usize) -> Result<u128> {
        let mut count = 0;
        for a in self.residues(d) {
            if self.eval_mod(f, &a, m)?.is_zero() {
                count += 1;
            }
        }
        Ok(count)
    }

    /// `deg gcd(f, X^(q^d) - X)` over the residue field `F_q[t]/(P)`.
    pub(crate) fn count_roots_by_gcd(&self, fbar: &BiPoly, prime: &PrimeMod) -> Result<u128> {
        let ext = ResidueField { ring: self, m: prime.poly() };
        let f = ext.make_monic(fbar.xcoeffs().to_vec())?;
        if f.len() <= 1 {
            return Ok(0);
        }
        let x = vec![Poly::zero(), Poly::one()];
        let mut h = ext.rem(&x, &f)?;
        for _ in 0..prime.degree() {
            h = ext.pow_mod(&h, self.q(), &f)?;
        }
        let diff = ext.sub(&h, &x);
        let diff = ext.rem(&diff, &f)?;
        let g = ext.gcd(f, diff)?;
        Ok((g.len() - 1) as u128)
    }

    /// Number of `b` with `deg b < 2 deg P` and `f(b) = 0 mod P^2`.
    ///
    /// Primes above [`Admissible::critical_degree`] use the equality with the
    /// count modulo `P`; smaller primes are scanned, subject to
    /// `limits.local_scan`.
    pub fn roots_mod_prime_square(&self, f: &Admissible, prime: &PrimeMod, limits: &Limits) -> Result<u128> {
        Ok(self.local_count(f, prime, limits)?.roots_mod_p2)
    }

    /// Lifts a simple root `c` modulo `P` to the unique root modulo `P^2`
    /// congruent to it.
    pub fn hensel_lift(&self, f: &Admissible, prime: &PrimeMod, c: &Poly) -> Result<Poly> {
        if prime.degree() <= f.critical_degree() {
            return Err(Error::Precondition(format!(
                "deg P = {} does not exceed max(deg disc, deg w_f) = {}",
                prime.degree(),
                f.critical_degree()
            )));
        }
        let p = prime.poly();
        let p2 = self.mul(p, p);
        let value = self.eval_mod(f.f(), c, &p2)?;
        if !self.rem(&value, p)?.is_zero() {
            return Err(Error::Precondition("c is not a root of f modulo P".into()));
        }
        let slope = self.eval_mod(f.derivative_x(), c, p)?;
        let h = self
            .inv_mod(&slope, p)
            .map_err(|_| Error::Internal("df/dx(c) vanishes modulo an unramified prime".into()))?;
        self.rem(&self.sub(c, &self.mul(&value, &h)), &p2)
    }

    /// `rho_f(P^2)`: residues `C` modulo `P^2`, coprime to `P`, with
    /// `f(C) = 0 mod P^2`.
    pub fn rho(&self, f: &Admissible, prime: &PrimeMod, limits: &Limits) -> Result<u128> {
        Ok(self.local_count(f, prime, limits)?.rho)
    }

    /// All counts at one prime.
    pub fn local_count(&self, f: &Admissible, prime: &PrimeMod, limits: &Limits) -> Result<LocalCount> {
        let d = prime.degree();
        let roots_mod_p = self.roots_mod_prime(f, prime)?;
        if d > f.critical_degree() {
            let at_zero = self.divides(prime.poly(), &f.f().xcoeff(0))?;
            return Ok(LocalCount {
                prime: prime.clone(),
                roots_mod_p,
                roots_mod_p2: roots_mod_p,
                rho: roots_mod_p - u128::from(at_zero),
                hensel_path: true,
            });
        }
        let (roots_mod_p2, rho) = self.scan_prime_square(f, prime, limits)?;
        Ok(LocalCount { prime: prime.clone(), roots_mod_p, roots_mod_p2, rho, hensel_path: false })
    }

    /// Roots modulo `P^2`, all and coprime to `P`, by scanning every residue
    /// regardless of the degree of `P`.
    pub fn scan_prime_square(&self, f: &Admissible, prime: &PrimeMod, limits: &Limits) -> Result<(u128, u128)> {
        let d = prime.degree();
        let p = prime.poly();
        let p2 = self.mul(p, p);
        let residues = self.monic_count(2 * d)?;
        if self.reduce_bipoly(f.f(), &p2)?.is_zero() {
            return Ok((residues, residues - self.monic_count(d)?));
        }
        limits.check_local(residues)?;
        let mut all = 0;
        let mut coprime = 0;
        for b in self.residues(2 * d) {
            if self.eval_mod(f.f(), &b, &p2)?.is_zero() {
                all += 1;
                if !self.rem(&b, p)?.is_zero() {
                    coprime += 1;
                }
            }
        }
        Ok((all, coprime))
    }

    /// One [`LocalCount`] per prime of degree at most `max_deg`, ordered by
    /// degree and then by enumeration order.
    pub fn local_profile(&self, f: &Admissible, max_deg: usize, limits: &Limits) -> Result<Vec<LocalCount>> {
        let mut out = Vec::new();
        for d in 1..=max_deg {
            limits.check_enumeration(self.monic_count(d)?)?;
            let primes: Vec<PrimeMod> = self.primes(d)?.collect();
            let counts = primes
                .par_iter()
                .map(|p| self.local_count(f, p, limits))
                .collect::<Result<Vec<_>>>()?;
            out.extend(counts);
        }
        Ok(out)
    }
}

/// Polynomials in `X` over `F_q[t]/(m)`, lowest degree first, trimmed.
struct ResidueField<'a> {
    ring: &'a PolyRing,
    m: &'a Poly,
}

impl ResidueField<'_> {
    fn trim(mut a: Vec<Poly>) -> Vec<Poly> {
        while a.last().is_some_and(Poly::is_zero) {
            a.pop();
        }
        a
    }

    fn make_monic(&self, a: Vec<Poly>) -> Result<Vec<Poly>> {
        let a = Self::trim(a);
        let Some(lead) = a.last() else {
            return Ok(a);
        };
        let inv = self.ring.inv_mod(lead, self.m)?;
        a.iter().map(|c| self.ring.mul_mod(c, &inv, self.m)).collect()
    }

    fn sub(&self, a: &[Poly], b: &[Poly]) -> Vec<Poly> {
        let n = a.len().max(b.len());
        let zero = Poly::zero();
        Self::trim(
            (0..n)
                .map(|i| self.ring.sub(a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero)))
                .collect(),
        )
    }

    /// Remainder modulo a monic `g`.
    fn rem(&self, a: &[Poly], g: &[Poly]) -> Result<Vec<Poly>> {
        let dg = g.len().checked_sub(1).ok_or(Error::DivisionByZero)?;
        let mut r: Vec<Poly> = a.to_vec();
        while r.len() > dg {
            let top = r.pop().expect("nonempty");
            if top.is_zero() {
                continue;
            }
            let shift = r.len() - dg;
            for (i, gc) in g[..dg].iter().enumerate() {
                r[shift + i] = self.ring.rem(&self.ring.sub(&r[shift + i], &self.ring.mul(&top, gc)), self.m)?;
            }
        }
        Ok(Self::trim(r))
    }

    fn mul_mod(&self, a: &[Poly], b: &[Poly], g: &[Poly]) -> Result<Vec<Poly>> {
        if a.is_empty() || b.is_empty() {
            return Ok(Vec::new());
        }
        let mut out = vec![Poly::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] = self.ring.add(&out[i + j], &self.ring.mul(x, y));
            }
        }
        let out = out.iter().map(|c| self.ring.rem(c, self.m)).collect::<Result<Vec<_>>>()?;
        self.rem(&out, g)
    }

    fn pow_mod(&self, a: &[Poly], mut e: u64, g: &[Poly]) -> Result<Vec<Poly>> {
        let mut acc = self.rem(&[Poly::one()], g)?;
        let mut base = a.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_mod(&acc, &base, g)?;
            }
            e >>= 1;
            if e > 0 {
                base = self.mul_mod(&base, &base, g)?;
            }
        }
        Ok(acc)
    }

    /// Monic gcd.
    fn gcd(&self, a: Vec<Poly>, b: Vec<Poly>) -> Result<Vec<Poly>> {
        let mut a = self.make_monic(a)?;
        let mut b = self.make_monic(b)?;
        while !b.is_empty() {
            let r = self.rem(&a, &b)?;
            a = b;
            b = self.make_monic(r)?;
        }
        Ok(a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn setup(q: u64, f: &str) -> (PolyRing, Admissible) {
        let r = PolyRing::new(Field::with_order(q).unwrap());
        let f = r.admit(&r.parse_bipoly(f).unwrap()).unwrap();
        (r, f)
    }

    fn prime(r: &PolyRing, s: &str) -> PrimeMod {
        r.prime(&r.parse(s).unwrap()).unwrap()
    }

    #[test]
    fn roots_mod_prime_examples() {
        let (r, f) = setup(2, "x^3 + t");
        assert_eq!(r.roots_mod_prime(&f, &prime(&r, "t^3+t+1")).unwrap(), 1);
        let (r, f) = setup(2, "x^2 + x");
        assert_eq!(r.roots_mod_prime(&f, &prime(&r, "t")).unwrap(), 2);
        let (r, f) = setup(2, "x + 1");
        assert_eq!(r.roots_mod_prime(&f, &prime(&r, "t")).unwrap(), 1);
    }

    #[test]
    fn gcd_count_matches_scan() {
        for (q, s) in [(2, "x^3 + t"), (2, "x^4 + t*x + 1"), (3, "x^3 + t*x + t^2"), (4, "x^2 + u*t*x + 1")] {
            let (r, f) = setup(q, s);
            for d in 1..=3 {
                for p in r.primes(d).unwrap() {
                    let fbar = r.reduce_bipoly(f.f(), p.poly()).unwrap();
                    if fbar.is_zero() {
                        continue;
                    }
                    assert_eq!(
                        r.count_roots_by_gcd(&fbar, &p).unwrap(),
                        r.count_roots_by_scan(&fbar, p.poly(), d).unwrap(),
                        "{s} mod {}",
                        r.display(p.poly())
                    );
                }
            }
        }
    }

    #[test]
    fn prime_square_examples() {
        let lim = Limits::default();
        let (r, f) = setup(2, "x^3 + t");
        assert_eq!(r.roots_mod_prime_square(&f, &prime(&r, "t^3+t+1"), &lim).unwrap(), 1);
        assert_eq!(r.roots_mod_prime_square(&f, &prime(&r, "t"), &lim).unwrap(), 0);
        let (r, f) = setup(2, "(x+1)*(x+1+t^2)");
        assert_eq!(r.roots_mod_prime_square(&f, &prime(&r, "t"), &lim).unwrap(), 2);
    }

    #[test]
    fn rho_examples() {
        let lim = Limits::default();
        let (r, f) = setup(2, "x^3 + t");
        assert_eq!(r.rho(&f, &prime(&r, "t"), &lim).unwrap(), 0);
        let (r, f) = setup(2, "(x+1)*(x+1+t^2)");
        assert_eq!(r.rho(&f, &prime(&r, "t"), &lim).unwrap(), 2);
        let (r, f) = setup(3, "x");
        for d in 1..=3 {
            for p in r.primes(d).unwrap() {
                assert_eq!(r.rho(&f, &p, &lim).unwrap(), 0);
            }
        }
    }

    #[test]
    fn hensel_examples() {
        let (r, f) = setup(2, "x^3 + t");
        let p = prime(&r, "t^3+t+1");
        let c = r.residues(3).find(|c| r.eval_mod(f.f(), c, p.poly()).unwrap().is_zero()).unwrap();
        let d = r.hensel_lift(&f, &p, &c).unwrap();
        let p2 = r.mul(p.poly(), p.poly());
        assert!(r.eval_mod(f.f(), &d, &p2).unwrap().is_zero());
        assert_eq!(r.rem(&d, p.poly()).unwrap(), c);
        assert!(matches!(r.hensel_lift(&f, &prime(&r, "t"), &Poly::zero()), Err(Error::Precondition(_))));
        let (r, f) = setup(2, "x + 1");
        assert_eq!(r.hensel_lift(&f, &prime(&r, "t^3+t+1"), &Poly::one()).unwrap(), Poly::one());
    }

    #[test]
    fn profile_examples() {
        let lim = Limits::default();
        let (r, f) = setup(2, "x^3 + t");
        let prof = r.local_profile(&f, 1, &lim).unwrap();
        assert_eq!(prof.len(), 2);
        assert_eq!(prof[0].prime.poly(), &Poly::t());
        assert_eq!(prof[0].rho, 0);
        // Of the residues mod (t+1)^2 prime to t+1, only t gives
        // t^3 + t = t (t+1)^2.
        assert_eq!(prof[1].rho, 1);
        assert!(r.local_profile(&f, 0, &lim).unwrap().is_empty());
        let (r, f) = setup(2, "x");
        assert!(r.local_profile(&f, 2, &lim).unwrap().iter().all(|c| c.rho == 0));
    }

    #[test]
    fn scan_budget_is_enforced() {
        let (r, f) = setup(2, "x^3 + t");
        let lim = Limits { local_scan: 3, ..Limits::default() };
        assert!(matches!(r.rho(&f, &prime(&r, "t"), &lim), Err(Error::BudgetExceeded { .. })));
    }
}
