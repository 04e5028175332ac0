//! Counting primes of `F_q[t]`, in total and in arithmetic progressions.

use std::collections::BTreeMap;

use super::{Poly, PolyRing, PrimeMod};
use crate::{Error, Result};

/// Moebius function by trial division.
pub fn mobius(n: u64) -> i32 {
    let mut n = n;
    let mut sign = 1;
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            n /= d;
            if n % d == 0 {
                return 0;
            }
            sign = -sign;
        }
        d += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// Primes of degree `n` in the class `A mod Q`, against the main term
/// `q^n / (n phi(Q))`.
#[derive(Clone, Debug, PartialEq)]
pub struct PrimeApCount {
    pub count: u64,
    /// Numerator and denominator of the main term.
    pub main_term: (u128, u128),
    pub deviation: f64,
}

impl PrimeApCount {
    pub fn main_term_f64(&self) -> f64 {
        self.main_term.0 as f64 / self.main_term.1 as f64
    }
}

impl PolyRing {
    /// `|pi_q(n)| = (1/n) sum_{d | n} mu(d) q^(n/d)`.
    pub fn count_primes(&self, n: usize) -> Result<u128> {
        if n == 0 {
            return Err(Error::DegreeTooSmall { min: 1, got: 0 });
        }
        let q = self.q() as i128;
        let mut total: i128 = 0;
        for d in (1..=n).filter(|d| n % d == 0) {
            let mu = mobius(d as u64);
            if mu == 0 {
                continue;
            }
            let term = q.checked_pow((n / d) as u32).ok_or(Error::Overflow("q^(n/d)"))?;
            total += mu as i128 * term;
        }
        debug_assert_eq!(total % n as i128, 0);
        Ok((total / n as i128) as u128)
    }

    /// Monic irreducibles of degree `n` in enumeration order.
    pub fn primes(&self, n: usize) -> Result<impl Iterator<Item = PrimeMod> + '_> {
        if n == 0 {
            return Err(Error::DegreeTooSmall { min: 1, got: 0 });
        }
        self.monic_count(n)?;
        Ok(self
            .monics(n)
            .filter(|a| self.is_irreducible(a).expect("degree >= 1"))
            .map(PrimeMod::new_unchecked))
    }

    /// `phi(Q) = #{a : deg a < deg Q, gcd(a, Q) = 1}` from the factorization
    /// of `Q`.
    pub fn euler_phi(&self, modulus: &Poly) -> Result<u128> {
        match modulus.degree() {
            None => return Err(Error::ZeroPolynomial),
            Some(0) => return Err(Error::ConstantInput),
            Some(_) => {}
        }
        let q = self.q() as u128;
        let mut phi: u128 = 1;
        for (prime, k) in self.factorize(modulus)?.factors {
            let d = prime.degree() as u32;
            let hi = q.checked_pow(k * d).ok_or(Error::Overflow("phi"))?;
            let lo = q.pow((k - 1) * d);
            phi = phi.checked_mul(hi - lo).ok_or(Error::Overflow("phi"))?;
        }
        Ok(phi)
    }

    /// Counts primes of degree `n` congruent to `residue` modulo `modulus`.
    pub fn count_primes_ap(&self, n: usize, modulus: &Poly, residue: &Poly) -> Result<PrimeApCount> {
        if modulus.degree().unwrap_or(0) == 0 {
            return Err(Error::ConstantInput);
        }
        let residue = self.rem(residue, modulus)?;
        if residue.is_zero() || !self.gcd(modulus, &residue)?.is_one() {
            return Err(Error::NotCoprime);
        }
        let mut count = 0u64;
        for prime in self.primes(n)? {
            if self.rem(prime.poly(), modulus)? == residue {
                count += 1;
            }
        }
        let numer = self.monic_count(n)?;
        let denom = (n as u128)
            .checked_mul(self.euler_phi(modulus)?)
            .ok_or(Error::Overflow("n phi(Q)"))?;
        let deviation = (count as f64 - numer as f64 / denom as f64).abs();
        Ok(PrimeApCount { count, main_term: (numer, denom), deviation })
    }

    /// Number of primes of degree `n` in each residue class modulo `modulus`,
    /// keyed by the reduced residue.
    pub fn prime_residue_counts(&self, n: usize, modulus: &Poly) -> Result<BTreeMap<Poly, u64>> {
        if modulus.degree().unwrap_or(0) == 0 {
            return Err(Error::ConstantInput);
        }
        let mut out = BTreeMap::new();
        for prime in self.primes(n)? {
            *out.entry(self.rem(prime.poly(), modulus)?).or_insert(0) += 1;
        }
        Ok(out)
    }
}
