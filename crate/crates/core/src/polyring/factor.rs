//! Irreducibility, square-freeness and factorization in `F_q[t]`.

use super::{Poly, PolyRing, PrimeMod};
use crate::field::prime_factors_u64;
use crate::{Error, Result};

/// Which primes `P` satisfy `P^2 | a`, recorded by degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SquareProfile {
    /// `a = 0`: every prime square divides it.
    Zero,
    /// Sorted distinct degrees of the primes whose square divides `a`.
    Degrees(Vec<usize>),
}

impl SquareProfile {
    pub fn is_squarefree(&self) -> bool {
        matches!(self, SquareProfile::Degrees(d) if d.is_empty())
    }

    /// Some `P` with `deg P < bound` and `P^2 | a`.
    pub fn any_below(&self, bound: usize) -> bool {
        match self {
            SquareProfile::Zero => bound > 1,
            SquareProfile::Degrees(d) => d.first().is_some_and(|&x| x < bound),
        }
    }

    /// Some `P` with `lo <= deg P <= hi` and `P^2 | a`.
    pub fn any_within(&self, lo: usize, hi: usize) -> bool {
        match self {
            SquareProfile::Zero => lo.max(1) <= hi,
            SquareProfile::Degrees(d) => d.iter().any(|&x| lo <= x && x <= hi),
        }
    }

    /// Some `P` with `deg P >= bound` and `P^2 | a`.
    pub fn any_at_least(&self, bound: usize) -> bool {
        match self {
            SquareProfile::Zero => true,
            SquareProfile::Degrees(d) => d.last().is_some_and(|&x| x >= bound),
        }
    }
}

/// `a = unit * prod P^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: crate::field::Elem,
    pub factors: Vec<(PrimeMod, u32)>,
}

impl PolyRing {
    /// Rabin's test: `t^(q^n) = t mod a` and `gcd(t^(q^(n/r)) - t, a) = 1`
    /// for every prime `r | n`.
    pub fn is_irreducible(&self, a: &Poly) -> Result<bool> {
        let n = match a.degree() {
            None | Some(0) => return Err(Error::ConstantInput),
            Some(1) => return Ok(true),
            Some(n) => n,
        };
        let a = self.normalize(a);
        let checkpoints: Vec<usize> =
            prime_factors_u64(n as u64).into_iter().map(|r| n / r as usize).collect();
        let t = Poly::t();
        let mut h = t.clone();
        for k in 1..=n {
            h = self.pow_mod_u64(&h, self.q(), &a)?;
            if checkpoints.contains(&k) && !self.gcd(&self.sub(&h, &t), &a)?.is_one() {
                return Ok(false);
            }
        }
        Ok(h == t)
    }

    /// Irreducibility by searching for a monic factor of degree at most
    /// `deg a / 2`.
    pub fn is_irreducible_by_trial_division(&self, a: &Poly) -> Result<bool> {
        let n = match a.degree() {
            None | Some(0) => return Err(Error::ConstantInput),
            Some(n) => n,
        };
        for d in 1..=n / 2 {
            for cand in self.monics(d) {
                if self.divides(&cand, a)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// No prime `P` with `P^2 | a`.
    pub fn is_squarefree(&self, a: &Poly) -> Result<bool> {
        match a.degree() {
            None => Err(Error::ZeroPolynomial),
            Some(0) => Ok(true),
            Some(_) => {
                let da = self.derivative(a);
                if da.is_zero() {
                    // A p-th power, since F_q is perfect.
                    return Ok(false);
                }
                Ok(self.gcd(a, &da)?.is_one())
            }
        }
    }

    /// `b` with `b^p = a`, for `a` whose derivative vanishes.
    pub fn pth_root(&self, a: &Poly) -> Result<Poly> {
        let p = self.field().p() as usize;
        if !self.derivative(a).is_zero() {
            return Err(Error::Precondition("not a p-th power".into()));
        }
        let f = self.field();
        Ok(Poly::from_trimmed(
            a.coeffs().iter().step_by(p).map(|&c| f.frobenius_root(c)).collect(),
        ))
    }

    /// Sorted distinct degrees of the prime factors of a nonzero `a`, by
    /// distinct-degree splitting. Repeated factors are allowed.
    pub fn prime_factor_degrees(&self, a: &Poly) -> Result<Vec<usize>> {
        if a.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut rest = self.normalize(a);
        let mut degrees = Vec::new();
        let t = Poly::t();
        let mut h = t.clone();
        let mut d = 0usize;
        while let Some(n) = rest.degree().filter(|&n| n > 0) {
            d += 1;
            if n < 2 * d {
                // Every prime factor has degree >= d, so `rest` is prime.
                degrees.push(n);
                break;
            }
            h = self.pow_mod_u64(&h, self.q(), &rest)?;
            let g = self.gcd(&self.sub(&h, &t), &rest)?;
            if g.is_one() {
                continue;
            }
            degrees.push(d);
            loop {
                let common = self.gcd(&rest, &g)?;
                if common.is_one() {
                    break;
                }
                rest = self.exact_div(&rest, &common)?;
            }
            if rest.degree().unwrap_or(0) > 0 {
                h = self.rem(&h, &rest)?;
            }
        }
        Ok(degrees)
    }

    /// Degrees of the primes whose square divides `a`.
    ///
    /// `P^2 | a` exactly when `P` divides both `a` and `a'`, because every
    /// irreducible over a perfect field is separable. When `a' = 0`, `a` is a
    /// p-th power and every prime factor of its p-th root qualifies.
    pub fn square_profile(&self, a: &Poly) -> Result<SquareProfile> {
        if a.is_zero() {
            return Ok(SquareProfile::Zero);
        }
        if a.degree() == Some(0) {
            return Ok(SquareProfile::Degrees(Vec::new()));
        }
        let da = self.derivative(a);
        let core = if da.is_zero() { self.pth_root(a)? } else { self.gcd(a, &da)? };
        if core.degree() == Some(0) {
            return Ok(SquareProfile::Degrees(Vec::new()));
        }
        Ok(SquareProfile::Degrees(self.prime_factor_degrees(&core)?))
    }

    /// Full factorization by trial division with monic polynomials of
    /// increasing degree; whatever is left once `2d > deg` is prime.
    pub fn factorize(&self, a: &Poly) -> Result<Factorization> {
        let unit = a.leading().ok_or(Error::ZeroPolynomial)?;
        let mut rest = self.normalize(a);
        let mut factors = Vec::new();
        let mut d = 1;
        'outer: while rest.degree().unwrap_or(0) >= 2 * d {
            for cand in self.monics(d) {
                let mut k = 0;
                loop {
                    let (quot, r) = self.div_rem(&rest, &cand)?;
                    if !r.is_zero() {
                        break;
                    }
                    rest = quot;
                    k += 1;
                }
                if k > 0 {
                    factors.push((PrimeMod::new_unchecked(cand), k));
                }
                if rest.degree().unwrap_or(0) < 2 * d {
                    break 'outer;
                }
            }
            d += 1;
        }
        if rest.degree().unwrap_or(0) > 0 {
            factors.push((PrimeMod::new_unchecked(rest), 1));
        }
        factors.sort();
        Ok(Factorization { unit, factors })
    }
}
