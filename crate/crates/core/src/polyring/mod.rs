//! The polynomial ring `F_q[t]`.

mod counting;
mod factor;
mod frobenius;
mod monic;

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;

use crate::field::{Elem, Field};
use crate::{Error, Result};

pub use counting::{mobius, PrimeApCount};
pub use factor::{Factorization, SquareProfile};
pub use monic::MonicIter;

/// Dense polynomial in `t`, lowest degree first, with no trailing zeros.
///
/// The zero polynomial has no coefficients and degree `None`, which orders
/// below every `Some(d)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly {
    coeffs: Vec<Elem>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly { coeffs: vec![Elem::ONE] }
    }

    /// `t`.
    pub fn t() -> Poly {
        Poly { coeffs: vec![Elem::ZERO, Elem::ONE] }
    }

    pub(crate) fn from_trimmed(mut coeffs: Vec<Elem>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Elem> {
        self.coeffs
    }

    /// Coefficient of `t^i`, zero past the degree.
    #[inline]
    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(Elem::ZERO)
    }

    #[inline]
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == Elem::ONE
    }

    /// Nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.coeffs.len() == 1
    }

    pub fn leading(&self) -> Option<Elem> {
        self.coeffs.last().copied()
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Some(Elem::ONE)
    }
}

/// Degree first, then coefficients from the top down. Within a degree this
/// is the enumeration order of [`PolyRing::monic`].
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial certified monic irreducible.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct PrimeMod {
    degree: usize,
    poly: Poly,
}

impl PrimeMod {
    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn into_poly(self) -> Poly {
        self.poly
    }

    pub(crate) fn new_unchecked(poly: Poly) -> PrimeMod {
        debug_assert!(poly.is_monic());
        PrimeMod { degree: poly.degree().expect("nonzero"), poly }
    }
}

/// Arithmetic context for `F_q[t]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRing {
    field: Field,
}

impl PolyRing {
    pub fn new(field: Field) -> PolyRing {
        PolyRing { field }
    }

    #[inline]
    pub fn field(&self) -> &Field {
        &self.field
    }

    #[inline]
    pub fn q(&self) -> u64 {
        self.field.q() as u64
    }

    pub fn from_coeffs(&self, coeffs: Vec<Elem>) -> Poly {
        Poly::from_trimmed(coeffs)
    }

    /// Coefficients given as integers in the prime subfield, lowest first.
    pub fn from_ints(&self, coeffs: &[i64]) -> Poly {
        Poly::from_trimmed(coeffs.iter().map(|&c| self.field.from_int(c)).collect())
    }

    pub fn constant(&self, c: Elem) -> Poly {
        Poly::from_trimmed(vec![c])
    }

    /// `c * t^k`.
    pub fn monomial(&self, c: Elem, k: usize) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![Elem::ZERO; k + 1];
        v[k] = c;
        Poly { coeffs: v }
    }

    /// `PrimeMod` after checking that `a` is monic irreducible.
    pub fn prime(&self, a: &Poly) -> Result<PrimeMod> {
        if !a.is_monic() || !self.is_irreducible(a)? {
            return Err(Error::InvalidArgument(format!(
                "{} is not a prime polynomial",
                self.display(a)
            )));
        }
        Ok(PrimeMod::new_unchecked(a.clone()))
    }

    /// `|a| = q^deg a`, with `|0| = 0`.
    pub fn abs(&self, a: &Poly) -> Result<u128> {
        match a.degree() {
            None => Ok(0),
            Some(d) => (self.q() as u128).checked_pow(d as u32).ok_or(Error::Overflow("|a|")),
        }
    }

    pub fn add(&self, a: &Poly, b: &Poly) -> Poly {
        let f = &self.field;
        let (long, short) = if a.coeffs.len() >= b.coeffs.len() { (a, b) } else { (b, a) };
        let mut out = long.coeffs.clone();
        for (o, &s) in out.iter_mut().zip(&short.coeffs) {
            *o = f.add(*o, s);
        }
        Poly::from_trimmed(out)
    }

    pub fn neg(&self, a: &Poly) -> Poly {
        Poly { coeffs: a.coeffs.iter().map(|&c| self.field.neg(c)).collect() }
    }

    pub fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        let f = &self.field;
        let n = a.coeffs.len().max(b.coeffs.len());
        Poly::from_trimmed((0..n).map(|i| f.sub(a.coeff(i), b.coeff(i))).collect())
    }

    pub fn scale(&self, a: &Poly, c: Elem) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { coeffs: a.coeffs.iter().map(|&x| self.field.mul(x, c)).collect() }
    }

    /// `a * t^k`.
    pub fn shift(&self, a: &Poly, k: usize) -> Poly {
        if a.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![Elem::ZERO; k];
        v.extend_from_slice(&a.coeffs);
        Poly { coeffs: v }
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() || b.is_zero() {
            return Poly::zero();
        }
        let f = &self.field;
        let mut out = vec![Elem::ZERO; a.coeffs.len() + b.coeffs.len() - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(x, y));
            }
        }
        Poly::from_trimmed(out)
    }

    pub fn pow(&self, a: &Poly, mut e: u64) -> Poly {
        let mut acc = Poly::one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Quotient and remainder with `deg r < deg b`.
    pub fn div_rem(&self, a: &Poly, b: &Poly) -> Result<(Poly, Poly)> {
        let db = b.degree().ok_or(Error::DivisionByZero)?;
        let Some(da) = a.degree().filter(|&da| da >= db) else {
            return Ok((Poly::zero(), a.clone()));
        };
        let f = &self.field;
        let lead_inv = f.inv(b.leading().expect("nonzero"))?;
        let mut r = a.coeffs.clone();
        let mut quot = vec![Elem::ZERO; da - db + 1];
        for i in (db..=da).rev() {
            let c = r[i];
            if c.is_zero() {
                continue;
            }
            let k = f.mul(c, lead_inv);
            quot[i - db] = k;
            for (j, &bj) in b.coeffs.iter().enumerate() {
                r[i - db + j] = f.sub(r[i - db + j], f.mul(k, bj));
            }
        }
        r.truncate(db);
        Ok((Poly::from_trimmed(quot), Poly::from_trimmed(r)))
    }

    pub fn rem(&self, a: &Poly, b: &Poly) -> Result<Poly> {
        let db = b.degree().ok_or(Error::DivisionByZero)?;
        let Some(da) = a.degree().filter(|&da| da >= db) else {
            return Ok(a.clone());
        };
        let f = &self.field;
        let lead = b.leading().expect("nonzero");
        let lead_inv = if lead == Elem::ONE { Elem::ONE } else { f.inv(lead)? };
        let mut r = a.coeffs.clone();
        for i in (db..=da).rev() {
            let c = r[i];
            if c.is_zero() {
                continue;
            }
            let k = f.mul(c, lead_inv);
            for (j, &bj) in b.coeffs[..db].iter().enumerate() {
                r[i - db + j] = f.sub(r[i - db + j], f.mul(k, bj));
            }
        }
        r.truncate(db);
        Ok(Poly::from_trimmed(r))
    }

    /// `a / b` where `b` is known to divide `a`.
    pub fn exact_div(&self, a: &Poly, b: &Poly) -> Result<Poly> {
        let (quot, r) = self.div_rem(a, b)?;
        if !r.is_zero() {
            return Err(Error::Internal(format!(
                "{} does not divide {}",
                self.display(b),
                self.display(a)
            )));
        }
        Ok(quot)
    }

    pub fn divides(&self, d: &Poly, a: &Poly) -> Result<bool> {
        Ok(self.rem(a, d)?.is_zero())
    }

    /// Scales to leading coefficient one; zero stays zero.
    pub fn normalize(&self, a: &Poly) -> Poly {
        match a.leading() {
            None => Poly::zero(),
            Some(c) if c == Elem::ONE => a.clone(),
            Some(c) => self.scale(a, self.field.inv(c).expect("nonzero")),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, a: &Poly, b: &Poly) -> Result<Poly> {
        if a.is_zero() && b.is_zero() {
            return Err(Error::ZeroGcd);
        }
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let r = self.rem(&x, &y)?;
            x = std::mem::replace(&mut y, r);
        }
        Ok(self.normalize(&x))
    }

    /// `(g, s, u)` with `s a + u b = g = gcd(a, b)` monic.
    pub fn ext_gcd(&self, a: &Poly, b: &Poly) -> Result<(Poly, Poly, Poly)> {
        if a.is_zero() && b.is_zero() {
            return Err(Error::ZeroGcd);
        }
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        let (mut u0, mut u1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (quot, r) = self.div_rem(&r0, &r1)?;
            let s = self.sub(&s0, &self.mul(&quot, &s1));
            let u = self.sub(&u0, &self.mul(&quot, &u1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            u0 = std::mem::replace(&mut u1, u);
        }
        let c = self.field.inv(r0.leading().expect("nonzero"))?;
        Ok((self.scale(&r0, c), self.scale(&s0, c), self.scale(&u0, c)))
    }

    /// Inverse of `a` modulo `m`.
    pub fn inv_mod(&self, a: &Poly, m: &Poly) -> Result<Poly> {
        if m.degree().unwrap_or(0) == 0 {
            return Err(Error::ConstantInput);
        }
        let (g, s, _) = self.ext_gcd(&self.rem(a, m)?, m)?;
        if !g.is_one() {
            return Err(Error::NotCoprime);
        }
        self.rem(&s, m)
    }

    pub fn mul_mod(&self, a: &Poly, b: &Poly, m: &Poly) -> Result<Poly> {
        self.rem(&self.mul(a, b), m)
    }

    /// `base^e mod m` by square-and-multiply.
    pub fn pow_mod(&self, base: &Poly, e: &BigUint, m: &Poly) -> Result<Poly> {
        if m.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if m.degree() == Some(0) {
            return Err(Error::ConstantInput);
        }
        let base = self.rem(base, m)?;
        let mut acc = self.rem(&Poly::one(), m)?;
        for i in (0..e.bits()).rev() {
            acc = self.mul_mod(&acc, &acc, m)?;
            if e.bit(i) {
                acc = self.mul_mod(&acc, &base, m)?;
            }
        }
        Ok(acc)
    }

    pub fn pow_mod_u64(&self, base: &Poly, e: u64, m: &Poly) -> Result<Poly> {
        if m.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if m.degree() == Some(0) {
            return Err(Error::ConstantInput);
        }
        let base = self.rem(base, m)?;
        let mut acc = self.rem(&Poly::one(), m)?;
        for i in (0..u64::BITS - e.leading_zeros()).rev() {
            acc = self.mul_mod(&acc, &acc, m)?;
            if (e >> i) & 1 == 1 {
                acc = self.mul_mod(&acc, &base, m)?;
            }
        }
        Ok(acc)
    }

    /// Formal derivative `d/dt`.
    pub fn derivative(&self, a: &Poly) -> Poly {
        let f = &self.field;
        Poly::from_trimmed(
            a.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| f.mul(c, f.from_int((i as u64 % f.p() as u64) as i64)))
                .collect(),
        )
    }

    /// Value at a field element.
    pub fn eval_at(&self, a: &Poly, x: Elem) -> Elem {
        let f = &self.field;
        a.coeffs.iter().rev().fold(Elem::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// Canonical text: descending powers, zero terms and unit coefficients
    /// omitted, terms joined by ` + `.
    pub fn display<'a>(&'a self, a: &'a Poly) -> PolyDisplay<'a> {
        PolyDisplay { ring: self, poly: a, compact: false }
    }

    /// Canonical text with terms joined by a bare `+`.
    pub(crate) fn display_compact<'a>(&'a self, a: &'a Poly) -> PolyDisplay<'a> {
        PolyDisplay { ring: self, poly: a, compact: true }
    }

    /// Parses the polynomial grammar in `t` (and `u` over extension fields).
    pub fn parse(&self, text: &str) -> Result<Poly> {
        crate::parse::parse_poly(self, text)
    }
}

pub struct PolyDisplay<'a> {
    ring: &'a PolyRing,
    poly: &'a Poly,
    compact: bool,
}

impl PolyDisplay<'_> {
    pub(crate) fn is_monomial(&self) -> bool {
        let nonzero: Vec<_> = self.poly.coeffs.iter().filter(|c| !c.is_zero()).collect();
        nonzero.len() <= 1 && nonzero.iter().all(|&&c| self.ring.field.elem_is_monomial(c))
    }
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let field = &self.ring.field;
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        let sep = if self.compact { "+" } else { " + " };
        let mut first = true;
        for (k, &c) in self.poly.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(sep)?;
            }
            first = false;
            let coeff = if field.elem_is_monomial(c) {
                field.fmt_elem(c)
            } else {
                format!("({})", field.fmt_elem(c))
            };
            match (k, c == Elem::ONE) {
                (0, _) => f.write_str(&coeff)?,
                (1, true) => f.write_str("t")?,
                (1, false) => write!(f, "{coeff}*t")?,
                (_, true) => write!(f, "t^{k}")?,
                (_, false) => write!(f, "{coeff}*t^{k}")?,
            }
        }
        Ok(())
    }
}
