//! Finite fields `F_q`, `q = p^m`, as `F_p[u] / (g(u))` for a fixed monic
//! irreducible `g` of degree `m`.
//!
//! An element is stored as the base-`p` integer whose digits are its
//! coordinates in the basis `1, u, ..., u^(m-1)`; the lowest digit is the
//! constant coordinate. Zero is index 0 and one is index 1 in every field.
//! Multiplication goes through exp/log tables that are built with the
//! reference coordinate product, and inverses are precomputed by the
//! extended Euclidean algorithm on coordinate polynomials.

use std::fmt;
use std::sync::Arc;

use crate::config::MAX_FIELD_SIZE;
use crate::{Error, Result};

/// An element of a [`Field`]. Only meaningful together with the field that
/// produced it.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug, Default, PartialOrd, Ord)]
pub struct Elem(u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    /// The base-`p` encoding of the coordinate vector.
    #[inline]
    pub fn index(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub(crate) fn from_raw(index: u32) -> Elem {
        Elem(index)
    }
}

/// Field descriptor. Cheap to clone and safe to share between threads.
#[derive(Clone)]
pub struct Field(Arc<Inner>);

struct Inner {
    p: u32,
    m: u32,
    q: u32,
    /// Monic modulus over `F_p`, coefficients low to high, length `m + 1`.
    /// `None` for prime fields.
    modulus: Option<Vec<u32>>,
    exp: Vec<u32>,
    log: Vec<u32>,
    inv: Vec<u32>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.m == other.0.m && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.modulus {
            None => write!(f, "F_{}", self.0.q),
            Some(g) => write!(f, "F_{} = F_{}[u]/({})", self.0.q, self.0.p, fmt_coord_poly(g, "u")),
        }
    }
}

pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn prime_factors_u64(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Splits `q` into `(p, m)` with `q = p^m`.
pub fn split_prime_power(q: u64) -> Result<(u64, u32)> {
    let factors = prime_factors_u64(q);
    if factors.len() != 1 {
        return Err(Error::NotPrimePower(q));
    }
    let p = factors[0];
    let mut m = 0;
    let mut r = q;
    while r > 1 {
        r /= p;
        m += 1;
    }
    Ok((p, m))
}

impl Field {
    /// `F_p` for a prime `p`.
    pub fn prime(p: u64) -> Result<Field> {
        Field::new(p, 1, None)
    }

    /// `F_q` with the default modulus when `q` is not prime.
    pub fn with_order(q: u64) -> Result<Field> {
        let (p, m) = split_prime_power(q)?;
        Field::new(p, m, None)
    }

    /// Builds `F_{p^m}`. `modulus` lists the coefficients of a monic
    /// irreducible polynomial of degree `m` over `F_p`, lowest degree first;
    /// when absent and `m > 1` the lexicographically least one is used
    /// (constant coefficient compared first).
    pub fn new(p: u64, m: u32, modulus: Option<Vec<u64>>) -> Result<Field> {
        if !is_prime_u64(p) {
            return Err(Error::NotPrime(p));
        }
        if m == 0 {
            return Err(Error::ZeroExtensionDegree);
        }
        let q = (p as u128).checked_pow(m).filter(|&q| q <= MAX_FIELD_SIZE as u128);
        let Some(q) = q else {
            return Err(Error::FieldTooLarge { p, m });
        };
        let p32 = p as u32;
        let modulus = match (m, modulus) {
            (1, None) => None,
            (1, Some(g)) => {
                // A degree-1 modulus is accepted and ignored: F_p[u]/(u - c) = F_p.
                let g = reduce_coords(&g, p32);
                if g.len() != 2 || g[1] != 1 {
                    return Err(Error::InvalidModulus(format!(
                        "expected a monic polynomial of degree 1, got {}",
                        fmt_coord_poly(&g, "u")
                    )));
                }
                None
            }
            (_, Some(g)) => {
                let g = reduce_coords(&g, p32);
                if g.len() != m as usize + 1 || g[m as usize] != 1 {
                    return Err(Error::InvalidModulus(format!(
                        "expected a monic polynomial of degree {m}, got {}",
                        fmt_coord_poly(&g, "u")
                    )));
                }
                if !coord_poly_irreducible(&g, p32)? {
                    return Err(Error::InvalidModulus(format!(
                        "{} is reducible over F_{p}",
                        fmt_coord_poly(&g, "u")
                    )));
                }
                Some(g)
            }
            (_, None) => Some(default_modulus(p32, m)?),
        };
        Ok(Field(Arc::new(Inner::build(p32, m, q as u32, modulus))))
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.0.p
    }

    #[inline]
    pub fn m(&self) -> u32 {
        self.0.m
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.0.q
    }

    pub fn modulus(&self) -> Option<&[u32]> {
        self.0.modulus.as_deref()
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.m == 1
    }

    /// Element with the given base-`p` index.
    pub fn elem(&self, index: u64) -> Result<Elem> {
        if index >= self.0.q as u64 {
            return Err(Error::ElementOutOfRange { value: index, q: self.0.q });
        }
        Ok(Elem(index as u32))
    }

    /// Element with the given index, which the caller guarantees is `< q`.
    #[inline]
    pub(crate) fn elem_unchecked(&self, index: u32) -> Elem {
        debug_assert!(index < self.0.q);
        Elem(index)
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, c: i64) -> Elem {
        Elem(c.rem_euclid(self.0.p as i64) as u32)
    }

    /// The class of `u`, or `None` for prime fields.
    pub fn generator(&self) -> Option<Elem> {
        (self.0.m > 1).then_some(Elem(self.0.p))
    }

    pub fn coords(&self, a: Elem) -> Vec<u32> {
        let p = self.0.p;
        let mut v = a.0;
        (0..self.0.m)
            .map(|_| {
                let d = v % p;
                v /= p;
                d
            })
            .collect()
    }

    pub fn from_coords(&self, coords: &[u32]) -> Result<Elem> {
        if coords.len() != self.0.m as usize {
            return Err(Error::InvalidArgument(format!(
                "expected {} coordinates, got {}",
                self.0.m,
                coords.len()
            )));
        }
        let p = self.0.p;
        let mut idx = 0u32;
        for &c in coords.iter().rev() {
            if c >= p {
                return Err(Error::ElementOutOfRange { value: c as u64, q: p });
            }
            idx = idx * p + c;
        }
        Ok(Elem(idx))
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let inner = &*self.0;
        if inner.p == 2 {
            return Elem(a.0 ^ b.0);
        }
        if inner.m == 1 {
            let s = a.0 + b.0;
            return Elem(if s >= inner.p { s - inner.p } else { s });
        }
        let p = inner.p;
        let (mut x, mut y, mut out, mut place) = (a.0, b.0, 0u32, 1u32);
        while x > 0 || y > 0 {
            let d = (x % p + y % p) % p;
            out += d * place;
            place *= p;
            x /= p;
            y /= p;
        }
        Elem(out)
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        let inner = &*self.0;
        if inner.p == 2 || a.0 == 0 {
            return a;
        }
        if inner.m == 1 {
            return Elem(inner.p - a.0);
        }
        let p = inner.p;
        let (mut x, mut out, mut place) = (a.0, 0u32, 1u32);
        while x > 0 {
            out += ((p - x % p) % p) * place;
            place *= p;
            x /= p;
        }
        Elem(out)
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem::ZERO;
        }
        let inner = &*self.0;
        Elem(inner.exp[(inner.log[a.0 as usize] + inner.log[b.0 as usize]) as usize])
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a.0 == 0 {
            return Err(Error::ZeroInverse);
        }
        Ok(Elem(self.0.inv[a.0 as usize]))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return Elem::ONE;
        }
        if a.0 == 0 {
            return Elem::ZERO;
        }
        let inner = &*self.0;
        let order = (inner.q - 1) as u128;
        let k = (inner.log[a.0 as usize] as u128 * (e as u128 % order)) % order;
        Elem(inner.exp[k as usize])
    }

    /// The unique `r` with `r^p = a`, computed as `a^(q/p)`.
    pub fn frobenius_root(&self, a: Elem) -> Elem {
        self.pow(a, (self.0.q / self.0.p) as u64)
    }

    /// Product by schoolbook multiplication of coordinate polynomials
    /// followed by reduction modulo the field modulus. Used to build the
    /// tables and as a cross-check for them.
    pub fn mul_by_coords(&self, a: Elem, b: Elem) -> Elem {
        let p = self.0.p;
        let x = self.coords(a);
        let y = self.coords(b);
        let prod = match &self.0.modulus {
            None => vec![((x[0] as u64 * y[0] as u64) % p as u64) as u32],
            Some(g) => coord_mulmod(&x, &y, g, p),
        };
        let mut padded = prod;
        padded.resize(self.0.m as usize, 0);
        self.from_coords(&padded).expect("reduced coordinates are in range")
    }

    /// Inverse by the extended Euclidean algorithm on the coordinate
    /// polynomial (on integers for prime fields).
    pub fn inv_by_euclid(&self, a: Elem) -> Result<Elem> {
        if a.0 == 0 {
            return Err(Error::ZeroInverse);
        }
        let p = self.0.p;
        match &self.0.modulus {
            None => Ok(Elem(inv_mod_u32(a.0, p))),
            Some(g) => {
                let x = trim(self.coords(a));
                let mut r = coord_inverse(&x, g, p);
                r.resize(self.0.m as usize, 0);
                self.from_coords(&r)
            }
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.0.q).map(Elem)
    }

    pub fn fmt_elem(&self, a: Elem) -> String {
        if self.0.m == 1 {
            return a.0.to_string();
        }
        fmt_coord_poly(&trim(self.coords(a)), "u")
    }

    /// Whether the canonical text of `a` is a single term.
    pub(crate) fn elem_is_monomial(&self, a: Elem) -> bool {
        self.0.m == 1 || self.coords(a).iter().filter(|&&c| c != 0).count() <= 1
    }
}

impl Inner {
    fn build(p: u32, m: u32, q: u32, modulus: Option<Vec<u32>>) -> Inner {
        let mut inner = Inner {
            p,
            m,
            q,
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
            inv: Vec::new(),
        };
        let shell = Field(Arc::new(Inner {
            p,
            m,
            q,
            modulus: inner.modulus.clone(),
            exp: Vec::new(),
            log: Vec::new(),
            inv: Vec::new(),
        }));
        let order = (q - 1) as u64;
        let cofactors: Vec<u64> = prime_factors_u64(order).iter().map(|r| order / r).collect();
        let pow_ref = |g: Elem, mut e: u64| {
            let (mut acc, mut base) = (Elem::ONE, g);
            while e > 0 {
                if e & 1 == 1 {
                    acc = shell.mul_by_coords(acc, base);
                }
                base = shell.mul_by_coords(base, base);
                e >>= 1;
            }
            acc
        };
        let gen = (1..q)
            .map(Elem)
            .find(|&g| cofactors.iter().all(|&c| pow_ref(g, c) != Elem::ONE))
            .expect("the multiplicative group of a finite field is cyclic");

        let n = (q - 1) as usize;
        let mut exp = vec![0u32; 2 * n.max(1)];
        let mut log = vec![0u32; q as usize];
        let mut cur = Elem::ONE;
        for i in 0..n {
            exp[i] = cur.0;
            log[cur.0 as usize] = i as u32;
            cur = shell.mul_by_coords(cur, gen);
        }
        for i in n..2 * n {
            exp[i] = exp[i - n];
        }
        let mut inv = vec![0u32; q as usize];
        for a in 1..q {
            inv[a as usize] = shell.inv_by_euclid(Elem(a)).expect("nonzero").0;
        }
        inner.exp = exp;
        inner.log = log;
        inner.inv = inv;
        inner
    }
}

// ---------------------------------------------------------------------------
// Dense polynomials over F_p on raw residues, lowest degree first. These only
// back the coordinate representation; general polynomial work lives in
// `polyring`.

fn trim(mut v: Vec<u32>) -> Vec<u32> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn reduce_coords(g: &[u64], p: u32) -> Vec<u32> {
    trim(g.iter().map(|&c| (c % p as u64) as u32).collect())
}

fn inv_mod_u32(a: u32, p: u32) -> u32 {
    let (mut r0, mut r1) = (p as i64, a as i64);
    let (mut s0, mut s1) = (0i64, 1i64);
    while r1 != 0 {
        let k = r0 / r1;
        (r0, r1) = (r1, r0 - k * r1);
        (s0, s1) = (s1, s0 - k * s1);
    }
    debug_assert_eq!(r0, 1);
    s0.rem_euclid(p as i64) as u32
}

fn coord_mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    trim(out.into_iter().map(|c| c as u32).collect())
}

/// Remainder and quotient of `a` by a nonzero `b`.
fn coord_divrem(a: &[u32], b: &[u32], p: u32) -> (Vec<u32>, Vec<u32>) {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let lead_inv = inv_mod_u32(*b.last().expect("nonzero divisor"), p) as u64;
    let mut quot = vec![0u32; r.len() - b.len() + 1];
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let c = (*r.last().unwrap() as u64 * lead_inv % p as u64) as u32;
        quot[shift] = c;
        for (i, &bi) in b.iter().enumerate() {
            let sub = (c as u64 * bi as u64 % p as u64) as u32;
            r[shift + i] = (r[shift + i] + p - sub) % p;
        }
        r = trim(r);
    }
    (trim(quot), r)
}

fn coord_mulmod(a: &[u32], b: &[u32], g: &[u32], p: u32) -> Vec<u32> {
    coord_divrem(&coord_mul(a, b, p), g, p).1
}

fn coord_sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect(),
    )
}

/// Inverse of a nonzero `a` modulo the irreducible `g`.
fn coord_inverse(a: &[u32], g: &[u32], p: u32) -> Vec<u32> {
    let (mut r0, mut r1) = (g.to_vec(), coord_divrem(a, g, p).1);
    let (mut s0, mut s1) = (Vec::new(), vec![1u32]);
    while !r1.is_empty() {
        let (quot, rem) = coord_divrem(&r0, &r1, p);
        let s2 = coord_sub(&s0, &coord_mul(&quot, &s1, p), p);
        r0 = std::mem::replace(&mut r1, rem);
        s0 = std::mem::replace(&mut s1, s2);
    }
    // r0 is a nonzero constant because g is irreducible.
    let c = inv_mod_u32(r0[0], p) as u64;
    let s: Vec<u32> = s0.iter().map(|&x| (x as u64 * c % p as u64) as u32).collect();
    coord_divrem(&s, g, p).1
}

/// Irreducibility of a monic coordinate polynomial over `F_p`: exhaustive
/// search for a monic factor of degree at most `deg / 2` up to degree 4,
/// Rabin's test beyond.
fn coord_poly_irreducible(g: &[u32], p: u32) -> Result<bool> {
    let deg = g.len() - 1;
    if deg <= 4 {
        for d in 1..=deg / 2 {
            let count = (p as u64).pow(d as u32);
            for k in 0..count {
                let mut cand = Vec::with_capacity(d + 1);
                let mut v = k;
                for _ in 0..d {
                    cand.push((v % p as u64) as u32);
                    v /= p as u64;
                }
                cand.push(1);
                if coord_divrem(g, &cand, p).1.is_empty() {
                    return Ok(false);
                }
            }
        }
        return Ok(true);
    }
    let base = Field::prime(p as u64)?;
    let ring = crate::polyring::PolyRing::new(base.clone());
    let poly = ring.from_coeffs(g.iter().map(|&c| base.elem_unchecked(c)).collect());
    ring.is_irreducible(&poly)
}

fn default_modulus(p: u32, m: u32) -> Result<Vec<u32>> {
    let count = (p as u64).pow(m);
    for k in 0..count {
        // The constant coefficient is the most significant digit.
        let mut c = vec![0u32; m as usize + 1];
        let mut v = k;
        for i in (0..m as usize).rev() {
            c[i] = (v % p as u64) as u32;
            v /= p as u64;
        }
        c[m as usize] = 1;
        if coord_poly_irreducible(&c, p)? {
            return Ok(c);
        }
    }
    Err(Error::Internal(format!("no irreducible polynomial of degree {m} over F_{p}")))
}

fn fmt_coord_poly(c: &[u32], var: &str) -> String {
    if c.is_empty() {
        return "0".into();
    }
    let mut terms = Vec::new();
    for (k, &ck) in c.iter().enumerate().rev() {
        if ck == 0 {
            continue;
        }
        let mono = match k {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{k}"),
        };
        terms.push(match (ck, k) {
            (_, 0) => ck.to_string(),
            (1, _) => mono,
            _ => format!("{ck}*{mono}"),
        });
    }
    terms.join("+")
}
