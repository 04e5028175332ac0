//! Brute-force reference arithmetic over prime fields, written without the
//! library so results can be compared against it.

#![allow(dead_code)]

use sqfree_core::{BiPoly, Field, Poly, PolyRing};

pub type P = Vec<u32>;

#[derive(Clone, Copy)]
pub struct Fp {
    pub p: u32,
}

impl Fp {
    pub fn trim(mut a: P) -> P {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    fn inv(&self, a: u32) -> u32 {
        (1..self.p).find(|&b| a * b % self.p == 1).expect("invertible")
    }

    pub fn add(&self, a: &[u32], b: &[u32]) -> P {
        let n = a.len().max(b.len());
        Self::trim(
            (0..n)
                .map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % self.p)
                .collect(),
        )
    }

    pub fn mul(&self, a: &[u32], b: &[u32]) -> P {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u32; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % self.p;
            }
        }
        Self::trim(out)
    }

    pub fn rem(&self, a: &[u32], b: &[u32]) -> P {
        let mut r = Self::trim(a.to_vec());
        let b = Self::trim(b.to_vec());
        let db = b.len() - 1;
        let lead_inv = self.inv(b[db]);
        while r.len() > db {
            let top = r.len() - 1;
            let c = r[top] * lead_inv % self.p;
            for i in 0..=db {
                let idx = top - db + i;
                r[idx] = (r[idx] + self.p * self.p - c * b[i] % self.p) % self.p;
            }
            r = Self::trim(r);
        }
        r
    }

    pub fn gcd_is_one(&self, a: &[u32], b: &[u32]) -> bool {
        let (mut a, mut b) = (Self::trim(a.to_vec()), Self::trim(b.to_vec()));
        while !b.is_empty() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        a.len() == 1
    }

    /// Polynomials of degree `< n` in odometer order.
    pub fn residues(&self, n: usize) -> Vec<P> {
        let total = (self.p as usize).pow(n as u32);
        (0..total)
            .map(|mut k| {
                let mut c = Vec::with_capacity(n);
                for _ in 0..n {
                    c.push((k % self.p as usize) as u32);
                    k /= self.p as usize;
                }
                Self::trim(c)
            })
            .collect()
    }

    pub fn monics(&self, n: usize) -> Vec<P> {
        self.residues(n)
            .into_iter()
            .map(|mut r| {
                r.resize(n, 0);
                r.push(1);
                r
            })
            .collect()
    }

    /// Irreducible by trial division over every monic of degree up to half.
    pub fn is_prime(&self, a: &[u32]) -> bool {
        let n = a.len() - 1;
        n >= 1 && (1..=n / 2).all(|d| self.monics(d).iter().all(|m| !self.rem(a, m).is_empty()))
    }

    pub fn primes(&self, n: usize) -> Vec<P> {
        self.monics(n).into_iter().filter(|a| self.is_prime(a)).collect()
    }

    /// No prime square of degree up to half divides `v`; zero is not
    /// square-free.
    pub fn is_squarefree(&self, v: &[u32]) -> bool {
        if v.is_empty() {
            return false;
        }
        let n = v.len() - 1;
        (1..=n / 2).all(|d| {
            self.primes(d).iter().all(|pr| !self.rem(v, &self.mul(pr, pr)).is_empty())
        })
    }

    pub fn eval(&self, f: &[P], a: &[u32]) -> P {
        f.iter().rev().fold(Vec::new(), |acc, c| self.add(&self.mul(&acc, a), c))
    }

    /// `rho_f(D)` for any modulus `D`.
    pub fn rho(&self, f: &[P], d: &[u32]) -> u64 {
        self.residues(d.len() - 1)
            .iter()
            .filter(|c| self.gcd_is_one(c, d) && self.rem(&self.eval(f, c), d).is_empty())
            .count() as u64
    }

    /// Solutions of `f(C) = 0 mod D` with `deg C < deg D`.
    pub fn roots(&self, f: &[P], d: &[u32]) -> u64 {
        self.residues(d.len() - 1)
            .iter()
            .filter(|c| self.rem(&self.eval(f, c), d).is_empty())
            .count() as u64
    }
}

pub fn ring(q: u64) -> PolyRing {
    PolyRing::new(Field::with_order(q).unwrap())
}

pub fn raw(a: &Poly) -> P {
    a.coeffs().iter().map(|c| c.index()).collect()
}

pub fn raw_bi(f: &BiPoly) -> Vec<P> {
    f.xcoeffs().iter().map(raw).collect()
}

pub fn poly(r: &PolyRing, a: &[u32]) -> Poly {
    r.from_ints(&a.iter().map(|&c| c as i64).collect::<Vec<_>>())
}

/// Admissible polynomials used across the property tests, with the field
/// size they are read over.
pub const TEST_SET: &[(u64, &str)] = &[
    (2, "x^3 + t"),
    (2, "x"),
    (2, "x^2 + x + t"),
    (2, "t*x^2 + x + 1"),
    (2, "(x+1)*(x+1+t^2)"),
    (2, "x^3 + t^2*x + t + 1"),
    (2, "(t^2+t+1)*x^2 + t*x + 1"),
    (3, "x^2 + t"),
    (3, "x^3 + t*x + 1"),
    (3, "t*x^2 + (t+1)*x + 2"),
];
