//! The Euler product `c_f = prod_P (1 - rho_f(P^2) / (|P|^2 - |P|))`.

use rayon::prelude::*;

use crate::bivariate::Admissible;
use crate::config::Limits;
use crate::polyring::{Poly, PolyRing, PrimeMod};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct DensityEstimate {
    /// Product over primes of degree `< m`.
    pub truncated_value: f64,
    /// Certified lower bound for the full product.
    pub lower: f64,
    /// Certified upper bound for the full product.
    pub upper: f64,
    pub m: u32,
    /// Uniform bound on `rho_f(P^2)` used for the tail.
    pub b: u128,
    /// Bound on minus the log of the tail product.
    pub tail: f64,
    pub positive: bool,
    /// First prime whose factor vanishes.
    pub culprit: Option<PrimeMod>,
}

impl DensityEstimate {
    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }
}

/// Outcome of the finite positivity test at one prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositivityRecord {
    pub prime: PrimeMod,
    /// A residue `C` modulo `P^2`, prime to `P`, with `f(C) != 0 mod P^2`.
    pub witness: Option<Poly>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Positivity {
    pub positive: bool,
    pub records: Vec<PositivityRecord>,
}

impl Positivity {
    pub fn culprit(&self) -> Option<&PrimeMod> {
        self.records.iter().find(|r| r.witness.is_none()).map(|r| &r.prime)
    }
}

/// Neumaier's compensated sum.
#[derive(Default)]
struct Sum {
    sum: f64,
    comp: f64,
}

impl Sum {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

fn pow_f64(q: u64, e: u32) -> f64 {
    (q as f64).powi(e as i32)
}

impl PolyRing {
    /// `max(deg_x f, q^(2 max(deg disc f, deg w_f)))`, a bound on
    /// `rho_f(P^2)` valid at every prime.
    pub fn rho_bound(&self, f: &Admissible) -> Result<u128> {
        let e = u32::try_from(2 * f.critical_degree()).map_err(|_| Error::Overflow("rho bound"))?;
        let small = (self.q() as u128).checked_pow(e).ok_or(Error::Overflow("rho bound"))?;
        Ok(small.max(f.degree_x() as u128))
    }

    /// Bound `T` on `sum_{deg P >= m} rho/(|P|^2 - |P|)` together with
    /// `x_max`, the largest single term, using `pi_q(i) <= q^i / i`:
    /// `T = (b/m) q / ((q-1)(q^m - 1))`.
    fn tail_bound(&self, b: u128, m: u32) -> (f64, f64) {
        let q = self.q();
        let qm = pow_f64(q, m);
        let x_max = b as f64 / (qm * qm - qm);
        let t = (b as f64 / m as f64) * q as f64 / ((q as f64 - 1.0) * (qm - 1.0));
        (t, x_max)
    }

    /// Smallest `m >= from` at which the tail can be certified.
    pub fn smallest_certifiable_cutoff(&self, f: &Admissible, from: u32) -> Result<u32> {
        let b = self.rho_bound(f)?;
        (from.max(1)..=u32::MAX)
            .find(|&m| self.tail_bound(b, m).1 < 1.0)
            .ok_or_else(|| Error::TailNotCertifiable { m: from, b: b.to_string() })
    }

    /// Truncated product over primes of degree `< m` with a certified
    /// interval for the full product.
    ///
    /// A vanishing factor gives the interval `[0, 0]` at any `m`. Otherwise
    /// the tail must be certifiable, which forces every prime where a factor
    /// could vanish to have degree `< m`; so `positive` always describes the
    /// full product.
    pub fn truncated_density(&self, f: &Admissible, m: u32, limits: &Limits) -> Result<DensityEstimate> {
        if m == 0 {
            return Err(Error::InvalidArgument("cutoff M must be at least 1".into()));
        }
        let b = self.rho_bound(f)?;
        let mut log_sum = Sum::default();
        let mut culprit = None;
        for d in 1..m as usize {
            limits.check_enumeration(self.monic_count(d)?)?;
            let norm = self.monic_count(d)?;
            let denom = norm.checked_mul(norm).map(|n2| n2 - norm);
            let denom_f = pow_f64(self.q(), 2 * d as u32) - pow_f64(self.q(), d as u32);
            let primes: Vec<PrimeMod> = self.primes(d)?.collect();
            let rhos = primes
                .par_iter()
                .map(|p| self.local_count(f, p, limits).map(|c| c.rho))
                .collect::<Result<Vec<_>>>()?;
            for (p, rho) in primes.into_iter().zip(rhos) {
                if Some(rho) == denom {
                    culprit.get_or_insert(p);
                } else if rho > 0 {
                    log_sum.add((-(rho as f64) / denom_f).ln_1p());
                }
            }
        }
        let (tail, x_max) = self.tail_bound(b, m);
        if culprit.is_some() {
            return Ok(DensityEstimate {
                truncated_value: 0.0,
                lower: 0.0,
                upper: 0.0,
                m,
                b,
                tail: 0.0,
                positive: false,
                culprit,
            });
        }
        if !(x_max < 1.0) {
            return Err(Error::TailNotCertifiable { m, b: b.to_string() });
        }
        let tail = tail / (1.0 - x_max);
        let trunc = log_sum.value().exp();
        Ok(DensityEstimate {
            truncated_value: trunc,
            lower: trunc * (-tail).exp(),
            upper: trunc,
            m,
            b,
            tail,
            positive: true,
            culprit: None,
        })
    }

    /// Decides whether the full product is nonzero by searching, at every
    /// prime of degree at most the critical degree, for a unit residue
    /// modulo `P^2` that is not a root. Stops at the first prime without one.
    pub fn positivity_check(&self, f: &Admissible, limits: &Limits) -> Result<Positivity> {
        let top = f.critical_degree();
        if top > 0 {
            limits.check_local(self.monic_count(2 * top)?)?;
        }
        let mut records = Vec::new();
        for d in 1..=top {
            for prime in self.primes(d)? {
                let p = prime.poly();
                let p2 = self.mul(p, p);
                let mut witness = None;
                for c in self.residues(2 * d) {
                    if self.rem(&c, p)?.is_zero() {
                        continue;
                    }
                    if !self.eval_mod(f.f(), &c, &p2)?.is_zero() {
                        witness = Some(c);
                        break;
                    }
                }
                let failed = witness.is_none();
                records.push(PositivityRecord { prime, witness });
                if failed {
                    return Ok(Positivity { positive: false, records });
                }
            }
        }
        Ok(Positivity { positive: true, records })
    }
}
