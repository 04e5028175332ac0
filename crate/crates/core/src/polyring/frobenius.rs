//! `F_q[t]` as a free module of rank `p` over `F_q[t^p]`.

use super::{Poly, PolyRing};
use crate::field::Elem;
use crate::{Error, Result};

impl PolyRing {
    /// The unique `(a_0, ..., a_{p-1})` with `a = sum_j t^j a_j(t)^p`.
    ///
    /// The coefficient of `t^(j + p i)` in `a` is the `p`-th power of the
    /// coefficient of `t^i` in `a_j`.
    pub fn frobenius_decompose(&self, a: &Poly) -> Vec<Poly> {
        let f = self.field();
        let p = f.p() as usize;
        let mut parts: Vec<Vec<Elem>> = vec![Vec::new(); p];
        for (k, &c) in a.coeffs().iter().enumerate() {
            let part = &mut parts[k % p];
            part.resize(k / p + 1, Elem::ZERO);
            part[k / p] = f.frobenius_root(c);
        }
        parts.into_iter().map(Poly::from_trimmed).collect()
    }

    /// `sum_j t^j a_j^p`, computed with ring multiplication.
    pub fn frobenius_recompose(&self, parts: &[Poly]) -> Result<Poly> {
        let p = self.field().p() as usize;
        if parts.len() != p {
            return Err(Error::InvalidArgument(format!("expected {p} components, got {}", parts.len())));
        }
        Ok(parts.iter().enumerate().fold(Poly::zero(), |acc, (j, aj)| {
            self.add(&acc, &self.shift(&self.pow(aj, p as u64), j))
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    #[test]
    fn examples() {
        let r = PolyRing::new(Field::prime(2).unwrap());
        let a = r.parse("t^3+t").unwrap();
        assert_eq!(r.frobenius_decompose(&a), vec![Poly::zero(), r.parse("t+1").unwrap()]);
        assert_eq!(r.frobenius_decompose(&Poly::t()), vec![Poly::zero(), Poly::one()]);
        assert_eq!(r.frobenius_decompose(&Poly::one()), vec![Poly::one(), Poly::zero()]);
        let r3 = PolyRing::new(Field::prime(3).unwrap());
        assert_eq!(r3.frobenius_decompose(&Poly::one()), vec![Poly::one(), Poly::zero(), Poly::zero()]);
    }

    #[test]
    fn roundtrip_and_degree_bounds_exhaustive() {
        for q in [2, 3, 4, 9] {
            let r = PolyRing::new(Field::with_order(q).unwrap());
            let p = r.field().p() as usize;
            for n in 0..=4usize {
                for a in r.monics(n) {
                    let parts = r.frobenius_decompose(&a);
                    assert_eq!(r.frobenius_recompose(&parts).unwrap(), a);
                    for part in &parts {
                        assert!(part.degree().map_or(true, |d| d <= n / p));
                    }
                    let lead = &parts[n % p];
                    assert!(lead.is_monic() && lead.degree() == Some(n / p));
                }
            }
        }
    }
}
