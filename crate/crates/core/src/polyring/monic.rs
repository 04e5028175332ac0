use std::ops::Range;

use super::{Poly, PolyRing};
use crate::field::Elem;
use crate::{Error, Result};

/// Monic polynomials of a fixed degree in odometer order: the constant
/// coefficient varies fastest. Index `k` maps to the polynomial whose lower
/// coefficients are the base-`q` digits of `k`.
#[derive(Clone, Debug)]
pub struct MonicIter {
    q: u32,
    next: u128,
    end: u128,
    current: Vec<Elem>,
}

impl Iterator for MonicIter {
    type Item = Poly;

    fn next(&mut self) -> Option<Poly> {
        if self.next >= self.end {
            return None;
        }
        let out = Poly { coeffs: self.current.clone() };
        self.next += 1;
        if self.next < self.end {
            let n = self.current.len() - 1;
            for c in &mut self.current[..n] {
                let v = c.index() + 1;
                if v < self.q {
                    *c = Elem::from_raw(v);
                    break;
                }
                *c = Elem::ZERO;
            }
        }
        Some(out)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.end - self.next).min(usize::MAX as u128) as usize;
        (left, Some(left))
    }
}

impl PolyRing {
    /// `q^n`, the number of monic polynomials of degree `n`.
    pub fn monic_count(&self, n: usize) -> Result<u128> {
        u32::try_from(n)
            .ok()
            .and_then(|n| (self.q() as u128).checked_pow(n))
            .ok_or(Error::Overflow("q^n"))
    }

    pub fn monic_from_index(&self, n: usize, mut index: u128) -> Poly {
        let q = self.q() as u128;
        let mut coeffs = Vec::with_capacity(n + 1);
        for _ in 0..n {
            coeffs.push(self.field().elem_unchecked((index % q) as u32));
            index /= q;
        }
        coeffs.push(Elem::ONE);
        Poly { coeffs }
    }

    /// All monic polynomials of degree `n`.
    pub fn monics(&self, n: usize) -> MonicIter {
        let count = self.monic_count(n).expect("q^n overflows u128");
        self.monic_range(n, 0..count)
    }

    /// The sub-range of [`PolyRing::monic`] with the given indices. Disjoint
    /// ranges partition the enumeration.
    pub fn monic_range(&self, n: usize, range: Range<u128>) -> MonicIter {
        let count = self.monic_count(n).expect("q^n overflows u128");
        let end = range.end.min(count);
        let start = range.start.min(end);
        MonicIter {
            q: self.field().q(),
            next: start,
            end,
            current: self.monic_from_index(n, start).coeffs,
        }
    }

    /// All polynomials of degree `< n` (the residues modulo a degree-`n`
    /// modulus), in the same odometer order.
    pub fn residues(&self, n: usize) -> impl Iterator<Item = Poly> {
        self.monics(n).map(|m| {
            let mut coeffs = m.coeffs;
            coeffs.pop();
            Poly::from_trimmed(coeffs)
        })
    }
}

#[cfg(test)]
mod tests {
    use crate::field::Field;
    use crate::polyring::{Poly, PolyRing};

    #[test]
    fn small_enumerations() {
        let r2 = PolyRing::new(Field::prime(2).unwrap());
        let lin: Vec<Poly> = r2.monics(1).collect();
        assert_eq!(lin, vec![Poly::t(), r2.parse("t+1").unwrap()]);
        assert_eq!(r2.monics(2).count(), 4);
        let r3 = PolyRing::new(Field::prime(3).unwrap());
        assert_eq!(r3.monics(0).collect::<Vec<_>>(), vec![Poly::one()]);
    }

    #[test]
    fn partitions_cover_in_order() {
        let r = PolyRing::new(Field::with_order(4).unwrap());
        let all: Vec<Poly> = r.monics(3).collect();
        assert_eq!(all.len(), 64);
        let mut pieces = Vec::new();
        for start in (0..64u128).step_by(10) {
            pieces.extend(r.monic_range(3, start..start + 10));
        }
        assert_eq!(all, pieces);
        for (k, a) in all.iter().enumerate() {
            assert_eq!(&r.monic_from_index(3, k as u128), a);
            assert!(a.is_monic() && a.degree() == Some(3));
        }
    }
}
