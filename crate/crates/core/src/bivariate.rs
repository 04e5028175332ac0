//! Polynomials `f(x)` with coefficients in `F_q[t]`.

use std::fmt;

use crate::polyring::{Poly, PolyRing};
use crate::{Error, Result};

/// `f = sum_i c_i(t) x^i`, stored lowest power of `x` first with a nonzero
/// leading coefficient `w_f`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct BiPoly {
    xcoeffs: Vec<Poly>,
}

impl BiPoly {
    pub fn zero() -> BiPoly {
        BiPoly { xcoeffs: Vec::new() }
    }

    pub fn x() -> BiPoly {
        BiPoly { xcoeffs: vec![Poly::zero(), Poly::one()] }
    }

    pub fn constant(c: Poly) -> BiPoly {
        BiPoly::from_xcoeffs(vec![c])
    }

    pub fn from_xcoeffs(mut xcoeffs: Vec<Poly>) -> BiPoly {
        while xcoeffs.last().is_some_and(Poly::is_zero) {
            xcoeffs.pop();
        }
        BiPoly { xcoeffs }
    }

    pub fn xcoeffs(&self) -> &[Poly] {
        &self.xcoeffs
    }

    /// Coefficient of `x^i`.
    pub fn xcoeff(&self, i: usize) -> Poly {
        self.xcoeffs.get(i).cloned().unwrap_or_default()
    }

    /// Degree in `x`.
    pub fn degree_x(&self) -> Option<usize> {
        self.xcoeffs.len().checked_sub(1)
    }

    /// `w_f`, the leading coefficient as a polynomial in `x`.
    pub fn leading(&self) -> Option<&Poly> {
        self.xcoeffs.last()
    }

    pub fn is_zero(&self) -> bool {
        self.xcoeffs.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    X,
    T,
}

/// An `f` that passed [`PolyRing::admit`], with the data the local counts
/// and the density need.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Admissible {
    f: BiPoly,
    df_dx: BiPoly,
    discriminant: Poly,
}

impl Admissible {
    pub fn f(&self) -> &BiPoly {
        &self.f
    }

    pub fn derivative_x(&self) -> &BiPoly {
        &self.df_dx
    }

    pub fn discriminant(&self) -> &Poly {
        &self.discriminant
    }

    pub fn degree_x(&self) -> usize {
        self.f.degree_x().expect("admissible f is nonzero")
    }

    pub fn leading(&self) -> &Poly {
        self.f.leading().expect("admissible f is nonzero")
    }

    pub fn discriminant_degree(&self) -> usize {
        self.discriminant.degree().expect("admissible f has a nonzero discriminant")
    }

    pub fn leading_degree(&self) -> usize {
        self.leading().degree().expect("nonzero")
    }

    /// `max(deg disc f, deg w_f)`; primes of larger degree are unramified
    /// and do not divide the leading coefficient.
    pub fn critical_degree(&self) -> usize {
        self.discriminant_degree().max(self.leading_degree())
    }
}

impl PolyRing {
    pub fn parse_bipoly(&self, text: &str) -> Result<BiPoly> {
        crate::parse::parse_bipoly(self, text)
    }

    pub fn display_bipoly<'a>(&'a self, f: &'a BiPoly) -> BiPolyDisplay<'a> {
        BiPolyDisplay { ring: self, f }
    }

    pub fn bi_add(&self, a: &BiPoly, b: &BiPoly) -> BiPoly {
        let n = a.xcoeffs.len().max(b.xcoeffs.len());
        BiPoly::from_xcoeffs((0..n).map(|i| self.add(&a.xcoeff(i), &b.xcoeff(i))).collect())
    }

    pub fn bi_sub(&self, a: &BiPoly, b: &BiPoly) -> BiPoly {
        let n = a.xcoeffs.len().max(b.xcoeffs.len());
        BiPoly::from_xcoeffs((0..n).map(|i| self.sub(&a.xcoeff(i), &b.xcoeff(i))).collect())
    }

    pub fn bi_neg(&self, a: &BiPoly) -> BiPoly {
        BiPoly { xcoeffs: a.xcoeffs.iter().map(|c| self.neg(c)).collect() }
    }

    pub fn bi_mul(&self, a: &BiPoly, b: &BiPoly) -> BiPoly {
        if a.is_zero() || b.is_zero() {
            return BiPoly::zero();
        }
        let mut out = vec![Poly::zero(); a.xcoeffs.len() + b.xcoeffs.len() - 1];
        for (i, x) in a.xcoeffs.iter().enumerate() {
            for (j, y) in b.xcoeffs.iter().enumerate() {
                out[i + j] = self.add(&out[i + j], &self.mul(x, y));
            }
        }
        BiPoly::from_xcoeffs(out)
    }

    /// Multiplies every coefficient by `c`.
    pub fn bi_scale(&self, a: &BiPoly, c: &Poly) -> BiPoly {
        BiPoly::from_xcoeffs(a.xcoeffs.iter().map(|x| self.mul(x, c)).collect())
    }

    pub fn bi_pow(&self, a: &BiPoly, mut e: u64) -> BiPoly {
        let mut acc = BiPoly::constant(Poly::one());
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.bi_mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.bi_mul(&base, &base);
            }
        }
        acc
    }

    fn bi_exact_div_scalar(&self, a: &BiPoly, c: &Poly) -> Result<BiPoly> {
        Ok(BiPoly::from_xcoeffs(
            a.xcoeffs.iter().map(|x| self.exact_div(x, c)).collect::<Result<_>>()?,
        ))
    }

    /// `f(a)` by Horner's rule.
    pub fn eval(&self, f: &BiPoly, a: &Poly) -> Poly {
        f.xcoeffs
            .iter()
            .rev()
            .fold(Poly::zero(), |acc, c| self.add(&self.mul(&acc, a), c))
    }

    /// `f(a) mod m`, reducing after every Horner step.
    pub fn eval_mod(&self, f: &BiPoly, a: &Poly, m: &Poly) -> Result<Poly> {
        let a = self.rem(a, m)?;
        let mut acc = Poly::zero();
        for c in f.xcoeffs.iter().rev() {
            acc = self.rem(&self.add(&self.mul(&acc, &a), c), m)?;
        }
        Ok(acc)
    }

    pub fn derivative_x(&self, f: &BiPoly) -> BiPoly {
        let field = self.field();
        let p = field.p() as u64;
        BiPoly::from_xcoeffs(
            f.xcoeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| self.scale(c, field.from_int((i as u64 % p) as i64)))
                .collect(),
        )
    }

    pub fn derivative_t(&self, f: &BiPoly) -> BiPoly {
        BiPoly::from_xcoeffs(f.xcoeffs.iter().map(|c| self.derivative(c)).collect())
    }

    /// Formal partial derivative.
    pub fn partial(&self, f: &BiPoly, var: Var) -> BiPoly {
        match var {
            Var::X => self.derivative_x(f),
            Var::T => self.derivative_t(f),
        }
    }

    /// Monic gcd of the coefficients.
    pub fn content(&self, f: &BiPoly) -> Result<Poly> {
        let mut g = Poly::zero();
        for c in &f.xcoeffs {
            if c.is_zero() {
                continue;
            }
            g = self.gcd(&g, c)?;
            if g.is_one() {
                break;
            }
        }
        if g.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(g)
    }

    pub fn primitive_part(&self, f: &BiPoly) -> Result<BiPoly> {
        let c = self.content(f)?;
        self.bi_exact_div_scalar(f, &c)
    }

    /// Determinant of the Sylvester matrix of `a` and `b`, taken with formal
    /// degrees `da >= deg a` and `db >= deg b`, by fraction-free (Bareiss)
    /// elimination over `F_q[t]`.
    fn sylvester_det(&self, a: &BiPoly, da: usize, b: &BiPoly, db: usize) -> Result<Poly> {
        let size = da + db;
        let mut m = vec![vec![Poly::zero(); size]; size];
        for row in 0..db {
            for k in 0..=da {
                m[row][row + k] = a.xcoeff(da - k);
            }
        }
        for row in 0..da {
            for k in 0..=db {
                m[db + row][row + k] = b.xcoeff(db - k);
            }
        }
        self.bareiss_det(m)
    }

    fn bareiss_det(&self, mut m: Vec<Vec<Poly>>) -> Result<Poly> {
        let n = m.len();
        if n == 0 {
            return Ok(Poly::one());
        }
        let mut negate = false;
        let mut prev = Poly::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                let Some(pivot) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                    return Ok(Poly::zero());
                };
                m.swap(k, pivot);
                negate = !negate;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = self.sub(&self.mul(&m[k][k], &m[i][j]), &self.mul(&m[i][k], &m[k][j]));
                    m[i][j] = self.exact_div(&v, &prev)?;
                }
                m[i][k] = Poly::zero();
            }
            prev = m[k][k].clone();
        }
        let det = m[n - 1][n - 1].clone();
        Ok(if negate { self.neg(&det) } else { det })
    }

    /// `Res_x(a, b)` with respect to the actual degrees, via the Sylvester
    /// determinant.
    pub fn resultant(&self, a: &BiPoly, b: &BiPoly) -> Result<Poly> {
        match (a.degree_x(), b.degree_x()) {
            (Some(da), Some(db)) => self.sylvester_det(a, da, b, db),
            _ => Ok(Poly::zero()),
        }
    }

    /// `Res_x(a, b)` by the subresultant pseudo-remainder sequence.
    pub fn resultant_subresultant(&self, a: &BiPoly, b: &BiPoly) -> Result<Poly> {
        let (Some(da), Some(db)) = (a.degree_x(), b.degree_x()) else {
            return Ok(Poly::zero());
        };
        if da == 0 {
            return Ok(self.pow(a.leading().expect("nonzero"), db as u64));
        }
        if db == 0 {
            return Ok(self.pow(b.leading().expect("nonzero"), da as u64));
        }
        let ca = self.content(a)?;
        let cb = self.content(b)?;
        let scale = self.mul(&self.pow(&ca, db as u64), &self.pow(&cb, da as u64));
        let mut big = self.bi_exact_div_scalar(a, &ca)?;
        let mut small = self.bi_exact_div_scalar(b, &cb)?;
        let mut negate = false;
        if da < db {
            std::mem::swap(&mut big, &mut small);
            if da % 2 == 1 && db % 2 == 1 {
                negate = !negate;
            }
        }
        let mut g = Poly::one();
        let mut h = Poly::one();
        loop {
            let d_big = big.degree_x().expect("nonzero");
            let d_small = small.degree_x().expect("nonzero");
            let delta = d_big - d_small;
            if d_big % 2 == 1 && d_small % 2 == 1 {
                negate = !negate;
            }
            let r = self.pseudo_rem(&big, &small)?;
            big = small;
            let divisor = self.mul(&g, &self.pow(&h, delta as u64));
            small = self.bi_exact_div_scalar(&r, &divisor)?;
            g = big.leading().expect("nonzero").clone();
            if delta > 0 {
                h = self.exact_div(&self.pow(&g, delta as u64), &self.pow(&h, delta as u64 - 1))?;
            }
            match small.degree_x() {
                None => return Ok(Poly::zero()),
                Some(0) => break,
                Some(_) => {}
            }
        }
        let d_big = big.degree_x().expect("nonzero") as u64;
        let last = small.leading().expect("nonzero");
        let h = self.exact_div(&self.pow(last, d_big), &self.pow(&h, d_big - 1))?;
        let res = self.mul(&scale, &h);
        Ok(if negate { self.neg(&res) } else { res })
    }

    /// `lc(b)^(deg a - deg b + 1) a mod b`.
    fn pseudo_rem(&self, a: &BiPoly, b: &BiPoly) -> Result<BiPoly> {
        let db = b.degree_x().ok_or(Error::DivisionByZero)?;
        let lead = b.leading().expect("nonzero");
        let mut r = a.clone();
        let mut steps = (a.degree_x().unwrap_or(0) + 1).saturating_sub(db);
        while let Some(dr) = r.degree_x().filter(|&dr| dr >= db) {
            let top = r.leading().expect("nonzero").clone();
            let mut shifted = vec![Poly::zero(); dr - db];
            shifted.extend(b.xcoeffs.iter().map(|c| self.mul(c, &top)));
            r = self.bi_sub(&self.bi_scale(&r, lead), &BiPoly::from_xcoeffs(shifted));
            steps -= 1;
        }
        Ok(self.bi_scale(&r, &self.pow(lead, steps as u64)))
    }

    /// Classical discriminant over `F_q(t)`:
    /// `(-1)^(n(n-1)/2) Res_{n,n-1}(f, df/dx) / w_f`, where the resultant
    /// uses the formal degree `n - 1` for the derivative. Linear `f` has
    /// discriminant 1; zero derivative gives 0.
    pub fn discriminant(&self, f: &BiPoly) -> Result<Poly> {
        let n = f.degree_x().ok_or(Error::ZeroPolynomial)?;
        match n {
            0 => return Err(Error::ConstantInput),
            1 => return Ok(Poly::one()),
            _ => {}
        }
        let df = self.derivative_x(f);
        if df.is_zero() {
            return Ok(Poly::zero());
        }
        let res = self.sylvester_det(f, n, &df, n - 1)?;
        self.normalize_discriminant(f, res)
    }

    /// [`PolyRing::discriminant`] computed through the subresultant
    /// sequence instead of the Sylvester determinant.
    pub fn discriminant_subresultant(&self, f: &BiPoly) -> Result<Poly> {
        let n = f.degree_x().ok_or(Error::ZeroPolynomial)?;
        match n {
            0 => return Err(Error::ConstantInput),
            1 => return Ok(Poly::one()),
            _ => {}
        }
        let df = self.derivative_x(f);
        let Some(k) = df.degree_x() else {
            return Ok(Poly::zero());
        };
        // Res_{n,n-1} = w_f^(n-1-k) Res_{n,k}.
        let lead = f.leading().expect("nonzero");
        let res = self.mul(&self.pow(lead, (n - 1 - k) as u64), &self.resultant_subresultant(f, &df)?);
        self.normalize_discriminant(f, res)
    }

    fn normalize_discriminant(&self, f: &BiPoly, res: Poly) -> Result<Poly> {
        let n = f.degree_x().expect("nonzero");
        let d = self.exact_div(&res, f.leading().expect("nonzero"))?;
        Ok(if (n * (n - 1) / 2) % 2 == 1 { self.neg(&d) } else { d })
    }

    /// Whether `f` is square-free in `F_q[t][x]`, separable in `x`, and has
    /// nonzero discriminant.
    ///
    /// Square-free `f` with `df/dx = 0` is reported as [`Error::Inseparable`].
    pub fn is_admissible(&self, f: &BiPoly) -> Result<bool> {
        let Some(n) = f.degree_x() else {
            return Err(Error::ZeroPolynomial);
        };
        let content = self.content(f)?;
        if !self.is_squarefree(&content)? {
            return Ok(false);
        }
        if n == 0 {
            return Ok(false);
        }
        if self.derivative_x(f).is_zero() {
            // f lies in F_q[t][x^p]. Its primitive part g is square-free iff
            // dg/dt != 0 and g, dg/dt share no factor of positive x-degree.
            let g = self.primitive_part(f)?;
            let dg = self.derivative_t(&g);
            let squarefree = match dg.degree_x() {
                None => false,
                Some(0) => true,
                Some(_) => !self.resultant(&g, &dg)?.is_zero(),
            };
            return if squarefree { Err(Error::Inseparable) } else { Ok(false) };
        }
        Ok(!self.discriminant(f)?.is_zero())
    }

    /// Checks admissibility and bundles the derived data.
    pub fn admit(&self, f: &BiPoly) -> Result<Admissible> {
        if !self.is_admissible(f)? {
            let reason = match self.content(f) {
                Ok(c) if !self.is_squarefree(&c)? => "content is not square-free",
                _ if f.degree_x() == Some(0) => "f does not involve x",
                _ => "f has a repeated or inseparable factor (zero discriminant)",
            };
            return Err(Error::Inadmissible(reason.into()));
        }
        Ok(Admissible {
            f: f.clone(),
            df_dx: self.derivative_x(f),
            discriminant: self.discriminant(f)?,
        })
    }
}

pub struct BiPolyDisplay<'a> {
    ring: &'a PolyRing,
    f: &'a BiPoly,
}

impl fmt::Display for BiPolyDisplay<'_> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.f.is_zero() {
            return out.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.f.xcoeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                out.write_str(" + ")?;
            }
            first = false;
            if k == 0 {
                write!(out, "{}", self.ring.display(c))?;
                continue;
            }
            let mono = if k == 1 { "x".to_string() } else { format!("x^{k}") };
            let coeff = self.ring.display_compact(c);
            if c.is_one() {
                out.write_str(&mono)?;
            } else if coeff.is_monomial() {
                write!(out, "{coeff}*{mono}")?;
            } else {
                write!(out, "({coeff})*{mono}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn ring(q: u64) -> PolyRing {
        PolyRing::new(Field::with_order(q).unwrap())
    }

    #[test]
    fn parse_examples() {
        let r = ring(2);
        let f = r.parse_bipoly("x^3 + t").unwrap();
        assert_eq!(f.xcoeffs(), &[Poly::t(), Poly::zero(), Poly::zero(), Poly::one()]);
        let g = r.parse_bipoly("(t^2+1)*x + t").unwrap();
        assert_eq!(g.xcoeffs(), &[Poly::t(), r.parse("t^2+1").unwrap()]);
        assert_eq!(r.display_bipoly(&g).to_string(), "(t^2+1)*x + t");
        assert!(matches!(r.parse_bipoly("x + y"), Err(Error::UnknownVariable { .. })));
    }

    #[test]
    fn eval_examples() {
        let r = ring(2);
        let f = r.parse_bipoly("x^3 + t").unwrap();
        let p = |s: &str| r.parse(s).unwrap();
        assert_eq!(r.eval(&f, &Poly::t()), p("t^3+t"));
        assert_eq!(r.eval(&f, &Poly::zero()), Poly::t());
        assert_eq!(r.eval(&f, &p("t+1")), p("t^3+t^2+1"));
        let m = p("t^2+t+1");
        assert_eq!(r.eval_mod(&f, &p("t+1"), &m).unwrap(), r.rem(&p("t^3+t^2+1"), &m).unwrap());
    }

    #[test]
    fn derivative_examples() {
        let r = ring(2);
        let f = r.parse_bipoly("x^3 + t").unwrap();
        assert_eq!(r.partial(&f, Var::X), r.parse_bipoly("x^2").unwrap());
        assert_eq!(r.partial(&f, Var::T), r.parse_bipoly("1").unwrap());
        assert!(r.derivative_x(&r.parse_bipoly("x^2").unwrap()).is_zero());
    }

    #[test]
    fn content_examples() {
        let r = ring(2);
        let c = |s: &str| r.content(&r.parse_bipoly(s).unwrap()).unwrap();
        assert_eq!(c("t*x + t^2"), Poly::t());
        assert_eq!(c("x^3 + t"), Poly::one());
        assert_eq!(c("(t^2+t)*x^2 + (t^2+t)"), r.parse("t^2+t").unwrap());
        assert_eq!(r.content(&BiPoly::zero()).unwrap_err(), Error::ZeroPolynomial);
    }

    #[test]
    fn discriminant_examples() {
        let r2 = ring(2);
        let d = |r: &PolyRing, s: &str| r.discriminant(&r.parse_bipoly(s).unwrap());
        assert_eq!(d(&r2, "x^3 + t").unwrap(), r2.parse("t^2").unwrap());
        assert_eq!(d(&r2, "x + t").unwrap(), Poly::one());
        let r3 = ring(3);
        assert_eq!(d(&r3, "x^2 + t").unwrap(), r3.parse("2*t").unwrap());
        assert_eq!(d(&r2, "t").unwrap_err(), Error::ConstantInput);
        assert!(d(&r2, "x^2 + t").unwrap().is_zero());
    }

    #[test]
    fn discriminant_matches_classical_formulas() {
        // b^2 - 4ac and -4p^3 - 27q^2 over F_5 and F_7.
        for q in [5, 7] {
            let r = ring(q);
            let f = r.parse_bipoly("(t+2)*x^2 + t^2*x + 3").unwrap();
            let expected = r.parse("t^4 - 12*(t+2)").unwrap();
            assert_eq!(r.discriminant(&f).unwrap(), expected);
            let g = r.parse_bipoly("x^3 + t*x + t^2 + 1").unwrap();
            let expected = r.parse("-4*t^3 - 27*(t^2+1)^2").unwrap();
            assert_eq!(r.discriminant(&g).unwrap(), expected);
        }
    }

    #[test]
    fn sylvester_matches_subresultant() {
        let cases = [
            (2, "x^3 + t"),
            (2, "t*x^3 + x + t^2"),
            (2, "(x+1)*(x+1+t^2)"),
            (3, "x^2 + t"),
            (3, "x^4 + t*x^3 + (t^2+1)*x + t"),
            (3, "(t+1)*x^3 + t^2*x^2 + 2"),
            (5, "x^5 + t*x + 1"),
            (5, "t^2*x^4 + (t+1)*x^2 + t"),
            (4, "u*x^3 + t*x + (u+1)"),
            (9, "x^3 + u*t*x^2 + t^3"),
        ];
        for (q, s) in cases {
            let r = ring(q);
            let f = r.parse_bipoly(s).unwrap();
            assert_eq!(r.discriminant(&f).unwrap(), r.discriminant_subresultant(&f).unwrap(), "{s} over F_{q}");
            let g = r.parse_bipoly("t*x^2 + x + t + 1").unwrap();
            assert_eq!(r.resultant(&f, &g).unwrap(), r.resultant_subresultant(&f, &g).unwrap(), "{s}");
            assert_eq!(r.resultant(&g, &f).unwrap(), r.resultant_subresultant(&g, &f).unwrap(), "{s}");
        }
    }

    #[test]
    fn admissibility_examples() {
        let r = ring(2);
        let a = |s: &str| r.is_admissible(&r.parse_bipoly(s).unwrap());
        assert_eq!(a("x^3 + t"), Ok(true));
        assert_eq!(a("x^2 + 1"), Ok(false));
        assert_eq!(a("x^2 + t"), Err(Error::Inseparable));
        assert_eq!(a("0"), Err(Error::ZeroPolynomial));
        assert_eq!(a("t^2*x + 1"), Ok(true));
        assert_eq!(a("t^2*x + t^2"), Ok(false));
        assert_eq!(a("t*x^2 + t"), Ok(false));
        assert_eq!(a("(x+1)*(x+1+t^2)"), Ok(true));
        assert_eq!(a("t"), Ok(false));
        assert!(matches!(r.admit(&r.parse_bipoly("x^2+1").unwrap()), Err(Error::Inadmissible(_))));
        let adm = r.admit(&r.parse_bipoly("x^3 + t").unwrap()).unwrap();
        assert_eq!(adm.critical_degree(), 2);
    }
}
