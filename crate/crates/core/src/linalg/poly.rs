//! Univariate polynomials over a small finite field.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Elem, FieldSpec};

/// Polynomial with coefficients lowest degree first and no trailing zeros.
/// The zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: FieldSpec,
    coeffs: Vec<Elem>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c.code()) {
                (0, _) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, _) => write!(f, "{c}x")?,
                (_, 1) => write!(f, "x^{i}")?,
                _ => write!(f, "{c}x^{i}")?,
            }
        }
        Ok(())
    }
}

impl Poly {
    pub fn new(field: &FieldSpec, mut coeffs: Vec<Elem>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn zero(field: &FieldSpec) -> Poly {
        Poly::new(field, Vec::new())
    }

    pub fn one(field: &FieldSpec) -> Poly {
        Poly::constant(field, Elem::ONE)
    }

    pub fn constant(field: &FieldSpec, c: Elem) -> Poly {
        Poly::new(field, vec![c])
    }

    /// x^d
    pub fn monomial(field: &FieldSpec, d: usize) -> Poly {
        let mut c = vec![Elem::ZERO; d + 1];
        c[d] = Elem::ONE;
        Poly::new(field, c)
    }

    /// x - a
    pub fn linear(field: &FieldSpec, a: Elem) -> Poly {
        Poly::new(field, vec![field.neg(a), Elem::ONE])
    }

    /// Parses small integer coefficients, reduced into the prime subfield.
    pub fn from_ints(field: &FieldSpec, coeffs: &[i64]) -> Poly {
        Poly::new(field, coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    /// Coefficient of x^i (zero past the degree).
    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(Elem::ZERO)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&Elem::ONE)
    }

    pub fn eval(&self, x: Elem) -> Elem {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(Elem::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(f, (0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(f, (0..n).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn scale(&self, c: Elem) -> Poly {
        let f = &self.field;
        Poly::new(f, self.coeffs.iter().map(|&a| f.mul(c, a)).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.field);
        }
        let f = &self.field;
        let mut out = vec![Elem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::new(f, out)
    }

    pub fn pow(&self, e: u32) -> Poly {
        (0..e).fold(Poly::one(&self.field), |acc, _| acc.mul(self))
    }

    /// Euclidean division; `None` when dividing by zero.
    pub fn div_rem(&self, d: &Poly) -> Option<(Poly, Poly)> {
        let f = &self.field;
        let dd = d.degree()?;
        let lead_inv = f.inv(d.coeffs[dd]).expect("leading coefficient is nonzero");
        let mut r = self.coeffs.clone();
        let mut quot = vec![Elem::ZERO; self.coeffs.len().saturating_sub(dd)];
        while r.len() > dd && !r.is_empty() {
            let top = r.len() - 1;
            let c = f.mul(r[top], lead_inv);
            if !c.is_zero() {
                quot[top - dd] = c;
                for (i, &di) in d.coeffs.iter().enumerate() {
                    let idx = top - dd + i;
                    r[idx] = f.sub(r[idx], f.mul(c, di));
                }
            }
            r.pop();
        }
        Some((Poly::new(f, quot), Poly::new(f, r)))
    }

    /// All monic polynomials of exact degree `d`, lower coefficients in code order.
    pub fn monics(field: &FieldSpec, d: usize) -> impl Iterator<Item = Poly> + '_ {
        let q = field.q() as u64;
        let count = q.pow(d as u32);
        (0..count).map(move |mut c| {
            let mut v = Vec::with_capacity(d + 1);
            for _ in 0..d {
                v.push(Elem::from_code_unchecked((c % q) as u32));
                c /= q;
            }
            v.push(Elem::ONE);
            Poly::new(field, v)
        })
    }

    /// Irreducibility by trial division over monic divisors up to half the degree.
    pub fn is_irreducible(&self) -> bool {
        let Some(d) = self.degree() else {
            return false;
        };
        if d == 0 {
            return false;
        }
        (1..=d / 2)
            .all(|k| Poly::monics(&self.field, k).all(|g| !self.div_rem(&g).expect("divisor nonzero").1.is_zero()))
    }

    /// Roots in the base field, in code order.
    pub fn roots(&self) -> Vec<Elem> {
        self.field.elements().filter(|&x| self.eval(x).is_zero()).collect()
    }
}

/// Writes a monic `p` as `mu^k` with `mu` monic irreducible, if possible.
///
/// Candidate factors are found by trial over every monic polynomial of degree
/// at most `deg/2` dividing the degree; failing that, `p` itself is tested for
/// irreducibility.
pub fn poly_power_factor(p: &Poly) -> Result<Option<(Poly, u32)>> {
    if !p.is_monic() {
        return Err(Error::NotMonic);
    }
    let n = p.degree().expect("monic implies nonzero");
    if n == 0 {
        return Ok(None);
    }
    for d in (1..=n / 2).filter(|d| n.is_multiple_of(*d)) {
        let k = (n / d) as u32;
        for mu in Poly::monics(p.field(), d) {
            if mu.pow(k) == *p && mu.is_irreducible() {
                return Ok(Some((mu, k)));
            }
        }
    }
    if p.is_irreducible() {
        return Ok(Some((p.clone(), 1)));
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let f = FieldSpec::gf(3).unwrap();
        let a = Poly::from_ints(&f, &[1, 1]); // x + 1
        let b = Poly::from_ints(&f, &[2, 1]); // x + 2
        assert_eq!(a.mul(&b), Poly::from_ints(&f, &[2, 0, 1]));
        let (q, r) = Poly::from_ints(&f, &[2, 0, 1]).div_rem(&a).unwrap();
        assert_eq!(q, b);
        assert!(r.is_zero());
        assert_eq!(a.sub(&a), Poly::zero(&f));
        assert_eq!(Poly::from_ints(&f, &[0, 0, 0]).degree(), None);
    }

    #[test]
    fn power_factor_examples() {
        let f2 = FieldSpec::gf(2).unwrap();
        let x4_1 = Poly::from_ints(&f2, &[1, 0, 0, 0, 1]);
        assert_eq!(
            poly_power_factor(&x4_1).unwrap(),
            Some((Poly::from_ints(&f2, &[1, 1]), 4))
        );
        let f3 = FieldSpec::gf(3).unwrap();
        let x3_2 = Poly::from_ints(&f3, &[2, 0, 0, 1]);
        assert_eq!(
            poly_power_factor(&x3_2).unwrap(),
            Some((Poly::from_ints(&f3, &[2, 1]), 3))
        );
        let x3_x = Poly::from_ints(&f2, &[0, 1, 0, 1]);
        assert_eq!(poly_power_factor(&x3_x).unwrap(), None);
        assert_eq!(poly_power_factor(&Poly::from_ints(&f3, &[1, 2])), Err(Error::NotMonic));
        // irreducible quadratic is its own first power
        let x2_1 = Poly::from_ints(&f3, &[1, 0, 1]);
        assert_eq!(poly_power_factor(&x2_1).unwrap(), Some((x2_1.clone(), 1)));
        // (x^2+1)^2 over GF(3)
        let sq = x2_1.mul(&x2_1);
        assert_eq!(poly_power_factor(&sq).unwrap(), Some((x2_1, 2)));
    }

    #[test]
    fn irreducibility() {
        let f2 = FieldSpec::gf(2).unwrap();
        assert!(Poly::from_ints(&f2, &[1, 1, 1]).is_irreducible());
        assert!(!Poly::from_ints(&f2, &[1, 0, 1]).is_irreducible());
        assert!(Poly::from_ints(&f2, &[1, 1, 0, 1]).is_irreducible());
    }
}
