//! Small finite fields GF(p^k) with q <= 81.
//!
//! An element is stored as its code: the base-p digits of the residue
//! polynomial, least significant digit first. Code 0 is zero and code 1 is
//! one. All arithmetic goes through tables built once per field from the
//! polynomial representation; [`FieldSpec::mul_poly_path`] exposes the slow
//! route so the tables can be checked against it.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest supported field size.
pub const MAX_Q: u32 = 81;

/// A field element, identified by its residue code.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Elem(u8);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    pub const fn code(self) -> u32 {
        self.0 as u32
    }

    #[inline]
    pub(crate) const fn idx(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub(crate) const fn from_code_unchecked(code: u32) -> Elem {
        Elem(code as u8)
    }

    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Binary and unary operations accepted by [`FieldSpec::arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Inv,
    Neg,
    /// Raise the first operand to the power given by the second operand's code.
    Pow,
}

struct Tables {
    add: Vec<Elem>,
    mul: Vec<Elem>,
    neg: Vec<Elem>,
    inv: Vec<Elem>,
    frob: Vec<Elem>,
}

/// A validated finite field together with its arithmetic tables.
///
/// Cloning is cheap: the tables are shared.
#[derive(Clone)]
pub struct FieldSpec {
    p: u32,
    k: u32,
    q: u32,
    modulus: Vec<u32>,
    tables: Arc<Tables>,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k && self.modulus == other.modulus
    }
}

impl Eq for FieldSpec {}

impl std::hash::Hash for FieldSpec {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.p.hash(state);
        self.k.hash(state);
        self.modulus.hash(state);
    }
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k == 1 {
            write!(f, "GF({})", self.p)
        } else {
            write!(f, "GF({}^{} mod {:?})", self.p, self.k, self.modulus)
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.q)
    }
}

/// Moduli fixed for interoperability, coefficients lowest degree first.
pub fn fixed_modulus(p: u32, k: u32) -> Option<Vec<u32>> {
    let m: &[u32] = match (p, k) {
        (_, 1) => &[0, 1],
        (2, 2) => &[1, 1, 1],
        (2, 3) => &[1, 1, 0, 1],
        (3, 2) => &[1, 0, 1],
        (3, 3) => &[1, 2, 0, 1],
        (3, 4) => &[2, 1, 0, 0, 1],
        _ => return None,
    };
    Some(m.to_vec())
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

// Polynomials over GF(p) as little-endian coefficient vectors, used only to
// validate moduli and to build the tables.

fn trim(mut v: Vec<u32>) -> Vec<u32> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn poly_rem_mod_p(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = trim(a.to_vec());
    let b = trim(b.to_vec());
    let db = b.len() - 1;
    let lead_inv = inv_mod_p(b[db], p);
    while r.len() > db {
        let dr = r.len() - 1;
        let c = r[dr] * lead_inv % p;
        for (i, &bi) in b.iter().enumerate() {
            let idx = dr - db + i;
            r[idx] = (r[idx] + p * p - c * bi % p) % p;
        }
        r = trim(r);
    }
    r
}

fn inv_mod_p(a: u32, p: u32) -> u32 {
    (1..p).find(|x| a * x % p == 1).expect("nonzero residue is invertible")
}

/// All monic polynomials of exact degree `d` over GF(p), in code order.
fn monic_polys_mod_p(p: u32, d: u32) -> impl Iterator<Item = Vec<u32>> {
    let count = p.pow(d);
    (0..count).map(move |mut c| {
        let mut v = Vec::with_capacity(d as usize + 1);
        for _ in 0..d {
            v.push(c % p);
            c /= p;
        }
        v.push(1);
        v
    })
}

fn is_irreducible_mod_p(m: &[u32], p: u32) -> bool {
    let deg = (m.len() - 1) as u32;
    (1..=deg / 2).all(|d| monic_polys_mod_p(p, d).all(|f| !poly_rem_mod_p(m, &f, p).is_empty()))
}

impl FieldSpec {
    /// Builds GF(p^k), using the fixed modulus table when `modulus` is `None`.
    pub fn new(p: u32, k: u32, modulus: Option<&[u32]>) -> Result<FieldSpec> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 {
            return Err(Error::InvalidModulus(k));
        }
        let q = p
            .checked_pow(k)
            .filter(|&q| q <= MAX_Q)
            .ok_or(Error::UnsupportedSize { p, k })?;
        let modulus = match modulus {
            Some(m) => m.to_vec(),
            None => match fixed_modulus(p, k) {
                Some(m) => m,
                None => monic_polys_mod_p(p, k)
                    .find(|m| is_irreducible_mod_p(m, p))
                    .ok_or(Error::NoDefaultModulus { p, k })?,
            },
        };
        if modulus.len() != k as usize + 1 || modulus[k as usize] != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidModulus(k));
        }
        if !is_irreducible_mod_p(&modulus, p) {
            return Err(Error::ReducibleModulus(p));
        }
        // Every monic linear modulus gives the same coding of GF(p).
        let modulus = if k == 1 { vec![0, 1] } else { modulus };
        let tables = Arc::new(build_tables(p, k, q, &modulus));
        Ok(FieldSpec {
            p,
            k,
            q,
            modulus,
            tables,
        })
    }

    /// GF(q) with the default modulus.
    pub fn gf(q: u32) -> Result<FieldSpec> {
        let p = (2..=q.max(2))
            .find(|d| q.is_multiple_of(*d))
            .ok_or(Error::NotPrime(q))?;
        let mut k = 0;
        let mut r = q;
        while r.is_multiple_of(p) {
            r /= p;
            k += 1;
        }
        if r != 1 {
            return Err(Error::NotPrime(q));
        }
        FieldSpec::new(p, k, None)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn elem(&self, code: u32) -> Result<Elem> {
        if code < self.q {
            Ok(Elem(code as u8))
        } else {
            Err(Error::InvalidElement { code, q: self.q })
        }
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Elem {
        Elem(n.rem_euclid(self.p as i64) as u8)
    }

    /// All elements in code order 0, 1, ..., q-1.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.q).map(|c| Elem(c as u8))
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (1..self.q).map(|c| Elem(c as u8))
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.tables.add[a.idx() * self.q as usize + b.idx()]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.tables.mul[a.idx() * self.q as usize + b.idx()]
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.tables.neg[a.idx()]
    }

    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(&self, a: Elem) -> Option<Elem> {
        if a.is_zero() {
            None
        } else {
            Some(self.tables.inv[a.idx()])
        }
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        let bi = self.inv(b).ok_or(Error::DivisionByZero)?;
        Ok(self.mul(a, bi))
    }

    pub fn pow(&self, a: Elem, mut e: u64) -> Elem {
        let mut base = a;
        let mut acc = Elem::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// The Frobenius map x -> x^p.
    #[inline]
    pub fn frobenius(&self, a: Elem) -> Elem {
        self.tables.frob[a.idx()]
    }

    /// j(x) = x^p - x, an additive endomorphism whose kernel is the prime field.
    #[inline]
    pub fn j(&self, a: Elem) -> Elem {
        self.sub(self.frobenius(a), a)
    }

    /// Checked arithmetic on raw codes. `b` is ignored by the unary operations.
    pub fn arith(&self, op: ArithOp, a: Elem, b: Elem) -> Result<Elem> {
        self.elem(a.code())?;
        self.elem(b.code())?;
        Ok(match op {
            ArithOp::Add => self.add(a, b),
            ArithOp::Sub => self.sub(a, b),
            ArithOp::Mul => self.mul(a, b),
            ArithOp::Neg => self.neg(a),
            ArithOp::Inv => self.inv(a).ok_or(Error::DivisionByZero)?,
            ArithOp::Pow => self.pow(a, b.code() as u64),
        })
    }

    /// Multiplication computed from the residue polynomials, bypassing the tables.
    pub fn mul_poly_path(&self, a: Elem, b: Elem) -> Elem {
        Elem(mul_codes(self.p, self.k, &self.modulus, a.code(), b.code()) as u8)
    }

    /// Image of `f` over the whole field, sorted and deduplicated.
    pub fn image_of<F: Fn(Elem) -> Elem>(&self, f: F) -> Vec<Elem> {
        let mut v: Vec<Elem> = self.elements().map(f).collect();
        v.sort();
        v.dedup();
        v
    }
}

fn digits(mut c: u32, p: u32, k: u32) -> Vec<u32> {
    (0..k)
        .map(|_| {
            let d = c % p;
            c /= p;
            d
        })
        .collect()
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &x| acc * p + x)
}

fn add_codes(p: u32, k: u32, a: u32, b: u32) -> u32 {
    let (da, db) = (digits(a, p, k), digits(b, p, k));
    let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
    undigits(&s, p)
}

fn mul_codes(p: u32, k: u32, modulus: &[u32], a: u32, b: u32) -> u32 {
    let (da, db) = (digits(a, p, k), digits(b, p, k));
    let mut prod = vec![0u32; 2 * k as usize];
    for (i, x) in da.iter().enumerate() {
        for (j, y) in db.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    let mut r = poly_rem_mod_p(&prod, modulus, p);
    r.resize(k as usize, 0);
    undigits(&r, p)
}

fn build_tables(p: u32, k: u32, q: u32, modulus: &[u32]) -> Tables {
    let qs = q as usize;
    let mut add = vec![Elem::ZERO; qs * qs];
    let mut mul = vec![Elem::ZERO; qs * qs];
    for a in 0..q {
        for b in 0..q {
            let i = a as usize * qs + b as usize;
            add[i] = Elem(add_codes(p, k, a, b) as u8);
            mul[i] = Elem(mul_codes(p, k, modulus, a, b) as u8);
        }
    }
    let neg: Vec<Elem> = (0..qs)
        .map(|a| {
            let z = (0..qs).find(|&b| add[a * qs + b] == Elem::ZERO).unwrap();
            Elem(z as u8)
        })
        .collect();
    let inv: Vec<Elem> = (0..qs)
        .map(|a| match (1..qs).find(|&b| mul[a * qs + b] == Elem::ONE) {
            Some(b) => Elem(b as u8),
            None => Elem::ZERO,
        })
        .collect();
    let frob: Vec<Elem> = (0..qs)
        .map(|a| {
            let mut acc = Elem::ONE;
            for _ in 0..p {
                acc = mul[acc.idx() * qs + a];
            }
            acc
        })
        .collect();
    Tables {
        add,
        mul,
        neg,
        inv,
        frob,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(f: &FieldSpec, c: u32) -> Elem {
        f.elem(c).unwrap()
    }

    #[test]
    fn make_examples() {
        let f2 = FieldSpec::new(2, 1, None).unwrap();
        assert_eq!(f2.q(), 2);
        let f9 = FieldSpec::new(3, 2, Some(&[1, 0, 1])).unwrap();
        assert_eq!(f9.q(), 9);
        assert_eq!(FieldSpec::new(2, 2, Some(&[1, 0, 1])), Err(Error::ReducibleModulus(2)));
    }

    #[test]
    fn make_errors() {
        assert_eq!(FieldSpec::new(4, 1, None).err(), Some(Error::NotPrime(4)));
        assert_eq!(
            FieldSpec::new(3, 5, None).err(),
            Some(Error::UnsupportedSize { p: 3, k: 5 })
        );
        assert_eq!(
            FieldSpec::new(3, 2, Some(&[1, 0, 2])).err(),
            Some(Error::InvalidModulus(2))
        );
        // t^2 + 2 = (t+1)(t+2) over GF(3)
        assert_eq!(
            FieldSpec::new(3, 2, Some(&[2, 0, 1])).err(),
            Some(Error::ReducibleModulus(3))
        );
    }

    #[test]
    fn fixed_moduli_are_irreducible() {
        for (p, k) in [(2, 2), (2, 3), (3, 2), (3, 3), (3, 4)] {
            let m = fixed_modulus(p, k).unwrap();
            let f = FieldSpec::new(p, k, None).unwrap();
            assert_eq!(f.modulus(), &m[..]);
            assert!(is_irreducible_mod_p(&m, p));
        }
        // sizes outside the fixed table fall back to the first irreducible
        let f16 = FieldSpec::gf(16).unwrap();
        assert_eq!(f16.modulus(), &[1, 1, 0, 0, 1]);
        assert_eq!(FieldSpec::gf(25).unwrap().q(), 25);
        assert_eq!(FieldSpec::gf(7).unwrap().q(), 7);
    }

    #[test]
    fn arith_examples() {
        let f2 = FieldSpec::gf(2).unwrap();
        assert_eq!(f2.add(Elem::ONE, Elem::ONE), Elem::ZERO);
        let f3 = FieldSpec::gf(3).unwrap();
        assert_eq!(f3.inv(e(&f3, 2)), Some(e(&f3, 2)));
        let f4 = FieldSpec::gf(4).unwrap();
        // t = code 2, t+1 = code 3
        assert_eq!(f4.mul(e(&f4, 2), e(&f4, 3)), Elem::ONE);
        assert_eq!(
            f3.arith(ArithOp::Inv, Elem::ZERO, Elem::ZERO),
            Err(Error::DivisionByZero)
        );
        assert_eq!(
            f3.arith(ArithOp::Add, Elem::from_code_unchecked(5), Elem::ZERO),
            Err(Error::InvalidElement { code: 5, q: 3 })
        );
        assert_eq!(f3.arith(ArithOp::Pow, e(&f3, 2), e(&f3, 2)), Ok(Elem::ONE));
    }

    #[test]
    fn field_axioms_small() {
        for q in [2, 3, 4, 5, 7, 8, 9] {
            let f = FieldSpec::gf(q).unwrap();
            for a in f.elements() {
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), Elem::ONE);
                }
                assert_eq!(f.add(a, f.neg(a)), Elem::ZERO);
                for b in f.elements() {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    assert_eq!(f.mul(a, b), f.mul_poly_path(a, b));
                    for c in f.elements() {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn tables_match_poly_path_all_fields() {
        for q in [16, 25, 27, 32, 49, 64, 81] {
            let f = FieldSpec::gf(q).unwrap();
            for a in f.elements() {
                for b in f.elements() {
                    assert_eq!(f.mul(a, b), f.mul_poly_path(a, b));
                }
            }
        }
    }

    #[test]
    fn frobenius_is_a_ring_automorphism() {
        for q in [2, 3, 4, 8, 9, 25, 27] {
            let f = FieldSpec::gf(q).unwrap();
            let img = f.image_of(|x| f.frobenius(x));
            assert_eq!(img.len(), q as usize);
            for a in f.elements() {
                assert_eq!(f.frobenius(a), f.pow(a, f.p() as u64));
                for b in f.elements() {
                    assert_eq!(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)));
                    assert_eq!(f.frobenius(f.mul(a, b)), f.mul(f.frobenius(a), f.frobenius(b)));
                    assert_eq!(f.j(f.add(a, b)), f.add(f.j(a), f.j(b)));
                }
            }
        }
    }

    #[test]
    fn j_map_examples() {
        let f3 = FieldSpec::gf(3).unwrap();
        assert!(f3.elements().all(|x| f3.j(x).is_zero()));
        assert_eq!(f3.image_of(|x| f3.pow(x, 3)), f3.elements().collect::<Vec<_>>());
        for q in [9, 27, 81] {
            let f = FieldSpec::gf(q).unwrap();
            assert_eq!(f.image_of(|x| f.j(x)).len() as u32, q / 3);
            let kernel: Vec<Elem> = f.elements().filter(|&x| f.j(x).is_zero()).collect();
            assert_eq!(kernel, vec![Elem(0), Elem(1), Elem(2)]);
        }
    }

    #[test]
    fn enumeration_order() {
        let f2 = FieldSpec::gf(2).unwrap();
        assert_eq!(f2.elements().collect::<Vec<_>>(), vec![Elem(0), Elem(1)]);
        let f9 = FieldSpec::gf(9).unwrap();
        let v: Vec<u32> = f9.elements().map(Elem::code).collect();
        assert_eq!(v, (0..9).collect::<Vec<_>>());
    }
}
