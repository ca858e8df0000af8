//! Finite fields `F_q`, `q = p^e`, with a canonical construction.
//!
//! Elements are encoded as integers in `[0, q)`: the element
//! `c_0 + c_1 x + ... + c_{e-1} x^{e-1}` (power basis of a root `x` of the
//! modulus) is stored as `c_0 + c_1 p + ... + c_{e-1} p^{e-1}`.
//!
//! The modulus is the monic irreducible polynomial of degree `e` whose
//! coefficient vector, read as a base-`p` number with the constant term as
//! least significant digit, is smallest. Multiplication and division go
//! through exp/log tables built from a primitive element.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GfError {
    #[error("characteristic {0} is not prime")]
    NonPrimeCharacteristic(u64),
    #[error("extension degree must be at least 1")]
    ZeroExtensionDegree,
    #[error("field order {p}^{e} exceeds {MAX_ORDER}")]
    FieldTooLarge { p: u64, e: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    MixedFields,
    #[error("value {value} is not an element of a field of order {q}")]
    OutOfRange { value: u64, q: u32 },
    #[error("malformed field spec {0:?}, expected \"p,e\"")]
    BadSpec(String),
}

/// An element of some field, by its canonical integer encoding.
///
/// A bare `FieldElem` does not know its field; arithmetic goes through
/// [`Field`] methods, or through [`Elem`] when the field must be checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FieldElem(pub u32);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    #[inline]
    pub fn value(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

#[derive(Clone)]
pub struct Field {
    p: u32,
    e: u32,
    q: u32,
    modulus: Vec<u32>,
    // exp[k] = g^k for k in 0..2(q-1), log[a] for a != 0
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.p)
            .field("e", &self.e)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.e == other.e
    }
}

impl Eq for Field {}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

// Dense polynomials over F_p, coefficients low to high, used only while
// constructing the field.
fn poly_trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = pow_mod(b[db], p - 2, p);
    while r.len() > db {
        let dr = r.len() - 1;
        let c = (r[dr] as u64 * lead_inv as u64 % p as u64) as u32;
        for (k, &bk) in b.iter().enumerate() {
            let idx = dr - db + k;
            r[idx] = ((r[idx] as u64 + (p - c) as u64 * bk as u64) % p as u64) as u32;
        }
        poly_trim(&mut r);
    }
    r
}

fn poly_mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = ((out[i + j] as u64 + x as u64 * y as u64) % p as u64) as u32;
        }
    }
    poly_rem(&out, m, p)
}

fn pow_mod(b: u32, mut e: u32, p: u32) -> u32 {
    let p = p as u64;
    let (mut acc, mut base) = (1u64, b as u64 % p);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc as u32
}

fn digits(mut v: u32, p: u32, e: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(e as usize);
    for _ in 0..e {
        out.push(v % p);
        v /= p;
    }
    out
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
fn is_irreducible(f: &[u32], p: u32) -> bool {
    let deg = f.len() as u32 - 1;
    for d in 1..=deg / 2 {
        for low in 0..p.pow(d) {
            let mut g = digits(low, p, d);
            g.push(1);
            if poly_rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Smallest monic irreducible of degree `e` over `F_p` in base-`p` order.
pub fn canonical_modulus(p: u32, e: u32) -> Vec<u32> {
    if e == 1 {
        return vec![0, 1];
    }
    for low in 0..p.pow(e) {
        let mut f = digits(low, p, e);
        f.push(1);
        if f[0] != 0 && is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl Field {
    pub fn new(p: u64, e: u32) -> Result<Field, GfError> {
        if !is_prime(p) {
            return Err(GfError::NonPrimeCharacteristic(p));
        }
        if e == 0 {
            return Err(GfError::ZeroExtensionDegree);
        }
        let q = (p as u128).checked_pow(e).unwrap_or(u128::MAX);
        if q > MAX_ORDER as u128 {
            return Err(GfError::FieldTooLarge { p, e });
        }
        let (p, q) = (p as u32, q as u32);
        let modulus = canonical_modulus(p, e);

        // The generator search multiplies polynomials directly; tables take over afterwards.
        let mul_slow = |a: u32, b: u32| -> u32 {
            let r = poly_mulmod(&digits(a, p, e), &digits(b, p, e), &modulus, p);
            undigits(&r, p)
        };
        let order = q - 1;
        let mut exp = vec![0u32; 2 * order as usize];
        let mut log = vec![0u32; q as usize];
        'search: for g in 1..q {
            let mut x = 1u32;
            let mut powers = Vec::with_capacity(order as usize);
            for _ in 0..order {
                powers.push(x);
                x = if e == 1 { (x as u64 * g as u64 % p as u64) as u32 } else { mul_slow(x, g) };
            }
            // primitive iff the first q-1 powers are pairwise distinct
            let mut seen = vec![false; q as usize];
            for &v in &powers {
                if seen[v as usize] {
                    continue 'search;
                }
                seen[v as usize] = true;
            }
            for (k, &v) in powers.iter().enumerate() {
                exp[k] = v;
                exp[k + order as usize] = v;
                log[v as usize] = k as u32;
            }
            break;
        }
        Ok(Field { p, e, q, modulus, exp, log })
    }

    /// Parses `"p,e"`.
    pub fn from_spec(spec: &str) -> Result<Field, GfError> {
        let bad = || GfError::BadSpec(spec.to_string());
        let (p, e) = spec.split_once(',').ok_or_else(bad)?;
        let p: u64 = p.trim().parse().map_err(|_| bad())?;
        let e: u32 = e.trim().parse().map_err(|_| bad())?;
        Field::new(p, e)
    }

    pub fn spec(&self) -> String {
        format!("{},{}", self.p, self.e)
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.e
    }

    #[inline]
    pub fn order(&self) -> u32 {
        self.q
    }

    /// Modulus coefficients, low to high. For prime fields this is `X`.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn elem(&self, value: u64) -> Result<FieldElem, GfError> {
        if value >= self.q as u64 {
            return Err(GfError::OutOfRange { value, q: self.q });
        }
        Ok(FieldElem(value as u32))
    }

    /// The embedding of an integer `n` (the `n`-fold sum of 1).
    pub fn from_int(&self, n: u64) -> FieldElem {
        FieldElem((n % self.p as u64) as u32)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElem> + '_ {
        (0..self.q).map(FieldElem)
    }

    pub fn coordinates(&self, a: FieldElem) -> Vec<u32> {
        digits(a.0, self.p, self.e)
    }

    pub fn from_coordinates(&self, coords: &[u32]) -> FieldElem {
        debug_assert!(coords.len() <= self.e as usize);
        FieldElem(undigits(coords, self.p))
    }

    #[inline]
    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if self.e == 1 {
            let s = a.0 + b.0;
            return FieldElem(if s >= self.p { s - self.p } else { s });
        }
        if self.p == 2 {
            return FieldElem(a.0 ^ b.0);
        }
        let (mut x, mut y, mut out, mut place) = (a.0, b.0, 0u32, 1u32);
        while x > 0 || y > 0 {
            out += ((x % self.p + y % self.p) % self.p) * place;
            x /= self.p;
            y /= self.p;
            place *= self.p;
        }
        FieldElem(out)
    }

    #[inline]
    pub fn neg(&self, a: FieldElem) -> FieldElem {
        if self.e == 1 {
            return FieldElem(if a.0 == 0 { 0 } else { self.p - a.0 });
        }
        if self.p == 2 {
            return a;
        }
        let (mut x, mut out, mut place) = (a.0, 0u32, 1u32);
        while x > 0 {
            out += ((self.p - x % self.p) % self.p) * place;
            x /= self.p;
            place *= self.p;
        }
        FieldElem(out)
    }

    #[inline]
    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if a.0 == 0 || b.0 == 0 {
            return FieldElem::ZERO;
        }
        if self.e == 1 {
            return FieldElem((a.0 as u64 * b.0 as u64 % self.p as u64) as u32);
        }
        FieldElem(self.exp[(self.log[a.0 as usize] + self.log[b.0 as usize]) as usize])
    }

    pub fn inv(&self, a: FieldElem) -> Result<FieldElem, GfError> {
        if a.0 == 0 {
            return Err(GfError::DivisionByZero);
        }
        let order = self.q - 1;
        Ok(FieldElem(self.exp[((order - self.log[a.0 as usize]) % order) as usize]))
    }

    pub fn div(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem, GfError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElem, k: u64) -> FieldElem {
        if k == 0 {
            return FieldElem::ONE;
        }
        if a.0 == 0 {
            return FieldElem::ZERO;
        }
        let order = (self.q - 1) as u64;
        let l = self.log[a.0 as usize] as u64 * (k % order) % order;
        FieldElem(self.exp[l as usize])
    }

    pub fn arith(&self, a: FieldElem, b: FieldElem, op: ArithOp) -> Result<FieldElem, GfError> {
        for v in [a, b] {
            if v.0 >= self.q {
                return Err(GfError::OutOfRange { value: v.0 as u64, q: self.q });
            }
        }
        Ok(match op {
            ArithOp::Add => self.add(a, b),
            ArithOp::Sub => self.sub(a, b),
            ArithOp::Mul => self.mul(a, b),
            ArithOp::Div => self.div(a, b)?,
        })
    }
}

impl FromStr for Field {
    type Err = GfError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Field::from_spec(s)
    }
}

/// An element paired with the field it lives in.
#[derive(Debug, Clone, Copy)]
pub struct Elem<'f> {
    pub field: &'f Field,
    pub value: FieldElem,
}

impl<'f> Elem<'f> {
    pub fn new(field: &'f Field, value: u64) -> Result<Self, GfError> {
        Ok(Elem { field, value: field.elem(value)? })
    }
}

impl PartialEq for Elem<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.value == other.value
    }
}

/// Field operation on two tagged elements; elements of different fields are rejected.
pub fn arith<'f>(a: Elem<'f>, b: Elem<'f>, op: ArithOp) -> Result<Elem<'f>, GfError> {
    if a.field != b.field {
        return Err(GfError::MixedFields);
    }
    Ok(Elem { field: a.field, value: a.field.arith(a.value, b.value, op)? })
}

#[cfg(test)]
mod tests {
    use super::*;

    // Plain polynomial product mod the modulus, independent of the tables.
    fn mul_oracle(f: &Field, a: FieldElem, b: FieldElem) -> FieldElem {
        let r = poly_mulmod(&f.coordinates(a), &f.coordinates(b), f.modulus(), f.characteristic());
        f.from_coordinates(&r)
    }

    #[test]
    fn prime_field() {
        let f = Field::new(7, 1).unwrap();
        assert_eq!(f.order(), 7);
        assert_eq!(f.div(FieldElem(1), FieldElem(3)).unwrap(), FieldElem(5));
        let g = Field::new(5, 1).unwrap();
        assert_eq!(g.add(FieldElem(3), FieldElem(4)), FieldElem(2));
    }

    #[test]
    fn gf8_modulus_and_products() {
        let f = Field::new(2, 3).unwrap();
        assert_eq!(f.order(), 8);
        assert_eq!(f.modulus(), &[1, 1, 0, 1]);
        let x = FieldElem(2);
        // x^3 = x + 1
        assert_eq!(f.mul(x, f.mul(x, x)), FieldElem(3));
    }

    #[test]
    fn canonical_modulus_is_lex_smallest() {
        // Exhaustive: no smaller monic degree-e polynomial is irreducible.
        for (p, e) in [(2u32, 2u32), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2), (2, 7)] {
            let m = canonical_modulus(p, e);
            let idx = undigits(&m[..e as usize], p);
            for low in 0..idx {
                let mut g = digits(low, p, e);
                g.push(1);
                let reducible = g[0] == 0 || (1..=e / 2).any(|d| {
                    (0..p.pow(d)).any(|l| {
                        let mut h = digits(l, p, d);
                        h.push(1);
                        poly_rem(&g, &h, p).is_empty()
                    })
                });
                assert!(reducible, "p={p} e={e} low={low}");
            }
        }
        assert_eq!(canonical_modulus(3, 2), vec![1, 0, 1]);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(Field::new(4, 1).unwrap_err(), GfError::NonPrimeCharacteristic(4));
        assert!(matches!(Field::new(2, 17), Err(GfError::FieldTooLarge { .. })));
        assert!(Field::new(2, 16).is_ok());
        assert!(Field::new(3, 0).is_err());
        assert!(Field::from_spec("5").is_err());
        assert_eq!(Field::from_spec("2,7").unwrap().order(), 128);
    }

    #[test]
    fn elements_enumeration() {
        let v: Vec<u32> = Field::new(2, 1).unwrap().elements().map(|a| a.0).collect();
        assert_eq!(v, vec![0, 1]);
        let v: Vec<u32> = Field::new(5, 1).unwrap().elements().map(|a| a.0).collect();
        assert_eq!(v, vec![0, 1, 2, 3, 4]);
        let f = Field::new(2, 3).unwrap();
        let mut v: Vec<u32> = f.elements().map(|a| a.0).collect();
        v.dedup();
        assert_eq!(v.len(), 8);
    }

    #[test]
    fn field_axioms_exhaustive() {
        for (p, e) in [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (2, 4), (5, 2), (2, 6)] {
            let f = Field::new(p, e).unwrap();
            let els: Vec<_> = f.elements().collect();
            for &a in &els {
                assert_eq!(f.add(a, f.neg(a)), FieldElem::ZERO);
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), FieldElem::ONE);
                }
                for &b in &els {
                    assert_eq!(f.mul(a, b), mul_oracle(&f, a, b));
                    let ap = f.pow(a, p);
                    let bp = f.pow(b, p);
                    assert_eq!(f.pow(f.add(a, b), p), f.add(ap, bp));
                }
            }
            // associativity and distributivity on a strided sample keeps this cubic loop small
            for &a in els.iter().step_by(3) {
                for &b in els.iter().step_by(2) {
                    for &c in &els {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn tagged_arith_checks_fields() {
        let f5 = Field::new(5, 1).unwrap();
        let f7 = Field::new(7, 1).unwrap();
        let a = Elem::new(&f5, 3).unwrap();
        let b = Elem::new(&f5, 4).unwrap();
        assert_eq!(arith(a, b, ArithOp::Add).unwrap().value, FieldElem(2));
        let c = Elem::new(&f7, 1).unwrap();
        assert_eq!(arith(a, c, ArithOp::Mul).unwrap_err(), GfError::MixedFields);
        let z = Elem::new(&f5, 0).unwrap();
        assert_eq!(arith(a, z, ArithOp::Div).unwrap_err(), GfError::DivisionByZero);
        assert!(Elem::new(&f5, 5).is_err());
    }
}
