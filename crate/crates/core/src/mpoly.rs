//! Sparse multivariate polynomials over `F_q` and polynomials in `Z` with
//! multivariate coefficients.
//!
//! Monomials compare lexicographically with `X_1` most significant, i.e.
//! `X_m < ... < X_1`; this is the order behind every "leading monomial" in
//! the crate.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf::{Field, FieldElem};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
}

/// Exponent vector `(i_1, ..., i_m)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(arity: usize) -> Self {
        Monomial(vec![0; arity])
    }

    pub fn new(exps: impl Into<Vec<u32>>) -> Self {
        Monomial(exps.into())
    }

    /// `X_j` for a zero-based variable index `j`.
    pub fn var(arity: usize, j: usize) -> Self {
        let mut e = vec![0; arity];
        e[j] = 1;
        Monomial(e)
    }

    #[inline]
    pub fn arity(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// `self | other`, componentwise `<=`.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn pow(&self, k: u32) -> Monomial {
        Monomial(self.0.iter().map(|a| a * k).collect())
    }

    /// `self * other^k` without the intermediate power.
    pub fn mul_pow(&self, other: &Monomial, k: u32) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b * k).collect())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (j, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "X{}", j + 1)?;
            } else {
                write!(f, "X{}^{}", j + 1, e)?;
            }
        }
        Ok(())
    }
}

/// `C(n, k) mod p` by Lucas' theorem.
pub fn binom_mod(mut n: u64, mut k: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    while k > 0 {
        let (ni, ki) = (n % p, k % p);
        if ki > ni {
            return 0;
        }
        acc = acc * small_binom(ni, ki, p) % p;
        n /= p;
        k /= p;
    }
    acc
}

fn small_binom(n: u64, k: u64, p: u64) -> u64 {
    // n < p, so every factor of the denominator is invertible
    let (mut num, mut den) = (1u64, 1u64);
    for i in 0..k {
        num = num * ((n - i) % p) % p;
        den = den * ((i + 1) % p) % p;
    }
    num * inv_mod(den, p) % p
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut acc, mut base, mut e) = (1u64, a % p, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

/// Multiplicity of a polynomial at a point; the zero polynomial has infinite multiplicity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Multiplicity {
    Finite(u32),
    Infinite,
}

impl Multiplicity {
    pub fn at_least(self, r: u32) -> bool {
        match self {
            Multiplicity::Finite(v) => v >= r,
            Multiplicity::Infinite => true,
        }
    }
}

impl fmt::Display for Multiplicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Multiplicity::Finite(v) => write!(f, "{v}"),
            Multiplicity::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct MPoly {
    field: Arc<Field>,
    arity: usize,
    terms: BTreeMap<Monomial, FieldElem>,
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly({self})")
    }
}

impl MPoly {
    pub fn zero(field: Arc<Field>, arity: usize) -> Self {
        MPoly { field, arity, terms: BTreeMap::new() }
    }

    pub fn constant(field: Arc<Field>, arity: usize, c: FieldElem) -> Self {
        let mut p = MPoly::zero(field, arity);
        p.add_term(Monomial::one(arity), c);
        p
    }

    pub fn monomial(field: Arc<Field>, mono: Monomial, c: FieldElem) -> Self {
        let mut p = MPoly::zero(field, mono.arity());
        p.add_term(mono, c);
        p
    }

    /// `X_j - a` for a zero-based variable index `j`.
    pub fn linear(field: Arc<Field>, arity: usize, j: usize, a: FieldElem) -> Self {
        let neg = field.neg(a);
        let mut p = MPoly::monomial(field, Monomial::var(arity, j), FieldElem::ONE);
        p.add_term(Monomial::one(arity), neg);
        p
    }

    pub fn from_terms(
        field: Arc<Field>,
        arity: usize,
        terms: impl IntoIterator<Item = (Monomial, FieldElem)>,
    ) -> Result<Self, PolyError> {
        let mut p = MPoly::zero(field, arity);
        for (m, c) in terms {
            if m.arity() != arity {
                return Err(PolyError::ArityMismatch { expected: arity, got: m.arity() });
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, FieldElem)> + '_ {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn support(&self) -> impl Iterator<Item = &Monomial> + '_ {
        self.terms.keys()
    }

    pub fn coeff(&self, m: &Monomial) -> FieldElem {
        self.terms.get(m).copied().unwrap_or(FieldElem::ZERO)
    }

    pub fn add_term(&mut self, m: Monomial, c: FieldElem) {
        debug_assert_eq!(m.arity(), self.arity);
        if c.is_zero() {
            return;
        }
        let f = &self.field;
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = f.add(*o.get(), c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn leading_monomial(&self) -> Result<&Monomial, PolyError> {
        self.terms.keys().next_back().ok_or(PolyError::ZeroPolynomial)
    }

    pub fn leading_coeff(&self) -> Result<FieldElem, PolyError> {
        self.terms.values().next_back().copied().ok_or(PolyError::ZeroPolynomial)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    /// Largest exponent of variable `j` (zero-based), `None` for the zero polynomial.
    pub fn degree_in(&self, j: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[j]).max()
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), self.field.neg(c));
        }
        out
    }

    pub fn neg(&self) -> MPoly {
        self.scale(self.field.neg(FieldElem::ONE))
    }

    pub fn scale(&self, c: FieldElem) -> MPoly {
        let mut out = MPoly::zero(self.field.clone(), self.arity);
        if c.is_zero() {
            return out;
        }
        for (m, a) in self.terms() {
            out.terms.insert(m.clone(), self.field.mul(a, c));
        }
        out
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        let mut out = MPoly::zero(self.field.clone(), self.arity);
        for (m1, c1) in self.terms() {
            for (m2, c2) in other.terms() {
                out.add_term(m1.mul(m2), self.field.mul(c1, c2));
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> MPoly {
        let mut acc = MPoly::constant(self.field.clone(), self.arity, FieldElem::ONE);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn evaluate(&self, point: &[FieldElem]) -> Result<FieldElem, PolyError> {
        if point.len() != self.arity {
            return Err(PolyError::ArityMismatch { expected: self.arity, got: point.len() });
        }
        let f = &self.field;
        let mut acc = FieldElem::ZERO;
        for (m, c) in self.terms() {
            let mut v = c;
            for (&a, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    v = f.mul(v, f.pow(a, e as u64));
                }
            }
            acc = f.add(acc, v);
        }
        Ok(acc)
    }

    /// Hasse derivative: the coefficient of `T^k` in `F(X + T)`.
    pub fn hasse_derivative(&self, k: &Monomial) -> Result<MPoly, PolyError> {
        if k.arity() != self.arity {
            return Err(PolyError::ArityMismatch { expected: self.arity, got: k.arity() });
        }
        let p = self.field.characteristic() as u64;
        let mut out = MPoly::zero(self.field.clone(), self.arity);
        for (m, c) in self.terms() {
            if !k.divides(m) {
                continue;
            }
            let b = m.0.iter().zip(&k.0).fold(1u64, |acc, (&e, &kk)| acc * binom_mod(e as u64, kk as u64, p) % p);
            if b == 0 {
                continue;
            }
            let shifted = Monomial(m.0.iter().zip(&k.0).map(|(e, kk)| e - kk).collect());
            out.add_term(shifted, self.field.mul(c, self.field.from_int(b)));
        }
        Ok(out)
    }

    /// `F(X + a)` computed one variable at a time.
    pub fn shift(&self, a: &[FieldElem]) -> Result<MPoly, PolyError> {
        if a.len() != self.arity {
            return Err(PolyError::ArityMismatch { expected: self.arity, got: a.len() });
        }
        let f = &self.field;
        let p = f.characteristic() as u64;
        let mut cur = self.clone();
        for (j, &aj) in a.iter().enumerate() {
            if aj.is_zero() {
                continue;
            }
            let mut next = MPoly::zero(f.clone(), self.arity);
            for (m, c) in cur.terms() {
                let e = m.0[j];
                for l in 0..=e {
                    let b = binom_mod(e as u64, l as u64, p);
                    if b == 0 {
                        continue;
                    }
                    let coef = f.mul(f.mul(c, f.from_int(b)), f.pow(aj, (e - l) as u64));
                    let mut mm = m.clone();
                    mm.0[j] = l;
                    next.add_term(mm, coef);
                }
            }
            cur = next;
        }
        Ok(cur)
    }

    /// Lowest total degree among the terms of `F(X + a)`.
    pub fn multiplicity_at(&self, a: &[FieldElem]) -> Result<Multiplicity, PolyError> {
        let shifted = self.shift(a)?;
        Ok(shifted
            .support()
            .map(Monomial::total_degree)
            .min()
            .map_or(Multiplicity::Infinite, Multiplicity::Finite))
    }

    /// Substitutes `X_last = b`, returning a polynomial in one variable fewer.
    pub fn specialize_last(&self, b: FieldElem) -> MPoly {
        let f = &self.field;
        let m = self.arity;
        let mut out = MPoly::zero(f.clone(), m - 1);
        for (mono, c) in self.terms() {
            let e = mono.0[m - 1];
            out.add_term(Monomial(mono.0[..m - 1].to_vec()), f.mul(c, f.pow(b, e as u64)));
        }
        out
    }

    /// Adds a new last variable with exponent `e` to every term.
    pub fn extend_last(&self, e: u32) -> MPoly {
        let mut out = MPoly::zero(self.field.clone(), self.arity + 1);
        for (mono, c) in self.terms() {
            let mut v = mono.0.clone();
            v.push(e);
            out.terms.insert(Monomial(v), c);
        }
        out
    }

    /// Exact division by `X_last - b`; `None` if it does not divide.
    pub fn div_linear_last(&self, b: FieldElem) -> Option<MPoly> {
        let f = &self.field;
        let m = self.arity;
        // group by the first m-1 exponents, then synthetic division in X_m
        let mut groups: BTreeMap<Vec<u32>, BTreeMap<u32, FieldElem>> = BTreeMap::new();
        for (mono, c) in self.terms() {
            groups.entry(mono.0[..m - 1].to_vec()).or_default().insert(mono.0[m - 1], c);
        }
        let mut out = MPoly::zero(f.clone(), m);
        for (head, coeffs) in groups {
            let deg = *coeffs.keys().next_back().unwrap();
            let mut carry = FieldElem::ZERO;
            for e in (0..=deg).rev() {
                let a = f.add(coeffs.get(&e).copied().unwrap_or_default(), carry);
                if e == 0 {
                    if !a.is_zero() {
                        return None;
                    }
                } else {
                    let mut v = head.clone();
                    v.push(e - 1);
                    out.add_term(Monomial(v), a);
                    carry = f.mul(a, b);
                }
            }
        }
        Some(out)
    }

    /// Parses `c*X1^a*X2^b + ...`; `-` separates terms too, bare monomials get coefficient 1.
    pub fn parse(field: Arc<Field>, arity: usize, text: &str) -> Result<MPoly, PolyError> {
        let mut out = MPoly::zero(field.clone(), arity);
        for (neg, term) in split_terms(text)? {
            let (mono, z, c) = parse_term(&field, arity, &term, false)?;
            debug_assert_eq!(z, 0);
            out.add_term(mono, if neg { field.neg(c) } else { c });
        }
        Ok(out)
    }

    /// Terms as `[[exps...], coeff]` pairs.
    pub fn to_json_terms(&self) -> Vec<(Vec<u32>, u32)> {
        self.terms().map(|(m, c)| (m.0.clone(), c.0)).collect()
    }

    pub fn from_json_terms(field: Arc<Field>, arity: usize, terms: &[(Vec<u32>, u32)]) -> Result<MPoly, PolyError> {
        let mut out = MPoly::zero(field.clone(), arity);
        for (exps, c) in terms {
            if exps.len() != arity {
                return Err(PolyError::ArityMismatch { expected: arity, got: exps.len() });
            }
            let c = field.elem(*c as u64).map_err(|e| PolyError::Parse(e.to_string()))?;
            out.add_term(Monomial(exps.clone()), c);
        }
        Ok(out)
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{c}")?;
            } else if c.0 == 1 {
                write!(f, "{m}")?;
            } else {
                write!(f, "{c}*{m}")?;
            }
        }
        Ok(())
    }
}

fn split_terms(text: &str) -> Result<Vec<(bool, String)>, PolyError> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut neg = false;
    for ch in text.chars().filter(|c| !c.is_whitespace()) {
        if ch == '+' || ch == '-' {
            if !cur.is_empty() {
                out.push((neg, std::mem::take(&mut cur)));
            } else if out.is_empty() && neg {
                return Err(PolyError::Parse(text.to_string()));
            }
            neg = ch == '-';
        } else {
            cur.push(ch);
        }
    }
    if cur.is_empty() {
        return Err(PolyError::Parse(text.to_string()));
    }
    out.push((neg, cur));
    Ok(out)
}

fn parse_term(field: &Field, arity: usize, term: &str, allow_z: bool) -> Result<(Monomial, u32, FieldElem), PolyError> {
    let bad = || PolyError::Parse(term.to_string());
    let mut exps = vec![0u32; arity];
    let mut z = 0u32;
    let mut coeff = FieldElem::ONE;
    for factor in term.split('*') {
        let (base, e) = match factor.split_once('^') {
            Some((b, e)) => (b, e.parse::<u32>().map_err(|_| bad())?),
            None => (factor, 1),
        };
        if let Some(idx) = base.strip_prefix('X') {
            let j: usize = idx.parse().map_err(|_| bad())?;
            if j == 0 || j > arity {
                return Err(bad());
            }
            exps[j - 1] += e;
        } else if base == "Z" && allow_z {
            z += e;
        } else {
            let v: u64 = base.parse().map_err(|_| bad())?;
            let c = field.pow(field.elem(v).map_err(|_| bad())?, e as u64);
            coeff = field.mul(coeff, c);
        }
    }
    Ok((Monomial(exps), z, coeff))
}

/// `Q(X, Z) = Q_0(X) + Q_1(X) Z + ... + Q_t(X) Z^t`.
#[derive(Clone, PartialEq, Eq)]
pub struct ZPoly {
    coeffs: Vec<MPoly>,
}

impl fmt::Debug for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ZPoly({self})")
    }
}

impl ZPoly {
    /// Trailing zero coefficients are dropped; at least `Q_0` is kept.
    pub fn new(mut coeffs: Vec<MPoly>) -> Self {
        assert!(!coeffs.is_empty(), "a Z-polynomial needs at least Q_0");
        while coeffs.len() > 1 && coeffs.last().unwrap().is_zero() {
            coeffs.pop();
        }
        ZPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[MPoly] {
        &self.coeffs
    }

    pub fn field(&self) -> &Arc<Field> {
        self.coeffs[0].field()
    }

    pub fn arity(&self) -> usize {
        self.coeffs[0].arity()
    }

    pub fn z_degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(MPoly::is_zero)
    }

    /// `Z - f`.
    pub fn linear(f: &MPoly) -> ZPoly {
        let one = MPoly::constant(f.field().clone(), f.arity(), FieldElem::ONE);
        ZPoly::new(vec![f.neg(), one])
    }

    pub fn mul(&self, other: &ZPoly) -> ZPoly {
        let zero = MPoly::zero(self.field().clone(), self.arity());
        let mut out = vec![zero; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        ZPoly::new(out)
    }

    /// `sum_i Q_i f^i`, by Horner's rule.
    pub fn substitute_z(&self, f: &MPoly) -> Result<MPoly, PolyError> {
        if f.arity() != self.arity() {
            return Err(PolyError::ArityMismatch { expected: self.arity(), got: f.arity() });
        }
        let mut acc = MPoly::zero(self.field().clone(), self.arity());
        for q in self.coeffs.iter().rev() {
            acc = acc.mul(f).add(q);
        }
        Ok(acc)
    }

    /// Synthetic division by `Z - f`.
    ///
    /// Returns `(true, quotient)` when `(Z - f) * quotient == self`, otherwise
    /// `(false, quotient)` with a nonzero remainder dropped.
    pub fn divide_linear_z(&self, f: &MPoly) -> Result<(bool, ZPoly), PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        if f.arity() != self.arity() {
            return Err(PolyError::ArityMismatch { expected: self.arity(), got: f.arity() });
        }
        let t = self.z_degree();
        if t == 0 {
            let q0 = MPoly::zero(self.field().clone(), self.arity());
            return Ok((false, ZPoly::new(vec![q0])));
        }
        let mut quotient = vec![MPoly::zero(self.field().clone(), self.arity()); t];
        let mut carry = MPoly::zero(self.field().clone(), self.arity());
        for i in (1..=t).rev() {
            let b = self.coeffs[i].add(&carry);
            carry = b.mul(f);
            quotient[i - 1] = b;
        }
        let remainder = self.coeffs[0].add(&carry);
        Ok((remainder.is_zero(), ZPoly::new(quotient)))
    }

    /// Evaluates every coefficient at `X_last = b`.
    pub fn specialize_last(&self, b: FieldElem) -> ZPoly {
        ZPoly::new(self.coeffs.iter().map(|q| q.specialize_last(b)).collect())
    }

    /// The same polynomial as an `(m+1)`-variate [`MPoly`] with `Z` last.
    pub fn to_mpoly(&self) -> MPoly {
        let m = self.arity();
        let mut out = MPoly::zero(self.field().clone(), m + 1);
        for (i, q) in self.coeffs.iter().enumerate() {
            for (mono, c) in q.terms() {
                let mut v = mono.0.clone();
                v.push(i as u32);
                out.add_term(Monomial(v), c);
            }
        }
        out
    }

    /// Parses the same text form as [`MPoly::parse`] with an extra variable `Z`.
    pub fn parse(field: Arc<Field>, arity: usize, text: &str) -> Result<ZPoly, PolyError> {
        let mut coeffs: Vec<MPoly> = vec![MPoly::zero(field.clone(), arity)];
        for (neg, term) in split_terms(text)? {
            let (mono, z, c) = parse_term(&field, arity, &term, true)?;
            while coeffs.len() <= z as usize {
                coeffs.push(MPoly::zero(field.clone(), arity));
            }
            coeffs[z as usize].add_term(mono, if neg { field.neg(c) } else { c });
        }
        Ok(ZPoly::new(coeffs))
    }
}

impl fmt::Display for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, q) in self.coeffs.iter().enumerate().rev() {
            if q.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({q})")?,
                1 => write!(f, "({q})*Z")?,
                _ => write!(f, "({q})*Z^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
