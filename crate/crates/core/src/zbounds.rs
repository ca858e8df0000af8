//! Bounds on the number of zeros of prescribed multiplicity on a product grid.
//!
//! Given the lex leading monomial `X^i` of a nonzero polynomial and a grid
//! `S_1 x ... x S_m` with `|S_j| = s_j`, every function here bounds how many
//! grid points can be zeros of multiplicity at least `r`:
//!
//! * [`sz_mult_bound`]: `(i_1 s_2...s_m + ... + s_1...s_{m-1} i_m) / r`,
//! * [`footprint_bound`]: `n - prod(s_j - i_j)` for plain zeros,
//! * [`DMemo::d`]: the recursive `D` function, a maximisation over how the
//!   multiplicity can be spread over the slices `X_m = b`,
//! * [`closed_form_c`]: closed two-variable upper estimates of `D`.
//!
//! The recursive function is evaluated a whole row at a time: for a fixed
//! prefix `(i_1, ..., i_{m-1})` and multiplicity, one knapsack table yields
//! `D` for every last exponent at once.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::mpoly::Monomial;

/// Exact rational with normalised sign and `gcd(num, den) = 1`.
pub type Rational = Ratio<i64>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundError {
    #[error("the closed-form bound is only defined for two variables, got {0}")]
    MethodArityMismatch(usize),
    #[error("the footprint bound counts simple zeros only (r = 1), got r = {0}")]
    FootprintNeedsSimpleZeros(u32),
    #[error("no closed-form case applies to i = ({i1}, {i2}), r = {r}, s = ({s1}, {s2})")]
    NoCaseApplies { i1: u32, i2: u32, r: u32, s1: u32, s2: u32 },
    #[error("exponent vector has {got} entries, grid has {expected}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("invalid grid shape: {0}")]
    BadShape(String),
    #[error("unknown bound method {0:?}")]
    UnknownMethod(String),
}

/// Sizes `(s_1, ..., s_m)` of the grid factors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GridShape(Vec<u32>);

impl GridShape {
    pub fn new(sizes: impl Into<Vec<u32>>) -> Result<Self, BoundError> {
        let sizes = sizes.into();
        if sizes.is_empty() {
            return Err(BoundError::BadShape("no coordinates".into()));
        }
        if sizes.contains(&0) {
            return Err(BoundError::BadShape(format!("{sizes:?} has an empty factor")));
        }
        let n = sizes.iter().try_fold(1u64, |acc, &s| acc.checked_mul(s as u64));
        match n {
            Some(n) if n <= u32::MAX as u64 => Ok(GridShape(sizes)),
            _ => Err(BoundError::BadShape(format!("{sizes:?} has too many points"))),
        }
    }

    pub fn uniform(m: usize, q: u32) -> Result<Self, BoundError> {
        GridShape::new(vec![q; m])
    }

    pub fn sizes(&self) -> &[u32] {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    /// Number of grid points.
    pub fn n(&self) -> u64 {
        self.0.iter().map(|&s| s as u64).product()
    }

    fn check(&self, i: &Monomial) -> Result<(), BoundError> {
        if i.arity() != self.arity() {
            return Err(BoundError::ArityMismatch { expected: self.arity(), got: i.arity() });
        }
        Ok(())
    }
}

impl fmt::Display for GridShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for GridShape {
    type Err = BoundError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let sizes: Result<Vec<u32>, _> = s.split(',').map(|t| t.trim().parse::<u32>()).collect();
        GridShape::new(sizes.map_err(|_| BoundError::BadShape(s.to_string()))?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundMethod {
    RecursiveD,
    ClosedFormC,
    SchwartzZippel,
    Footprint,
}

impl BoundMethod {
    pub fn name(self) -> &'static str {
        match self {
            BoundMethod::RecursiveD => "recursive",
            BoundMethod::ClosedFormC => "closed",
            BoundMethod::SchwartzZippel => "sz",
            BoundMethod::Footprint => "footprint",
        }
    }
}

impl fmt::Display for BoundMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BoundMethod {
    type Err = BoundError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "recursive" | "d" | "recursive-d" => Ok(BoundMethod::RecursiveD),
            "closed" | "c" | "closed-form" | "closed-form-c" => Ok(BoundMethod::ClosedFormC),
            "sz" | "s" | "schwartz-zippel" => Ok(BoundMethod::SchwartzZippel),
            "footprint" | "f" => Ok(BoundMethod::Footprint),
            _ => Err(BoundError::UnknownMethod(s.to_string())),
        }
    }
}

/// `sum_j floor(i_j / s_j) < r`: exponents for which not every grid point
/// can be a zero of multiplicity `r`.
pub fn in_delta(i: &[u32], sizes: &[u32], r: u32) -> bool {
    let mut acc = 0u32;
    for (&e, &s) in i.iter().zip(sizes) {
        acc += e / s;
        if acc >= r {
            return false;
        }
    }
    true
}

/// Numerator of the Schwartz-Zippel sum `i_1 s_2...s_m + ... + s_1...s_{m-1} i_m`.
fn sz_numerator(i: &[u32], sizes: &[u32]) -> i64 {
    let n: i64 = sizes.iter().map(|&s| s as i64).product();
    i.iter().zip(sizes).map(|(&e, &s)| e as i64 * (n / s as i64)).sum()
}

/// The multiplicity Schwartz-Zippel bound, uncapped.
pub fn sz_mult_bound(i: &Monomial, shape: &GridShape, r: u32) -> Rational {
    assert!(r >= 1, "multiplicity must be positive");
    Rational::new(sz_numerator(i.exps(), shape.sizes()), r as i64)
}

/// `n - prod(s_j - i_j)`, or `n` when some `i_j >= s_j`.
pub fn footprint_bound(i: &Monomial, shape: &GridShape) -> u64 {
    let n = shape.n();
    if i.exps().iter().zip(shape.sizes()).any(|(&e, &s)| e >= s) {
        return n;
    }
    n - i.exps().iter().zip(shape.sizes()).map(|(&e, &s)| (s - e) as u64).product::<u64>()
}

/// All exponents in `Delta(r, m)`, in increasing lex order.
pub fn delta_set(r: u32, shape: &GridShape) -> Vec<Monomial> {
    let mut out = Vec::new();
    for_each_delta(r, shape, |e| out.push(Monomial::new(e.to_vec())));
    out
}

/// Visits `Delta(r, m)` in lex order without materialising it.
pub fn for_each_delta(r: u32, shape: &GridShape, mut visit: impl FnMut(&[u32])) {
    let sizes = shape.sizes();
    let m = sizes.len();
    let mut cur = vec![0u32; m];
    let mut used = vec![0u32; m + 1]; // used[j] = sum_{l<j} floor(cur_l / s_l)
    loop {
        visit(&cur);
        // odometer step with pruning on the floor sum
        let mut j = m;
        loop {
            if j == 0 {
                return;
            }
            j -= 1;
            cur[j] += 1;
            let q = used[j] + cur[j] / sizes[j];
            if q < r {
                used[j + 1] = q;
                for l in j + 1..m {
                    cur[l] = 0;
                    used[l + 1] = used[l];
                }
                break;
            }
            cur[j] = 0;
        }
    }
}

type RowKey = (Vec<u32>, u32);

/// Cache for the recursive `D` function on one grid shape.
///
/// Rows are keyed by `(prefix, r)`; a row holds `D(prefix, i_m, r)` for every
/// `i_m` in `0..=r * s_m` (larger `i_m` do not change the maximisation).
/// Lookups and inserts may happen from several threads; inserting a key
/// twice stores the same row.
#[derive(Debug)]
pub struct DMemo {
    shape: GridShape,
    rows: RwLock<HashMap<RowKey, Arc<[u64]>>>,
}

impl DMemo {
    pub fn new(shape: GridShape) -> Self {
        DMemo { shape, rows: RwLock::new(HashMap::new()) }
    }

    pub fn shape(&self) -> &GridShape {
        &self.shape
    }

    pub fn len(&self) -> usize {
        self.rows.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `D(i, r)`; returns `n` outright when `i` lies outside `Delta(r, m)`.
    pub fn d(&self, i: &[u32], r: u32) -> u64 {
        assert!(r >= 1, "multiplicity must be positive");
        assert_eq!(i.len(), self.shape.arity(), "exponent arity");
        if !in_delta(i, self.shape.sizes(), r) {
            return self.shape.n();
        }
        self.d_raw(i, r)
    }

    /// The recursion itself, without the `Delta` shortcut at the top level.
    fn d_raw(&self, i: &[u32], r: u32) -> u64 {
        let sizes = self.shape.sizes();
        let j = i.len();
        if r == 0 {
            return sizes[..j].iter().map(|&s| s as u64).product();
        }
        if j == 1 {
            return (i[0] / r).min(sizes[0]) as u64;
        }
        let row = self.row(&i[..j - 1], r);
        let idx = (i[j - 1] as usize).min(row.len() - 1);
        row[idx]
    }

    /// `D(prefix, i_j, r)` for all `i_j` in `0..=r * s_j`, where `j = prefix.len()`.
    pub fn row(&self, prefix: &[u32], r: u32) -> Arc<[u64]> {
        let key = (prefix.to_vec(), r);
        if let Some(row) = self.rows.read().unwrap().get(&key) {
            return row.clone();
        }
        let row: Arc<[u64]> = self.compute_row(prefix, r).into();
        self.rows.write().unwrap().entry(key).or_insert(row).clone()
    }

    fn compute_row(&self, prefix: &[u32], r: u32) -> Vec<u64> {
        let sizes = self.shape.sizes();
        let j = prefix.len();
        let s_next = sizes[j] as usize;
        // D(prefix, r') for r' = 0..=r; r' = 0 stands for a full slab
        let sub: Vec<u64> = (0..=r).map(|rr| self.d_raw(prefix, rr)).collect();
        let base = sub[r as usize];
        // Slice with multiplicity k contributes D(prefix, r - k) instead of D(prefix, r);
        // gains are relative to the all-zero distribution.
        let gain: Vec<i64> = (1..=r).map(|k| sub[(r - k) as usize] as i64 - base as i64).collect();
        let width = r as usize * s_next;
        // best[w] = max total gain with at most c slices and weight <= w, c growing to s_next
        let mut best = vec![0i64; width + 1];
        let mut next = best.clone();
        for _ in 0..s_next {
            for w in 0..=width {
                let mut v = best[w];
                for (k, &g) in gain.iter().enumerate() {
                    let k = k + 1;
                    if k > w {
                        break;
                    }
                    v = v.max(best[w - k] + g);
                }
                next[w] = v;
            }
            std::mem::swap(&mut best, &mut next);
        }
        best.iter().map(|&g| (s_next as u64 * base) as i64 + g).map(|v| v as u64).collect()
    }
}

/// `D(i, r)` with a caller-provided memo (which fixes the shape).
pub fn d_recursive(i: &Monomial, r: u32, memo: &DMemo) -> Result<u64, BoundError> {
    memo.shape().check(i)?;
    Ok(memo.d(i.exps(), r))
}

fn min_rat(a: Rational, b: Rational) -> Rational {
    if a <= b {
        a
    } else {
        b
    }
}

/// Closed-form two-variable estimate of `D(i_1, i_2, r, s_1, s_2)`.
///
/// Cases are tried in the order C.4, then C.1/C.2/C.3 for `k = 1..r-1`.
/// The value is capped at `min((i_1 s_2 + s_1 i_2) / r, s_1 s_2)`; outside
/// `Delta(r, 2)` it is `s_1 s_2`.
pub fn closed_form_c(i1: u32, i2: u32, r: u32, s1: u32, s2: u32) -> Result<Rational, BoundError> {
    assert!(r >= 1 && s1 >= 1 && s2 >= 1);
    let n = s1 as i64 * s2 as i64;
    if !in_delta(&[i1, i2], &[s1, s2], r) {
        return Ok(Rational::from_integer(n));
    }
    let (num, den) = closed_form_raw(i1, i2, r, s1, s2)?;
    let cap = min_rat(Rational::new(i1 as i64 * s2 as i64 + s1 as i64 * i2 as i64, r as i64), Rational::from_integer(n));
    Ok(min_rat(Rational::new(num, den), cap))
}

/// Uncapped case value as an unreduced fraction `(num, den)`, `den > 0`.
fn closed_form_raw(i1: u32, i2: u32, r: u32, s1: u32, s2: u32) -> Result<(i64, i64), BoundError> {
    let (a, b, s1, s2, r) = (i1 as i64, i2 as i64, s1 as i64, s2 as i64, r as i64);
    if s1 * (r - 1) <= a && a < s1 * r && b < s2 {
        let f = a / r;
        return Ok((s2 * f + b * (s1 - f), 1));
    }
    for k in 1..r {
        // lower edge (r-k) r s_1 / (r+1), compared exactly as a (r+1) >= (r-k) r s_1
        let above_edge = a * (r + 1) >= (r - k) * r * s1;
        let c12 = above_edge && a < (r - k) * s1;
        if c12 && b < k * s2 {
            // s2 a/r + (b/r)(a/(r-k))
            return Ok((s2 * a * (r - k) + b * a, r * (r - k)));
        }
        if c12 && k * s2 <= b && b < (k + 1) * s2 {
            // s2 a/r + ((k+1)s2 - b)(a/(r-k) - a/r) + (b - k s2)(s1 - a/r)
            let num = s2 * a * (r - k) + ((k + 1) * s2 - b) * a * k + (b - k * s2) * (s1 * r - a) * (r - k);
            return Ok((num, r * (r - k)));
        }
        if (r - k - 1) * s1 <= a && !above_edge && b < (k + 1) * s2 {
            // s2 a/r + (b/(k+1))(s1 - a/r)
            return Ok((s2 * a * (k + 1) + b * (s1 * r - a), r * (k + 1)));
        }
    }
    Err(BoundError::NoCaseApplies { i1, i2, r: r as u32, s1: s1 as u32, s2: s2 as u32 })
}

/// A bound method bound to a grid shape, with its own `D` cache.
#[derive(Debug)]
pub struct ZeroBound {
    method: BoundMethod,
    memo: DMemo,
}

impl ZeroBound {
    pub fn new(shape: GridShape, method: BoundMethod) -> Result<Self, BoundError> {
        if method == BoundMethod::ClosedFormC && shape.arity() != 2 {
            return Err(BoundError::MethodArityMismatch(shape.arity()));
        }
        Ok(ZeroBound { method, memo: DMemo::new(shape) })
    }

    pub fn shape(&self) -> &GridShape {
        self.memo.shape()
    }

    pub fn method(&self) -> BoundMethod {
        self.method
    }

    pub fn memo(&self) -> &DMemo {
        &self.memo
    }

    /// Bound on zeros of multiplicity `>= r` for leading exponent `i`, capped at `n`.
    pub fn dzero(&self, i: &[u32], r: u32) -> Result<Rational, BoundError> {
        let shape = self.shape();
        if i.len() != shape.arity() {
            return Err(BoundError::ArityMismatch { expected: shape.arity(), got: i.len() });
        }
        let n = shape.n() as i64;
        if !in_delta(i, shape.sizes(), r) {
            return Ok(Rational::from_integer(n));
        }
        let v = match self.method {
            BoundMethod::RecursiveD => Rational::from_integer(self.memo.d(i, r) as i64),
            BoundMethod::ClosedFormC => {
                let s = shape.sizes();
                closed_form_c(i[0], i[1], r, s[0], s[1])?
            }
            BoundMethod::SchwartzZippel => Rational::new(sz_numerator(i, shape.sizes()), r as i64),
            BoundMethod::Footprint => {
                if r != 1 {
                    return Err(BoundError::FootprintNeedsSimpleZeros(r));
                }
                Rational::from_integer(footprint_bound(&Monomial::new(i.to_vec()), shape) as i64)
            }
        };
        Ok(min_rat(v, Rational::from_integer(n)))
    }

    /// `dzero(i, r) < threshold` for an integer threshold; the hot path of radius searches.
    pub fn below(&self, i: &[u32], r: u32, threshold: i64) -> Result<bool, BoundError> {
        let shape = self.shape();
        if !in_delta(i, shape.sizes(), r) {
            return Ok((shape.n() as i64) < threshold);
        }
        match self.method {
            BoundMethod::RecursiveD => Ok((self.memo.d(i, r) as i64).min(shape.n() as i64) < threshold),
            BoundMethod::SchwartzZippel => {
                // min(num / r, n) < T  <=>  num < T r  or  n < T
                Ok(sz_numerator(i, shape.sizes()) < threshold * r as i64 || (shape.n() as i64) < threshold)
            }
            BoundMethod::ClosedFormC => {
                // min(v, sz, n) < T, all compared without reducing fractions
                let s = shape.sizes();
                let (num, den) = closed_form_raw(i[0], i[1], r, s[0], s[1])?;
                Ok(num < threshold * den
                    || sz_numerator(i, s) < threshold * r as i64
                    || (shape.n() as i64) < threshold)
            }
            BoundMethod::Footprint => Ok(self.dzero(i, r)? < Rational::from_integer(threshold)),
        }
    }
}

/// One-shot `dzero`; builds a throwaway cache for the recursive method.
pub fn dzero(i: &Monomial, r: u32, shape: &GridShape, method: BoundMethod) -> Result<Rational, BoundError> {
    shape.check(i)?;
    ZeroBound::new(shape.clone(), method)?.dzero(i.exps(), r)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StatKind {
    Max,
    Mean,
}

impl FromStr for StatKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "max" => Ok(StatKind::Max),
            "mean" => Ok(StatKind::Mean),
            _ => Err(format!("unknown statistic {s:?}, expected max or mean")),
        }
    }
}

/// How the Schwartz-Zippel term inside the mean-improvement ratio is read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MeanReading {
    /// `min{(i_1 + ... + i_m) q^{m-1}, q^m}`, no division by `r`.
    Literal,
    /// `min{floor((i_1 + ... + i_m) q^{m-1} / r), q^m}`; exponents where this is
    /// zero contribute `0/0` and are left out of the average.
    PerMultiplicity,
}

impl FromStr for MeanReading {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "literal" => Ok(MeanReading::Literal),
            "per-multiplicity" | "per-r" => Ok(MeanReading::PerMultiplicity),
            _ => Err(format!("unknown reading {s:?}, expected literal or per-multiplicity")),
        }
    }
}

/// Improvement of `D` over the Schwartz-Zippel count on the uniform grid `q^m`.
///
/// * `Max`: `max_i (min{floor(|i| q^{m-1} / r), q^m} - D(i)) / q^m` over `Delta(r, m)`.
/// * `Mean`: the average of `(sz - D(i)) / sz` over nonzero `i` in `Delta(r, m)`,
///   with `sz` chosen by `reading`.
///
/// The Schwartz-Zippel term of the maximum is floored: both quantities count grid points.
pub fn improvement_stats(m: usize, q: u32, r: u32, which: StatKind, reading: MeanReading) -> Result<BigRational, BoundError> {
    let shape = GridShape::uniform(m, q)?;
    let memo = DMemo::new(shape.clone());
    let n = shape.n() as i64;
    let slab = n / q as i64;
    let mut best = Rational::zero();
    // mean terms grouped by denominator: sz -> (sum of sz - D, count)
    let mut by_sz: HashMap<i64, i64> = HashMap::new();
    let mut count = 0i64;
    for_each_delta(r, &shape, |i| {
        let deg: i64 = i.iter().map(|&e| e as i64).sum();
        let d = memo.d(i, r) as i64;
        match which {
            StatKind::Max => {
                let sz = (deg * slab / r as i64).min(n);
                best = best.max(Rational::new(sz - d, n));
            }
            StatKind::Mean => {
                if deg == 0 {
                    return;
                }
                let sz = match reading {
                    MeanReading::Literal => (deg * slab).min(n),
                    MeanReading::PerMultiplicity => (deg * slab / r as i64).min(n),
                };
                if sz == 0 {
                    return;
                }
                *by_sz.entry(sz).or_default() += sz - d;
                count += 1;
            }
        }
    });
    let big = |x: i64| BigInt::from(x);
    Ok(match which {
        StatKind::Max => BigRational::new(big(*best.numer()), big(*best.denom())),
        StatKind::Mean if count == 0 => BigRational::zero(),
        StatKind::Mean => {
            let mut sz: Vec<(i64, i64)> = by_sz.into_iter().collect();
            sz.sort_unstable();
            let sum: BigRational = sz.into_iter().map(|(den, num)| BigRational::new(big(num), big(den))).sum();
            sum / BigRational::from_integer(big(count))
        }
    })
}

/// Renders `x >= 0` with three decimals, truncating toward zero.
pub fn truncate3<T>(x: &Ratio<T>) -> String
where
    T: Clone + Integer + Signed + fmt::Display + From<i32>,
{
    let scaled = (x * Ratio::from_integer(T::from(1000))).trunc().to_integer();
    let sign = if scaled.is_negative() { "-" } else { "" };
    let (whole, frac) = scaled.abs().div_rem(&T::from(1000));
    format!("{sign}{whole}.{frac:0>3}")
}

/// Lossy conversion for display.
pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    fn shape(s: &[u32]) -> GridShape {
        GridShape::new(s.to_vec()).unwrap()
    }

    // D by enumerating every (u_1..u_r) in A(i_m, r, s_m), straight from the definition.
    fn d_brute(i: &[u32], r: u32, s: &[u32]) -> u64 {
        let m = i.len();
        if m == 1 {
            return (i[0] / r).min(s[0]) as u64;
        }
        let (pre, ps) = (&i[..m - 1], &s[..m - 1]);
        let slab: u64 = ps.iter().map(|&x| x as u64).product();
        let sub = |rr: u32| if rr == 0 { slab } else { d_brute(pre, rr, ps) };
        let mut best = 0;
        let mut u = vec![0u32; r as usize];
        fn rec(k: usize, u: &mut Vec<u32>, cnt: u32, wt: u32, sm: u32, im: u32, visit: &mut dyn FnMut(&[u32])) {
            if k == u.len() {
                visit(u);
                return;
            }
            let mut c = 0;
            while cnt + c <= sm && wt + (k as u32 + 1) * c <= im {
                u[k] = c;
                rec(k + 1, u, cnt + c, wt + (k as u32 + 1) * c, sm, im, visit);
                c += 1;
            }
            u[k] = 0;
        }
        let sm = s[m - 1];
        rec(0, &mut u, 0, 0, sm, i[m - 1], &mut |u: &[u32]| {
            let used: u32 = u.iter().sum();
            let mut v = (sm - used) as u64 * sub(r);
            for (k, &uk) in u.iter().enumerate() {
                v += uk as u64 * sub(r - (k as u32 + 1));
            }
            best = best.max(v);
        });
        best
    }

    #[test]
    fn sz_examples() {
        assert_eq!(sz_mult_bound(&mono(&[2, 3]), &shape(&[4, 5]), 2), Rational::from_integer(11));
        assert_eq!(sz_mult_bound(&mono(&[0, 0, 0]), &shape(&[4, 5, 6]), 3), Rational::zero());
        assert_eq!(sz_mult_bound(&mono(&[3, 1]), &shape(&[2, 2]), 2), Rational::from_integer(4));
        assert_eq!(sz_mult_bound(&mono(&[1, 0]), &shape(&[3, 3]), 2), Rational::new(3, 2));
    }

    #[test]
    fn footprint_examples() {
        assert_eq!(footprint_bound(&mono(&[2, 3]), &shape(&[4, 5])), 16);
        assert_eq!(footprint_bound(&mono(&[0, 0]), &shape(&[4, 5])), 0);
        assert_eq!(footprint_bound(&mono(&[1, 1]), &shape(&[128, 64])), 191);
        assert_eq!(footprint_bound(&mono(&[4, 0]), &shape(&[4, 5])), 20);
    }

    #[test]
    fn recursive_examples() {
        let m1 = DMemo::new(shape(&[10]));
        assert_eq!(m1.d(&[5], 2), 2);
        let m2 = DMemo::new(shape(&[2, 2]));
        assert_eq!(m2.d(&[3, 1], 2), 3);
        let m3 = DMemo::new(shape(&[4, 4]));
        assert_eq!(m3.d(&[7, 0], 3), 8);
        assert_eq!(d_brute(&[3, 1], 2, &[2, 2]), 3);
        assert_eq!(d_brute(&[7, 0], 3, &[4, 4]), 8);
    }

    #[test]
    fn recursive_matches_enumeration() {
        for s in [vec![2, 3], vec![3, 2], vec![4, 4], vec![5, 3], vec![2, 2, 2], vec![3, 2, 3]] {
            let sh = shape(&s);
            let memo = DMemo::new(sh.clone());
            for r in 1..=4 {
                for_each_delta(r, &sh, |i| {
                    assert_eq!(memo.d(i, r), d_brute(i, r, &s), "i={i:?} r={r} s={s:?}");
                });
            }
        }
    }

    #[test]
    fn base_case_identity() {
        for s1 in 1..8 {
            let memo = DMemo::new(shape(&[s1]));
            for r in 1..5 {
                for i1 in 0..r * s1 {
                    assert_eq!(memo.d(&[i1], r), (i1 / r).min(s1) as u64);
                }
            }
        }
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(closed_form_c(5, 2, 2, 4, 4).unwrap(), Rational::from_integer(12));
        assert_eq!(DMemo::new(shape(&[4, 4])).d(&[5, 2], 2), 12);
        assert_eq!(closed_form_c(0, 0, 3, 4, 4).unwrap(), Rational::zero());
        assert_eq!(closed_form_c(11, 3, 3, 4, 4).unwrap(), Rational::from_integer(15));
        assert_eq!(DMemo::new(shape(&[4, 4])).d(&[11, 3], 3), 15);
        // outside Delta
        assert_eq!(closed_form_c(4, 4, 2, 4, 4).unwrap(), Rational::from_integer(16));
    }

    #[test]
    fn dzero_examples() {
        let s = shape(&[2, 2]);
        assert_eq!(dzero(&mono(&[3, 1]), 2, &s, BoundMethod::RecursiveD).unwrap(), Rational::from_integer(3));
        for m in [BoundMethod::RecursiveD, BoundMethod::ClosedFormC, BoundMethod::SchwartzZippel] {
            assert_eq!(dzero(&mono(&[2, 2]), 2, &s, m).unwrap(), Rational::from_integer(4));
        }
        assert_eq!(dzero(&mono(&[3, 1]), 2, &s, BoundMethod::SchwartzZippel).unwrap(), Rational::from_integer(4));
        assert_eq!(
            dzero(&mono(&[1, 1, 1]), 2, &shape(&[2, 2, 2]), BoundMethod::ClosedFormC).unwrap_err(),
            BoundError::MethodArityMismatch(3)
        );
        assert_eq!(dzero(&mono(&[1, 1]), 2, &s, BoundMethod::Footprint).unwrap_err(), BoundError::FootprintNeedsSimpleZeros(2));
        assert_eq!(dzero(&mono(&[1, 1]), 1, &s, BoundMethod::Footprint).unwrap(), Rational::from_integer(3));
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta_set(1, &shape(&[2, 2])).len(), 4);
        let d = delta_set(2, &shape(&[2, 2]));
        assert_eq!(d.len(), 12);
        let brute: Vec<Monomial> = (0..4)
            .flat_map(|a| (0..4).map(move |b| mono(&[a, b])))
            .filter(|m| m.0[0] / 2 + m.0[1] / 2 < 2)
            .collect();
        assert_eq!(d, brute);
        let one = delta_set(1, &shape(&[5]));
        assert_eq!(one, (0..5).map(|a| mono(&[a])).collect::<Vec<_>>());
    }

    #[test]
    fn stats_examples() {
        let max = improvement_stats(2, 2, 2, StatKind::Max, MeanReading::PerMultiplicity).unwrap();
        assert_eq!(truncate3(&max), "0.250");
        let mean = improvement_stats(2, 2, 2, StatKind::Mean, MeanReading::PerMultiplicity).unwrap();
        assert_eq!(truncate3(&mean), "0.363");
        let max = improvement_stats(3, 4, 3, StatKind::Max, MeanReading::PerMultiplicity).unwrap();
        assert_eq!(truncate3(&max), "0.250");
    }

    #[test]
    fn truncation_rendering() {
        assert_eq!(truncate3(&Rational::new(1, 4)), "0.250");
        assert_eq!(truncate3(&Rational::new(2, 3)), "0.666");
        assert_eq!(truncate3(&Rational::new(3, 1)), "3.000");
        assert_eq!(truncate3(&Rational::new(-1, 3)), "-0.333");
    }

    #[test]
    fn parsing() {
        assert_eq!("128,64".parse::<GridShape>().unwrap(), shape(&[128, 64]));
        assert!("0,3".parse::<GridShape>().is_err());
        assert_eq!("recursive".parse::<BoundMethod>().unwrap(), BoundMethod::RecursiveD);
        assert_eq!("S".parse::<BoundMethod>().unwrap(), BoundMethod::SchwartzZippel);
        assert!("x".parse::<BoundMethod>().is_err());
    }
}
