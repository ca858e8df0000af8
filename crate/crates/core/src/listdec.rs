//! Interpolation-based list decoding of `E(M, S)` with multiplicity.
//!
//! Decoding has two phases:
//!
//! * Preparation ([`Preparation`]): for a multiplicity `r` and an error count
//!   `E`, pick monomial supports `B(i, E, r)` for the coefficients `Q_i` of
//!   the interpolation polynomial `Q = sum_i Q_i(X) Z^i`. A monomial `K` is
//!   allowed for `Q_i` when `K M^i` has fewer than `n - E` zeros of
//!   multiplicity `r` for every border monomial `M` of the family. Supports
//!   are accumulated over `i = 0, 1, 2, ...` until they hold more unknowns
//!   than there are linear conditions.
//! * Decoding ([`decode`]): solve for `Q` vanishing to order `r` at every
//!   `(P_j, r_j)`, then collect the factors `Z - F` of `Q` with `F`
//!   supported on the family.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::avcode::{hamming_distance, Code, CodeError, MonomialFamily, PointEnsemble};
use crate::gf::{Field, FieldElem};
use crate::linalg::Matrix;
use crate::mpoly::{binom_mod, MPoly, Monomial, PolyError, ZPoly};
use crate::zbounds::{for_each_delta, in_delta, BoundError, BoundMethod, GridShape, Rational, ZeroBound};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecodeError {
    #[error("no interpolation supports exist for r = {r}, E = {e}")]
    RadiusInfeasible { r: u32, e: u64 },
    #[error("not even E = 0 is feasible with r = {0}")]
    NoCorrection(u32),
    #[error("error count {e} must be below the code length {n}")]
    TooManyErrors { e: u64, n: u64 },
    #[error("decoder plan does not match the code: {0}")]
    PlanMismatch(String),
    #[error("interpolation system has a trivial kernel")]
    InternalNoKernel,
    #[error("more than {0} candidate roots")]
    ListOverflow(usize),
    #[error("received word has length {got}, code length is {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("multiplicity must be at least 1")]
    ZeroMultiplicity,
    #[error(transparent)]
    Bound(#[from] BoundError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Code(#[from] CodeError),
}

/// `C(m + r, m + 1)`: linear conditions per point for a zero of multiplicity `r` in `m + 1` variables.
pub fn n_constraints(m: usize, r: u32) -> u64 {
    let (top, k) = (m as u64 + r as u64, m as u64 + 1);
    (0..k).fold(1u64, |acc, j| acc * (top - j) / (j + 1))
}

/// Precomputed state for one `(shape, family, method, r)`; independent of `E`.
#[derive(Debug)]
pub struct Preparation {
    bound: ZeroBound,
    border: Vec<Monomial>,
    r: u32,
    // Delta(r, m), flattened row after row
    delta: Vec<u32>,
}

impl Preparation {
    pub fn new(r: u32, shape: GridShape, family: &MonomialFamily, method: BoundMethod) -> Result<Self, DecodeError> {
        if r == 0 {
            return Err(DecodeError::ZeroMultiplicity);
        }
        if family.arity() != shape.arity() {
            return Err(CodeError::ArityMismatch { expected: shape.arity(), got: family.arity() }.into());
        }
        let bound = ZeroBound::new(shape.clone(), method)?;
        let mut delta = Vec::new();
        for_each_delta(r, &shape, |k| delta.extend_from_slice(k));
        Ok(Preparation { bound, border: family.border().to_vec(), r, delta })
    }

    pub fn shape(&self) -> &GridShape {
        self.bound.shape()
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn method(&self) -> BoundMethod {
        self.bound.method()
    }

    pub fn n(&self) -> u64 {
        self.shape().n()
    }

    /// `n N(m, r)`, the number of linear conditions on `Q`.
    pub fn conditions(&self) -> u64 {
        self.n() * n_constraints(self.shape().arity(), self.r)
    }

    fn delta_iter(&self) -> std::slice::ChunksExact<'_, u32> {
        self.delta.chunks_exact(self.shape().arity())
    }

    fn unit_border(&self) -> bool {
        self.border.iter().all(Monomial::is_one)
    }

    /// `max over border M of dzero(K M^i)`.
    pub fn worst(&self, k: &[u32], i: u32) -> Result<Rational, DecodeError> {
        let mut worst = Rational::from_integer(0);
        let mut buf = vec![0u32; k.len()];
        for m in &self.border {
            for (b, (&a, &e)) in buf.iter_mut().zip(k.iter().zip(m.exps())) {
                *b = a + e * i;
            }
            worst = worst.max(self.bound.dzero(&buf, self.r)?);
        }
        Ok(worst)
    }

    fn passes(&self, k: &[u32], i: u32, threshold: i64, buf: &mut [u32]) -> Result<bool, DecodeError> {
        for m in &self.border {
            for (b, (&a, &e)) in buf.iter_mut().zip(k.iter().zip(m.exps())) {
                *b = a + e * i;
            }
            if !self.bound.below(buf, self.r, threshold)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `B(i, E, r)` in increasing lex order.
    pub fn b_set(&self, i: u32, e: u64) -> Result<Vec<Monomial>, DecodeError> {
        let n = self.n();
        if e >= n {
            return Err(DecodeError::TooManyErrors { e, n });
        }
        let threshold = (n - e) as i64;
        let mut buf = vec![0u32; self.shape().arity()];
        let mut out = Vec::new();
        for k in self.delta_iter() {
            if self.passes(k, i, threshold, &mut buf)? {
                out.push(Monomial::new(k.to_vec()));
            }
        }
        Ok(out)
    }

    /// Builds the supports for `E` errors, or fails with [`DecodeError::RadiusInfeasible`].
    pub fn plan(&self, e: u64, family: &MonomialFamily) -> Result<DecoderPlan, DecodeError> {
        if e >= self.n() {
            return Err(DecodeError::RadiusInfeasible { r: self.r, e });
        }
        let needed = self.conditions() + 1;
        let b0 = self.b_set(0, e)?;
        // Q_0 alone cannot vanish to order r everywhere, so |B(0)| <= n N(m, r) and t >= 1
        let mut acc = b0.len() as u64;
        let mut supports = vec![b0];
        let mut i = 1u32;
        loop {
            let mut b = self.b_set(i, e)?;
            if b.is_empty() {
                return Err(DecodeError::RadiusInfeasible { r: self.r, e });
            }
            if acc + b.len() as u64 >= needed {
                b.truncate((needed - acc) as usize);
                supports.push(b);
                break;
            }
            acc += b.len() as u64;
            supports.push(b);
            i += 1;
        }
        Ok(DecoderPlan {
            r: self.r,
            e,
            t: i,
            method: self.method(),
            shape: self.shape().clone(),
            family: family.clone(),
            supports,
        })
    }

    /// Whether supports exist for `E` errors, i.e. `sum_{i >= 0} |B(i, E, r)| > n N(m, r)`.
    ///
    /// Counts per `K` with a bisection over `i`, which relies on `dzero(K M^i)`
    /// being nondecreasing in `i`.
    pub fn feasible(&self, e: u64) -> Result<bool, DecodeError> {
        let n = self.n();
        if e >= n {
            return Ok(false);
        }
        let threshold = (n - e) as i64;
        let needed = self.conditions() + 1;
        let mut buf = vec![0u32; self.shape().arity()];
        let top = self.r * self.shape().sizes().iter().max().copied().unwrap_or(1);
        let mut count = 0u64;
        for k in self.delta_iter() {
            if !self.passes(k, 0, threshold, &mut buf)? {
                continue;
            }
            if self.unit_border() {
                return Ok(true);
            }
            // largest i in [0, top] that passes
            let (mut lo, mut hi) = (0u32, top);
            while lo < hi {
                let mid = lo + (hi - lo).div_ceil(2);
                if self.passes(k, mid, threshold, &mut buf)? {
                    lo = mid;
                } else {
                    hi = mid - 1;
                }
            }
            count += lo as u64 + 1;
            if count >= needed {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Largest `E` with [`Preparation::feasible`], by bisection over `[0, n - 1]`.
    pub fn max_radius(&self) -> Result<u64, DecodeError> {
        if !self.feasible(0)? {
            return Err(DecodeError::NoCorrection(self.r));
        }
        let (mut lo, mut hi) = (0u64, self.n() - 1);
        while lo < hi {
            let mid = lo + (hi - lo).div_ceil(2);
            if self.feasible(mid)? {
                lo = mid;
            } else {
                hi = mid - 1;
            }
        }
        Ok(lo)
    }

    /// Reference radius by linear scan of [`Preparation::plan`]; slow.
    pub fn max_radius_linear(&self, family: &MonomialFamily) -> Result<u64, DecodeError> {
        let mut best = None;
        for e in 0..self.n() {
            match self.plan(e, family) {
                Ok(_) => best = Some(e),
                Err(DecodeError::RadiusInfeasible { .. }) => {}
                Err(other) => return Err(other),
            }
        }
        best.ok_or(DecodeError::NoCorrection(self.r))
    }
}

/// Supports `B(i, E, r)` for `i = 0..t-1` and the trimmed `B'(t, E, r)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecoderPlan {
    pub r: u32,
    #[serde(rename = "E")]
    pub e: u64,
    pub t: u32,
    pub method: BoundMethod,
    pub shape: GridShape,
    pub family: MonomialFamily,
    /// `supports[i]` bounds `Supp(Q_i)`; `supports[0]` is `B(0, E, r)` and `supports[t]` is `B'(t, E, r)`.
    pub supports: Vec<Vec<Monomial>>,
}

impl DecoderPlan {
    pub fn unknowns(&self) -> usize {
        self.supports.iter().map(Vec::len).sum()
    }

    /// `sum_{i=0}^{t} |supports[i]|`, which equals `n N(m, r) + 1`.
    pub fn counted_unknowns(&self) -> u64 {
        self.unknowns() as u64
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plans serialize")
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }
}

/// `b_set` without keeping a [`Preparation`] around.
pub fn b_set(
    i: u32,
    e: u64,
    r: u32,
    shape: &GridShape,
    family: &MonomialFamily,
    method: BoundMethod,
) -> Result<Vec<Monomial>, DecodeError> {
    Preparation::new(r, shape.clone(), family, method)?.b_set(i, e)
}

pub fn plan(r: u32, e: u64, shape: &GridShape, family: &MonomialFamily, method: BoundMethod) -> Result<DecoderPlan, DecodeError> {
    Preparation::new(r, shape.clone(), family, method)?.plan(e, family)
}

pub fn max_radius(r: u32, shape: &GridShape, family: &MonomialFamily, method: BoundMethod) -> Result<u64, DecodeError> {
    Preparation::new(r, shape.clone(), family, method)?.max_radius()
}

fn check_plan(plan: &DecoderPlan, ensemble: &PointEnsemble) -> Result<(), DecodeError> {
    if &plan.shape != ensemble.shape() {
        return Err(DecodeError::PlanMismatch(format!("plan shape {} vs grid {}", plan.shape, ensemble.shape())));
    }
    if plan.supports.len() != plan.t as usize + 1 {
        return Err(DecodeError::PlanMismatch("support count differs from t + 1".into()));
    }
    Ok(())
}

/// Finds a nonzero `Q` with `Supp(Q_i)` inside the plan supports and
/// multiplicity at least `r` at every `(P_j, received_j)`.
pub fn interpolate(plan: &DecoderPlan, ensemble: &PointEnsemble, received: &[FieldElem]) -> Result<ZPoly, DecodeError> {
    check_plan(plan, ensemble)?;
    if received.len() != ensemble.n() {
        return Err(DecodeError::LengthMismatch { expected: ensemble.n(), got: received.len() });
    }
    let field = ensemble.field();
    let p = field.characteristic() as u64;
    let m = ensemble.shape().arity();
    let r = plan.r;

    let columns: Vec<(u32, &Monomial)> =
        plan.supports.iter().enumerate().flat_map(|(i, b)| b.iter().map(move |k| (i as u32, k))).collect();
    // derivative orders (k, k_z) with |k| + k_z < r
    let mut orders: Vec<(Vec<u32>, u32)> = Vec::new();
    for total in 0..r {
        for kz in 0..=total {
            for k in compositions(total - kz, m) {
                orders.push((k, kz));
            }
        }
    }
    debug_assert_eq!(orders.len() as u64, n_constraints(m, r));

    let max_exp = columns.iter().flat_map(|(_, k)| k.exps().iter().copied()).max().unwrap_or(0);
    let mut matrix = Matrix::zeros(ensemble.n() * orders.len(), columns.len());
    let mut row = 0;
    for (point, &rj) in ensemble.points().iter().zip(received) {
        let powers: Vec<Vec<FieldElem>> =
            point.iter().map(|&a| (0..=max_exp).map(|e| field.pow(a, e as u64)).collect()).collect();
        let zpow: Vec<FieldElem> = (0..=plan.t).map(|e| field.pow(rj, e as u64)).collect();
        for (k, kz) in &orders {
            for (col, (i, mono)) in columns.iter().enumerate() {
                if *i < *kz || !k.iter().zip(mono.exps()).all(|(a, b)| a <= b) {
                    continue;
                }
                let mut c = binom_mod(*i as u64, *kz as u64, p);
                for (&e, &kk) in mono.exps().iter().zip(k) {
                    c = c * binom_mod(e as u64, kk as u64, p) % p;
                }
                if c == 0 {
                    continue;
                }
                let mut v = field.mul(field.from_int(c), zpow[(*i - *kz) as usize]);
                for (l, (&e, &kk)) in mono.exps().iter().zip(k).enumerate() {
                    v = field.mul(v, powers[l][(e - kk) as usize]);
                }
                matrix.set(row, col, v);
            }
            row += 1;
        }
    }
    let x = matrix.kernel_vector(field).ok_or(DecodeError::InternalNoKernel)?;
    let mut coeffs: Vec<MPoly> = (0..=plan.t).map(|_| MPoly::zero(field.clone(), m)).collect();
    for ((i, mono), c) in columns.iter().zip(x) {
        coeffs[*i as usize].add_term((*mono).clone(), c);
    }
    Ok(ZPoly::new(coeffs))
}

fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    if parts == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Checks that `(P_j, received_j)` is a zero of `Q` of multiplicity at least `r` for every `j`.
pub fn verify_interpolation(q: &ZPoly, ensemble: &PointEnsemble, received: &[FieldElem], r: u32) -> Result<bool, DecodeError> {
    let full = q.to_mpoly();
    for (point, &rj) in ensemble.points().iter().zip(received) {
        let mut pt = point.clone();
        pt.push(rj);
        if !full.multiplicity_at(&pt)?.at_least(r) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All `F` with `Supp(F)` inside `family` such that `Z - F` divides `q`.
///
/// Works one variable at a time: `X_m` is fixed to `d + 1` points of `S_m`
/// (`d` the largest `X_m` exponent in the family), each slice is solved
/// recursively, and candidates are rebuilt in Newton form; a branch dies as
/// soon as a Newton coefficient uses a monomial the family cannot reach.
pub fn z_roots(q: &ZPoly, family: &MonomialFamily, ensemble: &PointEnsemble, cap: usize) -> Result<Vec<MPoly>, DecodeError> {
    if q.is_zero() {
        return Err(PolyError::ZeroPolynomial.into());
    }
    if family.arity() != q.arity() || ensemble.shape().arity() != q.arity() {
        return Err(PolyError::ArityMismatch { expected: q.arity(), got: family.arity() }.into());
    }
    let allowed: BTreeSet<Vec<u32>> = family.monomials().iter().map(|m| m.exps().to_vec()).collect();
    let mut roots = roots_rec(q, &allowed, ensemble.sets(), ensemble.field(), cap)?;
    roots.sort_by(|a, b| a.terms().rev().map(|(m, c)| (m.clone(), c)).cmp(b.terms().rev().map(|(m, c)| (m.clone(), c))));
    Ok(roots)
}

fn roots_rec(
    q: &ZPoly,
    allowed: &BTreeSet<Vec<u32>>,
    sets: &[Vec<FieldElem>],
    field: &Arc<Field>,
    cap: usize,
) -> Result<Vec<MPoly>, DecodeError> {
    let a = q.arity();
    let zero = MPoly::zero(field.clone(), a);
    if allowed.is_empty() {
        return Ok(if q.substitute_z(&zero)?.is_zero() { vec![zero] } else { Vec::new() });
    }
    if a == 0 {
        let mut out = Vec::new();
        for c in field.elements() {
            let f = MPoly::constant(field.clone(), 0, c);
            if q.substitute_z(&f)?.is_zero() {
                out.push(f);
                if out.len() > cap {
                    return Err(DecodeError::ListOverflow(cap));
                }
            }
        }
        return Ok(out);
    }

    let d = allowed.iter().map(|k| k[a - 1]).max().unwrap_or(0) as usize;
    let points = &sets[a - 1][..=d];
    // reach[j]: projections K' with K' X_a^e allowed for some e >= j
    let reach: Vec<BTreeSet<Vec<u32>>> = (0..=d)
        .map(|j| allowed.iter().filter(|k| k[a - 1] as usize >= j).map(|k| k[..a - 1].to_vec()).collect())
        .collect();

    // strip factors (X_a - b) so every slice is a nonzero polynomial
    let mut reduced = q.clone();
    for &b in points {
        while reduced.specialize_last(b).is_zero() {
            let parts: Vec<MPoly> =
                reduced.coeffs().iter().map(|c| c.div_linear_last(b).expect("slice vanished")).collect();
            reduced = ZPoly::new(parts);
        }
    }
    let mut slice_roots = Vec::with_capacity(d + 1);
    for &b in points {
        let slice = reduced.specialize_last(b);
        let rs = roots_rec(&slice, &reach[0], &sets[..a - 1], field, cap)?;
        if rs.is_empty() {
            return Ok(Vec::new());
        }
        slice_roots.push(rs);
    }

    let mut found: Vec<MPoly> = Vec::new();
    let mut newton: Vec<MPoly> = Vec::with_capacity(d + 1);
    search(&mut newton, &slice_roots, points, &reach, field, &mut |g: &[MPoly]| {
        // F = sum_j G_j prod_{l<j} (X_a - b_l)
        let mut f = MPoly::zero(field.clone(), a);
        let mut basis = MPoly::constant(field.clone(), a, FieldElem::ONE);
        for (j, gj) in g.iter().enumerate() {
            f = f.add(&gj.extend_last(0).mul(&basis));
            basis = basis.mul(&MPoly::linear(field.clone(), a, a - 1, points[j]));
        }
        if f.support().all(|k| allowed.contains(k.exps())) && q.divide_linear_z(&f)?.0 && !found.contains(&f) {
            found.push(f);
            if found.len() > cap {
                return Err(DecodeError::ListOverflow(cap));
            }
        }
        Ok(())
    })?;
    Ok(found)
}

fn search(
    newton: &mut Vec<MPoly>,
    slice_roots: &[Vec<MPoly>],
    points: &[FieldElem],
    reach: &[BTreeSet<Vec<u32>>],
    field: &Field,
    leaf: &mut dyn FnMut(&[MPoly]) -> Result<(), DecodeError>,
) -> Result<(), DecodeError> {
    let j = newton.len();
    if j == slice_roots.len() {
        return leaf(newton);
    }
    let b = points[j];
    // value of the partial Newton sum at X_a = b, and prod_{l<j} (b - b_l)
    let mut partial = MPoly::zero(newton.first().map_or_else(|| slice_roots[0][0].field().clone(), |g| g.field().clone()), slice_roots[0][0].arity());
    let mut weight = FieldElem::ONE;
    for (l, gl) in newton.iter().enumerate() {
        partial = partial.add(&gl.scale(weight));
        weight = field.mul(weight, field.sub(b, points[l]));
    }
    let inv = field.inv(weight).expect("points are distinct");
    for g in &slice_roots[j] {
        let coeff = g.sub(&partial).scale(inv);
        if !coeff.support().all(|k| reach[j].contains(k.exps())) {
            continue;
        }
        newton.push(coeff);
        search(newton, slice_roots, points, reach, field, leaf)?;
        newton.pop();
    }
    Ok(())
}

/// One entry of the output list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Candidate {
    pub message: MPoly,
    pub codeword: Vec<FieldElem>,
    pub distance: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodeOutput {
    pub interpolant: ZPoly,
    /// Sorted by distance to the received word.
    pub candidates: Vec<Candidate>,
}

impl DecodeOutput {
    pub fn contains(&self, codeword: &[FieldElem]) -> bool {
        self.candidates.iter().any(|c| c.codeword == codeword)
    }
}

/// Interpolates, extracts the `Z`-roots, and lists their codewords.
pub fn decode(code: &Code, plan: &DecoderPlan, received: &[FieldElem]) -> Result<DecodeOutput, DecodeError> {
    if &plan.family != code.family() {
        return Err(DecodeError::PlanMismatch("plan was prepared for another monomial family".into()));
    }
    let q = interpolate(plan, code.ensemble(), received)?;
    let roots = z_roots(&q, code.family(), code.ensemble(), q.z_degree().max(1))?;
    let mut candidates: Vec<Candidate> = roots
        .into_iter()
        .map(|f| {
            let codeword = code.ensemble().evaluate(&f);
            let distance = hamming_distance(&codeword, received);
            Candidate { message: f, codeword, distance }
        })
        .collect();
    candidates.sort_by_key(|c| c.distance);
    Ok(DecodeOutput { interpolant: q, candidates })
}

/// Whether every exponent of the plan supports lies in `Delta(r, m)`.
pub fn supports_in_delta(plan: &DecoderPlan) -> bool {
    plan.supports.iter().flatten().all(|k| in_delta(k.exps(), plan.shape.sizes(), plan.r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::avcode::FamilySpec;

    fn gf(p: u64, e: u32) -> Arc<Field> {
        Arc::new(Field::new(p, e).unwrap())
    }

    fn shape(s: &[u32]) -> GridShape {
        GridShape::new(s.to_vec()).unwrap()
    }

    fn mono(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn constraint_counts() {
        assert_eq!(n_constraints(2, 2), 4);
        assert_eq!(n_constraints(1, 1), 1);
        assert_eq!(n_constraints(2, 4), 20);
        assert_eq!(compositions(2, 2).len(), 3);
    }

    #[test]
    fn b_set_for_unit_family() {
        let s = shape(&[2, 2]);
        let fam = MonomialFamily::new(2, [mono(&[0, 0])]).unwrap();
        let prep = Preparation::new(2, s.clone(), &fam, BoundMethod::RecursiveD).unwrap();
        let b1 = prep.b_set(1, 1).unwrap();
        assert_eq!(b1, prep.b_set(3, 1).unwrap());
        let memo = crate::zbounds::DMemo::new(s);
        let brute: Vec<Monomial> = crate::zbounds::delta_set(2, prep.shape()).into_iter().filter(|k| memo.d(k.exps(), 2) < 3).collect();
        assert_eq!(b1, brute);

        let prep1 = Preparation::new(1, shape(&[2, 2]), &fam, BoundMethod::RecursiveD).unwrap();
        assert_eq!(prep1.b_set(1, 3).unwrap(), vec![mono(&[0, 0])]);
    }

    #[test]
    fn b_set_total_degree_one() {
        // shape (2,2), r = 2, E = 1, family {1, X1, X2}: border {X1, X2}
        let s = shape(&[2, 2]);
        let fam = MonomialFamily::build(&FamilySpec::Total { u: 1 }, &s).unwrap();
        let prep = Preparation::new(2, s.clone(), &fam, BoundMethod::RecursiveD).unwrap();
        let memo = crate::zbounds::DMemo::new(s.clone());
        for i in 0..4 {
            let expected: Vec<Monomial> = crate::zbounds::delta_set(2, &s)
                .into_iter()
                .filter(|k| {
                    fam.border().iter().all(|m| {
                        let km = k.mul_pow(m, i);
                        let v = if in_delta(km.exps(), s.sizes(), 2) { memo.d(km.exps(), 2) } else { 4 };
                        v < 3
                    })
                })
                .collect();
            assert_eq!(prep.b_set(i, 1).unwrap(), expected, "i = {i}");
        }
    }

    #[test]
    fn infeasible_when_b1_empty() {
        let s = shape(&[2, 2]);
        let fam = MonomialFamily::build(&FamilySpec::Box { bounds: vec![2, 2], pairing: None }, &s).unwrap();
        let prep = Preparation::new(1, s, &fam, BoundMethod::RecursiveD).unwrap();
        assert!(prep.b_set(1, 3).unwrap().is_empty());
        assert_eq!(prep.plan(3, &fam).unwrap_err(), DecodeError::RadiusInfeasible { r: 1, e: 3 });
        assert!(!prep.feasible(3).unwrap());
    }

    #[test]
    fn z_roots_examples() {
        let f = gf(5, 1);
        let ens = PointEnsemble::full(f.clone(), 2).unwrap();
        let fam = MonomialFamily::build(&FamilySpec::Total { u: 2 }, ens.shape()).unwrap();
        let q = ZPoly::parse(f.clone(), 2, "Z^2 - X1*Z - Z + X1").unwrap();
        let roots = z_roots(&q, &fam, &ens, 4).unwrap();
        let want = [MPoly::parse(f.clone(), 2, "1").unwrap(), MPoly::parse(f.clone(), 2, "X1").unwrap()];
        assert_eq!(roots.len(), 2);
        assert!(want.iter().all(|w| roots.contains(w)));

        let bx = MonomialFamily::build(&FamilySpec::Box { bounds: vec![3, 3], pairing: None }, ens.shape()).unwrap();
        let q = ZPoly::parse(f.clone(), 2, "Z^2 - X1").unwrap();
        assert!(z_roots(&q, &bx, &ens, 4).unwrap().is_empty());

        let g = MPoly::parse(f.clone(), 2, "2*X1*X2 + 3*X2^2 + X1 + 4").unwrap();
        let g1 = g.add(&MPoly::parse(f.clone(), 2, "1").unwrap());
        let q = ZPoly::linear(&g).mul(&ZPoly::linear(&g1));
        let roots = z_roots(&q, &fam, &ens, 4).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots.contains(&g) && roots.contains(&g1));
    }

    #[test]
    fn z_roots_survive_vanishing_slices() {
        // (X2 - 0)(X2 - 1) (Z - g): the first two slices vanish identically
        let f = gf(5, 1);
        let ens = PointEnsemble::full(f.clone(), 2).unwrap();
        let fam = MonomialFamily::build(&FamilySpec::Total { u: 2 }, ens.shape()).unwrap();
        let g = MPoly::parse(f.clone(), 2, "X1*X2 + 2*X2 + 3").unwrap();
        let h = MPoly::parse(f.clone(), 2, "X2^2 - X2").unwrap();
        let q = ZPoly::new(vec![g.neg().mul(&h), h.clone()]);
        assert_eq!(z_roots(&q, &fam, &ens, 4).unwrap(), vec![g]);
    }

    #[test]
    fn interpolation_of_a_constant_word() {
        let f = gf(5, 1);
        let ens = PointEnsemble::full(f.clone(), 2).unwrap();
        let fam = MonomialFamily::new(2, [mono(&[0, 0])]).unwrap();
        let prep = Preparation::new(1, ens.shape().clone(), &fam, BoundMethod::RecursiveD).unwrap();
        let plan = prep.plan(3, &fam).unwrap();
        let received = vec![FieldElem(3); 25];
        let q = interpolate(&plan, &ens, &received).unwrap();
        assert!(verify_interpolation(&q, &ens, &received, 1).unwrap());
        let c = MPoly::constant(f.clone(), 2, FieldElem(3));
        assert!(q.substitute_z(&c).unwrap().is_zero());
    }

    #[test]
    fn plan_json_round_trip() {
        let s = shape(&[5, 5]);
        let fam = MonomialFamily::build(&FamilySpec::Total { u: 1 }, &s).unwrap();
        let p = plan(2, 2, &s, &fam, BoundMethod::RecursiveD).unwrap();
        assert_eq!(p.counted_unknowns(), 25 * 4 + 1);
        assert!(supports_in_delta(&p));
        assert_eq!(DecoderPlan::from_json(&p.to_json()).unwrap(), p);
    }
}
