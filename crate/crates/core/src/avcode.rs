//! Affine variety codes `E(M, S)`: evaluations of the monomials of a family
//! `M` at every point of a product grid `S = S_1 x ... x S_m`.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf::{Field, FieldElem, GfError};
use crate::linalg::Matrix;
use crate::mpoly::{MPoly, Monomial};
use crate::zbounds::{BoundError, GridShape};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodeError {
    #[error("point set S_{coord} contains {value} twice")]
    DuplicatePoint { coord: usize, value: u32 },
    #[error("monomial {0} does not fit inside the grid box")]
    ExponentOutOfBox(Monomial),
    #[error("generator matrix has rank {rank}, expected {expected}")]
    RankDeficient { rank: usize, expected: usize },
    #[error("expected a vector of length {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("the monomial family is not closed under taking divisors")]
    NotDivisorClosed,
    #[error("the monomial family is empty")]
    EmptyFamily,
    #[error("family spec has {got} coordinates, grid has {expected}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("invalid family spec: {0}")]
    BadFamilySpec(String),
    #[error(transparent)]
    Field(#[from] GfError),
    #[error(transparent)]
    Bound(#[from] BoundError),
}

/// The grid `S_1 x ... x S_m` over a concrete field.
///
/// Points are listed row-major with the last coordinate running fastest.
#[derive(Debug, Clone)]
pub struct PointEnsemble {
    field: Arc<Field>,
    sets: Vec<Vec<FieldElem>>,
    shape: GridShape,
    points: Vec<Vec<FieldElem>>,
}

impl PointEnsemble {
    pub fn new(field: Arc<Field>, sets: Vec<Vec<FieldElem>>) -> Result<Self, CodeError> {
        for (coord, set) in sets.iter().enumerate() {
            let mut seen = BTreeSet::new();
            for &a in set {
                field.elem(a.0 as u64)?;
                if !seen.insert(a) {
                    return Err(CodeError::DuplicatePoint { coord: coord + 1, value: a.0 });
                }
            }
        }
        let shape = GridShape::new(sets.iter().map(|s| s.len() as u32).collect::<Vec<_>>())?;
        let mut points = vec![Vec::new()];
        for set in &sets {
            points = points
                .into_iter()
                .flat_map(|p| {
                    set.iter().map(move |&a| {
                        let mut q = p.clone();
                        q.push(a);
                        q
                    })
                })
                .collect();
        }
        Ok(PointEnsemble { field, sets, shape, points })
    }

    /// `F_q^m` with every factor the whole field.
    pub fn full(field: Arc<Field>, m: usize) -> Result<Self, CodeError> {
        let all: Vec<FieldElem> = field.elements().collect();
        PointEnsemble::new(field, vec![all; m])
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn sets(&self) -> &[Vec<FieldElem>] {
        &self.sets
    }

    pub fn shape(&self) -> &GridShape {
        &self.shape
    }

    pub fn points(&self) -> &[Vec<FieldElem>] {
        &self.points
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    /// `ev_S(f)`.
    pub fn evaluate(&self, f: &MPoly) -> Vec<FieldElem> {
        self.points.iter().map(|p| f.evaluate(p).expect("arity checked by caller")).collect()
    }
}

/// How a monomial family is described.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum FamilySpec {
    /// `i_1 + ... + i_m <= u`
    Total { u: u32 },
    /// `w_1 i_1 + ... + w_m i_m <= u`
    Weighted { weights: Vec<u32>, u: u32 },
    /// `i_j < k_j`. With a pairing, `bounds[l]` applies to coordinate `pairing[l]` (1-based).
    Box {
        bounds: Vec<u32>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        pairing: Option<Vec<usize>>,
    },
    Explicit { monomials: Vec<Vec<u32>> },
}

impl FamilySpec {
    /// Parses `total:U`, `weighted:w1,..,wm:U`, `box:k1,..,km[:p1,..,pm]` or
    /// `explicit:[[..],..]` (a JSON list of exponent vectors).
    pub fn parse(s: &str) -> Result<FamilySpec, CodeError> {
        let bad = |why: &str| CodeError::BadFamilySpec(format!("{s:?}: {why}"));
        let list = |t: &str| -> Result<Vec<u32>, CodeError> {
            t.split(',').map(|x| x.trim().parse::<u32>().map_err(|_| bad("expected integers"))).collect()
        };
        let (kind, rest) = s.split_once(':').ok_or_else(|| bad("missing ':'"))?;
        match kind {
            "total" => Ok(FamilySpec::Total { u: rest.trim().parse().map_err(|_| bad("expected U"))? }),
            "weighted" => {
                let (w, u) = rest.rsplit_once(':').ok_or_else(|| bad("expected weights:U"))?;
                Ok(FamilySpec::Weighted { weights: list(w)?, u: u.trim().parse().map_err(|_| bad("expected U"))? })
            }
            "box" => match rest.split_once(':') {
                Some((k, p)) => {
                    let pairing = list(p)?.into_iter().map(|x| x as usize).collect();
                    Ok(FamilySpec::Box { bounds: list(k)?, pairing: Some(pairing) })
                }
                None => Ok(FamilySpec::Box { bounds: list(rest)?, pairing: None }),
            },
            "explicit" => {
                let monomials: Vec<Vec<u32>> =
                    serde_json::from_str(rest).map_err(|e| bad(&format!("expected a JSON list: {e}")))?;
                Ok(FamilySpec::Explicit { monomials })
            }
            _ => Err(bad("unknown family type")),
        }
    }
}

/// A set of monomials inside the grid box, with its divisibility border.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialFamily {
    arity: usize,
    monomials: Vec<Monomial>,
    border: Vec<Monomial>,
    divisor_closed: bool,
}

impl MonomialFamily {
    /// Builds a family from explicit monomials; duplicates collapse.
    pub fn new(arity: usize, monomials: impl IntoIterator<Item = Monomial>) -> Result<Self, CodeError> {
        let set: BTreeSet<Monomial> = monomials.into_iter().collect();
        if set.is_empty() {
            return Err(CodeError::EmptyFamily);
        }
        if let Some(m) = set.iter().find(|m| m.arity() != arity) {
            return Err(CodeError::ArityMismatch { expected: arity, got: m.arity() });
        }
        let monomials: Vec<Monomial> = set.into_iter().collect();
        let border = border_of(&monomials);
        let divisor_closed = monomials.iter().all(|m| {
            (0..arity).all(|j| {
                m.0[j] == 0 || {
                    let mut d = m.clone();
                    d.0[j] -= 1;
                    monomials.binary_search(&d).is_ok()
                }
            })
        });
        Ok(MonomialFamily { arity, monomials, border, divisor_closed })
    }

    /// Family from a spec, checked against the grid box `[0, s_1) x ... x [0, s_m)`.
    pub fn build(spec: &FamilySpec, shape: &GridShape) -> Result<Self, CodeError> {
        let m = shape.arity();
        let sizes = shape.sizes();
        let check_len = |len: usize| {
            if len == m {
                Ok(())
            } else {
                Err(CodeError::ArityMismatch { expected: m, got: len })
            }
        };
        let monomials: Vec<Monomial> = match spec {
            FamilySpec::Total { u } => weighted_monomials(&vec![1; m], *u),
            FamilySpec::Weighted { weights, u } => {
                check_len(weights.len())?;
                if weights.contains(&0) {
                    return Err(CodeError::BadFamilySpec("weights must be positive".into()));
                }
                weighted_monomials(weights, *u)
            }
            FamilySpec::Box { bounds, pairing } => {
                check_len(bounds.len())?;
                let per_coord = match pairing {
                    None => bounds.clone(),
                    Some(p) => {
                        check_len(p.len())?;
                        let mut sorted = p.clone();
                        sorted.sort_unstable();
                        if sorted != (1..=m).collect::<Vec<_>>() {
                            return Err(CodeError::BadFamilySpec(format!("pairing {p:?} is not a permutation of 1..{m}")));
                        }
                        let mut out = vec![0; m];
                        for (l, &coord) in p.iter().enumerate() {
                            out[coord - 1] = bounds[l];
                        }
                        out
                    }
                };
                if per_coord.contains(&0) {
                    return Err(CodeError::EmptyFamily);
                }
                box_monomials(&per_coord)
            }
            FamilySpec::Explicit { monomials } => {
                for e in monomials {
                    check_len(e.len())?;
                }
                monomials.iter().map(|e| Monomial::new(e.clone())).collect()
            }
        };
        if let Some(out) = monomials.iter().find(|mono| mono.0.iter().zip(sizes).any(|(&e, &s)| e >= s)) {
            return Err(CodeError::ExponentOutOfBox(out.clone()));
        }
        MonomialFamily::new(m, monomials)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Monomials in increasing lex order.
    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.monomials.binary_search(m).is_ok()
    }

    /// Maximal elements under divisibility.
    pub fn border(&self) -> &[Monomial] {
        &self.border
    }

    pub fn is_divisor_closed(&self) -> bool {
        self.divisor_closed
    }
}

fn weighted_monomials(weights: &[u32], u: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; weights.len()];
    fn rec(j: usize, budget: u32, w: &[u32], cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if j == w.len() {
            out.push(Monomial::new(cur.clone()));
            return;
        }
        for e in 0..=budget / w[j] {
            cur[j] = e;
            rec(j + 1, budget - e * w[j], w, cur, out);
        }
        cur[j] = 0;
    }
    rec(0, u, weights, &mut cur, &mut out);
    out
}

fn box_monomials(bounds: &[u32]) -> Vec<Monomial> {
    let mut out = vec![Vec::new()];
    for &k in bounds {
        out = out
            .into_iter()
            .flat_map(|p: Vec<u32>| {
                (0..k).map(move |e| {
                    let mut q = p.clone();
                    q.push(e);
                    q
                })
            })
            .collect();
    }
    out.into_iter().map(Monomial::new).collect()
}

/// Maximal elements of `monomials` under divisibility.
pub fn border_of(monomials: &[Monomial]) -> Vec<Monomial> {
    monomials
        .iter()
        .filter(|m| !monomials.iter().any(|n| n != *m && m.divides(n)))
        .cloned()
        .collect()
}

/// `E(M, S)` with its generator matrix (rows `ev_S(M)` for `M` in lex order).
#[derive(Debug, Clone)]
pub struct Code {
    ensemble: PointEnsemble,
    family: MonomialFamily,
    generator: Matrix,
}

impl Code {
    pub fn new(ensemble: PointEnsemble, family: MonomialFamily) -> Result<Self, CodeError> {
        let shape = ensemble.shape();
        if family.arity() != shape.arity() {
            return Err(CodeError::ArityMismatch { expected: shape.arity(), got: family.arity() });
        }
        if let Some(out) = family.monomials().iter().find(|mono| mono.0.iter().zip(shape.sizes()).any(|(&e, &s)| e >= s)) {
            return Err(CodeError::ExponentOutOfBox(out.clone()));
        }
        let field = ensemble.field().clone();
        let rows: Vec<Vec<FieldElem>> = family
            .monomials()
            .iter()
            .map(|mono| ensemble.evaluate(&MPoly::monomial(field.clone(), mono.clone(), FieldElem::ONE)))
            .collect();
        let generator = Matrix::from_rows(rows);
        let rank = generator.rank(&field);
        if rank != family.len() {
            return Err(CodeError::RankDeficient { rank, expected: family.len() });
        }
        Ok(Code { ensemble, family, generator })
    }

    pub fn ensemble(&self) -> &PointEnsemble {
        &self.ensemble
    }

    pub fn family(&self) -> &MonomialFamily {
        &self.family
    }

    pub fn field(&self) -> &Arc<Field> {
        self.ensemble.field()
    }

    pub fn generator(&self) -> &Matrix {
        &self.generator
    }

    pub fn n(&self) -> usize {
        self.ensemble.n()
    }

    pub fn dimension(&self) -> usize {
        self.family.len()
    }

    /// The polynomial `sum_k msg_k M_k`.
    pub fn message_poly(&self, message: &[FieldElem]) -> Result<MPoly, CodeError> {
        if message.len() != self.dimension() {
            return Err(CodeError::LengthMismatch { expected: self.dimension(), got: message.len() });
        }
        let terms = self.family.monomials().iter().cloned().zip(message.iter().copied());
        Ok(MPoly::from_terms(self.field().clone(), self.family.arity(), terms).expect("family arity"))
    }

    /// `message * G`.
    pub fn encode(&self, message: &[FieldElem]) -> Result<Vec<FieldElem>, CodeError> {
        if message.len() != self.dimension() {
            return Err(CodeError::LengthMismatch { expected: self.dimension(), got: message.len() });
        }
        let f = self.field();
        let mut out = vec![FieldElem::ZERO; self.n()];
        for (k, &c) in message.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, &g) in out.iter_mut().zip(self.generator.row(k)) {
                *o = f.add(*o, f.mul(c, g));
            }
        }
        Ok(out)
    }

    /// `min over M in family of prod(s_j - i_j)`.
    pub fn dmin_bound(&self) -> u64 {
        dmin_bound(&self.family, self.ensemble.shape())
    }

    /// A polynomial supported on the family whose codeword has weight exactly [`Code::dmin_bound`].
    ///
    /// Uses `prod_v prod_{j < i_v} (X_v - b_j)` with `b_j` the first `i_v` elements of `S_v`.
    pub fn min_weight_witness(&self) -> Result<MPoly, CodeError> {
        if !self.family.is_divisor_closed() {
            return Err(CodeError::NotDivisorClosed);
        }
        let sizes = self.ensemble.shape().sizes();
        let target = self
            .family
            .monomials()
            .iter()
            .min_by_key(|mono| weight_of(mono, sizes))
            .expect("families are nonempty");
        let field = self.field().clone();
        let m = self.family.arity();
        let mut f = MPoly::constant(field.clone(), m, FieldElem::ONE);
        for (v, &e) in target.0.iter().enumerate() {
            for &b in &self.ensemble.sets()[v][..e as usize] {
                f = f.mul(&MPoly::linear(field.clone(), m, v, b));
            }
        }
        Ok(f)
    }
}

fn weight_of(mono: &Monomial, sizes: &[u32]) -> u64 {
    mono.0.iter().zip(sizes).map(|(&e, &s)| (s - e) as u64).product()
}

/// Minimum-distance lower bound of `E(M, S)` from the grid shape alone.
pub fn dmin_bound(family: &MonomialFamily, shape: &GridShape) -> u64 {
    family.border().iter().map(|m| weight_of(m, shape.sizes())).min().unwrap_or(shape.n())
}

pub fn hamming_weight(v: &[FieldElem]) -> usize {
    v.iter().filter(|a| !a.is_zero()).count()
}

pub fn hamming_distance(a: &[FieldElem], b: &[FieldElem]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

/// One factor of a point set in a JSON code spec.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SetSpec {
    Full(FullMarker),
    Values(Vec<u32>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FullMarker {
    Full,
}

/// `{"field": "p,e", "sets": [[..] | "full", ..], "family": {...}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeSpec {
    pub field: String,
    pub sets: Vec<SetSpec>,
    pub family: FamilySpec,
}

impl CodeSpec {
    pub fn build(&self) -> Result<Code, CodeError> {
        let field = Arc::new(Field::from_spec(&self.field)?);
        let sets = self
            .sets
            .iter()
            .map(|s| match s {
                SetSpec::Full(_) => Ok(field.elements().collect()),
                SetSpec::Values(v) => v.iter().map(|&x| field.elem(x as u64).map_err(CodeError::from)).collect(),
            })
            .collect::<Result<Vec<Vec<FieldElem>>, CodeError>>()?;
        let ensemble = PointEnsemble::new(field, sets)?;
        let family = MonomialFamily::build(&self.family, ensemble.shape())?;
        Code::new(ensemble, family)
    }
}
