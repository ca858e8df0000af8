use std::sync::Arc;

use avcodes::avcode::{border_of, hamming_distance, hamming_weight, Code, FamilySpec, MonomialFamily, PointEnsemble};
use avcodes::gf::{Field, FieldElem};
use avcodes::listdec::{decode, verify_interpolation, z_roots, DecoderPlan, Preparation};
use avcodes::mpoly::{MPoly, Monomial, Multiplicity, ZPoly};
use avcodes::zbounds::{dzero, BoundMethod, GridShape, Rational};
use proptest::prelude::*;

fn field(idx: usize) -> Arc<Field> {
    let (p, e) = [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3)][idx % 6];
    Arc::new(Field::new(p, e).unwrap())
}

fn poly(f: &Arc<Field>, m: usize, terms: &[(Vec<u32>, u32)]) -> MPoly {
    let mut out = MPoly::zero(f.clone(), m);
    for (e, c) in terms {
        out.add_term(Monomial::new(e[..m].to_vec()), FieldElem(c % f.order()));
    }
    out
}

fn terms_strategy(max_exp: u32, len: usize) -> impl Strategy<Value = Vec<(Vec<u32>, u32)>> {
    prop::collection::vec((prop::collection::vec(0..=max_exp, 3), 1u32..256), 1..=len)
}

fn all_codewords(code: &Code) -> Vec<Vec<FieldElem>> {
    let q = code.field().order();
    let k = code.dimension();
    let mut out = Vec::new();
    let mut msg = vec![0u32; k];
    loop {
        out.push(code.encode(&msg.iter().map(|&v| FieldElem(v)).collect::<Vec<_>>()).unwrap());
        let mut j = 0;
        while j < k && msg[j] + 1 == q {
            msg[j] = 0;
            j += 1;
        }
        if j == k {
            return out;
        }
        msg[j] += 1;
    }
}

/// Divisor closure of a few random monomials inside `box_`.
fn closed_family(gens: &[Vec<u32>], box_: &[u32]) -> MonomialFamily {
    let mut all = Vec::new();
    for g in gens {
        let g: Vec<u32> = g.iter().zip(box_).map(|(&e, &b)| e % b).collect();
        let mut cur = vec![0u32; g.len()];
        loop {
            all.push(Monomial::new(cur.clone()));
            let mut j = 0;
            while j < g.len() && cur[j] == g[j] {
                cur[j] = 0;
                j += 1;
            }
            if j == g.len() {
                break;
            }
            cur[j] += 1;
        }
    }
    MonomialFamily::new(box_.len(), all).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn multiplicity_is_additive(fi in 0usize..6, a in terms_strategy(3, 3), b in terms_strategy(3, 3), pt in prop::collection::vec(0u32..8, 2), lin in 0usize..3) {
        let f = field(fi);
        let p = poly(&f, 2, &a);
        let mut g = poly(&f, 2, &b);
        prop_assume!(!p.is_zero() && !g.is_zero());
        let point: Vec<FieldElem> = pt.iter().map(|&v| FieldElem(v % f.order())).collect();
        // force some multiplicity at the point
        for _ in 0..lin {
            g = g.mul(&MPoly::linear(f.clone(), 2, lin % 2, point[lin % 2]));
        }
        let (Multiplicity::Finite(x), Multiplicity::Finite(y)) = (p.multiplicity_at(&point).unwrap(), g.multiplicity_at(&point).unwrap()) else {
            unreachable!("nonzero polynomials have finite multiplicity")
        };
        prop_assert_eq!(p.mul(&g).multiplicity_at(&point).unwrap(), Multiplicity::Finite(x + y));
    }

    #[test]
    fn zero_bounds_grow_under_divisibility(s in prop::collection::vec(2u32..7, 2), i in prop::collection::vec(0u32..12, 2), step in prop::collection::vec(0u32..4, 2), r in 1u32..5) {
        let shape = GridShape::new(s.clone()).unwrap();
        let j: Vec<u32> = i.iter().zip(&step).map(|(a, b)| a + b).collect();
        let (mi, mj) = (Monomial::new(i.clone()), Monomial::new(j));
        for method in [BoundMethod::RecursiveD, BoundMethod::ClosedFormC, BoundMethod::SchwartzZippel] {
            prop_assert!(dzero(&mi, r, &shape, method).unwrap() <= dzero(&mj, r, &shape, method).unwrap(), "{:?}", method);
        }
        prop_assert!(dzero(&mi, r, &shape, BoundMethod::RecursiveD).unwrap() <= dzero(&mi, r, &shape, BoundMethod::ClosedFormC).unwrap());
        prop_assert!(dzero(&mi, r, &shape, BoundMethod::ClosedFormC).unwrap() <= dzero(&mi, r, &shape, BoundMethod::SchwartzZippel).unwrap());
    }

    #[test]
    fn recursive_bound_is_sound(fi in 0usize..6, m in 2usize..4, terms in terms_strategy(4, 3), roots in prop::collection::vec((0usize..3, 0u32..8, 1u32..4), 0..4), r in 1u32..4) {
        let f = field(fi);
        let mut p = poly(&f, m, &terms);
        prop_assume!(!p.is_zero());
        for (j, b, e) in roots {
            p = p.mul(&MPoly::linear(f.clone(), m, j % m, FieldElem(b % f.order())).pow(e));
        }
        let ens = PointEnsemble::full(f.clone(), m).unwrap();
        let heavy = ens.points().iter().filter(|a| p.multiplicity_at(a).unwrap().at_least(r)).count() as i64;
        let bound = dzero(p.leading_monomial().unwrap(), r, ens.shape(), BoundMethod::RecursiveD).unwrap();
        prop_assert!(Rational::from_integer(heavy) <= bound, "{} has {} zeros of multiplicity {}, bound {}", p, heavy, r, bound);
    }

    #[test]
    fn linear_factors_divide_exactly(fi in 0usize..6, a in terms_strategy(2, 3), b in terms_strategy(2, 3), c in terms_strategy(2, 2)) {
        let f = field(fi);
        let root = poly(&f, 2, &a);
        let q = ZPoly::new(vec![poly(&f, 2, &b), poly(&f, 2, &c)]);
        prop_assume!(!q.is_zero());
        let prod = ZPoly::linear(&root).mul(&q);
        prop_assert!(prod.substitute_z(&root).unwrap().is_zero());
        let (exact, quotient) = prod.divide_linear_z(&root).unwrap();
        prop_assert!(exact);
        prop_assert_eq!(quotient, q);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn distance_bound_holds_and_is_attained(fi in 0usize..4, s in prop::collection::vec(2u32..5, 2), gens in prop::collection::vec(prop::collection::vec(0u32..4, 2), 1..3)) {
        let f = field(fi);
        let sets: Vec<Vec<FieldElem>> = s.iter().map(|&k| (0..k.min(f.order())).map(FieldElem).collect()).collect();
        let ens = PointEnsemble::new(f.clone(), sets).unwrap();
        let sizes = ens.shape().sizes().to_vec();
        let fam = closed_family(&gens, &sizes);
        let code = Code::new(ens, fam).unwrap();
        prop_assume!((f.order() as u64).pow(code.dimension() as u32) <= 15_625);
        let min = all_codewords(&code).iter().map(|c| hamming_weight(c)).filter(|&w| w > 0).min().unwrap();
        prop_assert!(min as u64 >= code.dmin_bound());
        let witness = code.min_weight_witness().unwrap();
        prop_assert_eq!(hamming_weight(&code.ensemble().evaluate(&witness)) as u64, code.dmin_bound());
        prop_assert_eq!(border_of(code.family().monomials()), code.family().border().to_vec());
    }

    #[test]
    fn decoding_finds_every_close_codeword(case in 0usize..4, seed in prop::collection::vec(0u32..1000, 64), noise in 0usize..2) {
        let (p, e, m, spec, r) = [(2, 2, 2, "total:1", 2), (5, 1, 2, "box:2,2", 2), (7, 1, 2, "total:1", 1), (3, 1, 2, "total:1", 3)][case];
        let f = Arc::new(Field::new(p, e).unwrap());
        let ens = PointEnsemble::full(f.clone(), m).unwrap();
        let fam = MonomialFamily::build(&FamilySpec::parse(spec).unwrap(), ens.shape()).unwrap();
        let code = Code::new(ens, fam).unwrap();
        let prep = Preparation::new(r, code.ensemble().shape().clone(), code.family(), BoundMethod::RecursiveD).unwrap();
        let radius = prep.max_radius().unwrap();
        let plan = prep.plan(radius, code.family()).unwrap();
        let plan = DecoderPlan::from_json(&plan.to_json()).unwrap();
        let words = all_codewords(&code);
        let q = f.order();
        let n = code.n();
        // noise 0: a codeword with `radius` changed positions; noise 1: an arbitrary word
        let received: Vec<FieldElem> = if noise == 0 {
            let mut w = words[seed[0] as usize % words.len()].clone();
            let mut idx: Vec<usize> = (0..n).collect();
            for (k, s) in seed.iter().enumerate().take(radius as usize) {
                idx.swap(k, k + *s as usize % (n - k));
                w[idx[k]] = f.add(w[idx[k]], FieldElem(1 + s % (q - 1)));
            }
            w
        } else {
            (0..n).map(|j| FieldElem(seed[j % seed.len()].wrapping_mul(j as u32 + 7) % q)).collect()
        };
        let out = decode(&code, &plan, &received).unwrap();
        prop_assert!(verify_interpolation(&out.interpolant, code.ensemble(), &received, r).unwrap());
        for c in words.iter().filter(|c| hamming_distance(c, &received) as u64 <= radius) {
            prop_assert!(out.contains(c), "missing codeword at distance {}", hamming_distance(c, &received));
        }
        for cand in &out.candidates {
            prop_assert!(cand.message.support().all(|k| code.family().contains(k)));
        }
    }

    #[test]
    fn roots_of_products_are_found(fi in 3usize..6, a in terms_strategy(2, 4), b in terms_strategy(2, 4), h in terms_strategy(1, 2)) {
        let f = field(fi);
        let ens = PointEnsemble::full(f.clone(), 2).unwrap();
        let fam = MonomialFamily::build(&FamilySpec::Box { bounds: vec![3, 3], pairing: None }, ens.shape()).unwrap();
        let (f1, f2, h) = (poly(&f, 2, &a), poly(&f, 2, &b), poly(&f, 2, &h));
        prop_assume!(!h.is_zero());
        let q = ZPoly::linear(&f1).mul(&ZPoly::linear(&f2)).mul(&ZPoly::new(vec![h]));
        let roots = z_roots(&q, &fam, &ens, 4).unwrap();
        prop_assert!(roots.contains(&f1) && roots.contains(&f2));
        prop_assert!(roots.len() <= 2);
    }
}
