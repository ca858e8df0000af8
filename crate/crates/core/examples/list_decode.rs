//! Corrects more errors than half the minimum distance.
//!
//! Code: GF(16) points on a 16 x 8 grid, messages `a + b X1`. The decoder is
//! prepared once with multiplicity 2, then a codeword hit by 69 errors is
//! decoded; unique decoding only guarantees 59.

use std::sync::Arc;

use avcodes::avcode::{Code, FamilySpec, MonomialFamily, PointEnsemble};
use avcodes::gf::{Field, FieldElem};
use avcodes::listdec::{decode, DecoderPlan, Preparation};
use avcodes::zbounds::BoundMethod;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() {
    let field = Arc::new(Field::new(2, 4).unwrap());
    let sets = vec![field.elements().collect(), (0..8).map(FieldElem).collect()];
    let ensemble = PointEnsemble::new(field.clone(), sets).unwrap();
    let family = MonomialFamily::build(&FamilySpec::parse("weighted:1,2:1").unwrap(), ensemble.shape()).unwrap();
    let code = Code::new(ensemble, family).unwrap();

    let prep = Preparation::new(2, code.ensemble().shape().clone(), code.family(), BoundMethod::RecursiveD).unwrap();
    let e = prep.max_radius().unwrap();
    let plan = prep.plan(e, code.family()).unwrap();
    // plans serialize, so preparation can be done once and stored
    let plan = DecoderPlan::from_json(&plan.to_json()).unwrap();
    println!("n = {}, k = {}, half distance {}, decoding radius {e}", code.n(), code.dimension(), (code.dmin_bound() - 1) / 2);
    println!("plan: t = {}, {} unknowns", plan.t, plan.unknowns());

    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let message = vec![FieldElem(rng.gen_range(0..16)), FieldElem(rng.gen_range(0..16))];
    let sent = code.encode(&message).unwrap();
    let mut received = sent.clone();
    for pos in sample(&mut rng, code.n(), e as usize) {
        received[pos] = field.add(received[pos], FieldElem(rng.gen_range(1..16)));
    }

    let output = decode(&code, &plan, &received).unwrap();
    for c in &output.candidates {
        let mark = if c.codeword == sent { "  <- sent" } else { "" };
        println!("F = {}, distance {}{mark}", c.message, c.distance);
    }
}
