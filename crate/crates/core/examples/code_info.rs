//! Builds a code from a JSON spec and checks its distance bound by brute force.

use avcodes::avcode::{hamming_weight, CodeSpec};

fn main() {
    let spec: CodeSpec = serde_json::from_str(
        r#"{"field": "2,2", "sets": ["full", [0, 1, 2]], "family": {"type": "weighted", "weights": [1, 2], "u": 2}}"#,
    )
    .unwrap();
    let code = spec.build().expect("valid code");
    let mons: Vec<String> = code.family().monomials().iter().map(ToString::to_string).collect();
    println!("n = {}, k = {}, monomials {}", code.n(), code.dimension(), mons.join(" "));
    println!("distance bound {}", code.dmin_bound());

    let q = code.field().order();
    let k = code.dimension() as u32;
    let mut min = usize::MAX;
    for index in 1..q.pow(k) {
        let message: Vec<_> = (0..k).map(|j| code.field().elem(((index / q.pow(j)) % q) as u64).unwrap()).collect();
        min = min.min(hamming_weight(&code.encode(&message).unwrap()));
    }
    println!("true minimum distance {min}");
    let witness = code.min_weight_witness().unwrap();
    println!("{witness} has weight {}", hamming_weight(&code.ensemble().evaluate(&witness)));
}
