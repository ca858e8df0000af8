//! Arithmetic in GF(8) and the canonical modulus choice.

use avcodes::gf::{ArithOp, Field};

fn main() {
    let f = Field::new(2, 3).expect("GF(8)");
    println!("GF({}) modulus coefficients (low degree first): {:?}", f.order(), f.modulus());
    let x = f.elem(2).unwrap();
    let x3 = f.pow(x, 3);
    println!("x^3 = {} (x + 1)", x3.value());
    for op in [ArithOp::Add, ArithOp::Mul, ArithOp::Div] {
        println!("5 {op:?} 3 = {}", f.arith(f.elem(5).unwrap(), f.elem(3).unwrap(), op).unwrap().value());
    }
    let inverses: Vec<u32> = f.elements().skip(1).map(|a| f.inv(a).unwrap().value()).collect();
    println!("inverses of 1..7: {inverses:?}");
}
