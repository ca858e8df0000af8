//! Compares the zero bounds for a few leading monomials on a 128 x 64 grid.

use avcodes::mpoly::Monomial;
use avcodes::zbounds::{dzero, BoundMethod, GridShape};

fn main() {
    let shape: GridShape = "128,64".parse().unwrap();
    let methods = [BoundMethod::SchwartzZippel, BoundMethod::ClosedFormC, BoundMethod::RecursiveD];
    println!("{:>10} {:>2} {:>12} {:>12} {:>12}", "X^i", "r", "sz", "closed", "recursive");
    for (i, r) in [([1, 1], 1), ([130, 10], 2), ([200, 30], 2), ([300, 5], 3), ([50, 150], 4)] {
        let mono = Monomial::new(i.to_vec());
        let cells: Vec<String> = methods.iter().map(|&m| dzero(&mono, r, &shape, m).unwrap().to_string()).collect();
        println!("{:>10} {r:>2} {:>12} {:>12} {:>12}", format!("{i:?}"), cells[0], cells[1], cells[2]);
    }
    let footprint = dzero(&Monomial::new(vec![1, 1]), 1, &shape, BoundMethod::Footprint).unwrap();
    println!("plain zeros of a polynomial led by X1*X2: at most {footprint}");
}
