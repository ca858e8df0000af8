//! Decoding radii on the 128 x 64 grid for weighted-degree families.
//!
//! Pass `--full` for multiplicities up to 20; the default stops at 4.

use avcodes::avcode::{dmin_bound, FamilySpec, MonomialFamily};
use avcodes::listdec::Preparation;
use avcodes::zbounds::{BoundMethod, GridShape};

fn main() {
    let full = std::env::args().any(|a| a == "--full");
    let shape: GridShape = "128,64".parse().unwrap();
    let rs: &[u32] = if full { &[2, 3, 4, 9, 20] } else { &[2, 3, 4] };
    for u in [3, 4, 7, 20] {
        let family = MonomialFamily::build(&FamilySpec::Weighted { weights: vec![1, 2], u }, &shape).unwrap();
        let half = (dmin_bound(&family, &shape) - 1) / 2;
        println!("u = {u}: dimension {}, half distance {half}", family.len());
        for &r in rs {
            let mut line = format!("  r = {r:>2}:");
            for method in [BoundMethod::RecursiveD, BoundMethod::ClosedFormC, BoundMethod::SchwartzZippel] {
                if r > 4 && method == BoundMethod::RecursiveD {
                    continue;
                }
                let e = Preparation::new(r, shape.clone(), &family, method).unwrap().max_radius().unwrap();
                line += &format!(" {}={e}", method.name());
            }
            println!("{line}");
        }
    }
}
