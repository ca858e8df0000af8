//! How much the recursive bound improves on Schwartz-Zippel over uniform grids.
//!
//! Prints the maximum and the mean improvement for m = 2, 3 and q = 2..5.

use avcodes::zbounds::{improvement_stats, truncate3, MeanReading, StatKind};

fn main() {
    for (which, title) in [(StatKind::Max, "maximum"), (StatKind::Mean, "mean")] {
        println!("{title} improvement, columns m=2 r=2..5 | m=3 r=2..5");
        for q in 2..=5 {
            let mut row = format!("q={q}:");
            for m in [2, 3] {
                for r in 2..=5 {
                    let v = improvement_stats(m, q, r, which, MeanReading::PerMultiplicity).unwrap();
                    row += &format!(" {}", truncate3(&v));
                }
                if m == 2 {
                    row += " |";
                }
            }
            println!("{row}");
        }
    }
}
