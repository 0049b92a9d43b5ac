//! Minimal perimeters from the closed formulas, across signatures.
//!
//! ```text
//! cargo run --example perimeter_table
//! ```

use num::bigint::BigInt;
use pq_animals::{perimeter, TessContext};

fn main() {
    // euclidean and hyperbolic side by side
    let signatures = [(4, 4), (3, 6), (6, 3), (3, 7), (4, 5), (7, 3)];
    print!("{:>6}", "n");
    for (p, q) in signatures {
        print!("{:>9}", format!("{{{p},{q}}}"));
    }
    println!();
    for n in 1..=30u32 {
        print!("{:>6}", n);
        for (p, q) in signatures {
            let ctx = TessContext::new(p, q).unwrap();
            let val = perimeter::pmin(&ctx, &BigInt::from(n)).unwrap();
            print!("{val:>9}");
        }
        println!();
    }

    // the closed formulas are exact at any scale
    let ctx = TessContext::new(4, 5).unwrap();
    let n = BigInt::from(10u32).pow(40);
    let breakdown = perimeter::m_closed(&ctx, &n).unwrap();
    println!("\nP_min(4,5; n = 10^40):");
    println!("  layer index k = {}", breakdown.k);
    println!("  saturation count m = {}", breakdown.m);
    println!("  P_min = {}", breakdown.p_min);
}
