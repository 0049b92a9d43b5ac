//! Grow spiral animals tile by tile and watch layers complete.
//!
//! ```text
//! cargo run --example spiral_growth
//! ```

use num::bigint::BigInt;
use pq_animals::spiral::SpiralAnimal;
use pq_animals::{perimeter, TessContext};

fn main() {
    for (p, q) in [(4, 5), (3, 7), (7, 3)] {
        let ctx = TessContext::new(p, q).unwrap();
        let mut animal = SpiralAnimal::new(&ctx).unwrap();
        animal.grow_layers(4).unwrap();

        println!("{{{p},{q}}} spiral, layer by layer:");
        for rec in animal.layers() {
            println!(
                "  layer {}: n = {:>5}, perimeter = {:>5}",
                rec.layer, rec.tiles, rec.perimeter
            );
        }

        // every intermediate count agrees with the closed formula
        let cap = animal.layers().last().unwrap().tiles;
        let mut check = SpiralAnimal::new(&ctx).unwrap();
        let mut mismatches = 0;
        for n in 1..=cap {
            check.grow_to(n).unwrap();
            let formula = perimeter::pmin(&ctx, &BigInt::from(n)).unwrap();
            if BigInt::from(check.perimeter()) != formula {
                mismatches += 1;
            }
        }
        println!("  formula agreement on 1..={cap}: {}", if mismatches == 0 { "exact" } else { "MISMATCH" });

        // boundary degrees of the last completed layer
        let word = animal.boundary_degree_word();
        let text = word.word.to_string();
        let shown = if text.len() > 60 { &text[..60] } else { &text };
        println!("  boundary degree word: {shown}{}", if text.len() > 60 { "..." } else { "" });
        println!();
    }
}
