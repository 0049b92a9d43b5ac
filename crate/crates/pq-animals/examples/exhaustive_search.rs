//! Brute-force certification at desk scale: enumerate every animal with up
//! to six tiles and compare the minimum against the closed formula.
//!
//! ```text
//! cargo run --release --example exhaustive_search
//! ```

use num::bigint::BigInt;
use pq_animals::exhaustive::{min_perimeters_up_to, SearchConfig};
use pq_animals::{perimeter, TessContext};

fn main() {
    let n = 6;
    let cfg = SearchConfig::default();
    for (p, q) in [(3, 7), (4, 5), (5, 4), (7, 3)] {
        let ctx = TessContext::new(p, q).unwrap();
        println!("{{{p},{q}}} exhaustive search over anchored animals:");
        let minima = min_perimeters_up_to(&ctx, n, &cfg).unwrap();
        for (i, entry) in minima.iter().enumerate() {
            let size = i as u64 + 1;
            let formula = perimeter::pmin(&ctx, &BigInt::from(size)).unwrap();
            println!(
                "  n={size}: min perimeter {:>3} ({} anchored minimizers), formula {formula} {}",
                entry.min_perimeter,
                entry.extremal_count,
                if BigInt::from(entry.min_perimeter) == formula {
                    "[agrees]"
                } else {
                    "[MISMATCH]"
                }
            );
        }
        println!();
    }
}
