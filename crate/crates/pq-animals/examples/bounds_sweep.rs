//! The error term of the linear perimeter law, swept exactly.
//!
//! P_min(n) = (p - 2 - 2/beta) n + epsilon(n) with 0 < epsilon(n) < 22;
//! past n_4 the error settles into a narrow window around
//! 2 (1 + 1/beta + p/(alpha-1)).
//!
//! ```text
//! cargo run --example bounds_sweep
//! ```

use num::bigint::BigInt;
use num::ToPrimitive;
use pq_animals::{perimeter, TessContext};

fn main() {
    for (p, q) in [(3, 7), (4, 5), (5, 5), (7, 3)] {
        let ctx = TessContext::new(p, q).unwrap();
        let n_max = ctx.sequences(5).unwrap().tiles.to_u64().unwrap().min(3000);
        let report = perimeter::bounds_report(&ctx, &BigInt::from(n_max)).unwrap();
        println!(
            "{{{p},{q}}}: epsilon in (0,22) and constant bounds on {} values: {}",
            report.checked,
            if report.passed { "hold" } else { "FAIL" }
        );

        // show the drift of epsilon toward its limit window
        let alpha = ctx.alpha().unwrap();
        let beta = ctx.beta().unwrap();
        let one = ctx.field_int(1).unwrap();
        let center = ctx.field_int(2).unwrap()
            * (&one + &beta.inverse().unwrap() + &(&ctx.field_int(p).unwrap() / &(alpha - &one)));
        println!("  window center 2(1 + 1/beta + p/(alpha-1)) ~ {}", center.to_decimal(8));
        for k in 2..=4u32 {
            let n = ctx.sequences(k).unwrap().tiles;
            let eps = perimeter::epsilon(&ctx, &n).unwrap();
            println!("  epsilon(n_{k} = {n}) ~ {}", eps.to_decimal(8));
        }
        println!();
    }
}
