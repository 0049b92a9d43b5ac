//! One word, four generators: substitution system, U/W recurrences, exact
//! floors of beta, and the continued-fraction recursion.
//!
//! ```text
//! cargo run --example words_and_fractions
//! ```

use pq_animals::{words, TessContext};

fn main() {
    for (p, q) in [(3, 7), (4, 5), (7, 3)] {
        let ctx = TessContext::new(p, q).unwrap();
        println!("{{{p},{q}}}:");
        println!("  beta = {} ~ {}", ctx.beta().unwrap(), ctx.beta().unwrap().to_decimal(12));

        for k in 1..=3 {
            let d = words::substitute_degree_word(&ctx, k).unwrap();
            println!("  d_{k} = {d}");
        }
        let (u3, w3) = words::uw_words(&ctx, 3).unwrap();
        println!("  U_3 = {u3}, W_3 = {w3}");

        // the limit of the W words in closed form: W(i) = q - floor(i b) + floor((i-1) b)
        let closed: String = (1..=20)
            .map(|i| words::w_closed(&ctx, i).unwrap().to_string())
            .collect();
        println!("  W   = {closed}... (closed form)");

        // Sturmian word of beta, from floors and from the continued fraction
        let sturmian = words::sturmian_prefix(&ctx, 20).unwrap();
        let cf = words::continued_fraction_closed(&ctx).unwrap();
        let shallit = words::shallit_prefix(&cf, 20).unwrap();
        println!("  B   = {sturmian} (exact floors)");
        println!("      = {shallit} (recursion from {cf})");

        // closed continued fraction vs running the generic algorithm on beta
        let generic = words::continued_fraction_generic(ctx.beta().unwrap(), 10).unwrap();
        let quotients: Vec<String> = generic.iter().map(|b| b.to_string()).collect();
        println!("  cf(beta) = [{}] by direct expansion", quotients.join(","));
        println!();
    }
}
