//! Write Poincaré-disk SVGs of spiral animals.
//!
//! ```text
//! cargo run --example render_poincare
//! ```
//! Produces spiral_{p}_{q}_{n}.svg in the working directory.

use pq_animals::render::render_svg;
use pq_animals::spiral::SpiralAnimal;
use pq_animals::TessContext;

fn main() {
    for (p, q, n) in [(3u32, 7u32, 37u64), (4, 5, 37), (7, 3, 37), (4, 4, 25)] {
        let ctx = TessContext::new(p, q).unwrap();
        let mut animal = SpiralAnimal::new(&ctx).unwrap();
        animal.grow_to(n).unwrap();
        let svg = render_svg(&animal).unwrap();
        let path = format!("spiral_{p}_{q}_{n}.svg");
        std::fs::write(&path, svg).unwrap();
        println!(
            "wrote {path} ({} tiles, perimeter {})",
            animal.n(),
            animal.perimeter()
        );
    }
}
