//! Export an animal's incidence structure as JSON.
//!
//! ```text
//! cargo run --example snapshot_export
//! ```

use pq_animals::spiral::SpiralAnimal;
use pq_animals::TessContext;

fn main() {
    let ctx = TessContext::new(7, 3).unwrap();
    let mut animal = SpiralAnimal::new(&ctx).unwrap();
    animal.grow_to(8).unwrap();
    let snapshot = animal.snapshot();
    println!("{}", serde_json::to_string_pretty(&snapshot).unwrap());
    eprintln!(
        "# {} tiles, {} edges, boundary of {}",
        snapshot.tile_count,
        snapshot.edges.len(),
        snapshot.boundary.len()
    );
}
