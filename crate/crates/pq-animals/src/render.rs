//! SVG rendering of spiral animals.
//!
//! Hyperbolic signatures are drawn in the Poincaré disk: the first tile is a
//! regular p-gon centered at the origin and every further vertex position is
//! produced by rotating an adjacent known vertex around a shared one by the
//! interior angle 2*pi/q (a Möbius rotation). Edges are sampled along the
//! geodesic through their endpoints. Euclidean signatures use the same
//! placement walk with plain rotations and straight edges.
//!
//! This is the one corner of the crate where floating point is acceptable:
//! output is for human eyes, all combinatorics come from the simulator.

use std::fmt::Write as _;

use num::complex::Complex64;

use crate::error::{Error, Result};
use crate::spiral::SpiralAnimal;

const EDGE_SAMPLES: usize = 14;

#[derive(Clone, Copy, PartialEq)]
enum Geometry {
    Hyperbolic,
    Euclidean,
}

fn rotate(geom: Geometry, center: Complex64, z: Complex64, angle: f64) -> Complex64 {
    let rot = Complex64::from_polar(1.0, angle);
    match geom {
        Geometry::Euclidean => center + rot * (z - center),
        Geometry::Hyperbolic => {
            let w = (z - center) / (Complex64::new(1.0, 0.0) - center.conj() * z);
            let w = rot * w;
            (w + center) / (Complex64::new(1.0, 0.0) + center.conj() * w)
        }
    }
}

fn edge_points(geom: Geometry, z1: Complex64, z2: Complex64) -> Vec<Complex64> {
    match geom {
        Geometry::Euclidean => vec![z1, z2],
        Geometry::Hyperbolic => {
            // pull z1 to the origin, sample the straight segment, map back
            let one = Complex64::new(1.0, 0.0);
            let w2 = (z2 - z1) / (one - z1.conj() * z2);
            (0..=EDGE_SAMPLES)
                .map(|i| {
                    let w = w2 * (i as f64 / EDGE_SAMPLES as f64);
                    (w + z1) / (one + z1.conj() * w)
                })
                .collect()
        }
    }
}

/// Vertex positions for every vertex id of the animal, plus the largest
/// closure drift encountered (float noise; a wrong placement would show up
/// as drift on the order of the local edge length).
fn layout(animal: &SpiralAnimal) -> Result<(Vec<Complex64>, f64)> {
    let p = animal.p() as usize;
    let q = animal.q();
    let geom = if (animal.p() - 2) * (q - 2) > 4 {
        Geometry::Hyperbolic
    } else {
        Geometry::Euclidean
    };
    let interior = 2.0 * std::f64::consts::PI / q as f64;

    // circumradius of the fundamental tile
    let r0 = match geom {
        Geometry::Hyperbolic => {
            let pi = std::f64::consts::PI;
            let cosh_r = (pi / p as f64).tan().recip() * (pi / q as f64).tan().recip();
            ((cosh_r - 1.0) / (cosh_r + 1.0)).sqrt()
        }
        Geometry::Euclidean => 0.5 / (std::f64::consts::PI / p as f64).sin(),
    };

    let vertex_count = animal
        .snapshot()
        .tiles
        .iter()
        .flat_map(|t| t.vertices.iter())
        .max()
        .map(|&m| m as usize + 1)
        .unwrap_or(0);
    let mut pos = vec![Complex64::new(f64::NAN, f64::NAN); vertex_count];

    // first tile: regular p-gon around the origin
    let first = animal.tile_polygon(0);
    for (i, &v) in first.iter().enumerate() {
        let angle = -2.0 * std::f64::consts::PI * i as f64 / p as f64 + std::f64::consts::FRAC_PI_2;
        pos[v as usize] = Complex64::from_polar(r0, angle);
    }

    // Tiles are placed in breadth-first order over the edge-adjacency graph,
    // each from the neighbor that discovered it. BFS keeps the dependency
    // chains as short as the graph allows (a handful of hops per layer), so
    // float drift stays negligible even for deep hyperbolic animals.
    let n = animal.n() as usize;
    let mut adjacency: Vec<Vec<(u32, u32, u32)>> = vec![Vec::new(); n]; // (tile, a, b)
    for (a, b, t0, t1) in animal.edge_list() {
        if let Some(t1) = t1 {
            adjacency[t0 as usize].push((t1, a, b));
            adjacency[t1 as usize].push((t0, a, b));
        }
    }
    let mut order = Vec::with_capacity(n);
    let mut parent: Vec<Option<(u32, u32, u32)>> = vec![None; n]; // (parent, a, b)
    let mut visited = vec![false; n];
    visited[0] = true;
    let mut queue = std::collections::VecDeque::from([0u32]);
    while let Some(t) = queue.pop_front() {
        order.push(t);
        for &(nb, a, b) in &adjacency[t as usize] {
            if !visited[nb as usize] {
                visited[nb as usize] = true;
                parent[nb as usize] = Some((t, a, b));
                queue.push_back(nb);
            }
        }
    }
    debug_assert_eq!(order.len(), n);

    let mut max_drift = 0f64;
    for &tile in order.iter().skip(1) {
        let poly = animal.tile_polygon(tile);
        let (par, ea, eb) =
            parent[tile as usize].expect("every later tile shares an edge with an earlier one");
        // rotate the polygon view so it starts at the shared edge
        let i0 = (0..p)
            .find(|&i| {
                let x = poly[i];
                let y = poly[(i + 1) % p];
                (x == ea && y == eb) || (x == eb && y == ea)
            })
            .expect("shared edge on polygon");
        let known0 = poly[i0];
        let pivot0 = poly[(i0 + 1) % p];

        // parent's vertex adjacent to the pivot, other than known0: the wrong
        // rotation direction would land exactly on it
        let ppoly = animal.tile_polygon(par);
        let idx = ppoly
            .iter()
            .position(|&v| v == pivot0)
            .expect("pivot on parent");
        let before = ppoly[(idx + p - 1) % p];
        let after = ppoly[(idx + 1) % p];
        let w = if before == known0 { after } else { before };

        let zk = pos[known0 as usize];
        let zp = pos[pivot0 as usize];
        let zw = pos[w as usize];
        debug_assert!(zk.is_finite() && zp.is_finite() && zw.is_finite());
        let plus = rotate(geom, zp, zk, interior);
        let minus = rotate(geom, zp, zk, -interior);
        let sign = if (plus - zw).norm() >= (minus - zw).norm() {
            1.0
        } else {
            -1.0
        };

        let mut known = zk;
        let mut pivot = zp;
        for step in 2..=p {
            let next = rotate(geom, pivot, known, sign * interior);
            let v = poly[(i0 + step) % p];
            if pos[v as usize].is_finite() {
                // closure onto an already-placed vertex validates the walk;
                // a wrong rotation direction would be off by the local edge
                // size, orders of magnitude above accumulated float drift
                let drift = (pos[v as usize] - next).norm();
                max_drift = max_drift.max(drift);
                if drift > 5e-2 {
                    return Err(Error::domain(format!(
                        "layout failure at tile {tile}: vertex {v} off by {drift:.2e}"
                    )));
                }
            } else {
                pos[v as usize] = next;
            }
            known = pivot;
            pivot = next;
        }
    }
    Ok((pos, max_drift))
}

fn palette(layer: u32) -> &'static str {
    const FILLS: [&str; 4] = ["#dbe9f6", "#bcd6ec", "#9cc2e2", "#e8f1fa"];
    FILLS[(layer as usize) % FILLS.len()]
}

/// Render the animal as a standalone SVG document.
pub fn render_svg(animal: &SpiralAnimal) -> Result<String> {
    let geom = if (animal.p() - 2) * (animal.q() - 2) > 4 {
        Geometry::Hyperbolic
    } else {
        Geometry::Euclidean
    };
    let (pos, _) = layout(animal)?;

    // world-to-screen transform
    let (scale, cx, cy, size) = match geom {
        Geometry::Hyperbolic => (300.0, 315.0, 315.0, 630.0),
        Geometry::Euclidean => {
            let xs: Vec<f64> = pos.iter().filter(|z| z.is_finite()).map(|z| z.re).collect();
            let ys: Vec<f64> = pos.iter().filter(|z| z.is_finite()).map(|z| z.im).collect();
            let (xmin, xmax) = (
                xs.iter().cloned().fold(f64::MAX, f64::min),
                xs.iter().cloned().fold(f64::MIN, f64::max),
            );
            let (ymin, ymax) = (
                ys.iter().cloned().fold(f64::MAX, f64::min),
                ys.iter().cloned().fold(f64::MIN, f64::max),
            );
            let span = (xmax - xmin).max(ymax - ymin).max(1.0);
            let scale = 580.0 / span;
            let cx = 315.0 - scale * (xmin + xmax) / 2.0;
            let cy = 315.0 + scale * (ymin + ymax) / 2.0;
            (scale, cx, cy, 630.0)
        }
    };
    let to_screen = |z: Complex64| (cx + scale * z.re, cy - scale * z.im);

    let mut svg = String::new();
    writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{size}\" height=\"{size}\" viewBox=\"0 0 {size} {size}\">"
    )
    .unwrap();
    writeln!(svg, "<rect width=\"{size}\" height=\"{size}\" fill=\"white\"/>").unwrap();
    if geom == Geometry::Hyperbolic {
        writeln!(
            svg,
            "<circle cx=\"{cx:.5}\" cy=\"{cy:.5}\" r=\"{scale:.5}\" fill=\"none\" stroke=\"#222222\" stroke-width=\"1.5\"/>"
        )
        .unwrap();
    }

    for tile in 0..animal.n() as u32 {
        let poly = animal.tile_polygon(tile);
        let mut path = String::new();
        for i in 0..poly.len() {
            let z1 = pos[poly[i] as usize];
            let z2 = pos[poly[(i + 1) % poly.len()] as usize];
            let pts = edge_points(geom, z1, z2);
            let start = if i == 0 { 0 } else { 1 };
            for (j, &z) in pts.iter().enumerate().skip(start) {
                let (x, y) = to_screen(z);
                if i == 0 && j == 0 {
                    write!(path, "M {x:.5} {y:.5}").unwrap();
                } else {
                    write!(path, " L {x:.5} {y:.5}").unwrap();
                }
            }
        }
        path.push_str(" Z");
        writeln!(
            svg,
            "<path d=\"{path}\" fill=\"{}\" stroke=\"#55606b\" stroke-width=\"0.7\"/>",
            palette(animal.tile_layer(tile))
        )
        .unwrap();
    }

    // boundary edges stroked distinctly
    let mut bpath = String::new();
    for (a, b) in animal.boundary_edges() {
        let pts = edge_points(geom, pos[a as usize], pos[b as usize]);
        for (j, &z) in pts.iter().enumerate() {
            let (x, y) = to_screen(z);
            if j == 0 {
                write!(bpath, "M {x:.5} {y:.5}").unwrap();
            } else {
                write!(bpath, " L {x:.5} {y:.5}").unwrap();
            }
        }
    }
    writeln!(
        svg,
        "<path d=\"{bpath}\" fill=\"none\" stroke=\"#c0392b\" stroke-width=\"2.2\" stroke-linecap=\"round\"/>"
    )
    .unwrap();
    writeln!(svg, "</svg>").unwrap();
    Ok(svg)
}
