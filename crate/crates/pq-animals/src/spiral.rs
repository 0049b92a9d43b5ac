//! Spiral-growth simulator on a lazily built combinatorial map.
//!
//! Tiles are attached one at a time in a fixed spiral order, maintaining an
//! explicit incidence structure (tiles, edges, vertices) plus the boundary
//! cycle of the outer face. No coordinates are involved; the tessellation
//! exists only as far as the animal and its fringe reach.
//!
//! Attachment rule: the frontier is a boundary edge. The next tile glues
//! along the frontier edge and is forced to extend across every following
//! boundary vertex that already carries q-1 tiles (its last free sector must
//! be filled by this tile). A glued path of s edges removes those from the
//! boundary, adds p-s fresh edges, and changes the perimeter by p-2s. The
//! frontier then advances to the last freshly created edge, which makes the
//! growth wind around the animal saturating boundary vertices in cycle order,
//! layer after layer.
//!
//! Layer completions are detected intrinsically (all boundary vertices of the
//! previous completion saturated), never from the closed formulas: this keeps
//! the simulator an independent oracle.

use serde::{Deserialize, Serialize};

use crate::context::{TessClass, TessContext};
use crate::error::{Error, Result};
use crate::words::DegreeWord;

const NO_TILE: u32 = u32::MAX;
const NIL: u32 = u32::MAX;

#[derive(Clone, Debug)]
struct Edge {
    a: u32,
    b: u32,
    /// Incident tiles; t1 == NO_TILE while the edge is on the boundary.
    t0: u32,
    t1: u32,
}

#[derive(Clone, Copy, Debug)]
struct BoundaryNode {
    prev: u32,
    next: u32,
    /// Edge from this vertex to `next`.
    edge_next: u32,
    on: bool,
}

/// Record of one completed layer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayerRecord {
    pub layer: u32,
    pub tiles: u64,
    pub perimeter: u64,
    /// First vertex created by the layer's first tile; boundary words of the
    /// completed layer are read from here in walk order.
    pub start_vertex: u32,
}

/// Boundary degree word, flagged when the animal sits mid-layer.
#[derive(Clone, Debug)]
pub struct BoundaryWord {
    pub word: DegreeWord,
    pub complete_layer: bool,
}

/// Growth state of one spiral animal.
pub struct SpiralAnimal {
    p: u32,
    q: u32,
    /// Vertex ids of each tile in polygon cycle order, p entries per tile.
    tile_vertices: Vec<u32>,
    tile_layer: Vec<u32>,
    vert_tiles: Vec<u32>,
    vert_layer: Vec<u32>,
    edges: Vec<Edge>,
    boundary: Vec<BoundaryNode>,
    /// Source vertex of the frontier edge.
    frontier: u32,
    perimeter: u64,
    interior_edges: u64,
    layers: Vec<LayerRecord>,
    current_layer: u32,
    prev_remaining: u64,
    layer_start: Option<u32>,
}

impl SpiralAnimal {
    pub fn new(ctx: &TessContext) -> Result<Self> {
        if ctx.class() == TessClass::Spherical {
            return Err(Error::UnsupportedClass {
                p: ctx.p(),
                q: ctx.q(),
                class: ctx.class().as_str(),
            });
        }
        let p = ctx.p();
        let q = ctx.q();
        let pu = p as usize;
        let mut edges = Vec::with_capacity(pu);
        let mut boundary = Vec::with_capacity(pu);
        for i in 0..pu {
            let next = ((i + 1) % pu) as u32;
            let prev = ((i + pu - 1) % pu) as u32;
            edges.push(Edge {
                a: i as u32,
                b: next,
                t0: 0,
                t1: NO_TILE,
            });
            boundary.push(BoundaryNode {
                prev,
                next,
                edge_next: i as u32,
                on: true,
            });
        }
        Ok(SpiralAnimal {
            p,
            q,
            tile_vertices: (0..p).collect(),
            tile_layer: vec![1],
            vert_tiles: vec![1; pu],
            vert_layer: vec![1; pu],
            edges,
            boundary,
            frontier: p - 1,
            perimeter: p as u64,
            interior_edges: 0,
            layers: vec![LayerRecord {
                layer: 1,
                tiles: 1,
                perimeter: p as u64,
                start_vertex: 0,
            }],
            current_layer: 2,
            prev_remaining: p as u64,
            layer_start: None,
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn n(&self) -> u64 {
        self.tile_layer.len() as u64
    }

    pub fn perimeter(&self) -> u64 {
        self.perimeter
    }

    pub fn layers(&self) -> &[LayerRecord] {
        &self.layers
    }

    /// Vertex ids of one tile's polygon, in cycle order.
    pub fn tile_polygon(&self, tile: u32) -> &[u32] {
        let p = self.p as usize;
        &self.tile_vertices[tile as usize * p..(tile as usize + 1) * p]
    }

    pub fn tile_layer(&self, tile: u32) -> u32 {
        self.tile_layer[tile as usize]
    }

    fn next_on_boundary(&self, v: u32) -> u32 {
        debug_assert!(self.boundary[v as usize].on);
        self.boundary[v as usize].next
    }

    /// Attach the next tile of the spiral.
    fn attach_one(&mut self) {
        let p = self.p;
        let q = self.q;

        // glue path: frontier edge, extended over saturated-next vertices
        let mut path = vec![self.frontier];
        let mut v = self.next_on_boundary(self.frontier);
        path.push(v);
        while self.vert_tiles[v as usize] == q - 1 {
            v = self.next_on_boundary(v);
            path.push(v);
            debug_assert!(path.len() <= p as usize);
        }
        debug_assert!(
            self.vert_tiles[self.frontier as usize] != q - 1,
            "spiral order never needs backward gluing"
        );
        let s = path.len() - 1;
        debug_assert!(s < p as usize);

        let tile = self.tile_layer.len() as u32;
        self.tile_layer.push(self.current_layer);

        // interior path vertices saturate and leave the boundary
        for &w in &path[1..s] {
            self.vert_tiles[w as usize] = q;
            self.boundary[w as usize].on = false;
            if self.vert_layer[w as usize] < self.current_layer {
                self.prev_remaining -= 1;
            }
        }
        self.vert_tiles[path[0] as usize] += 1;
        self.vert_tiles[path[s] as usize] += 1;
        debug_assert!(self.vert_tiles[path[0] as usize] < q);
        debug_assert!(self.vert_tiles[path[s] as usize] < q);

        // glued edges become interior
        let mut cursor = path[0];
        for _ in 0..s {
            let e = self.boundary[cursor as usize].edge_next;
            debug_assert_eq!(self.edges[e as usize].t1, NO_TILE);
            self.edges[e as usize].t1 = tile;
            self.interior_edges += 1;
            cursor = self.boundary[cursor as usize].next;
        }

        // fresh chain from path[0] to path[s]: p-s edges through p-s-1 vertices
        let new_count = (p as usize) - s - 1;
        let mut chain = Vec::with_capacity(new_count);
        for _ in 0..new_count {
            let nv = self.vert_tiles.len() as u32;
            self.vert_tiles.push(1);
            self.vert_layer.push(self.current_layer);
            self.boundary.push(BoundaryNode {
                prev: NIL,
                next: NIL,
                edge_next: NIL,
                on: true,
            });
            chain.push(nv);
        }
        let link = |animal: &mut Self, from: u32, to: u32| {
            let e = animal.edges.len() as u32;
            animal.edges.push(Edge {
                a: from,
                b: to,
                t0: tile,
                t1: NO_TILE,
            });
            animal.boundary[from as usize].next = to;
            animal.boundary[from as usize].edge_next = e;
            animal.boundary[to as usize].prev = from;
        };
        let mut from = path[0];
        for &nv in &chain {
            link(self, from, nv);
            from = nv;
        }
        link(self, from, path[s]);

        // polygon cycle: path[0], chain..., path[s], path[s-1], ..., path[1]
        self.tile_vertices.push(path[0]);
        self.tile_vertices.extend_from_slice(&chain);
        for &w in path[1..=s].iter().rev() {
            self.tile_vertices.push(w);
        }

        self.perimeter = (self.perimeter as i64 + p as i64 - 2 * s as i64) as u64;
        debug_assert!(self.check_incidence());

        if self.layer_start.is_none() {
            debug_assert!(!chain.is_empty(), "a layer's first tile creates vertices");
            self.layer_start = Some(chain[0]);
        }
        self.frontier = *chain.last().unwrap_or(&path[0]);

        if self.prev_remaining == 0 {
            self.layers.push(LayerRecord {
                layer: self.current_layer,
                tiles: self.n(),
                perimeter: self.perimeter,
                start_vertex: self.layer_start.take().expect("layer start recorded"),
            });
            self.current_layer += 1;
            self.prev_remaining = self.perimeter;
        }
    }

    /// Grow until the animal has exactly n tiles.
    pub fn grow_to(&mut self, n: u64) -> Result<()> {
        if n < self.n() {
            return Err(Error::domain(format!(
                "animal already has {} tiles, cannot shrink to {n}",
                self.n()
            )));
        }
        while self.n() < n {
            self.attach_one();
        }
        Ok(())
    }

    /// Grow until `layers` complete layers exist.
    pub fn grow_layers(&mut self, layers: u32) -> Result<()> {
        while (self.layers.len() as u32) < layers {
            self.attach_one();
        }
        Ok(())
    }

    /// Edge-incidence conservation: p n = 2 e2 + perimeter.
    pub fn check_incidence(&self) -> bool {
        self.p as u64 * self.n() == 2 * self.interior_edges + self.perimeter
    }

    /// The boundary cycle as vertex ids, starting from the last completed
    /// layer's start vertex when it is still on the boundary.
    pub fn boundary_cycle(&self) -> Vec<u32> {
        let record = self.layers.last().expect("at least one layer");
        let start = if self.boundary[record.start_vertex as usize].on {
            record.start_vertex
        } else {
            self.next_on_boundary(self.frontier)
        };
        let mut out = Vec::with_capacity(self.perimeter as usize);
        let mut v = start;
        loop {
            out.push(v);
            v = self.next_on_boundary(v);
            if v == start {
                break;
            }
        }
        debug_assert_eq!(out.len() as u64, self.perimeter);
        out
    }

    /// Degrees of the boundary vertices in walk order from the layer start.
    ///
    /// The word is always returned; `complete_layer` is false when called
    /// mid-layer, where no d_k comparison is meaningful.
    pub fn boundary_degree_word(&self) -> BoundaryWord {
        let cycle = self.boundary_cycle();
        let symbols = cycle
            .iter()
            .map(|&v| (self.vert_tiles[v as usize] + 1) as u8)
            .collect();
        let complete = self.layers.last().map(|r| r.tiles) == Some(self.n());
        BoundaryWord {
            word: DegreeWord::new(symbols, self.p, self.q),
            complete_layer: complete,
        }
    }

    /// Tile adjacency lists (edge-sharing), for search and analysis.
    pub fn tile_adjacency(&self) -> Vec<Vec<u32>> {
        let mut adj = vec![Vec::new(); self.n() as usize];
        for e in &self.edges {
            if e.t1 != NO_TILE {
                adj[e.t0 as usize].push(e.t1);
                adj[e.t1 as usize].push(e.t0);
            }
        }
        adj
    }

    /// Serializable snapshot of the incidence structure.
    pub fn snapshot(&self) -> Snapshot {
        Snapshot {
            p: self.p,
            q: self.q,
            tile_count: self.n(),
            perimeter: self.perimeter,
            tiles: (0..self.n() as u32)
                .map(|t| SnapshotTile {
                    id: t,
                    layer: self.tile_layer[t as usize],
                    vertices: self.tile_polygon(t).to_vec(),
                })
                .collect(),
            edges: self
                .edges
                .iter()
                .enumerate()
                .map(|(i, e)| SnapshotEdge {
                    id: i as u32,
                    vertices: [e.a, e.b],
                    tiles: if e.t1 == NO_TILE {
                        vec![e.t0]
                    } else {
                        vec![e.t0, e.t1]
                    },
                })
                .collect(),
            boundary: self.boundary_cycle(),
        }
    }

    /// Iterate boundary edges as vertex-id pairs.
    pub fn boundary_edges(&self) -> Vec<(u32, u32)> {
        let cycle = self.boundary_cycle();
        let mut out = Vec::with_capacity(cycle.len());
        for i in 0..cycle.len() {
            out.push((cycle[i], cycle[(i + 1) % cycle.len()]));
        }
        out
    }

    /// All edges as (vertex, vertex, first tile, second tile or None).
    pub fn edge_list(&self) -> Vec<(u32, u32, u32, Option<u32>)> {
        self.edges
            .iter()
            .map(|e| {
                (
                    e.a,
                    e.b,
                    e.t0,
                    if e.t1 == NO_TILE { None } else { Some(e.t1) },
                )
            })
            .collect()
    }
}

/// JSON-serializable view of an animal: tiles with their vertex cycles,
/// edges as vertex-id pairs with incident tiles, and the boundary order.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Snapshot {
    pub p: u32,
    pub q: u32,
    pub tile_count: u64,
    pub perimeter: u64,
    pub tiles: Vec<SnapshotTile>,
    pub edges: Vec<SnapshotEdge>,
    pub boundary: Vec<u32>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SnapshotTile {
    pub id: u32,
    pub layer: u32,
    pub vertices: Vec<u32>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SnapshotEdge {
    pub id: u32,
    pub vertices: [u32; 2],
    pub tiles: Vec<u32>,
}
