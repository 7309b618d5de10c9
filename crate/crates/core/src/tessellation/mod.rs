//! Exact combinatorial patches of a hyperbolic `{p,q}` tessellation.
//!
//! A patch is grown tile by tile by saturating perimeter vertices in a fixed
//! rotational sweep; complete sweeps produce the complete k-layered patches.
//! There is no floating point anywhere in here: vertices are identified by
//! local incidence bookkeeping (fan closure), never by coordinates. Tile,
//! edge and vertex ids are dense, assigned in growth order, and never
//! renumbered; growing a patch only appends.

pub(crate) mod io;
mod reflect;

pub use reflect::ReflectionMap;

use std::sync::{Arc, RwLock};

use crate::error::Error;
use crate::params::TessellationParams;
use crate::Result;

/// Default cap on total tiles in one patch. Layer growth is exponential, so
/// runaway requests fail fast instead of exhausting memory.
pub const DEFAULT_TILE_BUDGET: usize = 10_000_000;

macro_rules! id_type {
    ($name:ident, $doc:literal) => {
        #[doc = $doc]
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub struct $name(pub u32);

        impl $name {
            #[inline]
            pub fn index(self) -> usize {
                self.0 as usize
            }
        }

        impl std::fmt::Display for $name {
            fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
                write!(f, "{}", self.0)
            }
        }
    };
}

id_type!(TileId, "Dense tile index; tile 0 is the central tile of layer 1.");
id_type!(EdgeId, "Dense edge index in creation order.");
id_type!(VertexId, "Dense vertex index in creation order.");

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone)]
struct TileData {
    /// Cyclic edge list, length p; `edges[i]` joins `verts[i]` and `verts[i+1 mod p]`.
    edges: Box<[EdgeId]>,
    /// Cyclic vertex list, length p.
    verts: Box<[VertexId]>,
    layer: u32,
    /// Tile across `edges[ordinal]` of the parent, for canonical addressing.
    parent: Option<(TileId, u16)>,
}

#[derive(Debug, Clone)]
struct EdgeData {
    verts: [VertexId; 2],
    tiles: [Option<TileId>; 2],
}

#[derive(Debug, Clone, Default)]
struct VertexData {
    /// Incident tiles (unordered; rotational order is derived on demand).
    tiles: Vec<TileId>,
}

/// Links of one boundary edge inside the cyclic boundary walk.
#[derive(Debug, Clone, Copy)]
struct BndLink {
    next: u32,
    prev: u32,
    tail: u32,
    head: u32,
}

#[derive(Debug, Clone)]
struct SweepState {
    /// Perimeter vertices snapshotted at layer start, in walk order.
    verts: Vec<VertexId>,
    idx: usize,
}

/// A grown portion of the `{p,q}` tessellation with exact incidence tables.
#[derive(Debug)]
pub struct TessellationPatch {
    params: TessellationParams,
    tiles: Vec<TileData>,
    edges: Vec<EdgeData>,
    verts: Vec<VertexData>,
    /// Boundary links indexed by edge id; `None` for interior edges.
    bnd: Vec<Option<BndLink>>,
    /// Vertex -> boundary edge whose walk-tail is that vertex (NONE if interior).
    out_edge: Vec<u32>,
    layers_grown: u32,
    budget: usize,
    sweep: Option<SweepState>,
    /// False once the patch saw local (non-sweep) growth or was loaded from
    /// disk; deterministic layer growth is then refused.
    layer_resumable: bool,
    /// Running count of boundary edges.
    bnd_len: usize,
}

/// Shared, read-mostly patch handle. Growth takes the write lock; queries the
/// read lock.
pub type SharedPatch = Arc<RwLock<TessellationPatch>>;

impl TessellationPatch {
    /// The one-tile patch A(1).
    pub fn new(params: TessellationParams) -> Self {
        Self::with_budget(params, DEFAULT_TILE_BUDGET)
    }

    pub fn with_budget(params: TessellationParams, budget: usize) -> Self {
        let p = params.p() as usize;
        let mut patch = TessellationPatch {
            params,
            tiles: Vec::new(),
            edges: Vec::new(),
            verts: Vec::new(),
            bnd: Vec::new(),
            out_edge: Vec::new(),
            layers_grown: 0,
            budget,
            sweep: None,
            layer_resumable: true,
            bnd_len: p,
        };
        for _ in 0..p {
            patch.verts.push(VertexData::default());
            patch.out_edge.push(NONE);
        }
        let mut edges = Vec::with_capacity(p);
        let mut verts = Vec::with_capacity(p);
        for i in 0..p {
            let tail = i as u32;
            let head = ((i + 1) % p) as u32;
            patch.edges.push(EdgeData {
                verts: [VertexId(tail), VertexId(head)],
                tiles: [Some(TileId(0)), None],
            });
            patch.bnd.push(Some(BndLink {
                next: ((i + 1) % p) as u32,
                prev: ((i + p - 1) % p) as u32,
                tail,
                head,
            }));
            patch.out_edge[i] = i as u32;
            edges.push(EdgeId(i as u32));
            verts.push(VertexId(i as u32));
        }
        for i in 0..p {
            patch.verts[i].tiles.push(TileId(0));
        }
        patch.tiles.push(TileData {
            edges: edges.into_boxed_slice(),
            verts: verts.into_boxed_slice(),
            layer: 1,
            parent: None,
        });
        patch.layers_grown = 1;
        patch
    }

    /// Grow the complete k-layered patch A(k) from scratch.
    pub fn grow_layers(params: TessellationParams, k: u32) -> Result<Self> {
        Self::grow_layers_with_budget(params, k, DEFAULT_TILE_BUDGET)
    }

    pub fn grow_layers_with_budget(params: TessellationParams, k: u32, budget: usize) -> Result<Self> {
        if k < 1 {
            return Err(Error::BadLayer { k, grown: 0 });
        }
        let mut patch = Self::with_budget(params, budget);
        patch.extend_to_layer(k)?;
        Ok(patch)
    }

    /// Extend in place until `k` complete layers are grown. A no-op if the
    /// patch already has `k` or more layers. Existing ids are untouched; the
    /// result is element-for-element identical to `grow_layers(params, k)`.
    pub fn extend_to_layer(&mut self, k: u32) -> Result<()> {
        if k <= self.layers_grown {
            return Ok(());
        }
        if !self.layer_resumable {
            return Err(Error::NotLayerResumable);
        }
        while self.layers_grown < k {
            if self.sweep.is_none() {
                self.start_layer();
            }
            while self.sweep.is_some() {
                self.layer_step()?;
            }
        }
        Ok(())
    }

    /// Grow in spiral order until the patch holds at least `n` tiles,
    /// stopping mid-layer. Used for spiral/extremal polyforms.
    pub(crate) fn grow_to_tiles(&mut self, n: usize) -> Result<()> {
        if !self.layer_resumable && self.tiles.len() < n {
            return Err(Error::NotLayerResumable);
        }
        while self.tiles.len() < n {
            if self.sweep.is_none() {
                self.start_layer();
            }
            self.layer_step()?;
        }
        Ok(())
    }

    #[inline]
    pub fn params(&self) -> TessellationParams {
        self.params
    }

    #[inline]
    pub fn tile_count(&self) -> usize {
        self.tiles.len()
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.verts.len()
    }

    /// Number of complete layers grown so far.
    #[inline]
    pub fn layers_grown(&self) -> u32 {
        self.layers_grown
    }

    #[inline]
    pub fn budget(&self) -> usize {
        self.budget
    }

    pub fn set_budget(&mut self, budget: usize) {
        self.budget = budget;
    }

    pub fn into_shared(self) -> SharedPatch {
        Arc::new(RwLock::new(self))
    }

    fn check_tile(&self, t: TileId) -> Result<()> {
        if t.index() >= self.tiles.len() {
            return Err(Error::UnknownTile(t.0));
        }
        Ok(())
    }

    fn check_edge(&self, e: EdgeId) -> Result<()> {
        if e.index() >= self.edges.len() {
            return Err(Error::UnknownEdge(e.0));
        }
        Ok(())
    }

    fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v.index() >= self.verts.len() {
            return Err(Error::UnknownVertex(v.0));
        }
        Ok(())
    }

    /// Cyclic edge list of a tile (length p).
    pub fn tile_edges(&self, t: TileId) -> Result<&[EdgeId]> {
        self.check_tile(t)?;
        Ok(&self.tiles[t.index()].edges)
    }

    /// Cyclic vertex list of a tile (length p); `edges[i]` joins `verts[i]`
    /// and `verts[i+1 mod p]`.
    pub fn tile_vertices(&self, t: TileId) -> Result<&[VertexId]> {
        self.check_tile(t)?;
        Ok(&self.tiles[t.index()].verts)
    }

    pub fn tile_layer(&self, t: TileId) -> Result<u32> {
        self.check_tile(t)?;
        Ok(self.tiles[t.index()].layer)
    }

    pub fn edge_vertices(&self, e: EdgeId) -> Result<[VertexId; 2]> {
        self.check_edge(e)?;
        Ok(self.edges[e.index()].verts)
    }

    pub fn edge_tiles(&self, e: EdgeId) -> Result<[Option<TileId>; 2]> {
        self.check_edge(e)?;
        Ok(self.edges[e.index()].tiles)
    }

    #[inline]
    pub(crate) fn edge_tiles_unchecked(&self, e: EdgeId) -> [Option<TileId>; 2] {
        self.edges[e.index()].tiles
    }

    #[inline]
    pub(crate) fn tile_edges_unchecked(&self, t: TileId) -> &[EdgeId] {
        &self.tiles[t.index()].edges
    }

    #[inline]
    pub(crate) fn tile_vertices_unchecked(&self, t: TileId) -> &[VertexId] {
        &self.tiles[t.index()].verts
    }

    /// The tile on the other side of edge `e` from tile `t`.
    pub fn neighbor_of(&self, t: TileId, e: EdgeId) -> Result<Option<TileId>> {
        self.check_tile(t)?;
        self.check_edge(e)?;
        let [a, b] = self.edges[e.index()].tiles;
        Ok(match (a, b) {
            (Some(x), other) if x == t => other,
            (other, Some(x)) if x == t => other,
            _ => None,
        })
    }

    /// Ordered neighbors of a tile: `(edge, neighbor)` in the tile's cyclic
    /// edge order; the neighbor is absent when it lies outside the patch.
    pub fn tile_neighbors(&self, t: TileId) -> Result<Vec<(EdgeId, Option<TileId>)>> {
        self.check_tile(t)?;
        let td = &self.tiles[t.index()];
        Ok(td
            .edges
            .iter()
            .map(|&e| {
                let [a, b] = self.edges[e.index()].tiles;
                let nb = if a == Some(t) { b } else { a };
                (e, nb)
            })
            .collect())
    }

    /// Number of tiles currently incident to a vertex (at most q).
    pub fn vertex_tile_count(&self, v: VertexId) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.verts[v.index()].tiles.len())
    }

    #[inline]
    fn fan_len(&self, v: u32) -> usize {
        self.verts[v as usize].tiles.len()
    }

    /// True when the vertex has its full complement of q tiles.
    pub fn is_interior_vertex(&self, v: VertexId) -> Result<bool> {
        self.check_vertex(v)?;
        Ok(self.verts[v.index()].tiles.len() == self.params.q() as usize)
    }

    /// Both incident edges of tile `t` at vertex `v`.
    fn tile_edges_at_vertex(&self, t: TileId, v: VertexId) -> (EdgeId, EdgeId) {
        let td = &self.tiles[t.index()];
        let p = td.verts.len();
        let i = td
            .verts
            .iter()
            .position(|&w| w == v)
            .expect("vertex not on tile");
        (td.edges[(i + p - 1) % p], td.edges[i])
    }

    /// Incident tiles of a vertex in rotational order. Interior vertices give
    /// the full cycle of q tiles; boundary vertices give the contiguous arc.
    pub fn vertex_star(&self, v: VertexId) -> Result<Vec<TileId>> {
        self.check_vertex(v)?;
        let fan = &self.verts[v.index()].tiles;
        if fan.len() <= 1 {
            return Ok(fan.clone());
        }
        // Incident edges and, per edge, the incident tiles at v.
        let mut arc_start: Option<(EdgeId, TileId)> = None;
        for &t in fan {
            let (e1, e2) = self.tile_edges_at_vertex(t, v);
            for e in [e1, e2] {
                let other = self.neighbor_of(t, e)?;
                let open = match other {
                    None => true,
                    Some(o) => !fan.contains(&o),
                };
                if open {
                    // Deterministic arc start: smallest open edge id.
                    match arc_start {
                        Some((b, _)) if b <= e => {}
                        _ => arc_start = Some((e, t)),
                    }
                }
            }
        }
        let (mut edge, mut tile) = match arc_start {
            Some(se) => se,
            None => {
                // Interior vertex: start at the smallest incident edge.
                let mut best: Option<(EdgeId, TileId)> = None;
                for &t in fan {
                    let (e1, e2) = self.tile_edges_at_vertex(t, v);
                    for e in [e1, e2] {
                        match best {
                            Some((b, _)) if b <= e => {}
                            _ => best = Some((e, t)),
                        }
                    }
                }
                best.expect("nonempty fan")
            }
        };
        let mut order = Vec::with_capacity(fan.len());
        loop {
            order.push(tile);
            if order.len() == fan.len() {
                break;
            }
            // Rotate: cross the tile to its other edge at v, then step to the
            // neighbor over that edge.
            let (e1, e2) = self.tile_edges_at_vertex(tile, v);
            let next_edge = if e1 == edge { e2 } else { e1 };
            let nb = self
                .neighbor_of(tile, next_edge)?
                .filter(|o| fan.contains(o));
            match nb {
                Some(n) => {
                    edge = next_edge;
                    tile = n;
                }
                None => break,
            }
        }
        debug_assert_eq!(order.len(), fan.len(), "vertex fan must be contiguous");
        Ok(order)
    }

    /// Canonical address: the chain of attachment-edge ordinals from the
    /// central tile. The central tile has the empty address.
    pub fn address_of(&self, t: TileId) -> Result<Vec<u16>> {
        self.check_tile(t)?;
        let mut rev = Vec::new();
        let mut cur = t;
        while let Some((parent, ord)) = self.tiles[cur.index()].parent {
            rev.push(ord);
            cur = parent;
        }
        rev.reverse();
        Ok(rev)
    }

    /// Follow an address from the central tile. Returns `None` when the walk
    /// leaves the grown patch.
    pub fn resolve_address(&self, addr: &[u16]) -> Result<Option<TileId>> {
        let mut cur = TileId(0);
        for &ord in addr {
            let edges = self.tile_edges(cur)?;
            let e = *edges
                .get(ord as usize)
                .ok_or_else(|| Error::Internal(format!("address ordinal {ord} out of range")))?;
            match self.neighbor_of(cur, e)? {
                Some(n) => cur = n,
                None => return Ok(None),
            }
        }
        Ok(Some(cur))
    }

    /// Follow an address, growing the patch locally where the walk leaves it.
    pub fn resolve_address_growing(&mut self, addr: &[u16]) -> Result<TileId> {
        let mut cur = TileId(0);
        for &ord in addr {
            let e = {
                let edges = self.tile_edges(cur)?;
                *edges
                    .get(ord as usize)
                    .ok_or_else(|| Error::Internal(format!("address ordinal {ord} out of range")))?
            };
            if self.neighbor_of(cur, e)?.is_none() {
                let v = self.edges[e.index()].verts[0];
                self.saturate_vertex(v)?;
            }
            cur = self
                .neighbor_of(cur, e)?
                .ok_or_else(|| Error::Internal("saturation did not materialize neighbor".into()))?;
        }
        Ok(cur)
    }

    /// Attach tiles around `v` until it has its full fan of q tiles.
    /// Local growth: ids stay stable, but deterministic layer growth is
    /// disabled afterwards.
    pub fn saturate_vertex(&mut self, v: VertexId) -> Result<()> {
        self.check_vertex(v)?;
        let q = self.params.q() as usize;
        while self.fan_len(v.0) < q {
            let out = self.out_edge[v.index()];
            if out == NONE {
                return Err(Error::Internal(format!(
                    "vertex {v} has {} < q tiles but is not on the boundary",
                    self.fan_len(v.0)
                )));
            }
            self.layer_resumable = false;
            self.sweep = None;
            self.attach_tile(EdgeId(out))?;
        }
        Ok(())
    }

    /// Make sure every tile sharing a vertex with `t` exists in the patch.
    pub fn ensure_tile_surround(&mut self, t: TileId) -> Result<()> {
        self.check_tile(t)?;
        let verts: Vec<VertexId> = self.tiles[t.index()].verts.to_vec();
        for v in verts {
            self.saturate_vertex(v)?;
        }
        Ok(())
    }

    /// Outer perimeter of the patch itself (count of boundary edges).
    pub fn boundary_edge_count(&self) -> usize {
        debug_assert_eq!(self.bnd_len, self.bnd.iter().filter(|l| l.is_some()).count());
        self.bnd_len
    }

    pub(crate) fn is_boundary_edge(&self, e: EdgeId) -> bool {
        self.bnd[e.index()].is_some()
    }

    /// True if some edge of `t` has no neighbor tile in the patch.
    pub fn tile_on_patch_rim(&self, t: TileId) -> Result<bool> {
        self.check_tile(t)?;
        Ok(self.tiles[t.index()]
            .edges
            .iter()
            .any(|&e| self.edges[e.index()].tiles[1].is_none() && self.bnd[e.index()].is_some()))
    }

    // ------------------------------------------------------------------
    // Growth internals
    // ------------------------------------------------------------------

    /// Snapshot the perimeter vertices for the next layer sweep, starting at
    /// the walk-tail of the lowest-id boundary edge.
    fn start_layer(&mut self) {
        let start = self
            .bnd
            .iter()
            .position(|l| l.is_some())
            .expect("patch always has a boundary") as u32;
        let mut verts = Vec::new();
        let mut e = start;
        loop {
            let link = self.bnd[e as usize].expect("linked boundary edge");
            verts.push(VertexId(link.tail));
            e = link.next;
            if e == start {
                break;
            }
        }
        self.sweep = Some(SweepState { verts, idx: 0 });
    }

    /// Attach one tile of the current sweep, or finish the layer.
    fn layer_step(&mut self) -> Result<()> {
        let q = self.params.q() as usize;
        let (v, done) = {
            let sweep = self.sweep.as_mut().expect("sweep in progress");
            loop {
                match sweep.verts.get(sweep.idx) {
                    None => break (VertexId(0), true),
                    Some(&v) => {
                        if self.verts[v.index()].tiles.len() == q {
                            sweep.idx += 1;
                        } else {
                            break (v, false);
                        }
                    }
                }
            }
        };
        if done {
            self.sweep = None;
            self.layers_grown += 1;
            return Ok(());
        }
        let out = self.out_edge[v.index()];
        debug_assert_ne!(out, NONE, "unsaturated sweep vertex must sit on the boundary");
        self.attach_tile(EdgeId(out))?;
        Ok(())
    }

    /// Attach one new tile along the boundary run seeded at `seed`. The run
    /// extends over adjacent boundary edges wherever the new tile closes a
    /// vertex fan (brings it to exactly q tiles), which also covers the q=3
    /// double-closure merges.
    fn attach_tile(&mut self, seed: EdgeId) -> Result<TileId> {
        if self.tiles.len() >= self.budget {
            return Err(Error::BudgetExceeded { budget: self.budget });
        }
        let p = self.params.p() as usize;
        let q = self.params.q() as usize;
        debug_assert!(self.bnd[seed.index()].is_some(), "seed must be a boundary edge");

        // Build the run: cascade backward from the tail and forward from the
        // head while the new tile would close the end vertex.
        let mut run: Vec<u32> = vec![seed.0];
        loop {
            let front = self.bnd[run[0] as usize].unwrap();
            if self.fan_len(front.tail) + 1 == q && run.len() < p - 1 {
                let prev = front.prev;
                debug_assert!(!run.contains(&prev), "run wrapped the whole boundary");
                run.insert(0, prev);
                continue;
            }
            let back = self.bnd[*run.last().unwrap() as usize].unwrap();
            if self.fan_len(back.head) + 1 == q && run.len() < p - 1 {
                let next = back.next;
                debug_assert!(!run.contains(&next), "run wrapped the whole boundary");
                run.push(next);
                continue;
            }
            break;
        }
        let s = run.len();
        debug_assert!(s <= p - 1);

        let tile = TileId(self.tiles.len() as u32);

        // Path vertices u_0 .. u_s along the run.
        let mut us: Vec<u32> = Vec::with_capacity(s + 1);
        us.push(self.bnd[run[0] as usize].unwrap().tail);
        for &e in &run {
            us.push(self.bnd[e as usize].unwrap().head);
        }

        let e_before = self.bnd[run[0] as usize].unwrap().prev;
        let e_after = self.bnd[*run.last().unwrap() as usize].unwrap().next;
        debug_assert!(!run.contains(&e_before) && !run.contains(&e_after));

        // New vertices x_1 .. x_{p-s-1}.
        let n_new_verts = p - s - 1;
        let mut xs: Vec<u32> = Vec::with_capacity(n_new_verts);
        for _ in 0..n_new_verts {
            let id = self.verts.len() as u32;
            self.verts.push(VertexData::default());
            self.out_edge.push(NONE);
            xs.push(id);
        }

        // New edges n_1=(u_s,x_1), (x_1,x_2), ..., n_{p-s}=(x_last,u_0).
        let mut new_edges: Vec<u32> = Vec::with_capacity(p - s);
        {
            let mut chain: Vec<u32> = Vec::with_capacity(n_new_verts + 2);
            chain.push(us[s]);
            chain.extend_from_slice(&xs);
            chain.push(us[0]);
            for w in chain.windows(2) {
                let id = self.edges.len() as u32;
                self.edges.push(EdgeData {
                    verts: [VertexId(w[0]), VertexId(w[1])],
                    tiles: [Some(tile), None],
                });
                self.bnd.push(None);
                new_edges.push(id);
            }
        }

        // Tile records: run edges then new edges; vertices u_0..u_s, x_1..
        let mut tile_edges: Vec<EdgeId> = Vec::with_capacity(p);
        tile_edges.extend(run.iter().map(|&e| EdgeId(e)));
        tile_edges.extend(new_edges.iter().map(|&e| EdgeId(e)));
        let mut tile_verts: Vec<VertexId> = Vec::with_capacity(p);
        tile_verts.extend(us.iter().map(|&v| VertexId(v)));
        tile_verts.extend(xs.iter().map(|&v| VertexId(v)));

        // Layer and parent from the run edges' existing tiles.
        let mut layer = u32::MAX;
        for &e in &run {
            let owner = self.edges[e as usize].tiles[0].expect("run edge has a tile");
            layer = layer.min(self.tiles[owner.index()].layer);
        }
        let layer = layer + 1;
        let parent_tile = self.edges[run[0] as usize].tiles[0].unwrap();
        let ordinal = self.tiles[parent_tile.index()]
            .edges
            .iter()
            .position(|&e| e.0 == run[0])
            .expect("run edge belongs to parent") as u16;

        // Second incidence on the run edges.
        for &e in &run {
            debug_assert!(self.edges[e as usize].tiles[1].is_none());
            self.edges[e as usize].tiles[1] = Some(tile);
        }

        // Fan bookkeeping.
        for &v in us.iter().chain(xs.iter()) {
            self.verts[v as usize].tiles.push(tile);
        }
        for (i, &v) in us.iter().enumerate() {
            let interior_of_run = i > 0 && i < s;
            if interior_of_run {
                debug_assert_eq!(
                    self.fan_len(v),
                    q,
                    "run-interior vertex must be exactly closed"
                );
            }
        }

        // Boundary relink. Traversal order around the new tile's far side:
        // e_before -> n_{p-s} -> ... -> n_1 -> e_after, i.e. the new edges
        // reversed, walked from u_0 to u_s.
        for &e in &run {
            self.bnd[e as usize] = None;
        }
        for (i, &v) in us.iter().enumerate() {
            if i > 0 && i < s {
                self.out_edge[v as usize] = NONE;
            }
        }
        // Walk vertices along the new boundary path u_0, x_last, ..., x_1, u_s.
        let mut walk: Vec<u32> = Vec::with_capacity(n_new_verts + 2);
        walk.push(us[0]);
        walk.extend(xs.iter().rev());
        walk.push(us[s]);
        // Edge at walk position j connects walk[j] -> walk[j+1]; that is the
        // new edge n_{p-s-j} (0-based: new_edges[p - s - 1 - j]).
        let m = new_edges.len();
        for j in 0..m {
            let e = new_edges[m - 1 - j];
            let prev = if j == 0 { e_before } else { new_edges[m - j] };
            let next = if j == m - 1 { e_after } else { new_edges[m - 2 - j] };
            self.bnd[e as usize] = Some(BndLink {
                next,
                prev,
                tail: walk[j],
                head: walk[j + 1],
            });
            self.out_edge[walk[j] as usize] = e;
        }
        // Stitch the outer neighbors.
        self.bnd[e_before as usize].as_mut().unwrap().next = new_edges[m - 1];
        self.bnd[e_after as usize].as_mut().unwrap().prev = new_edges[0];

        self.bnd_len = self.bnd_len + (p - s) - s;
        self.tiles.push(TileData {
            edges: tile_edges.into_boxed_slice(),
            verts: tile_verts.into_boxed_slice(),
            layer,
            parent: Some((parent_tile, ordinal)),
        });
        Ok(tile)
    }
}

#[cfg(test)]
mod tests;
