//! Polyforms: finite edge-connected tile sets inside a patch, with their
//! graph metrics and hole decompositions.
//!
//! Hole counting uses Euler's relation `v - e + n + h = 1`, which needs no
//! patch growth at all; the explicit decomposition flood-fills complement
//! components, growing the patch locally and bounding the flood by an exact
//! area cap derived from the isoperimetric slope (a component larger than
//! any possible filled polyform must be the unbounded region).

use std::collections::{HashMap, HashSet, VecDeque};
use std::io::{BufRead, Write};
use std::sync::Arc;

use crate::error::Error;
use crate::params::TessellationParams;
use crate::tessellation::{io as patch_io, SharedPatch, TessellationPatch, TileId, VertexId};
use crate::Result;

/// A validated polyform: a nonempty, edge-connected set of tiles.
#[derive(Debug, Clone)]
pub struct Polyform {
    patch: SharedPatch,
    tiles: Arc<Vec<TileId>>, // sorted, deduplicated
}

/// The seven graph parameters of a polyform.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Metrics {
    /// Tile count |A|.
    pub n: u64,
    /// Vertex count v(A).
    pub v: u64,
    /// Edge count e(A).
    pub e: u64,
    /// Interior edges b(A) = edges of the dual graph.
    pub b: u64,
    /// Outer perimeter: edges bordering the unbounded region.
    pub p_o: u64,
    /// Hole perimeter: edges bordering holes.
    pub p_h: u64,
    /// Hole count h(A).
    pub h: u64,
}

impl Metrics {
    /// The three relations every polyform satisfies exactly.
    pub fn identities_hold(&self, p: u32) -> bool {
        let euler = self.v as i128 - self.e as i128 + self.n as i128 + self.h as i128 == 1;
        let edges = self.e == self.p_o + self.b + self.p_h;
        let count = p as u64 * self.n == self.p_o + 2 * self.b + self.p_h;
        euler && edges && count
    }
}

/// Bounded complement components of a polyform, each one a polyform itself.
#[derive(Debug, Clone)]
pub struct HoleDecomposition {
    holes: Vec<Polyform>,
}

impl HoleDecomposition {
    pub fn count(&self) -> usize {
        self.holes.len()
    }

    pub fn holes(&self) -> &[Polyform] {
        &self.holes
    }

    /// H(A): all hole tiles.
    pub fn union_tiles(&self) -> Vec<TileId> {
        let mut out: Vec<TileId> = self
            .holes
            .iter()
            .flat_map(|h| h.tiles().iter().copied())
            .collect();
        out.sort();
        out
    }
}

/// Dual graph: one node per tile, edges between edge-adjacent tiles.
#[derive(Debug, Clone)]
pub struct DualGraph {
    tiles: Vec<TileId>,
    /// Index pairs into `tiles`, each adjacency once.
    edges: Vec<(u32, u32)>,
}

impl DualGraph {
    pub fn node_count(&self) -> usize {
        self.tiles.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn tiles(&self) -> &[TileId] {
        &self.tiles
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn is_connected(&self) -> bool {
        if self.tiles.is_empty() {
            return false;
        }
        let mut adj = vec![Vec::new(); self.tiles.len()];
        for &(a, b) in &self.edges {
            adj[a as usize].push(b as usize);
            adj[b as usize].push(a as usize);
        }
        let mut seen = vec![false; self.tiles.len()];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut found = 1;
        while let Some(i) = queue.pop_front() {
            for &j in &adj[i] {
                if !seen[j] {
                    seen[j] = true;
                    found += 1;
                    queue.push_back(j);
                }
            }
        }
        found == self.tiles.len()
    }

    /// A connected graph with n-1 edges is a tree.
    pub fn is_tree(&self) -> bool {
        self.edges.len() + 1 == self.tiles.len() && self.is_connected()
    }
}

/// Build a polyform from a tile set, rejecting empty, unknown, or
/// edge-disconnected inputs.
pub fn make_polyform(patch: &SharedPatch, tiles: &[TileId]) -> Result<Polyform> {
    let mut sorted: Vec<TileId> = tiles.to_vec();
    sorted.sort();
    sorted.dedup();
    if sorted.is_empty() {
        return Err(Error::EmptyPolyform);
    }
    {
        let p = patch.read().unwrap();
        for &t in &sorted {
            if t.index() >= p.tile_count() {
                return Err(Error::UnknownTile(t.0));
            }
        }
        // Edge connectivity over the dual graph.
        let set: HashSet<TileId> = sorted.iter().copied().collect();
        let mut seen: HashSet<TileId> = HashSet::with_capacity(sorted.len());
        let mut queue = VecDeque::from([sorted[0]]);
        seen.insert(sorted[0]);
        while let Some(t) = queue.pop_front() {
            for &e in p.tile_edges_unchecked(t) {
                let [a, b] = p.edge_tiles_unchecked(e);
                let nb = if a == Some(t) { b } else { a };
                if let Some(nb) = nb {
                    if set.contains(&nb) && seen.insert(nb) {
                        queue.push_back(nb);
                    }
                }
            }
        }
        if seen.len() != sorted.len() {
            return Err(Error::Disconnected);
        }
    }
    Ok(Polyform {
        patch: Arc::clone(patch),
        tiles: Arc::new(sorted),
    })
}

impl Polyform {
    pub fn params(&self) -> TessellationParams {
        self.patch.read().unwrap().params()
    }

    pub fn patch(&self) -> &SharedPatch {
        &self.patch
    }

    pub fn tiles(&self) -> &[TileId] {
        &self.tiles
    }

    pub fn tile_count(&self) -> usize {
        self.tiles.len()
    }

    pub fn contains(&self, t: TileId) -> bool {
        self.tiles.binary_search(&t).is_ok()
    }

    /// Hole count from Euler's relation; requires no patch growth.
    pub fn hole_count(&self) -> u64 {
        let patch = self.patch.read().unwrap();
        let (v, e) = count_verts_edges(&patch, &self.tiles);
        let h = 1 + e as i128 - v as i128 - self.tiles.len() as i128;
        debug_assert!(h >= 0, "negative Euler hole count");
        h as u64
    }

    /// The dual graph; its edge count is b(A).
    pub fn dual_graph(&self) -> DualGraph {
        let patch = self.patch.read().unwrap();
        let index: HashMap<TileId, u32> = self
            .tiles
            .iter()
            .enumerate()
            .map(|(i, &t)| (t, i as u32))
            .collect();
        let mut edges = Vec::new();
        for (i, &t) in self.tiles.iter().enumerate() {
            for &e in patch.tile_edges_unchecked(t) {
                let [a, b] = patch.edge_tiles_unchecked(e);
                let nb = if a == Some(t) { b } else { a };
                if let Some(nb) = nb {
                    if let Some(&j) = index.get(&nb) {
                        if (i as u32) < j {
                            edges.push((i as u32, j));
                        }
                    }
                }
            }
        }
        DualGraph {
            tiles: self.tiles.as_ref().clone(),
            edges,
        }
    }

    /// Decompose the complement into bounded components. Extends the patch
    /// locally as needed; each returned hole is itself a valid polyform.
    pub fn holes(&self) -> Result<HoleDecomposition> {
        let expect = self.hole_count();
        if expect == 0 {
            return Ok(HoleDecomposition { holes: Vec::new() });
        }
        let comps = {
            let mut patch = self.patch.write().unwrap();
            flood_complement(&mut patch, &self.tiles, expect)?
        };
        let holes = comps
            .into_iter()
            .map(|tiles| Polyform {
                patch: Arc::clone(&self.patch),
                tiles: Arc::new(tiles),
            })
            .collect::<Vec<_>>();
        if holes.len() as u64 != expect {
            return Err(Error::Internal(format!(
                "flood found {} holes, Euler count says {expect}",
                holes.len()
            )));
        }
        Ok(HoleDecomposition { holes })
    }

    /// Fill in the holes: A together with H(A).
    pub fn fill(&self) -> Result<Polyform> {
        let hd = self.holes()?;
        if hd.count() == 0 {
            return Ok(self.clone());
        }
        let mut tiles: Vec<TileId> = self.tiles.as_ref().clone();
        tiles.extend(hd.union_tiles());
        tiles.sort();
        tiles.dedup();
        Ok(Polyform {
            patch: Arc::clone(&self.patch),
            tiles: Arc::new(tiles),
        })
    }

    /// All seven metrics, satisfying the three exact identities.
    pub fn metrics(&self) -> Result<Metrics> {
        let hd = self.holes()?;
        let hole_tiles: HashSet<TileId> = hd.union_tiles().into_iter().collect();
        let patch = self.patch.read().unwrap();
        let (v, e) = count_verts_edges(&patch, &self.tiles);
        let in_a: HashSet<TileId> = self.tiles.iter().copied().collect();
        let mut b = 0u64;
        let mut p_o = 0u64;
        let mut p_h = 0u64;
        for &t in self.tiles.iter() {
            for &edge in patch.tile_edges_unchecked(t) {
                let [x, y] = patch.edge_tiles_unchecked(edge);
                let nb = if x == Some(t) { y } else { x };
                match nb {
                    Some(nb) if in_a.contains(&nb) => b += 1, // counted twice, halved below
                    Some(nb) if hole_tiles.contains(&nb) => p_h += 1,
                    _ => p_o += 1,
                }
            }
        }
        debug_assert_eq!(b % 2, 0);
        b /= 2;
        let m = Metrics {
            n: self.tiles.len() as u64,
            v,
            e,
            b,
            p_o,
            p_h,
            h: hd.count() as u64,
        };
        debug_assert!(m.identities_hold(patch.params().p()));
        Ok(m)
    }

    /// Deterministic identity key: the sorted canonical tile addresses.
    /// Equal keys mean identical tile sets in the same rooted patch frame;
    /// symmetric copies generally get different keys.
    pub fn canonical_key(&self) -> Result<String> {
        let patch = self.patch.read().unwrap();
        let mut addrs: Vec<Vec<u16>> = self
            .tiles
            .iter()
            .map(|&t| patch.address_of(t))
            .collect::<Result<_>>()?;
        addrs.sort();
        Ok(addrs
            .iter()
            .map(|a| patch_io::format_address(a))
            .collect::<Vec<_>>()
            .join(";"))
    }

    /// Serialize as the `PFORM/1` line format (sorted canonical addresses).
    pub fn write_text<W: Write>(&self, mut w: W) -> Result<()> {
        let patch = self.patch.read().unwrap();
        let params = patch.params();
        writeln!(w, "PFORM/1 {} {}", params.p(), params.q())?;
        let mut addrs: Vec<Vec<u16>> = self
            .tiles
            .iter()
            .map(|&t| patch.address_of(t))
            .collect::<Result<_>>()?;
        addrs.sort();
        for a in addrs {
            writeln!(w, "{}", patch_io::format_address(&a))?;
        }
        Ok(())
    }

    /// Load a polyform into the given patch, growing it locally so every
    /// address resolves.
    pub fn read_text<R: BufRead>(r: R, patch: &SharedPatch) -> Result<Polyform> {
        let mut lines = r.lines().enumerate();
        let (_, header) = lines
            .next()
            .ok_or_else(|| Error::Parse { line: 1, msg: "empty file".into() })?;
        let header = header?;
        let toks: Vec<&str> = header.split_whitespace().collect();
        if toks.len() != 3 || toks[0] != "PFORM/1" {
            return Err(Error::Parse { line: 1, msg: "expected `PFORM/1 p q` header".into() });
        }
        let p: u32 = toks[1]
            .parse()
            .map_err(|_| Error::Parse { line: 1, msg: "bad p".into() })?;
        let q: u32 = toks[2]
            .parse()
            .map_err(|_| Error::Parse { line: 1, msg: "bad q".into() })?;
        let params = TessellationParams::new(p, q)?;
        {
            let existing = patch.read().unwrap().params();
            if existing != params {
                return Err(Error::Parse {
                    line: 1,
                    msg: format!("polyform is {params}, patch is {existing}"),
                });
            }
        }
        let mut tiles = Vec::new();
        {
            let mut pw = patch.write().unwrap();
            for (lineno, line) in lines {
                let line = line?;
                let s = line.trim();
                if s.is_empty() {
                    continue;
                }
                let addr = patch_io::parse_address(s, lineno + 1)?;
                tiles.push(pw.resolve_address_growing(&addr)?);
            }
        }
        make_polyform(patch, &tiles)
    }
}

impl PartialEq for Polyform {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.patch, &other.patch) && self.tiles == other.tiles
    }
}
impl Eq for Polyform {}

/// Count distinct vertices and edges over a tile set.
fn count_verts_edges(patch: &TessellationPatch, tiles: &[TileId]) -> (u64, u64) {
    let mut verts: HashSet<VertexId> = HashSet::new();
    let mut edges: HashSet<crate::tessellation::EdgeId> = HashSet::new();
    for &t in tiles {
        verts.extend(patch.tile_vertices_unchecked(t).iter().copied());
        edges.extend(patch.tile_edges_unchecked(t).iter().copied());
    }
    (verts.len() as u64, edges.len() as u64)
}

/// Upper bound on the tile count of the filled polyform, from the
/// isoperimetric slope: pmin(N) > (p-2-2/β)N + 2 beyond the small range,
/// while pmin(|filled|) <= p·n. Slightly inflated for safety; used only to
/// cut off floods of the unbounded region.
fn hole_area_cap(params: TessellationParams, n: usize) -> usize {
    let p = params.p() as f64;
    let q = params.q() as f64;
    let disc = ((p - 2.0) * (q - 2.0)).powi(2) - 4.0 * (p - 2.0) * (q - 2.0);
    let beta = ((p - 2.0) * (q - 2.0) + disc.sqrt()) / (2.0 * (p - 2.0));
    let slope = (p - 2.0 - 2.0 / beta) * (1.0 - 1e-9);
    let by_slope = ((p * n as f64 - 2.0) / slope).ceil() as usize + 8;
    let small = (params.p() * (params.q() - 2) + 1) as usize + 8;
    by_slope.max(small)
}

/// Edge-connected bounded complement components of `tiles`, flood-filled
/// with local growth. `expect` is the Euler hole count (used only for the
/// final cross-check by the caller).
fn flood_complement(
    patch: &mut TessellationPatch,
    tiles: &[TileId],
    _expect: u64,
) -> Result<Vec<Vec<TileId>>> {
    let in_a: HashSet<TileId> = tiles.iter().copied().collect();
    // Make every edge-neighbor of A present so seeds are complete.
    for &t in tiles {
        patch.ensure_tile_surround(t)?;
    }
    let cap = hole_area_cap(patch.params(), tiles.len());
    let mut seeds: Vec<TileId> = Vec::new();
    for &t in tiles {
        for &e in patch.tile_edges_unchecked(t) {
            let [a, b] = patch.edge_tiles_unchecked(e);
            let nb = if a == Some(t) { b } else { a };
            if let Some(nb) = nb {
                if !in_a.contains(&nb) {
                    seeds.push(nb);
                }
            }
        }
    }
    seeds.sort();
    seeds.dedup();

    let mut visited: HashSet<TileId> = HashSet::new();
    let mut holes: Vec<Vec<TileId>> = Vec::new();
    for seed in seeds {
        if visited.contains(&seed) {
            continue;
        }
        let mut comp: Vec<TileId> = Vec::new();
        let mut queue = VecDeque::from([seed]);
        visited.insert(seed);
        let mut escaped = false;
        while let Some(c) = queue.pop_front() {
            comp.push(c);
            if comp.len() > cap {
                // Larger than any filled polyform could be: unbounded side.
                escaped = true;
                break;
            }
            patch.ensure_tile_surround(c)?;
            for &e in patch.tile_edges_unchecked(c).to_vec().iter() {
                let [a, b] = patch.edge_tiles_unchecked(e);
                let nb = if a == Some(c) { b } else { a };
                let nb = nb.ok_or_else(|| {
                    Error::Internal("missing neighbor after surround growth".into())
                })?;
                if !in_a.contains(&nb) && visited.insert(nb) {
                    queue.push_back(nb);
                }
            }
        }
        if !escaped {
            comp.sort();
            holes.push(comp);
        }
    }
    holes.sort();
    Ok(holes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tessellation::TessellationPatch;

    fn params(p: u32, q: u32) -> TessellationParams {
        TessellationParams::new(p, q).unwrap()
    }

    fn shared(p: u32, q: u32, layers: u32) -> SharedPatch {
        TessellationPatch::grow_layers(params(p, q), layers)
            .unwrap()
            .into_shared()
    }

    #[test]
    fn single_tile_metrics() {
        let patch = shared(5, 4, 2);
        let a = make_polyform(&patch, &[TileId(0)]).unwrap();
        let m = a.metrics().unwrap();
        assert_eq!(
            m,
            Metrics { n: 1, v: 5, e: 5, b: 0, p_o: 5, p_h: 0, h: 0 }
        );
        assert!(m.identities_hold(5));
        let dg = a.dual_graph();
        assert_eq!(dg.node_count(), 1);
        assert_eq!(dg.edge_count(), 0);
        assert!(dg.is_tree());
    }

    #[test]
    fn rejects_empty_unknown_disconnected() {
        let patch = shared(5, 4, 2);
        assert!(matches!(make_polyform(&patch, &[]), Err(Error::EmptyPolyform)));
        assert!(matches!(
            make_polyform(&patch, &[TileId(999)]),
            Err(Error::UnknownTile(999))
        ));
        // Two tiles sharing only a vertex.
        let (a, b) = {
            let pr = patch.read().unwrap();
            let mut found = None;
            'outer: for i in 0..pr.tile_count() {
                for j in (i + 1)..pr.tile_count() {
                    let ti = TileId(i as u32);
                    let tj = TileId(j as u32);
                    let shares_vertex = pr
                        .tile_vertices_unchecked(ti)
                        .iter()
                        .any(|v| pr.tile_vertices_unchecked(tj).contains(v));
                    let shares_edge = pr
                        .tile_edges_unchecked(ti)
                        .iter()
                        .any(|e| pr.tile_edges_unchecked(tj).contains(e));
                    if shares_vertex && !shares_edge {
                        found = Some((ti, tj));
                        break 'outer;
                    }
                }
            }
            found.expect("a vertex-touching pair exists in A(2)")
        };
        assert!(matches!(
            make_polyform(&patch, &[a, b]),
            Err(Error::Disconnected)
        ));
    }

    #[test]
    fn ring_around_central_tile_has_one_hole() {
        // {7,3}: the 7 neighbors of the central tile form the g(1) ring.
        let patch = shared(7, 3, 2);
        let ring: Vec<TileId> = (1..8).map(TileId).collect();
        let a = make_polyform(&patch, &ring).unwrap();
        assert_eq!(a.hole_count(), 1);
        let hd = a.holes().unwrap();
        assert_eq!(hd.count(), 1);
        assert_eq!(hd.holes()[0].tiles(), &[TileId(0)]);
        let m = a.metrics().unwrap();
        assert_eq!(m.n, 7);
        assert_eq!(m.h, 1);
        assert_eq!(m.p_h, 7, "each hole edge borders the 1-tile hole");
        assert!(m.identities_hold(7));
        // Dual graph of the ring is a 7-cycle.
        let dg = a.dual_graph();
        assert_eq!(dg.node_count(), 7);
        assert_eq!(dg.edge_count(), 7);
        assert!(dg.is_connected());
        assert!(!dg.is_tree());
        // Filling gives 8 tiles and no holes.
        let filled = a.fill().unwrap();
        assert_eq!(filled.tile_count(), 8);
        assert_eq!(filled.hole_count(), 0);
        // Outer perimeter is preserved by filling.
        let mf = filled.metrics().unwrap();
        assert_eq!(m.p_o, mf.p_o);
        assert_eq!(mf.p_h, 0);
    }

    #[test]
    fn path_of_three_tiles_is_a_tree() {
        let patch = shared(5, 4, 2);
        // Central tile plus two non-adjacent neighbors: find chain t0-x-y.
        let (x, y) = {
            let pr = patch.read().unwrap();
            let nbs: Vec<TileId> = pr
                .tile_neighbors(TileId(0))
                .unwrap()
                .into_iter()
                .flat_map(|(_, t)| t)
                .collect();
            let x = nbs[0];
            let y = pr
                .tile_neighbors(x)
                .unwrap()
                .into_iter()
                .flat_map(|(_, t)| t)
                .find(|t| *t != TileId(0) && !nbs.contains(t))
                .unwrap();
            (x, y)
        };
        let a = make_polyform(&patch, &[TileId(0), x, y]).unwrap();
        let dg = a.dual_graph();
        assert_eq!(dg.node_count(), 3);
        assert_eq!(dg.edge_count(), 2);
        assert!(dg.is_tree());
        assert_eq!(a.hole_count(), 0);
    }

    #[test]
    fn fill_is_idempotent() {
        let patch = shared(7, 3, 2);
        let ring: Vec<TileId> = (1..8).map(TileId).collect();
        let a = make_polyform(&patch, &ring).unwrap();
        let f1 = a.fill().unwrap();
        let f2 = f1.fill().unwrap();
        assert_eq!(f1, f2);
    }

    #[test]
    fn canonical_keys_distinguish_sets() {
        let patch = shared(5, 4, 2);
        let a = make_polyform(&patch, &[TileId(0)]).unwrap();
        let b = make_polyform(&patch, &[TileId(0)]).unwrap();
        assert_eq!(a.canonical_key().unwrap(), b.canonical_key().unwrap());
        let c = make_polyform(&patch, &[TileId(0), TileId(1)]).unwrap();
        assert_ne!(a.canonical_key().unwrap(), c.canonical_key().unwrap());
    }

    #[test]
    fn pform_roundtrip() {
        let patch = shared(7, 3, 2);
        let ring: Vec<TileId> = (1..8).map(TileId).collect();
        let a = make_polyform(&patch, &ring).unwrap();
        let mut buf = Vec::new();
        a.write_text(&mut buf).unwrap();
        // Re-anchor into a fresh, minimally grown patch.
        let fresh = TessellationPatch::new(params(7, 3)).into_shared();
        let b = Polyform::read_text(buf.as_slice(), &fresh).unwrap();
        assert_eq!(b.tile_count(), 7);
        assert_eq!(b.hole_count(), 1);
        let mut buf2 = Vec::new();
        b.write_text(&mut buf2).unwrap();
        assert_eq!(buf, buf2, "round-trip is bit-exact");
    }

    #[test]
    fn holes_decomposition_grows_window_on_demand() {
        // Build the ring inside a *minimal* patch: ensure growth kicks in.
        let patch = shared(7, 3, 2);
        let ring: Vec<TileId> = (1..8).map(TileId).collect();
        let a = make_polyform(&patch, &ring).unwrap();
        let before = patch.read().unwrap().tile_count();
        let hd = a.holes().unwrap();
        assert_eq!(hd.count(), 1);
        let after = patch.read().unwrap().tile_count();
        assert!(after > before, "outer flood must have grown the patch");
    }
}
