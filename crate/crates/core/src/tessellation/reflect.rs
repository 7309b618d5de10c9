//! Combinatorial reflection automorphisms.
//!
//! The reflection across (the geodesic through) an interior edge fixes that
//! edge and its two vertices, swaps the two incident tiles, and propagates
//! outward by adjacency. No coordinates are involved: orientation is resolved
//! locally from vertex images, so per-tile storage orientation never matters.

use std::collections::{HashMap, VecDeque};

use crate::error::Error;
use crate::Result;

use super::{EdgeId, TessellationPatch, TileId, VertexId};

/// Partial reflection map. Entries exist only where both preimage and image
/// lie in the grown patch; the map always contains both directions, so it is
/// an involution on its domain.
#[derive(Debug, Clone, Default)]
pub struct ReflectionMap {
    tiles: HashMap<u32, u32>,
    edges: HashMap<u32, u32>,
    verts: HashMap<u32, u32>,
}

impl ReflectionMap {
    pub fn tile(&self, t: TileId) -> Option<TileId> {
        self.tiles.get(&t.0).copied().map(TileId)
    }

    pub fn edge(&self, e: EdgeId) -> Option<EdgeId> {
        self.edges.get(&e.0).copied().map(EdgeId)
    }

    pub fn vertex(&self, v: VertexId) -> Option<VertexId> {
        self.verts.get(&v.0).copied().map(VertexId)
    }

    /// Tile pairs sorted by preimage id.
    pub fn tile_pairs(&self) -> Vec<(TileId, TileId)> {
        let mut out: Vec<_> = self
            .tiles
            .iter()
            .map(|(&a, &b)| (TileId(a), TileId(b)))
            .collect();
        out.sort();
        out
    }

    pub fn tile_domain_len(&self) -> usize {
        self.tiles.len()
    }

    fn insert_tile(&mut self, a: u32, b: u32) -> Result<bool> {
        insert_sym(&mut self.tiles, a, b, "tile")
    }

    fn insert_edge(&mut self, a: u32, b: u32) -> Result<bool> {
        insert_sym(&mut self.edges, a, b, "edge")
    }

    fn insert_vert(&mut self, a: u32, b: u32) -> Result<bool> {
        insert_sym(&mut self.verts, a, b, "vertex")
    }
}

fn insert_sym(map: &mut HashMap<u32, u32>, a: u32, b: u32, what: &str) -> Result<bool> {
    match map.get(&a) {
        Some(&old) if old != b => Err(Error::Internal(format!(
            "reflection is inconsistent: {what} {a} maps to both {old} and {b}"
        ))),
        Some(_) => Ok(false),
        None => {
            if let Some(&old) = map.get(&b) {
                if old != a {
                    return Err(Error::Internal(format!(
                        "reflection is inconsistent: {what} {b} maps to both {old} and {a}"
                    )));
                }
            }
            map.insert(a, b);
            map.insert(b, a);
            Ok(true)
        }
    }
}

/// Given a mapped tile pair with one anchored edge correspondence, derive the
/// full per-index correspondence and record it. Returns, per edge slot of the
/// source tile, the image edge.
fn propagate_pair(
    patch: &TessellationPatch,
    map: &mut ReflectionMap,
    t: TileId,
    t_img: TileId,
    anchor: EdgeId,
    anchor_img: EdgeId,
) -> Result<Vec<(EdgeId, EdgeId)>> {
    let p = patch.params().p() as usize;
    let te = patch.tile_edges_unchecked(t);
    let tv = patch.tile_vertices_unchecked(t);
    let ie = patch.tile_edges_unchecked(t_img);
    let iv = patch.tile_vertices_unchecked(t_img);
    let j = te
        .iter()
        .position(|&e| e == anchor)
        .ok_or_else(|| Error::Internal("anchor edge not on source tile".into()))?;
    let m = ie
        .iter()
        .position(|&e| e == anchor_img)
        .ok_or_else(|| Error::Internal("anchor image edge not on image tile".into()))?;
    // Orientation from the known image of the anchor's tail vertex.
    let wj = tv[j];
    let wj_img = map
        .vertex(wj)
        .ok_or_else(|| Error::Internal("anchor vertex has no image yet".into()))?;
    let forward = if wj_img == iv[m] {
        true
    } else if wj_img == iv[(m + 1) % p] {
        false
    } else {
        return Err(Error::Internal(
            "anchor vertex image is not an endpoint of the anchor image edge".into(),
        ));
    };
    let mut out = Vec::with_capacity(p);
    for tshift in 0..p {
        let src_e = te[(j + tshift) % p];
        let src_v = tv[(j + tshift) % p];
        let (img_e, img_v) = if forward {
            (ie[(m + tshift) % p], iv[(m + tshift) % p])
        } else {
            (
                ie[(m + p - tshift) % p],
                iv[(m + 1 + p - tshift) % p],
            )
        };
        map.insert_edge(src_e.0, img_e.0)?;
        map.insert_vert(src_v.0, img_v.0)?;
        out.push((src_e, img_e));
    }
    Ok(out)
}

impl TessellationPatch {
    /// The combinatorial reflection fixing edge `e`, restricted to tiles
    /// whose image also lies in the patch. For a boundary edge the map is
    /// empty (there is no second tile to seed the swap).
    pub fn reflect_across_edge(&self, e: EdgeId) -> Result<ReflectionMap> {
        self.edge_vertices(e)?;
        let mut map = ReflectionMap::default();
        let [a, b] = self.edge_tiles_unchecked(e);
        let (t0, t1) = match (a, b) {
            (Some(t0), Some(t1)) => (t0, t1),
            _ => return Ok(map),
        };
        let [va, vb] = self.edge_vertices(e)?;
        map.insert_edge(e.0, e.0)?;
        map.insert_vert(va.0, va.0)?;
        if vb != va {
            map.insert_vert(vb.0, vb.0)?;
        }
        map.insert_tile(t0.0, t1.0)?;

        let mut queue: VecDeque<(TileId, TileId, EdgeId, EdgeId)> = VecDeque::new();
        queue.push_back((t0, t1, e, e));
        queue.push_back((t1, t0, e, e));
        while let Some((t, t_img, anchor, anchor_img)) = queue.pop_front() {
            let pairs = propagate_pair(self, &mut map, t, t_img, anchor, anchor_img)?;
            for (f, f_img) in pairs {
                let n = self.neighbor_of(t, f)?;
                let n_img = self.neighbor_of(t_img, f_img)?;
                if let (Some(n), Some(n_img)) = (n, n_img) {
                    if map.insert_tile(n.0, n_img.0)? {
                        queue.push_back((n, n_img, f, f_img));
                        queue.push_back((n_img, n, f_img, f));
                    }
                }
            }
        }
        Ok(map)
    }

    /// Reflection across `axis` computed only over `src` tiles, growing the
    /// patch locally so that every image materializes. Returns the map; the
    /// image of every tile of `src` is guaranteed present.
    ///
    /// `src` must be edge-connected and contain the tile on one side of
    /// `axis`.
    pub(crate) fn reflect_tiles_growing(
        &mut self,
        axis: EdgeId,
        src: &std::collections::BTreeSet<TileId>,
    ) -> Result<ReflectionMap> {
        self.edge_vertices(axis)?;
        // Materialize both sides of the axis.
        if self.edge_tiles_unchecked(axis)[1].is_none() {
            let v = self.edge_vertices(axis)?[0];
            self.saturate_vertex(v)?;
        }
        let [a, b] = self.edge_tiles_unchecked(axis);
        let (t0, t1) = match (a, b) {
            (Some(x), Some(y)) => {
                if src.contains(&x) {
                    (x, y)
                } else if src.contains(&y) {
                    (y, x)
                } else {
                    return Err(Error::Internal(
                        "reflection axis does not touch the source tile set".into(),
                    ));
                }
            }
            _ => return Err(Error::Internal("axis has only one tile after growth".into())),
        };
        let mut map = ReflectionMap::default();
        let [va, vb] = self.edge_vertices(axis)?;
        map.insert_edge(axis.0, axis.0)?;
        map.insert_vert(va.0, va.0)?;
        map.insert_vert(vb.0, vb.0)?;
        map.insert_tile(t0.0, t1.0)?;

        let mut queue: VecDeque<(TileId, TileId, EdgeId, EdgeId)> = VecDeque::new();
        queue.push_back((t0, t1, axis, axis));
        while let Some((t, t_img, anchor, anchor_img)) = queue.pop_front() {
            let pairs = propagate_pair(self, &mut map, t, t_img, anchor, anchor_img)?;
            for (f, f_img) in pairs {
                let n = match self.neighbor_of(t, f)? {
                    Some(n) => n,
                    None => continue,
                };
                if !src.contains(&n) || map.tile(n).is_some() {
                    // Also record images of already-known neighbors for
                    // consistency checking where both sides exist.
                    if let (Some(n_known), Some(n_img)) =
                        (map.tile(n), self.neighbor_of(t_img, f_img)?)
                    {
                        if n_known != n_img {
                            return Err(Error::Internal(
                                "reflection image disagrees across two routes".into(),
                            ));
                        }
                    }
                    continue;
                }
                // Materialize the image neighbor.
                if self.neighbor_of(t_img, f_img)?.is_none() {
                    let v = self.edge_vertices(f_img)?[0];
                    self.saturate_vertex(v)?;
                }
                let n_img = self
                    .neighbor_of(t_img, f_img)?
                    .ok_or_else(|| Error::Internal("image neighbor did not materialize".into()))?;
                map.insert_tile(n.0, n_img.0)?;
                queue.push_back((n, n_img, f, f_img));
            }
        }
        for &t in src {
            if map.tile(t).is_none() {
                return Err(Error::Internal(format!(
                    "source tile {t} unreachable from the reflection axis"
                )));
            }
        }
        Ok(map)
    }
}
