//! Versioned line-oriented text format for patches.
//!
//! ```text
//! HYP/1 p q layers
//! T <id> <layer> <address|-> <e0> ... <e{p-1}>
//! E <id> <t0> <t1|-> <v0> <v1>
//! ```
//!
//! Round-trips are bit-exact. Loaded patches answer every query and support
//! local growth, but deterministic layer growth is disabled (the sweep
//! cursor is not part of the format).

use std::collections::HashMap;
use std::io::{BufRead, Write};

use crate::error::Error;
use crate::params::TessellationParams;
use crate::Result;

use super::{BndLink, EdgeData, TessellationPatch, TileData, TileId, VertexData, VertexId, NONE};

pub(crate) fn format_address(addr: &[u16]) -> String {
    if addr.is_empty() {
        "-".to_string()
    } else {
        addr.iter()
            .map(|o| o.to_string())
            .collect::<Vec<_>>()
            .join(".")
    }
}

pub(crate) fn parse_address(s: &str, line: usize) -> Result<Vec<u16>> {
    if s == "-" {
        return Ok(Vec::new());
    }
    s.split('.')
        .map(|tok| {
            tok.parse::<u16>().map_err(|_| Error::Parse {
                line,
                msg: format!("bad address component {tok:?}"),
            })
        })
        .collect()
}

impl TessellationPatch {
    /// Serialize the full incidence structure.
    pub fn write_text<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(
            w,
            "HYP/1 {} {} {}",
            self.params.p(),
            self.params.q(),
            self.layers_grown
        )?;
        for (i, t) in self.tiles.iter().enumerate() {
            let addr = self.address_of(TileId(i as u32))?;
            write!(w, "T {} {} {}", i, t.layer, format_address(&addr))?;
            for e in t.edges.iter() {
                write!(w, " {}", e.0)?;
            }
            writeln!(w)?;
        }
        for (i, e) in self.edges.iter().enumerate() {
            let t0 = e.tiles[0].map(|t| t.0.to_string()).unwrap_or("-".into());
            let t1 = e.tiles[1].map(|t| t.0.to_string()).unwrap_or("-".into());
            writeln!(w, "E {} {} {} {} {}", i, t0, t1, e.verts[0].0, e.verts[1].0)?;
        }
        Ok(())
    }

    /// Parse a patch previously written by [`write_text`](Self::write_text).
    pub fn read_text<R: BufRead>(r: R) -> Result<Self> {
        let mut lines = r.lines().enumerate();
        let (_, header) = lines
            .next()
            .ok_or_else(|| Error::Parse { line: 1, msg: "empty file".into() })?;
        let header = header?;
        let toks: Vec<&str> = header.split_whitespace().collect();
        if toks.len() != 4 || toks[0] != "HYP/1" {
            return Err(Error::Parse { line: 1, msg: "expected `HYP/1 p q layers` header".into() });
        }
        let parse_u32 = |s: &str, line: usize| -> Result<u32> {
            s.parse().map_err(|_| Error::Parse { line, msg: format!("bad integer {s:?}") })
        };
        let p = parse_u32(toks[1], 1)?;
        let q = parse_u32(toks[2], 1)?;
        let layers = parse_u32(toks[3], 1)?;
        let params = TessellationParams::new(p, q)?;
        let p = p as usize;

        struct RawTile {
            layer: u32,
            addr: Vec<u16>,
            edges: Vec<u32>,
        }
        let mut raw_tiles: Vec<RawTile> = Vec::new();
        let mut raw_edges: Vec<(Option<u32>, Option<u32>, u32, u32)> = Vec::new();
        for (lineno, line) in lines {
            let lineno = lineno + 1;
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            match toks[0] {
                "T" => {
                    if toks.len() != 4 + p {
                        return Err(Error::Parse { line: lineno, msg: "bad tile record arity".into() });
                    }
                    let id = parse_u32(toks[1], lineno)? as usize;
                    if id != raw_tiles.len() {
                        return Err(Error::Parse { line: lineno, msg: "tile ids must be dense and ordered".into() });
                    }
                    let layer = parse_u32(toks[2], lineno)?;
                    let addr = parse_address(toks[3], lineno)?;
                    let mut edges = Vec::with_capacity(p);
                    for t in &toks[4..] {
                        edges.push(parse_u32(t, lineno)?);
                    }
                    raw_tiles.push(RawTile { layer, addr, edges });
                }
                "E" => {
                    if toks.len() != 6 {
                        return Err(Error::Parse { line: lineno, msg: "bad edge record arity".into() });
                    }
                    let id = parse_u32(toks[1], lineno)? as usize;
                    if id != raw_edges.len() {
                        return Err(Error::Parse { line: lineno, msg: "edge ids must be dense and ordered".into() });
                    }
                    let t0 = if toks[2] == "-" { None } else { Some(parse_u32(toks[2], lineno)?) };
                    let t1 = if toks[3] == "-" { None } else { Some(parse_u32(toks[3], lineno)?) };
                    raw_edges.push((t0, t1, parse_u32(toks[4], lineno)?, parse_u32(toks[5], lineno)?));
                }
                other => {
                    return Err(Error::Parse { line: lineno, msg: format!("unknown record {other:?}") });
                }
            }
        }
        if raw_tiles.is_empty() {
            return Err(Error::Parse { line: 1, msg: "patch has no tiles".into() });
        }

        let n_verts = raw_edges
            .iter()
            .map(|&(_, _, a, b)| a.max(b) + 1)
            .max()
            .unwrap_or(0) as usize;
        let mut patch = TessellationPatch {
            params,
            tiles: Vec::with_capacity(raw_tiles.len()),
            edges: raw_edges
                .iter()
                .map(|&(t0, t1, a, b)| EdgeData {
                    verts: [VertexId(a), VertexId(b)],
                    tiles: [t0.map(TileId), t1.map(TileId)],
                })
                .collect(),
            verts: vec![VertexData::default(); n_verts],
            bnd: vec![None; raw_edges.len()],
            out_edge: vec![NONE; n_verts],
            layers_grown: layers,
            budget: super::DEFAULT_TILE_BUDGET,
            sweep: None,
            layer_resumable: false,
            bnd_len: 0,
        };

        // Rebuild tile vertex cycles: verts[i] = shared endpoint of edges[i-1], edges[i].
        let mut addr_index: HashMap<Vec<u16>, TileId> = HashMap::new();
        for (id, rt) in raw_tiles.iter().enumerate() {
            if rt.edges.len() != p {
                return Err(Error::Parse { line: 0, msg: format!("tile {id} has {} edges", rt.edges.len()) });
            }
            let mut verts = Vec::with_capacity(p);
            for i in 0..p {
                let prev = rt.edges[(i + p - 1) % p] as usize;
                let cur = rt.edges[i] as usize;
                let (pe, ce) = match (patch.edges.get(prev), patch.edges.get(cur)) {
                    (Some(a), Some(b)) => (a, b),
                    _ => return Err(Error::Parse { line: 0, msg: format!("tile {id} references unknown edge") }),
                };
                let shared = [pe.verts[0], pe.verts[1]]
                    .into_iter()
                    .find(|v| ce.verts.contains(v))
                    .ok_or_else(|| Error::Parse {
                        line: 0,
                        msg: format!("tile {id}: consecutive edges share no vertex"),
                    })?;
                verts.push(shared);
            }
            addr_index.insert(rt.addr.clone(), TileId(id as u32));
            patch.tiles.push(TileData {
                edges: rt
                    .edges
                    .iter()
                    .map(|&e| super::EdgeId(e))
                    .collect::<Vec<_>>()
                    .into_boxed_slice(),
                verts: verts.into_boxed_slice(),
                layer: rt.layer,
                parent: None,
            });
        }
        // Parents from addresses.
        for (id, rt) in raw_tiles.iter().enumerate() {
            if rt.addr.is_empty() {
                continue;
            }
            let parent_addr = &rt.addr[..rt.addr.len() - 1];
            let ord = *rt.addr.last().unwrap();
            let parent = *addr_index.get(parent_addr).ok_or_else(|| Error::Parse {
                line: 0,
                msg: format!("tile {id}: parent address not present"),
            })?;
            patch.tiles[id].parent = Some((parent, ord));
        }
        // Vertex fans.
        let fan_pairs: Vec<(usize, u32)> = patch
            .tiles
            .iter()
            .enumerate()
            .flat_map(|(id, t)| t.verts.iter().map(move |v| (id, v.0)).collect::<Vec<_>>())
            .collect();
        for (tile, v) in fan_pairs {
            patch.verts[v as usize].tiles.push(TileId(tile as u32));
        }
        patch.rebuild_boundary()?;
        patch.validate_structure()?;
        Ok(patch)
    }

    /// Reconstruct boundary links after a load, orienting the cycle with the
    /// attached-tile traversal convention at the lowest boundary edge.
    fn rebuild_boundary(&mut self) -> Result<()> {
        let boundary: Vec<usize> = self
            .edges
            .iter()
            .enumerate()
            .filter(|(_, e)| e.tiles[1].is_none() || e.tiles[0].is_none())
            .map(|(i, _)| i)
            .collect();
        if boundary.is_empty() {
            return Err(Error::Parse { line: 0, msg: "patch has no boundary".into() });
        }
        // vertex -> its (up to 2) boundary edges
        let mut at_vertex: HashMap<u32, Vec<usize>> = HashMap::new();
        for &e in &boundary {
            for v in self.edges[e].verts {
                at_vertex.entry(v.0).or_default().push(e);
            }
        }
        for (v, es) in &at_vertex {
            if es.len() != 2 {
                return Err(Error::Parse {
                    line: 0,
                    msg: format!("vertex {v} has {} boundary edges, expected 2", es.len()),
                });
            }
        }
        let start = boundary[0];
        // Orient: tail = verts[(j+1)%p] in the owning tile's cycle.
        let owner = self.edges[start].tiles[0]
            .or(self.edges[start].tiles[1])
            .ok_or_else(|| Error::Parse { line: 0, msg: "edge with no tiles".into() })?;
        let td = &self.tiles[owner.index()];
        let j = td
            .edges
            .iter()
            .position(|&e| e.index() == start)
            .ok_or_else(|| Error::Parse { line: 0, msg: "edge/tile incidence mismatch".into() })?;
        let p = td.edges.len();
        let mut tail = td.verts[(j + 1) % p].0;
        let mut cur = start;
        let mut chain: Vec<(usize, u32, u32)> = Vec::with_capacity(boundary.len());
        loop {
            let [a, b] = self.edges[cur].verts;
            let head = if a.0 == tail { b.0 } else { a.0 };
            chain.push((cur, tail, head));
            // Next boundary edge at `head` that is not `cur`.
            let es = &at_vertex[&head];
            let next = if es[0] == cur { es[1] } else { es[0] };
            tail = head;
            cur = next;
            if cur == start {
                break;
            }
            if chain.len() > boundary.len() {
                return Err(Error::Parse { line: 0, msg: "boundary does not close into one cycle".into() });
            }
        }
        if chain.len() != boundary.len() {
            return Err(Error::Parse { line: 0, msg: "boundary is not a single cycle".into() });
        }
        for (i, &(e, tail, head)) in chain.iter().enumerate() {
            let next = chain[(i + 1) % chain.len()].0 as u32;
            let prev = chain[(i + chain.len() - 1) % chain.len()].0 as u32;
            self.bnd[e] = Some(BndLink { next, prev, tail, head });
            self.out_edge[tail as usize] = e as u32;
        }
        self.bnd_len = chain.len();
        Ok(())
    }

    /// Cheap structural sanity used after deserialization.
    fn validate_structure(&self) -> Result<()> {
        let q = self.params.q() as usize;
        for (i, v) in self.verts.iter().enumerate() {
            if v.tiles.is_empty() || v.tiles.len() > q {
                return Err(Error::Parse {
                    line: 0,
                    msg: format!("vertex {i} has {} incident tiles", v.tiles.len()),
                });
            }
        }
        for (i, e) in self.edges.iter().enumerate() {
            if e.tiles[0].is_none() && e.tiles[1].is_none() {
                return Err(Error::Parse { line: 0, msg: format!("edge {i} has no tiles") });
            }
            for t in e.tiles.into_iter().flatten() {
                if !self.tiles[t.index()].edges.iter().any(|&te| te.index() == i) {
                    return Err(Error::Parse {
                        line: 0,
                        msg: format!("edge {i} claims tile {t} but is not on it"),
                    });
                }
            }
        }
        Ok(())
    }
}
