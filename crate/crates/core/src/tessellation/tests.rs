use super::*;
use crate::params::TEST_GRID;

fn params(p: u32, q: u32) -> TessellationParams {
    TessellationParams::new(p, q).unwrap()
}

fn serialize(patch: &TessellationPatch) -> String {
    let mut buf = Vec::new();
    patch.write_text(&mut buf).unwrap();
    String::from_utf8(buf).unwrap()
}

#[test]
fn single_tile_patch() {
    let patch = TessellationPatch::new(params(5, 4));
    assert_eq!(patch.tile_count(), 1);
    assert_eq!(patch.edge_count(), 5);
    assert_eq!(patch.vertex_count(), 5);
    assert_eq!(patch.layers_grown(), 1);
    assert_eq!(patch.boundary_edge_count(), 5);
}

#[test]
fn layer2_tile_counts_match_formula() {
    for (p, q) in TEST_GRID {
        let patch = TessellationPatch::grow_layers(params(p, q), 2).unwrap();
        assert_eq!(
            patch.tile_count() as u64,
            params(p, q).layer2_tiles(),
            "{{{p},{q}}}"
        );
    }
}

#[test]
fn layer2_examples_from_construction() {
    // {5,4}: 1 + 5*(4-2) = 11; {7,3}: 1 + 7*(3-2) = 8.
    let a54 = TessellationPatch::grow_layers(params(5, 4), 2).unwrap();
    assert_eq!(a54.tile_count(), 11);
    assert_eq!(a54.boundary_edge_count(), 25);
    let a73 = TessellationPatch::grow_layers(params(7, 3), 2).unwrap();
    assert_eq!(a73.tile_count(), 8);
    assert_eq!(a73.boundary_edge_count(), 28);
    let a37 = TessellationPatch::grow_layers(params(3, 7), 2).unwrap();
    assert_eq!(a37.tile_count(), 16);
    assert_eq!(a37.boundary_edge_count(), 12);
}

#[test]
fn handshake_and_vertex_regularity() {
    for (p, q) in [(5, 4), (7, 3), (3, 7), (4, 5)] {
        let patch = TessellationPatch::grow_layers(params(p, q), 3).unwrap();
        let interior = patch
            .edges
            .iter()
            .filter(|e| e.tiles[0].is_some() && e.tiles[1].is_some())
            .count();
        let boundary = patch.boundary_edge_count();
        assert_eq!(
            patch.tile_count() * p as usize,
            2 * interior + boundary,
            "handshake {{{p},{q}}}"
        );
        for v in 0..patch.vertex_count() {
            let fan = patch.vertex_tile_count(VertexId(v as u32)).unwrap();
            assert!(fan <= q as usize, "{{{p},{q}}} vertex {v} fan {fan}");
        }
        // Every tile has p distinct edges and p distinct vertices.
        for t in 0..patch.tile_count() {
            let es = patch.tile_edges(TileId(t as u32)).unwrap();
            let vs = patch.tile_vertices(TileId(t as u32)).unwrap();
            assert_eq!(es.len(), p as usize);
            assert_eq!(vs.len(), p as usize);
            let mut es = es.to_vec();
            es.sort();
            es.dedup();
            assert_eq!(es.len(), p as usize);
        }
    }
}

#[test]
fn growth_is_deterministic() {
    for (p, q) in [(5, 4), (7, 3), (3, 8)] {
        let a = TessellationPatch::grow_layers(params(p, q), 3).unwrap();
        let b = TessellationPatch::grow_layers(params(p, q), 3).unwrap();
        assert_eq!(serialize(&a), serialize(&b));
    }
}

#[test]
fn extend_matches_fresh_growth_and_is_idempotent() {
    let mut grown = TessellationPatch::grow_layers(params(5, 4), 1).unwrap();
    grown.extend_to_layer(2).unwrap();
    let fresh = TessellationPatch::grow_layers(params(5, 4), 2).unwrap();
    assert_eq!(serialize(&grown), serialize(&fresh));

    let before = serialize(&grown);
    grown.extend_to_layer(2).unwrap();
    assert_eq!(before, serialize(&grown));

    let mut a37 = TessellationPatch::grow_layers(params(3, 7), 2).unwrap();
    a37.extend_to_layer(3).unwrap();
    let fresh37 = TessellationPatch::grow_layers(params(3, 7), 3).unwrap();
    assert_eq!(a37.tile_count(), fresh37.tile_count());
}

#[test]
fn growth_ids_are_prefixes() {
    let small = TessellationPatch::grow_layers(params(5, 4), 2).unwrap();
    let big = TessellationPatch::grow_layers(params(5, 4), 3).unwrap();
    for t in 0..small.tile_count() {
        let t = TileId(t as u32);
        assert_eq!(small.tile_edges(t).unwrap(), big.tile_edges(t).unwrap());
        assert_eq!(small.tile_vertices(t).unwrap(), big.tile_vertices(t).unwrap());
        assert_eq!(small.tile_layer(t).unwrap(), big.tile_layer(t).unwrap());
    }
    for e in 0..small.edge_count() {
        let e = EdgeId(e as u32);
        assert_eq!(small.edge_vertices(e).unwrap(), big.edge_vertices(e).unwrap());
        let [s0, s1] = small.edge_tiles(e).unwrap();
        let [b0, b1] = big.edge_tiles(e).unwrap();
        assert_eq!(s0, b0);
        if s1.is_some() {
            assert_eq!(s1, b1);
        }
    }
}

#[test]
fn central_tile_neighbors() {
    let a54 = TessellationPatch::grow_layers(params(5, 4), 2).unwrap();
    let nbs = a54.tile_neighbors(TileId(0)).unwrap();
    assert_eq!(nbs.len(), 5);
    assert!(nbs.iter().all(|(_, t)| t.is_some()));

    let a73 = TessellationPatch::grow_layers(params(7, 3), 2).unwrap();
    let nbs = a73.tile_neighbors(TileId(0)).unwrap();
    assert_eq!(nbs.len(), 7);
    let mut got: Vec<u32> = nbs.iter().map(|(_, t)| t.unwrap().0).collect();
    got.sort();
    assert_eq!(got, vec![1, 2, 3, 4, 5, 6, 7], "central {{7,3}} neighbors are the 7 layer-2 tiles");

    // Outermost tiles have at least one absent neighbor.
    let last = TileId((a54.tile_count() - 1) as u32);
    assert!(a54
        .tile_neighbors(last)
        .unwrap()
        .iter()
        .any(|(_, t)| t.is_none()));
}

#[test]
fn vertex_star_counts() {
    let a54 = TessellationPatch::grow_layers(params(5, 4), 3).unwrap();
    // Central tile vertices are interior after layer 2.
    for &v in a54.tile_vertices(TileId(0)).unwrap() {
        let star = a54.vertex_star(v).unwrap();
        assert_eq!(star.len(), 4);
        assert!(star.contains(&TileId(0)));
    }
    let a45 = TessellationPatch::grow_layers(params(4, 5), 2).unwrap();
    for &v in a45.tile_vertices(TileId(0)).unwrap() {
        assert_eq!(a45.vertex_star(v).unwrap().len(), 5);
    }
    // Boundary vertices have fewer than q tiles.
    let boundary_v = (0..a54.vertex_count())
        .map(|v| VertexId(v as u32))
        .find(|&v| !a54.is_interior_vertex(v).unwrap())
        .unwrap();
    assert!(a54.vertex_star(boundary_v).unwrap().len() < 4);
}

#[test]
fn vertex_star_is_rotationally_consistent() {
    let patch = TessellationPatch::grow_layers(params(5, 4), 3).unwrap();
    for v in 0..patch.vertex_count() {
        let v = VertexId(v as u32);
        let star = patch.vertex_star(v).unwrap();
        for w in star.windows(2) {
            // Consecutive fan tiles share an edge through v.
            let shared = patch
                .tile_edges(w[0])
                .unwrap()
                .iter()
                .any(|&e| patch.tile_edges(w[1]).unwrap().contains(&e));
            assert!(shared, "fan of {v} not consecutive at {}..{}", w[0], w[1]);
        }
    }
}

#[test]
fn reflection_swaps_and_involutes() {
    let patch = TessellationPatch::grow_layers(params(5, 4), 3).unwrap();
    // Pick an interior edge of the central tile.
    let e = patch.tile_edges(TileId(0)).unwrap()[0];
    let map = patch.reflect_across_edge(e).unwrap();
    let [t0, t1] = patch.edge_tiles(e).unwrap();
    let (t0, t1) = (t0.unwrap(), t1.unwrap());
    assert_eq!(map.tile(t0), Some(t1));
    assert_eq!(map.tile(t1), Some(t0));
    // Involution on the whole domain.
    for (a, b) in map.tile_pairs() {
        assert_eq!(map.tile(b), Some(a));
    }
    // Commutes with adjacency where images exist.
    for (a, b) in map.tile_pairs() {
        for (_, nb) in patch.tile_neighbors(a).unwrap() {
            if let Some(nb) = nb {
                if let (Some(nb_img), Some(_)) = (map.tile(nb), map.tile(a)) {
                    let b_nbs: Vec<TileId> = patch
                        .tile_neighbors(b)
                        .unwrap()
                        .into_iter()
                        .flat_map(|(_, t)| t)
                        .collect();
                    assert!(
                        b_nbs.contains(&nb_img),
                        "adjacency not preserved: {a}~{nb} but {b}!~{nb_img}"
                    );
                }
            }
        }
    }
}

#[test]
fn reflection_on_boundary_edge_is_empty() {
    let patch = TessellationPatch::grow_layers(params(5, 4), 2).unwrap();
    let boundary_edge = (0..patch.edge_count())
        .map(|e| EdgeId(e as u32))
        .find(|&e| patch.edge_tiles(e).unwrap()[1].is_none())
        .unwrap();
    let map = patch.reflect_across_edge(boundary_edge).unwrap();
    assert_eq!(map.tile_domain_len(), 0);
}

#[test]
fn budget_is_enforced() {
    let err = TessellationPatch::grow_layers_with_budget(params(5, 4), 3, 20).unwrap_err();
    assert!(matches!(err, Error::BudgetExceeded { budget: 20 }));
}

#[test]
fn addresses_resolve_back() {
    let patch = TessellationPatch::grow_layers(params(5, 4), 3).unwrap();
    for t in 0..patch.tile_count() {
        let t = TileId(t as u32);
        let addr = patch.address_of(t).unwrap();
        assert_eq!(patch.resolve_address(&addr).unwrap(), Some(t));
    }
    assert_eq!(patch.address_of(TileId(0)).unwrap(), Vec::<u16>::new());
}

#[test]
fn saturate_vertex_local_growth() {
    let mut patch = TessellationPatch::grow_layers(params(5, 4), 2).unwrap();
    let boundary_v = (0..patch.vertex_count())
        .map(|v| VertexId(v as u32))
        .find(|&v| !patch.is_interior_vertex(v).unwrap())
        .unwrap();
    let before = patch.tile_count();
    patch.saturate_vertex(boundary_v).unwrap();
    assert!(patch.is_interior_vertex(boundary_v).unwrap());
    assert!(patch.tile_count() > before);
    // Layer growth is now refused.
    assert!(matches!(
        patch.extend_to_layer(4),
        Err(Error::NotLayerResumable)
    ));
}

#[test]
fn io_roundtrip_bit_exact() {
    for (p, q) in [(5, 4), (7, 3), (3, 7)] {
        let patch = TessellationPatch::grow_layers(params(p, q), 3).unwrap();
        let text = serialize(&patch);
        let loaded = TessellationPatch::read_text(text.as_bytes()).unwrap();
        assert_eq!(text, serialize(&loaded), "{{{p},{q}}}");
        assert_eq!(loaded.tile_count(), patch.tile_count());
        assert_eq!(loaded.layers_grown(), patch.layers_grown());
        // Queries agree.
        for t in 0..patch.tile_count() {
            let t = TileId(t as u32);
            assert_eq!(patch.tile_neighbors(t).unwrap(), loaded.tile_neighbors(t).unwrap());
        }
        // Loaded patches refuse deterministic layer growth but allow local growth.
        let mut loaded = loaded;
        assert!(matches!(loaded.extend_to_layer(4), Err(Error::NotLayerResumable)));
        let v = (0..loaded.vertex_count())
            .map(|v| VertexId(v as u32))
            .find(|&v| !loaded.is_interior_vertex(v).unwrap())
            .unwrap();
        loaded.saturate_vertex(v).unwrap();
    }
}
