mod common;

use celldraw::cells::census;
use celldraw::geometry::{format_rational, parse_rational, rat, GeoEdge, GeoVertex, GeometricDrawing, Point};
use celldraw::io::{geo_to_string, load_str, map_to_string, Document};
use celldraw::properties::{enumerate_lenses, is_non_homotopic, is_simple_drawing};
use celldraw::verifiers::verify_vertex_cell_identity;
use proptest::prelude::*;

fn translated(g: &GeometricDrawing, dx: i64, dy: i64) -> GeometricDrawing {
    let shift = Point::from_ints(dx, dy);
    GeometricDrawing {
        vertices: g.vertices.iter().map(|v| GeoVertex { id: v.id.clone(), pos: v.pos.add(&shift) }).collect(),
        edges: g
            .edges
            .iter()
            .map(|e| GeoEdge { bends: e.bends.iter().map(|p| p.add(&shift)).collect(), ..e.clone() })
            .collect(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rationals_round_trip(n in -1_000_000i64..1_000_000, d in 1i64..10_000) {
        let r = rat(n, d);
        prop_assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
    }

    #[test]
    fn documents_round_trip(seed in any::<u64>()) {
        let (geo, d) = common::random_drawing(&mut common::rng(seed), 6);
        let text = geo_to_string(&geo);
        let Ok(Document::Geo(back)) = load_str(&text) else { panic!("geometry document did not load") };
        prop_assert_eq!(geo_to_string(&back), text);
        let map = map_to_string(&d);
        let again = load_str(&map).unwrap().into_drawing().unwrap();
        prop_assert_eq!(map_to_string(&again), map);
        prop_assert_eq!(census(&again).unwrap().by_type, census(&d).unwrap().by_type);
    }

    #[test]
    fn cell_sizes_follow_from_counts(seed in any::<u64>()) {
        let (_, d) = common::random_drawing(&mut common::rng(seed), 6);
        prop_assert!(verify_vertex_cell_identity(&d).unwrap().pass());
        let c = census(&d).unwrap();
        // Every segment side is one traversal, and every vertex corner is counted once per cell.
        let segments = d.map().segment_count();
        let corners: usize = d.vertices().map(|v| d.map().degree(v)).sum();
        prop_assert_eq!(c.cells.iter().map(|x| x.size).sum::<usize>(), 2 * segments + corners);
    }

    #[test]
    fn translation_preserves_combinatorics(seed in any::<u64>(), dx in -50i64..50, dy in -50i64..50) {
        let (geo, d) = common::random_drawing(&mut common::rng(seed), 6);
        let moved = translated(&geo, dx, dy).planarize().unwrap();
        prop_assert_eq!(map_to_string(&moved), map_to_string(&d));
    }

    #[test]
    fn simple_drawings_have_no_lenses(seed in any::<u64>()) {
        let (_, d) = common::random_drawing(&mut common::rng(seed), 6);
        if is_simple_drawing(&d).is_ok() {
            prop_assert!(enumerate_lenses(&d).is_empty());
            prop_assert!(is_non_homotopic(&d).is_ok());
        }
    }
}
