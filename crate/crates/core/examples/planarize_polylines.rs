//! Planarize a small polyline drawing exactly and list its crossings.

use celldraw::geometry::{format_rational, rat, GeoBuilder, Point};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut g = GeoBuilder::new();
    let a = g.vertex("a", Point::from_ints(0, 0));
    let b = g.vertex("b", Point::from_ints(6, 0));
    let c = g.vertex("c", Point::from_ints(3, 5));
    let d = g.vertex("d", Point::from_ints(3, -2));
    g.edge_named("ab", a, b, vec![]);
    g.edge_named("cd", c, d, vec![]);
    // A zig-zag from a to c that crosses cd twice.
    g.edge_named("ac", a, c, vec![Point::new(rat(7, 2), rat(1, 1)), Point::new(rat(5, 2), rat(3, 1))]);
    let geo = g.finish();

    for x in geo.intersect_all()? {
        println!("{x:?}");
    }
    let pl = geo.planarize_with_positions()?;
    let drawing = &pl.drawing;
    println!("n = {}, |E| = {}, crossings = {}", drawing.vertex_count(), drawing.edge_count(), drawing.crossing_count());
    for x in drawing.crossings() {
        let (e, f) = drawing.crossing_edges(x);
        let p = &pl.node_pos[x.0];
        println!(
            "{} x {} at ({}, {})",
            drawing.edge(e).label,
            drawing.edge(f).label,
            format_rational(&p.x),
            format_rational(&p.y)
        );
    }
    Ok(())
}
