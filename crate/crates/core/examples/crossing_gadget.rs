//! Replace every crossing of a convex K5 by the crossing gadget and inspect the new cells.

use celldraw::cells::census;
use celldraw::constructions::crossing_gadget_rewrite;
use celldraw::geometry::{GeoBuilder, Point};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut g = GeoBuilder::new();
    let corners = [(0, 0), (4, -1), (6, 3), (3, 6), (-1, 4)];
    let vs: Vec<usize> =
        corners.iter().enumerate().map(|(i, &(x, y))| g.vertex(format!("v{i}"), Point::from_ints(x, y))).collect();
    for i in 0..5 {
        for j in i + 1..5 {
            g.edge(vs[i], vs[j], vec![]);
        }
    }
    let k5 = g.finish().planarize()?;
    let rewritten = crossing_gadget_rewrite(&k5)?;
    for (name, d) in [("convex K5", &k5), (rewritten.name.as_str(), &rewritten.drawing)] {
        let cen = census(d)?;
        println!("{name}: n = {}, |E| = {}, crossings = {}", cen.n, cen.edge_count, cen.crossing_count);
        for (size, count) in cen.size_histogram() {
            println!("  size {size}: {count} cells");
        }
    }
    Ok(())
}
