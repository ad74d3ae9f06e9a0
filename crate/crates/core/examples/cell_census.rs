//! Census of the cells of a complete graph drawn as a wedge of a convex polygon.

use celldraw::cells::census;
use celldraw::constructions::wedge_complete;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(8);
    let c = census(&wedge_complete(n)?.drawing)?;
    println!("n = {}, |E| = {}, crossings = {}, cells = {}", c.n, c.edge_count, c.crossing_count, c.cells.len());
    for (t, count) in &c.by_type {
        println!("{:>10} ({}): {count}", t.word(), t.shorthand());
    }
    let total: i64 = c.cells.iter().map(|cell| cell.size as i64 - 4).sum();
    println!("sum of (size - 4) = {total}, 4(n - 2) = {}", 4 * (c.n as i64 - 2));
    Ok(())
}
