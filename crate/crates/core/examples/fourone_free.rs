//! The VXX-free family on three copies of a circulant graph, with its edge density.

use celldraw::cells::{census, CellType};
use celldraw::constructions::fourone_free;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let k = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(3);
    let c = fourone_free(k)?;
    let d = &c.drawing;
    let (n, e) = (d.vertex_count(), d.edge_count());
    println!("{}: n = {n}, |E| = {e}, crossings = {}", c.name, d.crossing_count());
    println!("|E| / (n^2 / 18) = {:.3}", e as f64 * 18.0 / (n * n) as f64);
    let vxx = CellType::from_word("VXX")?;
    println!("VXX cells: {}", census(d)?.count_type(&vxx));
    Ok(())
}
