//! Doubled icosahedra and the exact edge-counting chain for 5_0-free drawings.

use celldraw::cells::CellType;
use celldraw::constructions::{doubled_triangulation, geodesic_base};
use celldraw::properties::{is_celltype_free, is_non_homotopic};
use celldraw::verifiers::{verify_fivezero_chain, verify_vertex_cell_identity};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let level = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(1);
    let base = geodesic_base(level)?;

    let single = doubled_triangulation(&base, false)?;
    println!("{}: n = {}, |E| = {}", single.name, single.drawing.vertex_count(), single.drawing.edge_count());
    print!("{}", verify_vertex_cell_identity(&single.drawing)?);
    print!("{}", verify_fivezero_chain(&single.drawing)?);

    // The multigraph version trades 5_0-freeness for twice as many doubling edges.
    let multi = doubled_triangulation(&base, true)?;
    let d = &multi.drawing;
    println!("{}: n = {}, |E| = {} (9n - 18 = {})", multi.name, d.vertex_count(), d.edge_count(), 9 * d.vertex_count() - 18);
    println!("  non-homotopic: {}", is_non_homotopic(d).is_ok());
    println!("  XXXX-free: {}", is_celltype_free(d, &CellType::from_word("XXXX")?)?.is_ok());
    print!("{}", verify_vertex_cell_identity(d)?);
    Ok(())
}
