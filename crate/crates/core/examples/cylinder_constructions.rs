//! Edge counts of the cylinder constructions against the applicable density bounds.

use celldraw::constructions::{cylinder_quasiplanar, cylinder_threezero_free, hexgrid_cylinder};
use celldraw::verifiers::density_report;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for c in [cylinder_quasiplanar(14)?, cylinder_threezero_free(14)?, hexgrid_cylinder(2)?] {
        let r = density_report(&c.drawing);
        println!("{}: n = {}, |E| = {}, crossings = {}", c.name, r.n, r.edges, r.crossings);
        for row in &r.rows {
            println!("  {row}");
        }
    }
    Ok(())
}
