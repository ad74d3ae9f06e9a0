//! Style predicates and their witnesses on constructed drawings.

use celldraw::cells::CellType;
use celldraw::constructions::{cylinder_quasiplanar, doubled_triangulation, geodesic_base};
use celldraw::map::Drawing;
use celldraw::properties::{is_celltype_free, is_non_homotopic, is_quasiplanar, is_simple_drawing, Check};

fn show(name: &str, d: &Drawing, check: Check) {
    match check {
        Ok(()) => println!("  {name}: yes"),
        Err(w) => println!("  {name}: no ({}; witness re-checks: {})", w.describe(d), w.revalidate(d)),
    }
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let base = geodesic_base(1)?;
    let drawings = [
        doubled_triangulation(&base, false)?,
        doubled_triangulation(&base, true)?,
        cylinder_quasiplanar(14)?,
    ];
    let xxx = CellType::from_word("XXX")?;
    for c in &drawings {
        let d = &c.drawing;
        println!("{} (n = {}, |E| = {})", c.name, d.vertex_count(), d.edge_count());
        show("simple drawing", d, is_simple_drawing(d));
        show("non-homotopic", d, is_non_homotopic(d));
        show("quasiplanar", d, is_quasiplanar(d));
        show("XXX-free", d, is_celltype_free(d, &xxx)?);
    }
    Ok(())
}
