//! Save a drawing in both document formats, load it back and render shaded SVG figures.

use celldraw::cells::CellType;
use celldraw::constructions::{doubled_triangulation, geodesic_base, wedge_complete};
use celldraw::io::{load_path, render_svg, save_path, Document, Layout, RenderOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::temp_dir().join("celldraw-example");
    std::fs::create_dir_all(&dir)?;

    let wedge = wedge_complete(7)?;
    let geo_path = dir.join("wedge.geo.json");
    save_path(&Document::Geo(wedge.geometry.expect("wedge drawings are geometric")), &geo_path)?;
    let doc = load_path(&geo_path)?;
    let svg = render_svg(&doc, &RenderOptions { layout: Layout::Given, shade: Some(CellType::from_word("VXX")?) })?;
    std::fs::write(dir.join("wedge.svg"), &svg.document)?;
    println!("wedge: {} shaded VXX cells", svg.shaded);

    let doubled = doubled_triangulation(&geodesic_base(1)?, false)?;
    let map_path = dir.join("doubled.map.json");
    save_path(&Document::Map(doubled.drawing), &map_path)?;
    let doc = load_path(&map_path)?;
    let svg = render_svg(&doc, &RenderOptions { layout: Layout::Embed, shade: Some(CellType::from_word("XXX")?) })?;
    std::fs::write(dir.join("doubled.svg"), &svg.document)?;
    println!("doubled icosahedron: {} shaded XXX cells", svg.shaded);
    println!("files written to {}", dir.display());
    Ok(())
}
