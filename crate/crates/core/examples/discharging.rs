//! Exact discharging on XXX-free drawings, with the vertex of smallest final charge.

use celldraw::constructions::{cylinder_threezero_free, hexgrid_cylinder};
use celldraw::geometry::format_rational;
use celldraw::verifiers::{run_discharging, DischargeMode};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let runs = [
        (hexgrid_cylinder(1)?, DischargeMode::Simple),
        (cylinder_threezero_free(14)?, DischargeMode::NonHomotopic),
    ];
    for (c, mode) in runs {
        let (ledger, report) = run_discharging(&c.drawing, mode)?;
        println!("{} with threshold {}", c.name, format_rational(&mode.threshold()));
        print!("{report}");
        if let Some((v, ch)) = ledger.min_ch3() {
            println!("  smallest charge {} at {}", format_rational(ch), c.drawing.map().node(*v).label);
        }
    }
    Ok(())
}
