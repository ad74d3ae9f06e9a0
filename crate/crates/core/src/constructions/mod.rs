//! Parametric generators for the dense drawings, each checked against its contract before returning.

mod complete;
mod cylinder;
mod doubling;
mod fourone;
mod gadget;
mod hexgrid;
mod polar;
mod surgery;

use thiserror::Error;

use crate::cells::{census, CellError, CellType};
use crate::geometry::{GeometricDrawing, GeometryError};
use crate::map::{Drawing, MapError};
use crate::properties::{is_non_homotopic, is_quasiplanar, is_simple_drawing};

pub use complete::{convex_5_2_free, wedge_complete};
pub use cylinder::{cylinder_quasiplanar, cylinder_threezero_free};
pub use doubling::{doubled_triangulation, geodesic_base, triangulation_from_faces, BaseTriangulation};
pub use fourone::fourone_free;
pub use gadget::crossing_gadget_rewrite;
pub use hexgrid::hexgrid_cylinder;

#[derive(Debug, Error)]
pub enum ConstructionError {
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("post-condition violated: {0}")]
    PostCondition(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Cells(#[from] CellError),
}

/// A generated drawing, with exact geometry when the generator works geometrically.
#[derive(Debug, Clone)]
pub struct Construction {
    pub name: String,
    pub drawing: Drawing,
    pub geometry: Option<GeometricDrawing>,
}

impl Construction {
    fn new(name: impl Into<String>, drawing: Drawing, geometry: Option<GeometricDrawing>) -> Self {
        Construction { name: name.into(), drawing, geometry }
    }
}

fn ty(word: &str) -> CellType {
    CellType::from_word(word).expect("static word")
}

fn post(ok: bool, what: impl FnOnce() -> String) -> Result<(), ConstructionError> {
    if ok {
        Ok(())
    } else {
        Err(ConstructionError::PostCondition(what()))
    }
}

fn post_edges(d: &Drawing, expected: usize) -> Result<(), ConstructionError> {
    post(d.edge_count() == expected, || format!("expected {expected} edges, found {}", d.edge_count()))
}

fn post_vertices(d: &Drawing, expected: usize) -> Result<(), ConstructionError> {
    post(d.vertex_count() == expected, || format!("expected {expected} vertices, found {}", d.vertex_count()))
}

fn post_simple(d: &Drawing) -> Result<(), ConstructionError> {
    is_simple_drawing(d).map_err(|w| ConstructionError::PostCondition(format!("not simple: {}", w.describe(d))))
}

fn post_non_homotopic(d: &Drawing) -> Result<(), ConstructionError> {
    is_non_homotopic(d)
        .map_err(|w| ConstructionError::PostCondition(format!("not non-homotopic: {}", w.describe(d))))
}

fn post_quasiplanar(d: &Drawing) -> Result<(), ConstructionError> {
    is_quasiplanar(d).map_err(|w| ConstructionError::PostCondition(format!("not quasiplanar: {}", w.describe(d))))
}

fn post_free(d: &Drawing, words: &[&str]) -> Result<(), ConstructionError> {
    let c = census(d)?;
    for w in words {
        let t = ty(w);
        if let Some(cell) = c.first_of_type(&t) {
            let labels: Vec<&str> = cell.nodes(d).map(|n| d.map().node(n).label.as_str()).collect();
            return Err(ConstructionError::PostCondition(format!(
                "{} cells of forbidden type {w}, one bounded by {}",
                c.count_type(&t),
                labels.join(" ")
            )));
        }
    }
    Ok(())
}

/// No two edges join the same pair of vertices.
fn post_no_parallel(d: &Drawing) -> Result<(), ConstructionError> {
    let mut pairs: Vec<_> =
        d.edges().iter().map(|e| if e.tail < e.head { (e.tail, e.head) } else { (e.head, e.tail) }).collect();
    pairs.sort();
    post(pairs.windows(2).all(|w| w[0] != w[1]), || "parallel edges present".into())
}

/// Every pair of vertices is joined by exactly one edge.
fn post_complete(d: &Drawing) -> Result<(), ConstructionError> {
    let n = d.vertex_count();
    post_edges(d, n * (n - 1) / 2)?;
    post_no_parallel(d)
}
