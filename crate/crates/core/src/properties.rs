//! Drawing-style predicates with re-checkable witnesses.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use crate::cells::{census, CellError, CellType};
use crate::map::{DartId, Drawing, EdgeId, NodeId};

/// Evidence that a predicate fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// Two edges with two or more common points.
    CommonPoints { edges: (EdgeId, EdgeId), points: Vec<NodeId> },
    EmptyLens(LensReport),
    /// Three pairwise crossing edges.
    CrossingTriple([EdgeId; 3]),
    /// A cell of a forbidden type, given by its face walk.
    Cell { cell_type: CellType, walk: Vec<DartId> },
}

/// `Ok(())` when the property holds, otherwise the witness.
pub type Check = Result<(), Witness>;

impl Witness {
    /// Recomputes the claim behind the witness directly from the drawing.
    pub fn revalidate(&self, d: &Drawing) -> bool {
        match self {
            Witness::CommonPoints { edges, points } => {
                points.len() >= 2 && common_points(d, edges.0, edges.1) == *points
            }
            Witness::EmptyLens(report) => {
                report.is_empty()
                    && lens_for(d, report.edges, report.anchors).is_some_and(|r| r == *report)
            }
            Witness::CrossingTriple([a, b, c]) => {
                let crosses = |x: EdgeId, y: EdgeId| {
                    d.crossings().any(|n| {
                        let (p, q) = d.crossing_edges(n);
                        (p, q) == (x, y) || (p, q) == (y, x)
                    })
                };
                crosses(*a, *b) && crosses(*b, *c) && crosses(*a, *c)
            }
            Witness::Cell { cell_type, walk } => d.trace_faces().into_iter().any(|w| {
                same_cycle(&w, walk) && crate::cells::classify_walk(d, w).cell_type == *cell_type
            }),
        }
    }

    pub fn describe(&self, d: &Drawing) -> String {
        let e = |id: EdgeId| d.edge(id).label.clone();
        let n = |id: NodeId| d.map().node(id).label.clone();
        match self {
            Witness::CommonPoints { edges, points } => format!(
                "edges {} and {} share {} points: {}",
                e(edges.0),
                e(edges.1),
                points.len(),
                points.iter().map(|&p| n(p)).collect::<Vec<_>>().join(", ")
            ),
            Witness::EmptyLens(r) => format!(
                "empty lens of edges {} and {} between {} and {}",
                e(r.edges.0),
                e(r.edges.1),
                n(r.anchors.0),
                n(r.anchors.1)
            ),
            Witness::CrossingTriple(t) => {
                format!("edges {}, {}, {} cross pairwise", e(t[0]), e(t[1]), e(t[2]))
            }
            Witness::Cell { cell_type, walk } => format!(
                "cell of type {} ({}) at nodes {}",
                cell_type,
                cell_type.shorthand(),
                walk.iter().map(|&x| n(d.map().origin(x))).collect::<Vec<_>>().join(" ")
            ),
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

fn same_cycle(a: &[DartId], b: &[DartId]) -> bool {
    a.len() == b.len() && a.iter().position(|x| Some(x) == b.first()).is_some_and(|s| {
        a[s..].iter().chain(&a[..s]).eq(b.iter())
    })
}

/// Shared endpoints and mutual crossings of two edges, sorted.
pub fn common_points(d: &Drawing, a: EdgeId, b: EdgeId) -> Vec<NodeId> {
    let ea = d.edge(a);
    let eb = d.edge(b);
    let mut out = BTreeSet::new();
    for v in [ea.tail, ea.head] {
        if v == eb.tail || v == eb.head {
            out.insert(v);
        }
    }
    let on_b: HashSet<NodeId> = d.edge_nodes(b).into_iter().collect();
    for n in d.edge_nodes(a) {
        if !d.is_vertex(n) && on_b.contains(&n) {
            out.insert(n);
        }
    }
    out.into_iter().collect()
}

/// Common points of every edge pair that has at least one.
fn pair_points(d: &Drawing) -> BTreeMap<(EdgeId, EdgeId), Vec<NodeId>> {
    let mut pairs: BTreeMap<(EdgeId, EdgeId), Vec<NodeId>> = BTreeMap::new();
    let key = |a: EdgeId, b: EdgeId| if a < b { (a, b) } else { (b, a) };
    for x in d.crossings() {
        let (a, b) = d.crossing_edges(x);
        pairs.entry(key(a, b)).or_default().push(x);
    }
    let mut at: Vec<Vec<EdgeId>> = vec![Vec::new(); d.map().node_count()];
    for (i, e) in d.edges().iter().enumerate() {
        at[e.tail.0].push(EdgeId(i));
        at[e.head.0].push(EdgeId(i));
    }
    for (v, list) in at.iter().enumerate() {
        for i in 0..list.len() {
            for j in i + 1..list.len() {
                pairs.entry(key(list[i], list[j])).or_default().push(NodeId(v));
            }
        }
    }
    for pts in pairs.values_mut() {
        pts.sort();
    }
    pairs
}

/// Any two edges have at most one point in common.
pub fn is_simple_drawing(d: &Drawing) -> Check {
    match pair_points(d).into_iter().find(|(_, pts)| pts.len() >= 2) {
        None => Ok(()),
        Some((edges, points)) => Err(Witness::CommonPoints { edges, points }),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SideCount {
    pub vertices: usize,
    pub crossings: usize,
}

impl SideCount {
    pub fn nodes(&self) -> usize {
        self.vertices + self.crossings
    }
}

/// A closed curve formed by two edge arcs between common points `p` and `q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LensReport {
    pub edges: (EdgeId, EdgeId),
    pub anchors: (NodeId, NodeId),
    /// Darts of the first edge from `p` to `q`, then of the second edge from `q` to `p`.
    pub arcs: (Vec<DartId>, Vec<DartId>),
    /// Faces on the left of the curve darts, then on the right.
    pub faces: (Vec<usize>, Vec<usize>),
    /// Nodes strictly inside each side.
    pub inside: (SideCount, SideCount),
}

impl LensReport {
    pub fn is_empty(&self) -> bool {
        self.inside.0.nodes() == 0 || self.inside.1.nodes() == 0
    }

    pub fn curve(&self) -> impl Iterator<Item = DartId> + '_ {
        self.arcs.0.iter().chain(&self.arcs.1).copied()
    }
}

/// Darts of edge `e` from node `from` to node `to`.
fn arc(d: &Drawing, e: EdgeId, from: NodeId, to: NodeId) -> Option<Vec<DartId>> {
    let nodes = d.edge_nodes(e);
    let i = nodes.iter().position(|&n| n == from)?;
    let j = nodes.iter().position(|&n| n == to)?;
    let chain = &d.edge(e).chain;
    Some(if i < j {
        chain[i..j].to_vec()
    } else {
        chain[j..i].iter().rev().map(|&x| d.map().twin(x)).collect()
    })
}

/// The lens report of one candidate, or `None` when the arcs are not internally disjoint.
pub fn lens_for(d: &Drawing, edges: (EdgeId, EdgeId), anchors: (NodeId, NodeId)) -> Option<LensReport> {
    let (p, q) = anchors;
    let a1 = arc(d, edges.0, p, q)?;
    let a2 = arc(d, edges.1, q, p)?;
    let map = d.map();
    let interior = |a: &[DartId]| -> HashSet<NodeId> { a[1..].iter().map(|&x| map.origin(x)).collect() };
    let i1 = interior(&a1);
    if interior(&a2).iter().any(|n| i1.contains(n)) {
        return None;
    }
    let (walks, face_of) = map.face_index();
    let mut on_curve = vec![false; map.segment_count()];
    let mut curve_nodes = HashSet::new();
    for &x in a1.iter().chain(&a2) {
        on_curve[x.0 / 2] = true;
        curve_nodes.insert(map.origin(x));
    }
    let flood = |seeds: Vec<usize>| -> Vec<usize> {
        let mut seen = vec![false; walks.len()];
        let mut stack = Vec::new();
        for s in seeds {
            if !seen[s] {
                seen[s] = true;
                stack.push(s);
            }
        }
        while let Some(f) = stack.pop() {
            for &x in &walks[f] {
                if on_curve[x.0 / 2] {
                    continue;
                }
                let g = face_of[map.twin(x).0];
                if !seen[g] {
                    seen[g] = true;
                    stack.push(g);
                }
            }
        }
        (0..walks.len()).filter(|&f| seen[f]).collect()
    };
    let curve: Vec<DartId> = a1.iter().chain(&a2).copied().collect();
    let left = flood(curve.iter().map(|&x| face_of[x.0]).collect());
    let right = flood(curve.iter().map(|&x| face_of[map.twin(x).0]).collect());
    let count = |faces: &[usize]| {
        let mut nodes = BTreeSet::new();
        for &f in faces {
            for &x in &walks[f] {
                let n = map.origin(x);
                if !curve_nodes.contains(&n) {
                    nodes.insert(n);
                }
            }
        }
        let vertices = nodes.iter().filter(|&&n| d.is_vertex(n)).count();
        SideCount { vertices, crossings: nodes.len() - vertices }
    };
    let inside = (count(&left), count(&right));
    Some(LensReport { edges, anchors, arcs: (a1, a2), faces: (left, right), inside })
}

/// Every lens formed by two edges and two of their common points.
pub fn enumerate_lenses(d: &Drawing) -> Vec<LensReport> {
    let mut out = Vec::new();
    for (edges, pts) in pair_points(d) {
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                if let Some(r) = lens_for(d, edges, (pts[i], pts[j])) {
                    out.push(r);
                }
            }
        }
    }
    out
}

/// No lens has an empty side.
pub fn is_non_homotopic(d: &Drawing) -> Check {
    for (edges, pts) in pair_points(d) {
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                if let Some(r) = lens_for(d, edges, (pts[i], pts[j])) {
                    if r.is_empty() {
                        return Err(Witness::EmptyLens(r));
                    }
                }
            }
        }
    }
    Ok(())
}

/// No three edges cross pairwise.
pub fn is_quasiplanar(d: &Drawing) -> Check {
    let mut adj: Vec<BTreeSet<EdgeId>> = vec![BTreeSet::new(); d.edge_count()];
    for x in d.crossings() {
        let (a, b) = d.crossing_edges(x);
        adj[a.0].insert(b);
        adj[b.0].insert(a);
    }
    for a in 0..adj.len() {
        for &b in adj[a].range(EdgeId(a + 1)..) {
            if let Some(&c) = adj[a].range(EdgeId(b.0 + 1)..).find(|c| adj[b.0].contains(c)) {
                return Err(Witness::CrossingTriple([EdgeId(a), b, c]));
            }
        }
    }
    Ok(())
}

/// No cell has type `t`.
pub fn is_celltype_free(d: &Drawing, t: &CellType) -> Result<Check, CellError> {
    let c = census(d)?;
    Ok(match c.first_of_type(t) {
        None => Ok(()),
        Some(cell) => Err(Witness::Cell { cell_type: t.clone(), walk: cell.walk.clone() }),
    })
}

pub fn is_connected_drawing(d: &Drawing) -> bool {
    d.is_connected()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cells::parse_type;
    use crate::geometry::{GeoBuilder, Point};

    fn straight(points: &[(i64, i64)], edges: &[(usize, usize)]) -> Drawing {
        let mut g = GeoBuilder::new();
        for (i, &(x, y)) in points.iter().enumerate() {
            g.vertex(format!("v{i}"), Point::from_ints(x, y));
        }
        for &(a, b) in edges {
            g.edge(a, b, vec![]);
        }
        g.finish().planarize().unwrap()
    }

    fn complete(points: &[(i64, i64)]) -> Drawing {
        let n = points.len();
        let edges: Vec<_> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        straight(points, &edges)
    }

    #[test]
    fn triangle_properties() {
        let d = straight(&[(0, 0), (4, 0), (0, 3)], &[(0, 1), (1, 2), (2, 0)]);
        assert!(is_simple_drawing(&d).is_ok());
        assert!(enumerate_lenses(&d).is_empty());
        assert!(is_celltype_free(&d, &parse_type("XXX").unwrap()).unwrap().is_ok());
        let w = is_celltype_free(&d, &parse_type("VVV").unwrap()).unwrap().unwrap_err();
        assert!(w.revalidate(&d));
    }

    fn parallel_pair(bend: (i64, i64), outer: bool) -> Drawing {
        let mut g = GeoBuilder::new();
        let u = g.vertex("u", Point::from_ints(0, 0));
        let v = g.vertex("v", Point::from_ints(4, 0));
        let w = g.vertex("w", Point::from_ints(2, 6));
        g.edge(u, v, vec![]);
        g.edge(u, v, vec![Point::from_ints(bend.0, bend.1)]);
        g.edge(v, w, vec![]);
        if outer {
            let z = g.vertex("z", Point::from_ints(2, -3));
            g.edge(u, z, vec![]);
        }
        g.finish().planarize().unwrap()
    }

    #[test]
    fn parallel_edges_form_empty_lens() {
        let d = parallel_pair((2, 2), false);
        let w = is_simple_drawing(&d).unwrap_err();
        assert!(matches!(w, Witness::CommonPoints { ref points, .. } if points.len() == 2));
        assert!(w.revalidate(&d));
        let lenses = enumerate_lenses(&d);
        assert_eq!(lenses.len(), 1);
        assert!(lenses[0].is_empty());
        let w = is_non_homotopic(&d).unwrap_err();
        assert!(w.revalidate(&d));
    }

    #[test]
    fn lens_around_vertex_is_not_empty() {
        // One vertex sits between the parallel edges and one outside them.
        let d = parallel_pair((2, 8), true);
        assert!(is_non_homotopic(&parallel_pair((2, 8), false)).is_err());
        let lenses = enumerate_lenses(&d);
        assert_eq!(lenses.len(), 1);
        let r = &lenses[0];
        assert!(!r.is_empty());
        let counts = [r.inside.0.vertices, r.inside.1.vertices];
        assert!(counts.contains(&1));
        assert!(is_non_homotopic(&d).is_ok());
    }

    #[test]
    fn convex_k5_quasiplanar_k6_not() {
        let k5 = complete(&[(0, 0), (4, 0), (6, 3), (2, 6), (-2, 3)]);
        assert!(is_quasiplanar(&k5).is_ok());
        assert_eq!(k5.crossing_count(), 5);
        assert_eq!(k5.trace_faces().len(), 12);
        let k6 = complete(&[(0, 0), (4, 0), (7, 3), (5, 7), (0, 8), (-3, 3)]);
        let w = is_quasiplanar(&k6).unwrap_err();
        let Witness::CrossingTriple(t) = w.clone() else { panic!() };
        let long: Vec<_> = t.iter().map(|&e| {
            let c = k6.edge(e);
            (c.tail.0, c.head.0)
        }).collect();
        assert_eq!(long, vec![(0, 3), (1, 4), (2, 5)]);
        assert!(w.revalidate(&k6));
    }
}
