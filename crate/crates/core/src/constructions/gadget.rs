use super::{post, Construction, ConstructionError};
use crate::cells::census;
use crate::map::{DartId, Drawing, MapBuilder, NodeId, NodeKind};

/// Order in which the second strand visits the nine gadget nodes; the first strand visits them in
/// index order.
const MEANDER: [usize; 9] = [2, 1, 0, 5, 4, 3, 8, 7, 6];
const SIZE: usize = 9;

#[derive(Clone, Copy)]
enum Slot {
    Right = 0,
    Up = 1,
    Left = 2,
    Down = 3,
}

struct Gadget {
    nodes: [NodeId; SIZE],
    /// `straight[i]` runs from node `i` to node `i + 1`.
    straight: Vec<DartId>,
    /// `meander[t]` runs from visit `t` to visit `t + 1`.
    meander: Vec<DartId>,
}

/// Replaces every crossing by a nine-crossing sub-map in which each cell touching a crossing has
/// size 2 or at least 6. Vertices and edges are kept; each edge gains the gadget crossings.
pub fn crossing_gadget_rewrite(d: &Drawing) -> Result<Construction, ConstructionError> {
    if d.crossing_count() == 0 {
        return Ok(Construction::new("gadget", d.clone(), None));
    }
    let map = d.map();
    let c = census(d)?;
    for cell in &c.cells {
        if cell.x > 0 && (cell.size < 3 || (cell.v, cell.x) == (1, 1)) {
            let labels: Vec<&str> = cell.nodes(d).map(|n| map.node(n).label.as_str()).collect();
            return Err(ConstructionError::DegenerateInput(format!(
                "cell {} of type {} touches a crossing",
                labels.join(" "),
                cell.cell_type
            )));
        }
    }

    let mut b = MapBuilder::new();
    let mut new_node = vec![None; map.node_count()];
    let mut gadget_of: Vec<Option<usize>> = vec![None; map.node_count()];
    let mut gadgets: Vec<Gadget> = Vec::new();
    for (i, node) in map.nodes().iter().enumerate() {
        match node.kind {
            NodeKind::Vertex => {
                let v = b.add_node(NodeKind::Vertex);
                b.set_label(v, node.label.clone());
                new_node[i] = Some(v);
            }
            NodeKind::Crossing => {
                let nodes: [NodeId; SIZE] = std::array::from_fn(|p| {
                    let y = b.add_node(NodeKind::Crossing);
                    b.set_label(y, format!("{}.{p}", node.label));
                    y
                });
                let straight = (0..SIZE - 1).map(|p| b.add_segment(nodes[p], nodes[p + 1])).collect();
                let meander =
                    (0..SIZE - 1).map(|t| b.add_segment(nodes[MEANDER[t]], nodes[MEANDER[t + 1]])).collect();
                gadget_of[i] = Some(gadgets.len());
                gadgets.push(Gadget { nodes, straight, meander });
            }
        }
    }

    // Where dart `x` leaves its origin in the new map: node and slot.
    let port = |x: DartId| -> (NodeId, Option<Slot>) {
        let o = map.origin(x);
        match gadget_of[o.0] {
            None => (new_node[o.0].expect("vertex copied"), None),
            Some(g) => {
                let k = map.rotation(o).iter().position(|&y| y == x).expect("dart in rotation");
                let nodes = &gadgets[g].nodes;
                match k {
                    0 => (nodes[0], Some(Slot::Left)),
                    1 => (nodes[MEANDER[0]], Some(Slot::Down)),
                    2 => (nodes[SIZE - 1], Some(Slot::Right)),
                    _ => (nodes[MEANDER[SIZE - 1]], Some(Slot::Up)),
                }
            }
        }
    };

    let mut seg = vec![DartId(0); map.dart_count()];
    let total = gadgets.len() * SIZE + new_node.iter().flatten().count();
    let mut slots: Vec<[Option<DartId>; 4]> = vec![[None; 4]; total];
    for x in (0..map.dart_count()).map(DartId) {
        let t = map.twin(x);
        if t.0 < x.0 {
            continue;
        }
        let (from, fs) = port(x);
        let (to, ts) = port(t);
        let nd = b.add_segment(from, to);
        seg[x.0] = nd;
        seg[t.0] = b.twin(nd);
        if let Some(s) = fs {
            slots[from.0][s as usize] = Some(nd);
        }
        if let Some(s) = ts {
            slots[to.0][s as usize] = Some(b.twin(nd));
        }
    }
    for g in &gadgets {
        for (p, &dart) in g.straight.iter().enumerate() {
            slots[g.nodes[p].0][Slot::Right as usize] = Some(dart);
            slots[g.nodes[p + 1].0][Slot::Left as usize] = Some(b.twin(dart));
        }
        for (t, &dart) in g.meander.iter().enumerate() {
            // Visit t (0-based) leaves upward when t is even; the next visit is entered from the same side.
            let side = if t % 2 == 0 { Slot::Up } else { Slot::Down };
            slots[g.nodes[MEANDER[t]].0][side as usize] = Some(dart);
            slots[g.nodes[MEANDER[t + 1]].0][side as usize] = Some(b.twin(dart));
        }
        for &y in &g.nodes {
            let rot: Vec<DartId> = slots[y.0].iter().map(|s| s.expect("gadget slot filled")).collect();
            b.set_rotation(y, rot);
        }
    }
    for (i, node) in map.nodes().iter().enumerate() {
        if node.kind == NodeKind::Vertex {
            let rot = map.rotation(NodeId(i)).iter().map(|x| seg[x.0]).collect();
            b.set_rotation(new_node[i].expect("vertex copied"), rot);
        }
    }

    for e in d.edges() {
        let mut chain = Vec::new();
        for (step, &x) in e.chain.iter().enumerate() {
            chain.push(seg[x.0]);
            if step + 1 == e.chain.len() {
                break;
            }
            let target = map.target(x);
            let g = &gadgets[gadget_of[target.0].expect("interior node is a crossing")];
            let k = map.rotation(target).iter().position(|&y| y == map.twin(x)).expect("dart in rotation");
            match k {
                0 => chain.extend(g.straight.iter().copied()),
                2 => chain.extend(g.straight.iter().rev().map(|&y| b.twin(y))),
                1 => chain.extend(g.meander.iter().copied()),
                _ => chain.extend(g.meander.iter().rev().map(|&y| b.twin(y))),
            }
        }
        let id = b.add_edge(chain);
        b.set_edge_label(id, e.label.clone());
    }
    let out = b.build()?;

    post(out.vertex_count() == d.vertex_count() && out.edge_count() == d.edge_count(), || {
        "vertex or edge count changed".into()
    })?;
    for (e, f) in d.edges().iter().zip(out.edges()) {
        let same = map.node(e.tail).label == out.map().node(f.tail).label
            && map.node(e.head).label == out.map().node(f.head).label;
        post(same, || format!("edge {} changed endpoints", e.label))?;
    }
    let oc = census(&out)?;
    for cell in &oc.cells {
        post(cell.x == 0 || cell.size == 2 || cell.size >= 6, || {
            format!("crossing-incident cell of size {} ({})", cell.size, cell.cell_type)
        })?;
    }
    Ok(Construction::new("gadget", out, None))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cells::parse_type;
    use crate::geometry::{GeoBuilder, Point};
    use crate::properties::is_non_homotopic;

    fn convex_k5() -> Drawing {
        let pts = [(0, 0), (4, -1), (6, 3), (3, 6), (-1, 4)];
        let mut g = GeoBuilder::new();
        let vs: Vec<usize> =
            pts.iter().enumerate().map(|(i, &(x, y))| g.vertex(format!("v{i}"), Point::from_ints(x, y))).collect();
        for i in 0..5 {
            for j in i + 1..5 {
                g.edge(vs[i], vs[j], vec![]);
            }
        }
        g.finish().planarize().unwrap()
    }

    #[test]
    fn single_crossing_gadget() {
        let mut g = GeoBuilder::new();
        let a = g.vertex("a", Point::from_ints(0, 0));
        let b = g.vertex("b", Point::from_ints(2, 2));
        let c = g.vertex("c", Point::from_ints(2, 0));
        let e = g.vertex("d", Point::from_ints(0, 2));
        g.edge(a, b, vec![]);
        g.edge(c, e, vec![]);
        // Close the four quadrants so every crossing-incident cell has vertices.
        g.edge(a, c, vec![]);
        g.edge(c, b, vec![]);
        g.edge(b, e, vec![]);
        g.edge(e, a, vec![]);
        let d = g.finish().planarize().unwrap();
        let out = crossing_gadget_rewrite(&d).unwrap().drawing;
        assert_eq!(out.crossing_count(), 9);
        let c = census(&out).unwrap();
        assert_eq!(c.of_size(2).len(), 6);
        assert_eq!(c.count_type(&parse_type("XXXXXX").unwrap()), 2);
        assert_eq!(c.count_type(&parse_type("VVXXX").unwrap()), 4);
        assert!(is_non_homotopic(&out).is_err());
    }

    #[test]
    fn convex_k5_has_only_small_lenses_or_large_cells() {
        let out = crossing_gadget_rewrite(&convex_k5()).unwrap().drawing;
        let c = census(&out).unwrap();
        for w in ["XXX", "XXXX", "VXX", "XXXXX"] {
            assert_eq!(c.count_type(&parse_type(w).unwrap()), 0, "{w}");
        }
        assert_eq!(out.crossing_count(), 45);
        assert_eq!(c.of_size(2).len(), 30);
    }

    #[test]
    fn crossing_free_is_identity_and_vx_is_rejected() {
        let mut g = GeoBuilder::new();
        let a = g.vertex("a", Point::from_ints(0, 0));
        let b = g.vertex("b", Point::from_ints(4, 0));
        let c = g.vertex("c", Point::from_ints(1, 3));
        g.edge(a, b, vec![]);
        g.edge(b, c, vec![]);
        g.edge(c, a, vec![]);
        let tri = g.finish().planarize().unwrap();
        let out = crossing_gadget_rewrite(&tri).unwrap().drawing;
        assert_eq!(out.to_raw(), tri.to_raw());

        let mut g = GeoBuilder::new();
        let a = g.vertex("a", Point::from_ints(0, 0));
        let b = g.vertex("b", Point::from_ints(4, 0));
        let e = g.vertex("d", Point::from_ints(3, -1));
        g.edge(a, b, vec![]);
        g.edge(a, e, vec![Point::from_ints(1, 1)]);
        let d = g.finish().planarize().unwrap();
        assert!(matches!(crossing_gadget_rewrite(&d), Err(ConstructionError::DegenerateInput(_))));
    }
}
