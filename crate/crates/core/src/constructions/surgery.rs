use std::collections::{HashMap, VecDeque};

use super::ConstructionError;
use crate::map::{DartId, Drawing, MapBuilder, NodeId, NodeKind};

/// Adds an edge from `a` to `b` along a shortest route in the dual, crossing at least one edge and
/// never an edge incident to `a` or `b`.
pub(crate) fn route_edge(d: &Drawing, a: NodeId, b: NodeId, label: &str) -> Result<Drawing, ConstructionError> {
    let map = d.map();
    let (walks, face_of) = map.face_index();
    let allowed = |x: DartId| {
        let e = d.edge(d.edge_of(x).0);
        e.tail != a && e.tail != b && e.head != a && e.head != b
    };
    let corner = |f: usize, v: NodeId| walks[f].iter().copied().find(|&x| map.origin(x) == v);

    // States are (face, whether an edge has been crossed yet).
    let n = walks.len();
    let mut prev: Vec<Option<(DartId, usize)>> = vec![None; 2 * n];
    let mut seen = vec![false; 2 * n];
    let mut queue = VecDeque::new();
    for f in 0..n {
        if corner(f, a).is_some() {
            seen[f] = true;
            queue.push_back(f);
        }
    }
    let mut goal = None;
    while let Some(state) = queue.pop_front() {
        let f = state % n;
        if state >= n && corner(f, b).is_some() {
            goal = Some(state);
            break;
        }
        for &x in &walks[f] {
            let next = face_of[map.twin(x).0] + n;
            if !seen[next] && allowed(x) {
                seen[next] = true;
                prev[next] = Some((x, state));
                queue.push_back(next);
            }
        }
    }
    let goal = goal.ok_or_else(|| ConstructionError::PostCondition(format!("no route for edge {label}")))?;
    let mut crossed = Vec::new();
    let mut state = goal;
    while let Some((x, from)) = prev[state] {
        crossed.push(x);
        state = from;
    }
    crossed.reverse();
    let (f, goal) = (state % n, goal % n);
    let start = corner(f, a).expect("start face has a corner at a");
    let end = corner(goal, b).expect("goal face has a corner at b");
    insert_edge(d, a, b, label, &crossed, start, end)
}

/// Rebuilds `d` with a new edge `a -> b` that crosses the segments of `crossed` in order.
/// `x` in `crossed` is traversed from the face on its right to the face on its left. The new edge
/// leaves `a` just before dart `start` in the rotation and enters `b` just before `end`.
fn insert_edge(
    d: &Drawing,
    a: NodeId,
    b: NodeId,
    label: &str,
    crossed: &[DartId],
    start: DartId,
    end: DartId,
) -> Result<Drawing, ConstructionError> {
    let map = d.map();
    let mut nb = MapBuilder::new();
    for n in map.nodes() {
        let id = nb.add_node(n.kind);
        nb.set_label(id, n.label.clone());
    }
    let split: HashMap<DartId, usize> = crossed.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let mut cross_nodes = Vec::with_capacity(crossed.len());
    for i in 0..crossed.len() {
        let c = nb.add_node(NodeKind::Crossing);
        nb.set_label(c, format!("{label}.x{i}"));
        cross_nodes.push(c);
    }
    // first_piece[old] leaves origin(old); pieces[old] lists the new darts that replace it.
    let mut first_piece = vec![DartId(0); map.dart_count()];
    let mut pieces: Vec<Vec<DartId>> = vec![Vec::new(); map.dart_count()];
    let mut halves: Vec<(DartId, DartId)> = vec![(DartId(0), DartId(0)); crossed.len()];
    for x in (0..map.dart_count()).map(DartId) {
        let t = map.twin(x);
        if t.0 < x.0 {
            continue;
        }
        let hit = split.get(&x).map(|&i| (i, false)).or_else(|| split.get(&t).map(|&i| (i, true)));
        match hit {
            None => {
                let nd = nb.add_segment(map.origin(x), map.target(x));
                first_piece[x.0] = nd;
                first_piece[t.0] = nb.twin(nd);
                pieces[x.0] = vec![nd];
                pieces[t.0] = vec![nb.twin(nd)];
            }
            Some((i, flipped)) => {
                let (along, back) = if flipped { (t, x) } else { (x, t) };
                let c = cross_nodes[i];
                let p1 = nb.add_segment(map.origin(along), c);
                let p2 = nb.add_segment(c, map.target(along));
                first_piece[along.0] = p1;
                first_piece[back.0] = nb.twin(p2);
                pieces[along.0] = vec![p1, p2];
                pieces[back.0] = vec![nb.twin(p2), nb.twin(p1)];
                halves[i] = (p2, nb.twin(p1));
            }
        }
    }
    let mut chain = Vec::with_capacity(crossed.len() + 1);
    let mut at = a;
    for &c in cross_nodes.iter().chain(std::iter::once(&b)) {
        chain.push(nb.add_segment(at, c));
        at = c;
    }
    for n in map.nodes().iter().enumerate().map(|(i, _)| NodeId(i)) {
        let mut rot: Vec<DartId> = Vec::with_capacity(map.degree(n) + 1);
        for &x in map.rotation(n) {
            if n == a && x == start {
                rot.push(chain[0]);
            }
            if n == b && x == end {
                rot.push(nb.twin(*chain.last().expect("nonempty chain")));
            }
            rot.push(first_piece[x.0]);
        }
        nb.set_rotation(n, rot);
    }
    for (i, &c) in cross_nodes.iter().enumerate() {
        let (to_target, to_origin) = halves[i];
        nb.set_rotation(c, vec![to_target, chain[i + 1], to_origin, nb.twin(chain[i])]);
    }
    for e in d.edges() {
        let darts: Vec<DartId> = e.chain.iter().flat_map(|x| pieces[x.0].iter().copied()).collect();
        let id = nb.add_edge(darts);
        nb.set_edge_label(id, e.label.clone());
    }
    let id = nb.add_edge(chain);
    nb.set_edge_label(id, label);
    Ok(nb.build()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{GeoBuilder, Point};
    use crate::properties::is_simple_drawing;

    #[test]
    fn routes_across_a_separating_edge() {
        let mut g = GeoBuilder::new();
        let v0 = g.vertex("v0", Point::from_ints(0, 0));
        let v1 = g.vertex("v1", Point::from_ints(4, 0));
        let v2 = g.vertex("v2", Point::from_ints(2, -2));
        let v3 = g.vertex("v3", Point::from_ints(2, 2));
        g.edge(v2, v3, vec![]);
        g.edge(v0, v2, vec![]);
        g.edge(v1, v3, vec![]);
        let d = g.finish().planarize().unwrap();
        let out = route_edge(&d, NodeId(0), NodeId(1), "new").unwrap();
        assert_eq!(out.crossing_count(), 1);
        assert_eq!(out.edge_count(), 4);
        assert!(is_simple_drawing(&out).is_ok());
        assert_eq!(out.trace_faces().len(), 3);
    }
}
