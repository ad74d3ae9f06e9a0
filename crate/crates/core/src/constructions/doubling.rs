use std::collections::{BTreeSet, HashMap};

use super::{post, post_edges, post_free, post_non_homotopic, post_simple, ty, Construction, ConstructionError};
use crate::cells::census;
use crate::geometry::{rat, GeoBuilder, Point};
use crate::map::{DartId, Drawing, MapBuilder, NodeId, NodeKind};

/// A crossing-free triangulation of the sphere that satisfies the doubling preconditions.
#[derive(Debug, Clone)]
pub struct BaseTriangulation {
    pub drawing: Drawing,
    pub name: String,
}

impl BaseTriangulation {
    /// Validates an arbitrary plane triangulation.
    pub fn new(name: impl Into<String>, drawing: Drawing) -> Result<Self, ConstructionError> {
        check_preconditions(&drawing)?;
        Ok(BaseTriangulation { drawing, name: name.into() })
    }
}

/// Plane drawing of a triangulated sphere given by consistently oriented triangles.
pub fn triangulation_from_faces(n: usize, faces: &[[usize; 3]]) -> Result<Drawing, ConstructionError> {
    let mut b = MapBuilder::new();
    let nodes: Vec<NodeId> = (0..n).map(|_| b.add_node(NodeKind::Vertex)).collect();
    let mut dart_of: HashMap<(usize, usize), DartId> = HashMap::new();
    let mut succ: Vec<HashMap<usize, usize>> = vec![HashMap::new(); n];
    for f in faces {
        for r in 0..3 {
            let (v, a, c) = (f[r], f[(r + 1) % 3], f[(r + 2) % 3]);
            if succ[v].insert(a, c).is_some() {
                return Err(ConstructionError::PreconditionFailed(format!("faces are not consistently oriented at v{v}")));
            }
            if !dart_of.contains_key(&(v, a)) {
                let d = b.add_segment(nodes[v], nodes[a]);
                dart_of.insert((v, a), d);
                dart_of.insert((a, v), b.twin(d));
                let e = b.add_edge(vec![d]);
                b.set_edge_label(e, format!("e{}_{}", v.min(a), v.max(a)));
            }
        }
    }
    for v in 0..n {
        let Some(&start) = succ[v].keys().min() else {
            return Err(ConstructionError::PreconditionFailed(format!("v{v} lies on no face")));
        };
        let mut rot = vec![dart_of[&(v, start)]];
        let mut cur = succ[v][&start];
        while cur != start {
            rot.push(dart_of[&(v, cur)]);
            cur = *succ[v]
                .get(&cur)
                .ok_or_else(|| ConstructionError::PreconditionFailed(format!("link of v{v} is not a cycle")))?;
            if rot.len() > succ[v].len() {
                return Err(ConstructionError::PreconditionFailed(format!("link of v{v} is not a cycle")));
            }
        }
        if rot.len() != succ[v].len() {
            return Err(ConstructionError::PreconditionFailed(format!("link of v{v} is not a single cycle")));
        }
        b.set_rotation(nodes[v], rot);
    }
    Ok(b.build()?)
}

fn icosahedron() -> (Vec<[f64; 3]>, Vec<[usize; 3]>) {
    let p = (1.0 + 5f64.sqrt()) / 2.0;
    let mut v = Vec::new();
    for s1 in [-1.0, 1.0] {
        for s2 in [-1.0, 1.0] {
            v.push([0.0, s1, s2 * p]);
            v.push([s1, s2 * p, 0.0]);
            v.push([s2 * p, 0.0, s1]);
        }
    }
    let d2 = |a: &[f64; 3], b: &[f64; 3]| (0..3).map(|i| (a[i] - b[i]).powi(2)).sum::<f64>();
    let adj = |a: usize, b: usize| (d2(&v[a], &v[b]) - 4.0).abs() < 1e-9;
    let mut faces = Vec::new();
    for a in 0..12 {
        for b in a + 1..12 {
            for c in b + 1..12 {
                if adj(a, b) && adj(b, c) && adj(a, c) {
                    let (u, w) = (sub(&v[b], &v[a]), sub(&v[c], &v[a]));
                    let nrm = [u[1] * w[2] - u[2] * w[1], u[2] * w[0] - u[0] * w[2], u[0] * w[1] - u[1] * w[0]];
                    let out: f64 = (0..3).map(|i| nrm[i] * (v[a][i] + v[b][i] + v[c][i])).sum();
                    faces.push(if out > 0.0 { [a, b, c] } else { [a, c, b] });
                }
            }
        }
    }
    (v, faces)
}

fn sub(a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum GridKey {
    Corner(usize),
    OnEdge(usize, usize, usize),
    Inner(usize, usize, usize),
}

/// Geodesic icosahedron of subdivision level `level`: every triangle is split into four,
/// `level - 1` times (frequency `2^(level-1)`).
pub fn geodesic_base(level: usize) -> Result<BaseTriangulation, ConstructionError> {
    if !(1..=4).contains(&level) {
        return Err(ConstructionError::ParameterOutOfRange(format!("geodesic_base needs 1 <= s <= 4, got {level}")));
    }
    let s = 1usize << (level - 1);
    let (_, ico) = icosahedron();
    let mut ids: HashMap<GridKey, usize> = (0..12).map(|i| (GridKey::Corner(i), i)).collect();
    let mut faces = Vec::new();
    for (fi, &[a, b, c]) in ico.iter().enumerate() {
        let mut id = |p: usize, q: usize| -> usize {
            let on_edge = |x: usize, y: usize, k: usize| {
                if x < y {
                    GridKey::OnEdge(x, y, k)
                } else {
                    GridKey::OnEdge(y, x, s - k)
                }
            };
            let key = match (p, q) {
                (0, 0) => GridKey::Corner(a),
                (p, 0) if p == s => GridKey::Corner(b),
                (0, q) if q == s => GridKey::Corner(c),
                (p, 0) => on_edge(a, b, p),
                (0, q) => on_edge(a, c, q),
                (p, q) if p + q == s => on_edge(b, c, q),
                (p, q) => GridKey::Inner(fi, p, q),
            };
            let next = ids.len();
            *ids.entry(key).or_insert(next)
        };
        for p in 0..s {
            for q in 0..s - p {
                faces.push([id(p, q), id(p + 1, q), id(p, q + 1)]);
                if p + q + 2 <= s {
                    faces.push([id(p + 1, q), id(p + 1, q + 1), id(p, q + 1)]);
                }
            }
        }
    }
    let n = ids.len();
    let drawing = triangulation_from_faces(n, &faces)?;
    let name = if level == 1 { "icosahedron".to_string() } else { format!("geodesic({level})") };
    BaseTriangulation::new(name, drawing)
}

/// The apex opposite each base edge on either side, keyed by the edge's forward dart.
fn apexes(d: &Drawing) -> Result<Vec<(DartId, NodeId, NodeId)>, ConstructionError> {
    let map = d.map();
    let (walks, face_of) = map.face_index();
    if let Some(w) = walks.iter().find(|w| w.len() != 3) {
        return Err(ConstructionError::PreconditionFailed(format!("face of length {} is not a triangle", w.len())));
    }
    let apex = |x: DartId| map.origin(map.face_next(map.face_next(x)));
    let _ = face_of;
    Ok((0..map.dart_count())
        .map(DartId)
        .filter(|&x| x.0 < map.twin(x).0)
        .map(|x| (x, apex(x), apex(map.twin(x))))
        .collect())
}

fn check_preconditions(d: &Drawing) -> Result<(), ConstructionError> {
    if d.crossing_count() != 0 {
        return Err(ConstructionError::PreconditionFailed("base drawing has crossings".into()));
    }
    let map = d.map();
    let label = |n: NodeId| map.node(n).label.clone();
    let adjacent: BTreeSet<(NodeId, NodeId)> =
        d.edges().iter().flat_map(|e| [(e.tail, e.head), (e.head, e.tail)]).collect();
    let mut seen: HashMap<(NodeId, NodeId), DartId> = HashMap::new();
    for (x, w, w2) in apexes(d)? {
        let (u, v) = (label(map.origin(x)), label(map.target(x)));
        if w == w2 || adjacent.contains(&(w, w2)) {
            return Err(ConstructionError::PreconditionFailed(format!(
                "(a) apexes {} and {} of edge {u}{v} are adjacent",
                label(w),
                label(w2)
            )));
        }
        let key = (w.min(w2), w.max(w2));
        if let Some(&y) = seen.get(&key) {
            return Err(ConstructionError::PreconditionFailed(format!(
                "(b) edges {u}{v} and {}{} share the apex pair {}, {}",
                label(map.origin(y)),
                label(map.target(y)),
                label(w),
                label(w2)
            )));
        }
        seen.insert(key, x);
    }
    Ok(())
}

/// Planarized face template: a clockwise triangle with `k` ports per side and one cevian from each
/// corner to each port of the opposite side.
struct Template {
    drawing: Drawing,
    k: usize,
    /// `sides[i][j]` is the dart of piece `j` along side `i`, from its start corner.
    sides: Vec<Vec<DartId>>,
    /// `cevians[c][j]` runs from corner `c` to port `j` of the opposite side.
    cevians: Vec<Vec<Vec<DartId>>>,
}

impl Template {
    fn new(k: usize) -> Result<Self, ConstructionError> {
        let params: Vec<(i64, i64)> = if k == 1 { vec![(1, 3)] } else { vec![(2, 5), (3, 5)] };
        let mut g = GeoBuilder::new();
        let corners = [Point::from_ints(0, 0), Point::from_ints(0, 30), Point::from_ints(30, 0)];
        let cs: Vec<usize> = ["A", "B", "C"].iter().zip(&corners).map(|(n, p)| g.vertex(*n, p.clone())).collect();
        let mut ports = vec![Vec::new(); 3];
        for side in 0..3 {
            let (s, t) = (&corners[side], &corners[(side + 1) % 3]);
            for (j, &(num, den)) in params.iter().enumerate() {
                ports[side].push(g.vertex(format!("p{side}_{j}"), s.lerp(t, &rat(num, den))));
            }
        }
        for side in 0..3 {
            let pts: Vec<usize> =
                std::iter::once(cs[side]).chain(ports[side].iter().copied()).chain([cs[(side + 1) % 3]]).collect();
            for j in 0..=k {
                g.edge_named(format!("s{side}_{j}"), pts[j], pts[j + 1], vec![]);
            }
        }
        for c in 0..3 {
            let opposite = (c + 1) % 3;
            for j in 0..k {
                g.edge_named(format!("c{c}_{j}"), cs[c], ports[opposite][j], vec![]);
            }
        }
        let drawing = g.finish().planarize()?;
        let by_label: HashMap<&str, Vec<DartId>> =
            drawing.edges().iter().map(|e| (e.label.as_str(), e.chain.clone())).collect();
        let sides = (0..3).map(|s| (0..=k).map(|j| by_label[format!("s{s}_{j}").as_str()][0]).collect()).collect();
        let cevians =
            (0..3).map(|c| (0..k).map(|j| by_label[format!("c{c}_{j}").as_str()].clone()).collect()).collect();
        Ok(Template { drawing, k, sides, cevians })
    }

    fn port_node(&self, side: usize, j: usize) -> NodeId {
        NodeId(3 + side * self.k + j)
    }

    /// Rotation at `node` starting from dart `first`; must end with dart `last`.
    fn rotation_between(&self, node: NodeId, first: DartId, last: DartId) -> Vec<DartId> {
        let rot = self.drawing.map().rotation(node);
        let s = rot.iter().position(|&x| x == first).expect("dart at node");
        let out: Vec<DartId> = (0..rot.len()).map(|i| rot[(s + i) % rot.len()]).collect();
        assert_eq!(out.last(), Some(&last), "template corner is not convex");
        out
    }
}

/// Adds, for every base edge `uv` with apexes `w`, `w'`, an edge `ww'` (two parallel ones when
/// `multi`) that crosses `uv` and no other base edge.
pub fn doubled_triangulation(base: &BaseTriangulation, multi: bool) -> Result<Construction, ConstructionError> {
    let d = &base.drawing;
    check_preconditions(d)?;
    let map = d.map();
    let k = if multi { 2 } else { 1 };
    let t = Template::new(k)?;
    let tmap = t.drawing.map();
    let (walks, face_of) = map.face_index();

    let mut b = MapBuilder::new();
    for node in map.nodes() {
        let v = b.add_node(NodeKind::Vertex);
        b.set_label(v, node.label.clone());
    }
    // Base edges: ports and pieces, keyed by forward dart.
    let mut ports: HashMap<DartId, Vec<NodeId>> = HashMap::new();
    let mut pieces: HashMap<DartId, Vec<DartId>> = HashMap::new();
    for e in d.edges() {
        let f = e.chain[0];
        let fwd = if f.0 < map.twin(f).0 { f } else { map.twin(f) };
        let ps: Vec<NodeId> = (0..k)
            .map(|j| {
                let p = b.add_node(NodeKind::Crossing);
                b.set_label(p, format!("{}.p{j}", e.label));
                p
            })
            .collect();
        let pts: Vec<NodeId> =
            std::iter::once(map.origin(fwd)).chain(ps.iter().copied()).chain([map.target(fwd)]).collect();
        let segs: Vec<DartId> = pts.windows(2).map(|w| b.add_segment(w[0], w[1])).collect();
        ports.insert(fwd, ps);
        pieces.insert(fwd, segs);
    }
    let forward = |x: DartId| if x.0 < map.twin(x).0 { (x, true) } else { (map.twin(x), false) };

    // Per face: template dart -> global dart, template node -> global node.
    let mut dmaps: Vec<Vec<Option<DartId>>> = Vec::with_capacity(walks.len());
    let mut nmaps: Vec<Vec<NodeId>> = Vec::with_capacity(walks.len());
    for (fi, walk) in walks.iter().enumerate() {
        let mut nmap = vec![NodeId(usize::MAX); tmap.node_count()];
        let mut dmap: Vec<Option<DartId>> = vec![None; tmap.dart_count()];
        for (side, &x) in walk.iter().enumerate() {
            nmap[side] = map.origin(x);
            let (fwd, along) = forward(x);
            for j in 0..k {
                let jj = if along { j } else { k - 1 - j };
                nmap[t.port_node(side, j).0] = ports[&fwd][jj];
            }
            for j in 0..=k {
                let g = if along { pieces[&fwd][j] } else { b.twin(pieces[&fwd][k - j]) };
                let td = t.sides[side][j];
                dmap[td.0] = Some(g);
                dmap[tmap.twin(td).0] = Some(b.twin(g));
            }
        }
        for (i, node) in tmap.nodes().iter().enumerate() {
            if node.kind == NodeKind::Crossing {
                let x = b.add_node(NodeKind::Crossing);
                b.set_label(x, format!("f{fi}.{i}"));
                nmap[i] = x;
            }
        }
        for td in (0..tmap.dart_count()).map(DartId) {
            if dmap[td.0].is_none() && td.0 < tmap.twin(td).0 {
                let g = b.add_segment(nmap[tmap.origin(td).0], nmap[tmap.target(td).0]);
                dmap[td.0] = Some(g);
                dmap[tmap.twin(td).0] = Some(b.twin(g));
            }
        }
        dmaps.push(dmap);
        nmaps.push(nmap);
    }
    let gd = |fi: usize, td: DartId| dmaps[fi][td.0].expect("template dart mapped");

    for (fi, _) in walks.iter().enumerate() {
        for (i, node) in tmap.nodes().iter().enumerate() {
            if node.kind == NodeKind::Crossing {
                let rot = tmap.rotation(NodeId(i)).iter().map(|&x| gd(fi, x)).collect();
                b.set_rotation(nmaps[fi][i], rot);
            }
        }
    }
    // Base vertices: each incident face contributes the side toward its previous corner and its cevians.
    for v in d.vertices() {
        let mut rot = Vec::new();
        for &di in map.rotation(v) {
            let next = map.rotation_next(di);
            let fi = face_of[next.0];
            let c = walks[fi].iter().position(|&x| x == next).expect("dart in face");
            let prev_side = (c + 2) % 3;
            let first = tmap.twin(t.sides[prev_side][k]);
            let last = t.sides[c][0];
            let local = t.rotation_between(NodeId(c), first, last);
            rot.extend(local[..local.len() - 1].iter().map(|&x| gd(fi, x)));
        }
        b.set_rotation(v, rot);
    }
    // Ports: the face on the right of the forward dart contributes first.
    for (&fwd, ps) in &ports {
        for (j, &p) in ps.iter().enumerate() {
            let mut rot = Vec::new();
            for (x, jj) in [(fwd, j), (map.twin(fwd), k - 1 - j)] {
                let fi = face_of[x.0];
                let side = walks[fi].iter().position(|&y| y == x).expect("dart in face");
                let first = tmap.twin(t.sides[side][jj]);
                let last = t.sides[side][jj + 1];
                let local = t.rotation_between(t.port_node(side, jj), first, last);
                rot.extend(local[..local.len() - 1].iter().map(|&y| gd(fi, y)));
            }
            b.set_rotation(p, rot);
        }
    }

    for e in d.edges() {
        let (fwd, _) = forward(e.chain[0]);
        let segs = &pieces[&fwd];
        let chain: Vec<DartId> =
            if map.origin(fwd) == e.tail { segs.clone() } else { segs.iter().rev().map(|&x| b.twin(x)).collect() };
        let id = b.add_edge(chain);
        b.set_edge_label(id, e.label.clone());
    }
    let mut fwds: Vec<DartId> = ports.keys().copied().collect();
    fwds.sort();
    for fwd in fwds {
        let label = &d.edge(d.edge_of(fwd).0).label;
        for j in 0..k {
            let (f1, f2) = (face_of[fwd.0], face_of[map.twin(fwd).0]);
            let s1 = walks[f1].iter().position(|&y| y == fwd).expect("dart in face");
            let s2 = walks[f2].iter().position(|&y| y == map.twin(fwd)).expect("dart in face");
            // The cevian reaching side s starts at the corner two steps ahead.
            let mut chain: Vec<DartId> = t.cevians[(s1 + 2) % 3][j].iter().map(|&x| gd(f1, x)).collect();
            chain.extend(t.cevians[(s2 + 2) % 3][k - 1 - j].iter().rev().map(|&x| b.twin(gd(f2, x))));
            let id = b.add_edge(chain);
            b.set_edge_label(id, if multi { format!("{label}.d{j}") } else { format!("{label}.d") });
        }
    }
    let out = b.build()?;

    let n = d.vertex_count();
    let c = census(&out)?;
    if multi {
        post_edges(&out, 9 * n - 18)?;
        post_non_homotopic(&out)?;
        post_free(&out, &["XXXX"])?;
        let f = walks.len();
        for (w, want) in [("XXXXXX", f), ("XXX", 6 * f), ("VXXX", 3 * f), ("VXX", 6 * f)] {
            let got = c.count_type(&ty(w));
            post(got == want, || format!("expected {want} cells of type {w}, found {got}"))?;
        }
    } else {
        post_edges(&out, 6 * n - 12)?;
        post_simple(&out)?;
        post_free(&out, &["XXXX", "XXXXX"])?;
        let bad = c.cells.iter().find(|cell| cell.v == 0 && cell.cell_type != ty("XXX"));
        post(bad.is_none(), || format!("vertex-free cell of type {}", bad.map(|x| x.cell_type.to_string()).unwrap_or_default()))?;
    }
    let name = format!("doubled_triangulation({}, {})", base.name, if multi { "multi" } else { "single" });
    Ok(Construction::new(name, out, None))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn icosahedron_and_subdivision_counts() {
        let b = geodesic_base(1).unwrap();
        assert_eq!((b.drawing.vertex_count(), b.drawing.edge_count(), b.drawing.trace_faces().len()), (12, 30, 20));
        let b = geodesic_base(2).unwrap();
        assert_eq!((b.drawing.vertex_count(), b.drawing.edge_count(), b.drawing.trace_faces().len()), (42, 120, 80));
        let b = geodesic_base(3).unwrap();
        assert_eq!((b.drawing.vertex_count(), b.drawing.edge_count(), b.drawing.trace_faces().len()), (162, 480, 320));
    }

    #[test]
    fn octahedron_fails_precondition_a() {
        let faces = [[0, 2, 4], [2, 1, 4], [1, 3, 4], [3, 0, 4], [2, 0, 5], [1, 2, 5], [3, 1, 5], [0, 3, 5]];
        let d = triangulation_from_faces(6, &faces).unwrap();
        assert!(matches!(BaseTriangulation::new("octahedron", d), Err(ConstructionError::PreconditionFailed(_))));
    }

    #[test]
    fn doubled_icosahedron_single() {
        let c = doubled_triangulation(&geodesic_base(1).unwrap(), false).unwrap();
        assert_eq!(c.drawing.edge_count(), 60);
        assert_eq!(c.drawing.crossing_count(), 30 + 3 * 20);
        let cen = census(&c.drawing).unwrap();
        assert_eq!(cen.count_type(&ty("XXX")), 20);
    }

    #[test]
    fn doubled_icosahedron_multi() {
        let c = doubled_triangulation(&geodesic_base(1).unwrap(), true).unwrap();
        assert_eq!(c.drawing.edge_count(), 90);
        let cen = census(&c.drawing).unwrap();
        assert_eq!(cen.count_type(&ty("XXXXX")), 60);
    }

    #[test]
    fn doubled_geodesic_two() {
        let base = geodesic_base(2).unwrap();
        assert_eq!(doubled_triangulation(&base, false).unwrap().drawing.edge_count(), 6 * 42 - 12);
        assert_eq!(doubled_triangulation(&base, true).unwrap().drawing.edge_count(), 9 * 42 - 18);
    }
}
