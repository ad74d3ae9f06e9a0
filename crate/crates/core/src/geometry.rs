//! Exact polyline geometry and planarization of geometric drawings.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::map::{DartId, Drawing, MapBuilder, MapError, NodeId, NodeKind};

pub type Rational = BigRational;

/// Parses `"7"`, `"-3/4"` style rational strings.
pub fn parse_rational(s: &str) -> Result<Rational, GeometryError> {
    let bad = || GeometryError::BadNumber(s.to_string());
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(BigInt::from_str(s).map_err(|_| bad())?)),
    }
}

/// Reduced `p/q` string, or a plain integer when `q = 1`.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", format_rational(&self.x), format_rational(&self.y))
    }
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point { x: int(x), y: int(y) }
    }

    pub fn sub(&self, o: &Point) -> Point {
        Point { x: &self.x - &o.x, y: &self.y - &o.y }
    }

    pub fn add(&self, o: &Point) -> Point {
        Point { x: &self.x + &o.x, y: &self.y + &o.y }
    }

    pub fn scale(&self, s: &Rational) -> Point {
        Point { x: &self.x * s, y: &self.y * s }
    }

    /// `self + t (o - self)`.
    pub fn lerp(&self, o: &Point, t: &Rational) -> Point {
        self.add(&o.sub(self).scale(t))
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (ratio_f64(&self.x), ratio_f64(&self.y))
    }
}

pub fn ratio_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

fn cross(a: &Point, b: &Point) -> Rational {
    &a.x * &b.y - &a.y * &b.x
}

fn dot(a: &Point, b: &Point) -> Rational {
    &a.x * &b.x + &a.y * &b.y
}

/// Sign of the turn `a -> b -> c`.
pub fn orient(a: &Point, b: &Point, c: &Point) -> Ordering {
    cross(&b.sub(a), &c.sub(a)).cmp(&Rational::zero())
}

/// Counterclockwise angular order of direction vectors, starting at the positive x-axis.
pub fn angle_cmp(a: &Point, b: &Point) -> Ordering {
    let half = |p: &Point| {
        if p.y.is_positive() || (p.y.is_zero() && p.x.is_positive()) {
            0
        } else {
            1
        }
    };
    half(a).cmp(&half(b)).then_with(|| Rational::zero().cmp(&cross(a, b)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeoVertex {
    pub id: String,
    pub pos: Point,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeoEdge {
    pub id: String,
    pub tail: String,
    pub head: String,
    pub bends: Vec<Point>,
}

/// Vertices at exact rational points and edges as polylines between them.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GeometricDrawing {
    pub vertices: Vec<GeoVertex>,
    pub edges: Vec<GeoEdge>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("malformed rational `{0}`")]
    BadNumber(String),
    #[error("duplicate id `{0}`")]
    DuplicateId(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("vertices `{0}` and `{1}` share a position")]
    CoincidentVertices(String, String),
    #[error("edge `{0}` is a loop")]
    LoopEdge(String),
    #[error("vertex `{0}` has no incident edge")]
    IsolatedVertex(String),
    #[error("edge `{0}` repeats a point")]
    RepeatedPoint(String),
    #[error("edge `{0}` is not a simple curve")]
    SelfIntersecting(String),
    #[error("edges `{0}` and `{1}` overlap along a segment")]
    OverlappingSegments(String, String),
    #[error("edge `{edge}` passes through vertex position {at}")]
    CrossingAtVertex { edge: String, at: String },
    #[error("three or more edges meet at {0}")]
    ConcurrentCrossing(String),
    #[error("edges `{0}` and `{1}` touch without crossing at {2}")]
    TangentialContact(String, String, String),
    #[error(transparent)]
    Map(#[from] MapError),
}

/// A position along a polyline: segment index and parameter in `[0, 1)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct PolyPos {
    pub segment: usize,
    pub t: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossingRecord {
    /// Indices into `GeometricDrawing::edges`, first < second.
    pub edges: (usize, usize),
    pub point: Point,
    pub positions: (PolyPos, PolyPos),
}

struct Prepared<'a> {
    geo: &'a GeometricDrawing,
    /// Polyline points per edge, from tail to head.
    paths: Vec<Vec<Point>>,
    ends: Vec<(usize, usize)>,
    vertex_at: HashMap<Point, usize>,
}

fn point_str(p: &Point) -> String {
    format!("{p:?}")
}

impl GeometricDrawing {
    pub fn vertex_index(&self) -> HashMap<&str, usize> {
        self.vertices.iter().enumerate().map(|(i, v)| (v.id.as_str(), i)).collect()
    }

    fn prepare(&self) -> Result<Prepared<'_>, GeometryError> {
        let mut vix = HashMap::new();
        let mut vertex_at = HashMap::new();
        for (i, v) in self.vertices.iter().enumerate() {
            if vix.insert(v.id.as_str(), i).is_some() {
                return Err(GeometryError::DuplicateId(v.id.clone()));
            }
            if let Some(j) = vertex_at.insert(v.pos.clone(), i) {
                return Err(GeometryError::CoincidentVertices(
                    self.vertices[j].id.clone(),
                    v.id.clone(),
                ));
            }
        }
        let mut eids = HashMap::new();
        let mut used = vec![false; self.vertices.len()];
        let mut paths = Vec::with_capacity(self.edges.len());
        let mut ends = Vec::with_capacity(self.edges.len());
        for e in &self.edges {
            if eids.insert(e.id.as_str(), ()).is_some() {
                return Err(GeometryError::DuplicateId(e.id.clone()));
            }
            let t = *vix.get(e.tail.as_str()).ok_or_else(|| GeometryError::UnknownVertex(e.tail.clone()))?;
            let h = *vix.get(e.head.as_str()).ok_or_else(|| GeometryError::UnknownVertex(e.head.clone()))?;
            if t == h {
                return Err(GeometryError::LoopEdge(e.id.clone()));
            }
            used[t] = true;
            used[h] = true;
            let mut path = vec![self.vertices[t].pos.clone()];
            path.extend(e.bends.iter().cloned());
            path.push(self.vertices[h].pos.clone());
            if path.windows(2).any(|w| w[0] == w[1]) {
                return Err(GeometryError::RepeatedPoint(e.id.clone()));
            }
            paths.push(path);
            ends.push((t, h));
        }
        if let Some(i) = used.iter().position(|u| !u) {
            return Err(GeometryError::IsolatedVertex(self.vertices[i].id.clone()));
        }
        Ok(Prepared { geo: self, paths, ends, vertex_at })
    }

    /// Structural checks: unique ids, known endpoints, no loops, no isolated or coincident vertices.
    pub fn validate(&self) -> Result<(), GeometryError> {
        self.prepare().map(|_| ())
    }

    /// All transversal crossings between distinct edges, sorted by edge pair and position.
    pub fn intersect_all(&self) -> Result<Vec<CrossingRecord>, GeometryError> {
        let prep = self.prepare()?;
        prep.crossings()
    }

    pub fn planarize(&self) -> Result<Drawing, GeometryError> {
        Ok(self.planarize_with_positions()?.drawing)
    }

    /// Planarization together with node positions and segment polylines.
    pub fn planarize_with_positions(&self) -> Result<Planarized, GeometryError> {
        let prep = self.prepare()?;
        let records = prep.crossings()?;
        prep.build(records)
    }
}

/// A planarized geometric drawing with its geometry retained per node and segment.
#[derive(Debug, Clone)]
pub struct Planarized {
    pub drawing: Drawing,
    pub node_pos: Vec<Point>,
    /// Polyline of every planarization segment, oriented along its even dart.
    pub segment_paths: Vec<Vec<Point>>,
}

impl Planarized {
    /// Polyline traced by dart `d` from its origin to its target.
    pub fn dart_path(&self, d: DartId) -> Vec<Point> {
        let mut p = self.segment_paths[d.0 / 2].clone();
        if d.0 % 2 == 1 {
            p.reverse();
        }
        p
    }
}

#[derive(Debug, Clone)]
struct Contact {
    edge: usize,
    pos: PolyPos,
}

/// Bounding box as `(xmin, xmax, ymin, ymax)`.
fn bbox(a: &Point, b: &Point) -> (Rational, Rational, Rational, Rational) {
    let (x0, x1) = if a.x <= b.x { (a.x.clone(), b.x.clone()) } else { (b.x.clone(), a.x.clone()) };
    let (y0, y1) = if a.y <= b.y { (a.y.clone(), b.y.clone()) } else { (b.y.clone(), a.y.clone()) };
    (x0, x1, y0, y1)
}

/// Parameter of `p` on segment `a b`, assuming `p` lies on it.
fn param(a: &Point, b: &Point, p: &Point) -> Rational {
    let d = b.sub(a);
    dot(&p.sub(a), &d) / dot(&d, &d)
}

/// Contact between two closed segments, as `None`, a single point, or an overlap.
enum SegContact {
    None,
    Point(Point),
    Overlap,
}

fn segment_contact(a: &Point, b: &Point, c: &Point, d: &Point) -> SegContact {
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    use Ordering::*;
    if o1 == Equal && o2 == Equal {
        // Collinear: compare projections on the common line.
        let ta = Rational::zero();
        let tb = Rational::one();
        let tc = param(a, b, c);
        let td = param(a, b, d);
        let (lo2, hi2) = if tc <= td { (tc, td) } else { (td, tc) };
        let lo = if ta > lo2 { ta } else { lo2 };
        let hi = if tb < hi2 { tb } else { hi2 };
        return match lo.cmp(&hi) {
            Greater => SegContact::None,
            Equal => SegContact::Point(a.lerp(b, &lo)),
            Less => SegContact::Overlap,
        };
    }
    if (o1 == o2 && o1 != Equal) || (o3 == o4 && o3 != Equal) {
        return SegContact::None;
    }
    if o1 != Equal && o2 != Equal && o3 != Equal && o4 != Equal {
        let r = b.sub(a);
        let s = d.sub(c);
        let t = cross(&c.sub(a), &s) / cross(&r, &s);
        return SegContact::Point(a.lerp(b, &t));
    }
    // An endpoint lies on the other segment.
    for (p, q1, q2, o) in [(c, a, b, o1), (d, a, b, o2), (a, c, d, o3), (b, c, d, o4)] {
        if o == Equal {
            let t = param(q1, q2, p);
            if !t.is_negative() && t <= Rational::one() {
                return SegContact::Point(p.clone());
            }
        }
    }
    SegContact::None
}

impl Prepared<'_> {
    fn label(&self, e: usize) -> String {
        self.geo.edges[e].id.clone()
    }

    fn pos_on(&self, e: usize, seg: usize, p: &Point) -> PolyPos {
        let path = &self.paths[e];
        let t = param(&path[seg], &path[seg + 1], p);
        if t.is_one() {
            PolyPos { segment: seg + 1, t: Rational::zero() }
        } else {
            PolyPos { segment: seg, t }
        }
    }

    /// The two rays leaving `pos` along edge `e` (backward, forward); `None` at an endpoint.
    fn rays(&self, e: usize, pos: &PolyPos, at: &Point) -> [Option<Point>; 2] {
        let path = &self.paths[e];
        let back = if pos.t.is_zero() {
            if pos.segment == 0 {
                None
            } else {
                Some(path[pos.segment - 1].sub(at))
            }
        } else {
            Some(path[pos.segment].sub(at))
        };
        let fwd = if pos.segment + 1 >= path.len() {
            None
        } else {
            Some(path[pos.segment + 1].sub(at))
        };
        [back, fwd]
    }

    fn crossings(&self) -> Result<Vec<CrossingRecord>, GeometryError> {
        struct Seg<'p> {
            edge: usize,
            index: usize,
            a: &'p Point,
            b: &'p Point,
            bb: (Rational, Rational, Rational, Rational),
        }
        let mut segs = Vec::new();
        for (e, path) in self.paths.iter().enumerate() {
            for i in 0..path.len() - 1 {
                segs.push(Seg { edge: e, index: i, a: &path[i], b: &path[i + 1], bb: bbox(&path[i], &path[i + 1]) });
            }
        }
        segs.sort_by(|s, t| s.bb.0.cmp(&t.bb.0));

        let mut contacts: BTreeMap<Point, Vec<Contact>> = BTreeMap::new();
        for i in 0..segs.len() {
            let s = &segs[i];
            for t in &segs[i + 1..] {
                if t.bb.0 > s.bb.1 {
                    break;
                }
                if t.bb.2 > s.bb.3 || s.bb.2 > t.bb.3 {
                    continue;
                }
                let same = s.edge == t.edge;
                if same && s.index.abs_diff(t.index) == 1 {
                    // Adjacent pieces of one polyline may only share their joint.
                    let (first, second) = if s.index < t.index { (s, t) } else { (t, s) };
                    if orient(first.a, first.b, second.b) == Ordering::Equal
                        && dot(&first.b.sub(first.a), &second.b.sub(second.a)).is_negative()
                    {
                        return Err(GeometryError::SelfIntersecting(self.label(s.edge)));
                    }
                    continue;
                }
                match segment_contact(s.a, s.b, t.a, t.b) {
                    SegContact::None => {}
                    SegContact::Overlap if same => return Err(GeometryError::SelfIntersecting(self.label(s.edge))),
                    SegContact::Overlap => {
                        return Err(GeometryError::OverlappingSegments(self.label(s.edge), self.label(t.edge)))
                    }
                    SegContact::Point(_) if same => {
                        return Err(GeometryError::SelfIntersecting(self.label(s.edge)))
                    }
                    SegContact::Point(p) => {
                        let list = contacts.entry(p.clone()).or_default();
                        for (seg, idx) in [(s, s.index), (t, t.index)] {
                            let pos = self.pos_on(seg.edge, idx, &p);
                            if !list.iter().any(|c| c.edge == seg.edge) {
                                list.push(Contact { edge: seg.edge, pos });
                            }
                        }
                    }
                }
            }
        }

        let mut records = Vec::new();
        for (p, list) in contacts {
            if let Some(&v) = self.vertex_at.get(&p) {
                for c in &list {
                    let (t, h) = self.ends[c.edge];
                    if t != v && h != v {
                        return Err(GeometryError::CrossingAtVertex { edge: self.label(c.edge), at: point_str(&p) });
                    }
                }
                continue;
            }
            if list.len() > 2 {
                return Err(GeometryError::ConcurrentCrossing(point_str(&p)));
            }
            let (c0, c1) = (&list[0], &list[1]);
            let [a1, a2] = self.rays(c0.edge, &c0.pos, &p);
            let [b1, b2] = self.rays(c1.edge, &c1.pos, &p);
            let (a1, a2, b1, b2) = match (a1, a2, b1, b2) {
                (Some(a1), Some(a2), Some(b1), Some(b2)) => (a1, a2, b1, b2),
                // An edge end at a non-vertex point cannot happen; polylines end at vertices.
                _ => unreachable!("polyline endpoints are vertex positions"),
            };
            let rays = [&a1, &a2, &b1, &b2];
            for i in 0..4 {
                for j in i + 1..4 {
                    if angle_cmp(rays[i], rays[j]) == Ordering::Equal {
                        return Err(GeometryError::OverlappingSegments(self.label(c0.edge), self.label(c1.edge)));
                    }
                }
            }
            // b1 and b2 separate a1 from a2 iff exactly one of them lies strictly ccw-between a1 and a2.
            let between = |r: &Point| ccw_between(&a1, &a2, r);
            if between(&b1) == between(&b2) {
                return Err(GeometryError::TangentialContact(
                    self.label(c0.edge),
                    self.label(c1.edge),
                    point_str(&p),
                ));
            }
            let (c0, c1) = if c0.edge < c1.edge { (c0, c1) } else { (c1, c0) };
            records.push(CrossingRecord {
                edges: (c0.edge, c1.edge),
                point: p,
                positions: (c0.pos.clone(), c1.pos.clone()),
            });
        }
        records.sort_by(|r, s| r.edges.cmp(&s.edges).then_with(|| r.positions.0.cmp(&s.positions.0)));
        Ok(records)
    }

    fn build(&self, records: Vec<CrossingRecord>) -> Result<Planarized, GeometryError> {
        let mut b = MapBuilder::new();
        let mut node_pos = Vec::new();
        for v in &self.geo.vertices {
            let n = b.add_node(NodeKind::Vertex);
            b.set_label(n, v.id.clone());
            node_pos.push(v.pos.clone());
        }
        // Stops along each edge: (position, node).
        let mut stops: Vec<Vec<(PolyPos, NodeId)>> = vec![Vec::new(); self.paths.len()];
        for r in &records {
            let n = b.add_node(NodeKind::Crossing);
            node_pos.push(r.point.clone());
            stops[r.edges.0].push((r.positions.0.clone(), n));
            stops[r.edges.1].push((r.positions.1.clone(), n));
        }
        let mut out_dirs: Vec<Vec<(DartId, Point)>> = vec![Vec::new(); node_pos.len()];
        let mut segment_paths = Vec::new();
        for (e, path) in self.paths.iter().enumerate() {
            let st = &mut stops[e];
            st.sort_by(|a, b| a.0.cmp(&b.0));
            let (t, h) = self.ends[e];
            let last = path.len() - 1;
            let mut seq = vec![(PolyPos { segment: 0, t: Rational::zero() }, NodeId(t))];
            seq.extend(st.iter().cloned());
            seq.push((PolyPos { segment: last, t: Rational::zero() }, NodeId(h)));
            let mut chain = Vec::new();
            for w in seq.windows(2) {
                let (p0, n0) = &w[0];
                let (p1, n1) = &w[1];
                let start = &node_pos[n0.0];
                let end = &node_pos[n1.0];
                let mut pts = vec![start.clone()];
                // Bends strictly between the two stops.
                let first_bend = p0.segment + 1;
                let last_bend = if p1.t.is_zero() { p1.segment.saturating_sub(1) } else { p1.segment };
                if first_bend <= last_bend {
                    pts.extend(path[first_bend..=last_bend].iter().cloned());
                }
                if pts.last() != Some(end) {
                    pts.push(end.clone());
                }
                let d = b.add_segment(*n0, *n1);
                out_dirs[n0.0].push((d, pts[1].sub(start)));
                out_dirs[n1.0].push((b.twin(d), pts[pts.len() - 2].sub(end)));
                segment_paths.push(pts);
                chain.push(d);
            }
            let id = b.add_edge(chain);
            b.set_edge_label(id, self.geo.edges[e].id.clone());
        }
        for (n, mut dirs) in out_dirs.into_iter().enumerate() {
            dirs.sort_by(|a, c| angle_cmp(&a.1, &c.1));
            b.set_rotation(NodeId(n), dirs.into_iter().map(|(d, _)| d).collect());
        }
        let drawing = b.build()?;
        Ok(Planarized { drawing, node_pos, segment_paths })
    }
}

/// Whether direction `r` lies strictly inside the counterclockwise sweep from `a` to `b`.
fn ccw_between(a: &Point, b: &Point, r: &Point) -> bool {
    let rel = |p: &Point| {
        // Rotate so that `a` is the reference direction.
        Point::new(dot(p, a), cross(a, p))
    };
    angle_cmp(&rel(r), &rel(b)) == Ordering::Less && angle_cmp(&rel(r), &Point::new(Rational::one(), Rational::zero())) == Ordering::Greater
}

/// Builder for geometric drawings from integer or rational coordinates.
#[derive(Debug, Default, Clone)]
pub struct GeoBuilder {
    geo: GeometricDrawing,
}

impl GeoBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vertex(&mut self, id: impl Into<String>, pos: Point) -> usize {
        self.geo.vertices.push(GeoVertex { id: id.into(), pos });
        self.geo.vertices.len() - 1
    }

    pub fn edge(&mut self, tail: usize, head: usize, bends: Vec<Point>) -> usize {
        let id = format!("e{}", self.geo.edges.len());
        self.edge_named(id, tail, head, bends)
    }

    pub fn edge_named(&mut self, id: impl Into<String>, tail: usize, head: usize, bends: Vec<Point>) -> usize {
        let tail = self.geo.vertices[tail].id.clone();
        let head = self.geo.vertices[head].id.clone();
        self.geo.edges.push(GeoEdge { id: id.into(), tail, head, bends });
        self.geo.edges.len() - 1
    }

    pub fn position(&self, v: usize) -> &Point {
        &self.geo.vertices[v].pos
    }

    pub fn finish(self) -> GeometricDrawing {
        self.geo
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i64, y: i64) -> Point {
        Point::from_ints(x, y)
    }

    fn straight(points: &[(i64, i64)], edges: &[(usize, usize)]) -> GeometricDrawing {
        let mut g = GeoBuilder::new();
        for (i, &(x, y)) in points.iter().enumerate() {
            g.vertex(format!("v{i}"), p(x, y));
        }
        for &(a, b) in edges {
            g.edge(a, b, vec![]);
        }
        g.finish()
    }

    #[test]
    fn x_crossing_at_center() {
        let g = straight(&[(0, 0), (2, 2), (0, 2), (2, 0)], &[(0, 1), (2, 3)]);
        let r = g.intersect_all().unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].point, p(1, 1));
        let d = g.planarize().unwrap();
        assert_eq!(d.trace_faces().len(), 1);
    }

    #[test]
    fn convex_k4_has_one_crossing() {
        let pts = [(0, 0), (1, 0), (1, 1), (0, 1)];
        let edges: Vec<_> = (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j))).collect();
        let g = straight(&pts, &edges);
        assert_eq!(g.intersect_all().unwrap().len(), 1);
    }

    #[test]
    fn hexagon_long_diagonals_are_concurrent() {
        let pts = [(2, 0), (1, 2), (-1, 2), (-2, 0), (-1, -2), (1, -2)];
        let g = straight(&pts, &[(0, 3), (1, 4), (2, 5)]);
        assert!(matches!(g.intersect_all(), Err(GeometryError::ConcurrentCrossing(_))));
    }

    #[test]
    fn plane_triangle_planarizes_to_two_faces() {
        let g = straight(&[(0, 0), (4, 0), (0, 3)], &[(0, 1), (1, 2), (2, 0)]);
        let d = g.planarize().unwrap();
        assert_eq!(d.trace_faces().len(), 2);
    }

    #[test]
    fn edge_through_vertex_rejected() {
        let g = straight(&[(0, 0), (2, 0), (1, 0), (1, 1)], &[(0, 1), (2, 3)]);
        assert!(matches!(g.intersect_all(), Err(GeometryError::CrossingAtVertex { .. })));
    }

    #[test]
    fn collinear_overlap_rejected() {
        let g = straight(&[(0, 0), (2, 0), (1, 0), (3, 0)], &[(0, 1), (2, 3)]);
        assert!(matches!(g.intersect_all(), Err(GeometryError::OverlappingSegments(..)) | Err(GeometryError::CrossingAtVertex { .. })));
    }

    #[test]
    fn touching_bend_rejected_but_crossing_bend_accepted() {
        let mut g = GeoBuilder::new();
        let a = g.vertex("a", p(0, 0));
        let b = g.vertex("b", p(4, 0));
        let c = g.vertex("c", p(0, 2));
        let d = g.vertex("d", p(4, 2));
        g.edge(a, b, vec![]);
        // Touches (2,0) from above and returns.
        g.edge(c, d, vec![p(2, 0)]);
        let touch = g.finish();
        assert!(matches!(touch.intersect_all(), Err(GeometryError::TangentialContact(..))));

        let mut g = GeoBuilder::new();
        let a = g.vertex("a", p(0, 0));
        let b = g.vertex("b", p(4, 0));
        let c = g.vertex("c", p(0, 2));
        let d = g.vertex("d", p(4, -2));
        g.edge(a, b, vec![]);
        g.edge(c, d, vec![p(2, 0)]);
        let cross = g.finish();
        let r = cross.intersect_all().unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].positions.1, PolyPos { segment: 1, t: Rational::zero() });
        assert_eq!(cross.planarize().unwrap().crossing_count(), 1);
    }

    #[test]
    fn parallel_edges_with_bend() {
        let mut g = GeoBuilder::new();
        let a = g.vertex("a", p(0, 0));
        let b = g.vertex("b", p(4, 0));
        let c = g.vertex("c", p(2, 5));
        g.edge(a, b, vec![]);
        g.edge(a, b, vec![p(2, 2)]);
        g.edge(b, c, vec![]);
        let d = g.finish().planarize().unwrap();
        assert_eq!(d.crossing_count(), 0);
        assert_eq!(d.trace_faces().len(), 2);
    }

    #[test]
    fn rational_strings_round_trip() {
        let r = parse_rational("6/-4").unwrap();
        assert_eq!(format_rational(&r), "-3/2");
        assert_eq!(format_rational(&parse_rational("12").unwrap()), "12");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("0.5").is_err());
    }
}
