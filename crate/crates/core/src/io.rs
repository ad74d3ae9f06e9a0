//! Reading and writing drawings as JSON documents, and SVG figures.
//!
//! Two document formats exist: `celldraw-geo/1` holds exact polyline geometry and
//! `celldraw-map/1` holds the planarized map. Saving is canonical (sorted keys, reduced
//! rationals, two-space indentation), so a save/load/save cycle is byte-identical.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::io::Read;
use std::path::Path;

use serde_json::{Map, Value};
use thiserror::Error;

use crate::cells::{census, CellError, CellType};
use crate::geometry::{
    format_rational, parse_rational, GeoEdge, GeoVertex, GeometricDrawing, GeometryError, Point,
};
use crate::map::{build_drawing, DartId, Drawing, MapError, NodeId, NodeKind, RawDart, RawDrawing, RawEdge};

pub const GEO_FORMAT: &str = "celldraw-geo/1";
pub const MAP_FORMAT: &str = "celldraw-map/1";

#[derive(Debug, Error)]
pub enum IoError {
    #[error("JSON parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("schema error at `{field}`: {message}")]
    Schema { field: String, message: String },
    #[error("invalid geometric drawing: {0}")]
    Geometry(#[from] GeometryError),
    #[error("invalid map: {0}")]
    Map(#[from] MapError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl IoError {
    /// Whether the document was readable but describes an invalid drawing.
    pub fn is_validation(&self) -> bool {
        matches!(self, IoError::Geometry(_) | IoError::Map(_))
    }
}

/// A loaded document of either format.
#[derive(Debug, Clone)]
pub enum Document {
    Geo(GeometricDrawing),
    Map(Drawing),
}

impl Document {
    pub fn format(&self) -> &'static str {
        match self {
            Document::Geo(_) => GEO_FORMAT,
            Document::Map(_) => MAP_FORMAT,
        }
    }

    /// The combinatorial drawing, planarizing geometry when needed.
    pub fn into_drawing(self) -> Result<Drawing, GeometryError> {
        match self {
            Document::Geo(g) => g.planarize(),
            Document::Map(d) => Ok(d),
        }
    }

    pub fn to_json(&self) -> String {
        match self {
            Document::Geo(g) => geo_to_string(g),
            Document::Map(d) => map_to_string(d),
        }
    }
}

pub fn load_str(text: &str) -> Result<Document, IoError> {
    let value: Value = serde_json::from_str(text)
        .map_err(|e| IoError::Parse { line: e.line(), column: e.column(), message: e.to_string() })?;
    let root = At::root(&value);
    let format = root.field("format")?.string()?;
    match format {
        GEO_FORMAT => {
            let geo = geo_from_value(&root)?;
            geo.validate()?;
            Ok(Document::Geo(geo))
        }
        MAP_FORMAT => Ok(Document::Map(build_drawing(&map_from_value(&root)?)?)),
        other => Err(IoError::Schema { field: "format".into(), message: format!("unknown format tag `{other}`") }),
    }
}

pub fn load_reader(mut r: impl Read) -> Result<Document, IoError> {
    let mut text = String::new();
    r.read_to_string(&mut text)?;
    load_str(&text)
}

pub fn load_path(path: impl AsRef<Path>) -> Result<Document, IoError> {
    load_str(&fs::read_to_string(path)?)
}

pub fn save_path(doc: &Document, path: impl AsRef<Path>) -> Result<(), IoError> {
    fs::write(path, doc.to_json())?;
    Ok(())
}

fn canonical(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON values always serialize");
    s.push('\n');
    s
}

fn point_value(p: &Point) -> Value {
    Value::Array(vec![Value::String(format_rational(&p.x)), Value::String(format_rational(&p.y))])
}

pub fn geo_to_string(g: &GeometricDrawing) -> String {
    let vertices = g
        .vertices
        .iter()
        .map(|v| object([("id", Value::String(v.id.clone())), ("pos", point_value(&v.pos))]))
        .collect();
    let edges = g
        .edges
        .iter()
        .map(|e| {
            object([
                ("id", Value::String(e.id.clone())),
                ("tail", Value::String(e.tail.clone())),
                ("head", Value::String(e.head.clone())),
                ("bends", Value::Array(e.bends.iter().map(point_value).collect())),
            ])
        })
        .collect();
    canonical(&object([
        ("format", Value::String(GEO_FORMAT.into())),
        ("vertices", Value::Array(vertices)),
        ("edges", Value::Array(edges)),
    ]))
}

pub fn map_to_string(d: &Drawing) -> String {
    let raw = d.to_raw();
    let kind = |k: NodeKind| match k {
        NodeKind::Vertex => "vertex",
        NodeKind::Crossing => "crossing",
    };
    let nodes = raw
        .nodes
        .iter()
        .map(|(id, k)| object([("id", Value::String(id.clone())), ("kind", Value::String(kind(*k).into()))]))
        .collect();
    let darts = raw
        .darts
        .iter()
        .map(|x| {
            object([
                ("id", Value::String(x.id.clone())),
                ("node", Value::String(x.node.clone())),
                ("twin", Value::String(x.twin.clone())),
            ])
        })
        .collect();
    let rotations: Map<String, Value> = raw
        .rotations
        .iter()
        .map(|(n, ds)| (n.clone(), Value::Array(ds.iter().cloned().map(Value::String).collect())))
        .collect();
    let edges = raw
        .edges
        .iter()
        .map(|e| {
            object([
                ("id", Value::String(e.id.clone())),
                ("tail", Value::String(e.tail.clone())),
                ("head", Value::String(e.head.clone())),
                ("chain", Value::Array(e.chain.iter().cloned().map(Value::String).collect())),
            ])
        })
        .collect();
    canonical(&object([
        ("format", Value::String(MAP_FORMAT.into())),
        ("nodes", Value::Array(nodes)),
        ("darts", Value::Array(darts)),
        ("rotations", Value::Object(rotations)),
        ("edges", Value::Array(edges)),
    ]))
}

fn object<const N: usize>(fields: [(&str, Value); N]) -> Value {
    Value::Object(fields.into_iter().map(|(k, v)| (k.to_string(), v)).collect())
}

/// A JSON value together with its path from the document root, for schema messages.
struct At<'a> {
    value: &'a Value,
    path: String,
}

impl<'a> At<'a> {
    fn root(value: &'a Value) -> Self {
        At { value, path: String::new() }
    }

    fn fail<T>(&self, message: impl Into<String>) -> Result<T, IoError> {
        let field = if self.path.is_empty() { "<root>".to_string() } else { self.path.clone() };
        Err(IoError::Schema { field, message: message.into() })
    }

    fn field(&self, name: &str) -> Result<At<'a>, IoError> {
        let Some(obj) = self.value.as_object() else {
            return self.fail("expected an object");
        };
        let path = if self.path.is_empty() { name.to_string() } else { format!("{}.{name}", self.path) };
        match obj.get(name) {
            Some(value) => Ok(At { value, path }),
            None => Err(IoError::Schema { field: path, message: "missing field".into() }),
        }
    }

    fn string(&self) -> Result<&'a str, IoError> {
        match self.value.as_str() {
            Some(s) => Ok(s),
            None => self.fail("expected a string"),
        }
    }

    fn items(&self) -> Result<Vec<At<'a>>, IoError> {
        let Some(list) = self.value.as_array() else {
            return self.fail("expected an array");
        };
        Ok(list.iter().enumerate().map(|(i, value)| At { value, path: format!("{}[{i}]", self.path) }).collect())
    }

    fn entries(&self) -> Result<Vec<(&'a str, At<'a>)>, IoError> {
        let Some(obj) = self.value.as_object() else {
            return self.fail("expected an object");
        };
        Ok(obj.iter().map(|(k, value)| (k.as_str(), At { value, path: format!("{}.{k}", self.path) })).collect())
    }

    fn strings(&self) -> Result<Vec<String>, IoError> {
        self.items()?.iter().map(|a| a.string().map(str::to_string)).collect()
    }

    fn point(&self) -> Result<Point, IoError> {
        let items = self.items()?;
        if items.len() != 2 {
            return self.fail("expected a pair [x, y]");
        }
        let coord = |a: &At| -> Result<_, IoError> {
            let s = a.string()?;
            parse_rational(s).or_else(|_| a.fail(format!("malformed rational `{s}`")))
        };
        Ok(Point::new(coord(&items[0])?, coord(&items[1])?))
    }
}

fn geo_from_value(root: &At) -> Result<GeometricDrawing, IoError> {
    let vertices = root
        .field("vertices")?
        .items()?
        .iter()
        .map(|v| Ok(GeoVertex { id: v.field("id")?.string()?.to_string(), pos: v.field("pos")?.point()? }))
        .collect::<Result<_, IoError>>()?;
    let edges = root
        .field("edges")?
        .items()?
        .iter()
        .map(|e| {
            Ok(GeoEdge {
                id: e.field("id")?.string()?.to_string(),
                tail: e.field("tail")?.string()?.to_string(),
                head: e.field("head")?.string()?.to_string(),
                bends: e.field("bends")?.items()?.iter().map(At::point).collect::<Result<_, _>>()?,
            })
        })
        .collect::<Result<_, IoError>>()?;
    Ok(GeometricDrawing { vertices, edges })
}

fn map_from_value(root: &At) -> Result<RawDrawing, IoError> {
    let nodes = root
        .field("nodes")?
        .items()?
        .iter()
        .map(|n| {
            let kind = n.field("kind")?;
            let kind = match kind.string()? {
                "vertex" => NodeKind::Vertex,
                "crossing" => NodeKind::Crossing,
                other => return kind.fail(format!("unknown node kind `{other}`")),
            };
            Ok((n.field("id")?.string()?.to_string(), kind))
        })
        .collect::<Result<_, IoError>>()?;
    let darts = root
        .field("darts")?
        .items()?
        .iter()
        .map(|d| {
            Ok(RawDart {
                id: d.field("id")?.string()?.to_string(),
                node: d.field("node")?.string()?.to_string(),
                twin: d.field("twin")?.string()?.to_string(),
            })
        })
        .collect::<Result<_, IoError>>()?;
    let rotations = root
        .field("rotations")?
        .entries()?
        .into_iter()
        .map(|(node, list)| Ok((node.to_string(), list.strings()?)))
        .collect::<Result<_, IoError>>()?;
    let edges = root
        .field("edges")?
        .items()?
        .iter()
        .map(|e| {
            Ok(RawEdge {
                id: e.field("id")?.string()?.to_string(),
                tail: e.field("tail")?.string()?.to_string(),
                head: e.field("head")?.string()?.to_string(),
                chain: e.field("chain")?.strings()?,
            })
        })
        .collect::<Result<_, IoError>>()?;
    Ok(RawDrawing { nodes, darts, rotations, edges })
}

/// How node positions are obtained for an SVG figure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Layout {
    /// The exact geometry of a geometric drawing.
    #[default]
    Given,
    /// Convex-combination embedding of the planarization, largest cell outside.
    Embed,
    /// Force-directed relaxation of the convex-combination embedding.
    Spring,
}

#[derive(Debug, Clone, Default)]
pub struct RenderOptions {
    pub layout: Layout,
    /// Cells of this type are filled.
    pub shade: Option<CellType>,
}

#[derive(Debug, Error)]
pub enum RenderError {
    #[error("layout `given` needs a geometric drawing")]
    NoGeometry,
    #[error("layout failure: {0}")]
    Layout(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Cells(#[from] CellError),
}

/// A rendered figure; `shaded` counts the filled cells.
#[derive(Debug, Clone)]
pub struct Svg {
    pub document: String,
    pub shaded: usize,
    pub warnings: Vec<String>,
}

type P = (f64, f64);

/// Drawable geometry: a curve per dart and a polyline per edge.
struct Scene {
    vertices: Vec<P>,
    edges: Vec<Vec<Curve>>,
    faces: Vec<(Vec<Curve>, bool)>,
}

/// A path piece from the current point: a polyline or a quadratic curve to its end.
#[derive(Clone)]
enum Curve {
    Line(Vec<P>),
    Quad(P, P),
}

pub fn render_svg(doc: &Document, options: &RenderOptions) -> Result<Svg, RenderError> {
    let mut warnings = Vec::new();
    let (drawing, scene_of): (Drawing, Box<dyn Fn(&Drawing) -> Scene>) = match (doc, options.layout) {
        (Document::Geo(g), Layout::Given) => {
            let pl = g.planarize_with_positions()?;
            let pos: Vec<P> = pl.node_pos.iter().map(Point::to_f64).collect();
            let dart_line = move |d: DartId| Curve::Line(pl.dart_path(d).iter().skip(1).map(Point::to_f64).collect());
            let geo = g.clone();
            let scene = move |dr: &Drawing| Scene {
                vertices: dr.vertices().map(|v| pos[v.0]).collect(),
                edges: geo
                    .edges
                    .iter()
                    .enumerate()
                    .map(|(e, _)| {
                        let mut pts = vec![pos[dr.edge(crate::map::EdgeId(e)).tail.0]];
                        pts.extend(dr.edge(crate::map::EdgeId(e)).chain.iter().flat_map(|&d| match dart_line(d) {
                            Curve::Line(p) => p,
                            Curve::Quad(_, b) => vec![b],
                        }));
                        vec![Curve::Line(pts)]
                    })
                    .collect(),
                faces: face_curves(dr, &|d| dart_line(d), &|d| pos[dr.map().origin(d).0]),
            };
            (g.planarize()?, Box::new(scene))
        }
        (Document::Map(_), Layout::Given) => return Err(RenderError::NoGeometry),
        (doc, layout) => {
            let d = doc.clone().into_drawing()?;
            let pos = match tutte_layout(&d) {
                Ok(p) if layout == Layout::Embed => p,
                Ok(p) => spring_layout(&d, p, &mut warnings),
                Err(why) => {
                    warnings.push(format!("embedding failed ({why}); using spring layout"));
                    let start = circle_layout(d.map().node_count());
                    spring_layout(&d, start, &mut warnings)
                }
            };
            (d, Box::new(move |dr: &Drawing| map_scene(dr, &pos)))
        }
    };
    for w in &warnings {
        log::warn!("{w}");
    }
    let scene = scene_of(&drawing);
    let shade_walks: Vec<usize> = match &options.shade {
        None => Vec::new(),
        Some(t) => {
            let c = census(&drawing)?;
            let walks = drawing.trace_faces();
            let index: BTreeMap<DartId, usize> =
                walks.iter().enumerate().map(|(i, w)| (*w.iter().min().expect("walks are non-empty"), i)).collect();
            c.cells
                .iter()
                .filter(|cell| cell.cell_type == *t)
                .map(|cell| index[cell.walk.iter().min().expect("walks are non-empty")])
                .filter(|&i| !scene.faces[i].1)
                .collect()
        }
    };
    Ok(Svg { document: write_svg(&scene, &shade_walks), shaded: shade_walks.len(), warnings })
}

/// Face boundaries as curves, each flagged when it is the unbounded cell (counterclockwise).
fn face_curves(d: &Drawing, curve: &dyn Fn(DartId) -> Curve, start: &dyn Fn(DartId) -> P) -> Vec<(Vec<Curve>, bool)> {
    d.trace_faces()
        .into_iter()
        .map(|walk| {
            let mut pts = vec![start(walk[0])];
            let mut curves = vec![Curve::Line(vec![start(walk[0])])];
            for &dart in &walk {
                let c = curve(dart);
                match &c {
                    Curve::Line(p) => pts.extend(p.iter().copied()),
                    Curve::Quad(ctrl, b) => pts.extend([*ctrl, *b]),
                }
                curves.push(c);
            }
            (curves, signed_area(&pts) > 0.0)
        })
        .collect()
}

fn signed_area(pts: &[P]) -> f64 {
    let n = pts.len();
    (0..n).map(|i| pts[i].0 * pts[(i + 1) % n].1 - pts[(i + 1) % n].0 * pts[i].1).sum::<f64>() / 2.0
}

fn map_scene(d: &Drawing, pos: &[P]) -> Scene {
    let m = d.map();
    let mut groups: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for s in 0..m.dart_count() {
        let (a, b) = (m.origin(DartId(s)).0, m.target(DartId(s)).0);
        if a < b || (a == b && s < m.twin(DartId(s)).0) {
            groups.entry((a, b)).or_default().push(s);
        }
    }
    // Control point per dart, shared with its twin.
    let mut ctrl: Vec<Option<P>> = vec![None; m.dart_count()];
    for ((a, b), darts) in &groups {
        if darts.len() < 2 {
            continue;
        }
        let (pa, pb) = (pos[*a], pos[*b]);
        let (dx, dy) = (pb.0 - pa.0, pb.1 - pa.1);
        for (i, &s) in darts.iter().enumerate() {
            let off = 0.3 * (i as f64 - (darts.len() - 1) as f64 / 2.0);
            let c = ((pa.0 + pb.0) / 2.0 - dy * off, (pa.1 + pb.1) / 2.0 + dx * off);
            ctrl[s] = Some(c);
            ctrl[m.twin(DartId(s)).0] = Some(c);
        }
    }
    let curve = |dart: DartId| {
        let to = pos[m.target(dart).0];
        match ctrl[dart.0] {
            Some(c) => Curve::Quad(c, to),
            None => Curve::Line(vec![to]),
        }
    };
    Scene {
        vertices: d.vertices().map(|v| pos[v.0]).collect(),
        edges: d
            .edges()
            .iter()
            .map(|e| {
                let mut out = vec![Curve::Line(vec![pos[e.tail.0]])];
                out.extend(e.chain.iter().map(|&x| curve(x)));
                out
            })
            .collect(),
        faces: face_curves(d, &curve, &|x| pos[m.origin(x).0]),
    }
}

fn circle_layout(n: usize) -> Vec<P> {
    (0..n)
        .map(|i| {
            let t = 2.0 * std::f64::consts::PI * i as f64 / n as f64;
            (t.cos(), t.sin())
        })
        .collect()
}

/// Convex-combination embedding: the longest face walk is pinned to the unit circle and every
/// other node sits at the average of its neighbours. Fails when the result is degenerate, which
/// happens for planarizations that are not 3-connected.
pub fn tutte_layout(d: &Drawing) -> Result<Vec<P>, String> {
    let m = d.map();
    let n = m.node_count();
    let walks = m.face_walks();
    let outer = walks.iter().max_by_key(|w| w.len()).ok_or("empty map")?;
    let mut fixed = vec![None; n];
    for (i, &dart) in outer.iter().enumerate() {
        let t = 2.0 * std::f64::consts::PI * i as f64 / outer.len() as f64;
        let v = m.origin(dart).0;
        if fixed[v].is_some() {
            return Err(format!("outer cell boundary repeats node {}", m.node(NodeId(v)).label));
        }
        fixed[v] = Some((t.cos(), t.sin()));
    }
    let nbrs: Vec<Vec<usize>> =
        (0..n).map(|v| m.rotation(NodeId(v)).iter().map(|&x| m.target(x).0).collect()).collect();
    let free: Vec<usize> = (0..n).filter(|&v| fixed[v].is_none()).collect();
    let slot: BTreeMap<usize, usize> = free.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut pos: Vec<P> = (0..n).map(|v| fixed[v].unwrap_or((0.0, 0.0))).collect();
    for axis in 0..2 {
        let coord = |p: P| if axis == 0 { p.0 } else { p.1 };
        let rhs: Vec<f64> = free
            .iter()
            .map(|&v| nbrs[v].iter().filter_map(|&u| fixed[u]).map(coord).sum())
            .collect();
        let apply = |x: &[f64]| -> Vec<f64> {
            free.iter()
                .enumerate()
                .map(|(i, &v)| {
                    let off: f64 = nbrs[v].iter().filter_map(|u| slot.get(u)).map(|&j| x[j]).sum();
                    nbrs[v].len() as f64 * x[i] - off
                })
                .collect()
        };
        let x = conjugate_gradient(&apply, &rhs);
        for (i, &v) in free.iter().enumerate() {
            if axis == 0 {
                pos[v].0 = x[i];
            } else {
                pos[v].1 = x[i];
            }
        }
    }
    for (i, w) in walks.iter().enumerate() {
        if std::ptr::eq(w, outer) || w.len() <= 2 {
            continue;
        }
        let pts: Vec<P> = w.iter().map(|&x| pos[m.origin(x).0]).collect();
        if signed_area(&pts) > -1e-12 {
            return Err(format!("cell {i} degenerates"));
        }
    }
    Ok(pos)
}

fn conjugate_gradient(apply: &dyn Fn(&[f64]) -> Vec<f64>, b: &[f64]) -> Vec<f64> {
    let dotp = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
    let mut x = vec![0.0; b.len()];
    let mut r = b.to_vec();
    let mut p = r.clone();
    let mut rr = dotp(&r, &r);
    for _ in 0..10 * b.len().max(10) {
        if rr < 1e-24 {
            break;
        }
        let ap = apply(&p);
        let alpha = rr / dotp(&p, &ap);
        for i in 0..x.len() {
            x[i] += alpha * p[i];
            r[i] -= alpha * ap[i];
        }
        let next = dotp(&r, &r);
        for i in 0..p.len() {
            p[i] = r[i] + next / rr * p[i];
        }
        rr = next;
    }
    x
}

/// Fruchterman-Reingold relaxation from `start`; skipped with a warning on large maps.
fn spring_layout(d: &Drawing, start: Vec<P>, warnings: &mut Vec<String>) -> Vec<P> {
    const LIMIT: usize = 2000;
    let m = d.map();
    let n = m.node_count();
    if n > LIMIT {
        warnings.push(format!("{n} nodes exceed the spring layout limit of {LIMIT}; positions left unrelaxed"));
        return start;
    }
    let k = (4.0 / n as f64).sqrt();
    let mut pos = start;
    let mut temp = 0.1;
    for _ in 0..300 {
        let mut disp = vec![(0.0, 0.0); n];
        for i in 0..n {
            for j in i + 1..n {
                let (dx, dy) = (pos[i].0 - pos[j].0, pos[i].1 - pos[j].1);
                let dist2 = (dx * dx + dy * dy).max(1e-9);
                let f = k * k / dist2;
                disp[i].0 += dx * f;
                disp[i].1 += dy * f;
                disp[j].0 -= dx * f;
                disp[j].1 -= dy * f;
            }
        }
        for s in 0..m.dart_count() {
            let (a, b) = (m.origin(DartId(s)).0, m.target(DartId(s)).0);
            let (dx, dy) = (pos[a].0 - pos[b].0, pos[a].1 - pos[b].1);
            let dist = (dx * dx + dy * dy).sqrt();
            // Each segment appears as two darts; half the pull per dart.
            let f = dist / k / 2.0;
            disp[a].0 -= dx * f;
            disp[a].1 -= dy * f;
        }
        for i in 0..n {
            let len = (disp[i].0 * disp[i].0 + disp[i].1 * disp[i].1).sqrt().max(1e-12);
            let step = len.min(temp);
            pos[i].0 += disp[i].0 / len * step;
            pos[i].1 += disp[i].1 / len * step;
        }
        temp *= 0.98;
    }
    pos
}

fn write_svg(scene: &Scene, shaded: &[usize]) -> String {
    let all = scene
        .vertices
        .iter()
        .copied()
        .chain(scene.edges.iter().flatten().flat_map(|c| match c {
            Curve::Line(p) => p.clone(),
            Curve::Quad(a, b) => vec![*a, *b],
        }));
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for (x, y) in all {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    if !x0.is_finite() {
        (x0, x1, y0, y1) = (0.0, 1.0, 0.0, 1.0);
    }
    let span = (x1 - x0).max(y1 - y0).max(1e-9);
    let scale = 760.0 / span;
    let tr = |p: P| (20.0 + (p.0 - x0) * scale, 20.0 + (y1 - p.1) * scale);
    let (w, h) = (40.0 + (x1 - x0) * scale, 40.0 + (y1 - y0) * scale);
    let path = |curves: &[Curve]| {
        let mut s = String::new();
        for (i, c) in curves.iter().enumerate() {
            match c {
                Curve::Line(pts) => {
                    for (j, &p) in pts.iter().enumerate() {
                        let (x, y) = tr(p);
                        let cmd = if i == 0 && j == 0 { 'M' } else { 'L' };
                        let _ = write!(s, "{cmd}{x:.2} {y:.2} ");
                    }
                }
                Curve::Quad(c, b) => {
                    let ((cx, cy), (bx, by)) = (tr(*c), tr(*b));
                    let _ = write!(s, "Q{cx:.2} {cy:.2} {bx:.2} {by:.2} ");
                }
            }
        }
        s.trim_end().to_string()
    };
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w:.0}\" height=\"{h:.0}\" viewBox=\"0 0 {w:.2} {h:.2}\">"
    );
    out.push_str("<g fill=\"#f4a582\" stroke=\"none\">\n");
    for &f in shaded {
        let _ = writeln!(out, "<path class=\"cell\" d=\"{} Z\"/>", path(&scene.faces[f].0));
    }
    out.push_str("</g>\n<g fill=\"none\" stroke=\"#222\" stroke-width=\"1.2\">\n");
    for e in &scene.edges {
        let _ = writeln!(out, "<path class=\"edge\" d=\"{}\"/>", path(e));
    }
    out.push_str("</g>\n<g fill=\"#000\">\n");
    for &v in &scene.vertices {
        let (x, y) = tr(v);
        let _ = writeln!(out, "<circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"3.5\"/>");
    }
    out.push_str("</g>\n</svg>\n");
    out
}
