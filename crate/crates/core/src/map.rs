//! Rotation-system representation of a planarized drawing on the sphere.
//!
//! A [`Drawing`] is a planar map whose nodes are either graph vertices or
//! degree-4 crossing points, together with the multigraph layer: every edge
//! of the drawn graph is a chain of darts that passes straight through the
//! crossings it meets.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DartId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeId(pub usize);

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NodeKind {
    Vertex,
    Crossing,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Node {
    pub label: String,
    pub kind: NodeKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dart {
    pub label: String,
    pub node: NodeId,
    pub twin: DartId,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeChain {
    pub label: String,
    pub tail: NodeId,
    pub head: NodeId,
    /// Forward darts from `tail` to `head`.
    pub chain: Vec<DartId>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MapError {
    #[error("duplicate id `{0}`")]
    DuplicateId(String),
    #[error("unknown id `{0}`")]
    UnknownId(String),
    #[error("dart `{0}` has an invalid twin")]
    DanglingDart(String),
    #[error("node `{node}` lists dart `{dart}` that does not leave it")]
    RotationMismatch { node: String, dart: String },
    #[error("dart `{0}` is missing from (or repeated in) its node rotation")]
    RotationIncomplete(String),
    #[error("crossing `{0}` does not have degree 4")]
    CrossingDegree(String),
    #[error("vertex `{0}` is isolated")]
    IsolatedVertex(String),
    #[error("crossing `{0}` is not a transversal crossing of two edges")]
    TransversalityViolation(String),
    #[error("edge `{0}` crosses itself")]
    SelfCrossing(String),
    #[error("edge `{0}` is a loop")]
    LoopEdge(String),
    #[error("edge `{0}` has a broken dart chain")]
    BrokenChain(String),
    #[error("dart `{0}` is not covered by exactly one edge")]
    UncoveredDart(String),
    #[error("component containing `{node}` has Euler characteristic {chi}, expected 2")]
    NonSphere { node: String, chi: i64 },
}

/// Nodes, darts and counterclockwise rotations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarMap {
    nodes: Vec<Node>,
    darts: Vec<Dart>,
    rotations: Vec<Vec<DartId>>,
    rot_pos: Vec<usize>,
}

impl PlanarMap {
    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn node(&self, id: NodeId) -> &Node {
        &self.nodes[id.0]
    }

    pub fn darts(&self) -> &[Dart] {
        &self.darts
    }

    pub fn dart(&self, id: DartId) -> &Dart {
        &self.darts[id.0]
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn dart_count(&self) -> usize {
        self.darts.len()
    }

    /// Number of segments of the planarization.
    pub fn segment_count(&self) -> usize {
        self.darts.len() / 2
    }

    pub fn origin(&self, d: DartId) -> NodeId {
        self.darts[d.0].node
    }

    pub fn twin(&self, d: DartId) -> DartId {
        self.darts[d.0].twin
    }

    pub fn target(&self, d: DartId) -> NodeId {
        self.origin(self.twin(d))
    }

    pub fn rotation(&self, n: NodeId) -> &[DartId] {
        &self.rotations[n.0]
    }

    pub fn degree(&self, n: NodeId) -> usize {
        self.rotations[n.0].len()
    }

    /// Counterclockwise successor of `d` around its origin.
    pub fn rotation_next(&self, d: DartId) -> DartId {
        let rot = &self.rotations[self.origin(d).0];
        rot[(self.rot_pos[d.0] + 1) % rot.len()]
    }

    pub fn rotation_prev(&self, d: DartId) -> DartId {
        let rot = &self.rotations[self.origin(d).0];
        rot[(self.rot_pos[d.0] + rot.len() - 1) % rot.len()]
    }

    /// Next dart along the face walk containing `d`.
    pub fn face_next(&self, d: DartId) -> DartId {
        self.rotation_next(self.twin(d))
    }

    /// Face walks: every dart lies in exactly one walk.
    pub fn face_walks(&self) -> Vec<Vec<DartId>> {
        let mut seen = vec![false; self.darts.len()];
        let mut walks = Vec::new();
        for start in 0..self.darts.len() {
            if seen[start] {
                continue;
            }
            let mut walk = Vec::new();
            let mut d = DartId(start);
            while !seen[d.0] {
                seen[d.0] = true;
                walk.push(d);
                d = self.face_next(d);
            }
            walks.push(walk);
        }
        walks
    }

    /// Face index of every dart, with the walks it was derived from.
    pub fn face_index(&self) -> (Vec<Vec<DartId>>, Vec<usize>) {
        let walks = self.face_walks();
        let mut of = vec![0; self.darts.len()];
        for (i, w) in walks.iter().enumerate() {
            for d in w {
                of[d.0] = i;
            }
        }
        (walks, of)
    }

    /// Connected-component label of every node.
    pub fn components(&self) -> (usize, Vec<usize>) {
        let mut comp = vec![usize::MAX; self.nodes.len()];
        let mut count = 0;
        for s in 0..self.nodes.len() {
            if comp[s] != usize::MAX {
                continue;
            }
            let mut stack = vec![s];
            comp[s] = count;
            while let Some(n) = stack.pop() {
                for &d in &self.rotations[n] {
                    let t = self.target(d).0;
                    if comp[t] == usize::MAX {
                        comp[t] = count;
                        stack.push(t);
                    }
                }
            }
            count += 1;
        }
        (count, comp)
    }
}

/// A validated drawing of a loopless multigraph on the sphere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Drawing {
    map: PlanarMap,
    edges: Vec<EdgeChain>,
    /// For every dart: the edge it belongs to and whether it points from tail to head.
    dart_edge: Vec<(EdgeId, bool)>,
    /// For every dart: its index in the edge chain (counted from the tail).
    dart_step: Vec<usize>,
    vertex_count: usize,
}

impl Drawing {
    pub fn map(&self) -> &PlanarMap {
        &self.map
    }

    pub fn edges(&self) -> &[EdgeChain] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> &EdgeChain {
        &self.edges[e.0]
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn crossing_count(&self) -> usize {
        self.map.node_count() - self.vertex_count
    }

    pub fn vertices(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.map
            .nodes
            .iter()
            .enumerate()
            .filter(|(_, n)| n.kind == NodeKind::Vertex)
            .map(|(i, _)| NodeId(i))
    }

    pub fn crossings(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.map
            .nodes
            .iter()
            .enumerate()
            .filter(|(_, n)| n.kind == NodeKind::Crossing)
            .map(|(i, _)| NodeId(i))
    }

    pub fn is_vertex(&self, n: NodeId) -> bool {
        self.map.nodes[n.0].kind == NodeKind::Vertex
    }

    /// Edge owning dart `d` and whether `d` runs from tail to head.
    pub fn edge_of(&self, d: DartId) -> (EdgeId, bool) {
        self.dart_edge[d.0]
    }

    /// Position of the segment of `d` along its edge, counted from the tail.
    pub fn step_of(&self, d: DartId) -> usize {
        self.dart_step[d.0]
    }

    /// The two distinct edges passing through crossing `x`.
    pub fn crossing_edges(&self, x: NodeId) -> (EdgeId, EdgeId) {
        let rot = self.map.rotation(x);
        (self.dart_edge[rot[0].0].0, self.dart_edge[rot[1].0].0)
    }

    /// Nodes met by an edge from tail to head.
    pub fn edge_nodes(&self, e: EdgeId) -> Vec<NodeId> {
        let chain = &self.edges[e.0];
        let mut out = vec![chain.tail];
        out.extend(chain.chain.iter().map(|&d| self.map.target(d)));
        out
    }

    /// Cell walks, one per face of the planarization.
    pub fn trace_faces(&self) -> Vec<Vec<DartId>> {
        self.map.face_walks()
    }

    /// Whether the image of the drawing is connected.
    pub fn is_connected(&self) -> bool {
        self.map.components().0 <= 1
    }

    /// Raw, string-keyed components of this drawing.
    pub fn to_raw(&self) -> RawDrawing {
        let m = &self.map;
        RawDrawing {
            nodes: m.nodes.iter().map(|n| (n.label.clone(), n.kind)).collect(),
            darts: m
                .darts
                .iter()
                .map(|d| RawDart {
                    id: d.label.clone(),
                    node: m.nodes[d.node.0].label.clone(),
                    twin: m.darts[d.twin.0].label.clone(),
                })
                .collect(),
            rotations: m
                .rotations
                .iter()
                .enumerate()
                .map(|(i, r)| {
                    (
                        m.nodes[i].label.clone(),
                        r.iter().map(|d| m.darts[d.0].label.clone()).collect(),
                    )
                })
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|e| RawEdge {
                    id: e.label.clone(),
                    tail: m.nodes[e.tail.0].label.clone(),
                    head: m.nodes[e.head.0].label.clone(),
                    chain: e.chain.iter().map(|d| m.darts[d.0].label.clone()).collect(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawDart {
    pub id: String,
    pub node: String,
    pub twin: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawEdge {
    pub id: String,
    pub tail: String,
    pub head: String,
    pub chain: Vec<String>,
}

/// String-keyed drawing components, as stored in map files.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RawDrawing {
    pub nodes: Vec<(String, NodeKind)>,
    pub darts: Vec<RawDart>,
    pub rotations: Vec<(String, Vec<String>)>,
    pub edges: Vec<RawEdge>,
}

fn index_of<'a>(
    ids: impl Iterator<Item = &'a String>,
) -> Result<HashMap<&'a str, usize>, MapError> {
    let mut out = HashMap::new();
    for (i, id) in ids.enumerate() {
        if out.insert(id.as_str(), i).is_some() {
            return Err(MapError::DuplicateId(id.clone()));
        }
    }
    Ok(out)
}

fn lookup(ix: &HashMap<&str, usize>, id: &str) -> Result<usize, MapError> {
    ix.get(id).copied().ok_or_else(|| MapError::UnknownId(id.to_string()))
}

/// Validates raw components and builds a [`Drawing`].
pub fn build_drawing(raw: &RawDrawing) -> Result<Drawing, MapError> {
    let node_ix = index_of(raw.nodes.iter().map(|n| &n.0))?;
    let dart_ix = index_of(raw.darts.iter().map(|d| &d.id))?;
    let nodes: Vec<Node> = raw
        .nodes
        .iter()
        .map(|(l, k)| Node { label: l.clone(), kind: *k })
        .collect();
    let mut darts = Vec::with_capacity(raw.darts.len());
    for d in &raw.darts {
        darts.push(Dart {
            label: d.id.clone(),
            node: NodeId(lookup(&node_ix, &d.node)?),
            twin: DartId(lookup(&dart_ix, &d.twin).map_err(|_| MapError::DanglingDart(d.id.clone()))?),
        });
    }
    let mut rotations = vec![Vec::new(); nodes.len()];
    let mut seen_rot = vec![false; nodes.len()];
    for (n, list) in &raw.rotations {
        let ni = lookup(&node_ix, n)?;
        if seen_rot[ni] {
            return Err(MapError::DuplicateId(n.clone()));
        }
        seen_rot[ni] = true;
        for d in list {
            let di = lookup(&dart_ix, d)?;
            rotations[ni].push(DartId(di));
        }
    }
    let edges = raw
        .edges
        .iter()
        .map(|e| {
            Ok(EdgeChain {
                label: e.id.clone(),
                tail: NodeId(lookup(&node_ix, &e.tail)?),
                head: NodeId(lookup(&node_ix, &e.head)?),
                chain: e
                    .chain
                    .iter()
                    .map(|d| lookup(&dart_ix, d).map(DartId))
                    .collect::<Result<_, _>>()?,
            })
        })
        .collect::<Result<Vec<_>, MapError>>()?;
    let mut edge_ids = HashMap::new();
    for e in &raw.edges {
        if edge_ids.insert(e.id.as_str(), ()).is_some() {
            return Err(MapError::DuplicateId(e.id.clone()));
        }
    }
    Drawing::from_parts(nodes, darts, rotations, edges)
}

impl Drawing {
    /// Validates index-based components. Used by [`build_drawing`] and by generators.
    pub fn from_parts(
        nodes: Vec<Node>,
        darts: Vec<Dart>,
        rotations: Vec<Vec<DartId>>,
        edges: Vec<EdgeChain>,
    ) -> Result<Drawing, MapError> {
        let dl = |d: DartId| darts[d.0].label.clone();
        let nl = |n: NodeId| nodes[n.0].label.clone();
        for (i, d) in darts.iter().enumerate() {
            let t = d.twin.0;
            if t >= darts.len() || t == i || darts[t].twin.0 != i {
                return Err(MapError::DanglingDart(d.label.clone()));
            }
        }
        let mut rot_pos = vec![usize::MAX; darts.len()];
        for (n, rot) in rotations.iter().enumerate() {
            for (p, &d) in rot.iter().enumerate() {
                if darts[d.0].node.0 != n {
                    return Err(MapError::RotationMismatch { node: nodes[n].label.clone(), dart: dl(d) });
                }
                if rot_pos[d.0] != usize::MAX {
                    return Err(MapError::RotationIncomplete(dl(d)));
                }
                rot_pos[d.0] = p;
            }
        }
        if let Some(i) = rot_pos.iter().position(|&p| p == usize::MAX) {
            return Err(MapError::RotationIncomplete(darts[i].label.clone()));
        }
        for (n, node) in nodes.iter().enumerate() {
            match node.kind {
                NodeKind::Vertex if rotations[n].is_empty() => {
                    return Err(MapError::IsolatedVertex(node.label.clone()))
                }
                NodeKind::Crossing if rotations[n].len() != 4 => {
                    return Err(MapError::CrossingDegree(node.label.clone()))
                }
                _ => {}
            }
        }

        // Edge chains.
        let mut dart_edge = vec![None; darts.len()];
        let mut dart_step = vec![0; darts.len()];
        for (ei, e) in edges.iter().enumerate() {
            if e.tail == e.head {
                return Err(MapError::LoopEdge(e.label.clone()));
            }
            if e.chain.is_empty()
                || nodes[e.tail.0].kind != NodeKind::Vertex
                || nodes[e.head.0].kind != NodeKind::Vertex
                || darts[e.chain[0].0].node != e.tail
            {
                return Err(MapError::BrokenChain(e.label.clone()));
            }
            let mut visited = Vec::new();
            for (k, &d) in e.chain.iter().enumerate() {
                let tw = darts[d.0].twin;
                let at = darts[tw.0].node;
                for (dd, fwd) in [(d, true), (tw, false)] {
                    if dart_edge[dd.0].is_some() {
                        return Err(MapError::UncoveredDart(dl(dd)));
                    }
                    dart_edge[dd.0] = Some((EdgeId(ei), fwd));
                    dart_step[dd.0] = k;
                }
                if k + 1 == e.chain.len() {
                    if at != e.head {
                        return Err(MapError::BrokenChain(e.label.clone()));
                    }
                } else {
                    if nodes[at.0].kind != NodeKind::Crossing {
                        return Err(MapError::BrokenChain(e.label.clone()));
                    }
                    if visited.contains(&at) {
                        return Err(MapError::SelfCrossing(e.label.clone()));
                    }
                    visited.push(at);
                    let next = e.chain[k + 1];
                    if darts[next.0].node != at {
                        return Err(MapError::BrokenChain(e.label.clone()));
                    }
                    // Passing straight through: the outgoing dart is opposite the incoming one.
                    if (rot_pos[tw.0] + 2) % 4 != rot_pos[next.0] {
                        return Err(MapError::TransversalityViolation(nl(at)));
                    }
                }
            }
        }
        if let Some(i) = dart_edge.iter().position(|x| x.is_none()) {
            return Err(MapError::UncoveredDart(darts[i].label.clone()));
        }
        let dart_edge: Vec<(EdgeId, bool)> = dart_edge.into_iter().map(Option::unwrap).collect();
        for (n, node) in nodes.iter().enumerate() {
            if node.kind == NodeKind::Crossing {
                let r = &rotations[n];
                let e0 = dart_edge[r[0].0].0;
                let e1 = dart_edge[r[1].0].0;
                if e0 == e1 || dart_edge[r[2].0].0 != e0 || dart_edge[r[3].0].0 != e1 {
                    if e0 == e1 && dart_edge[r[2].0].0 == e0 {
                        return Err(MapError::SelfCrossing(edges[e0.0].label.clone()));
                    }
                    return Err(MapError::TransversalityViolation(node.label.clone()));
                }
            }
        }

        let vertex_count = nodes.iter().filter(|n| n.kind == NodeKind::Vertex).count();
        let map = PlanarMap { nodes, darts, rotations, rot_pos };

        // Euler characteristic per connected component.
        let (ncomp, comp) = map.components();
        // V - E + F per component; every segment contributes two darts.
        let mut chi = vec![0i64; ncomp];
        for (n, &c) in comp.iter().enumerate() {
            chi[c] += 2 - map.rotations[n].len() as i64;
        }
        for c in chi.iter_mut() {
            *c /= 2;
        }
        for w in map.face_walks() {
            chi[comp[map.origin(w[0]).0]] += 1;
        }
        for (c, &x) in chi.iter().enumerate() {
            if x != 2 {
                let node = comp.iter().position(|&k| k == c).unwrap();
                return Err(MapError::NonSphere { node: map.nodes[node].label.clone(), chi: x });
            }
        }
        Ok(Drawing { map, edges, dart_edge, dart_step, vertex_count })
    }
}

/// Index-based construction of drawings, used by planarization and generators.
///
/// Segments are added between nodes; rotations are assigned afterwards and
/// edges are given as node sequences.
#[derive(Debug, Default, Clone)]
pub struct MapBuilder {
    nodes: Vec<Node>,
    darts: Vec<Dart>,
    rotations: Vec<Vec<DartId>>,
    edges: Vec<EdgeChain>,
}

impl MapBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_node(&mut self, kind: NodeKind) -> NodeId {
        let id = NodeId(self.nodes.len());
        let label = match kind {
            NodeKind::Vertex => format!("v{}", id.0),
            NodeKind::Crossing => format!("x{}", id.0),
        };
        self.nodes.push(Node { label, kind });
        self.rotations.push(Vec::new());
        id
    }

    pub fn set_label(&mut self, n: NodeId, label: impl Into<String>) {
        self.nodes[n.0].label = label.into();
    }

    pub fn node_kind(&self, n: NodeId) -> NodeKind {
        self.nodes[n.0].kind
    }

    /// Adds a segment `a -> b`; returns the dart leaving `a` (its twin leaves `b`).
    /// The darts are appended to the rotations of their nodes.
    pub fn add_segment(&mut self, a: NodeId, b: NodeId) -> DartId {
        let d = DartId(self.darts.len());
        let t = DartId(d.0 + 1);
        self.darts.push(Dart { label: format!("d{}", d.0), node: a, twin: t });
        self.darts.push(Dart { label: format!("d{}", t.0), node: b, twin: d });
        self.rotations[a.0].push(d);
        self.rotations[b.0].push(t);
        d
    }

    pub fn twin(&self, d: DartId) -> DartId {
        self.darts[d.0].twin
    }

    pub fn rotation(&self, n: NodeId) -> &[DartId] {
        &self.rotations[n.0]
    }

    pub fn set_rotation(&mut self, n: NodeId, rot: Vec<DartId>) {
        self.rotations[n.0] = rot;
    }

    pub fn add_edge(&mut self, chain: Vec<DartId>) -> EdgeId {
        let id = EdgeId(self.edges.len());
        let tail = self.darts[chain[0].0].node;
        let last = *chain.last().expect("empty chain");
        let head = self.darts[self.darts[last.0].twin.0].node;
        self.edges.push(EdgeChain { label: format!("e{}", id.0), tail, head, chain });
        id
    }

    pub fn set_edge_label(&mut self, e: EdgeId, label: impl Into<String>) {
        self.edges[e.0].label = label.into();
    }

    pub fn build(self) -> Result<Drawing, MapError> {
        Drawing::from_parts(self.nodes, self.darts, self.rotations, self.edges)
    }
}
