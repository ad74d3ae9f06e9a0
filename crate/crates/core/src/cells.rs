//! Cell census: boundary walks, size statistics and canonical cell types.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::map::{DartId, Drawing, NodeId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CellError {
    #[error("drawing image is disconnected ({0} components)")]
    DisconnectedDrawing(usize),
    #[error("shorthand `{0}` matches several types: {1:?}")]
    AmbiguousShorthand(String, Vec<String>),
    #[error("invalid cell type `{0}`")]
    InvalidWord(String),
}

/// A cell type: a cyclic corner word over `V` and `X`, stored in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CellType {
    word: String,
}

impl CellType {
    /// Canonicalizes an arbitrary corner word.
    pub fn from_word(word: &str) -> Result<Self, CellError> {
        if word.is_empty() || !word.bytes().all(|b| b == b'V' || b == b'X') {
            return Err(CellError::InvalidWord(word.to_string()));
        }
        Ok(CellType { word: canonical_word(word.as_bytes()) })
    }

    pub fn word(&self) -> &str {
        &self.word
    }

    pub fn vertex_corners(&self) -> usize {
        self.word.bytes().filter(|&b| b == b'V').count()
    }

    pub fn size(&self) -> usize {
        self.word.len() + self.vertex_corners()
    }

    /// `s_v` name, e.g. `3_0` for `XXX`.
    pub fn shorthand(&self) -> String {
        format!("{}_{}", self.size(), self.vertex_corners())
    }

    /// Whether the shorthand names this type alone.
    pub fn shorthand_is_unique(&self) -> bool {
        classes_for(self.size(), self.vertex_corners()).len() == 1
    }
}

impl PartialOrd for CellType {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CellType {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.size(), self.word.len(), &self.word).cmp(&(other.size(), other.word.len(), &other.word))
    }
}

impl fmt::Display for CellType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.word)
    }
}

impl FromStr for CellType {
    type Err = CellError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_type(s)
    }
}

/// Least word among all rotations of `w` and of its reversal.
pub fn canonical_word(w: &[u8]) -> String {
    let n = w.len();
    let mut rev = w.to_vec();
    rev.reverse();
    let mut best: Option<Vec<u8>> = None;
    for src in [w, rev.as_slice()] {
        for s in 0..n {
            let cand: Vec<u8> = src[s..].iter().chain(&src[..s]).copied().collect();
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    String::from_utf8(best.unwrap_or_default()).expect("ascii word")
}

/// All canonical words with `v` vertex corners and total size `s`.
fn classes_for(s: usize, v: usize) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    if s < 2 * v || s == v {
        return out;
    }
    let len = s - v;
    for mask in 0u64..(1u64 << len) {
        if mask.count_ones() as usize != v {
            continue;
        }
        let w: Vec<u8> = (0..len).map(|i| if mask >> i & 1 == 1 { b'V' } else { b'X' }).collect();
        out.insert(canonical_word(&w));
    }
    out
}

/// Parses a corner word (`VXX`) or an `s_v` shorthand (`4_1`).
pub fn parse_type(input: &str) -> Result<CellType, CellError> {
    let s = input.trim();
    let Some((size, verts)) = s.split_once('_') else {
        return CellType::from_word(&s.to_ascii_uppercase());
    };
    let bad = || CellError::InvalidWord(input.to_string());
    let size: usize = size.parse().map_err(|_| bad())?;
    let verts: usize = verts.parse().map_err(|_| bad())?;
    if size > 64 {
        return Err(bad());
    }
    let classes = classes_for(size, verts);
    match classes.len() {
        0 => Err(bad()),
        1 => Ok(CellType { word: classes.into_iter().next().unwrap_or_default() }),
        _ => Err(CellError::AmbiguousShorthand(input.to_string(), classes.into_iter().collect())),
    }
}

/// One face of the planarization with its corner statistics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    pub walk: Vec<DartId>,
    /// Corner labels in walk order; corner `i` is the origin of `walk[i]`.
    pub corners: String,
    pub v: usize,
    pub x: usize,
    pub e: usize,
    pub e_in: usize,
    pub size: usize,
    pub cell_type: CellType,
}

impl Cell {
    /// Vertex nodes on the boundary, one entry per corner.
    pub fn vertex_corners<'a>(&'a self, drawing: &'a Drawing) -> impl Iterator<Item = NodeId> + 'a {
        self.walk.iter().map(|&d| drawing.map().origin(d)).filter(|&n| drawing.is_vertex(n))
    }

    pub fn nodes<'a>(&'a self, drawing: &'a Drawing) -> impl Iterator<Item = NodeId> + 'a {
        self.walk.iter().map(|&d| drawing.map().origin(d))
    }
}

pub fn classify_walk(drawing: &Drawing, walk: Vec<DartId>) -> Cell {
    let map = drawing.map();
    let mut corners = String::with_capacity(walk.len());
    let mut e_in = 0;
    for &d in &walk {
        let a = map.origin(d);
        let b = map.target(d);
        corners.push(if drawing.is_vertex(a) { 'V' } else { 'X' });
        if !drawing.is_vertex(a) && !drawing.is_vertex(b) {
            e_in += 1;
        }
    }
    let v = corners.bytes().filter(|&c| c == b'V').count();
    let e = walk.len();
    let cell_type = CellType { word: canonical_word(corners.as_bytes()) };
    Cell { walk, corners, v, x: e - v, e, e_in, size: e + v, cell_type }
}

/// All cells of a connected drawing, indexed by type and size.
#[derive(Debug, Clone)]
pub struct Census {
    pub cells: Vec<Cell>,
    pub by_type: BTreeMap<CellType, usize>,
    pub by_size: BTreeMap<usize, Vec<usize>>,
    pub n: usize,
    pub edge_count: usize,
    pub crossing_count: usize,
}

impl Census {
    pub fn count_type(&self, t: &CellType) -> usize {
        self.by_type.get(t).copied().unwrap_or(0)
    }

    /// Indices of the cells of size exactly `k`.
    pub fn of_size(&self, k: usize) -> &[usize] {
        self.by_size.get(&k).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Indices of the cells of size at least `k`.
    pub fn at_least(&self, k: usize) -> impl Iterator<Item = usize> + '_ {
        self.by_size.range(k..).flat_map(|(_, v)| v.iter().copied())
    }

    pub fn first_of_type(&self, t: &CellType) -> Option<&Cell> {
        self.cells.iter().find(|c| &c.cell_type == t)
    }

    pub fn size_histogram(&self) -> BTreeMap<usize, usize> {
        self.by_size.iter().map(|(k, v)| (*k, v.len())).collect()
    }
}

pub fn census(drawing: &Drawing) -> Result<Census, CellError> {
    let (components, _) = drawing.map().components();
    if components != 1 {
        return Err(CellError::DisconnectedDrawing(components));
    }
    let cells: Vec<Cell> = drawing.trace_faces().into_iter().map(|w| classify_walk(drawing, w)).collect();
    let mut by_type = BTreeMap::new();
    let mut by_size: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, c) in cells.iter().enumerate() {
        *by_type.entry(c.cell_type.clone()).or_insert(0) += 1;
        by_size.entry(c.size).or_default().push(i);
    }
    Ok(Census {
        cells,
        by_type,
        by_size,
        n: drawing.vertex_count(),
        edge_count: drawing.edge_count(),
        crossing_count: drawing.crossing_count(),
    })
}

pub fn count_type(census: &Census, t: &CellType) -> usize {
    census.count_type(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map::{MapBuilder, NodeKind};

    fn triangle() -> Drawing {
        let mut b = MapBuilder::new();
        let v: Vec<_> = (0..3).map(|_| b.add_node(NodeKind::Vertex)).collect();
        for i in 0..3 {
            let d = b.add_segment(v[i], v[(i + 1) % 3]);
            b.add_edge(vec![d]);
        }
        b.build().unwrap()
    }

    fn x_tree() -> Drawing {
        let mut b = MapBuilder::new();
        let v: Vec<_> = (0..4).map(|_| b.add_node(NodeKind::Vertex)).collect();
        let x = b.add_node(NodeKind::Crossing);
        let a0 = b.add_segment(v[0], x);
        let a1 = b.add_segment(x, v[1]);
        let c0 = b.add_segment(v[2], x);
        let c1 = b.add_segment(x, v[3]);
        b.set_rotation(x, vec![b.twin(a0), b.twin(c0), a1, c1]);
        b.add_edge(vec![a0, a1]);
        b.add_edge(vec![c0, c1]);
        b.build().unwrap()
    }

    #[test]
    fn triangle_census() {
        let c = census(&triangle()).unwrap();
        assert_eq!(c.cells.len(), 2);
        let vvv = parse_type("6_3").unwrap();
        assert_eq!(vvv.word(), "VVV");
        assert_eq!(c.count_type(&vvv), 2);
        assert_eq!(c.count_type(&parse_type("XXX").unwrap()), 0);
        assert!(c.cells.iter().all(|cell| cell.size == 6));
    }

    #[test]
    fn x_tree_single_cell_of_size_12() {
        let c = census(&x_tree()).unwrap();
        assert_eq!(c.cells.len(), 1);
        let cell = &c.cells[0];
        assert_eq!((cell.size, cell.v, cell.x, cell.e, cell.e_in), (12, 4, 4, 8, 0));
        assert_eq!(cell.cell_type.word(), "VXVXVXVX");
    }

    #[test]
    fn shorthand_parsing() {
        assert_eq!(parse_type("3_0").unwrap().word(), "XXX");
        assert_eq!(parse_type("4_1").unwrap().word(), "VXX");
        assert_eq!(parse_type("5_1").unwrap().word(), "VXXX");
        assert_eq!(parse_type("5_2").unwrap().word(), "VVX");
        match parse_type("6_2") {
            Err(CellError::AmbiguousShorthand(_, classes)) => assert_eq!(classes, vec!["VVXX", "VXVX"]),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_type("VQX"), Err(CellError::InvalidWord(_))));
        assert!(matches!(parse_type("3_2"), Err(CellError::InvalidWord(_))));
        assert_eq!(parse_type("xvx").unwrap().word(), "VXX");
    }

    #[test]
    fn canonical_form_ignores_rotation_and_reflection() {
        let a = CellType::from_word("XVXXV").unwrap();
        let b = CellType::from_word("VXXVX").unwrap();
        let c = CellType::from_word("VXVXX").unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
        assert_eq!(a.word(), "VXVXX");
        assert_eq!(a.shorthand(), "7_2");
    }

    #[test]
    fn disconnected_drawing_rejected() {
        let mut b = MapBuilder::new();
        let v: Vec<_> = (0..4).map(|_| b.add_node(NodeKind::Vertex)).collect();
        let d = b.add_segment(v[0], v[1]);
        b.add_edge(vec![d]);
        let d = b.add_segment(v[2], v[3]);
        b.add_edge(vec![d]);
        assert!(matches!(census(&b.build().unwrap()), Err(CellError::DisconnectedDrawing(2))));
    }
}
