use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::PI;

use super::polar::{approx, polar};
use super::{post, post_edges, post_free, post_simple, Construction, ConstructionError};
use crate::geometry::{GeoBuilder, Point};
use crate::map::NodeId;

const SQ3: f64 = 1.732_050_807_568_877_2;
const SAMPLE: f64 = 0.05;
/// Hexagons per ring of the tube.
const AROUND: i64 = 3;
const PERIOD: f64 = AROUND as f64 * SQ3;
const CAP_RISE: f64 = 0.5;

/// Lattice steps to the six neighbours, by direction `60° · d`.
const DIRS: [(i64, i64); 6] = [(1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1)];

type Hex = (i64, i64);
type VertexKey = [Hex; 3];

/// Rows `0..rows` of pointy-top hexagons, three per row, rolled into a tube along `x` and mapped
/// onto an annulus with the bottom row innermost.
struct Tube {
    rows: i64,
    y_min: f64,
    y_span: f64,
}

impl Tube {
    fn new(rows: i64) -> Self {
        let y_min = -1.0 - 2.0 * CAP_RISE;
        let y_max = 1.5 * (rows - 1) as f64 + 1.0 + 2.0 * CAP_RISE;
        Tube { rows, y_min, y_span: y_max - y_min }
    }

    fn reduce(&self, (i, j): Hex) -> Hex {
        (i.rem_euclid(AROUND), j)
    }

    fn exists(&self, h: Hex) -> bool {
        (0..self.rows).contains(&h.1)
    }

    fn step(&self, (i, j): Hex, d: usize) -> Hex {
        (i + DIRS[d].0, j + DIRS[d].1)
    }

    /// Plane position of corner `a` (at angle `30° + 60° · a`) of hexagon `h`.
    fn corner(&self, (i, j): Hex, a: usize) -> (f64, f64) {
        let ang = (30.0 + 60.0 * a as f64).to_radians();
        (SQ3 * (i as f64 + j as f64 / 2.0) + ang.cos(), 1.5 * j as f64 + ang.sin())
    }

    /// The three hexagons around corner `a` of `h`.
    fn key(&self, h: Hex, a: usize) -> VertexKey {
        let mut t = [self.reduce(h), self.reduce(self.step(h, a)), self.reduce(self.step(h, (a + 1) % 6))];
        t.sort();
        t
    }

    fn is_vertex(&self, key: &VertexKey) -> bool {
        key.iter().any(|&h| self.exists(h))
    }

    fn to_point(&self, (x, y): (f64, f64)) -> Point {
        let r = 1.0 + 2.0 * (y - self.y_min) / self.y_span;
        polar(-2.0 * PI * x / PERIOD, &approx(r))
    }
}

struct Builder<'t> {
    tube: &'t Tube,
    g: GeoBuilder,
    ids: BTreeMap<VertexKey, usize>,
    edges: BTreeSet<(VertexKey, VertexKey)>,
}

impl Builder<'_> {
    fn vertex(&mut self, h: Hex, a: usize) -> usize {
        let key = self.tube.key(h, a);
        if let Some(&id) = self.ids.get(&key) {
            return id;
        }
        let name = format!("v{}", key.iter().map(|(i, j)| format!("_{i}.{j}")).collect::<String>());
        let id = self.g.vertex(name, self.tube.to_point(self.tube.corner(h, a)));
        self.ids.insert(key, id);
        id
    }

    /// Edge between two corners along the plane polyline `via`; returns false for a repeated pair.
    fn edge(&mut self, from: (Hex, usize), to: (Hex, usize), via: &[(f64, f64)]) -> bool {
        let (x, y) = (self.tube.key(from.0, from.1), self.tube.key(to.0, to.1));
        let pair = if x < y { (x, y) } else { (y, x) };
        if x == y || !self.edges.insert(pair) {
            return false;
        }
        let mut pts = vec![self.tube.corner(from.0, from.1)];
        pts.extend_from_slice(via);
        pts.push(self.tube.corner(to.0, to.1));
        let mut bends = Vec::new();
        for (k, w) in pts.windows(2).enumerate() {
            let (p, q) = (w[0], w[1]);
            if k > 0 {
                bends.push(self.tube.to_point(p));
            }
            let len = ((q.0 - p.0).powi(2) + (q.1 - p.1).powi(2)).sqrt();
            let steps = (len / SAMPLE).ceil().max(1.0) as usize;
            for s in 1..steps {
                let t = s as f64 / steps as f64;
                bends.push(self.tube.to_point((p.0 + (q.0 - p.0) * t, p.1 + (q.1 - p.1) * t)));
            }
        }
        let (u, v) = (self.vertex(from.0, from.1), self.vertex(to.0, to.1));
        self.g.edge(u, v, bends);
        true
    }
}

/// Simple drawing without `XXX` cells on `n = 6m + 6` vertices with `7n - 30` edges: a tube of
/// `m` rings of three hexagons, each carrying `K6` minus its vertical diagonal, one long edge per
/// pair of neighbouring hexagons (continued past the rim where both ends exist), and an uncrossed
/// triangle on the three outermost corners at each end.
pub fn hexgrid_cylinder(m: usize) -> Result<Construction, ConstructionError> {
    if !(1..=16).contains(&m) {
        return Err(ConstructionError::ParameterOutOfRange(format!("hexgrid_cylinder needs 1 <= m <= 16, got {m}")));
    }
    let tube = Tube::new(m as i64);
    let mut b = Builder { tube: &tube, g: GeoBuilder::new(), ids: BTreeMap::new(), edges: BTreeSet::new() };
    let hexes: Vec<Hex> = (0..tube.rows).flat_map(|j| (0..AROUND).map(move |i| (i, j))).collect();
    for &h in &hexes {
        for a in 0..6 {
            for c in a + 1..6 {
                // Corners 1 and 4 are the top and bottom of the hexagon.
                if (a, c) != (1, 4) {
                    b.edge((h, a), (h, c), &[]);
                }
            }
        }
    }
    for &h in &hexes {
        for d in 0..6 {
            let other = tube.step(h, d);
            // Corner at angle 60°·d - 90° of `h`, and its point reflection through the shared side.
            let (a, c) = ((d + 4) % 6, (d + 1) % 6);
            if tube.is_vertex(&tube.key(other, c)) {
                b.edge((h, a), (other, c), &[]);
            }
        }
    }
    for (row, corner, rise) in [(tube.rows - 1, 1, CAP_RISE), (0, 4, -CAP_RISE)] {
        for i in 0..AROUND {
            let (h, next) = ((i, row), (i + 1, row));
            let (p, q) = (tube.corner(h, corner), tube.corner(next, corner));
            b.edge((h, corner), (next, corner), &[(p.0 + 0.5, p.1 + rise), (q.0 - 0.5, q.1 + rise)]);
        }
    }
    let geo = b.g.finish();
    let drawing = geo.planarize()?;
    let n = drawing.vertex_count();
    post(n == 6 * m + 6, || format!("expected {} vertices, found {n}", 6 * m + 6))?;
    post_simple(&drawing)?;
    post_free(&drawing, &["XXX"])?;
    post_edges(&drawing, 7 * n - 30)?;
    let map = drawing.map();
    for (key, &id) in &b.ids {
        if key.iter().all(|h| (1..tube.rows - 1).contains(&h.1)) {
            let v = NodeId(id);
            post(map.degree(v) == 14, || format!("interior vertex {} has degree {}", map.node(v).label, map.degree(v)))?;
        }
    }
    Ok(Construction::new(format!("hexgrid_cylinder({m})"), drawing, Some(geo)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hexgrid_small() {
        for (m, n, e) in [(1, 12, 54), (2, 18, 96), (3, 24, 138), (4, 30, 180)] {
            let c = hexgrid_cylinder(m).unwrap();
            assert_eq!(c.drawing.vertex_count(), n);
            assert_eq!(c.drawing.edge_count(), e);
        }
    }

    #[test]
    fn rejects_zero_rows() {
        assert!(matches!(hexgrid_cylinder(0), Err(ConstructionError::ParameterOutOfRange(_))));
    }
}
