use std::f64::consts::PI;

use num_traits::One;

use super::polar::{approx, arc_interior, polar};
use super::surgery::route_edge;
use super::{post, post_complete, post_free, post_simple, Construction, ConstructionError};
use crate::cells::census;
use crate::geometry::{int, rat, GeoBuilder, GeoEdge, GeoVertex, GeometricDrawing, Point, Rational};
use crate::map::{Drawing, NodeId};

/// Complete graph on `n` collinear vertices, each edge drawn as a flattened wedge above the line.
pub fn wedge_complete(n: usize) -> Result<Construction, ConstructionError> {
    if !(4..=40).contains(&n) {
        return Err(ConstructionError::ParameterOutOfRange(format!("wedge_complete needs 4 <= n <= 40, got {n}")));
    }
    let nn = n as i64;
    let eps = rat(1, nn.pow(4));
    let one = Rational::one();
    let up = |j: i64| &one / (&one + int(nn - j) * &eps);
    let down = |i: i64| &one / (&one + int(i) * &eps);

    let mut g = GeoBuilder::new();
    let vs: Vec<usize> = (0..nn).map(|i| g.vertex(format!("v{i}"), Point::from_ints(i, 0))).collect();
    for i in 0..nn {
        for j in i + 1..nn {
            let (a, b) = (up(j), down(i));
            let x = (&a * int(i) + &b * int(j)) / (&a + &b);
            let y = &a * (&x - int(i));
            g.edge_named(format!("e{i}_{j}"), vs[i as usize], vs[j as usize], vec![Point::new(x, y)]);
        }
    }
    let geo = g.finish();
    let drawing = geo.planarize()?;

    post_complete(&drawing)?;
    post_simple(&drawing)?;
    post_free(&drawing, &["VXXX"])?;
    let c = census(&drawing)?;
    let big = c.at_least(6).collect::<Vec<_>>();
    post(big.len() == 1 && c.cells[big[0]].size == 2 * n, || {
        format!("expected one large cell of size {}, sizes {:?}", 2 * n, c.size_histogram())
    })?;
    Ok(Construction::new(format!("wedge_complete({n})"), drawing, Some(geo)))
}

struct Circle {
    n: usize,
    theta: Vec<f64>,
}

impl Circle {
    fn new(n: usize) -> Self {
        let step = 2.0 * PI / n as f64;
        let theta = (0..n).map(|i| -PI + step * (i as f64 + 0.5) + 0.03 * step * (1.7 * i as f64 + 0.3).sin()).collect();
        Circle { n, theta }
    }

    /// Unwrapped angle of vertex `i mod n`, shifted by full turns.
    fn th(&self, i: usize) -> f64 {
        self.theta[i % self.n] + 2.0 * PI * (i / self.n) as f64
    }
}

/// Complete graph on `n` vertices in convex position without `VVX` cells.
///
/// Every edge of the result is crossed. Odd `n` adds a vertex near the center joined by straight
/// segments; a spoke that would stay uncrossed is rerouted through the interior as a polyline.
pub fn convex_5_2_free(n: usize) -> Result<Construction, ConstructionError> {
    if !(8..=30).contains(&n) {
        return Err(ConstructionError::ParameterOutOfRange(format!("convex_5_2_free needs 8 <= n <= 30, got {n}")));
    }
    let m = n - n % 2;
    let base = convex_even_geometry(m);
    let name = format!("convex_5_2_free({n})");
    if n % 2 == 0 {
        let drawing = check_convex(&base)?;
        return Ok(Construction::new(name, drawing, Some(base)));
    }
    let center = Point::new(rat(1, 97), rat(1, 89));
    let mut last = None;
    for z in std::iter::once(center).chain(center_candidates(&base)?) {
        match with_center(&base, z) {
            Ok((geo, drawing)) => return Ok(Construction::new(name, drawing, geo)),
            Err(e) => last = Some(e),
        }
    }
    Err(last.unwrap_or_else(|| ConstructionError::PostCondition("no admissible position for the extra vertex".into())))
}

fn check_convex(geo: &GeometricDrawing) -> Result<Drawing, ConstructionError> {
    let drawing = geo.planarize()?;
    post_complete(&drawing)?;
    post_simple(&drawing)?;
    post_free(&drawing, &["VVX"])?;
    Ok(drawing)
}

/// Centroids of the crossing-only cells inside the unit disk, nearest to the origin first.
fn center_candidates(base: &GeometricDrawing) -> Result<Vec<Point>, ConstructionError> {
    let p = base.planarize_with_positions()?;
    let d = &p.drawing;
    let one = Rational::one();
    let mut out: Vec<(f64, Point)> = Vec::new();
    for walk in d.trace_faces() {
        let nodes: Vec<NodeId> = walk.iter().map(|&w| d.map().origin(w)).collect();
        if nodes.iter().any(|&v| d.is_vertex(v)) {
            continue;
        }
        let pts: Vec<&Point> = nodes.iter().map(|v| &p.node_pos[v.0]).collect();
        if pts.iter().any(|q| &q.x * &q.x + &q.y * &q.y >= one) {
            continue;
        }
        let k = int(pts.len() as i64);
        let sx = pts.iter().fold(int(0), |acc, q| acc + &q.x) / &k;
        let sy = pts.iter().fold(int(0), |acc, q| acc + &q.y) / &k;
        let z = Point::new(sx, sy);
        let (x, y) = z.to_f64();
        out.push((x * x + y * y, z));
    }
    out.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(out.into_iter().map(|(_, z)| z).collect())
}

/// Adds vertex `z` joined to every vertex by a straight segment. Spokes that would be uncrossed or
/// would cross an edge sharing an endpoint are instead routed combinatorially, in which case no
/// geometry is returned.
fn with_center(base: &GeometricDrawing, z: Point) -> Result<(Option<GeometricDrawing>, Drawing), ConstructionError> {
    let mut geo = base.clone();
    let m = geo.vertices.len();
    let zid = format!("v{m}");
    geo.vertices.push(GeoVertex { id: zid.clone(), pos: z });
    for v in &base.vertices {
        let i = &v.id[1..];
        geo.edges.push(GeoEdge { id: format!("e{i}_{m}"), tail: v.id.clone(), head: zid.clone(), bends: vec![] });
    }
    let first = base.edges.len();
    let records = geo.intersect_all()?;
    let bad: Vec<usize> = (first..geo.edges.len())
        .filter(|&s| {
            let mine: Vec<usize> = records
                .iter()
                .filter_map(|r| match r.edges {
                    (a, b) if a == s => Some(b),
                    (a, b) if b == s => Some(a),
                    _ => None,
                })
                .collect();
            let e = &geo.edges[s];
            mine.is_empty()
                || mine.iter().any(|&o| {
                    let f = &geo.edges[o];
                    [&f.tail, &f.head].iter().any(|v| **v == e.tail || **v == e.head)
                })
        })
        .collect();
    if bad.is_empty() {
        let drawing = check_convex(&geo)?;
        return Ok((Some(geo), drawing));
    }
    let mut removed = Vec::new();
    for &s in bad.iter().rev() {
        removed.push(geo.edges.remove(s));
    }
    let mut drawing = geo.planarize()?;
    for e in removed.iter().rev() {
        let v = geo.vertices.iter().position(|x| x.id == e.tail).unwrap_or(0);
        drawing = route_edge(&drawing, NodeId(v), NodeId(m), &e.id)?;
    }
    post_complete(&drawing)?;
    post_simple(&drawing)?;
    post_free(&drawing, &["VVX"])?;
    Ok((None, drawing))
}

fn convex_even_geometry(m: usize) -> GeometricDrawing {
    let c = Circle::new(m);
    let step = 2.0 * PI / m as f64;
    let delta = 1.0 / 40.0;
    let level = |k: usize| approx(1.0 + k as f64 * delta);
    let (a1, a2, b) = (level(1), level(2), level(3));
    let phi0 = 0.25 * delta;
    let psi = 0.2 * step;
    let arc_step = 0.1;
    let half = m / 2;

    let outside_diam: Vec<usize> = (0..half).filter(|&k| k % 2 == 1 || half % 2 == 1).collect();

    let mut g = GeoBuilder::new();
    let one = Rational::one();
    let vs: Vec<usize> = (0..m).map(|i| g.vertex(format!("v{i}"), polar(c.th(i), &one))).collect();
    let arc = |from: f64, to: f64, rho: &Rational| -> Vec<Point> {
        let mut pts = vec![polar(from, rho)];
        pts.extend(arc_interior(from, to, rho, arc_step));
        pts.push(polar(to, rho));
        pts
    };

    for i in 0..m {
        for k in i + 1..m {
            let gap = k - i;
            let (s, t, len) = if gap <= half { (i, k, gap) } else { (k, i + m, m - gap) };
            let bends = match len {
                2 if s % 2 == 0 => arc(c.th(s) + phi0, c.th(t) - phi0, &b),
                3 if s % 2 == 0 => arc(c.th(s) + phi0, c.th(s + 1) + psi, &a1),
                3 => arc(c.th(s + 2) - psi, c.th(t) - phi0, &a2),
                l if l == half && outside_diam.contains(&s) => {
                    let rank = outside_diam.iter().position(|&x| x == s).unwrap_or(0);
                    arc(c.th(s), c.th(t), &level(4 + rank))
                }
                _ => vec![],
            };
            let (tail, head) = (s % m, t % m);
            g.edge_named(format!("e{}_{}", tail.min(head), tail.max(head)), vs[tail], vs[head], bends);
        }
    }
    g.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wedge_small() {
        for n in [4, 5, 8] {
            let c = wedge_complete(n).unwrap();
            assert_eq!(c.drawing.edge_count(), n * (n - 1) / 2);
        }
        assert!(matches!(wedge_complete(3), Err(ConstructionError::ParameterOutOfRange(_))));
    }

    #[test]
    fn convex_small() {
        for n in [8, 9, 10, 11, 12, 13] {
            let c = convex_5_2_free(n).unwrap_or_else(|e| panic!("n = {n}: {e}"));
            assert_eq!(c.drawing.vertex_count(), n);
        }
    }
}
