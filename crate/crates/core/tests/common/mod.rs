#![allow(dead_code)]

use std::cmp::Ordering;

use celldraw::geometry::{orient, GeoBuilder, GeometricDrawing, Point, Rational};
use celldraw::map::Drawing;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A connected random drawing on 2..=5 vertices with 1..=`max_edges` straight or once-bent
/// edges at small integer coordinates; degenerate samples are redrawn.
pub fn random_drawing(rng: &mut ChaCha8Rng, max_edges: usize) -> (GeometricDrawing, Drawing) {
    loop {
        let n = rng.gen_range(2..=5);
        let m = rng.gen_range(1..=max_edges);
        let mut g = GeoBuilder::new();
        let mut used = Vec::new();
        let vs: Vec<usize> = (0..n)
            .map(|i| loop {
                let p = (rng.gen_range(0..12i64), rng.gen_range(0..12i64));
                if !used.contains(&p) {
                    used.push(p);
                    break g.vertex(format!("v{i}"), Point::from_ints(p.0, p.1));
                }
            })
            .collect();
        for _ in 0..m {
            let a = rng.gen_range(0..n);
            let b = (a + rng.gen_range(1..n)) % n;
            let bends = if rng.gen_bool(0.6) {
                vec![Point::from_ints(rng.gen_range(-3..15), rng.gen_range(-3..15))]
            } else {
                vec![]
            };
            g.edge(vs[a], vs[b], bends);
        }
        let geo = g.finish();
        if let Ok(d) = geo.planarize() {
            if d.map().components().0 == 1 {
                return (geo, d);
            }
        }
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Proper crossing point of segments `ab` and `cd`, if their interiors cross transversally.
pub fn segment_crossing(a: &Point, b: &Point, c: &Point, d: &Point) -> Option<Point> {
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    let opposite = |x: Ordering, y: Ordering| x != Ordering::Equal && y != Ordering::Equal && x != y;
    if !(opposite(o1, o2) && opposite(o3, o4)) {
        return None;
    }
    let cross = |p: &Point, q: &Point| &p.x * &q.y - &p.y * &q.x;
    let r = b.sub(a);
    let s = d.sub(c);
    let t: Rational = cross(&c.sub(a), &s) / cross(&r, &s);
    Some(a.lerp(b, &t))
}

fn on_closed_segment(a: &Point, b: &Point, p: &Point) -> bool {
    let within = |u: &Rational, v: &Rational, w: &Rational| (u <= w && w <= v) || (v <= w && w <= u);
    orient(a, b, p) == Ordering::Equal && within(&a.x, &b.x, &p.x) && within(&a.y, &b.y, &p.y)
}

/// Directions from `p` to the polyline's neighbouring points, where `p` lies on the polyline.
fn local_directions(line: &[Point], p: &Point) -> Option<(Point, Point)> {
    if let Some(i) = line.iter().position(|q| q == p) {
        if i == 0 || i == line.len() - 1 {
            return None;
        }
        return Some((line[i - 1].sub(p), line[i + 1].sub(p)));
    }
    line.windows(2).find(|w| on_closed_segment(&w[0], &w[1], p)).map(|w| (w[0].sub(p), w[1].sub(p)))
}

fn cross(p: &Point, q: &Point) -> Rational {
    &p.x * &q.y - &p.y * &q.x
}

/// Whether direction `d` lies strictly inside the counterclockwise sweep from `a` to `b`.
fn swept(a: &Point, b: &Point, d: &Point) -> bool {
    let zero = Rational::from_integer(0.into());
    let ab = cross(a, b);
    let (ad, db) = (cross(a, d), cross(d, b));
    if ab > zero {
        ad > zero && db > zero
    } else if ab < zero {
        !(cross(b, d) >= zero && cross(d, a) >= zero)
    } else {
        ad > zero
    }
}

/// Every crossing of a geometric drawing by brute force over all segment pairs, as
/// `(lower edge id, higher edge id, point)` sorted. A common point counts when the two
/// polylines pass through each other there, including at bends.
pub fn all_pairs_crossings(g: &GeometricDrawing) -> Vec<(String, String, Point)> {
    let pos = |id: &str| g.vertices.iter().find(|v| v.id == id).expect("known vertex").pos.clone();
    let polylines: Vec<(String, Vec<Point>)> = g
        .edges
        .iter()
        .map(|e| {
            let mut pts = vec![pos(&e.tail)];
            pts.extend(e.bends.iter().cloned());
            pts.push(pos(&e.head));
            (e.id.clone(), pts)
        })
        .collect();
    let mut out = Vec::new();
    for i in 0..polylines.len() {
        for j in i + 1..polylines.len() {
            let (ei, pi) = &polylines[i];
            let (ej, pj) = &polylines[j];
            let mut candidates: Vec<Point> = Vec::new();
            for s in pi.windows(2) {
                for t in pj.windows(2) {
                    candidates.extend(segment_crossing(&s[0], &s[1], &t[0], &t[1]));
                }
            }
            for (bends, other) in [(pi, pj), (pj, pi)] {
                for b in &bends[1..bends.len() - 1] {
                    if other.windows(2).any(|w| on_closed_segment(&w[0], &w[1], b)) {
                        candidates.push(b.clone());
                    }
                }
            }
            candidates.sort_by(|a, b| (&a.x, &a.y).cmp(&(&b.x, &b.y)));
            candidates.dedup();
            for p in candidates {
                let (Some((a1, a2)), Some((b1, b2))) = (local_directions(pi, &p), local_directions(pj, &p)) else {
                    continue;
                };
                if swept(&a1, &a2, &b1) != swept(&a1, &a2, &b2) {
                    let (x, y) = if ei <= ej { (ei.clone(), ej.clone()) } else { (ej.clone(), ei.clone()) };
                    out.push((x, y, p));
                }
            }
        }
    }
    out.sort_by(|a, b| (&a.0, &a.1, &a.2.x, &a.2.y).cmp(&(&b.0, &b.1, &b.2.x, &b.2.y)));
    out
}

/// Even-odd test for a point strictly inside a closed polygon; `None` on the boundary.
pub fn strictly_inside(poly: &[Point], p: &Point) -> Option<bool> {
    let n = poly.len();
    let mut inside = false;
    for i in 0..n {
        let (a, b) = (&poly[i], &poly[(i + 1) % n]);
        if orient(a, b, p) == Ordering::Equal {
            let within = |u: &Rational, v: &Rational, w: &Rational| (u <= w && w <= v) || (v <= w && w <= u);
            if within(&a.x, &b.x, &p.x) && within(&a.y, &b.y, &p.y) {
                return None;
            }
        }
        if (a.y > p.y) != (b.y > p.y) {
            // x-coordinate of the edge at height p.y, compared without division.
            let lhs = (&b.x - &a.x) * (&p.y - &a.y);
            let rhs = (&p.x - &a.x) * (&b.y - &a.y);
            let right_of_p = if b.y > a.y { lhs > rhs } else { lhs < rhs };
            if right_of_p {
                inside = !inside;
            }
        }
    }
    Some(inside)
}
