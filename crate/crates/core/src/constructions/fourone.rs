use std::collections::BTreeSet;
use std::f64::consts::PI;

use super::polar::approx;
use super::{post, post_edges, post_free, post_vertices, Construction, ConstructionError};
use crate::geometry::{GeoBuilder, Point};
use crate::map::NodeId;

type V2 = (f64, f64);

fn add(a: V2, b: V2) -> V2 {
    (a.0 + b.0, a.1 + b.1)
}

fn sub(a: V2, b: V2) -> V2 {
    (a.0 - b.0, a.1 - b.1)
}

fn mul(a: V2, s: f64) -> V2 {
    (a.0 * s, a.1 * s)
}

fn dot(a: V2, b: V2) -> f64 {
    a.0 * b.0 + a.1 * b.1
}

fn unit(a: V2) -> V2 {
    mul(a, 1.0 / dot(a, a).sqrt())
}

fn perp(a: V2) -> V2 {
    (-a.1, a.0)
}

fn dir(t: f64) -> V2 {
    (t.cos(), t.sin())
}

/// Largest supported `k`; corridor clearance shrinks quickly beyond it.
const MAX_K: usize = 7;
/// Distance between the disk centres and the centre of the layout.
const SPREAD: f64 = 4.0;
/// Radius at which the outgoing and incoming lanes meet the long connecting segments.
const FAR: f64 = 1.45;

/// One edge of the circular base drawing, through two cluster points.
struct BaseEdge {
    ends: (usize, usize),
    via: [usize; 2],
    diameter: bool,
}

/// An edge through a cluster point: its local direction (oriented along the base edge) and the
/// normal pointing away from the hosted vertex.
struct Line {
    edge: usize,
    u: V2,
    n: V2,
}

struct Cluster {
    at: V2,
    w: V2,
    lines: Vec<Line>,
}

/// Geometry shared by all three disks, in disk-local coordinates with unit rim radius.
struct Local {
    k: usize,
    n: usize,
    edges: Vec<BaseEdge>,
    clusters: Vec<Cluster>,
    /// Point just outside the rim that every corridor heads for.
    gate: V2,
    /// Radius where corridor lanes stop converging and turn outward.
    gate_r: f64,
    /// Size of a cluster neighbourhood.
    scale: f64,
    comb_step: f64,
    grid: usize,
}

impl Local {
    fn half_gap(&self) -> f64 {
        PI / self.n as f64
    }

    fn gap_dir(&self) -> V2 {
        dir(-self.half_gap())
    }

    fn vertex(&self, i: usize) -> V2 {
        dir(2.0 * PI * i as f64 / self.n as f64)
    }

    fn cluster_point(k: usize, n: usize, m: usize) -> V2 {
        let r = (PI * k as f64 / n as f64).cos() / (PI / n as f64).cos();
        mul(dir(2.0 * PI * (m as f64 + (k as f64 + 1.0) / 2.0) / n as f64), r)
    }

    fn new(k: usize) -> Self {
        let n = 3 * k - 1;
        let mut seen = BTreeSet::new();
        let mut edges = Vec::new();
        for j in 0..=k / 2 {
            for i in 0..n {
                let t = (i + k + j) % n;
                if !seen.insert((i.min(t), i.max(t))) {
                    continue;
                }
                edges.push(BaseEdge {
                    ends: (i, t),
                    via: [(i + n - j - 1) % n, (i + 2 * j) % n],
                    diameter: 2 * (k + j) == n,
                });
            }
        }
        let points: Vec<V2> = (0..n).map(|m| Self::cluster_point(k, n, m)).collect();
        let (gate, clearance) = best_gate(n, &points);
        let scale = clearance / 4.0;
        let mut local = Local {
            k,
            n,
            edges,
            clusters: Vec::new(),
            gate,
            gate_r: 1.0 + (dot(gate, gate).sqrt() - 1.0) / 2.0,
            scale,
            comb_step: 0.25 / (n * k) as f64,
            grid: 0,
        };
        local.grid = (2.0 * PI * (1.3 / (8.0 * local.comb_step / 3.0)).sqrt()).ceil() as usize;
        local.clusters = points
            .iter()
            .enumerate()
            .map(|(m, &at)| {
                let mut lines = Vec::new();
                for (e, be) in local.edges.iter().enumerate() {
                    let path = local.base_path(be);
                    for (p, &b) in be.via.iter().enumerate() {
                        if b == m {
                            let (prev, next) = (path[p], path[p + 2 + usize::from(be.diameter && p == 1)]);
                            let u = unit(add(unit(sub(at, prev)), unit(sub(next, at))));
                            lines.push(Line { edge: e, u, n: (0.0, 0.0) });
                        }
                    }
                }
                let w = corridor_direction(&lines, unit(sub(gate, at)));
                for l in &mut lines {
                    let n = perp(l.u);
                    l.n = if dot(n, w) > 0.0 { n } else { mul(n, -1.0) };
                }
                lines.sort_by(|a, b| cross(w, a.n).total_cmp(&cross(w, b.n)));
                Cluster { at, w, lines }
            })
            .collect();
        local
    }

    fn diameter_bend(&self, e: &BaseEdge) -> V2 {
        let i = e.ends.0 as f64;
        mul(dir(2.0 * PI * i / self.n as f64 + PI / 2.0), 0.03 * (1.0 + i / self.n as f64))
    }

    /// The unperturbed polyline of a base edge from its first to its second end.
    fn base_path(&self, e: &BaseEdge) -> Vec<V2> {
        let (k, n) = (self.k, self.n);
        let mut path = vec![self.vertex(e.ends.0), Self::cluster_point(k, n, e.via[0])];
        if e.diameter {
            path.push(self.diameter_bend(e));
        }
        path.push(Self::cluster_point(k, n, e.via[1]));
        path.push(self.vertex(e.ends.1));
        path
    }

    /// Interior points of a base edge with each cluster passage shifted off the cluster point.
    fn body(&self, e: usize) -> Vec<V2> {
        let be = &self.edges[e];
        let (rho, lambda) = (0.2 * self.scale, self.scale);
        let mut out = Vec::new();
        for (p, &m) in be.via.iter().enumerate() {
            let c = &self.clusters[m];
            let l = c.lines.iter().find(|l| l.edge == e).expect("edge passes its cluster");
            let mid = add(c.at, mul(l.n, rho));
            out.push(sub(mid, mul(l.u, lambda)));
            out.push(add(mid, mul(l.u, lambda)));
            if p == 0 && be.diameter {
                out.push(self.diameter_bend(be));
            }
        }
        out
    }

    /// Path of strand `h` of the vertex hosted at cluster `m`, from just past the host to the
    /// far end of its outgoing lane.
    fn strand(&self, m: usize, h: usize) -> Vec<V2> {
        let c = &self.clusters[m];
        let n = c.lines[h].n;
        let (r, t) = (0.5 * self.scale, 0.9 * self.scale);
        let p0 = add(c.at, mul(n, r));
        let p1 = add(p0, mul(c.w, t - r * dot(n, c.w)));
        let d = sub(self.gate, p1);
        let (a, b, q) = (dot(d, d), 2.0 * dot(p1, d), dot(p1, p1) - self.gate_r * self.gate_r);
        let s = (-b + (b * b - 4.0 * a * q).sqrt()) / (2.0 * a);
        let f = add(p1, mul(d, s));
        let far = add(f, mul(self.gap_dir(), FAR - dot(f, self.gap_dir())));
        vec![p0, p1, f, far]
    }

    /// Start angle of incoming lane `q` on the far side of the gap.
    fn arrival(&self, q: usize) -> f64 {
        let hg = self.half_gap();
        let lanes = (self.n * self.k - 1) as f64;
        -hg - 0.3 * hg - 0.8 * hg * q as f64 / lanes
    }

    fn comb_radius(&self, q: usize) -> f64 {
        1.01 + self.comb_step * q as f64
    }

    /// Angle where slot `s` of vertex `i` leaves the comb for the rim.
    fn drop_angle(&self, i: usize, s: usize) -> f64 {
        let spacing = 0.15 * 2.0 * PI / (self.n * self.k) as f64;
        2.0 * PI * i as f64 / self.n as f64 - 2.0 * PI + spacing * ((self.k as f64 - 1.0) / 2.0 - s as f64)
    }

    /// Incoming lane `q` from the far radius, clockwise around the comb, down to the rim at `to`.
    fn comb(&self, q: usize, to: f64) -> Vec<V2> {
        let (from, r) = (self.arrival(q), self.comb_radius(q));
        let mut out = vec![mul(dir(from), FAR), mul(dir(from), r)];
        let step = 2.0 * PI / self.grid as f64;
        let mut j = (from / step).floor() as i64;
        while j as f64 * step > to {
            let a = j as f64 * step;
            if from - a > 1e-6 && a - to > 1e-6 {
                out.push(mul(dir(a), r));
            }
            j -= 1;
        }
        out.push(mul(dir(to), r));
        out.push(dir(to));
        out
    }
}

fn cross(a: V2, b: V2) -> f64 {
    a.0 * b.1 - a.1 * b.0
}

/// Bisector of the sector between consecutive line directions that contains `d`.
fn corridor_direction(lines: &[Line], d: V2) -> V2 {
    let fold = |v: V2| v.1.atan2(v.0).rem_euclid(PI);
    let mut angles: Vec<f64> = lines.iter().map(|l| fold(l.u)).collect();
    angles.sort_by(f64::total_cmp);
    let a = fold(d);
    let below = angles.iter().rev().find(|&&x| x <= a).copied().unwrap_or(angles[angles.len() - 1] - PI);
    let above = angles.iter().find(|&&x| x > a).copied().unwrap_or(angles[0] + PI);
    let w = dir((below + above) / 2.0);
    if dot(w, d) > 0.0 {
        w
    } else {
        mul(w, -1.0)
    }
}

/// Gate point beyond the gap maximising the least distance from a cluster point to any other
/// cluster's straight corridor.
fn best_gate(n: usize, points: &[V2]) -> (V2, f64) {
    let hg = PI / n as f64;
    let mut best = ((0.0, 0.0), f64::NEG_INFINITY);
    for frac in [0.5, 0.6, 0.7] {
        for s in (2..40).map(|s| s as f64 / 100.0) {
            let x = mul(dir(-hg + frac * hg), 1.0 + s);
            let mut worst = f64::INFINITY;
            for &a in points {
                let d = sub(x, a);
                for &b in points {
                    if a != b {
                        let t = (dot(sub(b, a), d) / dot(d, d)).clamp(0.0, 1.0);
                        let q = sub(add(a, mul(d, t)), b);
                        worst = worst.min(dot(q, q).sqrt());
                    }
                }
            }
            if worst > best.1 {
                best = (x, worst);
            }
        }
    }
    best
}

/// Placement of one disk in the plane.
struct Disk {
    centre: V2,
    turn: f64,
}

impl Disk {
    fn new(c: usize, n: usize) -> Self {
        let phi = PI / 2.0 + 2.0 * PI * c as f64 / 3.0;
        Disk { centre: mul(dir(phi), SPREAD), turn: phi + PI + PI / n as f64 }
    }

    fn place(&self, p: V2) -> V2 {
        let (c, s) = (self.turn.cos(), self.turn.sin());
        add(self.centre, (c * p.0 - s * p.1, s * p.0 + c * p.1))
    }
}

fn exact(p: V2) -> Point {
    Point::new(approx(p.0), approx(p.1))
}

/// Which cluster hosts each vertex, and the comb lane of each (cluster, strand).
struct Threading {
    host: Vec<usize>,
    lane: Vec<Vec<usize>>,
}

/// Matches the outgoing lanes at the host disk with the comb lanes at the body disk so that the
/// long connecting segments do not cross, and reads off the hosting.
fn thread(local: &Local, host: &Disk, body: &Disk) -> Result<Threading, ConstructionError> {
    let (n, k) = (local.n, local.k);
    let outs: Vec<(usize, usize, V2)> = (0..n)
        .flat_map(|m| (0..k).map(move |h| (m, h)))
        .map(|(m, h)| (m, h, host.place(local.strand(m, h)[3])))
        .collect();
    let ins: Vec<V2> = (0..n * k).map(|q| body.place(mul(dir(local.arrival(q)), FAR))).collect();
    let mean = |ps: &mut dyn Iterator<Item = V2>| {
        let v: Vec<V2> = ps.collect();
        mul(v.iter().fold((0.0, 0.0), |a, &b| add(a, b)), 1.0 / v.len() as f64)
    };
    let across = perp(unit(sub(mean(&mut ins.iter().copied()), mean(&mut outs.iter().map(|o| o.2)))));
    let mut out_order: Vec<usize> = (0..outs.len()).collect();
    out_order.sort_by(|&a, &b| dot(outs[a].2, across).total_cmp(&dot(outs[b].2, across)));
    let mut in_order: Vec<usize> = (0..ins.len()).collect();
    in_order.sort_by(|&a, &b| dot(ins[a], across).total_cmp(&dot(ins[b], across)));
    let mut lane = vec![vec![0; k]; n];
    for (&o, &q) in out_order.iter().zip(&in_order) {
        lane[outs[o].0][outs[o].1] = q;
    }
    let mut host_of = vec![usize::MAX; n];
    for (m, lanes) in lane.iter().enumerate() {
        let block = lanes[0] / k;
        if lanes.iter().any(|q| q / k != block) {
            return Err(ConstructionError::DegenerateInput(format!("corridor lanes of cluster {m} interleave")));
        }
        host_of[n - 1 - block] = m;
    }
    Ok(Threading { host: host_of, lane })
}

/// Three copies of the circular `k`-regular drawing on `3k - 1` vertices, each vertex moved into
/// a crossing cluster of the next copy so that every one of its edges first crosses a different
/// edge there. No cell is bounded by one vertex and two crossings.
///
/// Works for `k = 2` and odd `k` up to 7. Copies meet pairwise in the corridors, and an edge of
/// one copy can cross an edge of the next twice, so the result is not a simple drawing.
pub fn fourone_free(k: usize) -> Result<Construction, ConstructionError> {
    if !(k == 2 || (k % 2 == 1 && (3..=MAX_K).contains(&k))) {
        return Err(ConstructionError::ParameterOutOfRange(format!(
            "fourone_free needs k = 2 or odd 3 <= k <= {MAX_K}, got {k}"
        )));
    }
    let local = Local::new(k);
    let n = local.n;
    let disks: Vec<Disk> = (0..3).map(|c| Disk::new(c, n)).collect();
    let mut g = GeoBuilder::new();
    let mut ids = Vec::new();
    for c in 0..3 {
        let (host, body) = (&disks[(c + 1) % 3], &disks[c]);
        let th = thread(&local, host, body)?;
        let vs: Vec<usize> =
            (0..n).map(|i| g.vertex(format!("c{c}v{i}"), exact(host.place(local.clusters[th.host[i]].at)))).collect();
        // Path from the host of `i`, for the edge towards `j`, ending on the body disk's rim.
        let half = |i: usize, j: usize| -> Vec<V2> {
            let slot = (j + n - i) % n - local.k;
            let m = th.host[i];
            let h = (0..local.k).find(|&h| th.lane[m][h] % local.k == slot).expect("slot has a strand");
            let mut path: Vec<V2> = local.strand(m, h).into_iter().map(|p| host.place(p)).collect();
            path.extend(local.comb(th.lane[m][h], local.drop_angle(i, slot)).into_iter().map(|p| body.place(p)));
            path
        };
        for (e, be) in local.edges.iter().enumerate() {
            let (i, j) = be.ends;
            let mut path = half(i, j);
            path.extend(local.body(e).into_iter().map(|p| body.place(p)));
            path.extend(half(j, i).into_iter().rev());
            g.edge_named(format!("c{c}e{i}_{j}"), vs[i], vs[j], path.into_iter().map(exact).collect());
        }
        ids.extend(vs);
    }
    let geo = g.finish();
    let drawing = geo.planarize()?;
    post_vertices(&drawing, 3 * n)?;
    post_edges(&drawing, 3 * n * k / 2)?;
    let map = drawing.map();
    for &v in &ids {
        let d = map.degree(NodeId(v));
        post(d == k, || format!("vertex {} has degree {d}, expected {k}", map.node(NodeId(v)).label))?;
    }
    post_free(&drawing, &["VXX"])?;
    Ok(Construction::new(format!("fourone_free({k})"), drawing, Some(geo)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map::EdgeId;
    use crate::properties::{common_points, is_connected_drawing, is_simple_drawing};

    #[test]
    fn small_cases() {
        for (k, n, e) in [(2, 15, 15), (3, 24, 36)] {
            let c = fourone_free(k).unwrap();
            assert_eq!(c.drawing.vertex_count(), n);
            assert_eq!(c.drawing.edge_count(), e);
            assert!(is_connected_drawing(&c.drawing));
        }
    }

    #[test]
    fn repeated_meetings_are_between_copies() {
        let c = fourone_free(3).unwrap();
        let d = &c.drawing;
        let copy = |e: EdgeId| d.edge(e).label[1..2].to_string();
        let mut repeated = 0;
        for a in 0..d.edge_count() {
            for b in a + 1..d.edge_count() {
                let (ea, eb) = (EdgeId(a), EdgeId(b));
                let pts = common_points(d, ea, eb);
                if pts.len() >= 2 {
                    repeated += 1;
                    assert_ne!(copy(ea), copy(eb));
                    assert!(pts.iter().all(|&p| !d.is_vertex(p)));
                }
            }
        }
        assert!(repeated > 0);
        assert!(is_simple_drawing(d).is_err());
    }

    #[test]
    fn rejects_even_k() {
        for k in [0, 1, 4, 9] {
            assert!(matches!(fourone_free(k), Err(ConstructionError::ParameterOutOfRange(_))));
        }
    }
}
