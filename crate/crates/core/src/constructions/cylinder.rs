use std::f64::consts::PI;

use super::polar::{approx, polar};
use super::{post, post_edges, post_free, post_no_parallel, post_non_homotopic, post_quasiplanar, Construction, ConstructionError};
use crate::geometry::{GeoBuilder, Point};

const SAMPLE: f64 = 0.1;

/// Two concentric rings of `h` vertices each. Paths are given in `(position, radius)`
/// coordinates, with positions increasing clockwise, and are sampled onto exact circle points.
struct Annulus {
    h: usize,
    g: GeoBuilder,
    rings: [Vec<usize>; 2],
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Ring {
    Inner = 0,
    Outer = 1,
}

impl Ring {
    fn other(self) -> Ring {
        match self {
            Ring::Inner => Ring::Outer,
            Ring::Outer => Ring::Inner,
        }
    }

    /// Radius seen from this ring: the outer ring mirrors the inner layout across radius 2.
    fn r(self, r: f64) -> f64 {
        match self {
            Ring::Inner => r,
            Ring::Outer => 4.0 - r,
        }
    }

    fn tag(self) -> &'static str {
        match self {
            Ring::Inner => "a",
            Ring::Outer => "b",
        }
    }
}

impl Annulus {
    fn new(h: usize) -> Self {
        let mut a = Annulus { h, g: GeoBuilder::new(), rings: [Vec::new(), Vec::new()] };
        for ring in [Ring::Inner, Ring::Outer] {
            for i in 0..h {
                let p = a.point(i as f64, ring.r(1.0));
                let id = a.g.vertex(format!("{}{i}", ring.tag()), p);
                a.rings[ring as usize].push(id);
            }
        }
        a
    }

    fn point(&self, p: f64, r: f64) -> Point {
        polar(-2.0 * PI * p / self.h as f64, &approx(r))
    }

    fn vertex(&self, ring: Ring, i: usize) -> usize {
        self.rings[ring as usize][i % self.h]
    }

    /// Adds an edge through the control points, the first and last of which are its endpoints.
    fn path(&mut self, name: String, ring: Ring, from: (Ring, usize), to: (Ring, usize), ctrl: &[(f64, f64)]) {
        let mut bends = Vec::new();
        for (k, w) in ctrl.windows(2).enumerate() {
            let ((p0, r0), (p1, r1)) = (w[0], w[1]);
            if k > 0 {
                bends.push(self.point(p0, ring.r(r0)));
            }
            let steps = ((p1 - p0).abs() / SAMPLE).ceil().max(1.0) as usize;
            for j in 1..steps {
                let t = j as f64 / steps as f64;
                bends.push(self.point(p0 + (p1 - p0) * t, ring.r(r0 + (r1 - r0) * t)));
            }
        }
        let (t, h) = (self.vertex(from.0, from.1), self.vertex(to.0, to.1));
        self.g.edge_named(name, t, h, bends);
    }

    fn finish(self) -> crate::geometry::GeometricDrawing {
        self.g.finish()
    }
}

fn check_n(name: &str, n: usize) -> Result<usize, ConstructionError> {
    if n < 14 || n % 2 == 1 || n > 80 {
        return Err(ConstructionError::ParameterOutOfRange(format!("{name} needs even 14 <= n <= 80, got {n}")));
    }
    Ok(n / 2)
}

/// Zig-zag strip inside the ring: edge `k` joins two positions at distance `4 + k`, consecutive
/// edges share an endpoint and no two edges of the strip cross.
fn zigzag(h: usize, shift: usize) -> Vec<(usize, usize)> {
    let h = h as i64;
    let pos = |k: i64| -> i64 {
        if k % 2 == 0 {
            k / 2
        } else {
            -4 - k / 2
        }
    };
    (0..h - 7)
        .map(|k| {
            let (x, y) = (pos(k), pos(k + 1));
            let (lo, hi) = if x < y { (x, y) } else { (y, x) };
            ((lo + shift as i64 + 2 * h) as usize, (hi + shift as i64 + 2 * h) as usize)
        })
        .collect()
}

fn quasiplanar_layout(h: usize) -> Annulus {
    let mut a = Annulus::new(h);
    let hf = h as f64;
    use Ring::{Inner, Outer};
    for i in 0..h {
        let p = i as f64;
        for ring in [Inner, Outer] {
            let t = ring.tag();
            a.path(format!("{t}{i}-{t}{}", (i + 1) % h), ring, (ring, i), (ring, i + 1), &[(p, 1.0), (p + 1.0, 1.0)]);
        }
        a.path(format!("a{i}-b{i}"), Inner, (Inner, i), (Outer, i), &[(p, 1.0), (p, 3.0)]);
        for ring in [Inner, Outer] {
            let (t, o) = (ring.tag(), ring.other().tag());
            let j = (i + 1) % h;
            a.path(format!("{t}{i}-{o}{j}"), ring, (ring, i), (ring.other(), j), &[(p, 1.0), (p + 1.0, 3.0)]);
        }
        for ring in [Inner, Outer] {
            let (t, o) = (ring.tag(), ring.other().tag());
            a.path(
                format!("{t}{i}-{t}{}", (i + 2) % h),
                ring,
                (ring, i),
                (ring, i + 2),
                &[(p, 1.0), (p + 1.0, 0.2), (p + 2.0, 1.0)],
            );
            // From the far ring, across this ring between positions i and i + 1.
            a.path(
                format!("{o}{i}-{t}{}", (i + 2) % h),
                ring,
                (ring.other(), i),
                (ring, i + 2),
                &[(p, 3.0), (p + 0.55, 0.9), (p + 0.8, 0.85), (p + 1.6, 0.85), (p + 2.0, 1.0)],
            );
            // Through the annulus, across this ring between positions i + 1 and i + 2.
            a.path(
                format!("{t}{i}-{t}{}", (i + 3) % h),
                ring,
                (ring, i),
                (ring, i + 3),
                &[(p, 1.0), (p + 0.6, 1.3), (p + 1.15, 1.3), (p + 1.7, 0.55), (p + 2.4, 0.55), (p + 3.0, 1.0)],
            );
        }
    }
    for ring in [Inner, Outer] {
        let t = ring.tag();
        for (z, shift) in [(0, 0), (1, 2)] {
            for (lo, hi) in zigzag(h, shift) {
                let len = (hi - lo) as f64;
                let depth = 0.12 - 0.06 * len / hf - 0.004 * z as f64;
                let ctrl = [(lo as f64, 1.0), (lo as f64 + 0.12, depth), (hi as f64 - 0.12, depth), (hi as f64, 1.0)];
                a.path(format!("{t}{}~{t}{}.z{z}", lo % h, hi % h), ring, (ring, lo), (ring, hi), &ctrl);
            }
        }
    }
    a
}

/// Non-homotopic quasiplanar drawing of a simple graph on `n` vertices with `7.5n - 28` edges,
/// laid out on two concentric rings of `n / 2` vertices.
pub fn cylinder_quasiplanar(n: usize) -> Result<Construction, ConstructionError> {
    let h = check_n("cylinder_quasiplanar", n)?;
    let geo = quasiplanar_layout(h).finish();
    let drawing = geo.planarize()?;
    post_edges(&drawing, 15 * n / 2 - 28)?;
    post_no_parallel(&drawing)?;
    post_non_homotopic(&drawing)?;
    post_quasiplanar(&drawing)?;
    Ok(Construction::new(format!("cylinder_quasiplanar({n})"), drawing, Some(geo)))
}

/// Extends [`cylinder_quasiplanar`] by an edge from every outer vertex to the inner vertex three
/// steps ahead, giving `8n - 28` edges and no `XXX` cell.
pub fn cylinder_threezero_free(n: usize) -> Result<Construction, ConstructionError> {
    let h = check_n("cylinder_threezero_free", n)?;
    let mut a = quasiplanar_layout(h);
    for i in 0..h {
        let p = i as f64;
        a.path(
            format!("b{i}-a{}", (i + 3) % h),
            Ring::Inner,
            (Ring::Outer, i),
            (Ring::Inner, i + 3),
            &[(p, 3.0), (p + 1.15, 1.6), (p + 1.55, 0.85), (p + 1.8, 0.7), (p + 2.5, 0.7), (p + 3.0, 1.0)],
        );
    }
    let geo = a.finish();
    let drawing = geo.planarize()?;
    post_edges(&drawing, 8 * n - 28)?;
    post_no_parallel(&drawing)?;
    post_non_homotopic(&drawing)?;
    post_free(&drawing, &["XXX"])?;
    post(drawing.is_connected(), || "drawing is not connected".into())?;
    Ok(Construction::new(format!("cylinder_threezero_free({n})"), drawing, Some(geo)))
}
