//! Planar geometry over the complex plane: distances to segments, convex
//! hulls, halfplane intersections and convex polygons.
//!
//! All polygon distances are exact edge/vertex projections; no iterative
//! solver is involved. Degenerate hulls (a segment or a single point) are
//! first-class citizens since Hermitian matrices produce exactly those.

use num_complex::Complex64 as C64;

fn cross(o: C64, a: C64, b: C64) -> f64 {
    (a.re - o.re) * (b.im - o.im) - (a.im - o.im) * (b.re - o.re)
}

/// Euclidean distance from `z` to the segment `[a, b]` in the plane.
pub fn dist_to_segment(z: C64, a: C64, b: C64) -> f64 {
    let ab = b - a;
    let len_sqr = ab.norm_sqr();
    if len_sqr == 0.0 {
        return (z - a).norm();
    }
    let t = ((z - a).re * ab.re + (z - a).im * ab.im) / len_sqr;
    let t = t.clamp(0.0, 1.0);
    (z - (a + ab * t)).norm()
}

/// Distance from `z` to the real segment `[lo, hi]`.
pub fn dist_to_real_segment(z: C64, lo: f64, hi: f64) -> f64 {
    debug_assert!(lo <= hi);
    if z.re < lo {
        (z - C64::new(lo, 0.0)).norm()
    } else if z.re > hi {
        (z - C64::new(hi, 0.0)).norm()
    } else {
        z.im.abs()
    }
}

/// Convex hull (counterclockwise, no repeated first vertex) via the monotone
/// chain. Collinear point sets collapse to their two extreme points, a single
/// repeated point to one vertex.
pub fn convex_hull(points: &[C64]) -> Vec<C64> {
    let mut pts: Vec<C64> = points.to_vec();
    pts.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    pts.dedup_by(|a, b| a.re == b.re && a.im == b.im);
    let n = pts.len();
    if n <= 2 {
        return pts;
    }
    let mut hull: Vec<C64> = Vec::with_capacity(2 * n);
    for &p in pts.iter() {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
            hull.pop();
        }
        hull.push(p);
    }
    let lower_len = hull.len() + 1;
    for &p in pts.iter().rev().skip(1) {
        while hull.len() >= lower_len && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();
    if hull.is_empty() {
        // fully collinear input: keep the two extremes
        return vec![pts[0], pts[n - 1]];
    }
    hull
}

/// Distance from `z` to a convex region given by its hull vertices
/// (counterclockwise). Returns 0 for interior points; handles point and
/// segment degeneracies.
pub fn dist_to_convex(z: C64, hull: &[C64]) -> f64 {
    match hull.len() {
        0 => f64::INFINITY,
        1 => (z - hull[0]).norm(),
        2 => dist_to_segment(z, hull[0], hull[1]),
        n => {
            let inside = (0..n).all(|i| cross(hull[i], hull[(i + 1) % n], z) >= 0.0);
            if inside {
                return 0.0;
            }
            (0..n)
                .map(|i| dist_to_segment(z, hull[i], hull[(i + 1) % n]))
                .fold(f64::INFINITY, f64::min)
        }
    }
}

/// Distance from `z` to a finite point set (min over points).
pub fn dist_to_point_set(z: C64, points: &[C64]) -> f64 {
    points.iter().map(|&p| (z - p).norm()).fold(f64::INFINITY, f64::min)
}

/// Halfplane `{z : Re(e^{−iθ} z) ≤ s}`, the supporting constraint of a
/// numerical range at direction angle θ.
#[derive(Debug, Clone, Copy)]
pub struct HalfPlane {
    pub theta: f64,
    pub support: f64,
}

impl HalfPlane {
    pub fn contains(&self, z: C64, slack: f64) -> bool {
        self.signed_excess(z) <= slack
    }

    /// `Re(e^{−iθ} z) − s`; positive outside the halfplane.
    pub fn signed_excess(&self, z: C64) -> f64 {
        z.re * self.theta.cos() + z.im * self.theta.sin() - self.support
    }

    /// Boundary line as (point, direction); the halfplane is on the left of
    /// the directed line.
    fn line(&self) -> (C64, C64) {
        let u = C64::new(self.theta.cos(), self.theta.sin());
        let d = C64::new(-self.theta.sin(), self.theta.cos());
        (u * self.support, d)
    }
}

fn line_intersection(p1: C64, d1: C64, p2: C64, d2: C64) -> Option<C64> {
    let denom = d1.re * d2.im - d1.im * d2.re;
    if denom.abs() < 1e-300 {
        return None;
    }
    let t = ((p2.re - p1.re) * d2.im - (p2.im - p1.im) * d2.re) / denom;
    Some(p1 + d1 * t)
}

/// Vertices of the intersection of halfplanes whose angles are sorted
/// ascending over one full turn (the output of a support-function sweep).
/// Returns a counterclockwise polygon; may degenerate to fewer than three
/// vertices when the region has (numerically) empty interior.
pub fn halfplane_intersection(planes: &[HalfPlane]) -> Vec<C64> {
    let lines: Vec<(C64, C64)> = planes.iter().map(|h| h.line()).collect();
    let is_left = |p: C64, idx: usize| -> bool {
        let (lp, ld) = lines[idx];
        cross(lp, lp + ld, p) >= -1e-14 * (1.0 + p.norm())
    };
    let mut deque: Vec<usize> = Vec::with_capacity(planes.len());
    let vertex = |a: usize, b: usize| -> Option<C64> {
        let (p1, d1) = lines[a];
        let (p2, d2) = lines[b];
        line_intersection(p1, d1, p2, d2)
    };
    for i in 0..planes.len() {
        while deque.len() >= 2 {
            let v = vertex(deque[deque.len() - 2], deque[deque.len() - 1]);
            match v {
                Some(v) if !is_left(v, i) => {
                    deque.pop();
                }
                None => {
                    // parallel neighbours: keep the tighter constraint
                    let last = *deque.last().unwrap();
                    if planes[i].support < planes[last].support {
                        deque.pop();
                    } else {
                        break;
                    }
                }
                _ => break,
            }
        }
        while deque.len() >= 2 {
            let v = vertex(deque[0], deque[1]);
            match v {
                Some(v) if !is_left(v, i) => {
                    deque.remove(0);
                }
                _ => break,
            }
        }
        // drop a new plane parallel to and looser than the current tail
        if let Some(&last) = deque.last() {
            let angle_gap = (planes[i].theta - planes[last].theta).rem_euclid(2.0 * std::f64::consts::PI);
            if angle_gap < 1e-12 && planes[i].support >= planes[last].support {
                continue;
            }
        }
        deque.push(i);
    }
    // close the polygon: both ends must respect each other
    loop {
        let mut changed = false;
        if deque.len() >= 3 {
            if let Some(v) = vertex(deque[deque.len() - 2], deque[deque.len() - 1]) {
                if !is_left(v, deque[0]) {
                    deque.pop();
                    changed = true;
                }
            }
        }
        if deque.len() >= 3 {
            if let Some(v) = vertex(deque[0], deque[1]) {
                if !is_left(v, deque[deque.len() - 1]) {
                    deque.remove(0);
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    let k = deque.len();
    let mut verts = Vec::with_capacity(k);
    for i in 0..k {
        if let Some(v) = vertex(deque[i], deque[(i + 1) % k]) {
            verts.push(v);
        }
    }
    verts
}
