//! Floating-point polygon predicates with explicit tolerances.

use alloc::vec::Vec;

pub type Point = [f64; 2];

pub fn sub(a: Point, b: Point) -> Point {
    [a[0] - b[0], a[1] - b[1]]
}

pub fn add(a: Point, b: Point) -> Point {
    [a[0] + b[0], a[1] + b[1]]
}

pub fn scale(a: Point, s: f64) -> Point {
    [a[0] * s, a[1] * s]
}

pub fn dot(a: Point, b: Point) -> f64 {
    a[0] * b[0] + a[1] * b[1]
}

pub fn cross(a: Point, b: Point) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

pub fn norm(a: Point) -> f64 {
    libm::hypot(a[0], a[1])
}

pub fn dist(a: Point, b: Point) -> f64 {
    norm(sub(a, b))
}

/// Reduces an angle into `[0, 2pi)`.
pub fn wrap_angle(v: f64) -> f64 {
    let tau = 2.0 * core::f64::consts::PI;
    let r = libm::fmod(v, tau);
    let r = if r < 0.0 { r + tau } else { r };
    if r >= tau {
        0.0
    } else {
        r
    }
}

/// Shoelace formula; positive for counterclockwise order.
pub fn signed_area(poly: &[Point]) -> f64 {
    let n = poly.len();
    let mut s = 0.0;
    for i in 0..n {
        s += cross(poly[i], poly[(i + 1) % n]);
    }
    s / 2.0
}

pub fn centroid(poly: &[Point]) -> Point {
    let n = poly.len() as f64;
    let s = poly.iter().fold([0.0, 0.0], |acc, &p| add(acc, p));
    scale(s, 1.0 / n)
}

pub fn dist_to_segment(p: Point, a: Point, b: Point) -> f64 {
    let ab = sub(b, a);
    let len2 = dot(ab, ab);
    let t = if len2 == 0.0 {
        0.0
    } else {
        (dot(sub(p, a), ab) / len2).clamp(0.0, 1.0)
    };
    dist(p, add(a, scale(ab, t)))
}

pub fn dist_to_boundary(p: Point, poly: &[Point]) -> f64 {
    let n = poly.len();
    (0..n)
        .map(|i| dist_to_segment(p, poly[i], poly[(i + 1) % n]))
        .fold(f64::INFINITY, f64::min)
}

/// Crossing-number test, strict interior.
pub fn point_in_polygon(p: Point, poly: &[Point]) -> bool {
    let n = poly.len();
    let mut inside = false;
    let mut j = n - 1;
    for i in 0..n {
        let (a, b) = (poly[i], poly[j]);
        if (a[1] > p[1]) != (b[1] > p[1]) {
            let x = a[0] + (p[1] - a[1]) * (b[0] - a[0]) / (b[1] - a[1]);
            if p[0] < x {
                inside = !inside;
            }
        }
        j = i;
    }
    inside
}

fn in_closed_triangle(p: Point, t: &[Point; 3]) -> bool {
    (0..3).all(|i| cross(sub(t[(i + 1) % 3], t[i]), sub(p, t[i])) >= 0.0)
}

/// How far `p` lies outside `poly`: 0 when inside or on the boundary.
pub fn outside_distance(p: Point, poly: &[Point]) -> f64 {
    if point_in_polygon(p, poly) {
        0.0
    } else {
        dist_to_boundary(p, poly)
    }
}

/// Ear-clipping triangulation of a simple counterclockwise polygon.
pub fn triangulate(poly: &[Point]) -> Vec<[Point; 3]> {
    let mut idx: Vec<usize> = (0..poly.len()).collect();
    let mut out = Vec::new();
    let mut guard = 0;
    while idx.len() > 3 && guard < 10 * poly.len() * poly.len() {
        guard += 1;
        let n = idx.len();
        let mut clipped = false;
        for k in 0..n {
            let (a, b, c) = (
                poly[idx[(k + n - 1) % n]],
                poly[idx[k]],
                poly[idx[(k + 1) % n]],
            );
            if cross(sub(b, a), sub(c, b)) <= 0.0 {
                continue;
            }
            let tri = [a, b, c];
            let blocked = idx
                .iter()
                .map(|&i| poly[i])
                .filter(|p| *p != a && *p != b && *p != c)
                .any(|p| in_closed_triangle(p, &tri));
            if !blocked {
                out.push(tri);
                idx.remove(k);
                clipped = true;
                break;
            }
        }
        if !clipped {
            break;
        }
    }
    if idx.len() == 3 {
        out.push([poly[idx[0]], poly[idx[1]], poly[idx[2]]]);
    }
    out
}

/// Minimum over separating-axis candidates of the overlap of the projections
/// of two convex polygons. Positive means the interiors intersect by at
/// least that depth; 0 or negative means they are separated.
pub fn penetration(p: &[Point], q: &[Point]) -> f64 {
    let mut best = f64::INFINITY;
    for poly in [p, q] {
        let n = poly.len();
        for i in 0..n {
            let e = sub(poly[(i + 1) % n], poly[i]);
            let len = norm(e);
            if len == 0.0 {
                continue;
            }
            let axis = [-e[1] / len, e[0] / len];
            let (amin, amax) = project(p, axis);
            let (bmin, bmax) = project(q, axis);
            let overlap = amax.min(bmax) - amin.max(bmin);
            best = best.min(overlap);
        }
    }
    best
}

fn project(poly: &[Point], axis: Point) -> (f64, f64) {
    poly.iter()
        .map(|&v| dot(v, axis))
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), d| {
            (lo.min(d), hi.max(d))
        })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BBox {
    pub min: Point,
    pub max: Point,
}

impl BBox {
    pub fn empty() -> Self {
        BBox {
            min: [f64::INFINITY; 2],
            max: [f64::NEG_INFINITY; 2],
        }
    }

    pub fn of(points: &[Point]) -> Self {
        let mut b = Self::empty();
        points.iter().for_each(|&p| b.add(p));
        b
    }

    pub fn add(&mut self, p: Point) {
        self.min = [self.min[0].min(p[0]), self.min[1].min(p[1])];
        self.max = [self.max[0].max(p[0]), self.max[1].max(p[1])];
    }

    pub fn union(&mut self, o: &BBox) {
        self.add(o.min);
        self.add(o.max);
    }

    pub fn diameter(&self) -> f64 {
        if self.min[0] > self.max[0] {
            0.0
        } else {
            dist(self.min, self.max)
        }
    }
}

/// Radius of the largest disc centred at the incenter-like point (vertex
/// average) that fits; exact incircle for triangles.
pub fn inradius(poly: &[Point]) -> f64 {
    if poly.len() == 3 {
        let per: f64 = (0..3).map(|i| dist(poly[i], poly[(i + 1) % 3])).sum();
        return 2.0 * libm::fabs(signed_area(poly)) / per;
    }
    dist_to_boundary(centroid(poly), poly)
}

/// The incenter of a triangle, otherwise the vertex average.
pub fn incenter(poly: &[Point]) -> Point {
    if poly.len() == 3 {
        let w: [f64; 3] = core::array::from_fn(|i| dist(poly[(i + 1) % 3], poly[(i + 2) % 3]));
        let s = w[0] + w[1] + w[2];
        return [
            (w[0] * poly[0][0] + w[1] * poly[1][0] + w[2] * poly[2][0]) / s,
            (w[0] * poly[0][1] + w[1] * poly[1][1] + w[2] * poly[2][1]) / s,
        ];
    }
    centroid(poly)
}

#[cfg(test)]
mod tests {
    use super::*;

    const SQ: [Point; 4] = [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]];

    #[test]
    fn areas_and_containment() {
        assert_eq!(signed_area(&SQ), 1.0);
        let mut cw = SQ;
        cw.reverse();
        assert_eq!(signed_area(&cw), -1.0);
        assert!(point_in_polygon([0.5, 0.5], &SQ));
        assert!(!point_in_polygon([1.5, 0.5], &SQ));
        assert!((outside_distance([1.5, 0.5], &SQ) - 0.5).abs() < 1e-15);
        assert_eq!(outside_distance([0.2, 0.2], &SQ), 0.0);
    }

    #[test]
    fn triangulation_preserves_area() {
        let l = [
            [0.0, 0.0],
            [2.0, 0.0],
            [2.0, 1.0],
            [1.0, 1.0],
            [1.0, 2.0],
            [0.0, 2.0],
        ];
        let tris = triangulate(&l);
        assert_eq!(tris.len(), 4);
        let total: f64 = tris.iter().map(|t| signed_area(t)).sum();
        assert!((total - 3.0).abs() < 1e-12);
        assert!(tris.iter().all(|t| signed_area(t) > 0.0));
    }

    #[test]
    fn penetration_depths() {
        let t1 = [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]];
        let t2 = [[1.0, 1.0], [0.0, 1.0], [1.0, 0.0]];
        // share the diagonal: touching, not overlapping
        assert!(penetration(&t1, &t2).abs() < 1e-15);
        let shifted = [[0.5, 0.0], [1.5, 0.0], [0.5, 1.0]];
        assert!(penetration(&t1, &shifted) > 0.3);
        let far = [[5.0, 5.0], [6.0, 5.0], [5.0, 6.0]];
        assert!(penetration(&t1, &far) < 0.0);
    }

    #[test]
    fn incircle() {
        let t = [[0.0, 0.0], [4.0, 0.0], [0.0, 3.0]];
        assert!((inradius(&t) - 1.0).abs() < 1e-15);
        let c = incenter(&t);
        assert!((c[0] - 1.0).abs() < 1e-15 && (c[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn wrapping() {
        let tau = 2.0 * core::f64::consts::PI;
        assert!((wrap_angle(-0.5) - (tau - 0.5)).abs() < 1e-15);
        assert!((wrap_angle(tau + 0.25) - 0.25).abs() < 1e-14);
    }
}
