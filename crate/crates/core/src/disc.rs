//! The punctured rectangle and the polyline primitives built on it.

use std::collections::BTreeSet;

use num_traits::Zero;

use crate::code::Anchor;
use crate::error::{Error, Result};
use crate::geom::{locate, q, qi, segment_hit, Inside, Point, SegHit, Q};

/// Rectangle `[0, m+1] x [0, 1]`, puncture `j` at `(j, 1/2)`, wall `j`
/// from the puncture straight down to `(j, 0)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscModel {
    pub m: usize,
    pub punctures: Vec<Point>,
    pub walls: Vec<(Point, Point)>,
}

pub fn make_disc_model(m: usize) -> Result<DiscModel> {
    if m < 2 {
        return Err(Error::InvalidParameter(format!("need at least 2 interior punctures, got {m}")));
    }
    let punctures: Vec<Point> = (1..=m as i64).map(|j| Point::new(qi(j), q(1, 2))).collect();
    let walls = punctures.iter().map(|p| (p.clone(), Point::new(p.x.clone(), Q::zero()))).collect();
    Ok(DiscModel { m, punctures, walls })
}

impl DiscModel {
    /// |χ| of the sphere with m + 1 punctures.
    pub fn euler_abs(&self) -> usize {
        self.m - 1
    }

    pub fn width(&self) -> Q {
        qi(self.m as i64 + 1)
    }

    /// Corners in counterclockwise order.
    pub fn rect(&self) -> Vec<Point> {
        let w = self.m as i64 + 1;
        vec![Point::int(0, 0), Point::int(w, 0), Point::int(w, 1), Point::int(0, 1)]
    }

    pub fn puncture(&self, j: usize) -> &Point {
        &self.punctures[j - 1]
    }

    pub fn on_boundary(&self, p: &Point) -> bool {
        p.x.is_zero() || p.y.is_zero() || p.x == self.width() || p.y == qi(1)
    }

    pub fn anchor_point_ok(&self, a: Anchor, p: &Point) -> bool {
        match a {
            Anchor::Puncture(j) => p == self.puncture(j),
            Anchor::Boundary => self.on_boundary(p),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PLArc {
    pub vertices: Vec<Point>,
    pub start: Anchor,
    pub end: Anchor,
}

impl PLArc {
    pub fn segments(&self) -> impl Iterator<Item = (&Point, &Point)> {
        self.vertices.windows(2).map(|w| (&w[0], &w[1]))
    }

    pub fn reversed(&self) -> PLArc {
        let mut v = self.vertices.clone();
        v.reverse();
        PLArc { vertices: v, start: self.end, end: self.start }
    }

    /// Checks the polyline invariants against `model`.
    pub fn validate(&self, model: &DiscModel) -> Result<()> {
        let n = self.vertices.len();
        if n < 2 {
            return Err(Error::Degenerate("polyline needs two vertices".into()));
        }
        if self.vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Degenerate("zero-length segment".into()));
        }
        if !model.anchor_point_ok(self.start, &self.vertices[0])
            || !model.anchor_point_ok(self.end, &self.vertices[n - 1])
        {
            return Err(Error::Degenerate("anchor vertex misplaced".into()));
        }
        for v in &self.vertices[1..n - 1] {
            if model.on_boundary(v) {
                return Err(Error::Degenerate(format!("interior vertex {v:?} on the boundary")));
            }
        }
        for (i, (a, b)) in self.segments().enumerate() {
            for (j, p) in model.punctures.iter().enumerate() {
                let at_start = i == 0 && self.start == Anchor::Puncture(j + 1) && p == a;
                let at_end = i == n - 2 && self.end == Anchor::Puncture(j + 1) && p == b;
                if !at_start && !at_end && crate::geom::on_segment(p, a, b) {
                    return Err(Error::Degenerate(format!("segment {i} meets puncture {}", j + 1)));
                }
            }
        }
        Ok(())
    }

    /// Scales every coordinate; used by the scale-invariance checks.
    pub fn scaled(&self, s: &Q) -> PLArc {
        PLArc { vertices: self.vertices.iter().map(|p| p.scaled(s)).collect(), start: self.start, end: self.end }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Crossing {
    pub point: Point,
    pub seg_a: usize,
    pub seg_b: usize,
    /// Parameter of the crossing along segment `seg_a` of the first arc.
    pub s: Q,
    pub t: Q,
}

fn bbox(a: &Point, b: &Point) -> [f64; 4] {
    let (ax, ay) = a.to_f64();
    let (bx, by) = b.to_f64();
    let e = 1e-9;
    [ax.min(bx) - e, ay.min(by) - e, ax.max(bx) + e, ay.max(by) + e]
}

fn boxes_meet(u: &[f64; 4], v: &[f64; 4]) -> bool {
    u[0] <= v[2] && v[0] <= u[2] && u[1] <= v[3] && v[1] <= u[3]
}

/// Interior crossings of two polylines. Contact at a shared puncture anchor
/// is not a crossing; any other touching is a degeneracy error.
pub fn transverse_intersections(a: &PLArc, b: &PLArc) -> Result<Vec<Crossing>> {
    let bb: Vec<[f64; 4]> = b.segments().map(|(u, v)| bbox(u, v)).collect();
    let shared: Vec<&Point> = shared_puncture_points(a, b);
    let mut out = Vec::new();
    for (i, (a0, a1)) in a.segments().enumerate() {
        let ba = bbox(a0, a1);
        for (j, (b0, b1)) in b.segments().enumerate() {
            if !boxes_meet(&ba, &bb[j]) {
                continue;
            }
            match segment_hit(a0, a1, b0, b1) {
                SegHit::None => {}
                SegHit::Cross { s, t } => {
                    out.push(Crossing { point: a0.lerp(a1, &s), seg_a: i, seg_b: j, s, t });
                }
                SegHit::Degenerate => {
                    let excused = shared.iter().any(|p| {
                        let p: &Point = p;
                        (a0 == p || a1 == p) && (b0 == p || b1 == p) && !overlap_from(p, other(a0, a1, p), other(b0, b1, p))
                    });
                    if !excused {
                        return Err(Error::Degenerate(format!("segments {i} and {j} touch")));
                    }
                }
            }
        }
    }
    Ok(out)
}

fn other<'a>(u: &'a Point, v: &'a Point, p: &Point) -> &'a Point {
    if u == p {
        v
    } else {
        u
    }
}

/// Whether segments `pu` and `pv` overlap beyond their common end `p`.
fn overlap_from(p: &Point, u: &Point, v: &Point) -> bool {
    crate::geom::orient(p, u, v) == std::cmp::Ordering::Equal
        && (&u.x - &p.x) * (&v.x - &p.x) + (&u.y - &p.y) * (&v.y - &p.y) > Q::zero()
}

fn shared_puncture_points<'a>(a: &'a PLArc, b: &PLArc) -> Vec<&'a Point> {
    let mut out = Vec::new();
    let n = a.vertices.len();
    for (anchor, p) in [(a.start, &a.vertices[0]), (a.end, &a.vertices[n - 1])] {
        if let Anchor::Puncture(_) = anchor {
            if anchor == b.start || anchor == b.end {
                out.push(p);
            }
        }
    }
    out
}

/// Punctures strictly inside the closed polygon `boundary`. Punctures that
/// are vertices of the curve (anchor corners) are not inside; a puncture in
/// the relative interior of an edge is a degeneracy error.
pub fn punctures_in_region(boundary: &[Point], model: &DiscModel) -> Result<BTreeSet<usize>> {
    let mut out = BTreeSet::new();
    for (j, p) in model.punctures.iter().enumerate() {
        if boundary.contains(p) {
            continue;
        }
        match locate(p, boundary) {
            Inside::In => {
                out.insert(j + 1);
            }
            Inside::Out => {}
            Inside::OnBoundary => {
                return Err(Error::Degenerate(format!("puncture {} lies on the region boundary", j + 1)));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn model_basics() {
        assert!(make_disc_model(1).is_err());
        let d = make_disc_model(3).unwrap();
        assert_eq!(d.euler_abs(), 2);
        assert_eq!(d.puncture(2), &Point::new(qi(2), q(1, 2)));
        assert_eq!(make_disc_model(2).unwrap().euler_abs(), 1);
        assert_eq!(make_disc_model(4).unwrap().euler_abs(), 3);
    }

    #[test]
    fn whole_rectangle_holds_everything() {
        let d = make_disc_model(4).unwrap();
        let all = punctures_in_region(&d.rect(), &d).unwrap();
        assert_eq!(all.into_iter().collect::<Vec<_>>(), vec![1, 2, 3, 4]);
    }

    #[test]
    fn tiny_triangle() {
        let d = make_disc_model(3).unwrap();
        let tri = vec![
            Point::new(q(19, 10), q(2, 5)),
            Point::new(q(21, 10), q(2, 5)),
            Point::new(qi(2), q(7, 10)),
        ];
        assert_eq!(punctures_in_region(&tri, &d).unwrap().into_iter().collect::<Vec<_>>(), vec![2]);
    }

    #[test]
    fn shared_anchor_not_counted() {
        let d = make_disc_model(3).unwrap();
        let a = PLArc { vertices: vec![d.puncture(1).clone(), Point::new(q(1, 2), qi(0))], start: Anchor::Puncture(1), end: Anchor::Boundary };
        let b = PLArc { vertices: vec![d.puncture(1).clone(), Point::new(q(3, 2), qi(1))], start: Anchor::Puncture(1), end: Anchor::Boundary };
        assert!(transverse_intersections(&a, &b).unwrap().is_empty());
        assert!(a.validate(&d).is_ok());
    }
}
