//! Exact planar predicates over big rationals.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: Q,
    pub y: Q,
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl Point {
    pub fn new(x: Q, y: Q) -> Point {
        Point { x, y }
    }

    pub fn int(x: i64, y: i64) -> Point {
        Point { x: qi(x), y: qi(y) }
    }

    pub fn lerp(&self, other: &Point, t: &Q) -> Point {
        Point {
            x: &self.x + (&other.x - &self.x) * t,
            y: &self.y + (&other.y - &self.y) * t,
        }
    }

    pub fn scaled(&self, s: &Q) -> Point {
        Point { x: &self.x * s, y: &self.y * s }
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (to_f64(&self.x), to_f64(&self.y))
    }
}

// exact coordinates travel as "n/d" strings
impl serde::Serialize for Point {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.x.to_string(), self.y.to_string()].serialize(s)
    }
}

impl<'de> serde::Deserialize<'de> for Point {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [x, y] = <[String; 2]>::deserialize(d)?;
        let parse = |v: &str| v.parse::<Q>().map_err(serde::de::Error::custom);
        Ok(Point { x: parse(&x)?, y: parse(&y)? })
    }
}

pub fn to_f64(v: &Q) -> f64 {
    use num_traits::ToPrimitive;
    v.to_f64().unwrap_or(f64::NAN)
}

/// Twice the signed area of triangle abc; positive when counterclockwise.
pub fn cross(a: &Point, b: &Point, c: &Point) -> Q {
    (&b.x - &a.x) * (&c.y - &a.y) - (&b.y - &a.y) * (&c.x - &a.x)
}

pub fn orient(a: &Point, b: &Point, c: &Point) -> Ordering {
    cross(a, b, c).cmp(&Q::zero())
}

/// Whether `p` lies on the closed segment ab.
pub fn on_segment(p: &Point, a: &Point, b: &Point) -> bool {
    orient(a, b, p) == Ordering::Equal
        && p.x >= a.x.clone().min(b.x.clone())
        && p.x <= a.x.clone().max(b.x.clone())
        && p.y >= a.y.clone().min(b.y.clone())
        && p.y <= a.y.clone().max(b.y.clone())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SegHit {
    None,
    /// Interior crossing at parameters `s` on the first segment and `t` on the second.
    Cross { s: Q, t: Q },
    /// Touching or overlapping; not a transverse interior crossing.
    Degenerate,
}

/// Classifies the meeting of segments ab and cd.
pub fn segment_hit(a: &Point, b: &Point, c: &Point, d: &Point) -> SegHit {
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    use Ordering::Equal;
    if o1 != Equal && o2 != Equal && o3 != Equal && o4 != Equal {
        if o1 != o2 && o3 != o4 {
            let den = cross_vec(&sub(b, a), &sub(d, c));
            let s = cross_vec(&sub(c, a), &sub(d, c)) / &den;
            let t = cross_vec(&sub(c, a), &sub(b, a)) / &den;
            return SegHit::Cross { s, t };
        }
        return SegHit::None;
    }
    if (o1 == Equal && on_segment(c, a, b))
        || (o2 == Equal && on_segment(d, a, b))
        || (o3 == Equal && on_segment(a, c, d))
        || (o4 == Equal && on_segment(b, c, d))
    {
        return SegHit::Degenerate;
    }
    SegHit::None
}

fn sub(a: &Point, b: &Point) -> (Q, Q) {
    (&a.x - &b.x, &a.y - &b.y)
}

fn cross_vec(u: &(Q, Q), v: &(Q, Q)) -> Q {
    &u.0 * &v.1 - &u.1 * &v.0
}

/// Twice the signed area of a closed polygon.
pub fn signed_area2(poly: &[Point]) -> Q {
    let n = poly.len();
    let mut acc = Q::zero();
    for i in 0..n {
        let a = &poly[i];
        let b = &poly[(i + 1) % n];
        acc += &a.x * &b.y - &b.x * &a.y;
    }
    acc
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Inside {
    In,
    Out,
    OnBoundary,
}

/// Point location against a closed polygon via the crossing-number rule.
pub fn locate(p: &Point, poly: &[Point]) -> Inside {
    let n = poly.len();
    let mut inside = false;
    for i in 0..n {
        let a = &poly[i];
        let b = &poly[(i + 1) % n];
        if on_segment(p, a, b) {
            return Inside::OnBoundary;
        }
        if (a.y > p.y) != (b.y > p.y) {
            // x-coordinate of the edge at height p.y, compared without division
            let lhs = (&p.x - &a.x) * (&b.y - &a.y);
            let rhs = (&b.x - &a.x) * (&p.y - &a.y);
            let pos = if b.y > a.y { lhs < rhs } else { lhs > rhs };
            if pos {
                inside = !inside;
            }
        }
    }
    if inside {
        Inside::In
    } else {
        Inside::Out
    }
}

pub fn midpoint(a: &Point, b: &Point) -> Point {
    a.lerp(b, &(Q::one() / qi(2)))
}

pub fn abs(v: &Q) -> Q {
    v.abs()
}
