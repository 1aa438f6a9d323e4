//! Chord drawings in the cut-open disc.
//!
//! Cutting the rectangle along the walls leaves a disc Ω. Its boundary is a
//! circle of `4m` sites in counterclockwise order: site 0 is the outer
//! boundary corner, then for each wall `j` the left side `4j-3`, the
//! puncture `4j-2`, the right side `4j-1` and the bottom corner `4j`
//! (`4m` wraps to 0). An arc with word `w` is a chain of `|w| + 1` chords
//! of Ω; crossing wall `j` puts a port on both sides at the same height.
//!
//! Strands on a common wall are ordered by where their continuations
//! diverge, which draws each pair of reduced words with no avoidable
//! crossing. Two chords cross iff their endpoints interleave on the circle.

use std::cmp::Ordering;

use num_traits::{One, Zero};

use crate::code::{rotate, Anchor, ArcCode, Token};
use crate::disc::{DiscModel, PLArc};
use crate::error::{Error, Result};
use crate::geom::{qi, segment_hit, Point, SegHit, Q};

pub type Site = u32;

pub const B_OUT: Site = 0;

pub fn site_left(j: usize) -> Site {
    (4 * j - 3) as Site
}

pub fn site_puncture(j: usize) -> Site {
    (4 * j - 2) as Site
}

pub fn site_right(j: usize) -> Site {
    (4 * j - 1) as Site
}

pub fn anchor_site(a: Anchor) -> Site {
    match a {
        Anchor::Boundary => B_OUT,
        Anchor::Puncture(j) => site_puncture(j),
    }
}

/// Gate through which a strand leaves Ω when it crosses `t`.
pub fn exit_site(t: Token) -> Site {
    let j = t.unsigned_abs() as usize;
    if t > 0 {
        site_left(j)
    } else {
        site_right(j)
    }
}

/// Gate through which a strand re-enters Ω after crossing `t`.
pub fn entry_site(t: Token) -> Site {
    exit_site(-t)
}

/// A point of the circle: site, then ccw offset within the site.
pub type Port = (Site, u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Chord {
    pub from: Port,
    pub to: Port,
}

impl Chord {
    fn sorted(&self) -> (Port, Port) {
        if self.from <= self.to {
            (self.from, self.to)
        } else {
            (self.to, self.from)
        }
    }
}

/// Whether two chords cross in the interior of Ω.
pub fn chords_cross(a: &Chord, b: &Chord) -> bool {
    let (a0, a1) = a.sorted();
    let (b0, b1) = b.sorted();
    if a0 == b0 || a0 == b1 || a1 == b0 || a1 == b1 {
        return false;
    }
    let inside = |p: Port| a0 < p && p < a1;
    inside(b0) != inside(b1)
}

/// A walk along an arc from one of its ports, continuing to its anchor.
#[derive(Debug, Clone, Copy)]
pub struct Ray<'a> {
    word: &'a [Token],
    pos: usize,
    forward: bool,
    terminal: Anchor,
}

impl<'a> Ray<'a> {
    /// The continuation of `code` after its first `pos` tokens.
    pub fn ahead(code: &'a ArcCode, pos: usize) -> Ray<'a> {
        Ray { word: &code.word, pos, forward: true, terminal: code.end }
    }

    /// The reversed walk from just before token `pos` back to the start.
    pub fn behind(code: &'a ArcCode, pos: usize) -> Ray<'a> {
        Ray { word: &code.word, pos, forward: false, terminal: code.start }
    }

    fn remaining(&self) -> usize {
        if self.forward {
            self.word.len() - self.pos
        } else {
            self.pos
        }
    }

    fn token(&self, step: usize) -> Token {
        if self.forward {
            self.word[self.pos + step]
        } else {
            -self.word[self.pos - 1 - step]
        }
    }

    fn next_site(&self, step: usize) -> (Site, bool) {
        if step < self.remaining() {
            (exit_site(self.token(step)), false)
        } else {
            (anchor_site(self.terminal), true)
        }
    }
}

/// Orders two rays entering Ω through gate `g`. `Less` means the first ray
/// enters at the smaller ccw offset within the gate.
pub fn compare_rays(m: usize, g: Site, a: &Ray, b: &Ray) -> Ordering {
    let s = 4 * m as Site;
    let mut gate = g;
    let mut step = 0;
    loop {
        let (sa, ta) = a.next_site(step);
        let (sb, tb) = b.next_site(step);
        if sa != sb {
            let oa = (sa + s - gate) % s;
            let ob = (sb + s - gate) % s;
            return ob.cmp(&oa);
        }
        if ta || tb {
            return Ordering::Equal;
        }
        gate = entry_site(a.token(step));
        step += 1;
    }
}

/// Strand `(arc, token index)` on a wall, or a boundary end `(arc, 0 | 1)`.
pub type Item = (usize, usize);

#[derive(Debug, Clone)]
pub struct Drawing {
    pub m: usize,
    pub arcs: Vec<ArcCode>,
    /// Per wall (index `j - 1`), strands from top to bottom.
    pub walls: Vec<Vec<Item>>,
    /// Boundary ends in ccw order along the outer corner; `(arc, 0)` is a start, `(arc, 1)` an end.
    pub outer: Vec<Item>,
    /// Per arc, the rank of each token's strand on its wall.
    ranks: Vec<Vec<u32>>,
    outer_rank: Vec<[u32; 2]>,
    pub chords: Vec<Vec<Chord>>,
}

fn wall_of(t: Token) -> usize {
    t.unsigned_abs() as usize
}

impl Drawing {
    /// The divergence-ordered drawing of `arcs`.
    pub fn new(m: usize, arcs: Vec<ArcCode>) -> Drawing {
        let mut walls: Vec<Vec<Item>> = vec![Vec::new(); m];
        for (i, a) in arcs.iter().enumerate() {
            for (k, &t) in a.word.iter().enumerate() {
                walls[wall_of(t) - 1].push((i, k));
            }
        }
        for (jj, items) in walls.iter_mut().enumerate() {
            let j = jj + 1;
            items.sort_by(|&(ia, ka), &(ib, kb)| {
                let (fa, ba) = wall_rays(&arcs[ia], ka);
                let (fb, bb) = wall_rays(&arcs[ib], kb);
                compare_rays(m, site_right(j), &fa, &fb)
                    .then_with(|| compare_rays(m, site_left(j), &ba, &bb).reverse())
                    .then_with(|| (ia, ka).cmp(&(ib, kb)))
            });
        }
        let mut outer: Vec<Item> = Vec::new();
        for (i, a) in arcs.iter().enumerate() {
            if a.start.is_boundary() {
                outer.push((i, 0));
            }
            if a.end.is_boundary() {
                outer.push((i, 1));
            }
        }
        outer.sort_by(|&(ia, ea), &(ib, eb)| {
            let ra = outer_ray(&arcs[ia], ea);
            let rb = outer_ray(&arcs[ib], eb);
            compare_rays(m, B_OUT, &ra, &rb).then_with(|| (ia, ea).cmp(&(ib, eb)))
        });
        Drawing::from_orders(m, arcs, walls, outer)
    }

    /// A drawing with prescribed strand orders.
    pub fn from_orders(m: usize, arcs: Vec<ArcCode>, walls: Vec<Vec<Item>>, outer: Vec<Item>) -> Drawing {
        let mut ranks: Vec<Vec<u32>> = arcs.iter().map(|a| vec![0; a.word.len()]).collect();
        for items in &walls {
            for (r, &(i, k)) in items.iter().enumerate() {
                ranks[i][k] = r as u32;
            }
        }
        let mut outer_rank = vec![[0u32; 2]; arcs.len()];
        for (r, &(i, e)) in outer.iter().enumerate() {
            outer_rank[i][e] = r as u32;
        }
        let mut d = Drawing { m, arcs, walls, outer, ranks, outer_rank, chords: Vec::new() };
        d.chords = (0..d.arcs.len()).map(|i| d.build_chords(i)).collect();
        d
    }

    fn wall_len(&self, t: Token) -> u32 {
        self.walls[wall_of(t) - 1].len() as u32
    }

    /// Port where the strand of token `k` of arc `i` meets side `site`.
    fn token_port(&self, i: usize, k: usize, site: Site) -> Port {
        let t = self.arcs[i].word[k];
        let r = self.ranks[i][k];
        if site == site_left(wall_of(t)) {
            (site, self.wall_len(t) - 1 - r)
        } else {
            (site, r)
        }
    }

    fn anchor_port(&self, i: usize, end: usize) -> Port {
        let a = if end == 0 { self.arcs[i].start } else { self.arcs[i].end };
        match a {
            Anchor::Boundary => (B_OUT, self.outer_rank[i][end]),
            Anchor::Puncture(j) => (site_puncture(j), 0),
        }
    }

    fn build_chords(&self, i: usize) -> Vec<Chord> {
        let w = &self.arcs[i].word;
        (0..=w.len())
            .map(|c| {
                let from = if c == 0 { self.anchor_port(i, 0) } else { self.token_port(i, c - 1, entry_site(w[c - 1])) };
                let to = if c == w.len() { self.anchor_port(i, 1) } else { self.token_port(i, c, exit_site(w[c])) };
                Chord { from, to }
            })
            .collect()
    }

    /// Chord index pairs `(chord of a, chord of b)` that cross.
    pub fn crossing_pairs(&self, a: usize, b: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (x, ca) in self.chords[a].iter().enumerate() {
            for (y, cb) in self.chords[b].iter().enumerate() {
                if (a != b || x < y) && chords_cross(ca, cb) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    pub fn crossings(&self, a: usize, b: usize) -> usize {
        let mut n = 0;
        for (x, ca) in self.chords[a].iter().enumerate() {
            for (y, cb) in self.chords[b].iter().enumerate() {
                if (a != b || x < y) && chords_cross(ca, cb) {
                    n += 1;
                }
            }
        }
        n
    }

    pub fn self_crossings(&self, a: usize) -> usize {
        self.crossings(a, a)
    }

    /// Height fraction in `(0, 1)` of a strand, measured from the wall foot.
    pub fn height_rank(&self, i: usize, k: usize) -> (u32, u32) {
        (self.ranks[i][k], self.wall_len(self.arcs[i].word[k]))
    }

    pub fn outer_rank(&self, i: usize, end: usize) -> u32 {
        self.outer_rank[i][end]
    }
}

/// Rays through the wall at token `k`: the one entering via the right side
/// and the one entering via the left side.
fn wall_rays(code: &ArcCode, k: usize) -> (Ray<'_>, Ray<'_>) {
    if code.word[k] > 0 {
        (Ray::ahead(code, k + 1), Ray::behind(code, k))
    } else {
        (Ray::behind(code, k), Ray::ahead(code, k + 1))
    }
}

fn outer_ray(code: &ArcCode, end: usize) -> Ray<'_> {
    if end == 0 {
        Ray::ahead(code, 0)
    } else {
        Ray::behind(code, code.word.len())
    }
}

/// Boundary rotations tried around each boundary end.
pub const ROTATION_WINDOW: i32 = 2;

/// Representatives `Δ^i w Δ^j` of a class for `|i|, |j| <= window` (boundary ends only).
pub fn rotations(m: usize, code: &ArcCode, window: i32) -> Vec<ArcCode> {
    let si = if code.start.is_boundary() { window } else { 0 };
    let ej = if code.end.is_boundary() { window } else { 0 };
    let mut out = Vec::new();
    for i in -si..=si {
        for j in -ej..=ej {
            out.push(ArcCode { start: code.start, end: code.end, word: rotate(m, code.start, code.end, &code.word, i, j) });
        }
    }
    out
}

/// Fewest self-crossings among drawn rotations of the class.
pub fn min_self_crossings(model: &DiscModel, code: &ArcCode) -> usize {
    rotations(model.m, code, ROTATION_WINDOW)
        .into_iter()
        .map(|c| Drawing::new(model.m, vec![c]).self_crossings(0))
        .min()
        .unwrap_or(0)
}

pub fn is_simple(model: &DiscModel, code: &ArcCode) -> bool {
    min_self_crossings(model, code) == 0
}

/// A convex polygon combinatorially equal to Ω, used to straighten chords.
///
/// Vertex cycle: `(0,0)`; per wall the foot on the left, the puncture, the
/// foot on the right; then `(m+1,0)`, `(m+1,1/2)`, `(m+1,1)`, `(0,1)`,
/// `(0,1/2)`. The convex copy puts vertex `i` at `(i, i^2)`.
#[derive(Debug, Clone)]
pub struct Straightener {
    pub m: usize,
    convex: Vec<Point>,
    rect: Vec<Point>,
    diagonals: Vec<(usize, usize)>,
}

impl Straightener {
    pub fn new(m: usize) -> Straightener {
        let half = Q::one() / qi(2);
        let mut rect = vec![Point::int(0, 0)];
        for j in 1..=m as i64 {
            rect.push(Point::int(j, 0));
            rect.push(Point::new(qi(j), half.clone()));
            rect.push(Point::int(j, 0));
        }
        let w = m as i64 + 1;
        rect.push(Point::int(w, 0));
        rect.push(Point::new(qi(w), half.clone()));
        rect.push(Point::int(w, 1));
        rect.push(Point::int(0, 1));
        rect.push(Point::new(qi(0), half));
        let n = rect.len();
        let convex = (0..n as i64).map(|i| Point::int(i, i * i)).collect();
        let mut diagonals = Vec::new();
        for t in triangles(m) {
            for (a, b) in [(t[0], t[1]), (t[1], t[2]), (t[2], t[0])] {
                let (a, b) = (a.min(b), a.max(b));
                if b - a != 1 && !(a == 0 && b == n - 1) && !diagonals.contains(&(a, b)) {
                    diagonals.push((a, b));
                }
            }
        }
        Straightener { m, convex, rect, diagonals }
    }

    fn n(&self) -> usize {
        self.rect.len()
    }

    /// Polygon edge `(a, a + 1)` carrying a site.
    fn site_edge(&self, s: Site) -> usize {
        let m = self.m;
        if s == B_OUT {
            return 3 * m + 3;
        }
        let j = ((s + 3) / 4) as usize;
        match s % 4 {
            1 => 3 * j - 2,
            3 => 3 * j - 1,
            _ => unreachable!("no edge for site {s}"),
        }
    }

    /// Position of a port in both polygons, with its cycle location
    /// (`2v` for vertex `v`, `2e + 1` for the interior of edge `e`).
    fn place(&self, port: Port, param: &Q) -> (Point, Point, usize) {
        let (s, _) = port;
        if s % 4 == 2 {
            let v = 3 * ((s + 2) / 4) as usize - 1;
            return (self.convex[v].clone(), self.rect[v].clone(), 2 * v);
        }
        let e = self.site_edge(s);
        let f = (e + 1) % self.n();
        (
            self.convex[e].lerp(&self.convex[f], param),
            self.rect[e].lerp(&self.rect[f], param),
            2 * e + 1,
        )
    }

    /// A chord joining neighbouring punctures would run along the diagonal
    /// between them. It is bent a hair into the triangle above instead,
    /// which every chord crossing that diagonal must still cross once.
    fn bend(&self, from: &(Point, Point, usize), to: &(Point, Point, usize)) -> Option<Point> {
        let (a, b) = (from.2.min(to.2), from.2.max(to.2));
        if a % 2 != 0 || b % 2 != 0 || b - a != 6 || (a / 2) % 3 != 2 || a / 2 + 3 > 3 * self.m {
            return None;
        }
        let (u, v, top) = (a / 2, b / 2, 3 * self.m + 4);
        let eps = Q::new(1.into(), 1_000_000_000.into());
        let mid = self.rect[u].lerp(&self.rect[v], &(Q::one() / qi(2)));
        Some(mid.lerp(&self.rect[top], &eps))
    }

    /// The image in the rectangle of the straight chord between two placed ports.
    /// Also returns `(diagonal, parameter)` for every diagonal crossing.
    fn chord_path(
        &self,
        from: &(Point, Point, usize),
        to: &(Point, Point, usize),
    ) -> Result<(Vec<Point>, Vec<(usize, Q)>)> {
        let lo = from.2.min(to.2);
        let hi = from.2.max(to.2);
        let mut hits: Vec<(Q, usize, Q)> = Vec::new();
        for (d, &(a, b)) in self.diagonals.iter().enumerate() {
            let inside = |v: usize| lo < 2 * v && 2 * v < hi;
            if 2 * a == lo || 2 * a == hi || 2 * b == lo || 2 * b == hi || inside(a) == inside(b) {
                continue;
            }
            match segment_hit(&from.0, &to.0, &self.convex[a], &self.convex[b]) {
                SegHit::Cross { s, t } => hits.push((s, d, t)),
                _ => return Err(Error::Degenerate("chord meets a diagonal at a vertex".into())),
            }
        }
        hits.sort_by(|x, y| x.0.cmp(&y.0));
        let mut pts = Vec::with_capacity(hits.len());
        let mut params = Vec::with_capacity(hits.len());
        for (_, d, t) in hits {
            let (a, b) = self.diagonals[d];
            pts.push(self.rect[a].lerp(&self.rect[b], &t));
            params.push((d, t));
        }
        Ok((pts, params))
    }

    /// Exact polylines for every arc of a drawing. `jitter` perturbs port
    /// positions without changing their order; retry with another value on
    /// a degeneracy error.
    pub fn realize(&self, d: &Drawing, jitter: u32) -> Result<Vec<PLArc>> {
        let mut seen: std::collections::HashSet<(usize, Q)> = std::collections::HashSet::new();
        let mut out = Vec::with_capacity(d.arcs.len());
        for (i, a) in d.arcs.iter().enumerate() {
            let w = &a.word;
            let mut verts: Vec<Point> = Vec::new();
            for (c, ch) in d.chords[i].iter().enumerate() {
                let from = self.place(ch.from, &self.port_param(d, i, c, true, jitter));
                let to = self.place(ch.to, &self.port_param(d, i, c, false, jitter));
                if c == 0 {
                    verts.push(from.1.clone());
                }
                let (pts, params) = match self.bend(&from, &to) {
                    Some(c) => (vec![c], Vec::new()),
                    None => self.chord_path(&from, &to)?,
                };
                for p in params {
                    if !seen.insert(p) {
                        return Err(Error::Degenerate("two chords cross on a diagonal".into()));
                    }
                }
                verts.extend(pts);
                verts.push(to.1.clone());
            }
            let _ = w;
            out.push(PLArc { vertices: verts, start: a.start, end: a.end });
        }
        Ok(out)
    }

    /// Edge parameter of one end of chord `c` of arc `i`.
    fn port_param(&self, d: &Drawing, i: usize, c: usize, from: bool, jitter: u32) -> Q {
        let w = &d.arcs[i].word;
        let at_anchor = if from { c == 0 } else { c == w.len() };
        if at_anchor {
            let end = if from { 0 } else { 1 };
            let a = if from { d.arcs[i].start } else { d.arcs[i].end };
            if !a.is_boundary() {
                return Q::zero();
            }
            let n = d.outer.len() as i64;
            let r = d.outer_rank(i, end) as i64;
            return spread(r, n, jitter, (i * 2 + end) as i64);
        }
        let k = if from { c - 1 } else { c };
        let (r, n) = d.height_rank(i, k);
        // height fraction from the foot: top strand (rank 0) is highest
        let u = spread(n as i64 - 1 - r as i64, n as i64, jitter, (i * 131 + k) as i64);
        let left_side = if from { w[k] < 0 } else { w[k] > 0 };
        if left_side {
            u
        } else {
            Q::one() - u
        }
    }
}

/// `(r + 1/2 + δ) / n` with a small deterministic jitter `|δ| < 1/4`.
fn spread(r: i64, n: i64, jitter: u32, salt: i64) -> Q {
    let base = Q::new((2 * r + 1).into(), (2 * n).into());
    if jitter == 0 {
        return base;
    }
    let h = (salt.wrapping_mul(2654435761).wrapping_add(jitter as i64 * 40503)).rem_euclid(997) - 498;
    base + Q::new(h.into(), (4 * 1000 * n).into())
}

/// Triangulation of the vertex cycle, shared by both polygons.
pub fn triangles(m: usize) -> Vec<[usize; 3]> {
    let fl = |j: usize| 3 * j - 2;
    let pu = |j: usize| 3 * j - 1;
    let fr = |j: usize| 3 * j;
    let br = 3 * m + 1;
    let rm = 3 * m + 2;
    let rt = 3 * m + 3;
    let lt = 3 * m + 4;
    let lm = 3 * m + 5;
    let mut t = vec![[0, fl(1), pu(1)], [0, pu(1), lm]];
    for j in 1..m {
        t.push([fr(j), fl(j + 1), pu(j + 1)]);
        t.push([fr(j), pu(j + 1), pu(j)]);
    }
    t.push([fr(m), br, rm]);
    t.push([fr(m), rm, pu(m)]);
    t.push([lm, pu(1), lt]);
    for j in 1..m {
        t.push([pu(j), pu(j + 1), lt]);
    }
    t.push([pu(m), rm, lt]);
    t.push([rm, rt, lt]);
    t
}

/// Exact polylines for a drawing, retrying jitters on degeneracy.
pub fn realize_drawing(d: &Drawing) -> Result<Vec<PLArc>> {
    let st = Straightener::new(d.m);
    let mut last = None;
    for jitter in 0..16 {
        match st.realize(d, jitter) {
            Ok(v) => return Ok(v),
            Err(e) => last = Some(e),
        }
    }
    Err(last.unwrap_or_else(|| Error::Degenerate("no general-position drawing".into())))
}

/// The canonical polyline of a single class.
pub fn decode(code: &ArcCode, model: &DiscModel) -> PLArc {
    let d = Drawing::new(model.m, vec![code.clone()]);
    realize_drawing(&d).expect("a single arc is always in general position").remove(0)
}

/// Recomputes the signed wall crossings of a polyline.
pub fn crossing_word(arc: &PLArc, model: &DiscModel) -> Vec<Token> {
    let mut out = Vec::new();
    for (a, b) in arc.segments() {
        for j in 1..=model.m {
            let x = qi(j as i64);
            let top = model.puncture(j);
            // wall j is x = j, 0 < y < 1/2; a crossing goes strictly across it or ends on it
            let sa = a.x.cmp(&x);
            let sb = b.x.cmp(&x);
            let y_at = |p: &Point, q: &Point| -> Option<Q> {
                if p.x == q.x {
                    return None;
                }
                let t = (&x - &p.x) / (&q.x - &p.x);
                Some(&p.y + (&q.y - &p.y) * t)
            };
            // count a crossing when the segment leaves the wall line or strictly jumps it
            let step = match (sa, sb) {
                (Ordering::Less, Ordering::Greater) => 1,
                (Ordering::Greater, Ordering::Less) => -1,
                (Ordering::Equal, Ordering::Greater) if entered_from(arc, a, Ordering::Less) => 1,
                (Ordering::Equal, Ordering::Less) if entered_from(arc, a, Ordering::Greater) => -1,
                _ => 0,
            };
            if step == 0 {
                continue;
            }
            let y = if sa == Ordering::Equal { a.y.clone() } else { y_at(a, b).unwrap() };
            if y > Q::zero() && y < top.y {
                out.push(step * j as Token);
            }
        }
    }
    out
}

/// Whether the segment arriving at vertex `v` came from the given side of `x = v.x`.
fn entered_from(arc: &PLArc, v: &Point, side: Ordering) -> bool {
    let idx = arc.vertices.iter().position(|p| p == v).unwrap_or(0);
    idx > 0 && arc.vertices[idx - 1].x.cmp(&v.x) == side
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{reduce_code, tighten};
    use crate::disc::make_disc_model;

    fn q(j: usize) -> Anchor {
        Anchor::Puncture(j)
    }
    const P: Anchor = Anchor::Boundary;

    #[test]
    fn triangle_count() {
        for m in 2..6 {
            assert_eq!(triangles(m).len(), 3 * m + 4);
            let st = Straightener::new(m);
            assert_eq!(st.diagonals.len(), 3 * m + 3);
        }
    }

    #[test]
    fn triangulation_is_positive_in_both_polygons() {
        for m in 2..5 {
            let st = Straightener::new(m);
            for t in triangles(m) {
                let (a, b, c) = (&st.rect[t[0]], &st.rect[t[1]], &st.rect[t[2]]);
                let sr = crate::geom::orient(a, b, c);
                let sp = crate::geom::orient(&st.convex[t[0]], &st.convex[t[1]], &st.convex[t[2]]);
                assert_ne!(sr, Ordering::Equal, "{t:?}");
                assert_eq!(sr, sp, "{t:?}");
            }
        }
    }

    #[test]
    fn parallel_arcs_do_not_cross() {
        let m = 3;
        let a = ArcCode { start: q(1), end: P, word: vec![2] };
        let b = ArcCode { start: q(1), end: P, word: vec![2, 3] };
        let d = Drawing::new(m, vec![a, b]);
        assert_eq!(d.crossings(0, 1), 0);
    }

    #[test]
    fn decode_round_trip() {
        let d = make_disc_model(3).unwrap();
        for w in [vec![], vec![2], vec![2, 3], vec![-2, -3, 2], vec![3, -2]] {
            let c = reduce_code(&d, q(1), P, &w);
            let pl = decode(&c, &d);
            pl.validate(&d).unwrap();
            let back = crossing_word(&pl, &d);
            assert_eq!(tighten(q(1), P, &back), c.word, "{c}");
        }
    }

    #[test]
    fn straight_drop() {
        let d = make_disc_model(3).unwrap();
        let c = ArcCode { start: q(1), end: P, word: vec![] };
        let pl = decode(&c, &d);
        assert_eq!(crossing_word(&pl, &d), Vec::<Token>::new());
    }

    #[test]
    fn double_wrap_is_not_simple() {
        let d = make_disc_model(3).unwrap();
        let c = ArcCode { start: q(1), end: P, word: vec![2, 2] };
        assert!(!is_simple(&d, &c));
        let c = ArcCode { start: q(1), end: P, word: vec![2, 3] };
        assert!(is_simple(&d, &c));
    }
}
