//! Lower-bound constructions, compatibility graphs and clique search.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::chord::{rotations, Drawing, ROTATION_WINDOW};
use crate::code::{canonical_key, enumerate_codes, reduce_code, Anchor, ArcCode, EndpointFilter, Token};
use crate::disc::{make_disc_model, DiscModel};
use crate::error::{Error, Result};
use crate::geom::{q, segment_hit, Point, SegHit};
use crate::position::intersection_number;

/// Word that moves a boundary end from bottom corner `c` to the outer corner.
fn corner_to_outer(c: usize) -> Vec<Token> {
    (1..=c as Token).rev().map(|t| -t).collect()
}

/// For every puncture, the arcs to each bottom corner and the outer corner;
/// they cut the disc into pieces holding one puncture each.
pub fn thm1_construction(model: &DiscModel) -> Vec<ArcCode> {
    let m = model.m;
    let mut out = Vec::new();
    let mut seen = HashMap::new();
    for r in 1..=m {
        for c in 0..m {
            let code = reduce_code(model, Anchor::Puncture(r), Anchor::Boundary, &corner_to_outer(c));
            let key = canonical_key(model, &code);
            if seen.insert(key, ()).is_none() {
                out.push(code);
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Face {
    Front,
    Back,
}

/// An arc of the doubled polygon.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PolygonArc {
    /// Glued edge `(i, i + 1)`.
    Edge(usize),
    /// Diagonal `(a, b)`, `a < b`, on one face.
    Diagonal(Face, usize, usize),
    /// Through the midpoint of edge `e`: front segment from `u`, back segment to `v`.
    Crossing { edge: usize, u: usize, v: usize },
}

/// Two copies of a convex `n`-gon glued along their boundary.
#[derive(Debug, Clone)]
pub struct DoubledPolygonFamily {
    pub n: usize,
    /// Polygon vertices; the back face is the same polygon seen from behind.
    pub vertices: Vec<Point>,
    pub arcs: Vec<PolygonArc>,
    /// Crossing counts computed face by face.
    pub counts: Vec<Vec<usize>>,
    /// The same arcs as codes in the disc model with `n - 1` interior punctures.
    pub codes: Vec<ArcCode>,
    /// Per pair, whether the face count equals the disc-model intersection number.
    pub minimal: Vec<Vec<bool>>,
    /// All codes name pairwise distinct classes.
    pub distinct: bool,
}

impl DoubledPolygonFamily {
    pub fn edges(&self) -> usize {
        self.arcs.iter().filter(|a| matches!(a, PolygonArc::Edge(_))).count()
    }

    pub fn diagonals(&self) -> usize {
        self.arcs.iter().filter(|a| matches!(a, PolygonArc::Diagonal(..))).count()
    }

    pub fn crossing_arcs(&self) -> usize {
        self.arcs.iter().filter(|a| matches!(a, PolygonArc::Crossing { .. })).count()
    }

    pub fn max_count(&self) -> usize {
        self.counts.iter().flatten().copied().max().unwrap_or(0)
    }

    pub fn certified(&self) -> bool {
        self.distinct && self.minimal.iter().flatten().all(|&b| b)
    }
}

/// Boundary position: vertex `i` at `2i`, midpoint of edge `(i, i+1)` at `2i + 1`.
fn vpos(i: usize) -> usize {
    2 * i
}

fn mpos(e: usize) -> usize {
    2 * e + 1
}

/// Straight segments of one face, as pairs of boundary positions.
fn face_segments(a: &PolygonArc, face: Face) -> Vec<(usize, usize)> {
    match *a {
        PolygonArc::Edge(_) => vec![],
        PolygonArc::Diagonal(f, x, y) if f == face => vec![(vpos(x), vpos(y))],
        PolygonArc::Diagonal(..) => vec![],
        PolygonArc::Crossing { edge, u, v } => match face {
            Face::Front => vec![(vpos(u), mpos(edge))],
            Face::Back => vec![(mpos(edge), vpos(v))],
        },
    }
}

struct Geometry {
    n: usize,
    pts: Vec<Point>,
}

impl Geometry {
    fn new(n: usize) -> Geometry {
        let verts: Vec<Point> = (0..n as i64).map(|i| Point::int(i, i * i)).collect();
        let mut pts = Vec::with_capacity(2 * n);
        for i in 0..n {
            pts.push(verts[i].clone());
            let j = (i + 1) % n;
            pts.push(Point::new((&verts[i].x + &verts[j].x) * q(1, 2), (&verts[i].y + &verts[j].y) * q(1, 2)));
        }
        Geometry { n, pts }
    }

    /// Whether two straight segments of one face cross in their interiors.
    fn cross(&self, s: (usize, usize), t: (usize, usize)) -> bool {
        matches!(segment_hit(&self.pts[s.0], &self.pts[s.1], &self.pts[t.0], &self.pts[t.1]), SegHit::Cross { .. })
    }
}

/// Rank of vertex `w` among the vertices outside edge `e`, in boundary order after `e`.
fn rank_after(n: usize, e: usize, w: usize) -> usize {
    (w + n - (e + 2)) % n
}

fn face_count(g: &Geometry, a: &PolygonArc, b: &PolygonArc) -> usize {
    let n = g.n;
    let mut c = 0;
    for face in [Face::Front, Face::Back] {
        for s in face_segments(a, face) {
            for t in face_segments(b, face) {
                if s.0 != t.0 && s.0 != t.1 && s.1 != t.0 && s.1 != t.1 && g.cross(s, t) {
                    c += 1;
                }
            }
        }
    }
    match (a, b) {
        (PolygonArc::Edge(e), PolygonArc::Crossing { edge, .. }) | (PolygonArc::Crossing { edge, .. }, PolygonArc::Edge(e)) => {
            if e == edge {
                c += 1;
            }
        }
        (PolygonArc::Crossing { edge: e1, u: u1, v: v1 }, PolygonArc::Crossing { edge: e2, u: u2, v: v2 }) if e1 == e2 => {
            // both pass through the midpoint; near it they cross iff the
            // front and back directions come in opposite orders
            let du = rank_after(n, *e1, *u1) as i64 - rank_after(n, *e1, *u2) as i64;
            let dv = rank_after(n, *e1, *v1) as i64 - rank_after(n, *e1, *v2) as i64;
            if du * dv < 0 {
                c += 1;
            }
        }
        _ => {}
    }
    c
}

/// Front-face fan lines from vertex 0 crossed by the front segment between
/// boundary positions `from` and `to`, as signed tokens in travel order.
fn fan_tokens(n: usize, from: usize, to: usize) -> Vec<Token> {
    let interior = |j: usize| (2..=n - 2).contains(&j);
    let mut out = Vec::new();
    if from < to {
        for j in 1..n {
            if from < 2 * j && 2 * j < to && interior(j) {
                out.push(j as Token);
            }
        }
    } else {
        for j in (1..n).rev() {
            if to < 2 * j && 2 * j < from && interior(j) {
                out.push(-(j as Token));
            }
        }
    }
    out
}

/// The disc-model code of a polygon arc. Vertex 0 becomes the boundary,
/// vertex `j` puncture `j`; wall `j` is the front segment from 0 to `j`.
fn to_code(n: usize, model: &DiscModel, a: &PolygonArc) -> ArcCode {
    let anchor = |v: usize| if v == 0 { Anchor::Boundary } else { Anchor::Puncture(v) };
    let (start, end, word) = match *a {
        // pushed onto the back face, where no walls run
        PolygonArc::Edge(i) => (anchor(i), anchor((i + 1) % n), vec![]),
        PolygonArc::Diagonal(Face::Back, x, y) => (anchor(x), anchor(y), vec![]),
        PolygonArc::Diagonal(Face::Front, 0, y) => {
            // along wall y; pushed into the sector between walls y-1 and y
            (Anchor::Boundary, anchor(y), (1..y as Token).collect())
        }
        PolygonArc::Diagonal(Face::Front, x, y) => (anchor(x), anchor(y), fan_tokens(n, vpos(x), vpos(y))),
        PolygonArc::Crossing { edge, u, v } => {
            let mut w: Vec<Token> = Vec::new();
            if u == 0 {
                // leaves vertex 0 in the front sector between walls `edge` and `edge + 1`
                w.extend(1..=edge as Token);
            } else {
                w.extend(fan_tokens(n, vpos(u), mpos(edge)));
            }
            if edge == 0 {
                w.push(-1);
            } else if edge == n - 1 {
                w.push((n - 1) as Token);
            }
            (anchor(u), anchor(v), w)
        }
    };
    reduce_code(model, start, end, &word)
}

pub fn thm2_arcs(n: usize) -> Vec<PolygonArc> {
    let mut arcs: Vec<PolygonArc> = (0..n).map(PolygonArc::Edge).collect();
    for face in [Face::Front, Face::Back] {
        for a in 0..n {
            for b in a + 2..n {
                if !(a == 0 && b == n - 1) {
                    arcs.push(PolygonArc::Diagonal(face, a, b));
                }
            }
        }
    }
    for e in 0..n {
        let outside: Vec<usize> = (0..n).filter(|&w| w != e && w != (e + 1) % n).collect();
        for &u in &outside {
            for &v in &outside {
                arcs.push(PolygonArc::Crossing { edge: e, u, v });
            }
        }
    }
    arcs
}

/// The doubled-polygon family with face-by-face counts and certificates.
pub fn thm2_construction(n: usize) -> Result<DoubledPolygonFamily> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("polygon needs at least 3 vertices, got {n}")));
    }
    let g = Geometry::new(n);
    let arcs = thm2_arcs(n);
    let model = make_disc_model(n - 1)?;
    let codes: Vec<ArcCode> = arcs.iter().map(|a| to_code(n, &model, a)).collect();
    let k = arcs.len();
    let mut counts = vec![vec![0; k]; k];
    let mut minimal = vec![vec![true; k]; k];
    for i in 0..k {
        for j in i + 1..k {
            let c = face_count(&g, &arcs[i], &arcs[j]);
            counts[i][j] = c;
            counts[j][i] = c;
            let ok = intersection_number(&codes[i], &codes[j], &model)? == c;
            minimal[i][j] = ok;
            minimal[j][i] = ok;
        }
    }
    let mut keys = HashMap::new();
    let distinct = codes.iter().all(|c| keys.insert(canonical_key(&model, c), ()).is_none());
    Ok(DoubledPolygonFamily {
        n,
        vertices: g.pts.iter().step_by(2).cloned().collect(),
        arcs,
        counts,
        codes,
        minimal,
        distinct,
    })
}

/// Vertices are classes; an edge joins two classes meeting at most `k` times.
#[derive(Debug, Clone)]
pub struct CompatibilityGraph {
    pub vertices: Vec<ArcCode>,
    adj: Vec<Vec<u64>>,
    pub k: usize,
    pub filter: Option<EndpointFilter>,
}

impl CompatibilityGraph {
    pub fn from_adjacency(n: usize, edges: &[(usize, usize)]) -> CompatibilityGraph {
        let words = n.div_ceil(64);
        let mut adj = vec![vec![0u64; words]; n];
        for &(a, b) in edges {
            if a != b {
                adj[a][b / 64] |= 1 << (b % 64);
                adj[b][a / 64] |= 1 << (a % 64);
            }
        }
        CompatibilityGraph { vertices: Vec::new(), adj, k: 0, filter: None }
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.adj[a][b / 64] >> (b % 64) & 1 == 1
    }

    pub fn degree(&self, a: usize) -> usize {
        self.adj[a].iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_clique(&self, vs: &[usize]) -> bool {
        vs.iter().enumerate().all(|(i, &a)| vs[i + 1..].iter().all(|&b| self.adjacent(a, b)))
    }
}

/// Intersection data reused across many pairs.
struct Prepared {
    rotations: Vec<ArcCode>,
}

fn pair_at_most(model: &DiscModel, a: &ArcCode, pb: &Prepared, b: &ArcCode, k: usize) -> Result<bool> {
    // any drawing with at most k crossings settles the question
    for rb in &pb.rotations {
        let d = Drawing::new(model.m, vec![a.clone(), rb.clone()]);
        if d.crossings(0, 1) <= k {
            return Ok(true);
        }
    }
    Ok(intersection_number(a, b, model)? <= k)
}

pub fn build_graph(codes: &[ArcCode], k: usize, model: &DiscModel) -> Result<CompatibilityGraph> {
    let mut keys: HashMap<ArcCode, usize> = HashMap::new();
    for (i, c) in codes.iter().enumerate() {
        if let Some(&j) = keys.get(&canonical_key(model, c)) {
            return Err(Error::DuplicateClass(j, i));
        }
        keys.insert(canonical_key(model, c), i);
    }
    let prepared: Vec<Prepared> =
        codes.iter().map(|c| Prepared { rotations: rotations(model.m, c, ROTATION_WINDOW) }).collect();
    let mut edges = Vec::new();
    for i in 0..codes.len() {
        for j in i + 1..codes.len() {
            if pair_at_most(model, &codes[i], &prepared[j], &codes[j], k)? {
                edges.push((i, j));
            }
        }
    }
    let mut g = CompatibilityGraph::from_adjacency(codes.len(), &edges);
    g.vertices = codes.to_vec();
    g.k = k;
    Ok(g)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliqueResult {
    pub clique: Vec<usize>,
    pub size: usize,
    pub exhausted: bool,
}

struct Search<'a> {
    g: &'a CompatibilityGraph,
    deadline: Option<Instant>,
    nodes: u64,
    timed_out: bool,
}

fn first_bit(bits: &[u64]) -> Option<usize> {
    bits.iter().position(|&w| w != 0).map(|i| i * 64 + bits[i].trailing_zeros() as usize)
}

fn count(bits: &[u64]) -> usize {
    bits.iter().map(|w| w.count_ones() as usize).sum()
}

impl Search<'_> {
    /// Greedy colouring of `cand`; vertices with their colour number, ascending.
    fn colour(&self, cand: &[u64]) -> Vec<(usize, usize)> {
        let mut left = cand.to_vec();
        let mut out = Vec::with_capacity(count(cand));
        let mut colour = 0;
        while left.iter().any(|&w| w != 0) {
            colour += 1;
            let mut q = left.clone();
            while let Some(v) = first_bit(&q) {
                q[v / 64] &= !(1 << (v % 64));
                left[v / 64] &= !(1 << (v % 64));
                for (x, a) in q.iter_mut().zip(&self.g.adj[v]) {
                    *x &= !a;
                }
                out.push((v, colour));
            }
        }
        out
    }

    /// Finds a clique larger than `best`, extending `current` within `cand`.
    fn expand(&mut self, current: &mut Vec<usize>, cand: Vec<u64>, best: &mut Vec<usize>, target: Option<usize>) -> bool {
        self.nodes += 1;
        if self.nodes % 1024 == 1 {
            if let Some(d) = self.deadline {
                if Instant::now() > d {
                    self.timed_out = true;
                }
            }
        }
        if self.timed_out {
            return false;
        }
        let mut cand = cand;
        let order = self.colour(&cand);
        for &(v, c) in order.iter().rev() {
            let need = target.map_or(best.len() + 1, |t| t);
            if current.len() + c < need {
                return false;
            }
            current.push(v);
            let next: Vec<u64> = cand.iter().zip(&self.g.adj[v]).map(|(a, b)| a & b).collect();
            if next.iter().all(|&w| w == 0) {
                if current.len() > best.len() {
                    *best = current.clone();
                    if target.is_some_and(|t| best.len() >= t) {
                        current.pop();
                        return true;
                    }
                }
            } else if self.expand(current, next, best, target) {
                current.pop();
                return true;
            }
            current.pop();
            cand[v / 64] &= !(1 << (v % 64));
            if self.timed_out {
                return false;
            }
        }
        false
    }
}

/// Maximum clique by colour-bounded branch and bound; among optimal cliques
/// the lexicographically smallest is returned when the search completes.
pub fn max_clique(g: &CompatibilityGraph, budget: Option<Duration>) -> CliqueResult {
    let n = g.len();
    if n == 0 {
        return CliqueResult { clique: vec![], size: 0, exhausted: true };
    }
    let deadline = budget.map(|b| Instant::now() + b);
    let order = degeneracy_order(g);
    let rg = relabel(g, &order);
    let mut s = Search { g: &rg, deadline, nodes: 0, timed_out: false };
    let full = full_set(n);
    let mut best = Vec::new();
    s.expand(&mut Vec::new(), full, &mut best, None);
    let mut clique: Vec<usize> = best.iter().map(|&v| order[v]).collect();
    clique.sort_unstable();
    if s.timed_out {
        return CliqueResult { size: clique.len(), clique, exhausted: false };
    }
    let size = clique.len();
    // lexicographically smallest clique of that size, by decision queries
    let mut chosen: Vec<usize> = Vec::new();
    let mut allowed = full_set(n);
    for v in 0..n {
        if chosen.len() == size {
            break;
        }
        if allowed[v / 64] >> (v % 64) & 1 == 0 {
            continue;
        }
        let mut cand: Vec<u64> = allowed.iter().zip(&g.adj[v]).map(|(a, b)| a & b).collect();
        for u in 0..=v {
            cand[u / 64] &= !(1 << (u % 64));
        }
        let need = size - chosen.len() - 1;
        let ok = need == 0 || {
            let mut ss = Search { g, deadline, nodes: 0, timed_out: false };
            let mut b = Vec::new();
            let found = ss.expand(&mut Vec::new(), cand.clone(), &mut b, Some(need));
            if ss.timed_out {
                return CliqueResult { size, clique, exhausted: false };
            }
            found || b.len() >= need
        };
        allowed[v / 64] &= !(1 << (v % 64));
        if ok {
            chosen.push(v);
            allowed = cand;
        }
    }
    debug_assert!(g.is_clique(&chosen));
    assert!(g.is_clique(&chosen) && chosen.len() == size, "clique verification failed");
    CliqueResult { size, clique: chosen, exhausted: true }
}

fn full_set(n: usize) -> Vec<u64> {
    let mut v = vec![0u64; n.div_ceil(64)];
    for i in 0..n {
        v[i / 64] |= 1 << (i % 64);
    }
    v
}

/// Vertices by repeatedly removing a minimum-degree vertex, reversed so the
/// densest core comes first.
fn degeneracy_order(g: &CompatibilityGraph) -> Vec<usize> {
    let n = g.len();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut gone = vec![false; n];
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n).filter(|&v| !gone[v]).min_by_key(|&v| (deg[v], v)).unwrap();
        gone[v] = true;
        out.push(v);
        for u in 0..n {
            if !gone[u] && g.adjacent(u, v) {
                deg[u] -= 1;
            }
        }
    }
    out.reverse();
    out
}

fn relabel(g: &CompatibilityGraph, order: &[usize]) -> CompatibilityGraph {
    let n = g.len();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if g.adjacent(order[i], order[j]) {
                edges.push((i, j));
            }
        }
    }
    CompatibilityGraph::from_adjacency(n, &edges)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    /// Interior puncture to boundary, at most one crossing.
    Thm1,
    /// Any endpoints, at most two crossings.
    Thm2,
    /// Any endpoints, at most one crossing.
    All1,
    /// Between the boundary and one fixed puncture, at most one crossing.
    PPrime,
    /// Boundary to boundary, at most two crossings.
    Pp,
}

impl Variant {
    pub fn filter(self) -> EndpointFilter {
        match self {
            Variant::Thm1 => EndpointFilter::PunctureToBoundary,
            Variant::Thm2 | Variant::All1 => EndpointFilter::All,
            Variant::PPrime => EndpointFilter::BoundaryToFirst,
            Variant::Pp => EndpointFilter::BoundaryToBoundary,
        }
    }

    pub fn k(self) -> usize {
        match self {
            Variant::Thm1 | Variant::All1 | Variant::PPrime => 1,
            Variant::Thm2 | Variant::Pp => 2,
        }
    }

    /// Known maximum for `m` interior punctures.
    pub fn expected(self, m: usize) -> usize {
        let x = m - 1;
        match self {
            Variant::Thm1 => x * (x + 1),
            Variant::Thm2 => x * (x + 1) * (x + 2),
            Variant::All1 => 2 * x * (x + 1),
            Variant::PPrime => x * (x + 1) / 2,
            Variant::Pp => x * (x + 1) * (x + 2) / 6,
        }
    }

    /// Word-length bound at which the maximum already appears for small `m`.
    pub fn default_length(self, m: usize) -> usize {
        m
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SearchResult {
    pub variant: Variant,
    pub m: usize,
    pub k: usize,
    pub length: usize,
    pub universe: usize,
    pub clique: Vec<ArcCode>,
    pub size: usize,
    pub exhausted: bool,
    pub expected: usize,
    pub seconds: f64,
}

/// Enumerates the universe, builds its graph and finds a maximum clique.
pub fn search(m: usize, variant: Variant, length: usize, budget: Option<Duration>) -> Result<SearchResult> {
    let t = Instant::now();
    let model = make_disc_model(m)?;
    let universe = enumerate_codes(&model, variant.filter(), length);
    let g = build_graph(&universe, variant.k(), &model)?;
    let res = max_clique(&g, budget.map(|b| b.saturating_sub(t.elapsed())));
    Ok(SearchResult {
        variant,
        m,
        k: variant.k(),
        length,
        universe: universe.len(),
        clique: res.clique.iter().map(|&i| universe[i].clone()).collect(),
        size: res.size,
        exhausted: res.exhausted,
        expected: variant.expected(m),
        seconds: t.elapsed().as_secs_f64(),
    })
}
