//! Fish: pairs of arcs from one puncture to the boundary that cross once.
//!
//! The head is the region cut off at the nose, the tail the region cut off
//! at the boundary. Both are computed on the exact polylines of a realized
//! family.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};
use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};

use crate::code::{inverse, Anchor, Token};
use crate::disc::{punctures_in_region, transverse_intersections, PLArc};
use crate::error::{Error, Result};
use crate::geom::{cross, locate, on_segment, segment_hit, signed_area2, Inside, Point, SegHit, Q};
use crate::position::RealizedFamily;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fish {
    pub nose: usize,
    /// `(alpha, beta)`: the head fills the counterclockwise sector from alpha to beta.
    pub arcs: (usize, usize),
    pub crossing: Point,
    pub head_punctures: BTreeSet<usize>,
    pub tail_punctures: BTreeSet<usize>,
    pub minimal: bool,
    #[serde(skip)]
    pub head: Vec<Point>,
    #[serde(skip)]
    pub tail: Vec<Point>,
}

impl Fish {
    pub fn is_q_fish(&self, q: usize) -> bool {
        self.tail_punctures.contains(&q)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TailEquivalence {
    pub q: usize,
    pub classes: Vec<Vec<usize>>,
    pub c_q: usize,
}

/// An arc of the family traced from its puncture end.
struct Nosed {
    nose: usize,
    pl: PLArc,
    word: Vec<Token>,
    /// The stored arc runs from the boundary, so chord indices are mirrored.
    flipped: bool,
}

fn nosed(fam: &RealizedFamily) -> Result<Vec<Nosed>> {
    let pl = fam.planar()?;
    fam.drawing
        .arcs
        .iter()
        .zip(pl)
        .enumerate()
        .map(|(i, (code, pl))| match (code.start, code.end) {
            (Anchor::Puncture(r), Anchor::Boundary) => Ok(Nosed { nose: r, pl: pl.clone(), word: code.word.clone(), flipped: false }),
            (Anchor::Boundary, Anchor::Puncture(r)) => {
                Ok(Nosed { nose: r, pl: pl.reversed(), word: inverse(&code.word), flipped: true })
            }
            _ => Err(Error::Hypothesis(format!("arc {i} ({}) does not run from a puncture to the boundary", fam.arcs[i]))),
        })
        .collect()
}

fn require_certified(fam: &RealizedFamily) -> Result<()> {
    if fam.certificate {
        Ok(())
    } else {
        Err(Error::NotCertified)
    }
}

/// Position along a polyline: segment index, then parameter.
fn before(seg: usize, s: &Q, x_seg: usize, x_s: &Q) -> bool {
    (seg, s) <= (x_seg, x_s)
}

/// Walks the long way round the rectangle between two points of the top edge.
fn long_way(fam: &RealizedFamily, from: &Point, to: &Point) -> Vec<Point> {
    let r = fam.model.rect();
    // rect is (0,0), (w,0), (w,1), (0,1)
    if from.x < to.x {
        vec![r[3].clone(), r[0].clone(), r[1].clone(), r[2].clone()]
    } else {
        vec![r[2].clone(), r[1].clone(), r[0].clone(), r[3].clone()]
    }
}

fn end_on_top(p: &PLArc) -> Result<&Point> {
    let e = p.vertices.last().unwrap();
    if e.y != Q::one() {
        return Err(Error::Degenerate(format!("boundary end {e:?} is not on the top edge")));
    }
    Ok(e)
}

/// Tail polygon of two arcs from their crossing to the boundary, plus its punctures.
/// The tail is whichever side of the two tail pieces avoids the nose.
fn tail_region(fam: &RealizedFamily, a: &PLArc, sa: usize, b: &PLArc, sb: usize, x: &Point, nose: usize) -> Result<(Vec<Point>, BTreeSet<usize>)> {
    let (ea, eb) = (end_on_top(a)?, end_on_top(b)?);
    let mut short = vec![x.clone()];
    short.extend(a.vertices[sa + 1..].iter().cloned());
    short.extend(b.vertices[sb + 1..].iter().rev().cloned());
    let inside = punctures_in_region(&short, &fam.model)?;
    if !inside.contains(&nose) {
        return Ok((short, inside));
    }
    let mut long = vec![x.clone()];
    long.extend(a.vertices[sa + 1..].iter().cloned());
    long.extend(long_way(fam, ea, eb));
    long.extend(b.vertices[sb + 1..].iter().rev().cloned());
    let inside = punctures_in_region(&long, &fam.model)?;
    Ok((long, inside))
}

/// All fish of a certified family of arcs from punctures to the boundary.
pub fn find_fish(fam: &RealizedFamily) -> Result<Vec<Fish>> {
    require_certified(fam)?;
    let arcs = nosed(fam)?;
    let mut out = Vec::new();
    for i in 0..arcs.len() {
        for j in i + 1..arcs.len() {
            if arcs[i].nose != arcs[j].nose || fam.pairwise_counts[i][j] == 0 {
                continue;
            }
            let xs = transverse_intersections(&arcs[i].pl, &arcs[j].pl)?;
            if xs.len() != 1 {
                return Err(Error::Hypothesis(format!("arcs {i} and {j} share a nose and cross {} times", xs.len())));
            }
            out.push(make_fish(fam, &arcs, i, j, &xs[0])?);
        }
    }
    Ok(out)
}

fn make_fish(fam: &RealizedFamily, arcs: &[Nosed], i: usize, j: usize, x: &crate::disc::Crossing) -> Result<Fish> {
    let r = arcs[i].nose;
    let (a, b) = (&arcs[i].pl, &arcs[j].pl);
    let mut head: Vec<Point> = a.vertices[..=x.seg_a].to_vec();
    head.push(x.point.clone());
    head.extend(b.vertices[1..=x.seg_b].iter().rev().cloned());
    let ccw = signed_area2(&head) > Q::zero();
    let (alpha, beta, sa, sb) = if ccw { (i, j, x.seg_a, x.seg_b) } else { (j, i, x.seg_b, x.seg_a) };
    if !ccw {
        head.reverse();
    }
    let head_punctures = punctures_in_region(&head, &fam.model)?;
    let (tail, tail_punctures) = tail_region(fam, &arcs[alpha].pl, sa, &arcs[beta].pl, sb, &x.point, r)?;
    let order = fam.at_nose(r);
    let pos = |a: usize| order.iter().position(|&(k, _)| k == a).expect("arc listed at its nose");
    let minimal = pos(beta) == (pos(alpha) + 1) % order.len();
    Ok(Fish { nose: r, arcs: (alpha, beta), crossing: x.point.clone(), head_punctures, tail_punctures, minimal, head, tail })
}

/// Whether `d` points strictly inside the counterclockwise sector from `u` to `v`.
fn in_sector(u: &Point, v: &Point, d: &Point) -> bool {
    let o = Point::new(Q::zero(), Q::zero());
    let uv = cross(&o, u, v);
    let ud = cross(&o, u, d) > Q::zero();
    let dv = cross(&o, d, v) > Q::zero();
    if uv > Q::zero() {
        ud && dv
    } else {
        ud || dv
    }
}

fn direction(p: &PLArc) -> Point {
    let (a, b) = (&p.vertices[0], &p.vertices[1]);
    Point::new(&b.x - &a.x, &b.y - &a.y)
}

/// Minimality read off the polylines: no other arc at the nose starts inside the head.
pub fn minimal_by_departure(fam: &RealizedFamily, f: &Fish) -> Result<bool> {
    let arcs = nosed(fam)?;
    let (u, v) = (direction(&arcs[f.arcs.0].pl), direction(&arcs[f.arcs.1].pl));
    Ok(fam
        .at_nose(f.nose)
        .iter()
        .filter(|&&(k, _)| k != f.arcs.0 && k != f.arcs.1)
        .all(|&(k, _)| !in_sector(&u, &v, &direction(&arcs[k].pl))))
}

fn exponent_sums(w: &[Token]) -> BTreeMap<usize, i64> {
    let mut e = BTreeMap::new();
    for &t in w {
        *e.entry(t.unsigned_abs() as usize).or_insert(0) += t.signum() as i64;
    }
    e
}

/// Head and tail punctures from wall-crossing winding numbers of the drawing,
/// independent of the polylines.
pub fn fish_sets_by_winding(fam: &RealizedFamily, f: &Fish) -> Result<(BTreeSet<usize>, BTreeSet<usize>)> {
    let arcs = nosed(fam)?;
    let (a, b) = f.arcs;
    let xs = fam.drawing.crossing_pairs(a, b);
    if xs.len() != 1 {
        return Err(Error::Hypothesis(format!("arcs {a} and {b} cross {} times in the drawing", xs.len())));
    }
    let chord = |k: usize, c: usize| if arcs[k].flipped { arcs[k].word.len() - c } else { c };
    let (ca, cb) = (chord(a, xs[0].0), chord(b, xs[0].1));
    let (wa, wb) = (&arcs[a].word, &arcs[b].word);
    let mut head = wa[..ca].to_vec();
    head.extend(inverse(&wb[..cb]));
    let mut tail = wa[ca..].to_vec();
    tail.extend(inverse(&wb[cb..]));
    let r = f.nose;
    let h: BTreeSet<usize> = exponent_sums(&head).into_iter().filter(|&(s, e)| s != r && e != 0).map(|x| x.0).collect();
    let around: BTreeSet<usize> = exponent_sums(&tail).into_iter().filter(|&(_, e)| e != 0).map(|x| x.0).collect();
    let t = if around.contains(&r) {
        (1..=fam.model.m).filter(|s| *s != r && !around.contains(s)).collect()
    } else {
        around
    };
    Ok((h, t))
}

fn equivalence(m: usize, fish: &[Fish], q: usize) -> TailEquivalence {
    let mut uf = UnionFind::<usize>::new(m + 1);
    for f in fish.iter().filter(|f| f.is_q_fish(q)) {
        for &s in &f.head_punctures {
            uf.union(f.nose, s);
        }
    }
    let mut by_root: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for s in (1..=m).filter(|&s| s != q) {
        by_root.entry(uf.find(s)).or_default().push(s);
    }
    let mut classes: Vec<Vec<usize>> = by_root.into_values().collect();
    classes.sort();
    TailEquivalence { q, c_q: classes.len(), classes }
}

/// The classes of `~q` generated by all q-fish, minimal or not.
pub fn tail_equivalence(fam: &RealizedFamily, q: usize) -> Result<TailEquivalence> {
    if q == 0 || q > fam.model.m {
        return Err(Error::InvalidParameter(format!("puncture {q} out of range")));
    }
    Ok(equivalence(fam.model.m, &find_fish(fam)?, q))
}

/// Punctures between consecutive arcs at nose `r`, counterclockwise.
pub fn consecutive_d(fam: &RealizedFamily, r: usize) -> Result<Vec<i64>> {
    require_certified(fam)?;
    let fish = find_fish(fam)?;
    d_sequence(fam, &nosed(fam)?, &fish, r).map(|v| v.into_iter().map(|x| x.0).collect())
}

/// Per consecutive pair: d, and the tail size of the fish it forms if any.
fn d_sequence(fam: &RealizedFamily, arcs: &[Nosed], fish: &[Fish], r: usize) -> Result<Vec<(i64, Option<usize>)>> {
    let chi = fam.model.euler_abs() as i64;
    let order: Vec<usize> = fam.at_nose(r).iter().map(|x| x.0).collect();
    let k = order.len();
    if k == 1 {
        return Ok(vec![(chi, None)]);
    }
    let mut out = Vec::with_capacity(k);
    for i in 0..k {
        let (a, b) = (order[i], order[(i + 1) % k]);
        match fam.pairwise_counts[a][b] {
            0 => {
                let mut poly = arcs[a].pl.vertices.clone();
                let back = &arcs[b].pl.vertices;
                poly.extend(back[1..].iter().rev().cloned());
                let inside = punctures_in_region(&poly, &fam.model)?.len() as i64;
                let d = if signed_area2(&poly) > Q::zero() { inside } else { chi - inside };
                out.push((d, None));
            }
            1 => {
                let f = fish
                    .iter()
                    .find(|f| f.arcs == (a, b) || f.arcs == (b, a))
                    .expect("crossing arcs at one nose form a fish");
                let ht = f.head_punctures.len() as i64 - f.tail_punctures.len() as i64;
                let d = if f.arcs == (a, b) { ht } else { chi - ht };
                out.push((d, Some(f.tail_punctures.len())));
            }
            n => return Err(Error::Hypothesis(format!("arcs {a} and {b} cross {n} times"))),
        }
    }
    Ok(out)
}

/// Parameter of `p` along segment `ab`, for `p` on the segment.
fn param(a: &Point, b: &Point, p: &Point) -> Q {
    if a.x != b.x {
        (&p.x - &a.x) / (&b.x - &a.x)
    } else {
        (&p.y - &a.y) / (&b.y - &a.y)
    }
}

/// Whether some piece of `p`'s boundary, cut where it meets `q`, lies inside `q`.
fn boundary_enters(p: &[Point], q: &[Point]) -> bool {
    let n = p.len();
    for i in 0..n {
        let (a, b) = (&p[i], &p[(i + 1) % n]);
        let mut cuts = vec![Q::zero(), Q::one()];
        for j in 0..q.len() {
            let (c, d) = (&q[j], &q[(j + 1) % q.len()]);
            match segment_hit(a, b, c, d) {
                SegHit::None => {}
                SegHit::Cross { s, .. } => cuts.push(s),
                SegHit::Degenerate => {
                    for e in [c, d] {
                        if on_segment(e, a, b) {
                            cuts.push(param(a, b, e));
                        }
                    }
                }
            }
        }
        cuts.sort();
        cuts.dedup();
        for w in cuts.windows(2) {
            let mid = a.lerp(b, &((&w[0] + &w[1]) / Q::from_integer(2.into())));
            if locate(&mid, q) == Inside::In {
                return true;
            }
        }
    }
    false
}

/// Whether two simple polygons have overlapping interiors.
pub fn interiors_intersect(p: &[Point], q: &[Point]) -> bool {
    boundary_enters(p, q) || boundary_enters(q, p)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub statement: String,
    pub passed: bool,
    /// Instances checked.
    pub checked: usize,
    pub witnesses: Vec<String>,
}

impl Verdict {
    fn new(statement: &str) -> Verdict {
        Verdict { statement: statement.into(), passed: true, checked: 0, witnesses: Vec::new() }
    }

    fn check(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.passed = false;
            if self.witnesses.len() < 20 {
                self.witnesses.push(witness());
            }
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FishReport {
    pub m: usize,
    pub euler_abs: usize,
    pub fish: Vec<Fish>,
    /// Indices into `fish` of the minimal q-fish, per q.
    pub minimal_q_fish: BTreeMap<usize, Vec<usize>>,
    /// Indices into `fish` of the minimal fish with nose r, per r.
    pub minimal_at_nose: BTreeMap<usize, Vec<usize>>,
    pub arcs_at_nose: BTreeMap<usize, usize>,
    pub d: BTreeMap<usize, Vec<i64>>,
    pub classes: BTreeMap<usize, TailEquivalence>,
    pub verdicts: Vec<Verdict>,
}

impl FishReport {
    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.passed)
    }

    pub fn verdict(&self, statement: &str) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| v.statement == statement)
    }
}

/// Crossings of arc `g` with the part of `a` before position `(seg, s)`.
fn enters_before(g: &PLArc, a: &PLArc, seg: usize, s: &Q) -> Result<bool> {
    Ok(transverse_intersections(a, g)?.iter().any(|x| before(x.seg_a, &x.s, seg, s)))
}

/// Position of a fish's crossing along each of its two arcs.
fn crossing_positions(arcs: &[Nosed], f: &Fish) -> Result<((usize, Q), (usize, Q))> {
    let x = transverse_intersections(&arcs[f.arcs.0].pl, &arcs[f.arcs.1].pl)?;
    let x = &x[0];
    Ok(((x.seg_a, x.s.clone()), (x.seg_b, x.t.clone())))
}

/// Evaluates every fish statement on a family of arcs from punctures to the
/// boundary that pairwise cross at most once.
pub fn audit_inequalities(fam: &RealizedFamily) -> Result<FishReport> {
    require_certified(fam)?;
    let arcs = nosed(fam)?;
    for i in 0..fam.len() {
        for j in i + 1..fam.len() {
            if fam.pairwise_counts[i][j] > 1 {
                return Err(Error::Hypothesis(format!(
                    "arcs {i} ({}) and {j} ({}) cross {} times",
                    fam.arcs[i], fam.arcs[j], fam.pairwise_counts[i][j]
                )));
            }
        }
    }
    let m = fam.model.m;
    let chi = fam.model.euler_abs();
    let fish = find_fish(fam)?;
    let punctures: Vec<usize> = (1..=m).collect();

    let minimal_q_fish: BTreeMap<usize, Vec<usize>> = punctures
        .iter()
        .map(|&q| (q, (0..fish.len()).filter(|&i| fish[i].minimal && fish[i].is_q_fish(q)).collect()))
        .collect();
    let minimal_at_nose: BTreeMap<usize, Vec<usize>> = punctures
        .iter()
        .map(|&r| (r, (0..fish.len()).filter(|&i| fish[i].minimal && fish[i].nose == r).collect()))
        .collect();
    let arcs_at_nose: BTreeMap<usize, usize> = punctures.iter().map(|&r| (r, fam.at_nose(r).len())).collect();
    let classes: BTreeMap<usize, TailEquivalence> = punctures.iter().map(|&q| (q, equivalence(m, &fish, q))).collect();
    let mut seqs = BTreeMap::new();
    for &r in &punctures {
        if arcs_at_nose[&r] > 0 {
            seqs.insert(r, d_sequence(fam, &arcs, &fish, r)?);
        }
    }
    let tail_sum = |r: usize| -> usize { minimal_at_nose[&r].iter().map(|&i| fish[i].tail_punctures.len()).sum() };

    let mut nonempty = Verdict::new("head-tail-nonempty");
    for (i, f) in fish.iter().enumerate() {
        nonempty.check(!f.head_punctures.is_empty() && !f.tail_punctures.is_empty(), || format!("fish {i} {:?}", f.arcs));
    }

    let mut classes_v = Verdict::new("classes");
    for &q in &punctures {
        let (nf, c) = (minimal_q_fish[&q].len(), classes[&q].c_q);
        classes_v.check(chi >= nf + c, || format!("q={q}: |F_q|={nf} c_q={c} |chi|={chi}"));
    }

    let mut bigons = Verdict::new("bigons");
    let mut cor = Verdict::new("cor-bigons");
    for &r in &punctures {
        let (k, t) = (arcs_at_nose[&r], tail_sum(r));
        bigons.check(k <= chi + t, || format!("r={r}: k_r={k} sum|t|={t}"));
        let c = classes[&r].c_q;
        cor.check(k <= c + t, || format!("r={r}: k_r={k} c_r={c} sum|t|={t}"));
    }

    let mut tails = Verdict::new("tails");
    for (i, f) in fish.iter().enumerate() {
        let ((sa, s), (sb, t)) = crossing_positions(&arcs, f)?;
        for &q in &f.tail_punctures {
            for &(g, _) in fam.at_nose(q) {
                let hit = enters_before(&arcs[g].pl, &arcs[f.arcs.0].pl, sa, &s)?
                    || enters_before(&arcs[g].pl, &arcs[f.arcs.1].pl, sb, &t)?;
                tails.check(!hit, || format!("arc {g} from {q} enters the head of fish {i}"));
            }
        }
    }

    let mut cycles = Verdict::new("cycles");
    for &q in &punctures {
        let noses: BTreeSet<usize> = fish.iter().filter(|f| f.is_q_fish(q)).map(|f| f.nose).collect();
        cycles.check(punctures.iter().any(|&v| v != q && !noses.contains(&v)), || format!("q={q}: every other puncture is a nose of a q-fish"));
    }

    let mut disjoint = Verdict::new("tails-disjoint");
    for &q in &punctures {
        let qf: Vec<usize> = (0..fish.len()).filter(|&i| fish[i].is_q_fish(q)).collect();
        for (x, &i) in qf.iter().enumerate() {
            for &j in &qf[x + 1..] {
                let (f, g) = (&fish[i], &fish[j]);
                if f.nose == g.nose {
                    continue;
                }
                let ok = !interiors_intersect(&f.head, &g.head)
                    || f.head_punctures.contains(&g.nose)
                    || g.head_punctures.contains(&f.nose);
                disjoint.check(ok, || format!("q={q}: heads of fish {i} and {j} meet with both noses outside"));
            }
        }
    }

    let mut three = Verdict::new("not-three");
    for (i, f) in fish.iter().enumerate() {
        for (j, g) in fish.iter().enumerate() {
            if i != j && f.minimal && g.minimal && f.nose == g.nose && f.arcs.1 == g.arcs.0 && f.arcs.0 != g.arcs.1 {
                three.check(!interiors_intersect(&f.tail, &g.tail), || format!("tails of fish {i} and {j} meet"));
            }
        }
    }

    let mut dsum = Verdict::new("d-sum");
    let mut dbound = Verdict::new("d-bounds");
    for (&r, seq) in &seqs {
        let total: i64 = seq.iter().map(|x| x.0).sum();
        dsum.check(total == chi as i64, || format!("r={r}: sum d = {total}"));
        for (i, &(d, t)) in seq.iter().enumerate() {
            let lo = t.map_or(1, |t| 1 - t as i64);
            dbound.check(d >= lo, || format!("r={r}: d_{} = {d} < {lo}", i + 1));
        }
    }

    Ok(FishReport {
        m,
        euler_abs: chi,
        fish,
        minimal_q_fish,
        minimal_at_nose,
        arcs_at_nose,
        d: seqs.into_iter().map(|(r, v)| (r, v.into_iter().map(|x| x.0).collect())).collect(),
        classes,
        verdicts: vec![nonempty, classes_v, bigons, cor, tails, cycles, disjoint, three, dsum, dbound],
    })
}
