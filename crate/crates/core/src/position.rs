//! Intersection numbers, homotopy tests and certified joint drawings.

use std::collections::{BTreeMap, HashMap};
use std::sync::OnceLock;

use crate::chord::{rotations, site_puncture, Drawing, Item, Port, ROTATION_WINDOW};
use crate::code::{canonical_key, delta, free_reduce, inverse, is_essential, reduce_code, Anchor, ArcCode, Token};
use crate::disc::{make_disc_model, punctures_in_region, DiscModel, PLArc};
use crate::error::{Error, Result};
use crate::geom::{Point, Q};

/// Where two drawn arcs fail the bigon criterion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Defect {
    /// Two crossings joined by homotopic subarcs; `(chord of a, chord of b)` each.
    Bigon((usize, usize), (usize, usize)),
    /// A crossing joined to a common anchor by homotopic subarcs.
    HalfBigon { crossing: (usize, usize), a_end: usize, b_end: usize },
}

fn sub_word(w: &[Token], from: usize, to: usize) -> Vec<Token> {
    if from <= to {
        w[from..to].to_vec()
    } else {
        inverse(&w[to..from])
    }
}

fn is_delta_power(m: usize, w: &[Token]) -> bool {
    if w.is_empty() {
        return true;
    }
    if w.len() % m != 0 {
        return false;
    }
    let k = (w.len() / m) as i32;
    w == delta(m, k).as_slice() || w == delta(m, -k).as_slice()
}

fn anchor_of(code: &ArcCode, end: usize) -> Anchor {
    if end == 0 {
        code.start
    } else {
        code.end
    }
}

/// Tokens passed walking from end `end` of `code` to chord `c`.
fn path_to_chord(code: &ArcCode, end: usize, c: usize) -> Vec<Token> {
    if end == 0 {
        code.word[..c].to_vec()
    } else {
        inverse(&code.word[c..])
    }
}

/// First bigon or half-bigon between drawn arcs `a` and `b`, if any.
pub fn find_defect(d: &Drawing, a: usize, b: usize) -> Option<Defect> {
    defects(d, a, b).next()
}

/// Every bigon and half-bigon between arcs `a` and `b`.
fn defects(d: &Drawing, a: usize, b: usize) -> impl Iterator<Item = Defect> {
    let mut out = Vec::new();
    let m = d.m;
    let (ca, cb) = (&d.arcs[a], &d.arcs[b]);
    let xs = d.crossing_pairs(a, b);
    for (i, &x) in xs.iter().enumerate() {
        for &y in &xs[i + 1..] {
            let (x, y) = if x.0 <= y.0 { (x, y) } else { (y, x) };
            if sub_word(&ca.word, x.0, y.0) == sub_word(&cb.word, x.1, y.1) {
                out.push(Defect::Bigon(x, y));
            }
        }
    }
    for &x in &xs {
        for ea in 0..2 {
            for eb in 0..2 {
                let anchor = anchor_of(ca, ea);
                if anchor != anchor_of(cb, eb) {
                    continue;
                }
                let mut loop_word = path_to_chord(ca, ea, x.0);
                loop_word.extend(inverse(&path_to_chord(cb, eb, x.1)));
                let w = free_reduce(&loop_word);
                let hit = match anchor {
                    Anchor::Puncture(r) => w.iter().all(|t| *t == r as Token) || w.iter().all(|t| *t == -(r as Token)),
                    Anchor::Boundary => is_delta_power(m, &w),
                };
                if hit {
                    out.push(Defect::HalfBigon { crossing: x, a_end: ea, b_end: eb });
                }
            }
        }
    }
    out.into_iter()
}

/// Moves strands of arc `a` next to the matching strands of arc `b`.
fn align(d: &Drawing, pairs: &[(Item, Item)], outer: Option<(Item, Item)>, above: bool, before: bool) -> Drawing {
    let mut walls = d.walls.clone();
    for &(ia, ib) in pairs {
        let t = d.arcs[ia.0].word[ia.1];
        let wall = &mut walls[t.unsigned_abs() as usize - 1];
        wall.retain(|x| *x != ia);
        let pos = wall.iter().position(|x| *x == ib).expect("strand present");
        // "left of travel" is above for rightward tokens
        let up = above == (t > 0);
        wall.insert(if up { pos } else { pos + 1 }, ia);
    }
    let mut outer_order = d.outer.clone();
    if let Some((ia, ib)) = outer {
        outer_order.retain(|x| *x != ia);
        let pos = outer_order.iter().position(|x| *x == ib).expect("end present");
        outer_order.insert(if before { pos } else { pos + 1 }, ia);
    }
    Drawing::from_orders(d.m, d.arcs.clone(), walls, outer_order)
}

/// Strand pairs along homotopic subarcs, walking `a` forward from chord `xa` to `ya`
/// and `b` from `xb` to `yb` in whichever direction matches.
fn strand_pairs(d: &Drawing, a: usize, b: usize, xa: usize, ya: usize, xb: usize, yb: usize) -> Vec<(Item, Item)> {
    let n = ya.abs_diff(xa);
    debug_assert_eq!(n, yb.abs_diff(xb));
    let _ = d;
    (0..n)
        .map(|s| {
            let ka = if ya >= xa { xa + s } else { xa - 1 - s };
            let kb = if yb >= xb { xb + s } else { xb - 1 - s };
            ((a, ka), (b, kb))
        })
        .collect()
}

/// Applies the move that removes `defect`, choosing the side with fewer crossings.
/// Drawings with the strands of one arc of the defect pushed across the other.
fn defect_moves(d: &Drawing, a: usize, b: usize, defect: &Defect) -> Vec<Drawing> {
    let (pairs, outer) = match *defect {
        Defect::Bigon(x, y) => (strand_pairs(d, a, b, x.0, y.0, x.1, y.1), None),
        Defect::HalfBigon { crossing: x, a_end, b_end } => {
            let pa = strand_pairs_to_end(a, x.0, d.arcs[a].word.len(), a_end);
            let pb = strand_pairs_to_end(b, x.1, d.arcs[b].word.len(), b_end);
            if pa.len() != pb.len() || pa.iter().zip(&pb).any(|(x, y)| d.arcs[a].word[x.1] != d.arcs[b].word[y.1]) {
                return Vec::new();
            }
            let outer = anchor_of(&d.arcs[a], a_end).is_boundary().then_some(((a, a_end), (b, b_end)));
            (pa.into_iter().zip(pb).collect::<Vec<_>>(), outer)
        }
    };
    let flipped: Vec<(Item, Item)> = pairs.iter().map(|&(x, y)| (y, x)).collect();
    let outer_flipped = outer.map(|(x, y)| (y, x));
    let mut out = Vec::new();
    for (ps, o) in [(&pairs, outer), (&flipped, outer_flipped)] {
        for above in [true, false] {
            for front in [true, false] {
                out.push(align(d, ps, o, above, front));
            }
        }
    }
    out
}

fn remove_defect(d: &Drawing, a: usize, b: usize, defect: &Defect) -> Option<Drawing> {
    let before = d.crossings(a, b);
    let mut best: Option<(usize, Drawing)> = None;
    for nd in defect_moves(d, a, b, defect) {
        let c = nd.crossings(a, b) + nd.self_crossings(a) + nd.self_crossings(b);
        if c < before && best.as_ref().map_or(true, |(bc, _)| c < *bc) {
            best = Some((c, nd));
        }
    }
    best.map(|(_, nd)| nd)
}

/// Strands met walking from chord `chord` to end `end` of an arc with `len` tokens.
fn strand_pairs_to_end(arc: usize, chord: usize, len: usize, end: usize) -> Vec<Item> {
    if end == 0 {
        (0..chord).rev().map(|k| (arc, k)).collect()
    } else {
        (chord..len).map(|k| (arc, k)).collect()
    }
}

/// Reduces the two-arc drawing by bigon moves until the criterion passes.
fn reduce_pair(mut d: Drawing) -> Result<Drawing> {
    let budget = {
        let c = d.crossings(0, 1);
        c * c + 8
    };
    for _ in 0..budget {
        let mut found = false;
        let mut next = None;
        for defect in defects(&d, 0, 1) {
            found = true;
            if let Some(nd) = remove_defect(&d, 0, 1, &defect) {
                next = Some(nd);
                break;
            }
        }
        match next {
            Some(nd) => d = nd,
            None if !found => return Ok(d),
            None => return Err(Error::BudgetExceeded("no defect admits a reducing move".into())),
        }
    }
    Err(Error::BudgetExceeded("bigon removal did not terminate".into()))
}

/// The minimal two-arc drawing of `a` against rotations of `b`, certified by the bigon criterion.
pub fn minimal_pair_drawing(a: &ArcCode, b: &ArcCode, model: &DiscModel) -> Result<Drawing> {
    let m = model.m;
    let mut best: Option<(usize, Drawing)> = None;
    for rb in rotations(m, b, ROTATION_WINDOW) {
        let d = Drawing::new(m, vec![a.clone(), rb]);
        // the bigon criterion needs both drawn arcs embedded
        if d.self_crossings(0) + d.self_crossings(1) > 0 {
            continue;
        }
        let c = d.crossings(0, 1);
        if best.as_ref().map_or(true, |(bc, _)| c < *bc) {
            best = Some((c, d));
        }
    }
    if let Some((_, d)) = best {
        if let Ok(d) = reduce_pair(d) {
            return Ok(d);
        }
    }
    // stuck: move both boundary ends and retry from the cheapest drawings
    let mut all = Vec::new();
    for ra in rotations(m, a, ROTATION_WINDOW) {
        for rb in rotations(m, b, ROTATION_WINDOW) {
            let d = Drawing::new(m, vec![ra.clone(), rb]);
            if d.self_crossings(0) + d.self_crossings(1) == 0 {
                all.push((d.crossings(0, 1), d));
            }
        }
    }
    all.sort_by_key(|(c, _)| *c);
    for (_, d) in all {
        if let Ok(d) = reduce_pair(d) {
            return Ok(d);
        }
    }
    Err(Error::BudgetExceeded(format!("no defect-free drawing of {a} and {b}")))
}

/// Geometric intersection number of two classes.
pub fn intersection_number(a: &ArcCode, b: &ArcCode, model: &DiscModel) -> Result<usize> {
    Ok(minimal_pair_drawing(a, b, model)?.crossings(0, 1))
}

/// Whether two codes name the same unoriented class, decided geometrically:
/// equal anchors, disjoint minimal drawings, and a puncture-free region between them.
pub fn are_homotopic(a: &ArcCode, b: &ArcCode, model: &DiscModel) -> bool {
    let mut cands = Vec::new();
    if (a.start, a.end) == (b.start, b.end) {
        cands.push(b.clone());
    }
    if (a.start, a.end) == (b.end, b.start) {
        cands.push(b.reversed());
    }
    for b in cands {
        for rb in rotations(model.m, &b, ROTATION_WINDOW) {
            // identical chords cannot be drawn apart when both ends are punctures
            if &rb == a {
                return true;
            }
            let d = Drawing::new(model.m, vec![a.clone(), rb]);
            if d.crossings(0, 1) != 0 || d.self_crossings(0) != 0 || d.self_crossings(1) != 0 {
                continue;
            }
            let Ok(pl) = crate::chord::realize_drawing(&d) else { continue };
            if cobound_empty_region(&pl[0], &pl[1], model) {
                return true;
            }
        }
    }
    false
}

/// Counterclockwise boundary parameter of a point on the top edge.
fn top_param(model: &DiscModel, p: &Point) -> Q {
    model.width() - &p.x
}

/// Boundary path from `u` to `v` (both on the top edge), short or long way round.
fn boundary_path(model: &DiscModel, u: &Point, v: &Point, short: bool) -> Vec<Point> {
    if short {
        return vec![];
    }
    let rect = model.rect(); // (0,0), (w,0), (w,1), (0,1)
    // the long way leaves along the top edge away from v
    if top_param(model, u) < top_param(model, v) {
        // v lies ccw of u on the top edge: go clockwise from u
        vec![rect[2].clone(), rect[1].clone(), rect[0].clone(), rect[3].clone()]
    } else {
        vec![rect[3].clone(), rect[0].clone(), rect[1].clone(), rect[2].clone()]
    }
}

fn cobound_empty_region(a: &PLArc, b: &PLArc, model: &DiscModel) -> bool {
    let ends: Vec<bool> = vec![a.start.is_boundary(), a.end.is_boundary()];
    let choices: Vec<(bool, bool)> = match (ends[0], ends[1]) {
        (false, false) => vec![(true, true)],
        (true, false) | (false, true) => vec![(true, true), (false, false)],
        (true, true) => vec![(true, true), (true, false), (false, true)],
    };
    let na = a.vertices.len();
    let nb = b.vertices.len();
    for (s0, s1) in choices {
        let mut poly: Vec<Point> = a.vertices.clone();
        if ends[1] {
            poly.extend(boundary_path(model, &a.vertices[na - 1], &b.vertices[nb - 1], if ends[0] { s1 } else { s0 }));
        }
        poly.extend(b.vertices.iter().rev().cloned());
        if ends[0] {
            poly.extend(boundary_path(model, &b.vertices[0], &a.vertices[0], s0));
        }
        poly.dedup();
        if poly.len() >= 3 {
            if let Ok(s) = punctures_in_region(&poly, model) {
                if s.is_empty() {
                    return true;
                }
            }
        }
    }
    false
}

#[derive(Debug, Clone)]
pub struct RealizeOptions {
    /// Reroutes allowed before the family is rejected.
    pub reroute_budget: usize,
    /// Also build the exact polylines and compare their crossings.
    pub verify_planar: bool,
}

impl Default for RealizeOptions {
    fn default() -> Self {
        RealizeOptions { reroute_budget: 1000, verify_planar: false }
    }
}

/// Arcs drawn together, each pair in minimal position.
#[derive(Debug, Clone)]
pub struct RealizedFamily {
    pub model: DiscModel,
    pub arcs: Vec<ArcCode>,
    /// The drawing, with boundary ends rotated as chosen by the repair loop.
    pub drawing: Drawing,
    pub pairwise_counts: Vec<Vec<usize>>,
    pub certificate: bool,
    pub reroutes: usize,
    /// Per puncture, `(arc, end)` in counterclockwise order of departure,
    /// starting just after the downward wall direction.
    pub nose_order: BTreeMap<usize, Vec<(usize, usize)>>,
    planar: OnceLock<std::result::Result<Vec<PLArc>, Error>>,
}

impl RealizedFamily {
    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    /// Exact polylines of the drawing, built on first use.
    pub fn planar(&self) -> Result<&[PLArc]> {
        self.planar
            .get_or_init(|| crate::chord::realize_drawing(&self.drawing))
            .as_ref()
            .map(|v| v.as_slice())
            .map_err(|e| e.clone())
    }

    /// Compares crossings of the exact polylines with the certified counts.
    pub fn verify_planar(&self) -> Result<()> {
        let pl = self.planar()?;
        for (i, a) in pl.iter().enumerate() {
            a.validate(&self.model)?;
            for j in i..pl.len() {
                let n = if i == j {
                    self_crossings_pl(a)?
                } else {
                    crate::disc::transverse_intersections(a, &pl[j])?.len()
                };
                let want = if i == j { 0 } else { self.pairwise_counts[i][j] };
                if n != want {
                    return Err(Error::RealizationFailed { pairs: vec![(i, j)] });
                }
            }
        }
        Ok(())
    }

    /// Arcs anchored at puncture `r`, with the anchored end.
    pub fn at_nose(&self, r: usize) -> &[(usize, usize)] {
        self.nose_order.get(&r).map_or(&[], |v| v.as_slice())
    }
}

fn self_crossings_pl(a: &PLArc) -> Result<usize> {
    // end segments keep their anchors so a loop may close up at its puncture
    let last = a.vertices.len() - 2;
    let segs: Vec<PLArc> = a
        .segments()
        .enumerate()
        .map(|(k, (u, v))| PLArc {
            vertices: vec![u.clone(), v.clone()],
            start: if k == 0 { a.start } else { Anchor::Boundary },
            end: if k == last { a.end } else { Anchor::Boundary },
        })
        .collect();
    let mut n = 0;
    for i in 0..segs.len() {
        for j in i + 2..segs.len() {
            n += crate::disc::transverse_intersections(&segs[i], &segs[j])?.len();
        }
    }
    Ok(n)
}

fn nose_orders(d: &Drawing) -> BTreeMap<usize, Vec<(usize, usize)>> {
    let s = 4 * d.m as u32;
    let mut out: BTreeMap<usize, Vec<((u32, u32), (usize, usize))>> = BTreeMap::new();
    for (i, a) in d.arcs.iter().enumerate() {
        for end in 0..2 {
            if let Some(r) = anchor_of(a, end).puncture() {
                let far: Port = if end == 0 { d.chords[i][0].to } else { d.chords[i].last().unwrap().from };
                let key = ((far.0 + s - site_puncture(r)) % s, far.1);
                out.entry(r).or_default().push((key, (i, end)));
            }
        }
    }
    out.into_iter()
        .map(|(r, mut v)| {
            v.sort();
            (r, v.into_iter().map(|x| x.1).collect())
        })
        .collect()
}

/// Excess of a family drawing over the certified counts, per pair.
fn excess(d: &Drawing, counts: &[Vec<usize>]) -> Vec<(usize, usize, usize)> {
    let n = d.arcs.len();
    let mut out = Vec::new();
    for i in 0..n {
        let s = d.self_crossings(i);
        if s > 0 {
            out.push((i, i, s));
        }
        for j in i + 1..n {
            let c = d.crossings(i, j);
            if c > counts[i][j] {
                out.push((i, j, c - counts[i][j]));
            }
        }
    }
    out
}

/// Draws a family with every pair in minimal position, or explains why not.
pub fn joint_realization(codes: &[ArcCode], model: &DiscModel) -> Result<RealizedFamily> {
    joint_realization_with(codes, model, &RealizeOptions::default())
}

pub fn joint_realization_with(codes: &[ArcCode], model: &DiscModel, opts: &RealizeOptions) -> Result<RealizedFamily> {
    let m = model.m;
    let mut keys: HashMap<ArcCode, usize> = HashMap::new();
    for (i, c) in codes.iter().enumerate() {
        if let Some(&j) = keys.get(&canonical_key(model, c)) {
            return Err(Error::DuplicateClass(j, i));
        }
        keys.insert(canonical_key(model, c), i);
    }
    let n = codes.len();
    let mut counts = vec![vec![0usize; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let c = intersection_number(&codes[i], &codes[j], model)?;
            counts[i][j] = c;
            counts[j][i] = c;
        }
    }
    let mut drawn: Vec<ArcCode> = codes.to_vec();
    let mut d = Drawing::new(m, drawn.clone());
    let mut bad = excess(&d, &counts);
    let mut reroutes = 0;
    let options: Vec<Vec<ArcCode>> = codes.iter().map(|c| rotations(m, c, ROTATION_WINDOW)).collect();
    while !bad.is_empty() {
        if reroutes >= opts.reroute_budget {
            return Err(Error::RealizationFailed { pairs: bad.iter().map(|x| (x.0, x.1)).collect() });
        }
        let total: usize = bad.iter().map(|x| x.2).sum();
        let mut improved: Option<(usize, Vec<ArcCode>, Drawing, Vec<(usize, usize, usize)>)> = None;
        // reroute the later code of the first offending pair, then the earlier one
        let (i0, j0, _) = bad[0];
        let mut order = vec![j0, i0];
        order.extend(bad.iter().flat_map(|x| [x.1, x.0]));
        order.dedup();
        'search: for &x in &order {
            for cand in &options[x] {
                if *cand == drawn[x] {
                    continue;
                }
                let mut trial = drawn.clone();
                trial[x] = cand.clone();
                let td = Drawing::new(m, trial.clone());
                let tb = excess(&td, &counts);
                let t: usize = tb.iter().map(|x| x.2).sum();
                if t < total && improved.as_ref().map_or(true, |b| t < b.3.iter().map(|x| x.2).sum()) {
                    improved = Some((x, trial, td, tb));
                    if t == 0 {
                        break 'search;
                    }
                }
            }
            if improved.is_some() {
                break;
            }
        }
        if improved.is_none() {
            // push strands across a bigon or half-bigon of an offending pair
            'moves: for &(i, j, _) in &bad {
                if i == j {
                    continue;
                }
                for defect in defects(&d, i, j) {
                    for td in defect_moves(&d, i, j, &defect) {
                        let tb = excess(&td, &counts);
                        let t: usize = tb.iter().map(|x| x.2).sum();
                        if t < total {
                            improved = Some((i, drawn.clone(), td, tb));
                            break 'moves;
                        }
                    }
                }
            }
        }
        match improved {
            Some((_, trial, td, tb)) => {
                drawn = trial;
                d = td;
                bad = tb;
                reroutes += 1;
            }
            None => return Err(Error::RealizationFailed { pairs: bad.iter().map(|x| (x.0, x.1)).collect() }),
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if let Some(def) = find_defect(&d, i, j) {
                return Err(Error::Degenerate(format!("pair ({i}, {j}) keeps {def:?}")));
            }
        }
    }
    let fam = RealizedFamily {
        model: model.clone(),
        arcs: codes.to_vec(),
        nose_order: nose_orders(&d),
        drawing: d,
        pairwise_counts: counts,
        certificate: true,
        reroutes,
        planar: OnceLock::new(),
    };
    if opts.verify_planar {
        fam.verify_planar()?;
    }
    Ok(fam)
}

/// Result of filling in a puncture.
#[derive(Debug, Clone)]
pub struct Removal {
    pub family: RealizedFamily,
    /// Old arc index to new arc index; `None` when the arc was discarded.
    pub map: Vec<Option<usize>>,
    pub v: usize,
}

/// Puncture index after removing `v`.
pub fn relabel(j: usize, v: usize) -> usize {
    if j > v {
        j - 1
    } else {
        j
    }
}

fn relabel_anchor(a: Anchor, v: usize) -> Anchor {
    match a {
        Anchor::Puncture(j) => Anchor::Puncture(relabel(j, v)),
        Anchor::Boundary => Anchor::Boundary,
    }
}

/// Fills in puncture `v`: drops arcs at `v`, deletes its wall, merges classes.
pub fn remove_puncture(fam: &RealizedFamily, v: usize) -> Result<RealizedFamily> {
    Ok(remove_puncture_mapped(fam, v)?.family)
}

pub fn remove_puncture_mapped(fam: &RealizedFamily, v: usize) -> Result<Removal> {
    let m = fam.model.m;
    if v == 0 || v > m {
        return Err(Error::InvalidParameter(format!("puncture {v} out of range 1..={m}")));
    }
    if !fam.certificate {
        return Err(Error::NotCertified);
    }
    let small = make_disc_model(m - 1)?;
    let mut map = vec![None; fam.arcs.len()];
    let mut kept: Vec<ArcCode> = Vec::new();
    let mut seen: HashMap<ArcCode, usize> = HashMap::new();
    for (i, c) in fam.arcs.iter().enumerate() {
        if c.touches(v) {
            continue;
        }
        let word: Vec<Token> = c
            .word
            .iter()
            .filter(|t| t.unsigned_abs() as usize != v)
            .map(|&t| t.signum() * relabel(t.unsigned_abs() as usize, v) as Token)
            .collect();
        let code = reduce_code(&small, relabel_anchor(c.start, v), relabel_anchor(c.end, v), &word);
        if !is_essential(&small, &code) {
            continue;
        }
        let key = canonical_key(&small, &code);
        if let Some(&j) = seen.get(&key) {
            map[i] = Some(j);
            continue;
        }
        seen.insert(key, kept.len());
        map[i] = Some(kept.len());
        kept.push(code);
    }
    let family = joint_realization(&kept, &small)?;
    Ok(Removal { family, map, v })
}
