//! Crossing words.
//!
//! Token `+j` crosses wall `j` left to right, `-j` right to left. A word
//! names an arc class once both ends are fixed: puncture ends sit at the
//! puncture, boundary ends land in the outer corner of the cut-open disc
//! (the part of the rectangle boundary left of wall 1, right of wall m and
//! along the top). With that convention the class of `(s, w, e)` is the
//! double coset `<g_s> w <g_e>` where `g` is the loop `[j]` for a puncture
//! end and the boundary loop `Δ = [1, 2, .., m]` for a boundary end.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::disc::DiscModel;
use crate::error::{Error, Result};

pub type Token = i32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Anchor {
    /// The rectangle boundary, i.e. the puncture `p`.
    Boundary,
    Puncture(usize),
}

impl Anchor {
    pub fn puncture(self) -> Option<usize> {
        match self {
            Anchor::Puncture(j) => Some(j),
            Anchor::Boundary => None,
        }
    }

    pub fn is_boundary(self) -> bool {
        self == Anchor::Boundary
    }
}

impl fmt::Display for Anchor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Anchor::Boundary => write!(f, "p"),
            Anchor::Puncture(j) => write!(f, "q{j}"),
        }
    }
}

impl From<Anchor> for String {
    fn from(a: Anchor) -> String {
        a.to_string()
    }
}

impl TryFrom<String> for Anchor {
    type Error = Error;
    fn try_from(s: String) -> Result<Anchor> {
        s.parse()
    }
}

impl std::str::FromStr for Anchor {
    type Err = Error;
    fn from_str(s: &str) -> Result<Anchor> {
        if s == "p" {
            return Ok(Anchor::Boundary);
        }
        s.strip_prefix('q')
            .and_then(|d| d.parse::<usize>().ok())
            .filter(|&j| j >= 1)
            .map(Anchor::Puncture)
            .ok_or_else(|| Error::Format(format!("bad anchor `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ArcCode {
    pub start: Anchor,
    pub end: Anchor,
    pub word: Vec<Token>,
}

impl fmt::Display for ArcCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{} [", self.start, self.end)?;
        for (i, t) in self.word.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{t:+}")?;
        }
        write!(f, "]")
    }
}

impl ArcCode {
    /// Builds a reduced code after checking anchors and tokens against `model`.
    pub fn new(model: &DiscModel, start: Anchor, end: Anchor, word: Vec<Token>) -> Result<ArcCode> {
        check_anchor(model, start)?;
        check_anchor(model, end)?;
        if let Some(t) = word.iter().find(|t| **t == 0 || t.unsigned_abs() as usize > model.m) {
            return Err(Error::InvalidParameter(format!("token {t} out of range")));
        }
        Ok(reduce_code(model, start, end, &word))
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    /// The same arc traversed backwards.
    pub fn reversed(&self) -> ArcCode {
        ArcCode { start: self.end, end: self.start, word: inverse(&self.word) }
    }

    pub fn mentions(&self, j: usize) -> bool {
        self.word.iter().any(|t| t.unsigned_abs() as usize == j)
    }

    pub fn touches(&self, j: usize) -> bool {
        self.start == Anchor::Puncture(j) || self.end == Anchor::Puncture(j)
    }
}

fn check_anchor(model: &DiscModel, a: Anchor) -> Result<()> {
    match a {
        Anchor::Puncture(j) if j == 0 || j > model.m => {
            Err(Error::InvalidParameter(format!("puncture q{j} out of range")))
        }
        _ => Ok(()),
    }
}

pub fn inverse(w: &[Token]) -> Vec<Token> {
    w.iter().rev().map(|t| -t).collect()
}

pub fn delta(m: usize, power: i32) -> Vec<Token> {
    let one: Vec<Token> = if power >= 0 { (1..=m as Token).collect() } else { (1..=m as Token).rev().map(|t| -t).collect() };
    one.repeat(power.unsigned_abs() as usize)
}

pub fn free_reduce(w: &[Token]) -> Vec<Token> {
    let mut out: Vec<Token> = Vec::with_capacity(w.len());
    for &t in w {
        if out.last() == Some(&-t) {
            out.pop();
        } else {
            out.push(t);
        }
    }
    out
}

/// Drops tokens of an anchor puncture's own wall at that end.
pub fn strip_ends(start: Anchor, end: Anchor, w: &mut Vec<Token>) {
    if let Anchor::Puncture(j) = start {
        let k = w.iter().take_while(|t| t.unsigned_abs() as usize == j).count();
        w.drain(..k);
    }
    if let Anchor::Puncture(j) = end {
        while w.last().is_some_and(|t| t.unsigned_abs() as usize == j) {
            w.pop();
        }
    }
}

/// Free reduction and puncture-end stripping, without boundary moves.
pub fn tighten(start: Anchor, end: Anchor, w: &[Token]) -> Vec<Token> {
    let mut out = free_reduce(w);
    strip_ends(start, end, &mut out);
    out
}

/// `Δ^i w Δ^j`, tightened. Powers at puncture ends are ignored.
pub fn rotate(m: usize, start: Anchor, end: Anchor, w: &[Token], i: i32, j: i32) -> Vec<Token> {
    let i = if start.is_boundary() { i } else { 0 };
    let j = if end.is_boundary() { j } else { 0 };
    if i == 0 && j == 0 {
        return tighten(start, end, w);
    }
    let mut raw = delta(m, i);
    raw.extend_from_slice(w);
    raw.extend(delta(m, j));
    tighten(start, end, &raw)
}

/// Free reduction, end stripping, then boundary slides while they shorten the word.
pub fn reduce_code(model: &DiscModel, start: Anchor, end: Anchor, word: &[Token]) -> ArcCode {
    let m = model.m;
    let mut w = tighten(start, end, word);
    loop {
        let mut best: Option<Vec<Token>> = None;
        for (i, j) in [(1, 0), (-1, 0), (0, 1), (0, -1)] {
            if (i != 0 && !start.is_boundary()) || (j != 0 && !end.is_boundary()) {
                continue;
            }
            let c = rotate(m, start, end, &w, i, j);
            if c.len() < best.as_ref().map_or(w.len(), |b| b.len()) {
                best = Some(c);
            }
        }
        match best {
            Some(b) => w = b,
            None => break,
        }
    }
    ArcCode { start, end, word: w }
}

fn shortlex(a: &[Token], b: &[Token]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

fn oriented_normal_form(m: usize, start: Anchor, end: Anchor, w: &[Token]) -> Vec<Token> {
    let k = (3 * w.len() / m + 2) as i32;
    let irange = if start.is_boundary() { -k..=k } else { 0..=0 };
    let mut best: Option<Vec<Token>> = None;
    for i in irange {
        let jrange = if end.is_boundary() { -k..=k } else { 0..=0 };
        for j in jrange {
            let c = rotate(m, start, end, w, i, j);
            if best.as_ref().map_or(true, |b| shortlex(&c, b) == Ordering::Less) {
                best = Some(c);
            }
        }
    }
    best.unwrap_or_default()
}

/// Orientation-free normal form: the shortlex-least representative over
/// boundary rotations and over both orientations. Two codes name the same
/// unoriented class iff their keys agree.
pub fn canonical_key(model: &DiscModel, code: &ArcCode) -> ArcCode {
    let m = model.m;
    let f = oriented_normal_form(m, code.start, code.end, &code.word);
    let r = oriented_normal_form(m, code.end, code.start, &inverse(&code.word));
    let fwd = ArcCode { start: code.start, end: code.end, word: f };
    let rev = ArcCode { start: code.end, end: code.start, word: r };
    match key_order(&fwd, &rev) {
        Ordering::Greater => rev,
        _ => fwd,
    }
}

/// Oriented normal form, keeping the given orientation.
pub fn oriented_key(model: &DiscModel, code: &ArcCode) -> ArcCode {
    ArcCode {
        start: code.start,
        end: code.end,
        word: oriented_normal_form(model.m, code.start, code.end, &code.word),
    }
}

fn key_order(a: &ArcCode, b: &ArcCode) -> Ordering {
    shortlex(&a.word, &b.word).then_with(|| (a.start, a.end).cmp(&(b.start, b.end)))
}

/// Essential unless both ends coincide and the class is trivial.
pub fn is_essential(model: &DiscModel, code: &ArcCode) -> bool {
    code.start != code.end || !canonical_key(model, code).word.is_empty()
}

/// (simple?, essential?) for a reduced code.
pub fn is_simple_and_essential(model: &DiscModel, code: &ArcCode) -> (bool, bool) {
    let essential = is_essential(model, code);
    if !essential {
        return (true, false);
    }
    (crate::chord::is_simple(model, code), true)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EndpointFilter {
    /// Any anchors.
    All,
    /// From an interior puncture to the boundary.
    PunctureToBoundary,
    /// Boundary to boundary.
    BoundaryToBoundary,
    /// Between the boundary and the fixed puncture `q_1`.
    BoundaryToFirst,
}

impl EndpointFilter {
    /// Whether an oriented pair of anchors is admitted.
    pub fn admits(self, start: Anchor, end: Anchor) -> bool {
        match self {
            EndpointFilter::All => true,
            EndpointFilter::PunctureToBoundary => !start.is_boundary() && end.is_boundary(),
            EndpointFilter::BoundaryToBoundary => start.is_boundary() && end.is_boundary(),
            EndpointFilter::BoundaryToFirst => start == Anchor::Puncture(1) && end.is_boundary(),
        }
    }

    fn anchor_pairs(self, m: usize) -> Vec<(Anchor, Anchor)> {
        let mut all = vec![Anchor::Boundary];
        all.extend((1..=m).map(Anchor::Puncture));
        let mut out = Vec::new();
        for &s in &all {
            for &e in &all {
                if self.admits(s, e) {
                    out.push((s, e));
                }
            }
        }
        out
    }
}

/// Freely reduced words of length at most `l` with no removable end tokens.
fn words_up_to(m: usize, start: Anchor, end: Anchor, l: usize) -> Vec<Vec<Token>> {
    let alphabet: Vec<Token> = (1..=m as Token).flat_map(|t| [t, -t]).collect();
    let mut out = vec![Vec::new()];
    let mut layer: Vec<Vec<Token>> = vec![Vec::new()];
    for _ in 0..l {
        let mut next = Vec::new();
        for w in &layer {
            for &t in &alphabet {
                if w.last() == Some(&-t) {
                    continue;
                }
                if w.is_empty() && start.puncture() == Some(t.unsigned_abs() as usize) {
                    continue;
                }
                let mut v = w.clone();
                v.push(t);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out.retain(|w| end.puncture().map_or(true, |j| w.last().map_or(true, |t| t.unsigned_abs() as usize != j)));
    out
}

/// All simple essential classes with a representative word of length at
/// most `l` whose anchors pass `filter`, one code per unoriented class,
/// sorted by (length, anchors, word).
pub fn enumerate_codes(model: &DiscModel, filter: EndpointFilter, l: usize) -> Vec<ArcCode> {
    let m = model.m;
    let mut seen: HashMap<ArcCode, ()> = HashMap::new();
    let mut out = Vec::new();
    for (s, e) in filter.anchor_pairs(m) {
        for w in words_up_to(m, s, e, l) {
            let code = reduce_code(model, s, e, &w);
            // a word that reduces further is a duplicate of a shorter one
            if code.word != w {
                continue;
            }
            let key = canonical_key(model, &code);
            if seen.contains_key(&key) {
                continue;
            }
            seen.insert(key.clone(), ());
            let rep = if filter.admits(key.start, key.end) { key } else { oriented_key(model, &code) };
            let (simple, essential) = is_simple_and_essential(model, &rep);
            if simple && essential {
                out.push(rep);
            }
        }
    }
    out.sort_by(|a, b| shortlex(&a.word, &b.word).then_with(|| (a.start, a.end).cmp(&(b.start, b.end))));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::disc::make_disc_model;

    fn q(j: usize) -> Anchor {
        Anchor::Puncture(j)
    }
    const P: Anchor = Anchor::Boundary;

    #[test]
    fn known_reductions() {
        let d = make_disc_model(3).unwrap();
        assert_eq!(reduce_code(&d, q(1), P, &[1, -1]).word, Vec::<Token>::new());
        assert_eq!(reduce_code(&d, q(1), P, &[1, 2]).word, vec![2]);
        assert_eq!(reduce_code(&d, q(2), q(3), &[3, -3, 1]).word, vec![1]);
    }

    #[test]
    fn boundary_slides_shorten() {
        let d = make_disc_model(3).unwrap();
        // q1 -> p crossing walls 2 and 3 rightwards is q1 -> p crossing wall 1 leftwards
        assert_eq!(reduce_code(&d, q(1), P, &[2, 3]).word, Vec::<Token>::new());
        let c = reduce_code(&d, q(2), P, &[-1]);
        assert_eq!(c.word.len(), 1);
    }

    #[test]
    fn anchors_parse() {
        assert_eq!("p".parse::<Anchor>().unwrap(), P);
        assert_eq!("q12".parse::<Anchor>().unwrap(), q(12));
        assert!("q0".parse::<Anchor>().is_err());
        assert!("x".parse::<Anchor>().is_err());
    }

    #[test]
    fn trivial_loops_inessential() {
        let d = make_disc_model(3).unwrap();
        let c = ArcCode { start: q(1), end: q(1), word: vec![] };
        assert!(!is_essential(&d, &c));
        let c = ArcCode { start: P, end: P, word: vec![1, 2, 3] };
        assert!(!is_essential(&d, &c));
        let c = ArcCode { start: q(1), end: q(1), word: vec![2] };
        assert!(is_essential(&d, &c));
    }

    #[test]
    fn key_ignores_orientation_and_rotation() {
        let d = make_disc_model(3).unwrap();
        let a = ArcCode { start: q(1), end: P, word: vec![2] };
        let b = ArcCode { start: P, end: q(1), word: vec![-2] };
        assert_eq!(canonical_key(&d, &a), canonical_key(&d, &b));
        let c = ArcCode { start: q(1), end: P, word: vec![2, -3, -2, -1] };
        assert_eq!(canonical_key(&d, &a), canonical_key(&d, &c));
    }
}
