//! Oracles shared by the integration tests. Each is deliberately naive and
//! does not use the bigon machinery or the clique search it checks.

#![allow(dead_code)]

use arcs_core::chord::{rotations, Drawing, Item};
use arcs_core::{ArcCode, CompatibilityGraph};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Where a swap move acts: a wall index, or the outer corner.
fn random_swap(walls: &mut [Vec<Item>], outer: &mut [Item], rng: &mut ChaCha8Rng) -> bool {
    let mut slots: Vec<usize> = (0..walls.len()).filter(|&j| walls[j].len() > 1).collect();
    if outer.len() > 1 {
        slots.push(walls.len());
    }
    let Some(&s) = slots.choose(rng) else { return false };
    let v: &mut [Item] = if s == walls.len() { outer } else { &mut walls[s] };
    let i = rng.gen_range(0..v.len() - 1);
    v.swap(i, i + 1);
    true
}

fn random_drawing(m: usize, a: &ArcCode, b: &ArcCode, rng: &mut ChaCha8Rng) -> (Vec<ArcCode>, Vec<Vec<Item>>, Vec<Item>) {
    let arcs = vec![a.clone(), b.clone()];
    let mut walls: Vec<Vec<Item>> = vec![Vec::new(); m];
    let mut outer = Vec::new();
    for (i, c) in arcs.iter().enumerate() {
        for (k, t) in c.word.iter().enumerate() {
            walls[t.unsigned_abs() as usize - 1].push((i, k));
        }
        if c.start.is_boundary() {
            outer.push((i, 0));
        }
        if c.end.is_boundary() {
            outer.push((i, 1));
        }
    }
    for w in walls.iter_mut() {
        w.shuffle(rng);
    }
    outer.shuffle(rng);
    (arcs, walls, outer)
}

/// Fewest crossings of `a` and `b` seen over `restarts` random drawings,
/// each pushed downhill by random adjacent swaps that never add crossings.
/// Twisting every boundary end at once changes nothing, so `a` stays put
/// and the restarts cycle through the boundary rotations of `b`.
pub fn reduction_oracle(m: usize, a: &ArcCode, b: &ArcCode, restarts: usize, rng: &mut ChaCha8Rng) -> usize {
    let turns = rotations(m, b, 2);
    let mut best = usize::MAX;
    for r in 0..restarts {
        let (arcs, mut walls, mut outer) = random_drawing(m, a, &turns[r % turns.len()], rng);
        let steps = 60 * (arcs[0].len() + arcs[1].len() + 2);
        let mut cur = Drawing::from_orders(m, arcs.clone(), walls.clone(), outer.clone()).crossings(0, 1);
        for _ in 0..steps {
            if cur == 0 {
                break;
            }
            let (mut w2, mut o2) = (walls.clone(), outer.clone());
            if !random_swap(&mut w2, &mut o2, rng) {
                break;
            }
            let c = Drawing::from_orders(m, arcs.clone(), w2.clone(), o2.clone()).crossings(0, 1);
            if c <= cur {
                cur = c;
                walls = w2;
                outer = o2;
            }
        }
        best = best.min(cur);
    }
    best
}

/// Size of the largest clique, by trying every vertex subset.
pub fn brute_force_clique(g: &CompatibilityGraph) -> usize {
    let n = g.len();
    assert!(n <= 20);
    let mut best = 0;
    for mask in 0u32..(1 << n) {
        let size = mask.count_ones() as usize;
        if size <= best {
            continue;
        }
        let vs: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        if vs.iter().enumerate().all(|(x, &i)| vs[x + 1..].iter().all(|&j| g.adjacent(i, j))) {
            best = size;
        }
    }
    best
}

/// Puncture-to-boundary classes with their one-crossing graph.
pub struct Universe {
    pub model: arcs_core::DiscModel,
    pub codes: Vec<ArcCode>,
    pub graph: CompatibilityGraph,
}

pub fn q_to_p_universe(m: usize) -> Universe {
    let model = arcs_core::make_disc_model(m).unwrap();
    let codes = arcs_core::enumerate_codes(&model, arcs_core::EndpointFilter::PunctureToBoundary, m);
    let graph = arcs_core::build_graph(&codes, 1, &model).unwrap();
    Universe { model, codes, graph }
}

/// A random maximal clique cut down to a random nonempty prefix.
pub fn random_family(u: &Universe, rng: &mut ChaCha8Rng) -> Vec<ArcCode> {
    let mut order: Vec<usize> = (0..u.codes.len()).collect();
    order.shuffle(rng);
    let mut chosen: Vec<usize> = Vec::new();
    for v in order {
        if chosen.iter().all(|&c| u.graph.adjacent(c, v)) {
            chosen.push(v);
        }
    }
    let keep = rng.gen_range(1..=chosen.len());
    chosen[..keep].iter().map(|&i| u.codes[i].clone()).collect()
}

/// Every fish statement, plus the two independent fish oracles.
pub fn fish_violations(fam: &arcs_core::RealizedFamily) -> Vec<String> {
    use arcs_core::fish::{fish_sets_by_winding, minimal_by_departure};
    let mut out = Vec::new();
    let rep = match arcs_core::audit_inequalities(fam) {
        Ok(r) => r,
        Err(e) => return vec![format!("audit refused: {e}")],
    };
    for v in rep.verdicts.iter().filter(|v| !v.passed) {
        out.push(format!("{}: {:?}", v.statement, v.witnesses));
    }
    for f in &rep.fish {
        if minimal_by_departure(fam, f).unwrap() != f.minimal {
            out.push(format!("minimality oracle disagrees on {:?}", f.arcs));
        }
        let (h, t) = fish_sets_by_winding(fam, f).unwrap();
        if h != f.head_punctures || t != f.tail_punctures {
            out.push(format!("winding oracle disagrees on {:?}", f.arcs));
        }
    }
    out
}

/// Cyclic sequence with runs of equal neighbours merged.
fn collapse(mut v: Vec<usize>) -> Vec<usize> {
    v.dedup();
    while v.len() > 1 && v.first() == v.last() {
        v.pop();
    }
    v
}

fn is_rotation(a: &[usize], b: &[usize]) -> bool {
    a.len() == b.len() && (a.is_empty() || (0..a.len()).any(|s| a.iter().cycle().skip(s).take(a.len()).eq(b.iter())))
}

/// What removing each puncture must preserve.
pub fn removal_violations(fam: &arcs_core::RealizedFamily) -> Vec<String> {
    use arcs_core::position::{relabel, remove_puncture_mapped};
    use arcs_core::{find_fish, tail_equivalence};
    let m = fam.model.m;
    let fish = find_fish(fam).unwrap();
    let mut out = Vec::new();
    for v in 1..=m {
        let rem = match remove_puncture_mapped(fam, v) {
            Ok(r) => r,
            Err(e) => {
                out.push(format!("v={v}: removal failed: {e}"));
                continue;
            }
        };
        let new = &rem.family;
        let new_fish = find_fish(new).unwrap();
        for i in 0..fam.len() {
            for j in i + 1..fam.len() {
                if let (Some(a), Some(b)) = (rem.map[i], rem.map[j]) {
                    if a != b && new.pairwise_counts[a][b] > fam.pairwise_counts[i][j] {
                        out.push(format!("v={v}: pair ({i},{j}) gained crossings"));
                    }
                }
            }
        }
        for q in (1..=m).filter(|&q| q != v) {
            let qt = relabel(q, v);
            let old = tail_equivalence(fam, q).unwrap();
            let newer = tail_equivalence(new, qt).unwrap();
            let old_class = |s: usize| old.classes.iter().position(|c| c.contains(&s)).unwrap();
            for c in &newer.classes {
                let back: Vec<usize> = c.iter().map(|&s| if s >= v { s + 1 } else { s }).collect();
                if back.iter().any(|&s| old_class(s) != old_class(back[0])) {
                    out.push(format!("v={v} q={q}: class {back:?} is not inside one old class"));
                }
            }
            let kept = fish
                .iter()
                .filter(|f| f.minimal && f.is_q_fish(q) && f.nose != v)
                .filter(|f| !(f.head_punctures.len() == 1 && f.head_punctures.contains(&v)))
                .filter(|f| !(f.tail_punctures.len() == 1 && f.tail_punctures.contains(&v)))
                .count();
            let after = new_fish.iter().filter(|f| f.minimal && f.is_q_fish(qt)).count();
            if kept > after {
                out.push(format!("v={v} q={q}: {kept} surviving minimal fish but {after} after"));
            }
        }
        for r in (1..=m).filter(|&r| r != v) {
            let blocked = fish.iter().any(|f| f.nose == r && f.head_punctures.len() == 1 && f.head_punctures.contains(&v));
            if blocked {
                continue;
            }
            let induced = collapse(fam.at_nose(r).iter().filter_map(|&(i, _)| rem.map[i]).collect());
            let now: Vec<usize> = new.at_nose(relabel(r, v)).iter().map(|&(i, _)| i).collect();
            if !is_rotation(&induced, &now) {
                out.push(format!("v={v} r={r}: order {induced:?} became {now:?}"));
            }
        }
    }
    out
}
