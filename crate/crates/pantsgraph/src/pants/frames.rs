//! Genus-2 pants vertices as frames.
//!
//! Every genus-2 decomposition is the image of one of two model
//! decompositions under a braid word, its frame:
//!
//! * type I, slots [c1, s, c5], with s separating;
//! * type II, slots [c1, c3, c5].
//!
//! In the frame of a vertex, the curves that may replace a slot curve form a
//! twist family indexed by j in Z, produced from the models by short words:
//!
//! | slot      | new frame             | new vertex             |
//! |-----------|-----------------------|------------------------|
//! | I.0       | t1^j t1 t2            | I, slot 0              |
//! | I.2       | t5^j t5 t4            | I, slot 2              |
//! | I.1       | H^j, H = (t1 t2)^3    | II, slot 1             |
//! | II.0 even | t1^(j/2) rho          | I, slot 1              |
//! | II.0 odd  | t1^((j-1)/2) rho'     | II, slot 0             |
//!
//! with rho = t1 t2 t1 t3 t2, rho' = t2^-1 t3^-2 t2^-1, and slots II.1 and
//! II.2 handled as II.0 after the rotation r = (t1 t2 t3 t4 t5)^2, which
//! carries c1 to c3 to c5. Members j and k meet in i_min |j - k| points,
//! where i_min is 1 for the one-holed-torus slots I.0, I.2 and 2 otherwise.
//!
//! The twist families are infinite, so a search only admits members close to
//! a centre. References come in groups (the curves of each endpoint of a
//! distance query); the centre of a family for a group is the interval of
//! members minimising the total intersection with that group, and a member
//! is admitted when it lies within `max_twist` steps of the centre for some
//! group. Groups missed by the slot curve score every member alike and are
//! ignored. An edge between two vertices exists when each replacement curve
//! is admitted in its family at the other end. The rule depends only on the
//! curves involved, so the truncated graph is undirected and equivariant
//! whenever the references move with the vertices.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};
use std::sync::{Arc, OnceLock};

use super::search::MoveGraph;
use super::Cutoff;
use crate::dt::Multicurve;
use crate::error::{Error, Result};
use crate::freegroup::{inverse, multi_intersection, reduce, Letter};
use crate::genus2::{self, standard::*, Dt};

pub const BASE: [Dt; 3] = [C1, S, C5];
const MODEL_II: [Dt; 3] = [C1, C3, C5];

const H: [Letter; 6] = [1, 2, 1, 2, 1, 2];
const RHO: [Letter; 5] = [1, 2, 1, 3, 2];
const RHO_ODD: [Letter; 4] = [-2, -3, -3, -2];
const ROT: [Letter; 10] = [1, 2, 3, 4, 5, 1, 2, 3, 4, 5];
const LETTERS: [Letter; 10] = [1, -1, 2, -2, 3, -3, 4, -4, 5, -5];

const LOCATE_BUDGET: usize = 50_000;
const CENTRE_RANGE: i64 = 1 << 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    I,
    II,
}

impl Kind {
    #[cfg(test)]
    fn min_intersection(self, slot: usize) -> u64 {
        if self == Kind::I && slot != 1 {
            1
        } else {
            2
        }
    }
}

fn model_words(kind: Kind, slot: usize) -> &'static Multicurve {
    static WORDS: OnceLock<Vec<Multicurve>> = OnceLock::new();
    let w = WORDS.get_or_init(|| BASE.iter().chain(MODEL_II.iter()).map(genus2::lift).collect());
    match kind {
        Kind::I => &w[slot],
        Kind::II => &w[3 + slot],
    }
}

fn act(word: &[Letter], d: &[Vec<Letter>]) -> Multicurve {
    let braid: Vec<(u8, i64)> = word.iter().map(|&x| (x.unsigned_abs(), i64::from(x.signum()))).collect();
    genus2::act_words(&braid, d)
}

fn power(unit: &[Letter], j: i64) -> Vec<Letter> {
    let step = if j >= 0 { unit.to_vec() } else { inverse(unit) };
    let mut out = Vec::with_capacity(step.len() * j.unsigned_abs() as usize);
    for _ in 0..j.unsigned_abs() {
        out.extend_from_slice(&step);
    }
    out
}

#[cfg(test)]
fn upstairs(a: &[Vec<Letter>], b: &[Vec<Letter>]) -> u64 {
    multi_intersection(a, b) / 2
}

/// One member of a twist family, in the coordinates of the current frame.
struct Move {
    word: Vec<Letter>,
    kind: Kind,
    slot: usize,
    /// Old slot feeding each new slot; `None` marks the replacement.
    from: [Option<usize>; 3],
}

fn template(kind: Kind, slot: usize, j: i64) -> Move {
    let cat = |a: Vec<Letter>, b: &[Letter]| [a, b.to_vec()].concat();
    match (kind, slot) {
        (Kind::I, 0) => Move { word: cat(power(&[1], j), &[1, 2]), kind: Kind::I, slot: 0, from: [None, Some(1), Some(2)] },
        (Kind::I, 2) => Move { word: cat(power(&[5], j), &[5, 4]), kind: Kind::I, slot: 2, from: [Some(0), Some(1), None] },
        (Kind::I, _) => Move { word: power(&H, j), kind: Kind::II, slot: 1, from: [Some(0), None, Some(2)] },
        (Kind::II, s) => {
            let r = power(&ROT, s as i64);
            let (a, b) = (Some((s + 1) % 3), Some((s + 2) % 3));
            if j.rem_euclid(2) == 0 {
                let word = [r, power(&[1], j.div_euclid(2)), RHO.to_vec()].concat();
                Move { word, kind: Kind::I, slot: 1, from: [a, None, b] }
            } else {
                let word = [r, power(&[1], (j - 1).div_euclid(2)), RHO_ODD.to_vec()].concat();
                Move { word, kind: Kind::II, slot: 0, from: [None, a, b] }
            }
        }
    }
}

fn member_words(m: &Move) -> Multicurve {
    act(&m.word, model_words(m.kind, m.slot))
}

/// A located vertex: its curves, the frame realising them, and the
/// reference groups pulled back into the frame.
#[derive(Clone, Debug)]
pub struct Node {
    /// Curves in sorted order; the search key.
    pub curves: [Dt; 3],
    slots: [Dt; 3],
    kind: Kind,
    frame: Vec<Letter>,
    /// Reference in the frame of the parent, and the move leading here.
    parent_refs: Arc<Vec<Multicurve>>,
    step: Vec<Letter>,
    /// Slot filled by the last move, with the family index of the curve it
    /// replaced.
    hint: Option<(usize, i64)>,
}

impl Node {
    pub fn frame(&self) -> &[Letter] {
        &self.frame
    }

    fn refs(&self) -> Vec<Multicurve> {
        if self.step.is_empty() {
            self.parent_refs.as_ref().clone()
        } else {
            let back = inverse(&self.step);
            self.parent_refs.iter().map(|g| act(&back, g)).collect()
        }
    }
}

/// Family index, in the new frame, of the curve a move removes. It does not
/// depend on the index of the move within its family.
fn returning_index(kind: Kind, slot: usize, j: i64) -> i64 {
    static INDEX: OnceLock<HashMap<(Kind, usize, i64), i64>> = OnceLock::new();
    let table = INDEX.get_or_init(|| {
        let mut t = HashMap::new();
        for (kind, slot) in SLOTS {
            for parity in 0..2 {
                let m = template(kind, slot, parity);
                let alpha = act(&inverse(&m.word), model_words(kind, slot));
                let k = (-16..=16)
                    .find(|&k| member_words(&template(m.kind, m.slot, k)) == alpha)
                    .expect("removed curve lies in the new family");
                t.insert((kind, slot, parity), k);
            }
        }
        t
    });
    table[&(kind, slot, j.rem_euclid(2))]
}

const SLOTS: [(Kind, usize); 6] = [(Kind::I, 0), (Kind::I, 1), (Kind::I, 2), (Kind::II, 0), (Kind::II, 1), (Kind::II, 2)];

/// Least j with `pred(j)` for a predicate that is false then true on Z,
/// searched outwards from `start`.
fn first_true(start: i64, mut pred: impl FnMut(i64) -> bool) -> Result<i64> {
    let (mut lo, mut hi);
    if pred(start) {
        hi = start;
        let mut step = 1;
        loop {
            lo = start - step;
            if !pred(lo) {
                break;
            }
            hi = lo;
            step *= 2;
            if step > CENTRE_RANGE {
                return Err(Error::CoordinateOverflow);
            }
        }
    } else {
        lo = start;
        let mut step = 1;
        loop {
            hi = start + step;
            if pred(hi) {
                break;
            }
            lo = hi;
            step *= 2;
            if step > CENTRE_RANGE {
                return Err(Error::CoordinateOverflow);
            }
        }
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if pred(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// Interval of family indices minimising the total intersection with `refs`,
/// which the slot curve must meet.
fn centre(kind: Kind, slot: usize, refs: &[Vec<Letter>], start: i64) -> Result<(i64, i64)> {
    let mut memo: HashMap<i64, u64> = HashMap::new();
    let mut f = |j: i64| *memo.entry(j).or_insert_with(|| multi_intersection(&member_words(&template(kind, slot, j)), refs));
    let lo = first_true(start, |j| f(j + 1) >= f(j))?;
    let hi = first_true(lo, |j| f(j + 1) > f(j))?;
    Ok((lo, hi))
}

fn table() -> &'static HashMap<Multicurve, (Kind, Vec<Letter>)> {
    static TABLE: OnceLock<HashMap<Multicurve, (Kind, Vec<Letter>)>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t: HashMap<Multicurve, (Kind, Vec<Letter>)> = HashMap::new();
        for kind in [Kind::I, Kind::II] {
            let model: Multicurve = (0..3).flat_map(|k| model_words(kind, k).clone()).collect();
            let mut layer: Vec<Vec<Letter>> = vec![vec![]];
            let mut words = layer.clone();
            for _ in 0..3 {
                layer = layer.iter().flat_map(|w| LETTERS.iter().map(move |&l| [w.as_slice(), &[l]].concat())).collect();
                words.extend(layer.iter().cloned());
            }
            for w in words {
                let key = act(&w, &model);
                match t.get(&key) {
                    Some((_, old)) if old.len() <= w.len() => {}
                    _ => {
                        t.insert(key, (kind, w));
                    }
                }
            }
        }
        t
    })
}

fn complexity(d: &[Vec<Letter>]) -> u64 {
    static CHAIN_WORDS: OnceLock<Vec<Multicurve>> = OnceLock::new();
    let chain = CHAIN_WORDS.get_or_init(|| CHAIN.iter().map(genus2::lift).collect());
    chain.iter().map(|c| multi_intersection(d, c)).sum()
}

/// The genus-2 pants graph truncated around groups of reference curves.
pub struct Genus2Graph {
    refs: Vec<Multicurve>,
    frozen: Vec<Dt>,
    standalone: bool,
}

impl Genus2Graph {
    /// Truncation for a distance query: one reference group per endpoint,
    /// and their common curves never move.
    pub fn for_pair(a: &[Dt; 3], b: &[Dt; 3]) -> Self {
        let mut ends = [*a, *b];
        ends.sort();
        let refs = ends.iter().map(|e| e.iter().flat_map(genus2::lift).collect()).collect();
        let frozen = a.iter().filter(|c| b.contains(c)).copied().collect();
        Genus2Graph { refs, frozen, standalone: false }
    }

    /// Truncation for listing the neighbours of a single vertex: families are
    /// centred on the base decomposition, and a family replacing a base
    /// curve is cut by the twist coordinate at that curve.
    pub fn standalone() -> Self {
        Genus2Graph { refs: vec![BASE.iter().flat_map(genus2::lift).collect()], frozen: Vec::new(), standalone: true }
    }

    /// Finds a frame for a decomposition by descending the total
    /// intersection with the Humphries chain until a decomposition a few
    /// letters from a model is reached.
    pub fn locate(&self, curves: &[Dt; 3]) -> Result<Node> {
        let mut start: Multicurve = curves.iter().flat_map(genus2::lift).collect();
        start.sort();
        let table = table();
        let mut seen: HashMap<Multicurve, Vec<Letter>> = HashMap::new();
        let mut states: Vec<Multicurve> = vec![start.clone()];
        let mut heap = BinaryHeap::new();
        seen.insert(start.clone(), Vec::new());
        heap.push(Reverse((complexity(&start), 0usize)));
        let mut expanded = 0;
        let (walk, kind, tail) = loop {
            let Reverse((_, idx)) = heap.pop().ok_or_else(|| Error::MalformedCoordinates("no frame found".into()))?;
            let d = states[idx].clone();
            if let Some((kind, w)) = table.get(&d) {
                break (seen[&d].clone(), *kind, w.clone());
            }
            expanded += 1;
            if expanded > LOCATE_BUDGET {
                return Err(Error::MalformedCoordinates("no frame found within the search budget".into()));
            }
            let walk = seen[&d].clone();
            for &l in &LETTERS {
                let next = act(&[l], &d);
                if !seen.contains_key(&next) {
                    seen.insert(next.clone(), [&[l][..], &walk].concat());
                    heap.push(Reverse((complexity(&next), states.len())));
                    states.push(next);
                }
            }
        };
        let frame = reduce(&[inverse(&walk), tail].concat());
        let mut slots = [[0i64; 6]; 3];
        for (k, slot) in slots.iter_mut().enumerate() {
            *slot = genus2::unlift(&act(&frame, model_words(kind, k)))
                .ok_or_else(|| Error::MalformedCoordinates("frame curve could not be read back".into()))?;
        }
        let mut sorted = slots;
        sorted.sort();
        let mut want = *curves;
        want.sort();
        if sorted != want {
            return Err(Error::MalformedCoordinates("frame does not reproduce the decomposition".into()));
        }
        let back = inverse(&frame);
        let parent_refs = Arc::new(self.refs.iter().map(|g| act(&back, g)).collect());
        Ok(Node { curves: sorted, slots, kind, frame, parent_refs, step: Vec::new(), hint: None })
    }

    fn window(&self, node: &Node, refs: &[Multicurve], slot: usize, cutoff: &Cutoff) -> Result<Vec<i64>> {
        let t = i64::from(cutoff.max_twist);
        let alpha = node.slots[slot];
        if self.standalone {
            if let Some(i) = BASE.iter().position(|b| *b == alpha) {
                let twist = |j: i64| -> Result<i64> {
                    let m = template(node.kind, slot, j);
                    let beta = genus2::unlift(&act(&node.frame, &member_words(&m))).ok_or(Error::CoordinateOverflow)?;
                    Ok(beta[2 * i + 1])
                };
                let (t0, t1) = (twist(0)?, twist(1)?);
                let d = t1 - t0;
                if d == 0 {
                    return Err(Error::MalformedCoordinates("twist family with constant twist".into()));
                }
                let mid = -t0 / d;
                let reach = t / d.abs() + 2;
                let mut out = Vec::new();
                for j in mid - reach..=mid + reach {
                    if twist(j)?.abs() <= t {
                        out.push(j);
                    }
                }
                return Ok(out);
            }
        }
        let start = match node.hint {
            Some((s, k)) if s == slot => k,
            _ => 0,
        };
        let mut out = Vec::new();
        for g in refs {
            if multi_intersection(model_words(node.kind, slot), g) > 0 {
                let (lo, hi) = centre(node.kind, slot, g, start)?;
                out.extend(lo - t..=hi + t);
            }
        }
        if out.is_empty() {
            return Err(Error::MalformedCoordinates("twist family with no reference crossing".into()));
        }
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    /// Vertices one move from `node` that the truncation admits.
    ///
    /// The removed curve has a fixed index k in the family of the new slot;
    /// by convexity of a group's score it lies within `max_twist` of that
    /// group's centre exactly when the score does not decrease after
    /// k + max_twist and does not increase before k - max_twist.
    pub fn replacements(&self, node: &Node, cutoff: &Cutoff) -> Result<Vec<Node>> {
        let t = i64::from(cutoff.max_twist);
        let refs = node.refs();
        let parent_refs = Arc::new(refs);
        let mut out = Vec::new();
        for slot in 0..3 {
            if self.frozen.contains(&node.slots[slot]) {
                continue;
            }
            for j in self.window(node, &parent_refs, slot, cutoff)? {
                let m = template(node.kind, slot, j);
                let words = member_words(&m);
                let beta = genus2::unlift_trusted(&act(&node.frame, &words)).ok_or(Error::CoordinateOverflow)?;
                if !genus2::fits(&beta) {
                    return Err(Error::CoordinateOverflow);
                }
                if self.frozen.contains(&beta) {
                    continue;
                }
                let k = returning_index(node.kind, slot, j);
                if !self.standalone {
                    let (a, b) = (k + t, k - t - 1);
                    let admitted = parent_refs.iter().any(|g| {
                        if multi_intersection(&words, g) == 0 {
                            return false;
                        }
                        let f = |i: i64| {
                            let next = template(m.kind, m.slot, i);
                            let w = [m.word.as_slice(), &next.word].concat();
                            multi_intersection(&act(&w, model_words(next.kind, next.slot)), g)
                        };
                        f(a + 1) >= f(a) && f(b + 1) <= f(b)
                    });
                    if !admitted {
                        continue;
                    }
                }
                let mut slots = [beta; 3];
                for (i, src) in m.from.iter().enumerate() {
                    if let Some(s) = src {
                        slots[i] = node.slots[*s];
                    }
                }
                let mut curves = slots;
                curves.sort();
                let frame = reduce(&[node.frame.as_slice(), &m.word].concat());
                out.push(Node {
                    curves,
                    slots,
                    kind: m.kind,
                    frame,
                    parent_refs: Arc::clone(&parent_refs),
                    step: m.word,
                    hint: Some((m.slot, k)),
                });
            }
        }
        Ok(out)
    }
}

impl MoveGraph for Genus2Graph {
    type Node = Node;
    type Key = [Dt; 3];

    fn key(&self, node: &Node) -> [Dt; 3] {
        node.curves
    }

    fn adjacent(&self, node: &Node, cutoff: &Cutoff) -> Result<Vec<Node>> {
        self.replacements(node, cutoff)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn absolute(node: &Node, kind: Kind) -> [Dt; 3] {
        let mut s = [[0; 6]; 3];
        for (k, x) in s.iter_mut().enumerate() {
            *x = genus2::unlift(&act(&node.frame, model_words(kind, k))).unwrap();
        }
        s
    }

    #[test]
    fn templates_keep_the_other_slots() {
        let g = Genus2Graph::standalone();
        let base = g.locate(&BASE).unwrap();
        let c = Cutoff::new(2, 1).unwrap();
        let mut frontier = vec![base];
        for _ in 0..2 {
            let mut next = Vec::new();
            for n in &frontier {
                for m in g.replacements(n, &c).unwrap() {
                    assert_eq!(absolute(&m, m.kind), m.slots, "frame {:?}", m.frame);
                    next.push(m);
                }
            }
            next.truncate(12);
            frontier = next;
        }
    }

    #[test]
    fn family_members_are_spaced_by_minimal_intersection() {
        for (kind, slot) in [(Kind::I, 0), (Kind::I, 1), (Kind::I, 2), (Kind::II, 0), (Kind::II, 1), (Kind::II, 2)] {
            let i_min = kind.min_intersection(slot);
            let alpha = model_words(kind, slot);
            for a in -3..=3i64 {
                let wa = member_words(&template(kind, slot, a));
                assert_eq!(upstairs(&wa, alpha), i_min);
                for b in -3..=3i64 {
                    let wb = member_words(&template(kind, slot, b));
                    assert_eq!(upstairs(&wa, &wb), i_min * a.abs_diff(b), "{kind:?}.{slot} {a} {b}");
                }
            }
        }
    }

    #[test]
    fn removed_curve_index_is_independent_of_the_move() {
        for (kind, slot) in SLOTS {
            for j in -4..=4i64 {
                let m = template(kind, slot, j);
                let alpha = act(&inverse(&m.word), model_words(kind, slot));
                let k = returning_index(kind, slot, j);
                assert_eq!(member_words(&template(m.kind, m.slot, k)), alpha, "{kind:?}.{slot} j={j}");
            }
        }
    }

    #[test]
    fn locate_recovers_the_base() {
        let g = Genus2Graph::standalone();
        let n = g.locate(&BASE).unwrap();
        assert_eq!(n.kind, Kind::I);
        let mut b = BASE;
        b.sort();
        assert_eq!(n.curves, b);
    }
}
