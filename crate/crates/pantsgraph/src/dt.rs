//! Dehn–Thurston coordinates on the six-times punctured sphere relative to the
//! nested curves A (around p1 p2), B (around p1 p2 p3) and C (around p1..p4),
//! and their conversion to and from free-group words.
//!
//! Each pants curve carries a window at its top. Arcs entering the annulus of
//! curve K at position i leave it at position i - t_K (mod m_K), reading the
//! appropriate power of the boundary word of K.

use std::sync::OnceLock;

use crate::freegroup::{act, canonical, intersection, inverse, Letter};

/// (m_A, t_A, m_B, t_B, m_C, t_C)
pub type Coords = [i64; 6];

pub type Multicurve = Vec<Vec<Letter>>;

const BOUNDARY: [&[Letter]; 3] = [&[1, 2], &[1, 2, 3], &[1, 2, 3, 4]];

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
struct End {
    curve: u8,
    out: bool,
    index: usize,
}

struct Pairing {
    to: std::collections::HashMap<End, (End, Vec<Letter>)>,
}

impl Pairing {
    fn new() -> Self {
        Pairing { to: std::collections::HashMap::new() }
    }

    fn link(&mut self, a: End, b: End, reading: Vec<Letter>) {
        let back = inverse(&reading);
        self.to.insert(a, (b, reading));
        self.to.insert(b, (a, back));
    }
}

fn end(curve: u8, out: bool, index: i64) -> End {
    End { curve, out, index: index as usize }
}

fn power(w: &[Letter], q: i64) -> Vec<Letter> {
    let base: Vec<Letter> = if q >= 0 { w.to_vec() } else { inverse(w) };
    let mut out = Vec::with_capacity(base.len() * q.unsigned_abs() as usize);
    for _ in 0..q.unsigned_abs() {
        out.extend_from_slice(&base);
    }
    out
}

/// Whether the coordinates describe a multicurve: even m-values and
/// nonnegative twists on curves that are not crossed.
pub fn admissible(u: &Coords) -> bool {
    let m = [u[0], u[2], u[4]];
    let t = [u[1], u[3], u[5]];
    m.iter().all(|&x| x >= 0 && x % 2 == 0) && (0..3).all(|k| m[k] > 0 || t[k] >= 0)
}

/// Canonical words of the components, sorted.
pub fn build(u: &Coords) -> Multicurve {
    debug_assert!(admissible(u));
    let m = [u[0], u[2], u[4]];
    let t = [u[1], u[3], u[5]];
    let mut pants = Pairing::new();
    let mut annuli = Pairing::new();
    for k in 0..m[0] / 2 {
        pants.link(end(0, false, k), end(0, false, m[0] - 1 - k), vec![-1]);
    }
    for k in 0..m[2] / 2 {
        pants.link(end(2, true, k), end(2, true, m[2] - 1 - k), vec![5]);
    }
    for (lo, hi, letter) in [(0u8, 1u8, 3 as Letter), (1, 2, 4)] {
        let a = m[lo as usize];
        let b = m[hi as usize];
        if a >= b {
            let c = (a - b) / 2;
            for k in 0..c {
                pants.link(end(lo, true, k), end(lo, true, 2 * c - 1 - k), vec![letter]);
            }
            for r in 0..b {
                pants.link(end(lo, true, 2 * c + r), end(hi, false, r), vec![]);
            }
        } else {
            let c = (b - a) / 2;
            for k in 0..c {
                pants.link(end(hi, false, k), end(hi, false, 2 * c - 1 - k), vec![-letter]);
            }
            for r in 0..a {
                pants.link(end(lo, true, r), end(hi, false, 2 * c + r), vec![]);
            }
        }
    }
    let mut comps: Multicurve = Vec::new();
    for k in 0..3u8 {
        let (mk, tk) = (m[k as usize], t[k as usize]);
        let w = BOUNDARY[k as usize];
        if mk == 0 {
            for _ in 0..tk {
                comps.push(w.to_vec());
            }
            continue;
        }
        for i in 0..mk {
            let s = i - tk;
            annuli.link(end(k, false, i), end(k, true, s.rem_euclid(mk)), power(w, s.div_euclid(mk)));
        }
    }
    let mut starts: Vec<End> = pants.to.keys().copied().collect();
    starts.sort();
    let mut seen = std::collections::HashSet::new();
    for p0 in starts {
        if seen.contains(&p0) {
            continue;
        }
        let mut word = Vec::new();
        let mut cur = p0;
        loop {
            seen.insert(cur);
            let (q, rd) = &pants.to[&cur];
            word.extend_from_slice(rd);
            seen.insert(*q);
            let (q2, rd2) = &annuli.to[q];
            word.extend_from_slice(rd2);
            cur = *q2;
            if cur == p0 {
                break;
            }
        }
        comps.push(word);
    }
    let mut out: Multicurve = comps.iter().map(|c| canonical(c)).collect();
    out.sort();
    out
}

struct Probes {
    base: [Vec<Letter>; 3],
    dual: [Vec<Letter>; 3],
    twisted_dual: [Vec<Letter>; 3],
}

fn probes() -> &'static Probes {
    static P: OnceLock<Probes> = OnceLock::new();
    P.get_or_init(|| {
        let base = [canonical(BOUNDARY[0]), canonical(BOUNDARY[1]), canonical(BOUNDARY[2])];
        let dual = [canonical(&[2, 3]), canonical(&[3, 4]), canonical(&[4, 5])];
        let full: [Vec<(u8, i64)>; 3] = [
            vec![(1, 2)],
            vec![(1, 1), (2, 1), (1, 1), (2, 1), (1, 1), (2, 1)],
            vec![(5, 2)],
        ];
        let twisted_dual = [act(&full[0], &dual[0]), act(&full[1], &dual[1]), act(&full[2], &dual[2])];
        Probes { base, dual, twisted_dual }
    })
}

fn meet(d: &[Vec<Letter>], w: &[Letter]) -> i64 {
    d.iter().map(|x| intersection(x, w) as i64).sum()
}

/// Centre and excess of the V-shaped profile of i(curve, dual of K) as a
/// function of the twist on K.
fn profile(k: usize, a: i64, b: i64, c: i64) -> (i64, i64) {
    match k {
        0 => ((a.min(b) - a) / 2, (b - a).max(0)),
        1 => ((b.min(c) - a.min(b)) / 2, (a - b).max(0) + (c - b).max(0)),
        _ => (-(b.min(c) / 2), (b - c).max(0)),
    }
}

/// Recovers coordinates from a multicurve given by canonical component
/// words. Returns `None` if the words do not form a multicurve the
/// construction reproduces.
pub fn read_back(d: &[Vec<Letter>]) -> Option<Coords> {
    let mut d: Multicurve = d.iter().filter(|w| !w.is_empty()).cloned().collect();
    d.sort();
    let u = coordinates(&d)?;
    if build(&u) != d {
        return None;
    }
    Some(u)
}

/// [`read_back`] without rebuilding the multicurve, for words known to be
/// images of genuine multicurves.
pub fn read_back_trusted(d: &[Vec<Letter>]) -> Option<Coords> {
    let d: Multicurve = d.iter().filter(|w| !w.is_empty()).cloned().collect();
    coordinates(&d)
}

fn coordinates(d: &[Vec<Letter>]) -> Option<Coords> {
    let pr = probes();
    let m = [meet(d, &pr.base[0]), meet(d, &pr.base[1]), meet(d, &pr.base[2])];
    let mut t = [0i64; 3];
    for k in 0..3 {
        if m[k] == 0 {
            t[k] = d.iter().filter(|w| **w == pr.base[k]).count() as i64;
            continue;
        }
        let (centre, excess) = profile(k, m[0], m[1], m[2]);
        let s = meet(d, &pr.dual[k]) - excess;
        if s < 0 || s % 2 != 0 {
            return None;
        }
        let s = s / 2;
        if s == 0 {
            t[k] = centre;
            continue;
        }
        let y1 = meet(d, &pr.twisted_dual[k]);
        let fits = |tau: i64| 2 * (tau - m[k] - centre).abs() + excess == y1;
        let (hi, lo) = (centre + s, centre - s);
        t[k] = match (fits(hi), fits(lo)) {
            (true, false) => hi,
            (false, true) => lo,
            _ => return None,
        };
    }
    let u = [m[0], t[0], m[1], t[1], m[2], t[2]];
    admissible(&u).then_some(u)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_curves_read_back() {
        assert_eq!(read_back(&[canonical(&[1, 2])]), Some([0, 1, 0, 0, 0, 0]));
        assert_eq!(read_back(&[canonical(&[2, 3])]), Some([2, -1, 0, 0, 0, 0]));
        assert_eq!(build(&[0, 0, 0, 2, 0, 0]), vec![canonical(&[1, 2, 3]); 2]);
    }

    #[test]
    fn build_then_read_back() {
        for u in [[2, 3, 4, -1, 2, 0], [4, -2, 2, 5, 0, 1], [0, 2, 2, 1, 2, -3], [6, 1, 0, 0, 2, 2]] {
            assert_eq!(read_back(&build(&u)), Some(u));
        }
    }
}
