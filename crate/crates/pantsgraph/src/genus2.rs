//! The closed genus-2 surface through its hyperelliptic quotient.
//!
//! Every mapping class of the genus-2 surface commutes with the hyperelliptic
//! involution, so curves and the twist generators descend to the sphere with
//! six punctures. The Humphries twist t_j descends to the half twist sigma_j,
//! and a curve system with coordinates (m1, t1, m2, t2, m3, t3) relative to
//! the base decomposition {c1, s, c5} descends to the sphere multicurve with
//! coordinates (2 m1, t1, m2, 2 t2, 2 m3, t3) relative to {A, B, C}, where
//! c1 and c5 cover A and C and the separating curve s = bd N(c1 u c2) covers B.
//! Intersection numbers halve on the way down.

use crate::dt::{self, Multicurve};
use crate::freegroup::{canonical, half_twist, multi_intersection, Letter};

/// Upstairs coordinates (m1, t1, m2, t2, m3, t3).
pub type Dt = [i64; 6];

/// Braid letters `(j, e)`; the rightmost acts first.
pub type Braid = Vec<(u8, i64)>;

const WORD_BUDGET: i64 = 4_000_000;

pub fn admissible(u: &Dt) -> bool {
    (0..3).all(|k| u[2 * k] >= 0 && (u[2 * k] > 0 || u[2 * k + 1] >= 0)) && u[2] % 2 == 0
}

pub fn is_empty(u: &Dt) -> bool {
    u.iter().all(|&x| x == 0)
}

fn down(u: &Dt) -> dt::Coords {
    [2 * u[0], u[1], u[2], 2 * u[3], 2 * u[4], u[5]]
}

fn up(d: &dt::Coords) -> Option<Dt> {
    if d[0] % 2 != 0 || d[4] % 2 != 0 || d[3] % 2 != 0 {
        return None;
    }
    Some([d[0] / 2, d[1], d[2], d[3] / 2, d[4] / 2, d[5]])
}

/// Rough length of the sphere words, used to refuse coordinates the word
/// engine cannot hold.
pub fn size(u: &Dt) -> i64 {
    let d = down(u);
    let mut s: i64 = 0;
    for k in 0..3 {
        let (m, t) = (d[2 * k], d[2 * k + 1]);
        s = s.saturating_add(m.saturating_mul(2)).saturating_add(t.saturating_abs().saturating_mul(4));
    }
    s
}

pub fn fits(u: &Dt) -> bool {
    size(u) <= WORD_BUDGET
}

/// Sphere words of the image multicurve (separating components appear twice).
pub fn lift(u: &Dt) -> Multicurve {
    dt::build(&down(u))
}

pub fn unlift(d: &[Vec<Letter>]) -> Option<Dt> {
    dt::read_back(d).and_then(|c| up(&c))
}

/// [`unlift`] for words known to be images of genuine curve systems.
pub fn unlift_trusted(d: &[Vec<Letter>]) -> Option<Dt> {
    dt::read_back_trusted(d).and_then(|c| up(&c))
}

pub fn act_words(braid: &[(u8, i64)], d: &[Vec<Letter>]) -> Multicurve {
    let mut out: Multicurve = d
        .iter()
        .map(|w| {
            let mut cur = w.clone();
            for &(j, e) in braid.iter().rev() {
                for _ in 0..e.unsigned_abs() {
                    cur = half_twist(j, e > 0, &cur);
                }
            }
            canonical(&cur)
        })
        .collect();
    out.sort();
    out
}

/// Image of a curve system under a braid word in the twist generators.
///
/// Twists about the base curves c1 and c5 shift a twist coordinate directly;
/// any other letter routes the whole word through the sphere words.
pub fn apply(braid: &[(u8, i64)], u: &Dt) -> Option<Dt> {
    if braid.iter().all(|&(j, _)| j == 1 || j == 5) {
        let mut v = *u;
        for &(j, e) in braid {
            if j == 1 {
                v[1] += e * v[0];
            } else {
                v[5] += e * v[4];
            }
        }
        return Some(v);
    }
    unlift(&act_words(braid, &lift(u)))
}

/// Geometric intersection number of two curve systems.
pub fn intersection(u: &Dt, v: &Dt) -> u64 {
    multi_intersection(&lift(u), &lift(v)) / 2
}

/// Components of the image multicurve grouped into genus-2 curves: a word
/// around three punctures is half of a separating curve.
pub fn component_count(u: &Dt) -> usize {
    let words = lift(u);
    let sep = words.iter().filter(|w| is_separating_word(w)).count();
    words.len() - sep + sep / 2
}

pub fn is_separating_word(w: &[Letter]) -> bool {
    let mut ab = [0i64; 6];
    for &x in w {
        ab[x.unsigned_abs() as usize] += i64::from(x.signum());
    }
    ab[1..].iter().filter(|&&v| v != 0).count() == 3
}

/// Whether `u` is a single separating curve.
pub fn is_separating(u: &Dt) -> bool {
    let words = lift(u);
    words.len() == 2 && words[0] == words[1] && is_separating_word(&words[0])
}

/// The Humphries chain c1..c5 and the separating curve s = bd N(c1 u c2).
pub mod standard {
    use super::Dt;

    pub const C1: Dt = [0, 1, 0, 0, 0, 0];
    pub const C2: Dt = [1, -1, 0, 0, 0, 0];
    pub const C3: Dt = [0, 0, 2, 0, 0, 0];
    pub const C4: Dt = [0, 0, 0, 0, 1, 0];
    pub const C5: Dt = [0, 0, 0, 0, 0, 1];
    pub const S: Dt = [0, 0, 0, 1, 0, 0];
    pub const CHAIN: [Dt; 5] = [C1, C2, C3, C4, C5];
}

#[cfg(test)]
mod tests {
    use super::standard::*;
    use super::*;

    #[test]
    fn chain_intersections() {
        for a in 0..5usize {
            for b in 0..5 {
                let expect = if a == b { 0 } else if a.abs_diff(b) == 1 { 1 } else { 0 };
                assert_eq!(intersection(&CHAIN[a], &CHAIN[b]), expect, "c{} c{}", a + 1, b + 1);
            }
        }
        assert_eq!(intersection(&S, &C3), 2);
        assert_eq!(intersection(&S, &C1), 0);
    }

    #[test]
    fn chain_lifts_are_standard_arcs() {
        let std: [&[Letter]; 5] = [&[1, 2], &[2, 3], &[3, 4], &[4, 5], &[-4, -3, -2, -1]];
        for (c, w) in CHAIN.iter().zip(std) {
            assert_eq!(lift(c), vec![canonical(w)]);
        }
    }

    #[test]
    fn twist_fixes_its_own_curve() {
        for j in 1..=5u8 {
            let c = CHAIN[j as usize - 1];
            assert_eq!(apply(&[(j, 3)], &c), Some(c));
            let x = [2, 3, 4, -1, 2, 0];
            assert_eq!(apply(&[(j, 1), (3, 2), (3, -2), (j, -1)], &x), Some(x));
        }
    }

    #[test]
    fn separating_detection() {
        assert!(is_separating(&S));
        assert!(!is_separating(&C3));
        assert_eq!(component_count(&S), 1);
        assert_eq!(component_count(&[0, 2, 0, 1, 0, 0]), 3);
    }
}
