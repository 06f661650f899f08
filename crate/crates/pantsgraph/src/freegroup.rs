//! Words in the free group F5 = pi1 of the six-times punctured sphere.
//!
//! Punctures p1..p5 sit at 1..5 on the real line and p6 at infinity. A ray
//! hangs straight down from each finite puncture; crossing ray `j` from left
//! to right reads the letter `j`, crossing it the other way reads `-j`. The
//! product x1 x2 x3 x4 x5 is the loop around infinity.

pub type Letter = i8;

pub const RANK: usize = 5;

pub fn reduce(w: &[Letter]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(w.len());
    for &x in w {
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

pub fn cyclic_reduce(w: &[Letter]) -> Vec<Letter> {
    let w = reduce(w);
    let mut lo = 0;
    let mut hi = w.len();
    while hi - lo > 1 && w[lo] == -w[hi - 1] {
        lo += 1;
        hi -= 1;
    }
    w[lo..hi].to_vec()
}

pub fn inverse(w: &[Letter]) -> Vec<Letter> {
    w.iter().rev().map(|&x| -x).collect()
}

/// Start index of the lexicographically least rotation (Booth).
fn least_rotation(s: &[Letter]) -> usize {
    let n = s.len() as isize;
    let at = |x: isize| s[(x % n) as usize];
    let mut f = vec![-1isize; 2 * n as usize];
    let mut k: isize = 0;
    for j in 1..2 * n {
        let sj = at(j);
        let mut i = f[(j - k - 1) as usize];
        while i != -1 && sj != at(k + i + 1) {
            if sj < at(k + i + 1) {
                k = j - i - 1;
            }
            i = f[i as usize];
        }
        if sj != at(k + i + 1) {
            if sj < at(k) {
                k = j;
            }
            f[(j - k) as usize] = -1;
        } else {
            f[(j - k) as usize] = i + 1;
        }
    }
    (k % n) as usize
}

fn rotated(s: &[Letter], r: usize) -> Vec<Letter> {
    let mut v = Vec::with_capacity(s.len());
    v.extend_from_slice(&s[r..]);
    v.extend_from_slice(&s[..r]);
    v
}

/// Normal form of an unoriented free homotopy class: the least rotation of
/// the cyclic reduction of `w` or of its inverse.
pub fn canonical(w: &[Letter]) -> Vec<Letter> {
    let c = cyclic_reduce(w);
    if c.is_empty() {
        return c;
    }
    let a = rotated(&c, least_rotation(&c));
    let ci = inverse(&c);
    let b = rotated(&ci, least_rotation(&ci));
    a.min(b)
}

fn image(j: u8, positive: bool, x: Letter) -> Option<&'static [Letter]> {
    let g = x.unsigned_abs();
    match (j, positive) {
        (5, true) if g == 5 => Some(&[-4, -3, -2, -1, -5]),
        (5, false) if g == 5 => Some(&[-5, -4, -3, -2, -1]),
        (5, _) => None,
        (j, true) => {
            const IMG: [[[Letter; 3]; 2]; 4] = [
                [[1, 2, -1], [1, 0, 0]],
                [[2, 3, -2], [2, 0, 0]],
                [[3, 4, -3], [3, 0, 0]],
                [[4, 5, -4], [4, 0, 0]],
            ];
            let t = &IMG[(j - 1) as usize];
            if g == j {
                Some(&t[0][..])
            } else if g == j + 1 {
                Some(&t[1][..1])
            } else {
                None
            }
        }
        (j, false) => {
            const IMG: [[[Letter; 3]; 2]; 4] = [
                [[2, 0, 0], [-2, 1, 2]],
                [[3, 0, 0], [-3, 2, 3]],
                [[4, 0, 0], [-4, 3, 4]],
                [[5, 0, 0], [-5, 4, 5]],
            ];
            let t = &IMG[(j - 1) as usize];
            if g == j {
                Some(&t[0][..1])
            } else if g == j + 1 {
                Some(&t[1][..])
            } else {
                None
            }
        }
    }
}

/// Action of the half twist sigma_j (or its inverse) on a word.
///
/// sigma_j for j < 5 exchanges punctures j and j+1; sigma_5 exchanges p5 and
/// the puncture at infinity.
pub fn half_twist(j: u8, positive: bool, w: &[Letter]) -> Vec<Letter> {
    debug_assert!((1..=5).contains(&j));
    let mut out: Vec<Letter> = Vec::with_capacity(w.len() + 8);
    let push = |x: Letter, out: &mut Vec<Letter>| {
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    };
    for &x in w {
        match image(j, positive, x) {
            Some(img) => {
                if x > 0 {
                    for &y in img {
                        push(y, &mut out);
                    }
                } else {
                    for &y in img.iter().rev() {
                        push(-y, &mut out);
                    }
                }
            }
            None => push(x, &mut out),
        }
    }
    out
}

/// Applies a braid word given as `(generator, exponent)` pairs. The rightmost
/// pair acts first, so `act(u ++ v, w) = act(u, act(v, w))`.
pub fn act(letters: &[(u8, i64)], w: &[Letter]) -> Vec<Letter> {
    let mut cur = w.to_vec();
    for &(j, e) in letters.iter().rev() {
        for _ in 0..e.unsigned_abs() {
            cur = half_twist(j, e > 0, &cur);
        }
    }
    canonical(&cur)
}

fn half_edge(x: Letter) -> i32 {
    2 * (x.unsigned_abs() as i32 - 1) + i32::from(x < 0)
}

fn ccw_before(from: i32, u: i32, v: i32) -> bool {
    (u - from).rem_euclid(10) < (v - from).rem_euclid(10)
}

/// Geometric intersection number of two unoriented curve classes given by
/// canonical words, counted by linked pairs of maximal common segments.
pub fn intersection(a: &[Letter], b: &[Letter]) -> u64 {
    if a.is_empty() || b.is_empty() || a == b {
        return 0;
    }
    let p = a.len();
    let q = b.len();
    let binv = inverse(b);
    let corners = |w: &[Letter]| {
        let mut c = [[0u64; 10]; 10];
        for i in 0..w.len() {
            let prev = w[(i + w.len() - 1) % w.len()];
            c[half_edge(-prev) as usize][half_edge(w[i]) as usize] += 1;
        }
        c
    };
    let (ca, cb) = (corners(a), corners(b));
    let mut count = 0u64;
    for ai in 0..10 {
        for ao in 0..10 {
            if ca[ai][ao] == 0 {
                continue;
            }
            for bi in 0..10 {
                for bo in 0..10 {
                    let n = cb[bi][bo];
                    if n == 0 || ai == bi || ai == bo || ao == bi || ao == bo {
                        continue;
                    }
                    let (ai, ao, bi, bo) = (ai as i32, ao as i32, bi as i32, bo as i32);
                    if ccw_before(ai, bi, ao) != ccw_before(ai, bo, ao) {
                        count += ca[ai as usize][ao as usize] * n;
                    }
                }
            }
        }
    }
    for bb in [b, &binv[..]] {
        let mut at: [Vec<usize>; 10] = Default::default();
        for (j, &y) in bb.iter().enumerate() {
            at[half_edge(y) as usize].push(j);
        }
        for i in 0..p {
            let a_prev = a[(i + p - 1) % p];
            for &j in &at[half_edge(a[i]) as usize] {
                let b_prev = bb[(j + q - 1) % q];
                if a_prev == b_prev {
                    continue;
                }
                let mut k = 1;
                while k < p + q && a[(i + k) % p] == bb[(j + k) % q] {
                    k += 1;
                }
                let f = half_edge(a[i]);
                let ea = half_edge(-a_prev);
                let eb = half_edge(-b_prev);
                let g = half_edge(-a[(i + k - 1) % p]);
                let ao = half_edge(a[(i + k) % p]);
                let bo = half_edge(bb[(j + k) % q]);
                if ccw_before(f, ea, eb) == ccw_before(g, ao, bo) {
                    count += 1;
                }
            }
        }
    }
    count
}

/// Sum of pairwise intersections of two multicurves.
pub fn multi_intersection(xs: &[Vec<Letter>], ys: &[Vec<Letter>]) -> u64 {
    let mut s = 0;
    for x in xs {
        for y in ys {
            s += intersection(x, y);
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_is_rotation_and_inverse_invariant() {
        let w = [1, 2, -3, 4];
        let c = canonical(&w);
        assert_eq!(canonical(&[2, -3, 4, 1]), c);
        assert_eq!(canonical(&inverse(&w)), c);
        assert_eq!(canonical(&[5, 1, 2, -3, 4, -5]), c);
    }

    #[test]
    fn least_rotation_matches_naive() {
        let s: Vec<Letter> = vec![3, -1, 2, -1, 2, -1, 3, -1, 2];
        let naive = (0..s.len()).map(|r| rotated(&s, r)).min().unwrap();
        assert_eq!(rotated(&s, least_rotation(&s)), naive);
    }

    fn apply(word: &[(u8, bool)], x: Letter) -> Vec<Letter> {
        let mut w = vec![x];
        for &(j, pos) in word.iter().rev() {
            w = half_twist(j, pos, &w);
        }
        w
    }

    #[test]
    fn braid_relations_hold_on_generators() {
        for x in 1..=5 as Letter {
            for j in 1..=4u8 {
                let l = apply(&[(j, true), (j + 1, true), (j, true)], x);
                let r = apply(&[(j + 1, true), (j, true), (j + 1, true)], x);
                assert_eq!(l, r);
            }
            for j in 1..=5u8 {
                assert_eq!(apply(&[(j, true), (j, false)], x), vec![x]);
            }
        }
    }

    #[test]
    fn adjacent_arc_curves_meet_twice() {
        assert_eq!(intersection(&canonical(&[1, 2]), &canonical(&[2, 3])), 2);
        assert_eq!(intersection(&canonical(&[1, 2]), &canonical(&[3, 4])), 0);
    }

    fn quadratic(a: &[Letter], b: &[Letter]) -> u64 {
        if a.is_empty() || b.is_empty() || a == b {
            return 0;
        }
        let (p, q) = (a.len(), b.len());
        let binv = inverse(b);
        let mut count = 0;
        for (bb, forward) in [(b, true), (&binv[..], false)] {
            for i in 0..p {
                let a_prev = a[(i + p - 1) % p];
                for j in 0..q {
                    let b_prev = bb[(j + q - 1) % q];
                    if a_prev == b_prev {
                        continue;
                    }
                    let mut k = 0;
                    while k < p + q && a[(i + k) % p] == bb[(j + k) % q] {
                        k += 1;
                    }
                    if k == 0 {
                        let (ai, ao) = (half_edge(-a_prev), half_edge(a[i]));
                        let (bi, bo) = (half_edge(-b_prev), half_edge(bb[j]));
                        if forward
                            && ![bi, bo].contains(&ai)
                            && ![bi, bo].contains(&ao)
                            && ccw_before(ai, bi, ao) != ccw_before(ai, bo, ao)
                        {
                            count += 1;
                        }
                    } else {
                        let f = half_edge(a[i]);
                        let g = half_edge(-a[(i + k - 1) % p]);
                        let before = ccw_before(f, half_edge(-a_prev), half_edge(-b_prev));
                        let after = ccw_before(g, half_edge(a[(i + k) % p]), half_edge(bb[(j + k) % q]));
                        if before == after {
                            count += 1;
                        }
                    }
                }
            }
        }
        count
    }

    #[test]
    fn corner_counting_matches_pairwise_scan() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let base = [canonical(&[1, 2]), canonical(&[2, 3]), canonical(&[1, 2, 3, 4])];
        let mut curves = base.to_vec();
        for _ in 0..60 {
            let n = rng.gen_range(1..8);
            let word: Vec<(u8, i64)> = (0..n).map(|_| (rng.gen_range(1..=5), if rng.gen() { 1 } else { -1 })).collect();
            curves.push(act(&word, &base[rng.gen_range(0..3)]));
        }
        for x in &curves {
            for y in &curves {
                assert_eq!(intersection(x, y), quadratic(x, y));
            }
        }
    }
}
