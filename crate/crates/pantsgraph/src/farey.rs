//! Slopes on the once-punctured torus and the Farey graph.
//!
//! A slope p/q is stored with the sign in p and q = 0 reserved for 1/0.
//! Relative to the base slope 0/1 its intersection coordinate is |p|.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::Integral;
use crate::word::{Generator, MappingClassWord};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slope<T = BigInt> {
    p: T,
    q: T,
}

impl<T: Integral> Slope<T> {
    /// Slope from a primitive vector; either sign of the vector is accepted.
    pub fn new(p: T, q: T) -> Result<Self> {
        if !p.gcd(&q).is_one() {
            return Err(Error::MalformedCoordinates(format!("{p}/{q} is not in lowest terms")));
        }
        Ok(Self::normalized(p, q))
    }

    fn normalized(p: T, q: T) -> Self {
        if q.is_zero() {
            Slope { p: T::one(), q }
        } else if q.is_negative() {
            Slope { p: -p, q: -q }
        } else {
            Slope { p, q }
        }
    }

    /// Reduces an arbitrary nonzero vector to lowest terms.
    pub fn reduced(p: T, q: T) -> Result<Self> {
        let g = p.gcd(&q);
        if g.is_zero() {
            return Err(Error::MalformedCoordinates("0/0 is not a slope".into()));
        }
        Ok(Self::normalized(p / g.clone(), q / g))
    }

    pub fn infinity() -> Self {
        Slope { p: T::one(), q: T::zero() }
    }

    pub fn integer(n: T) -> Self {
        Slope { p: n, q: T::one() }
    }

    pub fn p(&self) -> &T {
        &self.p
    }

    pub fn q(&self) -> &T {
        &self.q
    }

    pub fn is_infinity(&self) -> bool {
        self.q.is_zero()
    }

    pub fn parse(text: &str) -> Result<Self> {
        let err = || Error::Parse(format!("bad slope literal {text:?}"));
        let (a, b) = text.trim().split_once('/').ok_or_else(err)?;
        let p = T::from_str(a.trim()).map_err(|_| err())?;
        let q = T::from_str(b.trim()).map_err(|_| err())?;
        if q.is_negative() {
            return Err(err());
        }
        if q.is_zero() && !p.is_one() {
            return Err(err());
        }
        Slope::new(p, q)
    }
}

impl<T: Integral> fmt::Display for Slope<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl<T: Integral> FromStr for Slope<T> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Slope::parse(s)
    }
}

impl<T: Integral> Serialize for Slope<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// |p_a q_b - q_a p_b|.
pub fn slope_intersection<T: Integral>(a: &Slope<T>, b: &Slope<T>) -> T {
    (a.p.clone() * b.q.clone() - a.q.clone() * b.p.clone()).abs()
}

/// Action of a word in L = [[1,0],[1,1]] and R = [[1,1],[0,1]]; the
/// rightmost letter acts first.
pub fn act<T: Integral>(w: &MappingClassWord, a: &Slope<T>) -> Result<Slope<T>> {
    let (mut p, mut q) = (a.p.clone(), a.q.clone());
    for &(g, e) in w.letters.iter().rev() {
        let e = T::from_i64(e).expect("exponent fits the scalar");
        match g {
            Generator::L => q = q + e * p.clone(),
            Generator::R => p = p + e * q.clone(),
            Generator::Twist(_) => {
                return Err(Error::MalformedWord(format!("{g} is not a punctured-torus generator")))
            }
        }
    }
    Ok(Slope::normalized(p, q))
}

/// An element of SL(2,Z) sending 1/0 to `a`, as columns (a, b).
fn frame<T: Integral>(a: &Slope<T>) -> (T, T, T, T) {
    // p s - q r = 1
    let g = a.p.extended_gcd(&a.q);
    let (s, r) = if g.gcd.is_one() { (g.x, -g.y) } else { (-g.x, g.y) };
    (a.p.clone(), r, a.q.clone(), s)
}

/// Graph distance in the Farey graph.
///
/// After moving `a` to 1/0 the distance to x is read off the continued
/// fraction of x: convergent c_k is reached either from c_{k-1} in one step
/// or from c_{k-2} along the a_k spokes of the fan pivoting at c_{k-1}.
pub fn farey_distance<T: Integral>(a: &Slope<T>, b: &Slope<T>) -> u64 {
    if a == b {
        return 0;
    }
    let (p, r, q, s) = frame(a);
    let mut u = s.clone() * b.p.clone() - r.clone() * b.q.clone();
    let mut v = p.clone() * b.q.clone() - q.clone() * b.p.clone();
    if v.is_negative() {
        u = -u;
        v = -v;
    }
    debug_assert!(!v.is_zero());
    let mut before: u64 = 0;
    let mut last: u64 = 1;
    let (_, mut rem) = u.div_mod_floor(&v);
    let mut den = v;
    while !rem.is_zero() {
        let (ak, next) = den.div_mod_floor(&rem);
        den = rem;
        rem = next;
        let spokes = ak.to_u64().unwrap_or(u64::MAX);
        let cur = (last + 1).min(before.saturating_add(spokes));
        before = last;
        last = cur;
    }
    last
}

/// Neighbours of `a` in the Farey graph inside the box |p| <= bound, q <= bound.
pub fn neighbors_in_box<T: Integral>(a: &Slope<T>, bound: &T) -> Vec<Slope<T>> {
    let (p, r, q, s) = frame(a);
    // neighbours are (r + k p) / (s + k q)
    let mut out = Vec::new();
    let in_box = |x: &T, y: &T| x.abs() <= *bound && y.abs() <= *bound;
    if q.is_zero() {
        let mut k = -bound.clone();
        while k <= *bound {
            out.push(Slope::normalized(r.clone() + k.clone() * p.clone(), s.clone()));
            k = k + T::one();
        }
    } else {
        let lo = (-bound.clone() - s.clone()).div_floor(&q);
        let hi = (bound.clone() - s.clone()).div_floor(&q) + T::one();
        let mut k = lo;
        while k <= hi {
            let x = r.clone() + k.clone() * p.clone();
            let y = s.clone() + k.clone() * q.clone();
            if in_box(&x, &y) {
                out.push(Slope::normalized(x, y));
            }
            k = k + T::one();
        }
    }
    out.sort();
    out.dedup();
    out
}

/// All slopes with |p| <= bound and 0 <= q <= bound.
pub fn box_slopes<T: Integral>(bound: i64) -> Vec<Slope<T>> {
    let mut out = vec![Slope::infinity()];
    for q in 1..=bound {
        for p in -bound..=bound {
            if num_integer::gcd(p, q) == 1 {
                out.push(Slope::normalized(T::from_i64(p).unwrap(), T::from_i64(q).unwrap()));
            }
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    type S = Slope<i64>;

    fn s(t: &str) -> S {
        S::parse(t).unwrap()
    }

    #[test]
    fn parsing_and_normal_form() {
        assert_eq!(s("-2/3").to_string(), "-2/3");
        assert_eq!(s("1/0"), S::infinity());
        assert!(S::parse("2/4").is_err());
        assert!(S::parse("1/-2").is_err());
        assert!(S::parse("-1/0").is_err());
        assert_eq!(S::new(2, -3).unwrap(), s("-2/3"));
        assert_eq!(S::reduced(-4, -6).unwrap(), s("2/3"));
    }

    #[test]
    fn intersections() {
        assert_eq!(slope_intersection(&s("0/1"), &s("1/0")), 1);
        assert_eq!(slope_intersection(&s("2/3"), &s("5/7")), 1);
        assert_eq!(slope_intersection(&s("1/2"), &s("3/5")), 1);
        assert_eq!(slope_intersection(&s("3/5"), &s("3/5")), 0);
    }

    #[test]
    fn distances() {
        assert_eq!(farey_distance(&s("0/1"), &s("0/1")), 0);
        assert_eq!(farey_distance(&s("0/1"), &s("1/0")), 1);
        assert_eq!(farey_distance(&s("0/1"), &s("3/5")), 2);
        assert_eq!(farey_distance(&s("1/0"), &s("1/50")), 2);
        assert_eq!(farey_distance(&s("3/5"), &s("0/1")), 2);
    }

    #[test]
    fn box_neighbours_of_zero() {
        let got: Vec<String> = neighbors_in_box(&s("0/1"), &3).iter().map(|x| x.to_string()).collect();
        assert_eq!(got, ["-1/1", "-1/2", "-1/3", "1/0", "1/1", "1/2", "1/3"]);
    }

    #[test]
    fn word_action() {
        let r = MappingClassWord::parse(crate::surface::SurfaceSpec::punctured_torus(), "R").unwrap();
        assert_eq!(act(&r, &s("0/1")).unwrap(), s("1/1"));
        let w = MappingClassWord::parse(crate::surface::SurfaceSpec::punctured_torus(), "R L^-2 R^3").unwrap();
        let x = s("2/7");
        assert_eq!(act(&w.inverse(), &act(&w, &x).unwrap()).unwrap(), x);
    }
}
