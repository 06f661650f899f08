//! Curve systems on the closed genus-2 surface in Dehn–Thurston coordinates.
//!
//! Coordinates are taken relative to the base decomposition {c1, s, c5},
//! where c1, c5 are the outer curves of the Humphries chain and s bounds a
//! regular neighbourhood of c1 u c2. Twisting is right-handed: the twist t1
//! adds m1 to the first twist coordinate.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::genus2::{self, Dt};
use crate::scalar::{from_i64, to_i64, Integral};
use crate::surface::{Model, SurfaceSpec};
use crate::word::{Generator, MappingClassWord};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CurveSystem<T = BigInt> {
    surface: SurfaceSpec,
    coords: Vec<(T, T)>,
}

impl<T: Integral> CurveSystem<T> {
    /// Validated curve system; the empty multicurve is allowed here.
    pub fn new(surface: SurfaceSpec, coords: Vec<(T, T)>) -> Result<Self> {
        match surface.model {
            Model::Closed { genus: 2 } => {}
            Model::Closed { genus } => return Err(Error::UnsupportedGenus(genus)),
            Model::PuncturedTorus => return Err(Error::WrongModel("punctured-torus".into())),
        }
        if coords.len() != surface.num_pants_curves() {
            return Err(Error::MalformedCoordinates(format!(
                "expected {} coordinate pairs, found {}",
                surface.num_pants_curves(),
                coords.len()
            )));
        }
        for (i, (m, t)) in coords.iter().enumerate() {
            if m.is_negative() {
                return Err(Error::MalformedCoordinates(format!("m{} is negative", i + 1)));
            }
            if m.is_zero() && t.is_negative() {
                return Err(Error::MalformedCoordinates(format!("m{} = 0 but t{} < 0", i + 1, i + 1)));
            }
        }
        let two = from_i64::<T>(2);
        if !(coords[1].0.clone() % two).is_zero() {
            return Err(Error::MalformedCoordinates(
                "boundary m-values of a base pair of pants have odd sum".into(),
            ));
        }
        Ok(CurveSystem { surface, coords })
    }

    pub fn from_dt(u: &Dt) -> Self {
        let coords = (0..3).map(|k| (from_i64(u[2 * k]), from_i64(u[2 * k + 1]))).collect();
        CurveSystem { surface: SurfaceSpec::genus2(), coords }
    }

    /// Chain curve c_j, j in 1..=5.
    pub fn chain(j: usize) -> Self {
        Self::from_dt(&genus2::standard::CHAIN[j - 1])
    }

    /// The separating base curve s.
    pub fn separating() -> Self {
        Self::from_dt(&genus2::standard::S)
    }

    pub fn surface(&self) -> SurfaceSpec {
        self.surface
    }

    pub fn coords(&self) -> &[(T, T)] {
        &self.coords
    }

    pub fn m(&self, i: usize) -> &T {
        &self.coords[i].0
    }

    pub fn t(&self, i: usize) -> &T {
        &self.coords[i].1
    }

    pub fn is_empty(&self) -> bool {
        self.coords.iter().all(|(m, t)| m.is_zero() && t.is_zero())
    }

    /// Machine-word coordinates for the word engine.
    pub fn dt(&self) -> Result<Dt> {
        let mut u = [0i64; 6];
        for (k, (m, t)) in self.coords.iter().enumerate() {
            u[2 * k] = to_i64(m).ok_or(Error::CoordinateOverflow)?;
            u[2 * k + 1] = to_i64(t).ok_or(Error::CoordinateOverflow)?;
        }
        if !genus2::fits(&u) {
            return Err(Error::CoordinateOverflow);
        }
        Ok(u)
    }

    pub fn convert<U: Integral>(&self) -> Result<CurveSystem<U>> {
        let coords = self
            .coords
            .iter()
            .map(|(m, t)| {
                let m = U::from_str(&m.to_string()).map_err(|_| Error::CoordinateOverflow)?;
                let t = U::from_str(&t.to_string()).map_err(|_| Error::CoordinateOverflow)?;
                Ok((m, t))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CurveSystem { surface: self.surface, coords })
    }

    /// Number of curves in the multicurve, counted with multiplicity.
    pub fn component_count(&self) -> Result<usize> {
        Ok(genus2::component_count(&self.dt()?))
    }

    pub fn is_separating(&self) -> Result<bool> {
        Ok(genus2::is_separating(&self.dt()?))
    }

    pub fn parse(text: &str) -> Result<Self> {
        let err = |m: &str| Error::Parse(format!("{m} in curve literal {text:?}"));
        let body = text
            .trim()
            .strip_prefix("DT[")
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| err("expected DT[...]"))?;
        let (head, pairs) = body.split_once(';').ok_or_else(|| err("missing ';'"))?;
        let genus: u32 = head
            .trim()
            .strip_prefix("g=")
            .and_then(|g| g.trim().parse().ok())
            .ok_or_else(|| err("expected g=<genus>"))?;
        let surface = SurfaceSpec::closed(genus)?;
        let mut coords = Vec::new();
        let mut rest = pairs.trim();
        while !rest.is_empty() {
            let inner = rest.strip_prefix('(').ok_or_else(|| err("expected '('"))?;
            let close = inner.find(')').ok_or_else(|| err("unclosed '('"))?;
            let (a, b) = inner[..close].split_once(',').ok_or_else(|| err("expected m,t"))?;
            let m = T::from_str(a.trim()).map_err(|_| err("bad integer"))?;
            let t = T::from_str(b.trim()).map_err(|_| err("bad integer"))?;
            coords.push((m, t));
            rest = inner[close + 1..].trim_start();
        }
        CurveSystem::new(surface, coords)
    }
}

impl<T: Integral> fmt::Display for CurveSystem<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DT[g={};", self.surface.genus())?;
        for (m, t) in &self.coords {
            write!(f, " ({m},{t})")?;
        }
        f.write_str("]")
    }
}

impl<T: Integral> Serialize for CurveSystem<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<T: Integral> FromStr for CurveSystem<T> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CurveSystem::parse(s)
    }
}

pub(crate) fn braid_of(w: &MappingClassWord) -> Result<Vec<(u8, i64)>> {
    w.surface.require_engine()?;
    w.letters
        .iter()
        .map(|&(g, e)| match g {
            Generator::Twist(j) if (1..=5).contains(&j) => Ok((j as u8, e)),
            _ => Err(Error::MalformedWord(format!("generator {g} is not a genus-2 twist"))),
        })
        .collect()
}

/// Geometric intersection number; zero for isotopic curves.
pub fn intersection_number<T: Integral>(a: &CurveSystem<T>, b: &CurveSystem<T>) -> Result<T> {
    a.surface.same_as(&b.surface)?;
    let (u, v) = (a.dt()?, b.dt()?);
    let i = genus2::intersection(&u, &v);
    Ok(T::from_u64(i).expect("intersection fits the scalar"))
}

/// Dehn–Thurston coordinates of `w · a`.
pub fn apply_word<T: Integral>(w: &MappingClassWord, a: &CurveSystem<T>) -> Result<CurveSystem<T>> {
    w.surface.same_as(&a.surface)?;
    let braid = braid_of(w)?;
    let u = a.dt()?;
    let v = genus2::apply(&braid, &u).ok_or_else(|| {
        Error::MalformedCoordinates(format!("word image of {a} could not be read back"))
    })?;
    if !genus2::fits(&v) {
        return Err(Error::CoordinateOverflow);
    }
    Ok(CurveSystem::from_dt(&v))
}

/// Normal form of an essential curve system. Dehn–Thurston coordinates are
/// already unique once validated, so this checks and copies.
pub fn canonicalize<T: Integral>(a: &CurveSystem<T>) -> Result<CurveSystem<T>> {
    let c = CurveSystem::new(a.surface, a.coords.clone())?;
    if c.is_empty() {
        return Err(Error::EmptyMulticurve);
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    type C = CurveSystem<i64>;

    #[test]
    fn literal_round_trip() {
        let c = C::parse("DT[g=2; (2,-3) (4,1) (0,2)]").unwrap();
        assert_eq!(c.to_string(), "DT[g=2; (2,-3) (4,1) (0,2)]");
        assert_eq!(C::parse(&c.to_string()).unwrap(), c);
        assert!(C::parse("DT[g=2; (1,0) (1,0) (0,0)]").is_err());
        assert!(C::parse("DT[g=2; (0,-1) (0,0) (0,0)]").is_err());
        assert!(C::parse("DT[g=2; (0,1) (0,0)]").is_err());
        assert!(matches!(C::parse("DT[g=3; (0,1) (0,0) (0,0) (0,0) (0,0) (0,0)]"), Err(Error::UnsupportedGenus(3))));
    }

    #[test]
    fn canonical_rejects_empty_and_malformed() {
        let zero = C::new(SurfaceSpec::genus2(), vec![(0, 0); 3]).unwrap();
        assert_eq!(canonicalize(&zero), Err(Error::EmptyMulticurve));
        let c = C::chain(2);
        assert_eq!(canonicalize(&canonicalize(&c).unwrap()).unwrap(), c);
    }

    #[test]
    fn base_curve_meets_its_dual_once() {
        assert_eq!(intersection_number(&C::chain(1), &C::chain(2)).unwrap(), 1);
        assert_eq!(intersection_number(&C::chain(3), &C::chain(3)).unwrap(), 0);
    }

    #[test]
    fn bigint_and_machine_scalars_agree() {
        let w = MappingClassWord::parse(SurfaceSpec::genus2(), "t2 t3^-1 t4").unwrap();
        let a: CurveSystem = CurveSystem::chain(1);
        let b = C::chain(1);
        assert_eq!(apply_word(&w, &a).unwrap().to_string(), apply_word(&w, &b).unwrap().to_string());
    }
}
