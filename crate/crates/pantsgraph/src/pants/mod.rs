//! The pants graph: vertices, elementary moves under a cutoff, and distance
//! certificates.
//!
//! Genus-2 vertices are explored through frames (see [`frames`]); the
//! punctured-torus model is the Farey graph restricted to a box.

pub mod frames;
pub mod search;
pub mod torus;

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize, Serializer};

use crate::curves::{apply_word, intersection_number, CurveSystem};
use crate::error::{Error, Result};
use crate::farey::{self, slope_intersection, Slope};
use crate::genus2::{self, Dt};
use crate::scalar::{to_i64, Integral};
use crate::surface::{Model, SurfaceSpec};
use crate::word::MappingClassWord;

use frames::Genus2Graph;
use torus::FareyGraph;

pub const DEFAULT_VERTEX_BUDGET: usize = 2_000_000;

fn default_budget() -> usize {
    DEFAULT_VERTEX_BUDGET
}

/// Truncation of the locally infinite pants graph.
///
/// In genus 2 a replacement curve is admitted when it lies within `max_twist`
/// twist steps of the family centre (see [`frames`]); on the punctured torus
/// `max_twist` bounds |p| and q. `max_vertices` caps the memory of a search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cutoff {
    pub max_twist: u32,
    pub max_radius: u32,
    #[serde(default = "default_budget")]
    pub max_vertices: usize,
}

impl Cutoff {
    pub fn new(max_twist: u32, max_radius: u32) -> Result<Self> {
        let c = Cutoff { max_twist, max_radius, max_vertices: DEFAULT_VERTEX_BUDGET };
        c.check()?;
        Ok(c)
    }

    pub fn with_budget(mut self, max_vertices: usize) -> Self {
        self.max_vertices = max_vertices;
        self
    }

    pub(crate) fn check(&self) -> Result<()> {
        if self.max_twist == 0 || self.max_radius == 0 || self.max_vertices == 0 {
            return Err(Error::InvalidCutoff);
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    ExactWithinCutoff,
    UpperBoundOnly,
}

/// A vertex of the pants graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PantsDecomposition<T = BigInt> {
    /// Three disjoint curves on the genus-2 surface, sorted.
    Closed(Vec<CurveSystem<T>>),
    /// A single slope on the once-punctured torus.
    PuncturedTorus(Slope<T>),
}

impl<T: Integral> PantsDecomposition<T> {
    /// The base decomposition {c1, s, c5}, or {0/1} on the punctured torus.
    pub fn base(surface: SurfaceSpec) -> Result<Self> {
        match surface.model {
            Model::PuncturedTorus => Ok(PantsDecomposition::PuncturedTorus(Slope::integer(T::zero()))),
            _ => {
                surface.require_engine()?;
                Ok(Self::from_dts(&frames::BASE))
            }
        }
    }

    pub fn surface(&self) -> SurfaceSpec {
        match self {
            PantsDecomposition::Closed(cs) => cs[0].surface(),
            PantsDecomposition::PuncturedTorus(_) => SurfaceSpec::punctured_torus(),
        }
    }

    pub fn curves(&self) -> &[CurveSystem<T>] {
        match self {
            PantsDecomposition::Closed(cs) => cs,
            PantsDecomposition::PuncturedTorus(_) => &[],
        }
    }

    pub fn slope(&self) -> Option<&Slope<T>> {
        match self {
            PantsDecomposition::PuncturedTorus(s) => Some(s),
            PantsDecomposition::Closed(_) => None,
        }
    }

    /// Image under a mapping class: `w · self`.
    pub fn act(&self, w: &MappingClassWord) -> Result<Self> {
        self.surface().same_as(&w.surface)?;
        match self {
            PantsDecomposition::PuncturedTorus(s) => Ok(PantsDecomposition::PuncturedTorus(farey::act(w, s)?)),
            PantsDecomposition::Closed(cs) => {
                let mut v = cs.iter().map(|c| apply_word(w, c)).collect::<Result<Vec<_>>>()?;
                v.sort();
                Ok(PantsDecomposition::Closed(v))
            }
        }
    }

    pub(crate) fn from_dts(cs: &[Dt; 3]) -> Self {
        let mut v: Vec<CurveSystem<T>> = cs.iter().map(CurveSystem::from_dt).collect();
        v.sort();
        PantsDecomposition::Closed(v)
    }

    pub(crate) fn dts(&self) -> Result<[Dt; 3]> {
        let cs = self.curves();
        if cs.len() != 3 {
            return Err(Error::WrongModel("punctured-torus".into()));
        }
        let mut out = [cs[0].dt()?, cs[1].dt()?, cs[2].dt()?];
        out.sort();
        Ok(out)
    }

    /// Parses `{curve; curve; curve}` on a closed surface or `{p/q}` on the
    /// punctured torus.
    pub fn parse(surface: SurfaceSpec, text: &str) -> Result<Self> {
        let body = text
            .trim()
            .strip_prefix('{')
            .and_then(|s| s.strip_suffix('}'))
            .ok_or_else(|| Error::Parse(format!("expected {{...}} in pants literal {text:?}")))?;
        match surface.model {
            Model::PuncturedTorus => Ok(PantsDecomposition::PuncturedTorus(Slope::parse(body)?)),
            _ => {
                let curves = split_top_level(body).into_iter().map(CurveSystem::parse).collect::<Result<Vec<_>>>()?;
                for c in &curves {
                    c.surface().same_as(&surface)?;
                }
                validate_pants(curves)
            }
        }
    }
}

/// Splits at the semicolons that lie outside brackets.
fn split_top_level(text: &str) -> Vec<&str> {
    let (mut out, mut depth, mut start) = (Vec::new(), 0i32, 0);
    for (i, ch) in text.char_indices() {
        match ch {
            '[' => depth += 1,
            ']' => depth -= 1,
            ';' if depth == 0 => {
                out.push(&text[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&text[start..]);
    out
}

impl<T: Integral> fmt::Display for PantsDecomposition<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PantsDecomposition::PuncturedTorus(s) => write!(f, "{{{s}}}"),
            PantsDecomposition::Closed(cs) => {
                f.write_str("{")?;
                for (i, c) in cs.iter().enumerate() {
                    if i > 0 {
                        f.write_str("; ")?;
                    }
                    write!(f, "{c}")?;
                }
                f.write_str("}")
            }
        }
    }
}

impl<T: Integral> Serialize for PantsDecomposition<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// A distance value with a path realising it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(bound = "T: Integral")]
pub struct DistanceCertificate<T = BigInt> {
    pub distance: u32,
    pub path: Vec<PantsDecomposition<T>>,
    pub cutoff: Cutoff,
    pub status: Status,
    pub visited: usize,
}

/// Checks a set of curves and returns it as a sorted decomposition.
pub fn validate_pants<T: Integral>(curves: Vec<CurveSystem<T>>) -> Result<PantsDecomposition<T>> {
    let surface = curves.first().ok_or(Error::WrongCount { expected: 3, found: 0 })?.surface();
    surface.require_engine()?;
    for c in &curves {
        c.surface().same_as(&surface)?;
    }
    if curves.len() != surface.num_pants_curves() {
        return Err(Error::WrongCount { expected: surface.num_pants_curves(), found: curves.len() });
    }
    for (i, c) in curves.iter().enumerate() {
        if c.is_empty() || c.component_count()? != 1 {
            return Err(Error::NotACurve(i));
        }
    }
    for i in 0..curves.len() {
        for j in i + 1..curves.len() {
            if curves[i] == curves[j] {
                return Err(Error::DuplicateCurve { first: i, second: j });
            }
            let n = intersection_number(&curves[i], &curves[j])?;
            if !n.is_zero() {
                let count = to_i64(&n).map_or(u64::MAX, |x| x as u64);
                return Err(Error::IntersectingCurves { first: i, second: j, count });
            }
        }
    }
    let mut curves = curves;
    curves.sort();
    Ok(PantsDecomposition::Closed(curves))
}

/// Decompositions one elementary move away from `p`.
///
/// On the closed surface, twist families are centred on the base
/// decomposition: a curve family whose removed curve is itself a base curve
/// is cut at |twist coordinate| <= max_twist at that curve, any other family
/// within max_twist steps of the members closest to the base.
pub fn neighbors<T: Integral>(p: &PantsDecomposition<T>, c: &Cutoff) -> Result<Vec<PantsDecomposition<T>>> {
    c.check()?;
    match p {
        PantsDecomposition::PuncturedTorus(s) => {
            let g = FareyGraph::<T>::new();
            let mut out: Vec<_> = search::MoveGraph::adjacent(&g, s, c)?
                .into_iter()
                .filter(|x| x != s)
                .map(PantsDecomposition::PuncturedTorus)
                .collect();
            out.sort();
            Ok(out)
        }
        PantsDecomposition::Closed(_) => {
            let g = Genus2Graph::standalone();
            let node = g.locate(&p.dts()?)?;
            let mut out: Vec<_> =
                g.replacements(&node, c)?.iter().map(|n| PantsDecomposition::from_dts(&n.curves)).collect();
            out.sort();
            out.dedup();
            Ok(out)
        }
    }
}

fn certificate<T: Integral, N>(
    found: search::Found<N>,
    to_vertex: impl Fn(&N) -> PantsDecomposition<T>,
    c: &Cutoff,
) -> DistanceCertificate<T> {
    DistanceCertificate {
        distance: found.distance,
        path: found.path.iter().map(to_vertex).collect(),
        cutoff: *c,
        status: if found.exact { Status::ExactWithinCutoff } else { Status::UpperBoundOnly },
        visited: found.visited,
    }
}

/// Shortest path between `p` and `q` in the pants graph truncated by `c`.
///
/// The genus-2 truncation is taken relative to the pair: a twist family has
/// one centre for the curves of `p` and one for the curves of `q` (the
/// members of least total intersection with them), a member is admitted
/// within `max_twist` steps of either, and curves shared by `p` and `q` stay
/// fixed.
/// `ExactWithinCutoff` means no shorter path exists in that truncated graph.
pub fn pants_distance<T: Integral>(
    p: &PantsDecomposition<T>,
    q: &PantsDecomposition<T>,
    c: &Cutoff,
) -> Result<DistanceCertificate<T>> {
    c.check()?;
    p.surface().same_as(&q.surface())?;
    match (p, q) {
        (PantsDecomposition::PuncturedTorus(a), PantsDecomposition::PuncturedTorus(b)) => {
            let g = FareyGraph::<T>::new();
            let found = search::bidirectional(&g, a.clone(), b.clone(), c)?;
            Ok(certificate(found, |s| PantsDecomposition::PuncturedTorus(s.clone()), c))
        }
        _ => {
            let (a, b) = (p.dts()?, q.dts()?);
            let g = Genus2Graph::for_pair(&a, &b);
            let (na, nb) = (g.locate(&a)?, g.locate(&b)?);
            let found = search::bidirectional(&g, na, nb, c)?;
            Ok(certificate(found, |n| PantsDecomposition::from_dts(&n.curves), c))
        }
    }
}

/// Repeats [`pants_distance`], doubling `max_twist` and adding one to
/// `max_radius` after each failed or inexact attempt, for at most `rounds`
/// attempts. Returns the last certificate or error.
pub fn pants_distance_escalating<T: Integral>(
    p: &PantsDecomposition<T>,
    q: &PantsDecomposition<T>,
    start: &Cutoff,
    rounds: u32,
) -> Result<DistanceCertificate<T>> {
    let mut c = *start;
    let mut last = Err(Error::InvalidCutoff);
    for _ in 0..rounds.max(1) {
        last = pants_distance(p, q, &c);
        match &last {
            Ok(cert) if cert.status == Status::ExactWithinCutoff => return last,
            Err(Error::NotFound { .. }) | Ok(_) => {}
            Err(_) => return last,
        }
        c.max_twist = c.max_twist.saturating_mul(2);
        c.max_radius = c.max_radius.saturating_add(1);
    }
    last
}

/// Whether `q` arises from `p` by replacing one curve with a curve meeting it
/// minimally: once inside a one-holed torus, twice inside a four-holed sphere.
pub fn is_elementary_move<T: Integral>(p: &PantsDecomposition<T>, q: &PantsDecomposition<T>) -> Result<bool> {
    p.surface().same_as(&q.surface())?;
    match (p, q) {
        (PantsDecomposition::PuncturedTorus(a), PantsDecomposition::PuncturedTorus(b)) => {
            Ok(slope_intersection(a, b).is_one())
        }
        _ => {
            let (a, b) = (p.dts()?, q.dts()?);
            let removed: Vec<&Dt> = a.iter().filter(|x| !b.contains(x)).collect();
            let added: Vec<&Dt> = b.iter().filter(|x| !a.contains(x)).collect();
            if removed.len() != 1 || added.len() != 1 {
                return Ok(false);
            }
            let kept: Vec<&Dt> = a.iter().filter(|x| b.contains(x)).collect();
            let torus = !genus2::is_separating(removed[0]) && kept.iter().any(|k| genus2::is_separating(k));
            let minimal = if torus { 1 } else { 2 };
            Ok(genus2::intersection(removed[0], added[0]) == minimal)
        }
    }
}

/// Checks every step of a certificate path.
pub fn verify_path<T: Integral>(cert: &DistanceCertificate<T>) -> Result<bool> {
    if cert.path.len() != cert.distance as usize + 1 {
        return Ok(false);
    }
    for w in cert.path.windows(2) {
        if !is_elementary_move(&w[0], &w[1])? {
            return Ok(false);
        }
    }
    Ok(true)
}
