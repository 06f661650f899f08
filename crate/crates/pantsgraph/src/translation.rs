//! Orbit distances d_n = d(P, wⁿ·P) and the stable translation length
//! lim d_n / n, estimated from above by min d_n / n over exact samples.

use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::curves::{apply_word, intersection_number, CurveSystem};
use crate::error::{Error, Result};
use crate::farey::{self, slope_intersection, Slope};
use crate::pants::{pants_distance_escalating, Cutoff, PantsDecomposition, Status};
use crate::scalar::Integral;
use crate::word::MappingClassWord;

fn ratio_str<S: Serializer>(r: &Option<Ratio<u64>>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_str(&format!("{}/{}", r.numer(), r.denom())),
        None => s.serialize_none(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Sample {
    pub n: u32,
    pub distance: Option<u32>,
    pub status: Option<Status>,
    /// Cutoff of the attempt that produced the sample.
    pub cutoff: Cutoff,
    pub error: Option<String>,
}

impl Sample {
    pub fn is_exact(&self) -> bool {
        self.status == Some(Status::ExactWithinCutoff)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Diagnostics {
    pub cutoff_history: Vec<Cutoff>,
    /// Pairs (m, n) of exact samples with d_{m+n} > d_m + d_n.
    pub subadditivity_violations: Vec<(u32, u32)>,
    pub inexact: Vec<u32>,
    /// |d_a/a - d_b/b| for the two deepest exact samples.
    #[serde(serialize_with = "ratio_str")]
    pub slack: Option<Ratio<u64>>,
    /// The two deepest exact samples agree with linear growth up to an
    /// additive error of 2.
    pub converged: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(bound = "T: Integral")]
pub struct TranslationEstimate<T = num_bigint::BigInt> {
    pub word: MappingClassWord,
    pub base: PantsDecomposition<T>,
    pub samples: Vec<Sample>,
    #[serde(serialize_with = "ratio_str")]
    pub upper_estimate: Option<Ratio<u64>>,
    pub diagnostics: Diagnostics,
}

/// 1, 2, 4, ... up to `n_max`, with `n_max` itself always included.
pub fn schedule(n_max: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut n = 1;
    while n < n_max {
        out.push(n);
        n *= 2;
    }
    out.push(n_max.max(1));
    out
}

/// Distances from `base` to wⁿ·base for n on the power schedule.
pub fn orbit_distances<T: Integral>(
    w: &MappingClassWord,
    base: &PantsDecomposition<T>,
    n_max: u32,
    c: &Cutoff,
) -> Result<TranslationEstimate<T>> {
    orbit_distances_escalating(w, base, n_max, c, 1)
}

/// As [`orbit_distances`], retrying each sample with escalated cutoffs (see
/// [`pants_distance_escalating`]) for up to `rounds` attempts.
pub fn orbit_distances_escalating<T: Integral>(
    w: &MappingClassWord,
    base: &PantsDecomposition<T>,
    n_max: u32,
    c: &Cutoff,
    rounds: u32,
) -> Result<TranslationEstimate<T>> {
    if n_max == 0 {
        return Err(Error::InsufficientData);
    }
    c.check()?;
    w.surface.same_as(&base.surface())?;
    let mut samples = Vec::new();
    for n in schedule(n_max) {
        let sample = match base.act(&w.pow(i64::from(n))) {
            Err(e) => Sample { n, distance: None, status: None, cutoff: *c, error: Some(e.to_string()) },
            Ok(image) => match pants_distance_escalating(base, &image, c, rounds) {
                Ok(cert) => Sample {
                    n,
                    distance: Some(cert.distance),
                    status: Some(cert.status),
                    cutoff: cert.cutoff,
                    error: None,
                },
                Err(e) => Sample { n, distance: None, status: None, cutoff: *c, error: Some(e.to_string()) },
            },
        };
        samples.push(sample);
    }
    Ok(assemble(w.clone(), base.clone(), samples))
}

/// Builds an estimate and its diagnostics from samples; `samples` may come
/// in any order.
pub fn assemble<T: Integral>(
    word: MappingClassWord,
    base: PantsDecomposition<T>,
    mut samples: Vec<Sample>,
) -> TranslationEstimate<T> {
    samples.sort_by_key(|s| s.n);
    let exact: Vec<(u32, u32)> =
        samples.iter().filter(|s| s.is_exact()).filter_map(|s| s.distance.map(|d| (s.n, d))).collect();
    let d = |n: u32| exact.iter().find(|e| e.0 == n).map(|e| e.1);
    let mut violations = Vec::new();
    for &(m, dm) in &exact {
        for &(n, dn) in &exact {
            if m <= n {
                if let Some(dmn) = d(m + n) {
                    if dmn > dm + dn {
                        violations.push((m, n));
                    }
                }
            }
        }
    }
    let ratios: Vec<Ratio<u64>> = exact.iter().map(|&(n, d)| Ratio::new(u64::from(d), u64::from(n))).collect();
    let upper_estimate = ratios.iter().min().copied();
    let (slack, converged) = match exact.len() {
        0 | 1 => (None, false),
        k => {
            let (a, b) = (ratios[k - 2], ratios[k - 1]);
            let gap = if a > b { a - b } else { b - a };
            (Some(gap), gap * u64::from(exact[k - 1].0) <= Ratio::from_integer(2))
        }
    };
    let diagnostics = Diagnostics {
        cutoff_history: samples.iter().map(|s| s.cutoff).collect(),
        subadditivity_violations: violations,
        inexact: samples.iter().filter(|s| !s.is_exact()).map(|s| s.n).collect(),
        slack,
        converged,
    };
    TranslationEstimate { word, base, samples, upper_estimate, diagnostics }
}

/// min d_n / n over exact samples.
pub fn stable_length<T: Integral>(e: &TranslationEstimate<T>) -> Result<Ratio<u64>> {
    e.upper_estimate.ok_or(Error::InsufficientData)
}

/// Comparison of ℓ̂(wᵏ) with k·ℓ̂(w) for estimates taken with the same
/// `n_max`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Homogeneity {
    pub k: u32,
    pub ratio: Option<f64>,
    /// |ℓ̂(wᵏ) - k·ℓ̂(w)|.
    pub residual: f64,
    /// k·slack(w) + slack(wᵏ) + k / n_max.
    pub allowed: f64,
    pub within: bool,
    /// ℓ̂(wᵏ) <= k·ℓ̂(w), which subadditivity forces on exact samples.
    pub bounded: bool,
}

pub fn homogeneity<T: Integral>(
    w: &TranslationEstimate<T>,
    wk: &TranslationEstimate<T>,
    k: u32,
) -> Result<Homogeneity> {
    let (a, b) = (stable_length(w)?, stable_length(wk)?);
    let f = |r: Ratio<u64>| r.to_f64().unwrap_or(f64::NAN);
    let slack = |e: &TranslationEstimate<T>| e.diagnostics.slack.map_or(0.0, f);
    let n_max = w.samples.last().map_or(1, |s| s.n).max(1);
    let ka = a * u64::from(k);
    let residual = (f(b) - f(ka)).abs();
    let allowed = f64::from(k) * slack(w) + slack(wk) + f64::from(k) / f64::from(n_max);
    Ok(Homogeneity {
        k,
        ratio: (!a.is_zero()).then(|| f(b) / f(a)),
        residual,
        allowed,
        within: residual <= allowed,
        bounded: b <= ka,
    })
}

/// Curves or slopes a mapping class can move and measure.
pub trait Probe: Clone + PartialEq + Sized {
    fn image(&self, w: &MappingClassWord) -> Result<Self>;
    fn meet(&self, other: &Self) -> Result<f64>;
}

impl<T: Integral> Probe for CurveSystem<T> {
    fn image(&self, w: &MappingClassWord) -> Result<Self> {
        apply_word(w, self)
    }

    fn meet(&self, other: &Self) -> Result<f64> {
        Ok(intersection_number(self, other)?.to_f64().unwrap_or(f64::INFINITY))
    }
}

impl<T: Integral> Probe for Slope<T> {
    fn image(&self, w: &MappingClassWord) -> Result<Self> {
        farey::act(w, self)
    }

    fn meet(&self, other: &Self) -> Result<f64> {
        Ok(slope_intersection(self, other).to_f64().unwrap_or(f64::INFINITY))
    }
}

/// The chain curves c1..c5 and the separating curve s.
pub fn default_curve_probes<T: Integral>() -> Vec<CurveSystem<T>> {
    let mut v: Vec<CurveSystem<T>> = (1..=5).map(CurveSystem::chain).collect();
    v.push(CurveSystem::separating());
    v
}

/// 0/1, 1/0 and 1/1.
pub fn default_slope_probes<T: Integral>() -> Vec<Slope<T>> {
    vec![Slope::integer(T::zero()), Slope::infinity(), Slope::integer(T::one())]
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict<P> {
    /// `curves` is the orbit of a probe fixed by w^period.
    ReducibleDetected { curves: Vec<P>, period: u32 },
    PeriodicDetected { order: u32 },
    /// Heuristic only: no probe returned within the iterations tried.
    ProbablyPseudoAnosov { growth_ratio: f64, iterations: u32 },
}

/// Looks for a probe returning to itself or all probes returning at once
/// under w, w², ..., w^n_max; otherwise reports the largest geometric-mean
/// growth ratio (i(wⁿa, a) / i(wa, a))^(1/(n-1)) over probes.
///
/// Iteration stops early when coordinates outgrow the engine; the reached
/// depth is reported.
pub fn reducibility_heuristic<P: Probe>(w: &MappingClassWord, probes: &[P], n_max: u32) -> Result<Verdict<P>> {
    if probes.is_empty() {
        return Err(Error::InsufficientData);
    }
    let mut current: Vec<P> = probes.to_vec();
    let mut meets: Vec<Vec<f64>> = vec![Vec::new(); probes.len()];
    let mut reached = 0;
    for n in 1..=n_max.max(1) {
        let next: Result<Vec<P>> = current.iter().map(|a| a.image(w)).collect();
        let next = match next {
            Ok(v) => v,
            Err(Error::CoordinateOverflow) if n > 1 => break,
            Err(e) => return Err(e),
        };
        current = next;
        reached = n;
        let fixed: Vec<bool> = current.iter().zip(probes).map(|(x, a)| x == a).collect();
        if fixed.iter().all(|&f| f) {
            return Ok(Verdict::PeriodicDetected { order: n });
        }
        if let Some(i) = fixed.iter().position(|&f| f) {
            let mut orbit = vec![probes[i].clone()];
            let mut x = probes[i].clone();
            for _ in 1..n {
                x = x.image(w)?;
                if !orbit.contains(&x) {
                    orbit.push(x.clone());
                }
            }
            return Ok(Verdict::ReducibleDetected { curves: orbit, period: n });
        }
        for (i, x) in current.iter().enumerate() {
            meets[i].push(x.meet(&probes[i])?);
        }
    }
    let mut growth: f64 = 1.0;
    for m in &meets {
        if let Some(first) = m.iter().position(|&x| x > 0.0) {
            let steps = (m.len() - 1 - first) as f64;
            if steps > 0.0 {
                growth = growth.max((m[m.len() - 1] / m[first]).powf(1.0 / steps));
            }
        }
    }
    Ok(Verdict::ProbablyPseudoAnosov { growth_ratio: growth, iterations: reached })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::SurfaceSpec;

    #[test]
    fn schedule_doubles_and_ends_at_n_max() {
        assert_eq!(schedule(1), vec![1]);
        assert_eq!(schedule(8), vec![1, 2, 4, 8]);
        assert_eq!(schedule(6), vec![1, 2, 4, 6]);
    }

    #[test]
    fn stable_length_is_fekete_minimum() {
        let s = SurfaceSpec::punctured_torus();
        let w = MappingClassWord::identity(s);
        let base = PantsDecomposition::<i64>::base(s).unwrap();
        let c = Cutoff::new(1, 1).unwrap();
        let mk = |n, d| Sample { n, distance: Some(d), status: Some(Status::ExactWithinCutoff), cutoff: c, error: None };
        let e = assemble(w.clone(), base.clone(), vec![mk(2, 5), mk(1, 3)]);
        assert_eq!(stable_length(&e).unwrap(), Ratio::new(5, 2));
        let none = assemble(w, base, vec![Sample { status: Some(Status::UpperBoundOnly), ..mk(1, 3) }]);
        assert_eq!(stable_length(&none), Err(Error::InsufficientData));
    }
}
